#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use surfknot::{BikeiTable, MarkedVertexDiagram, Node};

/// Straight evaluation of every axiom on 0-based closures.
pub fn naive_valid(n: usize, up: impl Fn(usize, usize) -> usize, dn: impl Fn(usize, usize) -> usize) -> bool {
    let mut seen = vec![false; n * n];
    for x in 0..n {
        if up(x, x) != dn(x, x) {
            return false;
        }
        for y in 0..n {
            let k = dn(y, x) * n + up(x, y);
            if seen[k] {
                return false;
            }
            seen[k] = true;
            if up(up(x, y), y) != x || dn(dn(x, y), y) != x {
                return false;
            }
            if up(x, dn(y, x)) != up(x, y) || dn(x, up(y, x)) != dn(x, y) {
                return false;
            }
            for z in 0..n {
                if up(up(x, y), up(z, y)) != up(up(x, z), dn(y, z))
                    || dn(up(x, y), up(z, y)) != up(dn(x, z), dn(y, z))
                    || dn(dn(x, y), dn(z, y)) != dn(dn(x, z), up(y, z))
                {
                    return false;
                }
            }
        }
    }
    true
}

pub fn table_valid(t: &BikeiTable) -> bool {
    naive_valid(t.order(), |x, y| t.up(x + 1, y + 1) - 1, |x, y| t.down(x + 1, y + 1) - 1)
}

/// A diagram on `k` nodes with a uniformly random slot pairing.
pub fn random_diagram(rng: &mut impl Rng, k: usize, kinds: &[char]) -> MarkedVertexDiagram {
    let mut slots: Vec<usize> = (0..4 * k).collect();
    slots.shuffle(rng);
    let mut label = vec![0; 4 * k];
    for (i, pair) in slots.chunks(2).enumerate() {
        label[pair[0]] = i + 1;
        label[pair[1]] = i + 1;
    }
    let nodes = (0..k)
        .map(|i| {
            let s = [label[4 * i], label[4 * i + 1], label[4 * i + 2], label[4 * i + 3]];
            match kinds[rng.gen_range(0..kinds.len())] {
                'X' => Node::Classical(s),
                'V' => Node::Virtual(s),
                _ => Node::Saddle(s, rng.gen_range(0..2)),
            }
        })
        .collect();
    let loops = if k == 0 { 1 } else { rng.gen_range(0..2) };
    MarkedVertexDiagram::new(loops, nodes).unwrap()
}

/// Counts labelings by trying all n^m assignments.
pub fn brute_count(d: &MarkedVertexDiagram, t: &BikeiTable) -> u64 {
    let n = t.order();
    let m = d.semiarc_count();
    let mut lab = vec![1usize; m];
    let mut count = 0;
    loop {
        let ok = d.nodes().iter().all(|node| {
            let c = |s: usize| lab[node.slots()[s] - 1];
            match node {
                Node::Classical(_) => c(2) == t.up(c(0), c(1)) && c(3) == t.down(c(1), c(0)),
                Node::Saddle(..) => (1..4).all(|s| c(s) == c(0)),
                Node::Virtual(_) => c(0) == c(2) && c(1) == c(3),
            }
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                return count * (n as u64).pow(d.free_loops() as u32);
            }
            lab[i] += 1;
            if lab[i] <= n {
                break;
            }
            lab[i] = 1;
            i += 1;
        }
    }
}

/// Tries every direction assignment that passes straight through virtual
/// nodes, checking pass-through and source-sink everywhere.
pub fn brute_orientable(d: &MarkedVertexDiagram) -> bool {
    let m = d.semiarc_count();
    let ends = d.endpoints();
    let second = |node: usize, slot: usize| ends[d.semiarc_at((node, slot)) - 1][1] == (node, slot);
    // semiarcs tied by a virtual pass-through, with the parity between their bits
    let mut tie: Vec<Vec<(usize, bool)>> = vec![Vec::new(); m];
    for (i, n) in d.nodes().iter().enumerate() {
        if n.is_virtual() {
            for s in 0..2 {
                let (a, b) = (d.semiarc_at((i, s)) - 1, d.semiarc_at((i, s + 2)) - 1);
                let p = !(second(i, s) ^ second(i, s + 2));
                tie[a].push((b, p));
                tie[b].push((a, p));
            }
        }
    }
    let mut class = vec![usize::MAX; m];
    let mut rel = vec![false; m];
    let mut reps = 0;
    for a in 0..m {
        if class[a] != usize::MAX {
            continue;
        }
        class[a] = reps;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(y, p) in &tie[x] {
                if class[y] == usize::MAX {
                    class[y] = reps;
                    rel[y] = rel[x] ^ p;
                    stack.push(y);
                }
            }
        }
        reps += 1;
    }
    assert!(reps <= 24, "too many long arcs for exhaustive search");
    (0u64..1 << reps).any(|mask| {
        let dir = |a: usize| (mask >> class[a] & 1 == 1) ^ rel[a];
        let io = |node: usize, slot: usize| dir(d.semiarc_at((node, slot)) - 1) != second(node, slot);
        d.nodes().iter().enumerate().all(|(i, node)| match node {
            Node::Saddle(..) => io(i, 0) == io(i, 2) && io(i, 1) == io(i, 3) && io(i, 0) != io(i, 1),
            _ => io(i, 0) != io(i, 2) && io(i, 1) != io(i, 3),
        })
    })
}
