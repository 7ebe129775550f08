mod common;

use common::{brute_orientable, random_diagram};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use surfknot::{from_gauss, gauss_orientable, orient, GaussMVD, GaussToken, Hand, Node};

#[test]
fn orient_matches_exhaustive_search() {
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..1200 {
        let d = random_diagram(&mut rng, 1 + i % 7, &['X', 'S', 'V']);
        let got = orient(&d);
        assert_eq!(got.is_ok(), brute_orientable(&d), "{}", d.to_text());
        match got {
            Ok(o) => {
                for (k, n) in d.nodes().iter().enumerate() {
                    let io = o.io[k];
                    if n.is_saddle() {
                        assert!(io[0] == io[2] && io[1] == io[3] && io[0] != io[1]);
                    } else {
                        assert!(io[0] != io[2] && io[1] != io[3]);
                    }
                }
            }
            Err(w) => {
                assert_eq!(w.cycle.first(), w.cycle.last());
                assert_eq!(w.nodes.len() + 1, w.cycle.len());
            }
        }
    }
}

/// Every way to pair up `2k` positions, chord ids in order of first use.
fn shapes(k: usize) -> Vec<Vec<usize>> {
    fn place(pos: &mut Vec<usize>, chord: usize, k: usize, acc: &mut Vec<Vec<usize>>) {
        if chord == k {
            acc.push(pos.clone());
            return;
        }
        let first = pos.iter().position(|&p| p == usize::MAX).unwrap();
        pos[first] = chord;
        for j in first + 1..pos.len() {
            if pos[j] == usize::MAX {
                pos[j] = chord;
                place(pos, chord + 1, k, acc);
                pos[j] = usize::MAX;
            }
        }
        pos[first] = usize::MAX;
    }
    let mut acc = Vec::new();
    place(&mut vec![usize::MAX; 2 * k], 0, k, &mut acc);
    acc
}

/// Chord `c` gets attribute `kinds[c]`: 0..4 classical (hand, which end is
/// over), 4..6 saddle with flag.
fn word(shape: &[usize], kinds: &[usize]) -> GaussMVD {
    let mut seen = vec![false; kinds.len()];
    let w = shape
        .iter()
        .map(|&c| {
            let first = !seen[c];
            seen[c] = true;
            let hand = if kinds[c] % 2 == 0 { Hand::Plus } else { Hand::Minus };
            match kinds[c] {
                0 | 1 if first => GaussToken::Over(c + 1, hand),
                0 | 1 => GaussToken::Under(c + 1, hand),
                2 | 3 if first => GaussToken::Under(c + 1, hand),
                2 | 3 => GaussToken::Over(c + 1, hand),
                f => GaussToken::Saddle(c + 1, (f - 4) as u8),
            }
        })
        .collect();
    GaussMVD::new(w).unwrap()
}

fn check(g: &GaussMVD) {
    let d = from_gauss(g).unwrap();
    let brute = brute_orientable(&d);
    assert_eq!(gauss_orientable(g), brute, "{g}");
    assert_eq!(orient(&d).is_ok(), brute, "{g}");
}

#[test]
fn gauss_parity_matches_exhaustive_search() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut checked = 0;
    for k in 1..=5usize {
        for shape in shapes(k) {
            if k <= 3 {
                for code in 0..6usize.pow(k as u32) {
                    let kinds: Vec<usize> = (0..k).map(|c| code / 6usize.pow(c as u32) % 6).collect();
                    check(&word(&shape, &kinds));
                    checked += 1;
                }
            } else {
                for saddles in 0..1usize << k {
                    let kinds: Vec<usize> = (0..k)
                        .map(|c| if saddles >> c & 1 == 1 { rng.gen_range(4..6) } else { rng.gen_range(0..4) })
                        .collect();
                    check(&word(&shape, &kinds));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 30_000);
}

proptest! {
    #[test]
    fn crossing_kind_never_matters_for_orientability(seed in 0u64..10_000) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 1 + (seed % 6) as usize, &['X', 'S', 'V']);
        let swapped: Vec<Node> = d.nodes().iter().map(|n| match *n {
            Node::Classical(s) => Node::Virtual(s),
            Node::Virtual(s) => Node::Classical(s),
            other => other,
        }).collect();
        let e = surfknot::MarkedVertexDiagram::new(d.free_loops(), swapped).unwrap();
        prop_assert_eq!(orient(&d).is_ok(), orient(&e).is_ok());
    }
}
