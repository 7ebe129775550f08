//! Traversal and smoothing of diagrams, plus the surface they describe.

use crate::diagram::{Endpoint, MarkedVertexDiagram, Node, NodeKind};
use crate::error::{Error, Result};
use crate::splice::Splice;

/// One pass straight through a node, entering at `from` and leaving at
/// `(from + 2) % 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub node: usize,
    pub from: usize,
}

impl Passage {
    pub fn to(&self) -> usize {
        (self.from + 2) % 4
    }
}

/// A closed curve obtained by passing straight through every node. Free
/// loops appear as components with no semiarcs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NaiveComponent {
    /// Semiarcs in traversal order; `semiarcs[k]` arrives at `passages[k]`.
    pub semiarcs: Vec<usize>,
    pub passages: Vec<Passage>,
}

/// Naive components, each started at its least semiarc and entering the
/// node at that semiarc's smaller endpoint. Components come
/// in order of their least semiarc, then one empty component per free loop.
pub fn naive_components(d: &MarkedVertexDiagram) -> Vec<NaiveComponent> {
    let ends = d.endpoints();
    let mut seen = vec![false; d.semiarc_count()];
    let mut out = Vec::new();
    for start in 1..=d.semiarc_count() {
        if seen[start - 1] {
            continue;
        }
        let mut comp = NaiveComponent::default();
        let mut a = start;
        let mut arrive = ends[a - 1][0];
        while !seen[a - 1] {
            seen[a - 1] = true;
            comp.semiarcs.push(a);
            let p = Passage {
                node: arrive.0,
                from: arrive.1,
            };
            comp.passages.push(p);
            let leave: Endpoint = (p.node, p.to());
            a = d.semiarc_at(leave);
            let [e0, e1] = ends[a - 1];
            arrive = if e0 == leave { e1 } else { e0 };
        }
        out.push(comp);
    }
    out.extend((0..d.free_loops()).map(|_| NaiveComponent::default()));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Lower,
    Upper,
}

/// Deletes every saddle and reconnects its slots for the given level.
pub fn smooth_saddles(d: &MarkedVertexDiagram, level: Level) -> MarkedVertexDiagram {
    let removed: Vec<bool> = d.nodes().iter().map(Node::is_saddle).collect();
    let (mut sp, map) = Splice::from_diagram(d, &removed, &[]);
    for (i, n) in d.nodes().iter().enumerate() {
        if let Node::Saddle(_, m) = *n {
            let ab_cd = (m == 0) == (level == Level::Lower);
            let pairs = if ab_cd { [(0, 1), (2, 3)] } else { [(1, 2), (3, 0)] };
            for (s, t) in pairs {
                sp.link(map.pt(i, s), map.pt(i, t));
            }
        }
    }
    sp.finish()
}

/// Per-slot in/out labels satisfying pass-through at classical and virtual
/// nodes and source-sink at saddles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    /// `io[node][slot]` is true when the semiarc at that slot flows into the node.
    pub io: Vec<[bool; 4]>,
    /// One arbitrary direction bit per free loop.
    pub loop_dirs: Vec<bool>,
    /// Per semiarc: false when it flows from its smaller endpoint to its larger.
    pub semiarc_dirs: Vec<bool>,
}

/// A cycle of constraints with odd total parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonOrientable {
    /// Semiarcs visited by the cycle, starting and ending at the same id.
    pub cycle: Vec<usize>,
    /// Nodes whose constraints link consecutive semiarcs of `cycle`.
    pub nodes: Vec<usize>,
}

/// Parity constraints `io(x) xor io(y) = parity` between slots of one node.
pub(crate) fn orientation_constraints(d: &MarkedVertexDiagram) -> Vec<(usize, usize, usize, bool)> {
    let mut cons = Vec::new();
    for (i, n) in d.nodes().iter().enumerate() {
        match n {
            Node::Saddle(..) => {
                cons.push((i, 0, 2, false));
                cons.push((i, 1, 3, false));
                cons.push((i, 0, 1, true));
            }
            _ => {
                cons.push((i, 0, 2, true));
                cons.push((i, 1, 3, true));
            }
        }
    }
    cons
}

/// Searches for an orientation by parity union-find over semiarc
/// directions; on failure returns an odd constraint cycle.
pub fn orient(d: &MarkedVertexDiagram) -> std::result::Result<Orientation, NonOrientable> {
    let m = d.semiarc_count();
    let ends = d.endpoints();
    // io(e) = in when semiarc direction bit differs from "e is the first endpoint"
    let second = |e: Endpoint| -> bool { ends[d.semiarc_at(e) - 1][1] == e };
    let mut parent: Vec<usize> = (0..m).collect();
    let mut par = vec![false; m];
    fn find(parent: &mut [usize], par: &mut [bool], x: usize) -> (usize, bool) {
        let p = parent[x];
        if p == x {
            return (x, false);
        }
        let (r, pp) = find(parent, par, p);
        parent[x] = r;
        par[x] ^= pp;
        (r, par[x])
    }
    // spanning forest: adjacency (neighbor, node)
    let mut forest: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for (node, s, t, parity) in orientation_constraints(d) {
        let a = d.semiarc_at((node, s)) - 1;
        let b = d.semiarc_at((node, t)) - 1;
        // io(x) = dir(a) ^ second(x) ^ 1 ... the constant cancels in the xor
        let need = parity ^ second((node, s)) ^ second((node, t));
        let (ra, pa) = find(&mut parent, &mut par, a);
        let (rb, pb) = find(&mut parent, &mut par, b);
        if ra != rb {
            parent[ra] = rb;
            par[ra] = pa ^ pb ^ need;
            forest[a].push((b, node));
            forest[b].push((a, node));
        } else if pa ^ pb != need {
            let (mut cycle, mut nodes) = forest_path(&forest, b, a);
            cycle.push(b + 1);
            nodes.push(node);
            return Err(NonOrientable { cycle, nodes });
        }
    }
    let dirs: Vec<bool> = (0..m).map(|a| find(&mut parent, &mut par, a).1).collect();
    let io = d
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let mut row = [false; 4];
            for (s, &a) in n.slots().iter().enumerate() {
                row[s] = dirs[a - 1] != second((i, s));
            }
            row
        })
        .collect();
    Ok(Orientation {
        io,
        loop_dirs: vec![false; d.free_loops()],
        semiarc_dirs: dirs,
    })
}

/// Path from `from` to `to` in the forest, as 1-based semiarcs and the nodes
/// between consecutive ones.
fn forest_path(forest: &[Vec<(usize, usize)>], from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; forest.len()];
    let mut seen = vec![false; forest.len()];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, node) in &forest[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, node));
                queue.push_back(y);
            }
        }
    }
    let mut semis = vec![to + 1];
    let mut nodes = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, node) = prev[cur].expect("endpoints share a tree");
        nodes.push(node);
        semis.push(p + 1);
        cur = p;
    }
    semis.reverse();
    nodes.reverse();
    (semis, nodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceClass {
    pub euler: i64,
    pub orientable: bool,
    /// Genus when orientable, cross-cap number otherwise.
    pub genus_or_crosscaps: i64,
    /// The smoothings were assumed to be unlink diagrams without checking.
    pub closed_surface_assumed: bool,
}

pub fn euler_characteristic(d: &MarkedVertexDiagram) -> SurfaceClass {
    let h = d.nodes().iter().filter(|n| n.is_saddle()).count() as i64;
    let lower = naive_components(&smooth_saddles(d, Level::Lower)).len() as i64;
    let upper = naive_components(&smooth_saddles(d, Level::Upper)).len() as i64;
    let euler = lower + upper - h;
    let orientable = orient(d).is_ok();
    let genus_or_crosscaps = if orientable {
        (2 - euler).div_euclid(2)
    } else {
        2 - euler
    };
    SurfaceClass {
        euler,
        orientable,
        genus_or_crosscaps,
        closed_surface_assumed: true,
    }
}

/// Switches over and under at a classical node.
pub fn crossing_change(d: &MarkedVertexDiagram, node: usize) -> Result<MarkedVertexDiagram> {
    match *d.node(node)? {
        Node::Classical([u1, o1, u2, o2]) => {
            let mut nodes = d.nodes().to_vec();
            nodes[node] = Node::Classical([o1, u2, o2, u1]);
            MarkedVertexDiagram::new(d.free_loops(), nodes)
        }
        _ => Err(Error::NotClassical(node)),
    }
}

/// Genus of the surface carrying the rotation system of the classical and
/// saddle nodes, with virtual nodes dissolved; summed over connected pieces.
pub fn genus_of_projection(d: &MarkedVertexDiagram) -> usize {
    let ends = d.endpoints();
    let nodes = d.nodes();
    let other = |e: Endpoint| -> Endpoint {
        let [e0, e1] = ends[d.semiarc_at(e) - 1];
        if e0 == e {
            e1
        } else {
            e0
        }
    };
    // follow a dart through virtual nodes to the next real slot
    let alpha = |e: Endpoint| -> Endpoint {
        let mut x = other(e);
        while nodes[x.0].kind() == NodeKind::Virtual {
            x = other((x.0, (x.1 + 2) % 4));
        }
        x
    };
    let real: Vec<usize> = (0..nodes.len()).filter(|&i| !nodes[i].is_virtual()).collect();
    if real.is_empty() {
        return 0;
    }
    let mut piece = vec![usize::MAX; nodes.len()];
    let mut pieces = 0;
    for &r in &real {
        if piece[r] != usize::MAX {
            continue;
        }
        let mut stack = vec![r];
        piece[r] = pieces;
        while let Some(v) = stack.pop() {
            for s in 0..4 {
                let (w, _) = alpha((v, s));
                if piece[w] == usize::MAX {
                    piece[w] = pieces;
                    stack.push(w);
                }
            }
        }
        pieces += 1;
    }
    let mut verts = vec![0i64; pieces];
    let mut faces = vec![0i64; pieces];
    for &r in &real {
        verts[piece[r]] += 1;
    }
    let mut seen = vec![[false; 4]; nodes.len()];
    for &r in &real {
        for s in 0..4 {
            if seen[r][s] {
                continue;
            }
            faces[piece[r]] += 1;
            let mut x = (r, s);
            while !seen[x.0][x.1] {
                seen[x.0][x.1] = true;
                let (w, t) = alpha(x);
                x = (w, (t + 1) % 4);
            }
        }
    }
    (0..pieces)
        .map(|p| {
            let chi = verts[p] - 2 * verts[p] + faces[p];
            ((2 - chi) / 2) as usize
        })
        .sum()
}
