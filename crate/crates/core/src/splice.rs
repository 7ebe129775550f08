//! Rewiring of diagrams through auxiliary points.
//!
//! A splice holds real slots (of the nodes that will exist afterwards) and
//! auxiliary points of degree two. Links join points; tracing from a real
//! slot through auxiliary points until the next real slot yields one
//! semiarc of the result, and closed chains of auxiliary points become free
//! loops.

use crate::diagram::{MarkedVertexDiagram, Node, NodeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Pt {
    Slot(usize, usize),
    Aux(usize),
}

#[derive(Debug, Default)]
pub(crate) struct Splice {
    kinds: Vec<NodeKind>,
    aux: usize,
    links: Vec<(Pt, Pt)>,
    free_loops: usize,
}

/// Where the slots of an old diagram went.
pub(crate) struct OldMap {
    map: Vec<[Pt; 4]>,
}

impl OldMap {
    pub fn pt(&self, node: usize, slot: usize) -> Pt {
        self.map[node][slot]
    }
}

impl Splice {
    /// Starts from `d`: nodes with `removed[i]` become four auxiliary points
    /// each, the others keep their order. Every semiarc not in `cut` becomes
    /// a link between its two endpoints.
    pub fn from_diagram(d: &MarkedVertexDiagram, removed: &[bool], cut: &[usize]) -> (Splice, OldMap) {
        let mut sp = Splice {
            free_loops: d.free_loops(),
            ..Default::default()
        };
        let mut map = Vec::with_capacity(d.nodes().len());
        for (i, n) in d.nodes().iter().enumerate() {
            if removed.get(i).copied().unwrap_or(false) {
                let base = sp.aux;
                sp.aux += 4;
                map.push([Pt::Aux(base), Pt::Aux(base + 1), Pt::Aux(base + 2), Pt::Aux(base + 3)]);
            } else {
                let k = sp.add_node(n.kind());
                map.push([Pt::Slot(k, 0), Pt::Slot(k, 1), Pt::Slot(k, 2), Pt::Slot(k, 3)]);
            }
        }
        for (a, [(n0, s0), (n1, s1)]) in d.endpoints().into_iter().enumerate() {
            if !cut.contains(&(a + 1)) {
                sp.link(map[n0][s0], map[n1][s1]);
            }
        }
        (sp, OldMap { map })
    }

    pub fn add_node(&mut self, kind: NodeKind) -> usize {
        self.kinds.push(kind);
        self.kinds.len() - 1
    }

    pub fn add_aux(&mut self) -> Pt {
        self.aux += 1;
        Pt::Aux(self.aux - 1)
    }

    pub fn link(&mut self, a: Pt, b: Pt) {
        self.links.push((a, b));
    }

    pub fn free_loops_mut(&mut self) -> &mut usize {
        &mut self.free_loops
    }

    /// Auxiliary points left without links are dropped.
    /// Traces every chain and numbers semiarcs by first appearance in
    /// (node, slot) order.
    pub fn finish(self) -> MarkedVertexDiagram {
        let real = self.kinds.len() * 4;
        let idx = |p: Pt| match p {
            Pt::Slot(n, s) => n * 4 + s,
            Pt::Aux(a) => real + a,
        };
        let total = real + self.aux;
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); total];
        for (l, &(a, b)) in self.links.iter().enumerate() {
            inc[idx(a)].push(l);
            inc[idx(b)].push(l);
        }
        for (p, e) in inc.iter().enumerate() {
            let ok = if p < real { e.len() == 1 } else { e.len() != 1 && e.len() <= 2 };
            assert!(ok, "splice point {p} has degree {}", e.len());
        }
        let ends: Vec<(usize, usize)> = self.links.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
        let mut used = vec![false; self.links.len()];
        let mut partner = vec![usize::MAX; real];
        for start in 0..real {
            if partner[start] != usize::MAX {
                continue;
            }
            let mut p = start;
            let mut l = inc[p][0];
            loop {
                used[l] = true;
                let (a, b) = ends[l];
                let q = if a == p { b } else { a };
                if q < real {
                    partner[start] = q;
                    partner[q] = start;
                    break;
                }
                l = if inc[q][0] == l { inc[q][1] } else { inc[q][0] };
                p = q;
            }
        }
        let mut free_loops = self.free_loops;
        for l in 0..self.links.len() {
            if used[l] {
                continue;
            }
            free_loops += 1;
            let mut cur = l;
            let mut p = ends[l].0;
            loop {
                used[cur] = true;
                let (a, b) = ends[cur];
                let q = if a == p { b } else { a };
                let next = if inc[q][0] == cur { inc[q][1] } else { inc[q][0] };
                if used[next] {
                    break;
                }
                cur = next;
                p = q;
            }
        }
        let mut id = vec![0usize; real];
        let mut next = 1;
        for p in 0..real {
            if id[p] == 0 {
                id[p] = next;
                id[partner[p]] = next;
                next += 1;
            }
        }
        let nodes = self
            .kinds
            .iter()
            .enumerate()
            .map(|(n, &k)| Node::new(k, [id[4 * n], id[4 * n + 1], id[4 * n + 2], id[4 * n + 3]]))
            .collect();
        MarkedVertexDiagram::new(free_loops, nodes).expect("splice output is well formed")
    }
}
