//! Gauss words for diagrams with a single naive component.
//!
//! Tokens are `O<id><+|->`, `U<id><+|->` and `M<id><0|1>`. A classical
//! chord is `+` when its under and over passages both run forward (slot 1 to
//! slot 3 and slot 2 to slot 4) or both run backward. A saddle chord's flag
//! is the marker read with the first passage as `a -> c`, complemented when
//! the second passage enters at `d` instead of `b`.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{MarkedVertexDiagram, Node, NodeKind};
use crate::error::{Error, Location, Result};
use crate::topology::naive_components;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hand {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaussToken {
    Over(usize, Hand),
    Under(usize, Hand),
    Saddle(usize, u8),
}

impl GaussToken {
    pub fn id(&self) -> usize {
        match *self {
            GaussToken::Over(i, _) | GaussToken::Under(i, _) | GaussToken::Saddle(i, _) => i,
        }
    }

    fn with_id(self, id: usize) -> GaussToken {
        match self {
            GaussToken::Over(_, h) => GaussToken::Over(id, h),
            GaussToken::Under(_, h) => GaussToken::Under(id, h),
            GaussToken::Saddle(_, f) => GaussToken::Saddle(id, f),
        }
    }

    pub fn is_saddle(&self) -> bool {
        matches!(self, GaussToken::Saddle(..))
    }

    fn parse(tok: &str) -> Option<GaussToken> {
        if tok.len() < 3 || !tok.is_ascii() {
            return None;
        }
        let (kind, rest) = tok.split_at(1);
        let (digits, tail) = rest.split_at(rest.len() - 1);
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let id: usize = digits.parse().ok().filter(|&i| i > 0)?;
        let hand = match tail {
            "+" => Some(Hand::Plus),
            "-" => Some(Hand::Minus),
            _ => None,
        };
        match (kind, hand, tail) {
            ("O", Some(h), _) => Some(GaussToken::Over(id, h)),
            ("U", Some(h), _) => Some(GaussToken::Under(id, h)),
            ("M", None, "0") => Some(GaussToken::Saddle(id, 0)),
            ("M", None, "1") => Some(GaussToken::Saddle(id, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for GaussToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |h: &Hand| if *h == Hand::Plus { '+' } else { '-' };
        match self {
            GaussToken::Over(i, h) => write!(f, "O{i}{}", sign(h)),
            GaussToken::Under(i, h) => write!(f, "U{i}{}", sign(h)),
            GaussToken::Saddle(i, m) => write!(f, "M{i}{m}"),
        }
    }
}

/// A cyclic word of chord endpoints read along one base circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussMVD {
    word: Vec<GaussToken>,
}

impl GaussMVD {
    /// Checks the chord invariants; errors carry a 1-based token index.
    pub fn new(word: Vec<GaussToken>) -> Result<Self> {
        let mut seen: BTreeMap<usize, Vec<(usize, GaussToken)>> = BTreeMap::new();
        for (i, &t) in word.iter().enumerate() {
            let entry = seen.entry(t.id()).or_default();
            entry.push((i + 1, t));
            let bad = |msg: &str| Error::MalformedGauss {
                index: i + 1,
                msg: format!("{t}: {msg}"),
            };
            match entry.as_slice() {
                [_] => {}
                [(_, a), (_, b)] => match (a, b) {
                    (GaussToken::Over(_, h), GaussToken::Under(_, k))
                    | (GaussToken::Under(_, h), GaussToken::Over(_, k)) => {
                        if h != k {
                            return Err(bad("handedness differs from the other end"));
                        }
                    }
                    (GaussToken::Saddle(_, f), GaussToken::Saddle(_, g)) => {
                        if f != g {
                            return Err(bad("flag differs from the other end"));
                        }
                    }
                    _ => return Err(bad("chord ends do not match")),
                },
                _ => return Err(bad("chord has more than two ends")),
            }
        }
        if let Some((_, ends)) = seen.iter().find(|(_, e)| e.len() == 1) {
            let (index, t) = ends[0];
            return Err(Error::MalformedGauss {
                index,
                msg: format!("{t}: chord has one end"),
            });
        }
        Ok(GaussMVD { word })
    }

    pub fn word(&self) -> &[GaussToken] {
        &self.word
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Parses the `.gmvd` format: whitespace-separated tokens, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut word = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                let t = GaussToken::parse(tok).ok_or_else(|| Error::Parse {
                    at: Location {
                        line: i + 1,
                        token: tok.into(),
                    },
                    msg: "expected O<id><+|->, U<id><+|-> or M<id><0|1>".into(),
                })?;
                word.push(t);
            }
        }
        Self::new(word)
    }

    pub fn to_text(&self) -> String {
        let toks: Vec<String> = self.word.iter().map(|t| t.to_string()).collect();
        toks.join(" ") + "\n"
    }

    /// Ids renumbered by first appearance.
    pub fn relabeled(&self) -> GaussMVD {
        let mut ids = BTreeMap::new();
        let word = self
            .word
            .iter()
            .map(|t| {
                let next = ids.len() + 1;
                t.with_id(*ids.entry(t.id()).or_insert(next))
            })
            .collect();
        GaussMVD { word }
    }

    /// Least relabeled word over all rotations and both reading directions.
    pub fn canonical(&self) -> GaussMVD {
        let n = self.word.len();
        let mut best: Option<GaussMVD> = None;
        for rev in [false, true] {
            let base: Vec<GaussToken> = if rev {
                self.word.iter().rev().copied().collect()
            } else {
                self.word.clone()
            };
            for r in 0..n.max(1) {
                let mut w = base.clone();
                w.rotate_left(r % n.max(1));
                let g = GaussMVD { word: w }.relabeled();
                if best.as_ref().map_or(true, |b| g.word < b.word) {
                    best = Some(g);
                }
            }
        }
        best.unwrap_or_else(|| self.clone())
    }

    /// Equal up to chord relabeling and up to rotating or reversing the base circle.
    pub fn equivalent(&self, other: &GaussMVD) -> bool {
        self.word.len() == other.word.len() && self.canonical() == other.canonical()
    }
}

impl fmt::Display for GaussMVD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_text().trim_end())
    }
}

/// Reads the single naive component of `d` as a Gauss word.
pub fn to_gauss(d: &MarkedVertexDiagram) -> Result<GaussMVD> {
    if d.free_loops() > 0 {
        return Err(Error::FreeLoops);
    }
    let comps = naive_components(d);
    if comps.len() != 1 {
        return Err(Error::MustMerge(comps.len()));
    }
    let passages = &comps[0].passages;
    // first and second passage (entering slot) at each node
    let mut visits: Vec<Vec<usize>> = vec![Vec::new(); d.nodes().len()];
    for p in passages {
        visits[p.node].push(p.from);
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut word = Vec::new();
    for p in passages {
        let node = d.nodes()[p.node];
        if node.is_virtual() {
            continue;
        }
        let next = ids.len() + 1;
        let id = *ids.entry(p.node).or_insert(next);
        let v = &visits[p.node];
        match node {
            Node::Classical(_) => {
                let under_fwd = v.contains(&0);
                let over_fwd = v.contains(&1);
                let hand = if under_fwd == over_fwd { Hand::Plus } else { Hand::Minus };
                word.push(if p.from % 2 == 0 {
                    GaussToken::Under(id, hand)
                } else {
                    GaussToken::Over(id, hand)
                });
            }
            Node::Saddle(_, m) => {
                let (first, second) = (v[0], v[1]);
                let m = if first % 2 == 1 { 1 - m } else { m };
                let flag = if (second + 4 - first) % 4 == 1 { m } else { 1 - m };
                word.push(GaussToken::Saddle(id, flag));
            }
            Node::Virtual(_) => unreachable!(),
        }
    }
    Ok(GaussMVD { word })
}

/// Parity test: every saddle chord must separate an even number of saddle
/// chord endpoints.
pub fn gauss_orientable(g: &GaussMVD) -> bool {
    let mut pos: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let saddles: Vec<usize> = g.word.iter().filter(|t| t.is_saddle()).map(|t| t.id()).collect();
    for (i, &id) in saddles.iter().enumerate() {
        pos.entry(id).or_default().push(i);
    }
    pos.values().all(|p| (p[1] - p[0] - 1) % 2 == 0)
}

/// Builds a diagram whose Gauss word is `g`, adding virtual crossings
/// where the chosen planar layout forces edges to cross.
pub fn from_gauss(g: &GaussMVD) -> Result<MarkedVertexDiagram> {
    let w = g.word();
    let len = w.len();
    if len == 0 {
        return Err(Error::MalformedGauss {
            index: 0,
            msg: "empty word has no diagram; use `O 1` for the unknotted sphere".into(),
        });
    }
    let mut chords: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, t) in w.iter().enumerate() {
        chords.entry(t.id()).or_default().push(p);
    }
    // slot_of[p] = (node, entering slot) for the passage at position p
    let mut kinds: Vec<NodeKind> = Vec::new();
    let mut slot_of = vec![(0usize, 0usize); len];
    for ps in chords.values() {
        let k = kinds.len();
        let (p, q) = (ps[0], ps[1]);
        match (w[p], w[q]) {
            (GaussToken::Saddle(_, f), _) => {
                kinds.push(NodeKind::Saddle(f));
                slot_of[p] = (k, 0);
                slot_of[q] = (k, 1);
            }
            (a, _) => {
                let (pu, po) = if matches!(a, GaussToken::Under(..)) { (p, q) } else { (q, p) };
                let hand = match a {
                    GaussToken::Under(_, h) | GaussToken::Over(_, h) => h,
                    GaussToken::Saddle(..) => unreachable!(),
                };
                // + : X(in_u, in_o, out_u, out_o); - : X(in_u, out_o, out_u, in_o)
                slot_of[pu] = (k, 0);
                slot_of[po] = (k, if hand == Hand::Plus { 1 } else { 3 });
                kinds.push(NodeKind::Classical);
            }
        }
    }
    // endpoints of edge j: leaving slot at position j, entering slot at j + 1
    let edge_ends: Vec<[(usize, usize); 2]> = (0..len)
        .map(|j| {
            let (n0, s0) = slot_of[j];
            let (n1, s1) = slot_of[(j + 1) % len];
            [(n0, (s0 + 2) % 4), (n1, s1)]
        })
        .collect();
    Ok(realize(&kinds, &edge_ends))
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    edge: usize,
    idx: usize,
    a: (i64, i64),
    b: (i64, i64),
}

/// Draws nodes on a line and routes every edge with axis-parallel
/// segments; each transverse meeting of two segments becomes a virtual node.
fn realize(kinds: &[NodeKind], edge_ends: &[[(usize, usize); 2]]) -> MarkedVertexDiagram {
    let k = kinds.len() as i64;
    let stub = |(n, s): (usize, usize)| -> (i64, i64) {
        let x = 4 * n as i64;
        match s {
            0 => (x + 1, 1),
            1 => (x - 1, 1),
            2 => (x - 1, -1),
            _ => (x + 1, -1),
        }
    };
    let mut segs = Vec::new();
    for (j, &[from, to]) in edge_ends.iter().enumerate() {
        let (p, q) = (stub(from), stub(to));
        let h = 2 + j as i64;
        let pts: Vec<(i64, i64)> = if p.1 == q.1 {
            let y = h * p.1;
            vec![p, (p.0, y), (q.0, y), q]
        } else {
            let far = 4 * k + 2 * j as i64;
            let (y0, y1) = (h * p.1, h * q.1);
            vec![p, (p.0, y0), (far, y0), (far, y1), (q.0, y1), q]
        };
        for (idx, w) in pts.windows(2).enumerate() {
            if w[0] != w[1] {
                segs.push(Seg {
                    edge: j,
                    idx,
                    a: w[0],
                    b: w[1],
                });
            }
        }
    }
    // crossing list per edge: (segment index, distance along it, virtual node, arriving slot)
    let mut on_edge: Vec<Vec<(usize, i64, usize, usize)>> = vec![Vec::new(); edge_ends.len()];
    let mut virtuals = 0;
    for hs in segs.iter().filter(|s| s.a.1 == s.b.1) {
        for vs in segs.iter().filter(|s| s.a.0 == s.b.0) {
            let y = hs.a.1;
            let x = vs.a.0;
            let (xl, xr) = (hs.a.0.min(hs.b.0), hs.a.0.max(hs.b.0));
            let (yl, yr) = (vs.a.1.min(vs.b.1), vs.a.1.max(vs.b.1));
            if xl < x && x < xr && yl < y && y < yr {
                let v = virtuals;
                virtuals += 1;
                // slots: 0 east, 1 north, 2 west, 3 south
                let east = hs.b.0 > hs.a.0;
                let north = vs.b.1 > vs.a.1;
                on_edge[hs.edge].push((hs.idx, (x - hs.a.0).abs(), v, if east { 2 } else { 0 }));
                on_edge[vs.edge].push((vs.idx, (y - vs.a.1).abs(), v, if north { 3 } else { 1 }));
            }
        }
    }
    let mut real_slots = vec![[0usize; 4]; kinds.len()];
    let mut virt_slots = vec![[0usize; 4]; virtuals];
    let mut next = 1;
    for (j, crossings) in on_edge.iter_mut().enumerate() {
        crossings.sort();
        let [(n0, s0), (n1, s1)] = edge_ends[j];
        real_slots[n0][s0] = next;
        for &(_, _, v, arrive) in crossings.iter() {
            virt_slots[v][arrive] = next;
            next += 1;
            virt_slots[v][(arrive + 2) % 4] = next;
        }
        real_slots[n1][s1] = next;
        next += 1;
    }
    let mut nodes: Vec<Node> = kinds.iter().zip(&real_slots).map(|(&k, &s)| Node::new(k, s)).collect();
    nodes.extend(virt_slots.into_iter().map(Node::Virtual));
    MarkedVertexDiagram::new(0, nodes).expect("layout output is well formed")
}
