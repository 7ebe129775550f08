//! Virtual marked vertex diagrams as 4-valent node lists over semiarc ids.
//!
//! Slots of every node are listed counterclockwise. A classical crossing
//! `X u1 o1 u2 o2` has its under strand on slots 1 and 3; a saddle
//! `S a b c d m` and a virtual crossing `V a b c d` have strands `(a, c)`
//! and `(b, d)`. Every node breaks semiarcs, so each id in `1..=m` occurs
//! in exactly two slots.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Location, Result};

/// One 4-valent node. Slot arrays hold 1-based semiarc ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Classical([usize; 4]),
    /// Slots and marker bit. With marker 0 the lower smoothing joins a-b and
    /// c-d and the upper joins b-c and d-a; marker 1 swaps the two levels.
    Saddle([usize; 4], u8),
    Virtual([usize; 4]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Classical,
    Saddle(u8),
    Virtual,
}

impl Node {
    pub fn new(kind: NodeKind, slots: [usize; 4]) -> Node {
        match kind {
            NodeKind::Classical => Node::Classical(slots),
            NodeKind::Saddle(m) => Node::Saddle(slots, m),
            NodeKind::Virtual => Node::Virtual(slots),
        }
    }

    pub fn slots(&self) -> [usize; 4] {
        match *self {
            Node::Classical(s) | Node::Saddle(s, _) | Node::Virtual(s) => s,
        }
    }

    pub fn kind(&self) -> NodeKind {
        match *self {
            Node::Classical(_) => NodeKind::Classical,
            Node::Saddle(_, m) => NodeKind::Saddle(m),
            Node::Virtual(_) => NodeKind::Virtual,
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, Node::Classical(_))
    }

    pub fn is_saddle(&self) -> bool {
        matches!(self, Node::Saddle(..))
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, Node::Virtual(_))
    }

    /// The same node read starting `r` slots later. Odd rotations are
    /// forbidden for classical nodes; for saddles they flip the marker.
    pub(crate) fn rotated(&self, r: usize) -> Node {
        let s = self.slots();
        let t = [s[r % 4], s[(r + 1) % 4], s[(r + 2) % 4], s[(r + 3) % 4]];
        match *self {
            Node::Classical(_) => {
                debug_assert!(r % 2 == 0);
                Node::Classical(t)
            }
            Node::Saddle(_, m) => Node::Saddle(t, if r % 2 == 1 { 1 - m } else { m }),
            Node::Virtual(_) => Node::Virtual(t),
        }
    }

    /// Rotations that describe the same node.
    pub(crate) fn rotations(&self) -> &'static [usize] {
        match self {
            Node::Classical(_) => &[0, 2],
            _ => &[0, 1, 2, 3],
        }
    }

    /// Least representative under the rotation identities.
    pub fn normalized(&self) -> Node {
        self.rotations()
            .iter()
            .map(|&r| self.rotated(r))
            .min()
            .expect("nonempty rotation set")
    }

    fn letter(&self) -> char {
        match self {
            Node::Classical(_) => 'X',
            Node::Saddle(..) => 'S',
            Node::Virtual(_) => 'V',
        }
    }
}

impl std::fmt::Display for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.slots();
        write!(f, "{} {a} {b} {c} {d}", self.letter())?;
        if let Node::Saddle(_, m) = self {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// A slot position: node index and 0-based slot.
pub type Endpoint = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedVertexDiagram {
    free_loops: usize,
    nodes: Vec<Node>,
    semiarcs: usize,
}

impl MarkedVertexDiagram {
    /// Builds and validates a diagram.
    pub fn new(free_loops: usize, nodes: Vec<Node>) -> Result<Self> {
        let problems = check(&nodes);
        if !problems.is_empty() {
            return Err(Error::InvalidDiagram(problems));
        }
        let semiarcs = nodes.len() * 2;
        Ok(MarkedVertexDiagram {
            free_loops,
            nodes,
            semiarcs,
        })
    }

    /// The unknotted sphere `O 1`.
    pub fn unknot() -> Self {
        MarkedVertexDiagram {
            free_loops: 1,
            nodes: Vec::new(),
            semiarcs: 0,
        }
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Result<&Node> {
        self.nodes.get(i).ok_or(Error::NoSuchNode(i))
    }

    /// Number of semiarcs `m`; ids run `1..=m`.
    pub fn semiarc_count(&self) -> usize {
        self.semiarcs
    }

    /// Both endpoints of every semiarc, indexed by `id - 1`, each pair in
    /// ascending order.
    pub fn endpoints(&self) -> Vec<[Endpoint; 2]> {
        let mut ends: Vec<Vec<Endpoint>> = vec![Vec::with_capacity(2); self.semiarcs];
        for (i, n) in self.nodes.iter().enumerate() {
            for (s, &a) in n.slots().iter().enumerate() {
                ends[a - 1].push((i, s));
            }
        }
        ends.into_iter().map(|e| [e[0], e[1]]).collect()
    }

    /// Semiarc id at a slot.
    pub fn semiarc_at(&self, (node, slot): Endpoint) -> usize {
        self.nodes[node].slots()[slot]
    }

    /// Every node replaced by its least representative, order kept.
    pub fn normalized(&self) -> Self {
        MarkedVertexDiagram {
            free_loops: self.free_loops,
            nodes: self.nodes.iter().map(Node::normalized).collect(),
            semiarcs: self.semiarcs,
        }
    }

    /// A key equal for two diagrams exactly when they differ only by node
    /// order, semiarc numbering and node rotation.
    pub fn canonical_key(&self) -> String {
        let ends = self.endpoints();
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                k += 1;
                for &a in &self.nodes[v].slots() {
                    for &(w, _) in &ends[a - 1] {
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                        }
                    }
                }
            }
            comps.push(members);
        }
        let mut codes: Vec<Vec<usize>> = comps
            .iter()
            .map(|members| {
                members
                    .iter()
                    .flat_map(|&v| self.nodes[v].rotations().iter().map(move |&r| (v, r)))
                    .map(|(v, r)| self.bfs_code(&ends, v, r))
                    .min()
                    .expect("component is nonempty")
            })
            .collect();
        codes.sort();
        let mut key = format!("O{}", self.free_loops);
        for c in codes {
            key.push('|');
            for x in c {
                let _ = write!(key, "{x},");
            }
        }
        key
    }

    fn bfs_code(&self, ends: &[[Endpoint; 2]], start: usize, rot: usize) -> Vec<usize> {
        let n = self.nodes.len();
        let mut rotation = vec![usize::MAX; n];
        let mut order = vec![start];
        rotation[start] = rot;
        let mut label = vec![0usize; self.semiarcs];
        let mut next_label = 1;
        let mut code = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            k += 1;
            let node = self.nodes[v].rotated(rotation[v]);
            code.push(match node.kind() {
                NodeKind::Classical => 0,
                NodeKind::Saddle(m) => 1 + m as usize,
                NodeKind::Virtual => 3,
            });
            for (i, &a) in node.slots().iter().enumerate() {
                if label[a - 1] == 0 {
                    label[a - 1] = next_label;
                    next_label += 1;
                }
                code.push(label[a - 1]);
                let here = (v, (i + rotation[v]) % 4);
                let other = if ends[a - 1][0] == here {
                    ends[a - 1][1]
                } else {
                    ends[a - 1][0]
                };
                let (w, s) = other;
                if rotation[w] == usize::MAX {
                    rotation[w] = *self.nodes[w]
                        .rotations()
                        .iter()
                        .min_by_key(|&&r| (s + 4 - r) % 4)
                        .expect("nonempty");
                    order.push(w);
                }
            }
        }
        code
    }

    /// Parses the `.mvd` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut free_loops: Option<usize> = None;
        let mut nodes = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |tok: &str, msg: String| Error::Parse {
                at: Location {
                    line: line_no,
                    token: tok.to_string(),
                },
                msg,
            };
            let int = |tok: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| err(tok, "expected a non-negative integer".into()))
            };
            let arity = |want: usize| -> Result<()> {
                if toks.len() - 1 != want {
                    let tok = toks.get(want + 1).copied().unwrap_or(toks[toks.len() - 1]);
                    return Err(err(
                        tok,
                        format!("`{}` takes {want} values, found {}", toks[0], toks.len() - 1),
                    ));
                }
                Ok(())
            };
            let semiarcs = |toks: &[&str]| -> Result<[usize; 4]> {
                let mut s = [0; 4];
                for (k, t) in toks.iter().enumerate() {
                    s[k] = int(t)?;
                    if s[k] == 0 {
                        return Err(err(t, "semiarc ids start at 1".into()));
                    }
                }
                Ok(s)
            };
            match toks[0] {
                "O" => {
                    arity(1)?;
                    if free_loops.is_some() {
                        return Err(err("O", "free loops given twice".into()));
                    }
                    free_loops = Some(int(toks[1])?);
                }
                "X" => {
                    arity(4)?;
                    nodes.push(Node::Classical(semiarcs(&toks[1..5])?));
                }
                "V" => {
                    arity(4)?;
                    nodes.push(Node::Virtual(semiarcs(&toks[1..5])?));
                }
                "S" => {
                    arity(5)?;
                    let s = semiarcs(&toks[1..5])?;
                    let m = match toks[5] {
                        "0" => 0,
                        "1" => 1,
                        t => return Err(err(t, "marker bit must be 0 or 1".into())),
                    };
                    nodes.push(Node::Saddle(s, m));
                }
                t => return Err(err(t, "expected O, X, S or V".into())),
            }
        }
        Self::new(free_loops.unwrap_or(0), nodes)
    }

    /// Writes the `.mvd` format: nodes in order, each normalized.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.free_loops > 0 {
            let _ = writeln!(out, "O {}", self.free_loops);
        }
        for n in &self.nodes {
            let _ = writeln!(out, "{}", n.normalized());
        }
        out
    }
}

/// Checks the slot multiset; returns every problem found.
fn check(nodes: &[Node]) -> Vec<String> {
    let mut problems = Vec::new();
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        if let Node::Saddle(_, m) = n {
            if *m > 1 {
                problems.push(format!("node {i}: marker bit {m} is not 0 or 1"));
            }
        }
        for &a in &n.slots() {
            if a == 0 {
                problems.push(format!("node {i}: semiarc 0 is not allowed"));
            } else {
                *seen.entry(a).or_default() += 1;
            }
        }
    }
    let max = seen.keys().next_back().copied().unwrap_or(0);
    for a in 1..=max {
        match seen.get(&a).copied().unwrap_or(0) {
            2 => {}
            0 => problems.push(format!("semiarc {a} is missing from 1..={max}")),
            k => problems.push(format!("semiarc {a} occurs {k} times, expected 2")),
        }
    }
    problems
}

/// Re-checks the diagram invariants.
pub fn validate(d: &MarkedVertexDiagram) -> Result<()> {
    let problems = check(d.nodes());
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(problems))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagramCounts {
    pub c: usize,
    pub h: usize,
    pub v: usize,
    pub ch: usize,
    pub vch: usize,
}

pub fn counts(d: &MarkedVertexDiagram) -> DiagramCounts {
    let c = d.nodes().iter().filter(|n| n.is_classical()).count();
    let h = d.nodes().iter().filter(|n| n.is_saddle()).count();
    let v = d.nodes().iter().filter(|n| n.is_virtual()).count();
    DiagramCounts {
        c,
        h,
        v,
        ch: c + h,
        vch: c + h + v,
    }
}
