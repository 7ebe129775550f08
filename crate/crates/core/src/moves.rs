//! Yoshikawa moves as pattern rewrites, plus the detour move.
//!
//! Each move is a pair of fragments under `moves/schema/`. A fragment lists
//! its dangling semiarcs on a `BOUNDARY` line and is either a set of nodes
//! or a set of plain strands `A p q` running from boundary `p` to `q`.
//! Matching is up to node rotation. Variants are closed under plane
//! reflection and crossing change, and under marker flips where allowed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::diagram::{MarkedVertexDiagram, Node, NodeKind};
use crate::error::{Error, Location, Result};
use crate::splice::{Pt, Splice};
use crate::topology::naive_components;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveId {
    Y1,
    Y1p,
    Y2,
    Y3,
    Y4,
    Y4p,
    Y5,
    Y6,
    Y6p,
    Y7,
    Y8,
}

impl MoveId {
    pub const ALL: [MoveId; 11] = [
        MoveId::Y1,
        MoveId::Y1p,
        MoveId::Y2,
        MoveId::Y3,
        MoveId::Y4,
        MoveId::Y4p,
        MoveId::Y5,
        MoveId::Y6,
        MoveId::Y6p,
        MoveId::Y7,
        MoveId::Y8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveId::Y1 => "Y1",
            MoveId::Y1p => "Y1'",
            MoveId::Y2 => "Y2",
            MoveId::Y3 => "Y3",
            MoveId::Y4 => "Y4",
            MoveId::Y4p => "Y4'",
            MoveId::Y5 => "Y5",
            MoveId::Y6 => "Y6",
            MoveId::Y6p => "Y6'",
            MoveId::Y7 => "Y7",
            MoveId::Y8 => "Y8",
        }
    }

    fn schema(self) -> (&'static str, &'static str) {
        macro_rules! s {
            ($n:literal) => {
                (
                    include_str!(concat!("../../../moves/schema/", $n, ".before.mvd")),
                    include_str!(concat!("../../../moves/schema/", $n, ".after.mvd")),
                )
            };
        }
        match self {
            MoveId::Y1 => s!("Y1"),
            MoveId::Y1p => s!("Y1'"),
            MoveId::Y2 => s!("Y2"),
            MoveId::Y3 => s!("Y3"),
            MoveId::Y4 => s!("Y4"),
            MoveId::Y4p => s!("Y4'"),
            MoveId::Y5 => s!("Y5"),
            MoveId::Y6 => s!("Y6"),
            MoveId::Y6p => s!("Y6'"),
            MoveId::Y7 => s!("Y7"),
            MoveId::Y8 => s!("Y8"),
        }
    }

    /// (reflect, crossing change, marker flip)
    fn symmetries(self) -> (bool, bool, bool) {
        match self {
            MoveId::Y1 | MoveId::Y1p => (false, false, false),
            MoveId::Y4 | MoveId::Y4p => (true, false, true),
            MoveId::Y6 | MoveId::Y6p => (true, false, false),
            _ => (true, true, true),
        }
    }
}

impl fmt::Display for MoveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<MoveId> {
        MoveId::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('\'', "p") == s)
            .ok_or_else(|| Error::UnknownMove(s.to_string()))
    }
}

/// One side of a move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub boundary: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
    pub nodes: Vec<Node>,
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Pattern> {
        let mut boundary = None;
        let mut arcs = Vec::new();
        let mut body = String::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |tok: &str, msg: &str| Error::Parse {
                at: Location {
                    line: i + 1,
                    token: tok.into(),
                },
                msg: msg.into(),
            };
            let ints = |ts: &[&str]| -> Result<Vec<usize>> {
                ts.iter()
                    .map(|t| t.parse::<usize>().ok().filter(|&v| v > 0).ok_or_else(|| err(t, "expected a semiarc id")))
                    .collect()
            };
            match toks.first() {
                None => body.push('\n'),
                Some(&"BOUNDARY") => {
                    boundary = Some(ints(&toks[1..])?);
                    body.push('\n');
                }
                Some(&"A") => {
                    let v = ints(&toks[1..])?;
                    if v.len() != 2 {
                        return Err(err(line, "`A` takes two boundary ids"));
                    }
                    arcs.push((v[0], v[1]));
                    body.push('\n');
                }
                Some(_) => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let boundary = boundary.ok_or_else(|| Error::Parse {
            at: Location {
                line: 1,
                token: String::new(),
            },
            msg: "missing BOUNDARY line".into(),
        })?;
        let nodes = if body.trim().is_empty() {
            Vec::new()
        } else {
            fragment_nodes(&body)?
        };
        Ok(Pattern {
            boundary,
            arcs,
            nodes,
        })
    }

    /// Label -> slots `(pattern node, slot)` where it occurs.
    fn occurrences(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (j, n) in self.nodes.iter().enumerate() {
            for (s, &a) in n.slots().iter().enumerate() {
                occ.entry(a).or_default().push((j, s));
            }
        }
        occ
    }

    fn map_nodes(&self, f: impl Fn(&Node) -> Node) -> Pattern {
        Pattern {
            boundary: self.boundary.clone(),
            arcs: self.arcs.clone(),
            nodes: self.nodes.iter().map(f).collect(),
        }
    }
}

/// Node lines of a fragment; labels need not be contiguous.
fn fragment_nodes(body: &str) -> Result<Vec<Node>> {
    let mut nodes = Vec::new();
    for (i, raw) in body.lines().enumerate() {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let err = |tok: &str| Error::Parse {
            at: Location {
                line: i + 1,
                token: tok.into(),
            },
            msg: "bad fragment node".into(),
        };
        let want = if toks[0] == "S" { 6 } else { 5 };
        if toks.len() != want {
            return Err(err(raw));
        }
        let mut s = [0; 4];
        for k in 0..4 {
            s[k] = toks[k + 1].parse().map_err(|_| err(toks[k + 1]))?;
        }
        nodes.push(match toks[0] {
            "X" => Node::Classical(s),
            "V" => Node::Virtual(s),
            "S" => match toks[5] {
                "0" => Node::Saddle(s, 0),
                "1" => Node::Saddle(s, 1),
                t => return Err(err(t)),
            },
            t => return Err(err(t)),
        });
    }
    Ok(nodes)
}

fn reflect(n: &Node) -> Node {
    match *n {
        Node::Classical([u1, o1, u2, o2]) => Node::Classical([u1, o2, u2, o1]),
        Node::Saddle([a, b, c, d], m) => Node::Saddle([a, d, c, b], 1 - m),
        Node::Virtual([a, b, c, d]) => Node::Virtual([a, d, c, b]),
    }
}

fn change_crossing(n: &Node) -> Node {
    match *n {
        Node::Classical([u1, o1, u2, o2]) => Node::Classical([o1, u2, o2, u1]),
        other => other,
    }
}

fn flip_marker(n: &Node) -> Node {
    match *n {
        Node::Saddle(s, m) => Node::Saddle(s, 1 - m),
        other => other,
    }
}

/// Before and after fragments of one variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variant {
    pub before: Pattern,
    pub after: Pattern,
}

/// All variants of a move, base variant first.
pub fn variants(id: MoveId) -> &'static [Variant] {
    static CACHE: OnceLock<Vec<Vec<Variant>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        MoveId::ALL
            .iter()
            .map(|&m| {
                let (b, a) = m.schema();
                let base = Variant {
                    before: Pattern::parse(b).expect("shipped schema parses"),
                    after: Pattern::parse(a).expect("shipped schema parses"),
                };
                let (r, c, f) = m.symmetries();
                let mut out = vec![base];
                let gens: [(bool, fn(&Node) -> Node); 3] =
                    [(r, reflect), (c, change_crossing), (f, flip_marker)];
                for (on, g) in gens {
                    if !on {
                        continue;
                    }
                    let extra: Vec<Variant> = out
                        .iter()
                        .map(|v| Variant {
                            before: v.before.map_nodes(g),
                            after: v.after.map_nodes(g),
                        })
                        .collect();
                    for v in extra {
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
                out
            })
            .collect()
    });
    &all[MoveId::ALL.iter().position(|&m| m == id).expect("listed")]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Replace the before fragment by the after fragment.
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// What a plain strand of a fragment was matched to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcRef {
    /// A semiarc read from its smaller endpoint to its larger, or backward.
    Semiarc { id: usize, reversed: bool },
    FreeLoop,
}

/// A match of one side of a move inside a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub move_id: MoveId,
    pub variant: usize,
    pub direction: Direction,
    /// Diagram node matched by each fragment node.
    pub matched_nodes: Vec<usize>,
    /// Rotation applied to each matched node.
    pub rotations: Vec<usize>,
    /// Match of each fragment strand.
    pub arcs: Vec<ArcRef>,
    /// Every diagram semiarc touched, ascending.
    pub matched_semiarcs: Vec<usize>,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "move={} variant={} direction={} nodes={} semiarcs={}",
            self.move_id,
            self.variant,
            self.direction,
            join(&self.matched_nodes),
            join(&self.matched_semiarcs)
        )?;
        if self.arcs.contains(&ArcRef::FreeLoop) {
            let loops = self.arcs.iter().filter(|a| **a == ArcRef::FreeLoop).count();
            write!(f, " free_loops={loops}")?;
        }
        Ok(())
    }
}

/// Label -> diagram semiarc for a node match, or the reason it fails.
fn check_node_match(
    d: &MarkedVertexDiagram,
    pat: &Pattern,
    nodes: &[usize],
    rots: &[usize],
) -> std::result::Result<BTreeMap<usize, usize>, String> {
    if nodes.len() != pat.nodes.len() || rots.len() != nodes.len() {
        return Err("wrong number of matched nodes".into());
    }
    let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, (&i, &r)) in nodes.iter().zip(rots).enumerate() {
        let node = d.nodes().get(i).ok_or_else(|| format!("node {i} does not exist"))?;
        if nodes[..j].contains(&i) {
            return Err(format!("node {i} matched twice"));
        }
        if !node.rotations().contains(&r) {
            return Err(format!("rotation {r} not allowed at node {i}"));
        }
        let rn = node.rotated(r);
        if rn.kind() != pat.nodes[j].kind() {
            return Err(format!("node {i} is `{}`, fragment wants `{}`", node, pat.nodes[j]));
        }
        for (&l, &a) in pat.nodes[j].slots().iter().zip(rn.slots().iter()) {
            match labels.get(&l) {
                Some(&b) if b != a => {
                    return Err(format!("fragment semiarc {l} meets semiarcs {b} and {a} at node {i}"))
                }
                _ => {
                    labels.insert(l, a);
                }
            }
        }
    }
    Ok(labels)
}

fn check_arc_match(d: &MarkedVertexDiagram, pat: &Pattern, arcs: &[ArcRef]) -> std::result::Result<(), String> {
    if arcs.len() != pat.arcs.len() {
        return Err("wrong number of matched strands".into());
    }
    let loops = arcs.iter().filter(|a| **a == ArcRef::FreeLoop).count();
    if loops > d.free_loops() {
        return Err(format!("needs {loops} free loops, diagram has {}", d.free_loops()));
    }
    let mut ids = Vec::new();
    for a in arcs {
        if let ArcRef::Semiarc { id, .. } = *a {
            if id == 0 || id > d.semiarc_count() {
                return Err(format!("semiarc {id} does not exist"));
            }
            if ids.contains(&id) {
                return Err(format!("semiarc {id} matched twice"));
            }
            ids.push(id);
        }
    }
    Ok(())
}

/// All matches of a node fragment, growing along internal semiarcs.
fn node_matches(d: &MarkedVertexDiagram, pat: &Pattern) -> Vec<(Vec<usize>, Vec<usize>)> {
    let occ = pat.occurrences();
    let ends = d.endpoints();
    // pattern node order where each node after the first shares an internal label with an earlier one
    let k = pat.nodes.len();
    let mut order = vec![0];
    let mut anchor: Vec<Option<(usize, usize, usize)>> = vec![None; k]; // (label, earlier node, slot in new node)
    while order.len() < k {
        let mut grown = false;
        'find: for j in 0..k {
            if order.contains(&j) {
                continue;
            }
            for (s, l) in pat.nodes[j].slots().iter().enumerate() {
                for &(j2, _) in &occ[l] {
                    if j2 != j && order.contains(&j2) {
                        anchor[j] = Some((*l, j2, s));
                        order.push(j);
                        grown = true;
                        break 'find;
                    }
                }
            }
        }
        assert!(grown, "move fragment must be connected");
    }
    let mut out = Vec::new();
    let mut nodes = vec![usize::MAX; k];
    let mut rots = vec![0; k];
    fn extend(
        d: &MarkedVertexDiagram,
        pat: &Pattern,
        ends: &[[(usize, usize); 2]],
        order: &[usize],
        anchor: &[Option<(usize, usize, usize)>],
        step: usize,
        nodes: &mut Vec<usize>,
        rots: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let placed: Vec<usize> = order[..step].to_vec();
        let sub_ok = |nodes: &[usize], rots: &[usize]| {
            let sub = Pattern {
                boundary: vec![],
                arcs: vec![],
                nodes: placed.iter().map(|&j| pat.nodes[j]).collect(),
            };
            let n: Vec<usize> = placed.iter().map(|&j| nodes[j]).collect();
            let r: Vec<usize> = placed.iter().map(|&j| rots[j]).collect();
            check_node_match(d, &sub, &n, &r).is_ok()
        };
        if step > 0 && !sub_ok(nodes, rots) {
            return;
        }
        if step == order.len() {
            out.push((nodes.clone(), rots.clone()));
            return;
        }
        let j = order[step];
        let candidates: Vec<(usize, usize)> = match anchor[j] {
            None => (0..d.nodes().len())
                .flat_map(|i| d.nodes()[i].rotations().iter().map(move |&r| (i, r)))
                .collect(),
            Some((label, j2, s)) => {
                // the label's slot in the earlier node
                let s2 = pat.nodes[j2]
                    .slots()
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l == label)
                    .map(|(t, _)| t)
                    .next()
                    .expect("label present");
                let here = (nodes[j2], (s2 + rots[j2]) % 4);
                let a = d.semiarc_at(here);
                let [e0, e1] = ends[a - 1];
                let there = if e0 == here { e1 } else { e0 };
                let r = (there.1 + 4 - s) % 4;
                if d.nodes()[there.0].rotations().contains(&r) {
                    vec![(there.0, r)]
                } else {
                    vec![]
                }
            }
        };
        for (i, r) in candidates {
            if order[..step].iter().any(|&p| nodes[p] == i) {
                continue;
            }
            nodes[j] = i;
            rots[j] = r;
            extend(d, pat, ends, order, anchor, step + 1, nodes, rots, out);
            nodes[j] = usize::MAX;
        }
    }
    extend(d, pat, &ends, &order, &anchor, 0, &mut nodes, &mut rots, &mut out);
    out.retain(|(n, r)| check_node_match(d, pat, n, r).is_ok());
    out.sort();
    out.dedup();
    out
}

fn arc_matches(d: &MarkedVertexDiagram, count: usize) -> Vec<Vec<ArcRef>> {
    let mut single: Vec<ArcRef> = (1..=d.semiarc_count())
        .flat_map(|id| [false, true].map(|reversed| ArcRef::Semiarc { id, reversed }))
        .collect();
    if d.free_loops() > 0 {
        single.push(ArcRef::FreeLoop);
    }
    let mut out: Vec<Vec<ArcRef>> = vec![vec![]];
    for _ in 0..count {
        let mut next = Vec::new();
        for prefix in &out {
            for &a in &single {
                let mut v = prefix.clone();
                v.push(a);
                if check_arc_match(d, &Pattern { boundary: vec![], arcs: vec![(0, 0); v.len()], nodes: vec![] }, &v).is_ok() {
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

fn sides(v: &Variant, dir: Direction) -> (&Pattern, &Pattern) {
    match dir {
        Direction::Forward => (&v.before, &v.after),
        Direction::Backward => (&v.after, &v.before),
    }
}

/// Every site of `id` in `d`, both directions, in a fixed order.
pub fn applicable_sites(d: &MarkedVertexDiagram, id: MoveId) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    for (vi, v) in variants(id).iter().enumerate() {
        for dir in [Direction::Forward, Direction::Backward] {
            let (pat, _) = sides(v, dir);
            if pat.nodes.is_empty() {
                for arcs in arc_matches(d, pat.arcs.len()) {
                    let mut semis: Vec<usize> = arcs
                        .iter()
                        .filter_map(|a| match a {
                            ArcRef::Semiarc { id, .. } => Some(*id),
                            ArcRef::FreeLoop => None,
                        })
                        .collect();
                    semis.sort();
                    sites.push(MoveSite {
                        move_id: id,
                        variant: vi,
                        direction: dir,
                        matched_nodes: vec![],
                        rotations: vec![],
                        arcs,
                        matched_semiarcs: semis,
                    });
                }
            } else {
                let mut results: Vec<(Vec<usize>, String)> = Vec::new();
                for (nodes, rots) in node_matches(d, pat) {
                    let mut set = nodes.clone();
                    set.sort();
                    let probe = MoveSite {
                        move_id: id,
                        variant: vi,
                        direction: dir,
                        matched_nodes: nodes.clone(),
                        rotations: rots.clone(),
                        arcs: vec![],
                        matched_semiarcs: vec![],
                    };
                    let key = apply_move(d, &probe).expect("fresh match").canonical_key();
                    if results.iter().any(|(s, k)| *s == set && *k == key) {
                        continue;
                    }
                    results.push((set, key));
                    let labels = check_node_match(d, pat, &nodes, &rots).expect("fresh match");
                    let mut semis: Vec<usize> = labels.values().copied().collect();
                    semis.sort();
                    semis.dedup();
                    sites.push(MoveSite {
                        move_id: id,
                        variant: vi,
                        direction: dir,
                        matched_nodes: nodes,
                        rotations: rots,
                        arcs: vec![],
                        matched_semiarcs: semis,
                    });
                }
            }
        }
    }
    let key = |s: &MoveSite| {
        (
            s.matched_nodes.iter().min().copied().unwrap_or(usize::MAX),
            s.matched_semiarcs.first().copied().unwrap_or(usize::MAX),
            s.clone(),
        )
    };
    sites.sort_by_cached_key(key);
    sites
}

/// Sites of every move, in catalog order.
pub fn all_sites(d: &MarkedVertexDiagram) -> Vec<MoveSite> {
    MoveId::ALL.iter().flat_map(|&m| applicable_sites(d, m)).collect()
}

/// Rewrites `d` at `site`; fails if the site no longer matches.
pub fn apply_move(d: &MarkedVertexDiagram, site: &MoveSite) -> Result<MarkedVertexDiagram> {
    let stale = |msg: String| Error::StaleSite(format!("{} {}: {msg}", site.move_id, site.direction));
    let v = variants(site.move_id)
        .get(site.variant)
        .ok_or_else(|| stale(format!("no variant {}", site.variant)))?;
    let (pat, rep) = sides(v, site.direction);
    let mut port: BTreeMap<usize, Pt> = BTreeMap::new();
    let mut sp;
    if pat.nodes.is_empty() {
        check_arc_match(d, pat, &site.arcs).map_err(stale)?;
        let cut: Vec<usize> = site
            .arcs
            .iter()
            .filter_map(|a| match a {
                ArcRef::Semiarc { id, .. } => Some(*id),
                ArcRef::FreeLoop => None,
            })
            .collect();
        let (s, map) = Splice::from_diagram(d, &[], &cut);
        sp = s;
        let ends = d.endpoints();
        for (&(p, q), a) in pat.arcs.iter().zip(&site.arcs) {
            let pp = sp.add_aux();
            let qq = sp.add_aux();
            match *a {
                ArcRef::Semiarc { id, reversed } => {
                    let [mut e0, mut e1] = ends[id - 1];
                    if reversed {
                        std::mem::swap(&mut e0, &mut e1);
                    }
                    sp.link(map.pt(e0.0, e0.1), pp);
                    sp.link(qq, map.pt(e1.0, e1.1));
                }
                ArcRef::FreeLoop => {
                    sp.link(pp, qq);
                    *sp.free_loops_mut() -= 1;
                }
            }
            port.insert(p, pp);
            port.insert(q, qq);
        }
    } else {
        let labels = check_node_match(d, pat, &site.matched_nodes, &site.rotations).map_err(stale)?;
        let occ = pat.occurrences();
        let internal: Vec<usize> = occ
            .iter()
            .filter(|(_, o)| o.len() == 2)
            .map(|(l, _)| labels[l])
            .collect();
        let mut removed = vec![false; d.nodes().len()];
        for &i in &site.matched_nodes {
            removed[i] = true;
        }
        let (s, map) = Splice::from_diagram(d, &removed, &internal);
        sp = s;
        for &b in &pat.boundary {
            let (j, slot) = occ[&b][0];
            let i = site.matched_nodes[j];
            port.insert(b, map.pt(i, (slot + site.rotations[j]) % 4));
        }
    }
    if rep.nodes.is_empty() {
        for &(p, q) in &rep.arcs {
            sp.link(port[&p], port[&q]);
        }
    } else {
        let base: Vec<usize> = rep.nodes.iter().map(|n| sp.add_node(n.kind())).collect();
        for (l, o) in rep.occurrences() {
            let pts: Vec<Pt> = o.iter().map(|&(j, s)| Pt::Slot(base[j], s)).collect();
            match pts.as_slice() {
                [a, b] => sp.link(*a, *b),
                [a] => sp.link(*a, port[&l]),
                _ => unreachable!("fragment labels occur once or twice"),
            }
        }
    }
    Ok(sp.finish())
}

/// Joins naive components with the merging direction of Y8 until one is
/// left. Fails when no saddle is shared by two components.
pub fn merge_components(d: &MarkedVertexDiagram) -> Result<MarkedVertexDiagram> {
    let mut cur = d.clone();
    loop {
        let comps = naive_components(&cur);
        if comps.len() <= 1 {
            return Ok(cur);
        }
        let mut comp_of: Vec<Vec<usize>> = vec![Vec::new(); cur.nodes().len()];
        for (c, comp) in comps.iter().enumerate() {
            for p in &comp.passages {
                comp_of[p.node].push(c);
            }
        }
        let shared: Vec<usize> = (0..cur.nodes().len())
            .filter(|&i| cur.nodes()[i].is_saddle() && comp_of[i][0] != comp_of[i][1])
            .collect();
        let site = shared.iter().find_map(|&i| {
            applicable_sites(&cur, MoveId::Y8)
                .into_iter()
                .find(|s| s.direction == Direction::Forward && s.matched_nodes == [i] && s.variant == 0)
        });
        match site {
            Some(s) => cur = apply_move(&cur, &s)?,
            None => {
                return Err(Error::CannotMerge(format!(
                    "{} naive components and no saddle where two of them meet",
                    comps.len()
                )))
            }
        }
    }
}

/// Removes the virtual crossings along `path` (consecutive semiarcs meeting
/// at opposite slots of virtual nodes) and reinstalls the strand crossing
/// the semiarcs of `route` virtually, in order.
pub fn detour(d: &MarkedVertexDiagram, path: &[usize], route: &[usize]) -> Result<MarkedVertexDiagram> {
    let bad = |m: String| Error::BadDetour(m);
    let m = d.semiarc_count();
    if path.is_empty() {
        return Err(bad("empty path".into()));
    }
    for &a in path.iter().chain(route) {
        if a == 0 || a > m {
            return Err(bad(format!("semiarc {a} does not exist")));
        }
    }
    let ends = d.endpoints();
    let mut removed = vec![false; d.nodes().len()];
    // slot of path[0] at the first path node, where the path continues
    let mut cont = None;
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let hit = ends[a - 1].iter().find(|&&(n, s)| {
            d.nodes()[n].is_virtual() && d.semiarc_at((n, (s + 2) % 4)) == b
        });
        match hit {
            Some(&(n, s)) => {
                if cont.is_none() {
                    cont = Some((n, s));
                }
                removed[n] = true;
            }
            None => {
                let why = if ends[a - 1].iter().any(|&(n, _)| !d.nodes()[n].is_virtual()) {
                    "touches a non-virtual node"
                } else {
                    "does not continue straight through a virtual node"
                };
                return Err(bad(format!("semiarc {a} to {b}: path {why}")));
            }
        }
    }
    let mut seen = Vec::new();
    for &t in route {
        if path.contains(&t) {
            return Err(bad(format!("route crosses path semiarc {t}")));
        }
        if seen.contains(&t) {
            return Err(bad(format!("route crosses semiarc {t} twice")));
        }
        seen.push(t);
    }
    let mut cut: Vec<usize> = route.to_vec();
    if !route.is_empty() {
        cut.push(path[0]);
    }
    let (mut sp, map) = Splice::from_diagram(d, &removed, &cut);
    for (i, r) in removed.iter().enumerate() {
        if *r {
            sp.link(map.pt(i, 0), map.pt(i, 2));
            sp.link(map.pt(i, 1), map.pt(i, 3));
        }
    }
    if !route.is_empty() {
        let [e0, e1] = ends[path[0] - 1];
        let (start, end) = match cont {
            Some(c) if c == e0 => (e1, e0),
            Some(_) => (e0, e1),
            None => (e0, e1),
        };
        let mut prev = map.pt(start.0, start.1);
        for &t in route {
            let v = sp.add_node(NodeKind::Virtual);
            let [t0, t1] = ends[t - 1];
            sp.link(prev, Pt::Slot(v, 0));
            sp.link(map.pt(t0.0, t0.1), Pt::Slot(v, 1));
            sp.link(Pt::Slot(v, 3), map.pt(t1.0, t1.1));
            prev = Pt::Slot(v, 2);
        }
        sp.link(prev, map.pt(end.0, end.1));
    }
    Ok(sp.finish())
}

/// A detour through one virtual node, optionally re-crossing one semiarc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetourSite {
    pub path: Vec<usize>,
    pub route: Vec<usize>,
}

/// For each passage through a virtual node: removal, and rerouting across
/// each semiarc off the path.
pub fn detour_sites(d: &MarkedVertexDiagram) -> Vec<DetourSite> {
    let mut out = Vec::new();
    for (i, n) in d.nodes().iter().enumerate() {
        if !n.is_virtual() {
            continue;
        }
        for s in 0..2 {
            let path = vec![d.semiarc_at((i, s)), d.semiarc_at((i, s + 2))];
            out.push(DetourSite {
                path: path.clone(),
                route: vec![],
            });
            for t in 1..=d.semiarc_count() {
                if !path.contains(&t) {
                    out.push(DetourSite {
                        path: path.clone(),
                        route: vec![t],
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::color_count;
    use crate::topology::euler_characteristic;
    use crate::bikei::enumerate_bikei;

    fn mvd(s: &str) -> MarkedVertexDiagram {
        MarkedVertexDiagram::parse(s).unwrap()
    }

    const TREFOIL: &str = "X 2 1 3 4\nX 4 3 5 6\nX 6 5 1 2";

    #[test]
    fn schemas_load_and_balance() {
        for id in MoveId::ALL {
            for v in variants(id) {
                let mut b = v.before.boundary.clone();
                let mut a = v.after.boundary.clone();
                b.sort();
                a.sort();
                assert_eq!(a, b, "{id}");
                assert!(v.before.nodes.is_empty() != v.before.arcs.is_empty() || v.before.nodes.is_empty());
            }
        }
        assert_eq!(variants(MoveId::Y1).len(), 1);
        assert!(variants(MoveId::Y3).len() > 1);
        assert_eq!("Y4'".parse::<MoveId>().unwrap(), MoveId::Y4p);
        assert!(matches!("Y9".parse::<MoveId>(), Err(Error::UnknownMove(_))));
    }

    #[test]
    fn kink_sites() {
        let back = |s: &str| {
            applicable_sites(&mvd(s), MoveId::Y1)
                .into_iter()
                .filter(|s| s.direction == Direction::Backward)
                .count()
        };
        assert_eq!(back(TREFOIL), 0);
        assert_eq!(back("X 1 2 2 1"), 1);
        let y2 = applicable_sites(&mvd("S 1 2 2 1 0"), MoveId::Y2);
        assert!(y2.iter().all(|s| s.direction == Direction::Forward));
    }

    #[test]
    fn removing_a_kink() {
        let d = mvd("X 1 2 2 1");
        let s = applicable_sites(&d, MoveId::Y1)
            .into_iter()
            .find(|s| s.direction == Direction::Backward)
            .unwrap();
        let e = apply_move(&d, &s).unwrap();
        assert_eq!(e.nodes().len(), 0);
        assert_eq!(e.free_loops(), 1);
    }

    #[test]
    fn moves_preserve_phi_and_euler_on_trefoil() {
        let d = mvd(TREFOIL);
        let tables = enumerate_bikei(2, false);
        let chi = euler_characteristic(&d);
        for id in MoveId::ALL {
            for s in applicable_sites(&d, id) {
                let e = apply_move(&d, &s).unwrap();
                assert_eq!(euler_characteristic(&e), chi, "{s}");
                for t in &tables {
                    assert_eq!(color_count(&e, t), color_count(&d, t), "{s}");
                }
            }
        }
    }

    #[test]
    fn inverse_site_restores_the_diagram() {
        let d = mvd(TREFOIL);
        for id in MoveId::ALL {
            for s in applicable_sites(&d, id).into_iter().take(20) {
                let e = apply_move(&d, &s).unwrap();
                let back = applicable_sites(&e, id)
                    .into_iter()
                    .filter(|b| b.direction != s.direction && b.variant == s.variant)
                    .map(|b| apply_move(&e, &b).unwrap())
                    .any(|f| f.canonical_key() == d.canonical_key());
                assert!(back, "{s}");
            }
        }
    }

    #[test]
    fn stale_sites_are_rejected() {
        let d = mvd("X 1 2 2 1");
        let s = applicable_sites(&d, MoveId::Y1)
            .into_iter()
            .find(|s| s.direction == Direction::Backward)
            .unwrap();
        let e = apply_move(&d, &s).unwrap();
        assert!(matches!(apply_move(&e, &s), Err(Error::StaleSite(_))));
    }

    #[test]
    fn merging_the_torus() {
        let d = mvd("S 3 1 4 2 0\nS 4 1 3 2 0");
        assert_eq!(naive_components(&d).len(), 2);
        let e = merge_components(&d).unwrap();
        assert_eq!(naive_components(&e).len(), 1);
        assert_eq!(euler_characteristic(&e).euler, 0);
        let same = mvd(TREFOIL);
        assert_eq!(merge_components(&same).unwrap(), same);
        assert!(matches!(merge_components(&mvd("O 2")), Err(Error::CannotMerge(_))));
    }

    #[test]
    fn detour_examples() {
        let d = mvd("V 1 2 2 1");
        let e = detour(&d, &[1, 2], &[]).unwrap();
        assert_eq!((e.nodes().len(), e.free_loops()), (0, 1));
        let d = mvd("S 1 3 2 4 0\nV 2 4 1 3");
        let e = detour(&d, &[2, 1], &[]).unwrap();
        assert_eq!(e.nodes().len(), 1);
        assert!(matches!(detour(&d, &[1, 3], &[]), Err(Error::BadDetour(_))));
        let t = enumerate_bikei(2, false);
        for s in detour_sites(&d) {
            let e = detour(&d, &s.path, &s.route).unwrap();
            for x in &t {
                assert_eq!(color_count(&e, x), color_count(&d, x), "{s:?}");
            }
        }
    }
}
