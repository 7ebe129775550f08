//! Bikei labelings of diagrams and the counting invariant.
//!
//! At `X u1 o1 u2 o2` the labels satisfy `u2 = u1^o1` and `o2 = o1_u1`; the
//! four semiarcs at a saddle share one label; a virtual crossing passes
//! labels straight through.

use rayon::prelude::*;

use crate::bikei::BikeiTable;
use crate::diagram::{MarkedVertexDiagram, Node};
use crate::topology::naive_components;

/// One labeling. `assignment[a - 1]` is the label of semiarc `a`; the last
/// `free_loops` entries label the free loops. Labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    pub assignment: Vec<usize>,
}

impl Coloring {
    /// Re-checks every node rule.
    pub fn satisfies(&self, d: &MarkedVertexDiagram, t: &BikeiTable) -> bool {
        is_coloring(d, t, &self.assignment)
    }
}

/// True when `labels` (1-based, one per semiarc then one per free loop) obey
/// every node rule.
pub fn is_coloring(d: &MarkedVertexDiagram, t: &BikeiTable, labels: &[usize]) -> bool {
    let n = t.order();
    if labels.len() != d.semiarc_count() + d.free_loops() || labels.iter().any(|&x| x == 0 || x > n) {
        return false;
    }
    let c = |a: usize| labels[a - 1];
    d.nodes().iter().all(|node| match *node {
        Node::Classical([u1, o1, u2, o2]) => {
            c(u2) == t.up(c(u1), c(o1)) && c(o2) == t.down(c(o1), c(u1))
        }
        Node::Saddle([a, b, cc, dd], _) => c(a) == c(b) && c(b) == c(cc) && c(cc) == c(dd),
        Node::Virtual([a, b, cc, dd]) => c(a) == c(cc) && c(b) == c(dd),
    })
}

struct Problem<'a> {
    t: &'a BikeiTable,
    n: usize,
    /// semiarc (0-based) -> variable
    class: Vec<usize>,
    vars: usize,
    /// classical constraints over variables: [u1, o1, u2, o2]
    cons: Vec<[usize; 4]>,
    watch: Vec<Vec<usize>>,
    /// inverse of (x, y) -> (x^y, y_x), if bijective
    pair_inv: Option<Vec<(u16, u16)>>,
    /// up_inv[y][x^y] = x
    up_inv: Vec<Option<Vec<u16>>>,
    /// down_inv[x][y_x] = y
    down_inv: Vec<Option<Vec<u16>>>,
}

const UNSET: u16 = u16::MAX;

impl<'a> Problem<'a> {
    fn new(d: &MarkedVertexDiagram, t: &'a BikeiTable) -> Problem<'a> {
        let m = d.semiarc_count();
        let mut uf: Vec<usize> = (0..m).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let nx = uf[y];
                uf[y] = r;
                y = nx;
            }
            r
        }
        let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(uf, a - 1), find(uf, b - 1));
            if ra != rb {
                uf[ra.max(rb)] = ra.min(rb);
            }
        };
        for node in d.nodes() {
            match *node {
                Node::Saddle([a, b, c, e], _) => {
                    union(&mut uf, a, b);
                    union(&mut uf, a, c);
                    union(&mut uf, a, e);
                }
                Node::Virtual([a, b, c, e]) => {
                    union(&mut uf, a, c);
                    union(&mut uf, b, e);
                }
                Node::Classical(_) => {}
            }
        }
        // number variables along naive-component traversal
        let mut class = vec![usize::MAX; m];
        let mut root_var = vec![usize::MAX; m];
        let mut vars = 0;
        let order = naive_components(d).into_iter().flat_map(|c| c.semiarcs);
        for a in order {
            let r = find(&mut uf, a - 1);
            if root_var[r] == usize::MAX {
                root_var[r] = vars;
                vars += 1;
            }
            class[a - 1] = root_var[r];
        }
        let mut cons = Vec::new();
        let mut watch = vec![Vec::new(); vars];
        for node in d.nodes() {
            if let Node::Classical(s) = *node {
                let k = cons.len();
                let c = s.map(|a| class[a - 1]);
                cons.push(c);
                let mut touched = c.to_vec();
                touched.sort();
                touched.dedup();
                for v in touched {
                    watch[v].push(k);
                }
            }
        }
        let n = t.order();
        let mut pair_inv = vec![(UNSET, UNSET); n * n];
        let mut bij = true;
        for x in 0..n {
            for y in 0..n {
                let img = t.up0(x, y) * n + t.down0(y, x);
                if pair_inv[img].0 != UNSET {
                    bij = false;
                }
                pair_inv[img] = (x as u16, y as u16);
            }
        }
        let column_inverse = |f: &dyn Fn(usize) -> usize| -> Option<Vec<u16>> {
            let mut inv = vec![UNSET; n];
            for x in 0..n {
                let y = f(x);
                if inv[y] != UNSET {
                    return None;
                }
                inv[y] = x as u16;
            }
            Some(inv)
        };
        let up_inv = (0..n).map(|y| column_inverse(&|x| t.up0(x, y))).collect();
        let down_inv = (0..n).map(|x| column_inverse(&|y| t.down0(y, x))).collect();
        Problem {
            t,
            n,
            class,
            vars,
            cons,
            watch,
            pair_inv: bij.then_some(pair_inv),
            up_inv,
            down_inv,
        }
    }

    /// Sets `v := val` and propagates; returns false on conflict. Every
    /// variable set is pushed on `trail`.
    fn assign(&self, vals: &mut [u16], trail: &mut Vec<usize>, v: usize, val: u16) -> bool {
        let start = trail.len();
        if !set(vals, trail, v, val) {
            return false;
        }
        let mut k = start;
        while k < trail.len() {
            let v = trail[k];
            k += 1;
            for &ci in &self.watch[v] {
                if !self.propagate(vals, trail, ci) {
                    return false;
                }
            }
        }
        true
    }

    fn propagate(&self, vals: &mut [u16], trail: &mut Vec<usize>, ci: usize) -> bool {
        let [u1, o1, u2, o2] = self.cons[ci];
        let known = |v: usize, vals: &[u16]| vals[v] != UNSET;
        if known(u1, vals) && known(o1, vals) {
            let (x, y) = (vals[u1] as usize, vals[o1] as usize);
            return set(vals, trail, u2, self.t.up0(x, y) as u16)
                && set(vals, trail, o2, self.t.down0(y, x) as u16);
        }
        if known(u2, vals) && known(o2, vals) {
            if let Some(inv) = &self.pair_inv {
                let (x, y) = inv[vals[u2] as usize * self.n + vals[o2] as usize];
                return set(vals, trail, u1, x) && set(vals, trail, o1, y);
            }
        }
        if known(u2, vals) && known(o1, vals) {
            if let Some(inv) = &self.up_inv[vals[o1] as usize] {
                if !set(vals, trail, u1, inv[vals[u2] as usize]) {
                    return false;
                }
            }
        }
        if known(o2, vals) && known(u1, vals) {
            if let Some(inv) = &self.down_inv[vals[u1] as usize] {
                if !set(vals, trail, o1, inv[vals[o2] as usize]) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(vals: &mut [u16], trail: &mut Vec<usize>, to: usize) {
        for v in trail.drain(to..) {
            vals[v] = UNSET;
        }
    }

    /// Counts completions of `vals`, branching on variables in index order.
    fn count_from(&self, vals: &mut [u16], trail: &mut Vec<usize>, next: usize) -> u64 {
        let Some(v) = (next..self.vars).find(|&v| vals[v] == UNSET) else {
            return 1;
        };
        let mut total = 0;
        for val in 0..self.n as u16 {
            let mark = trail.len();
            if self.assign(vals, trail, v, val) {
                total += self.count_from(vals, trail, v + 1);
            }
            Self::undo(vals, trail, mark);
        }
        total
    }

    fn count(&self) -> u64 {
        if self.vars == 0 {
            return 1;
        }
        (0..self.n as u16)
            .into_par_iter()
            .map(|val| {
                let mut vals = vec![UNSET; self.vars];
                let mut trail = Vec::new();
                if self.assign(&mut vals, &mut trail, 0, val) {
                    self.count_from(&mut vals, &mut trail, 1)
                } else {
                    0
                }
            })
            .sum()
    }

    /// Solutions in lexicographic order of the per-semiarc vector.
    fn list(&self, limit: usize, out: &mut Vec<Vec<u16>>) {
        let mut vals = vec![UNSET; self.vars];
        let mut trail = Vec::new();
        self.list_from(&mut vals, &mut trail, 0, limit, out);
    }

    fn list_from(&self, vals: &mut [u16], trail: &mut Vec<usize>, from: usize, limit: usize, out: &mut Vec<Vec<u16>>) {
        if out.len() >= limit {
            return;
        }
        let Some(pos) = (from..self.class.len()).find(|&a| vals[self.class[a]] == UNSET) else {
            out.push(self.class.iter().map(|&v| vals[v]).collect());
            return;
        };
        let v = self.class[pos];
        for val in 0..self.n as u16 {
            let mark = trail.len();
            if self.assign(vals, trail, v, val) {
                self.list_from(vals, trail, pos + 1, limit, out);
            }
            Self::undo(vals, trail, mark);
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn set(vals: &mut [u16], trail: &mut Vec<usize>, v: usize, val: u16) -> bool {
    if vals[v] == UNSET {
        vals[v] = val;
        trail.push(v);
        true
    } else {
        vals[v] == val
    }
}

/// The counting invariant: the number of labelings of `d` by `t`.
pub fn color_count(d: &MarkedVertexDiagram, t: &BikeiTable) -> u64 {
    let p = Problem::new(d, t);
    let loops = (t.order() as u64).pow(d.free_loops() as u32);
    p.count() * loops
}

/// Up to `limit` labelings in lexicographic order.
pub fn colorings(d: &MarkedVertexDiagram, t: &BikeiTable, limit: usize) -> Vec<Coloring> {
    let p = Problem::new(d, t);
    let mut partial = Vec::new();
    p.list(limit, &mut partial);
    let n = t.order();
    let loops = d.free_loops();
    let mut out = Vec::new();
    'outer: for base in partial {
        let mut digits = vec![0usize; loops];
        loop {
            if out.len() >= limit {
                break 'outer;
            }
            let assignment = base
                .iter()
                .map(|&v| v as usize + 1)
                .chain(digits.iter().map(|&x| x + 1))
                .collect();
            out.push(Coloring { assignment });
            // odometer, last digit fastest
            let mut k = loops;
            loop {
                if k == 0 {
                    continue 'outer;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < n {
                    break;
                }
                digits[k] = 0;
            }
        }
    }
    out
}

/// Whether `d` has a labeling by `Z_2` with `x^y = x_y = x + 1`.
pub fn two_colorable(d: &MarkedVertexDiagram) -> bool {
    let m = d.semiarc_count();
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
    let mut relate = |a: usize, b: usize, flip: bool| -> bool {
        let (ra, pa) = find(&mut parent, &mut par, a - 1);
        let (rb, pb) = find(&mut parent, &mut par, b - 1);
        if ra == rb {
            return pa ^ pb == flip;
        }
        parent[ra] = rb;
        par[ra] = pa ^ pb ^ flip;
        true
    };
    d.nodes().iter().all(|node| match *node {
        Node::Classical([u1, o1, u2, o2]) => relate(u1, u2, true) && relate(o1, o2, true),
        Node::Saddle([a, b, c, e], _) => relate(a, b, false) && relate(a, c, false) && relate(a, e, false),
        Node::Virtual([a, b, c, e]) => relate(a, c, false) && relate(b, e, false),
    })
}
