//! Finite bikei (involutory biquandles) stored as operation tables.
//!
//! Elements are the indices `1..=n`. The combined `n x 2n` matrix puts
//! `x^y` in columns `1..=n` and `x_y` in columns `n+1..=2n`.

use rayon::prelude::*;

use crate::error::{Error, Location, Result};

/// A pair of binary operations on `{1..n}` given by tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BikeiTable {
    order: usize,
    // 0-based, row-major: up[x * n + y] = x^y
    up: Vec<u16>,
    down: Vec<u16>,
}

impl BikeiTable {
    /// Builds a table from 1-based `up[i][j] = x_i^{x_j}` and `down[i][j] = (x_i)_{x_j}`.
    pub fn new(up: &[Vec<usize>], down: &[Vec<usize>]) -> Result<Self> {
        let n = up.len();
        if n == 0 {
            return Err(Error::MalformedTable {
                row: 0,
                col: 0,
                value: 0,
                order: 0,
            });
        }
        let mut flat_up = Vec::with_capacity(n * n);
        let mut flat_down = Vec::with_capacity(n * n);
        for (block, src, dst) in [(0, up, &mut flat_up), (n, down, &mut flat_down)] {
            if src.len() != n {
                return Err(Error::MalformedTable {
                    row: src.len() + 1,
                    col: block + 1,
                    value: 0,
                    order: n,
                });
            }
            for (i, row) in src.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MalformedTable {
                        row: i + 1,
                        col: block + row.len() + 1,
                        value: 0,
                        order: n,
                    });
                }
                for (j, &v) in row.iter().enumerate() {
                    if v == 0 || v > n {
                        return Err(Error::MalformedTable {
                            row: i + 1,
                            col: block + j + 1,
                            value: v,
                            order: n,
                        });
                    }
                    dst.push((v - 1) as u16);
                }
            }
        }
        Ok(BikeiTable {
            order: n,
            up: flat_up,
            down: flat_down,
        })
    }

    /// Builds a table from the combined `n x 2n` matrix.
    pub fn from_matrix(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut up = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != 2 * n {
                return Err(Error::MalformedTable {
                    row: i + 1,
                    col: row.len() + 1,
                    value: 0,
                    order: n,
                });
            }
            up.push(row[..n].to_vec());
            down.push(row[n..].to_vec());
        }
        Self::new(&up, &down)
    }

    pub(crate) fn from_raw(order: usize, up: Vec<u16>, down: Vec<u16>) -> Self {
        debug_assert_eq!(up.len(), order * order);
        debug_assert_eq!(down.len(), order * order);
        BikeiTable { order, up, down }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x^y`, 1-based.
    pub fn up(&self, x: usize, y: usize) -> usize {
        self.up0(x - 1, y - 1) + 1
    }

    /// `x_y`, 1-based.
    pub fn down(&self, x: usize, y: usize) -> usize {
        self.down0(x - 1, y - 1) + 1
    }

    #[inline]
    pub(crate) fn up0(&self, x: usize, y: usize) -> usize {
        self.up[x * self.order + y] as usize
    }

    #[inline]
    pub(crate) fn down0(&self, x: usize, y: usize) -> usize {
        self.down[x * self.order + y] as usize
    }

    /// The combined `n x 2n` matrix, 1-based entries.
    pub fn matrix(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.up0(x, y) + 1)
                    .chain((0..n).map(|y| self.down0(x, y) + 1))
                    .collect()
            })
            .collect()
    }

    /// A kei: `x_y = x` for all `x, y`.
    pub fn is_kei(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..n).all(|y| self.down0(x, y) == x))
    }

    /// Applies the relabeling `x -> perm[x]` (0-based) to every element.
    pub fn relabel(&self, perm: &[usize]) -> BikeiTable {
        let n = self.order;
        let mut up = vec![0u16; n * n];
        let mut down = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                up[perm[x] * n + perm[y]] = perm[self.up0(x, y)] as u16;
                down[perm[x] * n + perm[y]] = perm[self.down0(x, y)] as u16;
            }
        }
        BikeiTable { order: n, up, down }
    }

    /// Representative of the isomorphism class: the relabeling with the
    /// lexicographically least combined matrix.
    pub fn canonical(&self) -> BikeiTable {
        let mut best: Option<(Vec<Vec<usize>>, BikeiTable)> = None;
        for perm in permutations(self.order) {
            let t = self.relabel(&perm);
            let m = t.matrix();
            if best.as_ref().map_or(true, |(bm, _)| m < *bm) {
                best = Some((m, t));
            }
        }
        best.expect("at least one permutation").1
    }

    /// Parses the `.bikei` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines.next().ok_or_else(|| Error::Parse {
            at: Location {
                line: 1,
                token: String::new(),
            },
            msg: "empty bikei file".into(),
        })?;
        let mut toks = first.split_whitespace();
        let tok = toks.next().unwrap_or_default();
        let n: usize = tok.parse().map_err(|_| Error::Parse {
            at: Location {
                line: first_no,
                token: tok.into(),
            },
            msg: "expected the order n".into(),
        })?;
        if let Some(extra) = toks.next() {
            return Err(Error::Parse {
                at: Location {
                    line: first_no,
                    token: extra.into(),
                },
                msg: "unexpected token after the order".into(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        let mut last_line = first_no;
        for (no, line) in lines {
            last_line = no;
            if rows.len() == n {
                return Err(Error::Parse {
                    at: Location {
                        line: no,
                        token: line.split_whitespace().next().unwrap_or_default().into(),
                    },
                    msg: format!("more than {n} rows"),
                });
            }
            let mut row = Vec::with_capacity(2 * n);
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    at: Location {
                        line: no,
                        token: tok.into(),
                    },
                    msg: "expected a positive integer".into(),
                })?;
                if v == 0 || v > n {
                    return Err(Error::Parse {
                        at: Location {
                            line: no,
                            token: tok.into(),
                        },
                        msg: format!("entry out of range 1..={n}"),
                    });
                }
                row.push(v);
            }
            if row.len() != 2 * n {
                return Err(Error::Parse {
                    at: Location {
                        line: no,
                        token: line.into(),
                    },
                    msg: format!("expected {} entries, found {}", 2 * n, row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse {
                at: Location {
                    line: last_line,
                    token: String::new(),
                },
                msg: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Self::from_matrix(&rows)
    }

    /// Writes the `.bikei` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.matrix() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// The individual bikei axioms checked by [`verify_bikei`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `x^x = x_x`
    Diagonal,
    /// `S(x, y) = (y_x, x^y)` is a bijection of pairs.
    PairMapBijective,
    /// `x -> x^y` is a bijection for each `y`.
    UpBijective,
    /// `x -> x_y` is a bijection for each `y`.
    DownBijective,
    /// `(x^y)^(z^y) = (x^z)^(y_z)`
    ExchangeUpUp,
    /// `(x^y)_(z^y) = (x_z)^(y_z)`
    ExchangeMixed,
    /// `(x_y)_(z_y) = (x_z)_(y^z)`
    ExchangeDownDown,
    /// `(x^y)^y = x`
    UpInvolutive,
    /// `(x_y)_y = x`
    DownInvolutive,
    /// `x^(y_x) = x^y`
    UpAbsorbs,
    /// `x_(y^x) = x_y`
    DownAbsorbs,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Diagonal => "i",
            Axiom::PairMapBijective => "ii-S",
            Axiom::UpBijective => "ii-up",
            Axiom::DownBijective => "ii-down",
            Axiom::ExchangeUpUp => "iii-1",
            Axiom::ExchangeMixed => "iii-2",
            Axiom::ExchangeDownDown => "iii-3",
            Axiom::UpInvolutive => "iv-up",
            Axiom::DownInvolutive => "iv-down",
            Axiom::UpAbsorbs => "v",
            Axiom::DownAbsorbs => "vi",
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// One failed axiom instance. Witness elements are 1-based.
///
/// Witness layouts: `PairMapBijective` carries `[x, y, x', y']` with
/// `S(x,y) = S(x',y')`; the one-variable bijectivity axioms carry
/// `[y, x, x']`; every other axiom carries the variables it quantifies over
/// in order (`[x]`, `[x, y]` or `[x, y, z]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl Violation {
    /// Re-evaluates the witness against `t`; true if it still fails.
    pub fn reproduces(&self, t: &BikeiTable) -> bool {
        let n = t.order();
        if self.witness.iter().any(|&w| w == 0 || w > n) {
            return false;
        }
        let w: Vec<usize> = self.witness.iter().map(|v| v - 1).collect();
        let up = |x, y| t.up0(x, y);
        let dn = |x, y| t.down0(x, y);
        match (self.axiom, w.as_slice()) {
            (Axiom::Diagonal, &[x]) => up(x, x) != dn(x, x),
            (Axiom::PairMapBijective, &[x, y, x2, y2]) => {
                (x, y) != (x2, y2) && (dn(y, x), up(x, y)) == (dn(y2, x2), up(x2, y2))
            }
            (Axiom::UpBijective, &[y, x, x2]) => x != x2 && up(x, y) == up(x2, y),
            (Axiom::DownBijective, &[y, x, x2]) => x != x2 && dn(x, y) == dn(x2, y),
            (Axiom::ExchangeUpUp, &[x, y, z]) => {
                up(up(x, y), up(z, y)) != up(up(x, z), dn(y, z))
            }
            (Axiom::ExchangeMixed, &[x, y, z]) => {
                dn(up(x, y), up(z, y)) != up(dn(x, z), dn(y, z))
            }
            (Axiom::ExchangeDownDown, &[x, y, z]) => {
                dn(dn(x, y), dn(z, y)) != dn(dn(x, z), up(y, z))
            }
            (Axiom::UpInvolutive, &[x, y]) => up(up(x, y), y) != x,
            (Axiom::DownInvolutive, &[x, y]) => dn(dn(x, y), y) != x,
            (Axiom::UpAbsorbs, &[x, y]) => up(x, dn(y, x)) != up(x, y),
            (Axiom::DownAbsorbs, &[x, y]) => dn(x, up(y, x)) != dn(x, y),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn axioms_failed(&self) -> Vec<Axiom> {
        let mut ax: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        ax.sort();
        ax.dedup();
        ax
    }
}

/// Checks every bikei axiom on every tuple and reports all failures.
pub fn verify_bikei(t: &BikeiTable) -> AxiomReport {
    let n = t.order();
    let up = |x, y| t.up0(x, y);
    let dn = |x, y| t.down0(x, y);
    let mut v = Vec::new();
    let mut push = |axiom, w: &[usize]| {
        v.push(Violation {
            axiom,
            witness: w.iter().map(|x| x + 1).collect(),
        })
    };

    for x in 0..n {
        if up(x, x) != dn(x, x) {
            push(Axiom::Diagonal, &[x]);
        }
    }

    let mut seen: Vec<Option<(usize, usize)>> = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            let img = dn(y, x) * n + up(x, y);
            match seen[img] {
                Some((x0, y0)) => push(Axiom::PairMapBijective, &[x0, y0, x, y]),
                None => seen[img] = Some((x, y)),
            }
        }
    }

    for y in 0..n {
        let mut first_up = vec![None; n];
        let mut first_dn = vec![None; n];
        for x in 0..n {
            match first_up[up(x, y)] {
                Some(x0) => push(Axiom::UpBijective, &[y, x0, x]),
                None => first_up[up(x, y)] = Some(x),
            }
            match first_dn[dn(x, y)] {
                Some(x0) => push(Axiom::DownBijective, &[y, x0, x]),
                None => first_dn[dn(x, y)] = Some(x),
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if up(up(x, y), up(z, y)) != up(up(x, z), dn(y, z)) {
                    push(Axiom::ExchangeUpUp, &[x, y, z]);
                }
                if dn(up(x, y), up(z, y)) != up(dn(x, z), dn(y, z)) {
                    push(Axiom::ExchangeMixed, &[x, y, z]);
                }
                if dn(dn(x, y), dn(z, y)) != dn(dn(x, z), up(y, z)) {
                    push(Axiom::ExchangeDownDown, &[x, y, z]);
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            if up(up(x, y), y) != x {
                push(Axiom::UpInvolutive, &[x, y]);
            }
            if dn(dn(x, y), y) != x {
                push(Axiom::DownInvolutive, &[x, y]);
            }
            if up(x, dn(y, x)) != up(x, y) {
                push(Axiom::UpAbsorbs, &[x, y]);
            }
            if dn(x, up(y, x)) != dn(x, y) {
                push(Axiom::DownAbsorbs, &[x, y]);
            }
        }
    }

    v.sort_by(|a, b| (a.axiom, &a.witness).cmp(&(b.axiom, &b.witness)));
    AxiomReport { violations: v }
}

/// Elements fixed by both diagonal operations: `x^x = x_x = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSet {
    /// 1-based, ascending.
    pub members: Vec<usize>,
}

impl FixedSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn fixed_set(t: &BikeiTable) -> FixedSet {
    let members = (0..t.order())
        .filter(|&x| t.up0(x, x) == x && t.down0(x, x) == x)
        .map(|x| x + 1)
        .collect();
    FixedSet { members }
}

/// The Alexander bikei on `Z_modulus` with `x^y = tx + (s-t)y`, `x_y = sx`.
///
/// Element `k` (1-based) stands for the residue `k mod modulus`, so the last
/// element is 0.
pub fn alexander_bikei(modulus: usize, s: i64, t: i64) -> Result<BikeiTable> {
    if modulus == 0 {
        return Err(Error::InvalidParameters("modulus > 0".into()));
    }
    let m = modulus as i64;
    let r = |v: i64| v.rem_euclid(m);
    let (s, t) = (r(s), r(t));
    if r(s * s) != r(1) {
        return Err(Error::InvalidParameters("s^2 = 1".into()));
    }
    if r(t * t) != r(1) {
        return Err(Error::InvalidParameters("t^2 = 1".into()));
    }
    if r(1 + t) != r(s * (1 + t)) {
        return Err(Error::InvalidParameters("1 + t = s(1 + t)".into()));
    }
    // residue -> 0-based element index
    let idx = |res: i64| ((res + m - 1) % m) as u16;
    let res = |i: usize| (i as i64 + 1) % m;
    let n = modulus;
    let mut up = Vec::with_capacity(n * n);
    let mut down = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (res(i), res(j));
            up.push(idx(r(t * x + (s - t) * y)));
            down.push(idx(r(s * x)));
        }
    }
    Ok(BikeiTable::from_raw(n, up, down))
}

/// Which operation carries the core rule `y x^{-1} y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreSide {
    /// `x^y = y x^{-1} y`, `x_y = x`
    Up,
    /// `x^y = x`, `x_y = y x^{-1} y`
    Down,
}

/// Core bikei of a finite group given by its 1-based Cayley table.
pub fn core_bikei(cayley: &[Vec<usize>], side: CoreSide) -> Result<BikeiTable> {
    let n = cayley.len();
    if n == 0 {
        return Err(Error::InvalidGroup("empty table".into()));
    }
    for (i, row) in cayley.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidGroup(format!("row {} has {} entries", i + 1, row.len())));
        }
        if let Some(&v) = row.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidGroup(format!("row {} holds {v}", i + 1)));
        }
    }
    let mul = |a: usize, b: usize| cayley[a][b] - 1;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        a + 1,
                        b + 1,
                        c + 1
                    )));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
    let mut inv = vec![0; n];
    for a in 0..n {
        inv[a] = (0..n)
            .find(|&b| mul(a, b) == e && mul(b, a) == e)
            .ok_or_else(|| Error::InvalidGroup(format!("element {} has no inverse", a + 1)))?;
    }
    let mut core = Vec::with_capacity(n * n);
    let mut triv = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            core.push(mul(mul(y, inv[x]), y) as u16);
            triv.push(x as u16);
        }
    }
    Ok(match side {
        CoreSide::Up => BikeiTable::from_raw(n, core, triv),
        CoreSide::Down => BikeiTable::from_raw(n, triv, core),
    })
}

/// Evaluates the axioms that only need the columns assigned so far.
/// Columns are assigned in the order up_0, down_0, up_1, down_1, ...
struct Partial {
    n: usize,
    up: Vec<u16>,
    down: Vec<u16>,
    up_cols: usize,
    down_cols: usize,
}

impl Partial {
    fn up(&self, x: usize, y: usize) -> Option<usize> {
        (y < self.up_cols).then(|| self.up[x * self.n + y] as usize)
    }

    fn dn(&self, x: usize, y: usize) -> Option<usize> {
        (y < self.down_cols).then(|| self.down[x * self.n + y] as usize)
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let up = |x: Option<usize>, y: Option<usize>| self.up(x?, y?);
        let dn = |x: Option<usize>, y: Option<usize>| self.dn(x?, y?);
        let ne = |a: Option<usize>, b: Option<usize>| matches!((a, b), (Some(a), Some(b)) if a != b);
        for x in 0..n {
            let sx = Some(x);
            if ne(up(sx, sx), dn(sx, sx)) {
                return false;
            }
            for y in 0..n {
                let sy = Some(y);
                if ne(up(sx, dn(sy, sx)), up(sx, sy)) || ne(dn(sx, up(sy, sx)), dn(sx, sy)) {
                    return false;
                }
                for z in 0..n {
                    let sz = Some(z);
                    if ne(up(up(sx, sy), up(sz, sy)), up(up(sx, sz), dn(sy, sz)))
                        || ne(dn(up(sx, sy), up(sz, sy)), up(dn(sx, sz), dn(sy, sz)))
                        || ne(dn(dn(sx, sy), dn(sz, sy)), dn(dn(sx, sz), up(sy, sz)))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All involutions of `0..n`, as image vectors.
fn involutions(n: usize) -> Vec<Vec<u16>> {
    fn go(p: &mut Vec<Option<u16>>, out: &mut Vec<Vec<u16>>) {
        match p.iter().position(|v| v.is_none()) {
            None => out.push(p.iter().map(|v| v.unwrap()).collect()),
            Some(i) => {
                p[i] = Some(i as u16);
                go(p, out);
                for j in i + 1..p.len() {
                    if p[j].is_none() {
                        p[i] = Some(j as u16);
                        p[j] = Some(i as u16);
                        go(p, out);
                        p[j] = None;
                    }
                }
                p[i] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out
}

/// Every bikei on `{1..n}`, sorted by combined matrix. With `dedup`, one
/// representative (the canonical relabeling) per isomorphism class.
///
/// Each column `x -> x^y` and `x -> x_y` of a bikei is an involution, so the
/// search runs over involution columns and prunes on partial axiom checks.
pub fn enumerate_bikei(n: usize, dedup: bool) -> Vec<BikeiTable> {
    if n == 0 {
        return Vec::new();
    }
    let inv = involutions(n);

    fn search(p: &mut Partial, inv: &[Vec<u16>], out: &mut Vec<BikeiTable>) {
        let n = p.n;
        if p.down_cols == n {
            let t = BikeiTable::from_raw(n, p.up.clone(), p.down.clone());
            if verify_bikei(&t).valid() {
                out.push(t);
            }
            return;
        }
        let fill_up = p.up_cols == p.down_cols;
        let col = if fill_up { p.up_cols } else { p.down_cols };
        for c in inv {
            for x in 0..n {
                let slot = x * n + col;
                if fill_up {
                    p.up[slot] = c[x];
                } else {
                    p.down[slot] = c[x];
                }
            }
            if fill_up {
                p.up_cols += 1;
            } else {
                p.down_cols += 1;
            }
            if p.consistent() {
                search(p, inv, out);
            }
            if fill_up {
                p.up_cols -= 1;
            } else {
                p.down_cols -= 1;
            }
        }
    }

    let mut found: Vec<BikeiTable> = inv
        .par_iter()
        .flat_map_iter(|first| {
            let mut p = Partial {
                n,
                up: vec![0; n * n],
                down: vec![0; n * n],
                up_cols: 1,
                down_cols: 0,
            };
            for x in 0..n {
                p.up[x * n] = first[x];
            }
            let mut out = Vec::new();
            if p.consistent() {
                search(&mut p, &inv, &mut out);
            }
            out
        })
        .collect();

    if dedup {
        found = found.par_iter().map(BikeiTable::canonical).collect();
    }
    let mut keyed: Vec<(Vec<Vec<usize>>, BikeiTable)> =
        found.into_iter().map(|t| (t.matrix(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, t)| t).collect()
}
