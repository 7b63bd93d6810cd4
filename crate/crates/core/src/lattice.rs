//! The distributive lattices of one-line tableaux under the tableau order:
//! `D(n,m)`, `L(n,m)`, `Pl(n,m+n)` and the nullcone lattice `D(N_{k,2n})`.
//!
//! Meets and joins are computed through the order embedding `xi` of `D(n,m)`
//! into `Pl(n,m+n)`, where they are the entrywise minimum and maximum. The
//! brute-force bounds in [`brute_force_meet`] and [`brute_force_join`] search
//! the enumerated lattice and serve as the test oracle for that shortcut.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tableau::{strictly_increasing, DoubleTableau, OneLineTableau, SemistandardTableau, Shape};

/// Default cap on the number of objects an exhaustive enumeration may produce.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// Resource guard for exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub limit: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { limit: DEFAULT_GUARD }
    }
}

impl Guard {
    pub fn new(limit: u64) -> Self {
        Guard { limit }
    }

    pub fn check(&self, count: u64, what: &str) -> Result<()> {
        if count > self.limit {
            Err(Error::resource(format!("{what}: {count} objects exceed the guard of {}", self.limit)))
        } else {
            Ok(())
        }
    }
}

/// Which lattice of one-line tableaux.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lattice {
    /// `D(n,m)`: all `[I:J]` with `1 <= |I| = |J| <= min(n,m)`.
    D { n: u32, m: u32 },
    /// `L(n,m)`: the elements `[1..l : J]` of `D(n,m)`.
    L { n: u32, m: u32 },
    /// `Pl(n,m+n)`: the length-`n` elements of `L(n,m+n)`.
    Pl { n: u32, m: u32 },
    /// `D(N_{k,2n})`: `[I:J]` in `D(k,2n)` with `l <= min(k,n)` and `J ⪰ [1,3,...,2n-1]`.
    Nullcone { k: u32, n: u32 },
}

/// Outcome of comparing two one-line tableaux in the tableau order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    Precedes,
    Succeeds,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Equal => "=",
            Relation::Precedes => "⪯",
            Relation::Succeeds => "⪰",
            Relation::Incomparable => "incomparable",
        };
        f.write_str(s)
    }
}

/// `J̃ = [1, 3, ..., 2n-1]`.
pub fn threshold_column(n: u32) -> Vec<u32> {
    (1..=n).map(|d| 2 * d - 1).collect()
}

/// Tableau order on bare index sets: `a ⪰ b` iff `|a| <= |b|` and
/// `a_k >= b_k` for `k <= |a|`.
pub fn index_set_succeeds(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x >= y)
}

/// `J ⪰ J̃` for the threshold column of `Sp_{2n}`.
pub fn dominates_threshold(cols: &[u32], n: u32) -> bool {
    cols.len() <= n as usize && cols.iter().enumerate().all(|(d, &j)| j > 2 * d as u32)
}

impl Lattice {
    /// Ambient `(rows, cols)` of the matrix space the members live in.
    pub fn ambient(&self) -> (u32, u32) {
        match *self {
            Lattice::D { n, m } | Lattice::L { n, m } => (n, m),
            Lattice::Pl { n, m } => (n, m + n),
            Lattice::Nullcone { k, n } => (k, 2 * n),
        }
    }

    /// Longest member.
    pub fn max_length(&self) -> u32 {
        match *self {
            Lattice::D { n, m } | Lattice::L { n, m } => n.min(m),
            Lattice::Pl { n, .. } => n,
            Lattice::Nullcone { k, n } => k.min(n),
        }
    }

    pub fn contains(&self, t: &OneLineTableau) -> bool {
        if t.ambient() != self.ambient() {
            return false;
        }
        let l = t.len() as u32;
        match *self {
            Lattice::D { .. } => true,
            Lattice::L { .. } => is_initial_segment(t.rows()),
            Lattice::Pl { n, .. } => l == n && is_initial_segment(t.rows()),
            Lattice::Nullcone { k, n } => l <= k.min(n) && dominates_threshold(t.cols(), n),
        }
    }

    fn require(&self, t: &OneLineTableau) -> Result<()> {
        if t.ambient() != self.ambient() {
            return Err(Error::parameter(format!(
                "{t} has ambient {:?}, lattice {self} needs {:?}",
                t.ambient(),
                self.ambient()
            )));
        }
        if !self.contains(t) {
            return Err(Error::parameter(format!("{t} is not a member of {self}")));
        }
        Ok(())
    }

    /// Number of members, computed combinatorially for `D`, `L` and `Pl`.
    pub fn size_hint(&self) -> u64 {
        let (n, m) = self.ambient();
        match *self {
            Lattice::D { .. } | Lattice::Nullcone { .. } => {
                (1..=n.min(m)).map(|l| binomial(n, l) * binomial(m, l)).sum()
            }
            Lattice::L { .. } => (1..=n.min(m)).map(|l| binomial(m, l)).sum(),
            Lattice::Pl { n, m } => binomial(m + n, n),
        }
    }

    pub fn enumerate(&self) -> Result<Vec<OneLineTableau>> {
        self.enumerate_with_guard(Guard::default())
    }

    /// All members in canonical order (length descending, then lex on `(I, J)`).
    pub fn enumerate_with_guard(&self, guard: Guard) -> Result<Vec<OneLineTableau>> {
        guard.check(self.size_hint(), &format!("enumerating {self}"))?;
        let (n, m) = self.ambient();
        let mut out = Vec::new();
        for l in (1..=self.max_length()).rev() {
            let row_sets = match self {
                Lattice::L { .. } | Lattice::Pl { .. } => vec![(1..=l).collect()],
                _ => combinations(n, l),
            };
            let col_sets = combinations(m, l);
            for i in &row_sets {
                for j in &col_sets {
                    let t = OneLineTableau::new(i.clone(), j.clone(), n, m)?;
                    if self.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Greatest lower bound in the tableau order.
    pub fn meet(&self, a: &OneLineTableau, b: &OneLineTableau) -> Result<OneLineTableau> {
        self.bound(a, b, |x, y| x.min(y))
    }

    /// Least upper bound in the tableau order.
    pub fn join(&self, a: &OneLineTableau, b: &OneLineTableau) -> Result<OneLineTableau> {
        self.bound(a, b, |x, y| x.max(y))
    }

    fn bound(&self, a: &OneLineTableau, b: &OneLineTableau, pick: fn(u32, u32) -> u32) -> Result<OneLineTableau> {
        self.require(a)?;
        self.require(b)?;
        let (n, m) = self.ambient();
        let k: Vec<u32> = xi(a).into_iter().zip(xi(b)).map(|(x, y)| pick(x, y)).collect();
        let out = xi_inverse(&k, n, m)
            .map_err(|_| Error::invariant(format!("bound of {a} and {b} left the lattice {self}")))?;
        if a.len() == b.len() {
            // equal lengths: the bound is the entrywise min/max of (I, J)
            let rows: Vec<u32> = a.rows().iter().zip(b.rows()).map(|(&x, &y)| pick(x, y)).collect();
            let cols: Vec<u32> = a.cols().iter().zip(b.cols()).map(|(&x, &y)| pick(x, y)).collect();
            if out.rows() != rows.as_slice() || out.cols() != cols.as_slice() {
                return Err(Error::invariant(format!("entrywise bound of {a} and {b} disagrees with xi")));
            }
        }
        if !self.contains(&out) {
            return Err(Error::invariant(format!("{self} is not closed under bounds of {a} and {b}")));
        }
        Ok(out)
    }

    /// Standard (multiple chain) double tableaux of the given shape.
    pub fn standard_tableaux(&self, shape: &Shape) -> Result<Vec<DoubleTableau>> {
        self.standard_tableaux_with_guard(shape, Guard::default())
    }

    pub fn standard_tableaux_with_guard(&self, shape: &Shape, guard: Guard) -> Result<Vec<DoubleTableau>> {
        if shape.is_empty() {
            return Ok(vec![DoubleTableau::empty()]);
        }
        if shape.length() as u32 > self.max_length() {
            return Ok(Vec::new());
        }
        let elems = self.enumerate_with_guard(guard)?;
        let lens: Vec<usize> = shape.column_lengths().iter().map(|&l| l as usize).collect();
        let mut out = Vec::new();
        let mut cur: Vec<&OneLineTableau> = Vec::new();
        chains_of_lengths(&elems, &lens, &mut cur, &mut out, guard)?;
        Ok(out)
    }

    /// Standard double tableaux of any shape whose row-index and
    /// column-index multisets equal the given count vectors (indexed from 1;
    /// entry 0 is ignored).
    pub fn standard_tableaux_with_content(
        &self,
        row_content: &[u32],
        col_content: &[u32],
        guard: Guard,
    ) -> Result<Vec<DoubleTableau>> {
        let elems = self.enumerate_with_guard(guard)?;
        let mut rows = row_content.to_vec();
        let mut cols = col_content.to_vec();
        let total: u32 = rows.iter().skip(1).sum();
        if total != cols.iter().skip(1).sum::<u32>() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        chains_with_content(&elems, None, total, &mut rows, &mut cols, &mut cur, &mut out, guard)?;
        Ok(out)
    }

    pub fn is_standard(&self, t: &DoubleTableau) -> bool {
        let cols = t.columns();
        cols.iter().all(|c| self.contains(c)) && cols.windows(2).all(|w| w[0].precedes(&w[1]))
    }

    /// All maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self, guard: Guard) -> Result<Vec<Vec<OneLineTableau>>> {
        let elems = self.enumerate_with_guard(guard)?;
        let covers = cover_relation(&elems);
        let bottom = (0..elems.len())
            .find(|&i| elems.iter().all(|e| elems[i].precedes(e)))
            .ok_or_else(|| Error::invariant(format!("{self} has no bottom element")))?;
        let mut out = Vec::new();
        let mut path = vec![bottom];
        fn walk(
            at: usize,
            covers: &[Vec<usize>],
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            guard: Guard,
        ) -> Result<()> {
            if covers[at].is_empty() {
                out.push(path.clone());
                return guard.check(out.len() as u64, "maximal chains");
            }
            for &up in &covers[at] {
                path.push(up);
                walk(up, covers, path, out, guard)?;
                path.pop();
            }
            Ok(())
        }
        walk(bottom, &covers, &mut path, &mut out, guard)?;
        Ok(out.into_iter().map(|c| c.into_iter().map(|i| elems[i].clone()).collect()).collect())
    }

    /// Join-irreducible members (exactly one lower cover) with the induced
    /// order, as `(elements, le)` where `le[i][j]` means `elements[i] ⪯ elements[j]`.
    pub fn join_irreducibles(&self, guard: Guard) -> Result<(Vec<OneLineTableau>, Vec<Vec<bool>>)> {
        let elems = self.enumerate_with_guard(guard)?;
        let covers = cover_relation(&elems);
        let mut lower = vec![0usize; elems.len()];
        for ups in &covers {
            for &u in ups {
                lower[u] += 1;
            }
        }
        let ji: Vec<OneLineTableau> =
            elems.iter().zip(&lower).filter(|(_, &c)| c == 1).map(|(e, _)| e.clone()).collect();
        let le = ji.iter().map(|a| ji.iter().map(|b| a.precedes(b)).collect()).collect();
        Ok((ji, le))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Lattice::D { n, m } => write!(f, "D({n},{m})"),
            Lattice::L { n, m } => write!(f, "L({n},{m})"),
            Lattice::Pl { n, m } => write!(f, "Pl({n},{})", m + n),
            Lattice::Nullcone { k, n } => write!(f, "D(N_{{{k},{}}})", 2 * n),
        }
    }
}

fn is_initial_segment(v: &[u32]) -> bool {
    v.iter().enumerate().all(|(i, &x)| x == i as u32 + 1)
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All `size`-subsets of `{1..=universe}` in lexicographic order.
pub fn combinations(universe: u32, size: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, universe: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=universe.saturating_sub(left - 1) {
            cur.push(x);
            rec(x + 1, universe, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= universe {
        rec(1, universe, size, &mut Vec::new(), &mut out);
    }
    out
}

fn cover_relation(elems: &[OneLineTableau]) -> Vec<Vec<usize>> {
    let n = elems.len();
    let lt: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && elems[i].precedes(&elems[j])).collect()).collect();
    (0..n)
        .map(|i| (0..n).filter(|&j| lt[i][j] && !(0..n).any(|w| lt[i][w] && lt[w][j])).collect())
        .collect()
}

fn chains_of_lengths<'a>(
    elems: &'a [OneLineTableau],
    lens: &[usize],
    cur: &mut Vec<&'a OneLineTableau>,
    out: &mut Vec<DoubleTableau>,
    guard: Guard,
) -> Result<()> {
    let depth = cur.len();
    if depth == lens.len() {
        out.push(DoubleTableau::new(cur.iter().map(|&c| c.clone()).collect())?);
        return guard.check(out.len() as u64, "standard tableaux");
    }
    for e in elems.iter().filter(|e| e.len() == lens[depth]) {
        if cur.last().is_none_or(|p| p.precedes(e)) {
            cur.push(e);
            chains_of_lengths(elems, lens, cur, out, guard)?;
            cur.pop();
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn chains_with_content(
    elems: &[OneLineTableau],
    prev: Option<&OneLineTableau>,
    remaining: u32,
    rows: &mut [u32],
    cols: &mut [u32],
    cur: &mut Vec<OneLineTableau>,
    out: &mut Vec<DoubleTableau>,
    guard: Guard,
) -> Result<()> {
    if remaining == 0 {
        out.push(DoubleTableau::new(cur.clone())?);
        return guard.check(out.len() as u64, "standard tableaux");
    }
    for e in elems {
        if e.len() as u32 > remaining || prev.is_some_and(|p| !p.precedes(e)) {
            continue;
        }
        let fits = e.rows().iter().all(|&i| rows.get(i as usize).is_some_and(|&c| c > 0))
            && e.cols().iter().all(|&j| cols.get(j as usize).is_some_and(|&c| c > 0));
        if !fits {
            continue;
        }
        e.rows().iter().for_each(|&i| rows[i as usize] -= 1);
        e.cols().iter().for_each(|&j| cols[j as usize] -= 1);
        cur.push(e.clone());
        chains_with_content(elems, Some(e), remaining - e.len() as u32, rows, cols, cur, out, guard)?;
        cur.pop();
        e.rows().iter().for_each(|&i| rows[i as usize] += 1);
        e.cols().iter().for_each(|&j| cols[j as usize] += 1);
    }
    Ok(())
}

/// Compares two one-line tableaux in the tableau order.
pub fn compare(a: &OneLineTableau, b: &OneLineTableau) -> Result<Relation> {
    if a.ambient() != b.ambient() {
        return Err(Error::parameter(format!("{a} and {b} live in different matrix spaces")));
    }
    Ok(match (a.precedes(b), b.precedes(a)) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Precedes,
        (false, true) => Relation::Succeeds,
        (false, false) => Relation::Incomparable,
    })
}

/// The order embedding `D(n,m) -> Pl(n,m+n)`:
/// `[I:J] -> [j_1..j_h, m+u_1..m+u_{n-h}]` where `{n+1-u_k}` is the
/// complement of `I` in `{1..n}`.
pub fn xi(t: &OneLineTableau) -> Vec<u32> {
    let (n, m) = t.ambient();
    let mut u: Vec<u32> = (1..=n).filter(|i| !t.rows().contains(i)).map(|c| n + 1 - c).collect();
    u.sort_unstable();
    t.cols().iter().copied().chain(u.into_iter().map(|x| m + x)).collect()
}

/// Inverse of [`xi`]. The top element `[m+1..m+n]` has no preimage.
pub fn xi_inverse(k: &[u32], n: u32, m: u32) -> Result<OneLineTableau> {
    if k.len() != n as usize || !strictly_increasing(k) || k.first() == Some(&0) || k.iter().any(|&x| x > m + n) {
        return Err(Error::parameter(format!("{k:?} is not an element of Pl({n},{})", m + n)));
    }
    let h = k.iter().take_while(|&&x| x <= m).count();
    if h == 0 {
        return Err(Error::domain("reserved top element [m+1..m+n] has no preimage"));
    }
    let cols = k[..h].to_vec();
    let missing: Vec<u32> = k[h..].iter().map(|&x| n + 1 - (x - m)).collect();
    let rows = (1..=n).filter(|i| !missing.contains(i)).collect();
    OneLineTableau::new(rows, cols, n, m)
}

/// Splits a standard double tableau into the semistandard tableaux `T⁻`
/// (row index sets as columns) and `T⁺` (column index sets as columns).
pub fn split(t: &DoubleTableau) -> Result<(SemistandardTableau, SemistandardTableau)> {
    let Some(first) = t.columns().first() else {
        return Ok((SemistandardTableau::empty(0), SemistandardTableau::empty(0)));
    };
    let (n, m) = first.ambient();
    if !(Lattice::D { n, m }).is_standard(t) {
        return Err(Error::domain(format!("{t} is not standard")));
    }
    let minus: Vec<Vec<u32>> = t.columns().iter().map(|c| c.rows().to_vec()).collect();
    let plus: Vec<Vec<u32>> = t.columns().iter().map(|c| c.cols().to_vec()).collect();
    Ok((SemistandardTableau::from_columns(&minus, n)?, SemistandardTableau::from_columns(&plus, m)?))
}

/// Pairs the k-th columns of `T⁻` and `T⁺` back into a double tableau.
pub fn assemble(minus: &SemistandardTableau, plus: &SemistandardTableau, n: u32, m: u32) -> Result<DoubleTableau> {
    if minus.shape() != plus.shape() {
        return Err(Error::parameter("T⁻ and T⁺ must have the same shape"));
    }
    let cols = minus
        .columns()
        .into_iter()
        .zip(plus.columns())
        .map(|(i, j)| OneLineTableau::new(i, j, n, m))
        .collect::<Result<Vec<_>>>()?;
    DoubleTableau::new(cols)
}

/// Semistandard tableaux of `shape` with entries in `1..=max_entry`, in
/// lexicographic order of their rows. With `column_floor`, every column
/// read as an index set must dominate the floor in the tableau order.
pub fn enumerate_ssyt(shape: &Shape, max_entry: u32, column_floor: Option<&[u32]>) -> Vec<SemistandardTableau> {
    enumerate_ssyt_with_guard(shape, max_entry, column_floor, Guard::default()).unwrap_or_default()
}

pub fn enumerate_ssyt_with_guard(
    shape: &Shape,
    max_entry: u32,
    column_floor: Option<&[u32]>,
    guard: Guard,
) -> Result<Vec<SemistandardTableau>> {
    if shape.length() as u32 > max_entry {
        return Ok(Vec::new());
    }
    if let Some(floor) = column_floor {
        if shape.length() > floor.len() {
            return Ok(Vec::new());
        }
    }
    let cells: Vec<(usize, usize)> =
        shape.rows().iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
    let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<u32>>,
        max_entry: u32,
        floor: Option<&[u32]>,
        out: &mut Vec<SemistandardTableau>,
        guard: Guard,
    ) -> Result<()> {
        let Some(&(r, c)) = cells.get(idx) else {
            out.push(SemistandardTableau::new(rows.clone(), max_entry)?);
            return guard.check(out.len() as u64, "semistandard tableaux");
        };
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(rows[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(rows[r - 1][c] + 1);
        }
        if let Some(f) = floor {
            lo = lo.max(f[r]);
        }
        // leave room for the cells below in this column
        let below = rows[r + 1..].iter().filter(|row| row.len() > c).count() as u32;
        let hi = max_entry.saturating_sub(below);
        for v in lo..=hi {
            rows[r][c] = v;
            fill(idx + 1, cells, rows, max_entry, floor, out, guard)?;
        }
        rows[r][c] = 0;
        Ok(())
    }
    fill(0, &cells, &mut rows, max_entry, column_floor, &mut out, guard)?;
    Ok(out)
}

/// Number of linear extensions of a finite poset on `0..size`, where
/// `lt(i, j)` means `i < j`. Dynamic programming over down-sets; `size`
/// must be below 64.
pub fn count_linear_extensions(size: usize, lt: impl Fn(usize, usize) -> bool) -> Result<u128> {
    if size >= 64 {
        return Err(Error::resource(format!("linear extensions of a {size}-element poset")));
    }
    let below: Vec<u64> = (0..size)
        .map(|j| (0..size).filter(|&i| lt(i, j)).fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut memo = std::collections::HashMap::new();
    fn rec(set: u64, size: usize, below: &[u64], memo: &mut std::collections::HashMap<u64, u128>) -> u128 {
        if set.count_ones() as usize == size {
            return 1;
        }
        if let Some(&v) = memo.get(&set) {
            return v;
        }
        let mut total = 0;
        for j in 0..size {
            if set & (1 << j) == 0 && below[j] & !set == 0 {
                total += rec(set | (1 << j), size, below, memo);
            }
        }
        memo.insert(set, total);
        total
    }
    Ok(rec(0, size, &below, &mut memo))
}
