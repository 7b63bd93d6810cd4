//! Gelfand-Tsetlin posets and patterns.
//!
//! Elements are `z_b^{(a)}` with `1 <= b <= a`, addressed as `(a, b)`.
//! The order is `z_b^{(a)} >= z_{b'}^{(a')}` iff `b <= b'` and
//! `a - b >= a' - b'`. Rows are serialized top first, `b` ascending.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Guard;
use crate::tableau::{SemistandardTableau, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GtKind {
    /// `Γ_m = {1 <= b <= a <= m}`.
    Gamma { m: u32 },
    /// `Γ_{n,m}`: `b <= n` and `0 <= a - b <= m - 1`.
    GammaNm { n: u32, m: u32 },
    /// `ϝ_{k,2n} = Γ_{k,2n} \ (A ∪ B)`.
    Nullcone { k: u32, n: u32 },
}

impl fmt::Display for GtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GtKind::Gamma { m } => write!(f, "Γ_{m}"),
            GtKind::GammaNm { n, m } => write!(f, "Γ_{{{n},{m}}}"),
            GtKind::Nullcone { k, n } => write!(f, "ϝ_{{{k},{}}}", 2 * n),
        }
    }
}

/// `z_b^{(a)} >= z_{b'}^{(a')}` in any GT poset.
pub fn gt_ge(a: u32, b: u32, a2: u32, b2: u32) -> bool {
    b <= b2 && a - b >= a2 - b2
}

/// Membership of `z_b^{(a)} ∈ Γ_{k,2n}` in `ϝ_{k,2n}`.
pub fn in_nullcone_poset(a: u32, b: u32, k: u32, n: u32) -> bool {
    let mu = k.min(n);
    let in_a = a <= 2 * n && 2 * b > a + 1;
    let in_b = b > mu && a - b + mu < 2 * n;
    !(in_a || in_b)
}

/// A finite GT poset with its elements in serialization order.
#[derive(Clone, Debug)]
pub struct GtPoset {
    kind: GtKind,
    elements: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl PartialEq for GtPoset {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for GtPoset {}

impl GtPoset {
    pub fn new(kind: GtKind) -> Result<Self> {
        let (top, member): (u32, Box<dyn Fn(u32, u32) -> bool>) = match kind {
            GtKind::Gamma { m } => {
                if m == 0 {
                    return Err(Error::parameter("Γ_m needs m >= 1"));
                }
                (m, Box::new(|_, _| true))
            }
            GtKind::GammaNm { n, m } => {
                if n == 0 || m == 0 {
                    return Err(Error::parameter("Γ_{n,m} needs n, m >= 1"));
                }
                (m + n - 1, Box::new(move |a, b| b <= n && a - b < m))
            }
            GtKind::Nullcone { k, n } => {
                if k == 0 || n == 0 {
                    return Err(Error::parameter("ϝ_{k,2n} needs k, n >= 1"));
                }
                (2 * n + k - 1, Box::new(move |a, b| b <= k && a - b < 2 * n && in_nullcone_poset(a, b, k, n)))
            }
        };
        let elements: Vec<(u32, u32)> =
            (1..=top).rev().flat_map(|a| (1..=a).map(move |b| (a, b))).filter(|&(a, b)| member(a, b)).collect();
        let index = elements.iter().enumerate().map(|(i, &z)| (z, i)).collect();
        Ok(GtPoset { kind, elements, index })
    }

    pub fn kind(&self) -> GtKind {
        self.kind
    }

    pub fn elements(&self) -> &[(u32, u32)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, a: u32, b: u32) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }

    /// Row index carrying the shape: `m` for `Γ_m` and `Γ_{n,m}`, `2n` for `ϝ_{k,2n}`.
    pub fn shape_row(&self) -> u32 {
        match self.kind {
            GtKind::Gamma { m } | GtKind::GammaNm { m, .. } => m,
            GtKind::Nullcone { n, .. } => 2 * n,
        }
    }

    /// Highest row index.
    pub fn top(&self) -> u32 {
        self.elements.first().map_or(0, |z| z.0)
    }

    /// Element indices of row `a`, `b` ascending.
    pub fn row(&self, a: u32) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].0 == a).collect()
    }

    /// `elements[i] >= elements[j]`.
    pub fn ge(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.elements[i];
        let (a2, b2) = self.elements[j];
        gt_ge(a, b, a2, b2)
    }

    /// Covering pairs `(upper, lower)` of the induced order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let gt = |i: usize, j: usize| i != j && self.ge(i, j);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if gt(i, j) && !(0..n).any(|w| gt(i, w) && gt(w, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn count_linear_extensions(&self) -> Result<u128> {
        crate::lattice::count_linear_extensions(self.len(), |i, j| i != j && self.ge(j, i))
    }

    pub fn zero(&self) -> GtPattern {
        GtPattern { poset: self.clone(), values: vec![0; self.len()] }
    }

    /// Builds a pattern from rows listed top first.
    pub fn pattern_from_rows(&self, rows: &[Vec<u64>]) -> Result<GtPattern> {
        let layout = self.row_layout();
        if rows.len() != layout.len() || rows.iter().zip(&layout).any(|(r, l)| r.len() != l.len()) {
            return Err(Error::parameter(format!("row lengths do not match the layout of {}", self.kind)));
        }
        let mut values = vec![0; self.len()];
        for (r, l) in rows.iter().zip(&layout) {
            for (&v, &i) in r.iter().zip(l) {
                values[i] = v;
            }
        }
        GtPattern::new(self.clone(), values)
    }

    fn row_layout(&self) -> Vec<Vec<usize>> {
        (1..=self.top()).rev().map(|a| self.row(a)).collect()
    }

    /// All non-negative integer order-preserving maps whose shape row is
    /// `top_row` (padded with zeros).
    pub fn cone_points(&self, top_row: &Shape, guard: Guard) -> Result<Vec<GtPattern>> {
        let fixed_row = self.row(self.shape_row());
        if top_row.length() > fixed_row.len() {
            return Ok(Vec::new());
        }
        let mut fixed: Vec<Option<u64>> = vec![None; self.len()];
        for (pos, &i) in fixed_row.iter().enumerate() {
            fixed[i] = Some(top_row.row(pos) as u64);
        }
        // b ascending, a - b descending: every element follows its upper covers
        let mut order: Vec<usize> = (0..self.len()).filter(|&i| fixed[i].is_none()).collect();
        order.sort_by_key(|&i| {
            let (a, b) = self.elements[i];
            (b, std::cmp::Reverse(a - b))
        });
        let upper: Vec<Vec<usize>> = {
            let mut u = vec![Vec::new(); self.len()];
            for (hi, lo) in self.covers() {
                u[lo].push(hi);
            }
            u
        };
        let lower_bound: Vec<u64> = (0..self.len())
            .map(|v| {
                (0..self.len()).filter(|&w| w != v && self.ge(v, w)).filter_map(|w| fixed[w]).max().unwrap_or(0)
            })
            .collect();
        let mut values: Vec<u64> = fixed.iter().map(|f| f.unwrap_or(0)).collect();
        // fixed values must be consistent among themselves
        for &i in &fixed_row {
            for &j in &fixed_row {
                if self.ge(i, j) && values[i] < values[j] {
                    return Ok(Vec::new());
                }
            }
        }
        let mut out = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn rec(
            depth: usize,
            order: &[usize],
            upper: &[Vec<usize>],
            lower_bound: &[u64],
            values: &mut Vec<u64>,
            poset: &GtPoset,
            out: &mut Vec<GtPattern>,
            guard: Guard,
        ) -> Result<()> {
            let Some(&v) = order.get(depth) else {
                out.push(GtPattern { poset: poset.clone(), values: values.clone() });
                return guard.check(out.len() as u64, "cone points");
            };
            let hi = upper[v].iter().map(|&u| values[u]).min().unwrap_or(u64::MAX);
            if hi == u64::MAX {
                return Err(Error::invariant(format!("element {:?} has no upper bound", poset.elements[v])));
            }
            for x in lower_bound[v]..=hi {
                values[v] = x;
                rec(depth + 1, order, upper, lower_bound, values, poset, out, guard)?;
            }
            values[v] = 0;
            Ok(())
        }
        rec(0, &order, &upper, &lower_bound, &mut values, self, &mut out, guard)?;
        Ok(out)
    }

    /// H-representation `A x >= 0` of the cone of non-negative
    /// order-preserving maps: one row per covering relation, one per minimal element.
    pub fn cone_inequalities(&self) -> ConeInequalities {
        let dim = self.len();
        let mut rows = Vec::new();
        for (hi, lo) in self.covers() {
            let mut r = vec![0i64; dim + 1];
            r[hi] = 1;
            r[lo] = -1;
            rows.push(r);
        }
        for w in 0..dim {
            if !(0..dim).any(|v| v != w && self.ge(w, v)) {
                let mut r = vec![0i64; dim + 1];
                r[w] = 1;
                rows.push(r);
            }
        }
        ConeInequalities { dim, inequalities: rows }
    }
}

/// `{"dim":N,"inequalities":[[coeffs...,0],...]}`; each row reads
/// `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeInequalities {
    pub dim: usize,
    pub inequalities: Vec<Vec<i64>>,
}

impl ConeInequalities {
    pub fn satisfied_by(&self, x: &[u64]) -> bool {
        self.inequalities.iter().all(|r| {
            let lhs: i128 = r[..self.dim].iter().zip(x).map(|(&c, &v)| c as i128 * v as i128).sum();
            lhs >= r[self.dim] as i128
        })
    }
}

/// A non-negative integer order-preserving map on a GT poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtPattern {
    poset: GtPoset,
    values: Vec<u64>,
}

impl GtPattern {
    pub fn new(poset: GtPoset, values: Vec<u64>) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::parameter("value count does not match the poset"));
        }
        let p = GtPattern { poset, values };
        p.check_order()?;
        Ok(p)
    }

    fn check_order(&self) -> Result<()> {
        for (hi, lo) in self.poset.covers() {
            if self.values[hi] < self.values[lo] {
                let (a, b) = self.poset.elements[hi];
                let (a2, b2) = self.poset.elements[lo];
                return Err(Error::invariant(format!(
                    "pattern is not order preserving at z_{b}^({a}) >= z_{b2}^({a2})"
                )));
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &GtPoset {
        &self.poset
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value at `z_b^{(a)}`; zero off the poset.
    pub fn get(&self, a: u32, b: u32) -> u64 {
        self.poset.position(a, b).map_or(0, |i| self.values[i])
    }

    /// Rows top first, `b` ascending.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.poset.row_layout().into_iter().map(|r| r.into_iter().map(|i| self.values[i]).collect()).collect()
    }

    pub fn add(&self, other: &GtPattern) -> Result<GtPattern> {
        if self.poset != other.poset {
            return Err(Error::parameter(format!("cannot add patterns on {} and {}", self.poset.kind, other.poset.kind)));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(GtPattern { poset: self.poset.clone(), values })
    }

    /// The shape row as a partition.
    pub fn shape(&self) -> Result<Shape> {
        let row: Vec<u32> = self.poset.row(self.poset.shape_row()).iter().map(|&i| self.values[i] as u32).collect();
        Shape::from_padded(&row)
    }

    /// Left half `b <= (a+1)/2` of the rows `a <= 2n`, top first. This is
    /// how symplectic patterns are displayed.
    pub fn left_half(&self, two_n: u32) -> Vec<Vec<u64>> {
        (1..=two_n).rev().map(|a| (1..=a.div_ceil(2)).map(|b| self.get(a, b)).collect()).collect()
    }

    pub fn to_raw(&self) -> RawPattern {
        RawPattern { poset: self.poset.kind, rows: self.rows() }
    }
}

/// `{"poset":{"kind":...},"rows":[[...],...]}`, rows top first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPattern {
    pub poset: GtKind,
    pub rows: Vec<Vec<u64>>,
}

impl RawPattern {
    pub fn into_pattern(self) -> Result<GtPattern> {
        GtPoset::new(self.poset)?.pattern_from_rows(&self.rows)
    }
}

impl Serialize for GtPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

/// GT pattern on `Γ_m` of a semistandard tableau: `p(z_b^{(a)})` counts the
/// entries `<= a` in row `b`.
pub fn pattern_from_tableau(t: &SemistandardTableau, m: u32) -> Result<GtPattern> {
    if t.rows().iter().flatten().any(|&x| x > m) {
        return Err(Error::parameter(format!("tableau entries exceed {m}")));
    }
    if t.rows().len() > m as usize {
        return Err(Error::parameter(format!("tableau has more than {m} rows")));
    }
    let poset = GtPoset::new(GtKind::Gamma { m })?;
    let values = poset
        .elements()
        .iter()
        .map(|&(a, b)| t.rows().get(b as usize - 1).map_or(0, |r| r.iter().filter(|&&x| x <= a).count() as u64))
        .collect();
    GtPattern::new(poset, values)
}

/// Inverse of [`pattern_from_tableau`]: row `b` holds `p(z_b^{(a)}) - p(z_b^{(a-1)})` copies of `a`.
pub fn tableau_from_pattern(p: &GtPattern) -> Result<SemistandardTableau> {
    let GtKind::Gamma { m } = p.poset.kind else {
        return Err(Error::parameter("tableau_from_pattern needs a pattern on Γ_m"));
    };
    p.check_order()?;
    let mut rows = Vec::new();
    for b in 1..=m {
        let mut row = Vec::new();
        for a in b..=m {
            let below = if a > b { p.get(a - 1, b) } else { 0 };
            let cnt = p.get(a, b) - below;
            row.extend(std::iter::repeat_n(a, cnt as usize));
        }
        if row.is_empty() {
            break;
        }
        rows.push(row);
    }
    SemistandardTableau::new(rows, m)
}

/// Representative on `Γ_{n,m}` of a pattern in `𝒫(n,m)` (a pattern on
/// `Γ_{m+n}` generated by `Pl(n,m+n)`), modulo multiples of `p_1̂`.
pub fn reduce_mod_top(p: &GtPattern, n: u32, m: u32) -> Result<GtPattern> {
    if p.poset.kind != (GtKind::Gamma { m: m + n }) {
        return Err(Error::parameter(format!("expected a pattern on Γ_{}", m + n)));
    }
    let outside = p.poset.elements().iter().zip(&p.values).any(|(&(_, b), &v)| b > n && v != 0);
    if outside {
        return Err(Error::domain(format!("pattern is not supported in the first {n} diagonals")));
    }
    let c = p.get(m + n, n);
    let excised_constant = p.poset.elements().iter().zip(&p.values).all(|(&(a, b), &v)| b > n || a - b < m || v == c);
    if !excised_constant {
        return Err(Error::domain("pattern is not constant above the top element of Γ_{n,m}"));
    }
    let target = GtPoset::new(GtKind::GammaNm { n, m })?;
    let values = target.elements().iter().map(|&(a, b)| p.get(a, b)).collect();
    GtPattern::new(target, values)
}

/// Fiber product over the shared shape row: `GL_n` pattern on `Γ_n` and
/// `GL_m` pattern on `Γ_m` into a pattern on `Γ_{n,m}`.
pub fn glue(p_minus: &GtPattern, p_plus: &GtPattern) -> Result<GtPattern> {
    let (GtKind::Gamma { m: n }, GtKind::Gamma { m }) = (p_minus.poset.kind, p_plus.poset.kind) else {
        return Err(Error::parameter("glue needs patterns on Γ_n and Γ_m"));
    };
    let top_minus: Vec<u64> = (1..=n).map(|b| p_minus.get(n, b)).collect();
    let top_plus: Vec<u64> = (1..=m).map(|b| p_plus.get(m, b)).collect();
    let common = n.min(m) as usize;
    if top_minus[..common] != top_plus[..common]
        || top_minus[common..].iter().any(|&v| v != 0)
        || top_plus[common..].iter().any(|&v| v != 0)
    {
        return Err(Error::domain(format!("top rows {top_minus:?} and {top_plus:?} differ")));
    }
    let target = GtPoset::new(GtKind::GammaNm { n, m })?;
    let mut values = vec![0u64; target.len()];
    for i in 1..=n {
        for j in 1..=i {
            let v = p_minus.get(i, j);
            match target.position(m + n - i, j + n - i) {
                Some(pos) if j <= m => values[pos] = v,
                _ if v != 0 => return Err(Error::domain(format!("GL_{n} entry ({i},{j}) does not fit Γ_{{{n},{m}}}"))),
                _ => {}
            }
        }
    }
    for i in 1..=m {
        for j in 1..=i {
            let v = p_plus.get(i, j);
            match target.position(i, j) {
                Some(pos) => values[pos] = v,
                None if v != 0 => return Err(Error::domain(format!("GL_{m} entry ({i},{j}) does not fit Γ_{{{n},{m}}}"))),
                None => {}
            }
        }
    }
    GtPattern::new(target, values)
}

/// Inverse of [`glue`].
pub fn split_glued(p: &GtPattern) -> Result<(GtPattern, GtPattern)> {
    let GtKind::GammaNm { n, m } = p.poset.kind else {
        return Err(Error::parameter("split_glued needs a pattern on Γ_{n,m}"));
    };
    let minus = GtPoset::new(GtKind::Gamma { m: n })?;
    let vals_minus =
        minus.elements().iter().map(|&(i, j)| if j <= m { p.get(m + n - i, j + n - i) } else { 0 }).collect();
    let plus = GtPoset::new(GtKind::Gamma { m })?;
    let vals_plus = plus.elements().iter().map(|&(i, j)| p.get(i, j)).collect();
    Ok((GtPattern::new(minus, vals_minus)?, GtPattern::new(plus, vals_plus)?))
}

/// Restriction of a pattern on `Γ_{k,2n}` to `ϝ_{k,2n}`; fails unless the
/// pattern vanishes off `ϝ_{k,2n}`.
pub fn restrict_to_nullcone(p: &GtPattern, k: u32, n: u32) -> Result<GtPattern> {
    if p.poset.kind != (GtKind::GammaNm { n: k, m: 2 * n }) {
        return Err(Error::parameter(format!("expected a pattern on Γ_{{{k},{}}}", 2 * n)));
    }
    let target = GtPoset::new(GtKind::Nullcone { k, n })?;
    let off = p.poset.elements().iter().zip(&p.values).any(|(&(a, b), &v)| v != 0 && target.position(a, b).is_none());
    if off {
        return Err(Error::domain(format!("pattern is not supported on ϝ_{{{k},{}}}", 2 * n)));
    }
    let values = target.elements().iter().map(|&(a, b)| p.get(a, b)).collect();
    GtPattern::new(target, values)
}
