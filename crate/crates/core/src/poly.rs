//! Exact sparse polynomials in the matrix coordinates `x_{ij}` and the
//! exterior algebra of `C^{2n}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::OneLineTableau;

/// Exponent vector over `x_{11}, x_{12}, ..., x_{nm}` (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn from_exponents(e: Vec<u16>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded lex: total degree first, then a larger exponent on an earlier variable wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `C[M_{n,m}]` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: u32,
    m: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(n: u32, m: u32) -> Self {
        SparsePolynomial { n, m, terms: BTreeMap::new() }
    }

    pub fn one(n: u32, m: u32) -> Self {
        Self::constant(n, m, BigInt::one())
    }

    pub fn constant(n: u32, m: u32, c: BigInt) -> Self {
        let mut p = Self::zero(n, m);
        p.add_term(Monomial::one((n * m) as usize), c);
        p
    }

    /// The coordinate function `x_{ij}` (1-based).
    pub fn var(n: u32, m: u32, i: u32, j: u32) -> Result<Self> {
        if i == 0 || i > n || j == 0 || j > m {
            return Err(Error::parameter(format!("x_{{{i},{j}}} is not a coordinate of M_{{{n},{m}}}")));
        }
        let mut e = vec![0; (n * m) as usize];
        e[((i - 1) * m + (j - 1)) as usize] = 1;
        let mut p = Self::zero(n, m);
        p.add_term(Monomial(e), BigInt::one());
        Ok(p)
    }

    pub fn ambient(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::parameter(format!(
                "polynomials over M_{:?} and M_{:?} cannot be combined",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.m);
        }
        SparsePolynomial { n: self.n, m: self.m, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                *acc.entry(a.mul(b)).or_default() += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparsePolynomial { n: self.n, m: self.m, terms: acc })
    }

    /// Exact value at an `n x m` matrix.
    pub fn evaluate(&self, point: &[Vec<BigRational>]) -> Result<BigRational> {
        if point.len() != self.n as usize || point.iter().any(|r| r.len() != self.m as usize) {
            return Err(Error::parameter(format!("point must be a {}x{} matrix", self.n, self.m)));
        }
        let flat: Vec<&BigRational> = point.iter().flatten().collect();
        let mut total = BigRational::zero();
        for (mono, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (x, &e) in flat.iter().zip(mono.exponents()) {
                if e > 0 {
                    v *= num_traits::pow((*x).clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Total degree of the highest term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = mono
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let (i, j) = (v as u32 / self.m + 1, v as u32 % self.m + 1);
                    if e == 1 {
                        format!("x{i}{j}")
                    } else {
                        format!("x{i}{j}^{e}")
                    }
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exp: Vec<[u32; 3]>,
    coef: String,
}

/// Terms in descending graded-lex order, `{"exp":[[i,j,e],...],"coef":"c"}`.
impl Serialize for SparsePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (mono, c) in self.terms.iter().rev() {
            let exp = mono
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| [v as u32 / self.m + 1, v as u32 % self.m + 1, e as u32])
                .collect();
            seq.serialize_element(&RawTerm { exp, coef: c.to_string() })?;
        }
        seq.end()
    }
}

/// Leibniz expansion of the minor `δ_[I:J]`.
pub fn minor(t: &OneLineTableau) -> SparsePolynomial {
    let (n, m) = t.ambient();
    let l = t.len();
    let mut p = SparsePolynomial::zero(n, m);
    let mut perm: Vec<usize> = (0..l).collect();
    let vars = (n * m) as usize;
    loop {
        let mut e = vec![0u16; vars];
        for (a, &s) in perm.iter().enumerate() {
            let (i, j) = (t.rows()[a], t.cols()[s]);
            e[((i - 1) * m + (j - 1)) as usize] += 1;
        }
        let sign = if inversions(&perm).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        p.add_term(Monomial(e), sign);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    p
}

/// Product of the minors of the given factors; the empty product is `1`.
pub fn product_of_minors(factors: &[OneLineTableau], n: u32, m: u32) -> Result<SparsePolynomial> {
    let mut p = SparsePolynomial::one(n, m);
    for f in factors {
        p = p.mul(&minor(f))?;
    }
    Ok(p)
}

pub(crate) fn inversions(v: &[usize]) -> usize {
    (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let l = a.len();
    let mut det = BigRational::one();
    for c in 0..l {
        let Some(p) = (c..l).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..l {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Value of `δ_[I:J]` at a matrix.
pub fn minor_value(t: &OneLineTableau, point: &[Vec<BigRational>]) -> BigRational {
    let sub = t
        .rows()
        .iter()
        .map(|&i| t.cols().iter().map(|&j| point[i as usize - 1][j as usize - 1].clone()).collect())
        .collect();
    determinant(sub)
}

/// Element of `Λ^p C^{dim}`: coefficients on `e_K`, `K` strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement<C = BigInt> {
    dim: u32,
    degree: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

pub trait Coefficient: Clone + Zero + One + std::ops::Neg<Output = Self> + for<'a> std::ops::AddAssign<&'a Self> + fmt::Display {}

impl<T> Coefficient for T where
    T: Clone + Zero + One + std::ops::Neg<Output = Self> + for<'a> std::ops::AddAssign<&'a Self> + fmt::Display
{
}

impl<C: Coefficient> ExteriorElement<C> {
    pub fn zero(dim: u32, degree: u32) -> Self {
        ExteriorElement { dim, degree, terms: BTreeMap::new() }
    }

    /// `e_K`; the empty `K` gives the unit of `Λ^0`.
    pub fn basis(k: &[u32], dim: u32) -> Result<Self> {
        if !crate::tableau::strictly_increasing(k) || k.first() == Some(&0) || k.iter().any(|&x| x > dim) {
            return Err(Error::parameter(format!("{k:?} is not an increasing subset of 1..={dim}")));
        }
        let mut e = Self::zero(dim, k.len() as u32);
        e.terms.insert(k.to_vec(), C::one());
        Ok(e)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: &[u32]) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, k: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(C::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.dim, self.degree) != (other.dim, other.degree) {
            return Err(Error::parameter("exterior elements of different degree or dimension"));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> ExteriorElement<D> {
        let mut out = ExteriorElement::zero(self.dim, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// `self ∧ other`, signed by the parity of the merge permutation.
    pub fn wedge(&self, other: &Self) -> Result<Self>
    where
        C: std::ops::Mul<Output = C>,
    {
        if self.dim != other.dim {
            return Err(Error::parameter("wedge of elements over different spaces"));
        }
        if self.degree + other.degree > self.dim {
            return Err(Error::domain(format!(
                "degree {} + {} exceeds the dimension {}",
                self.degree, other.degree, self.dim
            )));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.iter().any(|v| b.contains(v)) {
                    continue;
                }
                let swaps: usize = a.iter().map(|&v| b.iter().filter(|&&w| w < v).count()).sum();
                let mut k: Vec<u32> = a.iter().chain(b).copied().collect();
                k.sort_unstable();
                let c = x.clone() * y.clone();
                out.add_term(k, if swaps.is_multiple_of(2) { c } else { -c });
            }
        }
        Ok(out)
    }
}

/// `ω = Σ_u e_{2u-1} ∧ e_{2u}` in `Λ^2 C^{2n}`.
pub fn omega<C: Coefficient>(n: u32) -> ExteriorElement<C> {
    let mut w = ExteriorElement::zero(2 * n, 2);
    for u in 1..=n {
        w.add_term(vec![2 * u - 1, 2 * u], C::one());
    }
    w
}

#[derive(Serialize)]
struct RawExteriorTerm<'a> {
    indices: &'a [u32],
    coef: String,
}

/// `[{"indices":[...],"coef":"c"},...]` in lex order of the index sets.
impl<C: Coefficient> Serialize for ExteriorElement<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&RawExteriorTerm { indices: k, coef: c.to_string() })?;
        }
        seq.end()
    }
}
