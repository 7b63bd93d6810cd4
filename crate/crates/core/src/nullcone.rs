//! The nullcone `N_{k,2n}` of `Sp_{2n}` acting on `M_{k,2n}`.
//!
//! The symplectic form pairs `e_{2u-1}` with `e_{2u}`:
//! `<x, y> = Σ_u (x_{2u-1} y_{2u} - x_{2u} y_{2u-1})`. The invariants
//! `r_ij`, `ω` and the threshold column `[1,3,...,2n-1]` all follow from it.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{combinations, dominates_threshold, enumerate_ssyt_with_guard, threshold_column, Guard, Lattice};
use crate::linalg;
use crate::poly::{minor, minor_value, omega, ExteriorElement, Monomial, SparsePolynomial};
use crate::straighten::{
    check_leading, common_denominator, content_with_ambient, straighten_with_guard, StandardCombination,
    WeightConfig,
};
use crate::tableau::{DoubleTableau, OneLineTableau, Shape};

/// Default number of rewrites `n_straighten` may perform.
pub const DEFAULT_FUEL: u64 = 100_000;

/// Parameters `(k, n)` of `N_{k,2n}` with the weight configuration on `M_{k,2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullconeContext {
    k: u32,
    n: u32,
    cfg: WeightConfig,
    guard: Guard,
}

impl NullconeContext {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::parameter("the nullcone needs k, n >= 1"));
        }
        Ok(NullconeContext { k, n, cfg: WeightConfig::default_for(k, 2 * n), guard: Guard::default() })
    }

    pub fn with_weight_base(mut self, base: BigInt) -> Result<Self> {
        self.cfg = WeightConfig::new(self.k, 2 * self.n, base)?;
        Ok(self)
    }

    pub fn with_guard(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weight_config(&self) -> &WeightConfig {
        &self.cfg
    }

    pub fn guard(&self) -> Guard {
        self.guard
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::Nullcone { k: self.k, n: self.n }
    }

    /// `J̃ = [1, 3, ..., 2n-1]`.
    pub fn threshold(&self) -> Vec<u32> {
        threshold_column(self.n)
    }
}

/// `<x, y>` for vectors of length `2n`.
pub fn symplectic_form<T>(x: &[T], y: &[T]) -> T
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
{
    let mut acc = T::zero();
    for u in 0..x.len() / 2 {
        acc = acc + x[2 * u].clone() * y[2 * u + 1].clone() - x[2 * u + 1].clone() * y[2 * u].clone();
    }
    acc
}

/// `r_ij = Σ_u (x_{i,2u-1} x_{j,2u} - x_{j,2u-1} x_{i,2u})`.
pub fn basic_invariant(i: u32, j: u32, ctx: &NullconeContext) -> Result<SparsePolynomial> {
    let (k, m) = (ctx.k, 2 * ctx.n);
    if i >= j || i == 0 || j > k {
        return Err(Error::parameter(format!("r_{{{i},{j}}} needs 1 <= i < j <= {k}")));
    }
    let mut p = SparsePolynomial::zero(k, m);
    for u in 1..=ctx.n {
        let a = SparsePolynomial::var(k, m, i, 2 * u - 1)?.mul(&SparsePolynomial::var(k, m, j, 2 * u)?)?;
        let b = SparsePolynomial::var(k, m, j, 2 * u - 1)?.mul(&SparsePolynomial::var(k, m, i, 2 * u)?)?;
        p = p.add(&a)?.sub(&b)?;
    }
    Ok(p)
}

/// Torus weight of `e_S` for the maximal torus of `Sp_{2n}`.
pub fn sp_weight(set: impl IntoIterator<Item = u32>, n: u32) -> Vec<i32> {
    let mut w = vec![0i32; n as usize];
    for j in set {
        let u = ((j - 1) / 2) as usize;
        w[u] += if j % 2 == 1 { 1 } else { -1 };
    }
    w
}

/// `Σ c_d e_{J_d} = ω ∧ (element / denominator)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "ser_display")]
    pub denominator: BigInt,
    pub element: ExteriorElement<BigInt>,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A combination `Σ c_d e_{J_d}` lying in `ω ∧ Λ^{p-2}`, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSum {
    p: u32,
    n: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
    certificate: Certificate,
}

impl OmegaSum {
    fn from_certificate(n: u32, p: u32, certificate: Certificate) -> Result<Self> {
        let wedge = omega::<BigInt>(n).wedge(&certificate.element)?;
        let terms = wedge
            .terms()
            .iter()
            .map(|(k, c)| (k.clone(), BigRational::new(c.clone(), certificate.denominator.clone())))
            .collect();
        Ok(OmegaSum { p, n, terms, certificate })
    }

    pub fn degree(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Lex-smallest index set with a nonzero coefficient.
    pub fn leading(&self) -> Option<&Vec<u32>> {
        self.terms.keys().next()
    }

    /// Re-expands `ω ∧ element` and compares with the stored terms.
    pub fn verify(&self) -> bool {
        let Ok(wedge) = omega::<BigInt>(self.n).wedge(&self.certificate.element) else {
            return false;
        };
        let scaled: BTreeMap<Vec<u32>, BigRational> = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * BigRational::from_integer(self.certificate.denominator.clone())))
            .collect();
        wedge.terms().len() == scaled.len()
            && wedge.terms().iter().all(|(k, c)| scaled.get(k) == Some(&BigRational::from_integer(c.clone())))
    }
}

#[derive(Serialize)]
struct RawOmegaTerm<'a> {
    #[serde(rename = "J")]
    j: &'a [u32],
    coef: String,
}

#[derive(Serialize)]
struct RawOmegaSum<'a> {
    p: u32,
    terms: Vec<RawOmegaTerm<'a>>,
    certificate: &'a Certificate,
}

impl Serialize for OmegaSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawOmegaSum {
            p: self.p,
            terms: self.terms.iter().map(|(j, c)| RawOmegaTerm { j, coef: c.to_string() }).collect(),
            certificate: &self.certificate,
        }
        .serialize(s)
    }
}

/// Looks for an ω-sum whose lex-smallest term is `e_J` with coefficient 1,
/// with no precondition on `J`.
pub fn search_omega_sum(j: &[u32], n: u32) -> Result<Option<OmegaSum>> {
    let p = j.len() as u32;
    let dim = 2 * n;
    if p < 2 || p > dim {
        return Ok(None);
    }
    ExteriorElement::<BigInt>::basis(j, dim)?;
    let target_weight = sp_weight(j.iter().copied(), n);
    let gens: Vec<Vec<u32>> =
        combinations(dim, p - 2).into_iter().filter(|k| sp_weight(k.iter().copied(), n) == target_weight).collect();
    let w = omega::<BigInt>(n);
    let wedges = gens
        .iter()
        .map(|k| w.wedge(&ExteriorElement::basis(k, dim)?))
        .collect::<Result<Vec<ExteriorElement<BigInt>>>>()?;

    for (k, g) in gens.iter().zip(&wedges) {
        if g.terms().keys().next().map(|x| x.as_slice()) == Some(j) {
            let c = g.coefficient(j);
            let mut element = ExteriorElement::zero(dim, p - 2);
            element.add_term(k.clone(), c.clone());
            // c = ±1, so dividing by c is multiplying by c
            return Ok(Some(OmegaSum::from_certificate(n, p, Certificate { denominator: BigInt::one(), element })?));
        }
    }

    // coefficient 1 at J, 0 at every lex-smaller index set
    let mut rows: Vec<Vec<u32>> = wedges.iter().flat_map(|g| g.terms().keys().cloned()).filter(|x| x.as_slice() <= j).collect();
    rows.sort();
    rows.dedup();
    if !rows.iter().any(|x| x.as_slice() == j) {
        return Ok(None);
    }
    let a: linalg::Matrix = rows
        .iter()
        .map(|r| wedges.iter().map(|g| BigRational::from_integer(g.coefficient(r))).collect())
        .collect();
    let b: Vec<BigRational> =
        rows.iter().map(|r| if r.as_slice() == j { BigRational::one() } else { BigRational::zero() }).collect();
    let Some(sol) = linalg::solve(&a, &b, gens.len())? else {
        return Ok(None);
    };
    let (den, nums) = common_denominator(&sol.x);
    let mut element = ExteriorElement::zero(dim, p - 2);
    for (k, c) in gens.iter().zip(nums) {
        element.add_term(k.clone(), c);
    }
    let s = OmegaSum::from_certificate(n, p, Certificate { denominator: den, element })?;
    if s.leading().map(|x| x.as_slice()) != Some(j) || !s.terms[j].is_one() {
        return Err(Error::invariant(format!("ω-sum solve for {j:?} produced the wrong leading term")));
    }
    Ok(Some(s))
}

/// The ω-sum with leading term `e_J`; exists exactly when `J ⋡ J̃`.
pub fn omega_sum_for(j: &[u32], ctx: &NullconeContext) -> Result<OmegaSum> {
    let p = j.len() as u32;
    if p < 2 || p > 2 * ctx.n {
        return Err(Error::parameter(format!("ω-sums need 2 <= |J| <= {}, got {j:?}", 2 * ctx.n)));
    }
    if dominates_threshold(j, ctx.n) {
        return Err(Error::domain(format!("{j:?} ⪰ {:?}: no ω-sum exists with this leading term", ctx.threshold())));
    }
    search_omega_sum(j, ctx.n)?.ok_or_else(|| Error::invariant(format!("no ω-sum found for {j:?}")))
}

/// `Σ_d c_d δ_[I:J_d]`, scaled by the common denominator of the `c_d`.
pub fn theta_element(rows: &[u32], s: &OmegaSum, ctx: &NullconeContext) -> Result<SparsePolynomial> {
    if rows.len() as u32 != s.p {
        return Err(Error::parameter(format!("|I| = {} but the ω-sum has degree {}", rows.len(), s.p)));
    }
    if s.n != ctx.n {
        return Err(Error::parameter("ω-sum belongs to a different n"));
    }
    let coefs: Vec<BigRational> = s.terms.values().cloned().collect();
    let (_, nums) = common_denominator(&coefs);
    let mut p = SparsePolynomial::zero(ctx.k, 2 * ctx.n);
    for (j, c) in s.terms.keys().zip(nums) {
        let t = OneLineTableau::new(rows.to_vec(), j.clone(), ctx.k, 2 * ctx.n)?;
        p = p.add(&minor(&t).scale(&c))?;
    }
    Ok(p)
}

fn is_n_standard(t: &DoubleTableau, lat: &Lattice) -> bool {
    lat.is_standard(t)
}

/// Expresses a product of minors over `M_{k,2n}` modulo the nullcone ideal
/// as a combination of `N`-standard monomials.
pub fn n_straighten(product: &[OneLineTableau], ctx: &NullconeContext) -> Result<StandardCombination> {
    n_straighten_with_fuel(product, ctx, DEFAULT_FUEL)
}

pub fn n_straighten_with_fuel(product: &[OneLineTableau], ctx: &NullconeContext, fuel: u64) -> Result<StandardCombination> {
    let lat = ctx.lattice();
    let cfg = &ctx.cfg;
    let first = straighten_with_guard(product, cfg, ctx.guard)?;
    let mut terms: HashMap<DoubleTableau, BigRational> =
        first.terms.into_iter().map(|t| (t.tableau, t.coef)).collect();
    let mut weights: HashMap<DoubleTableau, BigInt> = HashMap::new();
    let mut sums: HashMap<Vec<u32>, OmegaSum> = HashMap::new();
    let mut used = 0u64;
    loop {
        let mut worst: Option<(BigInt, DoubleTableau)> = None;
        for t in terms.keys().filter(|t| !is_n_standard(t, &lat)) {
            let w = match weights.get(t) {
                Some(w) => w.clone(),
                None => {
                    let w = cfg.weight(t)?;
                    weights.insert(t.clone(), w.clone());
                    w
                }
            };
            if worst.as_ref().is_none_or(|(bw, bt)| (&w, t) > (bw, bt)) {
                worst = Some((w, t.clone()));
            }
        }
        let Some((_, tab)) = worst else { break };
        used += 1;
        if used > fuel {
            return Err(Error::invariant(format!("N-straightening did not terminate within {fuel} rewrites")));
        }
        let coef = terms.remove(&tab).expect("term present");
        let cols = tab.columns();
        let pos = cols.iter().position(|c| !lat.contains(c)).expect("non-standard column");
        let bad = &cols[pos];
        let s = match sums.get(bad.cols()) {
            Some(s) => s.clone(),
            None => {
                let s = omega_sum_for(bad.cols(), ctx)?;
                sums.insert(bad.cols().to_vec(), s.clone());
                s
            }
        };
        for (jd, cd) in s.terms.iter().filter(|(jd, _)| jd.as_slice() != bad.cols()) {
            let mut factors: Vec<OneLineTableau> = cols.to_vec();
            factors[pos] = OneLineTableau::new(bad.rows().to_vec(), jd.clone(), ctx.k, 2 * ctx.n)?;
            let sub = straighten_with_guard(&factors, cfg, ctx.guard)?;
            for t in sub.terms {
                let e = terms.entry(t.tableau).or_insert_with(BigRational::zero);
                *e -= &coef * cd * t.coef;
            }
        }
        terms.retain(|_, c| !c.is_zero());
    }
    StandardCombination::from_terms(terms.into_iter().map(|(t, c)| (c, t)), cfg)
}

/// `N`-standard monomials with the same row content, degree and `Sp`
/// torus weight as `product`.
pub fn n_standard_candidates(product: &[OneLineTableau], ctx: &NullconeContext) -> Result<Vec<DoubleTableau>> {
    let (rc, cc) = content_with_ambient(product, ctx.k, 2 * ctx.n);
    let degree: u32 = rc.iter().sum();
    let target = column_content_weight(&cc, ctx.n);
    let mut out = Vec::new();
    for shape in Shape::partitions(degree, ctx.k.min(ctx.n) as usize) {
        for t in enumerate_n_standard_with_guard(&shape, ctx)? {
            let (trc, tcc) = t.content();
            if trc == rc && column_content_weight(&tcc, ctx.n) == target {
                out.push(t);
            }
        }
    }
    Ok(out)
}

fn column_content_weight(cc: &[u32], n: u32) -> Vec<i32> {
    let mut w = vec![0i32; n as usize];
    for (j, &c) in cc.iter().enumerate().skip(1) {
        let u = (j - 1) / 2;
        w[u] += if j % 2 == 1 { c as i32 } else { -(c as i32) };
    }
    w
}

/// Re-solves for the `N`-standard expression of `product` by evaluation at
/// sampled nullcone points. Returns `None` if the evaluation matrix never
/// reaches full column rank.
pub fn resolve_by_sampling(
    product: &[OneLineTableau],
    ctx: &NullconeContext,
    seed: u64,
    min_points: usize,
) -> Result<Option<StandardCombination>> {
    let candidates = n_standard_candidates(product, ctx)?;
    let mut sampler = NullconeSampler::new(ctx, seed);
    let mut points = Vec::new();
    let mut want = min_points.max(candidates.len() + 2);
    for _ in 0..4 {
        while points.len() < want {
            points.push(sampler.next_point());
        }
        let a: linalg::Matrix = points
            .iter()
            .map(|pt| candidates.iter().map(|c| crate::straighten::evaluate_product(c.columns(), pt)).collect())
            .collect();
        let b: Vec<BigRational> =
            points.iter().map(|pt| crate::straighten::evaluate_product(product, pt)).collect();
        match linalg::solve(&a, &b, candidates.len())? {
            None => return Err(Error::invariant("product is not in the span of the N-standard monomials")),
            Some(sol) if sol.is_unique() => {
                return Ok(Some(StandardCombination::from_terms(sol.x.into_iter().zip(candidates), &ctx.cfg)?));
            }
            Some(_) => want *= 2,
        }
    }
    Ok(None)
}

/// `n_straighten` followed by the sampling cross-check: the result must
/// agree with an independent solve against the `N`-standard basis and
/// the difference from the product must vanish at `points` sampled points.
pub fn n_straighten_checked(
    product: &[OneLineTableau],
    ctx: &NullconeContext,
    seed: u64,
    points: usize,
) -> Result<StandardCombination> {
    let comb = n_straighten(product, ctx)?;
    let mut sampler = NullconeSampler::new(ctx, seed);
    for _ in 0..points {
        let pt = sampler.next_point();
        if comb.evaluate(&pt) != crate::straighten::evaluate_product(product, &pt) {
            return Err(Error::invariant("N-straightened expression differs from the product on the nullcone"));
        }
    }
    if let Some(other) = resolve_by_sampling(product, ctx, seed.wrapping_add(1), points)? {
        if other != comb {
            return Err(Error::invariant("N-straightening disagrees with the re-solved N-standard expression"));
        }
    }
    Ok(comb)
}

/// Leading term of `δ_A δ_B` in the nullcone ring for incomparable
/// `A, B ∈ D(N)`: `δ_{A∧B} δ_{A∨B}` with coefficient 1.
pub fn n_leading_term(a: &OneLineTableau, b: &OneLineTableau, ctx: &NullconeContext) -> Result<DoubleTableau> {
    let lat = ctx.lattice();
    if a.precedes(b) || b.precedes(a) {
        return Err(Error::domain(format!("{a} and {b} are comparable; the product is already standard")));
    }
    let expected = DoubleTableau::from_product(vec![lat.meet(a, b)?, lat.join(a, b)?])?;
    let comb = n_straighten(&[a.clone(), b.clone()], ctx)?;
    check_leading(&comb, &expected, &ctx.cfg)?;
    Ok(expected)
}

pub fn enumerate_n_standard(shape: &Shape, ctx: &NullconeContext) -> Result<Vec<DoubleTableau>> {
    enumerate_n_standard_with_guard(shape, ctx)
}

fn enumerate_n_standard_with_guard(shape: &Shape, ctx: &NullconeContext) -> Result<Vec<DoubleTableau>> {
    ctx.lattice().standard_tableaux_with_guard(shape, ctx.guard)
}

/// `dim ρ_k^D`: semistandard tableaux with entries `<= k`, checked
/// against the Weyl product formula.
pub fn dim_gl(shape: &Shape, k: u32) -> Result<u64> {
    dim_gl_with_guard(shape, k, Guard::default())
}

pub fn dim_gl_with_guard(shape: &Shape, k: u32, guard: Guard) -> Result<u64> {
    if shape.length() > k as usize {
        return Err(Error::domain(format!("shape {shape} has more than {k} rows")));
    }
    let count = enumerate_ssyt_with_guard(shape, k, None, guard)?.len() as u64;
    let weyl = weyl_gl(shape, k);
    if BigRational::from_integer(BigInt::from(count)) != weyl {
        return Err(Error::invariant(format!("GL_{k} dimension of {shape}: count {count}, Weyl {weyl}")));
    }
    Ok(count)
}

/// `Π_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_gl(shape: &Shape, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k as usize {
        for j in i + 1..k as usize {
            let num = shape.row(i) as i64 - shape.row(j) as i64 + (j - i) as i64;
            acc *= BigRational::new(BigInt::from(num), BigInt::from((j - i) as i64));
        }
    }
    acc
}

/// `dim σ_{2n}^D`: semistandard tableaux with entries `<= 2n` whose
/// columns dominate `[1,3,...,2n-1]`, checked against the Weyl formula.
pub fn dim_sp(shape: &Shape, n: u32) -> Result<u64> {
    dim_sp_with_guard(shape, n, Guard::default())
}

pub fn dim_sp_with_guard(shape: &Shape, n: u32, guard: Guard) -> Result<u64> {
    if shape.length() > n as usize {
        return Err(Error::domain(format!("shape {shape} has more than {n} rows")));
    }
    let floor = threshold_column(n);
    let count = enumerate_ssyt_with_guard(shape, 2 * n, Some(&floor), guard)?.len() as u64;
    let weyl = weyl_sp(shape, n);
    if BigRational::from_integer(BigInt::from(count)) != weyl {
        return Err(Error::invariant(format!("Sp_{} dimension of {shape}: count {count}, Weyl {weyl}", 2 * n)));
    }
    Ok(count)
}

/// `Π_{i<j} (l_i - l_j)(l_i + l_j) / ((ρ_i - ρ_j)(ρ_i + ρ_j)) · Π_i l_i / ρ_i`
/// with `ρ_i = n - i + 1` and `l = λ + ρ`.
pub fn weyl_sp(shape: &Shape, n: u32) -> BigRational {
    let rho: Vec<i64> = (0..n as i64).map(|i| n as i64 - i).collect();
    let l: Vec<i64> = (0..n as usize).map(|i| shape.row(i) as i64 + rho[i]).collect();
    let mut acc = BigRational::one();
    for i in 0..n as usize {
        for j in i + 1..n as usize {
            acc *= BigRational::new(
                BigInt::from((l[i] - l[j]) * (l[i] + l[j])),
                BigInt::from((rho[i] - rho[j]) * (rho[i] + rho[j])),
            );
        }
        acc *= BigRational::new(BigInt::from(l[i]), BigInt::from(rho[i]));
    }
    acc
}

/// Deterministic source of exact nullcone points.
pub struct NullconeSampler {
    k: u32,
    n: u32,
    rng: ChaCha8Rng,
}

impl NullconeSampler {
    pub fn new(ctx: &NullconeContext, seed: u64) -> Self {
        NullconeSampler { k: ctx.k, n: ctx.n, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Random rows inside a random Lagrangian: the standard Lagrangian
    /// `span{e_1, e_3, ...}` moved by symplectic transvections
    /// `x -> x + c<x,v>v`, then mixed by a random `k x n` matrix.
    pub fn next_point(&mut self) -> Vec<Vec<BigRational>> {
        let dim = 2 * self.n as usize;
        let mut basis: Vec<Vec<BigInt>> = (0..self.n as usize)
            .map(|u| (0..dim).map(|j| if j == 2 * u { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        for _ in 0..dim + 2 {
            let v: Vec<BigInt> = (0..dim).map(|_| BigInt::from(self.rng.gen_range(-2i64..=2))).collect();
            let c = BigInt::from([-2i64, -1, 1, 2][self.rng.gen_range(0..4)]);
            for x in basis.iter_mut() {
                let f = &c * symplectic_form(x, &v);
                for (xi, vi) in x.iter_mut().zip(&v) {
                    *xi += &f * vi;
                }
            }
        }
        (0..self.k)
            .map(|_| {
                let coeffs: Vec<BigInt> = (0..self.n).map(|_| BigInt::from(self.rng.gen_range(-3i64..=3))).collect();
                (0..dim)
                    .map(|j| {
                        let s: BigInt = coeffs.iter().zip(&basis).map(|(c, b)| c * &b[j]).sum();
                        BigRational::from_integer(s)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn sample_nullcone_point(ctx: &NullconeContext, seed: u64) -> Vec<Vec<BigRational>> {
    NullconeSampler::new(ctx, seed).next_point()
}

/// Rank certificate for the `N`-standard monomials of the given shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub candidates: usize,
    pub rank: usize,
    pub blocks: usize,
    pub points: usize,
    pub full_rank: bool,
}

/// Evaluates all `N`-standard monomials of the given shapes at sampled
/// nullcone points and computes the rank block by block. The blocks are
/// the multidegrees (row content and `Sp` torus weight); the ideal of the
/// nullcone is stable under both tori, so ranks add up across blocks.
pub fn basis_independence(
    shapes: &[Shape],
    ctx: &NullconeContext,
    num_points: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    let mut blocks: BTreeMap<(Vec<u32>, Vec<i32>), Vec<DoubleTableau>> = BTreeMap::new();
    let mut total = 0;
    for shape in shapes {
        for t in enumerate_n_standard_with_guard(shape, ctx)? {
            let (rc, cc) = content_with_ambient(t.columns(), ctx.k, 2 * ctx.n);
            blocks.entry((rc, column_content_weight(&cc, ctx.n))).or_default().push(t);
            total += 1;
        }
    }
    let largest = blocks.values().map(|b| b.len()).max().unwrap_or(0);
    let elements = ctx.lattice().enumerate_with_guard(ctx.guard)?;
    let mut sampler = NullconeSampler::new(ctx, seed);
    let mut minor_tables: Vec<HashMap<OneLineTableau, BigRational>> = Vec::new();
    let mut extend = |tables: &mut Vec<HashMap<OneLineTableau, BigRational>>, want: usize| {
        while tables.len() < want {
            let pt = sampler.next_point();
            tables.push(elements.iter().map(|e| (e.clone(), minor_value(e, &pt))).collect());
        }
    };
    extend(&mut minor_tables, num_points.max(largest));
    let mut rank = 0;
    for block in blocks.values() {
        let mut want = minor_tables.len();
        let mut block_rank = 0;
        for _ in 0..4 {
            extend(&mut minor_tables, want);
            let a: linalg::Matrix = minor_tables
                .iter()
                .map(|tab| block.iter().map(|t| t.columns().iter().map(|c| tab[c].clone()).product()).collect())
                .collect();
            block_rank = linalg::rank(&a);
            if block_rank == block.len() {
                break;
            }
            want *= 2;
        }
        rank += block_rank;
    }
    Ok(IndependenceReport {
        candidates: total,
        rank,
        blocks: blocks.len(),
        points: minor_tables.len(),
        full_rank: rank == total,
    })
}

/// `den · f = Σ_{i<j} r_ij g_ij` with integer polynomials `g_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCertificate {
    pub denominator: BigInt,
    pub multipliers: Vec<((u32, u32), SparsePolynomial)>,
}

impl IdealCertificate {
    pub fn verify(&self, f: &SparsePolynomial, ctx: &NullconeContext) -> Result<bool> {
        let mut acc = SparsePolynomial::zero(ctx.k, 2 * ctx.n);
        for ((i, j), g) in &self.multipliers {
            acc = acc.add(&basic_invariant(*i, *j, ctx)?.mul(g)?)?;
        }
        Ok(acc == f.scale(&self.denominator))
    }
}

/// Row content and `Sp` weight of a monomial over `M_{k,2n}`.
fn monomial_multidegree(mono: &Monomial, k: u32, n: u32) -> (Vec<u32>, Vec<i32>) {
    let m = 2 * n;
    let mut rows = vec![0u32; k as usize];
    let mut w = vec![0i32; n as usize];
    for (v, &e) in mono.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (i, j) = (v as u32 / m, v as u32 % m);
        rows[i as usize] += e as u32;
        w[(j / 2) as usize] += if j % 2 == 0 { e as i32 } else { -(e as i32) };
    }
    (rows, w)
}

/// Monomials with the given row content and `Sp` weight.
fn monomials_with_multidegree(rows: &[u32], weight: &[i32], n: u32) -> Vec<Monomial> {
    let m = 2 * n as usize;
    let mut partial: Vec<Vec<u16>> = vec![vec![0; rows.len() * m]];
    for (r, &count) in rows.iter().enumerate() {
        // nondecreasing column sequences of length `count`
        let mut multisets: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..count {
            multisets = multisets
                .into_iter()
                .flat_map(|s| (s.last().copied().unwrap_or(0)..m).map(move |j| [s.as_slice(), &[j]].concat()))
                .collect();
        }
        partial = partial
            .iter()
            .flat_map(|e| {
                multisets.iter().map(move |s| {
                    let mut e = e.clone();
                    for &j in s {
                        e[r * m + j] += 1;
                    }
                    e
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(Monomial::from_exponents)
        .filter(|mono| monomial_multidegree(mono, rows.len() as u32, n).1 == weight)
        .collect()
}

/// Exact certificate that `f` lies in the ideal generated by the `r_ij`,
/// found by linear algebra in each multidegree. `None` if no certificate exists.
pub fn ideal_certificate(f: &SparsePolynomial, ctx: &NullconeContext) -> Result<Option<IdealCertificate>> {
    let (k, n) = (ctx.k, ctx.n);
    if f.ambient() != (k, 2 * n) {
        return Err(Error::parameter("polynomial does not live on M_{k,2n}"));
    }
    let mut parts: BTreeMap<(Vec<u32>, Vec<i32>), SparsePolynomial> = BTreeMap::new();
    for (mono, c) in f.terms() {
        parts
            .entry(monomial_multidegree(mono, k, n))
            .or_insert_with(|| SparsePolynomial::zero(k, 2 * n))
            .add_term(mono.clone(), c.clone());
    }
    let mut invariants = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            invariants.push(((i, j), basic_invariant(i, j, ctx)?));
        }
    }
    let mut unknowns: Vec<((u32, u32), Monomial)> = Vec::new();
    let mut columns: Vec<SparsePolynomial> = Vec::new();
    for (rows, weight) in parts.keys() {
        for ((i, j), r) in &invariants {
            let mut rest = rows.clone();
            if rest[*i as usize - 1] == 0 || rest[*j as usize - 1] == 0 {
                continue;
            }
            rest[*i as usize - 1] -= 1;
            rest[*j as usize - 1] -= 1;
            for mono in monomials_with_multidegree(&rest, weight, n) {
                let mut g = SparsePolynomial::zero(k, 2 * n);
                g.add_term(mono.clone(), BigInt::one());
                columns.push(r.mul(&g)?);
                unknowns.push(((*i, *j), mono));
            }
        }
    }
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in columns.iter().chain([f]) {
        for (mono, _) in p.terms() {
            let next = index.len();
            index.entry(mono.clone()).or_insert(next);
        }
    }
    let mut a = vec![vec![BigRational::zero(); columns.len()]; index.len()];
    for (c, p) in columns.iter().enumerate() {
        for (mono, v) in p.terms() {
            a[index[mono]][c] = BigRational::from_integer(v.clone());
        }
    }
    let mut b = vec![BigRational::zero(); index.len()];
    for (mono, v) in f.terms() {
        b[index[mono]] = BigRational::from_integer(v.clone());
    }
    let Some(sol) = linalg::solve(&a, &b, columns.len())? else {
        return Ok(None);
    };
    let (den, nums) = common_denominator(&sol.x);
    let mut mult: BTreeMap<(u32, u32), SparsePolynomial> = BTreeMap::new();
    for ((pair, mono), c) in unknowns.into_iter().zip(nums) {
        mult.entry(pair).or_insert_with(|| SparsePolynomial::zero(k, 2 * n)).add_term(mono, c);
    }
    let cert = IdealCertificate { denominator: den, multipliers: mult.into_iter().collect() };
    if !cert.verify(f, ctx)? {
        return Err(Error::invariant("ideal certificate does not reproduce the polynomial"));
    }
    Ok(Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{parse_one_line, parse_product};

    fn ctx(k: u32, n: u32) -> NullconeContext {
        NullconeContext::new(k, n).unwrap()
    }

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }

    #[test]
    fn basic_invariant_examples() {
        let c = ctx(2, 1);
        let r = basic_invariant(1, 2, &c).unwrap();
        assert_eq!(r, minor(&parse_one_line("[12:12]", 2, 2).unwrap()));
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(r.evaluate(&id).unwrap(), q(1));
        assert!(matches!(basic_invariant(2, 1, &c), Err(Error::Parameter(_))));
        let c = ctx(3, 2);
        let lagrangian = vec![vec![q(1), q(0), q(2), q(0)], vec![q(0), q(0), q(5), q(0)], vec![q(3), q(0), q(0), q(0)]];
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(basic_invariant(i, j, &c).unwrap().evaluate(&lagrangian).unwrap().is_zero());
        }
    }

    #[test]
    fn symplectic_convention() {
        let e = |i: usize| -> Vec<i64> { (1..=4).map(|j| i64::from(j == i)).collect() };
        assert_eq!(symplectic_form(&e(1), &e(2)), 1);
        assert_eq!(symplectic_form(&e(2), &e(1)), -1);
        assert_eq!(symplectic_form(&e(1), &e(3)), 0);
        assert_eq!(symplectic_form(&e(3), &e(4)), 1);
    }

    #[test]
    fn samples_lie_in_the_nullcone() {
        for (k, n) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
            let c = ctx(k, n);
            let mut s = NullconeSampler::new(&c, 42);
            for _ in 0..10 {
                let pt = s.next_point();
                for i in 1..=k {
                    for j in i + 1..=k {
                        assert!(basic_invariant(i, j, &c).unwrap().evaluate(&pt).unwrap().is_zero());
                    }
                }
            }
        }
        let c = ctx(3, 2);
        assert_eq!(sample_nullcone_point(&c, 42), sample_nullcone_point(&c, 42));
        assert_ne!(sample_nullcone_point(&c, 42), sample_nullcone_point(&c, 43));
    }

    #[test]
    fn trivial_nullcone_points() {
        let c = ctx(2, 2);
        let zero = vec![vec![q(0); 4]; 2];
        let e1 = vec![vec![q(1), q(0), q(0), q(0)]; 2];
        let r = basic_invariant(1, 2, &c).unwrap();
        assert!(r.evaluate(&zero).unwrap().is_zero());
        assert!(r.evaluate(&e1).unwrap().is_zero());
    }

    #[test]
    fn omega_sum_examples() {
        let c = ctx(2, 2);
        let s = omega_sum_for(&[1, 2], &c).unwrap();
        assert_eq!(s.terms().iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>(), vec![
            (vec![1, 2], q(1)),
            (vec![3, 4], q(1))
        ]);
        assert_eq!(s.certificate().element.degree(), 0);
        let s = omega_sum_for(&[1, 2, 3], &c).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.certificate().element.terms().keys().next().unwrap(), &vec![3]);
        assert!(s.verify());
        assert!(matches!(omega_sum_for(&[1, 3], &c), Err(Error::Domain(_))));
        assert!(matches!(omega_sum_for(&[1], &c), Err(Error::Parameter(_))));
    }

    #[test]
    fn rational_omega_sum() {
        let c = ctx(1, 3);
        let s = omega_sum_for(&[3, 4, 5, 6], &c).unwrap();
        assert!(s.verify());
        assert_eq!(s.leading().unwrap(), &vec![3, 4, 5, 6]);
        assert_eq!(s.certificate().denominator, BigInt::from(2));
    }

    #[test]
    fn omega_sum_iff_not_above_threshold() {
        for n in 2..=3u32 {
            let max_p = if n == 2 { 4 } else { 3 };
            for p in 2..=max_p {
                for j in combinations(2 * n, p) {
                    let found = search_omega_sum(&j, n).unwrap();
                    assert_eq!(found.is_some(), !dominates_threshold(&j, n), "n={n} J={j:?}");
                    if let Some(s) = found {
                        assert!(s.verify());
                        assert_eq!(s.leading().unwrap(), &j);
                        assert!(s.terms()[&j].is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn theta_reproduces_r12() {
        for n in 1..=3 {
            let c = ctx(2, n);
            let s = omega_sum_for(&[1, 2], &c).unwrap();
            assert_eq!(s.terms().len(), n as usize);
            let theta = theta_element(&[1, 2], &s, &c).unwrap();
            assert_eq!(theta, basic_invariant(1, 2, &c).unwrap());
        }
        let c = ctx(2, 2);
        let s = omega_sum_for(&[1, 2, 3], &c).unwrap();
        assert!(matches!(theta_element(&[1, 2], &s, &c), Err(Error::Parameter(_))));
    }

    #[test]
    fn thetas_vanish_on_samples() {
        for (k, n) in [(2, 1), (2, 2), (3, 2)] {
            let c = ctx(k, n);
            let mut sampler = NullconeSampler::new(&c, 5);
            let pts: Vec<_> = (0..50).map(|_| sampler.next_point()).collect();
            for p in 2..=k.min(2 * n) {
                for j in combinations(2 * n, p).into_iter().filter(|j| !dominates_threshold(j, n)) {
                    let s = omega_sum_for(&j, &c).unwrap();
                    for rows in combinations(k, p) {
                        let theta = theta_element(&rows, &s, &c).unwrap();
                        for pt in &pts {
                            assert!(theta.evaluate(pt).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n_straighten_examples() {
        let c = ctx(2, 1);
        let prod = parse_product("[1:2],[2:1]", 2, 2).unwrap();
        let comb = n_straighten(&prod, &c).unwrap();
        assert_eq!(comb.terms.len(), 1);
        assert_eq!(comb.terms[0].tableau.to_string(), "[1:1],[2:2]");
        assert!(comb.terms[0].coef.is_one());
        let std = parse_product("[1:1],[2:2]", 2, 2).unwrap();
        let comb = n_straighten(&std, &c).unwrap();
        assert_eq!(comb.terms.len(), 1);
        assert_eq!(comb.terms[0].tableau, DoubleTableau::from_product(std).unwrap());
    }

    #[test]
    fn n_straighten_degree_two_sweep() {
        let c = ctx(2, 2);
        let lat = Lattice::D { n: 2, m: 4 };
        let all = lat.enumerate().unwrap();
        let nlat = c.lattice();
        let mut sampler = NullconeSampler::new(&c, 11);
        let pts: Vec<_> = (0..25).map(|_| sampler.next_point()).collect();
        for (ia, a) in all.iter().enumerate() {
            for b in all.iter().skip(ia) {
                let prod = vec![a.clone(), b.clone()];
                let comb = n_straighten(&prod, &c).unwrap();
                for t in &comb.terms {
                    assert!(nlat.is_standard(&t.tableau));
                }
                for pt in &pts {
                    assert_eq!(comb.evaluate(pt), crate::straighten::evaluate_product(&prod, pt));
                }
            }
        }
    }

    #[test]
    fn n_straighten_matches_resolve() {
        let c = ctx(2, 2);
        let prod = parse_product("[12:12],[1:3]", 2, 4).unwrap();
        let comb = n_straighten_checked(&prod, &c, 3, 25).unwrap();
        let other = resolve_by_sampling(&prod, &c, 9, 10).unwrap().unwrap();
        assert_eq!(comb, other);
    }

    #[test]
    fn exact_ideal_certificates() {
        for n in 1..=2 {
            let c = ctx(2, n);
            let lat = Lattice::D { n: 2, m: 2 * n };
            let all = lat.enumerate().unwrap();
            for (ia, a) in all.iter().enumerate() {
                for b in all.iter().skip(ia) {
                    let prod = vec![a.clone(), b.clone()];
                    let comb = n_straighten(&prod, &c).unwrap();
                    let (den, nums) = common_denominator(&comb.terms.iter().map(|t| t.coef.clone()).collect::<Vec<_>>());
                    let mut diff = crate::poly::product_of_minors(&prod, 2, 2 * n).unwrap().scale(&den).neg();
                    for (t, num) in comb.terms.iter().zip(nums) {
                        let p = crate::poly::product_of_minors(t.tableau.columns(), 2, 2 * n).unwrap();
                        diff = diff.add(&p.scale(&num)).unwrap();
                    }
                    let cert = ideal_certificate(&diff, &c).unwrap();
                    assert!(cert.is_some(), "{a} {b}");
                }
            }
        }
        let c = ctx(2, 2);
        let x = SparsePolynomial::var(2, 4, 1, 1).unwrap();
        assert!(ideal_certificate(&x, &c).unwrap().is_none());
    }

    #[test]
    fn n_leading_terms_d_n24() {
        let c = ctx(2, 2);
        let all = c.lattice().enumerate().unwrap();
        for a in &all {
            for b in &all {
                if a.precedes(b) || b.precedes(a) {
                    continue;
                }
                n_leading_term(a, b, &c).unwrap();
            }
        }
    }

    #[test]
    fn n_standard_counts() {
        let c = ctx(2, 1);
        assert_eq!(enumerate_n_standard(&Shape::new(vec![1]).unwrap(), &c).unwrap().len(), 4);
        assert_eq!(enumerate_n_standard(&Shape::new(vec![2]).unwrap(), &c).unwrap().len(), 9);
        let c = ctx(4, 3);
        let shape = Shape::new(vec![5, 4, 2]).unwrap();
        let tab = DoubleTableau::new(parse_product("[123:135],[124:136],[12:24],[13:35],[1:4]", 4, 6).unwrap()).unwrap();
        assert!(enumerate_n_standard(&shape, &c).unwrap().contains(&tab));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_gl(&Shape::new(vec![2]).unwrap(), 2).unwrap(), 3);
        for n in 1..=4 {
            assert_eq!(dim_sp(&Shape::new(vec![1]).unwrap(), n).unwrap(), 2 * n as u64);
        }
        assert_eq!(dim_sp(&Shape::new(vec![1, 1]).unwrap(), 2).unwrap(), 5);
        assert!(matches!(dim_sp(&Shape::new(vec![1, 1]).unwrap(), 1), Err(Error::Domain(_))));
        for n in 1..=3u32 {
            for size in 0..=5 {
                for shape in Shape::partitions(size, n as usize) {
                    dim_sp(&shape, n).unwrap();
                }
            }
        }
    }

    #[test]
    fn independence_examples() {
        let c = ctx(2, 1);
        let r = basis_independence(&[Shape::new(vec![1]).unwrap()], &c, 4, 1).unwrap();
        assert_eq!((r.candidates, r.rank), (4, 4));
        let c = ctx(2, 2);
        let shapes = Shape::partitions(2, 2);
        let r = basis_independence(&shapes, &c, 8, 1).unwrap();
        let want: u64 = shapes.iter().map(|s| dim_gl(s, 2).unwrap() * dim_sp(s, 2).unwrap()).sum();
        assert_eq!(r.rank as u64, want);
        assert!(r.full_rank);
        let r = basis_independence(&[], &c, 8, 1).unwrap();
        assert_eq!(r.rank, 0);
    }
}
