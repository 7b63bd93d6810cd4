//! Weights and straightening of products of minors into standard monomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Guard, Lattice};
use crate::linalg;
use crate::poly::{minor, minor_value, Monomial, SparsePolynomial};
use crate::tableau::{content_of, DoubleTableau, OneLineTableau, Shape};

/// Weight base `N > 2(n+m)` for tableaux over `M_{n,m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConfig {
    n: u32,
    m: u32,
    base: BigInt,
}

impl WeightConfig {
    pub fn new(n: u32, m: u32, base: BigInt) -> Result<Self> {
        if base <= BigInt::from(2 * (n + m)) {
            return Err(Error::parameter(format!("weight base {base} must exceed 2(n+m) = {}", 2 * (n + m))));
        }
        Ok(WeightConfig { n, m, base })
    }

    /// The smallest legal base, `2(n+m) + 1`.
    pub fn default_for(n: u32, m: u32) -> Self {
        WeightConfig { n, m, base: BigInt::from(2 * (n + m) + 1) }
    }

    pub fn base(&self) -> &BigInt {
        &self.base
    }

    pub fn ambient(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    /// `Σ_r (m + r - q_r) N^{n-r}` for an element `q` of `Pl(n, m+n)`.
    pub fn plucker_weight(&self, q: &[u32]) -> BigInt {
        let mut w = BigInt::zero();
        for (r, &qr) in q.iter().enumerate() {
            w = w * &self.base + BigInt::from(self.m as i64 + r as i64 + 1 - qr as i64);
        }
        w
    }

    pub fn weight_of(&self, t: &OneLineTableau) -> Result<BigInt> {
        if t.ambient() != (self.n, self.m) {
            return Err(Error::parameter(format!("{t} does not live in M_{{{},{}}}", self.n, self.m)));
        }
        Ok(self.plucker_weight(&crate::lattice::xi(t)))
    }

    /// Sum of the column weights.
    pub fn weight(&self, t: &DoubleTableau) -> Result<BigInt> {
        t.columns().iter().try_fold(BigInt::zero(), |acc, c| Ok(acc + self.weight_of(c)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "ser_display")]
    pub coef: BigRational,
    pub tableau: DoubleTableau,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A linear combination of standard double tableaux, ordered by weight
/// descending and then by tableau.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardCombination {
    pub terms: Vec<Term>,
    #[serde(serialize_with = "ser_display")]
    pub weight_base: BigInt,
    #[serde(skip)]
    ambient: (u32, u32),
}

impl StandardCombination {
    /// Builds a combination from raw pairs, merging duplicates and dropping zeros.
    pub fn from_terms(
        pairs: impl IntoIterator<Item = (BigRational, DoubleTableau)>,
        cfg: &WeightConfig,
    ) -> Result<Self> {
        let mut acc: HashMap<DoubleTableau, BigRational> = HashMap::new();
        for (c, t) in pairs {
            *acc.entry(t).or_insert_with(BigRational::zero) += c;
        }
        let mut keyed = Vec::new();
        for (t, c) in acc {
            if !c.is_zero() {
                keyed.push((cfg.weight(&t)?, Term { coef: c, tableau: t }));
            }
        }
        keyed.sort_by(|(wa, a), (wb, b)| wb.cmp(wa).then_with(|| a.tableau.cmp(&b.tableau)));
        Ok(StandardCombination {
            terms: keyed.into_iter().map(|(_, t)| t).collect(),
            weight_base: cfg.base.clone(),
            ambient: cfg.ambient(),
        })
    }

    pub fn ambient(&self) -> (u32, u32) {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.coef.is_integer())
    }

    /// Expansion as a polynomial; requires integer coefficients.
    pub fn expand(&self) -> Result<SparsePolynomial> {
        let (n, m) = self.ambient;
        let mut cache = MinorCache::default();
        let mut acc = SparsePolynomial::zero(n, m);
        for t in &self.terms {
            if !t.coef.is_integer() {
                return Err(Error::domain("combination with rational coefficients has no integer expansion"));
            }
            acc = acc.add(&cache.product(t.tableau.columns(), n, m)?.scale(&t.coef.to_integer()))?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[Vec<BigRational>]) -> BigRational {
        self.terms.iter().map(|t| &t.coef * evaluate_product(t.tableau.columns(), point)).sum()
    }

    /// Terms of maximal weight.
    pub fn top_terms(&self, cfg: &WeightConfig) -> Result<Vec<&Term>> {
        let Some(first) = self.terms.first() else {
            return Ok(Vec::new());
        };
        let w = cfg.weight(&first.tableau)?;
        let mut out = Vec::new();
        for t in &self.terms {
            if cfg.weight(&t.tableau)? == w {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// Product of minor values at a point.
pub fn evaluate_product(cols: &[OneLineTableau], point: &[Vec<BigRational>]) -> BigRational {
    cols.iter().map(|c| minor_value(c, point)).product()
}

#[derive(Default)]
pub(crate) struct MinorCache {
    minors: HashMap<OneLineTableau, SparsePolynomial>,
}

impl MinorCache {
    pub(crate) fn product(&mut self, cols: &[OneLineTableau], n: u32, m: u32) -> Result<SparsePolynomial> {
        let mut p = SparsePolynomial::one(n, m);
        for c in cols {
            let d = self.minors.entry(c.clone()).or_insert_with(|| minor(c));
            p = p.mul(d)?;
        }
        Ok(p)
    }
}

/// Coefficients expressing `target` in the span of the candidate products,
/// asserting that the expression exists and is unique.
pub(crate) fn express_in_basis(
    target: &SparsePolynomial,
    candidates: &[DoubleTableau],
    cache: &mut MinorCache,
) -> Result<Vec<BigRational>> {
    let (n, m) = target.ambient();
    let polys = candidates.iter().map(|c| cache.product(c.columns(), n, m)).collect::<Result<Vec<_>>>()?;
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys.iter().chain([target]) {
        for (mono, _) in p.terms() {
            let next = index.len();
            index.entry(mono.clone()).or_insert(next);
        }
    }
    let mut a = vec![vec![BigRational::zero(); candidates.len()]; index.len()];
    for (col, p) in polys.iter().enumerate() {
        for (mono, c) in p.terms() {
            a[index[mono]][col] = BigRational::from_integer(c.clone());
        }
    }
    let mut b = vec![BigRational::zero(); index.len()];
    for (mono, c) in target.terms() {
        b[index[mono]] = BigRational::from_integer(c.clone());
    }
    let sol = linalg::solve(&a, &b, candidates.len())?
        .ok_or_else(|| Error::invariant("product is not in the span of the standard monomials of its content"))?;
    if !sol.is_unique() {
        return Err(Error::invariant("standard monomials of a fixed content are linearly dependent"));
    }
    Ok(sol.x)
}

fn require_members(product: &[OneLineTableau], n: u32, m: u32) -> Result<()> {
    let lat = Lattice::D { n, m };
    for f in product {
        if !lat.contains(f) {
            return Err(Error::parameter(format!("{f} is not a member of {lat}")));
        }
    }
    Ok(())
}

/// Expresses a product of minors over `M_{n,m}` as an integer combination
/// of standard monomials in `D(n,m)`.
pub fn straighten(product: &[OneLineTableau], cfg: &WeightConfig) -> Result<StandardCombination> {
    straighten_with_guard(product, cfg, Guard::default())
}

pub fn straighten_with_guard(product: &[OneLineTableau], cfg: &WeightConfig, guard: Guard) -> Result<StandardCombination> {
    let (n, m) = cfg.ambient();
    require_members(product, n, m)?;
    let lat = Lattice::D { n, m };
    let mut cache = MinorCache::default();
    let target = cache.product(product, n, m)?;
    let (rc, cc) = content_with_ambient(product, n, m);
    let candidates = lat.standard_tableaux_with_content(&rc, &cc, guard)?;
    let coefs = express_in_basis(&target, &candidates, &mut cache)?;
    if coefs.iter().any(|c| !c.is_integer()) {
        return Err(Error::invariant("straightening produced a non-integer coefficient"));
    }
    StandardCombination::from_terms(coefs.into_iter().zip(candidates), cfg)
}

pub(crate) fn content_with_ambient(product: &[OneLineTableau], n: u32, m: u32) -> (Vec<u32>, Vec<u32>) {
    if product.is_empty() {
        (vec![0; n as usize + 1], vec![0; m as usize + 1])
    } else {
        content_of(product)
    }
}

/// The leading monomial `δ_{A∧B} δ_{A∨B}` of `δ_A δ_B` for incomparable
/// `A, B` in `D(n,m)`, checked against the full straightening.
pub fn leading_term(a: &OneLineTableau, b: &OneLineTableau, cfg: &WeightConfig) -> Result<Term> {
    let (n, m) = cfg.ambient();
    let lat = Lattice::D { n, m };
    if a.precedes(b) || b.precedes(a) {
        return Err(Error::domain(format!("{a} and {b} are comparable; the product is already standard")));
    }
    let expected = DoubleTableau::from_product(vec![lat.meet(a, b)?, lat.join(a, b)?])?;
    let comb = straighten(&[a.clone(), b.clone()], cfg)?;
    check_leading(&comb, &expected, cfg)?;
    Ok(Term { coef: BigRational::one(), tableau: expected })
}

/// Asserts that `expected` is the unique weight-maximal term with coefficient 1.
pub fn check_leading(comb: &StandardCombination, expected: &DoubleTableau, cfg: &WeightConfig) -> Result<()> {
    let top = comb.top_terms(cfg)?;
    match top.as_slice() {
        [t] if &t.tableau == expected && t.coef.is_one() => Ok(()),
        _ => Err(Error::invariant(format!(
            "leading term is not {expected} with coefficient 1 (top terms: {})",
            top.iter().map(|t| format!("{}·{}", t.coef, t.tableau)).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Join of shapes in the dominance order: the shape whose column-length
/// partial sums are the pointwise minimum.
pub fn dominance_join(shapes: &[Shape]) -> Result<Shape> {
    let first = shapes.first().ok_or_else(|| Error::domain("dominance join of no shapes"))?;
    let size = first.size();
    if shapes.iter().any(|s| s.size() != size) {
        return Err(Error::parameter("dominance join needs shapes of equal size"));
    }
    let width = shapes.iter().map(|s| s.row(0)).max().unwrap_or(0) as usize;
    let partial = |s: &Shape| -> Vec<u32> {
        let cols = s.column_lengths();
        (0..width).scan(0, |acc, i| {
            *acc += cols.get(i).copied().unwrap_or(0);
            Some(*acc)
        }).collect()
    };
    let mut mins = partial(first);
    for s in &shapes[1..] {
        for (x, y) in mins.iter_mut().zip(partial(s)) {
            *x = (*x).min(y);
        }
    }
    let cols: Vec<u32> = mins.iter().scan(0, |prev, &s| {
        let d = s - *prev;
        *prev = s;
        Some(d)
    }).filter(|&d| d > 0).collect();
    Shape::from_column_lengths(&cols)
}

/// Shape-filtration level of a combination: the dominance-maximal shape.
/// With `product`, also asserts that every term's column lengths dominate
/// the product's.
pub fn shape_leading(comb: &StandardCombination, product: Option<&[OneLineTableau]>) -> Result<Shape> {
    if comb.terms.is_empty() {
        return Err(Error::domain("shape of an empty combination"));
    }
    if let Some(prod) = product {
        let mut lens: Vec<u32> = prod.iter().map(|f| f.len() as u32).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        for t in &comb.terms {
            let tl = t.tableau.column_lengths();
            let (mut a, mut b) = (0u32, 0u32);
            for k in 0..lens.len().max(tl.len()) {
                a += tl.get(k).copied().unwrap_or(0);
                b += lens.get(k).copied().unwrap_or(0);
                if a < b {
                    return Err(Error::invariant(format!("term {} drops below the product's shape filtration", t.tableau)));
                }
            }
        }
    }
    let shapes: Vec<Shape> = comb.terms.iter().map(|t| t.tableau.shape()).collect();
    dominance_join(&shapes)
}

/// Clears denominators: returns `(lcm of denominators, integer numerators)`.
pub fn common_denominator(values: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect();
    (den.abs(), nums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::binomial;
    use crate::poly::product_of_minors;
    use crate::tableau::{parse_one_line, parse_product};

    fn t(s: &str, n: u32, m: u32) -> OneLineTableau {
        parse_one_line(s, n, m).unwrap()
    }

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }

    #[test]
    fn weight_examples() {
        let cfg = WeightConfig::new(4, 6, BigInt::from(21)).unwrap();
        assert_eq!(cfg.weight_of(&t("[1:4]", 4, 6)).unwrap(), BigInt::from(28246));
        assert_eq!(cfg.plucker_weight(&[7, 8, 9, 10]), BigInt::zero());
        assert!(WeightConfig::new(4, 6, BigInt::from(20)).is_err());
        let cfg = WeightConfig::default_for(2, 2);
        let (a, b) = (t("[1:2]", 2, 2), t("[2:1]", 2, 2));
        let lat = Lattice::D { n: 2, m: 2 };
        let lhs = cfg.weight_of(&a).unwrap() + cfg.weight_of(&b).unwrap();
        let rhs = cfg.weight_of(&lat.meet(&a, &b).unwrap()).unwrap() + cfg.weight_of(&lat.join(&a, &b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_additive_for_equal_lengths() {
        let lat = Lattice::D { n: 3, m: 3 };
        let cfg = WeightConfig::default_for(3, 3);
        let all = lat.enumerate().unwrap();
        for a in &all {
            for b in all.iter().filter(|b| b.len() == a.len()) {
                let lhs = cfg.weight_of(a).unwrap() + cfg.weight_of(b).unwrap();
                let rhs =
                    cfg.weight_of(&lat.meet(a, b).unwrap()).unwrap() + cfg.weight_of(&lat.join(a, b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn weight_additive_mixed_lengths_small() {
        let lat = Lattice::D { n: 2, m: 2 };
        let cfg = WeightConfig::default_for(2, 2);
        let all = lat.enumerate().unwrap();
        for a in &all {
            for b in &all {
                let lhs = cfg.weight_of(a).unwrap() + cfg.weight_of(b).unwrap();
                let rhs =
                    cfg.weight_of(&lat.meet(a, b).unwrap()).unwrap() + cfg.weight_of(&lat.join(a, b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }

    #[test]
    fn straighten_basic_example() {
        let cfg = WeightConfig::default_for(2, 2);
        let prod = parse_product("[1:2],[2:1]", 2, 2).unwrap();
        let comb = straighten(&prod, &cfg).unwrap();
        let got: Vec<(BigRational, String)> = comb.terms.iter().map(|t| (t.coef.clone(), t.tableau.to_string())).collect();
        assert_eq!(got, vec![(q(1), "[1:1],[2:2]".to_string()), (q(-1), "[12:12]".to_string())]);
        assert_eq!(comb.expand().unwrap(), product_of_minors(&prod, 2, 2).unwrap());
        let json = serde_json::to_string(&comb).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"coef":"1","tableau":{"columns":[{"I":[1],"J":[1]},{"I":[2],"J":[2]}]}},{"coef":"-1","tableau":{"columns":[{"I":[1,2],"J":[1,2]}]}}],"weight_base":"9"}"#
        );
    }

    #[test]
    fn straighten_standard_is_identity() {
        let cfg = WeightConfig::default_for(2, 3);
        let prod = parse_product("[12:12],[1:1],[2:3]", 2, 3).unwrap();
        let comb = straighten(&prod, &cfg).unwrap();
        assert_eq!(comb.terms.len(), 1);
        assert!(comb.terms[0].coef.is_one());
        assert_eq!(comb.terms[0].tableau, DoubleTableau::from_product(prod).unwrap());
        let empty = straighten(&[], &cfg).unwrap();
        assert_eq!(empty.terms.len(), 1);
        assert!(empty.terms[0].tableau.is_empty());
    }

    #[test]
    fn straighten_three_factors() {
        let cfg = WeightConfig::default_for(2, 3);
        let prod = parse_product("[1:2],[2:1],[1:2]", 2, 3).unwrap();
        let comb = straighten(&prod, &cfg).unwrap();
        assert_eq!(comb.expand().unwrap(), product_of_minors(&prod, 2, 3).unwrap());
        let lat = Lattice::D { n: 2, m: 3 };
        assert!(comb.terms.iter().all(|t| lat.is_standard(&t.tableau)));
    }

    #[test]
    fn straighten_rejects_foreign_factor() {
        let cfg = WeightConfig::default_for(2, 2);
        assert!(matches!(straighten(&[t("[1:1]", 2, 3)], &cfg), Err(Error::Parameter(_))));
    }

    #[test]
    fn straighten_all_triples_in_d23() {
        let cfg = WeightConfig::default_for(2, 3);
        let lat = Lattice::D { n: 2, m: 3 };
        let all = lat.enumerate().unwrap();
        for (ia, a) in all.iter().enumerate() {
            for (ib, b) in all.iter().enumerate().skip(ia) {
                for c in all.iter().skip(ib) {
                    let prod = vec![a.clone(), b.clone(), c.clone()];
                    let comb = straighten(&prod, &cfg).unwrap();
                    assert_eq!(comb.expand().unwrap(), product_of_minors(&prod, 2, 3).unwrap());
                    shape_leading(&comb, Some(&prod)).unwrap();
                }
            }
        }
    }

    #[test]
    fn leading_terms_in_d23() {
        let cfg = WeightConfig::default_for(2, 3);
        let all = Lattice::D { n: 2, m: 3 }.enumerate().unwrap();
        let mut seen = 0;
        for a in &all {
            for b in &all {
                if a.precedes(b) || b.precedes(a) {
                    assert!(matches!(leading_term(a, b, &cfg), Err(Error::Domain(_))));
                    continue;
                }
                let lt = leading_term(a, b, &cfg).unwrap();
                assert!(lt.coef.is_one());
                seen += 1;
            }
        }
        assert!(seen > 0);
        let lt = leading_term(&t("[1:2]", 2, 2), &t("[2:1]", 2, 2), &WeightConfig::default_for(2, 2)).unwrap();
        assert_eq!(lt.tableau.to_string(), "[1:1],[2:2]");
    }

    #[test]
    fn shape_leading_examples() {
        let cfg = WeightConfig::default_for(2, 2);
        let prod = parse_product("[1:2],[2:1]", 2, 2).unwrap();
        let comb = straighten(&prod, &cfg).unwrap();
        assert_eq!(shape_leading(&comb, Some(&prod)).unwrap(), Shape::new(vec![2]).unwrap());
        let std = parse_product("[12:12],[1:2]", 2, 2).unwrap();
        let comb = straighten(&std, &cfg).unwrap();
        assert_eq!(shape_leading(&comb, Some(&std)).unwrap(), Shape::new(vec![2, 1]).unwrap());
        let empty = StandardCombination::from_terms(Vec::new(), &cfg).unwrap();
        assert!(matches!(shape_leading(&empty, None), Err(Error::Domain(_))));
    }

    #[test]
    fn dominance_join_examples() {
        let s = |v: Vec<u32>| Shape::new(v).unwrap();
        assert_eq!(dominance_join(&[s(vec![2]), s(vec![1, 1])]).unwrap(), s(vec![2]));
        // (3,1,1,1) and (2,2,2) are incomparable; their join is (3,2,1)
        assert_eq!(dominance_join(&[s(vec![3, 1, 1, 1]), s(vec![2, 2, 2])]).unwrap(), s(vec![3, 2, 1]));
    }

    #[test]
    fn cauchy_count_m22() {
        let lat = Lattice::D { n: 2, m: 2 };
        for d in 0..=4u32 {
            let count: usize = Shape::partitions(d, 2).iter().map(|s| lat.standard_tableaux(s).unwrap().len()).sum();
            assert_eq!(count as u64, binomial(4 + d - 1, d), "d = {d}");
        }
    }

    #[test]
    fn common_denominator_example() {
        let (d, nums) = common_denominator(&[BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())]);
        assert_eq!(d, BigInt::from(6));
        assert_eq!(nums, vec![BigInt::from(3), BigInt::from(2)]);
    }
}
