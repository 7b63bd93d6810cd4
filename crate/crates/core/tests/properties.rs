use proptest::prelude::*;

use nullcone::gt::{glue, pattern_from_tableau, reduce_mod_top, split_glued, tableau_from_pattern};
use nullcone::lattice::{compare, enumerate_ssyt, split, xi, xi_inverse, Lattice, Relation};
use nullcone::nullcone::{n_straighten, NullconeContext, NullconeSampler};
use nullcone::poly::product_of_minors;
use nullcone::straighten::{evaluate_product, straighten, WeightConfig};
use nullcone::tableau::{DoubleTableau, SemistandardTableau, Shape};

fn d34() -> Vec<nullcone::tableau::OneLineTableau> {
    Lattice::D { n: 3, m: 4 }.enumerate().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straighten_is_sound_in_d34(i in 0usize..100, j in 0usize..100, l in 0usize..100) {
        let all = d34();
        let prod = vec![all[i % all.len()].clone(), all[j % all.len()].clone(), all[l % all.len()].clone()];
        let cfg = WeightConfig::default_for(3, 4);
        let comb = straighten(&prod, &cfg).unwrap();
        let lat = Lattice::D { n: 3, m: 4 };
        prop_assert!(comb.terms.iter().all(|t| lat.is_standard(&t.tableau)));
        prop_assert!(comb.is_integral());
        prop_assert_eq!(comb.expand().unwrap(), product_of_minors(&prod, 3, 4).unwrap());
    }

    #[test]
    fn xi_is_an_order_isomorphism(i in 0usize..100, j in 0usize..100) {
        let all = d34();
        let (a, b) = (&all[i % all.len()], &all[j % all.len()]);
        prop_assert_eq!(&xi_inverse(&xi(a), 3, 4).unwrap(), a);
        let entrywise = xi(a).iter().zip(xi(b)).all(|(x, y)| *x <= y);
        prop_assert_eq!(a.precedes(b), entrywise);
        let lat = Lattice::D { n: 3, m: 4 };
        let meet = lat.meet(a, b).unwrap();
        prop_assert!(matches!(compare(&meet, a).unwrap(), Relation::Precedes | Relation::Equal));
        prop_assert!(matches!(compare(&meet, b).unwrap(), Relation::Precedes | Relation::Equal));
    }

    #[test]
    fn patterns_invert(idx in 0usize..1000) {
        let all: Vec<SemistandardTableau> = (0..=4)
            .flat_map(|s| Shape::partitions(s, 4))
            .flat_map(|shape| enumerate_ssyt(&shape, 4, None))
            .collect();
        let t = &all[idx % all.len()];
        let p = pattern_from_tableau(t, 4).unwrap();
        prop_assert_eq!(&tableau_from_pattern(&p).unwrap(), t);
    }

    /// For a standard monomial T in D(n,m), the pattern of ξ(T) reduced to
    /// Γ_{n,m} is the glue of the patterns of T⁻ and T⁺.
    #[test]
    fn reduce_commutes_with_glue(idx in 0usize..1000, size in 1u32..=4) {
        let (n, m) = (2u32, 3u32);
        let lat = Lattice::D { n, m };
        let all: Vec<DoubleTableau> = Shape::partitions(size, 2)
            .iter()
            .flat_map(|s| lat.standard_tableaux(s).unwrap())
            .collect();
        let t = &all[idx % all.len()];
        let cols: Vec<Vec<u32>> = t.columns().iter().map(xi).collect();
        let pl = SemistandardTableau::from_columns(&cols, n + m).unwrap();
        let reduced = reduce_mod_top(&pattern_from_tableau(&pl, n + m).unwrap(), n, m).unwrap();
        let (minus, plus) = split(t).unwrap();
        let glued = glue(&pattern_from_tableau(&minus, n).unwrap(), &pattern_from_tableau(&plus, m).unwrap()).unwrap();
        prop_assert_eq!(&reduced, &glued);
        let (pm, pp) = split_glued(&glued).unwrap();
        prop_assert_eq!(tableau_from_pattern(&pm).unwrap(), minus);
        prop_assert_eq!(tableau_from_pattern(&pp).unwrap(), plus);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn n_straighten_holds_on_the_nullcone(i in 0usize..100, j in 0usize..100, l in 0usize..100, seed in 0u64..1000) {
        let ctx = NullconeContext::new(2, 2).unwrap();
        let all = Lattice::D { n: 2, m: 4 }.enumerate().unwrap();
        let prod = vec![all[i % all.len()].clone(), all[j % all.len()].clone(), all[l % all.len()].clone()];
        let comb = n_straighten(&prod, &ctx).unwrap();
        let lat = ctx.lattice();
        prop_assert!(comb.terms.iter().all(|t| lat.is_standard(&t.tableau)));
        let mut sampler = NullconeSampler::new(&ctx, seed);
        for _ in 0..5 {
            let pt = sampler.next_point();
            prop_assert_eq!(comb.evaluate(&pt), evaluate_product(&prod, &pt));
        }
    }
}
