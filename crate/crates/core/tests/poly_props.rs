mod common;

use common::{config, poly};
use proptest::prelude::*;
use ralab_core::poly::{Ideal, Monomial, Poly};

fn ideal_strategy() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly(3, 2, 3), 1..=3)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn normal_form_is_idempotent(gens in ideal_strategy(), f in poly(3, 3, 5)) {
        let i = Ideal::new(3, gens);
        let r = i.nf(&f).unwrap();
        prop_assert_eq!(i.nf(&r).unwrap(), r.clone());
        prop_assert!(i.contains(&(&f - &r)).unwrap());
    }

    #[test]
    fn groebner_ignores_generator_order(gens in ideal_strategy(), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed % 2 == 1 {
            shuffled.reverse();
        }
        let a = Ideal::new(3, gens).reduced_gens().unwrap();
        let b = Ideal::new(3, shuffled).reduced_gens().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn saturation_contains_ideal_and_matches_iterated_quotients(
        gens in ideal_strategy(),
        x in poly(3, 1, 2),
    ) {
        prop_assume!(!x.is_zero());
        let i = Ideal::new(3, gens);
        let (sat, k) = i.saturate(&x).unwrap();
        prop_assert!(sat.contains_ideal(&i).unwrap());
        let mut q = i.clone();
        for _ in 0..k {
            q = q.quotient(&x).unwrap();
        }
        prop_assert!(q.equals(&sat).unwrap());
        prop_assert!(sat.quotient(&x).unwrap().equals(&sat).unwrap());
    }

    #[test]
    fn elimination_drops_variables(gens in ideal_strategy(), v in 0usize..3) {
        let i = Ideal::new(3, gens);
        let e = i.eliminate(&[v]).unwrap();
        for g in e.gens() {
            prop_assert!(!g.involves(v));
            prop_assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn monomial_dimension_matches_brute_force(
        n in 1usize..=5,
        raw in prop::collection::vec(prop::collection::vec(0u32..=2, 5), 0..=4),
    ) {
        let mons: Vec<Monomial> = raw
            .iter()
            .map(|e| Monomial::from_exponents(e[..n].to_vec()))
            .collect();
        let gens: Vec<Poly> = mons.iter().map(|m| Poly::term(m.clone(), ralab_core::poly::int(1))).collect();
        let dim = Ideal::new(n, gens).krull_dim().unwrap();
        // an independent set avoids the support of every generator
        let brute = if mons.iter().any(|m| m.is_one()) {
            None
        } else {
            (0u32..1 << n)
                .filter(|set| mons.iter().all(|m| m.support().any(|v| set & (1 << v) == 0)))
                .map(|set| set.count_ones() as usize)
                .max()
        };
        prop_assert_eq!(dim, brute);
    }
}
