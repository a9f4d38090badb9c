mod common;

use common::{config, generator, poly};
use proptest::prelude::*;
use ralab_core::derivation::{exp_from_lnd, in_span, invariants_upto, Derivation, InvariantSource};
use ralab_core::poly::Poly;
use ralab_core::ring::PresentedRing;
use ralab_core::subalgebra::{ClosureVerdict, SubAlgebra};

fn xyz() -> PresentedRing {
    PresentedRing::free(&["x", "y", "z"])
}

/// `D(x) = 0, D(y) = p(x), D(z) = q(x, y)`: always locally nilpotent.
fn triangular() -> impl Strategy<Value = (Poly, Poly)> {
    (poly(1, 2, 2), poly(2, 2, 3))
}

fn triangular_lnd(ring: &PresentedRing, p: &Poly, q: &Poly) -> Derivation {
    let x = ring.var(0);
    let y = ring.var(1);
    let images = vec![ring.zero(), p.substitute(&[x.clone()]), q.substitute(&[x, y])];
    Derivation::new(ring, images).unwrap()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn leibniz_rule(
        images in prop::collection::vec(poly(3, 2, 3), 3),
        f in poly(3, 4, 4),
        g in poly(3, 4, 4),
    ) {
        let ring = xyz();
        let d = Derivation::new(&ring, images).unwrap();
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &d.apply(&g).unwrap()) + &(&g * &d.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn exp_and_kernel_agree((p, q) in triangular(), d in 1u32..=3) {
        let ring = xyz();
        let lnd = triangular_lnd(&ring, &p, &q);
        let report = lnd.check_lnd(16).unwrap();
        prop_assert!(report.verified);
        let phi = exp_from_lnd(&lnd, 16).unwrap();
        prop_assert!(phi.check_exp_axioms().unwrap().passed());
        let ker = invariants_upto(InvariantSource::Derivation(&lnd), d).unwrap();
        let fixed = invariants_upto(InvariantSource::Exp(&phi), d).unwrap();
        prop_assert_eq!(&ker, &fixed);
        // the invariants form a subring
        for a in &ker {
            for b in &ker {
                let prod = a * b;
                if prod.total_degree().unwrap_or(0) <= d {
                    prop_assert!(in_span(&ker, &prod));
                }
            }
        }
    }

    #[test]
    fn member_round_trip(
        gens in prop::collection::vec(generator(3, 2, 3), 1..=3),
        expr in poly(3, 2, 4),
        f in poly(3, 3, 3),
    ) {
        let ring = xyz();
        let k = gens.len();
        let alg = SubAlgebra::new(&ring, gens).unwrap();
        let tags: Vec<Poly> = (0..3).map(|i| if i < k { Poly::var(k, i) } else { Poly::zero(k) }).collect();
        let e = expr.substitute(&tags);
        let inside = alg.evaluate(&e).unwrap();
        let found = alg.member(&inside).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(alg.evaluate(&found.unwrap()).unwrap(), inside);
        if let Some(e) = alg.member(&f).unwrap() {
            prop_assert_eq!(alg.evaluate(&e).unwrap(), f);
        }
    }

    #[test]
    fn contraction_lands_in_ideal(
        gens in prop::collection::vec(generator(3, 2, 2), 1..=2),
        ideal in prop::collection::vec(poly(3, 2, 3), 1..=2),
    ) {
        let ring = xyz();
        let alg = SubAlgebra::new(&ring, gens).unwrap();
        let contracted = alg.contract_ideal(&ideal).unwrap();
        let extended = ring.ideal(ideal);
        for g in contracted.gens() {
            prop_assert!(extended.contains(&alg.evaluate(g).unwrap()).unwrap());
        }
    }

    #[test]
    fn trdeg_grows_by_at_most_one(
        gens in prop::collection::vec(generator(3, 2, 2), 1..=2),
        extra in generator(3, 2, 2),
    ) {
        let ring = xyz();
        let before = SubAlgebra::new(&ring, gens.clone()).unwrap().trdeg().unwrap();
        let mut more = gens;
        more.push(extra);
        let after = SubAlgebra::new(&ring, more).unwrap().trdeg().unwrap();
        prop_assert!(before <= after && after <= before + 1);
    }

    /// Kernel of `D(x) = 0, D(z) = x, D(y) = z` is `Q[x, z^2 - 2xy]`.
    #[test]
    fn kernel_is_factorially_closed(
        a in poly(2, 2, 3),
        b in poly(2, 2, 3),
        m in poly(3, 1, 2),
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !m.is_zero());
        let ring = xyz();
        let x = ring.var(0);
        let w = ring.poly("z^2 - 2*x*y").unwrap();
        let kernel = SubAlgebra::new(&ring, vec![x.clone(), w.clone()]).unwrap();
        let a = a.substitute(&[x.clone(), w.clone()]);
        let b = b.substitute(&[x, w]);
        // a product of kernel elements, and a product that is usually outside
        for (p, q) in [(a.clone(), b.clone()), (&a * &m, b)] {
            let verdict = kernel.factorial_closure_witness_check(&p, &q).unwrap();
            let failed = matches!(verdict, ClosureVerdict::Fail { .. });
            prop_assert!(!failed, "closure fails for {:?}", verdict);
        }
    }
}
