mod common;

use common::{config, free_ring, poly, projection_data, qmatrix};
use proptest::prelude::*;
use ralab_core::graded::{conjugated_projection, decompose};
use ralab_core::poly::Poly;
use ralab_core::retract::{is_invertible_with, mu_graded, verify_retraction, Filtration};
use ralab_core::ring::PresentedRing;
use ralab_core::subalgebra::SubAlgebra;

fn circle_base() -> PresentedRing {
    PresentedRing::parse(&["a", "b"], &["a^2 + b^2 - 1"], &[]).unwrap()
}

proptest! {
    #![proptest_config(config(25))]

    #[test]
    fn retraction_fixes_its_image(
        (n, sigma, tails) in projection_data(3..=3, 2),
        fs in prop::collection::vec(poly(3, 4, 4), 4),
    ) {
        let sigma = qmatrix(&sigma);
        prop_assume!(sigma.inverse().is_some());
        let ring = free_ring(n);
        let pi = verify_retraction(&conjugated_projection(&ring, &sigma, &tails).unwrap()).unwrap();
        let image = pi.image().unwrap();
        for f in &fs {
            let once = pi.apply(f).unwrap();
            prop_assert_eq!(pi.apply(&once).unwrap(), once.clone());
            prop_assert!(once.is_constant() || image.contains(&once).unwrap());
        }
    }

    /// For `p = ker π + hB`, the contraction `p ∩ A` is `π(h)A`.
    #[test]
    fn contraction_of_prime_like_ideals(
        (n, sigma, tails) in projection_data(3..=3, 2),
        h in poly(3, 2, 3),
    ) {
        let sigma = qmatrix(&sigma);
        prop_assume!(sigma.inverse().is_some() && !h.is_zero());
        let ring = free_ring(n);
        let pi = verify_retraction(&conjugated_projection(&ring, &sigma, &tails).unwrap()).unwrap();
        let image = pi.image().unwrap();
        prop_assume!(image.ngens() > 0);
        let mut gens = pi.kernel_gens();
        gens.push(h.clone());
        let contracted = image.contract_ideal(&gens).unwrap();
        let tags = image.presented().unwrap();
        let expected = tags.ideal([image.express(&pi.apply(&h).unwrap()).unwrap()]);
        prop_assert!(tags.ideal(contracted.gens().to_vec()).equals(&expected).unwrap());
    }

    /// A homogeneous ideal of a graded retract needs as many generators as
    /// its extension.
    #[test]
    fn generator_count_survives_extension(
        (n, sigma, _) in projection_data(3..=3, 1),
        raw in prop::collection::vec(poly(3, 3, 3), 1..=3),
        degrees in prop::collection::vec(1u32..=3, 3),
    ) {
        let sigma = qmatrix(&sigma);
        prop_assume!(sigma.inverse().is_some());
        let ring = free_ring(n);
        let pi = verify_retraction(&conjugated_projection(&ring, &sigma, &[Poly::zero(2)]).unwrap()).unwrap();
        let split = decompose(&pi).unwrap();
        let d = split.rank;
        let a = SubAlgebra::new(&ring, split.y_forms[..d].to_vec()).unwrap();
        let tags = a.presented().unwrap();
        let j: Vec<Poly> = raw
            .iter()
            .zip(&degrees)
            .map(|(g, &k)| {
                let vars: Vec<Poly> = (0..3).map(|i| if i < d { Poly::var(d, i) } else { Poly::zero(d) }).collect();
                g.substitute(&vars).homogeneous_part(k)
            })
            .filter(|g| !g.is_zero())
            .collect();
        prop_assume!(!j.is_empty());
        let extended: Vec<Poly> = j.iter().map(|g| a.evaluate(g).unwrap()).collect();
        prop_assert_eq!(mu_graded(&tags, &j).unwrap(), mu_graded(&ring, &extended).unwrap());
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn invertibility_does_not_depend_on_witness(
        which in 0usize..3,
        r in poly(2, 1, 2),
        s in poly(2, 1, 2),
    ) {
        let base = circle_base();
        let gens: Vec<Poly> = [["a", "1 + b"], ["a", "1 - b"], ["a", "a"]][which]
            .iter()
            .map(|g| base.poly(g).unwrap())
            .collect();
        let w = &(&r * &gens[0]) + &(&s * &gens[1]);
        prop_assume!(!base.is_zero(&w).unwrap());
        let reference = is_invertible_with(&base, &gens, &gens[0]).unwrap().invertible;
        prop_assert_eq!(is_invertible_with(&base, &gens, &w).unwrap().invertible, reference);
    }
}

#[test]
fn filtration_is_multiplicative() {
    let b = PresentedRing::parse(&["a", "b", "X", "Y"], &["a^2 + b^2 - 1"], &["a", "b"]).unwrap();
    let u = b.poly("a*Y + (1 - b)*X").unwrap();
    let v = b.poly("(1 + b)*Y + a*X").unwrap();
    let alg = SubAlgebra::over_base(&b, vec![u, v]).unwrap();
    let a = b.poly("a").unwrap();
    let filt = Filtration::new(&alg, &a, &b.poly("1 + b").unwrap()).unwrap();
    let m: Vec<_> = (0..=3).map(|n| filt.m(n).unwrap()).collect();
    assert!(m[0].is_unit().unwrap());
    for (n, mn) in m.iter().enumerate() {
        assert!(mn.contains(&filt.a().pow(n as u32)).unwrap());
    }
    for i in 0..=3 {
        for j in 0..=3 - i {
            assert!(m[i + j].contains_ideal(&m[i].product(&m[j])).unwrap(), "M{i} M{j}");
        }
    }
}
