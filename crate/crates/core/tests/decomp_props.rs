mod common;

use common::{config, free_ring, poly_no_constant, projection_data, qmatrix};
use proptest::prelude::*;
use ralab_core::graded::{conjugated_projection, decompose};
use ralab_core::jet::{invert_coords, jet_compose, jet_decompose, Jet, JetMap};
use ralab_core::linalg::QMatrix;
use ralab_core::local::LocalAlgebra;
use ralab_core::poly::Poly;
use ralab_core::retract::verify_retraction;
use ralab_core::ring::PresentedRing;

fn jet_map(n: usize, order: u32) -> impl Strategy<Value = JetMap> {
    prop::collection::vec(poly_no_constant(n, order, 4), n).prop_map(move |g| JetMap::new(g, order).unwrap())
}

/// A jet coordinate change: invertible linear part plus higher terms.
fn coordinate_change(n: usize, order: u32) -> impl Strategy<Value = JetMap> {
    (common::int_matrix(n), prop::collection::vec(poly_no_constant(n, 3, 2), n))
        .prop_filter("invertible", |(m, _)| qmatrix(m).inverse().is_some())
        .prop_map(move |(m, extra)| {
            let q = qmatrix(&m);
            let images = (0..n)
                .map(|i| {
                    let mut g = Poly::zero(n);
                    for j in 0..n {
                        g += &Poly::var(n, j).scale(&q[(i, j)]);
                    }
                    let higher = Poly::from_terms(
                        n,
                        extra[i].terms().filter(|(m, _)| m.degree() >= 2).map(|(m, c)| (m.clone(), c.clone())),
                    );
                    &g + &higher
                })
                .collect();
            JetMap::new(images, order).unwrap()
        })
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn graded_round_trip((n, sigma, tails) in projection_data(1..=4, 3)) {
        let sigma = qmatrix(&sigma);
        prop_assume!(sigma.inverse().is_some());
        let ring = free_ring(n);
        let pi = verify_retraction(&conjugated_projection(&ring, &sigma, &tails).unwrap()).unwrap();
        let split = decompose(&pi).unwrap();
        let d = n - tails.len();
        prop_assert_eq!(split.rank, d);
        prop_assert!(split.report.passed());
        prop_assert_eq!(split.p.mul(&split.p), split.p.clone());
        let complement = QMatrix::identity(n).sub(&split.p);
        prop_assert_eq!(split.p.rank() + complement.rank(), n);
        if n <= 3 {
            prop_assert_eq!(pi.image().unwrap().trdeg().unwrap(), d);
        }
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn jet_round_trip(
        (n, tails, sigma) in projection_data(1..=3, 3)
            .prop_flat_map(|(n, _, tails)| (Just(n), Just(tails), coordinate_change(n, 5))),
    ) {
        let d = n - tails.len();
        let order = 5;
        // π₀ fixes the first d coordinates and sends the rest to the tails
        let vars: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        let mut images: Vec<Poly> = vars[..d].to_vec();
        for t in &tails {
            images.push(t.substitute(&vars[..d]));
        }
        let pi0 = JetMap::new(images, order).unwrap();
        let inverse = invert_coords(&sigma).unwrap();
        let pi = jet_compose(&jet_compose(&inverse, &pi0).unwrap(), &sigma).unwrap();
        prop_assert_eq!(jet_compose(&pi, &pi).unwrap(), pi.clone());
        let split = jet_decompose(&pi).unwrap();
        prop_assert_eq!(split.rank, d);
    }

    #[test]
    fn jet_inverse_both_sides(m in coordinate_change(3, 4)) {
        let inv = invert_coords(&m).unwrap();
        let id = JetMap::identity(3, 4);
        prop_assert_eq!(jet_compose(&m, &inv).unwrap(), id.clone());
        prop_assert_eq!(jet_compose(&inv, &m).unwrap(), id);
    }

    #[test]
    fn jet_composition_is_associative(a in jet_map(2, 5), b in jet_map(2, 5), c in jet_map(2, 5)) {
        let left = jet_compose(&jet_compose(&a, &b).unwrap(), &c).unwrap();
        let right = jet_compose(&a, &jet_compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn jet_product_is_associative(
        f in common::poly(3, 4, 4),
        g in common::poly(3, 4, 4),
        h in common::poly(3, 4, 4),
        order in 0u32..=5,
    ) {
        let (f, g, h) = (Jet::new(&f, order), Jet::new(&g, order), Jet::new(&h, order));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn graded_and_jet_ranks_agree((n, sigma, tails) in projection_data(1..=3, 2)) {
        let sigma = qmatrix(&sigma);
        prop_assume!(sigma.inverse().is_some());
        let ring = free_ring(n);
        let map = conjugated_projection(&ring, &sigma, &tails).unwrap();
        let graded = decompose(&verify_retraction(&map).unwrap()).unwrap();
        let jet = jet_decompose(&JetMap::new(map.images().to_vec(), 4).unwrap()).unwrap();
        prop_assert_eq!(graded.rank, jet.rank);
    }

    #[test]
    fn artinian_socle_and_annihilators(
        a in 1u32..=3,
        b in 1u32..=3,
        extra in poly_no_constant(2, 2, 2),
        f in common::poly(2, 2, 3),
    ) {
        // homogeneous relations plus pure powers: graded Artinian, local at 0
        let quad = extra.homogeneous_part(2);
        let rels = vec![Poly::var(2, 0).pow(a + 1), Poly::var(2, 1).pow(b + 1), quad];
        let ring = PresentedRing::new(vec!["x".into(), "y".into()], rels, vec![]).unwrap();
        let alg = LocalAlgebra::new(&ring).unwrap();
        prop_assert!(alg.vector_dim().unwrap() >= 1);
        prop_assert!(!alg.socle().unwrap().is_empty());
        let ann_f = alg.annihilator(&f).unwrap();
        for g in alg.artinian_basis().unwrap() {
            let ann_fg = ring.ideal(alg.annihilator(&(&f * &g)).unwrap());
            for h in &ann_f {
                prop_assert!(ann_fg.contains(h).unwrap());
            }
        }
    }
}
