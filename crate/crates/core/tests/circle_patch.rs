//! The circle-ring patching example end to end.

use ralab_core::derivation::{exp_translation, Derivation};
use ralab_core::poly::{rat, Ideal, Poly};
use ralab_core::retract::{
    is_invertible, not_principal_up_to, verify_patch_decomposition, verify_retraction, Filtration,
    PatchData,
};
use ralab_core::ring::{PresentedRing, RingMap};
use ralab_core::subalgebra::SubAlgebra;

fn ring() -> PresentedRing {
    PresentedRing::parse(&["a", "b", "X", "Y"], &["a^2 + b^2 - 1"], &["a", "b"]).unwrap()
}

fn p(r: &PresentedRing, s: &str) -> Poly {
    r.poly(s).unwrap()
}

fn invariants(b: &PresentedRing) -> (Poly, Poly) {
    (p(b, "a*Y + (1 - b)*X"), p(b, "(1 + b)*Y + a*X"))
}

/// The ideal of `A` generated by elements of `B`, in the tag presentation.
fn ideal_of(alg: &SubAlgebra, gens: &[&str]) -> Ideal {
    let ring = alg.presented().unwrap();
    ring.ideal(gens.iter().map(|g| alg.express(&p(alg.ambient(), g)).unwrap()))
}

#[test]
fn derivation_and_retraction() {
    let b = ring();
    let (u, v) = invariants(&b);
    let d = Derivation::new(&b, vec![b.zero(), b.zero(), p(&b, "a"), p(&b, "b - 1")]).unwrap();
    assert!(d.apply(&u).unwrap().is_zero());
    assert!(d.apply(&v).unwrap().is_zero());
    assert!(d.check_lnd(4).unwrap().verified);
    let pi = RingMap::endomorphism(
        &b,
        vec![p(&b, "a"), p(&b, "b"), u.scale(&rat(1, 2)), v.scale(&rat(1, 2))],
    )
    .unwrap();
    let pi = verify_retraction(&pi).unwrap();
    assert!(b.equal(&pi.apply(&u).unwrap(), &u).unwrap());
    assert!(b.equal(&pi.apply(&v).unwrap(), &v).unwrap());
}

#[test]
fn patch_with_stated_localizers() {
    let b = ring();
    let (u, v) = invariants(&b);
    let pi = verify_retraction(
        &RingMap::endomorphism(
            &b,
            vec![p(&b, "a"), p(&b, "b"), u.scale(&rat(1, 2)), v.scale(&rat(1, 2))],
        )
        .unwrap(),
    )
    .unwrap();
    let alg = SubAlgebra::over_base(&b, vec![u, v]).unwrap();
    let data = PatchData {
        algebra: alg.clone(),
        a: Some(p(&b, "a")),
        x: p(&b, "1 + b"),
        y: p(&b, "1 - b"),
        f: p(&b, "a*Y - (1 + b)*X"),
        g: p(&b, "(1 - b)*Y - a*X"),
        tag: "T".into(),
        bound: 2,
    };
    let out = verify_patch_decomposition(&data, &pi).unwrap();
    assert!(out.report.passed());
    assert_eq!(out.lambda_exp, 1);
    assert_eq!(out.unit_exp, 1);
    assert_eq!(out.report.witness("lambda"), Some("(a) / (-b + 1)^1"));

    // with x = 1 + b the filtration gives (a, 1 - b); (a, 1 + b) needs x = 1 - b
    assert!(out.m_ideals[1].equals(&ideal_of(&alg, &["a", "1 - b"])).unwrap());
    assert!(!out.m_ideals[1].equals(&ideal_of(&alg, &["a", "1 + b"])).unwrap());
    let swapped = Filtration::new(&alg, &p(&b, "a"), &p(&b, "1 - b")).unwrap();
    assert!(swapped.m(1).unwrap().equals(&ideal_of(&alg, &["a", "1 + b"])).unwrap());

    let base = b.base_ring().unwrap();
    assert!(base
        .ideal(out.i_gens.clone())
        .equals(&base.ideal([p(&base, "a"), p(&base, "1 - b")]))
        .unwrap());
    assert!(out.invertibility.invertible);
}

#[test]
fn the_two_ideals_are_isomorphic() {
    let base = ring().base_ring().unwrap();
    let i = vec![p(&base, "a"), p(&base, "1 + b")];
    let j = vec![p(&base, "a"), p(&base, "1 - b")];
    let scaled_j = base.ideal(j.iter().map(|g| g * &p(&base, "a")));
    let scaled_i = base.ideal(i.iter().map(|g| g * &p(&base, "1 - b")));
    assert!(scaled_i.equals(&scaled_j).unwrap());
    let product = base.ideal(i.clone()).product(&base.ideal(j.clone()));
    assert!(product.equals(&base.ideal([p(&base, "a")])).unwrap());
    for gens in [&i, &j] {
        assert!(is_invertible(&base, gens).unwrap().invertible);
        assert!(not_principal_up_to(&base, gens, 6).unwrap().refuted);
    }
}

#[test]
fn translation_exponent() {
    let b = ring();
    let (u, v) = invariants(&b);
    let t = exp_translation(&b, &[u, v], &p(&b, "a*Y - (1 + b)*X"), &p(&b, "1 + b"), 1).unwrap();
    assert!(t.report.passed());
    assert_eq!(t.least_m, 1);
    assert!(t.map.is_some());
    assert_eq!(t.report.witness("denominator of Y"), Some("(b + 1)^1"));
}

#[test]
fn relabeled_patch_gives_the_other_ideal() {
    let b = ring();
    let (u, v) = invariants(&b);
    let pi = verify_retraction(
        &RingMap::endomorphism(
            &b,
            vec![p(&b, "a"), p(&b, "b"), u.scale(&rat(1, 2)), v.scale(&rat(1, 2))],
        )
        .unwrap(),
    )
    .unwrap();
    let alg = SubAlgebra::over_base(&b, vec![u, v]).unwrap();
    let data = PatchData {
        algebra: alg.clone(),
        a: Some(p(&b, "a")),
        x: p(&b, "1 - b"),
        y: p(&b, "1 + b"),
        f: p(&b, "(1 - b)*Y - a*X"),
        g: p(&b, "a*Y - (1 + b)*X"),
        tag: "T".into(),
        bound: 2,
    };
    let out = verify_patch_decomposition(&data, &pi).unwrap();
    assert!(out.report.passed());
    assert!(out.m_ideals[1].equals(&ideal_of(&alg, &["a", "1 + b"])).unwrap());
    assert_eq!(out.report.witness("I"), Some("(a, b + 1)R"));
}
