#![allow(dead_code)]

use proptest::prelude::*;
use ralab_core::poly::{int, Monomial, Poly};

/// A polynomial in `nvars` variables with at most `max_terms` terms of total
/// degree at most `max_deg` and small integer coefficients.
pub fn poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -3i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            nvars,
            terms.into_iter().filter_map(|(exps, c)| {
                let total: u32 = exps.iter().sum();
                (total <= max_deg).then(|| (Monomial::from_exponents(exps), int(c)))
            }),
        )
    })
}

/// Like [`poly`] but without constant term.
pub fn poly_no_constant(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly(nvars, max_deg, max_terms).prop_map(|p| {
        let n = p.nvars();
        Poly::from_terms(
            n,
            p.terms().filter(|(m, _)| !m.is_one()).map(|(m, c)| (m.clone(), c.clone())),
        )
    })
}

/// A square integer matrix with entries in `-2..=2`, as rows.
pub fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
}

/// Nonconstant polynomials, as subalgebra generators.
pub fn generator(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_no_constant(nvars, max_deg, max_terms.max(1)).prop_filter("nonconstant", |p| !p.is_zero())
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Data for `σ⁻¹ ∘ π₀ ∘ σ` on `n` variables: an integer matrix (possibly
/// singular, callers filter), the image rank `d`, and `n - d` tails in `d`
/// variables without constant term.
pub fn projection_data(
    n_range: std::ops::RangeInclusive<usize>,
    tail_deg: u32,
) -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Poly>)> {
    n_range.prop_flat_map(move |n| {
        (1..=n).prop_flat_map(move |d| {
            (
                Just(n),
                int_matrix(n),
                prop::collection::vec(poly_no_constant(d, tail_deg, 3), n - d),
            )
        })
    })
}

pub fn qmatrix(rows: &[Vec<i64>]) -> ralab_core::linalg::QMatrix {
    ralab_core::linalg::QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect())
}

pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn free_ring(n: usize) -> ralab_core::ring::PresentedRing {
    let names = var_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    ralab_core::ring::PresentedRing::free(&refs)
}
