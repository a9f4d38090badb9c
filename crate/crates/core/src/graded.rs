//! Retracts of standard-graded polynomial rings over a field: a linear change
//! of coordinates puts the image into the form `Q[Y_1, ..., Y_d]`.

use crate::linalg::QMatrix;
use crate::poly::{Monomial, Poly, Rational};
use crate::retract::Retraction;
use crate::ring::{PresentedRing, RingMap};
use crate::{Error, Report, Result};

/// Checks that `π` sends the irrelevant ideal into itself and that the image
/// is graded, the latter on the homogeneous components of each `π(x_i)`.
pub fn check_graded_preconditions(pi: &Retraction) -> Result<Report> {
    let ring = pi.ring();
    if !ring.is_free() {
        return Err(Error::InvalidArgument("graded decomposition needs a free polynomial ring".into()));
    }
    for (i, g) in pi.image_gens().iter().enumerate() {
        let c = g.constant_term();
        if !num_traits::Zero::is_zero(&c) {
            return Ok(Report::fail(format!("constant term of pi({})", ring.names()[i]), c));
        }
    }
    for (i, g) in pi.image_gens().iter().enumerate() {
        for (deg, h) in g.homogeneous_components() {
            if !ring.equal(&pi.apply(&h)?, &h)? {
                return Ok(Report::fail(
                    format!("degree {deg} component of pi({}) not fixed", ring.names()[i]),
                    ring.show(&h),
                ));
            }
        }
    }
    Ok(Report::pass().with("constant terms", "none").with("components", "fixed"))
}

/// Coefficient of `x_j` in the linear part of `π(x_i)`, at row `i`, column `j`.
pub fn linear_matrix(images: &[Poly], nvars: usize) -> QMatrix {
    let rows = images
        .iter()
        .map(|g| (0..nvars).map(|j| g.coeff(&Monomial::var(nvars, j, 1))).collect())
        .collect();
    QMatrix::from_rows(rows)
}

/// The idempotent induced on linear forms; acts on coefficient row vectors.
pub fn linear_idempotent(pi: &Retraction) -> Result<QMatrix> {
    let p = linear_matrix(pi.image_gens(), pi.ring().nvars());
    if p.mul(&p) != p {
        return Err(Error::Internal(format!("linear part is not idempotent: {p:?}")));
    }
    Ok(p)
}

/// Output of [`decompose`].
#[derive(Clone, Debug)]
pub struct GradedSplit {
    pub p: QMatrix,
    pub rank: usize,
    /// Rows are the coefficient vectors of `Y_1, ..., Y_n`.
    pub sigma: QMatrix,
    /// `Y_i` as linear forms in the original variables.
    pub y_forms: Vec<Poly>,
    /// `π(x_j)` rewritten in the variables `Y_1, ..., Y_n`.
    pub images_in_y: Vec<Poly>,
    pub report: Report,
}

impl GradedSplit {
    pub fn y_names(&self) -> Vec<String> {
        (1..=self.y_forms.len()).map(|i| format!("Y{i}")).collect()
    }
}

/// Rows of the matrix as linear forms.
fn forms(rows: &[Vec<Rational>], nvars: usize) -> Vec<Poly> {
    rows.iter()
        .map(|r| Poly::from_terms(nvars, r.iter().enumerate().map(|(j, c)| (Monomial::var(nvars, j, 1), c.clone()))))
        .collect()
}

pub fn decompose(pi: &Retraction) -> Result<GradedSplit> {
    let pre = check_graded_preconditions(pi)?;
    if !pre.passed() {
        return Err(Error::Precondition(format!("graded preconditions fail: {:?}", pre.witnesses)));
    }
    let ring = pi.ring();
    let n = ring.nvars();
    let p = linear_idempotent(pi)?;
    let image = p.row_space();
    let kernel = p.left_nullspace();
    let rank = image.len();
    let mut rows = image.clone();
    rows.extend(kernel);
    let sigma = QMatrix::from_rows(rows.clone());
    let y_forms = forms(&rows, n);
    let mut report = Report::pass().with("rank", rank);

    let inv = sigma
        .inverse()
        .ok_or_else(|| Error::DecompositionFailed("image and kernel bases do not span".into()))?;
    report.push("sigma invertible", "yes");
    for (i, y) in y_forms.iter().enumerate().take(rank) {
        let fixed = ring.equal(&pi.apply(y)?, y)?;
        report.check(fixed, format!("pi(Y{}) = Y{}", i + 1, i + 1), ring.show(y));
    }

    // x = sigma^{-1} y
    let x_in_y = forms(&inv.to_rows(), n);
    let y_ring = PresentedRing::new((1..=n).map(|i| format!("Y{i}")).collect(), vec![], vec![])?;
    let mut images_in_y = Vec::with_capacity(n);
    for (j, g) in pi.image_gens().iter().enumerate() {
        let h = g.substitute(&x_in_y);
        let stray = (rank..n).find(|&v| h.involves(v));
        report.check(
            stray.is_none(),
            format!("pi({}) in Q[Y1..Y{rank}]", ring.names()[j]),
            y_ring.show(&h),
        );
        images_in_y.push(h);
    }
    if !report.passed() {
        return Err(Error::DecompositionFailed(format!("certification failed: {:?}", report.witnesses)));
    }
    Ok(GradedSplit {
        p,
        rank,
        sigma,
        y_forms,
        images_in_y,
        report,
    })
}

/// Builds `π = σ^{-1} ∘ π₀ ∘ σ` on `Q[x_1..x_n]`, where `π₀` fixes `Y_1..Y_d`
/// and sends `Y_i` to `tails[i - d - 1](Y_1..Y_d)` for `i > d`, with
/// `Y = σ x`. Each tail is a polynomial in `d` variables without constant term.
pub fn conjugated_projection(ring: &PresentedRing, sigma: &QMatrix, tails: &[Poly]) -> Result<RingMap> {
    let n = ring.nvars();
    let d = n - tails.len();
    if sigma.nrows() != n || sigma.ncols() != n {
        return Err(Error::InvalidArgument("sigma must be n x n".into()));
    }
    let inv = sigma.inverse().ok_or(Error::NotACoordinateSystem)?;
    let y = forms(&sigma.to_rows(), n);
    let mut pi0_y: Vec<Poly> = y[..d].to_vec();
    for t in tails {
        if t.nvars() != d {
            return Err(Error::InvalidArgument("tails must use the first d coordinates".into()));
        }
        pi0_y.push(t.substitute(&y[..d]));
    }
    // π(x_j) = Σ_k inv[j][k] π(Y_k)
    let images = (0..n)
        .map(|j| {
            let mut acc = Poly::zero(n);
            for (k, img) in pi0_y.iter().enumerate() {
                acc += &img.scale(&inv[(j, k)]);
            }
            acc
        })
        .collect();
    RingMap::endomorphism(ring, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::retract::verify_retraction;

    fn retraction(ring: &PresentedRing, images: &[&str]) -> Retraction {
        let map = RingMap::endomorphism(ring, images.iter().map(|g| ring.poly(g).unwrap()).collect()).unwrap();
        verify_retraction(&map).unwrap()
    }

    #[test]
    fn preconditions() {
        let r = PresentedRing::free(&["X", "Y"]);
        assert!(check_graded_preconditions(&retraction(&r, &["X", "X^2"])).unwrap().passed());
        let rep = check_graded_preconditions(&retraction(&r, &["X", "X^2 + 1"])).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.witnesses[0].value, "1");
        assert!(check_graded_preconditions(&retraction(&r, &["X", "X + X^2"])).unwrap().passed());
    }

    #[test]
    fn linear_parts() {
        let r = PresentedRing::free(&["X", "Y"]);
        let p = linear_idempotent(&retraction(&r, &["X", "X^2"])).unwrap();
        assert_eq!(p, QMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]));
        let p = linear_idempotent(&retraction(&r, &["X/2 + Y/2", "X/2 + Y/2"])).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p[(0, 1)], rat(1, 2));
        assert_eq!(linear_idempotent(&retraction(&r, &["X", "Y"])).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn decomposition_examples() {
        let r = PresentedRing::free(&["X", "Y"]);
        let split = decompose(&retraction(&r, &["X", "X^2"])).unwrap();
        assert_eq!(split.rank, 1);
        let shown: Vec<String> = split.y_forms.iter().map(|y| r.show(y)).collect();
        assert_eq!(shown, ["X", "Y"]);
        let split = decompose(&retraction(&r, &["X", "Y"])).unwrap();
        assert_eq!(split.rank, 2);
        assert_eq!(split.sigma, QMatrix::identity(2));
    }

    #[test]
    fn conjugated_round_trip() {
        let r = PresentedRing::free(&["X", "Y", "Z"]);
        let sigma = QMatrix::from_rows(vec![
            vec![int(1), int(2), int(0)],
            vec![int(0), int(1), int(1)],
            vec![int(1), int(0), int(3)],
        ]);
        let tail = Poly::parse("Y1^2*Y2 - 3*Y2 + Y1^3", &["Y1", "Y2"]).unwrap();
        let map = conjugated_projection(&r, &sigma, &[tail]).unwrap();
        let pi = verify_retraction(&map).unwrap();
        let split = decompose(&pi).unwrap();
        assert_eq!(split.rank, 2);
    }
}
