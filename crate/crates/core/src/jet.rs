//! Truncated power series and retractions of `Q[[x_1, ..., x_n]]` modulo
//! `m^{N+1}`.

use std::ops::Mul;

use crate::graded::linear_matrix;
use crate::linalg::QMatrix;
use crate::poly::{Monomial, Poly, Rational};
use crate::{Error, Report, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: u32 = 6;

/// A power series modulo terms of total degree above `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    poly: Poly,
    order: u32,
}

impl Jet {
    pub fn new(poly: &Poly, order: u32) -> Jet {
        Jet {
            poly: poly.truncate(order),
            order,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let order = self.order.min(rhs.order);
        Jet {
            poly: mul_truncated(&self.poly, &rhs.poly, order),
            order,
        }
    }
}

impl std::ops::Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let order = self.order.min(rhs.order);
        Jet::new(&(&self.poly + &rhs.poly), order)
    }
}

/// Product with every term of degree above `order` dropped.
pub fn mul_truncated(a: &Poly, b: &Poly, order: u32) -> Poly {
    let mut out = Poly::zero(a.nvars());
    for (ma, ca) in a.terms() {
        let da = ma.degree();
        if da > order {
            continue;
        }
        for (mb, cb) in b.terms() {
            if da + mb.degree() <= order {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
    }
    out
}

/// `f(images)` modulo degree `order + 1`. The images have no constant term.
pub fn substitute_truncated(f: &Poly, images: &[Poly], order: u32) -> Poly {
    let target = images.first().map_or(0, Poly::nvars);
    let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; images.len()];
    let mut out = Poly::zero(target);
    for (m, c) in f.terms() {
        if m.degree() > order {
            continue;
        }
        let mut t = Poly::constant(target, c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[v].len() <= e as usize {
                let next = mul_truncated(powers[v].last().unwrap(), &images[v], order);
                powers[v].push(next);
            }
            t = mul_truncated(&t, &powers[v][e as usize], order);
        }
        out += &t;
    }
    out
}

/// An endomorphism of `Q[[x]] / m^{N+1}` sending the maximal ideal into itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMap {
    images: Vec<Poly>,
    order: u32,
}

impl JetMap {
    pub fn new(images: Vec<Poly>, order: u32) -> Result<JetMap> {
        let n = images.len();
        for (i, g) in images.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::InvalidArgument("one image per variable is required".into()));
            }
            if !num_traits::Zero::is_zero(&g.constant_term()) {
                return Err(Error::InvalidArgument(format!("image {i} has a constant term")));
            }
        }
        Ok(JetMap {
            images: images.iter().map(|g| g.truncate(order)).collect(),
            order,
        })
    }

    pub fn identity(nvars: usize, order: u32) -> JetMap {
        JetMap {
            images: (0..nvars).map(|i| Poly::var(nvars, i)).collect(),
            order,
        }
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    /// `f` with each `x_i` replaced by its image.
    pub fn apply(&self, f: &Poly) -> Poly {
        substitute_truncated(f, &self.images, self.order)
    }

    pub fn linear_part(&self) -> QMatrix {
        linear_matrix(&self.images, self.nvars())
    }
}

/// Substitutes the images of `inner` into those of `outer`: as ring
/// endomorphisms this is `inner ∘ outer`, i.e. first `outer` then `inner`.
pub fn jet_compose(outer: &JetMap, inner: &JetMap) -> Result<JetMap> {
    if outer.order != inner.order || outer.nvars() != inner.nvars() {
        return Err(Error::InvalidArgument("jet maps differ in order or variable count".into()));
    }
    Ok(JetMap {
        images: outer.images.iter().map(|g| inner.apply(g)).collect(),
        order: outer.order,
    })
}

/// The inverse coordinate change: `jet_compose(m, inverse)` is the identity.
pub fn invert_coords(m: &JetMap) -> Result<JetMap> {
    let n = m.nvars();
    let lin = m.linear_part();
    let inv = lin.inverse().ok_or(Error::NotACoordinateSystem)?;
    // m_i = Σ_j L_ij x_j + h_i, so g = L^{-1}(x - h(g)) fixes one more degree per pass
    let higher: Vec<Poly> = m
        .images
        .iter()
        .map(|g| {
            Poly::from_terms(n, g.terms().filter(|(mono, _)| mono.degree() >= 2).map(|(a, b)| (a.clone(), b.clone())))
        })
        .collect();
    let combine = |targets: &[Poly]| -> Vec<Poly> {
        (0..n)
            .map(|i| {
                let mut acc = Poly::zero(n);
                for (j, t) in targets.iter().enumerate() {
                    acc += &t.scale(&inv[(i, j)]);
                }
                acc
            })
            .collect()
    };
    let vars: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    let mut g = combine(&vars);
    for _ in 1..m.order {
        let targets: Vec<Poly> = (0..n)
            .map(|j| &vars[j] - &substitute_truncated(&higher[j], &g, m.order))
            .collect();
        g = combine(&targets);
    }
    let g = JetMap { images: g, order: m.order };
    if jet_compose(m, &g)? != JetMap::identity(n, m.order) {
        return Err(Error::Internal("coordinate inversion did not converge".into()));
    }
    Ok(g)
}

/// Output of [`jet_decompose`].
#[derive(Clone, Debug)]
pub struct JetSplit {
    pub p: QMatrix,
    pub rank: usize,
    /// Linear forms whose span is the image (first `rank`) and kernel of `p`.
    pub z_forms: Vec<Poly>,
    /// The new coordinates `Y_i` as series in `x`.
    pub y: Vec<Poly>,
    /// `π(x_j)` as a series in the `Y` coordinates.
    pub images_in_y: Vec<Poly>,
    pub report: Report,
}

/// Straightens an idempotent `π` of `Q[[x]]` modulo `m^{N+1}` into
/// coordinates where its image is the series ring in `Y_1..Y_d`.
pub fn jet_decompose(pi: &JetMap) -> Result<JetSplit> {
    let n = pi.nvars();
    let order = pi.order();
    let twice = jet_compose(pi, pi)?;
    if twice != *pi {
        let i = (0..n).find(|&i| twice.images[i] != pi.images[i]).unwrap();
        return Err(Error::NotIdempotent {
            var: format!("x{i}"),
            once: pi.images[i].display_default(),
            twice: twice.images[i].display_default(),
        });
    }
    let p = pi.linear_part();
    let image = p.row_space();
    let kernel = p.left_nullspace();
    let rank = image.len();
    let to_form = |row: &Vec<Rational>| {
        Poly::from_terms(n, row.iter().enumerate().map(|(j, c)| (Monomial::var(n, j, 1), c.clone())))
    };
    let z_forms: Vec<Poly> = image.iter().chain(kernel.iter()).map(to_form).collect();
    let y: Vec<Poly> = z_forms
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let pz = pi.apply(z);
            if i < rank {
                pz
            } else {
                z - &pz
            }
        })
        .collect();

    let mut report = Report::pass().with("rank", rank);
    let ymap = JetMap::new(y.clone(), order).map_err(|_| Error::NotACoordinateSystem)?;
    let back = invert_coords(&ymap)?;
    let both = jet_compose(&back, &ymap)? == JetMap::identity(n, order);
    report.check(both, "Y is a coordinate system", both);
    for (i, yi) in y.iter().enumerate() {
        let image = pi.apply(yi);
        let expected = if i < rank { yi.clone() } else { Poly::zero(n) };
        report.check(image == expected, format!("pi(Y{})", i + 1), if i < rank { "Y" } else { "0" });
    }
    // π(x_j)(x(Y)), with x(Y) the inverse coordinate change
    let images_in_y: Vec<Poly> = pi.images.iter().map(|g| back.apply(g)).collect();
    for (j, h) in images_in_y.iter().enumerate() {
        let clean = (rank..n).all(|v| !h.involves(v));
        report.check(clean, format!("pi(x{j}) in Q[[Y1..Y{rank}]]"), clean);
    }
    if !report.passed() {
        return Err(Error::DecompositionFailed(format!("{:?}", report.witnesses)));
    }
    Ok(JetSplit {
        p,
        rank,
        z_forms,
        y,
        images_in_y,
        report,
    })
}
