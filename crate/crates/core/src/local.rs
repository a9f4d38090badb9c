//! Diagnostics for local algebras presented as `Q[x]/I` with `I` inside the
//! maximal ideal at the origin: vector-space basis, annihilators, socle,
//! Gorenstein and Cohen-Macaulay verdicts.
//!
//! Localizing a graded affine model at its irrelevant ideal preserves all the
//! properties certified here, so the computations run in the affine model.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::QMatrix;
use crate::poly::{Ideal, Monomial, Poly, Rational};
use crate::ring::PresentedRing;
use crate::{Error, Report, Result};

#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    ring: PresentedRing,
    dim: usize,
    finite: Option<Finite>,
}

#[derive(Clone, Debug)]
struct Finite {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Multiplication by each variable, acting on coordinate rows.
    tables: Vec<QMatrix>,
}

impl LocalAlgebra {
    pub fn new(ring: &PresentedRing) -> Result<LocalAlgebra> {
        let dim = ring
            .krull_dim()?
            .ok_or_else(|| Error::Precondition("the zero ring is not local".into()))?;
        let mut alg = LocalAlgebra {
            ring: ring.clone(),
            dim,
            finite: None,
        };
        if dim == 0 {
            alg.finite = Some(alg.build_finite()?);
        }
        Ok(alg)
    }

    fn build_finite(&self) -> Result<Finite> {
        let n = self.ring.nvars();
        let lms = self.ring.relations().leading_monomials()?;
        // every standard monomial divides the product of the pure powers
        let mut bound = 0;
        for v in 0..n {
            let e = lms
                .iter()
                .filter(|m| m.support().all(|u| u == v))
                .map(|m| m.exp(v))
                .min()
                .ok_or_else(|| Error::Internal("zero-dimensional ideal without pure power".into()))?;
            bound += e.saturating_sub(1);
        }
        let basis = self.ring.relations().standard_monomials(bound)?;
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut partial = Finite {
            basis,
            index,
            tables: Vec::new(),
        };
        for v in 0..n {
            let x = Poly::var(n, v);
            let mut rows = Vec::new();
            for m in &partial.basis {
                let prod = &Poly::term(m.clone(), Rational::one()) * &x;
                rows.push(self.coords_in(&partial, &prod)?);
            }
            let table = QMatrix::from_rows(rows);
            let mut power = table.clone();
            for _ in 1..partial.basis.len() {
                power = power.mul(&table);
            }
            if !power.is_zero() {
                return Err(Error::Precondition(format!(
                    "{} is not nilpotent, so the algebra is not local at the origin",
                    self.ring.names()[v]
                )));
            }
            partial.tables.push(table);
        }
        Ok(partial)
    }

    fn coords_in(&self, fin: &Finite, f: &Poly) -> Result<Vec<Rational>> {
        let r = self.ring.nf(f)?;
        let mut out = vec![Rational::zero(); fin.basis.len()];
        for (m, c) in r.terms() {
            let i = fin.index[m];
            out[i] = c.clone();
        }
        Ok(out)
    }

    fn finite(&self) -> Result<&Finite> {
        self.finite.as_ref().ok_or(Error::NotArtinian(self.dim))
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn krull_dim(&self) -> usize {
        self.dim
    }

    pub fn is_artinian(&self) -> bool {
        self.finite.is_some()
    }

    /// Standard-monomial basis of the algebra over `Q`.
    pub fn artinian_basis(&self) -> Result<Vec<Poly>> {
        Ok(self
            .finite()?
            .basis
            .iter()
            .map(|m| Poly::term(m.clone(), Rational::one()))
            .collect())
    }

    pub fn vector_dim(&self) -> Result<usize> {
        Ok(self.finite()?.basis.len())
    }

    pub fn coords(&self, f: &Poly) -> Result<Vec<Rational>> {
        self.coords_in(self.finite()?, f)
    }

    fn from_coords(&self, v: &[Rational]) -> Poly {
        let fin = self.finite.as_ref().expect("finite algebra");
        Poly::from_terms(
            self.ring.nvars(),
            fin.basis.iter().zip(v).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Matrix of multiplication by `f` on coordinate rows.
    fn mult_matrix(&self, f: &Poly) -> Result<QMatrix> {
        let fin = self.finite()?;
        let rows = fin
            .basis
            .iter()
            .map(|m| self.coords_in(fin, &(&Poly::term(m.clone(), Rational::one()) * f)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(rows))
    }

    /// Canonical generators of `(0 : f)`. An empty list is the zero ideal.
    pub fn annihilator(&self, f: &Poly) -> Result<Vec<Poly>> {
        let ideal = match &self.finite {
            Some(_) => {
                let kernel = self.mult_matrix(f)?.left_nullspace();
                self.ring.ideal(kernel.iter().map(|v| self.from_coords(v)))
            }
            None => self.ring.relations().quotient(f)?,
        };
        self.ring.canonical_gens(&ideal)
    }

    /// A basis of `(0 : m)` over `Q`, with `m` generated by the variables.
    pub fn socle(&self) -> Result<Vec<Poly>> {
        let fin = self.finite()?;
        let n = fin.basis.len();
        // stack the tables side by side: v is in the socle iff v·T_i = 0 for all i
        let mut rows = vec![Vec::new(); n];
        for t in &fin.tables {
            for (i, row) in rows.iter_mut().enumerate() {
                row.extend_from_slice(t.row(i));
            }
        }
        if fin.tables.is_empty() {
            return self.artinian_basis();
        }
        let mut socle: Vec<Poly> = QMatrix::from_rows(rows)
            .left_nullspace()
            .iter()
            .map(|v| self.from_coords(v))
            .collect();
        socle.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()));
        Ok(socle)
    }

    pub fn socle_and_gorenstein(&self) -> Result<(Vec<Poly>, bool)> {
        let socle = self.socle()?;
        let gorenstein = socle.len() == 1;
        Ok((socle, gorenstein))
    }

    /// Dimension, a depth-zero witness if one exists, and the Cohen-Macaulay
    /// verdict. A nonzero `candidate` with `(I : candidate) = I` certifies
    /// depth at least one.
    pub fn depth_and_cm_report(&self, candidate: Option<&Poly>) -> Result<Report> {
        let mut report = Report::pass().with("dim", self.dim);
        let n = self.ring.nvars();
        let rel = self.ring.relations();
        let maximal = Ideal::new(n, (0..n).map(|i| Poly::var(n, i)));
        let socle = rel.quotient_ideal(&maximal)?;
        let mut witness = None;
        for g in socle.reduced_gens()? {
            if !self.ring.is_zero(&g)? {
                witness = Some(g);
                break;
            }
        }
        if let Some(w) = &witness {
            report.push("depth-0 witness", self.ring.show(w));
            let ann = self.annihilator(w)?;
            report.push("ann(witness)", show_ideal(&self.ring, &ann));
        }
        let mut regular = false;
        if let Some(c) = candidate {
            let is_nonzero_class = !self.ring.is_zero(c)?;
            let colon = rel.quotient(c)?;
            regular = is_nonzero_class && !rel.with([c.clone()]).is_unit()? && colon.equals(rel)?;
            report.push(format!("(relations : {}) = relations", self.ring.show(c)), regular);
            report.push("regular element", if regular { self.ring.show(c) } else { "none".into() });
        }
        let verdict = if self.dim == 0 {
            "Cohen-Macaulay"
        } else if witness.is_some() {
            "not Cohen-Macaulay"
        } else if self.dim == 1 && regular {
            "Cohen-Macaulay"
        } else {
            report.status = report.status.and(crate::Status::Unknown);
            "undetermined"
        };
        report.push("verdict", verdict);
        Ok(report)
    }
}

/// `(g1, ..., gk)` in the ring's variable names; `(0)` for the zero ideal.
pub fn show_ideal(ring: &PresentedRing, gens: &[Poly]) -> String {
    if gens.is_empty() {
        return "(0)".into();
    }
    let shown: Vec<String> = gens.iter().map(|g| ring.show(g)).collect();
    format!("({})", shown.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(names: &[&str], rels: &[&str]) -> LocalAlgebra {
        LocalAlgebra::new(&PresentedRing::parse(names, rels, &[]).unwrap()).unwrap()
    }

    fn shown(a: &LocalAlgebra, gens: &[Poly]) -> Vec<String> {
        gens.iter().map(|g| a.ring().show(g)).collect()
    }

    #[test]
    fn gorenstein_examples() {
        let a = alg(&["X", "Y"], &["X^2", "Y^2", "X*Y"]);
        assert_eq!(a.vector_dim().unwrap(), 3);
        let (socle, gor) = a.socle_and_gorenstein().unwrap();
        assert_eq!(socle.len(), 2);
        assert!(!gor);
        let x = a.ring().var(0);
        assert_eq!(shown(&a, &a.annihilator(&x).unwrap()), ["X", "Y"]);

        let b = alg(
            &["X", "Y", "Z", "W"],
            &["X^2", "Y^2", "X*Y", "Z^2", "W^2", "Z*W", "X*W", "Y*Z", "X*Z - Y*W"],
        );
        assert_eq!(b.vector_dim().unwrap(), 6);
        let (socle, gor) = b.socle_and_gorenstein().unwrap();
        assert!(gor);
        let xz = b.ring().poly("X*Z").unwrap();
        assert_eq!(socle.len(), 1);
        let support = |v: Vec<Rational>| -> Vec<bool> { v.iter().map(|c| !c.is_zero()).collect() };
        let xz_coords = support(b.coords(&xz).unwrap());
        assert_eq!(support(b.coords(&socle[0]).unwrap()), xz_coords);
        assert_eq!(xz_coords.iter().filter(|&&c| c).count(), 1);
        assert_eq!(b.annihilator(&xz).unwrap().len(), 4);

        let c = alg(&["X"], &["X^2"]);
        assert_eq!(c.vector_dim().unwrap(), 2);
        assert_eq!(shown(&c, &c.socle().unwrap()), ["X"]);
        assert!(c.annihilator(&c.ring().one()).unwrap().is_empty());
    }

    #[test]
    fn depth_examples() {
        let b = alg(&["X", "Y", "Z"], &["X^2", "X*Y", "Y*Z"]);
        assert!(matches!(b.vector_dim(), Err(Error::NotArtinian(1))));
        let c = b.ring().poly("Y + Z").unwrap();
        let r = b.depth_and_cm_report(Some(&c)).unwrap();
        assert_eq!(r.witness("regular element"), Some("Y + Z"));
        assert_eq!(r.witness("depth-0 witness"), None);
        assert_eq!(r.witness("verdict"), Some("Cohen-Macaulay"));

        let a = alg(&["X", "Y"], &["X^2", "X*Y"]);
        let r = a.depth_and_cm_report(None).unwrap();
        assert_eq!(r.witness("depth-0 witness"), Some("X"));
        assert_eq!(r.witness("verdict"), Some("not Cohen-Macaulay"));
        assert_eq!(r.witness("ann(witness)"), Some("(X, Y)"));

        let c = alg(&["X"], &["X^2"]);
        let r = c.depth_and_cm_report(None).unwrap();
        assert_eq!(r.witness("verdict"), Some("Cohen-Macaulay"));
    }

    #[test]
    fn not_local() {
        let r = PresentedRing::parse(&["X"], &["X^2 - X"], &[]).unwrap();
        assert!(LocalAlgebra::new(&r).is_err());
    }
}
