//! Finitely generated subalgebras `A = Q[g1, ..., gm]` of a presented ring.
//!
//! Everything goes through the graph ideal `(relations, t_i - g_i)` in the
//! ring with the ambient variables followed by one tag per generator.

use crate::poly::{Ideal, MonomialOrder, Poly};
use crate::ring::PresentedRing;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SubAlgebra {
    ambient: PresentedRing,
    gens: Vec<Poly>,
    tag_names: Vec<String>,
    over_base: bool,
    graph: Ideal,
}

/// Kernel of `Q[tags] -> ambient` and the dimension of the image.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub kernel: Ideal,
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicVerdict {
    /// The relation holds and the element is not in `A`.
    AlgebraicOutside,
    /// The relation holds but the element already lies in `A`.
    Inside(Poly),
    /// The relation does not vanish; carries its value in the ambient ring.
    WitnessInvalid(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    Pass,
    /// `a*b` lies in `A` but the named factor does not.
    Fail { outside: Poly },
    /// `a*b` is not in `A`, so nothing is claimed.
    Vacuous,
}

impl SubAlgebra {
    pub fn new(ambient: &PresentedRing, gens: Vec<Poly>) -> Result<SubAlgebra> {
        SubAlgebra::build(ambient, gens, false)
    }

    /// The `R`-subalgebra generated by `gens`: the base variables come first
    /// among the generators.
    pub fn over_base(ambient: &PresentedRing, gens: Vec<Poly>) -> Result<SubAlgebra> {
        let mut all: Vec<Poly> = ambient.base_vars().iter().map(|&b| ambient.var(b)).collect();
        all.extend(gens);
        SubAlgebra::build(ambient, all, true)
    }

    fn build(ambient: &PresentedRing, gens: Vec<Poly>, over_base: bool) -> Result<SubAlgebra> {
        let n = ambient.nvars();
        let mut reduced = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.nvars() != n {
                return Err(Error::InvalidArgument("generator outside the ambient ring".into()));
            }
            let r = ambient.nf(g)?;
            if r.is_zero() {
                return Err(Error::InvalidArgument("zero generator".into()));
            }
            reduced.push(r);
        }
        let m = reduced.len();
        let mut tag_names = Vec::with_capacity(m);
        for i in 0..m {
            let mut name = format!("t{}", i + 1);
            while ambient.names().contains(&name) {
                name.push('_');
            }
            tag_names.push(name);
        }
        let mut graph: Vec<Poly> = ambient.relations().gens().iter().map(|g| g.extend(n + m)).collect();
        for (i, g) in reduced.iter().enumerate() {
            graph.push(&Poly::var(n + m, n + i) - &g.extend(n + m));
        }
        Ok(SubAlgebra {
            ambient: ambient.clone(),
            gens: reduced,
            tag_names,
            over_base,
            graph: Ideal::new(n + m, graph),
        })
    }

    pub fn ambient(&self) -> &PresentedRing {
        &self.ambient
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn tag_names(&self) -> &[String] {
        &self.tag_names
    }

    pub fn is_over_base(&self) -> bool {
        self.over_base
    }

    /// Renders a polynomial in the tags.
    pub fn show_tags(&self, e: &Poly) -> String {
        e.display(&self.tag_names)
    }

    /// Evaluates a tag expression at the generators.
    pub fn evaluate(&self, e: &Poly) -> Result<Poly> {
        if self.gens.is_empty() {
            return Ok(Poly::constant(self.ambient.nvars(), e.constant_term()));
        }
        self.ambient.nf(&e.substitute(&self.gens))
    }

    fn order(&self) -> MonomialOrder {
        MonomialOrder::Block {
            split: self.ambient.nvars(),
        }
    }

    fn lift(&self, f: &Poly) -> Poly {
        f.extend(self.ambient.nvars() + self.ngens())
    }

    fn tags_only(&self, g: &Poly) -> Poly {
        let n = self.ambient.nvars();
        let m = self.ngens();
        let map: Vec<usize> = (0..n + m).map(|v| v.saturating_sub(n)).collect();
        g.remap(m, &map)
    }

    /// An expression of `f` in the tags, if `f` lies in the subalgebra.
    pub fn member(&self, f: &Poly) -> Result<Option<Poly>> {
        let n = self.ambient.nvars();
        let r = self.graph.normal_form(&self.lift(f), self.order())?;
        if (0..n).any(|v| r.involves(v)) {
            return Ok(None);
        }
        let e = self.tags_only(&r);
        if !self.ambient.equal(&self.evaluate(&e)?, f)? {
            return Err(Error::Internal(format!(
                "membership expression {} does not evaluate back",
                self.show_tags(&e)
            )));
        }
        Ok(Some(e))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.member(f)?.is_some())
    }

    /// `I ∩ A` in tag coordinates, for an ideal `I` of the ambient ring given
    /// by generators (relations are added automatically).
    pub fn contract_ideal(&self, gens: &[Poly]) -> Result<Ideal> {
        let n = self.ambient.nvars();
        let elim: Vec<usize> = (0..n).collect();
        let ideal = self.graph.with(gens.iter().map(|g| self.lift(g)));
        let e = ideal.eliminate(&elim)?;
        let kept: Vec<Poly> = e.reduced_gens()?.iter().map(|g| self.tags_only(g)).collect();
        Ok(Ideal::new(self.ngens(), kept))
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let kernel = self.contract_ideal(&[])?;
        let dimension = kernel.krull_dim()?;
        Ok(Presentation { kernel, dimension })
    }

    /// Transcendence degree, over the base ring when the subalgebra was
    /// built with [`SubAlgebra::over_base`].
    pub fn trdeg(&self) -> Result<usize> {
        let dim = self
            .presentation()?
            .dimension
            .ok_or_else(|| Error::InvalidArgument("subalgebra of the zero ring".into()))?;
        if !self.over_base || self.ambient.base_vars().is_empty() {
            return Ok(dim);
        }
        let base = base_dimension(&self.ambient)?;
        dim.checked_sub(base)
            .ok_or_else(|| Error::Internal("subalgebra smaller than its base".into()))
    }

    /// The subalgebra as a ring of its own: tags modulo the kernel. When built
    /// over the base, the base tags are its base variables.
    pub fn presented(&self) -> Result<PresentedRing> {
        let kernel = self.presentation()?.kernel;
        let base = if self.over_base {
            (0..self.ambient.base_vars().len()).collect()
        } else {
            Vec::new()
        };
        PresentedRing::new(self.tag_names.clone(), kernel.reduced_gens()?, base)
    }

    /// Tag expression of a member, or an error naming the element.
    pub fn express(&self, f: &Poly) -> Result<Poly> {
        self.member(f)?.ok_or_else(|| {
            Error::InvalidArgument(format!("{} is not in the subalgebra", self.ambient.show(f)))
        })
    }

    /// Checks a supplied algebraic relation `rel(g_1..g_m, f) = 0`; the
    /// relation lives in the tags followed by one extra variable for `f`.
    pub fn algebraic_witness_check(&self, f: &Poly, relation: &Poly) -> Result<AlgebraicVerdict> {
        if relation.nvars() != self.ngens() + 1 {
            return Err(Error::InvalidArgument("relation must use the tags and one extra variable".into()));
        }
        if relation.is_zero() {
            return Err(Error::InvalidArgument("zero relation".into()));
        }
        let mut images = self.gens.clone();
        images.push(self.ambient.nf(f)?);
        let value = self.ambient.nf(&relation.substitute(&images))?;
        if !value.is_zero() {
            return Ok(AlgebraicVerdict::WitnessInvalid(value));
        }
        Ok(match self.member(f)? {
            Some(e) => AlgebraicVerdict::Inside(e),
            None => AlgebraicVerdict::AlgebraicOutside,
        })
    }

    /// If `a*b` lies in `A`, both factors must; reports which one does not.
    pub fn factorial_closure_witness_check(&self, a: &Poly, b: &Poly) -> Result<ClosureVerdict> {
        let ab = self.ambient.nf(&(a * b))?;
        if ab.is_zero() {
            return Err(Error::InvalidArgument("product is zero".into()));
        }
        if !self.contains(&ab)? {
            return Ok(ClosureVerdict::Vacuous);
        }
        for x in [a, b] {
            if !self.contains(x)? {
                return Ok(ClosureVerdict::Fail { outside: x.clone() });
            }
        }
        Ok(ClosureVerdict::Pass)
    }
}

/// Krull dimension of the base ring `Q[base vars] / (relations ∩ Q[base vars])`.
pub fn base_dimension(ring: &PresentedRing) -> Result<usize> {
    let n = ring.nvars();
    let others: Vec<usize> = (0..n).filter(|v| !ring.base_vars().contains(v)).collect();
    let contracted = ring.relations().eliminate(&others)?;
    let dim = contracted
        .krull_dim()?
        .ok_or_else(|| Error::InvalidArgument("base ring is zero".into()))?;
    // the eliminated variables are free in the contracted ideal
    Ok(dim - others.len())
}
