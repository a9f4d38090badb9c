//! Finitely presented rational algebras and maps between them.

use std::sync::Arc;

use crate::poly::{reduce, Ideal, MonomialOrder, Poly};
use crate::{Error, Result};

/// `Q[names] / relations`, with a designated subset of base variables
/// generating the coefficient ring `R`.
///
/// Cloning is cheap and shares cached Groebner bases.
#[derive(Clone)]
pub struct PresentedRing {
    inner: Arc<RingData>,
}

struct RingData {
    names: Vec<String>,
    relations: Ideal,
    order: MonomialOrder,
    base_vars: Vec<usize>,
}

impl std::fmt::Debug for PresentedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rels: Vec<String> = self.relations().gens().iter().map(|g| self.show(g)).collect();
        write!(f, "Q[{}]/({})", self.names().join(","), rels.join(", "))
    }
}

impl PresentedRing {
    pub fn new(
        names: Vec<String>,
        relations: Vec<Poly>,
        base_vars: Vec<usize>,
    ) -> Result<PresentedRing> {
        let n = names.len();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidArgument(format!("duplicate variable {name}")));
            }
        }
        if let Some(r) = relations.iter().find(|r| r.nvars() != n) {
            return Err(Error::InvalidArgument(format!(
                "relation over {} variables in a ring with {n}",
                r.nvars()
            )));
        }
        if let Some(&b) = base_vars.iter().find(|&&b| b >= n) {
            return Err(Error::InvalidArgument(format!("base variable {b} out of range")));
        }
        let mut base_vars = base_vars;
        base_vars.sort_unstable();
        base_vars.dedup();
        Ok(PresentedRing {
            inner: Arc::new(RingData {
                names,
                relations: Ideal::new(n, relations),
                order: MonomialOrder::DegRevLex,
                base_vars,
            }),
        })
    }

    /// Builds a ring from textual relations; base variables are given by name.
    pub fn parse(names: &[&str], relations: &[&str], base: &[&str]) -> Result<PresentedRing> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| Poly::parse(r, &names))
            .collect::<Result<Vec<_>>>()?;
        let base = base
            .iter()
            .map(|b| {
                names
                    .iter()
                    .position(|n| n == b)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown base variable {b}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PresentedRing::new(names, rels, base)
    }

    pub fn free(names: &[&str]) -> PresentedRing {
        PresentedRing::parse(names, &[], &[]).expect("distinct names")
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn nvars(&self) -> usize {
        self.inner.names.len()
    }

    pub fn relations(&self) -> &Ideal {
        &self.inner.relations
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    pub fn base_vars(&self) -> &[usize] {
        &self.inner.base_vars
    }

    pub fn is_free(&self) -> bool {
        self.relations().is_zero()
    }

    pub fn same_as(&self, other: &PresentedRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.names() == other.names()
                && self.base_vars() == other.base_vars()
                && self.relations().gens() == other.relations().gens())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    /// Parses an element written in this ring's variable names.
    pub fn poly(&self, text: &str) -> Result<Poly> {
        Poly::parse(text, self.names())
    }

    pub fn show(&self, f: &Poly) -> String {
        f.display(self.names())
    }

    pub fn nf(&self, f: &Poly) -> Result<Poly> {
        if self.is_free() {
            return Ok(f.clone());
        }
        let gb = self.relations().groebner(self.order())?;
        Ok(reduce(f, &gb, self.order()))
    }

    pub fn is_zero(&self, f: &Poly) -> Result<bool> {
        Ok(self.nf(f)?.is_zero())
    }

    pub fn equal(&self, f: &Poly, g: &Poly) -> Result<bool> {
        self.is_zero(&(f - g))
    }

    /// Preimage in the free ring of the ideal generated by `gens`.
    pub fn ideal(&self, gens: impl IntoIterator<Item = Poly>) -> Ideal {
        self.relations().with(gens)
    }

    pub fn is_unit(&self, f: &Poly) -> Result<bool> {
        self.ideal([f.clone()]).is_unit()
    }

    pub fn krull_dim(&self) -> Result<Option<usize>> {
        self.relations().krull_dim()
    }

    /// Canonical generators of an ideal of this ring: the reduced basis of
    /// its preimage, minus elements of the relation ideal and generators
    /// implied by the others, smallest leading term first.
    pub fn canonical_gens(&self, ideal: &Ideal) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for g in ideal.reduced_gens()? {
            if !self.is_zero(&g)? {
                out.push(g);
            }
        }
        out.reverse();
        let mut i = out.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Poly> = out.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            if self.ideal(others).contains(&out[i])? {
                out.remove(i);
            }
        }
        Ok(out)
    }

    /// Appends fresh variables; the relations and base are unchanged.
    pub fn extend(&self, extra: &[&str]) -> Result<PresentedRing> {
        let mut names = self.names().to_vec();
        names.extend(extra.iter().map(|s| s.to_string()));
        let n = names.len();
        let rels = self.relations().gens().iter().map(|g| g.extend(n)).collect();
        PresentedRing::new(names, rels, self.base_vars().to_vec())
    }

    /// The base ring `Q[base vars] / (relations ∩ Q[base vars])` on its own.
    pub fn base_ring(&self) -> Result<PresentedRing> {
        let n = self.nvars();
        let base = self.base_vars();
        let others: Vec<usize> = (0..n).filter(|v| !base.contains(v)).collect();
        let contracted = self.relations().eliminate(&others)?;
        let rels = contracted
            .reduced_gens()?
            .iter()
            .map(|g| self.to_base_coords(g))
            .collect();
        let names = base.iter().map(|&b| self.names()[b].clone()).collect();
        let all: Vec<usize> = (0..base.len()).collect();
        PresentedRing::new(names, rels, all)
    }

    /// Rewrites a polynomial in the base variables into the coordinates of
    /// [`PresentedRing::base_ring`]. Panics if another variable occurs.
    pub fn to_base_coords(&self, f: &Poly) -> Poly {
        let base = self.base_vars();
        let map: Vec<usize> = (0..self.nvars())
            .map(|v| {
                if f.involves(v) {
                    base.iter().position(|&b| b == v).expect("non-base variable")
                } else {
                    0
                }
            })
            .collect();
        f.remap(base.len(), &map)
    }

    /// Inverse of [`PresentedRing::to_base_coords`].
    pub fn from_base_coords(&self, f: &Poly) -> Poly {
        f.remap(self.nvars(), self.base_vars())
    }

    /// Whether `f` lies in the subring generated by the base variables; if so,
    /// returns a representative involving only base variables.
    pub fn in_base(&self, f: &Poly) -> Result<Option<Poly>> {
        let n = self.nvars();
        let base = self.base_vars();
        let others: Vec<usize> = (0..n).filter(|v| !base.contains(v)).collect();
        let mut to_new = vec![0; n];
        for (new, &old) in others.iter().chain(base).enumerate() {
            to_new[old] = new;
        }
        let mut to_old = vec![0; n];
        for (old, &new) in to_new.iter().enumerate() {
            to_old[new] = old;
        }
        let split = others.len();
        let permuted = self.relations().remap(n, &to_new);
        let order = MonomialOrder::Block { split };
        let r = permuted.normal_form(&f.remap(n, &to_new), order)?;
        if (0..split).any(|v| r.involves(v)) {
            Ok(None)
        } else {
            Ok(Some(r.remap(n, &to_old)))
        }
    }
}

/// A ring homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: PresentedRing,
    target: PresentedRing,
    images: Vec<Poly>,
}

impl RingMap {
    /// Fails with `NotWellDefined` if some relation of the source does not
    /// map to zero.
    pub fn new(source: PresentedRing, target: PresentedRing, images: Vec<Poly>) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        if images.iter().any(|g| g.nvars() != target.nvars()) {
            return Err(Error::InvalidArgument("image outside the target ring".into()));
        }
        let images = images
            .iter()
            .map(|g| target.nf(g))
            .collect::<Result<Vec<_>>>()?;
        let map = RingMap {
            source,
            target,
            images,
        };
        for rel in map.source.relations().gens() {
            let image = map.apply(rel)?;
            if !image.is_zero() {
                return Err(Error::NotWellDefined {
                    relation: map.source.show(rel),
                    image: map.target.show(&image),
                });
            }
        }
        Ok(map)
    }

    pub fn endomorphism(ring: &PresentedRing, images: Vec<Poly>) -> Result<RingMap> {
        RingMap::new(ring.clone(), ring.clone(), images)
    }

    pub fn identity(ring: &PresentedRing) -> RingMap {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images: ring.vars(),
        }
    }

    pub fn source(&self) -> &PresentedRing {
        &self.source
    }

    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Image of `f`, in normal form in the target.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.target.nf(&f.substitute(&self.images))
    }

    /// `self` after `first`: `x ↦ self(first(x))`.
    pub fn after(&self, first: &RingMap) -> Result<RingMap> {
        let images = first
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMap {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    pub fn fixes_base(&self) -> Result<bool> {
        for &b in self.source.base_vars() {
            if !self.target.equal(&self.images[b], &self.target.var(b))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The localization `B_d`, modelled as `B[W]/(relations, W*d - 1)` with `W`
/// placed first so that an elimination order detects elements of `B`.
pub struct LocalizedModel {
    ring: PresentedRing,
    ideal: Ideal,
}

impl LocalizedModel {
    pub fn new(ring: &PresentedRing, den: &Poly) -> Result<LocalizedModel> {
        if ring.is_zero(den)? {
            return Err(Error::InvalidArgument("localization at zero".into()));
        }
        let n = ring.nvars();
        let w = Poly::var(n + 1, 0);
        let mut gens: Vec<Poly> = ring.relations().gens().iter().map(|g| lift(g)).collect();
        gens.push(&(&w * &lift(den)) - &Poly::one(n + 1));
        Ok(LocalizedModel {
            ring: ring.clone(),
            ideal: Ideal::new(n + 1, gens),
        })
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    /// `num / den^k` as an element of `B`, when it is one.
    pub fn divide(&self, num: &Poly, k: u32) -> Result<Option<Poly>> {
        let n = self.ring.nvars();
        let w = Poly::var(n + 1, 0).pow(k);
        let r = self
            .ideal
            .normal_form(&(&w * &lift(num)), MonomialOrder::Block { split: 1 })?;
        if r.involves(0) {
            return Ok(None);
        }
        let map: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        Ok(Some(self.ring.nf(&r.remap(n, &map))?))
    }

    /// Whether `f` is a unit after inverting `den`.
    pub fn is_unit(&self, f: &Poly) -> Result<bool> {
        self.ideal.with([lift(f)]).is_unit()
    }

    /// Whether `f` lies in the extension of the ideal generated by `gens`.
    pub fn ideal_contains(&self, gens: &[Poly], f: &Poly) -> Result<bool> {
        self.ideal.with(gens.iter().map(lift)).contains(&lift(f))
    }
}

fn lift(f: &Poly) -> Poly {
    let n = f.nvars();
    let map: Vec<usize> = (1..=n).collect();
    f.remap(n + 1, &map)
}
