use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{groebner_basis, reduce, Monomial, MonomialOrder, Poly};
use crate::{Error, Limits, Result};

/// An ideal of the free polynomial ring in `nvars` variables.
///
/// Reduced Groebner bases are cached per monomial order. The cache is filled
/// at most once per order in practice; concurrent fills compute the same basis,
/// so the first published value wins.
pub struct Ideal {
    nvars: usize,
    gens: Vec<Poly>,
    cache: RwLock<HashMap<MonomialOrder, Arc<Vec<Poly>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            nvars: self.nvars,
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache poisoned").clone()),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

impl Ideal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Poly>) -> Ideal {
        let gens: Vec<Poly> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.nvars(), nvars, "generator in wrong ring"))
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            nvars,
            gens,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn zero(nvars: usize) -> Ideal {
        Ideal::new(nvars, [])
    }

    pub fn unit(nvars: usize) -> Ideal {
        Ideal::new(nvars, [Poly::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<Vec<Poly>>> {
        self.groebner_with(order, Limits::global())
    }

    pub fn groebner_with(&self, order: MonomialOrder, limits: Limits) -> Result<Arc<Vec<Poly>>> {
        if let Some(gb) = self.cache.read().expect("cache poisoned").get(&order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.gens, order, limits)?);
        let mut w = self.cache.write().expect("cache poisoned");
        Ok(w.entry(order).or_insert(gb).clone())
    }

    /// Reduced degrevlex basis; the canonical generating set.
    pub fn reduced_gens(&self) -> Result<Vec<Poly>> {
        Ok(self.groebner(MonomialOrder::DegRevLex)?.to_vec())
    }

    pub fn normal_form(&self, f: &Poly, order: MonomialOrder) -> Result<Poly> {
        let gb = self.groebner(order)?;
        Ok(reduce(f, &gb, order))
    }

    pub fn nf(&self, f: &Poly) -> Result<Poly> {
        self.normal_form(f, MonomialOrder::DegRevLex)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.nf(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.reduced_gens()? == other.reduced_gens()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.contains(&Poly::one(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().cloned().chain(extra))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.with(other.gens.iter().cloned())
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ideal::new(self.nvars, gens)
    }

    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// Embeds into a ring with more (trailing) variables.
    pub fn extend(&self, nvars: usize) -> Ideal {
        Ideal::new(nvars, self.gens.iter().map(|g| g.extend(nvars)))
    }

    pub fn remap(&self, nvars: usize, map: &[usize]) -> Ideal {
        Ideal::new(nvars, self.gens.iter().map(|g| g.remap(nvars, map)))
    }

    /// `I ∩ k[remaining variables]`, as an ideal of the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let n = self.nvars;
        let mut elim = vec![false; n];
        for &v in vars {
            if v >= n {
                return Err(Error::InvalidArgument(format!("variable {v} out of range")));
            }
            elim[v] = true;
        }
        let mut to_new = vec![0; n];
        let mut next = 0;
        for v in (0..n).filter(|&v| elim[v]).chain((0..n).filter(|&v| !elim[v])) {
            to_new[v] = next;
            next += 1;
        }
        let split = vars.iter().collect::<std::collections::BTreeSet<_>>().len();
        let mut to_old = vec![0; n];
        for (old, &new) in to_new.iter().enumerate() {
            to_old[new] = old;
        }
        let permuted: Vec<Poly> = self.gens.iter().map(|g| g.remap(n, &to_new)).collect();
        let gb = groebner_basis(&permuted, MonomialOrder::Block { split }, Limits::global())?;
        let kept = gb
            .into_iter()
            .filter(|g| (0..split).all(|v| !g.involves(v)))
            .map(|g| g.remap(n, &to_old));
        Ok(Ideal::new(n, kept))
    }

    /// Normal form of `f` under an order eliminating `vars`: `f` lies in
    /// `I + Q[other variables]` iff the result avoids `vars`.
    pub fn normal_form_eliminating(&self, f: &Poly, vars: &[usize]) -> Result<Poly> {
        let n = self.nvars;
        let mut to_new = vec![0; n];
        let mut next = 0;
        for v in (0..n).filter(|v| vars.contains(v)).chain((0..n).filter(|v| !vars.contains(v))) {
            to_new[v] = next;
            next += 1;
        }
        let mut to_old = vec![0; n];
        for (old, &new) in to_new.iter().enumerate() {
            to_old[new] = old;
        }
        let split = (0..n).filter(|v| vars.contains(v)).count();
        let permuted = self.remap(n, &to_new);
        let r = permuted.normal_form(&f.remap(n, &to_new), MonomialOrder::Block { split })?;
        Ok(r.remap(n, &to_old))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let n = self.nvars;
        let shift: Vec<usize> = (1..=n).collect();
        let s = Poly::var(n + 1, 0);
        let one_minus_s = &Poly::one(n + 1) - &s;
        let mut gens: Vec<Poly> = self.gens.iter().map(|f| &s * &f.remap(n + 1, &shift)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_s * &g.remap(n + 1, &shift)));
        let gb = groebner_basis(&gens, MonomialOrder::Block { split: 1 }, Limits::global())?;
        let kept = gb
            .into_iter()
            .filter(|g| !g.involves(0))
            .map(|g| unshift(&g, n));
        Ok(Ideal::new(n, kept))
    }

    /// `(I : f) = { g : g f ∈ I }`.
    pub fn quotient(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("ideal quotient by zero".into()));
        }
        let meet = self.intersect(&Ideal::new(self.nvars, [f.clone()]))?;
        let gens = meet
            .gens
            .iter()
            .map(|g| {
                g.div_exact(f)
                    .ok_or_else(|| Error::Internal("intersection element not divisible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.nvars, gens))
    }

    /// `(I : J) = ∩ (I : g)` over the generators of `J`.
    pub fn quotient_ideal(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.nvars);
        for g in &other.gens {
            acc = acc.intersect(&self.quotient(g)?)?;
        }
        Ok(acc)
    }

    /// `(I : f^∞)` via an inverse variable, plus the least `k` with
    /// `(I : f^k) = (I : f^∞)`.
    pub fn saturate(&self, f: &Poly) -> Result<(Ideal, usize)> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("saturation by zero".into()));
        }
        let n = self.nvars;
        let shift: Vec<usize> = (1..=n).collect();
        let w = Poly::var(n + 1, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.remap(n + 1, &shift)).collect();
        gens.push(&(&w * &f.remap(n + 1, &shift)) - &Poly::one(n + 1));
        let gb = groebner_basis(&gens, MonomialOrder::Block { split: 1 }, Limits::global())?;
        let sat = Ideal::new(
            n,
            gb.into_iter().filter(|g| !g.involves(0)).map(|g| unshift(&g, n)),
        );

        let mut current = self.clone();
        for k in 0..=200 {
            if current.contains_ideal(&sat)? {
                return Ok((sat, k));
            }
            current = current.quotient(f)?;
        }
        Err(Error::Internal("saturation exponent did not stabilize".into()))
    }

    /// Leading monomials of the reduced degrevlex basis.
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        let order = MonomialOrder::DegRevLex;
        Ok(self
            .groebner(order)?
            .iter()
            .map(|g| g.leading_monomial(order).unwrap().clone())
            .collect())
    }

    /// Krull dimension of the quotient ring; `None` when `I` is the unit ideal.
    pub fn krull_dim(&self) -> Result<Option<usize>> {
        let lms = self.leading_monomials()?;
        Ok(dim_of_monomial_ideal(self.nvars, &lms))
    }

    /// Number of standard monomials of each total degree `0..=max_degree`.
    pub fn hilbert_counts(&self, max_degree: u32) -> Result<Vec<usize>> {
        let lms = self.leading_monomials()?;
        let mut counts = vec![0; max_degree as usize + 1];
        for_each_monomial_upto(self.nvars, max_degree, &mut |m| {
            if !lms.iter().any(|l| l.divides(m)) {
                counts[m.degree() as usize] += 1;
            }
        });
        Ok(counts)
    }

    /// All standard monomials of total degree at most `max_degree`, sorted
    /// ascending in degrevlex.
    pub fn standard_monomials(&self, max_degree: u32) -> Result<Vec<Monomial>> {
        let lms = self.leading_monomials()?;
        let mut out = Vec::new();
        for_each_monomial_upto(self.nvars, max_degree, &mut |m| {
            if !lms.iter().any(|l| l.divides(m)) {
                out.push(m.clone());
            }
        });
        out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
        Ok(out)
    }
}

fn unshift(g: &Poly, n: usize) -> Poly {
    let mut map = vec![0; n + 1];
    for (i, slot) in map.iter_mut().enumerate().skip(1) {
        *slot = i - 1;
    }
    // variable 0 does not occur, so sending it anywhere is harmless
    g.remap(n, &map)
}

/// Dimension of `k[x]/(monomials)`: the largest set of variables containing
/// the support of no generator.
pub fn dim_of_monomial_ideal(nvars: usize, gens: &[Monomial]) -> Option<usize> {
    if gens.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    assert!(nvars < 64, "too many variables for subset enumeration");
    let mut best = 0;
    for subset in 0u64..(1u64 << nvars) {
        let size = subset.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    Some(best)
}

fn for_each_monomial_upto(nvars: usize, max_degree: u32, f: &mut impl FnMut(&Monomial)) {
    fn rec(
        exps: &mut Vec<u32>,
        var: usize,
        remaining: u32,
        f: &mut impl FnMut(&Monomial),
    ) {
        if var == exps.len() {
            f(&Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=remaining {
            exps[var] = e;
            rec(exps, var + 1, remaining - e, f);
        }
        exps[var] = 0;
    }
    let mut exps = vec![0; nvars];
    rec(&mut exps, 0, max_degree, f);
}
