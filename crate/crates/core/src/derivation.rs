//! Derivations, local nilpotency, exponential maps and rings of invariants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::QMatrix;
use crate::poly::{Monomial, MonomialOrder, Poly, Rational};
use crate::ring::{LocalizedModel, PresentedRing};
use crate::subalgebra::SubAlgebra;
use crate::{Error, Report, Result};

/// Largest monomial basis `invariants_upto` will set up a linear system for.
pub const MAX_INVARIANT_MONOMIALS: usize = 5000;

/// A derivation given by the images of the variables.
#[derive(Clone, Debug)]
pub struct Derivation {
    ring: PresentedRing,
    images: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndReport {
    pub verified: bool,
    /// Least `n >= 1` with `D^n(x) = 0`, per variable, where found.
    pub orders: Vec<Option<usize>>,
    pub cap: usize,
}

impl Derivation {
    /// Fails with `NotWellDefined` unless every relation is mapped into the
    /// relation ideal.
    pub fn new(ring: &PresentedRing, images: Vec<Poly>) -> Result<Derivation> {
        if images.len() != ring.nvars() || images.iter().any(|g| g.nvars() != ring.nvars()) {
            return Err(Error::InvalidArgument("one image per variable is required".into()));
        }
        let images = images.iter().map(|g| ring.nf(g)).collect::<Result<Vec<_>>>()?;
        let d = Derivation {
            ring: ring.clone(),
            images,
        };
        for rel in ring.relations().gens() {
            let image = d.apply(rel)?;
            if !image.is_zero() {
                return Err(Error::NotWellDefined {
                    relation: ring.show(rel),
                    image: ring.show(&image),
                });
            }
        }
        Ok(d)
    }

    pub fn zero(ring: &PresentedRing) -> Derivation {
        Derivation {
            ring: ring.clone(),
            images: vec![ring.zero(); ring.nvars()],
        }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Whether the base variables are killed, i.e. this is an `R`-derivation.
    pub fn is_over_base(&self) -> bool {
        self.ring.base_vars().iter().all(|&b| self.images[b].is_zero())
    }

    /// `D(f)` by the Leibniz rule, in normal form.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let mut out = self.ring.zero();
        for (i, image) in self.images.iter().enumerate() {
            if !image.is_zero() && f.involves(i) {
                out += &(&f.derivative(i) * image);
            }
        }
        self.ring.nf(&out)
    }

    pub fn iterate(&self, f: &Poly, times: usize) -> Result<Poly> {
        let mut g = self.ring.nf(f)?;
        for _ in 0..times {
            g = self.apply(&g)?;
        }
        Ok(g)
    }

    /// Semi-decision of local nilpotency: nilpotency on each variable
    /// suffices, and a variable that survives `cap` steps leaves the
    /// verdict unknown.
    pub fn check_lnd(&self, cap: usize) -> Result<LndReport> {
        let cap = cap.max(1);
        let mut orders = Vec::with_capacity(self.ring.nvars());
        for x in self.ring.vars() {
            let mut g = x;
            let mut found = None;
            for n in 1..=cap {
                g = self.apply(&g)?;
                if g.is_zero() {
                    found = Some(n);
                    break;
                }
            }
            orders.push(found);
        }
        Ok(LndReport {
            verified: orders.iter().all(Option::is_some),
            orders,
            cap,
        })
    }
}

/// A ring map `B -> B[T]`, stored by the images of the variables.
#[derive(Clone, Debug)]
pub struct ExpMap {
    ring: PresentedRing,
    ext: PresentedRing,
    images: Vec<Poly>,
}

impl ExpMap {
    /// `images` live in the ring extended by one trailing tag variable.
    /// Checks that the map is well defined and that `T = 0` gives the identity.
    pub fn new(ring: &PresentedRing, tag: &str, images: Vec<Poly>) -> Result<ExpMap> {
        let ext = ring.extend(&[&fresh_name(ring, tag)])?;
        let n = ring.nvars();
        if images.len() != n || images.iter().any(|g| g.nvars() != n + 1) {
            return Err(Error::InvalidArgument("one image per variable in B[T] is required".into()));
        }
        let images = images.iter().map(|g| ext.nf(g)).collect::<Result<Vec<_>>>()?;
        let phi = ExpMap { ring: ring.clone(), ext, images };
        for rel in ring.relations().gens() {
            let image = phi.apply(rel)?;
            if !image.is_zero() {
                return Err(Error::NotWellDefined {
                    relation: ring.show(rel),
                    image: phi.ext.show(&image),
                });
            }
        }
        if let Some(i) = phi.first_identity_violation()? {
            return Err(Error::Precondition(format!(
                "setting the tag to 0 does not give the identity at {}",
                ring.names()[i]
            )));
        }
        Ok(phi)
    }

    pub fn identity(ring: &PresentedRing, tag: &str) -> Result<ExpMap> {
        let n = ring.nvars();
        ExpMap::new(ring, tag, (0..n).map(|i| Poly::var(n + 1, i)).collect())
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    /// `B[T]`, the tag being the last variable.
    pub fn extended_ring(&self) -> &PresentedRing {
        &self.ext
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.ext.nf(&f.substitute(&self.images))
    }

    fn first_identity_violation(&self) -> Result<Option<usize>> {
        let n = self.ring.nvars();
        for (i, g) in self.images.iter().enumerate() {
            let at_zero = g.substitute_var(n, &Poly::zero(n + 1)).restrict(n);
            if !self.ring.equal(&at_zero, &self.ring.var(i))? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Checks `φ|_{T=0} = id` and `φ_V ∘ φ_U = φ_{U+V}` on every variable.
    pub fn check_exp_axioms(&self) -> Result<Report> {
        let n = self.ring.nvars();
        let names = &self.ring.names();
        let mut report = Report::pass();
        if let Some(i) = self.first_identity_violation()? {
            return Ok(Report::fail("axiom (i) fails at", &names[i]));
        }
        report.push("axiom (i)", "holds on all generators");

        let two = self.ring.extend(&[&fresh_name(&self.ring, "U"), &fresh_name(&self.ring, "V")])?;
        let u = two.var(n);
        let v = two.var(n + 1);
        let with_tag = |g: &Poly, t: &Poly| -> Poly {
            let mut images: Vec<Poly> = (0..n).map(|i| two.var(i)).collect();
            images.push(t.clone());
            g.substitute(&images)
        };
        let phi_v: Vec<Poly> = self.images.iter().map(|g| with_tag(g, &v)).collect();
        for (i, g) in self.images.iter().enumerate() {
            let phi_u = with_tag(g, &u);
            let mut outer = phi_v.clone();
            outer.push(u.clone());
            outer.push(v.clone());
            let lhs = two.nf(&phi_u.substitute(&outer))?;
            let rhs = two.nf(&with_tag(g, &(&u + &v)))?;
            if lhs != rhs {
                return Ok(Report::fail("axiom (ii) fails at", &names[i])
                    .with("difference", two.show(&(&lhs - &rhs))));
            }
        }
        report.push("axiom (ii)", "holds on all generators");
        Ok(report)
    }

    /// Whether `φ` is the identity (no variable moves).
    pub fn is_identity(&self) -> Result<bool> {
        let n = self.ring.nvars();
        for (i, g) in self.images.iter().enumerate() {
            if !self.ext.equal(g, &Poly::var(n + 1, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn fresh_name(ring: &PresentedRing, base: &str) -> String {
    let mut name = base.to_string();
    while ring.names().contains(&name) {
        name.push('_');
    }
    name
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `φ = Σ D^k / k! · T^k`, which is finite because `D` is verified locally
/// nilpotent within `cap` steps.
pub fn exp_from_lnd(d: &Derivation, cap: usize) -> Result<ExpMap> {
    let lnd = d.check_lnd(cap)?;
    if !lnd.verified {
        return Err(Error::Precondition(format!(
            "derivation not verified locally nilpotent within {cap} steps"
        )));
    }
    let ring = d.ring();
    let n = ring.nvars();
    let t = Poly::var(n + 1, n);
    let mut images = Vec::with_capacity(n);
    for (x, order) in ring.vars().into_iter().zip(&lnd.orders) {
        let mut acc = Poly::zero(n + 1);
        let mut g = x;
        for k in 0..order.expect("verified") {
            let term = &g.extend(n + 1) * &t.pow(k as u32);
            acc += &term.scale(&factorial(k).recip());
            g = d.apply(&g)?;
        }
        images.push(acc);
    }
    let phi = ExpMap::new(ring, "T", images)?;
    let axioms = phi.check_exp_axioms()?;
    if !axioms.passed() {
        return Err(Error::Internal(format!("exponential of an LND fails the axioms: {axioms:?}")));
    }
    Ok(phi)
}

pub enum InvariantSource<'a> {
    Derivation(&'a Derivation),
    Exp(&'a ExpMap),
}

impl InvariantSource<'_> {
    fn ring(&self) -> &PresentedRing {
        match self {
            InvariantSource::Derivation(d) => d.ring(),
            InvariantSource::Exp(phi) => phi.ring(),
        }
    }

    /// The linear operator whose kernel is the invariant space.
    fn defect(&self, f: &Poly) -> Result<Poly> {
        match self {
            InvariantSource::Derivation(d) => d.apply(f),
            InvariantSource::Exp(phi) => {
                let ext = phi.extended_ring();
                ext.nf(&(&phi.apply(f)? - &f.extend(ext.nvars())))
            }
        }
    }
}

/// Basis of the invariants of degree at most `d` (kernel of `D`, or fixed
/// points of `φ`), in reduced echelon form; sorted by leading monomial.
pub fn invariants_upto(source: InvariantSource<'_>, d: u32) -> Result<Vec<Poly>> {
    let ring = source.ring().clone();
    let basis = ring.relations().standard_monomials(d)?;
    if basis.len() > MAX_INVARIANT_MONOMIALS {
        return Err(Error::ResourceLimit {
            what: "monomials",
            limit: MAX_INVARIANT_MONOMIALS,
        });
    }
    // rows: basis monomials; columns: monomials of the images
    let images = basis
        .iter()
        .map(|m| source.defect(&Poly::term(m.clone(), Rational::one())))
        .collect::<Result<Vec<_>>>()?;
    let mut cols: Vec<Monomial> = images.iter().flat_map(|g| g.terms().map(|(m, _)| m.clone())).collect();
    cols.sort();
    cols.dedup();
    let mut rows = Vec::with_capacity(basis.len());
    for g in &images {
        rows.push(cols.iter().map(|m| g.coeff(m)).collect::<Vec<_>>());
    }
    let kernel: Vec<Vec<Rational>> = if cols.is_empty() {
        (0..basis.len())
            .map(|i| (0..basis.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        QMatrix::from_rows(rows).left_nullspace()
    };
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    // echelonize with the largest monomial first so each element has a
    // distinct monic leading term
    let nb = basis.len();
    let reversed: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|v| (0..nb).map(|j| v[nb - 1 - j].clone()).collect())
        .collect();
    let echelon = QMatrix::from_rows(reversed).row_space();
    let mut out: Vec<Poly> = echelon
        .iter()
        .map(|row| {
            Poly::from_terms(
                ring.nvars(),
                row.iter()
                    .enumerate()
                    .map(|(j, c)| (basis[nb - 1 - j].clone(), c.clone())),
            )
        })
        .collect();
    let order = MonomialOrder::DegRevLex;
    out.sort_by(|a, b| order.cmp(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
    Ok(out)
}

/// Whether `f` lies in the span of `basis`.
pub fn in_span(basis: &[Poly], f: &Poly) -> bool {
    let mut cols: Vec<Monomial> = basis
        .iter()
        .chain(std::iter::once(f))
        .flat_map(|g| g.terms().map(|(m, _)| m.clone()))
        .collect();
    cols.sort();
    cols.dedup();
    if basis.is_empty() {
        return f.is_zero();
    }
    let m = QMatrix::from_rows(basis.iter().map(|g| cols.iter().map(|c| g.coeff(c)).collect()).collect());
    let v: Vec<Rational> = cols.iter().map(|c| f.coeff(c)).collect();
    m.solve_left(&v).is_some()
}

#[derive(Clone, Debug)]
pub struct GeneratorGuess {
    pub generators: Vec<Poly>,
    /// Basis elements not reached by the chosen generators.
    pub uncovered: Vec<Poly>,
}

impl GeneratorGuess {
    pub fn complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Greedy choice of algebra generators from an invariant basis: walk the
/// basis by degree and keep every element the previous choices miss, up
/// to `max_generators`.
pub fn guess_generators(ring: &PresentedRing, basis: &[Poly], max_generators: usize) -> Result<GeneratorGuess> {
    let mut sorted: Vec<&Poly> = basis.iter().filter(|g| !g.is_constant()).collect();
    sorted.sort_by_key(|g| g.total_degree());
    let mut generators: Vec<Poly> = Vec::new();
    let mut uncovered = Vec::new();
    for g in sorted {
        let inside = if generators.is_empty() {
            false
        } else {
            SubAlgebra::new(ring, generators.clone())?.contains(g)?
        };
        if !inside {
            if generators.len() < max_generators {
                generators.push(g.clone());
            } else {
                uncovered.push(g.clone());
            }
        }
    }
    Ok(GeneratorGuess { generators, uncovered })
}

/// Result of building `φ` with `φ|_A = id` and `φ(F) = F + a^m U`.
#[derive(Clone, Debug)]
pub struct ExpTranslation {
    /// The exponential map, when the requested `m` keeps `B` inside `B[U]`.
    pub map: Option<ExpMap>,
    pub requested_m: u32,
    pub least_m: u32,
    /// Per non-base variable: the least `e` with `a^e x ∈ A[F]`.
    pub denominators: Vec<(String, u32)>,
    pub report: Report,
}

/// Searches up to this power of `a` for expressions of the variables in `A[F]`.
pub const MAX_TRANSLATION_EXPONENT: u32 = 12;

pub fn exp_translation(
    ring: &PresentedRing,
    agens: &[Poly],
    f: &Poly,
    a: &Poly,
    m: u32,
) -> Result<ExpTranslation> {
    if ring.is_zero(a)? {
        return Err(Error::InvalidArgument("a must be nonzero".into()));
    }
    let base_a = SubAlgebra::over_base(ring, agens.to_vec())?;
    if base_a.contains(f)? {
        return Err(Error::InvalidArgument("F already lies in A".into()));
    }
    let mut with_f = agens.to_vec();
    with_f.push(f.clone());
    let af = SubAlgebra::over_base(ring, with_f)?;
    if af.trdeg()? != base_a.trdeg()? + 1 {
        return Err(Error::InvalidArgument("F is algebraic over A".into()));
    }
    let n = ring.nvars();
    let f_tag = af.ngens() - 1;
    let loc_ext = {
        let ext = ring.extend(&[&fresh_name(ring, "U")])?;
        LocalizedModel::new(&ext, &a.extend(n + 1))?
    };

    // a^e x = expr(A-generators, F)
    let mut exprs: Vec<Option<(Poly, u32)>> = vec![None; n];
    let mut denominators = Vec::new();
    for x in 0..n {
        if ring.base_vars().contains(&x) {
            continue;
        }
        let mut found = None;
        for e in 0..=MAX_TRANSLATION_EXPONENT {
            let target = &a.pow(e) * &ring.var(x);
            if let Some(expr) = af.member(&target)? {
                found = Some((expr, e));
                break;
            }
        }
        let (expr, e) = found.ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} is not in A[F] after inverting a (searched up to a^{MAX_TRANSLATION_EXPONENT})",
                ring.names()[x]
            ))
        })?;
        denominators.push((ring.names()[x].clone(), e));
        exprs[x] = Some((expr, e));
    }

    let images_for = |mm: u32| -> Result<Vec<Option<Poly>>> {
        let u = Poly::var(n + 1, n);
        let shifted = &f.extend(n + 1) + &(&a.extend(n + 1).pow(mm) * &u);
        let mut subs: Vec<Poly> = af.gens().iter().map(|g| g.extend(n + 1)).collect();
        subs[f_tag] = shifted;
        let mut out = Vec::with_capacity(n);
        for x in 0..n {
            match &exprs[x] {
                None => out.push(Some(Poly::var(n + 1, x))),
                Some((expr, e)) => out.push(loc_ext.divide(&expr.substitute(&subs), *e)?),
            }
        }
        Ok(out)
    };

    let max_e = denominators.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut least_m = max_e;
    for mm in 0..max_e {
        if images_for(mm)?.iter().all(Option::is_some) {
            least_m = mm;
            break;
        }
    }

    let images = images_for(m)?;
    let mut report = Report::pass();
    for (name, e) in &denominators {
        report.push(format!("denominator of {name}"), format!("({})^{e}", ring.show(a)));
    }
    report.push("least sufficient m", least_m);
    let map = if images.iter().all(Option::is_some) {
        let images: Vec<Poly> = images.into_iter().map(Option::unwrap).collect();
        let phi = ExpMap::new(ring, "U", images)?;
        report.merge(phi.check_exp_axioms()?);
        for g in agens {
            let fixed = phi.extended_ring().equal(&phi.apply(g)?, &g.extend(n + 1))?;
            report.check(fixed, "fixes generator", ring.show(g));
        }
        Some(phi)
    } else {
        let missing: Vec<&str> = images
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_none())
            .map(|(i, _)| ring.names()[i].as_str())
            .collect();
        report.check(false, "image leaves B[U] at", missing.join(", "));
        None
    };
    Ok(ExpTranslation {
        map,
        requested_m: m,
        least_m,
        denominators,
        report,
    })
}
