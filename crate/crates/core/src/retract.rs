//! Retractions, symmetric algebras of ideals, invertibility and the patching
//! of a retract from two localizations.

use crate::poly::{Ideal, Poly};
use crate::ring::{LocalizedModel, PresentedRing, RingMap};
use crate::subalgebra::SubAlgebra;
use crate::{Error, Report, Result};

/// An idempotent endomorphism, certified on every variable.
#[derive(Clone, Debug)]
pub struct Retraction {
    map: RingMap,
}

/// Fails with `NotIdempotent` at the first variable where `π(π(x)) ≠ π(x)`.
pub fn verify_retraction(map: &RingMap) -> Result<Retraction> {
    if !map.source().same_as(map.target()) {
        return Err(Error::InvalidArgument("a retraction must be an endomorphism".into()));
    }
    let ring = map.source();
    for (i, once) in map.images().iter().enumerate() {
        let twice = map.apply(once)?;
        if !ring.equal(&twice, once)? {
            return Err(Error::NotIdempotent {
                var: ring.names()[i].clone(),
                once: ring.show(once),
                twice: ring.show(&twice),
            });
        }
    }
    Ok(Retraction { map: map.clone() })
}

impl Retraction {
    pub fn ring(&self) -> &PresentedRing {
        self.map.source()
    }

    pub fn map(&self) -> &RingMap {
        &self.map
    }

    pub fn image_gens(&self) -> &[Poly] {
        self.map.images()
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.map.apply(f)
    }

    /// `x_i - π(x_i)`, which generate the kernel.
    pub fn kernel_gens(&self) -> Vec<Poly> {
        let ring = self.ring();
        self.image_gens()
            .iter()
            .enumerate()
            .map(|(i, g)| &ring.var(i) - g)
            .filter(|g| !g.is_zero())
            .collect()
    }

    /// The image `π(B)`, generated by the non-constant images of the variables.
    pub fn image(&self) -> Result<SubAlgebra> {
        let ring = self.ring();
        let mut gens: Vec<Poly> = Vec::new();
        for g in self.image_gens() {
            if g.is_constant() {
                continue;
            }
            let mut seen = false;
            for h in &gens {
                if ring.equal(g, h)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                gens.push(g.clone());
            }
        }
        SubAlgebra::new(ring, gens)
    }

    /// `π(p)` for an ideal `p = (gens)`, as an ideal of the image in tag
    /// coordinates (kernel of the presentation included).
    pub fn image_ideal(&self, image: &SubAlgebra, gens: &[Poly]) -> Result<Ideal> {
        let kernel = image.presentation()?.kernel;
        let mut out = Vec::new();
        for g in gens {
            out.push(image.express(&self.apply(g)?)?);
        }
        Ok(kernel.with(out))
    }
}

pub fn retract_image(r: &Retraction) -> Result<SubAlgebra> {
    r.image()
}

/// `Sym_R(I)` for `I = (g_1, ..., g_m)`: the base ring with new variables
/// `t_j` modulo the linear relations coming from syzygies of the `g_j`.
#[derive(Clone, Debug)]
pub struct SymPresentation {
    pub base: PresentedRing,
    pub ideal_gens: Vec<Poly>,
    pub t_names: Vec<String>,
    /// Linear forms `Σ c_j t_j` in the ring of [`SymPresentation::ring`].
    pub syzygies: Vec<Poly>,
    pub ring: PresentedRing,
}

impl SymPresentation {
    pub fn show(&self, f: &Poly) -> String {
        self.ring.show(f)
    }
}

pub fn sym_of_ideal(base: &PresentedRing, gens: &[Poly]) -> Result<SymPresentation> {
    let n = base.nvars();
    let m = gens.len();
    for g in gens {
        if base.is_zero(g)? {
            return Err(Error::InvalidArgument("zero ideal generator".into()));
        }
    }
    // kernel of R[t] -> R[s], t_j -> g_j s; its part of t-degree one is the
    // module of linear syzygies
    let total = n + m + 1;
    let shift: Vec<usize> = (1..=n).collect();
    let s = Poly::var(total, 0);
    let mut eqs: Vec<Poly> = base.relations().gens().iter().map(|r| r.remap(total, &shift)).collect();
    for (j, g) in gens.iter().enumerate() {
        eqs.push(&Poly::var(total, 1 + n + j) - &(&g.remap(total, &shift) * &s));
    }
    let kernel = Ideal::new(total, eqs).eliminate(&[0])?;
    let down: Vec<usize> = std::iter::once(0).chain(0..n + m).collect();
    let t_degree = |f: &Poly| -> Option<u32> {
        let mut degs = f.terms().map(|(mono, _)| (n + 1..total).map(|v| mono.exp(v)).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    };
    let syzygies: Vec<Poly> = kernel
        .reduced_gens()?
        .into_iter()
        .filter(|f| t_degree(f) == Some(1))
        .map(|f| f.remap(n + m, &down))
        .collect();

    let mut t_names = Vec::with_capacity(m);
    for j in 0..m {
        let mut name = format!("t{}", j + 1);
        while base.names().contains(&name) {
            name.push('_');
        }
        t_names.push(name);
    }
    let mut names = base.names().to_vec();
    names.extend(t_names.iter().cloned());
    let mut rels: Vec<Poly> = base.relations().gens().iter().map(|r| r.extend(n + m)).collect();
    rels.extend(syzygies.iter().cloned());
    let ring = PresentedRing::new(names, rels, base.base_vars().to_vec())?;
    Ok(SymPresentation {
        base: base.clone(),
        ideal_gens: gens.to_vec(),
        t_names,
        syzygies,
        ring,
    })
}

/// Evidence for or against invertibility of `I`: with `f ∈ I` nonzero and
/// `Q = (fR : I)`, the ideal is invertible exactly when `I Q = fR`.
#[derive(Clone, Debug)]
pub struct InvertibilityCertificate {
    pub witness: Poly,
    pub colon: Ideal,
    pub invertible: bool,
}

pub fn is_invertible(ring: &PresentedRing, gens: &[Poly]) -> Result<InvertibilityCertificate> {
    let mut witness = None;
    for g in gens {
        if !ring.is_zero(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    let witness = witness.ok_or_else(|| Error::InvalidArgument("zero ideal".into()))?;
    is_invertible_with(ring, gens, &witness)
}

pub fn is_invertible_with(
    ring: &PresentedRing,
    gens: &[Poly],
    witness: &Poly,
) -> Result<InvertibilityCertificate> {
    let ideal = ring.ideal(gens.iter().cloned());
    if ring.is_zero(witness)? || !ideal.contains(witness)? {
        return Err(Error::InvalidArgument("witness must be a nonzero element of the ideal".into()));
    }
    let principal = ring.ideal([witness.clone()]);
    let colon = principal.quotient_ideal(&ideal)?;
    let product = ring.relations().sum(&ring.ideal(gens.iter().cloned()).product(&colon));
    let invertible = product.equals(&principal)?;
    Ok(InvertibilityCertificate {
        witness: witness.clone(),
        colon,
        invertible,
    })
}

/// Bounded refutation of principality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalityCheck {
    /// No element of degree at most `bound` generates the ideal.
    pub refuted: bool,
    pub bound: u32,
    /// Least degree of a nonzero element, if at most `bound`.
    pub least_degree: Option<u32>,
    /// A degree where the dimension count rules out a principal generator.
    pub mismatch_at: Option<u32>,
}

/// How far past the candidate degree the dimension counts are compared.
const PRINCIPALITY_WINDOW: u32 = 8;

/// Decides whether some `g` of degree at most `bound` could generate the
/// ideal, by comparing `dim I_{≤N}` with `dim R_{≤N-e}` where `e` is the least
/// degree occurring in `I`. Multiplication by `g` shifts degrees exactly when
/// the associated graded ring of `R` is a domain, which is assumed.
pub fn not_principal_up_to(ring: &PresentedRing, gens: &[Poly], bound: u32) -> Result<PrincipalityCheck> {
    let top = bound + PRINCIPALITY_WINDOW;
    let cumulative = |counts: Vec<usize>| -> Vec<usize> {
        counts
            .iter()
            .scan(0, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    };
    let ring_dims = cumulative(ring.relations().hilbert_counts(top)?);
    let quot_dims = cumulative(ring.ideal(gens.iter().cloned()).hilbert_counts(top)?);
    let ideal_dim = |n: u32| ring_dims[n as usize] - quot_dims[n as usize];
    let Some(e) = (0..=bound).find(|&n| ideal_dim(n) > 0) else {
        return Ok(PrincipalityCheck {
            refuted: true,
            bound,
            least_degree: None,
            mismatch_at: None,
        });
    };
    let mismatch_at = (e..=top).find(|&n| ideal_dim(n) != ring_dims[(n - e) as usize]);
    Ok(PrincipalityCheck {
        refuted: mismatch_at.is_some(),
        bound,
        least_degree: Some(e),
        mismatch_at,
    })
}

/// `y` is a nonzerodivisor on `C / xC`, i.e. `(xC : y) = xC`.
pub fn is_regular_mod(y: &Poly, x: &Poly, ring: &PresentedRing) -> Result<bool> {
    if ring.is_zero(x)? || ring.is_zero(y)? {
        return Err(Error::InvalidArgument("x and y must be nonzero".into()));
    }
    let xc = ring.ideal([x.clone()]);
    xc.quotient(y)?.equals(&xc)
}

/// The ideals `M_n = a^n A_x ∩ A` in the tag presentation of `A`.
#[derive(Clone, Debug)]
pub struct Filtration {
    ring: PresentedRing,
    a: Poly,
    x: Poly,
}

impl Filtration {
    pub fn new(algebra: &SubAlgebra, a: &Poly, x: &Poly) -> Result<Filtration> {
        let ring = algebra.presented()?;
        let a = algebra.express(a)?;
        let x = algebra.express(x)?;
        if ring.is_zero(&a)? || ring.is_zero(&x)? {
            return Err(Error::InvalidArgument("a and x must be nonzero".into()));
        }
        Ok(Filtration { ring, a, x })
    }

    /// The presentation of `A` the ideals live in.
    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn x(&self) -> &Poly {
        &self.x
    }

    pub fn m(&self, n: u32) -> Result<Ideal> {
        Ok(self.ring.ideal([self.a.pow(n)]).saturate(&self.x)?.0)
    }
}

pub fn compute_mn(algebra: &SubAlgebra, a: &Poly, x: &Poly, n: u32) -> Result<Ideal> {
    Filtration::new(algebra, a, x)?.m(n)
}

/// Input of the patching construction: `B_x = A_x[F]`, `B_y = A_y[G]`.
#[derive(Clone, Debug)]
pub struct PatchData {
    /// `A`, built over the base ring.
    pub algebra: SubAlgebra,
    /// Expected numerator of the transition factor `λ = a / y^m`, if known.
    pub a: Option<Poly>,
    pub x: Poly,
    pub y: Poly,
    pub f: Poly,
    pub g: Poly,
    pub tag: String,
    pub bound: u32,
}

impl PatchData {
    /// Replaces `F, G` by `F - π(F), G - π(G)`.
    pub fn normalized(&self, pi: &Retraction) -> Result<PatchData> {
        let ring = pi.ring();
        let mut out = self.clone();
        out.f = ring.nf(&(&self.f - &pi.apply(&self.f)?))?;
        out.g = ring.nf(&(&self.g - &pi.apply(&self.g)?))?;
        Ok(out)
    }
}

/// Search bounds for the exponents in the patch pipeline.
pub const PATCH_SEARCH_BOUND: u32 = 20;

#[derive(Clone, Debug)]
pub struct PatchOutcome {
    pub report: Report,
    /// `λ = a / y^m`.
    pub lambda_num: Poly,
    pub lambda_exp: u32,
    /// `(xy)^n ∈ aR`.
    pub unit_exp: u32,
    /// `M_0, ..., M_N` in the tag presentation of `A`.
    pub m_ideals: Vec<Ideal>,
    pub filtration: Filtration,
    /// Canonical generators of `I = M_1 ∩ R`, in base-ring coordinates.
    pub i_gens: Vec<Poly>,
    pub base: PresentedRing,
    pub invertibility: InvertibilityCertificate,
}

/// Runs the patching argument on concrete data and checks each step.
pub fn verify_patch_decomposition(p: &PatchData, pi: &Retraction) -> Result<PatchOutcome> {
    let ring = pi.ring().clone();
    let alg = &p.algebra;
    let mut report = Report::pass();
    let show = |f: &Poly| ring.show(f);

    for (name, v) in [("x", &p.x), ("y", &p.y)] {
        if ring.is_zero(v)? {
            return Err(Error::InvalidArgument(format!("{name} must be nonzero")));
        }
        if ring.in_base(v)?.is_none() {
            return Err(Error::InvalidArgument(format!("{name} must lie in the base ring")));
        }
    }
    let base = ring.base_ring()?;
    let xb = base.nf(&ring.to_base_coords(&ring.in_base(&p.x)?.unwrap()))?;
    let yb = base.nf(&ring.to_base_coords(&ring.in_base(&p.y)?.unwrap()))?;
    if !is_regular_mod(&yb, &xb, &base)? {
        return Err(Error::Precondition(format!(
            "{} is not regular modulo {}",
            show(&p.y),
            show(&p.x)
        )));
    }
    for g in alg.gens() {
        if !ring.equal(&pi.apply(g)?, g)? {
            return Err(Error::Precondition(format!("{} is not fixed by the retraction", show(g))));
        }
    }
    report.push("y regular mod x", "yes");

    // normalized data
    for (name, v) in [("F", &p.f), ("G", &p.g)] {
        let image = pi.apply(v)?;
        if !image.is_zero() {
            return Err(Error::NormalizationFailed(format!("pi({name}) = {}", show(&image))));
        }
    }

    // B_x = A_x[F] and B_y = A_y[G], certified on the variables
    let local_gen = |loc: &Poly, gen: &Poly, label: &str| -> Result<(SubAlgebra, Vec<Option<(Poly, u32)>>)> {
        let mut gens = alg.gens().to_vec();
        gens.push(gen.clone());
        let sub = SubAlgebra::new(&ring, gens)?;
        let mut exprs = Vec::new();
        for v in 0..ring.nvars() {
            if ring.base_vars().contains(&v) {
                exprs.push(None);
                continue;
            }
            let mut found = None;
            for e in 0..=PATCH_SEARCH_BOUND {
                if let Some(expr) = sub.member(&(&loc.pow(e) * &ring.var(v)))? {
                    found = Some((expr, e));
                    break;
                }
            }
            let Some((expr, e)) = found else {
                return Err(Error::DecompositionFailed(format!(
                    "{} not in A[{label}] after inverting {}",
                    ring.names()[v],
                    show(loc)
                )));
            };
            exprs.push(Some((expr, e)));
        }
        Ok((sub, exprs))
    };
    let (_, fx) = local_gen(&p.x, &p.f, "F")?;
    let (sub_g, gy) = local_gen(&p.y, &p.g, "G")?;
    for (v, e) in fx.iter().enumerate().filter_map(|(v, e)| e.as_ref().map(|e| (v, e))) {
        report.push(format!("({})^{}*{} in A[F]", show(&p.x), e.1, ring.names()[v]), "yes");
    }
    for (v, e) in gy.iter().enumerate().filter_map(|(v, e)| e.as_ref().map(|e| (v, e))) {
        report.push(format!("({})^{}*{} in A[G]", show(&p.y), e.1, ring.names()[v]), "yes");
    }

    // F = λ G with λ = a / y^m
    let by_g = LocalizedModel::new(&ring, &p.g)?;
    let mut found = None;
    for m in 0..=PATCH_SEARCH_BOUND {
        if let Some(q) = by_g.divide(&(&p.y.pow(m) * &p.f), 1)? {
            found = Some((q, m));
            break;
        }
    }
    let (q, m) = found.ok_or_else(|| {
        Error::LambdaNotUnit(format!("F / G is not of the form a / y^m with m <= {PATCH_SEARCH_BOUND}"))
    })?;
    let a_poly = ring
        .in_base(&q)?
        .ok_or_else(|| Error::LambdaNotUnit(format!("numerator {} is not in the base ring", show(&q))))?;
    if !ring.equal(&(&p.y.pow(m) * &p.f), &(&a_poly * &p.g))? {
        return Err(Error::Internal("transition factor does not reproduce F".into()));
    }
    if let Some(expected) = &p.a {
        if !ring.equal(expected, &a_poly)? {
            return Err(Error::LambdaNotUnit(format!(
                "numerator {} differs from the supplied {}",
                show(&a_poly),
                show(expected)
            )));
        }
    }
    let ab = base.nf(&ring.to_base_coords(&a_poly))?;
    let xy = &xb * &yb;
    let a_ideal = base.ideal([ab.clone()]);
    let mut unit_exp = None;
    for n in 0..=PATCH_SEARCH_BOUND {
        if a_ideal.contains(&xy.pow(n))? {
            unit_exp = Some(n);
            break;
        }
    }
    let unit_exp = unit_exp.ok_or_else(|| {
        Error::LambdaNotUnit(format!(
            "no power of xy up to {PATCH_SEARCH_BOUND} lies in ({})",
            base.show(&ab)
        ))
    })?;
    report.push("lambda", format!("({}) / ({})^{m}", show(&a_poly), show(&p.y)));
    report.push("mu", "0");
    report.push("unit certificate", format!("(xy)^{unit_exp} in ({})", base.show(&ab)));

    // M_n
    let filtration = Filtration::new(alg, &a_poly, &p.x)?;
    let pa = filtration.ring().clone();
    let m_ideals = (0..=p.bound).map(|n| filtration.m(n)).collect::<Result<Vec<_>>>()?;

    // M_n T^n ⊆ B with T = G / y^m
    let by_y = LocalizedModel::new(&ring, &p.y)?;
    for (n, mn) in m_ideals.iter().enumerate() {
        for h in pa.canonical_gens(mn)? {
            let h_amb = alg.evaluate(&h)?;
            let num = &h_amb * &p.g.pow(n as u32);
            if by_y.divide(&num, m * n as u32)?.is_none() {
                return Err(Error::DecompositionFailed(format!(
                    "M_{n} generator {} times {}^{n} leaves B",
                    show(&h_amb),
                    p.tag
                )));
            }
        }
    }

    // each variable's expansion in T has its n-th coefficient in M_n
    let y_tag = alg.express(&p.y)?;
    let pa_by_y = LocalizedModel::new(&pa, &y_tag)?;
    let g_tag = sub_g.ngens() - 1;
    let na = alg.ngens();
    for (v, entry) in gy.iter().enumerate() {
        let Some((expr, e)) = entry else { continue };
        for (k, coeff) in expr.coefficients_in(g_tag).iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let c = coeff.restrict(na);
            let scaled = &c * &y_tag.pow(m * k as u32);
            let value = pa_by_y.divide(&scaled, *e)?.ok_or_else(|| {
                Error::DecompositionFailed(format!(
                    "coefficient of {}^{k} in {} is not in A",
                    p.tag,
                    ring.names()[v]
                ))
            })?;
            if k as u32 <= p.bound && !m_ideals[k].contains(&value)? {
                return Err(Error::DecompositionFailed(format!(
                    "coefficient of {}^{k} in {} is {}, outside M_{k}",
                    p.tag,
                    ring.names()[v],
                    show(&alg.evaluate(&value)?)
                )));
            }
        }
    }
    report.push("equation (B = sum M_n T^n)", format!("both inclusions hold up to degree {}", p.bound));

    // I = M_1 ∩ R
    let m1 = &m_ideals[1.min(m_ideals.len() - 1)];
    let nb = pa.base_vars().len();
    let non_base: Vec<usize> = (nb..pa.nvars()).collect();
    let contracted = m1.eliminate(&non_base)?;
    let restrict_map: Vec<usize> = (0..pa.nvars()).map(|v| if v < nb { v } else { 0 }).collect();
    let i_ideal = base.ideal(contracted.gens().iter().map(|g| g.remap(nb, &restrict_map)));
    let i_gens = base.canonical_gens(&i_ideal)?;
    let m1_shown: Vec<String> = pa
        .canonical_gens(m1)?
        .iter()
        .map(|g| alg.evaluate(g).map(|h| show(&h)))
        .collect::<Result<_>>()?;
    report.push("M_1", format!("({})A", m1_shown.join(", ")));
    let i_shown: Vec<String> = i_gens.iter().map(|g| base.show(g)).collect();
    report.push("I", format!("({})R", i_shown.join(", ")));
    let invertibility = if i_gens.is_empty() {
        return Err(Error::DecompositionFailed("I is the zero ideal".into()));
    } else {
        is_invertible(&base, &i_gens)?
    };
    report.check(invertibility.invertible, "I invertible", invertibility.invertible);

    // the syzygies of I vanish on the images i_j T
    let sym = sym_of_ideal(&base, &i_gens)?;
    for s in &sym.syzygies {
        let mut images: Vec<Poly> = base.vars();
        images.extend(i_gens.iter().cloned());
        let value = base.nf(&s.substitute(&images))?;
        report.check(value.is_zero(), "syzygy vanishes", sym.show(s));
    }

    Ok(PatchOutcome {
        report,
        lambda_num: a_poly,
        lambda_exp: m,
        unit_exp,
        m_ideals,
        filtration,
        i_gens,
        base,
        invertibility,
    })
}

/// Classification of `pB ∩ A` for a retraction `π: B -> A` and an element `p`
/// asserted prime: zero, `π(p)A`, or out of scope because `π(p)` is a unit.
/// `factors`, when given, is a claimed factorization of `π(p)`.
pub fn prime_image_analysis(pi: &Retraction, p: &Poly, factors: &[Poly]) -> Result<Report> {
    let ring = pi.ring();
    if ring.is_zero(p)? {
        return Err(Error::InvalidArgument("p must be nonzero".into()));
    }
    let image = pi.image()?;
    let pa = image.presented()?;
    let pp = pi.apply(p)?;
    let q = image.contract_ideal(&[p.clone()])?;
    let q_gens = pa.canonical_gens(&q)?;
    let shown: Vec<String> = q_gens.iter().map(|g| image.show_tags(g)).collect();
    let mut report = Report::pass().with("pi(p)", ring.show(&pp));
    let contraction = if shown.is_empty() { "(0)".to_string() } else { format!("({})", shown.join(", ")) };
    report.push("contraction", contraction);

    if ring.is_unit(&pp)? {
        report.push("branch", "precondition-violated");
        let dim_a = pa.krull_dim()?.unwrap_or(0);
        let dim_quot = q.krull_dim()?;
        let height = dim_quot.map_or(dim_a, |d| dim_a - d);
        report.push("height", height);
        return Ok(report);
    }
    let pp_tag = image.express(&pp)?;
    if q_gens.is_empty() {
        report.push("branch", "zero");
    } else if q.equals(&pa.ideal([pp_tag]))? {
        report.push("branch", "principal");
    } else {
        report.check(false, "branch", "neither zero nor principal");
    }
    if !factors.is_empty() {
        let product = factors.iter().fold(ring.one(), |acc, f| &acc * f);
        report.check(ring.equal(&product, &pp)?, "factorization", {
            let parts: Vec<String> = factors.iter().map(|f| ring.show(f)).collect();
            parts.join(" * ")
        });
        let mut proper = factors.len() > 1;
        for f in factors {
            proper &= !ring.is_unit(f)?;
        }
        report.push("pi(p) reducible", proper);
    }
    Ok(report)
}

/// A prime `P = (gens)B` whose contraction has larger height than `P`
/// obstructs going-down for `A ⊆ B`. Heights are measured as dimension drops.
pub fn going_down_obstruction(algebra: &SubAlgebra, gens: &[Poly]) -> Result<Report> {
    let ring = algebra.ambient();
    let pa = algebra.presented()?;
    let dim_b = ring.krull_dim()?.unwrap_or(0);
    let dim_a = pa.krull_dim()?.unwrap_or(0);
    let height_b = dim_b - ring.ideal(gens.iter().cloned()).krull_dim()?.unwrap_or(0);
    let q = algebra.contract_ideal(gens)?;
    let height_a = dim_a - q.krull_dim()?.unwrap_or(0);
    let shown: Vec<String> = pa.canonical_gens(&q)?.iter().map(|g| algebra.show_tags(g)).collect();
    let mut report = Report::pass()
        .with("P", format!("({})B", gens.iter().map(|g| ring.show(g)).collect::<Vec<_>>().join(", ")))
        .with("P ∩ A", format!("({})", shown.join(", ")))
        .with("height P", height_b)
        .with("height P ∩ A", height_a);
    report.check(height_a > height_b, "going-down fails", height_a > height_b);
    Ok(report)
}

/// Minimal number of generators of a homogeneous ideal of a graded ring.
pub fn mu_graded(ring: &PresentedRing, gens: &[Poly]) -> Result<usize> {
    for r in ring.relations().gens() {
        if !r.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("relation {} is not homogeneous", ring.show(r))));
        }
    }
    let mut sorted = Vec::new();
    for g in gens {
        let r = ring.nf(g)?;
        if !r.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("{} is not homogeneous", ring.show(g))));
        }
        if !r.is_zero() {
            sorted.push(r);
        }
    }
    sorted.sort_by_key(|g| g.total_degree());
    let mut kept: Vec<Poly> = Vec::new();
    for g in sorted {
        if !ring.ideal(kept.iter().cloned()).contains(&g)? {
            kept.push(g);
        }
    }
    Ok(kept.len())
}

/// Certifies that `element - f` lies outside the prime `p` for every `f` in
/// the base subring, so it is a unit in the localization at `p`. The check is
/// that the normal form of `element` modulo `p`, in an order eliminating the
/// non-base variables, still involves one of them.
pub fn localized_unit_certificate(ring: &PresentedRing, p: &[Poly], element: &Poly) -> Result<Report> {
    let n = ring.nvars();
    let non_base: Vec<usize> = (0..n).filter(|v| !ring.base_vars().contains(v)).collect();
    let prime = ring.ideal(p.iter().cloned());
    if prime.is_unit()? {
        return Err(Error::InvalidArgument("p is the unit ideal".into()));
    }
    let r = prime.normal_form_eliminating(element, &non_base)?;
    let outside = non_base.iter().any(|&v| r.involves(v));
    let mut report = Report::pass().with("normal form mod p", ring.show(&r));
    report.check(
        outside,
        "element - f outside p for all f in the base",
        if outside { "yes" } else { "no" },
    );
    if outside {
        report.push(
            "conclusion",
            "element - f is a unit at p for every base f, so no retraction of the localization fixes the base",
        );
    }
    Ok(report)
}
