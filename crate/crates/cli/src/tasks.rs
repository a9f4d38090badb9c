//! Runs one task against the built environment and produces its report.

use num_traits::ToPrimitive;
use ralab_core::derivation::{
    exp_from_lnd, exp_translation, guess_generators, invariants_upto, Derivation, ExpMap, InvariantSource,
};
use ralab_core::graded::decompose;
use ralab_core::jet::{jet_decompose, JetMap, DEFAULT_ORDER};
use ralab_core::local::{show_ideal, LocalAlgebra};
use ralab_core::poly::Poly;
use ralab_core::retract::{
    going_down_obstruction, is_invertible, localized_unit_certificate, mu_graded, not_principal_up_to,
    prime_image_analysis, sym_of_ideal, verify_patch_decomposition, verify_retraction, PatchData,
};
use ralab_core::ring::{PresentedRing, RingMap};
use ralab_core::subalgebra::{AlgebraicVerdict, SubAlgebra};
use ralab_core::{Error, Report, Status};

use crate::ast::{Task, TaskKind, Value};
use crate::env::{eval, Env, Object};
use crate::error::Pos;

/// Command-line overrides for numeric task options.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub degree: Option<u32>,
    pub cap: Option<u32>,
    pub order: Option<u32>,
}

const DEFAULT_CAP: u32 = 16;
const DEFAULT_DEGREE: u32 = 4;

/// Why a task could not produce a verdict of its own.
enum Problem {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Problem {
    fn from(e: Error) -> Problem {
        Problem::Engine(e)
    }
}

type Outcome = Result<Report, Problem>;

struct Ctx<'a> {
    env: &'a Env,
    task: &'a Task,
    pos: Pos,
    overrides: Overrides,
}

impl<'a> Ctx<'a> {
    fn arg(&self, i: usize) -> Result<&'a Object, Problem> {
        let r = self
            .task
            .args
            .get(i)
            .ok_or_else(|| Problem::Usage(format!("{} needs at least {} argument(s)", self.task.kind.as_str(), i + 1)))?;
        self.env.get(&r.name, self.pos).map_err(|e| Problem::Usage(e.to_string()))
    }

    fn usage<T>(&self, message: impl Into<String>) -> Result<T, Problem> {
        Err(Problem::Usage(message.into()))
    }

    fn int(&self, key: &str, default: u32) -> Result<u32, Problem> {
        let forced = match key {
            "degree" => self.overrides.degree,
            "cap" => self.overrides.cap,
            "order" => self.overrides.order,
            _ => None,
        };
        if let Some(v) = forced {
            return Ok(v);
        }
        match self.task.option(key) {
            None => Ok(default),
            Some(Value::Int(n)) => n.to_u32().ok_or_else(|| Problem::Usage(format!("`{key}` is too large"))),
            Some(_) => self.usage(format!("`{key}` must be an integer")),
        }
    }

    fn poly_opt(&self, key: &str, names: &[String]) -> Result<Option<Poly>, Problem> {
        match self.task.option(key) {
            None => Ok(None),
            Some(Value::Int(n)) => Ok(Some(eval(&crate::ast::Expr::Int(n.clone()), names).map_err(Problem::Usage)?)),
            Some(Value::Poly(e)) => Ok(Some(eval(e, names).map_err(Problem::Usage)?)),
            Some(Value::List(_)) => self.usage(format!("`{key}` must be a single polynomial")),
        }
    }

    fn poly(&self, key: &str, names: &[String]) -> Result<Poly, Problem> {
        self.poly_opt(key, names)?
            .ok_or_else(|| Problem::Usage(format!("{} needs `{key} = ...`", self.task.kind.as_str())))
    }

    fn list(&self, key: &str, names: &[String]) -> Result<Option<Vec<Poly>>, Problem> {
        match self.task.option(key) {
            None => Ok(None),
            Some(Value::List(es)) => Ok(Some(
                es.iter().map(|e| eval(e, names)).collect::<Result<_, _>>().map_err(Problem::Usage)?,
            )),
            Some(_) => Ok(Some(vec![self.poly(key, names)?])),
        }
    }

    fn ring(&self, i: usize) -> Result<PresentedRing, Problem> {
        match self.arg(i)? {
            Object::Ring(r) => Ok(r.clone()),
            Object::Subalgebra(a) => Ok(a.ambient().clone()),
            Object::Derivation(d) => Ok(d.ring().clone()),
            Object::Map(m) => Ok(m.source().clone()),
            Object::Ideal { ring, .. } => Ok(ring.clone()),
        }
    }

    fn subalgebra(&self, i: usize) -> Result<&'a SubAlgebra, Problem> {
        match self.arg(i)? {
            Object::Subalgebra(a) => Ok(a),
            _ => self.usage(format!("argument {} must be a subalgebra", i + 1)),
        }
    }

    fn derivation(&self, i: usize) -> Result<&'a Derivation, Problem> {
        match self.arg(i)? {
            Object::Derivation(d) => Ok(d),
            _ => self.usage(format!("argument {} must be a derivation", i + 1)),
        }
    }

    fn map(&self, i: usize) -> Result<&'a RingMap, Problem> {
        match self.arg(i)? {
            Object::Map(m) => Ok(m),
            _ => self.usage(format!("argument {} must be a map", i + 1)),
        }
    }

    /// An ideal given as a declared ideal argument or as `gens = [...]`.
    fn ideal(&self, i: usize) -> Result<(PresentedRing, Vec<Poly>), Problem> {
        match self.arg(i)? {
            Object::Ideal { ring, gens } => Ok((ring.clone(), gens.clone())),
            _ => {
                let ring = self.ring(i)?;
                let gens = self
                    .list("gens", ring.names())?
                    .ok_or_else(|| Problem::Usage("an ideal argument or `gens = [...]` is required".into()))?;
                Ok((ring, gens))
            }
        }
    }
}

fn shown(ring: &PresentedRing, polys: &[Poly]) -> String {
    polys.iter().map(|p| ring.show(p)).collect::<Vec<_>>().join(", ")
}

fn tags_shown(alg: &SubAlgebra, polys: &[Poly]) -> String {
    format!("({})", polys.iter().map(|p| alg.show_tags(p)).collect::<Vec<_>>().join(", "))
}

/// Runs the task and applies its `expect` lines.
pub fn run_task(env: &Env, task: &Task, pos: Pos, overrides: Overrides) -> Report {
    let ctx = Ctx { env, task, pos, overrides };
    let mut report = match dispatch(&ctx) {
        Ok(r) => r,
        Err(Problem::Usage(m)) => Report::new(Status::Error).with("error", m),
        Err(Problem::Engine(e)) => engine_error(e),
    };
    if report.status != Status::Error {
        for (key, want) in &task.expects {
            let found: Vec<&str> =
                report.witnesses.iter().filter(|w| &w.name == key).map(|w| w.value.as_str()).collect();
            if !found.contains(&want.as_str()) {
                let got = if found.is_empty() { "absent".to_string() } else { found.join(" | ") };
                report.check(false, format!("expected {key}"), format!("{want} (found {got})"));
            }
        }
    }
    if report.status == Status::Fail && report.witnesses.is_empty() {
        report.push("failure", "no witness recorded");
    }
    report
}

fn engine_error(e: Error) -> Report {
    match e {
        Error::ResourceLimit { .. } => Report::new(Status::Unknown).with("resource limit", e),
        Error::NotIdempotent { ref var, ref once, ref twice } => Report::new(Status::Fail)
            .with("not idempotent at", var)
            .with(format!("pi({var})"), once)
            .with(format!("pi(pi({var}))"), twice),
        Error::NotWellDefined { ref relation, ref image } => Report::new(Status::Fail)
            .with("relation", relation)
            .with("image of relation", image),
        Error::InvalidArgument(_) | Error::Internal(_) => Report::new(Status::Error).with("error", e),
        other => Report::fail("failure", other),
    }
}

fn dispatch(c: &Ctx<'_>) -> Outcome {
    match c.task.kind {
        TaskKind::CheckRetraction => check_retraction(c),
        TaskKind::Lnd => lnd(c),
        TaskKind::Exp => exp(c),
        TaskKind::Invariants | TaskKind::Kernel => invariants(c),
        TaskKind::GradedDecompose => graded(c),
        TaskKind::JetDecompose => jet(c),
        TaskKind::PatchVerify => patch(c),
        TaskKind::PrimeImage => prime_image(c),
        TaskKind::LocalReport => local(c),
        TaskKind::Member => member(c),
        TaskKind::Contract => contract(c),
        TaskKind::Trdeg => trdeg(c),
        TaskKind::Invertible => invertible(c),
        TaskKind::Mu => mu(c),
        TaskKind::Sym => sym(c),
        TaskKind::Apply => apply(c),
        TaskKind::Product => product(c),
        TaskKind::Algebraic => algebraic(c),
        TaskKind::GoingDown => going_down(c),
        TaskKind::UnitCertificate => unit_certificate(c),
        TaskKind::ExpTranslation => translation(c),
    }
}

fn check_retraction(c: &Ctx<'_>) -> Outcome {
    let map = c.map(0)?;
    let pi = verify_retraction(map)?;
    let ring = pi.ring();
    let mut report = Report::pass();
    for (name, img) in ring.names().iter().zip(pi.image_gens()) {
        report.push(format!("pi({name})"), ring.show(img));
    }
    for f in c.list("fixes", ring.names())?.unwrap_or_default() {
        let fixed = ring.equal(&pi.apply(&f)?, &f)?;
        report.check(fixed, format!("pi({0}) = {0}", ring.show(&f)), fixed);
    }
    let image = pi.image()?;
    report.push("image generators", shown(ring, image.gens()));
    Ok(report)
}

fn lnd(c: &Ctx<'_>) -> Outcome {
    let d = c.derivation(0)?;
    let cap = c.int("cap", DEFAULT_CAP)? as usize;
    let ring = d.ring();
    let mut report = Report::pass().with("well-defined", "yes");
    for (rel, _) in ring.relations().gens().iter().zip(0..) {
        report.push(format!("D({})", ring.show(rel)), ring.show(&ring.nf(&d.apply(rel)?)?));
    }
    let lnd = d.check_lnd(cap)?;
    for (name, order) in ring.names().iter().zip(&lnd.orders) {
        let value = order.map_or(format!("> {cap}"), |o| o.to_string());
        report.push(format!("order of {name}"), value);
    }
    if !lnd.verified {
        report.status = Status::Unknown;
        report.push("cap reached", cap);
    }
    Ok(report)
}

fn exp(c: &Ctx<'_>) -> Outcome {
    let phi = match c.arg(0)? {
        Object::Derivation(d) => exp_from_lnd(d, c.int("cap", DEFAULT_CAP)? as usize)?,
        Object::Map(m) => exp_of_map(c, m)?,
        _ => return c.usage("exp needs a derivation or a map into a ring with one extra variable"),
    };
    let ext = phi.extended_ring();
    let mut report = Report::pass();
    for (name, img) in phi.ring().names().iter().zip(phi.images()) {
        report.push(format!("phi({name})"), ext.show(img));
    }
    report.merge(phi.check_exp_axioms()?);
    Ok(report)
}

/// A map `B -> B[U]` read as an exponential map with tag `U`, the last
/// variable of the target.
fn exp_of_map(c: &Ctx<'_>, m: &RingMap) -> Result<ExpMap, Problem> {
    let (s, t) = (m.source(), m.target());
    if t.nvars() != s.nvars() + 1 || t.names()[..s.nvars()] != *s.names() {
        return c.usage("the target must be the source ring with one extra variable appended");
    }
    let tag = t.names()[s.nvars()].clone();
    Ok(ExpMap::new(s, &tag, m.images().to_vec())?)
}

fn invariants(c: &Ctx<'_>) -> Outcome {
    let degree = c.int("degree", DEFAULT_DEGREE)?;
    let (ring, basis) = match c.arg(0)? {
        Object::Derivation(d) => (d.ring().clone(), invariants_upto(InvariantSource::Derivation(d), degree)?),
        Object::Map(m) => {
            let phi = exp_of_map(c, m)?;
            let basis = invariants_upto(InvariantSource::Exp(&phi), degree)?;
            (m.source().clone(), basis)
        }
        _ => return c.usage("needs a derivation or an exponential map"),
    };
    let mut report = Report::pass().with("degree bound", degree).with("dimension", basis.len());
    report.push("basis", shown(&ring, &basis));
    if c.task.kind == TaskKind::Kernel {
        let mut guess = guess_generators(&ring, &basis, c.int("max", 8)? as usize)?;
        guess.generators.sort_by_cached_key(|g| (g.total_degree(), ring.show(g)));
        report.push("generators", format!("({})", shown(&ring, &guess.generators)));
        for g in &guess.generators {
            report.push("generator", ring.show(g));
        }
        if !guess.complete() {
            report.status = Status::Unknown;
            report.push("uncovered", shown(&ring, &guess.uncovered));
        }
    }
    Ok(report)
}

fn graded(c: &Ctx<'_>) -> Outcome {
    let pi = verify_retraction(c.map(0)?)?;
    let split = decompose(&pi)?;
    let ring = pi.ring();
    let names = split.y_names();
    let mut report = split.report.clone();
    for (name, y) in names.iter().zip(&split.y_forms) {
        report.push(name.clone(), ring.show(y));
    }
    let y_ring = PresentedRing::new(names.clone(), vec![], vec![])?;
    for (x, h) in ring.names().iter().zip(&split.images_in_y) {
        report.push(format!("pi({x}) in Y"), y_ring.show(h));
    }
    report.push("image", format!("Q[{}]", names[..split.rank].join(", ")));
    Ok(report)
}

fn jet(c: &Ctx<'_>) -> Outcome {
    let map = c.map(0)?;
    let ring = map.source();
    if !ring.is_free() || !ring.same_as(map.target()) {
        return c.usage("jet-decompose needs an endomorphism of a polynomial ring");
    }
    let order = c.int("order", DEFAULT_ORDER)?;
    let pi = JetMap::new(map.images().to_vec(), order)?;
    let split = jet_decompose(&pi)?;
    let mut report = split.report.clone().with("order", order);
    for (i, y) in split.y.iter().enumerate() {
        report.push(format!("Y{}", i + 1), ring.show(y));
    }
    Ok(report)
}

fn patch(c: &Ctx<'_>) -> Outcome {
    let alg = c.subalgebra(0)?;
    let pi = verify_retraction(c.map(1)?)?;
    let names = alg.ambient().names();
    let data = PatchData {
        algebra: alg.clone(),
        a: c.poly_opt("a", names)?,
        x: c.poly("x", names)?,
        y: c.poly("y", names)?,
        f: c.poly("F", names)?,
        g: c.poly("G", names)?,
        tag: "T".into(),
        bound: c.int("bound", 2)?,
    };
    let data = if c.int("normalize", 0)? > 0 { data.normalized(&pi)? } else { data };
    Ok(verify_patch_decomposition(&data, &pi)?.report)
}

fn prime_image(c: &Ctx<'_>) -> Outcome {
    let pi = verify_retraction(c.map(0)?)?;
    let names = pi.ring().names();
    let p = c.poly("p", names)?;
    let factors = c.list("factors", names)?.unwrap_or_default();
    Ok(prime_image_analysis(&pi, &p, &factors)?)
}

fn local(c: &Ctx<'_>) -> Outcome {
    let ring = c.ring(0)?;
    let alg = LocalAlgebra::new(&ring)?;
    let mut report = Report::pass().with("krull dimension", alg.krull_dim());
    if alg.is_artinian() {
        report.push("vector dimension", alg.vector_dim()?);
        report.push("basis", shown(&ring, &alg.artinian_basis()?));
        let (socle, gorenstein) = alg.socle_and_gorenstein()?;
        report.push("socle dimension", socle.len());
        report.push("socle", shown(&ring, &socle));
        report.push("gorenstein", if gorenstein { "Gorenstein" } else { "not Gorenstein" });
    }
    for f in c.list("annihilator", ring.names())?.unwrap_or_default() {
        let ann = alg.annihilator(&f)?;
        report.push(format!("ann({})", ring.show(&f)), show_ideal(&ring, &ann));
    }
    let candidate = c.poly_opt("candidate", ring.names())?;
    let depth = alg.depth_and_cm_report(candidate.as_ref())?;
    report.merge(depth);
    Ok(report)
}

fn member(c: &Ctx<'_>) -> Outcome {
    let alg = c.subalgebra(0)?;
    let ring = alg.ambient();
    let f = c.poly("f", ring.names())?;
    Ok(match alg.member(&f)? {
        Some(e) => Report::pass().with("member", "yes").with("expression", alg.show_tags(&e)),
        None => Report::fail("not a member", ring.show(&f)).with("member", "no"),
    })
}

fn contract(c: &Ctx<'_>) -> Outcome {
    let alg = c.subalgebra(0)?;
    let ring = alg.ambient();
    let gens = match c.task.args.get(1) {
        Some(_) => match c.arg(1)? {
            Object::Ideal { ring: r, gens } if r.same_as(ring) => gens.clone(),
            _ => return c.usage("second argument must be an ideal of the ambient ring"),
        },
        None => c
            .list("gens", ring.names())?
            .ok_or_else(|| Problem::Usage("contract needs an ideal or `gens = [...]`".into()))?,
    };
    let contracted = alg.contract_ideal(&gens)?;
    let tags = alg.presented()?;
    let canon = tags.canonical_gens(&contracted)?;
    let mut report = Report::pass()
        .with("ideal", format!("({})", shown(ring, &gens)))
        .with("contraction", tags_shown(alg, &canon));
    let dim_a = tags.krull_dim()?.unwrap_or(0);
    let height = contracted.krull_dim()?.map_or(dim_a, |d| dim_a.saturating_sub(d));
    report.push("height", height);
    if let Some(other) = c.list("compare", &tags.names().to_vec())? {
        let same = contracted.equals(&tags.ideal(other.clone()))?;
        let label = format!("contraction = {}", tags_shown(alg, &other));
        report.push(label, same);
    }
    Ok(report)
}

fn trdeg(c: &Ctx<'_>) -> Outcome {
    let alg = c.subalgebra(0)?;
    let pres = alg.presentation()?;
    let tags = alg.presented()?;
    let kernel = tags.canonical_gens(&pres.kernel).unwrap_or_default();
    Ok(Report::pass().with("trdeg", alg.trdeg()?).with("relations", tags_shown(alg, &kernel)))
}

fn invertible(c: &Ctx<'_>) -> Outcome {
    let (ring, gens) = c.ideal(0)?;
    let cert = is_invertible(&ring, &gens)?;
    let colon = ring.canonical_gens(&cert.colon)?;
    let mut report = Report::pass()
        .with("ideal", format!("({})", shown(&ring, &gens)))
        .with("witness", ring.show(&cert.witness))
        .with("colon", format!("({})", shown(&ring, &colon)));
    report.check(cert.invertible, "invertible", cert.invertible);
    if let Some(Value::Int(_)) = c.task.option("degree") {
        let bound = c.int("degree", DEFAULT_DEGREE)?;
        let check = not_principal_up_to(&ring, &gens, bound)?;
        report.check(check.refuted, format!("not principal up to degree {bound}"), check.refuted);
    }
    Ok(report)
}

fn mu(c: &Ctx<'_>) -> Outcome {
    match c.arg(0)? {
        Object::Subalgebra(alg) => {
            let tags = alg.presented()?;
            let gens = c
                .list("gens", tags.names())?
                .ok_or_else(|| Problem::Usage("mu on a subalgebra needs `gens = [...]` in its tags".into()))?;
            let extended: Vec<Poly> = gens.iter().map(|g| alg.evaluate(g)).collect::<Result<_, _>>()?;
            let in_a = mu_graded(&tags, &gens)?;
            let in_b = mu_graded(alg.ambient(), &extended)?;
            Ok(Report::pass().with("mu(J)", in_a).with("mu(JB)", in_b))
        }
        _ => {
            let (ring, gens) = c.ideal(0)?;
            Ok(Report::pass().with("mu", mu_graded(&ring, &gens)?))
        }
    }
}

fn sym(c: &Ctx<'_>) -> Outcome {
    let (ring, gens) = c.ideal(0)?;
    let s = sym_of_ideal(&ring, &gens)?;
    let mut report = Report::pass().with("ideal", format!("({})", shown(&ring, &gens)));
    for rel in &s.syzygies {
        report.push("relation", s.show(rel));
    }
    Ok(report)
}

fn apply(c: &Ctx<'_>) -> Outcome {
    let (ring, value) = match c.arg(0)? {
        Object::Derivation(d) => {
            let f = c.poly("f", d.ring().names())?;
            (d.ring().clone(), d.apply(&f)?)
        }
        Object::Map(m) => {
            let f = c.poly("f", m.source().names())?;
            (m.target().clone(), m.apply(&f)?)
        }
        _ => return c.usage("apply needs a derivation or a map"),
    };
    Ok(Report::pass().with("value", ring.show(&ring.nf(&value)?)))
}

fn product(c: &Ctx<'_>) -> Outcome {
    let (r1, g1) = c.ideal(0)?;
    let (r2, g2) = c.ideal(1)?;
    if !r1.same_as(&r2) {
        return c.usage("both ideals must live in the same ring");
    }
    let prod = r1.ideal(g1.clone()).product(&r1.ideal(g2.clone()));
    let canon = r1.canonical_gens(&prod)?;
    Ok(Report::pass().with("product", format!("({})", shown(&r1, &canon))))
}

fn algebraic(c: &Ctx<'_>) -> Outcome {
    let alg = c.subalgebra(0)?;
    let ring = alg.ambient();
    let f = c.poly("f", ring.names())?;
    let mut names = alg.tag_names().to_vec();
    names.push("e".into());
    let relation = c.poly("relation", &names)?;
    Ok(match alg.algebraic_witness_check(&f, &relation)? {
        AlgebraicVerdict::AlgebraicOutside => Report::pass()
            .with("relation holds", "yes")
            .with("element outside A", ring.show(&f))
            .with("verdict", "algebraic over A but not in A"),
        AlgebraicVerdict::Inside(e) => Report::fail("element already in A", alg.show_tags(&e)),
        AlgebraicVerdict::WitnessInvalid(v) => Report::fail("relation value", ring.show(&v)),
    })
}

fn going_down(c: &Ctx<'_>) -> Outcome {
    let alg = c.subalgebra(0)?;
    let gens = c
        .list("gens", alg.ambient().names())?
        .ok_or_else(|| Problem::Usage("going-down needs `gens = [...]`".into()))?;
    Ok(going_down_obstruction(alg, &gens)?)
}

fn unit_certificate(c: &Ctx<'_>) -> Outcome {
    let ring = c.ring(0)?;
    let p = c
        .list("p", ring.names())?
        .ok_or_else(|| Problem::Usage("unit-certificate needs `p = [...]`".into()))?;
    let element = c.poly("element", ring.names())?;
    Ok(localized_unit_certificate(&ring, &p, &element)?)
}

fn translation(c: &Ctx<'_>) -> Outcome {
    let ring = c.ring(0)?;
    let names = ring.names();
    let gens = c
        .list("gens", names)?
        .ok_or_else(|| Problem::Usage("exp-translation needs `gens = [...]`".into()))?;
    let f = c.poly("F", names)?;
    let a = c.poly("a", names)?;
    let m = c.int("m", 1)?;
    let t = exp_translation(&ring, &gens, &f, &a, m)?;
    let mut report = t.report.clone();
    report.push("requested m", t.requested_m);
    Ok(report)
}
