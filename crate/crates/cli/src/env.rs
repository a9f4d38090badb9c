//! Builds rings, subalgebras, derivations, maps and ideals from a session.

use std::collections::HashMap;

use num_bigint::BigInt;
use ralab_core::derivation::Derivation;
use ralab_core::poly::{Poly, Rational};
use ralab_core::ring::{PresentedRing, RingMap};
use ralab_core::subalgebra::SubAlgebra;

use crate::ast::{DeclKind, Expr, Session, Task};
use crate::error::{Pos, SessionError};

#[derive(Clone, Debug)]
pub enum Object {
    Ring(PresentedRing),
    Subalgebra(SubAlgebra),
    Derivation(Derivation),
    Map(RingMap),
    Ideal { ring: PresentedRing, gens: Vec<Poly> },
}

impl Object {
    fn what(&self) -> &'static str {
        match self {
            Object::Ring(_) => "a ring",
            Object::Subalgebra(_) => "a subalgebra",
            Object::Derivation(_) => "a derivation",
            Object::Map(_) => "a map",
            Object::Ideal { .. } => "an ideal",
        }
    }
}

/// Declared objects by name, plus the tasks in declaration order.
#[derive(Debug, Default)]
pub struct Env {
    objects: HashMap<String, Object>,
    pub tasks: Vec<(String, Pos, Task)>,
}

/// Evaluates a written polynomial over the given variable names.
pub fn eval(expr: &Expr, names: &[String]) -> Result<Poly, String> {
    let n = names.len();
    Ok(match expr {
        Expr::Int(k) => Poly::constant(n, Rational::from_integer(BigInt::from(k.clone()))),
        Expr::Var(v) => match names.iter().position(|x| x == v) {
            Some(i) => Poly::var(n, i),
            None => return Err(format!("unknown variable `{v}` (variables: {})", names.join(", "))),
        },
        Expr::Neg(e) => -&eval(e, names)?,
        Expr::Add(a, b) => &eval(a, names)? + &eval(b, names)?,
        Expr::Sub(a, b) => &eval(a, names)? - &eval(b, names)?,
        Expr::Mul(a, b) => &eval(a, names)? * &eval(b, names)?,
        Expr::Div(a, b) => {
            let d = eval(b, names)?;
            if !d.is_constant() || d.is_zero() {
                return Err(format!("can only divide by a nonzero constant, not `{b}`"));
            }
            eval(a, names)?.scale(&(Rational::from_integer(1.into()) / d.constant_term()))
        }
        Expr::Pow(base, e) => eval(base, names)?.pow(*e),
    })
}

impl Env {
    pub fn build(session: &Session) -> Result<Env, SessionError> {
        let mut env = Env::default();
        for d in &session.decls {
            let pos = d.span.0;
            let fail = |m: String| SessionError::invalid(pos, m);
            let object = match &d.kind {
                DeclKind::Ring { vars, relations, base } => {
                    for (i, v) in vars.iter().enumerate() {
                        if vars[..i].contains(v) {
                            return Err(fail(format!("variable `{v}` listed twice")));
                        }
                    }
                    let rels = relations.iter().map(|e| eval(e, vars)).collect::<Result<Vec<_>, _>>().map_err(fail)?;
                    let base_idx = base
                        .iter()
                        .map(|b| vars.iter().position(|v| v == b).ok_or_else(|| format!("base variable `{b}` is not a variable")))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(fail)?;
                    let ring = PresentedRing::new(vars.clone(), rels, base_idx).map_err(|e| fail(e.to_string()))?;
                    Object::Ring(ring)
                }
                DeclKind::Subalgebra { ring, gens, over_base } => {
                    let r = env.ring(&ring.name, pos)?;
                    let gens = gens.iter().map(|e| eval(e, r.names())).collect::<Result<Vec<_>, _>>().map_err(fail)?;
                    let alg = if *over_base {
                        SubAlgebra::over_base(&r, gens)
                    } else {
                        SubAlgebra::new(&r, gens)
                    };
                    Object::Subalgebra(alg.map_err(|e| fail(e.to_string()))?)
                }
                DeclKind::Derivation { ring, rules } => {
                    let r = env.ring(&ring.name, pos)?;
                    let images = rule_images(&r, &r, rules, false).map_err(fail)?;
                    Object::Derivation(Derivation::new(&r, images).map_err(|e| fail(e.to_string()))?)
                }
                DeclKind::Map { source, target, rules } => {
                    let s = env.ring(&source.name, pos)?;
                    let t = env.ring(&target.name, pos)?;
                    let images = rule_images(&s, &t, rules, true).map_err(fail)?;
                    Object::Map(RingMap::new(s, t, images).map_err(|e| fail(e.to_string()))?)
                }
                DeclKind::Ideal { ring, gens } => {
                    let r = env.ring(&ring.name, pos)?;
                    let gens = gens.iter().map(|e| eval(e, r.names())).collect::<Result<Vec<_>, _>>().map_err(fail)?;
                    Object::Ideal { ring: r, gens }
                }
                DeclKind::Task(t) => {
                    env.tasks.push((d.name.clone(), pos, t.clone()));
                    continue;
                }
            };
            env.objects.insert(d.name.clone(), object);
        }
        Ok(env)
    }

    pub fn get(&self, name: &str, pos: Pos) -> Result<&Object, SessionError> {
        self.objects.get(name).ok_or_else(|| SessionError::Unresolved { pos, name: name.to_string() })
    }

    pub fn ring(&self, name: &str, pos: Pos) -> Result<PresentedRing, SessionError> {
        match self.get(name, pos)? {
            Object::Ring(r) => Ok(r.clone()),
            other => Err(SessionError::invalid(pos, format!("`{name}` is {}, not a ring", other.what()))),
        }
    }
}

/// Images of the source variables: unlisted variables go to zero for a
/// derivation and to the same-named target variable for a map.
fn rule_images(
    source: &PresentedRing,
    target: &PresentedRing,
    rules: &[(String, Expr)],
    is_map: bool,
) -> Result<Vec<Poly>, String> {
    let mut images: Vec<Option<Poly>> = vec![None; source.nvars()];
    for (v, e) in rules {
        let i = source.var_index(v).ok_or_else(|| format!("`{v}` is not a variable of the source ring"))?;
        if images[i].is_some() {
            return Err(format!("`{v}` has two images"));
        }
        images[i] = Some(eval(e, target.names())?);
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, img)| match img {
            Some(p) => Ok(p),
            None if !is_map => Ok(target.zero()),
            None => {
                let name = &source.names()[i];
                target
                    .var_index(name)
                    .map(|j| target.var(j))
                    .ok_or_else(|| format!("no image given for `{name}`"))
            }
        })
        .collect()
}
