//! Syntax tree of a session file and its canonical printer.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;

use crate::error::Pos;

/// A source position. Positions never take part in tree equality, so a
/// reprinted session compares equal to the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span(pub Pos);

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub span: Span,
    pub kind: DeclKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ref {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Ring {
        vars: Vec<String>,
        relations: Vec<Expr>,
        base: Vec<String>,
    },
    Subalgebra {
        ring: Ref,
        gens: Vec<Expr>,
        over_base: bool,
    },
    Derivation {
        ring: Ref,
        rules: Vec<(String, Expr)>,
    },
    Map {
        source: Ref,
        target: Ref,
        rules: Vec<(String, Expr)>,
    },
    Ideal {
        ring: Ref,
        gens: Vec<Expr>,
    },
    Task(Task),
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Ring { .. } => "ring",
            DeclKind::Subalgebra { .. } => "subalgebra",
            DeclKind::Derivation { .. } => "derivation",
            DeclKind::Map { .. } => "map",
            DeclKind::Ideal { .. } => "ideal",
            DeclKind::Task(_) => "task",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub kind: TaskKind,
    pub args: Vec<Ref>,
    pub options: Vec<(String, Value)>,
    pub anchors: Vec<String>,
    pub expects: Vec<(String, String)>,
}

impl Task {
    pub fn option(&self, key: &str) -> Option<&Value> {
        self.options.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigUint),
    Poly(Expr),
    List(Vec<Expr>),
}

macro_rules! task_kinds {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum TaskKind {
            $($variant),*
        }

        impl TaskKind {
            pub const ALL: &'static [TaskKind] = &[$(TaskKind::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TaskKind::$variant => $name),*
                }
            }

            pub fn parse(name: &str) -> Option<TaskKind> {
                match name {
                    $($name => Some(TaskKind::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

task_kinds! {
    CheckRetraction => "check-retraction",
    Lnd => "lnd",
    Exp => "exp",
    Invariants => "invariants",
    Kernel => "kernel",
    GradedDecompose => "graded-decompose",
    JetDecompose => "jet-decompose",
    PatchVerify => "patch-verify",
    PrimeImage => "prime-image",
    LocalReport => "local-report",
    Member => "member",
    Contract => "contract",
    Trdeg => "trdeg",
    Invertible => "invertible",
    Mu => "mu",
    Sym => "sym",
    Apply => "apply",
    Product => "product",
    Algebraic => "algebraic",
    GoingDown => "going-down",
    UnitCertificate => "unit-certificate",
    ExpTranslation => "exp-translation",
}

/// Polynomial expressions as written; evaluated against a ring later.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    fn write_child(&self, out: &mut String, child: &Expr, min: u8) {
        if child.precedence() < min {
            out.push('(');
            child.write(out);
            out.push(')');
        } else {
            child.write(out);
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            Expr::Int(n) => write!(out, "{n}").unwrap(),
            Expr::Var(v) => out.push_str(v),
            Expr::Neg(e) => {
                out.push('-');
                self.write_child(out, e, 3);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                self.write_child(out, a, 1);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                self.write_child(out, b, 2);
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                self.write_child(out, a, 2);
                out.push(if matches!(self, Expr::Mul(..)) { '*' } else { '/' });
                self.write_child(out, b, 3);
            }
            Expr::Pow(base, e) => {
                self.write_child(out, base, 5);
                write!(out, "^{e}").unwrap();
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn rules(rules: &[(String, Expr)]) -> String {
    let shown: Vec<String> = rules.iter().map(|(v, e)| format!("{v} -> {e}")).collect();
    format!("{{ {} }}", shown.join(", "))
}

pub fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Poly(e) => write!(f, "{e}"),
            Value::List(es) => write!(f, "[{}]", join(es)),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.name;
        match &self.kind {
            DeclKind::Ring { vars, relations, base } => {
                write!(f, "ring {name} = Q[{}]", vars.join(", "))?;
                if !relations.is_empty() {
                    write!(f, " / ({})", join(relations))?;
                }
                if !base.is_empty() {
                    write!(f, " base {}", base.join(", "))?;
                }
                Ok(())
            }
            DeclKind::Subalgebra { ring, gens, over_base } => {
                write!(f, "subalgebra {name} of {} = [{}]", ring.name, join(gens))?;
                if *over_base {
                    f.write_str(" over base")?;
                }
                Ok(())
            }
            DeclKind::Derivation { ring, rules: r } => write!(f, "derivation {name} on {} {}", ring.name, rules(r)),
            DeclKind::Map { source, target, rules: r } => {
                write!(f, "map {name} : {} -> {} {}", source.name, target.name, rules(r))
            }
            DeclKind::Ideal { ring, gens } => write!(f, "ideal {name} in {} = ({})", ring.name, join(gens)),
            DeclKind::Task(t) => {
                let mut args: Vec<String> = t.args.iter().map(|r| r.name.clone()).collect();
                args.extend(t.options.iter().map(|(k, v)| format!("{k} = {v}")));
                write!(f, "task {name} = {}({})", t.kind.as_str(), args.join(", "))?;
                for a in &t.anchors {
                    write!(f, "\n  anchor {}", quote(a))?;
                }
                for (k, v) in &t.expects {
                    write!(f, "\n  expect {} = {}", quote(k), quote(v))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}
