//! Recursive-descent parser for session files.

use std::collections::HashSet;

use crate::ast::{Decl, DeclKind, Expr, Ref, Session, Span, Task, TaskKind, Value};
use crate::error::{Pos, SessionError};
use crate::lexer::{tokenize, Tok, Token};

/// Parses a session and checks that names are unique and references resolve.
pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let tokens = tokenize(text)?;
    let end = end_pos(text);
    let mut p = Parser { tokens, i: 0, end };
    let mut decls = Vec::new();
    while p.peek().is_some() {
        decls.push(p.decl()?);
    }
    let session = Session { decls };
    check_names(&session)?;
    Ok(session)
}

fn end_pos(text: &str) -> Pos {
    let line = text.matches('\n').count() + 1;
    let col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, col }
}

struct Parser {
    tokens: Vec<Token>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.i)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.i + k).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error<T>(&self, expected: &str) -> Result<T, SessionError> {
        let found = self.peek().map_or("end of input".to_string(), |t| t.tok.describe());
        Err(SessionError::syntax(self.pos(), expected, &found))
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek_at(0), Some(Tok::Sym(s)) if *s == sym) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), SessionError> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.error(&format!("`{sym}`"))
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek_at(0), Some(Tok::Ident(s)) if s == word)
    }

    fn keyword(&mut self, word: &str) -> Result<(), SessionError> {
        if self.is_keyword(word) {
            self.i += 1;
            Ok(())
        } else {
            self.error(&format!("`{word}`"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), SessionError> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), pos, .. }) => {
                let out = (s.clone(), *pos);
                self.i += 1;
                Ok(out)
            }
            _ => self.error(what),
        }
    }

    fn reference(&mut self, what: &str) -> Result<Ref, SessionError> {
        let (name, pos) = self.ident(what)?;
        Ok(Ref { name, span: Span(pos) })
    }

    fn string(&mut self) -> Result<String, SessionError> {
        match self.peek_at(0) {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.error("a string"),
        }
    }

    fn decl(&mut self) -> Result<Decl, SessionError> {
        let (word, pos) = self.ident("a declaration keyword")?;
        let span = Span(pos);
        let (name, kind) = match word.as_str() {
            "ring" => {
                let (name, _) = self.ident("a ring name")?;
                self.expect("=")?;
                self.keyword("Q")?;
                self.expect("[")?;
                let vars = self.names("]")?;
                let relations = if self.eat("/") {
                    self.expect("(")?;
                    self.exprs(")")?
                } else {
                    Vec::new()
                };
                let base = if self.is_keyword("base") {
                    self.i += 1;
                    self.name_list()?
                } else {
                    Vec::new()
                };
                (name, DeclKind::Ring { vars, relations, base })
            }
            "subalgebra" => {
                let (name, _) = self.ident("a subalgebra name")?;
                self.keyword("of")?;
                let ring = self.reference("a ring name")?;
                self.expect("=")?;
                self.expect("[")?;
                let gens = self.exprs("]")?;
                let over_base = if self.is_keyword("over") {
                    self.i += 1;
                    self.keyword("base")?;
                    true
                } else {
                    false
                };
                (name, DeclKind::Subalgebra { ring, gens, over_base })
            }
            "derivation" => {
                let (name, _) = self.ident("a derivation name")?;
                self.keyword("on")?;
                let ring = self.reference("a ring name")?;
                let rules = self.rules()?;
                (name, DeclKind::Derivation { ring, rules })
            }
            "map" => {
                let (name, _) = self.ident("a map name")?;
                self.expect(":")?;
                let source = self.reference("a ring name")?;
                self.expect("->")?;
                let target = self.reference("a ring name")?;
                let rules = self.rules()?;
                (name, DeclKind::Map { source, target, rules })
            }
            "ideal" => {
                let (name, _) = self.ident("an ideal name")?;
                self.keyword("in")?;
                let ring = self.reference("a ring name")?;
                self.expect("=")?;
                self.expect("(")?;
                let gens = self.exprs(")")?;
                (name, DeclKind::Ideal { ring, gens })
            }
            "task" => {
                let (name, _) = self.ident("a task name")?;
                self.expect("=")?;
                (name, DeclKind::Task(self.task()?))
            }
            _ => {
                self.i -= 1;
                return self.error("one of `ring`, `subalgebra`, `derivation`, `map`, `ideal`, `task`");
            }
        };
        Ok(Decl { name, span, kind })
    }

    /// Identifiers separated by commas up to `close`, which is consumed.
    fn names(&mut self, close: &str) -> Result<Vec<String>, SessionError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.ident("a variable name")?.0);
            if self.eat(close) {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.error(&format!("`,` or `{close}`"));
            }
        }
    }

    /// A nonempty comma-separated list of names with no closing delimiter.
    fn name_list(&mut self) -> Result<Vec<String>, SessionError> {
        let mut out = vec![self.ident("a variable name")?.0];
        while self.eat(",") {
            out.push(self.ident("a variable name")?.0);
        }
        Ok(out)
    }

    fn exprs(&mut self, close: &str) -> Result<Vec<Expr>, SessionError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(close) {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.error(&format!("`,` or `{close}`"));
            }
        }
    }

    fn rules(&mut self) -> Result<Vec<(String, Expr)>, SessionError> {
        self.expect("{")?;
        let mut out = Vec::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            let (var, _) = self.ident("a variable name")?;
            self.expect("->")?;
            out.push((var, self.expr()?));
            if self.eat("}") {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.error("`,` or `}`");
            }
        }
    }

    /// The task kind is a hyphenated word such as `check-retraction`; its
    /// pieces must be adjacent.
    fn task_kind(&mut self) -> Result<TaskKind, SessionError> {
        let pos = self.pos();
        let first = self.ident("a task kind")?.0;
        let mut word = first;
        let mut last_end = self.tokens[self.i - 1].end;
        while let (Some(Tok::Sym("-")), Some(Tok::Ident(next))) = (self.peek_at(0), self.peek_at(1)) {
            let dash = &self.tokens[self.i];
            let after = &self.tokens[self.i + 1];
            if dash.start != last_end || after.start != dash.end {
                break;
            }
            word = format!("{word}-{next}");
            last_end = after.end;
            self.i += 2;
        }
        TaskKind::parse(&word).ok_or_else(|| {
            let kinds: Vec<&str> = TaskKind::ALL.iter().map(|k| k.as_str()).collect();
            SessionError::syntax(pos, &format!("a task kind ({})", kinds.join(", ")), &format!("`{word}`"))
        })
    }

    fn task(&mut self) -> Result<Task, SessionError> {
        let kind = self.task_kind()?;
        self.expect("(")?;
        let mut args = Vec::new();
        let mut options: Vec<(String, Value)> = Vec::new();
        if !self.eat(")") {
            loop {
                if matches!(self.peek_at(1), Some(Tok::Sym("="))) {
                    let (key, pos) = self.ident("an option name")?;
                    if options.iter().any(|(k, _)| *k == key) {
                        return Err(SessionError::invalid(pos, format!("option `{key}` given twice")));
                    }
                    self.expect("=")?;
                    let value = self.value()?;
                    options.push((key, value));
                } else if options.is_empty() {
                    args.push(self.reference("a declared name")?);
                } else {
                    return self.error("`name = value` after the first option");
                }
                if self.eat(")") {
                    break;
                }
                if !self.eat(",") {
                    return self.error("`,` or `)`");
                }
            }
        }
        let mut anchors = Vec::new();
        let mut expects = Vec::new();
        loop {
            if self.is_keyword("anchor") {
                self.i += 1;
                anchors.push(self.string()?);
            } else if self.is_keyword("expect") {
                self.i += 1;
                let key = self.string()?;
                self.expect("=")?;
                expects.push((key, self.string()?));
            } else {
                break;
            }
        }
        Ok(Task { kind, args, options, anchors, expects })
    }

    fn value(&mut self) -> Result<Value, SessionError> {
        if let (Some(Tok::Int(n)), Some(Tok::Sym("," | ")")) | None) = (self.peek_at(0), self.peek_at(1)) {
            let n = n.clone();
            self.i += 1;
            return Ok(Value::Int(n));
        }
        if self.eat("[") {
            return Ok(Value::List(self.exprs("]")?));
        }
        Ok(Value::Poly(self.expr()?))
    }

    fn expr(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SessionError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat("^") {
            let pos = self.pos();
            match self.peek_at(0) {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n.clone())
                        .ok()
                        .filter(|&e| e <= 10_000)
                        .ok_or_else(|| SessionError::invalid(pos, "exponent too large"))?;
                    self.i += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.error("an integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SessionError> {
        match self.peek_at(0) {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(v)) => {
                let v = v.clone();
                self.i += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Sym("(")) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => self.error("a polynomial"),
        }
    }
}

fn check_names(session: &Session) -> Result<(), SessionError> {
    let mut seen: HashSet<&str> = HashSet::new();
    for d in &session.decls {
        let refs: Vec<&Ref> = match &d.kind {
            DeclKind::Ring { .. } => vec![],
            DeclKind::Subalgebra { ring, .. } | DeclKind::Derivation { ring, .. } | DeclKind::Ideal { ring, .. } => {
                vec![ring]
            }
            DeclKind::Map { source, target, .. } => vec![source, target],
            DeclKind::Task(t) => t.args.iter().collect(),
        };
        for r in refs {
            if !seen.contains(r.name.as_str()) {
                return Err(SessionError::Unresolved { pos: r.span.0, name: r.name.clone() });
            }
        }
        if !seen.insert(&d.name) {
            return Err(SessionError::Duplicate { pos: d.span.0, name: d.name.clone() });
        }
    }
    Ok(())
}
