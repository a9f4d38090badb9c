//! Sparse multivariate polynomials with exact rational coefficients.

mod groebner;
mod ideal;
mod monomial;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use groebner::{groebner_basis, is_groebner_basis, reduce};
pub use ideal::Ideal;
pub use monomial::Monomial;
pub use order::MonomialOrder;

/// Coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A polynomial over `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        Poly::term(Monomial::var(nvars, index, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn leading_coeff(&self, order: MonomialOrder) -> Option<&Rational> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x * c))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading_coeff(order) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, Poly::nvars);
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[v];
                if powers.is_empty() {
                    powers.push(Poly::one(target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[v];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out += &t;
        }
        out
    }

    /// Substitutes `value` for a single variable, keeping the variable count.
    pub fn substitute_var(&self, var: usize, value: &Poly) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                if i == var {
                    value.clone()
                } else {
                    Poly::var(self.nvars, i)
                }
            })
            .collect();
        self.substitute(&images)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::from_exponents(exps), c * int(e as i64));
        }
        out
    }

    /// Homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            out.add_term(m.remap(nvars, map), c.clone());
        }
        out
    }

    /// Appends fresh variables after the existing ones.
    pub fn extend(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(nvars, &map)
    }

    /// Drops trailing variables; panics if one of them occurs.
    pub fn restrict(&self, nvars: usize) -> Poly {
        assert!((nvars..self.nvars).all(|v| !self.involves(v)));
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial::from_exponents(m.exponents()[..nvars].to_vec()),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k` (not involving `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            out[k].add_term(Monomial::from_exponents(exps), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Exact division in the free polynomial ring.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let order = MonomialOrder::DegRevLex;
        let (lm, lc) = divisor.leading_term(order)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.clone();
        let mut quotient = Poly::zero(self.nvars);
        while let Some((m, c)) = rest.leading_term(order) {
            let q = m.div(&lm)?;
            let qc = c / &lc;
            rest -= &divisor.mul_term(&q, &qc);
            quotient.add_term(q, qc);
        }
        Some(quotient)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical text form: degrevlex terms from largest to smallest.
    pub fn display(&self, names: &[impl AsRef<str>]) -> String {
        assert!(names.len() >= self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms(MonomialOrder::DegRevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[v].as_ref(), e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }

    /// Display with default names `x0, x1, ...`.
    pub fn display_default(&self) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        self.display(&names)
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display_default())
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(3, 0)
    }
    fn y() -> Poly {
        Poly::var(3, 1)
    }
    fn z() -> Poly {
        Poly::var(3, 2)
    }

    #[test]
    fn arithmetic_and_display() {
        let f = &(&x() * &y()) - &z().pow(2);
        assert_eq!(f.display(&["X", "Y", "Z"]), "X*Y - Z^2");
        let g = &f * &f;
        assert_eq!(g.total_degree(), Some(4));
        assert!((&g - &g).is_zero());
        let h = Poly::constant(3, rat(-3, 2)) + x();
        assert_eq!(h.display(&["X", "Y", "Z"]), "X - 3/2");
    }

    #[test]
    fn substitution_and_derivative() {
        let f = &x().pow(2) + &y();
        let images = vec![&y() + &Poly::one(3), z(), z()];
        let g = f.substitute(&images);
        assert_eq!(g.display(&["X", "Y", "Z"]), "Y^2 + 2*Y + Z + 1");
        assert_eq!(f.derivative(0), x().scale(&int(2)));
    }

    #[test]
    fn exact_division() {
        let f = &x() * &(&y() + &z());
        assert_eq!(f.div_exact(&x()), Some(&y() + &z()));
        assert_eq!(f.div_exact(&y()), None);
    }

    #[test]
    fn coefficients_and_components() {
        let f = &(&x().pow(2) * &y()) + &(&x() + &Poly::one(3));
        let c = f.coefficients_in(0);
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], y());
        assert_eq!(c[0], Poly::one(3));
        let comps = f.homogeneous_components();
        assert_eq!(comps.len(), 3);
        assert!(!f.is_homogeneous());
    }
}
