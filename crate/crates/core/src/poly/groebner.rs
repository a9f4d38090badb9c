//! Buchberger's algorithm with the Gebauer-Moeller pair criteria.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{Monomial, MonomialOrder, Poly, Rational};
use crate::{Error, Limits, Result};

/// Terms sorted ascending under the order; the leading term is last.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn from_poly(p: &Poly, order: MonomialOrder) -> Sorted {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero").1
    }

    fn make_monic(&mut self) {
        let inv = self.lc().recip();
        if !inv.is_one() {
            for t in &mut self.terms {
                t.1 *= &inv;
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, c: &Rational, m: &Monomial, g: &Sorted, order: MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), -(gc * c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (mx, cx) = a.next().unwrap();
                        let (_, cy) = b.next().unwrap();
                        let s = cx + cy;
                        if !s.is_zero() {
                            out.push((mx.clone(), s));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `h` by monic basis elements.
fn reduce_sorted(mut h: Sorted, basis: &[&Sorted], order: MonomialOrder) -> Sorted {
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = h.terms.last() {
        let divisor = basis.iter().find(|g| g.lm().divides(m));
        match divisor {
            Some(g) => {
                let q = m.div(g.lm()).unwrap();
                let c = c.clone();
                h = h.sub_mul(&c, &q, g, order);
            }
            None => rem.push(h.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Sorted { terms: rem }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    order: MonomialOrder,
    basis: Vec<Sorted>,
    redundant: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn active(&self) -> Vec<&Sorted> {
        self.basis
            .iter()
            .zip(&self.redundant)
            .filter(|(_, r)| !**r)
            .map(|(g, _)| g)
            .collect()
    }

    fn insert(&mut self, h: Sorted) {
        let k = self.basis.len();
        let hl = h.lm().clone();

        let mut candidates: Vec<(Pair, bool)> = (0..k)
            .filter(|&i| !self.redundant[i])
            .map(|i| {
                let gl = self.basis[i].lm();
                (
                    Pair {
                        i,
                        j: k,
                        lcm: gl.lcm(&hl),
                    },
                    gl.is_coprime(&hl),
                )
            })
            .collect();
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while let Some((p, coprime)) = if candidates.is_empty() {
            None
        } else {
            Some(candidates.remove(0))
        } {
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|(q, _)| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push((p, coprime));
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm)
                && basis[p.i].lm().lcm(&hl) != p.lcm
                && basis[p.j].lm().lcm(&hl) != p.lcm)
        });
        self.pairs
            .extend(kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p));

        for i in 0..k {
            if !self.redundant[i] && hl.divides(self.basis[i].lm()) {
                self.redundant[i] = true;
            }
        }
        self.basis.push(h);
        self.redundant.push(false);
    }

    fn take_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Sorted {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let mf = p.lcm.div(f.lm()).unwrap();
        let mg = p.lcm.div(g.lm()).unwrap();
        // both are monic
        let zero = Sorted { terms: Vec::new() };
        let a = zero.sub_mul(&-Rational::one(), &mf, f, self.order);
        a.sub_mul(&Rational::one(), &mg, g, self.order)
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// leading monomial (ascending). Each element is monic.
pub fn groebner_basis(gens: &[Poly], order: MonomialOrder, limits: Limits) -> Result<Vec<Poly>> {
    let Some(nvars) = gens.first().map(Poly::nvars) else {
        return Ok(Vec::new());
    };
    let mut b = Builder {
        order,
        basis: Vec::new(),
        redundant: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::from_poly(g, order))
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in inputs {
        let active = b.active();
        let mut h = reduce_sorted(g, &active, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        check_degree(&h, limits)?;
        b.insert(h);
    }

    let mut processed = 0usize;
    while let Some(p) = b.take_pair() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceLimit {
                what: "S-pairs",
                limit: limits.max_pairs,
            });
        }
        let s = b.spoly(&p);
        let active = b.active();
        let mut h = reduce_sorted(s, &active, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        check_degree(&h, limits)?;
        b.insert(h);
    }

    let minimal: Vec<Sorted> = b.active().into_iter().cloned().collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<&Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g)
            .collect();
        let mut lead = g.clone();
        let top = lead.terms.pop().unwrap();
        let mut tail = reduce_sorted(lead, &others, order);
        tail.terms.push(top);
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced.iter().map(|g| g.to_poly(nvars)).collect())
}

fn check_degree(h: &Sorted, limits: Limits) -> Result<()> {
    let deg = h.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
    if deg as usize > limits.max_degree {
        return Err(Error::ResourceLimit {
            what: "total degree",
            limit: limits.max_degree,
        });
    }
    Ok(())
}

/// Normal form of `f` with respect to `basis` (assumed to be a Groebner basis
/// for `order`).
pub fn reduce(f: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let sorted: Vec<Sorted> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::from_poly(g, order);
            s.make_monic();
            s
        })
        .collect();
    let refs: Vec<&Sorted> = sorted.iter().collect();
    reduce_sorted(Sorted::from_poly(f, order), &refs, order).to_poly(f.nvars())
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Poly], order: MonomialOrder) -> bool {
    let sorted: Vec<Sorted> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::from_poly(g, order);
            s.make_monic();
            s
        })
        .collect();
    let refs: Vec<&Sorted> = sorted.iter().collect();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let (f, g) = (&sorted[i], &sorted[j]);
            let lcm = f.lm().lcm(g.lm());
            let zero = Sorted { terms: Vec::new() };
            let s = zero
                .sub_mul(&-Rational::one(), &lcm.div(f.lm()).unwrap(), f, order)
                .sub_mul(&Rational::one(), &lcm.div(g.lm()).unwrap(), g, order);
            if !reduce_sorted(s, &refs, order).terms.is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn vars(n: usize) -> Vec<Poly> {
        (0..n).map(|i| Poly::var(n, i)).collect()
    }

    #[test]
    fn principal_ideal_is_monic_generator() {
        let v = vars(2);
        let f = (&v[0] * &v[1]).scale(&int(3)) + Poly::one(2);
        let gb = groebner_basis(&[f.clone()], MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert_eq!(gb, vec![f.monic(MonomialOrder::DegRevLex)]);
    }

    #[test]
    fn lex_example_collapses_to_variables() {
        // <Y - X^2, X> with X > Y in lex is <X, Y>
        let v = vars(2);
        let gens = [&v[1] - &v[0].pow(2), v[0].clone()];
        let gb = groebner_basis(&gens, MonomialOrder::Lex, Limits::default()).unwrap();
        assert_eq!(gb, vec![v[1].clone(), v[0].clone()]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let v = vars(3);
        let gens = [v[0].pow(2), &v[0] * &v[1], &v[1] * &v[2]];
        let gb = groebner_basis(&gens, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(gb.contains(g));
        }
    }

    #[test]
    fn resource_limit_is_an_error() {
        let v = vars(3);
        let gens = [
            &v[0].pow(3) - &v[1] * &v[2],
            &v[1].pow(3) - &v[0] * &v[2],
            &v[2].pow(3) - &v[0] * &v[1],
        ];
        let tight = Limits {
            max_pairs: 1,
            max_degree: 40,
        };
        assert!(matches!(
            groebner_basis(&gens, MonomialOrder::Lex, tight),
            Err(Error::ResourceLimit { .. })
        ));
        let gb = groebner_basis(&gens, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert!(is_groebner_basis(&gb, MonomialOrder::DegRevLex));
    }

    #[test]
    fn normal_form_one_division_step() {
        // NF(XY, <XY - Z^2>) = Z^2
        let v = vars(3);
        let rel = &v[0] * &v[1] - v[2].pow(2);
        let nf = reduce(&(&v[0] * &v[1]), &[rel], MonomialOrder::DegRevLex);
        assert_eq!(nf, v[2].pow(2));
    }
}
