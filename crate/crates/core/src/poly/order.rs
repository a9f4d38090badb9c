use std::cmp::Ordering;

use super::Monomial;

/// Monomial orders used throughout the engine.
///
/// `Block { split }` compares the first `split` variables by degrevlex and
/// breaks ties with degrevlex on the remaining ones; it eliminates the first
/// block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    Block {
        split: usize,
    },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                // smaller exponent in the last variable wins
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Block { split } => {
                let s = split.min(a.len());
                degrevlex(&a[..s], &b[..s]).then_with(|| degrevlex(&a[s..], &b[s..]))
            }
        }
    }

    pub fn parse(name: &str) -> Option<MonomialOrder> {
        match name {
            "lex" => Some(MonomialOrder::Lex),
            "degrevlex" | "grevlex" => Some(MonomialOrder::DegRevLex),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        // x > y > z, and x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_block() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        let b = MonomialOrder::Block { split: 1 };
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 4, 4])), Ordering::Greater);
        assert_eq!(b.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }
}
