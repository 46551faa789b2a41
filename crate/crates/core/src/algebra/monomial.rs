use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial. Its `Ord` is graded reverse
/// lexicographic, the default order used for storage and printing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of variables with a nonzero exponent.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db)
        .then_with(|| {
            // smaller exponent in the last differing variable wins
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
        .then_with(|| a.len().cmp(&b.len()))
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

/// Monomial orders understood by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GradedReverseLex,
    Lex,
    /// Grevlex on the first `first_block` variables, ties broken by grevlex
    /// on the rest. Eliminates the first block.
    BlockElimination { first_block: usize },
    /// Module encoding: the first `tags` variables are position tags compared
    /// lexicographically before anything else, then grevlex on the rest.
    #[doc(hidden)]
    PositionOverTerm { tags: usize },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::GradedReverseLex
    }
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::GradedReverseLex => grevlex(a, b),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::BlockElimination { first_block } => {
                let k = first_block.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
            MonomialOrder::PositionOverTerm { tags } => {
                let k = tags.min(a.len());
                lex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // y1*y2 > y3^2 under grevlex with y1 > y2 > y3
        assert_eq!(m(&[1, 1, 0]).cmp(&m(&[0, 0, 2])), Ordering::Greater);
        assert_eq!(m(&[2, 0]).cmp(&m(&[1, 1])), Ordering::Greater);
        assert_eq!(m(&[0, 0, 1]).cmp(&m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::BlockElimination { first_block: 1 };
        // x1 beats any pure-y monomial
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    fn exps() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..4, 3)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in exps(), b in exps(), c in exps()) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            for o in [
                MonomialOrder::GradedReverseLex,
                MonomialOrder::Lex,
                MonomialOrder::BlockElimination { first_block: 1 },
                MonomialOrder::PositionOverTerm { tags: 1 },
            ] {
                prop_assert_eq!(o.compare(&a, &b), o.compare(&a.mul(&c), &b.mul(&c)));
                prop_assert_ne!(o.compare(&a.mul(&c), &Monomial::one(3)), Ordering::Less);
            }
        }
    }
}
