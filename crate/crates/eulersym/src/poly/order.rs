use std::cmp::Ordering;
use std::fmt;

use crate::poly::Monomial;

/// A global monomial order. All three kinds are total, multiplicative
/// and well-orders (the constant monomial is minimal).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: higher total degree wins; on equal
    /// degree the monomial with the smaller exponent in the least
    /// significant variable is the larger one.
    DegRevLex,
    /// Plain lexicographic in the ring's variable order.
    Lex,
    /// Elimination (block) order: the variables listed in `first` are
    /// greater than everything else; within each block comparison is
    /// degrevlex. Any monomial containing a `first` variable beats every
    /// monomial in the remaining variables only, which is what makes
    /// elimination ideals readable off a basis.
    Elimination { first: Vec<usize> },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.var_count(), b.var_count());
        match self {
            MonomialOrder::DegRevLex => degrevlex(a.exponents(), b.exponents()),
            MonomialOrder::Lex => {
                for (x, y) in a.exponents().iter().zip(b.exponents()) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination { first } => {
                let pa: Vec<u32> = first.iter().map(|&i| a.exponent(i)).collect();
                let pb: Vec<u32> = first.iter().map(|&i| b.exponent(i)).collect();
                match degrevlex(&pa, &pb) {
                    Ordering::Equal => {
                        let rest: Vec<usize> =
                            (0..a.var_count()).filter(|i| !first.contains(i)).collect();
                        let ra: Vec<u32> = rest.iter().map(|&i| a.exponent(i)).collect();
                        let rb: Vec<u32> = rest.iter().map(|&i| b.exponent(i)).collect();
                        degrevlex(&ra, &rb)
                    }
                    ord => ord,
                }
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// Parse an order name as used on the CLI surface.
    pub fn from_name(name: &str) -> Option<MonomialOrder> {
        match name {
            "degrevlex" => Some(MonomialOrder::DegRevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination { first } => write!(f, "elim{:?}", first),
        }
    }
}
