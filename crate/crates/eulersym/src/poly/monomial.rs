use std::fmt;

/// A power product, stored as one exponent per ring variable. The derived
/// `Ord` is structural (plain lexicographic on the exponent vector) and is
/// only used for canonical map keys; semantic comparisons go through
/// `MonomialOrder`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(var_count: usize) -> Monomial {
        Monomial {
            exps: vec![0; var_count].into(),
        }
    }

    pub fn var(var_count: usize, index: usize) -> Monomial {
        let mut exps = vec![0; var_count];
        exps[index] = 1;
        Monomial { exps: exps.into() }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial { exps: exps.into() }
    }

    pub fn var_count(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.var_count(), other.var_count());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.var_count(), other.var_count());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps: exps.into() })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables occurring with positive exponent.
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.exps.len() <= 64);
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Remap exponents into a ring with `new_count` variables, sending
    /// variable `i` to `map[i]`. Unmapped target slots get exponent 0.
    pub fn remap(&self, map: &[usize], new_count: usize) -> Monomial {
        debug_assert_eq!(map.len(), self.exps.len());
        let mut exps = vec![0u32; new_count];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial { exps: exps.into() }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exponents(vec![2, 1, 0]);
        let b = Monomial::from_exponents(vec![1, 1, 0]);
        assert_eq!(a.try_div(&b), Some(Monomial::from_exponents(vec![1, 0, 0])));
        assert_eq!(b.try_div(&a), None);
        assert!(b.divides(&a));
        let c = Monomial::from_exponents(vec![0, 2, 1]);
        assert_eq!(a.lcm(&c), Monomial::from_exponents(vec![2, 2, 1]));
        assert!(!a.is_coprime_to(&c));
        assert!(Monomial::from_exponents(vec![1, 0, 0])
            .is_coprime_to(&Monomial::from_exponents(vec![0, 0, 3])));
    }
}
