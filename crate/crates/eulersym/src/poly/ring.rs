use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder};

/// The variable context every polynomial carries: an ordered list of
/// variable names. Two rings are equal when their name lists are equal,
/// so rings built independently from the same document interoperate.
#[derive(Clone, Eq)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::EmptyRing);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Ring { vars: vars.into() })
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, index: usize) -> &str {
        &self.vars[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// New ring with extra variables appended after the existing ones.
    pub fn extended<S: Into<String>>(&self, extra: Vec<S>) -> Result<Ring> {
        let mut vars: Vec<String> = self.vars.to_vec();
        vars.extend(extra.into_iter().map(Into::into));
        Ring::new(vars)
    }

    /// A variable name not already used by the ring, derived from `base`
    /// by appending underscores.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    /// All monomials of the given total degree, sorted descending under
    /// degrevlex. This is the coordinate frame used by the linear algebra
    /// over graded pieces.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let n = self.var_count();
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fill_monomials(&mut out, &mut current, 0, degree, n);
        out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
        out
    }
}

fn fill_monomials(
    out: &mut Vec<Monomial>,
    current: &mut Vec<u32>,
    pos: usize,
    left: u32,
    n: usize,
) {
    if pos == n - 1 {
        current[pos] = left;
        out.push(Monomial::from_exponents(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        current[pos] = e;
        fill_monomials(out, current, pos + 1, left - e, n);
    }
    current[pos] = 0;
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(", "))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vars.join(", "))
    }
}
