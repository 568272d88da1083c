use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Ring};

/// Exact rational coefficients. Floating point never enters the symbolic
/// path.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

pub fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// A sparse multivariate polynomial over the rationals. Terms are kept in
/// canonical form: sorted descending under degrevlex, no zero
/// coefficients, no duplicate monomials. Equality is structural on the
/// canonical form. Values are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, value: Rational) -> Polynomial {
        if value.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.var_count()), value)],
        }
    }

    pub fn variable(ring: &Ring, index: usize) -> Result<Polynomial> {
        if index >= ring.var_count() {
            return Err(Error::IndexOutOfRange {
                index,
                count: ring.var_count(),
            });
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.var_count(), index), Rational::one())],
        })
    }

    pub fn term(ring: &Ring, monomial: Monomial, coeff: Rational) -> Polynomial {
        assert_eq!(monomial.var_count(), ring.var_count());
        if coeff.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(monomial, coeff)],
        }
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.var_count(), ring.var_count());
            let entry = map.entry(m).or_insert_with(Rational::zero);
            *entry += c;
        }
        Polynomial::from_map(ring, map)
    }

    fn from_map(ring: &Ring, map: BTreeMap<Monomial, Rational>) -> Polynomial {
        let mut terms: Vec<(Monomial, Rational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (degrevlex descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m == monomial)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` when every term has total degree `d`. The zero polynomial
    /// reports degree 0 by convention; callers that care must special-case
    /// it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(|(m, _)| m.degree());
        match degrees.next() {
            None => Some(0),
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ring_mismatch(&self.ring, &other.ring))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match MonomialOrder::DegRevLex.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        Ok(Polynomial::from_map(&self.ring, map))
    }

    pub fn neg_ref(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul_term(&self, monomial: &Monomial, coeff: &Rational) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(monomial), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    pub fn partial_derivative(&self, var_index: usize) -> Result<Polynomial> {
        if var_index >= self.ring.var_count() {
            return Err(Error::IndexOutOfRange {
                index: var_index,
                count: self.ring.var_count(),
            });
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var_index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var_index] -= 1;
            terms.push((
                Monomial::from_exponents(exps),
                c * Rational::from(BigInt::from(e)),
            ));
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.var_count() {
            return Err(Error::LengthMismatch {
                expected: self.ring.var_count(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v *= rat_pow(&point[i], e);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitute `images[i]` for variable `i`; the result lives in the
    /// images' ring (which may differ from this polynomial's).
    pub fn compose(&self, target: &Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.var_count() {
            return Err(Error::LengthMismatch {
                expected: self.ring.var_count(),
                got: images.len(),
            });
        }
        for img in images {
            if img.ring() != target {
                return Err(Error::ring_mismatch(target, img.ring()));
            }
        }
        // memoize image powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Linear change of coordinates: every image must have degree <= 1.
    pub fn linear_substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.var_count() {
            return Err(Error::LengthMismatch {
                expected: self.ring.var_count(),
                got: images.len(),
            });
        }
        for img in images {
            if img.degree().unwrap_or(0) > 1 {
                return Err(Error::NonLinearImage);
            }
        }
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        self.compose(&target, images)
    }

    /// Reinterpret this polynomial in another ring with the same number of
    /// variables (pure renaming).
    pub fn with_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.var_count() != self.ring.var_count() {
            return Err(Error::LengthMismatch {
                expected: self.ring.var_count(),
                got: ring.var_count(),
            });
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Move into a ring with more variables, sending variable `i` to
    /// `map[i]`. The map must be injective.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.ring.var_count() {
            return Err(Error::LengthMismatch {
                expected: self.ring.var_count(),
                got: map.len(),
            });
        }
        for &ix in map {
            if ix >= target.var_count() {
                return Err(Error::IndexOutOfRange {
                    index: ix,
                    count: target.var_count(),
                });
            }
        }
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(map, target.var_count()), c.clone()))
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Terms sorted descending under the given order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        terms
    }

    /// Render with terms sorted under the given order instead of the
    /// canonical degrevlex; parses back to the same polynomial.
    pub fn display_with(&self, order: &MonomialOrder) -> String {
        let sorted = self.sorted_terms(order);
        format_terms(&self.ring, &sorted)
    }
}

fn format_terms(ring: &Ring, terms: &[(Monomial, Rational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            parts.push(abs.to_string());
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.var_name(v).to_string()),
                _ => parts.push(format!("{}^{}", ring.var_name(v), e)),
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.ring, &self.terms))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Ring {
        Ring::new(vec!["x1", "x2"]).unwrap()
    }

    /// Parse helper for tests only; the real parser lives in `document`.
    fn p(ring: &Ring, text: &str) -> Polynomial {
        crate::document::parse_polynomial(ring, text).unwrap()
    }

    #[test]
    fn add_cancellation() {
        let r = ring2();
        let a = p(&r, "x1^2 + x2");
        let b = p(&r, "-x2");
        assert_eq!(&a + &b, p(&r, "x1^2"));
    }

    #[test]
    fn add_identity_and_disjoint_support() {
        let r = ring2();
        let a = p(&r, "x1^2 + x2^2");
        assert_eq!(&a + &Polynomial::zero(&r), a);
        assert_eq!(&a + &p(&r, "x1*x2"), p(&r, "x1^2 + x1*x2 + x2^2"));
    }

    #[test]
    fn mul_examples() {
        let r = ring2();
        assert_eq!(&p(&r, "x1") * &p(&r, "x1"), p(&r, "x1^2"));
        assert_eq!(&p(&r, "x1 + x2") * &p(&r, "x1 - x2"), p(&r, "x1^2 - x2^2"));
        let q = p(&r, "x1^3 - 2*x2");
        assert!((&q * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn mul_degree_adds_for_homogeneous() {
        let r = ring2();
        let a = p(&r, "x1^2 + x1*x2");
        let b = p(&r, "x1 + x2");
        assert_eq!((&a * &b).degree(), Some(3));
    }

    #[test]
    fn derivative_examples() {
        let r = ring2();
        assert_eq!(
            p(&r, "x1^3 + 3*x1*x2^2").partial_derivative(0).unwrap(),
            p(&r, "3*x1^2 + 3*x2^2")
        );
        assert!(p(&r, "x1^2").partial_derivative(1).unwrap().is_zero());
        assert_eq!(p(&r, "x1*x2").partial_derivative(0).unwrap(), p(&r, "x2"));
        assert!(matches!(
            p(&r, "x1").partial_derivative(5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let r = ring2();
        assert_eq!(
            p(&r, "x1^2 + x2^2")
                .evaluate(&[rat_int(1), rat_int(2)])
                .unwrap(),
            rat_int(5)
        );
        assert_eq!(
            p(&r, "x1*x2").evaluate(&[rat_int(0), rat_int(7)]).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            p(&r, "x1^3 + 3*x1*x2^2")
                .evaluate(&[rat_int(1), rat_int(1)])
                .unwrap(),
            rat_int(4)
        );
        assert!(p(&r, "x1").evaluate(&[rat_int(1)]).is_err());
    }

    #[test]
    fn homogeneity() {
        let r = ring2();
        assert_eq!(p(&r, "x1^2 + x2^2").homogeneous_degree(), Some(2));
        assert_eq!(p(&r, "x1^2 + x2").homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(&r).homogeneous_degree(), Some(0));
    }

    #[test]
    fn linear_substitute_examples() {
        let r = ring2();
        let sq = p(&r, "x1^2");
        let images = vec![p(&r, "x1 + x2"), p(&r, "x2")];
        assert_eq!(
            sq.linear_substitute(&images).unwrap(),
            p(&r, "x1^2 + 2*x1*x2 + x2^2")
        );

        let q = p(&r, "x1^3 + 3*x1*x2^2");
        let identity = vec![p(&r, "x1"), p(&r, "x2")];
        assert_eq!(q.linear_substitute(&identity).unwrap(), q);

        // basis completion: substituting x1 -> y1 - 2*x2 into (x1 + 2*x2)^2
        let target = Ring::new(vec!["y1", "x2"]).unwrap();
        let sq2 = p(&r, "x1^2 + 4*x1*x2 + 4*x2^2");
        let images = vec![p(&target, "y1 - 2*x2"), p(&target, "x2")];
        assert_eq!(sq2.linear_substitute(&images).unwrap(), p(&target, "y1^2"));

        assert!(matches!(
            sq.linear_substitute(&[p(&r, "x1")]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            sq.linear_substitute(&[p(&r, "x1^2"), p(&r, "x2")]),
            Err(Error::NonLinearImage)
        ));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring2();
        let s = Ring::new(vec!["y"]).unwrap();
        let a = p(&r, "x1");
        let b = p(&s, "y");
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn display_round_trips_basic_forms() {
        let r = ring2();
        for text in [
            "0",
            "1",
            "-1",
            "x1",
            "-x1 + x2",
            "x1^2 - 2*x1*x2 + 3/2*x2^2",
            "x1^3 + 3*x1*x2^2",
        ] {
            let q = p(&r, text);
            assert_eq!(p(&r, &q.to_string()), q);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_rational() -> impl Strategy<Value = Rational> {
            (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
        }

        fn arb_poly(ring: Ring, max_deg: u32) -> impl Strategy<Value = Polynomial> {
            let n = ring.var_count();
            let term = (proptest::collection::vec(0u32..=max_deg, n), arb_rational())
                .prop_filter("degree cap", move |(exps, _)| {
                    exps.iter().sum::<u32>() <= max_deg
                })
                .prop_map(|(exps, c)| (Monomial::from_exponents(exps), c));
            proptest::collection::vec(term, 0..6)
                .prop_map(move |terms| Polynomial::from_terms(&ring, terms))
        }

        fn arb_homogeneous(ring: Ring, deg: u32) -> impl Strategy<Value = Polynomial> {
            let frame = ring.monomials_of_degree(deg);
            let k = frame.len();
            proptest::collection::vec(arb_rational(), k).prop_map(move |coeffs| {
                Polynomial::from_terms(&ring, frame.iter().cloned().zip(coeffs))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn ring_axioms(
                a in arb_poly(Ring::new(vec!["x1","x2","x3"]).unwrap(), 3),
                b in arb_poly(Ring::new(vec!["x1","x2","x3"]).unwrap(), 3),
                c in arb_poly(Ring::new(vec!["x1","x2","x3"]).unwrap(), 3),
            ) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }

            #[test]
            fn euler_identity(
                deg in 1u32..=5,
                seed_poly in arb_homogeneous(Ring::new(vec!["x1","x2","x3","x4"]).unwrap(), 3),
            ) {
                // regenerate at the sampled degree to cover d <= 5
                let ring = Ring::new(vec!["x1","x2","x3","x4"]).unwrap();
                let q = if deg == 3 {
                    seed_poly
                } else {
                    let frame = ring.monomials_of_degree(deg);
                    Polynomial::from_terms(&ring, seed_poly
                        .terms()
                        .enumerate()
                        .filter(|(i, _)| *i < frame.len())
                        .map(|(i, (_, c))| (frame[i].clone(), c.clone()))
                        .collect::<Vec<_>>())
                };
                let mut lhs = Polynomial::zero(&ring);
                for i in 0..4 {
                    let xi = Polynomial::variable(&ring, i).unwrap();
                    lhs = &lhs + &(&xi * &q.partial_derivative(i).unwrap());
                }
                let d = q.homogeneous_degree().unwrap();
                prop_assert_eq!(lhs, q.scale(&rat_int(d as i64)));
            }

            #[test]
            fn evaluate_is_a_homomorphism(
                a in arb_poly(Ring::new(vec!["x1","x2"]).unwrap(), 3),
                b in arb_poly(Ring::new(vec!["x1","x2"]).unwrap(), 3),
                n1 in -5i64..=5, n2 in -5i64..=5,
            ) {
                let pt = vec![rat_int(n1), rat_int(n2)];
                let sum = (&a + &b).evaluate(&pt).unwrap();
                prop_assert_eq!(sum, a.evaluate(&pt).unwrap() + b.evaluate(&pt).unwrap());
                let prod = (&a * &b).evaluate(&pt).unwrap();
                prop_assert_eq!(prod, a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
            }

            #[test]
            fn invertible_substitution_round_trip(
                a in arb_poly(Ring::new(vec!["x1","x2"]).unwrap(), 4),
                s in -3i64..=3,
            ) {
                // x1 -> x1 + s*x2, x2 -> x2 is invertible with inverse s -> -s
                let ring = Ring::new(vec!["x1","x2"]).unwrap();
                let x1 = Polynomial::variable(&ring, 0).unwrap();
                let x2 = Polynomial::variable(&ring, 1).unwrap();
                let fwd = vec![&x1 + &x2.scale(&rat_int(s)), x2.clone()];
                let back = vec![&x1 + &x2.scale(&rat_int(-s)), x2.clone()];
                let round = a
                    .linear_substitute(&fwd)
                    .unwrap()
                    .linear_substitute(&back)
                    .unwrap();
                prop_assert_eq!(round, a);
            }
        }
    }
}
