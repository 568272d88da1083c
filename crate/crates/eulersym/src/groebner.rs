//! Buchberger-based ideal engine: reduced Gröbner bases, normal forms,
//! ideal and radical membership, Krull dimension, elimination ideals and
//! algebraic-relation discovery.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// A finitely generated ideal. Zero generators are dropped on
/// construction; all generators share the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if g.ring() != &ring {
                return Err(Error::ring_mismatch(&ring, g.ring()));
            }
        }
        Ok(Ideal {
            ring,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self, order: MonomialOrder) -> GroebnerBasis {
        buchberger(self, order)
    }
}

/// A reduced Gröbner basis: monic elements, no element's term divisible
/// by another element's leading monomial. Under a fixed order this form
/// is unique, so output is byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn contains_one(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.degree() == Some(0) && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_term(&self.order).map(|(m, _)| m.clone()))
            .collect()
    }

    /// Remainder of `p` under multivariate division by the basis: no term
    /// of the result is divisible by any leading monomial, and
    /// `p - result` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != &self.ring {
            return Err(Error::ring_mismatch(&self.ring, p.ring()));
        }
        Ok(reduce_full(p, &self.elements, &self.order))
    }
}

// ---------------------------------------------------------------------------
// division
// ---------------------------------------------------------------------------

/// `a - c * m * b` on term lists sorted descending under `order`.
fn merge_sub_scaled(
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    m: &Monomial,
    c: &Rational,
    order: &MonomialOrder,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match order.cmp(&a[i].0, &bm) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((bm, -(&b[j].1 * c)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &a[i].1 - &(&b[j].1 * c);
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push((b[j].0.mul(m), -(&b[j].1 * c)));
        j += 1;
    }
    out
}

/// Full multivariate division: reduces every term of `p`, not just the
/// leading one, trying divisors in slice order (deterministic).
type DivisorView = (Monomial, Rational, Vec<(Monomial, Rational)>);

fn reduce_full(p: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = p.ring().clone();
    let views: Vec<DivisorView> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| {
            let (lm, lc) = d.leading_term(order).expect("nonzero divisor");
            (lm.clone(), lc.clone(), d.sorted_terms(order))
        })
        .collect();

    let mut work = p.sorted_terms(order);
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    'outer: while let Some((m, c)) = work.first().cloned() {
        for (lm, lc, terms) in &views {
            if let Some(q) = m.try_div(lm) {
                let factor = &c / lc;
                work = merge_sub_scaled(&work, terms, &q, &factor, order);
                continue 'outer;
            }
        }
        remainder.push((m, c));
        work.remove(0);
    }
    Polynomial::from_terms(&ring, remainder)
}

/// Clear denominators and content so all coefficients are coprime
/// integers, with the leading coefficient (under `order`) positive.
fn primitive_part(p: &Polynomial, order: &MonomialOrder) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in p.terms() {
        content = content.gcd(&(c.numer() * &denom_lcm / c.denom()));
    }
    let mut factor = Rational::new(denom_lcm, content);
    let (_, lc) = p.leading_term(order).expect("nonzero");
    if (lc * &factor).is_negative() {
        factor = -factor;
    }
    p.scale(&factor)
}

fn monic(p: &Polynomial, order: &MonomialOrder) -> Polynomial {
    match p.leading_term(order) {
        None => p.clone(),
        Some((_, lc)) => {
            let inv = Rational::one() / lc;
            p.scale(&inv)
        }
    }
}

/// The S-polynomial of two nonzero polynomials: the leading terms are
/// scaled to the lcm and cancelled.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (lm_f, lc_f) = f.leading_term(order).expect("nonzero");
    let (lm_g, lc_g) = g.leading_term(order).expect("nonzero");
    let l = lm_f.lcm(lm_g);
    let mf = l.try_div(lm_f).unwrap();
    let mg = l.try_div(lm_g).unwrap();
    &f.mul_term(&mf, lc_g) - &g.mul_term(&mg, lc_f)
}

// ---------------------------------------------------------------------------
// Buchberger
// ---------------------------------------------------------------------------

/// Reduced Gröbner basis of the ideal under the given order. Pair
/// selection follows the normal strategy (minimal lcm total degree, ties
/// by the order on the lcm); the coprimality and chain criteria prune
/// useless pairs. An empty generator list yields an empty basis.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    let ring = ideal.ring().clone();
    let mut basis: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| primitive_part(g, &order))
        .collect();

    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.push((i, j));
        }
    }

    let lm = |basis: &[Polynomial], i: usize| -> Monomial {
        basis[i].leading_term(&order).expect("nonzero").0.clone()
    };

    while !pending.is_empty() {
        // normal selection strategy
        let mut best = 0usize;
        let mut best_key = lm(&basis, pending[0].0).lcm(&lm(&basis, pending[0].1));
        for (ix, &(i, j)) in pending.iter().enumerate().skip(1) {
            let key = lm(&basis, i).lcm(&lm(&basis, j));
            let better = match key.degree().cmp(&best_key.degree()) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => order.cmp(&key, &best_key) == std::cmp::Ordering::Less,
            };
            if better {
                best = ix;
                best_key = key;
            }
        }
        let (i, j) = pending.remove(best);
        treated.insert((i, j));

        let lm_i = lm(&basis, i);
        let lm_j = lm(&basis, j);
        if lm_i.is_coprime_to(&lm_j) {
            continue; // coprimality criterion
        }
        let l = lm_i.lcm(&lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis, k).divides(&l)
                && treated.contains(&key(i, k))
                && treated.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], &order);
        let r = reduce_full(&s, &basis, &order);
        if !r.is_zero() {
            let r = primitive_part(&r, &order);
            let new_ix = basis.len();
            basis.push(r);
            for k in 0..new_ix {
                pending.push((k, new_ix));
            }
        }
    }

    GroebnerBasis {
        ring,
        order: order.clone(),
        elements: reduce_basis(basis, &order),
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Interreduce: drop elements whose leading monomial is divisible by
/// another's, fully reduce the survivors against each other, normalize
/// monic, and sort by leading monomial descending.
fn reduce_basis(mut basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    // ascending by leading monomial so divisors are seen first
    basis.sort_by(|a, b| {
        order.cmp(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm_g = g.leading_term(order).unwrap().0.clone();
        if !minimal
            .iter()
            .any(|h| h.leading_term(order).unwrap().0.divides(&lm_g))
        {
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in snapshot.iter().enumerate() {
        let others: Vec<Polynomial> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = reduce_full(g, &others, order);
        debug_assert!(!r.is_zero(), "minimal element reduced to zero");
        reduced.push(monic(&r, order));
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            b.leading_term(order).unwrap().0,
            a.leading_term(order).unwrap().0,
        )
    });
    reduced
}

// ---------------------------------------------------------------------------
// derived queries
// ---------------------------------------------------------------------------

/// True exactly when the normal form of `p` modulo a Gröbner basis of the
/// ideal vanishes.
pub fn ideal_member(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    let gb = ideal.groebner(MonomialOrder::DegRevLex);
    Ok(gb.normal_form(p)?.is_zero())
}

/// Radical membership via the Rabinowitsch trick: `p` lies in the radical
/// iff `1` lies in the ideal extended by `1 - t*p` for a fresh variable
/// `t`.
pub fn radical_member(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if p.ring() != ideal.ring() {
        return Err(Error::ring_mismatch(ideal.ring(), p.ring()));
    }
    if p.is_zero() {
        return Ok(true);
    }
    let ring = ideal.ring();
    let t_name = ring.fresh_name("t");
    let ext = ring.extended(vec![t_name])?;
    let embed: Vec<usize> = (0..ring.var_count()).collect();
    let t = Polynomial::variable(&ext, ext.var_count() - 1)?;
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&ext, &embed))
        .collect::<Result<_>>()?;
    let p_ext = p.embed(&ext, &embed)?;
    gens.push(&Polynomial::one(&ext) - &(&t * &p_ext));
    let gb = Ideal::new(ext, gens)?.groebner(MonomialOrder::DegRevLex);
    Ok(gb.contains_one())
}

/// Krull dimension of the affine quotient ring: the maximum size of a
/// variable subset that contains no leading monomial's support. Returns
/// the sentinel -1 for the unit ideal.
pub fn krull_dimension(ideal: &Ideal) -> i64 {
    let gb = ideal.groebner(MonomialOrder::DegRevLex);
    krull_dimension_of_leading_monomials(&gb.leading_monomials(), ideal.ring().var_count())
}

pub(crate) fn krull_dimension_of_leading_monomials(lms: &[Monomial], n: usize) -> i64 {
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    assert!(n <= 24, "subset scan limited to 24 variables");
    let supports: Vec<u64> = lms.iter().map(|m| m.support_mask()).collect();
    let mut best = 0u32;
    for subset in 0u64..(1u64 << n) {
        if subset.count_ones() <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = subset.count_ones();
        }
    }
    i64::from(best)
}

/// Generators of `ideal ∩ k[kept variables]`, read off a Gröbner basis
/// under a block order with the eliminated variables greater than the
/// kept ones. Generators stay in the ambient ring but involve only kept
/// variables.
pub fn elimination_ideal(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let n = ideal.ring().var_count();
    for &i in keep {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, count: n });
        }
    }
    let eliminated: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let keep_mask: u64 = keep.iter().fold(0, |m, &i| m | (1 << i));
    let gb = ideal.groebner(MonomialOrder::Elimination { first: eliminated });
    let kept: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.support_mask() & !keep_mask == 0))
        .cloned()
        .collect();
    Ideal::new(ideal.ring().clone(), kept)
}

/// The ideal of algebraic relations among homogeneous polynomials:
/// all `G` with `G(q_1, ..., q_s) = 0`, computed by eliminating the
/// original variables from `(y_i - q_i)`. The result lives in a fresh
/// ring with one `y` variable per input.
pub fn algebraic_relations(polys: &[Polynomial]) -> Result<Ideal> {
    if polys.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ring = polys[0].ring().clone();
    for q in polys {
        if q.ring() != &ring {
            return Err(Error::ring_mismatch(&ring, q.ring()));
        }
        if q.homogeneous_degree().is_none() {
            return Err(Error::Inhomogeneous);
        }
    }
    let n = ring.var_count();
    let s = polys.len();
    let y_names: Vec<String> = (1..=s).map(|i| ring.fresh_name(&format!("y{i}"))).collect();
    let ext = ring.extended(y_names.clone())?;
    let embed: Vec<usize> = (0..n).collect();
    let mut gens = Vec::with_capacity(s);
    for (i, q) in polys.iter().enumerate() {
        let yi = Polynomial::variable(&ext, n + i)?;
        gens.push(&yi - &q.embed(&ext, &embed)?);
    }
    let keep: Vec<usize> = (n..n + s).collect();
    let relations = elimination_ideal(&Ideal::new(ext, gens)?, &keep)?;

    // project into the fresh y-ring
    let y_ring = Ring::new(y_names)?;
    let proj: Vec<Polynomial> = relations
        .generators()
        .iter()
        .map(|g| {
            let map: Vec<usize> = (0..n + s).map(|i| i.saturating_sub(n)).collect();
            debug_assert!(g.terms().all(|(m, _)| (0..n).all(|i| m.exponent(i) == 0)));
            g.embed(&y_ring, &map)
        })
        .collect::<Result<_>>()?;
    Ideal::new(y_ring, proj)
}

/// Graded regular-sequence test: a sequence of positive-degree
/// homogeneous polynomials is regular exactly when the quotient has the
/// expected dimension `n - c`. Sequences longer than the variable count
/// are never regular.
pub fn is_regular_sequence(polys: &[Polynomial]) -> Result<bool> {
    if polys.is_empty() {
        return Ok(true);
    }
    let ring = polys[0].ring().clone();
    for q in polys {
        if q.ring() != &ring {
            return Err(Error::ring_mismatch(&ring, q.ring()));
        }
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match q.homogeneous_degree() {
            None => return Err(Error::Inhomogeneous),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(_) => {}
        }
    }
    let n = ring.var_count();
    let c = polys.len();
    if c > n {
        return Ok(false);
    }
    let dim = krull_dimension(&Ideal::new(ring, polys.to_vec())?);
    Ok(dim == (n - c) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.to_vec()).unwrap()
    }

    fn p(r: &Ring, text: &str) -> Polynomial {
        crate::document::parse_polynomial(r, text).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r.clone(), gens.iter().map(|t| p(r, t)).collect()).unwrap()
    }

    #[test]
    fn buchberger_single_generator() {
        let r = ring(&["x1", "x2"]);
        let gb = ideal(&r, &["x1"]).groebner(MonomialOrder::DegRevLex);
        assert_eq!(gb.elements(), &[p(&r, "x1")]);
    }

    #[test]
    fn buchberger_monomial_pair_already_a_basis() {
        let r = ring(&["x1", "x2"]);
        let gb = ideal(&r, &["x1^2", "x1*x2"]).groebner(MonomialOrder::DegRevLex);
        let mut elems = gb.elements().to_vec();
        elems.sort_by_key(|e| e.to_string());
        assert_eq!(elems, vec![p(&r, "x1*x2"), p(&r, "x1^2")]);
    }

    #[test]
    fn buchberger_twisted_pair() {
        // Oracle (hand S-polynomial computation, cross-checked in an
        // independent CAS): under degrevlex the reduced basis gains the
        // element z0*w2^2 - z0*z1*w3; under lex it gains z1^2*w3 - z1*w2^2,
        // whose leading monomial divides z1^2*w3.
        let r = ring(&["z0", "z1", "w2", "w3"]);
        let id = ideal(&r, &["z0*w2 - z1^2", "z0*w3 - z1*w2"]);

        let gb = id.groebner(MonomialOrder::DegRevLex);
        assert_eq!(gb.elements().len(), 3);
        let expect = [
            p(&r, "z1^2 - z0*w2"),
            p(&r, "z1*w2 - z0*w3"),
            p(&r, "z0*w2^2 - z0*z1*w3"),
        ];
        for e in &expect {
            assert!(
                gb.elements().contains(e),
                "missing {e} in {:?}",
                gb.elements()
            );
        }

        let gb_lex = id.groebner(MonomialOrder::Lex);
        let third = p(&r, "z1^2*w3 - z1*w2^2");
        assert!(
            gb_lex.elements().contains(&third),
            "{:?}",
            gb_lex.elements()
        );
        let target = Monomial::from_exponents(vec![0, 2, 0, 1]);
        assert!(gb_lex.elements().iter().any(|g| g
            .leading_term(&MonomialOrder::Lex)
            .unwrap()
            .0
            .divides(&target)));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["z0", "z1", "w2", "w3"]);
        let id = ideal(&r, &["z0*w2 - z1^2", "z0*w3 - z1*w2"]);
        let gb = id.groebner(MonomialOrder::DegRevLex);

        for g in id.generators() {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        // oracle: the point (z0, z1, w2, w3) = (0, 0, 1, 1) kills both
        // generators but evaluates z1*w3 - w2^2 to -1, so the normal form
        // cannot vanish
        let q = p(&r, "z1*w3 - w2^2");
        let point = [rat_int(0), rat_int(0), rat_int(1), rat_int(1)];
        for g in id.generators() {
            assert_eq!(g.evaluate(&point).unwrap(), rat_int(0));
        }
        assert_eq!(q.evaluate(&point).unwrap(), rat_int(-1));
        assert!(!gb.normal_form(&q).unwrap().is_zero());

        assert!(gb.normal_form(&Polynomial::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn ideal_member_examples() {
        let r = ring(&["x1", "x2", "x3", "x4", "x5", "x6", "x7"]);
        let id = ideal(&r, &["x1*x5 - x2^2", "x1*x6 - x3^2", "x1*x7 - x2*x3"]);
        assert!(!ideal_member(&p(&r, "x3*x5 - x2*x7"), &id).unwrap());
        for g in id.generators() {
            assert!(ideal_member(g, &id).unwrap());
            let x1g = &p(&r, "x1") * g;
            assert!(ideal_member(&x1g, &id).unwrap());
        }
    }

    #[test]
    fn radical_member_examples() {
        let r = ring(&["x1", "x2"]);
        let id = ideal(&r, &["x1^2"]);
        assert!(radical_member(&p(&r, "x1"), &id).unwrap());
        assert!(!radical_member(&p(&r, "x2"), &id).unwrap());
        assert!(radical_member(&Polynomial::zero(&r), &id).unwrap());
    }

    #[test]
    fn krull_dimension_examples() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(krull_dimension(&ideal(&r, &["x1^2", "x2^2"])), 0);
        assert_eq!(krull_dimension(&ideal(&r, &["x1^2", "x1*x2"])), 1);
        assert_eq!(krull_dimension(&ideal(&r, &[])), 2);
        assert_eq!(krull_dimension(&ideal(&r, &["x1 - 1", "x1"])), -1);
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["x", "y"]);
        let id = ideal(&r, &["y - x^2"]);
        let elim = elimination_ideal(&id, &[1]).unwrap();
        assert!(elim.generators().is_empty());

        let r3 = ring(&["x1", "x2", "y1", "y2", "y3"]);
        let id = ideal(&r3, &["y1 - x1^2", "y2 - x1*x2", "y3 - x2^2"]);
        let elim = elimination_ideal(&id, &[2, 3, 4]).unwrap();
        assert_eq!(elim.generators().len(), 1);
        assert_eq!(elim.generators()[0], p(&r3, "y2^2 - y1*y3"));

        let id = ideal(&r, &["x - 1", "y - x"]);
        let elim = elimination_ideal(&id, &[0]).unwrap();
        assert_eq!(elim.generators(), &[p(&r, "x - 1")]);
    }

    #[test]
    fn algebraic_relations_examples() {
        let r = ring(&["x1", "x2"]);
        let rel = algebraic_relations(&[p(&r, "x1^2"), p(&r, "x1*x2"), p(&r, "x2^2")]).unwrap();
        assert_eq!(rel.generators().len(), 1);
        let y = rel.ring().clone();
        assert_eq!(rel.generators()[0], p(&y, "y2^2 - y1*y3"));

        let rel = algebraic_relations(&[p(&r, "x1^2"), p(&r, "x2^2")]).unwrap();
        assert!(rel.generators().is_empty());

        // the scalar relation y2 - 3*y1, in monic reduced form
        let rel = algebraic_relations(&[p(&r, "x1^2"), p(&r, "3*x1^2")]).unwrap();
        let y = rel.ring().clone();
        assert_eq!(rel.generators(), &[p(&y, "y1 - 1/3*y2")]);
        assert_eq!(
            rel.generators()[0].scale(&crate::poly::rat_int(-3)),
            p(&y, "y2 - 3*y1")
        );
    }

    #[test]
    fn regular_sequence_examples() {
        let r = ring(&["x1", "x2"]);
        assert!(is_regular_sequence(&[p(&r, "x1^2"), p(&r, "x2^2")]).unwrap());
        assert!(!is_regular_sequence(&[p(&r, "x1^2"), p(&r, "x1*x2")]).unwrap());

        let r7 = ring(&["x1", "x2", "x3", "x4", "x5", "x6", "x7"]);
        assert!(is_regular_sequence(&[
            p(&r7, "x1*x5 - x2^2"),
            p(&r7, "x1*x6 - x3^2"),
            p(&r7, "x1*x7 - x2*x3"),
        ])
        .unwrap());

        // more polynomials than variables is never regular
        assert!(!is_regular_sequence(&[p(&r, "x1^2"), p(&r, "x2^2"), p(&r, "x1*x2")]).unwrap());
        assert!(matches!(
            is_regular_sequence(&[Polynomial::zero(&r)]),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            is_regular_sequence(&[Polynomial::one(&r)]),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn empty_generators_give_empty_basis() {
        let r = ring(&["x1"]);
        let gb = ideal(&r, &[]).groebner(MonomialOrder::DegRevLex);
        assert!(gb.elements().is_empty());
        assert!(!gb.contains_one());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(ring: Ring, max_deg: u32) -> impl Strategy<Value = Polynomial> {
            let n = ring.var_count();
            let term = (
                proptest::collection::vec(0u32..=max_deg, n),
                (-4i64..=4).prop_map(rat_int),
            )
                .prop_filter("degree cap", move |(exps, _)| {
                    exps.iter().sum::<u32>() <= max_deg
                })
                .prop_map(|(exps, c)| (Monomial::from_exponents(exps), c));
            proptest::collection::vec(term, 0..4)
                .prop_map(move |terms| Polynomial::from_terms(&ring, terms))
        }

        fn small_ring() -> Ring {
            Ring::new(vec!["x1", "x2", "x3"]).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn buchberger_postconditions(
                gens in proptest::collection::vec(arb_poly(small_ring(), 3), 1..4),
            ) {
                let r = small_ring();
                let id = Ideal::new(r.clone(), gens).unwrap();
                let order = MonomialOrder::DegRevLex;
                let gb = id.groebner(order.clone());

                // every S-polynomial of basis pairs reduces to zero
                for i in 0..gb.elements().len() {
                    for j in i + 1..gb.elements().len() {
                        let s = s_polynomial(&gb.elements()[i], &gb.elements()[j], &order);
                        prop_assert!(gb.normal_form(&s).unwrap().is_zero());
                    }
                }
                // every input generator reduces to zero
                for g in id.generators() {
                    prop_assert!(gb.normal_form(g).unwrap().is_zero());
                }
                // basis is reduced: monic, no term divisible by another's lm
                for (i, g) in gb.elements().iter().enumerate() {
                    let (_, lc) = g.leading_term(&order).unwrap();
                    prop_assert_eq!(lc.clone(), num_traits::One::one());
                    for (j, h) in gb.elements().iter().enumerate() {
                        if i == j { continue; }
                        let lm_h = h.leading_term(&order).unwrap().0;
                        for (m, _) in g.terms() {
                            prop_assert!(!lm_h.divides(m));
                        }
                    }
                }
            }

            #[test]
            fn normal_form_is_idempotent(
                gens in proptest::collection::vec(arb_poly(small_ring(), 3), 1..4),
                q in arb_poly(small_ring(), 3),
            ) {
                let r = small_ring();
                let gb = Ideal::new(r, gens).unwrap().groebner(MonomialOrder::DegRevLex);
                let nf = gb.normal_form(&q).unwrap();
                prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf);
            }

            #[test]
            fn ideal_membership_implies_radical_membership(
                gens in proptest::collection::vec(arb_poly(small_ring(), 2), 1..3),
                mult in arb_poly(small_ring(), 1),
            ) {
                let r = small_ring();
                let id = Ideal::new(r, gens.clone()).unwrap();
                if let Some(g) = id.generators().first() {
                    let q = &mult * g;
                    prop_assert!(ideal_member(&q, &id).unwrap());
                    prop_assert!(radical_member(&q, &id).unwrap());
                }
            }

            #[test]
            fn regular_sequence_test_is_basis_invariant(
                seed_coeffs in proptest::collection::vec(
                    proptest::collection::vec(-2i64..=2, 6), 1..3),
                ops in proptest::collection::vec((0usize..3, 0usize..3, 0usize..3, -2i64..=2), 0..6),
                swap in proptest::collection::vec((0usize..3, 0usize..3), 0..3),
            ) {
                // build an independent list of quadrics, then recombine it
                // by an invertible integer matrix and permute; regularity
                // only depends on the span
                let r = small_ring();
                let frame = r.monomials_of_degree(2);
                let gens: Vec<Polynomial> = seed_coeffs
                    .iter()
                    .map(|coeffs| Polynomial::from_terms(
                        &r,
                        frame.iter().cloned().zip(coeffs.iter().map(|&c| rat_int(c))),
                    ))
                    .collect();
                let basis = crate::linalg::rref_basis(&r, 2, &gens).unwrap();
                let seq: Vec<Polynomial> = basis.basis().to_vec();
                prop_assume!(!seq.is_empty());
                let base = is_regular_sequence(&seq).unwrap();

                let k = seq.len();
                let mut m: Vec<Vec<i64>> = (0..k)
                    .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
                    .collect();
                for &(i, j, _, f) in &ops {
                    let (i, j) = (i % k, j % k);
                    if i != j {
                        for col in 0..k {
                            m[i][col] += f * m[j][col];
                        }
                    }
                }
                for &(i, j) in &swap {
                    m.swap(i % k, j % k);
                }
                let recombined: Vec<Polynomial> = (0..k)
                    .map(|i| {
                        let mut acc = Polynomial::zero(&r);
                        for (j, b) in seq.iter().enumerate() {
                            if m[i][j] != 0 {
                                acc = &acc + &b.scale(&rat_int(m[i][j]));
                            }
                        }
                        acc
                    })
                    .collect();
                prop_assert_eq!(is_regular_sequence(&recombined).unwrap(), base);
            }

            #[test]
            fn monomial_ideal_dimension_matches_brute_force(
                exps in proptest::collection::vec(
                    proptest::collection::vec(0u32..=2, 4), 1..4),
            ) {
                let r = Ring::new(vec!["x1", "x2", "x3", "x4"]).unwrap();
                let gens: Vec<Polynomial> = exps
                    .iter()
                    .map(|e| Polynomial::term(&r, Monomial::from_exponents(e.clone()), rat_int(1)))
                    .collect();
                let id = Ideal::new(r, gens.clone()).unwrap();
                let dim = krull_dimension(&id);

                // oracle: scan subsets directly over the raw generator
                // monomials (a monomial set is its own Groebner basis)
                let monos: Vec<Monomial> = gens
                    .iter()
                    .filter(|g| !g.is_zero())
                    .map(|g| g.terms().next().unwrap().0.clone())
                    .collect();
                let expected = if monos.iter().any(|m| m.is_one()) {
                    -1
                } else {
                    let mut best = 0i64;
                    for subset in 0u64..16 {
                        let ok = monos.iter().all(|m| m.support_mask() & !subset != 0);
                        if ok {
                            best = best.max(i64::from(subset.count_ones()));
                        }
                    }
                    best
                };
                prop_assert_eq!(dim, expected);
            }
        }
    }
}
