//! Exact rational linear algebra over graded pieces of the polynomial
//! ring: canonical (reduced row echelon) bases of spans, membership,
//! coordinates and kernels. Used by prolongations and the Euler
//! decompositions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, Ring};

/// Reduced row echelon form. Forward elimination is fraction-free
/// (Bareiss) on denominator-cleared rows to contain coefficient blow-up;
/// pivots are normalized to 1 and cleared upwards at the end.
///
/// Returns the nonzero rows and their pivot column indices (strictly
/// increasing).
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    for row in &mut rows {
        debug_assert_eq!(row.len(), ncols);
        clear_denominators(row);
    }

    let nrows = rows.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    let mut prev_pivot = Rational::one();
    for col in 0..ncols {
        let Some(pivot_row) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..nrows {
            if rows[i][col].is_zero() && prev_pivot.is_one() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in 0..ncols {
                let v = (&rows[i][j] * &pivot - &rows[rank][j] * &factor) / &prev_pivot;
                rows[i][j] = v;
            }
        }
        prev_pivot = pivot;
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rows.truncate(rank);

    // normalize pivots to 1 and eliminate above
    for i in (0..rank).rev() {
        let col = pivots[i];
        let inv = rows[i][col].clone();
        for j in 0..ncols {
            let v = &rows[i][j] / &inv;
            rows[i][j] = v;
        }
        for k in 0..i {
            if rows[k][col].is_zero() {
                continue;
            }
            let factor = rows[k][col].clone();
            for j in 0..ncols {
                let v = &rows[k][j] - &factor * &rows[i][j];
                rows[k][j] = v;
            }
        }
    }
    (rows, pivots)
}

fn clear_denominators(row: &mut [Rational]) {
    let mut denom_lcm = BigInt::one();
    for c in row.iter() {
        if !c.is_zero() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    let mut content = BigInt::zero();
    for c in row.iter_mut() {
        *c *= Rational::from(denom_lcm.clone());
        debug_assert!(c.denom().is_one());
        content = content.gcd(c.numer());
    }
    if !content.is_zero() && !content.is_one() {
        for c in row.iter_mut() {
            *c /= Rational::from(content.clone());
        }
    }
}

/// Basis of the null space `{v : M v = 0}`, one vector per free column,
/// ordered by free column index. Exact and deterministic.
pub fn kernel_solve(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (rows, pivots) = rref(matrix.to_vec(), ncols);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; ncols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `M x = b` for a matrix with linearly independent columns.
/// Returns `None` when the system is inconsistent.
pub fn solve_exact(columns: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = columns.len();
    let nrows = b.len();
    let mut aug: Vec<Vec<Rational>> = Vec::with_capacity(nrows);
    for r in 0..nrows {
        let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
        row.push(b[r].clone());
        aug.push(row);
    }
    let (rows, pivots) = rref(aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][ncols].clone();
    }
    Some(x)
}

/// A finite-dimensional space of homogeneous degree-`k` polynomials,
/// stored as a canonical basis: reduced row echelon form with respect to
/// the degrevlex-sorted monomial frame of the graded piece. Pivot
/// monomials are strictly decreasing and pivot coefficients are 1, so
/// equal spans always produce identical bases.
#[derive(Clone, PartialEq, Eq)]
pub struct PolySpaceBasis {
    ring: Ring,
    degree: u32,
    frame: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    basis: Vec<Polynomial>,
}

/// Canonical basis of the span of `gens` inside the degree-`degree`
/// graded piece. Zero generators are dropped; anything inhomogeneous or
/// of the wrong degree is rejected.
pub fn rref_basis(ring: &Ring, degree: u32, gens: &[Polynomial]) -> Result<PolySpaceBasis> {
    let frame = ring.monomials_of_degree(degree);
    let index: HashMap<Monomial, usize> = frame
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut matrix = Vec::new();
    for g in gens {
        if g.ring() != ring {
            return Err(Error::ring_mismatch(ring, g.ring()));
        }
        if g.is_zero() {
            continue;
        }
        match g.homogeneous_degree() {
            None => return Err(Error::Inhomogeneous),
            Some(d) if d != degree => {
                return Err(Error::WrongDegree {
                    expected: degree,
                    got: d,
                })
            }
            Some(_) => {}
        }
        let mut row = vec![Rational::zero(); frame.len()];
        for (m, c) in g.terms() {
            row[index[m]] = c.clone();
        }
        matrix.push(row);
    }
    let ncols = frame.len();
    let (rows, pivots) = rref(matrix, ncols);
    let basis = rows
        .iter()
        .map(|row| row_to_poly(ring, &frame, row))
        .collect();
    Ok(PolySpaceBasis {
        ring: ring.clone(),
        degree,
        frame,
        index,
        rows,
        pivots,
        basis,
    })
}

fn row_to_poly(ring: &Ring, frame: &[Monomial], row: &[Rational]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        frame
            .iter()
            .zip(row.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

impl PolySpaceBasis {
    pub fn empty(ring: &Ring, degree: u32) -> PolySpaceBasis {
        rref_basis(ring, degree, &[]).expect("empty span")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn frame(&self) -> &[Monomial] {
        &self.frame
    }

    /// Coordinate vector of `p` in the monomial frame.
    pub fn coordinate_vector(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        if p.ring() != &self.ring {
            return Err(Error::ring_mismatch(&self.ring, p.ring()));
        }
        if !p.is_zero() {
            match p.homogeneous_degree() {
                None => return Err(Error::Inhomogeneous),
                Some(d) if d != self.degree => {
                    return Err(Error::WrongDegree {
                        expected: self.degree,
                        got: d,
                    })
                }
                Some(_) => {}
            }
        }
        let mut v = vec![Rational::zero(); self.frame.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    /// Reduce a frame-coordinate vector by the canonical rows; the result
    /// is the zero vector exactly when the vector lies in the span.
    pub fn reduce_vector(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        assert_eq!(v.len(), self.frame.len());
        for (row, &pivot) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[pivot].clone();
            if !c.is_zero() {
                for j in 0..v.len() {
                    let w = &v[j] - &c * &row[j];
                    v[j] = w;
                }
            }
        }
        v
    }

    /// Coordinates at the pivot slots plus the residual after reducing by
    /// the basis; the residual is zero exactly when `p` is a member.
    fn reduce(&self, p: &Polynomial) -> Result<(Vec<Rational>, Vec<Rational>)> {
        let v = self.coordinate_vector(p)?;
        let coords = self.pivots.iter().map(|&p| v[p].clone()).collect();
        Ok((coords, self.reduce_vector(v)))
    }

    pub fn member(&self, p: &Polynomial) -> Result<bool> {
        let (_, residual) = self.reduce(p)?;
        Ok(residual.iter().all(|c| c.is_zero()))
    }

    /// The unique coefficients of `p` with respect to the canonical basis.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let (coords, residual) = self.reduce(p)?;
        if residual.iter().all(|c| c.is_zero()) {
            Ok(coords)
        } else {
            Err(Error::NotAMember)
        }
    }

    /// Does this space contain every element of `other`?
    pub fn contains_space(&self, other: &PolySpaceBasis) -> Result<bool> {
        for b in other.basis() {
            if !self.member(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Debug for PolySpaceBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PolySpaceBasis(deg {}, dim {}: {:?})",
            self.degree,
            self.basis.len(),
            self.basis
        )
    }
}
