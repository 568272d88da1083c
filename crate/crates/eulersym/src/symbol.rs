//! The symbol-system domain layer: graded components with canonical
//! bases, prolongation, validation of the prolongation property, base
//! loci and essential-variable reduction.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, Ideal};
use crate::linalg::{kernel_solve, rref_basis, solve_exact, PolySpaceBasis};
use crate::poly::{rat_int, Polynomial, Rational, Ring};

/// A graded space of polynomials F^2, ..., F^r over a variable context.
/// The degree-0 piece (constants) and the degree-1 piece (all linear
/// forms) are implicit and never stored; inputs trying to restrict the
/// linear piece are rejected at the document level. Stated components may
/// be zero, which the validator reports when a nonzero component sits
/// above them.
#[derive(Clone, PartialEq)]
pub struct SymbolSystem {
    ring: Ring,
    components: BTreeMap<u32, PolySpaceBasis>,
}

impl SymbolSystem {
    pub fn new(ring: Ring, components: BTreeMap<u32, Vec<Polynomial>>) -> Result<SymbolSystem> {
        let mut canonical = BTreeMap::new();
        for (k, gens) in components {
            if k < 2 {
                return Err(Error::InvalidSystem(format!(
                    "components below degree 2 are fixed and cannot be given (got F{k})"
                )));
            }
            canonical.insert(k, rref_basis(&ring, k, &gens)?);
        }
        Ok(SymbolSystem {
            ring,
            components: canonical,
        })
    }

    /// Dimension of the underlying vector space W.
    pub fn n(&self) -> usize {
        self.ring.var_count()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Top degree with a nonzero component; 1 when there is none.
    pub fn rank(&self) -> u32 {
        self.components
            .iter()
            .filter(|(_, b)| b.dim() > 0)
            .map(|(k, _)| *k)
            .max()
            .unwrap_or(1)
    }

    /// The stated component in degree `k`, canonical basis form.
    pub fn component(&self, k: u32) -> Option<&PolySpaceBasis> {
        self.components.get(&k)
    }

    /// `(degree, dimension)` for the stated components, ascending.
    pub fn dims(&self) -> Vec<(u32, usize)> {
        self.components.iter().map(|(k, b)| (*k, b.dim())).collect()
    }

    /// Total dimension of the stated components up to the rank; this is
    /// the codimension of the associated variety in its ambient space.
    pub fn codimension(&self) -> usize {
        let r = self.rank();
        self.components
            .iter()
            .filter(|(k, _)| **k <= r)
            .map(|(_, b)| b.dim())
            .sum()
    }

    /// Check the prolongation property: every partial derivative of every
    /// degree-(k+1) basis element must lie in the degree-k component. The
    /// degree-2 component needs no check since the linear piece is full.
    pub fn validate(&self) -> ValidationReport {
        let rank = self.rank();
        let mut failure = None;
        'outer: for (&k, upper) in &self.components {
            if k == 2 || upper.dim() == 0 {
                continue;
            }
            let lower = self.components.get(&(k - 1));
            for (element_index, q) in upper.basis().iter().enumerate() {
                for var_index in 0..self.n() {
                    let partial = q.partial_derivative(var_index).expect("index in range");
                    let inside = match lower {
                        Some(space) if space.dim() > 0 => {
                            space.member(&partial).expect("degree matches")
                        }
                        _ => partial.is_zero(),
                    };
                    if !inside {
                        failure = Some(ValidationFailure {
                            degree: k,
                            element_index,
                            var_index,
                            partial,
                        });
                        break 'outer;
                    }
                }
            }
        }
        ValidationReport {
            rank,
            n: self.n(),
            dims: self.dims(),
            failure,
        }
    }

    /// Base locus of the degree-`level` component: the ideal its basis
    /// generates, the projective dimension of its zero set, and the
    /// codimension inside P(W).
    pub fn base_locus(&self, level: u32) -> Result<BaseLocusReport> {
        let space = self
            .component(level)
            .filter(|b| b.dim() > 0)
            .ok_or(Error::EmptyComponent(level))?;
        self.locus_of(space.basis().to_vec())
    }

    /// Base locus of the whole system: the zero set common to every
    /// stated component, via the sum of the level ideals.
    pub fn base_locus_total(&self) -> Result<BaseLocusReport> {
        let gens: Vec<Polynomial> = self
            .components
            .values()
            .flat_map(|b| b.basis().iter().cloned())
            .collect();
        self.locus_of(gens)
    }

    fn locus_of(&self, gens: Vec<Polynomial>) -> Result<BaseLocusReport> {
        let ideal = Ideal::new(self.ring.clone(), gens)?;
        let affine_dim = krull_dimension(&ideal);
        debug_assert!(affine_dim >= 0, "homogeneous ideal is proper");
        let projective_dimension = affine_dim - 1;
        let codim = (self.n() as i64 - 1 - projective_dimension) as u32;
        Ok(BaseLocusReport {
            ideal,
            projective_dimension,
            codim,
        })
    }
}

impl fmt::Debug for SymbolSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymbolSystem(n = {}, dims = {:?})",
            self.n(),
            self.dims()
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub rank: u32,
    pub n: usize,
    pub dims: Vec<(u32, usize)>,
    pub failure: Option<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationFailure {
    pub degree: u32,
    pub element_index: usize,
    pub var_index: usize,
    pub partial: Polynomial,
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "basis element #{} of F{} has partial derivative {} (variable #{}) outside F{}",
            self.element_index + 1,
            self.degree,
            self.partial,
            self.var_index + 1,
            self.degree - 1
        )
    }
}

/// The common zero set of a set of forms in P(W).
#[derive(Clone, Debug, PartialEq)]
pub struct BaseLocusReport {
    pub ideal: Ideal,
    /// -1 for the empty set.
    pub projective_dimension: i64,
    pub codim: u32,
}

/// The space of degree-(k+1) forms all of whose partial derivatives lie
/// in the given degree-k space. Contraction by a basis vector agrees with
/// the corresponding partial derivative up to the nonzero factor k+1, so
/// the subspace carved out is the same.
pub fn prolongation(space: &PolySpaceBasis) -> Result<PolySpaceBasis> {
    if space.degree() == 0 {
        return Err(Error::ProlongDegreeZero);
    }
    let ring = space.ring().clone();
    let n = ring.var_count();
    let k = space.degree();
    let frame_lo = space.frame().to_vec();
    let frame_hi = ring.monomials_of_degree(k + 1);
    let lo_index: std::collections::HashMap<_, _> = frame_lo
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let dim_lo = frame_lo.len();

    // residual of each unit vector of the lower frame after reduction by
    // the space's canonical rows; "v in span" is "residual(v) = 0"
    let unit_residual: Vec<Vec<Rational>> = (0..dim_lo)
        .map(|f| {
            let mut v = vec![rat_int(0); dim_lo];
            v[f] = rat_int(1);
            space.reduce_vector(v)
        })
        .collect();

    // for every variable i and unknown upper-frame monomial u, the
    // residual of d/dx_i(u) contributes one linear constraint per lower
    // frame slot
    let ncols = frame_hi.len();
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        let mut dense: Vec<Vec<Rational>> = vec![vec![rat_int(0); ncols]; dim_lo];
        for (u, mono) in frame_hi.iter().enumerate() {
            let e = mono.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[i] -= 1;
            let target = crate::poly::Monomial::from_exponents(exps);
            let row_ix = lo_index[&target];
            let scale = rat_int(e as i64);
            for (f, r) in unit_residual[row_ix].iter().enumerate() {
                if !r.is_zero() {
                    dense[f][u] = &dense[f][u] + &(r * &scale);
                }
            }
        }
        constraints.extend(dense.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
    }

    let kernel = kernel_solve(&constraints, ncols);
    let polys: Vec<Polynomial> = kernel
        .iter()
        .map(|v| {
            Polynomial::from_terms(
                &ring,
                frame_hi
                    .iter()
                    .zip(v.iter())
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect();
    rref_basis(&ring, k + 1, &polys)
}

/// The least linearly independent set of linear forms a homogeneous
/// polynomial can be written in: `k` is the dimension of the span of the
/// partial derivatives, the forms follow the construction
/// `f_i = x_i + sum_j a_ij x_j` over the lexicographically first
/// independent variable subset, and the rewritten polynomial (in a fresh
/// ring f1..fk) reproduces the input exactly under substitution.
pub fn essential_variables(p: &Polynomial) -> Result<EssentialForm> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = p.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let ring = p.ring().clone();
    let n = ring.var_count();
    let partials: Vec<Polynomial> = (0..n)
        .map(|i| p.partial_derivative(i))
        .collect::<Result<_>>()?;

    // lexicographically first independent subset, greedily
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..n {
        if partials[i].is_zero() {
            continue;
        }
        let mut attempt: Vec<Polynomial> = chosen.iter().map(|&j| partials[j].clone()).collect();
        attempt.push(partials[i].clone());
        let dim = rref_basis(&ring, degree - 1, &attempt)?.dim();
        if dim == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    let k = chosen.len();
    debug_assert!(k >= 1);

    // express the remaining partials in terms of the chosen ones
    let chosen_space = rref_basis(
        &ring,
        degree - 1,
        &chosen
            .iter()
            .map(|&j| partials[j].clone())
            .collect::<Vec<_>>(),
    )?;
    let columns: Vec<Vec<Rational>> = chosen
        .iter()
        .map(|&j| {
            chosen_space
                .coordinate_vector(&partials[j])
                .expect("degree ok")
        })
        .collect();

    let mut coeffs: Vec<Vec<Rational>> = Vec::new();
    let mut others: Vec<usize> = Vec::new();
    for (j, partial) in partials.iter().enumerate() {
        if chosen.contains(&j) {
            continue;
        }
        others.push(j);
        let b = chosen_space.coordinate_vector(partial).expect("degree ok");
        let a = solve_exact(&columns, &b).expect("partial lies in the span");
        coeffs.push(a);
    }

    // forms f_i = x_i + sum_{j not chosen} a_ij x_j
    let mut forms = Vec::with_capacity(k);
    for (pos, &i) in chosen.iter().enumerate() {
        let mut form = Polynomial::variable(&ring, i)?;
        for (oix, &j) in others.iter().enumerate() {
            let a = &coeffs[oix][pos];
            if !a.is_zero() {
                form = &form + &Polynomial::variable(&ring, j)?.scale(a);
            }
        }
        forms.push(form);
    }

    // rewrite p in the forms: invert the triangular change of variables
    // x_i = u_i - sum_j a_ij v_j (i chosen), x_j = v_j (j other)
    let mut mixed_names: Vec<String> = (1..=k).map(|i| format!("f{i}")).collect();
    mixed_names.extend(others.iter().map(|&j| ring.var_name(j).to_string()));
    let mixed = Ring::new(mixed_names)?;
    let mut images: Vec<Polynomial> = vec![Polynomial::zero(&mixed); n];
    for (pos, &i) in chosen.iter().enumerate() {
        let mut img = Polynomial::variable(&mixed, pos)?;
        for (oix, _) in others.iter().enumerate() {
            let a = &coeffs[oix][pos];
            if !a.is_zero() {
                img = &img - &Polynomial::variable(&mixed, k + oix)?.scale(a);
            }
        }
        images[i] = img;
    }
    for (oix, &j) in others.iter().enumerate() {
        images[j] = Polynomial::variable(&mixed, k + oix)?;
    }
    let in_mixed = p.compose(&mixed, &images)?;
    debug_assert!(
        in_mixed
            .terms()
            .all(|(m, _)| (k..mixed.var_count()).all(|s| m.exponent(s) == 0)),
        "rewrite must not involve the completion variables"
    );
    let fresh = Ring::new((1..=k).map(|i| format!("f{i}")).collect::<Vec<_>>())?;
    let map: Vec<usize> = (0..mixed.var_count()).map(|i| i.min(k - 1)).collect();
    let rewritten = in_mixed.embed(&fresh, &map)?;

    // round-trip check: substituting the forms back reproduces p
    debug_assert_eq!(rewritten.compose(&ring, &forms)?, *p);

    Ok(EssentialForm {
        count: k,
        forms,
        rewritten,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EssentialForm {
    pub count: usize,
    /// Linear forms in the original ring.
    pub forms: Vec<Polynomial>,
    /// The input expressed in the forms, in a fresh ring f1..fk.
    pub rewritten: Polynomial,
}
