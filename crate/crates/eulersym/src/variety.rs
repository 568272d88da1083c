//! The ambient model of the variety attached to a symbol system: quadric
//! generators, the parametrizing map, the rank-2 translation action, the
//! complete-intersection decision and exact sampling verification.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{algebraic_relations, is_regular_sequence};
use crate::linalg::PolySpaceBasis;
use crate::poly::{rat_int, Polynomial, Rational, Ring};
use crate::symbol::{BaseLocusReport, SymbolSystem};

/// A point of projective space with exact rational homogeneous
/// coordinates; equality is up to a global nonzero scalar.
#[derive(Clone)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<ProjectivePoint> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::IndeterminatePoint);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let f = self
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero");
        if other.coords[f].is_zero() {
            return false;
        }
        let (a, b) = (&self.coords[f], &other.coords[f]);
        self.coords
            .iter()
            .zip(other.coords.iter())
            .all(|(p, q)| p * b == q * a)
    }
}

impl Eq for ProjectivePoint {}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// Ambient coordinates and the degree-2 generators cut out by a symbol
/// system. Ambient naming is fixed: `z0`, `z1..zn`, then `w<i>_<j>`
/// grouped by level `j` ascending, index `i` ascending, so artifacts are
/// reproducible across runs.
#[derive(Clone, Debug)]
pub struct VarietyModel {
    system: SymbolSystem,
    ambient: Ring,
    generators: Vec<Polynomial>,
    /// (level, offset of the level's first w-variable in the ambient
    /// ring, component dimension), ascending by level
    levels: Vec<(u32, usize, usize)>,
}

impl VarietyModel {
    pub fn system(&self) -> &SymbolSystem {
        &self.system
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    /// The generators f_i^(j), grouped by level ascending.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    /// Projective dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient.var_count() - 1
    }

    pub fn codim(&self) -> usize {
        self.generators.len()
    }

    /// Index of `w_i^(level)` (1-based `i`) in the ambient ring.
    pub fn w_index(&self, level: u32, i: usize) -> Option<usize> {
        self.levels
            .iter()
            .find(|(l, _, _)| *l == level)
            .and_then(|(_, offset, dim)| if i < *dim { Some(offset + i) } else { None })
    }

    /// For rank <= 2 systems, the flat `w0..wN` coordinate alias.
    pub fn rank2_alias_ring(&self) -> Option<Ring> {
        if self.system.rank() > 2 {
            return None;
        }
        let names: Vec<String> = (0..self.ambient.var_count())
            .map(|i| format!("w{i}"))
            .collect();
        Some(Ring::new(names).expect("distinct names"))
    }

    /// Generators renamed into the `w0..wN` alias.
    pub fn generators_rank2_alias(&self) -> Option<Vec<Polynomial>> {
        let ring = self.rank2_alias_ring()?;
        Some(
            self.generators
                .iter()
                .map(|g| g.with_ring(&ring).expect("same variable count"))
                .collect(),
        )
    }
}

/// Decompose a degree-j component element against the degree-(j-1)
/// canonical basis: returns linear forms g_1..g_s with
/// `q = sum_l g_l * Q_l`, obtained from the Euler identity
/// `j*q = sum_i x_i * dq/dx_i` and the coordinates of each partial.
pub fn euler_decompose(q: &Polynomial, lower: &PolySpaceBasis) -> Result<Vec<Polynomial>> {
    let ring = q.ring().clone();
    if &ring != lower.ring() {
        return Err(Error::ring_mismatch(lower.ring(), &ring));
    }
    let j = match q.homogeneous_degree() {
        Some(d) if d >= 3 && d == lower.degree() + 1 => d,
        Some(d) => {
            return Err(Error::WrongDegree {
                expected: lower.degree() + 1,
                got: d,
            })
        }
        None => return Err(Error::Inhomogeneous),
    };
    let n = ring.var_count();
    let s = lower.dim();
    let mut forms = vec![Polynomial::zero(&ring); s];
    for i in 0..n {
        let partial = q.partial_derivative(i)?;
        let coords = lower.coordinates(&partial).map_err(|e| match e {
            Error::NotAMember => Error::InvalidSystem(format!(
                "partial derivative {partial} does not lie in the degree-{} component",
                lower.degree()
            )),
            other => other,
        })?;
        let xi = Polynomial::variable(&ring, i)?;
        for (l, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let scaled = xi.scale(&(c / rat_int(j as i64)));
                forms[l] = &forms[l] + &scaled;
            }
        }
    }
    // Euler identity reconstruction must be exact
    let mut rebuilt = Polynomial::zero(&ring);
    for (g, base) in forms.iter().zip(lower.basis()) {
        rebuilt = &rebuilt + &(g * base);
    }
    assert_eq!(&rebuilt, q, "Euler reconstruction failed");
    Ok(forms)
}

/// Build the ambient space and the degree-2 generators: for the base
/// level, `f_i = z0*w_i - Q_i(z1..zn)`; for level j >= 3,
/// `f_i = z0*w_i^(j) - sum_l g_l^(j-1)(z1..zn) * w_l^(j-1)` with the
/// forms from `euler_decompose`. Rejects systems that fail validation.
pub fn build_generators(sys: &SymbolSystem) -> Result<VarietyModel> {
    let report = sys.validate();
    if let Some(failure) = &report.failure {
        return Err(Error::InvalidSystem(failure.to_string()));
    }
    let n = sys.n();
    let rank = report.rank;

    let mut names: Vec<String> = Vec::new();
    names.push("z0".to_string());
    for i in 1..=n {
        names.push(format!("z{i}"));
    }
    let mut levels: Vec<(u32, usize, usize)> = Vec::new();
    for k in 2..=rank {
        let dim = sys.component(k).map(|b| b.dim()).unwrap_or(0);
        levels.push((k, names.len(), dim));
        for i in 1..=dim {
            names.push(format!("w{i}_{k}"));
        }
    }
    let ambient = Ring::new(names)?;

    let z0 = Polynomial::variable(&ambient, 0)?;
    let z_images: Vec<Polynomial> = (1..=n)
        .map(|i| Polynomial::variable(&ambient, i))
        .collect::<Result<_>>()?;

    let mut generators = Vec::new();
    for &(level, offset, dim) in &levels {
        let space = match sys.component(level) {
            Some(b) if b.dim() > 0 => b,
            _ => continue,
        };
        debug_assert_eq!(space.dim(), dim);
        if level == 2 {
            for (i, q) in space.basis().iter().enumerate() {
                let w = Polynomial::variable(&ambient, offset + i)?;
                let q_in_z = q.compose(&ambient, &z_images)?;
                generators.push(&(&z0 * &w) - &q_in_z);
            }
        } else {
            let lower = sys
                .component(level - 1)
                .filter(|b| b.dim() > 0)
                .ok_or(Error::EmptyComponent(level - 1))?;
            let (_, lower_offset, _) = levels
                .iter()
                .copied()
                .find(|(l, _, _)| *l == level - 1)
                .expect("validated system has no gaps");
            for (i, q) in space.basis().iter().enumerate() {
                let w = Polynomial::variable(&ambient, offset + i)?;
                let forms = euler_decompose(q, lower)?;
                let mut rhs = Polynomial::zero(&ambient);
                for (l, g) in forms.iter().enumerate() {
                    let g_in_z = g.compose(&ambient, &z_images)?;
                    let w_lower = Polynomial::variable(&ambient, lower_offset + l)?;
                    rhs = &rhs + &(&g_in_z * &w_lower);
                }
                generators.push(&(&z0 * &w) - &rhs);
            }
        }
    }

    Ok(VarietyModel {
        system: sys.clone(),
        ambient,
        generators,
        levels,
    })
}

/// The parametrizing map: `(t, w)` goes to
/// `[t^r : t^(r-1) w : t^(r-2) Q^(2)(w) : ... : Q^(r)(w)]` using the
/// canonical bases. Errors when the image would be the zero vector.
pub fn phi(sys: &SymbolSystem, t: &Rational, w: &[Rational]) -> Result<ProjectivePoint> {
    let n = sys.n();
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: w.len(),
        });
    }
    let r = sys.rank();
    let mut coords = Vec::new();
    coords.push(crate::poly::rat_pow(t, r));
    let t_pow_r1 = crate::poly::rat_pow(t, r - 1);
    for wi in w {
        coords.push(&t_pow_r1 * wi);
    }
    for k in 2..=r {
        if let Some(space) = sys.component(k).filter(|b| b.dim() > 0) {
            let t_pow = crate::poly::rat_pow(t, r - k);
            for q in space.basis() {
                coords.push(&t_pow * &q.evaluate(w)?);
            }
        }
    }
    ProjectivePoint::new(coords)
}

/// The translation by `v` on the ambient space of a rank-2 model:
/// `b_i = w_i + w_0 v_i` on the linear block and
/// `b_(n+j) = w_(n+j) + sum_i v_i (dQ_j/dx_i)(w) + w_0 Q_j(v)` on the
/// quadric block. Points satisfying all generators stay on the model.
pub fn translation_action(
    model: &VarietyModel,
    v: &[Rational],
    point: &ProjectivePoint,
) -> Result<ProjectivePoint> {
    let rank = model.system.rank();
    if rank != 2 {
        return Err(Error::RankNotTwo(rank));
    }
    let n = model.n();
    if v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: v.len(),
        });
    }
    if point.len() != model.ambient.var_count() {
        return Err(Error::LengthMismatch {
            expected: model.ambient.var_count(),
            got: point.len(),
        });
    }
    let space = model
        .system
        .component(2)
        .filter(|b| b.dim() > 0)
        .ok_or(Error::EmptyComponent(2))?;

    let w0 = &point.coords()[0];
    let w_bar = &point.coords()[1..=n];
    let mut out = Vec::with_capacity(point.len());
    out.push(w0.clone());
    for (i, wi) in w_bar.iter().enumerate() {
        out.push(wi + &(w0 * &v[i]));
    }
    for (j, q) in space.basis().iter().enumerate() {
        let mut b = point.coords()[n + 1 + j].clone();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let partial = q.partial_derivative(i)?;
            b += vi * &partial.evaluate(w_bar)?;
        }
        b += w0 * &q.evaluate(v)?;
        out.push(b);
    }
    ProjectivePoint::new(out)
}

/// For a rank-2 system the variety of lines through a general point,
/// seen inside the projectivized tangent space, is exactly the base
/// locus of the quadric component.
pub fn lines_through_general_point(sys: &SymbolSystem) -> Result<BaseLocusReport> {
    let rank = sys.rank();
    if rank != 2 {
        return Err(Error::RankNotTwo(rank));
    }
    sys.base_locus(2)
}

// ---------------------------------------------------------------------------
// the decision
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CIReason {
    RankGe3,
    CodimExceedsN,
    RegularSequenceTrue,
    RegularSequenceFalse,
    RankOneTrivial,
}

impl fmt::Display for CIReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CIReason::RankGe3 => "rank_ge_3",
            CIReason::CodimExceedsN => "codim_exceeds_n",
            CIReason::RegularSequenceTrue => "regular_sequence_true",
            CIReason::RegularSequenceFalse => "regular_sequence_false",
            CIReason::RankOneTrivial => "rank_one_trivial",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Data {
    /// Dimension of the quadric component.
    pub c: usize,
    /// Codimension of the base locus in P(W).
    pub b: u32,
    /// The quadrics cut the variety out scheme-theoretically: b = c.
    pub quadratic: bool,
    /// The quadric intersection is a set-theoretic complete
    /// intersection: b >= c - 1.
    pub y_set_theoretic_ci: bool,
}

/// The decision record. `is_complete_intersection` is true only with
/// reasons `regular_sequence_true` or `rank_one_trivial`; the witness, a
/// polynomial relation vanishing on the variety but missing from the
/// quadric ideal's radical, appears only in the rank >= 3 case with
/// enough quadrics below the top level. Invalid systems produce
/// `valid = false` and no reason.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CIVerdict {
    pub valid: bool,
    pub rank: u32,
    pub n: usize,
    pub codim: usize,
    pub rank2: Option<Rank2Data>,
    pub is_complete_intersection: bool,
    pub reason: Option<CIReason>,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Polynomial>,
}

fn serialize_witness<S>(w: &Option<Polynomial>, s: S) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    match w {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Produce the algebraic-dependence witness when the hypotheses hold.
    pub witness: bool,
    /// Use the dimension-count shortcut (more quadrics than variables can
    /// never give a complete intersection) before the regular-sequence
    /// test.
    pub fast_path: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            witness: false,
            fast_path: true,
        }
    }
}

pub fn decide_ci(sys: &SymbolSystem) -> CIVerdict {
    decide_ci_with(sys, DecideOptions::default())
}

/// Decide whether the variety of the system is a complete intersection.
///
/// Rank 1 is trivially one (the variety is the whole projective space).
/// Rank >= 3 never is; when the next-to-top component has dimension
/// larger than n, a witness relation can be attached. Rank 2 reduces to
/// the regular-sequence criterion on the quadrics, with the dimension
/// shortcut when there are more quadrics than variables; the base-locus
/// codimension b, the quadratic flag (b = c) and the set-theoretic flag
/// (b >= c-1) are always filled in.
pub fn decide_ci_with(sys: &SymbolSystem, opts: DecideOptions) -> CIVerdict {
    let report = sys.validate();
    let rank = report.rank;
    let n = report.n;
    let codim = sys.codimension();
    if !report.is_valid() {
        return CIVerdict {
            valid: false,
            rank,
            n,
            codim,
            rank2: None,
            is_complete_intersection: false,
            reason: None,
            witness: None,
        };
    }
    if rank == 1 {
        return CIVerdict {
            valid: true,
            rank,
            n,
            codim: 0,
            rank2: None,
            is_complete_intersection: true,
            reason: Some(CIReason::RankOneTrivial),
            witness: None,
        };
    }
    if rank >= 3 {
        let witness = if opts.witness {
            witness_rank3_case1(sys).ok().flatten()
        } else {
            None
        };
        return CIVerdict {
            valid: true,
            rank,
            n,
            codim,
            rank2: None,
            is_complete_intersection: false,
            reason: Some(CIReason::RankGe3),
            witness,
        };
    }

    let space = sys.component(2).expect("rank 2 has a quadric component");
    let c = space.dim();
    let locus = sys.base_locus(2).expect("nonzero component");
    let b = locus.codim;
    let rank2 = Rank2Data {
        c,
        b,
        quadratic: b as usize == c,
        y_set_theoretic_ci: b as usize + 1 >= c,
    };
    let (is_ci, reason) = if opts.fast_path && c > n {
        (false, CIReason::CodimExceedsN)
    } else if is_regular_sequence(space.basis()).expect("quadrics are homogeneous nonconstant") {
        (true, CIReason::RegularSequenceTrue)
    } else {
        (false, CIReason::RegularSequenceFalse)
    };
    CIVerdict {
        valid: true,
        rank,
        n,
        codim,
        rank2: Some(rank2),
        is_complete_intersection: is_ci,
        reason: Some(reason),
        witness: None,
    }
}

/// A nonzero homogeneous relation among the next-to-top component's
/// basis elements, rewritten in the matching ambient w-variables. Exists
/// whenever rank >= 3 and that component's dimension exceeds n; absent
/// otherwise. The relation vanishes on the whole variety.
pub fn witness_rank3_case1(sys: &SymbolSystem) -> Result<Option<Polynomial>> {
    let report = sys.validate();
    if let Some(failure) = &report.failure {
        return Err(Error::InvalidSystem(failure.to_string()));
    }
    let rank = report.rank;
    if rank < 3 {
        return Ok(None);
    }
    let lower = match sys.component(rank - 1) {
        Some(b) if b.dim() > sys.n() => b,
        _ => return Ok(None),
    };
    let relations = algebraic_relations(lower.basis())?;
    if relations.generators().is_empty() {
        return Ok(None);
    }
    // lowest-degree generator; ties broken by the deterministic basis order
    let g = relations
        .generators()
        .iter()
        .min_by_key(|g| g.degree().unwrap_or(0))
        .expect("nonempty")
        .clone();

    let model = build_generators(sys)?;
    let s = lower.dim();
    let map: Vec<usize> = (0..s)
        .map(|l| model.w_index(rank - 1, l).expect("level exists"))
        .collect();
    Ok(Some(g.embed(model.ambient(), &map)?))
}

// ---------------------------------------------------------------------------
// exact sampling
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub t: Rational,
    pub w: Vec<Rational>,
    pub point: ProjectivePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub requested: usize,
    pub checked: usize,
    pub failures: usize,
}

impl SampleReport {
    pub fn all_vanished(&self) -> bool {
        self.failures == 0 && self.checked == self.requested
    }
}

impl fmt::Display for SampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} generators vanish on all samples (seed {})",
            self.checked - self.failures,
            self.requested,
            self.seed
        )
    }
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    // numerators and denominators bounded by 100
    let num = rng.random_range(-100i64..=100);
    let den = rng.random_range(1i64..=100);
    crate::poly::rat(num, den)
}

/// Deterministic stream of parameter samples and their images under the
/// map; draws that would hit the indeterminacy locus are skipped.
pub fn sample_points(sys: &SymbolSystem, seed: u64, count: usize) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.n();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = random_rational(&mut rng);
        let w: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        if let Ok(point) = phi(sys, &t, &w) {
            out.push(SamplePoint { t, w, point });
        }
    }
    out
}

/// Draw `count` random exact parameter values, push them through the
/// map, and verify every generator evaluates to exactly zero.
pub fn sample_check(model: &VarietyModel, seed: u64, count: usize) -> SampleReport {
    let samples = sample_points(&model.system, seed, count);
    let mut failures = 0usize;
    for sample in &samples {
        for g in model.generators() {
            let value = g
                .evaluate(sample.point.coords())
                .expect("ambient coordinate count matches");
            if !value.is_zero() {
                failures += 1;
            }
        }
    }
    SampleReport {
        seed,
        requested: count,
        checked: samples.len(),
        failures,
    }
}
