//! The five simple Euclidean Jordan algebra families as explicit
//! structure-constant tensors.
//!
//! Basis conventions (fixed, they define the JSON coordinate order):
//!
//! * `SymR(n)`, `HermC(n)`, `HermH(n)`, `Albert` (= Herm(3, O)): the `n`
//!   diagonal units `E_ii` first, then the off-diagonal slots `(i, j)`,
//!   `i < j`, in row-major order. Each slot contributes one coordinate per
//!   real basis unit `u` of the composition algebra (1, i, j, k, ...); the
//!   basis element has `u` at `(i, j)` and `ū` at `(j, i)`.
//! * `Spin(d)`: the unit first, then the `d` vector coordinates.
//!
//! The trace is normalized so that `tr(e) = rank` for every family.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};
use crate::octonion;

/// Largest matrix size accepted for the matrix families.
pub const MAX_MATRIX_SIZE: usize = 8;
/// Largest vector dimension accepted for spin factors.
pub const MAX_SPIN_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "symR")]
    SymR,
    #[serde(rename = "hermC")]
    HermC,
    #[serde(rename = "hermH")]
    HermH,
    #[serde(rename = "spin")]
    Spin,
    #[serde(rename = "albert")]
    Albert,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::SymR, Family::HermC, Family::HermH, Family::Spin, Family::Albert];

    pub fn name(self) -> &'static str {
        match self {
            Family::SymR => "symR",
            Family::HermC => "hermC",
            Family::HermH => "hermH",
            Family::Spin => "spin",
            Family::Albert => "albert",
        }
    }

    /// Real dimension of the composition algebra supplying the matrix entries.
    fn entry_dim(self) -> Option<usize> {
        match self {
            Family::SymR => Some(1),
            Family::HermC => Some(2),
            Family::HermH => Some(4),
            Family::Albert => Some(8),
            Family::Spin => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                JordanError::InvalidParameter(format!(
                    "unknown family '{s}' (expected one of symR, hermC, hermH, spin, albert)"
                ))
            })
    }
}

/// Family plus parameter: matrix size `n`, or vector dimension for `Spin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub param: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, param: usize) -> Self {
        AlgebraSpec { family, param }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.param;
        let ok = match self.family {
            Family::Albert => p == 3,
            Family::Spin => (1..=MAX_SPIN_DIM).contains(&p),
            _ => (1..=MAX_MATRIX_SIZE).contains(&p),
        };
        if ok {
            Ok(())
        } else {
            let range = match self.family {
                Family::Albert => "param = 3".to_string(),
                Family::Spin => format!("1 <= d <= {MAX_SPIN_DIM}"),
                _ => format!("1 <= n <= {MAX_MATRIX_SIZE}"),
            };
            Err(JordanError::InvalidParameter(format!("{}({p}) is unsupported: need {range}", self.family)))
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family, self.param)
    }
}

impl std::str::FromStr for AlgebraSpec {
    type Err = JordanError;

    /// Parses `FAMILY:PARAM`, e.g. `symR:3`. `albert` may omit the parameter.
    fn from_str(s: &str) -> Result<Self> {
        let (fam, param) = match s.split_once(':') {
            Some((f, p)) => (f, Some(p)),
            None => (s, None),
        };
        let family: Family = fam.parse()?;
        let param = match (family, param) {
            (Family::Albert, None) => 3,
            (_, Some(p)) => p
                .trim()
                .parse()
                .map_err(|_| JordanError::InvalidParameter(format!("bad algebra parameter '{p}'")))?,
            (_, None) => {
                return Err(JordanError::InvalidParameter(format!("missing parameter in '{s}' (use FAMILY:PARAM)")))
            }
        };
        let spec = AlgebraSpec { family, param };
        spec.validate()?;
        Ok(spec)
    }
}

/// A simple Euclidean Jordan algebra with its dense structure tensor.
///
/// `e_i ∘ e_j = Σ_k S[i][j][k] e_k`.
pub struct Algebra {
    spec: AlgebraSpec,
    rank: usize,
    dim: usize,
    structure: Vec<f64>,
    // Nonzero entries of `structure` as (i, j, k, value).
    terms: Vec<(usize, usize, usize, f64)>,
    unit: Vec<f64>,
    trace_coeffs: Vec<f64>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("spec", &self.spec)
            .field("rank", &self.rank)
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

/// Build (or fetch from the process-wide cache) the algebra for `family` and `param`.
pub fn make_algebra(family: Family, param: usize) -> Result<Arc<Algebra>> {
    Algebra::shared(AlgebraSpec::new(family, param))
}

impl Algebra {
    pub fn shared(spec: AlgebraSpec) -> Result<Arc<Algebra>> {
        spec.validate()?;
        static CACHE: OnceLock<Mutex<HashMap<AlgebraSpec, Arc<Algebra>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(a) = cache.lock().expect("algebra cache poisoned").get(&spec) {
            return Ok(a.clone());
        }
        let built = Arc::new(Algebra::build(spec)?);
        let mut guard = cache.lock().expect("algebra cache poisoned");
        Ok(guard.entry(spec).or_insert(built).clone())
    }

    fn build(spec: AlgebraSpec) -> Result<Algebra> {
        let (rank, dim, structure, unit, trace_coeffs) = match spec.family.entry_dim() {
            Some(a) => hermitian_tensor(spec.param, a),
            None => spin_tensor(spec.param),
        };
        let mut terms = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let s = structure[(i * dim + j) * dim + k];
                    if s != 0.0 {
                        terms.push((i, j, k, s));
                    }
                }
            }
        }
        let alg = Algebra { spec, rank, dim, structure, terms, unit, trace_coeffs };
        alg.check_commutative()?;
        Ok(alg)
    }

    fn check_commutative(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..i {
                for k in 0..d {
                    if self.s(i, j, k) != self.s(j, i, k) {
                        return Err(JordanError::InvariantViolation(format!(
                            "structure tensor of {} not commutative at ({i},{j},{k})",
                            self.spec
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn param(&self) -> usize {
        self.spec.param
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant `S[i][j][k]`.
    pub fn s(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[f64] {
        &self.structure
    }

    pub fn unit_coords(&self) -> &[f64] {
        &self.unit
    }

    pub fn trace_coeffs(&self) -> &[f64] {
        &self.trace_coeffs
    }

    /// Jordan product on raw coordinate slices.
    pub fn mul_coords(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(i, j, k, s) in &self.terms {
            out[k] += s * x[i] * y[j];
        }
        out
    }

    pub fn trace_coords(&self, x: &[f64]) -> f64 {
        self.trace_coeffs.iter().zip(x).map(|(t, v)| t * v).sum()
    }

    /// Gram matrix of the trace form `⟨e_i, e_j⟩ = tr(e_i ∘ e_j)`.
    pub fn gram(&self) -> DMatrix<f64> {
        let d = self.dim;
        let mut g = DMatrix::zeros(d, d);
        for &(i, j, k, s) in &self.terms {
            g[(i, j)] += s * self.trace_coeffs[k];
        }
        g
    }

    /// Multiplication operator `L(x)` on raw coordinates.
    pub fn l_matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for &(i, j, k, s) in &self.terms {
            m[(k, j)] += s * x[i];
        }
        m
    }
}

// Structure data shared by the matrix families: (rank, dim, S, unit, trace).
type Tensor = (usize, usize, Vec<f64>, Vec<f64>, Vec<f64>);

#[derive(Clone, Copy)]
enum Slot {
    Diag(usize),
    Off { i: usize, j: usize, unit: usize },
}

fn hermitian_slots(n: usize, a: usize) -> Vec<Slot> {
    let mut slots: Vec<Slot> = (0..n).map(Slot::Diag).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            for unit in 0..a {
                slots.push(Slot::Off { i, j, unit });
            }
        }
    }
    slots
}

// n×n matrix with entries in the composition algebra of dimension a,
// stored row-major as n*n blocks of a reals.
struct EntryMatrix {
    n: usize,
    a: usize,
    data: Vec<f64>,
}

impl EntryMatrix {
    fn zeros(n: usize, a: usize) -> Self {
        EntryMatrix { n, a, data: vec![0.0; n * n * a] }
    }

    fn entry(&self, r: usize, c: usize) -> &[f64] {
        let off = (r * self.n + c) * self.a;
        &self.data[off..off + self.a]
    }

    fn entry_mut(&mut self, r: usize, c: usize) -> &mut [f64] {
        let off = (r * self.n + c) * self.a;
        &mut self.data[off..off + self.a]
    }

    fn from_slot(n: usize, a: usize, slot: Slot) -> Self {
        let mut m = EntryMatrix::zeros(n, a);
        match slot {
            Slot::Diag(i) => m.entry_mut(i, i)[0] = 1.0,
            Slot::Off { i, j, unit } => {
                m.entry_mut(i, j)[unit] = 1.0;
                m.entry_mut(j, i)[unit] = if unit == 0 { 1.0 } else { -1.0 };
            }
        }
        m
    }

    // (XY + YX) / 2 with entry products taken in the composition algebra.
    fn jordan(&self, other: &EntryMatrix) -> EntryMatrix {
        let (n, a) = (self.n, self.a);
        let table = octonion::basis_table(a);
        let mut out = EntryMatrix::zeros(n, a);
        for r in 0..n {
            for c in 0..n {
                let mut acc = vec![0.0; a];
                for m in 0..n {
                    for (x, y) in [(self.entry(r, m), other.entry(m, c)), (other.entry(r, m), self.entry(m, c))] {
                        for (p, &xp) in x.iter().enumerate() {
                            if xp == 0.0 {
                                continue;
                            }
                            for (q, &yq) in y.iter().enumerate() {
                                if yq != 0.0 {
                                    let (s, k) = table[p][q];
                                    acc[k] += 0.5 * s * xp * yq;
                                }
                            }
                        }
                    }
                }
                out.entry_mut(r, c).copy_from_slice(&acc);
            }
        }
        out
    }

    fn coords(&self, slots: &[Slot]) -> Vec<f64> {
        slots
            .iter()
            .map(|s| match *s {
                Slot::Diag(i) => self.entry(i, i)[0],
                Slot::Off { i, j, unit } => self.entry(i, j)[unit],
            })
            .collect()
    }
}

fn hermitian_tensor(n: usize, a: usize) -> Tensor {
    let slots = hermitian_slots(n, a);
    let dim = slots.len();
    let basis: Vec<EntryMatrix> = slots.iter().map(|&s| EntryMatrix::from_slot(n, a, s)).collect();
    let mut structure = vec![0.0; dim * dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let prod = basis[i].jordan(&basis[j]).coords(&slots);
            for (k, v) in prod.into_iter().enumerate() {
                structure[(i * dim + j) * dim + k] = v;
                structure[(j * dim + i) * dim + k] = v;
            }
        }
    }
    let mut unit = vec![0.0; dim];
    let mut trace = vec![0.0; dim];
    for i in 0..n {
        unit[i] = 1.0;
        trace[i] = 1.0;
    }
    (n, dim, structure, unit, trace)
}

fn spin_tensor(d: usize) -> Tensor {
    let dim = d + 1;
    let mut structure = vec![0.0; dim * dim * dim];
    let mut set = |i: usize, j: usize, k: usize, v: f64| structure[(i * dim + j) * dim + k] = v;
    for k in 0..dim {
        set(0, k, k, 1.0);
        set(k, 0, k, 1.0);
    }
    for i in 1..dim {
        set(i, i, 0, 1.0);
    }
    let mut unit = vec![0.0; dim];
    unit[0] = 1.0;
    let mut trace = vec![0.0; dim];
    trace[0] = 2.0;
    (2, dim, structure, unit, trace)
}

/// A coordinate vector in the basis of an [`Algebra`].
#[derive(Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    coords: Vec<f64>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({}, {:?})", self.algebra.spec, self.coords)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.spec == other.algebra.spec && self.coords == other.coords
    }
}

fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if a.spec == b.spec {
        Ok(())
    } else {
        Err(JordanError::AlgebraMismatch { left: a.spec.to_string(), right: b.spec.to_string() })
    }
}

impl Element {
    pub fn new(algebra: &Arc<Algebra>, coords: Vec<f64>) -> Result<Element> {
        if coords.len() != algebra.dim {
            return Err(JordanError::Precondition(format!(
                "{} needs {} coordinates, got {}",
                algebra.spec,
                algebra.dim,
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|v| !v.is_finite()) {
            return Err(JordanError::Precondition(format!("coordinate {i} is not finite")));
        }
        Ok(Element { algebra: algebra.clone(), coords })
    }

    pub(crate) fn from_raw(algebra: &Arc<Algebra>, coords: Vec<f64>) -> Element {
        debug_assert_eq!(coords.len(), algebra.dim);
        Element { algebra: algebra.clone(), coords }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Element {
        Element::from_raw(algebra, vec![0.0; algebra.dim])
    }

    pub fn unit(algebra: &Arc<Algebra>) -> Element {
        Element::from_raw(algebra, algebra.unit.clone())
    }

    pub fn basis(algebra: &Arc<Algebra>, i: usize) -> Element {
        let mut c = vec![0.0; algebra.dim];
        c[i] = 1.0;
        Element::from_raw(algebra, c)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn same_algebra(&self, other: &Element) -> Result<()> {
        check_same(&self.algebra, &other.algebra)
    }

    /// Jordan product `x ∘ y`.
    pub fn jordan_mul(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(self.mul(other))
    }

    // Unchecked product for callers that already know the algebras agree.
    pub(crate) fn mul(&self, other: &Element) -> Element {
        debug_assert_eq!(self.algebra.spec, other.algebra.spec);
        Element::from_raw(&self.algebra, self.algebra.mul_coords(&self.coords, &other.coords))
    }

    pub fn square(&self) -> Element {
        self.mul(self)
    }

    /// Jordan power `x^k` (`x^0 = e`). Powers associate, so the bracketing is irrelevant.
    pub fn pow(&self, k: usize) -> Element {
        let mut acc = Element::unit(&self.algebra);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn trace(&self) -> f64 {
        self.algebra.trace_coords(&self.coords)
    }

    /// Trace-form inner product `tr(x ∘ y)`.
    pub fn inner(&self, other: &Element) -> f64 {
        debug_assert_eq!(self.algebra.spec, other.algebra.spec);
        self.algebra.trace_coords(&self.algebra.mul_coords(&self.coords, &other.coords))
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        octonion::norm(&self.coords)
    }

    /// Norm induced by the trace form, `sqrt(tr(x ∘ x))`.
    pub fn trace_norm(&self) -> f64 {
        self.inner(self).max(0.0).sqrt()
    }

    pub fn scale(&self, s: f64) -> Element {
        Element::from_raw(&self.algebra, self.coords.iter().map(|v| v * s).collect())
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.algebra.spec, other.algebra.spec);
        Element::from_raw(&self.algebra, self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        debug_assert_eq!(self.algebra.spec, other.algebra.spec);
        Element::from_raw(&self.algebra, self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &Element) -> Element {
        debug_assert_eq!(self.algebra.spec, other.algebra.spec);
        Element::from_raw(&self.algebra, self.coords.iter().zip(&other.coords).map(|(a, b)| a + s * b).collect())
    }

    pub fn distance(&self, other: &Element) -> f64 {
        self.sub(other).norm()
    }
}

/// Trace of `x` and the trace-form pairing `tr(x ∘ y)`.
pub fn trace_form(x: &Element, y: &Element) -> Result<(f64, f64)> {
    x.same_algebra(y)?;
    Ok((x.trace(), x.inner(y)))
}

pub fn jordan_mul(x: &Element, y: &Element) -> Result<Element> {
    x.jordan_mul(y)
}

/// A real `dim × dim` matrix acting on coordinates of one algebra.
#[derive(Clone)]
pub struct LinearOperator {
    algebra: Arc<Algebra>,
    matrix: DMatrix<f64>,
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({}, {}x{})", self.algebra.spec, self.matrix.nrows(), self.matrix.ncols())
    }
}

impl LinearOperator {
    pub fn new(algebra: &Arc<Algebra>, matrix: DMatrix<f64>) -> Result<LinearOperator> {
        let d = algebra.dim;
        if matrix.shape() != (d, d) {
            return Err(JordanError::Precondition(format!(
                "operator on {} must be {d}x{d}, got {}x{}",
                algebra.spec,
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(LinearOperator { algebra: algebra.clone(), matrix })
    }

    pub(crate) fn from_raw(algebra: &Arc<Algebra>, matrix: DMatrix<f64>) -> LinearOperator {
        LinearOperator { algebra: algebra.clone(), matrix }
    }

    pub fn identity(algebra: &Arc<Algebra>) -> LinearOperator {
        LinearOperator::from_raw(algebra, DMatrix::identity(algebra.dim, algebra.dim))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        check_same(&self.algebra, &x.algebra)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Element) -> Element {
        let d = self.algebra.dim;
        let mut out = vec![0.0; d];
        for (c, &xv) in x.coords.iter().enumerate() {
            if xv == 0.0 {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                *o += self.matrix[(r, c)] * xv;
            }
        }
        Element::from_raw(&self.algebra, out)
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        check_same(&self.algebra, &other.algebra)?;
        Ok(LinearOperator::from_raw(&self.algebra, &self.matrix * &other.matrix))
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator::from_raw(&self.algebra, &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator::from_raw(&self.algebra, &self.matrix - &other.matrix)
    }

    pub fn scale(&self, s: f64) -> LinearOperator {
        LinearOperator::from_raw(&self.algebra, &self.matrix * s)
    }

    /// Matrix trace (not the Jordan trace).
    pub fn matrix_trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Frobenius norm of the matrix.
    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &LinearOperator) -> f64 {
        self.matrix.iter().zip(other.matrix.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Matrix of `y ↦ x ∘ y`.
pub fn l_operator(x: &Element) -> LinearOperator {
    LinearOperator::from_raw(&x.algebra, x.algebra.l_matrix(&x.coords))
}

/// JSON shape of an [`Element`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub algebra: AlgebraSpec,
    pub coords: Vec<f64>,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson { algebra: self.algebra.spec, coords: self.coords.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(deserializer)?;
        let alg = Algebra::shared(raw.algebra).map_err(serde::de::Error::custom)?;
        Element::new(&alg, raw.coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(f: Family, p: usize) -> Arc<Algebra> {
        make_algebra(f, p).unwrap()
    }

    #[test]
    fn dimensions_and_ranks() {
        let cases = [
            (Family::SymR, 2, 2, 3),
            (Family::SymR, 4, 4, 10),
            (Family::HermC, 3, 3, 9),
            (Family::HermH, 3, 3, 15),
            (Family::Spin, 9, 2, 10),
            (Family::Albert, 3, 3, 27),
        ];
        for (f, p, rank, dim) in cases {
            let a = alg(f, p);
            assert_eq!((a.rank(), a.dim()), (rank, dim), "{f}({p})");
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(make_algebra(Family::SymR, 0), Err(JordanError::InvalidParameter(_))));
        assert!(matches!(make_algebra(Family::Spin, 0), Err(JordanError::InvalidParameter(_))));
        assert!(matches!(make_algebra(Family::Albert, 2), Err(JordanError::InvalidParameter(_))));
        assert!(matches!(make_algebra(Family::HermH, MAX_MATRIX_SIZE + 1), Err(JordanError::InvalidParameter(_))));
    }

    #[test]
    fn unit_acts_as_identity_and_trace_is_rank() {
        for f in Family::ALL {
            let a = alg(f, 3);
            let e = Element::unit(&a);
            assert_eq!(e.trace(), a.rank() as f64);
            assert_eq!(trace_form(&e, &e).unwrap(), (a.rank() as f64, a.rank() as f64));
            for i in 0..a.dim() {
                let b = Element::basis(&a, i);
                assert_eq!(e.mul(&b), b);
            }
            assert_eq!(l_operator(&e).matrix(), &DMatrix::identity(a.dim(), a.dim()));
        }
    }

    #[test]
    fn symr2_offdiagonal_square_is_identity() {
        let a = alg(Family::SymR, 2);
        let x = Element::new(&a, vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(x.square(), Element::unit(&a));
    }

    #[test]
    fn spin_product_formula() {
        let a = alg(Family::Spin, 3);
        let u = Element::new(&a, vec![0.5, 1.0, -2.0, 0.25]).unwrap();
        let v = Element::new(&a, vec![-1.5, 0.5, 3.0, 1.0]).unwrap();
        let p = u.jordan_mul(&v).unwrap();
        let dot = 1.0 * 0.5 + (-2.0) * 3.0 + 0.25 * 1.0;
        let expected = [
            0.5 * -1.5 + dot,
            0.5 * 0.5 + -1.5 * 1.0,
            0.5 * 3.0 + -1.5 * -2.0,
            0.5 * 1.0 + -1.5 * 0.25,
        ];
        for k in 0..4 {
            assert!((p.coords()[k] - expected[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn albert_diagonal_trace() {
        let a = alg(Family::Albert, 3);
        let mut c = vec![0.0; 27];
        c[0] = 2.0;
        c[1] = -0.5;
        c[2] = 4.0;
        c[10] = 7.0;
        assert_eq!(Element::new(&a, c).unwrap().trace(), 5.5);
    }

    #[test]
    fn gram_matrix_is_diagonal_positive() {
        for f in Family::ALL {
            let a = alg(f, 3);
            let g = a.gram();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    if i == j {
                        assert!(g[(i, i)] > 0.0);
                    } else {
                        assert_eq!(g[(i, j)], 0.0, "{f}: off-diagonal Gram entry ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Element::unit(&alg(Family::SymR, 3));
        let b = Element::unit(&alg(Family::HermC, 3));
        assert!(matches!(a.jordan_mul(&b), Err(JordanError::AlgebraMismatch { .. })));
        assert!(trace_form(&a, &b).is_err());
    }

    #[test]
    fn element_json_shape() {
        let a = alg(Family::SymR, 2);
        let x = Element::new(&a, vec![1.0, 2.0, 3.0]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"algebra":{"family":"symR","param":2},"coords":[1.0,2.0,3.0]}"#);
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"algebra":{"family":"symR","param":2},"coords":[1.0]}"#;
        assert!(serde_json::from_str::<Element>(bad).is_err());
    }

    #[test]
    fn parse_spec() {
        assert_eq!("symR:3".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::new(Family::SymR, 3));
        assert_eq!("albert".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::new(Family::Albert, 3));
        assert!("symR".parse::<AlgebraSpec>().is_err());
        assert!("foo:2".parse::<AlgebraSpec>().is_err());
    }
}
