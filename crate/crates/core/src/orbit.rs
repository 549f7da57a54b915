//! Jordan frames, orbit representatives, structure-group sampling and the
//! signature calculus for supports of the form `tc + n₋`.
//!
//! Orbits of the structure group on `N` are labelled by signatures
//! `(p⁺, p⁻)`. The representative `ξ_p` is a signed sum of frame idempotents.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, Family, LinearOperator};
use crate::error::{JordanError, Result};
use crate::peirce::{frobenius_apply, n_t_unchecked, quadratic_apply};
use crate::rng::{gaussian, gaussian_element, mix, rng_for};
use crate::spectral::{eigenvalues, signature_of, Signature, DEFAULT_CLUSTER_TOL, DEFAULT_ZERO_TOL};

/// Factors whose smallest |eigenvalue| falls below this fraction of the
/// largest are redrawn.
pub const EIGENVALUE_FLOOR: f64 = 0.1;
/// Draws allowed per factor before sampling gives up.
pub const REJECTION_BUDGET: usize = 100;
pub const DEFAULT_WORD_LENGTH: usize = 4;
/// Scale applied to the Gaussian half-space vector of a Frobenius factor.
pub const FROBENIUS_SCALE: f64 = 0.5;
/// Fraction of trials that must land on the predicted orbit.
pub const DENSE_ORBIT_THRESHOLD: f64 = 0.99;

/// `n` mutually orthogonal primitive idempotents summing to the unit.
#[derive(Debug, Clone, Serialize)]
pub struct JordanFrame {
    pub idempotents: Vec<Element>,
}

impl JordanFrame {
    /// Largest violation among `‖cᵢ∘cⱼ‖`, `‖cᵢ² − cᵢ‖`, `|tr cᵢ − 1|` and `‖Σcᵢ − e‖`.
    pub fn defect(&self) -> f64 {
        let c = &self.idempotents;
        let alg = c[0].algebra();
        let mut worst = 0.0f64;
        for (i, ci) in c.iter().enumerate() {
            worst = worst.max(ci.square().distance(ci)).max((ci.trace() - 1.0).abs());
            for cj in &c[i + 1..] {
                worst = worst.max(ci.mul(cj).norm());
            }
        }
        let sum = c.iter().fold(Element::zero(alg), |acc, ci| acc.add(ci));
        worst.max(sum.distance(&Element::unit(alg)))
    }
}

/// Diagonal matrix units for the matrix families and the Albert algebra;
/// `(½, ±v/2)` with `v` the first vector basis element for the spin factor.
pub fn standard_frame(algebra: &Arc<Algebra>) -> JordanFrame {
    let idempotents = match algebra.family() {
        Family::Spin => {
            let mut plus = vec![0.0; algebra.dim()];
            plus[0] = 0.5;
            plus[1] = 0.5;
            let mut minus = plus.clone();
            minus[1] = -0.5;
            vec![Element::from_raw(algebra, plus), Element::from_raw(algebra, minus)]
        }
        _ => (0..algebra.rank()).map(|i| Element::basis(algebra, i)).collect(),
    };
    JordanFrame { idempotents }
}

/// `ξ_p = c₁ + … + c_{p⁺} − c_{p⁺+1} − … − c_{p⁺+p⁻}` over the standard frame.
pub fn orbit_representative(algebra: &Arc<Algebra>, p: Signature) -> Result<Element> {
    orbit_representative_at(algebra, p, 0)
}

/// Like [`orbit_representative`] but starting at frame index `offset`, so that
/// representatives of several signatures can use disjoint idempotents.
pub fn orbit_representative_at(algebra: &Arc<Algebra>, p: Signature, offset: usize) -> Result<Element> {
    let n = algebra.rank();
    if offset + p.rank() > n {
        return Err(JordanError::InvalidSignature(format!(
            "signature {p} starting at frame index {offset} needs {} idempotents, rank is {n}",
            p.rank()
        )));
    }
    let frame = standard_frame(algebra);
    let mut x = Element::zero(algebra);
    for (k, c) in frame.idempotents[offset..offset + p.rank()].iter().enumerate() {
        let s = if k < p.plus { 1.0 } else { -1.0 };
        x = x.axpy(s, c);
    }
    Ok(x)
}

/// Orbit label of `x`: its signature at the default zero tolerance.
pub fn classify_orbit(x: &Element) -> Signature {
    signature_of(x, DEFAULT_ZERO_TOL).expect("default tolerance is valid")
}

/// Sign of the scalar `t` in `tc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TSign {
    Plus,
    Minus,
}

impl TSign {
    pub const ALL: [TSign; 2] = [TSign::Plus, TSign::Minus];

    /// `(1,0)` or `(0,1)`.
    pub fn signature(self) -> Signature {
        match self {
            TSign::Plus => Signature::new(1, 0),
            TSign::Minus => Signature::new(0, 1),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            TSign::Plus => 1.0,
            TSign::Minus => -1.0,
        }
    }
}

/// One factor of a sampled structure-group element.
#[derive(Debug, Clone)]
pub enum StructureFactor {
    /// `Q(u)`
    Quadratic(Element),
    /// `τ(z)` relative to the idempotent `c`, with `z ∈ N(c,½)`.
    Frobenius { c: Element, z: Element },
}

impl StructureFactor {
    pub fn apply(&self, x: &Element) -> Element {
        match self {
            StructureFactor::Quadratic(u) => quadratic_apply(u, x),
            StructureFactor::Frobenius { c, z } => frobenius_apply(c, z, x),
        }
    }
}

/// `g = F₁ F₂ ⋯ F_k`; the last factor acts first.
#[derive(Debug, Clone)]
pub struct StructureWord {
    pub factors: Vec<StructureFactor>,
}

impl StructureWord {
    pub fn apply(&self, x: &Element) -> Element {
        self.factors.iter().rev().fold(x.clone(), |acc, f| f.apply(&acc))
    }

    pub fn to_operator(&self, algebra: &Arc<Algebra>) -> LinearOperator {
        let d = algebra.dim();
        let mut m = nalgebra::DMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.apply(&Element::basis(algebra, j));
            for (i, v) in col.coords().iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        LinearOperator::from_raw(algebra, m)
    }
}

// Ratio min|λ| / max|λ|, or 0 for the zero element.
fn conditioning(x: &Element) -> Result<(f64, f64)> {
    let spec = eigenvalues(x, DEFAULT_CLUSTER_TOL)?;
    let max = spec.max_abs();
    let min = spec.eigenvalues.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    Ok((max, if max > 0.0 { min / max } else { 0.0 }))
}

fn sample_quadratic(algebra: &Arc<Algebra>, rng: &mut impl Rng) -> Result<StructureFactor> {
    for _ in 0..REJECTION_BUDGET {
        let u = gaussian_element(algebra, rng);
        let Ok((max, ratio)) = conditioning(&u) else { continue };
        if ratio >= EIGENVALUE_FLOOR {
            return Ok(StructureFactor::Quadratic(u.scale(1.0 / max)));
        }
    }
    Err(JordanError::Sampling(format!(
        "no Q(u) factor with eigenvalue ratio ≥ {EIGENVALUE_FLOOR} in {REJECTION_BUDGET} draws on {}",
        algebra.spec()
    )))
}

/// `E½ w = 4(c∘w − c∘(c∘w))`
pub(crate) fn half_projection(c: &Element, w: &Element) -> Element {
    let cw = c.mul(w);
    cw.sub(&c.mul(&cw)).scale(4.0)
}

/// `E0 w = w − 3c∘w + 2c∘(c∘w)`
pub(crate) fn zero_projection(c: &Element, w: &Element) -> Element {
    let cw = c.mul(w);
    w.axpy(-3.0, &cw).axpy(2.0, &c.mul(&cw))
}

fn sample_frobenius(algebra: &Arc<Algebra>, frame: &JordanFrame, rng: &mut impl Rng) -> StructureFactor {
    let c = frame.idempotents[rng.random_range(0..frame.idempotents.len())].clone();
    let z = half_projection(&c, &gaussian_element(algebra, rng)).scale(FROBENIUS_SCALE);
    StructureFactor::Frobenius { c, z }
}

/// Random word of `word_length` factors, each `Q(u)` or `τ(z)` with equal
/// probability. `u` is Gaussian, rescaled to spectral radius 1 and redrawn
/// while its eigenvalue ratio is below [`EIGENVALUE_FLOOR`]; `z` is a Gaussian
/// vector projected to the half space of a random standard-frame idempotent.
pub fn random_structure_word(algebra: &Arc<Algebra>, seed: u64, word_length: usize) -> Result<StructureWord> {
    if word_length == 0 {
        return Err(JordanError::InvalidParameter("word_length must be at least 1".into()));
    }
    let mut rng = rng_for(seed);
    let frame = standard_frame(algebra);
    let factors = (0..word_length)
        .map(|_| {
            if rng.random_bool(0.5) {
                sample_quadratic(algebra, &mut rng)
            } else {
                Ok(sample_frobenius(algebra, &frame, &mut rng))
            }
        })
        .collect::<Result<_>>()?;
    Ok(StructureWord { factors })
}

pub fn random_structure_map(algebra: &Arc<Algebra>, seed: u64, word_length: usize) -> Result<LinearOperator> {
    Ok(random_structure_word(algebra, seed, word_length)?.to_operator(algebra))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub seed: u64,
    /// `None` when the sampled sum could not be classified.
    pub observed: Option<Signature>,
}

/// Outcome of [`generic_sum_signature`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericSumReport {
    pub predicted: Signature,
    pub trials: usize,
    pub matches: usize,
    pub deviations: Vec<Deviation>,
}

impl GenericSumReport {
    pub fn match_rate(&self) -> f64 {
        self.matches as f64 / self.trials as f64
    }

    pub fn passes(&self) -> bool {
        self.match_rate() >= DENSE_ORBIT_THRESHOLD
    }
}

/// Sample `Σ gᵢ ξ_{pᵢ}` with independent random structure words and count how
/// often it lands on the orbit of signature `Σ pᵢ`.
///
/// Trial `k` uses seed `mix(seed, k)` and factor `i` of that trial uses
/// `mix(trial_seed, i)`. Trials run in parallel; the report is ordered by
/// trial index.
pub fn generic_sum_signature(
    algebra: &Arc<Algebra>,
    signatures: &[Signature],
    trials: usize,
    seed: u64,
) -> Result<GenericSumReport> {
    if trials == 0 {
        return Err(JordanError::InvalidParameter("trials must be at least 1".into()));
    }
    let total: usize = signatures.iter().map(|p| p.rank()).sum();
    if total > algebra.rank() {
        return Err(JordanError::InvalidSignature(format!(
            "stable range violated: Σ|pᵢ| = {total} exceeds rank {}",
            algebra.rank()
        )));
    }
    let predicted = Signature::sum(signatures);
    let reps = signatures.iter().map(|p| orbit_representative(algebra, *p)).collect::<Result<Vec<_>>>()?;

    let outcomes = (0..trials)
        .into_par_iter()
        .map(|k| {
            let trial_seed = mix(seed, k as u64);
            let mut x = Element::zero(algebra);
            for (i, xi) in reps.iter().enumerate() {
                let g = random_structure_word(algebra, mix(trial_seed, i as u64), DEFAULT_WORD_LENGTH)?;
                x = x.add(&g.apply(xi));
            }
            Ok((trial_seed, signature_of(&x, DEFAULT_ZERO_TOL).ok()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut matches = 0;
    let mut deviations = Vec::new();
    for (s, observed) in outcomes {
        if observed == Some(predicted) {
            matches += 1;
        } else {
            deviations.push(Deviation { seed: s, observed });
        }
    }
    Ok(GenericSumReport { predicted, trials, matches, deviations })
}

/// Signature of `tc + n₋` with `c` primitive and `n₋ ∈ N(c,0)` of signature
/// `kappa` in the rank `rank − 1` algebra `N(c,0)`: `sign t + kappa`.
pub fn n_support_signature(t_sign: TSign, kappa: Signature, rank: usize) -> Result<Signature> {
    if rank == 0 || kappa.rank() > rank - 1 {
        return Err(JordanError::InvalidSignature(format!(
            "κ signature {kappa} is not valid in rank {}",
            rank.saturating_sub(1)
        )));
    }
    let r = Signature::sum(&[t_sign.signature(), kappa]);
    if r.rank() > rank {
        return Err(JordanError::InvariantViolation(format!("signature {r} exceeds rank {rank}")));
    }
    Ok(r)
}

/// `r − sign t`, or `None` ("absent") when a component would be negative.
pub fn reduce_signature(r: Signature, t_sign: TSign) -> Option<Signature> {
    let s = t_sign.signature();
    Some(Signature::new(r.plus.checked_sub(s.plus)?, r.minus.checked_sub(s.minus)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oscillator {
    #[serde(rename = "omega_plus")]
    OmegaPlus,
    #[serde(rename = "omega_minus")]
    OmegaMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaComponent {
    pub kappa_signature: Signature,
    pub oscillator: Oscillator,
}

/// Summands of the restricted representation indexed by `r` and the sign of
/// `v`: for `v < 0` one summand `(r⁺, r⁻−1)` tagged `ω₊`; for `v > 0` the two
/// summands `(r⁺, r⁻−1)` tagged `ω₋` and `(r⁺−1, r⁻)` tagged `ω₊`. Summands
/// whose signature would have a negative entry are absent.
pub fn lambda_components(r: Signature, v_sign: TSign) -> Vec<LambdaComponent> {
    let drop_minus = r.minus.checked_sub(1).map(|m| Signature::new(r.plus, m));
    let drop_plus = r.plus.checked_sub(1).map(|p| Signature::new(p, r.minus));
    let candidates = match v_sign {
        TSign::Minus => vec![(drop_minus, Oscillator::OmegaPlus)],
        TSign::Plus => vec![(drop_minus, Oscillator::OmegaMinus), (drop_plus, Oscillator::OmegaPlus)],
    };
    candidates
        .into_iter()
        .filter_map(|(k, oscillator)| k.map(|kappa_signature| LambdaComponent { kappa_signature, oscillator }))
        .collect()
}

/// A random concrete element `n_t(x) + n₋ = τ(x/2)(tc + n₋)` relative to the
/// first standard-frame idempotent `c`, with `sign t = t_sign`, `x ∈ N(c,½)`
/// and `n₋ = Q(u₀) ξ_κ ∈ N(c,0)` for a random invertible `u₀ ∈ N(c,0)`.
pub fn support_realization(
    algebra: &Arc<Algebra>,
    t_sign: TSign,
    kappa: Signature,
    seed: u64,
) -> Result<Element> {
    n_support_signature(t_sign, kappa, algebra.rank())?;
    let mut rng = rng_for(seed);
    let frame = standard_frame(algebra);
    let c = frame.idempotents[0].clone();
    let xi = orbit_representative_at(algebra, kappa, 1)?;

    let n_minus = if algebra.rank() == 1 {
        xi
    } else {
        let mut found = None;
        for _ in 0..REJECTION_BUDGET {
            let u0 = zero_projection(&c, &gaussian_element(algebra, &mut rng));
            let (max, _) = conditioning(&u0)?;
            if max == 0.0 {
                continue;
            }
            let u0 = u0.scale(1.0 / max);
            // eigenvalues of c + u₀ are 1 together with those of u₀ on N(c,0)
            let (_, ratio) = conditioning(&c.add(&u0))?;
            if ratio >= EIGENVALUE_FLOOR {
                found = Some(u0);
                break;
            }
        }
        let u0 = found.ok_or_else(|| {
            JordanError::Sampling(format!("no invertible u₀ in N(c,0) within {REJECTION_BUDGET} draws"))
        })?;
        quadratic_apply(&u0, &xi)
    };

    let magnitude = 0.5 + 1.5 * rng.random::<f64>();
    let t = t_sign.value() * magnitude;
    let x = half_projection(&c, &gaussian_element(algebra, &mut rng)).scale(FROBENIUS_SCALE * gaussian(&mut rng).abs());
    Ok(n_t_unchecked(&c, t, &x).add(&n_minus))
}
