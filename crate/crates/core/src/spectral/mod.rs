//! Spectral calculus shared by all five families.
//!
//! Everything is derived from Jordan power traces `tr(x^k)`: Newton's
//! identities give the characteristic polynomial, Sturm bisection isolates its
//! (real) roots, and Lagrange interpolation in the associative subalgebra
//! generated by `x` gives the spectral idempotents. No family is embedded in
//! real matrices, so multiplicities are Jordan multiplicities and always sum
//! to the rank.
//!
//! Internally the element is normalized to `y = x / sqrt(tr(x²))`, which puts
//! the spectrum inside `[-1, 1]`.

mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::error::{JordanError, Result};


/// Default relative tolerance for merging eigenvalues into clusters.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-9;
/// Default relative threshold below which an eigenvalue counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;
/// Hard failure threshold for `‖x − Σ λᵢ cᵢ‖ / (1 + ‖x‖)`.
pub const RECONSTRUCTION_FAILURE: f64 = 1e-6;

// Normalized char-poly coefficients of true zero eigenvalues are rounding
// noise; this bound (times a binomial) separates them from real ones.
const ZERO_COEFF_TOL: f64 = 1e-12;

/// `(p⁺, p⁻)`: numbers of positive and negative eigenvalues. JSON: `[p, m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub const fn new(plus: usize, minus: usize) -> Signature {
        Signature { plus, minus }
    }

    pub const ZERO: Signature = Signature::new(0, 0);

    /// `|p| = p⁺ + p⁻`, the rank of the orbit.
    pub const fn rank(self) -> usize {
        self.plus + self.minus
    }

    /// Componentwise sum.
    pub fn sum<'a>(sigs: impl IntoIterator<Item = &'a Signature>) -> Signature {
        sigs.into_iter().fold(Signature::ZERO, |acc, s| Signature::new(acc.plus + s.plus, acc.minus + s.minus))
    }

    /// Definite orbits have the form `(k, 0)` or `(0, k)`.
    pub fn is_definite(self) -> bool {
        self.plus == 0 || self.minus == 0
    }
}

impl From<(usize, usize)> for Signature {
    fn from((plus, minus): (usize, usize)) -> Self {
        Signature { plus, minus }
    }
}

impl From<Signature> for (usize, usize) {
    fn from(s: Signature) -> Self {
        (s.plus, s.minus)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

impl std::str::FromStr for Signature {
    type Err = JordanError;

    /// Parses `P,M` (optionally wrapped in parentheses).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || JordanError::InvalidSignature(format!("cannot parse '{s}' as P,M"));
        let (p, m) = t.split_once(',').ok_or_else(bad)?;
        Ok(Signature::new(p.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
    }
}

/// Monic characteristic polynomial, coefficients in descending powers:
/// `[1, a_{n−1}, ..., a_0]` for `λⁿ + a_{n−1}λⁿ⁻¹ + ... + a_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharPoly {
    pub coeffs: Vec<f64>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * t + c)
    }
}

/// Distinct eigenvalues (descending) with their multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl Spectrum {
    /// Eigenvalues repeated by multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub idempotents: Vec<Element>,
    pub warnings: Vec<String>,
}

impl SpectralDecomposition {
    /// `Σ λᵢ cᵢ`
    pub fn reconstruct(&self) -> Option<Element> {
        let first = self.idempotents.first()?;
        let mut acc = Element::zero(first.algebra());
        for (l, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            acc = acc.axpy(*l, c);
        }
        Some(acc)
    }
}

// Normalization scale and normalized char-poly coefficients (ascending,
// monic) of y = x / scale. scale = 0 for the zero element.
struct Normalized {
    scale: f64,
    ascending: Vec<f64>,
}

fn normalized_poly(x: &Element) -> Normalized {
    let n = x.algebra().rank();
    let pre = power_of_two_scale(x, 0);
    let x0 = x.scale(1.0 / pre);
    let p2 = x0.square().trace();
    if p2 <= 0.0 {
        let mut ascending = vec![0.0; n + 1];
        ascending[n] = 1.0;
        return Normalized { scale: 0.0, ascending };
    }
    let scale = pre * p2.sqrt();
    let y = x0.scale(1.0 / p2.sqrt());
    let mut power = y.clone();
    let mut sums = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            power = y.mul(&power);
        }
        sums.push(power.trace());
    }
    let e = poly::newton_elementary(&sums);
    // λⁿ − e1 λⁿ⁻¹ + e2 λⁿ⁻² − ...
    let ascending = (0..=n)
        .map(|k| {
            let j = n - k;
            if j % 2 == 0 {
                e[j]
            } else {
                -e[j]
            }
        })
        .collect();
    Normalized { scale, ascending }
}

/// Characteristic polynomial of `x` from power traces via Newton's identities.
pub fn char_poly(x: &Element) -> CharPoly {
    let Normalized { scale, ascending } = normalized_poly(x);
    let n = ascending.len() - 1;
    // Coefficient of λ^k scales by scale^(n−k).
    let coeffs = (0..=n).rev().map(|k| ascending[k] * scale.powi((n - k) as i32)).collect();
    CharPoly { coeffs }
}

/// Generic norm: product of the eigenvalues with multiplicity.
pub fn determinant(x: &Element) -> f64 {
    let Normalized { scale, ascending } = normalized_poly(x);
    let n = ascending.len() - 1;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * ascending[0] * scale.powi(n as i32)
}

// Power of two near max|coordinate| / 2^target.
fn power_of_two_scale(x: &Element, target: i32) -> f64 {
    let m = x.coords().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if m == 0.0 {
        return 1.0;
    }
    let k = (m.log2().floor() as i32 - target).clamp(-1000, 1000);
    2f64.powi(k)
}

// Roots of the normalized polynomial, ascending, after splitting off zero
// eigenvalues that show up as negligible trailing coefficients.
fn normalized_roots(norm: &Normalized) -> Result<Vec<poly::Root>> {
    let n = norm.ascending.len() - 1;
    if norm.scale == 0.0 {
        return Ok(vec![poly::Root { value: 0.0, multiplicity: n }]);
    }
    let zeros = zero_multiplicity(&norm.ascending);
    let mut roots = poly::real_roots(&norm.ascending[zeros..])?;
    if zeros > 0 {
        match roots.iter_mut().find(|r| r.value == 0.0) {
            Some(r) => r.multiplicity += zeros,
            None => roots.push(poly::Root { value: 0.0, multiplicity: zeros }),
        }
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    }
    Ok(roots)
}

fn zero_multiplicity(ascending: &[f64]) -> usize {
    let n = ascending.len() - 1;
    ascending
        .iter()
        .take(n)
        .enumerate()
        .take_while(|(k, c)| c.abs() <= ZERO_COEFF_TOL * poly::binomial(n, *k))
        .count()
}

fn check_tol(tol: f64, what: &str) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(JordanError::Precondition(format!("{what} must be positive and finite, got {tol}")))
    }
}

// Merge ascending normalized roots closer than `tol` (relative).
fn cluster(roots: Vec<poly::Root>, tol: f64) -> Vec<poly::Root> {
    let mut out: Vec<poly::Root> = Vec::new();
    for r in roots {
        if let Some(last) = out.last_mut() {
            if (r.value - last.value).abs() <= tol {
                let m = last.multiplicity + r.multiplicity;
                last.value = (last.value * last.multiplicity as f64 + r.value * r.multiplicity as f64) / m as f64;
                last.multiplicity = m;
                continue;
            }
        }
        out.push(r);
    }
    out
}

/// All Jordan eigenvalues of `x`, descending, with multiplicities; values
/// within `tol · max(1, max|λ|)` are merged.
pub fn eigenvalues(x: &Element, tol: f64) -> Result<Spectrum> {
    check_tol(tol, "cluster tolerance")?;
    let norm = normalized_poly(x);
    let spectrum = spectrum_from(&norm, tol)?;
    Ok(spectrum)
}

fn spectrum_from(norm: &Normalized, tol: f64) -> Result<Spectrum> {
    if !norm.scale.is_finite() || norm.ascending.iter().any(|c| !c.is_finite()) {
        return Err(JordanError::NumericalFailure(format!(
            "characteristic polynomial is not finite (scale {})",
            norm.scale
        )));
    }
    let roots = normalized_roots(norm)?;
    let s = norm.scale;
    // tol·max(1, max|λ|) in normalized units; max|λ| ≤ s.
    let max_abs = roots.iter().fold(0.0f64, |m, r| m.max(r.value.abs())) * s;
    let rel = if s > 0.0 { tol * max_abs.max(1.0) / s } else { tol };
    let merged = cluster(roots, rel);
    let mut eigenvalues = Vec::with_capacity(merged.len());
    let mut multiplicities = Vec::with_capacity(merged.len());
    for r in merged.into_iter().rev() {
        eigenvalues.push(r.value * s);
        multiplicities.push(r.multiplicity);
    }
    if eigenvalues.iter().any(|l| !l.is_finite()) {
        return Err(JordanError::NumericalFailure("eigenvalues overflow f64".into()));
    }
    Ok(Spectrum { eigenvalues, multiplicities })
}

/// Spectral decomposition `x = Σ λᵢ cᵢ` over eigenvalue clusters.
///
/// The idempotent of cluster `i` is the Lagrange polynomial
/// `Πⱼ≠ᵢ (x − λⱼ e) / (λᵢ − λⱼ)` evaluated with Jordan products.
pub fn spectral_decompose(x: &Element, tol: f64) -> Result<SpectralDecomposition> {
    check_tol(tol, "cluster tolerance")?;
    let alg = x.algebra();
    let norm = normalized_poly(x);
    let spec = spectrum_from(&norm, tol)?;
    let s = norm.scale;
    let mut warnings = Vec::new();

    let idempotents = if spec.eigenvalues.len() == 1 {
        vec![Element::unit(alg)]
    } else {
        let y = x.scale(1.0 / s);
        let mu: Vec<f64> = spec.eigenvalues.iter().map(|l| l / s).collect();
        let min_gap = mu.windows(2).map(|w| (w[0] - w[1]).abs()).fold(f64::INFINITY, f64::min);
        let cluster_tol = tol * (spec.max_abs().max(1.0) / s);
        if min_gap < 10.0 * cluster_tol {
            warnings.push(format!(
                "ill-conditioned: eigenvalue clusters separated by {:e} (< 10 x cluster tolerance)",
                min_gap * s
            ));
        }
        mu.iter()
            .enumerate()
            .map(|(i, &mi)| {
                let mut acc = Element::unit(alg);
                for (j, &mj) in mu.iter().enumerate() {
                    if j != i {
                        acc = y.mul(&acc).axpy(-mj, &acc).scale(1.0 / (mi - mj));
                    }
                }
                acc
            })
            .collect()
    };

    let dec = SpectralDecomposition {
        eigenvalues: spec.eigenvalues,
        multiplicities: spec.multiplicities,
        idempotents,
        warnings,
    };
    let recon = dec.reconstruct().expect("at least one cluster");
    let err = recon.distance(x);
    if err > RECONSTRUCTION_FAILURE * (1.0 + x.norm()) {
        return Err(JordanError::NumericalFailure(format!(
            "spectral reconstruction error {err:e} exceeds {RECONSTRUCTION_FAILURE:e}·(1+‖x‖)"
        )));
    }
    Ok(dec)
}

/// Signature of `x`: eigenvalues above `zero_tol · max(1, max|λ|)` count as
/// positive, those below the negative threshold as negative.
pub fn signature_of(x: &Element, zero_tol: f64) -> Result<Signature> {
    check_tol(zero_tol, "zero tolerance")?;
    let pre = power_of_two_scale(x, 40);
    let norm = if pre > 2f64.powi(60) { normalized_poly(&x.scale(1.0 / pre)) } else { normalized_poly(x) };
    match spectrum_from(&norm, DEFAULT_CLUSTER_TOL) {
        Ok(spec) => {
            let thresh = zero_tol * spec.max_abs().max(1.0);
            let mut sig = Signature::ZERO;
            for (&l, &m) in spec.eigenvalues.iter().zip(&spec.multiplicities) {
                if l > thresh {
                    sig.plus += m;
                } else if l < -thresh {
                    sig.minus += m;
                }
            }
            Ok(sig)
        }
        // Descartes' rule of signs is exact for real-rooted polynomials.
        Err(_) => Ok(descartes_signature(&norm)),
    }
}

fn descartes_signature(norm: &Normalized) -> Signature {
    let zeros = zero_multiplicity(&norm.ascending);
    let q = &norm.ascending[zeros..];
    let plus = poly::coefficient_sign_changes(q);
    let reflected: Vec<f64> = q.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { *c }).collect();
    let minus = poly::coefficient_sign_changes(&reflected);
    Signature::new(plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, Family};

    fn el(f: Family, p: usize, coords: Vec<f64>) -> Element {
        Element::new(&make_algebra(f, p).unwrap(), coords).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn char_poly_symr2_diag() {
        let p = char_poly(&el(Family::SymR, 2, vec![2.0, 3.0, 0.0]));
        assert!(close(&p.coeffs, &[1.0, -5.0, 6.0], 1e-12), "{:?}", p.coeffs);
    }

    #[test]
    fn char_poly_spin() {
        // λ² − 2x₀λ + (x₀² − ‖x⃗‖²)
        let p = char_poly(&el(Family::Spin, 3, vec![1.5, 0.5, -2.0, 1.0]));
        let expected = [1.0, -3.0, 1.5 * 1.5 - (0.25 + 4.0 + 1.0)];
        assert!(close(&p.coeffs, &expected, 1e-12), "{:?}", p.coeffs);
    }

    #[test]
    fn char_poly_albert_diagonal() {
        let mut c = vec![0.0; 27];
        c[..3].copy_from_slice(&[1.0, -2.0, 4.0]);
        let p = char_poly(&el(Family::Albert, 3, c));
        // (λ−1)(λ+2)(λ−4) = λ³ − 3λ² − 6λ + 8
        assert!(close(&p.coeffs, &[1.0, -3.0, -6.0, 8.0], 1e-12), "{:?}", p.coeffs);
    }

    #[test]
    fn eigenvalues_of_unit_and_zero() {
        for f in Family::ALL {
            let a = make_algebra(f, 3).unwrap();
            let n = a.rank();
            let s = eigenvalues(&Element::unit(&a), 1e-9).unwrap();
            assert_eq!(s.multiplicities, vec![n]);
            assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
            let z = eigenvalues(&Element::zero(&a), 1e-9).unwrap();
            assert_eq!(z, Spectrum { eigenvalues: vec![0.0], multiplicities: vec![n] });
        }
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        let x = el(Family::SymR, 2, vec![1.0, 0.0, 0.0]);
        assert!(matches!(eigenvalues(&x, 0.0), Err(JordanError::Precondition(_))));
        assert!(matches!(signature_of(&x, -1.0), Err(JordanError::Precondition(_))));
    }

    #[test]
    fn decompose_unit_and_diag() {
        let a = make_algebra(Family::SymR, 2).unwrap();
        let d = spectral_decompose(&Element::unit(&a), 1e-9).unwrap();
        assert_eq!(d.idempotents, vec![Element::unit(&a)]);

        let x = el(Family::SymR, 2, vec![1.0, -1.0, 0.0]);
        let d = spectral_decompose(&x, 1e-9).unwrap();
        assert!(close(&d.eigenvalues, &[1.0, -1.0], 1e-12));
        assert!(close(d.idempotents[0].coords(), &[1.0, 0.0, 0.0], 1e-12));
        assert!(close(d.idempotents[1].coords(), &[0.0, 1.0, 0.0], 1e-12));
    }

    #[test]
    fn albert_frame_combination() {
        // c1 + 2 c2 → clusters {2, 1, 0} with idempotents c2, c1, c3.
        let mut c = vec![0.0; 27];
        c[0] = 1.0;
        c[1] = 2.0;
        let d = spectral_decompose(&el(Family::Albert, 3, c), 1e-9).unwrap();
        assert!(close(&d.eigenvalues, &[2.0, 1.0, 0.0], 1e-12), "{:?}", d.eigenvalues);
        assert_eq!(d.multiplicities, vec![1, 1, 1]);
        for (i, unit) in [1usize, 0, 2].into_iter().enumerate() {
            let mut want = vec![0.0; 27];
            want[unit] = 1.0;
            assert!(close(d.idempotents[i].coords(), &want, 1e-12));
        }
    }

    #[test]
    fn repeated_eigenvalues_keep_multiplicity() {
        let mut c = vec![0.0; 10];
        c[..4].copy_from_slice(&[1.0, 1.0, -1.0, 0.0]);
        let x = el(Family::SymR, 4, c);
        let s = eigenvalues(&x, 1e-9).unwrap();
        assert_eq!(s.multiplicities, vec![2, 1, 1]);
        assert!(close(&s.eigenvalues, &[1.0, 0.0, -1.0], 1e-12));
        let d = spectral_decompose(&x, 1e-9).unwrap();
        assert!((d.idempotents[0].trace() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn signatures() {
        let x = el(Family::SymR, 2, vec![1.0, -1.0, 0.0]);
        assert_eq!(signature_of(&x, 1e-9).unwrap(), Signature::new(1, 1));
        let z = Element::zero(x.algebra());
        assert_eq!(signature_of(&z, 1e-9).unwrap(), Signature::ZERO);
    }

    #[test]
    fn determinant_spin_and_unit() {
        let x = el(Family::Spin, 3, vec![2.0, 1.0, 0.5, -1.0]);
        assert!((determinant(&x) - (4.0 - 1.0 - 0.25 - 1.0)).abs() < 1e-12);
        for f in Family::ALL {
            let a = make_algebra(f, 3).unwrap();
            assert!((determinant(&Element::unit(&a)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn signature_json_is_pair() {
        let s = Signature::new(2, 1);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,1]");
        assert_eq!("(1,0)".parse::<Signature>().unwrap(), Signature::new(1, 0));
        assert_eq!("0, 2".parse::<Signature>().unwrap(), Signature::new(0, 2));
    }
}
