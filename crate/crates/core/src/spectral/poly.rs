//! Real polynomials in ascending-coefficient form, Sturm chains, and
//! root isolation for real-rooted polynomials.
//!
//! Characteristic polynomials of Jordan algebra elements are real-rooted, so
//! the Sturm count over a bracket containing `[-1, 1]` (the normalized
//! spectrum) sees every root. Repeated roots are handled through the gcd that
//! terminates the chain: a root of multiplicity `m` of `p` is a root of
//! multiplicity `m − 1` of `gcd(p, p')`, whose own roots are found recursively.

use crate::error::{JordanError, Result};

// Remainders below this fraction of the dividend are treated as zero.
const CHAIN_CUTOFF: f64 = 1e-10;
// Bisection stops at this interval width (normalized coordinates).
const BISECT_WIDTH: f64 = 1e-13;
const NEWTON_STEPS: usize = 5;
// Normalized spectra lie in [-1, 1]; the bracket leaves room for rounding.
const BRACKET: f64 = 1.25;
const MATCH_DISTANCE: f64 = 0.05;

pub(crate) fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub(crate) fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect()
}

fn max_abs(p: &[f64]) -> f64 {
    p.iter().fold(0.0, |m, c| m.max(c.abs()))
}

fn degree(p: &[f64]) -> usize {
    p.len().saturating_sub(1)
}

// Drop leading coefficients that are negligible relative to the largest one.
fn trim(mut p: Vec<f64>, rel: f64) -> Vec<f64> {
    let m = max_abs(&p);
    while p.len() > 1 && p.last().is_some_and(|c| c.abs() <= rel * m) {
        p.pop();
    }
    p
}

fn normalize(p: Vec<f64>) -> Vec<f64> {
    let m = max_abs(&p);
    if m == 0.0 {
        p
    } else {
        p.into_iter().map(|c| c / m).collect()
    }
}

/// Remainder of `a` divided by `b` (`b` with nonzero leading coefficient).
pub(crate) fn rem(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut r = a.to_vec();
    let db = degree(b);
    let lead = b[db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = r[r.len() - 1] / lead;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] -= q * bc;
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(0.0);
    }
    r
}

/// Sturm chain `p, p', −rem(p, p'), ...`, truncated at the first negligible
/// remainder. The last member approximates `gcd(p, p')`.
pub(crate) struct SturmChain {
    polys: Vec<Vec<f64>>,
}

impl SturmChain {
    pub(crate) fn new(p: &[f64]) -> SturmChain {
        let p0 = normalize(p.to_vec());
        let mut polys = vec![p0.clone()];
        if degree(&p0) == 0 {
            return SturmChain { polys };
        }
        polys.push(normalize(trim(derivative(&p0), CHAIN_CUTOFF)));
        loop {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            if degree(b) == 0 {
                break;
            }
            let r = rem(a, b);
            if max_abs(&r) <= CHAIN_CUTOFF * max_abs(a) {
                break;
            }
            let r: Vec<f64> = trim(r, CHAIN_CUTOFF).into_iter().map(|c| -c).collect();
            polys.push(normalize(r));
        }
        SturmChain { polys }
    }

    /// Number of sign changes along the chain at `x`, zeros skipped.
    pub(crate) fn sign_changes(&self, x: f64) -> usize {
        let mut count = 0;
        let mut last = 0.0f64;
        for p in &self.polys {
            let v = eval(p, x);
            if v == 0.0 {
                continue;
            }
            if last != 0.0 && (v < 0.0) != (last < 0.0) {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    #[cfg(test)]
    pub(crate) fn count(&self, a: f64, b: f64) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }

    /// The gcd of `p` and `p'` carried by the chain (constant when `p` is square-free).
    pub(crate) fn gcd(&self) -> &[f64] {
        self.polys.last().expect("chain is never empty")
    }
}

/// A root with multiplicity, in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub value: f64,
    pub multiplicity: usize,
}

/// All roots of a real-rooted polynomial whose roots lie in `[-1, 1]`,
/// ascending, with multiplicities summing to the degree.
pub(crate) fn real_roots(p: &[f64]) -> Result<Vec<Root>> {
    let p = trim(p.to_vec(), 0.0);
    let n = degree(&p);
    if n == 0 {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&p);

    let mut brackets = Vec::new();
    isolate(&chain, -BRACKET, BRACKET, chain.sign_changes(-BRACKET), chain.sign_changes(BRACKET), &mut brackets);

    let mut roots: Vec<Root> = brackets
        .into_iter()
        .map(|(lo, hi, c)| Root { value: refine(&chain, &p, lo, hi, c), multiplicity: c })
        .collect();

    let g = chain.gcd();
    if degree(g) > 0 {
        for extra in real_roots(g)? {
            let nearest = roots
                .iter_mut()
                .min_by(|a, b| (a.value - extra.value).abs().total_cmp(&(b.value - extra.value).abs()))
                .ok_or_else(|| JordanError::NumericalFailure("gcd has roots but the polynomial has none".into()))?;
            // Sturm signs are noise within ~eps^(1/m) of an m-fold root, so the
            // bracketed value can sit well away from the gcd root.
            if (nearest.value - extra.value).abs() > MATCH_DISTANCE {
                return Err(JordanError::NumericalFailure(format!(
                    "repeated root {} has no matching simple root",
                    extra.value
                )));
            }
            // The gcd carries the repeated root with lower multiplicity, so its location is sharper.
            nearest.value = extra.value;
            nearest.multiplicity += extra.multiplicity;
        }
    }

    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    if total != n {
        return Err(JordanError::NumericalFailure(format!(
            "found {total} real roots (with multiplicity) of a degree-{n} real-rooted polynomial"
        )));
    }

    let scale: f64 = p.iter().map(|c| c.abs()).sum();
    for r in &roots {
        let mag: f64 = p.iter().enumerate().map(|(k, c)| c.abs() * r.value.abs().powi(k as i32)).sum();
        let res = eval(&p, r.value).abs();
        if res > 1e-8 * mag.max(1e-300) && res > 1e-14 * scale {
            return Err(JordanError::NumericalFailure(format!(
                "root {} has residual {res:e} after refinement",
                r.value
            )));
        }
    }
    Ok(roots)
}

fn isolate(chain: &SturmChain, lo: f64, hi: f64, v_lo: usize, v_hi: usize, out: &mut Vec<(f64, f64, usize)>) {
    let count = v_lo.saturating_sub(v_hi);
    if count == 0 {
        return;
    }
    if count == 1 || hi - lo <= BISECT_WIDTH {
        out.push((lo, hi, count));
        return;
    }
    let mid = 0.5 * (lo + hi);
    // Rounding can make the count non-monotone; clamp into the parent range.
    let v_mid = chain.sign_changes(mid).clamp(v_hi, v_lo);
    isolate(chain, lo, mid, v_lo, v_mid, out);
    isolate(chain, mid, hi, v_mid, v_hi, out);
}

// Shrink (lo, hi] to BISECT_WIDTH using Sturm counts, then polish simple roots by Newton.
fn refine(chain: &SturmChain, p: &[f64], mut lo: f64, mut hi: f64, count: usize) -> f64 {
    if count == 1 {
        let v_lo = chain.sign_changes(lo);
        while hi - lo > BISECT_WIDTH {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if v_lo.saturating_sub(chain.sign_changes(mid)) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    let mut x = 0.5 * (lo + hi);
    if count == 1 && degree(chain.gcd()) == 0 {
        let dp = derivative(p);
        for _ in 0..NEWTON_STEPS {
            let (f, df) = (eval(p, x), eval(&dp, x));
            if f == 0.0 || df == 0.0 {
                break;
            }
            let next = x - f / df;
            let slack = BISECT_WIDTH;
            if !(lo - slack..=hi + slack).contains(&next) || eval(p, next).abs() >= f.abs() {
                break;
            }
            x = next;
        }
    }
    x
}

/// Elementary symmetric functions `e_0 = 1, e_1, ..., e_n` from power sums
/// `p_1, ..., p_n` via Newton's identities.
pub(crate) fn newton_elementary(power_sums: &[f64]) -> Vec<f64> {
    let n = power_sums.len();
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for k in 1..=n {
        let mut acc = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[k - i] * power_sums[i - 1];
        }
        e[k] = acc / k as f64;
    }
    e
}

/// Number of sign changes in a coefficient sequence, zeros skipped.
pub(crate) fn coefficient_sign_changes(p: &[f64]) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for &c in p {
        if c == 0.0 {
            continue;
        }
        if last != 0.0 && (c < 0.0) != (last < 0.0) {
            count += 1;
        }
        last = c;
    }
    count
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Ascending coefficients of Π (x − r).
    fn from_roots(roots: &[f64]) -> Vec<f64> {
        let mut p = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; p.len() + 1];
            for (i, &c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            p = next;
        }
        p
    }

    fn expand(roots: &[Root]) -> Vec<f64> {
        roots.iter().flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity)).collect()
    }

    #[test]
    fn newton_identities_on_known_roots() {
        let roots = [0.5, -0.25, 0.75];
        let power: Vec<f64> = (1..=3).map(|k| roots.iter().map(|r: &f64| r.powi(k)).sum()).collect();
        let e = newton_elementary(&power);
        assert!((e[1] - 1.0).abs() < 1e-15);
        assert!((e[2] - (0.5 * -0.25 + 0.5 * 0.75 + -0.25 * 0.75)).abs() < 1e-15);
        assert!((e[3] - 0.5 * -0.25 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn simple_roots() {
        let want = [-0.9, -0.1, 0.3, 0.8];
        let got = expand(&real_roots(&from_roots(&want)).unwrap());
        assert_eq!(got.len(), 4);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-13, "{g} vs {w}");
        }
    }

    #[test]
    fn repeated_roots_get_multiplicities() {
        let p = from_roots(&[0.5, 0.5, 0.5, -0.5, -0.5, 0.1]);
        let roots = real_roots(&p).unwrap();
        let summary: Vec<(f64, usize)> = roots.iter().map(|r| ((r.value * 1e6).round() / 1e6, r.multiplicity)).collect();
        assert_eq!(summary, vec![(-0.5, 2), (0.1, 1), (0.5, 3)]);
    }

    #[test]
    fn all_equal_roots() {
        let p = from_roots(&[1.0; 5]);
        let roots = real_roots(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 5);
        assert!((roots[0].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        let chain = SturmChain::new(&from_roots(&[-0.5, 0.2, 0.2, 0.7]));
        assert_eq!(chain.count(-1.0, 1.0), 3);
        assert_eq!(chain.count(0.0, 0.5), 1);
        assert_eq!(degree(chain.gcd()), 1);
    }

    #[test]
    fn descartes_on_real_rooted() {
        // roots 2, -1, -1 : one sign change
        assert_eq!(coefficient_sign_changes(&from_roots(&[2.0, -1.0, -1.0])), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(6, 6), 1.0);
    }
}
