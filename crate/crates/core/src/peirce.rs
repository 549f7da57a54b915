//! Peirce decomposition relative to an idempotent, the box operator, the
//! Frobenius transformation and the quadratic representation.
//!
//! For an idempotent `c` the operator `L(c)` has eigenvalues in `{0, ½, 1}`
//! and its spectral projectors are polynomials in `L(c)`:
//!
//! ```text
//! E1  = 2L² − L,   E½ = 4(L − L²),   E0 = I − 3L + 2L²
//! ```
//!
//! The Frobenius transformation of `z ∈ N(c, ½)` is `τ(z) = exp(2 z□c)`. The
//! exponent is nilpotent (it shifts `N(c,1) → N(c,½) → N(c,0) → 0`), so the
//! series stops after the quadratic term.

use serde::Serialize;

use crate::algebra::{l_operator, Element, LinearOperator};
use crate::error::{JordanError, Result};

/// Largest accepted `‖c ∘ c − c‖` for an idempotent.
pub const IDEMPOTENT_TOL: f64 = 1e-10;
/// Largest accepted `‖E½ z − z‖ / (1 + ‖z‖)` for `z` in the half space.
pub const HALF_SPACE_TOL: f64 = 1e-10;
// Projector traces must be this close to integers.
const DIM_TOL: f64 = 1e-6;

pub fn check_idempotent(c: &Element) -> Result<()> {
    let r = c.square().distance(c);
    if r <= IDEMPOTENT_TOL {
        Ok(())
    } else {
        Err(JordanError::Precondition(format!("c is not an idempotent: ‖c∘c − c‖ = {r:e} > {IDEMPOTENT_TOL:e}")))
    }
}

/// The three Peirce projectors of an idempotent.
#[derive(Debug, Clone)]
pub struct PeirceSystem {
    pub idempotent: Element,
    pub e1: LinearOperator,
    pub e12: LinearOperator,
    pub e0: LinearOperator,
    /// Dimensions of `N(c,1)`, `N(c,½)`, `N(c,0)`.
    pub dims: [usize; 3],
}

impl Serialize for PeirceSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            idempotent: &'a Element,
            dims: [usize; 3],
        }
        Repr { idempotent: &self.idempotent, dims: self.dims }.serialize(serializer)
    }
}

impl PeirceSystem {
    /// `(E1 x, E½ x, E0 x)`
    pub fn components(&self, x: &Element) -> Result<(Element, Element, Element)> {
        Ok((self.e1.apply(x)?, self.e12.apply(x)?, self.e0.apply(x)?))
    }

    pub fn projector(&self, which: PeirceSpace) -> &LinearOperator {
        match which {
            PeirceSpace::One => &self.e1,
            PeirceSpace::Half => &self.e12,
            PeirceSpace::Zero => &self.e0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeirceSpace {
    One,
    Half,
    Zero,
}

impl PeirceSpace {
    pub const ALL: [PeirceSpace; 3] = [PeirceSpace::One, PeirceSpace::Half, PeirceSpace::Zero];

    /// Eigenvalue of `L(c)` on this space.
    pub fn eigenvalue(self) -> f64 {
        match self {
            PeirceSpace::One => 1.0,
            PeirceSpace::Half => 0.5,
            PeirceSpace::Zero => 0.0,
        }
    }
}

fn projectors(c: &Element) -> (LinearOperator, LinearOperator, LinearOperator) {
    let l = l_operator(c);
    let l2 = l.compose(&l).expect("same algebra");
    let id = LinearOperator::identity(c.algebra());
    let e1 = l2.scale(2.0).sub(&l);
    let e12 = l.sub(&l2).scale(4.0);
    let e0 = id.sub(&l.scale(3.0)).add(&l2.scale(2.0));
    (e1, e12, e0)
}

pub fn peirce_system(c: &Element) -> Result<PeirceSystem> {
    check_idempotent(c)?;
    let (e1, e12, e0) = projectors(c);
    let mut dims = [0usize; 3];
    for (d, e) in dims.iter_mut().zip([&e1, &e12, &e0]) {
        let t = e.matrix_trace();
        let r = t.round();
        if (t - r).abs() > DIM_TOL || r < 0.0 {
            return Err(JordanError::NumericalFailure(format!(
                "Peirce projector trace {t} is not within {DIM_TOL:e} of a non-negative integer"
            )));
        }
        *d = r as usize;
    }
    Ok(PeirceSystem { idempotent: c.clone(), e1, e12, e0, dims })
}

/// `x = x1 + x½ + x0` relative to the idempotent `c`.
pub fn peirce_components(c: &Element, x: &Element) -> Result<(Element, Element, Element)> {
    c.same_algebra(x)?;
    peirce_system(c)?.components(x)
}

/// Matrix of `w ↦ (x∘y)∘w + x∘(y∘w) − y∘(x∘w)`.
pub fn box_operator(x: &Element, y: &Element) -> Result<LinearOperator> {
    x.same_algebra(y)?;
    let lx = l_operator(x);
    let ly = l_operator(y);
    let comm = lx.compose(&ly)?.sub(&ly.compose(&lx)?);
    Ok(l_operator(&x.mul(y)).add(&comm))
}

/// `(x □ y) w` without forming the operator.
pub(crate) fn box_apply(x: &Element, y: &Element, w: &Element) -> Element {
    x.mul(y).mul(w).add(&x.mul(&y.mul(w))).sub(&y.mul(&x.mul(w)))
}

fn check_half_space(c: &Element, z: &Element, what: &str) -> Result<()> {
    c.same_algebra(z)?;
    let (_, e12, _) = projectors(c);
    let r = e12.apply_unchecked(z).distance(z);
    if r <= HALF_SPACE_TOL * (1.0 + z.norm()) {
        Ok(())
    } else {
        Err(JordanError::Precondition(format!("{what} is not in N(c,1/2): ‖E½ z − z‖ = {r:e}")))
    }
}

/// Frobenius transformation `τ(z) = I + A + A²/2` with `A = 2 (z □ c)`.
pub fn frobenius_map(c: &Element, z: &Element) -> Result<LinearOperator> {
    check_idempotent(c)?;
    check_half_space(c, z, "z")?;
    Ok(frobenius_unchecked(c, z))
}

pub(crate) fn frobenius_unchecked(c: &Element, z: &Element) -> LinearOperator {
    let a = box_operator(z, c).expect("same algebra").scale(2.0);
    let a2 = a.compose(&a).expect("same algebra");
    LinearOperator::identity(c.algebra()).add(&a).add(&a2.scale(0.5))
}

/// `τ(z) x` computed from Jordan products only.
pub(crate) fn frobenius_apply(c: &Element, z: &Element, x: &Element) -> Element {
    let ax = box_apply(z, c, x).scale(2.0);
    let a2x = box_apply(z, c, &ax).scale(2.0);
    x.add(&ax).axpy(0.5, &a2x)
}

/// `n_t(x) = t (c + x/2 + ¼ (e − c) ∘ x²)`.
pub fn n_t_element(c: &Element, t: f64, x: &Element) -> Result<Element> {
    if t == 0.0 || !t.is_finite() {
        return Err(JordanError::Degenerate(format!("n_t(x) needs a finite nonzero t, got {t}")));
    }
    check_idempotent(c)?;
    check_half_space(c, x, "x")?;
    Ok(n_t_unchecked(c, t, x))
}

pub(crate) fn n_t_unchecked(c: &Element, t: f64, x: &Element) -> Element {
    let e_minus_c = Element::unit(c.algebra()).sub(c);
    c.axpy(0.5, x).axpy(0.25, &e_minus_c.mul(&x.square())).scale(t)
}

/// `Q(u) = 2 L(u)² − L(u²)`.
pub fn quadratic_rep(u: &Element) -> LinearOperator {
    let l = l_operator(u);
    l.compose(&l).expect("same algebra").scale(2.0).sub(&l_operator(&u.square()))
}

/// `Q(u) x = 2 u∘(u∘x) − u²∘x` without forming the operator.
pub(crate) fn quadratic_apply(u: &Element, x: &Element) -> Element {
    u.mul(&u.mul(x)).scale(2.0).sub(&u.square().mul(x))
}

/// Componentwise comparison of the closed-form Frobenius component formulas with the
/// exponential definition. JSON: `{"formula_triple", "oracle_triple", "discrepancy"}`.
#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusComponents {
    /// `(n1′, n½′, n0′)` from the closed-form component formulas.
    pub formula_triple: [Element; 3],
    /// Peirce components of `τ(x′) n_t(x)`.
    pub oracle_triple: [Element; 3],
    /// `‖formula − oracle‖` per component.
    pub discrepancy: [f64; 3],
}

/// Evaluate the closed-form components of `τ(x′) n_t(x)`:
///
/// ```text
/// n1′ = t c
/// n½′ = t (2 x′∘c + x/2)
/// n0′ = t (2 ((e−c)∘x′²)∘c + (e−c)∘(x′∘x) + ¼ (e−c)∘x²)
/// ```
///
/// bracketed innermost-first, left to right, and compare them with the
/// Peirce components of `τ(x′)` applied to `n_t(x)`.
pub fn frobenius_components_closed_form(c: &Element, x_prime: &Element, t: f64, x: &Element) -> Result<FrobeniusComponents> {
    let nt = n_t_element(c, t, x)?;
    check_half_space(c, x_prime, "x′")?;
    let system = peirce_system(c)?;

    let e_minus_c = Element::unit(c.algebra()).sub(c);
    let n1 = c.scale(t);
    let n12 = x_prime.mul(c).scale(2.0).axpy(0.5, x).scale(t);
    let n0 = e_minus_c
        .mul(&x_prime.square())
        .mul(c)
        .scale(2.0)
        .add(&e_minus_c.mul(&x_prime.mul(x)))
        .axpy(0.25, &e_minus_c.mul(&x.square()))
        .scale(t);

    let moved = frobenius_unchecked(c, x_prime).apply(&nt)?;
    let (o1, o12, o0) = system.components(&moved)?;
    let discrepancy = [n1.distance(&o1), n12.distance(&o12), n0.distance(&o0)];
    Ok(FrobeniusComponents { formula_triple: [n1, n12, n0], oracle_triple: [o1, o12, o0], discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, Family};
    use crate::spectral::{determinant, signature_of, Signature};
    use std::sync::Arc;

    fn frame_unit(alg: &Arc<crate::algebra::Algebra>, i: usize) -> Element {
        Element::basis(alg, i)
    }

    fn half_space_vector(c: &Element, seed: f64) -> Element {
        let alg = c.algebra();
        let raw: Vec<f64> = (0..alg.dim()).map(|k| ((k as f64 + 1.0) * seed).sin()).collect();
        let (_, e12, _) = projectors(c);
        e12.apply_unchecked(&Element::new(alg, raw).unwrap())
    }

    #[test]
    fn unit_idempotent_dims() {
        for f in Family::ALL {
            let a = make_algebra(f, 3).unwrap();
            let sys = peirce_system(&Element::unit(&a)).unwrap();
            assert_eq!(sys.dims, [a.dim(), 0, 0]);
        }
    }

    #[test]
    fn albert_primitive_dims() {
        let a = make_algebra(Family::Albert, 3).unwrap();
        assert_eq!(peirce_system(&frame_unit(&a, 0)).unwrap().dims, [1, 16, 10]);
    }

    #[test]
    fn symr_first_unit_dims() {
        for n in 2..=6 {
            let a = make_algebra(Family::SymR, n).unwrap();
            assert_eq!(peirce_system(&frame_unit(&a, 0)).unwrap().dims, [1, n - 1, (n - 1) * n / 2]);
        }
    }

    #[test]
    fn non_idempotent_rejected() {
        let a = make_algebra(Family::SymR, 3).unwrap();
        let x = Element::unit(&a).scale(2.0);
        assert!(matches!(peirce_system(&x), Err(JordanError::Precondition(_))));
    }

    #[test]
    fn components_of_c_and_e() {
        let a = make_algebra(Family::HermC, 3).unwrap();
        let c = frame_unit(&a, 1);
        let (x1, x12, x0) = peirce_components(&c, &c).unwrap();
        assert!(x1.distance(&c) < 1e-14 && x12.norm() < 1e-14 && x0.norm() < 1e-14);
        let e = Element::unit(&a);
        let (x1, x12, x0) = peirce_components(&c, &e).unwrap();
        assert!(x1.distance(&c) < 1e-14 && x12.norm() < 1e-14 && x0.distance(&e.sub(&c)) < 1e-14);
    }

    #[test]
    fn box_of_unit_is_identity() {
        let a = make_algebra(Family::Spin, 4).unwrap();
        let e = Element::unit(&a);
        let b = box_operator(&e, &e).unwrap();
        assert!(b.max_abs_diff(&LinearOperator::identity(&a)) < 1e-15);
    }

    #[test]
    fn frobenius_of_zero_is_identity() {
        let a = make_algebra(Family::Albert, 3).unwrap();
        let c = frame_unit(&a, 0);
        let tau = frobenius_map(&c, &Element::zero(&a)).unwrap();
        assert!(tau.max_abs_diff(&LinearOperator::identity(&a)) < 1e-15);
    }

    #[test]
    fn frobenius_moves_tc_to_n_t() {
        for f in Family::ALL {
            let a = make_algebra(f, 3).unwrap();
            let c = frame_unit(&a, 0);
            let x = half_space_vector(&c, 0.7);
            let t = -1.3;
            let nt = n_t_element(&c, t, &x).unwrap();
            let moved = frobenius_map(&c, &x.scale(0.5)).unwrap().apply(&c.scale(t)).unwrap();
            assert!(moved.distance(&nt) < 1e-12, "{f}");
            let back = frobenius_map(&c, &x.scale(-0.5)).unwrap().apply(&nt).unwrap();
            assert!(back.distance(&c.scale(t)) < 1e-12, "{f}");
            assert!(frobenius_apply(&c, &x.scale(0.5), &c.scale(t)).distance(&nt) < 1e-12);
        }
    }

    #[test]
    fn n_t_preconditions_and_signature() {
        let a = make_algebra(Family::Albert, 3).unwrap();
        let c = frame_unit(&a, 0);
        assert_eq!(n_t_element(&c, 1.0, &Element::zero(&a)).unwrap(), c);
        assert!(matches!(n_t_element(&c, 0.0, &Element::zero(&a)), Err(JordanError::Degenerate(_))));
        assert!(matches!(n_t_element(&c, 1.0, &c), Err(JordanError::Precondition(_))));
        let x = half_space_vector(&c, 1.1);
        let nt = n_t_element(&c, -2.0, &x).unwrap();
        assert_eq!(signature_of(&nt, 1e-9).unwrap(), Signature::new(0, 1));
    }

    #[test]
    fn quadratic_rep_basics() {
        let a = make_algebra(Family::HermH, 3).unwrap();
        assert!(quadratic_rep(&Element::unit(&a)).max_abs_diff(&LinearOperator::identity(&a)) < 1e-15);
        let c = frame_unit(&a, 2);
        let sys = peirce_system(&c).unwrap();
        assert!(quadratic_rep(&c).max_abs_diff(&sys.e1) < 1e-14);
        let u = Element::new(&a, (0..a.dim()).map(|k| (k as f64 * 0.37).cos()).collect()).unwrap();
        let x = Element::new(&a, (0..a.dim()).map(|k| (k as f64 * 0.11).sin()).collect()).unwrap();
        assert!(quadratic_rep(&u).apply(&x).unwrap().distance(&quadratic_apply(&u, &x)) < 1e-12);
        let lhs = determinant(&quadratic_apply(&u, &x));
        let rhs = determinant(&u).powi(2) * determinant(&x);
        assert!((lhs - rhs).abs() < 1e-8 * (1.0 + rhs.abs()));
    }

    #[test]
    fn closed_form_components_at_zero_shift() {
        let a = make_algebra(Family::Albert, 3).unwrap();
        let c = frame_unit(&a, 0);
        let x = half_space_vector(&c, 0.3);
        let t = 0.8;
        let r = frobenius_components_closed_form(&c, &Element::zero(&a), t, &x).unwrap();
        let e_minus_c = Element::unit(&a).sub(&c);
        assert!(r.formula_triple[0].distance(&c.scale(t)) < 1e-14);
        assert!(r.formula_triple[1].distance(&x.scale(t / 2.0)) < 1e-14);
        assert!(r.formula_triple[2].distance(&e_minus_c.mul(&x.square()).scale(t / 4.0)) < 1e-12);
        assert!(r.discrepancy.iter().all(|d| *d < 1e-12), "{:?}", r.discrepancy);

        let r = frobenius_components_closed_form(&c, &x.scale(-0.5), t, &x).unwrap();
        assert!(r.oracle_triple[0].distance(&c.scale(t)) < 1e-12);
        assert!(r.oracle_triple[1].norm() < 1e-12);
        assert!(r.oracle_triple[2].norm() < 1e-12);
    }
}
