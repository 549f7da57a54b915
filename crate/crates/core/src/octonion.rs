//! Composition algebras of dimension 1, 2, 4 and 8 built by Cayley–Dickson doubling.
//!
//! An element of the doubled algebra is a pair `(a, b)` stored as the
//! concatenation of the halves, with product
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄)
//! ```
//!
//! and conjugate `(a, b)‾ = (ā, −b)`. Starting from the reals this yields
//! the complex numbers, the quaternions (`e1 e2 = e3`) and the octonions.
//! The resulting octonion table, entry `(i, j)` being `e_i e_j`:
//!
//! ```text
//!        e0   e1   e2   e3   e4   e5   e6   e7
//! e0  |  e0   e1   e2   e3   e4   e5   e6   e7
//! e1  |  e1  -e0   e3  -e2   e5  -e4  -e7   e6
//! e2  |  e2  -e3  -e0   e1   e6   e7  -e4  -e5
//! e3  |  e3   e2  -e1  -e0   e7  -e6   e5  -e4
//! e4  |  e4  -e5  -e6  -e7  -e0   e1   e2   e3
//! e5  |  e5   e4  -e7   e6  -e1  -e0  -e3   e2
//! e6  |  e6   e7   e4  -e5  -e2   e3  -e0  -e1
//! e7  |  e7  -e6   e5   e4  -e3  -e2   e1  -e0
//! ```

use std::sync::OnceLock;

/// `e_i e_j = sign * e_k`, stored as `(sign, k)`.
pub type BasisProduct = (f64, usize);

/// Multiply two elements of the composition algebra of dimension `a.len()`.
///
/// The dimension must be a power of two no larger than 8.
pub fn cd_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);

    // (a0, a1)(b0, b1) = (a0 b0 − b̄1 a1, b1 a0 + a1 b̄0)
    let left = sub(&cd_mul(a0, b0), &cd_mul(&cd_conj(b1), a1));
    let right = add(&cd_mul(b1, a0), &cd_mul(a1, &cd_conj(b0)));
    let mut out = left;
    out.extend(right);
    out
}

pub fn cd_conj(a: &[f64]) -> Vec<f64> {
    let mut out = a.to_vec();
    for v in out.iter_mut().skip(1) {
        *v = -*v;
    }
    out
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Signed multiplication table of the composition algebra of dimension `dim`
/// (1, 2, 4 or 8), generated from [`cd_mul`] on basis vectors.
pub fn basis_table(dim: usize) -> &'static [Vec<BasisProduct>] {
    static TABLES: [OnceLock<Vec<Vec<BasisProduct>>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match dim {
        1 => 0,
        2 => 1,
        4 => 2,
        8 => 3,
        _ => panic!("composition algebra dimension must be 1, 2, 4 or 8, got {dim}"),
    };
    TABLES[slot].get_or_init(|| build_table(dim))
}

fn build_table(dim: usize) -> Vec<Vec<BasisProduct>> {
    let unit = |i: usize| {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        v
    };
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let p = cd_mul(&unit(i), &unit(j));
                    let (k, &s) = p
                        .iter()
                        .enumerate()
                        .find(|(_, v)| **v != 0.0)
                        .expect("basis product is a signed basis vector");
                    (s, k)
                })
                .collect()
        })
        .collect()
}

/// Octonion product in the fixed Cayley–Dickson basis.
pub fn octonion_mul(a: &[f64; 8], b: &[f64; 8]) -> [f64; 8] {
    let table = basis_table(8);
    let mut out = [0.0; 8];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let (s, k) = table[i][j];
            out[k] += s * ai * bj;
        }
    }
    out
}

pub fn octonion_conj(a: &[f64; 8]) -> [f64; 8] {
    let mut out = *a;
    for v in out.iter_mut().skip(1) {
        *v = -*v;
    }
    out
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> [f64; 8] {
        let mut v = [0.0; 8];
        v[i] = 1.0;
        v
    }

    // Frozen copy of the table in the module docs: (sign, index) of e_i e_j.
    const FROZEN: [[i8; 8]; 8] = [
        [1, 2, 3, 4, 5, 6, 7, 8],
        [2, -1, 4, -3, 6, -5, -8, 7],
        [3, -4, -1, 2, 7, 8, -5, -6],
        [4, 3, -2, -1, 8, -7, 6, -5],
        [5, -6, -7, -8, -1, 2, 3, 4],
        [6, 5, -8, 7, -2, -1, -4, 3],
        [7, 8, 5, -6, -3, 4, -1, -2],
        [8, -7, 6, 5, -4, -3, 2, -1],
    ];

    #[test]
    fn table_matches_frozen_copy() {
        let table = basis_table(8);
        for i in 0..8 {
            for j in 0..8 {
                let entry = FROZEN[i][j];
                let expected = (entry.signum() as f64, entry.unsigned_abs() as usize - 1);
                assert_eq!(table[i][j], expected, "e{i} e{j}");
            }
        }
    }

    #[test]
    fn unit_law_and_imaginary_squares() {
        let x = [0.3, -1.0, 2.0, 0.5, 0.0, 4.0, -2.5, 1.5];
        assert_eq!(octonion_mul(&e(0), &x), x);
        assert_eq!(octonion_mul(&x, &e(0)), x);
        for i in 1..8 {
            let mut minus_one = [0.0; 8];
            minus_one[0] = -1.0;
            assert_eq!(octonion_mul(&e(i), &e(i)), minus_one);
        }
    }

    #[test]
    fn e1_e2_is_e3() {
        assert_eq!(octonion_mul(&e(1), &e(2)), e(3));
    }

    #[test]
    fn imaginary_units_anticommute() {
        for i in 1..8 {
            for j in 1..8 {
                if i == j {
                    continue;
                }
                let ab = octonion_mul(&e(i), &e(j));
                let ba = octonion_mul(&e(j), &e(i));
                for k in 0..8 {
                    assert_eq!(ab[k], -ba[k]);
                }
            }
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        let lhs = octonion_mul(&octonion_mul(&e(1), &e(2)), &e(4));
        let rhs = octonion_mul(&e(1), &octonion_mul(&e(2), &e(4)));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn smaller_tables_are_prefixes() {
        // The quaternion and complex tables embed in the octonion one.
        let oct = basis_table(8);
        for dim in [1, 2, 4] {
            let t = basis_table(dim);
            for i in 0..dim {
                for j in 0..dim {
                    assert_eq!(t[i][j], oct[i][j]);
                }
            }
        }
    }

    #[test]
    fn conjugate_reverses_products() {
        let a = [1.0, 0.5, -0.25, 2.0, 0.0, -1.0, 0.75, 0.1];
        let b = [-0.3, 1.0, 0.2, 0.0, 1.5, 0.4, -2.0, 0.6];
        let lhs = octonion_conj(&octonion_mul(&a, &b));
        let rhs = octonion_mul(&octonion_conj(&b), &octonion_conj(&a));
        for k in 0..8 {
            assert!((lhs[k] - rhs[k]).abs() < 1e-12);
        }
    }
}
