//! Exact rational kernels and determinants modulo a prime.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>], ncols: usize) -> usize {
    rref(&mut m.to_vec(), ncols).len()
}

/// A basis of `{x : M x = 0}`, one vector per free column.
pub fn kernel(m: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][free].clone();
            }
            v
        })
        .collect()
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Determinant modulo a prime by Gaussian elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else { return 0 };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[col][col], p);
        let inv = pow_mod(m[col][col], p - 2, p);
        let (top, rest) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in rest.iter_mut() {
            let f = mul_mod(row[col], inv, p);
            if f == 0 {
                continue;
            }
            for c in col..n {
                if prow[c] != 0 {
                    row[c] = (row[c] + p - mul_mod(f, prow[c], p)) % p;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn kernel_small() {
        let m = mat(&[&[1, 1, 0], &[0, 0, 0], &[2, 2, 0]]);
        assert_eq!(rank(&m, 3), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s: BigRational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
        assert_eq!(kernel(&[], 2).len(), 2);
    }

    #[test]
    fn primes() {
        assert!(is_prime((1u64 << 62) - 57));
        assert!(!is_prime((1u64 << 62) - 55));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(561));
        assert!(!is_prime(1));
    }

    #[test]
    fn determinants() {
        let p = 1_000_000_007;
        assert_eq!(det_mod(vec![vec![2, 3], vec![1, 4]], p), 5);
        assert_eq!(det_mod(vec![vec![0, 1], vec![1, 0]], p), p - 1);
        assert_eq!(det_mod(vec![vec![1, 2], vec![2, 4]], p), 0);
        let vander: Vec<Vec<u64>> = (1..=4u64).map(|x| (0..4).map(|e| x.pow(e)).collect()).collect();
        // ∏_{i<j} (x_j - x_i) for 1..4 is 12
        assert_eq!(det_mod(vander, p), 12);
    }
}
