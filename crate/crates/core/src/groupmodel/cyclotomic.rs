//! The ring `Z[x]/Φ_N(x)` of cyclotomic integers.

/// Coefficients of the cyclotomic polynomial Φ_n, constant term first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    assert_eq!(b[db], 1, "divisor must be monic");
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for t in (0..q.len()).rev() {
        let c = rem[t + db];
        q[t] = c;
        for (s, &bs) in b.iter().enumerate() {
            rem[t + s] -= c * bs;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

/// Arithmetic modulo Φ_N with elements stored as `deg` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicRing {
    order: u64,
    modulus: Vec<i64>,
}

pub type Cyc = Vec<i64>;

impl CyclotomicRing {
    /// The ring generated by a primitive `order`-th root of unity.
    pub fn new(order: u64) -> Self {
        CyclotomicRing { order, modulus: cyclotomic_poly(order) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn deg(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        vec![0; self.deg()]
    }

    pub fn int(&self, v: i64) -> Cyc {
        let mut z = self.zero();
        z[0] = v;
        z
    }

    /// Reduces an arbitrary polynomial modulo Φ_N.
    pub fn reduce(&self, poly: &[i64]) -> Cyc {
        let d = self.deg();
        let mut p = poly.to_vec();
        for t in (d..p.len()).rev() {
            let c = p[t];
            if c != 0 {
                for (s, &ms) in self.modulus.iter().enumerate() {
                    p[t - d + s] -= c * ms;
                }
            }
        }
        p.resize(d, 0);
        p
    }

    /// x^e for any integer e (x has order N).
    pub fn x_pow(&self, e: i64) -> Cyc {
        let e = e.rem_euclid(self.order as i64) as usize;
        let mut p = vec![0i64; e + 1];
        p[e] = 1;
        self.reduce(&p)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Cyc {
        let mut p = vec![0i64; 2 * self.deg()];
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                for (j, &y) in b.iter().enumerate() {
                    p[i + j] += x * y;
                }
            }
        }
        self.reduce(&p)
    }

    /// 2cos(π/m) = x^{N/2m} + x^{-N/2m}; requires 2m | N.
    pub fn two_cos_pi_over(&self, m: u32) -> Cyc {
        let m = m as u64;
        assert_eq!(self.order % (2 * m), 0, "2m must divide the ring order");
        let e = (self.order / (2 * m)) as i64;
        self.add(&self.x_pow(e), &self.x_pow(-e))
    }

    /// Matrix of multiplication by `c`: column t is c·x^t.
    pub fn mul_matrix(&self, c: &[i64]) -> Vec<Vec<i64>> {
        let d = self.deg();
        let cols: Vec<Cyc> = (0..d).map(|t| self.mul(c, &self.x_pow(t as i64))).collect();
        (0..d).map(|r| (0..d).map(|t| cols[t][r]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(30).len() - 1, 8);
        assert_eq!(cyclotomic_poly(120).len() - 1, 32);
    }

    #[test]
    fn cosines() {
        let r = CyclotomicRing::new(12);
        assert_eq!(r.two_cos_pi_over(2), r.zero());
        assert_eq!(r.two_cos_pi_over(3), r.int(1));
        let s3 = r.two_cos_pi_over(6);
        assert_eq!(r.mul(&s3, &s3), r.int(3));
        let r = CyclotomicRing::new(10);
        let phi = r.two_cos_pi_over(5);
        // golden ratio: φ² = φ + 1
        assert_eq!(r.mul(&phi, &phi), r.add(&phi, &r.int(1)));
        let r = CyclotomicRing::new(8);
        let s2 = r.two_cos_pi_over(4);
        assert_eq!(r.mul(&s2, &s2), r.int(2));
    }

    #[test]
    fn mul_matrix_agrees() {
        let r = CyclotomicRing::new(30);
        let c = r.two_cos_pi_over(5);
        let m = r.mul_matrix(&c);
        let v: Cyc = (0..r.deg() as i64).map(|t| t * t - 3).collect();
        let mv: Cyc = m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        assert_eq!(mv, r.mul(&c, &v));
    }
}
