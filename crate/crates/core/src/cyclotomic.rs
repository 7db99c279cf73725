//! Exact arithmetic in `Z[ζ_m]`, the integer span of the `m`-th roots of
//! unity. Elements are stored over the redundant basis `1, ζ, …, ζ^{m-1}`;
//! equality is decided by reducing modulo the cyclotomic polynomial `Φ_m`.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    m: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "order must be positive");
        Cyclotomic {
            m,
            coeffs: vec![0; m],
        }
    }

    pub fn integer(m: usize, v: i64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = v;
        z
    }

    /// `ζ_m^e`.
    pub fn root(m: usize, e: i64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[e.rem_euclid(m as i64) as usize] = 1;
        z
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Complex conjugate: `ζ^e ↦ ζ^{-e}`.
    pub fn conj(&self) -> Self {
        let mut z = Self::zero(self.m);
        for (e, &c) in self.coeffs.iter().enumerate() {
            z.coeffs[(self.m - e) % self.m] += c;
        }
        z
    }

    pub fn is_zero(&self) -> bool {
        let phi = cyclotomic_polynomial(self.m);
        let mut r = self.coeffs.clone();
        // phi is monic of degree φ(m); reduce from the top
        let d = phi.len() - 1;
        for top in (d..r.len()).rev() {
            let c = r[top];
            if c != 0 {
                for (k, &p) in phi.iter().enumerate() {
                    r[top - d + k] -= c * p;
                }
            }
        }
        r.iter().all(|&c| c == 0)
    }

    pub fn equals_integer(&self, v: i64) -> bool {
        (self.clone() - Cyclotomic::integer(self.m, v)).is_zero()
    }

    /// Numerical value, for display.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let m = self.m as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(e, &c)| {
                num_complex::Complex64::from_polar(c as f64, std::f64::consts::TAU * e as f64 / m)
            })
            .sum()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic orders differ");
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self.check(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self + (-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        let m = self.m;
        let mut z = Cyclotomic::zero(m);
        for (a, &ca) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                z.coeffs[(a + b) % m] += ca * cb;
            }
        }
        z
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && (self.clone() - other.clone()).is_zero()
    }
}

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    // x^m - 1 = ∏_{d | m} Φ_d
    let mut p = vec![0i64; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in (1..m).filter(|&d| m.is_multiple_of(d)) {
        p = divide_exact(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for top in (dd..r.len()).rev() {
        let c = r[top];
        q[top - dd] = c;
        for (k, &p) in den.iter().enumerate() {
            r[top - dd + k] -= c * p;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for m in 2..=12 {
            let s = (0..m as i64).fold(Cyclotomic::zero(m), |acc, e| acc + Cyclotomic::root(m, e));
            assert!(s.is_zero(), "m = {m}");
            assert!(!Cyclotomic::root(m, 1).is_zero());
        }
    }

    #[test]
    fn norm_of_root_is_one() {
        for m in 1..=10 {
            for e in 0..m as i64 {
                let z = Cyclotomic::root(m, e);
                assert!((&z * &z.conj()).equals_integer(1));
            }
        }
    }

    #[test]
    fn matches_floating_point() {
        let z = Cyclotomic::root(6, 1) + Cyclotomic::root(6, 5);
        // 2 cos(π/3) = 1
        assert!(z.equals_integer(1));
        assert!((z.to_complex().re - 1.0).abs() < 1e-12);
    }
}
