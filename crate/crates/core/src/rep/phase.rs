use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use super::RepError;

/// Tolerance for approximate phases: unit modulus and equality.
pub const PHASE_TOLERANCE: f64 = 1e-12;

/// A point of `U(1)`: either an exact rotation `e^{2πi num/den}` with
/// `0 ≤ num < den` in lowest terms, or an approximate unit complex number.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(untagged)]
pub enum Phase {
    Exact { num: u64, den: u64 },
    Approx { re: f64, im: f64 },
}

impl Phase {
    pub const ONE: Phase = Phase::Exact { num: 0, den: 1 };

    /// `e^{2πi num/den}`, reduced.
    pub fn rotation(num: i64, den: u64) -> Result<Phase, RepError> {
        if den == 0 {
            return Err(RepError::InvalidPhase(format!("{num}/0")));
        }
        let d = den as i64;
        let n = num.rem_euclid(d);
        let g = n.gcd(&d);
        Ok(Phase::Exact {
            num: (n / g) as u64,
            den: (d / g) as u64,
        })
    }

    /// An approximate phase; `|z|` must be 1 within tolerance.
    pub fn from_complex(z: Complex64) -> Result<Phase, RepError> {
        if (z.norm() - 1.0).abs() > PHASE_TOLERANCE {
            return Err(RepError::InvalidPhase(format!("|{z}| != 1")));
        }
        Ok(Phase::Approx { re: z.re, im: z.im })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phase::Exact { .. })
    }

    pub fn is_one(&self) -> bool {
        *self == Phase::ONE
    }

    pub fn to_complex(&self) -> Complex64 {
        match *self {
            Phase::Exact { num, den } => match (num, den) {
                (0, _) => Complex64::new(1.0, 0.0),
                (1, 2) => Complex64::new(-1.0, 0.0),
                (1, 4) => Complex64::new(0.0, 1.0),
                (3, 4) => Complex64::new(0.0, -1.0),
                _ => Complex64::from_polar(1.0, TAU * num as f64 / den as f64),
            },
            Phase::Approx { re, im } => Complex64::new(re, im),
        }
    }

    /// Argument as a fraction of a full turn, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        match *self {
            Phase::Exact { num, den } => num as f64 / den as f64,
            Phase::Approx { re, im } => (im.atan2(re) / TAU).rem_euclid(1.0),
        }
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        match (*self, *other) {
            (Phase::Exact { num: a, den: b }, Phase::Exact { num: c, den: d }) => {
                let l = b.lcm(&d);
                let n = (a * (l / b) + c * (l / d)) % l;
                Phase::rotation(n as i64, l).expect("positive denominator")
            }
            _ => {
                let z = self.to_complex() * other.to_complex();
                Phase::Approx { re: z.re, im: z.im }
            }
        }
    }

    pub fn conj(&self) -> Phase {
        match *self {
            Phase::Exact { num, den } => Phase::Exact {
                num: (den - num) % den,
                den,
            },
            Phase::Approx { re, im } => Phase::Approx { re, im: -im },
        }
    }

    /// The principal `p`-th root: `k/q ↦ k/(pq)`.
    pub fn root(&self, p: u64) -> Phase {
        assert!(p >= 1, "root order must be positive");
        match *self {
            Phase::Exact { num, den } => Phase::rotation(num as i64, den * p).expect("positive"),
            Phase::Approx { .. } => {
                let z = Complex64::from_polar(1.0, TAU * self.turns() / p as f64);
                Phase::Approx { re: z.re, im: z.im }
            }
        }
    }

    /// Sort key: exact phases first by angle, then approximate ones by angle.
    pub(crate) fn order_key(&self) -> (u8, f64) {
        (u8::from(!self.is_exact()), self.turns())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Phase::Exact { num: a, den: b }, Phase::Exact { num: c, den: d }) => a == c && b == d,
            _ => (self.to_complex() - other.to_complex()).norm() <= PHASE_TOLERANCE,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Phase::Exact { num: 0, .. } => write!(f, "1"),
            Phase::Exact { num, den } => write!(f, "{num}/{den}"),
            Phase::Approx { re, im } => {
                let sign = if im < 0.0 { '-' } else { '+' };
                write!(f, "{re}{sign}{}i", im.abs())
            }
        }
    }
}
