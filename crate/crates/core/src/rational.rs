//! Exact arithmetic helpers shared by the combinatorial modules.

use std::fmt;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// Exact rational used for every combinatorial count and curvature.
pub type Rational = Rational64;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Degree of a face: a finite polygon or an infinigon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceDegree {
    Finite(u32),
    Infinite,
}

impl FaceDegree {
    /// `1/|f|`, with `1/inf = 0`.
    pub fn reciprocal(self) -> Rational {
        match self {
            FaceDegree::Finite(n) => ratio(1, n as i64),
            FaceDegree::Infinite => Rational::zero(),
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            FaceDegree::Finite(n) => Some(n),
            FaceDegree::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, FaceDegree::Infinite)
    }

    /// The factor `2q/(q-2)`, which is `2` for `q = inf`.
    pub fn cheeger_factor(self) -> Rational {
        match self {
            FaceDegree::Finite(q) => ratio(2 * q as i64, q as i64 - 2),
            FaceDegree::Infinite => int(2),
        }
    }

    /// The factor `2q/(q-1)`, which is `2` for `q = inf`.
    pub fn growth_factor(self) -> Rational {
        match self {
            FaceDegree::Finite(q) => ratio(2 * q as i64, q as i64 - 1),
            FaceDegree::Infinite => int(2),
        }
    }
}

impl fmt::Display for FaceDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceDegree::Finite(n) => write!(f, "{n}"),
            FaceDegree::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for FaceDegree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(FaceDegree::Infinite),
            other => other
                .parse::<u32>()
                .map(FaceDegree::Finite)
                .map_err(|e| format!("invalid face degree {other:?}: {e}")),
        }
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fraction convergents).
pub fn rationalize(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some((h1 as i64, k1 as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_of_infinigon_is_zero() {
        assert_eq!(FaceDegree::Infinite.reciprocal(), int(0));
        assert_eq!(FaceDegree::Finite(6).reciprocal(), ratio(1, 6));
    }

    #[test]
    fn factors() {
        assert_eq!(FaceDegree::Finite(6).cheeger_factor(), int(3));
        assert_eq!(FaceDegree::Infinite.cheeger_factor(), int(2));
        assert_eq!(FaceDegree::Finite(6).growth_factor(), ratio(12, 5));
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(1.5, 1_000_000), Some((3, 2)));
        assert_eq!(rationalize(-0.25, 1_000_000), Some((-1, 4)));
        assert_eq!(rationalize(2.0 / 3.0, 1_000_000), Some((2, 3)));
        assert_eq!(rationalize(0.0, 10), Some((0, 1)));
    }

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(FaceDegree::Finite(1000) < FaceDegree::Infinite);
        assert_eq!("inf".parse::<FaceDegree>().unwrap(), FaceDegree::Infinite);
    }
}
