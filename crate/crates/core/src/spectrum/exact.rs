//! Exact linear algebra over the rationals and a prime field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Integers modulo the prime `2^31 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime(u64);

impl ModPrime {
    pub const P: u64 = (1 << 31) - 1;

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % Self::P;
            }
            base = base * base % Self::P;
            e >>= 1;
        }
        ModPrime(acc)
    }
}

impl Field for ModPrime {
    fn zero() -> Self {
        ModPrime(0)
    }
    fn one() -> Self {
        ModPrime(1)
    }
    fn from_i64(x: i64) -> Self {
        ModPrime(x.rem_euclid(Self::P as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        ModPrime((self.0 + other.0) % Self::P)
    }
    fn sub(&self, other: &Self) -> Self {
        ModPrime((self.0 + Self::P - other.0) % Self::P)
    }
    fn mul(&self, other: &Self) -> Self {
        ModPrime(self.0 * other.0 % Self::P)
    }
    fn inv(&self) -> Self {
        self.pow(Self::P - 2)
    }
}

/// Basis of the null space of the `rows x ncols` matrix.
pub fn kernel<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].inv();
        for x in rows[rank][col..].iter_mut() {
            *x = x.mul(&inv);
        }
        let support: Vec<(usize, F)> = (col..ncols)
            .filter(|&c| !rows[rank][c].is_zero())
            .map(|c| (c, rows[rank][c].clone()))
            .collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, x) in &support {
                row[*c] = row[*c].sub(&factor.mul(x));
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let x = &rows[r][free];
                if !x.is_zero() {
                    v[pc] = F::zero().sub(x);
                }
            }
            v
        })
        .collect()
}

/// Solves `basis * x = target` for a target known to lie in the span of the
/// linearly independent `basis` vectors.
pub fn coordinates<F: Field>(basis: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let k = basis.len();
    // Augmented system: rows are coordinates, columns are basis vectors then
    // the target negated; a kernel vector with last entry 1 gives x.
    let rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(F::zero().sub(&target[i]));
            row
        })
        .collect();
    let ker = kernel(rows, k + 1);
    let v = ker.into_iter().find(|v| !v[k].is_zero())?;
    let inv = v[k].inv();
    Some(v[..k].iter().map(|x| x.mul(&inv)).collect())
}

/// Scales a nonzero rational vector to coprime integers with a positive first
/// nonzero entry.
pub fn normalize(v: &[BigRational]) -> Vec<BigRational> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let first_negative = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    if first_negative {
        gcd = -gcd;
    }
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &gcd))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_i64(x)
    }

    #[test]
    fn rational_kernel() {
        let rows = vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let ker = kernel(rows, 3);
        assert_eq!(ker, vec![vec![q(-1), q(1), q(0)]]);
    }

    #[test]
    fn modular_inverse() {
        let x = ModPrime::from_i64(6);
        assert_eq!(x.mul(&x.inv()), ModPrime::one());
        assert_eq!(
            ModPrime::from_i64(-1).add(&ModPrime::one()),
            ModPrime::zero()
        );
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let rows = vec![vec![q(2), q(1)], vec![q(1), q(3)], vec![q(0), q(1)]];
        assert!(kernel(rows, 2).is_empty());
    }

    #[test]
    fn coordinates_in_span() {
        let basis = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let x = coordinates(&basis, &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
    }

    #[test]
    fn normalized_vector() {
        let v = vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ];
        assert_eq!(normalize(&v), vec![q(3), q(-2)]);
    }
}
