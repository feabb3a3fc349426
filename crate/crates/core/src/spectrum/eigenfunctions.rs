//! Exact search for eigenfunctions of the combinatorial Laplacian with finite
//! support.
//!
//! A function `f` supported in a region `R` is an eigenfunction iff it lies in
//! the largest subspace `W` of functions on `R` that the averaging operator
//! `T f(v) = (1/|v|) sum_{u ~ v} f(u)` maps into itself while keeping every
//! vertex just outside `R` at zero. `W` is computed modulo a prime first (its
//! dimension there can only be larger) and over the rationals when nonzero.
//! Eigenvalues of `T` on `W` are found by rationalizing floating estimates and
//! checked exactly; directions whose eigenvalue is irrational are counted, not
//! certified.

use std::collections::{BTreeSet, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exact::{coordinates, kernel, normalize, Field, ModPrime};
use crate::error::{Error, Result};
use crate::map::VertexId;
use crate::rational::rationalize;
use crate::truncation::Truncation;

/// Eigenfunction `f` with `Laplacian f = eigenvalue f`, given on its support.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenfunctionCertificate {
    pub support: Vec<VertexId>,
    pub values: Vec<BigRational>,
    pub eigenvalue: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenfunctionSearch {
    pub region: Vec<VertexId>,
    /// Dimension of the space of finitely supported eigenfunction
    /// combinations with support in the region.
    pub invariant_dimension: usize,
    pub certificates: Vec<EigenfunctionCertificate>,
    /// Dimension left over after the rational eigenspaces, i.e. eigenvectors
    /// with irrational eigenvalues.
    pub unresolved_dimension: usize,
}

const MAX_DENOMINATOR: i64 = 1_000_000;
const SMALL_REGION: usize = 8;
const GRID_HEIGHT: i64 = 100;

struct RegionSystem {
    region: Vec<VertexId>,
    degrees: Vec<i64>,
    /// Neighbours inside the region, by position.
    inner: Vec<Vec<usize>>,
    /// For each vertex adjacent to the region from outside, its neighbours in
    /// the region by position.
    outer: Vec<Vec<usize>>,
}

impl RegionSystem {
    fn new(trunc: &Truncation, region: &[VertexId]) -> Result<Self> {
        let region: Vec<VertexId> = region
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let map = trunc.map();
        let position: HashMap<VertexId, usize> =
            region.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut outer_map: HashMap<VertexId, Vec<usize>> = HashMap::new();
        let mut inner = Vec::with_capacity(region.len());
        let mut degrees = Vec::with_capacity(region.len());
        for (i, &v) in region.iter().enumerate() {
            if !trunc.is_interior(v) {
                return Err(Error::RegionTouchesBoundary(v));
            }
            degrees.push(map.degree(v) as i64);
            let mut mine = Vec::new();
            for &u in map.neighbors(v) {
                match position.get(&u) {
                    Some(&j) => mine.push(j),
                    None => {
                        if !trunc.is_interior(u) {
                            return Err(Error::RegionTouchesBoundary(u));
                        }
                        outer_map.entry(u).or_default().push(i);
                    }
                }
            }
            inner.push(mine);
        }
        let mut outer: Vec<(VertexId, Vec<usize>)> = outer_map.into_iter().collect();
        outer.sort_unstable();
        Ok(RegionSystem {
            region,
            degrees,
            inner,
            outer: outer.into_iter().map(|(_, js)| js).collect(),
        })
    }

    fn len(&self) -> usize {
        self.region.len()
    }

    fn average<F: Field>(&self, f: &[F]) -> Vec<F> {
        (0..self.len())
            .map(|i| {
                let sum = self.inner[i]
                    .iter()
                    .fold(F::zero(), |acc, &j| acc.add(&f[j]));
                sum.mul(&F::from_i64(self.degrees[i]).inv())
            })
            .collect()
    }

    /// Rows of the outer constraints applied to the given vectors.
    fn outer_rows<F: Field>(&self, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
        self.outer
            .iter()
            .map(|js| {
                vectors
                    .iter()
                    .map(|u| js.iter().fold(F::zero(), |acc, &j| acc.add(&u[j])))
                    .collect()
            })
            .collect()
    }

    /// Basis of the largest averaging-invariant subspace with zero outer sums.
    fn invariant_subspace<F: Field>(&self) -> Vec<Vec<F>> {
        let n = self.len();
        let identity: Vec<Vec<F>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        let basis = combine(&identity, &kernel(self.outer_rows(&identity), n));
        if basis.is_empty() {
            return basis;
        }
        // `coeffs` expresses the current subspace in `basis`; `images` holds
        // the matching `T^i` images, which must keep zero outer sums.
        let k = basis.len();
        let mut coeffs: Vec<Vec<F>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        let mut images = basis.clone();
        loop {
            let next: Vec<Vec<F>> = images.iter().map(|u| self.average(u)).collect();
            let ker = kernel(self.outer_rows(&next), next.len());
            if ker.is_empty() {
                return Vec::new();
            }
            if ker.len() == next.len() {
                break;
            }
            coeffs = combine(&coeffs, &ker);
            images = combine(&next, &ker);
        }
        combine(&basis, &coeffs)
    }
}

/// `sum_t y[t] vectors[t]` for each coefficient vector `y`.
fn combine<F: Field>(vectors: &[Vec<F>], coefficients: &[Vec<F>]) -> Vec<Vec<F>> {
    let len = vectors.first().map_or(0, Vec::len);
    coefficients
        .iter()
        .map(|y| {
            let mut out = vec![F::zero(); len];
            for (c, v) in y.iter().zip(vectors) {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *o = o.add(&c.mul(x));
                    }
                }
            }
            out
        })
        .collect()
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Every finitely supported eigenfunction with support inside `region`.
pub fn find_finitely_supported_eigenfunctions(
    trunc: &Truncation,
    region: &[VertexId],
) -> Result<EigenfunctionSearch> {
    let system = RegionSystem::new(trunc, region)?;
    let empty = |system: RegionSystem| EigenfunctionSearch {
        region: system.region,
        invariant_dimension: 0,
        certificates: Vec::new(),
        unresolved_dimension: 0,
    };
    if system.len() == 0 || system.invariant_subspace::<ModPrime>().is_empty() {
        return Ok(empty(system));
    }
    let basis = system.invariant_subspace::<BigRational>();
    let d = basis.len();
    if d == 0 {
        return Ok(empty(system));
    }
    // Matrix of the averaging operator on the invariant subspace.
    let columns: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|w| coordinates(&basis, &system.average(w)).expect("subspace is invariant"))
        .collect();
    let restricted = DMatrix::from_fn(d, d, |i, j| to_f64(&columns[j][i]));

    let mut candidates: BTreeSet<BigRational> = BTreeSet::new();
    for z in restricted.complex_eigenvalues().iter() {
        if let Some((num, den)) = rationalize(z.re, MAX_DENOMINATOR) {
            candidates.insert(BigRational::new(num.into(), den.into()));
        }
    }
    if system.len() <= SMALL_REGION {
        let lcm = system.degrees.iter().fold(1i64, |acc, &d| acc.lcm(&d));
        for k in -GRID_HEIGHT..=GRID_HEIGHT {
            // Averaging eigenvalues lie in [-1, 1].
            let mu = BigRational::new(k.into(), (2 * lcm).into());
            if Signed::abs(&mu) <= <BigRational as One>::one() {
                candidates.insert(mu);
            }
        }
    }

    let mut certificates = Vec::new();
    let mut resolved = 0;
    for mu in candidates {
        let rows: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let x = columns[j][i].clone();
                        if i == j {
                            x - &mu
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let eigenvectors = kernel(rows, d);
        resolved += eigenvectors.len();
        let eigenvalue = big(1) - &mu;
        for f in combine(&basis, &eigenvectors) {
            let f = normalize(&f);
            let (support, values): (Vec<VertexId>, Vec<BigRational>) = system
                .region
                .iter()
                .zip(f)
                .filter(|(_, x)| !Zero::is_zero(x))
                .map(|(&v, x)| (v, x))
                .unzip();
            certificates.push(EigenfunctionCertificate {
                support,
                values,
                eigenvalue: eigenvalue.clone(),
            });
        }
    }
    Ok(EigenfunctionSearch {
        region: system.region,
        invariant_dimension: d,
        certificates,
        unresolved_dimension: d - resolved,
    })
}

/// Checks `Laplacian f = lambda f` exactly on the closed neighbourhood of the
/// support; outside it both sides vanish.
pub fn verify_certificate(trunc: &Truncation, cert: &EigenfunctionCertificate) -> Result<bool> {
    if cert.support.len() != cert.values.len() {
        return Ok(false);
    }
    let value: HashMap<VertexId, &BigRational> =
        cert.support.iter().copied().zip(&cert.values).collect();
    if value.len() != cert.support.len() || cert.values.iter().all(Zero::is_zero) {
        return Ok(false);
    }
    let map = trunc.map();
    let mut closed: BTreeSet<VertexId> = BTreeSet::new();
    for &v in &cert.support {
        if !trunc.is_interior(v) {
            return Err(Error::SupportTouchesBoundary(v));
        }
        closed.insert(v);
        closed.extend(map.neighbors(v).iter().copied());
    }
    let zero = <BigRational as Zero>::zero();
    for v in closed {
        let sum = map
            .neighbors(v)
            .iter()
            .filter_map(|u| value.get(u))
            .fold(<BigRational as Zero>::zero(), |acc, &x| acc + x);
        let fv = value.get(&v).copied().unwrap_or(&zero);
        // |v| (Laplacian f - lambda f)(v) = |v| (1 - lambda) f(v) - sum.
        let degree = big(map.degree(v) as i64);
        let residual = degree * (big(1) - &cert.eigenvalue) * fv - sum;
        if !Zero::is_zero(&residual) {
            return Ok(false);
        }
    }
    Ok(true)
}
