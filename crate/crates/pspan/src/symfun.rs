//! Exact symmetric-function engine.
//!
//! A degree-`m` total Chern class over complex projective space factors
//! over `C` into linear factors `(1 + z_i u)`; the `z_i` are never
//! computed numerically here. Power sums, binomial sums, and the
//! Schwarzenberger integrality test are all answered through their
//! elementary symmetric values with exact rational arithmetic.

use crate::ring::{Modulus, RingError, TruncatedPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymfunError {
    #[error("total class must start with c_0 = 1")]
    NonMonic,
    #[error("class must have integer coefficients")]
    NotIntegral,
    #[error("at most three line bundles are supported, got {0}")]
    TooManyLines(usize),
    #[error("splitting test requires m > 2r - 1 (m = {m}, r = {r})")]
    RangeGate { m: usize, r: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Elementary symmetric values `e_1, ..., e_N` of an implicit root
/// multiset `z_1, ..., z_N`; `e_k` is the coefficient of `u^k` in
/// `prod (1 + z_i u)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElemSymVector {
    values: Vec<BigRational>,
}

impl ElemSymVector {
    pub fn new(values: Vec<BigRational>) -> Self {
        ElemSymVector { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        ElemSymVector {
            values: values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    /// The elementary symmetric values of explicit roots.
    pub fn from_roots(roots: &[BigInt]) -> Self {
        let mut e = vec![BigRational::zero(); roots.len() + 1];
        e[0] = BigRational::one();
        for (i, z) in roots.iter().enumerate() {
            let z = BigRational::from_integer(z.clone());
            for k in (1..=i + 1).rev() {
                let add = &e[k - 1] * &z;
                e[k] += add;
            }
        }
        ElemSymVector {
            values: e[1..].to_vec(),
        }
    }

    /// Coefficients `c_1, ..., c_m` of a monic truncated class.
    pub fn from_class(c: &TruncatedPoly) -> Result<Self, SymfunError> {
        if !c.coefficient(0).is_one() {
            return Err(SymfunError::NonMonic);
        }
        Ok(ElemSymVector {
            values: c.coefficients()[1..].to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `e_k`, with `e_k = 0` beyond the stored range.
    pub fn e(&self, k: usize) -> BigRational {
        if k == 0 {
            BigRational::one()
        } else {
            self.values
                .get(k - 1)
                .cloned()
                .unwrap_or_else(BigRational::zero)
        }
    }
}

/// Power sums `p_1, ..., p_K` of the implicit roots, by the Newton
/// identity `p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k`.
pub fn power_sums(e: &ElemSymVector, upto: usize) -> Vec<BigRational> {
    let mut p: Vec<BigRational> = Vec::with_capacity(upto);
    for k in 1..=upto {
        let mut acc = BigRational::zero();
        for i in 1..k {
            let term = e.e(i) * &p[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let lead = e.e(k) * BigRational::from_integer(k.into());
        if k % 2 == 1 {
            acc += lead;
        } else {
            acc -= lead;
        }
        p.push(acc);
    }
    p
}

/// Signed Stirling numbers of the first kind, cached triangle:
/// `x(x-1)...(x-k+1) = sum_j s(k,j) x^j`.
fn stirling_first(k: usize, j: usize) -> BigInt {
    static TRIANGLE: Mutex<Vec<Vec<BigInt>>> = Mutex::new(Vec::new());
    let mut tri = TRIANGLE.lock().expect("stirling cache poisoned");
    if tri.is_empty() {
        tri.push(vec![BigInt::one()]);
    }
    while tri.len() <= k {
        let n = tri.len();
        let prev = tri[n - 1].clone();
        let mut row = vec![BigInt::zero(); n + 1];
        // s(n, j) = s(n-1, j-1) - (n-1) s(n-1, j)
        for j in 0..=n {
            let mut v = BigInt::zero();
            if j >= 1 {
                v += &prev[j - 1];
            }
            if j < prev.len() {
                v -= BigInt::from(n - 1) * &prev[j];
            }
            row[j] = v;
        }
        tri.push(row);
    }
    tri[k].get(j).cloned().unwrap_or_else(BigInt::zero)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `sum_i C(z_i, k)` over the implicit roots, via
/// `(1/k!) sum_j s(k,j) p_j`.
pub fn binom_sum(e: &ElemSymVector, k: usize) -> BigRational {
    assert!(k >= 1, "binomial order must be positive");
    let p = power_sums(e, k);
    let mut acc = BigRational::zero();
    for (j, pj) in p.iter().enumerate() {
        acc += BigRational::from_integer(stirling_first(k, j + 1)) * pj;
    }
    acc / BigRational::from_integer(factorial(k))
}

/// Report of a Schwarzenberger integrality run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchwarzReport {
    pub passes: bool,
    /// First `k` in `2..=m` whose binomial sum is non-integral, with the
    /// exact offending value.
    pub first_failure: Option<(usize, BigRational)>,
}

/// Integrality test over complex projective m-space: the monic integer
/// class `c` is realizable as a total Chern class exactly when
/// `sum_i C(z_i, k)` is an integer for every `k = 2..=m`.
pub fn schwarzenberger_check(c: &TruncatedPoly, m: usize) -> Result<SchwarzReport, SymfunError> {
    if c.modulus() != &Modulus::Integers {
        return Err(SymfunError::NotIntegral);
    }
    if !c.coefficient(0).is_one() {
        return Err(SymfunError::NonMonic);
    }
    let e = ElemSymVector::new(c.coefficients()[1..=m.min(c.top_degree())].to_vec());
    Ok(schwarzenberger_on_roots(&e, m))
}

fn schwarzenberger_on_roots(e: &ElemSymVector, m: usize) -> SchwarzReport {
    for k in 2..=m {
        let s = binom_sum(e, k);
        if !s.is_integer() {
            return SchwarzReport {
                passes: false,
                first_failure: Some((k, s)),
            };
        }
    }
    SchwarzReport {
        passes: true,
        first_failure: None,
    }
}

/// Outcome of the splitting admissibility test over complex projective
/// m-space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SplitAdmissibility {
    /// `c = prod (1 + z_i u) * q(u)` with `deg q <= m - r` and the
    /// residual roots pass the integrality test; the quotient
    /// coefficients certify the factorization.
    Admissible { residual: ElemSymVector },
    /// Division leaves a nonzero coefficient in a degree that any honest
    /// rank-`(m-r)` complement would have killed.
    DegreeBoundFailed { failing_degree: usize },
    /// The residual roots fail integrality: no bundle over projective
    /// space carries this class.
    NonIntegral {
        residual: ElemSymVector,
        first_failing_k: usize,
        value: BigRational,
    },
}

impl SplitAdmissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, SplitAdmissibility::Admissible { .. })
    }
}

/// Decides whether the monic integer class `c` is the total Chern class
/// of a rank-`m` bundle over complex projective m-space containing the
/// given integer line bundles as a subbundle. Requires `m > 2r - 1`.
///
/// The class is divided exactly by `prod (1 + z_i u)` in
/// `Q[u]/(u^{m+1})`; the quotient must vanish in degrees `m-r+1..=m`,
/// and its coefficient vector, the elementary symmetric values of the
/// residual roots, must pass the integrality test for `k = 2..=m`.
pub fn cpm_split_admissible(
    c: &TruncatedPoly,
    lines: &[BigInt],
) -> Result<SplitAdmissibility, SymfunError> {
    let m = c.top_degree();
    let r = lines.len();
    if r > 3 {
        return Err(SymfunError::TooManyLines(r));
    }
    if r > 0 && m < 2 * r {
        return Err(SymfunError::RangeGate { m, r });
    }
    if c.modulus() != &Modulus::Integers {
        return Err(SymfunError::NotIntegral);
    }
    if !c.coefficient(0).is_one() {
        return Err(SymfunError::NonMonic);
    }

    let mut quotient = c.to_rational();
    for z in lines {
        let factor = TruncatedPoly::line_factor(Modulus::Rationals, m, z);
        quotient = quotient.mul(&factor.unit_inverse()?)?;
    }
    for degree in (m - r + 1..=m).rev() {
        if !quotient.coefficient(degree).is_zero() {
            // report the lowest failing degree
            let lowest = (m - r + 1..=m)
                .find(|&d| !quotient.coefficient(d).is_zero())
                .expect("a nonzero degree exists");
            return Ok(SplitAdmissibility::DegreeBoundFailed {
                failing_degree: lowest,
            });
        }
    }
    let residual = ElemSymVector::new(quotient.coefficients()[1..=m - r].to_vec());
    match schwarzenberger_on_roots(&residual, m) {
        SchwarzReport { passes: true, .. } => Ok(SplitAdmissibility::Admissible { residual }),
        SchwarzReport {
            first_failure: Some((k, value)),
            ..
        } => Ok(SplitAdmissibility::NonIntegral {
            residual,
            first_failing_k: k,
            value,
        }),
        _ => unreachable!("failing report carries a witness"),
    }
}

/// Formats a rational for reports: integers plainly, fractions as `a/b`.
pub fn rational_to_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
