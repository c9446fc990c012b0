//! Projective-space utilities: exact division certificates and bounded
//! enumeration of splitting-admissible Chern classes.

use crate::ring::{Modulus, RingError, TruncatedPoly};
use crate::symfun::{cpm_split_admissible, ElemSymVector, SplitAdmissibility, SymfunError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpmError {
    #[error("class must be monic with integer coefficients")]
    BadClass,
    #[error("enumeration requires m > 2r - 1 (m = {m}, r = {r})")]
    RangeGate { m: usize, r: usize },
    #[error("at most three line bundles, got {0}")]
    TooManyLines(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Certificate of dividing a total class by line factors: the quotient
/// `c * prod (1 + z_i u)^{-1}` truncated at degree `m`, and whether its
/// coefficients vanish in degrees `m-r+1..=m` as an honest complement
/// requires. Multiplying the quotient back by the factors recovers `c`
/// exactly whenever the degree bound holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisionCertificate {
    pub quotient: TruncatedPoly,
    /// Elementary symmetric values of the residual roots, present
    /// exactly when the degree bound holds.
    pub residual: Option<ElemSymVector>,
    pub degree_bound_ok: bool,
    pub failing_degree: Option<usize>,
}

/// Divides `c` by `prod (1 + z_i u)` in the truncated ring. The
/// division is exact arithmetic throughout; no roots are ever
/// approximated.
pub fn divide_out_lines(
    c: &TruncatedPoly,
    lines: &[BigInt],
) -> Result<DivisionCertificate, CpmError> {
    if c.modulus() != &Modulus::Integers || !c.coefficient(0).is_one() {
        return Err(CpmError::BadClass);
    }
    let m = c.top_degree();
    let r = lines.len();
    let mut quotient = c.clone();
    for z in lines {
        let inv = TruncatedPoly::line_factor(Modulus::Integers, m, z).unit_inverse()?;
        quotient = quotient.mul(&inv)?;
    }
    let failing_degree =
        (m.saturating_sub(r) + 1..=m).find(|&d| !quotient.coefficient(d).is_zero());
    let degree_bound_ok = failing_degree.is_none();
    let residual = degree_bound_ok
        .then(|| ElemSymVector::new(quotient.coefficients()[1..=m.saturating_sub(r)].to_vec()));
    Ok(DivisionCertificate {
        quotient,
        residual,
        degree_bound_ok,
        failing_degree,
    })
}

/// One admissible tuple found by the enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitTuple {
    /// Chern coefficients `c_1, ..., c_m`.
    pub chern: Vec<BigInt>,
    /// Line degrees `z_1, ..., z_r`.
    pub lines: Vec<BigInt>,
    /// Elementary symmetric values of the residual roots.
    pub residual: Vec<BigRational>,
}

/// All tuples over a symmetric integer box, lexicographic.
fn integer_tuples(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for prefix in &out {
            for v in -bound..=bound {
                let mut t = prefix.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Enumerates every integer Chern vector with `|c_i| <= coeff_bound`
/// and integer line tuple with `|z_i| <= line_bound` passing the
/// splitting admissibility test. Requires `m > 2r - 1`. The coefficient
/// box is scanned in parallel; the output is sorted lexicographically
/// over `(c, lines)`, so it is identical across runs and thread counts.
pub fn enumerate_split_chern(
    m: usize,
    r: usize,
    coeff_bound: u32,
    line_bound: u32,
) -> Result<Vec<SplitTuple>, CpmError> {
    if r > 3 {
        return Err(CpmError::TooManyLines(r));
    }
    if r > 0 && m < 2 * r {
        return Err(CpmError::RangeGate { m, r });
    }
    let chern_box = integer_tuples(m, coeff_bound as i64);
    let line_box = integer_tuples(r, line_bound as i64);

    let mut results: Vec<SplitTuple> = chern_box
        .par_iter()
        .flat_map_iter(|c| {
            let poly_coeffs: Vec<i64> = std::iter::once(1).chain(c.iter().copied()).collect();
            let poly = TruncatedPoly::from_integers(Modulus::Integers, m, &poly_coeffs);
            let mut found = Vec::new();
            for zs in &line_box {
                let lines: Vec<BigInt> = zs.iter().map(|&z| BigInt::from(z)).collect();
                if let Ok(SplitAdmissibility::Admissible { residual }) =
                    cpm_split_admissible(&poly, &lines)
                {
                    found.push(SplitTuple {
                        chern: c.iter().map(|&v| BigInt::from(v)).collect(),
                        lines,
                        residual: residual.values().to_vec(),
                    });
                }
            }
            found.into_iter()
        })
        .collect();

    results.sort_by(|a, b| (&a.chern, &a.lines).cmp(&(&b.chern, &b.lines)));
    Ok(results)
}

impl From<SymfunError> for CpmError {
    fn from(e: SymfunError) -> Self {
        match e {
            SymfunError::RangeGate { m, r } => CpmError::RangeGate { m, r },
            SymfunError::TooManyLines(r) => CpmError::TooManyLines(r),
            SymfunError::Ring(err) => CpmError::Ring(err),
            SymfunError::NonMonic | SymfunError::NotIntegral => CpmError::BadClass,
        }
    }
}
