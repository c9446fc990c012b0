//! Total and virtual Chern class calculus.
//!
//! The virtual Chern classes of a stable difference `xi - (l_1 + ... +
//! l_r)` are computed two independent ways: [`virtual_chern`] expands the
//! complete homogeneous symmetric polynomials of the negated line classes
//! against the classes of `xi`, while [`virtual_chern_oracle`] multiplies
//! the total class of `xi` by the inverses of the line total classes.
//! Exact agreement of the two routes is part of the test suite.

use crate::ring::{GradedElement, RingError, RingProfile, TotalClass};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("class component in degree {0} does not live in the ring profile: {1}")]
    BadComponent(usize, RingError),
    #[error("degree {0} exceeds ring capacity {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("line bundle class must have degree 1, got {0}")]
    NotALineClass(usize),
    #[error("total Chern class must start with c_0 = 1")]
    NotMonic,
}

/// Total Chern class of a rank-`rank` complex bundle: components
/// `c_0 = 1, c_1, ..., c_min(rank, m)` in the degree groups of a ring
/// profile. Components above the ring capacity are truncated away.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChernVector {
    rank: usize,
    components: Vec<GradedElement>,
}

impl ChernVector {
    /// Builds a Chern vector from the positive-degree components
    /// `c_1, ..., c_k` (`k = min(rank, profile.top_degree())`).
    pub fn new(
        profile: &RingProfile,
        rank: usize,
        positive_components: Vec<Vec<BigInt>>,
    ) -> Result<Self, ChernError> {
        let top = rank.min(profile.top_degree());
        if positive_components.len() != top {
            return Err(ChernError::DegreeOutOfRange(positive_components.len(), top));
        }
        let mut components = vec![profile.unit()];
        for (i, coords) in positive_components.into_iter().enumerate() {
            let e = profile
                .element(i + 1, coords)
                .map_err(|err| ChernError::BadComponent(i + 1, err))?;
            components.push(e);
        }
        Ok(ChernVector { rank, components })
    }

    /// The trivial bundle of the given rank: total class 1.
    pub fn trivial(profile: &RingProfile, rank: usize) -> Self {
        let top = rank.min(profile.top_degree());
        let mut components = vec![profile.unit()];
        for i in 1..=top {
            components.push(profile.zero(i));
        }
        ChernVector { rank, components }
    }

    /// Over complex projective space: components are single integers.
    pub fn from_cpm_coefficients(
        profile: &RingProfile,
        rank: usize,
        coeffs: &[BigInt],
    ) -> Result<Self, ChernError> {
        Self::new(
            profile,
            rank,
            coeffs.iter().map(|c| vec![c.clone()]).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `c_i`, taking classes beyond the stored range as zero.
    pub fn component(&self, profile: &RingProfile, i: usize) -> GradedElement {
        match self.components.get(i) {
            Some(c) => c.clone(),
            None => profile.zero(i.min(profile.top_degree())),
        }
    }

    pub fn total_class(&self, profile: &RingProfile) -> TotalClass {
        let m = profile.top_degree();
        let mut components = Vec::with_capacity(m + 1);
        for i in 0..=m {
            components.push(self.component(profile, i));
        }
        TotalClass { components }
    }
}

/// A complex line bundle, recorded by its first Chern class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineBundle {
    c1: GradedElement,
}

impl LineBundle {
    pub fn new(c1: GradedElement) -> Result<Self, ChernError> {
        if c1.degree != 1 {
            return Err(ChernError::NotALineClass(c1.degree));
        }
        Ok(LineBundle { c1 })
    }

    pub fn trivial(profile: &RingProfile) -> Self {
        LineBundle {
            c1: profile.zero(1),
        }
    }

    /// Over complex projective space, the line with `c_1 = z u`.
    pub fn from_cpm_degree(profile: &RingProfile, z: &BigInt) -> Result<Self, ChernError> {
        let c1 = profile
            .element(1, vec![z.clone()])
            .map_err(|e| ChernError::BadComponent(1, e))?;
        Self::new(c1)
    }

    pub fn c1(&self) -> &GradedElement {
        &self.c1
    }

    pub fn total_class(&self, profile: &RingProfile) -> TotalClass {
        let mut t = TotalClass::one(profile);
        if profile.top_degree() >= 1 {
            t.components[1] = self.c1.clone();
        }
        t
    }
}

/// Whitney sum: `c(xi + eta) = c(xi) * c(eta)`, ranks add, classes above
/// the ring capacity truncate away.
pub fn whitney_sum(profile: &RingProfile, xi: &ChernVector, eta: &ChernVector) -> ChernVector {
    let rank = xi.rank + eta.rank;
    let product = xi
        .total_class(profile)
        .mul(profile, &eta.total_class(profile));
    let top = rank.min(profile.top_degree());
    ChernVector {
        rank,
        components: product.components[..=top].to_vec(),
    }
}

/// Elementary symmetric classes `e_0 = 1, e_1, ..., e_r` of the negated
/// line classes `-c_1(l_i)`, as ring elements.
fn elementary_symmetric_of_negated_lines(
    profile: &RingProfile,
    lines: &[LineBundle],
) -> Vec<GradedElement> {
    let m = profile.top_degree();
    let mut e: Vec<GradedElement> = vec![profile.unit()];
    for line in lines {
        let x = profile.neg(line.c1());
        let prev = e.clone();
        if e.len() <= lines.len() && e.len() <= m {
            e.push(profile.zero(e.len()));
        }
        for k in (1..e.len()).rev() {
            if let Some(p) = profile.mul(&prev[k - 1], &x) {
                e[k] = profile.add(&e[k], &p);
            }
        }
    }
    e
}

/// The `n`-th virtual Chern class `c_n(xi - l_1 - ... - l_r)`, computed
/// as `sum_j c_{n-j}(xi) h_j(-c_1 l_1, ..., -c_1 l_r)` with `h_j` the
/// complete homogeneous symmetric polynomial, evaluated through the
/// recurrence `h_j = sum_k (-1)^{k+1} e_k h_{j-k}`.
pub fn virtual_chern(
    profile: &RingProfile,
    xi: &ChernVector,
    lines: &[LineBundle],
    n: usize,
) -> Result<GradedElement, ChernError> {
    let m = profile.top_degree();
    if n > m {
        return Err(ChernError::DegreeOutOfRange(n, m));
    }
    let e = elementary_symmetric_of_negated_lines(profile, lines);
    // h_j for j = 0..=n
    let mut h: Vec<GradedElement> = vec![profile.unit()];
    for j in 1..=n {
        let mut acc = profile.zero(j);
        for k in 1..=j.min(e.len() - 1) {
            if let Some(p) = profile.mul(&e[k], &h[j - k]) {
                let signed = if k % 2 == 1 { p } else { profile.neg(&p) };
                acc = profile.add(&acc, &signed);
            }
        }
        h.push(acc);
    }
    let mut out = profile.zero(n);
    for (j, hj) in h.iter().enumerate() {
        let c = xi.component(profile, n - j);
        if let Some(p) = profile.mul(&c, hj) {
            out = profile.add(&out, &p);
        }
    }
    Ok(out)
}

/// Independent route to the same class: `c(xi) * c(l_1)^{-1} * ... *
/// c(l_r)^{-1}`, taking the degree-`n` component.
pub fn virtual_chern_oracle(
    profile: &RingProfile,
    xi: &ChernVector,
    lines: &[LineBundle],
    n: usize,
) -> Result<GradedElement, ChernError> {
    let m = profile.top_degree();
    if n > m {
        return Err(ChernError::DegreeOutOfRange(n, m));
    }
    Ok(virtual_total_class_oracle(profile, xi, lines).components[n].clone())
}

fn virtual_total_class_oracle(
    profile: &RingProfile,
    xi: &ChernVector,
    lines: &[LineBundle],
) -> TotalClass {
    let mut acc = xi.total_class(profile);
    for line in lines {
        let inv = line
            .total_class(profile)
            .unit_inverse(profile)
            .expect("line total classes start with 1");
        acc = acc.mul(profile, &inv);
    }
    acc
}

/// The whole virtual total class, degree by degree, through the
/// symmetric-polynomial route.
pub fn virtual_total_class(
    profile: &RingProfile,
    xi: &ChernVector,
    lines: &[LineBundle],
) -> Result<TotalClass, ChernError> {
    let m = profile.top_degree();
    let mut components = Vec::with_capacity(m + 1);
    for n in 0..=m {
        components.push(virtual_chern(profile, xi, lines, n)?);
    }
    Ok(TotalClass { components })
}

/// Outcome of the top-class vanishing test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TopVanishing {
    pub vanishes: bool,
    /// Smallest failing `i` (the class `c_{m+1-i}` is nonzero), with the
    /// witness value.
    pub witness: Option<(usize, GradedElement)>,
}

/// Checks `c_{m+1-i}(xi - l_1 - ... - l_r) = 0` for `i = 1..=r`, where
/// `m` is the ring capacity.
pub fn top_vanishing(
    profile: &RingProfile,
    xi: &ChernVector,
    lines: &[LineBundle],
) -> Result<TopVanishing, ChernError> {
    let m = profile.top_degree();
    let r = lines.len();
    for i in 1..=r {
        let n = m + 1 - i;
        let c = virtual_chern(profile, xi, lines, n)?;
        if !c.is_zero() {
            return Ok(TopVanishing {
                vanishes: false,
                witness: Some((i, c)),
            });
        }
    }
    Ok(TopVanishing {
        vanishes: true,
        witness: None,
    })
}

/// Convenience over complex projective space: a graded element as the
/// integer coefficient of `u^n`.
pub fn cpm_coefficient(e: &GradedElement) -> &BigInt {
    &e.coords[0]
}
