//! Truncated graded-commutative cohomology ring arithmetic.
//!
//! Two backends live here: [`TruncatedPoly`], the ring `R[u]/(u^{m+1})`
//! for `R` one of `Z`, `Q`, `Z/p` (the workhorse over complex projective
//! space), and [`RingProfile`], a general even-degree ring given by
//! structure constants. Coefficients are exact: integers are
//! arbitrary-precision and rationals are exact fractions, never floats.

use crate::algebra::AbelianGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("coefficient moduli differ: {0} vs {1}")]
    ModulusMismatch(Modulus, Modulus),
    #[error("top degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("constant term {0} is not a unit in {1}")]
    NonUnitConstantTerm(BigRational, Modulus),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(BigInt),
    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(BigRational),
    #[error("top degree must be positive")]
    DegreeZero,
    #[error("element of degree {degree} has {got} coordinates, expected {expected}")]
    CoordinateLength {
        degree: usize,
        got: usize,
        expected: usize,
    },
    #[error("degree {0} exceeds ring capacity {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("invalid ring profile: {0}")]
    InvalidProfile(String),
}

/// Coefficient ring of a truncated polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Modulus {
    Integers,
    Rationals,
    Mod(BigInt),
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Integers => write!(f, "Z"),
            Modulus::Rationals => write!(f, "Q"),
            Modulus::Mod(p) => write!(f, "Z/{p}"),
        }
    }
}

/// Element of `R[u]/(u^{m+1})`: coefficients of `u^0, ..., u^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPoly {
    modulus: Modulus,
    top_degree: usize,
    coeffs: Vec<BigRational>,
}

fn rat_int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

impl TruncatedPoly {
    /// Builds a polynomial, padding missing high coefficients with zero
    /// and reducing mod `p` where applicable.
    pub fn new(
        modulus: Modulus,
        top_degree: usize,
        coeffs: Vec<BigRational>,
    ) -> Result<Self, RingError> {
        if let Modulus::Mod(p) = &modulus {
            if *p < BigInt::from(2) {
                return Err(RingError::InvalidModulus(p.clone()));
            }
        }
        if coeffs.len() > top_degree + 1 {
            return Err(RingError::DegreeOutOfRange(coeffs.len() - 1, top_degree));
        }
        let mut coeffs = coeffs;
        coeffs.resize(top_degree + 1, BigRational::zero());
        match &modulus {
            Modulus::Rationals => {}
            Modulus::Integers => {
                if let Some(c) = coeffs.iter().find(|c| !c.is_integer()) {
                    return Err(RingError::NonIntegerCoefficient(c.clone()));
                }
            }
            Modulus::Mod(p) => {
                for c in coeffs.iter_mut() {
                    if !c.is_integer() {
                        return Err(RingError::NonIntegerCoefficient(c.clone()));
                    }
                    *c = rat_int(&c.to_integer().mod_floor(p));
                }
            }
        }
        Ok(TruncatedPoly {
            modulus,
            top_degree,
            coeffs,
        })
    }

    pub fn from_integers(modulus: Modulus, top_degree: usize, coeffs: &[i64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(modulus, top_degree, coeffs).expect("integer coefficients are always valid")
    }

    pub fn from_bigints(modulus: Modulus, top_degree: usize, coeffs: &[BigInt]) -> Self {
        let coeffs = coeffs.iter().map(rat_int).collect();
        Self::new(modulus, top_degree, coeffs).expect("integer coefficients are always valid")
    }

    pub fn zero(modulus: Modulus, top_degree: usize) -> Self {
        Self::new(modulus, top_degree, vec![]).expect("zero is valid")
    }

    pub fn one(modulus: Modulus, top_degree: usize) -> Self {
        Self::new(modulus, top_degree, vec![BigRational::one()]).expect("one is valid")
    }

    /// The linear factor `1 + z u`.
    pub fn line_factor(modulus: Modulus, top_degree: usize, z: &BigInt) -> Self {
        Self::from_bigints(modulus, top_degree, &[BigInt::one(), z.clone()])
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn coefficient(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn reduce_coeff(&self, c: BigRational) -> BigRational {
        match &self.modulus {
            Modulus::Mod(p) => rat_int(&c.to_integer().mod_floor(p)),
            _ => c,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RingError> {
        if self.modulus != other.modulus {
            return Err(RingError::ModulusMismatch(
                self.modulus.clone(),
                other.modulus.clone(),
            ));
        }
        if self.top_degree != other.top_degree {
            return Err(RingError::DegreeMismatch(self.top_degree, other.top_degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.reduce_coeff(a + b))
            .collect();
        Ok(TruncatedPoly {
            modulus: self.modulus.clone(),
            top_degree: self.top_degree,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.reduce_coeff(-c)).collect();
        TruncatedPoly {
            modulus: self.modulus.clone(),
            top_degree: self.top_degree,
            coeffs,
        }
    }

    /// Cauchy product truncated at `u^m`.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let m = self.top_degree;
        let mut coeffs = vec![BigRational::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > m {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        for c in coeffs.iter_mut() {
            *c = self.reduce_coeff(std::mem::take(c));
        }
        Ok(TruncatedPoly {
            modulus: self.modulus.clone(),
            top_degree: self.top_degree,
            coeffs,
        })
    }

    pub fn pow(&self, k: usize) -> Result<Self, RingError> {
        let mut out = Self::one(self.modulus.clone(), self.top_degree);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit. The constant term must be
    /// invertible in the coefficient ring (`+-1` over `Z`); the higher
    /// coefficients are solved degree by degree against `f * g = 1`.
    pub fn unit_inverse(&self) -> Result<Self, RingError> {
        let c0 = &self.coeffs[0];
        let b0 = match &self.modulus {
            Modulus::Rationals => {
                if c0.is_zero() {
                    return Err(RingError::NonUnitConstantTerm(
                        c0.clone(),
                        self.modulus.clone(),
                    ));
                }
                c0.recip()
            }
            Modulus::Integers => {
                if c0.abs().is_one() {
                    c0.clone()
                } else {
                    return Err(RingError::NonUnitConstantTerm(
                        c0.clone(),
                        self.modulus.clone(),
                    ));
                }
            }
            Modulus::Mod(p) => {
                let a = c0.to_integer();
                let e = a.extended_gcd(p);
                if !e.gcd.is_one() {
                    return Err(RingError::NonUnitConstantTerm(
                        c0.clone(),
                        self.modulus.clone(),
                    ));
                }
                rat_int(&e.x.mod_floor(p))
            }
        };
        let m = self.top_degree;
        let mut inv = vec![BigRational::zero(); m + 1];
        inv[0] = self.reduce_coeff(b0.clone());
        for n in 1..=m {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &inv[n - k];
            }
            inv[n] = self.reduce_coeff(-&b0 * acc);
        }
        Ok(TruncatedPoly {
            modulus: self.modulus.clone(),
            top_degree: m,
            coeffs: inv,
        })
    }

    /// Coefficientwise reduction `Z -> Z/p`.
    pub fn reduce_mod_p(&self, p: &BigInt) -> Result<Self, RingError> {
        if *p < BigInt::from(2) {
            return Err(RingError::InvalidModulus(p.clone()));
        }
        if self.modulus != Modulus::Integers {
            return Err(RingError::ModulusMismatch(
                self.modulus.clone(),
                Modulus::Mod(p.clone()),
            ));
        }
        TruncatedPoly::new(
            Modulus::Mod(p.clone()),
            self.top_degree,
            self.coeffs.clone(),
        )
    }

    /// Reinterprets an integer polynomial over the rationals.
    pub fn to_rational(&self) -> Self {
        TruncatedPoly {
            modulus: Modulus::Rationals,
            top_degree: self.top_degree,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Converts back to integer coefficients; fails if any denominator
    /// survives.
    pub fn to_integral(&self) -> Result<Self, RingError> {
        TruncatedPoly::new(Modulus::Integers, self.top_degree, self.coeffs.clone())
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = match k {
                0 => c.to_string(),
                1 if c.is_one() => "u".to_string(),
                1 => format!("{c}*u"),
                _ if c.is_one() => format!("u^{k}"),
                _ => format!("{c}*u^{k}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Homogeneous element of degree `2i` in a [`RingProfile`], stored as
/// coordinates in the chosen generators of `H^{2i}` (free generators
/// first, then one coordinate per invariant factor).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedElement {
    pub degree: usize,
    pub coords: Vec<BigInt>,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Even-degree cohomology ring of a `2m`-dimensional space, with chosen
/// generators for each `H^{2i}(X; Z)` and bilinear structure constants.
/// Products landing above degree `2m` vanish. Product tables are stored
/// for `a <= b` only; the missing half follows by commutativity (all
/// degrees here are even).
#[derive(Clone, Debug)]
pub struct RingProfile {
    m: usize,
    groups: Vec<AbelianGroup>,
    /// (a, b) with 1 <= a <= b, a+b <= m; table[s][t] = coordinates of
    /// (gen_s of H^{2a}) * (gen_t of H^{2b}) in H^{2(a+b)}. Absent keys
    /// mean the zero product.
    products: BTreeMap<(usize, usize), Vec<Vec<Vec<BigInt>>>>,
    /// Human-readable generator names per degree, for reports.
    basis_labels: Vec<Vec<String>>,
}

impl RingProfile {
    pub fn new(
        m: usize,
        groups: Vec<AbelianGroup>,
        products: BTreeMap<(usize, usize), Vec<Vec<Vec<BigInt>>>>,
        basis_labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self, RingError> {
        if m == 0 {
            return Err(RingError::DegreeZero);
        }
        if groups.len() != m + 1 {
            return Err(RingError::InvalidProfile(format!(
                "expected {} degree groups, got {}",
                m + 1,
                groups.len()
            )));
        }
        if groups[0] != AbelianGroup::integers(1) {
            return Err(RingError::InvalidProfile(
                "H^0 must be Z with the unit as generator".into(),
            ));
        }
        for (&(a, b), table) in &products {
            if a == 0 || a > b || a + b > m {
                return Err(RingError::InvalidProfile(format!(
                    "product table ({a},{b}) out of range"
                )));
            }
            let (na, nb, nc) = (
                groups[a].generator_count(),
                groups[b].generator_count(),
                groups[a + b].generator_count(),
            );
            if table.len() != na || table.iter().any(|row| row.len() != nb) {
                return Err(RingError::InvalidProfile(format!(
                    "product table ({a},{b}) has wrong shape"
                )));
            }
            for row in table {
                for entry in row {
                    if entry.len() != nc {
                        return Err(RingError::InvalidProfile(format!(
                            "product table ({a},{b}) has an entry of wrong length"
                        )));
                    }
                }
            }
        }
        let basis_labels = match basis_labels {
            Some(labels) => {
                if labels.len() != m + 1
                    || labels
                        .iter()
                        .zip(&groups)
                        .any(|(l, g)| l.len() != g.generator_count())
                {
                    return Err(RingError::InvalidProfile(
                        "basis label shape mismatch".into(),
                    ));
                }
                labels
            }
            None => groups
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    (0..g.generator_count())
                        .map(|s| format!("x{i}_{s}"))
                        .collect()
                })
                .collect(),
        };
        Ok(RingProfile {
            m,
            groups,
            products,
            basis_labels,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.m
    }

    pub fn group(&self, i: usize) -> &AbelianGroup {
        &self.groups[i]
    }

    pub fn basis_labels(&self, i: usize) -> &[String] {
        &self.basis_labels[i]
    }

    /// Reduces torsion coordinates into `[0, d_i)`.
    fn normalize(&self, e: &mut GradedElement) {
        let g = &self.groups[e.degree];
        let free = g.free_rank();
        for (k, d) in g.invariant_factors().iter().enumerate() {
            e.coords[free + k] = e.coords[free + k].mod_floor(d);
        }
    }

    pub fn element(&self, degree: usize, coords: Vec<BigInt>) -> Result<GradedElement, RingError> {
        if degree > self.m {
            return Err(RingError::DegreeOutOfRange(degree, self.m));
        }
        let expected = self.groups[degree].generator_count();
        if coords.len() != expected {
            return Err(RingError::CoordinateLength {
                degree,
                got: coords.len(),
                expected,
            });
        }
        let mut e = GradedElement { degree, coords };
        self.normalize(&mut e);
        Ok(e)
    }

    pub fn zero(&self, degree: usize) -> GradedElement {
        GradedElement {
            degree,
            coords: vec![BigInt::zero(); self.groups[degree].generator_count()],
        }
    }

    pub fn unit(&self) -> GradedElement {
        GradedElement {
            degree: 0,
            coords: vec![BigInt::one()],
        }
    }

    pub fn add(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        assert_eq!(a.degree, b.degree, "degree mismatch in graded addition");
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        let mut e = GradedElement {
            degree: a.degree,
            coords,
        };
        self.normalize(&mut e);
        e
    }

    pub fn scale(&self, k: &BigInt, a: &GradedElement) -> GradedElement {
        let coords = a.coords.iter().map(|x| k * x).collect();
        let mut e = GradedElement {
            degree: a.degree,
            coords,
        };
        self.normalize(&mut e);
        e
    }

    pub fn neg(&self, a: &GradedElement) -> GradedElement {
        self.scale(&BigInt::from(-1), a)
    }

    /// Product of homogeneous elements; `None` when the total degree
    /// exceeds the ring capacity (truncation).
    pub fn mul(&self, a: &GradedElement, b: &GradedElement) -> Option<GradedElement> {
        let deg = a.degree + b.degree;
        if deg > self.m {
            return None;
        }
        if a.degree == 0 {
            return Some(self.scale(&a.coords[0], b));
        }
        if b.degree == 0 {
            return Some(self.scale(&b.coords[0], a));
        }
        let (x, y, key) = if a.degree <= b.degree {
            (a, b, (a.degree, b.degree))
        } else {
            (b, a, (b.degree, a.degree))
        };
        let mut out = self.zero(deg);
        if let Some(table) = self.products.get(&key) {
            for (s, xs) in x.coords.iter().enumerate() {
                if xs.is_zero() {
                    continue;
                }
                for (t, yt) in y.coords.iter().enumerate() {
                    if yt.is_zero() {
                        continue;
                    }
                    let k = xs * yt;
                    for (w, c) in table[s][t].iter().enumerate() {
                        out.coords[w] += &k * c;
                    }
                }
            }
        }
        self.normalize(&mut out);
        Some(out)
    }
}

/// The cohomology ring of complex projective m-space: `Z` in every even
/// degree up to `2m`, with `u^a * u^b = u^{a+b}` truncated.
pub fn cpm_ring(m: usize) -> Result<RingProfile, RingError> {
    if m == 0 {
        return Err(RingError::DegreeZero);
    }
    let groups = vec![AbelianGroup::integers(1); m + 1];
    let mut products = BTreeMap::new();
    for a in 1..=m {
        for b in a..=m {
            if a + b <= m {
                products.insert((a, b), vec![vec![vec![BigInt::one()]]]);
            }
        }
    }
    let labels = (0..=m)
        .map(|i| match i {
            0 => vec!["1".to_string()],
            1 => vec!["u".to_string()],
            _ => vec![format!("u^{i}")],
        })
        .collect();
    RingProfile::new(m, groups, products, Some(labels))
}

/// The cohomology ring of a product of two complex projective spaces,
/// `Z[u,v]/(u^{a+1}, v^{b+1})`. Degree-`i` basis: `u^s v^t` with
/// `s + t = i`, ordered by increasing `s`.
pub fn product_cpm_ring(a: usize, b: usize) -> Result<RingProfile, RingError> {
    let m = a + b;
    if m == 0 {
        return Err(RingError::DegreeZero);
    }
    let basis = |i: usize| -> Vec<(usize, usize)> {
        (0..=i)
            .filter(|&s| s <= a && i - s <= b)
            .map(|s| (s, i - s))
            .collect()
    };
    let groups: Vec<AbelianGroup> = (0..=m)
        .map(|i| AbelianGroup::integers(basis(i).len()))
        .collect();
    let mut products = BTreeMap::new();
    for i in 1..=m {
        for j in i..=m {
            if i + j > m {
                continue;
            }
            let (bi, bj, bij) = (basis(i), basis(j), basis(i + j));
            let table: Vec<Vec<Vec<BigInt>>> = bi
                .iter()
                .map(|&(s1, t1)| {
                    bj.iter()
                        .map(|&(s2, t2)| {
                            let (s, t) = (s1 + s2, t1 + t2);
                            bij.iter()
                                .map(|&(ws, wt)| {
                                    if s <= a && t <= b && (ws, wt) == (s, t) {
                                        BigInt::one()
                                    } else {
                                        BigInt::zero()
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            products.insert((i, j), table);
        }
    }
    let labels = (0..=m)
        .map(|i| {
            basis(i)
                .iter()
                .map(|&(s, t)| {
                    let us = match s {
                        0 => String::new(),
                        1 => "u".to_string(),
                        _ => format!("u^{s}"),
                    };
                    let vt = match t {
                        0 => String::new(),
                        1 => "v".to_string(),
                        _ => format!("v^{t}"),
                    };
                    if us.is_empty() && vt.is_empty() {
                        "1".to_string()
                    } else {
                        format!("{us}{vt}")
                    }
                })
                .collect()
        })
        .collect();
    RingProfile::new(m, groups, products, Some(labels))
}

/// Inhomogeneous element of a [`RingProfile`], one component per degree
/// `0..=m`. Used for total Chern classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TotalClass {
    pub components: Vec<GradedElement>,
}

impl TotalClass {
    pub fn one(profile: &RingProfile) -> Self {
        let mut components = vec![profile.unit()];
        for i in 1..=profile.top_degree() {
            components.push(profile.zero(i));
        }
        TotalClass { components }
    }

    pub fn component(&self, n: usize) -> &GradedElement {
        &self.components[n]
    }

    pub fn mul(&self, profile: &RingProfile, other: &TotalClass) -> TotalClass {
        let m = profile.top_degree();
        let mut out = Vec::with_capacity(m + 1);
        for n in 0..=m {
            let mut acc = profile.zero(n);
            for i in 0..=n {
                if let Some(p) = profile.mul(&self.components[i], &other.components[n - i]) {
                    acc = profile.add(&acc, &p);
                }
            }
            out.push(acc);
        }
        TotalClass { components: out }
    }

    /// Inverse of a class whose degree-0 component is `+-1`, by the
    /// geometric series of the nilpotent positive-degree part.
    pub fn unit_inverse(&self, profile: &RingProfile) -> Result<TotalClass, RingError> {
        let c0 = &self.components[0].coords[0];
        if !c0.abs().is_one() {
            return Err(RingError::NonUnitConstantTerm(
                BigRational::from_integer(c0.clone()),
                Modulus::Integers,
            ));
        }
        // (c0 + x)^-1 = c0 * (1 + c0 x)^-1 = c0 * sum (-c0 x)^j
        let m = profile.top_degree();
        let mut neg_scaled = self.clone();
        neg_scaled.components[0] = profile.zero(0);
        for c in neg_scaled.components.iter_mut() {
            *c = profile.scale(&-c0.clone(), c);
        }
        let mut out = TotalClass::one(profile);
        let mut power = TotalClass::one(profile);
        for _ in 1..=m {
            power = power.mul(profile, &neg_scaled);
            for n in 0..=m {
                out.components[n] = profile.add(&out.components[n], &power.components[n]);
            }
        }
        for c in out.components.iter_mut() {
            *c = profile.scale(c0, c);
        }
        Ok(out)
    }

    pub fn is_one(&self) -> bool {
        self.components[0].coords[0].is_one() && self.components[1..].iter().all(|c| c.is_zero())
    }
}
