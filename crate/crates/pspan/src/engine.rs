//! Space profiles, hypothesis verification, and the splitting decision
//! router.
//!
//! A [`SpaceProfile`] carries the cohomological data of the base space
//! that the splitting theorems interrogate: integral, mod-2 and mod-4
//! groups in the relevant degrees, the reduction, Steenrod square and
//! Bockstein maps between them as integer matrices, and the manifold
//! flags a user may assert. [`decide`] routes a [`SplitProblem`] to the
//! theorem matching its line count and rank parity, verifies the
//! hypotheses, and answers with a certificate or an obstruction witness.
//!
//! Conditions written as "the group is the image of an operation" are
//! checked as surjectivity of the stated composite onto the target
//! group; the image is a subgroup, so the asserted isomorphism is the
//! inclusion being onto.

use crate::algebra::{cokernel_group, AbelianGroup, IntMatrix};
use crate::chern::{virtual_chern, ChernVector, LineBundle};
use crate::ring::{cpm_ring, product_cpm_ring, GradedElement, RingProfile};
use crate::steenrod::sq2_cpm;
use crate::tables::pi_2m2;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid space profile: {0}")]
    InvalidProfile(String),
    #[error("problem data does not live in the profile ring: {0}")]
    ProfileMismatch(String),
    #[error("between one and three line bundles are supported, got {0}")]
    LineCount(usize),
    #[error("primary obstruction needs r <= m (r = {r}, m = {m})")]
    RankGate { r: usize, m: usize },
}

/// Coefficient systems a profile can carry beyond the integral ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CoeffSys {
    Integral,
    Mod2,
    Mod4,
}

impl fmt::Display for CoeffSys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSys::Integral => write!(f, "Z"),
            CoeffSys::Mod2 => write!(f, "Z/2"),
            CoeffSys::Mod4 => write!(f, "Z/4"),
        }
    }
}

/// Manifold-level assertions the user may make about the base space.
/// Asserting one of these declares that the base is a smooth closed
/// almost-complex manifold with the stated property; `None` means
/// unknown. Verdicts record which flags they relied on.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ProfileFlags {
    pub simply_connected: Option<bool>,
    pub w2_nonzero: Option<bool>,
    pub h2_no_2torsion: Option<bool>,
    pub h3_trivial: Option<bool>,
}

/// Cohomological data of the base space. Even-degree integral groups
/// come from the ring profile; everything else is declared explicitly.
/// Map matrices send source-basis coordinates to target-basis
/// coordinates (rows index target generators).
#[derive(Clone, Debug)]
pub struct SpaceProfile {
    pub ring: RingProfile,
    /// Declared groups: integral groups in odd degrees, mod-2 and mod-4
    /// groups anywhere. Missing entries are unknown, not trivial.
    pub cohomology: BTreeMap<(usize, CoeffSys), AbelianGroup>,
    /// Reduction `H^d(X;Z) -> H^d(X;Z/2)` per degree.
    pub rho2: BTreeMap<usize, IntMatrix>,
    /// Steenrod square `H^d(X;Z/2) -> H^{d+2}(X;Z/2)` per degree.
    pub sq2: BTreeMap<usize, IntMatrix>,
    /// Integral Bockstein `H^d(X;Z/2) -> H^{d+1}(X;Z)` per degree.
    pub bockstein: BTreeMap<usize, IntMatrix>,
    pub flags: ProfileFlags,
}

impl SpaceProfile {
    pub fn new(ring: RingProfile, flags: ProfileFlags) -> Self {
        SpaceProfile {
            ring,
            cohomology: BTreeMap::new(),
            rho2: BTreeMap::new(),
            sq2: BTreeMap::new(),
            bockstein: BTreeMap::new(),
            flags,
        }
    }

    /// Complex top degree `m`; the space has dimension `2m`.
    pub fn m(&self) -> usize {
        self.ring.top_degree()
    }

    /// `H^d(X; sys)` if the profile determines it. Degrees above `2m`
    /// vanish for dimension reasons.
    pub fn group(&self, degree: usize, sys: CoeffSys) -> Option<AbelianGroup> {
        if degree > 2 * self.m() {
            return Some(AbelianGroup::trivial());
        }
        if sys == CoeffSys::Integral && degree.is_multiple_of(2) {
            return Some(self.ring.group(degree / 2).clone());
        }
        self.cohomology.get(&(degree, sys)).cloned()
    }

    fn map_dims_ok(
        &self,
        matrix: &IntMatrix,
        src: Option<AbelianGroup>,
        dst: Option<AbelianGroup>,
        what: &str,
    ) -> Result<(), EngineError> {
        let src = src.ok_or_else(|| {
            EngineError::InvalidProfile(format!("{what}: source group not declared"))
        })?;
        let dst = dst.ok_or_else(|| {
            EngineError::InvalidProfile(format!("{what}: target group not declared"))
        })?;
        if matrix.rows() != dst.generator_count() || matrix.cols() != src.generator_count() {
            return Err(EngineError::InvalidProfile(format!(
                "{what}: matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.generator_count(),
                src.generator_count()
            )));
        }
        Ok(())
    }

    /// A declared map, or the canonical zero map when either end is a
    /// known trivial group (the only map that exists there). Anything
    /// else undeclared stays unknown.
    fn map_or_canonical(
        &self,
        store: &BTreeMap<usize, IntMatrix>,
        degree: usize,
        src: Option<AbelianGroup>,
        dst: Option<AbelianGroup>,
    ) -> Option<IntMatrix> {
        if let Some(m) = store.get(&degree) {
            return Some(m.clone());
        }
        let (src, dst) = (src?, dst?);
        if src.is_trivial() || dst.is_trivial() {
            return Some(IntMatrix::zeros(
                dst.generator_count(),
                src.generator_count(),
            ));
        }
        None
    }

    /// `rho_2` in degree `d`, if the profile determines it.
    pub fn rho2_map(&self, d: usize) -> Option<IntMatrix> {
        self.map_or_canonical(
            &self.rho2,
            d,
            self.group(d, CoeffSys::Integral),
            self.group(d, CoeffSys::Mod2),
        )
    }

    /// `Sq^2` in degree `d`, if the profile determines it.
    pub fn sq2_map(&self, d: usize) -> Option<IntMatrix> {
        self.map_or_canonical(
            &self.sq2,
            d,
            self.group(d, CoeffSys::Mod2),
            self.group(d + 2, CoeffSys::Mod2),
        )
    }

    /// The integral Bockstein in degree `d`, if the profile determines it.
    pub fn bockstein_map(&self, d: usize) -> Option<IntMatrix> {
        self.map_or_canonical(
            &self.bockstein,
            d,
            self.group(d, CoeffSys::Mod2),
            self.group(d + 1, CoeffSys::Integral),
        )
    }

    /// Checks declared maps against declared groups.
    pub fn validate(&self) -> Result<(), EngineError> {
        for &(degree, sys) in self.cohomology.keys() {
            if sys == CoeffSys::Integral && degree % 2 == 0 && degree <= 2 * self.m() {
                return Err(EngineError::InvalidProfile(format!(
                    "integral group in even degree {degree} must come from the ring profile"
                )));
            }
        }
        for (d, mat) in &self.rho2 {
            self.map_dims_ok(
                mat,
                self.group(*d, CoeffSys::Integral),
                self.group(*d, CoeffSys::Mod2),
                &format!("rho2 at degree {d}"),
            )?;
        }
        for (d, mat) in &self.sq2 {
            self.map_dims_ok(
                mat,
                self.group(*d, CoeffSys::Mod2),
                self.group(*d + 2, CoeffSys::Mod2),
                &format!("sq2 at degree {d}"),
            )?;
        }
        for (d, mat) in &self.bockstein {
            self.map_dims_ok(
                mat,
                self.group(*d, CoeffSys::Mod2),
                self.group(*d + 1, CoeffSys::Integral),
                &format!("bockstein at degree {d}"),
            )?;
        }
        Ok(())
    }
}

/// Auto-generated profile of complex projective m-space: integral ring
/// `Z[u]/(u^{m+1})`, mod-2 and mod-4 groups of rank one in even degrees,
/// `Sq^2(u^k) = k u^{k+1}`, vanishing Bockstein, and the manifold flags
/// (`w_2` is nonzero exactly when `m` is even, since `c_1 = m + 1`).
pub fn profile_cpm(m: usize) -> SpaceProfile {
    let ring = cpm_ring(m).expect("m >= 1");
    let mut profile = SpaceProfile::new(
        ring,
        ProfileFlags {
            simply_connected: Some(true),
            w2_nonzero: Some(m.is_multiple_of(2)),
            h2_no_2torsion: Some(true),
            h3_trivial: Some(true),
        },
    );
    for d in 0..=2 * m {
        if d % 2 == 0 {
            profile
                .cohomology
                .insert((d, CoeffSys::Mod2), AbelianGroup::cyclic(2));
            profile
                .cohomology
                .insert((d, CoeffSys::Mod4), AbelianGroup::cyclic(4));
            profile.rho2.insert(d, IntMatrix::from_i64(1, 1, &[1]));
            let k = d / 2;
            let sq = sq2_cpm(k, m);
            let target_rank = usize::from(d + 2 <= 2 * m);
            profile.sq2.insert(
                d,
                IntMatrix::from_i64(target_rank, 1, &vec![sq as i64; target_rank]),
            );
            // integral odd-degree target is trivial
            profile.bockstein.insert(d, IntMatrix::zeros(0, 1));
        } else {
            if d > 0 {
                profile
                    .cohomology
                    .insert((d, CoeffSys::Integral), AbelianGroup::trivial());
            }
            profile
                .cohomology
                .insert((d, CoeffSys::Mod2), AbelianGroup::trivial());
            profile
                .cohomology
                .insert((d, CoeffSys::Mod4), AbelianGroup::trivial());
            profile.rho2.insert(d, IntMatrix::zeros(0, 0));
            // mod-2 groups in odd degrees are trivial on both ends
            profile.sq2.insert(d, IntMatrix::zeros(0, 0));
            let next_rank = usize::from(d < 2 * m);
            profile.bockstein.insert(d, IntMatrix::zeros(next_rank, 0));
        }
    }
    profile.validate().expect("generated profile is consistent");
    profile
}

/// Profile of a product of two projective spaces, with the product ring,
/// rank-preserving reductions, the Cartan-formula squares, vanishing
/// Bockstein and the corresponding manifold flags.
pub fn profile_product_cpm(a: usize, b: usize) -> SpaceProfile {
    let ring = product_cpm_ring(a, b).expect("a + b >= 1");
    let m = a + b;
    // w2 = (a+1) u + (b+1) v mod 2
    let w2_nonzero = (a + 1) % 2 == 1 || (b + 1) % 2 == 1;
    let mut profile = SpaceProfile::new(
        ring,
        ProfileFlags {
            simply_connected: Some(true),
            w2_nonzero: Some(w2_nonzero),
            h2_no_2torsion: Some(true),
            h3_trivial: Some(true),
        },
    );
    let basis = |i: usize| -> Vec<(usize, usize)> {
        (0..=i)
            .filter(|&s| s <= a && i - s <= b)
            .map(|s| (s, i - s))
            .collect()
    };
    for d in 0..=2 * m {
        if d % 2 == 0 {
            let i = d / 2;
            let rank = basis(i).len();
            profile.cohomology.insert(
                (d, CoeffSys::Mod2),
                AbelianGroup::from_orders_i64(0, &vec![2; rank]),
            );
            profile.cohomology.insert(
                (d, CoeffSys::Mod4),
                AbelianGroup::from_orders_i64(0, &vec![4; rank]),
            );
            profile.rho2.insert(d, IntMatrix::identity(rank));
            // Sq^2(u^s v^t) = s u^{s+1} v^t + t u^s v^{t+1} mod 2
            let target = basis(i + 1);
            let mut mat = IntMatrix::zeros(target.len(), rank);
            if i < m {
                for (col, &(s, t)) in basis(i).iter().enumerate() {
                    for (row, &(ws, wt)) in target.iter().enumerate() {
                        let mut coeff = 0i64;
                        if s < a && (ws, wt) == (s + 1, t) {
                            coeff += s as i64;
                        }
                        if t < b && (ws, wt) == (s, t + 1) {
                            coeff += t as i64;
                        }
                        mat.set(row, col, BigInt::from(coeff.rem_euclid(2)));
                    }
                }
            }
            profile.sq2.insert(d, mat);
            profile.bockstein.insert(d, IntMatrix::zeros(0, rank));
        } else {
            profile
                .cohomology
                .insert((d, CoeffSys::Integral), AbelianGroup::trivial());
            profile
                .cohomology
                .insert((d, CoeffSys::Mod2), AbelianGroup::trivial());
            profile
                .cohomology
                .insert((d, CoeffSys::Mod4), AbelianGroup::trivial());
            profile.rho2.insert(d, IntMatrix::zeros(0, 0));
            profile.sq2.insert(d, IntMatrix::zeros(0, 0));
            let next_rank = if d < 2 * m {
                basis(d.div_ceil(2)).len()
            } else {
                0
            };
            profile.bockstein.insert(d, IntMatrix::zeros(next_rank, 0));
        }
    }
    profile.validate().expect("generated profile is consistent");
    profile
}

/// Identifier of a manifold flag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlagId {
    SimplyConnected,
    W2Nonzero,
    H2No2Torsion,
    H3Trivial,
}

impl fmt::Display for FlagId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagId::SimplyConnected => write!(f, "flag:simply-connected"),
            FlagId::W2Nonzero => write!(f, "flag:w2-nonzero"),
            FlagId::H2No2Torsion => write!(f, "flag:h2-no-2-torsion"),
            FlagId::H3Trivial => write!(f, "flag:h3-trivial"),
        }
    }
}

/// A single checkable hypothesis. Degrees are absolute (real grading).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Condition {
    /// `H^{s+3}(X;Z)` is the image of `delta . Sq^2 . rho_2` from
    /// `H^{s}(X;Z)`.
    BocksteinSq2Rho2Onto { source_degree: usize },
    /// `H^{s+2}(X;Z/2)` is the image of `Sq^2 . rho_2` from `H^{s}(X;Z)`.
    Sq2Rho2Onto { source_degree: usize },
    /// `H^{s+2}(X;Z/2)` is the image of `Sq^2` from `H^{s}(X;Z/2)`.
    Sq2Onto { source_degree: usize },
    /// `H^{d}(X;Z)` has no 2-torsion.
    No2Torsion { degree: usize },
    /// `H^{d}(X;Z)` is torsion free.
    TorsionFree { degree: usize },
    /// `H^{d}(X;Z)` is finite abelian with no 2-torsion.
    FiniteNo2Torsion { degree: usize },
    /// The residue-class condition in degree `2m-1`: nothing for
    /// `m = 2, 6 mod 8`; `H^{2m-1}(X;Z/4) = 0` for `m = 0 mod 8`;
    /// `H^{2m-1}(X;Z/2) = 0` for `m = 4 mod 8`.
    Mod8Vanishing,
    /// `H^{2m}(X;Z)` has no `n`-torsion for `n = 12 / |pi_{2m-2}|`.
    NoTwelveOverPiTorsion,
    /// A user-asserted manifold flag.
    Flag(FlagId),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::BocksteinSq2Rho2Onto { source_degree } => {
                write!(f, "delta-sq2-rho2-onto-h{}", source_degree + 3)
            }
            Condition::Sq2Rho2Onto { source_degree } => {
                write!(f, "sq2-rho2-onto-h{}-mod2", source_degree + 2)
            }
            Condition::Sq2Onto { source_degree } => {
                write!(f, "sq2-onto-h{}-mod2", source_degree + 2)
            }
            Condition::No2Torsion { degree } => write!(f, "no-2-torsion-h{degree}"),
            Condition::TorsionFree { degree } => write!(f, "torsion-free-h{degree}"),
            Condition::FiniteNo2Torsion { degree } => {
                write!(f, "finite-no-2-torsion-h{degree}")
            }
            Condition::Mod8Vanishing => write!(f, "mod8-vanishing"),
            Condition::NoTwelveOverPiTorsion => write!(f, "no-12-over-pi-torsion"),
            Condition::Flag(id) => write!(f, "{id}"),
        }
    }
}

/// Outcome of checking one hypothesis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Holds,
    Fails,
    /// The profile does not carry the data the condition needs.
    Insufficient,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Holds => write!(f, "holds"),
            CheckStatus::Fails => write!(f, "fails"),
            CheckStatus::Insufficient => write!(f, "insufficient"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisCheck {
    pub condition: String,
    pub status: CheckStatus,
    pub detail: String,
}

fn holds(condition: &Condition, detail: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck {
        condition: condition.to_string(),
        status: CheckStatus::Holds,
        detail: detail.into(),
    }
}

fn fails(condition: &Condition, detail: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck {
        condition: condition.to_string(),
        status: CheckStatus::Fails,
        detail: detail.into(),
    }
}

fn insufficient(condition: &Condition, detail: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck {
        condition: condition.to_string(),
        status: CheckStatus::Insufficient,
        detail: detail.into(),
    }
}

/// Surjectivity of a composite of linear maps onto a presented group:
/// the cokernel of `[composite | relations]` must vanish.
fn composite_onto(maps: &[&IntMatrix], target: &AbelianGroup) -> bool {
    let mut composite: Option<IntMatrix> = None;
    for step in maps {
        composite = Some(match composite {
            None => (*step).clone(),
            Some(prev) => step.mul(&prev),
        });
    }
    let composite = composite.expect("at least one map");
    cokernel_group(&composite.hstack(&target.relations_matrix())).is_trivial()
}

/// Evaluates a single condition against a profile. Conditions of the
/// form "the group is the image of a composite" are decided by
/// surjectivity of the composite matrix; torsion conditions by the gcd
/// criterion; flags are read as asserted.
pub fn check_hypothesis(profile: &SpaceProfile, condition: &Condition) -> HypothesisCheck {
    let m = profile.m();
    match condition {
        Condition::BocksteinSq2Rho2Onto { source_degree } => {
            let s = *source_degree;
            let target = match profile.group(s + 3, CoeffSys::Integral) {
                Some(g) => g,
                None => return insufficient(condition, format!("H^{}(X;Z) not declared", s + 3)),
            };
            if target.is_trivial() {
                return holds(condition, "target group is trivial");
            }
            let (Some(rho), Some(sq), Some(bock)) = (
                profile.rho2_map(s),
                profile.sq2_map(s),
                profile.bockstein_map(s + 2),
            ) else {
                return insufficient(
                    condition,
                    format!(
                        "maps rho2@{s}, sq2@{s}, bockstein@{} not all determined",
                        s + 2
                    ),
                );
            };
            if composite_onto(&[&rho, &sq, &bock], &target) {
                holds(
                    condition,
                    format!("composite covers H^{}(X;Z) = {target}", s + 3),
                )
            } else {
                fails(
                    condition,
                    format!("composite misses part of H^{}(X;Z) = {target}", s + 3),
                )
            }
        }
        Condition::Sq2Rho2Onto { source_degree } => {
            let s = *source_degree;
            let target = match profile.group(s + 2, CoeffSys::Mod2) {
                Some(g) => g,
                None => return insufficient(condition, format!("H^{}(X;Z/2) not declared", s + 2)),
            };
            if target.is_trivial() {
                return holds(condition, "target group is trivial");
            }
            let (Some(rho), Some(sq)) = (profile.rho2_map(s), profile.sq2_map(s)) else {
                return insufficient(
                    condition,
                    format!("maps rho2@{s} and sq2@{s} not both determined"),
                );
            };
            if composite_onto(&[&rho, &sq], &target) {
                holds(
                    condition,
                    format!("composite covers H^{}(X;Z/2) = {target}", s + 2),
                )
            } else {
                fails(
                    condition,
                    format!("composite misses part of H^{}(X;Z/2) = {target}", s + 2),
                )
            }
        }
        Condition::Sq2Onto { source_degree } => {
            let s = *source_degree;
            let target = match profile.group(s + 2, CoeffSys::Mod2) {
                Some(g) => g,
                None => return insufficient(condition, format!("H^{}(X;Z/2) not declared", s + 2)),
            };
            if target.is_trivial() {
                return holds(condition, "target group is trivial");
            }
            let Some(sq) = profile.sq2_map(s) else {
                return insufficient(condition, format!("map sq2@{s} not determined"));
            };
            if composite_onto(&[&sq], &target) {
                holds(
                    condition,
                    format!("square covers H^{}(X;Z/2) = {target}", s + 2),
                )
            } else {
                fails(
                    condition,
                    format!("square misses part of H^{}(X;Z/2) = {target}", s + 2),
                )
            }
        }
        Condition::No2Torsion { degree } => match profile.group(*degree, CoeffSys::Integral) {
            None => insufficient(condition, format!("H^{degree}(X;Z) not declared")),
            Some(g) => {
                if g.has_n_torsion(&BigInt::from(2)) {
                    fails(condition, format!("H^{degree}(X;Z) = {g} has 2-torsion"))
                } else {
                    holds(condition, format!("H^{degree}(X;Z) = {g}"))
                }
            }
        },
        Condition::TorsionFree { degree } => match profile.group(*degree, CoeffSys::Integral) {
            None => insufficient(condition, format!("H^{degree}(X;Z) not declared")),
            Some(g) => {
                if g.is_torsion_free() {
                    holds(condition, format!("H^{degree}(X;Z) = {g}"))
                } else {
                    fails(condition, format!("H^{degree}(X;Z) = {g} has torsion"))
                }
            }
        },
        Condition::FiniteNo2Torsion { degree } => {
            match profile.group(*degree, CoeffSys::Integral) {
                None => insufficient(condition, format!("H^{degree}(X;Z) not declared")),
                Some(g) => {
                    if !g.is_finite() {
                        fails(condition, format!("H^{degree}(X;Z) = {g} is infinite"))
                    } else if g.has_n_torsion(&BigInt::from(2)) {
                        fails(condition, format!("H^{degree}(X;Z) = {g} has 2-torsion"))
                    } else {
                        holds(condition, format!("H^{degree}(X;Z) = {g}"))
                    }
                }
            }
        }
        Condition::Mod8Vanishing => {
            let d = 2 * m - 1;
            match m % 8 {
                2 | 6 => holds(condition, format!("m = {} mod 8 needs nothing", m % 8)),
                0 => match profile.group(d, CoeffSys::Mod4) {
                    None => insufficient(condition, format!("H^{d}(X;Z/4) not declared")),
                    Some(g) if g.is_trivial() => holds(condition, format!("H^{d}(X;Z/4) = 0")),
                    Some(g) => fails(condition, format!("H^{d}(X;Z/4) = {g} nonzero")),
                },
                4 => match profile.group(d, CoeffSys::Mod2) {
                    None => insufficient(condition, format!("H^{d}(X;Z/2) not declared")),
                    Some(g) if g.is_trivial() => holds(condition, format!("H^{d}(X;Z/2) = 0")),
                    Some(g) => fails(condition, format!("H^{d}(X;Z/2) = {g} nonzero")),
                },
                _ => fails(
                    condition,
                    format!("m = {m} is odd; residue casework needs even m"),
                ),
            }
        }
        Condition::NoTwelveOverPiTorsion => {
            if !m.is_multiple_of(2) {
                return fails(
                    condition,
                    format!("the torsion bound 12/|pi| is consulted for even m only, m = {m}"),
                );
            }
            let entry = match pi_2m2(m) {
                Ok(e) => e,
                Err(e) => return insufficient(condition, e.to_string()),
            };
            let n = entry.n.expect("even m has a defined bound");
            match profile.group(2 * m, CoeffSys::Integral) {
                None => insufficient(condition, format!("H^{}(X;Z) not declared", 2 * m)),
                Some(g) => {
                    if n.is_one() || !g.has_n_torsion(&n) {
                        holds(
                            condition,
                            format!("pi_{{2m-2}} = {}, no {n}-torsion in {g}", entry.group),
                        )
                    } else {
                        fails(
                            condition,
                            format!(
                                "H^{}(X;Z) = {g} has {n}-torsion (pi = {})",
                                2 * m,
                                entry.group
                            ),
                        )
                    }
                }
            }
        }
        Condition::Flag(id) => {
            let value = match id {
                FlagId::SimplyConnected => profile.flags.simply_connected,
                FlagId::W2Nonzero => profile.flags.w2_nonzero,
                FlagId::H2No2Torsion => profile.flags.h2_no_2torsion,
                FlagId::H3Trivial => profile.flags.h3_trivial,
            };
            match value {
                Some(true) => holds(condition, "asserted by the profile"),
                Some(false) => fails(condition, "asserted false by the profile"),
                None => insufficient(condition, "flag not asserted"),
            }
        }
    }
}

/// The theorem route a verdict went through.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RouteId {
    OneLine,
    TwoOddSurjective,
    TwoOddTorsionFree,
    TwoEven,
    TwoEvenManifold,
    ThreeEvenPartial,
    ThreeEvenFull,
    ThreeEvenManifold,
    ThreeOdd,
    ThreeOddManifold,
}

impl fmt::Display for RouteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RouteId::OneLine => "one-line",
            RouteId::TwoOddSurjective => "two-lines-odd-surjective",
            RouteId::TwoOddTorsionFree => "two-lines-odd-torsion-free",
            RouteId::TwoEven => "two-lines-even",
            RouteId::TwoEvenManifold => "two-lines-even-manifold",
            RouteId::ThreeEvenPartial => "three-lines-even-partial",
            RouteId::ThreeEvenFull => "three-lines-even-full",
            RouteId::ThreeEvenManifold => "three-lines-even-manifold",
            RouteId::ThreeOdd => "three-lines-odd",
            RouteId::ThreeOddManifold => "three-lines-odd-manifold",
        };
        write!(f, "{s}")
    }
}

impl RouteId {
    pub fn parse(s: &str) -> Option<RouteId> {
        let all = [
            RouteId::OneLine,
            RouteId::TwoOddSurjective,
            RouteId::TwoOddTorsionFree,
            RouteId::TwoEven,
            RouteId::TwoEvenManifold,
            RouteId::ThreeEvenPartial,
            RouteId::ThreeEvenFull,
            RouteId::ThreeEvenManifold,
            RouteId::ThreeOdd,
            RouteId::ThreeOddManifold,
        ];
        all.into_iter().find(|r| r.to_string() == s)
    }
}

struct Route {
    id: RouteId,
    conditions: Vec<Condition>,
    /// Offsets `i`; the route checks the virtual classes `c_{m+1-i}`.
    offsets: Vec<usize>,
}

fn applicable_routes(r: usize, m: usize) -> Vec<Route> {
    match (r, m % 2) {
        (1, _) => vec![Route {
            id: RouteId::OneLine,
            conditions: vec![],
            offsets: vec![1],
        }],
        (2, 1) => vec![
            Route {
                id: RouteId::TwoOddSurjective,
                conditions: vec![Condition::BocksteinSq2Rho2Onto {
                    source_degree: 2 * m - 3,
                }],
                offsets: vec![2],
            },
            Route {
                id: RouteId::TwoOddTorsionFree,
                conditions: vec![Condition::No2Torsion { degree: 2 * m }],
                offsets: vec![1, 2],
            },
        ],
        (2, 0) => vec![
            Route {
                id: RouteId::TwoEven,
                conditions: vec![
                    Condition::Sq2Rho2Onto {
                        source_degree: 2 * m - 3,
                    },
                    Condition::Sq2Onto {
                        source_degree: 2 * m - 2,
                    },
                    Condition::No2Torsion { degree: 2 * m },
                ],
                offsets: vec![1, 2],
            },
            Route {
                id: RouteId::TwoEvenManifold,
                conditions: vec![
                    Condition::Flag(FlagId::SimplyConnected),
                    Condition::Flag(FlagId::W2Nonzero),
                ],
                offsets: vec![1, 2],
            },
        ],
        (3, 0) => {
            let manifold_conditions = if m % 4 == 2 {
                vec![Condition::Flag(FlagId::H2No2Torsion)]
            } else {
                vec![
                    Condition::Flag(FlagId::SimplyConnected),
                    Condition::Flag(FlagId::H2No2Torsion),
                ]
            };
            vec![
                Route {
                    id: RouteId::ThreeEvenPartial,
                    conditions: vec![
                        Condition::BocksteinSq2Rho2Onto {
                            source_degree: 2 * m - 5,
                        },
                        Condition::Mod8Vanishing,
                        Condition::NoTwelveOverPiTorsion,
                    ],
                    offsets: vec![1, 3],
                },
                Route {
                    id: RouteId::ThreeEvenFull,
                    conditions: vec![
                        Condition::No2Torsion { degree: 2 * m - 2 },
                        Condition::Mod8Vanishing,
                        Condition::NoTwelveOverPiTorsion,
                    ],
                    offsets: vec![1, 2, 3],
                },
                Route {
                    id: RouteId::ThreeEvenManifold,
                    conditions: manifold_conditions,
                    offsets: vec![1, 2, 3],
                },
            ]
        }
        (3, 1) => vec![
            Route {
                id: RouteId::ThreeOdd,
                conditions: vec![
                    Condition::Sq2Rho2Onto {
                        source_degree: 2 * m - 5,
                    },
                    Condition::Sq2Onto {
                        source_degree: 2 * m - 4,
                    },
                    Condition::No2Torsion { degree: 2 * m - 2 },
                    Condition::FiniteNo2Torsion { degree: 2 * m - 1 },
                    Condition::TorsionFree { degree: 2 * m },
                ],
                offsets: vec![1, 2, 3],
            },
            Route {
                id: RouteId::ThreeOddManifold,
                conditions: vec![
                    Condition::Flag(FlagId::SimplyConnected),
                    Condition::Flag(FlagId::H2No2Torsion),
                    Condition::Sq2Onto {
                        source_degree: 2 * m - 4,
                    },
                    Condition::Flag(FlagId::H3Trivial),
                ],
                offsets: vec![1, 2, 3],
            },
        ],
        _ => vec![],
    }
}

/// A splitting question: does the direct sum of `lines` embed into the
/// bundle with total Chern class `xi` over the profiled space?
#[derive(Clone, Debug)]
pub struct SplitProblem {
    pub profile: SpaceProfile,
    pub xi: ChernVector,
    pub lines: Vec<LineBundle>,
}

impl SplitProblem {
    pub fn new(
        profile: SpaceProfile,
        xi: ChernVector,
        lines: Vec<LineBundle>,
    ) -> Result<Self, EngineError> {
        if lines.is_empty() || lines.len() > 3 {
            return Err(EngineError::LineCount(lines.len()));
        }
        if xi.rank() != profile.m() {
            return Err(EngineError::ProfileMismatch(format!(
                "bundle rank {} must equal the profile top degree {}",
                xi.rank(),
                profile.m()
            )));
        }
        for (k, line) in lines.iter().enumerate() {
            let expected = profile.ring.group(1).generator_count();
            if line.c1().coords.len() != expected {
                return Err(EngineError::ProfileMismatch(format!(
                    "line {k} has {} coordinates, H^2 has {expected} generators",
                    line.c1().coords.len()
                )));
            }
        }
        Ok(SplitProblem { profile, xi, lines })
    }
}

/// One report line inside a hypotheses-not-met verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisReport {
    pub route: Option<RouteId>,
    pub check: HypothesisCheck,
}

/// The engine's answer.
#[derive(Clone, PartialEq, Debug)]
pub enum Verdict {
    /// The lines embed. `certificate` is the virtual total class in
    /// degrees up to `2(m - r)`: the Chern class of a complement.
    Splits {
        route: RouteId,
        checked_indices: Vec<usize>,
        conditions: Vec<String>,
        flags_used: Vec<String>,
        certificate: Vec<GradedElement>,
    },
    /// Some required virtual class is nonzero; no embedding exists.
    Obstructed {
        route: RouteId,
        failing_index: usize,
        value: GradedElement,
    },
    /// No routed theorem applies to this profile.
    HypothesesNotMet { reports: Vec<HypothesisReport> },
}

impl Verdict {
    pub fn is_splits(&self) -> bool {
        matches!(self, Verdict::Splits { .. })
    }

    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::Obstructed { .. })
    }
}

fn range_gate_report(detail: String) -> Verdict {
    Verdict::HypothesesNotMet {
        reports: vec![HypothesisReport {
            route: None,
            check: HypothesisCheck {
                condition: "range".into(),
                status: CheckStatus::Fails,
                detail,
            },
        }],
    }
}

/// Decides the splitting question.
///
/// The problem is range-gated on `m`, routed to the theorem for its
/// `(r, parity)` cell, and the routed hypotheses are verified. On
/// success the verdict is `Splits` exactly when the route's virtual
/// Chern classes vanish; the remaining top classes are also verified so
/// that a `Splits` answer always satisfies the necessary vanishing
/// condition. The first failing class is returned as the obstruction
/// witness.
pub fn decide(problem: &SplitProblem) -> Verdict {
    let profile = &problem.profile;
    let m = profile.m();
    let r = problem.lines.len();

    match r {
        1 => {}
        2 if m < 3 => {
            return range_gate_report(format!("two-line splitting requires m >= 3, got m = {m}"))
        }
        3 if m.is_multiple_of(2) && m < 6 => {
            return range_gate_report(format!(
                "three-line splitting requires m >= 6 for even m, got m = {m}"
            ))
        }
        3 if m % 2 == 1 && m < 5 => {
            return range_gate_report(format!(
                "three-line splitting requires m >= 5 for odd m, got m = {m}"
            ))
        }
        _ => {}
    }

    struct SelectedRoute {
        id: RouteId,
        offsets: Vec<usize>,
        conditions: Vec<String>,
        flags_used: Vec<String>,
    }
    let routes = applicable_routes(r, m);
    let mut failed_reports: Vec<HypothesisReport> = Vec::new();
    let mut selected: Option<SelectedRoute> = None;
    for route in &routes {
        let checks: Vec<HypothesisCheck> = route
            .conditions
            .iter()
            .map(|c| check_hypothesis(profile, c))
            .collect();
        if checks.iter().all(|c| c.status == CheckStatus::Holds) {
            let mut conditions = Vec::new();
            let mut flags_used = Vec::new();
            for (cond, check) in route.conditions.iter().zip(&checks) {
                if matches!(cond, Condition::Flag(_)) {
                    flags_used.push(check.condition.clone());
                } else {
                    conditions.push(check.condition.clone());
                }
            }
            selected = Some(SelectedRoute {
                id: route.id,
                offsets: route.offsets.clone(),
                conditions,
                flags_used,
            });
            break;
        }
        failed_reports.extend(
            checks
                .into_iter()
                .filter(|c| c.status != CheckStatus::Holds)
                .map(|check| HypothesisReport {
                    route: Some(route.id),
                    check,
                }),
        );
    }
    let Some(SelectedRoute {
        id: route_id,
        offsets,
        conditions,
        flags_used,
    }) = selected
    else {
        return Verdict::HypothesesNotMet {
            reports: failed_reports,
        };
    };

    // virtual top classes, route-required offsets first, then the
    // remaining ones: a Splits verdict must satisfy the full necessary
    // vanishing condition
    let top_class = |i: usize| -> GradedElement {
        virtual_chern(&profile.ring, &problem.xi, &problem.lines, m + 1 - i)
            .expect("degrees within the ring")
    };
    for &i in &offsets {
        let value = top_class(i);
        if !value.is_zero() {
            return Verdict::Obstructed {
                route: route_id,
                failing_index: m + 1 - i,
                value,
            };
        }
    }
    for i in 1..=r {
        if offsets.contains(&i) {
            continue;
        }
        let value = top_class(i);
        if !value.is_zero() {
            return Verdict::Obstructed {
                route: route_id,
                failing_index: m + 1 - i,
                value,
            };
        }
    }

    let certificate: Vec<GradedElement> = (0..=m - r)
        .map(|n| {
            virtual_chern(&profile.ring, &problem.xi, &problem.lines, n)
                .expect("degrees within the ring")
        })
        .collect();
    let checked_indices: Vec<usize> = offsets.iter().map(|i| m + 1 - i).collect();
    Verdict::Splits {
        route: route_id,
        checked_indices,
        conditions,
        flags_used,
        certificate,
    }
}

/// Splitting off `r` trivial lines: complex span at least `r`. For
/// `r = 1` over a closed almost-complex manifold this is the
/// Euler-characteristic criterion, since the top Chern class is the
/// Euler class.
pub fn span_decide(
    profile: &SpaceProfile,
    xi: &ChernVector,
    r: usize,
) -> Result<Verdict, EngineError> {
    let lines = vec![LineBundle::trivial(&profile.ring); r];
    let problem = SplitProblem::new(profile.clone(), xi.clone(), lines)?;
    Ok(decide(&problem))
}

/// The primary obstruction to the lifting problem: the single class
/// `c_{m-r+1}(xi - l_1 - ... - l_r)`.
pub fn primary_obstruction(problem: &SplitProblem) -> Result<GradedElement, EngineError> {
    let m = problem.profile.m();
    let r = problem.lines.len();
    if r > m {
        return Err(EngineError::RankGate { r, m });
    }
    Ok(virtual_chern(
        &problem.profile.ring,
        &problem.xi,
        &problem.lines,
        m - r + 1,
    )
    .expect("degree within the ring"))
}
