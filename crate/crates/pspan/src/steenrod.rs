//! Mod-2 Steenrod calculus: Adem reduction to admissible monomials, the
//! Wu formula on mod-2 Chern classes, the Steenrod action on Stiefel
//! manifold generators, and squares on projective space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("Wu formula requires i <= j, got i = {i}, j = {j}")]
    WuOutOfRange { i: usize, j: usize },
    #[error("square exponents must be positive")]
    ZeroExponent,
}

/// Formal Z/2-sum of composites `Sq^{a_1} ... Sq^{a_k}` with every
/// `a_i >= 1`. The empty composite is the identity operation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SqExpr {
    terms: BTreeSet<Vec<u32>>,
}

impl SqExpr {
    pub fn zero() -> Self {
        SqExpr::default()
    }

    pub fn identity() -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(vec![]);
        SqExpr { terms }
    }

    /// A single composite `Sq^{a_1} ... Sq^{a_k}`.
    pub fn monomial(exponents: &[u32]) -> Result<Self, SteenrodError> {
        if exponents.contains(&0) {
            return Err(SteenrodError::ZeroExponent);
        }
        let mut terms = BTreeSet::new();
        terms.insert(exponents.to_vec());
        Ok(SqExpr { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &[u32]> {
        self.terms.iter().map(|t| t.as_slice())
    }

    /// Mod-2 sum: shared terms cancel.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for t in &other.terms {
            if !terms.remove(t) {
                terms.insert(t.clone());
            }
        }
        SqExpr { terms }
    }

    /// Composition (concatenation of composites), not reduced.
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut t = a.clone();
                t.extend_from_slice(b);
                if !terms.remove(&t) {
                    terms.insert(t);
                }
            }
        }
        SqExpr { terms }
    }

    /// Whether every composite satisfies `a_i >= 2 a_{i+1}`.
    pub fn is_admissible(&self) -> bool {
        self.terms.iter().all(|t| monomial_admissible(t))
    }
}

impl fmt::Display for SqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter()
                        .map(|a| format!("Sq^{a}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

fn monomial_admissible(t: &[u32]) -> bool {
    t.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// `C(n, k) mod 2` for any integer upper index. Nonnegative `n` goes
/// through Lucas' theorem (bitwise AND); negative `n` uses
/// `C(n, k) = (-1)^k C(k - n - 1, k)`, and `C(x, 0) = 1` for every `x`.
pub fn binom_mod2(n: i64, k: u32) -> u8 {
    if k == 0 {
        return 1;
    }
    let k = k as i64;
    let upper = if n >= 0 { n } else { k - n - 1 };
    if upper < k {
        return 0;
    }
    u8::from(upper & k == k)
}

/// Rewrites a formal square expression into admissible form by repeated
/// application of the Adem relation
/// `Sq^a Sq^b = sum_c C(b-1-c, a-2c) Sq^{a+b-c} Sq^c` for `a < 2b`.
/// Idempotent on admissible input.
pub fn adem_reduce(x: &SqExpr) -> SqExpr {
    let mut pending: BTreeSet<Vec<u32>> = x.terms.clone();
    let mut done: BTreeSet<Vec<u32>> = BTreeSet::new();
    while let Some(t) = pending.pop_first() {
        let bad = t.windows(2).position(|w| w[0] < 2 * w[1]);
        match bad {
            None => {
                if !done.remove(&t) {
                    done.insert(t);
                }
            }
            Some(p) => {
                let (a, b) = (t[p], t[p + 1]);
                for c in 0..=a / 2 {
                    if binom_mod2(b as i64 - 1 - c as i64, a - 2 * c) == 0 {
                        continue;
                    }
                    let mut rewritten = t[..p].to_vec();
                    rewritten.push(a + b - c);
                    if c > 0 {
                        rewritten.push(c);
                    }
                    rewritten.extend_from_slice(&t[p + 2..]);
                    if !pending.remove(&rewritten) {
                        pending.insert(rewritten);
                    }
                }
            }
        }
    }
    SqExpr { terms: done }
}

/// Z/2-polynomial in commuting generators `b_1, b_2, ...` with
/// `deg b_j = 2j`; `b_0 = 1` is the empty monomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BPolynomial {
    /// Each term is a sorted multiset of generator indices.
    terms: BTreeSet<Vec<u32>>,
}

impl BPolynomial {
    pub fn zero() -> Self {
        BPolynomial::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(vec![]);
        BPolynomial { terms }
    }

    pub fn generator(j: u32) -> Self {
        if j == 0 {
            return Self::one();
        }
        let mut terms = BTreeSet::new();
        terms.insert(vec![j]);
        BPolynomial { terms }
    }

    /// A single product `b_{j_1} ... b_{j_k}`; index 0 is absorbed.
    pub fn monomial(indices: &[u32]) -> Self {
        let mut t: Vec<u32> = indices.iter().copied().filter(|&j| j > 0).collect();
        t.sort_unstable();
        let mut terms = BTreeSet::new();
        terms.insert(t);
        BPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for t in &other.terms {
            if !terms.remove(t) {
                terms.insert(t.clone());
            }
        }
        BPolynomial { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut t = a.clone();
                t.extend_from_slice(b);
                t.sort_unstable();
                if !terms.remove(&t) {
                    terms.insert(t);
                }
            }
        }
        BPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = &[u32]> {
        self.terms.iter().map(|t| t.as_slice())
    }
}

impl fmt::Display for BPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter()
                        .map(|j| format!("b{j}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Generalized binomial parity `C(n, t) mod 2` with a possibly negative
/// upper index, computed from the falling factorial
/// `n (n-1) ... (n-t+1) / t!`.
fn generalized_binom_mod2(n: i64, t: u32) -> u8 {
    if t == 0 {
        return 1;
    }
    let mut num = BigInt::one();
    for s in 0..t as i64 {
        num *= BigInt::from(n - s);
    }
    let den: BigInt = (1..=t as i64).map(BigInt::from).product();
    let q = num / den;
    u8::from(q.abs().is_odd())
}

/// Wu formula for the even squares on the stable mod-2 classes `b_j`:
/// `Sq^{2i}(b_j) = sum_t C(j+t-i-1, t) b_{i-t} b_{j+t}` over Z/2, for
/// `i <= j`. Odd squares vanish on these classes.
pub fn sq_wu(i: u32, j: u32) -> Result<BPolynomial, SteenrodError> {
    if i == 0 || i > j {
        return Err(SteenrodError::WuOutOfRange {
            i: i as usize,
            j: j as usize,
        });
    }
    let mut out = BPolynomial::zero();
    for t in 0..=i {
        let upper = j as i64 + t as i64 - i as i64 - 1;
        if generalized_binom_mod2(upper, t) == 1 {
            out = out.add(&BPolynomial::monomial(&[i - t, j + t]));
        }
    }
    Ok(out)
}

/// Coefficient of `f_{2i+2j+1}` in `Sq^{2j}(f_{2i+1})` on the Stiefel
/// manifold of 3-frames and fewer: `C(i, j) mod 2` when `j <= i` and
/// `i + j <= m - 1`, zero otherwise.
pub fn sq_stiefel(j: u32, i: u32, m: u32) -> u8 {
    if j <= i && i + j <= m.saturating_sub(1) {
        binom_mod2(i as i64, j)
    } else {
        0
    }
}

/// `Sq^2(u^k) = k u^{k+1} mod 2` on projective m-space, zero above the
/// top degree. Requires `k <= m`.
pub fn sq2_cpm(k: usize, m: usize) -> u8 {
    assert!(k <= m, "u^{k} does not live on CP^{m}");
    if k + 1 > m {
        0
    } else {
        (k % 2) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(exps: &[u32]) -> SqExpr {
        SqExpr::monomial(exps).unwrap()
    }

    #[test]
    fn adem_basic_relations() {
        assert!(adem_reduce(&sq(&[1, 1])).is_zero());
        assert_eq!(adem_reduce(&sq(&[2, 2])), sq(&[3, 1]));
        assert!(adem_reduce(&sq(&[3, 2])).is_zero());
        assert_eq!(adem_reduce(&sq(&[2, 3])), sq(&[5]).add(&sq(&[4, 1])));
        assert_eq!(adem_reduce(&sq(&[2, 1, 2])), sq(&[5]).add(&sq(&[4, 1])));
    }

    #[test]
    fn adem_longer_composites() {
        // Sq^1 Sq^2 = Sq^3, so Sq^1 Sq^2 Sq^1 = Sq^3 Sq^1
        assert_eq!(adem_reduce(&sq(&[1, 2, 1])), sq(&[3, 1]));
        // Sq^1 Sq^3 = 0
        assert!(adem_reduce(&sq(&[1, 3])).is_zero());
        // Sq^3 Sq^3 = Sq^5 Sq^1
        assert_eq!(adem_reduce(&sq(&[3, 3])), sq(&[5, 1]));
    }

    #[test]
    fn adem_idempotent_and_degree_preserving() {
        let inputs = [
            vec![2u32, 2],
            vec![2, 3],
            vec![1, 2, 3],
            vec![4, 4],
            vec![2, 1, 2],
            vec![5, 2, 1],
            vec![3, 4],
            vec![6, 5],
        ];
        for exps in &inputs {
            let x = sq(exps);
            let degree: u32 = exps.iter().sum();
            let reduced = adem_reduce(&x);
            assert!(reduced.is_admissible(), "{x} -> {reduced}");
            for t in reduced.terms() {
                assert_eq!(t.iter().sum::<u32>(), degree, "{x} -> {reduced}");
            }
            assert_eq!(
                adem_reduce(&reduced),
                reduced,
                "not idempotent on {reduced}"
            );
        }
    }

    #[test]
    fn adem_identity_and_sums() {
        assert_eq!(adem_reduce(&SqExpr::identity()), SqExpr::identity());
        assert!(adem_reduce(&SqExpr::zero()).is_zero());
        // a sum whose parts cancel after reduction: Sq^2 Sq^3 + Sq^5 + Sq^4 Sq^1
        let x = sq(&[2, 3]).add(&sq(&[5])).add(&sq(&[4, 1]));
        assert!(adem_reduce(&x).is_zero());
    }

    #[test]
    fn binom_mod2_cases() {
        assert_eq!(binom_mod2(0, 1), 0);
        assert_eq!(binom_mod2(-1, 0), 1);
        assert_eq!(binom_mod2(4, 2), 0);
        assert_eq!(binom_mod2(5, 2), 0);
        assert_eq!(binom_mod2(6, 2), 1);
        // factorial-parity oracle on C(4s+2, 2)
        for s in 0..=8i64 {
            let n = 4 * s + 2;
            let direct = (n * (n - 1) / 2) % 2;
            assert_eq!(binom_mod2(n, 2) as i64, direct);
            assert_eq!(binom_mod2(n, 2), 1);
        }
        // negative upper index matches the falling-factorial definition
        for n in -6i64..0 {
            for k in 0..6u32 {
                assert_eq!(binom_mod2(n, k), generalized_binom_mod2(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn wu_formula_examples() {
        // top square is the cup square
        for j in 1..=12u32 {
            assert_eq!(
                sq_wu(j, j).unwrap(),
                BPolynomial::monomial(&[j, j]),
                "j = {j}"
            );
        }
        // Sq^2 b_2 = b_1 b_2 + b_3
        let expect = BPolynomial::monomial(&[1, 2]).add(&BPolynomial::generator(3));
        assert_eq!(sq_wu(1, 2).unwrap(), expect);
        // Sq^2 b_{m-1} = b_1 b_{m-1} + (m-2) b_m
        for m in 4..=12u32 {
            let got = sq_wu(1, m - 1).unwrap();
            let mut expect = BPolynomial::monomial(&[1, m - 1]);
            if m % 2 == 1 {
                expect = expect.add(&BPolynomial::generator(m));
            }
            assert_eq!(got, expect, "m = {m}");
        }
        assert!(sq_wu(3, 2).is_err());
        assert!(sq_wu(0, 2).is_err());
    }

    #[test]
    fn stiefel_action() {
        // Sq^0 is the identity
        assert_eq!(sq_stiefel(0, 3, 9), 1);
        // m even: Sq^2 f_{2m-5} = f_{2m-3}, i.e. C(m-3, 1) = 1
        for m in [6u32, 8, 10, 12] {
            assert_eq!(sq_stiefel(1, m - 3, m), 1, "m = {m}");
        }
        // m = 1 mod 4: Sq^2 f_{2m-5} = 0 but Sq^4 f_{2m-5} = f_{2m-1}
        for m in [5u32, 9, 13] {
            assert_eq!(sq_stiefel(1, m - 3, m), 0, "m = {m}");
            assert_eq!(sq_stiefel(2, m - 3, m), 1, "m = {m}");
        }
        // out of range: zero
        assert_eq!(sq_stiefel(4, 3, 9), 0); // j > i
        assert_eq!(sq_stiefel(2, 5, 6), 0); // i + j > m - 1
    }

    #[test]
    fn stiefel_matches_binomial_in_range() {
        for m in 3..=13u32 {
            for i in 0..m {
                for j in 0..=i {
                    let got = sq_stiefel(j, i, m);
                    if i + j < m {
                        assert_eq!(got, binom_mod2(i as i64, j));
                    } else {
                        assert_eq!(got, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn squares_on_projective_space() {
        assert_eq!(sq2_cpm(1, 2), 1); // Sq^2 u = u^2
        assert_eq!(sq2_cpm(3, 7), 1); // Sq^2 u^3 = u^4
        assert_eq!(sq2_cpm(2, 7), 0);
        assert_eq!(sq2_cpm(5, 5), 0); // truncated
        for m in 3..=9usize {
            assert_eq!(sq2_cpm(m - 2, m), (m % 2) as u8); // (m-2) u^{m-1}
        }
    }

    #[test]
    fn cartan_consistency_on_projective_space() {
        // Sq^2(u^{a+b}) = Sq^2(u^a) u^b + u^a Sq^2(u^b), with Sq^1 u^k = 0
        let m = 13usize;
        for a in 1..=6usize {
            for b in 1..=6usize {
                let lhs = sq2_cpm(a + b, m);
                let rhs = (sq2_cpm(a, m) + sq2_cpm(b, m)) % 2;
                assert_eq!(lhs, rhs, "a = {a}, b = {b}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn adem_normalizes_arbitrary_composites(
            exps in proptest::collection::vec(1u32..8, 0..5)
        ) {
            let x = sq(&exps);
            let degree: u32 = exps.iter().sum();
            let reduced = adem_reduce(&x);
            proptest::prop_assert!(reduced.is_admissible());
            for t in reduced.terms() {
                proptest::prop_assert_eq!(t.iter().sum::<u32>(), degree);
            }
            proptest::prop_assert_eq!(adem_reduce(&reduced), reduced);
        }

        #[test]
        fn wu_top_square_and_parity(j in 1u32..13, i in 1u32..13) {
            if i <= j {
                let value = sq_wu(i, j).unwrap();
                // every surviving term has total degree 2(i + j)
                for t in value.terms() {
                    let degree: u32 = t.iter().map(|&g| 2 * g).sum();
                    proptest::prop_assert_eq!(degree, 2 * (i + j));
                }
                if i == j {
                    proptest::prop_assert_eq!(value, BPolynomial::monomial(&[j, j]));
                }
            } else {
                proptest::prop_assert!(sq_wu(i, j).is_err());
            }
        }
    }
}
