//! Built-in invariant suite behind the `selftest` subcommand: a fast,
//! deterministic replay of the library's cross-checks at runtime.

use crate::algebra::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::chern::{virtual_chern, virtual_chern_oracle, ChernVector, LineBundle};
use crate::cpm::enumerate_split_chern;
use crate::engine::{decide, profile_cpm, SplitProblem, Verdict};
use crate::ring::{cpm_ring, product_cpm_ring, Modulus, TruncatedPoly};
use crate::steenrod::{adem_reduce, sq2_cpm, sq_stiefel, sq_wu, BPolynomial, SqExpr};
use crate::symfun::{binom_sum, schwarzenberger_check, ElemSymVector};
use crate::tables::{pi_2m2, stiefel_pi, verify_uct};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.checks.push(CheckResult {
                name: name.into(),
                passed: true,
                detail: String::new(),
            }),
            Err(detail) => self.checks.push(CheckResult {
                name: name.into(),
                passed: false,
                detail,
            }),
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn check_smith_normal_form() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for case in 0..60 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let entries: Vec<BigInt> = (0..rows * cols)
            .map(|_| BigInt::from(rng.gen_range(-20..=20)))
            .collect();
        let a = IntMatrix::new(rows, cols, entries);
        let snf = smith_normal_form(&a);
        ensure(snf.d.is_diagonal(), format!("case {case}: not diagonal"))?;
        ensure(
            snf.u.mul(&a).mul(&snf.v) == snf.d,
            format!("case {case}: d != u a v"),
        )?;
        ensure(
            snf.u.det().abs().is_one(),
            format!("case {case}: u not unimodular"),
        )?;
        ensure(
            snf.v.det().abs().is_one(),
            format!("case {case}: v not unimodular"),
        )?;
        let diag = snf.invariant_diagonal();
        for w in diag.windows(2) {
            ensure(
                w[1].mod_floor(&w[0]).is_zero(),
                format!("case {case}: chain broken"),
            )?;
        }
    }
    Ok(())
}

fn check_torsion_against_enumeration() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut tested = 0;
    while tested < 40 {
        let k = rng.gen_range(1..=3);
        let orders: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=15)).collect();
        let g = AbelianGroup::from_orders_i64(0, &orders);
        let order = g.order().expect("finite");
        if order > BigInt::from(200) || g.is_trivial() {
            continue;
        }
        let n = BigInt::from(rng.gen_range(1..=16));
        // walk every element and test n*g = 0
        let factors = g.invariant_factors();
        let mut found = false;
        let mut idx = vec![BigInt::zero(); factors.len()];
        'outer: loop {
            if idx.iter().any(|c| !c.is_zero())
                && idx
                    .iter()
                    .zip(factors)
                    .all(|(c, d)| (&n * c).mod_floor(d).is_zero())
            {
                found = true;
                break;
            }
            let mut i = 0;
            loop {
                if i == factors.len() {
                    break 'outer;
                }
                idx[i] += 1;
                if idx[i] < factors[i] {
                    break;
                }
                idx[i] = BigInt::zero();
                i += 1;
            }
        }
        ensure(
            g.has_n_torsion(&n) == found,
            format!("torsion mismatch for {g}, n = {n}"),
        )?;
        tested += 1;
    }
    Ok(())
}

fn check_polynomial_laws() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    for case in 0..60 {
        let m = rng.gen_range(1..=6);
        let mk = |rng: &mut ChaCha8Rng| {
            let coeffs: Vec<i64> = (0..=m).map(|_| rng.gen_range(-9..=9)).collect();
            TruncatedPoly::from_integers(Modulus::Integers, m, &coeffs)
        };
        let (f, g, h) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        ensure(
            f.mul(&g).unwrap() == g.mul(&f).unwrap(),
            format!("case {case}: multiplication not commutative"),
        )?;
        ensure(
            f.mul(&g).unwrap().mul(&h).unwrap() == f.mul(&g.mul(&h).unwrap()).unwrap(),
            format!("case {case}: multiplication not associative"),
        )?;
        let p = BigInt::from([2i64, 3, 4, 8][case % 4]);
        ensure(
            f.mul(&g).unwrap().reduce_mod_p(&p).unwrap()
                == f.reduce_mod_p(&p)
                    .unwrap()
                    .mul(&g.reduce_mod_p(&p).unwrap())
                    .unwrap(),
            format!("case {case}: reduction is not a ring map"),
        )?;
    }
    for case in 0..100 {
        let m = rng.gen_range(1..=10);
        let mut coeffs: Vec<i64> = (0..=m).map(|_| rng.gen_range(-9..=9)).collect();
        coeffs[0] = if case % 2 == 0 { 1 } else { -1 };
        let f = TruncatedPoly::from_integers(Modulus::Integers, m, &coeffs);
        let inv = f.unit_inverse().map_err(|e| e.to_string())?;
        ensure(
            f.mul(&inv).unwrap().is_one(),
            format!("case {case}: inverse fails"),
        )?;
    }
    Ok(())
}

fn check_virtual_oracle_agreement() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    for case in 0..120 {
        let m = rng.gen_range(1..=8);
        let ring = cpm_ring(m).unwrap();
        let coeffs: Vec<BigInt> = (0..m)
            .map(|_| BigInt::from(rng.gen_range(-9..=9)))
            .collect();
        let xi = ChernVector::from_cpm_coefficients(&ring, m, &coeffs).unwrap();
        let lines: Vec<LineBundle> = (0..rng.gen_range(0..=3))
            .map(|_| {
                LineBundle::from_cpm_degree(&ring, &BigInt::from(rng.gen_range(-9..=9))).unwrap()
            })
            .collect();
        for n in 0..=m {
            let a = virtual_chern(&ring, &xi, &lines, n).unwrap();
            let b = virtual_chern_oracle(&ring, &xi, &lines, n).unwrap();
            ensure(
                a == b,
                format!("case {case}: routes disagree at degree {n}"),
            )?;
        }
    }
    let ring = product_cpm_ring(2, 2).unwrap();
    for case in 0..20 {
        let m = ring.top_degree();
        let comps: Vec<Vec<BigInt>> = (1..=m)
            .map(|i| {
                (0..ring.group(i).generator_count())
                    .map(|_| BigInt::from(rng.gen_range(-6..=6)))
                    .collect()
            })
            .collect();
        let xi = ChernVector::new(&ring, m, comps).unwrap();
        let lines: Vec<LineBundle> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let c1 = ring
                    .element(
                        1,
                        vec![
                            BigInt::from(rng.gen_range(-4..=4)),
                            BigInt::from(rng.gen_range(-4..=4)),
                        ],
                    )
                    .unwrap();
                LineBundle::new(c1).unwrap()
            })
            .collect();
        for n in 0..=m {
            let a = virtual_chern(&ring, &xi, &lines, n).unwrap();
            let b = virtual_chern_oracle(&ring, &xi, &lines, n).unwrap();
            ensure(
                a == b,
                format!("product case {case}: routes disagree at degree {n}"),
            )?;
        }
    }
    Ok(())
}

fn check_schwarzenberger() -> Result<(), String> {
    for m in 1..=12usize {
        let c = TruncatedPoly::from_integers(Modulus::Integers, m, &[1, 1])
            .pow(m + 1)
            .unwrap();
        let report = schwarzenberger_check(&c, m).map_err(|e| e.to_string())?;
        ensure(report.passes, format!("tangent class fails at m = {m}"))?;
    }
    let c = TruncatedPoly::from_integers(Modulus::Integers, 3, &[1, 1, 1]);
    let report = schwarzenberger_check(&c, 3).map_err(|e| e.to_string())?;
    let (k, value) = report
        .first_failure
        .clone()
        .ok_or("negative example passed")?;
    ensure(
        !report.passes && k == 3 && value == num_rational::BigRational::new(1.into(), 2.into()),
        "negative example reports the wrong witness",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    for case in 0..30 {
        let m = rng.gen_range(1..=9);
        let roots: Vec<BigInt> = (0..m)
            .map(|_| BigInt::from(rng.gen_range(-9..=9)))
            .collect();
        let e = ElemSymVector::from_roots(&roots);
        for k in 1..=10 {
            ensure(
                binom_sum(&e, k).is_integer(),
                format!("case {case}: non-integral sum"),
            )?;
        }
    }
    Ok(())
}

fn check_steenrod() -> Result<(), String> {
    let sq = |exps: &[u32]| SqExpr::monomial(exps).unwrap();
    ensure(
        adem_reduce(&sq(&[2, 3])) == sq(&[5]).add(&sq(&[4, 1])),
        "Sq2 Sq3 wrong",
    )?;
    ensure(adem_reduce(&sq(&[3, 2])).is_zero(), "Sq3 Sq2 wrong")?;
    ensure(adem_reduce(&sq(&[2, 2])) == sq(&[3, 1]), "Sq2 Sq2 wrong")?;
    ensure(
        adem_reduce(&sq(&[2, 1, 2])) == sq(&[5]).add(&sq(&[4, 1])),
        "Sq2 Sq1 Sq2 wrong",
    )?;
    for m in 4..=12u32 {
        let got = sq_wu(1, m - 1).map_err(|e| e.to_string())?;
        let mut expect = BPolynomial::monomial(&[1, m - 1]);
        if m % 2 == 1 {
            expect = expect.add(&BPolynomial::generator(m));
        }
        ensure(got == expect, format!("Wu formula wrong at m = {m}"))?;
    }
    for m in [6u32, 8, 10, 12] {
        ensure(
            sq_stiefel(1, m - 3, m) == 1,
            format!("frame action wrong at even m = {m}"),
        )?;
    }
    for m in [5u32, 9, 13] {
        ensure(
            sq_stiefel(1, m - 3, m) == 0,
            format!("Sq2 action wrong at m = {m}"),
        )?;
        ensure(
            sq_stiefel(2, m - 3, m) == 1,
            format!("Sq4 action wrong at m = {m}"),
        )?;
    }
    for a in 1..=6usize {
        for b in 1..=6usize {
            ensure(
                sq2_cpm(a + b, 13) == (sq2_cpm(a, 13) + sq2_cpm(b, 13)) % 2,
                format!("Cartan fails at ({a}, {b})"),
            )?;
        }
    }
    Ok(())
}

fn check_tables() -> Result<(), String> {
    let report = verify_uct();
    let violations = report.violations();
    ensure(
        violations == 0,
        format!("{violations} universal-coefficient violations"),
    )?;
    for m in (6..=100usize).step_by(2) {
        let entry = pi_2m2(m).map_err(|e| e.to_string())?;
        let n = entry.n.ok_or("even m must define the torsion bound")?;
        ensure(
            n.clone() * entry.order == BigInt::from(12) && n > BigInt::zero(),
            format!("torsion bound broken at m = {m}"),
        )?;
    }
    for m in 5..=9usize {
        for r in [2usize, 3] {
            for index in 1..=2 * (m - r) {
                let e = stiefel_pi(m, r, index).map_err(|e| e.to_string())?;
                ensure(
                    e.value.is_trivial(),
                    format!("connectivity broken at pi_{index}(W({m},{r}))"),
                )?;
            }
        }
    }
    Ok(())
}

fn check_engine_goldens() -> Result<(), String> {
    // projective plane: the trivial line is obstructed by the Euler class
    let profile = profile_cpm(2);
    let line = LineBundle::trivial(&profile.ring);
    let xi =
        ChernVector::from_cpm_coefficients(&profile.ring, 2, &[BigInt::from(3), BigInt::from(3)])
            .unwrap();
    let problem = SplitProblem::new(profile, xi, vec![line]).map_err(|e| e.to_string())?;
    match decide(&problem) {
        Verdict::Obstructed {
            failing_index: 2,
            value,
            ..
        } if value.coords == vec![BigInt::from(3)] => {}
        other => return Err(format!("projective plane golden failed: {other:?}")),
    }

    // 3-space tangent bundle splits off the twisted line z = 2
    let profile = profile_cpm(3);
    let line = LineBundle::from_cpm_degree(&profile.ring, &BigInt::from(2)).unwrap();
    let xi = ChernVector::from_cpm_coefficients(
        &profile.ring,
        3,
        &[BigInt::from(4), BigInt::from(6), BigInt::from(4)],
    )
    .unwrap();
    let problem = SplitProblem::new(profile, xi, vec![line]).map_err(|e| e.to_string())?;
    match decide(&problem) {
        Verdict::Splits { certificate, .. } => {
            let coeffs: Vec<BigInt> = certificate.iter().map(|c| c.coords[0].clone()).collect();
            ensure(
                coeffs == vec![BigInt::one(), BigInt::from(2), BigInt::from(2)],
                "certificate mismatch for the twisted line",
            )?;
        }
        other => return Err(format!("tangent splitting golden failed: {other:?}")),
    }

    // range gate: three lines need m at least 6 when m is even
    let profile = profile_cpm(4);
    let lines = vec![LineBundle::trivial(&profile.ring); 3];
    let xi = ChernVector::trivial(&profile.ring, 4);
    let problem = SplitProblem::new(profile, xi, lines).map_err(|e| e.to_string())?;
    match decide(&problem) {
        Verdict::HypothesesNotMet { .. } => Ok(()),
        other => Err(format!("range gate golden failed: {other:?}")),
    }
}

fn check_enumeration_determinism() -> Result<(), String> {
    let a = enumerate_split_chern(2, 1, 2, 2).map_err(|e| e.to_string())?;
    let b = enumerate_split_chern(2, 1, 2, 2).map_err(|e| e.to_string())?;
    ensure(a == b, "enumeration differs across runs")?;
    ensure(
        !a.is_empty(),
        "enumeration found nothing in a box that contains solutions",
    )
}

/// Runs the whole suite and reports per-check outcomes.
pub fn run() -> SelftestReport {
    let mut report = SelftestReport::default();
    report.record("smith-normal-form", check_smith_normal_form());
    report.record("torsion-enumeration", check_torsion_against_enumeration());
    report.record("polynomial-laws", check_polynomial_laws());
    report.record("virtual-chern-oracle", check_virtual_oracle_agreement());
    report.record("schwarzenberger", check_schwarzenberger());
    report.record("steenrod", check_steenrod());
    report.record("tables-uct", check_tables());
    report.record("engine-goldens", check_engine_goldens());
    report.record("enumeration-determinism", check_enumeration_determinism());
    report
}
