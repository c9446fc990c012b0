//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pspan::algebra::{smith_normal_form, AbelianGroup, IntMatrix};
use pspan::chern::{virtual_chern, virtual_chern_oracle, ChernVector, LineBundle};
use pspan::engine::{
    decide, primary_obstruction, profile_cpm, CoeffSys, ProfileFlags, SpaceProfile, SplitProblem,
    Verdict,
};
use pspan::ring::{cpm_ring, Modulus, RingProfile, TruncatedPoly};
use pspan::steenrod::{adem_reduce, sq_stiefel, sq_wu, BPolynomial, SqExpr};
use pspan::symfun::schwarzenberger_check;
use pspan::tables::{pi_2m2, verify_uct};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn criterion(n: usize, what: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("PASS criterion {n}: {what}"),
        Err(e) => {
            println!("FAIL criterion {n}: {what}: {e}");
            panic!("criterion {n} failed: {e}");
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

fn tangent_class(m: usize) -> Vec<BigInt> {
    let c = TruncatedPoly::from_integers(Modulus::Integers, m, &[1, 1])
        .pow(m + 1)
        .unwrap();
    (1..=m).map(|k| c.coefficient(k).to_integer()).collect()
}

fn cpm_problem(m: usize, xi: &[BigInt], lines: &[i64]) -> SplitProblem {
    let profile = profile_cpm(m);
    let xi = ChernVector::from_cpm_coefficients(&profile.ring, m, xi).unwrap();
    let lines = lines
        .iter()
        .map(|&z| LineBundle::from_cpm_degree(&profile.ring, &big(z)).unwrap())
        .collect();
    SplitProblem::new(profile, xi, lines).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    criterion(
        1,
        "virtual Chern classes agree with the inverse-product oracle",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(20_001);
            let mut instances = 0;
            while instances < 220 {
                let m = rng.gen_range(1..=8);
                let ring = cpm_ring(m).unwrap();
                let coeffs: Vec<BigInt> = (0..m).map(|_| big(rng.gen_range(-9..=9))).collect();
                let xi = ChernVector::from_cpm_coefficients(&ring, m, &coeffs).unwrap();
                let r = rng.gen_range(0..=3usize);
                let lines: Vec<LineBundle> = (0..r)
                    .map(|_| {
                        LineBundle::from_cpm_degree(&ring, &big(rng.gen_range(-9..=9))).unwrap()
                    })
                    .collect();
                for n in 0..=m {
                    let a = virtual_chern(&ring, &xi, &lines, n).unwrap();
                    let b = virtual_chern_oracle(&ring, &xi, &lines, n).unwrap();
                    ensure(
                        a == b,
                        format!("disagreement at m={m}, n={n}, coeffs={coeffs:?}"),
                    )?;
                }
                instances += 1;
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_2_schwarzenberger_positives() {
    criterion(
        2,
        "tangent and integer-root classes pass the integrality test",
        (|| {
            for m in 1..=20usize {
                let c = TruncatedPoly::from_integers(Modulus::Integers, m, &[1, 1])
                    .pow(m + 1)
                    .unwrap();
                let report = schwarzenberger_check(&c, m).map_err(|e| e.to_string())?;
                ensure(report.passes, format!("tangent class rejected at m = {m}"))?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(20_002);
            for case in 0..100 {
                let m = rng.gen_range(1..=10);
                let mut c = TruncatedPoly::one(Modulus::Integers, m);
                for _ in 0..m {
                    let z = big(rng.gen_range(-9..=9));
                    c = c
                        .mul(&TruncatedPoly::line_factor(Modulus::Integers, m, &z))
                        .unwrap();
                }
                let report = schwarzenberger_check(&c, m).map_err(|e| e.to_string())?;
                ensure(
                    report.passes,
                    format!("integer-root class rejected, case {case}"),
                )?;
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_3_schwarzenberger_negative() {
    criterion(
        3,
        "1 + u + u^2 over CP^3 fails at k = 3 with value 1/2",
        (|| {
            let c = TruncatedPoly::from_integers(Modulus::Integers, 3, &[1, 1, 1]);
            let report = schwarzenberger_check(&c, 3).map_err(|e| e.to_string())?;
            ensure(!report.passes, "negative class accepted")?;
            let (k, value) = report.first_failure.ok_or("no failure witness")?;
            ensure(k == 3, format!("first failing k = {k}, expected 3"))?;
            ensure(
                value == BigRational::new(big(1), big(2)),
                format!("witness value {value}, expected 1/2"),
            )
        })(),
    );
}

#[test]
fn criterion_4_cp3_projective_span() {
    criterion(
        4,
        "projective 3-space: one twisted line splits, no pair does",
        (|| {
            // the tangent bundle splits off the line with z = 2
            let problem = cpm_problem(3, &tangent_class(3), &[2]);
            match decide(&problem) {
                Verdict::Splits { certificate, .. } => {
                    let coeffs: Vec<BigInt> =
                        certificate.iter().map(|c| c.coords[0].clone()).collect();
                    ensure(
                        coeffs == vec![big(1), big(2), big(2)],
                        format!("wrong certificate {coeffs:?}"),
                    )?;
                }
                other => return Err(format!("expected a splitting, got {other:?}")),
            }
            // no pair of lines with |z| <= 10 splits off
            for a in -10i64..=10 {
                for b in -10i64..=10 {
                    let problem = cpm_problem(3, &tangent_class(3), &[a, b]);
                    match decide(&problem) {
                        Verdict::Obstructed { .. } => {}
                        other => {
                            return Err(format!("pair ({a}, {b}) gave {other:?}"));
                        }
                    }
                }
            }
            // the primary obstruction for the (u, u) pair is the nonzero
            // class u^2
            let problem = cpm_problem(3, &tangent_class(3), &[1, 1]);
            let ob = primary_obstruction(&problem).map_err(|e| e.to_string())?;
            ensure(ob.degree == 2, format!("obstruction degree {}", ob.degree))?;
            ensure(
                ob.coords == vec![big(1)],
                format!("obstruction value {:?}", ob.coords),
            )?;
            // and over CP^5 the tangent bundle loses its twisted line at the
            // top class: c_5((1+u)^6 / (1+2u)) = 0
            let ring5 = cpm_ring(5).unwrap();
            let xi5 = ChernVector::from_cpm_coefficients(&ring5, 5, &tangent_class(5)).unwrap();
            let line5 = LineBundle::from_cpm_degree(&ring5, &big(2)).unwrap();
            let c5 = virtual_chern(&ring5, &xi5, std::slice::from_ref(&line5), 5).unwrap();
            ensure(c5.is_zero(), format!("c_5 virtual = {:?}", c5.coords))
        })(),
    );
}

#[test]
fn criterion_5_euler_gate() {
    criterion(
        5,
        "no single line splits off the tangent bundle of CP^2 or CP^4",
        (|| {
            for m in [2usize, 4] {
                let ring = cpm_ring(m).unwrap();
                let xi = ChernVector::from_cpm_coefficients(&ring, m, &tangent_class(m)).unwrap();
                for z in -50i64..=50 {
                    let line = LineBundle::from_cpm_degree(&ring, &big(z)).unwrap();
                    let top = virtual_chern(&ring, &xi, std::slice::from_ref(&line), m).unwrap();
                    ensure(
                        !top.is_zero(),
                        format!("m = {m}: z = {z} kills the top class"),
                    )?;
                    if m == 2 {
                        // the box search is just the quadratic 3 - 3z + z^2
                        let q = big(3) - big(3) * big(z) + big(z) * big(z);
                        ensure(top.coords == vec![q], "quadratic disagreement")?;
                    }
                }
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_6_steenrod_suite() {
    criterion(
        6,
        "Adem relations, Wu formula, and the frame-manifold action",
        (|| {
            let sq = |e: &[u32]| SqExpr::monomial(e).unwrap();
            ensure(
                adem_reduce(&sq(&[2, 3])) == sq(&[5]).add(&sq(&[4, 1])),
                "Sq^2 Sq^3 != Sq^5 + Sq^4 Sq^1",
            )?;
            ensure(adem_reduce(&sq(&[3, 2])).is_zero(), "Sq^3 Sq^2 != 0")?;
            ensure(
                adem_reduce(&sq(&[2, 2])) == sq(&[3, 1]),
                "Sq^2 Sq^2 != Sq^3 Sq^1",
            )?;
            ensure(
                adem_reduce(&sq(&[2, 1, 2])) == sq(&[5]).add(&sq(&[4, 1])),
                "Sq^2 Sq^1 Sq^2 != Sq^5 + Sq^4 Sq^1",
            )?;
            for m in 4..=12u32 {
                let got = sq_wu(1, m - 1).map_err(|e| e.to_string())?;
                let mut expect = BPolynomial::monomial(&[1, m - 1]);
                if m % 2 == 1 {
                    expect = expect.add(&BPolynomial::generator(m));
                }
                ensure(got == expect, format!("Wu value wrong at m = {m}"))?;
            }
            for m in (6..=12u32).step_by(2) {
                ensure(
                    sq_stiefel(1, m - 3, m) == 1,
                    format!("Sq^2 f wrong, even m = {m}"),
                )?;
            }
            for m in [5u32, 9, 13] {
                ensure(
                    sq_stiefel(1, m - 3, m) == 0,
                    format!("Sq^2 f wrong, m = {m}"),
                )?;
                ensure(
                    sq_stiefel(2, m - 3, m) == 1,
                    format!("Sq^4 f wrong, m = {m}"),
                )?;
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_7_table_validation() {
    criterion(
        7,
        "universal-coefficient replay and the 12/|pi| bound",
        (|| {
            let report = verify_uct();
            let violations: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.ok)
                .map(|c| c.description.clone())
                .collect();
            ensure(violations.is_empty(), format!("violations: {violations:?}"))?;
            for m in (6..=100usize).step_by(2) {
                let entry = pi_2m2(m).map_err(|e| e.to_string())?;
                let n = entry.n.ok_or(format!("no bound at m = {m}"))?;
                ensure(n > BigInt::zero(), format!("bound not positive at m = {m}"))?;
                ensure(
                    n * entry.order == big(12),
                    format!("order does not divide 12 at m = {m}"),
                )?;
            }
            Ok(())
        })(),
    );
}

/// Profile with m = 3, top integral group Z/2 fully covered by the
/// Bockstein composite out of H^3.
fn surjective_two_line_profile() -> SpaceProfile {
    let groups = vec![
        AbelianGroup::integers(1),
        AbelianGroup::integers(1),
        AbelianGroup::integers(1),
        AbelianGroup::cyclic(2),
    ];
    let ring = RingProfile::new(3, groups, BTreeMap::new(), None).unwrap();
    let mut p = SpaceProfile::new(ring, ProfileFlags::default());
    for d in [1usize, 3, 5] {
        p.cohomology.insert(
            (d, CoeffSys::Integral),
            AbelianGroup::integers(usize::from(d == 3)),
        );
    }
    for d in 0..=6usize {
        let mod2 = if d % 2 == 0 || d == 3 || d == 5 {
            AbelianGroup::cyclic(2)
        } else {
            AbelianGroup::trivial()
        };
        p.cohomology.insert((d, CoeffSys::Mod2), mod2);
        p.cohomology
            .insert((d, CoeffSys::Mod4), AbelianGroup::trivial());
    }
    p.rho2.insert(3, IntMatrix::from_i64(1, 1, &[1]));
    p.sq2.insert(3, IntMatrix::from_i64(1, 1, &[1]));
    p.bockstein.insert(5, IntMatrix::from_i64(1, 1, &[1]));
    p.validate().unwrap();
    p
}

/// Profile with m = 6 whose degree-(2m-2) integral group Z/2 is covered
/// by the Bockstein composite out of H^7, so the partial three-line
/// route applies.
fn partial_three_line_profile() -> SpaceProfile {
    let mut groups = vec![AbelianGroup::integers(1); 7];
    groups[5] = AbelianGroup::cyclic(2); // H^10(X; Z)
    let ring = RingProfile::new(6, groups, BTreeMap::new(), None).unwrap();
    let mut p = SpaceProfile::new(ring, ProfileFlags::default());
    for d in (1..=11usize).step_by(2) {
        p.cohomology.insert(
            (d, CoeffSys::Integral),
            AbelianGroup::integers(usize::from(d == 7)),
        );
    }
    for d in 0..=12usize {
        let mod2 = if d % 2 == 0 || d == 7 || d == 9 {
            AbelianGroup::cyclic(2)
        } else {
            AbelianGroup::trivial()
        };
        p.cohomology.insert((d, CoeffSys::Mod2), mod2);
        p.cohomology
            .insert((d, CoeffSys::Mod4), AbelianGroup::trivial());
    }
    p.rho2.insert(7, IntMatrix::from_i64(1, 1, &[1]));
    p.sq2.insert(7, IntMatrix::from_i64(1, 1, &[1]));
    p.bockstein.insert(9, IntMatrix::from_i64(1, 1, &[1]));
    p.validate().unwrap();
    p
}

#[test]
fn criterion_8_routing_cells() {
    criterion(
        8,
        "each routing cell selects its theorem, bullets, and indices",
        (|| {
            // r = 1: the single top class
            let problem = cpm_problem(3, &[big(0), big(0), big(0)], &[0]);
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(route.to_string() == "one-line", format!("route {route}"))?;
                    ensure(
                        checked_indices == vec![3],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(conditions.is_empty(), "one-line route has no hypotheses")?;
                }
                other => return Err(format!("r=1 cell: {other:?}")),
            }

            // r = 2, m odd, generic: {m, m-1} under the no-2-torsion bullet
            let problem = cpm_problem(3, &[big(0), big(-1), big(0)], &[1, -1]);
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(
                        route.to_string() == "two-lines-odd-torsion-free",
                        format!("route {route}"),
                    )?;
                    ensure(
                        checked_indices == vec![3, 2],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(
                        conditions == vec!["no-2-torsion-h6".to_string()],
                        format!("conditions {conditions:?}"),
                    )?;
                }
                other => return Err(format!("r=2 odd cell: {other:?}")),
            }

            // r = 2, m even: the three bullets, {m, m-1}
            let problem = cpm_problem(4, &[big(0), big(-1), big(0), big(0)], &[1, -1]);
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(
                        route.to_string() == "two-lines-even",
                        format!("route {route}"),
                    )?;
                    ensure(
                        checked_indices == vec![4, 3],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(
                        conditions
                            == vec![
                                "sq2-rho2-onto-h7-mod2".to_string(),
                                "sq2-onto-h8-mod2".to_string(),
                                "no-2-torsion-h8".to_string(),
                            ],
                        format!("conditions {conditions:?}"),
                    )?;
                }
                other => return Err(format!("r=2 even cell: {other:?}")),
            }

            // r = 2, m odd with the surjective Bockstein composite: {m-1} only
            let p = surjective_two_line_profile();
            let ring = p.ring.clone();
            let xi =
                ChernVector::new(&ring, 3, vec![vec![big(1)], vec![big(0)], vec![big(0)]]).unwrap();
            let lines = vec![LineBundle::trivial(&ring), LineBundle::trivial(&ring)];
            let problem = SplitProblem::new(p, xi, lines).unwrap();
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(
                        route.to_string() == "two-lines-odd-surjective",
                        format!("route {route}"),
                    )?;
                    ensure(
                        checked_indices == vec![2],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(
                        conditions == vec!["delta-sq2-rho2-onto-h6".to_string()],
                        format!("conditions {conditions:?}"),
                    )?;
                }
                other => return Err(format!("surjective r=2 cell: {other:?}")),
            }

            // r = 3, m even, partial route: {m, m-2} under bullets (i)-(iii)
            let p = partial_three_line_profile();
            let ring = p.ring.clone();
            let xi = ChernVector::trivial(&ring, 6);
            let lines = vec![LineBundle::trivial(&ring); 3];
            let problem = SplitProblem::new(p, xi, lines).unwrap();
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(
                        route.to_string() == "three-lines-even-partial",
                        format!("route {route}"),
                    )?;
                    ensure(
                        checked_indices == vec![6, 4],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(
                        conditions
                            == vec![
                                "delta-sq2-rho2-onto-h10".to_string(),
                                "mod8-vanishing".to_string(),
                                "no-12-over-pi-torsion".to_string(),
                            ],
                        format!("conditions {conditions:?}"),
                    )?;
                }
                other => return Err(format!("partial r=3 cell: {other:?}")),
            }

            // r = 3, m even, full route: {m, m-1, m-2}
            let problem = cpm_problem(
                6,
                &[big(2), big(-1), big(-2), big(0), big(0), big(0)],
                &[1, -1, 2],
            );
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(
                        route.to_string() == "three-lines-even-full",
                        format!("route {route}"),
                    )?;
                    ensure(
                        checked_indices == vec![6, 5, 4],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(
                        conditions
                            == vec![
                                "no-2-torsion-h10".to_string(),
                                "mod8-vanishing".to_string(),
                                "no-12-over-pi-torsion".to_string(),
                            ],
                        format!("conditions {conditions:?}"),
                    )?;
                }
                other => return Err(format!("full r=3 even cell: {other:?}")),
            }

            // r = 3, m odd: the five bullets, {m, m-1, m-2}
            let problem = cpm_problem(5, &[big(2), big(-1), big(-2), big(0), big(0)], &[1, -1, 2]);
            match decide(&problem) {
                Verdict::Splits {
                    route,
                    checked_indices,
                    conditions,
                    ..
                } => {
                    ensure(
                        route.to_string() == "three-lines-odd",
                        format!("route {route}"),
                    )?;
                    ensure(
                        checked_indices == vec![5, 4, 3],
                        format!("indices {checked_indices:?}"),
                    )?;
                    ensure(
                        conditions
                            == vec![
                                "sq2-rho2-onto-h7-mod2".to_string(),
                                "sq2-onto-h8-mod2".to_string(),
                                "no-2-torsion-h8".to_string(),
                                "finite-no-2-torsion-h9".to_string(),
                                "torsion-free-h10".to_string(),
                            ],
                        format!("conditions {conditions:?}"),
                    )?;
                }
                other => return Err(format!("r=3 odd cell: {other:?}")),
            }
            Ok(())
        })(),
    );
}

/// Every isomorphism class of finite abelian group of order at most
/// `bound`, as a divisibility chain of invariant factors.
fn groups_of_order_at_most(bound: i64) -> Vec<Vec<i64>> {
    fn extend(chain: &mut Vec<i64>, product: i64, bound: i64, out: &mut Vec<Vec<i64>>) {
        out.push(chain.clone());
        // the next factor is a multiple of the last one
        let (mut d, step) = match chain.last() {
            Some(&last) => (last, last),
            None => (2, 1),
        };
        while product * d <= bound {
            chain.push(d);
            extend(chain, product * d, bound, out);
            chain.pop();
            d += step;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, bound, &mut out);
    out
}

#[test]
fn criterion_9_group_suite() {
    criterion(
        9,
        "Smith normal forms verify exactly; torsion matches enumeration",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(20_009);
            for case in 0..200 {
                let rows = rng.gen_range(1..=6);
                let cols = rng.gen_range(1..=6);
                let entries: Vec<BigInt> = (0..rows * cols)
                    .map(|_| big(rng.gen_range(-20..=20)))
                    .collect();
                let a = IntMatrix::new(rows, cols, entries);
                let snf = smith_normal_form(&a);
                ensure(snf.d.is_diagonal(), format!("case {case}: not diagonal"))?;
                let diag = snf.invariant_diagonal();
                for w in diag.windows(2) {
                    ensure(
                        (&w[1] % &w[0]).is_zero(),
                        format!("case {case}: broken divisibility chain {diag:?}"),
                    )?;
                }
                ensure(
                    snf.u.det().abs().is_one(),
                    format!("case {case}: u not unimodular"),
                )?;
                ensure(
                    snf.v.det().abs().is_one(),
                    format!("case {case}: v not unimodular"),
                )?;
                ensure(
                    snf.u.mul(&a).mul(&snf.v) == snf.d,
                    format!("case {case}: reassembly fails"),
                )?;
            }

            // torsion against brute-force element enumeration for every
            // abelian group of order <= 200
            let groups = groups_of_order_at_most(200);
            ensure(
                groups.len() > 100,
                "group enumeration is suspiciously small",
            )?;
            for factors in &groups {
                let g = AbelianGroup::from_orders_i64(0, factors);
                for n in 1..=16i64 {
                    let mut found = false;
                    let mut idx = vec![0i64; factors.len()];
                    'outer: loop {
                        if idx.iter().any(|&c| c != 0)
                            && idx.iter().zip(factors).all(|(&c, &d)| (n * c) % d == 0)
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
                            idx[i] = 0;
                            i += 1;
                        }
                    }
                    ensure(
                        g.has_n_torsion(&big(n)) == found,
                        format!("torsion mismatch: {factors:?}, n = {n}"),
                    )?;
                }
            }
            Ok(())
        })(),
    );
}
