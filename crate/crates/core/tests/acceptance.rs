//! One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use wordtrace::classify::{class_l2_euler, incompressible_classes};
use wordtrace::haar::{compare, estimate, sample_unitary};
use wordtrace::ratfunc::RationalFunction;
use wordtrace::surface::DEFAULT_BUDGET;
use wordtrace::symgrp::{all_permutations, Partition};
use wordtrace::trace::{chi_max, commutator_length, scl_upper, trace_laurent, trace_rational};
use wordtrace::weingarten::{wg, wg_perm, wg_table, DEFAULT_ORACLE_CAP};
use wordtrace::words::{parse, parse_word, WordTuple};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn poly(coeffs: &[i64]) -> RationalFunction {
    coeffs.iter().enumerate().map(|(i, &c)| &RationalFunction::integer(c) * &RationalFunction::n_pow(i as i64)).sum()
}

/// `num / den`, both given by ascending integer coefficients.
fn frac(num: &[i64], den: &[i64]) -> RationalFunction {
    (&poly(num) / &poly(den)).unwrap()
}

fn tuple(s: &str) -> WordTuple {
    parse(s).unwrap()
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:.2?}, limit {limit:?}"));
    }
    Ok(out)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Golden moments as exact rational functions, each under one second.
const TABLE: &[(&str, &[i64], &[i64])] = &[
    ("[x,y]", &[1], &[0, 1]),
    ("[x^3,y]", &[3], &[0, 1]),
    ("[x,y]^2", &[-4], &[0, -1, 0, 1]),
    ("[x,y]^3", &[36, 0, 9], &[0, 4, 0, -5, 0, 1]),
    ("[x,y][x,z]", &[0], &[1]),
    ("[x,y][x,z][x,t]", &[0], &[1]),
    ("x^2y^2, xy^-3x^-3y", &[-20, 0, 4], &[4, 0, -5, 0, 1]),
    ("x^2yxy^-1, yx^-1y^-1x^-2", &[1], &[1]),
    ("x^2y^2xy^-1, yx^-1y^-2x^-2", &[0, 0, -5, 0, 1], &[4, 0, -5, 0, 1]),
];

fn criterion_1() -> Outcome {
    for (s, num, den) in TABLE {
        let t = tuple(s);
        let got = timed(Duration::from_secs(1), s, || trace_rational(&t).value)?;
        let want = frac(num, den);
        ensure(got == want, || format!("{s}: got {got}, want {want}"))?;
    }
    Ok(format!("{} tuples", TABLE.len()))
}

fn criterion_2() -> Outcome {
    let cls = |s: &str| s.parse::<Partition>().unwrap();
    let golden = [
        (2, "1,1", frac(&[1], &[-1, 0, 1])),
        (2, "2", frac(&[-1], &[0, -1, 0, 1])),
        (3, "1,1,1", frac(&[-2, 0, 1], &[0, 4, 0, -5, 0, 1])),
        (3, "2,1", frac(&[-1], &[4, 0, -5, 0, 1])),
        (3, "3", frac(&[2], &[0, 4, 0, -5, 0, 1])),
    ];
    for (size, c, want) in &golden {
        let got = wg(*size, &cls(c)).map_err(|e| e.to_string())?;
        ensure(&got == want, || format!("Wg_{size}({c}) = {got}, want {want}"))?;
    }
    let checked = timed(Duration::from_secs(30), "characters vs inversion for L = 1..4", || {
        let mut checked = 0;
        for size in 1..=4 {
            let table = wg_table(size, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
            for p in all_permutations(size) {
                let by_chars = wg_perm(&p);
                if *table.get(&p) != by_chars {
                    return Err(format!("Wg_{size}({p}): inversion {} vs characters {by_chars}", table.get(&p)));
                }
                checked += 1;
            }
        }
        Ok(checked)
    })??;
    Ok(format!("{} golden classes, {checked} permutations two ways", golden.len()))
}

fn criterion_3() -> Outcome {
    let tuples = ["[x,y]", "[x,y]^2", "x, x^-1", "xy, y^-1x^-1"];
    timed(Duration::from_secs(60), "dual formula", || {
        for s in tuples {
            let t = tuple(s);
            let direct = trace_laurent(&t, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let expanded = trace_rational(&t).value.laurent(direct.floor());
            ensure(direct == expanded, || format!("{s}: enumeration {direct} vs expansion {expanded}"))?;
        }
        Ok(format!("{} tuples at depth 2", tuples.len()))
    })?
}

/// Golden Laurent columns: `(tuple, [(exponent, coefficient)])`, down to the
/// last listed exponent.
const COLUMNS: &[(&str, &[(i64, i64)])] = &[
    ("[x,y]", &[(-1, 1)]),
    ("[x^3,y]", &[(-1, 3)]),
    ("[x,y]^2", &[(-3, -4), (-5, -4), (-7, -4)]),
    ("[x,y]^3", &[(-3, 9), (-5, 81), (-7, 369)]),
    ("[x,y][x,z]", &[]),
    ("[x,y][x,z][x,t]", &[]),
    ("x^2y^2, xy^-3x^-3y", &[(-2, 4), (-4, 0), (-6, -16), (-8, -80)]),
    ("x^2yxy^-1, yx^-1y^-1x^-2", &[(0, 1)]),
    ("x^2y^2xy^-1, yx^-1y^-2x^-2", &[(0, 1), (-2, 0), (-4, -4), (-6, -20)]),
];

fn criterion_4() -> Outcome {
    for (s, column) in COLUMNS {
        let floor = column.last().map_or(-10, |(e, _)| *e);
        let series = trace_rational(&tuple(s)).value.laurent(floor);
        for e in floor..=2 {
            let want = column.iter().find(|(f, _)| *f == e).map_or(0, |(_, c)| *c);
            let got = series.coeff(e);
            ensure(got == BigRational::from_integer(BigInt::from(want)), || {
                format!("{s}: coefficient of n^{e} is {got}, want {want}")
            })?;
        }
    }
    Ok(format!("{} columns", COLUMNS.len()))
}

fn criterion_5() -> Outcome {
    let expected = [("[x,y]", 1, -1), ("[x^3,y]", 3, -1), ("[x,y]^3", 9, -3), ("x^2yxy^-1, yx^-1y^-1x^-2", 1, 0)];
    timed(Duration::from_secs(60), "classification", || {
        for (s, count, chi) in expected {
            let classes = incompressible_classes(&tuple(s), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let at: Vec<_> = classes.iter().filter(|c| c.chi == chi).collect();
            ensure(at.len() == count && at.len() == classes.len(), || {
                let chis: Vec<i64> = classes.iter().map(|c| c.chi).collect();
                format!("{s}: classes at chi {chis:?}, want {count} at {chi}")
            })?;
        }
        Ok(format!("{} tuples", expected.len()))
    })?
}

fn top_class_sum(t: &WordTuple) -> Result<(i64, i64), String> {
    let top = chi_max(t).ok_or("unbalanced")?;
    let classes = incompressible_classes(t, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mut sum = 0;
    for c in classes.iter().filter(|c| c.chi == top) {
        sum += class_l2_euler(t, c, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    }
    Ok((top, sum))
}

fn criterion_6() -> Outcome {
    for (s, want) in [("[x,y]", 1), ("[x,y]^2", -4), ("[x,y][x,z]", 0), ("[x,y][x,z][x,t]", 0)] {
        let t = tuple(s);
        let classes = incompressible_classes(&t, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let top = chi_max(&t).unwrap();
        let values: Vec<i64> = classes
            .iter()
            .filter(|c| c.chi == top)
            .map(|c| class_l2_euler(&t, c, DEFAULT_BUDGET).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(values == [want], || format!("{s}: top class values {values:?}, want [{want}]"))?;
    }
    for (s, _, _) in TABLE {
        let t = tuple(s);
        let (top, sum) = top_class_sum(&t)?;
        let coeff = trace_rational(&t).value.laurent(top).coeff(top);
        ensure(coeff == BigRational::from_integer(sum.into()), || {
            format!("{s}: classes sum to {sum}, coefficient of n^{top} is {coeff}")
        })?;
    }
    Ok(format!("4 class values, leading identity on {} tuples", TABLE.len()))
}

fn criterion_7() -> Outcome {
    for (s, want) in [("[x,y]^3", 2), ("[x,y]^2", 2), ("[x,y][x,z][x,t]", 3)] {
        let cl = commutator_length(&parse_word(s).unwrap(), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(cl == want, || format!("cl({s}) = {cl}, want {want}"))?;
    }
    let b = scl_upper(&parse_word("[x,y]").unwrap(), 1, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let half = BigRational::new(1.into(), 2.into());
    ensure(b.value == half, || format!("scl_upper([x,y], 1, 3) = {}, want 1/2", b.value))?;
    Ok("cl ×3, scl ×1".into())
}

fn runner() -> TestRunner {
    let config = Config { cases: common::CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn suite<S: Strategy>(name: &str, strategy: S, check: impl Fn(S::Value) -> common::Check) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    match runner().run(&strategy, check) {
        Ok(()) => Ok(()),
        Err(TestError::Fail(why, input)) => Err(format!("{name}: {why} on {input:?}")),
        Err(TestError::Abort(why)) => Err(format!("{name}: aborted: {why}")),
    }
}

fn criterion_8() -> Outcome {
    use common::*;
    suite("unbalanced ⇒ 0", unbalanced(), |t| unbalanced_vanishes(&t))?;
    suite("parity", balanced(), |t| parity(&t))?;
    suite("tuple permutation", (balanced(), 0usize..3), |(t, k)| tuple_permutation(&t, k))?;
    suite("cyclic rotation", (balanced(), 0usize..3, 0usize..6), |(t, i, k)| cyclic_rotation(&t, i, k))?;
    suite("global inversion", balanced(), |t| global_inversion(&t))?;
    suite("Nielsen move", balanced(), |t| nielsen_move(&t))?;
    suite("relabeling", (balanced(), generator_permutation()), |(t, p)| relabeling(&t, &p))?;
    suite("chi two ways", (balanced(), matching_choice()), |(t, (k, p))| chi_two_ways(&t, &k, &p))?;
    suite("z-discs", (balanced(), matching_choice()), |(t, (k, p))| z_discs_are_cycles(&t, &k, &p))?;
    suite("degree ≤ chi_max", balanced(), |t| degree_bound(&t))?;
    suite("enumeration vs expansion", balanced(), |t| enumeration_matches_expansion(&t))?;
    Ok(format!("11 suites × {} cases", common::CASES))
}

fn max_dev(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn criterion_9() -> Outcome {
    let gates = [("[x,y]", 8, 11u64), ("[x,y]^2", 6, 12), ("x^2yxy^-1, yx^-1y^-1x^-2", 6, 13)];
    let zs = timed(Duration::from_secs(120), "Monte-Carlo gates", || {
        let mut zs = Vec::new();
        for (s, n, seed) in gates {
            let t = tuple(s);
            let e = estimate(&t, n, 100_000, seed).map_err(|e| e.to_string())?;
            let z = compare(&e, &trace_rational(&t).value).map_err(|e| e.to_string())?;
            ensure(z.abs() <= 5.0, || format!("{s} at n = {n}: z = {z:.3} (mean {} ± {})", e.mean, e.stderr))?;
            ensure(e.residual <= 5.0 * e.stderr, || format!("{s}: imaginary residual {}", e.residual))?;
            zs.push(format!("{z:.2}"));
        }
        Ok::<_, String>(zs)
    })??;
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for n in 1..=8 {
        for _ in 0..50 {
            let u = sample_unitary(n, &mut rng);
            let dev = max_dev(&(u.adjoint() * &u), &DMatrix::identity(n, n));
            ensure(dev < 1e-10, || format!("unitarity defect {dev:e} at n = {n}"))?;
            let det = (u.determinant().norm() - 1.0).abs();
            ensure(det < 1e-10, || format!("|det| defect {det:e} at n = {n}"))?;
        }
    }
    let t = tuple("[x,y]^2");
    let with = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| estimate(&t, 4, 2_000, 7).unwrap())
    };
    let (a, b) = (with(1), with(3));
    let same = [(a.mean, b.mean), (a.stderr, b.stderr), (a.residual, b.residual)]
        .iter()
        .all(|(x, y)| x.to_bits() == y.to_bits());
    ensure(same, || format!("1 vs 3 threads differ: {a:?} vs {b:?}"))?;
    Ok(format!("z = [{}], unitarity and determinism exact", zs.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden rational functions", criterion_1),
        ("Weingarten values and two-way tables", criterion_2),
        ("enumeration vs expansion", criterion_3),
        ("golden Laurent columns", criterion_4),
        ("incompressible class counts", criterion_5),
        ("L2-Euler values and leading coefficient", criterion_6),
        ("cl and scl", criterion_7),
        ("property suites", criterion_8),
        ("Monte-Carlo gates", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {} PASS  {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
