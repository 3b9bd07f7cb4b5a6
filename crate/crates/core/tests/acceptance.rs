//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Tolerances are pinned below.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use young::density::{composition_approximant, power_approximant};
use young::fixed_b::{c_b, diameter_check, member_fixed, order_witness, scale_to_b, FnRoster};
use young::lpspace::{
    asymptotic_slope, decompose, min_scaling, norm_identity, sandwich_check, stress_roster,
    tail_identity, DiscreteMeasureSpace, MeasurableFn, ScalingWindow,
};
use young::quad::{integrate_mu, Verdict};
use young::scalar::{linear_grid, log_grid};
use young::ymetric::{density_level, density_level_numeric, metric_d, Membership};
use young::{Expr, Weights};

const TOL: f64 = 1e-10;
const QUAD_GOLDEN_ABS: f64 = 1e-8;
const TRIANGLE_SLACK: f64 = 1e-9;
const SCALED_PAIR_REL: f64 = 1e-8;
const DIAMETER_SLACK: f64 = 1e-6;
const LEVEL_ABS: f64 = 1e-6;
const FINAL_DISTANCE: f64 = 0.05;
const HALVING_RATIO: f64 = 0.7;
const SANDWICH_LOWER_ABS: f64 = 1e-12;
const NORM_WITNESS_REL: f64 = 1e-9;
const RAW_PAIR_ABS: f64 = 1e-3;
const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn catalog() -> Vec<Expr> {
    let w = Weights::new(vec![0.3, 0.7]).unwrap();
    vec![
        Expr::id(),
        Expr::log1p(),
        Expr::power(0.5).unwrap(),
        Expr::power(0.25).unwrap(),
        Expr::id_plus_soft(1.0).unwrap(),
        Expr::id_plus_soft(5.0).unwrap(),
        Expr::log1p().power_of(0.5).unwrap(),
        Expr::compose(Expr::power(0.5).unwrap(), Expr::id_plus_soft(1.0).unwrap()),
        Expr::sum(vec![Expr::log1p(), Expr::power(0.5).unwrap()]).unwrap(),
        Expr::convex(w, vec![Expr::id(), Expr::log1p()]).unwrap(),
    ]
}

fn quadrature_goldens() -> Outcome {
    let mut cases: Vec<(String, Box<dyn Fn(f64) -> f64>, f64)> = vec![
        ("1".into(), Box::new(|_| 1.0), 1.0 / 3.0),
        ("x^2".into(), Box::new(|x| x * x), 1.0 / 3.0),
        ("(x+1)^2".into(), Box::new(|x| (x + 1.0) * (x + 1.0)), 1.0),
    ];
    for b in [0.5, 1.0, 2.0, 4.0] {
        cases.push((
            format!("(x+{b})^2"),
            Box::new(move |x| (x + b) * (x + b)),
            (b * b + b + 1.0) / 3.0,
        ));
    }
    let mut worst = 0.0f64;
    for (name, g, expected) in &cases {
        let r = integrate_mu(g, TOL).map_err(err)?;
        let e = (r.value - expected).abs();
        ensure(
            r.verdict == Verdict::Converged && e <= QUAD_GOLDEN_ABS,
            || format!("{name}: {} vs {expected} ({:?})", r.value, r.verdict),
        )?;
        worst = worst.max(e);
    }
    Ok(format!(
        "{} integrals, max abs error {worst:.1e}",
        cases.len()
    ))
}

fn metric_axioms() -> Outcome {
    let roster = catalog();
    let n = roster.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = metric_d(&roster[i], &roster[j], TOL).map_err(err)?;
        }
    }
    for i in 0..n {
        ensure(d[i][i] == 0.0, || format!("d({i},{i}) = {}", d[i][i]))?;
        for j in 0..n {
            ensure(d[i][j] == d[j][i], || format!("d({i},{j}) != d({j},{i})"))?;
        }
    }
    let mut worst = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let excess = d[i][k] - d[i][j] - d[j][k];
                worst = worst.max(excess);
                ensure(excess <= TRIANGLE_SLACK, || {
                    format!("triangle ({i},{j},{k}) excess {excess:e}")
                })?;
            }
        }
    }
    Ok(format!(
        "{n} members, {} triples, max triangle excess {worst:.1e}",
        n * n * n
    ))
}

fn scaled_pairs() -> Outcome {
    // ∫ x dμ = 1/6 and ∫ ln²(1+x) dμ = 2/27
    let cases = [
        (
            "power(0.5)",
            Expr::power(0.5).unwrap(),
            (1.0f64 / 6.0).sqrt(),
        ),
        ("log1p", Expr::log1p(), (2.0f64 / 27.0).sqrt()),
    ];
    let mut worst = 0.0f64;
    for (name, phi, norm) in &cases {
        for n in 1..=5u32 {
            let even = phi.clone().scale(4.0 * n as f64).map_err(err)?;
            let odd = phi.clone().scale(2.0 * n as f64 - 1.0).map_err(err)?;
            let d = metric_d(&even, &odd, TOL).map_err(err)?;
            let expected = (2 * n + 1) as f64 * norm;
            let rel = (d - expected).abs() / expected;
            worst = worst.max(rel);
            ensure(rel <= SCALED_PAIR_REL, || {
                format!("{name}, n={n}: {d} vs {expected}")
            })?;
        }
    }
    Ok(format!("10 pairs, max rel error {worst:.1e}"))
}

fn b_fixed_roster(b: f64) -> Result<FnRoster<f64>, String> {
    let members = catalog()
        .iter()
        .map(|phi| scale_to_b(phi, b))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    FnRoster::new(format!("Y_{b}"), Some(b), members).map_err(err)
}

fn diameter() -> Outcome {
    let grid = log_grid::<f64>(1e-3, 1e3, 64);
    let mut out = Vec::new();
    for b in [1.0, 4.0] {
        let roster = b_fixed_roster(b)?;
        let r = diameter_check(&roster, &grid, TOL).map_err(err)?;
        ensure(r.majorant_violations.is_empty(), || {
            format!("b={b}: x+b exceeded at {:?}", r.majorant_violations)
        })?;
        let bound = (2.0 * c_b(b)).sqrt();
        ensure(r.max_pairwise <= bound + DIAMETER_SLACK, || {
            format!("b={b}: max d {} > {bound}", r.max_pairwise)
        })?;
        out.push(format!("b={b}: {:.4} <= {:.4}", r.max_pairwise, bound));
    }
    Ok(out.join(", "))
}

fn density_levels() -> Outcome {
    let p = density_level(&Expr::power(0.5).unwrap(), TOL).map_err(err)?;
    ensure(
        p.membership == Membership::InA && (p.a_value - 1.0).abs() <= LEVEL_ABS,
        || format!("power(0.5): {:?}", p),
    )?;
    let l = density_level(&Expr::log1p(), TOL).map_err(err)?;
    ensure(
        l.membership == Membership::InA && (l.a_value - 2f64.ln()).abs() <= LEVEL_ABS,
        || format!("log1p: {:?}", l),
    )?;
    let i = density_level(&Expr::id(), TOL).map_err(err)?;
    ensure(
        i.numeric.verdict == Verdict::Divergent && i.membership == Membership::NotInA,
        || format!("id: {:?}", i),
    )?;

    let atoms = [
        (Expr::id(), false),
        (Expr::power(0.5).unwrap(), true),
        (Expr::log1p(), true),
        (Expr::id_plus_soft(1.0).unwrap(), false),
    ];
    for (outer, a_outer) in &atoms {
        for (inner, a_inner) in &atoms {
            let c = Expr::compose(outer.clone(), inner.clone());
            let expected = *a_outer || *a_inner;
            ensure(c.a_flag() == Some(expected), || format!("flag of {c:?}"))?;
            let numeric = density_level_numeric(&c, TOL).map_err(err)?;
            let want = if expected {
                Membership::InA
            } else {
                Membership::NotInA
            };
            ensure(numeric.membership == want, || {
                format!(
                    "numeric level of {} is {:?}",
                    young::funcrep::serialize(&c),
                    numeric.numeric
                )
            })?;
        }
    }
    Ok(format!(
        "power(0.5) {:.9}, log1p {:.9}, id divergent, 16 compositions agree",
        p.a_value, l.a_value
    ))
}

/// Distances for `n = 1..=200`, checked for monotonicity from 5, the final
/// threshold and the halving ratio.
fn check_sequence(
    name: &str,
    target: &Expr,
    seq: impl Fn(usize) -> young::Result<Expr>,
    b: f64,
) -> Result<(f64, f64), String> {
    let mut d = vec![f64::NAN];
    for n in 1..=200 {
        let m = seq(n).map_err(err)?;
        ensure(member_fixed(&m, b) && m.a_flag() == Some(true), || {
            format!("{name}: term {n} not b-fixed or not flagged in A")
        })?;
        d.push(metric_d(target, &m, TOL).map_err(err)?);
    }
    for n in 5..200 {
        ensure(d[n + 1] <= d[n], || {
            format!("{name}: d_{} = {} > d_{n} = {}", n + 1, d[n + 1], d[n])
        })?;
    }
    ensure(d[200] <= FINAL_DISTANCE, || {
        format!("{name}: d_200 = {}", d[200])
    })?;
    let mut worst = 0.0f64;
    for n in [10, 20, 50] {
        let ratio = d[2 * n] / d[n];
        worst = worst.max(ratio);
        ensure(ratio <= HALVING_RATIO, || {
            format!("{name}: d_{}/d_{n} = {ratio}", 2 * n)
        })?;
    }
    Ok((d[200], worst))
}

fn power_approximants() -> Outcome {
    let b = 1.0;
    let mut out = Vec::new();
    for (name, phi) in [
        ("log1p", Expr::log1p()),
        ("power(0.5)", Expr::power(0.5).unwrap()),
        ("id_plus_soft(1)", Expr::id_plus_soft(1.0).unwrap()),
    ] {
        let target = scale_to_b(&phi, b).map_err(err)?;
        let (last, ratio) = check_sequence(name, &target, |n| power_approximant(&phi, b, n), b)?;
        out.push(format!("{name} d200={last:.2e} ratio<={ratio:.3}"));
    }
    Ok(out.join("; "))
}

fn composition_approximants() -> Outcome {
    let b = 1.0;
    let seed = |phi: Expr| scale_to_b(&phi, b).map_err(err);
    let l = seed(Expr::log1p())?;
    let p = seed(Expr::power(0.5).unwrap())?;
    let s = seed(Expr::id_plus_soft(1.0).unwrap())?;
    let half = Weights::new(vec![0.5, 0.5]).map_err(err)?;
    let targets = [
        ("log1p∘power", Expr::compose(l.clone(), p.clone())),
        ("soft∘log1p", Expr::compose(s.clone(), l.clone())),
        ("power∘soft", Expr::compose(p.clone(), s.clone())),
        ("soft∘soft", Expr::compose(s.clone(), s.clone())),
        (
            "convex",
            Expr::convex(
                half,
                vec![
                    Expr::compose(l.clone(), p.clone()),
                    Expr::compose(s.clone(), s),
                ],
            )
            .map_err(err)?,
        ),
    ];
    let mut out = Vec::new();
    for (name, delta) in &targets {
        ensure(member_fixed(delta, b), || format!("{name} does not fix b"))?;
        let (last, ratio) =
            check_sequence(name, delta, |j| composition_approximant(delta, b, j), b)?;
        out.push(format!("{name} d200={last:.2e} ratio<={ratio:.3}"));
    }
    Ok(out.join("; "))
}

fn fixed_point_uniqueness() -> Outcome {
    let grid = linear_grid::<f64>(0.1, 5.0, 50);
    let mut checked = 0;
    for phi in catalog().iter().filter(|p| !p.is_linear()) {
        let hits = grid.iter().filter(|&&b| member_fixed(phi, b)).count();
        ensure(hits <= 1, || format!("{phi:?} fixes {hits} grid points"))?;
        for b0 in [0.5, 1.0, 4.0] {
            let psi = scale_to_b(phi, b0).map_err(err)?;
            let fixed: Vec<f64> = grid
                .iter()
                .copied()
                .filter(|&b| member_fixed(&psi, b))
                .collect();
            ensure(fixed.len() == 1 && (fixed[0] - b0).abs() < 1e-9, || {
                format!("{psi:?} fixes {fixed:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} rescaled members, each fixing exactly its own b on 50 points"
    ))
}

fn slope_equivalence() -> Outcome {
    let designated = [
        ("id", Expr::id(), true),
        ("id_plus_soft(1)", Expr::id_plus_soft(1.0).unwrap(), true),
        ("0.5·id", Expr::id().scale(0.5).unwrap(), true),
        (
            "id+log1p",
            Expr::sum(vec![Expr::id(), Expr::log1p()]).unwrap(),
            true,
        ),
        ("power(0.5)", Expr::power(0.5).unwrap(), false),
        ("log1p", Expr::log1p(), false),
    ];
    for (name, phi, expected) in &designated {
        let slope = asymptotic_slope(phi).positive;
        let (scaling, decomposes) = match min_scaling(phi) {
            Ok(w) => (
                true,
                decompose(phi, w.member())
                    .map(|d| d.passed())
                    .unwrap_or(false),
            ),
            Err(_) => {
                let any = [1.0, 1e3, 1e6]
                    .iter()
                    .any(|&c| decompose(phi, c).map(|d| d.passed()).unwrap_or(false));
                (false, any)
            }
        };
        ensure(
            slope == *expected && scaling == *expected && decomposes == *expected,
            || format!("{name}: slope {slope}, min_scaling {scaling}, decompose {decomposes}"),
        )?;
    }
    let w = min_scaling(&Expr::id_plus_soft(1.0).unwrap()).map_err(err)?;
    ensure(
        w == ScalingWindow {
            c_inf: 1.0,
            attained: true,
        },
        || format!("id_plus_soft(1): {w:?}"),
    )?;
    Ok("6 functions agree three ways; id_plus_soft(1) window (1, attained)".into())
}

fn random_space(rng: &mut ChaCha8Rng) -> (DiscreteMeasureSpace<f64>, MeasurableFn<f64>) {
    let k = rng.gen_range(1..=6);
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..=2.0)).collect();
    let v: Vec<f64> = (0..k)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * rng.gen_range(0.0..=10.0)
        })
        .collect();
    let s = DiscreteMeasureSpace::from_weights(w).unwrap();
    let f = MeasurableFn::new(&s, v).unwrap();
    (s, f)
}

fn sandwich() -> Outcome {
    let roster = stress_roster::<f64>(1000).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut informational = 0;
    for case in 0..20 {
        let (s, f) = random_space(&mut rng);
        let p = [1.0, 2.0, 3.0][case % 3];
        let r = sandwich_check(&s, &f, p, &roster).map_err(err)?;
        ensure(
            (r.identity_value - r.norm).abs() <= SANDWICH_LOWER_ABS,
            || {
                format!(
                    "case {case}: identity {} vs norm {}",
                    r.identity_value, r.norm
                )
            },
        )?;
        ensure(r.upper_ok, || {
            format!("case {case}: sup {} > {}", r.sup_value, r.upper_bound)
        })?;
        informational += r.printed_bound_violations.len();
    }

    let s = DiscreteMeasureSpace::from_weights(vec![0.25]).unwrap();
    let f = MeasurableFn::new(&s, vec![0.01]).unwrap();
    let r = sandwich_check(&s, &f, 2.0, &roster).map_err(err)?;
    // Φ(x) = 1000x + 1e6(1 - e^{-1000x}) evaluated directly
    let phi = |x: f64| 1000.0 * x + 1e6 * (1.0 - (-1000.0 * x).exp());
    let oracle = 0.5 * phi(0.01) / phi(1.0);
    ensure(r.passed(), || format!("corrected bound failed: {r:?}"))?;
    ensure(!r.printed_bound_violations.is_empty(), || {
        format!("no value above the printed bound {}", r.printed_bound)
    })?;
    ensure(
        r.sup_value >= oracle * (1.0 - 1e-12) && oracle > 0.255 && oracle < 0.505,
        || format!("sup {} vs direct value {oracle}", r.sup_value),
    )?;
    Ok(format!(
        "20 spaces within the corrected bound ({informational} printed-bound excesses); p=2, λ=0.25: sup {:.4} > {:.3}, < {:.4}",
        r.sup_value, r.printed_bound, r.upper_bound
    ))
}

fn tail_and_norm() -> Outcome {
    let s = DiscreteMeasureSpace::from_weights(vec![1.0, 1.0]).unwrap();
    let f = MeasurableFn::new(&s, vec![3.0, 4.0]).unwrap();
    let roster = stress_roster::<f64>(100).map_err(err)?;
    let t = tail_identity(&s, &f, 3.5, 16, &roster).map_err(err)?;
    ensure(
        t.direct == 1.0
            && t.witnesses[0].1 == 2.0
            && t.witnesses[1].1 == 1.0
            && t.reached_at == Some(2),
        || format!("tail: {t:?}"),
    )?;
    ensure(t.one_sided_ok, || "tail one-sided bound failed".into())?;

    let n_max = 100;
    let r = norm_identity(&s, &f, 1.0, n_max, &roster).map_err(err)?;
    let excess = (1.0 - (-3f64).exp()) + (1.0 - (-4f64).exp());
    for &(n, w) in &r.witnesses {
        let oracle = 7.0 + excess / n as f64;
        ensure((w - oracle).abs() <= NORM_WITNESS_REL * oracle, || {
            format!("n={n}: {w} vs {oracle}")
        })?;
    }
    ensure(r.passed(), || format!("norm identity: {r:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    for case in 0..20 {
        let (s, f) = random_space(&mut rng);
        let eps = rng.gen_range(0.0..=10.0);
        let p = [1.0, 2.0, 3.0][case % 3];
        let t = tail_identity(&s, &f, eps, 200, &roster).map_err(err)?;
        let n = norm_identity(&s, &f, p, 200, &roster).map_err(err)?;
        ensure(t.one_sided_ok && n.one_sided_ok, || {
            format!("case {case}: one-sided bound failed")
        })?;
        ensure(n.passed(), || format!("case {case}: {n:?}"))?;
    }
    Ok(format!(
        "tail reaches 1 at n=2; witnesses 7 + {excess:.5}/n for n<=100; 20 random spaces one-sided"
    ))
}

fn order_counterexample() -> Outcome {
    let phi1 = Expr::power(0.99).unwrap();
    let phi2 = scale_to_b(&Expr::log1p(), 4.0).map_err(err)?;
    let r = order_witness(1.0, 4.0, &phi1, &phi2, &linear_grid(1.0, 4.0, 64)).map_err(err)?;
    let expected = (4f64.powf(0.99), 4.0 * 2f64.ln() / 5f64.ln());
    ensure(
        (r.raw_pair.0 - 3.9448).abs() <= RAW_PAIR_ABS
            && (r.raw_pair.1 - 1.7227).abs() <= RAW_PAIR_ABS,
        || format!("raw pair {:?}", r.raw_pair),
    )?;
    ensure(
        (r.raw_pair.0 - expected.0).abs() < 1e-12 && (r.raw_pair.1 - expected.1).abs() < 1e-12,
        || format!("raw pair {:?} vs direct {expected:?}", r.raw_pair),
    )?;
    ensure(r.sandwich_holds, || {
        format!("sandwich failed at {:?}", r.first_violation)
    })?;
    Ok(format!(
        "raw pair ({:.4}, {:.4}), sandwich holds",
        r.raw_pair.0, r.raw_pair.1
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("quadrature golden values", quadrature_goldens),
        ("metric axioms", metric_axioms),
        ("scaled-pair identity", scaled_pairs),
        ("affine majorant and diameter", diameter),
        ("density-level classification", density_levels),
        ("power approximants converge", power_approximants),
        (
            "composition approximants converge",
            composition_approximants,
        ),
        ("fixed-point uniqueness", fixed_point_uniqueness),
        ("positive-slope equivalence", slope_equivalence),
        ("Lp sandwich", sandwich),
        ("tail and norm identities", tail_and_norm),
        ("order counterexample", order_counterexample),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {name}: {detail} [{:.2}s]",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
