use std::fs;

use serde_json::Value;
use young::density::{
    composition_approximant, power_approximant, verify_convergence, ConvergenceVerdict,
};
use young::fixed_b::{
    diameter_check, gen_hierarchy, member_fixed, order_witness, scale_to_b, separation_check,
    set_distance, ROSTER_CAVEAT,
};
use young::formats::{parse_function, parse_roster, parse_space, roster_to_json};
use young::funcrep::{default_grid, parse_descriptor, serialize, validate};
use young::lpspace::{
    asymptotic_slope, decompose, min_scaling, norm_identity, sandwich_check, scalar_recover,
    scalar_recover_via_space, stress_roster, tail_identity,
};
use young::scalar::{linear_grid, log_grid};
use young::ymetric::{density_level, metric_d, norm_mu, Membership};
use young::{Expr, LpFn, Roster, Space, Weights};

use crate::report::{jnum, num, verdict, Report};
use crate::{Cli, Command, Failure, LpArgs};

type Outcome = Result<Report, Failure>;

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_input(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    }
}

fn load_fn(arg: &str) -> Result<Expr, Failure> {
    Ok(parse_descriptor(&read_input(arg)?)?)
}

fn load_roster(arg: &str) -> Result<Roster, Failure> {
    Ok(parse_roster(&read_input(arg)?)?)
}

fn load_lp(lp: &LpArgs) -> Result<(Space, LpFn), Failure> {
    let space = parse_space(&read_input(&lp.space)?)?;
    let f = parse_function(&space, &read_input(&lp.func)?)?;
    Ok((space, f))
}

fn fixed_b(b: f64) -> Result<f64, Failure> {
    if b > 0.0 && b.is_finite() {
        Ok(b)
    } else {
        Err(Failure::Usage(format!(
            "b must be positive and finite, got {b}"
        )))
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let tol = cli.tol;
    match &cli.command {
        Command::Eval { f, x } => {
            let phi = load_fn(&f.func)?;
            let v = phi.try_eval(*x)?;
            let mut r = Report::new();
            r.line(num(v.value))
                .field("x", jnum(*x))
                .field("value", jnum(v.value));
            if v.overflow {
                r.field("overflow", true);
            }
            Ok(r)
        }
        Command::Density { f, x } => {
            let phi = load_fn(&f.func)?;
            if *x < 0.0 {
                return Err(young::Error::Domain { x: *x }.into());
            }
            let d = phi.density(*x)?;
            let mut r = Report::new();
            r.line(num(d))
                .field("x", jnum(*x))
                .field("density", jnum(d));
            Ok(r)
        }
        Command::Validate { f } => {
            let phi = load_fn(&f.func)?;
            let report = validate(&phi, &default_grid())?;
            let mut r = Report::new();
            let rows = report
                .violations()
                .iter()
                .map(|v| {
                    let check = serde_json::to_value(v.check).expect("check name");
                    let check = check.as_str().unwrap_or_default().to_string();
                    r.line(format!("{check} at {}: {}", num(v.witness), v.detail));
                    vec![check, num(v.witness), v.detail.clone()]
                })
                .collect();
            r.line(verdict(report.passed()))
                .table(&["check", "witness", "detail"], rows)
                .require(report.passed());
            Ok(r)
        }
        Command::Norm { f } => {
            let v = norm_mu(&load_fn(&f.func)?, tol)?;
            let mut r = Report::new();
            r.line(num(v)).field("norm", jnum(v));
            Ok(r)
        }
        Command::Dist { f, fn2 } => {
            let d = metric_d(&load_fn(&f.func)?, &load_fn(fn2)?, tol)?;
            let mut r = Report::new();
            r.line(num(d)).field("distance", jnum(d));
            Ok(r)
        }
        Command::Alevel { f } => alevel(&load_fn(&f.func)?, tol),
        Command::ScaleB { f, b } => {
            let psi = scale_to_b(&load_fn(&f.func)?, fixed_b(*b)?)?;
            let text = serialize(&psi);
            let mut r = Report::new();
            r.line(&text)
                .field("b", jnum(*b))
                .field("value_at_b", jnum(psi.eval(*b)));
            r.document = Some(format!("{text}\n"));
            Ok(r)
        }
        Command::Hierarchy { roster, n, weights } => {
            let seeds = load_roster(roster)?;
            let w = Weights::new(weights.clone())?;
            let h = gen_hierarchy(*n, &seeds, &w)?;
            let in_a = h.in_a.iter().filter(|f| **f).count();
            let mut r = Report::new();
            r.line(format!("members {}", h.roster.len()))
                .line(format!("in_A {in_a}"))
                .field("members", h.roster.len())
                .field("in_a", in_a);
            match h.truncated {
                None => {}
                Some(total) => {
                    let total = total.map_or("overflow".to_string(), |t| t.to_string());
                    r.line(format!("truncated from {total}"))
                        .field("truncated_from", total);
                }
            }
            let rows = h
                .roster
                .members()
                .iter()
                .zip(&h.in_a)
                .enumerate()
                .map(|(i, (m, a))| vec![i.to_string(), serialize(m), a.to_string()])
                .collect();
            r.table(&["index", "descriptor", "in_a"], rows);
            r.document = Some(format!("{}\n", roster_to_json(&h.roster)));
            Ok(r)
        }
        Command::Setdist { roster, roster2 } => {
            let s = set_distance(&load_roster(roster)?, &load_roster(roster2)?, tol)?;
            let mut r = Report::new();
            r.line(format!("forward {}", num(s.forward)))
                .line(format!("backward {}", num(s.backward)))
                .line(format!("hausdorff {}", num(s.hausdorff)))
                .field("forward", jnum(s.forward))
                .field("backward", jnum(s.backward))
                .field("hausdorff", jnum(s.hausdorff))
                .field("caveat", ROSTER_CAVEAT);
            Ok(r)
        }
        Command::Diameter { roster } => {
            let f = load_roster(roster)?;
            let d = diameter_check(&f, &log_grid::<f64>(1e-3, 1e3, 64), tol)?;
            let mut r = Report::new();
            r.line(format!("max {}", num(d.max_pairwise)))
                .line(format!("bound {}", num(d.bound)))
                .line(format!(
                    "majorant_violations {}",
                    d.majorant_violations.len()
                ))
                .line(verdict(d.passed()))
                .field("max_pairwise", jnum(d.max_pairwise))
                .field("bound", jnum(d.bound))
                .field("majorant_violations", d.majorant_violations.len())
                .field("caveat", ROSTER_CAVEAT)
                .table(
                    &["i", "j", "distance"],
                    d.pairs
                        .iter()
                        .map(|(i, j, v)| vec![i.to_string(), j.to_string(), num(*v)])
                        .collect(),
                )
                .require(d.passed());
            Ok(r)
        }
        Command::Separation { roster, fn2, b2 } => {
            let s = separation_check(&load_roster(roster)?, &load_fn(fn2)?, fixed_b(*b2)?, tol)?;
            let mut r = Report::new();
            r.line(format!("min {} at {}", num(s.min_distance), s.argmin))
                .line(verdict(s.positive))
                .field("min_distance", jnum(s.min_distance))
                .field("argmin", s.argmin)
                .field("caveat", ROSTER_CAVEAT)
                .require(s.positive);
            Ok(r)
        }
        Command::Order { f, fn2, b, b2 } => {
            let (b1, b2) = (fixed_b(*b)?, fixed_b(*b2)?);
            let grid = linear_grid::<f64>(b1, b2, 64);
            let o = order_witness(b1, b2, &load_fn(&f.func)?, &load_fn(fn2)?, &grid)?;
            let mut r = Report::new();
            r.line(format!(
                "raw_pair {} {}",
                num(o.raw_pair.0),
                num(o.raw_pair.1)
            ))
            .line(format!("raw_pair_ordered {}", o.raw_pair_strictly_ordered))
            .line(format!("sandwich {}", verdict(o.sandwich_holds)))
            .field("raw_pair", vec![jnum(o.raw_pair.0), jnum(o.raw_pair.1)])
            .field("raw_pair_strictly_ordered", o.raw_pair_strictly_ordered)
            .field("sandwich_holds", o.sandwich_holds)
            .field("strict_interior", o.strict_interior)
            .require(o.sandwich_holds);
            if let Some(x) = o.first_violation {
                r.field("first_violation", jnum(x));
            }
            Ok(r)
        }
        Command::Dense7 {
            f,
            b,
            nmax,
            threshold,
        } => {
            let phi = load_fn(&f.func)?;
            let b = fixed_b(*b)?;
            let target = scale_to_b(&phi, b)?;
            convergence(
                &target,
                b,
                |n| power_approximant(&phi, b, n),
                *nmax,
                *threshold,
                tol,
            )
        }
        Command::Dense8 {
            f,
            b,
            nmax,
            threshold,
        } => {
            let delta = load_fn(&f.func)?;
            let b = fixed_b(*b)?;
            // rejects a target that does not fix b before any quadrature
            composition_approximant(&delta, b, 1)?;
            convergence(
                &delta,
                b,
                |j| composition_approximant(&delta, b, j),
                *nmax,
                *threshold,
                tol,
            )
        }
        Command::Slope { f } => {
            let s = asymptotic_slope(&load_fn(&f.func)?);
            let class = if s.positive { "positive" } else { "zero" };
            let mut r = Report::new();
            r.line(format!("{} {class}", num(s.slope)))
                .field("slope", jnum(s.slope))
                .field("last_ratio", jnum(s.last_ratio))
                .field("numeric_stable", s.numeric_stable)
                .field("positive", s.positive);
            Ok(r)
        }
        Command::Cmin { f } => {
            let w = min_scaling(&load_fn(&f.func)?)?;
            let attained = if w.attained {
                "attained"
            } else {
                "not_attained"
            };
            let mut r = Report::new();
            r.line(format!("{} {attained}", num(w.c_inf)))
                .field("c_inf", jnum(w.c_inf))
                .field("attained", w.attained);
            Ok(r)
        }
        Command::Decompose { f, c } => {
            let d = decompose(&load_fn(&f.func)?, *c)?;
            let mut r = Report::new();
            r.line(format!("vanishes_at_origin {}", d.vanishes_at_origin))
                .line(format!("positive {}", d.positive))
                .line(format!("slope_chain {}", d.slope_chain))
                .line(format!("strict {}", d.strict))
                .line(verdict(d.passed()))
                .field("vanishes_at_origin", d.vanishes_at_origin)
                .field("positive", d.positive)
                .field("slope_chain", d.slope_chain)
                .field("strict", d.strict)
                .require(d.passed());
            Ok(r)
        }
        Command::LpSandwich { lp, p, nmax } => {
            let (space, f) = load_lp(lp)?;
            let roster = stress_roster(*nmax)?;
            let s = sandwich_check(&space, &f, *p, &roster)?;
            let mut r = Report::new();
            r.line(format!("norm {}", num(s.norm)))
                .line(format!("identity {}", num(s.identity_value)))
                .line(format!("sup {}", num(s.sup_value)))
                .line(format!("bound {}", num(s.upper_bound)))
                .line(format!(
                    "printed_bound {} violations {}",
                    num(s.printed_bound),
                    s.printed_bound_violations.len()
                ))
                .line(verdict(s.passed()))
                .field("norm", jnum(s.norm))
                .field("identity_value", jnum(s.identity_value))
                .field("sup_value", jnum(s.sup_value))
                .field("upper_bound", jnum(s.upper_bound))
                .field("printed_bound", jnum(s.printed_bound))
                .field("printed_bound_violations", s.printed_bound_violations.len())
                .table(
                    &["member", "descriptor", "value"],
                    roster
                        .iter()
                        .zip(&s.values)
                        .enumerate()
                        .map(|(i, (m, v))| vec![i.to_string(), serialize(m), num(*v)])
                        .collect(),
                )
                .require(s.passed());
            Ok(r)
        }
        Command::LpTail { lp, eps, nmax } => {
            let (space, f) = load_lp(lp)?;
            let t = tail_identity(&space, &f, *eps, *nmax, &stress_roster(*nmax)?)?;
            let mut r = Report::new();
            r.line(format!("direct {}", num(t.direct)))
                .line(format!("inf {}", num(t.infimum)))
                .line(verdict(t.passed()))
                .field("direct", jnum(t.direct))
                .field("infimum", jnum(t.infimum))
                .field("reached_at", t.reached_at.map_or(Value::Null, Value::from))
                .field("one_sided_ok", t.one_sided_ok)
                .table(&["n", "witness"], witness_rows(&t.witnesses))
                .require(t.passed());
            Ok(r)
        }
        Command::LpNorm { lp, p, nmax } => {
            let (space, f) = load_lp(lp)?;
            let n = norm_identity(&space, &f, *p, *nmax, &stress_roster(*nmax)?)?;
            let last = n.witnesses.last().map_or(f64::NAN, |w| w.1);
            let mut r = Report::new();
            r.line(format!("norm {}", num(n.norm)))
                .line(format!("witness {}", num(last)))
                .line(format!(
                    "gap {} tolerance {}",
                    num(n.final_gap),
                    num(n.tolerance)
                ))
                .line(verdict(n.passed()))
                .field("norm", jnum(n.norm))
                .field("final_witness", jnum(last))
                .field("final_gap", jnum(n.final_gap))
                .field("tolerance", jnum(n.tolerance))
                .field("monotone", n.monotone)
                .field("one_sided_ok", n.one_sided_ok)
                .table(&["n", "witness"], witness_rows(&n.witnesses))
                .require(n.passed());
            Ok(r)
        }
        Command::Recover { y, nmax, space, p } => {
            let s = scalar_recover(*y, *nmax)?;
            let mut r = Report::new();
            r.line(format!("value {}", num(s.value)))
                .line(format!("gap {}", num(s.gap)))
                .field("y", jnum(s.y))
                .field("value", jnum(s.value))
                .field("gap", jnum(s.gap))
                .require(s.within);
            if let Some(space) = space {
                let space: Space = parse_space(&read_input(space)?)?;
                let via = scalar_recover_via_space(&space, *y, *p, *nmax)?;
                let agree = (via - s.value).abs() <= 1e-12 * s.value.max(1.0);
                r.line(format!("via_space {}", num(via)))
                    .field("via_space", jnum(via))
                    .require(agree);
            }
            let ok = r.passed;
            r.line(verdict(ok));
            Ok(r)
        }
    }
}

fn witness_rows(w: &[(usize, f64)]) -> Vec<Vec<String>> {
    w.iter()
        .map(|(n, v)| vec![n.to_string(), num(*v)])
        .collect()
}

fn alevel(phi: &Expr, tol: f64) -> Outcome {
    let v = density_level(phi, tol)?;
    let (label, ok) = match v.membership {
        Membership::InA => ("in_A", v.numeric.is_converged()),
        Membership::NotInA => ("not_in_A", true),
        Membership::Unknown => ("unknown", false),
    };
    let source = serde_json::to_value(v.source).expect("source name");
    let mut r = Report::new();
    r.line(format!("{} {label}", fixed6(v.a_value)))
        .field("a_value", jnum(v.a_value))
        .field("membership", label)
        .field("source", source)
        .field("numeric_value", jnum(v.numeric.value))
        .field("numeric_error", jnum(v.numeric.abs_error_est))
        .field(
            "numeric_verdict",
            serde_json::to_value(v.numeric.verdict).expect("verdict name"),
        )
        .require(ok);
    if !ok {
        eprintln!(
            "young: density-level integral inconclusive (estimate {}, error {})",
            num(v.numeric.value),
            num(v.numeric.abs_error_est)
        );
    }
    Ok(r)
}

fn fixed6(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        num(x)
    }
}

fn convergence(
    target: &Expr,
    b: f64,
    seq: impl Fn(usize) -> young::Result<Expr>,
    nmax: usize,
    threshold: f64,
    tol: f64,
) -> Outcome {
    let report = verify_convergence(target, &seq, nmax, threshold, tol)?;
    let mut members_ok = true;
    for (n, _) in &report.pairs {
        let m = seq(*n)?;
        members_ok &= member_fixed(&m, b) && m.a_flag() == Some(true);
    }
    let converged = report.verdict == ConvergenceVerdict::Converged;
    let mut r = Report::new();
    r.line(format!("final {}", num(report.final_distance)))
        .line(format!(
            "monotone_from {}",
            report
                .monotone_from
                .map_or("none".to_string(), |n| n.to_string())
        ))
        .line(format!("members_fixed_in_A {members_ok}"))
        .line(verdict(converged && members_ok))
        .field("final_distance", jnum(report.final_distance))
        .field("threshold", jnum(report.threshold))
        .field(
            "monotone_from",
            report.monotone_from.map_or(Value::Null, Value::from),
        )
        .field("members_fixed_in_a", members_ok)
        .table(&["n", "distance"], witness_rows(&report.pairs))
        .require(converged && members_ok);
    Ok(r)
}
