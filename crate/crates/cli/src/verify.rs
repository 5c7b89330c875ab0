use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};
use twistkit::algebra::LaurentPoly;
use twistkit::dynamics::{fox_colorings, growth_sweep, mahler_1var, mahler_multivar};
use twistkit::reps::{riley_polynomial, riley_torus_recursion, TwoBridgeData};
use twistkit::twisted::{cyclotomic_test, evaluation_checks, fibering_report};

use crate::args::{InputArgs, RepArgs};
use crate::commands::Output;
use crate::error::{CliError, CliResult};
use crate::pipeline::{analyze, Analysis};

type Check = (&'static str, fn() -> Result<String, String>);

fn example_input(name: &str) -> InputArgs {
    InputArgs { example: Some(name.into()), ..Default::default() }
}

fn parabolic(phi: &str) -> RepArgs {
    RepArgs { parabolic: Some(phi.into()), ..Default::default() }
}

fn untwisted() -> RepArgs {
    RepArgs { untwisted: true, ..Default::default() }
}

fn run(input: InputArgs, rep: RepArgs) -> Result<Analysis, String> {
    analyze(&input, &rep).map_err(|e| e.to_string())
}

fn total(name: &str) -> Result<Analysis, String> {
    run(example_input(name), parabolic("auto"))
}

fn expect(a: &Analysis, want: &str) -> Result<String, String> {
    let want: LaurentPoly = want.parse().map_err(|e: twistkit::Error| e.to_string())?;
    if a.bundle.delta == want.normalize_unit() {
        Ok(format!("Δ = {}", a.bundle.delta))
    } else {
        Err(format!("Δ = {}, expected {}", a.bundle.delta, want))
    }
}

fn check_trefoil() -> Result<String, String> {
    expect(&total("trefoil")?, "t^2+1")
}

fn check_figure_eight() -> Result<String, String> {
    expect(&total("figure-eight")?, "(t^2-4*t+1)^2")
}

fn check_five_two() -> Result<String, String> {
    let a = total("5_2")?;
    let out = expect(&a, "25*t^6-104*t^5+219*t^4-272*t^3+219*t^2-104*t+25")?;
    let fib = fibering_report(&a.bundle.delta).map_err(|e| e.to_string())?;
    if fib.leading_abs == 25.into() && fib.trailing_abs == 25.into() {
        Ok(format!("{out}, index 25"))
    } else {
        Err(format!("fibering coefficients {} and {}", fib.trailing_abs, fib.leading_abs))
    }
}

fn check_riley_polynomials() -> Result<String, String> {
    for (a, b, want) in [(3, 1, "w+1"), (5, 3, "w^2-w+1"), (7, 3, "w^3+w^2+2*w+1"), (8, 3, "w^2+2*w+2")] {
        let data = TwoBridgeData::new(a, b).map_err(|e| e.to_string())?;
        let got = riley_polynomial(&data).map_err(|e| e.to_string())?.display_with(&["w"]);
        if got != want {
            return Err(format!("Φ({a},{b}) = {got}"));
        }
    }
    Ok("4 Riley polynomials".into())
}

fn check_recursion() -> Result<String, String> {
    let rec = riley_torus_recursion(2).display_with(&["w"]);
    if rec == "w^2+3*w+1" {
        Ok(format!("Φ(5,1) = {rec}"))
    } else {
        Err(format!("recursion gives {rec}"))
    }
}

fn check_evaluation() -> Result<String, String> {
    let mut seen = Vec::new();
    for name in ["trefoil", "figure-eight", "5_2", "5_1"] {
        let a = total(name)?;
        let deg = a.seed.as_ref().map(|s| s.degree()).unwrap_or(0);
        let ev = evaluation_checks(&a.bundle.delta, deg).map_err(|e| e.to_string())?;
        if !ev.at_one_holds {
            return Err(format!("{name}: |Δ(1)| = {}", ev.at_one));
        }
        seen.push(ev.at_one.to_string());
    }
    Ok(format!("|Δ(1)| = {}", seen.join(", ")))
}

fn check_minus_one() -> Result<String, String> {
    let mut seen = Vec::new();
    for (name, root) in [("figure-eight", 3), ("5_2", 11)] {
        let a = total(name)?;
        let deg = a.seed.as_ref().map(|s| s.degree()).unwrap_or(0);
        let ev = evaluation_checks(&a.bundle.delta, deg).map_err(|e| e.to_string())?;
        if ev.square_root != Some(root.into()) {
            return Err(format!("{name}: quotient {:?}", ev.minus_one_quotient));
        }
        seen.push(format!("{root}^2"));
    }
    Ok(format!("quotients {}", seen.join(", ")))
}

fn check_torus() -> Result<String, String> {
    let a = total("5_1")?;
    let out = expect(&a, "(t^2+1)*(t^10+1)")?;
    match cyclotomic_test(&a.bundle.delta) {
        Ok(true) => Ok(format!("{out}, cyclotomic")),
        other => Err(format!("cyclotomic test: {other:?}")),
    }
}

fn check_whitehead_grid() -> Result<String, String> {
    let a = total("whitehead")?;
    let grid = [
        [1, -4, 6, -4, 1],
        [-4, 12, -16, 12, -4],
        [6, -16, 28, -16, 6],
        [-4, 12, -16, 12, -4],
        [1, -4, 6, -4, 1],
    ];
    let got = a.bundle.delta.coefficient_grid().ok_or("Δ has no grid")?;
    let matches = got.len() == 5
        && got.iter().zip(grid).all(|(row, w)| row.len() == 5 && row.iter().zip(w).all(|(c, x)| *c == x.into()));
    if matches {
        Ok("5×5 coefficient array matches".into())
    } else {
        Err(format!("Δ = {}", a.bundle.delta))
    }
}

fn check_whitehead_h0() -> Result<String, String> {
    let a = total("whitehead")?;
    let (ab, comps) = a.resolved.group.abelianization();
    let snf = twistkit::twisted::h0_group(&a.rep.images, &twistkit::twisted::commutator_normal_generators(ab, comps))
        .map_err(|e| e.to_string())?;
    if snf.free_rank_of_cokernel == 0 && snf.torsion_order() == 4.into() {
        Ok("|H₀| = 4 = φ(0)²".into())
    } else {
        Err(format!("H₀ torsion {} free rank {}", snf.torsion_order(), snf.free_rank_of_cokernel))
    }
}

fn check_whitehead_untwisted() -> Result<String, String> {
    expect(&run(example_input("whitehead"), untwisted())?, "(t1-1)*(t2-1)")
}

fn check_square() -> Result<String, String> {
    let preset = |s: &str| RepArgs { preset: Some(s.into()), ..Default::default() };
    for v in -2..=2 {
        expect(&run(InputArgs::default(), preset(&format!("square:1,{v}")))?, "(t-1)^2*(t^2+1)^2")?;
    }
    expect(&run(InputArgs::default(), preset("square:0,1"))?, "(t^2-t+1)^2*(t^2+1)")?;
    Ok("u = 1 and u = 0 families".into())
}

fn check_riley_knot() -> Result<String, String> {
    let a = run(InputArgs::default(), RepArgs { preset: Some("riley:1".into()), ..Default::default() })?;
    let jac: LaurentPoly = "(t-1)^6*(t^2+1)".parse().expect("literal");
    if a.bundle.coloring != jac.normalize_unit() {
        return Err(format!("Jacobian determinant {}", a.bundle.coloring));
    }
    expect(&a, "(t-1)^4*(t^2+1)")
}

fn check_mahler() -> Result<String, String> {
    let f = |s: &str| mahler_1var(&s.parse().expect("literal")).map_err(|e| e.to_string());
    let (m0, m8) = (f("t^2+1")?, f("(t^2-4*t+1)^2")?);
    let m52 = mahler_1var(&total("5_2")?.bundle.delta).map_err(|e| e.to_string())?;
    let mw = mahler_multivar(&total("whitehead")?.bundle.delta, 1e-6).value;
    let ok = m0.abs() < 1e-8 && (m8 - 2.63392).abs() < 1e-4 && (m52 - 3.82317).abs() < 1e-4 && (mw - 2.5).abs() < 0.05;
    let msg = format!("{m0:.1e}, {m8:.5}, {m52:.5}, {mw:.3}");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn check_growth() -> Result<String, String> {
    let a = total("figure-eight")?;
    let g = growth_sweep(&a.tp, 14, &[], Some(&a.bundle.delta)).map_err(|e| e.to_string())?;
    let t = total("trefoil")?;
    let gt = growth_sweep(&t.tp, 14, &[], Some(&t.bundle.delta)).map_err(|e| e.to_string())?;
    let rel = (g.extrapolated_rate - 2.63392).abs() / 2.63392;
    let msg = format!("figure-eight {:.5}, trefoil {:.5}", g.extrapolated_rate, gt.extrapolated_rate);
    if rel < 0.05 && gt.extrapolated_rate.abs() < 0.1 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn check_untwisted() -> Result<String, String> {
    expect(&run(example_input("trefoil"), untwisted())?, "t^2-t+1")?;
    expect(&run(example_input("figure-eight"), untwisted())?, "t^2-3*t+1")?;
    let d = twistkit::corpus::example("trefoil").and_then(|e| e.diagram()).map_err(|e| e.to_string())?;
    let (c3, c5) = (fox_colorings(&d, 3), fox_colorings(&d, 5));
    if c3.factors != vec![3.into()] || !c5.is_trivial() {
        return Err(format!("trefoil colorings {:?} / {:?}", c3.factors, c5.factors));
    }
    Ok("Alexander polynomials and trefoil colorings".into())
}

const CHECKS: &[Check] = &[
    ("trefoil total polynomial", check_trefoil),
    ("figure-eight total polynomial", check_figure_eight),
    ("5_2 total polynomial and index", check_five_two),
    ("Riley polynomials", check_riley_polynomials),
    ("torus-knot recursion", check_recursion),
    ("|Δ(1)| = 2^deg φ", check_evaluation),
    ("|Δ(−1)|/2^deg φ square", check_minus_one),
    ("(5,2) torus knot cyclotomic", check_torus),
    ("Whitehead coefficient array", check_whitehead_grid),
    ("Whitehead H₀ order", check_whitehead_h0),
    ("Whitehead untwisted", check_whitehead_untwisted),
    ("square knot families", check_square),
    ("Riley's knot", check_riley_knot),
    ("Mahler measures", check_mahler),
    ("torsion growth", check_growth),
    ("untwisted sanity", check_untwisted),
];

pub fn verify_paper() -> CliResult<(Output, usize)> {
    let results: Vec<Result<String, String>> = CHECKS.par_iter().map(|(_, f)| f()).collect();
    let mut human = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for (i, ((name, _), res)) in CHECKS.iter().zip(&results).enumerate() {
        let (status, detail) = match res {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.as_str())
            }
        };
        let _ = writeln!(human, "{:>2}  {status}  {name:<32} {detail}", i + 1);
        rows.push(json!({ "check": name, "status": status, "detail": detail }));
    }
    let _ = writeln!(human, "{} checks, {} passed, {failed} failed", CHECKS.len(), CHECKS.len() - failed);
    Ok((Output { json: Value::Array(rows), human }, failed))
}

pub fn failure(failed: usize) -> CliError {
    CliError::ChecksFailed(failed)
}
