use std::fmt::Write as _;

use serde_json::{json, Value};
use twistkit::algebra::{IntMatrix, LaurentPoly};
use twistkit::dynamics::{
    fox_colorings, growth_sweep, mahler_1var, mahler_multivar, periodic_point_components, torsion_number, Sublattice,
};
use twistkit::reps::{riley_polynomial, riley_torus_recursion, TwoBridgeData};
use twistkit::twisted::{
    commutator_normal_generators, cyclotomic_test, evaluation_checks, fibering_report, h0_group,
};

use crate::args::{InputArgs, RepArgs};
use crate::error::{usage, CliResult};
use crate::pipeline::{analyze, parse_poly, parse_two_bridge, resolve_input, Analysis, Group};

pub struct Output {
    pub json: Value,
    pub human: String,
}

fn poly_json(p: &LaurentPoly) -> Value {
    Value::String(p.to_string())
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Coefficient array with rows indexed by the power of `t1`.
pub fn grid_lines(p: &LaurentPoly) -> Option<Vec<String>> {
    let grid = p.coefficient_grid()?;
    let width = grid.iter().flatten().map(|c| c.to_string().len()).max().unwrap_or(1);
    Some(
        grid.iter()
            .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
            .collect(),
    )
}

pub fn parse(input: &InputArgs) -> CliResult<Output> {
    let resolved = resolve_input(input, &RepArgs::default())?;
    let Group::Diagram { diagram, pres } = &resolved.group else {
        let Group::Words(p) = &resolved.group else { unreachable!() };
        let rels: Vec<String> = p.relators.iter().map(|r| p.word_to_string(r)).collect();
        let mut human = format!("generators: {}\n", p.names.join(", "));
        for r in &rels {
            let _ = writeln!(human, "relator: {r}");
        }
        return Ok(Output {
            json: json!({ "input": resolved.label, "generators": p.names, "relators": rels, "components": p.components }),
            human,
        });
    };
    let rels: Vec<String> =
        pres.relators.iter().map(|r| format!("x{} x{} x{}^-1 = x{}", r.over, r.left, r.over, r.right)).collect();
    let mut human = format!(
        "{} crossings, {} arcs, {} component(s)\npd: {}\n",
        diagram.crossings.len(),
        diagram.arc_count,
        diagram.components,
        diagram.to_pd_string()
    );
    for r in &rels {
        let _ = writeln!(human, "relator: {r}");
    }
    Ok(Output {
        json: json!({
            "input": resolved.label,
            "crossings": diagram.crossings.len(),
            "arcs": diagram.arc_count,
            "components": diagram.components,
            "arc_components": diagram.arc_component,
            "pd": diagram.to_pd_string(),
            "relators": rels,
            "generating_subset": pres.generating_subset(),
        }),
        human,
    })
}

fn h0_structure(a: &Analysis) -> Option<Value> {
    if !a.rep.is_unimodular() {
        return None;
    }
    let (ab, comps) = a.resolved.group.abelianization();
    let snf = h0_group(&a.rep.images, &commutator_normal_generators(ab, comps)).ok()?;
    Some(json!({
        "torsion_factors": strings(&snf.torsion_factors()),
        "free_rank": snf.free_rank_of_cokernel,
        "order": if snf.free_rank_of_cokernel == 0 { Value::String(snf.torsion_order().to_string()) } else { Value::Null },
    }))
}

pub fn invariants(input: &InputArgs, rep: &RepArgs) -> CliResult<Output> {
    let a = analyze(input, rep)?;
    let b = &a.bundle;
    let mut j = json!({
        "input": a.resolved.label,
        "dimension": a.tp.dimension,
        "variables": a.tp.nvars,
        "ring_primes": a.rep.ring_primes,
        "coloring": poly_json(&b.coloring),
        "denominator": poly_json(&b.denominator),
        "wada": b.wada.as_ref().map(poly_json),
        "h0_order": poly_json(&b.h0_order),
        "delta": poly_json(&b.delta),
        "h0_group": h0_structure(&a),
    });
    let mut human = format!(
        "input: {}\nrepresentation dimension: {}\ncoloring polynomial D = {}\ndenominator = {}\n",
        a.resolved.label, a.tp.dimension, b.coloring, b.denominator
    );
    if let Some(w) = &b.wada {
        let _ = writeln!(human, "Wada invariant W = {w}");
    }
    let _ = writeln!(human, "H0 order = {}", b.h0_order);
    if let Some(h) = j.get("h0_group").and_then(|h| h.get("order")).and_then(Value::as_str) {
        let _ = writeln!(human, "|H0| = {h}");
    }
    let _ = writeln!(human, "Delta = {}", b.delta);
    if a.tp.nvars == 2 {
        if let Some(lines) = grid_lines(&b.delta) {
            j["delta_grid"] = json!(b.delta.coefficient_grid().map(|g| g
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()));
            let _ = writeln!(human, "coefficient of t1^i t2^j at row i, column j:");
            for l in lines {
                let _ = writeln!(human, "  {l}");
            }
        }
    }
    if a.tp.nvars == 1 && !b.delta.is_zero() {
        let fib = fibering_report(&b.delta)?;
        let cyc = cyclotomic_test(&b.delta)?;
        let _ = writeln!(
            human,
            "fibering: trailing {} leading {} monic {}\ncyclotomic: {cyc}",
            fib.trailing_abs, fib.leading_abs, fib.monic_pair
        );
        j["fibering"] = json!({
            "trailing_abs": fib.trailing_abs.to_string(),
            "leading_abs": fib.leading_abs.to_string(),
            "monic_pair": fib.monic_pair,
        });
        j["cyclotomic"] = json!(cyc);
        j["mahler"] = json!(mahler_1var(&b.delta)?);
        if let Some(seed) = &a.seed {
            let ev = evaluation_checks(&b.delta, seed.degree())?;
            let _ = writeln!(
                human,
                "|Delta(1)| = {} (expected {}), |Delta(-1)| = {}",
                ev.at_one, ev.expected_at_one, ev.at_minus_one
            );
            j["evaluation"] = json!({
                "at_one": ev.at_one.to_string(),
                "expected_at_one": ev.expected_at_one.to_string(),
                "at_one_holds": ev.at_one_holds,
                "at_minus_one": ev.at_minus_one.to_string(),
                "minus_one_quotient": ev.minus_one_quotient.as_ref().map(ToString::to_string),
                "square_root": ev.square_root.as_ref().map(ToString::to_string),
            });
        }
    }
    Ok(Output { json: j, human })
}

pub fn riley(two_bridge: Option<&str>, example: Option<&str>, recursion: Option<usize>) -> CliResult<Output> {
    let data: TwoBridgeData = match (two_bridge, example) {
        (Some(t), None) => parse_two_bridge(t)?,
        (None, Some(e)) => twistkit::corpus::example(e)?
            .two_bridge_data()
            .ok_or_else(|| usage(format!("example {e:?} is not 2-bridge")))?,
        _ => return Err(usage("give exactly one of --two-bridge, --example")),
    };
    let phi = riley_polynomial(&data)?;
    let shown = phi.display_with(&["w"]);
    let mut j = json!({
        "alpha": data.alpha,
        "beta": data.beta,
        "knot": data.is_knot(),
        "riley": shown,
        "degree": phi.degree_in(0),
    });
    let mut human = format!("Phi_{{{},{}}}(w) = {shown}\n", data.alpha, data.beta);
    if let Some(n) = recursion {
        let rows: Vec<Value> = (0..=n)
            .map(|k| {
                let rec = riley_torus_recursion(k);
                let direct = if k == 0 {
                    LaurentPoly::one(1)
                } else {
                    riley_polynomial(&TwoBridgeData::new(2 * k as u64 + 1, 1).expect("valid"))?
                };
                Ok(json!({ "alpha": 2 * k + 1, "recursion": rec.display_with(&["w"]), "agrees": rec == direct }))
            })
            .collect::<CliResult<_>>()?;
        for r in &rows {
            let _ = writeln!(human, "Phi_{{{},1}} = {} agrees: {}", r["alpha"], r["recursion"].as_str().unwrap(), r["agrees"]);
        }
        j["recursion"] = Value::Array(rows);
    }
    Ok(Output { json: j, human })
}

pub fn parse_lattice(text: &str, dim: usize) -> CliResult<Sublattice> {
    if let Ok(r) = text.trim().parse::<u64>() {
        return Ok(Sublattice::scalar(dim, r)?);
    }
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad lattice {text:?}")))?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(usage("lattice basis must be square"));
    }
    Ok(Sublattice::new(IntMatrix::from_rows(&rows))?)
}

fn strip_primes(a: &Analysis, extra: &[u64]) -> Vec<u64> {
    let mut p = a.rep.ring_primes.clone();
    p.extend_from_slice(extra);
    p.sort_unstable();
    p.dedup();
    p
}

pub fn torsion(input: &InputArgs, rep: &RepArgs, lattice: &str, strip: &[u64]) -> CliResult<Output> {
    let a = analyze(input, rep)?;
    let lat = parse_lattice(lattice, a.tp.nvars)?;
    let t = torsion_number(&a.tp, &lat, &strip_primes(&a, strip))?;
    let (pc_torsion, pc_free) = periodic_point_components(&a.tp, &lat)?;
    let basis: Vec<Vec<String>> = lat.basis.to_rows().iter().map(|r| strings(r)).collect();
    let human = format!(
        "lattice index {} (shortest vector {:.3})\nb = {} (before stripping {})\ninvariant factors: {}\nfree rank: {}\nperiodic point components: {} torsion, free rank {}\n",
        lat.index,
        lat.min_length,
        t.b,
        t.b_unstripped,
        strings(&t.invariant_factors).join(" "),
        t.beta,
        pc_torsion,
        pc_free
    );
    Ok(Output {
        json: json!({
            "input": a.resolved.label,
            "lattice": basis,
            "index": lat.index,
            "min_length": lat.min_length,
            "b": t.b.to_string(),
            "b_unstripped": t.b_unstripped.to_string(),
            "invariant_factors": strings(&t.invariant_factors),
            "free_rank": t.beta,
            "stripped_primes": t.stripped_primes,
            "periodic_components": { "torsion": pc_torsion.to_string(), "free_rank": pc_free },
        }),
        human,
    })
}

pub fn growth(input: &InputArgs, rep: &RepArgs, rmax: u64, strip: &[u64]) -> CliResult<Output> {
    let a = analyze(input, rep)?;
    let g = growth_sweep(&a.tp, rmax, &strip_primes(&a, strip), Some(&a.bundle.delta))?;
    let mut human = String::from("r,index,b,log_b_per_index\n");
    for (r, idx, b, rate) in &g.samples {
        let _ = writeln!(human, "{r},{idx},{b},{rate:.8}");
    }
    let _ = writeln!(human, "# extrapolated_rate,{:.8}", g.extrapolated_rate);
    if let (Some(t), Some(res)) = (g.target, g.residual) {
        let _ = writeln!(human, "# mahler_target,{t:.8}\n# residual,{res:.8}");
    }
    let samples: Vec<Value> = g
        .samples
        .iter()
        .map(|(r, idx, b, rate)| json!({ "r": r, "index": idx, "b": b.to_string(), "rate": rate }))
        .collect();
    Ok(Output {
        json: json!({
            "input": a.resolved.label,
            "samples": samples,
            "extrapolated_rate": g.extrapolated_rate,
            "target": g.target,
            "residual": g.residual,
        }),
        human,
    })
}

pub fn mahler(poly: Option<&str>, tol: f64, input: &InputArgs, rep: &RepArgs) -> CliResult<Output> {
    let p = match poly {
        Some(text) => parse_poly(text)?,
        None => analyze(input, rep)?.bundle.delta,
    };
    let est = if p.nvars() <= 1 {
        let v = mahler_1var(&p)?;
        twistkit::dynamics::MahlerEstimate { value: v, error_bound: 0.0, converged: true }
    } else {
        mahler_multivar(&p, tol)
    };
    Ok(Output {
        json: json!({
            "polynomial": p.to_string(),
            "value": est.value,
            "error_bound": est.error_bound,
            "converged": est.converged,
            "exp": est.value.exp(),
        }),
        human: format!(
            "m({p}) = {:.10} (error bound {:.1e}{})\n",
            est.value,
            est.error_bound,
            if est.converged { "" } else { ", not converged" }
        ),
    })
}

pub fn colorings(input: &InputArgs, prime: u64) -> CliResult<Output> {
    if prime < 2 {
        return Err(usage("--prime must be at least 2"));
    }
    let resolved = resolve_input(input, &RepArgs::default())?;
    let Group::Diagram { diagram, .. } = &resolved.group else {
        return Err(usage("colorings need a diagram"));
    };
    let c = fox_colorings(diagram, prime);
    let total = &c.order * prime;
    Ok(Output {
        json: json!({
            "input": resolved.label,
            "modulus": prime,
            "factors": strings(&c.factors),
            "order_mod_constants": c.order.to_string(),
            "colorings": total.to_string(),
            "trivial": c.is_trivial(),
        }),
        human: format!(
            "Z/{prime} colorings modulo constants: {} ({} colorings in all)\n",
            if c.is_trivial() {
                "trivial".to_string()
            } else {
                c.factors.iter().map(|f| format!("Z/{f}")).collect::<Vec<_>>().join(" + ")
            },
            total
        ),
    })
}
