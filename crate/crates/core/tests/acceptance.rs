//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p twistkit --test acceptance -- --nocapture` to see
//! the table.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use twistkit::algebra::{smith_normal_form, IntMatrix, LaurentPoly, PolyMatrix};
use twistkit::corpus::{example, riley_knot_images, square_knot_images, square_knot_presentation};
use twistkit::diagram::{wirtinger, LinkDiagram, WirtingerPresentation};
use twistkit::dynamics::{
    cyclic_resultant, fox_colorings, growth_sweep, mahler_1var, mahler_multivar, periodic_point_components,
    torsion_number, Sublattice,
};
use twistkit::reps::{
    assign_pair, extend_assignment, riley_polynomial, riley_torus_recursion, total_representation, ParabolicSeed,
    Representation, TwoBridgeData,
};
use twistkit::twisted::{
    analyze_wirtinger, analyze_words, build_presentation, coloring_polynomial, commutator_normal_generators,
    cyclotomic_test, evaluation_checks, fibering_report, h0_group, InvariantBundle, TwistedModulePresentation,
};

type Outcome = Result<String, String>;

fn report(id: u32, title: &str, outcome: Outcome) {
    match outcome {
        Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail}"),
        Err(why) => {
            println!("criterion {id:>2} FAIL  {title}: {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("test polynomial")
}

fn show(p: &LaurentPoly) -> String {
    p.to_string()
}

fn diagram(name: &str) -> Result<LinkDiagram, String> {
    example(name).and_then(|e| e.diagram()).map_err(|e| e.to_string())
}

fn parabolic_rep(pres: &WirtingerPresentation, phi: &str) -> Result<Representation, String> {
    let seed = ParabolicSeed::parse(phi).map_err(|e| e.to_string())?;
    let (x, y) = seed.parabolic_pair().map_err(|e| e.to_string())?;
    assign_pair(pres, &x, &y, &seed.ring_primes()).map_err(|e| e.to_string())
}

/// Total invariants from the built-in diagram.
fn total_from_diagram(name: &str, phi: &str) -> Result<(TwistedModulePresentation, InvariantBundle), String> {
    let pres = wirtinger(&diagram(name)?);
    let rep = parabolic_rep(&pres, phi)?;
    analyze_wirtinger(&pres, &rep).map_err(|e| e.to_string())
}

/// Total invariants from the 2-bridge word presentation.
fn total_from_words(alpha: u64, beta: u64, phi: &str) -> Result<(TwistedModulePresentation, InvariantBundle), String> {
    let data = TwoBridgeData::new(alpha, beta).map_err(|e| e.to_string())?;
    let seed = ParabolicSeed::parse(phi).map_err(|e| e.to_string())?;
    let rep = total_representation(&seed, &data, false).map_err(|e| e.to_string())?;
    analyze_words(&data.presentation(), &rep).map_err(|e| e.to_string())
}

fn expect_delta(label: &str, got: &LaurentPoly, want: &LaurentPoly) -> Result<(), String> {
    ensure(*got == want.normalize_unit(), || format!("{label}: got {}, want {}", show(got), show(want)))
}

#[test]
fn criterion_01_trefoil_total() {
    report(1, "trefoil total polynomial", (|| {
        let want = poly("t^2+1");
        let (_, pd) = total_from_diagram("trefoil", "w+1")?;
        expect_delta("diagram", &pd.delta, &want)?;
        let (_, words) = total_from_words(3, 1, "w+1")?;
        expect_delta("2-bridge words", &words.delta, &want)?;
        Ok(format!("Δ = {}", show(&pd.delta)))
    })());
}

#[test]
fn criterion_02_figure_eight_total() {
    report(2, "figure-eight total polynomial", (|| {
        let want = poly("(t^2-4*t+1)^2");
        let (_, pd) = total_from_diagram("figure-eight", "w^2-w+1")?;
        expect_delta("diagram", &pd.delta, &want)?;
        let (_, words) = total_from_words(5, 3, "w^2-w+1")?;
        expect_delta("2-bridge words", &words.delta, &want)?;
        Ok(format!("Δ = {}", show(&pd.delta)))
    })());
}

#[test]
fn criterion_03_five_two_total_and_fibering() {
    report(3, "5_2 total polynomial and fibering report", (|| {
        let want = poly("25*t^6-104*t^5+219*t^4-272*t^3+219*t^2-104*t+25");
        let (_, pd) = total_from_diagram("5_2", "w^3+w^2+2*w+1")?;
        expect_delta("diagram", &pd.delta, &want)?;
        let (_, words) = total_from_words(7, 3, "w^3+w^2+2*w+1")?;
        expect_delta("2-bridge words", &words.delta, &want)?;
        let fib = fibering_report(&pd.delta).map_err(|e| e.to_string())?;
        ensure(fib.trailing_abs == BigInt::from(25) && fib.leading_abs == BigInt::from(25), || {
            format!("fibering coefficients {} / {}", fib.trailing_abs, fib.leading_abs)
        })?;
        Ok(format!("Δ = {}, c0 = c1 = 25", show(&pd.delta)))
    })());
}

#[test]
fn criterion_04_riley_polynomials() {
    report(4, "Riley polynomials and torus recursion", (|| {
        let cases = [(3, 1, "w+1"), (5, 3, "w^2-w+1"), (7, 3, "w^3+w^2+2*w+1"), (8, 3, "w^2+2*w+2")];
        for (a, b, want) in cases {
            let data = TwoBridgeData::new(a, b).map_err(|e| e.to_string())?;
            let got = riley_polynomial(&data).map_err(|e| e.to_string())?.display_with(&["w"]);
            ensure(got == want, || format!("Φ({a},{b}) = {got}, want {want}"))?;
        }
        let rec = riley_torus_recursion(2).display_with(&["w"]);
        ensure(rec == "w^2+3*w+1", || format!("recursion gives {rec}"))?;
        let direct = riley_polynomial(&TwoBridgeData::new(5, 1).unwrap()).unwrap().display_with(&["w"]);
        ensure(direct == rec, || format!("direct Φ(5,1) = {direct}"))?;
        Ok("4 polynomials and Φ(5,1) = w^2+3*w+1 by recursion and directly".into())
    })());
}

#[test]
fn criterion_05_evaluation_at_one() {
    report(5, "|Δ(1)| = 2^deg φ", (|| {
        let cases = [
            ("trefoil", "w+1", 2u32),
            ("figure-eight", "w^2-w+1", 4),
            ("5_2", "w^3+w^2+2*w+1", 8),
            ("5_1", "w^2+3*w+1", 4),
        ];
        let mut seen = Vec::new();
        for (name, phi, want) in cases {
            let (_, b) = total_from_diagram(name, phi)?;
            let deg = ParabolicSeed::parse(phi).unwrap().degree();
            let ev = evaluation_checks(&b.delta, deg).map_err(|e| e.to_string())?;
            ensure(ev.at_one_holds && ev.at_one == BigInt::from(want), || {
                format!("{name}: |Δ(1)| = {}, want {want}", ev.at_one)
            })?;
            seen.push(format!("{name} {}", ev.at_one));
        }
        Ok(seen.join(", "))
    })());
}

#[test]
fn criterion_06_minus_one_diagnostic() {
    report(6, "|Δ(−1)|/2^deg φ is a square", (|| {
        let mut seen = Vec::new();
        for (name, phi, quotient, root) in [("figure-eight", "w^2-w+1", 9, 3), ("5_2", "w^3+w^2+2*w+1", 121, 11)] {
            let (_, b) = total_from_diagram(name, phi)?;
            let deg = ParabolicSeed::parse(phi).unwrap().degree();
            let ev = evaluation_checks(&b.delta, deg).map_err(|e| e.to_string())?;
            ensure(
                ev.minus_one_quotient == Some(BigInt::from(quotient)) && ev.square_root == Some(BigInt::from(root)),
                || format!("{name}: quotient {:?}, root {:?}", ev.minus_one_quotient, ev.square_root),
            )?;
            seen.push(format!("{name} {quotient} = {root}^2"));
        }
        Ok(seen.join(", "))
    })());
}

#[test]
fn criterion_07_torus_knot_cyclotomic() {
    report(7, "(5,2) torus knot is cyclotomic", (|| {
        let want = poly("(t^2+1)*(t^10+1)");
        let (_, b) = total_from_diagram("5_1", "w^2+3*w+1")?;
        expect_delta("diagram", &b.delta, &want)?;
        let cyc = cyclotomic_test(&b.delta).map_err(|e| e.to_string())?;
        ensure(cyc, || "cyclotomic test rejected Δ".into())?;
        ensure(!cyclotomic_test(&poly("t^2-3*t+1")).unwrap(), || "control polynomial accepted".into())?;
        Ok(format!("Δ = {}", show(&b.delta)))
    })());
}

#[test]
fn criterion_08_whitehead() {
    report(8, "Whitehead link grid, H₀ and untwisted polynomial", (|| {
        let grid = [
            [1, -4, 6, -4, 1],
            [-4, 12, -16, 12, -4],
            [6, -16, 28, -16, 6],
            [-4, 12, -16, 12, -4],
            [1, -4, 6, -4, 1],
        ];
        let want = LaurentPoly::from_terms(
            2,
            (0..5).flat_map(|i| (0..5).map(move |j| (vec![i as i64, j as i64], BigInt::from(grid[i][j])))),
        );
        let pres = wirtinger(&diagram("whitehead")?);
        let rep = parabolic_rep(&pres, "w^2+2*w+2")?;
        let (_, b) = analyze_wirtinger(&pres, &rep).map_err(|e| e.to_string())?;
        expect_delta("total", &b.delta, &want)?;

        let normal = commutator_normal_generators(&pres.abelianization, pres.components);
        let h0 = h0_group(&rep.images, &normal).map_err(|e| e.to_string())?;
        ensure(h0.free_rank_of_cokernel == 0 && h0.torsion_order() == BigInt::from(4), || {
            format!("H₀ torsion {} free rank {}", h0.torsion_order(), h0.free_rank_of_cokernel)
        })?;

        let untwisted = Representation::identity(pres.generators, 1);
        let (_, u) = analyze_wirtinger(&pres, &untwisted).map_err(|e| e.to_string())?;
        expect_delta("untwisted", &u.delta, &poly("(t1-1)*(t2-1)"))?;
        Ok(format!("grid exact, |H₀| = 4, untwisted {}", show(&u.delta)))
    })());
}

#[test]
fn criterion_09_riley_and_square_knots() {
    report(9, "Riley's knot and square knot families", (|| {
        let square = square_knot_presentation();
        let square_delta = |u: i64, v: i64| -> Result<LaurentPoly, String> {
            let rep = Representation::new(square_knot_images(u, v), vec![]).map_err(|e| e.to_string())?;
            let (_, b) = analyze_words(&square, &rep).map_err(|e| e.to_string())?;
            Ok(b.delta)
        };
        let family_one = poly("(t-1)^2*(t^2+1)^2");
        for v in -2..=2 {
            expect_delta(&format!("square u=1 v={v}"), &square_delta(1, v)?, &family_one)?;
        }
        let zero_one = square_delta(0, 1)?;
        expect_delta("square u=0 v=1", &zero_one, &poly("(t^2-t+1)^2*(t^2+1)"))?;

        let riley_want = poly("(t-1)^4*(t^2+1)");
        let jacobian_want = poly("(t-1)^6*(t^2+1)");
        let pres = wirtinger(&diagram("riley").map_err(|e| format!("Riley's knot: {e}"))?);
        let known: BTreeMap<usize, IntMatrix> = riley_knot_images(1).into_iter().enumerate().collect();
        let rep = extend_assignment(&pres, &known, &[]).map_err(|e| e.to_string())?;
        let tp = build_presentation(&pres, &rep).map_err(|e| e.to_string())?;
        let jac = coloring_polynomial(&tp).map_err(|e| e.to_string())?;
        expect_delta("Riley Jacobian", &jac, &jacobian_want)?;
        let (_, b) = analyze_wirtinger(&pres, &rep).map_err(|e| e.to_string())?;
        expect_delta("Riley total", &b.delta, &riley_want)?;
        ensure(b.delta != family_one.normalize_unit() && b.delta != zero_one, || "knots not distinguished".into())?;
        Ok("square families and Riley's knot match".into())
    })());
}

#[test]
fn criterion_10_mahler_measures() {
    report(10, "Mahler measures", (|| {
        let m0 = mahler_1var(&poly("t^2+1")).map_err(|e| e.to_string())?;
        ensure(m0.abs() < 1e-8, || format!("m(t^2+1) = {m0}"))?;
        let m8 = mahler_1var(&poly("(t^2-4*t+1)^2")).map_err(|e| e.to_string())?;
        ensure((m8 - 2.63392).abs() < 1e-4, || format!("figure-eight {m8}"))?;
        let (_, b) = total_from_diagram("5_2", "w^3+w^2+2*w+1")?;
        let m52 = mahler_1var(&b.delta).map_err(|e| e.to_string())?;
        ensure((m52 - 3.82317).abs() < 1e-4, || format!("5_2 {m52}"))?;
        let (_, w) = total_from_words(8, 3, "w^2+2*w+2")?;
        let mw = mahler_multivar(&w.delta, 1e-6);
        ensure((mw.value - 2.5).abs() < 0.05, || format!("Whitehead {mw:?}"))?;
        Ok(format!("0, {m8:.6}, {m52:.6}, {:.4}", mw.value))
    })());
}

/// `|∏_{ζ^r = 1} Δ(ζ)|` by floating point, rounded.
fn product_formula(delta: &LaurentPoly, r: usize) -> f64 {
    (0..r)
        .map(|k| {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / r as f64);
            delta.evaluate_complex(&[z]).expect("one variable")
        })
        .fold(Complex64::new(1.0, 0.0), |acc, v| acc * v)
        .norm()
        .round()
}

#[test]
fn criterion_11_torsion_growth() {
    report(11, "torsion growth against Mahler measure", (|| {
        let (tp, b) = total_from_diagram("figure-eight", "w^2-w+1")?;
        let frozen: [u64; 8] = [4, 144, 2500, 36864, 521284, 7290000, 101646724, 1416167424];
        for (r, &want) in (1..=8).zip(&frozen) {
            let lat = Sublattice::cyclic(r as u64).map_err(|e| e.to_string())?;
            let got = torsion_number(&tp, &lat, &[]).map_err(|e| e.to_string())?.b;
            let oracle = product_formula(&b.delta, r);
            let resultant = cyclic_resultant(&b.delta, r).map_err(|e| e.to_string())?;
            ensure(got == BigInt::from(want) && resultant == got && oracle == want as f64, || {
                format!("r = {r}: b = {got}, resultant {resultant}, product {oracle}, frozen {want}")
            })?;
        }
        let fig8 = growth_sweep(&tp, 14, &[], Some(&b.delta)).map_err(|e| e.to_string())?;
        let rel = (fig8.extrapolated_rate - 2.63392).abs() / 2.63392;
        ensure(rel < 0.05, || format!("figure-eight rate {} (relative error {rel})", fig8.extrapolated_rate))?;

        let (tp3, b3) = total_from_diagram("trefoil", "w+1")?;
        let tre = growth_sweep(&tp3, 14, &[], Some(&b3.delta)).map_err(|e| e.to_string())?;
        ensure(tre.extrapolated_rate.abs() < 0.1, || format!("trefoil rate {}", tre.extrapolated_rate))?;
        Ok(format!("figure-eight {:.5} ({:.2}%), trefoil {:.5}", fig8.extrapolated_rate, rel * 100.0, tre.extrapolated_rate))
    })());
}

/// Colorings `arcs → ℤ/p` by brute force, modulo constants.
fn brute_force_colorings(d: &LinkDiagram, p: u64) -> u64 {
    let n = d.arc_count as u32;
    let mut count = 0;
    for code in 0..p.pow(n) {
        let colors: Vec<u64> = (0..n).map(|i| code / p.pow(i) % p).collect();
        if d.crossings.iter().all(|c| (2 * colors[c.over] + 2 * p - colors[c.left()] - colors[c.right()]) % p == 0) {
            count += 1;
        }
    }
    count / p
}

#[test]
fn criterion_12_untwisted_sanity() {
    report(12, "untwisted polynomials, colorings, period-2 points", (|| {
        for (name, want) in [("trefoil", "t^2-t+1"), ("figure-eight", "t^2-3*t+1")] {
            let pres = wirtinger(&diagram(name)?);
            let (_, b) = analyze_wirtinger(&pres, &Representation::identity(pres.generators, 1))
                .map_err(|e| e.to_string())?;
            expect_delta(name, &b.delta, &poly(want))?;
        }
        let tre = diagram("trefoil")?;
        let c3 = fox_colorings(&tre, 3);
        ensure(c3.factors == vec![BigInt::from(3)] && brute_force_colorings(&tre, 3) == 3, || format!("{c3:?}"))?;
        let c5 = fox_colorings(&tre, 5);
        ensure(c5.is_trivial() && brute_force_colorings(&tre, 5) == 1, || format!("{c5:?}"))?;

        let fig8 = diagram("figure-eight")?;
        let pres = wirtinger(&fig8);
        let (tp, _) =
            analyze_wirtinger(&pres, &Representation::identity(pres.generators, 1)).map_err(|e| e.to_string())?;
        let (torsion, free) =
            periodic_point_components(&tp, &Sublattice::cyclic(2).unwrap()).map_err(|e| e.to_string())?;
        let brute = brute_force_colorings(&fig8, 5);
        ensure(torsion == BigInt::from(5) && free == 0 && brute == 5, || {
            format!("components {torsion} (free {free}), brute force {brute}")
        })?;
        Ok("Alexander polynomials, ℤ/3 and trivial colorings, 5 period-2 components".into())
    })());
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(rng.random_range(-2..=2));
        m = &m * &e;
    }
    m
}

fn random_int_matrix(rng: &mut StdRng, r: usize, c: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.random_range(-6..=6)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let coeffs: Vec<i64> = (0..rng.random_range(1..5)).map(|_| rng.random_range(-3..=3)).collect();
    LaurentPoly::univariate(&coeffs)
}

#[test]
fn criterion_13_property_suites() {
    report(13, "seeded property suites", (|| {
        let mut rng = StdRng::seed_from_u64(0x7457);

        for (name, phi) in [("trefoil", "w+1"), ("figure-eight", "w^2-w+1")] {
            let pres = wirtinger(&diagram(name)?);
            let rep = parabolic_rep(&pres, phi)?;
            let (_, base) = analyze_wirtinger(&pres, &rep).map_err(|e| e.to_string())?;
            for trial in 0..20 {
                let p = random_unimodular(&mut rng, rep.dimension);
                let conj = rep.conjugate(&p).map_err(|e| e.to_string())?;
                let (_, b) = analyze_wirtinger(&pres, &conj).map_err(|e| e.to_string())?;
                ensure(b.delta == base.delta, || format!("{name} conjugation {trial} changed Δ"))?;
            }
        }

        let full = riley_polynomial(&TwoBridgeData::new(9, 1).unwrap()).map_err(|e| e.to_string())?;
        let first = LaurentPoly::parse_with("w+1", &["w"]).unwrap();
        let second = full.div_exact(&first).map_err(|e| format!("w+1 does not divide Φ(9,1): {e}"))?;
        let names = ["w"];
        let (_, whole) = total_from_words(9, 1, &full.display_with(&names))?;
        let (_, a) = total_from_words(9, 1, &first.display_with(&names))?;
        let (_, b) = total_from_words(9, 1, &second.display_with(&names))?;
        expect_delta("multiplicativity", &whole.delta, &(&a.delta * &b.delta))?;

        for _ in 0..20 {
            let m = random_int_matrix(&mut rng, 3, 4);
            let moved = &(&random_unimodular(&mut rng, 3) * &m) * &random_unimodular(&mut rng, 4);
            let (s, t) = (smith_normal_form(&m), smith_normal_form(&moved));
            ensure(s.invariant_factors == t.invariant_factors && s.rank == t.rank, || format!("SNF moved for {m:?}"))?;
        }

        for _ in 0..10 {
            let entries = |rng: &mut StdRng| -> Vec<Vec<LaurentPoly>> {
                (0..2).map(|_| (0..2).map(|_| random_poly(rng)).collect()).collect()
            };
            let a = PolyMatrix::from_rows(entries(&mut rng), 1).unwrap();
            let b = PolyMatrix::from_rows(entries(&mut rng), 1).unwrap();
            let lhs = (&a * &b).det().map_err(|e| e.to_string())?;
            let rhs = &a.det().unwrap() * &b.det().unwrap();
            ensure(lhs == rhs, || "det(AB) ≠ det A det B".into())?;
        }

        for _ in 0..20 {
            let (p, q) = (random_poly(&mut rng), random_poly(&mut rng));
            if p.is_zero() || q.is_zero() {
                continue;
            }
            let lhs = mahler_1var(&(&p * &q)).map_err(|e| e.to_string())?;
            let rhs = mahler_1var(&p).unwrap() + mahler_1var(&q).unwrap();
            ensure((lhs - rhs).abs() < 1e-8, || format!("m(pq) = {lhs}, m(p) + m(q) = {rhs}"))?;
        }
        Ok("conjugation, multiplicativity, SNF, det and Mahler checks".into())
    })());
}
