//! Acceptance criteria, one line each: `PASS`/`FAIL`, name, elapsed time against
//! its budget. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conelab::arith::{parse_field, FieldElem};
use conelab::branches::{branch_analysis, DEFAULT_DEPTH_LIMIT};
use conelab::cli::run_corpus;
use conelab::cone::{
    analyze_curve_ideal, analyze_hypersurface_point, check_generic_tangents_reduced, Verdict,
};
use conelab::graded::GradedQuotient;
use conelab::groebner::{buchberger, tangent_cone_ideal};
use conelab::mpoly::{parse_point, parse_poly, MPoly, MonomialOrder, Ring};
use conelab::points::{
    hilbert_function_points, is_generic_position, parse_points, PointSet, ProjPoint,
};
use conelab::subvariety::{
    analyze_closed_point, analyze_generic_point, analyze_subvariety, fiber_cone_consistency,
    normal_flatness_check, SubvarietySpec, DEFAULT_SAMPLES, DEFAULT_SEED,
};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ring(field: &str, vars: &[&str]) -> Ring {
    Ring::new(&parse_field(field).unwrap(), vars).unwrap()
}

fn poly(r: &Ring, text: &str) -> MPoly {
    parse_poly(text, r).unwrap()
}

fn point(r: &Ring, text: &str) -> Vec<FieldElem> {
    parse_point(text, r.field()).unwrap()
}

fn inseparable_tangent() -> Outcome {
    let r = ring("F2(a)", &["X", "Y"]);
    let rep = analyze_hypersurface_point(&poly(&r, "Y^2 - a*X^2 - X^3"), &point(&r, "0,0"))
        .map_err(|e| e.to_string())?;
    let got = (
        rep.multiplicity,
        rep.emdim,
        rep.graded_reduced_base,
        rep.graded_reduced_geometric,
        rep.tangent_count_geometric,
        rep.ordinary,
        rep.seminormal_flag,
    );
    let want = (
        2,
        2,
        Some(true),
        Some(false),
        Some(1),
        Verdict::No,
        Some(true),
    );
    ensure!(got == want, "got {got:?}, want {want:?}");
    Ok(())
}

fn planes_along_a_line(n: u32) -> Outcome {
    let r = ring("Q", &["x1", "x2", "x3"]);
    let spec = SubvarietySpec::new(poly(&r, &format!("x1*x2^{n} - x3^{n}")), &["x2", "x3"])
        .map_err(|e| e.to_string())?;
    let err = |e: conelab::subvariety::SubvarietyError| e.to_string();
    for a in ["1", "2", "-1"] {
        let p = point(&r, &format!("{a},0,0"));
        let rep = analyze_closed_point(&spec, &p).map_err(err)?;
        ensure!(
            rep.ordinary == Verdict::Yes && rep.tangent_count_geometric == Some(n as usize),
            "at a = {a}: ordinary {}, tangents {:?}",
            rep.ordinary,
            rep.tangent_count_geometric
        );
        ensure!(
            normal_flatness_check(&spec, &p).map_err(err)?,
            "not normally flat at a = {a}"
        );
    }
    let o = point(&r, "0,0,0");
    let rep = analyze_closed_point(&spec, &o).map_err(err)?;
    ensure!(
        rep.multiplicity == n as u64
            && rep.tangent_count_geometric == Some(1)
            && rep.ordinary == Verdict::No,
        "origin: e {}, tangents {:?}, ordinary {}",
        rep.multiplicity,
        rep.tangent_count_geometric,
        rep.ordinary
    );
    ensure!(
        normal_flatness_check(&spec, &o).map_err(err)?,
        "not normally flat at the origin"
    );
    ensure!(
        analyze_generic_point(&spec).map_err(err)?.ordinary == Verdict::Yes,
        "generic point not ordinary"
    );
    let report = analyze_subvariety(&spec, DEFAULT_SAMPLES, DEFAULT_SEED).map_err(err)?;
    ensure!(
        report.ordinary_subvariety == Verdict::Yes,
        "subvariety not ordinary"
    );
    let locus = report.exceptional_locus.ok_or("no exceptional locus")?;
    ensure!(locus.render() == "x1 = 0", "locus {}", locus.render());
    ensure!(
        locus.sampling_consistent,
        "sampled points disagree with the locus"
    );
    // the locus is exactly {a = 0}: the origin is in it, the sampled values are not
    let q = r.field();
    ensure!(
        locus.contains(&[q.zero()]).map_err(err)?,
        "origin outside the locus"
    );
    for a in [1, 2, -1] {
        ensure!(
            !locus.contains(&[q.from_i64(a)]).map_err(err)?,
            "a = {a} inside the locus"
        );
    }
    Ok(())
}

/// Rank of an integer matrix by fraction-free elimination in i128.
fn integer_rank(mut m: Vec<Vec<i128>>) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                let pivot = m[rank].clone();
                for (v, pv) in m[r].iter_mut().zip(&pivot) {
                    *v = *v * a - pv * b;
                }
                let g = m[r].iter().fold(0i128, |g, &v| num_gcd(g, v));
                if g > 1 {
                    m[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn conic_rank(points: &[[i64; 3]]) -> usize {
    let rows = points
        .iter()
        .map(|&[a, b, c]| {
            let (a, b, c) = (a as i128, b as i128, c as i128);
            vec![a * a, a * b, a * c, b * b, b * c, c * c]
        })
        .collect();
    integer_rank(rows)
}

fn generic_position_of_points() -> Outcome {
    let q = parse_field("Q").unwrap();
    let on_conic: Vec<[i64; 3]> = (0..6).map(|t| [1, t, t * t]).collect();
    let ps = PointSet::new(
        on_conic
            .iter()
            .map(|c| ProjPoint::from_i64(&q, c).unwrap())
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let h2 = hilbert_function_points(&ps, 2).map_err(|e| e.to_string())?;
    ensure!(h2 == 5 && conic_rank(&on_conic) == 5, "H(2) = {h2}");
    ensure!(
        !is_generic_position(&ps).map_err(|e| e.to_string())?,
        "six points on a conic called generic"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut generic = 0;
    for _ in 0..100 {
        let pts: Vec<[i64; 3]> = (0..6)
            .map(|_| {
                [
                    rng.gen_range(-20..=20),
                    rng.gen_range(-20..=20),
                    rng.gen_range(1..=20),
                ]
            })
            .collect();
        let set = PointSet::new_dedup(
            pts.iter()
                .map(|c| ProjPoint::from_i64(&q, c).unwrap())
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let g = set.len() == 6 && is_generic_position(&set).map_err(|e| e.to_string())?;
        // six distinct points are generic exactly when no conic passes through them
        let oracle = set.len() == 6 && conic_rank(&pts) == 6;
        ensure!(g == oracle, "generic = {g}, oracle = {oracle} for {pts:?}");
        generic += g as u32;
    }
    ensure!(
        generic >= 95,
        "only {generic}/100 random six-point sets generic"
    );

    for _ in 0..50 {
        let size = rng.gen_range(2..=10);
        let mut text = Vec::new();
        for _ in 0..size {
            text.push(format!(
                "{}:{}",
                rng.gen_range(-30..=30),
                rng.gen_range(1..=30)
            ));
        }
        let set = parse_points(&text.join(";"), &q).map_err(|e| e.to_string());
        let set = match set {
            Ok(s) => s,
            // duplicates after normalization: keep the distinct ones
            Err(_) => PointSet::new_dedup(
                text.iter()
                    .map(|t| conelab::points::parse_proj_point(t, &q).unwrap())
                    .collect(),
            )
            .unwrap(),
        };
        ensure!(
            is_generic_position(&set).map_err(|e| e.to_string())?,
            "points of P^1 not generic: {text:?}"
        );
    }
    Ok(())
}

fn plane_curve_equivalences() -> Outcome {
    let r = ring("Q", &["x", "y"]);
    let corpus = [
        ("node", "y^2 - x^2 - x^3", true),
        ("cusp", "y^2 - x^3", false),
        ("tacnode", "y^2 - x^4", false),
        ("A4", "(y - x^2)^2 - x^5", false),
        ("E6", "y^3 - x^4", false),
        ("triple point", "y^3 - x^3 + x^4", true),
        ("ramphoid cusp", "y^2 - x^5", false),
        ("smooth", "y - x^2", true),
    ];
    let origin = point(&r, "0,0");
    for (name, text, want) in corpus {
        let f = poly(&r, text);
        let rep = analyze_hypersurface_point(&f, &origin).map_err(|e| e.to_string())?;
        let e = rep.multiplicity;
        let by_count = rep.tangent_count_geometric == Some(e as usize);
        let by_squarefree = binary_form_squarefree(&f.lowest_form().unwrap(), e);
        let branches = branch_analysis(&f, DEFAULT_DEPTH_LIMIT).map_err(|e| e.to_string())?;
        ensure!(branches.complete, "{name}: branch analysis incomplete");
        let by_branches = branches.ordinary() == Some(true);
        ensure!(
            by_count == by_squarefree && by_squarefree == by_branches,
            "{name}: count {by_count}, squarefree {by_squarefree}, branches {by_branches}"
        );
        ensure!(
            branches.total_order == e,
            "{name}: branch orders sum to {}, e = {e}",
            branches.total_order
        );
        ensure!(
            by_count == want,
            "{name}: ordinary {by_count}, expected {want}"
        );
        ensure!(
            rep.ordinary == Verdict::from_bool(want),
            "{name}: verdict {}",
            rep.ordinary
        );
    }
    Ok(())
}

/// A binary form of degree `e` is squarefree over the closure when its
/// dehomogenization has no repeated factor and loses at most one degree.
fn binary_form_squarefree(form: &MPoly, e: u64) -> bool {
    let field = form.ring().field().clone();
    let one = MPoly::constant(form.ring(), field.one());
    let y = MPoly::var(form.ring(), 1);
    let g = form.substitute(&[one, y]).unwrap().to_upoly(1).unwrap();
    let deg = g.degree().unwrap_or(0) as u64;
    deg + 1 >= e
        && g.squarefree_decomposition()
            .unwrap()
            .iter()
            .all(|(_, m)| *m == 1)
}

fn reduced_cones_of_ordinary_points() -> Outcome {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/corpus/paper_examples.corpus"
    ))
    .map_err(|e| e.to_string())?;
    let out = run_corpus(&text);
    let mut checked = 0;
    for rec in &out.records {
        let Some(rep) = &rec.report else { continue };
        // branch-only reports do not compute the graded ring
        if rep.field != "Q" || rep.ordinary != Some(Verdict::Yes) || rep.command == "branches" {
            continue;
        }
        ensure!(
            rep.graded_reduced_base == Some(true),
            "{}: graded ring not reduced",
            rec.name
        );
        checked += 1;
    }
    ensure!(checked >= 8, "only {checked} ordinary entries");
    for (r, gens) in [
        (ring("Q", &["x", "y", "z"]), vec!["x*y", "y*z", "x*z"]),
        (ring("Q", &["x", "y"]), vec!["y^2 - x^2 - x^3"]),
        (
            ring("Q", &["x", "y", "z", "w"]),
            vec!["x*y", "x*z", "x*w", "y*z", "y*w", "z*w"],
        ),
    ] {
        let gens: Vec<MPoly> = gens.iter().map(|g| poly(&r, g)).collect();
        let rep = analyze_curve_ideal(&gens).map_err(|e| e.to_string())?;
        if rep.ordinary != Verdict::Yes {
            continue;
        }
        let cone = tangent_cone_ideal(&gens).map_err(|e| e.to_string())?;
        let q = GradedQuotient::new(&cone).map_err(|e| e.to_string())?;
        let ps = PointSet::new(rep.tangent_points.clone()).map_err(|e| e.to_string())?;
        ensure!(
            ps.len() as u64 == rep.multiplicity,
            "tangent directions not all rational"
        );
        let mut stable = 0;
        for n in 0..=10 {
            let (hc, hp) = (
                q.hilbert(n),
                hilbert_function_points(&ps, n).map_err(|e| e.to_string())?,
            );
            ensure!(hc == hp, "cone HF {hc} != points HF {hp} at degree {n}");
            stable = if hp == rep.multiplicity {
                stable + 1
            } else {
                0
            };
        }
        ensure!(stable >= 2, "Hilbert function did not stabilize");
        ensure!(
            check_generic_tangents_reduced(&rep, &cone).map_err(|e| e.to_string())?,
            "reducedness check failed"
        );
    }
    let r = ring("Q", &["x", "y", "z"]);
    let axes: Vec<MPoly> = ["x*y", "y*z", "x*z"].iter().map(|g| poly(&r, g)).collect();
    let rep = analyze_curve_ideal(&axes).map_err(|e| e.to_string())?;
    ensure!(
        rep.multiplicity == 3
            && rep.tangent_points.len() == 3
            && rep.tangents_generic_position == Some(true)
            && rep.graded_reduced_geometric == Some(true),
        "axes: {:?}",
        (
            rep.multiplicity,
            rep.tangent_points.len(),
            rep.tangents_generic_position,
            rep.graded_reduced_geometric
        )
    );
    Ok(())
}

fn monomial_space_curve() -> Outcome {
    let fixture: serde_json::Value =
        serde_json::from_str(include_str!("fixtures/monomial_curve_tangent_cone.json"))
            .map_err(|e| e.to_string())?;
    let r = ring("Q", &["x", "y", "z"]);
    let gens: Vec<MPoly> = fixture["ideal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| poly(&r, g.as_str().unwrap()))
        .collect();
    let cone = tangent_cone_ideal(&gens).map_err(|e| e.to_string())?;
    let oracle: Vec<MPoly> = fixture["tangent_cone_groebner_grevlex"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| poly(&r, g.as_str().unwrap()))
        .collect();
    let ours =
        buchberger(cone.generators(), MonomialOrder::DegRevLex).map_err(|e| e.to_string())?;
    let theirs = buchberger(&oracle, MonomialOrder::DegRevLex).map_err(|e| e.to_string())?;
    ensure!(
        ours.generators() == theirs.generators(),
        "cone {:?} differs from the oracle",
        cone.generators()
    );
    let q = GradedQuotient::new(&cone).map_err(|e| e.to_string())?;
    let hf: Vec<u64> = (0..=8).map(|n| q.hilbert(n)).collect();
    let want: Vec<u64> = fixture["hilbert_function"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    ensure!(
        hf == want && hf[..3] == [1, 3, 3],
        "HF {hf:?}, oracle {want:?}"
    );
    let rep = analyze_curve_ideal(&gens).map_err(|e| e.to_string())?;
    let oracle_points = fixture["projective_points"].as_array().unwrap().len();
    ensure!(
        rep.multiplicity == 3
            && rep.tangent_count_geometric == Some(oracle_points)
            && oracle_points == 1,
        "e {}, points {:?}, oracle points {oracle_points}",
        rep.multiplicity,
        rep.tangent_count_geometric
    );
    ensure!(rep.ordinary == Verdict::No, "ordinary {}", rep.ordinary);
    Ok(())
}

fn fiber_cone_identity() -> Outcome {
    let r = ring("Q", &["x1", "x2", "x3"]);
    let spec = SubvarietySpec::new(poly(&r, "x1*x2^2 - x3^2"), &["x2", "x3"])
        .map_err(|e| e.to_string())?;
    let c = fiber_cone_consistency(&spec, &point(&r, "2,0,0"), 6).map_err(|e| e.to_string())?;
    // plane conic: 1, 2, 2, ...; quadric cone in three variables: 2n + 1
    let fiber: Vec<u64> = (0..=6).map(|n| if n == 0 { 1 } else { 2 }).collect();
    let full: Vec<u64> = (0..=6).map(|n| 2 * n + 1).collect();
    ensure!(
        c.fiber == fiber && c.full == full,
        "fiber {:?}, full {:?}",
        c.fiber,
        c.full
    );
    ensure!(c.product_identity, "convolution identity fails");
    ensure!(
        c.generic_matches,
        "generic fiber {:?} != closed fiber {:?}",
        c.generic_fiber,
        c.fiber
    );
    Ok(())
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    for (name, suite) in common::SUITES {
        let start = Instant::now();
        let result = suite(common::CASES);
        println!(
            "    {} {name} ({} cases, {:.2?})",
            if result.is_ok() { "ok  " } else { "FAIL" },
            common::CASES,
            start.elapsed()
        );
        if let Err(e) = result {
            failures.push(format!("{name}: {e}"));
        }
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "1 inseparable tangent over F2(a)",
            1,
            Box::new(inseparable_tangent),
        ),
        (
            "2 planes along a line, n = 2",
            1,
            Box::new(|| planes_along_a_line(2)),
        ),
        (
            "2 planes along a line, n = 3",
            1,
            Box::new(|| planes_along_a_line(3)),
        ),
        (
            "3 generic position of points",
            5,
            Box::new(generic_position_of_points),
        ),
        (
            "4 plane curve ordinariness equivalences",
            2,
            Box::new(plane_curve_equivalences),
        ),
        (
            "5 reduced tangent cones at ordinary points",
            2,
            Box::new(reduced_cones_of_ordinary_points),
        ),
        (
            "6 monomial space curve against oracle",
            5,
            Box::new(monomial_space_curve),
        ),
        (
            "7 fiber cone Hilbert function identity",
            2,
            Box::new(fiber_cone_identity),
        ),
        ("8 property suites", 60, Box::new(property_suites)),
    ];
    let mut failed = 0;
    for (name, budget, check) in &criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*budget);
        let ok = result.is_ok() && within;
        failed += !ok as usize;
        let detail = match (&result, within) {
            (Err(e), _) => format!(": {e}"),
            (Ok(()), false) => ": over time budget".into(),
            _ => String::new(),
        };
        println!(
            "{} criterion {name} [{elapsed:.2?} / {budget}s]{detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
