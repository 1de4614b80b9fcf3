//! Property suites shared by the `properties` and `acceptance` targets. Each suite
//! runs a fixed number of cases from a deterministic generator.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use conelab::arith::{parse_field, Field, UPoly};
use conelab::cone::{analyze_hypersurface_point, Verdict};
use conelab::graded::binomial;
use conelab::groebner::buchberger;
use conelab::mpoly::{parse_poly, MPoly, Monomial, MonomialOrder, Ring};
use conelab::points::{hilbert_function_points, PointSet, ProjPoint};

pub const CASES: u32 = 100;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn upoly(field: &Field, coeffs: &[i64]) -> UPoly {
    UPoly::from_i64s(field, coeffs)
}

fn coeffs(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, len)
}

/// `gcd(a, b)` divides both and is multiplicative in a common factor; the
/// squarefree decomposition multiplies back to the input and has squarefree,
/// pairwise coprime parts.
pub fn gcd_and_squarefree(cases: u32) -> Result<(), String> {
    let fields: Vec<Field> = ["Q", "F5", "F7"]
        .iter()
        .map(|f| parse_field(f).unwrap())
        .collect();
    run(
        cases,
        (0usize..3, coeffs(1..5), coeffs(1..5), coeffs(1..4), 1u32..4),
        |(fi, a, b, c, k)| {
            let field = &fields[fi];
            let (a, b, c) = (upoly(field, &a), upoly(field, &b), upoly(field, &c));
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
            let lhs = (&a * &c).gcd(&(&b * &c));
            prop_assert_eq!(lhs, (&g * &c).monic());
            let f = &a * &c.pow(k);
            let parts = f.squarefree_decomposition().unwrap();
            let mut prod = UPoly::one(field);
            for (p, m) in &parts {
                prod = &prod * &p.pow(*m as u32);
                prop_assert!(p.gcd(&p.derivative()).is_constant() || field.characteristic() != 0);
            }
            prop_assert_eq!(prod, f.monic());
            for i in 0..parts.len() {
                for j in 0..i {
                    prop_assert!(parts[i].0.gcd(&parts[j].0).is_constant());
                }
            }
            Ok(())
        },
    )
}

fn terms3() -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
    prop::collection::vec((-5i64..=5, [0u32..4, 0u32..4, 0u32..3]), 1..6)
}

fn build(ring: &Ring, terms: &[(i64, [u32; 3])]) -> MPoly {
    let field = ring.field();
    MPoly::from_terms(
        ring,
        terms.iter().map(|(c, e)| {
            (
                Monomial::new(e[..ring.nvars()].to_vec()),
                field.from_i64(*c),
            )
        }),
    )
}

/// `(fg)_min = f_min g_min` and orders add.
pub fn lowest_form_multiplicative(cases: u32) -> Result<(), String> {
    let ring = Ring::new(&parse_field("Q").unwrap(), &["x", "y", "z"]).unwrap();
    run(cases, (terms3(), terms3()), |(a, b)| {
        let (f, g) = (build(&ring, &a), build(&ring, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = &f * &g;
        prop_assert_eq!(
            fg.order_at_origin().unwrap(),
            f.order_at_origin().unwrap() + g.order_at_origin().unwrap()
        );
        prop_assert_eq!(
            fg.lowest_form().unwrap(),
            &f.lowest_form().unwrap() * &g.lowest_form().unwrap()
        );
        Ok(())
    })
}

type GermCase = (Vec<[i64; 3]>, Vec<(i64, [u32; 3])>, Vec<i64>, i64);

/// A germ `l_1 ... l_e + h` with linear `l_i` and `h` of higher order, and a
/// linear change of coordinates with nonzero determinant.
fn germ_and_change(nvars: usize) -> impl Strategy<Value = GermCase> {
    (
        prop::collection::vec([-3i64..=3, -3i64..=3, -3i64..=3], 1..4),
        prop::collection::vec((-4i64..=4, [0u32..4, 0u32..4, 0u32..3]), 0..4),
        prop::collection::vec(-3i64..=3, nvars * nvars),
        prop_oneof![-7i64..=-1, 1i64..=7],
    )
}

fn det(m: &[i64], n: usize) -> i64 {
    match n {
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => unreachable!(),
    }
}

/// Multiplicity, tangent count and ordinariness are unchanged by scaling `f` and
/// by invertible linear coordinate changes.
pub fn analysis_invariance(cases: u32) -> Result<(), String> {
    let q = parse_field("Q").unwrap();
    let rings = [
        Ring::new(&q, &["x", "y"]).unwrap(),
        Ring::new(&q, &["x", "y", "z"]).unwrap(),
    ];
    run(
        cases,
        (0usize..2, germ_and_change(3)),
        |(ri, (lines, extra, mat, c))| {
            let ring = &rings[ri];
            let n = ring.nvars();
            let mat = &mat[..n * n];
            prop_assume!(det(mat, n) != 0);
            let mut f = MPoly::one(ring);
            for l in &lines {
                let lin = build(
                    ring,
                    &(0..n)
                        .map(|i| {
                            let mut e = [0u32; 3];
                            e[i] = 1;
                            (l[i], e)
                        })
                        .collect::<Vec<_>>(),
                );
                prop_assume!(!lin.is_zero());
                f = &f * &lin;
            }
            let e = lines.len() as u32;
            let higher: Vec<(i64, [u32; 3])> = extra
                .into_iter()
                .filter(|(_, ex)| ex[..n].iter().sum::<u32>() > e)
                .collect();
            if !higher.is_empty() {
                f = &f + &build(ring, &higher);
            }
            let origin = vec![q.zero(); n];
            let base = analyze_hypersurface_point(&f, &origin).unwrap();
            let scaled = analyze_hypersurface_point(&f.scale(&q.from_i64(c)), &origin).unwrap();
            let images: Vec<MPoly> = (0..n)
                .map(|i| {
                    build(
                        ring,
                        &(0..n)
                            .map(|j| {
                                let mut ex = [0u32; 3];
                                ex[j] = 1;
                                (mat[i * n + j], ex)
                            })
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            let changed =
                analyze_hypersurface_point(&f.substitute(&images).unwrap(), &origin).unwrap();
            for other in [&scaled, &changed] {
                prop_assert_eq!(other.multiplicity, base.multiplicity);
                prop_assert_eq!(other.tangent_count_geometric, base.tangent_count_geometric);
                prop_assert_eq!(other.ordinary, base.ordinary);
                prop_assert_eq!(
                    other.graded_reduced_geometric,
                    base.graded_reduced_geometric
                );
            }
            if n == 2 {
                prop_assert!(base.ordinary != Verdict::Undetermined);
            }
            Ok(())
        },
    )
}

/// Printing a polynomial and parsing it back gives the same polynomial.
pub fn parse_print_round_trip(cases: u32) -> Result<(), String> {
    let rings: Vec<Ring> = ["Q", "F5", "Q(t)", "F2(a)", "Q[s|s^2-2]"]
        .iter()
        .map(|f| Ring::new(&parse_field(f).unwrap(), &["x", "y", "z"]).unwrap())
        .collect();
    let params = ["1", "1", "t", "a", "s"];
    run(
        cases,
        (
            0usize..5,
            terms3(),
            prop::collection::vec((-3i64..=3, 0u32..3), 1..4),
        ),
        |(ri, terms, coeff_poly)| {
            let ring = &rings[ri];
            let mut f = build(ring, &terms);
            // a coefficient involving the field's parameter
            let c_text = coeff_poly
                .iter()
                .map(|(c, k)| format!("({c})*{}^{k}", params[ri]))
                .collect::<Vec<_>>()
                .join(" + ");
            let c = parse_poly(&c_text, ring).unwrap();
            f = &f * &c;
            if ri == 2 {
                f = &f * &parse_poly("1/(t + 1)", ring).unwrap();
            }
            let printed = f.to_string();
            let back = parse_poly(&printed, ring)
                .map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
            prop_assert_eq!(back, f);
            Ok(())
        },
    )
}

/// The reduced Gröbner basis does not depend on the generating set presented.
pub fn buchberger_presentation_independent(cases: u32) -> Result<(), String> {
    let ring = Ring::new(&parse_field("Q").unwrap(), &["x", "y", "z"]).unwrap();
    let small = || prop::collection::vec((-3i64..=3, [0u32..3, 0u32..3, 0u32..2]), 1..4);
    run(
        cases,
        (small(), small(), small(), -3i64..=3, 0usize..3),
        |(a, b, c, k, rot)| {
            let gens = vec![build(&ring, &a), build(&ring, &b), build(&ring, &c)];
            prop_assume!(gens.iter().all(|g| !g.is_zero()));
            let mut other = gens.clone();
            other[0] = &other[0] + &other[1].scale(&ring.field().from_i64(k));
            other[2] = &other[2] + &(&other[1] * &build(&ring, &[(1, [1, 0, 0])]));
            other.rotate_left(rot);
            for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
                let g1 = buchberger(&gens, order).unwrap();
                let g2 = buchberger(&other, order).unwrap();
                prop_assert_eq!(g1.generators(), g2.generators());
            }
            Ok(())
        },
    )
}

/// The Hilbert function of `e` points is nondecreasing, bounded by
/// `min(e, C(n + r, r))` and equal to `e` from degree `e - 1` on.
pub fn points_hilbert_function(cases: u32) -> Result<(), String> {
    let q = parse_field("Q").unwrap();
    run(
        cases,
        (1usize..4).prop_flat_map(|r| {
            (
                Just(r),
                prop::collection::vec(prop::collection::vec(-4i64..=4, r + 1), 1..9),
            )
        }),
        |(r, coords)| {
            let pts: Vec<ProjPoint> = coords
                .iter()
                .filter(|c| c.iter().any(|&v| v != 0))
                .map(|c| ProjPoint::from_i64(&q, c).unwrap())
                .collect();
            prop_assume!(!pts.is_empty());
            let ps = PointSet::new_dedup(pts).unwrap();
            let e = ps.len() as u64;
            let mut prev = 0;
            for n in 0..=e as u32 + 1 {
                let h = hilbert_function_points(&ps, n).unwrap();
                prop_assert!(h >= prev);
                prop_assert!(h <= e.min(binomial(n as u64 + r as u64, r as u64)));
                if n + 1 >= e as u32 {
                    prop_assert_eq!(h, e);
                }
                prev = h;
            }
            Ok(())
        },
    )
}

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

pub const SUITES: [Suite; 6] = [
    ("gcd and squarefree identities", gcd_and_squarefree),
    ("lowest form multiplicativity", lowest_form_multiplicative),
    (
        "scaling and coordinate change invariance",
        analysis_invariance,
    ),
    ("parse/print round trip", parse_print_round_trip),
    (
        "Buchberger presentation independence",
        buchberger_presentation_independent,
    ),
    (
        "points Hilbert function monotone, stabilizes at e",
        points_hilbert_function,
    ),
];
