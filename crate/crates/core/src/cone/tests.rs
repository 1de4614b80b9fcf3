use super::*;
use crate::arith::{parse_field, FieldElem};
use crate::mpoly::{parse_point, parse_poly, MPoly, Ring};

fn setup(field: &str, vars: &[&str], poly: &str, point: &str) -> (MPoly, Vec<FieldElem>) {
    let f = parse_field(field).unwrap();
    let ring = Ring::new(&f, vars).unwrap();
    (
        parse_poly(poly, &ring).unwrap(),
        parse_point(point, &f).unwrap(),
    )
}

fn point_report(field: &str, vars: &[&str], poly: &str, point: &str) -> SingularPointReport {
    let (f, p) = setup(field, vars, poly, point);
    analyze_hypersurface_point(&f, &p).unwrap()
}

fn curve_report(vars: &[&str], gens: &[&str]) -> SingularPointReport {
    let ring = Ring::new(&parse_field("Q").unwrap(), vars).unwrap();
    let gens: Vec<MPoly> = gens.iter().map(|g| parse_poly(g, &ring).unwrap()).collect();
    analyze_curve_ideal(&gens).unwrap()
}

#[test]
fn inseparable_tangent_in_characteristic_two() {
    let r = point_report("F2(a)", &["X", "Y"], "Y^2 - a*X^2 - X^3", "0,0");
    assert_eq!(r.multiplicity, 2);
    assert_eq!(r.emdim, 2);
    assert_eq!(r.tangent_count_geometric, Some(1));
    assert_eq!(r.ordinary, Verdict::No);
    assert_eq!(r.graded_reduced_base, Some(true));
    assert_eq!(r.graded_reduced_geometric, Some(false));
    assert_eq!(r.seminormal_flag, Some(true));
}

#[test]
fn planes_through_a_line() {
    let r = point_report("Q", &["x1", "x2", "x3"], "x1*x2^3 - x3^3", "2,0,0");
    assert_eq!((r.multiplicity, r.tangent_count_geometric), (3, Some(3)));
    assert_eq!(r.ordinary, Verdict::Yes);
    let r = point_report("Q", &["x1", "x2", "x3"], "x1*x2^2 - x3^2", "1,0,0");
    assert_eq!(r.ordinary, Verdict::Yes);
    assert_eq!(r.tangent_strings(), vec!["x2 + x3", "x2 - x3"]);
    let r = point_report("Q", &["x1", "x2", "x3"], "x1*x2^3 - x3^3", "0,0,0");
    assert_eq!((r.multiplicity, r.tangent_count_geometric), (3, Some(1)));
    assert_eq!(r.ordinary, Verdict::No);
    assert_eq!(r.tangent_strings(), vec!["x3"]);
}

#[test]
fn smooth_points_and_errors() {
    let r = point_report("Q", &["x", "y"], "y - x^2", "0,0");
    assert_eq!(r.multiplicity, 1);
    assert_eq!(r.emdim, 1);
    assert_eq!(r.ordinary, Verdict::Yes);
    assert_eq!(r.tangent_strings(), vec!["y"]);
    let (f, _) = setup("Q", &["x", "y"], "y - x^2", "0,0");
    let p = parse_point("1,0", f.ring().field()).unwrap();
    assert!(matches!(
        analyze_hypersurface_point(&f, &p),
        Err(ConeError::NotOnVariety(_))
    ));
}

#[test]
fn plane_curve_classics() {
    let node = point_report("Q", &["x", "y"], "y^2 - x^2 - x^3", "0,0");
    assert_eq!(node.ordinary, Verdict::Yes);
    assert_eq!(node.graded_reduced_base, Some(true));
    let cusp = point_report("Q", &["x", "y"], "y^2 - x^3", "0,0");
    assert_eq!(
        (cusp.tangent_count_geometric, cusp.ordinary),
        (Some(1), Verdict::No)
    );
    let triple = point_report("Q", &["x", "y"], "y^3 - x^3 + x^4", "0,0");
    assert_eq!(triple.tangent_count_geometric, Some(3));
    assert_eq!(triple.tangent_strings(), vec!["x - y"]);
    // x^2 + y^2 has no rational tangents but two geometric ones
    let r = point_report("Q", &["x", "y"], "x^2 + y^2 + x^3", "0,0");
    assert_eq!((r.ordinary, r.tangents_over_base.len()), (Verdict::Yes, 0));
}

#[test]
fn rank_three_is_undetermined() {
    let r = point_report("Q", &["x", "y", "z"], "x*y*z + x^4", "0,0,0");
    assert_eq!(r.essential_rank, Some(3));
    assert_eq!(r.ordinary, Verdict::Undetermined);
    assert_eq!(r.graded_reduced_base, Some(true));
    let r = point_report("Q", &["x", "y", "z"], "x^2*y*z + y^5", "0,0,0");
    assert_eq!(r.graded_reduced_geometric, Some(false));
}

#[test]
fn axes_in_space() {
    let r = curve_report(&["x", "y", "z"], &["x*y", "y*z", "x*z"]);
    assert_eq!((r.multiplicity, r.tangent_count_geometric), (3, Some(3)));
    assert_eq!(r.ordinary, Verdict::Yes);
    assert_eq!(r.tangents_generic_position, Some(true));
    assert_eq!(r.graded_reduced_geometric, Some(true));
    assert_eq!(r.tangent_points.len(), 3);
    let ring = Ring::new(&parse_field("Q").unwrap(), &["x", "y", "z"]).unwrap();
    let gens: Vec<MPoly> = ["x*y", "y*z", "x*z"]
        .iter()
        .map(|g| parse_poly(g, &ring).unwrap())
        .collect();
    let cone = crate::groebner::tangent_cone_ideal(&gens).unwrap();
    assert!(check_generic_tangents_reduced(&r, &cone).unwrap());
}

#[test]
fn monomial_curve() {
    let r = curve_report(&["x", "y", "z"], &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]);
    assert_eq!(r.multiplicity, 3);
    assert_eq!(r.emdim, 3);
    assert_eq!(r.tangent_count_geometric, Some(1));
    assert_eq!(r.ordinary, Verdict::No);
    assert_eq!(r.graded_reduced_geometric, Some(false));
}

#[test]
fn node_as_ideal_matches_point_analysis() {
    let c = curve_report(&["x", "y"], &["y^2 - x^2 - x^3"]);
    let p = point_report("Q", &["x", "y"], "y^2 - x^2 - x^3", "0,0");
    assert_eq!(c.multiplicity, p.multiplicity);
    assert_eq!(c.tangent_count_geometric, p.tangent_count_geometric);
    assert_eq!(c.ordinary, p.ordinary);
    assert_eq!(c.graded_reduced_geometric, Some(true));
    let (f, pt) = setup("Q", &["x", "y"], "y^2 - x^2 - x^3", "0,0");
    let cone = hypersurface_cone_ideal(&f, &pt).unwrap();
    assert!(check_generic_tangents_reduced(&p, &cone).unwrap());
    let (f, pt) = setup("Q", &["x", "y"], "y^3 - x^3 + x^4", "0,0");
    let r = analyze_hypersurface_point(&f, &pt).unwrap();
    assert!(
        check_generic_tangents_reduced(&r, &hypersurface_cone_ideal(&f, &pt).unwrap()).unwrap()
    );
}

#[test]
fn precondition_of_reducedness_check() {
    let (f, pt) = setup("Q", &["x", "y"], "y^2 - x^3", "0,0");
    let r = analyze_hypersurface_point(&f, &pt).unwrap();
    assert!(matches!(
        check_generic_tangents_reduced(&r, &hypersurface_cone_ideal(&f, &pt).unwrap()),
        Err(ConeError::Precondition(_))
    ));
}

#[test]
fn jacobian_squarefree_test() {
    let (f, _) = setup("Q", &["x", "y"], "y^2 - x^2", "0,0");
    assert!(is_form_geometrically_squarefree(&f).unwrap());
    let (f, _) = setup("Q", &["x", "y"], "y^2", "0,0");
    assert!(!is_form_geometrically_squarefree(&f).unwrap());
    let (f, _) = setup("F2(a)", &["X", "Y"], "Y^2 + a*X^2", "0,0");
    assert!(!is_form_geometrically_squarefree(&f).unwrap());
    let (f, _) = setup("Q", &["x", "y", "z"], "x*y*z", "0,0,0");
    assert!(is_form_geometrically_squarefree(&f).unwrap());
}
