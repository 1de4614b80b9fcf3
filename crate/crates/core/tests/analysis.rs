use conelab::arith::parse_field;
use conelab::branches::{branch_analysis, newton_polygon, DEFAULT_DEPTH_LIMIT};
use conelab::cone::{analyze_curve_ideal, analyze_hypersurface_point, Verdict};
use conelab::graded::GradedQuotient;
use conelab::groebner::{buchberger, tangent_cone_ideal};
use conelab::mpoly::{parse_point, parse_poly, MPoly, MonomialOrder, Ring};
use conelab::points::{is_generic_position, parse_points};
use conelab::subvariety::{exceptional_locus, SubvarietySpec, DEFAULT_SAMPLES, DEFAULT_SEED};

fn setup(field: &str, vars: &[&str], poly: &str) -> (Ring, MPoly) {
    let ring = Ring::new(&parse_field(field).unwrap(), vars).unwrap();
    let f = parse_poly(poly, &ring).unwrap();
    (ring, f)
}

fn at_origin(field: &str, vars: &[&str], poly: &str) -> conelab::cone::SingularPointReport {
    let (ring, f) = setup(field, vars, poly);
    analyze_hypersurface_point(&f, &vec![ring.field().zero(); vars.len()]).unwrap()
}

#[test]
fn node_depends_on_characteristic() {
    assert_eq!(
        at_origin("Q", &["x", "y"], "y^2 - x^2 - x^3").ordinary,
        Verdict::Yes
    );
    assert_eq!(
        at_origin("F5", &["x", "y"], "y^2 - x^2 - x^3").ordinary,
        Verdict::Yes
    );
    // (y + x)^2 + x^3 in characteristic 2
    let r = at_origin("F2", &["x", "y"], "y^2 + x^2 + x^3");
    assert_eq!(
        (r.tangent_count_geometric, r.ordinary),
        (Some(1), Verdict::No)
    );
}

#[test]
fn tangents_over_an_extension() {
    let over_q = at_origin("Q", &["x", "y"], "x^2 - 2*y^2 + y^3");
    assert_eq!(over_q.ordinary, Verdict::Yes);
    assert!(over_q.tangents_over_base.is_empty());
    // root search is only available over Q and F_p; elsewhere the gap is reported
    let over_ext = at_origin("Q[s|s^2-2]", &["x", "y"], "x^2 - 2*y^2 + y^3");
    assert_eq!(
        (over_ext.ordinary, over_ext.tangent_count_geometric),
        (Verdict::Yes, Some(2))
    );
    assert!(over_ext.tangents_over_base.is_empty());
    assert!(over_ext.notes.iter().any(|n| n.contains("unsupported")));
}

#[test]
fn translated_point_matches_origin() {
    let (ring, f) = setup("Q", &["x", "y"], "(y - 1)^2 - (x - 2)^2 - (x - 2)^3");
    let p = parse_point("2,1", ring.field()).unwrap();
    let moved = analyze_hypersurface_point(&f, &p).unwrap();
    let origin = at_origin("Q", &["x", "y"], "y^2 - x^2 - x^3");
    assert_eq!(moved.tangent_strings(), origin.tangent_strings());
    assert_eq!(moved.ordinary, origin.ordinary);
}

#[test]
fn cone_of_a_plane_curve_via_standard_basis() {
    let (ring, f) = setup("Q", &["x", "y"], "y^2 - x^3 + x^2*y^2");
    let cone = tangent_cone_ideal(&[f]).unwrap();
    assert_eq!(cone.generators(), &[parse_poly("y^2", &ring).unwrap()]);
    let q = GradedQuotient::new(&cone).unwrap();
    assert_eq!((q.multiplicity_dim1().unwrap(), q.emdim()), (2, 2));
}

#[test]
fn groebner_of_twisted_cubic() {
    let ring = Ring::new(&parse_field("Q").unwrap(), &["x", "y", "z", "w"]).unwrap();
    let gens: Vec<MPoly> = ["x*z - y^2", "y*w - z^2", "x*w - y*z"]
        .iter()
        .map(|g| parse_poly(g, &ring).unwrap())
        .collect();
    let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
    let q = GradedQuotient::new(&gb).unwrap();
    // Hilbert function 3n + 1 of the twisted cubic
    assert_eq!(
        (0..6).map(|n| q.hilbert(n)).collect::<Vec<_>>(),
        vec![1, 4, 7, 10, 13, 16]
    );
}

#[test]
fn four_lines_in_three_space() {
    let (ring, _) = setup("Q", &["x", "y", "z"], "x");
    let gens: Vec<MPoly> = ["x*y", "x*z", "y*z*(y - z)"]
        .iter()
        .map(|g| parse_poly(g, &ring).unwrap())
        .collect();
    // the x-axis plus three lines in the plane x = 0
    let r = analyze_curve_ideal(&gens).unwrap();
    assert_eq!(r.multiplicity, 4);
    assert_eq!(r.tangent_count_geometric, Some(4));
    assert_eq!(r.ordinary, Verdict::Yes);
    // three of the directions lie on the line x = 0 of P^2, which still leaves
    // them independent on conics
    assert_eq!(r.tangents_generic_position, Some(true));
    let (ring, _) = setup("Q", &["x", "y", "z"], "x");
    let gens: Vec<MPoly> = ["x", "y*z*(y - z)"]
        .iter()
        .map(|g| parse_poly(g, &ring).unwrap())
        .collect();
    let planar = analyze_curve_ideal(&gens).unwrap();
    assert_eq!(planar.ordinary, Verdict::Yes);
    assert_eq!(planar.tangents_generic_position, Some(false));
}

#[test]
fn newton_polygon_of_e6() {
    let (_, f) = setup("Q", &["x", "y"], "y^3 - x^4");
    let np = newton_polygon(&f).unwrap();
    assert_eq!(np.edges.len(), 1);
    let b = branch_analysis(&f, DEFAULT_DEPTH_LIMIT).unwrap();
    assert_eq!(
        (b.branch_count(), b.total_order, b.ordinary()),
        (1, 3, Some(false))
    );
}

#[test]
fn points_over_a_finite_field() {
    let f7 = parse_field("F7").unwrap();
    assert!(is_generic_position(&parse_points("1:0;0:1;1:1;1:3", &f7).unwrap()).unwrap());
    let f2 = parse_field("F2").unwrap();
    let frame = parse_points("1:0:0;0:1:0;0:0:1;1:1:1", &f2).unwrap();
    assert!(is_generic_position(&frame).unwrap());
    // the three points of a line over F2
    let line = parse_points("1:0:0;0:1:0;1:1:0", &f2).unwrap();
    assert!(!is_generic_position(&line).unwrap());
}

#[test]
fn umbrella_locus_is_sampled_consistently() {
    let (_, f) = setup("Q", &["x", "y", "z"], "x^2 - y^2*z");
    let spec = SubvarietySpec::new(f, &["x", "y"]).unwrap();
    let locus = exceptional_locus(&spec, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
    assert_eq!(locus.render(), "z = 0");
    assert!(locus.sampling_consistent);
    assert!(locus.samples.iter().any(|s| s.in_locus));
    for s in locus.samples.iter().filter(|s| !s.in_locus) {
        assert_eq!((s.multiplicity, s.tangent_count), (2, Some(2)));
    }
}
