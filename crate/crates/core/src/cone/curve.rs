use crate::graded::GradedQuotient;
use crate::groebner::{tangent_cone_ideal, PointCount};
use crate::mpoly::MPoly;
use crate::points::is_maximal_hilbert_function;

use super::slice::{rational_points, slice_cone, tangent_hilbert_function};
use super::{comparison_degree, ConeError, SingularPointReport, Verdict};

/// Analyzes the germ at the origin of the curve defined by `gens`, through its
/// tangent cone ideal and a hyperplane slice of it.
pub fn analyze_curve_ideal(gens: &[MPoly]) -> Result<SingularPointReport, ConeError> {
    let cone = tangent_cone_ideal(gens)?;
    let q = GradedQuotient::new(&cone)?;
    match q.dimension() {
        Some(1) => {}
        None => return Err(ConeError::ConeDimension("undefined (unit ideal)".into())),
        Some(d) => return Err(ConeError::ConeDimension(d.to_string())),
    }
    let ring = cone.ring().clone();
    let field = ring.field().clone();
    let e = q.multiplicity_dim1()?;
    let emdim = q.emdim();
    let mut report = SingularPointReport {
        vars: ring.vars().to_vec(),
        multiplicity: e,
        emdim,
        essential_rank: None,
        tangent_count_geometric: None,
        ordinary: Verdict::Undetermined,
        graded_reduced_base: None,
        graded_reduced_geometric: None,
        tangents_over_base: Vec::new(),
        tangent_points: Vec::new(),
        tangents_generic_position: None,
        seminormal_flag: None,
        tangent_cone: cone.generators().iter().map(|g| g.to_string()).collect(),
        notes: Vec::new(),
    };
    let slice = slice_cone(q.basis(), e)?;
    match &slice.count {
        PointCount::Exact(count) => {
            report.tangent_count_geometric = Some(*count);
            report.ordinary = Verdict::from_bool(*count as u64 == e);
        }
        PointCount::Undetermined(why) => report.notes.push(why.clone()),
    }
    if let Some(radical) = &slice.radical {
        let count = report.tangent_count_geometric.unwrap_or(0) as u64;
        if count == e {
            // the cone is reduced exactly when it is the ideal of its e directions
            let mut equal = true;
            for n in 0..=comparison_degree(&q, e) {
                if q.hilbert(n) != tangent_hilbert_function(radical, n)? {
                    equal = false;
                    break;
                }
            }
            report.graded_reduced_geometric = Some(equal);
        } else {
            report.graded_reduced_geometric = Some(false);
        }
        if field.characteristic() == 0 {
            let r = ring.nvars() - 1;
            report.tangents_generic_position = Some(is_maximal_hilbert_function(count, r, |n| {
                tangent_hilbert_function(radical, n)
            })?);
        } else {
            report
                .notes
                .push("generic position of tangents is only decided in characteristic 0".into());
        }
        match rational_points(radical)? {
            Some(points) => {
                if (points.len() as u64) < count {
                    report.notes.push(format!(
                        "{} of {} tangent directions are defined over the base field",
                        points.len(),
                        count
                    ));
                }
                report.tangent_points = points;
            }
            None => report
                .notes
                .push("tangent directions over the base field not listed".into()),
        }
    }
    report.graded_reduced_base = match report.graded_reduced_geometric {
        Some(true) => Some(true),
        g if field.is_perfect() => g,
        _ => None,
    };
    report.seminormal_flag = report.graded_reduced_base.map(|b| b && e == emdim);
    Ok(report)
}
