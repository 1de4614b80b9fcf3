use crate::arith::FieldElem;
use crate::graded::GradedQuotient;
use crate::groebner::{buchberger, IdealBasis};
use crate::mpoly::{
    essential_rank, reduce_to_binary, BinaryForm, LinearForm, MPoly, MonomialOrder,
};

use super::{ConeError, SingularPointReport, Verdict};

/// Analyzes the germ of `V(f)` at `p` through the initial form of `f` at `p`.
pub fn analyze_hypersurface_point(
    f: &MPoly,
    p: &[FieldElem],
) -> Result<SingularPointReport, ConeError> {
    if f.is_zero() {
        return Err(ConeError::ZeroPolynomial);
    }
    let value = f.eval(p)?;
    if !value.is_zero() {
        return Err(ConeError::NotOnVariety(value.to_string()));
    }
    let germ = f.translate(p)?;
    let fmin = germ.lowest_form()?;
    let e = fmin.total_degree().expect("nonzero") as u64;
    let n = f.nvars() as u64;
    let field = f.ring().field().clone();
    let mut report = SingularPointReport {
        vars: f.ring().vars().to_vec(),
        multiplicity: e,
        emdim: n - u64::from(e == 1),
        essential_rank: None,
        tangent_count_geometric: None,
        ordinary: Verdict::Undetermined,
        graded_reduced_base: None,
        graded_reduced_geometric: None,
        tangents_over_base: Vec::new(),
        tangent_points: Vec::new(),
        tangents_generic_position: None,
        seminormal_flag: None,
        tangent_cone: vec![fmin.to_string()],
        notes: Vec::new(),
    };
    let rank = essential_rank(&fmin)?;
    report.essential_rank = Some(rank.rank);
    if !rank.exact {
        report.notes.push(format!(
            "partial derivatives do not determine the essential variables in characteristic {}; using the {} variables present",
            field.characteristic(),
            rank.rank
        ));
    }
    if rank.rank <= 2 {
        let binary = reduce_to_binary(&fmin, &rank)?;
        binary_verdicts(&binary, e, &mut report);
    } else {
        report.notes.push(format!(
            "essential rank {} > 2: splitting into linear forms is not decided",
            rank.rank
        ));
        let geometric = is_form_geometrically_squarefree(&fmin)?;
        report.graded_reduced_geometric = Some(geometric);
        report.graded_reduced_base = if geometric || field.is_perfect() {
            Some(geometric)
        } else {
            None
        };
        if !geometric {
            report
                .notes
                .push("initial form is not squarefree over the algebraic closure".into());
        }
    }
    report.seminormal_flag = report
        .graded_reduced_base
        .map(|base| base && report.multiplicity == report.emdim);
    Ok(report)
}

fn binary_verdicts(b: &BinaryForm, e: u64, report: &mut SingularPointReport) {
    match b.distinct_projective_roots() {
        Ok(count) => {
            report.tangent_count_geometric = Some(count);
            report.ordinary = Verdict::from_bool(count as u64 == e);
            report.graded_reduced_geometric = Some(count as u64 == e);
        }
        Err(err) => report
            .notes
            .push(format!("geometric tangent count unavailable: {err}")),
    }
    match b.g.is_squarefree() {
        Ok(sf) => report.graded_reduced_base = Some(sf && b.infinity_multiplicity <= 1),
        Err(err) => report.notes.push(format!(
            "squarefree test over the base field unavailable: {err}"
        )),
    }
    // a form in at most two essential variables defines points of a projective line
    report.tangents_generic_position = Some(true);
    match b.g.roots_in_base() {
        Ok(roots) => {
            let mut tangents = Vec::new();
            if let Some(u) = &b.u {
                if b.infinity_multiplicity > 0 {
                    tangents.push(u.clone());
                }
                for (c, _) in roots {
                    let coeffs =
                        b.v.coeffs()
                            .iter()
                            .zip(u.coeffs())
                            .map(|(vi, ui)| vi - &(&c * ui))
                            .collect();
                    if let Ok(l) = LinearForm::new(coeffs) {
                        tangents.push(l);
                    }
                }
            } else {
                tangents.push(b.v.clone());
            }
            let found = tangents.len();
            report.tangents_over_base = tangents;
            if report.tangent_count_geometric.is_some_and(|c| c > found) {
                report.notes.push(format!(
                    "{} of {} tangents are defined over the base field",
                    found,
                    report.tangent_count_geometric.unwrap_or(0)
                ));
            }
        }
        Err(err) => report
            .notes
            .push(format!("tangents over the base field not listed: {err}")),
    }
}

/// Whether a form is squarefree over the algebraic closure, by the Jacobian
/// criterion: `V(F)` is reduced exactly when its singular locus `V(F, dF)` has
/// codimension at least two in affine space.
pub fn is_form_geometrically_squarefree(form: &MPoly) -> Result<bool, ConeError> {
    if form.is_zero() {
        return Err(ConeError::ZeroPolynomial);
    }
    let n = form.nvars();
    let mut gens = vec![form.clone()];
    gens.extend(
        (0..n)
            .map(|i| form.partial_derivative(i))
            .filter(|d| !d.is_zero()),
    );
    let ideal = IdealBasis::new(form.ring(), gens, MonomialOrder::DegRevLex);
    let q = GradedQuotient::new(&ideal)?;
    Ok(match q.dimension() {
        None => true,
        Some(d) => (d as i64) <= n as i64 - 2,
    })
}

/// The tangent cone ideal `(f_min)` of `V(f)` at `p`, as a degrevlex basis.
pub fn hypersurface_cone_ideal(f: &MPoly, p: &[FieldElem]) -> Result<IdealBasis, ConeError> {
    if f.is_zero() {
        return Err(ConeError::ZeroPolynomial);
    }
    let fmin = f.translate(p)?.lowest_form()?;
    if fmin.is_constant() {
        return Err(ConeError::NotOnVariety(fmin.to_string()));
    }
    Ok(buchberger(&[fmin], MonomialOrder::DegRevLex)?)
}
