//! Ordinary singular points: multiplicity, geometric tangents, reducedness of the
//! tangent cone over the base field and its closure, for hypersurface germs and
//! germs of curves given by ideals.

mod curve;
mod hypersurface;
mod slice;

pub use curve::analyze_curve_ideal;
pub use hypersurface::{
    analyze_hypersurface_point, hypersurface_cone_ideal, is_form_geometrically_squarefree,
};
pub use slice::{slice_cone, tangent_hilbert_function, ConeSlice};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::ArithError;
use crate::graded::{GradedError, GradedQuotient};
use crate::groebner::{GroebnerError, IdealBasis};
use crate::mpoly::{LinearForm, MPolyError};
use crate::points::{hilbert_function_points, PointSet, PointsError, ProjPoint, MAX_POINTS_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("point not on the hypersurface: f(p) = {0}")]
    NotOnVariety(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("tangent cone has dimension {0}, expected 1")]
    ConeDimension(String),
    #[error("no hyperplane slice of the tangent cone had length {0} after retries")]
    SliceFailed(u64),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Points(#[from] PointsError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A three-valued answer; `Undetermined` is a completed analysis that could not
/// decide the question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// Everything the analyzers learn about one singular point.
#[derive(Clone, Debug)]
pub struct SingularPointReport {
    /// Variable names of the ambient ring, for rendering tangents.
    pub vars: Vec<String>,
    pub multiplicity: u64,
    pub emdim: u64,
    pub essential_rank: Option<usize>,
    pub tangent_count_geometric: Option<usize>,
    pub ordinary: Verdict,
    pub graded_reduced_base: Option<bool>,
    pub graded_reduced_geometric: Option<bool>,
    /// Linear factors of the initial form defined over the base field; for a curve
    /// ideal this stays empty and the directions go to `tangent_points`.
    pub tangents_over_base: Vec<LinearForm>,
    /// Tangent directions defined over the base field, as points of `P^{n-1}`.
    pub tangent_points: Vec<ProjPoint>,
    pub tangents_generic_position: Option<bool>,
    pub seminormal_flag: Option<bool>,
    /// Generators of the tangent cone ideal (degrevlex reduced basis).
    pub tangent_cone: Vec<String>,
    pub notes: Vec<String>,
}

impl SingularPointReport {
    pub fn tangent_strings(&self) -> Vec<String> {
        if !self.tangents_over_base.is_empty() {
            self.tangents_over_base
                .iter()
                .map(|l| l.display_with(&self.vars))
                .collect()
        } else {
            self.tangent_points
                .iter()
                .map(|p| format!("({p})"))
                .collect()
        }
    }
}

/// Checks the reducedness conclusion for an ordinary point whose tangents are in
/// generic position. For a one-dimensional cone, the Hilbert function of the cone
/// must also agree with that of the reduced set of tangent directions, computed
/// from a radical slice and, when all directions are rational, by evaluation.
pub fn check_generic_tangents_reduced(
    report: &SingularPointReport,
    cone_ideal: &IdealBasis,
) -> Result<bool, ConeError> {
    if report.ordinary != Verdict::Yes || report.tangents_generic_position != Some(true) {
        return Err(ConeError::Precondition(
            "needs an ordinary point with tangents in generic position".into(),
        ));
    }
    if report.graded_reduced_geometric != Some(true) {
        return Ok(false);
    }
    let q = GradedQuotient::new(cone_ideal)?;
    if q.dimension() != Some(1) {
        return Ok(true);
    }
    let e = report.multiplicity;
    let slice = slice_cone(q.basis(), e)?;
    let Some(radical) = &slice.radical else {
        return Ok(false);
    };
    let top = comparison_degree(&q, e);
    let points = if report.tangent_points.len() as u64 == e {
        Some(PointSet::new(report.tangent_points.clone())?)
    } else {
        None
    };
    for n in 0..=top {
        let h = q.hilbert(n);
        if h != tangent_hilbert_function(radical, n)? {
            return Ok(false);
        }
        if let Some(ps) = points.as_ref().filter(|_| n <= MAX_POINTS_DEGREE) {
            if h != hilbert_function_points(ps, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A degree past which both the cone's Hilbert function and that of `e` points are
/// constant.
pub(crate) fn comparison_degree(q: &GradedQuotient, e: u64) -> u32 {
    let top = q
        .basis()
        .generators()
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(0);
    (top + q.basis().ring().nvars() as u32).max(e as u32)
}

#[cfg(test)]
mod tests;
