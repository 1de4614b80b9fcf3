//! Hyperplane slices `C + (L - 1)` of a one-dimensional homogeneous ideal `C`: a
//! zero-dimensional scheme whose points are the tangent directions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::FieldElem;
use crate::groebner::{
    buchberger, is_zero_dimensional, minimal_polynomial, normal_form, zerodim_quotient_basis,
    zerodim_radical, IdealBasis, PointCount,
};
use crate::linalg;
use crate::mpoly::{LinearForm, MPoly, MonomialOrder};
use crate::points::{monomials_of_degree, ProjPoint};

use super::ConeError;

const SLICE_SEED: u64 = 0x51ce;
const RANDOM_RETRIES: usize = 5;
const MAX_RATIONAL_CANDIDATES: usize = 4096;

#[derive(Clone, Debug)]
pub struct ConeSlice {
    /// Coefficients of `L`.
    pub hyperplane: Vec<FieldElem>,
    /// Degrevlex basis of `C + (L - 1)`.
    pub basis: IdealBasis,
    pub count: PointCount,
    pub radical: Option<IdealBasis>,
}

/// Finds `L` with `dim k[x]/(C + (L - 1)) = e`, trying coordinate functions first
/// and then seeded random integer forms.
pub fn slice_cone(cone: &IdealBasis, e: u64) -> Result<ConeSlice, ConeError> {
    let ring = cone.ring();
    let field = ring.field();
    let n = ring.nvars();
    let mut candidates: Vec<Vec<FieldElem>> = (0..n)
        .map(|i| LinearForm::coordinate(field, n, i).coeffs().to_vec())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SLICE_SEED);
    for _ in 0..RANDOM_RETRIES {
        candidates.push(
            (0..n)
                .map(|_| field.from_i64(rng.gen_range(-5..=5)))
                .collect(),
        );
    }
    for coeffs in candidates {
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let l = &LinearForm::new(coeffs.clone())?.to_mpoly(ring) - &MPoly::one(ring);
        let mut gens = cone.generators().to_vec();
        gens.push(l);
        let basis = buchberger(&gens, MonomialOrder::DegRevLex)?;
        if !is_zero_dimensional(&basis) || zerodim_quotient_basis(&basis)?.len() as u64 != e {
            continue;
        }
        let radical = zerodim_radical(&basis)?;
        let count = match &radical {
            Some(r) => PointCount::Exact(zerodim_quotient_basis(r)?.len()),
            None => PointCount::Undetermined(format!(
                "a minimal polynomial of the slice is inseparable over {field}"
            )),
        };
        return Ok(ConeSlice {
            hyperplane: LinearForm::new(coeffs)?.coeffs().to_vec(),
            basis,
            count,
            radical,
        });
    }
    Err(ConeError::SliceFailed(e))
}

/// Hilbert function of the set of directions cut out by a radical slice: the rank of
/// the degree-`n` forms restricted to its points.
pub fn tangent_hilbert_function(radical: &IdealBasis, n: u32) -> Result<u64, ConeError> {
    let std = zerodim_quotient_basis(radical)?;
    let ring = radical.ring();
    let field = ring.field();
    let rows: linalg::Matrix = monomials_of_degree(ring.nvars(), n)
        .into_iter()
        .map(|m| {
            let nf = normal_form(&MPoly::term(ring, m, field.one()), radical)?;
            Ok(std.iter().map(|s| nf.coeff(s)).collect())
        })
        .collect::<Result<_, ConeError>>()?;
    Ok(linalg::rank(&rows) as u64)
}

/// Points of a radical zero-dimensional ideal with coordinates in the base field,
/// or `None` when root finding is unsupported or the search space is too large.
pub(crate) fn rational_points(radical: &IdealBasis) -> Result<Option<Vec<ProjPoint>>, ConeError> {
    let n = radical.ring().nvars();
    let mut roots: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
    for i in 0..n {
        let m = minimal_polynomial(radical, i)?;
        match m.roots_in_base() {
            Ok(r) => roots.push(r.into_iter().map(|(c, _)| c).collect()),
            Err(_) => return Ok(None),
        }
    }
    let total: usize = roots.iter().map(|r| r.len().max(1)).product();
    if total > MAX_RATIONAL_CANDIDATES {
        return Ok(None);
    }
    let mut found = Vec::new();
    let mut current = Vec::with_capacity(n);
    search(radical, &roots, &mut current, &mut found)?;
    Ok(Some(found))
}

fn search(
    radical: &IdealBasis,
    roots: &[Vec<FieldElem>],
    current: &mut Vec<FieldElem>,
    found: &mut Vec<ProjPoint>,
) -> Result<(), ConeError> {
    if current.len() == roots.len() {
        for g in radical.generators() {
            if !g.eval(current)?.is_zero() {
                return Ok(());
            }
        }
        found.push(ProjPoint::new(current.clone())?);
        return Ok(());
    }
    for c in &roots[current.len()] {
        current.push(c.clone());
        search(radical, roots, current, found)?;
        current.pop();
    }
    Ok(())
}
