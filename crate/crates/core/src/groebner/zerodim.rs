//! Finite-dimensional quotients: standard monomials, minimal polynomials and
//! point counting over the algebraic closure.

use std::collections::BTreeSet;

use crate::arith::UPoly;
use crate::linalg;
use crate::mpoly::{MPoly, Monomial, MonomialOrder};

use super::buchberger::{buchberger, normal_form};
use super::{GroebnerError, IdealBasis};

/// Outcome of a geometric point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointCount {
    Exact(usize),
    /// The count could not be certified (e.g. an inseparable minimal polynomial over
    /// an imperfect field); the string explains why.
    Undetermined(String),
}

/// Whether a Gröbner basis has a pure power of every variable among its leading
/// monomials.
pub fn is_zero_dimensional(basis: &IdealBasis) -> bool {
    let n = basis.ring().nvars();
    let lms = basis.leading_monomials();
    lms.iter().any(|m| m.is_one()) || (0..n).all(|i| lms.iter().any(|m| m.support() == vec![i]))
}

/// Standard monomials of a zero-dimensional Gröbner basis, in increasing order.
pub fn zerodim_quotient_basis(basis: &IdealBasis) -> Result<Vec<Monomial>, GroebnerError> {
    if !basis.is_groebner() {
        return Err(GroebnerError::NotGroebner);
    }
    if !is_zero_dimensional(basis) {
        return Err(GroebnerError::NotZeroDimensional);
    }
    let n = basis.ring().nvars();
    let lms = basis.leading_monomials();
    let is_standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(n)];
    while let Some(m) = frontier.pop() {
        if !is_standard(&m) || !seen.insert(m.clone()) {
            continue;
        }
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(n, i)));
        }
    }
    let order = basis.order();
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| order.cmp(a, b));
    Ok(out)
}

/// Monic polynomial of least degree in `var` lying in the ideal.
pub fn minimal_polynomial(basis: &IdealBasis, var: usize) -> Result<UPoly, GroebnerError> {
    let std = zerodim_quotient_basis(basis)?;
    let ring = basis.ring();
    let field = ring.field();
    let coords =
        |f: &MPoly| -> Vec<crate::arith::FieldElem> { std.iter().map(|m| f.coeff(m)).collect() };
    let x = MPoly::var(ring, var);
    let mut power = MPoly::one(ring);
    let mut columns: Vec<Vec<crate::arith::FieldElem>> = Vec::new();
    loop {
        let nf = normal_form(&power, basis)?;
        let v = coords(&nf);
        if !columns.is_empty() {
            let mat: linalg::Matrix = (0..std.len())
                .map(|r| columns.iter().map(|c| c[r].clone()).collect())
                .collect();
            if let Some(sol) = linalg::solve(&mat, &v, field) {
                let mut coeffs: Vec<_> = sol.iter().map(|a| -a).collect();
                coeffs.push(field.one());
                return Ok(UPoly::from_coeffs(field, coeffs));
            }
        } else if v.iter().all(|c| c.is_zero()) {
            // the unit ideal
            return Ok(UPoly::one(field));
        }
        columns.push(v);
        power = normal_form(&(&power * &x), basis)?;
    }
}

/// Number of points of a zero-dimensional scheme over the algebraic closure: the
/// ideal is enlarged by the separable squarefree part of each variable's minimal
/// polynomial until it is radical, then the quotient dimension is counted.
pub fn count_points_geometric(basis: &IdealBasis) -> Result<PointCount, GroebnerError> {
    let gb = if basis.is_groebner() {
        basis.clone()
    } else {
        buchberger(basis.generators(), MonomialOrder::DegRevLex)?
    };
    match zerodim_radical(&gb)? {
        Some(radical) => Ok(PointCount::Exact(zerodim_quotient_basis(&radical)?.len())),
        None => Ok(PointCount::Undetermined(format!(
            "a minimal polynomial is inseparable over {}",
            gb.ring().field()
        ))),
    }
}

/// The radical of a zero-dimensional Gröbner basis, or `None` when some minimal
/// polynomial has an inseparable factor over an imperfect field.
pub fn zerodim_radical(basis: &IdealBasis) -> Result<Option<IdealBasis>, GroebnerError> {
    let ring = basis.ring().clone();
    let mut current = basis.clone();
    loop {
        let mut added = Vec::new();
        for i in 0..ring.nvars() {
            let m = minimal_polynomial(&current, i)?;
            let Some(s) = m.separable_squarefree_part() else {
                return Ok(None);
            };
            if s.degree() < m.degree() {
                added.push(MPoly::from_upoly(&ring, i, &s));
            }
        }
        if added.is_empty() {
            return Ok(Some(current));
        }
        let mut gens = current.generators().to_vec();
        gens.extend(added);
        current = buchberger(&gens, current.order())?;
    }
}
