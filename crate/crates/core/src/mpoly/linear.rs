use std::collections::BTreeMap;

use crate::arith::{format_sum, Field, FieldElem, UPoly};
use crate::linalg;

use super::monomial::Monomial;
use super::poly::MPoly;
use super::ring::Ring;
use super::MPolyError;

/// A nonzero linear form `sum c_i x_i`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<FieldElem>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<FieldElem>) -> Result<LinearForm, MPolyError> {
        let lead = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(MPolyError::ZeroPolynomial)?
            .inv()?;
        Ok(LinearForm {
            coeffs: coeffs.iter().map(|c| c * &lead).collect(),
        })
    }

    /// The coordinate function `x_i` in `n` variables.
    pub fn coordinate(field: &Field, n: usize, i: usize) -> LinearForm {
        LinearForm {
            coeffs: (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect(),
        }
    }

    /// Reads a homogeneous linear polynomial.
    pub fn from_mpoly(f: &MPoly) -> Result<LinearForm, MPolyError> {
        if f.total_degree() != Some(1) || !f.is_homogeneous() {
            return Err(MPolyError::NotHomogeneous(format!(
                "{f} is not a linear form"
            )));
        }
        let n = f.nvars();
        LinearForm::new((0..n).map(|i| f.coeff(&Monomial::var(n, i))).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_mpoly(&self, ring: &Ring) -> MPoly {
        let n = ring.nvars();
        MPoly::from_terms(
            ring,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        format_sum(
            self.coeffs
                .iter()
                .zip(vars)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, v)| (c, v.clone())),
        )
    }
}

/// Essential variables of a form: a basis of the smallest space of linear forms
/// whose polynomial ring contains the form (when `exact`).
#[derive(Clone, Debug)]
pub struct EssentialRank {
    pub rank: usize,
    pub basis: Vec<LinearForm>,
    /// False when the order-(d-1) partials did not determine the essential space
    /// (possible in characteristic p ≤ d); `basis` is then the set of coordinate
    /// functions of the variables present, an upper bound.
    pub exact: bool,
}

/// Computes the span of the order-(d-1) partial derivatives of a form of degree d
/// and checks that the form is a polynomial in that span.
pub fn essential_rank(form: &MPoly) -> Result<EssentialRank, MPolyError> {
    let d = form.total_degree().ok_or(MPolyError::ZeroPolynomial)?;
    if d == 0 || !form.is_homogeneous() {
        return Err(MPolyError::NotHomogeneous(format!(
            "{form} is not a form of positive degree"
        )));
    }
    let field = form.ring().field().clone();
    let n = form.nvars();
    // one row per beta of degree d-1, holding the coefficients of d^beta F
    let mut rows: BTreeMap<Vec<u32>, Vec<FieldElem>> = BTreeMap::new();
    for (alpha, c) in form.terms() {
        let weight = alpha
            .exponents()
            .iter()
            .fold(field.one(), |acc, &e| &acc * &factorial(&field, e));
        if weight.is_zero() {
            continue;
        }
        let c = c * &weight;
        for j in alpha.support() {
            let mut beta = alpha.exponents().to_vec();
            beta[j] -= 1;
            let row = rows.entry(beta).or_insert_with(|| vec![field.zero(); n]);
            row[j] = &row[j] + &c;
        }
    }
    let mut mat: linalg::Matrix = rows.into_values().collect();
    let pivots = linalg::rref(&mut mat);
    let basis: Vec<LinearForm> = mat[..pivots.len()]
        .iter()
        .map(|r| LinearForm::new(r.clone()))
        .collect::<Result<_, _>>()?;
    if !basis.is_empty() && reduced_form(form, &basis)?.is_some() {
        return Ok(EssentialRank {
            rank: basis.len(),
            basis,
            exact: true,
        });
    }
    let present = form.variables_present();
    Ok(EssentialRank {
        rank: present.len(),
        basis: present
            .iter()
            .map(|&i| LinearForm::coordinate(&field, n, i))
            .collect(),
        exact: false,
    })
}

fn factorial(field: &Field, e: u32) -> FieldElem {
    (2..=e as i64).fold(field.one(), |acc, k| &acc * &field.from_i64(k))
}

/// Rewrites `form` in coordinates `y` where `y_1..y_r` are the basis forms and the
/// remaining `y` are complementary coordinate functions. Returns the rewritten form
/// (in a ring with variables `y1..yn`) and the complementary coordinate indices,
/// or `None` if the form involves a complementary coordinate.
pub(crate) fn reduced_form(
    form: &MPoly,
    basis: &[LinearForm],
) -> Result<Option<(MPoly, Vec<usize>)>, MPolyError> {
    let field = form.ring().field().clone();
    let n = form.nvars();
    let mut m: linalg::Matrix = basis.iter().map(|l| l.coeffs().to_vec()).collect();
    let mut echelon = m.clone();
    let pivots = linalg::rref(&mut echelon);
    if pivots.len() != basis.len() {
        return Err(MPolyError::BadVariable("basis forms are dependent".into()));
    }
    let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for &c in &complement {
        m.push(LinearForm::coordinate(&field, n, c).coeffs().to_vec());
    }
    let inv = linalg::inverse(&m, &field).expect("completed basis is invertible");
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let yring = Ring::new(&field, &names)?;
    let images: Vec<MPoly> = (0..n)
        .map(|i| {
            MPoly::from_terms(
                &yring,
                (0..n).map(|j| (Monomial::var(n, j), inv[i][j].clone())),
            )
        })
        .collect();
    let g = form.substitute(&images)?;
    if g.variables_present().iter().any(|&v| v >= basis.len()) {
        return Ok(None);
    }
    Ok(Some((g, complement)))
}

/// A form of essential rank ≤ 2 written as a binary form `B(u, v)`, dehomogenized
/// to `g(T) = B(1, T)`.
#[derive(Clone, Debug)]
pub struct BinaryForm {
    pub degree: u32,
    pub g: UPoly,
    /// Multiplicity of the root at infinity, i.e. the power of `u` dividing `B`.
    pub infinity_multiplicity: u32,
    /// `None` when the ambient space has a single variable.
    pub u: Option<LinearForm>,
    pub v: LinearForm,
}

impl BinaryForm {
    /// Distinct roots of `B` on the projective line over the algebraic closure.
    pub fn distinct_projective_roots(&self) -> Result<usize, MPolyError> {
        let affine = self.g.distinct_root_count_in_closure()?;
        Ok(affine + usize::from(self.infinity_multiplicity > 0))
    }
}

/// Writes a form of essential rank ≤ 2 as a binary form in the basis forms
/// (`u` = first basis form, `v` = second). A rank-one form `c*l^d` is padded with a
/// complementary coordinate `u`, giving `g(T) = c*T^d`.
pub fn reduce_to_binary(form: &MPoly, rank: &EssentialRank) -> Result<BinaryForm, MPolyError> {
    if rank.rank > 2 {
        return Err(MPolyError::RankTooLarge(rank.rank));
    }
    let field = form.ring().field().clone();
    let degree = form.total_degree().ok_or(MPolyError::ZeroPolynomial)?;
    let (g_multi, complement) = reduced_form(form, &rank.basis)?.ok_or_else(|| {
        MPolyError::BadVariable(format!("{form} is not a polynomial in the given basis"))
    })?;
    let n = form.nvars();
    let (u, v, uvar, vvar) = match rank.basis.len() {
        2 => (
            Some(rank.basis[0].clone()),
            rank.basis[1].clone(),
            Some(0),
            1,
        ),
        1 => {
            let u = complement
                .first()
                .map(|&c| LinearForm::coordinate(&field, n, c));
            let uvar = u.as_ref().map(|_| 1);
            (u, rank.basis[0].clone(), uvar, 0)
        }
        _ => return Err(MPolyError::RankTooLarge(rank.basis.len())),
    };
    let mut coeffs = vec![field.zero(); degree as usize + 1];
    for (m, c) in g_multi.terms() {
        let k = m.exponent(vvar) as usize;
        debug_assert!(uvar.is_none_or(|uv| m.exponent(uv) as usize + k == degree as usize));
        coeffs[k] = c.clone();
    }
    let g = UPoly::from_coeffs(&field, coeffs);
    let deg_g = g.degree().expect("nonzero form") as u32;
    Ok(BinaryForm {
        degree,
        infinity_multiplicity: degree - deg_g,
        g,
        u,
        v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_field;
    use crate::mpoly::parse_poly;

    fn poly(field: &str, vars: &[&str], text: &str) -> MPoly {
        let ring = Ring::new(&parse_field(field).unwrap(), vars).unwrap();
        parse_poly(text, &ring).unwrap()
    }

    #[test]
    fn ranks() {
        let f = poly("Q(a)", &["x1", "x2", "x3"], "a*x2^3 - x3^3");
        let r = essential_rank(&f).unwrap();
        assert_eq!((r.rank, r.exact), (2, true));
        assert_eq!(
            essential_rank(&poly("Q", &["x1", "x2", "x3"], "x3^4"))
                .unwrap()
                .rank,
            1
        );
        assert_eq!(
            essential_rank(&poly("Q", &["x", "y", "z"], "x*y*z"))
                .unwrap()
                .rank,
            3
        );
        // (x + y)^2 has rank one
        let r = essential_rank(&poly("Q", &["x", "y"], "x^2 + 2*x*y + y^2")).unwrap();
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn char_two_fallback() {
        let f = poly("F2(a)", &["X", "Y"], "Y^2 + a*X^2");
        let r = essential_rank(&f).unwrap();
        assert_eq!((r.rank, r.exact), (2, false));
        let b = reduce_to_binary(&f, &r).unwrap();
        assert_eq!(b.g.to_string(), "T^2 + a");
        assert_eq!(b.infinity_multiplicity, 0);
        assert_eq!(b.distinct_projective_roots().unwrap(), 1);
    }

    #[test]
    fn binary_forms() {
        let f = poly("Q", &["x", "y"], "y^2 - x^2");
        let b = reduce_to_binary(&f, &essential_rank(&f).unwrap()).unwrap();
        assert_eq!(b.g.to_string(), "T^2 - 1");
        assert_eq!(b.infinity_multiplicity, 0);

        let f = poly("Q(a)", &["x1", "x2", "x3"], "a*x2^3 - x3^3");
        let b = reduce_to_binary(&f, &essential_rank(&f).unwrap()).unwrap();
        assert_eq!(b.g.to_string(), "-T^3 + a");
        assert_eq!(b.distinct_projective_roots().unwrap(), 3);

        let f = poly("Q", &["x1", "x2", "x3"], "x3^3");
        let b = reduce_to_binary(&f, &essential_rank(&f).unwrap()).unwrap();
        assert_eq!(b.g.to_string(), "T^3");
        assert_eq!(b.distinct_projective_roots().unwrap(), 1);

        // x*y: roots at T = 0 and at infinity
        let f = poly("Q", &["x", "y"], "x*y");
        let b = reduce_to_binary(&f, &essential_rank(&f).unwrap()).unwrap();
        assert_eq!(b.infinity_multiplicity, 1);
        assert_eq!(b.distinct_projective_roots().unwrap(), 2);

        let f = poly("Q", &["x", "y", "z"], "x*y*z");
        assert!(reduce_to_binary(&f, &essential_rank(&f).unwrap()).is_err());
    }
}
