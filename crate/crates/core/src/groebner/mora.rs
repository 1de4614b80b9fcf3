//! Local standard bases at the origin (Mora's tangent cone algorithm).

use crate::mpoly::{MPoly, MonomialOrder};

use super::buchberger::{buchberger, common_ring};
use super::sorted::Sorted;
use super::{GroebnerError, IdealBasis};

const LOCAL: MonomialOrder = MonomialOrder::LocalAntiDegree;

fn ecart(f: &Sorted) -> u32 {
    f.max_degree() - f.lm().degree()
}

/// Weak normal form with ecart-controlled reducer choice. A nonzero result has a
/// leading monomial outside the ideal of leading monomials of `basis`.
fn mora_normal_form(f: &Sorted, basis: &[Sorted]) -> Sorted {
    let mut h = f.clone();
    let mut reducers: Vec<Sorted> = basis.to_vec();
    while !h.is_zero() {
        let Some(g) = reducers
            .iter()
            .filter(|g| g.lm().divides(h.lm()))
            .min_by_key(|g| ecart(g))
            .cloned()
        else {
            break;
        };
        if ecart(&g) > ecart(&h) {
            let mut hm = h.clone();
            hm.make_monic();
            reducers.push(hm);
        }
        let q = h.lm().checked_div(g.lm()).expect("divides");
        let coef = &h.lead().1 * &g.lead().1.inv().expect("nonzero");
        h = h.sub_scaled(&coef, &q, &g, LOCAL);
    }
    h
}

/// Standard basis under the local degree order for an ideal of germs at the origin.
pub fn mora_standard_basis(gens: &[MPoly]) -> Result<IdealBasis, GroebnerError> {
    let ring = common_ring(gens)?;
    if let Some(g) = gens.iter().find(|g| !g.constant_term().is_zero()) {
        return Err(GroebnerError::NotAtOrigin(g.to_string()));
    }
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = Sorted::from_mpoly(g, LOCAL);
        s.make_monic();
        basis.push(s);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // smallest lcm degree first
        let pos = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                (basis[i].lm().lcm(basis[j].lm()).degree(), i, j)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pos);
        let s = Sorted::spoly(&basis[i], &basis[j], LOCAL);
        let mut h = mora_normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let n = basis.len();
        basis.push(h);
        pairs.extend((0..n).map(|k| (k, n)));
    }
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Sorted> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| LOCAL.cmp(b.lm(), a.lm()));
    let generators = minimal.iter().map(|s| s.to_mpoly(&ring)).collect();
    Ok(IdealBasis::new_standard(ring, generators))
}

/// Homogeneous ideal generated by the lowest forms of a local standard basis,
/// returned as a reduced degrevlex Gröbner basis.
pub fn tangent_cone_ideal(gens: &[MPoly]) -> Result<IdealBasis, GroebnerError> {
    let sb = mora_standard_basis(gens)?;
    let forms: Vec<MPoly> = sb
        .generators()
        .iter()
        .map(|g| g.lowest_form())
        .collect::<Result<_, _>>()?;
    if forms.is_empty() {
        return Ok(IdealBasis::zero(sb.ring(), MonomialOrder::DegRevLex));
    }
    buchberger(&forms, MonomialOrder::DegRevLex)
}

/// Whether the local quotient at the origin is finite-dimensional: every variable
/// has a pure power among the leading monomials of the standard basis.
pub fn is_locally_zero_dimensional(sb: &IdealBasis) -> bool {
    let n = sb.ring().nvars();
    let lms: Vec<_> = sb
        .generators()
        .iter()
        .filter_map(|g| g.leading_term(LOCAL).map(|(m, _)| m.clone()))
        .collect();
    (0..n).all(|i| lms.iter().any(|m| m.support() == vec![i] || m.is_one()))
}
