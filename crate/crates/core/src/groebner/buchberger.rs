use std::collections::BTreeSet;

use crate::mpoly::{MPoly, Monomial, MonomialOrder, Ring};

use super::sorted::Sorted;
use super::{GroebnerError, IdealBasis};

/// Full reduction of `f` by `basis` (every term, not just the leading one).
pub(crate) fn reduce_full(f: &Sorted, basis: &[Sorted], order: MonomialOrder) -> Sorted {
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, crate::arith::FieldElem)> = Vec::new();
    while !rest.is_zero() {
        let (m, c) = rest.lead().clone();
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = m.checked_div(g.lm()).expect("divides");
                let coef = &c * &g.lead().1.inv().expect("nonzero");
                rest = rest.sub_scaled(&coef, &q, g, order);
            }
            None => {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    Sorted { terms: done }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MPoly], order: MonomialOrder) -> Result<IdealBasis, GroebnerError> {
    if !order.is_well_order() {
        return Err(GroebnerError::NotWellOrder);
    }
    let ring = common_ring(gens)?;
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut s = Sorted::from_mpoly(g, order);
        s.make_monic();
        basis.push(s);
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pairs.iter().min_by(|a, b| {
        let la = basis[a.0].lm().lcm(basis[a.1].lm());
        let lb = basis[b.0].lm().lcm(basis[b.1].lm());
        order.cmp(&la, &lb).then(a.cmp(b))
    }) {
        pairs.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = Sorted::spoly(fi, fj, order);
        let mut h = reduce_full(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let n = basis.len();
        basis.push(h);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    let generators = reduce_basis(basis, order)
        .iter()
        .map(|s| s.to_mpoly(&ring))
        .collect::<Vec<_>>();
    Ok(IdealBasis::new_groebner(ring, generators, order))
}

/// Minimalizes and interreduces a Gröbner basis, returning it monic and sorted by
/// decreasing leading monomial.
fn reduce_basis(basis: Vec<Sorted>, order: MonomialOrder) -> Vec<Sorted> {
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
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = reduce_full(&minimal[i], &others, order);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}

pub(crate) fn common_ring(gens: &[MPoly]) -> Result<Ring, GroebnerError> {
    let ring = gens
        .first()
        .ok_or(GroebnerError::EmptyGenerators)?
        .ring()
        .clone();
    if let Some(g) = gens.iter().find(|g| *g.ring() != ring) {
        return Err(GroebnerError::RingMismatch(
            g.ring().to_string(),
            ring.to_string(),
        ));
    }
    Ok(ring)
}

/// Remainder of `f` on division by a Gröbner basis.
pub fn normal_form(f: &MPoly, basis: &IdealBasis) -> Result<MPoly, GroebnerError> {
    if !basis.is_groebner() {
        return Err(GroebnerError::NotGroebner);
    }
    if f.ring() != basis.ring() {
        return Err(GroebnerError::RingMismatch(
            f.ring().to_string(),
            basis.ring().to_string(),
        ));
    }
    let order = basis.order();
    let gs: Vec<Sorted> = basis
        .generators()
        .iter()
        .map(|g| Sorted::from_mpoly(g, order))
        .collect();
    Ok(reduce_full(&Sorted::from_mpoly(f, order), &gs, order).to_mpoly(basis.ring()))
}
