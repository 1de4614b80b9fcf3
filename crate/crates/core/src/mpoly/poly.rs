use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{format_sum, FieldElem, UPoly};

use super::monomial::{Monomial, MonomialOrder};
use super::ring::Ring;
use super::MPolyError;

/// Sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MPoly {
    pub fn zero(ring: &Ring) -> MPoly {
        MPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> MPoly {
        MPoly::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: FieldElem) -> MPoly {
        MPoly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Ring, i: usize) -> MPoly {
        MPoly::term(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: FieldElem) -> MPoly {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length");
        let c = ring.field().embed(&c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Sums the given terms, combining repeated monomials.
    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> MPoly {
        let mut out = MPoly::zero(ring);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs with small integer
    /// coefficients.
    pub fn from_i64_terms(ring: &Ring, terms: &[(i64, &[u32])]) -> MPoly {
        MPoly::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), ring.field().from_i64(*c))),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree of a term; `None` for the zero polynomial.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn homogeneous_component(&self, d: u32) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of least total degree.
    pub fn lowest_form(&self) -> Result<MPoly, MPolyError> {
        let d = self.order_at_origin().ok_or(MPolyError::ZeroPolynomial)?;
        Ok(self.homogeneous_component(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of variables occurring in some term.
    pub fn variables_present(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &FieldElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> MPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> MPoly {
        let c = self.ring.field().embed(c);
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * &c))
                .collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// The quotient `self / d` when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        if self.ring != d.ring {
            return None;
        }
        let (dm, dc) = d.leading_term(MonomialOrder::DegRevLex)?;
        let (dm, inv) = (dm.clone(), dc.inv().ok()?);
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.ring);
        while let Some((rm, rc)) = r.leading_term(MonomialOrder::DegRevLex) {
            let m = rm.checked_div(&dm)?;
            let c = rc * &inv;
            r = &r - &d.mul_term(&m, &c);
            q.add_term(m, &c);
        }
        Some(q)
    }

    fn check_ring(&self, other: &MPoly) -> Result<(), MPolyError> {
        if self.ring != other.ring {
            return Err(MPolyError::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly, MPolyError> {
        self.check_ring(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly, MPolyError> {
        self.check_ring(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly, MPolyError> {
        self.check_ring(other)?;
        Ok(self * other)
    }

    pub fn pow(&self, mut exp: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> MPoly {
        let field = self.ring.field();
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), &(c * &field.from_i64(e as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem, MPolyError> {
        self.check_point(point)?;
        let field = self.ring.field();
        let point: Vec<FieldElem> = point.iter().map(|p| field.embed(p)).collect();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn check_point(&self, point: &[FieldElem]) -> Result<(), MPolyError> {
        if point.len() != self.nvars() {
            return Err(MPolyError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let field = self.ring.field();
        if let Some(p) = point.iter().find(|p| !field.contains_subfield(p.field())) {
            return Err(MPolyError::Arith(crate::arith::ArithError::FieldMismatch(
                p.field().to_string(),
                field.to_string(),
            )));
        }
        Ok(())
    }

    /// `self(x + point)`.
    pub fn translate(&self, point: &[FieldElem]) -> Result<MPoly, MPolyError> {
        self.check_point(point)?;
        if point.iter().all(|p| p.is_zero()) {
            return Ok(self.clone());
        }
        let images: Vec<MPoly> = (0..self.nvars())
            .map(|i| &MPoly::var(&self.ring, i) + &MPoly::constant(&self.ring, point[i].clone()))
            .collect();
        self.substitute(&images)
    }

    /// Replaces variable `i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly, MPolyError> {
        if images.len() != self.nvars() {
            return Err(MPolyError::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if let Some(p) = images.iter().find(|p| p.ring != target) {
            return Err(MPolyError::RingMismatch(
                p.ring.to_string(),
                target.to_string(),
            ));
        }
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(&target), p.clone()])
            .collect();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, target.field().embed(c));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, mapping variable `i` to `var_map[i]`
    /// (which must be `Some` for every variable that occurs) and coefficients by `coeff`.
    pub fn map_into(
        &self,
        target: &Ring,
        var_map: &[Option<usize>],
        coeff: impl Fn(&FieldElem) -> FieldElem,
    ) -> Result<MPoly, MPolyError> {
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = var_map[i].ok_or_else(|| {
                    MPolyError::BadVariable(format!(
                        "{} has no counterpart in {target}",
                        self.ring.vars()[i]
                    ))
                })?;
                e[j] += k;
            }
            out.add_term(Monomial::new(e), &coeff(c));
        }
        Ok(out)
    }

    /// Same polynomial viewed over `target`, whose field must contain this field.
    pub fn embed_into(&self, target: &Ring) -> Result<MPoly, MPolyError> {
        if !target.field().contains_subfield(self.ring.field()) {
            return Err(MPolyError::RingMismatch(
                self.ring.to_string(),
                target.to_string(),
            ));
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        self.map_into(target, &map, |c| target.field().embed(c))
    }

    /// The univariate polynomial in variable `var`, when no other variable occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let field = self.ring.field();
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![field.zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != var && e > 0)
            {
                return None;
            }
            coeffs[m.exponent(var) as usize] = c.clone();
        }
        Some(UPoly::from_coeffs(field, coeffs))
    }

    pub fn from_upoly(ring: &Ring, var: usize, f: &UPoly) -> MPoly {
        let n = ring.nvars();
        MPoly::from_terms(
            ring,
            f.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[var] = k as u32;
                (Monomial::new(e), ring.field().embed(c))
            }),
        )
    }

    /// Coefficient of each power of `var`: `self = sum_k coeffs[k] * var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(var) as usize;
            let mut e = m.exponents().to_vec();
            e[var] = 0;
            out[k].add_term(Monomial::new(e), c);
        }
        out
    }

    /// Canonical text form, terms in decreasing degrevlex order.
    pub fn to_text(&self) -> String {
        let sorted = self.sorted_terms(MonomialOrder::DegRevLex);
        format_sum(
            sorted
                .into_iter()
                .map(|(m, c)| (c, m.display_with(self.ring.vars()))),
        )
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({} in {})", self.to_text(), self.ring)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let mut out = MPoly::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        out
    }
}
