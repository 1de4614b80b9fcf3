use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::elem::{format_sum, FieldElem};
use super::field::Field;
use super::ArithError;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `T^i` and the
/// last stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl UPoly {
    pub fn zero(field: &Field) -> UPoly {
        UPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> UPoly {
        UPoly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> UPoly {
        let field = c.field().clone();
        UPoly::from_coeffs(&field, vec![c])
    }

    /// `c * T^k`
    pub fn monomial(c: FieldElem, k: usize) -> UPoly {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        UPoly::from_coeffs(&field, coeffs)
    }

    /// The polynomial `T`.
    pub fn x(field: &Field) -> UPoly {
        UPoly::monomial(field.one(), 1)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElem>) -> UPoly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from small integer coefficients, constant term first.
    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub(crate) fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub(crate) fn is_single_term_atomic(&self) -> bool {
        match self.term_count() {
            0 => true,
            1 => {
                let c = self.leading_coeff().expect("one term");
                !c.sign_split().0 && (c.is_one() || (self.degree() == Some(0) && c.is_atomic()))
            }
            _ => false,
        }
    }

    pub fn scale(&self, c: &FieldElem) -> UPoly {
        if c.is_zero() {
            return UPoly::zero(&self.field);
        }
        UPoly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> UPoly {
        let coeffs: Vec<FieldElem> = self.coeffs.iter().map(f).collect();
        let field = coeffs
            .first()
            .map(|c| c.field().clone())
            .unwrap_or_else(|| self.field.clone());
        UPoly::from_coeffs(&field, coeffs)
    }

    pub fn try_map_coeffs(
        &self,
        f: impl Fn(&FieldElem) -> Result<FieldElem, ArithError>,
    ) -> Result<UPoly, ArithError> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(UPoly::from_coeffs(&self.field, coeffs))
    }

    /// Makes the leading coefficient one; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> UPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((UPoly::zero(&self.field), UPoly::zero(&self.field)));
        };
        if nd < dd {
            return Ok((UPoly::zero(&self.field), self.clone()));
        }
        let lc_inv = d.leading_coeff().expect("nonzero").inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            UPoly::from_coeffs(&self.field, quot),
            UPoly::from_coeffs(&self.field, rem),
        ))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly, ArithError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self
            .div_rem(d)
            .expect("exact division by a nonzero polynomial");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` the monic gcd.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero(f));
        let (mut t0, mut t1) = (UPoly::zero(f), UPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        match r0.leading_coeff() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> UPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        UPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn pow(&self, mut exp: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one(&self.field);
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

    /// Writes `self = h(T^k)` and returns `h`, if every exponent is divisible by `k`.
    pub fn deflate(&self, k: usize) -> Option<UPoly> {
        if k == 0 {
            return None;
        }
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k == 0 {
                coeffs.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(UPoly::from_coeffs(&self.field, coeffs))
    }

    /// `self(T^k)`.
    pub fn inflate(&self, k: usize) -> UPoly {
        let mut coeffs = vec![self.field.zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        UPoly::from_coeffs(&self.field, coeffs)
    }

    /// `q` with `q^p = self` (characteristic p), when the coefficients allow it.
    pub fn pth_root_poly(&self, p: u64) -> Option<UPoly> {
        let h = self.deflate(p as usize)?;
        let coeffs = h
            .coeffs
            .iter()
            .map(|c| c.pth_root())
            .collect::<Option<Vec<_>>>()?;
        Some(UPoly::from_coeffs(&self.field, coeffs))
    }

    pub fn display_with(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                (c, mono)
            });
        format_sum(terms)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("T"))
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UPoly::from_coeffs(&self.field, coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &'a UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &'a UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(&self.field, coeffs)
    }
}
