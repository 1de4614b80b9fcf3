use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, FieldDesc};
use super::intutil;
use super::upoly::UPoly;
use super::ArithError;

/// Canonical representation of a field element; which variant is used is fixed by
/// the field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Rational(BigRational),
    /// Least nonnegative residue.
    Residue(u64),
    /// Reduced quotient with monic denominator.
    Fraction {
        num: UPoly,
        den: UPoly,
    },
    /// Remainder modulo the minimal polynomial.
    Class(UPoly),
}

/// An element of a [`Field`]. Equality is representation equality, which is sound
/// because every constructor canonicalizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: Field,
    value: Value,
}

impl FieldElem {
    pub(crate) fn from_value(field: Field, value: Value) -> FieldElem {
        FieldElem { field, value }
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Fraction { num, .. } => num.is_zero(),
            Value::Class(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
            Value::Fraction { num, den } => den.is_one() && num.is_one(),
            Value::Class(a) => a.is_one(),
        }
    }

    /// The rational value, when the field is ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The residue, when the field is 𝔽_p.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Numerator and monic denominator, when the field is a rational function field.
    pub fn as_fraction(&self) -> Option<(&UPoly, &UPoly)> {
        match &self.value {
            Value::Fraction { num, den } => Some((num, den)),
            _ => None,
        }
    }

    /// Representative modulo the minimal polynomial, for simple extensions.
    pub fn as_class(&self) -> Option<&UPoly> {
        match &self.value {
            Value::Class(a) => Some(a),
            _ => None,
        }
    }

    /// The element as a member of the base field, if it lies there.
    pub fn to_base(&self) -> Option<FieldElem> {
        match &self.value {
            Value::Fraction { num, den } if den.is_one() && num.degree().unwrap_or(0) == 0 => {
                Some(num.coeff(0))
            }
            Value::Class(a) if a.degree().unwrap_or(0) == 0 => Some(a.coeff(0)),
            _ => None,
        }
    }

    /// Small integer value for elements of the prime subfield (used for sampling).
    pub fn to_i64(&self) -> Option<i64> {
        match &self.value {
            Value::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Value::Residue(r) => i64::try_from(*r).ok(),
            _ => self.to_base().and_then(|b| b.to_i64()),
        }
    }

    fn assert_same(&self, other: &FieldElem, op: &str) {
        assert!(
            self.field == other.field,
            "{op}: mismatched fields {} and {}",
            self.field,
            other.field
        );
    }

    fn check_same(&self, other: &FieldElem) -> Result<(), ArithError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    fn prime(&self) -> u64 {
        match self.field.desc() {
            FieldDesc::PrimeField(p) => *p,
            _ => unreachable!("residue outside a prime field"),
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<FieldElem, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(q.recip()),
            Value::Residue(r) => {
                let p = self.prime();
                Value::Residue(intutil::inv_mod(*r, p).ok_or(ArithError::DivisionByZero)?)
            }
            Value::Fraction { num, den } => return Ok(make_fraction(&self.field, den, num)),
            Value::Class(a) => {
                let m = self
                    .field
                    .minpoly()
                    .expect("extension has a minimal polynomial");
                let (g, s, _) = a.ext_gcd(m);
                if !g.is_one() {
                    return Err(ArithError::ReducibleModulus(m.display_with("T")));
                }
                Value::Class(s.rem(m)?)
            }
        };
        Ok(FieldElem::from_value(self.field.clone(), value))
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, ArithError> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
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

    /// The unique p-th root in characteristic p, when it exists in the field.
    /// Always `None` in characteristic zero.
    pub fn pth_root(&self) -> Option<FieldElem> {
        let p = self.characteristic();
        if p == 0 {
            return None;
        }
        match &self.value {
            Value::Rational(_) => None,
            Value::Residue(_) => Some(self.clone()),
            Value::Fraction { num, den } => {
                let n = num.pth_root_poly(p)?;
                let d = den.pth_root_poly(p)?;
                Some(make_fraction(&self.field, &n, &d))
            }
            Value::Class(_) => {
                let q = self.field.order()?;
                let e = u64::try_from(q / p as u128).ok()?;
                Some(self.pow(e))
            }
        }
    }

    /// Derivative with respect to the transcendental parameter `param` of the tower.
    pub fn derive(&self, param: &str) -> Result<FieldElem, ArithError> {
        match &self.value {
            Value::Rational(_) | Value::Residue(_) => Ok(self.field.zero()),
            Value::Fraction { num, den } => {
                let own = match self.field.desc() {
                    FieldDesc::RationalFunctions { param: own, .. } => own,
                    _ => unreachable!(),
                };
                let (dn, dd) = if own == param {
                    (num.derivative(), den.derivative())
                } else {
                    (
                        num.try_map_coeffs(|c| c.derive(param))?,
                        den.try_map_coeffs(|c| c.derive(param))?,
                    )
                };
                if dn.is_zero() && dd.is_zero() {
                    return Ok(self.field.zero());
                }
                let top = &(&dn * den) - &(num * &dd);
                let bottom = den * den;
                Ok(make_fraction(&self.field, &top, &bottom))
            }
            Value::Class(_) => {
                let base = self.field.base().expect("extension has a base");
                if base.params().is_empty() {
                    Ok(self.field.zero())
                } else {
                    Err(ArithError::Unsupported(format!(
                        "derivations on the extension {}",
                        self.field
                    )))
                }
            }
        }
    }

    /// Splits off a display sign: `(true, -self)` when the element "reads" negative.
    pub fn sign_split(&self) -> (bool, FieldElem) {
        if self.reads_negative() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }

    fn reads_negative(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_negative(),
            Value::Residue(_) => false,
            Value::Fraction { num, .. } => num.leading_coeff().is_some_and(|c| c.reads_negative()),
            Value::Class(a) => a.leading_coeff().is_some_and(|c| c.reads_negative()),
        }
    }

    /// Whether the display form can be used as a product factor without parentheses.
    pub(crate) fn is_atomic(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_integer(),
            Value::Residue(_) => true,
            Value::Fraction { num, den } => den.is_one() && num.is_single_term_atomic(),
            Value::Class(a) => a.is_single_term_atomic(),
        }
    }

    /// Whether the display form has no top-level sum.
    pub(crate) fn is_sum_free(&self) -> bool {
        match &self.value {
            Value::Rational(_) | Value::Residue(_) => true,
            Value::Fraction { num, den } => !den.is_one() || num.term_count() <= 1,
            Value::Class(a) => a.term_count() <= 1,
        }
    }
}

/// Builds the canonical quotient `num/den` in a rational function field.
pub(crate) fn make_fraction(field: &Field, num: &UPoly, den: &UPoly) -> FieldElem {
    assert!(!den.is_zero(), "zero denominator");
    let base = field.base().expect("rational function field has a base");
    if num.is_zero() {
        return FieldElem::from_value(
            field.clone(),
            Value::Fraction {
                num: UPoly::zero(base),
                den: UPoly::one(base),
            },
        );
    }
    let g = num.gcd(den);
    let (mut n, mut d) = if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (
            num.div_rem(&g).expect("nonzero gcd").0,
            den.div_rem(&g).expect("nonzero gcd").0,
        )
    };
    let lc = d.leading_coeff().expect("nonzero").clone();
    if !lc.is_one() {
        let inv = lc.inv().expect("nonzero leading coefficient");
        n = n.scale(&inv);
        d = d.scale(&inv);
    }
    FieldElem::from_value(field.clone(), Value::Fraction { num: n, den: d })
}

fn reduce_class(field: &Field, a: UPoly) -> FieldElem {
    let m = field.minpoly().expect("extension");
    let r = if a.degree().unwrap_or(0) >= m.degree().unwrap_or(0) {
        a.rem(m).expect("minimal polynomial is nonzero")
    } else {
        a
    };
    FieldElem::from_value(field.clone(), Value::Class(r))
}

fn add_values(a: &FieldElem, b: &FieldElem) -> FieldElem {
    a.assert_same(b, "add");
    match (&a.value, &b.value) {
        (Value::Rational(x), Value::Rational(y)) => {
            FieldElem::from_value(a.field.clone(), Value::Rational(x + y))
        }
        (Value::Residue(x), Value::Residue(y)) => {
            let p = a.prime();
            let s = ((*x as u128 + *y as u128) % p as u128) as u64;
            FieldElem::from_value(a.field.clone(), Value::Residue(s))
        }
        (Value::Fraction { num: n1, den: d1 }, Value::Fraction { num: n2, den: d2 }) => {
            if d1 == d2 {
                make_fraction(&a.field, &(n1 + n2), d1)
            } else {
                make_fraction(&a.field, &(&(n1 * d2) + &(n2 * d1)), &(d1 * d2))
            }
        }
        (Value::Class(x), Value::Class(y)) => {
            FieldElem::from_value(a.field.clone(), Value::Class(x + y))
        }
        _ => unreachable!("representation does not match field"),
    }
}

fn mul_values(a: &FieldElem, b: &FieldElem) -> FieldElem {
    a.assert_same(b, "mul");
    match (&a.value, &b.value) {
        (Value::Rational(x), Value::Rational(y)) => {
            FieldElem::from_value(a.field.clone(), Value::Rational(x * y))
        }
        (Value::Residue(x), Value::Residue(y)) => {
            let p = a.prime();
            let s = ((*x as u128 * *y as u128) % p as u128) as u64;
            FieldElem::from_value(a.field.clone(), Value::Residue(s))
        }
        (Value::Fraction { num: n1, den: d1 }, Value::Fraction { num: n2, den: d2 }) => {
            if n1.is_zero() || n2.is_zero() {
                return a.field.zero();
            }
            make_fraction(&a.field, &(n1 * n2), &(d1 * d2))
        }
        (Value::Class(x), Value::Class(y)) => reduce_class(&a.field, x * y),
        _ => unreachable!("representation does not match field"),
    }
}

fn neg_value(a: &FieldElem) -> FieldElem {
    let value = match &a.value {
        Value::Rational(x) => Value::Rational(-x),
        Value::Residue(x) => {
            let p = a.prime();
            Value::Residue(if *x == 0 { 0 } else { p - x })
        }
        Value::Fraction { num, den } => Value::Fraction {
            num: -num,
            den: den.clone(),
        },
        Value::Class(x) => Value::Class(-x),
    };
    FieldElem::from_value(a.field.clone(), value)
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        add_values(self, rhs)
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        add_values(self, &neg_value(rhs))
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        mul_values(self, rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        neg_value(self)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        neg_value(&self)
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        add_values(&self, &rhs)
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        &self - &rhs
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        mul_values(&self, &rhs)
    }
}

fn symbol_of(field: &Field) -> &str {
    match field.desc() {
        FieldDesc::RationalFunctions { param, .. } => param,
        FieldDesc::SimpleExtension { gen, .. } => gen,
        _ => "",
    }
}

fn wrap_unless_atomic(p: &UPoly, var: &str) -> String {
    let s = p.display_with(var);
    if p.is_single_term_atomic() {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
            Value::Fraction { num, den } => {
                let var = symbol_of(&self.field);
                if den.is_one() {
                    write!(f, "{}", num.display_with(var))
                } else {
                    write!(
                        f,
                        "{}/{}",
                        wrap_unless_atomic(num, var),
                        wrap_unless_atomic(den, var)
                    )
                }
            }
            Value::Class(a) => write!(f, "{}", a.display_with(symbol_of(&self.field))),
        }
    }
}

/// Joins `(coefficient, monomial)` pairs into a parseable sum. An empty monomial
/// string denotes the constant term.
pub(crate) fn format_sum<'a>(terms: impl IntoIterator<Item = (&'a FieldElem, String)>) -> String {
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let (neg, mag) = c.sign_split();
        let body = if mono.is_empty() {
            if neg && !mag.is_sum_free() {
                format!("({mag})")
            } else {
                mag.to_string()
            }
        } else if mag.is_one() {
            mono
        } else if mag.is_atomic() {
            format!("{mag}*{mono}")
        } else {
            format!("({mag})*{mono}")
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Convenience constructor used by tests and the parser.
pub fn rational(field: &Field, num: i64, den: i64) -> Result<FieldElem, ArithError> {
    if den == 0 {
        return Err(ArithError::DivisionByZero);
    }
    field.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}
