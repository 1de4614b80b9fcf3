use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::elem::{FieldElem, Value};
use super::intutil;
use super::upoly::UPoly;
use super::ArithError;

/// Maximum number of layers stacked on top of ℚ or 𝔽_p.
pub const MAX_TOWER_HEIGHT: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    PrimeField(u64),
    /// `base(param)`: reduced quotients of polynomials in `param` over `base`.
    RationalFunctions {
        base: Field,
        param: String,
    },
    /// `base[gen | minpoly]`. `verified` is false when irreducibility of `minpoly`
    /// was accepted without proof (degree beyond what the checker handles).
    SimpleExtension {
        base: Field,
        gen: String,
        minpoly: UPoly,
        verified: bool,
    },
}

/// Shared handle to a field descriptor. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldDesc>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.desc() {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField(p) => write!(f, "F{p}"),
            FieldDesc::RationalFunctions { base, param } => write!(f, "{base}({param})"),
            FieldDesc::SimpleExtension {
                base, gen, minpoly, ..
            } => write!(f, "{base}[{gen}|{}]", minpoly.display_with(gen)),
        }
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDesc::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field, ArithError> {
        if !intutil::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldDesc::PrimeField(p))))
    }

    pub fn rational_functions(base: &Field, param: &str) -> Result<Field, ArithError> {
        base.check_new_symbol(param)?;
        if base.height() + 1 > MAX_TOWER_HEIGHT {
            return Err(ArithError::TowerTooTall(format!("{base}({param})")));
        }
        Ok(Field(Arc::new(FieldDesc::RationalFunctions {
            base: base.clone(),
            param: param.to_string(),
        })))
    }

    /// Adjoins a root `gen` of `minpoly` to `base`. The polynomial must be monic of
    /// degree at least two; irreducibility is checked up to degree four.
    pub fn simple_extension(base: &Field, gen: &str, minpoly: UPoly) -> Result<Field, ArithError> {
        base.check_new_symbol(gen)?;
        if base.height() + 1 > MAX_TOWER_HEIGHT {
            return Err(ArithError::TowerTooTall(format!("{base}[{gen}|..]")));
        }
        if base.has_extension_layer() {
            return Err(ArithError::TowerTooTall(
                "at most one simple extension is supported".into(),
            ));
        }
        if minpoly.field() != base {
            return Err(ArithError::FieldMismatch(
                minpoly.field().to_string(),
                base.to_string(),
            ));
        }
        let deg = minpoly.degree().unwrap_or(0);
        if deg < 2 {
            return Err(ArithError::InvalidExtension(format!(
                "minimal polynomial {} must have degree at least 2",
                minpoly.display_with(gen)
            )));
        }
        if !minpoly.leading_coeff().is_some_and(|c| c.is_one()) {
            return Err(ArithError::InvalidExtension(format!(
                "minimal polynomial {} must be monic",
                minpoly.display_with(gen)
            )));
        }
        let verified = super::irreducible::check_irreducible(&minpoly, gen)?;
        Ok(Field(Arc::new(FieldDesc::SimpleExtension {
            base: base.clone(),
            gen: gen.to_string(),
            minpoly,
            verified,
        })))
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match self.desc() {
            FieldDesc::Rationals => 0,
            FieldDesc::PrimeField(p) => *p,
            FieldDesc::RationalFunctions { base, .. } | FieldDesc::SimpleExtension { base, .. } => {
                base.characteristic()
            }
        }
    }

    pub fn height(&self) -> usize {
        match self.base() {
            None => 0,
            Some(b) => b.height() + 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match self.desc() {
            FieldDesc::Rationals | FieldDesc::PrimeField(_) => None,
            FieldDesc::RationalFunctions { base, .. } | FieldDesc::SimpleExtension { base, .. } => {
                Some(base)
            }
        }
    }

    /// The prime field (ℚ or 𝔽_p) at the bottom of the tower.
    pub fn prime_subfield(&self) -> Field {
        match self.base() {
            None => self.clone(),
            Some(b) => b.prime_subfield(),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.desc(), FieldDesc::Rationals | FieldDesc::PrimeField(_))
    }

    fn has_extension_layer(&self) -> bool {
        match self.desc() {
            FieldDesc::SimpleExtension { .. } => true,
            FieldDesc::RationalFunctions { base, .. } => base.has_extension_layer(),
            _ => false,
        }
    }

    /// Whether every element has a p-th root (always true in characteristic 0).
    pub fn is_perfect(&self) -> bool {
        if self.characteristic() == 0 {
            return true;
        }
        match self.desc() {
            FieldDesc::PrimeField(_) => true,
            FieldDesc::RationalFunctions { .. } => false,
            FieldDesc::SimpleExtension { base, .. } => base.is_perfect(),
            FieldDesc::Rationals => true,
        }
    }

    /// Whether the field is finite (𝔽_p or a simple extension of it).
    pub fn is_finite(&self) -> bool {
        match self.desc() {
            FieldDesc::PrimeField(_) => true,
            FieldDesc::SimpleExtension { base, .. } => base.is_finite(),
            _ => false,
        }
    }

    /// Whether any simple-extension layer was accepted without an irreducibility proof.
    pub fn has_unverified_extension(&self) -> bool {
        match self.desc() {
            FieldDesc::SimpleExtension { verified, base, .. } => {
                !verified || base.has_unverified_extension()
            }
            FieldDesc::RationalFunctions { base, .. } => base.has_unverified_extension(),
            _ => false,
        }
    }

    /// Names of the transcendental parameters, outermost first.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = Some(self);
        while let Some(f) = cur {
            if let FieldDesc::RationalFunctions { param, .. } = f.desc() {
                out.push(param.clone());
            }
            cur = f.base();
        }
        out
    }

    /// All symbol names (parameters and extension generators) in the tower.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = Some(self);
        while let Some(f) = cur {
            match f.desc() {
                FieldDesc::RationalFunctions { param, .. } => out.push(param.clone()),
                FieldDesc::SimpleExtension { gen, .. } => out.push(gen.clone()),
                _ => {}
            }
            cur = f.base();
        }
        out
    }

    fn check_new_symbol(&self, name: &str) -> Result<(), ArithError> {
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(ArithError::InvalidSymbol(name.to_string()));
        }
        if self.symbols().iter().any(|s| s == name) {
            return Err(ArithError::InvalidSymbol(format!("{name} (duplicate)")));
        }
        Ok(())
    }

    /// The element named `name` (a parameter or generator somewhere in the tower),
    /// embedded into this field.
    pub fn symbol(&self, name: &str) -> Option<FieldElem> {
        match self.desc() {
            FieldDesc::Rationals | FieldDesc::PrimeField(_) => None,
            FieldDesc::RationalFunctions { base, param } => {
                if param == name {
                    let t = UPoly::monomial(base.one(), 1);
                    Some(FieldElem::from_value(
                        self.clone(),
                        Value::Fraction {
                            num: t,
                            den: UPoly::one(base),
                        },
                    ))
                } else {
                    base.symbol(name).map(|e| self.lift(&e))
                }
            }
            FieldDesc::SimpleExtension { base, gen, .. } => {
                if gen == name {
                    // degree of minpoly is at least 2, so T is already reduced
                    Some(FieldElem::from_value(
                        self.clone(),
                        Value::Class(UPoly::monomial(base.one(), 1)),
                    ))
                } else {
                    base.symbol(name).map(|e| self.lift(&e))
                }
            }
        }
    }

    /// Embeds an element of the immediate base field.
    pub fn lift(&self, x: &FieldElem) -> FieldElem {
        match self.desc() {
            FieldDesc::Rationals | FieldDesc::PrimeField(_) => {
                assert!(x.field() == self, "lift: element is not from a subfield");
                x.clone()
            }
            FieldDesc::RationalFunctions { base, .. } => {
                if x.field() == self {
                    return x.clone();
                }
                let x = base.embed(x);
                FieldElem::from_value(
                    self.clone(),
                    Value::Fraction {
                        num: UPoly::constant(x),
                        den: UPoly::one(base),
                    },
                )
            }
            FieldDesc::SimpleExtension { base, .. } => {
                if x.field() == self {
                    return x.clone();
                }
                let x = base.embed(x);
                FieldElem::from_value(self.clone(), Value::Class(UPoly::constant(x)))
            }
        }
    }

    /// Embeds an element of any subfield in the tower (including this field).
    pub fn embed(&self, x: &FieldElem) -> FieldElem {
        if x.field() == self {
            x.clone()
        } else {
            self.lift(x)
        }
    }

    /// Whether `sub` occurs somewhere in this tower (including equality).
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_subfield(sub))
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self.desc() {
            FieldDesc::Rationals => FieldElem::from_value(
                self.clone(),
                Value::Rational(BigRational::from_integer(n.clone())),
            ),
            FieldDesc::PrimeField(p) => {
                FieldElem::from_value(self.clone(), Value::Residue(intutil::bigint_mod(n, *p)))
            }
            FieldDesc::RationalFunctions { base, .. } => {
                let c = base.from_bigint(n);
                FieldElem::from_value(
                    self.clone(),
                    Value::Fraction {
                        num: UPoly::constant(c),
                        den: UPoly::one(base),
                    },
                )
            }
            FieldDesc::SimpleExtension { base, .. } => FieldElem::from_value(
                self.clone(),
                Value::Class(UPoly::constant(base.from_bigint(n))),
            ),
        }
    }

    /// Maps a rational number into the field; fails when the denominator vanishes
    /// in positive characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem, ArithError> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// The modulus `p` when this is 𝔽_p itself.
    pub fn prime_modulus(&self) -> Option<u64> {
        match self.desc() {
            FieldDesc::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub(crate) fn minpoly(&self) -> Option<&UPoly> {
        match self.desc() {
            FieldDesc::SimpleExtension { minpoly, .. } => Some(minpoly),
            _ => None,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match self.desc() {
            FieldDesc::PrimeField(p) => Some(*p as u128),
            FieldDesc::SimpleExtension { base, minpoly, .. } => {
                let q = base.order()?;
                let d = minpoly.degree()? as u32;
                q.checked_pow(d)
            }
            _ => None,
        }
    }
}
