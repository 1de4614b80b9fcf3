//! Irreducibility checks for minimal polynomials of simple extensions, and the
//! square test they rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elem::{FieldElem, Value};
use super::field::FieldDesc;
use super::intutil;
use super::upoly::UPoly;
use super::ArithError;

/// Checks that `minpoly` (monic, degree ≥ 2) has no root and, up to degree four, no
/// quadratic factor over its field. Returns `Ok(true)` when irreducibility was
/// proved, `Ok(false)` when it had to be accepted unverified, and an error when a
/// factor was found.
pub(crate) fn check_irreducible(minpoly: &UPoly, gen: &str) -> Result<bool, ArithError> {
    let field = minpoly.field();
    let deg = minpoly.degree().unwrap_or(0);
    let reducible = |why: String| {
        Err(ArithError::InvalidExtension(format!(
            "{} is reducible: {why}",
            minpoly.display_with(gen)
        )))
    };
    match field.desc() {
        FieldDesc::PrimeField(p) => {
            let p = *p as u128;
            if !factor_degree_free(minpoly, p)? {
                return reducible("it has a root".into());
            }
            if deg >= 4 && !factor_degree_free(minpoly, p * p)? {
                return reducible("it has a quadratic factor".into());
            }
            Ok(deg <= 5)
        }
        FieldDesc::Rationals => {
            match minpoly.roots_in_base() {
                Ok(roots) if !roots.is_empty() => {
                    return reducible(format!("{} is a root", roots[0].0))
                }
                Ok(_) => {}
                Err(ArithError::Unsupported(_)) => return Ok(false),
                Err(e) => return Err(e),
            }
            match deg {
                2 | 3 => Ok(true),
                4 => match rational_quartic_has_quadratic_factor(minpoly) {
                    Some(true) => reducible("it has a quadratic factor".into()),
                    Some(false) => Ok(true),
                    None => Ok(false),
                },
                _ => Ok(false),
            }
        }
        FieldDesc::RationalFunctions { .. } if deg == 2 => {
            let b = minpoly.coeff(1);
            let c = minpoly.coeff(0);
            if field.characteristic() == 2 {
                if !b.is_zero() {
                    return Ok(false);
                }
                if c.pth_root().is_some() {
                    return reducible("the constant term is a square".into());
                }
                return Ok(true);
            }
            let disc = &(&b * &b) - &(&field.from_i64(4) * &c);
            if is_square(&disc)? {
                reducible("the discriminant is a square".into())
            } else {
                Ok(true)
            }
        }
        _ => Ok(false),
    }
}

/// Whether `f` has no factor whose roots lie in the field with `q` elements
/// (q a power of the prime p), i.e. `gcd(f, T^q - T) = 1`.
fn factor_degree_free(f: &UPoly, q: u128) -> Result<bool, ArithError> {
    let x = UPoly::x(f.field());
    let xq = powmod(&x, q, f)?;
    let g = (&xq - &x).gcd(f);
    Ok(g.degree() == Some(0))
}

fn powmod(base: &UPoly, mut e: u128, m: &UPoly) -> Result<UPoly, ArithError> {
    let mut acc = UPoly::one(m.field()).rem(m)?;
    let mut b = base.rem(m)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(m)?;
        }
        e >>= 1;
        if e > 0 {
            b = (&b * &b).rem(m)?;
        }
    }
    Ok(acc)
}

/// For a monic quartic over ℚ without rational roots: does it split into two monic
/// quadratics? `None` when the constant term is too large to enumerate divisors.
fn rational_quartic_has_quadratic_factor(f: &UPoly) -> Option<bool> {
    let coeffs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect::<Option<_>>()?;
    let d = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // S = d*T turns f into a monic integer quartic with coefficients a_i d^(4-i)
    let a: Vec<BigInt> = (0..4)
        .map(|i| (&coeffs[i] * BigRational::from_integer(d.pow(4 - i as u32))).to_integer())
        .collect();
    let (a0, a1, a2, a3) = (&a[0], &a[1], &a[2], &a[3]);
    for q in intutil::positive_divisors(a0)? {
        for q in [q.clone(), -q] {
            let s = a0 / &q;
            if s != q {
                let num = a1 - a3 * &q;
                let den = &s - &q;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let p = num / den;
                let r = a3 - &p;
                if &p * &r + &q + &s == *a2 {
                    return Some(true);
                }
            } else {
                if *a1 != a3 * &q {
                    continue;
                }
                // p + r = a3, p r = a2 - 2q
                let disc = a3 * a3 - BigInt::from(4) * (a2 - BigInt::from(2) * &q);
                if !disc.is_negative() && intutil::exact_sqrt(&disc).is_some() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

/// Whether `x` is a square in its field. Supported for ℚ, 𝔽_p, finite extensions
/// and rational function fields over those.
pub fn is_square(x: &FieldElem) -> Result<bool, ArithError> {
    if x.is_zero() {
        return Ok(true);
    }
    let field = x.field();
    if field.characteristic() == 2 && field.is_perfect() {
        return Ok(true);
    }
    match x.value() {
        Value::Rational(q) => Ok(!q.is_negative()
            && intutil::exact_sqrt(q.numer()).is_some()
            && intutil::exact_sqrt(q.denom()).is_some()),
        Value::Residue(_) => {
            let p = field.characteristic();
            Ok(x.pow((p - 1) / 2).is_one())
        }
        Value::Class(_) => {
            let q = field
                .order()
                .ok_or_else(|| ArithError::Unsupported(format!("square test over {field}")))?;
            let e = u64::try_from((q - 1) / 2)
                .map_err(|_| ArithError::Unsupported(format!("square test over {field}")))?;
            Ok(x.pow(e).is_one())
        }
        Value::Fraction { num, den } => {
            let lc = num.leading_coeff().expect("nonzero numerator");
            Ok(is_square(lc)? && poly_is_square(&num.monic())? && poly_is_square(den)?)
        }
    }
}

fn poly_is_square(f: &UPoly) -> Result<bool, ArithError> {
    if f.degree() == Some(0) {
        return Ok(true);
    }
    Ok(f.squarefree_decomposition()?
        .iter()
        .all(|(_, m)| m % 2 == 0))
}
