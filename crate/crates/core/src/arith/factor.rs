//! Squarefree decomposition, distinct-root counting over the algebraic closure and
//! root finding in the prime fields.
//!
//! In characteristic p the derivative with respect to `T` can vanish on nontrivial
//! factors. Over 𝔽_p(t) those factors are split off with the derivation d/dt applied
//! coefficientwise; what survives every derivation is a p-th power and is handled by
//! taking p-th roots of the coefficients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elem::FieldElem;
use super::field::FieldDesc;
use super::intutil;
use super::upoly::UPoly;
use super::ArithError;

/// Largest prime for which roots in 𝔽_p are found by exhaustive evaluation.
pub const EXHAUSTIVE_PRIME_LIMIT: u64 = 1 << 20;

/// One pass of Musser's algorithm with respect to `deriv`. Returns the factors whose
/// multiplicity is visible to the derivation, together with the leftover part (the
/// product of all factors the derivation kills or sees only with multiplicity ≡ 0 mod p).
fn musser_pass(
    f: &UPoly,
    deriv: &dyn Fn(&UPoly) -> Result<UPoly, ArithError>,
) -> Result<(Vec<(UPoly, usize)>, UPoly), ArithError> {
    let d = deriv(f)?;
    if d.is_zero() {
        return Ok((Vec::new(), f.monic()));
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c);
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    Ok((out, c.monic()))
}

fn t_derivative(f: &UPoly) -> Result<UPoly, ArithError> {
    Ok(f.derivative())
}

impl UPoly {
    /// Squarefree decomposition over the coefficient field: pairwise coprime monic
    /// squarefree factors with distinct multiplicities, sorted by multiplicity, such
    /// that `self = lc * prod factor^mult`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UPoly, usize)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let mut raw = Vec::new();
        sfd_into(&self.monic(), 1, &mut raw)?;
        let mut merged: Vec<(UPoly, usize)> = Vec::new();
        for (g, m) in raw {
            if let Some(slot) = merged.iter_mut().find(|(_, mm)| *mm == m) {
                slot.0 = &slot.0 * &g;
            } else {
                merged.push((g, m));
            }
        }
        merged.sort_by_key(|(_, m)| *m);
        Ok(merged)
    }

    /// Whether the polynomial has no repeated irreducible factor over its field.
    pub fn is_squarefree(&self) -> Result<bool, ArithError> {
        Ok(self
            .squarefree_decomposition()?
            .iter()
            .all(|(_, m)| *m == 1))
    }

    /// Number of distinct roots in an algebraic closure of the coefficient field.
    ///
    /// Separable factors contribute their degree; a part with vanishing derivative
    /// is `h(T^p)` and has exactly as many distinct roots as `h`, because the p-th
    /// power map is bijective on the closure.
    pub fn distinct_root_count_in_closure(&self) -> Result<usize, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let mut f = self.monic();
        let mut count = 0;
        loop {
            if f.degree().unwrap_or(0) == 0 {
                return Ok(count);
            }
            let (factors, rest) = musser_pass(&f, &t_derivative)?;
            count += factors
                .iter()
                .map(|(g, _)| g.degree().unwrap_or(0))
                .sum::<usize>();
            if rest.degree().unwrap_or(0) == 0 {
                return Ok(count);
            }
            let p = self.field().characteristic() as usize;
            f = rest
                .deflate(p)
                .expect("a polynomial with zero derivative is a polynomial in T^p");
        }
    }

    /// Product of the distinct irreducible factors, provided every factor is
    /// separable or the field is perfect. `None` signals an inseparable factor over
    /// an imperfect field.
    pub fn separable_squarefree_part(&self) -> Option<UPoly> {
        if self.is_zero() {
            return None;
        }
        let (factors, rest) = musser_pass(&self.monic(), &t_derivative).ok()?;
        let mut part = factors
            .iter()
            .fold(UPoly::one(self.field()), |acc, (g, _)| &acc * g);
        if rest.degree().unwrap_or(0) > 0 {
            if !self.field().is_perfect() {
                return None;
            }
            let p = self.field().characteristic();
            let root = rest.pth_root_poly(p)?;
            part = &part * &root.separable_squarefree_part()?;
        }
        Some(part)
    }

    /// Roots lying in the coefficient field, with multiplicities. Supported for ℚ
    /// (rational root theorem) and 𝔽_p (exhaustive search).
    pub fn roots_in_base(&self) -> Result<Vec<(FieldElem, usize)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let field = self.field().clone();
        let candidates: Vec<FieldElem> = match field.desc() {
            FieldDesc::Rationals => rational_root_candidates(self)?,
            FieldDesc::PrimeField(p) => {
                if *p > EXHAUSTIVE_PRIME_LIMIT {
                    return Err(ArithError::Unsupported(format!(
                        "root search over F{p} (prime too large for exhaustive search)"
                    )));
                }
                (0..*p).map(|r| field.from_i64(r as i64)).collect()
            }
            _ => return Err(ArithError::Unsupported(format!("root search over {field}"))),
        };
        let mut out = Vec::new();
        for c in candidates {
            let lin = UPoly::from_coeffs(&field, vec![-&c, field.one()]);
            let mut f = self.clone();
            let mut mult = 0;
            loop {
                let (q, r) = f.div_rem(&lin)?;
                if !r.is_zero() {
                    break;
                }
                mult += 1;
                f = q;
            }
            if mult > 0 {
                out.push((c, mult));
            }
        }
        Ok(out)
    }
}

fn sfd_into(f: &UPoly, scale: usize, out: &mut Vec<(UPoly, usize)>) -> Result<(), ArithError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let field = f.field().clone();
    let (factors, mut rest) = musser_pass(f, &t_derivative)?;
    out.extend(factors.into_iter().map(|(g, m)| (g, m * scale)));
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    // characteristic p from here on
    let p = field.characteristic();
    for param in field.params() {
        let deriv = |g: &UPoly| g.try_map_coeffs(|c| c.derive(&param));
        let (factors, r) = musser_pass(&rest, &deriv)?;
        out.extend(factors.into_iter().map(|(g, m)| (g, m * scale)));
        rest = r;
        if rest.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
    }
    let root = rest.pth_root_poly(p).ok_or_else(|| {
        ArithError::Unsupported(format!(
            "squarefree decomposition over {field}: no p-th root of {}",
            rest
        ))
    })?;
    sfd_into(&root, scale * p as usize, out)
}

fn rational_root_candidates(f: &UPoly) -> Result<Vec<FieldElem>, ArithError> {
    let field = f.field().clone();
    let coeffs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational field").clone())
        .collect();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    let Some(low) = ints.iter().position(|c| !c.is_zero()) else {
        return Ok(out);
    };
    if low > 0 {
        out.push(field.zero());
    }
    let a0 = &ints[low];
    let an = ints.last().expect("nonzero polynomial");
    if ints.len() - 1 == low {
        return Ok(out);
    }
    let too_large =
        || ArithError::Unsupported("rational root search: coefficients too large to factor".into());
    let ps = intutil::positive_divisors(a0).ok_or_else(too_large)?;
    let qs = intutil::positive_divisors(an).ok_or_else(too_large)?;
    let mut seen = BTreeSet::new();
    for q in &qs {
        for p in &ps {
            for sign in [1i32, -1] {
                let mut r = BigRational::new(p.clone(), q.clone());
                if sign < 0 {
                    r = -r;
                }
                if seen.insert(r.clone()) {
                    let c = field.from_rational(&r)?;
                    if f.eval(&c).is_zero() {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn f2a() -> (Field, FieldElem) {
        let f = Field::rational_functions(&Field::prime(2).unwrap(), "a").unwrap();
        let a = f.symbol("a").unwrap();
        (f, a)
    }

    #[test]
    fn squarefree_over_rationals() {
        let q = Field::rationals();
        // (T-1)^2 (T+1)
        let f = UPoly::from_i64s(&q, &[1, -1, -1, 1]);
        let sfd = f.squarefree_decomposition().unwrap();
        assert_eq!(
            sfd,
            vec![
                (UPoly::from_i64s(&q, &[1, 1]), 1),
                (UPoly::from_i64s(&q, &[-1, 1]), 2)
            ]
        );
        let f = UPoly::from_i64s(&q, &[1, 0, -2, 0, 1]);
        assert_eq!(
            f.squarefree_decomposition().unwrap(),
            vec![(UPoly::from_i64s(&q, &[-1, 0, 1]), 2)]
        );
    }

    #[test]
    fn inseparable_quadratic_over_function_field() {
        let (f, a) = f2a();
        let g = UPoly::from_coeffs(&f, vec![a.clone(), f.zero(), f.one()]);
        assert!(g.derivative().is_zero());
        assert_eq!(g.gcd(&g.derivative()), g);
        assert_eq!(g.squarefree_decomposition().unwrap(), vec![(g.clone(), 1)]);
        assert_eq!(g.distinct_root_count_in_closure().unwrap(), 1);
        assert_eq!(g.separable_squarefree_part(), None);
    }

    #[test]
    fn pth_powers_over_function_field() {
        let (f, a) = f2a();
        // (T^2 + a)^2 (T + a) = T^5 + a T^4 + ...
        let g = UPoly::from_coeffs(&f, vec![a.clone(), f.zero(), f.one()]);
        let h = UPoly::from_coeffs(&f, vec![a.clone(), f.one()]);
        let prod = &(&g * &g) * &h;
        let sfd = prod.squarefree_decomposition().unwrap();
        assert_eq!(sfd, vec![(h.clone(), 1), (g.clone(), 2)]);
        assert_eq!(prod.distinct_root_count_in_closure().unwrap(), 2);
        // (T + a)^2 = T^2 + a^2 has a single root
        let sq = &h * &h;
        assert_eq!(sq.squarefree_decomposition().unwrap(), vec![(h.clone(), 2)]);
        assert_eq!(sq.distinct_root_count_in_closure().unwrap(), 1);
    }

    #[test]
    fn finite_field_inseparable_part() {
        let f3 = Field::prime(3).unwrap();
        // T^3 - 1 = (T - 1)^3 over F3
        let f = UPoly::from_i64s(&f3, &[-1, 0, 0, 1]);
        assert_eq!(
            f.squarefree_decomposition().unwrap(),
            vec![(UPoly::from_i64s(&f3, &[-1, 1]), 3)]
        );
        assert_eq!(f.distinct_root_count_in_closure().unwrap(), 1);
        assert_eq!(
            f.separable_squarefree_part(),
            Some(UPoly::from_i64s(&f3, &[-1, 1]))
        );
    }

    #[test]
    fn distinct_roots_over_rationals() {
        let q = Field::rationals();
        assert_eq!(
            UPoly::from_i64s(&q, &[-1, 0, 0, 1])
                .distinct_root_count_in_closure()
                .unwrap(),
            3
        );
        // (T-1)^2 (T+2)
        let f = &UPoly::from_i64s(&q, &[-1, 1]).pow(2) * &UPoly::from_i64s(&q, &[2, 1]);
        assert_eq!(f.distinct_root_count_in_closure().unwrap(), 2);
    }

    #[test]
    fn base_roots() {
        let q = Field::rationals();
        let roots = UPoly::from_i64s(&q, &[2, -3, 1]).roots_in_base().unwrap();
        assert_eq!(roots, vec![(q.from_i64(1), 1), (q.from_i64(2), 1)]);
        assert!(UPoly::from_i64s(&q, &[-2, 0, 1])
            .roots_in_base()
            .unwrap()
            .is_empty());
        let f2 = Field::prime(2).unwrap();
        let roots = UPoly::from_i64s(&f2, &[0, 1, 1]).roots_in_base().unwrap();
        assert_eq!(roots, vec![(f2.from_i64(0), 1), (f2.from_i64(1), 1)]);
        // 4T^2 - 1 has roots ±1/2; T^3 has the triple root 0
        let roots = UPoly::from_i64s(&q, &[-1, 0, 4]).roots_in_base().unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(
            UPoly::from_i64s(&q, &[0, 0, 0, 1]).roots_in_base().unwrap(),
            vec![(q.zero(), 3)]
        );
        let (fa, _) = f2a();
        assert!(matches!(
            UPoly::x(&fa).roots_in_base(),
            Err(ArithError::Unsupported(_))
        ));
    }
}
