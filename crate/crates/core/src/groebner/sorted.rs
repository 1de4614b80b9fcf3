use std::cmp::Ordering;

use crate::arith::FieldElem;
use crate::mpoly::{MPoly, Monomial, MonomialOrder, Ring};

/// Working representation for reductions: terms sorted in decreasing order.
#[derive(Clone, Debug)]
pub(crate) struct Sorted {
    pub terms: Vec<(Monomial, FieldElem)>,
}

impl Sorted {
    pub fn from_mpoly(f: &MPoly, order: MonomialOrder) -> Sorted {
        Sorted {
            terms: f
                .sorted_terms(order)
                .into_iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_mpoly(&self, ring: &Ring) -> MPoly {
        MPoly::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &(Monomial, FieldElem) {
        &self.terms[0]
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero leading coefficient");
                for (_, a) in self.terms.iter_mut() {
                    *a = &*a * &inv;
                }
            }
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    /// `self - c * m * g`, merging the sorted term lists.
    pub fn sub_scaled(
        &self,
        c: &FieldElem,
        m: &Monomial,
        g: &Sorted,
        order: MonomialOrder,
    ) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(k, v)| (k.mul(m), -&(v * c)))
            .peekable();
        loop {
            let which = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match which {
                Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                Ordering::Less => out.push(b.next().expect("peeked")),
                Ordering::Equal => {
                    let (k, x) = a.next().expect("peeked");
                    let (_, y) = b.next().expect("peeked");
                    let s = x + &y;
                    if !s.is_zero() {
                        out.push((k.clone(), s));
                    }
                }
            }
        }
        Sorted { terms: out }
    }

    /// S-polynomial of two monic polynomials.
    pub fn spoly(f: &Sorted, g: &Sorted, order: MonomialOrder) -> Sorted {
        let l = f.lm().lcm(g.lm());
        let mf = l.checked_div(f.lm()).expect("lcm");
        let mg = l.checked_div(g.lm()).expect("lcm");
        let one = f.lead().1.field().one();
        let scaled = Sorted {
            terms: f
                .terms
                .iter()
                .map(|(k, v)| (k.mul(&mf), v.clone()))
                .collect(),
        };
        scaled.sub_scaled(&one, &mg, g, order)
    }
}
