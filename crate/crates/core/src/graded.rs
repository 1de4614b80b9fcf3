//! Hilbert functions, dimension, multiplicity and embedding dimension of standard
//! graded quotients `k[x]/I` with `I` homogeneous.

use serde::Serialize;
use thiserror::Error;

use crate::groebner::{buchberger, GroebnerError, IdealBasis};
use crate::mpoly::{Monomial, MonomialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("quotient has dimension {0}, expected 1")]
    DimensionNotOne(String),
    #[error("Hilbert function did not stabilize by degree {0}")]
    NotStabilized(u32),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A homogeneous ideal together with the leading monomials of its degrevlex
/// Gröbner basis, which determine the Hilbert function.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    basis: IdealBasis,
    leading: Vec<Monomial>,
    nvars: usize,
}

impl GradedQuotient {
    pub fn new(ideal: &IdealBasis) -> Result<GradedQuotient, GradedError> {
        if !ideal.is_homogeneous() {
            return Err(GradedError::NotHomogeneous);
        }
        let basis = if ideal.is_groebner() && ideal.order() == MonomialOrder::DegRevLex {
            ideal.clone()
        } else if ideal.generators().is_empty() {
            IdealBasis::zero(ideal.ring(), MonomialOrder::DegRevLex)
        } else {
            buchberger(ideal.generators(), MonomialOrder::DegRevLex)?
        };
        let leading = basis.leading_monomials();
        Ok(GradedQuotient {
            nvars: basis.ring().nvars(),
            basis,
            leading,
        })
    }

    pub fn basis(&self) -> &IdealBasis {
        &self.basis
    }

    /// Number of standard monomials of degree `n`.
    pub fn hilbert(&self, n: u32) -> u64 {
        let mut count = 0;
        let mut e = vec![0u32; self.nvars];
        self.count_rec(0, n, &mut e, &mut count);
        count
    }

    fn count_rec(&self, i: usize, left: u32, e: &mut Vec<u32>, count: &mut u64) {
        if self.nvars == 0 {
            if left == 0 && !self.leading.iter().any(|l| l.is_one()) {
                *count += 1;
            }
            return;
        }
        if i == self.nvars - 1 {
            e[i] = left;
            let m = Monomial::new(e.clone());
            if !self.leading.iter().any(|l| l.divides(&m)) {
                *count += 1;
            }
            e[i] = 0;
            return;
        }
        for k in 0..=left {
            e[i] = k;
            self.count_rec(i + 1, left - k, e, count);
        }
        e[i] = 0;
    }

    /// Krull dimension of the quotient: the largest set of variables containing the
    /// support of no leading monomial. `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.leading.iter().any(|l| l.is_one()) {
            return None;
        }
        let n = self.nvars;
        let supports: Vec<u32> = self
            .leading
            .iter()
            .map(|l| l.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
            .collect();
        (0u32..(1 << n))
            .filter(|set| supports.iter().all(|s| s & !set != 0))
            .map(|set| set.count_ones() as usize)
            .max()
    }

    /// The eventually constant value of the Hilbert function of a one-dimensional
    /// quotient.
    pub fn multiplicity_dim1(&self) -> Result<u64, GradedError> {
        match self.dimension() {
            Some(1) => {}
            other => {
                return Err(GradedError::DimensionNotOne(match other {
                    None => "undefined (unit ideal)".into(),
                    Some(d) => d.to_string(),
                }))
            }
        }
        let start = self
            .basis
            .generators()
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0);
        let n = self.nvars as u32;
        for end in [start + n, 2 * start + 2 * n] {
            let values: Vec<u64> = (start..=end).map(|k| self.hilbert(k)).collect();
            if values.iter().all(|&v| v == values[0]) {
                return Ok(values[0]);
            }
        }
        Err(GradedError::NotStabilized(2 * start + 2 * n))
    }

    /// `H(1)`: the number of variables minus the linear forms in the ideal.
    pub fn emdim(&self) -> u64 {
        self.hilbert(1)
    }

    pub fn profile(&self, up_to: u32) -> HilbertProfile {
        let values: Vec<u64> = (0..=up_to).map(|k| self.hilbert(k)).collect();
        let dimension = self.dimension();
        let stabilized_value = match dimension {
            Some(0) | Some(1) => self.multiplicity_dim1().ok().or_else(|| {
                // a zero-dimensional quotient ends at 0
                (dimension == Some(0)).then_some(0)
            }),
            _ => None,
        };
        HilbertProfile {
            values,
            stabilized_value,
            dimension_estimate: match dimension {
                None => "empty".into(),
                Some(0) => "0".into(),
                Some(1) => "1".into(),
                Some(_) => ">1".into(),
            },
        }
    }
}

/// Leading values of a Hilbert function with its stable value when the quotient
/// has dimension at most one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub values: Vec<u64>,
    pub stabilized_value: Option<u64>,
    pub dimension_estimate: String,
}

pub fn hilbert_function(cone_ideal: &IdealBasis, n: u32) -> Result<u64, GradedError> {
    Ok(GradedQuotient::new(cone_ideal)?.hilbert(n))
}

pub fn multiplicity_dim1(cone_ideal: &IdealBasis) -> Result<u64, GradedError> {
    GradedQuotient::new(cone_ideal)?.multiplicity_dim1()
}

pub fn emdim(cone_ideal: &IdealBasis) -> Result<u64, GradedError> {
    Ok(GradedQuotient::new(cone_ideal)?.emdim())
}

/// `C(n, k)` as a `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
