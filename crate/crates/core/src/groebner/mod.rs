//! Gröbner bases, local standard bases and zero-dimensional ideal tools.

mod buchberger;
mod mora;
mod sorted;
mod zerodim;

pub use buchberger::{buchberger, normal_form};
pub use mora::{is_locally_zero_dimensional, mora_standard_basis, tangent_cone_ideal};
pub use zerodim::{
    count_points_geometric, is_zero_dimensional, minimal_polynomial, zerodim_quotient_basis,
    zerodim_radical, PointCount,
};

use thiserror::Error;

use crate::arith::ArithError;
use crate::mpoly::{MPoly, MPolyError, Monomial, MonomialOrder, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Buchberger's algorithm needs a well-order")]
    NotWellOrder,
    #[error("basis is not a Gröbner basis")]
    NotGroebner,
    #[error("generator {0} does not vanish at the origin")]
    NotAtOrigin(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no generators given")]
    EmptyGenerators,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A list of generators with flags recording what the producing algorithm proved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Ring,
    generators: Vec<MPoly>,
    order: MonomialOrder,
    is_groebner: bool,
    is_standard: bool,
    is_homogeneous: bool,
}

impl IdealBasis {
    /// Generators with no certified properties.
    pub fn new(ring: &Ring, generators: Vec<MPoly>, order: MonomialOrder) -> IdealBasis {
        let is_homogeneous = generators.iter().all(|g| g.is_homogeneous());
        IdealBasis {
            ring: ring.clone(),
            generators,
            order,
            is_groebner: false,
            is_standard: false,
            is_homogeneous,
        }
    }

    /// The zero ideal (a Gröbner basis for every order).
    pub fn zero(ring: &Ring, order: MonomialOrder) -> IdealBasis {
        IdealBasis {
            ring: ring.clone(),
            generators: Vec::new(),
            order,
            is_groebner: order.is_well_order(),
            is_standard: !order.is_well_order(),
            is_homogeneous: true,
        }
    }

    pub(crate) fn new_groebner(
        ring: Ring,
        generators: Vec<MPoly>,
        order: MonomialOrder,
    ) -> IdealBasis {
        let mut b = IdealBasis::new(&ring, generators, order);
        b.is_groebner = true;
        b
    }

    pub(crate) fn new_standard(ring: Ring, generators: Vec<MPoly>) -> IdealBasis {
        let mut b = IdealBasis::new(&ring, generators, MonomialOrder::LocalAntiDegree);
        b.is_standard = true;
        b
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_groebner(&self) -> bool {
        self.is_groebner
    }

    pub fn is_standard(&self) -> bool {
        self.is_standard
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_term(self.order).map(|(m, _)| m.clone()))
            .collect()
    }

    /// Whether `f` lies in the ideal (requires a Gröbner basis).
    pub fn contains(&self, f: &MPoly) -> Result<bool, GroebnerError> {
        Ok(normal_form(f, self)?.is_zero())
    }
}
