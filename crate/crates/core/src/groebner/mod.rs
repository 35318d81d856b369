//! Buchberger Gröbner bases and the ideal invariants built on them.

mod basis;
mod hilbert;
mod ideal;
mod minors;
mod order;

pub use basis::{buchberger, GroebnerBasis};
pub use hilbert::{poincare_series, PoincareSeries};
pub use ideal::{
    colength_local, colength_local_with_cap, krull_dimension, monomial_basis, origin_is_isolated,
    quotient_dimension, standard_monomials, Colength, DEFAULT_COLENGTH_CAP,
};
pub use minors::{determinant, minors};
pub(crate) use minors::combinations;
pub use order::MonomialOrder;
