//! Invariants of affine varieties carrying Lie algebras of vector fields:
//! Milnor and Tjurina numbers, coinvariant Poincaré polynomials, rank
//! stratifications and symmetric-power series, all in exact arithmetic.

pub mod coinv;
pub mod error;
pub mod geom;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod sympower;
pub mod vfields;

pub use coinv::{coinvariants_truncated, verify_hp0, CoinvariantTable, Family, Hp0Check};
pub use error::{Error, Result};
pub use geom::{
    degenerate_locus, hp0_series, jacobian_bracket_matrix, jacobian_chain, leaves_check, milnor_number,
    rank_strata, tjurina, SingularityReport, Structure, Variety,
};
pub use groebner::{
    buchberger, colength_local, krull_dimension, minors, poincare_series, Colength, GroebnerBasis,
    MonomialOrder, PoincareSeries,
};
pub use poly::{parse_poly, Coeff, Monomial, PolyRing, Polynomial};
pub use sympower::{brute_sym2_coinvariants, sym_power_series, BigradedSeries};
pub use vfields::{BracketMatrix, DifferentialForm, JacobiStructure, VectorField};
