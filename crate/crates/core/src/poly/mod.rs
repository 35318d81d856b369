//! Exact multivariate polynomials over the rationals in weighted polynomial rings.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{
    cmp_lex, cmp_weighted_grevlex, monomials_of_total_degree, monomials_of_weight, Monomial,
};
pub use parse::parse_poly;
pub use polynomial::{rational, Coeff, Polynomial, WeightedComponents};
pub use ring::PolyRing;

pub use polynomial::{format_monomial, format_rational};
