//! Varieties with structure: Jacobian chains, Milnor and Tjurina numbers,
//! coinvariant Poincaré polynomials, rank strata and leaves.

mod singularity;
mod strata;
mod variety;

pub use singularity::{
    chain_colengths, hp0_series, jacobian_chain, jacobian_matrix, milnor_number, tjurina, tjurina_ideal,
    JacobianChain, SingularityReport,
};
pub use strata::{
    degenerate_locus, jacobian_bracket_matrix, leaves_check, lie_closure, rank_strata, structure_matrix,
    DegenerateLocus, LeavesVerdict, Stratum,
};
pub use variety::{Structure, Variety};
