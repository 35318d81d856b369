use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::poly::{cmp_lex, cmp_weighted_grevlex, Monomial};

/// Monomial orders available to Buchberger's algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Weighted degree, then degree in weight-0 variables, then reverse
    /// lexicographic on the ring's variable order.
    #[default]
    WeightedGrevlex,
    /// Lexicographic with `x_1 > x_2 > ... > x_n`.
    Lex,
    /// Block order eliminating the first `k` variables: total degree in
    /// those variables first, then weighted grevlex.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::WeightedGrevlex => cmp_weighted_grevlex(a, b, weights),
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::Elimination(k) => {
                let block = |m: &Monomial| m.exponents()[..k].iter().map(|&e| e as u64).sum::<u64>();
                block(a)
                    .cmp(&block(b))
                    .then_with(|| cmp_weighted_grevlex(a, b, weights))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::WeightedGrevlex => write!(f, "wgrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wgrevlex" | "grevlex" => Ok(MonomialOrder::WeightedGrevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}
