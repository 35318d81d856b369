use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::{buchberger, GroebnerBasis, MonomialOrder};
use crate::error::{Error, Result};
use crate::poly::{
    cmp_weighted_grevlex, monomials_of_total_degree, monomials_of_weight, Coeff, Monomial, PolyRing,
    Polynomial,
};

/// Largest `N` tried when stabilizing `dim k[x]/(I + m^N)`.
pub const DEFAULT_COLENGTH_CAP: u32 = 64;

/// Local colength at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(u64),
    /// The origin lies on a positive-dimensional component.
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

/// Krull dimension of `k[x]/I`: size of a largest set of variables such that
/// no leading monomial involves only those variables. `-1` for the unit ideal.
pub fn krull_dimension(gb: &GroebnerBasis) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    let n = gb.ring().arity();
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    assert!(n < 64, "krull_dimension: arity {n} too large");
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones();
        if size <= best {
            continue;
        }
        // independent: no leading monomial supported inside `set`
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best as i64
}

/// Standard monomials of `k[x]/I` when the quotient is finite-dimensional,
/// ascending in canonical order (so `1` comes first).
pub fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    if gb.is_unit() {
        return Some(Vec::new());
    }
    if krull_dimension(gb) > 0 {
        return None;
    }
    let n = gb.ring().arity();
    let mut seen = BTreeSet::new();
    let mut frontier = vec![Monomial::one(n)];
    seen.insert(Monomial::one(n));
    while let Some(m) = frontier.pop() {
        for i in 0..n {
            let next = m.mul(&Monomial::var(n, i, 1));
            if gb.is_standard(&next) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let w = gb.ring().weights();
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| cmp_weighted_grevlex(a, b, w));
    Some(out)
}

/// `dim_k k[x]/I`, or `None` when infinite.
pub fn quotient_dimension(gb: &GroebnerBasis) -> Option<u64> {
    standard_monomials(gb).map(|v| v.len() as u64)
}

/// Standard monomials of weighted degree `degree`. Weight-0 variables are
/// allowed up to total exponent `zero_weight_cap`.
pub fn monomial_basis(gb: &GroebnerBasis, degree: u64, zero_weight_cap: u64) -> Vec<Monomial> {
    let w = gb.ring().weights();
    let mut out: Vec<Monomial> = monomials_of_weight(w, degree, zero_weight_cap)
        .into_iter()
        .filter(|m| gb.is_standard(m))
        .collect();
    out.sort_by(|a, b| cmp_weighted_grevlex(b, a, w));
    out
}

fn fresh_name(ring: &PolyRing, base: &str) -> String {
    let mut name = base.to_string();
    while ring.vars().iter().any(|v| *v == name) {
        name.push('_');
    }
    name
}

/// `I : x_i^∞` via the Rabinowitsch trick, as generators in the original ring.
fn saturate_by_variable(gb: &GroebnerBasis, index: usize) -> Result<GroebnerBasis> {
    let ring = gb.ring();
    let helper = fresh_name(ring, "_sat");
    let mut vars = vec![helper];
    vars.extend(ring.vars().iter().cloned());
    let mut weights = vec![1];
    weights.extend_from_slice(ring.weights());
    let big = PolyRing::new(&vars, &weights)?;
    let mapping: Vec<usize> = (1..=ring.arity()).collect();
    let mut gens: Vec<Polynomial> = gb.elements().iter().map(|g| g.embed(&big, &mapping)).collect();
    // 1 - h * x_i
    let hx = Monomial::var(big.arity(), 0, 1).mul(&Monomial::var(big.arity(), index + 1, 1));
    gens.push(Polynomial::from_terms(
        &big,
        [(Monomial::one(big.arity()), Coeff::one()), (hx, -Coeff::one())],
    ));
    let elim = buchberger(&big, &gens, MonomialOrder::Elimination(1))?;
    let back: Vec<Polynomial> = elim
        .elements()
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| {
            let terms = g.terms().iter().map(|(m, c)| {
                (Monomial::from_exponents(m.exponents()[1..].to_vec()), c.clone())
            });
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    GroebnerBasis::new(ring, &back)
}

/// True if the origin is an isolated point of `V(I)` (or not on it at all).
///
/// The origin is non-isolated iff it lies in the closure of `V(I) \ {x_i = 0}`
/// for some `i`, i.e. iff some saturation `I : x_i^∞` is contained in the
/// maximal ideal at 0.
pub fn origin_is_isolated(gb: &GroebnerBasis) -> Result<bool> {
    if gb.is_unit() || !gb.vanishes_at_origin() || krull_dimension(gb) <= 0 {
        return Ok(true);
    }
    for i in 0..gb.ring().arity() {
        let sat = saturate_by_variable(gb, i)?;
        if !sat.is_unit() && sat.vanishes_at_origin() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Colength of `I` in the local ring at the origin, with the default cap.
pub fn colength_local(gb: &GroebnerBasis) -> Result<Colength> {
    colength_local_with_cap(gb, DEFAULT_COLENGTH_CAP)
}

/// `dim k[[x]]/I`, computed as the stable value of `dim k[x]/(I + m^N)`.
///
/// Stops as soon as two consecutive values agree (Nakayama then gives
/// `m^N ⊆ I` locally). Non-isolated origins are detected up front and
/// reported as [`Colength::Infinite`]; exceeding `cap` otherwise is a
/// [`Error::SizeGuard`].
pub fn colength_local_with_cap(gb: &GroebnerBasis, cap: u32) -> Result<Colength> {
    if gb.is_unit() || !gb.vanishes_at_origin() {
        return Ok(Colength::Finite(0));
    }
    let ring: &Arc<PolyRing> = gb.ring();
    let positive = !ring.has_zero_weight();
    if positive && gb.is_homogeneous() {
        // a cone: every component passes through the origin
        let canonical = if gb.order() == MonomialOrder::WeightedGrevlex {
            gb.clone()
        } else {
            GroebnerBasis::new(ring, &gb.elements())?
        };
        return Ok(match quotient_dimension(&canonical) {
            Some(d) => Colength::Finite(d),
            None => Colength::Infinite,
        });
    }
    if !origin_is_isolated(gb)? {
        return Ok(Colength::Infinite);
    }
    let base = gb.elements();
    let mut previous: Option<u64> = None;
    for n in 1..=cap {
        let mut gens = base.clone();
        gens.extend(
            monomials_of_total_degree(ring.arity(), n as u64)
                .into_iter()
                .map(|m| Polynomial::monomial(ring, m, Coeff::one())),
        );
        let trunc = GroebnerBasis::new(ring, &gens)?;
        let dim = quotient_dimension(&trunc).expect("I + m^N is zero-dimensional");
        if previous == Some(dim) {
            return Ok(Colength::Finite(dim));
        }
        previous = Some(dim);
    }
    Err(Error::SizeGuard(format!(
        "local colength did not stabilize by N = {cap}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gb(ring: &Arc<PolyRing>, gens: &[&str]) -> GroebnerBasis {
        let gens: Vec<_> = gens.iter().map(|s| ring.parse(s).unwrap()).collect();
        GroebnerBasis::new(ring, &gens).unwrap()
    }

    fn xyz() -> Arc<PolyRing> {
        PolyRing::standard(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn colengths() {
        let r = xyz();
        assert_eq!(colength_local(&gb(&r, &["x", "y", "z"])).unwrap(), Colength::Finite(1));
        assert_eq!(
            colength_local(&gb(&r, &["x^2", "y^2", "z^2"])).unwrap(),
            Colength::Finite(8)
        );
        assert_eq!(
            colength_local(&gb(&r, &["x^2 + y^2 + z^2", "x*y", "x*z", "y*z"])).unwrap(),
            Colength::Finite(6)
        );
        assert_eq!(colength_local(&gb(&r, &["x*y", "x*z", "y*z"])).unwrap(), Colength::Infinite);
        assert_eq!(colength_local(&gb(&r, &["x - 1"])).unwrap(), Colength::Finite(0));
    }

    #[test]
    fn colength_ignores_points_away_from_origin() {
        // V(x^2 - x, y) = {(0,0), (1,0)}: globally 2, locally 1
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let g = gb(&r, &["x^2 - x", "y"]);
        assert_eq!(quotient_dimension(&g), Some(2));
        assert_eq!(colength_local(&g).unwrap(), Colength::Finite(1));
        // contains the whole y-axis
        let g = gb(&r, &["x*(x - 1)", "y^2*x"]);
        assert_eq!(colength_local(&g).unwrap(), Colength::Infinite);
        // the line x = 1 plus a fat point (x^2, y) at the origin
        let g = gb(&r, &["x^2*(x - 1)", "y*(x - 1)"]);
        assert_eq!(colength_local(&g).unwrap(), Colength::Finite(2));
    }

    #[test]
    fn non_homogeneous_singularity_ideals() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        // Q = x^3 + x^2 y + y^4
        let mu = gb(&r, &["3*x^2 + 2*x*y", "x^2 + 4*y^3"]);
        let tau = gb(&r, &["3*x^2 + 2*x*y", "x^2 + 4*y^3", "x^3 + x^2*y + y^4"]);
        assert_eq!(colength_local(&mu).unwrap(), Colength::Finite(5));
        assert_eq!(colength_local(&tau).unwrap(), Colength::Finite(5));
        // but globally the Jacobian ideal has a second zero
        assert_eq!(quotient_dimension(&mu), Some(6));
    }

    #[test]
    fn krull_dimensions() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        assert_eq!(krull_dimension(&gb(&r, &["x"])), 1);
        assert_eq!(krull_dimension(&gb(&r, &["1"])), -1);
        assert_eq!(krull_dimension(&gb(&r, &[])), 2);
        let r = xyz();
        assert_eq!(krull_dimension(&gb(&r, &["x*y", "x*z", "y*z"])), 1);
        assert_eq!(krull_dimension(&gb(&r, &["x^3 + y^3 + z^3"])), 2);
    }

    #[test]
    fn monomial_bases() {
        let r = PolyRing::new(&["x", "y"], &[3, 2]).unwrap();
        let g = gb(&r, &["x^2 - y^3"]);
        assert_eq!(monomial_basis(&g, 6, 0), vec![Monomial::from_exponents(vec![0, 3])]);
        assert_eq!(monomial_basis(&g, 0, 0), vec![Monomial::one(2)]);
        assert!(monomial_basis(&gb(&r, &["1"]), 0, 0).is_empty());
        let r = xyz();
        let g = gb(&r, &["x^2", "y^2", "z^2"]);
        let basis: Vec<String> = monomial_basis(&g, 2, 0)
            .iter()
            .map(|m| Polynomial::monomial(&r, m.clone(), Coeff::one()).to_string())
            .collect();
        assert_eq!(basis, vec!["x*y", "x*z", "y*z"]);
        assert_eq!(standard_monomials(&g).unwrap().len(), 8);
    }
}
