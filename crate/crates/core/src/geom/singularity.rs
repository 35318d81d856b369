//! Jacobian ideal chains, Milnor and Tjurina numbers, and the closed-form
//! coinvariant Poincaré polynomial of quasihomogeneous singularities.
//!
//! For a quasihomogeneous `f` of weighted degree `d` the Euler identity
//! `d · f = Σ m_i x_i ∂_i f` puts `f` in its Jacobian ideal, so `μ = τ`.
//! The divisor is the weighted degree of `f`, not the sum of the weights.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{colength_local, minors, poincare_series, Colength, GroebnerBasis, PoincareSeries};
use crate::poly::Polynomial;

use super::Variety;

/// `J_i = (f_1..f_{i−1}) + (i×i minors of ∂(f_1..f_i)/∂x)`, `i = 1..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianChain {
    pub ideals: Vec<Vec<Polynomial>>,
}

/// Jacobian matrix `∂f_i/∂x_j` of the first `rows` equations.
pub fn jacobian_matrix(x: &Variety, rows: usize) -> Vec<Vec<Polynomial>> {
    x.equations()[..rows]
        .iter()
        .map(|f| (0..x.ring().arity()).map(|j| f.derivative(j)).collect())
        .collect()
}

pub fn jacobian_chain(x: &Variety) -> Result<JacobianChain> {
    let k = x.codimension();
    if k == 0 {
        return Err(Error::WrongCodimension("no equations".into()));
    }
    let mut ideals = Vec::with_capacity(k);
    for i in 1..=k {
        let mut gens: Vec<Polynomial> = x.equations()[..i - 1].to_vec();
        gens.extend(minors(&jacobian_matrix(x, i), i)?.into_iter().filter(|m| !m.is_zero()));
        ideals.push(gens);
    }
    Ok(JacobianChain { ideals })
}

/// Local colengths of `J_1, ..., J_k`.
pub fn chain_colengths(x: &Variety) -> Result<Vec<Colength>> {
    jacobian_chain(x)?
        .ideals
        .iter()
        .map(|gens| colength_local(&GroebnerBasis::new(x.ring(), gens)?))
        .collect()
}

fn alternating_sum(colengths: &[Colength]) -> Colength {
    let k = colengths.len();
    let mut mu: i64 = 0;
    for (i, c) in colengths.iter().enumerate() {
        match c {
            Colength::Infinite => return Colength::Infinite,
            Colength::Finite(n) => {
                let sign = if (k - 1 - i) % 2 == 0 { 1 } else { -1 };
                mu += sign * *n as i64;
            }
        }
    }
    Colength::Finite(mu.max(0) as u64)
}

/// `μ = Σ_{i=1}^{k} (−1)^{k−i} colength(J_i)`; infinite when some `J_i`
/// has infinite colength (see [`chain_colengths`] for which one).
pub fn milnor_number(x: &Variety) -> Result<Colength> {
    Ok(alternating_sum(&chain_colengths(x)?))
}

/// Milnor and Tjurina numbers of an isolated complete-intersection singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport {
    pub milnor: u64,
    pub tjurina: u64,
    /// `μ − τ`.
    pub gap: i64,
    /// Poincaré series of `O/(J_k + (f_k))`, when the equations are quasihomogeneous.
    pub singularity_ring_series: Option<PoincareSeries>,
    /// Expected dimension of the local coinvariants, `μ`.
    pub predicted_local_coinv_dim: u64,
}

impl fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mu = {}", self.milnor)?;
        writeln!(f, "tau = {}", self.tjurina)?;
        write!(f, "gap = {}", self.gap)?;
        if let Some(s) = &self.singularity_ring_series {
            write!(f, "\nseries = {s}")?;
        }
        Ok(())
    }
}

/// Generators of `J_k + (f_k)`, whose colength is the Tjurina number.
pub fn tjurina_ideal(x: &Variety) -> Result<Vec<Polynomial>> {
    let chain = jacobian_chain(x)?;
    let mut gens = chain.ideals.last().cloned().unwrap_or_default();
    gens.push(x.equations().last().expect("k >= 1").clone());
    Ok(gens)
}

pub fn tjurina(x: &Variety) -> Result<SingularityReport> {
    let colengths = chain_colengths(x)?;
    if let Some(i) = colengths.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonIsolated { index: i + 1 });
    }
    let milnor = alternating_sum(&colengths).finite().expect("all finite");
    let gb = GroebnerBasis::new(x.ring(), &tjurina_ideal(x)?)?;
    let tjurina = colength_local(&gb)?
        .finite()
        .ok_or(Error::NonIsolated { index: x.codimension() })?;
    let singularity_ring_series = if x.is_quasihomogeneous() {
        Some(poincare_series(&gb)?)
    } else {
        None
    };
    Ok(SingularityReport {
        milnor,
        tjurina,
        gap: milnor as i64 - tjurina as i64,
        singularity_ring_series,
        predicted_local_coinv_dim: milnor,
    })
}

/// Poincaré polynomial of the coinvariants `(O_X)_{H(X)}` of a
/// quasihomogeneous isolated complete-intersection singularity, via the
/// closed form `P(O / (J_k + (f_k)))`.
pub fn hp0_series(x: &Variety) -> Result<PoincareSeries> {
    x.ring().require_positive_weights()?;
    x.require_homogeneous()?;
    let gb = GroebnerBasis::new(x.ring(), &tjurina_ideal(x)?)?;
    let series = poincare_series(&gb)?;
    if !series.is_finite() {
        return Err(Error::NonIsolated { index: x.codimension() });
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Structure;
    use crate::poly::PolyRing;

    fn variety(vars: &[&str], weights: &[u32], eqs: &[&str]) -> Variety {
        let r = PolyRing::new(vars, weights).unwrap();
        Variety::parse(&r, eqs, Structure::Jacobian).unwrap()
    }

    #[test]
    fn chains() {
        let x = variety(&["x", "y", "z"], &[1, 1, 1], &["x^2 + y^2 + z^2", "x^2 + 2*y^2 + 3*z^2"]);
        let r = x.ring().clone();
        let p = |s: &str| r.parse(s).unwrap();
        let chain = jacobian_chain(&x).unwrap();
        assert_eq!(chain.ideals[0], vec![p("2*x"), p("2*y"), p("2*z")]);
        assert_eq!(
            chain.ideals[1],
            vec![p("x^2 + y^2 + z^2"), p("4*x*y"), p("8*x*z"), p("4*y*z")]
        );
        assert_eq!(milnor_number(&x).unwrap(), Colength::Finite(5));

        let cusp = variety(&["x", "y"], &[3, 2], &["x^2 - y^3"]);
        let r = cusp.ring().clone();
        assert_eq!(
            jacobian_chain(&cusp).unwrap().ideals[0],
            vec![r.parse("2*x").unwrap(), r.parse("-3*y^2").unwrap()]
        );
    }

    #[test]
    fn fermat_report() {
        let x = variety(&["x", "y", "z"], &[1, 1, 1], &["x^3 + y^3 + z^3"]);
        let report = tjurina(&x).unwrap();
        assert_eq!((report.milnor, report.tjurina, report.gap), (8, 8, 0));
        assert_eq!(report.singularity_ring_series.unwrap().to_string(), "1 + 3*u + 3*u^2 + u^3");
        assert_eq!(hp0_series(&x).unwrap().at_one(), Some(8));
    }

    #[test]
    fn cusp_report() {
        let x = variety(&["x", "y"], &[3, 2], &["x^2 - y^3"]);
        assert_eq!(milnor_number(&x).unwrap(), Colength::Finite(2));
        let report = tjurina(&x).unwrap();
        assert_eq!(report.tjurina, 2);
        assert_eq!(hp0_series(&x).unwrap().to_string(), "1 + u^2");
    }

    #[test]
    fn non_quasihomogeneous_q() {
        let x = variety(&["x", "y"], &[1, 1], &["x^3 + x^2*y + y^4"]);
        let report = tjurina(&x).unwrap();
        assert_eq!((report.milnor, report.tjurina, report.gap), (5, 5, 0));
        assert!(report.singularity_ring_series.is_none());
        assert!(matches!(hp0_series(&x), Err(Error::NonHomogeneous(_))));
    }

    #[test]
    fn smooth_and_non_isolated() {
        let x = variety(&["x", "y"], &[1, 1], &["x"]);
        assert_eq!(hp0_series(&x).unwrap().to_string(), "0");
        assert_eq!(milnor_number(&x).unwrap(), Colength::Finite(0));
        let x = variety(&["x", "y"], &[1, 1], &["x^2*y"]);
        assert_eq!(milnor_number(&x).unwrap(), Colength::Infinite);
        assert!(matches!(tjurina(&x), Err(Error::NonIsolated { index: 1 })));
    }
}
