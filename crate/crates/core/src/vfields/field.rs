use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{rational, Coeff, PolyRing, Polynomial};

/// Polynomial vector field `Σ g_i ∂_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    ring: Arc<PolyRing>,
    coeffs: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(ring: &Arc<PolyRing>, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != ring.arity() {
            return Err(Error::WrongStructure(format!(
                "vector field has {} components, ring has {} variables",
                coeffs.len(),
                ring.arity()
            )));
        }
        if coeffs.iter().any(|c| **c.ring() != **ring) {
            return Err(Error::RingMismatch);
        }
        Ok(VectorField {
            ring: Arc::clone(ring),
            coeffs,
        })
    }

    /// Parses one expression per variable.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, coeffs: &[S]) -> Result<Self> {
        let polys = coeffs
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        VectorField {
            ring: Arc::clone(ring),
            coeffs: vec![ring.zero(); ring.arity()],
        }
    }

    /// `∂/∂x_i`.
    pub fn partial(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut v = Self::zero(ring);
        v.coeffs[index] = ring.one();
        v
    }

    /// Weighted Euler field `Σ m_i x_i ∂_i`.
    pub fn euler(ring: &Arc<PolyRing>) -> Self {
        let coeffs = (0..ring.arity())
            .map(|i| ring.variable(i).scale(&rational(ring.weight(i) as i64)))
            .collect();
        VectorField {
            ring: Arc::clone(ring),
            coeffs,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coefficient(&self, index: usize) -> &Polynomial {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `ξ(g) = Σ g_i ∂_i g`.
    pub fn apply(&self, g: &Polynomial) -> Polynomial {
        let mut acc = self.ring.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = g.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// `[ξ, η]` with components `ξ(η_i) − η(ξ_i)`.
    pub fn lie_bracket(&self, other: &VectorField) -> VectorField {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| &self.apply(b) - &other.apply(a))
            .collect();
        VectorField {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    /// Divergence for the standard volume, `Σ ∂_i g_i`.
    pub fn divergence(&self) -> Polynomial {
        let mut acc = self.ring.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &c.derivative(i);
        }
        acc
    }

    /// Weight `deg(g_i) − m_i`, if every term agrees. `None` for the zero field.
    pub fn weight(&self) -> Option<i64> {
        let w = self.ring.weights();
        let mut found: Option<i64> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            for (m, _) in c.terms() {
                let d = m.weighted_degree(w) as i64 - w[i] as i64;
                match found {
                    None => found = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        found
    }

    /// Homogeneous of some weight (the zero field counts).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    /// `ξ(I) ⊆ I`, tested on the basis elements.
    pub fn tangency_check(&self, gb: &GroebnerBasis) -> bool {
        gb.elements()
            .iter()
            .all(|f| gb.normal_form(&self.apply(f)).is_zero())
    }

    pub fn scale(&self, c: &Coeff) -> VectorField {
        self.map(|p| p.scale(c))
    }

    /// `g · ξ`.
    pub fn mul_poly(&self, g: &Polynomial) -> VectorField {
        self.map(|p| p * g)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        VectorField {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    /// Reduces every coefficient modulo the ideal.
    pub fn reduce(&self, gb: &GroebnerBasis) -> VectorField {
        self.map(|p| gb.normal_form(p))
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Vec<Coeff> {
        self.coeffs.iter().map(|c| c.evaluate(point)).collect()
    }

    fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> VectorField {
        VectorField {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for VectorField {
    /// `3*z^2*d_y - 3*y^2*d_z`; multi-term coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = &self.ring.vars()[i];
            let (negative, body) = if c.len() == 1 {
                let (m, k) = &c.terms()[0];
                let abs = Polynomial::monomial(&self.ring, m.clone(), k.abs());
                let body = if abs.is_constant() && k.abs().is_one() {
                    format!("d_{var}")
                } else {
                    format!("{abs}*d_{var}")
                };
                (k.is_negative(), body)
            } else {
                (false, format!("({c})*d_{var}"))
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"], &[3, 2]).unwrap()
    }

    #[test]
    fn cusp_field_is_tangent_and_divergence_free() {
        let r = plane();
        let v = VectorField::parse(&r, &["3*y^2", "2*x"]).unwrap();
        let f = r.parse("x^2 - y^3").unwrap();
        assert!(v.apply(&f).is_zero());
        assert!(v.divergence().is_zero());
        let gb = GroebnerBasis::new(&r, &[f.clone()]).unwrap();
        assert!(v.tangency_check(&gb));
        assert!(!VectorField::partial(&r, 0).tangency_check(&gb));
        assert!(VectorField::zero(&r).tangency_check(&gb));
        assert_eq!(v.weight(), Some(1));
        assert_eq!(v.to_string(), "3*y^2*d_x + 2*x*d_y");
    }

    #[test]
    fn euler_field() {
        let r = plane();
        let e = VectorField::euler(&r);
        let f = r.parse("x^2 - y^3").unwrap();
        assert_eq!(e.apply(&f), f.scale(&rational(6)));
        assert_eq!(e.divergence(), r.parse("5").unwrap());
        assert_eq!(e.weight(), Some(0));
    }

    #[test]
    fn brackets() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let dx = VectorField::partial(&r, 0);
        let xdx = VectorField::parse(&r, &["x", "0"]).unwrap();
        assert_eq!(dx.lie_bracket(&xdx), dx);
        assert!(xdx.lie_bracket(&xdx).is_zero());
        let a = VectorField::parse(&r, &["0", "x"]).unwrap();
        let b = VectorField::parse(&r, &["y", "0"]).unwrap();
        assert_eq!(a.lie_bracket(&b), VectorField::parse(&r, &["x", "-y"]).unwrap());
        assert_eq!(dx.to_string(), "d_x");
        assert_eq!(VectorField::parse(&r, &["x + y", "-1"]).unwrap().to_string(), "(x + y)*d_x - d_y");
    }
}
