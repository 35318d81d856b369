use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

use super::VectorField;

/// Skew matrix `π_{ij} = {x_i, x_j}` of a bivector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketMatrix {
    ring: Arc<PolyRing>,
    entries: Vec<Vec<Polynomial>>,
}

impl BracketMatrix {
    /// Checks shape, zero diagonal and skew-symmetry.
    pub fn new(ring: &Arc<PolyRing>, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = ring.arity();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotSkew(format!("matrix must be {n}x{n}")));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if **e.ring() != **ring {
                    return Err(Error::RingMismatch);
                }
                if &entries[j][i] + e != ring.zero() {
                    return Err(Error::NotSkew(format!(
                        "entry ({i},{j}) = {e} but ({j},{i}) = {}",
                        entries[j][i]
                    )));
                }
            }
        }
        Ok(BracketMatrix {
            ring: Arc::clone(ring),
            entries,
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, rows: &[Vec<S>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| ring.parse(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, entries)
    }

    /// Constant symplectic form `Σ ∂_{x_i} ∧ ∂_{y_i}` on an even number of variables,
    /// pairing variable `i` with `i + n/2`.
    pub fn symplectic(ring: &Arc<PolyRing>) -> Result<Self> {
        let n = ring.arity();
        if n % 2 != 0 {
            return Err(Error::WrongCodimension(format!("{n} variables is odd")));
        }
        let mut entries = vec![vec![ring.zero(); n]; n];
        for i in 0..n / 2 {
            entries[i][i + n / 2] = ring.one();
            entries[i + n / 2][i] = -ring.one();
        }
        Self::new(ring, entries)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// `{f, g} = Σ_{ij} ∂_i f ∂_j g π_{ij}`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.hamiltonian(f).apply(g)
    }

    /// `ξ_f = π(df)`, i.e. `ξ_f(x_i) = Σ_j ∂_j f π_{ji} = {f, x_i}`.
    pub fn hamiltonian(&self, f: &Polynomial) -> VectorField {
        let n = self.ring.arity();
        let partials: Vec<Polynomial> = (0..n).map(|j| f.derivative(j)).collect();
        let coeffs = (0..n)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, dj) in partials.iter().enumerate() {
                    if !dj.is_zero() && !self.entries[j][i].is_zero() {
                        acc = &acc + &(dj * &self.entries[j][i]);
                    }
                }
                acc
            })
            .collect();
        VectorField::new(&self.ring, coeffs).expect("arity matches")
    }
}

/// A bivector `π` and a vector field `u` (a Jacobi pair when
/// `[π, π] = 2u ∧ π` and `[u, π] = 0`; not checked).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiStructure {
    pub pi: BracketMatrix,
    pub u: VectorField,
}

impl JacobiStructure {
    pub fn new(pi: BracketMatrix, u: VectorField) -> Result<Self> {
        if **pi.ring() != **u.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(JacobiStructure { pi, u })
    }

    /// Standard contact structure `dt + Σ x_i dy_i` on `2d + 1` space, with
    /// variables `x_1..x_d, y_1..y_d, t` (just `x, y, t` when `d = 1`) and
    /// weights `|x_i| = |y_i| = 1`, `|t| = 2`.
    ///
    /// `π = Σ ∂_{x_i} ∧ (∂_{y_i} − x_i ∂_t)` and `u = ∂_t`; with this sign
    /// `f ↦ π(df) + f u` is a Lie homomorphism for the bracket
    /// `{f, g} = ξ_f(g) − g u(f)`.
    pub fn standard_contact(d: usize) -> Result<Self> {
        let mut vars = Vec::new();
        if d == 1 {
            vars.extend(["x".to_string(), "y".to_string()]);
        } else {
            vars.extend((1..=d).map(|i| format!("x{i}")));
            vars.extend((1..=d).map(|i| format!("y{i}")));
        }
        vars.push("t".into());
        let mut weights = vec![1; 2 * d];
        weights.push(2);
        let ring = PolyRing::new(&vars, &weights)?;
        let n = 2 * d + 1;
        let t = 2 * d;
        let mut entries = vec![vec![ring.zero(); n]; n];
        for i in 0..d {
            let x = ring.variable(i);
            entries[i][d + i] = ring.one();
            entries[d + i][i] = -ring.one();
            entries[i][t] = -x.clone();
            entries[t][i] = x;
        }
        let pi = BracketMatrix::new(&ring, entries)?;
        let u = VectorField::partial(&ring, t);
        Self::new(pi, u)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.pi.ring()
    }

    /// `ξ_f = π(df) + f u`.
    pub fn hamiltonian(&self, f: &Polynomial) -> VectorField {
        self.pi.hamiltonian(f).add(&self.u.mul_poly(f))
    }

    /// `{f, g} = ξ_f(g) − g u(f)`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        &self.hamiltonian(f).apply(g) - &(g * &self.u.apply(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_skew() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let bad = BracketMatrix::parse(&r, &[vec!["0", "x"], vec!["x", "0"]]);
        assert!(matches!(bad, Err(Error::NotSkew(_))));
        let bad = BracketMatrix::parse(&r, &[vec!["1", "x"], vec!["-x", "0"]]);
        assert!(matches!(bad, Err(Error::NotSkew(_))));
    }

    #[test]
    fn symplectic_plane() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let pi = BracketMatrix::symplectic(&r).unwrap();
        assert_eq!(pi.hamiltonian(&r.var("x").unwrap()), VectorField::partial(&r, 1));
        assert!(pi.hamiltonian(&r.parse("7").unwrap()).is_zero());
        assert_eq!(pi.bracket(&r.var("x").unwrap(), &r.var("y").unwrap()), r.one());
    }

    #[test]
    fn contact_hamiltonians() {
        let j = JacobiStructure::standard_contact(1).unwrap();
        let r = j.ring().clone();
        let v = |s: &[&str]| VectorField::parse(&r, s).unwrap();
        assert_eq!(j.hamiltonian(&r.one()), v(&["0", "0", "1"]));
        assert_eq!(j.hamiltonian(&r.var("x").unwrap()), v(&["0", "1", "0"]));
        assert_eq!(j.hamiltonian(&r.var("y").unwrap()), v(&["-1", "0", "y"]));
        assert_eq!(j.hamiltonian(&r.var("t").unwrap()), v(&["x", "0", "t"]));
    }

    /// The opposite bivector `−Σ ∂_{x_i} ∧ (∂_{y_i} − x_i ∂_t)` gives the
    /// often-listed values `ξ_t = −x∂_x`, `ξ_y = ∂_x`, `ξ_x = −∂_y + x∂_t`,
    /// but only through `π(df)` alone, without the `f u` term.
    #[test]
    fn opposite_bivector_without_f_u_term() {
        let j = JacobiStructure::standard_contact(1).unwrap();
        let r = j.ring().clone();
        let negated: Vec<Vec<Polynomial>> = j
            .pi
            .entries()
            .iter()
            .map(|row| row.iter().map(|e| -e).collect())
            .collect();
        let opposite = BracketMatrix::new(&r, negated).unwrap();
        let v = |s: &[&str]| VectorField::parse(&r, s).unwrap();
        assert_eq!(opposite.hamiltonian(&r.var("t").unwrap()), v(&["-x", "0", "0"]));
        assert_eq!(opposite.hamiltonian(&r.var("y").unwrap()), v(&["1", "0", "0"]));
        assert_eq!(opposite.hamiltonian(&r.var("x").unwrap()), v(&["0", "-1", "x"]));
    }

    #[test]
    fn contact_hamiltonians_form_a_lie_algebra_homomorphism() {
        let j = JacobiStructure::standard_contact(1).unwrap();
        let r = j.ring().clone();
        let fs = ["1", "x", "y", "t", "x*y", "t*x", "y^2", "t^2", "x^2*t"];
        for f in fs {
            for g in fs {
                let (f, g) = (r.parse(f).unwrap(), r.parse(g).unwrap());
                let lhs = j.hamiltonian(&f).lie_bracket(&j.hamiltonian(&g));
                let rhs = j.hamiltonian(&j.bracket(&f, &g));
                assert_eq!(lhs, rhs, "f = {f}, g = {g}");
            }
        }
    }
}
