//! Differential forms and polyvector fields with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

use super::VectorField;

/// Index tuple, strictly increasing.
pub type Indices = Vec<usize>;

/// Homogeneous `p`-form `Σ c_I dx_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    ring: Arc<PolyRing>,
    degree: usize,
    terms: BTreeMap<Indices, Polynomial>,
}

/// Homogeneous `q`-vector field `Σ c_L ∂_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyvector {
    ring: Arc<PolyRing>,
    degree: usize,
    terms: BTreeMap<Indices, Polynomial>,
}

/// `(-1)^{#{(a, b) : a ∈ left, b ∈ right, a > b}}`: sign of moving `right` past `left`.
fn shuffle_sign(left: &[usize], right: &[usize]) -> bool {
    let mut inversions = 0usize;
    for &a in left {
        inversions += right.iter().filter(|&&b| a > b).count();
    }
    inversions % 2 == 1
}

fn merge(left: &[usize], right: &[usize]) -> Option<Indices> {
    let mut out: Indices = left.iter().chain(right).copied().collect();
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(out)
    }
}

fn insert(terms: &mut BTreeMap<Indices, Polynomial>, key: Indices, value: Polynomial, negate: bool) {
    let value = if negate { -value } else { value };
    match terms.get_mut(&key) {
        Some(old) => {
            let sum = &*old + &value;
            if sum.is_zero() {
                terms.remove(&key);
            } else {
                *old = sum;
            }
        }
        None => {
            if !value.is_zero() {
                terms.insert(key, value);
            }
        }
    }
}

impl DifferentialForm {
    pub fn zero(ring: &Arc<PolyRing>, degree: usize) -> Self {
        DifferentialForm {
            ring: Arc::clone(ring),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `g`.
    pub fn function(g: &Polynomial) -> Self {
        Self::monomial(g.clone(), Vec::new()).expect("empty index set")
    }

    /// `g dx_{i_1} ∧ ... ∧ dx_{i_p}`; indices may be unsorted (sign applied)
    /// and a repeated index gives zero.
    pub fn monomial(g: Polynomial, indices: Indices) -> Result<Self> {
        let ring = Arc::clone(g.ring());
        if let Some(&bad) = indices.iter().find(|&&i| i >= ring.arity()) {
            return Err(Error::WrongStructure(format!("form index {bad} out of range")));
        }
        let degree = indices.len();
        let mut out = Self::zero(&ring, degree);
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(out);
        }
        // parity of the sorting permutation
        let mut inversions = 0;
        for a in 0..indices.len() {
            for b in a + 1..indices.len() {
                if indices[a] > indices[b] {
                    inversions += 1;
                }
            }
        }
        insert(&mut out.terms, sorted, g, inversions % 2 == 1);
        Ok(out)
    }

    /// `dx_i`.
    pub fn coordinate(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring.one(), vec![index]).expect("index in range")
    }

    /// `dg`.
    pub fn differential(g: &Polynomial) -> Self {
        Self::function(g).d()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Indices, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Exterior derivative: `d(g dx_I) = Σ_j ∂_j g dx_j ∧ dx_I`.
    pub fn d(&self) -> DifferentialForm {
        let mut out = Self::zero(&self.ring, self.degree + 1);
        for (idx, g) in &self.terms {
            for j in 0..self.ring.arity() {
                if idx.contains(&j) {
                    continue;
                }
                let dg = g.derivative(j);
                if dg.is_zero() {
                    continue;
                }
                let key = merge(&[j], idx).expect("disjoint");
                insert(&mut out.terms, key, dg, shuffle_sign(&[j], idx));
            }
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> DifferentialForm {
        let mut out = Self::zero(&self.ring, self.degree + other.degree);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some(key) = merge(a, b) {
                    insert(&mut out.terms, key, f * g, shuffle_sign(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        if self.degree != other.degree {
            return Err(Error::WrongStructure("adding forms of different degree".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            insert(&mut out.terms, k.clone(), v.clone(), false);
        }
        Ok(out)
    }

    /// Coefficient of `dx_1 ∧ ... ∧ dx_n` (zero unless the degree is `n`).
    pub fn top_coefficient(&self) -> Polynomial {
        if self.degree != self.ring.arity() {
            return self.ring.zero();
        }
        self.coefficient(&(0..self.degree).collect::<Vec<_>>())
    }

    /// Contraction with the standard top polyvector `∂_1 ∧ ... ∧ ∂_n`:
    /// `c dx_J ↦ c · sgn(J, L) ∂_L`, `L` the increasing complement of `J`.
    pub fn contract_std(&self) -> Polyvector {
        let n = self.ring.arity();
        let mut out = Polyvector {
            ring: Arc::clone(&self.ring),
            degree: n - self.degree,
            terms: BTreeMap::new(),
        };
        for (j, c) in &self.terms {
            let l: Indices = (0..n).filter(|i| !j.contains(i)).collect();
            let negate = shuffle_sign(j, &l);
            insert(&mut out.terms, l, c.clone(), negate);
        }
        out
    }
}

impl Polyvector {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Indices, Polynomial> {
        &self.terms
    }

    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Degree-0 polyvector as a function.
    pub fn as_scalar(&self) -> Option<Polynomial> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    /// Degree-1 polyvector as a vector field.
    pub fn as_vector_field(&self) -> Option<VectorField> {
        if self.degree != 1 {
            return None;
        }
        let coeffs = (0..self.ring.arity()).map(|i| self.coefficient(&[i])).collect();
        VectorField::new(&self.ring, coeffs).ok()
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    ring: &PolyRing,
    terms: &BTreeMap<Indices, Polynomial>,
    prefix: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(idx, c)| {
            let basis: Vec<String> = idx.iter().map(|&i| format!("{prefix}{}", ring.vars()[i])).collect();
            if basis.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{}", basis.join("^"))
            }
        })
        .collect();
    write!(f, "{}", parts.join(" + "))
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.ring, &self.terms, "d")
    }
}

impl fmt::Display for Polyvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.ring, &self.terms, "d_")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn xyz() -> Arc<PolyRing> {
        PolyRing::standard(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn exterior_derivative_examples() {
        let r = xyz();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let w = DifferentialForm::monomial(x.clone(), vec![1]).unwrap();
        assert_eq!(w.d(), DifferentialForm::monomial(r.one(), vec![0, 1]).unwrap());
        assert!(DifferentialForm::coordinate(&r, 0).d().is_zero());
        // x dy∧dz + y dz∧dx
        let w = DifferentialForm::monomial(x, vec![1, 2])
            .unwrap()
            .add(&DifferentialForm::monomial(y, vec![2, 0]).unwrap())
            .unwrap();
        assert_eq!(w.d().top_coefficient(), r.parse("2").unwrap());
    }

    #[test]
    fn contraction_signs() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let dx = DifferentialForm::coordinate(&r, 0).contract_std();
        let dy = DifferentialForm::coordinate(&r, 1).contract_std();
        assert_eq!(dx.as_vector_field().unwrap(), VectorField::partial(&r, 1));
        assert_eq!(dy.as_vector_field().unwrap(), VectorField::partial(&r, 0).scale(&rational(-1)));
        let r = xyz();
        let vol = DifferentialForm::monomial(r.one(), vec![0, 1, 2]).unwrap();
        assert_eq!(vol.contract_std().as_scalar().unwrap(), r.one());
    }

    #[test]
    fn fermat_bracket_from_contraction() {
        let r = xyz();
        let f = r.parse("x^3 + y^3 + z^3").unwrap();
        let df = DifferentialForm::differential(&f);
        let bracket = |i: usize, j: usize| {
            DifferentialForm::coordinate(&r, i)
                .wedge(&DifferentialForm::coordinate(&r, j))
                .wedge(&df)
                .contract_std()
                .as_scalar()
                .unwrap()
        };
        assert_eq!(bracket(0, 1), r.parse("3*z^2").unwrap());
        assert_eq!(bracket(1, 2), r.parse("3*x^2").unwrap());
        assert_eq!(bracket(2, 0), r.parse("3*y^2").unwrap());
    }

    #[test]
    fn d_squared_vanishes() {
        let r = xyz();
        let g = r.parse("x^2*y*z + 3*y^3 - z*x").unwrap();
        assert!(DifferentialForm::function(&g).d().d().is_zero());
        let w = DifferentialForm::monomial(g, vec![2]).unwrap();
        assert!(w.d().d().is_zero());
    }
}
