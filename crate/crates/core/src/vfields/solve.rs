//! Degree-truncated linear solvers over the Gröbner normal-form oracle.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{monomial_basis, GroebnerBasis};
use crate::linalg::{kernel, SparseRow};
use crate::poly::{Coeff, Monomial, Polynomial};

use super::VectorField;

/// Collects linear conditions `Σ_c x_c · image_c = 0` where each column's
/// image is a list of polynomials (one per "slot"); one row per
/// (slot, monomial) pair.
#[derive(Default)]
struct System {
    index: HashMap<(usize, Monomial), usize>,
    rows: Vec<BTreeMap<usize, Coeff>>,
    columns: usize,
}

impl System {
    fn add_column(&mut self, images: &[Polynomial]) {
        let col = self.columns;
        self.columns += 1;
        for (slot, p) in images.iter().enumerate() {
            for (m, c) in p.terms() {
                let next = self.rows.len();
                let r = *self.index.entry((slot, m.clone())).or_insert(next);
                if r == next {
                    self.rows.push(BTreeMap::new());
                }
                self.rows[r].insert(col, c.clone());
            }
        }
    }

    fn kernel(&self) -> Vec<Vec<Coeff>> {
        let rows: Vec<SparseRow> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(&c, v)| (c, v.clone())).collect())
            .collect();
        kernel(&rows, self.columns)
    }
}

fn require_homogeneous(gb: &GroebnerBasis) -> Result<()> {
    match gb.elements().into_iter().find(|g| !g.is_homogeneous()) {
        Some(g) => Err(Error::NonHomogeneous(g.to_string())),
        None => Ok(()),
    }
}

/// Basis of the tangent fields (`ξ(I) ⊆ I`) of each weight
/// `−max m_i ≤ w ≤ max_degree`, coefficients reduced to standard monomials.
///
/// Weight-0 variables are allowed up to total exponent `max_degree` in each
/// coefficient, so with such variables the answer is truncated.
pub fn derivations_up_to_degree(gb: &GroebnerBasis, max_degree: i64) -> Result<Vec<VectorField>> {
    require_homogeneous(gb)?;
    let ring = gb.ring();
    let w = ring.weights();
    let max_w = w.iter().copied().max().unwrap_or(0) as i64;
    let cap = max_degree.max(0) as u64;
    let gens = gb.elements();
    let mut out = Vec::new();
    for weight in -max_w..=max_degree {
        let mut system = System::default();
        let mut candidates: Vec<(usize, Monomial)> = Vec::new();
        for i in 0..ring.arity() {
            let cdeg = weight + w[i] as i64;
            if cdeg < 0 {
                continue;
            }
            for b in monomial_basis(gb, cdeg as u64, cap) {
                let field_term = Polynomial::monomial(ring, b.clone(), Coeff::one());
                let images: Vec<Polynomial> = gens
                    .iter()
                    .map(|f| gb.normal_form(&(&field_term * &f.derivative(i))))
                    .collect();
                system.add_column(&images);
                candidates.push((i, b));
            }
        }
        for v in system.kernel() {
            let mut coeffs = vec![ring.zero(); ring.arity()];
            for ((i, b), c) in candidates.iter().zip(&v) {
                if !c.is_zero() {
                    coeffs[*i] = &coeffs[*i] + &Polynomial::monomial(ring, b.clone(), c.clone());
                }
            }
            out.push(VectorField::new(ring, coeffs)?);
        }
    }
    Ok(out)
}

/// `I_X` plus every coefficient of every field: the ideal of the locus where
/// all the fields vanish on `X`.
pub fn exceptional_ideal(fields: &[VectorField], gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    let mut gens = gb.elements();
    for (index, xi) in fields.iter().enumerate() {
        if !xi.tangency_check(gb) {
            return Err(Error::NotTangent { index });
        }
        gens.extend(xi.coefficients().iter().filter(|c| !c.is_zero()).cloned());
    }
    GroebnerBasis::new(gb.ring(), &gens)
}

/// Outcome of [`incompressibility_truncated`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Incompressibility {
    /// Every relation found with coefficients of degree `≤ max_degree`
    /// satisfied `Σ ξ_i(f_i) ≡ 0`. Not a proof of incompressibility.
    ConsistentTo { max_degree: i64, relations: usize },
    /// `Σ f_i ξ_i ≡ 0` but `Σ ξ_i(f_i) = value ≢ 0`.
    Violated {
        witness: Vec<Polynomial>,
        value: Polynomial,
    },
}

impl Incompressibility {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Incompressibility::ConsistentTo { .. })
    }
}

/// Finds all `O`-linear relations `Σ f_i ξ_i ≡ 0 (mod I_X)` with standard
/// monomial coefficients of weighted degree `≤ max_degree` and checks
/// `Σ ξ_i(f_i) ≡ 0` on a basis of them.
pub fn incompressibility_truncated(
    fields: &[VectorField],
    gb: &GroebnerBasis,
    max_degree: i64,
) -> Result<Incompressibility> {
    let ring = gb.ring();
    for (index, xi) in fields.iter().enumerate() {
        if **xi.ring() != **ring {
            return Err(Error::RingMismatch);
        }
        if !xi.tangency_check(gb) {
            return Err(Error::NotTangent { index });
        }
    }
    let cap = max_degree.max(0) as u64;
    let mut monomials = Vec::new();
    for d in 0..=max_degree.max(-1) {
        monomials.extend(monomial_basis(gb, d as u64, cap));
    }
    let mut system = System::default();
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (i, xi) in fields.iter().enumerate() {
        for b in &monomials {
            let term = Polynomial::monomial(ring, b.clone(), Coeff::one());
            let images: Vec<Polynomial> = xi
                .coefficients()
                .iter()
                .map(|c| gb.normal_form(&(&term * c)))
                .collect();
            system.add_column(&images);
            unknowns.push((i, b.clone()));
        }
    }
    let relations = system.kernel();
    for v in &relations {
        let mut witness = vec![ring.zero(); fields.len()];
        for ((i, b), c) in unknowns.iter().zip(v) {
            if !c.is_zero() {
                witness[*i] = &witness[*i] + &Polynomial::monomial(ring, b.clone(), c.clone());
            }
        }
        let mut value = ring.zero();
        for (xi, f) in fields.iter().zip(&witness) {
            value = &value + &xi.apply(f);
        }
        let value = gb.normal_form(&value);
        if !value.is_zero() {
            return Ok(Incompressibility::Violated { witness, value });
        }
    }
    Ok(Incompressibility::ConsistentTo {
        max_degree,
        relations: relations.len(),
    })
}
