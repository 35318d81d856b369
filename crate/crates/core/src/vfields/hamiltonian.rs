use std::collections::HashSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::geom::{Structure, Variety};
use crate::groebner::{combinations, monomial_basis};
use crate::poly::{Coeff, Polynomial};

use super::{BracketMatrix, DifferentialForm, JacobiStructure, VectorField};

/// `ξ_f = π(df)`: `ξ_f(x_i) = Σ_j ∂_j f π_{ji}`.
pub fn hamiltonian_from_bracket(f: &Polynomial, pi: &BracketMatrix) -> VectorField {
    pi.hamiltonian(f)
}

/// `ξ_f = π(df) + f u`.
pub fn jacobi_hamiltonian(f: &Polynomial, j: &JacobiStructure) -> VectorField {
    j.hamiltonian(f)
}

fn require_jacobian(x: &Variety) -> Result<()> {
    if !matches!(x.structure(), Structure::Jacobian) {
        return Err(Error::WrongStructure(format!(
            "expected a jacobian structure, found {}",
            x.structure().kind()
        )));
    }
    if x.expected_dimension() == 0 {
        return Err(Error::WrongCodimension("variety is zero-dimensional".into()));
    }
    Ok(())
}

/// The field `h ↦ Ξ⌟(ω ∧ dh ∧ df_1 ∧ ... ∧ df_k)` for an `(m−1)`-form `ω`.
fn contract_field(x: &Variety, omega: &DifferentialForm, tails: &[DifferentialForm]) -> VectorField {
    let coeffs = tails
        .iter()
        .map(|tail| omega.wedge(tail).top_coefficient())
        .collect();
    VectorField::new(x.ring(), coeffs).expect("arity matches")
}

fn tails(x: &Variety) -> Vec<DifferentialForm> {
    let f = x.equations_form();
    (0..x.ring().arity())
        .map(|i| DifferentialForm::coordinate(x.ring(), i).wedge(&f))
        .collect()
}

/// `Ξ_X : h ↦ Ξ⌟(dh ∧ df_1 ∧ ... ∧ df_k)` on a curve (`n − k = 1`).
pub fn curve_field(x: &Variety) -> Result<VectorField> {
    require_jacobian(x)?;
    if x.expected_dimension() != 1 {
        return Err(Error::WrongCodimension(format!(
            "expected a curve, dimension is {}",
            x.expected_dimension()
        )));
    }
    let one = DifferentialForm::function(&x.ring().one());
    Ok(contract_field(x, &one, &tails(x)))
}

/// Hamiltonian fields of the top polyvector on a complete intersection of
/// dimension `m`: `ξ_α(h) = Ξ⌟(dα ∧ dh ∧ df_1 ∧ ... ∧ df_k)` for monomial
/// `(m−2)`-forms `α = g dx_J` with `deg g + Σ_{j∈J} m_j ≤ max_form_degree`.
///
/// `g` runs over standard monomials of `I_X`; other choices change `ξ_α`
/// only by fields with coefficients in `I_X`. Zero and repeated fields are
/// dropped. For curves (`m = 1`) the family is the single field `Ξ_X`.
/// The field built from `α` has weight `wt(α) + Σ deg f_i − Σ m_j`.
pub fn hamiltonian_family_top(x: &Variety, max_form_degree: i64) -> Result<Vec<VectorField>> {
    require_jacobian(x)?;
    let m = x.expected_dimension();
    if m == 1 {
        let xi = curve_field(x)?;
        return Ok(if xi.is_zero() { Vec::new() } else { vec![xi] });
    }
    if max_form_degree < 0 {
        return Ok(Vec::new());
    }
    let ring = x.ring();
    let w = ring.weights();
    let gb = x.gb();
    let tails = tails(x);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for j in combinations(ring.arity(), m - 2) {
        let shift: i64 = j.iter().map(|&i| w[i] as i64).sum();
        for degree in 0..=max_form_degree {
            let gdeg = degree - shift;
            if gdeg < 0 {
                continue;
            }
            for g in monomial_basis(gb, gdeg as u64, max_form_degree as u64) {
                let g = Polynomial::monomial(ring, g, Coeff::one());
                let alpha = DifferentialForm::monomial(g, j.clone())?;
                let xi = contract_field(x, &alpha.d(), &tails);
                if !xi.is_zero() && seen.insert(xi.clone()) {
                    out.push(xi);
                }
            }
        }
    }
    Ok(out)
}
