//! Rank stratification, the leaves criterion and degenerate loci.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{combinations, krull_dimension, minors, GroebnerBasis};
use crate::linalg::Echelon;
use crate::poly::{Monomial, Polynomial};
use crate::vfields::{BracketMatrix, DifferentialForm, VectorField};

use super::singularity::jacobian_matrix;
use super::{Structure, Variety};

/// Jacobian Poisson bracket on a complete intersection of dimension 2:
/// `{x_i, x_j} = Ξ⌟(dx_i ∧ dx_j ∧ df_1 ∧ ... ∧ df_k)`.
pub fn jacobian_bracket_matrix(x: &Variety) -> Result<BracketMatrix> {
    let n = x.ring().arity();
    if n != x.codimension() + 2 {
        return Err(Error::WrongCodimension(format!(
            "a Jacobian bracket needs n = k + 2, got n = {n}, k = {}",
            x.codimension()
        )));
    }
    let f = x.equations_form();
    let dx: Vec<DifferentialForm> = (0..n).map(|i| DifferentialForm::coordinate(x.ring(), i)).collect();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| dx[i].wedge(&dx[j]).wedge(&f).top_coefficient())
                .collect()
        })
        .collect();
    BracketMatrix::new(x.ring(), entries)
}

/// `Ξ⌟(dx_L ∧ dh ∧ df_1 ∧ ... ∧ df_k)` for every `(m−1)`-subset `L`: at each
/// point these span the values of all top-polyvector Hamiltonian fields.
fn top_generators(x: &Variety) -> Result<Vec<VectorField>> {
    let n = x.ring().arity();
    let m = x.expected_dimension();
    if m == 0 {
        return Err(Error::WrongCodimension("variety is zero-dimensional".into()));
    }
    let f = x.equations_form();
    let tails: Vec<DifferentialForm> = (0..n)
        .map(|i| DifferentialForm::coordinate(x.ring(), i).wedge(&f))
        .collect();
    let mut out = Vec::new();
    for l in combinations(n, m - 1) {
        let dxl = DifferentialForm::monomial(x.ring().one(), l)?;
        let coeffs = tails.iter().map(|t| dxl.wedge(t).top_coefficient()).collect();
        out.push(VectorField::new(x.ring(), coeffs)?);
    }
    Ok(out)
}

/// Closes `fields` under brackets: depth `b` adds every iterated bracket of
/// at most `b + 1` generators. Coefficients are reduced mod `I_X` and only a
/// linearly independent subset is kept.
pub fn lie_closure(fields: &[VectorField], gb: &GroebnerBasis, depth: usize) -> Vec<VectorField> {
    let mut columns: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut echelon = Echelon::new();
    let mut basis: Vec<VectorField> = Vec::new();
    let mut keep = |v: VectorField, basis: &mut Vec<VectorField>| -> bool {
        let v = v.reduce(gb);
        let mut row = BTreeMap::new();
        for (i, c) in v.coefficients().iter().enumerate() {
            for (m, k) in c.terms() {
                let next = columns.len();
                let col = *columns.entry((i, m.clone())).or_insert(next);
                row.insert(col, k.clone());
            }
        }
        let row: Vec<_> = row.into_iter().filter(|(_, k)| !k.is_zero()).collect();
        if echelon.insert(row) {
            basis.push(v);
            true
        } else {
            false
        }
    };
    let mut frontier = Vec::new();
    for f in fields {
        if keep(f.clone(), &mut basis) {
            frontier.push(basis.last().unwrap().clone());
        }
    }
    let generators = frontier.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for a in &generators {
            for b in &frontier {
                if keep(a.lie_bracket(b), &mut basis) {
                    next.push(basis.last().unwrap().clone());
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    basis
}

/// Rows whose span at each point is the evaluation of the structure's Lie algebra.
pub fn structure_matrix(x: &Variety, bracket_depth: usize) -> Result<Vec<Vec<Polynomial>>> {
    let rows = match x.structure() {
        Structure::None => {
            return Err(Error::WrongStructure("variety has no structure".into()));
        }
        Structure::Bracket(pi) => pi.entries().to_vec(),
        Structure::Jacobi(j) => {
            let mut rows = j.pi.entries().to_vec();
            rows.push(j.u.coefficients().to_vec());
            rows
        }
        Structure::Jacobian => top_generators(x)?
            .into_iter()
            .map(|v| v.coefficients().to_vec())
            .collect(),
        Structure::VectorFields(gens) => lie_closure(gens, x.gb(), bracket_depth)
            .into_iter()
            .map(|v| v.coefficients().to_vec())
            .collect(),
    };
    Ok(rows)
}

/// The closed locus `X_{≤i}` where the Lie algebra has rank at most `i`.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub rank: usize,
    pub ideal: GroebnerBasis,
    pub dimension: i64,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={} ideal {} dim {}", self.rank, self.ideal, self.dimension)
    }
}

/// `X_{≤i} = V(I_X + (i+1)-minors)` for `i = 0, 1, ...` until the locus is
/// all of `X`. For vector-field structures the generators are first closed
/// under brackets to `bracket_depth`, so the strata are relative to that
/// closed generating set.
pub fn rank_strata(x: &Variety, bracket_depth: usize) -> Result<Vec<Stratum>> {
    let rows = structure_matrix(x, bracket_depth)?;
    let cols = x.ring().arity();
    let full = x.gb();
    let mut out = Vec::new();
    for i in 0..=cols {
        let size = i + 1;
        let ideal = if rows.is_empty() || size > rows.len().min(cols) {
            full.clone()
        } else {
            let extra: Vec<Polynomial> = minors(&rows, size)?.into_iter().filter(|m| !m.is_zero()).collect();
            full.extend(&extra)?
        };
        let dimension = krull_dimension(&ideal);
        let done = ideal.same_ideal(full);
        out.push(Stratum {
            rank: i,
            ideal,
            dimension,
        });
        if done {
            break;
        }
    }
    Ok(out)
}

/// Outcome of the leaves criterion `dim X_{≤i} ≤ i` for all `i`.
#[derive(Debug, Clone)]
pub struct LeavesVerdict {
    pub strata: Vec<Stratum>,
    /// Smallest stratum with `dim X_{≤i} > i`.
    pub witness: Option<Stratum>,
}

impl LeavesVerdict {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for LeavesVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "PASS: dim X_<=i <= i for all {} strata", self.strata.len()),
            Some(s) => write!(
                f,
                "FAIL: stratum i={} ideal {} has dimension {} > {}",
                s.rank, s.ideal, s.dimension, s.rank
            ),
        }
    }
}

pub fn leaves_check(x: &Variety, bracket_depth: usize) -> Result<LeavesVerdict> {
    let strata = rank_strata(x, bracket_depth)?;
    let witness = strata.iter().find(|s| s.dimension > s.rank as i64).cloned();
    Ok(LeavesVerdict { strata, witness })
}

/// `I_X + (k×k minors of the Jacobian)`: singular points and zeros of `Ξ_X`.
#[derive(Debug, Clone)]
pub struct DegenerateLocus {
    pub ideal: GroebnerBasis,
    pub dimension: i64,
}

impl DegenerateLocus {
    pub fn is_finite(&self) -> bool {
        self.dimension <= 0
    }
}

pub fn degenerate_locus(x: &Variety) -> Result<DegenerateLocus> {
    let k = x.codimension();
    let ideal = if k == 0 {
        GroebnerBasis::new(x.ring(), &[x.ring().one()])?
    } else {
        let extra: Vec<Polynomial> = minors(&jacobian_matrix(x, k), k)?
            .into_iter()
            .filter(|m| !m.is_zero())
            .collect();
        x.gb().extend(&extra)?
    };
    let dimension = krull_dimension(&ideal);
    Ok(DegenerateLocus { ideal, dimension })
}
