use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{PolyRing, Polynomial};
use crate::vfields::{BracketMatrix, DifferentialForm, JacobiStructure, VectorField};

/// The Lie algebra of vector fields a variety is studied with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    None,
    /// Hamiltonian fields of the standard top polyvector restricted to a
    /// complete intersection.
    Jacobian,
    Bracket(BracketMatrix),
    Jacobi(JacobiStructure),
    VectorFields(Vec<VectorField>),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::None => "none",
            Structure::Jacobian => "jacobian",
            Structure::Bracket(_) => "bracket",
            Structure::Jacobi(_) => "jacobi",
            Structure::VectorFields(_) => "vector-fields",
        }
    }
}

/// Affine variety `V(f_1, ..., f_k)` studied at the origin.
#[derive(Debug, Clone)]
pub struct Variety {
    ring: Arc<PolyRing>,
    equations: Vec<Polynomial>,
    structure: Structure,
    gb: OnceLock<GroebnerBasis>,
}

impl Variety {
    pub fn new(ring: &Arc<PolyRing>, equations: Vec<Polynomial>, structure: Structure) -> Result<Self> {
        if equations.iter().any(|f| **f.ring() != **ring) {
            return Err(Error::RingMismatch);
        }
        if equations.len() > ring.arity() {
            return Err(Error::WrongCodimension(format!(
                "{} equations in {} variables",
                equations.len(),
                ring.arity()
            )));
        }
        let structure_ring = match &structure {
            Structure::Bracket(pi) => Some(pi.ring()),
            Structure::Jacobi(j) => Some(j.ring()),
            Structure::VectorFields(v) => v.iter().map(|f| f.ring()).find(|r| ***r != **ring),
            _ => None,
        };
        if let Some(r) = structure_ring {
            if **r != **ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Variety {
            ring: Arc::clone(ring),
            equations,
            structure,
            gb: OnceLock::new(),
        })
    }

    /// Parses the equations in `ring`.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, equations: &[S], structure: Structure) -> Result<Self> {
        let eqs = equations
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, eqs, structure)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn with_structure(&self, structure: Structure) -> Result<Variety> {
        Variety::new(&self.ring, self.equations.clone(), structure)
    }

    /// Number of equations `k`.
    pub fn codimension(&self) -> usize {
        self.equations.len()
    }

    /// `n − k`, the dimension when the equations form a complete intersection.
    pub fn expected_dimension(&self) -> usize {
        self.ring.arity() - self.equations.len()
    }

    /// Reduced Gröbner basis of `I_X` (weighted grevlex), computed once.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            GroebnerBasis::new(&self.ring, &self.equations).expect("equations share the ring")
        })
    }

    /// Every equation is weighted-homogeneous with positive weights.
    pub fn is_quasihomogeneous(&self) -> bool {
        !self.ring.has_zero_weight() && self.equations.iter().all(|f| f.is_homogeneous())
    }

    /// Errors naming the first equation that is not weighted-homogeneous.
    pub fn require_homogeneous(&self) -> Result<()> {
        match self.equations.iter().find(|f| !f.is_homogeneous()) {
            Some(f) => Err(Error::NonHomogeneous(f.to_string())),
            None => Ok(()),
        }
    }

    /// `df_1 ∧ ... ∧ df_k` (the constant 0-form 1 when `k = 0`).
    pub fn equations_form(&self) -> DifferentialForm {
        let mut acc = DifferentialForm::function(&self.ring.one());
        for f in &self.equations {
            acc = acc.wedge(&DifferentialForm::differential(f));
        }
        acc
    }

    /// `Σ deg f_i − Σ m_j`: the weight shift of the top-polyvector fields.
    pub fn top_shift(&self) -> Option<i64> {
        let mut s: i64 = 0;
        for f in &self.equations {
            s += f.homogeneous_degree()? as i64;
        }
        Some(s - self.ring.weights().iter().map(|&w| w as i64).sum::<i64>())
    }
}
