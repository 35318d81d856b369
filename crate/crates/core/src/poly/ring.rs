use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;

use super::{parse, Monomial, Polynomial};
use crate::error::{Error, Result};

/// Polynomial ring over the rationals with named, weighted variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], weights: &[u32]) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            weights: weights.to_vec(),
        }))
    }

    /// All weights 1.
    pub fn standard<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Self>> {
        Self::new(vars, &vec![1; vars.len()])
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.weights[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn has_zero_weight(&self) -> bool {
        self.weights.contains(&0)
    }

    /// Errors with the first weight-0 variable, if any.
    pub fn require_positive_weights(&self) -> Result<()> {
        match self.weights.iter().position(|&w| w == 0) {
            Some(i) => Err(Error::ZeroWeight(self.vars[i].clone())),
            None => Ok(()),
        }
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        Polynomial::constant(self, BigRational::from_integer(1.into()))
    }

    pub fn variable(self: &Arc<Self>, index: usize) -> Polynomial {
        Polynomial::monomial(
            self,
            Monomial::var(self.arity(), index, 1),
            BigRational::from_integer(1.into()),
        )
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Polynomial> {
        Ok(self.variable(self.index_of(name)?))
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        parse::parse_poly(text, self)
    }

    /// Ring with the variables of `self` followed by those of `other`.
    /// Clashing names from `other` get a `_2` suffix.
    pub fn product(&self, other: &PolyRing) -> Result<Arc<PolyRing>> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            let mut name = v.clone();
            while vars.contains(&name) {
                name.push_str("_2");
            }
            vars.push(name);
        }
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        PolyRing::new(&vars, &weights)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
