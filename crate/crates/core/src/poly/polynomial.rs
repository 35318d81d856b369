use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::cmp_weighted_grevlex;
use super::{Monomial, PolyRing};
use crate::error::{Error, Result};

pub type Coeff = BigRational;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in the ring's canonical order (weighted degree, then
/// reverse lexicographic), largest first, with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

/// Decomposition of a polynomial into weighted-homogeneous pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedComponents {
    pub components: BTreeMap<u64, Polynomial>,
    pub quasihomogeneous: bool,
}

pub fn rational(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.arity()), c)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.arity(), ring.arity());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), ring.arity());
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let w = ring.weights();
        terms.sort_by(|a, b| cmp_weighted_grevlex(&b.0, &a.0, w));
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Terms already sorted in canonical order with no zeros and no repeats.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn order(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_weighted_grevlex(a, b, self.ring.weights())
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.order(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            let c = if negate { -c } else { c.clone() };
            (m.clone(), c)
        }));
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                *acc.entry(m.mul(n)).or_insert_with(Coeff::zero) += c * d;
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| (m.clone(), d * c))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Multiplication by a single term keeps the canonical order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), d * c))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = self.ring.one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            m.lower(index)
                .map(|(e, lowered)| (lowered, c * rational(e as i64)))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn derivative_by(&self, var: &str) -> Result<Polynomial> {
        Ok(self.derivative(self.ring.index_of(var)?))
    }

    /// Weighted degree if every term has the same one; `None` for the zero
    /// polynomial and for mixed-degree polynomials.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        let mut degrees = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn weighted_components(&self) -> WeightedComponents {
        let w = self.ring.weights();
        let mut buckets: BTreeMap<u64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            buckets
                .entry(m.weighted_degree(w))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        let components: BTreeMap<u64, Polynomial> = buckets
            .into_iter()
            .map(|(d, t)| (d, Polynomial::from_sorted_terms(&self.ring, t)))
            .collect();
        let quasihomogeneous = components.len() <= 1;
        WeightedComponents {
            components,
            quasihomogeneous,
        }
    }

    pub fn max_weighted_degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.ring.arity());
        let mut sum = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            sum += v;
        }
        sum
    }

    pub fn value_at_origin(&self) -> Coeff {
        self.constant_term()
    }

    /// Maps into `target`, sending variable `i` to variable `mapping[i]`.
    pub fn embed(&self, target: &Arc<PolyRing>, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.ring.arity());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.arity()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[mapping[i]] += x;
            }
            (Monomial::from_exponents(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Substitutes a polynomial for every variable.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.ring.arity());
        let target = images
            .first()
            .map(|p| Arc::clone(p.ring()))
            .unwrap_or_else(|| Arc::clone(&self.ring));
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.try_mul(img)?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Leading term in canonical order.
    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics when the operands live in different rings; use the
            /// `try_*` variant to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomials from different rings")
            }
        }

        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&rational(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

pub fn format_rational(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    m.exponents()
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| {
            if e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m, self.ring.vars());
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, r.parse("x^2 - y^2").unwrap());
        assert_eq!(&p + &r.zero(), p);
        assert_eq!(&x.pow(2) * &y.pow(3), r.parse("x^2*y^3").unwrap());
    }

    #[test]
    fn derivatives() {
        let r = ring();
        let f = r.parse("x^3 + y^3 + z^3").unwrap();
        assert_eq!(f.derivative_by("z").unwrap(), r.parse("3*z^2").unwrap());
        assert!(r.parse("y^5").unwrap().derivative_by("x").unwrap().is_zero());
        assert_eq!(
            r.parse("x^2*y^3").unwrap().derivative_by("y").unwrap(),
            r.parse("3*x^2*y^2").unwrap()
        );
        assert!(matches!(f.derivative_by("w"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn weighted_components_of_cusp_and_q() {
        let r = PolyRing::new(&["x", "y"], &[3, 2]).unwrap();
        let c = r.parse("x^2 - y^3").unwrap().weighted_components();
        assert!(c.quasihomogeneous);
        assert_eq!(c.components.keys().copied().collect::<Vec<_>>(), vec![6]);

        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let q = r.parse("x^3 + x^2*y + y^4").unwrap();
        let c = q.weighted_components();
        assert!(!c.quasihomogeneous);
        assert_eq!(c.components.keys().copied().collect::<Vec<_>>(), vec![3, 4]);
        let sum = c
            .components
            .values()
            .fold(r.zero(), |acc, p| &acc + p);
        assert_eq!(sum, q);

        let z = r.zero().weighted_components();
        assert!(z.quasihomogeneous && z.components.is_empty());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring();
        let b = PolyRing::standard(&["u"]).unwrap();
        assert_eq!(a.one().try_add(&b.one()), Err(Error::RingMismatch));
        assert_eq!(a.one().try_mul(&b.one()), Err(Error::RingMismatch));
    }

    #[test]
    fn display_is_explicit() {
        let r = ring();
        let p = r.parse("2*x*y - 1/2*z^2 + 1").unwrap();
        assert_eq!(p.to_string(), "2*x*y - 1/2*z^2 + 1");
        assert_eq!(r.parse("-x").unwrap().to_string(), "-x");
        assert_eq!(r.zero().to_string(), "0");
    }
}
