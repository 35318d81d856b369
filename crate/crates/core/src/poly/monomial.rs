use std::cmp::Ordering;

/// Exponent vector of a monomial; its length is the arity of the ring it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `x_index^exp` in a ring of the given arity.
    pub fn var(arity: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; arity];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    /// Total exponent carried by the weight-0 variables.
    pub fn zero_weight_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .filter(|(_, &w)| w == 0)
            .map(|(&e, _)| e as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Partial derivative exponent bookkeeping: returns the old exponent of
    /// `index` and the monomial with that exponent lowered by one.
    pub fn lower(&self, index: usize) -> Option<(u32, Monomial)> {
        let e = self.0[index];
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[index] -= 1;
        Some((e, Monomial(out)))
    }

    /// Variables present in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Weighted degree, then zero-weight degree, then reverse lexicographic.
///
/// `Greater` means `a` comes first in the canonical (descending) term order.
pub fn cmp_weighted_grevlex(a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
    a.weighted_degree(weights)
        .cmp(&b.weighted_degree(weights))
        .then_with(|| a.zero_weight_degree(weights).cmp(&b.zero_weight_degree(weights)))
        .then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0).rev() {
                if x != y {
                    // smaller exponent in the last differing variable wins
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
}

pub fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.0.cmp(&b.0)
}

/// All monomials of the given arity whose weighted degree is exactly `degree`.
///
/// Weight-0 variables are bounded by `zero_weight_cap` in total exponent.
pub fn monomials_of_weight(weights: &[u32], degree: u64, zero_weight_cap: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; weights.len()];
    fill(weights, 0, degree, zero_weight_cap, &mut current, &mut out);
    out
}

fn fill(
    weights: &[u32],
    index: usize,
    remaining: u64,
    zero_left: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if index == weights.len() {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    let w = weights[index] as u64;
    let max = if w == 0 { zero_left } else { remaining / w };
    for e in 0..=max {
        current[index] = e as u32;
        let (rem, zl) = if w == 0 {
            (remaining, zero_left - e)
        } else {
            (remaining - e * w, zero_left)
        };
        fill(weights, index + 1, rem, zl, current, out);
    }
    current[index] = 0;
}

/// All monomials of standard total degree exactly `degree`.
pub fn monomials_of_total_degree(arity: usize, degree: u64) -> Vec<Monomial> {
    monomials_of_weight(&vec![1; arity], degree, 0)
}
