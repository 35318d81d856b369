use std::collections::BTreeMap;
use std::fmt;

use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Hilbert–Poincaré series `N(u) / ∏ (1 - u^w)` of a graded quotient.
///
/// The numerator is an integer Laurent polynomial. Factors of the
/// denominator that divide the numerator are cancelled on construction, so
/// the series is a polynomial exactly when the denominator is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoincareSeries {
    numerator: BTreeMap<i64, i64>,
    denominator: Vec<u32>,
}

type Laurent = BTreeMap<i64, i64>;

fn clean(mut p: Laurent) -> Laurent {
    p.retain(|_, c| *c != 0);
    p
}

fn mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    clean(out)
}

fn sub(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = a.clone();
    for (&k, &v) in b {
        *out.entry(k).or_insert(0) -= v;
    }
    clean(out)
}

/// `p / (1 - u^w)` if exact.
fn divide_by_factor(p: &Laurent, w: u32) -> Option<Laurent> {
    let (Some((&lo, _)), Some((&hi, _))) = (p.first_key_value(), p.last_key_value()) else {
        return Some(Laurent::new());
    };
    let w = w as i64;
    if hi - lo < w {
        return None;
    }
    // q_k = p_k + q_{k-w}
    let mut q = Laurent::new();
    for k in lo..=hi - w {
        let v = p.get(&k).copied().unwrap_or(0) + q.get(&(k - w)).copied().unwrap_or(0);
        if v != 0 {
            q.insert(k, v);
        }
    }
    for k in hi - w + 1..=hi {
        let v = p.get(&k).copied().unwrap_or(0) + q.get(&(k - w)).copied().unwrap_or(0);
        if v != 0 {
            return None;
        }
    }
    Some(q)
}

impl PoincareSeries {
    /// Builds `numerator / ∏(1 - u^w)` and cancels common factors.
    pub fn new(numerator: BTreeMap<i64, i64>, denominator: Vec<u32>) -> Result<Self> {
        if denominator.contains(&0) {
            return Err(Error::ZeroWeight("denominator factor (1 - u^0)".into()));
        }
        let mut numerator = clean(numerator);
        let mut remaining = Vec::new();
        let mut denominator = denominator;
        denominator.sort_unstable();
        for w in denominator {
            match divide_by_factor(&numerator, w) {
                // the zero series needs no denominator
                _ if numerator.is_empty() => {}
                Some(q) => numerator = q,
                None => remaining.push(w),
            }
        }
        Ok(PoincareSeries {
            numerator,
            denominator: remaining,
        })
    }

    pub fn polynomial(coefficients: BTreeMap<i64, i64>) -> Self {
        PoincareSeries {
            numerator: clean(coefficients),
            denominator: Vec::new(),
        }
    }

    pub fn numerator(&self) -> &BTreeMap<i64, i64> {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn is_finite(&self) -> bool {
        self.denominator.is_empty()
    }

    /// The polynomial itself, when finite.
    pub fn as_polynomial(&self) -> Result<&BTreeMap<i64, i64>> {
        if self.is_finite() {
            Ok(&self.numerator)
        } else {
            Err(Error::InfiniteSeries)
        }
    }

    /// Value at `u = 1` (the total dimension), when finite.
    pub fn at_one(&self) -> Option<i64> {
        self.is_finite().then(|| self.numerator.values().sum())
    }

    /// Coefficient of `u^d` in the power-series expansion.
    pub fn coefficient(&self, d: i64) -> i64 {
        let lo = self.numerator.keys().next().copied().unwrap_or(0);
        if d < lo {
            return 0;
        }
        let mut series: Vec<i64> = (lo..=d)
            .map(|k| self.numerator.get(&k).copied().unwrap_or(0))
            .collect();
        for &w in &self.denominator {
            let w = w as usize;
            // multiply by 1 / (1 - u^w)
            for k in w..series.len() {
                series[k] += series[k - w];
            }
        }
        series[(d - lo) as usize]
    }

    /// Product of two series (used for multiplicativity checks).
    pub fn product(&self, other: &PoincareSeries) -> PoincareSeries {
        let mut den = self.denominator.clone();
        den.extend_from_slice(&other.denominator);
        PoincareSeries::new(mul(&self.numerator, &other.numerator), den)
            .expect("weights already validated")
    }
}

fn write_laurent(f: &mut fmt::Formatter<'_>, p: &Laurent) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "0");
    }
    for (i, (&k, &c)) in p.iter().enumerate() {
        let mag = c.unsigned_abs();
        if i == 0 {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if c < 0 { " - " } else { " + " })?;
        }
        match (k, mag) {
            (0, m) => write!(f, "{m}")?,
            (1, 1) => write!(f, "u")?,
            (1, m) => write!(f, "{m}*u")?,
            (k, 1) => write!(f, "u^{k}")?,
            (k, m) => write!(f, "{m}*u^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            return write_laurent(f, &self.numerator);
        }
        let multi = self.numerator.len() > 1;
        if multi {
            write!(f, "(")?;
        }
        write_laurent(f, &self.numerator)?;
        if multi {
            write!(f, ")")?;
        }
        write!(f, " / ")?;
        let factors: Vec<String> = self
            .denominator
            .iter()
            .map(|&w| if w == 1 { "(1 - u)".to_string() } else { format!("(1 - u^{w})") })
            .collect();
        write!(f, "{}", factors.join("*"))
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let all = gens.clone();
    gens.retain(|m| !all.iter().any(|o| o != m && o.divides(m)));
    gens
}

/// Numerator of the Hilbert series of `k[x]/(gens)` over `∏(1 - u^w_i)`.
fn monomial_numerator(gens: Vec<Monomial>, weights: &[u32]) -> Laurent {
    let gens = minimalize(gens);
    let Some((last, rest)) = gens.split_last() else {
        return Laurent::from([(0, 1)]);
    };
    let deg = last.weighted_degree(weights) as i64;
    let rest = rest.to_vec();
    if rest.iter().all(|r| r.is_coprime(last)) {
        let factor = sub(&Laurent::from([(0, 1)]), &Laurent::from([(deg, 1)]));
        return mul(&monomial_numerator(rest, weights), &factor);
    }
    // H(I + (m)) = H(I) - u^deg H(I : m)
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|r| r.div(&r.gcd(last)).expect("gcd divides"))
        .collect();
    let shifted: Laurent = monomial_numerator(colon, weights)
        .into_iter()
        .map(|(k, c)| (k + deg, c))
        .collect();
    sub(&monomial_numerator(rest, weights), &shifted)
}

/// Poincaré series of `k[x]/I` for a weighted-homogeneous ideal.
pub fn poincare_series(gb: &GroebnerBasis) -> Result<PoincareSeries> {
    let ring = gb.ring();
    ring.require_positive_weights()?;
    for g in gb.elements() {
        if !g.is_homogeneous() {
            return Err(Error::NonHomogeneous(g.to_string()));
        }
    }
    let numerator = monomial_numerator(gb.leading_monomials(), ring.weights());
    PoincareSeries::new(numerator, ring.weights().to_vec())
}
