//! Generating series for coinvariants of symmetric powers, and a direct
//! computation for the square.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::coinv::{family_fields, require_graded, CoinvariantTable, Family};
use crate::error::{Error, Result};
use crate::groebner::monomial_basis;
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Coeff, Monomial, Polynomial};
use crate::geom::Variety;

/// Power series in `s` (truncated after `s^n_max`) whose coefficients are
/// Laurent polynomials in `u` with non-negative integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedSeries {
    n_max: u32,
    coeffs: BTreeMap<(u32, i64), u128>,
}

impl BigradedSeries {
    pub fn one(n_max: u32) -> Self {
        BigradedSeries {
            n_max,
            coeffs: BTreeMap::from([((0, 0), 1)]),
        }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn coefficients(&self) -> &BTreeMap<(u32, i64), u128> {
        &self.coeffs
    }

    pub fn coefficient(&self, s: u32, u: i64) -> u128 {
        self.coeffs.get(&(s, u)).copied().unwrap_or(0)
    }

    /// Coefficient of `s^n`, as `u`-exponent → count.
    pub fn layer(&self, n: u32) -> BTreeMap<i64, u128> {
        self.coeffs
            .range((n, i64::MIN)..=(n, i64::MAX))
            .map(|(&(_, u), &c)| (u, c))
            .collect()
    }

    /// Coefficient of `s^n` at `u = 1`.
    pub fn at_u_one(&self, n: u32) -> Result<u128> {
        self.layer(n)
            .values()
            .try_fold(0u128, |acc, &c| acc.checked_add(c).ok_or(Error::Overflow))
    }

    /// Product, truncated at the smaller `n_max`.
    pub fn mul(&self, other: &BigradedSeries) -> Result<BigradedSeries> {
        let n_max = self.n_max.min(other.n_max);
        let mut coeffs: BTreeMap<(u32, i64), u128> = BTreeMap::new();
        for (&(s1, u1), &a) in &self.coeffs {
            for (&(s2, u2), &b) in &other.coeffs {
                if s1 + s2 > n_max {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = coeffs.entry((s1 + s2, u1 + u2)).or_insert(0);
                *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(BigradedSeries { n_max, coeffs })
    }
}

fn format_laurent(layer: &BTreeMap<i64, u128>) -> String {
    if layer.is_empty() {
        return "0".into();
    }
    layer
        .iter()
        .map(|(&e, &c)| match (e, c) {
            (0, c) => c.to_string(),
            (1, 1) => "u".into(),
            (1, c) => format!("{c}*u"),
            (e, 1) => format!("u^{e}"),
            (e, c) => format!("{c}*u^{e}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for BigradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in 0..=self.n_max {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "s^{n}: {}", format_laurent(&self.layer(n)))?;
        }
        Ok(())
    }
}

/// `C(c + k − 1, k)`, the coefficient of `X^k` in `(1 − X)^{−c}`.
fn multichoose(c: u128, k: u128) -> Result<u128> {
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul(c + i - 1).ok_or(Error::Overflow)? / i;
    }
    Ok(acc)
}

fn product_series(p: &BTreeMap<i64, i64>, n_max: u32, exponent: impl Fn(i64, u32) -> i64) -> Result<BigradedSeries> {
    if let Some((&e, &c)) = p.iter().find(|(_, &c)| c < 0) {
        return Err(Error::NegativeCoefficient(format!("{c}*u^{e}")));
    }
    let mut series = BigradedSeries::one(n_max);
    for r in 1..=n_max {
        for (&j, &c) in p.iter().filter(|(_, &c)| c > 0) {
            let weight = exponent(j, r);
            let mut factor = BigradedSeries {
                n_max,
                coeffs: BTreeMap::new(),
            };
            for k in 0..=n_max / r {
                factor
                    .coeffs
                    .insert((k * r, k as i64 * weight), multichoose(c as u128, k as u128)?);
            }
            series = series.mul(&factor)?;
        }
    }
    Ok(series)
}

/// `Π_{r ≥ 1} Π_j (1 − s^r u^{j − r d})^{−p_j}` through `s^n_max`: the
/// series of `Sym(⊕_{r≥1} t^r V)` with `V` of graded dimension `p` and `t`
/// of weight `−d`. `d = 0` gives the uncorrected grading.
pub fn sym_power_series(p: &BTreeMap<i64, i64>, d: i64, n_max: u32) -> Result<BigradedSeries> {
    product_series(p, n_max, |j, r| j - r as i64 * d)
}

/// The same algebra graded by the weights of functions on `X`: `t^r V`
/// sits in weights `j + (r − 1) d`, so the `s^n` layer is directly comparable
/// with coinvariant tables of `S^n X`. Equals [`sym_power_series`] of
/// `u^d p(1/u)` with `u ↦ 1/u`.
pub fn sym_power_series_natural(p: &BTreeMap<i64, i64>, d: i64, n_max: u32) -> Result<BigradedSeries> {
    product_series(p, n_max, |j, r| j + (r as i64 - 1) * d)
}

/// First weight where a `Sym²` table disagrees with the `s²` layer of
/// [`sym_power_series_natural`], as `(weight, table, series)`. Only
/// surfaces are covered by theory; for other inputs the comparison is
/// conjectural.
pub fn sym2_mismatch(table: &CoinvariantTable, p: &BTreeMap<i64, i64>, d: i64) -> Result<Option<(i64, u64, u128)>> {
    let series = sym_power_series_natural(p, d, 2)?;
    Ok((0..=table.max_degree).find_map(|w| {
        let predicted = series.coefficient(2, w);
        (table.dim(w) as u128 != predicted).then_some((w, table.dim(w), predicted))
    }))
}

/// Dimensions of the coinvariants of `Sym² O_X` under the diagonal action
/// `ξ(f ⊙ g) = ξ(f) ⊙ g + f ⊙ ξ(g)` of the Hamiltonian family, in weights
/// `0..=max_degree`. Errors with `SizeGuard` when more than `guard` pairs of
/// standard monomials are needed.
pub fn brute_sym2_coinvariants(x: &Variety, max_degree: i64, guard: usize) -> Result<CoinvariantTable> {
    require_graded(x)?;
    let gb = x.gb();
    let ring = x.ring();
    let w = ring.weights();
    let monomials: Vec<Monomial> = (0..=max_degree).flat_map(|d| monomial_basis(gb, d as u64, 0)).collect();
    let weight_of = |m: &Monomial| m.weighted_degree(w) as i64;
    let position: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut by_weight: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    let mut count = 0usize;
    for i in 0..monomials.len() {
        for j in i..monomials.len() {
            let wt = weight_of(&monomials[i]) + weight_of(&monomials[j]);
            if wt <= max_degree {
                count += 1;
                if count > guard {
                    return Err(Error::SizeGuard(format!(
                        "more than {guard} symmetric pairs below weight {max_degree}"
                    )));
                }
                by_weight.entry(wt).or_default().push((i, j));
            }
        }
    }
    let fields = family_fields(x, &Family::Hamiltonian, max_degree)?;
    // ξ applied to each needed standard monomial, as (index, coefficient) terms
    let mut images: HashMap<(usize, usize), Vec<(usize, Coeff)>> = HashMap::new();
    let mut image = |f: usize, m: usize| -> Vec<(usize, Coeff)> {
        images
            .entry((f, m))
            .or_insert_with(|| {
                let p = Polynomial::monomial(ring, monomials[m].clone(), num_traits::One::one());
                gb.normal_form(&fields[f].apply(&p))
                    .terms()
                    .iter()
                    .map(|(mono, c)| (position[mono], c.clone()))
                    .collect()
            })
            .clone()
    };
    let mut dims = Vec::new();
    for wt in 0..=max_degree {
        let pairs = by_weight.get(&wt).cloned().unwrap_or_default();
        let column: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(c, &p)| (p, c)).collect();
        let mut echelon = Echelon::new();
        for (f, xi) in fields.iter().enumerate() {
            let Some(s) = xi.weight() else { continue };
            for &(a, b) in by_weight.get(&(wt - s)).map(Vec::as_slice).unwrap_or(&[]) {
                let mut row: BTreeMap<usize, Coeff> = BTreeMap::new();
                for (m, other) in [(a, b), (b, a)] {
                    for (k, c) in image(f, m) {
                        let key = (k.min(other), k.max(other));
                        *row.entry(column[&key]).or_insert_with(Coeff::zero) += c;
                    }
                }
                let row: SparseRow = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                echelon.insert(row);
            }
        }
        dims.push((pairs.len() - echelon.rank()) as u64);
    }
    Ok(CoinvariantTable {
        family: "hamiltonian, diagonal on Sym^2".into(),
        generators: fields.len(),
        max_degree,
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Structure;
    use crate::poly::PolyRing;
    use crate::vfields::BracketMatrix;

    #[test]
    fn partitions() {
        let s = sym_power_series(&BTreeMap::from([(0, 1)]), 0, 5).unwrap();
        let counts: Vec<u128> = (0..=5).map(|n| s.at_u_one(n).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7]);
    }

    #[test]
    fn cusp_layers() {
        let p = BTreeMap::from([(0, 1), (2, 1)]);
        for d in [0, 1, 6] {
            let s = sym_power_series(&p, d, 2).unwrap();
            assert_eq!(s.layer(1), BTreeMap::from([(-d, 1), (2 - d, 1)]));
            assert_eq!(
                s.layer(2),
                BTreeMap::from([(-2 * d, 2), (2 - 2 * d, 2), (4 - 2 * d, 1)])
            );
        }
        let s = sym_power_series(&p, 6, 2).unwrap();
        assert_eq!(s.to_string(), "s^0: 1\ns^1: u^-6 + u^-4\ns^2: 2*u^-12 + 2*u^-10 + u^-8");
    }

    #[test]
    fn rejects_negative() {
        let p = BTreeMap::from([(0, 1), (1, -1)]);
        assert!(matches!(sym_power_series(&p, 0, 2), Err(Error::NegativeCoefficient(_))));
    }

    #[test]
    fn overflow_is_reported() {
        let p = BTreeMap::from([(0, i64::MAX)]);
        assert!(matches!(sym_power_series(&p, 0, 8), Err(Error::Overflow)));
    }

    #[test]
    fn sym2_of_symplectic_plane_vanishes() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let plane = Variety::new(&r, vec![], Structure::Bracket(BracketMatrix::symplectic(&r).unwrap())).unwrap();
        let t = brute_sym2_coinvariants(&plane, 4, 10_000).unwrap();
        assert_eq!(t.dims, vec![0; 5]);
        assert!(matches!(brute_sym2_coinvariants(&plane, 12, 50), Err(Error::SizeGuard(_))));
    }

    fn surface(vars: &[&str], weights: &[u32], f: &str) -> Variety {
        let r = PolyRing::new(vars, weights).unwrap();
        Variety::parse(&r, &[f], Structure::Jacobian).unwrap()
    }

    #[test]
    fn natural_grading_is_the_reflected_series() {
        let p = BTreeMap::from([(0, 1), (3, 2), (4, 1)]);
        let d = 5;
        let reflected: BTreeMap<i64, i64> = p.iter().map(|(&j, &c)| (d - j, c)).collect();
        let a = sym_power_series_natural(&p, d, 4).unwrap();
        let b = sym_power_series(&reflected, d, 4).unwrap();
        for n in 0..=4 {
            let flipped: BTreeMap<i64, u128> = b.layer(n).into_iter().map(|(e, c)| (-e, c)).collect();
            assert_eq!(a.layer(n), flipped);
        }
    }

    #[test]
    fn sym2_of_surfaces_matches_series() {
        let cases = [
            (surface(&["x", "y", "z"], &[1, 1, 1], "x^2 + y^2 + z^2"), 6, vec![1, 0, 1, 0, 0, 0, 0]),
            (surface(&["x", "y", "z"], &[1, 1, 1], "x^3 + y^3 + z^3"), 6, vec![1, 3, 9, 11, 12, 6, 2]),
            (surface(&["x", "y", "z"], &[1, 1, 2], "x^4 + y^4 + z^2"), 8, vec![1, 2, 6, 8, 12, 10, 9, 4, 2]),
        ];
        for (x, top, dims) in cases {
            let t = brute_sym2_coinvariants(&x, top, 100_000).unwrap();
            assert_eq!(t.dims, dims);
            let hp0 = crate::geom::hp0_series(&x).unwrap();
            let d = x.equations()[0].homogeneous_degree().unwrap() as i64;
            assert_eq!(sym2_mismatch(&t, hp0.numerator(), d).unwrap(), None);
        }
    }

    #[test]
    fn sym2_of_cusp_is_outside_the_surface_case() {
        let x = surface(&["x", "y"], &[3, 2], "x^2 - y^3");
        let t = brute_sym2_coinvariants(&x, 12, 100_000).unwrap();
        let p = BTreeMap::from([(0, 1), (2, 1)]);
        assert_eq!(sym2_mismatch(&t, &p, 6).unwrap(), Some((10, 1, 0)));
    }
}
