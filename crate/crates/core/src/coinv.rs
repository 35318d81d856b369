//! Degree-truncated coinvariants `O_X / v(O_X)` by exact linear algebra,
//! checked against the closed-form Poincaré polynomial.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::geom::{hp0_series, Structure, Variety};
use crate::groebner::{monomial_basis, GroebnerBasis, PoincareSeries};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Coeff, Monomial, Polynomial};
use crate::vfields::{curve_field, derivations_up_to_degree, hamiltonian_family_top, BracketMatrix, VectorField};

/// Which Lie algebra of vector fields acts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Hamiltonian fields of the variety's own structure.
    Hamiltonian,
    /// These fields (must be tangent and homogeneous).
    Explicit(Vec<VectorField>),
    /// All tangent fields, via [`derivations_up_to_degree`].
    Derivations,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hamiltonian => f.write_str("hamiltonian"),
            Family::Explicit(v) => write!(f, "explicit ({} fields)", v.len()),
            Family::Derivations => f.write_str("derivations"),
        }
    }
}

/// `deg π_ij − m_i − m_j`, if all entries agree.
fn bracket_shift(pi: &BracketMatrix) -> Result<Option<i64>> {
    let w = pi.ring().weights();
    let mut shift = None;
    for (i, row) in pi.entries().iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let d = e
                .homogeneous_degree()
                .ok_or_else(|| Error::NonHomogeneous(e.to_string()))? as i64
                - w[i] as i64
                - w[j] as i64;
            match shift {
                None => shift = Some(d),
                Some(s) if s != d => {
                    return Err(Error::NonHomogeneous(format!("bracket entry ({i},{j}) = {e}")));
                }
                _ => {}
            }
        }
    }
    Ok(shift)
}

/// Standard monomials of `I_X` of weighted degree `0..=top`.
fn functions_up_to(gb: &GroebnerBasis, top: i64) -> Vec<Polynomial> {
    (0..=top)
        .flat_map(|d| monomial_basis(gb, d as u64, 0))
        .map(|m| Polynomial::monomial(gb.ring(), m, Coeff::one()))
        .collect()
}

fn push_nonzero(out: &mut Vec<VectorField>, xi: VectorField) {
    if !xi.is_zero() && !out.contains(&xi) {
        out.push(xi);
    }
}

/// Generators of the family of every weight `≤ max_degree`: together with
/// all standard monomials they span every image landing in weights `≤ max_degree`.
pub fn family_fields(x: &Variety, family: &Family, max_degree: i64) -> Result<Vec<VectorField>> {
    let gb = x.gb();
    let fields = match family {
        Family::Explicit(v) => v.clone(),
        Family::Derivations => derivations_up_to_degree(gb, max_degree)?,
        Family::Hamiltonian => match x.structure() {
            Structure::None => {
                return Err(Error::WrongStructure("variety has no structure".into()));
            }
            Structure::Jacobian => {
                if x.expected_dimension() == 1 {
                    vec![curve_field(x)?].into_iter().filter(|v| !v.is_zero()).collect()
                } else {
                    let shift = x
                        .top_shift()
                        .ok_or_else(|| Error::NonHomogeneous("equations are not quasihomogeneous".into()))?;
                    hamiltonian_family_top(x, max_degree - shift)?
                }
            }
            Structure::Bracket(pi) => {
                let mut out = Vec::new();
                if let Some(shift) = bracket_shift(pi)? {
                    for f in functions_up_to(gb, max_degree - shift) {
                        push_nonzero(&mut out, pi.hamiltonian(&f));
                    }
                }
                out
            }
            Structure::Jacobi(j) => {
                let mut shift = bracket_shift(&j.pi)?;
                if !j.u.is_zero() {
                    let s = j
                        .u
                        .weight()
                        .ok_or_else(|| Error::NonHomogeneous(format!("u = {}", j.u)))?;
                    if shift.is_some_and(|t| t != s) {
                        return Err(Error::NonHomogeneous("u and the bracket have different weights".into()));
                    }
                    shift = Some(s);
                }
                let mut out = Vec::new();
                if let Some(shift) = shift {
                    for f in functions_up_to(gb, max_degree - shift) {
                        push_nonzero(&mut out, j.hamiltonian(&f));
                    }
                }
                out
            }
            Structure::VectorFields(v) => v.clone(),
        },
    };
    for (index, xi) in fields.iter().enumerate() {
        if **xi.ring() != **x.ring() {
            return Err(Error::RingMismatch);
        }
        if !xi.is_homogeneous() {
            return Err(Error::NonHomogeneous(format!("field {index}: {xi}")));
        }
        if !xi.tangency_check(gb) {
            return Err(Error::NotTangent { index });
        }
    }
    Ok(fields)
}

/// Per-weight dimensions of `O_X / v(O_X)` in weights `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinvariantTable {
    pub family: String,
    pub generators: usize,
    pub max_degree: i64,
    pub dims: Vec<u64>,
}

impl CoinvariantTable {
    pub fn dim(&self, weight: i64) -> u64 {
        usize::try_from(weight)
            .ok()
            .and_then(|w| self.dims.get(w).copied())
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// The table as a polynomial in `u`.
    pub fn series(&self) -> PoincareSeries {
        PoincareSeries::polynomial(
            self.dims
                .iter()
                .enumerate()
                .map(|(w, &d)| (w as i64, d as i64))
                .collect(),
        )
    }

    /// Cauchy product, truncated at the smaller degree.
    pub fn convolve(&self, other: &CoinvariantTable) -> Vec<u64> {
        let top = self.max_degree.min(other.max_degree).max(-1);
        (0..=top)
            .map(|w| (0..=w).map(|a| self.dim(a) * other.dim(w - a)).sum())
            .collect()
    }
}

impl fmt::Display for CoinvariantTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family: {} ({} generators), D = {}", self.family, self.generators, self.max_degree)?;
        for (w, d) in self.dims.iter().enumerate() {
            writeln!(f, "w={w}: {d}")?;
        }
        write!(f, "total = {}", self.total())
    }
}

pub(crate) fn require_graded(x: &Variety) -> Result<()> {
    x.ring().require_positive_weights()?;
    x.require_homogeneous()
}

/// Rank of the span of `images` in the space with basis `basis`.
pub(crate) fn span_rank<'a, I>(basis: &HashMap<Monomial, usize>, images: I) -> usize
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut echelon = Echelon::new();
    for p in images {
        let mut row: SparseRow = p
            .terms()
            .iter()
            .map(|(m, c)| (*basis.get(m).expect("image is a combination of standard monomials"), c.clone()))
            .collect();
        row.sort_by_key(|(c, _)| *c);
        echelon.insert(row);
    }
    echelon.rank()
}

/// For each weight `w ≤ max_degree`: the number of standard monomials of
/// weight `w` minus the rank of `{NF(ξ(b))}` over generators `ξ` of weight
/// `s` and standard monomials `b` of weight `w − s`.
pub fn coinvariants_truncated(x: &Variety, family: &Family, max_degree: i64) -> Result<CoinvariantTable> {
    require_graded(x)?;
    let fields = family_fields(x, family, max_degree)?;
    let gb = x.gb();
    let mut cache: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
    let mut basis_of = |d: i64| -> Vec<Monomial> {
        cache
            .entry(d)
            .or_insert_with(|| monomial_basis(gb, d as u64, 0))
            .clone()
    };
    let mut dims = Vec::new();
    for w in 0..=max_degree {
        let target = basis_of(w);
        let index: HashMap<Monomial, usize> = target.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut images = Vec::new();
        for xi in &fields {
            let Some(s) = xi.weight() else { continue };
            if w - s < 0 {
                continue;
            }
            for b in basis_of(w - s) {
                let b = Polynomial::monomial(x.ring(), b, Coeff::one());
                let img = gb.normal_form(&xi.apply(&b));
                if !img.is_zero() {
                    images.push(img);
                }
            }
        }
        dims.push((target.len() - span_rank(&index, &images)) as u64);
    }
    Ok(CoinvariantTable {
        family: family.to_string(),
        generators: fields.len(),
        max_degree,
        dims,
    })
}

/// Oracle table against the closed form, through the socle degree plus `margin`.
#[derive(Debug, Clone)]
pub struct Hp0Check {
    pub series: PoincareSeries,
    pub table: CoinvariantTable,
    /// First `(weight, oracle, closed form)` disagreement.
    pub mismatch: Option<(i64, u64, i64)>,
}

impl Hp0Check {
    pub fn is_match(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for Hp0Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mismatch {
            None => write!(
                f,
                "match: {} through degree {}",
                self.series, self.table.max_degree
            ),
            Some((w, oracle, closed)) => write!(
                f,
                "mismatch at weight {w}: oracle {oracle}, closed form {closed}"
            ),
        }
    }
}

pub fn verify_hp0(x: &Variety, margin: i64) -> Result<Hp0Check> {
    let series = hp0_series(x)?;
    let socle = series.numerator().keys().next_back().copied().unwrap_or(0);
    let table = coinvariants_truncated(x, &Family::Hamiltonian, socle + margin.max(0))?;
    let mismatch = (0..=table.max_degree).find_map(|w| {
        let closed = series.coefficient(w);
        let oracle = table.dim(w);
        (oracle as i64 != closed).then_some((w, oracle, closed))
    });
    Ok(Hp0Check {
        series,
        table,
        mismatch,
    })
}

/// `X × Y` with the fields `ξ ⊗ 1` and `1 ⊗ η`, for `ξ`, `η` the
/// Hamiltonian generators of weight `≤ max_degree` on each factor.
pub fn product_with_fields(x: &Variety, y: &Variety, max_degree: i64) -> Result<(Variety, Vec<VectorField>)> {
    let ring = x.ring().product(y.ring())?;
    let (nx, ny) = (x.ring().arity(), y.ring().arity());
    let left: Vec<usize> = (0..nx).collect();
    let right: Vec<usize> = (nx..nx + ny).collect();
    let mut equations: Vec<Polynomial> = x.equations().iter().map(|f| f.embed(&ring, &left)).collect();
    equations.extend(y.equations().iter().map(|f| f.embed(&ring, &right)));
    let embed_field = |v: &VectorField, mapping: &[usize]| -> Result<VectorField> {
        let mut coeffs = vec![ring.zero(); ring.arity()];
        for (i, c) in v.coefficients().iter().enumerate() {
            coeffs[mapping[i]] = c.embed(&ring, mapping);
        }
        VectorField::new(&ring, coeffs)
    };
    let mut fields = Vec::new();
    for v in family_fields(x, &Family::Hamiltonian, max_degree)? {
        fields.push(embed_field(&v, &left)?);
    }
    for v in family_fields(y, &Family::Hamiltonian, max_degree)? {
        fields.push(embed_field(&v, &right)?);
    }
    let product = Variety::new(&ring, equations, Structure::VectorFields(fields.clone()))?;
    Ok((product, fields))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn cusp() -> Variety {
        let r = PolyRing::new(&["x", "y"], &[3, 2]).unwrap();
        Variety::parse(&r, &["x^2 - y^3"], Structure::Jacobian).unwrap()
    }

    fn fermat() -> Variety {
        let r = PolyRing::standard(&["x", "y", "z"]).unwrap();
        Variety::parse(&r, &["x^3 + y^3 + z^3"], Structure::Jacobian).unwrap()
    }

    #[test]
    fn cusp_tables() {
        let t = coinvariants_truncated(&cusp(), &Family::Hamiltonian, 10).unwrap();
        assert_eq!(t.dims, vec![1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(t.total(), 2);
        let t = coinvariants_truncated(&cusp(), &Family::Derivations, 10).unwrap();
        assert_eq!(t.total(), 1);
        assert_eq!(t.dim(0), 1);
    }

    #[test]
    fn fermat_table() {
        let t = coinvariants_truncated(&fermat(), &Family::Hamiltonian, 6).unwrap();
        assert_eq!(t.dims, vec![1, 3, 3, 1, 0, 0, 0]);
    }

    #[test]
    fn verification() {
        for x in [cusp(), fermat()] {
            let check = verify_hp0(&x, 3).unwrap();
            assert!(check.is_match(), "{check}");
        }
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let conic = Variety::parse(&r, &["x^2 + y^2 - 1"], Structure::Jacobian).unwrap();
        assert!(matches!(verify_hp0(&conic, 2), Err(Error::NonHomogeneous(_))));
    }

    #[test]
    fn bracket_and_jacobi_families() {
        let r = PolyRing::standard(&["x", "y"]).unwrap();
        let plane = Variety::new(&r, vec![], Structure::Bracket(BracketMatrix::symplectic(&r).unwrap())).unwrap();
        let t = coinvariants_truncated(&plane, &Family::Hamiltonian, 4).unwrap();
        assert_eq!(t.dims, vec![0; 5]);
        // the Fermat Jacobian bracket agrees with the top-polyvector family
        let x = fermat();
        let pi = crate::geom::jacobian_bracket_matrix(&x).unwrap();
        let xb = x.with_structure(Structure::Bracket(pi)).unwrap();
        assert_eq!(coinvariants_truncated(&xb, &Family::Hamiltonian, 5).unwrap().dims, vec![1, 3, 3, 1, 0, 0]);
        // contact: u = d_t kills everything
        let j = crate::vfields::JacobiStructure::standard_contact(1).unwrap();
        let r = j.ring().clone();
        let space = Variety::new(&r, vec![], Structure::Jacobi(j)).unwrap();
        assert_eq!(coinvariants_truncated(&space, &Family::Hamiltonian, 4).unwrap().total(), 0);
    }

    #[test]
    fn explicit_family_checks() {
        let x = cusp();
        let bad = Family::Explicit(vec![VectorField::partial(x.ring(), 0)]);
        assert!(matches!(coinvariants_truncated(&x, &bad, 3), Err(Error::NotTangent { index: 0 })));
        let empty = coinvariants_truncated(&x, &Family::Explicit(vec![]), 6).unwrap();
        // no fields: the Hilbert function of the cusp
        assert_eq!(empty.dims, vec![1, 0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn product_is_multiplicative() {
        let (p, fields) = product_with_fields(&cusp(), &cusp(), 8).unwrap();
        let t = coinvariants_truncated(&p, &Family::Explicit(fields), 8).unwrap();
        let c = coinvariants_truncated(&cusp(), &Family::Hamiltonian, 8).unwrap();
        assert_eq!(t.dims, c.convolve(&c));
        assert_eq!(t.dims, vec![1, 0, 2, 0, 1, 0, 0, 0, 0]);
    }
}
