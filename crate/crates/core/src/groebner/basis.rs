use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, PolyRing, Polynomial};

/// Terms sorted descending in some monomial order.
pub(crate) type Terms = Vec<(Monomial, Coeff)>;

/// A Gröbner basis of a polynomial ideal with respect to a monomial order.
///
/// Elements are monic, kept sorted by leading monomial (largest first) and,
/// when produced by [`buchberger`], reduced.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: MonomialOrder,
    elements: Vec<Terms>,
    reduced: bool,
}

struct Ctx<'a> {
    order: MonomialOrder,
    weights: &'a [u32],
}

impl Ctx<'_> {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.weights)
    }

    fn sort(&self, mut terms: Terms) -> Terms {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        terms
    }

    /// `a - factor * shift * b` restricted to the tails `a[1..]`, `b[1..]`;
    /// the leading terms are assumed to cancel.
    fn cancel_leading(&self, a: &[(Monomial, Coeff)], b: &[(Monomial, Coeff)], factor: &Coeff, shift: &Monomial) -> Terms {
        let a = &a[1..];
        let b = &b[1..];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut shifted: Option<Monomial> = b.first().map(|t| t.0.mul(shift));
        while i < a.len() || j < b.len() {
            let ord = match (&shifted, a.get(i)) {
                (Some(m), Some(t)) => self.cmp(&t.0, m),
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted.take().unwrap(), -(&b[j].1 * factor)));
                    j += 1;
                    shifted = b.get(j).map(|t| t.0.mul(shift));
                }
                Ordering::Equal => {
                    let c = &a[i].1 - &b[j].1 * factor;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    shifted = b.get(j).map(|t| t.0.mul(shift));
                }
            }
        }
        out
    }

    /// Reduces `p` modulo `basis`. With `full`, tail terms are reduced too;
    /// otherwise the loop stops at the first irreducible leading term.
    fn reduce(&self, p: Terms, basis: &[Terms], skip: Option<usize>, full: bool) -> Terms {
        let mut kept: Terms = Vec::new();
        let mut rest = p;
        while !rest.is_empty() {
            let lead = &rest[0].0;
            let divisor = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| Some(*k) != skip)
                .find(|(_, g)| g[0].0.divides(lead))
                .map(|(_, g)| g);
            match divisor {
                Some(g) => {
                    let shift = lead.div(&g[0].0).unwrap();
                    let factor = &rest[0].1 / &g[0].1;
                    rest = self.cancel_leading(&rest, g, &factor, &shift);
                }
                None => {
                    if !full {
                        kept.extend(rest);
                        return kept;
                    }
                    let mut it = rest.into_iter();
                    kept.push(it.next().unwrap());
                    rest = it.collect();
                }
            }
        }
        kept
    }
}

fn monic(mut t: Terms) -> Terms {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in &mut t {
                *c *= &inv;
            }
        }
    }
    t
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the coprime-leading-monomial and chain
/// criteria and smallest-lcm-first pair selection. Returns the reduced basis.
pub fn buchberger(
    ring: &Arc<PolyRing>,
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    for g in generators {
        if **g.ring() != **ring {
            return Err(Error::RingMismatch);
        }
    }
    let ctx = Ctx {
        order,
        weights: ring.weights(),
    };
    let mut basis: Vec<Terms> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut queue: Vec<Terms> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.sort(g.terms().to_vec()))
        .collect();
    // smaller generators first keeps the early basis small
    queue.sort_by(|a, b| ctx.cmp(&a[0].0, &b[0].0));

    let unit = |ring: &Arc<PolyRing>| GroebnerBasis {
        ring: Arc::clone(ring),
        order,
        elements: vec![vec![(Monomial::one(ring.arity()), Coeff::one())]],
        reduced: true,
    };

    let add = |h: Terms, basis: &mut Vec<Terms>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>| {
        let h = monic(h);
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: k,
                lcm: g[0].0.lcm(&h[0].0),
            });
            pending.insert((i, k));
        }
        basis.push(h);
    };

    for g in queue {
        let h = ctx.reduce(g, &basis, None, true);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return Ok(unit(ring));
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .weighted_degree(ctx.weights)
                    .cmp(&b.lcm.weighted_degree(ctx.weights))
                    .then_with(|| ctx.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let (gi, gj) = (&basis[i], &basis[j]);
        if gi[0].0.is_coprime(&gj[0].0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let si = lcm.div(&gi[0].0).unwrap();
        let sj = lcm.div(&gj[0].0).unwrap();
        let lhs: Terms = gi.iter().map(|(m, c)| (m.mul(&si), c.clone())).collect();
        // both leading coefficients are 1
        let s = ctx.cancel_leading(&lhs, gj, &Coeff::one(), &sj);
        let h = ctx.reduce(s, &basis, None, true);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return Ok(unit(ring));
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // inter-reduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let g = ctx.reduce(keep[k].clone(), &keep, Some(k), true);
        reduced.push(monic(g));
    }
    reduced.sort_by(|a, b| ctx.cmp(&b[0].0, &a[0].0));

    Ok(GroebnerBasis {
        ring: Arc::clone(ring),
        order,
        elements: reduced,
        reduced: true,
    })
}

impl GroebnerBasis {
    /// Reduced basis in the default weighted-grevlex order.
    pub fn new(ring: &Arc<PolyRing>, generators: &[Polynomial]) -> Result<Self> {
        buchberger(ring, generators, MonomialOrder::default())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the zero ideal.
    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g[0].0.is_one())
    }

    pub fn elements(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|t| Polynomial::from_terms(&self.ring, t.iter().cloned()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g[0].0.clone()).collect()
    }

    /// True if no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elements.iter().any(|g| g[0].0.divides(m))
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            order: self.order,
            weights: self.ring.weights(),
        }
    }

    /// Fully reduced remainder of `p`; zero exactly when `p` is in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert!(
            p.same_ring(&Polynomial::zero(&self.ring)),
            "normal_form: polynomial from a different ring"
        );
        let ctx = self.ctx();
        let terms = if self.order == MonomialOrder::WeightedGrevlex {
            p.terms().to_vec()
        } else {
            ctx.sort(p.terms().to_vec())
        };
        let r = ctx.reduce(terms, &self.elements, None, true);
        if self.order == MonomialOrder::WeightedGrevlex {
            // already in canonical order
            Polynomial::from_sorted_terms(&self.ring, r)
        } else {
            Polynomial::from_terms(&self.ring, r)
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        let ctx = self.ctx();
        let terms = ctx.sort(p.terms().to_vec());
        ctx.reduce(terms, &self.elements, None, false).is_empty()
    }

    /// Same ideal (compares reduced bases in the same order).
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        if self.order == other.order && self.reduced && other.reduced {
            return self.elements == other.elements;
        }
        other.elements().iter().all(|g| self.contains(g))
            && self.elements().iter().all(|g| other.contains(g))
    }

    /// Basis of the ideal generated by this one and `extra`.
    pub fn extend(&self, extra: &[Polynomial]) -> Result<GroebnerBasis> {
        let mut gens = self.elements();
        gens.extend_from_slice(extra);
        buchberger(&self.ring, &gens, self.order)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.elements
            .iter()
            .all(|g| !g.iter().any(|(m, _)| m.is_one()))
    }

    /// All elements are weighted-homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.elements().iter().all(|g| g.is_homogeneous())
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
