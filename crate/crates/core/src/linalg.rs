//! Exact Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Coeff;

/// Sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Coeff)>;

pub fn sparse_from_map(map: BTreeMap<usize, Coeff>) -> SparseRow {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Incrementally built row-echelon form; answers rank and span membership.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    /// pivot column -> normalized row whose first entry is `(pivot, 1)`
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots until its leading column is free.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                return row;
            };
            match self.rows.get(&col) {
                Some(pivot_row) => row = axpy(&row, pivot_row, &-lead),
                None => return row,
            }
        }
    }

    /// Adds a row; returns false if it was already in the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((col, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let normalized = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.rows.insert(col, normalized);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// `a + factor * b`, both sorted sparse rows.
fn axpy(a: &SparseRow, b: &SparseRow, factor: &Coeff) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * factor));
            j += 1;
        } else {
            let v = &a[i].1 + &b[j].1 * factor;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Basis of the null space `{v : rows * v = 0}` for `ncols` unknowns.
///
/// Each basis vector has a 1 in one free column and zeros in the others.
pub fn kernel(rows: &[SparseRow], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r.clone());
        if ech.rank() == ncols {
            return Vec::new();
        }
    }
    // back-substitute to reduced row-echelon form
    let pivots: Vec<usize> = ech.rows.keys().copied().collect();
    let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for &p in pivots.iter().rev() {
        let mut row = ech.rows[&p].clone();
        loop {
            let hit = row
                .iter()
                .skip(1)
                .find(|(c, _)| reduced.contains_key(c))
                .cloned();
            match hit {
                Some((c, v)) => row = axpy(&row, &reduced[&c], &-v),
                None => break,
            }
        }
        reduced.insert(p, row);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !reduced.contains_key(c)) {
        let mut v = vec![Coeff::zero(); ncols];
        v[free] = Coeff::one();
        for (&p, row) in &reduced {
            if let Some((_, val)) = row.iter().find(|(c, _)| *c == free) {
                v[p] = -val.clone();
            }
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: &[SparseRow]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r.clone());
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, rational(v))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        // x + y + z = 0, 2x + 2y + 2z = 0, y - z = 0
        let rows = vec![
            row(&[(0, 1), (1, 1), (2, 1)]),
            row(&[(0, 2), (1, 2), (2, 2)]),
            row(&[(1, 1), (2, -1)]),
        ];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for r in &rows {
            let dot: Coeff = r.iter().map(|(c, a)| a * &v[*c]).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn kernel_of_empty_system_is_everything() {
        assert_eq!(kernel(&[], 2).len(), 2);
        assert!(kernel(&[row(&[(0, 3)])], 1).is_empty());
    }
}
