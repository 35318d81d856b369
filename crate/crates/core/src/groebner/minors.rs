use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Laplace expansion along the first row of the submatrix.
fn det_sub(mat: &[Vec<Polynomial>], rows: &[usize], cols: &[usize]) -> Polynomial {
    if rows.len() == 1 {
        return mat[rows[0]][cols[0]].clone();
    }
    let ring = mat[rows[0]][cols[0]].ring();
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &mat[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det_sub(mat, &rows[1..], &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn check_shape(mat: &[Vec<Polynomial>]) -> Result<(usize, usize)> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    if mat.iter().any(|r| r.len() != cols) {
        return Err(Error::WrongStructure("ragged matrix".into()));
    }
    let mut entries = mat.iter().flatten();
    if let Some(first) = entries.next() {
        if entries.any(|p| !p.same_ring(first)) {
            return Err(Error::RingMismatch);
        }
    }
    Ok((rows, cols))
}

/// All `size`×`size` minors, ordered lexicographically by (row set, column set).
pub fn minors(mat: &[Vec<Polynomial>], size: usize) -> Result<Vec<Polynomial>> {
    let (rows, cols) = check_shape(mat)?;
    if size == 0 || size > rows.min(cols) {
        return Err(Error::MinorSize { size, rows, cols });
    }
    let col_sets = combinations(cols, size);
    let mut out = Vec::new();
    for rs in combinations(rows, size) {
        for cs in &col_sets {
            out.push(det_sub(mat, &rs, cs));
        }
    }
    Ok(out)
}

pub fn determinant(mat: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let (rows, cols) = check_shape(mat)?;
    if rows != cols || rows == 0 {
        return Err(Error::MinorSize { size: rows, rows, cols });
    }
    Ok(det_sub(mat, &(0..rows).collect::<Vec<_>>(), &(0..cols).collect::<Vec<_>>()))
}
