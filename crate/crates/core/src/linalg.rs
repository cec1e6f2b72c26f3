//! Gaussian elimination over a field context (dense rows of raw elements).

use crate::gf::FieldCtx;

/// Bring `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(f: &FieldCtx, rows: &mut Vec<Vec<u64>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][col]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldCtx, rows: &[Vec<u64>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// Basis of the right kernel, one vector per free column in increasing order;
/// each vector has a 1 at its free column.
pub fn kernel(f: &FieldCtx, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let piv = rref(f, &mut m, ncols);
    let mut is_piv = vec![false; ncols];
    for &c in &piv {
        is_piv[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_piv[c]) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in piv.iter().enumerate() {
            v[pc] = f.neg(m[r][free]);
        }
        out.push(v);
    }
    out
}

/// Incremental echelon basis used to test membership and select independent
/// vectors in order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, f: &FieldCtx, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        v
    }

    /// Insert `v` if independent; returns whether it was.
    pub fn insert(&mut self, f: &FieldCtx, v: &[u64]) -> bool {
        let mut v = self.reduce(f, v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep stored rows fully reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        self.rows.push((pc, v));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    pub fn into_rows(self) -> Vec<(usize, Vec<u64>)> {
        self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn kernel_annihilates() {
        let f = field_make(5, 1).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 0], vec![3, 1, 4, 4]];
        let ker = kernel(&f, &rows, 4);
        assert_eq!(ker.len() + rank(&f, &rows, 4), 4);
        for v in &ker {
            for r in &rows {
                let s = r.iter().zip(v).fold(0, |a, (&x, &y)| f.add(a, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn echelon_membership() {
        let f = field_make(2, 1).unwrap();
        let mut e = Echelon::new();
        assert!(e.insert(&f, &[1, 1, 0]));
        assert!(e.insert(&f, &[0, 1, 1]));
        assert!(!e.insert(&f, &[1, 0, 1]));
        assert!(e.insert(&f, &[0, 0, 1]));
        assert_eq!(e.len(), 3);
    }
}
