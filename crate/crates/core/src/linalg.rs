//! Dense Gaussian elimination over `F_p`.
//!
//! Graded pieces in scope have at most a few thousand columns, so plain
//! row-major storage with `u32` entries is enough.

use crate::field::Prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    /// Build from column vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix, p: Prime) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = p.add(out.get(i, j), p.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32], p: Prime) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))
            })
            .collect()
    }

    /// Reduce in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, p: Prime) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            for j in c..self.cols {
                let v = p.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = p.sub(self.get(i, j), p.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: Prime) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().rank(p)
        } else {
            self.clone().rref(p).len()
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// A basis of the null space `{v : self * v = 0}`.
    pub fn nullspace(&self, p: Prime) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// An incrementally grown subspace kept in echelon form, used to test
/// membership and to pick complements.
#[derive(Debug, Clone)]
pub struct EchelonSpan {
    p: Prime,
    dim: usize,
    /// Rows normalised so that the pivot entry is 1.
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonSpan {
    pub fn new(dim: usize, p: Prime) -> Self {
        EchelonSpan { p, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (pc, row) in &self.rows {
            let f = v[*pc];
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = p.sub(*x, p.mul(f, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Add `v`; returns true when it was independent of the current span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p;
        let inv = p.inv(w[pc]);
        for x in w.iter_mut() {
            *x = p.mul(*x, inv);
        }
        // keep earlier rows reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    if r != 0 {
                        *x = p.sub(*x, p.mul(f, r));
                    }
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn mat(rows: &[&[u32]], pr: Prime) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, pr.reduce(v as u64));
            }
        }
        m
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2, singular only mod 2
        let rows: &[&[u32]] = &[&[1, 1], &[1, 3]];
        assert_eq!(mat(rows, p(2)).rank(p(2)), 1);
        assert_eq!(mat(rows, p(3)).rank(p(3)), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let pr = p(7);
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]], pr);
        let ns = m.nullspace(pr);
        assert_eq!(ns.len(), 4 - m.rank(pr));
        for v in &ns {
            assert!(m.apply(v, pr).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn tall_and_empty_matrices() {
        let m = mat(&[&[1], &[2], &[3]], p(5));
        assert_eq!(m.rank(p(5)), 1);
        assert_eq!(Matrix::zeros(0, 4).rank(p(5)), 0);
        assert_eq!(Matrix::zeros(3, 0).nullspace(p(5)).len(), 0);
        assert_eq!(Matrix::zeros(0, 2).nullspace(p(5)).len(), 2);
    }

    #[test]
    fn echelon_span_membership() {
        let pr = p(5);
        let mut s = EchelonSpan::new(3, pr);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 3, 1]));
        assert!(s.contains(&[2, 4, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.rank(), 2);
    }
}
