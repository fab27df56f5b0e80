//! Exact linear algebra: dense rational matrices for small systems, a
//! fraction-free integer echelon accumulator for the large graded blocks,
//! and Hermite reduction for lattice membership.

use crate::scalar::{make_primitive, Int, Rat};
use num::{Integer, One, Signed, Zero};

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].clone();
            for j in c..self.cols {
                let v = self[(r, j)].clone() / &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = self[(i, j)].clone() - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel (column vectors `v` with `M v = 0`).
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (ri, &p) in pivots.iter().enumerate() {
                v[p] = -m[(ri, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b` (free variables set to zero), or `None`
    /// when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (ri, &p) in pivots.iter().enumerate() {
            x[p] = aug[(ri, self.cols)].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental fraction-free row echelon accumulator over the integers.
/// Rows are kept primitive, so entries stay small on the structured
/// matrices that arise from bracket expansions. Suitable for rank and
/// membership-in-span tests; reduction rescales vectors, so it must not be
/// used where honest linear quotient coordinates are required.
#[derive(Clone, Debug)]
pub struct IntEchelon {
    cols: usize,
    rows: Vec<Vec<Int>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    pub fn new(cols: usize) -> Self {
        IntEchelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the echelon (up to scaling). Afterwards `v` is
    /// zero iff the original lay in the span.
    pub fn reduce(&self, v: &mut [Int]) {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let a = row[p].clone();
            let b = v[p].clone();
            let g = a.gcd(&b);
            let fa = &a / &g;
            let fb = &b / &g;
            for j in 0..self.cols {
                v[j] = &v[j] * &fa - &row[j] * &fb;
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Int>) -> bool {
        self.reduce(&mut v);
        if !make_primitive(&mut v) {
            return false;
        }
        let p = v.iter().position(|x| !x.is_zero()).unwrap();
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }
}

/// Sparse rational echelon keyed by arbitrary ordered coordinates. Rows
/// are normalized to pivot coefficient one, so reduction is honest linear
/// algebra (no rescaling of the input).
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<K: std::hash::Hash + Eq + Ord + Copy> {
    rows: std::collections::BTreeMap<K, std::collections::HashMap<K, Rat>>,
}

impl<K: std::hash::Hash + Eq + Ord + Copy> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon {
            rows: std::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` in place against the echelon. Rows are keyed by their
    /// minimal coordinate, so one pass in pivot order is complete.
    pub fn reduce(&self, v: &mut std::collections::HashMap<K, Rat>) {
        for (pivot, row) in &self.rows {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            if c.is_zero() {
                continue;
            }
            for (k, rv) in row {
                let e = v.entry(*k).or_insert_with(Rat::zero);
                *e -= &c * rv;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    /// Insert; returns true if the vector enlarged the span.
    pub fn insert(&mut self, mut v: std::collections::HashMap<K, Rat>) -> bool {
        v.retain(|_, c| !c.is_zero());
        self.reduce(&mut v);
        if v.is_empty() {
            return false;
        }
        let pivot = *v.keys().min().unwrap();
        let pc = v[&pivot].clone();
        for c in v.values_mut() {
            *c /= &pc;
        }
        self.rows.insert(pivot, v);
        true
    }

    pub fn contains(&self, v: &std::collections::HashMap<K, Rat>) -> bool {
        let mut w = v.clone();
        w.retain(|_, c| !c.is_zero());
        self.reduce(&mut w);
        w.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }
}

/// Column-style Hermite normal form of an integer matrix. Returns a basis
/// (as columns) of the lattice spanned by the input columns.
pub fn hermite_column_basis(cols: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let Some(dim) = cols.first().map(|c| c.len()) else {
        return Vec::new();
    };
    let mut work: Vec<Vec<Int>> = cols
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for row in 0..dim {
        loop {
            // gather columns with nonzero entry in this row
            let mut idx: Vec<usize> = (0..work.len())
                .filter(|&k| !work[k][row].is_zero())
                .collect();
            if idx.is_empty() {
                break;
            }
            if idx.len() == 1 {
                let c = work.remove(idx[0]);
                basis.push(c);
                break;
            }
            // reduce the two smallest entries against each other
            idx.sort_by_key(|&k| work[k][row].abs());
            let (s, t) = (idx[0], idx[1]);
            let q = {
                let a = work[t][row].clone();
                let b = work[s][row].clone();
                // round to nearest to shrink fast
                let (mut q, r) = a.div_rem(&b);
                if r.abs() * 2 > b.abs() {
                    if (r.sign() == b.sign()) || r.is_zero() {
                        q += 1;
                    } else {
                        q -= 1;
                    }
                }
                q
            };
            if q.is_zero() {
                // entries equal in magnitude: subtract directly
                let sgn = if work[t][row].sign() == work[s][row].sign() {
                    Int::one()
                } else {
                    -Int::one()
                };
                for r in 0..dim {
                    let d = &work[s][r] * &sgn;
                    work[t][r] -= d;
                }
            } else {
                for r in 0..dim {
                    let d = &work[s][r] * &q;
                    work[t][r] -= d;
                }
            }
            work.retain(|c| c.iter().any(|x| !x.is_zero()));
        }
    }
    basis
}

/// Solve `B y = x` where the columns of `B` are echelonized lattice basis
/// vectors produced by `hermite_column_basis` (each column has a leading
/// nonzero row not shared with later columns). Returns `None` when `x` is
/// not in the rational column span.
pub fn solve_in_column_basis(basis: &[Vec<Int>], x: &[Rat]) -> Option<Vec<Rat>> {
    let mut rest: Vec<Rat> = x.to_vec();
    let mut y = vec![Rat::zero(); basis.len()];
    for (k, col) in basis.iter().enumerate() {
        let lead = col.iter().position(|v| !v.is_zero())?;
        let c = rest[lead].clone() / Rat::from_integer(col[lead].clone());
        if !c.is_zero() {
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    let d = &c * &Rat::from_integer(v.clone());
                    rest[r] -= d;
                }
            }
        }
        y[k] = c;
    }
    if rest.iter().all(|v| v.is_zero()) {
        Some(y)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rint};

    fn qm(rows: Vec<Vec<i64>>) -> QMat {
        QMat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rint).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for row in 0..3 {
            let mut s = Rat::zero();
            for j in 0..3 {
                s += &m[(row, j)] * &k[0][j];
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = qm(vec![vec![1, 1], vec![1, -1]]);
        let x = m.solve(&[rint(3), rint(1)]).unwrap();
        assert_eq!(x, vec![rint(2), rint(1)]);
        let sing = qm(vec![vec![1, 1], vec![2, 2]]);
        assert!(sing.solve(&[rint(1), rint(3)]).is_none());
    }

    #[test]
    fn echelon_rank() {
        let mut e = IntEchelon::new(3);
        assert!(e.insert(vec![int(2), int(4), int(0)]));
        assert!(!e.insert(vec![int(1), int(2), int(0)]));
        assert!(e.insert(vec![int(0), int(1), int(1)]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[int(3), int(7), int(1)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
    }

    #[test]
    fn hermite_and_membership() {
        // lattice spanned by (2,0) and (1,1)
        let basis = hermite_column_basis(vec![vec![int(2), int(0)], vec![int(1), int(1)]]);
        let y = solve_in_column_basis(&basis, &[rint(3), rint(1)]).unwrap();
        assert!(y.iter().all(crate::scalar::is_integer));
        let y2 = solve_in_column_basis(&basis, &[rint(1), rint(0)]).unwrap();
        assert!(!y2.iter().all(crate::scalar::is_integer));
    }
}
