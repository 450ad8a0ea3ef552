use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// Result of a Smith normal form computation: `u * m * v = d`.
///
/// The inverses are tracked alongside so callers can move between the
/// original and the diagonal bases without a second elimination.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// Nonzero diagonal entries, positive and in divisibility order.
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith normal form `(U, D, V)` with `U·M·V = D`.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith_decompose(m);
    (s.u, s.d, s.v)
}

/// Full decomposition including the inverse transforms.
pub fn smith_decompose(m: &IntegerMatrix) -> SmithDecomposition {
    let mut w = Worker::new(m, true, true);
    w.run();
    w.finish()
}

/// Only the diagonal; skips all transform bookkeeping.
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut w = Worker::new(m, false, false);
    w.run();
    w.diagonal()
}

pub(crate) fn smith_with(m: &IntegerMatrix, left: bool, right: bool) -> SmithDecomposition {
    let mut w = Worker::new(m, left, right);
    w.run();
    w.finish()
}

struct Worker {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
    left: bool,
    right: bool,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_matrix(rows: &[Vec<BigInt>], nrows: usize, ncols: usize) -> IntegerMatrix {
    let mut entries = Vec::with_capacity(nrows * ncols);
    for r in rows {
        entries.extend(r.iter().cloned());
    }
    IntegerMatrix::from_entries(nrows, ncols, entries)
}

impl Worker {
    fn new(m: &IntegerMatrix, left: bool, right: bool) -> Self {
        let rows = m.rows();
        let cols = m.cols();
        let a = (0..rows).map(|r| m.row_vec(r)).collect();
        Worker {
            rows,
            cols,
            a,
            left,
            right,
            u: if left { ident(rows) } else { Vec::new() },
            u_inv: if left { ident(rows) } else { Vec::new() },
            v: if right { ident(cols) } else { Vec::new() },
            v_inv: if right { ident(cols) } else { Vec::new() },
        }
    }

    // row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        let (src, dst) = pair_mut(&mut self.a, t, i);
        axpy(dst, src, q);
        if self.left {
            let (src, dst) = pair_mut(&mut self.u, t, i);
            axpy(dst, src, q);
            // u_inv: col_t += q col_i
            for row in self.u_inv.iter_mut() {
                if !row[i].is_zero() {
                    let add = &row[i] * q;
                    row[t] += add;
                }
            }
        }
    }

    // row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) {
        let one = -BigInt::one();
        let (src, dst) = pair_mut(&mut self.a, i, t);
        axpy(dst, src, &one);
        if self.left {
            let (src, dst) = pair_mut(&mut self.u, i, t);
            axpy(dst, src, &one);
            for row in self.u_inv.iter_mut() {
                if !row[t].is_zero() {
                    let sub = row[t].clone();
                    row[i] -= sub;
                }
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.left {
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_negate(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -std::mem::take(x);
        }
        if self.left {
            for x in self.u[t].iter_mut() {
                *x = -std::mem::take(x);
            }
            for row in self.u_inv.iter_mut() {
                row[t] = -std::mem::take(&mut row[t]);
            }
        }
    }

    // col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                let sub = &row[t] * q;
                row[j] -= sub;
            }
        }
        if self.right {
            for row in self.v.iter_mut() {
                if !row[t].is_zero() {
                    let sub = &row[t] * q;
                    row[j] -= sub;
                }
            }
            // v_inv: row_t += q row_j
            let neg = -q;
            let (src, dst) = pair_mut(&mut self.v_inv, j, t);
            axpy(dst, src, &neg);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if self.right {
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                let better = best.as_ref().is_none_or(|(_, _, b)| ax < *b);
                if better {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let lim = self.rows.min(self.cols);
        for t in 0..lim {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_sub(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    let i = self.min_abs_in_col(t);
                    self.row_swap(t, i);
                    continue;
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_sub(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    let j = self.min_abs_in_row(t);
                    self.col_swap(t, j);
                    continue;
                }
                if let Some(i) = self.non_divisible_row(t) {
                    self.row_add(t, i);
                    continue;
                }
                break;
            }
            if self.a[t][t].is_negative() {
                self.row_negate(t);
            }
        }
    }

    fn min_abs_in_col(&self, t: usize) -> usize {
        (t..self.rows)
            .filter(|&i| !self.a[i][t].is_zero())
            .min_by_key(|&i| self.a[i][t].abs())
            .expect("column has a nonzero entry")
    }

    fn min_abs_in_row(&self, t: usize) -> usize {
        (t..self.cols)
            .filter(|&j| !self.a[t][j].is_zero())
            .min_by_key(|&j| self.a[t][j].abs())
            .expect("row has a nonzero entry")
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[t][t];
        if p.abs().is_one() {
            return None;
        }
        (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(p)))
    }

    fn diagonal(&self) -> Vec<BigInt> {
        let lim = self.rows.min(self.cols);
        (0..lim).map(|t| self.a[t][t].clone()).take_while(|x| !x.is_zero()).collect()
    }

    fn finish(self) -> SmithDecomposition {
        let diagonal = self.diagonal();
        let d = to_matrix(&self.a, self.rows, self.cols);
        let (u, u_inv) = if self.left {
            (to_matrix(&self.u, self.rows, self.rows), to_matrix(&self.u_inv, self.rows, self.rows))
        } else {
            (IntegerMatrix::zeros(0, 0), IntegerMatrix::zeros(0, 0))
        };
        let (v, v_inv) = if self.right {
            (to_matrix(&self.v, self.cols, self.cols), to_matrix(&self.v_inv, self.cols, self.cols))
        } else {
            (IntegerMatrix::zeros(0, 0), IntegerMatrix::zeros(0, 0))
        };
        SmithDecomposition { u, u_inv, d, v, v_inv, diagonal }
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

// dst -= q * src
fn axpy(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= s * q;
        }
    }
}
