//! Smith and Hermite normal forms, column echelon reduction and determinants.
//!
//! Everything here is exact. Reductions pivot on the entry of minimal absolute
//! value and use truncated integer division, which keeps entry growth modest on
//! the small matrices this crate deals with.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d`, with `u`, `v` unimodular and `d` diagonal with
/// non-negative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Non-zero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_abs_position(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
            if x.abs().is_one() {
                return best;
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_position(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t into the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = &d[(i, t)];
                    if !x.is_zero() && x.abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = &d[(t, j)];
                    if !x.is_zero() && x.abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Result of reducing a matrix by unimodular column operations:
/// `a * transform = [echelon | 0]`.
///
/// Column `c < rank` of `a * transform` is zero above row `pivot_rows[c]` and
/// positive there; the trailing `cols - rank` columns of `transform` are a
/// saturated basis of the integer kernel of `a`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn kernel(&self) -> IntMatrix {
        let n = self.transform.cols();
        self.transform.submatrix(0..n, self.rank..n)
    }

    pub fn image_transform(&self) -> IntMatrix {
        let n = self.transform.cols();
        self.transform.submatrix(0..n, 0..self.rank)
    }
}

pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let n = a.cols();
    let mut v = IntMatrix::identity(n);
    let mut rank = 0;
    let mut pivot_rows = Vec::new();

    for i in 0..a.rows() {
        if rank == n {
            break;
        }
        let row = a.row(i);
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        // w[j - rank] = (a * v)[i][j] on the free columns
        let mut w: Vec<BigInt> = (rank..n)
            .map(|j| {
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| x * &v[(k, j)])
                    .sum()
            })
            .collect();
        loop {
            let pos = w
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .min_by(|a, b| a.1.abs().cmp(&b.1.abs()))
                .map(|(k, _)| k);
            let Some(k) = pos else { break };
            if k != 0 {
                w.swap(0, k);
                v.swap_cols(rank, rank + k);
            }
            let mut done = true;
            for k in 1..w.len() {
                if w[k].is_zero() {
                    continue;
                }
                let q = -(&w[k] / &w[0]);
                let delta = &w[0] * &q;
                w[k] += delta;
                v.add_col_multiple(rank + k, rank, &q);
                if !w[k].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if w.first().is_some_and(|x| !x.is_zero()) {
            if w[0].is_negative() {
                v.negate_col(rank);
            }
            pivot_rows.push(i);
            rank += 1;
        }
    }
    ColumnEchelon {
        transform: v,
        rank,
        pivot_rows,
    }
}

pub fn rank(a: &IntMatrix) -> usize {
    column_echelon(a).rank
}

/// Saturated Z-basis (as columns) of `{x : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    column_echelon(a).kernel()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = val;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// Row-style Hermite normal form of the row lattice of `a`: rows are a basis,
/// leading entries are positive and strictly increase in column, entries above
/// each leading entry are reduced into `[0, leading)`.
pub fn row_hermite_form(a: &IntMatrix) -> IntMatrix {
    let t = a.transpose();
    let ech = column_echelon(&t);
    let mut e = t.mul(&ech.image_transform());
    for (c, &p) in ech.pivot_rows.iter().enumerate() {
        let pivot = e[(p, c)].clone();
        for c2 in 0..c {
            let q = e[(p, c2)].div_floor(&pivot);
            if !q.is_zero() {
                e.add_col_multiple(c2, c, &-q);
            }
        }
    }
    e.transpose()
}
