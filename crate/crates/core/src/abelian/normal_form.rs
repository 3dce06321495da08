//! Integer matrix normal forms over arbitrary-precision integers.
//!
//! Row-style Hermite normal form gives the canonical basis of a lattice;
//! Smith normal form with tracked column operations gives quotient
//! presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is echelon with strictly increasing pivot columns, positive
/// pivots and entries above each pivot reduced into `[0, pivot)`. Zero rows
/// are dropped. It depends only on the lattice, not on the spanning set.
pub fn hermite_rows(rows: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let mut m: IntMatrix = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row >= m.len() {
            break;
        }
        // Euclid on the column below pivot_row until a single nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if !m[r][col].is_zero() {
                    match best {
                        Some(b) if m[b][col].abs() <= m[r][col].abs() => {}
                        _ => best = Some(r),
                    }
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut clean = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                let (head, tail) = m.split_at_mut(r);
                sub_scaled(&mut tail[0], &head[pivot_row], &q);
                if !m[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -&*x;
            }
        }
        for r in 0..pivot_row {
            let q = m[r][col].div_floor(&m[pivot_row][col]);
            if !q.is_zero() {
                let (head, tail) = m.split_at_mut(pivot_row);
                sub_scaled(&mut head[r], &tail[0], &q);
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

/// Reduces `v` against a Hermite basis; returns the remainder.
pub fn reduce_by_hermite(hnf: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for row in hnf {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let q = v[p].div_floor(&row[p]);
        if !q.is_zero() {
            sub_scaled(&mut v, row, &q);
        }
    }
    v
}

fn sub_scaled(target: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t -= q * r;
        }
    }
}

/// Smith normal form `U * M * V = D`, tracking only `V`.
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    /// The column transform `V` (ncols x ncols, unimodular).
    pub column_transform: IntMatrix,
}

pub fn smith_columns(rows: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let mut a: IntMatrix = rows.to_vec();
    let nrows = a.len();
    let mut v: IntMatrix = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the trailing block, first in row-major order
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, t, bj);
        swap_cols(&mut v, t, bj);

        let mut clean = true;
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            let (head, tail) = a.split_at_mut(i);
            sub_scaled(&mut tail[0], &head[t], &q);
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            col_sub_scaled(&mut a, j, t, &q);
            col_sub_scaled(&mut v, j, t, &q);
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let pivot = a[t][t].clone();
        let offender = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&pivot)));
        if let Some(i) = offender {
            let row = a[i].clone();
            for (x, r) in a[t].iter_mut().zip(&row) {
                *x += r;
            }
            continue;
        }
        diagonal.push(pivot.abs());
        t += 1;
    }
    SmithForm {
        diagonal,
        column_transform: v,
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_sub_scaled(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            let d = q * &row[source];
            row[target] -= d;
        }
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
