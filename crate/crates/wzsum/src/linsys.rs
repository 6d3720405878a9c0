//! Exact linear algebra over the engine's coefficient fields.
//!
//! The telescoping search reduces to small dense linear systems whose
//! entries live in ℚ or ℚ(n). Everything here is plain Gaussian
//! elimination, kept exact by the field arithmetic of the coefficient type
//! and kept small by a caller-supplied pivot weight (for ℚ(n), preferring
//! low-degree pivots avoids needless intermediate blowup).
//!
//! Key components:
//! - [`nullspace`]: basis of the solution space of a homogeneous system.
//! - [`solve`]: one solution of an inhomogeneous system, or `None` when
//!   the system is inconsistent.

use crate::poly::Coeff;

// ---- Elimination core ----

/// Reduce `m` in place to reduced row-echelon form. Pivots are chosen per
/// column among the remaining rows, minimizing `weight` (ties: first row),
/// so cheap entries anchor the elimination. Returns the pivot column of
/// each pivot row, in row order.
fn eliminate<C: Coeff>(m: &mut [Vec<C>], weight: &impl Fn(&C) -> usize) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_cols = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        if next_row == rows {
            break;
        }
        let pivot = (next_row..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| weight(&m[r][col]));
        let Some(pivot) = pivot else { continue };
        m.swap(next_row, pivot);
        // Normalize the pivot row to a leading 1.
        let inv = C::one() / m[next_row][col].clone();
        for c in col..cols {
            m[next_row][c] = m[next_row][c].clone() * inv.clone();
        }
        // Clear the column everywhere else.
        for r in 0..rows {
            if r == next_row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..cols {
                let delta = f.clone() * m[next_row][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        pivot_cols.push(col);
        next_row += 1;
    }
    pivot_cols
}

// ---- Public solvers ----

/// Basis of the nullspace of the homogeneous system `rows · x = 0`, one
/// vector per free column (deterministic order: ascending free column).
/// An empty result means the kernel is trivial.
pub fn nullspace<C: Coeff>(
    mut rows: Vec<Vec<C>>,
    weight: impl Fn(&C) -> usize,
) -> Vec<Vec<C>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let pivot_cols = eliminate(&mut rows, &weight);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![C::zero(); cols];
        v[free] = C::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `rows · x = rhs`, with free variables set to zero;
/// `None` when the system is inconsistent.
pub fn solve<C: Coeff>(
    rows: Vec<Vec<C>>,
    rhs: Vec<C>,
    weight: impl Fn(&C) -> usize,
) -> Option<Vec<C>> {
    assert_eq!(rows.len(), rhs.len(), "matrix and right-hand side disagree");
    let cols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<C>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            row
        })
        .collect();
    let pivot_cols = eliminate(&mut aug, &weight);
    // A pivot in the augmented column marks an inconsistent row.
    if pivot_cols.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![C::zero(); cols];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

// ---- Tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi, Q};
    use crate::ratfun::UniRatFun;
    use num_traits::Zero;

    fn no_weight(_: &Q) -> usize {
        0
    }

    #[test]
    fn solves_a_unique_system() {
        // x + 2y = 5, 3x − y = 1  →  x = 1, y = 2
        let rows = vec![vec![qi(1), qi(2)], vec![qi(3), qi(-1)]];
        let x = solve(rows, vec![qi(5), qi(1)], no_weight).unwrap();
        assert_eq!(x, vec![qi(1), qi(2)]);
    }

    #[test]
    fn detects_inconsistency() {
        let rows = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert!(solve(rows, vec![qi(1), qi(3)], no_weight).is_none());
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        // x + y + z = 0 twice: kernel has dimension 2.
        let rows = vec![vec![qi(1), qi(1), qi(1)], vec![qi(2), qi(2), qi(2)]];
        let basis = nullspace(rows.clone(), no_weight);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn trivial_kernel_is_empty() {
        let rows = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert!(nullspace(rows, no_weight).is_empty());
    }

    #[test]
    fn rational_function_entries() {
        // Over ℚ(n): n·x + y = n²+n, x − y = −1+... pick x = n, y = n.
        use crate::poly::Poly;
        use num_traits::One;
        let n = UniRatFun::from_poly(Poly::<Q>::x());
        let one = UniRatFun::one();
        let rows = vec![
            vec![n.clone(), one.clone()],
            vec![one.clone(), -one.clone()],
        ];
        let rhs = vec![
            n.clone() * n.clone() + n.clone(),
            UniRatFun::from_const(q(0, 1)),
        ];
        let weight = |f: &UniRatFun| {
            f.num().degree().unwrap_or(0) + f.den().degree().unwrap_or(0)
        };
        let x = solve(rows, rhs, weight).unwrap();
        assert_eq!(x[0], n);
        assert_eq!(x[1], n);
    }
}
