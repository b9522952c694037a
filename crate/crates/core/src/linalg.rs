//! Dense Gaussian elimination over a [`Field`], used by the oracle constructor.

use crate::fields::Field;

/// Basis of `{c : c M = 0}` where `M` has one row per unknown and one column per
/// constraint, i.e. the left nullspace. Rows are given as `rows[unknown][constraint]`.
pub fn left_nullspace<F: Field>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let unknowns = rows.len();
    if unknowns == 0 {
        return Vec::new();
    }
    let constraints = rows[0].len();
    // transpose: constraint equations over the unknowns
    let mut a: Vec<Vec<F>> = (0..constraints)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    if F::EXACT {
        return incremental_nullspace(&a, unknowns);
    }
    nullspace_of_rows(&mut a, unknowns)
}

/// Exact nullspace that reduces equations one at a time and stops as soon as the
/// nullspace of the equations seen so far is a line satisfying every equation.
/// That line contains the full nullspace, so the answer is the same as a full reduction.
fn incremental_nullspace<F: Field>(eqs: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut basis: Vec<(usize, Vec<F>)> = Vec::new();
    for eq in eqs {
        let mut row = eq.clone();
        for (c, b) in &basis {
            if row[*c].is_zero() {
                continue;
            }
            let f = row[*c].clone();
            for (x, y) in row.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(f.clone() * y);
                }
            }
        }
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
        let inv = row[c].try_inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in basis.iter_mut() {
            if b[c].is_zero() {
                continue;
            }
            let f = b[c].clone();
            for (x, y) in b.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &(f.clone() * y);
                }
            }
        }
        basis.push((c, row));
        if basis.len() + 1 == cols {
            let ns = echelon_nullspace(&basis, cols);
            if eqs.iter().all(|e| dot(e, &ns[0]).is_zero()) {
                return ns;
            }
        }
    }
    echelon_nullspace(&basis, cols)
}

fn echelon_nullspace<F: Field>(basis: &[(usize, Vec<F>)], cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for (c, _) in basis {
        is_pivot[*c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![F::zero(); cols];
            x[free] = F::one();
            for (c, b) in basis {
                x[*c] = -b[free].clone();
            }
            x
        })
        .collect()
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y)
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `cols`; `A` is reduced in place.
pub fn nullspace_of_rows<F: Field>(a: &mut [Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let pivots = row_reduce(a, cols);
    let mut is_pivot = vec![false; cols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![F::zero(); cols];
        x[free] = F::one();
        for &(r, c) in &pivots {
            x[c] = -a[r][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Reduced row echelon form in place; returns (row, column) of each pivot.
pub fn row_reduce<F: Field>(a: &mut [Vec<F>], cols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .filter_map(|x| x.to_complex())
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let candidate = if F::EXACT {
            (r..a.len()).find(|&k| !a[k][c].is_zero())
        } else {
            (r..a.len())
                .filter(|&k| !a[k][c].negligible(scale))
                .max_by(|&x, &y| {
                    let nx = a[x][c].to_complex().map_or(0.0, |z| z.norm());
                    let ny = a[y][c].to_complex().map_or(0.0, |z| z.norm());
                    nx.total_cmp(&ny)
                })
        };
        let Some(p) = candidate else { continue };
        a.swap(r, p);
        let inv = a[r][c].try_inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(f.clone() * y);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{rational, Approx, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
            .collect()
    }

    #[test]
    fn rank_one_nullspace() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace_of_rows(&mut a, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let dot: Rational = x
                .iter()
                .zip([1, 2, 3])
                .fold(rational(0, 1), |acc, (a, b)| acc + a * rational(b, 1));
            assert_eq!(dot, rational(0, 1));
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let mut a = m(&[&[1, 1], &[1, -1]]);
        assert!(nullspace_of_rows(&mut a, 2).is_empty());
    }

    #[test]
    fn left_nullspace_matches() {
        // c0 * (1, 1) + c1 * (2, 2) = 0
        let ns = left_nullspace(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(ns, vec![vec![rational(-2, 1), rational(1, 1)]]);
    }

    #[test]
    fn incremental_agrees_with_full_reduction() {
        let rows = m(&[&[1, 0, 2, 1], &[0, 1, 1, 1], &[1, 1, 3, 2], &[2, -1, 3, 1]]);
        let ns = left_nullspace(&rows);
        let mut t: Vec<Vec<Rational>> = (0..4).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
        assert_eq!(ns, nullspace_of_rows(&mut t, 4));
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn numeric_pivoting() {
        let mut a = vec![
            vec![Approx::new(1e-3, 0.0), Approx::new(1.0, 0.0)],
            vec![Approx::new(2e-3, 0.0), Approx::new(2.0, 0.0)],
        ];
        let ns = nullspace_of_rows(&mut a, 2);
        assert_eq!(ns.len(), 1);
        assert!((ns[0][0].0.re + 1000.0).abs() < 1e-9);
    }
}
