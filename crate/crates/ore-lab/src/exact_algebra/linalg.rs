//! Exact linear solver over the rational function field.
//!
//! Plain Gaussian elimination with a sparsity-aware pivot choice (fewest
//! total terms) to limit coefficient growth. Systems here are small: the
//! membership probes produce a few dozen equations at most.

use super::field::Scalar;
use super::ratfunc::RatFunc;

/// Solve `A u = b` over K. Returns one exact solution (free variables set to
/// zero), or `None` when the system is infeasible.
pub fn solve_linear<S: Scalar>(
    mut rows: Vec<Vec<RatFunc<S>>>,
    mut rhs: Vec<RatFunc<S>>,
) -> Option<Vec<RatFunc<S>>> {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, |r| r.len());
    debug_assert!(rows.iter().all(|r| r.len() == ncols));

    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        // Pick the structurally cheapest nonzero pivot in this column.
        let pivot = (row..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].num().num_terms() + rows[r][col].den().num_terms());
        let Some(p) = pivot else { continue };
        rows.swap(row, p);
        rhs.swap(row, p);

        let inv = rows[row][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            rows[row][c] = rows[row][c].mul(&inv);
        }
        rhs[row] = rhs[row].mul(&inv);

        for r in 0..rows.len() {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let delta = rows[row][c].mul(&factor);
                rows[r][c] = rows[r][c].sub(&delta);
            }
            let delta = rhs[row].mul(&factor);
            rhs[r] = rhs[r].sub(&delta);
        }

        pivot_col_of_row.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }

    // Rows with no pivot must have zero right-hand side.
    for r in row..rows.len() {
        if !rhs[r].is_zero() {
            return None;
        }
    }

    let mut solution = vec![RatFunc::zero(); ncols];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        solution[col] = rhs[r].clone();
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::vars::VarId;
    use num_rational::BigRational;

    type R = RatFunc<BigRational>;

    fn x(i: u32) -> R {
        R::var(VarId::X(i))
    }

    #[test]
    fn solves_a_2x2_system_over_k() {
        // x0 * u + v = 1,  u - v = x0  =>  u = (1 + x0)/(x0 + 1) = 1 ... keep exact:
        let rows = vec![vec![x(0), R::one()], vec![R::one(), R::one().neg()]];
        let rhs = vec![R::one(), x(0)];
        let sol = solve_linear(rows.clone(), rhs.clone()).unwrap();
        for (row, b) in rows.iter().zip(&rhs) {
            let lhs = row[0].mul(&sol[0]).add(&row[1].mul(&sol[1]));
            assert_eq!(lhs, *b);
        }
    }

    #[test]
    fn detects_infeasibility() {
        let rows = vec![vec![x(0)], vec![x(0)]];
        let rhs = vec![R::one(), R::zero()];
        assert!(solve_linear(rows, rhs).is_none());
    }

    #[test]
    fn underdetermined_systems_pick_a_particular_solution() {
        let rows = vec![vec![R::one(), x(1)]];
        let rhs = vec![x(1).pow(2)];
        let sol = solve_linear(rows.clone(), rhs.clone()).unwrap();
        let lhs = rows[0][0].mul(&sol[0]).add(&rows[0][1].mul(&sol[1]));
        assert_eq!(lhs, rhs[0]);
    }

    #[test]
    fn empty_and_inconsistent_edge_cases() {
        assert_eq!(solve_linear::<BigRational>(vec![], vec![]), Some(vec![]));
        let rows = vec![vec![R::zero()]];
        assert!(solve_linear(rows, vec![x(0)]).is_none());
    }
}
