//! Exact rank by fraction-free (Bareiss) elimination.

use crate::exact::ExactField;

/// Rank of a dense matrix given as rows. Rows may be empty; all rows must
/// have equal length.
pub fn rank<F: ExactField>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev_pivot: Option<F> = None;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom {
            let factor = row[col].clone();
            for (a, p) in row[col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                // Bareiss step: (pivot·a_rc − factor·a_kc) / previous pivot
                let mut x = pivot.mul(a).sub(&factor.mul(p));
                if let Some(d) = &prev_pivot {
                    x = x.div(d);
                }
                *a = x;
            }
        }
        prev_pivot = Some(pivot);
        rank += 1;
    }
    rank
}
