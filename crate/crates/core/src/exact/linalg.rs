//! Exact nullspace by Gauss-Jordan elimination.

use super::field::Field;
use super::sparse::SparseOp;

/// Basis of the right nullspace of the vertically stacked matrices, each
/// vector returned with a unit entry at its free column.
pub fn nullspace<T: Field>(blocks: &[SparseOp<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for b in blocks {
        assert_eq!(b.ncols(), ncols, "column mismatch in stacked nullspace");
        for r in 0..b.nrows() {
            let mut dense = vec![T::zero(); ncols];
            let mut any = false;
            for (c, v) in b.row(r) {
                dense[c] = v.clone();
                any = true;
            }
            if any {
                rows.push(dense);
            }
        }
    }
    let pivots = rref(&mut rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..ncols)
        .filter(|c| is_pivot[*c].is_none())
        .map(|free| {
            let mut v = vec![T::zero(); ncols];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// In-place reduced row echelon form; returns the pivot column of each
/// leading row (rows beyond the rank are left zero).
pub fn rref<T: Field>(rows: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    #[test]
    fn kernel_of_rank_one() {
        // [1 2 3] has a 2-dim kernel
        let a = SparseOp::from_triplets(
            1,
            3,
            [
                (0, 0, Scalar::int(1)),
                (0, 1, Scalar::int(2)),
                (0, 2, Scalar::int(3)),
            ],
        );
        let k = nullspace(std::slice::from_ref(&a), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(|x| *x == Scalar::int(0)));
        }
    }

    #[test]
    fn stacked_blocks_intersect_kernels() {
        let a = SparseOp::from_triplets(1, 3, [(0, 0, Scalar::int(1))]);
        let b = SparseOp::from_triplets(1, 3, [(0, 1, Scalar::sqrt2())]);
        let k = nullspace(&[a, b], 3);
        assert_eq!(
            k,
            vec![vec![Scalar::int(0), Scalar::int(0), Scalar::int(1)]]
        );
    }

    #[test]
    fn empty_system_gives_full_space() {
        assert_eq!(nullspace::<Scalar>(&[], 2).len(), 2);
    }
}
