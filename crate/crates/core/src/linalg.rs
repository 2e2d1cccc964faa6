use crate::scalar::Scalar;

/// Rank of a dense row-major matrix by exact Gaussian elimination.
pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in (rank + 1)..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for c in col..ncols {
                let v = m[r][c].clone() - factor.clone() * m[rank][c].clone();
                m[r][c] = v;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
