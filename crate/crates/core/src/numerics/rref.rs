use super::matrix::Matrix;

/// Reduced row echelon form together with its pivot structure.
#[derive(Debug, Clone, PartialEq)]
pub struct RrefResult {
    pub reduced: Matrix,
    /// Strictly increasing column indices holding a leading one.
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination with partial pivoting.
///
/// In each column the largest remaining entry (first one on ties) becomes
/// the pivot. Entries whose magnitude is at most `tol · max|M|` are
/// treated as zero, both when choosing pivots and in the returned form.
pub fn rref(m: &Matrix, tol: f64) -> RrefResult {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let thresh = tol * m.max_abs();
    let mut pivots = Vec::new();

    if m.max_abs() == 0.0 {
        return RrefResult {
            reduced: a,
            pivot_columns: pivots,
            rank: 0,
        };
    }

    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut p = r;
        let mut best = a[(r, c)].abs();
        for i in r + 1..rows {
            let v = a[(i, c)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best <= thresh {
            for i in r..rows {
                a[(i, c)] = 0.0;
            }
            continue;
        }
        a.swap_rows(p, r);
        let piv = a[(r, c)];
        for v in a.row_mut(r) {
            *v /= piv;
        }
        a[(r, c)] = 1.0;
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)];
            if f != 0.0 {
                for (v, pr) in a.row_mut(i).iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                a[(i, c)] = 0.0;
            }
        }
        pivots.push(c);
        r += 1;
    }

    for i in 0..rows {
        for v in a.row_mut(i) {
            if v.abs() <= thresh {
                *v = 0.0;
            }
        }
    }

    let rank = pivots.len();
    RrefResult {
        reduced: a,
        pivot_columns: pivots,
        rank,
    }
}

pub fn rank(m: &Matrix, tol: f64) -> usize {
    rref(m, tol).rank
}

/// Rank of a list of equally long vectors (0 for an empty list).
pub fn rank_of(vectors: &[Vec<f64>], tol: f64) -> usize {
    if vectors.is_empty() || vectors[0].is_empty() {
        return 0;
    }
    match Matrix::from_rows(vectors) {
        Ok(m) => rank(&m, tol),
        Err(_) => 0,
    }
}

/// The lexicographically earliest maximal set of linearly independent rows:
/// a row is kept iff it raises the rank of the rows kept before it.
///
/// Computed as the pivot columns of `rref(Mᵀ)`.
pub fn max_lin_indep_rows(m: &Matrix, tol: f64) -> Vec<usize> {
    rref(&m.transpose(), tol).pivot_columns
}

/// [`max_lin_indep_rows`] over a list of vectors.
pub fn max_lin_indep(vectors: &[Vec<f64>], tol: f64) -> Vec<usize> {
    if vectors.is_empty() || vectors[0].is_empty() {
        return Vec::new();
    }
    match Matrix::from_rows(vectors) {
        Ok(m) => max_lin_indep_rows(&m, tol),
        Err(_) => Vec::new(),
    }
}
