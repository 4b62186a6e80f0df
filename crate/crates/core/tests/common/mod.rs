#![allow(dead_code)]

use std::path::PathBuf;

use lattice_kit::numerics::{least_squares, norm1, norm2, Matrix};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

/// Rows of a comma-separated fixture file.
pub fn load_rows(name: &str) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture exists");
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|t| t.trim().parse().unwrap()).collect())
        .collect()
}

/// Rank by singular values (nalgebra), independent of the crate's RREF.
pub fn svd_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = nalgebra::DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * smax.max(1.0)).count()
}

/// Residual of the least-squares projection of `x` onto `span(rows)`.
pub fn span_residual(rows: &[Vec<f64>], x: &[f64]) -> f64 {
    let a = Matrix::from_columns(rows).unwrap();
    let c = least_squares(&a, x, 1e-13).unwrap();
    let back = a.mul_vec(&c).unwrap();
    norm2(&back.iter().zip(x).map(|(p, q)| p - q).collect::<Vec<_>>())
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let ra = svd_rank(a, tol);
    let rb = svd_rank(b, tol);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    ra == rb && svd_rank(&both, tol) == ra
}

fn unit_ray(v: &[f64]) -> Vec<f64> {
    let s = norm1(v);
    v.iter().map(|x| x / s).collect()
}

/// Largest distance between matched unit-1-norm rays, or `None` when the
/// sets cannot be matched one-to-one. Each ray of `a` is matched to its
/// nearest unmatched ray of `b`.
pub fn ray_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let ua: Vec<Vec<f64>> = a.iter().map(|v| unit_ray(v)).collect();
    let ub: Vec<Vec<f64>> = b.iter().map(|v| unit_ray(v)).collect();
    let mut used = vec![false; ub.len()];
    let mut worst: f64 = 0.0;
    for r in &ua {
        let (j, dist) = ub
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, s)| {
                let d = r.iter().zip(s).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
                (j, d)
            })
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        used[j] = true;
        worst = worst.max(dist);
    }
    Some(worst)
}

pub fn rays_match(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    ray_distance(a, b).is_some_and(|d| d <= tol)
}

pub fn support(v: &[f64], tol: f64) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i].abs() > tol).collect()
}

pub fn sorted(mut rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
    rows
}
