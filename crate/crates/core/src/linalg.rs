//! Fixed-size vector and matrix helpers for 2-D charts and 3-D embeddings.

use crate::scalar::Real;

pub type Vec2<T> = [T; 2];
pub type Vec3<T> = [T; 3];
/// Row-major 2×2 matrix.
pub type Mat2<T> = [[T; 2]; 2];

/// The flat rotation `[[0, -1], [1, 0]]`.
pub fn j_flat<T: Real>() -> Mat2<T> {
    [[T::zero(), -T::one()], [T::one(), T::zero()]]
}

pub fn mat2_det<T: Real>(m: &Mat2<T>) -> T {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mat2_inv<T: Real>(m: &Mat2<T>) -> Option<Mat2<T>> {
    let d = mat2_det(m);
    if d == T::zero() || !d.is_finite() {
        return None;
    }
    Some([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
}

pub fn mat2_mul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_vec<T: Real>(m: &Mat2<T>, v: &Vec2<T>) -> Vec2<T> {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

pub fn mat2_transpose<T: Real>(m: &Mat2<T>) -> Mat2<T> {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

pub fn mat2_scale<T: Real>(m: &Mat2<T>, s: T) -> Mat2<T> {
    [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]
}

pub fn mat2_sub<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

/// Largest absolute entry.
pub fn mat2_max_abs<T: Real>(m: &Mat2<T>) -> T {
    m.iter()
        .flat_map(|row| row.iter())
        .fold(T::zero(), |acc, x| acc.max(x.abs()))
}

/// `uᵀ M v`.
pub fn bilinear<T: Real>(m: &Mat2<T>, u: &Vec2<T>, v: &Vec2<T>) -> T {
    let mv = mat2_vec(m, v);
    u[0] * mv[0] + u[1] * mv[1]
}

pub fn dot2<T: Real>(a: &Vec2<T>, b: &Vec2<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

pub fn dot3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3<T: Real>(a: &Vec3<T>) -> T {
    dot3(a, a).sqrt()
}

/// Real eigenvalues of a 2×2 matrix, if both are real. Sorted ascending.
pub fn mat2_real_eigenvalues<T: Real>(m: &Mat2<T>) -> Option<(T, T)> {
    let tr = m[0][0] + m[1][1];
    let det = mat2_det(m);
    let half = T::lit(0.5);
    let disc = (tr * half) * (tr * half) - det;
    // Self-adjoint operators may produce a tiny negative discriminant from rounding.
    let tol = T::epsilon() * T::lit(64.0) * (tr * tr + det.abs()).max(T::min_positive_value());
    if disc < -tol {
        return None;
    }
    let root = disc.max(T::zero()).sqrt();
    Some((tr * half - root, tr * half + root))
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real, const N: usize>(mut a: [[T; N]; N], mut b: [T; N]) -> Option<[T; N]> {
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |acc, x| acc.max(x.abs()));
    if scale == T::zero() || !scale.is_finite() {
        return None;
    }
    let tiny = scale * T::epsilon() * T::lit(16.0);
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if a[pivot][col].abs() <= tiny {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            for k in col..N {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }
    let mut x = [T::zero(); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}
