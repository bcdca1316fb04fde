//! Pointwise identities of the geometry.

use crate::error::{Error, Result};
use crate::linalg::{j_flat, mat2_det, mat2_max_abs, mat2_mul, mat2_scale, mat2_sub, Mat2, Vec2};
use crate::scalar::{scaled_step, try_central_diff, Real};
use crate::surfaces::{geometry_jet, geometry_jet_unchecked, SurfaceChart};

/// Relative step of every finite difference taken by the oracles.
pub(crate) const ORACLE_STEP: f64 = 1e-5;

/// `‖H J H − det(H) J‖_max` for symmetric `H`.
pub fn hjh_identity<T: Real>(h: &Mat2<T>) -> Result<T> {
    let scale = mat2_max_abs(h);
    if (h[0][1] - h[1][0]).abs() > T::lit(8.0) * T::epsilon() * scale {
        return Err(Error::NonSymmetric);
    }
    let j = j_flat();
    let hjh = mat2_mul(&mat2_mul(h, &j), h);
    Ok(mat2_max_abs(&mat2_sub(&hjh, &mat2_scale(&j, mat2_det(h)))))
}

/// `∂2(k1√a11) − ∂1(k2√a22) − √(a11a22)·K` at `x`.
///
/// The derivatives are central differences of the jet's `k1`, `k2` fields, so
/// the check ties the geodesic curvatures to the curvature formula.
pub fn lemma2_residual<T: Real>(chart: &SurfaceChart<T>, x: Vec2<T>) -> Result<T> {
    if !chart.is_orthogonal() {
        return Err(Error::NonOrthogonalChart);
    }
    let jet = geometry_jet(chart, x)?;
    let x = jet.x;
    let f = |p: Vec2<T>, i: usize| -> Result<T> {
        let j = geometry_jet_unchecked(chart, p)?;
        Ok(if i == 0 {
            j.k1 * j.a11.sqrt()
        } else {
            j.k2 * j.a22.sqrt()
        })
    };
    let d2f1 = try_central_diff(|s| f([x[0], s], 0), x[1], scaled_step(ORACLE_STEP, x[1]))?;
    let d1f2 = try_central_diff(|s| f([s, x[1]], 1), x[0], scaled_step(ORACLE_STEP, x[0]))?;
    Ok(d2f1 - d1f2 - jet.area_factor() * jet.gaussian_curvature)
}

/// Largest deviation between the declared metric and the pullback
/// `⟨∂_i r, ∂_j r⟩` of the embedding, with tangents by central differences.
pub fn pullback_residual<T: Real>(chart: &SurfaceChart<T>, x: Vec2<T>) -> Result<T> {
    let x = chart.domain().check(x)?;
    chart.embedding(x).ok_or(Error::MissingEmbedding)?;
    let mut tangents = [[T::zero(); 3]; 2];
    for (axis, t) in tangents.iter_mut().enumerate() {
        let h = scaled_step(ORACLE_STEP, x[axis]);
        for (c, tc) in t.iter_mut().enumerate() {
            *tc = try_central_diff(
                |s| {
                    let mut p = x;
                    p[axis] = s;
                    chart
                        .embedding(p)
                        .map(|r| r[c])
                        .ok_or(Error::MissingEmbedding)
                },
                x[axis],
                h,
            )?;
        }
    }
    let g = chart.metric(x);
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            let dot = (0..3).fold(T::zero(), |acc, c| acc + tangents[i][c] * tangents[j][c]);
            worst = worst.max((dot - g[i][j]).abs());
        }
    }
    Ok(worst)
}

/// `|det S − K|` at `x` for an embedded chart.
pub fn shape_determinant_residual<T: Real>(chart: &SurfaceChart<T>, x: Vec2<T>) -> Result<T> {
    let jet = geometry_jet(chart, x)?;
    let s = jet.shape_operator.ok_or(Error::MissingEmbedding)?;
    Ok((mat2_det(&s) - jet.gaussian_curvature).abs())
}
