//! Fixed-size dense linear algebra for the 4-parameter Newton step.

pub(crate) type Vec4 = [f64; 4];
pub(crate) type Mat4 = [[f64; 4]; 4];

pub(crate) fn outer_add(m: &mut Mat4, v: &Vec4, weight: f64) {
    for i in 0..4 {
        let wi = weight * v[i];
        for j in 0..=i {
            let x = wi * v[j];
            m[i][j] += x;
            if j != i {
                m[j][i] += x;
            }
        }
    }
}

/// Solves `a x = b` for symmetric positive definite `a` by Cholesky.
///
/// Returns `None` when `a` is not numerically positive definite.
pub(crate) fn cholesky_solve(a: &Mat4, b: &Vec4) -> Option<Vec4> {
    let mut l = [[0.0f64; 4]; 4];
    let scale = (0..4).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    for j in 0..4 {
        let mut d = a[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if !(d > scale * 1e-14) {
            return None;
        }
        let djj = crate::fmath::sqrt(d);
        l[j][j] = djj;
        for i in (j + 1)..4 {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / djj;
        }
    }
    let mut y = [0.0; 4];
    for i in 0..4 {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = [0.0; 4];
    for i in (0..4).rev() {
        let mut s = y[i];
        for k in (i + 1)..4 {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
