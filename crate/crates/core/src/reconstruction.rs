//! Fifth-order WENO interface reconstruction from cell averages.

use crate::mapping::{apply_mapping, MappingContext, MappingKind, OPTIMAL_WEIGHTS};

/// Regularization of the JS weights.
pub const WENO_EPSILON: f64 = 1e-40;

/// Five consecutive cell averages `(ū_{j-2}, ..., ū_{j+2})` for the
/// left-biased value at `x_{j+1/2}`.
pub type StencilWindow = [f64; 5];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessData {
    pub beta: [f64; 3],
    pub omega_js: [f64; 3],
}

impl SmoothnessData {
    pub fn of(w: &StencilWindow) -> Self {
        let beta = smoothness_indicators(w);
        Self {
            beta,
            omega_js: js_weights(&beta, WENO_EPSILON),
        }
    }

    pub fn context(&self) -> MappingContext {
        MappingContext::new(self.beta, self.omega_js)
    }
}

/// Third-order candidate values on the three substencils.
#[inline]
pub fn candidate_values(w: &StencilWindow) -> [f64; 3] {
    let [a, b, c, d, e] = *w;
    const SIXTH: f64 = 1.0 / 6.0;
    [
        (2.0 * a - 7.0 * b + 11.0 * c) * SIXTH,
        (-b + 5.0 * c + 2.0 * d) * SIXTH,
        (2.0 * c + 5.0 * d - e) * SIXTH,
    ]
}

#[inline]
pub fn smoothness_indicators(w: &StencilWindow) -> [f64; 3] {
    let [a, b, c, d, e] = *w;
    let sq = |x: f64| x * x;
    [
        13.0 / 12.0 * sq(a - 2.0 * b + c) + 0.25 * sq(a - 4.0 * b + 3.0 * c),
        13.0 / 12.0 * sq(b - 2.0 * c + d) + 0.25 * sq(b - d),
        13.0 / 12.0 * sq(c - 2.0 * d + e) + 0.25 * sq(3.0 * c - 4.0 * d + e),
    ]
}

#[inline]
pub fn js_weights(beta: &[f64; 3], epsilon: f64) -> [f64; 3] {
    let alpha = [0, 1, 2].map(|s| {
        let t = epsilon + beta[s];
        OPTIMAL_WEIGHTS[s] / (t * t)
    });
    let inv = 1.0 / (alpha[0] + alpha[1] + alpha[2]);
    [alpha[0] * inv, alpha[1] * inv, alpha[2] * inv]
}

/// Left-biased value `u^-_{j+1/2}` with weights mapped by `kind`.
#[inline]
pub fn reconstruct_interface(w: &StencilWindow, kind: &MappingKind) -> f64 {
    let u = candidate_values(w);
    let smooth = SmoothnessData::of(w);
    let omega = apply_mapping(&smooth.context(), kind);
    omega[0] * u[0] + omega[1] * u[1] + omega[2] * u[2]
}

/// `(u^-, u^+)` at the interface between cells 2 and 3 of a six-cell window
/// `(ū_{j-2}, ..., ū_{j+3})`. The right state is the left-biased formula
/// applied to the mirrored window.
#[inline]
pub fn reconstruct_pair(w: &[f64; 6], kind: &MappingKind) -> (f64, f64) {
    let left = [w[0], w[1], w[2], w[3], w[4]];
    let right = [w[5], w[4], w[3], w[2], w[1]];
    (reconstruct_interface(&left, kind), reconstruct_interface(&right, kind))
}
