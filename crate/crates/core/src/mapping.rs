//! Mapping functions for the nonlinear WENO weights.
//!
//! A mapping takes a JS weight `ω_s` and pulls it toward the optimal weight
//! `d_s`. Implemented here: the identity (WENO-JS), Henrick's mapping
//! (WENO-M), the improved mapping IM(k, A), and the modified adaptive
//! improved family MAIM1..MAIM5 built from a smoothed signum and one of five
//! adaptive control functions.

use std::fmt;

use crate::error::{Error, Result};

/// Optimal linear weights of the fifth-order reconstruction.
pub const OPTIMAL_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

pub const DEFAULT_DELTA: f64 = 1e-6;
pub const DEFAULT_EPS_A: f64 = 1e-10;

/// Adaptive control functions for the exponents of `ω` and `1 - ω` in the
/// MAIM denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AdaptiveControl {
    /// `d_s / (m_s ω + ε_A)` and `(1 - d_s) / (m_s (1 - ω) + ε_A)`.
    Type1 { m: [f64; 3] },
    /// Piecewise `Q k` / `1` / `Q k` split by the control factor of
    /// smoothness `CFS_s`.
    Type2 { q: f64, cfs: [f64; 3] },
    /// Ratio of largest to smallest smoothness indicator.
    Type3,
    /// Ratio of largest to smallest `ω_j / d_j`.
    Type4,
    /// Constant `C`.
    Type5 { c: f64 },
}

impl AdaptiveControl {
    pub fn index(&self) -> u8 {
        match self {
            AdaptiveControl::Type1 { .. } => 1,
            AdaptiveControl::Type2 { .. } => 2,
            AdaptiveControl::Type3 => 3,
            AdaptiveControl::Type4 => 4,
            AdaptiveControl::Type5 { .. } => 5,
        }
    }

    /// Whether the exponents depend on the stencil data rather than on `ω`
    /// alone.
    pub fn is_data_dependent(&self) -> bool {
        matches!(self, AdaptiveControl::Type3 | AdaptiveControl::Type4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaimParams {
    pub k: u32,
    pub a: f64,
    pub delta: f64,
    pub eps_a: f64,
    pub control: AdaptiveControl,
}

impl MaimParams {
    pub fn new(k: u32, a: f64, control: AdaptiveControl) -> Result<Self> {
        let p = Self {
            k,
            a,
            delta: DEFAULT_DELTA,
            eps_a: DEFAULT_EPS_A,
            control,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::config(msg));
        if self.k < 1 {
            return bad("MAIM requires k >= 1".into());
        }
        if !(self.a > 0.0) || !self.a.is_finite() {
            return bad(format!("MAIM requires A > 0, got {}", self.a));
        }
        if !(self.delta > 0.0) {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        if !(self.eps_a > 0.0) {
            return bad(format!("eps_A must be positive, got {}", self.eps_a));
        }
        match self.control {
            AdaptiveControl::Type1 { m } => {
                if m.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
                    return bad(format!("m_s must be positive and finite, got {m:?}"));
                }
            }
            AdaptiveControl::Type2 { q, cfs } => {
                if !(q >= 1.0 / self.k as f64) {
                    return bad(format!("Q must be >= 1/k, got Q = {q}, k = {}", self.k));
                }
                for (s, &c) in cfs.iter().enumerate() {
                    if !(0.0..=OPTIMAL_WEIGHTS[s]).contains(&c) {
                        return bad(format!("CFS_{s} must lie in [0, d_{s}], got {c}"));
                    }
                }
            }
            AdaptiveControl::Type5 { c } => {
                if !(c >= 1.0) {
                    return bad(format!("C must be >= 1, got {c}"));
                }
            }
            AdaptiveControl::Type3 | AdaptiveControl::Type4 => {}
        }
        Ok(())
    }

    pub fn maim1(k: u32, a: f64, m: f64) -> Result<Self> {
        Self::new(k, a, AdaptiveControl::Type1 { m: [m; 3] })
    }

    pub fn maim2(k: u32, a: f64, q: f64, cfs: f64) -> Result<Self> {
        Self::new(k, a, AdaptiveControl::Type2 { q, cfs: [cfs; 3] })
    }

    pub fn maim3(k: u32, a: f64) -> Result<Self> {
        Self::new(k, a, AdaptiveControl::Type3)
    }

    pub fn maim4(k: u32, a: f64) -> Result<Self> {
        Self::new(k, a, AdaptiveControl::Type4)
    }

    pub fn maim5(k: u32, a: f64, c: f64) -> Result<Self> {
        Self::new(k, a, AdaptiveControl::Type5 { c })
    }
}

/// Weight mapping selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MappingKind {
    /// WENO-JS: `g(ω) = ω`.
    Identity,
    /// WENO-M.
    Henrick,
    /// WENO-IM(k, A), `k` even.
    Improved {
        k: u32,
        a: f64,
    },
    Maim(MaimParams),
}

impl MappingKind {
    pub fn improved(k: u32, a: f64) -> Result<Self> {
        if k < 2 || k % 2 != 0 {
            return Err(Error::config(format!("IM requires an even k >= 2, got {k}")));
        }
        if !(a > 0.0) {
            return Err(Error::config(format!("IM requires A > 0, got {a}")));
        }
        Ok(MappingKind::Improved { k, a })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MappingKind::Improved { k, a } => Self::improved(*k, *a).map(|_| ()),
            MappingKind::Maim(p) => p.validate(),
            _ => Ok(()),
        }
    }

    /// WENO-MAIM1(10, 1e-6, 0.06).
    pub fn maim1_default() -> Self {
        MappingKind::Maim(MaimParams::maim1(10, 1e-6, 0.06).expect("valid defaults"))
    }

    /// WENO-MAIM2(2, 0.1, 10, 1e-6).
    pub fn maim2_default() -> Self {
        MappingKind::Maim(MaimParams::maim2(2, 0.1, 10.0, 1e-6).expect("valid defaults"))
    }

    /// WENO-MAIM3(10, 1e-6).
    pub fn maim3_default() -> Self {
        MappingKind::Maim(MaimParams::maim3(10, 1e-6).expect("valid defaults"))
    }

    /// WENO-MAIM4(1, 1e-6).
    pub fn maim4_default() -> Self {
        MappingKind::Maim(MaimParams::maim4(1, 1e-6).expect("valid defaults"))
    }

    /// WENO-MAIM5(2, 1, 1), identical to WENO-M.
    pub fn maim5_default() -> Self {
        MappingKind::Maim(MaimParams::maim5(2, 1.0, 1.0).expect("valid defaults"))
    }

    /// WENO-IM(2, 0.1).
    pub fn improved_default() -> Self {
        MappingKind::Improved { k: 2, a: 0.1 }
    }

    /// Short label such as `MAIM3(10,1e-6)`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MappingKind::Identity => write!(f, "JS"),
            MappingKind::Henrick => write!(f, "M"),
            MappingKind::Improved { k, a } => write!(f, "IM({k},{a:e})"),
            MappingKind::Maim(p) => match p.control {
                AdaptiveControl::Type1 { m } => write!(f, "MAIM1({},{:e},{})", p.k, p.a, m[0]),
                AdaptiveControl::Type2 { q, cfs } => {
                    write!(f, "MAIM2({},{:e},{},{:e})", p.k, p.a, q, cfs[0])
                }
                AdaptiveControl::Type3 => write!(f, "MAIM3({},{:e})", p.k, p.a),
                AdaptiveControl::Type4 => write!(f, "MAIM4({},{:e})", p.k, p.a),
                AdaptiveControl::Type5 { c } => write!(f, "MAIM5({},{:e},{})", p.k, p.a, c),
            },
        }
    }
}

/// Per-interface data the mappings may consult.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingContext {
    pub d: [f64; 3],
    pub beta: [f64; 3],
    pub omega_js: [f64; 3],
}

impl MappingContext {
    pub fn new(beta: [f64; 3], omega_js: [f64; 3]) -> Self {
        Self {
            d: OPTIMAL_WEIGHTS,
            beta,
            omega_js,
        }
    }

    /// Context whose data-dependent exponents are (almost) one: equal
    /// smoothness indicators and optimal JS weights.
    pub fn smooth() -> Self {
        Self::new([1.0; 3], OPTIMAL_WEIGHTS)
    }
}

/// `x^n` by repeated squaring, inlined into the mapping kernels.
#[inline]
fn ipow(mut x: f64, mut n: u32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= x;
        }
        x *= x;
        n >>= 1;
    }
    acc
}

/// Henrick's mapping.
pub fn g_m(omega: f64, d: f64) -> f64 {
    // written as a correction to ω so that 0, d and 1 are reproduced exactly
    omega + omega * (omega - d) * (omega - 1.0) / (d * d + (1.0 - 2.0 * d) * omega)
}

/// Improved mapping of order `k` (even) with amplitude `A`.
pub fn g_im(omega: f64, d: f64, k: u32, a: f64) -> f64 {
    let x = omega - d;
    let xk = ipow(x, k);
    let axk = xk * a;
    // x * (ratio) keeps g(0) = 0 exact
    d + x * (axk / (axk + omega * (1.0 - omega)))
}

/// Smoothed signum: exact sign outside `[-δ, δ]`, a `C^{k+2}` blend inside.
pub fn sg(x: f64, delta: f64, k: u32) -> f64 {
    let ax = x.abs();
    if ax >= delta {
        x.signum()
    } else {
        x / (ipow(delta * delta - x * x, k + 3) + ax)
    }
}

/// Exponents `(f_Ada0, f_Ada1)` of the adaptive control function for stencil
/// `s`, evaluated at weight `omega`.
pub fn f_ada(omega: f64, s: usize, ctx: &MappingContext, params: &MaimParams) -> (f64, f64) {
    let d = ctx.d[s];
    match params.control {
        AdaptiveControl::Type1 { m } => (
            d / (m[s] * omega + params.eps_a),
            (1.0 - d) / (m[s] * (1.0 - omega) + params.eps_a),
        ),
        AdaptiveControl::Type2 { q, cfs } => {
            let c = cfs[s];
            let e = if omega <= c || omega >= 1.0 - (1.0 - d) / d * c {
                q * params.k as f64
            } else {
                1.0
            };
            (e, e)
        }
        AdaptiveControl::Type3 => {
            let e = type3_exponent(&ctx.beta, params.eps_a);
            (e, e)
        }
        AdaptiveControl::Type4 => {
            let e = type4_exponent(&ctx.omega_js, &ctx.d, params.eps_a);
            (e, e)
        }
        AdaptiveControl::Type5 { c } => (c, c),
    }
}

fn type3_exponent(beta: &[f64; 3], eps_a: f64) -> f64 {
    let max = beta[0].max(beta[1]).max(beta[2]);
    let min = beta[0].min(beta[1]).min(beta[2]);
    max / (min + eps_a)
}

fn type4_exponent(omega: &[f64; 3], d: &[f64; 3], eps_a: f64) -> f64 {
    let r = [omega[0] / d[0], omega[1] / d[1], omega[2] / d[2]];
    let max = r[0].max(r[1]).max(r[2]);
    let min = r[0].min(r[1]).min(r[2]);
    max / (min + eps_a)
}

/// Amplitude factor of the MAIM mapping: `A` for even `k`, `A sg(ω - d_s)`
/// for odd `k`.
pub fn f_maim(omega: f64, d: f64, params: &MaimParams) -> f64 {
    if params.k % 2 == 0 {
        params.a
    } else {
        params.a * sg(omega - d, params.delta, params.k)
    }
}

/// `ω^e0 (1 - ω)^e1` with `0^0 = 1` and `0^e = 0` for `e > 0`.
fn endpoint_product(omega: f64, e0: f64, e1: f64) -> f64 {
    let one_minus = 1.0 - omega;
    if e0 == e1 {
        if e0 == 1.0 {
            omega * one_minus
        } else {
            (omega * one_minus).powf(e0)
        }
    } else {
        omega.powf(e0) * one_minus.powf(e1)
    }
}

/// MAIM mapping of `omega` for stencil `s` with exponents already evaluated.
fn g_maim_with(omega: f64, d: f64, params: &MaimParams, e0: f64, e1: f64) -> f64 {
    let x = omega - d;
    let f = f_maim(omega, d, params);
    let fxk = f * ipow(x, params.k);
    let den = fxk + endpoint_product(omega, e0, e1);
    if den == 0.0 {
        // only reachable through underflow at the endpoints
        return omega;
    }
    d + x * (fxk / den)
}

/// Modified adaptive improved mapping of `omega` on stencil `s`.
pub fn g_maim(omega: f64, s: usize, params: &MaimParams, ctx: &MappingContext) -> f64 {
    let (e0, e1) = f_ada(omega, s, ctx, params);
    g_maim_with(omega, ctx.d[s], params, e0, e1)
}

/// Apply `kind` to a single weight of stencil `s`.
pub fn map_weight(kind: &MappingKind, omega: f64, s: usize, ctx: &MappingContext) -> f64 {
    let d = ctx.d[s];
    match kind {
        MappingKind::Identity => omega,
        MappingKind::Henrick => g_m(omega, d),
        MappingKind::Improved { k, a } => g_im(omega, d, *k, *a),
        MappingKind::Maim(p) => g_maim(omega, s, p, ctx),
    }
}

/// Mapped and renormalized weights `α_s / Σ α_l`, `α_s = g_s(ω_s^JS)`.
pub fn apply_mapping(ctx: &MappingContext, kind: &MappingKind) -> [f64; 3] {
    let w = ctx.omega_js;
    let alpha = match kind {
        MappingKind::Identity => return w,
        MappingKind::Maim(p) if p.control.is_data_dependent() => {
            // exponent is shared by all three stencils
            let e = match p.control {
                AdaptiveControl::Type3 => type3_exponent(&ctx.beta, p.eps_a),
                _ => type4_exponent(&ctx.omega_js, &ctx.d, p.eps_a),
            };
            let g = |s: usize| g_maim_with(w[s], ctx.d[s], p, e, e);
            [g(0), g(1), g(2)]
        }
        MappingKind::Henrick => {
            let g = |s: usize| g_m(w[s], ctx.d[s]);
            [g(0), g(1), g(2)]
        }
        _ => {
            let g = |s: usize| map_weight(kind, w[s], s, ctx);
            [g(0), g(1), g(2)]
        }
    };
    let inv = 1.0 / (alpha[0] + alpha[1] + alpha[2]);
    [alpha[0] * inv, alpha[1] * inv, alpha[2] * inv]
}
