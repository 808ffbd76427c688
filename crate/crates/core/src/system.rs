//! Governing systems, global Lax-Friedrichs flux, Roe-averaged
//! eigenstructure and characteristic-wise reconstruction.

use crate::error::{Error, Result};
use crate::field::{CellField, Mesh};
use crate::mapping::MappingKind;
use crate::reconstruction::{reconstruct_interface, reconstruct_pair};

pub const GAMMA: f64 = 1.4;

/// Largest number of conservative components of any system.
pub const MAX_COMPONENTS: usize = 4;

pub type State = [f64; MAX_COMPONENTS];
type Matrix = [[f64; MAX_COMPONENTS]; MAX_COMPONENTS];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemKind {
    Advection1D { speed: f64 },
    Euler1D,
    Euler2D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

impl Direction {
    pub fn axis(self) -> usize {
        match self {
            Direction::X => 0,
            Direction::Y => 1,
        }
    }
}

impl SystemKind {
    pub fn components(&self) -> usize {
        match self {
            SystemKind::Advection1D { .. } => 1,
            SystemKind::Euler1D => 3,
            SystemKind::Euler2D => 4,
        }
    }

    pub fn dimensions(&self) -> usize {
        match self {
            SystemKind::Euler2D => 2,
            _ => 1,
        }
    }

    pub fn is_euler(&self) -> bool {
        !matches!(self, SystemKind::Advection1D { .. })
    }
}

pub fn to_state(u: &[f64]) -> State {
    let mut s = [0.0; MAX_COMPONENTS];
    s[..u.len()].copy_from_slice(u);
    s
}

/// Conservative state from primitive `(ρ, u, p)`.
pub fn euler1d_conservative(rho: f64, u: f64, p: f64) -> [f64; 3] {
    [rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u]
}

/// Conservative state from primitive `(ρ, u, v, p)`.
pub fn euler2d_conservative(rho: f64, u: f64, v: f64, p: f64) -> [f64; 4] {
    [rho, rho * u, rho * v, p / (GAMMA - 1.0) + 0.5 * rho * (u * u + v * v)]
}

/// Pressure of an Euler state (1D or 2D by length).
pub fn pressure(u: &[f64]) -> f64 {
    match u.len() {
        3 => (GAMMA - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]),
        4 => (GAMMA - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]),
        n => panic!("pressure of a {n}-component state"),
    }
}

pub fn sound_speed(rho: f64, p: f64) -> f64 {
    (GAMMA * p / rho).sqrt()
}

/// Swap the two momentum components of a 2D state so that the `y` direction
/// can reuse the `x` formulas.
#[inline]
fn rotate(u: &State, kind: SystemKind, dir: Direction) -> State {
    let mut r = *u;
    if kind == SystemKind::Euler2D && dir == Direction::Y {
        r.swap(1, 2);
    }
    r
}

#[inline]
fn flux_x(kind: SystemKind, u: &State) -> State {
    match kind {
        SystemKind::Advection1D { speed } => [speed * u[0], 0.0, 0.0, 0.0],
        SystemKind::Euler1D => {
            let vel = u[1] / u[0];
            let p = (GAMMA - 1.0) * (u[2] - 0.5 * u[1] * vel);
            [u[1], u[1] * vel + p, vel * (u[2] + p), 0.0]
        }
        SystemKind::Euler2D => {
            let (vu, vv) = (u[1] / u[0], u[2] / u[0]);
            let p = (GAMMA - 1.0) * (u[3] - 0.5 * (u[1] * vu + u[2] * vv));
            [u[1], u[1] * vu + p, u[1] * vv, vu * (u[3] + p)]
        }
    }
}

#[inline]
fn flux_in(kind: SystemKind, u: &State, dir: Direction) -> State {
    let r = rotate(u, kind, dir);
    let f = flux_x(kind, &r);
    rotate(&f, kind, dir)
}

/// Analytic flux of `u` in direction `dir`.
pub fn physical_flux(kind: SystemKind, u: &[f64], dir: Direction) -> Result<Vec<f64>> {
    let m = kind.components();
    if u.len() != m {
        return Err(Error::Domain(format!("expected {m} components, got {}", u.len())));
    }
    if kind.is_euler() && !(u[0] > 0.0) {
        return Err(Error::Domain(format!("nonpositive density {}", u[0])));
    }
    Ok(flux_in(kind, &to_state(u), dir)[..m].to_vec())
}

/// `½ [f(a) + f(b) - α (b - a)]`.
pub fn lax_friedrichs(kind: SystemKind, a: &[f64], b: &[f64], alpha: f64, dir: Direction) -> Vec<f64> {
    let m = kind.components();
    let f = lf_state(kind, &to_state(a), &to_state(b), alpha, dir);
    f[..m].to_vec()
}

#[inline]
fn lf_state(kind: SystemKind, a: &State, b: &State, alpha: f64, dir: Direction) -> State {
    let fa = flux_in(kind, a, dir);
    let fb = flux_in(kind, b, dir);
    let mut out = [0.0; MAX_COMPONENTS];
    for c in 0..kind.components() {
        out[c] = 0.5 * (fa[c] + fb[c] - alpha * (b[c] - a[c]));
    }
    out
}

/// Global wave-speed bound per direction plus the extremes seen on the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub x: f64,
    pub y: f64,
    pub min_density: f64,
    pub min_pressure: f64,
}

/// `max |f'(u)|` over the active interior cells. Fails with
/// [`Error::Domain`] on a nonpositive density or pressure, or on
/// non-finite data.
pub fn global_alpha(kind: SystemKind, field: &CellField) -> Result<WaveSpeeds> {
    let mut ws = WaveSpeeds {
        x: 0.0,
        y: 0.0,
        min_density: f64::INFINITY,
        min_pressure: f64::INFINITY,
    };
    let mut bad: Option<String> = None;
    match kind {
        SystemKind::Advection1D { speed } => {
            ws.x = speed.abs();
            field.for_each_active(|u| {
                if bad.is_none() && !u[0].is_finite() {
                    bad = Some(format!("non-finite value {}", u[0]));
                }
            });
        }
        _ => field.for_each_active(|u| {
            if bad.is_some() {
                return;
            }
            let rho = u[0];
            let p = pressure(u);
            if !(rho > 0.0) || !(p > 0.0) || !rho.is_finite() || !p.is_finite() {
                bad = Some(format!("density {rho}, pressure {p}"));
                return;
            }
            let c = sound_speed(rho, p);
            ws.x = ws.x.max((u[1] / rho).abs() + c);
            if u.len() == 4 {
                ws.y = ws.y.max((u[2] / rho).abs() + c);
            }
            ws.min_density = ws.min_density.min(rho);
            ws.min_pressure = ws.min_pressure.min(p);
        }),
    }
    match bad {
        Some(reason) => Err(Error::Domain(reason)),
        None => Ok(ws),
    }
}

/// Left/right eigenvectors of the flux Jacobian at an interface state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenBasis {
    pub components: usize,
    /// Rows are left eigenvectors.
    pub left: Matrix,
    /// Columns are right eigenvectors.
    pub right: Matrix,
    pub eigenvalues: State,
    /// The Roe average was unusable and the arithmetic mean was taken.
    pub fallback: bool,
}

impl EigenBasis {
    fn identity(m: usize, lambda: f64) -> Self {
        let mut left = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
        for (i, row) in left.iter_mut().enumerate().take(m) {
            row[i] = 1.0;
        }
        Self {
            components: m,
            left,
            right: left,
            eigenvalues: [lambda, 0.0, 0.0, 0.0],
            fallback: false,
        }
    }

    #[inline]
    pub fn to_characteristic(&self, u: &State) -> State {
        mat_vec(&self.left, u, self.components)
    }

    #[inline]
    pub fn to_conservative(&self, w: &State) -> State {
        mat_vec(&self.right, w, self.components)
    }

    /// `L R`, which should be the identity.
    pub fn product_lr(&self) -> Matrix {
        mat_mul(&self.left, &self.right, self.components)
    }

    /// `R Λ L`, the flux Jacobian at the averaged state.
    pub fn jacobian(&self) -> Matrix {
        let m = self.components;
        let mut rl = self.right;
        for row in rl.iter_mut().take(m) {
            for (j, v) in row.iter_mut().enumerate().take(m) {
                *v *= self.eigenvalues[j];
            }
        }
        mat_mul(&rl, &self.left, m)
    }
}

#[inline]
fn mat_vec(a: &Matrix, v: &State, m: usize) -> State {
    let mut out = [0.0; MAX_COMPONENTS];
    for i in 0..m {
        let mut s = 0.0;
        for j in 0..m {
            s += a[i][j] * v[j];
        }
        out[i] = s;
    }
    out
}

fn mat_mul(a: &Matrix, b: &Matrix, m: usize) -> Matrix {
    let mut out = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
    for i in 0..m {
        for j in 0..m {
            out[i][j] = (0..m).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Roe-averaged `(u, v, H, c)` of two Euler states already rotated so the
/// normal velocity is component 1. Falls back to the arithmetic mean of the
/// primitive states when the averaged sound speed is not real.
fn roe_average(kind: SystemKind, l: &State, r: &State) -> ([f64; 4], bool) {
    let two_d = kind == SystemKind::Euler2D;
    let energy = if two_d { 3 } else { 2 };
    let prim = |u: &State| {
        let rho = u[0];
        let vu = u[1] / rho;
        let vv = if two_d { u[2] / rho } else { 0.0 };
        let p = (GAMMA - 1.0) * (u[energy] - 0.5 * rho * (vu * vu + vv * vv));
        (rho, vu, vv, p, (u[energy] + p) / rho)
    };
    let (rl, ul, vl, pl, hl) = prim(l);
    let (rr, ur, vr, pr, hr) = prim(r);
    let (sl, sr) = (rl.sqrt(), rr.sqrt());
    let w = 1.0 / (sl + sr);
    let u = (sl * ul + sr * ur) * w;
    let v = (sl * vl + sr * vr) * w;
    let h = (sl * hl + sr * hr) * w;
    let c2 = (GAMMA - 1.0) * (h - 0.5 * (u * u + v * v));
    if c2 > 0.0 && c2.is_finite() {
        return ([u, v, h, c2.sqrt()], false);
    }
    let (rho, u, v, p) = (0.5 * (rl + rr), 0.5 * (ul + ur), 0.5 * (vl + vr), 0.5 * (pl + pr));
    let c = sound_speed(rho, p.abs().max(f64::MIN_POSITIVE));
    let h = c * c / (GAMMA - 1.0) + 0.5 * (u * u + v * v);
    ([u, v, h, c], true)
}

fn euler_basis_x(kind: SystemKind, l: &State, r: &State) -> EigenBasis {
    let ([u, v, h, c], fallback) = roe_average(kind, l, r);
    let b1 = (GAMMA - 1.0) / (c * c);
    let q2 = u * u + v * v;
    let b2 = 0.5 * b1 * q2;
    let mut left = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
    let mut right = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];
    match kind {
        SystemKind::Euler1D => {
            right[0] = [1.0, 1.0, 1.0, 0.0];
            right[1] = [u - c, u, u + c, 0.0];
            right[2] = [h - u * c, 0.5 * u * u, h + u * c, 0.0];
            left[0] = [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1, 0.0];
            left[1] = [1.0 - b2, b1 * u, -b1, 0.0];
            left[2] = [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1, 0.0];
            EigenBasis {
                components: 3,
                left,
                right,
                eigenvalues: [u - c, u, u + c, 0.0],
                fallback,
            }
        }
        SystemKind::Euler2D => {
            right[0] = [1.0, 1.0, 0.0, 1.0];
            right[1] = [u - c, u, 0.0, u + c];
            right[2] = [v, v, 1.0, v];
            right[3] = [h - u * c, 0.5 * q2, v, h + u * c];
            left[0] = [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1];
            left[1] = [1.0 - b2, b1 * u, b1 * v, -b1];
            left[2] = [-v, 0.0, 1.0, 0.0];
            left[3] = [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1];
            EigenBasis {
                components: 4,
                left,
                right,
                eigenvalues: [u - c, u, u, u + c],
                fallback,
            }
        }
        SystemKind::Advection1D { .. } => unreachable!(),
    }
}

/// Eigenbasis of the flux Jacobian in direction `dir` at the Roe average of
/// two states.
pub fn eigen_basis(kind: SystemKind, left: &[f64], right: &[f64], dir: Direction) -> EigenBasis {
    eigen_basis_state(kind, &to_state(left), &to_state(right), dir)
}

fn eigen_basis_state(kind: SystemKind, l: &State, r: &State, dir: Direction) -> EigenBasis {
    match kind {
        SystemKind::Advection1D { speed } => EigenBasis::identity(1, speed),
        SystemKind::Euler1D => euler_basis_x(kind, l, r),
        SystemKind::Euler2D => {
            if dir == Direction::X {
                return euler_basis_x(kind, l, r);
            }
            let mut b = euler_basis_x(kind, &rotate(l, kind, dir), &rotate(r, kind, dir));
            // conjugate by the momentum swap: L P and P R
            for row in b.left.iter_mut() {
                row.swap(1, 2);
            }
            b.right.swap(1, 2);
            b
        }
    }
}

/// Reconstructed `(U^-, U^+)` at the interface between cells 2 and 3 of a
/// six-cell window, component-wise in characteristic variables. Also reports
/// whether the eigenbasis fell back to the arithmetic mean.
pub fn characteristic_interface_states(
    kind: SystemKind,
    window: &[State; 6],
    mapping: &MappingKind,
    dir: Direction,
) -> (State, State, bool) {
    let m = kind.components();
    if m == 1 {
        let w = window.map(|s| s[0]);
        let (a, b) = reconstruct_pair(&w, mapping);
        return ([a, 0.0, 0.0, 0.0], [b, 0.0, 0.0, 0.0], false);
    }
    let basis = eigen_basis_state(kind, &window[2], &window[3], dir);
    let (minus, plus) = match m {
        3 => project_and_reconstruct::<3>(&basis, |k| &window[k][..3], mapping),
        _ => project_and_reconstruct::<4>(&basis, |k| &window[k][..4], mapping),
    };
    (
        basis.to_conservative(&minus),
        basis.to_conservative(&plus),
        basis.fallback,
    )
}

/// Characteristic projections of six cells followed by component-wise
/// reconstruction, returning characteristic `(W^-, W^+)`.
#[inline(always)]
fn project_and_reconstruct<'a, const M: usize>(
    basis: &EigenBasis,
    cell: impl Fn(usize) -> &'a [f64],
    mapping: &MappingKind,
) -> (State, State) {
    let mut chars = [[0.0; 6]; M];
    for k in 0..6 {
        let u = cell(k);
        for (c, row) in chars.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..M {
                s += basis.left[c][j] * u[j];
            }
            row[k] = s;
        }
    }
    let mut minus = [0.0; MAX_COMPONENTS];
    let mut plus = [0.0; MAX_COMPONENTS];
    for c in 0..M {
        let (a, b) = reconstruct_pair(&chars[c], mapping);
        minus[c] = a;
        plus[c] = b;
    }
    (minus, plus)
}

fn euler_line_fluxes<const M: usize>(
    kind: SystemKind,
    mapping: &MappingKind,
    dir: Direction,
    line: &[f64],
    n: usize,
    alpha: f64,
    fluxes: &mut [f64],
) -> usize {
    let mut fallbacks = 0;
    for i in 0..=n {
        let cell = |k: usize| &line[(i + k) * M..(i + k + 1) * M];
        let basis = eigen_basis_state(kind, &to_state(cell(2)), &to_state(cell(3)), dir);
        fallbacks += basis.fallback as usize;
        let (minus, plus) = project_and_reconstruct::<M>(&basis, cell, mapping);
        let a = basis.to_conservative(&minus);
        let b = basis.to_conservative(&plus);
        let f = lf_state(kind, &a, &b, alpha, dir);
        fluxes[i * M..(i + 1) * M].copy_from_slice(&f[..M]);
    }
    fallbacks
}

/// Numerical fluxes at the `n + 1` faces of a padded line of `n` cells
/// (three ghosts each side, `m` components per cell, contiguous). Returns
/// the number of eigenbasis fallbacks.
pub fn line_fluxes(
    kind: SystemKind,
    mapping: &MappingKind,
    dir: Direction,
    line: &[f64],
    n: usize,
    alpha: f64,
    fluxes: &mut [f64],
) -> usize {
    let m = kind.components();
    debug_assert!(line.len() >= (n + 6) * m);
    debug_assert!(fluxes.len() >= (n + 1) * m);
    if m == 1 {
        let SystemKind::Advection1D { speed } = kind else {
            unreachable!()
        };
        // With α = |speed| the dissipation cancels the downwind state, so only
        // the upwind reconstruction is needed.
        let upwind_only = alpha == speed.abs();
        for i in 0..=n {
            let w = &line[i..i + 6];
            fluxes[i] = if upwind_only && speed >= 0.0 {
                speed * reconstruct_interface(&[w[0], w[1], w[2], w[3], w[4]], mapping)
            } else if upwind_only {
                speed * reconstruct_interface(&[w[5], w[4], w[3], w[2], w[1]], mapping)
            } else {
                let (a, b) = reconstruct_pair(&[w[0], w[1], w[2], w[3], w[4], w[5]], mapping);
                0.5 * (speed * a + speed * b - alpha * (b - a))
            };
        }
        return 0;
    }
    match m {
        3 => euler_line_fluxes::<3>(kind, mapping, dir, line, n, alpha, fluxes),
        _ => euler_line_fluxes::<4>(kind, mapping, dir, line, n, alpha, fluxes),
    }
}

/// Dimension of the field's mesh must match the system.
pub(crate) fn check_mesh(kind: SystemKind, field: &CellField) -> Result<()> {
    let ok = match field.mesh() {
        Mesh::Line(_) => kind.dimensions() == 1,
        Mesh::Plane(_) => kind.dimensions() == 2,
    } && field.components() == kind.components();
    if ok {
        Ok(())
    } else {
        Err(Error::config(format!(
            "field with {} components on a {} mesh does not match {kind:?}",
            field.components(),
            if field.mesh().is_2d() { "2D" } else { "1D" }
        )))
    }
}
