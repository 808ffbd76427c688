//! Method-of-lines residual, SSP-RK3 stepping and CFL control.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{apply_rule, BoundaryCondition, CellField, GhostRule, Grid2D, Mesh, GHOST};
use crate::mapping::MappingKind;
use crate::system::{check_mesh, global_alpha, line_fluxes, Direction, SystemKind, WaveSpeeds};

/// Courant number selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CflRule {
    FixedCourant(f64),
    /// `ν = Δx^{2/3}`, keeping the third-order time error below the
    /// fifth-order spatial error.
    AccuracyScaled,
}

impl CflRule {
    pub fn courant(&self, dx: f64) -> f64 {
        match *self {
            CflRule::FixedCourant(nu) => nu,
            CflRule::AccuracyScaled => dx.powf(2.0 / 3.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CflRule::FixedCourant(nu) if !(nu > 0.0 && nu <= 1.0) => {
                Err(Error::config(format!("Courant number {nu} outside (0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub t: f64,
    pub dt: f64,
    pub alpha_x: f64,
    pub alpha_y: f64,
    /// Eigenbasis fallbacks over the three stages.
    pub fallbacks: usize,
    pub min_density: f64,
    pub min_pressure: f64,
}

/// A system, a weight mapping and boundary conditions: everything needed
/// to evaluate `dū/dt`.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub system: SystemKind,
    pub mapping: MappingKind,
    pub bc: BoundaryCondition,
}

/// Output of one residual evaluation.
#[derive(Debug, Clone)]
pub struct Residual {
    /// Same layout as the field data; ghosts and blanked cells are zero.
    pub values: Vec<f64>,
    pub speeds: WaveSpeeds,
    pub fallbacks: usize,
}

impl Discretization {
    pub fn new(system: SystemKind, mapping: MappingKind, bc: BoundaryCondition) -> Result<Self> {
        mapping.validate()?;
        bc.validate()?;
        Ok(Self { system, mapping, bc })
    }

    /// `-(F_{j+1/2} - F_{j-1/2}) / Δx`, summed over directions in 2D. Fills
    /// the ghosts of `field` at time `t` and refreshes the global wave speed.
    pub fn residual(&self, field: &mut CellField, t: f64) -> Result<Residual> {
        check_mesh(self.system, field)?;
        let speeds = global_alpha(self.system, field)?;
        field.fill_ghosts(&self.bc, t)?;
        let mut values = vec![0.0; field.data().len()];
        let fallbacks = match *field.mesh() {
            Mesh::Line(g) => {
                let m = field.components();
                let n = g.n_cells;
                let mut fluxes = vec![0.0; (n + 1) * m];
                let fb = self.fluxes(Direction::X, field.data(), n, speeds.x, &mut fluxes);
                let inv = 1.0 / g.dx;
                for j in 0..n {
                    for c in 0..m {
                        values[(j + GHOST) * m + c] = -(fluxes[(j + 1) * m + c] - fluxes[j * m + c]) * inv;
                    }
                }
                fb
            }
            Mesh::Plane(g) => {
                self.sweep_x(field, &g, speeds.x, &mut values) + self.sweep_y(field, &g, speeds.y, &mut values)
            }
        };
        Ok(Residual {
            values,
            speeds,
            fallbacks,
        })
    }

    fn fluxes(&self, dir: Direction, line: &[f64], n: usize, alpha: f64, out: &mut [f64]) -> usize {
        line_fluxes(self.system, &self.mapping, dir, line, n, alpha, out)
    }

    /// Flux differences along one padded line segment of `len` cells whose
    /// ghosts are already in place.
    fn segment(&self, dir: Direction, buf: &[f64], len: usize, alpha: f64, h: f64, m: usize) -> (Vec<f64>, usize) {
        let mut fluxes = vec![0.0; (len + 1) * m];
        let fb = self.fluxes(dir, buf, len, alpha, &mut fluxes);
        let inv = 1.0 / h;
        let diff = (0..len * m).map(|k| -(fluxes[k + m] - fluxes[k]) * inv).collect();
        (diff, fb)
    }

    fn sweep_x(&self, field: &CellField, g: &Grid2D, alpha: f64, out: &mut [f64]) -> usize {
        let m = field.components();
        let (nx, ny) = (g.x.n_cells, g.y.n_cells);
        let row_len = g.x.padded() * m;
        out.par_chunks_mut(row_len)
            .enumerate()
            .filter(|(pj, _)| *pj >= GHOST && *pj < ny + GHOST)
            .map(|(pj, row)| {
                let j = pj - GHOST;
                let blocked = g.blanked.filter(|b| j >= b.j0 && j < b.j1).map(|b| (b.i0, b.i1));
                let mut fb = 0;
                for (a, b, lo_wall, hi_wall) in segments(nx, blocked) {
                    let len = b - a;
                    let mut buf = vec![0.0; (len + 2 * GHOST) * m];
                    for k in 0..len + 2 * GHOST {
                        let i = a as isize - GHOST as isize + k as isize;
                        if i >= -(GHOST as isize) && i < (nx + GHOST) as isize {
                            buf[k * m..(k + 1) * m].copy_from_slice(field.cell2(i, j as isize));
                        }
                    }
                    mirror_walls(&mut buf, len, m, Some(1), lo_wall, hi_wall);
                    let (diff, f) = self.segment(Direction::X, &buf, len, alpha, g.x.dx, m);
                    fb += f;
                    let start = (a + GHOST) * m;
                    row[start..start + len * m].copy_from_slice(&diff);
                }
                fb
            })
            .sum()
    }

    fn sweep_y(&self, field: &CellField, g: &Grid2D, alpha: f64, out: &mut [f64]) -> usize {
        let m = field.components();
        let (nx, ny) = (g.x.n_cells, g.y.n_cells);
        let columns: Vec<(usize, Vec<(usize, Vec<f64>)>, usize)> = (0..nx)
            .into_par_iter()
            .map(|i| {
                let blocked = g.blanked.filter(|b| i >= b.i0 && i < b.i1).map(|b| (b.j0, b.j1));
                let mut fb = 0;
                let mut parts = Vec::new();
                for (a, b, lo_wall, hi_wall) in segments(ny, blocked) {
                    let len = b - a;
                    let mut buf = vec![0.0; (len + 2 * GHOST) * m];
                    for k in 0..len + 2 * GHOST {
                        let j = a as isize - GHOST as isize + k as isize;
                        if j >= -(GHOST as isize) && j < (ny + GHOST) as isize {
                            buf[k * m..(k + 1) * m].copy_from_slice(field.cell2(i as isize, j));
                        }
                    }
                    mirror_walls(&mut buf, len, m, Some(2), lo_wall, hi_wall);
                    let (diff, f) = self.segment(Direction::Y, &buf, len, alpha, g.y.dx, m);
                    fb += f;
                    parts.push((a, diff));
                }
                (i, parts, fb)
            })
            .collect();
        let nxp = g.x.padded();
        let mut fallbacks = 0;
        for (i, parts, fb) in columns {
            fallbacks += fb;
            for (a, diff) in parts {
                for (k, cell) in diff.chunks(m).enumerate() {
                    let o = ((a + k + GHOST) * nxp + i + GHOST) * m;
                    for c in 0..m {
                        out[o + c] += cell[c];
                    }
                }
            }
        }
        fallbacks
    }
}

/// Active runs `[a, b)` of a line of `n` cells with an optional blocked run
/// `[b0, b1)`, flagging ends that touch the blocked cells.
fn segments(n: usize, blocked: Option<(usize, usize)>) -> Vec<(usize, usize, bool, bool)> {
    match blocked {
        None => vec![(0, n, false, false)],
        Some((b0, b1)) => {
            let mut v = Vec::with_capacity(2);
            if b0 > 0 {
                v.push((0, b0, false, true));
            }
            if b1 < n {
                v.push((b1, n, true, false));
            }
            v
        }
    }
}

fn mirror_walls(buf: &mut [f64], len: usize, m: usize, normal: Option<usize>, lo: bool, hi: bool) {
    let normal = normal.filter(|&c| c < m);
    if lo {
        apply_rule(buf, m, normal, &GhostRule::Reflective, GHOST, true, len);
    }
    if hi {
        apply_rule(buf, m, normal, &GhostRule::Reflective, GHOST + len - 1, false, len);
    }
}

/// One SSP-RK3 step of `du/dt = L(u, t)`:
/// `u1 = u + dt L(u)`, `u2 = 3/4 u + 1/4 u1 + 1/4 dt L(u1)`,
/// `u_next = 1/3 u + 2/3 u2 + 2/3 dt L(u2)`.
pub fn rk3_step<F>(u: &[f64], t: f64, dt: f64, mut l: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64], f64) -> Result<Vec<f64>>,
{
    let l0 = l(u, t)?;
    let u1: Vec<f64> = u.iter().zip(&l0).map(|(a, r)| a + dt * r).collect();
    let l1 = l(&u1, t + dt)?;
    let u2: Vec<f64> = u
        .iter()
        .zip(&u1)
        .zip(&l1)
        .map(|((a, b), r)| (3.0 * a + (b + dt * r)) * 0.25)
        .collect();
    let l2 = l(&u2, t + 0.5 * dt)?;
    // dividing once by 3 avoids the drift of the inexact weights 1/3 + 2/3
    Ok(u.iter()
        .zip(&u2)
        .zip(&l2)
        .map(|((a, b), r)| (a + 2.0 * (b + dt * r)) / 3.0)
        .collect())
}

/// Stable step for the given wave speeds.
pub fn time_step(mesh: &Mesh, cfl: CflRule, speeds: &WaveSpeeds) -> f64 {
    match mesh {
        Mesh::Line(g) => cfl.courant(g.dx) * g.dx / speeds.x,
        Mesh::Plane(g) => {
            let nu = cfl.courant(g.x.dx.min(g.y.dx));
            nu / (speeds.x / g.x.dx + speeds.y / g.y.dx)
        }
    }
}

/// Successful integration up to the requested time.
#[derive(Debug, Clone)]
pub struct Advance {
    pub field: CellField,
    pub steps: Vec<StepReport>,
}

/// Integrate from `t0` to `t_final`, the last step clamped to land on
/// `t_final`. A nonphysical state aborts with [`Error::BlowUp`] carrying
/// the last time at which the solution was valid.
pub fn advance_to(disc: &Discretization, mut field: CellField, t0: f64, t_final: f64, cfl: CflRule) -> Result<Advance> {
    if !(t_final > t0) {
        return Err(Error::config(format!("final time {t_final} not after start {t0}")));
    }
    cfl.validate()?;
    let mut t = t0;
    let mut steps = Vec::new();
    let mesh = *field.mesh();
    let blow_up = |t: f64, e: Error| match e {
        Error::Domain(reason) => Error::BlowUp { time: t, reason },
        other => other,
    };
    while t < t_final {
        let speeds = global_alpha(disc.system, &field).map_err(|e| blow_up(t, e))?;
        let mut dt = time_step(&mesh, cfl, &speeds);
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::BlowUp {
                time: t,
                reason: format!("degenerate time step {dt}"),
            });
        }
        if t + dt >= t_final || t_final - (t + dt) < 1e-12 * dt {
            dt = t_final - t;
        }
        let mut fallbacks = 0;
        let mut min_density = f64::INFINITY;
        let mut min_pressure = f64::INFINITY;
        let mut work = field.clone();
        let next = rk3_step(field.data(), t, dt, |u, ts| {
            work.data_mut().copy_from_slice(u);
            let r = disc.residual(&mut work, ts)?;
            fallbacks += r.fallbacks;
            min_density = min_density.min(r.speeds.min_density);
            min_pressure = min_pressure.min(r.speeds.min_pressure);
            Ok(r.values)
        })
        .map_err(|e| blow_up(t, e))?;
        field.data_mut().copy_from_slice(&next);
        t = if dt == t_final - t { t_final } else { t + dt };
        steps.push(StepReport {
            t,
            dt,
            alpha_x: speeds.x,
            alpha_y: speeds.y,
            fallbacks,
            min_density,
            min_pressure,
        });
    }
    global_alpha(disc.system, &field).map_err(|e| blow_up(t, e))?;
    field.fill_ghosts(&disc.bc, t)?;
    Ok(Advance { field, steps })
}
