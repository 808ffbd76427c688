//! Benchmark problems: initial data, boundary conditions and canonical run
//! parameters.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{
    cell_average_init, cell_average_init_2d, cell_average_init_system, piecewise_average, BoundaryCondition, CellField,
    GhostRule, Grid1D, Grid2D, Mesh, Side,
};
use crate::solver::CflRule;
use crate::system::{euler1d_conservative, euler2d_conservative, SystemKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    LaeSine,
    LaeCritical,
    Slp,
    Bicwp,
    StepIc,
    Blast,
    TitarevToro,
    Riemann2d,
    Dmr,
    Ffs,
}

impl ProblemId {
    pub const ALL: [ProblemId; 10] = [
        ProblemId::LaeSine,
        ProblemId::LaeCritical,
        ProblemId::Slp,
        ProblemId::Bicwp,
        ProblemId::StepIc,
        ProblemId::Blast,
        ProblemId::TitarevToro,
        ProblemId::Riemann2d,
        ProblemId::Dmr,
        ProblemId::Ffs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::LaeSine => "lae-sine",
            ProblemId::LaeCritical => "lae-critical",
            ProblemId::Slp => "slp",
            ProblemId::Bicwp => "bicwp",
            ProblemId::StepIc => "step-ic",
            ProblemId::Blast => "blast",
            ProblemId::TitarevToro => "titarev-toro",
            ProblemId::Riemann2d => "riemann2d",
            ProblemId::Dmr => "dmr",
            ProblemId::Ffs => "ffs",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        ProblemId::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// A fully specified benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub system: SystemKind,
    pub x_range: (f64, f64),
    pub y_range: Option<(f64, f64)>,
    /// Excluded rectangle `(xa, xb, ya, yb)`.
    pub blanked: Option<(f64, f64, f64, f64)>,
    pub cfl: CflRule,
    pub t_final: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Catalog lookup by CLI name.
pub fn make_problem(name: &str) -> Result<ProblemSpec> {
    Ok(ProblemSpec::new(name.parse()?))
}

// SLP constants
const SLP_Z: f64 = -0.7;
const SLP_DELTA: f64 = 0.005;
const SLP_A: f64 = 0.5;
const SLP_ALPHA: f64 = 10.0;

fn slp_beta() -> f64 {
    2f64.ln() / (36.0 * SLP_DELTA * SLP_DELTA)
}

/// DMR shock foot on the bottom wall.
pub const DMR_X0: f64 = 1.0 / 6.0;

fn dmr_post() -> [f64; 4] {
    euler2d_conservative(8.0, 8.25 * (PI / 6.0).cos(), -8.25 * (PI / 6.0).sin(), 116.5)
}

fn dmr_pre() -> [f64; 4] {
    euler2d_conservative(1.4, 0.0, 0.0, 1.0)
}

/// Shock position on the top boundary at time `t`.
pub fn dmr_shock_top(t: f64) -> f64 {
    DMR_X0 + (1.0 + 20.0 * t) / 3f64.sqrt()
}

fn riemann2d_primitive(x: f64, y: f64) -> [f64; 4] {
    match (x >= 0.5, y >= 0.5) {
        (true, true) => [1.0, 0.0, -0.3, 1.0],
        (false, true) => [2.0, 0.0, 0.3, 1.0],
        (false, false) => [1.0625, 0.0, 0.8145, 0.4],
        (true, false) => [0.5313, 0.0, 0.4276, 0.4],
    }
}

impl ProblemSpec {
    pub fn new(id: ProblemId) -> Self {
        let adv = SystemKind::Advection1D { speed: 1.0 };
        let base = |system, x_range, cfl, t_final, nx| ProblemSpec {
            id,
            system,
            x_range,
            y_range: None,
            blanked: None,
            cfl,
            t_final,
            nx,
            ny: 1,
        };
        match id {
            ProblemId::LaeSine | ProblemId::LaeCritical => base(adv, (-1.0, 1.0), CflRule::AccuracyScaled, 2.0, 160),
            ProblemId::Slp | ProblemId::Bicwp => base(adv, (-1.0, 1.0), CflRule::FixedCourant(0.1), 2000.0, 200),
            ProblemId::StepIc => base(adv, (-1.0, 1.0), CflRule::FixedCourant(0.1), 200.0, 200),
            ProblemId::Blast => base(SystemKind::Euler1D, (0.0, 1.0), CflRule::FixedCourant(0.1), 0.038, 400),
            ProblemId::TitarevToro => base(SystemKind::Euler1D, (-5.0, 5.0), CflRule::FixedCourant(0.4), 5.0, 1500),
            ProblemId::Riemann2d => ProblemSpec {
                y_range: Some((0.0, 1.0)),
                ny: 1200,
                ..base(SystemKind::Euler2D, (0.0, 1.0), CflRule::FixedCourant(0.5), 0.3, 1200)
            },
            ProblemId::Dmr => ProblemSpec {
                y_range: Some((0.0, 1.0)),
                ny: 500,
                ..base(SystemKind::Euler2D, (0.0, 4.0), CflRule::FixedCourant(0.5), 0.2, 2000)
            },
            ProblemId::Ffs => ProblemSpec {
                y_range: Some((0.0, 1.0)),
                blanked: Some((0.6, 3.0, 0.0, 0.2)),
                ny: 300,
                ..base(SystemKind::Euler2D, (0.0, 3.0), CflRule::FixedCourant(0.5), 4.0, 900)
            },
        }
    }

    pub fn with_grid(mut self, nx: usize, ny: usize) -> Self {
        self.nx = nx;
        self.ny = ny;
        self
    }

    pub fn is_2d(&self) -> bool {
        self.y_range.is_some()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(
            self.id,
            ProblemId::LaeSine | ProblemId::LaeCritical | ProblemId::Slp | ProblemId::Bicwp | ProblemId::StepIc
        )
    }

    /// Known range of the exact solution, for overshoot measurements.
    pub fn exact_bounds(&self) -> Option<(f64, f64)> {
        match self.id {
            ProblemId::LaeSine | ProblemId::LaeCritical => Some((-1.0, 1.0)),
            ProblemId::Slp | ProblemId::Bicwp | ProblemId::StepIc => Some((0.0, 1.0)),
            _ => None,
        }
    }

    pub fn mesh(&self) -> Result<Mesh> {
        let x = Grid1D::new(self.x_range.0, self.x_range.1, self.nx)?;
        match self.y_range {
            None => Ok(Mesh::Line(x)),
            Some((ya, yb)) => {
                let mut g = Grid2D::new(x, Grid1D::new(ya, yb, self.ny)?);
                if let Some((xa, xb, ya, yb)) = self.blanked {
                    g = g.with_blanked(xa, xb, ya, yb)?;
                }
                Ok(Mesh::Plane(g))
            }
        }
    }

    pub fn boundary(&self) -> BoundaryCondition {
        match self.id {
            ProblemId::LaeSine | ProblemId::LaeCritical | ProblemId::Slp | ProblemId::Bicwp | ProblemId::StepIc => {
                BoundaryCondition::periodic()
            }
            ProblemId::Blast => BoundaryCondition::one_d(Side::Reflective, Side::Reflective),
            ProblemId::TitarevToro => BoundaryCondition::one_d(Side::Outflow, Side::Outflow),
            ProblemId::Riemann2d => BoundaryCondition::uniform(Side::Outflow),
            ProblemId::Ffs => BoundaryCondition {
                x_lo: Side::Inflow(euler2d_conservative(1.4, 3.0, 0.0, 1.0).to_vec()),
                x_hi: Side::Outflow,
                y_lo: Side::Reflective,
                y_hi: Side::Reflective,
            },
            ProblemId::Dmr => {
                let post = dmr_post().to_vec();
                let pre = dmr_pre().to_vec();
                let bottom_post = post.clone();
                let top_post = post.clone();
                BoundaryCondition {
                    x_lo: Side::Inflow(post),
                    x_hi: Side::Outflow,
                    y_lo: Side::TimeDependent(Arc::new(move |_t, x| {
                        if x < DMR_X0 {
                            GhostRule::Fixed(bottom_post.clone())
                        } else {
                            GhostRule::Reflective
                        }
                    })),
                    y_hi: Side::TimeDependent(Arc::new(move |t, x| {
                        if x < dmr_shock_top(t) {
                            GhostRule::Fixed(top_post.clone())
                        } else {
                            GhostRule::Fixed(pre.clone())
                        }
                    })),
                }
            }
        }
    }

    /// Discontinuity and kink locations of the 1D initial data.
    pub fn breaks(&self) -> Vec<f64> {
        match self.id {
            ProblemId::LaeSine | ProblemId::LaeCritical => vec![],
            ProblemId::Slp => {
                let reach = 1.0 / SLP_ALPHA;
                vec![
                    -0.8,
                    -0.6,
                    -0.4,
                    -0.2,
                    0.0,
                    0.1,
                    0.2,
                    0.4,
                    SLP_A + SLP_DELTA - reach,
                    SLP_A - SLP_DELTA + reach,
                    0.6,
                ]
            }
            ProblemId::Bicwp => vec![-0.8, -0.6, -0.4, -0.2, 0.2, 0.4, 0.6, 0.8],
            ProblemId::StepIc => vec![0.0],
            ProblemId::Blast => vec![0.1, 0.9],
            ProblemId::TitarevToro => vec![-4.5],
            ProblemId::Riemann2d => vec![0.5],
            ProblemId::Dmr | ProblemId::Ffs => vec![],
        }
    }

    /// Scalar initial data of an advection problem.
    pub fn scalar_initial(&self, x: f64) -> Result<f64> {
        Ok(match self.id {
            ProblemId::LaeSine => (PI * x).sin(),
            ProblemId::LaeCritical => (PI * x - (PI * x).sin() / PI).sin(),
            ProblemId::Slp => slp(x),
            ProblemId::Bicwp => bicwp(x),
            ProblemId::StepIc => {
                if x < 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            _ => return Err(Error::config(format!("{} is not a scalar problem", self.id))),
        })
    }

    /// Conservative initial state at a point.
    pub fn initial_state(&self, x: f64, y: f64) -> Result<Vec<f64>> {
        Ok(match self.id {
            ProblemId::Blast => {
                let p = if x < 0.1 {
                    1000.0
                } else if x < 0.9 {
                    0.01
                } else {
                    100.0
                };
                euler1d_conservative(1.0, 0.0, p).to_vec()
            }
            ProblemId::TitarevToro => {
                if x <= -4.5 {
                    euler1d_conservative(1.515695, 0.5233346, 1.80500).to_vec()
                } else {
                    euler1d_conservative(1.0 + 0.1 * (20.0 * PI * x).sin(), 0.0, 1.0).to_vec()
                }
            }
            ProblemId::Riemann2d => {
                let [r, u, v, p] = riemann2d_primitive(x, y);
                euler2d_conservative(r, u, v, p).to_vec()
            }
            ProblemId::Dmr => {
                if x < DMR_X0 + y / 3f64.sqrt() {
                    dmr_post().to_vec()
                } else {
                    dmr_pre().to_vec()
                }
            }
            ProblemId::Ffs => euler2d_conservative(1.4, 3.0, 0.0, 1.0).to_vec(),
            _ => vec![self.scalar_initial(x)?],
        })
    }

    /// Cell-averaged initial field on the spec's grid.
    pub fn initialize(&self) -> Result<CellField> {
        let mesh = self.mesh()?;
        let breaks = self.breaks();
        Ok(match (mesh, self.id) {
            (Mesh::Line(g), _) if !self.system.is_euler() => {
                let f = |x: f64| self.scalar_initial(x).expect("scalar problem");
                cell_average_init(&g, f, &breaks)
            }
            (Mesh::Line(g), _) => {
                let f = |x: f64| self.initial_state(x, 0.0).expect("1D Euler problem");
                cell_average_init_system(&g, 3, f, &breaks)
            }
            (Mesh::Plane(g), ProblemId::Dmr) => dmr_initialize(&g),
            (Mesh::Plane(g), _) => {
                let f = |x: f64, y: f64| self.initial_state(x, y).expect("2D Euler problem");
                cell_average_init_2d(&g, 4, f, &breaks, &breaks)
            }
        })
    }
}

fn slp(x: f64) -> f64 {
    let g = |z: f64| (-slp_beta() * (x - z) * (x - z)).exp();
    let f = |a: f64| (1.0 - SLP_ALPHA * SLP_ALPHA * (x - a) * (x - a)).max(0.0).sqrt();
    if (-0.8..=-0.6).contains(&x) {
        (g(SLP_Z - SLP_DELTA) + 4.0 * g(SLP_Z) + g(SLP_Z + SLP_DELTA)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (f(SLP_A - SLP_DELTA) + 4.0 * f(SLP_A) + f(SLP_A + SLP_DELTA)) / 6.0
    } else {
        0.0
    }
}

fn bicwp(x: f64) -> f64 {
    let in_any = |ivs: &[(f64, f64)]| ivs.iter().any(|&(a, b)| x > a && x <= b);
    if in_any(&[(-0.6, -0.4), (0.2, 0.4), (0.6, 0.8)]) {
        0.5
    } else if in_any(&[(-0.8, -0.6), (-0.4, -0.2), (0.4, 0.6)]) {
        1.0
    } else {
        0.0
    }
}

/// Exact averages over the cells cut by the inclined shock: for fixed `y`
/// the post-shock share of `[xa, xb]` is linear in `y` between clamps, so
/// the trapezoid rule on the clamp-free pieces is exact.
fn dmr_initialize(g: &Grid2D) -> CellField {
    let post = dmr_post();
    let pre = dmr_pre();
    let mut field = CellField::zeros(Mesh::Plane(*g), 4);
    let s3 = 3f64.sqrt();
    for j in 0..g.y.n_cells as isize {
        let (ya, yb) = (g.y.face(j), g.y.face(j + 1));
        for i in 0..g.x.n_cells as isize {
            let (xa, xb) = (g.x.face(i), g.x.face(i + 1));
            let width = |y: f64| (DMR_X0 + y / s3 - xa).clamp(0.0, xb - xa);
            // shock crosses x = xa and x = xb at these heights
            let mut ys = vec![ya, yb];
            for y in [(xa - DMR_X0) * s3, (xb - DMR_X0) * s3] {
                if y > ya && y < yb {
                    ys.push(y);
                }
            }
            ys.sort_by(f64::total_cmp);
            let area: f64 = ys
                .windows(2)
                .map(|w| 0.5 * (width(w[0]) + width(w[1])) * (w[1] - w[0]))
                .sum();
            let frac = area / ((xb - xa) * (yb - ya));
            let cell = field.cell2_mut(i, j);
            for c in 0..4 {
                cell[c] = frac * post[c] + (1.0 - frac) * pre[c];
            }
        }
    }
    field
}

/// Exact solution of a periodic advection problem: the initial data
/// translated by `speed * t` modulo the period.
pub fn exact_advection(spec: &ProblemSpec, x: f64, t: f64) -> Result<f64> {
    let SystemKind::Advection1D { speed } = spec.system else {
        return Err(Error::config(format!("{} has no exact advection solution", spec.id)));
    };
    let (a, b) = spec.x_range;
    let xs = wrap(x - speed * t, a, b);
    spec.scalar_initial(xs)
}

fn wrap(x: f64, a: f64, b: f64) -> f64 {
    if x >= a && x < b {
        return x;
    }
    let period = b - a;
    let mut y = a + (x - a).rem_euclid(period);
    if y >= b {
        y -= period;
    }
    y
}

/// Exact cell averages at time `t` of a periodic advection problem.
pub fn exact_advection_averages(spec: &ProblemSpec, t: f64) -> Result<CellField> {
    let SystemKind::Advection1D { speed } = spec.system else {
        return Err(Error::config(format!("{} has no exact advection solution", spec.id)));
    };
    let (a, b) = spec.x_range;
    let grid = Grid1D::new(a, b, spec.nx)?;
    // the periodic seam is a break of the translated profile as well
    let breaks: Vec<f64> = spec
        .breaks()
        .into_iter()
        .chain(std::iter::once(a))
        .map(|x| wrap(x + speed * t, a, b))
        .collect();
    let f = |x: f64| exact_advection(spec, x, t).expect("advection problem");
    let values: Vec<f64> = (0..grid.n_cells as isize)
        .map(|j| piecewise_average(grid.face(j), grid.face(j + 1), &f, &breaks))
        .collect();
    Ok(CellField::from_interior(grid, &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::pressure;

    #[test]
    fn names_round_trip() {
        for id in ProblemId::ALL {
            assert_eq!(id.name().parse::<ProblemId>().unwrap(), id);
        }
        assert_eq!("SLP".parse::<ProblemId>().unwrap(), ProblemId::Slp);
        assert!(matches!("sod".parse::<ProblemId>(), Err(Error::UnknownProblem(_))));
    }

    #[test]
    fn slp_and_bicwp_pointwise() {
        let slp = make_problem("SLP").unwrap();
        assert_eq!(slp.scalar_initial(0.1).unwrap(), 1.0);
        assert_eq!(slp.scalar_initial(-0.3).unwrap(), 1.0);
        assert_eq!(slp.scalar_initial(0.9).unwrap(), 0.0);
        // semi-ellipse peak: (f(a-δ) + 4 + f(a+δ))/6 with f = sqrt(1 - 0.0025)
        let side = (1.0f64 - 0.0025).sqrt();
        assert!((slp.scalar_initial(0.5).unwrap() - (2.0 * side + 4.0) / 6.0).abs() < 1e-15);
        let b = make_problem("BiCWP").unwrap();
        assert_eq!(b.scalar_initial(-0.7).unwrap(), 1.0);
        assert_eq!(b.scalar_initial(-0.5).unwrap(), 0.5);
        assert_eq!(b.scalar_initial(0.0).unwrap(), 0.0);
        assert_eq!(b.scalar_initial(-0.6).unwrap(), 1.0);
    }

    #[test]
    fn blast_pressures() {
        let spec = make_problem("blast").unwrap();
        for (x, p) in [(0.05, 1000.0), (0.5, 0.01), (0.95, 100.0)] {
            let u = spec.initial_state(x, 0.0).unwrap();
            assert!((pressure(&u) - p).abs() < 1e-12 * p);
        }
    }

    #[test]
    fn initial_data_bounds() {
        for name in ["slp", "bicwp", "step-ic"] {
            let f = make_problem(name).unwrap().initialize().unwrap();
            assert!(
                f.interior_component(0).iter().all(|v| (0.0..=1.0).contains(v)),
                "{name}"
            );
        }
        for name in ["blast", "titarev-toro"] {
            let f = make_problem(name).unwrap().initialize().unwrap();
            f.for_each_active(|u| assert!(u[0] > 0.0 && pressure(u) > 0.0));
        }
    }

    #[test]
    fn exact_advection_is_a_translation() {
        let sine = make_problem("lae-sine").unwrap();
        for x in [-0.9, -0.3, 0.2, 0.77] {
            let u0 = exact_advection(&sine, x, 0.0).unwrap();
            assert_eq!(u0, sine.scalar_initial(x).unwrap());
            assert!((exact_advection(&sine, x, 2.0).unwrap() - u0).abs() < 1e-14);
        }
        let step = make_problem("step-ic").unwrap();
        assert_eq!(exact_advection(&step, 0.01, 0.0).unwrap(), 0.0);
        assert_eq!(exact_advection(&step, 0.01, 0.02).unwrap(), 1.0);
        assert!(exact_advection(&make_problem("blast").unwrap(), 0.1, 0.0).is_err());
    }

    #[test]
    fn exact_averages_at_full_period_equal_initial_averages() {
        let spec = make_problem("bicwp").unwrap().with_grid(50, 1);
        let init = spec.initialize().unwrap().interior_component(0);
        let later = exact_advection_averages(&spec, 2.0).unwrap().interior_component(0);
        for (a, b) in init.iter().zip(&later) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn dmr_cut_cells_average_the_two_states() {
        let spec = make_problem("dmr").unwrap().with_grid(40, 10);
        let f = spec.initialize().unwrap();
        let (post, pre) = (dmr_post(), dmr_pre());
        // far left is post-shock, far right pre-shock
        assert_eq!(f.cell2(0, 0), &post[..]);
        assert_eq!(f.cell2(39, 9), &pre[..]);
        // total mass matches the exact area split
        let g = spec.mesh().unwrap();
        let area_post: f64 = (0.5 * (DMR_X0 + (DMR_X0 + 1.0 / 3f64.sqrt()))) * 1.0;
        let cell = g.x().dx * g.y().unwrap().dx;
        let mass = f.interior_sum()[0] * cell;
        let expect = area_post * post[0] + (4.0 - area_post) * pre[0];
        assert!((mass - expect).abs() < 1e-12);
    }

    #[test]
    fn ffs_step_is_blanked() {
        let spec = make_problem("ffs").unwrap().with_grid(180, 60);
        let Mesh::Plane(g) = spec.mesh().unwrap() else { panic!() };
        let b = g.blanked.unwrap();
        assert_eq!((b.i0, b.i1, b.j0, b.j1), (36, 180, 0, 12));
        assert!(make_problem("ffs").unwrap().with_grid(100, 31).mesh().is_err());
    }
}
