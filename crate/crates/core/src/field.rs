//! Uniform grids, cell-average storage with ghost layers, and boundary
//! conditions.
//!
//! Every field carries [`GHOST`] ghost layers on each side of each axis. Cell
//! data is stored cell-major with the `m` conservative components of a cell
//! contiguous, rows running fastest in `x`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ghost layers per side; the fifth-order stencil reaches three cells.
pub const GHOST: usize = 3;

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Integral of `f` over `[a, b]` by 5-point Gauss-Legendre (exact to degree 9).
pub fn gauss_legendre_5(a: f64, b: f64, f: &impl Fn(f64) -> f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL_NODES
        .iter()
        .zip(GL_WEIGHTS.iter())
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub dx: f64,
    pub n_ghost: usize,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::config("grid needs at least one cell"));
        }
        if !(x_right > x_left) || !x_left.is_finite() || !x_right.is_finite() {
            return Err(Error::config(format!("invalid interval [{x_left}, {x_right}]")));
        }
        Ok(Self {
            x_left,
            x_right,
            n_cells,
            dx: (x_right - x_left) / n_cells as f64,
            n_ghost: GHOST,
        })
    }

    /// Cell center of interior cell `j` (negative or `>= n` for ghosts).
    pub fn center(&self, j: isize) -> f64 {
        self.x_left + (j as f64 + 0.5) * self.dx
    }

    /// Left face of interior cell `j`.
    pub fn face(&self, j: isize) -> f64 {
        if j == self.n_cells as isize {
            return self.x_right;
        }
        self.x_left + j as f64 * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells as isize).map(|j| self.center(j)).collect()
    }

    /// Storage length along this axis including ghosts.
    pub fn padded(&self) -> usize {
        self.n_cells + 2 * self.n_ghost
    }

    /// Index of the face nearest `x`, if `x` sits on a face to within
    /// a relative tolerance.
    pub fn face_index(&self, x: f64) -> Option<usize> {
        let s = (x - self.x_left) / self.dx;
        let i = s.round();
        if i < 0.0 || i > self.n_cells as f64 {
            return None;
        }
        ((s - i).abs() < 1e-9).then_some(i as usize)
    }
}

/// Rectangle of cells excluded from the computation (e.g. the forward
/// facing step). Bounds are interior cell indices, half-open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Blanked {
    pub i0: usize,
    pub i1: usize,
    pub j0: usize,
    pub j1: usize,
}

impl Blanked {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= self.i0 && i < self.i1 && j >= self.j0 && j < self.j1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
    pub blanked: Option<Blanked>,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y, blanked: None }
    }

    /// Blank the rectangle `[xa, xb] x [ya, yb]`; its edges must lie on cell
    /// faces.
    pub fn with_blanked(mut self, xa: f64, xb: f64, ya: f64, yb: f64) -> Result<Self> {
        let faces = (
            self.x.face_index(xa),
            self.x.face_index(xb),
            self.y.face_index(ya),
            self.y.face_index(yb),
        );
        match faces {
            (Some(i0), Some(i1), Some(j0), Some(j1)) if i0 < i1 && j0 < j1 => {
                self.blanked = Some(Blanked { i0, i1, j0, j1 });
                Ok(self)
            }
            _ => Err(Error::config(format!(
                "blanked region [{xa},{xb}]x[{ya},{yb}] does not align with cell faces"
            ))),
        }
    }

    pub fn is_active(&self, i: usize, j: usize) -> bool {
        self.blanked.map_or(true, |b| !b.contains(i, j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mesh {
    Line(Grid1D),
    Plane(Grid2D),
}

impl Mesh {
    pub fn x(&self) -> &Grid1D {
        match self {
            Mesh::Line(g) => g,
            Mesh::Plane(g) => &g.x,
        }
    }

    pub fn y(&self) -> Option<&Grid1D> {
        match self {
            Mesh::Line(_) => None,
            Mesh::Plane(g) => Some(&g.y),
        }
    }

    pub fn is_2d(&self) -> bool {
        matches!(self, Mesh::Plane(_))
    }

    pub fn interior_cells(&self) -> usize {
        match self {
            Mesh::Line(g) => g.n_cells,
            Mesh::Plane(g) => g.x.n_cells * g.y.n_cells,
        }
    }
}

/// How a single ghost column is filled when the rule varies along a side.
#[derive(Debug, Clone, PartialEq)]
pub enum GhostRule {
    Reflective,
    Outflow,
    /// Fixed conservative state.
    Fixed(Vec<f64>),
}

/// Rule that depends on time and on the position along the side.
pub type SideFn = Arc<dyn Fn(f64, f64) -> GhostRule + Send + Sync>;

#[derive(Clone)]
pub enum Side {
    Periodic,
    Reflective,
    Outflow,
    /// Fixed conservative state.
    Inflow(Vec<f64>),
    TimeDependent(SideFn),
}

impl fmt::Debug for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Periodic => write!(f, "Periodic"),
            Side::Reflective => write!(f, "Reflective"),
            Side::Outflow => write!(f, "Outflow"),
            Side::Inflow(s) => write!(f, "Inflow({s:?})"),
            Side::TimeDependent(_) => write!(f, "TimeDependent(..)"),
        }
    }
}

impl Side {
    fn rule_at(&self, t: f64, pos: f64) -> GhostRule {
        match self {
            Side::Periodic => unreachable!("periodic sides are wrapped, not ruled"),
            Side::Reflective => GhostRule::Reflective,
            Side::Outflow => GhostRule::Outflow,
            Side::Inflow(s) => GhostRule::Fixed(s.clone()),
            Side::TimeDependent(f) => f(t, pos),
        }
    }
}

/// Per-side boundary conditions. The `y` sides are ignored on 1D meshes.
#[derive(Debug, Clone)]
pub struct BoundaryCondition {
    pub x_lo: Side,
    pub x_hi: Side,
    pub y_lo: Side,
    pub y_hi: Side,
}

impl BoundaryCondition {
    pub fn one_d(lo: Side, hi: Side) -> Self {
        Self {
            x_lo: lo,
            x_hi: hi,
            y_lo: Side::Outflow,
            y_hi: Side::Outflow,
        }
    }

    pub fn periodic() -> Self {
        Self::uniform(Side::Periodic)
    }

    pub fn uniform(side: Side) -> Self {
        Self {
            x_lo: side.clone(),
            x_hi: side.clone(),
            y_lo: side.clone(),
            y_hi: side,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pair = |a: &Side, b: &Side, axis: &str| {
            let (pa, pb) = (matches!(a, Side::Periodic), matches!(b, Side::Periodic));
            if pa != pb {
                Err(Error::config(format!(
                    "periodic boundary on {axis} requires both sides periodic"
                )))
            } else {
                Ok(())
            }
        };
        pair(&self.x_lo, &self.x_hi, "x")?;
        pair(&self.y_lo, &self.y_hi, "y")
    }
}

/// Index of the momentum component normal to `axis` (0 = x, 1 = y), if the
/// state has one.
pub fn normal_momentum(components: usize, axis: usize) -> Option<usize> {
    match (components, axis) {
        (3, 0) => Some(1),
        (4, 0) => Some(1),
        (4, 1) => Some(2),
        _ => None,
    }
}

/// Cell averages with ghost layers.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    mesh: Mesh,
    components: usize,
    data: Vec<f64>,
}

impl CellField {
    pub fn zeros(mesh: Mesh, components: usize) -> Self {
        assert!(components >= 1, "a field needs at least one component");
        let cells = match &mesh {
            Mesh::Line(g) => g.padded(),
            Mesh::Plane(g) => g.x.padded() * g.y.padded(),
        };
        Self {
            mesh,
            components,
            data: vec![0.0; cells * components],
        }
    }

    /// Scalar 1D field from interior values; ghosts are zero until filled.
    pub fn from_interior(grid: Grid1D, values: &[f64]) -> Self {
        assert_eq!(values.len(), grid.n_cells);
        let mut field = Self::zeros(Mesh::Line(grid), 1);
        for (j, v) in values.iter().enumerate() {
            field.cell_mut(j as isize)[0] = *v;
        }
        field
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    fn offset_1d(&self, j: isize) -> usize {
        let g = (j + GHOST as isize) as usize;
        g * self.components
    }

    fn offset_2d(&self, i: isize, j: isize) -> usize {
        let nxp = self.mesh.x().padded();
        let gi = (i + GHOST as isize) as usize;
        let gj = (j + GHOST as isize) as usize;
        (gj * nxp + gi) * self.components
    }

    /// Cell `j` of a 1D field (ghosts at `-3..0` and `n..n+3`).
    pub fn cell(&self, j: isize) -> &[f64] {
        let o = self.offset_1d(j);
        &self.data[o..o + self.components]
    }

    pub fn cell_mut(&mut self, j: isize) -> &mut [f64] {
        let o = self.offset_1d(j);
        let m = self.components;
        &mut self.data[o..o + m]
    }

    pub fn cell2(&self, i: isize, j: isize) -> &[f64] {
        let o = self.offset_2d(i, j);
        &self.data[o..o + self.components]
    }

    pub fn cell2_mut(&mut self, i: isize, j: isize) -> &mut [f64] {
        let o = self.offset_2d(i, j);
        let m = self.components;
        &mut self.data[o..o + m]
    }

    /// Interior values of component `c`, row-major for 2D.
    pub fn interior_component(&self, c: usize) -> Vec<f64> {
        match self.mesh {
            Mesh::Line(g) => (0..g.n_cells as isize).map(|j| self.cell(j)[c]).collect(),
            Mesh::Plane(g) => {
                let mut out = Vec::with_capacity(g.x.n_cells * g.y.n_cells);
                for j in 0..g.y.n_cells as isize {
                    for i in 0..g.x.n_cells as isize {
                        out.push(self.cell2(i, j)[c]);
                    }
                }
                out
            }
        }
    }

    /// Visit every active interior cell.
    pub fn for_each_active(&self, mut f: impl FnMut(&[f64])) {
        match self.mesh {
            Mesh::Line(g) => (0..g.n_cells as isize).for_each(|j| f(self.cell(j))),
            Mesh::Plane(g) => {
                for j in 0..g.y.n_cells {
                    for i in 0..g.x.n_cells {
                        if g.is_active(i, j) {
                            f(self.cell2(i as isize, j as isize));
                        }
                    }
                }
            }
        }
    }

    /// Sum of interior cell averages per component (blanked cells excluded).
    pub fn interior_sum(&self) -> Vec<f64> {
        let mut sum = vec![0.0; self.components];
        self.for_each_active(|u| {
            for (s, v) in sum.iter_mut().zip(u) {
                *s += v;
            }
        });
        sum
    }

    pub fn all_interior_finite(&self) -> bool {
        let mut ok = true;
        self.for_each_active(|u| ok &= u.iter().all(|v| v.is_finite()));
        ok
    }

    /// Populate ghost layers from the boundary conditions at time `t`.
    pub fn fill_ghosts(&mut self, bc: &BoundaryCondition, t: f64) -> Result<()> {
        bc.validate()?;
        match self.mesh {
            Mesh::Line(g) => {
                let n = g.n_cells;
                let m = self.components;
                let mut line = std::mem::take(&mut self.data);
                fill_line(
                    &mut line,
                    n,
                    m,
                    normal_momentum(m, 0),
                    &bc.x_lo,
                    &bc.x_hi,
                    t,
                    g.x_left,
                    g.x_right,
                );
                self.data = line;
            }
            Mesh::Plane(g) => {
                let (nx, ny) = (g.x.n_cells, g.y.n_cells);
                let m = self.components;
                let mut line = vec![0.0; (nx.max(ny) + 2 * GHOST) * m];
                for j in 0..ny as isize {
                    let y = g.y.center(j);
                    let buf = &mut line[..(nx + 2 * GHOST) * m];
                    for i in -(GHOST as isize)..(nx + GHOST) as isize {
                        let o = ((i + GHOST as isize) as usize) * m;
                        buf[o..o + m].copy_from_slice(self.cell2(i, j));
                    }
                    fill_line(buf, nx, m, normal_momentum(m, 0), &bc.x_lo, &bc.x_hi, t, y, y);
                    for i in -(GHOST as isize)..(nx + GHOST) as isize {
                        let o = ((i + GHOST as isize) as usize) * m;
                        self.cell2_mut(i, j).copy_from_slice(&buf[o..o + m]);
                    }
                }
                for i in 0..nx as isize {
                    let x = g.x.center(i);
                    let buf = &mut line[..(ny + 2 * GHOST) * m];
                    for j in -(GHOST as isize)..(ny + GHOST) as isize {
                        let o = ((j + GHOST as isize) as usize) * m;
                        buf[o..o + m].copy_from_slice(self.cell2(i, j));
                    }
                    fill_line(buf, ny, m, normal_momentum(m, 1), &bc.y_lo, &bc.y_hi, t, x, x);
                    for j in -(GHOST as isize)..(ny + GHOST) as isize {
                        let o = ((j + GHOST as isize) as usize) * m;
                        self.cell2_mut(i, j).copy_from_slice(&buf[o..o + m]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fill the ghosts of a padded line of `n` interior cells. `pos_lo`/`pos_hi`
/// are the along-side coordinates passed to time-dependent rules.
#[allow(clippy::too_many_arguments)]
pub(crate) fn fill_line(
    line: &mut [f64],
    n: usize,
    m: usize,
    normal: Option<usize>,
    lo: &Side,
    hi: &Side,
    t: f64,
    pos_lo: f64,
    pos_hi: f64,
) {
    let g = GHOST;
    if matches!(lo, Side::Periodic) {
        for k in 0..g {
            // ghost at g-1-k mirrors interior n-1-k
            let (dst, src) = (g - 1 - k, g + n - 1 - k);
            copy_cell(line, m, src, dst);
            let (dst, src) = (g + n + k, g + k);
            copy_cell(line, m, src, dst);
        }
        return;
    }
    apply_rule(line, m, normal, &lo.rule_at(t, pos_lo), g, true, n);
    apply_rule(line, m, normal, &hi.rule_at(t, pos_hi), g + n - 1, false, n);
}

fn copy_cell(line: &mut [f64], m: usize, src: usize, dst: usize) {
    line.copy_within(src * m..src * m + m, dst * m);
}

/// Fill the three ghosts beyond boundary cell `edge`, outward to the left
/// when `low`, otherwise to the right.
pub(crate) fn apply_rule(
    line: &mut [f64],
    m: usize,
    normal: Option<usize>,
    rule: &GhostRule,
    edge: usize,
    low: bool,
    n: usize,
) {
    for k in 0..GHOST {
        let dst = if low { edge - 1 - k } else { edge + 1 + k };
        match rule {
            GhostRule::Outflow => copy_cell(line, m, edge, dst),
            GhostRule::Reflective => {
                let depth = k.min(n - 1);
                let src = if low { edge + depth } else { edge - depth };
                copy_cell(line, m, src, dst);
                if let Some(c) = normal {
                    line[dst * m + c] = -line[dst * m + c];
                }
            }
            GhostRule::Fixed(state) => {
                line[dst * m..dst * m + m].copy_from_slice(&state[..m]);
            }
        }
    }
}

/// Cell averages of `f` over a 1D grid. `breaks` lists the discontinuity
/// locations; each cell is split at the breaks it contains and every smooth
/// piece is integrated by 5-point Gauss-Legendre.
pub fn cell_average_init(grid: &Grid1D, f: impl Fn(f64) -> f64, breaks: &[f64]) -> CellField {
    let values: Vec<f64> = (0..grid.n_cells as isize)
        .map(|j| {
            let (a, b) = (grid.face(j), grid.face(j + 1));
            piecewise_average(a, b, &f, breaks)
        })
        .collect();
    CellField::from_interior(*grid, &values)
}

/// Average of `f` over `[a, b]`, splitting at the interior breakpoints.
pub fn piecewise_average(a: f64, b: f64, f: &impl Fn(f64) -> f64, breaks: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut left = a;
    for x in cuts.into_iter().chain(std::iter::once(b)) {
        if x > left {
            // evaluate strictly inside the piece so the branch choice is unambiguous
            total += gauss_legendre_5(left, x, f);
        }
        left = x;
    }
    total / (b - a)
}

/// Vector-valued cell averages over a 1D grid for an `m`-component state.
pub fn cell_average_init_system(grid: &Grid1D, m: usize, f: impl Fn(f64) -> Vec<f64>, breaks: &[f64]) -> CellField {
    let mut field = CellField::zeros(Mesh::Line(*grid), m);
    for j in 0..grid.n_cells as isize {
        let (a, b) = (grid.face(j), grid.face(j + 1));
        for c in 0..m {
            let fc = |x: f64| f(x)[c];
            field.cell_mut(j)[c] = piecewise_average(a, b, &fc, breaks);
        }
    }
    field
}

/// Vector-valued cell averages over a 2D grid with axis-aligned
/// discontinuities; tensor 5x5 Gauss-Legendre on each smooth sub-rectangle.
/// Blanked cells are left at zero.
pub fn cell_average_init_2d(
    grid: &Grid2D,
    m: usize,
    f: impl Fn(f64, f64) -> Vec<f64>,
    x_breaks: &[f64],
    y_breaks: &[f64],
) -> CellField {
    let mut field = CellField::zeros(Mesh::Plane(*grid), m);
    for j in 0..grid.y.n_cells {
        for i in 0..grid.x.n_cells {
            if !grid.is_active(i, j) {
                continue;
            }
            let (xa, xb) = (grid.x.face(i as isize), grid.x.face(i as isize + 1));
            let (ya, yb) = (grid.y.face(j as isize), grid.y.face(j as isize + 1));
            let xs = split(xa, xb, x_breaks);
            let ys = split(ya, yb, y_breaks);
            let mut acc = vec![0.0; m];
            for wy in ys.windows(2) {
                for wx in xs.windows(2) {
                    let (hx, mx) = (0.5 * (wx[1] - wx[0]), 0.5 * (wx[1] + wx[0]));
                    let (hy, my) = (0.5 * (wy[1] - wy[0]), 0.5 * (wy[1] + wy[0]));
                    for (ny, wyq) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                        for (nx, wxq) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                            let v = f(mx + hx * nx, my + hy * ny);
                            let w = wxq * wyq * hx * hy;
                            for (a, vc) in acc.iter_mut().zip(&v) {
                                *a += w * vc;
                            }
                        }
                    }
                }
            }
            let area = (xb - xa) * (yb - ya);
            let cell = field.cell2_mut(i as isize, j as isize);
            for (c, a) in cell.iter_mut().zip(acc) {
                *c = a / area;
            }
        }
    }
    field
}

fn split(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let mut pts = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    pts.extend(inner);
    pts.push(b);
    pts
}
