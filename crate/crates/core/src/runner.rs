//! Run configuration, orchestration, reference caching and CSV output.
//!
//! Configurations are flat `key = value` text:
//!
//! ```text
//! mode = converge
//! problem = lae-sine
//! scheme = maim1
//! scheme.k = 10
//! scheme.A = 1e-6
//! scheme.ms = 0.06
//! grids = 20,40,80,160,320
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use crate::analysis::{
    appendix_a_csv, empirical_order, norms, norms_of, oscillation_metrics, table1_csv, ErrorNorms, OscillationMetrics,
};
use crate::error::{Error, Result};
use crate::field::{CellField, Grid1D, Mesh};
use crate::mapping::{map_weight, AdaptiveControl, MaimParams, MappingContext, MappingKind};
use crate::problems::{exact_advection_averages, ProblemId, ProblemSpec};
use crate::solver::{advance_to, CflRule, Discretization};

/// Environment variable naming the reference-solution cache directory.
pub const CACHE_ENV: &str = "WENO_CACHE_DIR";

/// `{:.16e}`: 17 significant digits, enough to round-trip an `f64`.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Solve,
    Converge,
    MapDump,
    Tables,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::Converge => "converge",
            Mode::MapDump => "map-dump",
            Mode::Tables => "tables",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Mode::Solve, Mode::Converge, Mode::MapDump, Mode::Tables]
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::config(format!("unknown mode `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    AppendixA,
    Table1,
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "appendixa" | "appendix-a" => Ok(TableKind::AppendixA),
            "table1" | "table-1" => Ok(TableKind::Table1),
            _ => Err(Error::config(format!("unknown table `{s}`"))),
        }
    }
}

/// Parse a scheme such as `js`, `m`, `im(2,0.1)`, `maim1(10,1e-6,0.06)` or
/// `weno-maim3`. A bare MAIM or IM name takes the default parameters.
pub fn parse_scheme(spec: &str) -> Result<MappingKind> {
    let s = spec.trim().to_ascii_lowercase();
    let s = s.strip_prefix("weno-").unwrap_or(&s);
    let (name, args) = match s.find('(') {
        Some(i) => {
            let inner = s[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::config(format!("unbalanced parentheses in `{spec}`")))?;
            let args = inner
                .split(',')
                .map(|a| {
                    a.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::config(format!("bad number `{a}` in `{spec}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            (&s[..i], args)
        }
        None => (s, Vec::new()),
    };
    let arity = |n: usize| {
        if args.is_empty() || args.len() == n {
            Ok(())
        } else {
            Err(Error::config(format!(
                "`{name}` takes {n} parameters, got {}",
                args.len()
            )))
        }
    };
    let int = |v: f64| -> Result<u32> {
        if v >= 1.0 && v.fract() == 0.0 {
            Ok(v as u32)
        } else {
            Err(Error::config(format!("k = {v} is not a positive integer")))
        }
    };
    let kind = match name {
        "js" => {
            arity(0)?;
            MappingKind::Identity
        }
        "m" => {
            arity(0)?;
            MappingKind::Henrick
        }
        "im" => {
            arity(2)?;
            if args.is_empty() {
                MappingKind::improved_default()
            } else {
                MappingKind::improved(int(args[0])?, args[1])?
            }
        }
        "maim1" | "maim2" | "maim3" | "maim4" | "maim5" => {
            let defaults = match name {
                "maim1" => MappingKind::maim1_default(),
                "maim2" => MappingKind::maim2_default(),
                "maim3" => MappingKind::maim3_default(),
                "maim4" => MappingKind::maim4_default(),
                _ => MappingKind::maim5_default(),
            };
            if args.is_empty() {
                defaults
            } else {
                let p = match name {
                    "maim1" => {
                        arity(3)?;
                        MaimParams::maim1(int(args[0])?, args[1], args[2])?
                    }
                    "maim2" => {
                        arity(4)?;
                        MaimParams::maim2(int(args[0])?, args[1], args[2], args[3])?
                    }
                    "maim3" => {
                        arity(2)?;
                        MaimParams::maim3(int(args[0])?, args[1])?
                    }
                    "maim4" => {
                        arity(2)?;
                        MaimParams::maim4(int(args[0])?, args[1])?
                    }
                    _ => {
                        arity(3)?;
                        MaimParams::maim5(int(args[0])?, args[1], args[2])?
                    }
                };
                MappingKind::Maim(p)
            }
        }
        _ => return Err(Error::config(format!("unknown scheme `{spec}`"))),
    };
    kind.validate()?;
    Ok(kind)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Dotted `scheme.*` lines describing `kind` exactly.
fn scheme_lines(kind: &MappingKind) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut put = |k: &str, v: String| out.push((k.to_string(), v));
    match kind {
        MappingKind::Identity => put("scheme", "js".into()),
        MappingKind::Henrick => put("scheme", "m".into()),
        MappingKind::Improved { k, a } => {
            put("scheme", "im".into());
            put("scheme.k", k.to_string());
            put("scheme.A", a.to_string());
        }
        MappingKind::Maim(p) => {
            put("scheme", format!("maim{}", p.control.index()));
            put("scheme.k", p.k.to_string());
            put("scheme.A", p.a.to_string());
            put("scheme.delta", p.delta.to_string());
            put("scheme.epsA", p.eps_a.to_string());
            match p.control {
                AdaptiveControl::Type1 { m } => put("scheme.ms", join(&m)),
                AdaptiveControl::Type2 { q, cfs } => {
                    put("scheme.Q", q.to_string());
                    put("scheme.cfs", join(&cfs));
                }
                AdaptiveControl::Type5 { c } => put("scheme.C", c.to_string()),
                AdaptiveControl::Type3 | AdaptiveControl::Type4 => {}
            }
        }
    }
    out
}

fn per_stencil(v: &str, key: &str) -> Result<[f64; 3]> {
    let vals = v
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::config(format!("bad number `{x}` for {key}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match vals.as_slice() {
        [a] => Ok([*a; 3]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(Error::config(format!("{key} needs one or three values"))),
    }
}

/// Apply dotted overrides on top of a base scheme.
fn apply_scheme_keys(base: MappingKind, keys: &[(String, String)]) -> Result<MappingKind> {
    let num = |k: &str, v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| Error::config(format!("bad number `{v}` for {k}")))
    };
    let mut kind = base;
    for (k, v) in keys {
        let field = k.strip_prefix("scheme.").unwrap_or(k);
        match (&mut kind, field) {
            (MappingKind::Improved { k, .. }, "k") => *k = num(field, v)? as u32,
            (MappingKind::Improved { a, .. }, "A") => *a = num(field, v)?,
            (MappingKind::Maim(p), "k") => p.k = num(field, v)? as u32,
            (MappingKind::Maim(p), "A") => p.a = num(field, v)?,
            (MappingKind::Maim(p), "delta") => p.delta = num(field, v)?,
            (MappingKind::Maim(p), "epsA") => p.eps_a = num(field, v)?,
            (MappingKind::Maim(p), "ms") => match &mut p.control {
                AdaptiveControl::Type1 { m } => *m = per_stencil(v, k)?,
                _ => return Err(Error::config("scheme.ms applies to maim1 only")),
            },
            (MappingKind::Maim(p), "Q") => match &mut p.control {
                AdaptiveControl::Type2 { q, .. } => *q = num(field, v)?,
                _ => return Err(Error::config("scheme.Q applies to maim2 only")),
            },
            (MappingKind::Maim(p), "cfs") => match &mut p.control {
                AdaptiveControl::Type2 { cfs, .. } => *cfs = per_stencil(v, k)?,
                _ => return Err(Error::config("scheme.cfs applies to maim2 only")),
            },
            (MappingKind::Maim(p), "C") => match &mut p.control {
                AdaptiveControl::Type5 { c } => *c = num(field, v)?,
                _ => return Err(Error::config("scheme.C applies to maim5 only")),
            },
            _ => return Err(Error::config(format!("`{k}` does not apply to {base}"))),
        }
    }
    kind.validate()?;
    Ok(kind)
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub problem: ProblemId,
    pub scheme: MappingKind,
    /// Grid sizes along `x`; `solve` uses the first.
    pub grids: Vec<usize>,
    /// Cells along `y` for 2D problems.
    pub ny: Option<usize>,
    pub t_final: Option<f64>,
    pub cfl: Option<CflRule>,
    /// Fine-grid size of a cached WENO-JS reference for 1D Euler errors.
    pub reference: Option<usize>,
    /// Report or table CSV.
    pub output: Option<PathBuf>,
    /// Field dump CSV of the final solution.
    pub dump: Option<PathBuf>,
    pub points: usize,
    pub table: TableKind,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Solve,
            problem: ProblemId::LaeSine,
            scheme: MappingKind::Identity,
            grids: Vec::new(),
            ny: None,
            t_final: None,
            cfl: None,
            reference: None,
            output: None,
            dump: None,
            points: 1001,
            table: TableKind::Table1,
        }
    }
}

fn fmt_cfl(c: CflRule) -> String {
    match c {
        CflRule::FixedCourant(nu) => nu.to_string(),
        CflRule::AccuracyScaled => "accuracy".into(),
    }
}

fn parse_cfl(v: &str) -> Result<CflRule> {
    let v = v.trim();
    if v.eq_ignore_ascii_case("accuracy") {
        return Ok(CflRule::AccuracyScaled);
    }
    let nu = v.parse::<f64>().map_err(|_| Error::config(format!("bad CFL `{v}`")))?;
    let rule = CflRule::FixedCourant(nu);
    rule.validate()?;
    Ok(rule)
}

fn parse_grids(v: &str) -> Result<Vec<usize>> {
    let grids = v
        .split(',')
        .map(|g| {
            g.trim()
                .parse::<usize>()
                .map_err(|_| Error::config(format!("bad grid size `{g}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    check_grids(&grids)?;
    Ok(grids)
}

fn check_grids(grids: &[usize]) -> Result<()> {
    if grids.contains(&0) {
        return Err(Error::config("grid sizes must be positive"));
    }
    if grids.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::config("grid sequence must be strictly increasing"));
    }
    Ok(())
}

impl RunConfig {
    /// A configuration that reproduces `spec` exactly.
    pub fn for_problem(spec: &ProblemSpec, scheme: MappingKind) -> Self {
        Self {
            problem: spec.id,
            scheme,
            grids: vec![spec.nx],
            ny: spec.is_2d().then_some(spec.ny),
            t_final: Some(spec.t_final),
            cfl: Some(spec.cfl),
            ..Self::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut scheme_name: Option<String> = None;
        let mut scheme_keys = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split(['#', ';']).next().unwrap_or("").trim();
            if line.is_empty() || line.starts_with('[') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "mode" => cfg.mode = v.parse()?,
                "problem" => cfg.problem = v.parse()?,
                "scheme" => scheme_name = Some(v.to_string()),
                _ if k.starts_with("scheme.") => scheme_keys.push((k.to_string(), v.to_string())),
                "grids" | "grid" | "n" | "nx" => cfg.grids = parse_grids(v)?,
                "ny" => cfg.ny = Some(parse_grids(v)?[0]),
                "t_final" => cfg.t_final = Some(v.parse().map_err(|_| Error::config(format!("bad t_final `{v}`")))?),
                "cfl" => cfg.cfl = Some(parse_cfl(v)?),
                "reference" => {
                    cfg.reference = Some(v.parse().map_err(|_| Error::config(format!("bad reference `{v}`")))?)
                }
                "output" => cfg.output = Some(PathBuf::from(v)),
                "dump" => cfg.dump = Some(PathBuf::from(v)),
                "points" => cfg.points = v.parse().map_err(|_| Error::config(format!("bad points `{v}`")))?,
                "table" => cfg.table = v.parse()?,
                _ => return Err(Error::config(format!("line {}: unknown key `{k}`", lineno + 1))),
            }
        }
        let base = match &scheme_name {
            Some(s) => parse_scheme(s)?,
            None if scheme_keys.is_empty() => MappingKind::Identity,
            None => return Err(Error::config("scheme.* keys given without a scheme")),
        };
        cfg.scheme = apply_scheme_keys(base, &scheme_keys)?;
        Ok(cfg)
    }

    pub fn to_ini(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode = {}", self.mode.name());
        let _ = writeln!(s, "problem = {}", self.problem);
        for (k, v) in scheme_lines(&self.scheme) {
            let _ = writeln!(s, "{k} = {v}");
        }
        if !self.grids.is_empty() {
            let g: Vec<String> = self.grids.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "grids = {}", g.join(","));
        }
        if let Some(ny) = self.ny {
            let _ = writeln!(s, "ny = {ny}");
        }
        if let Some(t) = self.t_final {
            let _ = writeln!(s, "t_final = {t}");
        }
        if let Some(c) = self.cfl {
            let _ = writeln!(s, "cfl = {}", fmt_cfl(c));
        }
        if let Some(r) = self.reference {
            let _ = writeln!(s, "reference = {r}");
        }
        if let Some(p) = &self.output {
            let _ = writeln!(s, "output = {}", p.display());
        }
        if let Some(p) = &self.dump {
            let _ = writeln!(s, "dump = {}", p.display());
        }
        let _ = writeln!(s, "points = {}", self.points);
        let _ = writeln!(
            s,
            "table = {}",
            match self.table {
                TableKind::AppendixA => "appendixA",
                TableKind::Table1 => "table1",
            }
        );
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Catalog spec with this configuration's overrides applied to grid
    /// size `nx`.
    pub fn spec_for(&self, nx: usize) -> ProblemSpec {
        let mut spec = ProblemSpec::new(self.problem);
        let ny = match (spec.is_2d(), self.ny) {
            (false, _) => 1,
            (true, Some(ny)) => ny,
            // keep the catalog aspect ratio
            (true, None) => (nx * spec.ny / spec.nx).max(1),
        };
        spec = spec.with_grid(nx, ny);
        if let Some(t) = self.t_final {
            spec.t_final = t;
        }
        if let Some(c) = self.cfl {
            spec.cfl = c;
        }
        spec
    }

    /// The spec for the first (or catalog) grid.
    pub fn spec(&self) -> ProblemSpec {
        let nx = self
            .grids
            .first()
            .copied()
            .unwrap_or_else(|| ProblemSpec::new(self.problem).nx);
        self.spec_for(nx)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowUp {
    pub time: f64,
    pub reason: String,
}

/// Outcome of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub problem: ProblemId,
    pub scheme: String,
    pub nx: usize,
    pub ny: usize,
    pub t_final: f64,
    pub norms: Option<ErrorNorms>,
    pub oscillation: Option<OscillationMetrics>,
    /// `|Σū(T) - Σū(0)| / Σ|ū(0)|` of the first component, periodic runs only.
    pub mass_drift: Option<f64>,
    /// Smallest density and pressure over every stage (Euler systems).
    pub min_density: Option<f64>,
    pub min_pressure: Option<f64>,
    pub steps: usize,
    pub fallbacks: usize,
    pub wall_time: Duration,
    pub blow_up: Option<BlowUp>,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub report: RunReport,
    /// Final field; absent after a blow-up.
    pub field: Option<CellField>,
}

/// Run `spec` with `scheme`. A nonphysical state is recorded in the report
/// rather than returned as an error.
pub fn solve(spec: &ProblemSpec, scheme: &MappingKind) -> Result<SolveOutcome> {
    let start = Instant::now();
    let disc = Discretization::new(spec.system, *scheme, spec.boundary())?;
    let init = spec.initialize()?;
    let mass0 = init.interior_sum()[0];
    let abs0: f64 = init.interior_component(0).iter().map(|v| v.abs()).sum();
    let mut report = RunReport {
        problem: spec.id,
        scheme: scheme.label(),
        nx: spec.nx,
        ny: spec.ny,
        t_final: spec.t_final,
        norms: None,
        oscillation: None,
        mass_drift: None,
        min_density: None,
        min_pressure: None,
        steps: 0,
        fallbacks: 0,
        wall_time: Duration::ZERO,
        blow_up: None,
    };
    let field = match advance_to(&disc, init, 0.0, spec.t_final, spec.cfl) {
        Ok(adv) => {
            report.steps = adv.steps.len();
            report.fallbacks = adv.steps.iter().map(|s| s.fallbacks).sum();
            if spec.system.is_euler() {
                report.min_density = adv.steps.iter().map(|s| s.min_density).reduce(f64::min);
                report.min_pressure = adv.steps.iter().map(|s| s.min_pressure).reduce(f64::min);
            }
            Some(adv.field)
        }
        Err(Error::BlowUp { time, reason }) => {
            report.blow_up = Some(BlowUp { time, reason });
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(f) = &field {
        if spec.is_periodic() {
            report.mass_drift = Some((f.interior_sum()[0] - mass0).abs() / abs0.max(f64::MIN_POSITIVE));
            report.norms = Some(norms(f, &exact_advection_averages(spec, spec.t_final)?)?);
        }
        if let Some(bounds) = spec.exact_bounds() {
            report.oscillation = Some(oscillation_metrics(f, bounds));
        }
    }
    report.wall_time = start.elapsed();
    Ok(SolveOutcome { report, field })
}

/// One grid level of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub norms: ErrorNorms,
    /// `(L1, L2, L∞)` orders against the previous row.
    pub orders: Option<[f64; 3]>,
    pub mass_drift: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub problem: ProblemId,
    pub scheme: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("N,L1,L1_order,L2,L2_order,Linf,Linf_order\n");
        for r in &self.rows {
            let o = |i: usize| r.orders.map_or(String::new(), |o| fmt17(o[i]));
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.n,
                fmt17(r.norms.l1),
                o(0),
                fmt17(r.norms.l2),
                o(1),
                fmt17(r.norms.linf),
                o(2)
            );
        }
        s
    }
}

fn order_or_nan(a: f64, b: f64) -> f64 {
    empirical_order(a, b).unwrap_or(f64::NAN)
}

/// Errors against the exact solution on each grid, sequentially.
/// Needs a problem with a known exact solution.
pub fn converge(base: &ProblemSpec, scheme: &MappingKind, grids: &[usize]) -> Result<ConvergenceTable> {
    check_grids(grids)?;
    if !base.is_periodic() {
        return Err(Error::config(format!(
            "{} has no exact solution for a convergence study",
            base.id
        )));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in grids {
        let spec = base.clone().with_grid(n, 1);
        let out = solve(&spec, scheme)?;
        if let Some(b) = out.report.blow_up {
            return Err(Error::BlowUp {
                time: b.time,
                reason: b.reason,
            });
        }
        let norms = out.report.norms.expect("periodic problems report norms");
        let orders = rows.last().map(|p| {
            [
                order_or_nan(p.norms.l1, norms.l1),
                order_or_nan(p.norms.l2, norms.l2),
                order_or_nan(p.norms.linf, norms.linf),
            ]
        });
        rows.push(ConvergenceRow {
            n,
            norms,
            orders,
            mass_drift: out.report.mass_drift,
        });
    }
    Ok(ConvergenceTable {
        problem: base.id,
        scheme: scheme.label(),
        rows,
    })
}

/// `(ω, g_0(ω), g_1(ω), g_2(ω))` on a uniform grid of `[0, 1]`. The
/// data-dependent MAIM types are evaluated in a smooth context.
pub fn map_dump(kind: &MappingKind, points: usize) -> Result<Vec<[f64; 4]>> {
    if points < 2 {
        return Err(Error::config("map-dump needs at least two points"));
    }
    let ctx = MappingContext::smooth();
    Ok((0..points)
        .map(|i| {
            let w = i as f64 / (points - 1) as f64;
            [
                w,
                map_weight(kind, w, 0, &ctx),
                map_weight(kind, w, 1, &ctx),
                map_weight(kind, w, 2, &ctx),
            ]
        })
        .collect())
}

pub fn map_dump_csv(rows: &[[f64; 4]]) -> String {
    let mut s = String::from("omega,g0,g1,g2\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", fmt17(r[0]), fmt17(r[1]), fmt17(r[2]), fmt17(r[3]));
    }
    s
}

/// Field dump with one row per active interior cell.
pub fn field_csv(field: &CellField) -> String {
    let m = field.components();
    let mut s = String::new();
    match field.mesh() {
        Mesh::Line(g) => {
            s.push('x');
            for c in 0..m {
                let _ = write!(s, ",u{c}");
            }
            s.push('\n');
            for j in 0..g.n_cells as isize {
                s.push_str(&fmt17(g.center(j)));
                for v in field.cell(j) {
                    let _ = write!(s, ",{}", fmt17(*v));
                }
                s.push('\n');
            }
        }
        Mesh::Plane(g) => {
            s.push_str("x,y");
            for c in 0..m {
                let _ = write!(s, ",u{c}");
            }
            s.push('\n');
            for j in 0..g.y.n_cells {
                for i in 0..g.x.n_cells {
                    if !g.is_active(i, j) {
                        continue;
                    }
                    let _ = write!(s, "{},{}", fmt17(g.x.center(i as isize)), fmt17(g.y.center(j as isize)));
                    for v in field.cell2(i as isize, j as isize) {
                        let _ = write!(s, ",{}", fmt17(*v));
                    }
                    s.push('\n');
                }
            }
        }
    }
    s
}

pub fn report_csv(r: &RunReport) -> String {
    let opt = |v: Option<f64>| v.map_or(String::new(), fmt17);
    let mut s = String::from(
        "problem,scheme,nx,ny,t_final,L1,L2,Linf,overshoot,undershoot,total_variation,mass_drift,min_density,min_pressure,steps,fallbacks,blow_up,blow_up_time\n",
    );
    let _ = writeln!(
        s,
        "{},\"{}\",{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.problem,
        r.scheme,
        r.nx,
        r.ny,
        fmt17(r.t_final),
        opt(r.norms.map(|n| n.l1)),
        opt(r.norms.map(|n| n.l2)),
        opt(r.norms.map(|n| n.linf)),
        opt(r.oscillation.map(|o| o.overshoot)),
        opt(r.oscillation.map(|o| o.undershoot)),
        opt(r.oscillation.map(|o| o.total_variation)),
        opt(r.mass_drift),
        opt(r.min_density),
        opt(r.min_pressure),
        r.steps,
        r.fallbacks,
        r.blow_up.is_some(),
        opt(r.blow_up.as_ref().map(|b| b.time)),
    );
    s
}

const CACHE_MAGIC: &[u8; 8] = b"WENOREF1";

fn cache_path(dir: &Path, spec: &ProblemSpec, n: usize) -> PathBuf {
    dir.join(format!("{}-n{}-t{}-js.bin", spec.id, n, spec.t_final))
}

/// Serialize interior data with a header and a trailing SHA-256.
fn encode_reference(spec: &ProblemSpec, n: usize, field: &CellField) -> Vec<u8> {
    let m = field.components();
    let mut buf = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    let name = spec.id.name().as_bytes();
    buf.extend_from_slice(&(name.len() as u32).to_le_bytes());
    buf.extend_from_slice(name);
    buf.extend_from_slice(&(n as u64).to_le_bytes());
    buf.extend_from_slice(&(m as u32).to_le_bytes());
    buf.extend_from_slice(&spec.t_final.to_le_bytes());
    for j in 0..n as isize {
        for v in field.cell(j) {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest);
    buf
}

fn decode_reference(bytes: &[u8], spec: &ProblemSpec, n: usize) -> std::result::Result<CellField, String> {
    if bytes.len() < 8 + 32 {
        return Err("truncated".into());
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err("checksum mismatch".into());
    }
    let mut at = 0usize;
    let mut take = |k: usize| -> std::result::Result<&[u8], String> {
        let s = body.get(at..at + k).ok_or("truncated")?;
        at += k;
        Ok(s)
    };
    if take(8)? != CACHE_MAGIC {
        return Err("bad magic".into());
    }
    let len = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    if take(len)? != spec.id.name().as_bytes() {
        return Err("problem mismatch".into());
    }
    let stored_n = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
    let m = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let t = f64::from_le_bytes(take(8)?.try_into().unwrap());
    if stored_n != n || m != spec.system.components() || t != spec.t_final {
        return Err("header mismatch".into());
    }
    let grid = Grid1D::new(spec.x_range.0, spec.x_range.1, n).map_err(|e| e.to_string())?;
    let mut field = CellField::zeros(Mesh::Line(grid), m);
    for j in 0..n as isize {
        for c in 0..m {
            field.cell_mut(j)[c] = f64::from_le_bytes(take(8)?.try_into().unwrap());
        }
    }
    if at != body.len() {
        return Err("trailing bytes".into());
    }
    Ok(field)
}

/// WENO-JS solution of a 1D Euler problem on `n` cells, cached in `dir`.
/// Returns the field and whether it came from the cache. A corrupt cache
/// file is regenerated.
pub fn generate_reference(spec: &ProblemSpec, n: usize, dir: &Path) -> Result<(CellField, bool)> {
    if spec.system != crate::system::SystemKind::Euler1D {
        return Err(Error::config(format!(
            "references are for 1D Euler problems, not {}",
            spec.id
        )));
    }
    let path = cache_path(dir, spec, n);
    if let Ok(mut f) = fs::File::open(&path) {
        let mut bytes = Vec::new();
        f.read_to_end(&mut bytes)?;
        if let Ok(field) = decode_reference(&bytes, spec, n) {
            return Ok((field, true));
        }
    }
    let fine = spec.clone().with_grid(n, 1);
    let out = solve(&fine, &MappingKind::Identity)?;
    let field = match (out.field, out.report.blow_up) {
        (Some(f), _) => f,
        (None, Some(b)) => {
            return Err(Error::BlowUp {
                time: b.time,
                reason: b.reason,
            })
        }
        (None, None) => unreachable!("solve returns a field or a blow-up"),
    };
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&encode_reference(spec, n, &field))?;
    fs::rename(&tmp, &path)?;
    Ok((field, false))
}

/// Read and verify a cache file; a corrupt file is an error here.
pub fn read_reference(spec: &ProblemSpec, n: usize, dir: &Path) -> Result<CellField> {
    let path = cache_path(dir, spec, n);
    let bytes = fs::read(&path)?;
    decode_reference(&bytes, spec, n).map_err(|reason| Error::CorruptCache {
        path: path.display().to_string(),
        reason,
    })
}

/// Block averages of a fine 1D field onto `nx` cells (the fine size must be
/// a multiple of `nx`).
pub fn restrict(fine: &CellField, nx: usize) -> Result<CellField> {
    let Mesh::Line(g) = *fine.mesh() else {
        return Err(Error::GridMismatch("restriction is 1D only".into()));
    };
    if nx == 0 || g.n_cells % nx != 0 {
        return Err(Error::GridMismatch(format!(
            "{} cells do not split into {nx}",
            g.n_cells
        )));
    }
    let ratio = g.n_cells / nx;
    let coarse_grid = Grid1D::new(g.x_left, g.x_right, nx)?;
    let m = fine.components();
    let mut out = CellField::zeros(Mesh::Line(coarse_grid), m);
    for j in 0..nx {
        for c in 0..m {
            let s: f64 = (0..ratio).map(|k| fine.cell((j * ratio + k) as isize)[c]).sum();
            out.cell_mut(j as isize)[c] = s / ratio as f64;
        }
    }
    Ok(out)
}

/// Density errors of a 1D Euler solution against a restricted reference.
pub fn reference_norms(numeric: &CellField, reference: &CellField) -> Result<ErrorNorms> {
    let nx = numeric.mesh().x().n_cells;
    let coarse = restrict(reference, nx)?;
    norms_of(
        &numeric.interior_component(0),
        &coarse.interior_component(0),
        numeric.mesh().x().dx,
    )
}

fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("weno-maim-cache"))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// What a run produced, for the caller to choose an exit status.
#[derive(Debug, Clone)]
pub enum RunSummary {
    Solved(RunReport),
    Converged(ConvergenceTable),
    BlewUp(BlowUp),
    Written,
}

/// Execute a configuration, writing its CSV artifacts.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    match config.mode {
        Mode::Solve => {
            let spec = config.spec();
            let mut out = solve(&spec, &config.scheme)?;
            if let (Some(n), Some(field)) = (config.reference, &out.field) {
                let (reference, _) = generate_reference(&spec, n, &cache_dir())?;
                out.report.norms = Some(reference_norms(field, &reference)?);
            }
            write_out(config.output.as_deref(), &report_csv(&out.report))?;
            if let (Some(p), Some(f)) = (&config.dump, &out.field) {
                write_out(Some(p), &field_csv(f))?;
            }
            Ok(match out.report.blow_up.clone() {
                Some(b) => RunSummary::BlewUp(b),
                None => RunSummary::Solved(out.report),
            })
        }
        Mode::Converge => {
            let grids = if config.grids.is_empty() {
                vec![20, 40, 80, 160, 320]
            } else {
                config.grids.clone()
            };
            let base = config.spec_for(grids[0]);
            match converge(&base, &config.scheme, &grids) {
                Ok(t) => {
                    write_out(config.output.as_deref(), &t.to_csv())?;
                    Ok(RunSummary::Converged(t))
                }
                Err(Error::BlowUp { time, reason }) => Ok(RunSummary::BlewUp(BlowUp { time, reason })),
                Err(e) => Err(e),
            }
        }
        Mode::MapDump => {
            let rows = map_dump(&config.scheme, config.points)?;
            write_out(config.output.as_deref(), &map_dump_csv(&rows))?;
            Ok(RunSummary::Written)
        }
        Mode::Tables => {
            let text = match config.table {
                TableKind::AppendixA => appendix_a_csv(),
                TableKind::Table1 => table1_csv(),
            };
            write_out(config.output.as_deref(), &text)?;
            Ok(RunSummary::Written)
        }
    }
}

/// The seven schemes compared throughout the benchmarks, with default
/// parameters.
pub fn standard_schemes() -> Vec<MappingKind> {
    vec![
        MappingKind::Identity,
        MappingKind::Henrick,
        MappingKind::improved_default(),
        MappingKind::maim1_default(),
        MappingKind::maim2_default(),
        MappingKind::maim3_default(),
        MappingKind::maim4_default(),
    ]
}
