//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::reference_tables::{APPENDIX_A, TABLE1};
use weno_maim::analysis::{appendix_a, table1};
use weno_maim::field::{BoundaryCondition, CellField, Grid1D, Grid2D, Mesh, Side};
use weno_maim::mapping::{g_im, g_m, map_weight, MaimParams, MappingContext, MappingKind, OPTIMAL_WEIGHTS};
use weno_maim::problems::{ProblemId, ProblemSpec};
use weno_maim::runner::{converge, solve, standard_schemes, ConvergenceTable};
use weno_maim::solver::{rk3_step, Discretization};
use weno_maim::system::{euler1d_conservative, euler2d_conservative, SystemKind};

const GRIDS: [usize; 5] = [20, 40, 80, 160, 320];

/// Scheme used for the production-size 2D runs.
fn smoke_scheme() -> MappingKind {
    MappingKind::Identity
}

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// Mass drifts gathered from the periodic runs for the conservation check.
type Drifts = Vec<(String, f64)>;

fn convergence_tables(id: ProblemId, schemes: &[MappingKind], drifts: &mut Drifts) -> Vec<ConvergenceTable> {
    let base = ProblemSpec::new(id);
    schemes
        .iter()
        .map(|s| {
            let table = converge(&base, s, &GRIDS).expect("convergence run");
            for row in &table.rows {
                drifts.push((
                    format!("{id} {} N={}", table.scheme, row.n),
                    row.mass_drift.unwrap_or(f64::NAN),
                ));
            }
            table
        })
        .collect()
}

fn final_orders(t: &ConvergenceTable) -> [f64; 3] {
    t.rows.last().and_then(|r| r.orders).expect("at least two grids")
}

fn smooth_convergence(drifts: &mut Drifts) -> Verdict {
    let tables = convergence_tables(ProblemId::LaeSine, &standard_schemes(), drifts);
    let mut pass = true;
    let mut parts = Vec::new();
    for t in &tables {
        let o = final_orders(t)[0];
        pass &= (o - 5.0).abs() <= 0.1;
        parts.push(format!("{} {o:.3}", t.scheme));
    }
    let js40 = tables[0].rows[1].norms.l1;
    let rel = (js40 / 9.27609e-05 - 1.0).abs();
    pass &= rel <= 0.05;
    Verdict::new(
        pass,
        format!(
            "L1 orders at 320: {}; JS L1(40) = {js40:.5e} ({:.2}% off)",
            parts.join(", "),
            100.0 * rel
        ),
    )
}

fn critical_point(drifts: &mut Drifts) -> Verdict {
    let schemes = [
        MappingKind::Identity,
        MappingKind::Henrick,
        MappingKind::maim1_default(),
        MappingKind::maim2_default(),
        MappingKind::maim3_default(),
        MappingKind::maim4_default(),
    ];
    let tables = convergence_tables(ProblemId::LaeCritical, &schemes, drifts);
    let js_linf = final_orders(&tables[0])[2];
    let mut pass = (js_linf - 3.3085).abs() <= 0.3;
    let mut parts = vec![format!("JS Linf order {js_linf:.4}")];
    for t in &tables[1..] {
        let o = final_orders(t)[0];
        pass &= o >= 4.9;
        parts.push(format!("{} L1 {o:.3}", t.scheme));
    }
    Verdict::new(pass, parts.join(", "))
}

fn appendix_regeneration() -> Verdict {
    let rows = appendix_a();
    if rows.len() != APPENDIX_A.len() {
        return Verdict::new(false, format!("{} rows, expected {}", rows.len(), APPENDIX_A.len()));
    }
    let mut bad = Vec::new();
    for (row, &(r, s, dn, dd, crit, qmax, alpha)) in rows.iter().zip(APPENDIX_A.iter()) {
        let a = row.analysis;
        let same_d = row.d.0 * dd == dn * row.d.1;
        let crit_ok = match a.omega_crit {
            None => crit.is_nan(),
            Some(w) => (w - crit).abs() <= 1e-7,
        };
        let qmax_ok = if qmax.is_nan() {
            a.q_max < 0.0
        } else {
            (a.q_max - qmax).abs() <= 1e-7
        };
        let alpha_ok = (a.alpha - alpha).abs() < 5e-5;
        if row.r != r || row.s != s || !same_d || !crit_ok || !qmax_ok || !alpha_ok {
            bad.push(format!(
                "({r},{s}) crit {:?} vs {crit}, q_max {:.9} vs {qmax}, alpha {:.4} vs {alpha}",
                a.omega_crit, a.q_max, a.alpha
            ));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} rows match", rows.len())
    } else {
        format!("{} of {} rows differ: {}", bad.len(), rows.len(), bad.join("; "))
    };
    Verdict::new(bad.is_empty(), detail)
}

fn order_table() -> Verdict {
    let rows = table1();
    let mut bad = Vec::new();
    for (p, want) in rows.iter().zip(TABLE1.iter()) {
        let got = [
            p.r,
            p.n_cp,
            p.js,
            p.m1,
            p.m2,
            p.im.order,
            p.im.k_min.unwrap_or(0),
            p.maim.order,
            p.maim.k_min.unwrap_or(0),
        ];
        if &got != want {
            bad.push(format!("{got:?} vs {want:?}"));
        }
    }
    let pass = bad.is_empty() && rows.len() == TABLE1.len();
    Verdict::new(
        pass,
        format!("{} rows, {} mismatches {}", rows.len(), bad.len(), bad.join("; ")),
    )
}

fn mapping_identities() -> Verdict {
    let ctx = MappingContext::smooth();
    let n = 10_000;
    let maim5 = MappingKind::Maim(MaimParams::maim5(2, 1.0, 1.0).unwrap());
    let mut worst_m: f64 = 0.0;
    let mut worst_im: f64 = 0.0;
    let im_cases = [(2, 0.1, 10.0), (4, 1.0, 5.0), (6, 0.5, 1.0)];
    for i in 0..n {
        let w = i as f64 / (n - 1) as f64;
        for s in 0..3 {
            let d = OPTIMAL_WEIGHTS[s];
            worst_m = worst_m.max((map_weight(&maim5, w, s, &ctx) - g_m(w, d)).abs());
            for &(k, a, q) in &im_cases {
                let maim2 = MappingKind::Maim(MaimParams::maim2(k, a, q, 0.0).unwrap());
                worst_im = worst_im.max((map_weight(&maim2, w, s, &ctx) - g_im(w, d, k, a)).abs());
            }
        }
    }
    Verdict::new(
        worst_m < 1e-13 && worst_im < 1e-13,
        format!("max |MAIM5(2,1,1) - M| = {worst_m:.2e}, max |MAIM2(k,A,Q,0) - IM(k,A)| = {worst_im:.2e}"),
    )
}

/// Least-squares slope of `log|g(d + h) - d|` against `log h`.
fn flatness_slope(kind: &MappingKind, s: usize) -> f64 {
    let ctx = MappingContext::smooth();
    let d = OPTIMAL_WEIGHTS[s];
    let pts: Vec<(f64, f64)> = (0..=8)
        .map(|i| {
            let h = 10f64.powf(-1.0 - 0.25 * i as f64);
            // step actually representable at d
            let x = (d + h) - d;
            (x.ln(), (map_weight(kind, d + h, s, &ctx) - d).abs().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    num / den
}

fn mapping_properties() -> Verdict {
    let mut failures = Vec::new();
    let contexts = [
        MappingContext::smooth(),
        MappingContext::new([1e-3, 2.0, 0.5], [0.2, 0.3, 0.5]),
        MappingContext::new([5.0, 1e-8, 1e-2], [1e-12, 0.99, 0.01]),
    ];
    let mut kinds = standard_schemes();
    kinds.push(MappingKind::maim5_default());
    for kind in &kinds {
        for ctx in &contexts {
            for s in 0..3 {
                let d = OPTIMAL_WEIGHTS[s];
                let ok = map_weight(kind, 0.0, s, ctx) == 0.0
                    && (map_weight(kind, 1.0, s, ctx) - 1.0).abs() <= 2.0 * f64::EPSILON
                    && (map_weight(kind, d, s, ctx) - d).abs() <= 2.0 * f64::EPSILON * d;
                if !ok {
                    failures.push(format!("fixed point {kind} s={s}"));
                }
            }
        }
    }

    let monotone = [
        MappingKind::maim1_default(),
        MappingKind::maim2_default(),
        MappingKind::maim5_default(),
        MappingKind::Maim(MaimParams::maim2(3, 0.5, 2.0, 0.05).unwrap()),
        MappingKind::Maim(MaimParams::maim5(5, 1e-3, 3.0).unwrap()),
    ];
    let ctx = MappingContext::smooth();
    for kind in &monotone {
        for s in 0..3 {
            let n = 10_000;
            let g: Vec<f64> = (0..n)
                .map(|i| map_weight(kind, i as f64 / (n - 1) as f64, s, &ctx))
                .collect();
            if let Some(i) = (1..n).find(|&i| g[i] < g[i - 1] - 1e-12) {
                failures.push(format!("monotonicity {kind} s={s} at {i}"));
            }
        }
    }

    let mut slopes = Vec::new();
    for k in 1..=4u32 {
        let mut p = MaimParams::maim5(k, 1.0, 1.0).unwrap();
        // the odd-k sign blend only steepens inside |ω - d| < δ; widen it over the probes
        if k % 2 == 1 {
            p.delta = 1.0;
        }
        let want = if k % 2 == 0 { k + 1 } else { k + 2 } as f64;
        for s in 0..3 {
            let slope = flatness_slope(&MappingKind::Maim(p), s);
            if (slope - want).abs() > 0.25 {
                failures.push(format!("flatness k={k} s={s}: {slope:.3} vs {want}"));
            }
            slopes.push(slope);
        }
    }

    // m_s from the recommended α_s of the fifth-order weights
    let alphas: Vec<f64> = appendix_a()
        .iter()
        .filter(|r| r.r == 3)
        .map(|r| r.analysis.alpha)
        .collect();
    let mut worst_deriv: f64 = 0.0;
    for k in [2u32, 10] {
        let m = [0, 1, 2].map(|s| alphas[s] / (k + 1) as f64);
        let p = MaimParams::new(k, 1e-6, weno_maim::mapping::AdaptiveControl::Type1 { m }).unwrap();
        let kind = MappingKind::Maim(p);
        for s in 0..3 {
            for w in [1e-7, 1.0 - 1e-7] {
                let h = 1e-9;
                let deriv = (map_weight(&kind, w + h, s, &ctx) - map_weight(&kind, w - h, s, &ctx)) / (2.0 * h);
                worst_deriv = worst_deriv.max((deriv - 1.0).abs());
            }
        }
    }
    if worst_deriv > 1e-3 {
        failures.push(format!("endpoint derivative off by {worst_deriv:.2e}"));
    }

    let smin = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let smax = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let detail = format!(
        "{} failures {}; flatness slopes in [{smin:.3}, {smax:.3}]; worst endpoint |g'-1| {worst_deriv:.2e}",
        failures.len(),
        failures.join("; ")
    );
    Verdict::new(failures.is_empty(), detail)
}

fn long_time_advection(drifts: &mut Drifts) -> Verdict {
    let schemes = [
        MappingKind::Identity,
        MappingKind::Henrick,
        MappingKind::maim3_default(),
        MappingKind::maim4_default(),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for id in [ProblemId::Slp, ProblemId::Bicwp] {
        let mut spec = ProblemSpec::new(id).with_grid(200, 1);
        spec.t_final = 200.0;
        let reports: Vec<_> = schemes
            .iter()
            .map(|s| solve(&spec, s).expect("advection run").report)
            .collect();
        let l1: Vec<f64> = reports.iter().map(|r| r.norms.expect("norms").l1).collect();
        for r in &reports {
            drifts.push((format!("{id} {} N=200", r.scheme), r.mass_drift.unwrap_or(f64::NAN)));
        }
        for r in &reports[2..] {
            let o = r.oscillation.expect("bounds");
            pass &= o.overshoot < 5e-3 && o.undershoot < 5e-3;
            parts.push(format!(
                "{id} {} over {:.2e} under {:.2e}",
                r.scheme, o.overshoot, o.undershoot
            ));
        }
        pass &= l1[2] < l1[0] && l1[2] < l1[1];
        parts.push(format!(
            "{id} L1 JS {:.4e} M {:.4e} MAIM3 {:.4e} MAIM4 {:.4e}",
            l1[0], l1[1], l1[2], l1[3]
        ));
    }
    Verdict::new(pass, parts.join(", "))
}

fn blast_wave() -> Verdict {
    let spec = ProblemSpec::new(ProblemId::Blast);
    let mut pass = true;
    let mut parts = Vec::new();
    let mut deviations = Vec::new();
    for kind in standard_schemes() {
        let r = solve(&spec, &kind).expect("blast run").report;
        let expect_blow_up = matches!(kind, MappingKind::Improved { .. })
            || matches!(kind, MappingKind::Maim(p) if p.control.index() == 2);
        match (&r.blow_up, expect_blow_up) {
            (None, _) => {
                let positive = r.min_density.unwrap_or(0.0) > 0.0 && r.min_pressure.unwrap_or(0.0) > 0.0;
                pass &= positive;
                if expect_blow_up {
                    deviations.push(r.scheme.clone());
                }
                parts.push(format!("{} completes", r.scheme));
            }
            (Some(b), true) => parts.push(format!("{} blows up at t={:.4}", r.scheme, b.time)),
            (Some(b), false) => {
                pass = false;
                parts.push(format!("{} unexpectedly blows up at t={:.4}", r.scheme, b.time));
            }
        }
    }
    let mut detail = parts.join(", ");
    if !deviations.is_empty() {
        detail.push_str(&format!("; documented deviation: {} completed", deviations.join(", ")));
    }
    Verdict::new(pass, detail)
}

fn conservation(drifts: &Drifts) -> Verdict {
    let worst = drifts
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .cloned()
        .unwrap_or_default();
    let pass = !drifts.is_empty() && drifts.iter().all(|d| d.1 < 1e-12);
    Verdict::new(
        pass,
        format!(
            "{} periodic runs, largest drift {:.2e} ({})",
            drifts.len(),
            worst.1,
            worst.0
        ),
    )
}

fn density_range(field: &CellField) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    field.for_each_active(|u| {
        lo = lo.min(u[0]);
        hi = hi.max(u[0]);
    });
    (lo, hi)
}

fn step_fixed(disc: &Discretization, field: &mut CellField, dt: f64, steps: usize) {
    let mut work = field.clone();
    for n in 0..steps {
        let next = rk3_step(field.data(), n as f64 * dt, dt, |u, t| {
            work.data_mut().copy_from_slice(u);
            Ok(disc.residual(&mut work, t)?.values)
        })
        .expect("embedding step");
        field.data_mut().copy_from_slice(&next);
    }
}

/// Largest difference between a 1D Sod run and the same data embedded in a
/// 2D mesh along `axis`, constant across the other direction.
fn embedding_difference(axis: usize) -> f64 {
    let n = 100;
    let width = 4;
    let kind = MappingKind::maim3_default();
    let line = Grid1D::new(0.0, 1.0, n).unwrap();
    let across = Grid1D::new(0.0, width as f64 / n as f64, width).unwrap();
    let sod = |x: f64| if x < 0.5 { (1.0, 1.0) } else { (0.125, 0.1) };

    let mut f1 = CellField::zeros(Mesh::Line(line), 3);
    for j in 0..n {
        let (rho, p) = sod(line.center(j as isize));
        f1.cell_mut(j as isize)
            .copy_from_slice(&euler1d_conservative(rho, 0.0, p));
    }
    let grid = if axis == 0 {
        Grid2D::new(line, across)
    } else {
        Grid2D::new(across, line)
    };
    let mut f2 = CellField::zeros(Mesh::Plane(grid), 4);
    for j in 0..n {
        let (rho, p) = sod(line.center(j as isize));
        let u = euler2d_conservative(rho, 0.0, 0.0, p);
        for k in 0..width {
            let (ix, iy) = if axis == 0 { (j, k) } else { (k, j) };
            f2.cell2_mut(ix as isize, iy as isize).copy_from_slice(&u);
        }
    }

    let outflow = BoundaryCondition::one_d(Side::Outflow, Side::Outflow);
    let bc2 = if axis == 0 {
        BoundaryCondition {
            x_lo: Side::Outflow,
            x_hi: Side::Outflow,
            y_lo: Side::Periodic,
            y_hi: Side::Periodic,
        }
    } else {
        BoundaryCondition {
            x_lo: Side::Periodic,
            x_hi: Side::Periodic,
            y_lo: Side::Outflow,
            y_hi: Side::Outflow,
        }
    };
    let d1 = Discretization::new(SystemKind::Euler1D, kind, outflow).unwrap();
    let d2 = Discretization::new(SystemKind::Euler2D, kind, bc2).unwrap();
    let dt = 1e-3;
    let steps = 100;
    step_fixed(&d1, &mut f1, dt, steps);
    step_fixed(&d2, &mut f2, dt, steps);

    let (normal, tangential) = if axis == 0 { (1, 2) } else { (2, 1) };
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let a = f1.cell(j as isize);
        for k in 0..width {
            let (ix, iy) = if axis == 0 { (j, k) } else { (k, j) };
            let b = f2.cell2(ix as isize, iy as isize);
            worst = worst
                .max((a[0] - b[0]).abs())
                .max((a[1] - b[normal]).abs())
                .max((a[2] - b[3]).abs())
                .max(b[tangential].abs());
        }
    }
    worst
}

fn two_d_smoke() -> Verdict {
    let runs = [
        (ProblemId::Riemann2d, 200, 200),
        (ProblemId::Dmr, 400, 100),
        (ProblemId::Ffs, 180, 60),
    ];
    let scheme = smoke_scheme();
    let mut pass = true;
    let mut parts = Vec::new();
    for (id, nx, ny) in runs {
        let spec = ProblemSpec::new(id).with_grid(nx, ny);
        let start = Instant::now();
        let out = solve(&spec, &scheme).expect("2D run");
        match (&out.report.blow_up, &out.field) {
            (None, Some(field)) => {
                let (lo, hi) = density_range(field);
                pass &= lo >= 0.1 && hi <= 25.0;
                parts.push(format!(
                    "{id} {nx}x{ny} rho in [{lo:.3}, {hi:.3}] ({:.0} s)",
                    start.elapsed().as_secs_f64()
                ));
            }
            (b, _) => {
                pass = false;
                parts.push(format!("{id} blew up: {b:?}"));
            }
        }
    }
    let ex = embedding_difference(0);
    let ey = embedding_difference(1);
    pass &= ex <= 1e-12 && ey <= 1e-12;
    parts.push(format!("embedding max diff x {ex:.2e}, y {ey:.2e}"));
    Verdict::new(pass, format!("{}: {}", scheme.label(), parts.join(", ")))
}

fn main() -> ExitCode {
    // comma-separated subset of criteria, for iterating on one of them
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut drifts = Drifts::new();
    let mut all = true;
    let mut report = |n: u32, budget: Duration, run: &mut dyn FnMut() -> Verdict| {
        if only.as_ref().is_some_and(|o| !o.contains(&n)) {
            return;
        }
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        let pass = v.pass && took <= budget;
        all &= pass;
        println!(
            "criterion {n}: {} | {} | {:.1} s (budget {} s)",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    };
    let secs = Duration::from_secs;
    report(1, secs(10), &mut || smooth_convergence(&mut drifts));
    report(2, secs(10), &mut || critical_point(&mut drifts));
    report(3, secs(5), &mut appendix_regeneration);
    report(4, secs(1), &mut order_table);
    report(5, secs(1), &mut mapping_identities);
    report(6, secs(5), &mut mapping_properties);
    report(7, secs(120), &mut || long_time_advection(&mut drifts));
    report(8, secs(30), &mut blast_wave);
    report(9, secs(1), &mut || conservation(&drifts));
    report(10, secs(300), &mut two_d_smoke);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
