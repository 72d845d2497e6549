//! Acceptance checks, one pass/fail line per criterion.
//!
//! `WAVEKIT_ACCEPTANCE=A1,A4` runs a subset. Failures are listed at the end;
//! the exit status is nonzero only with `WAVEKIT_ACCEPTANCE_STRICT=1`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wavekit::grid::{fill_ghost_cells, Grid1D, State};
use wavekit::harness::{
    convergence_study, envelope_deviation, radial_scatter, time_reversibility_test, transpose_asymmetry,
    ConvergenceRow, Norm, ReversibilityOptions, StudyOptions,
};
use wavekit::problems::{hump_bathymetry, ProblemId, ProblemKind, ProblemSpec, SolverForm, StegotonParams};
use wavekit::recon::weno5_edge;
use wavekit::riemann::{RiemannSolver, StressLaw};
use wavekit::solver::{compute_dt, evolve, rhs_filled, ssprk104_step};
use wavekit::ReconKind;

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> wavekit::Result<Outcome>;

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value <= target * factor && value >= target / factor
}

fn table(rows: &[ConvergenceRow]) -> String {
    rows.iter()
        .map(|r| match r.order {
            Some(o) => format!("{}:{:.3e}({:.2})", r.resolution, r.error, o),
            None => format!("{}:{:.3e}", r.resolution, r.error),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn errors_within(rows: &[ConvergenceRow], target: &[f64], factor: f64) -> bool {
    rows.len() == target.len() && rows.iter().zip(target).all(|(r, &p)| within_factor(r.error, p, factor))
}

fn finest_order(rows: &[ConvergenceRow]) -> f64 {
    rows.last().and_then(|r| r.order).unwrap_or(f64::NAN)
}

fn a1() -> wavekit::Result<Outcome> {
    let spec = ProblemSpec::new(ProblemId::AcousticsHomog, 200, 1)
        .with_recon(ReconKind::Componentwise)
        .with_cfl(2.45);
    let rows = convergence_study(&spec, &[200, 400, 800, 1600], &StudyOptions::characteristics())?;
    let target = [3.60e-2, 3.65e-3, 1.85e-4, 7.35e-6];
    let order = finest_order(&rows);
    Ok(Outcome {
        pass: errors_within(&rows, &target, 3.0) && order >= 4.0,
        detail: format!("{} ; need errors within 3x of target, finest order >= 4.0", table(&rows)),
    })
}

fn interface_study(solver: SolverForm, recon: ReconKind) -> wavekit::Result<Vec<ConvergenceRow>> {
    let spec = ProblemSpec::new(ProblemId::AcousticsInterface, 200, 1)
        .with_pulse_width(4.0)?
        .with_solver(solver)
        .with_recon(recon);
    convergence_study(&spec, &[200, 400, 800, 1600], &StudyOptions::characteristics())
}

fn a2() -> wavekit::Result<Outcome> {
    let rows = interface_study(SolverForm::FWave, ReconKind::Characteristicwise)?;
    let target = [5.01e-3, 4.63e-4, 2.51e-5, 6.49e-7];
    let orders: Vec<f64> = rows.iter().filter_map(|r| r.order).collect();
    let rising = orders.windows(2).all(|w| w[1] > w[0]);
    Ok(Outcome {
        pass: errors_within(&rows, &target, 3.0) && rising && finest_order(&rows) >= 4.5,
        detail: format!(
            "{} ; need errors within 3x of target, rising orders, finest >= 4.5",
            table(&rows)
        ),
    })
}

fn a3() -> wavekit::Result<Outcome> {
    let rows = interface_study(SolverForm::QWave, ReconKind::Componentwise)?;
    let order = finest_order(&rows);
    let finest = rows.last().map(|r| r.error).unwrap_or(f64::NAN);
    Ok(Outcome {
        pass: (order - 2.0).abs() <= 0.25 && within_factor(finest, 1.22e-4, 3.0),
        detail: format!(
            "{} ; need finest order within 0.25 of 2, error within 3x of 1.22e-4",
            table(&rows)
        ),
    })
}

/// Final (h, hu, hv) and b of the lake at rest over the hump.
fn lake_at_rest(recon: ReconKind) -> wavekit::Result<(Vec<f64>, Vec<f64>)> {
    let spec = ProblemSpec::new(ProblemId::SwHumpZero, 200, 100)
        .with_recon(recon)
        .with_solver(SolverForm::FWave)
        .with_t_final(0.12);
    let setup = spec.setup()?;
    let end = evolve(&setup.state, &setup.scheme, setup.t_final, &[])?.pop().expect("final frame");
    Ok((end.interior_q(), end.interior_aux(0)))
}

fn a4() -> wavekit::Result<Outcome> {
    let (q, b) = lake_at_rest(ReconKind::FWaveSlope)?;
    let surface = (0..b.len()).map(|i| (q[3 * i] + b[i] - 1.0).abs()).fold(0.0, f64::max);
    let momentum = (0..b.len())
        .map(|i| q[3 * i + 1].abs().max(q[3 * i + 2].abs()))
        .fold(0.0, f64::max);
    Ok(Outcome {
        pass: surface <= 1e-11 && momentum <= 1e-11,
        detail: format!("max|h+b-1| = {surface:.2e}, max|hu|,|hv| = {momentum:.2e} ; need both <= 1e-11"),
    })
}

/// Cells where the hump is below this height count as away from it.
const AWAY_FROM_HUMP: f64 = 1e-2;

fn a5() -> wavekit::Result<Outcome> {
    let (q, _) = lake_at_rest(ReconKind::Componentwise)?;
    let (mx, my) = (200, 100);
    let mut away = 0.0f64;
    for j in 0..my {
        for i in 0..mx {
            let (x, y) = ((i as f64 + 0.5) / 100.0, (j as f64 + 0.5) / 100.0);
            if hump_bathymetry(x, y) < AWAY_FROM_HUMP {
                let c = j * mx + i;
                away = away.max((q[3 * c] + hump_bathymetry(x, y) - 1.0).abs());
            }
        }
    }
    Ok(Outcome {
        pass: away >= 1e-4,
        detail: format!("componentwise max|h+b-1| where b < {AWAY_FROM_HUMP} = {away:.2e} ; need >= 1e-4"),
    })
}

fn a6() -> wavekit::Result<Outcome> {
    let coarse = time_reversibility_test(&ReversibilityOptions::new(24, 100.0, 10.0))?;
    let fine = time_reversibility_test(&ReversibilityOptions::new(48, 100.0, 10.0))?;
    let ratio = coarse.max_diff / fine.max_diff;
    Ok(Outcome {
        pass: coarse.max_diff <= 2e-2 && ratio >= 5.0,
        detail: format!(
            "max diff 24 cells/layer {:.3e}, 48 cells/layer {:.3e}, ratio {ratio:.1} ; need <= 2e-2 and ratio >= 5",
            coarse.max_diff, fine.max_diff
        ),
    })
}

fn a7() -> wavekit::Result<Outcome> {
    let mut p = StegotonParams::new(24);
    p.periodic = true;
    p.layers = Some(10);
    p.initial_strain = 0.05;
    let mut spec = ProblemSpec::new(ProblemId::Stegoton, 24, 1);
    spec.kind = ProblemKind::Stegoton(p);
    let setup = spec.setup()?;
    let scheme = &setup.scheme;
    let grid = &scheme.grid;
    let dx = grid.spacing()[0];

    let mut s = setup.state.clone();
    fill_ghost_cells(&mut s, grid, &scheme.bc)?;
    let first = rhs_filled(&s, scheme)?;
    let dt = compute_dt(first.max_speed, grid.spacing(), scheme.config.cfl_target).expect("moving waves");
    let totals = |s: &State| -> (Vec<f64>, Vec<f64>) {
        let q = s.interior_q();
        let kappa: Vec<f64> = s.layout.interior_indices().map(|c| s.kappa[c]).collect();
        let mut sum = vec![0.0; 2];
        let mut abs = vec![0.0; 2];
        for (i, k) in kappa.iter().enumerate() {
            for m in 0..2 {
                sum[m] += k * q[2 * i + m] * dx;
                abs[m] += (k * q[2 * i + m] * dx).abs();
            }
        }
        (sum, abs)
    };
    let (start, start_abs) = totals(&s);
    for _ in 0..1000 {
        s = ssprk104_step(&s, dt, |st| {
            fill_ghost_cells(st, grid, &scheme.bc)?;
            rhs_filled(st, scheme).map(|r| r.dqdt)
        })?;
    }
    let (end, end_abs) = totals(&s);
    let drift: Vec<f64> = (0..2)
        .map(|m| (end[m] - start[m]).abs() / start_abs[m].max(end_abs[m]))
        .collect();
    Ok(Outcome {
        pass: drift.iter().all(|&d| d <= 1e-12),
        detail: format!(
            "relative drift strain {:.2e}, momentum {:.2e} after 1000 steps to t = {:.1} ; need <= 1e-12",
            drift[0],
            drift[1],
            s.t
        ),
    })
}

/// Coefficients of the stability polynomial: one step of y' = z y applied
/// to the coefficient vector of a polynomial in z, where y' = z y is the
/// shift.
fn stability_coefficients() -> wavekit::Result<Vec<f64>> {
    let n = 12;
    let grid = Grid1D::new(0.0, 1.0, n)?;
    let mut s = State::new(&grid.into(), 1, 0);
    s.set_q_with(|i, _, q| q[0] = if i == 0 { 1.0 } else { 0.0 });
    let out = ssprk104_step(&s, 1.0, |st| {
        let c = st.interior_q();
        let mut shifted = vec![0.0; n];
        shifted[1..].copy_from_slice(&c[..n - 1]);
        Ok(shifted)
    })?;
    Ok(out.interior_q())
}

fn logistic_error(steps: usize) -> wavekit::Result<f64> {
    let exact = |t: f64| 0.1 / (0.1 + 0.9 * (-t).exp());
    let t_end = 4.0;
    let grid = Grid1D::new(0.0, 1.0, 1)?;
    let mut s = State::new(&grid.into(), 1, 0);
    s.set_q_with(|_, _, q| q[0] = exact(0.0));
    let dt = t_end / steps as f64;
    for _ in 0..steps {
        s = ssprk104_step(&s, dt, |st| {
            let y = st.interior_q()[0];
            Ok(vec![y * (1.0 - y)])
        })?;
    }
    Ok((s.interior_q()[0] - exact(t_end)).abs())
}

fn a8() -> wavekit::Result<Outcome> {
    let (e1, e2) = (logistic_error(8)?, logistic_error(16)?);
    let order = (e1 / e2).log2();
    let c = stability_coefficients()?;
    let mut factorial = 1.0;
    let mut worst = 0.0f64;
    for (k, ck) in c.iter().enumerate().take(5) {
        if k > 0 {
            factorial *= k as f64;
        }
        worst = worst.max((ck - 1.0 / factorial).abs());
    }
    let c5 = c[5];
    Ok(Outcome {
        pass: (3.9..=4.1).contains(&order) && worst <= 1e-14,
        detail: format!(
            "logistic order {order:.3}, stability polynomial |c_k - 1/k!| <= {worst:.1e} for k <= 4 (c_5 = {c5:.6}, 1/5! = {:.6}) ; need order in [3.9, 4.1], match 1e-14",
            1.0 / 120.0
        ),
    })
}

fn weno_upper_edge_error(n: usize, f: &dyn Fn(f64) -> f64, antiderivative: &dyn Fn(f64) -> f64) -> f64 {
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let avg = |i: isize| (antiderivative((i + 1) as f64 * h) - antiderivative(i as f64 * h)) / h;
    (0..n as isize)
        .map(|i| {
            let v = [avg(i - 2), avg(i - 1), avg(i), avg(i + 1), avg(i + 2)];
            let (upper, lower) = weno5_edge(&v);
            (upper - f((i + 1) as f64 * h)).abs().max((lower - f(i as f64 * h)).abs())
        })
        .fold(0.0, f64::max)
}

fn a9() -> wavekit::Result<Outcome> {
    let ns = [20, 40, 80, 160, 320];
    let errors: Vec<f64> = ns.iter().map(|&n| weno_upper_edge_error(n, &f64::sin, &|x| -x.cos())).collect();
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let constant = weno_upper_edge_error(20, &|_| 3.0, &|x| 3.0 * x);
    let linear = weno_upper_edge_error(20, &|x| 2.0 * x - 1.0, &|x| x * x - x);
    let exact = constant.max(linear);
    Ok(Outcome {
        pass: orders.iter().all(|o| (4.5..=5.5).contains(o)) && exact <= 1e-13,
        detail: format!(
            "orders {:?}, constant/linear error {exact:.1e} ; need orders in [4.5, 5.5], exact <= 1e-13",
            orders.iter().map(|o| format!("{o:.2}")).collect::<Vec<_>>()
        ),
    })
}

/// 1D radial reference cells and the envelope half-width in 2D cell widths.
const RADIAL_REFERENCE_CELLS: usize = 2000;
const ENVELOPE_CELLS: f64 = 1.0;

fn a10() -> wavekit::Result<Outcome> {
    let spec = ProblemSpec::new(ProblemId::SwDambreak2d, 125, 125).with_t_final(1.0);
    let setup = spec.setup()?;
    let end = evolve(&setup.state, &setup.scheme, 1.0, &[])?.pop().expect("final frame");
    let asym = transpose_asymmetry(&end, 0)?;
    let scatter = radial_scatter(&end, &setup.scheme.grid, (0.0, 0.0), 0);

    let radial = ProblemSpec::new(ProblemId::SwRadial1d, RADIAL_REFERENCE_CELLS, 1).with_t_final(1.0);
    let rs = radial.setup()?;
    let line = evolve(&rs.state, &rs.scheme, 1.0, &[])?.pop().expect("final frame");
    let reference = radial_scatter(&line, &rs.scheme.grid, (0.0, 0.0), 0);
    let halfwidth = ENVELOPE_CELLS * setup.scheme.grid.spacing()[0];
    let envelope = envelope_deviation(&scatter, &reference, halfwidth, 0.2);
    Ok(Outcome {
        pass: asym <= 1e-11 && envelope <= 5e-2,
        detail: format!(
            "max|h(i,j)-h(j,i)| = {asym:.2e}, envelope deviation for r >= 0.2 = {envelope:.2e} ; need <= 1e-11 and <= 5e-2"
        ),
    })
}

fn a11() -> wavekit::Result<Outcome> {
    let spec = ProblemSpec::new(ProblemId::SwHumpSmooth, 20, 10).with_cfl(0.3);
    let opts = StudyOptions::fine_grid(1600, Norm::L2)
        .with_components(&[])
        .with_reference_cfl(3.5);
    let rows = convergence_study(&spec, &[20, 40, 200], &opts)?;
    let target = [1.14e-2, 7.00e-3, 8.11e-4];
    Ok(Outcome {
        pass: errors_within(&rows, &target, 3.0),
        detail: format!(
            "{} against an 8x (1600 x 800) reference ; need errors within 3x of target",
            table(&rows)
        ),
    })
}

/// Residual of `got` against `want` relative to `scale`.
fn relative(got: &[f64], want: &[f64], scale: f64) -> f64 {
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max)
        / scale.max(f64::MIN_POSITIVE)
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.gen_range(lo..hi))
}

const FUZZ_PAIRS: usize = 100_000;

fn shallow_flux(q: &[f64], g: f64) -> [f64; 3] {
    let u = q[1] / q[0];
    [q[1], q[1] * u + 0.5 * g * q[0] * q[0], q[2] * u]
}

fn a12() -> wavekit::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = [0.0f64; 4];

    for _ in 0..FUZZ_PAIRS {
        // acoustics across a material jump: waves are eigenvectors of the
        // side they travel into
        let (rl, cl, rr, cr) = (
            log_uniform(&mut rng, -1.0, 1.0),
            log_uniform(&mut rng, -1.0, 1.0),
            log_uniform(&mut rng, -1.0, 1.0),
            log_uniform(&mut rng, -1.0, 1.0),
        );
        let amp = log_uniform(&mut rng, -3.0, 3.0);
        let ql = [amp * rng.gen_range(-1.0..1.0), amp * rng.gen_range(-1.0..1.0)];
        let qr = [amp * rng.gen_range(-1.0..1.0), amp * rng.gen_range(-1.0..1.0)];
        let d = RiemannSolver::Acoustics.solve(&ql, &qr, &[rl, cl], &[rr, cr])?;
        let apply = |rho: f64, c: f64, w: &[f64]| [rho * c * c * w[1], w[0] / rho];
        let (w1, w2) = (d.wave(0), d.wave(1));
        let scale = ql.iter().chain(&qr).map(|v| v.abs()).fold(0.0, f64::max);
        let flux_scale = scale * (rl * cl * cl + rr * cr * cr + 1.0 / rl + 1.0 / rr);
        worst[0] = worst[0]
            .max(relative(&d.wave_sum()[..2], &[qr[0] - ql[0], qr[1] - ql[1]], scale))
            .max(relative(&d.amdq[..2], &apply(rl, cl, w1), flux_scale))
            .max(relative(&d.apdq[..2], &apply(rr, cr, w2), flux_scale));
    }

    for (slot, fwave) in [(1, false), (2, true)] {
        for _ in 0..FUZZ_PAIRS {
            let g = if rng.gen_bool(0.5) { 1.0 } else { 9.81 };
            let state = |rng: &mut ChaCha8Rng| {
                let h = log_uniform(rng, -2.0, 1.0);
                let c = (g * h).sqrt();
                [h, h * c * rng.gen_range(-3.0..3.0), h * c * rng.gen_range(-3.0..3.0)]
            };
            let (ql, qr) = (state(&mut rng), state(&mut rng));
            let (bl, br) = if fwave {
                (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            } else {
                (0.0, 0.0)
            };
            let solver = if fwave {
                RiemannSolver::ShallowFWave { g }
            } else {
                RiemannSolver::ShallowRoe { g, entropy_fix: rng.gen_bool(0.5) }
            };
            let d = solver.solve(&ql, &qr, &[bl], &[br])?;
            let (fl, fr) = (shallow_flux(&ql, g), shallow_flux(&qr, g));
            let mut df: Vec<f64> = (0..3).map(|k| fr[k] - fl[k]).collect();
            // bathymetry enters as g (hl + hr)/2 (br - bl) in the momentum
            df[1] += 0.5 * g * (ql[0] + qr[0]) * (br - bl);
            let scale = fl.iter().chain(&fr).map(|v| v.abs()).fold(0.0, f64::max)
                + (0.5 * g * (ql[0] + qr[0]) * (br - bl)).abs();
            let jump: Vec<f64> = (0..3).map(|k| qr[k] - ql[k]).collect();
            let sum = d.wave_sum();
            let fluct: Vec<f64> = (0..3).map(|k| d.amdq[k] + d.apdq[k]).collect();
            let r = if fwave {
                relative(&sum, &df, scale)
            } else {
                relative(&sum, &jump, ql.iter().chain(&qr).map(|v| v.abs()).fold(0.0, f64::max))
            };
            worst[slot] = worst[slot].max(r).max(relative(&fluct, &df, scale));
        }
    }

    for _ in 0..FUZZ_PAIRS {
        let aux = |rng: &mut ChaCha8Rng| [log_uniform(rng, -0.5, 0.5), log_uniform(rng, -0.5, 0.5)];
        let (al, ar) = (aux(&mut rng), aux(&mut rng));
        let ql = [rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0)];
        let qr = [rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0)];
        let solver = RiemannSolver::Elasticity { law: StressLaw::Exponential };
        let d = solver.solve(&ql, &qr, &al, &ar)?;
        let flux = |q: &[f64], a: &[f64]| [-q[1] / a[0], -((a[1] * q[0]).exp() - 1.0)];
        let (fl, fr) = (flux(&ql, &al), flux(&qr, &ar));
        let df = [fr[0] - fl[0], fr[1] - fl[1]];
        let scale = fl.iter().chain(&fr).map(|v| v.abs()).fold(0.0, f64::max);
        let fluct = [d.amdq[0] + d.apdq[0], d.amdq[1] + d.apdq[1]];
        worst[3] = worst[3]
            .max(relative(&d.wave_sum()[..2], &df, scale))
            .max(relative(&fluct, &df, scale));
    }

    Ok(Outcome {
        pass: worst.iter().all(|&w| w <= 1e-12),
        detail: format!(
            "{FUZZ_PAIRS} pairs each; worst relative residual acoustics {:.1e}, shallow Roe {:.1e}, shallow f-wave {:.1e}, elasticity {:.1e} ; need <= 1e-12",
            worst[0], worst[1], worst[2], worst[3]
        ),
    })
}

fn main() {
    let checks: [(&str, Check, Duration); 12] = [
        ("A1", a1, Duration::from_secs(120)),
        ("A2", a2, Duration::from_secs(180)),
        ("A3", a3, Duration::from_secs(180)),
        ("A4", a4, Duration::from_secs(120)),
        ("A5", a5, Duration::from_secs(120)),
        ("A6", a6, Duration::from_secs(300)),
        ("A7", a7, Duration::from_secs(120)),
        ("A8", a8, Duration::from_secs(10)),
        ("A9", a9, Duration::from_secs(10)),
        ("A10", a10, Duration::from_secs(300)),
        ("A11", a11, Duration::from_secs(900)),
        ("A12", a12, Duration::from_secs(30)),
    ];
    let only: Option<Vec<String>> = std::env::var("WAVEKIT_ACCEPTANCE")
        .ok()
        .map(|v| v.split(',').map(|s| s.trim().to_uppercase()).collect());
    let mut failed = Vec::new();
    let mut ran = 0;
    for (name, check, budget) in checks {
        if only.as_ref().is_some_and(|o| !o.iter().any(|n| n == name)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        let took = start.elapsed();
        let in_budget = took <= budget;
        let pass = outcome.pass && in_budget;
        if !pass {
            failed.push(name);
        }
        println!(
            "{name:<4} {} {} [{:.1}s, budget {}s{}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs(),
            if in_budget { "" } else { ", over" }
        );
    }
    println!("{}/{ran} criteria passed", ran - failed.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        if std::env::var("WAVEKIT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
            std::process::exit(1);
        }
    }
}
