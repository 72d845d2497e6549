use super::rhs::{rhs_filled, RhsResult};
use super::ssprk::ssprk104_step_with;
use super::Scheme;
use crate::error::{Error, Result};
use crate::grid::{fill_aux_ghosts, fill_ghost_cells, State};

/// Time step from the largest wave speeds per axis. `None` when all speeds
/// vanish.
pub fn compute_dt(max_speed: [f64; 2], spacing: [f64; 2], cfl_target: f64) -> Option<f64> {
    let rate: f64 = max_speed
        .iter()
        .zip(spacing)
        .filter(|(_, d)| d.is_finite())
        .map(|(s, d)| s / d)
        .sum();
    if rate > 0.0 {
        Some(cfl_target / rate)
    } else {
        None
    }
}

fn observed_cfl(max_speed: [f64; 2], spacing: [f64; 2], dt: f64) -> f64 {
    max_speed
        .iter()
        .zip(spacing)
        .filter(|(_, d)| d.is_finite())
        .map(|(s, d)| dt * s / d)
        .sum()
}

#[derive(Debug, Clone)]
pub struct EvolveOptions {
    pub t_final: f64,
    /// Snapshot times; `t_final` is always added.
    pub frame_times: Vec<f64>,
    /// Abort if a step would be shorter than this.
    pub dt_min_floor: f64,
    /// Step used when every wave speed is zero; defaults to `cfl * min(dx)`.
    pub dt_fallback: Option<f64>,
    pub max_steps: usize,
}

impl EvolveOptions {
    pub fn to(t_final: f64) -> Self {
        Self {
            t_final,
            frame_times: Vec::new(),
            dt_min_floor: 1e-12 * t_final.abs().max(1.0),
            dt_fallback: None,
            max_steps: usize::MAX,
        }
    }

    /// `frames` equally spaced snapshots from `t0` to `t_final` inclusive.
    pub fn with_frames(mut self, t0: f64, frames: usize) -> Self {
        let n = frames.max(1);
        self.frame_times = (0..=n)
            .map(|k| t0 + (self.t_final - t0) * k as f64 / n as f64)
            .collect();
        self
    }
}

/// Per-step report passed to the callback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub cfl: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvolveStats {
    pub steps: usize,
    pub rejected: usize,
    pub max_cfl: f64,
}

/// Advance to `t_final`, returning snapshots at `frame_times` and `t_final`.
pub fn evolve(state: &State, scheme: &Scheme, t_final: f64, frame_times: &[f64]) -> Result<Vec<State>> {
    let mut opts = EvolveOptions::to(t_final);
    opts.frame_times = frame_times.to_vec();
    evolve_with(state, scheme, &opts, |_, _| Ok(())).map(|(f, _)| f)
}

fn pilot(state: &mut State, scheme: &Scheme) -> Result<RhsResult> {
    fill_ghost_cells(state, &scheme.grid, &scheme.bc)?;
    rhs_filled(state, scheme)
}

/// Time loop with a per-step callback.
pub fn evolve_with<F>(
    state: &State,
    scheme: &Scheme,
    opts: &EvolveOptions,
    mut on_step: F,
) -> Result<(Vec<State>, EvolveStats)>
where
    F: FnMut(&State, &StepInfo) -> Result<()>,
{
    let t0 = state.t;
    if !(opts.t_final >= t0) {
        return Err(Error::Config(format!(
            "t_final {} precedes the state time {t0}",
            opts.t_final
        )));
    }
    let mut s = state.clone();
    fill_aux_ghosts(&mut s, &scheme.grid, &scheme.bc);
    scheme.validate(&s)?;

    let mut targets: Vec<f64> = opts
        .frame_times
        .iter()
        .copied()
        .filter(|&t| t >= t0 && t <= opts.t_final)
        .chain(std::iter::once(opts.t_final))
        .collect();
    targets.sort_by(f64::total_cmp);
    targets.dedup();

    let tol = 1e-13 * opts.t_final.abs().max(1.0);
    let spacing = scheme.grid.spacing();
    let cfg = &scheme.config;
    let fallback = opts
        .dt_fallback
        .unwrap_or_else(|| cfg.cfl_target * spacing[0].min(spacing[1]));

    let mut frames = Vec::new();
    let mut stats = EvolveStats::default();
    let mut idx = 0;
    while idx < targets.len() && targets[idx] - s.t <= tol {
        frames.push(s.clone());
        idx += 1;
    }
    if idx == targets.len() {
        return Ok((frames, stats));
    }

    let mut pre = pilot(&mut s, scheme)?;
    while idx < targets.len() {
        let next = targets[idx];
        let mut dt = compute_dt(pre.max_speed, spacing, cfg.cfl_target).unwrap_or(fallback);
        let (new_state, dt_taken, cfl, landed) = loop {
            let remaining = next - s.t;
            let landing = dt >= remaining * (1.0 - 1e-12);
            let step = if landing { remaining } else { dt };
            if step < opts.dt_min_floor {
                return Err(Error::StepTooSmall {
                    dt: step,
                    floor: opts.dt_min_floor,
                    t: s.t,
                });
            }
            let (out, speeds) = ssprk104_step_with(
                &s,
                step,
                Some((pre.dqdt.clone(), pre.max_speed)),
                |st, _| {
                    fill_ghost_cells(st, &scheme.grid, &scheme.bc)?;
                    let r = rhs_filled(st, scheme)?;
                    Ok((r.dqdt, r.max_speed))
                },
            )?;
            let cfl = speeds
                .iter()
                .map(|&sp| observed_cfl(sp, spacing, step))
                .fold(0.0f64, f64::max);
            if cfl > cfg.cfl_max {
                stats.rejected += 1;
                dt = step / 2.0;
                continue;
            }
            break (out, step, cfl, landing);
        };
        s = new_state;
        if landed {
            s.t = next;
        }
        scheme.check_positivity(&s)?;
        stats.steps += 1;
        stats.max_cfl = stats.max_cfl.max(cfl);
        on_step(
            &s,
            &StepInfo {
                step: stats.steps,
                t: s.t,
                dt: dt_taken,
                cfl,
            },
        )?;
        while idx < targets.len() && targets[idx] - s.t <= tol {
            frames.push(s.clone());
            idx += 1;
        }
        if stats.steps >= opts.max_steps && idx < targets.len() {
            return Err(Error::Config(format!("step limit {} reached at t = {}", opts.max_steps, s.t)));
        }
        if idx < targets.len() {
            pre = pilot(&mut s, scheme)?;
        }
    }
    // leave ghost cells consistent with the final state
    fill_ghost_cells(&mut s, &scheme.grid, &scheme.bc)?;
    if let Some(last) = frames.last_mut() {
        *last = s;
    }
    Ok((frames, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dt_arithmetic() {
        let dt = compute_dt([2.0, 0.0], [0.1, f64::INFINITY], 2.45).unwrap();
        assert!((dt - 0.1225).abs() < 1e-15);
        let dt = compute_dt([1.0, 1.0], [0.1, 0.1], 2.45).unwrap();
        assert!((dt - 0.1225).abs() < 1e-15);
        assert_eq!(compute_dt([0.0, 0.0], [0.1, 0.1], 2.45), None);
    }
}
