//! Run configuration, CSV output and the command drivers behind the
//! `wavekit` binary.
//!
//! A configuration is a flat list of `key = value` pairs. The same keys are
//! accepted from a file and from flags; later pairs win, so flags applied
//! after a file override it.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::{Grid, State};
use crate::harness::{
    convergence_study, time_reversibility_test, ConvergenceRow, Norm, ReversibilityOptions, ReversibilityReport,
    StudyOptions,
};
use crate::problems::{ProblemId, ProblemKind, ProblemSpec, SolverForm};
use crate::recon::ReconKind;
use crate::solver::{evolve_with, EvolveOptions};

/// First line of every CSV file.
pub const CSV_HEADER: &str = "# wavekit v1";

/// Final time of the long reversibility run.
pub const LONG_REVERSIBILITY_T: f64 = 600.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: Option<ProblemId>,
    pub mx: Option<usize>,
    pub my: Option<usize>,
    pub recon: Option<ReconKind>,
    pub solver: Option<SolverForm>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
    /// Number of intervals between snapshots; frames are written at
    /// `frames + 1` equally spaced times.
    pub frames: usize,
    pub out: PathBuf,
    pub pulse_width: Option<f64>,
    pub resolutions: Vec<usize>,
    pub norm: Option<Norm>,
    /// Cells of the fine-grid reference in a study.
    pub reference: Option<usize>,
    pub reference_cfl: Option<f64>,
    /// Comparison time of the reversibility test.
    pub t0: Option<f64>,
    pub long_run: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: None,
            mx: None,
            my: None,
            recon: None,
            solver: None,
            cfl: None,
            t_final: None,
            frames: 1,
            out: PathBuf::from("."),
            pulse_width: None,
            resolutions: Vec::new(),
            norm: None,
            reference: None,
            reference_cfl: None,
            t0: None,
            long_run: false,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value '{value}' for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Config(format!("bad value '{value}' for {key}"))),
    }
}

impl RunConfig {
    /// Set one key. Keys use the flag names without dashes; `-` and `_`
    /// are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "problem" => self.problem = Some(ProblemId::parse(value)?),
            "mx" => self.mx = Some(parse_num(key, value)?),
            "my" => self.my = Some(parse_num(key, value)?),
            "recon" => self.recon = Some(ReconKind::parse(value)?),
            "solver" => self.solver = Some(SolverForm::parse(value)?),
            "cfl" => self.cfl = Some(parse_num(key, value)?),
            "tfinal" | "t_final" => self.t_final = Some(parse_num(key, value)?),
            "frames" => self.frames = parse_num(key, value)?,
            "out" => self.out = PathBuf::from(value),
            "pulse_width" => self.pulse_width = Some(parse_num(key, value)?),
            "resolutions" => {
                self.resolutions = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_num(key, s))
                    .collect::<Result<_>>()?
            }
            "norm" => self.norm = Some(Norm::parse(value)?),
            "reference" => self.reference = Some(parse_num(key, value)?),
            "reference_cfl" => self.reference_cfl = Some(parse_num(key, value)?),
            "t0" => self.t0 = Some(parse_num(key, value)?),
            "long_run" => self.long_run = parse_bool(key, value)?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Apply `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn problem(&self) -> Result<ProblemId> {
        self.problem.ok_or_else(|| Error::Config("no problem given".into()))
    }

    /// Problem with every override applied and validated by a setup.
    pub fn spec(&self) -> Result<ProblemSpec> {
        let id = self.problem()?;
        let (dmx, dmy) = default_resolution(id);
        let mx = self.mx.unwrap_or(dmx);
        let my = self.my.unwrap_or(match id {
            ProblemId::SwDambreak2d => mx,
            ProblemId::SwHumpPerturb | ProblemId::SwHumpZero | ProblemId::SwHumpSmooth => mx / 2,
            _ => dmy,
        });
        let mut spec = ProblemSpec::new(id, mx, my);
        if let Some(a) = self.pulse_width {
            spec = spec.with_pulse_width(a)?;
        }
        spec.recon = self.recon;
        spec.solver = self.solver;
        spec.cfl = self.cfl;
        spec.t_final = self.t_final;
        spec.setup()?;
        Ok(spec)
    }
}

/// Grid size used when `mx` / `my` are not given.
pub fn default_resolution(id: ProblemId) -> (usize, usize) {
    match id {
        ProblemId::AcousticsHomog | ProblemId::AcousticsInterface => (200, 1),
        ProblemId::SonicCrystal => (1, 40),
        ProblemId::Stegoton => (24, 1),
        ProblemId::SwRadial1d => (500, 1),
        ProblemId::SwDambreak2d => (125, 125),
        ProblemId::SwHumpPerturb | ProblemId::SwHumpZero | ProblemId::SwHumpSmooth => (200, 100),
    }
}

/// Shortest round-trip decimal.
fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Frame as CSV: cell centers, conserved components, then aux fields.
pub fn frame_csv(state: &State, grid: &Grid, q_names: &[&str], aux_names: &[&str]) -> String {
    let mut s = String::new();
    s.push_str(CSV_HEADER);
    s.push('\n');
    let mut cols: Vec<&str> = vec!["x"];
    if grid.y().is_some() {
        cols.push("y");
    }
    cols.extend_from_slice(q_names);
    cols.extend_from_slice(aux_names);
    s.push_str(&cols.join(","));
    s.push('\n');
    let l = state.layout;
    let gx = grid.x();
    for j in 0..l.ny {
        for i in 0..l.nx {
            let c = l.interior_cell(i, j);
            let mut row = vec![num(gx.center(i))];
            if let Some(gy) = grid.y() {
                row.push(num(gy.center(j)));
            }
            row.extend(state.cell_q(c).iter().map(|&v| num(v)));
            row.extend(state.cell_aux(c).iter().map(|&v| num(v)));
            s.push_str(&row.join(","));
            s.push('\n');
        }
    }
    s
}

/// Parsed CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r.get(k).and_then(|v| v.parse().ok())).collect()
    }
}

pub fn parse_csv(text: &str) -> Result<Table> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Config(format!("missing '{CSV_HEADER}' header")));
    }
    let columns: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::Config("missing column row".into()))?
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    if let Some(bad) = rows.iter().position(|r| r.len() != columns.len()) {
        return Err(Error::Config(format!("row {} has {} fields", bad + 1, rows[bad].len())));
    }
    Ok(Table { columns, rows })
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = format!("{CSV_HEADER}\nresolution,error,order\n");
    for r in rows {
        let order = r.order.map(num).unwrap_or_default();
        let _ = writeln!(s, "{},{},{}", r.resolution, num(r.error), order);
    }
    s
}

pub fn reversibility_csv(r: &ReversibilityReport) -> String {
    format!(
        "{CSV_HEADER}\ncells_per_layer,T,t0,max_diff\n{},{},{},{}\n",
        r.cells_per_layer,
        num(r.t_final),
        num(r.t0),
        num(r.max_diff)
    )
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("cannot write {}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn create_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

/// What `run` produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub times: Vec<f64>,
    pub steps: usize,
}

/// Evolve the configured problem and write `frameNNNN.csv` plus `run.meta`.
pub fn cmd_run(cfg: &RunConfig) -> Result<RunSummary> {
    let spec = cfg.spec()?;
    let setup = spec.setup()?;
    let opts = EvolveOptions::to(setup.t_final).with_frames(setup.state.t, cfg.frames);
    let (frames, stats) = evolve_with(&setup.state, &setup.scheme, &opts, |_, _| Ok(()))?;

    create_out(&cfg.out)?;
    let (q_names, aux_names) = spec.field_names();
    let mut files = Vec::with_capacity(frames.len());
    for (k, f) in frames.iter().enumerate() {
        let path = cfg.out.join(format!("frame{k:04}.csv"));
        write_file(&path, &frame_csv(f, &setup.scheme.grid, &q_names, &aux_names))?;
        files.push(path);
    }
    let times: Vec<f64> = frames.iter().map(|f| f.t).collect();
    let meta = run_meta(cfg, &spec, &setup, &times);
    let path = cfg.out.join("run.meta");
    write_file(&path, &meta)?;
    files.push(path);
    Ok(RunSummary {
        files,
        times,
        steps: stats.steps,
    })
}

fn run_meta(cfg: &RunConfig, spec: &ProblemSpec, setup: &crate::problems::ProblemSetup, times: &[f64]) -> String {
    let l = setup.state.layout;
    let c = &setup.scheme.config;
    let mut s = String::new();
    let _ = writeln!(s, "format = wavekit v1");
    let _ = writeln!(s, "problem = {}", spec.id.name());
    let _ = writeln!(s, "mx = {}", l.nx);
    let _ = writeln!(s, "my = {}", l.ny);
    let _ = writeln!(s, "recon = {}", c.recon.kind.name());
    let _ = writeln!(s, "riemann_solver = {}", c.solver.name());
    if let Some(f) = spec.solver {
        let _ = writeln!(s, "solver = {}", f.name());
    }
    let _ = writeln!(s, "cfl = {}", num(c.cfl_target));
    let _ = writeln!(s, "cfl_max = {}", num(c.cfl_max));
    let _ = writeln!(s, "tfinal = {}", num(setup.t_final));
    let _ = writeln!(s, "frames = {}", cfg.frames);
    if let ProblemKind::Acoustics(p) = &spec.kind {
        let _ = writeln!(s, "pulse_width = {}", num(p.pulse_width));
    }
    let _ = writeln!(s, "deterministic = true");
    for (k, t) in times.iter().enumerate() {
        let _ = writeln!(s, "frame{k:04} = {}", num(*t));
    }
    s
}

/// Convergence study over `cfg.resolutions`; writes `convergence.csv`.
pub fn cmd_converge(cfg: &RunConfig) -> Result<Vec<ConvergenceRow>> {
    if cfg.resolutions.is_empty() {
        return Err(Error::Config("no resolutions given".into()));
    }
    let base = RunConfig {
        mx: cfg.mx.or(cfg.resolutions.first().copied()),
        ..cfg.clone()
    };
    let spec = base.spec()?.refined(cfg.resolutions[0]);
    let norm = cfg.norm.unwrap_or_else(|| spec.default_norm());
    let mut opts = match &spec.kind {
        ProblemKind::Acoustics(_) if cfg.reference.is_none() => StudyOptions::characteristics(),
        _ => {
            let finest = *cfg.resolutions.iter().max().expect("nonempty");
            StudyOptions::fine_grid(cfg.reference.unwrap_or(8 * finest), norm)
        }
    };
    opts.norm = norm;
    opts.reference_cfl = cfg.reference_cfl;
    let rows = convergence_study(&spec, &cfg.resolutions, &opts)?;
    create_out(&cfg.out)?;
    write_file(&cfg.out.join("convergence.csv"), &convergence_csv(&rows))?;
    Ok(rows)
}

/// Stegoton reversibility with `mx` cells per layer; writes
/// `reversibility.csv`.
pub fn cmd_reversibility(cfg: &RunConfig) -> Result<ReversibilityReport> {
    if let Some(p) = cfg.problem {
        if p != ProblemId::Stegoton {
            return Err(Error::Config(format!("reversibility runs the stegoton, not {}", p.name())));
        }
    }
    let t = cfg
        .t_final
        .unwrap_or(if cfg.long_run { LONG_REVERSIBILITY_T } else { 100.0 });
    let mut opts = ReversibilityOptions::new(cfg.mx.unwrap_or(24), t, cfg.t0.unwrap_or(10.0));
    opts.recon = cfg.recon;
    let report = time_reversibility_test(&opts)?;
    create_out(&cfg.out)?;
    write_file(&cfg.out.join("reversibility.csv"), &reversibility_csv(&report))?;
    Ok(report)
}

/// Process exit code for an error: 3 for numerical failures, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut c = RunConfig::default();
        c.apply_text("problem = stegoton\nmx = 12 # comment\n\ncfl = 1.5\n").unwrap();
        c.set("mx", "24").unwrap();
        assert_eq!(c.problem, Some(ProblemId::Stegoton));
        assert_eq!(c.mx, Some(24));
        assert_eq!(c.cfl, Some(1.5));
        assert!(c.apply_text("nonsense").is_err());
        assert!(c.set("colour", "red").is_err());
    }

    #[test]
    fn resolution_lists() {
        let mut c = RunConfig::default();
        c.set("resolutions", "200, 400 800").unwrap();
        assert_eq!(c.resolutions, vec![200, 400, 800]);
    }

    #[test]
    fn csv_roundtrip() {
        let rows = vec![
            ConvergenceRow { resolution: 10, error: 0.1, order: None },
            ConvergenceRow { resolution: 20, error: 1.0 / 3.0, order: Some(-1.7369655941662063) },
        ];
        let t = parse_csv(&convergence_csv(&rows)).unwrap();
        assert_eq!(t.columns, ["resolution", "error", "order"]);
        assert_eq!(t.rows[0][2], "");
        assert_eq!(t.rows[1][1].parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(t.rows[1][2].parse::<f64>().unwrap(), -1.7369655941662063);
    }
}
