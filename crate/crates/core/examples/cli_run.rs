//! Driving runs from a `key = value` configuration and reading the CSV
//! frames back.
//!
//! ```text
//! cargo run --release --example cli_run
//! ```

use wavekit::cli::{cmd_run, parse_csv, RunConfig};

/// Runs into `out` and returns the number of frames and rows in the last.
pub fn run_in(out: &std::path::Path) -> wavekit::Result<(usize, usize)> {
    let mut cfg = RunConfig::default();
    cfg.apply_text("problem = acoustics_homog\nmx = 100\ntfinal = 1\nframes = 4\n")?;
    cfg.set("out", &out.display().to_string())?;
    let summary = cmd_run(&cfg)?;
    let frames: Vec<_> = summary.files.iter().filter(|f| f.extension().is_some_and(|e| e == "csv")).collect();
    let text = std::fs::read_to_string(frames.last().expect("frames")).expect("frame file");
    let table = parse_csv(&text)?;
    Ok((frames.len(), table.rows.len()))
}

pub fn run_example() -> wavekit::Result<(usize, usize)> {
    let dir = std::env::temp_dir().join(format!("wavekit-example-{}", std::process::id()));
    let out = run_in(&dir);
    let _ = std::fs::remove_dir_all(&dir);
    out
}

fn main() -> wavekit::Result<()> {
    let (frames, rows) = run_example()?;
    println!("{frames} frames, {rows} rows in the last");
    Ok(())
}
