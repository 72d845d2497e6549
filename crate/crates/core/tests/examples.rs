//! Every example under `examples/` runs and shows what it claims.

#[allow(dead_code)]
#[path = "../examples/acoustics_convergence.rs"]
mod acoustics_convergence;

#[allow(dead_code)]
#[path = "../examples/interface_fwave.rs"]
mod interface_fwave;

#[allow(dead_code)]
#[path = "../examples/weno_reconstruction.rs"]
mod weno_reconstruction;

#[allow(dead_code)]
#[path = "../examples/riemann_solvers.rs"]
mod riemann_solvers;

#[allow(dead_code)]
#[path = "../examples/ssprk_integration.rs"]
mod ssprk_integration;

#[allow(dead_code)]
#[path = "../examples/well_balanced_hump.rs"]
mod well_balanced_hump;

#[allow(dead_code)]
#[path = "../examples/dam_break.rs"]
mod dam_break;

#[allow(dead_code)]
#[path = "../examples/stegoton_reversibility.rs"]
mod stegoton_reversibility;

#[allow(dead_code)]
#[path = "../examples/sonic_crystal.rs"]
mod sonic_crystal;

#[allow(dead_code)]
#[path = "../examples/radial_shallow.rs"]
mod radial_shallow;

#[allow(dead_code)]
#[path = "../examples/cli_run.rs"]
mod cli_run;

#[test]
fn acoustics_converges_at_high_order() {
    let rows = acoustics_convergence::run_example().unwrap();
    assert!(rows[2].order.unwrap() > 4.0, "{rows:?}");
}

#[test]
fn fwave_beats_qwave_at_the_interface() {
    let (fwave, qwave) = interface_fwave::run_example().unwrap();
    assert!(fwave[2].order.unwrap() > 3.5);
    assert!(qwave[2].order.unwrap() < 2.5);
    assert!(fwave[2].error < qwave[2].error);
}

#[test]
fn weno_is_fifth_order_on_smooth_data() {
    let rows = weno_reconstruction::run_example();
    let (a, b) = (rows[3].1, rows[4].1);
    assert!((a / b).log2() > 4.5);
}

#[test]
fn riemann_identities_hold() {
    for c in riemann_solvers::run_example().unwrap() {
        assert!(c.residual < 1e-13, "{}: {:e}", c.name, c.residual);
        assert!(c.speeds.windows(2).all(|w| w[0] <= w[1]), "{}", c.name);
    }
}

#[test]
fn ssprk_is_fourth_order() {
    let rows = ssprk_integration::run_example().unwrap();
    let order = (rows[1].1 / rows[2].1).log2();
    assert!((3.7..4.3).contains(&order), "{order}");
}

#[test]
fn lake_stays_at_rest_only_when_balanced() {
    let (balanced, naive) = well_balanced_hump::run_example().unwrap();
    assert!(balanced < 1e-12);
    assert!(naive > 1e-6);
}

#[test]
fn dam_break_is_radially_symmetric() {
    let r = dam_break::run_example().unwrap();
    assert!(r.asymmetry < 1e-11);
    assert!(r.envelope < 0.1, "{}", r.envelope);
}

#[test]
fn reversibility_improves_with_resolution() {
    let r = stegoton_reversibility::run_example().unwrap();
    assert!(r[1].max_diff < r[0].max_diff);
}

#[test]
fn crystal_blocks_part_of_the_wave() {
    let ratio = sonic_crystal::run_example().unwrap();
    assert!(ratio.is_finite() && ratio > 0.0 && ratio < 1.5, "{ratio}");
}

#[test]
fn radial_runs_agree_across_resolutions() {
    let diff = radial_shallow::run_example().unwrap();
    assert!(diff < 5e-2, "{diff}");
}

#[test]
fn config_run_writes_frames() {
    let dir = tempfile::tempdir().unwrap();
    let (frames, rows) = cli_run::run_in(dir.path()).unwrap();
    assert_eq!(frames, 5);
    assert_eq!(rows, 100);
}
