use super::{Eigensystem, Vector, WaveDecomposition, MAX_EQN};
use crate::error::{Error, Result};

#[inline]
fn depth(q: &[f64]) -> Result<f64> {
    let h = q[0];
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::DryState { depth: h });
    }
    Ok(h)
}

#[inline]
pub(super) fn flux(q: &[f64], g: f64) -> Result<Vector> {
    let h = depth(q)?;
    let u = q[1] / h;
    let mut f = [q[1], q[1] * u + 0.5 * g * h * h, 0.0];
    if q.len() == 3 {
        f[2] = q[2] * u;
    }
    Ok(f)
}

/// Roe averages (u, v, c).
#[inline]
fn roe_average(ql: &[f64], qr: &[f64], g: f64) -> Result<(f64, f64, f64)> {
    let (hl, hr) = (depth(ql)?, depth(qr)?);
    let (sl, sr) = (hl.sqrt(), hr.sqrt());
    let u = (ql[1] / sl + qr[1] / sr) / (sl + sr);
    let v = if ql.len() == 3 {
        (ql[2] / sl + qr[2] / sr) / (sl + sr)
    } else {
        0.0
    };
    let c = (0.5 * g * (hl + hr)).sqrt();
    Ok((u, v, c))
}

/// Fill the Roe waves in order (1-wave, shear wave in 2D, 2-wave) from
/// coefficients `(a1, a_shear, a2)`.
#[inline]
fn set_waves(d: &mut WaveDecomposition, u: f64, v: f64, c: f64, a: [f64; 3]) {
    let m = d.num_eqn;
    let last = m - 1;
    d.waves[0] = [a[0], a[0] * (u - c), a[0] * v];
    d.speeds[0] = u - c;
    d.waves[last] = [a[2], a[2] * (u + c), a[2] * v];
    d.speeds[last] = u + c;
    if m == 3 {
        d.waves[1] = [0.0, 0.0, a[1]];
        d.speeds[1] = u;
    }
    if m == 2 {
        for w in d.waves.iter_mut() {
            w[2] = 0.0;
        }
    }
}

#[inline]
pub(super) fn solve_roe(ql: &[f64], qr: &[f64], g: f64, entropy_fix: bool) -> Result<WaveDecomposition> {
    let m = ql.len();
    let (u, v, c) = roe_average(ql, qr, g)?;
    let d1 = qr[0] - ql[0];
    let d2 = qr[1] - ql[1];
    let a1 = ((u + c) * d1 - d2) / (2.0 * c);
    let a2 = (-(u - c) * d1 + d2) / (2.0 * c);
    let shear = if m == 3 { qr[2] - ql[2] - v * d1 } else { 0.0 };

    let mut d = WaveDecomposition::new(m, m, false);
    set_waves(&mut d, u, v, c, [a1, shear, a2]);
    if entropy_fix {
        harten_hyman(&mut d, ql, qr, g);
    } else {
        d.set_fluctuations();
    }
    Ok(d)
}

/// Transonic rarefaction splitting for the two acoustic families; the shear
/// wave (2D) is upwinded by its speed.
fn harten_hyman(d: &mut WaveDecomposition, ql: &[f64], qr: &[f64], g: f64) {
    let m = d.num_eqn;
    let last = m - 1;
    let mut amdq = [0.0; MAX_EQN];

    let char_speed = |h: f64, hu: f64, sign: f64| hu / h + sign * (g * h).sqrt();

    // 1-family: left state against the state just right of the 1-wave.
    let s0 = char_speed(ql[0], ql[1], -1.0);
    let hm = ql[0] + d.waves[0][0];
    let frac1 = if hm > 0.0 {
        let s1 = char_speed(hm, ql[1] + d.waves[0][1], -1.0);
        if s0 < 0.0 && s1 > 0.0 {
            s0 * (s1 - d.speeds[0]) / (s1 - s0)
        } else {
            d.speeds[0].min(0.0)
        }
    } else {
        d.speeds[0].min(0.0)
    };
    for k in 0..m {
        amdq[k] += frac1 * d.waves[0][k];
    }

    if m == 3 {
        let s = d.speeds[1].min(0.0);
        for k in 0..m {
            amdq[k] += s * d.waves[1][k];
        }
    }

    // 2-family: state just left of the 2-wave against the right state.
    let s3 = char_speed(qr[0], qr[1], 1.0);
    let hm = qr[0] - d.waves[last][0];
    let frac2 = if hm > 0.0 {
        let s2 = char_speed(hm, qr[1] - d.waves[last][1], 1.0);
        if s2 < 0.0 && s3 > 0.0 {
            s2 * (s3 - d.speeds[last]) / (s3 - s2)
        } else {
            d.speeds[last].min(0.0)
        }
    } else {
        d.speeds[last].min(0.0)
    };
    for k in 0..m {
        amdq[k] += frac2 * d.waves[last][k];
    }

    let mut apdq = [0.0; MAX_EQN];
    for p in 0..d.num_waves {
        for k in 0..m {
            apdq[k] += d.speeds[p] * d.waves[p][k];
        }
    }
    for k in 0..m {
        apdq[k] -= amdq[k];
    }
    d.amdq = amdq;
    d.apdq = apdq;
}

/// f-wave solver over bathymetry: decomposes
/// `f(qr) - f(ql) + (0, g (hl + hr)/2 (br - bl))` on the Roe eigenvectors.
#[inline]
pub(super) fn solve_fwave(ql: &[f64], qr: &[f64], bl: f64, br: f64, g: f64) -> Result<WaveDecomposition> {
    let m = ql.len();
    let (u, v, c) = roe_average(ql, qr, g)?;
    let (hl, hr) = (ql[0], qr[0]);
    let (ul, ur) = (ql[1] / hl, qr[1] / hr);
    // Written so that a lake at rest cancels exactly.
    let d1 = qr[1] - ql[1];
    let d2 = (qr[1] * ur - ql[1] * ul) + 0.5 * g * (hl + hr) * ((hr - hl) + (br - bl));
    let b1 = ((u + c) * d1 - d2) / (2.0 * c);
    let b2 = (-(u - c) * d1 + d2) / (2.0 * c);

    let mut d = WaveDecomposition::new(m, m, true);
    let shear = if m == 3 {
        let d3 = qr[2] * ur - ql[2] * ul;
        d.qwave_hint[1] = Some([0.0, 0.0, qr[2] - ql[2] - v * (hr - hl)]);
        d3 - v * d1
    } else {
        0.0
    };
    set_waves(&mut d, u, v, c, [b1, shear, b2]);
    d.set_fluctuations();
    Ok(d)
}

pub(super) fn eigensystem(q: &[f64], g: f64) -> Result<Eigensystem> {
    let m = q.len();
    let h = depth(q)?;
    let u = q[1] / h;
    let v = if m == 3 { q[2] / h } else { 0.0 };
    let c = (g * h).sqrt();
    let cols = if m == 3 {
        [[1.0, u - c, v], [0.0, 0.0, 1.0], [1.0, u + c, v]]
    } else {
        [[1.0, u - c, 0.0], [1.0, u + c, 0.0], [0.0; 3]]
    };
    let speeds = if m == 3 { [u - c, u, u + c] } else { [u - c, u + c, 0.0] };
    Ok(Eigensystem::from_columns(m, &cols, &speeds))
}

#[cfg(test)]
mod tests {
    use super::super::RiemannSolver;

    #[test]
    fn still_water_has_unit_speeds() {
        let s = RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: true };
        let d = s.solve(&[1.0, 0.0], &[1.0, 0.0], &[], &[]).unwrap();
        assert_eq!(d.speeds[..2], [-1.0, 1.0]);
        assert_eq!(d.amdq, [0.0; 3]);
        assert_eq!(d.apdq, [0.0; 3]);
    }

    #[test]
    fn dam_break_roe_average() {
        let s = RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: false };
        let d = s.solve(&[2.0, 0.0], &[1.0, 0.0], &[], &[]).unwrap();
        let c = 1.5f64.sqrt();
        assert!((d.speeds[0] + c).abs() < 1e-15);
        assert!((d.speeds[1] - c).abs() < 1e-15);
    }

    #[test]
    fn transonic_fix_keeps_the_flux_difference() {
        // Strong left-to-right flow through a transonic 1-rarefaction.
        let s = RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: true };
        let (ql, qr) = ([1.0, 0.5], [0.3, 0.5]);
        let d = s.solve(&ql, &qr, &[], &[]).unwrap();
        let fl = super::flux(&ql, 1.0).unwrap();
        let fr = super::flux(&qr, 1.0).unwrap();
        for k in 0..2 {
            assert!((d.amdq[k] + d.apdq[k] - (fr[k] - fl[k])).abs() < 1e-14);
        }
        let plain = RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: false }
            .solve(&ql, &qr, &[], &[])
            .unwrap();
        assert!(plain.amdq != d.amdq);
    }

    #[test]
    fn lake_at_rest_fwaves_vanish() {
        let s = RiemannSolver::ShallowFWave { g: 9.81 };
        let (bl, br) = (0.37, 0.8);
        let d = s.solve(&[1.0 - bl, 0.0, 0.0], &[1.0 - br, 0.0, 0.0], &[bl], &[br]).unwrap();
        for p in 0..3 {
            assert_eq!(d.waves[p], [0.0; 3]);
        }
    }

    #[test]
    fn dry_state_rejected() {
        let s = RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: true };
        assert!(s.solve(&[0.0, 0.0], &[1.0, 0.0], &[], &[]).is_err());
    }
}
