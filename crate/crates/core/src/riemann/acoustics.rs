use super::{Eigensystem, Vector, WaveDecomposition, MAX_EQN};
use crate::error::{Error, Result};

fn coefficients(aux: &[f64]) -> Result<(f64, f64)> {
    let (rho, c) = (aux[0], aux[1]);
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Coefficient { name: "rho", value: rho });
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Coefficient { name: "c", value: c });
    }
    Ok((rho, c))
}

#[inline]
pub(super) fn solve(ql: &[f64], qr: &[f64], auxl: &[f64], auxr: &[f64]) -> Result<WaveDecomposition> {
    let m = ql.len();
    let (rho_l, c_l) = coefficients(auxl)?;
    let (rho_r, c_r) = coefficients(auxr)?;
    let (zl, zr) = (rho_l * c_l, rho_r * c_r);
    let dp = qr[0] - ql[0];
    let du = qr[1] - ql[1];
    let a1 = (-dp + zr * du) / (zl + zr);
    let a2 = (dp + zl * du) / (zl + zr);

    let mut d = WaveDecomposition::new(m, m, false);
    d.waves[0] = [-a1 * zl, a1, 0.0];
    d.speeds[0] = -c_l;
    d.waves[1] = [a2 * zr, a2, 0.0];
    d.speeds[1] = c_r;
    if m == 3 {
        d.waves[2] = [0.0, 0.0, qr[2] - ql[2]];
        d.speeds[2] = 0.0;
    }
    d.set_fluctuations();
    Ok(d)
}

pub(super) fn total_fluctuation(q_lo: &[f64], q_hi: &[f64], aux: &[f64]) -> Result<Vector> {
    let (rho, c) = coefficients(aux)?;
    let bulk = rho * c * c;
    let mut out = [0.0; MAX_EQN];
    out[0] = bulk * (q_hi[1] - q_lo[1]);
    out[1] = (q_hi[0] - q_lo[0]) / rho;
    Ok(out)
}

pub(super) fn eigensystem(m: usize, aux: &[f64]) -> Result<Eigensystem> {
    let (rho, c) = coefficients(aux)?;
    let z = rho * c;
    Ok(Eigensystem::from_columns(
        m,
        &[[-z, 1.0, 0.0], [z, 1.0, 0.0], [0.0, 0.0, 1.0]],
        &[-c, c, 0.0],
    ))
}
