use super::{Eigensystem, Vector, WaveDecomposition};
use crate::error::{Error, Result};

/// Stress-strain relation sigma(strain) with bulk modulus K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StressLaw {
    /// exp(K e) - 1
    Exponential,
    /// K e
    Linear,
}

impl StressLaw {
    /// Stress and its strain derivative.
    pub fn eval(self, strain: f64, k: f64) -> Result<(f64, f64)> {
        match self {
            StressLaw::Linear => Ok((k * strain, k)),
            StressLaw::Exponential => {
                let e = (k * strain).exp();
                if !e.is_finite() {
                    return Err(Error::StressOverflow { strain });
                }
                Ok((e - 1.0, k * e))
            }
        }
    }
}

fn coefficients(aux: &[f64]) -> Result<(f64, f64)> {
    let (rho, k) = (aux[0], aux[1]);
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Coefficient { name: "rho", value: rho });
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Coefficient { name: "K", value: k });
    }
    Ok((rho, k))
}

/// Flux (-u, -sigma) of (strain, momentum).
#[inline]
pub(super) fn flux(q: &[f64], aux: &[f64], law: StressLaw) -> Result<Vector> {
    let (rho, k) = coefficients(aux)?;
    let (sigma, _) = law.eval(q[0], k)?;
    Ok([-q[1] / rho, -sigma, 0.0])
}

/// Impedance rho * c at a state.
fn impedance(q: &[f64], rho: f64, k: f64, law: StressLaw) -> Result<(f64, f64)> {
    let (_, dsigma) = law.eval(q[0], k)?;
    let c = (dsigma / rho).sqrt();
    Ok((rho * c, c))
}

#[inline]
pub(super) fn solve(
    ql: &[f64],
    qr: &[f64],
    auxl: &[f64],
    auxr: &[f64],
    law: StressLaw,
) -> Result<WaveDecomposition> {
    let (rho_l, k_l) = coefficients(auxl)?;
    let (rho_r, k_r) = coefficients(auxr)?;
    let fl = flux(ql, auxl, law)?;
    let fr = flux(qr, auxr, law)?;
    let (zl, cl) = impedance(ql, rho_l, k_l, law)?;
    let (zr, cr) = impedance(qr, rho_r, k_r, law)?;
    let d1 = fr[0] - fl[0];
    let d2 = fr[1] - fl[1];
    let b1 = (zr * d1 + d2) / (zl + zr);
    let b2 = (zl * d1 - d2) / (zl + zr);

    let mut d = WaveDecomposition::new(2, 2, true);
    d.waves[0] = [b1, b1 * zl, 0.0];
    d.speeds[0] = -cl;
    d.waves[1] = [b2, -b2 * zr, 0.0];
    d.speeds[1] = cr;
    d.set_fluctuations();
    Ok(d)
}

pub(super) fn eigensystem(q: &[f64], aux: &[f64], law: StressLaw) -> Result<Eigensystem> {
    let (rho, k) = coefficients(aux)?;
    let (z, c) = impedance(q, rho, k, law)?;
    Ok(Eigensystem::from_columns(
        2,
        &[[1.0, z, 0.0], [1.0, -z, 0.0]],
        &[-c, c],
    ))
}

#[cfg(test)]
mod tests {
    use super::super::RiemannSolver;
    use super::*;

    #[test]
    fn equal_states_zero_fwaves() {
        let s = RiemannSolver::Elasticity { law: StressLaw::Exponential };
        let d = s.solve(&[0.1, 0.2], &[0.1, 0.2], &[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert_eq!(d.waves[0], [0.0; 3]);
        assert_eq!(d.waves[1], [0.0; 3]);
    }

    #[test]
    fn strain_jump_matches_direct_solve() {
        let s = RiemannSolver::Elasticity { law: StressLaw::Exponential };
        let d = s.solve(&[0.0, 0.0], &[0.1, 0.0], &[1.0, 1.0], &[1.0, 1.0]).unwrap();
        // delta = (0, -(e^0.1 - 1)); eigenvectors (1, 1) and (1, -e^0.05)
        let delta = [0.0, -(0.1f64.exp() - 1.0)];
        let zr = (0.1f64).exp().sqrt();
        let zl = 1.0;
        // Cramer on [[1, 1], [zl, -zr]] b = delta
        let det = -zr - zl;
        let b1 = (delta[0] * -zr - delta[1]) / det;
        let b2 = (delta[1] - zl * delta[0]) / det;
        assert!((d.waves[0][0] - b1).abs() < 1e-15);
        assert!((d.waves[1][0] - b2).abs() < 1e-15);
        assert!((d.speeds[1] - zr).abs() < 1e-15);
    }

    #[test]
    fn overflow_is_an_error() {
        let s = RiemannSolver::Elasticity { law: StressLaw::Exponential };
        let err = s.solve(&[800.0, 0.0], &[0.0, 0.0], &[1.0, 1.0], &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::StressOverflow { .. }));
    }
}
