use crate::error::{Error, Result};
use crate::grid::State;

/// Stage times of SSPRK(10,4) as fractions of dt.
pub const STAGE_TIMES: [f64; 10] = [
    0.0,
    1.0 / 6.0,
    2.0 / 6.0,
    3.0 / 6.0,
    4.0 / 6.0,
    1.0 / 3.0,
    1.0 / 2.0,
    2.0 / 3.0,
    5.0 / 6.0,
    1.0,
];

/// Set the interior of `s` to `base + inc`.
fn materialize(s: &mut State, base: &[f64], inc: &[f64]) {
    let m = s.num_eqn;
    let layout = s.layout;
    for (n, c) in layout.interior_indices().enumerate() {
        for k in 0..m {
            s.q[c * m + k] = base[n * m + k] + inc[n * m + k];
        }
    }
}

/// One SSPRK(10,4) step. `rhs` receives each stage state with its time set,
/// is expected to fill ghost cells itself, and returns the interior time
/// derivative.
pub fn ssprk104_step<F>(state: &State, dt: f64, mut rhs: F) -> Result<State>
where
    F: FnMut(&mut State) -> Result<Vec<f64>>,
{
    ssprk104_step_with(state, dt, None, |s, _| rhs(s).map(|d| (d, ()))).map(|(s, _)| s)
}

/// Two-register form, with both registers held as increments over the
/// initial state so that a vanishing derivative returns the input exactly:
/// `q1 = u + a` and `q2 = 2/5 u + b`.
///
/// `first` may carry an already computed derivative at `state` (stage 1 does
/// not depend on dt). The callback gets the stage index; its extra results
/// are returned alongside the new state.
pub fn ssprk104_step_with<F, T>(
    state: &State,
    dt: f64,
    first: Option<(Vec<f64>, T)>,
    mut rhs: F,
) -> Result<(State, Vec<T>)>
where
    F: FnMut(&mut State, usize) -> Result<(Vec<f64>, T)>,
{
    let t0 = state.t;
    let base = state.interior_q();
    let len = base.len();
    let mut a = vec![0.0; len];
    let mut work = state.clone();
    let mut extras = Vec::with_capacity(10);
    let mut first = first;
    let mut eval = |inc: &[f64], stage: usize, extras: &mut Vec<T>| -> Result<Vec<f64>> {
        materialize(&mut work, &base, inc);
        work.t = t0 + STAGE_TIMES[stage] * dt;
        let (d, x) = match (stage, first.take()) {
            (0, Some(pre)) => pre,
            _ => rhs(&mut work, stage)?,
        };
        if d.len() != inc.len() || d.iter().any(|v| !v.is_finite()) {
            return Err(Error::BlowUp { stage: stage + 1 });
        }
        extras.push(x);
        Ok(d)
    };
    let check = |v: &[f64], stage: usize| -> Result<()> {
        if v.iter().any(|x| !x.is_finite()) {
            Err(Error::BlowUp { stage })
        } else {
            Ok(())
        }
    };

    let h = dt / 6.0;
    for stage in 0..5 {
        let d = eval(&a, stage, &mut extras)?;
        for (x, y) in a.iter_mut().zip(&d) {
            *x += h * y;
        }
        check(&a, stage + 1)?;
    }
    let mut b: Vec<f64> = a.iter().map(|x| 9.0 / 25.0 * x).collect();
    for (x, y) in a.iter_mut().zip(&b) {
        *x = 15.0 * y - 5.0 * *x;
    }
    for stage in 5..9 {
        let d = eval(&a, stage, &mut extras)?;
        for (x, y) in a.iter_mut().zip(&d) {
            *x += h * y;
        }
        check(&a, stage + 1)?;
    }
    let d = eval(&a, 9, &mut extras)?;
    for ((x, y), z) in b.iter_mut().zip(&a).zip(&d) {
        *x += 3.0 / 5.0 * y + dt / 10.0 * z;
    }
    check(&b, 10)?;
    let mut out = state.clone();
    materialize(&mut out, &base, &b);
    out.t = t0 + dt;
    Ok((out, extras))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid, Grid1D};

    fn scalar(v: f64) -> State {
        let grid = Grid::OneD(Grid1D::new(0.0, 1.0, 1).unwrap());
        let mut s = State::new(&grid, 1, 0);
        s.set_q_with(|_, _, q| q[0] = v);
        s
    }

    fn value(s: &State) -> f64 {
        s.interior_q()[0]
    }

    #[test]
    fn zero_rhs_is_identity() {
        let s = scalar(1.25);
        let out = ssprk104_step(&s, 0.3, |_| Ok(vec![0.0])).unwrap();
        assert_eq!(value(&out), 1.25);
        assert_eq!(out.t, 0.3);
    }

    #[test]
    fn unit_rhs_adds_dt() {
        let s = scalar(0.5);
        let out = ssprk104_step(&s, 0.25, |_| Ok(vec![1.0])).unwrap();
        assert!((value(&out) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn stage_times_follow_the_abscissae() {
        let s = scalar(0.0);
        let mut seen = vec![];
        ssprk104_step(&s, 1.0, |st| {
            seen.push(st.t);
            Ok(vec![1.0])
        })
        .unwrap();
        for (a, b) in seen.iter().zip(STAGE_TIMES) {
            assert!((a - b).abs() < 1e-15);
        }
        // rhs = 1 means q = t at each stage: the abscissae are consistent
        let mut drift = 0.0f64;
        ssprk104_step(&s, 1.0, |st| {
            drift = drift.max((value(st) - st.t).abs());
            Ok(vec![1.0])
        })
        .unwrap();
        assert!(drift < 1e-14);
    }

    #[test]
    fn nan_is_blow_up() {
        let s = scalar(0.0);
        let err = ssprk104_step(&s, 1.0, |st| {
            Ok(vec![if st.t > 0.4 { f64::NAN } else { 1.0 }])
        })
        .unwrap_err();
        assert_eq!(err, Error::BlowUp { stage: 4 });
    }
}
