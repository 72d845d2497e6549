//! Test problems: grids, media, initial and boundary data, discretization.

mod acoustics;
mod crystal;
mod shallow;
mod stegoton;

pub use acoustics::{pulse, AcousticsForm, AcousticsParams, Medium};
pub use crystal::{CrystalParams, IncidentWave};
pub use shallow::{
    circle_cell_fraction, hump_bathymetry, hump_cell_bathymetry, BathymetrySampling, DamBreakParams,
    HumpKind, HumpParams, RadialParams,
};
pub use stegoton::{HalfCosinePulse, StegotonParams};

use crate::error::{Error, Result};
use crate::grid::State;
use crate::recon::ReconKind;
use crate::solver::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    AcousticsHomog,
    AcousticsInterface,
    SonicCrystal,
    Stegoton,
    SwRadial1d,
    SwDambreak2d,
    SwHumpPerturb,
    SwHumpZero,
    SwHumpSmooth,
}

impl ProblemId {
    pub const ALL: [ProblemId; 9] = [
        ProblemId::AcousticsHomog,
        ProblemId::AcousticsInterface,
        ProblemId::SonicCrystal,
        ProblemId::Stegoton,
        ProblemId::SwRadial1d,
        ProblemId::SwDambreak2d,
        ProblemId::SwHumpPerturb,
        ProblemId::SwHumpZero,
        ProblemId::SwHumpSmooth,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProblemId::AcousticsHomog => "acoustics_homog",
            ProblemId::AcousticsInterface => "acoustics_interface",
            ProblemId::SonicCrystal => "sonic_crystal",
            ProblemId::Stegoton => "stegoton",
            ProblemId::SwRadial1d => "sw_radial_1d",
            ProblemId::SwDambreak2d => "sw_dambreak_2d",
            ProblemId::SwHumpPerturb => "sw_hump_perturb",
            ProblemId::SwHumpZero => "sw_hump_zero",
            ProblemId::SwHumpSmooth => "sw_hump_smooth",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ProblemId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown problem '{s}'")))
    }
}

/// Which flavour of Riemann solver a problem should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverForm {
    /// Wave decomposition of the state jump (exact acoustics, Roe).
    QWave,
    /// Decomposition of the flux jump.
    FWave,
}

impl SolverForm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "qwave" | "exact" | "roe" => Ok(SolverForm::QWave),
            "fwave" => Ok(SolverForm::FWave),
            other => Err(Error::Config(format!("unknown solver '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SolverForm::QWave => "qwave",
            SolverForm::FWave => "fwave",
        }
    }
}

/// Problem parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    Acoustics(AcousticsParams),
    SonicCrystal(CrystalParams),
    Stegoton(StegotonParams),
    ShallowRadial(RadialParams),
    DamBreak(DamBreakParams),
    Hump(HumpParams),
}

impl ProblemKind {
    pub fn t_final(&self) -> f64 {
        match self {
            ProblemKind::Acoustics(p) => p.t_final,
            ProblemKind::SonicCrystal(p) => p.t_final,
            ProblemKind::Stegoton(p) => p.t_final,
            ProblemKind::ShallowRadial(p) => p.t_final,
            ProblemKind::DamBreak(p) => p.t_final,
            ProblemKind::Hump(p) => p.t_final,
        }
    }

    pub fn set_t_final(&mut self, t: f64) {
        match self {
            ProblemKind::Acoustics(p) => p.t_final = t,
            ProblemKind::SonicCrystal(p) => p.t_final = t,
            ProblemKind::Stegoton(p) => p.t_final = t,
            ProblemKind::ShallowRadial(p) => p.t_final = t,
            ProblemKind::DamBreak(p) => p.t_final = t,
            ProblemKind::Hump(p) => p.t_final = t,
        }
    }
}

/// A problem plus discretization overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub kind: ProblemKind,
    pub recon: Option<ReconKind>,
    pub solver: Option<SolverForm>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
}

/// A ready-to-run problem.
#[derive(Debug, Clone)]
pub struct ProblemSetup {
    pub id: ProblemId,
    pub scheme: Scheme,
    pub state: State,
    pub t_final: f64,
}

impl ProblemSpec {
    /// Defaults for `id` at the given resolution (`my` is ignored in 1D and
    /// derived where the problem fixes the aspect ratio).
    pub fn new(id: ProblemId, mx: usize, my: usize) -> Self {
        let kind = match id {
            ProblemId::AcousticsHomog => ProblemKind::Acoustics(AcousticsParams::new(Medium::Homogeneous, mx)),
            ProblemId::AcousticsInterface => ProblemKind::Acoustics(AcousticsParams::new(Medium::Interface, mx)),
            ProblemId::SonicCrystal => ProblemKind::SonicCrystal(CrystalParams::new(my)),
            ProblemId::Stegoton => ProblemKind::Stegoton(StegotonParams::new(mx)),
            ProblemId::SwRadial1d => ProblemKind::ShallowRadial(RadialParams::new(mx)),
            ProblemId::SwDambreak2d => ProblemKind::DamBreak(DamBreakParams::new(mx, my)),
            ProblemId::SwHumpPerturb => ProblemKind::Hump(HumpParams::new(HumpKind::EpsPerturb, mx, my)),
            ProblemId::SwHumpZero => ProblemKind::Hump(HumpParams::new(HumpKind::ZeroPerturb, mx, my)),
            ProblemId::SwHumpSmooth => ProblemKind::Hump(HumpParams::new(HumpKind::Smooth, mx, my)),
        };
        Self {
            id,
            kind,
            recon: None,
            solver: None,
            cfl: None,
            t_final: None,
        }
    }

    pub fn with_recon(mut self, recon: ReconKind) -> Self {
        self.recon = Some(recon);
        self
    }

    pub fn with_solver(mut self, solver: SolverForm) -> Self {
        self.solver = Some(solver);
        self
    }

    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl = Some(cfl);
        self
    }

    pub fn with_t_final(mut self, t: f64) -> Self {
        self.t_final = Some(t);
        self
    }

    /// Same problem at another resolution; the aspect ratio follows the
    /// problem's rules.
    pub fn at_resolution(&self, mx: usize, my: usize) -> Self {
        let mut out = self.clone();
        match &mut out.kind {
            ProblemKind::Acoustics(p) => p.mx = mx,
            ProblemKind::SonicCrystal(p) => p.my = my,
            ProblemKind::Stegoton(p) => p.cells_per_layer = mx,
            ProblemKind::ShallowRadial(p) => p.mr = mx,
            ProblemKind::DamBreak(p) => {
                p.mx = mx;
                p.my = my;
            }
            ProblemKind::Hump(p) => {
                p.mx = mx;
                p.my = my;
            }
        }
        out
    }

    /// Same problem with `n` cells along x (per layer for the stegoton, per
    /// lattice period for the crystal), keeping the aspect ratio.
    pub fn refined(&self, n: usize) -> Self {
        let my = match &self.kind {
            ProblemKind::DamBreak(_) | ProblemKind::SonicCrystal(_) => n,
            ProblemKind::Hump(_) => n / 2,
            _ => 1,
        };
        self.at_resolution(n, my)
    }

    /// Primary resolution (cells along x, or cells per layer).
    pub fn resolution(&self) -> usize {
        match &self.kind {
            ProblemKind::Acoustics(p) => p.mx,
            ProblemKind::SonicCrystal(p) => p.my,
            ProblemKind::Stegoton(p) => p.cells_per_layer,
            ProblemKind::ShallowRadial(p) => p.mr,
            ProblemKind::DamBreak(p) => p.mx,
            ProblemKind::Hump(p) => p.mx,
        }
    }

    /// Build grid, state, boundary data and scheme.
    pub fn setup(&self) -> Result<ProblemSetup> {
        if let Some(cfl) = self.cfl {
            if !(cfl > 0.0 && cfl.is_finite()) {
                return Err(Error::Config(format!("cfl must be positive, got {cfl}")));
            }
        }
        if let Some(t) = self.t_final {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("final time must be nonnegative, got {t}")));
            }
        }
        let mut kind = self.kind.clone();
        if let Some(t) = self.t_final {
            kind.set_t_final(t);
        }
        let mut setup = match &kind {
            ProblemKind::Acoustics(p) => p.setup(self.id, self.recon, self.solver)?,
            ProblemKind::SonicCrystal(p) => p.setup(self.recon, self.solver)?,
            ProblemKind::Stegoton(p) => p.setup(self.recon, self.solver)?,
            ProblemKind::ShallowRadial(p) => p.setup(self.recon, self.solver)?,
            ProblemKind::DamBreak(p) => p.setup(self.recon, self.solver)?,
            ProblemKind::Hump(p) => p.setup(self.id, self.recon, self.solver)?,
        };
        if let Some(cfl) = self.cfl {
            setup.scheme.config = setup.scheme.config.clone().with_cfl(cfl);
        }
        crate::grid::fill_aux_ghosts(&mut setup.state, &setup.scheme.grid, &setup.scheme.bc);
        setup.scheme.validate(&setup.state)?;
        Ok(setup)
    }

    /// Sets the acoustic pulse half-width (and the matching final time).
    pub fn with_pulse_width(mut self, a: f64) -> Result<Self> {
        match &mut self.kind {
            ProblemKind::Acoustics(p) => {
                *p = p.clone().with_width(a);
                Ok(self)
            }
            _ => Err(Error::Config(format!("{} has no pulse width", self.id.name()))),
        }
    }

    /// Observables entering convergence errors by default: pressure for
    /// acoustics, depth for shallow water, everything otherwise.
    pub fn error_components(&self) -> Vec<usize> {
        match &self.kind {
            ProblemKind::Acoustics(_) | ProblemKind::DamBreak(_) | ProblemKind::ShallowRadial(_) => vec![0],
            _ => Vec::new(),
        }
    }

    /// Norm used for this problem's convergence errors.
    pub fn default_norm(&self) -> crate::harness::Norm {
        match &self.kind {
            ProblemKind::Hump(_) => crate::harness::Norm::L2,
            _ => crate::harness::Norm::L1,
        }
    }

    /// Physical fields used for error norms and output, interior-ordered,
    /// with their names. Acoustics in strain-momentum form is mapped back to
    /// pressure and velocity.
    /// Names of the conserved components and of the aux fields.
    pub fn field_names(&self) -> (Vec<&'static str>, Vec<&'static str>) {
        match &self.kind {
            ProblemKind::Acoustics(_) => match AcousticsParams::form(self.solver) {
                AcousticsForm::PressureVelocity => (vec!["p", "u"], vec!["rho", "c"]),
                AcousticsForm::StrainMomentum => (vec!["strain", "momentum"], vec!["rho", "bulk"]),
            },
            ProblemKind::SonicCrystal(_) => (vec!["p", "u", "v"], vec!["rho", "c"]),
            ProblemKind::Stegoton(_) => (vec!["strain", "momentum"], vec!["rho", "modulus"]),
            ProblemKind::ShallowRadial(_) => (vec!["h", "hu"], vec![]),
            ProblemKind::DamBreak(_) => (vec!["h", "hu", "hv"], vec![]),
            ProblemKind::Hump(_) => (vec!["h", "hu", "hv"], vec!["b"]),
        }
    }

    pub fn observables(&self, state: &State) -> (Vec<&'static str>, Vec<f64>) {
        match &self.kind {
            ProblemKind::Acoustics(p) => p.observables(state, self.solver),
            ProblemKind::SonicCrystal(_) => (vec!["p", "u", "v"], state.interior_q()),
            ProblemKind::Stegoton(_) => (vec!["strain", "momentum"], state.interior_q()),
            ProblemKind::ShallowRadial(_) => (vec!["h", "hu"], state.interior_q()),
            ProblemKind::DamBreak(_) | ProblemKind::Hump(_) => (vec!["h", "hu", "hv"], state.interior_q()),
        }
    }
}

fn pick_recon(requested: Option<ReconKind>, default: ReconKind, allowed: &[ReconKind]) -> Result<ReconKind> {
    let r = requested.unwrap_or(default);
    if allowed.contains(&r) {
        Ok(r)
    } else {
        Err(Error::Config(format!(
            "reconstruction {} is not available for this problem",
            r.name()
        )))
    }
}
