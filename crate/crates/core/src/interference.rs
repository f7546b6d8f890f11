//! Screen probability distribution of the monitored double slit:
//! the closed-form pattern, a brute-force quadrature oracle built from
//! the full entangled two-particle state, the mixed position-momentum
//! joint distribution, and the impulsive-Coulomb visibility refinement.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{integrate, NumericsError};
use crate::params::{
    derive, DerivedParams, ExperimentConfig, PhysicalConstants, TauModel,
};
use crate::wavepacket::{momentum_state, GaussianPacket};

use std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("grid must be strictly increasing (violated at index {index})")]
    NonMonotonicGrid { index: usize },
    #[error("evolution time must be strictly positive (got {0})")]
    NonPositiveTime(f64),
    #[error("evolution time must be non-negative (got {0})")]
    NegativeTime(f64),
    #[error("screen-point quadrature failed at x = {x}: {source}")]
    Quadrature {
        x: f64,
        #[source]
        source: NumericsError,
    },
}

/// Whether to evaluate the spreading factor and fringe spacing exactly
/// or with their far-field (t much larger than the spreading time)
/// approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpreadingForm {
    #[default]
    Exact,
    /// A ~ (m delta / hbar t)^2 and Lambda ~ 2 pi hbar t / (m d).
    FarField,
}

/// Sampled screen probability density at a fixed time.
#[derive(Debug, Clone, Serialize)]
pub struct PatternGrid {
    /// Screen positions (m), strictly increasing.
    pub positions: Vec<f64>,
    /// Probability density (1/m) at each position.
    pub density: Vec<f64>,
    /// Evolution time (s).
    pub time: f64,
    /// Snapshot of the derived parameters for the generating config.
    pub meta: DerivedParams,
}

impl PatternGrid {
    /// Trapezoid integral of the density over the sampled grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.positions, &self.density)
    }
}

/// Joint probability density over electron position and monitoring
/// particle wavenumber (dimensionless: 1/m in x times m in k).
#[derive(Debug, Clone, Serialize)]
pub struct JointGrid {
    pub positions: Vec<f64>,
    pub wavenumbers: Vec<f64>,
    /// Row-major: `density[ix * wavenumbers.len() + ik]`.
    pub density: Vec<f64>,
    pub time: f64,
}

impl JointGrid {
    pub fn at(&self, ix: usize, ik: usize) -> f64 {
        self.density[ix * self.wavenumbers.len() + ik]
    }

    /// Marginal density over position (integrates out k).
    pub fn position_marginal(&self) -> Vec<f64> {
        let nk = self.wavenumbers.len();
        (0..self.positions.len())
            .map(|ix| {
                let row = &self.density[ix * nk..(ix + 1) * nk];
                trapezoid(&self.wavenumbers, row)
            })
            .collect()
    }

    /// Marginal density over wavenumber (integrates out x).
    pub fn wavenumber_marginal(&self) -> Vec<f64> {
        let nk = self.wavenumbers.len();
        (0..nk)
            .map(|ik| {
                let col: Vec<f64> = (0..self.positions.len())
                    .map(|ix| self.density[ix * nk + ik])
                    .collect();
                trapezoid(&self.positions, &col)
            })
            .collect()
    }

    /// 2-D trapezoid integral over the sampled grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.positions, &self.position_marginal())
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

fn check_grid(grid: &[f64]) -> Result<(), PatternError> {
    for (i, pair) in grid.windows(2).enumerate() {
        if pair[0].partial_cmp(&pair[1]) != Some(std::cmp::Ordering::Less) {
            return Err(PatternError::NonMonotonicGrid { index: i + 1 });
        }
    }
    Ok(())
}

/// Closed-form fringe profile at one instant: the two recoiling
/// single-slit envelopes plus the visibility-weighted cross term.
struct FringeProfile {
    prefactor: f64,
    envelope: f64,
    center: f64,
    wavenumber: f64,
    visibility: f64,
}

impl FringeProfile {
    fn new(
        config: &ExperimentConfig,
        constants: &PhysicalConstants,
        dp: &DerivedParams,
        t: f64,
        form: SpreadingForm,
    ) -> Self {
        let hbar = constants.reduced_planck;
        let m = constants.electron_mass;
        let d = config.slit_separation;
        let delta = config.electron_width;
        let beta = hbar * t / m;
        let delta2 = delta * delta;
        let delta4 = delta2 * delta2;

        let (envelope, wavenumber) = match form {
            SpreadingForm::Exact => (
                delta2 / (delta4 + beta * beta),
                (d * beta + 2.0 * dp.impulse * delta4 / hbar) / (beta * beta + delta4),
            ),
            SpreadingForm::FarField => {
                let a = m * delta / (hbar * t);
                (a * a, m * d / (hbar * t))
            }
        };
        Self {
            prefactor: 0.5 * dp.normalization * dp.normalization * (envelope / PI).sqrt(),
            envelope,
            center: 0.5 * d - dp.recoil_velocity * t,
            wavenumber,
            visibility: dp.visibility,
        }
    }

    fn density(&self, x: f64) -> f64 {
        let up = x - self.center;
        let down = x + self.center;
        let cross = 2.0
            * self.visibility
            * (-self.envelope * (x * x + self.center * self.center)).exp()
            * (self.wavenumber * x).cos();
        self.prefactor
            * ((-self.envelope * up * up).exp() + (-self.envelope * down * down).exp() + cross)
    }
}

/// Exact closed-form screen distribution on `x_grid` at time `t > 0`.
///
/// The prefactor is `N^2/2 sqrt(A/pi)`; the spreading factor, recoil
/// offsets, fringe wavenumber, and visibility are all evaluated with
/// their exact expressions unless `form` selects the far-field
/// approximation.
pub fn pattern_analytic(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    t: f64,
    x_grid: &[f64],
    form: SpreadingForm,
) -> Result<PatternGrid, PatternError> {
    if t <= 0.0 || t.is_nan() {
        return Err(PatternError::NonPositiveTime(t));
    }
    check_grid(x_grid)?;
    let dp = derive(config, constants);
    let profile = FringeProfile::new(config, constants, &dp, t, form);
    let density = x_grid.iter().map(|&x| profile.density(x)).collect();
    Ok(PatternGrid {
        positions: x_grid.to_vec(),
        density,
        time: t,
        meta: dp,
    })
}

fn two_path_packets(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    impulse: f64,
) -> [GaussianPacket; 4] {
    let half = 0.5 * config.slit_separation;
    // panics are unreachable: config fields are validated positive
    let electron_up = GaussianPacket::new(
        config.electron_width,
        half,
        -impulse,
        constants.electron_mass,
    )
    .expect("validated config");
    let electron_down = GaussianPacket::new(
        config.electron_width,
        -half,
        impulse,
        constants.electron_mass,
    )
    .expect("validated config");
    let proton_up =
        GaussianPacket::new(config.proton_width, 0.0, impulse, constants.proton_mass)
            .expect("validated config");
    let proton_down =
        GaussianPacket::new(config.proton_width, 0.0, -impulse, constants.proton_mass)
            .expect("validated config");
    [electron_up, electron_down, proton_up, proton_down]
}

/// Brute-force screen distribution: for every grid point the squared
/// magnitude of the entangled two-particle state is integrated over the
/// monitoring particle's position by adaptive quadrature.
///
/// `quad_tolerance` is applied to the integrand normalized by the
/// incoherent two-packet envelope at each screen point, so it acts as a
/// scale-free accuracy target across the pattern's full dynamic range
/// (raw densities span many orders of magnitude).
///
/// Serves as the independent oracle for [`pattern_analytic`]; the two
/// must agree to better than 1e-8 in relative L2 distance.
pub fn pattern_numeric_oracle(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    t: f64,
    x_grid: &[f64],
    quad_tolerance: f64,
) -> Result<PatternGrid, PatternError> {
    if t <= 0.0 || t.is_nan() {
        return Err(PatternError::NonPositiveTime(t));
    }
    check_grid(x_grid)?;
    if quad_tolerance <= 0.0 || quad_tolerance.is_nan() {
        return Err(PatternError::Quadrature {
            x: f64::NAN,
            source: NumericsError::BadTolerance(quad_tolerance),
        });
    }
    let dp = derive(config, constants);
    let [electron_up, electron_down, proton_up, proton_down] =
        two_path_packets(config, constants, dp.impulse);
    let hbar = constants.reduced_planck;
    let weight = 0.5 * dp.normalization * dp.normalization;

    // Integration window: the proton density is a pair of spreading
    // Gaussians drifting at +-P/M; cover both lobes to 8 widths.
    let drift = (dp.impulse * t / constants.proton_mass).abs();
    let half_window = 8.0 * proton_up.width_at(t, hbar) + drift;

    let density = x_grid
        .par_iter()
        .map(|&x| {
            let e_up = electron_up.evolve_at(x, t, hbar);
            let e_down = electron_down.evolve_at(x, t, hbar);
            let scale = e_up.norm_sqr() + e_down.norm_sqr();
            if scale == 0.0 {
                return Ok(0.0); // both envelopes underflow this far out
            }
            let result = integrate(
                |big_x| {
                    let p_up = proton_up.evolve_at(big_x, t, hbar);
                    let p_down = proton_down.evolve_at(big_x, t, hbar);
                    (e_up * p_up + e_down * p_down).norm_sqr() / scale
                },
                -half_window,
                half_window,
                quad_tolerance,
            );
            match result {
                Ok(r) => Ok(weight * scale * r.value),
                Err(source) => Err(PatternError::Quadrature { x, source }),
            }
        })
        .collect::<Result<Vec<f64>, PatternError>>()?;

    Ok(PatternGrid {
        positions: x_grid.to_vec(),
        density,
        time: t,
        meta: dp,
    })
}

/// Mixed-form joint density |Psi(x, k, t)|^2 over electron position and
/// monitoring-particle wavenumber. The free-evolution phase of the
/// monitoring particle drops out of the modulus.
pub fn joint_xk_distribution(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    t: f64,
    x_grid: &[f64],
    k_grid: &[f64],
) -> Result<JointGrid, PatternError> {
    if t < 0.0 {
        return Err(PatternError::NegativeTime(t));
    }
    check_grid(x_grid)?;
    check_grid(k_grid)?;
    let dp = derive(config, constants);
    let [electron_up, electron_down, _, _] = two_path_packets(config, constants, dp.impulse);
    let hbar = constants.reduced_planck;
    let weight = 0.5 * dp.normalization * dp.normalization;

    let phi_up: Vec<f64> = k_grid
        .iter()
        .map(|&k| momentum_state(config.proton_width, dp.impulse, k, hbar))
        .collect();
    let phi_down: Vec<f64> = k_grid
        .iter()
        .map(|&k| momentum_state(config.proton_width, -dp.impulse, k, hbar))
        .collect();

    let density: Vec<f64> = x_grid
        .par_iter()
        .flat_map_iter(|&x| {
            let e_up = electron_up.evolve_at(x, t, hbar);
            let e_down = electron_down.evolve_at(x, t, hbar);
            phi_up
                .iter()
                .zip(phi_down.iter())
                .map(move |(&up, &down)| {
                    weight * (e_up.scale(up) + e_down.scale(down)).norm_sqr()
                })
        })
        .collect();

    Ok(JointGrid {
        positions: x_grid.to_vec(),
        wavenumbers: k_grid.to_vec(),
        density,
        time: t,
    })
}

/// Refined visibility of the impulsive-Coulomb interaction model, and
/// the quadratic phase coefficient `a` it derives from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImpulsiveVisibility {
    /// V = exp(-alpha^2 Delta^2 / (d^2 + 4 alpha^2 delta^2 Delta^2 / d^2)).
    pub visibility: f64,
    /// Coefficient of the quadratic phase exp(-i a (x - X)^2), equal to
    /// alpha / d^2 in the asymptotic convention (1/m^2).
    pub phase_coefficient: f64,
}

/// Visibility of the impulsive-Coulomb refinement of the scattering
/// model. `model` selects whether the underlying interaction parameter
/// uses the exact finite-window factor or its asymptotic limit.
pub fn impulsive_visibility(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    model: TauModel,
) -> ImpulsiveVisibility {
    let alpha = crate::params::interaction_alpha(config, constants, model);
    let d = config.slit_separation;
    let d2 = d * d;
    let delta = config.electron_width;
    let big_delta = config.proton_width;
    let a2 = alpha * alpha;
    let denominator = d2 + 4.0 * a2 * delta * delta * big_delta * big_delta / d2;
    ImpulsiveVisibility {
        visibility: (-a2 * big_delta * big_delta / denominator).exp(),
        phase_coefficient: alpha / d2,
    }
}

/// Half-width of a screen grid that captures the full pattern at time
/// `t`: slit offset plus recoil drift plus eight envelope widths.
pub fn normalization_span(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    t: f64,
) -> f64 {
    let dp = derive(config, constants);
    let beta = constants.reduced_planck * t / constants.electron_mass;
    let delta2 = config.electron_width * config.electron_width;
    let envelope = delta2 / (delta2 * delta2 + beta * beta);
    0.5 * config.slit_separation + dp.recoil_velocity.abs() * t + 8.0 / envelope.sqrt()
}

/// Half-width of a wavenumber grid that captures both momentum lobes
/// of the monitoring particle: P/hbar plus eight lobe widths.
pub fn momentum_span(config: &ExperimentConfig, constants: &PhysicalConstants) -> f64 {
    let dp = derive(config, constants);
    dp.impulse / constants.reduced_planck + 8.0 / config.proton_width
}

/// Uniform grid of `points` samples over `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (points - 1) as f64;
            (0..points).map(|i| lo + step * i as f64).collect()
        }
    }
}
