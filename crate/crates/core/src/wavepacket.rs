//! One-dimensional Gaussian wave packets with exact free time evolution,
//! plus the momentum-space states of the monitoring particle and their
//! overlap (the fringe visibility).
//!
//! Complex arithmetic is carried over paired doubles with an explicit
//! principal-branch square root; evaluation is pointwise in `(x, t)` so
//! grid sweeps stay in the callers.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PacketError {
    #[error("packet width must be strictly positive and finite (got {0})")]
    BadWidth(f64),
    #[error("packet mass must be strictly positive and finite (got {0})")]
    BadMass(f64),
}

/// Complex value of a position-space amplitude (units m^-1/2).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexAmplitude {
    pub re: f64,
    pub im: f64,
}

impl ComplexAmplitude {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.re, s * self.im)
    }

    /// Principal-branch complex square root (branch cut along the
    /// negative real axis). Uses the numerically stable half-sum form.
    pub fn principal_sqrt(self) -> Self {
        if self.re == 0.0 && self.im == 0.0 {
            return Self::ZERO;
        }
        let r = self.re.hypot(self.im);
        if self.re >= 0.0 {
            let t = ((r + self.re) * 0.5).sqrt();
            Self::new(t, self.im / (2.0 * t))
        } else {
            let t = ((r - self.re) * 0.5).sqrt();
            Self::new(self.im.abs() / (2.0 * t), t.copysign(self.im))
        }
    }

    /// exp(re) * (cos im + i sin im)
    pub fn exp(self) -> Self {
        let m = self.re.exp();
        Self::new(m * self.im.cos(), m * self.im.sin())
    }
}

impl Add for ComplexAmplitude {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexAmplitude {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexAmplitude {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

/// A 1-D Gaussian wave packet: width parameter, initial center, mean
/// momentum, and mass. Position-space norm is 1 at every time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    /// Width parameter of the initial Gaussian (m).
    pub width: f64,
    /// Initial center position (m).
    pub center: f64,
    /// Mean momentum (kg m/s).
    pub momentum: f64,
    /// Particle mass (kg).
    pub mass: f64,
}

impl GaussianPacket {
    pub fn new(width: f64, center: f64, momentum: f64, mass: f64) -> Result<Self, PacketError> {
        if width <= 0.0 || !width.is_finite() {
            return Err(PacketError::BadWidth(width));
        }
        if mass <= 0.0 || !mass.is_finite() {
            return Err(PacketError::BadMass(mass));
        }
        Ok(Self {
            width,
            center,
            momentum,
            mass,
        })
    }

    /// Center of the freely moving packet at time `t`.
    pub fn center_at(&self, t: f64) -> f64 {
        self.center + self.momentum * t / self.mass
    }

    /// Density width at time `t`: |psi|^2 = (pi w_t^2)^{-1/2} exp(-(x-c)^2 / w_t^2).
    pub fn width_at(&self, t: f64, hbar: f64) -> f64 {
        let w2 = self.width * self.width;
        let beta = hbar * t / self.mass;
        ((w2 * w2 + beta * beta) / w2).sqrt()
    }

    /// Envelope factor A(t) = w^2 / (w^4 + (hbar t / m)^2), the inverse
    /// squared density width.
    pub fn envelope_factor(&self, t: f64, hbar: f64) -> f64 {
        let w2 = self.width * self.width;
        let beta = hbar * t / self.mass;
        w2 / (w2 * w2 + beta * beta)
    }

    /// Exact free evolution of the packet, evaluated at position `x`
    /// and time `t >= 0`.
    ///
    /// The amplitude is
    ///
    /// ```text
    /// pi^{-1/4} sqrt(w / (w^2 + i hbar t/m))
    ///   * exp[ -(x - x0 - p0 t/m)^2 / (2 (w^2 + i hbar t/m))
    ///          + i p0 x / hbar - i p0^2 t / (2 m hbar) ]
    /// ```
    ///
    /// with the square root on the principal branch; the argument
    /// `w^2 + i hbar t / m` has a strictly positive real part, so the
    /// branch cut is never crossed. The global dynamical phase is kept
    /// so superpositions interfere with the correct relative phase.
    pub fn evolve_at(&self, x: f64, t: f64, hbar: f64) -> ComplexAmplitude {
        let w = self.width;
        let w2 = w * w;
        let beta = hbar * t / self.mass;
        let denom = w2 * w2 + beta * beta;

        // sqrt(w / zeta) with zeta = w^2 + i beta
        let inv_zeta_re = w2 / denom;
        let inv_zeta_im = -beta / denom;
        let prefactor = ComplexAmplitude::new(w * inv_zeta_re, w * inv_zeta_im).principal_sqrt();

        let dx = x - self.center_at(t);
        // -(dx^2 / 2) * (1 / zeta)
        let half_dx2 = 0.5 * dx * dx;
        let exp_re = -half_dx2 * inv_zeta_re;
        let mut exp_im = -half_dx2 * inv_zeta_im;
        exp_im += self.momentum * x / hbar;
        exp_im -= self.momentum * self.momentum * t / (2.0 * self.mass * hbar);

        let pi_quarter = PI.powf(-0.25);
        (prefactor * ComplexAmplitude::new(exp_re, exp_im).exp()).scale(pi_quarter)
    }
}

/// Momentum-space amplitude of the monitoring particle after a kick of
/// mean momentum `mean_momentum`:
/// Phi(k) = pi^{-1/4} sqrt(Delta) exp(-Delta^2 (k - p/hbar)^2 / 2).
///
/// Real-valued and normalized to `∫ Phi^2 dk = 1`. The "up" and "down"
/// states are obtained with `mean_momentum = +P` and `-P`.
pub fn momentum_state(width: f64, mean_momentum: f64, k: f64, hbar: f64) -> f64 {
    let dk = k - mean_momentum / hbar;
    PI.powf(-0.25) * width.sqrt() * (-0.5 * width * width * dk * dk).exp()
}

/// Overlap of the two kicked momentum states, which is exactly the
/// fringe visibility: V = exp(-P^2 Delta^2 / hbar^2).
///
/// Identical to the dephasing average over the monitoring particle's
/// position distribution.
pub fn overlap_visibility(width: f64, impulse: f64, hbar: f64) -> f64 {
    let u = impulse * width / hbar;
    (-u * u).exp()
}
