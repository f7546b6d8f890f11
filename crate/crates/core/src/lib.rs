//! Monitored electron double-slit model, end to end: Coulomb-impulse
//! scattering parameters, exact analytic evolution of the entangled
//! electron-proton Gaussian state, the screen interference pattern with
//! tunable visibility, entanglement entropy, and five which-way
//! information-gain measures.
//!
//! All quantities are SI doubles; entropies and information gains are
//! in bits. Everything is closed-form or a 1-D quadrature, so full
//! figure data regenerates in seconds.

pub mod interference;
pub mod numerics;
pub mod params;
pub mod quantum_info;
pub mod wavepacket;

pub use interference::{
    impulsive_visibility, joint_xk_distribution, linear_grid, momentum_span,
    normalization_span, pattern_analytic, pattern_numeric_oracle, ImpulsiveVisibility,
    JointGrid, PatternError, PatternGrid, SpreadingForm,
};
pub use numerics::{integrate, xlog2x, NumericsError, QuadratureResult};
pub use params::{
    derive, impulse, interaction_alpha, validate_regime, velocity_from_energy, ConfigError,
    DerivedParams, ExperimentConfig, PhysicalConstants, RegimeAssumption, RegimeWarning,
    TauModel,
};
pub use quantum_info::{
    binary_entropy, electron_density_matrix, erf, holevo_bound, info_be,
    info_be_entropy_form, info_curve, info_gain, info_m, info_q, info_wz, joint_table,
    mutual_information, quantum_mutual_information, von_neumann_entropy, DensityMatrix2,
    InfoCurve, InfoError, InfoMethod, JointTable, Measurement,
};
pub use wavepacket::{momentum_state, overlap_visibility, ComplexAmplitude, GaussianPacket};
