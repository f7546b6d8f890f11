//! Physical constants, the experiment configuration, and every scalar
//! quantity derived from them: Coulomb impulse, interaction parameter,
//! recoil velocity, visibility, normalization, fringe spacing, and the
//! regime-of-validity checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wavepacket::overlap_visibility;

/// Warn when the impulse reaches this fraction of the forward momentum
/// `m v` (small-scattering assumption).
pub const SMALL_SCATTERING_FACTOR: f64 = 0.1;
/// Warn when the interaction time reaches this fraction of the packet
/// spreading time `m delta^2 / hbar`.
pub const INTERACTION_SPREADING_FACTOR: f64 = 0.1;
/// Warn when the combined position uncertainty `sqrt(delta^2 + Delta^2)`
/// reaches this fraction of the slit separation.
pub const PATH_SEPARATION_FACTOR: f64 = 0.5;
/// Warn when the slit packet width reaches this fraction of the slit
/// separation (normalization overlap).
pub const SLIT_OVERLAP_FACTOR: f64 = 0.5;

/// Interaction time used when the configuration does not specify one,
/// in units of the transit time `d / v`. At this value the impulse has
/// reached 99.5% of its asymptotic limit.
pub const DEFAULT_TAU_TRANSITS: f64 = 10.0;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("`{field}` must be strictly positive and finite (got {value})")]
    NonPositive { field: &'static str, value: f64 },
    #[error("provide exactly one of `electron_velocity_v` and `kinetic_energy_ev`, found both")]
    VelocityEnergyConflict,
    #[error("provide one of `electron_velocity_v` or `kinetic_energy_ev`")]
    VelocityMissing,
    #[error("invalid config document: {0}")]
    Json(#[from] serde_json::Error),
}

/// Fundamental constants in SI units. Defaults are CODATA 2018 values
/// stored to full double precision; overriding requires supplying the
/// complete set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Elementary charge e (C).
    pub elementary_charge: f64,
    /// Vacuum permittivity epsilon_0 (F/m).
    pub vacuum_permittivity: f64,
    /// Reduced Planck constant hbar (J s).
    pub reduced_planck: f64,
    /// Electron mass m (kg).
    pub electron_mass: f64,
    /// Proton mass M (kg).
    pub proton_mass: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 recommended values.
    pub fn codata2018() -> Self {
        Self {
            elementary_charge: 1.602_176_634e-19,
            vacuum_permittivity: 8.854_187_812_8e-12,
            reduced_planck: 1.054_571_817_646_156_5e-34,
            electron_mass: 9.109_383_701_5e-31,
            proton_mass: 1.672_621_923_69e-27,
        }
    }

    /// Override the full set; every value must be strictly positive.
    pub fn new(
        elementary_charge: f64,
        vacuum_permittivity: f64,
        reduced_planck: f64,
        electron_mass: f64,
        proton_mass: f64,
    ) -> Result<Self, ConfigError> {
        let k = Self {
            elementary_charge,
            vacuum_permittivity,
            reduced_planck,
            electron_mass,
            proton_mass,
        };
        for (field, value) in [
            ("elementary_charge", k.elementary_charge),
            ("vacuum_permittivity", k.vacuum_permittivity),
            ("reduced_planck", k.reduced_planck),
            ("electron_mass", k.electron_mass),
            ("proton_mass", k.proton_mass),
        ] {
            if value <= 0.0 || !value.is_finite() {
                return Err(ConfigError::NonPositive { field, value });
            }
        }
        Ok(k)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Physical setup of the monitored double-slit experiment, fully
/// resolved: velocity is always populated (possibly derived from a
/// kinetic energy) and the interaction time defaults to `10 d / v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// Slit separation d (m).
    #[serde(rename = "slit_separation_d")]
    pub slit_separation: f64,
    /// Electron packet width delta (m).
    #[serde(rename = "electron_width_delta")]
    pub electron_width: f64,
    /// Monitoring-particle packet width Delta (m).
    #[serde(rename = "proton_width_Delta")]
    pub proton_width: f64,
    /// Electron forward velocity v (m/s).
    #[serde(rename = "electron_velocity_v")]
    pub electron_velocity: f64,
    /// Slit-to-screen distance D (m).
    #[serde(rename = "screen_distance_D")]
    pub screen_distance: f64,
    /// Coulomb interaction window tau (s).
    #[serde(rename = "interaction_time_tau")]
    pub interaction_time: f64,
}

/// On-disk JSON schema. Unknown keys are rejected; exactly one of
/// `electron_velocity_v` and `kinetic_energy_ev` must be present.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDocument {
    slit_separation_d: f64,
    electron_width_delta: f64,
    #[serde(rename = "proton_width_Delta")]
    proton_width_delta: f64,
    #[serde(default)]
    electron_velocity_v: Option<f64>,
    #[serde(default)]
    kinetic_energy_ev: Option<f64>,
    #[serde(rename = "screen_distance_D")]
    screen_distance_d: f64,
    #[serde(default)]
    interaction_time_tau: Option<f64>,
}

impl ExperimentConfig {
    /// Build a configuration from an explicit electron velocity.
    /// `interaction_time` falls back to `10 d / v` when `None`.
    pub fn with_velocity(
        slit_separation: f64,
        electron_width: f64,
        proton_width: f64,
        electron_velocity: f64,
        screen_distance: f64,
        interaction_time: Option<f64>,
    ) -> Result<Self, ConfigError> {
        let tau = interaction_time
            .unwrap_or(DEFAULT_TAU_TRANSITS * slit_separation / electron_velocity);
        let cfg = Self {
            slit_separation,
            electron_width,
            proton_width,
            electron_velocity,
            screen_distance,
            interaction_time: tau,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Build a configuration from a kinetic energy in eV; the velocity
    /// is derived nonrelativistically.
    pub fn with_kinetic_energy(
        slit_separation: f64,
        electron_width: f64,
        proton_width: f64,
        kinetic_energy_ev: f64,
        screen_distance: f64,
        interaction_time: Option<f64>,
        constants: &PhysicalConstants,
    ) -> Result<Self, ConfigError> {
        let v = velocity_from_energy(kinetic_energy_ev, constants)?;
        Self::with_velocity(
            slit_separation,
            electron_width,
            proton_width,
            v,
            screen_distance,
            interaction_time,
        )
    }

    /// Parse the JSON config schema. Unknown keys fail with a message
    /// naming the offending key.
    pub fn from_json(text: &str, constants: &PhysicalConstants) -> Result<Self, ConfigError> {
        let doc: ConfigDocument = serde_json::from_str(text)?;
        let velocity = match (doc.electron_velocity_v, doc.kinetic_energy_ev) {
            (Some(_), Some(_)) => return Err(ConfigError::VelocityEnergyConflict),
            (None, None) => return Err(ConfigError::VelocityMissing),
            (Some(v), None) => v,
            (None, Some(e)) => velocity_from_energy(e, constants)?,
        };
        Self::with_velocity(
            doc.slit_separation_d,
            doc.electron_width_delta,
            doc.proton_width_delta,
            velocity,
            doc.screen_distance_d,
            doc.interaction_time_tau,
        )
    }

    fn validate(&self) -> Result<(), ConfigError> {
        for (field, value) in [
            ("slit_separation_d", self.slit_separation),
            ("electron_width_delta", self.electron_width),
            ("proton_width_Delta", self.proton_width),
            ("electron_velocity_v", self.electron_velocity),
            ("screen_distance_D", self.screen_distance),
            ("interaction_time_tau", self.interaction_time),
        ] {
            if value <= 0.0 || !value.is_finite() {
                return Err(ConfigError::NonPositive { field, value });
            }
        }
        Ok(())
    }

    /// Flight time from the slits to the screen, T = D / v.
    pub fn propagation_time(&self) -> f64 {
        self.screen_distance / self.electron_velocity
    }
}

/// Nonrelativistic velocity of an electron with the given kinetic
/// energy: v = sqrt(2 E / m).
pub fn velocity_from_energy(
    energy_ev: f64,
    constants: &PhysicalConstants,
) -> Result<f64, ConfigError> {
    if energy_ev <= 0.0 || !energy_ev.is_finite() {
        return Err(ConfigError::NonPositive {
            field: "kinetic_energy_ev",
            value: energy_ev,
        });
    }
    let joules = energy_ev * constants.elementary_charge;
    Ok((2.0 * joules / constants.electron_mass).sqrt())
}

/// Which closed form of the Coulomb impulse to use: the exact
/// finite-interaction-window expression, or its infinite-window limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauModel {
    /// P = (e^2 / 4 pi eps0) (4 / v d) * (v tau / d) / sqrt(1 + (v tau / d)^2)
    Finite,
    /// The tau -> infinity limit, P = (e^2 / 4 pi eps0) (4 / v d).
    Asymptotic,
}

fn tau_saturation(config: &ExperimentConfig) -> f64 {
    let s = config.electron_velocity * config.interaction_time / config.slit_separation;
    s / (1.0 + s * s).sqrt()
}

/// Net transverse momentum exchanged during passage (kg m/s).
pub fn impulse(config: &ExperimentConfig, constants: &PhysicalConstants, model: TauModel) -> f64 {
    let e = constants.elementary_charge;
    let coulomb = e * e / (4.0 * std::f64::consts::PI * constants.vacuum_permittivity);
    let asymptotic = coulomb * 4.0 / (config.electron_velocity * config.slit_separation);
    match model {
        TauModel::Asymptotic => asymptotic,
        TauModel::Finite => asymptotic * tau_saturation(config),
    }
}

/// Dimensionless interaction parameter alpha = P d / hbar; in the
/// asymptotic convention alpha = e^2 / (pi eps0 hbar v).
pub fn interaction_alpha(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
    model: TauModel,
) -> f64 {
    let e = constants.elementary_charge;
    let asymptotic = e * e
        / (std::f64::consts::PI
            * constants.vacuum_permittivity
            * constants.reduced_planck
            * config.electron_velocity);
    match model {
        TauModel::Asymptotic => asymptotic,
        TauModel::Finite => asymptotic * tau_saturation(config),
    }
}

/// Every scalar quantity the model derives from a configuration,
/// evaluated at the screen arrival time T = D / v.
///
/// The impulse (and everything downstream of it: recoil velocity,
/// visibility, normalization, fringe spacing) uses the exact
/// finite-window form with the configured interaction time; `alpha` is
/// reported in the conventional asymptotic form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    /// Exchanged momentum P (kg m/s), finite-window form.
    #[serde(rename = "impulse_P")]
    pub impulse: f64,
    /// Interaction parameter, asymptotic convention.
    pub alpha: f64,
    /// Recoil velocity v0 = P / m (m/s).
    #[serde(rename = "recoil_velocity_v0")]
    pub recoil_velocity: f64,
    /// Fringe visibility V = exp(-P^2 Delta^2 / hbar^2).
    pub visibility: f64,
    /// Normalization constant N of the two-path state.
    #[serde(rename = "normalization_N")]
    pub normalization: f64,
    /// Propagation time T = D / v (s).
    #[serde(rename = "propagation_time_T")]
    pub propagation_time: f64,
    /// Characteristic spreading time m delta^2 / hbar (s).
    pub spreading_time: f64,
    /// Fringe spacing Lambda at t = T, exact form (m).
    #[serde(rename = "fringe_spacing_Lambda")]
    pub fringe_spacing: f64,
    /// Envelope factor A at t = T (1/m^2).
    #[serde(rename = "envelope_factor_A")]
    pub envelope_factor: f64,
}

/// Populate [`DerivedParams`] from a configuration using the exact
/// expressions (no far-field approximations).
pub fn derive(config: &ExperimentConfig, constants: &PhysicalConstants) -> DerivedParams {
    let hbar = constants.reduced_planck;
    let m = constants.electron_mass;
    let d = config.slit_separation;
    let delta = config.electron_width;

    let p = impulse(config, constants, TauModel::Finite);
    let alpha = interaction_alpha(config, constants, TauModel::Asymptotic);
    let visibility = overlap_visibility(config.proton_width, p, hbar);

    let half_sep = 0.5 * d / delta;
    let u_elec = p * delta / hbar;
    let overlap = (-half_sep * half_sep).exp() * (-u_elec * u_elec).exp() * visibility;
    let normalization = (1.0 + overlap).powf(-0.5);

    let t = config.propagation_time();
    let beta = hbar * t / m;
    let delta2 = delta * delta;
    let delta4 = delta2 * delta2;
    let fringe_spacing = std::f64::consts::TAU * (beta * beta + delta4)
        / (d * beta + 2.0 * p * delta4 / hbar);

    DerivedParams {
        impulse: p,
        alpha,
        recoil_velocity: p / m,
        visibility,
        normalization,
        propagation_time: t,
        spreading_time: m * delta2 / hbar,
        fringe_spacing,
        envelope_factor: delta2 / (delta4 + beta * beta),
    }
}

/// Model assumptions checked by [`validate_regime`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeAssumption {
    /// P must stay small against the forward momentum m v.
    SmallScattering,
    /// tau must stay small against the spreading time m delta^2 / hbar.
    NoSpreadingDuringInteraction,
    /// sqrt(delta^2 + Delta^2) must stay small against d.
    SeparatedPaths,
    /// delta must stay small against d for the two-packet normalization.
    NarrowSlitPackets,
}

/// One violated assumption, with the dimensionless ratio that crossed
/// its threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeWarning {
    pub assumption: RegimeAssumption,
    /// Value of the monitored ratio (see `detail` for its definition).
    pub ratio: f64,
    /// Threshold the ratio crossed.
    pub threshold: f64,
    pub detail: String,
}

/// Check the semiclassical model's regime of validity. Returns one
/// warning per violated assumption; never fails.
pub fn validate_regime(
    config: &ExperimentConfig,
    constants: &PhysicalConstants,
) -> Vec<RegimeWarning> {
    let mut warnings = Vec::new();
    let p = impulse(config, constants, TauModel::Finite);
    let forward = constants.electron_mass * config.electron_velocity;
    let scattering = p / forward;
    if scattering >= SMALL_SCATTERING_FACTOR {
        warnings.push(RegimeWarning {
            assumption: RegimeAssumption::SmallScattering,
            ratio: scattering,
            threshold: SMALL_SCATTERING_FACTOR,
            detail: format!(
                "impulse P = {p:.3e} kg m/s is not small against the forward momentum \
                 m v = {forward:.3e} kg m/s (P / m v = {scattering:.3})"
            ),
        });
    }

    let spreading_time =
        constants.electron_mass * config.electron_width * config.electron_width
            / constants.reduced_planck;
    let spread_ratio = config.interaction_time / spreading_time;
    if spread_ratio >= INTERACTION_SPREADING_FACTOR {
        warnings.push(RegimeWarning {
            assumption: RegimeAssumption::NoSpreadingDuringInteraction,
            ratio: spread_ratio,
            threshold: INTERACTION_SPREADING_FACTOR,
            detail: format!(
                "interaction time tau = {:.3e} s is not small against the spreading time \
                 m delta^2 / hbar = {spreading_time:.3e} s",
                config.interaction_time
            ),
        });
    }

    let uncertainty = config.electron_width.hypot(config.proton_width);
    let separation_ratio = uncertainty / config.slit_separation;
    if separation_ratio >= PATH_SEPARATION_FACTOR {
        warnings.push(RegimeWarning {
            assumption: RegimeAssumption::SeparatedPaths,
            ratio: separation_ratio,
            threshold: PATH_SEPARATION_FACTOR,
            detail: format!(
                "combined position uncertainty sqrt(delta^2 + Delta^2) = {uncertainty:.3e} m \
                 is not small against the slit separation d = {:.3e} m",
                config.slit_separation
            ),
        });
    }

    let overlap_ratio = config.electron_width / config.slit_separation;
    if overlap_ratio >= SLIT_OVERLAP_FACTOR {
        warnings.push(RegimeWarning {
            assumption: RegimeAssumption::NarrowSlitPackets,
            ratio: overlap_ratio,
            threshold: SLIT_OVERLAP_FACTOR,
            detail: format!(
                "slit packet width delta = {:.3e} m is not small against the slit \
                 separation d = {:.3e} m",
                config.electron_width, config.slit_separation
            ),
        });
    }

    warnings
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bach_config() -> ExperimentConfig {
        let k = PhysicalConstants::codata2018();
        ExperimentConfig::with_kinetic_energy(272e-9, 20e-9, 210e-9, 600.0, 240e-3, None, &k)
            .unwrap()
    }

    #[test]
    fn velocity_at_600_ev() {
        let k = PhysicalConstants::codata2018();
        let v = velocity_from_energy(600.0, &k).unwrap();
        assert!((v - 1.452_784_916_264_825e7).abs() < 1.0, "v = {v}");
        // matches the quoted 1.45e7 m/s
        assert!((v / 1.4527e7 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn velocity_scales_as_sqrt_energy() {
        let k = PhysicalConstants::codata2018();
        let v600 = velocity_from_energy(600.0, &k).unwrap();
        let v150 = velocity_from_energy(150.0, &k).unwrap();
        // quarter energy halves the velocity
        assert!((v150 - 0.5 * v600).abs() < 1e-9 * v600);
        assert!((v150 - 7.264e6).abs() < 1e3);
    }

    #[test]
    fn nonpositive_energy_rejected() {
        let k = PhysicalConstants::codata2018();
        assert!(velocity_from_energy(0.0, &k).is_err());
        assert!(velocity_from_energy(-5.0, &k).is_err());
        assert!(velocity_from_energy(f64::NAN, &k).is_err());
    }

    #[test]
    fn impulse_saturation_at_ten_transits() {
        let k = PhysicalConstants::codata2018();
        let cfg = bach_config(); // tau defaults to 10 d / v
        let finite = impulse(&cfg, &k, TauModel::Finite);
        let asymptotic = impulse(&cfg, &k, TauModel::Asymptotic);
        let ratio = finite / asymptotic;
        assert!((ratio - 0.99504).abs() < 1e-5, "ratio = {ratio}");
        assert!((ratio - 10.0 / 101f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn impulse_alpha_consistency_both_conventions() {
        let k = PhysicalConstants::codata2018();
        let cfg = bach_config();
        for model in [TauModel::Finite, TauModel::Asymptotic] {
            let lhs = impulse(&cfg, &k, model) * cfg.slit_separation / k.reduced_planck;
            let rhs = interaction_alpha(&cfg, &k, model);
            assert!((lhs / rhs - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bach_derived_parameters() {
        let k = PhysicalConstants::codata2018();
        let dp = derive(&bach_config(), &k);
        assert!((dp.alpha - 0.603).abs() < 1e-3, "alpha = {}", dp.alpha);
        assert!((dp.visibility - 0.807).abs() < 2e-3, "V = {}", dp.visibility);
        assert!((dp.recoil_velocity - 255.1).abs() < 0.5, "v0 = {}", dp.recoil_velocity);
        assert!((dp.spreading_time - 3.455e-12).abs() < 1e-14);
        assert!((dp.fringe_spacing - 44.18e-6).abs() < 0.05e-6);
        assert!((dp.propagation_time - 16.52e-9).abs() < 0.01e-9);
        assert!((dp.envelope_factor - 1.0936e8).abs() < 1e5);
        // v0 = P / m and T = D / v hold exactly
        assert_eq!(dp.recoil_velocity, dp.impulse / k.electron_mass);
        assert_eq!(
            dp.propagation_time,
            bach_config().screen_distance / bach_config().electron_velocity
        );
    }

    #[test]
    fn zero_proton_uncertainty_limit() {
        let k = PhysicalConstants::codata2018();
        let cfg = ExperimentConfig::with_velocity(
            272e-9,
            20e-9,
            1e-18, // Delta -> 0
            1.4527e7,
            240e-3,
            None,
        )
        .unwrap();
        let dp = derive(&cfg, &k);
        assert!((dp.visibility - 1.0).abs() < 1e-12);
        let half = 0.5 * cfg.slit_separation / cfg.electron_width;
        let u = dp.impulse * cfg.electron_width / k.reduced_planck;
        let expected_n = (1.0 + (-half * half).exp() * (-u * u).exp()).powf(-0.5);
        assert!((dp.normalization - expected_n).abs() < 1e-15);
    }

    #[test]
    fn alpha_scaled_to_fig2b_regime() {
        let k = PhysicalConstants::codata2018();
        // pick v so the asymptotic alpha is exactly 1.2
        let e = k.elementary_charge;
        let v = e * e / (std::f64::consts::PI * k.vacuum_permittivity * k.reduced_planck * 1.2);
        let cfg =
            ExperimentConfig::with_velocity(272e-9, 20e-9, 210e-9, v, 240e-3, None).unwrap();
        let dp = derive(&cfg, &k);
        assert!((dp.alpha - 1.2).abs() < 1e-12);
        assert!((dp.visibility - 0.424).abs() < 0.01, "V = {}", dp.visibility);
    }

    #[test]
    fn regime_warnings_for_bach_set() {
        let k = PhysicalConstants::codata2018();
        let warnings = validate_regime(&bach_config(), &k);
        // Delta = 210 nm violates only the path-separation assumption
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].assumption, RegimeAssumption::SeparatedPaths);
    }

    #[test]
    fn deep_validity_regime_is_quiet() {
        let k = PhysicalConstants::codata2018();
        // delta = 1 nm shrinks the spreading time to ~8.6 fs, so the
        // interaction window must be set below 0.86 fs explicitly.
        let cfg = ExperimentConfig::with_velocity(
            272e-9,
            1e-9,
            1e-9,
            1.4527e7,
            240e-3,
            Some(5e-16),
        )
        .unwrap();
        assert!(validate_regime(&cfg, &k).is_empty());
    }

    #[test]
    fn slow_electrons_violate_small_scattering() {
        let k = PhysicalConstants::codata2018();
        let cfg = ExperimentConfig::with_velocity(
            272e-9,
            20e-9,
            210e-9,
            1.4527e5, // 100x slower
            240e-3,
            None,
        )
        .unwrap();
        let warnings = validate_regime(&cfg, &k);
        assert!(warnings
            .iter()
            .any(|w| w.assumption == RegimeAssumption::SmallScattering));
    }

    #[test]
    fn json_round_trip_and_schema() {
        let k = PhysicalConstants::codata2018();
        let text = r#"{
            "slit_separation_d": 272e-9,
            "electron_width_delta": 20e-9,
            "proton_width_Delta": 210e-9,
            "kinetic_energy_ev": 600.0,
            "screen_distance_D": 240e-3
        }"#;
        let cfg = ExperimentConfig::from_json(text, &k).unwrap();
        assert_eq!(cfg, bach_config());

        let velocity_text = format!(
            r#"{{
                "slit_separation_d": 272e-9,
                "electron_width_delta": 20e-9,
                "proton_width_Delta": 210e-9,
                "electron_velocity_v": {},
                "screen_distance_D": 240e-3
            }}"#,
            cfg.electron_velocity
        );
        let cfg2 = ExperimentConfig::from_json(&velocity_text, &k).unwrap();
        assert_eq!(cfg, cfg2);
    }

    #[test]
    fn json_rejects_unknown_keys_naming_them() {
        let k = PhysicalConstants::codata2018();
        let text = r#"{
            "slit_separation_d": 272e-9,
            "electron_width_delta": 20e-9,
            "proton_width_Delta": 210e-9,
            "kinetic_energy_ev": 600.0,
            "screen_distance_D": 240e-3,
            "detector_gain": 2.0
        }"#;
        let err = ExperimentConfig::from_json(text, &k).unwrap_err();
        assert!(err.to_string().contains("detector_gain"), "{err}");
    }

    #[test]
    fn json_velocity_energy_exclusivity() {
        let k = PhysicalConstants::codata2018();
        let both = r#"{
            "slit_separation_d": 272e-9,
            "electron_width_delta": 20e-9,
            "proton_width_Delta": 210e-9,
            "electron_velocity_v": 1.45e7,
            "kinetic_energy_ev": 600.0,
            "screen_distance_D": 240e-3
        }"#;
        assert!(matches!(
            ExperimentConfig::from_json(both, &k),
            Err(ConfigError::VelocityEnergyConflict)
        ));
        let neither = r#"{
            "slit_separation_d": 272e-9,
            "electron_width_delta": 20e-9,
            "proton_width_Delta": 210e-9,
            "screen_distance_D": 240e-3
        }"#;
        assert!(matches!(
            ExperimentConfig::from_json(neither, &k),
            Err(ConfigError::VelocityMissing)
        ));
    }

    #[test]
    fn config_rejects_nonpositive_fields() {
        let r = ExperimentConfig::with_velocity(272e-9, -1e-9, 210e-9, 1.45e7, 0.24, None);
        match r {
            Err(ConfigError::NonPositive { field, .. }) => {
                assert_eq!(field, "electron_width_delta")
            }
            other => panic!("expected NonPositive, got {other:?}"),
        }
    }

    #[test]
    fn normalization_approaches_one_for_narrow_slits() {
        let k = PhysicalConstants::codata2018();
        let mut prev = 0.0;
        for delta in [40e-9, 20e-9, 10e-9, 5e-9] {
            let cfg =
                ExperimentConfig::with_velocity(272e-9, delta, 210e-9, 1.4527e7, 240e-3, None)
                    .unwrap();
            let n = derive(&cfg, &k).normalization;
            assert!(n <= 1.0);
            assert!(n >= prev);
            prev = n;
        }
        assert!((prev - 1.0).abs() < 1e-15);
    }

    proptest! {
        // alpha(v) * v is constant: alpha scales exactly as 1/v
        #[test]
        fn alpha_inverse_in_velocity(v1 in 1e6f64..1e8, v2 in 1e6f64..1e8) {
            let k = PhysicalConstants::codata2018();
            let mk = |v| ExperimentConfig::with_velocity(
                272e-9, 20e-9, 210e-9, v, 240e-3, None,
            ).unwrap();
            let a1 = interaction_alpha(&mk(v1), &k, TauModel::Asymptotic);
            let a2 = interaction_alpha(&mk(v2), &k, TauModel::Asymptotic);
            prop_assert!((a1 * v1 / (a2 * v2) - 1.0).abs() < 1e-12);
        }

        // the finite-window impulse increases with tau and never
        // exceeds the asymptotic value
        #[test]
        fn impulse_monotone_in_tau(tau1_fs in 1.0f64..5000.0, tau2_fs in 1.0f64..5000.0) {
            prop_assume!(tau1_fs < tau2_fs);
            let k = PhysicalConstants::codata2018();
            let mk = |tau_fs: f64| ExperimentConfig::with_velocity(
                272e-9, 20e-9, 210e-9, 1.4527e7, 240e-3, Some(tau_fs * 1e-15),
            ).unwrap();
            let p1 = impulse(&mk(tau1_fs), &k, TauModel::Finite);
            let p2 = impulse(&mk(tau2_fs), &k, TauModel::Finite);
            let cap = impulse(&mk(tau1_fs), &k, TauModel::Asymptotic);
            prop_assert!(p1 < p2);
            prop_assert!(p2 < cap);
        }

        // visibility strictly decreases in the proton width
        #[test]
        fn visibility_monotone_in_proton_width(d1_nm in 1.0f64..400.0, d2_nm in 1.0f64..400.0) {
            prop_assume!(d1_nm < d2_nm);
            let k = PhysicalConstants::codata2018();
            let mk = |w_nm: f64| ExperimentConfig::with_velocity(
                272e-9, 20e-9, w_nm * 1e-9, 1.4527e7, 240e-3, None,
            ).unwrap();
            let v1 = derive(&mk(d1_nm), &k).visibility;
            let v2 = derive(&mk(d2_nm), &k).visibility;
            prop_assert!(v2 < v1);
            prop_assert!(v1 <= 1.0 && v2 > 0.0);
        }
    }
}
