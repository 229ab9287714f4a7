//! Scalar objectives: penalized blade mass, the mass/energy scalarization,
//! weighted sums and the component cost / cost-of-energy formulas.

use crate::error::{Error, Result};
use crate::structures::StructuralReport;

/// Cap applied to the resonance penalty at exact coincidence.
pub const P8_CAP: f64 = 1e6;

/// The eight penalty ratios of the penalized-mass fitness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltySet {
    /// p1..p8 in order: fiber tension, fiber compression, transverse
    /// tension, transverse compression, shear, buckling interaction, tip
    /// deflection, resonance proximity.
    pub p: [f64; 8],
}

impl PenaltySet {
    pub fn all_within_limits(&self) -> bool {
        self.p.iter().all(|&v| v <= 1.0)
    }
}

/// Limits used to normalize the structural responses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyLimits {
    pub sigma11_ft: f64,
    pub sigma11_fc: f64,
    pub sigma22_ft: f64,
    pub sigma22_fc: f64,
    pub tau12_y: f64,
    pub max_tip_deflection: f64,
    /// Minimum allowable gap between any natural frequency and the rotor
    /// speed (rad/s).
    pub freq_gap_allow: f64,
    /// Rotor speed (rad/s).
    pub omega_rotor: f64,
}

/// Build the penalty set from a structural report.
///
/// Stress penalties divide the report's extremes by the corresponding
/// strength limits, compressive extremes sign-normalized so every ratio is
/// non-negative; the resonance penalty is the worst
/// `gap_allow / |omega_m - omega_rotor|` over the computed modes, capped.
pub fn penalty_factors(report: &StructuralReport, limits: &PenaltyLimits) -> Result<PenaltySet> {
    if report.modal.frequencies_rad_s.is_empty() {
        return Err(Error::Numerical(
            "penalty factors need at least one modal frequency".into(),
        ));
    }
    let p1 = (report.sigma11_max / limits.sigma11_ft).max(0.0);
    let p2 = (-report.sigma11_min.min(0.0)) / limits.sigma11_fc;
    let p3 = (report.sigma22_max / limits.sigma22_ft).max(0.0);
    let p4 = (-report.sigma22_min.min(0.0)) / limits.sigma22_fc;
    let p5 = report.tau12_max_abs / limits.tau12_y;
    let p6 = report.max_buckling_ratio;
    let p7 = report.beam.tip_deflection / limits.max_tip_deflection;
    let p8 = resonance_penalty(
        &report.modal.frequencies_rad_s,
        limits.freq_gap_allow,
        limits.omega_rotor,
    );
    Ok(PenaltySet {
        p: [p1, p2, p3, p4, p5, p6, p7, p8],
    })
}

/// Worst `gap_allow / |omega_m - omega_rotor|` over the modes, capped.
pub fn resonance_penalty(frequencies: &[f64], gap_allow: f64, omega_rotor: f64) -> f64 {
    frequencies
        .iter()
        .map(|&w| {
            let gap = (w - omega_rotor).abs();
            if gap * P8_CAP <= gap_allow {
                P8_CAP
            } else {
                (gap_allow / gap).min(P8_CAP)
            }
        })
        .fold(0.0_f64, f64::max)
}

/// Penalty set for the blade pipeline: stress penalties use the per-lamina
/// utilizations already normalized by each lamina's own strengths.
pub fn penalty_factors_from_utilization(
    report: &StructuralReport,
    max_tip_deflection: f64,
    freq_gap_allow: f64,
    omega_rotor: f64,
) -> Result<PenaltySet> {
    if report.modal.frequencies_rad_s.is_empty() {
        return Err(Error::Numerical(
            "penalty factors need at least one modal frequency".into(),
        ));
    }
    let p8 = resonance_penalty(
        &report.modal.frequencies_rad_s,
        freq_gap_allow,
        omega_rotor,
    );
    Ok(PenaltySet {
        p: [
            report.util_sigma11_t.max(0.0),
            report.util_sigma11_c.max(0.0),
            report.util_sigma22_t.max(0.0),
            report.util_sigma22_c.max(0.0),
            report.util_tau12.max(0.0),
            report.max_buckling_ratio,
            report.beam.tip_deflection / max_tip_deflection,
            p8,
        ],
    })
}

/// Blade mass multiplied by the squared penalty product
/// `mass * prod max(1, p_n)^2`.
pub fn penalized_mass(mass: f64, penalties: &PenaltySet) -> f64 {
    let mut f = mass;
    for &p in &penalties.p {
        let v = p.max(1.0);
        f *= v * v;
    }
    f
}

/// Scalarized mass/energy fitness configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessConfig {
    pub alpha: f64,
    /// Reference mass (kg).
    pub m0: f64,
    /// Reference annual energy (kWh/yr).
    pub aep0: f64,
}

impl FitnessConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!(
                "alpha must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        if self.m0 <= 0.0 || self.aep0 <= 0.0 {
            return Err(Error::Config(
                "reference mass and energy must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `alpha * mass/m0 + (alpha - 1) * aep/aep0`; smaller is better.
pub fn scalarized_fitness(mass: f64, aep: f64, cfg: &FitnessConfig) -> f64 {
    cfg.alpha * (mass / cfg.m0) + (cfg.alpha - 1.0) * (aep / cfg.aep0)
}

/// Optimization sense of one objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// Sign that converts the objective to minimization form.
    pub fn sign(&self) -> f64 {
        match self {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        }
    }
}

/// Weighted sum of objectives after sense normalization.
pub fn weighted_sum(values: &[f64], weights: &[f64], senses: &[Sense]) -> Result<f64> {
    if values.len() != weights.len() || values.len() != senses.len() {
        return Err(Error::Config(
            "values, weights and senses must have equal length".into(),
        ));
    }
    if weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::Config("weights must be positive".into()));
    }
    Ok(values
        .iter()
        .zip(weights)
        .zip(senses)
        .map(|((v, w), s)| w * s.sign() * v)
        .sum())
}

/// Component cost model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    /// Baseline component cost.
    pub baseline_cost: f64,
    /// Fixed portion of the total cost in [0, 1].
    pub fixed_fraction: f64,
    /// Design parameter of importance and its baseline value.
    pub parameter: f64,
    pub parameter_baseline: f64,
}

/// Component cost scaling `C = C_b (c + (1 - c) P/P_b)`.
pub fn component_cost(p: &CostParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&p.fixed_fraction) {
        return Err(Error::Config("cost fraction must lie in [0, 1]".into()));
    }
    if p.parameter_baseline == 0.0 {
        return Err(Error::Config("baseline parameter must be nonzero".into()));
    }
    Ok(p.baseline_cost
        * (p.fixed_fraction + (1.0 - p.fixed_fraction) * (p.parameter / p.parameter_baseline)))
}

/// Cost of energy `COE = FCR (TC + BOS) / AEP + OM`.
pub fn cost_of_energy(
    turbine_cost: f64,
    balance_of_station: f64,
    fixed_charge_rate: f64,
    om_per_kwh: f64,
    aep_kwh: f64,
) -> Result<f64> {
    if aep_kwh <= 0.0 {
        return Err(Error::Domain("cost of energy needs positive AEP".into()));
    }
    Ok(fixed_charge_rate * (turbine_cost + balance_of_station) / aep_kwh + om_per_kwh)
}

/// The power-coefficient / blade-mass objective pair: Cp at the design wind
/// speed (maximize) and the blade mass (minimize).
pub fn objective_pair(cp_at_design_speed: f64, blade_mass: f64) -> ([f64; 2], [Sense; 2]) {
    (
        [cp_at_design_speed, blade_mass],
        [Sense::Maximize, Sense::Minimize],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{BeamState, ModalResult, ModeFamily, StructuralReport};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn set(p: [f64; 8]) -> PenaltySet {
        PenaltySet { p }
    }

    /// Minimal report with prescribed extremes.
    fn report(
        s11: (f64, f64),
        s22: (f64, f64),
        tau: f64,
        buckle: f64,
        tip: f64,
        omega1: f64,
    ) -> StructuralReport {
        StructuralReport {
            mass_kg: 100.0,
            beam: BeamState {
                station_radii: vec![0.0, 1.0],
                flap_deflection: vec![0.0, tip],
                edge_deflection: vec![0.0, 0.0],
                elastic_twist_rad: vec![0.0, 0.0],
                foreshortening_m: vec![0.0, 0.0],
                sigma_zz_max: vec![0.0, 0.0],
                sigma_zz_min: vec![0.0, 0.0],
                tau_zs_max: vec![0.0, 0.0],
                tip_deflection: tip,
            },
            rows: vec![],
            sigma11_max: s11.0,
            sigma11_min: s11.1,
            sigma22_max: s22.0,
            sigma22_min: s22.1,
            tau12_max_abs: tau,
            util_sigma11_t: 0.0,
            util_sigma11_c: 0.0,
            util_sigma22_t: 0.0,
            util_sigma22_c: 0.0,
            util_tau12: 0.0,
            max_buckling_ratio: buckle,
            modal: ModalResult {
                frequencies_rad_s: vec![omega1],
                families: vec![ModeFamily::Flap],
                shapes: vec![vec![0.0, 1.0]],
                nodes: vec![0.0, 1.0],
            },
        }
    }

    fn limits() -> PenaltyLimits {
        PenaltyLimits {
            sigma11_ft: 4e8,
            sigma11_fc: 3e8,
            sigma22_ft: 1e8,
            sigma22_fc: 1.2e8,
            tau12_y: 7e7,
            max_tip_deflection: 1.0,
            freq_gap_allow: 0.8,
            omega_rotor: 8.0,
        }
    }

    #[test]
    fn penalty_factors_at_half_limits() {
        // every response at exactly half its limit
        let r = report(
            (2e8, -1.5e8),
            (5e7, -6e7),
            3.5e7,
            0.5,
            0.5,
            8.0 + 1.6, // gap twice the allowable
        );
        let p = penalty_factors(&r, &limits()).unwrap();
        for (i, v) in p.p.iter().enumerate() {
            assert_relative_eq!(*v, 0.5, max_relative = 1e-12, epsilon = 1e-12);
            let _ = i;
        }
    }

    #[test]
    fn penalty_factors_doubled_stress() {
        let r = report((8e8, 0.0), (1e7, 0.0), 0.0, 0.0, 0.0, 100.0);
        let p = penalty_factors(&r, &limits()).unwrap();
        assert_relative_eq!(p.p[0], 2.0, max_relative = 1e-12);
    }

    #[test]
    fn penalty_factors_resonance_cap() {
        let r = report((0.0, 0.0), (0.0, 0.0), 0.0, 0.0, 0.0, 8.0);
        let p = penalty_factors(&r, &limits()).unwrap();
        assert_eq!(p.p[7], P8_CAP);
    }

    #[test]
    fn penalty_factors_needs_modal_data() {
        let mut r = report((0.0, 0.0), (0.0, 0.0), 0.0, 0.0, 0.0, 8.0);
        r.modal.frequencies_rad_s.clear();
        assert!(penalty_factors(&r, &limits()).is_err());
    }

    #[test]
    fn penalized_mass_identity_when_all_within_limits() {
        let s = set([0.5, 0.9, 0.1, 1.0, 0.3, 0.7, 0.2, 0.0]);
        assert_eq!(penalized_mass(123.4, &s), 123.4);
        assert!(s.all_within_limits());
    }

    #[test]
    fn single_violation_squares() {
        let s = set([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.0]);
        assert_relative_eq!(penalized_mass(100.0, &s), 400.0, max_relative = 1e-12);
    }

    #[test]
    fn two_violations_multiply() {
        let s = set([2.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0]);
        assert_relative_eq!(penalized_mass(10.0, &s), 360.0, max_relative = 1e-12);
    }

    #[test]
    fn resonance_at_coincidence_hits_the_cap() {
        assert_eq!(resonance_penalty(&[8.37758], 0.8, 8.37758), P8_CAP);
        // far from resonance the penalty is small
        assert!(resonance_penalty(&[30.0], 0.8, 8.37758) < 0.05);
    }

    #[test]
    fn scalarization_endpoints() {
        let cfg = FitnessConfig {
            alpha: 1.0,
            m0: 200.0,
            aep0: 5.0e4,
        };
        assert_relative_eq!(
            scalarized_fitness(150.0, 4.0e4, &cfg),
            0.75,
            max_relative = 1e-12
        );
        let cfg0 = FitnessConfig { alpha: 0.0, ..cfg };
        assert_relative_eq!(
            scalarized_fitness(150.0, 4.0e4, &cfg0),
            -0.8,
            max_relative = 1e-12
        );
        let cfg_half = FitnessConfig { alpha: 0.5, ..cfg };
        assert_relative_eq!(
            scalarized_fitness(200.0, 5.0e4, &cfg_half),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn weighted_sum_basics() {
        assert_relative_eq!(
            weighted_sum(&[5.0], &[1.0], &[Sense::Minimize]).unwrap(),
            5.0
        );
        assert_relative_eq!(
            weighted_sum(&[5.0], &[1.0], &[Sense::Maximize]).unwrap(),
            -5.0
        );
        assert_relative_eq!(
            weighted_sum(&[2.0, 3.0], &[1.0, 2.0], &[Sense::Minimize, Sense::Minimize]).unwrap(),
            8.0
        );
        assert!(weighted_sum(&[1.0], &[0.0], &[Sense::Minimize]).is_err());
    }

    #[test]
    fn component_cost_examples() {
        let base = CostParams {
            baseline_cost: 1000.0,
            fixed_fraction: 1.0,
            parameter: 99.0,
            parameter_baseline: 10.0,
        };
        assert_relative_eq!(component_cost(&base).unwrap(), 1000.0);
        let at_baseline = CostParams {
            fixed_fraction: 0.37,
            parameter: 10.0,
            ..base
        };
        assert_relative_eq!(component_cost(&at_baseline).unwrap(), 1000.0);
        let blade = CostParams {
            fixed_fraction: 0.2,
            parameter: 20.0,
            ..base
        };
        assert_relative_eq!(
            component_cost(&blade).unwrap(),
            1800.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn cost_of_energy_examples() {
        assert_relative_eq!(cost_of_energy(0.0, 0.0, 0.1, 0.013, 1e6).unwrap(), 0.013);
        assert_relative_eq!(
            cost_of_energy(1e6, 2e5, 0.1, 0.01, 4e6).unwrap(),
            0.04,
            max_relative = 1e-12
        );
        let c1 = cost_of_energy(1e6, 2e5, 0.1, 0.0, 2e6).unwrap();
        let c2 = cost_of_energy(1e6, 2e5, 0.1, 0.0, 4e6).unwrap();
        assert_relative_eq!(c1, 2.0 * c2, max_relative = 1e-12);
        assert!(cost_of_energy(1.0, 1.0, 0.1, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn penalized_mass_never_below_mass(p in proptest::array::uniform8(0.0f64..5.0)) {
            let s = set(p);
            let f = penalized_mass(100.0, &s);
            prop_assert!(f >= 100.0 - 1e-9);
            if s.all_within_limits() {
                prop_assert!((f - 100.0).abs() < 1e-9);
            } else {
                prop_assert!(f > 100.0);
            }
        }

        #[test]
        fn penalized_mass_monotone_in_each_penalty(
            p in proptest::array::uniform8(0.0f64..3.0),
            idx in 0usize..8,
            bump in 0.0f64..2.0,
        ) {
            let s0 = set(p);
            let mut p1 = p;
            p1[idx] += bump;
            let s1 = set(p1);
            prop_assert!(penalized_mass(50.0, &s1) >= penalized_mass(50.0, &s0) - 1e-9);
        }

        #[test]
        fn scalarization_is_affine_in_alpha(
            alpha in 0.0f64..1.0,
            mass in 10.0f64..1000.0,
            aep in 1.0f64..1e6,
        ) {
            let cfg = |a| FitnessConfig { alpha: a, m0: 500.0, aep0: 5e5 };
            let f0 = scalarized_fitness(mass, aep, &cfg(0.0));
            let f1 = scalarized_fitness(mass, aep, &cfg(1.0));
            let fa = scalarized_fitness(mass, aep, &cfg(alpha));
            prop_assert!((fa - (f0 + alpha * (f1 - f0))).abs() < 1e-12);
        }

        #[test]
        fn weight_rescaling_preserves_argmin(scale in 0.1f64..10.0) {
            let candidates = [[1.0, 9.0], [4.0, 2.0], [3.0, 3.0]];
            let w = [1.0, 2.0];
            let senses = [Sense::Minimize, Sense::Minimize];
            let pick = |weights: [f64; 2]| {
                candidates
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| {
                        weighted_sum(*a, &weights, &senses)
                            .unwrap()
                            .partial_cmp(&weighted_sum(*b, &weights, &senses).unwrap())
                            .unwrap()
                    })
                    .map(|(i, _)| i)
                    .unwrap()
            };
            prop_assert_eq!(pick(w), pick([w[0] * scale, w[1] * scale]));
        }
    }
}
