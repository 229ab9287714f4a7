//! Blade-element momentum aerodynamics: annulus solver, rotor performance,
//! power curves and annual energy production.

mod bem;
mod power;

pub use bem::{prandtl_factor, solve_annulus, AnnulusGeometry, LossFlags};
pub use power::{annual_energy, power_curve, PowerPoint};

use crate::error::{Error, Result};
use crate::model::{AirfoilPolar, BladeDefinition, Environment};

/// Solver configuration mirroring the WT-Perf style switch set.
#[derive(Debug, Clone, PartialEq)]
pub struct BemConfig {
    pub max_iter: usize,
    /// Convergence tolerance on the induction residual.
    pub a_tol: f64,
    pub tip_loss: bool,
    pub hub_loss: bool,
    pub swirl: bool,
    pub skewed_wake: bool,
    /// Empirical high-induction (a > 0.4) thrust relation.
    pub adv_brake: bool,
    /// Include drag in the axial induction update.
    pub ai_drag: bool,
    /// Include drag in the tangential induction update.
    pub ti_drag: bool,
    /// Accepted for input compatibility; a single damped fixed-point solver
    /// is used either way.
    pub ind_prop: bool,
    pub num_sectors: usize,
}

impl Default for BemConfig {
    fn default() -> Self {
        Self {
            max_iter: 1000,
            a_tol: 1e-6,
            tip_loss: true,
            hub_loss: true,
            swirl: true,
            skewed_wake: true,
            adv_brake: true,
            ai_drag: true,
            ti_drag: true,
            ind_prop: true,
            num_sectors: 1,
        }
    }
}

impl BemConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter < 1 {
            return Err(Error::Config("MaxIter must be at least 1".into()));
        }
        if self.a_tol <= 0.0 {
            return Err(Error::Config("ATol must be positive".into()));
        }
        Ok(())
    }
}

/// One rotor operating condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub wind_speed: f64,
    pub rotor_speed_rpm: f64,
    pub pitch_deg: f64,
    pub yaw_deg: f64,
}

impl OperatingPoint {
    pub fn new(wind_speed: f64, rotor_speed_rpm: f64) -> Self {
        Self {
            wind_speed,
            rotor_speed_rpm,
            pitch_deg: 0.0,
            yaw_deg: 0.0,
        }
    }

    pub fn omega(&self) -> f64 {
        self.rotor_speed_rpm * std::f64::consts::PI / 30.0
    }
}

/// Converged state of one annulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusState {
    /// Axial induction factor.
    pub a: f64,
    /// Tangential induction factor.
    pub a_prime: f64,
    /// Inflow angle (rad).
    pub phi: f64,
    /// Local angle of attack (deg).
    pub alpha_deg: f64,
    pub cl: f64,
    pub cd: f64,
    /// Combined Prandtl loss factor in [0, 1].
    pub f: f64,
    /// Rotor thrust gradient for all blades (N/m).
    pub dt_dr: f64,
    /// Rotor torque gradient for all blades (N·m/m).
    pub dq_dr: f64,
    pub converged: bool,
    pub residual: f64,
}

/// Rotor loads and performance at one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct RotorPerformance {
    pub power_w: f64,
    pub cp: f64,
    pub thrust_n: f64,
    pub torque_nm: f64,
    /// Flapwise bending moment at the root of one blade (N·m).
    pub root_flap_moment_nm: f64,
    /// Per-station out-of-plane line load on one blade (N/m).
    pub flapwise_n_per_m: Vec<f64>,
    /// Per-station in-plane (driving) line load on one blade (N/m).
    pub edgewise_n_per_m: Vec<f64>,
    /// Per-station annulus states.
    pub annuli: Vec<AnnulusState>,
    /// True when every annulus met the induction tolerance.
    pub all_converged: bool,
}

/// Solve every annulus of the rotor and integrate loads.
///
/// Station loads are integrated with the trapezoid rule over the (typically
/// cosine-spaced) station radii; power is torque times rotor speed and Cp is
/// normalized by the free-stream power through the rotor disc.
pub fn rotor_performance(
    blade: &BladeDefinition,
    polars: &dyn Fn(&str) -> Option<AirfoilPolar>,
    op: &OperatingPoint,
    env: &Environment,
    cfg: &BemConfig,
) -> Result<RotorPerformance> {
    cfg.validate()?;
    let n = blade.num_sections();
    let mut annuli = Vec::with_capacity(n);
    let mut flap = Vec::with_capacity(n);
    let mut edge = Vec::with_capacity(n);
    let mut any_converged = false;
    let mut all_converged = true;

    for st in &blade.stations {
        let polar = polars(&st.airfoil_id).ok_or_else(|| {
            Error::Config(format!("no polar table for airfoil '{}'", st.airfoil_id))
        })?;
        let geom = AnnulusGeometry {
            radius: st.radius_m,
            chord: st.chord_m,
            twist_deg: st.twist_deg,
            num_blades: blade.num_blades,
            tip_radius: blade.tip_radius_m,
            hub_radius: blade.hub_radius_m,
        };
        let state = solve_annulus(&geom, op, &polar, env, cfg)?;
        any_converged |= state.converged;
        all_converged &= state.converged;
        flap.push(state.dt_dr / blade.num_blades as f64);
        edge.push(state.dq_dr / (blade.num_blades as f64 * st.radius_m.max(1e-9)));
        annuli.push(state);
    }
    if !any_converged {
        return Err(Error::Numerical(
            "no annulus converged; rotor state is unusable".into(),
        ));
    }

    let radii: Vec<f64> = blade.stations.iter().map(|s| s.radius_m).collect();
    let thrust = trapezoid(&radii, &annuli.iter().map(|s| s.dt_dr).collect::<Vec<_>>());
    let torque = trapezoid(&radii, &annuli.iter().map(|s| s.dq_dr).collect::<Vec<_>>());
    let root_flap: Vec<f64> = radii
        .iter()
        .zip(flap.iter())
        .map(|(&r, &f)| f * (r - blade.hub_radius_m))
        .collect();
    let root_flap_moment = trapezoid(&radii, &root_flap);

    let omega = op.omega();
    let power = torque * omega;
    let r = blade.tip_radius_m;
    let v = op.wind_speed;
    let p_avail = 0.5 * env.fluid_density * std::f64::consts::PI * r * r * v * v * v;
    let cp = if p_avail > 0.0 { power / p_avail } else { 0.0 };

    Ok(RotorPerformance {
        power_w: power,
        cp,
        thrust_n: thrust,
        torque_nm: torque,
        root_flap_moment_nm: root_flap_moment,
        flapwise_n_per_m: flap,
        edgewise_n_per_m: edge,
        annuli,
        all_converged,
    })
}

/// Trapezoid rule over tabulated values with a fixed summation order.
pub(crate) fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = 0.0;
    for i in 1..x.len() {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PolarRow, Spacing, Station};
    use approx::assert_relative_eq;

    pub(crate) fn flat_polar(cl_per_deg: f64, cd: f64) -> AirfoilPolar {
        // linear lift clamped at +/-1.2, spanning the full circle
        let mut rows = Vec::new();
        let mut a = -180.0;
        while a <= 180.0 + 1e-9 {
            let cl = (cl_per_deg * a).clamp(-1.2, 1.2);
            rows.push(PolarRow {
                alpha_deg: a,
                cl,
                cd,
                cm: None,
            });
            a += 1.0;
        }
        AirfoilPolar::new("lin", rows).unwrap()
    }

    pub(crate) fn test_blade(chord: f64, twist_fn: impl Fn(f64) -> f64) -> BladeDefinition {
        let radii = BladeDefinition::spaced_radii(30, 0.5, 10.0, Spacing::Cosine);
        let stations = radii
            .iter()
            .map(|&r| Station {
                radius_m: r,
                chord_m: chord,
                twist_deg: twist_fn(r),
                pitch_axis_fraction: 0.375,
                airfoil_id: "lin".into(),
            })
            .collect();
        BladeDefinition::new(10.0, 0.5, stations, 3, Spacing::Cosine).unwrap()
    }

    #[test]
    fn zero_rotor_speed_gives_zero_power() {
        let blade = test_blade(0.4, |_| 0.0);
        let polar = flat_polar(0.1, 0.01);
        let env = Environment::default();
        let cfg = BemConfig::default();
        let op = OperatingPoint::new(8.0, 0.0);
        let perf = rotor_performance(&blade, &|_| Some(polar.clone()), &op, &env, &cfg).unwrap();
        assert_eq!(perf.power_w, 0.0);
        assert_eq!(perf.cp, 0.0);
    }

    #[test]
    fn doubling_density_doubles_power_and_thrust() {
        let blade = test_blade(0.4, |_| 0.0);
        let polar = flat_polar(0.1, 0.01);
        let cfg = BemConfig::default();
        let op = OperatingPoint::new(8.0, 80.0);
        let env1 = Environment::default();
        let mut env2 = Environment::default();
        env2.fluid_density *= 2.0;
        let p1 = rotor_performance(&blade, &|_| Some(polar.clone()), &op, &env1, &cfg).unwrap();
        let p2 = rotor_performance(&blade, &|_| Some(polar.clone()), &op, &env2, &cfg).unwrap();
        assert_relative_eq!(p2.power_w, 2.0 * p1.power_w, max_relative = 1e-9);
        assert_relative_eq!(p2.thrust_n, 2.0 * p1.thrust_n, max_relative = 1e-9);
        assert_relative_eq!(p2.cp, p1.cp, max_relative = 1e-9);
    }

    #[test]
    fn betz_limit_respected_over_tsr_sweep() {
        // drag-free, loss-free configuration swept over tip speed ratio
        let blade = test_blade(0.2, |_| 0.0);
        let polar = flat_polar(0.1, 0.0);
        let env = Environment::default();
        let cfg = BemConfig {
            tip_loss: false,
            hub_loss: false,
            ..BemConfig::default()
        };
        let omega_rpm = 80.0;
        let omega = omega_rpm * std::f64::consts::PI / 30.0;
        let mut max_cp: f64 = 0.0;
        for i in 0..=28 {
            let tsr = 1.0 + 0.5 * i as f64;
            let v = omega * blade.tip_radius_m / tsr;
            let op = OperatingPoint::new(v, omega_rpm);
            let perf =
                rotor_performance(&blade, &|_| Some(polar.clone()), &op, &env, &cfg).unwrap();
            max_cp = max_cp.max(perf.cp);
        }
        assert!(
            max_cp <= 16.0 / 27.0 + 1e-9,
            "max cp {} exceeds the Betz limit",
            max_cp
        );
        assert!(max_cp > 0.2, "sweep should find a productive operating point");
    }
}
