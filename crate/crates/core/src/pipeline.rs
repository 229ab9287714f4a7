//! The composed per-design evaluation: design vector to layup, structural
//! response under the governing power-curve load case, penalized mass, and
//! annual energy on the elastically deformed geometry.
//!
//! Because the rotor geometry itself is fixed, the layup influences energy
//! through blade flexibility: each operating speed's loads twist the blade
//! (torque about the shear center) and bow it downwind (second-order radial
//! foreshortening of the deflected span). The power curve used for the AEP
//! is evaluated on that deformed geometry, so softer blades trade energy
//! against their mass savings.

use std::collections::HashMap;

use crate::aero::{
    annual_energy, power_curve, rotor_performance, BemConfig, OperatingPoint, PowerPoint,
};
use crate::error::{Error, Result};
use crate::model::{
    design_vector_to_layup, AirfoilPolar, BladeDefinition, DesignVector, Environment, LayupLayout,
};
use crate::moo::{DesignEvaluator, DesignObjectives, LinearConstraints};
use crate::objectives::{penalized_mass, penalty_factors_from_utilization, PenaltySet};
use crate::structures::{
    cumulative_integral, evaluate_structure, internal_forces, solve_bending, AnalysisConfig,
    DesignLoads, RoleMaterials, StructuralReport,
};

/// Everything needed to evaluate designs of one blade system.
pub struct BladeSystem {
    pub blade: BladeDefinition,
    pub materials: RoleMaterials,
    pub env: Environment,
    pub bem: BemConfig,
    pub analysis: AnalysisConfig,
    pub layout: LayupLayout,
    /// Operating template: fixed rotor speed and pitch (stall regulation).
    pub op: OperatingPoint,
    /// Power-curve evaluation speeds (m/s).
    pub speeds: Vec<f64>,
    /// AEP integration step (m/s).
    pub aep_step: f64,
    polars: HashMap<String, AirfoilPolar>,
    rigid_curve: Vec<PowerPoint>,
    design_case: DesignCase,
}

/// The load case governing stresses and deflection: the power-curve speed
/// with the largest root flap bending moment.
#[derive(Debug, Clone)]
struct DesignCase {
    pub wind_speed: f64,
    pub flap_n_per_m: Vec<f64>,
    pub edge_n_per_m: Vec<f64>,
}

/// Full breakdown of one design evaluation.
#[derive(Debug, Clone)]
pub struct DesignEval {
    pub mass_kg: f64,
    pub penalized_mass_kg: f64,
    pub aep_kwh: f64,
    pub penalties: PenaltySet,
    pub feasible: bool,
    pub tip_deflection_m: f64,
    pub design_speed: f64,
    pub report: StructuralReport,
}

impl BladeSystem {
    /// Assemble the system and cache the rigid power curve and governing
    /// load case (both independent of the layup design vector).
    pub fn new(
        blade: BladeDefinition,
        materials: RoleMaterials,
        polars: HashMap<String, AirfoilPolar>,
        env: Environment,
        bem: BemConfig,
        analysis: AnalysisConfig,
        layout: LayupLayout,
        op: OperatingPoint,
        speeds: Vec<f64>,
        aep_step: f64,
    ) -> Result<Self> {
        blade.validate()?;
        env.validate()?;
        bem.validate()?;
        layout.validate(blade.num_sections())?;
        if speeds.len() < 2 {
            return Err(Error::Config(
                "power curve needs at least two speeds".into(),
            ));
        }

        // extend all polars to the full circle once
        let mut extended = HashMap::new();
        for (id, polar) in polars {
            extended.insert(id, polar.extend_to_full_range()?);
        }
        for st in &blade.stations {
            if !extended.contains_key(&st.airfoil_id) {
                return Err(Error::Config(format!(
                    "no polar table for airfoil '{}'",
                    st.airfoil_id
                )));
            }
        }

        let lookup = |map: &HashMap<String, AirfoilPolar>, id: &str| map.get(id).cloned();
        let rigid_curve = power_curve(
            &blade,
            &speeds,
            &op,
            &|id| lookup(&extended, id),
            &env,
            &bem,
        )?;

        // governing case: the speed with the largest root flap moment
        let mut best: Option<(f64, usize)> = None;
        for (i, pt) in rigid_curve.iter().enumerate() {
            if let Some(perf) = &pt.performance {
                let m = perf.root_flap_moment_nm.abs();
                if best.map(|(b, _)| m > b).unwrap_or(true) {
                    best = Some((m, i));
                }
            }
        }
        let (_, idx) = best.ok_or_else(|| {
            Error::Numerical("no operating speed produced a usable rotor solution".into())
        })?;
        let perf = rigid_curve[idx].performance.as_ref().expect("checked above");
        let sf = analysis.load_safety_factor;
        let design_case = DesignCase {
            wind_speed: rigid_curve[idx].wind_speed,
            flap_n_per_m: perf.flapwise_n_per_m.iter().map(|f| f * sf).collect(),
            edge_n_per_m: perf.edgewise_n_per_m.iter().map(|f| f * sf).collect(),
        };

        Ok(Self {
            blade,
            materials,
            env,
            bem,
            analysis,
            layout,
            op,
            speeds,
            aep_step,
            polars: extended,
            rigid_curve,
            design_case,
        })
    }

    pub fn polar(&self, id: &str) -> Option<AirfoilPolar> {
        self.polars.get(id).cloned()
    }

    /// The cached rigid power curve.
    pub fn rigid_curve(&self) -> &[PowerPoint] {
        &self.rigid_curve
    }

    /// Annual energy of the rigid (undeformed) geometry.
    pub fn rigid_aep(&self) -> Result<f64> {
        annual_energy(&self.rigid_curve, &self.env, self.aep_step)
    }

    /// Default design-variable bounds in flattened order.
    pub fn default_bounds(layout: &LayupLayout) -> Vec<(f64, f64)> {
        let cp = layout.num_cp;
        let mut b = Vec::with_capacity(DesignVector::dim(layout));
        b.push((0.15, 0.6)); // w_cap_inb
        b.push((0.15, 0.6)); // w_cap_oub
        b.push((0.002, 0.04)); // t_blade_root
        b.extend(std::iter::repeat((5e-4, 0.012)).take(cp)); // blade skin
        b.extend(std::iter::repeat((8e-4, 0.035)).take(cp)); // cap uni
        b.extend(std::iter::repeat((0.0, 0.025)).take(cp)); // cap core
        b.extend(std::iter::repeat((0.0, 0.030)).take(cp)); // lep core
        b.extend(std::iter::repeat((0.0, 0.030)).take(cp)); // tep core
        b.extend(std::iter::repeat((5e-4, 0.012)).take(2)); // web skin
        b.extend(std::iter::repeat((0.0, 0.030)).take(2)); // web core
        b
    }

    /// Midpoint-of-bounds design, a convenient feasible starting point.
    pub fn default_design(&self) -> DesignVector {
        let bounds = Self::default_bounds(&self.layout);
        let x: Vec<f64> = bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
        DesignVector::from_flat(&x, self.layout.clone()).expect("midpoint design is valid")
    }

    /// Evaluate one design with the full breakdown.
    pub fn evaluate_design(&self, x: &[f64]) -> Result<DesignEval> {
        let design = DesignVector::from_flat(x, self.layout.clone())?;
        let schedule = design_vector_to_layup(&design, &self.blade)?;

        let loads = DesignLoads {
            flap_n_per_m: self.design_case.flap_n_per_m.clone(),
            edge_n_per_m: self.design_case.edge_n_per_m.clone(),
            omega_rad_s: self.op.omega(),
        };
        let report = evaluate_structure(
            &self.blade,
            &schedule,
            &self.materials,
            &loads,
            &self.env,
            &self.analysis,
        )?;

        let omega = self.op.omega();
        let penalties = penalty_factors_from_utilization(
            &report,
            self.analysis.max_tip_deflection_m,
            self.analysis.freq_gap_frac * omega,
            omega,
        )?;
        let pm = penalized_mass(report.mass_kg, &penalties);

        let aep = self.flexible_aep(&report)?;

        Ok(DesignEval {
            mass_kg: report.mass_kg,
            penalized_mass_kg: pm,
            aep_kwh: aep,
            penalties,
            feasible: penalties.all_within_limits(),
            tip_deflection_m: report.beam.tip_deflection,
            design_speed: self.design_case.wind_speed,
            report,
        })
    }

    /// Power curve on the elastically deformed geometry, one deformation per
    /// operating speed from that speed's own (unfactored) loads.
    pub fn flexible_power_curve(&self, report: &StructuralReport) -> Result<Vec<PowerPoint>> {
        let radii: Vec<f64> = self.blade.stations.iter().map(|s| s.radius_m).collect();
        let ei_flap: Vec<f64> = report.rows.iter().map(|r| r.ei_flap).collect();
        let ei_edge: Vec<f64> = report.rows.iter().map(|r| r.ei_edge).collect();
        let gj: Vec<f64> = report.rows.iter().map(|r| r.gj).collect();
        let sc_x: Vec<f64> = report.rows.iter().map(|r| r.shear_center_x).collect();

        let mut curve = Vec::with_capacity(self.rigid_curve.len());
        for pt in &self.rigid_curve {
            let perf = match &pt.performance {
                Some(p) => p,
                None => {
                    curve.push(pt.clone());
                    continue;
                }
            };

            // per-speed deformation from this speed's loads
            let flap_sol = solve_bending(&radii, &ei_flap, &perf.flapwise_n_per_m, 20, 0.0)?;
            let edge_sol = solve_bending(&radii, &ei_edge, &perf.edgewise_n_per_m, 20, 0.0)?;
            let torque_line: Vec<f64> = (0..radii.len())
                .map(|i| {
                    let st = &self.blade.stations[i];
                    let xi_ac = (0.25 - st.pitch_axis_fraction) * st.chord_m;
                    (xi_ac - sc_x[i]) * perf.flapwise_n_per_m[i]
                })
                .collect();
            let (torque, _) = internal_forces(&radii, &torque_line);
            let twist_rate: Vec<f64> = (0..radii.len()).map(|i| torque[i] / gj[i]).collect();
            let elastic_twist = cumulative_integral(&radii, &twist_rate);

            let deformed = self.deformed_blade(&radii, &elastic_twist, &flap_sol, &edge_sol)?;
            let op = OperatingPoint {
                wind_speed: pt.wind_speed,
                ..self.op
            };
            let flex = rotor_performance(
                &deformed,
                &|id| self.polar(id),
                &op,
                &self.env,
                &self.bem,
            )?;
            curve.push(PowerPoint {
                wind_speed: pt.wind_speed,
                power_w: flex.power_w,
                cp: flex.cp,
                performance: Some(flex),
            });
        }
        Ok(curve)
    }

    /// AEP on the deformed geometry.
    pub fn flexible_aep(&self, report: &StructuralReport) -> Result<f64> {
        let curve = self.flexible_power_curve(report)?;
        annual_energy(&curve, &self.env, self.aep_step)
    }

    fn deformed_blade(
        &self,
        radii: &[f64],
        elastic_twist_rad: &[f64],
        flap_sol: &crate::structures::BendingSolution,
        edge_sol: &crate::structures::BendingSolution,
    ) -> Result<BladeDefinition> {
        let mut blade = self.blade.clone();
        let mut tip_shift = 0.0;
        for (i, st) in blade.stations.iter_mut().enumerate() {
            let r = radii[i];
            let shift = flap_sol.foreshortening_at(r) + edge_sol.foreshortening_at(r);
            st.radius_m = r - shift;
            st.twist_deg += elastic_twist_rad[i].to_degrees();
            // a bent section tilts out of the rotor plane: its projected
            // chord and the in-plane component of its force each lose a
            // cosine of the local slope
            let slope2 = flap_sol.slope_at(r).powi(2) + edge_sol.slope_at(r).powi(2);
            let tilt_cos = 1.0 / (1.0 + slope2).sqrt();
            st.chord_m *= tilt_cos * tilt_cos;
            tip_shift = shift;
        }
        blade.tip_radius_m -= tip_shift;
        blade.validate()?;
        Ok(blade)
    }
}

impl DesignEvaluator for BladeSystem {
    fn evaluate(&self, x: &[f64]) -> Result<DesignObjectives> {
        let eval = self.evaluate_design(x)?;
        Ok(DesignObjectives {
            mass_kg: eval.mass_kg,
            penalized_mass_kg: eval.penalized_mass_kg,
            aep_kwh: eval.aep_kwh,
            feasible: eval.feasible,
        })
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        Self::default_bounds(&self.layout)
    }

    fn constraints(&self) -> Option<LinearConstraints> {
        let chains = DesignVector::taper_chains(&self.layout);
        LinearConstraints::from_taper_chains(chains, DesignVector::dim(&self.layout)).ok()
    }
}
