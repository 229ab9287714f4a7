//! Configuration parsing, input file loading and result serialization.

mod config;
mod files;
pub mod output;

pub use config::{echo_config, parse_run_config, parse_run_config_with_report, RunConfig};
pub use files::{parse_blade_stations, parse_design_values, parse_materials, parse_polar};

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::aero::OperatingPoint;
use crate::error::{Error, Result};
use crate::model::{AirfoilPolar, BladeDefinition, DesignVector, Environment, LayupLayout, Spacing};
use crate::moo::GaConfig;
use crate::pipeline::BladeSystem;
use crate::structures::{AnalysisConfig, RoleMaterials};

/// A fully loaded run: the blade system plus optimizer settings.
pub struct RunCase {
    pub config: RunConfig,
    pub system: BladeSystem,
    pub ga: GaConfig,
    pub alphas: Vec<f64>,
    /// REF_MASS / REF_AEP when both are set in the config.
    pub fitness_refs: Option<(f64, f64)>,
    /// Initial design from INITX_FILE when READ_INITX is set.
    pub initial_design: Option<DesignVector>,
}

/// Resolve a path relative to the config file's directory.
fn resolve(base: &Path, name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Load every referenced file and assemble the run case.
pub fn load_case(config_path: &Path) -> Result<RunCase> {
    let config = parse_run_config(config_path)?;
    let base = config_path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    build_case(config, &base)
}

/// Assemble a run case from an already parsed configuration.
pub fn build_case(config: RunConfig, base: &Path) -> Result<RunCase> {
    let materials = parse_materials(&resolve(base, &config.mats_file))?;
    let roles = RoleMaterials::from_materials(&materials)?;

    let stations = parse_blade_stations(&resolve(base, &config.blade_file))?;
    if stations.len() != config.num_sec {
        return Err(Error::Config(format!(
            "blade file has {} stations but NUM_SEC is {}",
            stations.len(),
            config.num_sec
        )));
    }
    let spacing = if config.elm_spc.trim() == "0" || config.elm_spc.eq_ignore_ascii_case("equal") {
        Spacing::Equal
    } else {
        Spacing::Cosine
    };
    let blade = BladeDefinition::new(
        config.tip_radius_m,
        config.hub_radius_m,
        stations,
        config.num_blades,
        spacing,
    )?;

    let mut polars: HashMap<String, AirfoilPolar> = HashMap::new();
    for st in &blade.stations {
        if !polars.contains_key(&st.airfoil_id) {
            let path = resolve(base, &config.polar_dir).join(format!("{}.dat", st.airfoil_id));
            let polar = parse_polar(&path, &st.airfoil_id)?;
            polars.insert(st.airfoil_id.clone(), polar);
        }
    }

    let env = Environment {
        fluid_density: config.fluid_density,
        gravity: config.gravity,
        weibull_k: config.weibull_k,
        weibull_c: config.weibull_c,
        u_mean: config.u_mean,
        kinematic_viscosity: config.kin_visc,
        shear_exponent: config.shear_exp,
        v_cut_in: config.v_cut_in,
        v_cut_out: config.v_cut_out,
    };
    env.validate()?;

    let analysis = AnalysisConfig {
        n_elems: config.n_elems,
        n_modes: if config.n_modes == 0 { 3 } else { config.n_modes },
        self_weight: config.self_weight,
        buoyancy: config.buoyancy,
        centrifugal: config.centrifugal,
        disp_cf: config.disp_cf,
        azimuth_deg: config.azimuth_deg,
        load_safety_factor: config.load_safety_factor,
        max_tip_deflection_m: config.max_tip_defl_frac
            * (config.tip_radius_m - config.hub_radius_m),
        freq_gap_frac: config.freq_gap_frac,
        alpha_b: config.alpha_b,
        beta_b: config.beta_b,
        n_arc: 64,
        airfoil_rel_thickness: config.rel_thickness,
    };

    let layout = LayupLayout {
        inb_stn: config.inb_stn,
        tran_stn: config.tran_stn,
        oub_stn: config.oub_stn,
        num_cp: config.num_cp,
        cp_stations: config.cp_index.clone(),
    };
    layout.validate(blade.num_sections())?;

    let op = OperatingPoint {
        wind_speed: 0.0,
        rotor_speed_rpm: config.omega_sweep[0],
        pitch_deg: config.pitch_sweep[0],
        yaw_deg: config.yaw_deg,
    };

    let [v0, v1, dv] = config.speed_sweep;
    let dv = if dv > 0.0 { dv } else { 1.0 };
    let mut speeds = Vec::new();
    let mut v = v0;
    while v <= v1 + 1e-9 {
        speeds.push(v);
        v += dv;
    }

    let system = BladeSystem::new(
        blade, roles, polars, env, config.bem.clone(), analysis, layout, op, speeds,
        config.aep_step,
    )?;

    let ga = GaConfig {
        num_gens: config.num_gens,
        pop_size: config.pop_size,
        elite_count: config.elite_count,
        cross_frac: config.cross_frac,
        ga_tol: config.ga_tol,
        seed: config.seed,
        stall_gens: if config.stall_gens > 0 {
            Some(config.stall_gens)
        } else {
            None
        },
    };
    ga.validate()?;

    let n = config.num_alpha.max(2);
    let alphas: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();

    let fitness_refs = if config.ref_mass > 0.0 && config.ref_aep > 0.0 {
        Some((config.ref_mass, config.ref_aep))
    } else {
        None
    };

    let initial_design = if config.read_initx {
        let vals = parse_design_values(&resolve(base, &config.initx_file))?;
        Some(DesignVector::from_flat(
            &vals,
            system.layout.clone(),
        )?)
    } else {
        None
    };

    Ok(RunCase {
        config,
        system,
        ga,
        alphas,
        fitness_refs,
        initial_design,
    })
}
