//! Run configuration: a single line-oriented key/value deck in the style of
//! the WT-Perf and Co-Blade input files.
//!
//! Line format: `<values> <KeyName>[:] <description>`. Keys are matched
//! case-insensitively (punctuation ignored) against the known vocabulary;
//! lines without a colon and without a recognizable key are treated as
//! section headers and skipped; a line that carries a colon but no known key
//! is an error. Missing keys take the documented defaults.

use std::path::Path;

use crate::aero::BemConfig;
use crate::error::{Error, Result};

/// Complete run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    // input switches
    pub echo: bool,
    pub dimen_inp: bool,
    pub metric: bool,
    // BEM solver switches and tolerances
    pub bem: BemConfig,
    pub sw_tol: f64,
    // turbine data
    pub num_blades: usize,
    /// Rotor tip radius; `RotorRad` and `BLD_LENGTH` both set it.
    pub tip_radius_m: f64,
    pub hub_radius_m: f64,
    pub pre_cone_deg: f64,
    pub shaft_tilt_deg: f64,
    pub yaw_deg: f64,
    pub hub_height_m: f64,
    pub num_seg: usize,
    // aerodynamic data and I/O settings
    pub kin_visc: f64,
    pub shear_exp: f64,
    pub use_cm: bool,
    pub tab_del: bool,
    pub k_fact: bool,
    pub write_bed: bool,
    pub input_tsr: bool,
    pub spd_units: String,
    pub num_cases: usize,
    pub par_row: usize,
    pub par_col: usize,
    pub par_tab: usize,
    pub out_pwr: bool,
    pub out_cp: bool,
    pub out_trq: bool,
    pub out_flp: bool,
    pub out_thr: bool,
    /// First, last, delta blade pitch (deg).
    pub pitch_sweep: [f64; 3],
    /// First, last, delta rotor speed (rpm).
    pub omega_sweep: [f64; 3],
    /// First, last, delta wind speed (m/s) for the power curve.
    pub speed_sweep: [f64; 3],
    // analysis options
    pub self_weight: bool,
    pub buoyancy: bool,
    pub centrifugal: bool,
    pub disp_cf: bool,
    pub n_modes: usize,
    pub n_elems: usize,
    // optimization options
    pub optimize: bool,
    pub opt_method: String,
    pub opt_pitaxis: bool,
    pub pitaxis_val: f64,
    pub inb_stn: usize,
    pub tran_stn: usize,
    pub oub_stn: usize,
    pub num_cp: usize,
    pub read_initx: bool,
    pub initx_file: String,
    pub write_str: bool,
    pub write_f_all: bool,
    pub write_x_all: bool,
    pub write_x_iter: bool,
    pub num_gens: usize,
    pub pop_size: usize,
    pub elite_count: usize,
    pub cross_frac: f64,
    pub ga_tol: f64,
    pub seed: u64,
    /// Stall window in generations; 0 disables stall termination.
    pub stall_gens: usize,
    /// Number of evenly spaced alpha values in the Pareto sweep.
    pub num_alpha: usize,
    // environmental data
    pub fluid_density: f64,
    pub gravity: f64,
    pub u_mean: f64,
    pub weibull_k: f64,
    pub weibull_c: f64,
    pub v_cut_in: f64,
    pub v_cut_out: f64,
    // blade data
    pub num_sec: usize,
    pub azimuth_deg: f64,
    pub max_rot: f64,
    pub min_rot: f64,
    pub interp_af: String,
    pub elm_spc: String,
    pub n_af: usize,
    pub mats_file: String,
    pub blade_file: String,
    pub polar_dir: String,
    pub root_tran_start: f64,
    pub root_tran_start_index: usize,
    pub root_tran_end: f64,
    pub root_tran_end_index: usize,
    pub cp_index: Option<Vec<usize>>,
    // limits and evaluation settings
    /// Tip deflection limit as a fraction of the blade span.
    pub max_tip_defl_frac: f64,
    /// Allowable resonance gap as a fraction of the rotor speed.
    pub freq_gap_frac: f64,
    pub alpha_b: f64,
    pub beta_b: f64,
    pub load_safety_factor: f64,
    /// Reference mass/energy for single-alpha runs; 0 means unset.
    pub ref_mass: f64,
    pub ref_aep: f64,
    pub aep_step: f64,
    pub rel_thickness: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            echo: false,
            dimen_inp: true,
            metric: true,
            bem: BemConfig::default(),
            sw_tol: 1e-6,
            num_blades: 3,
            tip_radius_m: 10.0,
            hub_radius_m: 0.5,
            pre_cone_deg: 0.0,
            shaft_tilt_deg: 0.0,
            yaw_deg: 0.0,
            hub_height_m: 30.0,
            num_seg: 30,
            kin_visc: 1.464e-5,
            shear_exp: 0.0,
            use_cm: false,
            tab_del: true,
            k_fact: true,
            write_bed: false,
            input_tsr: false,
            spd_units: "mps".into(),
            num_cases: 0,
            par_row: 3,
            par_col: 1,
            par_tab: 2,
            out_pwr: true,
            out_cp: true,
            out_trq: true,
            out_flp: true,
            out_thr: true,
            pitch_sweep: [0.0, 0.0, 0.0],
            omega_sweep: [80.0, 80.0, 0.0],
            speed_sweep: [3.0, 25.0, 1.0],
            self_weight: true,
            buoyancy: true,
            centrifugal: true,
            disp_cf: true,
            n_modes: 3,
            n_elems: 50,
            optimize: true,
            opt_method: "GS".into(),
            opt_pitaxis: false,
            pitaxis_val: 0.375,
            inb_stn: 3,
            tran_stn: 8,
            oub_stn: 28,
            num_cp: 4,
            read_initx: false,
            initx_file: "none".into(),
            write_str: false,
            write_f_all: false,
            write_x_all: false,
            write_x_iter: false,
            num_gens: 100,
            pop_size: 100,
            elite_count: 1,
            cross_frac: 0.5,
            ga_tol: 1e-6,
            seed: 42,
            stall_gens: 0,
            num_alpha: 11,
            fluid_density: 1.225,
            gravity: 9.81,
            u_mean: 6.03,
            weibull_k: 1.91,
            weibull_c: 6.8,
            v_cut_in: 3.0,
            v_cut_out: 25.0,
            num_sec: 30,
            azimuth_deg: 180.0,
            max_rot: 100.0,
            min_rot: 10.0,
            interp_af: "cosine".into(),
            elm_spc: "1".into(),
            n_af: 60,
            mats_file: "materials.csv".into(),
            blade_file: "blade.dat".into(),
            polar_dir: "polars".into(),
            root_tran_start: 0.13,
            root_tran_start_index: 3,
            root_tran_end: 0.288,
            root_tran_end_index: 8,
            cp_index: None,
            max_tip_defl_frac: 0.1,
            freq_gap_frac: 0.1,
            alpha_b: 1.0,
            beta_b: 2.0,
            load_safety_factor: 1.35,
            ref_mass: 0.0,
            ref_aep: 0.0,
            aep_step: 0.25,
            rel_thickness: 0.18,
        }
    }
}

/// The key vocabulary: canonical spelling, value arity (`0` = variable) and
/// short echo description.
const KEYS: &[(&str, usize, &str)] = &[
    ("Echo", 1, "Echo input parameters to '<rootname>.ech'?"),
    ("DimenInp", 1, "Turbine parameters are dimensional?"),
    ("Metric", 1, "Turbine parameters are Metric (MKS vs FPS)?"),
    ("NumSect", 1, "Number of circumferential sectors."),
    ("MaxIter", 1, "Maximum number of iterations for induction factor."),
    ("ATol", 1, "Error tolerance for induction iteration."),
    ("SWTol", 1, "Error tolerance for skewed-wake iteration."),
    ("TipLoss", 1, "Use the Prandtl tip-loss model?"),
    ("HubLoss", 1, "Use the Prandtl hub-loss model?"),
    ("Swirl", 1, "Include Swirl effects?"),
    ("SkewWake", 1, "Apply skewed-wake correction?"),
    ("AdvBrake", 1, "Use the advanced brake-state model?"),
    ("IndProp", 1, "Use PROP-PC instead of PROPX induction algorithm?"),
    ("AIDrag", 1, "Use the drag term in the axial induction calculation?"),
    ("TIDrag", 1, "Use the drag term in the tangential induction calculation?"),
    ("NumBlade", 1, "Number of blades."),
    ("RotorRad", 1, "Rotor radius (length)."),
    ("HubRad", 1, "Hub radius (length or div by radius)."),
    ("PreCone", 1, "Precone angle, positive downstream (deg)."),
    ("Tilt", 1, "Shaft tilt (deg)."),
    ("Yaw", 1, "Yaw error (deg)."),
    ("HubHt", 1, "Hub height (length or div by radius)."),
    ("NumSeg", 1, "Number of blade segments (entire rotor radius)."),
    ("KinVisc", 1, "Kinematic air viscosity"),
    ("ShearExp", 1, "Wind-shear exponent (1/7 law = 0.143)."),
    ("UseCm", 1, "Are Cm data included in the airfoil tables?"),
    ("TabDel", 1, "Make output tab-delimited (fixed-width otherwise)."),
    ("KFact", 1, "Output dimensional parameters in K (e.g. kN instead of N)"),
    ("WriteBED", 1, "Write out blade-element data to '<rootname>.bed'?"),
    ("InputTSR", 1, "Input speeds as TSRs?"),
    ("SpdUnits", 1, "Wind-speed units (mps, fps, mph)"),
    ("NumCases", 1, "Number of cases to run. Enter zero for parametric analysis."),
    ("ParRow", 1, "Row parameter (1-rpm, 2-pitch, 3-tsr/speed)."),
    ("ParCol", 1, "Column parameter (1-rpm, 2-pitch, 3-tsr/speed)."),
    ("ParTab", 1, "Table parameter (1-rpm, 2-pitch, 3-tsr/speed)."),
    ("OutPwr", 1, "Request output of rotor power?"),
    ("OutCp", 1, "Request output of Cp?"),
    ("OutTrq", 1, "Request output of shaft torque?"),
    ("OutFlp", 1, "Request output of flap-bending moment?"),
    ("OutThr", 1, "Request output of rotor thrust?"),
    ("PitSt, PitEnd, PitDel", 3, "First, last, delta blade pitch (deg)."),
    ("OmgSt, OmgEnd, OmgDel", 3, "First, last, delta rotor speed (rpm)."),
    ("SpdSt, SpdEnd, SpdDel", 3, "First, last, delta wind speed (m/s)."),
    ("SELF_WEIGHT", 1, "Include self-weight as a body force?"),
    ("BUOYANCY", 1, "Include buoyancy as a body force?"),
    ("CENTRIF", 1, "Include centrifugal force as a body force?"),
    ("DISP_CF", 1, "Apply correction factors to the beam displacements?"),
    ("N_MODES", 1, "Number of modes to be computed"),
    ("N_ELEMS", 1, "Number of blade finite elements to be used in the modal analysis"),
    ("OPTIMIZE", 1, "Perform optimization of composite layup?"),
    ("OPT_METHOD", 1, "Optimization algorithm for the optimization of composite layup"),
    ("OPT_PITAXIS", 1, "Optimize the pitch axis?"),
    ("PITAXIS_VAL", 1, "Pitch axis value outboard of max chord"),
    ("INB_STN", 1, "Inboard station where the panels, spar caps and shear webs begin"),
    ("TRAN_STN", 1, "Station where the root transition ends"),
    ("OUB_STN", 1, "Outboard station where the panels, spar caps and shear webs end"),
    ("NUM_CP", 1, "Number of control points between INB_STN and OUB_STN"),
    ("READ_INITX", 1, "Read the initial values for the design variables from INITX_FILE?"),
    ("INITX_FILE", 1, "Input file for the initial values of the design variables."),
    ("WRITE_STR", 1, "Write structural input files at each function evaluation?"),
    ("WRITE_F_ALL", 1, "Write the fitness value and penalty factors at each function evaluation?"),
    ("WRITE_X_ALL", 1, "Write the design variables at each function evaluation?"),
    ("WRITE_X_ITER", 1, "Write the design variables at each iteration?"),
    ("NumGens", 1, "Maximum number of generations for GA iterations"),
    ("PopSize", 1, "Number of individuals per generation"),
    ("EliteCount", 1, "Number of elite individuals per generation"),
    ("CrossFrc", 1, "Fraction of individuals created by crossover"),
    ("GATol", 1, "Error tolerance for the GA fitness value"),
    ("Seed", 1, "Random seed for the GA"),
    ("StallGens", 1, "Stall window in generations (0 disables)"),
    ("NumAlpha", 1, "Number of evenly spaced alpha values for the Pareto sweep"),
    ("FLUID_DEN", 1, "Fluid density (kg/m^3)"),
    ("GRAV", 1, "Gravitational acceleration (m/s^2)"),
    ("U_mean", 1, "Long-term mean flow (m/s)"),
    ("Weib_k", 1, "Shape factor"),
    ("Weib_c", 1, "Scale factor"),
    ("VCutIn", 1, "Cut-in wind speed (m/s)"),
    ("VCutOut", 1, "Cut-out wind speed (m/s)"),
    ("NUM_SEC", 1, "Number of blade cross sections"),
    ("BLD_LENGTH", 1, "Blade length (m)"),
    ("SHAFT_TILT", 1, "Shaft tilt angle (deg)"),
    ("AZIM", 1, "Azimuth angle (deg)"),
    ("MAX_ROT", 1, "Maximum rotational speed (rpm)"),
    ("MIN_ROT", 1, "Minimum rotational speed (rpm)"),
    ("INTERP_AF", 1, "Interpolate airfoil coordinates? (none, cosine, equal)"),
    ("ElmSpc", 1, "Blade-element radial spacing (0 equal, 1 cosine)"),
    ("N_AF", 1, "Number of points in interpolated airfoil coordinates (ignored)"),
    ("MATS_FILE", 1, "Input file for material properties"),
    ("BLD_FILE", 1, "Input file for blade geometry"),
    ("AF_PATH", 1, "Directory containing airfoil polar files"),
    ("RootTranSt", 1, "Start of root transition region"),
    ("RootTranSt_index", 1, "Index of start of root transition region"),
    ("RootTranEnd", 1, "End of root transition region"),
    ("RootTranEnd_index", 1, "Index of end of root transition region"),
    ("CP_Index", 0, "Index of control points"),
    ("MAX_TIP_DEFL", 1, "Tip deflection limit as a fraction of blade span"),
    ("FREQ_GAP", 1, "Allowable resonance gap as a fraction of rotor speed"),
    ("ALPHA_B", 1, "Buckling interaction exponent on compression"),
    ("BETA_B", 1, "Buckling interaction exponent on shear"),
    ("LOAD_SF", 1, "Partial safety factor on the design aero loads"),
    ("REF_MASS", 1, "Reference mass for the scalarized fitness (0 = from alpha 0 run)"),
    ("REF_AEP", 1, "Reference energy for the scalarized fitness (0 = from alpha 0 run)"),
    ("AEP_STEP", 1, "AEP integration step (m/s)"),
    ("REL_THICK", 1, "Airfoil relative thickness outboard of the root transition"),
];

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

fn parse_bool(tok: &str) -> Option<bool> {
    match tok.to_ascii_lowercase().as_str() {
        "true" | "t" => Some(true),
        "false" | "f" => Some(false),
        _ => None,
    }
}

fn strip_quotes(tok: &str) -> String {
    tok.trim_matches(|c| c == '"' || c == '\'').to_string()
}

/// Parse a run configuration file.
pub fn parse_run_config(path: &Path) -> Result<RunConfig> {
    parse_run_config_with_report(path).map(|(cfg, _)| cfg)
}

/// Parse a run configuration and report which keys fell back to defaults.
pub fn parse_run_config_with_report(path: &Path) -> Result<(RunConfig, Vec<String>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg = RunConfig::default();
    let mut seen: Vec<&'static str> = Vec::new();

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('!') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();

        // locate the earliest, longest key window
        let mut found: Option<(usize, usize, usize)> = None; // (tok_start, tok_end, key_idx)
        'scan: for start in 0..tokens.len() {
            let mut acc = String::new();
            for end in start..tokens.len().min(start + 4) {
                acc.push_str(&normalize(tokens[end]));
                for (ki, (key, _, _)) in KEYS.iter().enumerate() {
                    if normalize(key) == acc {
                        found = Some((start, end + 1, ki));
                        // keep extending for a longer match from this start
                    }
                }
                let _ = end;
            }
            if found.is_some() {
                break 'scan;
            }
        }

        let Some((vstart, _vend, ki)) = found else {
            if line.contains(':') {
                return Err(Error::ConfigLine {
                    path: path.display().to_string(),
                    line: line_no,
                    msg: format!("unknown key in line: '{raw}'"),
                });
            }
            continue; // section header or prose
        };
        let (key, arity, _) = KEYS[ki];
        let values: Vec<String> = tokens[..vstart].iter().map(|t| strip_quotes(t)).collect();
        if arity != 0 && values.len() != arity {
            return Err(Error::ConfigLine {
                path: path.display().to_string(),
                line: line_no,
                msg: format!(
                    "key '{key}' expects {arity} value(s), found {}",
                    values.len()
                ),
            });
        }
        apply_key(&mut cfg, key, &values).map_err(|e| Error::ConfigLine {
            path: path.display().to_string(),
            line: line_no,
            msg: e.to_string(),
        })?;
        seen.push(key);
    }

    let defaulted: Vec<String> = KEYS
        .iter()
        .map(|(k, _, _)| *k)
        .filter(|k| !seen.contains(k))
        .map(|k| k.to_string())
        .collect();
    Ok((cfg, defaulted))
}

fn apply_key(cfg: &mut RunConfig, key: &str, vals: &[String]) -> Result<()> {
    let b = |i: usize| -> Result<bool> {
        parse_bool(&vals[i])
            .ok_or_else(|| Error::Config(format!("expected a boolean, got '{}'", vals[i])))
    };
    let f = |i: usize| -> Result<f64> {
        vals[i]
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("expected a number, got '{}'", vals[i])))
    };
    let u = |i: usize| -> Result<usize> {
        let x = f(i)?;
        if x < 0.0 || x.fract() != 0.0 {
            return Err(Error::Config(format!(
                "expected a non-negative integer, got '{}'",
                vals[i]
            )));
        }
        Ok(x as usize)
    };
    let f3 = || -> Result<[f64; 3]> { Ok([f(0)?, f(1)?, f(2)?]) };

    match key {
        "Echo" => cfg.echo = b(0)?,
        "DimenInp" => cfg.dimen_inp = b(0)?,
        "Metric" => cfg.metric = b(0)?,
        "NumSect" => cfg.bem.num_sectors = u(0)?,
        "MaxIter" => cfg.bem.max_iter = u(0)?,
        "ATol" => cfg.bem.a_tol = f(0)?,
        "SWTol" => cfg.sw_tol = f(0)?,
        "TipLoss" => cfg.bem.tip_loss = b(0)?,
        "HubLoss" => cfg.bem.hub_loss = b(0)?,
        "Swirl" => cfg.bem.swirl = b(0)?,
        "SkewWake" => cfg.bem.skewed_wake = b(0)?,
        "AdvBrake" => cfg.bem.adv_brake = b(0)?,
        "IndProp" => cfg.bem.ind_prop = b(0)?,
        "AIDrag" => cfg.bem.ai_drag = b(0)?,
        "TIDrag" => cfg.bem.ti_drag = b(0)?,
        "NumBlade" => cfg.num_blades = u(0)?,
        "RotorRad" | "BLD_LENGTH" => cfg.tip_radius_m = f(0)?,
        "HubRad" => cfg.hub_radius_m = f(0)?,
        "PreCone" | "PRE_CONE" => cfg.pre_cone_deg = f(0)?,
        "Tilt" | "SHAFT_TILT" => cfg.shaft_tilt_deg = f(0)?,
        "Yaw" => cfg.yaw_deg = f(0)?,
        "HubHt" => cfg.hub_height_m = f(0)?,
        "NumSeg" => cfg.num_seg = u(0)?,
        "KinVisc" => cfg.kin_visc = f(0)?,
        "ShearExp" => cfg.shear_exp = f(0)?,
        "UseCm" => cfg.use_cm = b(0)?,
        "TabDel" => cfg.tab_del = b(0)?,
        "KFact" => cfg.k_fact = b(0)?,
        "WriteBED" => cfg.write_bed = b(0)?,
        "InputTSR" => cfg.input_tsr = b(0)?,
        "SpdUnits" => cfg.spd_units = vals[0].clone(),
        "NumCases" => cfg.num_cases = u(0)?,
        "ParRow" => cfg.par_row = u(0)?,
        "ParCol" => cfg.par_col = u(0)?,
        "ParTab" => cfg.par_tab = u(0)?,
        "OutPwr" => cfg.out_pwr = b(0)?,
        "OutCp" => cfg.out_cp = b(0)?,
        "OutTrq" => cfg.out_trq = b(0)?,
        "OutFlp" => cfg.out_flp = b(0)?,
        "OutThr" => cfg.out_thr = b(0)?,
        "PitSt, PitEnd, PitDel" => cfg.pitch_sweep = f3()?,
        "OmgSt, OmgEnd, OmgDel" => cfg.omega_sweep = f3()?,
        "SpdSt, SpdEnd, SpdDel" => cfg.speed_sweep = f3()?,
        "SELF_WEIGHT" => cfg.self_weight = b(0)?,
        "BUOYANCY" => cfg.buoyancy = b(0)?,
        "CENTRIF" => cfg.centrifugal = b(0)?,
        "DISP_CF" => cfg.disp_cf = b(0)?,
        "N_MODES" => cfg.n_modes = u(0)?,
        "N_ELEMS" => cfg.n_elems = u(0)?,
        "OPTIMIZE" => cfg.optimize = b(0)?,
        "OPT_METHOD" => cfg.opt_method = vals[0].clone(),
        "OPT_PITAXIS" => cfg.opt_pitaxis = b(0)?,
        "PITAXIS_VAL" => cfg.pitaxis_val = f(0)?,
        "INB_STN" => cfg.inb_stn = u(0)?,
        "TRAN_STN" => cfg.tran_stn = u(0)?,
        "OUB_STN" => cfg.oub_stn = u(0)?,
        "NUM_CP" => cfg.num_cp = u(0)?,
        "READ_INITX" => cfg.read_initx = b(0)?,
        "INITX_FILE" => cfg.initx_file = vals[0].clone(),
        "WRITE_STR" => cfg.write_str = b(0)?,
        "WRITE_F_ALL" => cfg.write_f_all = b(0)?,
        "WRITE_X_ALL" => cfg.write_x_all = b(0)?,
        "WRITE_X_ITER" => cfg.write_x_iter = b(0)?,
        "NumGens" => cfg.num_gens = u(0)?,
        "PopSize" => cfg.pop_size = u(0)?,
        "EliteCount" => cfg.elite_count = u(0)?,
        "CrossFrc" => cfg.cross_frac = f(0)?,
        "GATol" => cfg.ga_tol = f(0)?,
        "Seed" => cfg.seed = u(0)? as u64,
        "StallGens" => cfg.stall_gens = u(0)?,
        "NumAlpha" => cfg.num_alpha = u(0)?,
        "FLUID_DEN" => cfg.fluid_density = f(0)?,
        "GRAV" => cfg.gravity = f(0)?,
        "U_mean" => cfg.u_mean = f(0)?,
        "Weib_k" => cfg.weibull_k = f(0)?,
        "Weib_c" => cfg.weibull_c = f(0)?,
        "VCutIn" => cfg.v_cut_in = f(0)?,
        "VCutOut" => cfg.v_cut_out = f(0)?,
        "NUM_SEC" => cfg.num_sec = u(0)?,
        "AZIM" => cfg.azimuth_deg = f(0)?,
        "MAX_ROT" => cfg.max_rot = f(0)?,
        "MIN_ROT" => cfg.min_rot = f(0)?,
        "INTERP_AF" => cfg.interp_af = vals[0].clone(),
        "ElmSpc" => cfg.elm_spc = vals[0].clone(),
        "N_AF" => cfg.n_af = u(0)?,
        "MATS_FILE" => cfg.mats_file = vals[0].clone(),
        "BLD_FILE" => cfg.blade_file = vals[0].clone(),
        "AF_PATH" => cfg.polar_dir = vals[0].clone(),
        "RootTranSt" => cfg.root_tran_start = f(0)?,
        "RootTranSt_index" => cfg.root_tran_start_index = u(0)?,
        "RootTranEnd" => cfg.root_tran_end = f(0)?,
        "RootTranEnd_index" => cfg.root_tran_end_index = u(0)?,
        "CP_Index" => {
            let mut list = Vec::new();
            for v in vals {
                let n: f64 = v
                    .parse()
                    .map_err(|_| Error::Config(format!("CP_Index expects integers, got '{v}'")))?;
                if n < 1.0 || n.fract() != 0.0 {
                    return Err(Error::Config(format!(
                        "CP_Index expects positive station indices, got '{v}'"
                    )));
                }
                list.push(n as usize);
            }
            if list.is_empty() {
                return Err(Error::Config("CP_Index needs at least one index".into()));
            }
            cfg.cp_index = Some(list);
        }
        "MAX_TIP_DEFL" => cfg.max_tip_defl_frac = f(0)?,
        "FREQ_GAP" => cfg.freq_gap_frac = f(0)?,
        "ALPHA_B" => cfg.alpha_b = f(0)?,
        "BETA_B" => cfg.beta_b = f(0)?,
        "LOAD_SF" => cfg.load_safety_factor = f(0)?,
        "REF_MASS" => cfg.ref_mass = f(0)?,
        "REF_AEP" => cfg.ref_aep = f(0)?,
        "AEP_STEP" => cfg.aep_step = f(0)?,
        "REL_THICK" => cfg.rel_thickness = f(0)?,
        other => {
            return Err(Error::Config(format!("unhandled key '{other}'")));
        }
    }
    Ok(())
}

fn fmt_bool(v: bool) -> &'static str {
    if v {
        "True"
    } else {
        "False"
    }
}

/// Serialize the configuration in the same line format it parses.
pub fn echo_config(cfg: &RunConfig, defaulted: &[String]) -> String {
    let mut out = String::new();
    out.push_str("Echoed run configuration\n");
    for (key, _, desc) in KEYS {
        if *key == "CP_Index" && cfg.cp_index.is_none() {
            continue;
        }
        let value = key_value_string(cfg, key);
        let mark = if defaulted.iter().any(|d| d == key) {
            " (default)"
        } else {
            ""
        };
        out.push_str(&format!("{value}  {key}:  {desc}{mark}\n"));
    }
    out
}

fn key_value_string(cfg: &RunConfig, key: &str) -> String {
    match key {
        "Echo" => fmt_bool(cfg.echo).into(),
        "DimenInp" => fmt_bool(cfg.dimen_inp).into(),
        "Metric" => fmt_bool(cfg.metric).into(),
        "NumSect" => cfg.bem.num_sectors.to_string(),
        "MaxIter" => cfg.bem.max_iter.to_string(),
        "ATol" => cfg.bem.a_tol.to_string(),
        "SWTol" => cfg.sw_tol.to_string(),
        "TipLoss" => fmt_bool(cfg.bem.tip_loss).into(),
        "HubLoss" => fmt_bool(cfg.bem.hub_loss).into(),
        "Swirl" => fmt_bool(cfg.bem.swirl).into(),
        "SkewWake" => fmt_bool(cfg.bem.skewed_wake).into(),
        "AdvBrake" => fmt_bool(cfg.bem.adv_brake).into(),
        "IndProp" => fmt_bool(cfg.bem.ind_prop).into(),
        "AIDrag" => fmt_bool(cfg.bem.ai_drag).into(),
        "TIDrag" => fmt_bool(cfg.bem.ti_drag).into(),
        "NumBlade" => cfg.num_blades.to_string(),
        "RotorRad" | "BLD_LENGTH" => cfg.tip_radius_m.to_string(),
        "HubRad" => cfg.hub_radius_m.to_string(),
        "PreCone" => cfg.pre_cone_deg.to_string(),
        "Tilt" | "SHAFT_TILT" => cfg.shaft_tilt_deg.to_string(),
        "Yaw" => cfg.yaw_deg.to_string(),
        "HubHt" => cfg.hub_height_m.to_string(),
        "NumSeg" => cfg.num_seg.to_string(),
        "KinVisc" => cfg.kin_visc.to_string(),
        "ShearExp" => cfg.shear_exp.to_string(),
        "UseCm" => fmt_bool(cfg.use_cm).into(),
        "TabDel" => fmt_bool(cfg.tab_del).into(),
        "KFact" => fmt_bool(cfg.k_fact).into(),
        "WriteBED" => fmt_bool(cfg.write_bed).into(),
        "InputTSR" => fmt_bool(cfg.input_tsr).into(),
        "SpdUnits" => cfg.spd_units.clone(),
        "NumCases" => cfg.num_cases.to_string(),
        "ParRow" => cfg.par_row.to_string(),
        "ParCol" => cfg.par_col.to_string(),
        "ParTab" => cfg.par_tab.to_string(),
        "OutPwr" => fmt_bool(cfg.out_pwr).into(),
        "OutCp" => fmt_bool(cfg.out_cp).into(),
        "OutTrq" => fmt_bool(cfg.out_trq).into(),
        "OutFlp" => fmt_bool(cfg.out_flp).into(),
        "OutThr" => fmt_bool(cfg.out_thr).into(),
        "PitSt, PitEnd, PitDel" => fmt3(cfg.pitch_sweep),
        "OmgSt, OmgEnd, OmgDel" => fmt3(cfg.omega_sweep),
        "SpdSt, SpdEnd, SpdDel" => fmt3(cfg.speed_sweep),
        "SELF_WEIGHT" => fmt_bool(cfg.self_weight).into(),
        "BUOYANCY" => fmt_bool(cfg.buoyancy).into(),
        "CENTRIF" => fmt_bool(cfg.centrifugal).into(),
        "DISP_CF" => fmt_bool(cfg.disp_cf).into(),
        "N_MODES" => cfg.n_modes.to_string(),
        "N_ELEMS" => cfg.n_elems.to_string(),
        "OPTIMIZE" => fmt_bool(cfg.optimize).into(),
        "OPT_METHOD" => cfg.opt_method.clone(),
        "OPT_PITAXIS" => fmt_bool(cfg.opt_pitaxis).into(),
        "PITAXIS_VAL" => cfg.pitaxis_val.to_string(),
        "INB_STN" => cfg.inb_stn.to_string(),
        "TRAN_STN" => cfg.tran_stn.to_string(),
        "OUB_STN" => cfg.oub_stn.to_string(),
        "NUM_CP" => cfg.num_cp.to_string(),
        "READ_INITX" => fmt_bool(cfg.read_initx).into(),
        "INITX_FILE" => cfg.initx_file.clone(),
        "WRITE_STR" => fmt_bool(cfg.write_str).into(),
        "WRITE_F_ALL" => fmt_bool(cfg.write_f_all).into(),
        "WRITE_X_ALL" => fmt_bool(cfg.write_x_all).into(),
        "WRITE_X_ITER" => fmt_bool(cfg.write_x_iter).into(),
        "NumGens" => cfg.num_gens.to_string(),
        "PopSize" => cfg.pop_size.to_string(),
        "EliteCount" => cfg.elite_count.to_string(),
        "CrossFrc" => cfg.cross_frac.to_string(),
        "GATol" => cfg.ga_tol.to_string(),
        "Seed" => cfg.seed.to_string(),
        "StallGens" => cfg.stall_gens.to_string(),
        "NumAlpha" => cfg.num_alpha.to_string(),
        "FLUID_DEN" => cfg.fluid_density.to_string(),
        "GRAV" => cfg.gravity.to_string(),
        "U_mean" => cfg.u_mean.to_string(),
        "Weib_k" => cfg.weibull_k.to_string(),
        "Weib_c" => cfg.weibull_c.to_string(),
        "VCutIn" => cfg.v_cut_in.to_string(),
        "VCutOut" => cfg.v_cut_out.to_string(),
        "NUM_SEC" => cfg.num_sec.to_string(),
        "AZIM" => cfg.azimuth_deg.to_string(),
        "MAX_ROT" => cfg.max_rot.to_string(),
        "MIN_ROT" => cfg.min_rot.to_string(),
        "INTERP_AF" => cfg.interp_af.clone(),
        "ElmSpc" => cfg.elm_spc.clone(),
        "N_AF" => cfg.n_af.to_string(),
        "MATS_FILE" => cfg.mats_file.clone(),
        "BLD_FILE" => cfg.blade_file.clone(),
        "AF_PATH" => cfg.polar_dir.clone(),
        "RootTranSt" => cfg.root_tran_start.to_string(),
        "RootTranSt_index" => cfg.root_tran_start_index.to_string(),
        "RootTranEnd" => cfg.root_tran_end.to_string(),
        "RootTranEnd_index" => cfg.root_tran_end_index.to_string(),
        "CP_Index" => cfg
            .cp_index
            .as_ref()
            .map(|l| {
                l.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default(),
        "MAX_TIP_DEFL" => cfg.max_tip_defl_frac.to_string(),
        "FREQ_GAP" => cfg.freq_gap_frac.to_string(),
        "ALPHA_B" => cfg.alpha_b.to_string(),
        "BETA_B" => cfg.beta_b.to_string(),
        "LOAD_SF" => cfg.load_safety_factor.to_string(),
        "REF_MASS" => cfg.ref_mass.to_string(),
        "REF_AEP" => cfg.ref_aep.to_string(),
        "AEP_STEP" => cfg.aep_step.to_string(),
        "REL_THICK" => cfg.rel_thickness.to_string(),
        _ => String::new(),
    }
}

fn fmt3(v: [f64; 3]) -> String {
    format!("{} {} {}", v[0], v[1], v[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir();
        let path = dir.join(format!(
            "bladeopt_cfg_{}_{}.inp",
            std::process::id(),
            content.len()
        ));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    #[test]
    fn parses_table_style_lines() {
        let path = write_temp(
            "Model configuration\n\
             100  NumGens  Maximum number of generations\n\
             1.00E-06  GATol  Error tolerance for the GA fitness value\n\
             80 80 0.00  OmgSt, OmgEnd, OmgDel:  First, last, delta rotor speed (rpm).\n\
             True  TipLoss:  Use the Prandtl tip-loss model?\n\
             f  WRITE_F_ALL:  Write the fitness value?\n",
        );
        let cfg = parse_run_config(&path).unwrap();
        assert_eq!(cfg.num_gens, 100);
        assert_eq!(cfg.ga_tol, 1e-6);
        assert_eq!(cfg.omega_sweep, [80.0, 80.0, 0.0]);
        assert!(cfg.bem.tip_loss);
        assert!(!cfg.write_f_all);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn unknown_key_with_colon_is_an_error_with_line_number() {
        let path = write_temp("True  TipLoss:  ok\n42  NoSuchKey:  nonsense\n");
        let err = parse_run_config(&path).unwrap_err();
        match err {
            Error::ConfigLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn section_headers_are_ignored() {
        let path = write_temp("WT-Perf settings\nEnvironmental data\n1.91  Weib_k:  Shape factor\n");
        let cfg = parse_run_config(&path).unwrap();
        assert_eq!(cfg.weibull_k, 1.91);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn keys_match_case_insensitively() {
        let path = write_temp("0.4  crossfrc:  fraction\n3  numblade:  blades\n");
        let cfg = parse_run_config(&path).unwrap();
        assert_eq!(cfg.cross_frac, 0.4);
        assert_eq!(cfg.num_blades, 3);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn wrong_arity_is_an_error() {
        let path = write_temp("80 80  OmgSt, OmgEnd, OmgDel:  missing delta\n");
        assert!(parse_run_config(&path).is_err());
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn type_mismatch_is_an_error() {
        let path = write_temp("definitely  NumGens:  not a number\n");
        assert!(parse_run_config(&path).is_err());
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn cp_index_parses_a_list() {
        let path = write_temp("3 9 19 26 30  CP_Index:  Index of control points\n");
        let cfg = parse_run_config(&path).unwrap();
        assert_eq!(cfg.cp_index, Some(vec![3, 9, 19, 26, 30]));
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn echo_reparses_to_an_equal_config() {
        let path = write_temp(
            "0.42  CrossFrc:  fraction\n\
             7  Seed:  rng\n\
             2 22 0.5  SpdSt, SpdEnd, SpdDel:  speeds\n\
             0.0875  MAX_TIP_DEFL:  limit\n\
             3 9 19 26  CP_Index:  control points\n",
        );
        let (cfg, defaulted) = parse_run_config_with_report(&path).unwrap();
        let echo = echo_config(&cfg, &defaulted);
        let echo_path = write_temp(&echo);
        let reparsed = parse_run_config(&echo_path).unwrap();
        assert_eq!(cfg, reparsed);
        std::fs::remove_file(path).ok();
        std::fs::remove_file(echo_path).ok();
    }
}
