//! Structural evaluation of the blade: laminate homogenization per panel,
//! thin-walled section properties, cantilever statics, stress recovery,
//! panel buckling and modal frequencies.

mod beam;
mod buckling;
mod clt;
mod section;

pub use beam::{cumulative_integral, internal_forces, solve_bending, BendingSolution};
pub use buckling::{critical_stresses, panel_buckling};
pub use clt::{laminate_effective_props, lamina_stress_recovery, EffectiveProps, LaminaStress};
pub use modal::{bending_frequencies, fe_total_mass, modal_frequencies, ModalResult, ModeFamily};
pub use section::{
    section_properties, section_stresses, segment_sigma_zz, Section, SectionAnalysis,
    SectionLoads, Segment, Web,
};

mod modal;

use crate::error::{Error, Result};
use crate::model::{BladeDefinition, Environment, LayupSchedule, Material, StationLayup};

/// Structural region of a panel within the cross section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Lep,
    SparCap,
    Tep,
    Web,
    Root,
}

/// One lamina of a panel laminate.
#[derive(Debug, Clone)]
pub struct Lamina {
    pub material: Material,
    pub thickness: f64,
    pub fiber_angle_deg: f64,
}

/// A flat composite laminate covering part of the section periphery or a
/// shear web.
#[derive(Debug, Clone)]
pub struct Panel {
    /// Arc-length extent along the periphery (or web height).
    pub extent_m: f64,
    /// Ordered laminate stack, outer surface first.
    pub laminas: Vec<Lamina>,
    pub region: Region,
}

/// Stiffness, inertia and reference centers of one cross section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionProperties {
    pub ea: f64,
    pub ei_flap: f64,
    pub ei_edge: f64,
    pub gj: f64,
    pub mass_per_length: f64,
    /// Offsets from the pitch axis (chordwise, flapwise).
    pub tension_center: [f64; 2],
    pub shear_center: [f64; 2],
    pub mass_center: [f64; 2],
    /// Area enclosed by the section midline (for buoyancy).
    pub enclosed_area: f64,
}

/// Deflection and effective stress state of the blade beam.
#[derive(Debug, Clone)]
pub struct BeamState {
    pub station_radii: Vec<f64>,
    pub flap_deflection: Vec<f64>,
    pub edge_deflection: Vec<f64>,
    pub elastic_twist_rad: Vec<f64>,
    /// Second-order spanwise foreshortening from bending slopes.
    pub foreshortening_m: Vec<f64>,
    /// Per-station axial stress extremes over the periphery (Pa).
    pub sigma_zz_max: Vec<f64>,
    pub sigma_zz_min: Vec<f64>,
    /// Per-station peak shear stress magnitude (Pa).
    pub tau_zs_max: Vec<f64>,
    /// Resultant tip deflection (m).
    pub tip_deflection: f64,
}

/// Material roles referenced by the default blade panel topology.
#[derive(Debug, Clone)]
pub struct RoleMaterials {
    pub blade_root: Material,
    pub blade_shell: Material,
    pub spar_uni: Material,
    pub spar_core: Material,
    pub lep_core: Material,
    pub tep_core: Material,
    pub web_shell: Material,
    pub web_core: Material,
}

impl RoleMaterials {
    /// Resolve the eight panel roles by material name (case-insensitive,
    /// parentheses stripped).
    pub fn from_materials(materials: &[Material]) -> Result<Self> {
        let find = |role: &str| -> Result<Material> {
            materials
                .iter()
                .find(|m| {
                    m.name
                        .trim()
                        .trim_matches(|c| c == '(' || c == ')')
                        .eq_ignore_ascii_case(role)
                })
                .cloned()
                .ok_or_else(|| {
                    Error::Config(format!(
                        "materials file must define '{role}' for the default panel topology"
                    ))
                })
        };
        Ok(Self {
            blade_root: find("blade-root")?,
            blade_shell: find("blade-shell")?,
            spar_uni: find("spar-uni")?,
            spar_core: find("spar-core")?,
            lep_core: find("LEP-core")?,
            tep_core: find("TEP-core")?,
            web_shell: find("web-shell")?,
            web_core: find("web-core")?,
        })
    }
}

/// Analysis switches and limits for the structural evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub n_elems: usize,
    pub n_modes: usize,
    pub self_weight: bool,
    pub buoyancy: bool,
    pub centrifugal: bool,
    /// Displacement correction factors: accepted for input compatibility and
    /// applied as identity.
    pub disp_cf: bool,
    /// Azimuth of the blade for gravity loading, 0 = up, 180 = down (deg).
    pub azimuth_deg: f64,
    /// Partial safety factor applied by the caller to the design loads.
    pub load_safety_factor: f64,
    /// Tip deflection limit (m).
    pub max_tip_deflection_m: f64,
    /// Allowable resonance gap as a fraction of the rotor speed.
    pub freq_gap_frac: f64,
    /// Buckling interaction exponents.
    pub alpha_b: f64,
    pub beta_b: f64,
    /// Periphery discretization per station.
    pub n_arc: usize,
    /// Airfoil relative thickness outboard of the root transition.
    pub airfoil_rel_thickness: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            n_elems: 50,
            n_modes: 3,
            self_weight: true,
            buoyancy: true,
            centrifugal: true,
            disp_cf: true,
            azimuth_deg: 180.0,
            load_safety_factor: 1.35,
            max_tip_deflection_m: 1.0,
            freq_gap_frac: 0.1,
            alpha_b: 1.0,
            beta_b: 2.0,
            n_arc: 64,
            airfoil_rel_thickness: 0.18,
        }
    }
}

/// Per-station summary row of the structural report.
#[derive(Debug, Clone, Copy)]
pub struct StationRow {
    pub radius_m: f64,
    pub mass_per_m: f64,
    pub ea: f64,
    pub ei_flap: f64,
    pub ei_edge: f64,
    pub gj: f64,
    pub sigma_zz_max: f64,
    pub tau_zs_max: f64,
    /// Chordwise shear/mass center offsets from the pitch axis (m).
    pub shear_center_x: f64,
    pub mass_center_x: f64,
}

/// Full structural evaluation of one design.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub mass_kg: f64,
    pub beam: BeamState,
    pub rows: Vec<StationRow>,
    /// Lamina principal-axis stress extremes over the whole blade (Pa).
    pub sigma11_max: f64,
    pub sigma11_min: f64,
    pub sigma22_max: f64,
    pub sigma22_min: f64,
    pub tau12_max_abs: f64,
    /// Worst lamina utilizations (stress over that lamina's own strength).
    pub util_sigma11_t: f64,
    pub util_sigma11_c: f64,
    pub util_sigma22_t: f64,
    pub util_sigma22_c: f64,
    pub util_tau12: f64,
    /// Worst panel buckling interaction ratio.
    pub max_buckling_ratio: f64,
    pub modal: ModalResult,
}

/// Blade mass from the radial distribution of mass per length (trapezoid).
pub fn blade_mass(mass_per_length: &[f64], radii: &[f64]) -> f64 {
    super::aero::trapezoid(radii, mass_per_length)
}

/// Relative section thickness profile: circular at the root, blending to the
/// airfoil value across the root transition.
pub fn rel_thickness_profile(
    schedule: &LayupSchedule,
    radius: f64,
    airfoil_rel_thickness: f64,
) -> f64 {
    let (r_inb, r_tran) = (schedule.r_inb(), schedule.r_tran());
    if radius <= r_inb {
        1.0
    } else if radius >= r_tran {
        airfoil_rel_thickness
    } else {
        let f = (radius - r_inb) / (r_tran - r_inb);
        1.0 + f * (airfoil_rel_thickness - 1.0)
    }
}

/// Build the discretized cross section of one station from its laminate
/// schedule: an elliptic periphery split into leading-edge panel, spar caps
/// and trailing-edge panel, with shear webs at the spar-cap edges.
pub fn build_station_section(
    chord: f64,
    pitch_axis_fraction: f64,
    rel_thickness: f64,
    layup: &StationLayup,
    mats: &RoleMaterials,
    n_arc: usize,
) -> Result<Section> {
    if chord <= 0.0 || rel_thickness <= 0.0 {
        return Err(Error::Structural("degenerate section geometry".into()));
    }
    let a = 0.5 * chord;
    let b = 0.5 * chord * rel_thickness;
    let x_pa = pitch_axis_fraction * chord;

    let lam = |m: &Material, t: f64| Lamina {
        material: m.clone(),
        thickness: t,
        fiber_angle_deg: 0.0,
    };
    let stack = |laminas: Vec<Lamina>| -> Vec<Lamina> {
        laminas.into_iter().filter(|l| l.thickness > 0.0).collect()
    };

    let skin = stack(vec![lam(&mats.blade_shell, layup.t_skin)]);
    let root = stack(vec![lam(&mats.blade_root, layup.t_root)]);

    let mut lep = skin.clone();
    lep.extend(root.iter().cloned());
    lep.extend(stack(vec![lam(&mats.lep_core, layup.t_lep_core)]));
    lep.extend(skin.iter().cloned());

    let mut cap = skin.clone();
    cap.extend(root.iter().cloned());
    cap.extend(stack(vec![
        lam(&mats.spar_uni, layup.t_cap_uni),
        lam(&mats.spar_core, layup.t_cap_core),
    ]));
    cap.extend(skin.iter().cloned());

    let mut tep = skin.clone();
    tep.extend(root.iter().cloned());
    tep.extend(stack(vec![lam(&mats.tep_core, layup.t_tep_core)]));
    tep.extend(skin.iter().cloned());

    let web = stack(vec![
        lam(&mats.web_shell, layup.t_web_skin),
        lam(&mats.web_core, layup.t_web_core),
        lam(&mats.web_shell, layup.t_web_skin),
    ]);

    let with_webs = layup.has_panels && layup.w_cap_frac > 0.0 && !web.is_empty();
    let (x_w1, x_w2) = if with_webs {
        let half = 0.5 * layup.w_cap_frac * chord;
        let x1 = (x_pa - half).clamp(0.05 * chord, 0.90 * chord);
        let x2 = (x_pa + half).clamp(x1 + 0.01 * chord, 0.95 * chord);
        (x1, x2)
    } else {
        (f64::NAN, f64::NAN)
    };

    // periphery points in psi order (clockwise chain LE -> upper -> TE ->
    // lower), with web junctions inserted exactly
    let mut psis: Vec<f64> = (0..n_arc)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / n_arc as f64)
        .collect();
    if with_webs {
        for xw in [x_w1, x_w2] {
            let pw = (1.0 - 2.0 * xw / chord).clamp(-1.0, 1.0).acos();
            psis.push(pw);
            psis.push(2.0 * std::f64::consts::PI - pw);
        }
        psis.sort_by(|p, q| p.partial_cmp(q).unwrap());
        psis.dedup_by(|p, q| (*p - *q).abs() < 1e-9);
    }

    let point = |psi: f64| -> [f64; 2] {
        [a * (1.0 - psi.cos()) - x_pa, b * psi.sin()]
    };

    // panels in a fixed order; indexes referenced by segments
    let mut panels: Vec<Panel> = Vec::new();
    let panel_idx = |region: Region, laminas: &Vec<Lamina>, panels: &mut Vec<Panel>| -> usize {
        panels.push(Panel {
            extent_m: 0.0,
            laminas: laminas.clone(),
            region,
        });
        panels.len() - 1
    };

    let (lep_idx, cap_up_idx, cap_lo_idx, tep_idx) = if layup.has_panels {
        (
            panel_idx(Region::Lep, &lep, &mut panels),
            panel_idx(Region::SparCap, &cap, &mut panels),
            panel_idx(Region::SparCap, &cap, &mut panels),
            panel_idx(Region::Tep, &tep, &mut panels),
        )
    } else {
        let mut ring = skin.clone();
        ring.extend(root.iter().cloned());
        if ring.is_empty() {
            return Err(Error::Structural(
                "station has no shell or root material".into(),
            ));
        }
        let idx = panel_idx(Region::Root, &ring, &mut panels);
        (idx, idx, idx, idx)
    };
    for p in &panels {
        if p.laminas.is_empty() {
            return Err(Error::Structural(
                "periphery panel has an empty laminate".into(),
            ));
        }
    }

    let mut segments = Vec::with_capacity(psis.len() + 16);
    for i in 0..psis.len() {
        let p0 = point(psis[i]);
        let p1 = point(psis[(i + 1) % psis.len()]);
        let x_mid = 0.5 * (p0[0] + p1[0]) + x_pa;
        let panel = if !layup.has_panels || !with_webs {
            lep_idx // single-ring fallback uses one panel map below
        } else if x_mid < x_w1 {
            lep_idx
        } else if x_mid <= x_w2 {
            let upper = 0.5 * (p0[1] + p1[1]) >= 0.0;
            if upper {
                cap_up_idx
            } else {
                cap_lo_idx
            }
        } else {
            tep_idx
        };
        segments.push(Segment {
            a: p0,
            b: p1,
            panel,
        });
    }
    // no-web stations with panels still split regions by chord position
    if layup.has_panels && !with_webs {
        let half = 0.5 * layup.w_cap_frac.max(0.2) * chord;
        let x1 = x_pa - half;
        let x2 = x_pa + half;
        for seg in &mut segments {
            let x_mid = 0.5 * (seg.a[0] + seg.b[0]) + x_pa;
            seg.panel = if x_mid < x1 {
                lep_idx
            } else if x_mid <= x2 {
                if 0.5 * (seg.a[1] + seg.b[1]) >= 0.0 {
                    cap_up_idx
                } else {
                    cap_lo_idx
                }
            } else {
                tep_idx
            };
        }
    }
    let periphery_count = segments.len();

    let mut webs = Vec::new();
    if with_webs {
        const N_WEB: usize = 6;
        for xw in [x_w1, x_w2] {
            let pw = (1.0 - 2.0 * xw / chord).clamp(-1.0, 1.0).acos();
            let top = point(pw);
            let bot = point(2.0 * std::f64::consts::PI - pw);
            let w_idx = panels.len();
            panels.push(Panel {
                extent_m: 0.0,
                laminas: web.clone(),
                region: Region::Web,
            });
            let seg_start = segments.len();
            for k in 0..N_WEB {
                let f0 = k as f64 / N_WEB as f64;
                let f1 = (k + 1) as f64 / N_WEB as f64;
                segments.push(Segment {
                    a: [top[0], top[1] + (bot[1] - top[1]) * f0],
                    b: [top[0], top[1] + (bot[1] - top[1]) * f1],
                    panel: w_idx,
                });
            }
            webs.push(Web {
                seg_start,
                seg_count: N_WEB,
            });
        }
    }

    // accumulate panel extents
    for seg in &segments {
        let l = seg.len();
        panels[seg.panel].extent_m += l;
    }

    Ok(Section {
        panels,
        segments,
        periphery_count,
        webs,
    })
}

/// Distributed and concentrated design loads for the beam solve, per station.
#[derive(Debug, Clone)]
pub struct DesignLoads {
    /// Out-of-plane aerodynamic line load (N/m), one entry per station.
    pub flap_n_per_m: Vec<f64>,
    /// In-plane aerodynamic line load (N/m).
    pub edge_n_per_m: Vec<f64>,
    /// Rotor speed for centrifugal loading (rad/s).
    pub omega_rad_s: f64,
}

/// Evaluate the blade structure under a load case.
pub fn evaluate_structure(
    blade: &BladeDefinition,
    schedule: &LayupSchedule,
    mats: &RoleMaterials,
    loads: &DesignLoads,
    env: &Environment,
    cfg: &AnalysisConfig,
) -> Result<StructuralReport> {
    let n = blade.num_sections();
    if loads.flap_n_per_m.len() != n || loads.edge_n_per_m.len() != n {
        return Err(Error::Structural(
            "load tables must match the station count".into(),
        ));
    }
    let radii: Vec<f64> = blade.stations.iter().map(|s| s.radius_m).collect();

    // build and analyze every cross section
    let mut sections = Vec::with_capacity(n);
    let mut analyses = Vec::with_capacity(n);
    for (st, lay) in blade.stations.iter().zip(schedule.stations.iter()) {
        let rel_t = rel_thickness_profile(schedule, st.radius_m, cfg.airfoil_rel_thickness);
        let section = build_station_section(
            st.chord_m,
            st.pitch_axis_fraction,
            rel_t,
            lay,
            mats,
            cfg.n_arc,
        )?;
        let analysis = section_properties(&section)?;
        sections.push(section);
        analyses.push(analysis);
    }

    let mass_per_length: Vec<f64> = analyses.iter().map(|a| a.props.mass_per_length).collect();
    let ei_flap: Vec<f64> = analyses.iter().map(|a| a.props.ei_flap).collect();
    let ei_edge: Vec<f64> = analyses.iter().map(|a| a.props.ei_edge).collect();
    let gj: Vec<f64> = analyses.iter().map(|a| a.props.gj).collect();
    let mass_kg = blade_mass(&mass_per_length, &radii);

    // body forces: gravity lies in the rotor plane (edgewise + spanwise),
    // buoyancy opposes the weight, centrifugal force is spanwise tension
    let az = cfg.azimuth_deg.to_radians();
    let eff_weight: Vec<f64> = analyses
        .iter()
        .map(|a| {
            let buoy = if cfg.buoyancy {
                env.fluid_density * a.props.enclosed_area
            } else {
                0.0
            };
            (a.props.mass_per_length - buoy) * env.gravity
        })
        .collect();
    let edge_total: Vec<f64> = (0..n)
        .map(|i| {
            let grav = if cfg.self_weight {
                eff_weight[i] * az.sin()
            } else {
                0.0
            };
            loads.edge_n_per_m[i] + grav
        })
        .collect();
    // spanwise line load: centrifugal plus the spanwise gravity component
    let axial_line: Vec<f64> = (0..n)
        .map(|i| {
            let cf = if cfg.centrifugal {
                mass_per_length[i] * loads.omega_rad_s * loads.omega_rad_s * radii[i]
            } else {
                0.0
            };
            let grav = if cfg.self_weight {
                -eff_weight[i] * az.cos()
            } else {
                0.0
            };
            cf + grav
        })
        .collect();

    // internal forces from statics
    let (v_flap, m_flap) = internal_forces(&radii, &loads.flap_n_per_m);
    let (v_edge, m_edge) = internal_forces(&radii, &edge_total);
    let (axial_n, _) = internal_forces(&radii, &axial_line);

    // torsion: flapwise load applied at the quarter chord, reacted about the
    // shear center
    let torque_line: Vec<f64> = (0..n)
        .map(|i| {
            let st = &blade.stations[i];
            let xi_ac = (0.25 - st.pitch_axis_fraction) * st.chord_m;
            let xi_sc = analyses[i].props.shear_center[0];
            (xi_ac - xi_sc) * loads.flap_n_per_m[i]
        })
        .collect();
    let (torque, _) = internal_forces(&radii, &torque_line);

    // FE deflections
    let flap_sol = solve_bending(&radii, &ei_flap, &loads.flap_n_per_m, cfg.n_elems, 0.0)?;
    let edge_sol = solve_bending(&radii, &ei_edge, &edge_total, cfg.n_elems, 0.0)?;

    // elastic twist from the torque distribution
    let twist_rate: Vec<f64> = (0..n).map(|i| torque[i] / gj[i]).collect();
    let elastic_twist = cumulative_integral(&radii, &twist_rate);

    let flap_defl: Vec<f64> = radii.iter().map(|&r| flap_sol.deflection_at(r)).collect();
    let edge_defl: Vec<f64> = radii.iter().map(|&r| edge_sol.deflection_at(r)).collect();
    let foreshortening: Vec<f64> = radii
        .iter()
        .map(|&r| flap_sol.foreshortening_at(r) + edge_sol.foreshortening_at(r))
        .collect();
    let tip_deflection = {
        let wf = flap_sol.tip_deflection();
        let we = edge_sol.tip_deflection();
        (wf * wf + we * we).sqrt()
    };

    // stress recovery and buckling, worst over stations, panels and laminas
    let mut rows = Vec::with_capacity(n);
    let mut sigma_zz_max = vec![0.0; n];
    let mut sigma_zz_min = vec![0.0; n];
    let mut tau_zs_max = vec![0.0; n];
    let mut s11_max = f64::NEG_INFINITY;
    let mut s11_min = f64::INFINITY;
    let mut s22_max = f64::NEG_INFINITY;
    let mut s22_min = f64::INFINITY;
    let mut t12_max = 0.0_f64;
    let mut u11t = 0.0_f64;
    let mut u11c = 0.0_f64;
    let mut u22t = 0.0_f64;
    let mut u22c = 0.0_f64;
    let mut ut12 = 0.0_f64;
    let mut max_buckle = 0.0_f64;

    for i in 0..n {
        let loads_i = SectionLoads {
            axial_n: axial_n[i],
            // sign convention: positive flap load puts the pressure side in
            // tension, sigma = -E eta M / EI
            moment_flap: -m_flap[i],
            moment_edge: -m_edge[i],
            shear_flap: v_flap[i],
            shear_edge: v_edge[i],
            torque: torque[i],
        };
        let panel_stresses = section_stresses(&sections[i], &analyses[i], &loads_i);
        let mut st_max = f64::NEG_INFINITY;
        let mut st_min = f64::INFINITY;
        let mut st_tau = 0.0_f64;
        for ps in &panel_stresses {
            st_max = st_max.max(ps.sigma_zz_max);
            st_min = st_min.min(ps.sigma_zz_min);
            st_tau = st_tau.max(ps.tau_zs_max_abs);

            let panel = &sections[i].panels[ps.panel];
            for &sigma in &[ps.sigma_zz_max, ps.sigma_zz_min] {
                let recovered = lamina_stress_recovery(&panel.laminas, sigma, ps.tau_zs_max_abs)?;
                for (lamina, ls) in panel.laminas.iter().zip(recovered.iter()) {
                    let s = &lamina.material.strengths;
                    s11_max = s11_max.max(ls.sigma11);
                    s11_min = s11_min.min(ls.sigma11);
                    s22_max = s22_max.max(ls.sigma22);
                    s22_min = s22_min.min(ls.sigma22);
                    t12_max = t12_max.max(ls.tau12.abs());
                    u11t = u11t.max(ls.sigma11 / s.sigma11_ft);
                    u11c = u11c.max(-ls.sigma11 / s.sigma11_fc);
                    u22t = u22t.max(ls.sigma22 / s.sigma22_ft);
                    u22c = u22c.max(-ls.sigma22 / s.sigma22_fc);
                    ut12 = ut12.max(ls.tau12.abs() / s.tau12_y);
                }
            }
            // flat-plate buckling applies to the discrete panels, not the
            // closed root ring
            if panel.region != Region::Root {
                let sigma_comp = (-ps.sigma_zz_min).max(0.0);
                let ratio = panel_buckling(
                    panel,
                    sigma_comp,
                    ps.tau_zs_max_abs,
                    cfg.alpha_b,
                    cfg.beta_b,
                )?;
                max_buckle = max_buckle.max(ratio);
            }
        }
        sigma_zz_max[i] = st_max;
        sigma_zz_min[i] = st_min;
        tau_zs_max[i] = st_tau;
        rows.push(StationRow {
            radius_m: radii[i],
            mass_per_m: mass_per_length[i],
            ea: analyses[i].props.ea,
            ei_flap: ei_flap[i],
            ei_edge: ei_edge[i],
            gj: gj[i],
            sigma_zz_max: st_max,
            tau_zs_max: st_tau,
            shear_center_x: analyses[i].props.shear_center[0],
            mass_center_x: analyses[i].props.mass_center[0],
        });
    }

    let modal = modal_frequencies(
        &radii,
        &ei_flap,
        &ei_edge,
        &mass_per_length,
        cfg.n_elems,
        cfg.n_modes.max(1),
    )?;

    Ok(StructuralReport {
        mass_kg,
        beam: BeamState {
            station_radii: radii,
            flap_deflection: flap_defl,
            edge_deflection: edge_defl,
            elastic_twist_rad: elastic_twist,
            foreshortening_m: foreshortening,
            sigma_zz_max,
            sigma_zz_min,
            tau_zs_max,
            tip_deflection,
        },
        rows,
        sigma11_max: s11_max,
        sigma11_min: s11_min,
        sigma22_max: s22_max,
        sigma22_min: s22_min,
        tau12_max_abs: t12_max,
        util_sigma11_t: u11t,
        util_sigma11_c: u11c,
        util_sigma22_t: u22t,
        util_sigma22_c: u22c,
        util_tau12: ut12,
        max_buckling_ratio: max_buckle,
        modal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        design_vector_to_layup, BladeDefinition, DesignVector, LayupLayout, Spacing, Station,
        Strengths,
    };
    use approx::assert_relative_eq;

    fn mat(name: &str, e11: f64, e22: f64, g12: f64, nu12: f64, rho: f64) -> Material {
        Material {
            name: name.into(),
            e11,
            e22,
            g12,
            nu12,
            rho,
            strengths: Strengths {
                sigma11_ft: 4.2e8,
                sigma11_fc: 3.5e8,
                sigma22_ft: 1.2e8,
                sigma22_fc: 1.4e8,
                tau12_y: 7e7,
            },
        }
    }

    pub(crate) fn role_materials() -> RoleMaterials {
        RoleMaterials {
            blade_root: mat("blade-root", 2.8e10, 1.4e10, 7e9, 0.4, 1850.0),
            blade_shell: mat("blade-shell", 2.8e10, 1.4e10, 7e9, 0.4, 1850.0),
            spar_uni: mat("spar-uni", 4.2e10, 1.4e10, 3e9, 0.28, 1920.0),
            spar_core: mat("spar-core", 2.6e8, 2.6e8, 2e7, 0.3, 200.0),
            lep_core: mat("LEP-core", 2.6e8, 2.6e8, 2e7, 0.3, 200.0),
            tep_core: mat("TEP-core", 2.6e8, 2.6e8, 2e7, 0.3, 200.0),
            web_shell: mat("web-shell", 1.4e10, 1.4e10, 1.2e10, 0.45, 1780.0),
            web_core: mat("web-core", 2.6e8, 2.6e8, 2e7, 0.3, 200.0),
        }
    }

    pub(crate) fn test_blade() -> BladeDefinition {
        let radii = BladeDefinition::spaced_radii(30, 0.5, 10.0, Spacing::Cosine);
        let stations = radii
            .iter()
            .map(|&r| Station {
                radius_m: r,
                chord_m: 0.8 - 0.04 * (r - 0.5) / 9.5 * 10.0,
                twist_deg: 0.0,
                pitch_axis_fraction: 0.375,
                airfoil_id: "foil".into(),
            })
            .collect();
        BladeDefinition::new(10.0, 0.5, stations, 3, Spacing::Cosine).unwrap()
    }

    pub(crate) fn test_design() -> DesignVector {
        let layout = LayupLayout::new(3, 8, 28, 4);
        DesignVector {
            w_cap_inb: 0.35,
            w_cap_oub: 0.3,
            t_blade_root: 0.012,
            t_blade_skin: vec![0.0035, 0.003, 0.0025, 0.002],
            t_cap_uni: vec![0.012, 0.009, 0.006, 0.003],
            t_cap_core: vec![0.004, 0.003, 0.002, 0.001],
            t_lep_core: vec![0.006, 0.005, 0.004, 0.003],
            t_tep_core: vec![0.008, 0.006, 0.005, 0.004],
            t_web_skin: [0.0025, 0.0015],
            t_web_core: [0.008, 0.005],
            layout,
        }
    }

    fn zero_body_cfg() -> AnalysisConfig {
        AnalysisConfig {
            self_weight: false,
            buoyancy: false,
            centrifugal: false,
            ..AnalysisConfig::default()
        }
    }

    #[test]
    fn zero_loads_give_zero_state() {
        let blade = test_blade();
        let mats = role_materials();
        let schedule = design_vector_to_layup(&test_design(), &blade).unwrap();
        let n = blade.num_sections();
        let loads = DesignLoads {
            flap_n_per_m: vec![0.0; n],
            edge_n_per_m: vec![0.0; n],
            omega_rad_s: 0.0,
        };
        let report = evaluate_structure(
            &blade,
            &schedule,
            &mats,
            &loads,
            &Environment::default(),
            &zero_body_cfg(),
        )
        .unwrap();
        assert_eq!(report.beam.tip_deflection, 0.0);
        assert!(report.beam.sigma_zz_max.iter().all(|&s| s.abs() < 1e-9));
        assert!(report.mass_kg > 0.0);
    }

    #[test]
    fn all_zero_layup_has_zero_mass() {
        // mass integral of an identically zero distribution
        assert_eq!(blade_mass(&[0.0, 0.0, 0.0], &[0.5, 5.0, 10.0]), 0.0);
    }

    #[test]
    fn linear_mass_distribution_matches_trapezoid_closed_form() {
        let radii = [0.0, 10.0];
        let m = [20.0, 40.0];
        assert_relative_eq!(blade_mass(&m, &radii), 300.0, max_relative = 1e-12);
    }

    #[test]
    fn loaded_blade_produces_consistent_report() {
        let blade = test_blade();
        let mats = role_materials();
        let schedule = design_vector_to_layup(&test_design(), &blade).unwrap();
        let n = blade.num_sections();
        let loads = DesignLoads {
            flap_n_per_m: vec![600.0; n],
            edge_n_per_m: vec![120.0; n],
            omega_rad_s: 80.0 * std::f64::consts::PI / 30.0,
        };
        let report = evaluate_structure(
            &blade,
            &schedule,
            &mats,
            &loads,
            &Environment::default(),
            &AnalysisConfig::default(),
        )
        .unwrap();
        assert!(report.beam.tip_deflection > 0.0);
        assert!(report.sigma11_max > 0.0);
        assert!(report.sigma11_min < 0.0);
        assert!(report.util_sigma11_t > 0.0 && report.util_sigma11_t < 10.0);
        assert!(report.max_buckling_ratio > 0.0);
        assert_eq!(report.modal.frequencies_rad_s.len(), 3);
        assert!(report.modal.frequencies_rad_s[0] > 0.0);
        // foreshortening grows monotonically outboard
        for w in report.beam.foreshortening_m.windows(2) {
            assert!(w[1] >= w[0] - 1e-15);
        }
    }

    #[test]
    fn blade_mass_matches_fe_translational_mass() {
        let blade = test_blade();
        let mats = role_materials();
        let schedule = design_vector_to_layup(&test_design(), &blade).unwrap();
        let radii: Vec<f64> = blade.stations.iter().map(|s| s.radius_m).collect();
        let mut mass_per_len = Vec::new();
        for (st, lay) in blade.stations.iter().zip(schedule.stations.iter()) {
            let rel_t = rel_thickness_profile(&schedule, st.radius_m, 0.18);
            let section =
                build_station_section(st.chord_m, st.pitch_axis_fraction, rel_t, lay, &mats, 64)
                    .unwrap();
            let analysis = section_properties(&section).unwrap();
            mass_per_len.push(analysis.props.mass_per_length);
        }
        let direct = blade_mass(&mass_per_len, &radii);
        let fe = fe_total_mass(&radii, &mass_per_len, 50);
        assert_relative_eq!(direct, fe, max_relative = 5e-3);
    }

    #[test]
    fn stiffer_layup_deflects_less() {
        let blade = test_blade();
        let mats = role_materials();
        let n = blade.num_sections();
        let loads = DesignLoads {
            flap_n_per_m: vec![600.0; n],
            edge_n_per_m: vec![100.0; n],
            omega_rad_s: 0.0,
        };
        let thin = design_vector_to_layup(&test_design(), &blade).unwrap();
        let mut thick_design = test_design();
        for t in thick_design.t_cap_uni.iter_mut() {
            *t *= 2.0;
        }
        let thick = design_vector_to_layup(&thick_design, &blade).unwrap();
        let cfg = zero_body_cfg();
        let env = Environment::default();
        let r1 = evaluate_structure(&blade, &thin, &mats, &loads, &env, &cfg).unwrap();
        let r2 = evaluate_structure(&blade, &thick, &mats, &loads, &env, &cfg).unwrap();
        assert!(r2.beam.tip_deflection < r1.beam.tip_deflection);
        assert!(r2.mass_kg > r1.mass_kg);
    }
}
