//! Result serialization. All floating-point output uses Rust's shortest
//! round-trip formatting so every value reparses without loss.

use std::fmt::Write as _;
use std::path::Path;

use crate::aero::PowerPoint;
use crate::error::{Error, Result};
use crate::moo::{GenStats, ParetoPoint};
use crate::objectives::PenaltySet;
use crate::structures::{ModeFamily, StructuralReport};

fn write_file(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Error::Config(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, content)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

/// Performance CSV: kilo-scaled columns when `k_fact` is set.
pub fn performance_csv(curve: &[PowerPoint], k_fact: bool) -> String {
    let (scale, mut out) = if k_fact {
        (
            1e-3,
            String::from("V_mps,P_kW,Cp,thrust_kN,torque_kNm,root_flap_kNm\n"),
        )
    } else {
        (
            1.0,
            String::from("V_mps,P_W,Cp,thrust_N,torque_Nm,root_flap_Nm\n"),
        )
    };
    for pt in curve {
        let (thrust, torque, flap) = match &pt.performance {
            Some(p) => (p.thrust_n, p.torque_nm, p.root_flap_moment_nm),
            None => (0.0, 0.0, 0.0),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            pt.wind_speed,
            pt.power_w * scale,
            pt.cp,
            thrust * scale,
            torque * scale,
            flap * scale
        );
    }
    out
}

pub fn write_performance(path: &Path, curve: &[PowerPoint], k_fact: bool) -> Result<()> {
    write_file(path, &performance_csv(curve, k_fact))
}

/// Blade-element dump: per-speed, per-station annulus states.
pub fn blade_element_csv(curve: &[PowerPoint]) -> String {
    let mut out = String::from(
        "V_mps,station,a,a_prime,phi_rad,alpha_deg,cl,cd,loss_factor,dT_dr,dQ_dr,converged,residual\n",
    );
    for pt in curve {
        if let Some(perf) = &pt.performance {
            for (i, st) in perf.annuli.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    pt.wind_speed,
                    i + 1,
                    st.a,
                    st.a_prime,
                    st.phi,
                    st.alpha_deg,
                    st.cl,
                    st.cd,
                    st.f,
                    st.dt_dr,
                    st.dq_dr,
                    st.converged,
                    st.residual
                );
            }
        }
    }
    out
}

pub fn write_blade_elements(path: &Path, curve: &[PowerPoint]) -> Result<()> {
    write_file(path, &blade_element_csv(curve))
}

/// Structural report CSV with a trailing summary block.
pub fn structure_csv(report: &StructuralReport) -> String {
    let mut out =
        String::from("r_m,mass_per_m,EA,EI_flap,EI_edge,GJ,sigma_zz_max,tau_zs_max\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.radius_m,
            row.mass_per_m,
            row.ea,
            row.ei_flap,
            row.ei_edge,
            row.gj,
            row.sigma_zz_max,
            row.tau_zs_max
        );
    }
    let _ = writeln!(out, "# mass_kg = {}", report.mass_kg);
    let _ = writeln!(out, "# tip_deflection_m = {}", report.beam.tip_deflection);
    let flap: Vec<f64> = report
        .modal
        .frequencies_rad_s
        .iter()
        .zip(&report.modal.families)
        .filter(|(_, fam)| **fam == ModeFamily::Flap)
        .map(|(w, _)| *w)
        .take(3)
        .collect();
    let edge: Vec<f64> = report
        .modal
        .frequencies_rad_s
        .iter()
        .zip(&report.modal.families)
        .filter(|(_, fam)| **fam == ModeFamily::Edge)
        .map(|(w, _)| *w)
        .take(3)
        .collect();
    let join = |v: &[f64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "# flap_freqs_rad_s = {}", join(&flap));
    let _ = writeln!(out, "# edge_freqs_rad_s = {}", join(&edge));
    out
}

pub fn write_structure(path: &Path, report: &StructuralReport) -> Result<()> {
    write_file(path, &structure_csv(report))
}

/// Header for the per-evaluation penalty breakdown.
pub fn penalty_header() -> &'static str {
    "eval_id,mass,p1,p2,p3,p4,p5,p6,p7,p8,fitness\n"
}

pub fn penalty_row(eval_id: usize, mass: f64, p: &PenaltySet, fitness: f64) -> String {
    let mut out = format!("{eval_id},{mass}");
    for v in &p.p {
        let _ = write!(out, ",{v}");
    }
    let _ = writeln!(out, ",{fitness}");
    out
}

/// GA history CSV.
pub fn history_csv(history: &[GenStats]) -> String {
    let mut out = String::from("gen,best_fitness,mean_fitness\n");
    for s in history {
        let _ = writeln!(out, "{},{},{}", s.gen, s.best_fitness, s.mean_fitness);
    }
    out
}

pub fn write_history(path: &Path, history: &[GenStats]) -> Result<()> {
    write_file(path, &history_csv(history))
}

/// Front CSV: one row per point, mass ascending.
pub fn front_csv(points: &[ParetoPoint]) -> String {
    let mut out = String::from("alpha,mass_kg,aep_kWh,fitness,feasible\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.alpha, p.mass_kg, p.aep_kwh, p.fitness, p.feasible
        );
    }
    out
}

pub fn write_front_csv(path: &Path, points: &[ParetoPoint]) -> Result<()> {
    write_file(path, &front_csv(points))
}

/// Plot-ready two-column front table, mass ascending.
pub fn front_dat(points: &[ParetoPoint]) -> String {
    let mut out = String::from("# mass_kg  aep_kWh\n");
    for p in points {
        let _ = writeln!(out, "{}  {}", p.mass_kg, p.aep_kwh);
    }
    out
}

pub fn write_front_dat(path: &Path, points: &[ParetoPoint]) -> Result<()> {
    write_file(path, &front_dat(points))
}

/// One design vector per file, one value per line.
pub fn design_vector_text(x: &[f64]) -> String {
    let mut out = String::new();
    for v in x {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn write_design_vector(path: &Path, x: &[f64]) -> Result<()> {
    write_file(path, &design_vector_text(x))
}

pub fn write_text(path: &Path, content: &str) -> Result<()> {
    write_file(path, content)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn point(alpha: f64, mass: f64, aep: f64) -> ParetoPoint {
        ParetoPoint {
            alpha,
            mass_kg: mass,
            aep_kwh: aep,
            fitness: -1.0,
            x: vec![0.0],
            feasible: true,
        }
    }

    #[test]
    fn empty_front_is_header_only() {
        let s = front_dat(&[]);
        assert_eq!(s, "# mass_kg  aep_kWh\n");
    }

    #[test]
    fn three_point_front_has_three_data_lines() {
        let pts = vec![
            point(1.0, 100.0, 4.0e4),
            point(0.5, 150.0, 4.5e4),
            point(0.0, 220.0, 5.0e4),
        ];
        let s = front_dat(&pts);
        assert_eq!(s.lines().count(), 4);
        let masses: Vec<f64> = s
            .lines()
            .skip(1)
            .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(masses, vec![100.0, 150.0, 220.0]);
    }

    proptest! {
        // every numeric value written round-trips through parse exactly
        #[test]
        fn float_output_round_trips(v in proptest::num::f64::NORMAL) {
            let s = format!("{v}");
            let back: f64 = s.parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
