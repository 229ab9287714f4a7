//! Damped fixed-point solver for the blade-element momentum balance of a
//! single annulus, with Prandtl tip/hub losses and the Buhl empirical
//! high-induction thrust relation.

use super::{AnnulusState, BemConfig, OperatingPoint};
use crate::error::{Error, Result};
use crate::model::{interpolate_polar, AirfoilPolar, Environment};

/// Loss model switches for the Prandtl factor.
#[derive(Debug, Clone, Copy)]
pub struct LossFlags {
    pub tip_loss: bool,
    pub hub_loss: bool,
}

/// Geometry of one annulus.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusGeometry {
    pub radius: f64,
    pub chord: f64,
    pub twist_deg: f64,
    pub num_blades: usize,
    pub tip_radius: f64,
    pub hub_radius: f64,
}

/// Guard against the phi = 0 singularity in the loss and induction formulas.
const SIN_PHI_FLOOR: f64 = 1e-6;
/// Fixed-point damping on the induction updates.
const RELAX: f64 = 0.5;
/// Loss factor below which an annulus is treated as fully unloaded
/// (stations sitting exactly on the tip or hub radius).
const F_FLOOR: f64 = 1e-9;

/// Combined Prandtl tip/hub loss factor.
///
/// `F_tip = (2/pi) acos(exp(-B (R - r) / (2 r sin phi)))`, the hub factor is
/// the analogous expression in `(r - R_hub)`; a disabled flag sets the
/// corresponding factor to one.
pub fn prandtl_factor(
    num_blades: usize,
    r: f64,
    tip_radius: f64,
    hub_radius: f64,
    phi: f64,
    flags: LossFlags,
) -> f64 {
    let b = num_blades as f64;
    let sin_phi = phi.sin().abs().max(SIN_PHI_FLOOR);
    let factor = |gap: f64| {
        let arg = -b * gap / (2.0 * r * sin_phi);
        (2.0 / std::f64::consts::PI) * arg.exp().min(1.0).acos()
    };
    let f_tip = if flags.tip_loss {
        factor(tip_radius - r)
    } else {
        1.0
    };
    let f_hub = if flags.hub_loss {
        factor(r - hub_radius)
    } else {
        1.0
    };
    (f_tip * f_hub).clamp(0.0, 1.0)
}

/// Solve the momentum balance of one annulus by damped fixed-point iteration
/// on the axial and tangential induction factors.
pub fn solve_annulus(
    geom: &AnnulusGeometry,
    op: &OperatingPoint,
    polar: &AirfoilPolar,
    env: &Environment,
    cfg: &BemConfig,
) -> Result<AnnulusState> {
    if geom.chord <= 0.0 {
        return Err(Error::Config("annulus chord must be positive".into()));
    }
    if !polar.covers_full_range() {
        return Err(Error::Config(format!(
            "polar {} must span [-180, 180] deg; extend it first",
            polar.airfoil_id
        )));
    }

    let flags = LossFlags {
        tip_loss: cfg.tip_loss,
        hub_loss: cfg.hub_loss,
    };
    let b = geom.num_blades as f64;
    let omega = op.omega();
    let v = op.wind_speed;
    let sigma = b * geom.chord / (2.0 * std::f64::consts::PI * geom.radius);

    let mut a = 0.0_f64;
    let mut a_prime = 0.0_f64;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut state_phi = 0.0;
    let mut state_alpha = 0.0;
    let mut state_cl = 0.0;
    let mut state_cd = 0.0;
    let mut state_f = 1.0;
    // oscillation-adaptive damping: halve the relaxation when the update
    // direction flips, so limit cycles decay
    let mut relax = RELAX;
    let mut prev_da = 0.0_f64;
    let mut prev_dap = 0.0_f64;

    for _ in 0..cfg.max_iter {
        let v_ax = v * (1.0 - a);
        let v_tan = omega * geom.radius * (1.0 + a_prime);
        if v_ax == 0.0 && v_tan == 0.0 {
            break;
        }
        let phi = v_ax.atan2(v_tan);
        let sin_phi = clamp_magnitude(phi.sin(), SIN_PHI_FLOOR);
        let cos_phi = phi.cos();

        let alpha = phi.to_degrees() - geom.twist_deg - op.pitch_deg;
        let alpha = wrap_angle_deg(alpha);
        let pt = interpolate_polar(polar, alpha)?;
        if !pt.cl.is_finite() || !pt.cd.is_finite() {
            return Err(Error::Numerical(format!(
                "polar {} returned a non-finite coefficient at alpha {alpha}",
                polar.airfoil_id
            )));
        }

        let f = prandtl_factor(
            geom.num_blades,
            geom.radius,
            geom.tip_radius,
            geom.hub_radius,
            phi,
            flags,
        );
        state_phi = phi;
        state_alpha = alpha;
        state_cl = pt.cl;
        state_cd = pt.cd;
        state_f = f;

        if f < F_FLOOR {
            // station at the exact tip/hub: bound circulation vanishes, the
            // annulus carries no load and the momentum balance is trivial
            a = 0.0;
            a_prime = 0.0;
            residual = 0.0;
            converged = true;
            break;
        }

        let cn = pt.cl * cos_phi + if cfg.ai_drag { pt.cd * sin_phi } else { 0.0 };
        let ct = pt.cl * sin_phi - if cfg.ti_drag { pt.cd * cos_phi } else { 0.0 };

        // axial induction from the momentum balance, switching to the Buhl
        // empirical thrust curve in the turbulent wake state
        let k = sigma * cn / (4.0 * f * sin_phi * sin_phi);
        let mut a_new = k / (1.0 + k);
        if !a_new.is_finite() {
            a_new = 0.999;
        }
        if cfg.adv_brake {
            let ct_local = sigma * (1.0 - a) * (1.0 - a) * cn / (sin_phi * sin_phi);
            if ct_local > 0.96 * f {
                let disc =
                    (ct_local * (50.0 - 36.0 * f) + 12.0 * f * (3.0 * f - 4.0)).max(0.0);
                a_new = (18.0 * f - 20.0 - 3.0 * disc.sqrt()) / (36.0 * f - 50.0);
            }
        }
        a_new = a_new.clamp(-0.5, 0.999);

        let mut ap_new = if cfg.swirl {
            let kp = sigma * ct / (4.0 * f * sin_phi * cos_phi);
            if kp.is_finite() && (1.0 - kp).abs() > 1e-9 {
                kp / (1.0 - kp)
            } else {
                0.0
            }
        } else {
            0.0
        };
        if !ap_new.is_finite() {
            ap_new = 0.0;
        }
        ap_new = ap_new.clamp(-0.9, 10.0);

        let da = a_new - a;
        let dap = ap_new - a_prime;
        residual = da.abs().max(dap.abs());
        if da * prev_da < 0.0 || dap * prev_dap < 0.0 {
            relax = (relax * 0.7).max(0.02);
        }
        prev_da = da;
        prev_dap = dap;
        a += relax * da;
        a_prime += relax * dap;
        if residual < cfg.a_tol {
            converged = true;
            break;
        }
    }

    // blade forces at the converged induction state
    let v_ax = v * (1.0 - a);
    let v_tan = omega * geom.radius * (1.0 + a_prime);
    let w2 = v_ax * v_ax + v_tan * v_tan;
    let sin_phi = clamp_magnitude(state_phi.sin(), SIN_PHI_FLOOR);
    let cos_phi = state_phi.cos();
    let cn = state_cl * cos_phi + state_cd * sin_phi;
    let ct = state_cl * sin_phi - state_cd * cos_phi;
    let q = 0.5 * env.fluid_density * w2 * geom.chord;
    let (dt_dr, dq_dr) = if state_f < F_FLOOR {
        (0.0, 0.0)
    } else {
        (b * q * cn, b * q * ct * geom.radius)
    };

    Ok(AnnulusState {
        a,
        a_prime,
        phi: state_phi,
        alpha_deg: state_alpha,
        cl: state_cl,
        cd: state_cd,
        f: state_f,
        dt_dr,
        dq_dr,
        converged,
        residual,
    })
}

fn clamp_magnitude(x: f64, floor: f64) -> f64 {
    if x >= 0.0 {
        x.max(floor)
    } else {
        x.min(-floor)
    }
}

fn wrap_angle_deg(alpha: f64) -> f64 {
    let mut a = alpha;
    while a > 180.0 {
        a -= 360.0;
    }
    while a < -180.0 {
        a += 360.0;
    }
    a
}
