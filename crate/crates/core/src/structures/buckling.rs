//! Panel buckling: simply-supported orthotropic-plate critical stresses from
//! the laminate bending (D) matrix, combined into an interaction ratio.

use super::clt::d_matrix;
use super::Panel;
use crate::error::{Error, Result};

/// Critical compressive and shear stresses of a long simply-supported
/// orthotropic plate of width `b` (the panel extent).
pub fn critical_stresses(panel: &Panel) -> Result<(f64, f64)> {
    let b = panel.extent_m;
    if b <= 0.0 {
        return Err(Error::Structural("panel extent must be positive".into()));
    }
    let t: f64 = panel.laminas.iter().map(|l| l.thickness).sum();
    if t <= 0.0 {
        return Err(Error::Structural("panel has zero thickness".into()));
    }
    let d = d_matrix(&panel.laminas);
    let (d11, d12, d22, d66) = (d[(0, 0)], d[(0, 1)], d[(1, 1)], d[(2, 2)]);

    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let n_x_cr = 2.0 * pi2 / (b * b) * ((d11 * d22).sqrt() + d12 + 2.0 * d66);

    // Whitney's long-plate shear approximations
    let k = (d11 * d22).sqrt() / (d12 + 2.0 * d66);
    let n_xy_cr = if k >= 1.0 {
        4.0 / (b * b) * (d11 * d22 * d22 * d22).powf(0.25) * (8.125 + 5.045 / k)
    } else {
        4.0 / (b * b) * (d22 * (d12 + 2.0 * d66)).sqrt() * (11.7 + 0.532 * k + 0.938 * k * k)
    };

    Ok((n_x_cr / t, n_xy_cr / t))
}

/// Buckling interaction ratio
/// `(sigma/sigma_cr)^alpha_b + (tau/tau_cr)^beta_b`, compressive stress
/// taken positive, tensile stress contributing nothing.
pub fn panel_buckling(
    panel: &Panel,
    sigma_compressive: f64,
    tau: f64,
    alpha_b: f64,
    beta_b: f64,
) -> Result<f64> {
    let (sigma_cr, tau_cr) = critical_stresses(panel)?;
    let s = sigma_compressive.max(0.0);
    Ok((s / sigma_cr).powf(alpha_b) + (tau.abs() / tau_cr).powf(beta_b))
}
