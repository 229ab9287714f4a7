//! Classical lamination theory: rotated lamina stiffnesses, membrane/bending
//! (ABD) assembly, effective laminate properties and lamina-level stress
//! recovery from effective beam stresses.

use nalgebra::{Matrix3, Vector3};

use super::Lamina;
use crate::error::{Error, Result};
use crate::model::Material;

/// Membrane-equivalent laminate properties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveProps {
    pub e_eff: f64,
    pub g_eff: f64,
    pub rho_eff: f64,
    pub thickness: f64,
}

/// Recovered lamina response in the principal fiber frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaminaStress {
    pub sigma11: f64,
    pub sigma22: f64,
    pub tau12: f64,
    pub eps11: f64,
    pub eps22: f64,
    pub gamma12: f64,
}

/// Reduced plane-stress stiffness of a lamina in its principal axes.
fn q_matrix(m: &Material) -> Matrix3<f64> {
    let nu21 = m.nu12 * m.e22 / m.e11;
    let d = 1.0 - m.nu12 * nu21;
    Matrix3::new(
        m.e11 / d,
        m.nu12 * m.e22 / d,
        0.0,
        m.nu12 * m.e22 / d,
        m.e22 / d,
        0.0,
        0.0,
        0.0,
        m.g12,
    )
}

/// Lamina stiffness rotated to the laminate axes.
fn q_bar(m: &Material, angle_deg: f64) -> Matrix3<f64> {
    let q = q_matrix(m);
    let (s, c) = angle_deg.to_radians().sin_cos();
    let (c2, s2) = (c * c, s * s);
    let (c4, s4) = (c2 * c2, s2 * s2);
    let cs2 = c2 * s2;

    let q11 = q[(0, 0)];
    let q12 = q[(0, 1)];
    let q22 = q[(1, 1)];
    let q66 = q[(2, 2)];

    let qb11 = q11 * c4 + 2.0 * (q12 + 2.0 * q66) * cs2 + q22 * s4;
    let qb12 = (q11 + q22 - 4.0 * q66) * cs2 + q12 * (c4 + s4);
    let qb22 = q11 * s4 + 2.0 * (q12 + 2.0 * q66) * cs2 + q22 * c4;
    let qb16 = (q11 - q12 - 2.0 * q66) * c2 * c * s + (q12 - q22 + 2.0 * q66) * c * s2 * s;
    let qb26 = (q11 - q12 - 2.0 * q66) * c * s2 * s + (q12 - q22 + 2.0 * q66) * c2 * c * s;
    let qb66 = (q11 + q22 - 2.0 * q12 - 2.0 * q66) * cs2 + q66 * (c4 + s4);

    Matrix3::new(qb11, qb12, qb16, qb12, qb22, qb26, qb16, qb26, qb66)
}

/// Membrane stiffness matrix `A` of a stack.
pub fn a_matrix(stack: &[Lamina]) -> Matrix3<f64> {
    let mut a = Matrix3::zeros();
    for lam in stack {
        a += q_bar(&lam.material, lam.fiber_angle_deg) * lam.thickness;
    }
    a
}

/// Bending stiffness matrix `D` of a stack about its own midplane.
pub fn d_matrix(stack: &[Lamina]) -> Matrix3<f64> {
    let total: f64 = stack.iter().map(|l| l.thickness).sum();
    let mut z = -0.5 * total;
    let mut d = Matrix3::zeros();
    for lam in stack {
        let z_mid = z + 0.5 * lam.thickness;
        let t = lam.thickness;
        d += q_bar(&lam.material, lam.fiber_angle_deg) * (t * z_mid * z_mid + t * t * t / 12.0);
        z += t;
    }
    d
}

/// Effective membrane properties of a laminate stack.
///
/// `E_eff = 1/(t a11)` and `G_eff = 1/(t a66)` with `a = A^-1`; the density
/// is thickness-weighted.
pub fn laminate_effective_props(stack: &[Lamina]) -> Result<EffectiveProps> {
    if stack.is_empty() {
        return Err(Error::Structural("empty laminate stack".into()));
    }
    let thickness: f64 = stack.iter().map(|l| l.thickness).sum();
    if thickness <= 0.0 {
        return Err(Error::Structural("laminate has zero thickness".into()));
    }
    let a = a_matrix(stack);
    let a_inv = a
        .try_inverse()
        .ok_or_else(|| Error::Structural("degenerate laminate: singular A matrix".into()))?;
    let rho_eff = stack
        .iter()
        .map(|l| l.material.rho * l.thickness)
        .sum::<f64>()
        / thickness;
    Ok(EffectiveProps {
        e_eff: 1.0 / (thickness * a_inv[(0, 0)]),
        g_eff: 1.0 / (thickness * a_inv[(2, 2)]),
        rho_eff,
        thickness,
    })
}

/// Convert effective beam stresses on a panel into lamina principal-axis
/// strains and stresses.
///
/// The effective stresses become membrane loads `N_z = sigma_zz t`,
/// `N_zs = tau_zs t`; laminate compliance gives mid-plane strains, which are
/// rotated into each lamina's fiber frame and converted with the lamina
/// stiffness.
pub fn lamina_stress_recovery(
    stack: &[Lamina],
    sigma_zz: f64,
    tau_zs: f64,
) -> Result<Vec<LaminaStress>> {
    let thickness: f64 = stack.iter().map(|l| l.thickness).sum();
    if stack.is_empty() || thickness <= 0.0 {
        return Err(Error::Structural("empty laminate stack".into()));
    }
    let a = a_matrix(stack);
    let n = Vector3::new(sigma_zz * thickness, 0.0, tau_zs * thickness);
    let eps0 = a
        .lu()
        .solve(&n)
        .ok_or_else(|| Error::Structural("degenerate laminate: singular A matrix".into()))?;

    let mut out = Vec::with_capacity(stack.len());
    for lam in stack {
        let (s, c) = lam.fiber_angle_deg.to_radians().sin_cos();
        let (c2, s2, cs) = (c * c, s * s, c * s);
        // tensor strain rotation into the fiber frame
        let e1 = c2 * eps0[0] + s2 * eps0[1] + cs * eps0[2];
        let e2 = s2 * eps0[0] + c2 * eps0[1] - cs * eps0[2];
        let g12 = -2.0 * cs * eps0[0] + 2.0 * cs * eps0[1] + (c2 - s2) * eps0[2];

        let q = q_matrix(&lam.material);
        let strain = Vector3::new(e1, e2, g12);
        let stress = q * strain;
        out.push(LaminaStress {
            sigma11: stress[0],
            sigma22: stress[1],
            tau12: stress[2],
            eps11: e1,
            eps22: e2,
            gamma12: g12,
        });
    }
    Ok(out)
}
