//! Natural frequencies of the clamped-free blade from the generalized
//! eigenproblem of the Hermite bending stiffness and consistent mass
//! matrices.

use nalgebra::{DMatrix, SymmetricEigen};

use super::beam::{hermite_stiffness, interp, interval_average};
use crate::error::{Error, Result};

/// Modal families reported for the blade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeFamily {
    Flap,
    Edge,
}

/// Natural frequencies (rad/s, non-decreasing) with per-station mode shapes.
#[derive(Debug, Clone)]
pub struct ModalResult {
    pub frequencies_rad_s: Vec<f64>,
    pub families: Vec<ModeFamily>,
    /// Mode shapes sampled at the element nodes, unit tip amplitude.
    pub shapes: Vec<Vec<f64>>,
    pub nodes: Vec<f64>,
}

/// Lowest `n_modes` bending frequencies of one family.
pub fn bending_frequencies(
    radii: &[f64],
    ei: &[f64],
    mass_per_length: &[f64],
    n_elems: usize,
    n_modes: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>, Vec<f64>)> {
    if n_elems < 2 {
        return Err(Error::Structural("modal analysis needs n_elems >= 2".into()));
    }
    let root = radii[0];
    let tip = radii[radii.len() - 1];
    let nodes: Vec<f64> = (0..=n_elems)
        .map(|i| root + (tip - root) * i as f64 / n_elems as f64)
        .collect();

    let ndof = 2 * (n_elems + 1);
    let mut k = DMatrix::<f64>::zeros(ndof, ndof);
    let mut m = DMatrix::<f64>::zeros(ndof, ndof);
    for e in 0..n_elems {
        let (r0, r1) = (nodes[e], nodes[e + 1]);
        let l = r1 - r0;
        let mid = 0.5 * (r0 + r1);
        let ei_e = interp(radii, ei, mid);
        let mu = interval_average(radii, mass_per_length, r0, r1);
        if ei_e <= 0.0 || mu <= 0.0 {
            return Err(Error::Structural(format!(
                "non-positive stiffness or mass near r = {mid}"
            )));
        }
        let ke = hermite_stiffness(ei_e, l);
        let me = consistent_mass(mu, l);
        let dof = [2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3];
        for i in 0..4 {
            for j in 0..4 {
                k[(dof[i], dof[j])] += ke[i][j];
                m[(dof[i], dof[j])] += me[i][j];
            }
        }
    }

    // clamp the root
    let n = ndof - 2;
    let mut k_red = DMatrix::<f64>::zeros(n, n);
    let mut m_red = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            k_red[(i, j)] = k[(i + 2, j + 2)];
            m_red[(i, j)] = m[(i + 2, j + 2)];
        }
    }

    // K x = w^2 M x via Cholesky of M
    let chol = m_red
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("mass matrix is not positive definite".into()))?;
    let l_inv = chol
        .l()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("mass factor not invertible".into()))?;
    let a = &l_inv * &k_red * l_inv.transpose();
    let a_sym = (&a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(a_sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut freqs = Vec::with_capacity(n_modes);
    let mut shapes = Vec::with_capacity(n_modes);
    for &idx in order.iter().take(n_modes) {
        let lambda = eig.eigenvalues[idx];
        if lambda <= 0.0 {
            return Err(Error::Numerical(format!(
                "non-positive eigenvalue {lambda} in modal analysis"
            )));
        }
        freqs.push(lambda.sqrt());
        let y = eig.eigenvectors.column(idx);
        let phi = l_inv.transpose() * y;
        // deflection DOFs only, normalized to unit tip amplitude
        let mut shape = vec![0.0];
        for node in 1..=n_elems {
            shape.push(phi[2 * (node - 1)]);
        }
        let tip = shape[n_elems];
        if tip.abs() > 0.0 {
            for v in &mut shape {
                *v /= tip;
            }
        }
        shapes.push(shape);
    }
    Ok((freqs, shapes, nodes))
}

/// Lowest `n_modes` frequencies over the flap and edge bending families,
/// merged and sorted.
pub fn modal_frequencies(
    radii: &[f64],
    ei_flap: &[f64],
    ei_edge: &[f64],
    mass_per_length: &[f64],
    n_elems: usize,
    n_modes: usize,
) -> Result<ModalResult> {
    let (f_flap, s_flap, nodes) =
        bending_frequencies(radii, ei_flap, mass_per_length, n_elems, n_modes)?;
    let (f_edge, s_edge, _) =
        bending_frequencies(radii, ei_edge, mass_per_length, n_elems, n_modes)?;

    let mut all: Vec<(f64, ModeFamily, Vec<f64>)> = f_flap
        .into_iter()
        .zip(s_flap)
        .map(|(f, s)| (f, ModeFamily::Flap, s))
        .chain(
            f_edge
                .into_iter()
                .zip(s_edge)
                .map(|(f, s)| (f, ModeFamily::Edge, s)),
        )
        .collect();
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    all.truncate(n_modes);

    Ok(ModalResult {
        frequencies_rad_s: all.iter().map(|x| x.0).collect(),
        families: all.iter().map(|x| x.1).collect(),
        shapes: all.into_iter().map(|x| x.2).collect(),
        nodes,
    })
}

/// Consistent mass matrix of a Hermite bending element.
fn consistent_mass(mu: f64, l: f64) -> [[f64; 4]; 4] {
    let c = mu * l / 420.0;
    [
        [156.0 * c, 22.0 * l * c, 54.0 * c, -13.0 * l * c],
        [22.0 * l * c, 4.0 * l * l * c, 13.0 * l * c, -3.0 * l * l * c],
        [54.0 * c, 13.0 * l * c, 156.0 * c, -22.0 * l * c],
        [-13.0 * l * c, -3.0 * l * l * c, -22.0 * l * c, 4.0 * l * l * c],
    ]
}

/// Total translational mass seen by the FE mass matrix: a rigid unit
/// translation with zero rotations integrates the distributed mass exactly.
pub fn fe_total_mass(radii: &[f64], mass_per_length: &[f64], n_elems: usize) -> f64 {
    let root = radii[0];
    let tip = radii[radii.len() - 1];
    let mut total = 0.0;
    for e in 0..n_elems {
        let r0 = root + (tip - root) * e as f64 / n_elems as f64;
        let r1 = root + (tip - root) * (e + 1) as f64 / n_elems as f64;
        let mu = interval_average(radii, mass_per_length, r0, r1);
        let me = consistent_mass(mu, r1 - r0);
        // u^T M u with u = [1, 0, 1, 0]
        total += me[0][0] + me[0][2] + me[2][0] + me[2][2];
    }
    total
}
