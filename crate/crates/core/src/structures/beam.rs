//! Euler-Bernoulli cantilever statics on Hermite cubic finite elements, plus
//! spanwise statics for internal force recovery.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Bending solution on the element node grid.
#[derive(Debug, Clone)]
pub struct BendingSolution {
    /// Node radii (root first).
    pub nodes: Vec<f64>,
    /// Transverse deflection at each node (m).
    pub deflection: Vec<f64>,
    /// Slope at each node (rad).
    pub slope: Vec<f64>,
}

impl BendingSolution {
    pub fn tip_deflection(&self) -> f64 {
        *self.deflection.last().unwrap_or(&0.0)
    }

    /// Linear interpolation of the deflection.
    pub fn deflection_at(&self, r: f64) -> f64 {
        interp(&self.nodes, &self.deflection, r)
    }

    /// Linear interpolation of the slope.
    pub fn slope_at(&self, r: f64) -> f64 {
        interp(&self.nodes, &self.slope, r)
    }

    /// Second-order spanwise foreshortening of an inextensible beam:
    /// `s(r) = 1/2 integral of slope^2` from the root.
    pub fn foreshortening_at(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.nodes.len() {
            let (r0, r1) = (self.nodes[i - 1], self.nodes[i]);
            if r0 >= r {
                break;
            }
            let hi = r1.min(r);
            let w0 = self.slope[i - 1];
            let w1 = if hi < r1 {
                interp(&self.nodes, &self.slope, hi)
            } else {
                self.slope[i]
            };
            acc += 0.25 * (w0 * w0 + w1 * w1) * (hi - r0);
        }
        acc
    }
}

/// Solve a clamped-free beam with linearly interpolated bending stiffness
/// and line load, using `n_elems` Hermite cubic elements.
///
/// `ei` and `load` are tabulated on `radii` (strictly increasing, root
/// first); `tip_load` adds a point force at the free end.
pub fn solve_bending(
    radii: &[f64],
    ei: &[f64],
    load: &[f64],
    n_elems: usize,
    tip_load: f64,
) -> Result<BendingSolution> {
    if radii.len() < 2 || radii.len() != ei.len() || radii.len() != load.len() {
        return Err(Error::Structural("inconsistent beam tables".into()));
    }
    if n_elems < 1 {
        return Err(Error::Structural("need at least one element".into()));
    }
    let root = radii[0];
    let tip = radii[radii.len() - 1];
    let nodes: Vec<f64> = (0..=n_elems)
        .map(|i| root + (tip - root) * i as f64 / n_elems as f64)
        .collect();

    let ndof = 2 * (n_elems + 1);
    let mut k = DMatrix::<f64>::zeros(ndof, ndof);
    let mut f = DVector::<f64>::zeros(ndof);

    for e in 0..n_elems {
        let (r0, r1) = (nodes[e], nodes[e + 1]);
        let l = r1 - r0;
        let ei_e = interp(radii, ei, 0.5 * (r0 + r1));
        if ei_e <= 0.0 {
            return Err(Error::Structural(format!(
                "non-positive bending stiffness near r = {}",
                0.5 * (r0 + r1)
            )));
        }
        let ke = hermite_stiffness(ei_e, l);
        let q0 = interp(radii, load, r0);
        let q1 = interp(radii, load, r1);
        let fe = consistent_load(q0, q1, l);
        let dof = [2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3];
        for i in 0..4 {
            f[dof[i]] += fe[i];
            for j in 0..4 {
                k[(dof[i], dof[j])] += ke[i][j];
            }
        }
    }
    f[ndof - 2] += tip_load;

    // clamp the root: drop the first two DOFs
    let m = ndof - 2;
    let mut k_red = DMatrix::<f64>::zeros(m, m);
    let mut f_red = DVector::<f64>::zeros(m);
    for i in 0..m {
        f_red[i] = f[i + 2];
        for j in 0..m {
            k_red[(i, j)] = k[(i + 2, j + 2)];
        }
    }
    let u = k_red
        .lu()
        .solve(&f_red)
        .ok_or_else(|| Error::Structural("singular beam stiffness matrix".into()))?;

    let mut deflection = vec![0.0; n_elems + 1];
    let mut slope = vec![0.0; n_elems + 1];
    for n in 1..=n_elems {
        deflection[n] = u[2 * (n - 1)];
        slope[n] = u[2 * (n - 1) + 1];
    }
    Ok(BendingSolution {
        nodes,
        deflection,
        slope,
    })
}

pub(crate) fn hermite_stiffness(ei: f64, l: f64) -> [[f64; 4]; 4] {
    let c = ei / (l * l * l);
    [
        [12.0 * c, 6.0 * l * c, -12.0 * c, 6.0 * l * c],
        [6.0 * l * c, 4.0 * l * l * c, -6.0 * l * c, 2.0 * l * l * c],
        [-12.0 * c, -6.0 * l * c, 12.0 * c, -6.0 * l * c],
        [6.0 * l * c, 2.0 * l * l * c, -6.0 * l * c, 4.0 * l * l * c],
    ]
}

/// Consistent nodal loads of a linearly varying line load.
fn consistent_load(q0: f64, q1: f64, l: f64) -> [f64; 4] {
    [
        l * (7.0 * q0 + 3.0 * q1) / 20.0,
        l * l * (3.0 * q0 + 2.0 * q1) / 60.0,
        l * (3.0 * q0 + 7.0 * q1) / 20.0,
        -l * l * (2.0 * q0 + 3.0 * q1) / 60.0,
    ]
}

/// Internal forces of a cantilever from statics, accumulated tip to root on
/// the given radii: shear from the line load, moment from the shear.
pub fn internal_forces(radii: &[f64], load: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = radii.len();
    let mut shear = vec![0.0; n];
    let mut moment = vec![0.0; n];
    for i in (0..n.saturating_sub(1)).rev() {
        let dr = radii[i + 1] - radii[i];
        shear[i] = shear[i + 1] + 0.5 * (load[i] + load[i + 1]) * dr;
        moment[i] = moment[i + 1] + 0.5 * (shear[i] + shear[i + 1]) * dr;
    }
    (shear, moment)
}

/// Cumulative integral from the root on tabulated values (trapezoid).
pub fn cumulative_integral(radii: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; radii.len()];
    for i in 1..radii.len() {
        out[i] = out[i - 1] + 0.5 * (values[i] + values[i - 1]) * (radii[i] - radii[i - 1]);
    }
    out
}

/// Average of the piecewise-linear table over `[a, b]`, exact across knots.
pub(crate) fn interval_average(xs: &[f64], ys: &[f64], a: f64, b: f64) -> f64 {
    debug_assert!(b > a);
    let mut breaks = vec![a];
    for &x in xs {
        if x > a && x < b {
            breaks.push(x);
        }
    }
    breaks.push(b);
    let mut acc = 0.0;
    for w in breaks.windows(2) {
        acc += 0.5 * (interp(xs, ys, w[0]) + interp(xs, ys, w[1])) * (w[1] - w[0]);
    }
    acc / (b - a)
}

pub(crate) fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    let last = xs.len() - 1;
    if x >= xs[last] {
        return ys[last];
    }
    let idx = xs.partition_point(|&v| v <= x);
    let f = (x - xs[idx - 1]) / (xs[idx] - xs[idx - 1]);
    ys[idx - 1] + f * (ys[idx] - ys[idx - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const EI: f64 = 5.0e6;
    const L: f64 = 10.0;

    fn uniform_tables(q: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let radii: Vec<f64> = (0..=20).map(|i| L * i as f64 / 20.0).collect();
        let ei = vec![EI; radii.len()];
        let load = vec![q; radii.len()];
        (radii, ei, load)
    }

    #[test]
    fn tip_point_load_matches_cantilever_formula() {
        let (radii, ei, load) = uniform_tables(0.0);
        let p = 1000.0;
        let sol = solve_bending(&radii, &ei, &load, 50, p).unwrap();
        let exact = p * L.powi(3) / (3.0 * EI);
        assert_relative_eq!(sol.tip_deflection(), exact, max_relative = 5e-3);
    }

    #[test]
    fn uniform_load_matches_cantilever_formula() {
        let q = 250.0;
        let (radii, ei, load) = uniform_tables(q);
        let sol = solve_bending(&radii, &ei, &load, 50, 0.0).unwrap();
        let exact = q * L.powi(4) / (8.0 * EI);
        assert_relative_eq!(sol.tip_deflection(), exact, max_relative = 5e-3);
    }

    #[test]
    fn zero_load_gives_zero_state() {
        let (radii, ei, load) = uniform_tables(0.0);
        let sol = solve_bending(&radii, &ei, &load, 30, 0.0).unwrap();
        assert!(sol.deflection.iter().all(|&w| w == 0.0));
        assert!(sol.slope.iter().all(|&t| t == 0.0));
    }

    #[test]
    fn mesh_refinement_converges() {
        let q = 250.0;
        let (radii, ei, load) = uniform_tables(q);
        let coarse = solve_bending(&radii, &ei, &load, 25, 0.0).unwrap();
        let fine = solve_bending(&radii, &ei, &load, 50, 0.0).unwrap();
        let rel = ((coarse.tip_deflection() - fine.tip_deflection()) / fine.tip_deflection()).abs();
        assert!(rel < 2e-3, "relative change {rel}");
    }

    #[test]
    fn internal_forces_match_uniform_load_closed_form() {
        let q = 250.0;
        let (radii, _, load) = uniform_tables(q);
        let (shear, moment) = internal_forces(&radii, &load);
        assert_relative_eq!(shear[0], q * L, max_relative = 1e-9);
        assert_relative_eq!(moment[0], q * L * L / 2.0, max_relative = 1e-6);
        assert_eq!(shear[radii.len() - 1], 0.0);
    }

    #[test]
    fn foreshortening_is_second_order_positive() {
        let (radii, ei, load) = uniform_tables(250.0);
        let sol = solve_bending(&radii, &ei, &load, 50, 0.0).unwrap();
        let s = sol.foreshortening_at(L);
        assert!(s > 0.0);
        assert!(s < sol.tip_deflection());
    }
}
