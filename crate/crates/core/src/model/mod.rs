//! Blade geometry, materials, airfoil polars and the wind environment.

mod design;
mod layup;
mod polar;
mod wind;

pub use design::{DesignVector, LayupLayout};
pub use layup::{design_vector_to_layup, LayupSchedule, StationLayup};
pub use polar::{interpolate_polar, AirfoilPolar, PolarPoint, PolarRow};
pub use wind::{weibull_cdf, weibull_pdf};

use crate::error::{Error, Result};

/// Spanwise distribution of blade stations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Equal,
    Cosine,
}

/// One blade cross section.
#[derive(Debug, Clone, PartialEq)]
pub struct Station {
    pub radius_m: f64,
    pub chord_m: f64,
    pub twist_deg: f64,
    /// Chordwise location of the pitch axis as a fraction of chord.
    pub pitch_axis_fraction: f64,
    pub airfoil_id: String,
}

/// Rotor blade geometry: spanwise stations from the root cross section out to
/// the tip, plus rotor-level data.
#[derive(Debug, Clone, PartialEq)]
pub struct BladeDefinition {
    /// Radius of the blade tip measured from the rotation axis (m).
    pub tip_radius_m: f64,
    pub hub_radius_m: f64,
    pub stations: Vec<Station>,
    pub num_blades: usize,
    pub spacing: Spacing,
}

impl BladeDefinition {
    pub fn new(
        tip_radius_m: f64,
        hub_radius_m: f64,
        stations: Vec<Station>,
        num_blades: usize,
        spacing: Spacing,
    ) -> Result<Self> {
        let blade = Self {
            tip_radius_m,
            hub_radius_m,
            stations,
            num_blades,
            spacing,
        };
        blade.validate()?;
        Ok(blade)
    }

    pub fn num_sections(&self) -> usize {
        self.stations.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.stations.len() < 2 {
            return Err(Error::Config("blade needs at least 2 stations".into()));
        }
        if self.num_blades == 0 {
            return Err(Error::Config("number of blades must be positive".into()));
        }
        if !(self.hub_radius_m > 0.0 && self.tip_radius_m > self.hub_radius_m) {
            return Err(Error::Config(format!(
                "hub radius {} and tip radius {} are inconsistent",
                self.hub_radius_m, self.tip_radius_m
            )));
        }
        if self.stations[0].radius_m < self.hub_radius_m - 1e-12 {
            return Err(Error::Config(format!(
                "first station radius {} is inside the hub radius {}",
                self.stations[0].radius_m, self.hub_radius_m
            )));
        }
        for (i, st) in self.stations.iter().enumerate() {
            if st.chord_m <= 0.0 {
                return Err(Error::Config(format!(
                    "station {}: chord must be positive, got {}",
                    i + 1,
                    st.chord_m
                )));
            }
            if !(0.0..=1.0).contains(&st.pitch_axis_fraction) {
                return Err(Error::Config(format!(
                    "station {}: pitch axis fraction {} outside [0, 1]",
                    i + 1,
                    st.pitch_axis_fraction
                )));
            }
            if i > 0 && st.radius_m <= self.stations[i - 1].radius_m {
                return Err(Error::Config(format!(
                    "station radii must be strictly increasing at station {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Cosine- or equal-spaced station radii between hub and tip.
    pub fn spaced_radii(num_sections: usize, hub: f64, tip: f64, spacing: Spacing) -> Vec<f64> {
        let n = num_sections;
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                let s = match spacing {
                    Spacing::Equal => f,
                    Spacing::Cosine => 0.5 * (1.0 - (std::f64::consts::PI * f).cos()),
                };
                hub + (tip - hub) * s
            })
            .collect()
    }
}

/// Lamina strength limits (Pa).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strengths {
    pub sigma11_ft: f64,
    pub sigma11_fc: f64,
    pub sigma22_ft: f64,
    pub sigma22_fc: f64,
    pub tau12_y: f64,
}

/// Orthotropic lamina material.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    pub e11: f64,
    pub e22: f64,
    pub g12: f64,
    pub nu12: f64,
    pub rho: f64,
    pub strengths: Strengths,
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        if self.e11 <= 0.0 || self.e22 <= 0.0 || self.g12 <= 0.0 {
            return Err(Error::Config(format!(
                "material {}: moduli must be positive",
                self.name
            )));
        }
        if !(self.nu12 > 0.0 && self.nu12 < 0.5) {
            return Err(Error::Config(format!(
                "material {}: nu12 must lie in (0, 0.5), got {}",
                self.name, self.nu12
            )));
        }
        if self.rho <= 0.0 {
            return Err(Error::Config(format!(
                "material {}: density must be positive",
                self.name
            )));
        }
        let s = &self.strengths;
        if s.sigma11_ft <= 0.0
            || s.sigma11_fc <= 0.0
            || s.sigma22_ft <= 0.0
            || s.sigma22_fc <= 0.0
            || s.tau12_y <= 0.0
        {
            return Err(Error::Config(format!(
                "material {}: all strengths must be positive",
                self.name
            )));
        }
        Ok(())
    }
}

/// Site and fluid environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    pub fluid_density: f64,
    pub gravity: f64,
    pub weibull_k: f64,
    pub weibull_c: f64,
    pub u_mean: f64,
    pub kinematic_viscosity: f64,
    pub shear_exponent: f64,
    pub v_cut_in: f64,
    pub v_cut_out: f64,
}

impl Default for Environment {
    fn default() -> Self {
        Self {
            fluid_density: 1.225,
            gravity: 9.81,
            weibull_k: 1.91,
            weibull_c: 6.8,
            u_mean: 6.03,
            kinematic_viscosity: 1.464e-5,
            shear_exponent: 0.0,
            v_cut_in: 3.0,
            v_cut_out: 25.0,
        }
    }
}

impl Environment {
    pub fn validate(&self) -> Result<()> {
        if self.fluid_density <= 0.0
            || self.gravity <= 0.0
            || self.weibull_k <= 0.0
            || self.weibull_c <= 0.0
        {
            return Err(Error::Config(
                "density, gravity and Weibull parameters must be positive".into(),
            ));
        }
        if self.v_cut_in >= self.v_cut_out {
            return Err(Error::Config(format!(
                "cut-in speed {} must be below cut-out speed {}",
                self.v_cut_in, self.v_cut_out
            )));
        }
        Ok(())
    }
}
