//! Blade design toolkit for horizontal-axis wind turbines.
//!
//! The crate evaluates a rotor blade aerodynamically (blade-element momentum
//! power curve and Weibull-weighted annual energy) and structurally
//! (classical-lamination-theory cross sections, beam deflection, stresses,
//! panel buckling and modal frequencies), then drives a real-coded genetic
//! algorithm over a scalarized mass-vs-energy fitness to trace a Pareto
//! front.
//!
//! Module map:
//! * [`model`] - blade geometry, materials, airfoil polars, wind environment
//!   and the design-vector-to-layup mapping
//! * [`aero`] - BEM annulus solver, rotor performance, power curves and AEP
//! * [`structures`] - laminate homogenization, section properties, beam
//!   statics, buckling and modal analysis
//! * [`objectives`] - penalized mass, scalarized fitness and cost formulas
//! * [`moo`] - dominance utilities, the GA and the alpha-sweep front driver
//! * [`pipeline`] - the composed per-design evaluation used by the optimizer
//! * [`io`] - run configuration, input file parsing and result serialization

pub mod aero;
pub mod error;
pub mod io;
pub mod model;
pub mod moo;
pub mod objectives;
pub mod pipeline;
pub mod structures;

pub use error::{Error, Result};
pub use model::{
    design_vector_to_layup, interpolate_polar, weibull_cdf, weibull_pdf, AirfoilPolar,
    BladeDefinition, DesignVector, Environment, LayupLayout, LayupSchedule, Material, PolarPoint,
    PolarRow, Spacing, Station, StationLayup, Strengths,
};
