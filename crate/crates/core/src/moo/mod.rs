//! Multi-objective optimization engine: dominance utilities, a real-coded
//! genetic algorithm and the alpha-sweep Pareto front driver.

mod dominance;
mod ga;
mod sweep;

pub use dominance::{dominates, nondominated_filter};
pub use ga::{
    ga_minimize, ga_minimize_observed, ga_minimize_seeded, GaConfig, GaResult, GenStats,
    Individual, LinearConstraints,
};
pub use sweep::{pareto_sweep, DesignEvaluator, DesignObjectives, ParetoPoint, SweepResult};
