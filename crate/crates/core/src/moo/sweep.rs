//! Alpha-sweep driver: runs the GA once per scalarization weight, fixes the
//! reference mass and energy from the pure-energy run, and filters the
//! collected bests into a Pareto front.

use rayon::prelude::*;

use super::dominance::nondominated_filter;
use super::ga::{ga_minimize_seeded, GaConfig, GenStats, LinearConstraints};
use crate::error::{Error, Result};
use crate::objectives::{scalarized_fitness, FitnessConfig, Sense};

/// Objective values of one evaluated design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignObjectives {
    pub mass_kg: f64,
    /// Mass multiplied by the squared penalty product; the mass term of the
    /// scalarized fitness.
    pub penalized_mass_kg: f64,
    pub aep_kwh: f64,
    /// True when every penalty ratio is within its limit.
    pub feasible: bool,
}

/// A design evaluation pipeline the sweep can drive.
pub trait DesignEvaluator: Sync {
    fn evaluate(&self, x: &[f64]) -> Result<DesignObjectives>;
    fn bounds(&self) -> Vec<(f64, f64)>;
    fn constraints(&self) -> Option<LinearConstraints>;
}

/// One point of the mass/energy trade-off.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoPoint {
    pub alpha: f64,
    pub mass_kg: f64,
    pub aep_kwh: f64,
    pub fitness: f64,
    pub x: Vec<f64>,
    pub feasible: bool,
}

/// Full sweep output: the non-dominated front plus per-alpha diagnostics.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Non-dominated subset of the per-alpha bests, sorted by mass
    /// ascending.
    pub front: Vec<ParetoPoint>,
    /// Best design of every alpha run, in alpha order.
    pub bests: Vec<ParetoPoint>,
    /// GA history per alpha run, in alpha order.
    pub histories: Vec<(f64, Vec<GenStats>)>,
    /// Reference mass fixed by the alpha = 0 run (kg).
    pub m0: f64,
    /// Reference energy fixed by the alpha = 0 run (kWh/yr).
    pub aep0: f64,
}

/// Deterministic compass-search refinement of a GA best: coordinate moves
/// with a geometrically shrinking step, candidates repaired to feasibility
/// before evaluation. Stabilizes the per-alpha optima so the assembled front
/// reflects the alpha structure rather than run-to-run scatter.
fn polish<F>(
    fitness_fn: &F,
    x0: Vec<f64>,
    f0: f64,
    bounds: &[(f64, f64)],
    constraints: Option<&LinearConstraints>,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let repair = |x: &mut Vec<f64>| {
        for (v, (lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(*lo, *hi);
        }
        if let Some(c) = constraints {
            let mut y = x.clone();
            // reuse the taper repair through a throwaway check/repair cycle
            if !c.is_satisfied(&y, 1e-12) {
                c.repair_in_place(&mut y);
                for (v, (lo, hi)) in y.iter_mut().zip(bounds) {
                    *v = v.clamp(*lo, *hi);
                }
            }
            *x = y;
        }
    };
    let mut best_x = x0;
    let mut best_f = f0;
    let mut step = 0.02;
    let mut sweeps = 0;
    while step > 1e-4 && sweeps < 48 {
        sweeps += 1;
        let mut improved = false;
        for i in 0..bounds.len() {
            let width = bounds[i].1 - bounds[i].0;
            for dir in [1.0, -1.0] {
                let mut cand = best_x.clone();
                cand[i] += dir * step * width;
                repair(&mut cand);
                if cand == best_x {
                    continue;
                }
                let f = fitness_fn(&cand);
                if f < best_f {
                    best_x = cand;
                    best_f = f;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best_x, best_f)
}

/// Run the scalarized optimization for every alpha and assemble the front.
///
/// The alpha = 0 run (pure energy maximization) goes first and fixes the
/// reference mass and energy; the remaining runs then minimize
/// `alpha * M/M0 + (alpha - 1) * AEP/AEP0`, each followed by a deterministic
/// local polish. Each alpha runs with its own deterministic seed stream so
/// the sweep parallelizes without changing results.
pub fn pareto_sweep<E: DesignEvaluator>(
    evaluator: &E,
    alphas: &[f64],
    cfg: &GaConfig,
) -> Result<SweepResult> {
    if alphas.is_empty() {
        return Err(Error::Config("alpha sweep needs at least one value".into()));
    }
    if alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
        return Err(Error::Config("alpha values must lie in [0, 1]".into()));
    }
    let zero_idx = alphas
        .iter()
        .position(|&a| a == 0.0)
        .ok_or_else(|| Error::Config("alpha sweep must include 0 (reference run)".into()))?;

    let bounds = evaluator.bounds();
    let constraints = evaluator.constraints();
    let midpoint: Vec<f64> = bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
    let seeds = [midpoint];

    // reference run: maximize energy alone
    let run_cfg = |idx: usize| GaConfig {
        seed: cfg.seed.wrapping_add((idx as u64).wrapping_mul(0x9e37_79b9)),
        ..cfg.clone()
    };
    let ref_fitness = |x: &[f64]| match evaluator.evaluate(x) {
        Ok(obj) => -obj.aep_kwh,
        Err(_) => f64::INFINITY,
    };
    let mut ref_result = ga_minimize_seeded(
        &ref_fitness,
        &bounds,
        constraints.as_ref(),
        &run_cfg(zero_idx),
        &seeds,
        |_, _| {},
    )?;
    if !ref_result.best.fitness.is_finite() {
        return Err(Error::Numerical(
            "alpha = 0 reference run produced no usable design".into(),
        ));
    }
    let (bx, bf) = polish(
        &ref_fitness,
        ref_result.best.x,
        ref_result.best.fitness,
        &bounds,
        constraints.as_ref(),
    );
    ref_result.best.x = bx;
    ref_result.best.fitness = bf;
    let ref_obj = evaluator.evaluate(&ref_result.best.x)?;
    let m0 = ref_obj.penalized_mass_kg;
    let aep0 = ref_obj.aep_kwh;
    if m0 <= 0.0 || aep0 <= 0.0 {
        return Err(Error::Numerical(format!(
            "reference run fixed non-positive references: M0 = {m0}, AEP0 = {aep0}"
        )));
    }

    // one independent GA run per remaining alpha, each refined by the
    // deterministic polish, in parallel with per-alpha seed streams
    let runs: Vec<Result<(f64, Vec<GenStats>, ParetoPoint)>> = alphas
        .par_iter()
        .enumerate()
        .map(|(idx, &alpha)| {
            let fit_cfg = FitnessConfig { alpha, m0, aep0 };
            if idx == zero_idx {
                let fitness = scalarized_fitness(m0, aep0, &fit_cfg);
                return Ok((
                    alpha,
                    ref_result.history.clone(),
                    ParetoPoint {
                        alpha,
                        mass_kg: ref_obj.mass_kg,
                        aep_kwh: ref_obj.aep_kwh,
                        fitness,
                        x: ref_result.best.x.clone(),
                        feasible: ref_obj.feasible,
                    },
                ));
            }
            let fitness = |x: &[f64]| match evaluator.evaluate(x) {
                Ok(obj) => scalarized_fitness(obj.penalized_mass_kg, obj.aep_kwh, &fit_cfg),
                Err(_) => f64::INFINITY,
            };
            let result = ga_minimize_seeded(
                &fitness,
                &bounds,
                constraints.as_ref(),
                &run_cfg(idx),
                &seeds,
                |_, _| {},
            )
            .map_err(|e| Error::Numerical(format!("alpha = {alpha}: {e}")))?;
            if !result.best.fitness.is_finite() {
                return Err(Error::Numerical(format!(
                    "alpha = {alpha}: optimization produced no usable design"
                )));
            }
            let (bx, bf) = polish(
                &fitness,
                result.best.x,
                result.best.fitness,
                &bounds,
                constraints.as_ref(),
            );
            let obj = evaluator
                .evaluate(&bx)
                .map_err(|e| Error::Numerical(format!("alpha = {alpha}: {e}")))?;
            Ok((
                alpha,
                result.history,
                ParetoPoint {
                    alpha,
                    mass_kg: obj.mass_kg,
                    aep_kwh: obj.aep_kwh,
                    fitness: bf,
                    x: bx,
                    feasible: obj.feasible,
                },
            ))
        })
        .collect();

    let mut histories = Vec::with_capacity(alphas.len());
    let mut bests = Vec::with_capacity(alphas.len());
    for run in runs {
        let (alpha, history, point) = run?;
        histories.push((alpha, history));
        bests.push(point);
    }

    // non-dominated subset under (min mass, max AEP), sorted by mass
    let objectives: Vec<Vec<f64>> = bests.iter().map(|p| vec![p.mass_kg, p.aep_kwh]).collect();
    let senses = [Sense::Minimize, Sense::Maximize];
    let keep = nondominated_filter(&objectives, &senses)?;
    let mut front: Vec<ParetoPoint> = keep.into_iter().map(|i| bests[i].clone()).collect();
    front.sort_by(|a, b| a.mass_kg.partial_cmp(&b.mass_kg).unwrap());

    Ok(SweepResult {
        front,
        bests,
        histories,
        m0,
        aep0,
    })
}
