//! Real-coded genetic algorithm with bound and linear taper constraints:
//! tournament selection, blend crossover, annealed Gaussian mutation and
//! elitism. Per-slot RNG streams keyed on (seed, generation, index) make
//! runs bit-identical for a fixed seed regardless of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// GA settings.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub num_gens: usize,
    pub pop_size: usize,
    pub elite_count: usize,
    /// Fraction of non-elite offspring created by crossover.
    pub cross_frac: f64,
    /// Stall tolerance on the best fitness.
    pub ga_tol: f64,
    pub seed: u64,
    /// Terminate when the best fitness improves by less than `ga_tol` over
    /// this many generations; `None` disables stall termination.
    pub stall_gens: Option<usize>,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            num_gens: 100,
            pop_size: 100,
            elite_count: 1,
            cross_frac: 0.5,
            ga_tol: 1e-6,
            seed: 42,
            stall_gens: None,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::Config("population size must be at least 2".into()));
        }
        if !(0.0..=1.0).contains(&self.cross_frac) {
            return Err(Error::Config("crossover fraction must lie in [0, 1]".into()));
        }
        if self.elite_count >= self.pop_size {
            return Err(Error::Config(
                "elite count must be smaller than the population".into(),
            ));
        }
        Ok(())
    }
}

/// One member of the population.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: Vec<f64>,
    pub fitness: f64,
}

/// Per-generation statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenStats {
    pub gen: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
}

/// Result of one GA run.
#[derive(Debug, Clone)]
pub struct GaResult {
    pub best: Individual,
    pub history: Vec<GenStats>,
    pub generations_run: usize,
}

/// Linear inequality constraints `A x <= b` encoding spanwise taper chains
/// (non-increasing values along each index chain), with a deterministic
/// repair: clamp to bounds, then cumulative minimum along each chain.
#[derive(Debug, Clone, Default)]
pub struct LinearConstraints {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    chains: Vec<Vec<usize>>,
}

impl LinearConstraints {
    /// Build taper constraints from index chains: each adjacent pair in a
    /// chain contributes a row `x[k+1] - x[k] <= 0`.
    pub fn from_taper_chains(chains: Vec<Vec<usize>>, dim: usize) -> Result<Self> {
        let mut a = Vec::new();
        for chain in &chains {
            for pair in chain.windows(2) {
                if pair[0] >= dim || pair[1] >= dim {
                    return Err(Error::Config("taper chain index out of range".into()));
                }
                let mut row = vec![0.0; dim];
                row[pair[1]] = 1.0;
                row[pair[0]] = -1.0;
                a.push(row);
            }
        }
        let b = vec![0.0; a.len()];
        Ok(Self { a, b, chains })
    }

    pub fn is_satisfied(&self, x: &[f64], tol: f64) -> bool {
        self.a.iter().zip(&self.b).all(|(row, &bi)| {
            let lhs: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
            lhs <= bi + tol
        })
    }

    /// Project onto the taper constraints by cumulative minimum along each
    /// chain, from the inboard end.
    pub fn repair_in_place(&self, x: &mut [f64]) {
        for chain in &self.chains {
            let mut running = f64::INFINITY;
            for &idx in chain {
                running = running.min(x[idx]);
                x[idx] = running;
            }
        }
    }
}

/// Minimize `fitness_fn` over the bounded box with optional linear
/// constraints. Every candidate is repaired to feasibility before
/// evaluation; identical seeds produce bit-identical results.
pub fn ga_minimize<F>(
    fitness_fn: F,
    bounds: &[(f64, f64)],
    constraints: Option<&LinearConstraints>,
    cfg: &GaConfig,
) -> Result<GaResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    ga_minimize_seeded(fitness_fn, bounds, constraints, cfg, &[], |_, _| {})
}

/// `ga_minimize` with a per-generation observer called sequentially, in
/// index order, after each generation has been evaluated.
pub fn ga_minimize_observed<F, O>(
    fitness_fn: F,
    bounds: &[(f64, f64)],
    constraints: Option<&LinearConstraints>,
    cfg: &GaConfig,
    observer: O,
) -> Result<GaResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
    O: FnMut(usize, &[Individual]),
{
    ga_minimize_seeded(fitness_fn, bounds, constraints, cfg, &[], observer)
}

/// `ga_minimize` with explicit starting designs injected into the initial
/// population (repaired; extras beyond the population size are ignored).
pub fn ga_minimize_seeded<F, O>(
    fitness_fn: F,
    bounds: &[(f64, f64)],
    constraints: Option<&LinearConstraints>,
    cfg: &GaConfig,
    seed_designs: &[Vec<f64>],
    mut observer: O,
) -> Result<GaResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
    O: FnMut(usize, &[Individual]),
{
    cfg.validate()?;
    let dim = bounds.len();
    if dim == 0 {
        return Err(Error::Config("empty search space".into()));
    }
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Config(format!(
                "bounds for variable {i} must be finite with lo < hi"
            )));
        }
    }
    // probe feasibility: the repaired box midpoint must satisfy A x <= b
    {
        let mut probe: Vec<f64> = bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
        repair(&mut probe, bounds, constraints);
        if let Some(c) = constraints {
            if !c.is_satisfied(&probe, 1e-12) {
                return Err(Error::Config(
                    "constraint set admits no repairable point within the bounds".into(),
                ));
            }
        }
    }

    // initial population: injected seed designs first, then per-slot streams
    let mut population: Vec<Vec<f64>> = (0..cfg.pop_size)
        .map(|i| {
            if let Some(seed) = seed_designs.get(i) {
                if seed.len() == dim {
                    let mut x = seed.clone();
                    repair(&mut x, bounds, constraints);
                    return x;
                }
            }
            let mut rng = slot_rng(cfg.seed, 0, i as u64);
            let mut x: Vec<f64> = bounds
                .iter()
                .map(|(lo, hi)| rng.gen_range(*lo..=*hi))
                .collect();
            repair(&mut x, bounds, constraints);
            x
        })
        .collect();

    let evaluate = |pop: &[Vec<f64>]| -> Vec<f64> {
        pop.par_iter().map(|x| fitness_fn(x)).collect()
    };

    let mut fitness = evaluate(&population);
    let mut history = Vec::with_capacity(cfg.num_gens + 1);
    let mut generations_run = 0;

    let snapshot = |pop: &[Vec<f64>], fit: &[f64]| -> Vec<Individual> {
        pop.iter()
            .zip(fit)
            .map(|(x, &f)| Individual {
                x: x.clone(),
                fitness: f,
            })
            .collect()
    };
    observer(0, &snapshot(&population, &fitness));
    push_stats(&mut history, 0, &fitness);

    for gen in 1..=cfg.num_gens {
        generations_run = gen;
        let order = sorted_indices(&fitness);
        let mut next: Vec<Vec<f64>> = order
            .iter()
            .take(cfg.elite_count)
            .map(|&i| population[i].clone())
            .collect();

        // mutation scale follows the population's current spread so the
        // search refines as the population concentrates
        let spread = population_spread(&population, bounds);

        let n_fill = cfg.pop_size - cfg.elite_count;
        let n_cross = ((n_fill as f64) * cfg.cross_frac).floor() as usize;
        for slot in 0..n_fill {
            let mut rng = slot_rng(cfg.seed, gen as u64, slot as u64);
            let p1 = tournament(&fitness, &mut rng);
            let mut child = if slot < n_cross {
                let p2 = tournament(&fitness, &mut rng);
                blend_crossover(&population[p1], &population[p2], bounds, &mut rng)
            } else {
                gaussian_mutation(
                    &population[p1],
                    &spread,
                    anneal_sigma(gen, cfg.num_gens),
                    &mut rng,
                )
            };
            repair(&mut child, bounds, constraints);
            next.push(child);
        }

        population = next;
        fitness = evaluate(&population);
        observer(gen, &snapshot(&population, &fitness));
        push_stats(&mut history, gen, &fitness);

        if let Some(stall) = cfg.stall_gens {
            if stall > 0 && gen >= stall {
                let prev = history[gen - stall].best_fitness;
                let now = history[gen].best_fitness;
                if prev - now < cfg.ga_tol {
                    break;
                }
            }
        }
    }

    let best_idx = sorted_indices(&fitness)[0];
    Ok(GaResult {
        best: Individual {
            x: population[best_idx].clone(),
            fitness: fitness[best_idx],
        },
        history,
        generations_run,
    })
}

/// Deterministic stream for one (generation, slot) pair.
fn slot_rng(seed: u64, gen: u64, slot: u64) -> ChaCha8Rng {
    let mut z = seed
        .wrapping_add(gen.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(slot.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

/// Mutation scale as a fraction of each variable's range, annealed linearly
/// from 10% at the first generation to 1% at the last.
fn anneal_sigma(gen: usize, num_gens: usize) -> f64 {
    if num_gens <= 1 {
        return 0.1;
    }
    let f = (gen - 1) as f64 / (num_gens - 1) as f64;
    0.10 + (0.01 - 0.10) * f
}

fn tournament(fitness: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let n = fitness.len();
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    if better(fitness[a], a, fitness[b], b) {
        a
    } else {
        b
    }
}

/// Total order on (fitness, index) so NaN never wins and ties break low.
fn better(fa: f64, ia: usize, fb: f64, ib: usize) -> bool {
    match (fa.is_nan(), fb.is_nan()) {
        (true, true) => ia < ib,
        (true, false) => false,
        (false, true) => true,
        (false, false) => fa < fb || (fa == fb && ia < ib),
    }
}

fn sorted_indices(fitness: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..fitness.len()).collect();
    idx.sort_by(|&a, &b| {
        if better(fitness[a], a, fitness[b], b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    idx
}

/// BLX-0.5: each coordinate uniform on the parent interval extended by half
/// its width on both sides.
fn blend_crossover(
    p1: &[f64],
    p2: &[f64],
    bounds: &[(f64, f64)],
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    p1.iter()
        .zip(p2)
        .zip(bounds)
        .map(|((&a, &b), &(lo, hi))| {
            let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
            let d = mx - mn;
            let lo_ext = (mn - 0.5 * d).max(lo);
            let hi_ext = (mx + 0.5 * d).min(hi);
            if hi_ext > lo_ext {
                rng.gen_range(lo_ext..=hi_ext)
            } else {
                mn
            }
        })
        .collect()
}

/// Per-variable search spread: the population's value range, floored at a
/// small fraction of the bound width so mutation never dies out entirely.
fn population_spread(population: &[Vec<f64>], bounds: &[(f64, f64)]) -> Vec<f64> {
    (0..bounds.len())
        .map(|j| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for x in population {
                lo = lo.min(x[j]);
                hi = hi.max(x[j]);
            }
            let width = bounds[j].1 - bounds[j].0;
            (hi - lo).max(1e-9 * width)
        })
        .collect()
}

fn gaussian_mutation(
    parent: &[f64],
    spread: &[f64],
    sigma_frac: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    parent
        .iter()
        .zip(spread)
        .map(|(&v, &s)| v + sigma_frac * s * normal_sample(rng))
        .collect()
}

/// Standard normal via Box-Muller.
fn normal_sample(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn repair(x: &mut [f64], bounds: &[(f64, f64)], constraints: Option<&LinearConstraints>) {
    for (v, (lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(*lo, *hi);
    }
    if let Some(c) = constraints {
        c.repair_in_place(x);
        for (v, (lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

fn push_stats(history: &mut Vec<GenStats>, gen: usize, fitness: &[f64]) {
    let finite: Vec<f64> = fitness.iter().copied().filter(|f| f.is_finite()).collect();
    let best = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = if finite.is_empty() {
        f64::NAN
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    history.push(GenStats {
        gen,
        best_fitness: best,
        mean_fitness: mean,
    });
}
