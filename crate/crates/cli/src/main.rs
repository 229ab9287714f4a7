//! Command-line driver: aerodynamic and structural evaluation, single-design
//! fitness, GA optimization and the alpha-sweep Pareto front.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bladeopt_core::error::Error;
use bladeopt_core::io::{self, output, RunCase};
use bladeopt_core::model::DesignVector;
use bladeopt_core::moo::{self, ga_minimize_seeded, nondominated_filter, DesignEvaluator};
use bladeopt_core::objectives::{scalarized_fitness, FitnessConfig, Sense};

#[derive(Parser)]
#[command(
    name = "bladeopt",
    about = "Wind turbine blade design toolkit: BEM performance, composite structures and mass/energy Pareto optimization",
    version
)]
struct Cli {
    /// Run configuration file.
    #[arg(long, global = true, default_value = "run.cfg")]
    config: PathBuf,

    /// Random seed override for the GA.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Power curve and annual energy of the rigid rotor.
    Aero,
    /// Structural report for one design vector.
    Structure(DesignArg),
    /// Penalized mass and scalarized fitness of one design.
    Evaluate(EvaluateArgs),
    /// Single GA run at a fixed scalarization weight.
    Optimize(OptimizeArgs),
    /// Alpha sweep tracing the mass/energy Pareto front.
    Pareto(ParetoArgs),
    /// Non-dominated filter over a CSV of objective rows.
    Front(FrontArgs),
}

#[derive(Args)]
struct DesignArg {
    /// Design vector file; defaults to INITX_FILE when READ_INITX is set,
    /// otherwise the midpoint of the design bounds.
    #[arg(long)]
    design: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    design: DesignArg,
    /// Scalarization weight; requires REF_MASS and REF_AEP in the config.
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Scalarization weight in [0, 1].
    #[arg(long)]
    alpha: f64,
}

#[derive(Args)]
struct ParetoArgs {
    /// Comma-separated alpha values (must include 0); defaults to NumAlpha
    /// evenly spaced values.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
}

#[derive(Args)]
struct FrontArgs {
    /// Input CSV with a header row and numeric objective columns.
    #[arg(long)]
    input: PathBuf,
    /// Optimization sense per column: min or max, comma separated.
    /// Defaults to min for every column.
    #[arg(long, value_delimiter = ',')]
    senses: Option<Vec<String>>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Front(args) => cmd_front(args),
        Command::Aero => {
            let case = load(&cli)?;
            cmd_aero(&cli, &case)
        }
        Command::Structure(args) => {
            let case = load(&cli)?;
            let x = resolve_design(&cli, &case, args.design.as_deref())?;
            cmd_structure(&cli, &case, &x)
        }
        Command::Evaluate(args) => {
            let case = load(&cli)?;
            let x = resolve_design(&cli, &case, args.design.design.as_deref())?;
            cmd_evaluate(&cli, &case, &x, args.alpha)
        }
        Command::Optimize(args) => {
            let case = load(&cli)?;
            cmd_optimize(&cli, &case, args.alpha)
        }
        Command::Pareto(args) => {
            let case = load(&cli)?;
            cmd_pareto(&cli, &case, args.alphas.clone())
        }
    }
}

fn load(cli: &Cli) -> Result<RunCase, Error> {
    let mut case = io::load_case(&cli.config)?;
    if let Some(seed) = cli.seed {
        case.ga.seed = seed;
    }
    if case.config.echo {
        let (_, defaulted) = io::parse_run_config_with_report(&cli.config)?;
        let stem = cli
            .config
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| "run".into());
        let echo = io::echo_config(&case.config, &defaulted);
        output::write_text(&cli.out.join(format!("{stem}.ech")), &echo)?;
    }
    Ok(case)
}

fn resolve_design(
    cli: &Cli,
    case: &RunCase,
    design: Option<&Path>,
) -> Result<Vec<f64>, Error> {
    if let Some(path) = design {
        let vals = io::parse_design_values(path)?;
        let dv = DesignVector::from_flat(&vals, case.system.layout.clone())?;
        return Ok(dv.flatten());
    }
    if let Some(dv) = &case.initial_design {
        return Ok(dv.flatten());
    }
    let _ = cli;
    Ok(case.system.default_design().flatten())
}

fn cmd_aero(cli: &Cli, case: &RunCase) -> Result<(), Error> {
    let curve = case.system.rigid_curve();
    let aep = case.system.rigid_aep()?;
    output::write_performance(&cli.out.join("performance.csv"), curve, case.config.k_fact)?;
    if case.config.write_bed {
        output::write_blade_elements(&cli.out.join("bed.csv"), curve)?;
    }
    let unconverged: usize = curve
        .iter()
        .filter_map(|p| p.performance.as_ref())
        .map(|p| p.annuli.iter().filter(|a| !a.converged).count())
        .sum();
    println!("power curve: {} speeds, AEP = {aep:.1} kWh/yr", curve.len());
    if unconverged > 0 {
        println!("warning: {unconverged} annuli did not reach the induction tolerance");
    }
    println!("wrote {}", cli.out.join("performance.csv").display());
    Ok(())
}

fn cmd_structure(cli: &Cli, case: &RunCase, x: &[f64]) -> Result<(), Error> {
    let eval = case.system.evaluate_design(x)?;
    output::write_structure(&cli.out.join("structure.csv"), &eval.report)?;
    println!(
        "mass = {:.2} kg, tip deflection = {:.4} m (design case V = {} m/s)",
        eval.mass_kg, eval.tip_deflection_m, eval.design_speed
    );
    let freqs: Vec<String> = eval
        .report
        .modal
        .frequencies_rad_s
        .iter()
        .map(|w| format!("{w:.3}"))
        .collect();
    println!("natural frequencies (rad/s): {}", freqs.join(", "));
    println!("wrote {}", cli.out.join("structure.csv").display());
    Ok(())
}

fn cmd_evaluate(cli: &Cli, case: &RunCase, x: &[f64], alpha: Option<f64>) -> Result<(), Error> {
    let eval = case.system.evaluate_design(x)?;
    println!(
        "mass = {:.2} kg, penalized mass = {:.2} kg, AEP = {:.1} kWh/yr, feasible = {}",
        eval.mass_kg, eval.penalized_mass_kg, eval.aep_kwh, eval.feasible
    );
    for (i, p) in eval.penalties.p.iter().enumerate() {
        println!("  p{} = {p:.4}", i + 1);
    }
    if let Some(alpha) = alpha {
        let (m0, aep0) = case.fitness_refs.ok_or_else(|| {
            Error::Config(
                "evaluate --alpha needs REF_MASS and REF_AEP in the configuration".into(),
            )
        })?;
        let cfg = FitnessConfig { alpha, m0, aep0 };
        cfg.validate()?;
        let f = scalarized_fitness(eval.penalized_mass_kg, eval.aep_kwh, &cfg);
        println!("fitness(alpha = {alpha}) = {f}");
    }
    if case.config.write_f_all {
        let mut text = String::from(output::penalty_header());
        text.push_str(&output::penalty_row(
            0,
            eval.mass_kg,
            &eval.penalties,
            eval.penalized_mass_kg,
        ));
        output::write_text(&cli.out.join("penalties.csv"), &text)?;
    }
    Ok(())
}

fn cmd_optimize(cli: &Cli, case: &RunCase, alpha: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Config(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let system = &case.system;
    let bounds = system.bounds();
    let constraints = system.constraints();
    let mut seeds: Vec<Vec<f64>> = vec![system.default_design().flatten()];
    if let Some(dv) = &case.initial_design {
        seeds.insert(0, dv.flatten());
    }

    // references: from the config, or fixed by a pure-energy reference run
    let (m0, aep0) = match case.fitness_refs {
        Some(refs) => refs,
        None if alpha == 0.0 => (1.0, 1.0),
        None => {
            println!("REF_MASS/REF_AEP unset; running the alpha = 0 reference first");
            let r = ga_minimize_seeded(
                |x: &[f64]| match system.evaluate(x) {
                    Ok(obj) => -obj.aep_kwh,
                    Err(_) => f64::INFINITY,
                },
                &bounds,
                constraints.as_ref(),
                &case.ga,
                &seeds,
                |_, _| {},
            )?;
            let obj = system.evaluate(&r.best.x)?;
            println!(
                "reference: M0 = {:.2} kg, AEP0 = {:.1} kWh/yr",
                obj.penalized_mass_kg, obj.aep_kwh
            );
            (obj.penalized_mass_kg, obj.aep_kwh)
        }
    };
    let fit_cfg = FitnessConfig { alpha, m0, aep0 };

    // per-evaluation logging when the write flags are set
    let mut penalty_rows = String::from(output::penalty_header());
    let mut x_rows = String::new();
    let mut iter_rows = String::new();
    let log_evals = case.config.write_f_all || case.config.write_x_all;
    let pop = case.ga.pop_size;

    let result = {
        let observer = |gen: usize, individuals: &[moo::Individual]| {
            if log_evals {
                for (i, ind) in individuals.iter().enumerate() {
                    let eval_id = gen * pop + i;
                    if case.config.write_f_all {
                        if let Ok(e) = system.evaluate_design(&ind.x) {
                            penalty_rows.push_str(&output::penalty_row(
                                eval_id,
                                e.mass_kg,
                                &e.penalties,
                                ind.fitness,
                            ));
                        }
                    }
                    if case.config.write_x_all {
                        x_rows.push_str(&format!("{eval_id},{}\n", join_row(&ind.x)));
                    }
                }
            }
            if case.config.write_x_iter {
                if let Some(best) = individuals
                    .iter()
                    .min_by(|a, b| a.fitness.partial_cmp(&b.fitness).unwrap_or(std::cmp::Ordering::Equal))
                {
                    iter_rows.push_str(&format!("{gen},{}\n", join_row(&best.x)));
                }
            }
        };
        ga_minimize_seeded(
            |x: &[f64]| match system.evaluate(x) {
                Ok(obj) => {
                    if alpha == 0.0 && case.fitness_refs.is_none() {
                        -obj.aep_kwh
                    } else {
                        scalarized_fitness(obj.penalized_mass_kg, obj.aep_kwh, &fit_cfg)
                    }
                }
                Err(_) => f64::INFINITY,
            },
            &bounds,
            constraints.as_ref(),
            &case.ga,
            &seeds,
            observer,
        )?
    };

    let obj = system.evaluate(&result.best.x)?;
    println!(
        "best: fitness = {}, mass = {:.2} kg, AEP = {:.1} kWh/yr, feasible = {}",
        result.best.fitness, obj.mass_kg, obj.aep_kwh, obj.feasible
    );
    output::write_history(
        &cli.out.join(format!("history_alpha_{alpha}.csv")),
        &result.history,
    )?;
    output::write_design_vector(&cli.out.join("best_design.dat"), &result.best.x)?;
    if case.config.write_f_all {
        output::write_text(&cli.out.join("penalties.csv"), &penalty_rows)?;
    }
    if case.config.write_x_all {
        output::write_text(
            &cli.out.join("designs_all.csv"),
            &format!("eval_id,x...\n{x_rows}"),
        )?;
    }
    if case.config.write_x_iter {
        output::write_text(
            &cli.out.join("designs_iter.csv"),
            &format!("gen,x...\n{iter_rows}"),
        )?;
    }
    println!("wrote {}", cli.out.join("best_design.dat").display());
    Ok(())
}

fn cmd_pareto(cli: &Cli, case: &RunCase, alphas: Option<Vec<f64>>) -> Result<(), Error> {
    let alphas = alphas.unwrap_or_else(|| case.alphas.clone());
    let sweep = moo::pareto_sweep(&case.system, &alphas, &case.ga)?;

    println!(
        "references from alpha = 0: M0 = {:.2} kg, AEP0 = {:.1} kWh/yr",
        sweep.m0, sweep.aep0
    );
    println!("front ({} points):", sweep.front.len());
    println!("  alpha     mass_kg       aep_kWh  feasible");
    for p in &sweep.front {
        println!(
            "  {:<7} {:>10.2} {:>13.1}  {}",
            p.alpha, p.mass_kg, p.aep_kwh, p.feasible
        );
    }

    output::write_front_csv(&cli.out.join("front.csv"), &sweep.front)?;
    output::write_front_dat(&cli.out.join("front.dat"), &sweep.front)?;
    let mut all = String::from("alpha,mass_kg,aep_kWh,fitness,feasible\n");
    for p in &sweep.bests {
        all.push_str(&format!(
            "{},{},{},{},{}\n",
            p.alpha, p.mass_kg, p.aep_kwh, p.fitness, p.feasible
        ));
    }
    output::write_text(&cli.out.join("bests.csv"), &all)?;
    for (alpha, history) in &sweep.histories {
        output::write_history(
            &cli.out.join(format!("history_alpha_{alpha}.csv")),
            history,
        )?;
    }
    for (i, p) in sweep.front.iter().enumerate() {
        output::write_design_vector(&cli.out.join(format!("front_x_{i}.dat")), &p.x)?;
    }
    println!(
        "wrote {} and {}",
        cli.out.join("front.csv").display(),
        cli.out.join("front.dat").display()
    );
    Ok(())
}

fn cmd_front(args: &FrontArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.input.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("input CSV is empty".into()))?;
    let n_cols = header.split(',').count();

    let senses: Vec<Sense> = match &args.senses {
        Some(list) => {
            if list.len() != n_cols {
                return Err(Error::Config(format!(
                    "--senses lists {} entries but the CSV has {n_cols} columns",
                    list.len()
                )));
            }
            list.iter()
                .map(|s| match s.to_ascii_lowercase().as_str() {
                    "min" => Ok(Sense::Minimize),
                    "max" => Ok(Sense::Maximize),
                    other => Err(Error::Config(format!(
                        "sense must be 'min' or 'max', got '{other}'"
                    ))),
                })
                .collect::<Result<_, _>>()?
        }
        None => vec![Sense::Minimize; n_cols],
    };

    let mut rows: Vec<&str> = Vec::new();
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| Error::ConfigLine {
                    path: args.input.display().to_string(),
                    line: i + 2,
                    msg: format!("bad number '{f}'"),
                })
            })
            .collect::<Result<_, _>>()?;
        if vals.len() != n_cols {
            return Err(Error::ConfigLine {
                path: args.input.display().to_string(),
                line: i + 2,
                msg: format!("expected {n_cols} columns, found {}", vals.len()),
            });
        }
        rows.push(line);
        points.push(vals);
    }
    let keep = nondominated_filter(&points, &senses)?;
    let mut out = String::from(header);
    out.push('\n');
    for &i in &keep {
        out.push_str(rows[i]);
        out.push('\n');
    }
    match &args.output {
        Some(path) => output::write_text(path, &out)?,
        None => print!("{out}"),
    }
    Ok(())
}

fn join_row(x: &[f64]) -> String {
    x.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
