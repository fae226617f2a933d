//! `vrp`: generate, solve, compare and plot capacitated routing instances.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vrp_core::clustering::DbscanParams;
use vrp_core::exact::{solve_exact, DEFAULT_NODE_LIMIT};
use vrp_core::pipeline::{
    cluster_first_route_second, emit_svg, run_compare, CompareOptions, ComparisonReport, MethodStatus,
};
use vrp_core::savings::clarke_wright;
use vrp_core::{
    build_distance_matrix, check_solution_feasibility, generate_instance, DistanceMatrix, Error, ErrorCategory,
    GeneratorConfig, Instance, Method, Solution,
};

#[derive(Parser)]
#[command(name = "vrp", version, about = "Capacitated vehicle routing solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        capacity: f64,
        /// Demand range as lo:hi.
        #[arg(long, value_parser = parse_range)]
        demand: (f64, f64),
        /// Coordinate range as lo:hi, applied to both axes.
        #[arg(long, value_parser = parse_range)]
        coord: (f64, f64),
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance with one method and write the solution.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        method: Method,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run several methods on one instance and report cost, route count and time.
    Compare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "savings,cluster-route,exact")]
        methods: Vec<Method>,
        #[command(flatten)]
        tuning: Tuning,
        /// Print the report as one JSON object.
        #[arg(long)]
        json: bool,
    },
    /// Render a solution as SVG.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Tuning {
    /// Clustering radius (default: twice the mean nearest-neighbour distance).
    #[arg(long)]
    eps: Option<f64>,
    /// Neighbourhood demand needed to seed a cluster (default: smallest demand).
    #[arg(long = "min-wt")]
    min_wt: Option<f64>,
    /// Demand ceiling per cluster (default: vehicle capacity).
    #[arg(long = "max-wt")]
    max_wt: Option<f64>,
    /// Branch-and-bound node budget for the exact solver.
    #[arg(long = "node-limit", default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
}

impl Tuning {
    fn dbscan(&self, instance: &Instance, matrix: &DistanceMatrix) -> DbscanParams {
        DbscanParams::with_defaults(instance, matrix, self.eps, self.min_wt, self.max_wt)
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

fn solve(instance: &Instance, matrix: &DistanceMatrix, method: Method, tuning: &Tuning) -> vrp_core::Result<Solution> {
    let solution = match method {
        Method::Savings => clarke_wright(instance, matrix)?,
        Method::ClusterRoute => cluster_first_route_second(instance, &tuning.dbscan(instance, matrix), matrix)?,
        Method::Exact => solve_exact(instance, matrix, tuning.node_limit)?,
    };
    let violations = check_solution_feasibility(&solution, instance, matrix);
    if !violations.is_empty() {
        return Err(Error::Internal(Error::InfeasibleSolution(violations).to_string()));
    }
    Ok(solution)
}

fn print_report(report: &ComparisonReport) {
    println!(
        "instance {} ({} customers, capacity {})",
        report.instance, report.customers, report.capacity
    );
    println!(
        "{:<14} {:>14} {:>7} {:>12}  notes",
        "method", "cost", "routes", "time [ms]"
    );
    for r in &report.records {
        match &r.status {
            MethodStatus::Solved => {
                let mut notes = Vec::new();
                if r.cheapest {
                    notes.push("cheapest");
                }
                if r.fewest_routes {
                    notes.push("fewest routes");
                }
                if r.optimal == Some(false) {
                    notes.push("node limit hit, not proven optimal");
                }
                println!(
                    "{:<14} {:>14.4} {:>7} {:>12.3}  {}",
                    r.method.as_str(),
                    r.total_cost.unwrap_or(f64::NAN),
                    r.route_count.unwrap_or(0),
                    r.wall_time_ms,
                    notes.join(", ")
                );
            }
            MethodStatus::Skipped { reason } => {
                println!(
                    "{:<14} {:>14} {:>7} {:>12}  skipped: {reason}",
                    r.method.as_str(),
                    "-",
                    "-",
                    "-"
                );
            }
        }
    }
}

fn run(cli: Cli) -> vrp_core::Result<()> {
    match cli.command {
        Command::Gen {
            seed,
            n,
            capacity,
            demand,
            coord,
            out,
        } => {
            let instance = generate_instance(&GeneratorConfig {
                seed,
                n,
                capacity,
                demand_range: demand,
                coord_range: coord,
            })?;
            instance.save(out)
        }
        Command::Solve {
            input,
            method,
            tuning,
            out,
        } => {
            let instance = Instance::load(input)?;
            let matrix = build_distance_matrix(&instance);
            solve(&instance, &matrix, method, &tuning)?.save(out)
        }
        Command::Compare {
            input,
            methods,
            tuning,
            json,
        } => {
            let instance = Instance::load(input)?;
            let matrix = build_distance_matrix(&instance);
            let options = CompareOptions {
                methods,
                dbscan: tuning.dbscan(&instance, &matrix),
                node_limit: tuning.node_limit,
            };
            let report = run_compare(&instance, &matrix, &options)?;
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                print_report(&report);
            }
            Ok(())
        }
        Command::Plot { input, solution, out } => {
            let instance = Instance::load(input)?;
            let solution = Solution::load(solution)?;
            std::fs::write(out, emit_svg(&solution, &instance)?)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.category() {
                ErrorCategory::InvalidInput => 1,
                ErrorCategory::SizeLimit => 2,
                ErrorCategory::Internal => 3,
            })
        }
    }
}
