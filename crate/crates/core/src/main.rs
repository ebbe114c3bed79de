use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use anomaly_core::cochain::Cochain;
use anomaly_core::cohomology::{cohomology_with_guardrail, coboundary_solve_with_guardrail, cx_triviality_test_with_guardrail, DEFAULT_GUARDRAIL};
use anomaly_core::error::{Error, Result};
use anomaly_core::pipeline::{
    parse_group_arg, pentagon_report, read_json_arg, run_scenario, with_workers, CategoryChoice, CategorySpec,
    CochainSpec, ExplicitCochain, Resolver, Scenario, ScenarioOptions, SCHEMA_VERSION,
};
use anomaly_core::report::{Report, VerifyOptions, DEFAULT_WITNESS_CAP};

/// Group cohomology and exhaustive verification of anomalous actions.
#[derive(Parser)]
#[command(name = "anomaly", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant factors of H^k(G, Z/N).
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_GUARDRAIL)]
        guardrail: usize,
    },
    /// Solve dβ = φ mod N, or test triviality over C^× with --over-cx.
    Trivialize {
        #[arg(long)]
        group: String,
        /// Cochain JSON (inline or a file).
        #[arg(long)]
        cochain: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        over_cx: bool,
        #[arg(long, default_value_t = DEFAULT_GUARDRAIL)]
        guardrail: usize,
    },
    /// Build a scenario from its parts and verify it.
    Pipeline {
        #[command(subcommand)]
        kind: PipelineCmd,
    },
    /// Run a scenario file.
    Verify {
        scenario: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Pentagon (and, with a twist, crossed-product pentagon) of a category file.
    Pentagon {
        #[arg(long)]
        category: String,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// π = c⌣c′ on Q, trivialized on the central extension by c.
    Cup {
        #[arg(long = "Q")]
        quotient: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        c: String,
        #[arg(long)]
        cprime: String,
        #[arg(long)]
        category: Option<String>,
        #[arg(long, default_value = "cup")]
        name: String,
        /// Also write the assembled scenario file here.
        #[arg(long)]
        save: Option<PathBuf>,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(Args, Clone)]
struct RunFlags {
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    witness_cap: Option<usize>,
    #[arg(long)]
    guardrail: Option<usize>,
    /// Print the JSON report instead of the text table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

impl RunFlags {
    fn apply(&self, o: &mut ScenarioOptions) {
        if self.workers.is_some() {
            o.workers = self.workers;
        }
        if let Some(c) = self.witness_cap {
            o.witness_cap = c;
        }
        if let Some(g) = self.guardrail {
            o.guardrail = g;
        }
    }

    fn emit(&self, report: &Report) -> Result<ExitCode> {
        if self.json {
            println!("{}", report.to_json());
        } else {
            print!("{}", report.to_text());
        }
        if let Some(p) = &self.json_out {
            std::fs::write(p, report.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        }
        Ok(ExitCode::from(if report.passed() { 0 } else { 1 }))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Cohomology { group, modulus, degree, guardrail } => {
            let g = Resolver::new(guardrail).group(&parse_group_arg(&group)?)?;
            println!("{}", cohomology_with_guardrail(&g.group, modulus, degree, guardrail)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Trivialize { group, cochain, modulus, over_cx, guardrail } => {
            let res = Resolver::new(guardrail);
            let g = res.group(&parse_group_arg(&group)?)?;
            let phi: Cochain = res.cochain(&read_json_arg::<CochainSpec>(&cochain)?, &g)?;
            if over_cx {
                let trivial = cx_triviality_test_with_guardrail(&phi, guardrail)?;
                println!("{}", if trivial { "trivial over C^x" } else { "nontrivial over C^x" });
                return Ok(ExitCode::from(if trivial { 0 } else { 1 }));
            }
            match coboundary_solve_with_guardrail(&phi, modulus, guardrail)? {
                Some(beta) => {
                    let out = serde_json::to_string_pretty(&ExplicitCochain::from_cochain(&beta)).expect("serializes");
                    println!("{out}");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not a coboundary");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Pipeline { kind: PipelineCmd::Cup { quotient, modulus, c, cprime, category, name, save, run } } => {
            let mut s = Scenario {
                schema: SCHEMA_VERSION.into(),
                name,
                quotient: parse_group_arg(&quotient)?,
                modulus,
                c: read_json_arg(&c)?,
                cprime: read_json_arg(&cprime)?,
                category: match category {
                    Some(p) => read_json_arg::<CategoryChoice>(&p)?,
                    None => CategoryChoice::default(),
                },
                perturbations: Vec::new(),
                options: ScenarioOptions::default(),
            };
            run.apply(&mut s.options);
            if let Some(p) = &save {
                s.save(p)?;
            }
            run.emit(&run_scenario(&s)?)
        }
        Cmd::Verify { scenario, run } => {
            let mut s = Scenario::load(&scenario)?;
            run.apply(&mut s.options);
            run.emit(&run_scenario(&s)?)
        }
        Cmd::Pentagon { category, run } => {
            let spec: CategorySpec = read_json_arg(&category)?;
            let res = Resolver::new(run.guardrail.unwrap_or(DEFAULT_GUARDRAIL));
            let opts = VerifyOptions { witness_cap: run.witness_cap.unwrap_or(DEFAULT_WITNESS_CAP) };
            let report = with_workers(run.workers, || pentagon_report(&spec, &res, &opts))??;
            run.emit(&report)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
