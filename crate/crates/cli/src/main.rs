use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cosetcx::catalog::{build_named, report, verify, Check, ExampleSpec, NamedExample, Report, VerifyOptions, EXAMPLE_NAMES};
use cosetcx::fundgroup::ConnectivityBudget;
use cosetcx::homology::{reduced_homology, Coefficients};
use cosetcx::permgroup::DEFAULT_ELEMENT_CAP;

/// Exit code for errors; 1 and 2 are reserved for unexpected verdicts.
const ERROR_EXIT: u8 = 3;

#[derive(Parser)]
#[command(name = "cosetcx", version, about = "Coset complexes, Cohen-Macaulay certificates and higher generation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficients for homology and Cohen-Macaulay checks: z or f<p> (f2, f3, f5, ...)
    #[arg(long, global = true, default_value = "z")]
    coeff: Coefficients,
    /// Write the JSON report to this path (`-` for stdout)
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Step budget for Tietze simplification and node budget for quotient search
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Cap on enumerated group elements
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
    /// Exploration seed. Checks run sequentially, so results never depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Leave wall-clock timings out of the JSON report, for byte-reproducible output
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an example and print its summary
    Build {
        example: String,
        /// Print the facets in the facet-list format
        #[arg(long)]
        facets: bool,
    },
    /// Reduced homology of an example
    Homology { example: String },
    /// Run one check: cm, homotopy-cm, generation, thm2.9, thm2.11, thm3.2, cor3.3, weyl, lemma2.7, walker
    Verify {
        example: String,
        check: String,
        /// Generation degree (generation) or Levi rank (cor3.3)
        #[arg(long)]
        m: Option<i64>,
    },
    /// Homology and every applicable check
    Report { example: String },
    /// List the named examples and checks
    List,
}

fn options(cli: &Cli, m: Option<i64>) -> VerifyOptions {
    let mut budget = ConnectivityBudget::default();
    if let Some(b) = cli.budget {
        budget.tietze.steps = b;
        budget.quotient_nodes = b;
    }
    VerifyOptions { coefficients: cli.coeff, budget, m, timings: !cli.no_timings }
}

fn write_json(cli: &Cli, r: &Report) -> Result<(), String> {
    match &cli.json {
        None => Ok(()),
        Some(p) if p.as_os_str() == "-" => {
            print!("{}", r.to_json());
            Ok(())
        }
        Some(p) => std::fs::write(p, r.to_json()).map_err(|e| format!("{}: {e}", p.display())),
    }
}

/// With `--json -` stdout carries only the JSON document.
fn json_to_stdout(cli: &Cli) -> bool {
    cli.json.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

fn summary(ex: &NamedExample) {
    println!("example: {}", ex.name());
    if let Some(g) = &ex.group {
        println!("group order: {}", g.order());
    }
    if let Some(f) = &ex.family {
        println!("family orders: {:?}", f.members().iter().map(|h| h.order()).collect::<Vec<_>>());
    }
    println!("dimension: {}", ex.complex.dim());
    println!("f-vector: {:?}", ex.complex.f_vector());
    if ex.best_effort {
        println!("note: parameters outside the certified range; results are best effort");
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let text = !json_to_stdout(cli);
    let load = |name: &str| -> Result<NamedExample, String> {
        let spec: ExampleSpec = name.parse().map_err(|e| format!("{e}"))?;
        build_named(&spec, cli.cap).map_err(|e| format!("{e}"))
    };
    match &cli.command {
        Command::List => {
            println!("examples: {}", EXAMPLE_NAMES.join(", "));
            println!("checks: {}", Check::ALL.iter().map(|c| c.name()).collect::<Vec<_>>().join(", "));
            Ok(0)
        }
        Command::Build { example, facets } => {
            let ex = load(example)?;
            if text {
                summary(&ex);
            }
            if *facets && text {
                print!("{}", ex.complex.to_facet_text());
            }
            write_json(cli, &Report::new(&ex))?;
            Ok(0)
        }
        Command::Homology { example } => {
            let ex = load(example)?;
            let h = reduced_homology(&ex.complex, cli.coeff);
            if text {
                print!("{h}");
            }
            let mut r = Report::new(&ex);
            r.homology = Some(h);
            write_json(cli, &r)?;
            Ok(0)
        }
        Command::Verify { example, check, m } => {
            let ex = load(example)?;
            let check: Check = check.parse().map_err(|e| format!("{e}"))?;
            if !check.applies_to(&ex) {
                return Err(format!("check `{check}` does not apply to {}", ex.name()));
            }
            let c = verify(&ex, check, &options(cli, *m)).map_err(|e| format!("{e}"))?;
            let expected = c.expected.map_or("none".to_string(), |s| s.to_string());
            if text {
                println!("{} {} [{}]: {}", ex.name(), c.check, c.coefficients, c.verdict);
                println!("expected: {expected}");
            }
            let mut r = Report::new(&ex);
            r.checks.push(c);
            write_json(cli, &r)?;
            Ok(r.exit_code() as u8)
        }
        Command::Report { example } => {
            let ex = load(example)?;
            let r = report(&ex, &options(cli, None)).map_err(|e| format!("{e}"))?;
            if text {
                summary(&ex);
                if let Some(h) = &r.homology {
                    print!("{h}");
                }
                for c in &r.checks {
                    let expected = c.expected.map_or("-".to_string(), |s| s.to_string());
                    println!("{:<12} {:<9} expected {:<9} {}", c.check, c.verdict.status().to_string(), expected, c.verdict);
                }
            }
            write_json(cli, &r)?;
            Ok(r.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ERROR_EXIT } else { 0 });
        }
    };
    let _ = cli.seed;
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
