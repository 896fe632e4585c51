use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use catgw_core::potential::{potential_for, verify, Splitting, Suite};
use catgw_core::qmod::{parse_form_fraction, QSeries};
use catgw_core::ribbon::solve_qme_chi_minus1;
use catgw_core::solver::{solve_lift, LiftMode};
use catgw_core::hoch::chain_to_json;

#[derive(Parser)]
#[command(name = "catgw", about = "Exact categorical Gromov-Witten engine for the elliptic curve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplittingArg {
    Gm,
    Mod,
    #[value(name = "alpha-prime")]
    AlphaPrime,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Gm,
    Mod,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the genus-one potential for a chosen splitting.
    Potential {
        #[arg(long, value_enum)]
        splitting: SplittingArg,
        /// Also print the q-expansion to this order.
        #[arg(long)]
        qorder: Option<usize>,
        /// Emit a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite; exit code 0 iff all checks pass.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        suite: SuiteArg,
        #[arg(long)]
        json: bool,
    },
    /// q-expand a holomorphic form-fraction expression.
    Qexp {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Print the solved string vertices and the master-equation residual.
    Qme,
    /// Solve the lifting system and write the chain as JSON.
    SolveLift {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 9)]
        max_len: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> catgw_core::Result<ExitCode> {
    match cli.command {
        Command::Potential { splitting, qorder, json } => {
            let (s, _) = catgw_core::potential::standard_structures(9)?;
            let splitting = match splitting {
                SplittingArg::Gm => Splitting::Gm,
                SplittingArg::Mod => Splitting::Mod,
                SplittingArg::AlphaPrime => Splitting::AlphaPrime,
            };
            let rep = potential_for(&s, splitting, qorder)?;
            if json {
                let v = serde_json::json!({
                    "splitting": rep.splitting.as_str(),
                    "F": format!("{}", rep.f),
                    "F_raw": format!("{}", rep.f_raw),
                    "T2": format!("{}", rep.t2_term),
                    "mukai": format!("{}", rep.mukai_term),
                    "defect": format!("{}", rep.correction),
                    "q_expansion": rep.q_expansion.as_ref().map(|s| format!("{}", s)),
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("splitting : {}", rep.splitting.as_str());
                println!("T2        : {}", rep.t2_term);
                println!("<a,xi>    : {}", rep.mukai_term);
                println!("defect    : {}", rep.correction);
                println!("F (raw)   : {}", rep.f_raw);
                println!("F (flat)  : {}", rep.f);
                if let Some(q) = &rep.q_expansion {
                    println!("q-series  : {}", q);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, json } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let results = verify(suite)?;
            let all_ok = results.iter().all(|r| r.passed);
            if json {
                let v: Vec<_> = results.iter().map(|r| r.to_json()).collect();
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                for r in &results {
                    println!(
                        "[{}] {} ({} ms) {}",
                        if r.passed { "pass" } else { "FAIL" },
                        r.name,
                        r.runtime_ms,
                        r.residual
                    );
                }
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Qexp { expr, order } => {
            let f = parse_form_fraction(&expr)?;
            let poly = f.as_element().cloned().ok_or_else(|| {
                catgw_core::Error::Other("expression must reduce to a polynomial".into())
            })?;
            let s = QSeries::expand(&poly, order)?;
            println!("{}", s);
            Ok(ExitCode::SUCCESS)
        }
        Command::Qme => {
            let (s03, s11) = solve_qme_chi_minus1()?;
            println!("iota(S03) = {:?}", s03);
            println!("iota(S11) = {:?}", s11);
            println!("residual  = 0 (verified exactly)");
            Ok(ExitCode::SUCCESS)
        }
        Command::SolveLift { mode, max_len, out } => {
            let (s, _) = catgw_core::potential::standard_structures(9)?;
            let mode = match mode {
                ModeArg::Gm => LiftMode::Gm,
                ModeArg::Mod => LiftMode::Mod,
            };
            let alpha = solve_lift(&s, mode, max_len)?;
            let v = chain_to_json(&alpha);
            let text = serde_json::to_string_pretty(&v).unwrap();
            match out {
                None => println!("{text}"),
                Some(p) => {
                    let mut f = std::fs::File::create(&p)
                        .map_err(|e| catgw_core::Error::Other(e.to_string()))?;
                    f.write_all(text.as_bytes())
                        .map_err(|e| catgw_core::Error::Other(e.to_string()))?;
                    eprintln!("wrote {}", p.display());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
