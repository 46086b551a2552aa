//! Command-line front end for the stratified simplicial set engine.
//!
//! Exit codes: 0 success, 1 refutation or failed check, 2 combinatorial
//! budget exceeded, 3 malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use strat_core::json::{
    diagram_from_json, diagram_to_json, labelled_from_json, labelled_to_json, poset_from_json,
    sset_from_json, sset_to_json, stratified_from_json, stratified_map_from_json,
    stratified_to_json, DiagramJson, MapJson, PosetJson, SsetJson,
};
use strat_core::{Budget, Error as CoreError};

#[derive(Parser)]
#[command(name = "strat-kit", version, about = "stratified simplicial set toolkit")]
struct Cli {
    /// Node-expansion ceiling for map enumerations.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubdivideMode {
    Sd,
    SdP,
    SdPNaiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramMode {
    D,
    U,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeqMode {
    Link,
    Holink,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingTarget {
    Ex,
    ExNaiv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the simplicial link of a stratified set at a regular flag.
    Link {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Comma-separated element labels, e.g. `0,1`.
        #[arg(long)]
        flag: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a truncated homotopy link at a regular flag.
    Holink {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        flag: String,
        #[arg(long, default_value_t = 1)]
        dim_bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subdivide: plain barycentric, stratified, or naive stratified.
    Subdivide {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: SubdivideMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the right adjoint of the stratified subdivision.
    Ex {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        dim_bound: usize,
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verticalize a labelled simplicial set.
    Verticalize {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Labelled subdivision of a stratified set.
    LabelSd {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagram constructions: homotopy links (d), labelled diagram (u), or
    /// the realization of a diagram (c).
    Diagram {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: DiagramMode,
        #[arg(long, default_value_t = 1)]
        dim_bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral homology of a simplicial set (stratified input allowed).
    Homology {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
    },
    /// Stratified maps between two objects up to stratified homotopy.
    HomotopyClasses {
        #[arg(long, value_name = "FILE")]
        source: PathBuf,
        #[arg(long, value_name = "FILE")]
        target: PathBuf,
    },
    /// Probe a stratified map for weak-equivalence refutations.
    CheckWeq {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
        #[arg(long, value_enum, default_value = "link")]
        mode: WeqMode,
    },
    /// Check the identity suite over a poset; TSV, one line per instance.
    VerifyIdentities {
        #[arg(long, value_name = "FILE")]
        poset: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Build and check the pairing on a right adjoint of the subdivision.
    CheckPairing {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim_bound: usize,
        #[arg(long, value_enum, default_value = "ex-naiv")]
        target: PairingTarget,
    },
    /// Run the full acceptance suite.
    Corpus,
}

enum CliError {
    Failure(String),
    Budget(String),
    Malformed(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CoreError::Malformed(_) => CliError::Malformed(e.to_string()),
            CoreError::Overflow | CoreError::NotCofibrant(_) => CliError::Failure(e.to_string()),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

/// Print a line, exiting quietly if the consumer closed the pipe.
fn print_line(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.write_all(b"\n").is_err() {
        std::process::exit(0);
    }
}

fn emit<T: serde::Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display()))),
        None => {
            print_line(&text);
            Ok(())
        }
    }
}

fn parse_flag(
    poset: &Arc<strat_core::Poset>,
    text: &str,
) -> Result<strat_core::RegularFlag, CliError> {
    let entries = text
        .split(',')
        .map(|name| {
            poset
                .index_of(name.trim())
                .ok_or_else(|| CliError::Malformed(format!("unknown stratum {name}")))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    strat_core::RegularFlag::new(poset, entries).map_err(Into::into)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget = Budget(cli.budget);
    match cli.command {
        Command::Link { input, flag, out } => {
            let k = stratified_from_json(&read_json::<SsetJson>(&input)?)?;
            let i = parse_flag(&k.poset, &flag)?;
            let l = strat_core::links::link(&k, &i);
            emit(&sset_to_json(&l), &out)
        }
        Command::Holink {
            input,
            flag,
            dim_bound,
            out,
        } => {
            let k = stratified_from_json(&read_json::<SsetJson>(&input)?)?;
            let i = parse_flag(&k.poset, &flag)?;
            let h = strat_core::links::holink(&k, &i, dim_bound, budget)?;
            let space = sset_to_json(&h.space);
            match out {
                Some(path) => {
                    emit(&space, &Some(path.clone()))?;
                    emit(
                        &serde_json::json!({ "truncation": h.truncation }),
                        &Some(path.with_extension("truncation.json")),
                    )
                }
                None => emit(
                    &serde_json::json!({ "space": space, "truncation": h.truncation }),
                    &None,
                ),
            }
        }
        Command::Subdivide { input, mode, out } => {
            let j: SsetJson = read_json(&input)?;
            match mode {
                SubdivideMode::Sd => {
                    let x = sset_from_json(&j)?;
                    let s = strat_core::sd::sd(&x);
                    emit(&sset_to_json(&s.space), &out)
                }
                SubdivideMode::SdP => {
                    let k = stratified_from_json(&j)?;
                    let s = strat_core::subdivision::sd_p(&k);
                    emit(&stratified_to_json(&s.strat), &out)
                }
                SubdivideMode::SdPNaiv => {
                    let k = stratified_from_json(&j)?;
                    let (s, _) = strat_core::subdivision::sd_p_naiv(&k);
                    emit(&stratified_to_json(&s), &out)
                }
            }
        }
        Command::Ex {
            input,
            depth,
            dim_bound,
            naive,
            out,
        } => {
            let k = stratified_from_json(&read_json::<SsetJson>(&input)?)?;
            let ex = if naive {
                strat_core::subdivision::ex_p_naiv(&k, depth, dim_bound, budget)?
            } else {
                strat_core::subdivision::ex_p(&k, depth, dim_bound, budget)?
            };
            let body = stratified_to_json(&ex.strat);
            match out {
                Some(path) => {
                    emit(&body, &Some(path.clone()))?;
                    emit(
                        &serde_json::json!({ "truncation": ex.truncation }),
                        &Some(path.with_extension("truncation.json")),
                    )
                }
                None => emit(
                    &serde_json::json!({ "space": body, "truncation": ex.truncation }),
                    &None,
                ),
            }
        }
        Command::Verticalize { input, out } => {
            let s = labelled_from_json(&read_json::<SsetJson>(&input)?)?;
            let v = strat_core::vertical::verticalize(&s);
            emit(&stratified_to_json(&v.strat), &out)
        }
        Command::LabelSd { input, out } => {
            let k = stratified_from_json(&read_json::<SsetJson>(&input)?)?;
            let (s, _) = strat_core::vertical::label_subdivision(&k);
            emit(&labelled_to_json(&s), &out)
        }
        Command::Diagram {
            input,
            mode,
            dim_bound,
            out,
        } => match mode {
            DiagramMode::D => {
                let k = stratified_from_json(&read_json::<SsetJson>(&input)?)?;
                let (d, _) = strat_core::links::diagram_d(&k, dim_bound, budget)?;
                emit(&diagram_to_json(&d), &out)
            }
            DiagramMode::U => {
                let s = labelled_from_json(&read_json::<SsetJson>(&input)?)?;
                let d = strat_core::vertical::functor_u(&s);
                emit(&diagram_to_json(&d), &out)
            }
            DiagramMode::C => {
                let d = diagram_from_json(&read_json::<DiagramJson>(&input)?)?;
                let c = strat_core::diagrams::c_p(&d);
                emit(&stratified_to_json(&c), &out)
            }
        },
        Command::Homology { input, max_deg } => {
            let x = sset_from_json(&read_json::<SsetJson>(&input)?)?;
            let h = strat_core::homology::homology(&x, max_deg)?;
            emit(&h, &None)
        }
        Command::HomotopyClasses { source, target } => {
            let k = stratified_from_json(&read_json::<SsetJson>(&source)?)?;
            let l = stratified_from_json(&read_json::<SsetJson>(&target)?)?;
            let (maps, classes) = strat_core::stratified::homotopy_classes(&k, &l, budget)?;
            let class_count = classes.iter().max().map_or(0, |m| m + 1);
            emit(
                &serde_json::json!({
                    "maps": maps.len(),
                    "classes": classes,
                    "class_count": class_count,
                }),
                &None,
            )
        }
        Command::CheckWeq { map, max_deg, mode } => {
            let (src, dst, f) = stratified_map_from_json(&read_json::<MapJson>(&map)?)?;
            let mode = match mode {
                WeqMode::Link => strat_core::weq::ProbeMode::Link,
                WeqMode::Holink => strat_core::weq::ProbeMode::Holink,
            };
            let rep = strat_core::weq::probe(&f, &src, &dst, max_deg, mode, budget)?;
            let refuted = rep.verdict == strat_core::weq::Verdict::Refuted;
            emit(&rep, &None)?;
            if refuted {
                Err(CliError::Failure("weak-equivalence probe refuted".into()))
            } else {
                Ok(())
            }
        }
        Command::VerifyIdentities { poset, max_len } => {
            let p = Arc::new(poset_from_json(&read_json::<PosetJson>(&poset)?)?);
            let rep = strat_core::subdivision::verify_identities(&p, max_len);
            for i in &rep.instances {
                print_line(&format!(
                    "{}\t[{}]\t{}\t{}",
                    i.equation,
                    i.flag.join(","),
                    i.indices
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    if i.pass { "pass" } else { "FAIL" }
                ));
            }
            if rep.all_pass {
                Ok(())
            } else {
                Err(CliError::Failure("identity suite failed".into()))
            }
        }
        Command::CheckPairing {
            input,
            dim_bound,
            target,
        } => {
            let k = stratified_from_json(&read_json::<SsetJson>(&input)?)?;
            let (pairing, _) = match target {
                PairingTarget::ExNaiv => {
                    strat_core::pairing::build_pairing_ex_naiv(&k, dim_bound, budget)?
                }
                PairingTarget::Ex => strat_core::pairing::build_pairing_ex(&k, dim_bound, budget)?,
            };
            let checks = strat_core::pairing::check_pairing(&pairing)?;
            emit(&checks, &None)?;
            if checks.all() {
                Ok(())
            } else {
                Err(CliError::Failure("pairing checks failed".into()))
            }
        }
        Command::Corpus => {
            let results = strat_core::acceptance::run_all();
            let mut all = true;
            for r in &results {
                print_line(&format!(
                    "criterion {:>2} [{}] {:>6}ms  {} — {}",
                    r.id,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.millis,
                    r.name,
                    r.details
                ));
                all &= r.pass;
            }
            if all {
                Ok(())
            } else {
                Err(CliError::Failure("acceptance criteria failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Malformed(msg)) => {
            eprintln!("malformed input: {msg}");
            ExitCode::from(3)
        }
    }
}
