use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use philab_core::phiclass::{classify, ClassificationReport, ClassifyOptions, Mutant};
use philab_core::theoremlab::{
    build_corpus, classify_corpus, default_corpus_specs, known_properties, parse_ring,
    parse_suites, read_corpus_text, run_check, search, CheckOptions, CorpusEntry, SCHEMA,
};
use philab_core::Error;

const USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "philab",
    version,
    about = "Decide phi-Prufer-type conditions on small rings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one ring spec.
    Classify {
        ringspec: String,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List a corpus.
    Corpus {
        #[arg(long = "default", conflicts_with = "file")]
        default_corpus: bool,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run theorem suites over a corpus.
    Check {
        /// Comma-separated suite ids, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall-clock timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long, hide = true, value_enum)]
        mutant: Option<MutantArg>,
    },
    /// Find corpus rings where a property holds, or fails with --negate.
    Search {
        #[arg(long)]
        property: String,
        #[arg(long)]
        negate: bool,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
    },
}

#[derive(Args, Clone, Copy)]
struct Budgets {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=4))]
    deg_bound: u32,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..=4096))]
    norm_bound: u64,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=1000))]
    gen_bound: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=60))]
    exp_bound: u32,
    /// Sample budget for sampled checks on infinite rings.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pair_budget: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..=100_000))]
    pi_bound: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Budgets {
    fn classify(&self, mutant: Option<Mutant>) -> ClassifyOptions {
        ClassifyOptions {
            deg_bound: self.deg_bound as usize,
            norm_bound: self.norm_bound,
            gen_bound: self.gen_bound,
            exp_bound: self.exp_bound,
            sample_budget: self.budget as usize,
            pair_budget: self.pair_budget,
            gauss_samples: self.samples as usize,
            seed: self.seed,
            mutant,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Markdown,
}

#[derive(ValueEnum, Clone, Copy)]
enum MutantArg {
    WeakDistributivity,
}

fn load_specs(file: Option<&PathBuf>) -> anyhow::Result<Vec<String>> {
    match file {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading corpus file {}", p.display()))?;
            Ok(read_corpus_text(&text))
        }
        None => Ok(default_corpus_specs()),
    }
}

fn load_corpus(file: Option<&PathBuf>) -> anyhow::Result<Vec<CorpusEntry>> {
    let specs = load_specs(file)?;
    build_corpus(&specs).map_err(|(spec, e)| anyhow::anyhow!("{spec}: {e}"))
}

fn classify_markdown(r: &ClassificationReport) -> String {
    let mut s = format!(
        "# {}\n\nfamily: {}\n\n| property | verdict | method | witness |\n|---|---|---|---|\n",
        r.label, r.family
    );
    for (name, map) in [("properties", &r.properties), ("routes", &r.routes)] {
        if name == "routes" && !map.is_empty() {
            s.push_str("\n| route | verdict | method | witness |\n|---|---|---|---|\n");
        }
        for (k, e) in map {
            let _ = writeln!(
                s,
                "| {k} | {} | {} | {} |",
                e.verdict,
                e.method,
                e.witness.clone().unwrap_or_default()
            );
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "\nnote: {n}");
    }
    s
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Command::Classify {
            ringspec,
            budgets,
            format,
        } => {
            let ring = match parse_ring(&ringspec) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {ringspec}: {e}");
                    return Ok(USAGE);
                }
            };
            match classify(&ring, &budgets.classify(None)) {
                Ok(rep) => {
                    if format == Format::Markdown {
                        print!("{}", classify_markdown(&rep));
                    } else {
                        let v = json!({ "schema": SCHEMA, "seed": budgets.seed, "report": rep });
                        println!("{}", serde_json::to_string_pretty(&v)?);
                    }
                    Ok(0)
                }
                Err(e @ Error::InternalInconsistency(_)) => {
                    eprintln!("error: {e}");
                    Ok(1)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(2)
                }
            }
        }
        Command::Corpus {
            default_corpus,
            file,
        } => {
            if !default_corpus && file.is_none() {
                eprintln!("error: pass --default or --file <path>");
                return Ok(USAGE);
            }
            let corpus = match load_corpus(file.as_ref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(USAGE);
                }
            };
            let rings: Vec<_> = corpus
                .iter()
                .map(|e| json!({ "spec": e.spec, "description": e.ring.describe() }))
                .collect();
            let v = json!({ "schema": SCHEMA, "corpus": rings });
            println!("{}", serde_json::to_string_pretty(&v)?);
            Ok(0)
        }
        Command::Check {
            suite,
            file,
            budgets,
            format,
            timings,
            mutant,
        } => {
            let ids = match parse_suites(&suite) {
                Ok(ids) => ids,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(USAGE);
                }
            };
            let corpus = match load_corpus(file.as_ref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(USAGE);
                }
            };
            let mutant = mutant.map(|MutantArg::WeakDistributivity| Mutant::WeakDistributivity);
            let opts = CheckOptions {
                classify: budgets.classify(mutant),
                pi_bound: budgets.pi_bound,
                timings,
            };
            let report = run_check(&corpus, &ids, &opts);
            match format {
                Format::Json => print!("{}", report.to_json()),
                Format::Markdown => print!("{}", report.to_markdown()),
            }
            eprintln!("{}", report.summary_line());
            Ok(report.exit_code() as u8)
        }
        Command::Search {
            property,
            negate,
            file,
            budgets,
        } => {
            if !known_properties().contains(&property.as_str()) {
                eprintln!(
                    "error: unknown property '{property}'; known: {}",
                    known_properties().join(", ")
                );
                return Ok(USAGE);
            }
            let corpus = match load_corpus(file.as_ref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(USAGE);
                }
            };
            let classified = classify_corpus(&corpus, &budgets.classify(None));
            let hits = search(&classified, &property, negate);
            let v = json!({
                "schema": SCHEMA,
                "seed": budgets.seed,
                "property": property,
                "negate": negate,
                "matches": hits,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
            Ok(0)
        }
    }
}

fn configure_workers() -> anyhow::Result<()> {
    if let Ok(w) = std::env::var("PHILAB_WORKERS") {
        let n: usize = w
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("PHILAB_WORKERS must be a positive integer, got {w:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
