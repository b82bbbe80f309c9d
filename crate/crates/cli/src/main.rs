//! `syncmon`: command-line access to the monoid, graph and experiment
//! routines. Machine output goes to stdout, summaries and logs to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use syncmon::dixon::{dixon_rows, monte_carlo_transitive};
use syncmon::endo::{endomorphism_count, enumerate_endomorphisms, DEFAULT_ENDO_CAP};
use syncmon::experiments::{
    edge_graph_experiment, estimate_record, exact_sync_probability, explore_maximal_nonsync, sweep,
    to_json_lines, ExperimentConfig,
};
use syncmon::io::{format_maps, parse_maps};
use syncmon::{
    derived_graph, gr_of_generators, hull, is_synchronizing, min_rank_witness, nearcon_check,
    shortest_synchronizing_word, GeneratorSet, SimpleGraph,
};

#[derive(Parser)]
#[command(name = "syncmon", version = concat!(env!("CARGO_PKG_VERSION"), " (", env!("CARGO_PKG_NAME"), ")"))]
#[command(
    about = "Synchronizing transformation monoids, graph hulls and random generation experiments"
)]
struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapsInput {
    /// Transformation file: one map per line, 1-based images.
    #[arg(long)]
    maps: PathBuf,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file: header `n m`, then `m` lines `u v`.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct Shape {
    /// Number of random endofunction generators (no permutations).
    #[arg(long, conflicts_with_all = ["perms", "maps_count"])]
    k: Option<usize>,
    /// Number of random permutation generators.
    #[arg(long)]
    perms: Option<usize>,
    /// Number of random endofunction generators.
    #[arg(long = "maps-count")]
    maps_count: Option<usize>,
}

impl Shape {
    fn resolve(&self) -> Result<(usize, usize), Failure> {
        let (r, s) = match self.k {
            Some(k) => (0, k),
            None => (self.perms.unwrap_or(0), self.maps_count.unwrap_or(0)),
        };
        if r + s == 0 {
            return Err(Failure::Usage(
                "need at least one generator (--k, --perms or --maps-count)".into(),
            ));
        }
        Ok((r, s))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the maps generate a synchronizing monoid.
    Sync(MapsInput),
    /// Print Gr(M) for the monoid generated by the maps.
    Gr(MapsInput),
    /// A word reaching the minimum rank, with its map.
    Minrank(MapsInput),
    /// A synchronizing word (greedy, or shortest with --shortest).
    Word {
        #[command(flatten)]
        input: MapsInput,
        #[arg(long)]
        shortest: bool,
    },
    /// Print Hull(X) = Gr(End(X)).
    Hull(GraphInput),
    /// Print the derived graph X'.
    Derived(GraphInput),
    /// List (or count) the endomorphisms of a graph.
    Endos {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = DEFAULT_ENDO_CAP as u64)]
        cap: u64,
    },
    /// Check the sufficient conditions for End(X) to be maximal non-synchronizing.
    Nearcon(GraphInput),
    /// Monte Carlo estimate of the synchronization probability.
    Estimate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact synchronization probability.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        perms: usize,
        #[arg(long = "maps-count", default_value_t = 0)]
        maps_count: usize,
    },
    /// Explore all graphs on n vertices for maximal non-synchronizing monoids.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        canonical: bool,
    },
    /// Transitive-pair counts c_n and related bounds for random permutations.
    Dixon {
        #[arg(long = "max-n", default_value_t = syncmon::dixon::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Batch of estimates over several degrees, as JSON lines.
    Sweep {
        /// Comma-separated degrees, e.g. `10,20,40`.
        #[arg(long = "n-list", value_delimiter = ',', num_args = 0..)]
        n_list: Vec<usize>,
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Probability that two random maps share a single-edge graph, against its bounds.
    EdgeBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo transitivity of one random permutation or a pair.
    Transitive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pairs: bool,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    /// Bad flags or out-of-range parameters: exit 2.
    Usage(String),
    /// Malformed input or a failed computation: exit 1.
    Domain(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<syncmon::Error> for Failure {
    fn from(e: syncmon::Error) -> Self {
        Failure::Domain(e.into())
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_generators(path: &Path) -> anyhow::Result<GeneratorSet> {
    let maps = parse_maps(&read(path)?).with_context(|| path.display().to_string())?;
    if maps.is_empty() {
        return Err(anyhow!("{}: no maps found", path.display()));
    }
    Ok(GeneratorSet::new(maps)?)
}

fn load_graph(path: &Path) -> anyhow::Result<SimpleGraph> {
    SimpleGraph::parse(&read(path)?).with_context(|| path.display().to_string())
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::Usage(msg.into()))
    }
}

fn json_line(value: &serde_json::Value) -> String {
    format!("{value}\n")
}

fn run(cmd: Command) -> Result<String, Failure> {
    let out = match cmd {
        Command::Sync(input) => {
            let s = load_generators(&input.maps)?;
            let sync = is_synchronizing(&s);
            eprintln!(
                "{} generators on {} points: synchronizing = {sync}",
                s.len(),
                s.degree()
            );
            json_line(&json!({ "synchronizing": sync }))
        }
        Command::Gr(input) => gr_of_generators(&load_generators(&input.maps)?).to_edge_list(),
        Command::Minrank(input) => {
            let s = load_generators(&input.maps)?;
            let (word, f) = min_rank_witness(&s);
            eprintln!(
                "minimum rank {} via a word of length {}",
                f.rank(),
                word.len()
            );
            json_line(&json!({
                "rank": f.rank(),
                "word": word.to_one_based(),
                "map": f.to_one_based(),
            }))
        }
        Command::Word { input, shortest } => {
            let s = load_generators(&input.maps)?;
            let word = if shortest {
                shortest_synchronizing_word(&s)?
            } else {
                let (word, f) = min_rank_witness(&s);
                (f.rank() == 1).then_some(word)
            };
            match word {
                Some(w) => json_line(&json!({ "word": w.to_one_based(), "length": w.len() })),
                None => {
                    eprintln!("monoid is not synchronizing");
                    json_line(&json!({ "word": null, "length": null }))
                }
            }
        }
        Command::Hull(input) => hull(&load_graph(&input.graph)?).to_edge_list(),
        Command::Derived(input) => derived_graph(&load_graph(&input.graph)?).to_edge_list(),
        Command::Endos {
            input,
            count_only,
            cap,
        } => {
            let g = load_graph(&input.graph)?;
            if count_only {
                let count = endomorphism_count(&g, cap)?;
                json_line(&json!({ "count": count.to_string() }))
            } else {
                let cap = usize::try_from(cap).unwrap_or(usize::MAX);
                let endos = enumerate_endomorphisms(&g, cap)?;
                eprintln!("{} endomorphisms", endos.len());
                format_maps(&endos)
            }
        }
        Command::Nearcon(input) => {
            let report = nearcon_check(&load_graph(&input.graph)?);
            json_line(&serde_json::to_value(report).expect("report serializes"))
        }
        Command::Estimate {
            n,
            shape,
            trials,
            seed,
        } => {
            require(n >= 1, "--n must be at least 1")?;
            require(trials >= 1, "--trials must be at least 1")?;
            let (r, s) = shape.resolve()?;
            let rec = estimate_record(&ExperimentConfig {
                n,
                perms: r,
                maps: s,
                trials,
                seed,
            })?;
            eprintln!(
                "n={n} r={r} s={s}: {}/{} synchronizing",
                rec.successes, rec.trials
            );
            to_json_lines(&[rec])
        }
        Command::Exact {
            n,
            perms,
            maps_count,
        } => {
            require(n >= 1, "--n must be at least 1")?;
            require(perms + maps_count >= 1, "need at least one generator")?;
            let e = exact_sync_probability(n, perms, maps_count)?;
            eprintln!("{}", e.context);
            json_line(&json!({ "exact": e.fraction() }))
        }
        Command::Explore { n, canonical } => {
            let limit = if canonical { 7 } else { 6 };
            require(
                (1..=limit).contains(&n),
                format!("--n must be in 1..={limit}"),
            )?;
            let (records, summary) = explore_maximal_nonsync(n, canonical)?;
            eprintln!(
                "{}",
                serde_json::to_string(&summary).expect("summary serializes")
            );
            to_json_lines(&records)
        }
        Command::Dixon { max_n } => {
            require((1..=1000).contains(&max_n), "--max-n must be in 1..=1000")?;
            let rows = dixon_rows(max_n);
            let mut text = serde_json::to_string_pretty(&rows).expect("rows serialize");
            text.push('\n');
            text
        }
        Command::Sweep {
            n_list,
            shape,
            trials,
            seed,
        } => {
            require(n_list.iter().all(|&n| n >= 1), "every n must be at least 1")?;
            require(trials >= 1, "--trials must be at least 1")?;
            let (r, s) = shape.resolve()?;
            let results = sweep(&n_list, &[(r, s)], trials, seed)?;
            for (rec, secs) in &results {
                eprintln!(
                    "n={} r={} s={}: estimate {:.5} in {secs:.3}s",
                    rec.n, rec.r, rec.s, rec.estimate
                );
            }
            let recs: Vec<_> = results.into_iter().map(|(r, _)| r).collect();
            to_json_lines(&recs)
        }
        Command::EdgeBound { n, trials, seed } => {
            require(n >= 2, "--n must be at least 2")?;
            require(trials >= 1, "--trials must be at least 1")?;
            let report = edge_graph_experiment(n, trials, seed)?;
            json_line(&serde_json::to_value(report).expect("report serializes"))
        }
        Command::Transitive {
            n,
            pairs,
            trials,
            seed,
        } => {
            require(n >= 1, "--n must be at least 1")?;
            require(trials >= 1, "--trials must be at least 1")?;
            let e = monte_carlo_transitive(n, pairs, trials, seed)?;
            json_line(&json!({
                "experiment": "transitive",
                "n": n,
                "pairs": pairs,
                "trials": e.trials,
                "seed": seed,
                "successes": e.successes,
                "estimate": e.estimate,
                "ci_low": e.ci_low,
                "ci_high": e.ci_high,
            }))
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("global pool is configured once");
    }
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
