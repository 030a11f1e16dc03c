use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use balanced_forge::arith::format_rational;
use balanced_forge::catalog::CollectionJson;
use balanced_forge::counting::{count_cumulative, count_spanning, egf_table};
use balanced_forge::enumeration::{
    duality_bound, enumerate_mbc, enumerate_mbc_oracle, enumerate_minimally_uniform, enumerate_uniform,
    mbc_via_duality_report,
};
use balanced_forge::games::{core_lp, core_mbc, random_game, CoreVerdict, Game, DEFAULT_MAGNITUDE};
use balanced_forge::hypergraph::{parse_braced_list, Hypergraph, HypergraphJson};
use balanced_forge::verify::{self, Suite, KNOWN_MBC_COUNTS};
use balanced_forge::{
    decompose, decompose_all, find_balancing_weights, is_minimal_balanced, Error, MbcCatalog, Method,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CORE_EMPTY: u8 = 3;

#[derive(Parser)]
#[command(name = "balanced-forge", version, about = "Minimal balanced collections, uniform hypergraphs and TU-game cores")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal balanced collections.
    #[command(subcommand)]
    Mbc(MbcCommand),
    /// Uniform hypergraphs: counting, listing, duality, decomposition.
    #[command(subcommand)]
    Hyper(HyperCommand),
    /// TU games and their cores.
    #[command(subcommand)]
    Game(GameCommand),
    /// Run a self-check suite: table1, example8, prop1, prop2, sharpbs.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum MbcCommand {
    /// Enumerate every minimal balanced collection on n players.
    Enum {
        #[arg(long)]
        players: usize,
        #[arg(long, default_value = "direct")]
        method: Method,
        /// Largest regularity tried by the duality method (default: the determinant bound).
        #[arg(long)]
        k_max: Option<usize>,
        /// Duality method: also build hypergraphs whose duals are not minimal.
        #[arg(long)]
        exhaustive: bool,
        /// Catalog file to write (`.json` selects JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a catalog file, or test one collection of coalitions.
    Check {
        #[arg(long, conflicts_with_all = ["players", "coalitions"])]
        catalog: Option<PathBuf>,
        /// With --catalog: also compare against a fresh direct enumeration.
        #[arg(long, requires = "catalog")]
        compare: bool,
        #[arg(long, requires = "coalitions")]
        players: Option<usize>,
        /// Coalition list such as `[{1,2},{1,3},{2,3}]`.
        #[arg(long, requires = "players")]
        coalitions: Option<String>,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(long)]
    nodes: usize,
    /// Edge size k.
    #[arg(long)]
    degree: usize,
    /// Number of edges p.
    #[arg(long)]
    size: usize,
}

#[derive(Subcommand)]
enum HyperCommand {
    /// Count labeled spanning k-uniform hypergraphs with p edges.
    Count {
        #[command(flatten)]
        shape: Shape,
        /// Sum the counts over node counts k..=nodes.
        #[arg(long, conflicts_with = "table")]
        cumulative: bool,
        /// Emit a CSV table for node counts 0..=nodes.
        #[arg(long)]
        table: bool,
    },
    /// List labeled k-uniform hypergraphs with p edges.
    Enum {
        #[command(flatten)]
        shape: Shape,
        /// Keep only hypergraphs that cover every node.
        #[arg(long)]
        spanning: bool,
        /// Keep only minimally uniform hypergraphs (implies --spanning).
        #[arg(long)]
        minimal: bool,
    },
    /// Print the dual of a hypergraph.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Partition the nodes into minimally uniform blocks.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        /// List every such partition.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum GameCommand {
    /// Decide whether the core is empty (exit 3 when it is).
    Core {
        #[arg(long)]
        game: PathBuf,
        /// Decide through this catalog instead of the linear program.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Generate a seeded random game with integer worths.
    Random {
        #[arg(long)]
        players: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAGNITUDE)]
        magnitude: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    games: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BALANCED_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("BALANCED_FORGE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_) | Error::Incomplete(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

type CliResult = balanced_forge::Result<u8>;

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Mbc(MbcCommand::Enum { players, method, k_max, exhaustive, out }) => {
            mbc_enum(json, players, method, (k_max, exhaustive), out)
        }
        Command::Mbc(MbcCommand::Check { catalog: Some(path), compare, .. }) => mbc_check_catalog(json, &path, compare),
        Command::Mbc(MbcCommand::Check { players: Some(n), coalitions: Some(list), .. }) => {
            mbc_check_collection(json, n, &list)
        }
        Command::Mbc(MbcCommand::Check { .. }) => {
            Err(Error::InvalidInput("mbc check needs --catalog or --players with --coalitions".into()))
        }
        Command::Hyper(HyperCommand::Count { shape, cumulative, table }) => hyper_count(json, &shape, cumulative, table),
        Command::Hyper(HyperCommand::Enum { shape, spanning, minimal }) => hyper_enum(json, &shape, spanning, minimal),
        Command::Hyper(HyperCommand::Dual { input }) => {
            let d = read_hypergraph(&input)?.dual()?;
            print_hypergraph(json, &d);
            Ok(0)
        }
        Command::Hyper(HyperCommand::Decompose { input, all }) => hyper_decompose(json, &input, all),
        Command::Game(GameCommand::Core { game, catalog }) => game_core(json, &game, catalog.as_deref()),
        Command::Game(GameCommand::Random { players, seed, magnitude, out }) => {
            let g = random_game(players, seed, magnitude)?;
            let body = serde_json::to_string_pretty(&g.to_json())?;
            match out {
                Some(path) => {
                    fs::write(&path, body + "\n")?;
                    if !json {
                        println!("wrote {}", path.display());
                    }
                }
                None => println!("{body}"),
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let opts = verify::Options { max_n: args.max_n, max_nodes: args.max_nodes, games: args.games };
            let report = verify::run(args.suite, &opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            Ok(if report.passed { 0 } else { EXIT_CHECK_FAILED })
        }
    }
}

fn mbc_enum(json: bool, n: usize, method: Method, duality: (Option<usize>, bool), out: Option<PathBuf>) -> CliResult {
    let (k_max, exhaustive) = duality;
    let mut extra = json!({});
    let catalog = match method {
        Method::Direct => enumerate_mbc(n)?,
        Method::Oracle => enumerate_mbc_oracle(n)?,
        Method::Duality => {
            let k_max = k_max.unwrap_or_else(|| duality_bound(n));
            let report = mbc_via_duality_report(n, k_max, exhaustive)?;
            extra = json!({
                "k_max": report.k_max,
                "hypergraphs_per_k": report.hypergraphs_per_k,
                "non_minimal": report.non_minimal,
                "multiplicity_histogram": report.multiplicity_histogram,
            });
            report.catalog
        }
    };
    if let Some(path) = &out {
        catalog.save(path)?;
    }
    if json {
        let mut v = json!({ "n": n, "method": method, "count": catalog.len() });
        v["out"] = out.as_ref().map_or(Value::Null, |p| Value::from(p.display().to_string()));
        if method == Method::Duality {
            v["duality"] = extra;
        }
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("count={}", catalog.len());
        if method == Method::Duality {
            println!("k_max={}", extra["k_max"]);
            println!("non_minimal={}", extra["non_minimal"]);
            println!("multiplicity_histogram={}", extra["multiplicity_histogram"]);
        }
        if let Some(path) = &out {
            println!("wrote {}", path.display());
        }
    }
    Ok(0)
}

fn mbc_check_catalog(json: bool, path: &Path, compare: bool) -> CliResult {
    let catalog = MbcCatalog::load(path)?;
    let known = KNOWN_MBC_COUNTS.iter().find(|(n, _)| *n == catalog.n()).map(|(_, c)| *c);
    let mut ok = true;
    let mut matches_direct = Value::Null;
    if compare {
        let same = enumerate_mbc(catalog.n())?.same_collections(&catalog);
        ok &= same;
        matches_direct = Value::from(same);
    }
    if json {
        let v = json!({
            "n": catalog.n(),
            "method": catalog.method(),
            "count": catalog.len(),
            "known_count": known,
            "matches_direct": matches_direct,
            "valid": ok,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("n={} method={} count={}", catalog.n(), catalog.method(), catalog.len());
        if let Some(k) = known {
            println!("known count={k}");
        }
        if let Value::Bool(same) = matches_direct {
            println!("matches direct enumeration: {same}");
        }
    }
    Ok(if ok { 0 } else { EXIT_CHECK_FAILED })
}

fn mbc_check_collection(json: bool, n: usize, list: &str) -> CliResult {
    let coalitions = parse_braced_list(list)?;
    let weights = find_balancing_weights(n, &coalitions)?;
    let minimal = is_minimal_balanced(n, &coalitions)?;
    if json {
        let v = json!({
            "balanced": weights.is_some(),
            "minimal": minimal,
            "weights": weights.as_ref().map(CollectionJson::from),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("balanced={}", weights.is_some());
        println!("minimal={minimal}");
        if let Some(b) = &weights {
            println!("{b}");
        }
    }
    Ok(if minimal { 0 } else { EXIT_CHECK_FAILED })
}

fn hyper_count(json: bool, s: &Shape, cumulative: bool, table: bool) -> CliResult {
    let (n, k, p) = (s.nodes as u64, s.degree as u64, s.size as u64);
    if table {
        let t = egf_table(k, p, s.nodes)?;
        if json {
            println!("{}", serde_json::to_string_pretty(&t)?);
        } else {
            print!("{}", t.to_csv());
        }
        return Ok(0);
    }
    let value = if cumulative { count_cumulative(n, k, p) } else { count_spanning(n, k, p) };
    if json {
        let v = json!({ "nodes": n, "k": k, "p": p, "cumulative": cumulative, "count": value.to_string() });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("{value}");
    }
    Ok(0)
}

fn hyper_enum(json: bool, s: &Shape, spanning: bool, minimal: bool) -> CliResult {
    let list = if minimal {
        enumerate_minimally_uniform(s.nodes, s.degree, s.size)?
    } else {
        enumerate_uniform(s.nodes, s.degree, s.size, spanning)?
    };
    if json {
        let v: Vec<HypergraphJson> = list.iter().map(Hypergraph::to_json).collect();
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        for h in &list {
            println!("{h}");
        }
        println!("count={}", list.len());
    }
    Ok(0)
}

fn hyper_decompose(json: bool, input: &Path, all: bool) -> CliResult {
    let h = read_hypergraph(input)?;
    let parts = if all { decompose_all(&h)? } else { vec![decompose(&h)?] };
    if json {
        let v: Vec<Vec<Vec<usize>>> = parts
            .iter()
            .map(|p| p.blocks.iter().map(|b| b.nodes.players().collect()).collect())
            .collect();
        println!("{}", serde_json::to_string(&v)?);
    } else {
        for p in &parts {
            let blocks: Vec<String> = p
                .blocks
                .iter()
                .map(|b| format!("{} (k={}, p={})", b.nodes, b.uniformity, b.size))
                .collect();
            println!("{}", blocks.join(" | "));
        }
    }
    Ok(0)
}

fn game_core(json: bool, game: &Path, catalog: Option<&Path>) -> CliResult {
    let text = fs::read_to_string(game)?;
    let g = Game::from_json(&serde_json::from_str(&text)?)?;
    let verdict = match catalog {
        Some(path) => core_mbc(&g, &MbcCatalog::load(path)?)?,
        None => core_lp(&g)?,
    };
    verdict.validate(&g)?;
    let grand = format_rational(g.grand_worth());
    match &verdict {
        CoreVerdict::Nonempty { point } => {
            let xs: Vec<String> = point.iter().map(format_rational).collect();
            if json {
                let v = json!({ "nonempty": true, "point": xs, "grand_worth": grand });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("core: nonempty");
                println!("x = ({})", xs.join(", "));
            }
        }
        CoreVerdict::Empty { collection, efficiency } => {
            if json {
                let v = json!({
                    "nonempty": false,
                    "collection": CollectionJson::from(collection),
                    "efficiency": format_rational(efficiency),
                    "grand_worth": grand,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("core: empty");
                println!("collection: {collection}");
                println!("efficiency {} > v(N) = {grand}", format_rational(efficiency));
            }
        }
    }
    Ok(if verdict.is_nonempty() { 0 } else { EXIT_CORE_EMPTY })
}

/// JSON when the path ends in `.json`, otherwise the first non-blank line in
/// text form.
fn read_hypergraph(path: &Path) -> balanced_forge::Result<Hypergraph> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let j: HypergraphJson = serde_json::from_str(&text)?;
        return Hypergraph::from_json(&j);
    }
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse(format!("{} holds no hypergraph", path.display())))?;
    line.parse()
}

fn print_hypergraph(json: bool, h: &Hypergraph) {
    if json {
        println!("{}", serde_json::to_string(&h.to_json()).expect("hypergraph JSON serializes"));
    } else {
        println!("{h}");
    }
}
