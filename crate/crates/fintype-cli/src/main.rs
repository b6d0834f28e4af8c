mod cache;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use fintype::comb::{
    clasp_surgery_to_loom, comb_reduce_search, localize_and_reduce, CombWord, SearchOutcome, TwistedLoom,
    DEFAULT_DEPTH,
};
use fintype::cubes::{monoid_complex_presentation, monoid_ring_oracle, presentation_invariants, MonoidTable};
use fintype::looms::{
    count_looms, enumerate_looms, generators_Un_KDelta, loom_to_gauss_code, simplify, Loom, Sign, ENUMERATION_CAP,
};
use fintype::vtk::{VirtualBraidWord, MAX_RANK};
use fintype::{algebra::is_prime, Error};

use cache::{CacheState, MatrixCache};

#[derive(Parser)]
#[command(name = "fintype", version, about = "Generalized finite type invariants")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached relation matrices.
    #[arg(long, global = true, env = "FINTYPE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Skip the disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for parallel relation generation (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Virtual transverse knots in braided form.
    #[command(subcommand)]
    Vtk(VtkCmd),
    /// Looms for the delta-move theory.
    #[command(subcommand)]
    Looms(LoomsCmd),
    /// Comb diagrams and twisted looms.
    #[command(subcommand)]
    Comb(CombCmd),
    /// Cube complexes of monoids.
    #[command(subcommand)]
    Cubes(CubesCmd),
    /// Diagram-level checks.
    #[command(subcommand)]
    Diagrams(DiagramsCmd),
    /// Runs the oracle and property suite (same as `diagrams selftest`).
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum VtkCmd {
    /// Dimension table of the rank-n groups mod p.
    Dims {
        /// Largest rank.
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Primes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
    /// Invariant of a braid closure as a reduced coset vector.
    Eval {
        word: String,
        /// Second word to compare against.
        #[arg(long)]
        against: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Strand count; defaults to the fewest the word needs.
        #[arg(long)]
        strands: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LoomsCmd {
    /// Number of loom words with the given thread and bar counts.
    Count {
        #[arg(long)]
        threads: usize,
        #[arg(long)]
        bars: usize,
    },
    /// Lists every loom with the given counts.
    Enumerate {
        #[arg(long)]
        threads: usize,
        #[arg(long)]
        bars: usize,
    },
    /// Generators of the rank-n delta-move group.
    Generators {
        #[arg(long)]
        n: usize,
    },
    /// Gauss code of a loom's closure.
    Gauss {
        loom: String,
        /// Remove kinks and bigons.
        #[arg(long)]
        simplify: bool,
    },
}

#[derive(Subcommand)]
enum CombCmd {
    /// Checks a comb word or, with --twisted, a twisted loom.
    Validate {
        word: String,
        #[arg(long)]
        twisted: bool,
    },
    /// Searches for a reduction to the trivial word. With --twisted the word
    /// may carry threads, which are carried along the reduction.
    Reduce {
        word: String,
        #[arg(long)]
        twisted: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Bar signs for clasp surgery after a twisted reduction, e.g. "+-".
        #[arg(long)]
        signs: Option<String>,
    },
}

#[derive(Subcommand)]
enum CubesCmd {
    /// Compares the cube complex presentation with the monoid ring oracle.
    MonoidCheck {
        /// trivial, z2, z3, z2xz2, or a path to a JSON monoid table.
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Use every element as a generator.
        #[arg(long)]
        all_generators: bool,
    },
}

#[derive(Subcommand)]
enum DiagramsCmd {
    /// Runs the oracle and property suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SelftestArgs {
    /// Corrupts f(2,1) to check that the suite notices.
    #[arg(long, hide = true)]
    inject_wrong_f21: bool,
}

enum Failure {
    Error(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Error(e)
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(report)) => {
            print!("{report}");
            ExitCode::from(4)
        }
    }
}

fn cache_for(cli: &Cli) -> MatrixCache {
    if cli.no_cache {
        return MatrixCache::new(None);
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("fintype")));
    MatrixCache::new(dir)
}

fn run(cli: &Cli) -> Out {
    let cache = cache_for(cli);
    match &cli.command {
        Command::Vtk(c) => vtk(cli.format, &cache, c),
        Command::Looms(c) => looms(cli.format, c),
        Command::Comb(c) => comb(cli.format, c),
        Command::Cubes(c) => cubes(cli.format, c),
        Command::Diagrams(DiagramsCmd::Selftest(a)) | Command::Selftest(a) => selftest(cli.format, &cache, a),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn vtk(format: Format, cache: &MatrixCache, c: &VtkCmd) -> Out {
    match c {
        VtkCmd::Dims { n_max, primes } => {
            if *n_max > MAX_RANK {
                return Err(Error::Cap { what: format!("rank {n_max}"), cap: MAX_RANK as u128 }.into());
            }
            if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
                return Err(Error::NotPrime(p).into());
            }
            let mut rows = Vec::new();
            for n in 1..=*n_max {
                let (pres, state) = cache.presentation(n)?;
                note_cache(n, state);
                for &p in primes {
                    rows.push(pres.dimension(p)?);
                }
            }
            Ok(match format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut s = String::from("n,p,generators,rank,dim\n");
                    for r in &rows {
                        s += &format!("{},{},{},{},{}\n", r.n, r.p, r.generators, r.rank, r.dim);
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{:>3} {:>3} {:>10} {:>6} {:>5}\n", "n", "p", "generators", "rank", "dim");
                    for r in &rows {
                        s += &format!("{:>3} {:>3} {:>10} {:>6} {:>5}\n", r.n, r.p, r.generators, r.rank, r.dim);
                    }
                    s
                }
            })
        }
        VtkCmd::Eval { word, against, n, p, strands } => {
            if *n > MAX_RANK {
                return Err(Error::Cap { what: format!("rank {n}"), cap: MAX_RANK as u128 }.into());
            }
            let parse = |w: &str| match strands {
                Some(s) => VirtualBraidWord::parse_with_strands(*s, w),
                None => VirtualBraidWord::parse(w),
            };
            let w1 = parse(word)?;
            let w2 = against.as_deref().map(parse).transpose()?;
            let (pres, state) = cache.presentation(*n)?;
            note_cache(*n, state);
            let q = pres.quotient(*p)?;
            let v1 = q.evaluate(&w1)?;
            let v2 = w2.as_ref().map(|w| q.evaluate(w)).transpose()?;
            let equal = v2.as_ref().map(|v| *v == v1);
            Ok(match format {
                Format::Json => to_json(&json!({
                    "n": n, "p": p, "word": w1.to_string(), "vector": v1,
                    "against": w2.as_ref().map(|w| w.to_string()), "against_vector": v2, "equal": equal,
                })),
                Format::Csv => {
                    let row = |w: &VirtualBraidWord, v: &[u64]| {
                        format!("{},{n},{p},{}\n", w, v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                    };
                    let mut s = "word,n,p,vector\n".to_string() + &row(&w1, &v1);
                    if let (Some(w), Some(v)) = (&w2, &v2) {
                        s += &row(w, v);
                    }
                    s
                }
                Format::Text => {
                    let support = |v: &[u64]| {
                        let nz: Vec<String> =
                            v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, c)| format!("{c}·[{i}]")).collect();
                        if nz.is_empty() { "0".to_string() } else { nz.join(" + ") }
                    };
                    let mut s = format!("{w1}: {}\n", support(&v1));
                    if let (Some(w), Some(v), Some(eq)) = (&w2, &v2, equal) {
                        s += &format!("{w}: {}\n{}\n", support(v), if eq { "equal" } else { "different" });
                    }
                    s
                }
            })
        }
    }
}

fn looms(format: Format, c: &LoomsCmd) -> Out {
    let list = |ls: Vec<Loom>| match format {
        Format::Json => to_json(&ls.iter().map(|l| l.to_string()).collect::<Vec<_>>()),
        Format::Csv => "loom\n".to_string() + &ls.iter().map(|l| l.to_ascii() + "\n").collect::<String>(),
        Format::Text => ls.iter().map(|l| l.to_string() + "\n").collect(),
    };
    match c {
        LoomsCmd::Count { threads, bars } => {
            let count = count_looms(*threads, *bars);
            Ok(match format {
                Format::Json => to_json(&json!({ "threads": threads, "bars": bars, "count": count.to_string() })),
                Format::Csv => format!("threads,bars,count\n{threads},{bars},{count}\n"),
                Format::Text => format!("{count}\n"),
            })
        }
        LoomsCmd::Enumerate { threads, bars } => {
            let count = count_looms(*threads, *bars);
            if count > ENUMERATION_CAP {
                return Err(Error::Cap { what: format!("{count} looms"), cap: ENUMERATION_CAP }.into());
            }
            Ok(list(enumerate_looms(*threads, *bars)?))
        }
        LoomsCmd::Generators { n } => Ok(list(generators_Un_KDelta(*n)?)),
        LoomsCmd::Gauss { loom, simplify: simp } => {
            let l = Loom::parse(loom)?;
            let code = loom_to_gauss_code(&l);
            let code = if *simp { simplify(&code) } else { code };
            Ok(match format {
                Format::Json => to_json(&json!({ "loom": l.to_string(), "gauss": code.to_string(), "crossings": code.crossings() })),
                Format::Csv => format!("loom,gauss\n{},{}\n", l.to_ascii(), code),
                Format::Text => format!("{code}\n"),
            })
        }
    }
}

fn parse_signs(s: &str) -> Result<Vec<Sign>, Failure> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' | '−' => Ok(Sign::Minus),
            _ => Err(Failure::Usage(format!("bad sign {c:?}; use + and -"))),
        })
        .collect()
}

fn comb(format: Format, c: &CombCmd) -> Out {
    match c {
        CombCmd::Validate { word, twisted } => {
            let (text, rank, threads) = if *twisted {
                let t = TwistedLoom::parse(word)?;
                (t.to_string(), t.comb().rank(), t.threads())
            } else {
                let w = CombWord::parse(word)?;
                (w.to_string(), w.rank(), 0)
            };
            Ok(match format {
                Format::Json => to_json(&json!({ "word": text, "valid": true, "rank": rank, "threads": threads })),
                Format::Csv => format!("word,valid,rank,threads\n{text},true,{rank},{threads}\n"),
                Format::Text => format!("valid, rank {rank}\n"),
            })
        }
        CombCmd::Reduce { word, twisted, depth, signs } => {
            let t = if *twisted { TwistedLoom::parse(word)? } else { TwistedLoom::from(CombWord::parse(word)?) };
            let w = t.comb();
            let path = match comb_reduce_search(&w, *depth) {
                SearchOutcome::Found(p) => p,
                SearchOutcome::Inconclusive { explored } => {
                    return Ok(match format {
                        Format::Json => to_json(&json!({ "word": w.to_string(), "outcome": "inconclusive", "explored": explored })),
                        Format::Csv => format!("word,outcome,explored\n{w},inconclusive,{explored}\n"),
                        Format::Text => format!("inconclusive after {explored} words\n"),
                    });
                }
            };
            let reduced = localize_and_reduce(&t, &path)?;
            let loom = match signs {
                Some(s) => Some(clasp_surgery_to_loom(&reduced, &parse_signs(s)?)?),
                None => None,
            };
            let moves: Vec<String> =
                path.iter().map(|m| format!("{} {:?} @{}", m.rule, m.dir, m.position)).collect();
            Ok(match format {
                Format::Json => to_json(&json!({
                    "word": t.to_string(), "outcome": "reduced", "moves": moves,
                    "result": reduced.to_string(), "loom": loom.as_ref().map(|l| l.to_string()),
                })),
                Format::Csv => {
                    let mut s = "step,move\n".to_string();
                    for (k, m) in moves.iter().enumerate() {
                        s += &format!("{},{m}\n", k + 1);
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for m in &moves {
                        s += &format!("{m}\n");
                    }
                    s += &format!("result: {reduced}\n");
                    if let Some(l) = &loom {
                        s += &format!("loom: {l}\n");
                    }
                    s
                }
            })
        }
    }
}

fn monoid(name: &str) -> Result<MonoidTable, Failure> {
    Ok(match name {
        "trivial" => MonoidTable::trivial(),
        "z2" => MonoidTable::cyclic(2),
        "z3" => MonoidTable::cyclic(3),
        "z2xz2" => MonoidTable::product(&MonoidTable::cyclic(2), &MonoidTable::cyclic(2)),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            MonoidTable::from_json(&text)?
        }
    })
}

fn cubes(format: Format, c: &CubesCmd) -> Out {
    let CubesCmd::MonoidCheck { monoid: name, n, all_generators } = c;
    let mut m = monoid(name)?;
    if *all_generators {
        m = m.with_all_generators();
    }
    let pres = presentation_invariants(&monoid_complex_presentation(&m, *n)?)?;
    let oracle = monoid_ring_oracle(&m, *n)?;
    let equal = pres == oracle;
    let text = match format {
        Format::Json => to_json(&json!({
            "monoid": name, "n": n, "presentation": pres.to_string(), "oracle": oracle.to_string(), "equal": equal,
        })),
        Format::Csv => format!("monoid,n,presentation,oracle,equal\n{name},{n},{pres},{oracle},{equal}\n"),
        Format::Text => format!("presentation: {pres}\noracle:       {oracle}\n{}\n", if equal { "equal" } else { "DIFFERENT" }),
    };
    if equal {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn selftest(format: Format, cache: &MatrixCache, a: &SelftestArgs) -> Out {
    let results = selftest::run(cache, selftest::Faults { wrong_f21: a.inject_wrong_f21 });
    let pass = results.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => to_json(&json!({ "pass": pass, "checks": results })),
        Format::Csv => {
            let mut s = "check,pass,detail\n".to_string();
            for r in &results {
                s += &format!("{},{},{}\n", r.name, r.pass, r.detail.as_deref().unwrap_or("").replace(',', ";"));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                s += &format!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
                if let Some(d) = &r.detail {
                    s += &format!(": {d}");
                }
                s += "\n";
            }
            s
        }
    };
    if pass {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn note_cache(n: usize, s: CacheState) {
    let what = match s {
        CacheState::Hit => "hit",
        CacheState::Miss => "miss",
        CacheState::Rebuilt => "rebuilt after a bad file",
        CacheState::Disabled => return,
    };
    eprintln!("cache {what} for rank {n}");
}
