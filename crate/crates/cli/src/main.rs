use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperlag::colex::colex_first_m;
use hyperlag::compress::left_compress_fixpoint;
use hyperlag::format;
use hyperlag::lab::{default_vertex_bound, scan, verify_connection, ScanConfig, ScanReport};
use hyperlag::lagrangian::{kkt_check, optimize, support_minimize};
use hyperlag::theorems::{verify_theorem, TheoremId, TheoremInstance, TheoremVerdict, VerifyConfig};
use hyperlag::{AlphaParams, EdgeTypeSet, Hypergraph, Optimum, SolverConfig};
use serde::Serialize;

const EXIT_INPUT: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "hyperlag", version, about = "Lagrangians of non-uniform hypergraphs")]
struct Cli {
    /// Edge coefficient as LEVEL=VALUE; repeat per level. The lowest level
    /// of the graph defaults to 1.
    #[arg(long = "alpha", global = true, value_name = "LEVEL=VALUE", value_parser = parse_alpha)]
    alpha: Vec<(usize, f64)>,
    /// Solver stopping tolerance on the projected-gradient residual.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random starts in addition to the structured ones.
    #[arg(long, global = true, default_value_t = 12)]
    starts: usize,
    #[arg(long = "max-iters", global = true, default_value_t = 5000)]
    max_iters: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Agreement tolerance for verdicts and scans.
    #[arg(long = "check-tol", global = true, default_value_t = 1e-7)]
    check_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximize the Lagrangian of a hypergraph file ("-" reads stdin).
    Lagrangian {
        input: PathBuf,
        /// Shrink the support while keeping the optimal value.
        #[arg(long = "min-support")]
        min_support: bool,
    },
    /// Print the first M sets of the colex order over the given levels.
    Colex {
        #[arg(long = "type", value_name = "LEVELS")]
        types: EdgeTypeSet,
        #[arg(long)]
        m: usize,
    },
    /// Left-compress a hypergraph file until no compression changes it.
    Compress { input: PathBuf },
    /// Compare a closed-form value with the computed Lagrangian.
    Verify {
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        /// Hypergraph file; defaults to the graph the statement is about.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long = "type", value_name = "LEVELS")]
        types: Option<EdgeTypeSet>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// For `connection`: scan every left-compressed graph on N vertices.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Scan left-compressed graphs with M edges on N vertices against colex.
    Scan {
        #[arg(long = "type", value_name = "LEVELS")]
        types: EdgeTypeSet,
        #[arg(long)]
        m: usize,
        /// Vertex bound; defaults to one more than the smallest t with
        /// C(t, max level) >= M.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "max-enumerated", default_value_t = 1_000_000)]
        max_enumerated: usize,
    },
}

fn parse_alpha(s: &str) -> Result<(usize, f64), String> {
    let (r, v) = s.split_once('=').ok_or_else(|| format!("expected LEVEL=VALUE, got {s:?}"))?;
    let r: usize = r.trim().parse().map_err(|e| format!("bad level {r:?}: {e}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad value {v:?}: {e}"))?;
    Ok((r, v))
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: hyperlag::Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<hyperlag::Error> for Failure {
    fn from(e: hyperlag::Error) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

/// Rendered output plus the exit status it implies.
struct Report {
    text: String,
    code: u8,
}

/// At most 12 significant digits, trailing zeros trimmed.
fn sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    rounded.to_string()
}

fn join_sig(xs: &[f64]) -> String {
    xs.iter().map(|&x| sig(x)).collect::<Vec<_>>().join(" ")
}

fn join_usize(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn read_graph(path: &PathBuf) -> Result<Hypergraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?
    };
    format::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

impl Cli {
    fn solver(&self) -> SolverConfig {
        SolverConfig { tol: self.tol, seed: self.seed, starts: self.starts, max_iters: self.max_iters, ..SolverConfig::default() }
    }

    fn check(&self) -> Result<(), Failure> {
        if self.tol.is_nan() || self.tol <= 0.0 || self.check_tol.is_nan() || self.check_tol <= 0.0 {
            return Err(input_error("tolerances must be positive"));
        }
        let mut levels: Vec<usize> = self.alpha.iter().map(|&(r, _)| r).collect();
        levels.sort_unstable();
        if levels.windows(2).any(|w| w[0] == w[1]) {
            return Err(input_error("each --alpha level may be given once"));
        }
        Ok(())
    }

    /// Coefficients for a graph or type set: the lowest level defaults to 1,
    /// any other present level must be given.
    fn alpha_for(&self, types: Option<&EdgeTypeSet>) -> Result<AlphaParams, Failure> {
        let base = types.map(|t| t.min()).unwrap_or(1);
        let alpha = AlphaParams::new(base, self.alpha.iter().copied())?;
        if let Some(t) = types {
            for r in t.iter() {
                alpha.coefficient(r).ok_or(hyperlag::Error::MissingAlpha(r))?;
            }
        }
        Ok(alpha)
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> String {
        match self.format {
            OutputFormat::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
            OutputFormat::Text => text(),
        }
    }
}

#[derive(Serialize)]
struct GraphOut {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl GraphOut {
    fn new(h: &Hypergraph) -> Self {
        GraphOut { vertices: h.n(), edges: h.edges().map(|e| e.to_vec()).collect() }
    }
}

fn optimum_text(o: &Optimum) -> String {
    format!(
        "value {}\nweighting {}\nsupport {}\nkkt_residual {}\nconverged {}\nstarts_used {}\n",
        sig(o.value),
        join_sig(o.weighting.as_slice()),
        join_usize(&o.support),
        sig(o.kkt_residual),
        o.converged,
        o.starts_used
    )
}

fn verdict_text(v: &TheoremVerdict) -> String {
    let mut s = format!(
        "theorem {}\nhypothesis_ok {}\npredicted {}\ncomputed {}\nabs_error {}\n",
        v.theorem_id,
        v.hypothesis_ok,
        sig(v.predicted),
        sig(v.computed),
        sig(v.abs_error)
    );
    if let Some(o) = v.oracle_value {
        s += &format!("oracle_value {}\n", sig(o));
    }
    s += &format!("witness {}\n", join_sig(v.witness.weighting.as_slice()));
    for note in &v.notes {
        s += &format!("note {note}\n");
    }
    s += &format!("result {}\n", if v.passed { "pass" } else { "fail" });
    s
}

fn scan_text(r: &ScanReport) -> String {
    let mut s = format!(
        "types {}\nm {}\nn {}\nextremal_value {}\ncolex_value {}\nconjecture_holds {}\nenumerated_count {}\ncomplete {}\noracle_disagreements {}\n",
        r.types,
        r.m,
        r.n,
        sig(r.extremal_value),
        sig(r.colex_value),
        r.conjecture_holds,
        r.enumerated_count,
        r.complete,
        r.oracle_disagreements
    );
    for w in &r.witnesses {
        s += &format!("# witness value {}\n{}", sig(w.value), w.graph);
    }
    s
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    cli.check()?;
    match &cli.command {
        Command::Lagrangian { input, min_support } => {
            let h = read_graph(input)?;
            let alpha = cli.alpha_for(h.edge_types().as_ref())?;
            let cfg = cli.solver();
            let mut opt = optimize(&h, &alpha, &cfg)?;
            if *min_support && !h.is_empty() {
                opt = support_minimize(&h, &alpha, &opt, &cfg)?;
            }
            let code = if opt.converged { 0 } else { EXIT_NUMERIC };
            let text = cli.emit(&opt, || {
                let mut s = optimum_text(&opt);
                if let Ok(k) = kkt_check(&h, &alpha, &opt.weighting, cli.check_tol) {
                    s += &format!("uncovered_pairs {}\n", k.uncovered_pairs.len());
                }
                s
            });
            Ok(Report { text, code })
        }
        Command::Colex { types, m } => {
            if *m == 0 {
                return Err(input_error("--m must be at least 1"));
            }
            let g = colex_first_m(types, *m)?;
            Ok(Report { text: cli.emit(&GraphOut::new(&g), || format::write(&g)), code: 0 })
        }
        Command::Compress { input } => {
            let h = read_graph(input)?;
            let c = left_compress_fixpoint(&h);
            let counts: Vec<String> = c.level_counts().iter().map(|(r, k)| format!("{r}:{k}")).collect();
            let unchanged = c.level_counts() == h.level_counts();
            let text = cli.emit(&GraphOut::new(&c), || {
                format!(
                    "# edges per level {} ({})\n{}",
                    counts.join(" "),
                    if unchanged { "unchanged" } else { "CHANGED" },
                    format::write(&c)
                )
            });
            Ok(Report { text, code: if unchanged { 0 } else { EXIT_NUMERIC } })
        }
        Command::Verify { theorem, input, types, t, r, m, n } => {
            let graph = input.as_ref().map(read_graph).transpose()?;
            let vcfg = VerifyConfig { solver: cli.solver(), tol: cli.check_tol, oracle_max_n: 8 };
            let verdict = match (theorem, n) {
                (TheoremId::Connection, Some(n)) => {
                    let ty = types.clone().ok_or_else(|| input_error("--type is required"))?;
                    let m = m.ok_or_else(|| input_error("--m is required"))?;
                    let alpha = AlphaParams::new(1, cli.alpha.iter().copied())?;
                    let scfg = ScanConfig {
                        solver: SolverConfig { parallel: false, ..cli.solver() },
                        tol: cli.check_tol,
                        ..ScanConfig::default()
                    };
                    verify_connection(&ty, &alpha, m, *n, &scfg)?
                }
                _ => {
                    let inst = TheoremInstance { graph, alpha: cli.alpha.clone(), types: types.clone(), t: *t, r: *r, m: *m };
                    verify_theorem(*theorem, &inst, &vcfg)?
                }
            };
            let code = if verdict.passed { 0 } else { EXIT_NUMERIC };
            Ok(Report { text: cli.emit(&verdict, || verdict_text(&verdict)), code })
        }
        Command::Scan { types, m, n, max_enumerated } => {
            if *m == 0 {
                return Err(input_error("--m must be at least 1"));
            }
            let n = n.unwrap_or_else(|| default_vertex_bound(types.max(), *m));
            let alpha = cli.alpha_for(Some(types))?;
            let scfg = ScanConfig {
                solver: SolverConfig { parallel: false, ..cli.solver() },
                max_enumerated: *max_enumerated,
                tol: cli.check_tol,
                ..ScanConfig::default()
            };
            let report = scan(types, &alpha, *m, n, &scfg)?;
            let code = if !report.complete {
                EXIT_INCOMPLETE
            } else if !report.conjecture_holds {
                EXIT_NUMERIC
            } else {
                0
            };
            Ok(Report { text: cli.emit(&report, || scan_text(&report)), code })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if out.write_all(report.text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
