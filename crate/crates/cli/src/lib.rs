//! The `greene` command line: argument parsing and dispatch, kept apart
//! from `main` so that tests can drive it in-process.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use greene_core::algebra::{canonical_text, frac_equal, RatFrac};
use greene_core::corpus::corpus_gen;
use greene_core::dot::{export_dot_graph, export_dot_trees};
use greene_core::format::{parse_input, serialize_poset_file, InputFile, PosetFile};
use greene_core::greene::{
    check_notch_identity, lattice_point_report, psi_report, sigma_report, Method,
};
use greene_core::poset::{
    bounded_regions, lattice_paths, parse_edge_list, parse_rational, skew_to_poset, Edge,
    LabeledGraph, Poset, Region, SkewDiagram,
};
use greene_core::subdivision::{
    psi_from_sum, reduce_full, sigma_by_reduction, sigma_from_sum, strategy_by_name, CycleFirst,
    FormalSum, ReductionStrategy, Seeded,
};
use greene_core::triangulation::{
    decompose_lr, lp_triangulation, noncrossing_alternating_trees, EdgeOrder,
};
use greene_core::GreeneError;

/// Exit code for a completed run whose checks all agree.
pub const EXIT_OK: i32 = 0;
/// Exit code when two computations of the same quantity differ.
pub const EXIT_DISAGREE: i32 = 1;
/// Exit code for unreadable input or a failing operation.
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "greene",
    version,
    about = "Greene's function and root cone transforms of posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Greene's rational function Psi_P.
    Psi(EvalArgs),
    /// Integer point transform of the root cone.
    Sigma(EvalArgs),
    /// Trees of the triangulation, one per line.
    Triangulate {
        input: PathBuf,
        /// Comma-separated edges `i-j` ranking the edges, smallest first.
        #[arg(long)]
        order: Option<String>,
    },
    /// Reduces the Hasse diagram in the subdivision algebra.
    Reduce {
        input: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Specialise the sum at beta = 0 (Psi) or beta = -1 (sigma).
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<i32>,
        #[arg(long)]
        at: Option<String>,
    },
    /// Lattice paths of a skew diagram, cells `i,j` separated by spaces.
    Paths { input: PathBuf },
    /// Notches and their identities.
    Notch { input: PathBuf },
    /// Runs every applicable method and compares them pairwise.
    Verify {
        input: PathBuf,
        /// Also compare the reduction with cone membership on `[-N, N]^n`.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Seeded random connected posets.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Directory for one file per poset; standard output otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of the Hasse diagram or of the triangulation.
    ExportDot {
        input: PathBuf,
        #[arg(long)]
        trees: bool,
    },
}

#[derive(Args, Debug)]
struct EvalArgs {
    input: PathBuf,
    /// oracle, general, planar, bflr, admissible or reduction.
    #[arg(long)]
    method: Option<String>,
    /// Evaluate at `v1,v2,...` (integers or p/q) instead of printing the fraction.
    #[arg(long)]
    at: Option<String>,
    #[command(flatten)]
    strategy: StrategyArgs,
}

#[derive(Args, Debug)]
struct StrategyArgs {
    /// lexmin, lexmax, longest or random, each optionally prefixed by `cycle-`.
    #[arg(long, default_value = "cycle-lexmin")]
    strategy: String,
    /// Seed for the `random` strategies.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl StrategyArgs {
    fn build(&self) -> Result<Box<dyn ReductionStrategy>, CliError> {
        match self.strategy.as_str() {
            "random" => Ok(Box::new(Seeded(self.seed))),
            "cycle-random" => Ok(Box::new(CycleFirst(Seeded(self.seed)))),
            name => Ok(strategy_by_name(name)?),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(GreeneError),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<GreeneError> for CliError {
    fn from(e: GreeneError) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

type CliResult = Result<i32, CliError>;

/// Parsed input with the data every subcommand may need.
struct Loaded {
    poset: Poset,
    regions: Option<Vec<Region>>,
    skew: Option<(SkewDiagram, Vec<usize>)>,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    match parse_input(&text)? {
        InputFile::Poset(PosetFile {
            poset,
            embedding,
            regions,
        }) => {
            let regions = match (regions, embedding) {
                (Some(r), _) => Some(r),
                (None, Some(e)) => Some(bounded_regions(&poset, &e)?),
                (None, None) => None,
            };
            Ok(Loaded {
                poset,
                regions,
                skew: None,
            })
        }
        InputFile::Skew(d) => {
            let (poset, order) = skew_to_poset(&d);
            Ok(Loaded {
                poset,
                regions: None,
                skew: Some((d, order)),
            })
        }
    }
}

fn parse_point(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(|t| {
            parse_rational(t.trim())
                .ok_or_else(|| CliError::Usage(format!("bad coordinate {t:?} in --at")))
        })
        .collect()
}

fn write_frac(out: &mut dyn Write, f: &RatFrac, at: Option<&str>) -> Result<(), CliError> {
    let text = match at {
        Some(a) => f.eval(&parse_point(a)?)?.to_string(),
        None => canonical_text(f),
    };
    writeln!(out, "{text}").map_err(|e| CliError::Io("<stdout>".into(), e))
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes())
        .map_err(|e| CliError::Io("<stdout>".into(), e))
}

fn reduce(input: &Loaded, strategy: &StrategyArgs) -> Result<FormalSum, CliError> {
    Ok(reduce_full(
        &input.poset.hasse(),
        strategy.build()?.as_ref(),
    )?)
}

fn cmd_eval(args: &EvalArgs, sigma: bool, out: &mut dyn Write) -> CliResult {
    let input = load(&args.input)?;
    let default = if sigma {
        Method::Reduction
    } else {
        Method::Oracle
    };
    let method = match &args.method {
        Some(m) => m.parse()?,
        None => default,
    };
    let regions = input.regions.as_deref();
    let f = if method == Method::Reduction {
        if sigma {
            sigma_by_reduction(&input.poset.hasse(), args.strategy.build()?.as_ref())?
        } else {
            psi_from_sum(&reduce(&input, &args.strategy)?)?
        }
    } else if sigma {
        sigma_report(&input.poset, method, regions)?.result
    } else {
        let skew = input.skew.as_ref().map(|(d, _)| d);
        psi_report(&input.poset, method, regions, skew)?.result
    };
    write_frac(out, &f, args.at.as_deref())?;
    Ok(EXIT_OK)
}

fn triangulation(
    input: &Loaded,
    order: Option<&[Edge]>,
) -> Result<Vec<(String, Vec<LabeledGraph>)>, CliError> {
    if let Some((_, line)) = &input.skew {
        return Ok(vec![(
            String::new(),
            noncrossing_alternating_trees(&input.poset.hasse(), line),
        )]);
    }
    let h = input.poset.hasse();
    let order_for = |g: &LabeledGraph| match order {
        Some(list) => EdgeOrder::completed(list, g),
        None => EdgeOrder::lex(g),
    };
    if h.is_alternating() && h.is_connected() {
        return Ok(vec![(String::new(), lp_triangulation(&h, &order_for(&h))?)]);
    }
    let mut pieces = Vec::new();
    for (bp, g) in decompose_lr(&input.poset) {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let header = format!("# L={} R={}", join(&bp.left), join(&bp.right));
        pieces.push((header, lp_triangulation(&g, &order_for(&g))?));
    }
    Ok(pieces)
}

fn cmd_triangulate(input: &Path, order: Option<&str>, out: &mut dyn Write) -> CliResult {
    let input = load(input)?;
    let order = order.map(parse_edge_list).transpose()?;
    let mut s = String::new();
    for (header, trees) in triangulation(&input, order.as_deref())? {
        if !header.is_empty() {
            s.push_str(&header);
            s.push('\n');
        }
        for t in trees {
            s.push_str(&t.to_string());
            s.push('\n');
        }
    }
    emit(out, &s)?;
    Ok(EXIT_OK)
}

fn cmd_reduce(
    input: &Path,
    strategy: &StrategyArgs,
    beta: Option<i32>,
    at: Option<&str>,
    out: &mut dyn Write,
) -> CliResult {
    let input = load(input)?;
    let sum = reduce(&input, strategy)?;
    match beta {
        None => emit(out, &sum.dump())?,
        Some(0) => write_frac(out, &psi_from_sum(&sum)?, at)?,
        Some(-1) => write_frac(out, &sigma_from_sum(&sum)?, at)?,
        Some(b) => return Err(CliError::Usage(format!("--beta must be 0 or -1, got {b}"))),
    }
    Ok(EXIT_OK)
}

fn cmd_paths(input: &Path, out: &mut dyn Write) -> CliResult {
    let input = load(input)?;
    let (d, _) = input
        .skew
        .as_ref()
        .ok_or_else(|| CliError::Usage("paths needs a skew diagram input".into()))?;
    let mut s = String::new();
    for path in lattice_paths(d)? {
        let cells: Vec<String> = path.iter().map(|(i, j)| format!("{i},{j}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    emit(out, &s)?;
    Ok(EXIT_OK)
}

fn cmd_notch(input: &Path, out: &mut dyn Write) -> CliResult {
    let input = load(input)?;
    let mut s = String::new();
    let mut code = EXIT_OK;
    for t in greene_core::poset::find_notches(&input.poset) {
        let c = check_notch_identity(&input.poset, t)?;
        let word = |ok: bool| if ok { "ok" } else { "FAIL" };
        s.push_str(&format!(
            "{:?} a={} b={} c={}: psi {}, sigma {}\n",
            t.shape,
            t.a,
            t.b,
            t.c,
            word(c.psi),
            word(c.sigma)
        ));
        if !c.holds() {
            code = EXIT_DISAGREE;
        }
    }
    emit(out, &s)?;
    Ok(code)
}

/// Pairwise agreement table; returns whether every pair agrees.
fn matrix(title: &str, results: &[(Method, RatFrac)], s: &mut String) -> bool {
    let width = results
        .iter()
        .map(|(m, _)| m.name().len())
        .chain([title.len()])
        .max()
        .unwrap_or(0);
    let mut all = true;
    s.push_str(&format!("{title:<width$}"));
    for (m, _) in results {
        s.push_str(&format!(" {:<width$}", m.name()));
    }
    s.push('\n');
    for (m, f) in results {
        s.push_str(&format!("{:<width$}", m.name()));
        for (_, g) in results {
            let ok = frac_equal(f, g);
            all &= ok;
            s.push_str(&format!(" {:<width$}", if ok { "=" } else { "DIFFER" }));
        }
        s.push('\n');
    }
    all
}

fn cmd_verify(
    input: &Path,
    bound: Option<i64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let input = load(input)?;
    let p = &input.poset;
    let regions = input.regions.as_deref();
    let skew = input.skew.as_ref().map(|(d, _)| d);
    let planar_ok = regions.is_some_and(|r| r.iter().all(|r| r.as_pair().is_some()));
    let mut methods = vec![Method::Oracle, Method::General];
    if planar_ok {
        methods.push(Method::Planar);
    } else if regions.is_some() {
        methods.push(Method::Admissible);
    }
    if skew.is_some() {
        methods.push(Method::Bflr);
    }
    methods.push(Method::Reduction);

    let mut psi = Vec::new();
    for &m in &methods {
        match psi_report(p, m, regions, skew) {
            Ok(r) => psi.push((m, r.result)),
            Err(e) => {
                let _ = writeln!(err, "note: psi by {m} skipped: {e}");
            }
        }
    }
    let mut sigma = Vec::new();
    for &m in methods
        .iter()
        .filter(|m| matches!(m, Method::Planar | Method::Admissible | Method::Reduction))
    {
        match sigma_report(p, m, regions) {
            Ok(r) => sigma.push((m, r.result)),
            Err(e) => {
                let _ = writeln!(err, "note: sigma by {m} skipped: {e}");
            }
        }
    }
    let mut s = String::new();
    let mut all = matrix("psi", &psi, &mut s);
    all &= matrix("sigma", &sigma, &mut s);
    if let Some(b) = bound {
        let sum = reduce_full(
            &p.hasse(),
            &greene_core::subdivision::DefaultStrategy::default(),
        )?;
        let r = lattice_point_report(p, &sum, b)?;
        s.push_str(&format!(
            "lattice points |m_i|<={b}: {} checked, {} in the cone, {} mismatches\n",
            r.points,
            r.inside,
            r.mismatches.len()
        ));
        all &= r.passed();
    }
    s.push_str(if all { "agree\n" } else { "DISAGREE\n" });
    emit(out, &s)?;
    Ok(if all { EXIT_OK } else { EXIT_DISAGREE })
}

fn cmd_corpus(
    seed: u64,
    n_max: usize,
    count: usize,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    if !(1..=9).contains(&n_max) {
        return Err(CliError::Usage(format!(
            "--n-max must lie in 1..=9, got {n_max}"
        )));
    }
    let posets = corpus_gen(seed, n_max, count);
    let width = count.to_string().len();
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
            for (k, p) in posets.into_iter().enumerate() {
                let path = dir.join(format!("poset_{:0width$}.poset", k + 1));
                let text = serialize_poset_file(&PosetFile::bare(p));
                fs::write(&path, text).map_err(|e| CliError::Io(path.clone(), e))?;
            }
        }
        None => {
            let mut s = String::new();
            for p in posets {
                s.push_str(&serialize_poset_file(&PosetFile::bare(p)));
            }
            emit(out, &s)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_export_dot(input: &Path, trees: bool, out: &mut dyn Write) -> CliResult {
    let input = load(input)?;
    let text = if trees {
        let all: Vec<LabeledGraph> = triangulation(&input, None)?
            .into_iter()
            .flat_map(|(_, t)| t)
            .collect();
        export_dot_trees(&all)
    } else {
        export_dot_graph(&input.poset.hasse())
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Psi(a) => cmd_eval(&a, false, out),
        Command::Sigma(a) => cmd_eval(&a, true, out),
        Command::Triangulate { input, order } => cmd_triangulate(&input, order.as_deref(), out),
        Command::Reduce {
            input,
            strategy,
            beta,
            at,
        } => cmd_reduce(&input, &strategy, beta, at.as_deref(), out),
        Command::Paths { input } => cmd_paths(&input, out),
        Command::Notch { input } => cmd_notch(&input, out),
        Command::Verify { input, bound } => cmd_verify(&input, bound, out, err),
        Command::Corpus {
            seed,
            n_max,
            count,
            out: dir,
        } => cmd_corpus(seed, n_max, count, dir.as_deref(), out),
        Command::ExportDot { input, trees } => cmd_export_dot(&input, trees, out),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_ERROR;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
