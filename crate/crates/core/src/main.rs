use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use diampart::adversary::{bit_count, AdversaryInstance};
use diampart::generate::{random_matrix, random_matrix_with_ties, random_points, rng};
use diampart::instance::{Format, Instance, Source};
use diampart::oracle::{run_with_counting, WeightOracle};
use diampart::pipeline::{
    euclidean_fast_path, euclidean_fast_path_all, solve_all, solve_diameter_all, solve_single,
    AllCardinalities, PartitionResult, Problem,
};
use diampart::selftest::selftest;
use diampart::spanning::{build_spanning_tree, Sense};
use diampart::{Error, ExtReal};

#[derive(Parser)]
#[command(name = "diampart", version, about = "Exact two-class diameter partitioning and max-min dispersion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance for one cardinality (JSON) or all of them (TSV).
    Solve(SolveArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Cross-check the solvers against exhaustive enumeration.
    Selftest {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time the all-cardinalities solver on random matrices.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the extremal spanning tree as `u v w` lines.
    Tree {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SenseArg::Max)]
        sense: SenseArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Diameter,
    Mdcc,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Diameter => Problem::Diameter,
            ProblemArg::Mdcc => Problem::Dispersion,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Matrix,
    Points,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Max,
    Min,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Size of the color-0 class.
    #[arg(short, conflicts_with = "all", required_unless_present = "all")]
    c: Option<usize>,
    /// Report the optimum for every cardinality.
    #[arg(long)]
    all: bool,
    #[arg(short, long)]
    input: PathBuf,
    /// Input format; detected from the header when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Use the planar geometric route (points input only).
    #[arg(long)]
    euclidean: bool,
    /// Report the number of weight queries.
    #[arg(long)]
    count_queries: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// With --all, append an optimal coloring to every row.
    #[arg(long)]
    witness: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The hidden-bit {1,2}-metric family.
    Adversary {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ProblemArg::Diameter)]
        problem: ProblemArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit bits as a 0/1 string, one per pair inside A.
        #[arg(long)]
        bits: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform random weight matrix.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw weights from a five-value set.
        #[arg(long)]
        ties: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform random points in the unit cube.
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit 1 for inputs the solver rejects, 2 for unreadable input.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Io(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn infeasible(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::from(Error::Io(e))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::from(Error::Io(e)))
        }
    }
}

fn coloring_string(coloring: &[u8]) -> String {
    coloring.iter().map(|b| char::from(b'0' + b)).collect()
}

fn profile_tsv(all: &AllCardinalities, report: impl Fn(ExtReal) -> ExtReal, witness: bool) -> Result<String, Failure> {
    let mut out = String::new();
    for c in 0..=all.len() {
        out.push_str(&format!("{c}\t{}", report(all.objective(c))));
        if witness {
            out.push('\t');
            out.push_str(&coloring_string(&all.witness(c)?.coloring));
        }
        out.push('\n');
    }
    Ok(out)
}

fn single_json(r: PartitionResult, queries: Option<u64>) -> String {
    let mut s = r.to_json();
    if let Some(q) = queries {
        s.pop();
        s.push_str(&format!(",\"queries\":{q}}}"));
    }
    s.push('\n');
    s
}

fn solve_cmd(args: SolveArgs) -> Result<(), Failure> {
    let format = args.format.map(|f| match f {
        FormatArg::Matrix => Format::Matrix,
        FormatArg::Points => Format::Points,
    });
    let instance = Instance::load(&args.input, format)?;
    let problem = Problem::from(args.problem);
    if let Some(c) = args.c {
        if c > instance.len() {
            return Err(infeasible(format!("cardinality {c} exceeds n = {}", instance.len())));
        }
    }

    // Points are solved on squared distances and reported as distances.
    let report: fn(ExtReal) -> ExtReal = match instance.source {
        Source::Points(_) => ExtReal::sqrt,
        Source::Matrix(_) => |x| x,
    };

    if args.euclidean {
        let Source::Points(cloud) = &instance.source else {
            return Err(infeasible("--euclidean needs a points instance"));
        };
        if args.count_queries {
            return Err(infeasible("--count-queries applies to the generic solver only"));
        }
        let text = match args.c {
            Some(c) => single_json(euclidean_fast_path(cloud, c, problem)?.map_objective(report), None),
            None => profile_tsv(&euclidean_fast_path_all(cloud, problem)?, report, args.witness)?,
        };
        return emit(&args.out, &text);
    }

    let oracle: Box<dyn WeightOracle + '_> = match &instance.source {
        Source::Matrix(m) => Box::new(m),
        Source::Points(p) => Box::new(p.squared_distances()),
    };
    let text = match args.c {
        Some(c) => {
            let (r, queries) = run_with_counting(oracle, |o| solve_single(o, c, problem));
            single_json(r?.map_objective(report), args.count_queries.then_some(queries))
        }
        None => {
            let (all, queries) = run_with_counting(oracle, |o| solve_all(o, problem));
            let mut text = profile_tsv(&all, report, args.witness)?;
            if args.count_queries {
                text.push_str(&format!("# queries\t{queries}\n"));
            }
            text
        }
    };
    emit(&args.out, &text)
}

fn gen_cmd(cmd: GenCommand) -> Result<(), Failure> {
    match cmd {
        GenCommand::Adversary {
            n,
            problem,
            seed,
            bits,
            out,
        } => {
            let problem = Problem::from(problem);
            let adv = match bits {
                Some(s) => {
                    let bits = s
                        .chars()
                        .map(|ch| match ch {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            _ => Err(infeasible(format!("bit string may only hold 0 and 1, got {ch:?}"))),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if n >= 4 && bits.len() != bit_count(n) {
                        return Err(infeasible(format!(
                            "n = {n} needs {} bits, got {}",
                            bit_count(n),
                            bits.len()
                        )));
                    }
                    AdversaryInstance::new(n, bits, problem)?
                }
                None => AdversaryInstance::random(n, problem, &mut rng(seed))?,
            };
            emit(&out, &adv.to_instance().to_text())
        }
        GenCommand::Random { n, seed, ties, out } => {
            let mut r = rng(seed);
            let m = if ties {
                random_matrix_with_ties(n, &mut r)
            } else {
                random_matrix(n, &mut r)
            };
            emit(&out, &Instance::matrix(m).to_text())
        }
        GenCommand::Points { n, d, seed, out } => {
            if d == 0 {
                return Err(infeasible("dimension must be at least 1"));
            }
            let p = random_points(n, d, &mut rng(seed));
            emit(&out, &Instance::points(p).to_text())
        }
    }
}

fn bench_cmd(sizes: &[usize], runs: usize, seed: u64) -> Result<(), Failure> {
    println!("n\tmedian_s\tpair_visits\tratio");
    let mut prev: Option<f64> = None;
    for &n in sizes {
        let m = random_matrix(n, &mut rng(seed ^ n as u64));
        let mut times = Vec::with_capacity(runs.max(1));
        let mut visits = 0;
        for _ in 0..runs.max(1) {
            let start = Instant::now();
            let all = solve_diameter_all(&m);
            times.push(start.elapsed().as_secs_f64());
            visits = all.pair_visits();
        }
        times.sort_by(f64::total_cmp);
        let median = times[times.len() / 2];
        let ratio = prev.map_or("-".to_string(), |p| format!("{:.2}", median / p));
        println!("{n}\t{median:.4}\t{visits}\t{ratio}");
        prev = Some(median);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve(args) => solve_cmd(args),
        Command::Gen(cmd) => gen_cmd(cmd),
        Command::Selftest { max_n, trials, seed } => {
            let checks = selftest(max_n, trials, seed);
            for c in &checks {
                match &c.failure {
                    None => println!("PASS {} ({} cases)", c.name, c.cases),
                    Some(msg) => println!("FAIL {}: {msg}", c.name),
                }
            }
            if checks.iter().all(|c| c.passed()) {
                Ok(())
            } else {
                Err(infeasible("self-test failed"))
            }
        }
        Command::Bench { sizes, runs, seed } => bench_cmd(&sizes, runs, seed),
        Command::Tree { input, sense } => {
            let instance = Instance::load(&input, None)?;
            let sense = match sense {
                SenseArg::Max => Sense::Max,
                SenseArg::Min => Sense::Min,
            };
            let tree = build_spanning_tree(instance.oracle().as_ref(), sense);
            emit(&None, &tree.dump())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("diampart: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
