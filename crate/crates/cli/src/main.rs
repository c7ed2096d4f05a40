use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use unipotent::as_u4::{u4_as_build, AsInstance};
use unipotent::descent::{build_descent_context, build_twisted_tower, descent_instance};
use unipotent::expr::parse_base;
use unipotent::kummer_u4::{instance_generate, u4_build, BuildOptions, KummerInstance};
use unipotent::trace::{
    catalog, construct_record, massey_report, parse_base_desc, rep_from_trace, trace_from_as, trace_from_descent,
    trace_from_kummer, verify_trace, RecordKind, TraceFile, SCHEMA_VERSION,
};
use unipotent::Error;

#[derive(Parser)]
#[command(name = "unipotent", version, about = "Construct and verify U4(F_p) Galois extensions")]
struct Cli {
    /// Output file, written atomically; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel verification.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized suites; constructions never use it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a U4 extension and write its trace.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Replay every check of a trace from its raw data.
    Verify { trace: PathBuf },
    /// Triple Massey product witnesses for the representation of a trace.
    Massey {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Randomized cases per lemma suite.
        #[arg(long, default_value_t = 0)]
        cases: usize,
    },
    /// List the shipped instances.
    Catalog {
        #[arg(long)]
        kind: Option<KindArg>,
    },
}

#[derive(Subcommand)]
enum Construct {
    ArtinSchreier {
        #[arg(long, default_value = "fq-t")]
        base: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "artin-schreier")]
        id: String,
    },
    Kummer {
        #[arg(long)]
        base: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        search: Option<u32>,
        #[arg(long, default_value_t = 2)]
        variant: u8,
        #[arg(long, default_value = "kummer")]
        id: String,
    },
    Descent {
        #[arg(long)]
        base0: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 25)]
        search: u32,
        #[arg(long, default_value = "descent")]
        id: String,
    },
    /// A catalog instance by id.
    Record { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    ArtinSchreier,
    Kummer,
    Descent,
}

/// Exit 2 for bad input, exit 1 for a failed check.
enum Failure {
    Input(String, String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Parse(_) => "parse",
            Error::Serde(_) => "io",
            _ => "precondition",
        };
        Failure::Input(kind.into(), e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input("io".into(), format!("{}: {e}", path.display()))
}

fn write_atomic(path: &Path, data: &str) -> Result<(), Failure> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Failure::Input("io".into(), "output path has no file name".into()))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
    f.write_all(data.as_bytes()).and_then(|_| f.sync_all()).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

fn emit(out: Option<&Path>, data: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, data),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn read_trace(path: &Path) -> Result<TraceFile, Failure> {
    let src = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(TraceFile::from_json(&src)?)
}

fn construct(kind: &Construct) -> Result<TraceFile, Failure> {
    Ok(match kind {
        Construct::ArtinSchreier { base, q, a, b, c, id } => {
            let f = parse_base_desc(base, *q)?;
            let inst = AsInstance::new(&f, parse_base(&f, a)?, parse_base(&f, b)?, parse_base(&f, c)?)?;
            trace_from_as(id, &u4_as_build(&inst)?)
        }
        Construct::Kummer { base, q, p, a, c, alpha, gamma, search, variant, id } => {
            let f = parse_base_desc(base, *q)?;
            let inst = match (a, c, alpha, gamma, search) {
                (Some(a), Some(c), Some(alpha), Some(gamma), None) => {
                    KummerInstance::new(&f, *p, parse_base(&f, a)?, parse_base(&f, c)?, alpha, gamma)?
                }
                (None, None, None, None, Some(bound)) => instance_generate(&f, *p, *bound)?,
                _ => return Err(Failure::Input("usage".into(), "give --a --c --alpha --gamma, or --search".into())),
            };
            if !matches!(variant, 1 | 2) {
                return Err(Failure::Input("usage".into(), "--variant is 1 or 2".into()));
            }
            trace_from_kummer(id, &u4_build(&inst, &BuildOptions { variant: *variant, ..Default::default() })?)
        }
        Construct::Descent { base0, q, p, search, id } => {
            let ctx = build_descent_context(&parse_base_desc(base0, *q)?, *p)?;
            let inst = descent_instance(&ctx, *search)?;
            trace_from_descent(id, &build_twisted_tower(&ctx, &inst)?)
        }
        Construct::Record { id } => {
            let rec = catalog()
                .into_iter()
                .find(|r| r.id == *id)
                .ok_or_else(|| Failure::Input("usage".into(), format!("no catalog record `{id}`")))?;
            construct_record(&rec)?
        }
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input("usage".into(), e.to_string()))?;
    }
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Construct { kind } => {
            let tf = construct(kind)?;
            emit(out, &tf.to_json())?;
            if out.is_some() {
                let order = (tf.p as u64).pow(6);
                let summary = json!({ "id": tf.id, "kind": tf.kind, "p": tf.p, "groupOrder": order });
                if cli.json {
                    eprintln!("{summary}");
                } else {
                    eprintln!("wrote trace {} (group order {order})", tf.id);
                }
            }
        }
        Cmd::Verify { trace } => {
            let tf = read_trace(trace)?;
            let report = verify_trace(&tf);
            let text = serde_json::to_string_pretty(&report).unwrap() + "\n";
            if let Some(p) = out {
                write_atomic(p, &text)?;
            }
            if cli.json {
                if out.is_none() {
                    print!("{text}");
                }
            } else {
                for c in &report.checks {
                    let w = c.witness.as_deref().map(|w| format!(" [{w}]")).unwrap_or_default();
                    println!("{} {}{w}", if c.pass { "PASS" } else { "FAIL" }, c.name);
                }
                println!("{}: {}", report.trace_id, if report.pass { "all checks pass" } else { "verification failed" });
            }
            if !report.pass {
                return Err(Failure::Check);
            }
        }
        Cmd::Massey { trace, report, cases } => {
            let tf = read_trace(trace)?;
            let rho = rep_from_trace(&tf)?;
            let r = massey_report(&tf.id, &rho, *cases, cli.seed);
            let text = serde_json::to_string_pretty(&r).unwrap() + "\n";
            match report.as_deref().or(out) {
                Some(p) => write_atomic(p, &text)?,
                None => print!("{text}"),
            }
            if !cli.json && (report.is_some() || out.is_some()) {
                for c in &r.checks {
                    println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
                }
            }
            if !r.pass {
                return Err(Failure::Check);
            }
        }
        Cmd::Catalog { kind } => {
            let want = kind.map(|k| match k {
                KindArg::ArtinSchreier => RecordKind::ArtinSchreier,
                KindArg::Kummer => RecordKind::Kummer,
                KindArg::Descent => RecordKind::Descent,
            });
            let recs: Vec<_> = catalog().into_iter().filter(|r| want.map_or(true, |k| r.kind == k)).collect();
            let text = if cli.json {
                serde_json::to_string_pretty(&json!({ "schemaVersion": SCHEMA_VERSION, "records": recs })).unwrap() + "\n"
            } else {
                recs.iter()
                    .map(|r| {
                        let defs: Vec<String> = r.defining.iter().map(|d| format!("{}={}", d.name, d.expr)).collect();
                        format!("{:<14} {:<15} {:<6} p={} order={:<4} {}  ({})\n", r.id, serde_json::to_value(r.kind).unwrap().as_str().unwrap(), r.base, r.p, r.expected_order, defs.join(" "), r.anchor)
                    })
                    .collect()
            };
            emit(out, &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": "usage", "message": e.to_string().trim() } }));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(kind, message)) => {
            eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
            ExitCode::from(2)
        }
    }
}
