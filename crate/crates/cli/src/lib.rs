//! Command-line front end: build codes, verify code files, print bounds and
//! drive the cluster simulator.
//!
//! Exit codes: 0 success, 1 semantic failure (irregular code, failed
//! retrieval or repair), 2 usage or parameter error.

pub mod codefile;
pub mod script;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dress_core::{
    assemble_dress, cut_set_bound, mbr_capacity, mbr_file_size, modular_code,
    projective_plane_code, regular_graph_code, ring_code, store_file, supported_file_size,
    verify_code, wfr_from_prg, Classification, DssParams, Error, FrCode, RepairMode,
    VerificationReport,
};

use crate::codefile::CodeFile;
use crate::script::Command;

#[derive(Debug, Parser)]
#[command(
    name = "dress",
    version,
    about = "Fractional repetition and DRESS code toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Build an inner code and write it as a JSON code file.
    Construct(ConstructArgs),
    /// Verify a code file and print supported file sizes for every k.
    Verify { codefile: PathBuf },
    /// Print parameter validity, cut-set bound and MBR capacity.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
    },
    /// Store a file on a simulated cluster and run a failure/repair script.
    Simulate {
        codefile: PathBuf,
        #[arg(long)]
        k: usize,
        /// Raw input file; must be exactly B bytes.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
        /// Let one helper forward several symbols.
        #[arg(long)]
        relaxed: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    RegularGraph,
    Modular,
    Prg,
    Ring,
    ProjectivePlane,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::RegularGraph => "regular-graph",
            Method::Modular => "modular",
            Method::Prg => "prg",
            Method::Ring => "ring",
            Method::ProjectivePlane => "projective-plane",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub rho: Option<usize>,
    #[arg(long)]
    pub theta: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Output path for the code file.
    #[arg(long, short)]
    pub out: PathBuf,
}

/// Outcome of a command that did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Exit code 1.
    Semantic(String),
    /// Exit code 2.
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Semantic(m) | Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParamViolation(_)
            | Error::InvalidCode(_)
            | Error::EmptyGraph
            | Error::LengthMismatch { .. }
            | Error::UnknownNode(_) => Failure::Usage(e.to_string()),
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{what}: {e}"))
}

type Outcome = Result<(), Failure>;

/// Runs a parsed command line, writing normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Cmd::Construct(args) => construct(&args, out),
        Cmd::Verify { codefile } => verify(&codefile, out),
        Cmd::Bounds {
            n,
            k,
            d,
            alpha,
            beta,
        } => bounds(n, k, d, alpha, beta, out),
        Cmd::Simulate {
            codefile,
            k,
            file,
            script,
            relaxed,
        } => {
            let mode = if relaxed {
                RepairMode::Relaxed
            } else {
                RepairMode::Strict
            };
            simulate(&codefile, k, &file, &script, mode, out)
        }
    }
}

macro_rules! say {
    ($out:expr, $($fmt:tt)*) => {
        writeln!($out, $($fmt)*).map_err(|e| io_failure("write", e))?
    };
}

fn need(value: Option<usize>, flag: &str, method: Method) -> Result<usize, Failure> {
    value
        .ok_or_else(|| Failure::Usage(format!("--{flag} is required for method {}", method.name())))
}

pub fn build_code(args: &ConstructArgs) -> Result<(FrCode, BTreeMap<String, u64>), Failure> {
    let m = args.method;
    let mut params = BTreeMap::new();
    let mut take = |flag: &str, value: Option<usize>| -> Result<usize, Failure> {
        let v = need(value, flag, m)?;
        params.insert(flag.to_owned(), v as u64);
        Ok(v)
    };
    let code = match m {
        Method::RegularGraph => {
            let (n, d) = (take("n", args.n)?, take("d", args.d)?);
            regular_graph_code(n, d)?
        }
        Method::Modular => {
            let (n, t, rho) = (
                take("n", args.n)?,
                take("t", args.t)?,
                take("rho", args.rho)?,
            );
            modular_code(n, t, rho)?
        }
        Method::Prg => {
            let (n, d) = (take("n", args.n)?, take("d", args.d)?);
            wfr_from_prg(n, d)?
        }
        Method::Ring => {
            let (n, theta) = (take("n", args.n)?, take("theta", args.theta)?);
            ring_code(n, theta)?
        }
        Method::ProjectivePlane => projective_plane_code(take("m", args.m)?)?,
    };
    Ok((code, params))
}

fn join<T: fmt::Display>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn summary(code: &FrCode, r: &VerificationReport) -> String {
    format!(
        "{}, rho={}, theta={}, n={}, d={}, delta={}",
        r.classification,
        code.nominal_rho(),
        code.theta(),
        code.n(),
        r.d_max,
        r.delta_total
    )
}

fn construct(args: &ConstructArgs, out: &mut dyn Write) -> Outcome {
    let (code, params) = build_code(args)?;
    let file = CodeFile::from_code(&code, args.method.name(), params);
    std::fs::write(&args.out, file.to_json()).map_err(|e| io_failure("writing code file", e))?;
    let report = verify_code(&code);
    say!(out, "wrote {}", args.out.display());
    say!(out, "{}", summary(&code, &report));
    Ok(())
}

fn read_code(path: &PathBuf) -> Result<(CodeFile, FrCode), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure("reading code file", e))?;
    let file = CodeFile::parse(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let code = file.to_code().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((file, code))
}

fn verify(path: &PathBuf, out: &mut dyn Write) -> Outcome {
    let (file, code) = read_code(path)?;
    let r = verify_code(&code);
    say!(out, "construction: {}", file.meta.construction);
    say!(out, "{}", summary(&code, &r));
    say!(out, "node sizes: {}", join(&r.node_sizes, " "));
    say!(out, "delta per node: {}", join(&r.delta_per_node, " "));
    say!(out, "replication profile:");
    for (count, symbols) in r.replication_profile() {
        say!(
            out,
            "  x{count}: {} symbols [{}]",
            symbols.len(),
            join(&symbols, " ")
        );
    }
    say!(out, "supported file size:");
    for k in 1..=code.n() {
        say!(out, "  k={k} B={}", supported_file_size(&code, k)?);
    }
    if r.classification == Classification::Irregular {
        return Err(Failure::Semantic(format!(
            "irregular: replication is not uniformly {}",
            code.nominal_rho()
        )));
    }
    Ok(())
}

fn bounds(
    n: usize,
    k: usize,
    d: usize,
    alpha: Option<usize>,
    beta: Option<usize>,
    out: &mut dyn Write,
) -> Outcome {
    let p = DssParams::with_storage(n, k, d, alpha.unwrap_or(d), beta.unwrap_or(1))?;
    say!(
        out,
        "params: n={} k={} d={} alpha={} beta={} valid",
        p.n,
        p.k,
        p.d,
        p.alpha,
        p.beta
    );
    say!(
        out,
        "cut-set bound: {}",
        cut_set_bound(p.k, p.d, p.alpha, p.beta)?
    );
    say!(out, "MBR file size: {}", mbr_file_size(p.k, p.d, p.beta)?);
    let capacity = mbr_capacity(p.n, p.k, p.d)?;
    say!(out, "C_MBR={capacity}");

    // What the matching ρ=2 construction actually supports at this k.
    if n <= 16 {
        let inner = if (n * d).is_multiple_of(2) {
            regular_graph_code(n, d)
                .ok()
                .map(|c| ("regular-graph FR", c))
        } else {
            wfr_from_prg(n, d).ok().map(|c| ("PRG weak FR", c))
        };
        if let Some((label, code)) = inner {
            let supported = supported_file_size(&code, k)?;
            say!(
                out,
                "note: ({n},{k},{d}) {label} code supports B={supported} (C_MBR={capacity})"
            );
        }
    }
    Ok(())
}

fn simulate(
    code_path: &PathBuf,
    k: usize,
    file_path: &PathBuf,
    script_path: &PathBuf,
    mode: RepairMode,
    out: &mut dyn Write,
) -> Outcome {
    let (_, inner) = read_code(code_path)?;
    let code = assemble_dress(&inner, k)?;
    let data = std::fs::read(file_path).map_err(|e| io_failure("reading input file", e))?;
    if data.len() != code.b() {
        return Err(Failure::Usage(format!(
            "input file has {} bytes, code stores exactly B={}",
            data.len(),
            code.b()
        )));
    }
    let text = std::fs::read_to_string(script_path).map_err(|e| io_failure("reading script", e))?;
    let commands = script::parse(&text, code.n()).map_err(|e| Failure::Usage(e.to_string()))?;

    say!(
        out,
        "CODE n={} theta={} B={} k={} mode={mode}",
        code.n(),
        code.theta(),
        code.b(),
        k
    );
    let mut cluster = store_file(&code, &data)?;
    for event in cluster.events() {
        say!(out, "{event}");
    }
    let mut logged = cluster.events().len();
    let mut failures = 0;
    for cmd in commands {
        let result: Result<Option<String>, Error> = match &cmd {
            Command::Fail(node) => cluster.fail_node(*node).map(|_| None),
            Command::Repair(node) => cluster.repair(*node, mode).map(|r| {
                let transfers = r
                    .transfers
                    .iter()
                    .map(|t| format!("{}:{}", t.helper + 1, t.symbol));
                Some(format!(
                    "PLAN node={} helpers={} transfers={}",
                    node + 1,
                    join(r.helpers().iter().map(|h| h + 1), ","),
                    join(transfers, ",")
                ))
            }),
            Command::Retrieve(nodes) => {
                let ids = join(nodes.iter().map(|n| n + 1), ",");
                cluster.retrieve_file(nodes).and_then(|got| {
                    if got == data {
                        Ok(Some(format!("RETRIEVE nodes={ids} ok")))
                    } else {
                        Err(Error::InconsistentSymbols)
                    }
                })
            }
        };
        match result {
            Ok(line) => {
                if let Some(line) = line {
                    say!(out, "{line}");
                }
            }
            Err(e) => {
                failures += 1;
                say!(out, "ERROR {cmd}: {e}");
            }
        }
        for event in &cluster.events()[logged..] {
            say!(out, "{event}");
        }
        logged = cluster.events().len();
    }
    say!(out, "TOTAL bw={}", cluster.bandwidth());
    if failures > 0 {
        return Err(Failure::Semantic(format!("{failures} command(s) failed")));
    }
    Ok(())
}
