use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isotope::commands::{self, AtlasArgs, Method, Outcome};
use isotope::format::{parse_encodings, PresentationJson, TensorJson};
use isotope::render::pretty;
use isotope::CliError;
use isotope_core::verify::Level;
use isotope_core::CyclicExtension;

#[derive(Parser)]
#[command(name = "isotope", version, about = "Albert isotopes of cyclic extensions of finite fields")]
struct Cli {
    /// Render a readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct ExtArgs {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// F = GF(p^m).
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// [K : F].
    #[arg(long, default_value_t = 3)]
    n: usize,
}

impl ExtArgs {
    fn build(self) -> Result<CyclicExtension, CliError> {
        Ok(CyclicExtension::build(self.p, self.m, self.n)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Critical,
    Cubic,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify all (or sampled) isotopes by type and isomorphism class.
    Atlas {
        #[command(flatten)]
        ext: ExtArgs,
        /// Sample this many presentations instead of enumerating all.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Recompute the partition with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Work budget (default 10^6 coefficient pairs).
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Decide whether K^(f,g) and K^(f2,g2) are isomorphic.
    Isotest {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        g2: Option<String>,
        #[arg(long, value_enum, default_value = "critical")]
        method: MethodArg,
        /// Also report agreement with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Kaplansky heart of a tensor (file or "-" for stdin), or of K^(f,g).
    Heart {
        #[arg(long, conflicts_with_all = ["f", "presentation"])]
        tensor: Option<String>,
        /// Presentation JSON {ext, f, g}.
        #[arg(long, conflicts_with = "f")]
        presentation: Option<String>,
        #[arg(long, requires = "f")]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, requires = "p")]
        f: Option<String>,
        #[arg(long, requires = "f")]
        g: Option<String>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value = "exhaustive")]
        level: LevelArg,
        #[command(flatten)]
        ext: Option<ExtArgs>,
        /// Field spec {p, d, modulus} for K (file or "-" for stdin).
        #[arg(long, conflicts_with = "p")]
        spec: Option<String>,
        /// With --spec: the degree of F over GF(p).
        #[arg(long = "spec-m", default_value_t = 1)]
        spec_m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// The norm-one group S(K) and the transversal M.
    MSet {
        #[command(flatten)]
        ext: ExtArgs,
    },
    /// Reduced norm against the determinant of the matrix.
    Normtest {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every operator when there are at most this many.
        #[arg(long, default_value_t = 1 << 16)]
        exhaustive_limit: u64,
    },
    /// Tensor JSON of K^(f,g).
    Tensor {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
    },
}

fn identity_encodings(n: usize) -> String {
    let mut v = vec!["0"; n];
    v[0] = "1";
    v.join(",")
}

fn run(cmd: Cmd) -> Result<Outcome, CliError> {
    match cmd {
        Cmd::Atlas { ext, samples, seed, oracle, budget } => {
            commands::atlas(&ext.build()?, &AtlasArgs { samples, seed, oracle, budget })
        }
        Cmd::Isotest { ext, f, g, f2, g2, method, oracle } => {
            let e = ext.build()?;
            let id = identity_encodings(ext.n);
            let f = parse_encodings(&f)?;
            let g = parse_encodings(g.as_deref().unwrap_or(&id))?;
            let f2 = parse_encodings(&f2)?;
            let g2 = parse_encodings(g2.as_deref().unwrap_or(&id))?;
            let method = match method {
                MethodArg::Critical => Method::Critical,
                MethodArg::Cubic => Method::Cubic,
                MethodArg::Oracle => Method::Oracle,
            };
            commands::isotest(&e, [("f", &f), ("g", &g), ("f2", &f2), ("g2", &g2)], method, oracle)
        }
        Cmd::Heart { tensor, presentation, p, m, n, f, g } => {
            let (e, a) = if let Some(path) = tensor {
                let t: TensorJson = serde_json::from_str(&commands::read_input(&path)?)?;
                t.to_algebra()?
            } else if let Some(path) = presentation {
                let pj: PresentationJson = serde_json::from_str(&commands::read_input(&path)?)?;
                let e = pj.ext.build()?;
                let pres = isotope_core::IsotopePresentation {
                    f: isotope::format::operator(&e, &pj.f)?,
                    g: isotope::format::operator(&e, &pj.g)?,
                };
                let a = isotope_core::AlgebraStructure::from_presentation(&e, &pres);
                (e, a)
            } else if let (Some(p), Some(f)) = (p, f) {
                let ext = ExtArgs { p, m, n };
                let e = ext.build()?;
                let id = identity_encodings(ext.n);
                let pres = isotope_core::IsotopePresentation {
                    f: isotope::format::operator(&e, &parse_encodings(&f)?)?,
                    g: isotope::format::operator(&e, &parse_encodings(g.as_deref().unwrap_or(&id))?)?,
                };
                let a = isotope_core::AlgebraStructure::from_presentation(&e, &pres);
                (e, a)
            } else {
                return Err(CliError::Usage("heart needs --tensor, --presentation, or --p/--f".into()));
            };
            commands::heart(&e, &a)
        }
        Cmd::Verify { level, ext, spec, spec_m, seed, samples } => {
            let e = match (spec, ext) {
                (Some(path), _) => commands::extension_from_spec(&commands::read_input(&path)?, spec_m)?,
                (None, Some(ext)) => ext.build()?,
                (None, None) => return Err(CliError::Usage("verify needs --p or --spec".into())),
            };
            let level = match level {
                LevelArg::Exhaustive => Level::Exhaustive,
                LevelArg::Random => Level::Random { samples, seed },
            };
            commands::verify(&e, level)
        }
        Cmd::MSet { ext } => Ok(commands::m_set(&ext.build()?)),
        Cmd::Normtest { ext, samples, seed, exhaustive_limit } => {
            Ok(commands::normtest(&ext.build()?, samples, seed, exhaustive_limit))
        }
        Cmd::Tensor { ext, f, g } => {
            let id = identity_encodings(ext.n);
            commands::tensor(&ext.build()?, &parse_encodings(&f)?, &parse_encodings(g.as_deref().unwrap_or(&id))?)
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ISOTOPE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("ISOTOPE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(text: &str, out: Option<&str>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    let obj = serde_json::json!({ "error": e.to_object() });
    println!("{obj}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim_end().to_owned())),
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    let pretty_output = cli.pretty;
    let out = cli.out.clone();
    let outcome = match run(cli.cmd) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let text = if pretty_output {
        pretty(&outcome.value)
    } else {
        let mut s = serde_json::to_string_pretty(&outcome.value).expect("JSON values serialize");
        s.push('\n');
        s
    };
    if let Err(e) = emit(&text, out.as_deref()) {
        return fail(&e);
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
