use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mfcat_cli::schema::*;
use mfcat_cli::{run, table, CliError, JobSpec, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "mfcat", version, about = "Exact computations with matrix factorizations on projective schemes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

// Where the ring and context come from when the object files do not say.
#[derive(Args, Clone, Default)]
struct Where {
    #[arg(long, value_enum)]
    space: Option<SpaceName>,
}

#[derive(Args, Clone, Default)]
struct Thr {
    /// Vanishing threshold n0, overriding the computed one.
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<i64>,
    /// Accept a threshold found by a bounded scan.
    #[arg(long)]
    acknowledge_scanned: bool,
}

impl Thr {
    fn flags(&self) -> ThresholdFlags {
        ThresholdFlags { threshold: self.threshold, acknowledge_scanned: self.acknowledge_scanned }
    }
}

#[derive(Subcommand)]
enum Sub {
    /// Run a complete JSON job spec.
    Run {
        #[arg(long)]
        job: PathBuf,
    },
    /// Check that an object is a matrix factorization.
    Verify {
        #[arg(long)]
        object: PathBuf,
        #[command(flatten)]
        at: Where,
    },
    /// Hom space between two factorizations, naive or in the homotopy category.
    Hom {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelSpec::Hyper)]
        model: ModelSpec,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        #[command(flatten)]
        thr: Thr,
        #[command(flatten)]
        at: Where,
    },
    /// Compose two classes given by basis coordinates.
    Compose {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        middle: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Coordinates of the first class, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Vec<i64>,
        #[arg(long, value_enum, default_value_t = ModelSpec::Hyper)]
        model: ModelSpec,
        #[command(flatten)]
        thr: Thr,
        #[command(flatten)]
        at: Where,
    },
    /// Truncated Čech cohomology of O(n).
    Cech {
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long, allow_hyphen_values = true)]
        twist_to: Option<i64>,
        #[arg(long)]
        p: Option<usize>,
        /// A file with a `ring` block, instead of --space.
        #[arg(long)]
        ring: Option<PathBuf>,
        #[command(flatten)]
        at: Where,
    },
    /// Čech hypercohomology of the mapping complex.
    CechHh {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        at: Where,
    },
    /// Stabilize the source against the target and print the certificate.
    Stabilize {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        level: Option<u32>,
        #[command(flatten)]
        thr: Thr,
        #[command(flatten)]
        at: Where,
    },
    /// Decide local contractibility through Fitting ideals.
    Contractible {
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        at: Where,
    },
    /// Contractible, locally acyclic and locally free, side by side.
    Prop28 {
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        at: Where,
    },
    /// Cokernel module of e1 over the hypersurface.
    Coker {
        #[arg(long)]
        object: PathBuf,
        #[command(flatten)]
        at: Where,
    },
    /// Lift a presentation to a factorization.
    FromModule {
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        at: Where,
    },
    /// Ext groups of an object against a module.
    ExtTable {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 0)]
        q_from: i64,
        #[arg(long)]
        q_to: i64,
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        at: Where,
    },
    /// Stable Hom from an object to a module over the hypersurface.
    StableHom {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        at: Where,
    },
    /// Search for a finite resolution over the hypersurface.
    RelPerfect {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[command(flatten)]
        at: Where,
    },
    /// Print a seeded regression suite.
    Suite {
        #[arg(long, value_enum)]
        profile: Profile,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    // serde reports line and column
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() })
}

/// Collects object files into one job, checking that they agree on the space.
struct Builder {
    space: Option<SpaceName>,
    ring: Option<(RingSpec, String)>,
    context: Option<(ContextSpec, String)>,
    objects: BTreeMap<String, ObjectSpec>,
}

impl Builder {
    fn new(at: &Where) -> Self {
        Builder { space: at.space, ring: None, context: None, objects: BTreeMap::new() }
    }

    fn agree<T: PartialEq + Clone>(slot: &mut Option<(T, String)>, v: Option<T>, file: &str, what: &str) -> Result<(), CliError> {
        let Some(v) = v else { return Ok(()) };
        match slot {
            Some((old, from)) if *old != v => Err(CliError::Input {
                path: format!("{file}: {what}"),
                message: format!("disagrees with the {what} in {from}"),
            }),
            Some(_) => Ok(()),
            None => {
                *slot = Some((v, file.to_string()));
                Ok(())
            }
        }
    }

    fn file(&mut self, name: &str, path: &Path) -> Result<String, CliError> {
        let f: ObjectFile = parse(path)?;
        let shown = path.display().to_string();
        let space_ring = f.space.map(SpaceName::ring);
        let space_ctx = f.space.map(SpaceName::context);
        Self::agree(&mut self.ring, f.ring.or(space_ring), &shown, "ring")?;
        Self::agree(&mut self.context, f.context.or(space_ctx), &shown, "context")?;
        let obj = match (f.mf, f.module, f.map) {
            (Some(m), None, None) => Some(ObjectSpec::Mf(m)),
            (None, Some(m), None) => Some(ObjectSpec::Module(m)),
            (None, None, Some(m)) => Some(ObjectSpec::Map(m)),
            (None, None, None) => None,
            _ => {
                return Err(CliError::Input { path: shown, message: "more than one of mf, module, map".into() });
            }
        };
        if let Some(obj) = obj {
            self.objects.insert(name.to_string(), obj);
        }
        Ok(name.to_string())
    }

    fn job(self, command: Command) -> Result<JobSpec, CliError> {
        let from_space = |s: Option<SpaceName>| s.map(|s| (s.ring(), s.context()));
        let (ring, context) = match (self.ring, self.context, from_space(self.space)) {
            (Some((r, rf)), c, Some((sr, sc))) => {
                if r != sr || c.as_ref().is_some_and(|(c, _)| *c != sc) {
                    return Err(CliError::Input { path: rf, message: "disagrees with --space".into() });
                }
                (Some(r), c.map(|c| c.0))
            }
            (r, c, _) => (r.map(|r| r.0), c.map(|c| c.0)),
        };
        let space = if ring.is_none() { self.space } else { None };
        Ok(JobSpec { space, ring, context, objects: self.objects, command })
    }
}

fn build(sub: Sub) -> Result<JobSpec, CliError> {
    macro_rules! files {
        ($at:expr, $($name:literal => $path:expr),*) => {{
            let mut b = Builder::new($at);
            $( b.file($name, &$path)?; )*
            b
        }};
    }
    let (b, command) = match sub {
        Sub::Run { job } => return parse(&job),
        Sub::Verify { object, at } => (files!(&at, "object" => object), Command::Verify { object: "object".into() }),
        Sub::Hom { source, target, model, shift, twist, thr, at } => (
            files!(&at, "source" => source, "target" => target),
            Command::Hom(HomFlags {
                source: "source".into(),
                target: "target".into(),
                model,
                shift,
                twist,
                threshold: thr.flags(),
            }),
        ),
        Sub::Compose { source, middle, target, alpha, beta, model, thr, at } => (
            files!(&at, "source" => source, "middle" => middle, "target" => target),
            Command::Compose(ComposeFlags {
                source: "source".into(),
                middle: "middle".into(),
                target: "target".into(),
                alpha,
                beta,
                model,
                threshold: thr.flags(),
            }),
        ),
        Sub::Cech { twist, twist_to, p, ring, at } => {
            let mut b = Builder::new(&at);
            if let Some(r) = ring {
                b.file("ring", &r)?;
            }
            (b, Command::Cech(CechFlags { twist, twist_to, p }))
        }
        Sub::CechHh { source, target, q, at } => (
            files!(&at, "source" => source, "target" => target),
            Command::CechHh(CechHhFlags { source: "source".into(), target: "target".into(), q }),
        ),
        Sub::Stabilize { source, target, level, thr, at } => (
            files!(&at, "source" => source, "target" => target),
            Command::Stabilize(StabilizeFlags {
                source: "source".into(),
                target: "target".into(),
                level,
                threshold: thr.flags(),
            }),
        ),
        Sub::Contractible { object, bound, at } => (
            files!(&at, "object" => object),
            Command::Contractible(PredicateFlags { object: "object".into(), bound }),
        ),
        Sub::Prop28 { object, bound, at } => (
            files!(&at, "object" => object),
            Command::Prop28(PredicateFlags { object: "object".into(), bound }),
        ),
        Sub::Coker { object, at } => (files!(&at, "object" => object), Command::Coker { object: "object".into() }),
        Sub::FromModule { map, at } => (files!(&at, "map" => map), Command::FromModule { map: "map".into() }),
        Sub::ExtTable { source, module, q_from, q_to, normalized, at } => (
            files!(&at, "source" => source, "module" => module),
            Command::ExtTable(ExtTableFlags {
                source: "source".into(),
                module: "module".into(),
                q_from,
                q_to,
                normalized,
            }),
        ),
        Sub::StableHom { source, module, at } => (
            files!(&at, "source" => source, "module" => module),
            Command::StableHom(StableHomFlags { source: "source".into(), module: "module".into() }),
        ),
        Sub::RelPerfect { module, bound, at } => (
            files!(&at, "module" => module),
            Command::RelPerfect(RelPerfectFlags { module: "module".into(), bound }),
        ),
        Sub::Suite { profile, seed } => (Builder::new(&Where::default()), Command::Suite(SuiteFlags { profile, seed })),
    };
    b.job(command)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        mfcat_linalg::par::set_parallel(false);
    }
    let outcome = build(cli.command).and_then(|spec| run(&spec));
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("plain data")),
                Format::Table => println!("{}", table::render(&report)),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
