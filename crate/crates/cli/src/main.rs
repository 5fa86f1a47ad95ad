use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gradedhom_cli::{emit_golden, render, run, CliError, Format, JobSpec};

#[derive(Parser)]
#[command(name = "gradedhom", version, about = "Exact graded homological algebra")]
struct Cli {
    /// Weight truncation.
    #[arg(long = "W", global = true, allow_hyphen_values = true)]
    w: Option<i64>,
    /// Bound overrides, e.g. `max_boxes=9,max_words=100000`.
    #[arg(long, global = true)]
    bounds: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report (or golden directory) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring summary: slices, primes, Hilbert function, connectedness.
    Ring {
        #[arg(long)]
        ring: String,
        /// Element to put in normal form.
        #[arg(long)]
        element: Option<String>,
    },
    /// Nakayama, freeness, locally-free witness and spreading out.
    Module {
        #[arg(long)]
        module: String,
        /// Monomial prime as generator names, e.g. `x,y`.
        #[arg(long)]
        prime: Option<String>,
    },
    /// (Anti)symmetrizer on a super space, or Sym^n of a free type.
    Sym {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        power: usize,
        #[arg(long)]
        alt: bool,
        /// Degrees of the lines of a free type, e.g. `0,1`.
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<String>,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Rectangular Young symmetrizer.
    Young {
        #[arg(long)]
        space: String,
        #[arg(long)]
        shape: String,
        /// Comma-separated line labels, or `staircase`.
        #[arg(long)]
        word: Option<String>,
    },
    Homology {
        #[arg(long)]
        complex: String,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Tor of two cyclic monomial modules.
    Tor {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        module2: String,
        #[arg(long)]
        n: i64,
    },
    Site {
        #[command(subcommand)]
        op: SiteOp,
    },
    /// Regenerate or check the golden reports of a corpus.
    Golden {
        #[arg(long)]
        corpus: PathBuf,
        /// Compare against the stored goldens instead of writing.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum SiteOp {
    Classify {
        #[arg(long)]
        job: String,
    },
    Compare {
        #[arg(long)]
        job: String,
    },
    Cover {
        #[arg(long)]
        job: String,
    },
}

fn parse_bounds(s: &str) -> Result<BTreeMap<String, u64>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (k, v) = t.split_once('=').ok_or_else(|| CliError::BadParam {
                name: "bounds".into(),
                message: format!("expected key=value, got `{t}`"),
            })?;
            let v = v.trim().parse().map_err(|_| CliError::BadParam {
                name: "bounds".into(),
                message: format!("`{v}` is not a number"),
            })?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn job_of(cli: &Cli) -> Result<JobSpec, CliError> {
    let mut inputs = BTreeMap::new();
    let mut params = BTreeMap::new();
    let mut param = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    };
    let command = match &cli.command {
        Command::Ring { ring, element } => {
            inputs.insert("ring".into(), ring.clone());
            param("element", element.clone());
            "ring"
        }
        Command::Module { module, prime } => {
            inputs.insert("module".into(), module.clone());
            param("prime", prime.clone());
            "module"
        }
        Command::Sym { space, power, alt, degrees, coeff } => {
            param("space", space.clone());
            param("power", Some(power.to_string()));
            param("alt", alt.then(|| "true".to_string()));
            param("degrees", degrees.clone());
            param("coeff", coeff.clone());
            "sym"
        }
        Command::Young { space, shape, word } => {
            param("space", Some(space.clone()));
            param("shape", Some(shape.clone()));
            param("word", word.clone());
            "young"
        }
        Command::Homology { complex, n } => {
            inputs.insert("complex".into(), complex.clone());
            param("n", n.map(|n| n.to_string()));
            "homology"
        }
        Command::Tor { ring, module, module2, n } => {
            inputs.insert("ring".into(), ring.clone());
            param("module", Some(module.clone()));
            param("module2", Some(module2.clone()));
            param("n", Some(n.to_string()));
            "tor"
        }
        Command::Site { op } => {
            let (name, job) = match op {
                SiteOp::Classify { job } => ("site classify", job),
                SiteOp::Compare { job } => ("site compare", job),
                SiteOp::Cover { job } => ("site cover", job),
            };
            inputs.insert("job".into(), job.clone());
            name
        }
        Command::Golden { .. } => unreachable!("handled separately"),
    };
    Ok(JobSpec {
        command: command.into(),
        inputs,
        params,
        w: cli.w,
        bounds: cli.bounds.as_deref().map(parse_bounds).transpose()?.unwrap_or_default(),
        format: cli.format,
    })
}

fn write(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn golden(corpus: &Path, out: Option<&Path>, check: bool) -> Result<i32, CliError> {
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| corpus.join("golden"));
    let reports = emit_golden(corpus)?;
    let io = |p: &Path, e: std::io::Error| CliError::Io { path: p.display().to_string(), message: e.to_string() };
    let mut mismatches = 0;
    if !check {
        fs::create_dir_all(&dir).map_err(|e| io(&dir, e))?;
    }
    for (name, text, code) in &reports {
        let path = dir.join(format!("{name}.json"));
        if check {
            let stored = fs::read_to_string(&path).map_err(|e| io(&path, e))?;
            if stored != *text {
                eprintln!("golden mismatch: {name}");
                mismatches += 1;
            }
        } else {
            fs::write(&path, text).map_err(|e| io(&path, e))?;
        }
        println!("{name}: exit {code}");
    }
    Ok(if mismatches > 0 { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Golden { corpus, check } => golden(corpus, cli.out.as_deref(), *check),
        _ => job_of(&cli).and_then(|job| {
            let report = run(&job, Path::new("."))?;
            write(cli.out.as_deref(), &render(&report, job.format))?;
            Ok(report.exit_code())
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
