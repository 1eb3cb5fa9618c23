use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use augjoin::acceptance;
use augjoin::geom::verify_affine_simplex;
use augjoin::homology::{euler_characteristic, homology};
use augjoin::join::{join, sphere, unit};
use augjoin::sset::ssf::{from_document, parse_ssf, to_document, to_ssf, SsfDocument};
use augjoin::sset::{
    are_isomorphic, boundary, enumerate_maps, internal_hom_level, s0, sigma, standard_simplex,
    AugSimplicialSet,
};
use clap::{Parser, Subcommand};

/// Augmented simplicial sets and their joins, over SSF files.
///
/// `-` stands for standard input wherever a file is expected.
#[derive(Debug, Parser)]
#[command(name = "augjoin", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Run the acceptance suite and print a pass/fail table.
    #[arg(long)]
    pool: bool,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    verb: Option<Verb>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Build a standard object and print it as SSF.
    Make {
        #[command(subcommand)]
        object: Object,
    },
    /// Join two sets.
    Join { left: String, right: String },
    /// Census by dimension, connected components, augmentation kind.
    Info {
        input: String,
        /// Count all simplices up to this dimension (default: top dimension).
        #[arg(long)]
        dim: Option<i32>,
    },
    /// Integral homology groups.
    Homology {
        input: String,
        #[arg(long)]
        reduced: bool,
    },
    /// Euler characteristic from the non-degenerate census.
    Euler {
        input: String,
        #[arg(long)]
        reduced: bool,
    },
    /// Check the simplicial identities and augmentation coherence.
    Check { input: String },
    /// Search for an isomorphism and print it, or NONE.
    Iso { left: String, right: String },
    /// Count and list all maps of augmented simplicial sets.
    Maps { source: String, target: String },
    /// Size of level `n` of the internal hom.
    Homlevel {
        source: String,
        target: String,
        n: usize,
    },
    /// Sample the join of two simplices and check its affine coordinates.
    Geomcheck {
        p: usize,
        q: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convert SSF to JSON.
    Export { input: String },
    /// Convert JSON back to SSF.
    Import { input: String },
    /// Run the acceptance suite.
    Pool,
}

#[derive(Debug, Subcommand)]
enum Object {
    /// The standard simplex `Δ[n]`, `n >= -1`.
    Simplex {
        #[arg(allow_negative_numbers = true)]
        n: i32,
    },
    /// The boundary `∂Δ[n]`, `n >= 1`.
    Boundary {
        #[arg(allow_negative_numbers = true)]
        n: i32,
    },
    /// `Δ[n]` with its boundary collapsed, `n >= 1`.
    Sigma {
        #[arg(allow_negative_numbers = true)]
        n: i32,
    },
    /// Two points over one augmentation element.
    S0,
    /// The join of `n + 1` copies of `S0`.
    Sphere { n: u32 },
    /// The join unit `Δ[-1]`.
    Minus1,
}

enum Failure {
    /// Bad arguments or unreadable input: status 2.
    Usage(String),
    /// The command ran but the property does not hold: status 1.
    Verification(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    text: String,
    verified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            verified: true,
        }
    }
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn read_set(path: &str) -> Result<AugSimplicialSet, Failure> {
    parse_ssf(&read_text(path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn require_valid(x: &AugSimplicialSet) -> Result<(), Failure> {
    x.validate()
        .into_result()
        .map_err(|e| Failure::Verification(e.to_string()))
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn make(object: &Object) -> Result<AugSimplicialSet, Failure> {
    let usage = |e: augjoin::sset::SsetError| Failure::Usage(e.to_string());
    Ok(match *object {
        Object::Simplex { n } if n < -1 => {
            return Err(Failure::Usage(format!("simplex needs n >= -1, got {n}")))
        }
        Object::Simplex { n } => standard_simplex(n),
        Object::Boundary { n } => boundary(n).map_err(usage)?,
        Object::Sigma { n } => sigma(n).map_err(usage)?,
        Object::S0 => s0(),
        Object::Sphere { n } => sphere(n),
        Object::Minus1 => unit(),
    })
}

fn info(x: &AugSimplicialSet, dim: Option<i32>) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "set {}", x.name());
    let _ = writeln!(text, "top dimension {}", x.topdim());
    let _ = writeln!(text, "nondegenerate {}", tuple(&x.f_vector(true, None)));
    let _ = writeln!(text, "all simplices {}", tuple(&x.f_vector(false, dim)));
    let _ = writeln!(text, "components {}", x.pi0());
    let _ = writeln!(text, "augmentation {}", x.aug_kind());
    text
}

fn run(verb: &Verb) -> Result<Output, Failure> {
    match verb {
        Verb::Make { object } => Ok(Output::ok(to_ssf(&make(object)?))),
        Verb::Join { left, right } => {
            let (x, y) = (read_set(left)?, read_set(right)?);
            let j = join(&x, &y).map_err(|e| Failure::Verification(e.to_string()))?;
            Ok(Output::ok(to_ssf(&j)))
        }
        Verb::Info { input, dim } => Ok(Output::ok(info(&read_set(input)?, *dim))),
        Verb::Homology { input, reduced } => {
            let x = read_set(input)?;
            let h = homology(&x, *reduced).map_err(|e| Failure::Verification(e.to_string()))?;
            Ok(Output::ok(h.to_string()))
        }
        Verb::Euler { input, reduced } => {
            let x = read_set(input)?;
            Ok(Output::ok(format!(
                "{}\n",
                euler_characteristic(&x, *reduced)
            )))
        }
        Verb::Check { input } => {
            let report = read_set(input)?.validate();
            Ok(Output {
                verified: report.is_clean(),
                text: report.to_string(),
            })
        }
        Verb::Iso { left, right } => {
            let (x, y) = (read_set(left)?, read_set(right)?);
            require_valid(&x)?;
            require_valid(&y)?;
            Ok(match are_isomorphic(&x, &y) {
                Some(w) => Output::ok(format!("isomorphism\n{}\n", w.describe(&x, &y).join("\n"))),
                None => Output {
                    text: "NONE\n".into(),
                    verified: false,
                },
            })
        }
        Verb::Maps { source, target } => {
            let (x, y) = (read_set(source)?, read_set(target)?);
            require_valid(&x)?;
            require_valid(&y)?;
            let maps = enumerate_maps(&x, &y);
            let mut text = format!("{} map(s)\n", maps.len());
            for (i, m) in maps.iter().enumerate() {
                let _ = writeln!(text, "map {i}");
                for line in m.describe(&x, &y) {
                    let _ = writeln!(text, "  {line}");
                }
            }
            Ok(Output::ok(text))
        }
        Verb::Homlevel { source, target, n } => {
            let (x, y) = (read_set(source)?, read_set(target)?);
            require_valid(&x)?;
            require_valid(&y)?;
            let count =
                internal_hom_level(&x, &y, *n).map_err(|e| Failure::Verification(e.to_string()))?;
            Ok(Output::ok(format!("{count}\n")))
        }
        Verb::Geomcheck {
            p,
            q,
            samples,
            seed,
        } => {
            let report = verify_affine_simplex(*p, *q, *samples, *seed);
            Ok(Output {
                verified: report.is_clean(),
                text: report.to_string(),
            })
        }
        Verb::Export { input } => {
            let doc = to_document(&read_set(input)?);
            let json =
                serde_json::to_string_pretty(&doc).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Output::ok(json + "\n"))
        }
        Verb::Import { input } => {
            let doc: SsfDocument = serde_json::from_str(&read_text(input)?)
                .map_err(|e| Failure::Usage(format!("{input}: line {}: {e}", e.line())))?;
            let x = from_document(&doc).map_err(|e| Failure::Usage(format!("{input}: {e}")))?;
            Ok(Output::ok(to_ssf(&x)))
        }
        Verb::Pool => Ok(pool()),
    }
}

fn pool() -> Output {
    let results = acceptance::run_all();
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{r}");
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    let _ = writeln!(text, "{passed}/{} criteria passed", results.len());
    Output {
        text,
        verified: passed == results.len(),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) if path.as_os_str() != "-" => fs::write(path, text),
        _ => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.verb, cli.pool) {
        (Some(verb), _) => run(verb),
        (None, true) => Ok(pool()),
        (None, false) => Err(Failure::Usage("no command given; try --help".into())),
    };
    let status = match result {
        Ok(output) => match emit(&output.text, cli.out.as_ref()) {
            Ok(()) if output.verified => 0,
            Ok(()) => 1,
            Err(e) => {
                eprintln!("augjoin: {e}");
                2
            }
        },
        Err(Failure::Verification(msg)) => {
            eprintln!("augjoin: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("augjoin: {msg}");
            2
        }
    };
    ExitCode::from(status)
}
