use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cyclomul::algo::{Domain, MultiplierId};
use cyclomul::complexity::{self, render_table, Table};
use cyclomul::gauss::{GaussParams, NormalBasisElement};
use cyclomul::oracle::verify_normal_basis;
use cyclomul::text::{format_coords, parse_coords};
use cyclomul::verify::{run_all, VerifyConfig};
use cyclomul::{CycloElement, Error, GroundField, OpCount};

#[derive(Parser)]
#[command(
    name = "cyclomul",
    version,
    about = "Cyclotomic ring, field and optimal normal basis multipliers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Table1,
    Table6,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two vectors with a named multiplier.
    Mul {
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Cyclotomic dimension (vector multipliers).
        #[arg(long)]
        n: Option<usize>,
        /// Extension degree (normal-basis multipliers).
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        algo: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Also print the lanes before the final permutation (alg1, alg2).
        #[arg(long)]
        show_sqrt: bool,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Run the self-check suites; exits 1 on the first failing suite.
    Verify {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Measure the operation count of one multiplier.
    Count {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        algo: String,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Compare closed-form counts with measurements.
    Table {
        #[arg(value_enum)]
        which: Which,
        /// Comma-separated sizes (n or m, depending on the row).
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// List the Gauss period normal bases of type 1 and 2 up to a degree.
    OnbScan {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 12)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

/// Largest degree `onb-scan` accepts.
const SCAN_CAP: u32 = 64;

enum Failure {
    Usage(String),
    Verify,
}

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mul {
            p,
            n,
            m,
            algo,
            a,
            b,
            show_sqrt,
            output,
        } => cmd_mul(p, n, m, &algo, &a, &b, show_sqrt, output),
        Command::Verify {
            p,
            max_n,
            max_m,
            exhaustive,
            samples,
            seed,
        } => cmd_verify(VerifyConfig {
            p,
            max_n,
            max_m,
            exhaustive,
            samples,
            seed,
        }),
        Command::Count {
            p,
            n,
            m,
            algo,
            output,
        } => cmd_count(p, n, m, &algo, output),
        Command::Table {
            which,
            sizes,
            output,
            out,
        } => cmd_table(which, sizes.as_deref(), output, out.as_deref()),
        Command::OnbScan { p, max_m, output } => cmd_onb_scan(p, max_m, output),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn field(p: u32) -> Result<GroundField, Failure> {
    GroundField::new(p).map_err(|e| usage("--p", e))
}

fn algo(s: &str) -> Result<MultiplierId, Failure> {
    s.parse().map_err(|e| usage("--algo", e))
}

/// The size flag a multiplier needs: `--n` for vectors, `--m` for bases.
fn params_for(id: MultiplierId, p: u32, n: Option<usize>, m: Option<u32>) -> Result<Sized, Failure> {
    match id.domain() {
        Domain::Cyclotomic { .. } => {
            let n = n.ok_or_else(|| usage("--n", format!("required by --algo {id}")))?;
            Ok(Sized::Cyclo(field(p)?, n))
        }
        Domain::NormalBasis { k } => {
            let m = m.ok_or_else(|| usage("--m", format!("required by --algo {id}")))?;
            field(p)?;
            let params = GaussParams::new(m, k, p).map_err(|e| usage("--m", e))?;
            Ok(Sized::Onb(params))
        }
    }
}

enum Sized {
    Cyclo(GroundField, usize),
    Onb(GaussParams),
}

#[allow(clippy::too_many_arguments)]
fn cmd_mul(
    p: u32,
    n: Option<usize>,
    m: Option<u32>,
    algo_id: &str,
    a: &str,
    b: &str,
    show_sqrt: bool,
    output: Output,
) -> Result<(), Failure> {
    let id = algo(algo_id)?;
    let mut ctx = OpCount::new();
    let (product, sqrt) = match params_for(id, p, n, m)? {
        Sized::Cyclo(f, n) => {
            let parse = |flag: &str, s: &str| {
                parse_coords(f, s, Some(n))
                    .and_then(|c| CycloElement::new(f, c))
                    .map_err(|e| usage(flag, e))
            };
            let (a, b) = (parse("--a", a)?, parse("--b", b)?);
            let out = id
                .mul_cyclo(&a, &b, &mut ctx)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            (out.product.to_string(), out.sqrt.map(|d| d.to_string()))
        }
        Sized::Onb(params) => {
            let parse = |flag: &str, s: &str| {
                parse_coords(params.field(), s, Some(params.m() as usize))
                    .and_then(|c| NormalBasisElement::new(params, c))
                    .map_err(|e| usage(flag, e))
            };
            let (a, b) = (parse("--a", a)?, parse("--b", b)?);
            let c = id
                .mul_onb(&a, &b, &mut ctx)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            (format_coords(c.coords()), None)
        }
    };
    if show_sqrt && sqrt.is_none() {
        return Err(usage("--show-sqrt", format!("{id} has no permutation step")));
    }
    let sqrt = sqrt.filter(|_| show_sqrt);
    match output {
        Output::Text => {
            println!("{product}");
            if let Some(d) = sqrt {
                println!("sqrt: {d}");
            }
        }
        Output::Structured => {
            let mut line = format!("algo={id} p={p} product={product}");
            if let Some(d) = sqrt {
                line.push_str(&format!(" sqrt={d}"));
            }
            line.push_str(&format!(" mult={} doub={} add={}", ctx.mult, ctx.doub, ctx.add));
            println!("{line}");
        }
    }
    Ok(())
}

fn cmd_verify(cfg: VerifyConfig) -> Result<(), Failure> {
    let report = run_all(&cfg).map_err(|e| match e {
        Error::NotPrime(_) | Error::CharacteristicTooLarge(_) => usage("--p", e),
        other => usage("--max-n", other),
    })?;
    print!("{report}");
    if report.passed() {
        println!("all suites passed");
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_count(p: u32, n: Option<usize>, m: Option<u32>, algo_id: &str, output: Output) -> Result<(), Failure> {
    let id = algo(algo_id)?;
    let size = match params_for(id, p, n, m)? {
        Sized::Cyclo(_, n) => n,
        Sized::Onb(params) => params.m() as usize,
    };
    let counts = complexity::measure(id, p, size).map_err(|e| Failure::Usage(e.to_string()))?;
    match output {
        Output::Text => println!(
            "{id}: mult={} doub={} add={} total={}",
            counts.mult,
            counts.doub,
            counts.add,
            counts.total()
        ),
        Output::Structured => println!(
            "algo={id} p={p} size={size} mult={} doub={} add={} total={}",
            counts.mult,
            counts.doub,
            counts.add,
            counts.total()
        ),
    }
    Ok(())
}

fn cmd_table(
    which: Which,
    sizes: Option<&str>,
    output: Output,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let table = match which {
        Which::Table1 => Table::Rings,
        Which::Table6 => Table::Binary,
    };
    let sizes: Vec<u64> = match sizes {
        Some(s) => s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|e| usage("--sizes", e))?,
        None => match table {
            Table::Rings => (3..=13).step_by(2).collect(),
            Table::Binary => (2..=12).collect(),
        },
    };
    if let Some(&bad) = sizes.iter().find(|&&s| s < 2) {
        return Err(usage("--sizes", format!("sizes must be at least 2 (got {bad})")));
    }
    let report = render_table(table, &sizes);
    let text = match output {
        Output::Text => report.to_human(),
        Output::Structured => report.to_structured(),
    };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage("--out", e))?,
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn cmd_onb_scan(p: u32, max_m: u32, output: Output) -> Result<(), Failure> {
    field(p)?;
    if max_m > SCAN_CAP {
        return Err(usage("--max-m", format!("at most {SCAN_CAP} is supported")));
    }
    for m in 2..=max_m {
        for k in [1u32, 2] {
            let n = m * k + 1;
            let prime = cyclomul::groundfield::is_prime(n as u64);
            let status = if !prime {
                "no"
            } else {
                match verify_normal_basis(m, k, p) {
                    Ok(true) => "yes",
                    Ok(false) => "no",
                    Err(_) => "unknown",
                }
            };
            match output {
                Output::Text => {
                    let note = if !prime {
                        format!("n={n} not prime")
                    } else if status == "yes" {
                        format!("ONB-{} exists (n={n})", if k == 1 { "I" } else { "II" })
                    } else if status == "no" {
                        format!("n={n} prime, no normal basis")
                    } else {
                        format!("n={n} prime, oracle unavailable")
                    };
                    println!("m={m} k={k}: {note}");
                }
                Output::Structured => println!("q={p} m={m} k={k} n={n} prime={prime} onb={status}"),
            }
        }
    }
    Ok(())
}
