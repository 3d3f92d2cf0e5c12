use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polysep::{CatalogSpec, VerifyOptions, VertexPolicy};
use polysep_cli::run::sha256_hex;
use polysep_cli::{
    analyze, builtin_entries, exit_code, parse_spec, read_catalog, run_batch, verify, write_json,
    write_text, CliError, Result, VRepDocument,
};

#[derive(Parser)]
#[command(
    name = "polysep",
    version,
    about = "Exact polytope graphs and their minimum separators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the V-representation of a catalog polytope.
    Generate {
        family: Family,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base of a pyramid, bipyramid or prism: triangle, square, pentagon,
        /// or any catalog name such as cube-3 or cyclic-3-6.
        #[arg(long)]
        base: Option<String>,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print dimension, f-vector, simpliciality, degrees and connectivity.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        lenient: bool,
    },
    /// Run the separator checks on a V-representation.
    Verify {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        theorems: Vec<Check>,
        /// Check every hyperplane spanned by d vertices instead of sampling.
        #[arg(long, alias = "exhaustive-lemma1")]
        exhaustive_hyperplanes: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Drop non-vertex input points instead of rejecting the input.
        #[arg(long)]
        lenient: bool,
    },
    /// Verify every entry of a catalog file or the built-in catalog.
    Batch {
        catalog: Option<PathBuf>,
        #[arg(long, conflicts_with = "catalog")]
        builtin: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Simplex,
    Cube,
    #[value(alias = "cross")]
    CrossPolytope,
    Cyclic,
    Pyramid,
    Bipyramid,
    Prism,
    #[value(alias = "sphere", alias = "random")]
    RandomSphere,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Balinski,
    #[value(alias = "lemma1")]
    Hyperplanes,
    Links,
    EmptySimplex,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Generate {
            family,
            dim,
            n,
            seed,
            base,
            out,
        } => generate(family, dim, n, seed, base.as_deref(), out.as_deref()),
        Command::Analyze {
            input,
            report,
            lenient,
        } => {
            let (doc, _) = VRepDocument::read(&input)?;
            let (p, stripped) = doc.to_polytope(policy(lenient))?;
            if !stripped.is_empty() {
                eprintln!("dropped non-vertex points {stripped:?}");
            }
            let a = analyze(doc.name.clone(), &p)?;
            println!("{}", a.headline());
            println!("{}", a.degree_line());
            if let Some(path) = report {
                write_json(&path, &a)?;
            }
            Ok(0)
        }
        Command::Verify {
            input,
            theorems,
            exhaustive_hyperplanes,
            seed,
            report,
            lenient,
        } => {
            let (doc, bytes) = VRepDocument::read(&input)?;
            let (p, stripped) = doc.to_polytope(policy(lenient))?;
            let opts = options(&theorems, exhaustive_hyperplanes, seed);
            let name = doc
                .name
                .clone()
                .unwrap_or_else(|| input.display().to_string());
            let r = verify(
                &name,
                &p,
                sha256_hex(&bytes),
                doc.expected.as_ref(),
                stripped,
                &opts,
            )?;
            let s = &r.summary;
            println!(
                "{name}: d={} n={} κ={} d-separators={} verdict={}",
                s.dim,
                s.vertex_count,
                s.connectivity,
                s.d_separator_count,
                r.verdict.as_str()
            );
            if let Some(c) = &s.simplicial_separators {
                println!("simplicial separators: {}", c.verdict.as_str());
            }
            for m in &r.expectation_mismatches {
                println!("expectation: {m}");
            }
            for rep in s.reports.iter().filter(|rep| !rep.verdict.is_ok()) {
                println!(
                    "separator {:?}: {}",
                    rep.separator.vertices,
                    rep.witness.join("; ")
                );
            }
            if let Some(path) = report {
                write_json(&path, &r)?;
            }
            Ok(exit_code(r.verdict))
        }
        Command::Batch {
            catalog,
            builtin,
            jobs,
            seed,
            report_dir,
        } => {
            let entries = match (catalog, builtin) {
                (Some(path), false) => read_catalog(&path)?,
                (None, true) => builtin_entries(),
                _ => {
                    return Err(CliError::Format(
                        "give a catalog file or --builtin".to_string(),
                    ))
                }
            };
            let opts = VerifyOptions {
                seed,
                ..VerifyOptions::default()
            };
            let result = run_batch(&entries, &opts, jobs);
            print!("{}", result.table());
            if let Some(dir) = report_dir {
                polysep_cli::batch::write_reports(&dir, &result)?;
            }
            Ok(result.exit_code())
        }
    }
}

fn policy(lenient: bool) -> VertexPolicy {
    if lenient {
        VertexPolicy::Lenient
    } else {
        VertexPolicy::Strict
    }
}

fn options(checks: &[Check], exhaustive_hyperplanes: bool, seed: u64) -> VerifyOptions {
    let on = |c: Check| checks.contains(&Check::All) || checks.contains(&c);
    VerifyOptions {
        balinski: on(Check::Balinski),
        hyperplanes: on(Check::Hyperplanes),
        links: on(Check::Links),
        empty_simplex: on(Check::EmptySimplex),
        exhaustive_hyperplanes,
        seed,
        ..VerifyOptions::default()
    }
}

fn generate(
    family: Family,
    dim: Option<usize>,
    n: Option<usize>,
    seed: u64,
    base: Option<&str>,
    out: Option<&Path>,
) -> Result<i32> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Format(format!("this family needs --{flag}")))
    };
    let base_spec = || -> Result<Box<CatalogSpec>> {
        Ok(Box::new(parse_spec(base.ok_or_else(|| {
            CliError::Format("this family needs --base".to_string())
        })?)?))
    };
    let spec = match family {
        Family::Simplex => CatalogSpec::Simplex {
            d: need(dim, "dim")?,
        },
        Family::Cube => CatalogSpec::Cube {
            d: need(dim, "dim")?,
        },
        Family::CrossPolytope => CatalogSpec::CrossPolytope {
            d: need(dim, "dim")?,
        },
        Family::Cyclic => CatalogSpec::Cyclic {
            d: need(dim, "dim")?,
            n: need(n, "n")?,
        },
        Family::RandomSphere => CatalogSpec::RandomSphere {
            d: need(dim, "dim")?,
            n: need(n, "n")?,
            seed,
        },
        Family::Pyramid => CatalogSpec::Pyramid { base: base_spec()? },
        Family::Bipyramid => CatalogSpec::Bipyramid { base: base_spec()? },
        Family::Prism => CatalogSpec::Prism { base: base_spec()? },
    };
    let p = spec.build()?;
    let doc = VRepDocument::from_polytope(Some(spec.to_string()), &p);
    match out {
        Some(path) => {
            write_text(path, &(doc.to_json() + "\n"))?;
            println!(
                "{spec}: d={} n={} written to {}",
                p.dim(),
                p.vertex_count(),
                path.display()
            );
        }
        None => println!("{}", doc.to_json()),
    }
    Ok(0)
}
