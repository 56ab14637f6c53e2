//! Command-line surface for pedestal matrices: extension listings, matrix
//! dumps, eigenvalue forms, verification reports, and generating functions.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pedestal_spectra::filters::{all_filters, b_decomposition, filter_product};
use pedestal_spectra::genfun::{gen_monotone, macmahon, pedestal_identity_check};
use pedestal_spectra::pedestal::{form_to_string, monomial_of_mask, PedestalMatrix};
use pedestal_spectra::poset::count_posets;
use pedestal_spectra::spectra::{check_filter_preserves_flag, SpectralAnalysis};
use pedestal_spectra::{Poset, DEFAULT_EXTENSION_CAP};

#[derive(Parser)]
#[command(name = "pedestal", about = "Pedestal matrices and spectra of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the linear extensions of a poset in canonical order
    Extensions {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP)]
        cap: usize,
    },
    /// Print the pedestal matrix, symbolically or as monomials
    Matrix {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = View::Symbolic)]
        view: View,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP)]
        cap: usize,
    },
    /// Compute the eigenvalue forms with multiplicities
    Eigen {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP)]
        cap: usize,
    },
    /// Run the full verification suite against a poset
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        draws: usize,
        #[arg(long, default_value_t = 20)]
        tmax: usize,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP)]
        cap: usize,
    },
    /// Generating functions: monotone census, hook product, identity check
    Genfun {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        tmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP)]
        cap: usize,
    },
    /// Count the posets on n labeled elements by brute force
    CountPosets { n: usize },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// partition shape, e.g. 3,2,1
    #[arg(long)]
    partition: Option<String>,
    /// path to a JSON file with "names" and "covers"
    #[arg(long)]
    covers: Option<PathBuf>,
    /// box (chain product) dimensions, e.g. 2x2x2
    #[arg(long = "box")]
    box_dims: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    Symbolic,
    Monomial,
}

fn load_poset(source: &Source) -> anyhow::Result<Poset> {
    if let Some(spec) = &source.partition {
        let parts: Vec<usize> = spec
            .split(',')
            .map(|p| p.trim().parse().context("bad partition part"))
            .collect::<anyhow::Result<_>>()?;
        return Ok(Poset::from_partition(&parts)?);
    }
    if let Some(spec) = &source.box_dims {
        let dims: Vec<usize> = spec
            .split('x')
            .map(|p| p.trim().parse().context("bad box dimension"))
            .collect::<anyhow::Result<_>>()?;
        return Ok(Poset::from_chain_product(&dims)?);
    }
    let path = source.covers.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("poset file is not valid JSON")?;
    let names: Vec<String> = value
        .get("names")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("poset file needs a \"names\" array"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| anyhow!("names must be strings"))
        })
        .collect::<anyhow::Result<_>>()?;
    let covers: Vec<(String, String)> = value
        .get("covers")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("poset file needs a \"covers\" array"))?
        .iter()
        .map(|pair| {
            let arr = pair.as_array().filter(|a| a.len() == 2);
            let arr = arr.ok_or_else(|| anyhow!("covers must be [lower, upper] pairs"))?;
            match (arr[0].as_str(), arr[1].as_str()) {
                (Some(a), Some(b)) => Ok((a.to_owned(), b.to_owned())),
                _ => Err(anyhow!("cover labels must be strings")),
            }
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(Poset::from_covers(&names, &covers)?)
}

fn legend_json(pm: &PedestalMatrix) -> Value {
    let items: Vec<Value> = pm
        .variables()
        .iter()
        .map(|mask| {
            json!({
                "bits": mask.bitstring(),
                "monomial": monomial_of_mask(pm.n(), mask).to_string(),
            })
        })
        .collect();
    Value::Array(items)
}

fn print_legend(pm: &PedestalMatrix) {
    println!("legend:");
    for mask in pm.variables() {
        println!(
            "  {} = {}",
            mask.name(),
            monomial_of_mask(pm.n(), &mask)
        );
    }
}

fn cmd_extensions(source: &Source, format: Format, cap: usize) -> anyhow::Result<()> {
    let poset = load_poset(source)?;
    let exts = poset.linear_extensions(cap)?;
    match format {
        Format::Text => {
            println!("elements: {}", poset.names().join(", "));
            println!("count: {}", exts.len());
            for ext in &exts {
                let vals: Vec<String> =
                    (0..poset.n()).map(|e| (ext.rank(e) + 1).to_string()).collect();
                println!("{{{}}}", vals.join(","));
            }
        }
        Format::Json => {
            let rows: Vec<Vec<usize>> = exts
                .iter()
                .map(|ext| (0..poset.n()).map(|e| ext.rank(e) + 1).collect())
                .collect();
            let out = json!({
                "n": poset.n(),
                "names": poset.names(),
                "count": rows.len(),
                "extensions": rows,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Csv => bail!("csv output is only available for the matrix command"),
    }
    Ok(())
}

fn cmd_matrix(source: &Source, view: View, format: Format, cap: usize) -> anyhow::Result<()> {
    let poset = load_poset(source)?;
    let pm = PedestalMatrix::build(&poset, cap)?;
    let dim = pm.dim();
    let cell = |i: usize, j: usize| -> String {
        match view {
            View::Symbolic => pm.entry(i, j).name(),
            View::Monomial => pm.monomial_entry(i, j).to_string(),
        }
    };
    match format {
        Format::Text => {
            let cells: Vec<Vec<String>> =
                (0..dim).map(|i| (0..dim).map(|j| cell(i, j)).collect()).collect();
            let width = cells
                .iter()
                .flatten()
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1);
            println!("dim: {}", dim);
            for row in &cells {
                let padded: Vec<String> =
                    row.iter().map(|s| format!("{:>width$}", s)).collect();
                println!("[ {} ]", padded.join("  "));
            }
            if view == View::Symbolic {
                print_legend(&pm);
            }
        }
        Format::Json => {
            let entries: Value = match view {
                View::Symbolic => {
                    let rows: Vec<Vec<String>> = (0..dim)
                        .map(|i| (0..dim).map(|j| pm.entry(i, j).bitstring()).collect())
                        .collect();
                    json!(rows)
                }
                View::Monomial => {
                    let rows: Vec<Vec<Vec<usize>>> = (0..dim)
                        .map(|i| {
                            (0..dim)
                                .map(|j| pm.monomial_entry(i, j).exponents)
                                .collect()
                        })
                        .collect();
                    json!(rows)
                }
            };
            let mut out = json!({ "dim": dim, "entries": entries });
            if view == View::Symbolic {
                out["legend"] = legend_json(&pm);
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Csv => {
            for i in 0..dim {
                let row: Vec<String> = (0..dim).map(|j| cell(i, j)).collect();
                println!("{}", row.join(","));
            }
        }
    }
    Ok(())
}

fn cmd_eigen(source: &Source, format: Format, cap: usize) -> anyhow::Result<()> {
    let poset = load_poset(source)?;
    let analysis = SpectralAnalysis::new(&poset, cap)?;
    let pm = analysis.pedestal_matrix();
    match format {
        Format::Text => {
            println!("dim: {}", pm.dim());
            for form in analysis.eigenvalues() {
                println!(
                    "({})  multiplicity {}",
                    form_to_string(&form.coeffs),
                    form.multiplicity
                );
            }
            print_legend(pm);
        }
        Format::Json => {
            let eigenvalues: Vec<Value> = analysis
                .eigenvalues()
                .iter()
                .map(|form| {
                    let coeffs: serde_json::Map<String, Value> = form
                        .coeffs
                        .iter()
                        .map(|(mask, c)| (mask.bitstring(), json!(c)))
                        .collect();
                    json!({ "coeffs": coeffs, "multiplicity": form.multiplicity })
                })
                .collect();
            let out = json!({
                "dim": pm.dim(),
                "legend": legend_json(pm),
                "eigenvalues": eigenvalues,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Csv => bail!("csv output is only available for the matrix command"),
    }
    Ok(())
}

fn cmd_genfun(source: &Source, tmax: usize, format: Format, cap: usize) -> anyhow::Result<()> {
    let poset = load_poset(source)?;
    let pm = PedestalMatrix::build(&poset, cap)?;
    let census = gen_monotone(&poset, tmax)?;
    let report = pedestal_identity_check(&poset, &pm, tmax)?;
    let hook = if poset.shape().is_some() {
        Some(macmahon(&poset, tmax)?)
    } else {
        None
    };
    let hook_matches = hook.as_ref().map(|h| h.coefficients == census.coefficients);
    match format {
        Format::Text => {
            println!("truncation: {}", tmax);
            println!("pedestal polynomial: {:?}", report.pi);
            println!("monotone census: {:?}", census.coefficients);
            if let Some(ok) = hook_matches {
                println!("hook product match: {}", if ok { "yes" } else { "no" });
            }
            println!(
                "pedestal identity holds: {}",
                if report.identity_holds { "yes" } else { "no" }
            );
        }
        Format::Json => {
            let out = json!({
                "tmax": tmax,
                "pi": report.pi,
                "monotone": census.coefficients,
                "identity_holds": report.identity_holds,
                "hook_product": hook.as_ref().map(|h| h.coefficients.clone()),
                "hook_product_matches": hook_matches,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Csv => bail!("csv output is only available for the matrix command"),
    }
    if !report.identity_holds {
        bail!("pedestal identity failed");
    }
    if hook_matches == Some(false) {
        bail!("hook product disagrees with the census");
    }
    Ok(())
}

fn cmd_verify(
    source: &Source,
    seed: u64,
    draws: usize,
    tmax: usize,
    cap: usize,
) -> anyhow::Result<()> {
    let poset = load_poset(source)?;
    let mut failures = 0usize;
    let mut check = |name: &str, result: anyhow::Result<String>| match result {
        Ok(note) => {
            if note.is_empty() {
                println!("ok   {}", name);
            } else {
                println!("ok   {} ({})", name, note);
            }
        }
        Err(e) => {
            failures += 1;
            println!("FAIL {}: {}", name, e);
        }
    };

    let analysis = SpectralAnalysis::new(&poset, cap)?;
    let pm = analysis.pedestal_matrix();
    let exts = pm.extensions();
    let dim = pm.dim();
    check(
        "extensions",
        Ok(format!("{} linear extensions", dim)),
    );

    check(
        "row sums",
        pm.row_sum_form()
            .map(|form| form_to_string(&form))
            .map_err(Into::into),
    );

    check(
        "filter decomposition",
        (|| {
            for mask in pm.variables() {
                let dec = b_decomposition(&poset, pm, &mask)?;
                if !dec.realized {
                    bail!("mask {} reported unrealized", mask.name());
                }
            }
            Ok(format!("{} realized masks", pm.variables().len()))
        })(),
    );

    let filters = all_filters(&poset);
    check(
        "band identities",
        (|| {
            for f in &filters {
                if filter_product(f, f)? != *f {
                    bail!("ff != f for {}", f.display_with(&poset));
                }
            }
            let m = filters.len();
            let exhaustive = m * m <= 100_000;
            let pairs: Vec<(usize, usize)> = if exhaustive {
                (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..100_000)
                    .map(|_| (rng.gen_range(0..m), rng.gen_range(0..m)))
                    .collect()
            };
            for (i, j) in &pairs {
                let fg = filter_product(&filters[*i], &filters[*j])?;
                if filter_product(&fg, &filters[*i])? != fg {
                    bail!("fgf != fg");
                }
            }
            Ok(format!(
                "{} filters, {} pairs{}",
                m,
                pairs.len(),
                if exhaustive { "" } else { " sampled" }
            ))
        })(),
    );

    check(
        "filter triangularity",
        (|| {
            if dim <= 24 {
                analysis.check_filter_triangularity()?;
                Ok(format!("{} filters, exact conjugation", filters.len()))
            } else {
                for f in &filters {
                    if !check_filter_preserves_flag(f, analysis.basis(), exts) {
                        bail!("filter {} breaks the flag", f.display_with(&poset));
                    }
                }
                Ok(format!("{} filters, flag certificate", filters.len()))
            }
        })(),
    );

    check(
        "commutator solvability",
        (|| {
            let masks = pm.variables();
            let m = masks.len();
            let all_pairs: Vec<(usize, usize)> =
                (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
            let pairs = if all_pairs.len() <= 2000 {
                all_pairs
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut seen = BTreeSet::new();
                while seen.len() < 2000 {
                    let i = rng.gen_range(0..m);
                    let j = rng.gen_range(0..m);
                    if i < j {
                        seen.insert((i, j));
                    }
                }
                seen.into_iter().collect()
            };
            let sampled = pairs.len() < m * (m - 1) / 2;
            analysis.check_commutator_pairs(&pairs)?;
            Ok(format!(
                "{} pairs{}",
                pairs.len(),
                if sampled { " sampled" } else { "" }
            ))
        })(),
    );

    check(
        "spectrum oracle",
        analysis
            .verify_spectrum(seed, draws)
            .map(|r| format!("{} draws, seed {}", r.draws, r.seed))
            .map_err(Into::into),
    );

    check(
        "pedestal identity",
        pedestal_identity_check(&poset, pm, tmax)
            .map_err(Into::into)
            .and_then(|r| {
                if r.identity_holds {
                    Ok(format!("truncation {}", r.truncation))
                } else {
                    Err(anyhow!("coefficients disagree"))
                }
            }),
    );

    if poset.shape().is_some() {
        check(
            "hook product",
            (|| {
                let census = gen_monotone(&poset, tmax)?;
                let hook = macmahon(&poset, tmax)?;
                if hook.coefficients == census.coefficients {
                    Ok(format!("truncation {}", tmax))
                } else {
                    Err(anyhow!("hook product disagrees with the census"))
                }
            })(),
        );
    }

    if failures > 0 {
        bail!("{} check(s) failed", failures);
    }
    println!("all checks passed");
    Ok(())
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Extensions { source, format, cap } => cmd_extensions(source, *format, *cap),
        Command::Matrix {
            source,
            view,
            format,
            cap,
        } => cmd_matrix(source, *view, *format, *cap),
        Command::Eigen { source, format, cap } => cmd_eigen(source, *format, *cap),
        Command::Verify {
            source,
            seed,
            draws,
            tmax,
            cap,
        } => cmd_verify(source, *seed, *draws, *tmax, *cap),
        Command::Genfun {
            source,
            tmax,
            format,
            cap,
        } => cmd_genfun(source, *tmax, *format, *cap),
        Command::CountPosets { n } => {
            println!("{}", count_posets(*n)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
