mod config;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use symavoid::family::{evaluation_matrix, search_extremal, search_extremal_parallel, tridiag_det, SearchOptions};
use symavoid::perm::avoiders_capped;
use symavoid::qsym::{
    generating_function, is_symmetric, kostka_cache, monomial_to_schur, to_monomial_symmetric, BasisTerms,
};
use symavoid::verify::{self, CheckReport, Verdict};
use symavoid::{classify, extract_family, Error, Integer, PermSet, Rational, SetFamily};

use config::{Format, Overrides, RunConfig};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Pattern avoidance, quasisymmetric generating functions, intersecting
/// families, and exhaustive verification of the bounds that connect them.
///
/// Exit codes: 0 success or verdict holds, 1 verdict fails, 2 usage,
/// precondition or parse error, 3 budget exceeded without --partial.
#[derive(Parser, Debug)]
#[command(name = "symavoid", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Settings; each also reads `SYMAVOID_<NAME>` and the config file, with
/// flags taking precedence over the environment over the file.
#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Candidate and search-node budget per check (default 10^8).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest n for which S_n is enumerated (default 10).
    #[arg(long = "enum-cap", global = true)]
    enum_cap: Option<usize>,
    /// Sample count for sampling checks (default 10^6).
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Kostka cache file.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Do not read or write the Kostka cache.
    #[arg(long = "no-cache", global = true)]
    no_cache: bool,
    /// Run the budgeted prefix of an over-budget check instead of refusing.
    #[arg(long, global = true)]
    partial: bool,
    /// Seed for sampling checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// TOML config file (also `SYMAVOID_CONFIG`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List S_n(Π) in lexicographic order.
    Avoid {
        n: usize,
        /// Pattern file: one permutation per line.
        #[arg(long)]
        patterns: PathBuf,
    },
    /// Print Q_n(S) in the M basis, or in the m or s basis when symmetric.
    Qsym {
        n: usize,
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_parser = ["M", "m", "s"], default_value = "M")]
        basis: String,
    },
    /// Whether Q_n(S) is symmetric.
    CheckSym {
        n: usize,
        #[arg(long)]
        set: PathBuf,
    },
    /// Whether S is symmetric with a non-negative Schur expansion.
    CheckSchur {
        n: usize,
        #[arg(long)]
        set: PathBuf,
    },
    /// Set-family operations.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Run a named check.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Classify every Π ⊆ S_k of size p by windowed symmetric avoidance.
    Census {
        k: usize,
        #[arg(long)]
        size: usize,
        /// Window `a:b` of degrees n.
        #[arg(long, value_parser = parse_window)]
        window: (usize, usize),
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// A_i = { j : i ∉ Des(π_j) } for the set in file order.
    Extract {
        #[arg(long)]
        set: PathBuf,
        /// Degree of the permutations; inferred when omitted.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Report uniformity, intersection constancy and distinctness.
    Classify {
        #[arg(long)]
        family: PathBuf,
    },
    /// Find a k-uniform (l1, l2)-intersecting family of m distinct sets.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        #[arg(long)]
        m: usize,
        /// Prune relabellings of unused elements.
        #[arg(long)]
        iso: bool,
        /// Search on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// The evaluation matrix of a valid family and its determinant.
    Matrix {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        l2: usize,
    },
    /// d_m(α) = det of the m×m tridiagonal matrix with α off the diagonal.
    Det {
        #[arg(long)]
        m: usize,
        /// Rational such as `1/2` or `-3`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// No p-subset Π ⊆ S_k has a symmetric complement (3 <= p <= k-2).
    MainTheorem {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
    /// No symmetric non-monotone set of size <= n-2; some of size n-1.
    MinSymmetricSize {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-size")]
        max_size: usize,
    },
    /// Random subsets of one size, as evidence for the same claim.
    MinSymmetricSizeSample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: usize,
    },
    /// S_n(Π) symmetric for every n in a window.
    SymmetricallyAvoided {
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long, value_parser = parse_window)]
        window: (usize, usize),
    },
    /// The explicit symmetric, non-Schur-positive set of size n.
    SizeNSet {
        #[arg(long)]
        n: usize,
    },
    /// No k-uniform (l1, l2)-intersecting family of n+1 distinct sets.
    BoseGeneralized {
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// No six-set family with 2 l2 = l1 + k, and the forced five-set prefix.
    Case2Lemma {
        #[arg(long = "k-max")]
        k_max: usize,
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Catalan counts for S_3 patterns and the monotone-pair bound.
    ClassicalSanity {
        #[arg(long = "n-max")]
        n_max: usize,
    },
}

fn parse_window(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    Ok((a, b))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_perm_set(path: &Path, degree: Option<usize>) -> Result<PermSet> {
    PermSet::parse(&read(path)?, degree).with_context(|| path.display().to_string())
}

fn read_family(path: &Path) -> Result<SetFamily> {
    SetFamily::parse(&read(path)?).with_context(|| path.display().to_string())
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_HOLDS }
    }
}

fn report_output(report: &CheckReport, format: Format) -> Result<Output> {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv()?,
        Format::Machine => format!("{}\n", report.to_json()),
    };
    let code = match report.verdict {
        Verdict::Holds => EXIT_HOLDS,
        Verdict::Fails => EXIT_FAILS,
        Verdict::OutOfBudget if report.partial => EXIT_HOLDS,
        Verdict::OutOfBudget => EXIT_BUDGET,
    };
    Ok(Output { text, code })
}

fn family_output(family: &SetFamily, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => family.to_text(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "set"])?;
            for (i, s) in family.to_vecs().iter().enumerate() {
                let parts: Vec<String> = s.iter().map(usize::to_string).collect();
                w.write_record([(i + 1).to_string(), parts.join(",")])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Machine => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ "ground_n": family.ground_n(), "sets": family.to_vecs() }))?
        ),
    })
}

fn run_command(command: Command, cfg: &RunConfig) -> Result<Output> {
    let format = cfg.output_format;
    let checks = cfg.check_config();
    match command {
        Command::Avoid { n, patterns } => {
            let pi = read_perm_set(&patterns, None)?;
            let found = avoiders_capped(n, &pi, cfg.enumeration_cap)?;
            let text = match format {
                Format::Text => format!("{}# count: {}\n", found.to_text(), found.len()),
                Format::Csv => {
                    let mut out = String::from("permutation\n");
                    for p in found.members() {
                        out.push_str(&format!("\"{p}\"\n"));
                    }
                    out
                }
                Format::Machine => {
                    let members: Vec<Vec<usize>> = found.members().iter().map(|p| p.to_vec()).collect();
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&json!({ "n": n, "count": found.len(), "members": members }))?
                    )
                }
            };
            Ok(Output::ok(text))
        }
        Command::Qsym { n, set, basis } => {
            let s = read_perm_set(&set, Some(n))?;
            let q = generating_function::<Integer>(&s)?;
            let terms = match basis.as_str() {
                "M" => q.basis_terms(),
                "m" => to_monomial_symmetric(&q)?.basis_terms(),
                _ => monomial_to_schur(&to_monomial_symmetric(&q)?)?.basis_terms(),
            };
            Ok(Output::ok(render::terms(n, &terms, format)?))
        }
        Command::CheckSym { n, set } => {
            let s = read_perm_set(&set, Some(n))?;
            let symmetric = is_symmetric(&generating_function::<Integer>(&s)?);
            Ok(Output {
                text: render::fields(&[("symmetric", symmetric.to_string())], format)?,
                code: if symmetric { EXIT_HOLDS } else { EXIT_FAILS },
            })
        }
        Command::CheckSchur { n, set } => {
            let s = read_perm_set(&set, Some(n))?;
            let (positive, expansion) = symavoid::qsym::is_schur_positive::<Integer>(&s)?;
            let mut fields =
                vec![("symmetric", expansion.is_some().to_string()), ("schur-positive", positive.to_string())];
            if let Some(e) = &expansion {
                fields.push(("expansion", e.to_string()));
            }
            Ok(Output { text: render::fields(&fields, format)?, code: if positive { EXIT_HOLDS } else { EXIT_FAILS } })
        }
        Command::Family(f) => run_family(f, cfg),
        Command::Verify(v) => {
            let report = match v {
                VerifyCommand::MainTheorem { k, p } => verify::check_main_theorem(k, p, &checks)?,
                VerifyCommand::MinSymmetricSize { n, max_size } => {
                    verify::check_min_symmetric_size(n, max_size, &checks)?
                }
                VerifyCommand::MinSymmetricSizeSample { n, size } => {
                    verify::sample_min_symmetric_size(n, size, &checks)?
                }
                VerifyCommand::SymmetricallyAvoided { patterns, window } => {
                    let pi = read_perm_set(&patterns, None)?;
                    verify::check_symmetrically_avoided(&pi, window.0, window.1, &checks)?
                }
                VerifyCommand::SizeNSet { n } => verify::check_size_n_set(n, &checks)?,
                VerifyCommand::BoseGeneralized { n_max } => verify::check_bose_generalized(n_max, &checks)?,
                VerifyCommand::Case2Lemma { k_max, n_max } => verify::check_case2_lemma(k_max, n_max, &checks)?,
                VerifyCommand::ClassicalSanity { n_max } => verify::check_classical_sanity(n_max, &checks)?,
            };
            report_output(&report, format)
        }
        Command::Census { k, size, window } => {
            report_output(&verify::census(k, size, window.0, window.1, &checks)?, format)
        }
    }
}

fn run_family(command: FamilyCommand, cfg: &RunConfig) -> Result<Output> {
    let format = cfg.output_format;
    match command {
        FamilyCommand::Extract { set, n } => {
            let s = read_perm_set(&set, n)?;
            Ok(Output::ok(family_output(&extract_family(&s), format)?))
        }
        FamilyCommand::Classify { family } => {
            let f = read_family(&family)?;
            let p = classify(&f);
            let fields = [
                ("sets", f.len().to_string()),
                ("uniform_k", p.uniform_k.to_string()),
                ("adjacent_l1", p.adjacent_l1.to_string()),
                ("distant_l2", p.distant_l2.to_string()),
                ("distinct", p.distinct.to_string()),
                ("uniform_intersecting", p.is_uniform_intersecting().to_string()),
            ];
            Ok(Output::ok(render::fields(&fields, format)?))
        }
        FamilyCommand::Search { n, k, l1, l2, m, iso, sequential } => {
            let opts = SearchOptions { node_budget: cfg.node_budget, iso_pruning: iso };
            let outcome = if sequential {
                search_extremal(n, k, l1, l2, m, &opts)?
            } else {
                search_extremal_parallel(n, k, l1, l2, m, &opts)?
            };
            Ok(match outcome.family {
                Some(f) => Output::ok(family_output(&f, format)?),
                None => Output {
                    text: match format {
                        Format::Text => "no family\n".into(),
                        _ => render::fields(&[("family", "null".into())], format)?,
                    },
                    code: EXIT_FAILS,
                },
            })
        }
        FamilyCommand::Matrix { family, l2 } => {
            let f = read_family(&family)?;
            let m = evaluation_matrix(&f, l2)?;
            let det = m.map(|&v| Rational::from_integer(Integer::from(v))).determinant();
            let singular = det == Rational::from_integer(Integer::from(0));
            let text = match format {
                Format::Machine => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&json!({
                        "matrix": m.to_rows(),
                        "determinant": det.to_string(),
                        "singular": singular,
                    }))?
                ),
                _ => {
                    let body = if format == Format::Csv {
                        m.to_rows()
                            .iter()
                            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(",") + "\n")
                            .collect::<String>()
                    } else {
                        m.to_string()
                    };
                    format!("{body}determinant: {det}\nsingular: {singular}\n")
                }
            };
            Ok(Output::ok(text))
        }
        FamilyCommand::Det { m, alpha } => {
            let a = Rational::from_str(alpha.trim()).map_err(|e| anyhow!("bad rational {alpha:?}: {e}"))?;
            let d = tridiag_det(m, &a);
            Ok(Output::ok(render::fields(&[("d", d.to_string())], format)?))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let overrides = Overrides {
        format: g.format,
        budget: g.budget,
        enum_cap: g.enum_cap,
        samples: g.samples,
        cache: g.cache,
        no_cache: g.no_cache,
        partial: g.partial,
        seed: g.seed,
        threads: g.threads,
        config: g.config,
    };
    let cfg = match RunConfig::resolve(&overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(t) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let loaded = match &cfg.cache_path {
        Some(p) => kostka_cache().load(p).unwrap_or_else(|e| {
            eprintln!("warning: ignoring Kostka cache: {e}");
            0
        }),
        None => 0,
    };
    let result = run_command(cli.command, &cfg);
    if let Some(p) = &cfg.cache_path {
        if kostka_cache().len() > loaded {
            if let Err(e) = kostka_cache().save(p) {
                eprintln!("warning: could not write Kostka cache: {e}");
            }
        }
    }
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
