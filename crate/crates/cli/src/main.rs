//! Batch front end: load shift specs and block codes from files, run the
//! library analyses, and emit JSON/CSV reports with a stable exit-code
//! contract (0 success or all-pass, 1 failed checks, 2 input error,
//! 3 empty result, 4 budget exceeded, 5 blocked certificate).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shiftlab_core::format::{
    defect_report_csv, defect_report_json, flat_report_csv, flat_report_json, freq_comparison_csv,
    freq_comparison_json, growth_table_csv, growth_table_json, parse_block_code, parse_rational,
    parse_shift_spec, render_block_code, sofic_report_json,
};
use shiftlab_core::{
    certify, characteristic_defect, check_sofic_conditions, entropy_estimate, find_flat_windows,
    frequency_comparison, growth_function, language_words, recurrence_check, search_automorphisms,
    CertifiedCode, Error, Margin, SubshiftSpec,
};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_EMPTY: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_BLOCKED: u8 = 5;

#[derive(Parser)]
#[command(name = "shiftlab", about = "workbench for one-dimensional subshifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Shift spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible words of one length.
    Language {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Word counts N(1..=rmax) with logarithms.
    Growth {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rmax: usize,
    },
    /// Entropy upper bound min ln N(r) / r.
    Entropy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rmax: usize,
    },
    /// Window lengths whose defect stays below a target.
    Flat {
        #[command(flatten)]
        common: Common,
        /// Margin "l,r".
        #[arg(long)]
        margin: String,
        /// Defect target, decimal or fraction.
        #[arg(long)]
        eps: String,
        #[arg(long)]
        cap: usize,
    },
    /// Exhaustive certified-automorphism search at a fixed radius.
    Autos {
        #[command(flatten)]
        common: Common,
        /// Radius "l,r".
        #[arg(long)]
        radius: String,
        #[arg(long, default_value_t = 4)]
        invcap: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Directory for the emitted code files.
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
    /// Pushforward defect report for a set of code files.
    Charmeas {
        #[command(flatten)]
        common: Common,
        /// Comma-separated code file paths.
        #[arg(long)]
        codes: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        invcap: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Partial-map certificate over a set of code files.
    Sofic {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        codes: String,
        #[arg(long)]
        n: usize,
        /// Margins "l,r".
        #[arg(long)]
        margins: String,
        #[arg(long, default_value_t = 4)]
        invcap: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Prefix frequencies against the substitution oracle.
    Freq {
        #[command(flatten)]
        common: Common,
        /// Comma-separated window lengths.
        #[arg(long)]
        schedule: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Least window length making every n-word visible.
    Recur {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: usize,
    },
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::EmptySubshift => EXIT_EMPTY,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_for(err))
}

fn load_spec(path: &Path) -> Result<SubshiftSpec, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_shift_spec(&text)
}

fn load_codes(
    spec: &SubshiftSpec,
    list: &str,
    invcap: usize,
    depth: usize,
) -> Result<Vec<CertifiedCode>, Error> {
    let mut certs = Vec::new();
    for path in list.split(',') {
        let path = path.trim();
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        let id = Path::new(path)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.to_string());
        let code = parse_block_code(&text, &id)?;
        if code.alphabet() != spec.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if !code.covers(spec)? {
            return Err(Error::InvalidSpec(format!(
                "{path}: rule does not cover every admissible window"
            )));
        }
        let cert = certify(spec, &code, invcap, depth)?.ok_or_else(|| {
            Error::InvalidSpec(format!("{path}: code does not certify as an automorphism"))
        })?;
        certs.push(cert);
    }
    Ok(certs)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_pair(s: &str, what: &str) -> Result<Margin, Error> {
    let (l, r) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("{what} must be of the form l,r")))?;
    let left = l
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))?;
    let right = r
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))?;
    Ok(Margin::new(left, right))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Language { common, n } => {
            let spec = load_spec(&common.spec)?;
            let words = language_words(&spec, n)?;
            if words.count() == 0 {
                return Ok(ExitCode::from(EXIT_EMPTY));
            }
            let alphabet = spec.alphabet();
            let mut listing = String::new();
            for w in words.iter() {
                listing.push_str(&w.render(alphabet));
                listing.push('\n');
            }
            emit(&common.out, &listing)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Growth { common, rmax } => {
            let spec = load_spec(&common.spec)?;
            let table = growth_function(&spec, rmax)?;
            let content = match common.format {
                Format::Csv => growth_table_csv(&table),
                Format::Json => growth_table_json(&common.spec.display().to_string(), &table)?,
            };
            emit(&common.out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Entropy { common, rmax } => {
            let spec = load_spec(&common.spec)?;
            let est = entropy_estimate(&spec, rmax)?;
            emit(
                &common.out,
                &format!("entropy = {:.6}\nargmin = {}\n", est.value, est.argmin),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Flat {
            common,
            margin,
            eps,
            cap,
        } => {
            let spec = load_spec(&common.spec)?;
            let margin = parse_pair(&margin, "margin")?;
            let eps = parse_rational(&eps)?;
            let report = find_flat_windows(&spec, margin, &eps, cap)?;
            let content = match common.format {
                Format::Csv => flat_report_csv(&report)?,
                Format::Json => flat_report_json(&common.spec.display().to_string(), &report)?,
            };
            emit(&common.out, &content)?;
            if report.exhausted {
                return Ok(ExitCode::from(EXIT_EMPTY));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Autos {
            common,
            radius,
            invcap,
            depth,
            budget,
            outdir,
        } => {
            let spec = load_spec(&common.spec)?;
            let radius = parse_pair(&radius, "radius")?;
            let found =
                search_automorphisms(&spec, radius.left, radius.right, invcap, depth, budget)?;
            if let Some(dir) = &outdir {
                fs::create_dir_all(dir)
                    .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
                for cert in &found {
                    let path = dir.join(format!("{}.code", cert.id()));
                    fs::write(&path, render_block_code(cert.code()))
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                }
            }
            emit(&common.out, &format!("{}\n", found.len()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Charmeas {
            common,
            codes,
            n,
            m,
            invcap,
            depth,
        } => {
            let spec = load_spec(&common.spec)?;
            let certs = load_codes(&spec, &codes, invcap, depth)?;
            let report = characteristic_defect(&spec, &certs, n, m)?;
            let content = match common.format {
                Format::Csv => defect_report_csv(&report)?,
                Format::Json => defect_report_json(&common.spec.display().to_string(), &report)?,
            };
            emit(&common.out, &content)?;
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_FAIL))
            }
        }
        Command::Sofic {
            common,
            codes,
            n,
            margins,
            invcap,
            depth,
        } => {
            let spec = load_spec(&common.spec)?;
            let margins = parse_pair(&margins, "margins")?;
            let certs = load_codes(&spec, &codes, invcap, depth)?;
            let report = check_sofic_conditions(&spec, &certs, n, margins)?;
            let content = sofic_report_json(&common.spec.display().to_string(), &report)?;
            emit(&common.out, &content)?;
            if report.any_blocked() {
                Ok(ExitCode::from(EXIT_BLOCKED))
            } else if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_FAIL))
            }
        }
        Command::Freq {
            common,
            schedule,
            m,
        } => {
            let spec = load_spec(&common.spec)?;
            let schedule: Vec<usize> = schedule
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad schedule entry {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            let cmp = frequency_comparison(&spec, &schedule, m)?;
            let content = match common.format {
                Format::Csv => freq_comparison_csv(&cmp)?,
                Format::Json => freq_comparison_json(&common.spec.display().to_string(), &cmp)?,
            };
            emit(&common.out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Recur { common, n, cap } => {
            let spec = load_spec(&common.spec)?;
            match recurrence_check(&spec, n, cap)? {
                Some(radius) => {
                    emit(&common.out, &format!("{radius}\n"))?;
                    Ok(ExitCode::SUCCESS)
                }
                None => Ok(ExitCode::from(EXIT_EMPTY)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
