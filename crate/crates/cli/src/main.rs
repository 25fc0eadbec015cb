use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ideal24::census::{census_enumerate, parse_scheme};
use ideal24::construction::parse_construction;
use ideal24::pipeline::{emit_report, run_verify, to_json_line, ReportFormat, Signature, VerifyOptions};
use ideal24::selftest::selftest;

const STRUCTURAL_FAILURE: u8 = 1;
const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "ideal24", version, about = "Verify facet-pairing constructions of regular ideal 24-cells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a construction file or a built-in `preset:NAME`.
    Verify {
        input: String,
        #[arg(long)]
        json: bool,
        /// Also build and check the orientation double cover.
        #[arg(long)]
        double_cover: bool,
        /// Compute boundary automorphism groups.
        #[arg(long)]
        boundary_auts: bool,
    },
    /// Enumerate a restricted census scheme.
    Census {
        scheme: PathBuf,
        /// Stop after this many assignments.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run the internal consistency checks.
    Selftest,
}

fn read(path: &std::path::Path) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(USAGE_ERROR)
    })
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn describe(s: &Signature) -> String {
    let h1: Vec<String> = s.cusp_h1.iter().map(ToString::to_string).collect();
    format!(
        "volume {} v_m, {}, {} cusps [{}], cusp H1 [{}], H1 = {}",
        s.volume_multiple,
        if s.orientable { "orientable" } else { "non-orientable" },
        s.cusps,
        s.cusp_types.join(", "),
        h1.join("; "),
        s.h1
    )
}

fn verify(input: &str, json: bool, options: VerifyOptions) -> Result<ExitCode, ExitCode> {
    let text = if input.starts_with("preset:") { input.to_string() } else { read(input.as_ref())? };
    let script = parse_construction(&text).map_err(|e| {
        eprintln!("error: {input}: {e}");
        ExitCode::from(USAGE_ERROR)
    })?;
    let doc = run_verify(&script, options);
    let format = if json { ReportFormat::Json } else { ReportFormat::Human };
    let mut out = emit_report(&doc, format);
    if json {
        out.push('\n');
    }
    emit(&out);
    Ok(if doc.passed() { ExitCode::SUCCESS } else { ExitCode::from(STRUCTURAL_FAILURE) })
}

fn census(path: &std::path::Path, cap: Option<usize>, json: bool) -> Result<ExitCode, ExitCode> {
    let scheme = parse_scheme(&read(path)?).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(USAGE_ERROR)
    })?;
    let result = census_enumerate(&scheme, cap);
    let out = if json {
        to_json_line(&result) + "\n"
    } else {
        let mut out = format!(
            "{} assignments{}, {} manifolds, {} signatures\n",
            result.enumerated,
            if result.capped { " (capped)" } else { "" },
            result.manifolds,
            result.entries.len()
        );
        for e in &result.entries {
            out += &format!("  #{}: {}\n", e.index, describe(&e.signature));
        }
        out
    };
    emit(&out);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { input, json, double_cover, boundary_auts } => {
            verify(&input, json, VerifyOptions { double_cover, boundary_auts })
        }
        Command::Census { scheme, cap, json } => census(&scheme, cap, json),
        Command::Selftest => {
            let checks = selftest();
            let mut out = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => out += &format!("{status} {}: {d}\n", c.name),
                    None => out += &format!("{status} {}\n", c.name),
                }
            }
            emit(&out);
            Ok(if checks.iter().all(|c| c.passed) { ExitCode::SUCCESS } else { ExitCode::from(STRUCTURAL_FAILURE) })
        }
    };
    outcome.unwrap_or_else(|code| code)
}
