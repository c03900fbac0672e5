//! `montesinos`: build the family, classify mutants, and run the census.
//!
//! Exit status is 0 on success, 1 for bad input, and 2 when a computed
//! invariant is violated.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use montesinos::census::{classify_lines, read_json_lines, render_table, run_census, write_json_lines};
use montesinos::growth::{find_growth_threshold, persistence_scan};
use montesinos::{
    build_family, canonical_key, component_count, distinct_count_formula, enumerate_mutant_classes,
    is_alternating_vertical, is_hyperbolic_witness, volume_bounds, Error, FamilyParams, GrowthContext,
    Precision, DEFAULT_ENUMERATE_CAP,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "montesinos", version, about = "Mutant classes, volume bounds and growth checks for K(1/7, 1/9, ..., 1/(4n+7))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Print K_{2n+1} and its basic invariants.
    Family {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count mutant classes of K_{2n+1}.
    Mutants {
        #[arg(long)]
        n: u64,
        /// Enumerate classes explicitly and compare with (2n)!/2.
        #[arg(long)]
        enumerate: bool,
        /// Largest number of tangles to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATE_CAP)]
        cap: usize,
        /// Print every canonical key (implies --enumerate).
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Group Montesinos links, one per line, by mutant class.
    Classify {
        /// Input file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Volume interval for the mutants of K_{2n+1}.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Growth certificates over a range of n, or the threshold search.
    Growth {
        #[arg(long, required_unless_present = "threshold")]
        n_min: Option<u64>,
        #[arg(long, required_unless_present = "threshold")]
        n_max: Option<u64>,
        /// Locate the least n from which the count exceeds the volume bound.
        #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
        threshold: bool,
        /// With --threshold, re-check this many n past the threshold.
        #[arg(long, default_value_t = 10_000, requires = "threshold")]
        span: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the census over n_min..=n_max and write it out.
    Census {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: CensusFormat,
        #[arg(long, default_value_t = DEFAULT_ENUMERATE_CAP)]
        enumerate_cap: usize,
    },
    /// Re-read census JSON lines and validate every record.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Input(anyhow::Error),
    Invariant(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Invariant(_)) => Failure::Invariant(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(e)) => {
            eprintln!("invariant violated: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let prec = Precision::from_env();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Family { n, format } => family(&mut out, n, format),
        Command::Mutants {
            n,
            enumerate,
            cap,
            list,
            format,
        } => mutants(&mut out, n, enumerate || list, cap, list, format),
        Command::Classify { input, format } => classify(&mut out, &input, format),
        Command::Bounds { n, format } => bounds(&mut out, n, prec, format),
        Command::Growth {
            threshold: true,
            span,
            format,
            ..
        } => threshold(&mut out, span, prec, format),
        Command::Growth {
            n_min, n_max, format, ..
        } => growth(&mut out, n_min.unwrap_or(2), n_max.unwrap_or(2), prec, format),
        Command::Census {
            n_min,
            n_max,
            out: path,
            format,
            enumerate_cap,
        } => census(&mut out, n_min, n_max, &path, format, enumerate_cap, prec),
        Command::Verify { input } => verify(&mut out, &input),
    }
}

fn print_json(out: &mut impl Write, value: &serde_json::Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn family(out: &mut impl Write, n: u64, format: Format) -> Result<(), Failure> {
    let k = build_family(FamilyParams::new(n)?)?;
    let components = component_count(&k);
    let witness = is_hyperbolic_witness(&k)?;
    let alternating = is_alternating_vertical(&k);
    let key = canonical_key(&k).ok();
    if format == Format::Json {
        return print_json(
            out,
            &json!({
                "n": n,
                "fractions": k.to_string(),
                "components": components,
                "hyperbolic_witness": witness,
                "alternating": alternating,
                "fraction_sum": k.fraction_sum().to_string(),
                "canonical_key": key.map(|k| k.to_string()),
            }),
        );
    }
    writeln!(out, "K_{} = K{}", 2 * n + 1, k)?;
    writeln!(out, "components:          {components}")?;
    writeln!(out, "hyperbolic witness:  {witness}")?;
    writeln!(out, "alternating:         {alternating}")?;
    writeln!(out, "fraction sum:        {}", k.fraction_sum())?;
    Ok(())
}

fn mutants(out: &mut impl Write, n: u64, enumerate: bool, cap: usize, list: bool, format: Format) -> Result<(), Failure> {
    let k = build_family(FamilyParams::new(n)?)?;
    let formula = distinct_count_formula(n)?;
    let classes = if enumerate {
        let classes = enumerate_mutant_classes(&k, cap)?;
        if classes.len().to_string() != formula.to_string() {
            return Err(Error::Invariant(format!(
                "enumerated {} classes, (2n)!/2 = {formula}",
                classes.len()
            ))
            .into());
        }
        Some(classes)
    } else {
        None
    };
    if format == Format::Json {
        let mut value = json!({ "n": n, "formula_count": formula.to_string() });
        if let Some(classes) = &classes {
            value["enumerated_count"] = json!(classes.len().to_string());
            if list {
                value["classes"] = json!(classes.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            }
        }
        return print_json(out, &value);
    }
    writeln!(out, "(2n)!/2 = {formula}")?;
    if let Some(classes) = &classes {
        writeln!(out, "enumerated = {}", classes.len())?;
        if list {
            for c in classes {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(())
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, Failure> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(file)))
}

fn classify(out: &mut impl Write, input: &Path, format: Format) -> Result<(), Failure> {
    let report = classify_lines(open_input(input)?)?;
    if format == Format::Json {
        print_json(out, &serde_json::to_value(&report).map_err(io::Error::from)?)?;
    } else {
        for group in &report.groups {
            let lines: Vec<String> = group.lines.iter().map(usize::to_string).collect();
            writeln!(out, "{}  lines {}", group.key, lines.join(","))?;
        }
        for line in report.lines.iter().filter(|l| l.error.is_some()) {
            writeln!(out, "line {}: {}: {}", line.line, line.input, line.error.as_deref().unwrap_or(""))?;
        }
        writeln!(out, "{} classes, {} rejected", report.groups.len(), report.rejected())?;
    }
    if report.rejected() > 0 {
        return Err(Failure::Input(anyhow::anyhow!("{} input lines rejected", report.rejected())));
    }
    Ok(())
}

fn bounds(out: &mut impl Write, n: u64, prec: Precision, format: Format) -> Result<(), Failure> {
    let record = volume_bounds(n, prec)?.to_record();
    if format == Format::Json {
        return print_json(out, &json!({ "n": n, "bounds": record }));
    }
    let oct = |f: &montesinos::Fraction| {
        if f.is_integral() {
            f.numer().to_string()
        } else {
            f.to_string()
        }
    };
    writeln!(out, "{} v_oct <= vol <= {} v_oct", oct(&record.lower_oct), oct(&record.upper_oct))?;
    writeln!(out, "{} <= vol <= {}", record.lower, record.upper)?;
    Ok(())
}

fn growth(out: &mut impl Write, n_min: u64, n_max: u64, prec: Precision, format: Format) -> Result<(), Failure> {
    if n_max < n_min {
        bail_input(format!("empty range {n_min}..={n_max}"))?;
    }
    let ctx = GrowthContext::new(prec);
    let certs = ctx.scan(n_min..=n_max)?;
    if format == Format::Json {
        let all: Vec<_> = certs.iter().map(|c| c.to_json()).collect();
        return print_json(out, &serde_json::to_value(all).map_err(io::Error::from)?);
    }
    for cert in &certs {
        writeln!(
            out,
            "n = {}: v = {}, ln count = {}, target = {}, {}",
            cert.n,
            cert.v_upper.to_decimal(30),
            cert.log_count.to_decimal(30),
            cert.log_target.to_decimal(30),
            if cert.holds() { "holds" } else { "does not hold" }
        )?;
        for step in &cert.chain {
            writeln!(out, "    [{:?}] {}", step.verdict, step.label)?;
        }
    }
    Ok(())
}

fn bail_input(msg: String) -> Result<(), Failure> {
    Err(Failure::Input(anyhow::anyhow!(msg)))
}

fn threshold(out: &mut impl Write, span: u64, prec: Precision, format: Format) -> Result<(), Failure> {
    let ctx = GrowthContext::new(prec);
    let t = find_growth_threshold(&ctx)?;
    let scan = persistence_scan(&ctx, t.n0, span)?;
    if !scan.violations.is_empty() {
        return Err(Error::Invariant(format!(
            "claim fails at {} values of n past n0 = {}, first {}",
            scan.violations.len(),
            t.n0,
            scan.violations[0]
        ))
        .into());
    }
    if format == Format::Json {
        let thresholds: serde_json::Map<_, _> = scan
            .thresholds
            .iter()
            .map(|(label, n)| (label.to_string(), json!(n)))
            .collect();
        return print_json(
            out,
            &json!({
                "n0": t.n0,
                "margin_before": t.margin_before.to_decimal(30),
                "margin_at": t.margin_at.to_decimal(30),
                "convexity_checked_to": t.convexity_checked_to,
                "bisection_steps": t.bisection_steps,
                "scan_end": scan.end,
                "violations": scan.violations.len(),
                "step_thresholds": thresholds,
            }),
        );
    }
    writeln!(out, "n0 = {}", t.n0)?;
    writeln!(out, "margin at n0 - 1: {}", t.margin_before.to_decimal(30))?;
    writeln!(out, "margin at n0:     {}", t.margin_at.to_decimal(30))?;
    writeln!(out, "convexity checked directly to n = {}", t.convexity_checked_to)?;
    writeln!(out, "claim holds for every n in {}..={}", scan.start, scan.end)?;
    Ok(())
}

fn census(
    out: &mut impl Write,
    n_min: u64,
    n_max: u64,
    path: &Path,
    format: CensusFormat,
    enumerate_cap: usize,
    prec: Precision,
) -> Result<(), Failure> {
    let records = run_census(n_min, n_max, enumerate_cap, prec)?;
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut writer = BufWriter::new(file);
    match format {
        CensusFormat::Json => write_json_lines(&records, &mut writer)?,
        CensusFormat::Table => writer.write_all(render_table(&records).as_bytes())?,
    }
    writer.flush()?;
    writeln!(out, "wrote {} records to {}", records.len(), path.display())?;
    Ok(())
}

fn verify(out: &mut impl Write, input: &Path) -> Result<(), Failure> {
    let records = read_json_lines(open_input(input)?)?;
    if records.is_empty() {
        return bail_input(format!("{} holds no records", input.display()));
    }
    writeln!(out, "{} records valid", records.len())?;
    Ok(())
}
