//! The `spiderfam` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::descriptor::FamilyDescriptor;
use crate::emit::{emit_script, Dialect};
use crate::error::{Error, Result};
use crate::exactlinear::{parse_rational, Rational};
use crate::par::Execution;
use crate::poly::{VarNames, WeightVector};
use crate::spider::{
    build_basis, build_family_with, derive_relations, select_weights, FamilyOptions, ReesFamily,
    SpiderType, WeightSelection, WeightStrategy, DEFAULT_MAX_ENTRY, DEFAULT_WEIGHT_BOUND,
};
use crate::verify::{
    check_curvilinear_fiber, check_special_fiber, default_lambdas, fiber_dimensions,
    flatness_certificate_with, verify_relation_with,
};

#[derive(Debug, Parser)]
#[command(
    name = "spiderfam",
    version,
    about = "Explicit flat families degenerating curvilinear algebras to spider algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derive the family for a spider type and write its descriptor.
    Derive {
        /// Leg lengths, e.g. `7,7,7`.
        #[arg(long)]
        legs: String,
        /// Möbius parameters, e.g. `1,2,3` (default `1..r`).
        #[arg(long)]
        a_values: Option<String>,
        /// Manual weight vector, validated against the relations.
        #[arg(long, conflicts_with = "general_weights")]
        weights: Option<String>,
        /// Search all weight vectors instead of consecutive ones.
        #[arg(long)]
        general_weights: bool,
        /// Only try consecutive weights, without the general fallback.
        #[arg(long, conflicts_with_all = ["weights", "general_weights"])]
        consecutive_only: bool,
        /// Largest weight entry tried by the general search.
        #[arg(long, default_value_t = DEFAULT_MAX_ENTRY)]
        max_weight: u64,
        /// Largest starting weight tried for consecutive weights.
        #[arg(long, default_value_t = DEFAULT_WEIGHT_BOUND)]
        weight_bound: u64,
        /// Descriptor path; stdout when absent (the report then goes to stderr).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run on one thread even when built with `parallel`.
        #[arg(long)]
        sequential: bool,
    },
    /// Verify a stored family: relations, fibers and the flatness certificate.
    Verify {
        /// Descriptor written by `derive`.
        family: PathBuf,
        /// Fiber values as `p/q` tokens, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        /// Run on one thread even when built with `parallel`.
        #[arg(long)]
        sequential: bool,
    },
    /// Emit a verification script for an external computer-algebra system.
    Emit {
        /// Descriptor written by `derive`.
        family: PathBuf,
        /// `m2` or `sage`.
        #[arg(long, default_value = "m2")]
        dialect: String,
        /// Fiber values checked by the script.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        /// Script path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the border margin table for the selected weights.
    ReportWeights {
        /// Leg lengths, e.g. `7,7,7`.
        #[arg(long)]
        legs: String,
        /// Weight vector to check instead of the selected one.
        #[arg(long)]
        weights: Option<String>,
    },
}

/// Runs the command line and returns the process exit status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Derive {
            legs,
            a_values,
            weights,
            general_weights,
            consecutive_only,
            max_weight,
            weight_bound,
            out,
            sequential,
        } => {
            let strategy = match (weights, general_weights) {
                (Some(w), _) => parse_weights(&w).map(WeightStrategy::Manual),
                (None, true) => Ok(WeightStrategy::General {
                    max_entry: max_weight,
                }),
                (None, false) if consecutive_only => Ok(WeightStrategy::Consecutive {
                    bound: weight_bound,
                }),
                (None, false) => Ok(WeightStrategy::Auto {
                    bound: weight_bound,
                    max_entry: max_weight,
                }),
            };
            strategy.and_then(|strategy| {
                derive(
                    &legs,
                    a_values.as_deref(),
                    strategy,
                    out.as_deref(),
                    execution(sequential),
                    stdout,
                    stderr,
                )
            })
        }
        Command::Verify {
            family,
            lambdas,
            sequential,
        } => verify(&family, lambdas.as_deref(), execution(sequential), stdout),
        Command::Emit {
            family,
            dialect,
            lambdas,
            out,
        } => emit(
            &family,
            &dialect,
            lambdas.as_deref(),
            out.as_deref(),
            stdout,
        ),
        Command::ReportWeights { legs, weights } => {
            report_weights(&legs, weights.as_deref(), stdout)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn parse_list<T>(text: &str, what: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            f(tok).ok_or_else(|| Error::Parse(format!("bad {what} `{tok}`")))
        })
        .collect()
}

fn parse_weights(text: &str) -> Result<WeightVector> {
    WeightVector::new(parse_list(text, "weight", |t| t.parse().ok())?)
}

fn parse_rationals(text: &str, what: &str) -> Result<Vec<Rational>> {
    parse_list(text, what, |t| parse_rational(t).ok())
}

fn parse_lambdas(text: Option<&str>) -> Result<Vec<Rational>> {
    text.map_or_else(|| Ok(default_lambdas()), |t| parse_rationals(t, "lambda"))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

fn load_family(path: &Path) -> Result<ReesFamily> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    FamilyDescriptor::from_json(&text)?.to_family()
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Parse(format!("stdout: {e}"))),
    }
}

fn write_margins(w: &mut dyn Write, sel: &WeightSelection) -> std::io::Result<()> {
    writeln!(w, "weights {}", sel.weights)?;
    for m in &sel.margins {
        writeln!(w, "  {m}")?;
    }
    if let Some((_, b)) = sel.binding() {
        if let (Some(t), Some(tw)) = (&b.heaviest_tail, b.tail_weight) {
            writeln!(
                w,
                "binding: {} w={} > {} w={}",
                b.border, b.border_weight, t, tw
            )?;
        }
    }
    Ok(())
}

fn derive(
    legs: &str,
    a_values: Option<&str>,
    weights: WeightStrategy,
    out: Option<&Path>,
    execution: Execution,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let spider: SpiderType = legs.parse()?;
    let opts = FamilyOptions {
        a_values: a_values
            .map(|a| parse_rationals(a, "a-value"))
            .transpose()?,
        weights,
        execution,
    };
    let family = build_family_with(&spider, &opts)?;
    let descriptor = FamilyDescriptor::from_family(&family, None)?;
    write_output(out, &descriptor.to_json(), stdout)?;

    let report: &mut dyn Write = if out.is_some() { stdout } else { stderr };
    let names = VarNames::standard(family.nvars());
    let ord = family.order();
    let _ = writeln!(
        report,
        "spider type {}: n = {}, {} relations",
        spider,
        spider.colength(),
        family.relations.len()
    );
    for rel in &family.relations {
        let _ = writeln!(
            report,
            "  [{}] {}",
            rel.kind,
            rel.polynomial.display_with(&names, &ord)
        );
    }
    let sel = WeightSelection {
        weights: family.weights.clone(),
        margins: family.margins.clone(),
    };
    let _ = write_margins(report, &sel);
    for (k, f) in family.family.iter().enumerate() {
        let _ = writeln!(report, "  f{} = {}", k + 1, f.display_with(&names, &ord));
    }
    Ok(0)
}

fn verify(path: &Path, lambdas: Option<&str>, exec: Execution, w: &mut dyn Write) -> Result<i32> {
    let family = load_family(path)?;
    let lambdas = parse_lambdas(lambdas)?;
    let n = family.spider.colength();
    let names = VarNames::standard(family.nvars());
    let ord = family.order();
    let fail = |w: &mut dyn Write, check: &str| {
        let _ = writeln!(w, "FAIL: {check}");
        Ok(1)
    };

    let _ = writeln!(
        w,
        "family of spider type {} with weights {}",
        family.spider, family.weights
    );
    for rel in &family.relations {
        if !verify_relation_with(&rel.polynomial, &family.spider, &family.a_values)? {
            let _ = writeln!(
                w,
                "relation {} does not vanish in QQ[t]/(t^{n})",
                rel.polynomial.display_with(&names, &ord)
            );
            return fail(w, "relations");
        }
    }
    let _ = writeln!(
        w,
        "relations: all {} vanish at e = 1",
        family.relations.len()
    );

    if !check_special_fiber(&family) {
        return fail(w, "special fiber is not the spider ideal");
    }
    let _ = writeln!(w, "special fiber: spider ideal");

    for report in fiber_dimensions(&family, &lambdas, exec) {
        let report = report?;
        let _ = writeln!(w, "  {report}");
        if report.dimension != n {
            return fail(w, &format!("fiber dimension at lambda = {}", report.lambda));
        }
    }
    for l in lambdas.iter().filter(|l| !num_traits::Zero::is_zero(*l)) {
        let report = check_curvilinear_fiber(&family, l)?;
        if report.is_curvilinear != Some(true) {
            return fail(w, &format!("curvilinear fiber at lambda = {l}"));
        }
    }
    let _ = writeln!(
        w,
        "curvilinear: lex shape confirmed at every nonzero lambda"
    );

    let cert = flatness_certificate_with(&family, exec);
    let _ = writeln!(
        w,
        "certificate: {} S-pairs, {} nonzero remainders, module rank {}",
        cert.spair_count, cert.nonzero_remainders, cert.module_rank
    );
    if !cert.passes(n) {
        return fail(w, "flatness certificate");
    }
    let _ = writeln!(w, "PASS");
    Ok(0)
}

fn emit(
    path: &Path,
    dialect: &str,
    lambdas: Option<&str>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let dialect: Dialect = dialect.parse()?;
    let family = load_family(path)?;
    let script = emit_script(&family, dialect, &parse_lambdas(lambdas)?);
    write_output(out, &script.body, stdout)?;
    Ok(0)
}

fn report_weights(legs: &str, weights: Option<&str>, w: &mut dyn Write) -> Result<i32> {
    let spider: SpiderType = legs.parse()?;
    let relations = derive_relations(&spider)?;
    let sel = match weights {
        Some(text) => crate::spider::check_weights(&relations, &parse_weights(text)?)?,
        None => select_weights(&relations, &spider)?,
    };
    let _ = writeln!(
        w,
        "spider type {spider}, basis of {} monomials",
        build_basis(&spider)?.monomials.len()
    );
    let _ = write_margins(w, &sel);
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["spiderfam"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn zero_leg_is_usage_error() {
        let (code, _, err) = run_str(&["derive", "--legs", "0,2"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
    }

    #[test]
    fn report_weights_warm_up() {
        let (code, out, _) = run_str(&["report-weights", "--legs", "1,1"]);
        assert_eq!(code, 0);
        assert!(out.contains("weights (2,3)"), "{out}");
    }

    #[test]
    fn rejects_bad_manual_weights() {
        let (code, _, err) =
            run_str(&["report-weights", "--legs", "7,7,7", "--weights", "14,15,16"]);
        assert_eq!(code, 1, "{err}");
    }
}
