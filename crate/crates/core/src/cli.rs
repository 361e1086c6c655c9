//! The `cdc` command line: design, simulate, compare, check-appendix.
//!
//! Exit codes: 0 success, 2 verification failure, 3 unsupported parameters,
//! 64 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{appendix_step_checks, lemma31_check, li_sandwich, sweep, SweepFamily};
use crate::designs::{
    classify_ads, complement_ads, develop, projective_plane, ruzsa_ads, AlmostDifferenceSet,
    Classification, SymmetricDesign,
};
use crate::error::{Error, Result};
use crate::scheme::{build_scheme_ads, build_scheme_sd, Scheme};
use crate::simulation::simulate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "cdc", version, about = "Cascaded coded distributed computing from combinatorial designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, classify or verify a design and write it as JSON.
    Design(DesignArgs),
    /// Run map, shuffle, decode and reduce on a scheme and check its load.
    Simulate(SimulateArgs),
    /// Sweep a family and print exact loads as CSV.
    Compare(CompareArgs),
    /// Check the appendix inequalities for a range of p.
    CheckAppendix(AppendixArgs),
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Projective plane of prime order B.
    #[arg(long, value_name = "B", group = "source")]
    plane: Option<u64>,
    /// Ruzsa almost difference set for prime P.
    #[arg(long, value_name = "P", group = "source")]
    ruzsa: Option<u64>,
    /// Subset of Z_n, comma separated (needs --n).
    #[arg(long, value_name = "D", value_delimiter = ',', group = "source", requires = "n")]
    ads: Option<Vec<usize>>,
    /// Design JSON file.
    #[arg(long, value_name = "FILE", group = "source")]
    design: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DesignArgs {
    /// Projective plane of prime order B.
    #[arg(long, value_name = "B", conflicts_with_all = ["ruzsa", "ads", "verify"])]
    plane: Option<u64>,
    /// Ruzsa almost difference set for prime P.
    #[arg(long, value_name = "P", conflicts_with_all = ["ads", "verify"])]
    ruzsa: Option<u64>,
    /// Subset of Z_n to classify, comma separated.
    #[arg(long, value_name = "D", value_delimiter = ',', requires = "n", conflicts_with = "verify")]
    ads: Option<Vec<usize>>,
    /// Group order for --ads.
    #[arg(long, requires = "ads")]
    n: Option<usize>,
    /// Verify a design file.
    #[arg(long, value_name = "FILE")]
    verify: Option<PathBuf>,
    /// Replace an almost difference set by its complement.
    #[arg(long)]
    complement: bool,
    /// Write the design JSON here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeChoice {
    Sd,
    Ads,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    scheme: SchemeChoice,
    #[command(flatten)]
    source: Source,
    /// Group order for --ads.
    #[arg(long)]
    n: Option<usize>,
    /// Use the complement of the almost difference set.
    #[arg(long)]
    complement: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplier on the smallest admissible IV length.
    #[arg(long, default_value_t = 1, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    scale: usize,
    /// Write the transcript as JSON lines.
    #[arg(long, value_name = "FILE")]
    transcript: Option<PathBuf>,
    /// Write placement and assignment as JSON.
    #[arg(long, value_name = "FILE")]
    dump_scheme: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyChoice {
    Plane,
    Ruzsa,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, value_enum)]
    family: FamilyChoice,
    #[arg(long)]
    min: u64,
    #[arg(long)]
    max: u64,
    /// Add 12-significant-digit decimal columns.
    #[arg(long)]
    decimal: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    jobs: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AppendixArgs {
    #[arg(long, default_value_t = 5)]
    min_p: u64,
    #[arg(long, default_value_t = 31)]
    max_p: u64,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => EXIT_VERIFY,
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::Domain(_) | Error::Parse(_) | Error::Io(_) | Error::Contract(_) => EXIT_USAGE,
        _ => 1,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Design(a) => cmd_design(a, out, err),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Compare(a) => cmd_compare(a, out, err),
        Command::CheckAppendix(a) => cmd_check_appendix(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "cdc: {e}");
            exit_code(&e)
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn classify(set: &[usize], n: usize) -> Result<AlmostDifferenceSet> {
    match classify_ads(set, n)? {
        Classification::Ads(a) => Ok(a),
        Classification::NotAds(hist) => {
            let hist: Vec<String> = hist.iter().map(|(v, c)| format!("{v}:{c}")).collect();
            Err(Error::Verification(format!(
                "not an almost difference set; difference histogram {{{}}}",
                hist.join(", ")
            )))
        }
    }
}

enum Loaded {
    Sd(SymmetricDesign),
    Ads(AlmostDifferenceSet),
}

fn load_design_file(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("blocks").is_some() {
        Ok(Loaded::Sd(SymmetricDesign::from_json(&text)?))
    } else if value.get("D").is_some() {
        Ok(Loaded::Ads(AlmostDifferenceSet::from_json(&text)?))
    } else {
        Err(Error::Parse(format!(
            "{}: expected a design with \"blocks\" or \"D\"",
            path.display()
        )))
    }
}

fn cmd_design(a: DesignArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let loaded = if let Some(b) = a.plane {
        Loaded::Sd(projective_plane(b)?)
    } else if let Some(p) = a.ruzsa {
        Loaded::Ads(ruzsa_ads(p)?)
    } else if let (Some(set), Some(n)) = (&a.ads, a.n) {
        Loaded::Ads(classify(set, n)?)
    } else if let Some(path) = &a.verify {
        load_design_file(path)?
    } else {
        return Err(Error::Domain("one of --plane, --ruzsa, --ads or --verify is required".into()));
    };
    let (summary, json) = match loaded {
        Loaded::Sd(d) => {
            if a.complement {
                return Err(Error::Domain("--complement applies to almost difference sets".into()));
            }
            (format!("symmetric design {}", d.params()), d.to_json())
        }
        Loaded::Ads(mut ads) => {
            if a.complement {
                ads = complement_ads(&ads)?;
            }
            (format!("almost difference set {ads}"), ads.to_json())
        }
    };
    if a.verify.is_some() {
        writeln!(out, "valid {summary}")?;
        return Ok(EXIT_OK);
    }
    match &a.output {
        Some(path) => {
            std::fs::write(path, &json)?;
            writeln!(out, "{summary}")?;
        }
        None => {
            writeln!(err, "{summary}")?;
            out.write_all(json.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn simulate_scheme(a: &SimulateArgs) -> Result<Scheme> {
    let src = &a.source;
    match a.scheme {
        SchemeChoice::Sd => {
            let design = if let Some(b) = src.plane {
                projective_plane(b)?
            } else if let Some(path) = &src.design {
                match load_design_file(path)? {
                    Loaded::Sd(d) => d,
                    Loaded::Ads(_) => {
                        return Err(Error::Domain("--scheme sd needs a symmetric design file".into()))
                    }
                }
            } else {
                return Err(Error::Domain("--scheme sd takes --plane or --design".into()));
            };
            build_scheme_sd(&design)
        }
        SchemeChoice::Ads => {
            let mut ads = if let Some(p) = src.ruzsa {
                ruzsa_ads(p)?
            } else if let Some(set) = &src.ads {
                let n = a.n.ok_or_else(|| Error::Domain("--ads needs --n".into()))?;
                classify(set, n)?
            } else if let Some(path) = &src.design {
                match load_design_file(path)? {
                    Loaded::Ads(x) => x,
                    Loaded::Sd(_) => {
                        return Err(Error::Domain("--scheme ads needs an almost difference set file".into()))
                    }
                }
            } else {
                return Err(Error::Domain("--scheme ads takes --ruzsa, --ads or --design".into()));
            };
            if a.complement {
                ads = complement_ads(&ads)?;
            }
            build_scheme_ads(&develop(&ads)?)
        }
    }
}

fn cmd_simulate(a: SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let scheme = simulate_scheme(&a)?;
    if let Some(path) = &a.dump_scheme {
        std::fs::write(path, scheme.to_json())?;
    }
    let sim = simulate(&scheme, a.seed, a.scale)?;
    if let Some(path) = &a.transcript {
        std::fs::write(path, sim.transcript.to_jsonl())?;
    }
    out.write_all(sim.report.to_json().as_bytes())?;
    for (node, why) in &sim.failures {
        writeln!(err, "node {node}: {why}")?;
    }
    if !sim.report.matches {
        writeln!(
            err,
            "measured load {} differs from {}",
            sim.report.l_measured, sim.report.l_formula
        )?;
    }
    Ok(if sim.report.ok() { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let family = match a.family {
        FamilyChoice::Plane => SweepFamily::Plane,
        FamilyChoice::Ruzsa => SweepFamily::Ruzsa,
    };
    let csv = sweep(family, a.min, a.max, a.decimal, a.jobs)?;
    if csv.lines().count() == 1 {
        writeln!(err, "warning: no admissible parameters in [{}, {}]", a.min, a.max)?;
    }
    write_or_print(a.output.as_deref(), &csv, out)?;
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_check_appendix(a: AppendixArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut min = a.min_p;
    if min < 5 {
        writeln!(err, "warning: --min-p {min} is below 5; clamping to 5")?;
        min = 5;
    }
    let mut all = true;
    writeln!(out, "p,lemma31,for32,for33,ratios,last_ratio,sandwich,L_li,lhs,rhs")?;
    for p in min..=a.max_p {
        let lemma = lemma31_check(p)?;
        let steps = appendix_step_checks(p)?;
        let sandwich = li_sandwich(p)?;
        all &= lemma.holds && steps.holds() && sandwich.holds;
        writeln!(
            out,
            "{p},{},{},{},{},{},{},{},{},{}",
            verdict(lemma.holds),
            verdict(steps.for32),
            verdict(steps.for33),
            verdict(steps.ratios_increasing && steps.last_ratio_below_half),
            steps.last_ratio,
            verdict(sandwich.holds),
            sandwich.li,
            lemma.lhs,
            lemma.rhs
        )?;
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cdc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn design_plane() {
        let (code, out, _) = call(&["design", "--plane", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with(r#"{"v":7,"blocks":[[0,1,2],"#), "{out}");
    }

    #[test]
    fn design_ads_reports_parameters() {
        let (code, _, err) = call(&["design", "--ads", "0,1,3", "--n", "6"]);
        assert_eq!(code, 0);
        assert!(err.contains("(6,3,1,4)"));
        let (code, _, err) = call(&["design", "--ads", "0,1,2", "--n", "8"]);
        assert_eq!(code, 2);
        assert!(err.contains("histogram"));
    }

    #[test]
    fn unsupported_and_usage() {
        assert_eq!(call(&["design", "--plane", "4"]).0, 3);
        assert_eq!(call(&["design"]).0, 64);
        assert_eq!(call(&["bogus"]).0, 64);
        assert_eq!(call(&["simulate", "--scheme", "ads", "--ads", "0,1,3", "--n", "7"]).0, 3);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn simulate_fano() {
        let (code, out, _) = call(&["simulate", "--scheme", "sd", "--plane", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""L_measured": "11/21""#), "{out}");
        assert!(out.contains(r#""match": true"#));
    }

    #[test]
    fn appendix_clamps() {
        let (code, out, err) = call(&["check-appendix", "--min-p", "3", "--max-p", "5"]);
        assert_eq!(code, 0);
        assert!(err.contains("clamping"));
        assert_eq!(out.lines().count(), 2);
        assert!(out.lines().nth(1).unwrap().starts_with("5,pass,pass,pass,pass,1/32,pass,"));
    }
}
