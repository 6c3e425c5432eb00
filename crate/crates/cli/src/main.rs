//! `addrep` — compute representation-function profiles, verify the
//! identities and inequalities they satisfy, build the Sidon-complement
//! construction, and run the report harness.
//!
//! Exit codes: 0 when every check passes or is informational, 1 when any
//! check fails, 2 for usage and configuration errors.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use addrep_core::analytic::{dyadic_sum, identity28_check, ineq33_check};
use addrep_core::construct::{
    build_instance, double_sequence, greedy_sidon_up_to, monotonicity_violations, powers_of_two,
};
use addrep_core::harness::{
    self, lemma5_report, lemma6_theorem2_report, CheckKind, ExperimentConfig, Family, Status,
    TVariant, VerificationReport,
};
use addrep_core::repfuncs::{rep_profiles, write_profile_csv};
use addrep_core::seq::{read_sequence, write_sequence_text, IntegerSequence};
use addrep_core::sums::{s_profile, write_sums_csv};
use addrep_core::Error;

#[derive(Parser)]
#[command(
    name = "addrep",
    version,
    about = "Additive representation function toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the R1/R2/R3 profile of a sequence and export it as CSV.
    Compute {
        /// Sequence file (text with a bound= header, or JSON)
        #[arg(long)]
        seq: PathBuf,
        /// Largest index of the profile
        #[arg(long)]
        n: u64,
        /// Output CSV path (`n,R1,R2,R3`)
        #[arg(long)]
        out: PathBuf,
        /// Also export the defect sums as CSV (`k,S,S_plus`)
        #[arg(long)]
        sums: Option<PathBuf>,
    },
    /// Verify an identity, inequality or lemma on a sequence or grid.
    Verify {
        /// One of: identity28, ineq33, lemma1, lemma5, lemma6, theorem2
        subject: String,
        /// Sequence file (not needed for lemma1)
        #[arg(long)]
        seq: Option<PathBuf>,
        /// Truncation degree for identity28
        #[arg(long)]
        degree: Option<u64>,
        /// Grid specification: `start:end:step` or comma-separated values
        #[arg(long)]
        grid: Option<String>,
        /// Certified tolerance where applicable
        #[arg(long)]
        tol: Option<f64>,
        /// Write the reports as a JSON array
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the sweep as CSV (`x,sum,bound` for lemma1, `Y,value,err`
        /// for the scale-parameter subjects)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build construction instances.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Run report checks on a builtin family or a sequence file.
    Harness {
        /// One of: hypothesis, theorem1, corollaries, lemma5, lemma6-theorem2, all
        subject: String,
        /// Family: full, complement-of-powers, complement-of-greedy-sidon, file
        #[arg(long)]
        family: String,
        /// Sequence file when the family is `file`
        #[arg(long)]
        seq: Option<PathBuf>,
        /// Scale parameter N
        #[arg(long)]
        n: u64,
        /// Constant c1 for the theorem-1 bound
        #[arg(long)]
        c1: Option<f64>,
        /// Also report minimal constants over a doubling grid
        #[arg(long)]
        calibrate: bool,
        /// Epsilon for the corollary bound
        #[arg(long)]
        eps: Option<f64>,
        /// T statistic index range: v2 (n <= m(N)) or v1 (n <= N)
        #[arg(long)]
        t_variant: Option<String>,
        /// Write the report bundle as JSON
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the report table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// The Sidon-complement instance: B, A = N∖B, Y = (B+B)∪B, X = N∖Y.
    Sarkozy {
        /// Base family: pow2 or greedy
        #[arg(long, default_value = "pow2")]
        b: String,
        /// Largest element allowed in B
        #[arg(long)]
        cap: u64,
        /// Materialization bound for the instance
        #[arg(long)]
        nmax: u64,
        /// Output directory for the four sequence files and the summary
        #[arg(long)]
        outdir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether any check failed.
fn run(cmd: Cmd) -> Result<bool, Error> {
    match cmd {
        Cmd::Compute { seq, n, out, sums } => {
            let a = load_seq(&seq)?;
            let p = rep_profiles(&a, n)?;
            write_profile_csv(&p, BufWriter::new(File::create(&out)?))?;
            println!("wrote profile 0..={n} to {}", out.display());
            if let Some(path) = sums {
                let s = s_profile(&p, (n.saturating_sub(1)) / 2)?;
                write_sums_csv(&s, BufWriter::new(File::create(&path)?))?;
                println!("wrote defect sums to {}", path.display());
            }
            Ok(false)
        }
        Cmd::Verify {
            subject,
            seq,
            degree,
            grid,
            tol,
            json,
            csv,
        } => {
            let reports = verify(&subject, seq.as_deref(), degree, grid.as_deref(), tol)?;
            for r in &reports {
                print_report(r);
            }
            if let Some(path) = json {
                let mut out = serde_json::to_string_pretty(&reports).expect("reports serialize");
                out.push('\n');
                std::fs::write(&path, out)?;
            }
            if let Some(path) = csv {
                write_sweep_csv(&subject, &reports, &path)?;
            }
            Ok(reports.iter().any(|r| r.status == Status::Fail))
        }
        Cmd::Construct(ConstructCmd::Sarkozy {
            b,
            cap,
            nmax,
            outdir,
        }) => construct_sarkozy(&b, cap, nmax, &outdir),
        Cmd::Harness {
            subject,
            family,
            seq,
            n,
            c1,
            calibrate,
            eps,
            t_variant,
            json,
            csv,
        } => {
            let family = Family::parse(&family, seq)?;
            let checks = if subject == "all" {
                CheckKind::all()
            } else {
                vec![CheckKind::parse(&subject)?]
            };
            let mut config = ExperimentConfig::new(family, n, checks);
            if let Some(c1) = c1 {
                config.c1 = c1;
            }
            if let Some(eps) = eps {
                config.eps = eps;
            }
            config.calibrate = calibrate;
            config.t_variant = match t_variant.as_deref() {
                None | Some("v2") => TVariant::V2,
                Some("v1") => TVariant::V1,
                Some(other) => return Err(Error::Config(format!("unknown T variant {other:?}"))),
            };
            let bundle = harness::run_experiment(&config)?;
            for r in &bundle.reports {
                print_report(r);
            }
            if let Some(path) = json {
                std::fs::write(&path, bundle.to_json_string())?;
            }
            if let Some(path) = csv {
                bundle.write_csv(BufWriter::new(File::create(&path)?))?;
            }
            Ok(bundle.any_fail())
        }
    }
}

fn load_seq(path: &Path) -> Result<IntegerSequence, Error> {
    read_sequence(BufReader::new(File::open(path)?))
}

fn require_seq(seq: Option<&Path>) -> Result<IntegerSequence, Error> {
    let path = seq.ok_or_else(|| Error::Config("this subject needs --seq <file>".into()))?;
    load_seq(path)
}

fn print_report(r: &VerificationReport) {
    let scale = r
        .scale()
        .map_or_else(String::new, |s| format!(" scale={s}"));
    println!(
        "{}[{}]{} {}: lhs={} rhs={} slack={} err={}",
        r.check_id,
        r.variant,
        scale,
        r.status.as_str(),
        r.lhs,
        r.rhs,
        r.slack,
        r.err
    );
}

fn report(
    check_id: &str,
    variant: &str,
    params: BTreeMap<String, serde_json::Value>,
    lhs: f64,
    rhs: f64,
    err: f64,
    status: Status,
) -> VerificationReport {
    VerificationReport {
        check_id: check_id.into(),
        variant: variant.into(),
        params,
        lhs,
        rhs,
        slack: lhs - rhs,
        err,
        status,
    }
}

fn verify(
    subject: &str,
    seq: Option<&Path>,
    degree: Option<u64>,
    grid: Option<&str>,
    tol: Option<f64>,
) -> Result<Vec<VerificationReport>, Error> {
    match subject {
        "identity28" => {
            let a = require_seq(seq)?;
            let degree = degree.unwrap_or(4096);
            let residual = identity28_check(&a, degree)?;
            let status = if residual == 0 { Status::Pass } else { Status::Fail };
            let mut params = BTreeMap::new();
            params.insert("degree".into(), degree.into());
            Ok(vec![report(
                "identity28",
                "coefficientwise",
                params,
                residual as f64,
                0.0,
                0.0,
                status,
            )])
        }
        "ineq33" => {
            let a = require_seq(seq)?;
            let tol = tol.unwrap_or(1e-9);
            let ys = parse_grid(grid.unwrap_or("20:200:20"))?;
            let mut reports = Vec::new();
            for y in ys {
                let v = ineq33_check(&a, y, tol)?;
                let status = if v.value >= -v.err { Status::Pass } else { Status::Fail };
                let mut params = BTreeMap::new();
                params.insert("y".into(), y.into());
                params.insert("cutoff".into(), v.params.cutoff.into());
                reports.push(report("ineq33", "psi-doubling-slack", params, v.value, 0.0, v.err, status));
            }
            Ok(reports)
        }
        "lemma1" => {
            let tol = tol.unwrap_or(1e-12);
            let xs = parse_grid(grid.unwrap_or("0.01:0.99:0.01"))?;
            let mut reports = Vec::new();
            for x in xs {
                let sum = dyadic_sum(x, tol)?;
                for (variant, bound) in [
                    ("two-x", 2.0 * x / (1.0 - x)),
                    ("sharp-x-one-plus-x", x * (1.0 + x) / (1.0 - x)),
                ] {
                    let status = if bound - sum >= -tol { Status::Pass } else { Status::Fail };
                    let mut params = BTreeMap::new();
                    params.insert("x".into(), x.into());
                    reports.push(report("lemma1", variant, params, bound, sum, tol, status));
                }
            }
            Ok(reports)
        }
        "lemma5" => {
            let a = require_seq(seq)?;
            let ns = parse_grid_u64(grid.unwrap_or("40,100,400,2000,10000"))?;
            lemma5_report(&a, &ns)
        }
        "lemma6" | "theorem2" => {
            let a = require_seq(seq)?;
            let ys = parse_grid(grid.unwrap_or("64,128,256,512,1024,2048,4096"))?;
            let reports = lemma6_theorem2_report(&a, &ys)?;
            let keep: &[&str] = if subject == "lemma6" {
                &["lemma6"]
            } else {
                &["theorem2", "theorem2.calibrate-c"]
            };
            Ok(reports
                .into_iter()
                .filter(|r| keep.contains(&r.check_id.as_str()))
                .collect())
        }
        other => Err(Error::Config(format!(
            "unknown verify subject {other:?}; expected identity28, ineq33, lemma1, lemma5, lemma6 or theorem2"
        ))),
    }
}

fn construct_sarkozy(b_kind: &str, cap: u64, nmax: u64, outdir: &Path) -> Result<bool, Error> {
    let b = match b_kind {
        "pow2" => powers_of_two(cap)?,
        "greedy" => double_sequence(&greedy_sidon_up_to(cap / 2)),
        other => {
            return Err(Error::Config(format!(
                "unknown base family {other:?}; expected pow2 or greedy"
            )))
        }
    };
    if b.bound() < nmax {
        return Err(Error::Config(format!(
            "cap {cap} materializes B only to {}, below nmax {nmax}",
            b.bound()
        )));
    }
    let inst = build_instance(&b, nmax)?;
    let violations = monotonicity_violations(&inst, nmax - 1)?;
    let density = inst.x.density_in(nmax)?;

    std::fs::create_dir_all(outdir)?;
    for (name, s) in [
        ("b.txt", &inst.b),
        ("a.txt", &inst.a),
        ("y.txt", &inst.y),
        ("x.txt", &inst.x),
    ] {
        write_sequence_text(s, BufWriter::new(File::create(outdir.join(name))?))?;
    }
    let summary = serde_json::json!({
        "n_max": nmax,
        "b_family": b_kind,
        "sizes": {
            "b": inst.b.elements().iter().filter(|&&e| e <= nmax).count(),
            "a": inst.a.len(),
            "y": inst.y.len(),
            "x": inst.x.len(),
        },
        "density_x": density,
        "violations": violations,
    });
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    std::fs::write(outdir.join("summary.json"), text)?;
    println!(
        "instance written to {}; |X ∩ [1,{nmax}]|/{nmax} = {}, {} violations",
        outdir.display(),
        density.ratio,
        violations.len()
    );
    Ok(!violations.is_empty())
}

/// Sweep export: `x,sum,bound` for the dyadic lemma, `Y,value,err` for the
/// scale-parameter subjects.
fn write_sweep_csv(
    subject: &str,
    reports: &[VerificationReport],
    path: &Path,
) -> Result<(), Error> {
    let mut w = BufWriter::new(File::create(path)?);
    use std::io::Write;
    if subject == "lemma1" {
        writeln!(w, "x,sum,bound")?;
        for r in reports.iter().filter(|r| r.variant == "two-x") {
            let x = r.params["x"].as_f64().unwrap_or(f64::NAN);
            writeln!(w, "{x},{},{}", r.rhs, r.lhs)?;
        }
    } else {
        writeln!(w, "Y,value,err")?;
        for r in reports {
            if let Some(scale) = r.scale() {
                writeln!(w, "{scale},{},{}", r.lhs, r.err)?;
            }
        }
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let bad = |msg: String| Error::Config(msg);
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("grid {spec:?} must be start:end:step")));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.parse()
                    .map_err(|_| bad(format!("invalid grid number {p:?}")))
            })
            .collect::<Result<_, _>>()?;
        let (start, end, step) = (nums[0], nums[1], nums[2]);
        if step <= 0.0 || end < start {
            return Err(bad(format!("grid {spec:?} must ascend with positive step")));
        }
        let mut out = Vec::new();
        let mut i = 0u64;
        loop {
            let v = start + step * i as f64;
            if v > end + step * 1e-9 {
                break;
            }
            out.push(v);
            i += 1;
        }
        Ok(out)
    } else {
        spec.split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| bad(format!("invalid grid number {p:?}")))
            })
            .collect()
    }
}

fn parse_grid_u64(spec: &str) -> Result<Vec<u64>, Error> {
    parse_grid(spec)?
        .into_iter()
        .map(|v| {
            if v.fract() == 0.0 && v >= 0.0 {
                Ok(v as u64)
            } else {
                Err(Error::Config(format!(
                    "grid value {v} must be a non-negative integer"
                )))
            }
        })
        .collect()
}
