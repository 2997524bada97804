use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use vizing_sos::certsearch::{
    check_structure_identities, find_certificate, full_sdp_pipeline, verify_bruteforce, verify_exact, BruteMode,
    BruteOptions, Certificate, SearchError, SearchOptions, Verdict,
};
use vizing_sos::exactmath::Rational;
use vizing_sos::polyalg::{buchberger, build_fviz, build_generators, closed_form_gb, GraphParams, Polynomial, TermOrder};
use vizing_sos::rhocalc::FVar;
use vizing_sos::sdpsolve::{feasibility, Feasibility, SdpSettings};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;
/// Largest degree with a tested search.
const TESTED_MAX_D: usize = 14;

#[derive(Parser)]
#[command(name = "vizcert", version, about = "Exact SOS certificates for Vizing's conjecture, domination number one")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form Gröbner basis of the Vizing ideal.
    Gb {
        #[arg(long)]
        ng: usize,
        #[arg(long)]
        nh: usize,
        /// Also run Buchberger and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the ideal generators and f_viz.
    Generators {
        #[arg(long)]
        ng: usize,
        #[arg(long)]
        nh: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search for a rational PSD Gram matrix of degree d.
    FindCert {
        #[arg(long)]
        d: usize,
        /// Fix an entry, e.g. F_1_1=6.
        #[arg(long = "fix", value_parser = parse_fix)]
        fixes: Vec<(FVar, Rational)>,
        /// Fraction cut from each end of an SDP interval.
        #[arg(long, value_parser = parse_margin)]
        margin: Option<Rational>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file exactly, optionally by brute force on splits.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["NG", "NH"])]
        brute: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a certificate on every variety point of one split.
    BruteCheck {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        ng: usize,
        #[arg(long)]
        nh: usize,
        /// Anchor vertex; every vertex when omitted.
        #[arg(long, num_args = 2, value_names = ["G", "H"])]
        anchor: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Degree-ell SOS feasibility SDP for f_viz.
    SdpPipeline {
        #[arg(long)]
        ng: usize,
        #[arg(long)]
        nh: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        json: bool,
    },
    /// Forced entries for even d and the odd-d F_1_1 check.
    StructureCheck {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Full,
    Projection,
}

fn parse_fix(s: &str) -> Result<(FVar, Rational), String> {
    let (var, val) = s.split_once('=').ok_or_else(|| format!("expected F_i_j=p/q, got {s:?}"))?;
    let var: FVar = var.trim().parse().map_err(|e| format!("{e}"))?;
    let val: Rational = val.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((var, val))
}

fn parse_margin(s: &str) -> Result<Rational, String> {
    let m: Rational = s.parse().map_err(|e| format!("{e}"))?;
    if m.is_negative() || m >= Rational::new(1, 2) {
        return Err("margin must lie in [0, 1/2)".into());
    }
    Ok(m)
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::NoSolutionFound(_) => EXIT_NO_SOLUTION,
            SearchError::UnsupportedD(_)
            | SearchError::InvalidInput(_)
            | SearchError::CapExceeded(_)
            | SearchError::Poly(_)
            | SearchError::Rho(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn params(ng: usize, nh: usize) -> Result<GraphParams, Failure> {
    GraphParams::new(ng, nh).map_err(|e| Failure::usage(e.to_string()))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn gb(ng: usize, nh: usize, oracle: bool, as_json: bool) -> Outcome {
    let p = params(ng, nh)?;
    let basis = closed_form_gb(&p).map_err(|e| Failure::usage(e.to_string()))?;
    let order = TermOrder::default();
    let verdict = oracle.then(|| {
        let monic = |b: &[Polynomial]| b.iter().map(|q| q.monic(&order)).collect::<BTreeSet<_>>();
        monic(&buchberger(&build_generators(&p), &order)) == monic(&basis)
    });
    let word = |same: bool| if same { "IDENTICAL" } else { "DIFFERENT" };
    if as_json {
        let mut out = json!({ "n_g": ng, "n_h": nh, "basis": basis });
        if let Some(same) = verdict {
            out["oracle"] = json!(word(same));
        }
        print_json(&out);
    } else {
        println!("closed-form basis for ({ng},{nh}): {} elements", basis.len());
        for (k, b) in basis.iter().enumerate() {
            println!("{:4}  {b}", k + 1);
        }
        if let Some(same) = verdict {
            println!("Buchberger: {}", word(same));
        }
    }
    Ok(if verdict == Some(false) { EXIT_FAIL } else { 0 })
}

fn generators(ng: usize, nh: usize, as_json: bool) -> Outcome {
    let p = params(ng, nh)?;
    let gens = build_generators(&p);
    let f = build_fviz(&p);
    if as_json {
        print_json(&json!({ "n_g": ng, "n_h": nh, "generators": gens, "f_viz": f }));
    } else {
        for g in &gens {
            println!("{g}");
        }
        println!("f_viz = {f}");
    }
    Ok(0)
}

fn find_cert(d: usize, fixes: Vec<(FVar, Rational)>, margin: Option<Rational>, as_json: bool, out: Option<PathBuf>) -> Outcome {
    if d > TESTED_MAX_D {
        eprintln!("warning: d > {TESTED_MAX_D} is experimental; the SDP bounds may be unreliable");
    }
    let mut opts = SearchOptions::default();
    if let Some(m) = margin {
        opts.margin = m;
    }
    for (var, val) in fixes {
        opts = opts.fix(var, val);
    }
    let c = find_certificate(d, &opts)?;
    let text = c.to_json();
    if let Some(path) = &out {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    if as_json {
        println!("{text}");
    } else {
        println!("d = {}, m = {}", c.d, c.m);
        println!("F =");
        for i in 0..c.m {
            let row: Vec<String> = (0..c.m).map(|j| format!("{:>12}", c.f[(i, j)].to_string())).collect();
            println!("  {}", row.join(" "));
        }
        for p in &c.provenance {
            let range = p.interval.map_or(String::new(), |[a, b]| format!(" from [{a:.6}, {b:.6}]"));
            println!("{} = {} ({:?}{range})", p.var, p.value, p.source);
        }
        if let Some(rows) = &c.rows {
            for r in rows {
                let cs: Vec<String> = r.coeffs.iter().map(Rational::to_string).collect();
                println!("  {} · ({})²", r.radicand, cs.join(", "));
            }
        }
        let v = verify_exact(&c);
        println!("exact checks: {}/{} passed", v.checks.iter().filter(|c| c.passed).count(), v.checks.len());
        if let Some(path) = &out {
            println!("written to {}", path.display());
        }
    }
    Ok(0)
}

fn load(file: &PathBuf) -> Result<Result<Certificate, String>, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    Ok(Certificate::from_json(&text).map_err(|e| e.to_string()))
}

fn report(v: &Verdict, as_json: bool) -> u8 {
    if as_json {
        print_json(&json!({ "passed": v.all_passed(), "checks": v.checks }));
    } else {
        print!("{v}");
    }
    if v.all_passed() {
        0
    } else {
        for c in v.failures() {
            eprintln!("failed: {}", c.name);
        }
        EXIT_FAIL
    }
}

fn verify(file: PathBuf, brute: Vec<usize>, as_json: bool) -> Outcome {
    let c = match load(&file)? {
        Ok(c) => c,
        Err(e) => {
            let mut v = Verdict::default();
            v.push("parse", false, e);
            return Ok(report(&v, as_json));
        }
    };
    let mut v = verify_exact(&c);
    for split in brute.chunks(2) {
        v.extend(verify_bruteforce(&c, split[0], split[1], &BruteOptions::default())?);
    }
    Ok(report(&v, as_json))
}

fn brute_check(file: PathBuf, ng: usize, nh: usize, anchor: Vec<usize>, mode: Mode, as_json: bool) -> Outcome {
    let c = match load(&file)? {
        Ok(c) => c,
        Err(e) => {
            let mut v = Verdict::default();
            v.push("parse", false, e);
            return Ok(report(&v, as_json));
        }
    };
    let opts = BruteOptions {
        anchors: (!anchor.is_empty()).then(|| anchor.chunks(2).map(|a| (a[0], a[1])).collect()),
        mode: match mode {
            Mode::Auto => BruteMode::Auto,
            Mode::Full => BruteMode::Full,
            Mode::Projection => BruteMode::Projection,
        },
        ..BruteOptions::default()
    };
    let v = verify_bruteforce(&c, ng, nh, &opts)?;
    Ok(report(&v, as_json))
}

fn sdp_pipeline(ng: usize, nh: usize, ell: usize, as_json: bool) -> Outcome {
    let p = full_sdp_pipeline(ng, nh, ell)?;
    let outcome = feasibility(&p, &SdpSettings::default()).map_err(|e| Failure { code: EXIT_FAIL, msg: e.to_string() })?;
    let (word, measure) = match outcome {
        Feasibility::Feasible { measure, .. } => ("feasible", measure),
        Feasibility::LikelyInfeasible { measure } => ("likely_infeasible", measure),
    };
    if as_json {
        print_json(&json!({
            "n_g": ng, "n_h": nh, "ell": ell,
            "size": p.n, "constraints": p.constraints.len(),
            "outcome": word, "measure": measure, "evidence": "numerical",
        }));
    } else {
        println!("({ng},{nh}) ell = {ell}: {}x{} Gram matrix, {} constraints", p.n, p.n, p.constraints.len());
        println!("{} (numerical evidence, violation {measure:.3e})", word.replace('_', " "));
    }
    Ok(0)
}

fn structure_check(from: usize, to: usize, as_json: bool) -> Outcome {
    if from > to {
        return Err(Failure::usage("--from must not exceed --to"));
    }
    let r = check_structure_identities(from..=to, &SdpSettings::default())?;
    let ok = r.exact.all_passed() && r.numerical.all_passed();
    if as_json {
        print_json(&json!({ "passed": ok, "exact": r.exact.checks, "numerical_evidence": r.numerical.checks }));
    } else {
        println!("exact:");
        print!("{}", r.exact);
        if !r.numerical.checks.is_empty() {
            println!("numerical evidence:");
            print!("{}", r.numerical);
        }
    }
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Gb { ng, nh, oracle, json } => gb(ng, nh, oracle, json),
        Command::Generators { ng, nh, json } => generators(ng, nh, json),
        Command::FindCert { d, fixes, margin, json, out } => find_cert(d, fixes, margin, json, out),
        Command::Verify { file, brute, json } => verify(file, brute, json),
        Command::BruteCheck { file, ng, nh, anchor, mode, json } => brute_check(file, ng, nh, anchor, mode, json),
        Command::SdpPipeline { ng, nh, ell, json } => sdp_pipeline(ng, nh, ell, json),
        Command::StructureCheck { from, to, json } => structure_check(from, to, json),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
