use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curveclass::gmodule::{
    coinvariant_criterion, random_modules, CoinvariantCriterionReport, GModule, GModuleSpec,
};
use curveclass::io::point_line;
use curveclass::zeta::pic_p_nontrivial;
use curveclass::{
    classify, jacobian_group, l_polynomial, parse_curve, Budget, ClassificationReport, Curve,
    Error, MarkedInstance,
};
use serde_json::{json, Value};

/// Exit status for command-line usage errors; 2 is reserved for unsupported cases.
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "curveclass",
    version,
    about = "K(pi,1) classification of marked curves over finite fields"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration caps, same syntax as CURVECLASS_BUDGET (applied after it).
    #[arg(long, global = true, value_name = "SPEC")]
    budget: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a curve description and summarize it.
    Validate { curve: PathBuf },
    /// List closed points up to a degree, with their stable ids.
    Points {
        curve: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
    },
    /// L-polynomial, class number and point counts.
    Zeta {
        curve: PathBuf,
        /// Also report whether p divides the class number.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Decide the K(pi,1)-property of (X - S, T) for p.
    Classify(ClassifyArgs),
    /// Tabulate the Jacobian with the group law and compare its order with L(1).
    Oracle { curve: PathBuf },
    /// Compare the two sides of the coinvariant criterion on integral representations.
    Gmodule(GmoduleArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    curve: PathBuf,
    #[arg(long)]
    p: u64,
    /// Closed-point ids where ramification is allowed.
    #[arg(long = "S", num_args = 0.., value_name = "ID")]
    s: Vec<String>,
    /// Closed-point ids that must split completely.
    #[arg(long = "T", num_args = 0.., value_name = "ID")]
    t: Vec<String>,
}

#[derive(Args)]
struct GmoduleArgs {
    /// Module description file.
    #[arg(conflicts_with = "random", required_unless_present = "random")]
    spec: Option<PathBuf>,
    /// Number of seeded random modules to generate instead.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    p: u64,
}

enum Failure {
    Usage(String),
    Run(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedCase(_) | Error::OracleUnsupportedModel(_) => 2,
        e if e.is_budget() => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<Curve, Failure> {
    Ok(parse_curve(&read(path)?)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn plural_at_infinity(n: usize) -> String {
    format!("{n} point{} at infinity", if n == 1 { "" } else { "s" })
}

fn validate(path: &Path, json: bool) -> Result<String, Failure> {
    let curve = load_curve(path)?;
    let ids: Vec<&str> = curve
        .points_at_infinity()
        .iter()
        .map(|p| p.id.as_str())
        .collect();
    if json {
        return Ok(pretty(&json!({
            "kind": curve.model().kind(),
            "q": curve.q(),
            "genus": curve.genus(),
            "points_at_infinity": ids,
            "equation": curve.to_string(),
        })));
    }
    Ok(format!(
        "{}: {}\ngenus {}, q={}, {} ({})",
        curve.model().kind(),
        curve,
        curve.genus(),
        curve.q(),
        plural_at_infinity(ids.len()),
        ids.join(", ")
    ))
}

fn points(path: &Path, max_degree: u32, budget: &Budget, json: bool) -> Result<String, Failure> {
    let curve = load_curve(path)?;
    let pts = curve.closed_points(max_degree, budget)?;
    let lines: Vec<String> = pts.iter().map(|pt| point_line(curve.field(), pt)).collect();
    if json {
        let items: Vec<Value> = pts
            .iter()
            .zip(&lines)
            .map(|(pt, line)| json!({"id": pt.id, "degree": pt.degree, "line": line}))
            .collect();
        return Ok(pretty(&Value::Array(items)));
    }
    Ok(lines.join("\n"))
}

fn zeta(path: &Path, p: Option<u64>, budget: &Budget, json: bool) -> Result<String, Failure> {
    let curve = load_curve(path)?;
    let l = l_polynomial(&curve, budget)?;
    let n = curve.genus().max(1);
    let counts = (1..=n)
        .map(|i| curve.count_points(i, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let pic = p.map(|p| pic_p_nontrivial(&curve, p, budget)).transpose()?;
    if json {
        let mut v = json!({
            "q": curve.q(),
            "genus": curve.genus(),
            "l_polynomial": l,
            "class_number": l.class_number(),
            "counts": counts,
        });
        if let (Some(p), Some(pic)) = (p, pic) {
            v["p"] = json!(p);
            v["pic_p_nontrivial"] = json!(pic);
        }
        return Ok(pretty(&v));
    }
    let mut out = vec![
        format!("q = {}, genus {}", curve.q(), curve.genus()),
        format!("L(T) = {}", render_l(l.coeffs())),
        format!("h = L(1) = {}", l.class_number()),
    ];
    out.extend(
        counts
            .iter()
            .enumerate()
            .map(|(i, c)| format!("N_{} = {c}", i + 1)),
    );
    if let (Some(p), Some(pic)) = (p, pic) {
        out.push(format!(
            "Pic(X)[{p}] {}",
            if pic { "nontrivial" } else { "trivial" }
        ));
    }
    Ok(out.join("\n"))
}

fn render_l(coeffs: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match i {
            0 => s.push_str(&a.to_string()),
            _ => {
                if a != 1 {
                    s.push_str(&a.to_string());
                }
                s.push('T');
                if i > 1 {
                    s.push_str(&format!("^{i}"));
                }
            }
        }
    }
    s
}

fn render_report(r: &ClassificationReport) -> String {
    let yes_no = |b: Option<bool>| match b {
        Some(true) => "yes".to_string(),
        Some(false) => "no".to_string(),
        None => "unknown".to_string(),
    };
    let verdict = serde_json::to_value(r.verdict).expect("serializable");
    let tag = serde_json::to_value(r.case_tag).expect("serializable");
    let inv = &r.invariants;
    let mut out = vec![
        format!("verdict: {}", verdict.as_str().unwrap_or_default()),
        format!(
            "case {} [{}]: {}",
            r.case_number,
            tag.as_str().unwrap_or_default(),
            r.justification
        ),
    ];
    let pi1 = match r.pi1_r {
        Some(rr) if rr > 0 => format!(
            "{} (r = {rr}, order {}^{rr})",
            r.pi1_description.as_str(),
            r.p
        ),
        _ => r.pi1_description.as_str().to_string(),
    };
    out.push(format!("pi_1: {pi1}"));
    out.push(format!("cd: {}", r.cd_bound.as_str()));
    out.push(format!(
        "p = {}, S = [{}], T = [{}]",
        r.p,
        r.s_points.join(", "),
        r.t_points.join(", ")
    ));
    let mut line = format!("q = {}, g = {}", inv.q, inv.g);
    if let Some(l) = &inv.l_polynomial {
        line.push_str(&format!(", L(T) = {}", render_l(l.coeffs())));
    }
    if let Some(h) = inv.h {
        line.push_str(&format!(", h = {h}"));
    }
    out.push(line);
    out.push(format!(
        "Pic(X)[p] nontrivial: {}",
        yes_no(inv.pic_p_nontrivial)
    ));
    if let Some(s) = inv.s {
        out.push(format!("dim Pic(X)[p] = {s}"));
    }
    if let Some(mu) = inv.mu_p {
        out.push(format!("mu_p in F: {}", yes_no(Some(mu))));
    }
    if let Some(b) = &inv.ihara {
        out.push(format!(
            "Ihara sum over T = {} ({}), threshold {}: {}",
            b.approx,
            surd(&b.value),
            b.threshold,
            if b.exceeds {
                "exceeded"
            } else {
                "not exceeded"
            }
        ));
    }
    if let Some(e) = &r.euler {
        out.push(format!(
            "euler: s = {}, #T = {}, h1 = {}, rho = {}, h2 = {}",
            e.s, e.t, e.h1, e.rho, e.h2
        ));
    }
    out.extend(r.notes.iter().map(|n| format!("note: {n}")));
    out.join("\n")
}

fn surd(v: &curveclass::QuadraticSurd) -> String {
    if v.is_rational() {
        v.a.to_string()
    } else {
        format!("{} + {} sqrt({})", v.a, v.b, v.q)
    }
}

fn classify_cmd(args: &ClassifyArgs, budget: &Budget, json: bool) -> Result<String, Failure> {
    let curve = load_curve(&args.curve)?;
    let inst = MarkedInstance::new(curve, &args.s, &args.t, args.p, budget)?;
    let report = classify(&inst, budget)?;
    if json {
        return Ok(pretty(
            &serde_json::to_value(&report).expect("serializable"),
        ));
    }
    Ok(render_report(&report))
}

/// The oracle result, plus whether it disagrees with L(1).
fn oracle(path: &Path, budget: &Budget, json: bool) -> Result<(String, bool), Failure> {
    let curve = load_curve(path)?;
    let group = jacobian_group(&curve, budget)?;
    let h = match l_polynomial(&curve, budget) {
        Ok(l) => Some(l.class_number()),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e.into()),
    };
    let agree = h.map(|h| h == group.order);
    let text = if json {
        pretty(&json!({"structure": group, "class_number": h, "agree": agree}))
    } else {
        let cyclic: Vec<String> = group
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        let shape = if cyclic.is_empty() {
            "trivial".to_string()
        } else {
            cyclic.join(" x ")
        };
        let tail = match (h, agree) {
            (Some(h), Some(true)) => format!("L(1) = {h}, agree"),
            (Some(h), _) => format!("L(1) = {h}, DISAGREE"),
            _ => "L(1) not computed within budget".to_string(),
        };
        format!("Jac = {shape}, order {}\n{tail}", group.order)
    };
    Ok((text, agree == Some(false)))
}

fn report_line(r: &CoinvariantCriterionReport) -> String {
    let mut line = format!(
        "{} p={} |G|={} lhs={} rhs={} equal={}",
        r.label, r.p, r.group_order, r.lhs, r.rhs, r.equal
    );
    if r.p_divides_order {
        line.push_str(if r.equal {
            " (p divides |G|)"
        } else {
            " hypothesis-violation: p divides |G|"
        });
    }
    line
}

fn gmodule(args: &GmoduleArgs, json: bool) -> Result<String, Failure> {
    if args.p < 2 || !curveclass::field::is_prime(args.p) {
        return Err(Failure::Usage(format!("--p {} is not a prime", args.p)));
    }
    let modules = match (&args.spec, args.random) {
        (Some(path), _) => {
            let spec: GModuleSpec = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::Run(Error::Malformed(format!("{}: {e}", path.display()))))?;
            vec![GModule::from_spec(&spec)?]
        }
        (None, Some(n)) => random_modules(n, args.seed),
        (None, None) => unreachable!("clap requires one of them"),
    };
    let reports = modules
        .iter()
        .map(|m| coinvariant_criterion(m, args.p))
        .collect::<Result<Vec<_>, _>>()?;
    if json {
        return Ok(pretty(
            &serde_json::to_value(&reports).expect("serializable"),
        ));
    }
    Ok(reports
        .iter()
        .map(report_line)
        .collect::<Vec<_>>()
        .join("\n"))
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let mut budget = Budget::from_env()?;
    if let Some(spec) = &cli.budget {
        budget = budget
            .with_overrides(spec)
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let plain = |r: Result<String, Failure>| r.map(|s| (s, false));
    match &cli.command {
        Command::Validate { curve } => plain(validate(curve, cli.json)),
        Command::Points { curve, max_degree } => {
            plain(points(curve, *max_degree, &budget, cli.json))
        }
        Command::Zeta { curve, p } => plain(zeta(curve, *p, &budget, cli.json)),
        Command::Classify(args) => plain(classify_cmd(args, &budget, cli.json)),
        Command::Oracle { curve } => oracle(curve, &budget, cli.json),
        Command::Gmodule(args) => plain(gmodule(args, cli.json)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, disagree)) => {
            println!("{out}");
            if disagree {
                eprintln!("error: oracle and L-polynomial disagree");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
