use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use loopforge::certify::certify_order9;
use loopforge::enumerate::{find_power_witness_with, search_power_witness, DEFAULT_ORDER_CAP};
use loopforge::identities::{reports_to_json, run_full_suite, Status};
use loopforge::power::default_max_exp;
use loopforge::{
    all_subloops, are_isomorphic, bracket_sets, diagonal_stats, enumerate_loops, Error, LoopTable,
    SearchConfig,
};

const SCHEMA: u32 = 1;

/// Finite loop tables: validation, power identities, enumeration and the
/// order-9 certificate.
#[derive(Parser)]
#[command(name = "loopforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a table and print its structural properties.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Right-associated powers and bracketing analysis for every element.
    Powers {
        file: PathBuf,
        /// Highest exponent examined [default: 2n + 8].
        #[arg(long)]
        max_exp: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run every power and inverse identity check.
    Suite {
        file: PathBuf,
        /// Highest exponent examined [default: 2n + 8].
        #[arg(long)]
        max_exp: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate loops of a given order.
    Enumerate(EnumerateArgs),
    /// Decide whether two tables are isomorphic.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find a Jordan loop of order N with a generator x whose powers below K
    /// are well defined but x^K is not.
    Witness {
        n: usize,
        k: usize,
        #[arg(long, default_value = "witness.loop")]
        out: PathBuf,
        /// Search one labeling with pinned powers instead of enumerating
        /// (always used above the enumeration cap).
        #[arg(long)]
        targeted: bool,
        #[arg(long)]
        json: bool,
    },
    /// Certify that every Jordan loop of order 9 is a group.
    #[command(name = "certify-order9")]
    CertifyOrder9 {
        /// Also enumerate every Jordan loop of order 9.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
        /// Write the JSON certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    n: usize,
    /// Commutative loops satisfying x²(yx) = (x²y)x.
    #[arg(long)]
    jordan: bool,
    #[arg(long)]
    commutative: bool,
    /// One table per isomorphism class (the default with --jordan or
    /// --commutative).
    #[arg(long, conflicts_with = "labeled")]
    up_to_iso: bool,
    /// Every labeled table, even with --jordan or --commutative.
    #[arg(long)]
    labeled: bool,
    #[arg(long)]
    nonassociative_only: bool,
    /// Do not force a permutation diagonal at odd orders.
    #[arg(long)]
    no_diagonal_pruning: bool,
    /// Report counts without writing tables.
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for one `.loop` file per table plus `stats.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

struct CommandOutcome {
    exit_code: u8,
    report_path: Option<PathBuf>,
    summary: String,
}

impl CommandOutcome {
    fn new(exit_code: u8, summary: impl Into<String>) -> Self {
        CommandOutcome { exit_code, report_path: None, summary: summary.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut out = String::new();
    let outcome = match cli.command {
        Command::Check { file, json } => cmd_check(&file, json, &mut out),
        Command::Powers { file, max_exp, json } => cmd_powers(&file, max_exp, json, &mut out),
        Command::Suite { file, max_exp, json } => cmd_suite(&file, max_exp, json, &mut out),
        Command::Enumerate(args) => cmd_enumerate(&args, &mut out),
        Command::Iso { file1, file2, json } => cmd_iso(&file1, &file2, json, &mut out),
        Command::Witness { n, k, out: path, targeted, json } => {
            cmd_witness(n, k, &path, targeted, json, &mut out)
        }
        Command::CertifyOrder9 { exhaustive, json, out: path } => {
            cmd_certify_order9(exhaustive, json, path.as_deref(), &mut out)
        }
    };
    print!("{out}");
    eprintln!("{}", outcome.summary);
    if let Some(path) = &outcome.report_path {
        eprintln!("wrote {}", path.display());
    }
    eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
    ExitCode::from(outcome.exit_code)
}

fn read_table(path: &Path) -> Result<LoopTable, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    LoopTable::parse(&text).map_err(|e| e.to_string())
}

fn emit_json(out: &mut String, command: &str, mut body: Value) {
    let obj = body.as_object_mut().expect("json body is an object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    out.push_str(&serde_json::to_string_pretty(&body).expect("json serializes"));
    out.push('\n');
}

fn order_cap() -> Result<usize, String> {
    match std::env::var("LOOPFORGE_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| format!("LOOPFORGE_CAP: not a number: {v:?}")),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn describe(q: &LoopTable) -> String {
    let mut parts = vec![format!("order {}", q.order())];
    if q.is_commutative() {
        parts.push("commutative".into());
        parts.push(if q.is_jordan() { "Jordan" } else { "not Jordan" }.into());
    } else {
        parts.push("noncommutative".into());
    }
    parts.push(if q.is_associative() { "associative (group)" } else { "nonassociative" }.into());
    parts.join(", ")
}

fn cmd_check(file: &Path, json: bool, out: &mut String) -> CommandOutcome {
    let q = match read_table(file) {
        Ok(q) => q,
        Err(e) => {
            if json {
                emit_json(out, "check", json!({ "valid": false, "error": e }));
            }
            return CommandOutcome::new(1, format!("invalid table: {e}"));
        }
    };
    let summary = describe(&q);
    let diagonal = diagonal_stats(&q);
    let subloops = all_subloops(&q, 12).ok();
    if json {
        emit_json(
            out,
            "check",
            json!({
                "valid": true,
                "order": q.order(),
                "commutative": q.is_commutative(),
                "jordan": q.is_jordan(),
                "associative": q.is_associative(),
                "diagonal_counts": diagonal,
                "subloops": subloops.as_ref().map(|s| s.iter().map(|h| h.carrier().to_vec()).collect::<Vec<_>>()),
            }),
        );
    } else {
        let _ = writeln!(out, "{summary}");
        let counts: Vec<String> = diagonal.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "diagonal counts: {}", counts.join(" "));
        match &subloops {
            Some(subs) => {
                let _ = writeln!(out, "subloops: {}", subs.len());
                for h in subs {
                    let carrier: Vec<String> = h.carrier().iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "  size {}: {{{}}}", h.len(), carrier.join(", "));
                }
            }
            None => {
                let _ = writeln!(out, "subloops: skipped above order 12");
            }
        }
    }
    CommandOutcome::new(0, summary)
}

fn cmd_powers(file: &Path, max_exp: Option<usize>, json: bool, out: &mut String) -> CommandOutcome {
    let q = match read_table(file) {
        Ok(q) => q,
        Err(e) => return CommandOutcome::new(1, format!("invalid table: {e}")),
    };
    let max_exp = max_exp.unwrap_or_else(|| default_max_exp(q.order())).max(1);
    let profiles: Vec<_> = q.elements().map(|x| bracket_sets(&q, x, max_exp)).collect();
    if json {
        let elements: Vec<Value> = profiles
            .iter()
            .map(|p| {
                json!({
                    "element": p.element,
                    "inverse": p.inverse,
                    "subloop_order": p.subloop_order,
                    "first_ill_defined": p.first_ill_defined(),
                    "rpow": p.rpow,
                })
            })
            .collect();
        emit_json(out, "powers", json!({ "order": q.order(), "max_exp": max_exp, "elements": elements }));
    } else {
        let _ = writeln!(out, "order {}, exponents 0..={max_exp}", q.order());
        for p in &profiles {
            let powers: Vec<String> = p.rpow.iter().map(|v| v.to_string()).collect();
            let first = p.first_ill_defined().map_or_else(|| "-".to_string(), |k| k.to_string());
            let _ = writeln!(
                out,
                "x={} inverse={} subloop_order={} first_ill_defined={} powers={}",
                p.element,
                p.inverse,
                p.subloop_order,
                first,
                powers.join(" ")
            );
        }
    }
    let ill = profiles.iter().filter(|p| p.first_ill_defined().is_some()).count();
    CommandOutcome::new(0, format!("{ill} of {} elements have an ill-defined power", q.order()))
}

fn cmd_suite(file: &Path, max_exp: Option<usize>, json: bool, out: &mut String) -> CommandOutcome {
    let q = match read_table(file) {
        Ok(q) => q,
        Err(e) => return CommandOutcome::new(1, format!("invalid table: {e}")),
    };
    let max_exp = max_exp.unwrap_or_else(|| default_max_exp(q.order()));
    let reports = match run_full_suite(&q, max_exp) {
        Ok(r) => r,
        Err(e @ Error::NotCommutative { .. }) => {
            return CommandOutcome::new(2, format!("suite needs a commutative loop: {e}"))
        }
        Err(e) => return CommandOutcome::new(2, e.to_string()),
    };
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (pass, fail, na) = (count(Status::Pass), count(Status::Fail), count(Status::NotApplicable));
    if json {
        emit_json(
            out,
            "suite",
            json!({
                "order": q.order(),
                "max_exp": max_exp,
                "all_pass": fail == 0,
                "reports": reports_to_json(&reports),
            }),
        );
    } else {
        for r in &reports {
            let _ = writeln!(out, "{}", r.to_line());
        }
        let _ = writeln!(out, "{} reports: {pass} pass, {fail} fail, {na} not applicable", reports.len());
    }
    let code = if fail == 0 { 0 } else { 1 };
    CommandOutcome::new(code, format!("suite: {pass} pass, {fail} fail, {na} not applicable"))
}

fn cmd_enumerate(args: &EnumerateArgs, out: &mut String) -> CommandOutcome {
    let n = args.n;
    let mut cfg = if args.jordan {
        SearchConfig::jordan(n)
    } else if args.commutative {
        SearchConfig::commutative(n)
    } else {
        SearchConfig::loops(n)
    };
    cfg.up_to_iso = !args.labeled && (args.up_to_iso || args.jordan || args.commutative);
    if args.no_diagonal_pruning {
        cfg.require_identity_diag_odd = false;
    }
    cfg.nonassociative_only = args.nonassociative_only;
    cfg.limit = args.limit;
    cfg.worker_count = args.jobs;
    cfg.order_cap = match order_cap() {
        Ok(c) => c,
        Err(e) => return CommandOutcome::new(2, e),
    };

    let result = match enumerate_loops(&cfg) {
        Ok(r) => r,
        Err(e @ Error::OrderTooLarge { .. }) => return CommandOutcome::new(1, e.to_string()),
        Err(e) => return CommandOutcome::new(2, e.to_string()),
    };
    let count = result.tables.len();
    let kind = if cfg.up_to_iso { "isomorphism classes" } else { "labeled tables" };
    let summary = format!("order {n}: {count} {kind}");
    let stats = json!({ "schema": SCHEMA, "config": cfg, "count": count, "stats": result.stats });

    let mut outcome = CommandOutcome::new(0, summary.clone());
    if let (Some(dir), false) = (&args.out, args.count_only) {
        if let Err(e) = write_enumeration(dir, &result.tables, &stats) {
            return CommandOutcome::new(2, format!("{}: {e}", dir.display()));
        }
        outcome.report_path = Some(dir.join("stats.json"));
    }
    if args.json {
        let mut body = json!({ "config": cfg, "count": count, "stats": result.stats });
        if !args.count_only && args.out.is_none() {
            body["tables"] = json!(result.tables.iter().map(LoopTable::rows).collect::<Vec<_>>());
        }
        emit_json(out, "enumerate", body);
    } else {
        let _ = writeln!(out, "{summary}");
        if !args.count_only && args.out.is_none() {
            for t in &result.tables {
                let _ = write!(out, "\n{t}");
            }
        }
    }
    outcome
}

fn write_enumeration(dir: &Path, tables: &[LoopTable], stats: &Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for t in tables {
        fs::write(dir.join(format!("{:016x}.loop", t.digest())), t.to_loop_string())?;
    }
    let mut text = serde_json::to_string_pretty(stats).expect("stats serialize");
    text.push('\n');
    fs::write(dir.join("stats.json"), text)
}

fn cmd_iso(file1: &Path, file2: &Path, json: bool, out: &mut String) -> CommandOutcome {
    let (q1, q2) = match (read_table(file1), read_table(file2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return CommandOutcome::new(2, format!("invalid table: {e}")),
    };
    let map = are_isomorphic(&q1, &q2);
    if json {
        emit_json(out, "iso", json!({ "isomorphic": map.is_some(), "map": map }));
    } else if let Some(m) = &map {
        let pairs: Vec<String> = m.iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
        let _ = writeln!(out, "isomorphic");
        let _ = writeln!(out, "map: {}", pairs.join(" "));
    } else {
        let _ = writeln!(out, "not isomorphic");
    }
    match map {
        Some(_) => CommandOutcome::new(0, "isomorphic"),
        None => CommandOutcome::new(1, "not isomorphic"),
    }
}

fn cmd_witness(
    n: usize,
    k: usize,
    path: &Path,
    targeted: bool,
    json: bool,
    out: &mut String,
) -> CommandOutcome {
    let mut cfg = SearchConfig::jordan(n);
    cfg.order_cap = match order_cap() {
        Ok(c) => c,
        Err(e) => return CommandOutcome::new(2, e),
    };
    let targeted = targeted || n > cfg.order_cap;
    let method = if targeted { "targeted" } else { "exhaustive" };
    let found = if targeted { search_power_witness(n, k) } else { find_power_witness_with(&cfg, k) };
    let found = match found {
        Ok(f) => f,
        Err(e) => return CommandOutcome::new(2, e.to_string()),
    };
    let Some((q, x)) = found else {
        if json {
            emit_json(out, "witness", json!({ "order": n, "k": k, "method": method, "found": false }));
        } else {
            let _ = writeln!(
                out,
                "no Jordan loop of order {n} has a generator with x^{k} first ill defined ({method} search)"
            );
            if k >= n && !targeted {
                let _ = writeln!(
                    out,
                    "a generator of an order-{n} loop with x^1..x^{} well defined generates a cyclic group",
                    n - 1
                );
            }
        }
        return CommandOutcome::new(1, "no witness");
    };
    if let Err(e) = fs::write(path, q.to_loop_string()) {
        return CommandOutcome::new(2, format!("{}: {e}", path.display()));
    }
    let profile = bracket_sets(&q, x, k);
    let values: Vec<usize> = profile.bracket_sets[k].iter().collect();
    if json {
        emit_json(
            out,
            "witness",
            json!({
                "order": n,
                "k": k,
                "method": method,
                "found": true,
                "generator": x,
                "bracketing_values": values,
                "table": q.rows(),
            }),
        );
    } else {
        let _ = writeln!(out, "order {n}, generator {x}: x^1..x^{} well defined, x^{k} takes values {values:?}", k - 1);
        let _ = write!(out, "{q}");
    }
    let mut outcome = CommandOutcome::new(0, format!("witness found: generator {x}"));
    outcome.report_path = Some(path.to_path_buf());
    outcome
}

fn cmd_certify_order9(exhaustive: bool, json: bool, path: Option<&Path>, out: &mut String) -> CommandOutcome {
    let cert = match certify_order9(exhaustive) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::new(1, e.to_string()),
    };
    let body = serde_json::to_value(&cert).expect("certificate serializes");
    let mut outcome = CommandOutcome::new(
        if cert.conclusion { 0 } else { 1 },
        match cert.require() {
            Ok(()) => "certificate: every Jordan loop of order 9 is a group".to_string(),
            Err(e) => e.to_string(),
        },
    );
    if let Some(path) = path {
        let mut file_body = String::new();
        emit_json(&mut file_body, "certify-order9", body.clone());
        if let Err(e) = fs::write(path, file_body) {
            return CommandOutcome::new(2, format!("{}: {e}", path.display()));
        }
        outcome.report_path = Some(path.to_path_buf());
    }
    if json {
        emit_json(out, "certify-order9", body);
    } else {
        out.push_str(&cert.to_text());
    }
    outcome
}
