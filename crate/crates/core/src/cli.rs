//! Command-line front end.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict or a witness
//! found, 2 bad input. `--json` switches every command to a JSON object
//! carrying `schema_version`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::congruences::{
    distributivity_at_zero_violation_in, enumerate_congruences, kernel_family, kernel_map_join_failure,
};
use crate::error::{Error, Result};
use crate::format::{load_algebra, to_json, write_file};
use crate::ideals::ideal_lattice;
use crate::lattice::FiniteLattice;
use crate::malcev::{
    ddck_unitary_witness, dist0_idempotent_witness, split_ddck_terms, verify_ddck_scheme, verify_dist0_scheme,
    SchemeReport, Term,
};
use crate::numeric::NumericProduct;
use crate::products::{
    audit_csv, audit_kernels, audit_theorem1, corollary_decomposability_check, Condition, CorollaryOutcome,
    DecompositionVerdict,
};
use crate::semiring::{direct_product, is_idempotent, is_unitary, FiniteSemiring, ProductSemiring};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping worker threads; 0 or unset means automatic.
pub const THREADS_ENV: &str = "SEMIRING_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "semiring-lab",
    version,
    about = "Ideals, congruences and decompositions of finite commutative semirings"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate an algebra and report unit and idempotence.
    Check { alg: String },
    /// List all ideals.
    Ideals {
        alg: String,
        /// Also report the lattice: Hasse edges, modularity, distributivity, N5.
        #[arg(long)]
        lattice: bool,
        /// Write the Hasse diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List all congruences with their kernels.
    Congruences { alg: String },
    /// List congruence kernels and test the kernel map for joins.
    Kernels {
        alg: String,
        #[arg(long)]
        lattice: bool,
    },
    /// Build the direct product and print or write it as JSON.
    Product {
        alg1: String,
        alg2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide direct decomposability of ideals or kernels of a product.
    #[command(group(ArgGroup::new("what").required(true).args(["ideals", "kernels"])))]
    Decompose {
        alg1: String,
        alg2: String,
        #[arg(long)]
        ideals: bool,
        #[arg(long)]
        kernels: bool,
    },
    /// Cross-check the decomposability conditions on every ideal and kernel of a product.
    Audit {
        alg1: String,
        alg2: String,
        /// Write the per-row verdicts as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Verify a term scheme on an algebra.
    Malcev {
        alg: String,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Terms t0..tn (dist0) or s1..sm t1..tm u1..un (ddck); defaults to the standard witnesses.
        #[arg(long, num_args = 1..)]
        terms: Vec<String>,
        /// Number m of s-terms (and t-terms) in a ddck term list.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Membership in the principal ideal generated by `gen` in a1N x a2N.
    Numeric {
        #[arg(long, value_parser = parse_pair)]
        bases: (u64, u64),
        #[arg(long = "gen", value_parser = parse_pair)]
        generator: (u64, u64),
        #[arg(long, value_parser = parse_pair)]
        query: (u64, u64),
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Dist0,
    Ddck,
}

fn parse_pair(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn verdict(ok: bool, stdout: String) -> Self {
        CommandOutcome {
            code: if ok { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: String) -> Self {
        CommandOutcome {
            code: 2,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

/// Caps the global thread pool from [`THREADS_ENV`]. Call once, early.
pub fn configure_threads() {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        // Fails only if a pool already exists, in which case it stays as is.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::input_error(rendered)
            } else {
                CommandOutcome::verdict(true, rendered)
            };
        }
    };
    match run(cli.command, cli.json) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::input_error(format!("error: {e}\n")),
    }
}

fn emit(json_mode: bool, ok: bool, text: String, value: Value) -> CommandOutcome {
    if json_mode {
        let mut obj = json!({ "schema_version": SCHEMA_VERSION });
        if let (Value::Object(dst), Value::Object(src)) = (&mut obj, value) {
            dst.extend(src);
        }
        let mut out = serde_json::to_string_pretty(&obj).expect("json values serialize");
        out.push('\n');
        CommandOutcome::verdict(ok, out)
    } else {
        CommandOutcome::verdict(ok, text)
    }
}

fn run(command: Command, json_mode: bool) -> Result<CommandOutcome> {
    match command {
        Command::Check { alg } => cmd_check(&load_algebra(&alg)?, json_mode),
        Command::Ideals { alg, lattice, dot } => cmd_ideals(&load_algebra(&alg)?, lattice, dot, json_mode),
        Command::Congruences { alg } => cmd_congruences(&load_algebra(&alg)?, json_mode),
        Command::Kernels { alg, lattice } => cmd_kernels(&load_algebra(&alg)?, lattice, json_mode),
        Command::Product { alg1, alg2, out } => {
            let ctx = direct_product(&load_algebra(&alg1)?, &load_algebra(&alg2)?)?;
            let text = to_json(&ctx.base);
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    let msg = format!(
                        "wrote {} ({} elements) to {}\n",
                        ctx.base.name(),
                        ctx.base.len(),
                        path.display()
                    );
                    Ok(emit(
                        json_mode,
                        true,
                        msg,
                        json!({"command": "product", "name": ctx.base.name(), "elements": ctx.base.len(), "path": path.display().to_string()}),
                    ))
                }
                None if json_mode => {
                    let file: Value = serde_json::from_str(&text)?;
                    Ok(emit(
                        true,
                        true,
                        String::new(),
                        json!({"command": "product", "algebra": file}),
                    ))
                }
                None => Ok(CommandOutcome::verdict(true, text)),
            }
        }
        Command::Decompose {
            alg1,
            alg2,
            ideals,
            kernels: _,
        } => {
            let ctx = direct_product(&load_algebra(&alg1)?, &load_algebra(&alg2)?)?;
            if ideals {
                cmd_decompose_ideals(&ctx, json_mode)
            } else {
                cmd_decompose_kernels(&ctx, json_mode)
            }
        }
        Command::Audit { alg1, alg2, csv } => {
            let ctx = direct_product(&load_algebra(&alg1)?, &load_algebra(&alg2)?)?;
            cmd_audit(&ctx, csv, json_mode)
        }
        Command::Malcev { alg, scheme, terms, m } => cmd_malcev(&load_algebra(&alg)?, scheme, &terms, m, json_mode),
        Command::Numeric {
            bases,
            generator,
            query,
        } => {
            let ctx = NumericProduct::new(bases.0, bases.1)?;
            let member = ctx.principal_membership(generator, query)?;
            Ok(emit(
                json_mode,
                member,
                format!("member: {member}\n"),
                json!({"command": "numeric", "bases": [bases.0, bases.1], "gen": [generator.0, generator.1], "query": [query.0, query.1], "member": member}),
            ))
        }
    }
}

fn cmd_check(s: &FiniteSemiring, json_mode: bool) -> Result<CommandOutcome> {
    let unit = is_unitary(s).map(|u| s.element_name(u).to_string());
    let idem = is_idempotent(s);
    let mut text = String::new();
    let _ = writeln!(text, "algebra: {}", s.name());
    let _ = writeln!(text, "elements: {} ({})", s.len(), s.names().join(", "));
    let _ = writeln!(text, "zero: {}", s.element_name(s.zero()));
    let _ = writeln!(text, "axioms: valid");
    let _ = writeln!(text, "unit: {}", unit.as_deref().unwrap_or("none"));
    let _ = writeln!(text, "idempotent: {idem}");
    Ok(emit(
        json_mode,
        true,
        text,
        json!({"command": "check", "name": s.name(), "elements": s.names(), "valid": true, "unit": unit, "idempotent": idem}),
    ))
}

fn lattice_report<T>(text: &mut String, lat: &FiniteLattice<T>, node: &dyn Fn(usize) -> String) -> Value {
    let _ = writeln!(text, "hasse edges: {}", lat.hasse().len());
    for &(lo, hi) in lat.hasse() {
        let _ = writeln!(text, "  {} < {}", node(lo), node(hi));
    }
    let modular = lat.modularity_violation();
    let distributive = lat.distributivity_violation();
    let pentagon = lat.find_pentagon();
    let triple = |w: Option<(usize, usize, usize)>| match w {
        None => "true".to_string(),
        Some((a, b, c)) => format!("false ({}, {}, {})", node(a), node(b), node(c)),
    };
    let _ = writeln!(text, "modular: {}", triple(modular));
    let _ = writeln!(text, "distributive: {}", triple(distributive));
    match pentagon {
        Some(p) => {
            let _ = writeln!(
                text,
                "pentagon: bottom={} x={} y={} z={} top={}",
                node(p.bottom),
                node(p.x),
                node(p.y),
                node(p.z),
                node(p.top)
            );
        }
        None => text.push_str("pentagon: none\n"),
    }
    let names = |w: Option<(usize, usize, usize)>| w.map(|(a, b, c)| vec![node(a), node(b), node(c)]);
    json!({
        "hasse": lat.hasse().iter().map(|&(lo, hi)| [node(lo), node(hi)]).collect::<Vec<_>>(),
        "modular": modular.is_none(),
        "modularity_witness": names(modular),
        "distributive": distributive.is_none(),
        "distributivity_witness": names(distributive),
        "pentagon": pentagon.map(|p| json!({
            "bottom": node(p.bottom), "x": node(p.x), "y": node(p.y), "z": node(p.z), "top": node(p.top)
        })),
    })
}

fn cmd_ideals(s: &FiniteSemiring, with_lattice: bool, dot: Option<PathBuf>, json_mode: bool) -> Result<CommandOutcome> {
    let lat = ideal_lattice(s)?;
    let node = |i: usize| s.render(*lat.label(i));
    let mut text = String::new();
    let _ = writeln!(text, "algebra: {}", s.name());
    let _ = writeln!(text, "ideals: {}", lat.len());
    for i in 0..lat.len() {
        let _ = writeln!(text, "  I{i} {}", node(i));
    }
    let mut value = json!({
        "command": "ideals",
        "algebra": s.name(),
        "ideals": (0..lat.len()).map(node).collect::<Vec<_>>(),
    });
    let mut ok = true;
    if with_lattice {
        let report = lattice_report(&mut text, &lat, &node);
        ok = lat.is_modular();
        value["lattice"] = report;
    }
    if let Some(path) = dot {
        write_file(&path, &lat.to_dot(&format!("Id {}", s.name()), |set| s.render(*set)))?;
        let _ = writeln!(text, "dot: {}", path.display());
        value["dot"] = json!(path.display().to_string());
    }
    Ok(emit(json_mode, ok, text, value))
}

fn cmd_congruences(s: &FiniteSemiring, json_mode: bool) -> Result<CommandOutcome> {
    let cons = enumerate_congruences(s);
    let mut text = String::new();
    let _ = writeln!(text, "algebra: {}", s.name());
    let _ = writeln!(text, "congruences: {}", cons.len());
    let mut rows = Vec::new();
    for (i, c) in cons.iter().enumerate() {
        let _ = writeln!(text, "  C{i} {}  kernel {}", c.render(s), s.render(c.kernel()));
        rows.push(json!({"blocks": c.render(s), "kernel": s.render(c.kernel())}));
    }
    Ok(emit(
        json_mode,
        true,
        text,
        json!({"command": "congruences", "algebra": s.name(), "congruences": rows}),
    ))
}

fn cmd_kernels(s: &FiniteSemiring, with_lattice: bool, json_mode: bool) -> Result<CommandOutcome> {
    let cons = enumerate_congruences(s);
    let family = kernel_family(&cons)?;
    let failure = kernel_map_join_failure(s)?;
    let dist0 = distributivity_at_zero_violation_in(&cons);
    let node = |i: usize| s.render(family.kernels[i]);
    let mut text = String::new();
    let _ = writeln!(text, "algebra: {}", s.name());
    let _ = writeln!(text, "congruences: {}", cons.len());
    let _ = writeln!(text, "kernels: {}", family.kernels.len());
    for i in 0..family.kernels.len() {
        let _ = writeln!(text, "  K{i} {}", node(i));
    }
    let _ = writeln!(text, "chain: {}", family.lattice.is_chain());
    let mut value = json!({
        "command": "kernels",
        "algebra": s.name(),
        "congruences": cons.len(),
        "kernels": (0..family.kernels.len()).map(node).collect::<Vec<_>>(),
        "chain": family.lattice.is_chain(),
    });
    if with_lattice {
        value["lattice"] = lattice_report(&mut text, &family.lattice, &node);
    }
    match &failure {
        Some(f) => {
            let _ = writeln!(
                text,
                "join failure: theta={} phi={}: [0](theta v phi) = {} != {} = [0]theta v [0]phi",
                f.theta.render(s),
                f.phi.render(s),
                s.render(f.kernel_of_join),
                s.render(f.join_of_kernels)
            );
            value["join_failure"] = json!({
                "theta": f.theta.render(s),
                "phi": f.phi.render(s),
                "kernel_of_join": s.render(f.kernel_of_join),
                "join_of_kernels": s.render(f.join_of_kernels),
            });
        }
        None => {
            text.push_str("join failure: none\n");
            value["join_failure"] = Value::Null;
        }
    }
    match &dist0 {
        Some(w) => {
            let _ = writeln!(
                text,
                "distributive at 0: false (theta={} phi={} psi={})",
                w.theta.render(s),
                w.phi.render(s),
                w.psi.render(s)
            );
        }
        None => text.push_str("distributive at 0: true\n"),
    }
    value["distributive_at_zero"] = json!(dist0.is_none());
    Ok(emit(json_mode, failure.is_none(), text, value))
}

fn cmd_decompose_ideals(ctx: &ProductSemiring, json_mode: bool) -> Result<CommandOutcome> {
    let audit = audit_theorem1(ctx)?;
    let skew: Vec<&DecompositionVerdict> = audit
        .rows
        .iter()
        .filter(|r| r.get(Condition::T1I) == Some(false))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "product: {}", ctx.base.name());
    let _ = writeln!(text, "{} ideals, {} skew", audit.rows.len(), skew.len());
    for r in &skew {
        let _ = writeln!(text, "  {} {}", r.subject, ctx.base.render(r.set));
    }
    let decomposable: Vec<Value> = audit
        .rows
        .iter()
        .filter_map(|r| r.factors.map(|(a, b)| json!([ctx.left.render(a), ctx.right.render(b)])))
        .collect();
    Ok(emit(
        json_mode,
        skew.is_empty(),
        text,
        json!({
            "command": "decompose",
            "mode": "ideals",
            "product": ctx.base.name(),
            "ideals": audit.rows.len(),
            "skew": skew.iter().map(|r| ctx.base.render(r.set)).collect::<Vec<_>>(),
            "decomposable_factors": decomposable,
        }),
    ))
}

fn cmd_decompose_kernels(ctx: &ProductSemiring, json_mode: bool) -> Result<CommandOutcome> {
    let audit = audit_kernels(ctx)?;
    let failing = |c: Condition| -> Vec<&DecompositionVerdict> {
        audit.rows.iter().filter(|r| r.get(c) == Some(false)).collect()
    };
    let not_direct = failing(Condition::T3Direct);
    let not_strong = failing(Condition::T2Strong);
    let n = audit.rows.len();
    let mut text = String::new();
    let _ = writeln!(text, "product: {}", ctx.base.name());
    let _ = writeln!(
        text,
        "{n} congruences, {} directly decomposable kernels, {} strongly decomposable",
        n - not_direct.len(),
        n - not_strong.len()
    );
    let describe = |r: &DecompositionVerdict| {
        format!(
            "{} {}  kernel {}",
            r.subject,
            match r.subject {
                crate::products::Subject::Congruence(i) => audit.congruences[i].render(&ctx.base),
                crate::products::Subject::Ideal(_) => String::new(),
            },
            ctx.base.render(r.set)
        )
    };
    for (title, rows) in [
        ("not directly decomposable", &not_direct),
        ("not strongly decomposable", &not_strong),
    ] {
        let _ = writeln!(text, "{title}: {}", rows.len());
        for r in rows.iter() {
            let _ = writeln!(text, "  {}", describe(r));
        }
    }
    let names = |rows: &[&DecompositionVerdict]| rows.iter().map(|r| describe(r)).collect::<Vec<_>>();
    Ok(emit(
        json_mode,
        not_direct.is_empty(),
        text,
        json!({
            "command": "decompose",
            "mode": "kernels",
            "product": ctx.base.name(),
            "congruences": n,
            "not_directly_decomposable": names(&not_direct),
            "not_strongly_decomposable": names(&not_strong),
        }),
    ))
}

fn cmd_audit(ctx: &ProductSemiring, csv: Option<PathBuf>, json_mode: bool) -> Result<CommandOutcome> {
    let mut text = String::new();
    let _ = writeln!(text, "product: {} ({} elements)", ctx.base.name(), ctx.base.len());
    let mut value = json!({"command": "audit", "product": ctx.base.name()});
    let mut ok = true;

    let ideals = audit_theorem1(ctx);
    match &ideals {
        Ok(a) => {
            let _ = writeln!(text, "ideals: {}, skew: {}", a.rows.len(), a.skew_count());
            text.push_str("chain (iii) <=> (i) => (iv) => (ii): holds on every row\n");
            let _ = writeln!(
                text,
                "strictness witnesses ((ii) true, (iii) false): {}",
                a.strictness_witnesses.len()
            );
            for &k in &a.strictness_witnesses {
                let _ = writeln!(text, "  I{k} {}", ctx.base.render(a.rows[k].set));
            }
            value["ideals"] = json!(a.rows.len());
            value["skew"] = json!(a.skew_count());
            value["strictness_witnesses"] = json!(a
                .strictness_witnesses
                .iter()
                .map(|&k| ctx.base.render(a.rows[k].set))
                .collect::<Vec<_>>());
        }
        Err(e) => {
            ok = false;
            let _ = writeln!(text, "ideal audit FAILED: {e}");
            value["ideal_audit_error"] = json!(e.to_string());
        }
    }

    let kernels = audit_kernels(ctx);
    match &kernels {
        Ok(k) => {
            let count = |c: Condition| k.rows.iter().filter(|r| r.get(c) == Some(true)).count();
            let _ = writeln!(text, "congruences: {}", k.rows.len());
            text.push_str("kernel equivalences and implications: hold on every row\n");
            let _ = writeln!(
                text,
                "  strongly decomposable: {}, directly decomposable: {}, sufficient condition: {}",
                count(Condition::T2Strong),
                count(Condition::T3Direct),
                count(Condition::T4Sufficient)
            );
            value["congruences"] = json!(k.rows.len());
            value["strongly_decomposable"] = json!(count(Condition::T2Strong));
            value["directly_decomposable"] = json!(count(Condition::T3Direct));
            value["sufficient_condition"] = json!(count(Condition::T4Sufficient));
        }
        Err(e) => {
            ok = false;
            let _ = writeln!(text, "kernel audit FAILED: {e}");
            value["kernel_audit_error"] = json!(e.to_string());
        }
    }

    match corollary_decomposability_check(ctx) {
        CorollaryOutcome::Inapplicable => text.push_str("corollary: inapplicable\n"),
        CorollaryOutcome::Checked { case, no_skew_ideals } => {
            let _ = writeln!(text, "corollary ({case}): no skew ideals = {no_skew_ideals}");
            ok &= no_skew_ideals;
            value["corollary"] = json!({"case": case.to_string(), "no_skew_ideals": no_skew_ideals});
        }
    }

    if let (Some(path), Ok(i), Ok(k)) = (csv, &ideals, &kernels) {
        let rows: Vec<&DecompositionVerdict> = i.rows.iter().chain(k.rows.iter()).collect();
        write_file(&path, &audit_csv(ctx, &rows))?;
        let _ = writeln!(text, "csv: {}", path.display());
    }
    value["consistent"] = json!(ok);
    Ok(emit(json_mode, ok, text, value))
}

fn render_report(s: &FiniteSemiring, report: &SchemeReport, text: &mut String) -> Value {
    let mut rows = Vec::new();
    for id in &report.identities {
        let witness = id
            .witness
            .as_ref()
            .map(|w| format!("x={}, y={}", s.element_name(w[0]), s.element_name(w[1])));
        let _ = writeln!(
            text,
            "  [{}] {}   ({} = {}){}",
            if id.holds { "pass" } else { "FAIL" },
            id.name,
            id.lhs,
            id.rhs,
            witness.as_ref().map(|w| format!("  witness {w}")).unwrap_or_default()
        );
        rows.push(json!({"identity": id.name, "lhs": id.lhs.to_string(), "rhs": id.rhs.to_string(), "holds": id.holds, "witness": witness}));
    }
    let _ = writeln!(text, "result: {}", if report.passes() { "pass" } else { "fail" });
    json!(rows)
}

fn cmd_malcev(
    s: &FiniteSemiring,
    scheme: SchemeArg,
    terms: &[String],
    m: Option<usize>,
    json_mode: bool,
) -> Result<CommandOutcome> {
    let parsed: Vec<Term> = terms
        .iter()
        .map(|t| Term::parse(t))
        .collect::<std::result::Result<_, _>>()?;
    let report = match scheme {
        SchemeArg::Dist0 => {
            let terms = if parsed.is_empty() {
                dist0_idempotent_witness()
            } else {
                parsed
            };
            verify_dist0_scheme(s, &terms)?
        }
        SchemeArg::Ddck => {
            let (st, tt, ut) = if parsed.is_empty() {
                ddck_unitary_witness()
            } else {
                let m = m.ok_or_else(|| Error::Domain("--m is required with --terms for ddck".into()))?;
                split_ddck_terms(&parsed, m)?
            };
            verify_ddck_scheme(s, &st, &tt, &ut)?
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "algebra: {}", s.name());
    let _ = writeln!(text, "scheme: {}", report.scheme);
    let rows = render_report(s, &report, &mut text);
    Ok(emit(
        json_mode,
        report.passes(),
        text,
        json!({"command": "malcev", "algebra": s.name(), "scheme": report.scheme.to_string(), "passes": report.passes(), "identities": rows}),
    ))
}
