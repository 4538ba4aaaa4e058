//! Command-line surface for the permfam library.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use permfam::bijection::{compose, decompose, decompose_traced};
use permfam::counting::{
    all_family_profiles, binomial_form, construct_permutations, derangement_count,
    enumerate_compositions, eulerian, family_config_count, fundamental_multinomial,
    shifted_multinomial, ConstructMode,
};
use permfam::decimal::{decode, encode_opts, validate, DecimalCode};
use permfam::oracle::{all_permutations_budgeted, brute_primitive_scan};
use permfam::primitive::{analyze_primitive, build_primitive, count_primitive, PairingSequence};
use permfam::series::{phi_series, verify_phi_ode};
use permfam::tree::{multiparenthesize, parenthesize, tree_nodes, TreeNode};
use permfam::{Permutation, Registry};

#[derive(Parser)]
#[command(
    name = "permfam",
    version,
    about = "Bijective permutation decompositions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Elementary permutation transforms.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        /// Permutation in one-line notation, e.g. "5 2 4 3 6 1" (or @file).
        perm: String,
    },
    /// Permutation to registry of bicolored families.
    Decompose {
        perm: String,
        /// Print the per-cutoff trace R^(1)..R^(n).
        #[arg(long)]
        trace: bool,
    },
    /// Registry back to its permutation.
    Compose {
        /// Registry text, e.g. "((5 4),(6 7 3 1),(2))" (or @file).
        registry: String,
        /// Target length; defaults to the number of elements in the registry.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Parenthesized (tree) form of a permutation.
    Parenthesize { perm: String },
    /// The forest of primitive nodes of a permutation.
    Tree { perm: String },
    /// The multiparenthesized (iterated registry) form.
    Multipar { perm: String },
    /// Primitive permutations.
    Primitive {
        #[command(subcommand)]
        cmd: PrimitiveCmd,
    },
    /// Decimal codes.
    Decimal {
        #[command(subcommand)]
        cmd: DecimalCmd,
    },
    /// Counting: Eulerian numbers, derangements, multinomials.
    Count {
        #[command(subcommand)]
        cmd: CountCmd,
    },
    /// Enumeration of compositions and their permutations.
    Enumerate {
        #[command(subcommand)]
        cmd: EnumerateCmd,
    },
    /// Brute-force cross-checks.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Cycle,
    InverseCycle,
    Lift,
    Daisy,
}

#[derive(Subcommand)]
enum PrimitiveCmd {
    /// Build the primitive permutation of a pairing sequence.
    Build {
        /// Pairing sequence, e.g. "1,2,3,-2,4,5,-5" (or @file).
        pairing: String,
        /// Number of reds in the active family.
        #[arg(long)]
        reds: usize,
    },
    /// Recover the pairing sequence and red count of a primitive permutation.
    Invert { perm: String },
    /// Count primitives per (k,l) type with the given family and bud sizes.
    Count { fam: usize, buds: usize },
    /// Coefficients of the series phi(t).
    Phi { order: usize },
    /// Verify the differential equation for Phi(x,t) up to a truncation.
    OdeCheck { max_x: usize, max_t: usize },
}

#[derive(Subcommand)]
enum DecimalCmd {
    /// Permutation to decimal code.
    Encode {
        perm: String,
        /// Terminate singlets with r instead of k.
        #[arg(long)]
        red_singlets: bool,
    },
    /// Decimal code (one entry per line, or @file) back to its permutation.
    Decode { code: String },
    /// Check every code axiom and report violations.
    Validate { code: String },
}

#[derive(Subcommand)]
enum CountCmd {
    /// Eulerian number E_{k,l}.
    Eulerian { k: usize, l: usize },
    /// Derangement-type count D_{k,l}.
    Derangement { k: usize, l: usize },
    /// Fundamental multinomial N^[r]_{k,l}.
    Fundamental { k: usize, l: usize, r: usize },
    /// Shifted multinomial N^(s)_{k,l}.
    Shifted {
        k: usize,
        l: usize,
        #[arg(allow_hyphen_values = true)]
        s: i64,
    },
    /// Binomial-form evaluation of N^(s)_{k,l} for s <= 0.
    Binomial {
        k: usize,
        l: usize,
        #[arg(allow_hyphen_values = true)]
        s: i64,
    },
    /// All family configuration counts of {1..n}; their sum is n!.
    Configs { n: usize },
}

#[derive(Subcommand)]
enum EnumerateCmd {
    /// Ordered compositions of sets A and B with min A_i > max B_i.
    Compositions {
        /// Elements of A, e.g. "2 4 5" (or @file).
        a: String,
        /// Elements of B, e.g. "1 3" (or @file).
        b: String,
    },
    /// Permutations realizing the compositions of (A, B).
    Permutations {
        a: String,
        b: String,
        /// Ground-set size; defaults to max(A ∪ B).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::AscentDescent)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    AscentDescent,
    Diagonal,
    Positions,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustive round-trip and primitive-count checks for sizes 1..=n.
    Sweep { n: usize },
}

/// Resolves an argument: a literal, or the contents of a file after '@'.
fn read_arg(text: &str) -> Result<String> {
    if let Some(path) = text.strip_prefix('@') {
        if path == "-" {
            let mut buf = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
                .context("reading stdin")?;
            return Ok(buf);
        }
        fs::read_to_string(path).with_context(|| format!("reading {}", path))
    } else {
        Ok(text.to_string())
    }
}

fn parse_perm(text: &str) -> Result<Permutation> {
    Ok(Permutation::parse(&read_arg(text)?)?)
}

fn parse_set(text: &str) -> Result<BTreeSet<usize>> {
    read_arg(text)?
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad element '{}'", t))
        })
        .collect()
}

fn set_text(s: &BTreeSet<usize>) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn tree_lines(node: &TreeNode, depth: usize, out: &mut Vec<String>) {
    let buds = if node.node.buds.is_empty() {
        "-".to_string()
    } else {
        node.node
            .buds
            .iter()
            .map(|(hi, lo)| format!("({} {})", hi, lo))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let active = node
        .node
        .active
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    out.push(format!(
        "{}pattern {} | active {} | buds {}",
        "  ".repeat(depth),
        node.node.pattern,
        active,
        buds
    ));
    for child in &node.children {
        tree_lines(child, depth + 1, out);
    }
}

fn tree_json(node: &TreeNode) -> Value {
    json!({
        "pattern": node.node.pattern.values(),
        "active": node.node.active,
        "buds": node.node.buds,
        "children": node.children.iter().map(tree_json).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli) -> Result<(String, Value)> {
    Ok(match &cli.command {
        Command::Transform { op, perm } => {
            let p = parse_perm(perm)?;
            let out = match op {
                TransformOp::Cycle => p.cycle_transform(),
                TransformOp::InverseCycle => p.inverse_cycle_transform(),
                TransformOp::Lift => p.eulerian_lift(),
                TransformOp::Daisy => p.daisy_chain(),
            };
            (
                out.to_string(),
                json!({ "input": p.values(), "output": out.values() }),
            )
        }
        Command::Decompose { perm, trace } => {
            let p = parse_perm(perm)?;
            if *trace {
                let (registry, steps) = decompose_traced(&p);
                let lines: Vec<String> = steps
                    .iter()
                    .map(|s| {
                        let friend = s
                            .friend
                            .map(|f| format!(" friend {}", f))
                            .unwrap_or_default();
                        format!(
                            "R^({}) = {}  [case {}{}]",
                            s.cutoff, s.registry, s.case, friend
                        )
                    })
                    .collect();
                let steps_json: Vec<Value> = steps
                    .iter()
                    .map(|s| {
                        json!({
                            "cutoff": s.cutoff,
                            "case": s.case.to_string(),
                            "friend": s.friend,
                            "registry": s.registry.to_string(),
                        })
                    })
                    .collect();
                (
                    lines.join("\n"),
                    json!({ "registry": registry.to_string(), "trace": steps_json }),
                )
            } else {
                let registry = decompose(&p);
                (
                    registry.to_string(),
                    json!({ "registry": registry.to_string() }),
                )
            }
        }
        Command::Compose { registry, n } => {
            let r = Registry::parse(&read_arg(registry)?)?;
            let n = n.unwrap_or_else(|| r.range().len());
            let p = compose(&r, n)?;
            (p.to_string(), json!({ "permutation": p.values() }))
        }
        Command::Parenthesize { perm } => {
            let p = parse_perm(perm)?;
            let pf = parenthesize(&p);
            (pf.to_string(), json!({ "parenthesized": pf.to_string() }))
        }
        Command::Tree { perm } => {
            let p = parse_perm(perm)?;
            let forest = tree_nodes(&parenthesize(&p));
            let mut lines = Vec::new();
            for (i, node) in forest.iter().enumerate() {
                lines.push(format!("block {}:", i + 1));
                tree_lines(node, 1, &mut lines);
            }
            (
                lines.join("\n"),
                json!({ "forest": forest.iter().map(tree_json).collect::<Vec<_>>() }),
            )
        }
        Command::Multipar { perm } => {
            let p = parse_perm(perm)?;
            let m = multiparenthesize(&p);
            let levels: Vec<Vec<Value>> = m
                .levels
                .iter()
                .map(|lv| {
                    lv.iter()
                        .map(|(e, r)| json!({ "elements": e, "reds": r }))
                        .collect()
                })
                .collect();
            (m.to_string(), json!({ "levels": levels }))
        }
        Command::Primitive { cmd } => run_primitive(cmd)?,
        Command::Decimal { cmd } => run_decimal(cmd)?,
        Command::Count { cmd } => run_count(cmd)?,
        Command::Enumerate { cmd } => run_enumerate(cmd)?,
        Command::Oracle { cmd } => run_oracle(cmd)?,
    })
}

fn run_primitive(cmd: &PrimitiveCmd) -> Result<(String, Value)> {
    Ok(match cmd {
        PrimitiveCmd::Build { pairing, reds } => {
            let text = read_arg(pairing)?;
            let cleaned = text.replace(['(', ')'], " ");
            let seq = PairingSequence::parse(&cleaned)?;
            let prim = build_primitive(&seq, *reds)?;
            (
                prim.to_string(),
                json!({
                    "primitive": prim.to_string(),
                    "permutation": prim.perm().values(),
                    "buds": prim.buds(),
                    "active": prim.active_values(),
                }),
            )
        }
        PrimitiveCmd::Invert { perm } => {
            let p = parse_perm(perm)?;
            let (prim, pairing) = analyze_primitive(&p)?;
            let reds = prim.red_count();
            (
                format!("pairing {} reds {}", pairing, reds),
                json!({
                    "pairing": pairing.inds(),
                    "reds": reds,
                    "primitive": prim.to_string(),
                }),
            )
        }
        PrimitiveCmd::Count { fam, buds } => {
            let c = count_primitive(*fam, *buds);
            (c.to_string(), json!({ "count": c.to_string() }))
        }
        PrimitiveCmd::Phi { order } => {
            let phi = phi_series(*order);
            let texts: Vec<String> = phi.iter().map(|c| c.to_string()).collect();
            (texts.join(" "), json!({ "coefficients": texts }))
        }
        PrimitiveCmd::OdeCheck { max_x, max_t } => {
            let report = verify_phi_ode(*max_x, *max_t);
            let plain = if report.ok {
                "ok".to_string()
            } else {
                format!(
                    "failed: first discrepancy {:?}, boundary ok = {}",
                    report.first_discrepancy, report.boundary_ok
                )
            };
            let value = json!({
                "ok": report.ok,
                "first_discrepancy": report.first_discrepancy,
                "boundary_ok": report.boundary_ok,
            });
            if !report.ok {
                bail!("{}", plain);
            }
            (plain, value)
        }
    })
}

fn run_decimal(cmd: &DecimalCmd) -> Result<(String, Value)> {
    fn entries_json(code: &DecimalCode) -> Vec<Value> {
        code.entries()
            .iter()
            .map(|e| json!({ "digits": e.digits, "terminal": e.terminal.letter().to_string() }))
            .collect()
    }
    Ok(match cmd {
        DecimalCmd::Encode { perm, red_singlets } => {
            let p = parse_perm(perm)?;
            let code = encode_opts(&p, *red_singlets);
            (code.to_string(), json!({ "entries": entries_json(&code) }))
        }
        DecimalCmd::Decode { code } => {
            let c = DecimalCode::parse(&read_arg(code)?)?;
            let p = decode(&c)?;
            (p.to_string(), json!({ "permutation": p.values() }))
        }
        DecimalCmd::Validate { code } => {
            let c = DecimalCode::parse(&read_arg(code)?)?;
            let report = validate(&c);
            let value = json!({
                "valid": report.is_valid(),
                "violations": report
                    .violations
                    .iter()
                    .map(|v| json!({
                        "entry": v.entry,
                        "head": v.head,
                        "axiom": v.axiom,
                        "message": v.message,
                    }))
                    .collect::<Vec<_>>(),
            });
            if !report.is_valid() {
                bail!("{}", report);
            }
            (report.to_string(), value)
        }
    })
}

fn run_count(cmd: &CountCmd) -> Result<(String, Value)> {
    let single = |v: permfam::BigUint| {
        let t = v.to_string();
        (t.clone(), json!({ "count": t }))
    };
    Ok(match cmd {
        CountCmd::Eulerian { k, l } => single(eulerian(*k, *l)),
        CountCmd::Derangement { k, l } => single(derangement_count(*k, *l)),
        CountCmd::Fundamental { k, l, r } => single(fundamental_multinomial(*k, *l, *r)),
        CountCmd::Shifted { k, l, s } => single(shifted_multinomial(*k, *l, *s)),
        CountCmd::Binomial { k, l, s } => single(binomial_form(*k, *l, *s)?),
        CountCmd::Configs { n } => {
            let profiles = all_family_profiles(*n);
            let mut lines = Vec::new();
            let mut items = Vec::new();
            let mut total = permfam::BigUint::default();
            for (singlets, profile) in &profiles {
                let count = family_config_count(*n, profile, *singlets)?;
                let types: Vec<String> = profile
                    .iter()
                    .map(|(&(i, j), &c)| format!("{}x({},{})", c, i, j))
                    .collect();
                lines.push(format!(
                    "singlets {} families [{}] -> {}",
                    singlets,
                    types.join(" "),
                    count
                ));
                items.push(json!({
                    "singlets": singlets,
                    "profile": profile
                        .iter()
                        .map(|(&(i, j), &c)| json!({ "reds": i, "blues": j, "count": c }))
                        .collect::<Vec<_>>(),
                    "count": count.to_string(),
                }));
                total += count;
            }
            lines.push(format!("total {}", total));
            (
                lines.join("\n"),
                json!({ "configs": items, "total": total.to_string() }),
            )
        }
    })
}

fn run_enumerate(cmd: &EnumerateCmd) -> Result<(String, Value)> {
    Ok(match cmd {
        EnumerateCmd::Compositions { a, b } => {
            let (a, b) = (parse_set(a)?, parse_set(b)?);
            let comps = enumerate_compositions(&a, &b);
            let lines: Vec<String> = comps
                .iter()
                .map(|c| {
                    c.pairs
                        .iter()
                        .map(|(ai, bi)| format!("({} | {})", set_text(ai), set_text(bi)))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let items: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!(c
                        .pairs
                        .iter()
                        .map(|(ai, bi)| json!({ "a": ai, "b": bi }))
                        .collect::<Vec<_>>())
                })
                .collect();
            (lines.join("\n"), json!({ "compositions": items }))
        }
        EnumerateCmd::Permutations { a, b, n, mode } => {
            let (a, b) = (parse_set(a)?, parse_set(b)?);
            let n = n.unwrap_or_else(|| a.iter().chain(b.iter()).max().copied().unwrap_or(0));
            let mode = match mode {
                Mode::AscentDescent => ConstructMode::AscentDescent,
                Mode::Diagonal => ConstructMode::Diagonal,
                Mode::Positions => ConstructMode::Positions,
            };
            let perms = construct_permutations(&a, &b, n, mode)?;
            let lines: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
            (
                lines.join("\n"),
                json!({ "permutations": perms.iter().map(|p| p.values()).collect::<Vec<_>>() }),
            )
        }
    })
}

fn run_oracle(cmd: &OracleCmd) -> Result<(String, Value)> {
    let OracleCmd::Sweep { n } = cmd;
    let mut lines = Vec::new();
    let mut items = Vec::new();
    for size in 1..=*n {
        let perms = all_permutations_budgeted(size, *n)?;
        for p in &perms {
            let registry = decompose(p);
            let back = compose(&registry, size)?;
            if back != *p {
                bail!("bijection failed for {}: recomposed {}", p, back);
            }
            let code = permfam::decimal::encode(p);
            let decoded = decode(&code)?;
            if decoded != *p {
                bail!("decimal round trip failed for {}", p);
            }
        }
        let primitives = brute_primitive_scan(size).len();
        let from_peeling = perms
            .iter()
            .filter(|p| permfam::primitive::is_primitive(p).is_some())
            .count();
        if primitives != from_peeling {
            bail!(
                "primitive counts disagree at n = {}: scan {}, peeling {}",
                size,
                primitives,
                from_peeling
            );
        }
        lines.push(format!(
            "n={}: {} permutations, bijection ok, decimal ok, {} primitives",
            size,
            perms.len(),
            primitives
        ));
        items.push(json!({
            "n": size,
            "permutations": perms.len(),
            "primitives": primitives,
        }));
    }
    Ok((lines.join("\n"), json!({ "sweep": items })))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((plain, value)) => {
            match cli.format {
                Format::Plain => println!("{}", plain),
                Format::Structured => println!("{}", value),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(args: &[&str]) -> String {
        let cli = Cli::parse_from(std::iter::once("permfam").chain(args.iter().copied()));
        run(&cli).unwrap().0
    }

    #[test]
    fn golden_examples() {
        assert_eq!(
            plain(&["decompose", "6 7 3 5 4 1 2"]),
            "((5 4),(6 7 3 1),(2))"
        );
        assert_eq!(plain(&["count", "eulerian", "3", "3"]), "66");
        assert_eq!(plain(&["transform", "cycle", "5 2 4 3 6 1"]), "5 6 1 2 4 3");
        assert_eq!(
            plain(&["transform", "inverse-cycle", "5 6 1 2 4 3"]),
            "5 2 4 3 6 1"
        );
    }

    #[test]
    fn round_trip_commands() {
        assert_eq!(
            plain(&["compose", "((5 4),(6 7 3 1),(2))"]),
            "6 7 3 5 4 1 2"
        );
        assert_eq!(
            plain(&["parenthesize", "6 7 3 5 4 1 2"]),
            "(6 7 3 (5 4) 1)(2)"
        );
        assert_eq!(
            plain(&["primitive", "build", "1,2,3,-2,4,5,-5", "--reds", "2"]),
            "((4 2) 3 5 (7 6) 1)"
        );
        assert_eq!(
            plain(&["primitive", "invert", "4 2 3 5 7 6 1"]),
            "pairing (1,2,3,-2,4,5,-5) reds 2"
        );
        assert_eq!(plain(&["primitive", "count", "4", "2"]), "159");
        assert_eq!(plain(&["primitive", "phi", "5"]), "1 3 21 207 2529 36243");
        assert_eq!(plain(&["primitive", "ode-check", "4", "4"]), "ok");
        assert_eq!(plain(&["decimal", "encode", "2 1"]), "1.1.b\n1.2.r");
        assert_eq!(plain(&["decimal", "decode", "1.1.b\n1.2.r"]), "2 1");
        assert_eq!(plain(&["decimal", "validate", "1.1.b\n1.2.r"]), "valid");
        assert_eq!(plain(&["count", "shifted", "3", "3", "--", "-1"]), "66");
        assert_eq!(plain(&["count", "fundamental", "3", "3", "2"]), "35");
        assert_eq!(plain(&["count", "derangement", "3", "3"]), "161");
        assert_eq!(plain(&["count", "binomial", "3", "3", "--", "-1"]), "66");
    }

    #[test]
    fn enumerate_and_oracle() {
        let out = plain(&["enumerate", "permutations", "2 4 5", "1 3"]);
        assert_eq!(out.lines().count(), 6);
        assert!(out.lines().any(|l| l == "2 1 4 5 3"));
        let comps = plain(&["enumerate", "compositions", "2 4 5", "1 3"]);
        assert_eq!(comps.lines().count(), 6);
        let sweep = plain(&["oracle", "sweep", "4"]);
        assert!(sweep.contains("n=4: 24 permutations, bijection ok, decimal ok, 6 primitives"));
    }

    #[test]
    fn structured_output_and_errors() {
        let cli = Cli::parse_from([
            "permfam",
            "--format",
            "structured",
            "count",
            "eulerian",
            "3",
            "3",
        ]);
        let (_, value) = run(&cli).unwrap();
        assert_eq!(value["count"], "66");
        let bad = Cli::parse_from(["permfam", "decompose", "1 1"]);
        assert!(run(&bad).is_err());
        let invalid = Cli::parse_from(["permfam", "decimal", "validate", "1.1.r\n1.2.r"]);
        assert!(run(&invalid).is_err());
    }
}
