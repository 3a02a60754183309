use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use brauer_core::burnside::{BrauerRelationBasis, BurnsideRing};
use brauer_core::corpus::{builtin_group, BUILTIN_GROUPS};
use brauer_core::json::{
    matrix_json, parse_burnside, parse_d_list, parse_group, parse_group_source, parse_matrix,
    parse_module, rationals, ModuleInput, RationalJson,
};
use brauer_core::regfe::{
    factor_equivalent, factor_equivalent_presented, regulator_constants_table,
    regulator_constants_table_presented, FactorEquivalenceReport,
};
use brauer_core::suite::{parse_suites, verify, CorpusGroup, VerifyOptions};
use brauer_core::Error;

#[derive(Parser)]
#[command(name = "brauer")]
#[command(about = "Brauer relations, regulator constants and factor equivalence of Z[G]-modules")]
#[command(version)]
struct Cli {
    /// Seed for the random construction of equivariant maps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest group order for which subgroups are enumerated
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,

    /// Attempts at finding a full-rank equivariant map
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    retry_budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Element classes and subgroup classes of a group
    Group {
        /// `builtin:NAME`, a JSON file, inline JSON, or `-` for standard input
        group: String,
    },
    /// A basis of the Brauer relations of a group
    Relations { group: String },
    /// Regulator constants of a module for the basis relations or a given one
    Regconst {
        group: String,
        /// Module JSON (file, inline, or `-`)
        module: String,
        /// A Burnside ring element, e.g. `{"coeffs": {"0": 1, "1": -1}}`
        #[arg(long)]
        relation: Option<String>,
    },
    /// Decide factor equivalence of two modules
    FactorEquiv {
        group: String,
        module_a: String,
        module_b: String,
        /// Matrix of a map from the first module to the second, required when
        /// either has torsion
        #[arg(long)]
        map: Option<String>,
    },
    /// Run verification suites: lemma, corollary, sunit, kgroups or all
    Verify {
        suite: String,
        /// Built-in groups to use (default: C2 C4 C6 V4 S3 D4 Q8)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        groups: Vec<String>,
        /// Decomposition groups for the S-unit suite as a JSON list of
        /// generating element lists, e.g. `[[0]]`
        #[arg(long)]
        d_list: Option<String>,
    },
}

enum Failure {
    Input(String),
    Precondition(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotBrauerRelation
            | Error::NotRationallyIsomorphic
            | Error::NotEquivariant
            | Error::IllDefinedMap
            | Error::InfiniteCokernel
            | Error::InfiniteKernel
            | Error::InfiniteIndex { .. }
            | Error::NotSublattice
            | Error::RetryBudgetExhausted(_) => Failure::Precondition(e.to_string()),
            Error::RouteDisagreement { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_source(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || trimmed.starts_with("builtin:") {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Failure::Input(format!("reading {arg}: {e}")))
}

fn read_json(arg: &str) -> CliResult<Value> {
    serde_json::from_str(&read_source(arg)?).map_err(|e| Failure::Input(format!("invalid JSON in {arg}: {e}")))
}

fn load_ring(arg: &str, bound: usize) -> CliResult<BurnsideRing> {
    let group = if builtin_group(arg).is_some() && !std::path::Path::new(arg).exists() {
        builtin_group(arg).expect("checked")
    } else {
        parse_group_source(&read_source(arg)?)?
    };
    Ok(BurnsideRing::new(Arc::new(group), bound)?)
}

fn coeff_map(coeffs: &[i64]) -> Value {
    let obj: serde_json::Map<String, Value> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &n)| n != 0)
        .map(|(i, &n)| (i.to_string(), json!(n)))
        .collect();
    Value::Object(obj)
}

fn format_relation(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &n)| n != 0)
        .map(|(i, &n)| format!("{n:+}*H{i}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

fn cmd_group(ring: &BurnsideRing) -> (Value, String) {
    let g = ring.group();
    let table = ring.table();
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| json!({"representative": c.representative, "label": g.label(c.representative), "size": c.members.len()}))
        .collect();
    let subgroups: Vec<Value> = table
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "id": i,
                "order": c.order(),
                "cyclic": c.is_cyclic,
                "conjugates": c.conjugates.len(),
                "representative": c.representative.elements(),
            })
        })
        .collect();
    let report = json!({
        "order": g.order(),
        "element_classes": classes,
        "subgroup_classes": subgroups,
        "subgroup_count": table.subgroup_count(),
        "cyclic_classes": table.cyclic_count(),
    });
    let mut text = format!(
        "order {}\n{} element classes, {} subgroups in {} classes ({} cyclic)\n",
        g.order(),
        g.classes().len(),
        table.subgroup_count(),
        table.len(),
        table.cyclic_count()
    );
    for (i, c) in table.classes().iter().enumerate() {
        text += &format!(
            "  H{i}: order {}, {} conjugate(s){}, elements {:?}\n",
            c.order(),
            c.conjugates.len(),
            if c.is_cyclic { ", cyclic" } else { "" },
            c.representative.elements()
        );
    }
    (report, text)
}

fn cmd_relations(ring: &BurnsideRing) -> (Value, String) {
    let basis = ring.brauer_relation_basis();
    let relations: Vec<Value> = basis.relations().iter().map(|r| json!(r.coeffs())).collect();
    let report = json!({
        "subgroup_classes": ring.class_count(),
        "rank": basis.len(),
        "relations": relations,
    });
    let mut text = format!("{} Brauer relation(s)\n", basis.len());
    for (k, r) in basis.relations().iter().enumerate() {
        text += &format!("  [{k}] {}\n", format_relation(r.coeffs()));
    }
    (report, text)
}

fn relations_for(ring: &BurnsideRing, relation: Option<&str>) -> CliResult<BrauerRelationBasis> {
    match relation {
        None => Ok(ring.brauer_relation_basis()),
        Some(src) => {
            let theta = parse_burnside(ring, &read_json(src)?)?;
            if !ring.is_brauer_relation(&theta) {
                return Err(Error::NotBrauerRelation.into());
            }
            Ok(BrauerRelationBasis::from_relations(vec![theta]))
        }
    }
}

fn cmd_regconst(ring: &BurnsideRing, module: &ModuleInput, relation: Option<&str>) -> CliResult<(Value, String)> {
    let basis = relations_for(ring, relation)?;
    let values = match module {
        ModuleInput::Lattice(l) => regulator_constants_table(ring, &basis, l)?,
        ModuleInput::Presented(m) => regulator_constants_table_presented(ring, &basis, m)?,
    };
    let report = json!({
        "relations": basis.relations().iter().map(|r| coeff_map(r.coeffs())).collect::<Vec<_>>(),
        "regulator_constants": rationals(&values),
    });
    let mut text = String::new();
    if values.is_empty() {
        text += "no Brauer relations\n";
    }
    for (r, v) in basis.relations().iter().zip(&values) {
        text += &format!("C[{}] = {}\n", format_relation(r.coeffs()), RationalJson::from(v));
    }
    Ok((report, text))
}

fn factor_report(r: &FactorEquivalenceReport) -> (Value, String) {
    let report = json!({
        "relations": r.relations.iter().map(|t| coeff_map(t.coeffs())).collect::<Vec<_>>(),
        "regulator_constants": {
            "M": rationals(&r.regulator_constants_m),
            "N": rationals(&r.regulator_constants_n),
        },
        "index_function": rationals(r.index_function.values()),
        "defects": rationals(&r.defects),
        "corollary": r.corollary,
        "verdict": r.verdict,
        "embedding": matrix_json(&r.embedding),
    });
    let mut text = format!("factor equivalent: {}\n", r.verdict);
    let f: Vec<String> = r.index_function.values().iter().map(|v| RationalJson::from(v).to_string()).collect();
    text += &format!("index function: [{}]\n", f.join(", "));
    for (k, t) in r.relations.iter().enumerate() {
        text += &format!(
            "  {}: defect {}, C(M) = {}, C(N) = {}\n",
            format_relation(t.coeffs()),
            RationalJson::from(&r.defects[k]),
            RationalJson::from(&r.regulator_constants_m[k]),
            RationalJson::from(&r.regulator_constants_n[k]),
        );
    }
    (report, text)
}

fn cmd_factor_equiv(
    cli: &Cli,
    ring: &BurnsideRing,
    a: &ModuleInput,
    b: &ModuleInput,
    map: Option<&str>,
) -> CliResult<(Value, String)> {
    let basis = ring.brauer_relation_basis();
    let report = match (a, b, map) {
        (ModuleInput::Lattice(m), ModuleInput::Lattice(n), None) => {
            factor_equivalent(ring, &basis, m, n, cli.seed, cli.retry_budget as usize)?
        }
        (_, _, Some(src)) => {
            let (m, n) = (a.presented(), b.presented());
            if !m.rationally_isomorphic(&n) {
                return Err(Error::NotRationallyIsomorphic.into());
            }
            let t = parse_matrix(&read_json(src)?, Some(m.generators()))?;
            factor_equivalent_presented(ring, &basis, &m, &n, t)?
        }
        _ => {
            if !a.presented().rationally_isomorphic(&b.presented()) {
                return Err(Error::NotRationallyIsomorphic.into());
            }
            return Err(Failure::Input("modules with torsion need --map".into()));
        }
    };
    Ok(factor_report(&report))
}

fn cmd_verify(cli: &Cli, suite: &str, groups: &[String], d_list: Option<&str>) -> CliResult<(Value, String, bool)> {
    let suites = parse_suites(suite)?;
    let names: Vec<String> = if groups.is_empty() {
        BUILTIN_GROUPS.iter().map(|s| s.to_string()).collect()
    } else {
        groups.to_vec()
    };
    let corpus = names
        .iter()
        .map(|name| {
            let ring = match builtin_group(name) {
                Some(g) => BurnsideRing::new(Arc::new(g), cli.bound as usize)?,
                None => {
                    let v = read_json(name)?;
                    BurnsideRing::new(Arc::new(parse_group(&v)?), cli.bound as usize)?
                }
            };
            Ok(CorpusGroup { name: name.clone(), ring })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let d_lists = d_list.map(|s| read_json(s).and_then(|v| Ok(parse_d_list(&v)?))).transpose()?;
    let opts = VerifyOptions {
        seed: cli.seed,
        retry_budget: cli.retry_budget as usize,
        d_lists: d_lists.map(|l| vec![l]),
        ..VerifyOptions::default()
    };
    let report = verify(&suites, &corpus, &opts);
    let mut text = String::new();
    for s in &report.suites {
        text += &format!("{}: {} passed, {} failed\n", s.name, s.passed, s.failed);
        for c in s.checks.iter().filter(|c| !c.pass) {
            text += &format!(
                "  FAIL {} {} relation {:?}: {} vs {}{}\n",
                c.group,
                c.case,
                c.relation,
                c.lhs,
                c.rhs,
                c.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
            );
        }
    }
    text += if report.verdict { "all checks passed\n" } else { "verification FAILED\n" };
    let value = serde_json::to_value(&report).expect("reports serialize");
    Ok((value, text, report.verdict))
}

fn run(cli: &Cli) -> CliResult<(Value, String, bool)> {
    let bound = cli.bound as usize;
    match &cli.command {
        Command::Group { group } => {
            let (v, t) = cmd_group(&load_ring(group, bound)?);
            Ok((v, t, true))
        }
        Command::Relations { group } => {
            let (v, t) = cmd_relations(&load_ring(group, bound)?);
            Ok((v, t, true))
        }
        Command::Regconst { group, module, relation } => {
            let ring = load_ring(group, bound)?;
            let m = parse_module(&ring, &read_json(module)?)?;
            let (v, t) = cmd_regconst(&ring, &m, relation.as_deref())?;
            Ok((v, t, true))
        }
        Command::FactorEquiv { group, module_a, module_b, map } => {
            let ring = load_ring(group, bound)?;
            let a = parse_module(&ring, &read_json(module_a)?)?;
            let b = parse_module(&ring, &read_json(module_b)?)?;
            let (v, t) = cmd_factor_equiv(cli, &ring, &a, &b, map.as_deref())?;
            Ok((v, t, true))
        }
        Command::Verify { suite, groups, d_list } => cmd_verify(cli, suite, groups, d_list.as_deref()),
    }
}

fn emit(cli: &Cli, value: &Value, text: &str) -> io::Result<()> {
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => text.to_string(),
    };
    match &cli.output {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text, ok)) => {
            if let Err(e) = emit(&cli, &value, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(4)
        }
    }
}
