use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bpring::bimodule::{catalogue, entry, BimoduleData, BimoduleLabel};
use bpring::fusion::{Decomposition, FusionContext, FusionReport};
use bpring::ring::{build_table, check_associativity, check_unit, closed_form_table, Format, RingTable};
use bpring::scalar::ensure_prime;
use bpring::wall::oracle_table;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bpring", version, about = "Fusion of Vec(Z_p) bimodule categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposable bimodule categories.
    Catalog {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = DocFormat::Md)]
        format: DocFormat,
    },
    /// Decompose the relative tensor product of two bimodules.
    Fuse {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also print the intermediate ladder and Karoubi data.
        #[arg(long)]
        detail: bool,
        #[arg(long, value_enum)]
        format: Option<DocFormat>,
    },
    /// Compute the full multiplication table.
    Table {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the computed table against the closed form.
    Verify {
        #[arg(long)]
        p: u32,
        /// Also compare against the domain-wall model.
        #[arg(long)]
        oracle: bool,
        /// Also check associativity on every triple.
        #[arg(long)]
        triples: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DocFormat {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    #[value(alias = "markdown")]
    Md,
    Csv,
}

impl From<TableFormat> for Format {
    fn from(f: TableFormat) -> Self {
        match f {
            TableFormat::Json => Format::Json,
            TableFormat::Md => Format::Markdown,
            TableFormat::Csv => Format::Csv,
        }
    }
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl ToString) -> Self {
        Self { code: 2, message: e.to_string() }
    }

    fn runtime(e: impl ToString) -> Self {
        Self { code: 1, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads().and_then(|()| run(cli.command)) {
        if !f.message.is_empty() {
            eprintln!("error: {}", f.message);
        }
        return ExitCode::from(f.code);
    }
    ExitCode::SUCCESS
}

fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var("BPRING_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input(format!("BPRING_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(Failure::runtime)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Catalog { p, format } => cmd_catalog(p, format),
        Command::Fuse { p, left, right, detail, format } => cmd_fuse(p, &left, &right, detail, format),
        Command::Table { p, format, out } => cmd_table(p, format, out),
        Command::Verify { p, oracle, triples, inject_fault } => cmd_verify(p, oracle, triples, inject_fault),
    }
}

fn prime(p: u32) -> Result<u32, Failure> {
    ensure_prime(p).map_err(Failure::input)
}

fn cmd_catalog(p: u32, format: DocFormat) -> Outcome {
    let p = prime(p)?;
    let cat = catalogue(p).map_err(Failure::runtime)?;
    match format {
        DocFormat::Json => {
            let entries: Vec<Value> = cat.iter().map(catalog_json).collect();
            let doc = json!({ "p": p, "entries": entries });
            println!("{}", serde_json::to_string_pretty(&doc).map_err(Failure::runtime)?);
        }
        DocFormat::Md => print!("{}", catalog_markdown(p, &cat)),
    }
    Ok(())
}

fn label_of(b: &BimoduleData) -> String {
    b.label.map_or_else(|| "?".into(), |l| l.to_string())
}

fn catalog_json(b: &BimoduleData) -> Value {
    let names = &b.object_names;
    let left: Vec<Vec<&str>> =
        (0..b.p).map(|g| (0..b.object_count()).map(|m| names[b.left(g, m)].as_str()).collect()).collect();
    let right: Vec<Vec<&str>> =
        (0..b.object_count()).map(|m| (0..b.p).map(|h| names[b.right(m, h)].as_str()).collect()).collect();
    json!({
        "label": label_of(b),
        "subgroup": b.subgroup.to_string(),
        "objects": names,
        "object_count": b.object_count(),
        "invertible": b.label.is_some_and(BimoduleLabel::is_invertible),
        "left_action": left,
        "right_action": right,
        "associator_exponent": b.cocycle.q,
    })
}

fn catalog_markdown(p: u32, cat: &[BimoduleData]) -> String {
    let mut s = format!("# Bimodule categories over Vec(Z_{p})\n\n");
    s.push_str("| label | subgroup | objects | associator exponent |\n|---|---|---|---|\n");
    for b in cat {
        let _ = writeln!(s, "| {} | {} | {} | {} |", label_of(b), b.subgroup, b.object_count(), b.cocycle.q);
    }
    for b in cat {
        let names = &b.object_names;
        let _ = writeln!(s, "\n## {}\n\nobjects: {}\n", label_of(b), names.join(", "));
        s.push_str("| m |");
        for g in 0..p {
            let _ = write!(s, " {g}▷m |");
        }
        for h in 0..p {
            let _ = write!(s, " m◁{h} |");
        }
        s.push('\n');
        s.push_str(&"|---".repeat(2 * p as usize + 1));
        s.push_str("|\n");
        for m in 0..b.object_count() {
            let _ = write!(s, "| {} |", names[m]);
            for g in 0..p {
                let _ = write!(s, " {} |", names[b.left(g, m)]);
            }
            for h in 0..p {
                let _ = write!(s, " {} |", names[b.right(m, h)]);
            }
            s.push('\n');
        }
    }
    s
}

fn cmd_fuse(p: u32, left: &str, right: &str, detail: bool, format: Option<DocFormat>) -> Outcome {
    let p = prime(p)?;
    let a = BimoduleLabel::parse_for(left, p).map_err(Failure::input)?;
    let b = BimoduleLabel::parse_for(right, p).map_err(Failure::input)?;
    let (m, n) = (entry(p, a), entry(p, b));
    let ctx = FusionContext::new(&m, &n).map_err(Failure::runtime)?;
    let report = ctx.report().map_err(Failure::runtime)?;
    match format {
        None if detail => print!("{}", narrative(&ctx, &report)),
        None => println!("{}", report.decomposition),
        Some(DocFormat::Json) => {
            let mut doc = json!({
                "p": p,
                "left": a.to_string(),
                "right": b.to_string(),
                "product": summands_json(&report.decomposition),
                "text": report.decomposition.to_string(),
            });
            if detail {
                doc["detail"] = detail_json(&report);
            }
            println!("{}", serde_json::to_string_pretty(&doc).map_err(Failure::runtime)?);
        }
        Some(DocFormat::Md) => {
            println!("| left | right | product |\n|---|---|---|\n| {a} | {b} | {} |", report.decomposition);
            if detail {
                println!("\n| orbit base | size | stabilizer | associator exponent | label |\n|---|---|---|---|---|");
                for o in &report.orbits {
                    println!("| {} | {} | {} | {} | {} |", o.base_name, o.size, o.stabilizer, o.exponent, o.label);
                }
            }
        }
    }
    Ok(())
}

fn summands_json(d: &Decomposition) -> Value {
    d.iter().map(|(l, m)| json!({ "label": l.to_string(), "mult": m })).collect()
}

fn detail_json(r: &FusionReport) -> Value {
    let dims: serde_json::Map<String, Value> =
        r.end_dimensions.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
    let orbits: Vec<Value> = r
        .orbits
        .iter()
        .map(|o| {
            json!({
                "base": o.base_name,
                "size": o.size,
                "stabilizer": o.stabilizer.to_string(),
                "associator_exponent": o.exponent,
                "label": o.label.to_string(),
            })
        })
        .collect();
    json!({
        "ladder_objects": r.ladder_objects,
        "components": r.components,
        "end_dimensions": dims,
        "primitive_idempotents": r.primitive_idempotents,
        "simples": r.simples,
        "orbits": orbits,
    })
}

fn narrative(ctx: &FusionContext, r: &FusionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} ⊗ {} over Vec(Z_{})", r.left, r.right, r.p);
    let _ = writeln!(s, "objects: {} ladder objects in {} connected components", r.ladder_objects, r.components);
    let dims: Vec<String> = r.end_dimensions.iter().map(|(d, c)| format!("dim {d} ×{c}")).collect();
    let _ = writeln!(s, "morphisms: End algebras {}", dims.join(", "));
    let _ = writeln!(s, "idempotents: {} primitive", r.primitive_idempotents);
    let _ = writeln!(s, "simples: {} up to isomorphism", r.simples);
    let _ = writeln!(s, "actions: {} orbits under Z_{p} x Z_{p}", r.orbits.len(), p = r.p);
    for o in &r.orbits {
        let base = ctx.kar.simples[o.base].representative.base;
        let idems = ctx.kar.idempotents[ctx.lad().object_index(base)].len();
        let _ = writeln!(
            s,
            "  orbit of {} ({idems} idempotents on its object): {} simples, stabilizer {}",
            o.base_name, o.size, o.stabilizer
        );
        let _ = writeln!(s, "    associator: ζ^{} at g = h = 1", o.exponent);
        let _ = writeln!(s, "    label: {}", o.label);
    }
    let _ = writeln!(s, "result: {}", r.decomposition);
    s
}

fn cmd_table(p: u32, format: TableFormat, out: Option<PathBuf>) -> Outcome {
    let p = prime(p)?;
    let table = build_table(p).map_err(Failure::runtime)?;
    let text = table.serialize(format.into());
    match out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(p: u32, oracle: bool, triples: bool, inject_fault: bool) -> Outcome {
    let p = prime(p)?;
    let mut table = build_table(p).map_err(Failure::runtime)?;
    if inject_fault {
        flip_one(&mut table);
    }
    let mut failed = false;
    let mut section = |name: &str, problems: Vec<String>| {
        if problems.is_empty() {
            println!("{name}: ok");
        } else {
            failed = true;
            println!("{name}: {} mismatches", problems.len());
            for line in problems {
                println!("  {line}");
            }
        }
    };
    let golden = closed_form_table(p).map_err(Failure::runtime)?;
    section("closed form", table.diff(&golden));
    section("unit", check_unit(&table));
    if oracle {
        let walls = oracle_table(p).map_err(Failure::runtime)?;
        section("wall oracle", table.diff(&walls));
    }
    if triples {
        section("associativity", check_associativity(&table));
    }
    if failed {
        return Err(Failure { code: 1, message: String::new() });
    }
    Ok(())
}

/// Moves one unit of multiplicity in the product T ⊗ L onto the wrong label.
fn flip_one(table: &mut RingTable) {
    let (a, b) = (BimoduleLabel::T, BimoduleLabel::L);
    let good = table.constant(a, b, BimoduleLabel::T);
    table.set_constant(a, b, BimoduleLabel::T, good.saturating_sub(1));
    let bad = table.constant(a, b, BimoduleLabel::R);
    table.set_constant(a, b, BimoduleLabel::R, bad + 1);
}
