//! Command-line interface. Exit codes: 0 affirmative or success, 1 negative
//! verdict, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dmkit_core::catalog::{excluded_minor_set, make_named, twist_table, ExminorClassId};
use dmkit_core::census::{Mode, TheoremId};
use dmkit_core::gf2::{d_of_c, is_binary_dm};
use dmkit_core::higgs::{
    build_higgs_dm, classify_higgs, higgs_lift, HiggsClassification, HiggsIndexSet,
};
use dmkit_core::latticepath::{enumerate_paths, lpdm, region_dual, region_minor, MinorOp};
use dmkit_core::matroid::is_matroid;
use dmkit_core::minor_scan::{classify_by_exminors, Verdict};
use dmkit_core::stacks::{classify_stack, StackClassification};
use dmkit_core::{Mask, Matroid, SetSystem};
use serde_json::{json, Value};

use crate::census_runner::{self, RunConfig, Task};
use crate::format::{self, Format, MinorWitnessJson, ReportJson, SeWitnessJson};
use crate::svg::region_svg;

#[derive(Parser, Debug)]
#[command(
    name = "dmkit",
    version,
    about = "Delta-matroids and set systems on small ground sets"
)]
pub struct Cli {
    /// Print verdicts and reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Serialization for set-system output.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide membership in a class directly.
    Check {
        #[arg(long, value_enum)]
        class: CheckClass,
        file: PathBuf,
    },
    /// The minor deleting one set and contracting another.
    Minor {
        #[arg(long, value_delimiter = ',', default_value = "")]
        delete: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        contract: Vec<String>,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Partial dual with respect to a set.
    Twist {
        #[arg(long, value_delimiter = ',', default_value = "")]
        set: Vec<String>,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Twist by the whole ground set.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Membership via the excluded minors of a class.
    Scan {
        #[arg(long)]
        class: String,
        file: PathBuf,
    },
    #[command(subcommand)]
    Higgs(HiggsCmd),
    #[command(subcommand)]
    Lattice(LatticeCmd),
    #[command(subcommand)]
    Stack(StackCmd),
    #[command(subcommand)]
    Binary(BinaryCmd),
    #[command(subcommand)]
    Census(CensusCmd),
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckClass {
    Delta,
    Even,
    EvenDelta,
    Matroid,
    Higgs,
    FullHiggs,
    EvenHiggs,
    Binary,
    MatroidStack,
    Paving,
    SparsePaving,
    Quotient,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// The quotient matroid.
    #[arg(long)]
    quotient: PathBuf,
    /// The matroid it is a quotient of.
    #[arg(long)]
    lift: PathBuf,
}

#[derive(Subcommand, Debug)]
enum HiggsCmd {
    /// The i-th Higgs lift of a quotient pair.
    Lift {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The Higgs lift delta-matroid for an index set.
    Build {
        #[command(flatten)]
        pair: PairArgs,
        /// Comma-separated indices; all of 0..=k when omitted.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether a set system is a Higgs lift delta-matroid, and which.
    Classify { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Delete,
    Contract,
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// The lattice path delta-matroid of a region.
    Build {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the region.
    Svg {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The reflected region, whose delta-matroid is the dual.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The region of a single-element minor.
    Minor {
        #[arg(long)]
        element: usize,
        #[arg(long, value_enum)]
        op: OpArg,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Number of paths in the region.
    Paths { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum StackCmd {
    /// Flags and per-layer diagnosis.
    Classify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum BinaryCmd {
    /// Whether a delta-matroid is binary.
    Check { file: PathBuf },
    /// The delta-matroid of a symmetric GF(2) matrix.
    Dofc {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
    /// Sample this many families instead of enumerating all.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write checkpoints to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from a checkpoint file.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Permit the hours-long exhaustive run on five elements.
    #[arg(long)]
    long_run: bool,
}

#[derive(Subcommand, Debug)]
enum CensusCmd {
    /// Compare a direct oracle with an excluded-minor scan.
    Run {
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        args: CensusArgs,
    },
    /// Count systems per class.
    Count {
        #[command(flatten)]
        args: CensusArgs,
    },
    /// List registered theorem ids.
    Theorems,
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// The excluded minors of a class.
    Dump {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// A named system such as `T3*{b,c}` or `S5`.
    Show {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The twist classes of `T_i`.
    Table { index: usize },
}

struct Ctx<'a> {
    json: bool,
    format: Format,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn print(&mut self, human: &str, value: Value) -> anyhow::Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string(&value)?)?;
        } else {
            writeln!(self.out, "{human}")?;
        }
        Ok(())
    }

    fn emit(&mut self, text: &str, output: &Option<PathBuf>) -> anyhow::Result<()> {
        match output {
            Some(p) => fs::write(p, format!("{text}\n"))
                .with_context(|| format!("writing {}", p.display()))?,
            None => writeln!(self.out, "{text}")?,
        }
        Ok(())
    }

    fn emit_system(&mut self, s: &SetSystem, output: &Option<PathBuf>) -> anyhow::Result<()> {
        let text = format::serialize(s, self.format);
        self.emit(&text, output)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_system(path: &Path) -> anyhow::Result<SetSystem> {
    format::parse_set_system(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_proper(path: &Path) -> anyhow::Result<SetSystem> {
    let s = load_system(path)?;
    if !s.is_proper() {
        bail!("{}: the set system has no feasible sets", path.display());
    }
    Ok(s)
}

fn load_matroid(path: &Path) -> anyhow::Result<Matroid> {
    Matroid::new(load_proper(path)?).with_context(|| format!("{} is not a matroid", path.display()))
}

fn load_region(path: &Path) -> anyhow::Result<dmkit_core::latticepath::Region> {
    format::parse_region(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn mask_of(s: &SetSystem, labels: &[String], flag: &str) -> anyhow::Result<Mask> {
    let refs: Vec<&str> = labels
        .iter()
        .map(String::as_str)
        .filter(|l| !l.is_empty())
        .collect();
    s.mask_of(&refs).with_context(|| format!("--{flag}"))
}

fn verdict_code(v: bool) -> i32 {
    if v {
        0
    } else {
        1
    }
}

fn higgs_json(c: &HiggsClassification) -> Value {
    let kind = match c {
        HiggsClassification::NotHiggs { .. } => "none",
        HiggsClassification::FullHiggs { .. } => "full",
        HiggsClassification::EvenHiggs(_) => "even",
        HiggsClassification::Higgs(_) => "higgs",
    };
    let mut v = json!({ "higgs": c.is_higgs(), "kind": kind });
    if let Some(k) = c.index_set() {
        v["k"] = json!(k.k());
        v["index_set"] = json!(k.iter().collect::<Vec<_>>());
    }
    if let HiggsClassification::NotHiggs { layer } = c {
        v["layer"] = json!(layer);
    }
    v
}

fn stack_json(c: &StackClassification) -> Value {
    let flags: serde_json::Map<String, Value> = c
        .flags()
        .iter()
        .map(|&(k, v)| (k.to_string(), json!(v)))
        .collect();
    let layers: Vec<Value> = c
        .layers
        .iter()
        .map(|l| {
            json!({
                "size": l.size,
                "sets": l.sets,
                "matroid": l.matroid,
                "paving": l.paving,
                "sparse_paving": l.sparse_paving,
                "quotient_of_next": l.quotient_of_next,
            })
        })
        .collect();
    json!({ "flags": flags, "rank_gaps": c.rank_gaps, "layers": layers })
}

fn verdict_json(s: &SetSystem, class: &str, v: &Verdict) -> Value {
    let mut out = json!({ "class": class, "verdict": v.is_member() });
    if let Some(w) = v.witness() {
        out["witness"] = serde_json::to_value(MinorWitnessJson::new(s, w)).expect("plain data");
    }
    out
}

fn verdict_human(s: &SetSystem, class: &str, v: &Verdict) -> String {
    match v.witness() {
        None => format!("{class}: yes"),
        Some(w) => format!(
            "{class}: no; deleting {} and contracting {} gives {}",
            s.format_set(w.deleted),
            s.format_set(w.contracted),
            w.target_name
        ),
    }
}

fn cmd_check(ctx: &mut Ctx, class: CheckClass, file: &Path) -> anyhow::Result<i32> {
    let s = load_proper(file)?;
    let name = class
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    use CheckClass::*;
    let (ok, mut value, human) = match class {
        Delta | EvenDelta => {
            let w = s.check_delta_matroid()?;
            let even = s.is_even();
            let ok = w.is_none() && (class == Delta || even);
            let mut v = json!({ "class": name, "verdict": ok });
            let mut human = format!("{name}: {}", if ok { "yes" } else { "no" });
            if let Some(w) = &w {
                v["witness"] = serde_json::to_value(SeWitnessJson::new(&s, w))?;
                human.push_str(&format!(
                    "; exchange fails for X = {}, Y = {}, u = {}",
                    s.format_set(w.x),
                    s.format_set(w.y),
                    s.label(w.u)
                ));
            } else if !ok {
                human.push_str("; feasible sizes have mixed parity");
            }
            (ok, v, human)
        }
        Even => {
            let ok = s.is_even();
            (
                ok,
                json!({ "class": name, "verdict": ok }),
                format!("{name}: {}", yes(ok)),
            )
        }
        Matroid => {
            let ok = is_matroid(&s);
            (
                ok,
                json!({ "class": name, "verdict": ok }),
                format!("{name}: {}", yes(ok)),
            )
        }
        Higgs | FullHiggs | EvenHiggs => {
            let c = classify_higgs(&s).context("Higgs classification needs a delta-matroid")?;
            let ok = match class {
                Higgs => c.is_higgs(),
                FullHiggs => c.is_full(),
                _ => c.is_even_higgs(),
            };
            let mut v = higgs_json(&c);
            v["class"] = json!(name);
            v["verdict"] = json!(ok);
            (ok, v, format!("{name}: {}", yes(ok)))
        }
        Binary => {
            let v = is_binary_dm(&s).context("binary recognition needs a delta-matroid")?;
            (
                v.is_member(),
                verdict_json(&s, &name, &v),
                verdict_human(&s, &name, &v),
            )
        }
        MatroidStack | Paving | SparsePaving | Quotient => {
            let c = classify_stack(&s)?;
            let ok = c.delta_matroid
                && match class {
                    MatroidStack => c.matroid_stack,
                    Paving => c.paving,
                    SparsePaving => c.sparse_paving,
                    _ => c.quotient,
                };
            let mut v = stack_json(&c);
            v["class"] = json!(name);
            v["verdict"] = json!(ok);
            (ok, v, format!("{name} delta-matroid: {}", yes(ok)))
        }
    };
    if value.get("verdict").is_none() {
        value["verdict"] = json!(ok);
    }
    ctx.print(&human, value)?;
    Ok(verdict_code(ok))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_exminor_class(name: &str) -> anyhow::Result<ExminorClassId> {
    name.parse::<ExminorClassId>().map_err(|_| {
        let known: Vec<&str> = ExminorClassId::ALL.iter().map(|c| c.as_str()).collect();
        anyhow!(
            "--class: unknown class `{name}`; expected one of {}",
            known.join(", ")
        )
    })
}

fn census_config(args: &CensusArgs, task: Task) -> RunConfig {
    RunConfig {
        n: args.n,
        task,
        mode: match args.samples {
            Some(count) => Mode::Sampled {
                seed: args.seed,
                count,
            },
            None => Mode::Exhaustive,
        },
        jobs: args.jobs,
        checkpoint: args.checkpoint.clone(),
        resume: args.resume.clone(),
        long_run: args.long_run,
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Check { class, file } => cmd_check(ctx, class, &file),
        Command::Minor {
            delete,
            contract,
            file,
            output,
        } => {
            let s = load_proper(&file)?;
            let x = mask_of(&s, &delete, "delete")?;
            let y = mask_of(&s, &contract, "contract")?;
            ctx.emit_system(&s.minor(x, y)?, &output)?;
            Ok(0)
        }
        Command::Twist { set, file, output } => {
            let s = load_proper(&file)?;
            let a = mask_of(&s, &set, "set")?;
            ctx.emit_system(&s.twist(a)?, &output)?;
            Ok(0)
        }
        Command::Dual { file, output } => {
            let s = load_proper(&file)?;
            ctx.emit_system(&s.dual(), &output)?;
            Ok(0)
        }
        Command::Scan { class, file } => {
            let id = parse_exminor_class(&class)?;
            let s = load_proper(&file)?;
            let v = classify_by_exminors(&s, id)?;
            ctx.print(
                &verdict_human(&s, id.as_str(), &v),
                verdict_json(&s, id.as_str(), &v),
            )?;
            Ok(verdict_code(v.is_member()))
        }
        Command::Higgs(cmd) => match cmd {
            HiggsCmd::Lift {
                pair,
                index,
                output,
            } => {
                let (q, l) = (load_matroid(&pair.quotient)?, load_matroid(&pair.lift)?);
                ctx.emit_system(higgs_lift(&q, &l, index)?.system(), &output)?;
                Ok(0)
            }
            HiggsCmd::Build { pair, k, output } => {
                let (q, l) = (load_matroid(&pair.quotient)?, load_matroid(&pair.lift)?);
                let span = l
                    .rank()
                    .checked_sub(q.rank())
                    .ok_or_else(|| anyhow!("--quotient has larger rank than --lift"))?;
                let kset = match k {
                    Some(members) => HiggsIndexSet::new(span, members).context("--k")?,
                    None => HiggsIndexSet::full(span),
                };
                ctx.emit_system(&build_higgs_dm(&q, &l, &kset)?, &output)?;
                Ok(0)
            }
            HiggsCmd::Classify { file } => {
                let s = load_proper(&file)?;
                let c = classify_higgs(&s).context("Higgs classification needs a delta-matroid")?;
                let human = match &c {
                    HiggsClassification::NotHiggs { layer } => {
                        format!("not a Higgs lift delta-matroid (layer {layer} differs)")
                    }
                    HiggsClassification::FullHiggs { k } => {
                        format!("full Higgs lift delta-matroid, k = {k}")
                    }
                    HiggsClassification::EvenHiggs(k) => {
                        format!("even Higgs lift delta-matroid, K = {k}")
                    }
                    HiggsClassification::Higgs(k) => format!("Higgs lift delta-matroid, K = {k}"),
                };
                ctx.print(&human, higgs_json(&c))?;
                Ok(verdict_code(c.is_higgs()))
            }
        },
        Command::Lattice(cmd) => match cmd {
            LatticeCmd::Build { file, output } => {
                let l = lpdm(&load_region(&file)?)?;
                ctx.emit_system(&l.system, &output)?;
                Ok(0)
            }
            LatticeCmd::Svg { file, output } => {
                let svg = region_svg(&load_region(&file)?);
                ctx.emit(svg.trim_end(), &output)?;
                Ok(0)
            }
            LatticeCmd::Dual { file, output } => {
                let r = region_dual(&load_region(&file)?)?;
                ctx.emit(&format::region_to_json(&r), &output)?;
                Ok(0)
            }
            LatticeCmd::Minor {
                element,
                op,
                file,
                output,
            } => {
                let op = match op {
                    OpArg::Delete => MinorOp::Delete,
                    OpArg::Contract => MinorOp::Contract,
                };
                let r = region_minor(&load_region(&file)?, element, op).context("--element")?;
                ctx.emit(&format::region_to_json(&r), &output)?;
                Ok(0)
            }
            LatticeCmd::Paths { file } => {
                let r = load_region(&file)?;
                let paths = enumerate_paths(&r)?;
                ctx.print(
                    &format!("{} paths", paths.len()),
                    json!({ "paths": paths.len() }),
                )?;
                Ok(0)
            }
        },
        Command::Stack(StackCmd::Classify { file }) => {
            let s = load_proper(&file)?;
            let c = classify_stack(&s)?;
            let mut human = String::new();
            for (k, v) in c.flags() {
                human.push_str(&format!("{k}: {}\n", yes(v)));
            }
            human.push_str(&format!("rank gaps: {:?}\n", c.rank_gaps));
            for l in &c.layers {
                human.push_str(&format!(
                    "layer {}: {} sets, matroid {}, paving {}, sparse paving {}, quotient of next {}\n",
                    l.size,
                    l.sets,
                    yes(l.matroid),
                    yes(l.paving),
                    yes(l.sparse_paving),
                    l.quotient_of_next.map_or("-", yes)
                ));
            }
            ctx.print(human.trim_end(), stack_json(&c))?;
            Ok(0)
        }
        Command::Binary(cmd) => match cmd {
            BinaryCmd::Check { file } => {
                let s = load_proper(&file)?;
                let v = is_binary_dm(&s).context("binary recognition needs a delta-matroid")?;
                ctx.print(
                    &verdict_human(&s, "binary", &v),
                    verdict_json(&s, "binary", &v),
                )?;
                Ok(verdict_code(v.is_member()))
            }
            BinaryCmd::Dofc { file, output } => {
                let (labels, c) = format::parse_matrix(&read(&file)?)
                    .with_context(|| format!("parsing {}", file.display()))?;
                let d = d_of_c(&c).with_labels(labels)?;
                ctx.emit_system(&d, &output)?;
                Ok(0)
            }
        },
        Command::Census(cmd) => match cmd {
            CensusCmd::Run { theorem, args } => {
                let id: TheoremId = theorem.parse().context("--theorem")?;
                let report = census_runner::run(&census_config(&args, Task::Verify(id)))?;
                ctx.print(
                    &report.summary(),
                    serde_json::to_value(ReportJson::from_report(&report))?,
                )?;
                Ok(verdict_code(report.is_clean()))
            }
            CensusCmd::Count { args } => {
                let report = census_runner::run(&census_config(&args, Task::Count))?;
                let mut human = report.summary();
                for (k, v) in report.counts.entries() {
                    human.push_str(&format!("\n{k}: {v}"));
                }
                if matches!(census_config(&args, Task::Count).mode, Mode::Exhaustive) {
                    human.push_str(&format!(
                        "\nlower bound 2^(2^(n-1)) holds: {}",
                        yes(report.lower_bound_holds())
                    ));
                }
                ctx.print(
                    &human,
                    serde_json::to_value(ReportJson::from_report(&report))?,
                )?;
                Ok(0)
            }
            CensusCmd::Theorems => {
                let list: Vec<Value> = TheoremId::ALL
                    .iter()
                    .map(|t| json!({ "id": t.as_str(), "description": t.description() }))
                    .collect();
                let human = TheoremId::ALL
                    .iter()
                    .map(|t| format!("{:<20} {}", t.as_str(), t.description()))
                    .collect::<Vec<_>>()
                    .join("\n");
                ctx.print(&human, Value::Array(list))?;
                Ok(0)
            }
        },
        Command::Catalog(cmd) => match cmd {
            CatalogCmd::Dump { class, cap } => {
                let id = parse_exminor_class(&class)?;
                let entries: Vec<Value> = excluded_minor_set(id, cap)
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "system": serde_json::from_str::<Value>(&format::to_json(&e.system)).expect("valid json"),
                        })
                    })
                    .collect();
                writeln!(
                    ctx.out,
                    "{}",
                    serde_json::to_string(&Value::Array(entries))?
                )?;
                Ok(0)
            }
            CatalogCmd::Show { name, output } => {
                let s = make_named(&name)?;
                ctx.emit_system(&s, &output)?;
                Ok(0)
            }
            CatalogCmd::Table { index } => {
                let rows: Vec<Value> = twist_table(index)?
                    .iter()
                    .map(|e| json!({ "name": e.name, "compact": format::to_compact(&e.system) }))
                    .collect();
                let human = rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{:<12} {}",
                            r["name"].as_str().unwrap_or(""),
                            r["compact"].as_str().unwrap_or("")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                ctx.print(&human, Value::Array(rows))?;
                Ok(0)
            }
        },
    }
}

/// Parses `args`, runs the command and returns the exit code. Output goes to
/// `out`, diagnostics to standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        format: cli.format,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
