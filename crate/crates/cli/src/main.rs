mod cache;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use berezin::coeff::{table, Kind};
use berezin::enumerate::{enum_plain_stable, enum_pointed_stable, filter_class, GraphClass, WEIGHT_CAP};
use berezin::graph::GraphJson;
use berezin::graphsum::{GraphSum, TermJson};
use berezin::rational::format as fmt_rational;
use berezin::starprod::{
    assoc_check, bt_coefficients, loi_recursion_check, orbit_check, star_coefficient, BtCoefficient, LoiVerdict,
    ASSOC_CAP, BT_CAP, LOI_CAP, STAR_CAP,
};
use berezin::tensor::{invariant_form, InvariantForm, Operator, TENSOR_CAP};
use berezin::{Error, PointedMultiDigraph};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cache::Cache;

#[derive(Parser)]
#[command(name = "berezin", version, about = "Exact graph calculus for the Berezin star product")]
struct Cli {
    /// Cache directory.
    #[arg(long, global = true, env = "BEREZIN_CACHE_DIR", default_value = "cache")]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List pointed (or plain) stable graphs of a given weight.
    Enumerate {
        #[arg(long)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        /// Plain graphs without a distinguished vertex.
        #[arg(long)]
        plain: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Coefficient table: Q, R, z, r and the primed variants Qf, Rf, zf, rf.
    Coeff {
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value = "Q")]
        kind: Kind,
        /// Drop graphs with coefficient zero.
        #[arg(long)]
        nonzero: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Star-product coefficient `C_k`, or `C^BT_k` with `--bt`.
    Star {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        bt: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Invariant curvature form of `Qk`, `Rk`, `Ck` or `CBTk`.
    Tensor {
        /// Operator name, optionally with the order appended (`C3`).
        #[arg(long)]
        expr: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    Check(CheckArgs),
    /// Reproduce the reference tables and values.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Table1)]
        level: Level,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Consistency checks; exit code 1 and a JSON report on failure.
#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["assoc", "lemma_graph2", "loi", "det_oracle"])))]
struct CheckArgs {
    /// Associativity at order k.
    #[arg(long, value_name = "K")]
    assoc: Option<usize>,
    /// Orbit-counting property of two-slot substitutions (needs --weight).
    #[arg(long, requires = "weight")]
    lemma_graph2: bool,
    /// Recursion for the kernel coefficients at weight k.
    #[arg(long, value_name = "K")]
    loi: Option<usize>,
    /// Determinant against the linear-subgraph oracle (needs --weight).
    #[arg(long, requires = "weight")]
    det_oracle: bool,
    #[arg(long)]
    weight: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Con,
    Scon,
    Lambda,
}

impl From<ClassArg> for GraphClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => GraphClass::AllStable,
            ClassArg::Con => GraphClass::Connected,
            ClassArg::Scon => GraphClass::StronglyConnected,
            ClassArg::Lambda => GraphClass::Lambda,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Table1,
    Full,
}

enum Failure {
    Usage(String),
    Check(Value),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::WeightCap { .. } | Error::Unsupported(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn cap(what: &str, k: usize, cap: usize) -> Result<(), Failure> {
    if k > cap {
        return Err(Failure::Usage(format!("{what} {k} is out of scope (at most {cap})")));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn no_latex(format: Format, what: &str) -> Result<(), Failure> {
    if format == Format::Latex {
        return Err(Failure::Usage(format!("{what} has no LaTeX output")));
    }
    Ok(())
}

fn sum_text(s: &GraphSum) -> String {
    s.iter().map(|(g, c)| format!("{}\t{}\n", fmt_rational(c), g.encode())).collect()
}

fn graphs(cache: &Cache, k: usize, class: GraphClass, plain: bool) -> Result<Vec<PointedMultiDigraph>, Failure> {
    let kind = if plain { "plain" } else { "pointed" };
    let key = format!("graphs-{kind}-{}-w{k}", class.short_name());
    let rows: Vec<GraphJson> = cache.get_or_compute(&key, || -> Result<_, Failure> {
        let all = if plain { enum_plain_stable(k)? } else { enum_pointed_stable(k)? };
        Ok(filter_class(all, class).iter().map(|g| g.to_json()).collect())
    })?;
    rows.iter().map(|j| PointedMultiDigraph::from_json(j).map_err(Failure::from)).collect()
}

fn enumerate(cache: &Cache, k: usize, class: ClassArg, plain: bool, format: Format) -> Outcome {
    cap("weight", k, WEIGHT_CAP)?;
    no_latex(format, "enumerate")?;
    let class = GraphClass::from(class);
    if plain && class != GraphClass::AllStable {
        return Err(Failure::Usage("classes other than `all` apply to pointed graphs only".into()));
    }
    let list = graphs(cache, k, class, plain)?;
    Ok(match format {
        Format::Json => to_json(&json!({
            "weight": k,
            "class": class,
            "pointed": !plain,
            "count": list.len(),
            "graphs": list.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!(
                "# weight {k}, {} {}: {} graphs\n",
                class.short_name(),
                if plain { "plain" } else { "pointed" },
                list.len()
            );
            for g in &list {
                out.push_str(&g.encode());
                out.push('\n');
            }
            out
        }
    })
}

fn coeff(cache: &Cache, k: usize, kind: Kind, nonzero: bool, format: Format) -> Outcome {
    cap("weight", k, WEIGHT_CAP)?;
    no_latex(format, "coeff")?;
    let key = format!("coeff-{kind}-w{k}");
    let rows: Vec<TermJson> = cache.get_or_compute(&key, || -> Result<_, Failure> { Ok(table(k, kind)?.to_json()) })?;
    let rows: Vec<TermJson> = rows.into_iter().filter(|r| !nonzero || r.value != "0").collect();
    Ok(match format {
        Format::Json => to_json(&json!({ "weight": k, "kind": kind.to_string(), "rows": rows })),
        _ => rows
            .iter()
            .map(|r| {
                let g = PointedMultiDigraph::from_json(&r.graph).expect("cached graph");
                format!("{}\t{}\n", r.value, g.encode())
            })
            .collect(),
    })
}

fn form_json(form: &InvariantForm) -> Value {
    json!({
        "operator": form.operator.to_string(),
        "order": form.order,
        "text": form.text(),
        "latex": form.latex(),
        "terms": form.terms.iter().map(|(c, e)| json!({
            "coefficient": fmt_rational(c),
            "text": e.text,
            "latex": e.latex,
        })).collect::<Vec<_>>(),
    })
}

fn render_form(op: Operator, k: usize, format: Format) -> Outcome {
    cap("tensor order", k, TENSOR_CAP)?;
    let form = invariant_form(op, k)?;
    Ok(match format {
        Format::Json => to_json(&form_json(&form)),
        Format::Text => form.text(),
        Format::Latex => form.latex(),
    })
}

fn star(k: usize, bt: bool, format: Format) -> Outcome {
    if format == Format::Latex {
        return render_form(if bt { Operator::CBT } else { Operator::C }, k, format);
    }
    if bt {
        cap("order", k, BT_CAP)?;
        let c = bt_coefficients(k)?;
        let (presentation, sum) = match &c {
            BtCoefficient::Fused(s) => ("one-pointed", s.clone()),
            BtCoefficient::TwoPointed(s) => ("two-pointed", s.clone()),
        };
        return Ok(match format {
            Format::Json => to_json(
                &json!({ "order": k, "product": "berezin-toeplitz", "presentation": presentation, "terms": sum.to_json() }),
            ),
            _ => format!("# C^BT_{k}, {presentation}\n{}", sum_text(&sum)),
        });
    }
    cap("order", k, STAR_CAP)?;
    let c = star_coefficient(k)?;
    Ok(match format {
        Format::Json => {
            to_json(&json!({ "order": k, "product": "berezin", "presentation": "one-pointed", "terms": c.to_json() }))
        }
        _ => format!("# C_{k}\n{}", sum_text(&c)),
    })
}

fn parse_expr(expr: &str, order: Option<usize>) -> Result<(Operator, usize), Failure> {
    let split = expr.find(|c: char| c.is_ascii_digit()).unwrap_or(expr.len());
    let (name, digits) = expr.split_at(split);
    let op: Operator = name.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let inline = if digits.is_empty() {
        None
    } else {
        Some(digits.parse::<usize>().map_err(|_| Failure::Usage(format!("bad order in {expr:?}")))?)
    };
    match (inline, order) {
        (Some(a), Some(b)) if a != b => Err(Failure::Usage(format!("{expr} conflicts with --order {b}"))),
        (Some(k), _) | (None, Some(k)) => Ok((op, k)),
        (None, None) => Err(Failure::Usage("an order is required, as in C3 or --order 3".into())),
    }
}

fn check(args: &CheckArgs) -> Outcome {
    let (pass, report) = if let Some(k) = args.assoc {
        cap("order", k, ASSOC_CAP)?;
        let r = assoc_check(k)?;
        (r.pass, serde_json::to_value(&r).expect("serializable"))
    } else if let Some(k) = args.loi {
        cap("weight", k, LOI_CAP)?;
        let r = loi_recursion_check(k)?;
        (r.verdict != LoiVerdict::Fail, serde_json::to_value(&r).expect("serializable"))
    } else if args.lemma_graph2 {
        let k = args.weight.expect("required by clap");
        cap("weight", k, ASSOC_CAP)?;
        let r = orbit_check(k)?;
        (r.pass(), serde_json::to_value(&r).expect("serializable"))
    } else {
        let k = args.weight.expect("required by clap");
        cap("weight", k, WEIGHT_CAP)?;
        let r = selftest::det_oracle_check(k)?;
        (r.pass, serde_json::to_value(&r).expect("serializable"))
    };
    if pass {
        Ok(to_json(&report))
    } else {
        Err(Failure::Check(report))
    }
}

fn run_selftest(level: Level, format: Format) -> Outcome {
    no_latex(format, "selftest")?;
    let results = match level {
        Level::Table1 => vec![selftest::graph_counts()?],
        Level::Full => selftest::full()?,
    };
    let pass = results.iter().all(|r| r.pass);
    let out = match format {
        Format::Json => to_json(&results),
        _ => {
            results.iter().map(|r| format!("{} {}\n", if r.pass { "PASS" } else { "FAIL" }, r.name)).collect::<String>()
        }
    };
    if pass {
        Ok(out)
    } else {
        let failed: Vec<_> = results.into_iter().filter(|r| !r.pass).collect();
        Err(Failure::Check(serde_json::to_value(failed).expect("serializable")))
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let cache = Cache::new((!cli.no_cache).then(|| cli.cache_dir.clone()));
    match &cli.command {
        Command::Enumerate { weight, class, plain, format } => enumerate(&cache, *weight, *class, *plain, *format),
        Command::Coeff { weight, kind, nonzero, format } => coeff(&cache, *weight, *kind, *nonzero, *format),
        Command::Star { order, bt, format } => star(*order, *bt, *format),
        Command::Tensor { expr, order, format } => {
            let (op, k) = parse_expr(expr, *order)?;
            render_form(op, k, *format)
        }
        Command::Check(args) => check(args),
        Command::Selftest { level, format } => run_selftest(*level, *format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(Failure::Check(report)) => {
            println!("{}", to_json(&report));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
