use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use puiseux::parse::{parse_poly, PolyExpr};
use puiseux::semigroup::{
    check_invariance, partition_branches, semigroup_window, InvarianceReport, SubringSpec,
    ValueWindow, DEFAULT_ORBIT_CAP,
};
use puiseux::series::{QuadJson, SeriesJson};
use puiseux::solver::{expand_roots, Caps, RootExpansion, YPoly};
use puiseux::{Error, ExpVec, QuadReal, Series, Weight};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "puiseux",
    version,
    about = "Fractional power series roots, branches and value semigroups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,

    /// Weight vector, e.g. `1,0+1*sqrt(2)`. Defaults to `1` for one variable.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    omega: Vec<String>,

    /// Truncation bound for the roots.
    #[arg(long, global = true, default_value = "4")]
    trunc: String,

    #[arg(long, global = true, default_value_t = Caps::default().depth)]
    depth_cap: usize,

    #[arg(long, global = true, default_value_t = Caps::default().denominator)]
    denominator_cap: u64,

    #[arg(long, global = true, default_value_t = Caps::default().conductor)]
    conductor_cap: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: u64,

    /// `formal` or `cone:g1;g2;...` with comma-separated integer generators.
    #[arg(long, global = true, default_value = "formal")]
    subring: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Root index, or `all-in-branch`.
    #[arg(long, global = true, default_value = "0")]
    root: String,

    /// Weight bound of semigroup windows; defaults to the truncation bound.
    #[arg(long, global = true)]
    bound: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand all roots of a monic polynomial in y.
    Roots { poly: String },
    /// Group the roots into Galois orbits.
    Branches { poly: String },
    /// Window of the value semigroup of a root.
    Semigroup { poly: String },
    /// Evaluate h at a root and report its value.
    Eval { poly: String, h: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure {
    code: String,
    message: String,
    usage: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code().to_string(),
            message: e.to_string(),
            usage: e.is_usage(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: "usage".into(),
        message: message.into(),
        usage: true,
    }
}

struct Output {
    text: String,
    json: Value,
}

struct Setup {
    omega: Arc<Weight>,
    f: YPoly,
    trunc: QuadReal,
    roots: Vec<RootExpansion>,
}

fn setup(cli: &Cli, poly: &str) -> Result<Setup, Failure> {
    let expr = parse_poly(poly)?.monic()?;
    let omega = weight(cli, &expr)?;
    let f = expr.to_ypoly(&omega)?;
    let trunc = QuadReal::parse(&cli.trunc)?;
    let caps = Caps {
        depth: cli.depth_cap,
        denominator: cli.denominator_cap,
        conductor: cli.conductor_cap,
    };
    let roots = expand_roots(&f, &trunc, &caps)?;
    Ok(Setup {
        omega,
        f,
        trunc,
        roots,
    })
}

fn weight(cli: &Cli, expr: &PolyExpr) -> Result<Arc<Weight>, Failure> {
    if cli.omega.is_empty() {
        if expr.nvars() > 1 {
            return Err(usage("--omega is required with more than one variable"));
        }
        return Ok(Arc::new(Weight::parse(&["1"])?));
    }
    Ok(Arc::new(Weight::parse(&cli.omega)?))
}

fn series_json(s: &Series) -> Value {
    serde_json::to_value(SeriesJson::from(s)).expect("plain data")
}

fn exp_json(e: &ExpVec) -> Value {
    json!(e
        .entries()
        .iter()
        .map(puiseux::scalar::format_rat)
        .collect::<Vec<_>>())
}

fn cmd_roots(cli: &Cli, poly: &str) -> Result<Output, Failure> {
    let s = setup(cli, poly)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (i, r) in s.roots.iter().enumerate() {
        text += &format!(
            "root {i} (multiplicity {}, {}): {}\n",
            r.multiplicity,
            if r.exact { "exact" } else { "truncated" },
            r.series
        );
        items.push(json!({
            "index": i,
            "multiplicity": r.multiplicity,
            "exact": r.exact,
            "series": series_json(&r.series),
        }));
    }
    Ok(Output {
        text,
        json: json!({ "roots": items }),
    })
}

fn cmd_branches(cli: &Cli, poly: &str) -> Result<Output, Failure> {
    let s = setup(cli, poly)?;
    let part = partition_branches(&s.roots, &s.trunc, cli.orbit_cap)?;
    let mut text = format!(
        "{} branch(es), compared up to weight {}\n",
        part.branches.len(),
        s.trunc
    );
    for (b, branch) in part.branches.iter().enumerate() {
        let members: Vec<String> = branch.members.iter().map(usize::to_string).collect();
        text += &format!(
            "branch {b} (k = {}): roots {}\n",
            branch.k,
            members.join(", ")
        );
        for &i in &branch.members {
            text += &format!("  {i}: {}\n", s.roots[i].series);
        }
    }
    for w in &part.warnings {
        text += &format!("warning: {w}\n");
    }
    let branches: Vec<Value> = part
        .branches
        .iter()
        .map(|b| json!({ "members": b.members, "k": b.k }))
        .collect();
    Ok(Output {
        text,
        json: json!({
            "compare_bound": QuadJson::from(&s.trunc),
            "branches": branches,
            "warnings": part.warnings,
        }),
    })
}

fn window_text(w: &ValueWindow) -> String {
    w.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn report_json(r: &InvarianceReport) -> Value {
    json!({
        "windows": r.windows.iter().map(|(i, w)| json!({ "root": i, "window": w.to_json_value() })).collect::<Vec<_>>(),
        "pairs": r.pairs.iter().map(|p| json!({
            "first": p.first,
            "second": p.second,
            "equal": p.equal,
            "discrepancy": p.discrepancy.as_ref().map(exp_json),
        })).collect::<Vec<_>>(),
        "invariant": r.invariant(),
    })
}

fn cmd_semigroup(cli: &Cli, poly: &str) -> Result<Output, Failure> {
    let subring = SubringSpec::parse(&cli.subring)?;
    let selector = cli.root.trim();
    let index = if selector == "all-in-branch" {
        None
    } else {
        Some(selector.parse::<usize>().map_err(|_| {
            usage(format!(
                "--root must be an index or all-in-branch, got {selector:?}"
            ))
        })?)
    };
    let s = setup(cli, poly)?;
    let bound = match &cli.bound {
        Some(b) => QuadReal::parse(b)?,
        None => s.trunc.clone(),
    };
    if let Some(i) = index {
        let root = s.roots.get(i).ok_or_else(|| {
            usage(format!(
                "root {i} does not exist; there are {}",
                s.roots.len()
            ))
        })?;
        let w = semigroup_window(&root.series, &s.f, &subring, &bound)?;
        return Ok(Output {
            text: format!("root {i}: {}\n{}", root.series, window_text(&w)),
            json: json!({ "root": i, "window": w.to_json_value() }),
        });
    }
    let part = partition_branches(&s.roots, &s.trunc, cli.orbit_cap)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (b, branch) in part.branches.iter().enumerate() {
        let r = check_invariance(&s.f, &s.roots, branch, &subring, &bound)?;
        let members: Vec<String> = branch.members.iter().map(usize::to_string).collect();
        text += &format!("branch {b}: roots {}\n", members.join(", "));
        for (i, w) in &r.windows {
            text += &format!("root {i}:\n{}", window_text(w));
        }
        for p in r.pairs.iter().filter(|p| !p.equal) {
            if let Some(e) = &p.discrepancy {
                text += &format!("roots {} and {} differ at {e}\n", p.first, p.second);
            }
        }
        text += &format!("invariant: {}\n", r.invariant());
        let mut j = report_json(&r);
        j["members"] = json!(branch.members);
        items.push(j);
    }
    for w in &part.warnings {
        text += &format!("warning: {w}\n");
    }
    Ok(Output {
        text,
        json: json!({ "branches": items, "warnings": part.warnings }),
    })
}

fn cmd_eval(cli: &Cli, poly: &str, h: &str) -> Result<Output, Failure> {
    let hexpr = parse_poly(h)?;
    let s = setup(cli, poly)?;
    let i: usize = cli.root.trim().parse().map_err(|_| {
        usage(format!(
            "--root must be an index for eval, got {:?}",
            cli.root
        ))
    })?;
    let root = s.roots.get(i).ok_or_else(|| {
        usage(format!(
            "root {i} does not exist; there are {}",
            s.roots.len()
        ))
    })?;
    if hexpr.is_zero() {
        return Err(Error::Undetermined.into());
    }
    let hp = hexpr.to_ypoly(&s.omega)?;
    let value = hp
        .with_precision(root.series.trunc())?
        .evaluate(&root.series)?;
    if value.is_zero() {
        return Err(Error::Undetermined.into());
    }
    let nu = value.valuation()?;
    Ok(Output {
        text: format!("h(root {i}) = {value}\nvalue: {nu}\n"),
        json: json!({ "root": i, "series": series_json(&value), "value": exp_json(&nu) }),
    })
}

fn wants_json(args: &[String]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn fail(f: Failure, json_mode: bool) -> ExitCode {
    if json_mode {
        println!(
            "{}",
            json!({ "error": { "code": f.code, "message": f.message } })
        );
    } else {
        eprintln!("error: {}", f.message);
    }
    ExitCode::from(if f.usage { 2 } else { 1 })
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() || !wants_json(&args) {
                e.exit();
            }
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            return fail(usage(message.join(" ").trim_start_matches("error: ")), true);
        }
    };
    let json_mode = cli.format == Format::Json;
    let result = match &cli.cmd {
        Command::Roots { poly } => cmd_roots(&cli, poly),
        Command::Branches { poly } => cmd_branches(&cli, poly),
        Command::Semigroup { poly } => cmd_semigroup(&cli, poly),
        Command::Eval { poly, h } => cmd_eval(&cli, poly, h),
    };
    match result {
        Ok(out) => {
            if json_mode {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => fail(f, json_mode),
    }
}
