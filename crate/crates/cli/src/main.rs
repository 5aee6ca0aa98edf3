use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lapsoft::canon::{connected_classes, MAX_VERTICES};
use lapsoft::catalog::CatalogSet;
use lapsoft::graph::{parse_rat, Graph};
use lapsoft::jacobi::numeric_spectrum;
use lapsoft::landscape::Landscape;
use lapsoft::quad::QuadNum;
use lapsoft::report::reproduce;
use lapsoft::spectrum::{analyze_spectrum, eigenpairs, exact_eigenspace, exact_soft_witness, soft_nodes_with_tol, Value, SOFT_TOL};
use lapsoft::subgraph::classify_case;
use lapsoft::tables::{bundled_rows, parse_closed_form, verify_appendix_tables, RowStatus, LEDGER_TEXT};
use lapsoft::transform::{parse_script, run_script, ExactPair};
use num_bigint::BigInt;
use serde_json::json;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "lapsoft", version, about = "Exact Laplacian spectra, soft nodes and graph transformations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Zero threshold for numerically known eigenvectors; agreement bound for `spectrum`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact and numeric spectrum of a graph file or catalog key such as 6.35.
    Spectrum { graph: String },
    /// Soft nodes for one eigenvalue (integer or a form like 3-sqrt2, (7+sqrt5)/2).
    Soft {
        graph: String,
        #[arg(long)]
        lambda: String,
    },
    /// Applies a transformation script to an eigenpair of the graph.
    Transform {
        graph: String,
        script: PathBuf,
        #[arg(long)]
        lambda: String,
        /// Comma-separated eigenvector; defaults to a soft witness or the first basis vector.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Connected graph classes on n vertices with their catalog keys.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Soft family, minimal members and discovered transformation edges.
    Family {
        #[arg(long)]
        lambda: i64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Checks the bundled soft-node tables against the catalog.
    VerifyTables,
    /// Splits a host graph at a vertex subset and classifies the eigenvectors.
    Subgraph {
        graph: String,
        /// Comma-separated vertices of the embedded graph.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        lambda: i64,
    },
    /// Runs every reproduction check.
    ReproducePaper,
}

/// An error in the invocation or its inputs, reported with exit status 2.
struct Usage(anyhow::Error);

enum Outcome {
    Ok(String),
    Failed(String),
}

fn load_graph(arg: &str, catalog: &CatalogSet) -> Result<Graph> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let g = Graph::parse(&text).with_context(|| format!("parsing {arg}"))?;
        return Ok(g.with_label(path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_string()));
    }
    catalog.lookup(arg).map(|e| e.graph()).map_err(|e| anyhow!("{arg}: not a file, {e}"))
}

fn parse_lambda(s: &str) -> Result<QuadNum> {
    if let Ok(n) = s.trim().parse::<i64>() {
        return Ok(QuadNum::from_int(n));
    }
    parse_closed_form(s).ok_or_else(|| anyhow!("cannot read eigenvalue '{s}'"))
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| anyhow!("'{t}': {e}"))).collect()
}

fn no_dot(format: Format, what: &str) -> Result<()> {
    if format == Format::Dot {
        bail!("{what} has no dot rendering");
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn spectrum(g: &Graph, format: Format, tol: f64) -> Result<Outcome> {
    let a = analyze_spectrum(g)?;
    let numeric: Vec<f64> = numeric_spectrum(&g.laplacian())?.iter().map(|p| p.value).collect();
    let mut exact: Vec<f64> = Vec::new();
    for e in &a.eigenvalues {
        exact.extend(std::iter::repeat_n(e.approx(), e.multiplicity));
    }
    let deviation = exact.iter().zip(&numeric).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let agree = deviation <= tol;
    let name = g.label().unwrap_or("graph").to_string();
    let out = match format {
        Format::Dot => g.to_dot(&name, None, &[]),
        Format::Json => pretty(&json!({
            "graph": g.to_json(),
            "char_poly": a.char_poly.to_strings(),
            "eigenvalues": a.eigenvalues.iter().map(|e| json!({"value": e.value.to_json(), "multiplicity": e.multiplicity})).collect::<Vec<_>>(),
            "eigenpairs": if g.is_connected() { eigenpairs(g)?.iter().map(|p| p.to_json()).collect::<Vec<_>>() } else { Vec::new() },
            "numeric": numeric,
            "max_deviation": deviation,
            "agree": agree,
        })),
        Format::Text => {
            let mut s = format!("{name}: {} vertices, {} edges\n", g.n(), g.m());
            let _ = writeln!(s, "characteristic polynomial coefficients (constant first): {}", a.char_poly.to_strings().join(" "));
            for e in &a.eigenvalues {
                let _ = writeln!(s, "  {:<32} x{}  ~ {:.10}", e.value.to_string(), e.multiplicity, e.approx());
            }
            let _ = writeln!(s, "Jacobi: {}", numeric.iter().map(|x| format!("{x:.10}")).collect::<Vec<_>>().join(" "));
            let _ = writeln!(s, "max deviation {deviation:.2e} (tolerance {tol:e}): {}", if agree { "agree" } else { "DISAGREE" });
            s
        }
    };
    Ok(if agree { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

fn soft(g: &Graph, lambda: &str, format: Format, tol: f64) -> Result<Outcome> {
    let q = parse_lambda(lambda)?;
    let value = Value::from_quad(&q).ok_or_else(|| anyhow!("'{lambda}' is not integer or quadratic"))?;
    let r = soft_nodes_with_tol(g, &value, tol)?;
    let name = g.label().unwrap_or("graph").to_string();
    Ok(Outcome::Ok(match format {
        Format::Json => pretty(&r.to_json()),
        Format::Dot => g.to_dot(&name, None, &r.soft),
        Format::Text => {
            let mut s = format!("{name} at {}: eigenspace dimension {}\n", r.eigenvalue, r.dimension);
            let _ = writeln!(s, "soft nodes: {}", r.soft.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            for w in &r.witnesses {
                let v: Vec<String> = match &w.vector {
                    lapsoft::spectrum::EigenVector::Exact(x) => x.iter().map(ToString::to_string).collect(),
                    lapsoft::spectrum::EigenVector::Numeric(x) => x.iter().map(|v| format!("{v:.6}")).collect(),
                };
                let _ = writeln!(s, "  vertex {}: ({})", w.vertex, v.join(", "));
            }
            s
        }
    }))
}

fn initial_pair(g: &Graph, lambda: &str, vector: Option<&str>) -> Result<ExactPair> {
    let q = parse_lambda(lambda)?;
    let v = match vector {
        Some(text) => text.split(',').map(|t| parse_rat(t.trim()).map(QuadNum::from_rat)).collect::<lapsoft::error::Result<Vec<_>>>()?,
        None => {
            let basis = exact_eigenspace(g, &q)?;
            if basis.is_empty() {
                bail!("{q} is not an eigenvalue of the input");
            }
            (0..g.n()).find_map(|s| exact_soft_witness(&basis, s)).unwrap_or_else(|| basis[0].clone())
        }
    };
    if v.len() != g.n() {
        bail!("vector has {} entries for {} vertices", v.len(), g.n());
    }
    Ok(ExactPair::new(q, v))
}

fn transform(g: &Graph, script: &Path, lambda: &str, vector: Option<&str>, format: Format) -> Result<Outcome> {
    no_dot(format, "transform")?;
    let text = std::fs::read_to_string(script).with_context(|| format!("reading {}", script.display()))?;
    let ops = parse_script(&text)?;
    let pair = initial_pair(g, lambda, vector)?;
    let records = run_script(g, &pair, &ops)?;
    let ok = records.iter().all(|r| r.verified);
    let out = match format {
        Format::Json => pretty(&json!(records.iter().map(|r| r.to_json()).collect::<Vec<_>>())),
        _ => {
            let mut s = String::new();
            for r in &records {
                let _ = writeln!(
                    s,
                    "{}: {} -> {} on {} vertices, {} edges, verified {}{}",
                    r.kind,
                    r.input_pair.value,
                    r.output_pair.value,
                    r.output.n(),
                    r.output.m(),
                    r.verified,
                    if r.flags.is_empty() { String::new() } else { format!(" [{}]", r.flags.join("; ")) }
                );
            }
            if let Some(last) = records.last() {
                let v: Vec<String> = last.output_pair.vector.iter().map(ToString::to_string).collect();
                let _ = write!(s, "final eigenvector ({})\n{}", v.join(", "), last.output.to_text());
            }
            s
        }
    };
    Ok(if ok { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

fn enumerate(n: usize, catalog: &CatalogSet, format: Format) -> Result<Outcome> {
    no_dot(format, "enumerate")?;
    if n == 0 || n > 7 {
        bail!("--n must lie in 1..=7");
    }
    let classes = connected_classes(n)?;
    Ok(Outcome::Ok(match format {
        Format::Json => pretty(&json!(classes
            .iter()
            .map(|c| json!({"class": c.to_string(), "edges": c.to_graph().edge_list(), "catalog": catalog.keys_for_class(c)}))
            .collect::<Vec<_>>())),
        _ => {
            let mut s = format!("{} connected classes on {n} vertices\n", classes.len());
            for c in classes {
                let edges: Vec<String> = c.to_graph().edge_list().iter().map(|(i, j)| format!("{i}{j}")).collect();
                let _ = writeln!(s, "{c}  [{}]  {}", catalog.keys_for_class(c).join(","), edges.join(" "));
            }
            s
        }
    }))
}

fn family(lambda: i64, n_max: usize, catalog: &CatalogSet, format: Format) -> Result<Outcome> {
    if n_max > MAX_VERTICES {
        bail!("--n-max is capped at {MAX_VERTICES}");
    }
    let l = Landscape::compute(lambda, n_max, catalog)?;
    Ok(Outcome::Ok(match format {
        Format::Json => pretty(&l.to_json()),
        Format::Dot => l.to_dot(),
        Format::Text => l.to_text(),
    }))
}

fn verify_tables(catalog: &CatalogSet, format: Format) -> Result<Outcome> {
    no_dot(format, "verify-tables")?;
    let report = verify_appendix_tables(&bundled_rows()?, catalog)?;
    let diff = report.ledger_diff(LEDGER_TEXT);
    let out = match format {
        Format::Json => {
            let mut v = report.to_json();
            v["ledger_diff"] = json!(diff);
            pretty(&v)
        }
        _ => {
            let mut s = format!(
                "{} rows: {} exact, {} up to scaling, {} failing, {} unparseable\n",
                report.checks.len(),
                report.count(RowStatus::ExactPass),
                report.count(RowStatus::PassUpToScaling),
                report.count(RowStatus::Fail),
                report.count(RowStatus::Unparseable)
            );
            for (t, n, p) in report.per_table() {
                let _ = writeln!(s, "  {t}: {p}/{n} exact");
            }
            let _ = writeln!(s, "ledger diff: {} lines", diff.len());
            for l in &diff {
                let _ = writeln!(s, "  {l}");
            }
            s.push_str(&report.ledger());
            s
        }
    };
    Ok(if diff.is_empty() { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

fn subgraph(g: &Graph, sub: &str, lambda: i64, format: Format) -> Result<Outcome> {
    no_dot(format, "subgraph")?;
    let d = classify_case(g, &parse_list(sub)?, &BigInt::from(lambda))?;
    Ok(Outcome::Ok(match format {
        Format::Json => pretty(&d.to_json()),
        _ => {
            let s = &d.split;
            let mut out = format!(
                "inner {:?}, outer {:?}, boundary sizes p = {}, p' = {}\n",
                s.inner, s.outer, s.p, s.p_prime
            );
            let _ = writeln!(out, "Delta:");
            for i in 0..d.delta.rows() {
                let row: Vec<String> = d.delta.row(i).iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  {}", row.join(" "));
            }
            let _ = writeln!(out, "lambda {} in the outer spectrum: {}", d.lambda, d.lambda_in_outer_spectrum);
            for c in &d.cases {
                let x: Vec<String> = c.x.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "  X = ({}): case {}{}",
                    x.join(", "),
                    c.case.label(),
                    c.lambda_prime.as_ref().map(|l| format!(", lambda' = {l}")).unwrap_or_default()
                );
            }
            let _ = writeln!(out, "dichotomy violations: {}", d.dichotomy.violations());
            out
        }
    }))
}

fn reproduce_paper(catalog: &CatalogSet, format: Format) -> Result<Outcome> {
    no_dot(format, "reproduce-paper")?;
    let r = reproduce(catalog)?;
    eprint!("{}", r.timings());
    let out = match format {
        Format::Json => pretty(&r.to_json()),
        _ => r.to_text(),
    };
    Ok(if r.passed() { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

fn run(cli: &Cli) -> std::result::Result<Outcome, Usage> {
    let usage = Usage;
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| usage(e.into()))?;
    }
    let catalog = CatalogSet::bundled().map_err(|e| usage(e.into()))?;
    let f = cli.format;
    let r = match &cli.command {
        Command::Spectrum { graph } => load_graph(graph, &catalog).and_then(|g| spectrum(&g, f, cli.tol.unwrap_or(1e-9))),
        Command::Soft { graph, lambda } => load_graph(graph, &catalog).and_then(|g| soft(&g, lambda, f, cli.tol.unwrap_or(SOFT_TOL))),
        Command::Transform { graph, script, lambda, vector } => {
            load_graph(graph, &catalog).and_then(|g| transform(&g, script, lambda, vector.as_deref(), f))
        }
        Command::Enumerate { n } => enumerate(*n, &catalog, f),
        Command::Family { lambda, n_max } => family(*lambda, *n_max, &catalog, f),
        Command::VerifyTables => verify_tables(&catalog, f),
        Command::Subgraph { graph, sub, lambda } => load_graph(graph, &catalog).and_then(|g| subgraph(&g, sub, *lambda, f)),
        Command::ReproducePaper => reproduce_paper(&catalog, f),
    };
    r.map_err(usage)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(Outcome::Ok(t)) => (t, 0),
        Ok(Outcome::Failed(t)) => (t, 1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(cli.output.as_deref(), &text) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
