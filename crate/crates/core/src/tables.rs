//! Verification harness for the bundled soft-node tables.
//!
//! Each table file carries a header (`# table:`, `# lambda:`, `# catalog:`) and rows
//! `source_line|nodes|links|catalog_id|eigenvector|connection`. Rows whose vector is
//! prose are kept and marked unparseable.

use crate::canon::permutations;
use crate::catalog::{CatalogEntry, CatalogSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::quad::{rat_to_f64, QuadNum, Rat};
use crate::spectrum::{analyze_spectrum, exact_eigenspace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value as Json};
use std::fmt;

/// Printed decimals are matched to exact vectors within this distance after
/// normalization to unit length.
pub const PRINTED_TOL: f64 = 5e-3;

pub const TABLE_FILES: [(&str, &str); 12] = [
    ("tab3", include_str!("../data/tables/tab3.txt")),
    ("tab3a", include_str!("../data/tables/tab3a.txt")),
    ("tab4", include_str!("../data/tables/tab4.txt")),
    ("tab3b", include_str!("../data/tables/tab3b.txt")),
    ("tab5", include_str!("../data/tables/tab5.txt")),
    ("tab8", include_str!("../data/tables/tab8.txt")),
    ("tab6b", include_str!("../data/tables/tab6b.txt")),
    ("tab6a", include_str!("../data/tables/tab6a.txt")),
    ("tab7", include_str!("../data/tables/tab7.txt")),
    ("tab7a", include_str!("../data/tables/tab7a.txt")),
    ("tab8a", include_str!("../data/tables/tab8a.txt")),
    ("tab7aa", include_str!("../data/tables/tab7aa.txt")),
];

/// Residual bound (sup norm, unit vector) for saying printed decimals fit some
/// eigenvector of another graph.
pub const FIT_TOL: f64 = 2e-2;

pub const LEDGER_TEXT: &str = include_str!("../data/discrepancy_ledger.txt");

#[derive(Clone, Debug, PartialEq)]
pub enum TableLambda {
    Integer(BigInt),
    /// Printed label such as `lambda_2` with its closed form.
    Closed { label: String, value: QuadNum },
}

impl fmt::Display for TableLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableLambda::Integer(n) => write!(f, "{n}"),
            TableLambda::Closed { label, value } => write!(f, "{label} = {value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub table: String,
    pub source_line: usize,
    pub nodes: usize,
    pub links: usize,
    pub catalog_id: String,
    pub vector_text: String,
    /// Exact reading of the printed entries; `None` for prose.
    pub vector: Option<Vec<Rat>>,
    pub lambda: Option<TableLambda>,
    pub connection: String,
}

/// Exact value of a decimal literal such as `-0.27`.
pub fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let r = Rat::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -r } else { r })
}

fn parse_vector(text: &str) -> Option<Vec<Rat>> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(parse_decimal).collect()
}

/// Reads `a+sqrtd`, `a-sqrtd`, `(a+sqrtd)/r` and `(a-sqrtd)/r`.
pub fn parse_closed_form(text: &str) -> Option<QuadNum> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, r) = match s.strip_prefix('(') {
        Some(rest) => {
            let (b, den) = rest.split_once(")/")?;
            (b.to_string(), den.parse::<i64>().ok()?)
        }
        None => (s.clone(), 1),
    };
    let pos = body.find("sqrt")?;
    let (head, d) = (&body[..pos], body[pos + 4..].parse::<i64>().ok()?);
    let sign = head.chars().last()?;
    let p: i64 = head[..head.len() - 1].parse().ok()?;
    let q = match sign {
        '+' => 1,
        '-' => -1,
        _ => return None,
    };
    Some(QuadNum::from_parts(&BigInt::from(p), &BigInt::from(q), d, &BigInt::from(r)))
}

fn parse_closed_note(note: &str) -> Option<TableLambda> {
    let (label, form) = note.split_once('=')?;
    Some(TableLambda::Closed { label: label.trim().to_string(), value: parse_closed_form(form)? })
}

pub fn parse_table(name: &str, text: &str) -> Result<Vec<TableRow>> {
    let mut lambda_header: Option<String> = None;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            if let Some(v) = h.trim().strip_prefix("lambda:") {
                lambda_header = Some(v.trim().to_string());
            }
            continue;
        }
        let f: Vec<&str> = line.split('|').collect();
        let bad = |m: &str| Error::Parse(format!("{name} line {}: {m}", k + 1));
        if f.len() != 6 {
            return Err(bad("expected 6 '|'-separated fields"));
        }
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("bad number"));
        let connection = f[5].trim().to_string();
        let lambda = match lambda_header.as_deref() {
            Some("irrational") => parse_closed_note(&connection),
            Some(v) => Some(TableLambda::Integer(v.parse().map_err(|_| bad("bad lambda header"))?)),
            None => return Err(bad("row before lambda header")),
        };
        rows.push(TableRow {
            table: name.to_string(),
            source_line: num(f[0])?,
            nodes: num(f[1])?,
            links: num(f[2])?,
            catalog_id: f[3].trim().to_string(),
            vector_text: f[4].trim().to_string(),
            vector: parse_vector(f[4]),
            lambda,
            connection,
        });
    }
    Ok(rows)
}

pub fn bundled_rows() -> Result<Vec<TableRow>> {
    let mut out = Vec::new();
    for (name, text) in TABLE_FILES {
        out.extend(parse_table(name, text)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowStatus {
    ExactPass,
    PassUpToScaling,
    Fail,
    Unparseable,
}

impl RowStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RowStatus::ExactPass => "exact-pass",
            RowStatus::PassUpToScaling => "pass-up-to-scaling",
            RowStatus::Fail => "fail",
            RowStatus::Unparseable => "unparseable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RowCheck {
    pub row: TableRow,
    pub status: RowStatus,
    /// Machine-generated explanation for every status other than exact-pass.
    pub diagnosis: String,
    /// Smallest relabelling `p` (table vertex `a` read as catalog vertex `p[a]`, 1-based)
    /// under which the printed vector fits the printed eigenvalue, when the catalog
    /// labelling itself does not.
    pub relabelling: Option<Vec<usize>>,
    /// Remarks that do not affect the status, such as an eigenvalue index that
    /// disagrees with the printed label.
    pub notes: Vec<String>,
}

impl RowCheck {
    pub fn ledger_line(&self) -> String {
        format!(
            "{}|{}|{}|{}|{}",
            self.row.table,
            self.row.source_line,
            self.row.catalog_id,
            self.status.label(),
            self.diagnosis
        )
    }

    pub fn to_json(&self) -> Json {
        json!({
            "table": self.row.table,
            "source_line": self.row.source_line,
            "catalog_id": self.row.catalog_id,
            "lambda": self.row.lambda.as_ref().map(ToString::to_string),
            "vector": self.row.vector_text,
            "connection": self.row.connection,
            "status": self.status.label(),
            "diagnosis": self.diagnosis,
            "relabelling": self.relabelling,
            "notes": self.notes,
        })
    }
}

fn ints(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let xs: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return xs;
    }
    let g = if xs.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) { -g } else { g };
    xs.into_iter().map(|x| x / &g).collect()
}

fn tuple(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn laplacian(g: &Graph) -> Matrix<Rat> {
    g.laplacian().matrix().clone()
}

fn is_eigen(l: &Matrix<Rat>, lam: &Rat, v: &[Rat]) -> bool {
    v.iter().any(|x| !x.is_zero()) && l.mul_vec(v).iter().zip(v).all(|(a, b)| a == &(b * lam))
}

/// Orthogonal projection of `v` onto the span of `basis`, exactly.
fn project(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let dot = |a: &[Rat], b: &[Rat]| a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y);
    let gram = Matrix::from_rows((0..k).map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect()).collect());
    let rhs: Vec<Rat> = basis.iter().map(|b| dot(b, v)).collect();
    let c = gram.solve(&rhs)?;
    let n = v.len();
    Some((0..n).map(|i| (0..k).fold(Rat::zero(), |s, j| s + &c[j] * &basis[j][i])).collect())
}

fn sorted_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p = permutations(n);
    p.sort();
    p
}

fn relabel<T: Clone>(v: &[T], p: &[usize]) -> Vec<T> {
    let mut w = v.to_vec();
    for (a, &b) in p.iter().enumerate() {
        w[b] = v[a].clone();
    }
    w
}

fn one_based(p: &[usize]) -> Vec<usize> {
    p.iter().map(|x| x + 1).collect()
}

fn fmt_perm(p: &[usize]) -> String {
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Exact search for a relabelling making `v` a `lam` eigenvector of `l`.
fn relabel_fit_exact(l: &Matrix<Rat>, lam: &Rat, v: &[Rat]) -> Option<Vec<usize>> {
    sorted_permutations(v.len()).into_iter().find(|p| is_eigen(l, lam, &relabel(v, p))).map(|p| one_based(&p))
}

/// Relabelling under which the printed decimals match a unit exact eigenvector.
fn relabel_fit_numeric(exact: &[f64], printed: &[f64]) -> Option<Vec<usize>> {
    sorted_permutations(printed.len())
        .into_iter()
        .find(|p| max_diff(&unit(&relabel(printed, p)), exact) <= PRINTED_TOL)
        .map(|p| one_based(&p))
}

/// Explains why `v` is not a `lambda` eigenvector of `entry`.
fn diagnose_integer(
    entry: &CatalogEntry,
    lam: &BigInt,
    v: &[Rat],
    catalog: &CatalogSet,
    links: usize,
) -> Result<(String, Option<Vec<usize>>)> {
    let g = entry.graph();
    let l = laplacian(&g);
    let lam_r = Rat::from_integer(lam.clone());
    let mut parts = Vec::new();
    let res: Vec<Rat> = l.mul_vec(v).iter().zip(v).map(|(a, b)| a - b * &lam_r).collect();
    let support: Vec<String> = res.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, _)| (i + 1).to_string()).collect();
    parts.push(format!("residual nonzero at vertices {}", support.join(",")));
    if v.iter().all(Zero::is_zero) {
        parts.push("vector is zero".into());
    }
    let spec = analyze_spectrum(&g)?;
    if let Some(mu) = spec.integer_roots.iter().find(|mu| is_eigen(&l, &Rat::from_integer((*mu).clone()), v)) {
        parts.push(format!("vector is an eigenvector for {mu} instead"));
    }
    let basis = l.shifted(&lam_r).nullspace();
    if basis.is_empty() {
        let ints_: Vec<String> = spec.integer_roots.iter().map(ToString::to_string).collect();
        parts.push(format!("{lam} is not an eigenvalue of {} (integer eigenvalues {})", entry.key, ints_.join(",")));
    } else {
        if let Some(p) = project(&basis, v).filter(|p| p.iter().any(|x| !x.is_zero())) {
            parts.push(format!("nearest valid eigenvector {}", tuple(&ints(&p))));
        }
        let b: Vec<String> = basis.iter().map(|b| tuple(&ints(b))).collect();
        parts.push(format!("eigenspace basis {}", b.join(" ")));
    }
    let fits: Vec<String> = catalog
        .entries()
        .filter(|e| e.n == v.len() && e.key != entry.key)
        .filter(|e| is_eigen(&laplacian(&e.graph()), &lam_r, v))
        .map(|e| e.key.clone())
        .collect();
    if !fits.is_empty() {
        parts.push(format!("vector fits {}", fits.join(",")));
    }
    let relabelled = relabel_fit_exact(&l, &lam_r, v);
    if let Some(p) = &relabelled {
        parts.push(format!("fits {} relabelled by vertex map {}", entry.key, fmt_perm(p)));
    }
    if entry.m != links {
        parts.push(format!("printed {links} links, catalog has {}", entry.m));
    }
    Ok((parts.join("; "), relabelled))
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let k = v.iter().enumerate().fold(0, |k, (i, x)| if x.abs() > v[k].abs() + 1e-12 { i } else { k });
    let s = if v[k] < 0.0 { -1.0 } else { 1.0 };
    v.iter().map(|x| s * x / n).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Catalog graphs on which `v` is an approximate eigenvector, with the Rayleigh quotient.
fn numeric_fits(catalog: &CatalogSet, v: &[f64]) -> Vec<String> {
    let mut out = Vec::new();
    for e in catalog.entries().filter(|e| e.n == v.len()) {
        let g = e.graph();
        let mut lv = vec![0.0; v.len()];
        for ((i, j), w) in g.edges() {
            let (w, d) = (rat_to_f64(w), v[i - 1] - v[j - 1]);
            lv[i - 1] += w * d;
            lv[j - 1] -= w * d;
        }
        let mu: f64 = lv.iter().zip(v).map(|(a, b)| a * b).sum();
        if lv.iter().zip(v).all(|(a, b)| (a - mu * b).abs() <= FIT_TOL) {
            out.push(format!("{} (mu ~ {mu:.3})", e.key));
        }
    }
    out
}

type ClosedOutcome = (RowStatus, String, Option<Vec<usize>>, Vec<String>);

fn check_closed(catalog: &CatalogSet, entry: &CatalogEntry, label: &str, value: &QuadNum, v: &[Rat]) -> Result<ClosedOutcome> {
    let g = entry.graph();
    let printed = unit(&v.iter().map(rat_to_f64).collect::<Vec<_>>());
    let mut notes = Vec::new();
    let spec = analyze_spectrum(&g)?;
    let mut seen = Vec::new();
    for e in &spec.eigenvalues {
        for _ in 0..e.multiplicity {
            seen.push(e.value.approx());
        }
    }
    let pos = seen.iter().position(|x| (x - value.to_f64()).abs() < 1e-9);
    match (pos, label.strip_prefix("lambda_").and_then(|k| k.parse::<usize>().ok())) {
        (Some(p), Some(k)) if p + 1 != k => notes.push(format!("printed label {label}, ascending index {}", p + 1)),
        (None, _) => return Ok((RowStatus::Fail, format!("{value} is not an eigenvalue of {}", entry.key), None, notes)),
        _ => {}
    }
    let basis = exact_eigenspace(&g, value)?;
    let mut best = f64::INFINITY;
    for b in &basis {
        let exact = unit(&b.iter().map(QuadNum::to_f64).collect::<Vec<_>>());
        best = best.min(max_diff(&exact, &printed));
    }
    if basis.len() == 1 && best <= PRINTED_TOL {
        let exact: Vec<String> = basis[0].iter().map(ToString::to_string).collect();
        return Ok((
            RowStatus::PassUpToScaling,
            format!("printed decimals match the exact eigenvector ({}) within {best:.1e}", exact.join(", ")),
            None,
            notes,
        ));
    }
    let mut other = Vec::new();
    for e in &spec.eigenvalues {
        if let Some(q) = e.value.as_quad() {
            for b in exact_eigenspace(&g, &q)? {
                let d = max_diff(&unit(&b.iter().map(QuadNum::to_f64).collect::<Vec<_>>()), &printed);
                if d <= PRINTED_TOL {
                    other.push(format!("matches the eigenvector of {q}"));
                }
            }
        }
    }
    if other.is_empty() {
        other.push(format!("no eigenvector of {} matches", entry.key));
    }
    let relabelled = match basis.as_slice() {
        [b] => relabel_fit_numeric(&unit(&b.iter().map(QuadNum::to_f64).collect::<Vec<_>>()), &printed),
        _ => None,
    };
    if let Some(p) = &relabelled {
        other.push(format!("matches the {value} eigenvector of {} relabelled by vertex map {}", entry.key, fmt_perm(p)));
    }
    let fits = numeric_fits(catalog, &printed);
    if !fits.is_empty() {
        other.push(format!("decimals fit {}", fits.join(",")));
    }
    Ok((RowStatus::Fail, format!("closest exact eigenvector differs by {best:.3}; {}", other.join("; ")), relabelled, notes))
}

pub fn verify_row(row: &TableRow, catalog: &CatalogSet) -> Result<RowCheck> {
    let mut out = RowCheck {
        row: row.clone(),
        status: RowStatus::Fail,
        diagnosis: String::new(),
        relabelling: None,
        notes: Vec::new(),
    };
    let (Some(v), Some(lam)) = (&row.vector, &row.lambda) else {
        out.status = RowStatus::Unparseable;
        out.diagnosis = format!("vector column is prose: '{}'", row.vector_text);
        return Ok(out);
    };
    let entries = catalog.rows(&row.catalog_id);
    if entries.is_empty() {
        out.diagnosis = format!("id {} is not in the catalog", row.catalog_id);
        if let TableLambda::Integer(l) = lam {
            let lr = Rat::from_integer(l.clone());
            let fits: Vec<String> = catalog
                .entries()
                .filter(|e| e.n == v.len() && is_eigen(&laplacian(&e.graph()), &lr, v))
                .map(|e| format!("{} ({} links)", e.key, e.m))
                .collect();
            if !fits.is_empty() {
                out.diagnosis.push_str(&format!("; vector fits {}", fits.join(",")));
            }
        }
        return Ok(out);
    }
    if entries.len() > 1 {
        out.notes.push(format!("id {} names {} catalog rows; each is tried", row.catalog_id, entries.len()));
    }
    if let Some(e) = entries.iter().find(|e| e.n != v.len()) {
        if entries.len() == 1 {
            out.diagnosis = format!("vector has {} entries, {} has {} vertices", v.len(), e.key, e.n);
            return Ok(out);
        }
    }
    let entries: Vec<&CatalogEntry> = entries.into_iter().filter(|e| e.n == v.len()).collect();
    match lam {
        TableLambda::Integer(l) => {
            let lr = Rat::from_integer(l.clone());
            if entries.iter().any(|e| is_eigen(&laplacian(&e.graph()), &lr, v)) {
                out.status = RowStatus::ExactPass;
                return Ok(out);
            }
            (out.diagnosis, out.relabelling) = diagnose_integer(entries[0], l, v, catalog, row.links)?;
        }
        TableLambda::Closed { label, value } => {
            let (status, diag, relabelling, notes) = check_closed(catalog, entries[0], label, value, v)?;
            out.status = status;
            out.diagnosis = diag;
            out.relabelling = relabelling;
            out.notes.extend(notes);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub checks: Vec<RowCheck>,
}

impl TableReport {
    pub fn count(&self, s: RowStatus) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// Ledger text: every row that is not an exact pass.
    pub fn ledger(&self) -> String {
        let mut s = String::from("# table|source_line|catalog_id|status|diagnosis\n");
        for c in self.checks.iter().filter(|c| c.status != RowStatus::ExactPass) {
            s.push_str(&c.ledger_line());
            s.push('\n');
        }
        s
    }

    /// Lines present on only one side, prefixed `+` (new) or `-` (stale).
    pub fn ledger_diff(&self, committed: &str) -> Vec<String> {
        let now = self.ledger();
        let a: std::collections::BTreeSet<&str> = now.lines().filter(|l| !l.starts_with('#')).collect();
        let b: std::collections::BTreeSet<&str> = committed.lines().filter(|l| !l.starts_with('#')).collect();
        a.difference(&b).map(|l| format!("+{l}")).chain(b.difference(&a).map(|l| format!("-{l}"))).collect()
    }

    pub fn per_table(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(t, _, _)| t == &c.row.table) {
                Some(e) => {
                    e.1 += 1;
                    e.2 += usize::from(c.status == RowStatus::ExactPass);
                }
                None => out.push((c.row.table.clone(), 1, usize::from(c.status == RowStatus::ExactPass))),
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        json!({
            "rows": self.checks.len(),
            "exact_pass": self.count(RowStatus::ExactPass),
            "pass_up_to_scaling": self.count(RowStatus::PassUpToScaling),
            "fail": self.count(RowStatus::Fail),
            "unparseable": self.count(RowStatus::Unparseable),
            "per_table": self.per_table().iter().map(|(t, n, p)| json!({"table": t, "rows": n, "exact_pass": p})).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(RowCheck::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn verify_appendix_tables(rows: &[TableRow], catalog: &CatalogSet) -> Result<TableReport> {
    Ok(TableReport { checks: rows.iter().map(|r| verify_row(r, catalog)).collect::<Result<_>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_and_closed_forms() {
        assert_eq!(parse_decimal("-0.27"), Some(Rat::new((-27).into(), 100.into())));
        assert_eq!(parse_decimal("3"), Some(Rat::from_integer(3.into())));
        assert_eq!(parse_decimal("x"), None);
        assert_eq!(parse_closed_form("3-sqrt2"), Some(QuadNum::new(Rat::from_integer(3.into()), Rat::from_integer((-1).into()), 2)));
        let v = parse_closed_form("(7+sqrt5)/2").unwrap();
        assert!((v.to_f64() - 4.618034).abs() < 1e-6);
    }

    #[test]
    fn sample_rows() {
        let cat = CatalogSet::bundled().unwrap();
        let rows = bundled_rows().unwrap();
        let find = |t: &str, line: usize| rows.iter().find(|r| r.table == t && r.source_line == line).unwrap();
        assert_eq!(verify_row(find("tab3", 1795), &cat).unwrap().status, RowStatus::ExactPass);
        assert_eq!(verify_row(find("tab7aa", 1456), &cat).unwrap().status, RowStatus::PassUpToScaling);
        assert_eq!(verify_row(find("tab8a", 2197), &cat).unwrap().status, RowStatus::Unparseable);
    }

    #[test]
    fn committed_ledger_is_current() {
        let cat = CatalogSet::bundled().unwrap();
        let report = verify_appendix_tables(&bundled_rows().unwrap(), &cat).unwrap();
        assert_eq!(report.ledger_diff(LEDGER_TEXT), Vec::<String>::new());
        assert_eq!(report.ledger(), LEDGER_TEXT);
    }
}
