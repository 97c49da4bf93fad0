use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use adlv_core::admissible;
use adlv_core::affine::ElemRepr;
use adlv_core::appendix;
use adlv_core::cartan;
use adlv_core::connectivity::{Connectivity, ConnectivityGraph};
use adlv_core::fold_sweep;
use adlv_core::folding::FoldingDatum;
use adlv_core::g2;
use adlv_core::sigma::{self, ShortDatum, ShortDatumRepr};
use adlv_core::{Coweight, Family, Isogeny, RootDatum, Subset};
use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "adlv", version, about = "Affine Weyl group combinatorics for connected components of affine Deligne-Lusztig varieties")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Clone)]
struct DatumArgs {
    /// Type letter (with --rank) or a full label such as E6.
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
    /// adjoint, simply-connected, or a JSON list of extra coweight generators.
    #[arg(long, default_value = "adjoint")]
    isogeny: String,
}

#[derive(Args, Clone)]
struct ShortArgs {
    /// `mu` in fundamental-coweight coordinates, e.g. "[1,-1,0]".
    #[arg(long)]
    mu: Option<String>,
    /// `J_nu` as a JSON list of 0-based simple indices.
    #[arg(long = "J")]
    j: Option<String>,
    /// A short datum as JSON, as printed by `classify`.
    #[arg(long)]
    short: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate Adm(lambda).
    Adm {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
    },
    /// Straight elements of Adm(lambda) grouped by (eta, dominant Newton point).
    Straight {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
    },
    /// Hodge-Newton classification of (lambda, short datum).
    Classify {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        short: ShortArgs,
    },
    /// Predicted connected components, indexed by pi_1.
    Pi0 {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        short: ShortArgs,
    },
    /// Connectivity of W_0^J under the permissible-reflection relation.
    Connect {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        short: ShortArgs,
    },
    /// Exhaustive checks of the case-analysed lemmas.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// All folded-datum checks for one ambient type.
    Fold {
        #[arg(long)]
        fold: String,
        /// Bound on the coefficients of lambda - mu.
        #[arg(long, default_value_t = 2)]
        kmax: i64,
    },
    /// The connectivity graph as DOT or JSON.
    Export {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        short: ShortArgs,
    },
}

#[derive(Subcommand)]
enum Verify {
    Seq {
        #[command(flatten)]
        datum: DatumArgs,
        /// Box bound for A/D, lift bound for E.
        #[arg(long, default_value_t = 3)]
        kmax: i64,
    },
    Empty {
        #[command(flatten)]
        datum: DatumArgs,
    },
    O1 {
        #[arg(long)]
        fold: String,
        #[arg(long, default_value_t = 2)]
        kmax: i64,
    },
    Zeta {
        #[arg(long)]
        fold: String,
        #[arg(long, default_value_t = 2)]
        kmax: i64,
    },
    G2,
}

/// A report and whether it certifies the claim it was asked to check.
struct Outcome {
    report: Value,
    text: String,
    dot: Option<String>,
    verified: bool,
}

impl Outcome {
    fn ok(report: Value) -> Outcome {
        Outcome { text: String::new(), report, dot: None, verified: true }
    }
}

/// Input errors exit with status 2; everything else is a tool failure.
#[derive(Debug)]
struct InvalidInput(String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InvalidInput(msg.into()))
}

fn datum(a: &DatumArgs) -> Result<RootDatum> {
    let (family, rank) = match a.rank {
        Some(n) if a.ty.len() == 1 => {
            (Family::parse(a.ty.chars().next().unwrap()).ok_or_else(|| invalid(format!("--type: unknown type {:?}", a.ty)))?, n)
        }
        _ => cartan::parse_label(&a.ty).map_err(|e| invalid(format!("--type: {e}")))?,
    };
    if let Some(n) = a.rank {
        if n != rank {
            return Err(invalid(format!("--rank {n} contradicts --type {}", a.ty)));
        }
    }
    let isogeny = match a.isogeny.as_str() {
        "adjoint" | "ad" => Isogeny::Adjoint,
        "simply-connected" | "simply_connected" | "sc" => Isogeny::SimplyConnected,
        s => Isogeny::Intermediate(serde_json::from_str(s).map_err(|e| invalid(format!("--isogeny: {e}")))?),
    };
    RootDatum::new(family, rank, isogeny).map_err(|e| invalid(format!("--type/--isogeny: {e}")))
}

fn coweight(d: &RootDatum, flag: &str, s: &str) -> Result<Coweight> {
    let v: Coweight = serde_json::from_str(s).map_err(|e| invalid(format!("{flag}: {e}")))?;
    if v.len() != d.rank {
        return Err(invalid(format!("{flag}: expected {} coordinates, got {}", d.rank, v.len())));
    }
    d.check_lattice(&v).map_err(|e| invalid(format!("{flag}: {e}")))?;
    Ok(v)
}

fn dominant(d: &RootDatum, s: &str) -> Result<Coweight> {
    let l = coweight(d, "--lambda", s)?;
    if !adlv_core::coweight::is_dominant(d, &l) {
        return Err(invalid("--lambda: coweight is not dominant"));
    }
    Ok(l)
}

fn short(d: &RootDatum, a: &ShortArgs) -> Result<ShortDatum> {
    if let Some(s) = &a.short {
        let r: ShortDatumRepr = serde_json::from_str(s).map_err(|e| invalid(format!("--short: {e}")))?;
        return ShortDatum::from_repr(d, &r).map_err(|e| invalid(format!("--short: {e}")));
    }
    let mu = coweight(d, "--mu", a.mu.as_deref().ok_or_else(|| invalid("need --mu and --J, or --short"))?)?;
    let idx: Vec<usize> = serde_json::from_str(a.j.as_deref().unwrap_or("[]")).map_err(|e| invalid(format!("--J: {e}")))?;
    if let Some(&i) = idx.iter().find(|&&i| i >= d.rank) {
        return Err(invalid(format!("--J: index {i} out of range")));
    }
    ShortDatum::from_mu(d, &mu, Subset::from_indices(idx)).map_err(|e| invalid(format!("--mu/--J: {e}")))
}

fn fold(label: &str) -> Result<FoldingDatum> {
    let (f, n) = cartan::parse_label(label).map_err(|e| invalid(format!("--fold: {e}")))?;
    FoldingDatum::new(f, n).map_err(|e| invalid(format!("--fold: {e}")))
}

fn header(d: &RootDatum) -> Value {
    json!({ "schema": SCHEMA, "version": env!("CARGO_PKG_VERSION"), "datum": d.config() })
}

fn with_header(d: &RootDatum, body: Value) -> Value {
    let mut h = header(d);
    if let (Value::Object(h), Value::Object(b)) = (&mut h, body) {
        h.extend(b);
    }
    h
}

fn reprs<'a>(d: &RootDatum, xs: impl IntoIterator<Item = &'a adlv_core::Elem>) -> Vec<ElemRepr> {
    xs.into_iter().map(|x| x.repr(d)).collect()
}

fn cache_path(d: &RootDatum, lambda: &[i64]) -> Option<PathBuf> {
    let dir = std::env::var_os("ADLV_CACHE_DIR")?;
    let iso = serde_json::to_string(&d.isogeny).ok()?;
    let key: String = format!("adm-{}-{}-{:?}", d.label(), iso, lambda).chars().filter(|c| c.is_ascii_alphanumeric() || *c == '-').collect();
    Some(PathBuf::from(dir).join(format!("{key}.json")))
}

fn adm_elements(d: &RootDatum, lambda: &[i64]) -> Result<Vec<ElemRepr>> {
    let path = cache_path(d, lambda);
    if let Some(p) = &path {
        if let Ok(s) = std::fs::read_to_string(p) {
            if let Ok(v) = serde_json::from_str(&s) {
                return Ok(v);
            }
        }
    }
    let adm = admissible::compute_adm(d, lambda).map_err(|e| invalid(format!("--lambda: {e}")))?;
    let out = reprs(d, &adm.elements);
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent).ok();
        }
        std::fs::write(p, serde_json::to_string(&out)?).with_context(|| format!("writing cache {}", p.display()))?;
    }
    Ok(out)
}

fn cmd_adm(a: &DatumArgs, lambda: &str) -> Result<Outcome> {
    let d = datum(a)?;
    let l = dominant(&d, lambda)?;
    let elements = adm_elements(&d, &l)?;
    let straight: Vec<&ElemRepr> = elements
        .iter()
        .filter(|r| adlv_core::Elem::from_repr(&d, r).map(|x| x.is_straight(&d)).unwrap_or(false))
        .collect();
    let text = format!("|Adm({l:?})| = {}, straight {}\n", elements.len(), straight.len());
    let report = with_header(&d, json!({ "lambda": l, "count": elements.len(), "straight": straight, "elements": elements }));
    Ok(Outcome { text, ..Outcome::ok(report) })
}

fn cmd_straight(a: &DatumArgs, lambda: &str) -> Result<Outcome> {
    let d = datum(a)?;
    let l = dominant(&d, lambda)?;
    let adm = admissible::compute_adm(&d, &l).map_err(|e| invalid(format!("--lambda: {e}")))?;
    let groups: Vec<Value> = admissible::straight_elements(&d, &adm)
        .into_iter()
        .map(|((eta, nu), xs)| json!({ "eta": eta, "nu": nu, "elements": reprs(&d, &xs) }))
        .collect();
    let text = format!("{} classes of straight elements in Adm({l:?})\n", groups.len());
    let report = with_header(&d, json!({ "lambda": l, "count": adm.straight.len(), "classes": groups }));
    Ok(Outcome { text, ..Outcome::ok(report) })
}

fn cmd_classify(a: &DatumArgs, lambda: &str, s: &ShortArgs) -> Result<Outcome> {
    let d = datum(a)?;
    let l = dominant(&d, lambda)?;
    let sd = short(&d, s)?;
    let class = sigma::hn_classify(&d, &l, &sd);
    let irreducible = class == sigma::HnClass::Irreducible;
    let text = format!("{class:?}\n");
    let report = with_header(&d, json!({ "lambda": l, "short": sd.repr(), "class": class, "c_set": sigma::c_set(&d, &l, &sd) }));
    Ok(Outcome { text, verified: irreducible, ..Outcome::ok(report) })
}

fn cmd_pi0(a: &DatumArgs, lambda: &str, s: &ShortArgs) -> Result<Outcome> {
    let d = datum(a)?;
    let l = dominant(&d, lambda)?;
    let sd = short(&d, s)?;
    let comps = sigma::pi0_prediction(&d, &l, &sd).map_err(|e| invalid(e.to_string()))?;
    let text = format!("{} components\n", comps.len());
    let report = with_header(&d, json!({ "lambda": l, "short": sd.repr(), "count": comps.len(), "components": comps }));
    Ok(Outcome { text, ..Outcome::ok(report) })
}

fn connectivity<'a>(d: &'a RootDatum, l: &[i64], sd: &'a ShortDatum) -> Result<Connectivity<'a>> {
    if sigma::hn_classify(d, l, sd) != sigma::HnClass::Irreducible {
        return Err(invalid("pair is not HN-irreducible"));
    }
    Connectivity::new(d, sd, l).map_err(|e| invalid(e.to_string()))
}

fn cmd_connect(a: &DatumArgs, lambda: &str, s: &ShortArgs) -> Result<Outcome> {
    let d = datum(a)?;
    let l = dominant(&d, lambda)?;
    let sd = short(&d, s)?;
    let c = connectivity(&d, &l, &sd)?;
    let r = c.verify_hyp_prime();
    let mut text = format!("{} vertices, connected: {}\n", r.vertices.len(), r.connected);
    for p in &r.paths {
        let steps: Vec<String> = p.steps.iter().map(|(v, g)| format!("{v}-[{g}]")).collect();
        let _ = writeln!(text, "  {:?}: {}", r.vertices[p.vertex], steps.join(" "));
    }
    let verified = r.connected;
    let report = with_header(&d, json!({ "lambda": l, "short": sd.repr(), "report": r }));
    Ok(Outcome { text, verified, ..Outcome::ok(report) })
}

/// DOT with vertices in coset-representative order and edges sorted.
pub fn dot(g: &ConnectivityGraph) -> String {
    let mut s = String::from("graph connectivity {\n");
    for (i, w) in g.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label=\"{w:?}\"];");
    }
    let mut edges: Vec<(usize, usize, usize)> = g.edges.iter().filter(|e| e.present()).map(|e| (e.from.min(e.to), e.from.max(e.to), e.gamma)).collect();
    edges.sort();
    edges.dedup();
    for (a, b, g) in edges {
        let _ = writeln!(s, "  v{a} -- v{b} [label=\"{g}\"];");
    }
    s.push_str("}\n");
    s
}

fn cmd_export(a: &DatumArgs, lambda: &str, s: &ShortArgs) -> Result<Outcome> {
    let d = datum(a)?;
    let l = dominant(&d, lambda)?;
    let sd = short(&d, s)?;
    let c = connectivity(&d, &l, &sd)?;
    let g = c.build_graph();
    let text = format!("{} vertices, {} edges\n", g.vertices.len(), g.edges.iter().filter(|e| e.present()).count());
    let dot = Some(dot(&g));
    let report = with_header(&d, json!({ "lambda": l, "short": sd.repr(), "graph": g }));
    Ok(Outcome { text, dot, ..Outcome::ok(report) })
}

fn timed<T: Serialize>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_secs_f64())
}

fn cmd_verify(v: &Verify) -> Result<Outcome> {
    match v {
        Verify::Seq { datum: a, kmax } => {
            let d = datum(a)?;
            let (r, secs) = if d.is_type(Family::E) {
                timed(|| appendix::verify_seq_fibers(&d, *kmax, 100, 7))
            } else {
                timed(|| appendix::verify_seq_box(&d, *kmax))
            };
            let text = format!("{}: {} configs, {} violations\n", r.label, r.configs, r.violations.len());
            let verified = r.ok();
            Ok(Outcome { text, verified, ..Outcome::ok(with_header(&d, json!({ "seconds": secs, "report": r }))) })
        }
        Verify::Empty { datum: a } => {
            let d = datum(a)?;
            let t = Instant::now();
            let r = appendix::verify_empty_all(&d).map_err(|e| anyhow!(e))?;
            let text = format!("{}: {} configs, {} ideals, {} counterexamples\n", r.label, r.configs, r.ideals, r.counterexamples.len());
            let verified = r.counterexamples.is_empty();
            let report = with_header(&d, json!({ "seconds": t.elapsed().as_secs_f64(), "report": r }));
            Ok(Outcome { text, verified, ..Outcome::ok(report) })
        }
        Verify::O1 { fold: f, kmax } | Verify::Zeta { fold: f, kmax } => {
            let fd = fold(f)?;
            let (r, secs) = timed(|| fold_sweep::sweep(&fd, -1, 1, *kmax));
            let o1 = matches!(v, Verify::O1 { .. });
            let (body, verified, text) = if o1 {
                let ok = r.o1_violations.is_empty();
                let text = format!("{} -> {}: o1 cases {:?}, {} violations\n", r.ambient, r.folded, r.o1_cases, r.o1_violations.len());
                (json!({ "cases": r.o1_cases, "instances": r.instances, "violations": r.o1_violations }), ok, text)
            } else {
                let ok = r.zeta.violations.is_empty();
                let text = format!("{} -> {}: zeta checked {}, {} violations\n", r.ambient, r.folded, r.zeta.checked, r.zeta.violations.len());
                (json!({ "zeta": r.zeta }), ok, text)
            };
            let report = with_header(&fd.ambient, json!({ "fold": f, "folded": r.folded, "seconds": secs, "report": body }));
            Ok(Outcome { text, verified, ..Outcome::ok(report) })
        }
        Verify::G2 => {
            let d = RootDatum::adjoint(Family::G, 2);
            let (r, secs) = timed(|| g2::verify_g2(-1, 2, 2));
            let mut text = format!("G2: {} instances, {} chains, {} failures\n", r.instances, r.pairs, r.failures.len());
            for (k, n) in &r.cases {
                let _ = writeln!(text, "  {k}: {n}");
            }
            let verified = r.ok();
            Ok(Outcome { text, verified, ..Outcome::ok(with_header(&d, json!({ "seconds": secs, "report": r }))) })
        }
    }
}

fn cmd_fold(f: &str, kmax: i64) -> Result<Outcome> {
    let fd = fold(f)?;
    let (r, secs) = timed(|| fold_sweep::sweep(&fd, -1, 1, kmax));
    let text = format!("{} -> {}: {} instances, {} violations\n", r.ambient, r.folded, r.instances, r.violations());
    let verified = r.ok();
    let report = with_header(&fd.ambient, json!({ "fold": f, "seconds": secs, "report": r }));
    Ok(Outcome { text, verified, ..Outcome::ok(report) })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Adm { datum, lambda } => cmd_adm(datum, lambda),
        Cmd::Straight { datum, lambda } => cmd_straight(datum, lambda),
        Cmd::Classify { datum, lambda, short } => cmd_classify(datum, lambda, short),
        Cmd::Pi0 { datum, lambda, short } => cmd_pi0(datum, lambda, short),
        Cmd::Connect { datum, lambda, short } => cmd_connect(datum, lambda, short),
        Cmd::Verify { what } => cmd_verify(what),
        Cmd::Fold { fold, kmax } => cmd_fold(fold, *kmax),
        Cmd::Export { datum, lambda, short } => cmd_export(datum, lambda, short),
    }
}

/// Drops the wall-clock fields so identical jobs print identical bytes.
fn strip_timing(v: &mut Value) {
    if let Value::Object(m) = v {
        m.remove("seconds");
        for x in m.values_mut() {
            strip_timing(x);
        }
    }
}

fn emit(cli: &Cli, mut o: Outcome) -> Result<()> {
    if std::env::var_os("ADLV_NO_TIMING").is_some() {
        strip_timing(&mut o.report);
    }
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&o.report)? + "\n",
        Format::Text => o.text,
        Format::Dot => o.dot.ok_or_else(|| invalid("--format dot is only available for export"))?,
    };
    match &cli.out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let res = run(&cli).and_then(|o| {
        let verified = o.verified;
        emit(&cli, o).map(|_| verified)
    });
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<InvalidInput>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_is_valid_dot() {
        let g = ConnectivityGraph { vertices: vec![], edges: vec![] };
        assert_eq!(dot(&g), "graph connectivity {\n}\n");
    }

    #[test]
    fn type_and_rank_forms_agree() {
        let a = DatumArgs { ty: "D".into(), rank: Some(5), isogeny: "sc".into() };
        let b = DatumArgs { ty: "D5".into(), rank: None, isogeny: "simply-connected".into() };
        assert_eq!(datum(&a).unwrap().config(), datum(&b).unwrap().config());
        let bad = DatumArgs { ty: "D5".into(), rank: Some(4), isogeny: "adjoint".into() };
        assert!(datum(&bad).unwrap_err().is::<InvalidInput>());
    }
}
