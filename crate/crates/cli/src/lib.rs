//! Command-line front end for `atomspec`.
//!
//! [`run`] parses arguments, computes a report and renders it. Structured
//! output is a JSON document; text output is a plain rendering of the same
//! document; graph output is a DOT digraph for `serre`.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use atomspec::builtin::build_builtin;
use atomspec::check::check_suite;
use atomspec::format::{parse_module, parse_ring, serialize_ring};
use atomspec::lattice::is_uniform;
use atomspec::module::{cyclic_submodule, direct_sum, quotient_module, regular_module, submodule_module};
use atomspec::monoform::{is_completely_prime, is_monoform, monoform_filtration};
use atomspec::ring::{DEFAULT_MAX_LATTICE, DEFAULT_MAX_ORDER};
use atomspec::serre::enumerate_serre;
use atomspec::{AtomSet, AtomSpectrum, ElemSet, Error, FiniteRing, Limits, RightModule, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Validate,
    Ideals,
    Spectrum,
    Monoform,
    Support,
    Ass,
    Filtration,
    Serre,
    Check,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Validate => "validate",
            Verb::Ideals => "ideals",
            Verb::Spectrum => "spectrum",
            Verb::Monoform => "monoform",
            Verb::Support => "support",
            Verb::Ass => "ass",
            Verb::Filtration => "filtration",
            Verb::Serre => "serre",
            Verb::Check => "check",
        }
    }

    fn needs_module(self) -> bool {
        matches!(self, Verb::Monoform | Verb::Support | Verb::Ass | Verb::Filtration)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    #[value(alias = "json")]
    Structured,
    Graph,
}

#[derive(Debug, Parser)]
#[command(name = "atomspec", version, about = "Atom spectra and Serre subcategories of finite rings")]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Builtin ring (zmod:n, tri2:p, mat:k:p, prod:a,b) or path to a ring document.
    #[arg(long)]
    pub ring: String,
    /// Module over the ring: regular, quot:<ids>, sub:<ids>, cyclic:<x>,
    /// sum:<spec>+<spec>, file:<path>.
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER, value_parser = positive)]
    pub max_order: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_LATTICE, value_parser = positive)]
    pub max_lattice: usize,
    /// Include wall-clock time in the report. Off by default so reports stay
    /// byte-identical across runs.
    #[arg(long)]
    pub timing: bool,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit status and rendered output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const BUILTIN_FAMILIES: &[&str] = &["zmod", "tri2", "mat", "prod"];

fn is_builtin(source: &str) -> bool {
    let s = source.trim_start_matches('(');
    s.split_once(':')
        .is_some_and(|(head, _)| BUILTIN_FAMILIES.contains(&head))
}

pub fn load_ring(source: &str, limits: Limits) -> atomspec::Result<FiniteRing> {
    if is_builtin(source) {
        let spec: RingSpec = source.parse()?;
        return build_builtin(&spec, limits);
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| Error::Parse(format!("cannot read ring file `{source}`: {e}")))?;
    parse_ring(&text, limits)
}

fn parse_ids(list: &str, order: usize) -> atomspec::Result<ElemSet> {
    let mut ids = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id: usize = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad element `{tok}`")))?;
        if id >= order {
            return Err(Error::ElementOutOfRange { id, order });
        }
        ids.push(id);
    }
    Ok(ElemSet::from_ids(order, ids))
}

/// Builds a module from the mini-language.
pub fn parse_module_spec(ring: &Arc<FiniteRing>, text: &str) -> atomspec::Result<RightModule> {
    let text = text.trim();
    let reg = regular_module(ring);
    let n = ring.order();
    if text == "regular" {
        return Ok(reg.with_provenance("regular"));
    }
    if let Some(rest) = text.strip_prefix("sum:") {
        let mut parts = rest.split('+');
        let first = parts.next().unwrap_or_default();
        let mut acc = parse_module_spec(ring, first)?;
        let mut seen = false;
        for p in parts {
            seen = true;
            acc = direct_sum(&acc, &parse_module_spec(ring, p)?)?;
        }
        if !seen {
            return Err(Error::Parse("sum needs at least two summands".into()));
        }
        return Ok(acc.with_provenance(text));
    }
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown module spec `{text}`")))?;
    let m = match head {
        "quot" => quotient_module(&reg, &parse_ids(rest, n)?)?.0,
        "sub" => submodule_module(&reg, &parse_ids(rest, n)?)?,
        "cyclic" => {
            let x: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element `{rest}`")))?;
            let c = cyclic_submodule(&reg, x)?;
            submodule_module(&reg, &c.members)?
        }
        "file" => {
            let doc = std::fs::read_to_string(rest)
                .map_err(|e| Error::Parse(format!("cannot read module file `{rest}`: {e}")))?;
            parse_module(ring, &doc)?
        }
        _ => return Err(Error::Parse(format!("unknown module spec `{text}`"))),
    };
    Ok(m.with_provenance(text))
}

fn fingerprint(ring: &FiniteRing) -> Value {
    let digest = Sha256::digest(serialize_ring(ring).as_bytes());
    json!({ "order": ring.order(), "sha256": hex::encode(digest) })
}

fn ids(s: &ElemSet) -> Value {
    json!(s.to_vec())
}

fn atom_ids(a: AtomSet) -> Value {
    json!(a.iter().collect::<Vec<_>>())
}

fn module_header(m: &RightModule) -> Value {
    json!({ "spec": m.provenance().unwrap_or("module"), "order": m.order() })
}

fn compute(cli: &Cli, ring: &Arc<FiniteRing>) -> atomspec::Result<Value> {
    let module = match (&cli.module, cli.verb.needs_module()) {
        (Some(text), true) => Some(parse_module_spec(ring, text)?),
        _ => None,
    };
    Ok(match cli.verb {
        Verb::Validate => json!({
            "valid": true,
            "order": ring.order(),
            "one": ring.one(),
            "commutative": ring.is_commutative(),
        }),
        Verb::Ideals => {
            let spec = AtomSpectrum::new(ring)?;
            let mut list = Vec::new();
            for i in spec.right_ideals() {
                let proper = !i.is_full();
                list.push(json!({
                    "members": ids(i),
                    "comonoform": proper && spec.is_comonoform(i),
                    "completely_prime": proper && is_completely_prime(ring, i)?,
                }));
            }
            json!({ "count": list.len(), "right_ideals": list })
        }
        Verb::Spectrum => {
            let spec = AtomSpectrum::new(ring)?;
            let atoms: Vec<Value> = spec
                .atoms()
                .iter()
                .map(|a| {
                    json!({
                        "id": a.id,
                        "representative": ids(&a.canonical_rep),
                        "members": a.members.iter().map(ids).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let comonoform: Vec<Value> = spec.comonoform_ideals().iter().map(ids).collect();
            json!({
                "atom_count": atoms.len(),
                "atoms": atoms,
                "comonoform_count": comonoform.len(),
                "comonoform_ideals": comonoform,
            })
        }
        Verb::Monoform => {
            let m = module.expect("module required");
            json!({
                "module": module_header(&m),
                "monoform": is_monoform(&m)?,
                "uniform": !m.is_zero() && is_uniform(&m),
            })
        }
        Verb::Support | Verb::Ass => {
            let m = module.expect("module required");
            let spec = AtomSpectrum::new(ring)?;
            let (key, set) = if cli.verb == Verb::Support {
                ("support", spec.atom_support(&m)?)
            } else {
                ("associated_atoms", spec.associated_atoms(&m)?)
            };
            let mut out = Map::new();
            out.insert("module".into(), module_header(&m));
            out.insert(key.into(), atom_ids(set));
            Value::Object(out)
        }
        Verb::Filtration => {
            let m = module.expect("module required");
            let spec = AtomSpectrum::new(ring)?;
            let f = monoform_filtration(&m)?;
            let atoms: Vec<Option<usize>> = f.labels.iter().map(|l| spec.atom_of(l)).collect();
            json!({
                "module": module_header(&m),
                "chain": f.chain.iter().map(ids).collect::<Vec<_>>(),
                "labels": f.labels.iter().map(ids).collect::<Vec<_>>(),
                "generators": f.generators,
                "atoms": atoms,
            })
        }
        Verb::Serre => {
            let spec = AtomSpectrum::new(ring)?;
            let lattice = enumerate_serre(&spec)?;
            let subs: Vec<Value> = lattice
                .subcategories
                .iter()
                .zip(&lattice.generating_ideals)
                .enumerate()
                .map(|(i, (s, gens))| {
                    json!({
                        "id": i,
                        "atoms": atom_ids(s.open_set.members),
                        "generators": gens.iter().map(ids).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "count": subs.len(),
                "subcategories": subs,
                "covers": lattice.covers,
            })
        }
        Verb::Check => {
            let report = check_suite(ring)?;
            let props: Vec<Value> = report
                .outcomes
                .iter()
                .map(|o| match &o.verdict {
                    Ok(detail) => json!({ "name": o.name, "passed": true, "detail": detail }),
                    Err(witness) => json!({ "name": o.name, "passed": false, "witness": witness }),
                })
                .collect();
            json!({ "passed": report.passed(), "atoms": report.atoms, "properties": props })
        }
    })
}

fn warnings(cli: &Cli) -> Vec<String> {
    let mut out = Vec::new();
    if cli.max_order > DEFAULT_MAX_ORDER {
        out.push(format!(
            "max-order {} exceeds the default {DEFAULT_MAX_ORDER}; table validation is cubic in the order",
            cli.max_order
        ));
    }
    if cli.max_lattice > DEFAULT_MAX_LATTICE {
        out.push(format!(
            "max-lattice {} exceeds the default {DEFAULT_MAX_LATTICE}",
            cli.max_lattice
        ));
    }
    if cli.module.is_some() && !cli.verb.needs_module() {
        out.push(format!("--module is ignored by {}", cli.verb.name()));
    }
    out
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OrderCap { .. } | Error::LatticeCap { .. } | Error::UniverseCap { .. } | Error::TooManyAtoms { .. } => {
            "cap"
        }
        Error::Parse(_) | Error::RingSpec(_) => "parse",
        Error::Shape(_) | Error::EntryOutOfRange { .. } | Error::Axiom { .. } | Error::NotPrime(_) => "invalid-ring",
        _ => "domain",
    }
}

/// Renders a JSON value as indented `key: value` lines.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().filter_map(scalar).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: msg,
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                usage(text)
            };
        }
    };
    if cli.verb.needs_module() && cli.module.is_none() {
        return usage(format!("error: {} requires --module\n", cli.verb.name()));
    }
    if cli.format == OutputFormat::Graph && cli.verb != Verb::Serre {
        return usage("error: --format graph is only available for serre\n".into());
    }
    let start = Instant::now();
    let limits = Limits {
        max_order: cli.max_order,
        max_lattice: cli.max_lattice,
    };

    let mut report = Map::new();
    report.insert("verb".into(), json!(cli.verb.name()));
    let mut graph = None;
    let result = load_ring(&cli.ring, limits).map(Arc::new).and_then(|ring| {
        report.insert("ring".into(), fingerprint(&ring));
        if cli.format == OutputFormat::Graph {
            let spec = AtomSpectrum::new(&ring)?;
            graph = Some(enumerate_serre(&spec)?.to_dot());
        }
        compute(&cli, &ring)
    });
    let code = match result {
        Ok(payload) => {
            let failed_check = cli.verb == Verb::Check && payload["passed"] == json!(false);
            report.insert("result".into(), payload);
            i32::from(failed_check)
        }
        Err(e) => {
            report.insert("error".into(), json!({ "kind": error_kind(&e), "message": e.to_string() }));
            1
        }
    };
    report.insert("warnings".into(), json!(warnings(&cli)));
    if cli.timing {
        report.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    let report = Value::Object(report);

    let stdout = match (cli.format, graph) {
        (OutputFormat::Graph, Some(dot)) if code == 0 => dot,
        (OutputFormat::Structured, _) => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        _ => render_text(&report),
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}
