//! JSON encodings shared by the commands: generator files, term files and
//! verification reports.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use lattgen_core::field::Cardinal;
use lattgen_core::lattice::{
    DeltaCell, LatticeSpec, LatticeTerm, ProductInstance, Verdict, VerifyMode, VerifyReport,
};
use lattgen_core::linalg::Subspace;
use serde_json::{json, Map, Value};

/// Terms whose expanded tree exceeds this many nodes are written in the
/// shared-node encoding.
pub const TREE_LIMIT: u64 = 50_000;

pub fn term_json(t: &LatticeTerm) -> Value {
    if t.tree_size() <= TREE_LIMIT {
        t.to_json()
    } else {
        t.to_dag_json()
    }
}

pub fn verdict_json(v: Verdict) -> Value {
    match v {
        Verdict::True => json!(true),
        Verdict::False => json!(false),
        Verdict::Undetermined => json!("undetermined"),
    }
}

pub fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Undetermined => "undetermined",
    }
}

pub fn cardinal_json(c: &Cardinal) -> Value {
    match c {
        Cardinal::Finite(n) => match c.as_u64() {
            Some(x) => json!(x),
            None => json!(n.to_string()),
        },
        Cardinal::Aleph0 => json!("aleph0"),
    }
}

/// A product element: one subspace encoding, or a list of them.
pub fn element_json(e: &[Subspace]) -> Value {
    if e.len() == 1 {
        e[0].to_json()
    } else {
        Value::Array(e.iter().map(Subspace::to_json).collect())
    }
}

fn cell_json(c: DeltaCell) -> Value {
    match c {
        DeltaCell::One => json!(1),
        DeltaCell::Zero => json!(0),
        DeltaCell::Other => json!("other"),
    }
}

pub fn delta_table_json(t: &[Vec<DeltaCell>]) -> Value {
    Value::Array(
        t.iter()
            .map(|row| Value::Array(row.iter().map(|&c| cell_json(c)).collect()))
            .collect(),
    )
}

pub fn mode_name(m: VerifyMode) -> &'static str {
    match m {
        VerifyMode::Closure => "closure",
        VerifyMode::Fgtln => "fgtln",
        VerifyMode::Auto => "auto",
    }
}

pub fn report_json(r: &VerifyReport) -> Value {
    let mut m = Map::new();
    m.insert("generates".into(), verdict_json(r.generates));
    m.insert("mode".into(), json!(mode_name(r.mode)));
    if let Some(s) = r.closure_size {
        m.insert("closure_size".into(), json!(s as u64));
    }
    m.insert("lattice_size".into(), cardinal_json(&r.lattice_size));
    if let Some(e) = &r.missing_example {
        m.insert("missing_example".into(), element_json(e));
    }
    if let Some(ws) = &r.witnesses {
        let obj: Map<String, Value> = ws.iter().map(|(k, t)| (k.clone(), term_json(t))).collect();
        m.insert("witnesses".into(), Value::Object(obj));
    }
    if let Some(t) = &r.delta_table {
        m.insert("delta_table".into(), delta_table_json(t));
    }
    let fs: Vec<Value> = r
        .factor_status
        .iter()
        .map(|s| json!({"generates": verdict_json(s.generates), "closure_size": s.closure_size, "size": s.size}))
        .collect();
    m.insert("factor_status".into(), Value::Array(fs));
    if let Some(n) = &r.note {
        m.insert("note".into(), json!(n));
    }
    Value::Object(m)
}

/// The generator file of an instance.
pub fn generator_file(spec: &LatticeSpec, inst: &ProductInstance) -> Value {
    json!({
        "lattice": spec.to_string(),
        "generators": inst.generators.iter().map(|g| element_json(g)).collect::<Vec<_>>(),
    })
}

/// The lattice spec of an instance, with consecutive equal factors written as
/// powers.
pub fn spec_of(inst: &ProductInstance) -> LatticeSpec {
    let mut groups: Vec<(LatticeSpec, usize)> = Vec::new();
    for f in &inst.factors {
        let s = LatticeSpec::Sub {
            field: f.field.clone(),
            dim: f.dim,
        };
        match groups.last_mut() {
            Some((last, n)) if *last == s => *n += 1,
            _ => groups.push((s, 1)),
        }
    }
    let parts: Vec<LatticeSpec> = groups
        .into_iter()
        .map(|(s, n)| {
            if n == 1 {
                s
            } else {
                LatticeSpec::Pow(Box::new(s), n)
            }
        })
        .collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        LatticeSpec::Prod(parts)
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Reads a generator file. A `--lattice` given on the command line must
/// describe the same lattice as the file.
pub fn load_generators(
    path: &Path,
    lattice: Option<&LatticeSpec>,
) -> Result<(LatticeSpec, ProductInstance)> {
    let v = read_json(path)?;
    let file_spec = v
        .get("lattice")
        .and_then(Value::as_str)
        .map(str::parse::<LatticeSpec>)
        .transpose()?;
    let spec = match (file_spec, lattice) {
        (Some(a), Some(b)) => {
            if a.leaves() != b.leaves() {
                bail!("generator file is for {a}, not {b}");
            }
            b.clone()
        }
        (Some(a), None) => a,
        (None, Some(b)) => b.clone(),
        (None, None) => {
            bail!("no lattice: pass --lattice or put \"lattice\" in the generator file")
        }
    };
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("{}: expected a \"generators\" list", path.display()))?;
    let factors = ProductInstance::factors_for(&spec)?;
    let mut out = Vec::with_capacity(gens.len());
    for (n, g) in gens.iter().enumerate() {
        let parts: Vec<&Value> = if factors.len() == 1 {
            vec![g]
        } else {
            let a = g
                .as_array()
                .filter(|a| a.len() == factors.len())
                .ok_or_else(|| {
                    anyhow!(
                        "generator {}: expected a list of {} subspaces",
                        n + 1,
                        factors.len()
                    )
                })?;
            a.iter().collect()
        };
        let row = parts
            .into_iter()
            .zip(&factors)
            .map(|(p, f)| Subspace::from_json(&f.field, f.dim, p))
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("generator {}", n + 1))?;
        out.push(row);
    }
    Ok((spec, ProductInstance::new(factors, out)?))
}

/// The sidecar term file: `{"arity": n, "constants": {}, "terms": [...]}`.
pub fn terms_file(arity: usize, terms: &[LatticeTerm]) -> Value {
    json!({
        "arity": arity,
        "constants": BTreeMap::<String, Value>::new(),
        "terms": terms.iter().map(term_json).collect::<Vec<_>>(),
    })
}

pub fn load_terms(path: &Path) -> Result<Vec<LatticeTerm>> {
    let v = read_json(path)?;
    if v.get("constants")
        .and_then(Value::as_object)
        .is_some_and(|c| !c.is_empty())
    {
        bail!(
            "{}: constant bindings are not supported for verification",
            path.display()
        );
    }
    let ts = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("{}: expected \"terms\"", path.display()))?;
    Ok(ts
        .iter()
        .map(LatticeTerm::from_json)
        .collect::<Result<Vec<_>, _>>()?)
}
