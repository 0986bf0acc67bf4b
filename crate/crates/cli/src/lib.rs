//! The `lattgen` command line: argument definitions and command handlers.
//! Every handler returns an [`Outcome`] holding both the JSON report and a
//! plain-text rendering; `main` prints one of them and exits with the code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lattgen_core::constructions::{
    bounds, fano_check, matrix_u_generators, mu, qbinom, table1, thm1_generators,
    thm1_generators_with, thm2_certified, thm3_generators, zadori_generators, GenSetRecipe,
    Padding, RecipeKind, Sci,
};
use lattgen_core::field::{Cardinal, Field, FieldKind};
use lattgen_core::lattice::{
    closure, max_antichain, min_genset, obs11_bound, ClosureOptions, FiniteLattice, LatticeSpec,
    Poset, VerifyMode, VerifyOptions, DEFAULT_CAP,
};
use lattgen_core::projective::{canonical_frame, ProjectivePoint};
use serde_json::{json, Value};

pub mod encode;

use encode::*;

#[derive(Parser, Debug)]
#[command(
    name = "lattgen",
    version,
    about = "Generating sets of subspace lattices and their products"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add wall-clock timings to the JSON report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gaussian binomial coefficient: the number of r-dimensional subspaces of GF(q)^m.
    Qbinom {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
        /// Report only the decimal logarithm.
        #[arg(long)]
        log10: bool,
    },
    /// Gaussian binomials [80 choose 40]_q for the tabulated field orders.
    Table1,
    /// Closes (a1,a1), (a2,a2), (a3,a3), (c,w) in the square of the labelled Fano lattice.
    FanoCheck,
    /// Generator-count bounds for Sub(F^d), from t or from a field.
    Bounds {
        /// Least size of a generating set of the field (integer or aleph0).
        #[arg(long, conflicts_with = "field")]
        t: Option<String>,
        /// Take t from this field and also report mu.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        d: u64,
    },
    /// Sublattice generated by the elements of a generator file.
    Closure {
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        generators: PathBuf,
        /// Attach a witness term to every element.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Decides whether a generator file or a built-in recipe generates the lattice.
    #[command(group(ArgGroup::new("source").required(true).args(["generators", "recipe"])))]
    Verify {
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long, value_enum)]
        recipe: Option<RecipeArg>,
        #[command(flatten)]
        args: RecipeArgs,
        /// Separating terms for certificate mode, in the term-file format.
        #[arg(long, requires = "generators")]
        terms: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Writes a recipe's generator file and its separating terms.
    Construct {
        #[arg(value_enum)]
        recipe: RecipeArg,
        #[command(flatten)]
        args: RecipeArgs,
        #[arg(long)]
        out: PathBuf,
        /// Term file; defaults to terms.json next to the generator file.
        #[arg(long)]
        terms: Option<PathBuf>,
    },
    /// Least size of a generating set, by exhaustive search.
    MinGenset {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 6)]
        max: usize,
        /// Close every subset, skipping no candidates.
        #[arg(long)]
        no_prune: bool,
    },
    /// Width of L and of L^n: an n-element generating set separates at most that many factors.
    Antichain {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        n: usize,
    },
    /// One coordinate-ring operation, evaluated as a lattice term on the canonical frame.
    Coordring {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, value_enum)]
        op: RingOp,
        /// Defaults to the dimension.
        #[arg(long)]
        i: Option<usize>,
        /// Defaults to 1.
        #[arg(long)]
        j: Option<usize>,
        /// Defaults to the least index other than i and j.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeArg {
    Thm1,
    Thm2,
    #[value(name = "matrixU", alias = "matrix-u")]
    MatrixU,
    Thm3,
    Zadori,
}

impl RecipeArg {
    fn kind(self) -> RecipeKind {
        match self {
            RecipeArg::Thm1 => RecipeKind::Thm1,
            RecipeArg::Thm2 => RecipeKind::Thm2Power,
            RecipeArg::MatrixU => RecipeKind::MatrixU,
            RecipeArg::Thm3 => RecipeKind::Thm3Product,
            RecipeArg::Zadori => RecipeKind::Zadori,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Closure,
    Fgtln,
    Auto,
}

impl From<ModeArg> for VerifyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Closure => VerifyMode::Closure,
            ModeArg::Fgtln => VerifyMode::Fgtln,
            ModeArg::Auto => VerifyMode::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Sub,
    Recip,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PaddingArg {
    #[default]
    Cycle,
    Unit,
}

/// Recipe parameters. Anything missing is read off `--lattice` when given.
#[derive(Args, Debug, Clone, Default)]
pub struct RecipeArgs {
    /// Field spec (thm1, thm2, matrixU).
    #[arg(long)]
    pub field: Option<String>,
    /// Dimension (thm1, thm2).
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of factors (thm2).
    #[arg(long)]
    pub k: Option<usize>,
    /// Fields with multiplicities, e.g. 2x4,3x4,Qx1 (thm3).
    #[arg(long)]
    pub fields: Option<String>,
    /// Prime (zadori).
    #[arg(long)]
    pub p: Option<u32>,
    /// Dimension (zadori).
    #[arg(long)]
    pub n: Option<usize>,
    /// Field generators for the pattern matrices, comma separated (thm1).
    #[arg(long)]
    pub gens: Option<String>,
    /// How pattern slots are filled once the generators run out (thm1).
    #[arg(long, value_enum, default_value_t = PaddingArg::Cycle)]
    pub padding: PaddingArg,
}

/// A finished command: its JSON report, text rendering and exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            code: 0,
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Qbinom { q, m, r, log10 } => cmd_qbinom(*q, *m, *r, *log10)?,
        Command::Table1 => cmd_table1(),
        Command::FanoCheck => cmd_fano_check(),
        Command::Bounds { t, field, d } => cmd_bounds(t.as_deref(), field.as_deref(), *d)?,
        Command::Closure {
            lattice,
            generators,
            witness,
            cap,
        } => cmd_closure(lattice.as_deref(), generators, *witness, *cap)?,
        Command::Verify {
            lattice,
            generators,
            recipe,
            args,
            terms,
            mode,
            witness,
            cap,
        } => {
            let opts = VerifyOptions {
                cap: *cap,
                witnesses: *witness,
            };
            cmd_verify(
                lattice.as_deref(),
                generators.as_deref(),
                *recipe,
                args,
                terms.as_deref(),
                (*mode).into(),
                opts,
            )?
        }
        Command::Construct {
            recipe,
            args,
            out,
            terms,
        } => cmd_construct(*recipe, args, out, terms.as_deref())?,
        Command::MinGenset {
            lattice,
            max,
            no_prune,
        } => cmd_min_genset(lattice, *max, !*no_prune)?,
        Command::Antichain { lattice, n } => cmd_antichain(lattice, *n)?,
        Command::Coordring {
            field,
            dim,
            op,
            i,
            j,
            k,
            x,
            y,
        } => cmd_coordring(field, *dim, *op, (*i, *j, *k), x, y.as_deref())?,
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    if cli.timings {
        if let Value::Object(m) = &mut out.json {
            m.insert("elapsed_ms".into(), json!((ms * 1000.0).round() / 1000.0));
        }
    }
    out.text.push_str(&format!("elapsed: {ms:.1} ms\n"));
    Ok(out)
}

fn with_command(name: &str, mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        let mut all = serde_json::Map::new();
        all.insert("command".into(), json!(name));
        all.append(m);
        return Value::Object(all);
    }
    v
}

pub fn cmd_qbinom(q: u64, m: u64, r: u64, log10_only: bool) -> Result<Outcome> {
    let value = qbinom(q, m, r)?;
    let sci = Sci::of(&value);
    let log10 = sci.log10();
    let mut j = json!({"q": q, "m": m, "r": r, "sci": sci.to_string(), "log10": round6(log10)});
    let text = if log10_only {
        format!("log10 [{m} choose {r}]_{q} = {log10:.6}\n")
    } else {
        j["value"] = json!(value.to_string());
        format!("[{m} choose {r}]_{q} = {value}\n  = {sci}, log10 = {log10:.6}\n")
    };
    Ok(Outcome::ok(with_command("qbinom", j), text))
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

pub fn cmd_table1() -> Outcome {
    let rows = table1();
    let mut text = String::from("   q   [80 choose 40]_q\n");
    let mut js = Vec::new();
    for row in &rows {
        let (mantissa, exponent) = row.sci.rounded(3);
        text.push_str(&format!("{:>4}   {:.3}*10^{}\n", row.q, mantissa, exponent));
        js.push(json!({
            "q": row.q,
            "mantissa": mantissa,
            "exponent": exponent,
            "sci": row.sci.to_string(),
            "log10": round6(row.sci.log10()),
        }));
    }
    Outcome::ok(
        json!({"command": "table1", "m": 80, "r": 40, "rows": js}),
        text,
    )
}

pub fn cmd_fano_check() -> Outcome {
    let c = fano_check();
    let pair = |(a, b): &(String, String)| format!("({a},{b})");
    let gens: Vec<String> = c.generators.iter().map(pair).collect();
    let elems: Vec<String> = c.elements.iter().map(pair).collect();
    let ok = c.matches_expected && !c.contains_one_zero && c.contains_zero_c;
    let text = format!(
        "generators: {}\nclosure size: {}\nelements: {}\nposition of (1,0): {}\n(0,c) present: {}\nmatches expected list: {}\n",
        gens.join(", "),
        c.elements.len(),
        elems.join(", "),
        if c.contains_one_zero { "present" } else { "-1" },
        c.contains_zero_c,
        c.matches_expected,
    );
    let j = json!({
        "command": "fano-check",
        "generators": gens,
        "closure_size": c.elements.len(),
        "elements": elems,
        "contains_one_zero": c.contains_one_zero,
        "contains_zero_c": c.contains_zero_c,
        "matches_expected": c.matches_expected,
    });
    Outcome {
        json: j,
        text,
        code: if ok { 0 } else { 2 },
    }
}

fn parse_cardinal(s: &str) -> Result<Cardinal> {
    match s.trim() {
        "aleph0" | "omega" | "inf" => Ok(Cardinal::Aleph0),
        x => Ok(Cardinal::finite(
            x.parse().with_context(|| format!("bad cardinal {x:?}"))?,
        )),
    }
}

pub fn cmd_bounds(t: Option<&str>, field: Option<&str>, d: u64) -> Result<Outcome> {
    let (t, mu_value) = match (t, field) {
        (Some(t), _) => (parse_cardinal(t)?, None),
        (None, Some(f)) => {
            let f: Field = f.parse()?;
            (f.generating_data().0, Some(mu(&f, d)?))
        }
        (None, None) => bail!("pass --t or --field"),
    };
    let b = bounds(&t, d)?;
    let mut j = json!({
        "command": "bounds",
        "t": cardinal_json(&t),
        "d": d,
        "M": b.big_m,
        "m": cardinal_json(&b.m),
        "lower": cardinal_json(&b.lower),
        "upper_thm1": cardinal_json(&b.upper_thm1),
        "upper_thm2": cardinal_json(&b.upper_thm2),
    });
    let mut text = format!(
        "t = {t}, d = {d}: M = {}, m = {}\n  single lattice: {} <= generators <= {}\n  powers up to mu: <= {}\n",
        b.big_m, b.m, b.lower, b.upper_thm1, b.upper_thm2
    );
    if let Some(mu) = mu_value {
        j["mu"] = cardinal_json(&mu);
        text.push_str(&format!("  mu = {mu}\n"));
    }
    Ok(Outcome::ok(j, text))
}

fn parse_spec(s: &str) -> Result<LatticeSpec> {
    Ok(s.parse::<LatticeSpec>()?)
}

pub fn cmd_closure(
    lattice: Option<&str>,
    generators: &Path,
    witness: bool,
    cap: usize,
) -> Result<Outcome> {
    let spec = lattice.map(parse_spec).transpose()?;
    let (spec, inst) = load_generators(generators, spec.as_ref())?;
    let l = inst
        .lattice()
        .ok_or_else(|| anyhow!("{spec} is infinite; closure needs finite factors"))?;
    let gens = inst.generators_idx().unwrap();
    let r = closure(
        &l,
        &gens,
        ClosureOptions {
            cap,
            witnesses: witness,
        },
    )?;
    let size = l.size();
    let mut j = json!({
        "command": "closure",
        "lattice": spec.to_string(),
        "closure_size": r.len(),
        "lattice_size": size.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| json!(size.to_string())),
        "reached_full": r.reached_full,
    });
    if let Some(m) = &r.missing_example {
        j["missing_example"] = l.element_to_json(m);
    }
    let labels: Vec<String> = r.elements.iter().map(|e| l.label(e)).collect();
    if witness {
        let ts = r.witness_terms().unwrap();
        let w: serde_json::Map<String, Value> = labels
            .iter()
            .zip(&ts)
            .map(|(k, t)| (k.clone(), term_json(t)))
            .collect();
        j["witnesses"] = Value::Object(w);
    }
    j["elements"] = Value::Array(r.elements.iter().map(|e| l.element_to_json(e)).collect());
    let mut text = format!(
        "lattice {spec}: {} of {size} elements generated{}\n",
        r.len(),
        if r.reached_full { " (all)" } else { "" }
    );
    if let Some(m) = &r.missing_example {
        text.push_str(&format!("not generated, e.g. {}\n", l.label(m)));
    }
    if witness {
        for (k, t) in labels.iter().zip(r.witness_terms().unwrap()) {
            text.push_str(&format!("  {k} = {t}\n"));
        }
    }
    Ok(Outcome::ok(j, text))
}

/// Parses `2x4,3x4,Q` into fields with multiplicities.
fn parse_fields(s: &str) -> Result<Vec<(Field, usize)>> {
    s.split(',')
        .map(|part| {
            let (f, m) = match part.rsplit_once(['x', '*']) {
                Some((f, m)) => (
                    f,
                    m.trim()
                        .parse::<usize>()
                        .with_context(|| format!("bad multiplicity in {part:?}"))?,
                ),
                None => (part, 1),
            };
            Ok((f.trim().parse::<Field>()?, m))
        })
        .collect()
}

/// Consecutive runs of equal fields among 3-dimensional factors.
fn fields_of(leaves: &[(Field, usize)]) -> Result<Vec<(Field, usize)>> {
    let mut out: Vec<(Field, usize)> = Vec::new();
    for (f, d) in leaves {
        if *d != 3 {
            bail!("thm3 needs 3-dimensional factors, got dimension {d}");
        }
        match out.last_mut() {
            Some((g, m)) if g == f => *m += 1,
            _ => out.push((f.clone(), 1)),
        }
    }
    Ok(out)
}

fn single_leaf(leaves: Option<&[(Field, usize)]>) -> Result<Option<(Field, usize)>> {
    match leaves {
        None => Ok(None),
        Some([one]) => Ok(Some(one.clone())),
        Some(_) => bail!("this recipe generates a single subspace lattice"),
    }
}

fn uniform_leaf(leaves: Option<&[(Field, usize)]>) -> Result<Option<(Field, usize, usize)>> {
    match leaves {
        None => Ok(None),
        Some(ls) => {
            let first = ls[0].clone();
            if ls.iter().any(|l| *l != first) {
                bail!("this recipe generates a direct power; the factors differ");
            }
            Ok(Some((first.0, first.1, ls.len())))
        }
    }
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("missing {what} (pass it or give --lattice)"))
}

/// Builds a recipe from its arguments, reading missing ones off `lattice`.
pub fn build_recipe(
    which: RecipeArg,
    a: &RecipeArgs,
    lattice: Option<&LatticeSpec>,
) -> Result<GenSetRecipe> {
    let leaves = lattice.map(|s| s.leaves());
    let leaves = leaves.as_deref();
    let field = a.field.as_deref().map(str::parse::<Field>).transpose()?;
    let recipe = match which {
        RecipeArg::Thm1 => {
            let leaf = single_leaf(leaves)?;
            let f = need(field.or(leaf.as_ref().map(|l| l.0.clone())), "--field")?;
            let d = need(a.d.or(leaf.map(|l| l.1)), "--d")?;
            match &a.gens {
                Some(g) => {
                    let gens = g
                        .split(',')
                        .map(|x| f.parse_element(x))
                        .collect::<Result<Vec<_>, _>>()?;
                    let padding = match a.padding {
                        PaddingArg::Cycle => Padding::Cycle,
                        PaddingArg::Unit => Padding::Unit,
                    };
                    thm1_generators_with(&f, d, &gens, padding)?
                }
                None => thm1_generators(&f, d)?,
            }
        }
        RecipeArg::Zadori => {
            let leaf = single_leaf(leaves)?;
            let p = match (a.p, &leaf) {
                (Some(p), _) => p,
                (None, Some((f, _))) if f.kind() == FieldKind::Prime => f.characteristic(),
                (None, Some((f, _))) => bail!("zadori needs a prime field, got {f}"),
                (None, None) => need(None, "--p")?,
            };
            let n = need(a.n.or(leaf.map(|l| l.1)), "--n")?;
            zadori_generators(p, n)?
        }
        RecipeArg::Thm2 => {
            let leaf = uniform_leaf(leaves)?;
            let f = need(field.or(leaf.as_ref().map(|l| l.0.clone())), "--field")?;
            let d = need(a.d.or(leaf.as_ref().map(|l| l.1)), "--d")?;
            let k = need(a.k.or(leaf.map(|l| l.2)), "--k")?;
            thm2_certified(&f, d, k)?
        }
        RecipeArg::MatrixU => {
            let leaf = uniform_leaf(leaves)?;
            let f = need(field.or(leaf.as_ref().map(|l| l.0.clone())), "--field")?;
            matrix_u_generators(&f, None)?
        }
        RecipeArg::Thm3 => {
            let fields = match (&a.fields, leaves) {
                (Some(s), _) => parse_fields(s)?,
                (None, Some(ls)) => fields_of(ls)?,
                (None, None) => need(None, "--fields")?,
            };
            thm3_generators(&fields)?
        }
    };
    if let Some(spec) = lattice {
        let built = spec_of(&recipe.instance);
        if built.leaves() != spec.leaves() {
            bail!(
                "the {} recipe builds generators of {built}, not {spec}",
                which.kind()
            );
        }
    }
    Ok(recipe)
}

fn verify_text(spec: &LatticeSpec, r: &lattgen_core::lattice::VerifyReport) -> String {
    let mut t = format!(
        "lattice {spec}\nmode: {}\ngenerates: {}\n",
        mode_name(r.mode),
        verdict_word(r.generates)
    );
    if let Some(s) = r.closure_size {
        t.push_str(&format!("closure size: {s} of {}\n", r.lattice_size));
    } else {
        t.push_str(&format!("lattice size: {}\n", r.lattice_size));
    }
    if let Some(e) = &r.missing_example {
        let parts: Vec<String> = e.iter().map(|s| s.short()).collect();
        t.push_str(&format!("not generated, e.g. ({})\n", parts.join(", ")));
    }
    if let Some(table) = &r.delta_table {
        t.push_str("separating terms on each factor:\n");
        for row in table {
            let cells: Vec<&str> = row
                .iter()
                .map(|c| match c {
                    lattgen_core::lattice::DeltaCell::One => "1",
                    lattgen_core::lattice::DeltaCell::Zero => "0",
                    lattgen_core::lattice::DeltaCell::Other => "*",
                })
                .collect();
            t.push_str(&format!("  {}\n", cells.join(" ")));
        }
    }
    if let Some(ws) = &r.witnesses {
        for (k, w) in ws {
            t.push_str(&format!("  {k} = {w}\n"));
        }
    }
    if let Some(n) = &r.note {
        t.push_str(&format!("note: {n}\n"));
    }
    t
}

pub fn cmd_verify(
    lattice: Option<&str>,
    generators: Option<&Path>,
    recipe: Option<RecipeArg>,
    args: &RecipeArgs,
    terms: Option<&Path>,
    mode: VerifyMode,
    opts: VerifyOptions,
) -> Result<Outcome> {
    let spec = lattice.map(parse_spec).transpose()?;
    let (spec, report, source) = match (generators, recipe) {
        (Some(path), _) => {
            let (spec, inst) = load_generators(path, spec.as_ref())?;
            let ts = terms.map(load_terms).transpose()?;
            let report = lattgen_core::lattice::verify_generates(&inst, mode, ts.as_deref(), opts)?;
            (
                spec,
                report,
                json!({"generators": path.display().to_string()}),
            )
        }
        (None, Some(which)) => {
            let r = build_recipe(which, args, spec.as_ref())?;
            let spec = spec_of(&r.instance);
            let report = r.verify(mode, opts)?;
            (
                spec,
                report,
                json!({"recipe": which.kind().name(), "params": r.params}),
            )
        }
        (None, None) => bail!("pass --generators or --recipe"),
    };
    let mut j = report_json(&report);
    j["lattice"] = json!(spec.to_string());
    j["source"] = source;
    let text = verify_text(&spec, &report);
    Ok(Outcome {
        json: with_command("verify", j),
        text,
        code: report.generates.exit_code(),
    })
}

pub fn cmd_construct(
    which: RecipeArg,
    args: &RecipeArgs,
    out: &Path,
    terms: Option<&Path>,
) -> Result<Outcome> {
    let r = build_recipe(which, args, None)?;
    let spec = spec_of(&r.instance);
    let mut file = generator_file(&spec, &r.instance);
    file["recipe"] = json!(which.kind().name());
    file["params"] = r.params.clone();
    write_json(out, &file)?;
    let terms_path = match terms {
        Some(p) => Some(p.to_path_buf()),
        None if r.certificate_terms.is_some() => Some(
            out.parent()
                .map(|d| d.join("terms.json"))
                .unwrap_or_else(|| PathBuf::from("terms.json")),
        ),
        None => None,
    };
    if let (Some(p), Some(ts)) = (&terms_path, &r.certificate_terms) {
        write_json(p, &terms_file(r.generator_count(), ts))?;
    }
    let j = json!({
        "command": "construct",
        "recipe": which.kind().name(),
        "params": r.params,
        "lattice": spec.to_string(),
        "generator_count": r.generator_count(),
        "out": out.display().to_string(),
        "terms": terms_path.as_ref().filter(|_| r.certificate_terms.is_some()).map(|p| p.display().to_string()),
    });
    let mut text = format!(
        "{} generators of {spec} written to {}\n",
        r.generator_count(),
        out.display()
    );
    if let (Some(p), Some(ts)) = (&terms_path, &r.certificate_terms) {
        text.push_str(&format!(
            "{} separating terms written to {}\n",
            ts.len(),
            p.display()
        ));
    }
    Ok(Outcome::ok(j, text))
}

pub fn cmd_min_genset(lattice: &str, max: usize, prune: bool) -> Result<Outcome> {
    let l = FiniteLattice::parse(lattice)?;
    if l.factor_count() != 1 {
        bail!("min-genset takes a single subspace lattice, not a product");
    }
    let base = &l.factors()[0];
    let r = min_genset(base, max, prune)?;
    let example: Vec<Value> = r.example.iter().map(|&x| base.element_to_json(x)).collect();
    let labels: Vec<&str> = r.example.iter().map(|&x| base.label(x)).collect();
    let j = json!({
        "command": "min-genset",
        "lattice": lattice,
        "lattice_size": base.size(),
        "min": r.min,
        "max_size": r.max_size,
        "example": example,
        "example_labels": labels,
        "closures_computed": r.closures_computed,
        "pruned": r.pruned,
        "prune": prune,
    });
    let text = match r.min {
        Some(k) => format!(
            "{lattice} ({} elements): least generating set has {k} elements\n  e.g. {}\n  {} closures computed, {} candidates pruned\n",
            base.size(),
            labels.join(", "),
            r.closures_computed,
            r.pruned
        ),
        None => format!("{lattice}: no generating set of at most {max} elements\n"),
    };
    Ok(Outcome::ok(j, text))
}

pub fn cmd_antichain(lattice: &str, n: usize) -> Result<Outcome> {
    let l = FiniteLattice::parse(lattice)?;
    let p = Poset::of_lattice(&l)?;
    let width = max_antichain(&p);
    let o = obs11_bound(&p, n);
    let bound = o
        .exact
        .map(|e| e.to_string())
        .unwrap_or_else(|| o.coarse.to_string());
    let j = json!({
        "command": "antichain",
        "lattice": lattice,
        "size": p.len(),
        "width": width,
        "n": n,
        "coarse": o.coarse.to_string(),
        "exact": o.exact,
    });
    let text = format!(
        "{lattice}: {} elements, width {width}\n  |L|^{n} = {}\n  width of L^{n}: {}\n  so L^k is not {n}-generated for k > {bound}\n",
        p.len(),
        o.coarse,
        o.exact.map(|e| e.to_string()).unwrap_or_else(|| "skipped (too large)".into()),
    );
    Ok(Outcome::ok(j, text))
}

pub fn cmd_coordring(
    field: &str,
    dim: usize,
    op: RingOp,
    (i, j, k): (Option<usize>, Option<usize>, Option<usize>),
    x: &str,
    y: Option<&str>,
) -> Result<Outcome> {
    let f: Field = field.parse()?;
    let fr = canonical_frame(&f, dim)?;
    let i = i.unwrap_or(dim);
    let j = j.unwrap_or(1);
    let k = k.unwrap_or_else(|| (1..=dim).find(|&t| t != i && t != j).unwrap_or(0));
    let xs = f.parse_element(x)?;
    let xp = fr.delta(i, j, &xs)?.into_subspace();
    let binary = |name: &str| -> Result<_> {
        let y = y.ok_or_else(|| anyhow!("--op {name} needs --y"))?;
        let ys = f.parse_element(y)?;
        Ok((ys.clone(), fr.delta(i, j, &ys)?.into_subspace()))
    };
    let (result, ys) = match op {
        RingOp::Recip => (fr.coring_recip(i, j, k, &xp)?, None),
        RingOp::Add => {
            let (ys, yp) = binary("add")?;
            (fr.coring_add(i, j, k, &xp, &yp)?, Some(ys))
        }
        RingOp::Mul => {
            let (ys, yp) = binary("mul")?;
            (fr.coring_mul(i, j, k, &xp, &yp)?, Some(ys))
        }
        RingOp::Sub => {
            let (ys, yp) = binary("sub")?;
            (fr.coring_sub(i, j, k, &xp, &yp)?, Some(ys))
        }
    };
    let point = ProjectivePoint::new(result.clone())
        .map(|p| p.to_string())
        .unwrap_or_else(|_| result.short());
    // the reciprocal of the ring zero leaves the ring
    let value = fr
        .in_coordinate_ring(i, j, &result)
        .then(|| fr.delta_read(i, j, &result))
        .transpose()?;
    let value_str = value.as_ref().map(|v| f.format_element(v));
    let opname = format!("{op:?}").to_lowercase();
    let js = json!({
        "command": "coordring",
        "field": f.to_string(),
        "dim": dim,
        "op": opname,
        "i": i,
        "j": j,
        "k": k,
        "x": f.format_element(&xs),
        "y": ys.as_ref().map(|v| f.format_element(v)),
        "result": value_str,
        "point": point,
    });
    let args = match &ys {
        Some(v) => format!("{}, {}", f.format_element(&xs), f.format_element(v)),
        None => f.format_element(&xs),
    };
    let text = match &value_str {
        Some(v) => format!("{opname}({args}) in R({i},{j}) with k = {k}: {v}\n  point {point}\n"),
        None => format!("{opname}({args}) in R({i},{j}) with k = {k}: {point}, outside the ring\n"),
    };
    Ok(Outcome::ok(js, text))
}

/// Parses and runs `args` as if given on the command line.
pub fn run_args<I, T>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| anyhow!("{e}"))?;
    run(&cli)
}
