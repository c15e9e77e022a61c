//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use gpilab_core::builtins::Builtin;
use gpilab_core::cocharacter::{cocharacter_multidegree, cocharacter_table, MultiplicityTable};
use gpilab_core::codim::{codim_multidegree, codim_series, codim_total, Caps, CodimCache, SeriesValue};
use gpilab_core::eval::is_identity;
use gpilab_core::exponent::{admissible_subalgebras, growth_crosscheck};
use gpilab_core::format::{self, Definition};
use gpilab_core::free::MultiDegree;
use gpilab_core::multiplier::{grading_of_m, multiplier_algebra};
use gpilab_core::tideal::{verify_basis, GeneratorSet, Status};
use gpilab_core::FileCache;
use serde_json::json;

use crate::output::{Format, Report};
use crate::parse::{parse_generators, parse_polynomial, VarTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gpilab", version, about = "Generalized graded polynomial identities of finite-dimensional algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Algebra definition (JSON).
    #[arg(long, global = true, conflicts_with = "builtin")]
    pub algebra: Option<PathBuf>,
    /// One of ut2:full, ut2:D, ut2:C, ut2:F.
    #[arg(long, global = true)]
    pub builtin: Option<Builtin>,
    /// Directory for cached multidegree codimensions.
    #[arg(long, global = true, env = "GPILAB_CACHE")]
    pub cache: Option<PathBuf>,
    /// Ignore the cache for this run.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Rows evaluated per multidegree before giving up.
    #[arg(long, global = true)]
    pub max_rows: Option<u64>,
    /// Rows stored per echelon basis before giving up.
    #[arg(long, global = true)]
    pub max_echelon_rows: Option<usize>,
    /// Variable prefixes as prefix=group-label pairs, e.g. "y=0,z=1".
    #[arg(long, global = true)]
    pub vars: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Codimensions c_n, c_{n_1,...,n_s} or the series up to n-max.
    #[command(group(ArgGroup::new("what").required(true).args(["n", "multidegree", "n_max"])))]
    Codim {
        #[arg(long)]
        n: Option<usize>,
        /// Letter counts per group element, e.g. 2,1.
        #[arg(long)]
        multidegree: Option<MultiDegree>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Decide whether a polynomial is an identity.
    Identity {
        /// e.g. "w1*y1 - y1*w1".
        polynomial: String,
    },
    /// Check that generators span all multilinear identities of degree n.
    Tideal {
        #[arg(long)]
        n: usize,
        /// One polynomial per line; defaults to the builtin's generators.
        #[arg(long)]
        generators_file: Option<PathBuf>,
    },
    /// Cocharacter multiplicities of degree n.
    Cochar {
        #[arg(long)]
        n: usize,
        /// Only the multidegree (r, n-r).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Graded exponent and a growth check of the codimension series.
    Exponent {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Multiplier algebra dimensions and the acting basis.
    Multiplier,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gpilab_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_truncation() => EXIT_TRUNCATED,
            _ => EXIT_USAGE,
        }
    }
}

struct Session {
    def: Definition,
    label: String,
    builtin: Option<Builtin>,
    vars: VarTable,
    caps: Caps,
    cache: Option<FileCache>,
}

impl Session {
    fn cache(&self) -> Option<&dyn CodimCache> {
        self.cache.as_ref().map(|c| c as &dyn CodimCache)
    }

    fn group_label(&self, g: usize) -> &str {
        self.def.algebra.group().label(g)
    }
}

fn session(g: &Global) -> Result<Session, Failure> {
    let (def, label, builtin) = match (&g.algebra, g.builtin) {
        (Some(path), _) => (format::load_definition(path)?, path.display().to_string(), None),
        (None, Some(b)) => (b.definition(), b.name().to_string(), Some(b)),
        (None, None) => return Err(Failure::Usage("one of --algebra or --builtin is required".into())),
    };
    let group = def.algebra.group();
    let vars = match &g.vars {
        Some(spec) => VarTable::parse(spec, group).map_err(Failure::Usage)?,
        None => VarTable::default_for(group),
    };
    let mut caps = Caps::default();
    if let Some(m) = g.max_rows {
        caps.max_rows = m;
    }
    if let Some(m) = g.max_echelon_rows {
        caps.max_echelon_rows = m;
    }
    if caps.max_rows == 0 || caps.max_echelon_rows == 0 {
        return Err(Failure::Usage("caps must be positive".into()));
    }
    let cache = match (&g.cache, g.no_cache) {
        (Some(dir), false) => Some(FileCache::new(dir)?),
        _ => None,
    };
    Ok(Session {
        def,
        label,
        builtin,
        vars,
        caps,
        cache,
    })
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    if let Some(k) = cli.global.threads {
        if k == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let s = session(&cli.global)?;
    let (report, code) = match &cli.command {
        Command::Codim { n, multidegree, n_max } => codim(&s, *n, multidegree.as_ref(), *n_max)?,
        Command::Identity { polynomial } => identity(&s, polynomial, err)?,
        Command::Tideal { n, generators_file } => tideal(&s, *n, generators_file.as_ref(), err)?,
        Command::Cochar { n, r } => cochar(&s, *n, *r)?,
        Command::Exponent { n_max } => exponent(&s, *n_max)?,
        Command::Multiplier => multiplier(&s)?,
    };
    report.emit(cli.global.format, out)?;
    Ok(code)
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn codim(s: &Session, n: Option<usize>, md: Option<&MultiDegree>, n_max: Option<usize>) -> Result<(Report, i32), Failure> {
    let (a, w) = (&s.def.algebra, &s.def.action);
    if let Some(md) = md {
        md.check_group(a.group())?;
        let r = codim_multidegree(a, w, md, &s.caps, s.cache())?;
        let mut rep = Report::new(&["multidegree", "codim", "rows"]);
        rep.row(vec![md.to_string(), r.rank.to_string(), r.rows_processed.to_string()]);
        rep.json = to_json(&r);
        return Ok((rep, EXIT_OK));
    }
    if let Some(n) = n {
        let t = codim_total(a, w, n, &s.caps, s.cache())?;
        let mut rep = Report::new(&["multidegree", "codim", "multinomial", "weighted"]);
        for p in &t.parts {
            let weighted = &p.weight * p.result.rank;
            rep.row(vec![
                p.result.multidegree.to_string(),
                p.result.rank.to_string(),
                p.weight.to_string(),
                weighted.to_string(),
            ]);
        }
        rep.summary.push(format!("c_{n} = {}", t.total));
        rep.json = to_json(&t);
        return Ok((rep, EXIT_OK));
    }
    let n_max = n_max.expect("clap requires one of the three");
    let series = codim_series(a, w, n_max, &s.caps, s.cache())?;
    let mut rep = Report::new(&["n", "codim", "ratio", "root"]);
    let mut code = EXIT_OK;
    for e in &series.entries {
        let value = match &e.value {
            SeriesValue::Value { codim } => codim.to_string(),
            SeriesValue::Truncated { reason } => {
                code = EXIT_TRUNCATED;
                format!("truncated ({reason})")
            }
        };
        rep.row(vec![
            e.n.to_string(),
            value,
            e.ratio.clone().unwrap_or_default(),
            e.root.map(|r| format!("{r:.6}")).unwrap_or_default(),
        ]);
    }
    rep.json = to_json(&series);
    Ok((rep, code))
}

fn identity(s: &Session, text: &str, err: &mut dyn Write) -> Result<(Report, i32), Failure> {
    let (a, w) = (&s.def.algebra, &s.def.action);
    let parsed = parse_polynomial(text, w, &s.vars).map_err(|e| Failure::Usage(format!("parse error at {e}")))?;
    for d in &parsed.dropped {
        writeln!(err, "note: {d} is outside the acting basis of {} and is read as 0", s.label)?;
    }
    let f = &parsed.polynomial;
    let verdict = is_identity(f, a, w)?;
    let mut rep = Report::new(&["variable", "value"]);
    let mut witness = serde_json::Value::Null;
    if let Some(wit) = &verdict.witness {
        for (v, e) in &wit.assignment {
            rep.row(vec![v.to_string(), e.to_string()]);
        }
        rep.row(vec!["f".into(), wit.value.to_string()]);
        witness = json!({
            "assignment": wit.assignment.iter().map(|(v, e)| (v.to_string(), e.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
            "value": wit.value.to_string(),
        });
    }
    rep.summary.push(format!("f = {}", if f.is_zero() { "0".to_string() } else { f.to_string() }));
    rep.summary
        .push(if verdict.identity { "IDENTITY" } else { "NOT AN IDENTITY" }.to_string());
    rep.json = json!({
        "polynomial": f.to_string(),
        "identity": verdict.identity,
        "witness": witness,
    });
    Ok((rep, if verdict.identity { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn tideal(s: &Session, n: usize, file: Option<&PathBuf>, err: &mut dyn Write) -> Result<(Report, i32), Failure> {
    let (a, w) = (&s.def.algebra, &s.def.action);
    let gens = match (file, s.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            let parsed = parse_generators(&text, w, &s.vars)
                .map_err(|(line, e)| Failure::Usage(format!("{}:{line}: parse error at {e}", path.display())))?;
            for (name, p) in &parsed {
                for d in &p.dropped {
                    writeln!(err, "note: {d} in {name:?} is outside the acting basis and is read as 0")?;
                }
            }
            GeneratorSet::new(parsed.into_iter().map(|(name, p)| (name, p.polynomial)).collect())
        }
        (None, Some(b)) => GeneratorSet::new(b.generators(w)),
        (None, None) => return Err(Failure::Usage("--generators-file is required for --algebra input".into())),
    };
    let report = verify_basis(&gens, a, w, n, &s.caps, s.cache())?;
    let mut rep = Report::new(&["multidegree", "span", "codim", "kernel", "consequences", "status", "witness"]);
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    for e in &report.entries {
        let kernel = e.codim.map(|c| e.span_size as u64 - c);
        rep.row(vec![
            e.multidegree.to_string(),
            e.span_size.to_string(),
            opt(e.codim),
            opt(kernel),
            opt(e.consequences.map(|c| c as u64)),
            status_text(e.status).into(),
            e.witness.clone().or_else(|| e.note.clone()).unwrap_or_default(),
        ]);
    }
    rep.summary.push(status_text(report.status).to_string());
    rep.json = to_json(&report);
    let code = match report.status {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_NEGATIVE,
        Status::Truncated => EXIT_TRUNCATED,
    };
    Ok((rep, code))
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Truncated => "TRUNCATED",
    }
}

fn cochar(s: &Session, n: usize, r: Option<usize>) -> Result<(Report, i32), Failure> {
    let (a, w) = (&s.def.algebra, &s.def.action);
    let order = a.group().order();
    let table = match r {
        Some(r) => {
            if order != 2 || r > n {
                return Err(Failure::Usage("--r needs a group of order 2 and r <= n".into()));
            }
            let (entries, check) = cocharacter_multidegree(a, w, &MultiDegree::new(vec![r, n - r]), &s.caps, s.cache())?;
            MultiplicityTable {
                n,
                entries,
                checks: vec![check],
            }
        }
        None => cocharacter_table(a, w, n, &s.caps, s.cache())?,
    };
    let two = order == 2;
    let mut headers: Vec<String> = vec!["r".into()];
    if two {
        headers.extend(["λ".into(), "μ".into()]);
    } else {
        headers.extend((0..order).map(|g| format!("λ[{}]", s.group_label(g))));
    }
    headers.push("m".into());
    if two {
        headers.extend(["d_λ".into(), "d_μ".into()]);
    } else {
        headers.extend((0..order).map(|g| format!("d[{}]", s.group_label(g))));
    }
    headers.push("contribution".into());
    let mut rep = Report {
        headers,
        ..Report::default()
    };
    for e in &table.entries {
        let mut row = vec![e.multidegree.counts[0].to_string()];
        row.extend(e.shapes.iter().map(ToString::to_string));
        row.push(e.multiplicity.to_string());
        row.extend(e.dims.iter().map(ToString::to_string));
        row.push(e.contribution.to_string());
        rep.row(row);
    }
    for c in &table.checks {
        rep.summary.push(format!(
            "multidegree {}: sum {} vs codim {} {}",
            c.multidegree,
            c.sum,
            c.codim,
            if c.consistent { "ok" } else { "MISMATCH" }
        ));
    }
    rep.json = to_json(&table);
    Ok((rep, if table.consistent() { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn exponent(s: &Session, n_max: usize) -> Result<(Report, i32), Failure> {
    let (a, w) = (&s.def.algebra, &s.def.action);
    let wd = s
        .def
        .wedderburn
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("{} has no wedderburn block", s.label)))?;
    wd.validate(a)?;
    let adm = admissible_subalgebras(wd, a);
    let growth = growth_crosscheck(a, w, Some(wd), n_max, &s.caps, s.cache())?;
    let mut rep = Report::new(&["components", "order", "dimension"]);
    let list = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
    for x in &adm {
        rep.row(vec![list(&x.components), list(&x.order), x.dimension.to_string()]);
    }
    rep.summary.push(format!("exponent {}", growth.exponent));
    let codims: Vec<String> = growth.codims.iter().map(ToString::to_string).collect();
    rep.summary.push(format!("codimensions {}", codims.join(" ")));
    rep.summary.push(format!(
        "growth {} (u = {}, bound {})",
        if growth.pass { "PASS" } else { "FAIL" },
        growth.fitted_u.map_or("none".to_string(), |u| u.to_string()),
        growth.u_bound
    ));
    if let Some(t) = &growth.truncated {
        rep.summary.push(format!("truncated: {t}"));
    }
    rep.json = json!({ "admissible": to_json(&adm), "growth": to_json(&growth) });
    let code = if growth.truncated.is_some() {
        EXIT_TRUNCATED
    } else if growth.pass {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok((rep, code))
}

fn multiplier(s: &Session) -> Result<(Report, i32), Failure> {
    let (a, w) = (&s.def.algebra, &s.def.action);
    let total = multiplier_algebra(a).len();
    let split: Vec<usize> = grading_of_m(a).iter().map(Vec::len).collect();
    let mut rep = Report::new(&["degree", "dim M(A)^g", "acting basis"]);
    for (g, d) in split.iter().enumerate() {
        let acting: Vec<String> = (0..w.dim()).filter(|&i| w.degree(i) == g).map(|i| format!("w{i}")).collect();
        rep.row(vec![s.group_label(g).to_string(), d.to_string(), acting.join(" ")]);
    }
    rep.summary.push(format!("dim M(A) = {total}"));
    rep.summary.push(format!("dim W = {}", w.dim()));
    rep.json = json!({
        "dim": total,
        "split": split,
        "acting_degrees": w.degrees(),
        "hash": s.def.content_hash(),
    });
    Ok((rep, EXIT_OK))
}
