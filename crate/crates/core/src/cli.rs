//! Batch command-line surface.
//!
//! Every command produces an [`Envelope`] of typed results that renders as
//! JSON, CSV or plain text. Output depends only on the job configuration,
//! never on the worker count.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{classify, r_omega, Branch, Classification, EtaChoice, UnramifiedData};
use crate::exact::GaussRat;
use crate::field_arith::{hilbert, FieldConfig, SquareClassElement, UnitClass};
use crate::selfcheck::{run_selfcheck, SelfcheckReport};
use crate::torus::{normal_form, CoverTorusElement, TorusElement};
use crate::whittaker::{
    default_probes, dominant_orders_bounded, k_eval, l_ratio_eigenvalues, rank_of_span,
    sp_whittaker, spanning_set, TorusOrders, WhittakerValue,
};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hilbert,
    WhittakerTable,
    SpanningSet,
    Classify,
    Selfcheck,
}

/// A validated-on-use job description; echoed verbatim in JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<EtaChoice>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_list: Option<Vec<u64>>,
    pub output: OutputFormat,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            q: None,
            n: None,
            alpha: None,
            beta: None,
            eta: None,
            branch: None,
            y: None,
            k_max: None,
            a: None,
            b: None,
            n_max: None,
            q_list: None,
            output: OutputFormat::Json,
        }
    }

    fn field(&self) -> Result<FieldConfig, Error> {
        FieldConfig::new(
            self.q
                .ok_or_else(|| Error::InvalidConfig("--q is required".into()))?,
        )
    }

    fn alpha_values(&self) -> Result<Option<Vec<GaussRat>>, Error> {
        let Some(raw) = &self.alpha else {
            return Ok(None);
        };
        let alpha = raw
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<GaussRat>, _>>()?;
        if let Some(n) = self.n {
            if n != alpha.len() {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.len(),
                });
            }
        }
        Ok(Some(alpha))
    }

    fn rank(&self) -> Result<usize, Error> {
        let n = match (self.n, &self.alpha) {
            (Some(n), _) => n,
            (None, Some(a)) => a.len(),
            (None, None) => return Err(Error::InvalidConfig("--n or --alpha is required".into())),
        };
        if n == 0 {
            return Err(Error::InvalidConfig("rank must be at least 1".into()));
        }
        Ok(n)
    }

    fn data(&self) -> Result<UnramifiedData, Error> {
        let alpha = self
            .alpha_values()?
            .ok_or_else(|| Error::InvalidConfig("--alpha is required".into()))?;
        let beta = match &self.beta {
            Some(b) => b.parse()?,
            None => GaussRat::one(),
        };
        UnramifiedData::new(
            alpha,
            beta,
            self.branch.unwrap_or(Branch::Plus),
            self.eta.unwrap_or(EtaChoice::Eta1),
        )
    }

    fn y_class(&self) -> Result<SquareClassElement, Error> {
        let y: SquareClassElement = self.y.as_deref().unwrap_or("1").parse()?;
        if y.ord != 0 && y.ord != 1 {
            return Err(Error::InvalidConfig(format!(
                "y must be one of 1, u0, pi, piu0; got {y}"
            )));
        }
        Ok(y)
    }

    fn k_max(&self) -> Result<i64, Error> {
        let k = self.k_max.unwrap_or(3);
        if !(0..=64).contains(&k) {
            return Err(Error::InvalidConfig(format!(
                "--k-max must lie in 0..=64, got {k}"
            )));
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<R> {
    pub config: JobConfig,
    pub results: R,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertResult {
    pub a: String,
    pub b: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: Vec<i64>,
    pub phase: String,
    pub v_power: i64,
    pub beta_power: i64,
    pub body: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub body_at_alpha: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableResult {
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanProbe {
    pub k: Vec<i64>,
    pub m: u8,
    pub u: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanResult {
    pub labels: Vec<String>,
    pub probes: Vec<SpanProbe>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub classification: Classification,
    pub unitary: bool,
    pub r_omega_order: usize,
    pub r_omega: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eigenvalues: Option<[String; 2]>,
}

fn row(
    k: &TorusOrders,
    w: &WhittakerValue,
    alpha: Option<&[GaussRat]>,
    q: u64,
) -> Result<TableRow, Error> {
    let body_at_alpha = match alpha {
        Some(a) => Some(w.body.eval(a, q)?.to_string()),
        None => None,
    };
    Ok(TableRow {
        k: k.k.clone(),
        phase: w.phase.to_string(),
        v_power: w.v_power,
        beta_power: w.beta_power,
        body: w.body.to_string(),
        value: w.to_string(),
        body_at_alpha,
    })
}

pub fn cmd_hilbert(cfg: &JobConfig) -> Result<Envelope<HilbertResult>, Error> {
    let field = cfg.field()?;
    let tok = |s: &Option<String>, flag: &str| -> Result<SquareClassElement, Error> {
        s.as_deref()
            .ok_or_else(|| Error::InvalidConfig(format!("--{flag} is required")))?
            .parse()
    };
    let a = tok(&cfg.a, "a")?;
    let b = tok(&cfg.b, "b")?;
    Ok(Envelope {
        config: cfg.clone(),
        results: HilbertResult {
            a: a.to_string(),
            b: b.to_string(),
            value: hilbert(a, b, &field).to_i64(),
        },
        provenance: Provenance {
            formula: "hilbert".into(),
        },
    })
}

/// The `Sp` values of one `y`-orbit, or with `--branch` the extension
/// function of that branch at `[π^k]` (times `i(π^{-1})` for `minus`).
pub fn cmd_whittaker_table(cfg: &JobConfig) -> Result<Envelope<TableResult>, Error> {
    let field = cfg.field()?;
    let n = cfg.rank()?;
    let alpha = cfg.alpha_values()?;
    let grid = dominant_orders_bounded(n, cfg.k_max()?);
    let q = field.q();
    let (rows, formula) = match cfg.branch {
        None => {
            let y = cfg.y_class()?;
            let rows = grid
                .par_iter()
                .map(|k| row(k, &sp_whittaker(n, y, k, &field)?, alpha.as_deref(), q))
                .collect::<Result<Vec<_>, Error>>()?;
            (rows, if y.ord == 0 { "unit-orbit" } else { "pi-orbit" })
        }
        Some(branch) => {
            if cfg.y.is_some() {
                return Err(Error::InvalidConfig(
                    "--y and --branch are mutually exclusive".into(),
                ));
            }
            let d = match &cfg.alpha {
                Some(_) => cfg.data()?,
                None => UnramifiedData::new(
                    vec![GaussRat::one(); n],
                    GaussRat::one(),
                    branch,
                    cfg.eta.unwrap_or(EtaChoice::Eta1),
                )?,
            };
            let d = UnramifiedData { branch, ..d };
            let lambda = SquareClassElement::pi_pow(-(branch.parity() as i64));
            let rows = grid
                .par_iter()
                .map(|k| {
                    let t = k.k.iter().map(|&e| SquareClassElement::pi_pow(e)).collect();
                    let h = CoverTorusElement::lift(TorusElement::new(t, lambda));
                    row(k, &k_eval(&d, &h, &field)?, alpha.as_deref(), q)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            (
                rows,
                if branch == Branch::Plus {
                    "k-plus"
                } else {
                    "k-minus"
                },
            )
        }
    };
    Ok(Envelope {
        config: cfg.clone(),
        results: TableResult { rows },
        provenance: Provenance {
            formula: formula.into(),
        },
    })
}

pub fn cmd_spanning_set(cfg: &JobConfig) -> Result<Envelope<SpanResult>, Error> {
    let field = cfg.field()?;
    let d = cfg.data()?;
    let fs = spanning_set(&d);
    let probes = default_probes(d.n);
    let rows = probes
        .par_iter()
        .map(|h| {
            let nf = normal_form(h, &field);
            let values = fs
                .iter()
                .map(|f| f.eval(h, &field).map(|v| v.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let u = match nf.u {
                UnitClass::Trivial => "1",
                UnitClass::U0 => "u0",
            };
            Ok(SpanProbe {
                k: nf.k(),
                m: nf.m,
                u: u.into(),
                values,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let rank = rank_of_span(&d, &probes, &field)?;
    Ok(Envelope {
        config: cfg.clone(),
        results: SpanResult {
            labels: fs.iter().map(|f| f.label.to_string()).collect(),
            probes: rows,
            rank,
        },
        provenance: Provenance {
            formula: "k-plus+k-minus".into(),
        },
    })
}

pub fn cmd_classify(cfg: &JobConfig) -> Result<Envelope<ClassifyResult>, Error> {
    let field = cfg.field()?;
    let d = cfg.data()?;
    let class = classify(&d)?;
    let r = r_omega(&d)?;
    let eigenvalues = match class {
        Classification::TwoGenericSummands => {
            let (p, m) = l_ratio_eigenvalues(d.n, &field)?;
            Some([p.to_string(), m.to_string()])
        }
        _ => None,
    };
    Ok(Envelope {
        config: cfg.clone(),
        results: ClassifyResult {
            classification: class,
            unitary: d.is_unitary(),
            r_omega_order: r.order(),
            r_omega: r.classes.iter().map(|c| c.to_string()).collect(),
            eigenvalues,
        },
        provenance: Provenance {
            formula: "r-omega".into(),
        },
    })
}

pub fn cmd_selfcheck(cfg: &JobConfig) -> Result<Envelope<SelfcheckReport>, Error> {
    let qs = cfg.q_list.clone().unwrap_or_else(|| vec![3, 5]);
    for &q in &qs {
        FieldConfig::new(q)?;
    }
    let n_max = cfg.n_max.unwrap_or(2);
    if !(1..=3).contains(&n_max) {
        return Err(Error::InvalidConfig(format!(
            "--n-max must lie in 1..=3, got {n_max}"
        )));
    }
    Ok(Envelope {
        config: cfg.clone(),
        results: run_selfcheck(n_max, &qs),
        provenance: Provenance {
            formula: "selfcheck".into(),
        },
    })
}

/// Rendering of an envelope in one of the output formats.
pub trait Render: Serialize {
    fn csv_header(&self) -> Vec<String>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
    fn text(&self) -> String;
}

fn join_k(k: &[i64]) -> String {
    let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl Render for HilbertResult {
    fn csv_header(&self) -> Vec<String> {
        vec!["a".into(), "b".into(), "value".into()]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.a.clone(), self.b.clone(), self.value.to_string()]]
    }
    fn text(&self) -> String {
        format!("({}, {})_F = {}\n", self.a, self.b, self.value)
    }
}

impl Render for TableResult {
    fn csv_header(&self) -> Vec<String> {
        vec!["k".into(), "value".into()]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| vec![join_k(&r.k), r.value.clone()])
            .collect()
    }
    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let _ = write!(s, "k={}  {}", join_k(&r.k), r.value);
            if let Some(b) = &r.body_at_alpha {
                let _ = write!(s, "  [body(alpha) = {b}]");
            }
            s.push('\n');
        }
        s
    }
}

impl Render for SpanResult {
    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["k".to_string(), "m".into(), "u".into()];
        h.extend(self.labels.iter().cloned());
        h
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.probes
            .iter()
            .map(|p| {
                let mut r = vec![join_k(&p.k), p.m.to_string(), p.u.clone()];
                r.extend(p.values.iter().cloned());
                r
            })
            .collect()
    }
    fn text(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "f{} = k{}", i + 1, l);
        }
        for p in &self.probes {
            let _ = writeln!(s, "k={} m={} u={}", join_k(&p.k), p.m, p.u);
            for (i, v) in p.values.iter().enumerate() {
                let _ = writeln!(s, "  f{} = {v}", i + 1);
            }
        }
        let _ = writeln!(s, "rank = {}", self.rank);
        s
    }
}

impl Render for ClassifyResult {
    fn csv_header(&self) -> Vec<String> {
        vec![
            "classification".into(),
            "r_omega_order".into(),
            "eigenvalue_plus".into(),
            "eigenvalue_minus".into(),
        ]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let (p, m) = match &self.eigenvalues {
            Some([p, m]) => (p.clone(), m.clone()),
            None => (String::new(), String::new()),
        };
        vec![vec![
            self.classification.to_string(),
            self.r_omega_order.to_string(),
            p,
            m,
        ]]
    }
    fn text(&self) -> String {
        let mut s = format!(
            "{}\nR(omega) = {{{}}}\n",
            self.classification,
            self.r_omega.join(", ")
        );
        if let Some([p, m]) = &self.eigenvalues {
            let _ = writeln!(s, "eigenvalues = {p}, {m}");
        }
        s
    }
}

impl Render for SelfcheckReport {
    fn csv_header(&self) -> Vec<String> {
        vec![
            "check".into(),
            "q".into(),
            "n".into(),
            "passed".into(),
            "detail".into(),
        ]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.q.to_string(),
                    c.n.to_string(),
                    c.passed.to_string(),
                    c.detail.clone(),
                ]
            })
            .collect()
    }
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{mark} {} q={} n={} {}", c.name, c.q, c.n, c.detail);
        }
        s
    }
}

pub fn render<R: Render>(env: &Envelope<R>, format: OutputFormat) -> Result<String, Error> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(env)
                .map_err(|e| Error::InvariantViolation(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvariantViolation(e.to_string());
            w.write_record(env.results.csv_header()).map_err(io)?;
            for r in env.results.csv_rows() {
                w.write_record(r).map_err(io)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::InvariantViolation(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvariantViolation(e.to_string()))
        }
        OutputFormat::Text => Ok(env.results.text()),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mwhit",
    version,
    about = "Exact spherical Whittaker functions on the metaplectic cover of GSp(2n)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    /// Residue field size: an odd prime power.
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated Satake parameters, e.g. `i,-i` or `2,3/5+4/5i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// `1` or `pi`.
    #[arg(long)]
    pub eta: Option<String>,
    /// `plus` or `minus`.
    #[arg(long)]
    pub branch: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Hilbert symbol of two square classes.
    Hilbert {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Whittaker values over the dominant cone `k_n ≤ k-max`.
    WhittakerTable {
        #[command(flatten)]
        chars: CharArgs,
        /// Square class of the orbit: 1, u0, pi or piu0.
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        k_max: Option<i64>,
    },
    /// The four extension functions, their values on the default probes and their rank.
    SpanningSet {
        #[command(flatten)]
        chars: CharArgs,
    },
    /// Reducibility of the unramified genuine principal series.
    Classify {
        #[command(flatten)]
        chars: CharArgs,
    },
    /// Run the invariant suite.
    Selfcheck {
        #[arg(long)]
        n_max: Option<usize>,
        /// Comma-separated residue field sizes.
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
    },
}

fn apply_chars(cfg: &mut JobConfig, c: CharArgs) -> Result<(), Error> {
    cfg.q = Some(c.q);
    cfg.n = c.n;
    cfg.alpha = c
        .alpha
        .map(|v| v.into_iter().map(|s| s.trim().to_string()).collect());
    cfg.beta = c.beta;
    cfg.eta = c.eta.as_deref().map(str::parse).transpose()?;
    cfg.branch = c.branch.as_deref().map(str::parse).transpose()?;
    Ok(())
}

impl Cli {
    pub fn job(self) -> Result<JobConfig, Error> {
        let mut cfg;
        match self.command {
            CliCommand::Hilbert { q, a, b } => {
                cfg = JobConfig::new(Command::Hilbert);
                cfg.q = Some(q);
                cfg.a = Some(a);
                cfg.b = Some(b);
            }
            CliCommand::WhittakerTable { chars, y, k_max } => {
                cfg = JobConfig::new(Command::WhittakerTable);
                apply_chars(&mut cfg, chars)?;
                cfg.y = y;
                cfg.k_max = k_max;
            }
            CliCommand::SpanningSet { chars } => {
                cfg = JobConfig::new(Command::SpanningSet);
                apply_chars(&mut cfg, chars)?;
            }
            CliCommand::Classify { chars } => {
                cfg = JobConfig::new(Command::Classify);
                apply_chars(&mut cfg, chars)?;
            }
            CliCommand::Selfcheck { n_max, q } => {
                cfg = JobConfig::new(Command::Selfcheck);
                cfg.n_max = n_max;
                cfg.q_list = q;
            }
        }
        cfg.output = self.output;
        Ok(cfg)
    }
}

/// Runs a job and renders its output.
pub fn execute(cfg: &JobConfig) -> Result<String, Error> {
    match cfg.command {
        Command::Hilbert => render(&cmd_hilbert(cfg)?, cfg.output),
        Command::WhittakerTable => render(&cmd_whittaker_table(cfg)?, cfg.output),
        Command::SpanningSet => render(&cmd_spanning_set(cfg)?, cfg.output),
        Command::Classify => render(&cmd_classify(cfg)?, cfg.output),
        Command::Selfcheck => {
            let env = cmd_selfcheck(cfg)?;
            let out = render(&env, cfg.output)?;
            if !env.results.passed {
                return Err(Error::InvariantViolation(format!(
                    "selfcheck failed\n{out}"
                )));
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Debug, Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

fn error_json(kind: &str, message: String) -> String {
    serde_json::to_string(&ErrorObject {
        error: ErrorBody { kind, message },
    })
    .unwrap_or_default()
}

/// Process outcome: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: error_json("usage", e.to_string()) + "\n",
            };
        }
    };
    let workers = cli.workers;
    let result = cli.job().and_then(|job| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(w) = workers {
            if w == 0 {
                return Err(Error::InvalidConfig("--workers must be at least 1".into()));
            }
            pool = pool.num_threads(w);
        }
        let pool = pool
            .build()
            .map_err(|e| Error::InvariantViolation(e.to_string()))?;
        pool.install(|| execute(&job))
    });
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_internal() { 2 } else { 1 },
            stdout: String::new(),
            stderr: error_json(e.kind(), e.to_string()) + "\n",
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("mwhit".to_string())
            .chain(s.split_whitespace().map(String::from))
            .collect()
    }

    #[test]
    fn hilbert_command() {
        let out = run(args("--output text hilbert --q 5 --a u0 --b pi"));
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "(u0, pi)_F = -1\n");
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "hilbert --q 4 --a 1 --b pi",
            "whittaker-table --q 3 --n 1 --y pi^2",
            "whittaker-table --q 3 --n 2 --alpha 1",
            "classify --q 3 --alpha 0",
            "classify --q 3 --alpha 1+",
            "frobnicate",
            "--workers 0 hilbert --q 3 --a 1 --b 1",
        ] {
            let out = run(args(bad));
            assert_eq!(out.code, 1, "{bad}");
            let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
            assert!(v["error"]["kind"].is_string());
        }
    }

    #[test]
    fn classify_output() {
        let out = run(args("classify --q 3 --alpha i,-i"));
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["results"]["classification"], "TwoGenericSummands");
        assert_eq!(v["results"]["eigenvalues"][0], "2/3");
        assert_eq!(v["results"]["eigenvalues"][1], "-2/3");
        assert_eq!(v["results"]["r_omega_order"], 2);
    }

    #[test]
    fn csv_table() {
        let out = run(args(
            "--output csv whittaker-table --q 3 --n 1 --y pi --k-max 1",
        ));
        assert_eq!(out.code, 0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "k,value");
        assert_eq!(lines[1], "(0),+1 * (1 * v^0 * a1^0)");
        assert!(lines[2].starts_with("(1),"));
    }
}
