//! Batch trajectories: evolve an initial state through a channel sweep and
//! record the MMQC totals and per-term values at every grid point.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicorr::CorrelationKind;
use crate::channels::{evolve, ChannelKind, KrausChannel, SweepGrid};
use crate::error::{Error, Result};
use crate::mmqc::{enumerate_terms, mmqc_with, GqdTerms, MmqcOptions, MmqcReport};
use crate::qstate::{parse_state, DensityMatrix, PureState};
use crate::scalar::Real;

/// Where the initial state comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialSpec {
    W,
    Ghz,
    File(PathBuf),
}

impl FromStr for InitialSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "W" | "w" => Ok(InitialSpec::W),
            "GHZ" | "ghz" => Ok(InitialSpec::Ghz),
            "" => Err(Error::Config("empty initial state".into())),
            other => Ok(InitialSpec::File(PathBuf::from(other.strip_prefix("file:").unwrap_or(other)))),
        }
    }
}

impl std::fmt::Display for InitialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialSpec::W => f.write_str("W"),
            InitialSpec::Ghz => f.write_str("GHZ"),
            InitialSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A prepared initial state.
#[derive(Clone, Debug, PartialEq)]
pub enum Initial<T: Real> {
    Pure(PureState<T>),
    Mixed(DensityMatrix<T>),
}

impl<T: Real> Initial<T> {
    pub fn to_density(&self) -> DensityMatrix<T> {
        match self {
            Initial::Pure(psi) => psi.to_density(),
            Initial::Mixed(rho) => rho.clone(),
        }
    }
}

/// Builds a three-qubit initial state by name or from a state file.
pub fn build_initial<T: Real>(spec: &InitialSpec) -> Result<Initial<T>> {
    match spec {
        InitialSpec::W => Ok(Initial::Pure(PureState::w(3))),
        InitialSpec::Ghz => Ok(Initial::Pure(PureState::ghz(3))),
        InitialSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let rho = parse_state::<T>(&text)?;
            if rho.dims() != [2, 2, 2] {
                return Err(Error::UnsupportedDimension(format!(
                    "initial state must be three qubits, got dims {:?}",
                    rho.dims()
                )));
            }
            Ok(Initial::Mixed(rho))
        }
    }
}

/// Grid of damping probabilities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GridSpec {
    /// Evenly spaced points from 0 to 1 inclusive.
    Uniform(usize),
    Explicit(Vec<f64>),
}

impl GridSpec {
    pub fn build<T: Real>(&self) -> Result<SweepGrid<T>> {
        match self {
            GridSpec::Uniform(n) => SweepGrid::uniform(*n),
            GridSpec::Explicit(ps) => SweepGrid::new(ps.iter().map(|&p| T::lit(p)).collect()),
        }
    }
}

pub const DEFAULT_POINTS: usize = 101;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub initial: InitialSpec,
    pub channel: ChannelKind,
    pub grid: GridSpec,
    pub measures: Vec<CorrelationKind>,
    pub seed: u64,
    pub gqd_terms: GqdTerms,
    /// Worker threads; `None` lets the pool pick.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(initial: InitialSpec, channel: ChannelKind) -> Self {
        Self {
            initial,
            channel,
            grid: GridSpec::Uniform(DEFAULT_POINTS),
            measures: vec![CorrelationKind::Eof, CorrelationKind::Qd, CorrelationKind::Gqd],
            seed: 0,
            gqd_terms: GqdTerms::QubitMeasured,
            workers: None,
        }
    }

    /// W state under independent amplitude damping.
    pub fn fig1() -> Self {
        Self::new(InitialSpec::W, ChannelKind::AmplitudeDamping)
    }

    /// GHZ state under independent phase damping.
    pub fn fig2() -> Self {
        Self::new(InitialSpec::Ghz, ChannelKind::PhaseDamping)
    }

    pub fn validate(&self) -> Result<()> {
        if self.measures.is_empty() {
            return Err(Error::Config("no measures requested".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("worker count must be positive".into()));
        }
        self.grid.build::<f64>()?;
        Ok(())
    }

    fn sorted_measures(&self) -> Vec<CorrelationKind> {
        [CorrelationKind::Eof, CorrelationKind::Qd, CorrelationKind::Gqd]
            .into_iter()
            .filter(|k| self.measures.contains(k))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct TrajectoryRow<T: Real> {
    pub p: T,
    #[serde(rename = "EOF", default, skip_serializing_if = "Option::is_none")]
    pub eof: Option<MmqcReport<T>>,
    #[serde(rename = "QD", default, skip_serializing_if = "Option::is_none")]
    pub qd: Option<MmqcReport<T>>,
    #[serde(rename = "GQD", default, skip_serializing_if = "Option::is_none")]
    pub gqd: Option<MmqcReport<T>>,
}

impl<T: Real> TrajectoryRow<T> {
    pub fn report(&self, kind: CorrelationKind) -> Option<&MmqcReport<T>> {
        match kind {
            CorrelationKind::Eof => self.eof.as_ref(),
            CorrelationKind::Qd => self.qd.as_ref(),
            CorrelationKind::Gqd => self.gqd.as_ref(),
        }
    }

    pub fn total(&self, kind: CorrelationKind) -> Option<T> {
        self.report(kind).map(|r| r.total)
    }

    pub fn converged(&self) -> bool {
        [&self.eof, &self.qd, &self.gqd]
            .into_iter()
            .flatten()
            .all(|r| r.converged())
    }
}

/// One row per grid point, ascending in `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct TrajectoryTable<T: Real> {
    pub initial: String,
    pub channel: ChannelKind,
    pub seed: u64,
    pub labels: Vec<String>,
    pub gqd_terms: GqdTerms,
    pub rows: Vec<TrajectoryRow<T>>,
}

fn evaluate_point<T: Real>(
    rho0: &DensityMatrix<T>,
    channel: ChannelKind,
    p: T,
    measures: &[CorrelationKind],
    opts: &MmqcOptions,
) -> Result<TrajectoryRow<T>> {
    let ch = KrausChannel::new(channel, p)?;
    let rho = evolve(rho0, &vec![ch; rho0.party_count()])?;
    let mut row = TrajectoryRow { p, eof: None, qd: None, gqd: None };
    for &kind in measures {
        let report = mmqc_with(&rho, kind, opts)?;
        match kind {
            CorrelationKind::Eof => row.eof = Some(report),
            CorrelationKind::Qd => row.qd = Some(report),
            CorrelationKind::Gqd => row.gqd = Some(report),
        }
    }
    Ok(row)
}

/// Runs the sweep. Grid points are distributed over a worker pool; every
/// optimizer seed derives from the state and `config.seed`, so the result
/// does not depend on the number of workers.
pub fn run_experiment<T: Real>(config: &ExperimentConfig) -> Result<TrajectoryTable<T>> {
    config.validate()?;
    let rho0 = build_initial::<T>(&config.initial)?.to_density();
    let grid = config.grid.build::<T>()?;
    let measures = config.sorted_measures();
    let opts = MmqcOptions { gqd_terms: config.gqd_terms, ..MmqcOptions::with_seed(config.seed) };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| {
        grid.points
            .par_iter()
            .map(|&p| {
                evaluate_point(&rho0, config.channel, p, &measures, &opts)
                    .map_err(|e| Error::AtPoint { p: p.as_f64(), source: Box::new(e) })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(TrajectoryTable {
        initial: config.initial.to_string(),
        channel: config.channel,
        seed: config.seed,
        labels: rho0.labels().to_vec(),
        gqd_terms: config.gqd_terms,
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Column names of the flat table for the given party labels.
///
/// `GQD:` columns hold `2D` for a single measured qubit; `GQD_D:` columns
/// hold the raw distance for a two-qubit measured side.
pub fn csv_header(labels: &[String]) -> Result<Vec<String>> {
    let terms = enumerate_terms(labels)?;
    let mut h: Vec<String> = ["p", "Q_EOF", "Q_QD", "Q_GQD"].iter().map(|s| s.to_string()).collect();
    for kind in ["EOF", "QD"] {
        h.extend(terms.iter().map(|t| format!("{kind}:{}", t.name())));
    }
    h.extend(terms.iter().filter(|t| t.measured.len() == 1).map(|t| format!("GQD:{}", t.name())));
    h.extend(terms.iter().filter(|t| t.measured.len() > 1).map(|t| format!("GQD_D:{}", t.name())));
    for x in labels {
        h.push(format!("delta_{x}(E)"));
        h.push(format!("EOF_{x}(E)"));
        h.push(format!("C_{x}(E)"));
        h.push(format!("S_{x}|E"));
    }
    h.extend(["gamma_t", "method_EOF", "method_QD", "converged"].iter().map(|s| s.to_string()));
    Ok(h)
}

fn gqd_column(name: &str, normalized: bool) -> String {
    if normalized {
        format!("GQD:{name}")
    } else {
        format!("GQD_D:{name}")
    }
}

impl<T: Real> TrajectoryTable<T> {
    /// Flattens to one text cell per column; absent values are empty.
    pub fn to_flat(&self) -> Result<FlatTable> {
        let header = csv_header(&self.labels)?;
        let index = |name: &str| header.iter().position(|h| h == name);
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut cells = vec![String::new(); header.len()];
            let mut set = |name: &str, v: String| -> Result<()> {
                let i = index(name)
                    .ok_or_else(|| Error::Config(format!("no column `{name}` for labels {:?}", self.labels)))?;
                cells[i] = v;
                Ok(())
            };
            set("p", row.p.to_string())?;
            set("gamma_t", SweepGrid::gamma_t(row.p).to_string())?;
            for (kind, total_col) in [
                (CorrelationKind::Eof, "Q_EOF"),
                (CorrelationKind::Qd, "Q_QD"),
                (CorrelationKind::Gqd, "Q_GQD"),
            ] {
                let Some(report) = row.report(kind) else { continue };
                set(total_col, report.total.to_string())?;
                for t in &report.terms {
                    let col = match kind {
                        CorrelationKind::Gqd => gqd_column(&t.name(), t.normalized),
                        _ => format!("{kind}:{}", t.name()),
                    };
                    set(&col, t.value.to_string())?;
                }
                if kind != CorrelationKind::Gqd {
                    set(&format!("method_{kind}"), report.method.as_str().to_string())?;
                }
            }
            if let Some(report) = row.eof.as_ref().or(row.qd.as_ref()) {
                for e in &report.environment {
                    let x = &e.party;
                    set(&format!("delta_{x}(E)"), e.discord.to_string())?;
                    set(&format!("EOF_{x}(E)"), e.eof.to_string())?;
                    set(&format!("C_{x}(E)"), e.concurrence.to_string())?;
                    set(&format!("S_{x}|E"), e.conditional_entropy.to_string())?;
                }
            }
            set("converged", row.converged().to_string())?;
            rows.push(cells);
        }
        Ok(FlatTable { header, rows })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        self.to_flat()?.write_csv(w)
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        w.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        Ok(serde_json::from_reader(r)?)
    }

    /// Writes the table to `path` in the given format.
    pub fn emit(&self, path: &Path, format: OutputFormat) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        match format {
            OutputFormat::Csv => self.write_csv(&mut w)?,
            OutputFormat::Json => self.write_json(&mut w)?,
        }
        w.flush()?;
        Ok(())
    }
}

/// Text form of a trajectory table as stored in CSV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl FlatTable {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        if header.first().map(String::as_str) != Some("p") {
            return Err(Error::Parse { line: 1, msg: "header must start with `p`".into() });
        }
        let rows = rdr
            .records()
            .map(|rec| Ok(rec?.iter().map(str::to_string).collect()))
            .collect::<Result<Vec<Vec<String>>>>()?;
        Ok(Self { header, rows })
    }

    pub fn read_path(path: &Path) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric column; empty cells become `None`.
    pub fn numbers(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let i = self
            .column_index(name)
            .ok_or_else(|| Error::Config(format!("no column `{name}`")))?;
        self.rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let cell = &r[i];
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse::<f64>().map(Some).map_err(|e| Error::Parse {
                        line: k + 2,
                        msg: format!("column `{name}`: {e}"),
                    })
                }
            })
            .collect()
    }
}
