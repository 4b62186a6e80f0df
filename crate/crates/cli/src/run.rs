use std::path::Path;
use std::time::Instant;

use lattice_kit::lattice::{
    generate_sublattice, minimal_lattice_subspace, positive_basis, Analysis, PayoffCollection,
    PositiveBasis,
};
use lattice_kit::markets::{complete_by_options, min_cost_insurance, InsuranceProblem, MarketSpec};
use lattice_kit::numerics::Matrix;
use thiserror::Error;

use crate::bench;
use crate::config::{Command, ConfigError, Format, RunConfig};
use crate::document::{ErrorInfo, Item, Metadata, ResultDocument};
use crate::ingest::{ingest_matrix, ingest_vector, IngestError, MatrixDoc};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Domain(#[from] lattice_kit::Error),
}

impl CliError {
    /// 1 for a domain error, 2 for bad input or configuration.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Config(_) | CliError::Ingest(_) => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config_error",
            CliError::Ingest(e) => e.code(),
            CliError::Domain(e) => e.code(),
        }
    }
}

/// What a command produced: the rendered text and the process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub exit_code: u8,
    /// Human-readable message when the command failed.
    pub error: Option<String>,
}

pub fn render(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
        Format::Table => doc.to_table(),
    }
}

/// Runs one command. Failures become an error document with a nonzero
/// exit code rather than a Rust error.
pub fn run(cfg: &RunConfig) -> Outcome {
    if cfg.command == Command::Bench {
        return run_bench(cfg);
    }
    let mut doc = ResultDocument::new(cfg.command.as_str());
    echo_settings(cfg, &mut doc);
    match execute(cfg, &mut doc) {
        Ok(()) => Outcome {
            text: render(&doc, cfg.format),
            exit_code: 0,
            error: None,
        },
        Err(e) => failure(doc, &e, cfg.format),
    }
}

pub fn failure(mut doc: ResultDocument, e: &CliError, format: Format) -> Outcome {
    doc.results.clear();
    doc.metadata = None;
    doc.timing_ms = None;
    doc.error = Some(ErrorInfo {
        code: e.code().to_string(),
        message: e.to_string(),
    });
    Outcome {
        text: render(&doc, format),
        exit_code: e.exit_code(),
        error: Some(format!("[{}] {e}", e.code())),
    }
}

fn echo_settings(cfg: &RunConfig, doc: &mut ResultDocument) {
    let paths = [
        ("input_path", &cfg.input),
        ("strikes_path", &cfg.strikes),
        ("prices_path", &cfg.prices),
        ("theta_path", &cfg.theta),
        ("phi_path", &cfg.phi),
    ];
    for (key, p) in paths {
        if let Some(p) = p {
            doc.echo(key, p.display().to_string());
        }
    }
    if let Some(t) = cfg.tol {
        doc.echo("tol", t);
    }
    doc.echo("rows_are_vectors", cfg.rows_are_vectors);
}

/// The vectors of an ingested matrix: its columns, or its rows when
/// `--rows-are-vectors` is set.
fn vectors(m: &Matrix, rows_are_vectors: bool) -> Vec<Vec<f64>> {
    if rows_are_vectors {
        m.row_vecs()
    } else {
        m.column_vecs()
    }
}

fn load_vectors(
    path: &Path,
    key: &str,
    cfg: &RunConfig,
    doc: &mut ResultDocument,
) -> Result<Vec<Vec<f64>>, CliError> {
    let m = ingest_matrix(path)?;
    doc.echo(key, MatrixDoc::from_matrix(&m));
    Ok(vectors(&m, cfg.rows_are_vectors))
}

fn load_vector(path: &Path, key: &str, doc: &mut ResultDocument) -> Result<Vec<f64>, CliError> {
    let v = ingest_vector(path)?;
    doc.echo(key, &v);
    Ok(v)
}

fn rows(v: &[Vec<f64>]) -> Item {
    Item::Matrix(MatrixDoc::from_rows(v))
}

fn put_basis(doc: &mut ResultDocument, basis: &PositiveBasis) {
    doc.put("positive_basis", rows(basis.vectors()));
    doc.put("basis_coefficients", Item::Matrix(MatrixDoc::from_matrix(basis.coeffs())));
}

fn execute(cfg: &RunConfig, doc: &mut ResultDocument) -> Result<(), CliError> {
    let opts = cfg.options();
    let input = cfg.input.as_deref().expect("validated in RunConfig");
    let x = load_vectors(input, "input", cfg, doc)?;
    let started = Instant::now();
    match cfg.command {
        Command::Classify | Command::Sublattice | Command::Minlat => {
            let x = PayoffCollection::with_tol(x, opts.pivot_tol)?;
            let analysis = Analysis::new(&x, &opts)?;
            let c = analysis.classification();
            doc.metadata = Some(Metadata { n: c.n, m: c.m, d: c.d, k: c.k });
            doc.put("kind", Item::Text(c.kind.as_str().to_string()));
            match cfg.command {
                Command::Classify => {
                    doc.put("range", rows(&analysis.range.points));
                    let vertices: Vec<usize> = (0..c.m)
                        .filter(|&s| analysis.range.vertex_flags[s])
                        .collect();
                    doc.put("vertices", Item::Indices(vertices));
                    if c.kind.has_positive_basis() {
                        put_basis(doc, &positive_basis(&x, &analysis.range, &opts)?);
                    }
                }
                Command::Sublattice => {
                    let z = generate_sublattice(&x, &opts)?;
                    doc.put("generators", rows(&z.generators));
                    put_basis(doc, &z.basis);
                }
                _ => {
                    let y = minimal_lattice_subspace(&x, &opts)?;
                    doc.put("generators", rows(&y.generators));
                    doc.put("vertices", rows(&y.vertices));
                    doc.put("domain", Item::Indices(y.domain.clone()));
                    doc.put("xi", rows(&y.xi));
                    put_basis(doc, &y.basis);
                }
            }
        }
        Command::Complete => {
            let strikes = match &cfg.strikes {
                Some(p) => load_vectors(p, "strikes", cfg, doc)?,
                None => Vec::new(),
            };
            let market = MarketSpec::with_tol(x, strikes, opts.pivot_tol)?;
            let c = complete_by_options(&market, &opts)?;
            doc.put("basic_set", rows(&c.basic_set));
            doc.put("generators", rows(&c.generators));
            put_basis(doc, &c.basis);
            doc.put("dimension", Item::Count(c.dimension));
            doc.put("strikes_in_span", Item::Flag(c.strikes_in_span));
            doc.put("complete", Item::Flag(c.complete));
        }
        Command::Insure => {
            let prices = load_vector(cfg.prices.as_deref().expect("validated"), "prices", doc)?;
            let theta = load_vector(cfg.theta.as_deref().expect("validated"), "theta", doc)?;
            let phi = load_vector(cfg.phi.as_deref().expect("validated"), "phi", doc)?;
            let x = PayoffCollection::with_tol(x, opts.pivot_tol)?;
            let problem = InsuranceProblem::new(x, prices, theta, phi)?;
            let s = min_cost_insurance(&problem, &opts)?;
            doc.put("eta", Item::Vector(s.eta));
            doc.put("cost", Item::Number(s.cost));
            doc.put("payoff", Item::Vector(s.payoff));
            doc.put("target", Item::Vector(s.target));
            doc.put("lattice_sup", Item::Vector(s.lattice_sup));
        }
        Command::Bench => unreachable!("bench is dispatched separately"),
    }
    if cfg.timing {
        doc.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(())
}

fn run_bench(cfg: &RunConfig) -> Outcome {
    let result = bench::run_bench(cfg.seed, cfg.min_rank, cfg.max_rank, cfg.reps, &cfg.options());
    match result {
        Ok(table) => {
            let text = match cfg.format {
                Format::Json | Format::Csv => bench::to_csv(&table),
                Format::Table => {
                    let mut doc = ResultDocument::new("bench");
                    doc.echo("seed", cfg.seed);
                    doc.echo("min_rank", cfg.min_rank);
                    doc.echo("max_rank", cfg.max_rank);
                    doc.echo("reps", cfg.reps);
                    let data: Vec<Vec<f64>> = table
                        .iter()
                        .map(|r| vec![r.rank as f64, r.sublat_total_s, r.minlat_total_s])
                        .collect();
                    doc.put("timings", rows(&data));
                    doc.put(
                        "columns",
                        Item::Text("rank,sublat_total_s,minlat_total_s".to_string()),
                    );
                    render(&doc, cfg.format)
                }
            };
            Outcome {
                text,
                exit_code: 0,
                error: None,
            }
        }
        Err(e) => failure(ResultDocument::new("bench"), &CliError::Domain(e), cfg.format),
    }
}
