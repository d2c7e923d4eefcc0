//! Command execution: typed params in, a JSON result plus a CSV table out.

use serde::{Deserialize, Serialize};

use cstar_info::channel::{
    capacity, classify, coding_experiment, info_metrics, numerical_rank, singular_values,
    Capacity, Classification, CodingExperiment, InfoMetrics, RANK_TOLERANCE,
};
use cstar_info::information::{
    aep_sweep, code_metrics, entropy_base, huffman_code, kraft_check, kraft_construct, kraft_sums,
    AepSweep, Code, CodeMetrics,
};
use cstar_info::probability::{chebyshev_tail_of, lln_moment_of};
use cstar_info::{Channel64, Element64, Guard, Source64, State64, Tolerance};

use crate::config::{
    AepParams, CapacityParams, ChannelInfoParams, CodeParams, CodingParams, LlnParams, Params,
};
use crate::error::{CliError, Result};
use crate::notation::{parse_channel, parse_grid, parse_state, parse_values};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
}

/// Flat table for CSV output.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn key_values(pairs: Vec<(String, Cell)>) -> Self {
        let mut t = Self::new(&["key", "value"]);
        t.rows = pairs.into_iter().map(|(k, v)| vec![Cell::Text(k), v]).collect();
        t
    }
}

pub struct Artifact {
    pub result: serde_json::Value,
    pub table: Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LlnRow {
    pub n: usize,
    /// `(order, Ωₙ(|sₙ − μ|ᵏ))`
    pub moments: Vec<(u32, f64)>,
    pub chebyshev_tail: f64,
    /// `Ωₙ(|sₙ − μ|²)/ε²`
    pub chebyshev_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LlnReport {
    pub mean: f64,
    pub epsilon: f64,
    pub rows: Vec<LlnRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeReport {
    pub code: Code,
    pub lengths: Vec<usize>,
    pub prefix_free: bool,
    /// Kraft sum as an exact fraction `Σ n^(L−kᵢ) / n^L`.
    pub kraft_sum: String,
    pub kraft_ok: bool,
    /// Entropy in base `n`.
    pub entropy: f64,
    /// Present when the code is prefix-free.
    pub metrics: Option<CodeMetrics<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelInfoReport {
    pub input_dim: usize,
    pub output_dim: usize,
    pub input_state: Vec<f64>,
    pub classification: Classification,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub metrics: InfoMetrics<f64>,
}

pub fn execute(params: &Params, seed: u64, guard: &Guard) -> Result<Artifact> {
    match params {
        Params::Lln(p) => lln(p),
        Params::Aep(p) => aep(p, guard),
        Params::Code(p) => code(p),
        Params::ChannelInfo(p) => channel_info(p),
        Params::Capacity(p) => run_capacity(p),
        Params::CodingExperiment(p) => coding(p, seed, guard),
    }
}

fn to_value<S: Serialize>(s: &S) -> serde_json::Value {
    serde_json::to_value(s).expect("result serializes")
}

fn state_or_uniform(given: &Option<String>, channel: &Channel64) -> Result<State64> {
    match given {
        Some(s) => parse_state(s),
        None => Ok(State64::uniform(&channel.input_algebra())),
    }
}

fn lln(p: &LlnParams) -> Result<Artifact> {
    let tol = Tolerance::default();
    let state = parse_state(&p.state)?;
    let x = match &p.values {
        Some(v) => Element64::from_real_in(state.algebra(), &parse_values(v)?)?,
        None => Element64::coordinate(state.algebra()),
    };
    if !(p.eps > 0.0) {
        return Err(CliError::config("eps must be positive"));
    }
    let mut rows = Vec::new();
    for n in parse_grid(&p.n)? {
        let moments = p
            .moments
            .iter()
            .map(|&k| Ok((k, lln_moment_of(&state, &x, n, k, &tol)?)))
            .collect::<Result<Vec<_>>>()?;
        let m2 = lln_moment_of(&state, &x, n, 2, &tol)?;
        rows.push(LlnRow {
            n,
            moments,
            chebyshev_tail: chebyshev_tail_of(&state, &x, n, p.eps, &tol)?,
            chebyshev_bound: m2 / (p.eps * p.eps),
        });
    }
    let report = LlnReport {
        mean: state.expect(&x)?,
        epsilon: p.eps,
        rows,
    };
    let mut header: Vec<String> = vec!["n".into()];
    header.extend(p.moments.iter().map(|k| format!("moment_{k}")));
    header.extend(["chebyshev_tail".into(), "chebyshev_bound".into()]);
    let table = Table {
        header,
        rows: report
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![Cell::Int(r.n as u64)];
                row.extend(r.moments.iter().map(|&(_, m)| Cell::Float(m)));
                row.extend([Cell::Float(r.chebyshev_tail), Cell::Float(r.chebyshev_bound)]);
                row
            })
            .collect(),
    };
    Ok(Artifact {
        result: to_value(&report),
        table,
    })
}

fn aep(p: &AepParams, guard: &Guard) -> Result<Artifact> {
    let source = Source64::new(parse_state(&p.p)?);
    let sweep: AepSweep = aep_sweep(&source, &parse_grid(&p.n)?, p.eps, guard)?;
    let mut table = Table::new(&[
        "n",
        "epsilon",
        "entropy",
        "count",
        "prob_mass",
        "lower_bound",
        "upper_bound",
        "mass_ok",
        "count_ok",
        "lower_ok",
    ]);
    for r in &sweep.reports {
        table.rows.push(vec![
            Cell::Int(r.n as u64),
            Cell::Float(r.epsilon),
            Cell::Float(r.entropy),
            Cell::Int(r.count),
            Cell::Float(r.prob_mass),
            Cell::Float(r.lower_bound),
            Cell::Float(r.upper_bound),
            Cell::Bool(r.mass_ok),
            Cell::Bool(r.count_ok),
            Cell::Bool(r.lower_ok),
        ]);
    }
    Ok(Artifact {
        result: to_value(&sweep),
        table,
    })
}

fn code(p: &CodeParams) -> Result<Artifact> {
    let state = parse_state(&p.state)?;
    let n = p.alphabet;
    let code = match (&p.words, &p.lengths, p.huffman) {
        (Some(w), None, false) => {
            let words: Vec<&str> = w.split(',').map(str::trim).collect();
            Code::from_strings(n, &words)?
        }
        (None, Some(l), false) => {
            let lengths = l
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| CliError::config(format!("lengths: {e}")))?;
            kraft_construct(&lengths, n)?
        }
        (None, None, true) => huffman_code(&state, n)?,
        _ => {
            return Err(CliError::config(
                "exactly one of huffman, lengths or words is required",
            ))
        }
    };
    let lengths = code.lengths();
    let (num, den) = kraft_sums(&lengths, n)?;
    let prefix_free = code.is_prefix_free();
    let metrics = if prefix_free {
        Some(code_metrics(&code, &state)?)
    } else {
        None
    };
    let report = CodeReport {
        lengths: lengths.clone(),
        prefix_free,
        kraft_sum: format!("{num}/{den}"),
        kraft_ok: kraft_check(&lengths, n)?,
        entropy: entropy_base(&state, n as f64),
        metrics,
        code,
    };
    let mut table = Table::new(&["symbol", "weight", "word", "length"]);
    for (i, &w) in state.weights().iter().enumerate() {
        table.rows.push(vec![
            Cell::Int(i as u64),
            Cell::Float(w),
            Cell::Text(report.code.word_string(i)),
            Cell::Int(report.lengths.get(i).copied().unwrap_or(0) as u64),
        ]);
    }
    Ok(Artifact {
        result: to_value(&report),
        table,
    })
}

fn channel_info(p: &ChannelInfoParams) -> Result<Artifact> {
    let tol = Tolerance::default();
    let channel = parse_channel(&p.channel)?;
    let state = state_or_uniform(&p.state, &channel)?;
    let rows = channel.rows();
    let report = ChannelInfoReport {
        input_dim: channel.input_dim(),
        output_dim: channel.output_dim(),
        input_state: state.weights().to_vec(),
        classification: classify(&channel, Some(&state), &tol)?,
        rank: numerical_rank(&rows, RANK_TOLERANCE),
        singular_values: singular_values(&rows),
        metrics: info_metrics(&channel, &state)?,
    };
    let m = &report.metrics;
    let mut pairs = vec![
        ("classification".into(), Cell::Text(report.classification.label().into())),
        ("rank".into(), Cell::Int(report.rank as u64)),
        ("h_x".into(), Cell::Float(m.h_x)),
        ("h_y".into(), Cell::Float(m.h_y)),
        ("h_x_given_y".into(), Cell::Float(m.h_x_given_y)),
        ("i_xy".into(), Cell::Float(m.i_xy)),
    ];
    for (i, s) in report.singular_values.iter().enumerate() {
        pairs.push((format!("singular_value_{i}"), Cell::Float(*s)));
    }
    Ok(Artifact {
        result: to_value(&report),
        table: Table::key_values(pairs),
    })
}

fn run_capacity(p: &CapacityParams) -> Result<Artifact> {
    let channel = parse_channel(&p.channel)?;
    let cap: Capacity<f64> = capacity(&channel, p.tol, p.max_iter)?;
    let mut pairs = vec![
        ("capacity".into(), Cell::Float(cap.capacity)),
        ("iterations".into(), Cell::Int(cap.iterations as u64)),
        ("gap".into(), Cell::Float(cap.gap)),
    ];
    for (i, w) in cap.optimal_input.weights().iter().enumerate() {
        pairs.push((format!("optimal_input_{i}"), Cell::Float(*w)));
    }
    Ok(Artifact {
        result: to_value(&cap),
        table: Table::key_values(pairs),
    })
}

fn coding(p: &CodingParams, seed: u64, guard: &Guard) -> Result<Artifact> {
    let channel = parse_channel(&p.channel)?;
    let state = state_or_uniform(&p.state, &channel)?;
    let ks = parse_grid(&p.ks)?;
    let exp: CodingExperiment =
        coding_experiment(&channel, &state, p.rate, &ks, p.trials, seed, guard)?;
    let mut table = Table::new(&[
        "k",
        "rate",
        "codebook_size",
        "deviation",
        "error_prob",
        "trials",
        "seed",
    ]);
    for r in &exp.results {
        table.rows.push(vec![
            Cell::Int(r.k as u64),
            Cell::Float(r.rate),
            Cell::Int(r.codebook_size as u64),
            Cell::Float(r.deviation),
            Cell::Float(r.error_prob),
            Cell::Int(r.trials as u64),
            Cell::Int(r.seed),
        ]);
    }
    Ok(Artifact {
        result: to_value(&exp),
        table,
    })
}
