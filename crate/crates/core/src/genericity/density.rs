use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::sampling::{derive_stream, sample_hom_over, sample_word_over, RandomModel, SampleMode};
use super::wilson_interval;
use crate::conjugacy::{equalizer_trivial_by_remnant, eta_has_remnant, quick_distinguish};
use crate::error::{Error, Result};
use crate::remnant::{compute_remnant, format_ratio};
use crate::word::Alphabet;

// Role indices in the per-trial stream path.
const ROLE_PHI: u64 = 0;
const ROLE_PSI: u64 = 1;
const ROLE_U: u64 = 2;
const ROLE_V: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// `φ` has remnant.
    Remnant,
    /// Every remnant of `φ` has at least `l` letters.
    RemnantLength(usize),
    /// `|Rem(gᵢ)| ≥ r·|φ(gᵢ)|` for every generator.
    RemnantRatio(Ratio<usize>),
    /// `φ * ψ` has remnant.
    EqualizerTrivial,
    /// `φ * ψ * u * v` has remnant.
    QuickDistinct,
    /// `η` has remnant for `(u, v)` or `(v, u)`.
    EtaDistinct,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Remnant => f.write_str("remnant"),
            Property::RemnantLength(l) => write!(f, "remnant_length({l})"),
            Property::RemnantRatio(r) => write!(f, "remnant_ratio({})", format_ratio(r)),
            Property::EqualizerTrivial => f.write_str("equalizer_trivial"),
            Property::QuickDistinct => f.write_str("quick_distinct"),
            Property::EtaDistinct => f.write_str("eta_distinct"),
        }
    }
}

/// Experiment description, as read from the JSON config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityConfig {
    pub rank_g: usize,
    pub rank_h: usize,
    pub lengths: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub mode: SampleMode,
    pub properties: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remnant_length_l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remnant_ratio_r: Option<String>,
}

impl DensityConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Resolves the property names, and checks the ranks.
    pub fn resolve(&self) -> Result<Vec<Property>> {
        if self.rank_g == 0 {
            return Err(Error::Config("rank_g must be at least 1".into()));
        }
        if self.rank_h < 2 {
            return Err(Error::Precondition(format!(
                "density runs need rank_h ≥ 2 (got {}): genericity of remnant only holds when the target free group has rank greater than 1",
                self.rank_h
            )));
        }
        self.properties
            .iter()
            .map(|name| match name.as_str() {
                "remnant" => Ok(Property::Remnant),
                "remnant_length" => self
                    .remnant_length_l
                    .map(Property::RemnantLength)
                    .ok_or_else(|| Error::Config("remnant_length needs remnant_length_l".into())),
                "remnant_ratio" => {
                    let text = self
                        .remnant_ratio_r
                        .as_deref()
                        .ok_or_else(|| Error::Config("remnant_ratio needs remnant_ratio_r".into()))?;
                    parse_ratio(text).map(Property::RemnantRatio)
                }
                "equalizer_trivial" => Ok(Property::EqualizerTrivial),
                "quick_distinct" => Ok(Property::QuickDistinct),
                "eta_distinct" => Ok(Property::EtaDistinct),
                other => Err(Error::Config(format!("unknown property `{other}`"))),
            })
            .collect()
    }
}

fn parse_ratio(text: &str) -> Result<Ratio<usize>> {
    let bad = || Error::Config(format!("remnant_ratio_r `{text}` is not a fraction p/q in [0, 1]"));
    let (p, q) = match text.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: usize = p.parse().map_err(|_| bad())?;
    let q: usize = q.parse().map_err(|_| bad())?;
    if q == 0 || p > q {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub property: String,
    pub p: usize,
    pub trials: u64,
    pub count: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub rank_g: usize,
    pub rank_h: usize,
    pub mode: SampleMode,
    pub seed: u64,
    pub trials: u64,
    pub rows: Vec<DensityRow>,
}

impl DensityReport {
    pub fn row(&self, property: &str, p: usize) -> Option<&DensityRow> {
        self.rows.iter().find(|r| r.property == property && r.p == p)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record([
                "property", "p", "trials", "count", "fraction", "ci_low", "ci_high", "seed",
            ])
            .expect("writing to memory");
        for row in &self.rows {
            writer
                .write_record([
                    row.property.clone(),
                    row.p.to_string(),
                    row.trials.to_string(),
                    row.count.to_string(),
                    format!("{:.6}", row.fraction),
                    format!("{:.6}", row.ci_low),
                    format!("{:.6}", row.ci_high),
                    self.seed.to_string(),
                ])
                .expect("writing to memory");
        }
        String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

/// Runs the experiment. `threads = Some(n)` pins the worker count; the
/// report does not depend on it.
pub fn run_density(config: &DensityConfig, threads: Option<usize>) -> Result<DensityReport> {
    let properties = config.resolve()?;
    let domain = Arc::new(Alphabet::standard(config.rank_g)?);
    let codomain = Arc::new(Alphabet::standard(config.rank_h)?);

    let mut rows = Vec::with_capacity(config.lengths.len() * properties.len());
    for (length_index, &p) in config.lengths.iter().enumerate() {
        let model = RandomModel {
            rank_g: config.rank_g,
            rank_h: config.rank_h,
            length: p,
            mode: config.mode,
            seed: config.seed,
        };
        let trial = TrialContext {
            model,
            domain: &domain,
            codomain: &codomain,
            properties: &properties,
            length_index: length_index as u64,
        };
        let counts = count_trials(&trial, config.trials, threads)?;
        for (property, count) in properties.iter().zip(counts) {
            let (ci_low, ci_high) = wilson_interval(count, config.trials);
            let fraction = if config.trials == 0 {
                0.0
            } else {
                count as f64 / config.trials as f64
            };
            rows.push(DensityRow {
                property: property.to_string(),
                p,
                trials: config.trials,
                count,
                fraction,
                ci_low,
                ci_high,
            });
        }
    }

    Ok(DensityReport {
        rank_g: config.rank_g,
        rank_h: config.rank_h,
        mode: config.mode,
        seed: config.seed,
        trials: config.trials,
        rows,
    })
}

struct TrialContext<'a> {
    model: RandomModel,
    domain: &'a Arc<Alphabet>,
    codomain: &'a Arc<Alphabet>,
    properties: &'a [Property],
    length_index: u64,
}

impl TrialContext<'_> {
    /// One indicator per property for trial `t`. All four coordinates are
    /// drawn regardless of which properties are asked for, so a property's
    /// count does not depend on the others.
    fn run(&self, t: u64) -> Vec<bool> {
        let stream = |role| derive_stream(&[self.length_index, t, role]);
        let phi = sample_hom_over(&self.model, self.domain, self.codomain, stream(ROLE_PHI));
        let psi = sample_hom_over(&self.model, self.domain, self.codomain, stream(ROLE_PSI));
        let u = sample_word_over(&self.model, self.codomain, stream(ROLE_U));
        let v = sample_word_over(&self.model, self.codomain, stream(ROLE_V));

        let phi_report = compute_remnant(&phi);
        self.properties
            .iter()
            .map(|property| match *property {
                Property::Remnant => phi_report.has_remnant,
                Property::RemnantLength(l) => phi_report.has_remnant_length(l),
                Property::RemnantRatio(r) => phi_report.has_remnant && phi_report.has_remnant_ratio(r),
                Property::EqualizerTrivial => equalizer_trivial_by_remnant(&phi, &psi).expect("shared codomain"),
                Property::QuickDistinct => quick_distinguish(&phi, &psi, &u, &v).expect("shared codomain"),
                Property::EtaDistinct => {
                    u != v
                        && (eta_has_remnant(&phi, &psi, &u, &v).expect("shared codomain").0
                            || eta_has_remnant(&phi, &psi, &v, &u).expect("shared codomain").0)
                }
            })
            .collect()
    }
}

fn add_indicators(mut acc: Vec<u64>, flags: Vec<bool>) -> Vec<u64> {
    for (c, f) in acc.iter_mut().zip(flags) {
        *c += u64::from(f);
    }
    acc
}

#[cfg(feature = "parallel")]
fn count_trials(trial: &TrialContext<'_>, trials: u64, threads: Option<usize>) -> Result<Vec<u64>> {
    use rayon::prelude::*;

    let width = trial.properties.len();
    let work = || {
        (0..trials)
            .into_par_iter()
            .map(|t| trial.run(t))
            .fold(|| vec![0u64; width], add_indicators)
            .reduce(
                || vec![0u64; width],
                |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
            )
    };
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

#[cfg(not(feature = "parallel"))]
fn count_trials(trial: &TrialContext<'_>, trials: u64, _threads: Option<usize>) -> Result<Vec<u64>> {
    Ok((0..trials)
        .map(|t| trial.run(t))
        .fold(vec![0u64; trial.properties.len()], add_indicators))
}
