//! Sweeps over every admissible triple up to a group-order bound,
//! cross-checking the closed form against both brute-force oracles.
//!
//! Each triple yields one [`SweepRecord`], written as a single JSON line.
//! Records are computed in parallel and written in triple order, so two runs
//! with the same configuration produce byte-identical streams. Failures are
//! recorded as [`Anomaly`] values and never abort the sweep.

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{gcd, mod_pow, mul_mod};
use crate::morphisms::{self, admissible_ys, check_morphism, units, Mode, MorphismTriple, Witness};
use crate::reidemeister::{reidemeister_burnside, reidemeister_formula, reidemeister_orbits};
use crate::zmgroup::{ZmParams, BRUTE_FORCE_MAX_ORDER, DEFAULT_MAX_ORDER};
use crate::Nat;

pub const DEFAULT_BRUTE_CAP: Nat = 150;
pub const DEFAULT_EXHAUSTIVE_CAP: Nat = 60;

const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_order: Nat,
    /// Brute-force oracles run only for groups of order at most this.
    pub brute_cap: Nat,
    /// Below this order the oracles cover every `(x1, x2)`; above it only a
    /// sample.
    pub exhaustive_cap: Nat,
    /// Global group-order bound.
    pub size_bound: Nat,
}

impl SweepConfig {
    pub fn new(max_order: Nat) -> Self {
        SweepConfig {
            max_order,
            brute_cap: DEFAULT_BRUTE_CAP,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            size_bound: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerY {
    pub y: Nat,
    /// Whether `gcd(y, n) = 1`.
    pub strict: bool,
    pub r_formula: Option<Nat>,
    /// Oracle values for the representative triple `(1, 0, y)`.
    pub r_orbit: Option<Nat>,
    pub r_burnside: Option<Nat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Anomaly {
    /// Paper-mode and strict-mode enumerations differ.
    ModeDivergence {
        paper_count: Nat,
        strict_count: Nat,
        excluded_y: Vec<Nat>,
    },
    /// A paper-mode triple that is not an automorphism.
    NonBijectiveTriple {
        triple: MorphismTriple,
        is_homomorphism: bool,
        witness: Option<Witness>,
    },
    /// Brute force disagreed with itself or with the closed form for some
    /// sampled triples at this `y`.
    OracleMismatch {
        y: Nat,
        strict: bool,
        r_formula: Option<Nat>,
        /// First disagreeing triple and its oracle values.
        triple: MorphismTriple,
        r_orbit: Nat,
        r_burnside: Nat,
        mismatched: Nat,
        sampled: Nat,
    },
    /// A closed-form or fixed-point sum failed an integrality check, or
    /// another computation failed outright.
    IntegralityFailure { y: Nat, message: String },
}

impl Anomaly {
    /// Whether this anomaly should fail a verification run.
    pub fn is_failure(&self) -> bool {
        match self {
            Anomaly::OracleMismatch { strict, .. } => *strict,
            Anomaly::IntegralityFailure { .. } => true,
            Anomaly::ModeDivergence { .. } | Anomaly::NonBijectiveTriple { .. } => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m: Nat,
    pub n: Nat,
    pub r: Nat,
    pub d: Nat,
    pub order: Nat,
    pub aut_count_paper: Nat,
    pub aut_count_strict: Nat,
    pub spectrum_strict: Vec<Nat>,
    pub per_y: Vec<PerY>,
    pub anomalies: Vec<Anomaly>,
}

impl SweepRecord {
    pub fn key(&self) -> (Nat, Nat, Nat) {
        (self.m, self.n, self.r)
    }
}

fn is_admissible(m: Nat, n: Nat, r: Nat) -> bool {
    gcd(m, n) == 1 && gcd(m, (r + m - 1) % m) == 1 && mod_pow(r, n, m).is_ok_and(|x| x == 1 % m)
}

/// All admissible `(m, n, r)` with `m * n <= max_order` and `0 <= r < m`,
/// ordered by `(m * n, m, n, r)`.
pub fn enumerate_triples(max_order: Nat) -> Vec<(Nat, Nat, Nat)> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        for m in (1..=order).filter(|m| order % m == 0) {
            let n = order / m;
            out.extend(
                (0..m)
                    .filter(|&r| is_admissible(m, n, r))
                    .map(|r| (m, n, r)),
            );
        }
    }
    out
}

/// Least element of each coset of the subgroup generated by `r` in the
/// units modulo `m`.
fn coset_representatives(p: &ZmParams) -> Vec<Nat> {
    let m = p.m();
    let mut covered = vec![false; m as usize];
    let mut reps = Vec::new();
    for x in units(m) {
        if covered[x as usize] {
            continue;
        }
        reps.push(x);
        for k in 0..p.d() {
            covered[mul_mod(x, p.r_pow(k), m) as usize] = true;
        }
    }
    reps
}

/// Triples whose oracles are computed at `y`; the representative
/// `(1, 0, y)` comes first.
fn sampled_triples(p: &ZmParams, y: Nat, cfg: &SweepConfig) -> Vec<MorphismTriple> {
    let m = p.m();
    let rep = MorphismTriple {
        x1: 1 % m,
        x2: 0,
        y,
    };
    let mut out = vec![rep];
    if p.order() <= cfg.exhaustive_cap {
        for x1 in units(m) {
            for x2 in 0..m {
                let f = MorphismTriple { x1, x2, y };
                if f != rep {
                    out.push(f);
                }
            }
        }
    } else {
        for x1 in coset_representatives(p) {
            let f = MorphismTriple { x1, x2: 0, y };
            if f != rep {
                out.push(f);
            }
        }
        if m > 1 {
            out.push(MorphismTriple {
                x1: 1,
                x2: m - 1,
                y,
            });
        }
    }
    out
}

fn oracles(p: &ZmParams, f: &MorphismTriple) -> Result<(Nat, Nat)> {
    Ok((reidemeister_orbits(p, f)?, reidemeister_burnside(p, f)?))
}

/// Builds the record for one admissible triple. Never fails: problems are
/// reported in `anomalies`.
pub fn sweep_record(m: Nat, n: Nat, r: Nat, cfg: &SweepConfig) -> Result<SweepRecord> {
    let p = ZmParams::with_bound(m, n, r, cfg.size_bound)?;
    let mut anomalies = Vec::new();

    let aut_count_paper = morphisms::count(&p, Mode::Paper)?;
    let aut_count_strict = morphisms::count(&p, Mode::Strict)?;
    let paper_ys = admissible_ys(&p, Mode::Paper);
    let excluded_y: Vec<Nat> = paper_ys
        .iter()
        .copied()
        .filter(|&y| gcd(y, n) != 1)
        .collect();
    if !excluded_y.is_empty() {
        anomalies.push(Anomaly::ModeDivergence {
            paper_count: aut_count_paper,
            strict_count: aut_count_strict,
            excluded_y: excluded_y.clone(),
        });
    }

    let brute = p.order() <= cfg.brute_cap.min(BRUTE_FORCE_MAX_ORDER);

    if brute {
        for &y in &excluded_y {
            let f = MorphismTriple {
                x1: 1 % m,
                x2: 0,
                y,
            };
            match check_morphism(&p, &f) {
                Ok(check) if !check.is_bijective => anomalies.push(Anomaly::NonBijectiveTriple {
                    triple: f,
                    is_homomorphism: check.is_homomorphism,
                    witness: check.witness,
                }),
                Ok(_) => {}
                Err(e) => anomalies.push(Anomaly::IntegralityFailure {
                    y,
                    message: e.to_string(),
                }),
            }
        }
    }

    let mut per_y = Vec::with_capacity(paper_ys.len());
    let mut spectrum = BTreeSet::new();
    for &y in &paper_ys {
        let strict = gcd(y, n) == 1;
        let r_formula = match reidemeister_formula(&p, y) {
            Ok(v) => Some(v),
            Err(e) => {
                anomalies.push(Anomaly::IntegralityFailure {
                    y,
                    message: e.to_string(),
                });
                None
            }
        };
        if strict {
            spectrum.extend(r_formula);
        }

        let mut entry = PerY {
            y,
            strict,
            r_formula,
            r_orbit: None,
            r_burnside: None,
        };
        if brute {
            let samples = sampled_triples(&p, y, cfg);
            let mut first_mismatch = None;
            let mut mismatched = 0;
            for (i, f) in samples.iter().enumerate() {
                match oracles(&p, f) {
                    Ok((orbit, burnside)) => {
                        if i == 0 {
                            entry.r_orbit = Some(orbit);
                            entry.r_burnside = Some(burnside);
                        }
                        let agrees = orbit == burnside && r_formula.is_none_or(|v| v == orbit);
                        if !agrees {
                            mismatched += 1;
                            first_mismatch.get_or_insert((*f, orbit, burnside));
                        }
                    }
                    Err(e) => anomalies.push(Anomaly::IntegralityFailure {
                        y,
                        message: format!("{f}: {e}"),
                    }),
                }
            }
            if let Some((triple, r_orbit, r_burnside)) = first_mismatch {
                anomalies.push(Anomaly::OracleMismatch {
                    y,
                    strict,
                    r_formula,
                    triple,
                    r_orbit,
                    r_burnside,
                    mismatched,
                    sampled: samples.len() as Nat,
                });
            }
        }
        per_y.push(entry);
    }

    Ok(SweepRecord {
        m,
        n,
        r: p.r(),
        d: p.d(),
        order: p.order(),
        aut_count_paper,
        aut_count_strict,
        spectrum_strict: spectrum.into_iter().collect(),
        per_y,
        anomalies,
    })
}

fn record_or_anomaly(m: Nat, n: Nat, r: Nat, cfg: &SweepConfig) -> SweepRecord {
    sweep_record(m, n, r, cfg).unwrap_or_else(|e| SweepRecord {
        m,
        n,
        r,
        d: 0,
        order: m.saturating_mul(n),
        aut_count_paper: 0,
        aut_count_strict: 0,
        spectrum_strict: Vec::new(),
        per_y: Vec::new(),
        anomalies: vec![Anomaly::IntegralityFailure {
            y: 0,
            message: e.to_string(),
        }],
    })
}

/// Runs the sweep and collects every record in triple order.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    check_config(cfg)?;
    Ok(enumerate_triples(cfg.max_order)
        .par_iter()
        .map(|&(m, n, r)| record_or_anomaly(m, n, r, cfg))
        .collect())
}

fn check_config(cfg: &SweepConfig) -> Result<()> {
    if cfg.max_order > cfg.size_bound {
        return Err(Error::SizeBound {
            order: cfg.max_order,
            bound: cfg.size_bound,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub written: usize,
    pub skipped: usize,
    pub mode_divergences: usize,
    pub non_bijective: usize,
    pub oracle_mismatches: usize,
    pub strict_oracle_mismatches: usize,
    pub integrality_failures: usize,
}

impl SweepSummary {
    pub fn absorb(&mut self, record: &SweepRecord) {
        for a in &record.anomalies {
            match a {
                Anomaly::ModeDivergence { .. } => self.mode_divergences += 1,
                Anomaly::NonBijectiveTriple { .. } => self.non_bijective += 1,
                Anomaly::OracleMismatch { strict, .. } => {
                    self.oracle_mismatches += 1;
                    if *strict {
                        self.strict_oracle_mismatches += 1;
                    }
                }
                Anomaly::IntegralityFailure { .. } => self.integrality_failures += 1,
            }
        }
    }

    /// True when no anomaly that fails verification was seen.
    pub fn clean(&self) -> bool {
        self.strict_oracle_mismatches == 0 && self.integrality_failures == 0
    }
}

/// Streams records as JSON lines to `out`, skipping triples in `skip`.
///
/// Records are computed a chunk at a time in parallel and written in triple
/// order.
pub fn sweep_to_writer<W: Write + ?Sized>(
    cfg: &SweepConfig,
    skip: &HashSet<(Nat, Nat, Nat)>,
    out: &mut W,
) -> Result<SweepSummary> {
    check_config(cfg)?;
    let triples: Vec<_> = enumerate_triples(cfg.max_order);
    let mut summary = SweepSummary::default();
    let todo: Vec<_> = triples
        .into_iter()
        .filter(|key| {
            let present = skip.contains(key);
            if present {
                summary.skipped += 1;
            }
            !present
        })
        .collect();
    for chunk in todo.chunks(CHUNK) {
        let records: Vec<SweepRecord> = chunk
            .par_iter()
            .map(|&(m, n, r)| record_or_anomaly(m, n, r, cfg))
            .collect();
        for record in &records {
            let line = serde_json::to_string(record).expect("records always serialize");
            writeln!(out, "{line}").map_err(|e| Error::Io(e.to_string()))?;
            summary.written += 1;
            summary.absorb(record);
        }
    }
    Ok(summary)
}

/// Parses a record stream; blank lines are ignored.
pub fn read_records<R: BufRead>(input: R) -> std::io::Result<Vec<SweepRecord>> {
    let mut out = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| {
            std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("line {}: {e}", lineno + 1),
            )
        })?;
        out.push(record);
    }
    Ok(out)
}
