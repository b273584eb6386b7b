//! Report builders behind the `scrollsec` binary. Every report is plain
//! serializable data so that identical configs give identical JSON.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use scrollsec_core::delpezzo::{self, AtlasEntry, DelPezzoCase, LocusKind};
use scrollsec_core::oracle::{OracleCheck, PointCheck, ORACLE_BUDGET};
use scrollsec_core::sampling::StratifiedSampler;
use scrollsec_core::secant::{self, SecantOptions};
use scrollsec_core::strata::{self, Memberships};
use scrollsec_core::{Elem, Error, Field, Result, Scroll, ScrollSpec, SecantType};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_Q: u64 = 10007;
/// Largest prime the oracle commands accept.
pub const ORACLE_MAX_Q: u64 = 101;

/// Search bounds for the atlas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtlasBounds {
    pub max_deg: u32,
    pub max_n: usize,
    pub max_h: i32,
}

impl Default for AtlasBounds {
    fn default() -> Self {
        AtlasBounds { max_deg: 6, max_n: 4, max_h: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub scroll: Option<ScrollSpec>,
    pub q: u64,
    pub d_max: u32,
    pub seed: u64,
    /// Sample count for `sample`, `oracle-check` and atlas verification.
    pub n: usize,
    pub point: Option<Vec<i64>>,
    pub bounds: AtlasBounds,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { scroll: None, q: DEFAULT_Q, d_max: 2, seed: 0, n: 200, point: None, bounds: AtlasBounds::default() }
    }
}

impl RunConfig {
    fn spec(&self) -> Result<&ScrollSpec> {
        self.scroll.as_ref().ok_or_else(|| Error::Parse("missing --scroll".into()))
    }

    fn opts(&self) -> SecantOptions {
        SecantOptions::with_d_max(self.d_max)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Parses `"1,0,-2"` into integer coordinates.
pub fn parse_point(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate `{t}`")))
        })
        .collect()
}

fn format_point(field: &Field, p: &[Elem]) -> Vec<String> {
    p.iter().map(|&e| field.format(e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub schema: u32,
    pub scroll: String,
    pub q: String,
    pub point: Vec<String>,
    pub s: i64,
    pub rank: usize,
    pub label: SecantType,
    pub dim_sigma: i64,
    pub sec_dim: i64,
    pub depth: i64,
    pub acm: bool,
    pub del_pezzo_case: DelPezzoCase,
    pub linearly_normal: bool,
    pub memberships: Memberships,
    /// Geometric label, signature label and the direct cone all agree and the
    /// membership chain holds.
    pub agreement: bool,
}

/// Classifies a single point already in the field of `scroll`.
pub fn classify_point(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<ClassifyReport> {
    scroll.check_point(p)?;
    if scroll.contains(p)? {
        return Err(Error::POnVariety);
    }
    let spec = scroll.spec();
    let field = scroll.field();
    let sig = secant::classify(scroll, p, opts)?;
    let direct = secant::classify_direct(scroll, p, opts)?;
    let geom = strata::stratum_geometric(scroll, p, opts)?;
    let depth = delpezzo::depth_predict(spec, &sig, geom.memberships.sec);
    Ok(ClassifyReport {
        schema: SCHEMA,
        scroll: spec.to_string(),
        q: field.q().to_string(),
        point: format_point(field, p),
        s: sig.s,
        rank: sig.rank,
        label: sig.label,
        dim_sigma: sig.locus_dim,
        sec_dim: sig.sec_dim,
        depth: depth.t,
        acm: depth.acm,
        del_pezzo_case: depth.del_pezzo_case,
        linearly_normal: depth.linearly_normal,
        memberships: geom.memberships,
        agreement: geom.agrees_with_signature && direct == sig && geom.memberships.chain_holds(),
    })
}

pub fn run_classify(config: &RunConfig) -> Result<ClassifyReport> {
    let spec = config.spec()?.clone();
    let field = Field::prime(config.q)?;
    let coords = config.point.as_ref().ok_or_else(|| Error::Parse("missing --point".into()))?;
    let scroll = Scroll::new(spec, field);
    let p = field.vector(coords);
    classify_point(&scroll, &p, &config.opts())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleFailure {
    pub point: Vec<String>,
    pub error: Option<String>,
    pub label_geom: Option<SecantType>,
    pub label_signature: Option<SecantType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub schema: u32,
    pub scroll: String,
    pub q: String,
    pub seed: u64,
    pub n: usize,
    pub counts: BTreeMap<SecantType, usize>,
    pub unclassifiable: usize,
    pub agreement_failures: usize,
    pub chain_violations: usize,
    pub failures: Vec<SampleFailure>,
}

impl Census {
    pub fn ok(&self) -> bool {
        self.unclassifiable == 0 && self.agreement_failures == 0 && self.chain_violations == 0
    }
}

pub fn run_sample(config: &RunConfig) -> Result<Census> {
    let spec = config.spec()?.clone();
    let field = Field::prime(config.q)?;
    let scroll = Scroll::new(spec, field);
    let opts = config.opts();
    let sampler = StratifiedSampler::new(&scroll);
    let mut rng = config.rng();
    let mut counts: BTreeMap<SecantType, usize> = SecantType::ALL.iter().map(|&t| (t, 0)).collect();
    let mut census = Census {
        schema: SCHEMA,
        scroll: scroll.spec().to_string(),
        q: field.q().to_string(),
        seed: config.seed,
        n: config.n,
        counts: BTreeMap::new(),
        unclassifiable: 0,
        agreement_failures: 0,
        chain_violations: 0,
        failures: Vec::new(),
    };
    for _ in 0..config.n {
        let p = sampler.sample(&mut rng);
        let point = format_point(&field, &p);
        match classify_point(&scroll, &p, &opts) {
            Ok(r) => {
                *counts.get_mut(&r.label).expect("all labels present") += 1;
                let chain = r.memberships.chain_holds();
                if !chain {
                    census.chain_violations += 1;
                }
                if !r.agreement {
                    census.agreement_failures += 1;
                }
                if !chain || !r.agreement {
                    census.failures.push(SampleFailure {
                        point,
                        error: None,
                        label_geom: Some(r.memberships.label()),
                        label_signature: Some(r.label),
                    });
                }
            }
            Err(e) => {
                if matches!(e, Error::UnclassifiableSignature { .. }) {
                    census.unclassifiable += 1;
                } else {
                    census.agreement_failures += 1;
                }
                census.failures.push(SampleFailure {
                    point,
                    error: Some(e.to_string()),
                    label_geom: None,
                    label_signature: None,
                });
            }
        }
    }
    census.counts = counts;
    Ok(census)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasVerification {
    pub inside: usize,
    pub inside_acm: usize,
    pub outside: usize,
    pub outside_acm: usize,
    /// Inside points whose case tag differs from the entry.
    pub case_mismatches: usize,
    pub errors: Vec<String>,
}

impl AtlasVerification {
    pub fn ok(&self) -> bool {
        self.inside_acm == self.inside && self.outside_acm == 0 && self.case_mismatches == 0 && self.errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub scroll: String,
    #[serde(flatten)]
    pub entry: AtlasEntry,
    pub verification: AtlasVerification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasReport {
    pub schema: u32,
    pub q: String,
    pub seed: u64,
    pub max_deg: u32,
    pub max_n: usize,
    pub max_h: i32,
    pub entries: Vec<AtlasRow>,
}

impl AtlasReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.verification.ok())
    }
}

/// Samples `n` points inside the locus and up to `n` outside it, and
/// records how many of each give an ACM projection.
pub fn verify_entry(scroll: &Scroll, entry: &AtlasEntry, n: usize, opts: &SecantOptions, rng: &mut ChaCha8Rng) -> AtlasVerification {
    let mut v = AtlasVerification { inside: 0, inside_acm: 0, outside: 0, outside_acm: 0, case_mismatches: 0, errors: Vec::new() };
    let field = *scroll.field();
    let record = |p: &[Elem], inside: bool, v: &mut AtlasVerification| match classify_point(scroll, p, opts) {
        Ok(r) => {
            if inside {
                v.inside += 1;
                if r.acm {
                    v.inside_acm += 1;
                    if r.del_pezzo_case != entry.case {
                        v.case_mismatches += 1;
                    }
                }
            } else {
                v.outside += 1;
                if r.acm {
                    v.outside_acm += 1;
                }
            }
        }
        Err(e) => v.errors.push(format!("{:?}: {e}", format_point(&field, p))),
    };
    for _ in 0..n {
        let p = delpezzo::sample_inside(scroll, entry.locus, rng);
        record(&p, true, &mut v);
    }
    if entry.locus != LocusKind::Full {
        let sampler = StratifiedSampler::new(scroll);
        let mut attempts = 0;
        while v.outside < n && attempts < 50 * n {
            attempts += 1;
            let p = sampler.sample(rng);
            match delpezzo::locus_contains(scroll, entry.locus, &p, opts) {
                Ok(true) => {}
                Ok(false) => record(&p, false, &mut v),
                Err(e) => v.errors.push(format!("{:?}: {e}", format_point(&field, &p))),
            }
        }
    }
    v
}

pub fn run_atlas(config: &RunConfig) -> Result<AtlasReport> {
    let b = config.bounds;
    let field = Field::prime(config.q)?;
    let opts = config.opts();
    let mut rng = config.rng();
    let entries = delpezzo::atlas_enumerate(b.max_deg, b.max_n, b.max_h)
        .into_iter()
        .map(|entry| {
            let scroll = Scroll::new(entry.spec.clone(), field);
            let verification = verify_entry(&scroll, &entry, config.n, &opts, &mut rng);
            AtlasRow { scroll: entry.spec.to_string(), entry, verification }
        })
        .collect();
    Ok(AtlasReport {
        schema: SCHEMA,
        q: field.q().to_string(),
        seed: config.seed,
        max_deg: b.max_deg,
        max_n: b.max_n,
        max_h: b.max_h,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleDiff {
    pub d: u32,
    pub point: Vec<String>,
    pub check: Option<PointCheck>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub schema: u32,
    pub scroll: String,
    pub q: String,
    pub seed: u64,
    pub n: usize,
    pub d_max: u32,
    /// Number of points checked at each extension degree.
    pub checked: BTreeMap<u32, usize>,
    pub diff: Vec<OracleDiff>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.diff.is_empty()
    }
}

pub fn run_oracle_check(config: &RunConfig) -> Result<OracleReport> {
    if config.q > ORACLE_MAX_Q {
        return Err(Error::Parse(format!("oracle commands need q <= {ORACLE_MAX_Q}, got {}", config.q)));
    }
    let spec = config.spec()?.clone();
    let field = Field::prime(config.q)?;
    let scroll = Scroll::new(spec, field);
    let sampler = StratifiedSampler::new(&scroll);
    let mut rng = config.rng();
    let points: Vec<Vec<Elem>> = (0..config.n).map(|_| sampler.sample(&mut rng)).collect();
    let mut report = OracleReport {
        schema: SCHEMA,
        scroll: scroll.spec().to_string(),
        q: field.q().to_string(),
        seed: config.seed,
        n: config.n,
        d_max: config.d_max,
        checked: BTreeMap::new(),
        diff: Vec::new(),
    };
    for d in 1..=config.d_max.min(2) {
        let oracle = OracleCheck::new(&scroll, d, ORACLE_BUDGET)?;
        for p in &points {
            let (check, error) = match oracle.check(p) {
                Ok(c) if c.ok() => (None, None),
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(e.to_string())),
            };
            if check.is_some() || error.is_some() {
                report.diff.push(OracleDiff { d, point: format_point(&field, p), check, error });
            }
        }
        report.checked.insert(d, points.len());
    }
    Ok(report)
}
