//! Batch orchestration and machine-readable persistence: permutation scans,
//! alpha tables, girth censuses, filter reports and power-sum cross-checks,
//! emitted as JSON Lines (or CSV) with a deterministic body. Workers shard
//! contiguous k-chunks; results are re-assembled in order, so the body is
//! byte-identical for any worker count.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::ffield::{FieldContext, FieldError};
use crate::filters::{self, FilterReport};
use crate::modarith::cyclo_coset;
use crate::monograph::{
    scan_family_xk_y2k, scan_monomial_graphs, CensusRecord, GirthMode, GraphError,
    MonomialGraph, MonomialGraphSpec,
};
use crate::permpoly::{
    eval_a, eval_b, is_pp_a_hermite, is_pp_b_hermite, is_pp_bruteforce, powsum_a_closed,
    powsum_b_closed, powsum_direct, PPVerdict,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("empty or malformed k-range [{0}, {1}]")]
    BadRange(u64, u64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Factor q as p^e with p prime, e >= 1.
pub fn prime_power(q: u64) -> Result<(u64, u32), ReportError> {
    if q < 2 {
        return Err(ReportError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut n = q;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if n != 1 {
                return Err(ReportError::NotPrimePower(q));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    A,
    B,
    Joint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Hermite,
    Both,
}

/// One scan record per (q, k).
#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_a_brute: Option<PPVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_a_hermite: Option<PPVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_b_brute: Option<PPVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_b_hermite: Option<PPVerdict>,
    /// Whether k lies in the p-cyclotomic coset of 1 mod q-1.
    pub is_p_power: bool,
    /// The kind-relevant PP outcome under the method of record
    /// (brute force when available).
    pub pp: bool,
    /// False when brute force and Hermite disagree (method = both).
    pub methods_agree: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub kind: ScanKind,
    pub method: Method,
    pub k_from: Option<u64>,
    pub k_to: Option<u64>,
    pub jobs: usize,
}

#[derive(Debug)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    /// (q, k) where the PP set disagrees with the p-power set.
    pub discrepancies: Vec<(u64, u64)>,
    /// (q, k) where brute force and Hermite disagree.
    pub disagreements: Vec<(u64, u64)>,
}

fn scan_one_k(ctx: &FieldContext, kind: ScanKind, method: Method, k: u64) -> ScanRecord {
    let (q, p, e) = (ctx.q(), ctx.p(), ctx.e());
    let want_a = matches!(kind, ScanKind::A | ScanKind::Joint);
    let want_b = matches!(kind, ScanKind::B | ScanKind::Joint);
    let want_brute = matches!(method, Method::Brute | Method::Both);
    let want_hermite = matches!(method, Method::Hermite | Method::Both);

    let verdict_a_brute = (want_a && want_brute)
        .then(|| is_pp_bruteforce(ctx, |x| eval_a(ctx, k, x)));
    let verdict_a_hermite = (want_a && want_hermite).then(|| is_pp_a_hermite(q, p, k));
    let verdict_b_brute = (want_b && want_brute)
        .then(|| is_pp_bruteforce(ctx, |x| eval_b(ctx, k, x)));
    let verdict_b_hermite = (want_b && want_hermite).then(|| is_pp_b_hermite(q, p, k));

    let agree = |b: &Option<PPVerdict>, h: &Option<PPVerdict>| match (b, h) {
        (Some(b), Some(h)) => b.is_pp == h.is_pp,
        _ => true,
    };
    let methods_agree = agree(&verdict_a_brute, &verdict_a_hermite)
        && agree(&verdict_b_brute, &verdict_b_hermite);

    let pick = |b: &Option<PPVerdict>, h: &Option<PPVerdict>| {
        b.or(*h).map(|v| v.is_pp).unwrap_or(true)
    };
    let pp = match kind {
        ScanKind::A => pick(&verdict_a_brute, &verdict_a_hermite),
        ScanKind::B => pick(&verdict_b_brute, &verdict_b_hermite),
        ScanKind::Joint => {
            pick(&verdict_a_brute, &verdict_a_hermite)
                && pick(&verdict_b_brute, &verdict_b_hermite)
        }
    };

    ScanRecord {
        q,
        p,
        e,
        k,
        verdict_a_brute,
        verdict_a_hermite,
        verdict_b_brute,
        verdict_b_hermite,
        is_p_power: cyclo_coset(1, p, q).contains(&k),
        pp,
        methods_agree,
    }
}

/// Scan every k in the range for each q, sharding contiguous k-chunks over
/// `jobs` workers. Output order is (q, k) ascending regardless of job count.
pub fn run_scan(q_list: &[u64], opts: &ScanOptions) -> Result<ScanOutcome, ReportError> {
    let mut records = Vec::new();
    let mut discrepancies = Vec::new();
    let mut disagreements = Vec::new();
    let jobs = opts.jobs.max(1);

    for &q in q_list {
        let (p, e) = prime_power(q)?;
        let ctx = FieldContext::build(p, e)?;
        let k_from = opts.k_from.unwrap_or(1).max(1);
        let k_to = opts.k_to.unwrap_or(q - 1).min(q - 1);
        if k_from > k_to {
            return Err(ReportError::BadRange(k_from, k_to));
        }
        let ks: Vec<u64> = (k_from..=k_to).collect();
        let chunk = ks.len().div_ceil(jobs);
        let q_records: Vec<ScanRecord> = std::thread::scope(|scope| {
            let handles: Vec<_> = ks
                .chunks(chunk.max(1))
                .map(|part| {
                    let ctx = &ctx;
                    scope.spawn(move || {
                        part.iter()
                            .map(|&k| scan_one_k(ctx, opts.kind, opts.method, k))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect()
        });
        for r in &q_records {
            if r.pp != r.is_p_power {
                discrepancies.push((q, r.k));
            }
            if !r.methods_agree {
                disagreements.push((q, r.k));
            }
        }
        records.extend(q_records);
    }
    Ok(ScanOutcome {
        records,
        discrepancies,
        disagreements,
    })
}

/// alpha-table row.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaRow {
    pub p: u64,
    pub alpha: u64,
    pub is_exception: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaSummary {
    pub primes: u64,
    pub exceptions: u64,
}

/// (p, alpha(p), alpha(p) != p-1) for all odd primes <= p_max.
pub fn run_alpha(p_max: u64) -> (Vec<AlphaRow>, AlphaSummary) {
    let mut rows = Vec::new();
    let mut exceptions = 0;
    let mut p = 3;
    while p <= p_max {
        if crate::ffield::is_prime(p) {
            let a = filters::alpha(p).expect("odd prime").alpha;
            let is_exception = a != p - 1;
            if is_exception {
                exceptions += 1;
            }
            rows.push(AlphaRow {
                p,
                alpha: a,
                is_exception,
            });
        }
        p += 2;
    }
    let summary = AlphaSummary {
        primes: rows.len() as u64,
        exceptions,
    };
    (rows, summary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthTarget {
    /// Gamma_3(q) = G_q(XY, XY^2).
    Gamma3,
    /// The restricted family G_q(XY, X^kY^{2k}), all k in [1, q-1].
    FamilyXkY2k,
    /// Full (m1,n1,m2,n2) enumeration.
    FullScan,
    /// A single explicit spec.
    Single { m1: u64, n1: u64, m2: u64, n2: u64 },
}

pub fn run_girth(
    q_list: &[u64],
    target: GirthTarget,
    mode: GirthMode,
) -> Result<Vec<CensusRecord>, ReportError> {
    let mut out = Vec::new();
    for &q in q_list {
        let (p, e) = prime_power(q)?;
        let ctx = FieldContext::build(p, e)?;
        match target {
            GirthTarget::Gamma3 => {
                let spec = MonomialGraphSpec::gamma3(q);
                let g = MonomialGraph::new(&ctx, spec)?;
                let r = g.girth(mode)?;
                out.push(CensusRecord {
                    q,
                    m1: spec.m1,
                    n1: spec.n1,
                    m2: spec.m2,
                    n2: spec.n2,
                    girth: r.girth,
                });
            }
            GirthTarget::FamilyXkY2k => out.extend(scan_family_xk_y2k(&ctx, mode)?),
            GirthTarget::FullScan => out.extend(scan_monomial_graphs(&ctx, mode)?),
            GirthTarget::Single { m1, n1, m2, n2 } => {
                let spec = MonomialGraphSpec::new(q, m1, n1, m2, n2)?;
                let g = MonomialGraph::new(&ctx, spec)?;
                let r = g.girth(mode)?;
                out.push(CensusRecord {
                    q,
                    m1,
                    n1,
                    m2,
                    n2,
                    girth: r.girth,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
pub struct FiltersOutcome {
    pub reports: Vec<FilterReport>,
    /// Filter failures contradicted by brute force (must stay empty).
    pub unsound: Vec<(u64, u64)>,
}

/// Per-k filter breakdown for one q; with `soundness` every applicable
/// failure is cross-checked against brute force.
pub fn run_filters(
    q: u64,
    k_from: u64,
    k_to: u64,
    soundness: bool,
) -> Result<FiltersOutcome, ReportError> {
    let (p, e) = prime_power(q)?;
    let ctx = FieldContext::build(p, e)?;
    let k_to = k_to.min(q - 1);
    if k_from < 1 || k_from > k_to {
        return Err(ReportError::BadRange(k_from, k_to));
    }
    let mut reports = Vec::new();
    let mut unsound = Vec::new();
    for k in k_from..=k_to {
        let r = filters::filter_pipeline(q, p, k);
        if soundness {
            let a_pp = is_pp_bruteforce(&ctx, |x| eval_a(&ctx, k, x)).is_pp;
            let b_pp = is_pp_bruteforce(&ctx, |x| eval_b(&ctx, k, x)).is_pp;
            let bad = (r.a_filter_failed() && a_pp)
                || (r.b_filter_failed() && b_pp)
                || (r.joint_identity.failed() && a_pp && b_pp);
            if bad {
                unsound.push((q, k));
            }
        }
        reports.push(r);
    }
    Ok(FiltersOutcome { reports, unsound })
}

#[derive(Debug, Clone, Serialize)]
pub struct PowsumXcheckRecord {
    pub q: u64,
    pub p: u64,
    pub pairs_checked: u64,
    pub mismatches: u64,
}

/// Closed-form vs direct power sums for A_k and B_k over all
/// (k, s) in [1, q-1]^2.
pub fn run_powsum_xcheck(q_list: &[u64]) -> Result<Vec<PowsumXcheckRecord>, ReportError> {
    let mut out = Vec::new();
    for &q in q_list {
        let (p, e) = prime_power(q)?;
        let ctx = FieldContext::build(p, e)?;
        let mut pairs = 0;
        let mut mismatches = 0;
        for k in 1..q {
            for s in 1..q {
                pairs += 2;
                if powsum_a_closed(q, p, k, s)
                    != powsum_direct(&ctx, |x| eval_a(&ctx, k, x), s)
                {
                    mismatches += 1;
                }
                if powsum_b_closed(q, p, k, s)
                    != powsum_direct(&ctx, |x| eval_b(&ctx, k, x), s)
                {
                    mismatches += 1;
                }
            }
        }
        out.push(PowsumXcheckRecord {
            q,
            p,
            pairs_checked: pairs,
            mismatches,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

/// Serialize records to JSONL body lines (no header).
pub fn jsonl_body<T: Serialize>(records: &[T]) -> Vec<String> {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable record"))
        .collect()
}

/// Flatten a record to CSV by walking its JSON representation in key order.
pub fn csv_body<T: Serialize>(records: &[T]) -> Vec<String> {
    fn flatten(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, val) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    flatten(&key, val, out);
                }
            }
            serde_json::Value::Null => out.push((prefix.to_string(), String::new())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut lines = Vec::new();
    let mut header: Option<Vec<String>> = None;
    for r in records {
        let v = serde_json::to_value(r).expect("serializable record");
        let mut cells = Vec::new();
        flatten("", &v, &mut cells);
        if header.is_none() {
            header = Some(cells.iter().map(|(k, _)| k.clone()).collect());
            lines.push(header.as_ref().unwrap().join(","));
        }
        lines.push(
            cells
                .into_iter()
                .map(|(_, val)| val.replace('"', "\"\""))
                .collect::<Vec<_>>()
                .join(","),
        );
    }
    lines
}

/// Report header: command echo and timestamp live here, never in the body,
/// so bodies are byte-identical across re-runs.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub timestamp_unix: u64,
}

impl Header {
    pub fn new(command: String) -> Header {
        let timestamp_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Header {
            tool: "girth8",
            version: env!("CARGO_PKG_VERSION"),
            command,
            timestamp_unix,
        }
    }
}

pub fn write_report<W: Write>(
    mut w: W,
    header: &Header,
    body: &[String],
) -> Result<(), ReportError> {
    writeln!(w, "{}", serde_json::to_string(header).expect("header"))?;
    for line in body {
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Body lines of a stored report (header stripped).
pub fn strip_header(content: &str) -> Vec<&str> {
    content
        .lines()
        .enumerate()
        .filter(|(i, line)| !(*i == 0 && line.starts_with("{\"tool\":")))
        .map(|(_, line)| line)
        .collect()
}
