//! Command implementations behind the `absorder` binary.
//!
//! Each command returns an [`Outcome`] holding its stdout, stderr and exit
//! code: 0 when every requested check passes, 2 for usage or parse errors,
//! 3 when the group exceeds the size guard, 4 when a verification fails.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::absolute_order::{claw_product, expected_rank_polynomial, AbsoluteOrder};
use crate::flag::{embed_into, factorize, phi};
use crate::groups::{Element, GroupError, GroupId, DEFAULT_MAX_GROUP_ORDER};
use crate::poset::export_dot;
use crate::sperner::{check_k_sperner, validate_certificate, SpernerCheck};

/// Environment variable overriding [`DEFAULT_MAX_GROUP_ORDER`].
pub const MAX_GROUP_ENV: &str = "ABSORDER_MAX_GROUP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

/// Test hook: when set to `certificate`, `verify` removes one vertex from each
/// emitted family before re-validating it, which must end in exit code 4.
#[doc(hidden)]
pub const FAULT_ENV: &str = "ABSORDER_FAULT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: stderr.into(),
            code,
        }
    }
}

fn group_error(err: GroupError) -> Outcome {
    let code = match err {
        GroupError::TooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_USAGE,
    };
    let hint = if code == EXIT_TOO_LARGE {
        format!(" (raise it with {MAX_GROUP_ENV})")
    } else {
        String::new()
    };
    Outcome::fail(code, format!("error: {err}{hint}\n"))
}

/// Reads the size guard from the environment value, if any.
pub fn group_limit(env_value: Option<&str>) -> Result<u64, String> {
    match env_value {
        None => Ok(DEFAULT_MAX_GROUP_ORDER),
        Some(text) => text
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_GROUP_ENV} must be a nonnegative integer, got {text:?}")),
    }
}

fn parse_group(text: &str) -> Result<GroupId, Outcome> {
    text.parse().map_err(group_error)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RanksReport {
    pub group: String,
    pub rank_sequence: Vec<u64>,
    pub expected_rank_sequence: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn cmd_ranks(group: &str, limit: u64) -> Outcome {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let order = match AbsoluteOrder::build(g, limit) {
        Ok(o) => o,
        Err(err) => return group_error(err),
    };
    let rank_sequence = order.poset().rank_sequence().0;
    let expected_rank_sequence = expected_rank_polynomial(g);
    let report = RanksReport {
        group: g.to_string(),
        matches: rank_sequence == expected_rank_sequence,
        rank_sequence,
        expected_rank_sequence,
    };
    let mut out = Outcome::ok(to_json(&report));
    if !report.matches {
        out.code = EXIT_FAILED;
        out.stderr = "rank sequence differs from the degree polynomial\n".into();
    }
    out
}

/// Which values of `k` `verify` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelection {
    One(usize),
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: String,
    pub rank_sequence: Vec<u64>,
    pub expected_rank_sequence: Vec<u64>,
    pub reflections_count: usize,
    pub factorization_verified: bool,
    pub embedding_verified: bool,
    pub sperner: Vec<SpernerCheck>,
    /// Conjunction over `k = 1..=top rank + 1`; `None` unless every `k` was checked.
    pub strong_sperner: Option<bool>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rank_sequence == self.expected_rank_sequence
            && self.factorization_verified
            && self.embedding_verified
            && self.sperner.iter().all(|s| s.is_k_sperner)
            && self.strong_sperner != Some(false)
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Builds the full verification report for `g`. Errors are certificate
/// failures, which indicate a solver bug.
pub fn verify_group(
    g: GroupId,
    ks: KSelection,
    limit: u64,
) -> Result<Result<Report, String>, GroupError> {
    verify_group_inner(g, ks, limit, false)
}

fn verify_group_inner(
    g: GroupId,
    ks: KSelection,
    limit: u64,
    corrupt: bool,
) -> Result<Result<Report, String>, GroupError> {
    let mut timings = BTreeMap::new();

    let start = Instant::now();
    let order = AbsoluteOrder::build(g, limit)?;
    timings.insert("build_absolute_order".to_string(), elapsed_ms(start));
    let poset = order.poset();

    let start = Instant::now();
    let factorization_verified = poset.labels().iter().all(|w| {
        let f = factorize(w);
        f.length() == w.absolute_length() && phi(&f).as_ref() == Ok(w)
    });
    timings.insert("factorization".to_string(), elapsed_ms(start));

    let start = Instant::now();
    let embedding_verified = embed_into(&order).check.all_hold();
    timings.insert("embedding".to_string(), elapsed_ms(start));

    let ks: Vec<usize> = match ks {
        KSelection::One(k) => vec![k],
        KSelection::All => (1..=poset.height()).collect(),
    };
    let start = Instant::now();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = ks
            .iter()
            .map(|&k| scope.spawn(move || check_k_sperner(poset, k)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sperner worker"))
            .collect()
    });
    timings.insert("sperner".to_string(), elapsed_ms(start));

    let mut sperner = Vec::with_capacity(results.len());
    for result in results {
        let (check, mut cert) = match result {
            Ok(pair) => pair,
            Err(err) => return Ok(Err(err.to_string())),
        };
        if corrupt {
            cert.family.pop();
        }
        if let Err(err) = validate_certificate(poset, &cert) {
            return Ok(Err(format!(
                "certificate for k = {} rejected: {err}",
                check.k
            )));
        }
        sperner.push(check);
    }
    let strong_sperner = (ks.len() == poset.height() && ks.iter().copied().eq(1..=poset.height()))
        .then(|| sperner.iter().all(|s| s.is_k_sperner));

    Ok(Ok(Report {
        group: g.to_string(),
        rank_sequence: poset.rank_sequence().0,
        expected_rank_sequence: expected_rank_polynomial(g),
        reflections_count: g.reflections().len(),
        factorization_verified,
        embedding_verified,
        sperner,
        strong_sperner,
        timings_ms: timings,
    }))
}

pub fn cmd_verify(group: &str, ks: KSelection, limit: u64) -> Outcome {
    run_verify(group, ks, limit, false)
}

#[doc(hidden)]
pub fn cmd_verify_with_fault(group: &str, ks: KSelection, limit: u64) -> Outcome {
    run_verify(group, ks, limit, true)
}

fn run_verify(group: &str, ks: KSelection, limit: u64, corrupt: bool) -> Outcome {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(out) => return out,
    };
    if ks == KSelection::One(0) {
        return Outcome::fail(EXIT_USAGE, "error: --k must be at least 1\n");
    }
    match verify_group_inner(g, ks, limit, corrupt) {
        Err(err) => group_error(err),
        Ok(Err(bug)) => Outcome::fail(EXIT_FAILED, format!("internal error: {bug}\n")),
        Ok(Ok(report)) => {
            let mut out = Outcome::ok(to_json(&report));
            if !report.all_pass() {
                out.code = EXIT_FAILED;
                out.stderr = "verification failed\n".into();
            }
            out
        }
    }
}

pub fn cmd_factorize(group: &str, element: &str) -> Outcome {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let w = match Element::parse(element, g) {
        Ok(w) => w,
        Err(err) => return Outcome::fail(EXIT_USAGE, format!("error: {err}\n")),
    };
    let f = factorize(&w);
    let length = w.absolute_length();
    let ok = f.length() == length && phi(&f).as_ref() == Ok(&w);
    let stdout = format!(
        "{f}\nnon-identity factors: {}, absolute length: {length}, {}\n",
        f.length(),
        if ok { "ok" } else { "MISMATCH" }
    );
    Outcome {
        stdout,
        stderr: String::new(),
        code: if ok { EXIT_OK } else { EXIT_FAILED },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotKind {
    Absolute,
    ClawProduct,
}

pub fn cmd_dot(group: &str, kind: DotKind, limit: u64) -> Outcome {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(out) => return out,
    };
    if let Err(err) = g.check_order(limit) {
        return group_error(err);
    }
    let text = match kind {
        DotKind::Absolute => match AbsoluteOrder::build(g, limit) {
            Ok(order) => export_dot(order.poset(), Element::to_string),
            Err(err) => return group_error(err),
        },
        DotKind::ClawProduct => export_dot(&claw_product(g), |f| f.to_string()),
    };
    Outcome::ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    fn nodes(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("[label=")).count()
    }

    #[test]
    fn ranks() {
        let out = cmd_ranks("a2", DEFAULT_MAX_GROUP_ORDER);
        assert_eq!(out.code, EXIT_OK);
        let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(report["rank_sequence"], serde_json::json!([1, 3, 2]));
        assert_eq!(report["match"], true);
        let out = cmd_ranks("a1", DEFAULT_MAX_GROUP_ORDER);
        assert!(out
            .stdout
            .contains("\"rank_sequence\": [\n    1,\n    1\n  ]"));
        let out = cmd_ranks("b4", DEFAULT_MAX_GROUP_ORDER);
        let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            report["rank_sequence"],
            serde_json::json!([1, 16, 86, 176, 105])
        );
        assert_eq!(cmd_ranks("x9", DEFAULT_MAX_GROUP_ORDER).code, EXIT_USAGE);
        assert_eq!(
            cmd_ranks("a8", DEFAULT_MAX_GROUP_ORDER).code,
            EXIT_TOO_LARGE
        );
    }

    #[test]
    fn factorize_text() {
        let out = cmd_factorize("a2", "(1 3 2)");
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.starts_with("(2 3)(1 2)\n"));
        assert!(out.stdout.contains("absolute length: 2"));
        assert!(cmd_factorize("a2", "e").stdout.starts_with("ee\n"));
        assert!(cmd_factorize("b2", "[2]").stdout.starts_with("[2]e\n"));
        let bad = cmd_factorize("a2", "(1 5)");
        assert_eq!(bad.code, EXIT_USAGE);
        assert!(bad.stderr.contains("position 3"));
    }

    #[test]
    fn dot_counts() {
        let abs = cmd_dot("a2", DotKind::Absolute, DEFAULT_MAX_GROUP_ORDER).stdout;
        assert_eq!((nodes(&abs), edges(&abs)), (6, 9));
        let claws = cmd_dot("a2", DotKind::ClawProduct, DEFAULT_MAX_GROUP_ORDER).stdout;
        assert_eq!((nodes(&claws), edges(&claws)), (6, 7));
        assert!(claws.contains("label=\"e(1 2)\""));
        let a1 = cmd_dot("a1", DotKind::Absolute, DEFAULT_MAX_GROUP_ORDER).stdout;
        assert_eq!((nodes(&a1), edges(&a1)), (2, 1));
        assert_eq!(
            cmd_dot("b9", DotKind::ClawProduct, DEFAULT_MAX_GROUP_ORDER).code,
            EXIT_TOO_LARGE
        );
    }

    #[test]
    fn verify_small_groups() {
        let out = cmd_verify("a1", KSelection::One(1), DEFAULT_MAX_GROUP_ORDER);
        assert_eq!(out.code, EXIT_OK);
        let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(report["sperner"][0]["max_family_size"], 1);
        assert_eq!(report["sperner"][0]["k_largest_ranks_sum"], 1);
        assert_eq!(report["strong_sperner"], serde_json::Value::Null);

        let out = cmd_verify("b3", KSelection::All, DEFAULT_MAX_GROUP_ORDER);
        assert_eq!(out.code, EXIT_OK);
        let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let sizes: Vec<u64> = report["sperner"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["max_family_size"].as_u64().unwrap())
            .collect();
        assert_eq!(sizes, vec![23, 38, 47, 48]);
        assert_eq!(report["strong_sperner"], true);
        assert_eq!(cmd_verify("a3", KSelection::One(0), 100).code, EXIT_USAGE);
    }

    #[test]
    fn limits() {
        assert_eq!(group_limit(None), Ok(DEFAULT_MAX_GROUP_ORDER));
        assert_eq!(group_limit(Some("100")), Ok(100));
        assert!(group_limit(Some("lots")).is_err());
        assert_eq!(cmd_verify("a3", KSelection::All, 10).code, EXIT_TOO_LARGE);
    }
}
