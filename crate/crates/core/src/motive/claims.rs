use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::analysis::{analyze, TripleAnalysis};
use super::engine::is_positive;
use super::params::TripleParams;
use crate::error::Error;
use crate::grchow::chern::binomial;
use crate::grchow::IntegrationMode;

/// Range of triples the verifier scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBounds {
    pub kappa_max: u32,
    pub d_max: u32,
    pub n_max: u32,
}

impl Default for ScanBounds {
    fn default() -> Self {
        ScanBounds { kappa_max: 4, d_max: 6, n_max: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    pub range: String,
    pub expected: String,
    pub computed: String,
    pub triples_checked: usize,
    /// Triples where the statement and the computation disagree.
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Findings that no claim depends on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `d > 2`, `s >= 0`, `m = 0`.
    pub counterexamples_d_gt_2: Vec<String>,
    /// Triples where (B) holds but `(-1)^(kappa-1) m / d <= 0`.
    pub nonpositive_osculating_counts: Vec<String>,
    /// Triples whose analysis tripped an internal assertion.
    pub internal_errors: Vec<String>,
    pub triples_analyzed: usize,
    pub integrals: u64,
    pub oracle_checks: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsReport {
    pub bounds: ScanBounds,
    pub mode: IntegrationMode,
    pub claims: Vec<ClaimRecord>,
    pub diagnostics: Diagnostics,
}

impl ClaimsReport {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }
}

pub const LISTED_TRIPLES: [(u32, u32, u32); 4] = [(6, 3, 2), (8, 4, 2), (11, 5, 2), (9, 3, 3)];

type Key = (u32, u32, u32);
type Outcome = std::result::Result<TripleAnalysis, Error>;

fn key_of(n: u32, d: u32, kappa: u32) -> Key {
    (kappa, d, n)
}

fn label((kappa, d, n): Key) -> String {
    format!("({n},{d},{kappa})")
}

/// ELV triples: `d >= 3`, `n - kappa + 1 >= C(kappa-1+d, kappa)`, any `d`.
fn elv_triples(bounds: &ScanBounds) -> Vec<Key> {
    let mut out = Vec::new();
    for kappa in 1..=bounds.kappa_max {
        for n in kappa + 1..=bounds.n_max {
            let mut d = 3;
            while binomial(u64::from(kappa - 1 + d), u64::from(kappa)) <= u64::from(n - kappa + 1) {
                out.push(key_of(n, d, kappa));
                d += 1;
            }
        }
    }
    out
}

fn box_triples(bounds: &ScanBounds) -> Vec<Key> {
    let mut out = Vec::new();
    for kappa in 1..=bounds.kappa_max {
        for d in 1..=bounds.d_max {
            for n in kappa + 1..=bounds.n_max {
                out.push(key_of(n, d, kappa));
            }
        }
    }
    out
}

struct Results {
    map: BTreeMap<Key, Outcome>,
}

impl Results {
    fn get(&self, k: Key) -> &Outcome {
        &self.map[&k]
    }

    /// `Some(holds)` or `None` when the analysis failed.
    fn holds(&self, k: Key) -> Option<bool> {
        self.get(k).as_ref().ok().map(|a| a.condition.holds)
    }
}

fn describe(o: &Outcome) -> String {
    match o {
        Ok(a) => {
            let m = a.condition.m.as_ref().map_or("undefined".to_string(), |m| m.to_string());
            format!("s={}, m={}, holds={}", a.params().s_excess, m, a.condition.holds)
        }
        Err(e) => format!("error: {e}"),
    }
}

fn equivalence_record(
    id: &str,
    statement: &str,
    range: String,
    expected: &str,
    triples: &[Key],
    results: &Results,
    predicate: impl Fn(Key) -> bool,
) -> ClaimRecord {
    let mut failures = Vec::new();
    let mut agree = 0usize;
    for &k in triples {
        match results.holds(k) {
            Some(h) if h == predicate(k) => agree += 1,
            _ => failures.push(format!("{}: {}", label(k), describe(results.get(k)))),
        }
    }
    ClaimRecord {
        id: id.into(),
        statement: statement.into(),
        range,
        expected: expected.into(),
        computed: format!("{agree}/{} triples agree", triples.len()),
        triples_checked: triples.len(),
        passed: failures.is_empty(),
        failures,
    }
}

/// Evaluates every claim over the scan range. Triples are analysed in
/// parallel; the report is independent of scheduling.
pub fn verify_claims(bounds: ScanBounds, mode: IntegrationMode) -> ClaimsReport {
    let mut keys: BTreeSet<Key> = box_triples(&bounds).into_iter().collect();
    keys.extend(elv_triples(&bounds));
    keys.extend(LISTED_TRIPLES.iter().map(|&(n, d, k)| key_of(n, d, k)));
    keys.insert(key_of(5, 2, 3));
    let keys: Vec<Key> = keys.into_iter().collect();

    let outcomes: Vec<(Key, Outcome)> = keys
        .par_iter()
        .map(|&k| {
            let (kappa, d, n) = k;
            let outcome = TripleParams::new(n, d, kappa).and_then(|p| analyze(&p, mode));
            (k, outcome)
        })
        .collect();
    let results = Results { map: outcomes.into_iter().collect() };

    let mut claims = Vec::new();

    // listed triples
    {
        let triples: Vec<Key> = LISTED_TRIPLES.iter().map(|&(n, d, k)| key_of(n, d, k)).collect();
        let rec = equivalence_record(
            "listed-triples",
            "condition (B) holds for (6,3,2), (8,4,2), (11,5,2), (9,3,3)",
            "(6,3,2), (8,4,2), (11,5,2), (9,3,3)".into(),
            "holds = true for each",
            &triples,
            &results,
            |_| true,
        );
        let computed = triples
            .iter()
            .map(|&k| format!("{} {}", label(k), describe(results.get(k))))
            .collect::<Vec<_>>()
            .join("; ");
        claims.push(ClaimRecord { computed, ..rec });
    }

    // first d = 2 failure
    {
        let target = key_of(5, 2, 3);
        let mut failures = Vec::new();
        let exact = match results.get(target) {
            Ok(a) => a.params().s_excess == 0 && a.condition.m.as_ref().is_some_and(Zero::is_zero),
            Err(_) => false,
        };
        if !exact {
            failures.push(format!("(5,2,3): {}", describe(results.get(target))));
        }
        let first = keys
            .iter()
            .filter(|&&(kappa, d, n)| d == 2 && n <= bounds.n_max && kappa <= bounds.kappa_max)
            .filter(|&&k| matches!(results.get(k), Ok(a) if a.params().s_excess >= 0 && !a.condition.holds))
            .min_by_key(|&&(kappa, _, n)| (kappa, n))
            .copied();
        if first != Some(target) {
            failures.push(format!("first d=2 failure with s >= 0 is {}", first.map_or("none".into(), label)));
        }
        claims.push(ClaimRecord {
            id: "first-d2-failure".into(),
            statement: "the first d=2 triple with s >= 0 where (B) fails is kappa=3, n=5".into(),
            range: format!("d=2, 1<=kappa<={}, kappa+1<=n<={}", bounds.kappa_max, bounds.n_max),
            expected: "(5,2,3): s=0, m=0; no earlier failure in (kappa, n) order".into(),
            computed: format!(
                "(5,2,3): {}; first failure {}",
                describe(results.get(target)),
                first.map_or("none".into(), label)
            ),
            triples_checked: keys.iter().filter(|k| k.1 == 2).count(),
            passed: failures.is_empty(),
            failures,
        });
    }

    // d = 2: (B) iff n >= 2 kappa
    {
        let triples: Vec<Key> = box_triples(&bounds).into_iter().filter(|k| k.1 == 2).collect();
        claims.push(equivalence_record(
            "d2-equivalence",
            "for d=2, condition (B) is equivalent to n >= 2 kappa",
            format!("d=2, 1<=kappa<={}, kappa+1<=n<={}", bounds.kappa_max, bounds.n_max),
            "holds iff n >= 2 kappa",
            &triples,
            &results,
            |(kappa, _, n)| n >= 2 * kappa,
        ));
    }

    // kappa = 1: (B) iff s >= 0
    {
        let triples: Vec<Key> = box_triples(&bounds).into_iter().filter(|k| k.0 == 1).collect();
        claims.push(equivalence_record(
            "kappa1-equivalence",
            "for kappa=1, condition (B) is equivalent to s >= 0, i.e. n >= d",
            format!("kappa=1, 1<=d<={}, 2<=n<={}", bounds.d_max, bounds.n_max),
            "holds iff n >= d",
            &triples,
            &results,
            |(_, d, n)| n >= d,
        ));
    }

    // ELV bound
    {
        let triples = elv_triples(&bounds);
        claims.push(equivalence_record(
            "elv-sufficiency",
            "condition (B) holds if d >= 3 and n - kappa + 1 >= C(kappa-1+d, kappa)",
            format!("d>=3, 1<=kappa<={}, kappa+1<=n<={}, ELV bound satisfied", bounds.kappa_max, bounds.n_max),
            "m != 0 for each",
            &triples,
            &results,
            |_| true,
        ));
    }

    // intro bound
    {
        let triples: Vec<Key> = keys
            .iter()
            .copied()
            .filter(|&(kappa, d, n)| {
                u64::from(n) >= binomial(u64::from(kappa + d - 1), u64::from(kappa)) + u64::from(kappa) - 1
            })
            .collect();
        claims.push(equivalence_record(
            "intro-bound",
            "condition (B) holds if n >= C(kappa+d-1, kappa) + kappa - 1",
            "every scanned triple satisfying the bound".into(),
            "holds = true for each",
            &triples,
            &results,
            |_| true,
        ));
    }

    // audits: integrality, symmetry, m routes, degree audits
    {
        let failures: Vec<String> = results
            .map
            .iter()
            .filter_map(|(&k, o)| o.as_ref().err().map(|e| format!("{}: {e}", label(k))))
            .collect();
        claims.push(ClaimRecord {
            id: "audits".into(),
            statement: "d | m, integral osculating count, symmetric b, palindromic betas, integral sum of a_i, \
                        agreeing m routes and degree audits"
                .into(),
            range: "every scanned triple".into(),
            expected: "no assertion failures".into(),
            computed: format!("{} of {} triples clean", keys.len() - failures.len(), keys.len()),
            triples_checked: keys.len(),
            passed: failures.is_empty(),
            failures,
        });
    }

    let mut diagnostics = Diagnostics { triples_analyzed: keys.len(), ..Default::default() };
    for (&k, o) in &results.map {
        let a = match o {
            Ok(a) => a,
            Err(e) => {
                if e.is_internal() {
                    diagnostics.internal_errors.push(format!("{}: {e}", label(k)));
                }
                continue;
            }
        };
        diagnostics.integrals += a.stats.integrals;
        diagnostics.oracle_checks += a.stats.oracle_checks;
        let c = &a.condition;
        if k.1 > 2 && a.params().s_excess >= 0 && !c.holds {
            diagnostics.counterexamples_d_gt_2.push(label(k));
        }
        if c.holds && !c.osculating_count.as_ref().is_some_and(is_positive) {
            diagnostics.nonpositive_osculating_counts.push(label(k));
        }
    }

    ClaimsReport { bounds, mode, claims, diagnostics }
}

impl fmt::Display for ClaimsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bounds: kappa<={}, d<={}, n<={}; mode {}",
            self.bounds.kappa_max, self.bounds.d_max, self.bounds.n_max, self.mode
        )?;
        for c in &self.claims {
            writeln!(f, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.statement)?;
            writeln!(f, "    range: {}", c.range)?;
            writeln!(f, "    expected: {}", c.expected)?;
            writeln!(f, "    computed: {}", c.computed)?;
            for fail in &c.failures {
                writeln!(f, "    mismatch: {fail}")?;
            }
        }
        let d = &self.diagnostics;
        writeln!(f, "triples analysed: {}", d.triples_analyzed)?;
        writeln!(f, "integrals: {}, oracle checks: {}", d.integrals, d.oracle_checks)?;
        let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
        writeln!(f, "d>2 counterexamples to (B) iff s>=0: {}", list(&d.counterexamples_d_gt_2))?;
        write!(f, "non-positive osculating counts: {}", list(&d.nonpositive_osculating_counts))
    }
}
