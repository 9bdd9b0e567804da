//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hfmotive_core::grchow::{gr_integrate, GrClass, GrContext, IntegrationMode};
use hfmotive_core::motive::{
    analyze, b_matrix, betas, condition_b, m_value, plane_count, verify_claims, ScanBounds, TripleAnalysis,
    TripleParams,
};
use hfmotive_core::symcore::{partitions_in_box, SchurVector};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

const MODE: IntegrationMode = IntegrationMode::Both;

type Outcome = Result<TripleAnalysis, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    note: String,
    elapsed: Duration,
}

impl Criterion {
    fn run(id: u32, title: &'static str, body: impl FnOnce(&mut Vec<String>) -> String) -> Criterion {
        let start = Instant::now();
        let mut failures = Vec::new();
        let note = body(&mut failures);
        let c = Criterion { id, title, failures, note, elapsed: start.elapsed() };
        c.print();
        c
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn print(&self) {
        println!(
            "criterion {} [{}] {} ({}; {:.1?})",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.note,
            self.elapsed
        );
        for f in self.failures.iter().take(20) {
            println!("    {f}");
        }
    }
}

fn analyze_all(triples: &[(u32, u32, u32)]) -> BTreeMap<(u32, u32, u32), Outcome> {
    triples
        .par_iter()
        .map(|&(n, d, k)| {
            let out = TripleParams::new(n, d, k).and_then(|p| analyze(&p, MODE)).map_err(|e| e.to_string());
            ((n, d, k), out)
        })
        .collect()
}

fn check_equivalence(
    results: &BTreeMap<(u32, u32, u32), Outcome>,
    failures: &mut Vec<String>,
    expected: impl Fn(u32, u32, u32) -> bool,
) -> usize {
    for (&(n, d, k), out) in results {
        match out {
            Ok(a) if a.condition.holds == expected(n, d, k) => {}
            Ok(a) => failures.push(format!("({n},{d},{k}): holds={} m={:?}", a.condition.holds, a.condition.m)),
            Err(e) => failures.push(format!("({n},{d},{k}): {e}")),
        }
    }
    results.len()
}

fn random_vector(rng: &mut StdRng, w: u32, ctx: GrContext) -> SchurVector {
    let rect = ctx.rect();
    let mut x = SchurVector::zero();
    for p in partitions_in_box(w, rect.rows, rect.cols) {
        x.add_term(p, BigInt::from(rng.gen_range(-5i64..=5)));
    }
    x
}

/// Triples scanned by criteria 1-5.
struct Scan {
    listed: Vec<(u32, u32, u32)>,
    d2: Vec<(u32, u32, u32)>,
    kappa1: Vec<(u32, u32, u32)>,
    elv: Vec<(u32, u32, u32)>,
}

fn scan() -> Scan {
    let listed = vec![(6, 3, 2), (8, 4, 2), (11, 5, 2), (9, 3, 3)];
    let d2 = (1..=4u32).flat_map(|k| (k + 1..=12).map(move |n| (n, 2, k))).collect();
    let kappa1 = (1..=6u32).flat_map(|d| (2..=12).map(move |n| (n, d, 1))).collect();
    let mut elv = Vec::new();
    for k in 1..=3u32 {
        for n in k + 1..=12u32 {
            let mut d = 3;
            while binomial(u64::from(k - 1 + d), u64::from(k)) <= u64::from(n - k + 1) {
                elv.push((n, d, k));
                d += 1;
            }
        }
    }
    Scan { listed, d2, kappa1, elv }
}

fn main() {
    let scan = scan();
    let mut criteria = Vec::new();

    let mut listed_results = BTreeMap::new();
    criteria.push(Criterion::run(1, "listed triples satisfy condition (B)", |f| {
        listed_results = analyze_all(&scan.listed);
        check_equivalence(&listed_results, f, |_, _, _| true);
        let ms: Vec<String> = listed_results
            .iter()
            .map(|(k, o)| format!("{k:?} m={}", o.as_ref().ok().and_then(|a| a.condition.m.clone()).unwrap_or_default()))
            .collect();
        ms.join(", ")
    }));
    let elapsed = criteria[0].elapsed;
    if elapsed >= Duration::from_secs(120) {
        criteria[0].failures.push(format!("runtime {elapsed:.1?} exceeds 120 s"));
        criteria[0].print();
    }

    criteria.push(Criterion::run(2, "(5,2,3) has s = 0 and m = 0", |f| {
        let p = TripleParams::new(5, 2, 3).unwrap();
        if p.s_excess != 0 {
            f.push(format!("s = {}", p.s_excess));
        }
        match m_value(&p, MODE) {
            Ok(m) if m.is_zero() => {}
            other => f.push(format!("m = {other:?}")),
        }
        match condition_b(&p, MODE) {
            Ok(r) if !r.holds => {}
            other => f.push(format!("condition_b = {other:?}")),
        }
        "s=0, m=0".into()
    }));

    let mut d2_results = BTreeMap::new();
    let mut c3 = Criterion::run(3, "d=2: (B) iff n >= 2 kappa, kappa <= 4, n <= 12", |f| {
        d2_results = analyze_all(&scan.d2);
        let count = check_equivalence(&d2_results, f, |n, _, k| n >= 2 * k);
        format!("{count} triples")
    });
    if c3.elapsed >= Duration::from_secs(600) {
        c3.failures.push(format!("runtime {:.1?} exceeds 10 min", c3.elapsed));
        c3.print();
    }
    criteria.push(c3);

    let mut k1_results = BTreeMap::new();
    criteria.push(Criterion::run(4, "kappa=1: (B) iff n >= d, d <= 6, n <= 12", |f| {
        k1_results = analyze_all(&scan.kappa1);
        let count = check_equivalence(&k1_results, f, |n, d, _| n >= d);
        format!("{count} triples")
    }));

    let mut elv_results = BTreeMap::new();
    criteria.push(Criterion::run(5, "ELV bound implies m != 0, kappa <= 3, n <= 12", |f| {
        elv_results = analyze_all(&scan.elv);
        for (k, o) in &elv_results {
            match o {
                Ok(a) if a.condition.m.as_ref().is_some_and(|m| !m.is_zero()) => {}
                Ok(a) => f.push(format!("{k:?}: m = {:?}", a.condition.m)),
                Err(e) => f.push(format!("{k:?}: {e}")),
            }
        }
        format!("{} triples", elv_results.len())
    }));

    let mut all = BTreeMap::new();
    for r in [&listed_results, &d2_results, &k1_results, &elv_results] {
        all.extend(r.iter().map(|(k, v)| (*k, v.clone())));
    }

    criteria.push(Criterion::run(6, "schur and oracle integration agree", |f| {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut cases = 0;
        for (n, kappa) in [(3, 1), (4, 1), (6, 2)] {
            let ctx = GrContext::new(n, kappa).unwrap();
            for _ in 0..40 {
                let w = rng.gen_range(0..=ctx.dim());
                let x = GrClass::homogeneous(ctx, random_vector(&mut rng, w, ctx), i64::from(w)).unwrap();
                let y = GrClass::homogeneous(ctx, random_vector(&mut rng, ctx.dim() - w, ctx), i64::from(ctx.dim() - w))
                    .unwrap();
                let prod = x.mul(&y).unwrap();
                let schur = gr_integrate(&prod, IntegrationMode::Schur).unwrap();
                let oracle = gr_integrate(&prod, IntegrationMode::Oracle).unwrap();
                if schur != oracle {
                    f.push(format!("Gr({},{}) product: schur {schur}, oracle {oracle}", kappa + 1, n + 1));
                }
                cases += 1;
            }
        }
        // every criteria 1-5 integrand went through both routes
        let mut checks = 0;
        for (k, o) in &all {
            match o {
                Ok(a) => checks += a.stats.oracle_checks,
                Err(e) => f.push(format!("{k:?}: {e}")),
            }
        }
        format!("{cases} random products, {checks} scan integrands")
    }));

    criteria.push(Criterion::run(7, "plane counts 27, 2875, 1", |f| {
        for ((n, d, k), expected) in [((3, 3, 1), 27), ((4, 5, 1), 2875), ((2, 1, 1), 1)] {
            let p = TripleParams::new(n, d, k).unwrap();
            match plane_count(&p, MODE) {
                Ok(c) if c == BigInt::from(expected) => {}
                other => f.push(format!("({n},{d},{k}): {other:?}, expected {expected}")),
            }
        }
        "3 counts".into()
    }));

    criteria.push(Criterion::run(8, "worked example (3,3,1)", |f| {
        let p = TripleParams::new(3, 3, 1).unwrap();
        let int = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let expected_b = vec![int(&[1, 6, 11]), int(&[6, 32, 42]), int(&[11, 42, 27])];
        for mode in [IntegrationMode::Schur, IntegrationMode::Oracle] {
            match b_matrix(&p, None, mode) {
                Ok(b) if b == expected_b => {}
                other => f.push(format!("b ({mode}) = {other:?}")),
            }
        }
        match condition_b(&p, MODE) {
            Ok(r) if r.m == Some(BigInt::from(6)) && r.osculating_count == Some(BigInt::from(2)) => {}
            other => f.push(format!("condition_b = {other:?}")),
        }
        let half = BigRational::new(BigInt::from(5), BigInt::from(2));
        match betas(&p, MODE) {
            Ok(b) if b == vec![BigRational::one(), half.clone(), BigRational::one()] => {}
            other => f.push(format!("betas = {other:?}")),
        }
        "b, m=6, count=2, betas (1,5/2,1)".into()
    }));

    criteria.push(Criterion::run(9, "property suite on every scanned triple", |f| {
        let claims = verify_claims(ScanBounds::default(), MODE);
        for c in claims.claims.iter().filter(|c| !c.passed) {
            f.push(format!("claim {} failed: {:?}", c.id, c.failures));
        }
        let mut checked = 0;
        for (&(n, d, kappa), o) in &all {
            let a = match o {
                Ok(a) => a,
                Err(e) => {
                    f.push(format!("({n},{d},{kappa}): {e}"));
                    continue;
                }
            };
            checked += 1;
            let c = &a.condition;
            let Some(m) = &c.m else { continue };
            let dd = BigInt::from(d);
            if !(m % &dd).is_zero() {
                f.push(format!("({n},{d},{kappa}): d does not divide m = {m}"));
            }
            let sign = if kappa % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            if c.osculating_count.as_ref() != Some(&(sign * m / &dd)) {
                f.push(format!("({n},{d},{kappa}): osculating count {:?}", c.osculating_count));
            }
            let b = a.b_matrix.as_ref().unwrap();
            if (0..b.len()).any(|i| (0..b.len()).any(|j| b[i][j] != b[j][i])) {
                f.push(format!("({n},{d},{kappa}): b not symmetric"));
            }
            if !a.sum_ai.as_ref().unwrap().is_integral() {
                f.push(format!("({n},{d},{kappa}): sum of a_i not integral"));
            }
            if let Some(bs) = &a.betas {
                if bs.iter().ne(bs.iter().rev()) {
                    f.push(format!("({n},{d},{kappa}): betas not palindromic"));
                }
            }
        }
        format!(
            "{checked} triples here, {} in the claim scan, {} claims",
            claims.diagnostics.triples_analyzed,
            claims.claims.len()
        )
    }));

    let failed = criteria.iter().filter(|c| !c.passed()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
