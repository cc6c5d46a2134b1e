//! Property suites comparing the combinatorial layer with the matrix oracle.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stabcat_core::interval::{all_intervals, hom_nonzero_interval, middle_terms_interval};
use stabcat_core::oracle::{build_indec, hom_dim, indecs_up_to, Oracle, PrimeField, QuiverRep, Shape};
use stabcat_core::sheaves::kronecker::{hom_nonzero_kron, KronIndec};
use stabcat_core::tube::{hom_nonzero, middle_terms, TubeCategory, TubeIndec};
use stabcat_core::{Ambient, Indec, Members, Point};

use crate::error::CliError;

pub const SUITES: [&str; 9] = ["hom", "middle-terms", "closure", "closure-extended", "field-independence", "ar-duality", "round-trip", "interval", "kronecker-hom"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub jobs: usize,
    pub budget: u128,
}

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Result<SuiteReport, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build().map_err(|e| CliError::Io(e.to_string()))?;
    let (checked, mismatches) = pool.install(|| match name {
        "hom" => hom_suite(),
        "middle-terms" => middle_terms_suite(cfg.budget),
        "closure" => closure_suite(cfg.budget),
        "closure-extended" => closure_extended_suite(cfg.budget),
        "field-independence" => field_suite(cfg.budget),
        "ar-duality" => ar_suite(cfg.budget),
        "round-trip" => round_trip_suite(cfg.budget),
        "interval" => interval_suite(cfg.budget),
        "kronecker-hom" => kronecker_suite(),
        other => Err(CliError::Usage(format!("unknown suite {other}; expected one of {}", SUITES.join(", ")))),
    })?;
    Ok(SuiteReport { suite: name.to_string(), checked, mismatches })
}

type Outcome = Result<(usize, Vec<String>), CliError>;

fn tube(n: u32, j: u32, t: u32) -> Indec {
    Indec::Tube(TubeIndec { n, j, t })
}

fn tubes(n: u32, max_len: u32) -> Vec<TubeIndec> {
    (1..=max_len).flat_map(|t| (0..n).map(move |j| TubeIndec { n, j, t })).collect()
}

fn len_of(x: &Indec) -> u32 {
    match x {
        Indec::Tube(t) => t.t,
        Indec::Interval(m) => m.len(),
        _ => 0,
    }
}

fn show(e: &[Vec<Indec>]) -> String {
    let parts: Vec<String> = e.iter().map(|m| format!("{{{}}}", m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", parts.join(" "))
}

fn tube_terms(a: &TubeIndec, b: &TubeIndec) -> Vec<Vec<Indec>> {
    let mut v: Vec<Vec<Indec>> = middle_terms(a, b).unwrap_or_default().into_iter().map(|e| {
        let mut e: Vec<Indec> = e.into_iter().map(Indec::Tube).collect();
        e.sort();
        e
    }).collect();
    v.sort();
    v
}

fn collect(results: Vec<Result<Option<String>, CliError>>) -> Outcome {
    let checked = results.len();
    let mut bad = Vec::new();
    for r in results {
        if let Some(m) = r? {
            bad.push(m);
        }
    }
    Ok((checked, bad))
}

/// `hom_nonzero` against `hom_dim > 0` for ranks up to 4 and lengths up to `2n`.
fn hom_suite() -> Outcome {
    let f = PrimeField::GF2;
    let mut pairs = Vec::new();
    for n in 1..=4 {
        let xs = tubes(n, 2 * n);
        for a in &xs {
            for b in &xs {
                pairs.push((*a, *b));
            }
        }
    }
    let results = pairs.par_iter().map(|(a, b)| {
        let d = hom_dim(&build_indec(f, &Indec::Tube(*a))?, &build_indec(f, &Indec::Tube(*b))?)?;
        let claimed = hom_nonzero(a, b).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok((claimed != (d > 0)).then(|| format!("Hom({a}, {b}): combinatorial {claimed}, dimension {d}")))
    }).collect();
    collect(results)
}

fn middle_terms_in(n: u32, f: PrimeField, total: u32, budget: u128) -> Outcome {
    let oracle = Oracle::new(Shape::Cyclic(n), f, total as usize, budget)?;
    let xs = tubes(n, total - 1);
    let pairs: Vec<(TubeIndec, TubeIndec)> = xs.iter().flat_map(|a| xs.iter().map(move |b| (*a, *b))).filter(|(a, b)| a.t + b.t <= total).collect();
    let results = pairs.par_iter().map(|(a, b)| {
        let brute = oracle.middle_terms_bruteforce(&Indec::Tube(*a), &Indec::Tube(*b))?;
        let comb = tube_terms(a, b);
        Ok((brute != comb).then(|| format!("GF({}) {a} -> E -> {b}: combinatorial {}, brute force {}", f.p(), show(&comb), show(&brute))))
    }).collect();
    collect(results)
}

/// Middle terms for ranks up to 3 and total length up to 6, over GF(2) and GF(3).
fn middle_terms_suite(budget: u128) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in [PrimeField::GF2, PrimeField::GF3] {
        for n in 1..=3 {
            let (c, b) = middle_terms_in(n, f, 6, budget)?;
            checked += c;
            bad.extend(b);
        }
    }
    Ok((checked, bad))
}

/// Every generating set of at most two carrier objects.
pub fn small_generator_sets(amb: &Ambient) -> Vec<Members> {
    let n = amb.len();
    let mut v = vec![Members::EMPTY];
    for i in 0..n {
        v.push(Members::single(i));
        for j in i + 1..n {
            v.push(Members::single(i) | Members::single(j));
        }
    }
    v
}

/// Closure of one generating set by the engine and by the fixpoint search
/// with length bound `bound`, compared on all objects of length at most `view`.
pub fn compare_closure(amb: &Ambient, oracle: &Oracle, gens: Members, bound: usize, view: usize) -> Result<Option<String>, CliError> {
    let engine = amb.closure(gens);
    let g = amb.indecs(gens);
    let brute = oracle.closure_fixpoint_bruteforce(&g, bound)?;
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for x in indecs_up_to(oracle.shape, view)? {
        let by_engine = amb.rep_index(&x).is_some_and(|i| engine.contains(i));
        match (by_engine, brute.contains(&x)) {
            (true, false) => extra.push(x.to_string()),
            (false, true) => missing.push(x.to_string()),
            _ => {}
        }
    }
    if missing.is_empty() && extra.is_empty() {
        return Ok(None);
    }
    let gs: Vec<String> = g.iter().map(|x| x.to_string()).collect();
    Ok(Some(format!(
        "GF({}) closure of {{{}}}: engine only [{}], fixpoint only [{}]",
        oracle.field.p(),
        gs.join(", "),
        extra.join(", "),
        missing.join(", ")
    )))
}

/// Closures of all generating sets of size at most 2 on the tubes of rank 2
/// and 3, bound 6, over GF(2) and GF(3).
fn closure_suite(budget: u128) -> Outcome {
    closure_with(budget, &[PrimeField::GF2, PrimeField::GF3], |_| 6)
}

/// Same generator sets with the fixpoint allowed middle terms of length `4n`,
/// compared on lengths up to 6.
fn closure_extended_suite(budget: u128) -> Outcome {
    closure_with(budget, &[PrimeField::GF2], |n| 4 * n as usize)
}

fn closure_with(budget: u128, fields: &[PrimeField], bound: fn(u32) -> usize) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [2, 3] {
        let amb = Ambient::new(Box::new(TubeCategory::new(n))).map_err(|e| CliError::Usage(e.to_string()))?;
        for f in fields {
            let b = bound(n);
            let oracle = Oracle::new(Shape::Cyclic(n), *f, b, budget)?;
            let sets = small_generator_sets(&amb);
            let results = sets.par_iter().map(|g| compare_closure(&amb, &oracle, *g, b, 6)).collect();
            let (c, b) = collect(results)?;
            checked += c;
            bad.extend(b);
        }
    }
    Ok((checked, bad))
}

/// Hom dimensions and middle terms agree over GF(2), GF(3) and GF(5) for
/// ranks up to 3 and lengths up to 4.
fn field_suite(budget: u128) -> Outcome {
    let fields = [PrimeField::GF2, PrimeField::GF3, PrimeField::GF5];
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        let oracles = fields.iter().map(|f| Oracle::new(Shape::Cyclic(n), *f, 8, budget)).collect::<Result<Vec<_>, _>>()?;
        let xs = tubes(n, 4);
        let pairs: Vec<(TubeIndec, TubeIndec)> = xs.iter().flat_map(|a| xs.iter().map(move |b| (*a, *b))).collect();
        let results = pairs.par_iter().map(|(a, b)| {
            let (a, b) = (Indec::Tube(*a), Indec::Tube(*b));
            let mut homs = Vec::new();
            let mut terms = Vec::new();
            for o in &oracles {
                homs.push(o.hom_dim(&a, &b)?);
                terms.push(o.middle_terms_bruteforce(&a, &b)?);
            }
            let same = homs.windows(2).all(|w| w[0] == w[1]) && terms.windows(2).all(|w| w[0] == w[1]);
            Ok((!same).then(|| format!("{a}, {b}: hom dims {homs:?}, middle terms {}", terms.iter().map(|t| show(t)).collect::<Vec<_>>().join(" / "))))
        }).collect();
        let (c, b) = collect(results)?;
        checked += c;
        bad.extend(b);
    }
    Ok((checked, bad))
}

/// A non-split extension of `b` by `a` exists iff `Hom(a, τb) ≠ 0`.
fn ar_suite(budget: u128) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        let oracle = Oracle::new(Shape::Cyclic(n), PrimeField::GF2, 8, budget)?;
        let xs = tubes(n, 4);
        let pairs: Vec<(TubeIndec, TubeIndec)> = xs.iter().flat_map(|a| xs.iter().map(move |b| (*a, *b))).collect();
        let results = pairs.par_iter().map(|(a, b)| {
            let ext = !oracle.middle_terms_bruteforce(&Indec::Tube(*a), &Indec::Tube(*b))?.is_empty();
            let h = oracle.hom_dim(&Indec::Tube(*a), &Indec::Tube(b.tau(1)))?;
            Ok((ext != (h > 0)).then(|| format!("{a}, {b}: non-split extension {ext}, Hom(A, τB) of dimension {h}")))
        }).collect();
        let (c, b) = collect(results)?;
        checked += c;
        bad.extend(b);
    }
    Ok((checked, bad))
}

/// Decomposition recovers 500 random direct sums per shape.
fn round_trip_suite(budget: u128) -> Outcome {
    let shapes = [Shape::Cyclic(1), Shape::Cyclic(2), Shape::Cyclic(3), Shape::Linear(3), Shape::Linear(4)];
    let max_len = 8;
    let mut checked = 0;
    let mut bad = Vec::new();
    for (k, shape) in shapes.iter().enumerate() {
        let oracle = Oracle::new(*shape, PrimeField::GF2, max_len, budget)?;
        let pool = indecs_up_to(*shape, max_len)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + k as u64);
        let mut samples = Vec::new();
        while samples.len() < 500 {
            let mut left = rng.gen_range(1..=max_len as u32);
            let mut parts = Vec::new();
            while left > 0 {
                let fits: Vec<&Indec> = pool.iter().filter(|x| len_of(x) <= left).collect();
                let x = *fits[rng.gen_range(0..fits.len())];
                left -= len_of(&x);
                parts.push(x);
            }
            parts.sort();
            samples.push(parts);
        }
        let results = samples.par_iter().map(|parts| {
            let r: QuiverRep = oracle.sum(parts)?;
            let got = oracle.decompose(&r)?;
            Ok((got != *parts).then(|| format!("{}: decomposed as {}", show(std::slice::from_ref(parts)), show(&[got]))))
        }).collect();
        let (c, b) = collect(results)?;
        checked += c;
        bad.extend(b);
    }
    Ok((checked, bad))
}

/// Hom and middle terms of `A_n` intervals, `n <= 4`.
fn interval_suite(budget: u128) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=4 {
        let oracle = Oracle::new(Shape::Linear(n), PrimeField::GF2, 2 * n as usize, budget)?;
        let xs = all_intervals(n);
        let pairs: Vec<_> = xs.iter().flat_map(|a| xs.iter().map(move |b| (*a, *b))).collect();
        let results = pairs.par_iter().map(|(a, b)| {
            let (ia, ib) = (Indec::Interval(*a), Indec::Interval(*b));
            let claimed = hom_nonzero_interval(a, b).map_err(|e| CliError::Usage(e.to_string()))?;
            let d = oracle.hom_dim(&ia, &ib)?;
            let mut comb: Vec<Vec<Indec>> = middle_terms_interval(a, b).map_err(|e| CliError::Usage(e.to_string()))?.into_iter().map(|e| e.into_iter().map(Indec::Interval).collect()).collect();
            comb.sort();
            let brute = oracle.middle_terms_bruteforce(&ia, &ib)?;
            let mut msg = Vec::new();
            if claimed != (d > 0) {
                msg.push(format!("Hom({a}, {b}): combinatorial {claimed}, dimension {d}"));
            }
            if comb != brute {
                msg.push(format!("{a} -> E -> {b}: combinatorial {}, brute force {}", show(&comb), show(&brute)));
            }
            Ok((!msg.is_empty()).then(|| msg.join("; ")))
        }).collect();
        let (c, b) = collect(results)?;
        checked += c;
        bad.extend(b);
    }
    Ok((checked, bad))
}

/// Kronecker Hom vanishing over GF(3) and GF(5) with points 0, 1, λ realised
/// as 0, 1, 2.
fn kronecker_suite() -> Outcome {
    let mut xs = Vec::new();
    for k in 1..=4 {
        xs.push(KronIndec::Pre(k));
        xs.push(KronIndec::Inj(k));
    }
    for x in 0..3 {
        for d in 1..=3 {
            xs.push(KronIndec::Reg { x: Point(x), d });
        }
    }
    let mut pairs = Vec::new();
    for f in [PrimeField::GF3, PrimeField::GF5] {
        for a in &xs {
            for b in &xs {
                pairs.push((f, *a, *b));
            }
        }
    }
    let results = pairs.par_iter().map(|(f, a, b)| {
        let d = hom_dim(&build_indec(*f, &Indec::Kron(*a))?, &build_indec(*f, &Indec::Kron(*b))?)?;
        let claimed = hom_nonzero_kron(a, b);
        Ok((claimed != (d > 0)).then(|| format!("GF({}) Hom({a}, {b}): combinatorial {claimed}, dimension {d}", f.p())))
    }).collect();
    collect(results)
}

/// The examples from the oracle documentation, as a quick smoke check.
pub fn smoke() -> Result<bool, CliError> {
    let o = Oracle::new(Shape::Cyclic(3), PrimeField::GF2, 6, stabcat_core::oracle::DEFAULT_BUDGET)?;
    let got = o.closure_fixpoint_bruteforce(&[tube(3, 0, 1), tube(3, 1, 1)], 6)?;
    let want: BTreeSet<Indec> = [tube(3, 0, 1), tube(3, 1, 1), tube(3, 1, 2)].into_iter().collect();
    Ok(got == want)
}
