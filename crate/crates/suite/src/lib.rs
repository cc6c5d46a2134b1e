//! The twelve acceptance criteria. Each check returns a one-line summary on
//! success and the first discrepancy on failure.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabcat::suites::{run_suite, SuiteConfig, SuiteReport};
use stabcat::tables::{table_rows, verify_table, TableOutcome};
use stabcat::{parse_ambient, Context};
use stabcat_core::indec::Point;
use stabcat_core::oracle::DEFAULT_BUDGET;
use stabcat_core::sheaves::kronecker::{finest_kron_directing, finest_kron_simples, torsion_family_kron, KronFamily, KronIndec};
use stabcat_core::sheaves::p1::{finest_p1, slope_data_p1, torsion_family_p1, P1Family, P1Indec};
use stabcat_core::sheaves::x2::{finest_x2, slope_data_x2, torsion_family_x2, X2Family, X2Indec, X2Row, XTilde};
use stabcat_core::stability::{distinct_on_scope, enumerate_finest, enumerate_valid, equivalent, is_coarser, is_finest, split_phase, validate, FinestOptions, HnEngine};
use stabcat_core::torsion::validate_torsion;
use stabcat_core::{Indec, StabilityData};

pub type Check = Result<String, String>;

fn ctx(spec: &str) -> Context {
    parse_ambient(spec).expect("ambient spec parses")
}

fn table(name: &str) -> Result<TableOutcome, String> {
    let o = verify_table(name).map_err(|e| e.to_string())?;
    if o.passed() {
        Ok(o)
    } else {
        Err(format!("{name} differs from its golden file:\n{}", o.diff()))
    }
}

fn suite(name: &str) -> Result<SuiteReport, String> {
    run_suite(name, SuiteConfig { jobs: 4, budget: DEFAULT_BUDGET }).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Check {
    let t = Instant::now();
    let o = table("a2-torsion")?;
    let secs = t.elapsed().as_secs_f64();
    ensure(o.rows == 3, || format!("{} rows", o.rows))?;
    ensure(secs < 1.0, || format!("took {secs:.2} s"))?;
    Ok(format!("3 non-trivial pairs match the golden table in {secs:.3} s"))
}

fn c2() -> Check {
    let o = table("a3-torsion")?;
    ensure(o.rows == 12, || format!("{} rows", o.rows))?;
    Ok("12 non-trivial pairs match the golden table".into())
}

fn c3() -> Check {
    let o = table("a3-finest")?;
    let a = ctx("an:3");
    let classes = enumerate_finest(&a.amb, FinestOptions::default()).map_err(|e| e.to_string())?;
    let mut hist = BTreeMap::new();
    for c in &classes {
        *hist.entry(c.data.len()).or_insert(0) += 1;
    }
    let want: BTreeMap<usize, usize> = [(3, 1), (4, 4), (5, 2), (6, 2)].into_iter().collect();
    ensure(hist == want && o.rows == 9, || format!("{} classes, histogram {hist:?}", classes.len()))?;
    Ok("9 classes, histogram {3:1, 4:4, 5:2, 6:2}, rows match the golden table".into())
}

fn c4() -> Check {
    table("t3-finest")?;
    let a = ctx("tube:3");
    let orbits = enumerate_finest(&a.amb, FinestOptions { upto_tau: true, tube_restricted: false }).map_err(|e| e.to_string())?;
    let all = enumerate_finest(&a.amb, FinestOptions::default()).map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = orbits.iter().map(|c| c.orbit).collect();
    ensure(orbits.len() == 4 && all.len() == 12 && sizes.iter().all(|s| *s == 3), || format!("{} orbits {sizes:?}, {} classes", orbits.len(), all.len()))?;
    Ok(format!("4 classes up to translation, 12 without, orbit sizes {sizes:?}"))
}

fn c5() -> Check {
    let o = table("t3-torsion")?;
    let rows = table_rows(stabcat::tables::golden("t3-torsion").unwrap_or_default());
    let rays = rows.iter().filter(|r| r[0] == "ray").count();
    let corays = rows.iter().filter(|r| r[0] == "coray").count();
    ensure(rays == 3 && corays == 3, || format!("{rays} ray rows, {corays} coray rows"))?;
    Ok(format!("3 ray + 3 coray classes match; {}", o.notes.join("; ")))
}

fn c6() -> Check {
    let t = Instant::now();
    let r = suite("hom")?;
    let secs = t.elapsed().as_secs_f64();
    ensure(r.passed(), || format!("{} mismatches, first: {}", r.mismatches.len(), r.mismatches[0]))?;
    ensure(secs < 300.0, || format!("took {secs:.0} s"))?;
    Ok(format!("{} pairs, 0 mismatches, {secs:.1} s with 4 jobs", r.checked))
}

fn c7() -> Check {
    let mt = suite("middle-terms")?;
    let cl = suite("closure")?;
    let extended = suite("closure-extended");
    let ext_line = match &extended {
        Ok(r) => format!("with middle terms up to length 4n the fixpoint agrees on {} sets with {} mismatches", r.checked, r.mismatches.len()),
        Err(e) => format!("extended comparison failed to run: {e}"),
    };
    let mt_line = format!("middle terms: {} pairs, {} mismatches", mt.checked, mt.mismatches.len());
    let cl_line = format!("closure at bound 6: {} comparisons, {} mismatches", cl.checked, cl.mismatches.len());
    if mt.passed() && cl.passed() {
        Ok(format!("{mt_line}; {cl_line}"))
    } else {
        let first = cl.mismatches.first().or(mt.mismatches.first()).cloned().unwrap_or_default();
        Err(format!("{mt_line}; {cl_line}; first: {first}; {ext_line}"))
    }
}

/// Valid data enumerated on the small ambients.
fn valid_data(spec: &str) -> Result<(Context, Vec<StabilityData>), String> {
    let a = ctx(spec);
    let v = enumerate_valid(&a.amb).map_err(|e| e.to_string())?;
    Ok((a, v))
}

fn c8() -> Check {
    let mut summary = Vec::new();
    for spec in ["tube:2", "tube:3", "an:2", "an:3"] {
        let (a, all) = valid_data(spec)?;
        let mut objects = 0;
        for d in &all {
            let eng = HnEngine::new(&a.amb, d);
            for x in a.amb.carrier() {
                let n = eng.count(x);
                ensure(n == 1, || format!("{spec}: {x} has {n} filtrations under {:?}", d.members_sequence()))?;
                objects += 1;
            }
        }
        summary.push(format!("{spec} {} data/{objects} objects", all.len()));
    }
    Ok(format!("every carrier object has one filtration ({})", summary.join(", ")))
}

fn c9() -> Check {
    let mut summary = Vec::new();
    for spec in ["tube:2", "an:2"] {
        let (a, all) = valid_data(spec)?;
        let amb = &a.amb;
        let mut splits = 0;
        for d in &all {
            let pairwise = d.pieces().iter().all(|(_, m)| m.iter().all(|i| m.iter().all(|j| i == j || amb.hom(i, j))));
            let fin = is_finest(amb, d).finest;
            ensure(fin == pairwise, || format!("{spec}: is_finest {fin} but pairwise Hom {pairwise} for {:?}", d.members_sequence()))?;
            for (phi, m) in d.pieces() {
                for i in m.iter() {
                    if m.iter().all(|j| amb.hom(i, j)) {
                        continue;
                    }
                    let x = amb.indec(i);
                    let sp = split_phase(amb, d, phi, &x).map_err(|e| e.to_string())?;
                    let finer = is_coarser(amb, d, &sp).is_some() && !equivalent(d, &sp);
                    ensure(validate(amb, &sp).valid && finer, || format!("{spec}: splitting {phi} at {x} gives an invalid or not finer datum"))?;
                    splits += 1;
                }
            }
        }
        summary.push(format!("{spec} {} data/{splits} splits", all.len()));
    }
    Ok(summary.join(", "))
}

fn kron(x: KronIndec) -> Indec {
    Indec::Kron(x)
}

fn c10() -> Check {
    let a = ctx("kronecker:window=6,6:points=3");
    let stabcat::Model::Kron(m) = &a.model else { return Err("not a Kronecker ambient".into()) };
    let amb = &a.amb;
    let directing = finest_kron_directing(amb, m, &m.sample()).map_err(|e| e.to_string())?;
    let simples = finest_kron_simples(amb).map_err(|e| e.to_string())?;
    for (name, d) in [("directing", &directing), ("simples", &simples)] {
        ensure(validate(amb, d).valid && is_finest(amb, d).finest, || format!("{name} class is not valid finest"))?;
    }
    let eng = HnEngine::new(amb, &simples);
    let sampled = [KronIndec::Pre(2), KronIndec::Pre(4), KronIndec::Inj(3), KronIndec::Reg { x: Point(0), d: 1 }, KronIndec::Reg { x: Point(2), d: 3 }];
    for x in sampled {
        let (m1, n2) = x.dim();
        let f = eng.filtration(&kron(x)).map_err(|e| e.to_string())?;
        let got: Vec<Vec<Indec>> = f.steps.iter().map(|s| s.factors.clone()).collect();
        let want = vec![vec![kron(KronIndec::Pre(1)); n2 as usize], vec![kron(KronIndec::Inj(1)); m1 as usize]];
        ensure(got == want, || format!("{x}: filtration {got:?}"))?;
    }
    for fam in [KronFamily::RegularAt(vec![Point(1)]), KronFamily::InjectivesUpTo(2), KronFamily::AbovePre(2), KronFamily::Simples] {
        let tp = torsion_family_kron(amb, m, &fam).map_err(|e| e.to_string())?;
        ensure(validate_torsion(amb, &tp).valid, || format!("{fam:?} is not a torsion pair in the window"))?;
    }
    table("kron-torsion")?;
    Ok("both classes valid finest; 0 -> S_2^n -> X -> S_1^m -> 0 for 5 objects; 4 rows valid, all instances match; WINDOW-VERIFIED".into())
}

fn c11() -> Check {
    let a = ctx("p1:window=-5..5:points=3");
    let stabcat::Model::P1(m) = &a.model else { return Err("not a P1 ambient".into()) };
    let amb = &a.amb;
    let slope = slope_data_p1(amb, m).map_err(|e| e.to_string())?;
    ensure(validate(amb, &slope).valid, || "slope data invalid".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e1);
    for k in 0..10 {
        let mut order = m.sample();
        order.shuffle(&mut rng);
        let d = finest_p1(amb, m, &order).map_err(|e| e.to_string())?;
        ensure(validate(amb, &d).valid && is_finest(amb, &d).finest, || format!("order {k} {order:?} is not valid finest"))?;
        // the phase position of every stable object
        let pos = |x: Indec| d.pieces().iter().position(|(_, p)| amb.rep_index(&x).is_some_and(|i| p.contains(i)));
        let lines: Vec<Option<usize>> = (m.lo..=m.hi).map(|n| pos(Indec::P1(P1Indec::Line(n)))).collect();
        let points: Vec<Option<usize>> = m.sample().into_iter().map(|x| pos(Indec::P1(P1Indec::Torsion { x, t: 1 }))).collect();
        ensure(lines.iter().chain(&points).all(Option::is_some), || format!("order {k}: a stable object has no phase"))?;
        ensure(lines.windows(2).all(|w| w[0] < w[1]), || format!("order {k}: line phases {lines:?}"))?;
        let top_line = lines.iter().max().copied().flatten();
        ensure(points.iter().all(|p| *p > top_line), || format!("order {k}: a point phase lies below a line"))?;
        let distinct: std::collections::BTreeSet<_> = points.iter().collect();
        ensure(distinct.len() == points.len(), || format!("order {k}: two points share a phase"))?;
        ensure(is_coarser(amb, &slope, &d).is_some(), || format!("order {k}: not finer than slope data"))?;
    }
    for fam in [P1Family::Points(vec![Point(0), Point(2)]), P1Family::Above(1)] {
        let tp = torsion_family_p1(amb, m, &fam).map_err(|e| e.to_string())?;
        ensure(validate_torsion(amb, &tp).valid, || format!("{fam:?} is not a torsion pair in the window"))?;
    }
    table("p1-torsion")?;
    let small = ctx("p1:window=-2..2:points=3");
    let classes = enumerate_finest(&small.amb, FinestOptions::default()).map_err(|e| e.to_string())?;
    let on_scope = distinct_on_scope(&small.amb, &classes);
    ensure(on_scope.len() == 6, || format!("{} distinct finest data on the scope of -2..2", on_scope.len()))?;
    Ok("10 point orders valid finest with ordered phases and finer than slope data; both families valid; no other finest data on window -2..2; WINDOW-VERIFIED".into())
}

fn c12() -> Check {
    let a = ctx("x2:window=-4..4:points=3");
    let stabcat::Model::X2(m) = &a.model else { return Err("not an X(2) ambient".into()) };
    let amb = &a.amb;
    let xt = XTilde::standard(m);
    for fam in [X2Family::FullL, X2Family::Lm(0), X2Family::Coset] {
        let d = finest_x2(amb, m, fam, &xt).map_err(|e| e.to_string())?;
        ensure(validate(amb, &d).valid && is_finest(amb, &d).finest, || format!("{fam:?} is not valid finest"))?;
    }
    let coset = finest_x2(amb, m, X2Family::Coset, &xt).map_err(|e| e.to_string())?;
    let eng = HnEngine::new(amb, &coset);
    let x2 = Indec::X2;
    let exc = |j: u32, t: u32| x2(X2Indec::Exc { j, t });
    let factors = |x: Indec| -> Result<Vec<Vec<Indec>>, String> { Ok(eng.filtration(&x).map_err(|e| e.to_string())?.steps.into_iter().map(|s| s.factors).collect()) };
    let mut checked = 0;
    for k in (m.lowest() + 1).div_euclid(2) + 1..=m.highest().div_euclid(2) {
        let want = vec![vec![x2(X2Indec::Line(2 * k - 1))], vec![exc(0, 1)]];
        ensure(factors(x2(X2Indec::Line(2 * k)))? == want, || format!("O({k}c)"))?;
        checked += 1;
    }
    for n in 1..=2 {
        ensure(factors(exc(1, 2 * n + 1))? == [vec![exc(1, 1)], vec![exc(1, 2 * n)]], || format!("S_(1,1)^({})", 2 * n + 1))?;
        ensure(factors(exc(0, 2 * n + 1))? == [vec![exc(1, 2 * n)], vec![exc(0, 1)]], || format!("S_(1,0)^({})", 2 * n + 1))?;
        checked += 2;
    }
    ensure(factors(exc(0, 2))? == [vec![exc(1, 1)], vec![exc(0, 1)]], || "S_(1,0)^(2)".into())?;
    for n in 1..=2 {
        ensure(factors(exc(0, 2 * n + 2))? == [vec![exc(1, 1)], vec![exc(1, 2 * n)], vec![exc(0, 1)]], || format!("S_(1,0)^({})", 2 * n + 2))?;
        checked += 1;
    }
    let rows = [X2Row::I { points: vec![Point(0)], infinity: true }, X2Row::II(vec![Point(1)]), X2Row::III(vec![]), X2Row::IV, X2Row::V, X2Row::VI];
    for row in &rows {
        let tp = torsion_family_x2(amb, m, row, 0).map_err(|e| e.to_string())?;
        ensure(validate_torsion(amb, &tp).valid, || format!("row {row:?} is not a torsion pair in the window"))?;
    }
    table("x2-finest")?;
    table("x2-torsion")?;
    let slope = slope_data_x2(amb, m).map_err(|e| e.to_string())?;
    ensure(is_coarser(amb, &slope, &coset).is_none(), || "the coset family refines slope data".into())?;
    Ok(format!("three families valid finest; {} coset filtrations match; six rows valid; coset family does not refine slope data; WINDOW-VERIFIED", checked + 1))
}

pub const CRITERIA: [(&str, fn() -> Check); 12] = [
    ("A_2 torsion pairs", c1),
    ("A_3 torsion pairs", c2),
    ("A_3 finest stability data", c3),
    ("T_3 finest stability data", c4),
    ("T_3 torsion pairs", c5),
    ("oracle equivalence, Hom", c6),
    ("oracle equivalence, closure and middle terms", c7),
    ("HN uniqueness", c8),
    ("finest criterion mechanized", c9),
    ("Kronecker quiver", c10),
    ("projective line", c11),
    ("weighted projective line X(2)", c12),
];
