//! Named tables rerun against frozen golden files.
//!
//! Finite tables are compared row by row after canonicalisation: every cell is
//! read as a list of generators and replaced by the member list of its
//! closure. Tube rows are further reduced to the least rendering in their
//! translation orbit. Parametric tables over windowed ambients are frozen as
//! instance lists and carry the `WINDOW-VERIFIED` label.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use stabcat_core::indec::Point;
use stabcat_core::sheaves::kronecker::{finest_kron_directing, finest_kron_simples, torsion_family_kron, KronFamily, KronModel};
use stabcat_core::sheaves::p1::{torsion_family_p1, P1Family, P1Model};
use stabcat_core::sheaves::x2::{finest_x2, torsion_family_x2, X2Family, X2Model, X2Row, XTilde};
use stabcat_core::stability::{enumerate_finest, is_finest, tau_orbit, validate, FinestOptions};
use stabcat_core::torsion::{classify_tube, enumerate_torsion_pairs, pairs_from_data, validate_torsion};
use stabcat_core::{Members, TorsionPair};

use crate::ambient_spec::{parse_ambient, Context};
use crate::error::CliError;
use crate::json::show_members;

pub const TABLES: [&str; 9] = ["a2-torsion", "a3-torsion", "a3-finest", "t3-finest", "t3-torsion", "kron-torsion", "p1-torsion", "x2-finest", "x2-torsion"];

pub fn golden(name: &str) -> Option<&'static str> {
    Some(match name {
        "a2-torsion" => include_str!("../goldens/a2-torsion.md"),
        "a3-torsion" => include_str!("../goldens/a3-torsion.md"),
        "a3-finest" => include_str!("../goldens/a3-finest.md"),
        "t3-finest" => include_str!("../goldens/t3-finest.md"),
        "t3-torsion" => include_str!("../goldens/t3-torsion.md"),
        "kron-torsion" => include_str!("../goldens/kron-torsion.md"),
        "p1-torsion" => include_str!("../goldens/p1-torsion.md"),
        "x2-finest" => include_str!("../goldens/x2-finest.md"),
        "x2-torsion" => include_str!("../goldens/x2-torsion.md"),
        _ => return None,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TableOutcome {
    pub table: String,
    pub ambient: String,
    pub label: String,
    pub rows: usize,
    /// Canonical rows in the golden file but not recomputed.
    pub missing: Vec<String>,
    /// Canonical rows recomputed but absent from the golden file.
    pub unexpected: Vec<String>,
    /// Side checks that failed.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl TableOutcome {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty() && self.failures.is_empty()
    }

    /// Minimal diff, golden lines marked `-`, recomputed lines `+`.
    pub fn diff(&self) -> String {
        let mut s = String::new();
        for r in &self.missing {
            s.push_str(&format!("- {r}\n"));
        }
        for r in &self.unexpected {
            s.push_str(&format!("+ {r}\n"));
        }
        for r in &self.failures {
            s.push_str(&format!("! {r}\n"));
        }
        s
    }
}

/// Body rows of the first markdown table in `text`, as trimmed cells.
pub fn table_rows(text: &str) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for line in text.lines().map(str::trim).filter(|l| l.starts_with('|')) {
        let cells: Vec<String> = line.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect();
        if cells.iter().all(|c| !c.is_empty() && c.chars().all(|ch| matches!(ch, '-' | ':'))) {
            continue;
        }
        if !header_seen {
            header_seen = true;
            continue;
        }
        out.push(cells);
    }
    out
}

/// Generators of a cell such as `⟨S_1, M[1,2]⟩`; commas inside brackets stay.
pub fn cell_generators(cell: &str) -> Vec<String> {
    let body = cell.trim().trim_start_matches(['⟨', '<']).trim_end_matches(['⟩', '>']).trim();
    if body.is_empty() || body == "0" {
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut depth, mut cur) = (0i32, String::new());
    for ch in body.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out
}

fn pair_row(ctx: &Context, tp: &TorsionPair) -> String {
    format!("T={} | F={}", show_members(ctx, tp.t), show_members(ctx, tp.f))
}

fn seq_row(ctx: &Context, seq: &[Members]) -> String {
    seq.iter().map(|m| show_members(ctx, *m)).join(" ; ")
}

fn compare(table: &str, ctx: &Context, golden: Vec<String>, computed: Vec<String>) -> TableOutcome {
    let g: BTreeSet<String> = golden.iter().cloned().collect();
    let c: BTreeSet<String> = computed.iter().cloned().collect();
    let mut failures = Vec::new();
    if g.len() != golden.len() {
        failures.push(format!("golden file repeats a row ({} rows, {} distinct)", golden.len(), g.len()));
    }
    if c.len() != computed.len() {
        failures.push(format!("recomputed rows repeat ({} rows, {} distinct)", computed.len(), c.len()));
    }
    TableOutcome {
        table: table.to_string(),
        ambient: ctx.amb.spec(),
        label: crate::json::label(ctx),
        rows: c.len(),
        missing: g.difference(&c).cloned().collect(),
        unexpected: c.difference(&g).cloned().collect(),
        failures,
        notes: Vec::new(),
    }
}

fn unknown(name: &str) -> CliError {
    CliError::Usage(format!("unknown table {name:?}; known tables: {}", TABLES.join(", ")))
}

pub fn verify_table(name: &str) -> Result<TableOutcome, CliError> {
    verify_table_against(name, golden(name).ok_or_else(|| unknown(name))?)
}

/// Like [`verify_table`] with the golden text supplied by the caller.
pub fn verify_table_against(name: &str, text: &str) -> Result<TableOutcome, CliError> {
    golden(name).ok_or_else(|| unknown(name))?;
    let rows = table_rows(text);
    if rows.iter().any(|r| r.len() < expected_columns(name)) {
        return Err(CliError::Usage(format!("golden rows of {name} need {} columns", expected_columns(name))));
    }
    match name {
        "a2-torsion" => finite_torsion(name, "an:2", &rows),
        "a3-torsion" => finite_torsion(name, "an:3", &rows),
        "a3-finest" => a3_finest(&rows),
        "t3-finest" => t3_finest(&rows),
        "t3-torsion" => t3_torsion(&rows),
        _ => {
            let ctx = parse_ambient(parametric_ambient(name))?;
            let golden = rows.iter().map(|r| r.join(" | ")).collect();
            let computed = parametric_rows(name, &ctx)?;
            Ok(compare(name, &ctx, golden, computed))
        }
    }
}

/// The recomputed rows of a table in golden markdown form.
pub fn computed_markdown(name: &str) -> Result<String, CliError> {
    golden(name).ok_or_else(|| unknown(name))?;
    let ctx = parse_ambient(parametric_ambient(name))?;
    let rows = parametric_rows(name, &ctx)?;
    let header = parametric_header(name);
    let cols = header.split('|').count();
    let mut s = format!("| {header} |\n|{}\n", "---|".repeat(cols));
    for r in rows {
        s.push_str(&format!("| {r} |\n"));
    }
    Ok(s)
}

fn expected_columns(name: &str) -> usize {
    match name {
        "a3-finest" | "t3-finest" => 1,
        "a2-torsion" | "a3-torsion" => 2,
        "t3-torsion" => 3,
        _ => parametric_header(name).split('|').count(),
    }
}

fn finite_torsion(name: &str, spec: &str, rows: &[Vec<String>]) -> Result<TableOutcome, CliError> {
    let ctx = parse_ambient(spec)?;
    let mut golden = Vec::new();
    for r in rows {
        let tp = TorsionPair { t: ctx.closure_of(&cell_generators(&r[0]))?, f: ctx.closure_of(&cell_generators(&r[1]))? };
        golden.push(pair_row(&ctx, &tp));
    }
    let all = enumerate_torsion_pairs(&ctx.amb)?;
    let computed = all.iter().filter(|p| !p.is_trivial(&ctx.amb)).map(|p| pair_row(&ctx, p)).collect();
    let mut out = compare(name, &ctx, golden, computed);
    out.notes.push(format!("{} torsion pairs including the two trivial ones", all.len()));
    Ok(out)
}

fn golden_sequences(ctx: &Context, rows: &[Vec<String>]) -> Result<Vec<Vec<Members>>, CliError> {
    rows.iter().map(|r| r[0].split(';').map(|g| ctx.closure_of(&[g.trim().to_string()])).collect()).collect()
}

fn a3_finest(rows: &[Vec<String>]) -> Result<TableOutcome, CliError> {
    let name = "a3-finest";
    let ctx = parse_ambient("an:3")?;
    let golden = golden_sequences(&ctx, rows)?.iter().map(|s| seq_row(&ctx, s)).collect();
    let classes = enumerate_finest(&ctx.amb, FinestOptions::default())?;
    let computed = classes.iter().map(|c| seq_row(&ctx, &c.data.members_sequence())).collect();
    let mut out = compare(name, &ctx, golden, computed);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &classes {
        *hist.entry(c.data.len()).or_default() += 1;
    }
    out.notes.push(format!("phase-count histogram {}", histogram(&hist)));
    Ok(out)
}

fn histogram(h: &BTreeMap<usize, usize>) -> String {
    format!("{{{}}}", h.iter().map(|(k, v)| format!("{k}:{v}")).join(", "))
}

/// Least rendering over the translation orbit of a piece sequence.
fn tau_canonical_seq(ctx: &Context, seq: &[Members]) -> String {
    let d = stabcat_core::StabilityData::from_sequence(seq);
    tau_orbit(&ctx.amb, &d).iter().map(|s| seq_row(ctx, s)).min().expect("orbit is nonempty")
}

fn t3_finest(rows: &[Vec<String>]) -> Result<TableOutcome, CliError> {
    let name = "t3-finest";
    let ctx = parse_ambient("tube:3")?;
    let golden = golden_sequences(&ctx, rows)?.iter().map(|s| tau_canonical_seq(&ctx, s)).collect();
    let orbits = enumerate_finest(&ctx.amb, FinestOptions { upto_tau: true, tube_restricted: false })?;
    let computed = orbits.iter().map(|c| tau_canonical_seq(&ctx, &c.data.members_sequence())).collect();
    let mut out = compare(name, &ctx, golden, computed);
    let all = enumerate_finest(&ctx.amb, FinestOptions::default())?;
    let sizes: Vec<usize> = orbits.iter().map(|c| c.orbit).collect();
    out.notes.push(format!("{} classes without the translation quotient; orbit sizes {:?}", all.len(), sizes));
    if sizes.iter().sum::<usize>() != all.len() {
        out.failures.push(format!("orbit sizes {sizes:?} do not add up to {}", all.len()));
    }
    if let Some(s) = sizes.iter().find(|s| **s != 3) {
        out.failures.push(format!("orbit of size {s}, expected 3"));
    }
    Ok(out)
}

fn tau_powers(ctx: &Context, tp: &TorsionPair) -> Vec<TorsionPair> {
    let mut out = vec![*tp];
    let mut cur = *tp;
    while let Some(next) = cur.tau(&ctx.amb) {
        if out.contains(&next) {
            break;
        }
        out.push(next);
        cur = next;
    }
    out
}

/// `ray` when a translate of `T` avoids `S_0`, `coray` when a translate of
/// `F` avoids `S_{n-1}`.
fn tube_pair_type(ctx: &Context, n: u32, tp: &TorsionPair) -> Result<String, CliError> {
    let wing = |skip: u32| -> Result<Members, CliError> { ctx.closure_of(&(0..n).filter(|j| *j != skip).map(|j| format!("S{j}")).collect::<Vec<_>>()) };
    let (ray_wing, coray_wing) = (wing(0)?, wing(n - 1)?);
    let orbit = tau_powers(ctx, tp);
    let ray = orbit.iter().any(|p| p.t.is_subset(ray_wing));
    let coray = orbit.iter().any(|p| p.f.is_subset(coray_wing));
    Ok(match (ray, coray) {
        (true, false) => "ray",
        (false, true) => "coray",
        (true, true) => "ray+coray",
        (false, false) => "neither",
    }
    .to_string())
}

fn tube_pair_row(ctx: &Context, n: u32, tp: &TorsionPair) -> Result<String, CliError> {
    let best = tau_powers(ctx, tp).iter().map(|p| pair_row(ctx, p)).min().expect("orbit is nonempty");
    Ok(format!("{} | {best}", tube_pair_type(ctx, n, tp)?))
}

fn t3_torsion(rows: &[Vec<String>]) -> Result<TableOutcome, CliError> {
    let name = "t3-torsion";
    let n = 3;
    let ctx = parse_ambient("tube:3")?;
    let mut golden = Vec::new();
    for r in rows {
        let tp = TorsionPair { t: ctx.closure_of(&cell_generators(&r[1]))?, f: ctx.closure_of(&cell_generators(&r[2]))? };
        let row = tube_pair_row(&ctx, n, &tp)?;
        golden.push(format!("{} |{}", r[0], row.split_once('|').map_or("", |(_, rest)| rest)));
    }
    let brute = enumerate_torsion_pairs(&ctx.amb)?;
    let thm = classify_tube(&ctx.amb, n)?;
    let data: Vec<_> = enumerate_finest(&ctx.amb, FinestOptions::default())?.into_iter().map(|c| c.data).collect();
    let cuts = pairs_from_data(&ctx.amb, &data);
    let nontrivial: Vec<TorsionPair> = brute.iter().filter(|p| !p.is_trivial(&ctx.amb)).copied().collect();
    let mut seen = BTreeSet::new();
    let mut computed = Vec::new();
    for tp in &nontrivial {
        let row = tube_pair_row(&ctx, n, tp)?;
        if seen.insert(row.clone()) {
            computed.push(row);
        }
    }
    let mut out = compare(name, &ctx, golden, computed);
    let as_set = |v: &[TorsionPair]| v.iter().copied().collect::<BTreeSet<_>>();
    let (b, t, c) = (as_set(&brute), as_set(&thm), as_set(&cuts));
    out.notes.push(format!("brute force {} pairs, classifier {}, cuts of finest data {}", b.len(), t.len(), c.len()));
    if b != t {
        out.failures.push(format!("classifier differs from brute force on {} pairs", b.symmetric_difference(&t).count()));
    }
    if b != c {
        out.failures.push(format!("cuts differ from brute force on {} pairs", b.symmetric_difference(&c).count()));
    }
    Ok(out)
}

fn parametric_ambient(name: &str) -> &'static str {
    match name {
        "kron-torsion" => "kronecker",
        "p1-torsion" => "p1",
        _ => "x2",
    }
}

fn parametric_header(name: &str) -> &'static str {
    match name {
        "x2-finest" => "family | instance | phases | verdict",
        _ => "family | instance | T | F | verdict",
    }
}

fn points_label(p: &[Point]) -> String {
    format!("{{{}}}", p.iter().map(|x| x.label()).join(","))
}

fn subsets(sample: &[Point]) -> Vec<Vec<Point>> {
    (0..=sample.len()).flat_map(|k| sample.iter().copied().combinations(k)).collect()
}

fn torsion_verdict(ctx: &Context, family: &str, instance: String, tp: &TorsionPair) -> String {
    let r = validate_torsion(&ctx.amb, tp);
    let verdict = if r.valid { "torsion pair" } else { "INVALID" };
    format!("{family} | {instance} | {} | {} | {verdict}", tp.t.len(), tp.f.len())
}

fn parametric_rows(name: &str, ctx: &Context) -> Result<Vec<String>, CliError> {
    use crate::ambient_spec::Model;
    let mut rows = Vec::new();
    match (&ctx.model, name) {
        (Model::Kron(m), "kron-torsion") => kron_rows(ctx, m, &mut rows)?,
        (Model::P1(m), "p1-torsion") => p1_rows(ctx, m, &mut rows)?,
        (Model::X2(m), "x2-finest") => x2_finest_rows(ctx, m, &mut rows)?,
        (Model::X2(m), "x2-torsion") => x2_torsion_rows(ctx, m, &mut rows)?,
        _ => return Err(unknown(name)),
    }
    Ok(rows)
}

fn kron_rows(ctx: &Context, m: &KronModel, rows: &mut Vec<String>) -> Result<(), CliError> {
    for p in subsets(&m.sample()) {
        let tp = torsion_family_kron(&ctx.amb, m, &KronFamily::RegularAt(p.clone()))?;
        rows.push(torsion_verdict(ctx, "regular-at", format!("P={}", points_label(&p)), &tp));
    }
    for n in 1..m.k_max {
        let tp = torsion_family_kron(&ctx.amb, m, &KronFamily::InjectivesUpTo(n))?;
        rows.push(torsion_verdict(ctx, "injectives-up-to", format!("n={n}"), &tp));
    }
    for n in 1..m.k_max {
        let tp = torsion_family_kron(&ctx.amb, m, &KronFamily::AbovePre(n))?;
        rows.push(torsion_verdict(ctx, "above-preprojectives", format!("n={n}"), &tp));
    }
    let tp = torsion_family_kron(&ctx.amb, m, &KronFamily::Simples)?;
    rows.push(torsion_verdict(ctx, "simples", "-".into(), &tp));
    for (family, d) in [("finest-directing", finest_kron_directing(&ctx.amb, m, &m.sample())?), ("finest-simples", finest_kron_simples(&ctx.amb)?)] {
        let pairs = stabcat_core::stability::all_cuts(&ctx.amb, &d);
        let bad = pairs.iter().filter(|p| !validate_torsion(&ctx.amb, p).valid).count();
        rows.push(format!("{family} | cuts | {} | - | {}", pairs.len(), if bad == 0 { "torsion pairs" } else { "INVALID" }));
    }
    Ok(())
}

fn p1_rows(ctx: &Context, m: &P1Model, rows: &mut Vec<String>) -> Result<(), CliError> {
    for p in subsets(&m.sample()).into_iter().filter(|p| !p.is_empty()) {
        let tp = torsion_family_p1(&ctx.amb, m, &P1Family::Points(p.clone()))?;
        rows.push(torsion_verdict(ctx, "points", format!("P={}", points_label(&p)), &tp));
    }
    for n in m.lo + 1..m.hi {
        let tp = torsion_family_p1(&ctx.amb, m, &P1Family::Above(n))?;
        rows.push(torsion_verdict(ctx, "above", format!("n={n}"), &tp));
    }
    Ok(())
}

fn x2_finest_rows(ctx: &Context, m: &X2Model, rows: &mut Vec<String>) -> Result<(), CliError> {
    let mut families = vec![("full", X2Family::FullL)];
    for k in m.lowest()..=m.highest() {
        if finest_x2(&ctx.amb, m, X2Family::Lm(k), &XTilde::standard(m)).is_ok() {
            families.push(("lines-below", X2Family::Lm(k)));
        }
    }
    families.push(("coset", X2Family::Coset));
    for (label, family) in families {
        for perm in m.sample().into_iter().permutations(m.points as usize) {
            let mut xt = vec![XTilde::Exc0, XTilde::ExcHalf, XTilde::Exc1];
            xt.extend(perm.iter().map(|p| XTilde::Point(*p)));
            let d = finest_x2(&ctx.amb, m, family, &xt)?;
            let verdict = match (validate(&ctx.amb, &d).valid, is_finest(&ctx.amb, &d).finest) {
                (true, true) => "valid finest",
                (true, false) => "valid NOT-FINEST",
                _ => "INVALID",
            };
            let inst = match family {
                X2Family::Lm(k) => format!("m={k} points={}", points_label(&perm)),
                _ => format!("points={}", points_label(&perm)),
            };
            rows.push(format!("{label} | {inst} | {} | {verdict}", d.len()));
        }
    }
    Ok(())
}

fn x2_torsion_rows(ctx: &Context, m: &X2Model, rows: &mut Vec<String>) -> Result<(), CliError> {
    let sample = m.sample();
    for shift in 0..2 {
        let mut push = |label: &str, inst: String, row: X2Row| -> Result<(), CliError> {
            let tp = torsion_family_x2(&ctx.amb, m, &row, shift)?;
            rows.push(torsion_verdict(ctx, label, format!("shift={shift} {inst}"), &tp));
            Ok(())
        };
        for p in subsets(&sample) {
            for infinity in [false, true] {
                if p.is_empty() && !infinity {
                    continue;
                }
                push("I", format!("P={} inf={infinity}", points_label(&p)), X2Row::I { points: p.clone(), infinity })?;
            }
        }
        for q in subsets(&sample) {
            push("II", format!("Q={}", points_label(&q)), X2Row::II(q.clone()))?;
            push("III", format!("Q={}", points_label(&q)), X2Row::III(q.clone()))?;
        }
        push("IV", "-".into(), X2Row::IV)?;
        push("V", "-".into(), X2Row::V)?;
        push("VI", "-".into(), X2Row::VI)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_split_outside_brackets() {
        assert_eq!(cell_generators("⟨S_1, M[1,2]⟩"), ["S_1", "M[1,2]"]);
        assert_eq!(cell_generators("<O(2c + x1), S[1,0]^(2)>"), ["O(2c + x1)", "S[1,0]^(2)"]);
        assert!(cell_generators("0").is_empty());
    }

    #[test]
    fn rows_skip_header_and_rule() {
        let rows = table_rows("text\n| a | b |\n|---|---|\n| x | y |\n");
        assert_eq!(rows, [vec!["x".to_string(), "y".to_string()]]);
    }
}
