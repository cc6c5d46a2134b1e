//! Stability data on a finite ambient: validation, HN filtrations, the
//! finest-ness criterion, phase splitting, refinement and enumeration.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;

use crate::ambient::{canonical_cmp, Ambient};
use crate::bits::Members;
use crate::error::StabilityError;
use crate::indec::Indec;
use crate::order::{explicit_order, LinearOrder, Phase};
use crate::torsion::TorsionPair;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityData {
    pub order: LinearOrder,
    /// Nonempty pieces in ascending phase order.
    pieces: Vec<(Phase, Members)>,
}

impl StabilityData {
    /// Sorts the pieces by the order and drops empty ones.
    pub fn new(order: LinearOrder, pieces: Vec<(Phase, Members)>) -> Result<StabilityData, StabilityError> {
        let mut seen = BTreeSet::new();
        for (p, _) in &pieces {
            if !order.contains(p) {
                return Err(StabilityError::Order(crate::error::OrderError::NotInOrder(p.to_string())));
            }
            if !seen.insert(p.clone()) {
                return Err(StabilityError::DuplicatePhase(p.to_string()));
            }
        }
        let mut pieces: Vec<(Phase, Members)> = pieces.into_iter().filter(|(_, m)| !m.is_empty()).collect();
        pieces.sort_by(|a, b| order.compare(&a.0, &b.0).expect("membership checked"));
        Ok(StabilityData { order, pieces })
    }

    /// Pieces listed bottom to top, with phases `1 < 2 < ... < k`.
    pub fn from_sequence(seq: &[Members]) -> StabilityData {
        let phases: Vec<Phase> = (1..=seq.len() as i64).map(Phase::Int).collect();
        let order = explicit_order(phases.clone()).expect("distinct integers");
        StabilityData::new(order, phases.into_iter().zip(seq.iter().copied()).collect()).expect("phases from the order")
    }

    /// The one-phase data whose only piece is the whole carrier.
    pub fn one_phase(amb: &Ambient) -> StabilityData {
        StabilityData::from_sequence(&[amb.full()])
    }

    pub fn pieces(&self) -> &[(Phase, Members)] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn phases(&self) -> Vec<Phase> {
        self.pieces.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn members_sequence(&self) -> Vec<Members> {
        self.pieces.iter().map(|(_, m)| *m).collect()
    }

    pub fn piece(&self, phase: &Phase) -> Option<Members> {
        self.pieces.iter().find(|(p, _)| p == phase).map(|(_, m)| *m)
    }

    pub fn used(&self) -> Members {
        self.pieces.iter().fold(Members::EMPTY, |a, (_, m)| a | *m)
    }

    /// Rank (position among pieces) of the first piece holding carrier element `i`.
    pub fn rank_of(&self, i: usize) -> Option<usize> {
        self.pieces.iter().position(|(_, m)| m.contains(i))
    }

    /// Applies the translation to every piece, keeping the phases.
    pub fn tau(&self, amb: &Ambient) -> Option<StabilityData> {
        let pieces = self.pieces.iter().map(|(p, m)| amb.tau_members(*m).map(|t| (p.clone(), t))).collect::<Option<Vec<_>>>()?;
        Some(StabilityData { order: self.order.clone(), pieces })
    }

    /// Replaces the phases by `1 < ... < k`.
    pub fn relabelled(&self) -> StabilityData {
        StabilityData::from_sequence(&self.members_sequence())
    }
}

/// Same pieces in the same order.
pub fn equivalent(a: &StabilityData, b: &StabilityData) -> bool {
    a.members_sequence() == b.members_sequence()
}

/// Equivalent after some power of the translation.
pub fn equivalent_upto_tau(amb: &Ambient, a: &StabilityData, b: &StabilityData) -> bool {
    let mut cur = a.clone();
    for _ in 0..amb.len().max(1) {
        if equivalent(&cur, b) {
            return true;
        }
        match cur.tau(amb) {
            Some(next) => cur = next,
            None => return false,
        }
        if equivalent(&cur, a) {
            return false;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnStep {
    pub phase: Phase,
    pub factors: Vec<Indec>,
    /// The filtration step `X_i`, when the model can name it.
    pub sub: Option<Indec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFiltration {
    pub object: Indec,
    /// Steps with strictly decreasing phases.
    pub steps: Vec<HnStep>,
}

impl HnFiltration {
    pub fn is_trivial(&self) -> bool {
        self.steps.len() == 1 && self.steps[0].factors.len() == 1 && self.steps[0].factors[0] == self.object
    }
}

/// Phase ranks (descending) with their factor multisets.
pub type HnShape = Vec<(usize, Vec<Indec>)>;

/// Memoised search for all decreasing-phase decompositions.
pub struct HnEngine<'a> {
    amb: &'a Ambient,
    sd: &'a StabilityData,
    memo: RefCell<BTreeMap<Indec, Rc<Vec<HnShape>>>>,
}

impl<'a> HnEngine<'a> {
    pub fn new(amb: &'a Ambient, sd: &'a StabilityData) -> Self {
        HnEngine { amb, sd, memo: RefCell::new(BTreeMap::new()) }
    }

    fn rank(&self, x: &Indec) -> Option<usize> {
        self.amb.rep_index(x).and_then(|i| self.sd.rank_of(i))
    }

    /// Every decreasing-phase decomposition of `x` reachable through the model's splits.
    pub fn all(&self, x: &Indec) -> Rc<Vec<HnShape>> {
        if let Some(r) = self.memo.borrow().get(x) {
            return r.clone();
        }
        let mut found: BTreeSet<HnShape> = BTreeSet::new();
        if let Some(r) = self.rank(x) {
            found.insert(vec![(r, vec![*x])]);
        }
        for (k, q) in self.amb.splits(x) {
            let ks = self.all_sum(&k);
            if ks.is_empty() {
                continue;
            }
            let qs = self.all_sum(&q);
            for a in &ks {
                for b in &qs {
                    if a.last().map(|l| l.0) > b.first().map(|f| f.0) {
                        let mut c = a.clone();
                        c.extend(b.iter().cloned());
                        found.insert(c);
                    }
                }
            }
        }
        let r = Rc::new(found.into_iter().collect::<Vec<_>>());
        self.memo.borrow_mut().insert(*x, r.clone());
        r
    }

    /// Decompositions of a direct sum, merged phase by phase.
    pub fn all_sum(&self, xs: &[Indec]) -> Vec<HnShape> {
        let mut acc: Vec<BTreeMap<usize, Vec<Indec>>> = vec![BTreeMap::new()];
        for x in xs {
            let opts = self.all(x);
            let mut next = Vec::new();
            for base in &acc {
                for shape in opts.iter() {
                    let mut m = base.clone();
                    for (r, f) in shape {
                        m.entry(*r).or_default().extend(f.iter().copied());
                    }
                    next.push(m);
                }
            }
            acc = next;
            if acc.is_empty() {
                return Vec::new();
            }
        }
        let mut out: BTreeSet<HnShape> = BTreeSet::new();
        for m in acc {
            out.insert(
                m.into_iter()
                    .rev()
                    .map(|(r, mut f)| {
                        f.sort();
                        (r, f)
                    })
                    .collect(),
            );
        }
        out.into_iter().collect()
    }

    pub fn count(&self, x: &Indec) -> usize {
        self.all(x).len()
    }

    pub fn filtration(&self, x: &Indec) -> Result<HnFiltration, StabilityError> {
        let all = self.all(x);
        match all.len() {
            0 => Err(StabilityError::HnFailure(x.to_string())),
            1 => {
                let model = self.amb.model();
                let mut cum = 0u32;
                let mut steps = Vec::new();
                for (r, f) in &all[0] {
                    let len: Option<u32> = f.iter().map(|z| model.length(z)).sum();
                    let sub = len.and_then(|l| {
                        cum += l;
                        model.sub_of_length(x, cum)
                    });
                    steps.push(HnStep { phase: self.sd.pieces[*r].0.clone(), factors: f.clone(), sub });
                }
                Ok(HnFiltration { object: *x, steps })
            }
            _ => Err(StabilityError::HnAmbiguous(x.to_string())),
        }
    }
}

pub fn hn_filtration(amb: &Ambient, sd: &StabilityData, x: &Indec) -> Result<HnFiltration, StabilityError> {
    HnEngine::new(amb, sd).filtration(x)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// `(X, Y)` with `X` in a higher phase than `Y` and `Hom(X, Y) != 0`.
    pub hom_violations: Vec<(Indec, Indec)>,
    pub hn_failures: Vec<Indec>,
    pub hn_ambiguous: Vec<Indec>,
    pub overlaps: Vec<Indec>,
    pub unclosed: Vec<Phase>,
    pub scope_size: usize,
    pub windowed: bool,
}

pub fn validate(amb: &Ambient, sd: &StabilityData) -> ValidationReport {
    let mut rep = ValidationReport { scope_size: amb.scope().len(), windowed: amb.windowed(), ..Default::default() };
    let mut seen = Members::EMPTY;
    for (p, m) in &sd.pieces {
        for i in (*m & seen).iter() {
            rep.overlaps.push(amb.indec(i));
        }
        seen = seen | *m;
        if !amb.is_closed(*m) {
            rep.unclosed.push(p.clone());
        }
    }
    for (hi, (_, upper)) in sd.pieces.iter().enumerate() {
        for (_, lower) in &sd.pieces[..hi] {
            for i in upper.iter() {
                for j in (amb.hom_from(i) & *lower).iter() {
                    rep.hom_violations.push((amb.indec(i), amb.indec(j)));
                }
            }
        }
    }
    if rep.hom_violations.is_empty() {
        let eng = HnEngine::new(amb, sd);
        for x in amb.scope() {
            match eng.count(x) {
                0 => rep.hn_failures.push(*x),
                1 => {}
                _ => rep.hn_ambiguous.push(*x),
            }
        }
    }
    rep.valid = rep.hom_violations.is_empty() && rep.hn_failures.is_empty() && rep.hn_ambiguous.is_empty() && rep.overlaps.is_empty() && rep.unclosed.is_empty();
    rep
}

pub fn is_valid(amb: &Ambient, sd: &StabilityData) -> bool {
    let mut seen = Members::EMPTY;
    for (_, m) in &sd.pieces {
        if !(*m & seen).is_empty() || !amb.is_closed(*m) {
            return false;
        }
        seen = seen | *m;
    }
    for (hi, (_, upper)) in sd.pieces.iter().enumerate() {
        let lower = sd.pieces[..hi].iter().fold(Members::EMPTY, |a, (_, m)| a | *m);
        if amb.hom_between(*upper, lower) {
            return false;
        }
    }
    let eng = HnEngine::new(amb, sd);
    amb.scope().iter().all(|x| eng.count(x) == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinestReport {
    pub finest: bool,
    /// `(phase, X, Y)` with `X != Y` in the piece and `Hom(X, Y) = 0`.
    pub witness: Option<(Phase, Indec, Indec)>,
}

pub fn is_finest(amb: &Ambient, sd: &StabilityData) -> FinestReport {
    for (p, m) in &sd.pieces {
        if let Some((i, j)) = amb.hom_connected_witness(*m) {
            return FinestReport { finest: false, witness: Some((p.clone(), amb.indec(i), amb.indec(j))) };
        }
    }
    FinestReport { finest: true, witness: None }
}

fn split_labels(phi: &Phase) -> (Phase, Phase) {
    (Phase::pair(phi.clone(), Phase::label("-")), Phase::pair(phi.clone(), Phase::label("+")))
}

/// Splits the piece at `phi` along `Hom(X, -)`.
pub fn split_phase(amb: &Ambient, sd: &StabilityData, phi: &Phase, x: &Indec) -> Result<StabilityData, StabilityError> {
    let piece = sd.piece(phi).ok_or_else(|| StabilityError::UnknownPhase(phi.to_string()))?;
    let xi = amb
        .rep_index(x)
        .filter(|i| piece.contains(*i))
        .ok_or_else(|| StabilityError::NotInPiece { object: x.to_string(), phase: phi.to_string() })?;
    let minus = piece - amb.hom_from(xi);
    if minus.is_empty() {
        return Err(StabilityError::NotSplittable(phi.to_string()));
    }
    let plus = piece & amb.left_perp(minus);
    let (lo, hi) = split_labels(phi);
    let mut phases = Vec::new();
    let mut pieces = Vec::new();
    for (p, m) in &sd.pieces {
        if p == phi {
            phases.push(lo.clone());
            phases.push(hi.clone());
            pieces.push((lo.clone(), minus));
            pieces.push((hi.clone(), plus));
        } else {
            phases.push(p.clone());
            pieces.push((p.clone(), *m));
        }
    }
    let order = explicit_order(phases)?;
    StabilityData::new(order, pieces)
}

/// Splits along finest-ness witnesses until every piece is Hom-connected.
pub fn refine_to_finest(amb: &Ambient, sd: &StabilityData) -> Result<StabilityData, StabilityError> {
    let mut cur = sd.clone();
    while let Some((phi, x, _)) = is_finest(amb, &cur).witness {
        cur = split_phase(amb, &cur, &phi, &x)?;
    }
    Ok(cur)
}

/// The map from the phases of `fine` to those of `coarse`, when `fine` refines `coarse`.
pub fn is_coarser(amb: &Ambient, coarse: &StabilityData, fine: &StabilityData) -> Option<Vec<(Phase, Phase)>> {
    let mut map = Vec::new();
    let mut last = 0usize;
    for (psi, m) in &fine.pieces {
        let r = coarse.pieces.iter().position(|(_, c)| m.is_subset(*c))?;
        if r < last {
            return None;
        }
        last = r;
        map.push((psi.clone(), r));
    }
    for (r, (_, c)) in coarse.pieces.iter().enumerate() {
        let union = fine.pieces.iter().zip(&map).filter(|(_, (_, k))| *k == r).fold(Members::EMPTY, |a, ((_, m), _)| a | *m);
        if union.is_empty() || amb.closure(union) != *c {
            return None;
        }
    }
    Some(map.into_iter().map(|(psi, r)| (psi, coarse.pieces[r].0.clone())).collect())
}

/// `T` from the phases outside `cut`, `F` from the phases in it.
pub fn cut_torsion_pair(amb: &Ambient, sd: &StabilityData, cut: &[Phase]) -> Result<TorsionPair, StabilityError> {
    for q in cut {
        if !sd.order.contains(q) {
            return Err(StabilityError::UnknownPhase(q.to_string()));
        }
    }
    for (p, _) in &sd.pieces {
        if cut.contains(p) {
            continue;
        }
        for q in cut {
            if sd.order.compare(p, q)? == Ordering::Less {
                return Err(StabilityError::CutNotDownClosed { lower: p.to_string(), upper: q.to_string() });
            }
        }
    }
    let mut t = Members::EMPTY;
    let mut f = Members::EMPTY;
    for (p, m) in &sd.pieces {
        if cut.contains(p) {
            f = f | *m;
        } else {
            t = t | *m;
        }
    }
    Ok(TorsionPair { t: amb.closure(t), f: amb.closure(f) })
}

/// The pairs from all `k + 1` down-closed cuts of the used phases.
pub fn all_cuts(amb: &Ambient, sd: &StabilityData) -> Vec<TorsionPair> {
    let phases = sd.phases();
    (0..=phases.len()).map(|k| cut_torsion_pair(amb, sd, &phases[..k]).expect("prefixes are down-closed")).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FinestOptions {
    pub upto_tau: bool,
    /// Restrict tube pieces to single generators of length at most the rank.
    pub tube_restricted: bool,
}

#[derive(Clone, Debug)]
pub struct FinestClass {
    pub data: StabilityData,
    /// Size of the translation orbit; 1 when orbits are not taken.
    pub orbit: usize,
}

/// Hom-connected closed subcategories, the possible pieces of finest data.
pub fn finest_candidates(amb: &Ambient) -> Result<Vec<Members>, StabilityError> {
    Ok(amb.enumerate_ext_closed()?.into_iter().filter(|m| !m.is_empty() && amb.hom_connected_witness(*m).is_none()).collect())
}

/// Single-generated tube pieces `<S_j^(s)>`, `s <= n`, that are Hom-connected.
pub fn tube_candidates(amb: &Ambient) -> Vec<(Members, bool)> {
    let mut out = Vec::new();
    for (i, x) in amb.carrier().iter().enumerate() {
        if let Indec::Tube(t) = x {
            if t.t <= t.n {
                let c = amb.closure(Members::single(i));
                if amb.hom_connected_witness(c).is_none() {
                    out.push((c, t.t == t.n));
                }
            }
        }
    }
    out
}

pub fn enumerate_finest(amb: &Ambient, opts: FinestOptions) -> Result<Vec<FinestClass>, StabilityError> {
    let cands: Vec<(Members, bool)> = if opts.tube_restricted {
        tube_candidates(amb)
    } else {
        finest_candidates(amb)?.into_iter().map(|m| (m, false)).collect()
    };
    let mut found: Vec<Vec<Members>> = Vec::new();
    let mut stack: Vec<Members> = Vec::new();
    dfs(amb, &cands, &mut stack, Members::EMPTY, Members::EMPTY, false, &mut found);
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| cmp_seq(a, b)));
    let data: Vec<StabilityData> = found.iter().map(|s| StabilityData::from_sequence(s)).collect();
    if !opts.upto_tau {
        return Ok(data.into_iter().map(|d| FinestClass { data: d, orbit: 1 }).collect());
    }
    let mut out = Vec::new();
    for d in data {
        let orbit = tau_orbit(amb, &d);
        let min = orbit.iter().min_by(|a, b| cmp_seq(a, b)).expect("orbit contains the datum");
        if *min == d.members_sequence() {
            out.push(FinestClass { data: d, orbit: orbit.len() });
        }
    }
    Ok(out)
}

/// Every valid stability data up to equivalence, as piece sequences of closed
/// subcategories, sorted by length.
pub fn enumerate_valid(amb: &Ambient) -> Result<Vec<StabilityData>, StabilityError> {
    let cands: Vec<(Members, bool)> = amb.enumerate_ext_closed()?.into_iter().filter(|m| !m.is_empty()).map(|m| (m, false)).collect();
    let mut found: Vec<Vec<Members>> = Vec::new();
    dfs(amb, &cands, &mut Vec::new(), Members::EMPTY, Members::EMPTY, false, &mut found);
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| cmp_seq(a, b)));
    Ok(found.iter().map(|s| StabilityData::from_sequence(s)).collect())
}

/// Distinct piece sequences after discarding carrier members outside the scope.
pub fn distinct_on_scope(amb: &Ambient, classes: &[FinestClass]) -> Vec<Vec<Members>> {
    let keep = amb.scope_members();
    let mut out: Vec<Vec<Members>> = Vec::new();
    for c in classes {
        let seq: Vec<Members> = c.data.members_sequence().into_iter().map(|m| m & keep).filter(|m| !m.is_empty()).collect();
        if !out.contains(&seq) {
            out.push(seq);
        }
    }
    out
}

fn cmp_seq(a: &[Members], b: &[Members]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match canonical_cmp(x, y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Distinct member sequences in the translation orbit.
pub fn tau_orbit(amb: &Ambient, d: &StabilityData) -> Vec<Vec<Members>> {
    let mut out: Vec<Vec<Members>> = vec![d.members_sequence()];
    let mut cur = d.clone();
    while let Some(next) = cur.tau(amb) {
        let seq = next.members_sequence();
        if out.contains(&seq) {
            break;
        }
        out.push(seq);
        cur = next;
    }
    out
}

fn dfs(amb: &Ambient, cands: &[(Members, bool)], stack: &mut Vec<Members>, used: Members, reach: Members, has_full: bool, found: &mut Vec<Vec<Members>>) {
    for (c, full_len) in cands {
        if !c.is_disjoint(used) || !c.is_disjoint(reach) || (*full_len && has_full) {
            continue;
        }
        stack.push(*c);
        let seq: Vec<Members> = stack.iter().rev().copied().collect();
        if is_valid(amb, &StabilityData::from_sequence(&seq)) {
            found.push(seq);
        }
        let mut r = reach;
        for i in c.iter() {
            r = r | amb.hom_from(i);
        }
        dfs(amb, cands, stack, used | *c, r, has_full || *full_len, found);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{Interval, IntervalCategory};
    use crate::tube::{TubeCategory, TubeIndec};
    use alloc::boxed::Box;

    fn an(n: u32) -> Ambient {
        Ambient::new(Box::new(IntervalCategory::new(n))).unwrap()
    }

    fn tube(n: u32) -> Ambient {
        Ambient::new(Box::new(TubeCategory::new(n))).unwrap()
    }

    fn iv(n: u32, a: u32, b: u32) -> Indec {
        Indec::Interval(Interval::new(n, a, b).unwrap())
    }

    fn s(n: u32, j: u32, t: u32) -> Indec {
        Indec::Tube(TubeIndec::new(n, j, t).unwrap())
    }

    fn data(amb: &Ambient, pieces: &[&[Indec]]) -> StabilityData {
        let seq: Vec<Members> = pieces.iter().map(|p| amb.closure_of(p).unwrap()).collect();
        StabilityData::from_sequence(&seq)
    }

    #[test]
    fn a2_examples() {
        let a = an(2);
        let (s1, p1, s2) = (iv(2, 1, 1), iv(2, 1, 2), iv(2, 2, 2));
        let d2 = data(&a, &[&[s1], &[s2]]);
        assert!(validate(&a, &d2).valid);
        let hn = hn_filtration(&a, &d2, &p1).unwrap();
        assert_eq!(hn.steps.len(), 2);
        assert_eq!(hn.steps[0].factors, [s2]);
        assert_eq!(hn.steps[0].phase, Phase::Int(2));
        assert_eq!(hn.steps[1].factors, [s1]);
        assert_eq!(hn.steps[0].sub, Some(s2));
        let one = StabilityData::one_phase(&a);
        assert!(validate(&a, &one).valid);
        let fr = is_finest(&a, &one);
        assert!(!fr.finest);
        let (_, x, y) = fr.witness.unwrap();
        assert!(!a.hom(a.index_of(&x).unwrap(), a.index_of(&y).unwrap()));
        assert!(is_finest(&a, &d2).finest);
        let d1 = data(&a, &[&[s2], &[p1], &[s1]]);
        assert!(validate(&a, &d1).valid);
        assert!(is_coarser(&a, &d1, &d2).is_none());
        assert!(is_coarser(&a, &d2, &d1).is_none());
        assert!(!equivalent(&d1, &d2));
    }

    #[test]
    fn t2_hn_failure() {
        let a = tube(2);
        let bad = data(&a, &[&[s(2, 1, 1)], &[s(2, 0, 1)]]);
        let rep = validate(&a, &bad);
        assert!(!rep.valid);
        assert!(rep.hn_failures.contains(&s(2, 0, 2)));
        assert!(rep.hom_violations.is_empty());
    }

    #[test]
    fn t2_hn_example() {
        let a = tube(2);
        let d = data(&a, &[&[s(2, 0, 1)], &[s(2, 1, 2)], &[s(2, 1, 1)]]);
        let hn = hn_filtration(&a, &d, &s(2, 0, 2)).unwrap();
        let f: Vec<_> = hn.steps.iter().map(|st| (st.phase.clone(), st.factors.clone())).collect();
        assert_eq!(f, [(Phase::Int(3), vec![s(2, 1, 1)]), (Phase::Int(1), vec![s(2, 0, 1)])]);
    }

    #[test]
    fn t3_first_listed_class_is_finest() {
        let a = tube(3);
        let d = data(&a, &[&[s(3, 0, 1)], &[s(3, 2, 1)], &[s(3, 1, 3)], &[s(3, 1, 2)], &[s(3, 1, 1)]]);
        assert!(validate(&a, &d).valid);
        assert!(is_finest(&a, &d).finest);
        let t = d.tau(&a).unwrap();
        assert!(!equivalent(&d, &t));
        assert!(equivalent_upto_tau(&a, &d, &t));
    }

    #[test]
    fn split_and_refine() {
        let a = an(2);
        let one = StabilityData::one_phase(&a);
        let s1 = iv(2, 1, 1);
        let sp = split_phase(&a, &one, &Phase::Int(1), &s1).unwrap();
        assert!(validate(&a, &sp).valid);
        assert!(is_coarser(&a, &one, &sp).is_some());
        assert!(!equivalent(&one, &sp));
        let lo = sp.pieces()[0].1;
        assert_eq!(a.indecs(lo), [iv(2, 1, 2), iv(2, 2, 2)]);
        let fin = refine_to_finest(&a, &one).unwrap();
        assert!(fin.len() <= 3);
        assert!(is_finest(&a, &fin).finest && validate(&a, &fin).valid);
        assert!(matches!(split_phase(&a, &fin, &fin.phases()[0], &a.indecs(fin.pieces()[0].1)[0]), Err(StabilityError::NotSplittable(_))));
        assert_eq!(is_coarser(&a, &fin, &fin).map(|m| m.len()), Some(fin.len()));
    }

    #[test]
    fn cuts() {
        let a = an(2);
        let d1 = data(&a, &[&[iv(2, 2, 2)], &[iv(2, 1, 2)], &[iv(2, 1, 1)]]);
        let tp = cut_torsion_pair(&a, &d1, &[Phase::Int(1)]).unwrap();
        assert_eq!(a.indecs(tp.t), [iv(2, 1, 1), iv(2, 1, 2)]);
        assert_eq!(a.indecs(tp.f), [iv(2, 2, 2)]);
        let triv = cut_torsion_pair(&a, &d1, &[]).unwrap();
        assert_eq!((triv.t, triv.f), (a.full(), Members::EMPTY));
        assert!(matches!(cut_torsion_pair(&a, &d1, &[Phase::Int(2)]), Err(StabilityError::CutNotDownClosed { .. })));
        assert_eq!(all_cuts(&a, &d1).len(), 4);
    }

    #[test]
    fn duplicate_and_empty_phases() {
        let o = explicit_order(vec![Phase::Int(1), Phase::Int(2)]).unwrap();
        assert!(matches!(StabilityData::new(o.clone(), vec![(Phase::Int(1), Members(1)), (Phase::Int(1), Members(2))]), Err(StabilityError::DuplicatePhase(_))));
        let d = StabilityData::new(o, vec![(Phase::Int(2), Members(1)), (Phase::Int(1), Members::EMPTY)]).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn valid_data_contain_the_finest() {
        for a in [an(2), an(3), tube(2)] {
            let all = enumerate_valid(&a).unwrap();
            assert!(all.iter().all(|d| validate(&a, d).valid));
            assert!(all.iter().any(|d| d.len() == 1));
            for c in enumerate_finest(&a, FinestOptions::default()).unwrap() {
                assert!(all.contains(&c.data));
            }
        }
        // one phase, one datum per non-trivial torsion pair, and S_2 < P_1 < S_1
        assert_eq!(enumerate_valid(&an(2)).unwrap().len(), 1 + 3 + 1);
    }

    #[test]
    fn finest_counts_small() {
        let a2 = enumerate_finest(&an(2), FinestOptions::default()).unwrap();
        assert_eq!(a2.len(), 2);
        let t1 = enumerate_finest(&tube(1), FinestOptions::default()).unwrap();
        assert_eq!(t1.len(), 1);
    }

    #[test]
    fn a3_finest_histogram() {
        let a = an(3);
        let all = enumerate_finest(&a, FinestOptions::default()).unwrap();
        let mut hist = BTreeMap::new();
        for c in &all {
            *hist.entry(c.data.len()).or_insert(0) += 1;
            assert!(validate(&a, &c.data).valid && is_finest(&a, &c.data).finest);
        }
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), [(3, 1), (4, 4), (5, 2), (6, 2)]);
    }

    #[test]
    fn t3_finest_classes() {
        let a = tube(3);
        let all = enumerate_finest(&a, FinestOptions { upto_tau: false, tube_restricted: true }).unwrap();
        assert_eq!(all.len(), 12);
        let orbits = enumerate_finest(&a, FinestOptions { upto_tau: true, tube_restricted: true }).unwrap();
        assert_eq!(orbits.len(), 4);
        assert_eq!(orbits.iter().map(|c| c.orbit).sum::<usize>(), 12);
    }

    #[test]
    fn restricted_tube_enumeration_is_complete_for_small_rank() {
        for n in 1..=3 {
            let a = tube(n);
            let general: Vec<_> = enumerate_finest(&a, FinestOptions::default()).unwrap().into_iter().map(|c| c.data.members_sequence()).collect();
            let restricted: Vec<_> = enumerate_finest(&a, FinestOptions { upto_tau: false, tube_restricted: true }).unwrap().into_iter().map(|c| c.data.members_sequence()).collect();
            assert_eq!(general, restricted, "rank {n}");
        }
    }
}
