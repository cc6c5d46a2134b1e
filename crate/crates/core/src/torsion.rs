//! Torsion pairs: validation, exhaustive enumeration, the tube classification
//! and the pairs cut out of stability data.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::ambient::{canonical_cmp, Ambient};
use crate::bits::Members;
use crate::error::AmbientError;
use crate::indec::Indec;
use crate::interval::{embed_avoiding_last, embed_avoiding_zero, IntervalCategory};
use crate::stability::{all_cuts, StabilityData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPair {
    pub t: Members,
    pub f: Members,
}

impl TorsionPair {
    pub fn is_trivial(&self, amb: &Ambient) -> bool {
        self.t.is_empty() || self.f.is_empty() || self.t == amb.full() || self.f == amb.full()
    }

    pub fn tau(&self, amb: &Ambient) -> Option<TorsionPair> {
        Some(TorsionPair { t: amb.tau_members(self.t)?, f: amb.tau_members(self.f)? })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorsionReport {
    pub valid: bool,
    pub hom_violations: Vec<(Indec, Indec)>,
    /// `T` differs from the left perpendicular of `F` on the scope.
    pub t_not_perp: bool,
    /// `F` differs from the right perpendicular of `T` on the scope.
    pub f_not_perp: bool,
    pub not_quotient_closed: Vec<Indec>,
    pub not_sub_closed: Vec<Indec>,
    /// Objects with no subobject in `T` and quotient in `F`.
    pub undecomposed: Vec<Indec>,
}

fn all_in(amb: &Ambient, xs: &[Indec], m: Members) -> bool {
    xs.iter().all(|x| amb.rep_index(x).map(|i| m.contains(i)).unwrap_or(false))
}

fn none_outside(amb: &Ambient, xs: &[Indec], m: Members) -> bool {
    xs.iter().all(|x| amb.rep_index(x).map(|i| m.contains(i)).unwrap_or(true))
}

pub fn validate_torsion(amb: &Ambient, tp: &TorsionPair) -> TorsionReport {
    let mut rep = TorsionReport::default();
    for i in tp.t.iter() {
        for j in (amb.hom_from(i) & tp.f).iter() {
            rep.hom_violations.push((amb.indec(i), amb.indec(j)));
        }
    }
    // carrier objects outside the scope may miss their neighbours in a window
    let scope = amb.scope_members();
    rep.t_not_perp = amb.left_perp(tp.f) & scope != tp.t & scope;
    rep.f_not_perp = amb.right_perp(tp.t) & scope != tp.f & scope;
    for i in tp.t.iter() {
        let x = amb.indec(i);
        if amb.splits(&x).iter().any(|(_, q)| !none_outside(amb, q, tp.t)) {
            rep.not_quotient_closed.push(x);
        }
    }
    for i in tp.f.iter() {
        let x = amb.indec(i);
        if amb.splits(&x).iter().any(|(k, _)| !none_outside(amb, k, tp.f)) {
            rep.not_sub_closed.push(x);
        }
    }
    for z in amb.scope() {
        let whole = [*z];
        if all_in(amb, &whole, tp.t) || all_in(amb, &whole, tp.f) {
            continue;
        }
        if !amb.splits(z).iter().any(|(k, q)| all_in(amb, k, tp.t) && all_in(amb, q, tp.f)) {
            rep.undecomposed.push(*z);
        }
    }
    rep.valid = rep.hom_violations.is_empty() && !rep.t_not_perp && !rep.f_not_perp && rep.not_quotient_closed.is_empty() && rep.not_sub_closed.is_empty() && rep.undecomposed.is_empty();
    rep
}

pub fn is_torsion_pair(amb: &Ambient, tp: &TorsionPair) -> bool {
    validate_torsion(amb, tp).valid
}

fn sorted(set: BTreeSet<TorsionPair>) -> Vec<TorsionPair> {
    let mut v: Vec<TorsionPair> = set.into_iter().collect();
    v.sort_by(|a, b| canonical_cmp(&a.t, &b.t).then_with(|| canonical_cmp(&a.f, &b.f)));
    v
}

/// Every torsion pair, trivial ones included, sorted by torsion class.
pub fn enumerate_torsion_pairs(amb: &Ambient) -> Result<Vec<TorsionPair>, AmbientError> {
    let mut out = BTreeSet::new();
    for t in amb.enumerate_ext_closed()? {
        let f = amb.right_perp(t);
        if amb.left_perp(f) != t {
            continue;
        }
        let tp = TorsionPair { t, f };
        if is_torsion_pair(amb, &tp) {
            out.insert(tp);
        }
    }
    Ok(sorted(out))
}

/// Pairs from every cut of every datum.
pub fn pairs_from_data(amb: &Ambient, data: &[StabilityData]) -> Vec<TorsionPair> {
    let mut out = BTreeSet::new();
    for d in data {
        out.extend(all_cuts(amb, d));
    }
    sorted(out)
}

/// Representatives of translation orbits, with orbit sizes.
pub fn tau_orbits(amb: &Ambient, pairs: &[TorsionPair]) -> Vec<(TorsionPair, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for tp in pairs {
        if seen.contains(tp) {
            continue;
        }
        let mut orbit = alloc::vec![*tp];
        let mut cur = *tp;
        while let Some(next) = cur.tau(amb) {
            if next == *tp {
                break;
            }
            orbit.push(next);
            cur = next;
        }
        seen.extend(orbit.iter().copied());
        out.push((*tp, orbit.len()));
    }
    out
}

/// The torsion pairs of a tube built from those of `mod A_{n-1}`: either `F`
/// lies in the wing avoiding `S_0`, or `T` lies in the wing avoiding
/// `S_{n-1}`, up to translation.
pub fn classify_tube(amb: &Ambient, n: u32) -> Result<Vec<TorsionPair>, AmbientError> {
    let mut base = BTreeSet::new();
    base.insert(TorsionPair { t: amb.full(), f: Members::EMPTY });
    base.insert(TorsionPair { t: Members::EMPTY, f: amb.full() });
    if n >= 2 {
        let wing = Ambient::new(Box::new(IntervalCategory::new(n - 1)))?;
        for wp in enumerate_torsion_pairs(&wing)? {
            let image = |m: Members, embed: fn(&crate::interval::Interval, u32) -> crate::tube::TubeIndec| -> Result<Members, AmbientError> {
                let xs: Vec<Indec> = wing.indecs(m).iter().map(|x| Indec::Tube(embed(&x.as_interval().expect("interval"), n))).collect();
                amb.closure_of(&xs)
            };
            let f = image(wp.f, embed_avoiding_zero)?;
            base.insert(TorsionPair { t: amb.left_perp(f), f });
            let t = image(wp.t, embed_avoiding_last)?;
            base.insert(TorsionPair { t, f: amb.right_perp(t) });
        }
    }
    let mut out = BTreeSet::new();
    for tp in base {
        let mut cur = tp;
        for _ in 0..n {
            out.insert(cur);
            cur = cur.tau(amb).unwrap_or(cur);
        }
    }
    Ok(sorted(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::stability::{enumerate_finest, FinestOptions};
    use crate::tube::{TubeCategory, TubeIndec};

    fn an(n: u32) -> Ambient {
        Ambient::new(Box::new(IntervalCategory::new(n))).unwrap()
    }

    fn tube(n: u32) -> Ambient {
        Ambient::new(Box::new(TubeCategory::new(n))).unwrap()
    }

    #[test]
    fn a2_pairs() {
        let a = an(2);
        let all = enumerate_torsion_pairs(&a).unwrap();
        assert_eq!(all.iter().filter(|p| !p.is_trivial(&a)).count(), 3);
        let s2 = a.closure_of(&[Indec::Interval(Interval::simple(2, 2).unwrap())]).unwrap();
        let s1 = a.closure_of(&[Indec::Interval(Interval::simple(2, 1).unwrap())]).unwrap();
        assert!(all.contains(&TorsionPair { t: s2, f: s1 }));
        let bad = TorsionPair { t: s1, f: s2 };
        let r = validate_torsion(&a, &bad);
        assert!(!r.valid && r.t_not_perp);
    }

    #[test]
    fn a3_has_twelve_nontrivial_pairs() {
        let a = an(3);
        let all = enumerate_torsion_pairs(&a).unwrap();
        assert_eq!(all.iter().filter(|p| !p.is_trivial(&a)).count(), 12);
    }

    #[test]
    fn tube_classification_matches_enumeration() {
        for n in 1..=4 {
            let a = tube(n);
            let all = enumerate_torsion_pairs(&a).unwrap();
            assert_eq!(classify_tube(&a, n).unwrap(), all, "rank {n}");
        }
        assert_eq!(enumerate_torsion_pairs(&tube(3)).unwrap().len(), 20);
    }

    #[test]
    fn ray_pair_in_t3() {
        let a = tube(3);
        let t = a.closure_of(&[Indec::Tube(TubeIndec::new(3, 2, 1).unwrap())]).unwrap();
        let tp = TorsionPair { t: a.left_perp(a.right_perp(t)), f: a.right_perp(t) };
        assert!(is_torsion_pair(&a, &tp));
        assert_eq!(tp.t, t);
        assert!(tp.f.contains(a.index_of(&Indec::Tube(TubeIndec::new(3, 2, 3).unwrap())).unwrap()));
    }

    #[test]
    fn cuts_of_finest_data_give_every_pair() {
        for a in [an(2), an(3), tube(2)] {
            let fin: Vec<StabilityData> = enumerate_finest(&a, FinestOptions::default()).unwrap().into_iter().map(|c| c.data).collect();
            let from = pairs_from_data(&a, &fin);
            for tp in &from {
                assert!(is_torsion_pair(&a, tp));
            }
            assert_eq!(from, enumerate_torsion_pairs(&a).unwrap(), "{}", a.spec());
        }
    }
}
