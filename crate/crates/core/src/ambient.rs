//! Finite ambient models and the subcategory engine: closure under
//! extensions and summands, perpendicular categories, exhaustive enumeration.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{Members, MAX_CARRIER};
use crate::error::AmbientError;
use crate::indec::Indec;

pub const DEFAULT_CARRIER_BOUND: usize = 64;

/// Carriers up to this size may be enumerated by filtering all subsets.
pub const SUBSET_FILTER_LIMIT: usize = 24;

/// A short exact sequence `0 -> K -> X -> Q -> 0` with both ends nonzero,
/// given by the summands of `K` and of `Q`.
pub type Split = (Vec<Indec>, Vec<Indec>);

/// The interface every modelled category provides.
pub trait CategoryModel: Send + Sync {
    /// Spec string naming the ambient, e.g. `tube:3`.
    fn spec(&self) -> String;

    /// Canonical carrier; subcategories are subsets of it.
    fn carrier(&self) -> Vec<Indec>;

    /// Objects whose HN filtrations and torsion decompositions are checked.
    fn scope(&self) -> Vec<Indec>;

    /// The carrier element standing for `x`, or `None` outside the window.
    fn rep(&self, x: &Indec) -> Option<Indec>;

    /// Actual objects used for middle terms of a carrier element.
    fn lifts(&self, x: &Indec) -> Vec<Indec> {
        vec![*x]
    }

    fn hom_nonzero(&self, x: &Indec, y: &Indec) -> bool;

    /// Middle terms of the non-split sequences `0 -> a -> E -> b -> 0`.
    fn middle_terms(&self, a: &Indec, b: &Indec) -> Vec<Vec<Indec>>;

    /// Decompositions of `x` along subobjects, used by HN and torsion checks.
    fn splits(&self, x: &Indec) -> Vec<Split>;

    fn tau(&self, _x: &Indec) -> Option<Indec> {
        None
    }

    /// Composition length, for models that track it.
    fn length(&self, _x: &Indec) -> Option<u32> {
        None
    }

    /// The subobject of length `r` of a uniserial object.
    fn sub_of_length(&self, _x: &Indec, _r: u32) -> Option<Indec> {
        None
    }

    /// True when results only hold inside a finite window.
    fn windowed(&self) -> bool {
        false
    }
}

pub struct Ambient {
    model: Box<dyn CategoryModel>,
    carrier: Vec<Indec>,
    index: BTreeMap<Indec, usize>,
    hom_out: Vec<Members>,
    hom_in: Vec<Members>,
    ext: Vec<Vec<Members>>,
    scope: Vec<Indec>,
    tau: Option<Vec<usize>>,
}

impl core::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Ambient").field("spec", &self.model.spec()).field("carrier", &self.carrier.len()).finish()
    }
}

impl Ambient {
    pub fn new(model: Box<dyn CategoryModel>) -> Result<Ambient, AmbientError> {
        Ambient::with_bound(model, DEFAULT_CARRIER_BOUND)
    }

    pub fn with_bound(model: Box<dyn CategoryModel>, bound: usize) -> Result<Ambient, AmbientError> {
        let carrier = model.carrier();
        let bound = bound.min(MAX_CARRIER);
        if carrier.len() > bound {
            return Err(AmbientError::CarrierTooLarge { size: carrier.len(), bound });
        }
        let index: BTreeMap<Indec, usize> = carrier.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let n = carrier.len();
        let mut hom_out = vec![Members::EMPTY; n];
        let mut hom_in = vec![Members::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                if model.hom_nonzero(&carrier[i], &carrier[j]) {
                    hom_out[i].insert(j);
                    hom_in[j].insert(i);
                }
            }
        }
        let lifts: Vec<Vec<Indec>> = carrier.iter().map(|x| model.lifts(x)).collect();
        let mut ext = vec![vec![Members::EMPTY; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut m = Members::EMPTY;
                for a in &lifts[i] {
                    for b in &lifts[j] {
                        for e in model.middle_terms(a, b) {
                            for z in e {
                                if let Some(k) = model.rep(&z).and_then(|r| index.get(&r)) {
                                    m.insert(*k);
                                }
                            }
                        }
                    }
                }
                ext[i][j] = m;
            }
        }
        let tau = {
            let mut perm = Vec::with_capacity(n);
            for x in &carrier {
                match model.tau(x).and_then(|y| index.get(&y)) {
                    Some(k) => perm.push(*k),
                    None => break,
                }
            }
            if perm.len() == n && n > 0 {
                Some(perm)
            } else {
                None
            }
        };
        let scope = model.scope();
        Ok(Ambient { model, carrier, index, hom_out, hom_in, ext, scope, tau })
    }

    pub fn model(&self) -> &dyn CategoryModel {
        &*self.model
    }

    pub fn spec(&self) -> String {
        self.model.spec()
    }

    pub fn carrier(&self) -> &[Indec] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn full(&self) -> Members {
        Members::full(self.carrier.len())
    }

    pub fn scope(&self) -> &[Indec] {
        &self.scope
    }

    /// Carrier members standing for some object of the scope.
    pub fn scope_members(&self) -> Members {
        self.scope.iter().filter_map(|x| self.rep_index(x)).collect()
    }

    pub fn windowed(&self) -> bool {
        self.model.windowed()
    }

    pub fn index_of(&self, x: &Indec) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Carrier index of the representative of an actual object.
    pub fn rep_index(&self, x: &Indec) -> Option<usize> {
        self.model.rep(x).and_then(|r| self.index_of(&r))
    }

    pub fn indec(&self, i: usize) -> Indec {
        self.carrier[i]
    }

    pub fn members_of(&self, xs: &[Indec]) -> Result<Members, AmbientError> {
        let mut m = Members::EMPTY;
        for x in xs {
            let i = self.rep_index(x).ok_or_else(|| AmbientError::NotInCarrier(x.to_string()))?;
            m.insert(i);
        }
        Ok(m)
    }

    pub fn indecs(&self, m: Members) -> Vec<Indec> {
        m.iter().map(|i| self.carrier[i]).collect()
    }

    pub fn hom(&self, i: usize, j: usize) -> bool {
        self.hom_out[i].contains(j)
    }

    pub fn hom_from(&self, i: usize) -> Members {
        self.hom_out[i]
    }

    pub fn hom_into(&self, j: usize) -> Members {
        self.hom_in[j]
    }

    /// True when some object of `a` maps nonzero to some object of `b`.
    pub fn hom_between(&self, a: Members, b: Members) -> bool {
        a.iter().any(|i| !self.hom_out[i].is_disjoint(b))
    }

    pub fn ext_summands(&self, i: usize, j: usize) -> Members {
        self.ext[i][j]
    }

    pub fn closure(&self, gens: Members) -> Members {
        let mut m = gens;
        let mut fresh = gens;
        while !fresh.is_empty() {
            let mut add = Members::EMPTY;
            for i in fresh.iter() {
                for j in m.iter() {
                    add = add | self.ext[i][j] | self.ext[j][i];
                }
            }
            fresh = add - m;
            m = m | fresh;
        }
        m
    }

    pub fn closure_of(&self, gens: &[Indec]) -> Result<Members, AmbientError> {
        Ok(self.closure(self.members_of(gens)?))
    }

    pub fn is_closed(&self, m: Members) -> bool {
        m.iter().all(|i| m.iter().all(|j| self.ext[i][j].is_subset(m)))
    }

    /// `{Y : Hom(X, Y) = 0 for all X in m}`.
    pub fn right_perp(&self, m: Members) -> Members {
        let mut hit = Members::EMPTY;
        for i in m.iter() {
            hit = hit | self.hom_out[i];
        }
        self.full() - hit
    }

    /// `{X : Hom(X, Y) = 0 for all Y in m}`.
    pub fn left_perp(&self, m: Members) -> Members {
        let mut hit = Members::EMPTY;
        for j in m.iter() {
            hit = hit | self.hom_in[j];
        }
        self.full() - hit
    }

    /// Mutual nonvanishing of Hom between distinct members; returns a failing pair.
    pub fn hom_connected_witness(&self, m: Members) -> Option<(usize, usize)> {
        for i in m.iter() {
            let miss = (m - self.hom_out[i]) - Members::single(i);
            if let Some(j) = miss.first() {
                return Some((i, j));
            }
        }
        None
    }

    pub fn tau_perm(&self) -> Option<&[usize]> {
        self.tau.as_deref()
    }

    pub fn tau_members(&self, m: Members) -> Option<Members> {
        let perm = self.tau.as_ref()?;
        Some(m.iter().map(|i| perm[i]).collect())
    }

    pub fn splits(&self, x: &Indec) -> Vec<crate::ambient::Split> {
        self.model.splits(x)
    }

    /// All closed member sets, canonically sorted.
    pub fn enumerate_ext_closed(&self) -> Result<Vec<Members>, AmbientError> {
        self.enumerate_ext_closed_bounded(DEFAULT_CARRIER_BOUND)
    }

    pub fn enumerate_ext_closed_bounded(&self, bound: usize) -> Result<Vec<Members>, AmbientError> {
        if self.len() > bound {
            return Err(AmbientError::CarrierTooLarge { size: self.len(), bound });
        }
        if self.len() <= SUBSET_FILTER_LIMIT {
            Ok(self.enumerate_by_subsets())
        } else {
            Ok(self.enumerate_by_generators())
        }
    }

    /// Filters every subset of the carrier; only for small carriers.
    pub fn enumerate_by_subsets(&self) -> Vec<Members> {
        assert!(self.len() <= SUBSET_FILTER_LIMIT, "subset filtering needs a carrier of at most {SUBSET_FILTER_LIMIT}");
        let mut out: Vec<Members> = (0u128..1u128 << self.len()).map(Members).filter(|m| self.is_closed(*m)).collect();
        out.sort_by(canonical_cmp);
        out
    }

    /// Closures reached by adding one generator at a time.
    pub fn enumerate_by_generators(&self) -> Vec<Members> {
        let mut seen: BTreeSet<Members> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Members::EMPTY);
        queue.push_back(Members::EMPTY);
        while let Some(s) = queue.pop_front() {
            for e in (self.full() - s).iter() {
                let t = self.closure(s | Members::single(e));
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Members> = seen.into_iter().collect();
        out.sort_by(canonical_cmp);
        out
    }
}

/// Canonical order on member sets: by size, then by the sorted index list.
pub fn canonical_cmp(a: &Members, b: &Members) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalCategory;
    use crate::tube::{TubeCategory, TubeIndec};

    fn tube(n: u32) -> Ambient {
        Ambient::new(Box::new(TubeCategory::new(n))).unwrap()
    }

    fn s(n: u32, j: u32, t: u32) -> Indec {
        Indec::Tube(TubeIndec::new(n, j, t).unwrap())
    }

    #[test]
    fn tube_closure_examples() {
        let a = tube(3);
        let c = a.closure_of(&[s(3, 0, 1), s(3, 1, 1)]).unwrap();
        assert_eq!(a.indecs(c), [s(3, 0, 1), s(3, 1, 1), s(3, 1, 2)]);
        let c = a.closure_of(&[s(3, 1, 3)]).unwrap();
        assert_eq!(a.indecs(c), [s(3, 1, 3), s(3, 1, 6)]);
        assert!(a.closure(Members::EMPTY).is_empty());
        // a long generator is identified with its whole periodic family
        let c = a.closure_of(&[s(3, 0, 9)]).unwrap();
        assert_eq!(a.indecs(c), [s(3, 0, 3), s(3, 0, 6)]);
    }

    #[test]
    fn rank_one_tube_has_two_closed_sets() {
        let a = tube(1);
        assert_eq!(a.len(), 2);
        let all = a.enumerate_ext_closed().unwrap();
        assert_eq!(all, [Members::EMPTY, a.full()]);
    }

    #[test]
    fn perps() {
        let a = tube(3);
        let t = a.closure_of(&[s(3, 2, 1)]).unwrap();
        let f = a.right_perp(t);
        for x in [s(3, 0, 1), s(3, 1, 1), s(3, 2, 2)] {
            assert!(f.contains(a.index_of(&x).unwrap()));
        }
        assert_eq!(a.right_perp(Members::EMPTY), a.full());
        assert_eq!(a.right_perp(a.full()), Members::EMPTY);
        assert_eq!(a.left_perp(a.full()), Members::EMPTY);
    }

    #[test]
    fn a2_closed_sets() {
        let a = Ambient::new(Box::new(IntervalCategory::new(2))).unwrap();
        let all = a.enumerate_ext_closed().unwrap();
        // the closure of S_1 and S_2 contains P_1, so only {S_1, S_2} is missing
        assert_eq!(all.len(), 7);
        assert_eq!(all, a.enumerate_by_generators());
    }

    #[test]
    fn subset_and_generator_strategies_agree() {
        for amb in [tube(1), tube(2), Ambient::new(Box::new(IntervalCategory::new(3))).unwrap(), Ambient::new(Box::new(IntervalCategory::new(4))).unwrap()] {
            if amb.len() <= 16 {
                assert_eq!(amb.enumerate_by_subsets(), amb.enumerate_by_generators(), "{}", amb.spec());
            }
        }
    }

    #[test]
    fn perps_of_closed_sets_are_closed() {
        for amb in [tube(2), tube(3), Ambient::new(Box::new(IntervalCategory::new(3))).unwrap()] {
            for m in amb.enumerate_ext_closed().unwrap() {
                assert!(amb.is_closed(amb.right_perp(m)));
                assert!(amb.is_closed(amb.left_perp(m)));
            }
        }
    }

    #[test]
    fn carrier_bound() {
        let err = Ambient::with_bound(Box::new(TubeCategory::new(3)), 10).unwrap_err();
        assert_eq!(err, AmbientError::CarrierTooLarge { size: 18, bound: 10 });
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn closure_idempotent_and_monotone(g in any::<u32>(), h in any::<u32>(), n in 1u32..=3) {
                let a = tube(n);
                let g = Members(g as u128) & a.full();
                let h = (Members(h as u128) & a.full()) | g;
                let cg = a.closure(g);
                prop_assert_eq!(a.closure(cg), cg);
                prop_assert!(a.is_closed(cg));
                prop_assert!(cg.is_subset(a.closure(h)));
            }

            #[test]
            fn interval_closure_idempotent(g in any::<u16>(), n in 1u32..=4) {
                let a = Ambient::new(Box::new(IntervalCategory::new(n))).unwrap();
                let g = Members(g as u128) & a.full();
                let cg = a.closure(g);
                prop_assert_eq!(a.closure(cg), cg);
            }
        }
    }
}
