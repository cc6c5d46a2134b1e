//! Combinatorics of the tube of rank `n`: uniserial objects as cyclic segments.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ambient::{CategoryModel, Split};
use crate::error::TubeError;
use crate::indec::Indec;

/// The uniserial object with top `S_j` and length `t` in the tube of rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TubeIndec {
    pub n: u32,
    pub j: u32,
    pub t: u32,
}

fn modn(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

/// Representative length: `t` itself up to `n`, then one of `n+1..=2n`.
pub fn rho(n: u32, t: u32) -> u32 {
    if t <= n {
        t
    } else {
        n + (t - 1) % n + 1
    }
}

impl TubeIndec {
    pub fn new(n: u32, j: u32, t: u32) -> Result<Self, TubeError> {
        if n == 0 || t == 0 || j >= n {
            return Err(TubeError::Invalid(alloc::format!("S{j}^({t})@{n}")));
        }
        Ok(TubeIndec { n, j, t })
    }

    /// Convenience constructor reducing `j` mod `n`.
    pub fn at(n: u32, j: i64, t: u32) -> Self {
        TubeIndec { n, j: modn(j, n), t }
    }

    pub fn top(&self) -> u32 {
        self.j
    }

    pub fn soc(&self) -> u32 {
        modn(self.j as i64 - self.t as i64 + 1, self.n)
    }

    /// Bitmask of composition-factor indices.
    pub fn factor_mask(&self) -> u64 {
        if self.t >= self.n {
            return if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        }
        let mut m = 0u64;
        for k in 0..self.t {
            m |= 1 << modn(self.j as i64 - k as i64, self.n);
        }
        m
    }

    pub fn comp_factor_set(&self) -> BTreeSet<u32> {
        let m = self.factor_mask();
        (0..self.n).filter(|i| m >> i & 1 == 1).collect()
    }

    pub fn tau(&self, k: i64) -> TubeIndec {
        TubeIndec::at(self.n, self.j as i64 - k, self.t)
    }

    /// Subobjects of lengths `1..=t`, bottom first.
    pub fn subobject_chain(&self) -> Vec<TubeIndec> {
        (1..=self.t).map(|r| TubeIndec::at(self.n, self.j as i64 - self.t as i64 + r as i64, r)).collect()
    }

    /// The subobject of length `r` (`1 <= r <= t`).
    pub fn sub(&self, r: u32) -> TubeIndec {
        TubeIndec::at(self.n, self.j as i64 - self.t as i64 + r as i64, r)
    }

    /// The quotient by the subobject of length `r` (`0 <= r < t`).
    pub fn quotient(&self, r: u32) -> TubeIndec {
        TubeIndec { n: self.n, j: self.j, t: self.t - r }
    }

    pub fn truncate_rep(&self) -> SegmentRep {
        SegmentRep(TubeIndec { n: self.n, j: self.j, t: rho(self.n, self.t) })
    }

    pub fn is_rep(&self) -> bool {
        rho(self.n, self.t) == self.t
    }
}

impl fmt::Display for TubeIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}^({})@{}", self.j, self.t, self.n)
    }
}

/// A tube object whose length is a representative length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentRep(pub TubeIndec);

impl SegmentRep {
    pub fn indec(&self) -> TubeIndec {
        self.0
    }

    /// Actual lengths standing for this representative in middle-term
    /// computations: the length itself, plus two more periods for tail families.
    pub fn lifts(&self) -> Vec<TubeIndec> {
        let x = self.0;
        if x.t <= x.n {
            vec![x]
        } else {
            vec![x, TubeIndec { t: x.t + x.n, ..x }, TubeIndec { t: x.t + 2 * x.n, ..x }]
        }
    }
}

/// All `2n^2` representatives, sorted by (length, top).
pub fn all_reps(n: u32) -> Vec<SegmentRep> {
    let mut v = Vec::new();
    for t in 1..=2 * n {
        for j in 0..n {
            v.push(SegmentRep(TubeIndec { n, j, t }));
        }
    }
    v
}

fn same_rank(x: &TubeIndec, y: &TubeIndec) -> Result<(), TubeError> {
    if x.n != y.n {
        Err(TubeError::RankMismatch { left: x.n, right: y.n })
    } else {
        Ok(())
    }
}

pub fn hom_nonzero(x: &TubeIndec, y: &TubeIndec) -> Result<bool, TubeError> {
    same_rank(x, y)?;
    Ok(y.factor_mask() >> x.top() & 1 == 1 && x.factor_mask() >> y.soc() & 1 == 1)
}

/// Middle terms of non-split extensions `0 -> a -> E -> b -> 0`.
///
/// Segments are lifted to the integers with `a` occupying `[a0, a1]`, `a1 = top(a)`.
pub fn middle_terms(a: &TubeIndec, b: &TubeIndec) -> Result<Vec<Vec<TubeIndec>>, TubeError> {
    same_rank(a, b)?;
    let n = a.n as i64;
    let a1 = a.j as i64;
    let a0 = a1 - a.t as i64 + 1;
    let tb = b.t as i64;
    let mut out: BTreeSet<Vec<TubeIndec>> = BTreeSet::new();
    // b's lift [b0, b1] with b1 = b.j + k n; need a0 < b0 <= a1 + 1.
    let base_b1 = b.j as i64;
    let lo = (a0 + 1 + tb - 1 - base_b1).div_euclid(n) - 1;
    let hi = (a1 + 1 + tb - 1 - base_b1).div_euclid(n) + 1;
    for k in lo..=hi {
        let b1 = base_b1 + k * n;
        let b0 = b1 - tb + 1;
        if b0 == a1 + 1 {
            out.insert(vec![TubeIndec::at(a.n, b1, (a.t + b.t) as u32)]);
        } else if a0 < b0 && b0 <= a1 && a1 < b1 {
            let mut e = vec![
                TubeIndec::at(a.n, b1, (b1 - a0 + 1) as u32),
                TubeIndec::at(a.n, a1, (a1 - b0 + 1) as u32),
            ];
            e.sort();
            out.insert(e);
        }
    }
    Ok(out.into_iter().collect())
}

/// The tube of rank `n` on representative lengths, with HN scope up to `3n`.
#[derive(Clone, Debug)]
pub struct TubeCategory {
    pub n: u32,
    pub scope_len: u32,
}

impl TubeCategory {
    pub fn new(n: u32) -> Self {
        TubeCategory { n, scope_len: 3 * n }
    }

    fn get(x: &Indec) -> TubeIndec {
        x.as_tube().expect("tube ambient holds tube objects")
    }
}

impl CategoryModel for TubeCategory {
    fn spec(&self) -> alloc::string::String {
        alloc::format!("tube:{}", self.n)
    }

    fn carrier(&self) -> Vec<Indec> {
        all_reps(self.n).into_iter().map(|r| Indec::Tube(r.0)).collect()
    }

    fn scope(&self) -> Vec<Indec> {
        let mut v = Vec::new();
        for t in 1..=self.scope_len {
            for j in 0..self.n {
                v.push(Indec::Tube(TubeIndec { n: self.n, j, t }));
            }
        }
        v
    }

    fn rep(&self, x: &Indec) -> Option<Indec> {
        match x {
            Indec::Tube(t) if t.n == self.n && t.j < t.n && t.t > 0 => Some(Indec::Tube(t.truncate_rep().0)),
            _ => None,
        }
    }

    fn lifts(&self, x: &Indec) -> Vec<Indec> {
        SegmentRep(Self::get(x)).lifts().into_iter().map(Indec::Tube).collect()
    }

    fn hom_nonzero(&self, x: &Indec, y: &Indec) -> bool {
        hom_nonzero(&Self::get(x), &Self::get(y)).unwrap_or(false)
    }

    fn middle_terms(&self, a: &Indec, b: &Indec) -> Vec<Vec<Indec>> {
        middle_terms(&Self::get(a), &Self::get(b))
            .unwrap_or_default()
            .into_iter()
            .map(|e| e.into_iter().map(Indec::Tube).collect())
            .collect()
    }

    fn length(&self, x: &Indec) -> Option<u32> {
        x.as_tube().map(|t| t.t)
    }

    fn sub_of_length(&self, x: &Indec, r: u32) -> Option<Indec> {
        let t = x.as_tube()?;
        (r >= 1 && r <= t.t).then(|| Indec::Tube(t.sub(r)))
    }

    fn splits(&self, x: &Indec) -> Vec<Split> {
        let x = Self::get(x);
        (1..x.t).map(|r| (vec![Indec::Tube(x.sub(r))], vec![Indec::Tube(x.quotient(r))])).collect()
    }

    fn tau(&self, x: &Indec) -> Option<Indec> {
        Some(Indec::Tube(Self::get(x).tau(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u32, j: u32, t: u32) -> TubeIndec {
        TubeIndec::new(n, j, t).unwrap()
    }

    #[test]
    fn factors_soc_top() {
        assert_eq!(s(3, 2, 2).comp_factor_set().into_iter().collect::<Vec<_>>(), [1, 2]);
        assert_eq!(s(3, 0, 3).comp_factor_set().len(), 3);
        assert_eq!(s(1, 0, 5).comp_factor_set().into_iter().collect::<Vec<_>>(), [0]);
        assert_eq!(s(3, 2, 2).soc(), 1);
        assert_eq!(s(3, 2, 2).top(), 2);
        assert_eq!(s(2, 0, 2).soc(), 1);
    }

    #[test]
    fn tau_action() {
        assert_eq!(s(3, 0, 1).tau(1), s(3, 2, 1));
        assert_eq!(s(3, 1, 4).tau(0), s(3, 1, 4));
        for j in 0..3 {
            for t in 1..7 {
                let x = s(3, j, t);
                assert_eq!(x.tau(3), x);
                assert_eq!(x.tau(1).soc(), (x.soc() + 2) % 3);
            }
        }
    }

    #[test]
    fn chains() {
        assert_eq!(s(3, 2, 2).subobject_chain(), [s(3, 1, 1), s(3, 2, 2)]);
        assert_eq!(s(4, 3, 1).subobject_chain(), [s(4, 3, 1)]);
        assert_eq!(s(2, 0, 3).subobject_chain(), [s(2, 0, 1), s(2, 1, 2), s(2, 0, 3)]);
        for x in s(4, 1, 7).subobject_chain() {
            assert_eq!(x.soc(), s(4, 1, 7).soc());
        }
    }

    #[test]
    fn hom_examples() {
        assert!(hom_nonzero(&s(3, 1, 2), &s(3, 2, 2)).unwrap());
        assert!(!hom_nonzero(&s(3, 0, 1), &s(3, 0, 2)).unwrap());
        assert!(hom_nonzero(&s(3, 0, 3), &s(3, 1, 3)).unwrap());
        assert!(matches!(hom_nonzero(&s(3, 0, 1), &s(2, 0, 1)), Err(TubeError::RankMismatch { .. })));
    }

    #[test]
    fn single_condition_criterion_by_length() {
        for n in 1..=4 {
            for (x, y) in pairs(n) {
                let h = hom_nonzero(&x, &y).unwrap();
                if x.t >= y.t {
                    assert_eq!(h, y.factor_mask() >> x.top() & 1 == 1, "{x} {y}");
                }
                if x.t <= y.t {
                    assert_eq!(h, x.factor_mask() >> y.soc() & 1 == 1, "{x} {y}");
                }
            }
        }
    }

    fn pairs(n: u32) -> Vec<(TubeIndec, TubeIndec)> {
        let objs: Vec<TubeIndec> = (1..=2 * n).flat_map(|t| (0..n).map(move |j| s(n, j, t))).collect();
        let mut v = Vec::new();
        for x in &objs {
            for y in &objs {
                v.push((*x, *y));
            }
        }
        v
    }

    #[test]
    fn middle_term_examples() {
        assert_eq!(middle_terms(&s(3, 0, 1), &s(3, 1, 1)).unwrap(), [vec![s(3, 1, 2)]]);
        assert_eq!(middle_terms(&s(3, 0, 2), &s(3, 1, 2)).unwrap(), [vec![s(3, 0, 1), s(3, 1, 3)]]);
        assert!(middle_terms(&s(3, 0, 1), &s(3, 0, 1)).unwrap().is_empty());
        // rank one: both gluings of a length-2 object onto itself
        assert_eq!(middle_terms(&s(1, 0, 2), &s(1, 0, 2)).unwrap().len(), 2);
    }

    #[test]
    fn middle_terms_conserve_length() {
        for n in 1..=4 {
            for (a, b) in pairs(n) {
                for e in middle_terms(&a, &b).unwrap() {
                    assert_eq!(e.iter().map(|x| x.t).sum::<u32>(), a.t + b.t);
                }
            }
        }
    }

    #[test]
    fn fundamental_sequences() {
        // stack: 0 -> S_j^(t) -> S_{j+1}^(t+1) -> S_{j+1} -> 0, and the diamond with the
        // other two sequences: 0 -> S_j^(t) -> S_{j+1}^(t+1) (+) S_j^(t-1) -> S_{j+1}^(t) -> 0
        for n in 1..=4u32 {
            for j in 0..n {
                for t in 1..=2 * n {
                    let x = s(n, j, t);
                    let up = TubeIndec::at(n, j as i64 + 1, t + 1);
                    let simple = TubeIndec::at(n, j as i64 + 1, 1);
                    assert!(middle_terms(&x, &simple).unwrap().contains(&vec![up]));
                    assert!(hom_nonzero(&x, &up).unwrap());
                    assert!(hom_nonzero(&up, &simple).unwrap());
                    let sub = TubeIndec::at(n, j as i64 - t as i64 + 1, 1);
                    let quo = TubeIndec::at(n, j as i64, t);
                    assert!(hom_nonzero(&sub, &up).unwrap());
                    let _ = quo;
                    if t >= 2 {
                        let shifted = TubeIndec::at(n, j as i64 + 1, t);
                        let mut e = vec![up, TubeIndec::at(n, j as i64, t - 1)];
                        e.sort();
                        assert!(middle_terms(&x, &shifted).unwrap().contains(&e), "{x}");
                    }
                }
            }
        }
    }

    #[test]
    fn truncation() {
        assert_eq!(s(3, 1, 9).truncate_rep().0, s(3, 1, 6));
        assert_eq!(s(3, 1, 3).truncate_rep().0, s(3, 1, 3));
        assert_eq!(s(3, 1, 5).truncate_rep().0, s(3, 1, 5));
        for n in 1..6 {
            for t in 1..40 {
                assert_eq!(rho(n, rho(n, t)), rho(n, t));
                for u in 1..40 {
                    let same = rho(n, t) == rho(n, u);
                    let expect = t == u || (t > n && u > n && t.abs_diff(u) % n == 0);
                    assert_eq!(same, expect);
                }
            }
        }
        assert_eq!(all_reps(3).len(), 18);
    }
}
