//! Modules over the Kronecker quiver `1 => 2`: preprojectives, preinjectives
//! and the regular rank-one tubes, in a window.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{distributions, point_phase, rank_one_lifts, rank_one_middle, rank_one_rep};
use crate::ambient::{Ambient, CategoryModel, Split};
use crate::error::SheafError;
use crate::indec::{Indec, Point, POINT_LABELS};
use crate::order::{explicit_order, Phase};
use crate::stability::StabilityData;
use crate::torsion::TorsionPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KronIndec {
    /// Dimension vector `(k-1, k)`; `P_1` is the simple `S_2`.
    Pre(u32),
    /// Dimension vector `(k, k-1)`; `I_1` is the simple `S_1`.
    Inj(u32),
    Reg { x: Point, d: u32 },
}

impl KronIndec {
    pub fn dim(&self) -> (u32, u32) {
        match *self {
            KronIndec::Pre(k) => (k - 1, k),
            KronIndec::Inj(k) => (k, k - 1),
            KronIndec::Reg { d, .. } => (d, d),
        }
    }
}

impl fmt::Display for KronIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KronIndec::Pre(k) => write!(f, "P_{k}"),
            KronIndec::Inj(k) => write!(f, "I_{k}"),
            KronIndec::Reg { x, d } => write!(f, "R[{x}]^({d})"),
        }
    }
}

pub fn hom_nonzero_kron(x: &KronIndec, y: &KronIndec) -> bool {
    use KronIndec::*;
    match (*x, *y) {
        (Pre(j), Pre(k)) => j <= k,
        (Pre(_), Reg { .. }) => true,
        (Pre(j), Inj(k)) => j + k >= 3,
        (Reg { x, .. }, Reg { x: y, .. }) => x == y,
        (Reg { .. }, Inj(_)) => true,
        (Inj(j), Inj(k)) => j >= k,
        _ => false,
    }
}

fn pair_sums(lo: u32, hi: u32, f: fn(u32) -> KronIndec) -> Vec<Vec<KronIndec>> {
    (lo + 1..hi).filter(|a| 2 * a <= lo + hi).map(|a| vec![f(a), f(lo + hi - a)]).collect()
}

/// Regular modules of total length `len`, at most one summand per point.
fn regular_sums(len: u32, points: u8) -> Vec<Vec<KronIndec>> {
    distributions(len, points as usize)
        .into_iter()
        .map(|dist| dist.iter().enumerate().filter(|(_, d)| **d > 0).map(|(i, d)| KronIndec::Reg { x: Point(i as u8), d: *d }).collect())
        .collect()
}

/// Middle terms of the non-split sequences `0 -> a -> E -> b -> 0`.
pub fn middle_terms_kron(a: &KronIndec, b: &KronIndec, points: u8) -> Vec<Vec<KronIndec>> {
    use KronIndec::*;
    match (*a, *b) {
        (Pre(k), Pre(j)) if k + 2 <= j => pair_sums(k, j, Pre),
        (Pre(k), Reg { x, d }) => (1..=d)
            .map(|s| {
                let mut e = vec![Pre(k + s)];
                if s < d {
                    e.push(Reg { x, d: d - s });
                }
                e
            })
            .collect(),
        (Pre(k), Inj(j)) => regular_sums(j + k - 1, points),
        (Reg { x, d }, Inj(j)) => (1..=d)
            .map(|s| {
                let mut e = vec![Inj(j + s)];
                if s < d {
                    e.push(Reg { x, d: d - s });
                }
                e
            })
            .collect(),
        (Inj(k), Inj(j)) if k >= j + 2 => pair_sums(j, k, Inj),
        (Reg { x, d: s }, Reg { x: y, d: t }) if x == y => rank_one_middle(s, t).into_iter().map(|e| e.into_iter().map(|d| Reg { x, d }).collect()).collect(),
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub struct KronModel {
    pub k_max: u32,
    pub d_max: u32,
    pub points: u8,
}

impl Default for KronModel {
    fn default() -> Self {
        KronModel { k_max: 6, d_max: 6, points: super::DEFAULT_POINTS }
    }
}

impl KronModel {
    pub fn new(k_max: u32, d_max: u32, points: u8) -> Result<KronModel, SheafError> {
        if k_max == 0 || d_max == 0 || points as usize > POINT_LABELS.len() {
            return Err(SheafError::BadParameters(format!("window K={k_max}, D={d_max} with {points} points")));
        }
        Ok(KronModel { k_max, d_max, points })
    }

    pub fn ambient(&self) -> Result<Ambient, SheafError> {
        Ok(Ambient::new(alloc::boxed::Box::new(self.clone()))?)
    }

    pub fn sample(&self) -> Vec<Point> {
        (0..self.points).map(Point).collect()
    }

    fn get(x: &Indec) -> KronIndec {
        match x {
            Indec::Kron(k) => *k,
            _ => panic!("Kronecker ambient holds Kronecker modules"),
        }
    }
}

fn wrap(v: Vec<KronIndec>) -> Vec<Indec> {
    v.into_iter().map(Indec::Kron).collect()
}

impl CategoryModel for KronModel {
    fn spec(&self) -> String {
        if self.k_max == self.d_max {
            format!("kronecker:window={}:points={}", self.k_max, self.points)
        } else {
            format!("kronecker:window={},{}:points={}", self.k_max, self.d_max, self.points)
        }
    }

    fn carrier(&self) -> Vec<Indec> {
        let mut v: Vec<Indec> = (1..=self.k_max).map(|k| Indec::Kron(KronIndec::Pre(k))).collect();
        for x in self.sample() {
            for d in 1..=2 {
                v.push(Indec::Kron(KronIndec::Reg { x, d }));
            }
        }
        v.extend((1..=self.k_max).map(|k| Indec::Kron(KronIndec::Inj(k))));
        v
    }

    fn scope(&self) -> Vec<Indec> {
        let mut v: Vec<Indec> = (1..=self.k_max).map(|k| Indec::Kron(KronIndec::Pre(k))).collect();
        for x in self.sample() {
            for d in 1..=self.d_max {
                v.push(Indec::Kron(KronIndec::Reg { x, d }));
            }
        }
        v.extend((1..=self.k_max).map(|k| Indec::Kron(KronIndec::Inj(k))));
        v
    }

    fn rep(&self, x: &Indec) -> Option<Indec> {
        let Indec::Kron(k) = x else { return None };
        match *k {
            KronIndec::Pre(k) | KronIndec::Inj(k) if k == 0 || k > self.k_max => None,
            KronIndec::Reg { x, d } if x.0 >= self.points || d == 0 => None,
            KronIndec::Reg { x, d } => Some(Indec::Kron(KronIndec::Reg { x, d: rank_one_rep(d) })),
            other => Some(Indec::Kron(other)),
        }
    }

    fn lifts(&self, x: &Indec) -> Vec<Indec> {
        match Self::get(x) {
            KronIndec::Reg { x, d } => rank_one_lifts(d).into_iter().map(|d| Indec::Kron(KronIndec::Reg { x, d })).collect(),
            other => vec![Indec::Kron(other)],
        }
    }

    fn hom_nonzero(&self, x: &Indec, y: &Indec) -> bool {
        hom_nonzero_kron(&Self::get(x), &Self::get(y))
    }

    fn middle_terms(&self, a: &Indec, b: &Indec) -> Vec<Vec<Indec>> {
        middle_terms_kron(&Self::get(a), &Self::get(b), self.points).into_iter().map(wrap).collect()
    }

    fn splits(&self, x: &Indec) -> Vec<Split> {
        use KronIndec::*;
        let x = Self::get(x);
        let (m, n) = x.dim();
        let mut out = Vec::new();
        if m > 0 && n > 0 {
            out.push((wrap(vec![Pre(1); n as usize]), wrap(vec![Inj(1); m as usize])));
        }
        match x {
            Pre(k) => {
                for j in 1..k {
                    for q in regular_sums(k - j, self.points) {
                        out.push((wrap(vec![Pre(j)]), wrap(q)));
                    }
                }
            }
            Inj(j) => {
                for k in 1..j {
                    for s in regular_sums(j - k, self.points) {
                        out.push((wrap(s), wrap(vec![Inj(k)])));
                    }
                }
            }
            Reg { x, d } => {
                for r in 1..d {
                    out.push((wrap(vec![Reg { x, d: r }]), wrap(vec![Reg { x, d: d - r }])));
                }
            }
        }
        out
    }

    fn windowed(&self) -> bool {
        true
    }
}

fn kron(x: KronIndec) -> Indec {
    Indec::Kron(x)
}

/// Preprojectives by increasing index, the regular points in the given order,
/// then preinjectives by decreasing index.
pub fn finest_kron_directing(amb: &Ambient, model: &KronModel, point_order: &[Point]) -> Result<StabilityData, SheafError> {
    let mut sorted = point_order.to_vec();
    sorted.sort();
    if sorted != model.sample() {
        return Err(SheafError::BadParameters(String::from("point order must list every sample point once")));
    }
    let mut pieces = Vec::new();
    for k in 1..=model.k_max {
        pieces.push((Phase::pair(Phase::Int(0), Phase::Int(k as i64)), amb.closure_of(&[kron(KronIndec::Pre(k))])?));
    }
    for x in point_order {
        pieces.push((point_phase(*x), amb.closure_of(&[kron(KronIndec::Reg { x: *x, d: 1 })])?));
    }
    for k in (1..=model.k_max).rev() {
        pieces.push((Phase::pair(Phase::Int(1), Phase::Int(k as i64)), amb.closure_of(&[kron(KronIndec::Inj(k))])?));
    }
    let order = explicit_order(pieces.iter().map(|(p, _)| p.clone()).collect())?;
    Ok(StabilityData::new(order, pieces).expect("phases come from the order"))
}

/// Two phases: `S_1` below `S_2`.
pub fn finest_kron_simples(amb: &Ambient) -> Result<StabilityData, SheafError> {
    let order = explicit_order(vec![Phase::Int(1), Phase::Int(2)])?;
    let pieces = vec![(Phase::Int(1), amb.closure_of(&[kron(KronIndec::Inj(1))])?), (Phase::Int(2), amb.closure_of(&[kron(KronIndec::Pre(1))])?)];
    Ok(StabilityData::new(order, pieces).expect("phases come from the order"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KronFamily {
    /// Regular simples at `P` with all preinjectives; `P` may be empty.
    RegularAt(Vec<Point>),
    /// Preinjectives `I_m` with `m <= n`.
    InjectivesUpTo(u32),
    /// Everything but the preprojectives `P_m` with `m <= n`.
    AbovePre(u32),
    /// `(<S_2>, <S_1>)`.
    Simples,
}

pub fn torsion_family_kron(amb: &Ambient, model: &KronModel, family: &KronFamily) -> Result<TorsionPair, SheafError> {
    use KronIndec::*;
    let all_pre = || (1..=model.k_max).map(|k| kron(Pre(k)));
    let all_inj = || (1..=model.k_max).map(|k| kron(Inj(k)));
    let reg = |x: Point| kron(Reg { x, d: 1 });
    let check_n = |n: u32| {
        if n == 0 || n + 1 > model.k_max {
            Err(SheafError::Window(format!("index {n} needs 1..{} inside the window", n + 1)))
        } else {
            Ok(())
        }
    };
    let (t, f): (Vec<Indec>, Vec<Indec>) = match family {
        KronFamily::RegularAt(p) => {
            if p.iter().any(|x| x.0 >= model.points) {
                return Err(SheafError::BadParameters(String::from("point outside the sample")));
            }
            let t = p.iter().map(|x| reg(*x)).chain(all_inj()).collect();
            let f = all_pre().chain(model.sample().into_iter().filter(|x| !p.contains(x)).map(reg)).collect();
            (t, f)
        }
        KronFamily::InjectivesUpTo(n) => {
            check_n(*n)?;
            let t = (1..=*n).map(|m| kron(Inj(m))).collect();
            let f = all_pre().chain(model.sample().into_iter().map(reg)).chain((n + 1..=model.k_max).map(|m| kron(Inj(m)))).collect();
            (t, f)
        }
        KronFamily::AbovePre(n) => {
            check_n(*n)?;
            let t = (n + 1..=model.k_max).map(|m| kron(Pre(m))).chain(model.sample().into_iter().map(reg)).chain(all_inj()).collect();
            let f = (1..=*n).map(|m| kron(Pre(m))).collect();
            (t, f)
        }
        KronFamily::Simples => (vec![kron(Pre(1))], vec![kron(Inj(1))]),
    };
    Ok(TorsionPair { t: amb.closure_of(&t)?, f: amb.closure_of(&f)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{hn_filtration, is_finest, validate};
    use crate::torsion::validate_torsion;

    fn setup() -> (KronModel, Ambient) {
        let m = KronModel::default();
        let a = m.ambient().unwrap();
        (m, a)
    }

    /// `dim Hom - dim Ext` from the Euler form of the quiver.
    fn euler(a: (u32, u32), b: (u32, u32)) -> i64 {
        (a.0 * b.0 + a.1 * b.1) as i64 - 2 * (a.0 * b.1) as i64
    }

    #[test]
    fn carrier_size() {
        let (_, a) = setup();
        assert_eq!(a.len(), 18);
    }

    #[test]
    fn hom_examples() {
        assert!(hom_nonzero_kron(&KronIndec::Pre(1), &KronIndec::Pre(2)));
        assert!(!hom_nonzero_kron(&KronIndec::Pre(1), &KronIndec::Inj(1)));
        assert!(!hom_nonzero_kron(&KronIndec::Inj(1), &KronIndec::Pre(3)));
    }

    #[test]
    fn hom_and_ext_against_euler_form() {
        // Hom and Ext never both vanish unless the form does, and the sign of
        // the form decides which one survives between directing modules.
        let (m, _) = setup();
        let mut objs: Vec<KronIndec> = (1..=5).flat_map(|k| [KronIndec::Pre(k), KronIndec::Inj(k)]).collect();
        objs.push(KronIndec::Reg { x: Point(0), d: 1 });
        objs.push(KronIndec::Reg { x: Point(1), d: 2 });
        for a in &objs {
            for b in &objs {
                let hom = hom_nonzero_kron(a, b);
                let ext = !middle_terms_kron(b, a, m.points).is_empty();
                let e = euler(a.dim(), b.dim());
                if e > 0 {
                    assert!(hom, "{a} {b}");
                }
                if e < 0 {
                    assert!(ext, "{a} {b}");
                }
                let regular_pair = matches!(a, KronIndec::Reg { .. }) && matches!(b, KronIndec::Reg { .. });
                if !regular_pair {
                    assert!(!(hom && ext), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn both_finest_classes_validate() {
        let (m, a) = setup();
        let d1 = finest_kron_directing(&a, &m, &[Point(1), Point(0), Point(2)]).unwrap();
        let r = validate(&a, &d1);
        assert!(r.valid, "{r:?}");
        assert!(is_finest(&a, &d1).finest);
        let d2 = finest_kron_simples(&a).unwrap();
        let r = validate(&a, &d2);
        assert!(r.valid, "{r:?}");
        assert!(is_finest(&a, &d2).finest);
    }

    #[test]
    fn dimension_vector_filtration() {
        let (_, a) = setup();
        let d2 = finest_kron_simples(&a).unwrap();
        let hn = hn_filtration(&a, &d2, &kron(KronIndec::Pre(2))).unwrap();
        assert_eq!(hn.steps.len(), 2);
        assert_eq!(hn.steps[0].phase, Phase::Int(2));
        assert_eq!(hn.steps[0].factors, [kron(KronIndec::Pre(1)); 2]);
        assert_eq!(hn.steps[1].factors, [kron(KronIndec::Inj(1))]);
    }

    #[test]
    fn table_rows_validate() {
        let (m, a) = setup();
        for fam in [
            KronFamily::RegularAt(vec![]),
            KronFamily::RegularAt(vec![Point(0), Point(2)]),
            KronFamily::InjectivesUpTo(2),
            KronFamily::AbovePre(3),
            KronFamily::Simples,
        ] {
            let tp = torsion_family_kron(&a, &m, &fam).unwrap();
            let r = validate_torsion(&a, &tp);
            assert!(r.valid, "{fam:?} {r:?}");
        }
        let tp = torsion_family_kron(&a, &m, &KronFamily::InjectivesUpTo(2)).unwrap();
        assert_eq!(a.indecs(tp.t), [kron(KronIndec::Inj(1)), kron(KronIndec::Inj(2))]);
        assert!(matches!(torsion_family_kron(&a, &m, &KronFamily::AbovePre(6)), Err(SheafError::Window(_))));
    }
}
