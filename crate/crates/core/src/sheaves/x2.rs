//! Coherent sheaves on the weighted projective line with one point of weight two.
//!
//! Degrees are stored as `d = 2l + e` for `l c + e x1`, so `c` has degree 2
//! and the degree order of the string group is the order of the integers.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{distributions, point_phase, rank_one_lifts, rank_one_middle, rank_one_rep};
use crate::ambient::{Ambient, CategoryModel, Split};
use crate::error::SheafError;
use crate::indec::{Indec, Point, POINT_LABELS};
use crate::order::{explicit_order, Phase, Rational};
use crate::stability::StabilityData;
use crate::torsion::TorsionPair;
use crate::tube::{self, SegmentRep, TubeIndec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum X2Indec {
    /// `O(d)` with `d = 2l + e` standing for `l c + e x1`.
    Line(i32),
    /// `S_{1,j}^(t)` in the exceptional tube of rank two.
    Exc { j: u32, t: u32 },
    Ord { x: Point, t: u32 },
}

pub fn degree_label(d: i32) -> String {
    let (l, e) = (d.div_euclid(2), d.rem_euclid(2));
    let c = match l {
        1 => "c".into(),
        -1 => "-c".into(),
        l => format!("{l}c"),
    };
    match (e, l) {
        (0, 0) => "0".into(),
        (0, _) => c,
        (_, 0) => "x1".into(),
        (_, l) if l > 0 => format!("x1+{c}"),
        _ => format!("x1{c}"),
    }
}

impl fmt::Display for X2Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            X2Indec::Line(d) => write!(f, "O({})", degree_label(*d)),
            X2Indec::Exc { j, t } => write!(f, "S[1,{j}]^({t})"),
            X2Indec::Ord { x, t } => write!(f, "S[{x}]^({t})"),
        }
    }
}

fn parity(d: i32) -> u32 {
    d.rem_euclid(2) as u32
}

fn exc_tube(j: u32, t: u32) -> TubeIndec {
    TubeIndec { n: 2, j, t }
}

pub fn hom_nonzero_x2(x: &X2Indec, y: &X2Indec) -> bool {
    use X2Indec::*;
    match (*x, *y) {
        (Line(d), Line(e)) => d <= e,
        // the line maps onto S_{1,d}, and Hom from a line is exact on torsion
        (Line(d), Exc { j, t }) => t >= 2 || j == parity(d),
        (Line(_), Ord { .. }) => true,
        (Exc { j, t }, Exc { j: k, t: s }) => tube::hom_nonzero(&exc_tube(j, t), &exc_tube(k, s)).unwrap_or(false),
        (Ord { x, .. }, Ord { x: y, .. }) => x == y,
        _ => false,
    }
}

/// Middle terms of the non-split sequences `0 -> a -> E -> b -> 0`.
pub fn middle_terms_x2(a: &X2Indec, b: &X2Indec) -> Vec<Vec<X2Indec>> {
    use X2Indec::*;
    match (*a, *b) {
        (Line(e), Line(d)) if d - e >= 3 => (e + 1..d)
            .filter(|p| 2 * p <= d + e)
            .filter(|p| (p - e) % 2 == 0 || (d - p) % 2 == 0)
            .map(|p| vec![Line(p), Line(d + e - p)])
            .collect(),
        (Line(e), Ord { x, t }) => (1..=t)
            .map(|s| {
                let mut m = vec![Line(e + 2 * s as i32)];
                if s < t {
                    m.push(Ord { x, t: t - s });
                }
                m
            })
            .collect(),
        // the segment [b0, b1] of the quotient must reach the line's top e
        (Line(e), Exc { j, t }) => (e + 1..=e + t as i32)
            .filter(|b1| parity(*b1) == j)
            .map(|b1| {
                let b0 = b1 - t as i32 + 1;
                if b0 == e + 1 {
                    vec![Line(b1)]
                } else {
                    vec![Line(b1), Exc { j: parity(e), t: (e - b0 + 1) as u32 }]
                }
            })
            .collect(),
        (Exc { j, t }, Exc { j: k, t: s }) => tube::middle_terms(&exc_tube(j, t), &exc_tube(k, s))
            .unwrap_or_default()
            .into_iter()
            .map(|m| m.into_iter().map(|z| Exc { j: z.j, t: z.t }).collect())
            .collect(),
        (Ord { x, t: s }, Ord { x: y, t }) if x == y => rank_one_middle(s, t).into_iter().map(|m| m.into_iter().map(|t| Ord { x, t }).collect()).collect(),
        _ => Vec::new(),
    }
}

/// The Auslander-Reiten translation: twist by the dualizing element `-c-x1`.
pub fn tau_x2(x: &X2Indec) -> X2Indec {
    match *x {
        X2Indec::Line(d) => X2Indec::Line(d - 3),
        X2Indec::Exc { j, t } => X2Indec::Exc { j: (j + 1) % 2, t },
        ord => ord,
    }
}

/// The degree window is `l` in `lmin..=lmax`, so lines `O(d)` with
/// `2 lmin <= d <= 2 lmax + 1`.
#[derive(Clone, Debug)]
pub struct X2Model {
    pub lmin: i32,
    pub lmax: i32,
    pub points: u8,
}

impl Default for X2Model {
    fn default() -> Self {
        X2Model { lmin: -4, lmax: 4, points: super::DEFAULT_POINTS }
    }
}

impl X2Model {
    pub fn new(lmin: i32, lmax: i32, points: u8) -> Result<X2Model, SheafError> {
        if lmin > lmax || points as usize > POINT_LABELS.len() {
            return Err(SheafError::BadParameters(format!("window {lmin}..{lmax} with {points} points")));
        }
        Ok(X2Model { lmin, lmax, points })
    }

    pub fn ambient(&self) -> Result<Ambient, SheafError> {
        Ok(Ambient::new(alloc::boxed::Box::new(self.clone()))?)
    }

    pub fn lowest(&self) -> i32 {
        2 * self.lmin
    }

    pub fn highest(&self) -> i32 {
        2 * self.lmax + 1
    }

    pub fn sample(&self) -> Vec<Point> {
        (0..self.points).map(Point).collect()
    }

    fn get(x: &Indec) -> X2Indec {
        match x {
            Indec::X2(p) => *p,
            _ => panic!("weighted projective line ambient holds its own sheaves"),
        }
    }

    fn torsion_quotients(&self, d: i32, r: u32) -> Vec<Vec<Indec>> {
        let mut out = Vec::new();
        for a in (r % 2..=r).step_by(2) {
            for dist in distributions((r - a) / 2, self.points as usize) {
                let mut q = Vec::new();
                if a > 0 {
                    q.push(Indec::X2(X2Indec::Exc { j: parity(d), t: a }));
                }
                q.extend(dist.iter().enumerate().filter(|(_, t)| **t > 0).map(|(i, t)| Indec::X2(X2Indec::Ord { x: Point(i as u8), t: *t })));
                out.push(q);
            }
        }
        out
    }
}

impl CategoryModel for X2Model {
    fn spec(&self) -> String {
        format!("x2:window={}..{}:points={}", self.lmin, self.lmax, self.points)
    }

    fn carrier(&self) -> Vec<Indec> {
        let mut v: Vec<Indec> = (self.lowest()..=self.highest()).map(|d| Indec::X2(X2Indec::Line(d))).collect();
        v.extend(tube::all_reps(2).into_iter().map(|r| Indec::X2(X2Indec::Exc { j: r.0.j, t: r.0.t })));
        for x in self.sample() {
            for t in 1..=2 {
                v.push(Indec::X2(X2Indec::Ord { x, t }));
            }
        }
        v
    }

    fn scope(&self) -> Vec<Indec> {
        let mut v: Vec<Indec> = (self.lowest() + 1..=self.highest()).map(|d| Indec::X2(X2Indec::Line(d))).collect();
        for t in 1..=6 {
            for j in 0..2 {
                v.push(Indec::X2(X2Indec::Exc { j, t }));
            }
        }
        for x in self.sample() {
            for t in 1..=3 {
                v.push(Indec::X2(X2Indec::Ord { x, t }));
            }
        }
        v
    }

    fn rep(&self, x: &Indec) -> Option<Indec> {
        let Indec::X2(p) = x else { return None };
        let r = match *p {
            X2Indec::Line(d) if (self.lowest()..=self.highest()).contains(&d) => X2Indec::Line(d),
            X2Indec::Exc { j, t } if j < 2 && t > 0 => {
                let r = exc_tube(j, t).truncate_rep().0;
                X2Indec::Exc { j: r.j, t: r.t }
            }
            X2Indec::Ord { x, t } if x.0 < self.points && t > 0 => X2Indec::Ord { x, t: rank_one_rep(t) },
            _ => return None,
        };
        Some(Indec::X2(r))
    }

    fn lifts(&self, x: &Indec) -> Vec<Indec> {
        match Self::get(x) {
            X2Indec::Exc { j, t } => SegmentRep(exc_tube(j, t)).lifts().into_iter().map(|z| Indec::X2(X2Indec::Exc { j: z.j, t: z.t })).collect(),
            X2Indec::Ord { x, t } => rank_one_lifts(t).into_iter().map(|t| Indec::X2(X2Indec::Ord { x, t })).collect(),
            line => vec![Indec::X2(line)],
        }
    }

    fn hom_nonzero(&self, x: &Indec, y: &Indec) -> bool {
        hom_nonzero_x2(&Self::get(x), &Self::get(y))
    }

    fn middle_terms(&self, a: &Indec, b: &Indec) -> Vec<Vec<Indec>> {
        middle_terms_x2(&Self::get(a), &Self::get(b)).into_iter().map(|e| e.into_iter().map(Indec::X2).collect()).collect()
    }

    fn splits(&self, x: &Indec) -> Vec<Split> {
        match Self::get(x) {
            X2Indec::Line(d) => {
                let mut out = Vec::new();
                for sub in self.lowest()..d {
                    for q in self.torsion_quotients(d, (d - sub) as u32) {
                        out.push((vec![Indec::X2(X2Indec::Line(sub))], q));
                    }
                }
                out
            }
            X2Indec::Exc { j, t } => {
                let z = exc_tube(j, t);
                (1..t)
                    .map(|r| {
                        let (s, q) = (z.sub(r), z.quotient(r));
                        (vec![Indec::X2(X2Indec::Exc { j: s.j, t: s.t })], vec![Indec::X2(X2Indec::Exc { j: q.j, t: q.t })])
                    })
                    .collect()
            }
            X2Indec::Ord { x, t } => (1..t).map(|r| (vec![Indec::X2(X2Indec::Ord { x, t: r })], vec![Indec::X2(X2Indec::Ord { x, t: t - r })])).collect(),
        }
    }

    fn length(&self, x: &Indec) -> Option<u32> {
        match Self::get(x) {
            X2Indec::Exc { t, .. } | X2Indec::Ord { t, .. } => Some(t),
            X2Indec::Line(_) => None,
        }
    }

    fn sub_of_length(&self, x: &Indec, r: u32) -> Option<Indec> {
        match Self::get(x) {
            X2Indec::Exc { j, t } if (1..=t).contains(&r) => {
                let s = exc_tube(j, t).sub(r);
                Some(Indec::X2(X2Indec::Exc { j: s.j, t: s.t }))
            }
            X2Indec::Ord { x, t } if (1..=t).contains(&r) => Some(Indec::X2(X2Indec::Ord { x, t: r })),
            _ => None,
        }
    }

    fn windowed(&self) -> bool {
        true
    }
}

fn line(d: i32) -> Indec {
    Indec::X2(X2Indec::Line(d))
}

fn exc(j: i32, t: u32) -> Indec {
    Indec::X2(X2Indec::Exc { j: parity(j), t })
}

fn ord(x: Point) -> Indec {
    Indec::X2(X2Indec::Ord { x, t: 1 })
}

pub fn line_phase(d: i32) -> Phase {
    Phase::Label(format!("O({})", degree_label(d)))
}

/// Elements of the torsion part of the phase set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XTilde {
    /// `(inf, 0)` carrying `S_{1,0}`.
    Exc0,
    /// `(inf, 1/2)` carrying `S_{1,1}^(2)`.
    ExcHalf,
    /// `(inf, 1)` carrying `S_{1,1}`.
    Exc1,
    Point(Point),
}

impl XTilde {
    pub fn phase(&self) -> Phase {
        match self {
            XTilde::Exc0 => Phase::pair(Phase::Infinity, Phase::Int(0)),
            XTilde::ExcHalf => Phase::pair(Phase::Infinity, Phase::Rational(Rational::new(1, 2).expect("nonzero denominator"))),
            XTilde::Exc1 => Phase::pair(Phase::Infinity, Phase::Int(1)),
            XTilde::Point(x) => point_phase(*x),
        }
    }

    fn generator(&self) -> Indec {
        match self {
            XTilde::Exc0 => exc(0, 1),
            XTilde::ExcHalf => exc(1, 2),
            XTilde::Exc1 => exc(1, 1),
            XTilde::Point(x) => ord(*x),
        }
    }

    /// The three exceptional elements, then the sample points.
    pub fn standard(model: &X2Model) -> Vec<XTilde> {
        let mut v = vec![XTilde::Exc0, XTilde::ExcHalf, XTilde::Exc1];
        v.extend(model.sample().into_iter().map(XTilde::Point));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum X2Family {
    /// Every line bundle semistable.
    FullL,
    /// Semistable lines `k c` with `k < m` and all of `x1 + Z c`.
    Lm(i32),
    /// Semistable lines `x1 + Z c` only.
    Coset,
}

fn check_xtilde(model: &X2Model, family: X2Family, xt: &[XTilde]) -> Result<(), SheafError> {
    let mut sorted = xt.to_vec();
    sorted.sort();
    let mut expected = XTilde::standard(model);
    expected.sort();
    if sorted != expected {
        return Err(SheafError::BadParameters(String::from("torsion phases must list the exceptional elements and every sample point once")));
    }
    let pos = |e: XTilde| xt.iter().position(|z| *z == e).unwrap_or(usize::MAX);
    if !(pos(XTilde::Exc0) < pos(XTilde::ExcHalf) && pos(XTilde::ExcHalf) < pos(XTilde::Exc1)) {
        return Err(SheafError::BadParameters(String::from("exceptional phases must increase")));
    }
    if family != X2Family::FullL && pos(XTilde::Exc0) != 0 {
        return Err(SheafError::BadParameters(String::from("this family places S[1,0] below the other torsion phases")));
    }
    Ok(())
}

pub fn finest_x2(amb: &Ambient, model: &X2Model, family: X2Family, xtilde: &[XTilde]) -> Result<StabilityData, SheafError> {
    check_xtilde(model, family, xtilde)?;
    let (lo, hi) = (model.lowest(), model.highest());
    let mut seq: Vec<(Phase, Indec)> = Vec::new();
    let torsion = |seq: &mut Vec<(Phase, Indec)>, xs: &[XTilde]| seq.extend(xs.iter().map(|z| (z.phase(), z.generator())));
    match family {
        X2Family::FullL => {
            seq.extend((lo..=hi).map(|d| (line_phase(d), line(d))));
            torsion(&mut seq, xtilde);
        }
        X2Family::Lm(m) => {
            if lo > 2 * m - 2 || 2 * m > hi {
                return Err(SheafError::Window(format!("m = {m} needs degrees {}..{} inside the window", 2 * m - 2, 2 * m)));
            }
            for d in lo..=hi {
                if d % 2 != 0 || d <= 2 * m - 2 {
                    seq.push((line_phase(d), line(d)));
                }
                if d == 2 * m - 2 {
                    torsion(&mut seq, &xtilde[..1]);
                }
            }
            torsion(&mut seq, &xtilde[1..]);
        }
        X2Family::Coset => {
            torsion(&mut seq, &xtilde[..1]);
            seq.extend((lo..=hi).filter(|d| d % 2 != 0).map(|d| (line_phase(d), line(d))));
            torsion(&mut seq, &xtilde[1..]);
        }
    }
    let order = explicit_order(seq.iter().map(|(p, _)| p.clone()).collect())?;
    let mut pieces = Vec::new();
    for (p, g) in seq {
        pieces.push((p, amb.closure_of(&[g])?));
    }
    Ok(StabilityData::new(order, pieces).expect("phases come from the order"))
}

/// Slope data: one phase per degree and one for all torsion sheaves.
pub fn slope_data_x2(amb: &Ambient, model: &X2Model) -> Result<StabilityData, SheafError> {
    let mut phases = Vec::new();
    let mut pieces = Vec::new();
    for d in model.lowest()..=model.highest() {
        phases.push(Phase::Int(d as i64));
        pieces.push((Phase::Int(d as i64), amb.closure_of(&[line(d)])?));
    }
    let mut simples = vec![exc(0, 1), exc(1, 1)];
    simples.extend(model.sample().into_iter().map(ord));
    phases.push(Phase::Infinity);
    pieces.push((Phase::Infinity, amb.closure_of(&simples)?));
    Ok(StabilityData::new(explicit_order(phases)?, pieces).expect("phases come from the order"))
}

/// Rows of the torsion pair table, before the degree shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum X2Row {
    /// Torsion at a non-empty set of points; `infinity` takes the whole
    /// exceptional tube.
    I { points: Vec<Point>, infinity: bool },
    /// `S_{1,1}` with the ordinary simples at `Q`.
    II(Vec<Point>),
    /// `S_{1,1}^(2)`, `S_{1,1}` with the ordinary simples at `Q`.
    III(Vec<Point>),
    /// Lines of degree at least `0` with all torsion.
    IV,
    /// Lines `x1 + t c`, `t >= 0`, with all torsion except `S_{1,0}`.
    V,
    /// Everything except `S_{1,0}` and the lines `t c`.
    VI,
}

impl X2Row {
    /// Pairs coming from a tilting object.
    pub fn is_tilting(&self) -> bool {
        matches!(self, X2Row::IV | X2Row::V)
    }
}

/// Instantiates a row twisted by `shift` copies of `x1`.
pub fn torsion_family_x2(amb: &Ambient, model: &X2Model, row: &X2Row, shift: i32) -> Result<TorsionPair, SheafError> {
    let (lo, hi) = (model.lowest(), model.highest());
    let s = shift;
    let lines = |pred: &dyn Fn(i32) -> bool| -> Vec<Indec> { (lo..=hi).filter(|d| pred(d - s)).map(line).collect() };
    let ords = |pred: &dyn Fn(Point) -> bool| -> Vec<Indec> { model.sample().into_iter().filter(|x| pred(*x)).map(ord).collect() };
    let check = |q: &[Point]| {
        if q.iter().any(|x| x.0 >= model.points) {
            Err(SheafError::BadParameters(String::from("point outside the sample")))
        } else {
            Ok(())
        }
    };
    let s0 = exc(s, 1);
    let s1 = exc(s + 1, 1);
    let s1_2 = exc(s + 1, 2);
    let (t, f): (Vec<Indec>, Vec<Indec>) = match row {
        X2Row::I { points, infinity } => {
            if points.is_empty() && !infinity {
                return Err(SheafError::EmptyPointSet);
            }
            check(points)?;
            let mut t = ords(&|x| points.contains(&x));
            let mut f = lines(&|_| true);
            f.extend(ords(&|x| !points.contains(&x)));
            if *infinity { t.extend([s0, s1]) } else { f.extend([s0, s1]) }
            (t, f)
        }
        X2Row::II(q) | X2Row::III(q) => {
            check(q)?;
            let mut t = vec![s1];
            let mut f = lines(&|_| true);
            f.push(s0);
            if matches!(row, X2Row::III(_)) { t.push(s1_2) } else { f.push(s1_2) }
            t.extend(ords(&|x| q.contains(&x)));
            f.extend(ords(&|x| !q.contains(&x)));
            (t, f)
        }
        X2Row::IV => {
            if s - 1 < lo || s + 1 > hi {
                return Err(SheafError::Window(format!("shift {s} needs degrees {}..{} inside the window", s - 1, s + 1)));
            }
            let mut t = lines(&|d| d >= 0);
            t.extend([s0, s1]);
            t.extend(ords(&|_| true));
            (t, lines(&|d| d < 0))
        }
        X2Row::V => {
            if s < lo || s + 2 > hi {
                return Err(SheafError::Window(format!("shift {s} needs degrees {}..{} inside the window", s, s + 2)));
            }
            let mut t = lines(&|d| d >= 1 && d % 2 != 0);
            t.extend([s1_2, s1]);
            t.extend(ords(&|_| true));
            let mut f = lines(&|d| d < 1);
            f.push(s0);
            (t, f)
        }
        X2Row::VI => {
            let mut t = lines(&|d| d % 2 != 0);
            t.extend([s1_2, s1]);
            t.extend(ords(&|_| true));
            (t, vec![s0])
        }
    };
    Ok(TorsionPair { t: amb.closure_of(&t)?, f: amb.closure_of(&f)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{hn_filtration, is_coarser, is_finest, validate, HnEngine};
    use crate::torsion::validate_torsion;
    use std::sync::OnceLock;

    fn default_ambient() -> &'static (X2Model, Ambient) {
        static A: OnceLock<(X2Model, Ambient)> = OnceLock::new();
        A.get_or_init(|| {
            let m = X2Model::default();
            let a = m.ambient().unwrap();
            (m, a)
        })
    }

    fn families(m: &X2Model) -> Vec<(X2Family, Vec<XTilde>)> {
        let mixed = vec![XTilde::Exc0, XTilde::Point(Point(1)), XTilde::ExcHalf, XTilde::Point(Point(0)), XTilde::Exc1, XTilde::Point(Point(2))];
        vec![
            (X2Family::FullL, XTilde::standard(m)),
            (X2Family::FullL, vec![XTilde::Point(Point(2)), XTilde::Exc0, XTilde::Point(Point(0)), XTilde::ExcHalf, XTilde::Exc1, XTilde::Point(Point(1))]),
            (X2Family::Lm(0), XTilde::standard(m)),
            (X2Family::Lm(3), mixed.clone()),
            (X2Family::Coset, XTilde::standard(m)),
            (X2Family::Coset, mixed),
        ]
    }

    fn ex(j: u32, t: u32) -> X2Indec {
        X2Indec::Exc { j, t }
    }

    #[test]
    fn labels() {
        assert_eq!(degree_label(0), "0");
        assert_eq!(degree_label(3), "x1+c");
        assert_eq!(degree_label(-1), "x1-c");
        assert_eq!(degree_label(-4), "-2c");
        assert_eq!(X2Indec::Line(1).to_string(), "O(x1)");
    }

    #[test]
    fn hom_examples() {
        assert!(hom_nonzero_x2(&X2Indec::Line(0), &X2Indec::Line(1)));
        assert!(!hom_nonzero_x2(&X2Indec::Line(1), &X2Indec::Line(0)));
        assert!(hom_nonzero_x2(&X2Indec::Line(0), &ex(0, 1)));
        assert!(!hom_nonzero_x2(&X2Indec::Line(0), &ex(1, 1)));
        assert!(!hom_nonzero_x2(&ex(0, 1), &X2Indec::Line(5)));
    }

    #[test]
    fn defining_sequences() {
        // 0 -> O((j-1)x1) -> O(j x1) -> S_{1,j} -> 0
        assert_eq!(middle_terms_x2(&X2Indec::Line(-1), &ex(0, 1)), [vec![X2Indec::Line(0)]]);
        assert_eq!(middle_terms_x2(&X2Indec::Line(0), &ex(1, 1)), [vec![X2Indec::Line(1)]]);
        assert!(middle_terms_x2(&X2Indec::Line(0), &ex(0, 1)).is_empty());
        assert_eq!(middle_terms_x2(&X2Indec::Line(0), &X2Indec::Ord { x: Point(1), t: 1 }), [vec![X2Indec::Line(2)]]);
        assert_eq!(middle_terms_x2(&X2Indec::Line(0), &X2Indec::Line(3)), [vec![X2Indec::Line(1), X2Indec::Line(2)]]);
        assert_eq!(middle_terms_x2(&X2Indec::Line(0), &X2Indec::Line(4)), [vec![X2Indec::Line(2), X2Indec::Line(2)]]);
    }

    #[test]
    fn ext_is_dual_to_hom_into_translate() {
        let mut objs: Vec<X2Indec> = (-4..=4).map(X2Indec::Line).collect();
        for t in 1..=5 {
            objs.extend([ex(0, t), ex(1, t)]);
        }
        objs.extend([X2Indec::Ord { x: Point(0), t: 1 }, X2Indec::Ord { x: Point(0), t: 3 }, X2Indec::Ord { x: Point(1), t: 2 }]);
        for x in &objs {
            for y in &objs {
                let ext = !middle_terms_x2(y, x).is_empty();
                assert_eq!(ext, hom_nonzero_x2(y, &tau_x2(x)), "Ext({x}, {y})");
            }
        }
    }

    #[test]
    fn finest_families_validate() {
        let (m, a) = default_ambient();
        for (fam, xt) in families(m) {
            let d = finest_x2(a, m, fam, &xt).unwrap();
            let r = validate(a, &d);
            assert!(r.valid, "{fam:?} {r:?}");
            assert!(is_finest(a, &d).finest, "{fam:?}");
        }
    }

    #[test]
    fn family_parameters_are_checked() {
        let (m, a) = default_ambient();
        let mut bad = XTilde::standard(m);
        bad.swap(0, 1);
        assert!(matches!(finest_x2(a, m, X2Family::FullL, &bad), Err(SheafError::BadParameters(_))));
        let late = vec![XTilde::Point(Point(0)), XTilde::Exc0, XTilde::ExcHalf, XTilde::Exc1, XTilde::Point(Point(1)), XTilde::Point(Point(2))];
        assert!(finest_x2(a, m, X2Family::FullL, &late).is_ok());
        assert!(matches!(finest_x2(a, m, X2Family::Coset, &late), Err(SheafError::BadParameters(_))));
        assert!(matches!(finest_x2(a, m, X2Family::Lm(5), &XTilde::standard(m)), Err(SheafError::Window(_))));
        assert!(matches!(finest_x2(a, m, X2Family::Lm(-4), &XTilde::standard(m)), Err(SheafError::Window(_))));
    }

    #[test]
    fn coset_filtrations() {
        let (m, a) = default_ambient();
        let d = finest_x2(a, m, X2Family::Coset, &XTilde::standard(m)).unwrap();
        let eng = HnEngine::new(a, &d);
        let factors = |x: X2Indec| -> Vec<Vec<Indec>> { eng.filtration(&Indec::X2(x)).unwrap().steps.into_iter().map(|s| s.factors).collect() };
        for k in -3..=4 {
            assert_eq!(factors(X2Indec::Line(2 * k)), [vec![line(2 * k - 1)], vec![exc(0, 1)]], "O({k}c)");
        }
        for n in 1..=2 {
            assert_eq!(factors(ex(1, 2 * n + 1)), [vec![exc(1, 1)], vec![exc(1, 2 * n)]]);
            assert_eq!(factors(ex(0, 2 * n + 1)), [vec![exc(1, 2 * n)], vec![exc(0, 1)]]);
        }
        assert_eq!(factors(ex(0, 2)), [vec![exc(1, 1)], vec![exc(0, 1)]]);
        for n in 1..=2 {
            assert_eq!(factors(ex(0, 2 * n + 2)), [vec![exc(1, 1)], vec![exc(1, 2 * n)], vec![exc(0, 1)]]);
        }
    }

    #[test]
    fn coset_non_semistable_objects_are_the_listed_ones() {
        let (m, a) = default_ambient();
        let d = finest_x2(a, m, X2Family::Coset, &XTilde::standard(m)).unwrap();
        let eng = HnEngine::new(a, &d);
        for x in a.scope() {
            let listed = match X2Model::get(x) {
                X2Indec::Line(d) => d % 2 == 0,
                X2Indec::Exc { j: 1, t } => t % 2 == 1 && t >= 3,
                X2Indec::Exc { j: 0, t } => t >= 2,
                _ => false,
            };
            assert_eq!(!eng.filtration(x).unwrap().is_trivial(), listed, "{x}");
        }
    }

    #[test]
    fn semistable_lines_per_family() {
        let (m, a) = default_ambient();
        let semistable = |fam: X2Family| -> Vec<i32> {
            let d = finest_x2(a, m, fam, &XTilde::standard(m)).unwrap();
            let eng = HnEngine::new(a, &d);
            (m.lowest() + 1..=m.highest()).filter(|d| eng.filtration(&line(*d)).unwrap().is_trivial()).collect()
        };
        assert_eq!(semistable(X2Family::FullL), (m.lowest() + 1..=m.highest()).collect::<Vec<_>>());
        // O(kc) is semistable exactly for k < 0
        let l0 = semistable(X2Family::Lm(0));
        for d in m.lowest() + 1..=m.highest() {
            assert_eq!(l0.contains(&d), d % 2 != 0 || d < 0, "{d}");
        }
        assert!(semistable(X2Family::Coset).iter().all(|d| d % 2 != 0));
    }

    #[test]
    fn unstable_lines_split_off_one_simple() {
        let (m, a) = default_ambient();
        for (fam, xt) in families(m) {
            let d = finest_x2(a, m, fam, &xt).unwrap();
            for e in m.lowest() + 1..=m.highest() {
                let hn = hn_filtration(a, &d, &line(e)).unwrap();
                if hn.is_trivial() {
                    continue;
                }
                let f: Vec<Vec<Indec>> = hn.steps.into_iter().map(|s| s.factors).collect();
                assert_eq!(f, [vec![line(e - 1)], vec![exc(e, 1)]], "{fam:?} O({e})");
                assert!(hn_filtration(a, &d, &line(e - 1)).unwrap().is_trivial());
            }
        }
    }

    #[test]
    fn slope_comparison() {
        let (m, a) = default_ambient();
        let slope = slope_data_x2(a, m).unwrap();
        assert!(validate(a, &slope).valid);
        let full = finest_x2(a, m, X2Family::FullL, &XTilde::standard(m)).unwrap();
        assert!(is_coarser(a, &slope, &full).is_some());
        let coset = finest_x2(a, m, X2Family::Coset, &XTilde::standard(m)).unwrap();
        assert!(is_coarser(a, &slope, &coset).is_none());
    }

    #[test]
    fn table_rows_validate() {
        let (m, a) = default_ambient();
        let rows = [
            X2Row::I { points: vec![Point(0)], infinity: false },
            X2Row::I { points: vec![], infinity: true },
            X2Row::I { points: vec![Point(1), Point(2)], infinity: true },
            X2Row::II(vec![]),
            X2Row::II(vec![Point(2)]),
            X2Row::III(vec![]),
            X2Row::III(vec![Point(0), Point(1)]),
            X2Row::IV,
            X2Row::V,
            X2Row::VI,
        ];
        for row in &rows {
            for shift in [0, 1, -3] {
                let tp = torsion_family_x2(a, m, row, shift).unwrap();
                let r = validate_torsion(a, &tp);
                assert!(r.valid, "{row:?} shift {shift}: {r:?}");
                assert!(!tp.is_trivial(a));
            }
        }
        assert!(X2Row::IV.is_tilting() && X2Row::V.is_tilting() && !X2Row::VI.is_tilting());
        assert_eq!(torsion_family_x2(a, m, &X2Row::I { points: vec![], infinity: false }, 0), Err(SheafError::EmptyPointSet));
        assert!(matches!(torsion_family_x2(a, m, &X2Row::IV, m.highest()), Err(SheafError::Window(_))));
        let ii = torsion_family_x2(a, m, &X2Row::II(vec![]), 0).unwrap();
        assert_eq!(a.indecs(ii.t), [exc(1, 1)]);
    }
}
