//! Coherent sheaves on the projective line, in a degree window.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{distributions, point_phase, rank_one_lifts, rank_one_middle, rank_one_rep};
use crate::ambient::{Ambient, CategoryModel, Split};
use crate::bits::Members;
use crate::error::SheafError;
use crate::indec::{Indec, Point, POINT_LABELS};
use crate::order::{explicit_order, Phase};
use crate::stability::StabilityData;
use crate::torsion::TorsionPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Indec {
    Line(i32),
    Torsion { x: Point, t: u32 },
}

impl fmt::Display for P1Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Indec::Line(n) => write!(f, "O({n})"),
            P1Indec::Torsion { x, t } => write!(f, "S[{x}]^({t})"),
        }
    }
}

pub fn hom_nonzero_p1(x: &P1Indec, y: &P1Indec) -> bool {
    match (x, y) {
        (P1Indec::Line(m), P1Indec::Line(n)) => m <= n,
        (P1Indec::Line(_), P1Indec::Torsion { .. }) => true,
        (P1Indec::Torsion { .. }, P1Indec::Line(_)) => false,
        (P1Indec::Torsion { x, .. }, P1Indec::Torsion { x: y, .. }) => x == y,
    }
}

/// Middle terms of the non-split sequences `0 -> a -> E -> b -> 0`.
pub fn middle_terms_p1(a: &P1Indec, b: &P1Indec) -> Vec<Vec<P1Indec>> {
    match (*a, *b) {
        (P1Indec::Line(lo), P1Indec::Line(hi)) => (lo + 1..hi).filter(|c| 2 * c <= lo + hi).map(|c| vec![P1Indec::Line(c), P1Indec::Line(lo + hi - c)]).collect(),
        (P1Indec::Line(n), P1Indec::Torsion { x, t }) => (1..=t)
            .map(|s| {
                let mut e = vec![P1Indec::Line(n + s as i32)];
                if s < t {
                    e.push(P1Indec::Torsion { x, t: t - s });
                }
                e
            })
            .collect(),
        (P1Indec::Torsion { x, t: s }, P1Indec::Torsion { x: y, t }) if x == y => rank_one_middle(s, t).into_iter().map(|e| e.into_iter().map(|t| P1Indec::Torsion { x, t }).collect()).collect(),
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub struct P1Model {
    pub lo: i32,
    pub hi: i32,
    pub points: u8,
}

impl Default for P1Model {
    fn default() -> Self {
        P1Model { lo: -5, hi: 5, points: super::DEFAULT_POINTS }
    }
}

impl P1Model {
    pub fn new(lo: i32, hi: i32, points: u8) -> Result<P1Model, SheafError> {
        if lo > hi || points as usize > POINT_LABELS.len() {
            return Err(SheafError::BadParameters(format!("window {lo}..{hi} with {points} points")));
        }
        Ok(P1Model { lo, hi, points })
    }

    pub fn ambient(&self) -> Result<Ambient, SheafError> {
        Ok(Ambient::new(alloc::boxed::Box::new(self.clone()))?)
    }

    pub fn sample(&self) -> Vec<Point> {
        (0..self.points).map(Point).collect()
    }

    fn get(x: &Indec) -> P1Indec {
        match x {
            Indec::P1(p) => *p,
            _ => panic!("projective line ambient holds sheaves on the projective line"),
        }
    }

    fn in_window(&self, x: &P1Indec) -> bool {
        match x {
            P1Indec::Line(n) => (self.lo..=self.hi).contains(n),
            P1Indec::Torsion { x, t } => x.0 < self.points && *t >= 1,
        }
    }
}

impl CategoryModel for P1Model {
    fn spec(&self) -> String {
        format!("p1:window={}..{}:points={}", self.lo, self.hi, self.points)
    }

    fn carrier(&self) -> Vec<Indec> {
        let mut v: Vec<Indec> = (self.lo..=self.hi).map(|n| Indec::P1(P1Indec::Line(n))).collect();
        for x in self.sample() {
            for t in 1..=2 {
                v.push(Indec::P1(P1Indec::Torsion { x, t }));
            }
        }
        v
    }

    fn scope(&self) -> Vec<Indec> {
        let mut v: Vec<Indec> = ((self.lo + 1).min(self.hi)..=self.hi).map(|n| Indec::P1(P1Indec::Line(n))).collect();
        for x in self.sample() {
            for t in 1..=3 {
                v.push(Indec::P1(P1Indec::Torsion { x, t }));
            }
        }
        v
    }

    fn rep(&self, x: &Indec) -> Option<Indec> {
        let Indec::P1(p) = x else { return None };
        if !self.in_window(p) {
            return None;
        }
        Some(Indec::P1(match *p {
            P1Indec::Torsion { x, t } => P1Indec::Torsion { x, t: rank_one_rep(t) },
            line => line,
        }))
    }

    fn lifts(&self, x: &Indec) -> Vec<Indec> {
        match Self::get(x) {
            P1Indec::Torsion { x, t } => rank_one_lifts(t).into_iter().map(|t| Indec::P1(P1Indec::Torsion { x, t })).collect(),
            line => vec![Indec::P1(line)],
        }
    }

    fn hom_nonzero(&self, x: &Indec, y: &Indec) -> bool {
        hom_nonzero_p1(&Self::get(x), &Self::get(y))
    }

    fn middle_terms(&self, a: &Indec, b: &Indec) -> Vec<Vec<Indec>> {
        middle_terms_p1(&Self::get(a), &Self::get(b)).into_iter().map(|e| e.into_iter().map(Indec::P1).collect()).collect()
    }

    fn splits(&self, x: &Indec) -> Vec<Split> {
        match Self::get(x) {
            P1Indec::Line(n) => {
                let mut out = Vec::new();
                for m in self.lo..n {
                    for dist in distributions((n - m) as u32, self.points as usize) {
                        let q: Vec<Indec> = dist.iter().enumerate().filter(|(_, t)| **t > 0).map(|(i, t)| Indec::P1(P1Indec::Torsion { x: Point(i as u8), t: *t })).collect();
                        out.push((vec![Indec::P1(P1Indec::Line(m))], q));
                    }
                }
                out
            }
            P1Indec::Torsion { x, t } => (1..t).map(|r| (vec![Indec::P1(P1Indec::Torsion { x, t: r })], vec![Indec::P1(P1Indec::Torsion { x, t: t - r })])).collect(),
        }
    }

    fn windowed(&self) -> bool {
        true
    }
}

fn line(n: i32) -> Indec {
    Indec::P1(P1Indec::Line(n))
}

fn simple(x: Point) -> Indec {
    Indec::P1(P1Indec::Torsion { x, t: 1 })
}

/// Slope data: one phase per degree and one for all torsion sheaves.
pub fn slope_data_p1(amb: &Ambient, model: &P1Model) -> Result<StabilityData, SheafError> {
    let mut phases = Vec::new();
    let mut pieces = Vec::new();
    for n in model.lo..=model.hi {
        phases.push(Phase::Int(n as i64));
        pieces.push((Phase::Int(n as i64), amb.closure_of(&[line(n)])?));
    }
    let torsion: Vec<Indec> = model.sample().into_iter().map(simple).collect();
    phases.push(Phase::Infinity);
    pieces.push((Phase::Infinity, amb.closure_of(&torsion)?));
    Ok(StabilityData::new(explicit_order(phases)?, pieces).expect("phases come from the order"))
}

/// Lines by increasing degree, then the points in the given order.
pub fn finest_p1(amb: &Ambient, model: &P1Model, point_order: &[Point]) -> Result<StabilityData, SheafError> {
    let mut sorted = point_order.to_vec();
    sorted.sort();
    if sorted != model.sample() {
        return Err(SheafError::BadParameters(String::from("point order must list every sample point once")));
    }
    let mut phases = Vec::new();
    let mut pieces = Vec::new();
    for n in model.lo..=model.hi {
        phases.push(Phase::Int(n as i64));
        pieces.push((Phase::Int(n as i64), amb.closure_of(&[line(n)])?));
    }
    for x in point_order {
        phases.push(point_phase(*x));
        pieces.push((point_phase(*x), amb.closure_of(&[simple(*x)])?));
    }
    Ok(StabilityData::new(explicit_order(phases)?, pieces).expect("phases come from the order"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P1Family {
    /// Torsion at a non-empty set of points.
    Points(Vec<Point>),
    /// Lines above degree `n` together with all torsion.
    Above(i32),
}

pub fn torsion_family_p1(amb: &Ambient, model: &P1Model, family: &P1Family) -> Result<TorsionPair, SheafError> {
    match family {
        P1Family::Points(p) => {
            if p.is_empty() {
                return Err(SheafError::EmptyPointSet);
            }
            if p.iter().any(|x| x.0 >= model.points) {
                return Err(SheafError::BadParameters(String::from("point outside the sample")));
            }
            let t: Vec<Indec> = p.iter().map(|x| simple(*x)).collect();
            let mut f: Vec<Indec> = (model.lo..=model.hi).map(line).collect();
            f.extend(model.sample().into_iter().filter(|x| !p.contains(x)).map(simple));
            Ok(TorsionPair { t: amb.closure_of(&t)?, f: amb.closure_of(&f)? })
        }
        P1Family::Above(n) => {
            if *n - 1 < model.lo || *n + 1 > model.hi {
                return Err(SheafError::Window(format!("degree {n} needs {}..{} inside the window", n - 1, n + 1)));
            }
            let mut t: Vec<Indec> = (n + 1..=model.hi).map(line).collect();
            t.extend(model.sample().into_iter().map(simple));
            let f: Vec<Indec> = (model.lo..=*n).map(line).collect();
            Ok(TorsionPair { t: amb.closure_of(&t)?, f: amb.closure_of(&f)? })
        }
    }
}

/// Members of the carrier that are lines.
pub fn lines(amb: &Ambient) -> Members {
    amb.carrier().iter().enumerate().filter(|(_, x)| matches!(x, Indec::P1(P1Indec::Line(_)))).map(|(i, _)| i).collect()
}
