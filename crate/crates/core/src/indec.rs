//! The descriptor of an indecomposable object, shared by every ambient.

use core::fmt;

use crate::interval::Interval;
use crate::sheaves::kronecker::KronIndec;
use crate::sheaves::p1::P1Indec;
use crate::sheaves::x2::X2Indec;
use crate::tube::TubeIndec;

/// Labels of the sample points; a point is an index into this table.
pub const POINT_LABELS: [&str; 8] = ["0", "1", "λ", "μ", "ν", "ξ", "π", "σ"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub u8);

impl Point {
    pub fn label(self) -> &'static str {
        POINT_LABELS[self.0 as usize]
    }

    pub fn parse(s: &str) -> Option<Point> {
        let s = s.trim();
        let alias = match s {
            "lambda" | "l" => "λ",
            "mu" => "μ",
            "nu" => "ν",
            "xi" => "ξ",
            "pi" => "π",
            "sigma" => "σ",
            other => other,
        };
        POINT_LABELS.iter().position(|l| *l == alias).map(|i| Point(i as u8))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indec {
    Tube(TubeIndec),
    Interval(Interval),
    P1(P1Indec),
    Kron(KronIndec),
    X2(X2Indec),
}

impl Indec {
    pub fn as_tube(&self) -> Option<TubeIndec> {
        match self {
            Indec::Tube(t) => Some(*t),
            _ => None,
        }
    }

    pub fn as_interval(&self) -> Option<Interval> {
        match self {
            Indec::Interval(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indec::Tube(x) => x.fmt(f),
            Indec::Interval(x) => x.fmt(f),
            Indec::P1(x) => x.fmt(f),
            Indec::Kron(x) => x.fmt(f),
            Indec::X2(x) => x.fmt(f),
        }
    }
}

impl From<TubeIndec> for Indec {
    fn from(x: TubeIndec) -> Self {
        Indec::Tube(x)
    }
}

impl From<Interval> for Indec {
    fn from(x: Interval) -> Self {
        Indec::Interval(x)
    }
}

impl From<P1Indec> for Indec {
    fn from(x: P1Indec) -> Self {
        Indec::P1(x)
    }
}

impl From<KronIndec> for Indec {
    fn from(x: KronIndec) -> Self {
        Indec::Kron(x)
    }
}

impl From<X2Indec> for Indec {
    fn from(x: X2Indec) -> Self {
        Indec::X2(x)
    }
}
