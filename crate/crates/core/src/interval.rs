//! Interval modules over the linearly oriented quiver `1 -> 2 -> ... -> n`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ambient::{CategoryModel, Split};
use crate::error::IntervalError;
use crate::indec::Indec;
use crate::tube::TubeIndec;

/// `M[a,b]`: top `S_a`, socle `S_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub n: u32,
    pub a: u32,
    pub b: u32,
}

impl Interval {
    pub fn new(n: u32, a: u32, b: u32) -> Result<Interval, IntervalError> {
        if a < 1 || a > b || b > n {
            return Err(IntervalError::Malformed { n, a, b });
        }
        Ok(Interval { n, a, b })
    }

    pub fn simple(n: u32, i: u32) -> Result<Interval, IntervalError> {
        Interval::new(n, i, i)
    }

    pub fn projective(n: u32, i: u32) -> Result<Interval, IntervalError> {
        Interval::new(n, i, n)
    }

    pub fn injective(n: u32, i: u32) -> Result<Interval, IntervalError> {
        Interval::new(n, 1, i)
    }

    pub fn len(&self) -> u32 {
        self.b - self.a + 1
    }

    pub fn is_simple(&self) -> bool {
        self.a == self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "S_{}@A{}", self.a, self.n)
        } else if self.b == self.n {
            write!(f, "P_{}@A{}", self.a, self.n)
        } else if self.a == 1 {
            write!(f, "I_{}@A{}", self.b, self.n)
        } else {
            write!(f, "M[{},{}]@A{}", self.a, self.b, self.n)
        }
    }
}

fn check(x: &Interval, y: &Interval) -> Result<(), IntervalError> {
    for m in [x, y] {
        if m.a < 1 || m.a > m.b || m.b > m.n {
            return Err(IntervalError::Malformed { n: m.n, a: m.a, b: m.b });
        }
    }
    if x.n != y.n {
        return Err(IntervalError::SizeMismatch { left: x.n, right: y.n });
    }
    Ok(())
}

pub fn hom_nonzero_interval(x: &Interval, y: &Interval) -> Result<bool, IntervalError> {
    check(x, y)?;
    Ok(y.a <= x.a && x.a <= y.b && y.b <= x.b)
}

pub fn middle_terms_interval(a: &Interval, b: &Interval) -> Result<Vec<Vec<Interval>>, IntervalError> {
    check(a, b)?;
    let n = a.n;
    if b.b + 1 == a.a {
        return Ok(vec![vec![Interval { n, a: b.a, b: a.b }]]);
    }
    if b.a < a.a && a.a <= b.b && b.b < a.b {
        let mut e = vec![Interval { n, a: b.a, b: a.b }, Interval { n, a: a.a, b: b.b }];
        e.sort();
        return Ok(vec![e]);
    }
    Ok(Vec::new())
}

pub fn all_intervals(n: u32) -> Vec<Interval> {
    let mut v = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            v.push(Interval { n, a, b });
        }
    }
    v
}

/// A total order on all intervals with no Hom from a later to an earlier one.
/// Ties go to the larger socle index, then the larger top index.
pub fn directing_order(n: u32) -> Vec<Interval> {
    let mut left: BTreeSet<Interval> = all_intervals(n).into_iter().collect();
    let mut out = Vec::new();
    while !left.is_empty() {
        let pick = left
            .iter()
            .filter(|y| left.iter().all(|x| x == *y || !hom_nonzero_interval(x, y).unwrap()))
            .max_by_key(|y| (y.b, y.a))
            .copied()
            .expect("Hom between intervals is acyclic");
        left.remove(&pick);
        out.push(pick);
    }
    out
}

/// Identifies `mod A_{n-1}` with the tube subcategory avoiding `S_0`.
pub fn embed_avoiding_zero(x: &Interval, tube_rank: u32) -> TubeIndec {
    TubeIndec { n: tube_rank, j: tube_rank - x.a, t: x.len() }
}

/// Identifies `mod A_{n-1}` with the tube subcategory avoiding `S_{n-1}`.
pub fn embed_avoiding_last(x: &Interval, tube_rank: u32) -> TubeIndec {
    TubeIndec { n: tube_rank, j: tube_rank - 1 - x.a, t: x.len() }
}

#[derive(Clone, Debug)]
pub struct IntervalCategory {
    pub n: u32,
}

impl IntervalCategory {
    pub fn new(n: u32) -> Self {
        IntervalCategory { n }
    }

    fn get(x: &Indec) -> Interval {
        x.as_interval().expect("interval ambient holds interval modules")
    }
}

impl CategoryModel for IntervalCategory {
    fn spec(&self) -> String {
        format!("an:{}", self.n)
    }

    fn carrier(&self) -> Vec<Indec> {
        all_intervals(self.n).into_iter().map(Indec::Interval).collect()
    }

    fn scope(&self) -> Vec<Indec> {
        self.carrier()
    }

    fn rep(&self, x: &Indec) -> Option<Indec> {
        match x {
            Indec::Interval(m) if m.n == self.n && m.a >= 1 && m.a <= m.b && m.b <= self.n => Some(*x),
            _ => None,
        }
    }

    fn hom_nonzero(&self, x: &Indec, y: &Indec) -> bool {
        hom_nonzero_interval(&Self::get(x), &Self::get(y)).unwrap_or(false)
    }

    fn middle_terms(&self, a: &Indec, b: &Indec) -> Vec<Vec<Indec>> {
        middle_terms_interval(&Self::get(a), &Self::get(b))
            .unwrap_or_default()
            .into_iter()
            .map(|e| e.into_iter().map(Indec::Interval).collect())
            .collect()
    }

    fn length(&self, x: &Indec) -> Option<u32> {
        x.as_interval().map(|m| m.len())
    }

    fn sub_of_length(&self, x: &Indec, r: u32) -> Option<Indec> {
        let m = x.as_interval()?;
        (r >= 1 && r <= m.len()).then(|| Indec::Interval(Interval { n: m.n, a: m.b + 1 - r, b: m.b }))
    }

    fn splits(&self, x: &Indec) -> Vec<Split> {
        let m = Self::get(x);
        (m.a + 1..=m.b)
            .map(|c| (vec![Indec::Interval(Interval { b: m.b, a: c, n: m.n })], vec![Indec::Interval(Interval { a: m.a, b: c - 1, n: m.n })]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube;

    fn m(n: u32, a: u32, b: u32) -> Interval {
        Interval::new(n, a, b).unwrap()
    }

    #[test]
    fn hom_examples() {
        assert!(!hom_nonzero_interval(&m(2, 1, 1), &m(2, 2, 2)).unwrap());
        assert!(hom_nonzero_interval(&m(2, 1, 2), &m(2, 1, 1)).unwrap());
        assert!(hom_nonzero_interval(&m(2, 2, 2), &m(2, 1, 2)).unwrap());
        for x in all_intervals(4) {
            assert!(hom_nonzero_interval(&x, &x).unwrap());
        }
        assert!(Interval::new(3, 2, 1).is_err());
        assert!(matches!(hom_nonzero_interval(&m(2, 1, 1), &m(3, 1, 1)), Err(IntervalError::SizeMismatch { .. })));
    }

    #[test]
    fn middle_term_examples() {
        assert_eq!(middle_terms_interval(&m(2, 2, 2), &m(2, 1, 1)).unwrap(), [vec![m(2, 1, 2)]]);
        assert!(middle_terms_interval(&m(3, 2, 2), &m(3, 2, 2)).unwrap().is_empty());
        assert_eq!(middle_terms_interval(&m(3, 2, 3), &m(3, 1, 2)).unwrap(), [vec![m(3, 1, 3), m(3, 2, 2)]]);
    }

    #[test]
    fn aliases() {
        assert_eq!(m(3, 2, 2).to_string(), "S_2@A3");
        assert_eq!(m(3, 2, 3).to_string(), "P_2@A3");
        assert_eq!(m(3, 1, 2).to_string(), "I_2@A3");
        assert_eq!(m(4, 2, 3).to_string(), "M[2,3]@A4");
        assert_eq!(Interval::projective(3, 1).unwrap(), Interval::injective(3, 3).unwrap());
    }

    #[test]
    fn directing_orders() {
        assert_eq!(directing_order(2), [m(2, 2, 2), m(2, 1, 2), m(2, 1, 1)]);
        assert_eq!(directing_order(1).len(), 1);
        for n in 1..=5 {
            let order = directing_order(n);
            assert_eq!(order.len() as u32, n * (n + 1) / 2);
            for (i, x) in order.iter().enumerate() {
                for y in &order[..i] {
                    assert!(!hom_nonzero_interval(x, y).unwrap(), "{x} -> {y}");
                }
            }
        }
    }

    #[test]
    fn embeddings_preserve_hom_and_extensions() {
        for n in 2..=5u32 {
            let small = all_intervals(n - 1);
            for (embed, avoided) in [(embed_avoiding_zero as fn(&Interval, u32) -> TubeIndec, 0), (embed_avoiding_last, n - 1)] {
                for x in &small {
                    let ex = embed(x, n);
                    assert!(ex.t < n);
                    assert!(!ex.comp_factor_set().contains(&avoided));
                    for y in &small {
                        let ey = embed(y, n);
                        assert_eq!(hom_nonzero_interval(x, y).unwrap(), tube::hom_nonzero(&ex, &ey).unwrap(), "{x} {y}");
                        let mut lhs: Vec<Vec<TubeIndec>> = middle_terms_interval(x, y)
                            .unwrap()
                            .into_iter()
                            .map(|e| {
                                let mut v: Vec<TubeIndec> = e.iter().map(|z| embed(z, n)).collect();
                                v.sort();
                                v
                            })
                            .collect();
                        lhs.sort();
                        assert_eq!(lhs, tube::middle_terms(&ex, &ey).unwrap(), "{x} {y}");
                    }
                }
            }
        }
    }
}
