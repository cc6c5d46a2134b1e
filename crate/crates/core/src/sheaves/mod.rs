//! Windowed models of coherent sheaves and Kronecker modules. Universal
//! statements about them are only checked for the objects of the window.

use alloc::vec;
use alloc::vec::Vec;

use crate::indec::Point;
use crate::order::Phase;
use crate::tube::{self, TubeIndec};

pub mod kronecker;
pub mod p1;
pub mod x2;

/// Default number of sample points.
pub const DEFAULT_POINTS: u8 = 3;

/// All ways to write `total` as an ordered sum of `parts` non-negative terms.
pub fn distributions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in distributions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Phase of the simple at an ordinary point.
pub fn point_phase(x: Point) -> Phase {
    Phase::Label(alloc::format!("S[{}]", x.label()))
}

/// Representative length of a rank-one tube object.
pub(crate) fn rank_one_rep(t: u32) -> u32 {
    TubeIndec { n: 1, j: 0, t }.truncate_rep().0.t
}

pub(crate) fn rank_one_lifts(t: u32) -> Vec<u32> {
    tube::SegmentRep(TubeIndec { n: 1, j: 0, t }).lifts().into_iter().map(|x| x.t).collect()
}

/// Middle terms inside a rank-one tube, as length lists.
pub(crate) fn rank_one_middle(a: u32, b: u32) -> Vec<Vec<u32>> {
    tube::middle_terms(&TubeIndec { n: 1, j: 0, t: a }, &TubeIndec { n: 1, j: 0, t: b })
        .unwrap_or_default()
        .into_iter()
        .map(|e| e.into_iter().map(|x| x.t).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;
    use crate::order::explicit_order;
    use crate::stability::{is_finest, validate, StabilityData};
    use crate::torsion::{validate_torsion, TorsionPair};
    use kronecker::{finest_kron_directing, finest_kron_simples, torsion_family_kron, KronFamily, KronModel};
    use p1::{finest_p1, torsion_family_p1, P1Family, P1Model};
    use x2::{finest_x2, torsion_family_x2, X2Family, X2Model, X2Row, XTilde};

    fn reversed(d: &StabilityData) -> StabilityData {
        let mut pieces = d.pieces().to_vec();
        pieces.reverse();
        let order = explicit_order(pieces.iter().map(|(p, _)| p.clone()).collect()).unwrap();
        StabilityData::new(order, pieces).unwrap()
    }

    /// Validity, finest-ness and the verdicts for the reversed data and swapped pairs.
    fn verdicts(a: &Ambient, data: &[StabilityData], pairs: &[TorsionPair]) -> Vec<bool> {
        let mut v = Vec::new();
        for d in data {
            v.push(validate(a, d).valid);
            v.push(is_finest(a, d).finest);
            v.push(validate(a, &reversed(d)).valid);
        }
        for tp in pairs {
            v.push(validate_torsion(a, tp).valid);
            v.push(validate_torsion(a, &TorsionPair { t: tp.f, f: tp.t }).valid);
        }
        v
    }

    #[test]
    fn nested_windows_agree() {
        let p1 = |lo: i32, hi: i32| {
            let m = P1Model::new(lo, hi, 2).unwrap();
            let a = m.ambient().unwrap();
            let data = vec![finest_p1(&a, &m, &[Point(1), Point(0)]).unwrap()];
            let pairs = vec![torsion_family_p1(&a, &m, &P1Family::Points(vec![Point(0)])).unwrap(), torsion_family_p1(&a, &m, &P1Family::Above(0)).unwrap()];
            verdicts(&a, &data, &pairs)
        };
        assert_eq!(p1(-2, 2), p1(-4, 4));
        let kron = |k: u32| {
            let m = KronModel::new(k, k, 2).unwrap();
            let a = m.ambient().unwrap();
            let data = vec![finest_kron_directing(&a, &m, &[Point(1), Point(0)]).unwrap(), finest_kron_simples(&a).unwrap()];
            let pairs = vec![
                torsion_family_kron(&a, &m, &KronFamily::RegularAt(vec![Point(1)])).unwrap(),
                torsion_family_kron(&a, &m, &KronFamily::AbovePre(2)).unwrap(),
                torsion_family_kron(&a, &m, &KronFamily::Simples).unwrap(),
            ];
            verdicts(&a, &data, &pairs)
        };
        assert_eq!(kron(4), kron(6));
        let x2 = |l: i32| {
            let m = X2Model::new(-l, l, 2).unwrap();
            let a = m.ambient().unwrap();
            let xt = XTilde::standard(&m);
            let data: Vec<StabilityData> = [X2Family::FullL, X2Family::Lm(1), X2Family::Coset].into_iter().map(|f| finest_x2(&a, &m, f, &xt).unwrap()).collect();
            let pairs: Vec<TorsionPair> = [X2Row::II(vec![Point(0)]), X2Row::IV, X2Row::V, X2Row::VI].iter().map(|r| torsion_family_x2(&a, &m, r, 0).unwrap()).collect();
            verdicts(&a, &data, &pairs)
        };
        let small = x2(2);
        assert_eq!(small, x2(4));
        assert!(small.iter().step_by(3).take(3).all(|v| *v));
    }

    #[test]
    fn distribution_counts() {
        assert_eq!(distributions(2, 3).len(), 6);
        assert_eq!(distributions(0, 0), [Vec::<u32>::new()]);
        assert!(distributions(1, 0).is_empty());
        assert_eq!(rank_one_rep(5), 2);
        assert_eq!(rank_one_middle(1, 1), [vec![2]]);
    }
}
