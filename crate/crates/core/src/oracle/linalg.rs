//! Dense matrices over a prime field of size at most 5.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::OracleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub const GF2: PrimeField = PrimeField { p: 2 };
    pub const GF3: PrimeField = PrimeField { p: 3 };
    pub const GF5: PrimeField = PrimeField { p: 5 };

    pub fn new(p: u8) -> Result<PrimeField, OracleError> {
        match p {
            2 | 3 | 5 => Ok(PrimeField { p }),
            _ => Err(OracleError::Unsupported(alloc::format!("field of size {p}"))),
        }
    }

    pub fn p(self) -> u8 {
        self.p
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    pub fn neg(self, a: u8) -> u8 {
        (self.p - a) % self.p
    }

    pub fn inv(self, a: u8) -> Option<u8> {
        (1..self.p).find(|b| self.mul(a, *b) == 1)
    }

    /// Reduces an integer into the field.
    pub fn elem(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0)
    }

    pub fn mul(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, f: PrimeField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(*a, *b)).collect() }
    }

    pub fn scale(&self, c: u8, f: PrimeField) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(*a, c)).collect() }
    }

    /// Rows `from..to`.
    pub fn row_block(&self, from: usize, to: usize) -> Mat {
        Mat { rows: to - from, cols: self.cols, data: self.data[from * self.cols..to * self.cols].to_vec() }
    }

    /// Columns side by side.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|i| self.get(*i, c) != 0) else { continue };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let a = self.get(i, c);
                if i != r && a != 0 {
                    for j in 0..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(a, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// A basis of the solutions of `self x = 0`.
    pub fn nullspace(&self, f: PrimeField) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0u8; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(r, fc));
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self, f: PrimeField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = self.hcat(&Mat::identity(n));
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Standard basis columns completing the column space to the whole space.
    pub fn complement_columns(&self, f: PrimeField) -> Mat {
        let mut cur = self.clone();
        let mut rank = cur.rank(f);
        let mut chosen = Vec::new();
        for i in 0..self.rows {
            if rank == self.rows {
                break;
            }
            let mut e = Mat::zeros(self.rows, 1);
            e.set(i, 0, 1);
            let next = cur.hcat(&e);
            let r = next.rank(f);
            if r > rank {
                rank = r;
                cur = next;
                chosen.push(i);
            }
        }
        let mut s = Mat::zeros(self.rows, chosen.len());
        for (k, i) in chosen.into_iter().enumerate() {
            s.set(i, k, 1);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u8, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..p {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..p {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
        assert!(PrimeField::new(4).is_err());
    }

    fn mat(p: u8) -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| proptest::collection::vec(0..p, r * c).prop_map(move |d| Mat::from_rows(r, c, d)))
    }

    proptest! {
        #[test]
        fn nullspace_is_kernel(m in mat(3)) {
            let f = PrimeField::GF3;
            let ns = m.nullspace(f);
            prop_assert_eq!(ns.len() + m.rank(f), m.cols);
            for x in ns {
                let v = m.mul(&Mat::from_rows(m.cols, 1, x), f);
                prop_assert!(v.is_zero());
            }
        }

        #[test]
        fn inverse_and_complement(m in mat(5)) {
            let f = PrimeField::GF5;
            if let Some(inv) = m.inverse(f) {
                prop_assert_eq!(m.mul(&inv, f), Mat::identity(m.rows));
            }
            let full = m.hcat(&m.complement_columns(f));
            prop_assert_eq!(full.rank(f), m.rows);
        }
    }
}
