//! Quiver representations and their Hom spaces.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{Mat, PrimeField};
use crate::error::OracleError;
use crate::indec::Indec;
use crate::sheaves::kronecker::KronIndec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Vertices `0..n`, one arrow `i -> i-1` at each vertex.
    Cyclic(u32),
    /// Vertices `1..=n` stored as `0..n`, arrows `i -> i+1`.
    Linear(u32),
    /// Two arrows from vertex `1` to vertex `2`.
    Kronecker,
}

impl Shape {
    pub fn vertices(self) -> usize {
        match self {
            Shape::Cyclic(n) | Shape::Linear(n) => n as usize,
            Shape::Kronecker => 2,
        }
    }

    pub fn arrows(self) -> Vec<(usize, usize)> {
        match self {
            Shape::Cyclic(n) => (0..n as usize).map(|i| (i, (i + n as usize - 1) % n as usize)).collect(),
            Shape::Linear(n) => (1..n as usize).map(|i| (i - 1, i)).collect(),
            Shape::Kronecker => vec![(0, 1), (0, 1)],
        }
    }

    pub fn of(x: &Indec) -> Option<Shape> {
        match x {
            Indec::Tube(t) => Some(Shape::Cyclic(t.n)),
            Indec::Interval(m) => Some(Shape::Linear(m.n)),
            Indec::Kron(_) => Some(Shape::Kronecker),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub shape: Shape,
    pub field: PrimeField,
    pub dims: Vec<usize>,
    /// One `dims[target] x dims[source]` matrix per arrow.
    pub maps: Vec<Mat>,
}

/// A morphism as one matrix per vertex.
pub type Morphism = Vec<Mat>;

impl QuiverRep {
    pub fn zero(shape: Shape, field: PrimeField) -> QuiverRep {
        QuiverRep { shape, field, dims: vec![0; shape.vertices()], maps: shape.arrows().iter().map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn len(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check(&self) -> bool {
        self.shape.arrows().iter().zip(&self.maps).all(|(&(s, t), m)| m.rows == self.dims[t] && m.cols == self.dims[s])
    }

    /// The composite once around the cycle is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        let Shape::Cyclic(n) = self.shape else { return true };
        let arrows = self.shape.arrows();
        for start in 0..n as usize {
            let mut m = Mat::identity(self.dims[start]);
            let mut v = start;
            for _ in 0..n {
                let a = arrows.iter().position(|(s, _)| *s == v).expect("one arrow per vertex");
                m = self.maps[a].mul(&m, self.field);
                v = arrows[a].1;
            }
            let mut p = Mat::identity(self.dims[start]);
            for _ in 0..self.dims[start].max(1) {
                p = m.mul(&p, self.field);
            }
            if !p.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn direct_sum(parts: &[QuiverRep]) -> Result<QuiverRep, OracleError> {
        let first = parts.first().ok_or(OracleError::Mismatch)?;
        if parts.iter().any(|r| r.shape != first.shape || r.field != first.field) {
            return Err(OracleError::Mismatch);
        }
        let nv = first.shape.vertices();
        let dims = (0..nv).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let maps = (0..first.maps.len()).map(|a| Mat::block_diag(&parts.iter().map(|r| &r.maps[a]).collect::<Vec<_>>())).collect();
        Ok(QuiverRep { shape: first.shape, field: first.field, dims, maps })
    }
}

/// The standard realization of an indecomposable.
pub fn build_indec(field: PrimeField, x: &Indec) -> Result<QuiverRep, OracleError> {
    let shape = Shape::of(x).ok_or_else(|| OracleError::InvalidDescriptor(format!("{x}")))?;
    let mut rep = QuiverRep::zero(shape, field);
    match x {
        Indec::Tube(t) => {
            if t.t == 0 || t.j >= t.n {
                return Err(OracleError::InvalidDescriptor(format!("{x}")));
            }
            let n = t.n as usize;
            // basis e_k sits at vertex j - k, the arrow sends e_k to e_{k+1}
            let vertex = |k: usize| (t.j as usize + n * t.t as usize - k) % n;
            let mut local = Vec::new();
            for k in 0..t.t as usize {
                let v = vertex(k);
                local.push(rep.dims[v]);
                rep.dims[v] += 1;
            }
            rep.maps = (0..n).map(|v| Mat::zeros(rep.dims[(v + n - 1) % n], rep.dims[v])).collect();
            for k in 0..t.t as usize - 1 {
                let v = vertex(k);
                rep.maps[v].set(local[k + 1], local[k], 1);
            }
        }
        Indec::Interval(m) => {
            if m.a < 1 || m.a > m.b || m.b > m.n {
                return Err(OracleError::InvalidDescriptor(format!("{x}")));
            }
            for v in m.a..=m.b {
                rep.dims[v as usize - 1] = 1;
            }
            rep.maps = shape.arrows().iter().map(|&(s, t)| {
                let mut a = Mat::zeros(rep.dims[t], rep.dims[s]);
                if rep.dims[s] == 1 && rep.dims[t] == 1 {
                    a.set(0, 0, 1);
                }
                a
            }).collect();
        }
        Indec::Kron(k) => {
            let (a, b) = match *k {
                KronIndec::Pre(k) if k >= 1 => {
                    let k = k as usize;
                    let (mut a, mut b) = (Mat::zeros(k, k - 1), Mat::zeros(k, k - 1));
                    for i in 0..k - 1 {
                        a.set(i, i, 1);
                        b.set(i + 1, i, 1);
                    }
                    (a, b)
                }
                KronIndec::Inj(k) if k >= 1 => {
                    let k = k as usize;
                    let (mut a, mut b) = (Mat::zeros(k - 1, k), Mat::zeros(k - 1, k));
                    for i in 0..k - 1 {
                        a.set(i, i, 1);
                        b.set(i, i + 1, 1);
                    }
                    (a, b)
                }
                KronIndec::Reg { x, d } if d >= 1 => {
                    if x.0 >= field.p() {
                        return Err(OracleError::Unsupported(format!("point {} needs a larger field", x.label())));
                    }
                    let d = d as usize;
                    let mut b = Mat::zeros(d, d);
                    for i in 0..d {
                        b.set(i, i, x.0);
                        if i + 1 < d {
                            b.set(i, i + 1, 1);
                        }
                    }
                    (Mat::identity(d), b)
                }
                _ => return Err(OracleError::InvalidDescriptor(format!("{x}"))),
            };
            rep.dims = vec![a.cols, a.rows];
            rep.maps = vec![a, b];
        }
        _ => unreachable!("shape checked above"),
    }
    debug_assert!(rep.check() && rep.is_nilpotent());
    Ok(rep)
}

/// A basis of `Hom(a, b)` from the commuting-square equations.
pub fn hom_basis(a: &QuiverRep, b: &QuiverRep) -> Result<Vec<Morphism>, OracleError> {
    if a.shape != b.shape || a.field != b.field {
        return Err(OracleError::Mismatch);
    }
    let f = a.field;
    let nv = a.shape.vertices();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + b.dims[v] * a.dims[v];
    }
    let unknowns = offset[nv];
    // X_v[i][k] is unknown offset[v] + i * a.dims[v] + k
    let var = |v: usize, i: usize, k: usize| offset[v] + i * a.dims[v] + k;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (arrow, &(s, t)) in a.shape.arrows().iter().enumerate() {
        let (ma, mb) = (&a.maps[arrow], &b.maps[arrow]);
        // mb X_s = X_t ma
        for i in 0..b.dims[t] {
            for k in 0..a.dims[s] {
                let mut row = vec![0u8; unknowns];
                for j in 0..b.dims[s] {
                    let c = mb.get(i, j);
                    let idx = var(s, j, k);
                    row[idx] = f.add(row[idx], c);
                }
                for j in 0..a.dims[t] {
                    let c = ma.get(j, k);
                    let idx = var(t, i, j);
                    row[idx] = f.sub(row[idx], c);
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns).map(|u| {
            let mut x = vec![0u8; unknowns];
            x[u] = 1;
            x
        }).collect()
    } else {
        let n = rows.len();
        Mat::from_rows(n, unknowns, rows.concat()).nullspace(f)
    };
    Ok(basis
        .into_iter()
        .map(|x| (0..nv).map(|v| Mat::from_rows(b.dims[v], a.dims[v], x[offset[v]..offset[v + 1]].to_vec())).collect())
        .collect())
}

pub fn hom_dim(a: &QuiverRep, b: &QuiverRep) -> Result<usize, OracleError> {
    Ok(hom_basis(a, b)?.len())
}

pub fn combine(basis: &[Morphism], coeffs: &[u8], f: PrimeField) -> Morphism {
    let mut out: Morphism = basis[0].iter().map(|m| Mat::zeros(m.rows, m.cols)).collect();
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, m) in out.iter_mut().zip(b) {
            *o = o.add(&m.scale(c, f), f);
        }
    }
    out
}

pub fn is_injective(a: &QuiverRep, m: &Morphism) -> bool {
    m.iter().zip(&a.dims).all(|(x, d)| x.rank(a.field) == *d)
}

/// The cokernel of an injective morphism into `e`.
pub fn cokernel(e: &QuiverRep, m: &Morphism) -> QuiverRep {
    let f = e.field;
    let nv = e.shape.vertices();
    let mut quot = Vec::with_capacity(nv);
    let mut sect = Vec::with_capacity(nv);
    for v in 0..nv {
        let s = m[v].complement_columns(f);
        let basis = m[v].hcat(&s);
        let inv = basis.inverse(f).expect("image columns are independent");
        quot.push(inv.row_block(m[v].cols, e.dims[v]));
        sect.push(s);
    }
    let dims = sect.iter().map(|s| s.cols).collect();
    let maps = e.shape.arrows().iter().enumerate().map(|(a, &(s, t))| quot[t].mul(&e.maps[a], f).mul(&sect[s], f)).collect();
    QuiverRep { shape: e.shape, field: f, dims, maps }
}
