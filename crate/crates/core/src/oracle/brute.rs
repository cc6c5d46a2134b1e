//! Exhaustive searches: decomposition by Hom fingerprints, extension middle
//! terms and extension closures.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::PrimeField;
use super::rep::{build_indec, cokernel, combine, hom_basis, hom_dim, is_injective, QuiverRep, Shape};
use crate::error::OracleError;
use crate::indec::Indec;
use crate::interval::all_intervals;
use crate::tube::TubeIndec;

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Indecomposables of total dimension at most `len`.
pub fn indecs_up_to(shape: Shape, len: usize) -> Result<Vec<Indec>, OracleError> {
    match shape {
        Shape::Cyclic(n) => {
            let mut v = Vec::new();
            for t in 1..=len as u32 {
                for j in 0..n {
                    v.push(Indec::Tube(TubeIndec { n, j, t }));
                }
            }
            Ok(v)
        }
        Shape::Linear(n) => Ok(all_intervals(n).into_iter().filter(|m| m.len() as usize <= len).map(Indec::Interval).collect()),
        Shape::Kronecker => Err(OracleError::Unsupported("enumerating Kronecker modules".into())),
    }
}

fn dim_vector(shape: Shape, x: &Indec) -> Vec<usize> {
    let mut d = vec![0; shape.vertices()];
    match x {
        Indec::Tube(t) => {
            for k in 0..t.t as i64 {
                d[(t.j as i64 - k).rem_euclid(t.n as i64) as usize] += 1;
            }
        }
        Indec::Interval(m) => {
            for v in m.a..=m.b {
                d[v as usize - 1] += 1;
            }
        }
        _ => unreachable!("enumerable shapes only"),
    }
    d
}

/// Top and socle simples, as vertex indices.
fn top_soc(x: &Indec) -> (u32, u32) {
    match x {
        Indec::Tube(t) => (t.top(), t.soc()),
        Indec::Interval(m) => (m.a, m.b),
        _ => unreachable!("enumerable shapes only"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Frac {
    num: i128,
    den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        let g = gcd(num, den).max(1) * den.signum();
        Frac { num: num / g, den: den / g }
    }
    fn int(v: i128) -> Frac {
        Frac { num: v, den: 1 }
    }
    fn sub(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }
    fn mul(self, o: Frac) -> Frac {
        Frac::new(self.num * o.num, self.den * o.den)
    }
    fn div(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den, self.den * o.num)
    }
}

/// Inverse of an integer matrix over the rationals.
fn rational_inverse(m: &[Vec<i128>]) -> Option<Vec<Vec<Frac>>> {
    let n = m.len();
    let mut a: Vec<Vec<Frac>> = m.iter().enumerate().map(|(i, row)| {
        let mut r: Vec<Frac> = row.iter().map(|v| Frac::int(*v)).collect();
        r.extend((0..n).map(|j| Frac::int((i == j) as i128)));
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|r| a[*r][c].num != 0)?;
        a.swap(c, p);
        let piv = a[c][c];
        for j in 0..2 * n {
            a[c][j] = a[c][j].div(piv);
        }
        for r in 0..n {
            if r != c && a[r][c].num != 0 {
                let k = a[r][c];
                for j in 0..2 * n {
                    a[r][j] = a[r][j].sub(k.mul(a[c][j]));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

struct Fingerprints {
    cands: Vec<Indec>,
    reps: Vec<QuiverRep>,
    inv: Vec<Vec<Frac>>,
}

/// Brute-force ground truth for one quiver shape over one field, for modules
/// of total dimension up to `max_len`.
pub struct Oracle {
    pub shape: Shape,
    pub field: PrimeField,
    pub max_len: usize,
    pub budget: u128,
    indecs: Vec<Indec>,
    dims: BTreeMap<Indec, Vec<usize>>,
    reps: BTreeMap<Indec, QuiverRep>,
    /// Indexed by total dimension.
    prints: Vec<Fingerprints>,
}

impl Oracle {
    pub fn new(shape: Shape, field: PrimeField, max_len: usize, budget: u128) -> Result<Oracle, OracleError> {
        let indecs = indecs_up_to(shape, max_len)?;
        let mut reps = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for x in &indecs {
            reps.insert(*x, build_indec(field, x)?);
            dims.insert(*x, dim_vector(shape, x));
        }
        let mut prints = Vec::new();
        for len in 0..=max_len {
            let cands: Vec<Indec> = indecs.iter().filter(|x| dims[*x].iter().sum::<usize>() <= len).copied().collect();
            let r: Vec<QuiverRep> = cands.iter().map(|x| reps[x].clone()).collect();
            let mut h = Vec::new();
            for a in &r {
                let mut row = Vec::new();
                for b in &r {
                    row.push(hom_dim(a, b)? as i128);
                }
                h.push(row);
            }
            let inv = rational_inverse(&h).ok_or_else(|| OracleError::Inconsistent(format!("singular Hom matrix at length {len}")))?;
            prints.push(Fingerprints { cands, reps: r, inv });
        }
        Ok(Oracle { shape, field, max_len, budget, indecs, dims, reps, prints })
    }

    pub fn rep(&self, x: &Indec) -> Result<QuiverRep, OracleError> {
        match self.reps.get(x) {
            Some(r) => Ok(r.clone()),
            None => build_indec(self.field, x),
        }
    }

    pub fn sum(&self, xs: &[Indec]) -> Result<QuiverRep, OracleError> {
        if xs.is_empty() {
            return Ok(QuiverRep::zero(self.shape, self.field));
        }
        let parts = xs.iter().map(|x| self.rep(x)).collect::<Result<Vec<_>, _>>()?;
        QuiverRep::direct_sum(&parts)
    }

    pub fn hom_dim(&self, a: &Indec, b: &Indec) -> Result<usize, OracleError> {
        hom_dim(&self.rep(a)?, &self.rep(b)?)
    }

    /// Krull-Schmidt multiset of a representation, sorted.
    pub fn decompose(&self, r: &QuiverRep) -> Result<Vec<Indec>, OracleError> {
        let len = r.len();
        if len > self.max_len {
            return Err(OracleError::Inconsistent(format!("module of length {len} exceeds the bound {}", self.max_len)));
        }
        let fp = &self.prints[len];
        let f: Vec<i128> = fp.reps.iter().map(|c| hom_dim(c, r).map(|d| d as i128)).collect::<Result<_, _>>()?;
        // f_c = sum_d hom(c, d) m_d
        let mut out = Vec::new();
        let mut dims = vec![0usize; r.dims.len()];
        for (d, x) in fp.cands.iter().enumerate() {
            let mut m = Frac::int(0);
            for (c, fc) in f.iter().enumerate() {
                m = m.sub(Frac::int(-*fc).mul(fp.inv[d][c]));
            }
            if m.den != 1 || m.num < 0 {
                return Err(OracleError::Inconsistent(format!("multiplicity {}/{} for {x}", m.num, m.den)));
            }
            for _ in 0..m.num {
                out.push(*x);
                for (acc, v) in dims.iter_mut().zip(&self.dims[x]) {
                    *acc += v;
                }
            }
        }
        if dims != r.dims {
            return Err(OracleError::Inconsistent("dimension vectors of the summands do not add up".into()));
        }
        out.sort();
        Ok(out)
    }

    /// All multisets of indecomposables with the given dimension vector.
    pub fn modules_with_dims(&self, target: &[usize]) -> Vec<Vec<Indec>> {
        fn go(items: &[(Indec, Vec<usize>)], start: usize, rest: &mut Vec<usize>, cur: &mut Vec<Indec>, out: &mut Vec<Vec<Indec>>) {
            if rest.iter().all(|v| *v == 0) {
                out.push(cur.clone());
                return;
            }
            for i in start..items.len() {
                let (x, d) = &items[i];
                if d.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                    for (r, a) in rest.iter_mut().zip(d) {
                        *r -= a;
                    }
                    cur.push(*x);
                    go(items, i, rest, cur, out);
                    cur.pop();
                    for (r, a) in rest.iter_mut().zip(d) {
                        *r += a;
                    }
                }
            }
        }
        let items: Vec<(Indec, Vec<usize>)> = self.indecs.iter().map(|x| (*x, self.dims[x].clone())).collect();
        let mut out = Vec::new();
        go(&items, 0, &mut target.to_vec(), &mut Vec::new(), &mut out);
        out
    }

    fn maps_needed(&self, h: usize) -> u128 {
        (self.field.p() as u128).checked_pow(h as u32).unwrap_or(u128::MAX)
    }

    /// Runs `accept` on the cokernel of every injective map `a -> e`, until it
    /// returns true.
    fn any_injection(&self, a: &QuiverRep, e: &QuiverRep, mut accept: impl FnMut(&QuiverRep) -> Result<bool, OracleError>) -> Result<bool, OracleError> {
        let basis = hom_basis(a, e)?;
        if basis.is_empty() {
            return Ok(a.is_empty() && accept(e)?);
        }
        let needed = self.maps_needed(basis.len());
        if needed > self.budget {
            return Err(OracleError::Budget { needed, budget: self.budget });
        }
        let p = self.field.p();
        let mut coeffs = vec![0u8; basis.len()];
        loop {
            // next coefficient vector, skipping zero
            let mut i = 0;
            while i < coeffs.len() {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == coeffs.len() {
                return Ok(false);
            }
            let m = combine(&basis, &coeffs, self.field);
            if is_injective(a, &m) && accept(&cokernel(e, &m))? {
                return Ok(true);
            }
        }
    }

    /// Middle terms of the non-split sequences `0 -> a -> E -> b -> 0`, found by
    /// trying every injection of `a` into every module of the right dimension.
    pub fn middle_terms_bruteforce(&self, a: &Indec, b: &Indec) -> Result<Vec<Vec<Indec>>, OracleError> {
        let target: Vec<usize> = self.dims_of(a)?.iter().zip(self.dims_of(b)?).map(|(x, y)| x + y).collect();
        let mut split = vec![*a, *b];
        split.sort();
        let ra = self.rep(a)?;
        let mut out = Vec::new();
        for mut cand in self.modules_with_dims(&target) {
            cand.sort();
            if cand == split {
                continue;
            }
            let e = self.sum(&cand)?;
            if self.any_injection(&ra, &e, |c| Ok(self.decompose(c)? == [*b]))? {
                out.push(cand);
            }
        }
        out.sort();
        Ok(out)
    }

    fn dims_of(&self, x: &Indec) -> Result<Vec<usize>, OracleError> {
        self.dims.get(x).cloned().ok_or_else(|| OracleError::InvalidDescriptor(format!("{x} exceeds the length bound")))
    }

    /// Smallest set containing `gens` and the indecomposable summands of every
    /// middle term of a sequence whose end terms are sums of members, all of
    /// total dimension at most `bound`.
    ///
    /// Only sequences `0 -> X -> E -> Y -> 0` with `X` indecomposable are
    /// searched. This loses nothing: for `X = X1 + X2`, `E/X1` is an extension
    /// of `Y` by `X2` and `E` one of `E/X1` by `X1`, both shorter or with
    /// fewer left summands.
    pub fn closure_fixpoint_bruteforce(&self, gens: &[Indec], bound: usize) -> Result<BTreeSet<Indec>, OracleError> {
        let bound = bound.min(self.max_len);
        let mut members: BTreeSet<Indec> = BTreeSet::new();
        for g in gens {
            if self.dims_of(g)?.iter().sum::<usize>() <= bound {
                members.insert(*g);
            }
        }
        let universe: Vec<Vec<Indec>> = self.all_modules(bound);
        loop {
            let sum_dims: BTreeSet<Vec<usize>> = universe
                .iter()
                .filter(|m| !m.is_empty() && m.iter().all(|x| members.contains(x)))
                .map(|s| self.total_dims(s))
                .collect();
            let tops: BTreeSet<u32> = members.iter().map(|x| top_soc(x).0).collect();
            let socs: BTreeSet<u32> = members.iter().map(|x| top_soc(x).1).collect();
            let mut added = BTreeSet::new();
            for e in &universe {
                // a summand of a middle term has its top among the tops of the
                // end terms, and likewise for socles
                let fresh: Vec<&Indec> = e.iter().filter(|x| !members.contains(x) && !added.contains(*x)).collect();
                if fresh.is_empty() {
                    continue;
                }
                if !fresh.iter().all(|x| tops.contains(&top_soc(x).0) && socs.contains(&top_soc(x).1)) {
                    continue;
                }
                let de = self.total_dims(e);
                let re = self.sum(e)?;
                let mut found = false;
                for x in &members {
                    let dx = &self.dims[x];
                    if *dx == de || !dx.iter().zip(&de).all(|(a, b)| a <= b) {
                        continue;
                    }
                    let dy: Vec<usize> = de.iter().zip(dx).map(|(a, b)| a - b).collect();
                    if !sum_dims.contains(&dy) {
                        continue;
                    }
                    if self.any_injection(&self.reps[x], &re, |c| Ok(self.decompose(c)?.iter().all(|z| members.contains(z))))? {
                        found = true;
                        break;
                    }
                }
                if found {
                    added.extend(e.iter().copied());
                }
            }
            let before = members.len();
            members.extend(added);
            if members.len() == before {
                return Ok(members);
            }
        }
    }

    fn total_dims(&self, xs: &[Indec]) -> Vec<usize> {
        let mut d = vec![0; self.shape.vertices()];
        for x in xs {
            for (a, b) in d.iter_mut().zip(&self.dims[x]) {
                *a += b;
            }
        }
        d
    }

    /// Every module of total dimension at most `len`, as sorted multisets.
    fn all_modules(&self, len: usize) -> Vec<Vec<Indec>> {
        fn go(o: &Oracle, start: usize, left: usize, cur: &mut Vec<Indec>, out: &mut Vec<Vec<Indec>>) {
            out.push(cur.clone());
            for i in start..o.indecs.len() {
                let l: usize = o.dims[&o.indecs[i]].iter().sum();
                if l <= left {
                    cur.push(o.indecs[i]);
                    go(o, i, left - l, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, len, &mut Vec::new(), &mut out);
        out
    }
}
