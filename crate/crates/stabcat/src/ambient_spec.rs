//! Ambient spec strings and object descriptors.
//!
//! Spec strings: `tube:3`, `an:3`, `p1:window=-5..5:points=3`,
//! `x2:window=-4..4:points=3`, `kronecker:window=6:points=3` (or
//! `window=K,D`). The short positional forms `p1:-5..5:3`, `x2:-4..4:3` and
//! `kron:6:6:3` are accepted too; omitted keys take the defaults.

use stabcat_core::interval::{Interval, IntervalCategory};
use stabcat_core::sheaves::kronecker::{KronIndec, KronModel};
use stabcat_core::sheaves::p1::{P1Indec, P1Model};
use stabcat_core::sheaves::x2::{X2Indec, X2Model};
use stabcat_core::tube::{TubeCategory, TubeIndec};
use stabcat_core::{Ambient, Indec, Members, Point};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub enum Model {
    Tube(u32),
    An(u32),
    P1(P1Model),
    Kron(KronModel),
    X2(X2Model),
}

pub struct Context {
    pub model: Model,
    pub amb: Ambient,
}

impl std::fmt::Debug for Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Context").field("model", &self.model).finish()
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| usage(format!("bad {what}: {s:?}")))
}

fn parse_range(s: &str) -> Result<(i32, i32), CliError> {
    let (a, b) = s.split_once("..").ok_or_else(|| usage(format!("expected a range lo..hi, got {s:?}")))?;
    Ok((parse_num(a, "range start")?, parse_num(b, "range end")?))
}

/// Splits `key=value` fields; positional fields come back with an empty key.
fn fields(rest: &str) -> Vec<(&str, &str)> {
    if rest.is_empty() {
        return Vec::new();
    }
    rest.split(':').map(|f| f.split_once('=').unwrap_or(("", f))).collect()
}

pub fn parse_model(spec: &str) -> Result<Model, CliError> {
    let spec = spec.trim();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let fs = fields(rest);
    let unknown = |k: &str| usage(format!("unknown key {k:?} in ambient spec {spec:?}"));
    match kind {
        "tube" | "an" => {
            let [("", n)] = fs.as_slice() else {
                return Err(usage(format!("expected {kind}:N, got {spec:?}")));
            };
            let n: u32 = parse_num(n, "rank")?;
            if n == 0 {
                return Err(usage("rank must be positive"));
            }
            Ok(if kind == "tube" { Model::Tube(n) } else { Model::An(n) })
        }
        "p1" | "x2" => {
            let (mut lo, mut hi, mut points) = match kind {
                "p1" => {
                    let d = P1Model::default();
                    (d.lo, d.hi, d.points)
                }
                _ => {
                    let d = X2Model::default();
                    (d.lmin, d.lmax, d.points)
                }
            };
            for (i, (k, v)) in fs.iter().enumerate() {
                match (*k, i) {
                    ("window", _) | ("", 0) => (lo, hi) = parse_range(v)?,
                    ("points", _) | ("", 1) => points = parse_num(v, "point count")?,
                    (k, _) => return Err(unknown(k)),
                }
            }
            if kind == "p1" {
                Ok(Model::P1(P1Model::new(lo, hi, points)?))
            } else {
                Ok(Model::X2(X2Model::new(lo, hi, points)?))
            }
        }
        "kronecker" | "kron" => {
            let d = KronModel::default();
            let (mut k, mut dm, mut points) = (d.k_max, d.d_max, d.points);
            let positional: Vec<&str> = fs.iter().filter(|(k, _)| k.is_empty()).map(|(_, v)| *v).collect();
            if !positional.is_empty() {
                let [a, b, c] = positional.as_slice() else {
                    return Err(usage(format!("expected kron:K:D:POINTS, got {spec:?}")));
                };
                (k, dm, points) = (parse_num(a, "K")?, parse_num(b, "D")?, parse_num(c, "point count")?);
            }
            for (key, v) in fs.iter().filter(|(k, _)| !k.is_empty()) {
                match *key {
                    "window" => match v.split_once(',') {
                        Some((a, b)) => (k, dm) = (parse_num(a, "K")?, parse_num(b, "D")?),
                        None => {
                            k = parse_num(v, "window")?;
                            dm = k;
                        }
                    },
                    "points" => points = parse_num(v, "point count")?,
                    other => return Err(unknown(other)),
                }
            }
            Ok(Model::Kron(KronModel::new(k, dm, points)?))
        }
        _ => Err(usage(format!("unknown ambient {kind:?}; expected tube, an, p1, x2 or kronecker"))),
    }
}

impl Model {
    pub fn ambient(&self) -> Result<Ambient, CliError> {
        Ok(match self {
            Model::Tube(n) => Ambient::new(Box::new(TubeCategory::new(*n)))?,
            Model::An(n) => Ambient::new(Box::new(IntervalCategory::new(*n)))?,
            Model::P1(m) => m.ambient()?,
            Model::Kron(m) => m.ambient()?,
            Model::X2(m) => m.ambient()?,
        })
    }

    pub fn windowed(&self) -> bool {
        matches!(self, Model::P1(_) | Model::Kron(_) | Model::X2(_))
    }
}

pub fn parse_ambient(spec: &str) -> Result<Context, CliError> {
    let model = parse_model(spec)?;
    let amb = model.ambient()?;
    Ok(Context { model, amb })
}

/// `^(t)` suffix, or length 1 when absent.
fn split_len(s: &str) -> Result<(&str, u32), CliError> {
    match s.split_once('^') {
        Some((head, tail)) => {
            let t = tail.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(tail.trim());
            let t: u32 = parse_num(t, "length")?;
            if t == 0 {
                return Err(usage(format!("zero length in {s:?}")));
            }
            Ok((head.trim(), t))
        }
        None => Ok((s, 1)),
    }
}

/// Strips one of the given prefixes and optional brackets: `S_1`, `S1`, `S[1]`.
fn index_after<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    Some(rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(rest).trim())
}

fn point(s: &str, points: u8) -> Result<Point, CliError> {
    let p = Point::parse(s).ok_or_else(|| usage(format!("unknown point {s:?}")))?;
    if p.0 >= points {
        return Err(usage(format!("point {s} is outside the {points} sample points")));
    }
    Ok(p)
}

/// Degree of an `X(2)` line from `l c + e x1`, with `c = 2 x1`.
pub fn parse_x2_degree(s: &str) -> Result<i32, CliError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(usage("empty degree"));
    }
    let mut total = 0i32;
    let mut term = String::new();
    let mut terms = Vec::new();
    for c in compact.chars() {
        if (c == '+' || c == '-') && !term.is_empty() {
            terms.push(std::mem::take(&mut term));
        }
        term.push(c);
    }
    terms.push(term);
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, unit) = if let Some(c) = body.strip_suffix("x1") {
            (c, 1)
        } else if let Some(c) = body.strip_suffix('c') {
            (c, 2)
        } else if body == "0" {
            ("0", 0)
        } else {
            return Err(usage(format!("bad degree term {t:?}; use multiples of c and x1")));
        };
        let coef = if coef.is_empty() { 1 } else { parse_num::<i32>(coef.trim_end_matches('*'), "coefficient")? };
        total += sign * coef * unit;
    }
    Ok(total)
}

impl Context {
    /// Parses a descriptor in the syntax of this ambient.
    pub fn parse_indec(&self, s: &str) -> Result<Indec, CliError> {
        let raw = s.trim();
        let bad = || usage(format!("cannot read {raw:?} as an object of {}", self.amb.spec()));
        let x = match &self.model {
            Model::Tube(n) => {
                let body = raw.split_once('@').map_or(raw, |(b, r)| if r.trim() == n.to_string() { b } else { "" });
                let (head, t) = split_len(body)?;
                let j: u32 = index_after(head, "S").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Indec::Tube(TubeIndec::new(*n, j, t).map_err(|e| usage(e.to_string()))?)
            }
            Model::An(n) => {
                let n = *n;
                let body = raw.split_once('@').map_or(raw, |(b, r)| if r.trim() == format!("A{n}") { b } else { "" });
                let num = |v: &str| v.trim().parse::<u32>().map_err(|_| bad());
                let m = if let Some(r) = index_after(body, "M") {
                    let (a, b) = r.split_once(',').ok_or_else(bad)?;
                    Interval::new(n, num(a)?, num(b)?)
                } else if let Some(r) = index_after(body, "S") {
                    Interval::simple(n, num(r)?)
                } else if let Some(r) = index_after(body, "P") {
                    Interval::projective(n, num(r)?)
                } else if let Some(r) = index_after(body, "I") {
                    Interval::injective(n, num(r)?)
                } else {
                    return Err(bad());
                };
                Indec::Interval(m.map_err(|e| usage(e.to_string()))?)
            }
            Model::P1(m) => {
                if let Some(d) = raw.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                    Indec::P1(P1Indec::Line(parse_num(d, "degree")?))
                } else {
                    let (head, t) = split_len(raw)?;
                    let x = head.strip_prefix("S[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
                    Indec::P1(P1Indec::Torsion { x: point(x, m.points)?, t })
                }
            }
            Model::Kron(m) => {
                let (head, t) = split_len(raw)?;
                if let Some(x) = head.strip_prefix("R[").and_then(|r| r.strip_suffix(']')) {
                    Indec::Kron(KronIndec::Reg { x: point(x, m.points)?, d: t })
                } else if let Some(k) = index_after(head, "P") {
                    Indec::Kron(KronIndec::Pre(parse_num(k, "index")?))
                } else if let Some(k) = index_after(head, "I") {
                    Indec::Kron(KronIndec::Inj(parse_num(k, "index")?))
                } else {
                    return Err(bad());
                }
            }
            Model::X2(m) => {
                if let Some(d) = raw.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                    Indec::X2(X2Indec::Line(parse_x2_degree(d)?))
                } else {
                    let (head, t) = split_len(raw)?;
                    let inner = head.strip_prefix("S[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
                    match inner.split_once(',') {
                        Some((one, j)) if one.trim() == "1" => {
                            let j: u32 = parse_num(j, "exceptional index")?;
                            if j > 1 {
                                return Err(usage(format!("exceptional index {j} must be 0 or 1")));
                            }
                            Indec::X2(X2Indec::Exc { j, t })
                        }
                        Some(_) => return Err(bad()),
                        None => Indec::X2(X2Indec::Ord { x: point(inner, m.points)?, t }),
                    }
                }
            }
        };
        Ok(x)
    }

    /// Carrier index of an object, through its representative.
    pub fn index(&self, x: &Indec) -> Result<usize, CliError> {
        self.amb.rep_index(x).ok_or_else(|| {
            let msg = format!("{x} is outside the carrier of {}", self.amb.spec());
            if self.amb.windowed() {
                CliError::Window(msg)
            } else {
                usage(msg)
            }
        })
    }

    pub fn members_of(&self, names: &[String]) -> Result<Members, CliError> {
        let mut m = Members::EMPTY;
        for s in names {
            m.insert(self.index(&self.parse_indec(s)?)?);
        }
        Ok(m)
    }

    pub fn closure_of(&self, names: &[String]) -> Result<Members, CliError> {
        Ok(self.amb.closure(self.members_of(names)?))
    }

    /// Descriptor strings of the members, in carrier order.
    pub fn names(&self, m: Members) -> Vec<String> {
        self.amb.indecs(m).iter().map(|x| x.to_string()).collect()
    }
}
