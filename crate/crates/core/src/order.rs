//! Linearly ordered phase sets.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::OrderError;

/// Default cap on the carrier of an explicit order.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, OrderError> {
        if den == 0 {
            return Err(OrderError::ZeroDenominator);
        }
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Rational { num: sign * num / g, den: sign * den / g })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    fn cmp_value(&self, other: &Rational) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

/// A phase: an element of some linear order.
///
/// The derived `Ord` is structural and only used for map keys; order
/// semantics come from [`LinearOrder::compare`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Label(String),
    Int(i64),
    Rational(Rational),
    Infinity,
    Pair(Box<Phase>, Box<Phase>),
}

impl Phase {
    pub fn label(s: &str) -> Phase {
        Phase::Label(s.to_string())
    }

    pub fn pair(a: Phase, b: Phase) -> Phase {
        Phase::Pair(Box::new(a), Box::new(b))
    }

    /// Parses the text encoding produced by `Display`.
    pub fn parse(s: &str) -> Result<Phase, OrderError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(OrderError::BadPhase(s.to_string()));
        }
        if s.starts_with('(') && s.ends_with(')') {
            let inner = &s[1..s.len() - 1];
            let mut depth = 0i32;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    '|' if depth == 0 => {
                        let a = Phase::parse(&inner[..i])?;
                        let b = Phase::parse(&inner[i + 1..])?;
                        return Ok(Phase::pair(a, b));
                    }
                    _ => {}
                }
            }
        }
        if s == "inf" || s == "∞" {
            return Ok(Phase::Infinity);
        }
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Phase::Int(v));
        }
        if let Some((a, b)) = s.split_once('/') {
            if let (Ok(p), Ok(q)) = (a.parse::<i64>(), b.parse::<i64>()) {
                return Ok(Phase::Rational(Rational::new(p, q)?));
            }
        }
        Ok(Phase::Label(s.to_string()))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Label(s) => f.write_str(s),
            Phase::Int(v) => write!(f, "{v}"),
            Phase::Rational(r) if r.den == 1 => write!(f, "{}", r.num),
            Phase::Rational(r) => write!(f, "{}/{}", r.num, r.den),
            Phase::Infinity => f.write_str("inf"),
            Phase::Pair(a, b) => write!(f, "({a}|{b})"),
        }
    }
}

/// A finite order given by an explicit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitOrder {
    elements: Vec<Phase>,
    index: BTreeMap<Phase, usize>,
}

impl ExplicitOrder {
    pub fn elements(&self) -> &[Phase] {
        &self.elements
    }

    pub fn position(&self, p: &Phase) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Inner orders for a lexicographic product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerOrders {
    Constant(Box<LinearOrder>),
    PerElement(Vec<(Phase, LinearOrder)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOrder {
    Explicit(ExplicitOrder),
    Integers,
    RationalsWithInfinity,
    /// Elements are `Pair(a, x)` with `a` in `outer` and `x` in the inner order at `a`.
    Lex { outer: Box<LinearOrder>, inner: InnerOrders },
    /// Block refinement; elements are `Pair(phi, x)` with `x` in the block at `phi`.
    Refined { base: Box<LinearOrder>, blocks: Vec<(Phase, LinearOrder)> },
}

/// Explicit order from labels, parsed as phases.
pub fn make_finite_order(labels: &[&str]) -> Result<LinearOrder, OrderError> {
    let phases = labels.iter().map(|l| Phase::parse(l)).collect::<Result<Vec<_>, _>>()?;
    explicit_order(phases)
}

/// Explicit order on the given phases, in list order.
pub fn explicit_order(phases: Vec<Phase>) -> Result<LinearOrder, OrderError> {
    explicit_order_with_cap(phases, DEFAULT_ORDER_CAP)
}

pub fn explicit_order_with_cap(phases: Vec<Phase>, cap: usize) -> Result<LinearOrder, OrderError> {
    if phases.len() > cap {
        return Err(OrderError::TooLarge { size: phases.len(), cap });
    }
    let mut index = BTreeMap::new();
    for (i, p) in phases.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(OrderError::Duplicate(p.to_string()));
        }
    }
    Ok(LinearOrder::Explicit(ExplicitOrder { elements: phases, index }))
}

pub fn lex_product(outer: LinearOrder, inner: InnerOrders) -> Result<LinearOrder, OrderError> {
    if let InnerOrders::PerElement(list) = &inner {
        let outer_elems = outer.elements().map_err(|_| OrderError::MissingInner("(infinite outer order)".into()))?;
        for a in &outer_elems {
            if !list.iter().any(|(p, _)| p == a) {
                return Err(OrderError::MissingInner(a.to_string()));
            }
        }
    }
    Ok(LinearOrder::Lex { outer: Box::new(outer), inner })
}

/// Block refinement of a finite base order; returns the refined order, whose
/// projection is available through [`LinearOrder::project`].
pub fn refine_order(base: LinearOrder, blocks: Vec<(Phase, LinearOrder)>) -> Result<LinearOrder, OrderError> {
    let elems = base.elements()?;
    for phi in &elems {
        match blocks.iter().find(|(p, _)| p == phi) {
            None => return Err(OrderError::EmptyBlock(phi.to_string())),
            Some((_, b)) => {
                if b.elements().map(|e| e.is_empty()).unwrap_or(false) {
                    return Err(OrderError::EmptyBlock(phi.to_string()));
                }
            }
        }
    }
    Ok(LinearOrder::Refined { base: Box::new(base), blocks })
}

impl LinearOrder {
    pub fn is_finite(&self) -> bool {
        match self {
            LinearOrder::Explicit(_) => true,
            LinearOrder::Integers | LinearOrder::RationalsWithInfinity => false,
            LinearOrder::Lex { outer, inner } => {
                outer.is_finite()
                    && match inner {
                        InnerOrders::Constant(o) => o.is_finite(),
                        InnerOrders::PerElement(l) => l.iter().all(|(_, o)| o.is_finite()),
                    }
            }
            LinearOrder::Refined { base, blocks } => base.is_finite() && blocks.iter().all(|(_, o)| o.is_finite()),
        }
    }

    fn inner_at(&self, a: &Phase) -> Option<&LinearOrder> {
        match self {
            LinearOrder::Lex { inner: InnerOrders::Constant(o), .. } => Some(o),
            LinearOrder::Lex { inner: InnerOrders::PerElement(l), .. } => l.iter().find(|(p, _)| p == a).map(|(_, o)| o),
            LinearOrder::Refined { blocks, .. } => blocks.iter().find(|(p, _)| p == a).map(|(_, o)| o),
            _ => None,
        }
    }

    pub fn contains(&self, p: &Phase) -> bool {
        match self {
            LinearOrder::Explicit(e) => e.index.contains_key(p),
            LinearOrder::Integers => matches!(p, Phase::Int(_)),
            LinearOrder::RationalsWithInfinity => matches!(p, Phase::Int(_) | Phase::Rational(_) | Phase::Infinity),
            LinearOrder::Lex { outer, .. } | LinearOrder::Refined { base: outer, .. } => match p {
                Phase::Pair(a, x) => outer.contains(a) && self.inner_at(a).map(|o| o.contains(x)).unwrap_or(false),
                _ => false,
            },
        }
    }

    /// Total comparison of two carried elements.
    pub fn compare(&self, a: &Phase, b: &Phase) -> Result<Ordering, OrderError> {
        for p in [a, b] {
            if !self.contains(p) {
                return Err(OrderError::NotInOrder(p.to_string()));
            }
        }
        Ok(match self {
            LinearOrder::Explicit(e) => e.index[a].cmp(&e.index[b]),
            LinearOrder::Integers => match (a, b) {
                (Phase::Int(x), Phase::Int(y)) => x.cmp(y),
                _ => unreachable!(),
            },
            LinearOrder::RationalsWithInfinity => {
                let key = |p: &Phase| match p {
                    Phase::Int(v) => Some(Rational { num: *v, den: 1 }),
                    Phase::Rational(r) => Some(*r),
                    _ => None,
                };
                match (key(a), key(b)) {
                    (Some(x), Some(y)) => x.cmp_value(&y),
                    (Some(_), None) => Ordering::Less,
                    (None, Some(_)) => Ordering::Greater,
                    (None, None) => Ordering::Equal,
                }
            }
            LinearOrder::Lex { outer, .. } | LinearOrder::Refined { base: outer, .. } => {
                let (Phase::Pair(a0, a1), Phase::Pair(b0, b1)) = (a, b) else { unreachable!() };
                match outer.compare(a0, b0)? {
                    Ordering::Equal => self.inner_at(a0).expect("checked by contains").compare(a1, b1)?,
                    o => o,
                }
            }
        })
    }

    /// Ascending list of elements; an error for infinite orders.
    pub fn elements(&self) -> Result<Vec<Phase>, OrderError> {
        match self {
            LinearOrder::Explicit(e) => Ok(e.elements.clone()),
            LinearOrder::Integers | LinearOrder::RationalsWithInfinity => Err(OrderError::Infinite),
            LinearOrder::Lex { outer, .. } | LinearOrder::Refined { base: outer, .. } => {
                let mut out = Vec::new();
                for a in outer.elements()? {
                    let inner = self.inner_at(&a).ok_or_else(|| OrderError::MissingInner(a.to_string()))?;
                    for x in inner.elements()? {
                        out.push(Phase::pair(a.clone(), x));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Projection of a refined order onto its base.
    pub fn project(&self, p: &Phase) -> Option<Phase> {
        match (self, p) {
            (LinearOrder::Refined { .. }, Phase::Pair(a, _)) if self.contains(p) => Some((**a).clone()),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            LinearOrder::Explicit(_) => "explicit",
            LinearOrder::Integers => "integers",
            LinearOrder::RationalsWithInfinity => "rationals-with-infinity",
            LinearOrder::Lex { .. } => "lex-product",
            LinearOrder::Refined { .. } => "refined",
        }
    }

    /// Sorts phases ascending; fails on phases outside the order.
    pub fn sort(&self, phases: &mut [Phase]) -> Result<(), OrderError> {
        for p in phases.iter() {
            if !self.contains(p) {
                return Err(OrderError::NotInOrder(p.to_string()));
            }
        }
        phases.sort_by(|a, b| self.compare(a, b).expect("membership checked"));
        Ok(())
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.elements() {
            Ok(e) => {
                let parts: Vec<String> = e.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(" < "))
            }
            Err(_) => f.write_str(&format!("<{}>", self.kind_name())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(v: &[&str]) -> Vec<Phase> {
        v.iter().map(|s| Phase::parse(s).unwrap()).collect()
    }

    #[test]
    fn finite_order_follows_list_position() {
        let o = make_finite_order(&["-", "+"]).unwrap();
        assert_eq!(o.compare(&Phase::label("-"), &Phase::label("+")).unwrap(), Ordering::Less);
        let o = make_finite_order(&["a"]).unwrap();
        assert_eq!(o.elements().unwrap().len(), 1);
        assert!(matches!(make_finite_order(&["a", "b", "a"]), Err(OrderError::Duplicate(l)) if l == "a"));
    }

    #[test]
    fn cap_is_enforced() {
        let many: Vec<Phase> = (0..20).map(Phase::Int).collect();
        assert!(matches!(explicit_order_with_cap(many, 10), Err(OrderError::TooLarge { .. })));
    }

    #[test]
    fn lex_product_constant_inner() {
        let outer = make_finite_order(&["1", "2"]).unwrap();
        let inner = make_finite_order(&["a", "b"]).unwrap();
        let o = lex_product(outer, InnerOrders::Constant(Box::new(inner))).unwrap();
        let e: Vec<String> = o.elements().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(e, ["(1|a)", "(1|b)", "(2|a)", "(2|b)"]);
    }

    #[test]
    fn lex_product_missing_inner_is_named() {
        let outer = make_finite_order(&["1", "2"]).unwrap();
        let inner = make_finite_order(&["a"]).unwrap();
        let r = lex_product(outer, InnerOrders::PerElement(alloc::vec![(Phase::Int(1), inner)]));
        assert!(matches!(r, Err(OrderError::MissingInner(l)) if l == "2"));
    }

    #[test]
    fn lex_over_rationals_compares_without_enumeration() {
        let pts = make_finite_order(&["x", "y"]).unwrap();
        let o = lex_product(LinearOrder::RationalsWithInfinity, InnerOrders::Constant(Box::new(pts))).unwrap();
        let half = Phase::Rational(Rational::new(1, 2).unwrap());
        let a = Phase::pair(half.clone(), Phase::label("y"));
        let b = Phase::pair(Phase::Int(1), Phase::label("x"));
        let c = Phase::pair(Phase::Infinity, Phase::label("x"));
        assert_eq!(o.compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&c, &b).unwrap(), Ordering::Greater);
        assert!(o.elements().is_err());
    }

    #[test]
    fn singleton_outer_matches_inner() {
        let inner = make_finite_order(&["p", "q", "r"]).unwrap();
        let o = lex_product(make_finite_order(&["*"]).unwrap(), InnerOrders::Constant(Box::new(inner.clone()))).unwrap();
        let e = o.elements().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let (a, b) = (&inner.elements().unwrap()[i], &inner.elements().unwrap()[j]);
                assert_eq!(o.compare(&e[i], &e[j]).unwrap(), inner.compare(a, b).unwrap());
            }
        }
    }

    #[test]
    fn refine_blocks_and_projection() {
        let base = make_finite_order(&["1", "2"]).unwrap();
        let o = refine_order(
            base,
            alloc::vec![
                (Phase::Int(1), make_finite_order(&["a", "b"]).unwrap()),
                (Phase::Int(2), make_finite_order(&["c"]).unwrap()),
            ],
        )
        .unwrap();
        let e = o.elements().unwrap();
        let shown: Vec<String> = e.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["(1|a)", "(1|b)", "(2|c)"]);
        let proj: Vec<Phase> = e.iter().map(|p| o.project(p).unwrap()).collect();
        assert_eq!(proj, labels(&["1", "1", "2"]));
    }

    #[test]
    fn refine_singleton_into_two() {
        let base = make_finite_order(&["phi"]).unwrap();
        let o = refine_order(base, alloc::vec![(Phase::label("phi"), make_finite_order(&["-", "+"]).unwrap())]).unwrap();
        let e = o.elements().unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(o.compare(&e[0], &e[1]).unwrap(), Ordering::Less);
    }

    #[test]
    fn refine_rejects_missing_or_empty_blocks() {
        let base = make_finite_order(&["1", "2"]).unwrap();
        let r = refine_order(base.clone(), alloc::vec![(Phase::Int(1), make_finite_order(&["a"]).unwrap())]);
        assert!(matches!(r, Err(OrderError::EmptyBlock(l)) if l == "2"));
        let r = refine_order(
            base,
            alloc::vec![
                (Phase::Int(1), make_finite_order(&["a"]).unwrap()),
                (Phase::Int(2), explicit_order(Vec::new()).unwrap()),
            ],
        );
        assert!(matches!(r, Err(OrderError::EmptyBlock(l)) if l == "2"));
    }

    #[test]
    fn infinite_orders_refuse_enumeration() {
        assert!(matches!(LinearOrder::Integers.elements(), Err(OrderError::Infinite)));
        assert_eq!(LinearOrder::Integers.compare(&Phase::Int(-3), &Phase::Int(2)).unwrap(), Ordering::Less);
        assert!(LinearOrder::Integers.compare(&Phase::Infinity, &Phase::Int(2)).is_err());
    }

    #[test]
    fn phase_text_round_trip() {
        for s in ["a", "-3", "1/2", "inf", "(1|a)", "((0|1)|x)", "x1+c"] {
            assert_eq!(Phase::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Phase::parse("2/4").unwrap().to_string(), "1/2");
        assert_eq!(Phase::parse("3/-6").unwrap().to_string(), "-1/2");
    }

    fn order_strategy() -> impl Strategy<Value = LinearOrder> {
        let leaf = (1usize..6).prop_map(|k| explicit_order((0..k as i64).map(Phase::Int).collect()).unwrap());
        leaf.prop_recursive(2, 40, 4, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| {
                let blocks: Vec<(Phase, LinearOrder)> = a.elements().unwrap().into_iter().map(|p| (p, b.clone())).collect();
                refine_order(a, blocks).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn order_axioms_hold(o in order_strategy()) {
            let e = o.elements().unwrap();
            prop_assume!(e.len() <= 50);
            for i in 0..e.len() {
                for j in 0..e.len() {
                    let c = o.compare(&e[i], &e[j]).unwrap();
                    prop_assert_eq!(c, i.cmp(&j));
                    prop_assert_eq!(o.compare(&e[j], &e[i]).unwrap(), c.reverse());
                }
            }
        }

        #[test]
        fn refinement_projection_is_order_non_reversing(k in 1usize..6, sizes in proptest::collection::vec(1usize..4, 6)) {
            let base = explicit_order((0..k as i64).map(Phase::Int).collect()).unwrap();
            let blocks: Vec<(Phase, LinearOrder)> = (0..k)
                .map(|i| (Phase::Int(i as i64), explicit_order((0..sizes[i] as i64).map(Phase::Int).collect()).unwrap()))
                .collect();
            let o = refine_order(base.clone(), blocks).unwrap();
            let e = o.elements().unwrap();
            for a in &e {
                for b in &e {
                    if o.compare(a, b).unwrap() == Ordering::Greater {
                        let (ra, rb) = (o.project(a).unwrap(), o.project(b).unwrap());
                        prop_assert!(base.compare(&ra, &rb).unwrap() != Ordering::Less);
                    }
                }
            }
            let mut images: Vec<Phase> = e.iter().map(|p| o.project(p).unwrap()).collect();
            images.dedup();
            prop_assert_eq!(images, base.elements().unwrap());
        }

        #[test]
        fn singleton_refinement_is_isomorphic(k in 1usize..20) {
            let base = explicit_order((0..k as i64).map(Phase::Int).collect()).unwrap();
            let blocks: Vec<(Phase, LinearOrder)> = base.elements().unwrap().into_iter()
                .map(|p| (p, make_finite_order(&["*"]).unwrap())).collect();
            let o = refine_order(base.clone(), blocks).unwrap();
            let e = o.elements().unwrap();
            let b = base.elements().unwrap();
            prop_assert_eq!(e.len(), b.len());
            for i in 0..k {
                prop_assert_eq!(o.project(&e[i]).unwrap(), b[i].clone());
            }
        }
    }
}
