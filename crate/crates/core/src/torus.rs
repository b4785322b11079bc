//! The quantum torus `T_q` in its standard basis `{x^a y^b}`.
//!
//! Every product is reduced immediately with the single reordering rule
//! `y^b · x^a = q^(-2ab) x^a y^b` (from `xy = q^2 yx`), so two elements are
//! equal exactly when their term maps are equal.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::{Error, QHalf};

/// Basis element `x^a y^b`. Ordered by `a`, then `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: i64,
    pub b: i64,
}

impl Monomial {
    pub const UNIT: Monomial = Monomial { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        Monomial { a, b }
    }

    fn text(&self) -> String {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.a), ("y", self.b)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("·")
    }
}

/// Commutation convention: the power of `s = q^(1/2)` produced per unit of
/// `b1·a2` when `y^b1` is moved past `x^a2`. The algebra's relation
/// `xy = q^2 yx` gives `s^-4`; the other values exist for mutation tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Twist(pub i64);

impl Twist {
    pub const STANDARD: Twist = Twist(-4);
    /// `q^-2` replaced by `q^2`.
    pub const FLIPPED: Twist = Twist(4);
    /// `q^-2` replaced by `q^-1`.
    pub const HALVED: Twist = Twist(-2);
}

thread_local! {
    static TWIST: Cell<Twist> = const { Cell::new(Twist::STANDARD) };
}

/// Runs `f` with a different commutation convention on this thread.
/// Intended only for mutation testing of the verifier.
pub fn with_twist<R>(twist: Twist, f: impl FnOnce() -> R) -> R {
    struct Restore(Twist);
    impl Drop for Restore {
        fn drop(&mut self) {
            TWIST.with(|t| t.set(self.0));
        }
    }
    let _restore = Restore(TWIST.with(|t| t.replace(twist)));
    f()
}

/// The convention in force on this thread.
pub fn current_twist() -> Twist {
    TWIST.with(|t| t.get())
}

/// Exponent of `s` in the reordering scalar of `m1 · m2`.
fn twist_exponent(m1: Monomial, m2: Monomial) -> i64 {
    TWIST.with(|t| t.get().0) * m1.b * m2.a
}

/// `x^a1 y^b1 · x^a2 y^b2 = q^(-2 b1 a2) x^(a1+a2) y^(b1+b2)`.
pub fn mono_mul(m1: Monomial, m2: Monomial) -> (QHalf, Monomial) {
    (
        QHalf::q_power(twist_exponent(m1, m2)),
        Monomial::new(m1.a + m2.a, m1.b + m2.b),
    )
}

/// An element of `T_q`: a finite sum of nonzero multiples of basis monomials.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, QHalf>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Self::scalar(QHalf::one())
    }

    pub fn scalar(c: QHalf) -> Self {
        Self::term(c, Monomial::UNIT)
    }

    pub fn term(c: QHalf, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    /// `x^a y^b` with coefficient 1.
    pub fn mono(a: i64, b: i64) -> Self {
        Self::term(QHalf::one(), Monomial::new(a, b))
    }

    pub fn x() -> Self {
        Self::mono(1, 0)
    }

    pub fn y() -> Self {
        Self::mono(0, 1)
    }

    pub fn x_inv() -> Self {
        Self::mono(-1, 0)
    }

    pub fn y_inv() -> Self {
        Self::mono(0, -1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, QHalf)>) -> Self {
        let mut out = Element::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QHalf)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> QHalf {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// The coefficient when the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<QHalf> {
        match self.terms.len() {
            0 => Some(QHalf::zero()),
            1 => self.terms.get(&Monomial::UNIT).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &QHalf) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &QHalf) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut buckets: BTreeMap<Monomial, Vec<QHalf>> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let k = twist_exponent(*m1, *m2);
                let m = Monomial::new(m1.a + m2.a, m1.b + m2.b);
                buckets.entry(m).or_default().push((c1 * c2).mul_q_power(k));
            }
        }
        let mut terms = BTreeMap::new();
        for (m, cs) in buckets {
            let sum = sum_scalars(cs);
            if !sum.is_zero() {
                terms.insert(m, sum);
            }
        }
        Element { terms }
    }

    /// `u^n`. Negative `n` is allowed only for single-term elements.
    pub fn pow(&self, n: i64) -> Result<Self, Error> {
        if n >= 0 {
            let mut acc = Self::one();
            for _ in 0..n {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        let inv = self.inverse()?;
        inv.pow(-n)
    }

    /// Two-sided inverse of a single term `c·x^a y^b`.
    pub fn inverse(&self) -> Result<Self, Error> {
        if self.terms.len() != 1 {
            return Err(if self.is_zero() {
                Error::DivisionByZero
            } else {
                Error::UnsupportedInverse
            });
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv_m = Monomial::new(-m.a, -m.b);
        // m · inv_m = s^k · 1, so the inverse is c^-1 s^-k inv_m.
        let k = twist_exponent(*m, inv_m);
        Ok(Self::term(c.inv()?.mul_q_power(-k), inv_m))
    }

    /// `[u, v] = uv - vu`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `[u, v]_r = r uv - r^-1 vu`.
    pub fn q_commutator(&self, other: &Self, r: &QHalf) -> Result<Self, Error> {
        let r_inv = r
            .inv()
            .map_err(|_| Error::Domain("r-commutator with r = 0".into()))?;
        Ok(self.mul(other).scale(r).sub(&other.mul(self).scale(&r_inv)))
    }

    /// `z^k` for `z = q^-1 xy`, reduced to standard form (`q^(-k^2) x^k y^k`).
    pub fn z_power(k: i64) -> Self {
        let z = Self::term(QHalf::q_pow(-1), Monomial::new(1, 1));
        z.pow(k).expect("z is a single term")
    }

    /// Deterministic text form, terms in increasing `(a, b)` order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let several = self.terms.len() > 1;
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono = m.text();
            let term = if mono.is_empty() {
                if several && !c.is_single_term() {
                    format!("({c})")
                } else {
                    c.to_text()
                }
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else if c.is_single_term() {
                format!("{c}·{mono}")
            } else {
                format!("({c})·{mono}")
            };
            if out.is_empty() {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }

    /// `{"terms": [{"a": int, "b": int, "coeff": <scalar>}]}`, sorted like text.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"a": m.a, "b": m.b, "coeff": c.to_json()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = || Error::Usage("element JSON must be {\"terms\": [{a, b, coeff}]}".into());
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
        let mut out = Element::zero();
        for t in terms {
            let a = t.get("a").and_then(Value::as_i64).ok_or_else(bad)?;
            let b = t.get("b").and_then(Value::as_i64).ok_or_else(bad)?;
            let c = QHalf::from_json(t.get("coeff").ok_or_else(bad)?)?;
            out.add_term(Monomial::new(a, b), &c);
        }
        Ok(out)
    }
}

/// Pairwise summation keeps intermediate fractions small.
fn sum_scalars(mut cs: Vec<QHalf>) -> QHalf {
    while cs.len() > 1 {
        let mut next = Vec::with_capacity(cs.len().div_ceil(2));
        let mut it = cs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        cs = next;
    }
    cs.pop().unwrap_or_default()
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.to_text())
    }
}

impl From<QHalf> for Element {
    fn from(c: QHalf) -> Self {
        Element::scalar(c)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                Element::$method(self, rhs)
            }
        }
        impl $trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                Element::$method(&self, &rhs)
            }
        }
        impl $trait<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                Element::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Mul<&QHalf> for &Element {
    type Output = Element;
    fn mul(self, rhs: &QHalf) -> Element {
        self.scale(rhs)
    }
}

impl Mul<QHalf> for Element {
    type Output = Element;
    fn mul(self, rhs: QHalf) -> Element {
        self.scale(&rhs)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> QHalf {
        QHalf::q_pow(k)
    }

    fn w0() -> Element {
        Element::x() + Element::x_inv()
    }

    fn w1() -> Element {
        Element::y() + Element::y_inv()
    }

    #[test]
    fn monomial_products() {
        let (c, m) = mono_mul(Monomial::new(1, 0), Monomial::new(0, 1));
        assert!(c.is_one());
        assert_eq!(m, Monomial::new(1, 1));
        let (c, m) = mono_mul(Monomial::new(0, 1), Monomial::new(1, 0));
        assert_eq!((c, m), (q(-2), Monomial::new(1, 1)));
        let (c, m) = mono_mul(Monomial::new(2, 3), Monomial::new(1, -1));
        assert_eq!((c, m), (q(-6), Monomial::new(3, 2)));
    }

    #[test]
    fn linear_ops() {
        assert_eq!(Element::x() + Element::x_inv(), w0());
        let u = w0() * w1();
        assert!((&u - &u).is_zero());
        let scaled = w1().scale(&q(2));
        assert_eq!(scaled.coeff(Monomial::new(0, 1)), q(2));
        assert_eq!(scaled.coeff(Monomial::new(0, -1)), q(2));
        assert_eq!(scaled.len(), 2);
    }

    #[test]
    fn products_of_generators() {
        let expect = Element::mono(1, 1)
            + Element::mono(1, -1)
            + Element::mono(-1, 1)
            + Element::mono(-1, -1);
        assert_eq!(w0() * w1(), expect);
        let expect = Element::from_terms([
            (Monomial::new(1, 1), q(-2)),
            (Monomial::new(1, -1), q(2)),
            (Monomial::new(-1, 1), q(2)),
            (Monomial::new(-1, -1), q(-2)),
        ]);
        assert_eq!(w1() * w0(), expect);
        assert_eq!(w0() * Element::one(), w0());
    }

    #[test]
    fn powers_and_inverses() {
        let xy = Element::mono(1, 1);
        assert_eq!(
            xy.pow(2).unwrap(),
            Element::term(q(-2), Monomial::new(2, 2))
        );
        assert_eq!(w0().pow(0).unwrap(), Element::one());
        let inv = xy.pow(-1).unwrap();
        assert_eq!(inv, Element::term(q(-2), Monomial::new(-1, -1)));
        assert_eq!(&xy * &inv, Element::one());
        assert_eq!(&inv * &xy, Element::one());
        assert_eq!(w0().pow(-1), Err(Error::UnsupportedInverse));
        assert_eq!(
            w0().pow(2).unwrap(),
            Element::mono(2, 0) + Element::scalar(QHalf::from_int(2)) + Element::mono(-2, 0)
        );
    }

    #[test]
    fn commutators() {
        assert!(Element::x().commutator(&Element::x()).is_zero());
        let c = Element::x().commutator(&Element::y());
        assert_eq!(c, Element::term(QHalf::one() - q(-2), Monomial::new(1, 1)));
        assert!(w0().q_commutator(&w1(), &QHalf::zero()).is_err());
    }

    #[test]
    fn b_delta_from_generators() {
        // q^-2 w1 w0 - w0 w1 = -(q^2 - q^-2)(yx + y^-1 x^-1)
        let b_delta = (w1() * w0()).scale(&q(-2)) - w0() * w1();
        let yx = Element::y() * Element::x();
        let yixi = Element::y_inv() * Element::x_inv();
        let expect = (yx + yixi).scale(&(q(-2) - q(2)));
        assert_eq!(b_delta, expect);
        assert_eq!(b_delta.to_text(), "(-1 + q^-4)·x^-1·y^-1 + (-1 + q^-4)·x·y");
    }

    #[test]
    fn defining_relations() {
        let (x, y, xi, yi) = (
            Element::x(),
            Element::y(),
            Element::x_inv(),
            Element::y_inv(),
        );
        assert_eq!(&x * &xi, Element::one());
        assert_eq!(&xi * &x, Element::one());
        assert_eq!(&y * &yi, Element::one());
        assert_eq!(&yi * &y, Element::one());
        assert_eq!(&x * &y, (&y * &x).scale(&q(2)));
        assert_eq!(&xi * &y, (&y * &xi).scale(&q(-2)));
        assert_eq!(&xi * &yi, (&yi * &xi).scale(&q(2)));
        assert_eq!(&x * &yi, (&yi * &x).scale(&q(-2)));
    }

    #[test]
    fn xy_family_commutes() {
        let (x, y, xi, yi) = (
            Element::x(),
            Element::y(),
            Element::x_inv(),
            Element::y_inv(),
        );
        let four = [&x * &y, &y * &x, &xi * &yi, &yi * &xi];
        for a in &four {
            for b in &four {
                assert!(a.commutator(b).is_zero());
            }
        }
    }

    #[test]
    fn z_relations() {
        assert_eq!(Element::z_power(0), Element::one());
        assert_eq!(
            Element::z_power(1),
            Element::term(q(-1), Monomial::new(1, 1))
        );
        assert_eq!(
            Element::z_power(-1),
            Element::term(q(-1), Monomial::new(-1, -1))
        );
        let z = Element::z_power(1);
        assert_eq!(&z, &(&Element::y() * &Element::x()).scale(&q(1)));
        assert_eq!(&z * &Element::y(), (&Element::y() * &z).scale(&q(2)));
        assert_eq!(&z * &Element::x(), (&Element::x() * &z).scale(&q(-2)));
        for k in -5..=5 {
            assert_eq!(
                Element::z_power(k),
                Element::term(q(-k * k), Monomial::new(k, k))
            );
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(w0().to_text(), "x^-1 + x");
        assert_eq!(Element::zero().to_text(), "0");
        let e = Element::term(q(-2), Monomial::new(2, 3)) - Element::one();
        assert_eq!(e.to_text(), "-1 + q^-2·x^2·y^3");
    }

    #[test]
    fn json_shape() {
        let v = w0().to_json();
        let unit = QHalf::one().to_json();
        assert_eq!(
            v,
            json!({"terms": [{"a": -1, "b": 0, "coeff": unit}, {"a": 1, "b": 0, "coeff": unit}]})
        );
        assert_eq!(Element::from_json(&v).unwrap(), w0());
    }

    #[test]
    fn twist_override_is_scoped() {
        let flipped = with_twist(Twist::FLIPPED, || Element::y() * Element::x());
        assert_eq!(flipped, Element::term(q(2), Monomial::new(1, 1)));
        assert_eq!(
            Element::y() * Element::x(),
            Element::term(q(-2), Monomial::new(1, 1))
        );
    }

    fn arb_element() -> impl Strategy<Value = Element> {
        prop::collection::vec((-5i64..=5, -5i64..=5, -3i64..=3, -4i64..=4), 0..=6).prop_map(|ts| {
            Element::from_terms(
                ts.into_iter()
                    .map(|(a, b, c, k)| (Monomial::new(a, b), QHalf::from_int(c).mul_q_power(k))),
            )
        })
    }

    fn arb_monomial() -> impl Strategy<Value = Element> {
        (-5i64..=5, -5i64..=5).prop_map(|(a, b)| Element::mono(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn associativity(u in arb_element(), v in arb_element(), w in arb_element()) {
            prop_assert_eq!((&u * &v) * &w, &u * &(&v * &w));
        }

        #[test]
        fn distributivity(u in arb_element(), v in arb_element(), w in arb_element()) {
            prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        }

        #[test]
        fn evaluation_order_is_irrelevant(ms in prop::collection::vec(arb_monomial(), 1..=5)) {
            let left = ms.iter().skip(1).fold(ms[0].clone(), |acc, m| &acc * m);
            let right = ms.iter().rev().skip(1).fold(ms[ms.len() - 1].clone(), |acc, m| m * &acc);
            prop_assert_eq!(&left, &right);
            if ms.len() >= 3 {
                let mid = &(&ms[0] * &(&ms[1] * &ms[2]))
                    * &ms.iter().skip(3).fold(Element::one(), |acc, m| &acc * m);
                prop_assert_eq!(&left, &mid);
            }
        }

        #[test]
        fn json_round_trip(u in arb_element()) {
            prop_assert_eq!(Element::from_json(&u.to_json()).unwrap(), u);
        }
    }
}
