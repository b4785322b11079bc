//! Truncated power series `Σ c_n t^n mod t^(N+1)` with coefficients in
//! `T_q`. The indeterminate `t` is central.
//!
//! `exp` and `log` use the usual derivative recurrences, which are only
//! valid when all coefficients commute with each other; that is checked on
//! every call rather than assumed.

use std::fmt;

use serde_json::{json, Value};

use crate::{Element, Error, QHalf};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Element>,
}

impl TruncatedSeries {
    /// Series of the given order with coefficients `c_0..c_N`.
    pub fn new(coeffs: Vec<Element>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a truncated series needs at least c_0".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Element::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Element::one(), order)
    }

    pub fn constant(c: Element, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds from leading coefficients, padding with zeros (or truncating)
    /// to `order`.
    pub fn from_leading(mut coeffs: Vec<Element>, order: usize) -> Self {
        coeffs.resize(order + 1, Element::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Element {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), Error> {
        if self.order() != other.order() {
            return Err(Error::Usage(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &QHalf) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Cauchy product; `a_i` stays on the left of `b_j`.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = Element::zero();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a * b;
                }
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// `1 + m t + m^2 t^2 + ... + m^N t^N`, the expansion of `1/(1 - m t)`.
    pub fn geometric(m: &Element, order: usize) -> Result<Self, Error> {
        if m.len() != 1 {
            return Err(Error::Usage(
                "geometric series needs a single-term ratio".into(),
            ));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = Element::one();
        for _ in 0..=order {
            let next = &p * m;
            coeffs.push(p);
            p = next;
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplies by the scalar polynomial `1 - c t^k`.
    pub fn poly_factor(&self, c: &QHalf, k: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::Usage("factor 1 - c t^k needs k >= 1".into()));
        }
        let mut coeffs = self.coeffs.clone();
        for n in (k..coeffs.len()).rev() {
            let shifted = self.coeffs[n - k].scale(c);
            coeffs[n] = &coeffs[n] - &shifted;
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Errors unless `c_i c_j = c_j c_i` for all `from <= i < j`.
    pub fn check_commuting(&self, from: usize) -> Result<(), Error> {
        for i in from..self.coeffs.len() {
            for j in i + 1..self.coeffs.len() {
                if !commute(&self.coeffs[i], &self.coeffs[j]) {
                    return Err(Error::Domain(format!(
                        "coefficients of t^{i} and t^{j} do not commute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `exp(A)` for `A` with zero constant term and commuting coefficients.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        self.check_commuting(1)?;
        // E' = A' E  =>  n E_n = Σ_{k=1..n} k A_k E_{n-k}
        let n_max = self.order();
        let mut out = vec![Element::one()];
        for n in 1..=n_max {
            let mut acc = Element::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc + (a * &out[n - k]).scale(&QHalf::from_int(k as i64));
            }
            out.push(acc.scale(&QHalf::ratio(1, n as i64)?));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `log(A)` for `A` with constant term 1 and commuting coefficients.
    pub fn log(&self) -> Result<Self, Error> {
        if self.coeffs[0] != Element::one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        self.check_commuting(1)?;
        // A' = L' A  =>  L_n = A_n - (1/n) Σ_{k=1..n-1} k L_k A_{n-k}
        let n_max = self.order();
        let mut out = vec![Element::zero()];
        for n in 1..=n_max {
            let mut acc = Element::zero();
            for (k, l) in out.iter().enumerate().skip(1) {
                let a = &self.coeffs[n - k];
                if l.is_zero() || a.is_zero() {
                    continue;
                }
                acc = acc + (l * a).scale(&QHalf::from_int(k as i64));
            }
            let ln = &self.coeffs[n] - &acc.scale(&QHalf::ratio(1, n as i64)?);
            out.push(ln);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(Element::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = || Error::Usage("series JSON must be {\"order\": N, \"coeffs\": [...]}".into());
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(Element::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != order + 1 {
            return Err(bad());
        }
        Self::new(coeffs)
    }
}

/// Exact commutation test. When every pair of monomials already commutes
/// (`b1 a2 = b2 a1`) the commutator vanishes term by term and no coefficient
/// arithmetic is needed.
pub fn commute(u: &Element, v: &Element) -> bool {
    let monomials_commute = u
        .terms()
        .all(|(m1, _)| v.terms().all(|(m2, _)| m1.b * m2.a == m2.b * m1.a));
    monomials_commute || u.commutator(v).is_zero()
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{n}: {c}")?;
        }
        write!(f, "+ O(t^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The four commuting ratios `xy, yx, x^-1 y^-1, y^-1 x^-1`.
fn four_ratios() -> [Element; 4] {
    let (x, y, xi, yi) = (
        Element::x(),
        Element::y(),
        Element::x_inv(),
        Element::y_inv(),
    );
    [&x * &y, &y * &x, &xi * &yi, &yi * &xi]
}

fn product_form(order: usize, numerator: [QHalf; 2]) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for c in &numerator {
        acc = acc.poly_factor(c, 2).expect("k = 2");
    }
    for m in four_ratios() {
        let g = TruncatedSeries::geometric(&m, order).expect("single term");
        acc = acc.mul(&g).expect("same order");
    }
    acc
}

/// `(1 - q^2 t^2)(1 - q^-2 t^2) / ((1 - xyt)(1 - yxt)(1 - x^-1y^-1 t)(1 - y^-1x^-1 t))`,
/// the image of `Θ'(t)`.
pub fn theta_prime_series(order: usize) -> TruncatedSeries {
    product_form(order, [QHalf::q_pow(2), QHalf::q_pow(-2)])
}

/// `(1 - t^2)(1 - q^2 t^2)` over the same four factors, the image of `Θ(t)`.
pub fn theta_series(order: usize) -> TruncatedSeries {
    product_form(order, [QHalf::one(), QHalf::q_pow(2)])
}
