//! The coefficient field `Q(s)` with `s = q^(1/2)`.
//!
//! A [`QHalf`] is a reduced fraction `num / den` of integer polynomials in
//! `s`. Negative powers of `q` live in the denominator as powers of `s`.
//! Canonical form: `gcd(num, den) = 1` over `Q[s]`, the integer contents of
//! `num` and `den` are coprime, and `den` has a positive leading
//! coefficient. With that, field equality is structural equality.

mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

pub use poly::IntPoly;

use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QHalf {
    num: IntPoly,
    den: IntPoly,
}

impl QHalf {
    pub fn zero() -> Self {
        QHalf {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QHalf {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    /// The rational number `n / d` as a constant.
    pub fn ratio(n: i64, d: i64) -> Result<Self, Error> {
        QHalf::div(&Self::from_int(n), &Self::from_int(d))
    }

    /// `num / den`, brought to canonical form.
    pub fn from_parts(num: IntPoly, den: IntPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `q^(k/2) = s^k`.
    pub fn q_power(k: i64) -> Self {
        let m = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            QHalf {
                num: m,
                den: IntPoly::one(),
            }
        } else {
            QHalf {
                num: IntPoly::one(),
                den: m,
            }
        }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::q_power(2 * k)
    }

    /// `[n]_q = (q^n - q^-n) / (q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
    pub fn q_int(n: u32) -> Self {
        if n == 0 {
            return Self::zero();
        }
        // Times s^(2(n-1)) the exponents become 0, 4, ..., 4(n-1).
        let n = n as usize;
        let mut coeffs = vec![BigInt::zero(); 4 * (n - 1) + 1];
        for k in 0..n {
            coeffs[4 * k] = BigInt::one();
        }
        Self::reduce(
            IntPoly::from_coeffs(coeffs),
            IntPoly::monomial(BigInt::one(), 2 * (n - 1)),
        )
    }

    /// `q - q^-1`, the ubiquitous normalizing factor.
    pub fn q_minus_inv() -> Self {
        Self::q_pow(1) - Self::q_pow(-1)
    }

    /// `1` for even `m`, `0` for odd `m`.
    pub fn delta_even(m: i64) -> Self {
        if m % 2 == 0 {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_content(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `s^k` without a general gcd: only powers of `s` can
    /// cancel against the existing fraction.
    pub fn mul_q_power(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let k_abs = k.unsigned_abs() as usize;
        if k > 0 {
            let cancel = k_abs.min(self.den.valuation());
            QHalf {
                num: self.num.shl(k_abs - cancel),
                den: self.den.shr(cancel),
            }
        } else {
            let cancel = k_abs.min(self.num.valuation());
            QHalf {
                num: self.num.shr(cancel),
                den: self.den.shl(k_abs - cancel),
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return Self::fix_content(num, other.den.clone());
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return Self::fix_content(num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): any common factor of the new
        // numerator and denominator divides g.
        let g = self.den.gcd(&other.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d).add(&other.num.mul(&b));
        let den = b.mul(&other.den);
        if g.is_one() {
            return Self::fix_content(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one() || num.is_zero() {
            return Self::fix_content(num, den);
        }
        Self::fix_content(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }

    pub fn neg(&self) -> Self {
        QHalf {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return QHalf {
                num: self.num.mul(&other.num),
                den: IntPoly::one(),
            };
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d).
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::fix_content(a.mul(&c), b.mul(&d))
    }

    /// Full normalization from an arbitrary fraction.
    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Self::fix_content(num, den);
        }
        Self::fix_content(
            num.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        )
    }

    /// Removes the common integer content and fixes the sign, assuming
    /// `num` and `den` are already coprime as polynomials.
    fn fix_content(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            QHalf { num, den }
        } else {
            QHalf {
                num: num.div_exact_int(&c),
                den: den.div_exact_int(&c),
            }
        }
    }

    /// Exact value at `s = s0`, i.e. at `q = s0^2`.
    ///
    /// `|s0| = 1` puts `q` at a root of unity; the value is still returned
    /// but a warning is logged.
    pub fn eval(&self, s0: &BigRational) -> Result<BigRational, Error> {
        if s0.abs().is_one() {
            log::warn!("evaluating at s = {s0}: q is a root of unity there");
        }
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(Error::Pole(s0.to_string()));
        }
        Ok(self.num.eval(s0) / d)
    }

    /// Human-readable form in `q`, e.g. `(q^2 + 1)/(q - q^-1)`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        // Fold the s-power of the denominator into the numerator, then
        // center what remains of the denominator around q^0.
        let dv = self.den.valuation() as i64;
        let rest = self.den.shr(dv as usize);
        let rest_deg = rest.degree().unwrap() as i64;
        if rest_deg == 0 {
            let d = &rest.coeffs()[0];
            let num = laurent_text(&self.num, -dv);
            if d.is_one() {
                return num;
            }
            return format!("{}/{}", parenthesize(&num, &self.num), d);
        }
        let shift = rest_deg / 2;
        let num = laurent_text(&self.num, -dv - shift);
        let den = laurent_text(&rest, -shift);
        format!(
            "{}/{}",
            parenthesize(&num, &self.num),
            parenthesize(&den, &rest)
        )
    }

    /// True when the text form is a single signed term (no `+`/`-` between
    /// terms and no fraction bar), so it can be printed without brackets.
    pub fn is_single_term(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    /// `{"num": {"<s-exponent>": "<int>"}, "den": {...}}`.
    pub fn to_json(&self) -> Value {
        json!({ "num": poly_json(&self.num), "den": poly_json(&self.den) })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let num = poly_from_json(v.get("num"))?;
        let den = poly_from_json(v.get("den"))?;
        Self::from_parts(num, den)
    }
}

fn parenthesize(text: &str, p: &IntPoly) -> String {
    if p.is_monomial() && !text.contains('/') {
        text.to_string()
    } else {
        format!("({text})")
    }
}

fn q_exponent_text(e: i64) -> String {
    match e {
        0 => String::new(),
        2 => "q".into(),
        e if e % 2 == 0 => format!("q^{}", e / 2),
        e => format!("q^({e}/2)"),
    }
}

/// Renders `p(s) * s^shift` as a Laurent polynomial in q, highest power first.
fn laurent_text(p: &IntPoly, shift: i64) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let q = q_exponent_text(k as i64 + shift);
        let mag = c.abs();
        let body = match (mag.is_one(), q.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => q,
            (false, true) => mag.to_string(),
            (false, false) => format!("{mag}·{q}"),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn poly_json(p: &IntPoly) -> Value {
    let mut m = Map::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            m.insert(k.to_string(), Value::String(c.to_string()));
        }
    }
    Value::Object(m)
}

fn poly_from_json(v: Option<&Value>) -> Result<IntPoly, Error> {
    let obj = v
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Usage("scalar JSON needs num/den objects".into()))?;
    let mut coeffs = Vec::new();
    for (k, c) in obj {
        let k: usize = k
            .parse()
            .map_err(|_| Error::Usage(format!("bad exponent key {k:?}")))?;
        let c: BigInt = c
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Usage(format!("bad coefficient for s^{k}")))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] = c;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

impl Default for QHalf {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for QHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for QHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QHalf({})", self.to_text())
    }
}

impl From<i64> for QHalf {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&QHalf> for &QHalf {
            type Output = QHalf;
            fn $method(self, rhs: &QHalf) -> QHalf {
                QHalf::$method(self, rhs)
            }
        }
        impl $trait<QHalf> for QHalf {
            type Output = QHalf;
            fn $method(self, rhs: QHalf) -> QHalf {
                QHalf::$method(&self, &rhs)
            }
        }
        impl $trait<&QHalf> for QHalf {
            type Output = QHalf;
            fn $method(self, rhs: &QHalf) -> QHalf {
                QHalf::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&QHalf> for &QHalf {
    type Output = QHalf;
    /// Panics on division by zero; use [`QHalf::div`] for a `Result`.
    fn div(self, rhs: &QHalf) -> QHalf {
        QHalf::div(self, rhs).expect("division by the zero scalar")
    }
}

impl Div<QHalf> for QHalf {
    type Output = QHalf;
    fn div(self, rhs: QHalf) -> QHalf {
        &self / &rhs
    }
}

impl Neg for QHalf {
    type Output = QHalf;
    fn neg(self) -> QHalf {
        QHalf::neg(&self)
    }
}

impl Neg for &QHalf {
    type Output = QHalf;
    fn neg(self) -> QHalf {
        QHalf::neg(self)
    }
}
