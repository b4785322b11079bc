//! Dense univariate polynomials over the integers.
//!
//! This is the kernel under [`QHalf`](super::QHalf): numerators and
//! denominators are `IntPoly`s in the variable `s = q^(1/2)`. Only the
//! operations needed for normalizing fractions are provided: ring
//! arithmetic, exact division, content and a gcd over `Q[s]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients are stored low degree first; the last entry, if any, is
/// nonzero. The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * s^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest `k` with `s^k` dividing `self`. Zero for the zero polynomial.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// True when the polynomial has a single nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `s^k`; the caller guarantees `k <= valuation()`.
    pub fn shr(&self, k: usize) -> Self {
        debug_assert!(self.is_zero() || k <= self.valuation());
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, d) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= d;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Iterate over the sparser operand; denominators are often s^k.
        let (sparse, dense) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dense.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_exact_int(&c)
        }
    }

    /// Exact quotient `self / divisor` over `Z[s]`. Returns `None` when the
    /// division leaves a remainder or needs non-integral coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let dv = divisor.valuation();
        if self.valuation() < dv {
            return None;
        }
        // Strip the common power of s first; remaining divisor has a unit-free
        // constant term which keeps the long division short.
        let num = self.shr(dv);
        let den = divisor.shr(dv);
        let dn = den.coeffs.len();
        if num.coeffs.len() < dn {
            return None;
        }
        let lead = den.leading().unwrap().clone();
        let mut rem = num.coeffs;
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &qk * d;
                }
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dn = divisor.coeffs.len();
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() >= dn {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - dn;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * d;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Self::from_coeffs(rem)
    }

    /// Greatest common divisor in `Q[s]`, returned as a primitive integer
    /// polynomial with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let v = self.valuation().min(other.valuation());
        let a = self.shr(self.valuation());
        let b = other.shr(other.valuation());
        let s_part = IntPoly::monomial(BigInt::one(), v);
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return s_part;
        }
        if a == b {
            return a.primitive().shl(v);
        }
        if let Some(d) = modular_gcd_degree(&a, &b) {
            if d == 0 {
                return s_part;
            }
        }
        // Primitive Euclidean remainder sequence.
        let (mut a, mut b) = if a.coeffs.len() >= b.coeffs.len() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().shl(v)
    }

    /// Horner evaluation at an arbitrary ring value.
    pub fn eval<T>(&self, x: &T) -> T
    where
        T: Clone + Zero + From<BigInt> + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + T::from(c.clone());
        }
        acc
    }
}

const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(p: &IntPoly) -> Vec<u64> {
    let m = BigInt::from(MODULUS);
    let mut v: Vec<u64> = p
        .coeffs
        .iter()
        .map(|c| c.mod_floor(&m).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree of `gcd(a, b) mod p` for the Mersenne prime `2^61 - 1`, which
/// bounds the degree of the integer gcd from above. `None` when `p` divides
/// a leading coefficient and the bound is unusable.
fn modular_gcd_degree(a: &IntPoly, b: &IntPoly) -> Option<usize> {
    let mut x = reduce(a);
    let mut y = reduce(b);
    if x.len() != a.coeffs.len() || y.len() != b.coeffs.len() {
        return None;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        // x <- x mod y
        let inv = powmod(*y.last().unwrap(), MODULUS - 2);
        while x.len() >= y.len() {
            let f = mulmod(*x.last().unwrap(), inv);
            let shift = x.len() - y.len();
            for (j, &d) in y.iter().enumerate() {
                let t = mulmod(f, d);
                x[shift + j] = (x[shift + j] + MODULUS - t) % MODULUS;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    Some(x.len() - 1)
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*s^{k}")?;
        }
        Ok(())
    }
}
