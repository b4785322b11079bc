//! Element families inside `T_q`.
//!
//! Every family is available through two routes. The definitional route
//! runs the defining recursions (or, for `H'_n`/`H_n`, the logarithm of the
//! Θ generating function) starting from `W0 ↦ x + x^-1`, `W1 ↦ y + y^-1`.
//! The closed route writes the known answer straight into the standard
//! basis. [`product_form`] gives a third spelling of most closed forms, as
//! products of powers of `xy`, `yx` or `z`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::series::TruncatedSeries;
use crate::{Element, Error, Monomial, QHalf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    W0,
    W1,
    BDelta,
    BAlpha0,
    BAlpha1,
    BNDelta,
    B1r,
    ThetaPrime,
    Theta,
    HPrime,
    H,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::W0,
        Family::W1,
        Family::BDelta,
        Family::BAlpha0,
        Family::BAlpha1,
        Family::BNDelta,
        Family::B1r,
        Family::ThetaPrime,
        Family::Theta,
        Family::HPrime,
        Family::H,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            Family::W0 => "w0",
            Family::W1 => "w1",
            Family::BDelta => "b-delta",
            Family::BAlpha0 => "b-alpha0",
            Family::BAlpha1 => "b-alpha1",
            Family::BNDelta => "b-ndelta",
            Family::B1r => "b1r",
            Family::ThetaPrime => "theta-prime",
            Family::Theta => "theta",
            Family::HPrime => "h-prime",
            Family::H => "h",
        }
    }

    pub fn tag_name(self) -> &'static str {
        match self {
            Family::W0 => "W0",
            Family::W1 => "W1",
            Family::BDelta => "B_DELTA",
            Family::BAlpha0 => "B_ALPHA0",
            Family::BAlpha1 => "B_ALPHA1",
            Family::BNDelta => "B_NDELTA",
            Family::B1r => "B1R",
            Family::ThetaPrime => "THETA_PRIME",
            Family::Theta => "THETA",
            Family::HPrime => "H_PRIME",
            Family::H => "H",
        }
    }

    /// Smallest valid index, or `None` when every integer is allowed.
    pub fn min_index(self) -> Option<i64> {
        match self {
            Family::W0 | Family::W1 | Family::BDelta => Some(0),
            Family::BAlpha0 | Family::BAlpha1 | Family::ThetaPrime | Family::Theta => Some(0),
            Family::BNDelta | Family::HPrime | Family::H => Some(1),
            Family::B1r => None,
        }
    }

    /// Families without an index parameter.
    pub fn is_fixed(self) -> bool {
        matches!(self, Family::W0 | Family::W1 | Family::BDelta)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .into_iter()
            .find(|f| f.cli_name() == s || f.tag_name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyTag {
    pub family: Family,
    pub index: i64,
}

impl FamilyTag {
    pub fn new(family: Family, index: i64) -> Result<Self, Error> {
        if family.is_fixed() && index != 0 {
            return Err(Error::Usage(format!("{family} takes no index")));
        }
        if let Some(lo) = family.min_index() {
            if index < lo {
                return Err(Error::Usage(format!(
                    "{family} needs index >= {lo}, got {index}"
                )));
            }
        }
        Ok(FamilyTag { family, index })
    }

    pub fn fixed(family: Family) -> Self {
        FamilyTag { family, index: 0 }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_fixed() {
            f.write_str(self.family.tag_name())
        } else {
            write!(f, "{}({})", self.family.tag_name(), self.index)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Recursions, or the logarithm series for the H families.
    Definitional,
    Closed,
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "definitional" | "recursive" | "series" => Ok(Route::Definitional),
            "closed" => Ok(Route::Closed),
            _ => Err(Error::Usage(format!("unknown route `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    Prime,
    Plain,
}

pub(crate) fn qp(k: i64) -> QHalf {
    QHalf::q_pow(k)
}

pub(crate) fn qint(n: i64) -> QHalf {
    if n >= 0 {
        QHalf::q_int(n as u32)
    } else {
        -QHalf::q_int((-n) as u32)
    }
}

/// `q - q^-1`
pub(crate) fn qmi() -> QHalf {
    QHalf::q_minus_inv()
}

pub(crate) fn inv(c: &QHalf) -> QHalf {
    c.inv().expect("nonzero constant")
}

/// `1/((q - q^-1)(q^2 - q^-2))`, the divisor in the `B_{nδ+α}` recursions.
fn recursion_divisor() -> QHalf {
    inv(&(qmi() * (qp(2) - qp(-2))))
}

/// `x^k y^k + x^-k y^-k`
fn diag_pair(k: i64) -> Element {
    Element::mono(k, k) + Element::mono(-k, -k)
}

/// `w0 = x + x^-1`, `w1 = y + y^-1`.
pub fn w_gen(i: u8) -> Element {
    match i {
        0 => Element::x() + Element::x_inv(),
        _ => Element::y() + Element::y_inv(),
    }
}

/// `(q^-2 - 1)^-1` times the bracket shared by the closed forms of `B_{nδ}`
/// and `(q - q^-1)Θ'_n`.
fn ndelta_bracket(n: i64) -> Element {
    let mut acc = diag_pair(n).scale(&(qp(-n * n) * qint(n + 1)));
    for l in 1..n {
        let k = n - 2 * l;
        acc = acc + Element::mono(k, k).scale(&((qp(-k) + qp(k)) * qp(-k * k)));
    }
    acc
}

/// Standard-basis closed forms.
pub fn closed_form(tag: FamilyTag) -> Element {
    let n = tag.index;
    match tag.family {
        Family::W0 => w_gen(0),
        Family::W1 => w_gen(1),
        Family::BDelta => closed_form(FamilyTag {
            family: Family::BNDelta,
            index: 1,
        }),
        Family::BAlpha0 => {
            (Element::mono(n + 1, n) + Element::mono(-n - 1, -n)).scale(&qp(-n * (n + 1)))
        }
        Family::BAlpha1 => {
            (Element::mono(n, n + 1) + Element::mono(-n, -n - 1)).scale(&qp(-n * (n + 1)))
        }
        Family::BNDelta => {
            if n == 0 {
                Element::scalar(qp(-2) - QHalf::one())
            } else {
                ndelta_bracket(n).scale(&(qp(-2) - QHalf::one()))
            }
        }
        Family::B1r => (Element::mono(n, n + 1) + Element::mono(-n, -n - 1))
            .scale(&(qp(-n * (n + 1)) * b1r_divisor())),
        Family::ThetaPrime => match n {
            n if n < 0 => Element::zero(),
            0 => Element::scalar(inv(&qmi())),
            _ => ndelta_bracket(n).scale(&inv(&qmi())),
        },
        Family::Theta => match n {
            n if n < 0 => Element::zero(),
            0 => Element::scalar(inv(&qmi())),
            _ => {
                let lead = diag_pair(n).scale(&(qp(-n * n) * qint(n + 1)));
                let mut inner = Element::zero();
                for l in 1..n {
                    let k = n - 2 * l;
                    inner = inner + Element::term(qp(-k * k), Monomial::new(k, k));
                }
                let c = (qp(1) + qp(-1)) * qp(1 - n);
                (lead + inner.scale(&c)).scale(&inv(&qmi()))
            }
        },
        Family::HPrime | Family::H => {
            let mut num = diag_pair(n).scale(&(qp(-n * n) * (qp(n) + qp(-n))));
            if n % 2 == 0 {
                let tail = match tag.family {
                    Family::HPrime => qp(n) + qp(-n),
                    _ => qp(n) + QHalf::one(),
                };
                num = num - Element::scalar(QHalf::from_int(2) * tail);
            }
            num.scale(&inv(&(QHalf::from_int(n) * qmi())))
        }
    }
}

/// `1/(q^(1/2)(q - q^-1))`
pub fn b1r_divisor() -> QHalf {
    inv(&(QHalf::q_power(1) * qmi()))
}

/// Closed forms written as products: `x(yx)^n + ...` for the α families,
/// powers of `xy` for `B_{nδ}` and `Θ'_n`, powers of `z = q^-1 xy` for `Θ_n`
/// and the H families. `None` for families without such a form.
pub fn product_form(tag: FamilyTag) -> Option<Element> {
    let n = tag.index;
    let pw = |e: &Element, k: i64| e.pow(k).expect("single-term base");
    let (x, y, xi, yi) = (
        Element::x(),
        Element::y(),
        Element::x_inv(),
        Element::y_inv(),
    );
    let xy = &x * &y;
    let yx = &y * &x;
    let xiyi = &xi * &yi;
    let yixi = &yi * &xi;
    let z = |k: i64| Element::z_power(k);
    Some(match tag.family {
        Family::BAlpha0 => &x * &pw(&yx, n) + &xi * &pw(&yixi, n),
        Family::BAlpha1 => &y * &pw(&xy, n) + &yi * &pw(&xiyi, n),
        Family::B1r => (&y * &pw(&xy, n) + &yi * &pw(&xiyi, n)).scale(&b1r_divisor()),
        Family::BNDelta | Family::ThetaPrime if n >= 1 => {
            let mut acc = pw(&xy, n).scale(&(qp(-n) * qint(n + 1)))
                + pw(&xy, -n).scale(&(qp(n) * qint(n + 1)));
            for l in 1..n {
                acc = acc + pw(&xy, n - 2 * l).scale(&(QHalf::one() + qp(4 * l - 2 * n)));
            }
            let c = if tag.family == Family::BNDelta {
                qp(-2) - QHalf::one()
            } else {
                inv(&qmi())
            };
            acc.scale(&c)
        }
        Family::Theta if n >= 1 => {
            let mut acc = (z(n) + z(-n)).scale(&qint(n + 1));
            let mut inner = Element::zero();
            for l in 1..n {
                inner = inner + z(n - 2 * l);
            }
            acc = acc + inner.scale(&((qp(1) + qp(-1)) * qp(1 - n)));
            acc.scale(&inv(&qmi()))
        }
        Family::HPrime | Family::H => {
            let mut num = (z(n) + z(-n)).scale(&(qp(n) + qp(-n)));
            if n % 2 == 0 {
                let tail = if tag.family == Family::HPrime {
                    qp(-n)
                } else {
                    QHalf::one()
                };
                num = num - Element::scalar(QHalf::from_int(2) * (qp(n) + tail));
            }
            num.scale(&inv(&(QHalf::from_int(n) * qmi())))
        }
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Alpha0(i64),
    Alpha1(i64),
    NDelta(i64),
    B1r(i64),
    ThetaPrime(i64),
    Theta(i64),
}

/// Memoizing builder for the definitional routes. One builder belongs to
/// one worker; it is `Send` but not shared.
#[derive(Debug, Default)]
pub struct Builder {
    memo: HashMap<Key, Element>,
    logs: HashMap<(Which, usize), TruncatedSeries>,
    series_order: usize,
}

pub const DEFAULT_SERIES_ORDER: usize = 16;

impl Builder {
    pub fn new() -> Self {
        Self::with_series_order(DEFAULT_SERIES_ORDER)
    }

    /// The H families are read off a logarithm computed to this order;
    /// asking for `H_n` with `n` above it is a usage error.
    pub fn with_series_order(order: usize) -> Self {
        Builder {
            memo: HashMap::new(),
            logs: HashMap::new(),
            series_order: order,
        }
    }

    pub fn series_order(&self) -> usize {
        self.series_order
    }

    pub fn build(&mut self, tag: FamilyTag, route: Route) -> Result<Element, Error> {
        let tag = FamilyTag::new(tag.family, tag.index)?;
        if route == Route::Closed {
            return Ok(closed_form(tag));
        }
        let n = tag.index;
        Ok(match tag.family {
            Family::W0 => w_gen(0),
            Family::W1 => w_gen(1),
            Family::BDelta => self.b_delta(),
            Family::BAlpha0 => self.b_alpha0(n),
            Family::BAlpha1 => self.b_alpha1(n),
            Family::BNDelta => self.b_ndelta(n),
            Family::B1r => self.b1r(n),
            Family::ThetaPrime => self.theta(n, Which::Prime),
            Family::Theta => self.theta(n, Which::Plain),
            Family::HPrime => self.h(n, Which::Prime)?,
            Family::H => self.h(n, Which::Plain)?,
        })
    }

    fn memoized(&mut self, key: Key, f: impl FnOnce(&mut Self) -> Element) -> Element {
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        let e = f(self);
        self.memo.insert(key, e.clone());
        e
    }

    /// `B_δ = q^-2 W1 W0 - W0 W1`
    pub fn b_delta(&mut self) -> Element {
        let (w0, w1) = (w_gen(0), w_gen(1));
        (&w1 * &w0).scale(&qp(-2)) - &w0 * &w1
    }

    /// `q [B_δ, u] / ((q - q^-1)(q^2 - q^-2))`
    fn bracket_step(&mut self, u: &Element) -> Element {
        self.b_delta()
            .commutator(u)
            .scale(&(qp(1) * recursion_divisor()))
    }

    pub fn b_alpha0(&mut self, n: i64) -> Element {
        assert!(n >= 0, "B_ALPHA0 index must be non-negative");
        self.memoized(Key::Alpha0(n), |b| match n {
            0 => w_gen(0),
            1 => w_gen(1) + b.bracket_step(&w_gen(0)),
            _ => {
                let prev = b.b_alpha0(n - 1);
                b.b_alpha0(n - 2) + b.bracket_step(&prev)
            }
        })
    }

    pub fn b_alpha1(&mut self, n: i64) -> Element {
        assert!(n >= 0, "B_ALPHA1 index must be non-negative");
        self.memoized(Key::Alpha1(n), |b| match n {
            0 => w_gen(1),
            1 => w_gen(0) - b.bracket_step(&w_gen(1)),
            _ => {
                let prev = b.b_alpha1(n - 1);
                b.b_alpha1(n - 2) - b.bracket_step(&prev)
            }
        })
    }

    /// `B_{nδ}` for `n >= 1`; `B_{0δ}` is the scalar `q^-2 - 1`.
    pub fn b_ndelta(&mut self, n: i64) -> Element {
        assert!(n >= 0, "B_NDELTA index must be non-negative");
        if n == 0 {
            return Element::scalar(qp(-2) - QHalf::one());
        }
        self.memoized(Key::NDelta(n), |b| {
            let w0 = w_gen(0);
            let prev = b.b_alpha1(n - 1);
            let mut acc = (&prev * &w0).scale(&qp(-2)) - &w0 * &prev;
            let mut sum = Element::zero();
            for l in 0..=n - 2 {
                sum = sum + &b.b_alpha1(l) * &b.b_alpha1(n - l - 2);
            }
            acc = acc + sum.scale(&(qp(-2) - QHalf::one()));
            acc
        })
    }

    /// `Θ_1` from `q^2 B_0 B_1 - B_1 B_0` with `B_0 ↦ w0`, `B_1 ↦ w1` over
    /// `q^(1/2)(q - q^-1)`; independent of the `B_{nδ}` recursion.
    pub fn theta_one_from_generators(&self) -> Element {
        let (w0, w1) = (w_gen(0), w_gen(1));
        let raw = (&w0 * &w1).scale(&qp(2)) - &w1 * &w0;
        raw.scale(&inv(&(qp(1) * qmi() * qmi())))
    }

    /// `B_{1,r}` by the forward recursion for `r >= 1` and its backward
    /// rearrangement for `r <= -2`, seeded by `B_{1,0}`, `B_{1,-1}`.
    pub fn b1r(&mut self, r: i64) -> Element {
        self.memoized(Key::B1r(r), |b| {
            let d = b1r_divisor();
            let bracket = |b: &mut Builder, u: &Element| {
                b.theta_one_from_generators()
                    .commutator(u)
                    .scale(&inv(&(qp(1) + qp(-1))))
            };
            match r {
                0 => w_gen(1).scale(&d),
                -1 => w_gen(0).scale(&d),
                r if r >= 1 => {
                    let prev = b.b1r(r - 1);
                    b.b1r(r - 2) + bracket(b, &prev)
                }
                _ => {
                    // B_{1,r} = B_{1,r+2} - [Θ_1, B_{1,r+1}]/(q + q^-1)
                    let next = b.b1r(r + 1);
                    b.b1r(r + 2) - bracket(b, &next)
                }
            }
        })
    }

    /// `Θ'_n = -q B_{nδ} / (q - q^-1)^2` and
    /// `Θ_n = Θ'_n - δ_{n,ev} q^(1-n) - Σ_{l=1}^{⌊(n-1)/2⌋} (q^2 - 1) q^(-2l) Θ'_{n-2l}`,
    /// both `1/(q - q^-1)` at `n = 0` and zero below.
    pub fn theta(&mut self, n: i64, which: Which) -> Element {
        if n < 0 {
            return Element::zero();
        }
        if n == 0 {
            return Element::scalar(inv(&qmi()));
        }
        match which {
            Which::Prime => self.memoized(Key::ThetaPrime(n), |b| {
                b.b_ndelta(n).scale(&(-qp(1) * inv(&(qmi() * qmi()))))
            }),
            Which::Plain => self.memoized(Key::Theta(n), |b| {
                let mut acc = b.theta(n, Which::Prime);
                if n % 2 == 0 {
                    acc = acc - Element::scalar(qp(1 - n));
                }
                for l in 1..=(n - 1) / 2 {
                    let c = (qp(2) - QHalf::one()) * qp(-2 * l);
                    acc = acc - b.theta(n - 2 * l, Which::Prime).scale(&c);
                }
                acc
            }),
        }
    }

    /// `Σ_{n>=0} (q - q^-1) Θ_n t^n` (or the primed version) to `order`.
    pub fn theta_generating(&mut self, which: Which, order: usize) -> TruncatedSeries {
        let coeffs = (0..=order as i64)
            .map(|n| self.theta(n, which).scale(&qmi()))
            .collect();
        TruncatedSeries::new(coeffs).expect("non-empty")
    }

    /// `log` of [`Builder::theta_generating`] at the builder's series order.
    pub fn h_series(&mut self, which: Which) -> Result<TruncatedSeries, Error> {
        let order = self.series_order;
        if let Some(s) = self.logs.get(&(which, order)) {
            return Ok(s.clone());
        }
        let log = self.theta_generating(which, order).log()?;
        self.logs.insert((which, order), log.clone());
        Ok(log)
    }

    /// `H'_n` or `H_n` as the `t^n` coefficient of `log Θ(t) / (q - q^-1)`.
    pub fn h(&mut self, n: i64, which: Which) -> Result<Element, Error> {
        if n < 1 {
            return Err(Error::Usage(format!("H index must be >= 1, got {n}")));
        }
        if n as usize > self.series_order {
            return Err(Error::Usage(format!(
                "H_{n} needs series order >= {n}, builder has {}",
                self.series_order
            )));
        }
        let log = self.h_series(which)?;
        Ok(log.coeff(n as usize).scale(&inv(&qmi())))
    }
}
