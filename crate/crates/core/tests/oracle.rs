//! Cross-checks against a separate, deliberately naive model of `T_q`:
//! coefficients are rationals (q evaluated at a sample point) and products
//! are normal-ordered one letter swap at a time using the four relations
//! `yx = q^-2 xy`, `yx^-1 = q^2 x^-1 y`, `y^-1 x = q^2 x y^-1`,
//! `y^-1 x^-1 = q^-2 x^-1 y^-1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qtorus::elements::{closed_form, Builder, Family, FamilyTag};
use qtorus::Element;

type R = BigRational;

fn rat(n: i64, d: i64) -> R {
    R::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq)]
struct Num {
    q: R,
    terms: BTreeMap<(i64, i64), R>,
}

impl Num {
    fn zero(q: &R) -> Self {
        Num {
            q: q.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn mono(q: &R, a: i64, b: i64) -> Self {
        let mut n = Self::zero(q);
        n.terms.insert((a, b), R::one());
        n
    }

    fn qpow(&self, k: i64) -> R {
        if k >= 0 {
            num_traits::pow(self.q.clone(), k as usize)
        } else {
            R::one() / num_traits::pow(self.q.clone(), (-k) as usize)
        }
    }

    fn add_term(&mut self, m: (i64, i64), c: R) {
        let e = self.terms.entry(m).or_insert_with(R::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn plus(&self, o: &Num) -> Num {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    fn scale(&self, c: &R) -> Num {
        let mut r = Num::zero(&self.q);
        for (m, v) in &self.terms {
            r.add_term(*m, v * c);
        }
        r
    }

    fn minus(&self, o: &Num) -> Num {
        self.plus(&o.scale(&-R::one()))
    }

    /// Moves every letter of `y^b` past every letter of `x^c`.
    fn reorder_factor(&self, b: i64, c: i64) -> R {
        let mut f = R::one();
        for _ in 0..b.abs() {
            for _ in 0..c.abs() {
                let same_sign = (b > 0) == (c > 0);
                f *= if same_sign {
                    self.qpow(-2)
                } else {
                    self.qpow(2)
                };
            }
        }
        f
    }

    fn times(&self, o: &Num) -> Num {
        let mut r = Num::zero(&self.q);
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &o.terms {
                let f = self.reorder_factor(b, c);
                r.add_term((a + c, b + d), u * v * f);
            }
        }
        r
    }

    fn comm(&self, o: &Num) -> Num {
        self.times(o).minus(&o.times(self))
    }

    fn qcomm(&self, o: &Num, k: i64) -> Num {
        self.times(o)
            .scale(&self.qpow(k))
            .minus(&o.times(self).scale(&self.qpow(-k)))
    }
}

/// The library element with every coefficient evaluated at `s = s0`.
fn eval(e: &Element, s0: &R) -> Num {
    let q = s0 * s0;
    let mut n = Num::zero(&q);
    for (m, c) in e.terms() {
        n.add_term((m.a, m.b), c.eval(s0).unwrap());
    }
    n
}

struct Oracle {
    q: R,
    s: R,
}

impl Oracle {
    fn new(s: R) -> Self {
        Oracle { q: &s * &s, s }
    }

    fn qp(&self, k: i64) -> R {
        Num::zero(&self.q).qpow(k)
    }

    fn w0(&self) -> Num {
        Num::mono(&self.q, 1, 0).plus(&Num::mono(&self.q, -1, 0))
    }

    fn w1(&self) -> Num {
        Num::mono(&self.q, 0, 1).plus(&Num::mono(&self.q, 0, -1))
    }

    fn b_delta(&self) -> Num {
        self.w1()
            .times(&self.w0())
            .scale(&self.qp(-2))
            .minus(&self.w0().times(&self.w1()))
    }

    fn step(&self, u: &Num) -> Num {
        let d = (self.qp(1) - self.qp(-1)) * (self.qp(2) - self.qp(-2));
        self.b_delta().comm(u).scale(&(self.qp(1) / d))
    }

    fn alpha(&self, n: usize, zero: bool) -> Vec<Num> {
        let (first, second) = if zero {
            (self.w0(), self.w1())
        } else {
            (self.w1(), self.w0())
        };
        let sign = if zero { R::one() } else { -R::one() };
        let mut v = vec![first.clone(), second.plus(&self.step(&first).scale(&sign))];
        while v.len() <= n {
            let k = v.len();
            let next = v[k - 2].plus(&self.step(&v[k - 1]).scale(&sign));
            v.push(next);
        }
        v
    }

    fn ndelta(&self, n: usize) -> Num {
        let a1 = self.alpha(n, false);
        let p = &a1[n - 1];
        let mut acc = p
            .times(&self.w0())
            .scale(&self.qp(-2))
            .minus(&self.w0().times(p));
        for l in 0..n.saturating_sub(1) {
            let t = a1[l].times(&a1[n - l - 2]).scale(&(self.qp(-2) - R::one()));
            acc = acc.plus(&t);
        }
        acc
    }

    fn b1r(&self, lo: i64, hi: i64) -> BTreeMap<i64, Num> {
        let d = R::one() / (&self.s * (self.qp(1) - self.qp(-1)));
        let theta1 = self
            .w0()
            .times(&self.w1())
            .scale(&self.qp(2))
            .minus(&self.w1().times(&self.w0()))
            .scale(
                &(R::one()
                    / (self.qp(1) * (self.qp(1) - self.qp(-1)) * (self.qp(1) - self.qp(-1)))),
            );
        let bracket = |u: &Num| {
            theta1
                .comm(u)
                .scale(&(R::one() / (self.qp(1) + self.qp(-1))))
        };
        let mut m = BTreeMap::new();
        m.insert(0, self.w1().scale(&d));
        m.insert(-1, self.w0().scale(&d));
        for r in 1..=hi {
            let v = m[&(r - 2)].plus(&bracket(&m[&(r - 1)]));
            m.insert(r, v);
        }
        for r in (lo..=-2).rev() {
            let v = m[&(r + 2)].minus(&bracket(&m[&(r + 1)]));
            m.insert(r, v);
        }
        m
    }
}

fn sample_points() -> Vec<R> {
    vec![rat(3, 2), rat(-2, 5), rat(7, 3)]
}

fn tag(f: Family, n: i64) -> FamilyTag {
    FamilyTag::new(f, n).unwrap()
}

#[test]
fn dolan_grady_relations_hold_in_the_oracle() {
    for s in sample_points() {
        let o = Oracle::new(s);
        let (w0, w1) = (o.w0(), o.w1());
        let k = -(o.qp(2) - o.qp(-2)) * (o.qp(2) - o.qp(-2));
        let lhs = w0.qcomm(&w0.qcomm(&w1, 1), -1);
        assert_eq!(lhs, w1.scale(&k));
        let lhs = w1.qcomm(&w1.qcomm(&w0, 1), -1);
        assert_eq!(lhs, w0.scale(&k));
    }
}

#[test]
fn alpha_families_match_closed_forms() {
    for s in sample_points() {
        let o = Oracle::new(s.clone());
        for (zero, family) in [(true, Family::BAlpha0), (false, Family::BAlpha1)] {
            let v = o.alpha(6, zero);
            for (n, e) in v.iter().enumerate() {
                assert_eq!(
                    *e,
                    eval(&closed_form(tag(family, n as i64)), &s),
                    "{family} {n}"
                );
            }
        }
    }
}

#[test]
fn ndelta_matches_closed_form() {
    for s in sample_points() {
        let o = Oracle::new(s.clone());
        for n in 1..=5 {
            assert_eq!(
                o.ndelta(n),
                eval(&closed_form(tag(Family::BNDelta, n as i64)), &s),
                "n={n}"
            );
        }
    }
}

#[test]
fn b1r_matches_closed_form_both_directions() {
    let s = rat(3, 2);
    let o = Oracle::new(s.clone());
    for (r, e) in o.b1r(-6, 6) {
        assert_eq!(e, eval(&closed_form(tag(Family::B1r, r)), &s), "r={r}");
    }
}

#[test]
fn library_recursions_agree_with_oracle() {
    let s = rat(-2, 5);
    let o = Oracle::new(s.clone());
    let mut b = Builder::new();
    for n in 1..=4 {
        assert_eq!(eval(&b.b_ndelta(n as i64), &s), o.ndelta(n));
    }
    let v = o.alpha(4, true);
    for (n, e) in v.iter().enumerate() {
        assert_eq!(eval(&b.b_alpha0(n as i64), &s), *e);
    }
}

#[test]
fn theta_and_h_low_orders_from_oracle() {
    // Θ'_n = -q B_nδ/(q - q^-1)^2. H_1 = Θ_1 because a logarithm and its
    // argument share the t^1 coefficient.
    let s = rat(3, 2);
    let o = Oracle::new(s.clone());
    let c = -o.qp(1) / ((o.qp(1) - o.qp(-1)) * (o.qp(1) - o.qp(-1)));
    for n in 1..=4 {
        let tp = o.ndelta(n).scale(&c);
        assert_eq!(
            tp,
            eval(&closed_form(tag(Family::ThetaPrime, n as i64)), &s),
            "n={n}"
        );
    }
    let theta1 = o.ndelta(1).scale(&c);
    assert_eq!(theta1, eval(&closed_form(tag(Family::H, 1)), &s));
}

#[test]
fn alpha0_prefactor_grows_like_n_times_n_plus_one() {
    // The recursion pins the prefactor of x^(n+1) y^n to q^(-n(n+1)); the
    // superficially similar q^(-n(n-1)) is wrong for every n >= 1.
    let s = rat(3, 2);
    let o = Oracle::new(s);
    let v = o.alpha(5, true);
    for (n, e) in v.iter().enumerate().skip(1) {
        let n = n as i64;
        let c = &e.terms[&(n + 1, n)];
        assert_eq!(*c, o.qp(-n * (n + 1)));
        assert_ne!(*c, o.qp(-n * (n - 1)));
    }
}

#[test]
fn ndelta_negative_corner_has_negative_exponent() {
    // Coefficient of x^-n y^-n in B_nδ is (q^-2 - 1) q^(-n^2) [n+1]_q, not
    // the q^(+n^2) variant.
    let s = rat(3, 2);
    let o = Oracle::new(s);
    for n in 1..=4i64 {
        let e = o.ndelta(n as usize);
        let qint = (o.qp(n + 1) - o.qp(-n - 1)) / (o.qp(1) - o.qp(-1));
        let base = (o.qp(-2) - R::one()) * qint;
        assert_eq!(e.terms[&(-n, -n)], &base * o.qp(-n * n));
        assert_ne!(e.terms[&(-n, -n)], &base * o.qp(n * n));
    }
}

#[test]
fn z_relations_in_the_oracle() {
    let s = rat(3, 2);
    let o = Oracle::new(s.clone());
    let z = Num::mono(&o.q, 1, 0)
        .times(&Num::mono(&o.q, 0, 1))
        .scale(&o.qp(-1));
    let lib = eval(&Element::z_power(1), &s);
    assert_eq!(z, lib);
    let y = Num::mono(&o.q, 0, 1);
    let x = Num::mono(&o.q, 1, 0);
    assert_eq!(z.times(&y), y.times(&z).scale(&o.qp(2)));
    assert_eq!(z.times(&x), x.times(&z).scale(&o.qp(-2)));
    let yx = y.times(&x).scale(&o.qp(1));
    assert_eq!(z, yx);
}

#[test]
fn b1r_second_z_form_needs_q_to_r_plus_one() {
    // x^-1 z^(r+1) carries q^(r+1); q^(r-1) does not reproduce B_1r.
    let s = rat(3, 2);
    let o = Oracle::new(s.clone());
    let z = |k: i64| eval(&Element::z_power(k), &s);
    let d = R::one() / (&s * (o.qp(1) - o.qp(-1)));
    let xi = Num::mono(&o.q, -1, 0);
    let x = Num::mono(&o.q, 1, 0);
    for (r, e) in o.b1r(-3, 3) {
        let good = xi
            .times(&z(r + 1))
            .scale(&o.qp(r + 1))
            .plus(&x.times(&z(-r - 1)).scale(&o.qp(r + 1)));
        assert_eq!(e, good.scale(&d), "r={r}");
        let printed = xi
            .times(&z(r + 1))
            .scale(&o.qp(r - 1))
            .plus(&x.times(&z(-r - 1)).scale(&o.qp(r + 1)));
        assert_ne!(e, printed.scale(&d), "r={r}");
    }
}
