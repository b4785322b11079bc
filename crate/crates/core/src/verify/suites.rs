use crate::elements::{
    closed_form, inv, product_form, qint, qmi, qp, w_gen, Builder, Family, FamilyTag, Route, Which,
};
use crate::series::{theta_prime_series, theta_series, TruncatedSeries};
use crate::torus::current_twist;
use crate::{Element, QHalf};

use super::{CheckReport, Checker, Suite};

fn qc(a: &Element, b: &Element, r: &QHalf) -> Element {
    a.q_commutator(b, r).expect("nonzero r")
}

fn z(k: i64) -> Element {
    Element::z_power(k)
}

/// `z^k + z^-k`
fn zsum(k: i64) -> Element {
    z(k) + z(-k)
}

/// `y z^r + y^-1 z^-r`
fn d(r: i64) -> Element {
    &Element::y() * &z(r) + &Element::y_inv() * &z(-r)
}

/// `q^r (y z^r + y^-1 z^-r)`, which is `q^(1/2)(q - q^-1) B_{1,r}`.
fn c(r: i64) -> Element {
    d(r).scale(&qp(r))
}

fn range_text(range: (i64, i64)) -> String {
    format!("[{}, {}]", range.0, range.1)
}

/// `lhs - rhs` of the four relations, each side built from `w0`, `w1` with
/// the convention currently in force.
pub fn suite_dolan_grady() -> CheckReport {
    let twist = current_twist();
    let relation = QHalf::q_power(-twist.0).to_text();
    let mut ck = Checker::new(Suite::DolanGrady, format!("xy = {relation}·yx"));
    let (w0, w1) = (w_gen(0), w_gen(1));
    let (q, qi) = (qp(1), qp(-1));
    let k = -((qp(2) - qp(-2)) * (qp(2) - qp(-2)));
    let none = String::new;
    ck.equal("[w0,[w0,w1]_q]_{q^-1} = -(q^2-q^-2)^2 w1", none, || {
        (qc(&w0, &qc(&w0, &w1, &q), &qi), w1.scale(&k))
    });
    ck.equal("[w1,[w1,w0]_q]_{q^-1} = -(q^2-q^-2)^2 w0", none, || {
        (qc(&w1, &qc(&w1, &w0, &q), &qi), w0.scale(&k))
    });
    ck.equal(
        "[w0,[w0,[w0,w1]_q]_{q^-1}] = -(q^2-q^-2)^2 [w0,w1]",
        none,
        || {
            let inner = qc(&w0, &qc(&w0, &w1, &q), &qi);
            (w0.commutator(&inner), w0.commutator(&w1).scale(&k))
        },
    );
    ck.equal(
        "[w1,[w1,[w1,w0]_q]_{q^-1}] = -(q^2-q^-2)^2 [w1,w0]",
        none,
        || {
            let inner = qc(&w1, &qc(&w1, &w0, &q), &qi);
            (w1.commutator(&inner), w1.commutator(&w0).scale(&k))
        },
    );
    ck.finish()
}

/// Definitional route = standard-basis closed form = product form, for
/// every family and every index with `|index| <= max_n`, plus the compact
/// geometric-sum forms after clearing denominators.
pub fn suite_closed_forms(max_n: i64) -> CheckReport {
    let mut ck = Checker::new(Suite::ClosedForms, format!("maxN={max_n}"));
    let mut b = Builder::with_series_order(max_n.max(1) as usize);
    for family in Family::ALL {
        let indices: Vec<i64> = if family.is_fixed() {
            vec![0]
        } else {
            let lo = family.min_index().unwrap_or(-max_n);
            (lo..=max_n).collect()
        };
        for n in indices {
            if ck.failed() {
                return ck.finish();
            }
            let tag = FamilyTag::new(family, n).expect("index in domain");
            let def = match b.build(tag, Route::Definitional) {
                Ok(e) => e,
                Err(e) => {
                    ck.error("definitional route builds", tag.to_string(), &e);
                    continue;
                }
            };
            ck.equal(
                "definitional = closed",
                || tag.to_string(),
                || (def.clone(), closed_form(tag)),
            );
            if let Some(p) = product_form(tag) {
                ck.equal(
                    "definitional = product form",
                    || tag.to_string(),
                    || (def, p),
                );
            }
        }
    }
    if max_n >= 1 {
        ck.equal(
            "Θ_1 from generators = closed",
            || "n=1".into(),
            || {
                let t = FamilyTag::new(Family::Theta, 1).unwrap();
                (b.theta_one_from_generators(), closed_form(t))
            },
        );
    }
    check_compact_forms(&mut ck, &mut b, max_n);
    ck.finish()
}

/// Geometric-sum corollaries checked as `lhs·D = N` with `D` the formal
/// denominator. All factors lie in the commutative span of powers of `xy`.
fn check_compact_forms(ck: &mut Checker, b: &mut Builder, max_n: i64) {
    let xy = &Element::x() * &Element::y();
    let yx = &Element::y() * &Element::x();
    let pw = |e: &Element, k: i64| e.pow(k).expect("single term");
    let geo = |u: &Element, n: i64| (pw(u, n - 1) - pw(u, 1 - n), pw(u, 1) - pw(u, -1));
    for n in 1..=max_n {
        let params = || format!("n={n}");
        let lead =
            pw(&xy, n).scale(&(qp(-n) * qint(n + 1))) + pw(&xy, -n).scale(&(qp(n) * qint(n + 1)));
        let (n1, d1) = geo(&xy, n);
        let (n2, d2) = geo(&yx, n);
        let tp = b.theta(n, Which::Prime).scale(&qmi());
        ck.equal("cleared compact Θ'_n", params, || {
            ((&tp - &lead) * &d1 * &d2, &n1 * &d2 + &n2 * &d1)
        });
        let bn = b.b_ndelta(n).scale(&inv(&(qp(-2) - QHalf::one())));
        ck.equal("cleared compact B_nδ", params, || {
            ((&bn - &lead) * &d1 * &d2, &n1 * &d2 + &n2 * &d1)
        });
        let t = b.theta(n, Which::Plain).scale(&qmi());
        ck.equal("cleared compact Θ_n in z", params, || {
            let lhs = &t * &(z(1) - z(-1));
            let rhs = (z(n + 1) - z(-n - 1)).scale(&qint(n + 1))
                - (z(n - 1) - z(1 - n)).scale(&(qp(2) * qint(n - 1)));
            (lhs, rhs)
        });
    }
}

/// Θ generating functions against the element families, the cleared
/// relation between the two Θ series, and exp/log against the H families.
pub fn suite_series(max_order: usize) -> CheckReport {
    let mut ck = Checker::new(Suite::Series, format!("order={max_order}"));
    let mut b = Builder::with_series_order(max_order);
    let products = [
        (Which::Prime, "Θ'", theta_prime_series(max_order)),
        (Which::Plain, "Θ", theta_series(max_order)),
    ];
    for (which, name, product) in &products {
        if ck.failed() {
            return ck.finish();
        }
        let generating = b.theta_generating(*which, max_order);
        for n in 0..=max_order {
            ck.equal(
                &format!("t^n coefficient of {name}(t) product = (q - q^-1){name}_n"),
                || format!("n={n}"),
                || (product.coeff(n).clone(), generating.coeff(n).clone()),
            );
        }
        if ck.failed() {
            return ck.finish();
        }
        match product.log().and_then(|l| l.exp()) {
            Ok(round) => ck.equal(
                &format!("exp(log {name}(t)) = {name}(t)"),
                String::new,
                || (series_diff(&round, product), Element::zero()),
            ),
            Err(e) => ck.error(&format!("exp(log {name}(t))"), String::new(), &e),
        }
        let h_family = if *which == Which::Prime {
            Family::HPrime
        } else {
            Family::H
        };
        let mut h = vec![Element::zero()];
        for n in 1..=max_order as i64 {
            h.push(closed_form(FamilyTag::new(h_family, n).unwrap()).scale(&qmi()));
        }
        let h = TruncatedSeries::new(h).expect("non-empty");
        match h.exp() {
            Ok(e) => ck.equal(
                &format!("exp((q - q^-1)H(t)) = {name}(t)"),
                String::new,
                || (series_diff(&e, product), Element::zero()),
            ),
            Err(e) => ck.error(
                &format!("exp((q - q^-1)H(t)) = {name}(t)"),
                String::new(),
                &e,
            ),
        }
    }
    let (prime, plain) = (&products[0].2, &products[1].2);
    ck.equal("(1 - q^-2 t^2)Θ(t) = (1 - t^2)Θ'(t)", String::new, || {
        let lhs = plain.poly_factor(&qp(-2), 2).unwrap();
        let rhs = prime.poly_factor(&QHalf::one(), 2).unwrap();
        (series_diff(&lhs, &rhs), Element::zero())
    });
    ck.finish()
}

/// Collapses a coefficient-wise difference into one element,
/// `Σ_n (a_n - b_n)·x^(n·W)` with `W` larger than any exponent present, so
/// the result is zero iff the series agree.
fn series_diff(a: &TruncatedSeries, b: &TruncatedSeries) -> Element {
    let width = a
        .coeffs()
        .iter()
        .chain(b.coeffs())
        .flat_map(|c| c.terms().map(|(m, _)| m.a.abs()))
        .max()
        .unwrap_or(0)
        * 2
        + 1;
    let mut acc = Element::zero();
    for (n, (x, y)) in a.coeffs().iter().zip(b.coeffs()).enumerate() {
        let shift = Element::mono(n as i64 * width, 0);
        acc = acc + &shift * &(x - y);
    }
    acc
}

/// The five relations between `Θ'_m`, `Θ_m`, `H'_m`, `H_m` and `B_{1,r}`,
/// all elements built by their definitional routes.
pub fn suite_root_relations(max_m: i64, range: (i64, i64)) -> CheckReport {
    let params = format!("maxM={max_m} r,s∈{}", range_text(range));
    let mut ck = Checker::new(Suite::RootRelations, params);
    let mut b = Builder::with_series_order(max_m as usize);
    for m in 1..=max_m {
        for n in m + 1..=max_m {
            let p = || format!("m={m} n={n}");
            for (which, name) in [(Which::Prime, "Θ'"), (Which::Plain, "Θ")] {
                let (a, c) = (b.theta(m, which), b.theta(n, which));
                ck.zero(&format!("[{name}_m, {name}_n] = 0"), p, || a.commutator(&c));
            }
            match (b.h(m, Which::Plain), b.h(n, Which::Plain)) {
                (Ok(a), Ok(c)) => ck.zero("[H_m, H_n] = 0", p, || a.commutator(&c)),
                (Err(e), _) | (_, Err(e)) => ck.error("[H_m, H_n] = 0", p(), &e),
            }
        }
    }
    for m in 1..=max_m {
        let coeff = qint(2 * m) * QHalf::ratio(1, m).expect("m >= 1");
        for r in range.0..=range.1 {
            let p = || format!("m={m} r={r}");
            let br = b.b1r(r);
            let rhs = (b.b1r(r + m) - b.b1r(r - m)).scale(&coeff);
            for (which, name) in [
                (Which::Prime, "[H'_m, B_1r]"),
                (Which::Plain, "[H_m, B_1r]"),
            ] {
                match b.h(m, which) {
                    Ok(h) => ck.equal(&format!("{name} = [2m]/m (B_1,r+m - B_1,r-m)"), p, || {
                        (h.commutator(&br), rhs.clone())
                    }),
                    Err(e) => ck.error(name, p(), &e),
                }
            }
            for (which, name) in [(Which::Prime, "Θ'"), (Which::Plain, "Θ")] {
                let identity = format!(
                    "[{name}_m, B_1r] + [{name}_m-2, B_1r] = [{name}_m-1, B_1,r+1]_q^2 + [{name}_m-1, B_1,r-1]_q^-2"
                );
                let (t0, t1, t2) = (
                    b.theta(m, which),
                    b.theta(m - 1, which),
                    b.theta(m - 2, which),
                );
                let (up, down) = (b.b1r(r + 1), b.b1r(r - 1));
                ck.equal(&identity, p, || {
                    (
                        t0.commutator(&br) + t2.commutator(&br),
                        qc(&t1, &up, &qp(2)) + qc(&t1, &down, &qp(-2)),
                    )
                });
            }
        }
    }
    for r in range.0..=range.1 {
        for s in range.0..=range.1 {
            let (br, br1, bs, bs1) = (b.b1r(r), b.b1r(r + 1), b.b1r(s), b.b1r(s + 1));
            let t = |b: &mut Builder, k: i64| b.theta(k, Which::Plain);
            let rhs = t(&mut b, s - r + 1) - t(&mut b, s - r - 1).scale(&qp(-2))
                + t(&mut b, r - s + 1)
                - t(&mut b, r - s - 1).scale(&qp(-2));
            ck.equal(
                "q[B_1r, B_1,s+1]_q - q[B_1,r+1, B_1s]_q^-1 = Θ_s-r+1 - q^-2 Θ_s-r-1 + Θ_r-s+1 - q^-2 Θ_r-s-1",
                || format!("r={r} s={s}"),
                || {
                    let lhs = qc(&br, &bs1, &qp(1)).scale(&qp(1)) - qc(&br1, &bs, &qp(-1)).scale(&qp(1));
                    (lhs, rhs)
                },
            );
        }
    }
    ck.finish()
}

/// `Σ_{l=1}^{n-1} (q^(n-2l) + q^(2l-n)) z^(n-2l)` as a plain sum.
fn weighted_z_sum(n: i64) -> Element {
    let mut acc = Element::zero();
    for l in 1..n {
        acc = acc + z(n - 2 * l).scale(&(qp(n - 2 * l) + qp(2 * l - n)));
    }
    acc
}

/// `Σ_{l=1}^{n-1} z^(n-2l)`
fn plain_z_sum(n: i64) -> Element {
    (1..n).fold(Element::zero(), |acc, l| acc + z(n - 2 * l))
}

/// Numerator of `weighted_z_sum(n)` over `(qz - q^-1 z^-1)(q^-1 z - q z^-1)`.
fn weighted_numerator(n: i64) -> Element {
    zsum(n).scale(&(qp(n - 2) + qp(2 - n))) - zsum(n - 2).scale(&(qp(n) + qp(-n)))
}

fn weighted_denominator() -> Element {
    let a = z(1).scale(&qp(1)) - z(-1).scale(&qp(-1));
    let b = z(1).scale(&qp(-1)) - z(-1).scale(&qp(1));
    &a * &b
}

/// One term `coef·[F, u]_rho` of an identity whose `F` may be a formal
/// fraction `N/D` with `D` central for `F`. `rho = None` is the plain
/// commutator.
struct Bracket {
    coef: QHalf,
    numerator: Element,
    /// `true` when `numerator` must still be divided by the common
    /// denominator.
    fraction: bool,
    other: Element,
    rho: Option<QHalf>,
}

/// `D·(Σ terms)·D` with fractions cleared: `D·[N/D, u]_ρ·D = ρ N u D - ρ^-1 D u N`.
fn cleared_sum(terms: &[Bracket], den: &Element) -> Element {
    let mut acc = Element::zero();
    for t in terms {
        let rho = t.rho.clone().unwrap_or_else(QHalf::one);
        let rho_inv = inv(&rho);
        let (f, u) = (&t.numerator, &t.other);
        let value = if t.fraction {
            (f * u * den).scale(&rho) - (den * u * f).scale(&rho_inv)
        } else {
            let inner = (f * u).scale(&rho) - (u * f).scale(&rho_inv);
            den * &inner * den
        };
        acc = acc + value.scale(&t.coef);
    }
    acc
}

fn plain_sum(terms: &[Bracket]) -> Element {
    terms.iter().fold(Element::zero(), |acc, t| {
        assert!(!t.fraction);
        let rho = t.rho.clone().unwrap_or_else(QHalf::one);
        acc + qc(&t.numerator, &t.other, &rho).scale(&t.coef)
    })
}

fn br(coef: QHalf, f: Element, other: Element, rho: Option<QHalf>) -> Bracket {
    Bracket {
        coef,
        numerator: f,
        fraction: false,
        other,
        rho,
    }
}

fn frac(coef: QHalf, n: Element, other: Element, rho: Option<QHalf>) -> Bracket {
    Bracket {
        coef,
        numerator: n,
        fraction: true,
        other,
        rho,
    }
}

/// The z-forms of every family, the relations of `z`, and the
/// commutator identities between powers of `z` and `y z^r + y^-1 z^-r`
/// with all their case splits.
pub fn suite_z_forms(max_m: i64, range: (i64, i64)) -> CheckReport {
    let params = format!("maxM={max_m} r,s∈{}", range_text(range));
    let mut ck = Checker::new(Suite::ZForms, params);
    let mut b = Builder::with_series_order(max_m as usize);
    let (x, y, xi, yi) = (
        Element::x(),
        Element::y(),
        Element::x_inv(),
        Element::y_inv(),
    );
    let none = String::new;

    ck.equal("z = q yx", none, || (z(1), (&y * &x).scale(&qp(1))));
    ck.equal("z = q^-1 xy", none, || (z(1), (&x * &y).scale(&qp(-1))));
    ck.equal("z^-1 = q y^-1 x^-1", none, || {
        (z(-1), (&yi * &xi).scale(&qp(1)))
    });
    ck.equal("z^-1 = q^-1 x^-1 y^-1", none, || {
        (z(-1), (&xi * &yi).scale(&qp(-1)))
    });
    ck.equal("zy = q^2 yz", none, || {
        (&z(1) * &y, (&y * &z(1)).scale(&qp(2)))
    });
    ck.equal("zx = q^-2 xz", none, || {
        (&z(1) * &x, (&x * &z(1)).scale(&qp(-2)))
    });

    let lo = range.0.min(-max_m);
    let hi = range.1.max(max_m);
    let div = crate::elements::b1r_divisor();
    for r in lo..=hi {
        let p = || format!("r={r}");
        let def = b.b1r(r);
        ck.equal(
            "B_1r = (q^r y z^r + q^r y^-1 z^-r)/(q^1/2 (q - q^-1))",
            p,
            || (def.clone(), c(r).scale(&div)),
        );
        ck.equal(
            "B_1r = (q^(r+1) x^-1 z^(r+1) + q^(r+1) x z^(-r-1))/(q^1/2 (q - q^-1))",
            p,
            || {
                let e = (&xi * &z(r + 1) + &x * &z(-r - 1)).scale(&(qp(r + 1) * div.clone()));
                (def.clone(), e)
            },
        );
    }
    for n in 1..=max_m {
        let p = || format!("n={n}");
        let tp = b.theta(n, Which::Prime);
        ck.equal("Θ'_n z-form", p, || {
            let e = (zsum(n).scale(&qint(n + 1)) + weighted_z_sum(n)).scale(&inv(&qmi()));
            (tp, e)
        });
        let t = b.theta(n, Which::Plain);
        ck.equal("Θ_n z-form", p, || {
            let e = zsum(n).scale(&qint(n + 1)) + plain_z_sum(n).scale(&(qp(2 - n) + qp(-n)));
            (t, e.scale(&inv(&qmi())))
        });
        let even = n % 2 == 0;
        for (which, name, tail) in [
            (Which::Prime, "H'_n z-form", qp(n) + qp(-n)),
            (Which::Plain, "H_n z-form", qp(n) + QHalf::one()),
        ] {
            match b.h(n, which) {
                Ok(h) => ck.equal(name, p, || {
                    let mut e = zsum(n).scale(&(qp(n) + qp(-n)));
                    if even {
                        e = e - Element::scalar(QHalf::from_int(2) * tail);
                    }
                    (h, e.scale(&inv(&(QHalf::from_int(n) * qmi()))))
                }),
                Err(e) => ck.error(name, p(), &e),
            }
        }
        if n >= 3 {
            let (tn, tn2) = (b.theta(n, Which::Plain), b.theta(n - 2, Which::Plain));
            ck.equal(
                "(q - q^-1)(Θ_n - q^-2 Θ_n-2) = [n+1](z^n + z^-n) - [n-3](z^n-2 + z^2-n)",
                p,
                || {
                    (
                        (tn - tn2.scale(&qp(-2))).scale(&qmi()),
                        zsum(n).scale(&qint(n + 1)) - zsum(n - 2).scale(&qint(n - 3)),
                    )
                },
            );
        }
    }

    let (q2, qm2) = (Some(qp(2)), Some(qp(-2)));
    let dz = weighted_denominator();
    let dz_plain = z(1) - z(-1);
    for m in 1..=max_m {
        for r in range.0..=range.1 {
            let p = || format!("m={m} r={r}");
            ck.equal("[z^m + z^-m, c_r] = (q^m - q^-m)(c_r+m - c_r-m)", p, || {
                (
                    zsum(m).commutator(&c(r)),
                    (c(r + m) - c(r - m)).scale(&(qp(m) - qp(-m))),
                )
            });
            if m == 1 {
                ck.equal("(q - q^-1)^-1 [z + z^-1, c_r] = c_r+1 - c_r-1", p, || {
                    (
                        zsum(1).commutator(&c(r)).scale(&inv(&qmi())),
                        c(r + 1) - c(r - 1),
                    )
                });
                continue;
            }
            if m == 2 {
                let terms = [
                    br(qint(3), zsum(2), c(r), None),
                    br(-qint(2), zsum(1), c(r + 1), q2.clone()),
                    br(-qint(2), zsum(1), c(r - 1), qm2.clone()),
                ];
                ck.zero("m = 2 case", p, || plain_sum(&terms));
            } else {
                // Θ' expansion, m >= 3
                let mut terms = vec![br(qint(m + 1), zsum(m), c(r), None)];
                for l in 1..m {
                    terms.push(br(qp(m - 2 * l) + qp(2 * l - m), z(m - 2 * l), c(r), None));
                }
                terms.push(br(qint(m - 1), zsum(m - 2), c(r), None));
                for l in 1..=m - 3 {
                    terms.push(br(
                        qp(m - 2 * l - 2) + qp(2 * l - m + 2),
                        z(m - 2 * l - 2),
                        c(r),
                        None,
                    ));
                }
                terms.push(br(-qint(m), zsum(m - 1), c(r + 1), q2.clone()));
                for l in 1..=m - 2 {
                    let k = m - 2 * l - 1;
                    terms.push(br(-(qp(k) + qp(-k)), z(k), c(r + 1), q2.clone()));
                }
                terms.push(br(-qint(m), zsum(m - 1), c(r - 1), qm2.clone()));
                for l in 1..=m - 2 {
                    let k = m - 2 * l - 1;
                    terms.push(br(-(qp(k) + qp(-k)), z(k), c(r - 1), qm2.clone()));
                }
                ck.zero("m >= 3 case, Θ' expansion", p, || plain_sum(&terms));

                // Θ expansion, m >= 3
                let mut terms = vec![br(qint(m + 1), zsum(m), c(r), None)];
                terms.push(br(qp(2 - m) + qp(-m), plain_z_sum(m), c(r), None));
                terms.push(br(qint(m - 1), zsum(m - 2), c(r), None));
                terms.push(br(qp(4 - m) + qp(2 - m), plain_z_sum(m - 2), c(r), None));
                terms.push(br(-qint(m), zsum(m - 1), c(r + 1), q2.clone()));
                terms.push(br(
                    -(qp(3 - m) + qp(1 - m)),
                    plain_z_sum(m - 1),
                    c(r + 1),
                    q2.clone(),
                ));
                terms.push(br(-qint(m), zsum(m - 1), c(r - 1), qm2.clone()));
                terms.push(br(
                    -(qp(3 - m) + qp(1 - m)),
                    plain_z_sum(m - 1),
                    c(r - 1),
                    qm2.clone(),
                ));
                ck.zero("m >= 3 case, Θ expansion", p, || plain_sum(&terms));
            }

            // Compact forms, m >= 2.
            let common = |m: i64, r: i64| {
                vec![
                    br(qint(m + 1), zsum(m), c(r), None),
                    br(qint(m - 1), zsum(m - 2), c(r), None),
                    br(-qint(m), zsum(m - 1), c(r + 1), Some(qp(2))),
                    br(-qint(m), zsum(m - 1), c(r - 1), Some(qp(-2))),
                ]
            };
            let mut terms = common(m, r);
            terms.push(frac(
                -QHalf::one(),
                weighted_numerator(m - 1),
                c(r + 1),
                q2.clone(),
            ));
            terms.push(frac(
                -QHalf::one(),
                weighted_numerator(m - 1),
                c(r - 1),
                qm2.clone(),
            ));
            terms.push(frac(QHalf::one(), weighted_numerator(m), c(r), None));
            terms.push(frac(QHalf::one(), weighted_numerator(m - 2), c(r), None));
            ck.zero("cleared compact form, Θ' version", p, || {
                cleared_sum(&terms, &dz)
            });

            let k = qp(3 - m) + qp(1 - m);
            let mut terms = common(m, r);
            let geo = |j: i64| z(j) - z(-j);
            terms.push(frac(-k.clone(), geo(m - 2), c(r + 1), q2.clone()));
            terms.push(frac(-k.clone(), geo(m - 2), c(r - 1), qm2.clone()));
            let mixed = geo(m - 3).scale(&qp(1)) + geo(m - 1).scale(&qp(-1));
            terms.push(frac(k, mixed, c(r), None));
            ck.zero("cleared compact form, Θ version", p, || {
                cleared_sum(&terms, &dz_plain)
            });
        }
    }
    for n in 1..=max_m + 1 {
        ck.equal(
            "weighted z-sum times its denominator",
            || format!("n={n}"),
            || (&weighted_z_sum(n) * &dz, weighted_numerator(n)),
        );
        ck.equal(
            "plain z-sum times its denominator",
            || format!("n={n}"),
            || (&plain_z_sum(n) * &dz_plain, z(n - 1) - z(1 - n)),
        );
    }

    let q = qp(1);
    for r in range.0..=range.1 {
        for s in range.0..=range.1 {
            let p = || format!("r={r} s={s}");
            if s > r + 1 || r > s + 1 {
                let k = (s - r).abs();
                ck.equal(
                    "q^(r+s+1)([d_r, d_s+1]_q + [d_s, d_r+1]_q), |s - r| > 1",
                    p,
                    || {
                        let lhs = (qc(&d(r), &d(s + 1), &q) + qc(&d(s), &d(r + 1), &q))
                            .scale(&qp(r + s + 1));
                        let rhs = zsum(k + 1).scale(&(qp(k + 2) - qp(-k - 2)))
                            - zsum(k - 1).scale(&(qp(k - 2) - qp(2 - k)));
                        (lhs, rhs)
                    },
                );
            } else if s == r + 1 || r == s + 1 {
                let t = r.min(s);
                ck.equal(
                    "q^(2t+2)((q - q^-1) d_t+1^2 + [d_t, d_t+2]_q), |s - r| = 1",
                    p,
                    || {
                        let sq = &d(t + 1) * &d(t + 1);
                        let lhs =
                            (sq.scale(&qmi()) + qc(&d(t), &d(t + 2), &q)).scale(&qp(2 * t + 2));
                        let rhs = zsum(2).scale(&(qp(3) - qp(-3)))
                            + Element::scalar(QHalf::from_int(2) * qmi());
                        (lhs, rhs)
                    },
                );
                ck.equal("general form agrees at |s - r| = 1", p, || {
                    let lhs =
                        (qc(&d(r), &d(s + 1), &q) + qc(&d(s), &d(r + 1), &q)).scale(&qp(r + s + 1));
                    let sq = &d(t + 1) * &d(t + 1);
                    let special =
                        (sq.scale(&qmi()) + qc(&d(t), &d(t + 2), &q)).scale(&qp(2 * t + 2));
                    (lhs, special)
                });
            } else {
                ck.equal("q^(2r+1)[d_r, d_r+1]_q = (q^2 - q^-2)(z + z^-1)", p, || {
                    let lhs = qc(&d(r), &d(r + 1), &q).scale(&qp(2 * r + 1));
                    (lhs, zsum(1).scale(&(qp(2) - qp(-2))))
                });
            }
        }
    }
    ck.finish()
}

/// Pairwise commutators of the commuting families up to `max_n`.
pub fn suite_commutation(max_n: i64) -> CheckReport {
    let mut ck = Checker::new(Suite::Commutation, format!("maxN={max_n}"));
    let mut b = Builder::with_series_order(max_n as usize);
    let mut families: Vec<(&str, Vec<Element>)> = Vec::new();
    families.push(("B_mδ", (1..=max_n).map(|n| b.b_ndelta(n)).collect()));
    families.push((
        "Θ'",
        (1..=max_n).map(|n| b.theta(n, Which::Prime)).collect(),
    ));
    families.push(("Θ", (1..=max_n).map(|n| b.theta(n, Which::Plain)).collect()));
    match (1..=max_n)
        .map(|n| b.h(n, Which::Plain))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(h) => families.push(("H", h)),
        Err(e) => ck.error("build H_n", format!("maxN={max_n}"), &e),
    }
    for (name, elems) in &families {
        for (i, u) in elems.iter().enumerate() {
            for (j, v) in elems.iter().enumerate().skip(i) {
                let (m, n) = (i + 1, j + 1);
                ck.zero(
                    &format!("[{name}_m, {name}_n] = 0"),
                    || format!("m={m} n={n}"),
                    || u.commutator(v),
                );
            }
        }
    }
    ck.finish()
}
