//! Power-logarithmic orbit expansions.
//!
//! For a canonical map the orbit satisfies
//!
//! ```text
//! x_n ~ sum_{m<k} P_m(X) / n^{m+1},    X = -b1 ln(n) - C,
//! ```
//!
//! with `P_m` rational polynomials of degree `m`. Writing `t = 1/n`, the shift
//! `n -> n+1` acts as `t -> t/(1+t)` and `X -> X - b1 ln(1+t)`, so the
//! recurrence becomes an identity between formal power series in `t` whose
//! coefficients are polynomials in `X`. Matching the coefficient of
//! `t^{m+2}` gives the linear equation
//!
//! ```text
//! (1 - m) P_m - b1 P_m' = -K_m(P_0, ..., P_{m-1})
//! ```
//!
//! which fixes `P_m` uniquely for `m >= 2`; `P_1 = X` is the gauge choice
//! (zero constant term) that pins `C`.

use std::fmt;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::maps::{higher_map, MapSpec};
use crate::poly::{BivarPolyQ, PolyQ};

/// Default number of expansion terms.
pub const DEFAULT_K: usize = 20;

/// Truncated power series in `t` with coefficients in `Q[X]`.
#[derive(Clone, Debug)]
struct TSeries {
    c: Vec<PolyQ>,
}

impl TSeries {
    fn zero(order: usize) -> Self {
        TSeries { c: vec![PolyQ::zero(); order + 1] }
    }

    fn order(&self) -> usize {
        self.c.len() - 1
    }

    fn mul(&self, o: &TSeries) -> TSeries {
        let order = self.order().min(o.order());
        let mut out = TSeries::zero(order);
        for (i, a) in self.c.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.c[i + j] = &out.c[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Coefficient `t^idx` of `self * o` only.
    fn mul_coeff(&self, o: &TSeries, idx: usize) -> PolyQ {
        let mut acc = PolyQ::zero();
        for i in 0..=idx {
            let (a, b) = (&self.c[i], &o.c[idx - i]);
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// `sum_i coeffs[i] * self^i`, Horner.
    fn compose_poly(&self, coeffs: &[Rational]) -> TSeries {
        let order = self.order();
        let mut acc = TSeries::zero(order);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            acc.c[0] = &acc.c[0] + &PolyQ::constant(c.clone());
        }
        acc
    }
}

/// Scalar power series product truncated at `order`.
fn scalar_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.cmp0().is_eq() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// `ln(1 + t)` through `t^order`.
fn log1p_series(order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|i| match i {
            0 => Rational::new(),
            _ if i % 2 == 1 => Rational::from((1, i as u32)),
            _ => Rational::from((-1, i as u32)),
        })
        .collect()
}

/// `(1 + t)^{-j}` through `t^order`, `j >= 1`.
fn inv_binomial_series(j: u32, order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|i| {
            let b = Rational::from(Integer::binomial_u(j + i as u32 - 1, i as u32));
            if i % 2 == 1 {
                -b
            } else {
                b
            }
        })
        .collect()
}

/// `sum_m P_m t^{m+1}` through `t^order`.
fn orbit_series(polys: &[PolyQ], order: usize) -> TSeries {
    let mut s = TSeries::zero(order);
    for (m, p) in polys.iter().enumerate() {
        if m < order {
            s.c[m + 1] = p.clone();
        }
    }
    s
}

/// The series for `x_{n+1}` expanded around `n`:
/// `sum_m P_m(X - b1 ln(1+t)) t^{m+1} (1+t)^{-(m+1)}` through `t^order`.
fn shifted_series(polys: &[PolyQ], b1: &Rational, order: usize) -> TSeries {
    let h: Vec<Rational> = log1p_series(order)
        .into_iter()
        .map(|c| -(c * b1))
        .collect();
    let max_deg = polys.iter().map(|p| p.degree().max(0) as usize).max().unwrap_or(0);
    let mut h_pows = vec![{
        let mut one = vec![Rational::new(); order + 1];
        one[0] = Rational::from(1);
        one
    }];
    for d in 1..=max_deg {
        let next = scalar_mul(&h_pows[d - 1], &h, order);
        h_pows.push(next);
    }
    let mut out = TSeries::zero(order);
    for (m, p) in polys.iter().enumerate() {
        let lead = m + 1;
        if lead > order {
            break;
        }
        // Taylor shift P(X + h) = sum_d P^(d)(X)/d! h^d.
        let room = order - lead;
        let mut shifted = TSeries::zero(room);
        let mut deriv = p.clone();
        let mut fact = Integer::from(1);
        let mut d = 0u32;
        while !deriv.is_zero() {
            if d > 0 {
                fact *= d;
            }
            let scaled = deriv.scale(&Rational::from((Integer::from(1), fact.clone())));
            for i in 0..=room {
                let hc = &h_pows[d as usize][i];
                if hc.cmp0().is_ne() {
                    shifted.c[i] = &shifted.c[i] + &scaled.scale(hc);
                }
            }
            deriv = deriv.derivative();
            d += 1;
        }
        let damp = inv_binomial_series(lead as u32, room);
        for i in 0..=room {
            let mut acc = PolyQ::zero();
            for j in 0..=i {
                if damp[i - j].cmp0().is_ne() && !shifted.c[j].is_zero() {
                    acc = &acc + &shifted.c[j].scale(&damp[i - j]);
                }
            }
            out.c[lead + i] = &out.c[lead + i] + &acc;
        }
    }
    out
}

/// Truncated orbit expansion `sum_{m<k} P_m(X)/n^{m+1}`.
#[derive(Clone, Debug)]
pub struct Expansion {
    map: MapSpec,
    b1: Rational,
    polys: Vec<PolyQ>,
}

impl Expansion {
    pub fn map(&self) -> &MapSpec {
        &self.map
    }

    pub fn b1(&self) -> &Rational {
        &self.b1
    }

    pub fn k(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[PolyQ] {
        &self.polys
    }

    /// Copy with `polys[m]` replaced; used to exercise the residual check.
    pub fn with_poly(&self, m: usize, p: PolyQ) -> Self {
        let mut out = self.clone();
        out.polys[m] = p;
        out
    }

    /// `P_m` rewritten in `L = ln n` and `C` via `X = -b1 L - C`.
    pub fn poly_in_l_c(&self, m: usize) -> BivarPolyQ {
        BivarPolyQ::from_poly_in_x(&self.polys[m], &Rational::from(-&self.b1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "map": self.map.name(),
            "b1": crate::poly::rational_pq(&self.b1),
            "k": self.k(),
            "polys": self.polys.iter().map(PolyQ::to_json).collect::<Vec<_>>(),
        })
    }

    /// One line per polynomial, e.g. `P_2 = 1/2 + X + X^2`.
    pub fn render(&self) -> String {
        self.polys
            .iter()
            .enumerate()
            .map(|(m, p)| format!("P_{m} = {}\n", p.render("X")))
            .collect()
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Derives `P_0..P_{k-1}` exactly by coefficient matching.
pub fn derive_expansion(map: &MapSpec, k: usize) -> Result<Expansion> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let b1 = map.b1()?;
    let p_coeffs = map.numerator().coeffs();
    let q_coeffs = map.denominator().coeffs();
    let mut polys = vec![PolyQ::one()];
    for m in 1..k {
        let order = m + 2;
        let s = orbit_series(&polys, order);
        let shifted = shifted_series(&polys, &b1, order);
        let lhs = s.compose_poly(q_coeffs).mul_coeff(&shifted, order);
        let rhs = &s.compose_poly(p_coeffs).c[order];
        let known = &lhs - rhs;
        let p_m = if m == 1 {
            if b1.cmp0().is_eq() {
                if !known.is_zero() {
                    return Err(Error::NotCanonical("inconsistent order-3 balance".into()));
                }
                PolyQ::x()
            } else {
                known.scale(&Rational::from(b1.recip_ref())).integral()
            }
        } else {
            solve_linear(&known, m, &b1)
        };
        polys.push(p_m);
    }
    debug_assert!(k < 2 || polys[1] == PolyQ::x());
    Ok(Expansion { map: map.clone(), b1, polys })
}

/// Solves `(1 - m) P - b1 P' = -known` for the polynomial `P`.
fn solve_linear(known: &PolyQ, m: usize, b1: &Rational) -> PolyQ {
    let deg = known.degree();
    if deg < 0 {
        return PolyQ::zero();
    }
    let a = Rational::from(1 - m as i64);
    let mut coeffs = vec![Rational::new(); deg as usize + 1];
    for e in (0..=deg as usize).rev() {
        let mut rhs = -known.coeff(e);
        if e < deg as usize {
            rhs += Rational::from(b1 * (e as u32 + 1)) * &coeffs[e + 1];
        }
        coeffs[e] = rhs / &a;
    }
    PolyQ::new(coeffs)
}

/// Coefficients of `n^-1 .. n^-depth` in `f(series(n)) - series(n+1)`,
/// written in `L = ln n` and `C`. All vanish for a correct expansion.
///
/// `f` is applied through its Taylor expansion, independently of the
/// `q(S) S' = p(S)` form used by [`derive_expansion`].
pub fn residual(exp: &Expansion, depth: usize) -> Result<Vec<BivarPolyQ>> {
    if depth > exp.k() {
        return Err(Error::InvalidArgument(format!(
            "residual depth {depth} exceeds k = {}",
            exp.k()
        )));
    }
    let taylor = exp.map.taylor(depth);
    let s = orbit_series(&exp.polys, depth);
    let image = s.compose_poly(&taylor);
    let shifted = shifted_series(&exp.polys, &exp.b1, depth);
    let slope = Rational::from(-&exp.b1);
    Ok((1..=depth)
        .map(|i| BivarPolyQ::from_poly_in_x(&(&image.c[i] - &shifted.c[i]), &slope))
        .collect())
}

/// `sum_{m<k} P_m(X)/n^{m+1}` and its `X`-derivative at the precision given.
pub(crate) fn eval_with_derivative(
    exp: &Expansion,
    n: &Integer,
    x: &Float,
    precision: u32,
) -> (Float, Float) {
    let xw = Float::with_val(precision, x);
    let t = Float::with_val(precision, n).recip();
    let mut val = Float::new(precision);
    let mut der = Float::new(precision);
    for p in exp.polys.iter().rev() {
        val += p.eval_float(&xw);
        val *= &t;
        der += p.derivative().eval_float(&xw);
        der *= &t;
    }
    (val, der)
}

/// `sum_{m<k} P_m(X)/n^{m+1}` at `precision` bits.
pub fn eval_expansion(exp: &Expansion, n: &Integer, x: &Float, precision: u32) -> Result<Float> {
    if *n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    Ok(eval_with_derivative(exp, n, x, precision).0)
}

/// Reciprocal-side expansion `w_n = n + b1 ln n + C + sum_{m=1..k} R_m(L, C)/n^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSeries {
    log_coeff: Rational,
    tail: Vec<BivarPolyQ>,
}

impl WSeries {
    pub fn new(log_coeff: Rational, tail: Vec<BivarPolyQ>) -> Self {
        WSeries { log_coeff, tail }
    }

    pub fn log_coeff(&self) -> &Rational {
        &self.log_coeff
    }

    /// `R_1..R_k`.
    pub fn tail(&self) -> &[BivarPolyQ] {
        &self.tail
    }

    /// `w(n)` for a given `C`, together with `dw/dC`.
    pub fn eval_with_dc(&self, n: &Integer, c: &Float, precision: u32) -> (Float, Float) {
        let nf = Float::with_val(precision, n);
        let l = Float::with_val(precision, nf.ln_ref());
        let cw = Float::with_val(precision, c);
        let t = Float::with_val(precision, nf.recip_ref());
        let mut tail = Float::new(precision);
        let mut dtail = Float::new(precision);
        for r in self.tail.iter().rev() {
            tail += r.eval_float(&l, &cw);
            tail *= &t;
            dtail += r.d_dc().eval_float(&l, &cw);
            dtail *= &t;
        }
        let mut val = nf;
        val += Float::with_val(precision, &l * &self.log_coeff);
        val += &cw;
        val += tail;
        (val, dtail + 1u32)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("n");
        let lc = &self.log_coeff;
        if *lc == 1 {
            out.push_str(" + L");
        } else if *lc == -1 {
            out.push_str(" - L");
        } else if lc.cmp0().is_ne() {
            out.push_str(&format!(" + ({lc})*L"));
        }
        out.push_str(" + C");
        for (i, r) in self.tail.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let pow = match i + 1 {
                1 => "n".to_string(),
                m => format!("n^{m}"),
            };
            out.push_str(&format!(" + ({r})/{pow}"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tail: Vec<serde_json::Value> = self
            .tail
            .iter()
            .map(|r| {
                serde_json::Value::Array(
                    r.terms()
                        .map(|(&(l, c), v)| {
                            serde_json::json!({"L": l, "C": c, "coeff": crate::poly::rational_pq(v)})
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "log_coeff": crate::poly::rational_pq(&self.log_coeff),
            "tail": tail,
        })
    }
}

impl fmt::Display for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Formal reciprocal `1/x_n` of an expansion, truncated at `n^-k`.
///
/// Needs `P_0..P_{k+1}`, so `exp.k() >= k + 2`.
pub fn reciprocal(exp: &Expansion, k: usize) -> Result<WSeries> {
    if exp.k() < k + 2 {
        return Err(Error::InvalidArgument(format!(
            "reciprocal to order {k} needs an expansion with at least {} terms",
            k + 2
        )));
    }
    // x_n = t (1 + S'),  S' = sum_{m>=1} P_m t^m;  w_n = (1/t) * 1/(1 + S').
    let order = k + 1;
    let mut s = TSeries::zero(order);
    for m in 1..=order {
        s.c[m] = exp.polys[m].clone();
    }
    let mut inv = TSeries::zero(order);
    inv.c[0] = PolyQ::one();
    for j in 1..=order {
        let mut acc = PolyQ::zero();
        for i in 1..=j {
            acc = &acc - &(&s.c[i] * &inv.c[j - i]);
        }
        inv.c[j] = acc;
    }
    let slope = Rational::from(-&exp.b1);
    debug_assert_eq!(inv.c[1], -&PolyQ::x());
    let tail = (1..=k)
        .map(|m| BivarPolyQ::from_poly_in_x(&inv.c[m + 1], &slope))
        .collect();
    Ok(WSeries { log_coeff: exp.b1.clone(), tail })
}

/// Coefficients of `n^-1 .. n^-k` in `x-series * w-series - 1`, in `L` and `C`.
pub fn formal_product_defect(exp: &Expansion, w: &WSeries) -> Vec<BivarPolyQ> {
    // Put both sides on a common footing in (L, C): x = sum P_m t^{m+1},
    // w = (1/t)(1 + W_1 t + W_2 t^2 + ...), with W_1 = b1 L + C.
    let k = w.tail.len();
    let slope = Rational::from(-&exp.b1);
    let xs: Vec<BivarPolyQ> = (0..=k)
        .map(|m| {
            exp.polys
                .get(m)
                .map(|p| BivarPolyQ::from_poly_in_x(p, &slope))
                .unwrap_or_default()
        })
        .collect();
    let mut ws = vec![BivarPolyQ::constant(Rational::from(1))];
    let mut w1 = BivarPolyQ::zero();
    w1.add_term(1, 0, exp.b1.clone());
    w1.add_term(0, 1, Rational::from(1));
    ws.push(w1);
    ws.extend(w.tail.iter().cloned());
    // product coefficient of t^j (j = 0..=k): sum_{a+b=j} xs[a] * ws[b]
    (0..=k)
        .map(|j| {
            let mut acc = BivarPolyQ::zero();
            for a in 0..=j {
                acc = &acc + &(&xs[a] * &ws[j - a]);
            }
            if j == 0 {
                acc = &acc - &BivarPolyQ::constant(Rational::from(1));
            }
            acc
        })
        .skip(1)
        .collect()
}

/// The w-side expansion of `x_{n+1} = x_n + 1 + sign * x_n^-ell`.
pub fn additive_wseries(ell: u32, sign: i32, k: usize) -> Result<WSeries> {
    let map = higher_map(ell, sign)?;
    reciprocal(&derive_expansion(&map, k + 2)?, k)
}
