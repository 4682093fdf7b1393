//! Exact univariate and bivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Polynomial with rational coefficients, `coeffs[i]` multiplying `X^i`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector and degree -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = PolyQ { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Self::monomial(Rational::from(1), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::new(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Builds a polynomial from `(numerator, denominator)` pairs, lowest degree first.
    pub fn from_fracs(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| Rational::from((n, d))).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.cmp0().is_eq()) {
            self.coeffs.pop();
        }
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0().is_eq() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * i as u32))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::new());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(Rational::from(c / (i as u32 + 1)));
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Horner evaluation at the precision of `x`.
    pub fn eval_float(&self, x: &Float) -> Float {
        let mut acc = Float::new(x.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Composition `self(other(X))`.
    pub fn compose(&self, other: &PolyQ) -> PolyQ {
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &PolyQ::constant(c.clone());
        }
        acc
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZeroPolynomial)?.clone();
        let dd = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![Rational::new(); rem.len() - dd + 1];
        for i in (0..quot.len()).rev() {
            let q = Rational::from(&rem[i + dd - 1] / &lead);
            if q.cmp0().is_ne() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= Rational::from(&q * d);
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd - 1);
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Power series coefficients of `self / other` through `x^order`.
    pub fn series_div(&self, other: &PolyQ, order: usize) -> Result<Vec<Rational>> {
        let c0 = other.coeff(0);
        if c0.cmp0().is_eq() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for (j, d) in other.coeffs.iter().enumerate().skip(1) {
                if j > n {
                    break;
                }
                acc -= Rational::from(d * &out[n - j]);
            }
            out.push(acc / &c0);
        }
        Ok(out)
    }

    /// Renders in variable `var`, lowest degree first, e.g. `1/2 + X + X^2`.
    pub fn render(&self, var: &str) -> String {
        let terms: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0().is_ne())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                (c.clone(), mono)
            })
            .collect();
        join_terms(&terms)
    }

    /// JSON form: coefficient strings `"p/q"` in lowest terms, index = degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(rational_pq(c)))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("polynomial must be a JSON array".into()))?;
        let coeffs = arr
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::InvalidArgument("coefficient must be a string".into()))
                    .and_then(crate::numeric::parse_rational)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

/// `"p/q"` with an explicit denominator, even for integers.
pub fn rational_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn join_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (c, mono)) in terms.iter().enumerate() {
        let negative = c.cmp0().is_lt();
        let abs = Rational::from(c.abs_ref());
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs == 1 {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("X"))
    }
}

impl<'a> Add<&'a PolyQ> for &'a PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a PolyQ> for &'a PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a PolyQ> for &'a PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| Rational::from(-c)).collect())
    }
}

/// Finitely supported polynomial in `L` (standing for `ln n`) and `C`.
///
/// Keys are `(power of L, power of C)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivarPolyQ {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivarPolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    /// Builds from `(L power, C power, numerator, denominator)` tuples.
    pub fn from_terms(terms: &[(u32, u32, i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(l, c, n, d) in terms {
            p.add_term(l, c, Rational::from((n, d)));
        }
        p
    }

    pub fn add_term(&mut self, l_pow: u32, c_pow: u32, c: Rational) {
        let entry = self.terms.entry((l_pow, c_pow)).or_default();
        *entry += c;
        if entry.cmp0().is_eq() {
            self.terms.remove(&(l_pow, c_pow));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l_pow: u32, c_pow: u32) -> Rational {
        self.terms.get(&(l_pow, c_pow)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn degree_l(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_c(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Substitutes `X = slope_l * L - C` into a univariate polynomial.
    pub fn from_poly_in_x(p: &PolyQ, slope_l: &Rational) -> Self {
        // X = a L + b C with a = slope_l, b = -1; expand by the binomial theorem.
        let mut out = Self::zero();
        for (d, coeff) in p.coeffs().iter().enumerate() {
            if coeff.cmp0().is_eq() {
                continue;
            }
            let d = d as u32;
            for i in 0..=d {
                if slope_l.cmp0().is_eq() && i > 0 {
                    break;
                }
                let binom = Integer::from(Integer::binomial_u(d, i));
                let mut c = Rational::from(coeff * binom);
                c *= slope_l.clone().pow(i);
                if (d - i) % 2 == 1 {
                    c = -c;
                }
                out.add_term(i, d - i, c);
            }
        }
        out
    }

    /// Partial derivative with respect to `C`.
    pub fn d_dc(&self) -> Self {
        let mut out = Self::zero();
        for (&(l, c), v) in &self.terms {
            if c > 0 {
                out.add_term(l, c - 1, Rational::from(v * c));
            }
        }
        out
    }

    pub fn eval_float(&self, l: &Float, c: &Float) -> Float {
        let prec = l.prec().max(c.prec());
        let mut acc = Float::new(prec);
        for (&(lp, cp), v) in &self.terms {
            let mut t = Float::with_val(prec, v);
            if lp > 0 {
                t *= Float::with_val(prec, l.pow(lp));
            }
            if cp > 0 {
                t *= Float::with_val(prec, c.pow(cp));
            }
            acc += t;
        }
        acc
    }

    /// Renders with `ln(n)` for `L`, grouping by powers of `L` and then `C`.
    pub fn render(&self) -> String {
        let terms: Vec<(Rational, String)> = self
            .terms
            .iter()
            .map(|(&(l, c), v)| {
                let mut mono = Vec::new();
                match l {
                    0 => {}
                    1 => mono.push("L".to_string()),
                    _ => mono.push(format!("L^{l}")),
                }
                match c {
                    0 => {}
                    1 => mono.push("C".to_string()),
                    _ => mono.push(format!("C^{c}")),
                }
                (v.clone(), mono.join("*"))
            })
            .collect();
        join_terms(&terms)
    }
}

impl fmt::Display for BivarPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a BivarPolyQ> for &'a BivarPolyQ {
    type Output = BivarPolyQ;
    fn add(self, rhs: &BivarPolyQ) -> BivarPolyQ {
        let mut out = self.clone();
        for (&(l, c), v) in &rhs.terms {
            out.add_term(l, c, v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BivarPolyQ> for &'a BivarPolyQ {
    type Output = BivarPolyQ;
    fn sub(self, rhs: &BivarPolyQ) -> BivarPolyQ {
        let mut out = self.clone();
        for (&(l, c), v) in &rhs.terms {
            out.add_term(l, c, Rational::from(-v));
        }
        out
    }
}

impl<'a> Mul<&'a BivarPolyQ> for &'a BivarPolyQ {
    type Output = BivarPolyQ;
    fn mul(self, rhs: &BivarPolyQ) -> BivarPolyQ {
        let mut out = BivarPolyQ::zero();
        for (&(l1, c1), v1) in &self.terms {
            for (&(l2, c2), v2) in &rhs.terms {
                out.add_term(l1 + l2, c1 + c2, Rational::from(v1 * v2));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = PolyQ::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(PolyQ::zero().degree(), -1);
        assert_eq!(PolyQ::from_ints(&[0, 0]).degree(), -1);
    }

    #[test]
    fn arithmetic() {
        let a = PolyQ::from_ints(&[1, 1]);
        let b = PolyQ::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, PolyQ::from_ints(&[-1, 0, 1]));
        assert_eq!(&a + &b, PolyQ::from_ints(&[0, 2]));
        assert_eq!(&a - &a, PolyQ::zero());
        assert_eq!(
            PolyQ::from_ints(&[1, 2, 3]).derivative(),
            PolyQ::from_ints(&[2, 6])
        );
        assert_eq!(PolyQ::from_ints(&[2, 6]).integral(), PolyQ::from_ints(&[0, 2, 3]));
    }

    #[test]
    fn gcd_and_division() {
        let a = &PolyQ::from_ints(&[1, 1]) * &PolyQ::from_ints(&[2, 0, 1]);
        let b = &PolyQ::from_ints(&[1, 1]) * &PolyQ::from_ints(&[0, 3]);
        assert_eq!(a.gcd(&b), PolyQ::from_ints(&[1, 1]));
        let (q, r) = a.div_rem(&PolyQ::from_ints(&[1, 1])).unwrap();
        assert_eq!(q, PolyQ::from_ints(&[2, 0, 1]));
        assert!(r.is_zero());
        assert_eq!(
            a.div_rem(&PolyQ::zero()),
            Err(Error::DivisionByZeroPolynomial)
        );
    }

    #[test]
    fn series_division_of_geometric() {
        let s = PolyQ::from_ints(&[1]).series_div(&PolyQ::from_ints(&[1, -1]), 4).unwrap();
        assert!(s.iter().all(|c| *c == 1));
    }

    #[test]
    fn renders_like_tables() {
        let p = PolyQ::from_fracs(&[(1, 2), (1, 1), (1, 1)]);
        assert_eq!(p.render("X"), "1/2 + X + X^2");
        let q = PolyQ::from_fracs(&[(-3, 2), (-1, 1), (1, 1)]);
        assert_eq!(q.to_string(), "-3/2 - X + X^2");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }

    #[test]
    fn json_uses_explicit_fractions() {
        let p = PolyQ::from_fracs(&[(1, 2), (3, 1)]);
        assert_eq!(p.to_json(), serde_json::json!(["1/2", "3/1"]));
        assert_eq!(PolyQ::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn bivariate_substitution() {
        // X = -L - C, X^2 = L^2 + 2LC + C^2
        let p = PolyQ::from_ints(&[0, 0, 1]);
        let b = BivarPolyQ::from_poly_in_x(&p, &Rational::from(-1));
        assert_eq!(b, BivarPolyQ::from_terms(&[(2, 0, 1, 1), (1, 1, 2, 1), (0, 2, 1, 1)]));
        // b1 = 0: X = -C
        let b0 = BivarPolyQ::from_poly_in_x(&PolyQ::from_ints(&[0, 0, 0, 1]), &Rational::new());
        assert_eq!(b0, BivarPolyQ::from_terms(&[(0, 3, -1, 1)]));
    }

    #[test]
    fn bivariate_render_and_derivative() {
        let b = BivarPolyQ::from_terms(&[(0, 0, 1, 2), (0, 1, 1, 1), (1, 0, 1, 1)]);
        assert_eq!(b.render(), "1/2 + C + L");
        assert_eq!(b.d_dc(), BivarPolyQ::constant(Rational::from(1)));
    }
}
