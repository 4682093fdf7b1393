//! Rational self-maps tangent to the identity.
//!
//! Every map is stored as a reduced fraction `p(x)/q(x)` with `q(0) = 1`, and
//! is validated at construction: `f(0) = 0`, `f'(0) = 1`, and the Taylor
//! coefficient of `x^2` equals `-1`.

mod parse;

use std::fmt;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::poly::PolyQ;

/// Names accepted by [`builtin_map`], besides `HIGHER(l,+)` / `HIGHER(l,-)`.
pub const BUILTIN_NAMES: [&str; 7] = ["A", "B", "I", "J", "CUBIC_PLUS", "CUBIC_MINUS", "ORACLE"];

/// Upper end `r` of the domain `(0, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSup {
    Finite(Rational),
    Infinite,
}

impl DomainSup {
    pub fn contains(&self, x: &Rational) -> bool {
        x.cmp0().is_gt()
            && match self {
                DomainSup::Finite(r) => x < r,
                DomainSup::Infinite => true,
            }
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        x.cmp0() == Some(std::cmp::Ordering::Greater)
            && match self {
                DomainSup::Finite(r) => *x < *r,
                DomainSup::Infinite => true,
            }
    }
}

impl fmt::Display for DomainSup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSup::Finite(r) => write!(f, "{r}"),
            DomainSup::Infinite => f.write_str("inf"),
        }
    }
}

/// A validated rational map `f = p/q`.
#[derive(Clone, Debug)]
pub struct MapSpec {
    name: String,
    numerator: PolyQ,
    denominator: PolyQ,
    domain_sup: DomainSup,
}

impl PartialEq for MapSpec {
    fn eq(&self, other: &Self) -> bool {
        self.numerator == other.numerator
            && self.denominator == other.denominator
            && self.domain_sup == other.domain_sup
    }
}

impl MapSpec {
    /// Normalizes `numerator/denominator` and enforces the map invariants.
    pub fn new(
        name: impl Into<String>,
        numerator: PolyQ,
        denominator: PolyQ,
        domain_sup: DomainSup,
    ) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let g = numerator.gcd(&denominator);
        let (mut p, mut q) = if g.degree() > 0 {
            (numerator.div_rem(&g)?.0, denominator.div_rem(&g)?.0)
        } else {
            (numerator, denominator)
        };
        let q0 = q.coeff(0);
        if q0.cmp0().is_eq() {
            return Err(Error::NotTangentToIdentity("f has a pole at 0".into()));
        }
        let inv = Rational::from(q0.recip_ref());
        p = p.scale(&inv);
        q = q.scale(&inv);
        if p.coeff(0).cmp0().is_ne() {
            return Err(Error::NotTangentToIdentity(format!("f(0) = {}", p.coeff(0))));
        }
        if p.coeff(1) != 1 {
            return Err(Error::NotTangentToIdentity(format!("f'(0) = {}", p.coeff(1))));
        }
        let a2 = p.coeff(2) - q.coeff(1);
        if a2 != -1 {
            return Err(Error::NotCanonical(format!("x^2 coefficient is {a2}, expected -1")));
        }
        Ok(MapSpec { name: name.into(), numerator: p, denominator: q, domain_sup })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.numerator
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.denominator
    }

    pub fn domain_sup(&self) -> &DomainSup {
        &self.domain_sup
    }

    /// Expression text in the map grammar; [`parse_map_expr`] reads it back.
    pub fn render(&self) -> String {
        let p = render_poly_expr(&self.numerator);
        if self.denominator == PolyQ::one() {
            p
        } else {
            format!("({p})/({})", render_poly_expr(&self.denominator))
        }
    }

    /// Coefficients `a_0..a_order` of the Taylor expansion at 0.
    pub fn taylor(&self, order: usize) -> Vec<Rational> {
        self.numerator
            .series_div(&self.denominator, order)
            .expect("q(0) = 1 by construction")
    }

    /// Laurent coefficients of `1/f(1/w) = w + 1 + sum_j c_j w^-j`.
    pub fn canonical_form(&self, j_max: usize) -> Result<CanonicalForm> {
        if j_max == 0 {
            return Err(Error::InvalidArgument("J must be at least 1".into()));
        }
        // 1/f(1/w) = w * q(u)/ptilde(u) with u = 1/w and p = u * ptilde.
        let ptilde = PolyQ::new(self.numerator.coeffs()[1..].to_vec());
        let g = self.denominator.series_div(&ptilde, j_max + 1)?;
        if g[0] != 1 {
            return Err(Error::NotCanonical(format!("leading coefficient {}", g[0])));
        }
        if g[1] != 1 {
            return Err(Error::NotCanonical(format!(
                "constant term of 1/f(1/w) - w is {}, expected 1",
                g[1]
            )));
        }
        let coeffs = g[2..].to_vec();
        let cf = CanonicalForm { coeffs };
        debug_assert!(cf.verify(self));
        Ok(cf)
    }

    /// The coefficient `b1` (= `c_1` of the canonical form).
    pub fn b1(&self) -> Result<Rational> {
        Ok(self.canonical_form(1)?.b1().clone())
    }

    /// Exact evaluation `p(x)/q(x)`.
    pub fn eval_exact(&self, x: &Rational) -> Result<Rational> {
        let q = self.denominator.eval(x);
        if q.cmp0().is_eq() {
            return Err(Error::PoleHit(x.to_string()));
        }
        Ok(self.numerator.eval(x) / q)
    }

    /// Round-to-nearest evaluation at `precision` bits (guard bits internally).
    pub fn eval_real(&self, x: &Float, precision: u32) -> Result<Float> {
        let work = precision + 32;
        let xw = Float::with_val(work, x);
        let q = self.denominator.eval_float(&xw);
        if q.is_zero() {
            return Err(Error::PoleHit(x.to_string()));
        }
        let p = self.numerator.eval_float(&xw);
        Ok(Float::with_val(precision, p / q))
    }

    /// Fixed-precision evaluator for long orbits.
    pub fn real_evaluator(&self, precision: u32) -> RealEvaluator {
        RealEvaluator::new(self, precision)
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: x -> {}", self.name, self.render())
    }
}

fn render_poly_expr(p: &PolyQ) -> String {
    p.render("x").replace(' ', "")
}

/// Coefficients of the additive form `w -> w + 1 + sum_j c_j w^-j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    coeffs: Vec<Rational>,
}

impl CanonicalForm {
    /// `c_1..c_J`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn b1(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Back-substitution check: `q(u) - ptilde(u) * (1 + u + sum c_j u^{j+1})`
    /// vanishes through `u^{J+1}`.
    pub fn verify(&self, map: &MapSpec) -> bool {
        let ptilde = PolyQ::new(map.numerator.coeffs()[1..].to_vec());
        let mut g = vec![Rational::from(1), Rational::from(1)];
        g.extend(self.coeffs.iter().cloned());
        let prod = &ptilde * &PolyQ::new(g);
        let diff = map.denominator() - &prod;
        (0..=self.coeffs.len() + 1).all(|i| diff.coeff(i).cmp0().is_eq())
    }
}

/// Horner evaluator with coefficients pre-rounded to the working precision.
pub struct RealEvaluator {
    precision: u32,
    num: Vec<Float>,
    den: Vec<Float>,
    acc_num: Float,
    acc_den: Float,
}

impl RealEvaluator {
    fn new(map: &MapSpec, precision: u32) -> Self {
        let conv = |p: &PolyQ| {
            p.coeffs()
                .iter()
                .map(|c| Float::with_val(precision, c))
                .collect::<Vec<_>>()
        };
        RealEvaluator {
            precision,
            num: conv(&map.numerator),
            den: conv(&map.denominator),
            acc_num: Float::new(precision),
            acc_den: Float::new(precision),
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Replaces `x` by `f(x)`; returns the sign of the denominator at `x`.
    pub fn apply(&mut self, x: &mut Float) -> std::cmp::Ordering {
        horner(&self.num, x, &mut self.acc_num);
        horner(&self.den, x, &mut self.acc_den);
        let sign = self.acc_den.cmp0().unwrap_or(std::cmp::Ordering::Equal);
        if sign.is_ne() {
            x.clone_from(&self.acc_num);
            *x /= &self.acc_den;
        }
        sign
    }
}

fn horner(coeffs: &[Float], x: &Float, acc: &mut Float) {
    let mut it = coeffs.iter().rev();
    match it.next() {
        Some(lead) => acc.clone_from(lead),
        None => {
            *acc *= 0;
            return;
        }
    }
    for c in it {
        *acc *= x;
        if !c.is_zero() {
            *acc += c;
        }
    }
}

fn poly(coeffs: &[i64]) -> PolyQ {
    PolyQ::from_ints(coeffs)
}

/// The map `y/(1 + y + sign*y^(ell+1))`, conjugate to `x -> x + 1 + sign*x^-ell`.
pub fn higher_map(ell: u32, sign: i32) -> Result<MapSpec> {
    if ell == 0 {
        return Err(Error::InvalidArgument("ell must be at least 1".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument("sign must be +1 or -1".into()));
    }
    let mut den = vec![0i64; ell as usize + 2];
    den[0] = 1;
    den[1] = 1;
    den[ell as usize + 1] += sign as i64;
    let name = match (ell, sign) {
        (1, 1) => "B".to_string(),
        (1, _) => "I".to_string(),
        (2, 1) => "CUBIC_PLUS".to_string(),
        (2, _) => "CUBIC_MINUS".to_string(),
        (_, 1) => format!("HIGHER({ell},+)"),
        _ => format!("HIGHER({ell},-)"),
    };
    // f(y) < y needs y^ell < 1 on the minus branch.
    let sup = if sign == 1 {
        DomainSup::Infinite
    } else {
        DomainSup::Finite(Rational::from(1))
    };
    MapSpec::new(name, poly(&[0, 1]), poly(&den), sup)
}

/// Looks up a registered map by name.
pub fn builtin_map(name: &str) -> Result<MapSpec> {
    let one = || DomainSup::Finite(Rational::from(1));
    match name {
        "A" => MapSpec::new("A", poly(&[0, 1, -1]), poly(&[1]), one()),
        "B" => higher_map(1, 1),
        // Registered on (0, 1) for orbit purposes.
        "I" => higher_map(1, -1),
        "J" => MapSpec::new("J", poly(&[0, 1, 1]), poly(&[1, 2]), DomainSup::Infinite),
        "CUBIC_PLUS" => higher_map(2, 1),
        "CUBIC_MINUS" => higher_map(2, -1),
        "ORACLE" => MapSpec::new("ORACLE", poly(&[0, 1]), poly(&[1, 1]), DomainSup::Infinite),
        other => parse_higher_name(other)
            .and_then(|(ell, sign)| if ell >= 2 { higher_map(ell, sign).ok() } else { None })
            .ok_or_else(|| Error::UnknownMap(other.to_string())),
    }
}

fn parse_higher_name(name: &str) -> Option<(u32, i32)> {
    let inner = name.strip_prefix("HIGHER(")?.strip_suffix(')')?;
    let (ell, sign) = inner.split_once(',')?;
    let ell = ell.trim().parse().ok()?;
    let sign = match sign.trim() {
        "+" | "+1" | "1" => 1,
        "-" | "-1" => -1,
        _ => return None,
    };
    Some((ell, sign))
}

/// All maps the property suites iterate over.
pub fn all_builtins() -> Vec<MapSpec> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin_map(n).expect("registered"))
        .collect()
}

/// Parses a custom map such as `x*(1-x)`; a result equal to a registered map
/// takes that map's name and domain.
pub fn parse_map_expr(text: &str) -> Result<MapSpec> {
    let rf = parse::parse_rational_function(text)?;
    let custom = MapSpec::new("custom", rf.num, rf.den, DomainSup::Infinite)?;
    for b in all_builtins() {
        if b.numerator == custom.numerator && b.denominator == custom.denominator {
            return Ok(b);
        }
    }
    Ok(custom)
}

/// Parses a polynomial in `x` with rational coefficients, e.g. `1/2 + x + x^2`.
pub fn parse_polynomial(text: &str) -> Result<PolyQ> {
    let rf = parse::parse_rational_function(text)?;
    if rf.den.degree() != 0 {
        return Err(Error::InvalidArgument(format!("`{text}` is not a polynomial")));
    }
    Ok(rf.num.scale(&Rational::from(rf.den.coeff(0).recip_ref())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn polynomial_text() {
        let p = parse_polynomial("61/36 + 35/6*x + 15/2*x^2").unwrap();
        assert_eq!(p, PolyQ::from_fracs(&[(61, 36), (35, 6), (15, 2)]));
        assert!(parse_polynomial("1/x").is_err());
    }

    #[test]
    fn builtin_a_and_b() {
        let a = builtin_map("A").unwrap();
        assert_eq!(a.numerator(), &PolyQ::from_ints(&[0, 1, -1]));
        assert_eq!(a.denominator(), &PolyQ::one());
        assert_eq!(a.domain_sup(), &DomainSup::Finite(q(1, 1)));
        let b = builtin_map("B").unwrap();
        assert_eq!(b.numerator(), &PolyQ::from_ints(&[0, 1]));
        assert_eq!(b.denominator(), &PolyQ::from_ints(&[1, 1, 1]));
        assert_eq!(b.domain_sup(), &DomainSup::Infinite);
        assert_eq!(builtin_map("J").unwrap().domain_sup(), &DomainSup::Infinite);
        assert_eq!(builtin_map("ORACLE").unwrap().domain_sup(), &DomainSup::Infinite);
        assert_eq!(builtin_map("I").unwrap().domain_sup(), &DomainSup::Finite(q(1, 1)));
    }

    #[test]
    fn unknown_names() {
        assert_eq!(builtin_map("Z").unwrap_err(), Error::UnknownMap("Z".into()));
        assert!(builtin_map("HIGHER(1,+)").is_err());
        assert_eq!(builtin_map("HIGHER(3,-)").unwrap().denominator(), &PolyQ::from_ints(&[1, 1, 0, 0, -1]));
    }

    #[test]
    fn parses_registered_maps() {
        assert_eq!(parse_map_expr("x*(1-x)").unwrap(), builtin_map("A").unwrap());
        assert_eq!(parse_map_expr("x*(1-x)").unwrap().name(), "A");
        assert_eq!(parse_map_expr("x/(1+x)").unwrap().name(), "ORACLE");
        assert_eq!(parse_map_expr("2*x*(1+x)/(2+4*x)").unwrap().name(), "J");
    }

    #[test]
    fn rejects_invalid_maps() {
        assert!(matches!(parse_map_expr("x^2"), Err(Error::NotTangentToIdentity(_))));
        assert!(matches!(parse_map_expr("x/2"), Err(Error::NotTangentToIdentity(_))));
        assert!(matches!(parse_map_expr("1/x"), Err(Error::NotTangentToIdentity(_))));
        assert!(matches!(parse_map_expr("x + 1"), Err(Error::NotTangentToIdentity(_))));
        assert!(matches!(parse_map_expr("x - 2*x^2"), Err(Error::NotCanonical(_))));
        assert!(matches!(parse_map_expr("x/(1-1)"), Err(Error::DivisionByZeroPolynomial)));
        assert!(matches!(parse_map_expr("x*"), Err(Error::SyntaxError { .. })));
    }

    #[test]
    fn custom_map_is_reduced() {
        let m = parse_map_expr("(x - x^3)/(1 + x)").unwrap();
        assert_eq!(m.name(), "A");
        let c = parse_map_expr("x - x^2 + x^3").unwrap();
        assert_eq!(c.name(), "custom");
    }

    #[test]
    fn taylor_coefficients() {
        let a = builtin_map("A").unwrap();
        assert_eq!(a.taylor(3), vec![q(0, 1), q(1, 1), q(-1, 1), q(0, 1)]);
        // x/(1+x+x^2) = x(1-x)/(1-x^3)
        let b = builtin_map("B").unwrap();
        let expect: Vec<Rational> = [0, 1, -1, 0, 1, -1].iter().map(|&c| q(c, 1)).collect();
        assert_eq!(b.taylor(5), expect);
        let o = builtin_map("ORACLE").unwrap();
        let expect: Vec<Rational> = [0, 1, -1, 1, -1].iter().map(|&c| q(c, 1)).collect();
        assert_eq!(o.taylor(4), expect);
    }

    #[test]
    fn canonical_forms() {
        let c = |n: &str, j| builtin_map(n).unwrap().canonical_form(j).unwrap();
        assert_eq!(c("B", 3).coeffs(), &[q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(c("A", 4).coeffs(), &[q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(c("J", 4).coeffs(), &[q(-1, 1), q(1, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(c("I", 1).b1(), &q(-1, 1));
        assert_eq!(c("CUBIC_PLUS", 2).coeffs(), &[q(0, 1), q(1, 1)]);
        assert_eq!(c("CUBIC_MINUS", 1).b1(), &q(0, 1));
        assert_eq!(c("ORACLE", 3).coeffs(), &[q(0, 1), q(0, 1), q(0, 1)]);
        for m in all_builtins() {
            assert!(m.canonical_form(8).unwrap().verify(&m));
        }
    }

    #[test]
    fn exact_evaluation() {
        assert_eq!(builtin_map("A").unwrap().eval_exact(&q(1, 2)).unwrap(), q(1, 4));
        assert_eq!(builtin_map("B").unwrap().eval_exact(&q(1, 1)).unwrap(), q(1, 3));
        assert_eq!(builtin_map("I").unwrap().eval_exact(&q(1, 2)).unwrap(), q(2, 5));
        assert_eq!(
            builtin_map("J").unwrap().eval_exact(&q(-1, 2)),
            Err(Error::PoleHit("-1/2".into()))
        );
    }

    #[test]
    fn real_evaluation() {
        let a = builtin_map("A").unwrap();
        let r = a.eval_real(&Float::with_val(128, 0.5), 128).unwrap();
        assert_eq!(r, 0.25);
        let o = builtin_map("ORACLE").unwrap();
        assert_eq!(o.eval_real(&Float::with_val(128, 1), 128).unwrap(), 0.5);
        let b = builtin_map("B").unwrap();
        let r = b.eval_real(&Float::with_val(128, 1), 128).unwrap();
        assert_eq!(r, Float::with_val(128, Rational::from((1, 3))));
    }

    #[test]
    fn evaluator_matches_eval_real() {
        let j = builtin_map("J").unwrap();
        let mut ev = j.real_evaluator(200);
        let mut x = Float::with_val(200, 3);
        ev.apply(&mut x);
        assert_eq!(x, Float::with_val(200, Rational::from((12, 7))));
    }

    #[test]
    fn render_round_trips() {
        for m in all_builtins() {
            let text = m.render();
            assert_eq!(parse_map_expr(&text).unwrap(), m, "{text}");
        }
        assert_eq!(builtin_map("B").unwrap().render(), "(x)/(1+x+x^2)");
    }
}
