//! Exact rational orbits and the integer sequences hidden in them.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::maps::{builtin_map, MapSpec};

/// Default cap on exact orbit length; term sizes double every step.
pub const ORBIT_LIMIT: usize = 25;

/// Number of terms listed in the published sequences.
pub const PRINTED_TERMS: usize = 6;

/// Exact iterates `x0, f(x0), ...` in lowest terms.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalOrbit {
    map: MapSpec,
    x0: Rational,
    terms: Vec<Rational>,
}

impl RationalOrbit {
    pub fn map(&self) -> &MapSpec {
        &self.map
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn numerators(&self) -> Vec<Integer> {
        self.terms.iter().map(|t| t.numer().clone()).collect()
    }

    pub fn denominators(&self) -> Vec<Integer> {
        self.terms.iter().map(|t| t.denom().clone()).collect()
    }

    /// One `p/q` per line.
    pub fn to_lines(&self) -> String {
        rationals_to_lines(&self.terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        rationals_to_json(&self.terms)
    }
}

pub fn rationals_to_lines(terms: &[Rational]) -> String {
    terms.iter().map(|t| format!("{}/{}\n", t.numer(), t.denom())).collect()
}

pub fn rationals_to_json(terms: &[Rational]) -> serde_json::Value {
    serde_json::Value::Array(
        terms
            .iter()
            .map(|t| serde_json::json!({"num": t.numer().to_string(), "den": t.denom().to_string()}))
            .collect(),
    )
}

/// The orbit `x_0..x_n` with the default length cap.
pub fn orbit_exact(map: &MapSpec, x0: &Rational, n: usize) -> Result<RationalOrbit> {
    orbit_exact_with_limit(map, x0, n, ORBIT_LIMIT)
}

pub fn orbit_exact_with_limit(map: &MapSpec, x0: &Rational, n: usize, limit: usize) -> Result<RationalOrbit> {
    if n > limit {
        return Err(Error::SizeLimit { requested: n, limit });
    }
    let inside = |x: &Rational| x.cmp0().is_gt() && map.domain_sup().contains(x);
    if !inside(x0) {
        return Err(Error::OrbitEscaped { index: 0 });
    }
    let mut terms = vec![x0.clone()];
    for i in 1..=n {
        let next = map.eval_exact(&terms[i - 1])?;
        if !inside(&next) {
            return Err(Error::OrbitEscaped { index: i as u64 });
        }
        terms.push(next);
    }
    Ok(RationalOrbit { map: map.clone(), x0: x0.clone(), terms })
}

/// `t_1 = t1` and each further `t_m` chosen so that prefix sum equals prefix product.
pub fn t_sequence(t1: &Rational, n: usize) -> Result<Vec<Rational>> {
    let mut terms = Vec::with_capacity(n);
    if n == 0 {
        return Ok(terms);
    }
    terms.push(t1.clone());
    let mut sum = t1.clone();
    let mut prod = t1.clone();
    for m in 2..=n {
        // sum + t = prod * t
        let d = Rational::from(&prod - 1u32);
        if d.cmp0().is_eq() {
            return Err(Error::DegenerateStep(m));
        }
        let t = Rational::from(&sum / &d);
        sum += &t;
        prod *= &t;
        terms.push(t);
    }
    Ok(terms)
}

/// `u_{n+1} = u_n^2 + u_n^3/u_{n-1}^2 - u_n u_{n-1}^2`.
pub fn u_sequence(u1: &Integer, u2: &Integer, n: usize) -> Result<Vec<Integer>> {
    second_order(u1, u2, n, |a, b| {
        let a2 = Integer::from(a.square_ref());
        let num = Integer::from(b.square_ref()) * b;
        let (q, r) = num.div_rem(a2.clone());
        if r.cmp0().is_ne() {
            return None;
        }
        Some(Integer::from(b.square_ref()) + q - Integer::from(b * &a2))
    })
}

/// `v_{n+1} = v_n^2 + v_n^3/(2 v_{n-1}^2) - v_n v_{n-1}^2 / 2`.
pub fn v_sequence(v1: &Integer, v2: &Integer, n: usize) -> Result<Vec<Integer>> {
    second_order(v1, v2, n, |a, b| {
        let a2 = Integer::from(a.square_ref());
        let b2 = Integer::from(b.square_ref());
        let num = Integer::from(&b2 * &a2) * 2u32 + Integer::from(&b2 * b)
            - Integer::from(b * &a2) * &a2;
        let den = a2 * 2u32;
        let (q, r) = num.div_rem(den);
        r.cmp0().is_eq().then_some(q)
    })
}

fn second_order(
    s1: &Integer,
    s2: &Integer,
    n: usize,
    step: impl Fn(&Integer, &Integer) -> Option<Integer>,
) -> Result<Vec<Integer>> {
    if s1.cmp0().is_eq() {
        return Err(Error::InvalidArgument("first seed must be nonzero".into()));
    }
    let mut terms: Vec<Integer> = [s1.clone(), s2.clone()].into_iter().take(n).collect();
    while terms.len() < n {
        let len = terms.len();
        let next = step(&terms[len - 2], &terms[len - 1]).ok_or(Error::NonIntegralStep(len + 1))?;
        terms.push(next);
    }
    Ok(terms)
}

/// Which pair of orbits a pattern report compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    AB,
    IJ,
}

impl Pair {
    pub fn maps(self) -> (&'static str, &'static str) {
        match self {
            Pair::AB => ("A", "B"),
            Pair::IJ => ("I", "J"),
        }
    }

    /// The seed pairs with published sequences.
    pub fn printed_seeds(self) -> [(Rational, Rational); 2] {
        let r = |n: i32, d: i32| Rational::from((n, d));
        match self {
            Pair::AB => [(r(1, 2), r(1, 1)), (r(1, 3), r(1, 2))],
            Pair::IJ => [(r(1, 2), r(1, 1)), (r(1, 3), r(1, 2))],
        }
    }
}

impl std::str::FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AB" => Ok(Pair::AB),
            "IJ" => Ok(Pair::IJ),
            _ => Err(Error::InvalidArgument(format!("unknown pair `{s}`"))),
        }
    }
}

/// Outcome of one pattern over the printed terms, and over the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Check {
    pub printed: bool,
    /// `None` when no terms lie beyond the printed range.
    pub beyond: Option<bool>,
}

impl Check {
    fn from_flags(flags: &[bool]) -> Check {
        let cut = flags.len().min(PRINTED_TERMS);
        Check {
            printed: flags[..cut].iter().all(|&b| b),
            beyond: (flags.len() > cut).then(|| flags[cut..].iter().all(|&b| b)),
        }
    }

    /// `pass`/`fail` on printed terms, then the conjecture label for the rest.
    pub fn label(&self) -> String {
        let head = if self.printed { "pass" } else { "fail" };
        match self.beyond {
            None => head.to_string(),
            Some(true) => format!("{head}; conjecture-consistent beyond term {PRINTED_TERMS}"),
            Some(false) => format!("{head}; conjecture-inconsistent beyond term {PRINTED_TERMS}"),
        }
    }

    pub fn holds(&self) -> bool {
        self.printed && self.beyond != Some(false)
    }

    fn to_json(self) -> serde_json::Value {
        serde_json::json!({"printed": self.printed, "beyond": self.beyond, "label": self.label()})
    }
}

/// Numerator/denominator relations between two paired orbits.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternReport {
    pub pair: Pair,
    pub n: usize,
    pub first: RationalOrbit,
    pub second: RationalOrbit,
    pub numerators_match: Check,
    pub a_denominators_power: Option<Check>,
    pub b_numerators_are_cumsum_denominators: Option<Check>,
    pub t_ratios_match: Option<Check>,
    pub i_denominators_are_u_ratios: Option<Check>,
    pub j_denominators_follow_v: Option<Check>,
    pub numerators_follow_u: Option<Check>,
}

impl PatternReport {
    fn checks(&self) -> Vec<(&'static str, Check)> {
        let mut out = vec![("numerators_match", self.numerators_match)];
        let named = [
            ("A_denominators_power", self.a_denominators_power),
            ("B_numerators_are_cumsum_denominators", self.b_numerators_are_cumsum_denominators),
            ("t_ratios_match", self.t_ratios_match),
            ("I_denominators_are_u_ratios", self.i_denominators_are_u_ratios),
            ("J_denominators_follow_v", self.j_denominators_follow_v),
            ("numerators_follow_u", self.numerators_follow_u),
        ];
        out.extend(named.into_iter().filter_map(|(k, c)| c.map(|c| (k, c))));
        out
    }

    /// Every check passes on the printed terms and none fails beyond them.
    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.holds())
    }

    pub fn render(&self) -> String {
        let (a, b) = self.pair.maps();
        let mut out = format!(
            "{a} from {} vs {b} from {}, {} terms\n",
            self.first.x0(),
            self.second.x0(),
            self.n
        );
        for (name, c) in self.checks() {
            out.push_str(&format!("{name}: {}\n", c.label()));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("pair".into(), format!("{:?}", self.pair).into());
        obj.insert("n".into(), self.n.into());
        for (name, c) in self.checks() {
            obj.insert(name.into(), c.to_json());
        }
        serde_json::Value::Object(obj)
    }
}

/// Checks the published numerator/denominator patterns on the first `n` terms of the two orbits.
pub fn check_patterns(pair: Pair, first_x0: &Rational, second_x0: &Rational, n: usize) -> Result<PatternReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 terms".into()));
    }
    let (fa, fb) = pair.maps();
    // One extra term feeds the ratio check on the last printed denominator.
    let first = orbit_exact(&builtin_map(fa)?, first_x0, n)?;
    let second = orbit_exact(&builtin_map(fb)?, second_x0, n - 1)?;
    let nums1 = first.numerators();
    let dens1 = first.denominators();
    let nums2 = second.numerators();
    let dens2 = second.denominators();
    let numerators_match = Check::from_flags(&(0..n).map(|i| nums1[i] == nums2[i]).collect::<Vec<_>>());
    let mut report = PatternReport {
        pair,
        n,
        first: RationalOrbit { terms: first.terms[..n].to_vec(), ..first.clone() },
        second: second.clone(),
        numerators_match,
        a_denominators_power: None,
        b_numerators_are_cumsum_denominators: None,
        t_ratios_match: None,
        i_denominators_are_u_ratios: None,
        j_denominators_follow_v: None,
        numerators_follow_u: None,
    };
    match pair {
        Pair::AB => {
            let base = dens1[0].clone();
            let power = (0..n)
                .map(|i| dens1[i] == Integer::from(rug::ops::Pow::pow(&base, 1u32 << i)))
                .collect::<Vec<_>>();
            report.a_denominators_power = Some(Check::from_flags(&power));
            let t = t_sequence(&Rational::from(&base), n + 1)?;
            let mut sum = Rational::new();
            let cumsum = (0..n)
                .map(|i| {
                    sum += &t[i];
                    *sum.denom() == nums2[i]
                })
                .collect::<Vec<_>>();
            report.b_numerators_are_cumsum_denominators = Some(Check::from_flags(&cumsum));
            let ratios = (0..n)
                .map(|i| t[i + 1] == Rational::from((dens1[i].clone(), dens2[i].clone())))
                .collect::<Vec<_>>();
            report.t_ratios_match = Some(Check::from_flags(&ratios));
        }
        Pair::IJ => {
            let ratios = (0..n)
                .map(|i| {
                    let (q, r) = Integer::from(&nums1[i + 1]).div_rem(nums1[i].clone());
                    r.cmp0().is_eq() && q == dens1[i]
                })
                .collect::<Vec<_>>();
            report.i_denominators_are_u_ratios = Some(Check::from_flags(&ratios));
            let v = v_sequence(&dens2[0], &dens2[1], n);
            report.j_denominators_follow_v = Some(Check::from_flags(&match v {
                Ok(v) => (0..n).map(|i| v[i] == dens2[i]).collect::<Vec<_>>(),
                Err(Error::NonIntegralStep(at)) => (0..n).map(|i| i + 1 < at).collect(),
                Err(e) => return Err(e),
            }));
            let u = u_sequence(&nums1[0], &nums1[1], n);
            report.numerators_follow_u = Some(Check::from_flags(&match u {
                Ok(u) => (0..n).map(|i| u[i] == nums1[i]).collect::<Vec<_>>(),
                Err(Error::NonIntegralStep(at)) => (0..n).map(|i| i + 1 < at).collect(),
                Err(e) => return Err(e),
            }));
        }
    }
    Ok(report)
}

/// Direction of the `x -> x/(1+x)` reparametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reparam {
    BToA,
    JToI,
}

impl Reparam {
    pub fn maps(self) -> (&'static str, &'static str) {
        match self {
            Reparam::BToA => ("B", "A"),
            Reparam::JToI => ("J", "I"),
        }
    }
}

impl std::str::FromStr for Reparam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B->A" | "BA" | "B2A" => Ok(Reparam::BToA),
            "J->I" | "JI" | "J2I" => Ok(Reparam::JToI),
            _ => Err(Error::InvalidArgument(format!("unknown direction `{s}`"))),
        }
    }
}

/// Maps each term to `x/(1+x)` and checks the result is an orbit of the target map.
pub fn reparametrize(orbit: &RationalOrbit, direction: Reparam) -> Result<RationalOrbit> {
    let (src, dst) = direction.maps();
    let source = builtin_map(src)?;
    if orbit.map != source {
        return Err(Error::InvalidArgument(format!("orbit is not a {src}-orbit")));
    }
    let target = builtin_map(dst)?;
    let terms: Vec<Rational> = orbit
        .terms
        .iter()
        .map(|x| {
            if x.cmp0().is_le() {
                return Err(Error::InvalidArgument("orbit terms must be positive".into()));
            }
            Ok(x / Rational::from(x + 1u32))
        })
        .collect::<Result<_>>()?;
    for i in 1..terms.len() {
        if target.eval_exact(&terms[i - 1])? != terms[i] {
            return Err(Error::ReparametrizationFailed(i));
        }
    }
    Ok(RationalOrbit { map: target, x0: terms[0].clone(), terms })
}
