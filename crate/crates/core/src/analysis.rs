//! Shape studies of Abel solutions: identities, convexity scans, critical points, grids.

use std::fmt;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::constants::{ConstantSolver, SolveParams};
use crate::error::{Error, Result};
use crate::logseries::DEFAULT_K;
use crate::maps::{builtin_map, MapSpec};
use crate::numeric::{agreeing_digits, rational_decimal, truncate_decimal};
use crate::orbits::Pair;

/// The golden mean at `precision` bits.
pub fn phi(precision: u32) -> Float {
    (Float::with_val(precision, 5).sqrt() + 1u32) / 2u32
}

/// `phi^(1/3) - phi^(-1/3)`, the inflection point of `x/(1+x-x^2)`.
pub fn raw_inflection_target(precision: u32) -> Float {
    let c = phi(precision).cbrt();
    let inv = Float::with_val(precision, c.recip_ref());
    c - inv
}

/// A real function sampled at exact rational points.
pub trait ScalarFunction: Sync {
    fn eval(&self, x: &Rational) -> Result<Float>;

    /// Decimal digits the values carry.
    fn digits(&self) -> u32;
}

/// The Abel solution `x -> C(x)` of a map.
pub struct AbelFunction {
    solver: ConstantSolver,
    digits: u32,
}

impl AbelFunction {
    pub fn new(map: &MapSpec, digits: u32) -> Result<Self> {
        Ok(AbelFunction { solver: ConstantSolver::new(map, DEFAULT_K)?, digits })
    }

    pub fn map(&self) -> &MapSpec {
        self.solver.map()
    }
}

impl ScalarFunction for AbelFunction {
    fn eval(&self, x: &Rational) -> Result<Float> {
        Ok(self.solver.estimate(x, self.digits)?.value)
    }

    fn digits(&self) -> u32 {
        self.digits
    }
}

/// The map `f` itself, evaluated exactly and then rounded.
pub struct RawMap {
    map: MapSpec,
    digits: u32,
}

impl RawMap {
    pub fn new(map: &MapSpec, digits: u32) -> Self {
        RawMap { map: map.clone(), digits }
    }
}

impl ScalarFunction for RawMap {
    fn eval(&self, x: &Rational) -> Result<Float> {
        let v = self.map.eval_exact(x)?;
        Ok(Float::with_val(SolveParams::precision_for(self.digits), v))
    }

    fn digits(&self) -> u32 {
        self.digits
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convexity {
    Convex,
    Concave,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    DecreasingThenIncreasing,
    IncreasingThenDecreasing,
    Mixed,
}

/// Sign pattern of first and second differences on a uniform grid.
#[derive(Clone, Debug)]
pub struct ShapeReport {
    pub abscissae: Vec<Rational>,
    pub values: Vec<Float>,
    pub convexity: Convexity,
    pub monotonicity: Monotonicity,
    /// Grid point where the first differences change sign, if exactly once.
    pub turn: Option<Rational>,
}

impl ShapeReport {
    pub fn render(&self) -> String {
        let mut out = format!("convexity: {:?}\nmonotonicity: {:?}\n", self.convexity, self.monotonicity);
        if let Some(t) = &self.turn {
            out.push_str(&format!("turn: {}\n", rational_decimal(t, 20)));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "convexity": format!("{:?}", self.convexity),
            "monotonicity": format!("{:?}", self.monotonicity),
            "turn": self.turn.as_ref().map(crate::poly::rational_pq),
        })
    }
}

/// `points` equally spaced rationals from `a` to `b` inclusive.
pub fn uniform_grid(a: &Rational, b: &Rational, points: usize) -> Result<Vec<Rational>> {
    if points < 2 || a >= b {
        return Err(Error::InvalidArgument("need a < b and at least 2 points".into()));
    }
    let step = Rational::from(b - a) / (points as u32 - 1);
    Ok((0..points).map(|i| Rational::from(&step * i as u32) + a).collect())
}

fn signs(v: &[Float]) -> Vec<i32> {
    v.iter()
        .map(|d| match d.cmp0() {
            Some(std::cmp::Ordering::Greater) => 1,
            Some(std::cmp::Ordering::Less) => -1,
            _ => 0,
        })
        .collect()
}

fn evaluate_all(f: &dyn ScalarFunction, xs: &[Rational]) -> Result<Vec<Float>> {
    xs.par_iter().map(|x| f.eval(x)).collect()
}

/// Classifies the shape of `f` on `[a, b]`.
pub fn scan_shape(f: &dyn ScalarFunction, a: &Rational, b: &Rational, points: usize) -> Result<ShapeReport> {
    if points < 5 {
        return Err(Error::InvalidArgument("scan needs at least 5 points".into()));
    }
    let xs = uniform_grid(a, b, points)?;
    let values = evaluate_all(f, &xs)?;
    let first: Vec<Float> = values.windows(2).map(|w| Float::with_val(w[0].prec(), &w[1] - &w[0])).collect();
    let second: Vec<Float> = first.windows(2).map(|w| Float::with_val(w[0].prec(), &w[1] - &w[0])).collect();
    let s2 = signs(&second);
    let convexity = if s2.iter().all(|&s| s > 0) {
        Convexity::Convex
    } else if s2.iter().all(|&s| s < 0) {
        Convexity::Concave
    } else {
        Convexity::Mixed
    };
    let s1 = signs(&first);
    let changes: Vec<usize> = (1..s1.len()).filter(|&i| s1[i] != s1[i - 1]).collect();
    let (monotonicity, turn) = match (changes.as_slice(), s1.contains(&0)) {
        (_, true) => (Monotonicity::Mixed, None),
        ([], _) if s1[0] > 0 => (Monotonicity::Increasing, None),
        ([], _) => (Monotonicity::Decreasing, None),
        ([i], _) if s1[0] < 0 => (Monotonicity::DecreasingThenIncreasing, Some(xs[*i].clone())),
        ([i], _) => (Monotonicity::IncreasingThenDecreasing, Some(xs[*i].clone())),
        _ => (Monotonicity::Mixed, None),
    };
    Ok(ShapeReport { abscissae: xs, values, convexity, monotonicity, turn })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    Minimum,
    Inflection,
}

/// A located critical point with its bracketing interval.
#[derive(Clone, Debug)]
pub struct CriticalPointResult {
    pub location: Rational,
    pub value: Float,
    pub kind: CriticalKind,
    pub bracket: (Rational, Rational),
    /// Decimal places resolved in the location.
    pub digits: u32,
    pub value_digits: u32,
}

impl CriticalPointResult {
    pub fn location_float(&self, precision: u32) -> Float {
        Float::with_val(precision, &self.location)
    }

    pub fn render(&self) -> String {
        let d = self.digits + 1;
        format!(
            "kind: {:?}\nlocation: {}\nbracket: [{}, {}]\nvalue: {}\n",
            self.kind,
            rational_decimal(&self.location, d),
            rational_decimal(&self.bracket.0, d),
            rational_decimal(&self.bracket.1, d),
            truncate_decimal(&self.value, self.value_digits),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.digits + 1;
        serde_json::json!({
            "kind": format!("{:?}", self.kind).to_lowercase(),
            "location": rational_decimal(&self.location, d),
            "bracket": [rational_decimal(&self.bracket.0, d), rational_decimal(&self.bracket.1, d)],
            "value": truncate_decimal(&self.value, self.value_digits),
            "digits": self.digits,
        })
    }
}

fn step_size(digits: u32) -> Rational {
    let e = digits.div_ceil(3);
    Rational::from((Integer::from(1), Integer::from(Integer::u_pow_u(10, e))))
}

fn difference(f: &dyn ScalarFunction, x: &Rational, h: &Rational, order: u32) -> Result<Float> {
    let lo = Rational::from(x - h);
    let hi = Rational::from(x + h);
    if order == 1 {
        let (a, b) = rayon::join(|| f.eval(&lo), || f.eval(&hi));
        Ok(b? - a?)
    } else {
        let (a, (m, b)) = rayon::join(|| f.eval(&lo), || rayon::join(|| f.eval(x), || f.eval(&hi)));
        let m = m?;
        Ok(b? + a? - m.clone() - m)
    }
}

fn bisect(f: &dyn ScalarFunction, a: &Rational, b: &Rational, order: u32, kind: CriticalKind) -> Result<CriticalPointResult> {
    if a >= b {
        return Err(Error::InvalidArgument("bracket must satisfy a < b".into()));
    }
    let digits = f.digits();
    let h = step_size(digits);
    let local = (digits / 2).min(12);
    let width = Rational::from((Integer::from(1), Integer::from(Integer::u_pow_u(10, local))));
    let sign = |x: &Rational| -> Result<i32> {
        Ok(difference(f, x, &h, order)?.cmp0().map_or(0, |o| o as i32))
    };
    let (mut lo, mut hi) = (a.clone(), b.clone());
    let s_lo = sign(&lo)?;
    let s_hi = sign(&hi)?;
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(Error::NoSignChange);
    }
    while Rational::from(&hi - &lo) > width {
        let mid = Rational::from(&lo + &hi) / 2u32;
        let s = sign(&mid)?;
        if s == 0 {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let location = Rational::from(&lo + &hi) / 2u32;
    let value = f.eval(&location)?;
    Ok(CriticalPointResult { location, value, kind, bracket: (lo, hi), digits: local, value_digits: digits })
}

/// Bisection on the first central difference.
pub fn find_minimum(f: &dyn ScalarFunction, a: &Rational, b: &Rational) -> Result<CriticalPointResult> {
    bisect(f, a, b, 1, CriticalKind::Minimum)
}

/// Bisection on the second central difference.
pub fn find_inflection(f: &dyn ScalarFunction, a: &Rational, b: &Rational) -> Result<CriticalPointResult> {
    bisect(f, a, b, 2, CriticalKind::Inflection)
}

/// Outcome of one grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointStatus {
    Ok,
    Escaped,
    Failed,
}

impl fmt::Display for PointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointStatus::Ok => "ok",
            PointStatus::Escaped => "escaped",
            PointStatus::Failed => "failed",
        })
    }
}

/// Abel constants on a uniform grid.
#[derive(Clone, Debug)]
pub struct GridSample {
    pub map: MapSpec,
    pub abscissae: Vec<Rational>,
    pub values: Vec<Option<Float>>,
    pub status: Vec<PointStatus>,
    pub agreed: Vec<Option<u32>>,
    pub digits: u32,
}

impl GridSample {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value,status,digits\n");
        for i in 0..self.abscissae.len() {
            let x = rational_decimal(&self.abscissae[i], self.digits);
            let v = self.values[i].as_ref().map(|v| truncate_decimal(v, self.digits)).unwrap_or_default();
            let d = self.agreed[i].map(|d| d.to_string()).unwrap_or_default();
            out.push_str(&format!("{x},{v},{},{d}\n", self.status[i]));
        }
        out
    }
}

/// Samples the Abel solution of `map` on `points` grid points; failures are recorded per point.
pub fn grid_csv(map: &MapSpec, a: &Rational, b: &Rational, points: usize, digits: u32) -> Result<GridSample> {
    let xs = uniform_grid(a, b, points)?;
    let solver = ConstantSolver::new(map, DEFAULT_K)?;
    let results: Vec<_> = xs.par_iter().map(|x| solver.estimate(x, digits)).collect();
    let mut sample = GridSample {
        map: map.clone(),
        abscissae: xs,
        values: Vec::new(),
        status: Vec::new(),
        agreed: Vec::new(),
        digits,
    };
    for r in results {
        match r {
            Ok(est) => {
                sample.agreed.push(Some(est.digits_agreed));
                sample.values.push(Some(est.value));
                sample.status.push(PointStatus::Ok);
            }
            Err(e) => {
                sample.agreed.push(None);
                sample.values.push(None);
                sample.status.push(match e {
                    Error::OrbitEscaped { .. } => PointStatus::Escaped,
                    _ => PointStatus::Failed,
                });
            }
        }
    }
    Ok(sample)
}

/// Result of comparing the two sides of a conjectured identity.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub pair: Pair,
    pub x: Rational,
    pub left: Float,
    pub right: Float,
    pub agreed: u32,
    pub digits: u32,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.agreed + 3 >= self.digits
    }

    pub fn render(&self) -> String {
        let (a, b) = self.pair.maps();
        format!(
            "{a}(x/(1+x)) = {}\n{b}(x) + 1   = {}\nagreeing digits: {}\n{}\n",
            truncate_decimal(&self.left, self.digits),
            truncate_decimal(&self.right, self.digits),
            self.agreed,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": format!("{:?}", self.pair),
            "x": crate::poly::rational_pq(&self.x),
            "left": truncate_decimal(&self.left, self.digits),
            "right": truncate_decimal(&self.right, self.digits),
            "digits": self.digits,
            "digits_agreed": self.agreed,
            "passed": self.passed(),
        })
    }
}

/// Checks `first(x/(1+x)) = second(x) + 1` for the pair's maps.
pub fn verify_identity(pair: Pair, x: &Rational, digits: u32) -> Result<IdentityReport> {
    if x.cmp0().is_le() {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let (fa, fb) = pair.maps();
    let shifted = x / Rational::from(x + 1u32);
    let (left, right) = rayon::join(
        || crate::constants::estimate_constant(&builtin_map(fa)?, &shifted, digits),
        || crate::constants::estimate_constant(&builtin_map(fb)?, x, digits),
    );
    let left = left?.value;
    let right = right?.value + 1u32;
    let agreed = agreeing_digits(&left, &right);
    Ok(IdentityReport { pair, x: x.clone(), left, right, agreed, digits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn grid_is_uniform_and_exact() {
        let g = uniform_grid(&q(1, 10), &q(2, 1), 5).unwrap();
        assert_eq!(g.first().unwrap(), &q(1, 10));
        assert_eq!(g.last().unwrap(), &q(2, 1));
        assert_eq!(g[1], q(23, 40));
    }

    #[test]
    fn oracle_grid_is_reciprocal() {
        let s = grid_csv(&builtin_map("ORACLE").unwrap(), &q(1, 10), &q(2, 1), 5, 20).unwrap();
        for (x, v) in s.abscissae.iter().zip(&s.values) {
            let exact = Float::with_val(200, Rational::from(x.recip_ref()));
            assert!(agreeing_digits(v.as_ref().unwrap(), &exact) >= 20);
        }
        assert!(s.to_csv().starts_with("x,value,status,digits\n0.1,"));
    }

    #[test]
    fn escaped_grid_points() {
        let s = grid_csv(&builtin_map("I").unwrap(), &q(1, 2), &q(3, 2), 3, 10).unwrap();
        assert_eq!(s.status, vec![PointStatus::Ok, PointStatus::Escaped, PointStatus::Escaped]);
        assert!(s.to_csv().contains("1.5,,escaped,\n"));
    }

    #[test]
    fn raw_map_inflection() {
        let f = RawMap::new(&builtin_map("I").unwrap(), 30);
        let r = find_inflection(&f, &q(1, 4), &q(1, 2)).unwrap();
        let target = raw_inflection_target(128);
        let err = Float::with_val(128, r.location_float(128) - target).abs();
        assert!(err < 1e-10);
    }

    #[test]
    fn no_sign_change() {
        let f = RawMap::new(&builtin_map("ORACLE").unwrap(), 20);
        assert_eq!(find_minimum(&f, &q(1, 2), &q(1, 1)).unwrap_err(), Error::NoSignChange);
    }
}
