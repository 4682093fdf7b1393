//! Abel constants `C(x0)` by orbit iteration and series inversion.
//!
//! Iterate to `x_N`, set `x_N` equal to the truncated expansion and solve for
//! `X`; then `C = -b1 ln N - X`. The estimate is repeated at `2N` on the same
//! orbit, and the number of agreeing digits is the reported accuracy.

use std::cmp::Ordering;
use std::sync::OnceLock;

use rug::ops::PowAssign;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::logseries::{additive_wseries, derive_expansion, eval_with_derivative, Expansion, WSeries};
use crate::maps::{higher_map, DomainSup, MapSpec, RealEvaluator};
use crate::numeric::{agreeing_digits, digits_to_bits, truncate_decimal};

/// A-priori bound on `|C|` used when choosing `N`.
pub const C_BOUND: f64 = 10.0;

/// Largest `N` considered by [`select_parameters`].
pub const MAX_N: u64 = 1 << 40;

const MAX_NEWTON: u32 = 200;

/// Parameters of one constant estimation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveParams {
    pub digits: u32,
    pub k: usize,
    pub n: u64,
    pub precision: u32,
}

impl SolveParams {
    /// Working precision for `digits` decimal places.
    pub fn precision_for(digits: u32) -> u32 {
        digits_to_bits(digits + 40)
    }
}

/// Smallest power of two `N >= 16` with
/// `(ln N + C_BOUND + 2)^k / N^(k+1) < 10^-(D+5)`.
pub fn select_parameters(digits: u32, k: usize) -> Result<SolveParams> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    let goal = -((digits + 5) as f64) * std::f64::consts::LN_10;
    let mut n: u64 = 16;
    while n <= MAX_N {
        let ln_n = (n as f64).ln();
        let lhs = k as f64 * (ln_n + C_BOUND + 2.0).ln() - (k as f64 + 1.0) * ln_n;
        if lhs < goal {
            return Ok(SolveParams { digits, k, n, precision: SolveParams::precision_for(digits) });
        }
        n *= 2;
    }
    Err(Error::InfeasibleParameters)
}

/// A floating-point orbit that can be advanced in stages.
pub struct RealOrbit {
    eval: RealEvaluator,
    domain: DomainSup,
    x: Float,
    index: u64,
}

impl RealOrbit {
    pub fn new(map: &MapSpec, x0: &Rational, precision: u32) -> Result<Self> {
        if x0.cmp0().is_le() || !map.domain_sup().contains(x0) {
            return Err(Error::OrbitEscaped { index: 0 });
        }
        Ok(RealOrbit {
            eval: map.real_evaluator(precision),
            domain: map.domain_sup().clone(),
            x: Float::with_val(precision, x0),
            index: 0,
        })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn current(&self) -> &Float {
        &self.x
    }

    /// Iterates until the index reaches `n`.
    pub fn advance_to(&mut self, n: u64) -> Result<&Float> {
        let mut prev = self.x.clone();
        while self.index < n {
            match self.eval.apply(&mut self.x) {
                Ordering::Greater => {}
                Ordering::Equal => {
                    return Err(Error::PoleHit(format!("at iterate {}", self.index)));
                }
                Ordering::Less => return Err(Error::OrbitEscaped { index: self.index + 1 }),
            }
            self.index += 1;
            if self.x.cmp0() != Some(Ordering::Greater)
                || !self.domain.contains_float(&self.x)
                || self.x >= prev
            {
                return Err(Error::OrbitEscaped { index: self.index });
            }
            prev.clone_from(&self.x);
        }
        Ok(&self.x)
    }
}

/// `x_N` of the orbit of `x0`, at `precision` bits.
pub fn iterate_real(map: &MapSpec, x0: &Rational, n: u64, precision: u32) -> Result<Float> {
    let mut orbit = RealOrbit::new(map, x0, precision)?;
    Ok(orbit.advance_to(n)?.clone())
}

/// Root `X*` of `sum P_m(X)/N^(m+1) = target`, Newton from `(target - 1/N) N^2`.
pub fn solve_for_x(exp: &Expansion, n: u64, target: &Float, precision: u32) -> Result<Float> {
    if exp.k() < 2 {
        return Err(Error::InvalidArgument("expansion needs k >= 2".into()));
    }
    if target.cmp0() != Some(Ordering::Greater) {
        return Err(Error::InvalidArgument("target must be positive".into()));
    }
    let n_int = Integer::from(n);
    let nf = Float::with_val(precision, n);
    let mut x = Float::with_val(precision, target - Float::with_val(precision, nf.recip_ref()));
    x *= &nf;
    x *= &nf;
    let cap = Float::with_val(precision, x.abs_ref()) + 1u32;
    // The expansion is only meaningful while X/N is small.
    if Float::with_val(precision, x.abs_ref()) * 2u32 >= nf {
        return Err(Error::AmbiguousRoot(format!("initial guess {} is out of series range", x.to_f64())));
    }
    let tol_exp = -(precision as i32 - 64);
    let g_tol = Float::with_val(precision, target) << tol_exp;
    for _ in 0..MAX_NEWTON {
        let (val, der) = eval_with_derivative(exp, &n_int, &x, precision);
        let g = val - target;
        if Float::with_val(precision, g.abs_ref()) <= g_tol {
            return Ok(x);
        }
        if der.is_zero() {
            return Err(Error::AmbiguousRoot("vanishing derivative".into()));
        }
        let step = g / der;
        if Float::with_val(precision, step.abs_ref()) > cap {
            return Err(Error::AmbiguousRoot(format!("Newton step {} too large", step.to_f64())));
        }
        x -= &step;
        let scale = Float::with_val(precision, x.abs_ref()) + 1u32;
        if Float::with_val(precision, step.abs_ref()) <= scale << tol_exp {
            return Ok(x);
        }
    }
    Err(Error::NewtonDiverged(MAX_NEWTON))
}

/// A computed Abel constant.
#[derive(Clone, Debug)]
pub struct ConstantEstimate {
    pub value: Float,
    pub digits_agreed: u32,
    pub params: SolveParams,
    pub map: MapSpec,
    pub x0: Rational,
}

impl ConstantEstimate {
    /// The value truncated to the requested digits.
    pub fn value_string(&self) -> String {
        truncate_decimal(&self.value, self.params.digits)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "map": self.map.name(),
            "x0": crate::poly::rational_pq(&self.x0),
            "digits": self.params.digits,
            "value": self.value_string(),
            "N": self.params.n,
            "k": self.params.k,
            "precision_bits": self.params.precision,
            "digits_agreed": self.digits_agreed,
        })
    }
}

/// Estimates constants for one map, reusing derived expansions.
pub struct ConstantSolver {
    map: MapSpec,
    b1: Rational,
    k: usize,
    exp: Expansion,
    exp_retry: OnceLock<Expansion>,
}

impl ConstantSolver {
    pub fn new(map: &MapSpec, k: usize) -> Result<Self> {
        let exp = derive_expansion(map, k)?;
        Ok(ConstantSolver { map: map.clone(), b1: exp.b1().clone(), k, exp, exp_retry: OnceLock::new() })
    }

    pub fn map(&self) -> &MapSpec {
        &self.map
    }

    fn constant_at(&self, exp: &Expansion, n: u64, x_n: &Float, precision: u32) -> Result<Float> {
        let x_star = solve_for_x(exp, n, x_n, precision)?;
        let ln_n = Float::with_val(precision, n).ln();
        Ok(-(ln_n * &self.b1) - x_star)
    }

    /// Runs one estimate at `(N, 2N)` with explicit parameters.
    pub fn estimate_with(&self, x0: &Rational, params: SolveParams) -> Result<ConstantEstimate> {
        let mut orbit = RealOrbit::new(&self.map, x0, params.precision)?;
        let at_n = self.staged(&mut orbit, &self.exp, params.n, params.precision)?;
        Ok(self.finish(x0, params, at_n))
    }

    fn staged(&self, orbit: &mut RealOrbit, exp: &Expansion, n: u64, prec: u32) -> Result<(Float, Float)> {
        let first = self.constant_at(exp, n, orbit.advance_to(n)?, prec)?;
        let second = self.constant_at(exp, 2 * n, orbit.advance_to(2 * n)?, prec)?;
        Ok((first, second))
    }

    fn finish(&self, x0: &Rational, params: SolveParams, (c1, c2): (Float, Float)) -> ConstantEstimate {
        ConstantEstimate {
            digits_agreed: agreeing_digits(&c1, &c2),
            value: c2,
            params,
            map: self.map.clone(),
            x0: x0.clone(),
        }
    }

    /// Estimate to `digits` places with the doubling check and one retry.
    pub fn estimate(&self, x0: &Rational, digits: u32) -> Result<ConstantEstimate> {
        let params = select_parameters(digits, self.k)?;
        let mut orbit = RealOrbit::new(&self.map, x0, params.precision)?;
        let pair = self.staged(&mut orbit, &self.exp, params.n, params.precision)?;
        let first = self.finish(x0, params, pair);
        if first.digits_agreed >= digits {
            return Ok(first);
        }
        let retry = match self.exp_retry.get() {
            Some(e) => e,
            None => {
                let e = derive_expansion(&self.map, self.k + 5)?;
                self.exp_retry.get_or_init(|| e)
            }
        };
        let params = SolveParams { k: self.k + 5, n: 4 * params.n, ..params };
        let pair = self.staged(&mut orbit, retry, params.n, params.precision)?;
        let second = self.finish(x0, params, pair);
        if second.digits_agreed >= digits {
            Ok(second)
        } else {
            Err(Error::ValidationFailed { agreed: second.digits_agreed, requested: digits })
        }
    }
}

/// `C(x0)` for `map` to `digits` places with the default series length.
pub fn estimate_constant(map: &MapSpec, x0: &Rational, digits: u32) -> Result<ConstantEstimate> {
    ConstantSolver::new(map, crate::logseries::DEFAULT_K)?.estimate(x0, digits)
}

/// `lim (x_n - n - b1 ln n)` for `x_{n+1} = x_n + 1 + sign x_n^-ell`, via `y = 1/x`.
pub fn estimate_constant_additive(ell: u32, sign: i32, x0: &Rational, digits: u32) -> Result<ConstantEstimate> {
    if x0.cmp0().is_le() {
        return Err(Error::InvalidArgument("x0 must be positive".into()));
    }
    let map = higher_map(ell, sign)?;
    estimate_constant(&map, &Rational::from(x0.recip_ref()), digits)
}

/// The additive constant computed without the conjugate map: iterate
/// `x + 1 + sign x^-ell` directly and solve the w-side series for `C`.
pub fn estimate_constant_additive_direct(
    ell: u32,
    sign: i32,
    x0: &Rational,
    digits: u32,
) -> Result<ConstantEstimate> {
    if x0.cmp0().is_le() {
        return Err(Error::InvalidArgument("x0 must be positive".into()));
    }
    let k = crate::logseries::DEFAULT_K;
    let params = select_parameters(digits, k)?;
    let w = additive_wseries(ell, sign, k)?;
    let prec = params.precision;
    let mut x = Float::with_val(prec, x0);
    let mut index = 0u64;
    let mut step_to = |x: &mut Float, n: u64| -> Result<()> {
        while index < n {
            let mut inv = Float::with_val(prec, x.recip_ref());
            inv.pow_assign(ell);
            if sign > 0 {
                *x += inv;
            } else {
                *x -= inv;
            }
            *x += 1u32;
            index += 1;
            if x.cmp0() != Some(Ordering::Greater) {
                return Err(Error::OrbitEscaped { index });
            }
        }
        Ok(())
    };
    step_to(&mut x, params.n)?;
    let c1 = solve_w_for_c(&w, params.n, &x, prec)?;
    step_to(&mut x, 2 * params.n)?;
    let c2 = solve_w_for_c(&w, 2 * params.n, &x, prec)?;
    let digits_agreed = agreeing_digits(&c1, &c2);
    if digits_agreed < digits {
        return Err(Error::ValidationFailed { agreed: digits_agreed, requested: digits });
    }
    Ok(ConstantEstimate {
        value: c2,
        digits_agreed,
        params,
        map: higher_map(ell, sign)?,
        x0: x0.clone(),
    })
}

/// Newton on `C` for `w(N, C) = target`.
pub fn solve_w_for_c(w: &WSeries, n: u64, target: &Float, precision: u32) -> Result<Float> {
    let n_int = Integer::from(n);
    let nf = Float::with_val(precision, n);
    let mut c = Float::with_val(precision, target - &nf);
    c -= Float::with_val(precision, nf.ln_ref()) * w.log_coeff();
    let tol = Float::with_val(precision, target) << -(precision as i32 - 64);
    for _ in 0..MAX_NEWTON {
        let (val, der) = w.eval_with_dc(&n_int, &c, precision);
        let g = val - target;
        if Float::with_val(precision, g.abs_ref()) <= tol {
            return Ok(c);
        }
        c -= g / der;
    }
    Err(Error::NewtonDiverged(MAX_NEWTON))
}
