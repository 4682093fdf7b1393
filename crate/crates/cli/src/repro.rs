use abelkit::analysis::{self, AbelFunction, RawMap};
use abelkit::constants::{self, ConstantSolver};
use abelkit::logseries;
use abelkit::BivarPolyQ;
use abelkit::numeric::{parse_decimal, parse_rational};
use abelkit::orbits::{self, Pair};
use abelkit::reference::{self, bivar, poly};
use abelkit::{builtin_map, Float, Integer};

struct Suite {
    out: String,
    ok: bool,
}

impl Suite {
    fn record(&mut self, label: &str, result: abelkit::Result<bool>) {
        let line = match result {
            Ok(true) => format!("pass  {label}\n"),
            Ok(false) => {
                self.ok = false;
                format!("FAIL  {label}\n")
            }
            Err(e) => {
                self.ok = false;
                format!("FAIL  {label}: {e}\n")
            }
        };
        self.out.push_str(&line);
    }
}

fn within(value: &Float, reference: &str, digits: u32) -> abelkit::Result<bool> {
    let r = parse_decimal(reference)?;
    let diff = Float::with_val(value.prec(), value - &r).abs();
    let tol = Float::with_val(value.prec(), Float::i_pow_u(10, digits)).recip();
    Ok(diff < tol)
}

fn matches_reference(value: &Float, shown: &str, reference: &str, digits: u32) -> abelkit::Result<bool> {
    let frac = reference.split('.').nth(1).map_or(0, str::len) as u32;
    let d = digits.min(frac);
    let cut = reference.len() - (frac - d) as usize;
    Ok(shown.starts_with(&reference[..cut]) || within(value, reference, d)?)
}

fn tables(s: &mut Suite) {
    for (name, table) in reference::POLY_TABLES {
        let res = builtin_map(name)
            .and_then(|m| logseries::derive_expansion(&m, 7))
            .map(|e| table.iter().enumerate().all(|(m, t)| e.polys()[m] == poly(t)));
        s.record(&format!("P_0..P_6 of {name}"), res);
    }
    for (name, table) in reference::CUBIC_TABLES {
        let res = builtin_map(name)
            .and_then(|m| logseries::derive_expansion(&m, 7))
            .map(|e| table.iter().enumerate().all(|(m, t)| e.poly_in_l_c(m) == bivar(&[t])));
        s.record(&format!("expansion of {name}"), res);
    }
    for (name, rows) in reference::LOG_TABLES {
        let res = builtin_map(name)
            .and_then(|m| logseries::derive_expansion(&m, rows.len()))
            .map(|e| rows.iter().enumerate().all(|(m, r)| e.poly_in_l_c(m) == bivar(r)));
        s.record(&format!("(L, C) expansion of {name}"), res);
    }
    for (name, log, r1) in reference::RECIP_LEADING {
        let res = builtin_map(name)
            .and_then(|m| logseries::derive_expansion(&m, 3))
            .and_then(|e| logseries::reciprocal(&e, 1))
            .map(|w| *w.log_coeff() == log && w.tail()[0] == bivar(r1));
        s.record(&format!("reciprocal series of {name}"), res);
    }
    for (sign, rs) in reference::WSERIES_ELL2 {
        let res = logseries::additive_wseries(2, sign, rs.len()).map(|w| {
            *w.log_coeff() == 0 && rs.iter().zip(w.tail()).all(|(t, r): (&&str, &BivarPolyQ)| *r == bivar(&[t]))
        });
        s.record(&format!("w-series of x+1{}x^-2", if sign > 0 { "+" } else { "-" }), res);
    }
    for name in ["A", "B", "I", "J", "CUBIC_PLUS", "CUBIC_MINUS"] {
        let res = builtin_map(name)
            .and_then(|m| logseries::derive_expansion(&m, 20))
            .and_then(|e| logseries::residual(&e, 20))
            .map(|r| r.iter().all(BivarPolyQ::is_zero));
        s.record(&format!("residual of {name} through n^-20"), res);
    }
}

fn long_constants(s: &mut Suite, digits: u32) {
    for (name, starts, value) in reference::CONSTANTS_100 {
        let solver = builtin_map(name).and_then(|m| ConstantSolver::new(&m, logseries::DEFAULT_K));
        for x0 in starts {
            let res = solver.as_ref().map_err(Clone::clone).and_then(|solver| {
                let est = solver.estimate(&parse_rational(x0)?, digits)?;
                matches_reference(&est.value, &est.value_string(), value, digits)
            });
            s.record(&format!("{name}({x0}) to {digits} digits"), res);
        }
    }
}

fn additive_constants(s: &mut Suite) {
    for ((ell, sign), start, value) in reference::CONSTANTS_15 {
        let label = format!("additive ell={ell} sign={sign:+} to 15 digits");
        let res = start.points().and_then(|(_, x0)| {
            let a = constants::estimate_constant_additive(ell, sign, &x0, 30)?;
            let b = constants::estimate_constant_additive_direct(ell, sign, &x0, 30)?;
            Ok(within(&a.value, value, 15)? && within(&b.value, value, 15)?)
        });
        s.record(&label, res);
    }
}

fn sequences(s: &mut Suite) {
    for (name, x0, terms) in reference::ORBITS {
        let res = builtin_map(name).and_then(|m| {
            let o = orbits::orbit_exact(&m, &parse_rational(x0)?, terms.len() - 1)?;
            Ok(o.terms().iter().zip(terms.iter()).all(|(a, b)| parse_rational(b).is_ok_and(|b| *a == b)))
        });
        s.record(&format!("orbit of {name} from {x0}"), res);
    }
    for (t1, terms) in reference::T_SEQUENCES {
        let res = parse_rational(t1).and_then(|t1| orbits::t_sequence(&t1, terms.len())).map(|t| {
            t.iter().zip(terms.iter()).all(|(a, b)| parse_rational(b).is_ok_and(|b| *a == b))
        });
        s.record(&format!("sum=product sequence from {t1}"), res);
    }
    let ints = |v: Vec<Integer>, terms: &[&str]| v.iter().zip(terms).all(|(a, b)| a.to_string() == *b);
    for ((a, b), terms) in reference::U_SEQUENCES {
        let res = orbits::u_sequence(&Integer::from(a), &Integer::from(b), terms.len()).map(|v| ints(v, terms));
        s.record(&format!("u-sequence from {a},{b}"), res);
    }
    for ((a, b), terms) in reference::V_SEQUENCES {
        let res = orbits::v_sequence(&Integer::from(a), &Integer::from(b), terms.len()).map(|v| ints(v, terms));
        s.record(&format!("v-sequence from {a},{b}"), res);
    }
    for pair in [Pair::AB, Pair::IJ] {
        for (f, g) in pair.printed_seeds() {
            let res = orbits::check_patterns(pair, &f, &g, 10).map(|r| r.all_hold());
            s.record(&format!("{pair:?} patterns from {f}, {g} through 10 terms"), res);
        }
    }
}

fn identities(s: &mut Suite) {
    for pair in [Pair::AB, Pair::IJ] {
        for x in ["1/2", "1", "2"] {
            let res = parse_rational(x).and_then(|x| analysis::verify_identity(pair, &x, 50)).map(|r| r.passed());
            s.record(&format!("{pair:?} identity at x = {x}"), res);
        }
    }
}

fn figures(s: &mut Suite) {
    let q = |t: &str| parse_rational(t).expect("literal");
    let res = builtin_map("B")
        .and_then(|m| AbelFunction::new(&m, 30))
        .and_then(|f| analysis::find_minimum(&f, &q("1/2"), &q("2")))
        .map(|r| (r.location_float(64) - 1u32).abs() < 1e-6);
    s.record("minimum of B's solution at 1", res);
    let res = builtin_map("A")
        .and_then(|m| AbelFunction::new(&m, 30))
        .and_then(|f| analysis::find_minimum(&f, &q("1/4"), &q("3/4")))
        .map(|r| (r.location_float(64) - 0.5f64).abs() < 1e-10);
    s.record("minimum of A's solution at 1/2", res);
    let (lo, hi) = reference::PSI_BRACKET;
    let res = builtin_map("I")
        .and_then(|m| AbelFunction::new(&m, 30))
        .and_then(|f| analysis::find_inflection(&f, &q("1/2"), &q("3/4")))
        .map(|r| {
            let x = r.location_float(64);
            let d = |t: &str| parse_decimal(t).expect("literal");
            x >= d(lo) && x <= d(hi)
        });
    s.record("inflection of I's solution near psi", res);
    let res = builtin_map("I").and_then(|m| {
        let r = analysis::find_inflection(&RawMap::new(&m, 30), &q("1/4"), &q("1/2"))?;
        Ok((r.location_float(64) - parse_decimal(reference::RAW_INFLECTION)?).abs() < 1e-3)
    });
    s.record("inflection of x/(1+x-x^2)", res);
}

/// Runs every reference check; returns the summary and whether all passed.
pub fn run(digits: u32, quick: bool) -> (String, bool) {
    let mut s = Suite { out: String::new(), ok: true };
    tables(&mut s);
    sequences(&mut s);
    additive_constants(&mut s);
    if !quick {
        long_constants(&mut s, digits);
        identities(&mut s);
        figures(&mut s);
    }
    let total = s.out.lines().count();
    let failed = s.out.lines().filter(|l| l.starts_with("FAIL")).count();
    s.out.push_str(&format!("{} of {total} checks passed\n", total - failed));
    (s.out, s.ok)
}
