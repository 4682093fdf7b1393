//! Published reference values, used by the reproduction suite.
//!
//! Polynomials are written in `x`; in the log tables and w-series `x` stands
//! for `C`, and each entry lists the coefficients of `L^0, L^1, ...`.

use rug::{Float, Rational};

use crate::error::Result;
use crate::maps::parse_polynomial;
use crate::poly::{BivarPolyQ, PolyQ};

/// `P_0..P_6` for the four named maps.
pub const POLY_TABLES: [(&str, [&str; 7]); 4] = [
    (
        "A",
        [
            "1",
            "x",
            "1/2 + x + x^2",
            "5/6 + 5/2*x + 5/2*x^2 + x^3",
            "61/36 + 35/6*x + 15/2*x^2 + 13/3*x^3 + x^4",
            "2609/720 + 515/36*x + 265/12*x^2 + 101/6*x^3 + 77/12*x^4 + x^5",
            "29069/3600 + 12977/360*x + 65*x^2 + 61*x^3 + 95/3*x^4 + 87/10*x^5 + x^6",
        ],
    ),
    (
        "B",
        [
            "1",
            "x",
            "-1/2 + x + x^2",
            "-1/6 - 1/2*x + 5/2*x^2 + x^3",
            "7/36 - 7/6*x + 3/2*x^2 + 13/3*x^3 + x^4",
            "89/720 - 7/36*x - 17/12*x^2 + 41/6*x^3 + 77/12*x^4 + x^5",
            "-331/3600 + 197/360*x - 2*x^2 + 4*x^3 + 50/3*x^4 + 87/10*x^5 + x^6",
        ],
    ),
    (
        "I",
        [
            "1",
            "x",
            "-3/2 - x + x^2",
            "2/3 - 7/2*x - 5/2*x^2 + x^3",
            "121/36 + 37/6*x - 9/2*x^2 - 13/3*x^3 + x^4",
            "-2189/720 + 383/36*x + 239/12*x^2 - 19/6*x^3 - 77/12*x^4 + x^5",
            "-30811/3600 - 10397/360*x + 12*x^2 + 43*x^3 + 5/3*x^4 - 87/10*x^5 + x^6",
        ],
    ),
    (
        "J",
        [
            "1",
            "x",
            "-1/2 - x + x^2",
            "2/3 - 1/2*x - 5/2*x^2 + x^3",
            "-5/36 + 19/6*x + 3/2*x^2 - 13/3*x^3 + x^4",
            "-749/720 - 139/36*x + 77/12*x^2 + 41/6*x^3 - 77/12*x^4 + x^5",
            "6389/3600 - 857/360*x - 18*x^2 + 6*x^3 + 50/3*x^4 - 87/10*x^5 + x^6",
        ],
    ),
];

/// Coefficients of `n^-(m+1)` in `C` for the two cubic maps.
pub const CUBIC_TABLES: [(&str, [&str; 7]); 2] = [
    (
        "CUBIC_PLUS",
        [
            "1",
            "-x",
            "1 + x^2",
            "1/2 - 3*x - x^3",
            "11/6 - 2*x + 6*x^2 + x^4",
            "9/4 - 55/6*x + 5*x^2 - 10*x^3 - x^5",
            "299/60 - 27/2*x + 55/2*x^2 - 10*x^3 + 15*x^4 + x^6",
        ],
    ),
    (
        "CUBIC_MINUS",
        [
            "1",
            "-x",
            "-1 + x^2",
            "-1/2 + 3*x - x^3",
            "3/2 + 2*x - 6*x^2 + x^4",
            "9/4 - 15/2*x - 5*x^2 + 10*x^3 - x^5",
            "-27/20 - 27/2*x + 45/2*x^2 + 10*x^3 - 15*x^4 + x^6",
        ],
    ),
];

/// Coefficients of `n^-(m+1)` in `(L, C)` for `y/(1+y+y^2)` and `y/(1+y-y^2)`.
pub const LOG_TABLES: [(&str, &[&[&str]]); 2] = [
    (
        "B",
        &[
            &["1"],
            &["-x", "-1"],
            &["-1/2 - x + x^2", "-1 + 2*x", "1"],
            &["-1/6 + 1/2*x + 5/2*x^2 - x^3", "1/2 + 5*x - 3*x^2", "5/2 - 3*x", "-1"],
            &[
                "7/36 + 7/6*x + 3/2*x^2 - 13/3*x^3 + x^4",
                "7/6 + 3*x - 13*x^2 + 4*x^3",
                "3/2 - 13*x + 6*x^2",
                "-13/3 + 4*x",
                "1",
            ],
        ],
    ),
    (
        "I",
        &[
            &["1"],
            &["-x", "1"],
            &["-3/2 + x + x^2", "-1 - 2*x", "1"],
            &["2/3 + 7/2*x - 5/2*x^2 - x^3", "-7/2 + 5*x + 3*x^2", "-5/2 - 3*x", "1"],
            &[
                "121/36 - 37/6*x - 9/2*x^2 + 13/3*x^3 + x^4",
                "37/6 + 9*x - 13*x^2 - 4*x^3",
                "-9/2 + 13*x + 6*x^2",
                "-13/3 - 4*x",
                "1",
            ],
        ],
    ),
];

/// Leading reciprocal series: map, `log_coeff`, then `R_1` by powers of `L`.
pub const RECIP_LEADING: [(&str, i32, &[&str]); 2] = [("B", 1, &["1/2 + x", "1"]), ("I", -1, &["3/2 - x", "1"])];

/// `R_1..R_6` of `x_{n+1} = x_n + 1 + sign/x_n^2`, in `C`.
pub const WSERIES_ELL2: [(i32, [&str; 6]); 2] = [
    (
        1,
        [
            "-1",
            "-1/2 + x",
            "-5/6 + x - x^2",
            "-5/4 + 5/2*x - 3/2*x^2 + x^3",
            "-31/15 + 5*x - 5*x^2 + 2*x^3 - x^4",
            "-11/3 + 31/3*x - 25/2*x^2 + 25/3*x^3 - 5/2*x^4 + x^5",
        ],
    ),
    (
        -1,
        [
            "1",
            "1/2 - x",
            "-1/2 - x + x^2",
            "-5/4 + 3/2*x + 3/2*x^2 - x^3",
            "-2/5 + 5*x - 3*x^2 - 2*x^3 + x^4",
            "5/2 + 2*x - 25/2*x^2 + 5*x^3 + 5/2*x^4 - x^5",
        ],
    ),
];

/// 100-digit Abel constants: map, starting points sharing the value, value.
pub const CONSTANTS_100: [(&str, &[&str], &str); 14] = [
    ("A", &["1/2"], "1.7679937861361540504436344067811323310776814331319565155769860596260007646063875144448165163256825025"),
    ("A", &["1/3", "2/3"], "2.1291182656728201538441564654154176670348938740502779288309048724472004608367819324592064930700131124"),
    ("A", &["1/5", "4/5"], "3.5078283034835386433488246888284972641307794020317720807962506019404598992541609606082898534188329417"),
    ("B", &["1"], "0.7679937861361540504436344067811323310776814331319565155769860596260007646063875144448165163256825025"),
    ("B", &["1/2", "2"], "1.1291182656728201538441564654154176670348938740502779288309048724472004608367819324592064930700131124"),
    ("B", &["1/4", "4"], "2.5078283034835386433488246888284972641307794020317720807962506019404598992541609606082898534188329417"),
    ("I", &["1/3"], "3.4830067125282177113704520759791726686562770299951593109810522018534103367109602141926567367016557660"),
    ("I", &["1/2"], "1.6401885142398798318589290622738402860217458575466598725869701043989615440421793595093368942472428035"),
    ("I", &["2/3"], "0.2423664546942110766418907044888207557107856809292233356010869980943641381391351320915203462638811790"),
    ("I", &["3/4"], "-0.4703717150829981068180191785383076835765056532972321363659129577482933553934482841917192802141645832"),
    ("J", &["1/2"], "2.4830067125282177113704520759791726686562770299951593109810522018534103367109602141926567367016557660"),
    ("J", &["1"], "0.6401885142398798318589290622738402860217458575466598725869701043989615440421793595093368942472428035"),
    ("J", &["2"], "-0.7576335453057889233581092955111792442892143190707766643989130019056358618608648679084796537361188209"),
    ("J", &["3"], "-1.4703717150829981068180191785383076835765056532972321363659129577482933553934482841917192802141645832"),
];

/// Where a 15-digit constant starts, in map and additive coordinates.
#[derive(Clone, Copy, Debug)]
pub enum Start {
    /// `y0 = 1/x0` for the stated `x0`.
    Exact(&'static str),
    /// `x0 = 2^(1/3)`, `y0 = 2^(-1/3)`.
    CubeRootTwo,
}

impl Start {
    /// `(y0, x0)` as exact rationals; the cube root is approximated to about 60 digits.
    pub fn points(self) -> Result<(Rational, Rational)> {
        match self {
            Start::Exact(s) => {
                let x0 = crate::numeric::parse_rational(s)?;
                Ok((Rational::from(x0.recip_ref()), x0))
            }
            Start::CubeRootTwo => {
                let c = Float::with_val(200, 2).cbrt();
                let x0 = c.to_rational().expect("finite");
                Ok((Rational::from(x0.recip_ref()), x0))
            }
        }
    }
}

/// 15-digit constants: `(ell, sign)`, start, value.
pub const CONSTANTS_15: [((u32, i32), Start, &str); 6] = [
    ((1, 1), Start::Exact("2"), "1.129118265672820"),
    ((1, -1), Start::Exact("2"), "1.640188514239879"),
    ((2, 1), Start::Exact("2"), "2.598786855824871"),
    ((2, -1), Start::Exact("2"), "1.290937947423058"),
    ((1, 1), Start::Exact("1"), "0.767993786136154"),
    ((2, 1), Start::CubeRootTwo, "2.286858220891602"),
];

/// Exact orbits: map, `x0`, listed terms.
pub const ORBITS: [(&str, &str, &[&str]); 8] = [
    ("A", "1/2", &["1/2", "1/4", "3/16", "39/256", "8463/65536", "483008799/4294967296"]),
    ("B", "1", &["1/1", "1/3", "3/13", "39/217", "8463/57073", "483008799/3811958497"]),
    ("A", "1/3", &["1/3", "2/9", "14/81", "938/6561", "5274374/43046721", "199225484935778/1853020188851841"]),
    ("B", "1/2", &["1/2", "2/7", "14/67", "938/5623", "5274374/37772347", "199225484935778/1653794703916063"]),
    ("I", "1/2", &["1/2", "2/5", "10/31", "310/1171", "363010/1638151", "594665194510/3146427633211"]),
    ("J", "1", &["1/1", "2/3", "10/21", "310/861", "363010/1275141", "594665194510/2551762438701"]),
    (
        "I",
        "1/3",
        &["1/3", "3/11", "33/145", "4785/24721", "118289985/706521601", "83574429584465985/568754681712768961"],
    ),
    (
        "J",
        "1/2",
        &["1/2", "3/8", "33/112", "4785/19936", "118289985/588231616", "83574429584465985/485180252128302976"],
    ),
];

/// Sum=product sequences by `t1`.
pub const T_SEQUENCES: [(&str, &[&str]); 2] = [
    ("2", &["2/1", "2/1", "4/3", "16/13", "256/217", "65536/57073", "4294967296/3811958497"]),
    (
        "3",
        &["3/1", "3/2", "9/7", "81/67", "6561/5623", "43046721/37772347", "1853020188851841/1653794703916063"],
    ),
];

/// u-recurrence seeds and terms.
pub const U_SEQUENCES: [((u32, u32), &[&str]); 2] = [
    ((1, 2), &["1", "2", "10", "310", "363010", "594665194510"]),
    ((1, 3), &["1", "3", "33", "4785", "118289985", "83574429584465985"]),
];

/// v-recurrence seeds and terms.
pub const V_SEQUENCES: [((u32, u32), &[&str]); 2] = [
    ((1, 3), &["1", "3", "21", "861", "1275141", "2551762438701"]),
    ((2, 8), &["2", "8", "112", "19936", "588231616", "485180252128302976"]),
];

/// Inflection point of the Abel solution of `I`, to the three listed digits.
pub const PSI_BRACKET: (&str, &str) = ("0.6285", "0.6295");

/// Inflection point of `x/(1+x-x^2)`, three digits.
pub const RAW_INFLECTION: &str = "0.322";

pub fn poly(text: &str) -> PolyQ {
    parse_polynomial(text).expect("reference polynomial parses")
}

/// Bivariate polynomial from per-`L`-power coefficient polynomials in `C`.
pub fn bivar(by_l: &[&str]) -> BivarPolyQ {
    let mut out = BivarPolyQ::zero();
    for (l, text) in by_l.iter().enumerate() {
        for (c, coeff) in poly(text).coeffs().iter().enumerate() {
            out.add_term(l as u32, c as u32, coeff.clone());
        }
    }
    out
}
