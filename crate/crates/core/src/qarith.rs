//! q-numbers and the spectral parameter of the degenerate series.
//!
//! Everything here works with the sinh form
//! `[z]_q = sinh(h z / 2) / sinh(h / 2)`, `h = ln q`, which is entire in `z`
//! and reduces to `[z]_1 = z` at `q = 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation parameter `q > 0` together with `h = ln q` and
/// `a = q^{1/2} + q^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    h: f64,
    a: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidQ(q));
        }
        Ok(Self {
            q,
            h: q.ln(),
            a: q.sqrt() + 1.0 / q.sqrt(),
        })
    }

    /// The undeformed algebra, `q = 1`.
    pub fn classical() -> Self {
        Self {
            q: 1.0,
            h: 0.0,
            a: 2.0,
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Coefficient of the middle term in the cubic relations.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn is_classical(&self) -> bool {
        self.h == 0.0
    }

    /// `π / h`, the unit of `im_t`. `None` at `q = 1`.
    pub fn imaginary_unit(&self) -> Option<f64> {
        if self.is_classical() {
            None
        } else {
            Some(PI / self.h)
        }
    }

    /// `[z]_q` for complex `z`.
    pub fn qnum(&self, z: Complex64) -> Complex64 {
        if self.is_classical() {
            return z;
        }
        (z * (self.h / 2.0)).sinh() / (self.h / 2.0).sinh()
    }

    /// `[x]_q` for real `x`.
    pub fn qnum_real(&self, x: f64) -> f64 {
        if self.is_classical() {
            return x;
        }
        (self.h * x / 2.0).sinh() / (self.h / 2.0).sinh()
    }
}

/// Free-function form of [`QParam::qnum`].
pub fn qnum_eval(p: &QParam, z: Complex64) -> Complex64 {
    p.qnum(z)
}

/// The spectral parameter λ.
///
/// Exact values are stored as `re + im_t·(π/h)·i` with rational `re` and
/// `im_t`. Anything else is carried as a plain complex number and refused by
/// the exact decision procedures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralParam {
    Exact { re: Rational64, im_t: Rational64 },
    Inexact(Complex64),
}

/// How a λ relates to its normalized form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftRelation {
    /// Differs by a multiple of `4πi/h`: the operators coincide.
    Identical,
    /// Differs by an odd multiple of `2πi/h`: equivalent, the noncompact
    /// generator changes sign.
    EquivalentFlip,
}

impl SpectralParam {
    pub fn exact(re: Rational64, im_t: Rational64) -> Self {
        SpectralParam::Exact { re, im_t }
    }

    pub fn real(re: Rational64) -> Self {
        SpectralParam::Exact {
            re,
            im_t: Rational64::zero(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::real(Rational64::from_integer(n))
    }

    pub fn inexact(z: Complex64) -> Self {
        SpectralParam::Inexact(z)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SpectralParam::Exact { .. })
    }

    pub fn exact_parts(&self) -> Result<(Rational64, Rational64)> {
        match *self {
            SpectralParam::Exact { re, im_t } => Ok((re, im_t)),
            SpectralParam::Inexact(_) => Err(Error::InexactSpectral),
        }
    }

    /// Numerical value of λ for a given `q`.
    pub fn value(&self, p: &QParam) -> Result<Complex64> {
        match *self {
            SpectralParam::Inexact(z) => Ok(z),
            SpectralParam::Exact { re, im_t } => {
                let re = rational_to_f64(re);
                if im_t.is_zero() {
                    return Ok(Complex64::new(re, 0.0));
                }
                let unit = p.imaginary_unit().ok_or(Error::ImaginaryAtClassicalLimit)?;
                Ok(Complex64::new(re, rational_to_f64(im_t) * unit))
            }
        }
    }

    /// `c - λ`, with `c` an exact rational (used for the mirror `r+s-2-λ`).
    pub fn reflect(&self, c: Rational64) -> Self {
        match *self {
            SpectralParam::Exact { re, im_t } => SpectralParam::Exact {
                re: c - re,
                im_t: -im_t,
            },
            SpectralParam::Inexact(z) => {
                SpectralParam::Inexact(Complex64::new(rational_to_f64(c), 0.0) - z)
            }
        }
    }

    /// λ + k·(π/h)·i. Inexact values need `q` to realize the shift.
    pub fn shift_imaginary(&self, k: Rational64, p: &QParam) -> Result<Self> {
        match *self {
            SpectralParam::Exact { re, im_t } => Ok(SpectralParam::Exact { re, im_t: im_t + k }),
            SpectralParam::Inexact(z) => {
                let unit = p.imaginary_unit().ok_or(Error::ImaginaryAtClassicalLimit)?;
                Ok(SpectralParam::Inexact(
                    z + Complex64::new(0.0, rational_to_f64(k) * unit),
                ))
            }
        }
    }

    /// Exact integer value when λ is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        match *self {
            SpectralParam::Exact { re, im_t } if im_t.is_zero() && re.is_integer() => {
                Some(re.to_integer())
            }
            _ => None,
        }
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralParam::Exact { re, im_t } if im_t.is_zero() => write!(f, "{re}"),
            SpectralParam::Exact { re, im_t } => write!(f, "{re} + {im_t}·(π/h)i"),
            SpectralParam::Inexact(z) => write!(f, "{} + {}i (inexact)", z.re, z.im),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SpectralRepr {
    Exact { re: String, im_t: String },
    Inexact { inexact: [f64; 2] },
}

impl Serialize for SpectralParam {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let repr = match *self {
            SpectralParam::Exact { re, im_t } => SpectralRepr::Exact {
                re: re.to_string(),
                im_t: im_t.to_string(),
            },
            SpectralParam::Inexact(z) => SpectralRepr::Inexact {
                inexact: [z.re, z.im],
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectralParam {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        match SpectralRepr::deserialize(deserializer)? {
            SpectralRepr::Exact { re, im_t } => {
                let re = parse_rational(&re).map_err(serde::de::Error::custom)?;
                let im_t = parse_rational(&im_t).map_err(serde::de::Error::custom)?;
                Ok(SpectralParam::Exact { re, im_t })
            }
            SpectralRepr::Inexact { inexact } => Ok(SpectralParam::Inexact(Complex64::new(
                inexact[0], inexact[1],
            ))),
        }
    }
}

/// Decides `[λ + c]_q = 0` exactly.
///
/// `sinh(h(λ+c)/2)` vanishes iff `λ + c = 2πik/h`, i.e. `Re λ + c = 0` and
/// `im_t` is an even integer. At `q = 1` only `λ + c = 0` qualifies.
pub fn qnum_vanishes(lam: &SpectralParam, c: Rational64, p: &QParam) -> Result<bool> {
    let (re, im_t) = lam.exact_parts()?;
    if !(re + c).is_zero() {
        return Ok(false);
    }
    if p.is_classical() {
        return Ok(im_t.is_zero());
    }
    Ok(im_t.is_integer() && im_t.to_integer() % 2 == 0)
}

/// Reduces `im_t` into `[0, 2)` using the `4πi/h` period and, if needed, one
/// `2πi/h` half period.
pub fn normalize_spectral(lam: &SpectralParam) -> Result<(SpectralParam, ShiftRelation)> {
    let (re, im_t) = lam.exact_parts()?;
    let four = Rational64::from_integer(4);
    let two = Rational64::from_integer(2);
    let mut t = im_t - four * (im_t / four).floor();
    let mut relation = ShiftRelation::Identical;
    if t >= two {
        t -= two;
        relation = ShiftRelation::EquivalentFlip;
    }
    Ok((SpectralParam::Exact { re, im_t: t }, relation))
}

pub fn rational_to_f64(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Parses `p/q` or a plain integer. Decimal notation is rejected: it is not
/// a certified exact value.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    Rational64::from_str(s).map_err(|_| {
        Error::InvalidParameter(format!(
            "`{s}` is not an exact rational (use p/q or an integer)"
        ))
    })
}

/// Nearest rational with a bounded denominator, for explicit snapping of
/// floating input.
pub fn snap_to_rational(x: f64, max_denominator: i64) -> Result<Rational64> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("cannot snap {x}")));
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    let mut best = Rational64::from_integer(x.round() as i64);
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1).and_then(|v| v.checked_add(h0));
        let k2 = a.checked_mul(k1).and_then(|v| v.checked_add(k0));
        let (Some(h2), Some(k2)) = (h2, k2) else {
            break;
        };
        if k2 > max_denominator {
            break;
        }
        best = Rational64::new(h2, k2);
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    Ok(best)
}
