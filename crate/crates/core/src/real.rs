//! Fixed-precision binary floating point for the log-domain volume checks,
//! backed by `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

use crate::fraction::Fraction;

/// Environment variable overriding the working precision, in decimal digits.
pub const PRECISION_ENV: &str = "MONTESINOS_PRECISION_DIGITS";

pub const DEFAULT_DIGITS: u32 = 50;

const RM: RoundingMode = RoundingMode::ToEven;

// Extra bits carried beyond the requested decimal digits.
const GUARD_BITS: usize = 32;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        Precision {
            digits: digits.max(20),
        }
    }

    /// Reads [`PRECISION_ENV`], falling back to 50 digits.
    pub fn from_env() -> Self {
        std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Precision::digits)
            .unwrap_or_default()
    }

    pub fn decimal_digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> usize {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            digits: DEFAULT_DIGITS,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    fn wrap(value: BigFloat, bits: usize) -> Self {
        Real { value, bits }
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        let bits = prec.bits();
        Real::wrap(BigFloat::from_i64(v, bits), bits)
    }

    pub fn from_u64(v: u64, prec: Precision) -> Self {
        let bits = prec.bits();
        Real::wrap(BigFloat::from_u64(v, bits), bits)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        Real::parse(&v.to_string(), prec)
    }

    pub fn from_fraction(f: &Fraction, prec: Precision) -> Self {
        Real::from_bigint(f.numer(), prec) / Real::from_bigint(f.denom(), prec)
    }

    /// Parses a decimal literal such as `"3.6638"` or `"1.5e-3"`.
    pub fn parse(s: &str, prec: Precision) -> Self {
        let bits = prec.bits();
        let value = with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc));
        Real::wrap(value, bits)
    }

    pub fn pi(prec: Precision) -> Self {
        let bits = prec.bits();
        Real::wrap(with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    pub fn e(prec: Precision) -> Self {
        let bits = prec.bits();
        Real::wrap(with_consts(|cc| cc.e(bits, RM)), bits)
    }

    pub fn ln(&self) -> Self {
        Real::wrap(
            with_consts(|cc| self.value.ln(self.bits, RM, cc)),
            self.bits,
        )
    }

    pub fn exp(&self) -> Self {
        Real::wrap(
            with_consts(|cc| self.value.exp(self.bits, RM, cc)),
            self.bits,
        )
    }

    pub fn sin(&self) -> Self {
        Real::wrap(
            with_consts(|cc| self.value.sin(self.bits, RM, cc)),
            self.bits,
        )
    }

    pub fn sqrt(&self) -> Self {
        Real::wrap(self.value.sqrt(self.bits, RM), self.bits)
    }

    pub fn abs(&self) -> Self {
        Real::wrap(self.value.abs(), self.bits)
    }

    pub fn recip(&self) -> Self {
        Real::wrap(self.value.reciprocal(self.bits, RM), self.bits)
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive() && !self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn precision_bits(&self) -> usize {
        self.bits
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }

    /// Rounds to `sig` significant decimal digits (half away from zero).
    ///
    /// Plain positional notation is used for decimal exponents in
    /// `-6..=40`, scientific notation outside that range.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.value.is_nan() {
            return "NaN".into();
        }
        if self.value.is_inf() {
            return if self.value.is_negative() { "-inf" } else { "inf" }.into();
        }
        if self.value.is_zero() {
            return "0".into();
        }
        let raw = with_consts(|cc| self.value.format(Radix::Dec, RM, cc))
            .expect("decimal formatting");
        format_significant(&raw, sig.max(1))
    }
}

/// Reformats astro-float's `d.ddd…e±x` output to `sig` significant digits.
fn format_significant(raw: &str, sig: usize) -> String {
    let (negative, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw),
    };
    let (mantissa, exp) = body.split_once(['e', 'E']).unwrap_or((body, "0"));
    let mut exp: i64 = exp.parse().expect("decimal exponent");
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut digits: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes())
        .map(|b| b - b'0')
        .collect();
    // Normalise so that the first digit is nonzero and the exponent belongs
    // to it.
    exp += int_part.len() as i64 - 1;
    while digits.len() > 1 && digits[0] == 0 {
        digits.remove(0);
        exp -= 1;
    }
    if digits.len() > sig {
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(sig);
                    exp += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    let positional = (-6..=40).contains(&exp);
    let keep = if positional { (exp + 1).max(1) as usize } else { 1 };
    while digits.len() > keep && digits.last() == Some(&0) {
        digits.pop();
    }
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let sign = if negative { "-" } else { "" };
    if positional {
        if exp < 0 {
            format!("{sign}0.{}{text}", "0".repeat((-exp - 1) as usize))
        } else {
            let int_len = exp as usize + 1;
            if text.len() <= int_len {
                format!("{sign}{text}{}", "0".repeat(int_len - text.len()))
            } else {
                format!("{sign}{}.{}", &text[..int_len], &text[int_len..])
            }
        }
    } else {
        let (head, tail) = text.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(30);
        f.write_str(&self.to_decimal(sig))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait for &Real {
            type Output = Real;

            fn $method(self, rhs: &Real) -> Real {
                let bits = self.bits.max(rhs.bits);
                Real::wrap(self.value.$method(&rhs.value, bits, RM), bits)
            }
        }

        impl $trait for Real {
            type Output = Real;

            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Real> for Real {
            type Output = Real;

            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl Neg for &Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.value), self.bits)
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        -&self
    }
}
