//! The regular ideal octahedron volume, the family volume interval
//! `((2n−1)/2)·v_oct ≤ v_n ≤ (4n+2)·v_oct`, and log-factorial support.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::real::{Precision, Real};

/// `v_oct = 4G` (G Catalan's constant) to 60 significant digits.
pub const V_OCT_DECIMAL: &str = "3.66386237670887606021841405972953644309659749712668853706599";

/// Volume of the regular ideal hyperbolic octahedron, `4G`.
///
/// G is summed from the accelerated series
/// `G = (π/8)·ln(2+√3) + (3/8)·Σ_{k≥0} (k!)² / ((2k)!·(2k+1)²)`,
/// whose terms shrink by a factor of about four.
pub fn v_oct(prec: Precision) -> Real {
    let one = Real::from_i64(1, prec);
    let tolerance = Real::parse(&format!("1e-{}", prec.decimal_digits() + 12), prec);
    // ratio_k = (k!)²/(2k)!, updated by k²/((2k)(2k−1)).
    let mut ratio = one.clone();
    let mut sum = one.clone();
    for k in 1u64.. {
        ratio = ratio * Real::from_u64(k, prec) / Real::from_u64(2 * (2 * k - 1), prec);
        let odd = Real::from_u64(2 * k + 1, prec);
        let term = &ratio / &(&odd * &odd);
        sum = sum + &term;
        if term < tolerance {
            break;
        }
    }
    let two_plus_root3 = Real::from_i64(2, prec) + Real::from_i64(3, prec).sqrt();
    let catalan = Real::pi(prec) / Real::from_i64(8, prec) * two_plus_root3.ln()
        + Real::from_i64(3, prec) / Real::from_i64(8, prec) * sum;
    catalan * Real::from_i64(4, prec)
}

/// Volume interval for the mutants of `K_{2n+1}`, exact in units of `v_oct`.
#[derive(Clone, Debug)]
pub struct VolumeBound {
    pub lower_oct: Fraction,
    pub upper_oct: Fraction,
    pub lower: Real,
    pub upper: Real,
}

/// Decimal rendering of a [`VolumeBound`] for export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeBoundRecord {
    pub lower_oct: Fraction,
    pub upper_oct: Fraction,
    pub lower: String,
    pub upper: String,
}

/// Significant digits used when volume and log quantities are exported.
pub const EXPORT_DIGITS: usize = 30;

impl VolumeBound {
    pub fn to_record(&self) -> VolumeBoundRecord {
        VolumeBoundRecord {
            lower_oct: self.lower_oct.clone(),
            upper_oct: self.upper_oct.clone(),
            lower: self.lower.to_decimal(EXPORT_DIGITS),
            upper: self.upper.to_decimal(EXPORT_DIGITS),
        }
    }
}

/// `(2n−1)/2 · v_oct ≤ v_n ≤ (4n+2) · v_oct`, for `n ≥ 2`.
pub fn volume_bounds(n: u64, prec: Precision) -> Result<VolumeBound> {
    if n < 2 {
        return Err(Error::FamilyIndex { n, min: 2 });
    }
    let n_int = i64::try_from(n).map_err(|_| Error::FamilyIndex { n, min: 2 })?;
    let lower_oct = Fraction::new(2 * n_int - 1, 2)?;
    let upper_oct = Fraction::integer(4 * n_int + 2);
    let oct = v_oct(prec);
    Ok(VolumeBound {
        lower: Real::from_fraction(&lower_oct, prec) * &oct,
        upper: Real::from_fraction(&upper_oct, prec) * &oct,
        lower_oct,
        upper_oct,
    })
}

/// `ln(√(2πn)·(n/e)ⁿ)`, the log of Stirling's lower estimate for `n!`.
pub fn stirling_lower_ln(n: u64, prec: Precision) -> Real {
    let x = Real::from_u64(n, prec);
    let two_pi_n = Real::from_i64(2, prec) * Real::pi(prec) * &x;
    two_pi_n.ln() / Real::from_i64(2, prec) + &x * &(x.ln() - Real::from_i64(1, prec))
}

/// `√(2πn)·(n/e)ⁿ`, exponentiated from the log-domain value.
pub fn stirling_lower(n: u64, prec: Precision) -> Real {
    stirling_lower_ln(n, prec).exp()
}

// Below this, ln n! is summed term by term.
const DIRECT_SUM_LIMIT: u64 = 256;

/// `ln n! = Σ_{k=1}^{n} ln k`.
///
/// Large `n` use the Stirling series
/// `n ln n − n + ½ ln(2πn) + Σ_k B_{2k} / (2k(2k−1) n^{2k−1})`, truncated
/// once a term drops below the working precision; the truncation error is
/// bounded by the first omitted term.
pub fn log_factorial(n: u64, prec: Precision) -> Real {
    if n <= DIRECT_SUM_LIMIT {
        return (2..=n).fold(Real::from_i64(0, prec), |acc, k| {
            acc + Real::from_u64(k, prec).ln()
        });
    }
    let x = Real::from_u64(n, prec);
    let mut value = stirling_lower_ln(n, prec);
    let tolerance = Real::parse(&format!("1e-{}", prec.decimal_digits() + 12), prec);
    let inv = x.recip();
    let inv_sq = &inv * &inv;
    let mut power = inv; // n^{-(2k-1)}
    for (k, b) in stirling_bernoulli().iter().enumerate().skip(1) {
        let k = k as i64;
        let coeff = Real::from_fraction(b, prec) / Real::from_i64(2 * k * (2 * k - 1), prec);
        let term = coeff * &power;
        value = value + &term;
        if term.abs() < tolerance {
            break;
        }
        power = power * &inv_sq;
    }
    value
}

fn stirling_bernoulli() -> &'static [Fraction] {
    static CACHE: OnceLock<Vec<Fraction>> = OnceLock::new();
    CACHE.get_or_init(|| bernoulli_even(40))
}

/// `[B_0, B_2, B_4, ..., B_{2·count}]` exactly, from the recurrence
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_even(count: usize) -> Vec<Fraction> {
    let max = 2 * count;
    let mut b: Vec<Fraction> = Vec::with_capacity(max + 1);
    b.push(Fraction::integer(1));
    for m in 1..=max {
        // binom(m+1, j) for j = 0..m
        let mut binom = num_bigint::BigInt::from(1);
        let mut acc = Fraction::zero();
        for (j, bj) in b.iter().enumerate() {
            acc = &acc + &Fraction::new(&binom * bj.numer(), bj.denom().clone()).expect("finite");
            binom = binom * (m + 1 - j) / (j + 1);
        }
        // binom now equals C(m+1, m) = m+1
        b.push(-&Fraction::new(acc.numer().clone(), acc.denom() * binom).expect("finite"));
    }
    b.into_iter().step_by(2).collect()
}
