//! Log-domain certification that the mutant count `(2n)!/2` of `K_{2n+1}`
//! beats `v^(v/8)` at the volume upper bound `v = (4n+2)·v_oct`, together
//! with every intermediate inequality of the chain
//!
//! ```text
//! (2n)!/2 > (2n/e)^{2n}
//!         ≥ (v/(2e·v_oct) − 1/e)^{v/(2·v_oct) − 1}
//!         > (v/20 − 1/e)^{v/7.5 − 1}
//! ```
//!
//! All comparisons are made on logarithms. A difference smaller than
//! [`TIE_MARGIN`] is reported as indeterminate rather than resolved.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::real::{Precision, Real};
use crate::volume::{log_factorial, v_oct, EXPORT_DIGITS};

/// Comparisons within this distance of equality are indeterminate.
pub const TIE_MARGIN: &str = "1e-20";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

/// One inequality `lhs (>|≥) rhs`, both sides as natural logarithms.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub label: &'static str,
    pub relation: Relation,
    pub lhs: Real,
    pub rhs: Real,
    pub verdict: Verdict,
}

impl ChainStep {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Clone, Debug)]
pub struct GrowthCertificate {
    pub n: u64,
    /// `(4n+2)·v_oct`.
    pub v_upper: Real,
    /// `ln((2n)!/2)`.
    pub log_count: Real,
    /// `(v/8)·ln v` at `v = v_upper`.
    pub log_target: Real,
    pub verdict: Verdict,
    pub chain: Vec<ChainStep>,
}

impl GrowthCertificate {
    /// The final claim `(2n)!/2 ≥ v^(v/8)`; an indeterminate comparison
    /// does not hold.
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            n: self.n,
            v_upper: self.v_upper.to_decimal(EXPORT_DIGITS),
            log_count: self.log_count.to_decimal(EXPORT_DIGITS),
            log_target: self.log_target.to_decimal(EXPORT_DIGITS),
            holds: self.holds(),
            chain: self
                .chain
                .iter()
                .map(|s| StepJson {
                    label: s.label.to_string(),
                    lhs: s.lhs.to_decimal(EXPORT_DIGITS),
                    rhs: s.rhs.to_decimal(EXPORT_DIGITS),
                    holds: s.holds(),
                })
                .collect(),
        }
    }
}

/// Export form of a certificate; reals are 30-digit decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: u64,
    pub v_upper: String,
    pub log_count: String,
    pub log_target: String,
    pub holds: bool,
    pub chain: Vec<StepJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

pub const STEP_STIRLING: &str = "ln (2n)! >= ln(sqrt(4 pi n) (2n/e)^(2n))";
pub const STEP_COUNT: &str = "ln((2n)!/2) > ln((2n/e)^(2n))";
pub const STEP_VOLUME: &str =
    "ln((2n/e)^(2n)) >= ln((v/(2e v_oct) - 1/e)^(v/(2 v_oct) - 1))";
pub const STEP_NUMERIC: &str =
    "ln((v/(2e v_oct) - 1/e)^(v/(2 v_oct) - 1)) > ln((v/20 - 1/e)^(v/7.5 - 1))";
pub const STEP_FINAL: &str = "ln((2n)!/2) >= (v/8) ln v";

/// Labels of every reported step, in chain order.
pub const CHAIN_LABELS: [&str; 5] = [STEP_STIRLING, STEP_COUNT, STEP_VOLUME, STEP_NUMERIC, STEP_FINAL];

/// Constants shared by every certificate at one precision.
#[derive(Clone, Debug)]
pub struct GrowthContext {
    prec: Precision,
    v_oct: Real,
    pi: Real,
    ln2: Real,
    inv_e: Real,
    margin: Real,
}

impl GrowthContext {
    pub fn new(prec: Precision) -> Self {
        let e = Real::e(prec);
        GrowthContext {
            v_oct: v_oct(prec),
            pi: Real::pi(prec),
            ln2: Real::from_i64(2, prec).ln(),
            inv_e: e.recip(),
            margin: Real::parse(TIE_MARGIN, prec),
            prec,
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn v_oct(&self) -> &Real {
        &self.v_oct
    }

    fn int(&self, k: u64) -> Real {
        Real::from_u64(k, self.prec)
    }

    /// Strict and non-strict relations only differ at exact ties, which the
    /// margin already turns into `Indeterminate`.
    fn compare(&self, lhs: &Real, rhs: &Real) -> Verdict {
        let diff = lhs - rhs;
        if diff.abs() < self.margin {
            Verdict::Indeterminate
        } else if diff.is_positive() {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// `F(n) = ln((2n)!/2) − (v/8)·ln v` at `v = (4n+2)·v_oct`.
    pub fn growth_margin(&self, n: u64) -> Real {
        let log_count = log_factorial(2 * n, self.prec) - &self.ln2;
        let v = &self.int(4 * n + 2) * &self.v_oct;
        log_count - &(&v / &self.int(8)) * &v.ln()
    }

    /// Evaluates every chain step and the final claim at `n ≥ 2`.
    pub fn certificate(&self, n: u64) -> Result<GrowthCertificate> {
        if n < 2 {
            return Err(Error::FamilyIndex { n, min: 2 });
        }
        let two_n = self.int(2 * n);
        let one = self.int(1);
        let ln_fact = log_factorial(2 * n, self.prec);
        let log_count = &ln_fact - &self.ln2;
        let upper_oct = Fraction::integer(4 * n as i64 + 2);
        let v_upper = Real::from_fraction(&upper_oct, self.prec) * &self.v_oct;

        // (2n)! ≥ √(4πn)·(2n/e)^{2n}
        let ln_power = &two_n * &(two_n.ln() - &one);
        let stirling = (&self.int(4) * &self.pi * &self.int(n)).ln() / self.int(2) + &ln_power;
        let step_stirling = self.step(STEP_STIRLING, Relation::GreaterEq, ln_fact.clone(), stirling);

        // (2n)!/2 > (2n/e)^{2n}
        let step_count = self.step(STEP_COUNT, Relation::Greater, log_count.clone(), ln_power.clone());

        // Both sides have the shape (a/e)^b. With v/v_oct = u exactly rational
        // the right side is a = b = u/2 − 1, so equality with a = b = 2n is
        // decided in exact arithmetic.
        let half_u_minus_one = &(&upper_oct + &Fraction::integer(-2))
            * &Fraction::new(1, 2).expect("1/2");
        let volume_rhs = {
            let b = Real::from_fraction(&half_u_minus_one, self.prec);
            let base = &v_upper / &(self.int(2) * &self.v_oct) * &self.inv_e - &self.inv_e;
            b * base.ln()
        };
        let volume_verdict = if half_u_minus_one == Fraction::integer(2 * n as i64) {
            Verdict::Holds
        } else {
            self.compare(&ln_power, &volume_rhs)
        };
        let step_volume = ChainStep {
            label: STEP_VOLUME,
            relation: Relation::GreaterEq,
            lhs: ln_power.clone(),
            rhs: volume_rhs.clone(),
            verdict: volume_verdict,
        };

        // ... > (v/20 − 1/e)^{v/7.5 − 1}
        let base = &v_upper / &self.int(20) - &self.inv_e;
        let exponent = &v_upper * &Real::parse("2", self.prec) / self.int(15) - &one;
        let numeric_rhs = if base.is_positive() {
            exponent * base.ln()
        } else {
            // Not reached for n ≥ 2 (v ≥ 10·v_oct); keep the step honest anyway.
            Real::parse("NaN", self.prec)
        };
        let step_numeric = if numeric_rhs.is_finite() {
            self.step(STEP_NUMERIC, Relation::Greater, volume_rhs, numeric_rhs)
        } else {
            ChainStep {
                label: STEP_NUMERIC,
                relation: Relation::Greater,
                lhs: volume_rhs,
                rhs: numeric_rhs,
                verdict: Verdict::Indeterminate,
            }
        };

        let log_target = &(&v_upper / &self.int(8)) * &v_upper.ln();
        let step_final = self.step(STEP_FINAL, Relation::GreaterEq, log_count.clone(), log_target.clone());
        let verdict = step_final.verdict;

        Ok(GrowthCertificate {
            n,
            v_upper,
            log_count,
            log_target,
            verdict,
            chain: vec![step_stirling, step_count, step_volume, step_numeric, step_final],
        })
    }

    fn step(&self, label: &'static str, relation: Relation, lhs: Real, rhs: Real) -> ChainStep {
        let verdict = self.compare(&lhs, &rhs);
        ChainStep {
            label,
            relation,
            lhs,
            rhs,
            verdict,
        }
    }

    /// Certificates for every `n` in `range`, computed in parallel and
    /// returned in order.
    pub fn scan(&self, range: std::ops::RangeInclusive<u64>) -> Result<Vec<GrowthCertificate>> {
        range
            .into_par_iter()
            .map(|n| self.certificate(n))
            .collect()
    }
}

/// Evaluates [`GrowthContext::certificate`] at a fresh context.
pub fn growth_certificate(n: u64, prec: Precision) -> Result<GrowthCertificate> {
    GrowthContext::new(prec).certificate(n)
}

/// For each chain label, the least `n` in the scan from which that step
/// holds through the end of the scan (`None` if it fails at the last `n`).
pub fn step_thresholds(certs: &[GrowthCertificate]) -> Vec<(&'static str, Option<u64>)> {
    CHAIN_LABELS
        .iter()
        .enumerate()
        .map(|(i, &label)| {
            let mut threshold = None;
            for cert in certs.iter().rev() {
                if cert.chain[i].holds() {
                    threshold = Some(cert.n);
                } else {
                    break;
                }
            }
            (label, threshold)
        })
        .collect()
}

/// The least `n₀ ≥ 2` with `(2n₀)!/2 ≥ v^(v/8)` at `v = (4n₀+2)·v_oct`,
/// with the evidence that it is least and that the claim persists.
#[derive(Clone, Debug)]
pub struct GrowthThreshold {
    pub n0: u64,
    /// `F(n₀ − 1) < 0`.
    pub margin_before: Real,
    /// `F(n₀) ≥ 0`.
    pub margin_at: Real,
    /// Largest `n` at which discrete convexity of `F` was checked directly;
    /// above it convexity follows from the quadratic bound.
    pub convexity_checked_to: u64,
    pub bisection_steps: u32,
}

/// Locates `n₀` by bisection on the sign of
/// `F(n) = ln((2n)!/2) − (v/8) ln v`.
///
/// `F` is discretely convex on `n ≥ 2`: its second difference is at least
/// `ln(1 + 2/(2n−1)) + ln(1 + 1/n) − v_oct/(2n−1)`, and the lower bound
/// `2/(2n+1) + 1/(n+1) − c/(2n−1)` is positive once the quadratic
/// `(8 − 2c)n² + (2 − 3c)n − (3 + c)` (`c = v_oct`) is, which happens past
/// its larger root. Below that root the second differences are evaluated
/// directly. With `F(2) < 0`, convexity makes `{n : F(n) ≥ 0}` an up-set, so
/// bisection finds its least element.
pub fn find_growth_threshold(ctx: &GrowthContext) -> Result<GrowthThreshold> {
    let c = ctx.v_oct.clone();
    let root_bound = {
        let a = ctx.int(8) - &(ctx.int(2) * &c);
        let b = ctx.int(2) - &(ctx.int(3) * &c);
        let cc = -(ctx.int(3) + &c);
        if !a.is_positive() {
            return Err(Error::Invariant("convexity bound has non-positive leading term".into()));
        }
        let disc = &b * &b - &(ctx.int(4) * &a * &cc);
        (-b + disc.sqrt()) / (ctx.int(2) * &a)
    };
    let checked_to = root_bound.to_f64().ceil() as u64 + 1;
    for n in 3..=checked_to {
        let second = ctx.growth_margin(n + 1) - &(ctx.int(2) * &ctx.growth_margin(n))
            + &ctx.growth_margin(n - 1);
        if second < ctx.margin {
            return Err(Error::Invariant(format!(
                "second difference of the growth margin not positive at n = {n}"
            )));
        }
    }

    let mut lo = 2u64;
    if !ctx.growth_margin(lo).is_negative() {
        return Ok(GrowthThreshold {
            n0: 2,
            margin_before: Real::parse("NaN", ctx.prec),
            margin_at: ctx.growth_margin(2),
            convexity_checked_to: checked_to,
            bisection_steps: 0,
        });
    }
    let mut hi = 4u64;
    let mut steps = 0;
    while ctx.growth_margin(hi).is_negative() {
        lo = hi;
        hi = hi.checked_mul(2).ok_or_else(|| {
            Error::Invariant("growth margin still negative at u64 range".into())
        })?;
        steps += 1;
    }
    // Invariant: F(lo) < 0 ≤ F(hi).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ctx.growth_margin(mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    let margin_before = ctx.growth_margin(lo);
    let margin_at = ctx.growth_margin(hi);
    if margin_at.abs() < ctx.margin || margin_before.abs() < ctx.margin {
        return Err(Error::Invariant(format!(
            "growth threshold at n = {hi} is within the tie margin"
        )));
    }
    Ok(GrowthThreshold {
        n0: hi,
        margin_before,
        margin_at,
        convexity_checked_to: checked_to,
        bisection_steps: steps,
    })
}

/// Result of re-checking the final claim on `n₀..=n₀+span`.
#[derive(Clone, Debug)]
pub struct PersistenceScan {
    pub start: u64,
    pub end: u64,
    /// Every `n` in the range where the final claim did not hold.
    pub violations: Vec<u64>,
    pub thresholds: Vec<(&'static str, Option<u64>)>,
    pub first: GrowthCertificate,
    pub last: GrowthCertificate,
}

pub fn persistence_scan(ctx: &GrowthContext, start: u64, span: u64) -> Result<PersistenceScan> {
    let end = start
        .checked_add(span)
        .ok_or_else(|| Error::Invariant("scan range overflows".into()))?;
    let certs = ctx.scan(start..=end)?;
    let violations = certs.iter().filter(|c| !c.holds()).map(|c| c.n).collect();
    let thresholds = step_thresholds(&certs);
    let first = certs.first().expect("nonempty range").clone();
    let last = certs.last().expect("nonempty range").clone();
    Ok(PersistenceScan {
        start,
        end,
        violations,
        thresholds,
        first,
        last,
    })
}
