//! Census runs over the families `K_{2n+1}`, JSON-lines export/import of
//! the resulting records, and batch classification of user-supplied links.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::growth::GrowthContext;
use crate::montesinos::{
    build_family, component_count, is_alternating_vertical, is_hyperbolic_witness, normalize,
    FamilyParams, MontesinosLink,
};
use crate::mutation::{
    canonical_key, distinct_count_formula, enumerate_mutant_classes, mutation_is_unlinked,
    sphere_is_essential, CanonicalKey, MutationIndex,
};
use crate::real::Precision;
use crate::volume::{volume_bounds, VolumeBoundRecord};

/// One family index with its class counts, volume interval and growth verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: u64,
    pub fractions: String,
    #[serde(with = "decimal_biguint")]
    pub knot_class_count: BigUint,
    #[serde(with = "decimal_biguint")]
    pub formula_count: BigUint,
    #[serde(with = "decimal_biguint")]
    pub closed_class_count: BigUint,
    pub bounds: VolumeBoundRecord,
    pub closed_upper_oct: Fraction,
    pub growth_holds: bool,
    /// Whether `knot_class_count` came from exhaustive enumeration.
    pub enumerated: bool,
}

impl CensusRecord {
    /// Checks the record's internal consistency.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Invariant(format!("record n = {}: {what}", self.n)));
        if self.enumerated && self.knot_class_count != self.formula_count {
            return bad("enumerated class count differs from (2n)!/2");
        }
        if self.closed_class_count != self.formula_count {
            return bad("closed-manifold count differs from the knot count");
        }
        if self.closed_upper_oct != Fraction::integer(4 * self.n as i64 + 2) {
            return bad("closed volume bound is not (4n+2)·v_oct");
        }
        if self.bounds.lower_oct >= self.bounds.upper_oct {
            return bad("volume interval is empty");
        }
        Ok(())
    }
}

mod decimal_biguint {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks every predicate the construction relies on for `K_{2n+1}`:
/// one component, the hyperbolicity witness, alternating, and every
/// mutation sphere essential and unlinked.
pub fn verify_family(m: &MontesinosLink) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(format!("{m}: {what}")));
    let components = component_count(m);
    if components != 1 {
        return fail(format!("{components} components, expected a knot"));
    }
    if !is_hyperbolic_witness(m)? {
        return fail("hyperbolicity witness fails".into());
    }
    if !is_alternating_vertical(m) {
        return fail("diagram is not alternating".into());
    }
    for idx in MutationIndex::all(m) {
        if !sphere_is_essential(m, idx)? {
            return fail(format!("sphere S_{} is not essential", idx.0));
        }
        if !mutation_is_unlinked(m, idx)? {
            return fail(format!("mutation along S_{} is not unlinked", idx.0));
        }
    }
    Ok(())
}

/// Builds one record. Enumerates when `2n+1 ≤ enumerate_cap`.
pub fn census_record(n: u64, enumerate_cap: usize, ctx: &GrowthContext) -> Result<CensusRecord> {
    let family = build_family(FamilyParams::new(n)?)?;
    verify_family(&family)?;
    let formula_count = distinct_count_formula(n)?;
    let enumerated = family.len() <= enumerate_cap;
    let knot_class_count = if enumerated {
        let classes = enumerate_mutant_classes(&family, enumerate_cap)?;
        let count = BigUint::from(classes.len());
        if count != formula_count {
            return Err(Error::Invariant(format!(
                "n = {n}: enumerated {count} classes, formula gives {formula_count}"
            )));
        }
        count
    } else {
        formula_count.clone()
    };
    let bounds = volume_bounds(n, ctx.precision())?;
    let growth = ctx.certificate(n)?;
    let record = CensusRecord {
        n,
        fractions: family.to_string(),
        knot_class_count,
        closed_class_count: formula_count.clone(),
        formula_count,
        closed_upper_oct: bounds.upper_oct.clone(),
        bounds: bounds.to_record(),
        growth_holds: growth.holds(),
        enumerated,
    };
    record.validate()?;
    Ok(record)
}

/// Records for `n_min..=n_max`, computed in parallel and ordered by `n`.
pub fn run_census(
    n_min: u64,
    n_max: u64,
    enumerate_cap: usize,
    prec: Precision,
) -> Result<Vec<CensusRecord>> {
    if n_min < 2 {
        return Err(Error::FamilyIndex { n: n_min, min: 2 });
    }
    if n_max < n_min {
        return Err(Error::Parse(format!("empty range {n_min}..={n_max}")));
    }
    let ctx = GrowthContext::new(prec);
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| census_record(n, enumerate_cap, &ctx))
        .collect()
}

/// Writes one JSON object per line.
pub fn write_json_lines<W: Write>(records: &[CensusRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads JSON-lines records, skipping blank lines, and validates each.
pub fn read_json_lines<R: BufRead>(input: R) -> Result<Vec<CensusRecord>> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CensusRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        record.validate()?;
        records.push(record);
    }
    Ok(records)
}

pub fn render_table(records: &[CensusRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:>28}  {:>10}  {:>12}  {:>18}  {:>18}  {:>6}",
        "n", "classes", "enumerated", "bounds/v_oct", "lower", "upper", "growth"
    );
    for r in records {
        let oct = format!("[{}, {}]", short(&r.bounds.lower_oct), short(&r.bounds.upper_oct));
        let _ = writeln!(
            out,
            "{:>4}  {:>28}  {:>10}  {:>12}  {:>18.18}  {:>18.18}  {:>6}",
            r.n,
            r.knot_class_count,
            if r.enumerated { "yes" } else { "no" },
            oct,
            r.bounds.lower,
            r.bounds.upper,
            if r.growth_holds { "holds" } else { "-" }
        );
    }
    out
}

fn short(f: &Fraction) -> String {
    if f.is_integral() {
        f.numer().to_string()
    } else {
        f.to_string()
    }
}

/// Outcome for one input line of a classification batch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedLine {
    pub line: usize,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<CanonicalKey>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Input lines sharing one canonical key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroup {
    pub key: CanonicalKey,
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub lines: Vec<ClassifiedLine>,
    pub groups: Vec<ClassGroup>,
}

impl ClassifyReport {
    pub fn rejected(&self) -> usize {
        self.lines.iter().filter(|l| l.error.is_some()).count()
    }
}

fn classify_line(text: &str) -> Result<CanonicalKey> {
    let parsed: MontesinosLink = text.parse()?;
    let link = normalize(parsed.entries())?;
    canonical_key(&link)
}

/// Classifies one Montesinos link per line (blank lines and `#` comments
/// skipped). Lines that fail to parse or violate the classification
/// hypothesis get a per-line error; the rest are grouped by key.
pub fn classify_lines<R: BufRead>(input: R) -> std::io::Result<ClassifyReport> {
    let mut report = ClassifyReport::default();
    let mut groups: BTreeMap<CanonicalKey, Vec<usize>> = BTreeMap::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let number = i + 1;
        let entry = match classify_line(text) {
            Ok(key) => {
                groups.entry(key.clone()).or_default().push(number);
                ClassifiedLine {
                    line: number,
                    input: text.to_string(),
                    key: Some(key),
                    error: None,
                }
            }
            Err(e) => ClassifiedLine {
                line: number,
                input: text.to_string(),
                key: None,
                error: Some(e.to_string()),
            },
        };
        report.lines.push(entry);
    }
    report.groups = groups
        .into_iter()
        .map(|(key, lines)| ClassGroup { key, lines })
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_for_n2() {
        let records = run_census(2, 2, 11, Precision::default()).unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(r.knot_class_count, BigUint::from(12u32));
        assert!(r.enumerated);
        assert_eq!(r.bounds.lower_oct, "3/2".parse().unwrap());
        assert_eq!(r.bounds.upper_oct, Fraction::integer(10));
        assert_eq!(r.fractions, "(1/7,1/9,1/11,1/13,1/15)");
        assert!(!r.growth_holds);
    }

    #[test]
    fn cap_switches_to_formula() {
        let records = run_census(2, 6, 9, Precision::default()).unwrap();
        let ns: Vec<u64> = records.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![2, 3, 4, 5, 6]);
        assert!(records[..3].iter().all(|r| r.enumerated));
        assert!(records[3..].iter().all(|r| !r.enumerated));
        assert_eq!(records[2].knot_class_count, BigUint::from(20_160u32));
    }

    #[test]
    fn bad_ranges() {
        assert!(run_census(1, 3, 11, Precision::default()).is_err());
        assert!(run_census(4, 3, 11, Precision::default()).is_err());
    }

    #[test]
    fn validate_catches_inconsistency() {
        let mut r = run_census(2, 2, 11, Precision::default()).unwrap().remove(0);
        r.closed_class_count = BigUint::from(1u32);
        assert!(r.validate().is_err());
    }

    #[test]
    fn classify_groups_and_rejects() {
        let text = "\
(1/7,1/9,1/11,1/13,1/15)
(1/15,1/13,1/11,1/9,1/7)
# comment
(1/9,1/7,1/11,1/13,1/15)
(1/2,1/2,1/2)
not a link
";
        let report = classify_lines(text.as_bytes()).unwrap();
        assert_eq!(report.lines.len(), 5);
        assert_eq!(report.groups.len(), 2);
        assert_eq!(report.rejected(), 2);
        let grouped: Vec<Vec<usize>> = report.groups.iter().map(|g| g.lines.clone()).collect();
        assert!(grouped.contains(&vec![1, 2]));
        assert!(grouped.contains(&vec![4]));
        let half = &report.lines[3];
        assert!(half.error.as_ref().unwrap().contains("classification hypothesis"));
    }
}
