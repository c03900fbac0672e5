//! Montesinos links as cyclic sequences of rational tangle fractions, the
//! `K(1/7, 1/9, ..., 1/(4n+7))` families, and the diagrammatic predicates
//! used on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::tangle::{endpoint_pairing, Endpoint};

/// `K(p_1/q_1, ..., p_m/q_m)`: rational tangles joined in a cycle.
///
/// Values built through [`normalize`] (or the family builders) have no
/// integral, zero or infinite entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MontesinosLink {
    entries: Vec<Fraction>,
}

/// Index `n` of the family `K_{2n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub n: u64,
}

impl FamilyParams {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::FamilyIndex { n, min: 1 });
        }
        Ok(FamilyParams { n })
    }

    /// Number of tangles, `2n + 1`.
    pub fn tangle_count(&self) -> usize {
        2 * self.n as usize + 1
    }
}

impl MontesinosLink {
    /// Wraps entries without normalizing. Rejects empty input and entries
    /// that are zero or infinite.
    pub fn from_entries(entries: Vec<Fraction>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyLink);
        }
        if let Some(bad) = entries.iter().find(|f| f.is_infinite() || f.is_zero()) {
            return Err(Error::Parse(format!(
                "entry {bad} is not allowed in a Montesinos description"
            )));
        }
        Ok(MontesinosLink { entries })
    }

    pub fn entries(&self) -> &[Fraction] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Fraction> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ p_i/q_i`, invariant under normalization and dihedral moves.
    pub fn fraction_sum(&self) -> Fraction {
        self.entries.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.entries
            .iter()
            .all(|f| !f.is_infinite() && !f.is_zero() && !f.is_integral())
    }

    pub fn rotated(&self, k: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.rotate_left(k % self.len());
        MontesinosLink { entries }
    }

    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        MontesinosLink { entries }
    }

    pub(crate) fn with_entries_unchecked(entries: Vec<Fraction>) -> Self {
        MontesinosLink { entries }
    }
}

impl fmt::Display for MontesinosLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fraction_list(f, &self.entries)
    }
}

pub(crate) fn write_fraction_list(f: &mut fmt::Formatter<'_>, entries: &[Fraction]) -> fmt::Result {
    f.write_str("(")?;
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

pub(crate) fn parse_fraction_list(s: &str) -> Result<Vec<Fraction>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected \"(p/q,...)\", got {s:?}")))?;
    if inner.trim().is_empty() {
        return Err(Error::EmptyLink);
    }
    inner.split(',').map(str::parse).collect()
}

impl FromStr for MontesinosLink {
    type Err = Error;

    /// Parses `"(1/7,1/9,1/11)"`, whitespace allowed. The result is not
    /// normalized.
    fn from_str(s: &str) -> Result<Self> {
        MontesinosLink::from_entries(parse_fraction_list(s)?)
    }
}

impl Serialize for MontesinosLink {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MontesinosLink {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Absorbs integral entries into their right cyclic neighbour,
/// `(p_i, p_{i+1}/q_{i+1}) ↦ (p_i q_{i+1} + p_{i+1})/q_{i+1}`, until none
/// remain.
pub fn normalize(entries: &[Fraction]) -> Result<MontesinosLink> {
    if entries.is_empty() {
        return Err(Error::EmptyLink);
    }
    if entries.iter().any(Fraction::is_infinite) {
        return Err(Error::Parse(
            "the infinity tangle has no place in a Montesinos description".into(),
        ));
    }
    if entries.iter().all(Fraction::is_integral) {
        return Err(Error::DegenerateDescription);
    }
    let mut entries = entries.to_vec();
    while let Some(i) = entries.iter().position(Fraction::is_integral) {
        let next = (i + 1) % entries.len();
        // Adding an integer to a non-integral neighbour leaves it non-integral,
        // so the total number of integral entries drops by one each pass.
        entries[next] = &entries[i] + &entries[next];
        entries.remove(i);
    }
    Ok(MontesinosLink { entries })
}

/// `K_{2n+1} = K(1/7, 1/9, ..., 1/(2i+5), ..., 1/(4n+7))`.
pub fn build_family(params: FamilyParams) -> Result<MontesinosLink> {
    if params.n == 0 {
        return Err(Error::FamilyIndex { n: 0, min: 1 });
    }
    let entries = (1..=params.tangle_count() as i64)
        .map(|i| Fraction::vertical(2 * i + 5))
        .collect();
    Ok(MontesinosLink { entries })
}

/// `K(1/t_1, ..., 1/t_{2n+1})` with every `t_i` odd and greater than 6.
pub fn build_generalized(twists: &[i64]) -> Result<MontesinosLink> {
    if twists.len() < 3 || twists.len().is_multiple_of(2) {
        return Err(Error::InvalidTwists(format!(
            "length {} must be odd and at least 3",
            twists.len()
        )));
    }
    for (i, &t) in twists.iter().enumerate() {
        if t % 2 == 0 {
            return Err(Error::InvalidTwists(format!("t_{} even", i + 1)));
        }
        if t <= 6 {
            return Err(Error::InvalidTwists(format!("t_{} = {t} is not > 6", i + 1)));
        }
    }
    Ok(MontesinosLink {
        entries: twists.iter().map(|&t| Fraction::vertical(t)).collect(),
    })
}

/// Number of link components of the closed-up diagram.
///
/// Tangle `i` is glued to tangle `i+1` along `NE_i–NW_{i+1}` and
/// `SE_i–SW_{i+1}`, cyclically. Each boundary point then has exactly two
/// neighbours (its arc partner and its glued partner), so the components are
/// the cycles of that graph.
pub fn component_count(m: &MontesinosLink) -> usize {
    let len = m.len();
    let pairings: Vec<_> = m.entries.iter().map(endpoint_pairing).collect();
    let slot = |tangle: usize, e: Endpoint| 4 * tangle + e as usize;
    let mut seen = vec![false; 4 * len];
    let mut components = 0;
    for start in 0..4 * len {
        if seen[start] {
            continue;
        }
        components += 1;
        let (mut tangle, mut e) = (start / 4, Endpoint::ALL[start % 4]);
        loop {
            // Traverse the arc inside the tangle, then cross the gluing.
            seen[slot(tangle, e)] = true;
            let exit = pairings[tangle].partner(e);
            seen[slot(tangle, exit)] = true;
            (tangle, e) = match exit {
                Endpoint::NE => ((tangle + 1) % len, Endpoint::NW),
                Endpoint::SE => ((tangle + 1) % len, Endpoint::SW),
                Endpoint::NW => ((tangle + len - 1) % len, Endpoint::NE),
                Endpoint::SW => ((tangle + len - 1) % len, Endpoint::SE),
            };
            if seen[slot(tangle, e)] {
                break;
            }
        }
    }
    components
}

fn vertical_twist_counts(m: &MontesinosLink) -> Result<Vec<BigInt>> {
    m.entries
        .iter()
        .map(|f| f.vertical_twists().ok_or(Error::NonVerticalEntry))
        .collect()
}

/// At least two twist regions, each with at least six crossings; for a
/// diagram of vertical tangles every entry `1/t` is one region of `|t|`
/// crossings.
pub fn is_hyperbolic_witness(m: &MontesinosLink) -> Result<bool> {
    let twists = vertical_twist_counts(m)?;
    let six = BigInt::from(6);
    Ok(twists.len() >= 2 && twists.iter().all(|t| t.abs() >= six))
}

/// Every entry a positive vertical tangle `1/t`, so the standard diagram is
/// alternating.
pub fn is_alternating_vertical(m: &MontesinosLink) -> bool {
    m.entries
        .iter()
        .all(|f| f.vertical_twists().is_some_and(|t| t.is_positive()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(s: &str) -> MontesinosLink {
        s.parse().unwrap()
    }

    fn fr(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn fam(n: u64) -> MontesinosLink {
        build_family(FamilyParams::new(n).unwrap()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let already = link("(1/7,1/9,1/11)");
        assert_eq!(normalize(already.entries()).unwrap(), already);
        let absorbed = normalize(&[fr("2"), fr("1/9"), fr("1/11")]).unwrap();
        assert_eq!(absorbed, link("(19/9,1/11)"));
        let middle = normalize(&[fr("1/7"), fr("3"), fr("1/11")]).unwrap();
        assert_eq!(middle, link("(1/7,34/11)"));
    }

    #[test]
    fn normalize_wraps_cyclically() {
        // The last entry is absorbed into the first.
        let wrapped = normalize(&[fr("1/7"), fr("1/9"), fr("-1")]).unwrap();
        assert_eq!(wrapped, link("(-6/7,1/9)"));
        // Consecutive integers chain into the same neighbour.
        let chained = normalize(&[fr("1"), fr("2"), fr("1/5")]).unwrap();
        assert_eq!(chained, link("(16/5)"));
    }

    #[test]
    fn normalize_rejects_degenerate() {
        assert_eq!(
            normalize(&[fr("1"), fr("2")]),
            Err(Error::DegenerateDescription)
        );
        assert_eq!(
            Error::DegenerateDescription.to_string(),
            "degenerate Montesinos description"
        );
        assert_eq!(normalize(&[]), Err(Error::EmptyLink));
    }

    #[test]
    fn family_entries() {
        assert_eq!(fam(1), link("(1/7,1/9,1/11)"));
        assert_eq!(fam(2), link("(1/7,1/9,1/11,1/13,1/15)"));
        assert_eq!(fam(3).entries().last().unwrap(), &fr("1/19"));
        assert!(FamilyParams::new(0).is_err());
        assert!(build_family(FamilyParams { n: 0 }).is_err());
    }

    #[test]
    fn generalized_family() {
        assert_eq!(build_generalized(&[7, 9, 11]).unwrap(), fam(1));
        assert_eq!(
            build_generalized(&[7, 7, 7]).unwrap(),
            link("(1/7,1/7,1/7)")
        );
        let err = build_generalized(&[7, 8, 9]).unwrap_err();
        assert_eq!(err.to_string(), "t_2 even");
        assert!(build_generalized(&[7, 9]).is_err());
        assert!(build_generalized(&[7, 5, 9]).unwrap_err().to_string().contains("t_2"));
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_count(&fam(2)), 1);
        assert_eq!(component_count(&link("(1/2,1/2)")), 2);
        assert_eq!(component_count(&link("(1/7,1/7,1/7)")), 1);
        // Even number of odd vertical tangles closes into two components.
        assert_eq!(component_count(&link("(1/7,1/9)")), 2);
    }

    #[test]
    fn hyperbolicity_witness() {
        assert_eq!(is_hyperbolic_witness(&fam(1)), Ok(true));
        assert_eq!(is_hyperbolic_witness(&link("(1/7,1/3,1/11)")), Ok(false));
        assert_eq!(is_hyperbolic_witness(&link("(1/7)")), Ok(false));
        assert_eq!(is_hyperbolic_witness(&link("(1/7,-1/9)")), Ok(true));
        assert_eq!(
            is_hyperbolic_witness(&link("(2/7,1/9)")),
            Err(Error::NonVerticalEntry)
        );
    }

    #[test]
    fn alternating_vertical() {
        assert!(is_alternating_vertical(&fam(4)));
        assert!(!is_alternating_vertical(&link("(1/7,-1/9,1/11)")));
        assert!(!is_alternating_vertical(&link("(2/7,1/9,1/11)")));
    }

    #[test]
    fn text_format() {
        let m = link(" ( 1/7 , 1/9,1/11 ) ");
        assert_eq!(m.to_string(), "(1/7,1/9,1/11)");
        assert!("1/7,1/9".parse::<MontesinosLink>().is_err());
        assert!("()".parse::<MontesinosLink>().is_err());
        assert!("(1/0,1/7)".parse::<MontesinosLink>().is_err());
    }
}
