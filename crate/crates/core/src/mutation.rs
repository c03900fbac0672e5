//! Conway-sphere mutations on Montesinos links, the dihedral canonical form
//! that classifies them, and exhaustive enumeration of mutant classes.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::montesinos::{parse_fraction_list, write_fraction_list, MontesinosLink};
use crate::tangle::{endpoint_pairing, EndpointPairing};

/// Default bound on the number of entries [`enumerate_mutant_classes`] will
/// permute (11! ≈ 4·10⁷ permutations).
pub const DEFAULT_ENUMERATE_CAP: usize = 11;

// Packed keys use six bits per entry.
const PACK_BITS: u32 = 6;
const MAX_PACKED_LEN: usize = (u128::BITS / PACK_BITS) as usize;

/// The sphere `S_a` enclosing tangles `a` and `a+1` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationIndex(pub usize);

impl MutationIndex {
    fn validate(self, m: &MontesinosLink) -> Result<usize> {
        let max = m.len().saturating_sub(1);
        if self.0 == 0 || self.0 > max {
            return Err(Error::MutationIndex { index: self.0, max });
        }
        Ok(self.0 - 1)
    }

    /// All valid indices `1..=m-1` for a link with `m` entries.
    pub fn all(m: &MontesinosLink) -> impl Iterator<Item = MutationIndex> {
        (1..m.len()).map(MutationIndex)
    }
}

/// Mutation along `S_a` by the rotation about the vertical axis: the a-th
/// and (a+1)-th fractions trade places.
pub fn mutate(m: &MontesinosLink, idx: MutationIndex) -> Result<MontesinosLink> {
    let i = idx.validate(m)?;
    let mut entries = m.entries().to_vec();
    entries.swap(i, i + 1);
    Ok(MontesinosLink::with_entries_unchecked(entries))
}

/// Oertel's criterion: `S_a` is essential when each side bounds at least two
/// rational, non-integral tangles.
pub fn sphere_is_essential(m: &MontesinosLink, idx: MutationIndex) -> Result<bool> {
    let i = idx.validate(m)?;
    let non_integral = |f: &Fraction| !f.is_integral();
    let inside = m.entries()[i..=i + 1]
        .iter()
        .filter(|f| non_integral(f))
        .count();
    let outside = m
        .entries()
        .iter()
        .enumerate()
        .filter(|&(j, f)| j != i && j != i + 1 && non_integral(f))
        .count();
    Ok(inside >= 2 && outside >= 2)
}

/// The two marked-point pairs preserved by the mutation are unlinked when
/// both enclosed tangles join NW to SE and NE to SW.
pub fn mutation_is_unlinked(m: &MontesinosLink, idx: MutationIndex) -> Result<bool> {
    let i = idx.validate(m)?;
    Ok(m.entries()[i..=i + 1]
        .iter()
        .all(|f| endpoint_pairing(f) == EndpointPairing::One))
}

/// Complete invariant of a Montesinos link satisfying the classification
/// hypothesis: the dihedrally least sequence of residues mod 1, plus the
/// fraction sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub residues: Vec<Fraction>,
    pub total: Fraction,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fraction_list(f, &self.residues)?;
        write!(f, "|{}", self.total)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    /// Parses `"(1/7,1/9,1/11)|3/7"`.
    fn from_str(s: &str) -> Result<Self> {
        let (residues, total) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected \"residues|total\", got {s:?}")))?;
        Ok(CanonicalKey {
            residues: parse_fraction_list(residues)?,
            total: total.parse()?,
        })
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks `m ≥ 3`, all `q_j ≥ 2`, and `Σ 1/q_j ≤ m − 2`.
pub fn check_classification_hypothesis(m: &MontesinosLink) -> Result<()> {
    let fail = |why: String| Err(Error::ClassificationHypothesis(why));
    if m.len() < 3 {
        return fail(format!("needs at least 3 tangles, got {}", m.len()));
    }
    if let Some(f) = m
        .entries()
        .iter()
        .find(|f| f.is_infinite() || f.is_integral())
    {
        return fail(format!("entry {f} is not normalized"));
    }
    let reciprocal_sum: Fraction = m
        .entries()
        .iter()
        .map(|f| Fraction::new(1, f.denom().clone()).expect("nonzero denominator"))
        .sum();
    let bound = Fraction::integer(m.len() as i64 - 2);
    if reciprocal_sum > bound {
        return fail(format!("Σ 1/q_j = {reciprocal_sum} exceeds {bound}"));
    }
    Ok(())
}

/// Lexicographically least image of `seq` under rotations and reversal.
pub fn dihedral_min<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let len = seq.len();
    let mut best: Option<Vec<T>> = None;
    for reverse in [false, true] {
        for r in 0..len {
            let image: Vec<T> = (0..len)
                .map(|k| {
                    let j = if reverse {
                        (r + len - k) % len
                    } else {
                        (r + k) % len
                    };
                    seq[j].clone()
                })
                .collect();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn canonical_key(m: &MontesinosLink) -> Result<CanonicalKey> {
    check_classification_hypothesis(m)?;
    let residues: Vec<Fraction> = m
        .entries()
        .iter()
        .map(|f| f.fract().expect("finite entry"))
        .collect();
    Ok(CanonicalKey {
        residues: dihedral_min(&residues),
        total: m.fraction_sum(),
    })
}

/// `(2n)!/2`: the number of pairwise inequivalent mutants of `K_{2n+1}`.
pub fn distinct_count_formula(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::FamilyIndex { n, min: 2 });
    }
    let factorial = (1..=2 * n).fold(BigUint::one(), |acc, k| acc * k);
    Ok(factorial / 2u32)
}

/// Rearranges `seq` into the next permutation in lexicographic order;
/// returns `false` (leaving `seq` sorted) after the last one. Repeated
/// values are visited once per distinct arrangement.
fn next_permutation(seq: &mut [u8]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        seq.reverse();
        return false;
    };
    let j = seq
        .iter()
        .rposition(|&x| x > seq[i])
        .expect("a larger element exists right of i");
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

/// Dihedral minimum of a rank sequence, packed big-endian into a `u128` so
/// integer order is lexicographic order.
fn packed_dihedral_min(seq: &[u8]) -> u128 {
    let len = seq.len();
    let lowest = *seq.iter().min().expect("nonempty");
    let mut best = u128::MAX;
    for r in (0..len).filter(|&r| seq[r] == lowest) {
        let forward = (0..len).fold(0u128, |acc, k| {
            (acc << PACK_BITS) | u128::from(seq[(r + k) % len])
        });
        let backward = (0..len).fold(0u128, |acc, k| {
            (acc << PACK_BITS) | u128::from(seq[(r + len - k) % len])
        });
        best = best.min(forward).min(backward);
    }
    best
}

fn unpack(packed: u128, len: usize) -> impl Iterator<Item = usize> {
    let mask = (1u128 << PACK_BITS) - 1;
    (0..len).rev().map(move |k| ((packed >> (PACK_BITS * k as u32)) & mask) as usize)
}

/// All mutant classes reachable from `m`: the canonical keys of every
/// rearrangement of its entries, since adjacent transpositions generate the
/// full symmetric group.
pub fn enumerate_mutant_classes(m: &MontesinosLink, cap: usize) -> Result<BTreeSet<CanonicalKey>> {
    check_classification_hypothesis(m)?;
    let cap = cap.min(MAX_PACKED_LEN);
    if m.len() > cap {
        return Err(Error::EnumerationCap { len: m.len(), cap });
    }

    // Canonical keys depend only on the residues, and the total is the same
    // for every rearrangement, so permute residue ranks instead of fractions.
    let residues: Vec<Fraction> = m
        .entries()
        .iter()
        .map(|f| f.fract().expect("finite entry"))
        .collect();
    let mut distinct = residues.clone();
    distinct.sort();
    distinct.dedup();
    let mut ranks: Vec<u8> = residues
        .iter()
        .map(|r| distinct.binary_search(r).expect("present") as u8)
        .collect();
    ranks.sort_unstable();

    let packed = enumerate_packed(&ranks);
    let total = m.fraction_sum();
    Ok(packed
        .into_iter()
        .map(|p| CanonicalKey {
            residues: unpack(p, ranks.len()).map(|r| distinct[r].clone()).collect(),
            total: total.clone(),
        })
        .collect())
}

/// Streams every distinct arrangement of the sorted multiset `ranks`,
/// partitioned by two-element prefix across the rayon pool.
fn enumerate_packed(ranks: &[u8]) -> HashSet<u128> {
    let len = ranks.len();
    let prefix_len = len.min(2);
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    let mut first = ranks.to_vec();
    first.dedup();
    for &a in &first {
        let mut rest = ranks.to_vec();
        let pos = rest.iter().position(|&x| x == a).expect("present");
        rest.remove(pos);
        if prefix_len == 1 {
            prefixes.push(vec![a]);
            continue;
        }
        let mut second = rest.clone();
        second.dedup();
        for b in second {
            prefixes.push(vec![a, b]);
        }
    }

    prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut rest = ranks.to_vec();
            for x in &prefix {
                let pos = rest.iter().position(|y| y == x).expect("present");
                rest.remove(pos);
            }
            let mut seq = prefix.clone();
            seq.extend_from_slice(&rest);
            let mut keys = HashSet::new();
            loop {
                keys.insert(packed_dihedral_min(&seq));
                if !next_permutation(&mut seq[prefix.len()..]) {
                    break;
                }
            }
            keys
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        })
}
