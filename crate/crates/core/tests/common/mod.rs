//! Oracles shared by the integration suites. None of these call into the
//! code paths they are used to check.

#![allow(dead_code)]

use std::collections::HashMap;

use montesinos::tangle::{Axis, Twist};
use montesinos::{Fraction, Precision, Real, TwistWord};
use num_bigint::BigUint;
use num_traits::One;

pub const NW: usize = 0;
pub const NE: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

/// Traces the two arcs of a twist-word diagram.
///
/// Four strand ends start at the four corners, joined as the 0-tangle
/// (NW–NE, SW–SE) or, when the word opens with a vertical move, as the
/// ∞-tangle (NW–SW, NE–SE). A horizontal half-twist exchanges whatever sits
/// at NE and SE; a vertical half-twist exchanges SW and SE. Returns, for each
/// corner, the corner its arc ends at.
pub fn trace_strands(word: &TwistWord) -> [usize; 4] {
    // at[corner] = strand end currently sitting there; ends 0..4.
    let mut at = [0usize, 1, 2, 3];
    let opens_vertical = word.moves.first().is_some_and(|m| m.axis == Axis::Vertical);
    let arc_partner: [usize; 4] = if opens_vertical {
        [2, 3, 0, 1]
    } else {
        [1, 0, 3, 2]
    };
    for m in &word.moves {
        let swaps = m.count.unsigned_abs() % 2;
        for _ in 0..swaps {
            match m.axis {
                Axis::Horizontal => at.swap(NE, SE),
                Axis::Vertical => at.swap(SW, SE),
            }
        }
    }
    let mut corner_of = [0usize; 4];
    for (corner, &end) in at.iter().enumerate() {
        corner_of[end] = corner;
    }
    let mut partner = [0usize; 4];
    for corner in 0..4 {
        partner[corner] = corner_of[arc_partner[at[corner]]];
    }
    partner
}

/// Labels a traced pairing: "zero" (NW–NE), "infinity" (NW–SW) or "one" (NW–SE).
pub fn traced_kind(partner: &[usize; 4]) -> &'static str {
    match partner[NW] {
        NE => "zero",
        SW => "infinity",
        SE => "one",
        _ => unreachable!("an arc never returns to its start"),
    }
}

/// Counts link components of the cyclic closure of explicit tangle
/// diagrams using union–find over all 4m corners.
pub fn traced_components(words: &[TwistWord]) -> usize {
    let m = words.len();
    let mut parent: Vec<usize> = (0..4 * m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for (i, w) in words.iter().enumerate() {
        let partner = trace_strands(w);
        for (c, &p) in partner.iter().enumerate() {
            union(&mut parent, 4 * i + c, 4 * i + p);
        }
        let j = (i + 1) % m;
        union(&mut parent, 4 * i + NE, 4 * j + NW);
        union(&mut parent, 4 * i + SE, 4 * j + SW);
    }
    let mut roots: Vec<usize> = (0..4 * m).map(|x| find(&mut parent, x)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// The diagram of a vertical tangle `1/t`.
pub fn vertical_word(t: i64) -> TwistWord {
    TwistWord::new(vec![Twist::vertical(t)])
}

/// Whether `b` is a rotation or reflected rotation of `a`.
pub fn dihedral_related<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    let len = a.len();
    if len != b.len() {
        return false;
    }
    (0..len).any(|r| {
        (0..len).all(|k| a[(r + k) % len] == b[k]) || (0..len).all(|k| a[(r + len - k) % len] == b[k])
    })
}

/// Counts classes of `seqs` under `related` by a quadratic scan.
pub fn count_classes<T>(seqs: &[T], related: impl Fn(&T, &T) -> bool) -> usize {
    let mut reps: Vec<&T> = Vec::new();
    for s in seqs {
        if !reps.iter().any(|r| related(r, s)) {
            reps.push(s);
        }
    }
    reps.len()
}

/// Every permutation of `items` (duplicates included), by Heap's algorithm.
pub fn all_permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut a = items.to_vec();
    let n = a.len();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Assigns each item the index of its class, computed from an explicit
/// relation by a quadratic scan. Returns the partition as a canonical map.
pub fn partition_by_relation<T>(items: &[T], related: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    let mut class = vec![0; items.len()];
    for (i, it) in items.iter().enumerate() {
        match reps.iter().position(|&r| related(&items[r], it)) {
            Some(c) => class[i] = c,
            None => {
                class[i] = reps.len();
                reps.push(i);
            }
        }
    }
    class
}

/// Relabels a class assignment so two partitions can be compared with `==`.
pub fn canonical_partition<K: std::hash::Hash + Eq>(labels: impl IntoIterator<Item = K>) -> Vec<usize> {
    let mut seen: HashMap<K, usize> = HashMap::new();
    labels
        .into_iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k).or_insert(next)
        })
        .collect()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `ln` of an exact big integer via its decimal expansion.
pub fn ln_big(v: &BigUint, prec: Precision) -> Real {
    Real::parse(&v.to_string(), prec).ln()
}

/// Lobachevsky function `Λ(θ) = −∫₀^θ ln|2 sin t| dt`, by splitting off the
/// logarithmic singularity, `ln(2 sin t) = ln(2t) + ln(sin t / t)`, and
/// integrating the smooth remainder with Romberg extrapolation.
pub fn lobachevsky(theta: &Real, prec: Precision, levels: usize) -> Real {
    let two = Real::from_i64(2, prec);
    let one = Real::from_i64(1, prec);
    let singular = theta * &((&two * theta).ln() - &one);
    let g = |t: &Real| -> Real {
        if !t.is_positive() {
            Real::from_i64(0, prec)
        } else {
            (t.sin() / t).ln()
        }
    };
    let mut table: Vec<Vec<Real>> = Vec::with_capacity(levels);
    let mut h = theta.clone();
    let mut trapezoid = (g(&Real::from_i64(0, prec)) + g(theta)) * &h / two.clone();
    table.push(vec![trapezoid.clone()]);
    for level in 1..levels {
        let panels = 1u64 << (level - 1);
        h = &h / &two;
        let mut mid_sum = Real::from_i64(0, prec);
        for k in 0..panels {
            let t = &h * &Real::from_u64(2 * k + 1, prec);
            mid_sum = mid_sum + g(&t);
        }
        trapezoid = &trapezoid / &two + &h * &mid_sum;
        let mut row = vec![trapezoid.clone()];
        let mut factor = Real::from_i64(1, prec);
        for j in 1..=level {
            factor = factor * Real::from_i64(4, prec);
            let prev = &table[level - 1][j - 1];
            let cur = &row[j - 1];
            let next = cur + &((cur - prev) / (&factor - &one));
            row.push(next);
        }
        table.push(row);
    }
    let smooth = table.last().unwrap().last().unwrap().clone();
    -(singular + smooth)
}

/// `n ln n − n + ½ ln(2πn) + 1/(12n) − 1/(360n³)`.
pub fn stirling_two_terms(n: u64, prec: Precision) -> Real {
    let x = Real::from_u64(n, prec);
    let one = Real::from_i64(1, prec);
    let two_pi_n = Real::from_i64(2, prec) * Real::pi(prec) * &x;
    &x * &(x.ln() - &one) + two_pi_n.ln() / Real::from_i64(2, prec)
        + (Real::from_i64(12, prec) * &x).recip()
        - (Real::from_i64(360, prec) * &x * &x * &x).recip()
}

pub fn frac(s: &str) -> Fraction {
    s.parse().unwrap()
}
