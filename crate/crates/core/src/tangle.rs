//! Rational tangle calculus: twist words, their fractions, tangle sums and
//! the endpoint pairing of a rational tangle.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// `count` signed half-twists about one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Twist {
    pub axis: Axis,
    pub count: i64,
}

impl Twist {
    pub fn horizontal(count: i64) -> Self {
        Twist {
            axis: Axis::Horizontal,
            count,
        }
    }

    pub fn vertical(count: i64) -> Self {
        Twist {
            axis: Axis::Vertical,
            count,
        }
    }
}

/// A rational tangle diagram as a sequence of twist instructions, applied
/// left to right.
///
/// The first move is an elementary tangle: `h k` is the integral tangle `[k]`
/// and `v k` the vertical tangle `1/[k]`. Every later horizontal move twists
/// the right-hand endpoints (`f ↦ f + k`) and every later vertical move twists
/// the bottom endpoints (`f ↦ 1/(k + 1/f)`). The empty word is the 0-tangle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistWord {
    pub moves: Vec<Twist>,
}

impl TwistWord {
    pub fn new(moves: Vec<Twist>) -> Self {
        TwistWord { moves }
    }

    pub fn push(&mut self, twist: Twist) {
        self.moves.push(twist);
    }

    pub fn then(mut self, twist: Twist) -> Self {
        self.push(twist);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// The tangle fraction of the diagram.
    pub fn fraction(&self) -> Fraction {
        fraction_of(self)
    }

    /// A word whose fraction is `f`, read off the continued-fraction
    /// expansion `a0 + 1/(a1 + 1/(... + 1/ak))`: the innermost term first,
    /// axes alternating so that `a0` is the final horizontal move.
    pub fn from_fraction(f: &Fraction) -> Self {
        if f.is_infinite() {
            return TwistWord::new(vec![Twist::vertical(0)]);
        }
        let mut terms = Vec::new();
        let (mut p, mut q) = (f.numer().clone(), f.denom().clone());
        while !q.is_zero() {
            let (a, r) = p.div_mod_floor(&q);
            terms.push(a);
            p = q;
            q = r;
        }
        let moves = terms
            .iter()
            .enumerate()
            .rev()
            .map(|(depth, a)| {
                let count = i64::try_from(a).expect("continued fraction term fits in i64");
                if depth % 2 == 0 {
                    Twist::horizontal(count)
                } else {
                    Twist::vertical(count)
                }
            })
            .collect();
        TwistWord::new(moves)
    }
}

impl From<Vec<Twist>> for TwistWord {
    fn from(moves: Vec<Twist>) -> Self {
        TwistWord { moves }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = match m.axis {
                Axis::Horizontal => 'h',
                Axis::Vertical => 'v',
            };
            write!(f, "{c}{}", m.count)?;
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    /// Parses `"v7 h2 v-3"`.
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                let mut chars = tok.chars();
                let axis = match chars.next() {
                    Some('h' | 'H') => Axis::Horizontal,
                    Some('v' | 'V') => Axis::Vertical,
                    _ => return Err(Error::Parse(format!("bad twist {tok:?}"))),
                };
                let count = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad twist count in {tok:?}")))?;
                Ok(Twist { axis, count })
            })
            .collect::<Result<Vec<_>>>()
            .map(TwistWord::new)
    }
}

/// Evaluates the tangle fraction of a twist word.
pub fn fraction_of(word: &TwistWord) -> Fraction {
    let mut moves = word.moves.iter();
    let Some(first) = moves.next() else {
        return Fraction::zero();
    };
    let seed = match first.axis {
        Axis::Horizontal => Fraction::integer(first.count),
        Axis::Vertical => Fraction::new(1, first.count).expect("1/k is never 0/0"),
    };
    moves.fold(seed, |f, m| apply_twist(&f, m))
}

fn apply_twist(f: &Fraction, m: &Twist) -> Fraction {
    let k = Fraction::integer(m.count);
    match m.axis {
        Axis::Horizontal => f + &k,
        Axis::Vertical => (&k + &f.recip()).recip(),
    }
}

/// Two rational tangles are isotopic exactly when their fractions agree.
pub fn are_equivalent(w1: &TwistWord, w2: &TwistWord) -> bool {
    fraction_of(w1) == fraction_of(w2)
}

/// Result of adding two rational tangles side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangleSum {
    Rational(Fraction),
    /// Neither summand integral; the sum is a genuine non-rational 2-tangle.
    NonRational,
}

impl TangleSum {
    pub fn is_rational(&self) -> bool {
        matches!(self, TangleSum::Rational(_))
    }

    pub fn fraction(&self) -> Option<&Fraction> {
        match self {
            TangleSum::Rational(f) => Some(f),
            TangleSum::NonRational => None,
        }
    }
}

/// Adds two finite tangle fractions. The sum is rational iff one summand is
/// integral.
pub fn add_tangles(f1: &Fraction, f2: &Fraction) -> Result<TangleSum> {
    if f1.is_infinite() || f2.is_infinite() {
        return Err(Error::InfinityAddition);
    }
    if f1.is_integral() || f2.is_integral() {
        Ok(TangleSum::Rational(f1 + f2))
    } else {
        Ok(TangleSum::NonRational)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoint {
    NW,
    NE,
    SW,
    SE,
}

impl Endpoint {
    pub const ALL: [Endpoint; 4] = [Endpoint::NW, Endpoint::NE, Endpoint::SW, Endpoint::SE];
}

/// Which boundary points of a rational tangle are joined by its two arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndpointPairing {
    /// NW–NE and SW–SE.
    Zero,
    /// NW–SW and NE–SE.
    Infinity,
    /// NW–SE and NE–SW.
    One,
}

impl EndpointPairing {
    pub fn partner(self, e: Endpoint) -> Endpoint {
        use Endpoint::*;
        match (self, e) {
            (EndpointPairing::Zero, NW) => NE,
            (EndpointPairing::Zero, NE) => NW,
            (EndpointPairing::Zero, SW) => SE,
            (EndpointPairing::Zero, SE) => SW,
            (EndpointPairing::Infinity, NW) => SW,
            (EndpointPairing::Infinity, SW) => NW,
            (EndpointPairing::Infinity, NE) => SE,
            (EndpointPairing::Infinity, SE) => NE,
            (EndpointPairing::One, NW) => SE,
            (EndpointPairing::One, SE) => NW,
            (EndpointPairing::One, NE) => SW,
            (EndpointPairing::One, SW) => NE,
        }
    }

    pub fn arcs(self) -> [(Endpoint, Endpoint); 2] {
        use Endpoint::*;
        match self {
            EndpointPairing::Zero => [(NW, NE), (SW, SE)],
            EndpointPairing::Infinity => [(NW, SW), (NE, SE)],
            EndpointPairing::One => [(NW, SE), (NE, SW)],
        }
    }
}

/// The arc pattern of the rational tangle with fraction `f`, read off the
/// parities of numerator and denominator.
pub fn endpoint_pairing(f: &Fraction) -> EndpointPairing {
    match (f.numer().is_even(), f.denom().is_even()) {
        (true, _) => EndpointPairing::Zero,
        (false, true) => EndpointPairing::Infinity,
        (false, false) => EndpointPairing::One,
    }
}
