//! Zelevinsky segments and multisegments.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{CharLabel, FormalCharacter, HalfInt};
use crate::error::{Error, Result};
use crate::parse;

/// `[chi nu^b, chi nu^{b+1}, ..., chi nu^e]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub label: CharLabel,
    pub b: HalfInt,
    pub e: HalfInt,
}

#[allow(clippy::len_without_is_empty)]
impl Segment {
    pub fn new(label: CharLabel, b: HalfInt, e: HalfInt) -> Result<Self> {
        if !b.same_lattice(e) {
            return Err(Error::InvalidSegment(format!(
                "end {e} and begin {b} differ by a non-integer"
            )));
        }
        if e < b {
            return Err(Error::InvalidSegment(format!("end {e} below begin {b}")));
        }
        Ok(Segment { label, b, e })
    }

    /// Trivial-label segment; panics on malformed bounds (for literals).
    pub fn nu(b: HalfInt, e: HalfInt) -> Self {
        Segment::new(CharLabel::trivial(), b, e).expect("malformed segment literal")
    }

    pub fn singleton(label: CharLabel, x: HalfInt) -> Self {
        Segment { label, b: x, e: x }
    }

    /// Segment of length `len` centred at `c.exp` on the line of `c.label`.
    /// `Z` of it is the character `c` of `G_len`; `L` of it is `St_len c`.
    pub fn centered(len: usize, c: &FormalCharacter) -> Self {
        assert!(len >= 1);
        let w = HalfInt::half(len as i64 - 1);
        Segment {
            label: c.label.clone(),
            b: c.exp - w,
            e: c.exp + w,
        }
    }

    pub fn len(&self) -> usize {
        ((self.e - self.b).twice() / 2 + 1) as usize
    }

    /// Midpoint exponent `(b + e) / 2`.
    pub fn center(&self) -> HalfInt {
        HalfInt::half((self.b + self.e).twice() / 2)
    }

    pub fn center_character(&self) -> FormalCharacter {
        FormalCharacter::new(self.label.clone(), self.center())
    }

    /// Exponents in increasing order.
    pub fn exponents(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len() as i64).map(move |i| self.b + HalfInt::whole(i))
    }

    /// Same cuspidal line: equal labels and exponents on the same lattice.
    pub fn same_line(&self, other: &Segment) -> bool {
        self.label == other.label && self.b.same_lattice(other.b)
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.same_line(other) && self.b <= other.b && other.e <= self.e
    }

    pub fn shift(&self, t: HalfInt) -> Segment {
        Segment {
            label: self.label.clone(),
            b: self.b + t,
            e: self.e + t,
        }
    }

    /// Multiply every entry by the character `c`.
    pub fn twist(&self, c: &FormalCharacter) -> Segment {
        Segment {
            label: self.label.mul(&c.label),
            b: self.b + c.exp,
            e: self.e + c.exp,
        }
    }

    /// Contragredient line: `[chi^-1 nu^-e, ..., chi^-1 nu^-b]`.
    pub fn dual(&self) -> Segment {
        Segment {
            label: self.label.inv(),
            b: -self.e,
            e: -self.b,
        }
    }

    /// Drop the last entry; `None` if that empties the segment.
    pub fn minus(&self) -> Option<Segment> {
        (self.e > self.b).then(|| Segment {
            label: self.label.clone(),
            b: self.b,
            e: self.e - HalfInt::ONE,
        })
    }

    /// Key used by the canonical order (descending) and by the MW choice.
    fn key(&self) -> (HalfInt, HalfInt, &CharLabel) {
        (self.b, self.e, &self.label)
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.label.is_trivial() {
            write!(f, "{}", self.label)?;
        }
        if self.b == self.e {
            write!(f, "[{}]", self.b)
        } else {
            write!(f, "[{}..{}]", self.b, self.e)
        }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Segment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_segment(s)
    }
}

/// Neither contains the other and the union is again a segment.
pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    if !d1.same_line(d2) || d1.contains(d2) || d2.contains(d1) {
        return false;
    }
    let lo_end = d1.e.min(d2.e);
    let hi_begin = d1.b.max(d2.b);
    hi_begin <= lo_end + HalfInt::ONE
}

/// `d1` precedes `d2`: linked and `d1` starts strictly lower.
pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    linked(d1, d2) && d1.b < d2.b
}

/// Linked with empty intersection.
pub fn juxtaposed(d1: &Segment, d2: &Segment) -> bool {
    linked(d1, d2) && (d1.e < d2.b || d2.e < d1.b)
}

/// Union and (possibly empty) intersection of linked segments.
pub fn union_intersect(d1: &Segment, d2: &Segment) -> Result<(Segment, Option<Segment>)> {
    if !linked(d1, d2) {
        return Err(Error::NotLinked);
    }
    let union = Segment {
        label: d1.label.clone(),
        b: d1.b.min(d2.b),
        e: d1.e.max(d2.e),
    };
    let (b, e) = (d1.b.max(d2.b), d1.e.min(d2.e));
    let inter = (b <= e).then(|| Segment {
        label: d1.label.clone(),
        b,
        e,
    });
    Ok((union, inter))
}

/// A multiset of segments kept in canonical order: descending by `(b, e)`.
/// In that order no segment precedes a later one.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort_by(|a, b| b.cmp(a));
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Sum of segment lengths: the `GL` rank of `Z(m)` and `L(m)`.
    pub fn degree(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    pub fn twist(&self, c: &FormalCharacter) -> Multisegment {
        Multisegment::new(self.segments.iter().map(|s| s.twist(c)).collect())
    }

    pub fn dual(&self) -> Multisegment {
        Multisegment::new(self.segments.iter().map(Segment::dual).collect())
    }

    /// Multiset union.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut v = self.segments.clone();
        v.extend(other.segments.iter().cloned());
        Multisegment::new(v)
    }

    /// Every segment broken into its singletons.
    pub fn singletons(&self) -> Multisegment {
        Multisegment::new(
            self.segments
                .iter()
                .flat_map(|s| s.exponents().map(|x| Segment::singleton(s.label.clone(), x)))
                .collect(),
        )
    }

    /// Group segments by cuspidal line (label and lattice).
    pub fn lines(&self) -> Vec<Multisegment> {
        let mut groups: Vec<Vec<Segment>> = Vec::new();
        for s in &self.segments {
            match groups.iter_mut().find(|g| g[0].same_line(s)) {
                Some(g) => g.push(s.clone()),
                None => groups.push(vec![s.clone()]),
            }
        }
        groups.into_iter().map(Multisegment::new).collect()
    }

    pub fn is_single_line(&self) -> bool {
        self.segments.windows(2).all(|w| w[0].same_line(&w[1]))
    }
}

pub fn canonicalize(m: &Multisegment) -> Multisegment {
    Multisegment::new(m.segments.clone())
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Multisegment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_multisegment(s)
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter.into_iter().collect())
    }
}
