//! Symbolic representation expressions for the segment class.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{FormalCharacter, HalfInt};
use crate::error::{Error, Result};
use crate::parse;
use crate::segments::{juxtaposed, linked, Multisegment, Segment};
use crate::zelevinsky::mw_dual;

/// `Z(m)`, `L(m)`, a character `chi o det` of `G_r`, a Steinberg twist
/// `St_r chi`, or a normalized parabolic induction `pi_1 x ... x pi_k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReprExpr {
    Z { m: Multisegment },
    L { m: Multisegment },
    Char { r: usize, c: FormalCharacter },
    St { r: usize, c: FormalCharacter },
    Product { factors: Vec<ReprExpr> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    Z,
    L,
}

impl ReprExpr {
    pub fn z(m: Multisegment) -> Self {
        ReprExpr::Z { m }
    }

    pub fn l(m: Multisegment) -> Self {
        ReprExpr::L { m }
    }

    pub fn character(r: usize, c: FormalCharacter) -> Self {
        ReprExpr::Char { r, c }
    }

    /// `nu^t` as a character of `G_r`.
    pub fn nu_char(r: usize, t: HalfInt) -> Self {
        ReprExpr::Char {
            r,
            c: FormalCharacter::nu(t),
        }
    }

    pub fn steinberg(r: usize, c: FormalCharacter) -> Self {
        ReprExpr::St { r, c }
    }

    pub fn nu_steinberg(r: usize, t: HalfInt) -> Self {
        ReprExpr::St {
            r,
            c: FormalCharacter::nu(t),
        }
    }

    /// Product with nested products flattened.
    pub fn product(factors: Vec<ReprExpr>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                ReprExpr::Product { factors } => flat.extend(factors),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().expect("one factor")
        } else {
            ReprExpr::Product { factors: flat }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ReprExpr::Z { m } | ReprExpr::L { m } => m.degree(),
            ReprExpr::Char { r, .. } | ReprExpr::St { r, .. } => *r,
            ReprExpr::Product { factors } => factors.iter().map(ReprExpr::rank).sum(),
        }
    }

    /// Rewrite characters and Steinberg twists as single-segment `Z`/`L`.
    pub fn normalize(&self) -> ReprExpr {
        match self {
            ReprExpr::Char { r, c } => ReprExpr::z(Multisegment::new(vec![Segment::centered(*r, c)])),
            ReprExpr::St { r, c } => ReprExpr::l(Multisegment::new(vec![Segment::centered(*r, c)])),
            ReprExpr::Product { factors } => ReprExpr::product(factors.iter().map(ReprExpr::normalize).collect()),
            other => other.clone(),
        }
    }

    pub fn factors(&self) -> Vec<&ReprExpr> {
        match self {
            ReprExpr::Product { factors } => factors.iter().collect(),
            other => vec![other],
        }
    }

    /// `Some((r, chi))` when this is the one-dimensional representation
    /// `chi o det` of `G_r`.
    pub fn as_character(&self) -> Option<(usize, FormalCharacter)> {
        match self {
            ReprExpr::Char { r, c } => Some((*r, c.clone())),
            ReprExpr::St { r: 1, c } => Some((1, c.clone())),
            ReprExpr::St { .. } => None,
            ReprExpr::Z { m } => single(m).map(|s| (s.len(), s.center_character())),
            ReprExpr::L { m } => single(&mw_dual(m)).map(|s| (s.len(), s.center_character())),
            ReprExpr::Product { factors } if factors.len() == 1 => factors[0].as_character(),
            ReprExpr::Product { .. } => None,
        }
    }

    /// `Some((r, chi))` when this is `St_r chi`.
    pub fn as_steinberg(&self) -> Option<(usize, FormalCharacter)> {
        match self {
            ReprExpr::St { r, c } => Some((*r, c.clone())),
            ReprExpr::Char { r: 1, c } => Some((1, c.clone())),
            ReprExpr::Char { .. } => None,
            ReprExpr::L { m } => single(m).map(|s| (s.len(), s.center_character())),
            ReprExpr::Z { m } => single(&mw_dual(m)).map(|s| (s.len(), s.center_character())),
            ReprExpr::Product { factors } if factors.len() == 1 => factors[0].as_steinberg(),
            ReprExpr::Product { .. } => None,
        }
    }

    /// Single segment together with its kind, for `Z(Delta)`, `L(Delta)`,
    /// characters and Steinberg twists.
    pub fn as_segment(&self) -> Option<(Segment, SegmentKind)> {
        match self.normalize() {
            ReprExpr::Z { m } => single(&m).map(|s| (s.clone(), SegmentKind::Z)),
            ReprExpr::L { m } => single(&m).map(|s| (s.clone(), SegmentKind::L)),
            _ => None,
        }
    }

    /// Multiply by `c o det`.
    pub fn twist(&self, c: &FormalCharacter) -> ReprExpr {
        match self {
            ReprExpr::Z { m } => ReprExpr::z(m.twist(c)),
            ReprExpr::L { m } => ReprExpr::l(m.twist(c)),
            ReprExpr::Char { r, c: d } => ReprExpr::character(*r, d.mul(c)),
            ReprExpr::St { r, c: d } => ReprExpr::steinberg(*r, d.mul(c)),
            ReprExpr::Product { factors } => ReprExpr::Product {
                factors: factors.iter().map(|f| f.twist(c)).collect(),
            },
        }
    }

    /// Contragredient.
    pub fn dual(&self) -> ReprExpr {
        match self {
            ReprExpr::Z { m } => ReprExpr::z(m.dual()),
            ReprExpr::L { m } => ReprExpr::l(m.dual()),
            ReprExpr::Char { r, c } => ReprExpr::character(*r, c.inv()),
            ReprExpr::St { r, c } => ReprExpr::steinberg(*r, c.inv()),
            ReprExpr::Product { factors } => ReprExpr::Product {
                factors: factors.iter().map(ReprExpr::dual).collect(),
            },
        }
    }

    /// Cuspidal support as a multiset of characters of `F^x`.
    pub fn cuspidal_support(&self) -> Vec<FormalCharacter> {
        let mut out: Vec<FormalCharacter> = match self.normalize() {
            ReprExpr::Z { m } | ReprExpr::L { m } => m
                .segments()
                .iter()
                .flat_map(|s| {
                    s.exponents()
                        .map(|x| FormalCharacter::new(s.label.clone(), x))
                        .collect::<Vec<_>>()
                })
                .collect(),
            ReprExpr::Product { factors } => factors.iter().flat_map(ReprExpr::cuspidal_support).collect(),
            _ => unreachable!("normalize removes Char and St"),
        };
        out.sort();
        out
    }

    /// `Some(support)` when this is a product of characters of `G_1`.
    pub fn borel_support(&self) -> Option<Vec<FormalCharacter>> {
        let mut out = Vec::new();
        for f in self.factors() {
            match f.as_character() {
                Some((1, c)) => out.push(c),
                _ => return None,
            }
        }
        out.sort();
        Some(out)
    }

    /// Langlands data: the multisegment `m` with `self = L(m)`. Fails for
    /// products not known to be irreducible.
    pub fn langlands_data(&self) -> Result<Multisegment> {
        match self.normalize() {
            ReprExpr::L { m } => Ok(m),
            ReprExpr::Z { m } => Ok(mw_dual(&m)),
            ReprExpr::Product { factors } => {
                if product_irreducible_expr(&factors) != Some(true) {
                    return Err(Error::Unsupported(format!("{self} is not known to be irreducible")));
                }
                let mut acc = Multisegment::empty();
                for f in &factors {
                    acc = acc.union(&f.langlands_data()?);
                }
                Ok(acc)
            }
            _ => unreachable!("normalize removes Char and St"),
        }
    }
}

fn single(m: &Multisegment) -> Option<&Segment> {
    match m.segments() {
        [s] => Some(s),
        _ => None,
    }
}

/// `Z(Delta_1) x ... x Z(Delta_k)` (or the `L` analogue) is irreducible iff
/// no two segments are linked.
pub fn product_irreducible(segs: &[Segment], _kind: SegmentKind) -> bool {
    for (i, a) in segs.iter().enumerate() {
        for b in &segs[i + 1..] {
            if linked(a, b) {
                return false;
            }
        }
    }
    true
}

/// Irreducibility of `Z(Delta) x L(Delta')` style pairs: same kind reduces
/// iff linked, mixed kinds reduce iff juxtaposed.
fn pair_irreducible(a: &(Segment, SegmentKind), b: &(Segment, SegmentKind)) -> bool {
    let single_point = a.0.len() == 1 || b.0.len() == 1;
    if a.1 == b.1 || single_point {
        !linked(&a.0, &b.0)
    } else {
        !juxtaposed(&a.0, &b.0)
    }
}

/// Tri-state irreducibility of a product of expressions. Decided when every
/// factor is a single-segment representation (these are ladders, for which
/// irreducibility of a product is equivalent to pairwise irreducibility) or
/// when all factors live on pairwise distinct cuspidal lines.
pub fn product_irreducible_expr(factors: &[ReprExpr]) -> Option<bool> {
    if factors.len() <= 1 {
        return Some(true);
    }
    let segs: Option<Vec<_>> = factors.iter().map(ReprExpr::as_segment).collect();
    if let Some(segs) = segs {
        for (i, a) in segs.iter().enumerate() {
            for b in &segs[i + 1..] {
                if !pair_irreducible(a, b) {
                    return Some(false);
                }
            }
        }
        return Some(true);
    }
    let supports: Vec<Vec<FormalCharacter>> = factors.iter().map(ReprExpr::cuspidal_support).collect();
    let on_line = |x: &FormalCharacter, y: &FormalCharacter| x.label == y.label && x.exp.same_lattice(y.exp);
    for (i, a) in supports.iter().enumerate() {
        for b in &supports[i + 1..] {
            if a.iter().any(|x| b.iter().any(|y| on_line(x, y))) {
                return None;
            }
        }
    }
    let each: Option<Vec<bool>> = factors
        .iter()
        .map(|f| match f {
            ReprExpr::Product { factors } => product_irreducible_expr(factors),
            _ => Some(true),
        })
        .collect();
    each.map(|v| v.into_iter().all(|b| b))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReprClass {
    pub rank: usize,
    pub is_character: bool,
    pub is_steinberg_twist: bool,
    pub is_generic_class: bool,
    pub is_irreducible_known: Option<bool>,
    pub gl2_class: bool,
}

pub fn classify(e: &ReprExpr) -> ReprClass {
    let rank = e.rank();
    let is_character = e.as_character().is_some();
    let is_steinberg_twist = e.as_steinberg().is_some();
    let is_irreducible_known = match e {
        ReprExpr::Product { factors } => product_irreducible_expr(factors),
        _ => Some(true),
    };
    // Irreducible products of essentially square-integrable pieces: exactly
    // the L(m) whose segments are pairwise unlinked.
    let is_generic_class = is_irreducible_known == Some(true)
        && e.langlands_data()
            .map(|m| product_irreducible(m.segments(), SegmentKind::L))
            .unwrap_or(false);
    let rank_one_product = matches!(e, ReprExpr::Product { factors }
        if factors.len() == 2 && factors.iter().all(|f| f.rank() == 1));
    let gl2_class = rank == 2 && (is_character || is_steinberg_twist || is_generic_class || rank_one_product);
    ReprClass {
        rank,
        is_character,
        is_steinberg_twist,
        is_generic_class,
        is_irreducible_known,
        gl2_class,
    }
}

/// Central character: the product of the cuspidal support.
pub fn central_character(e: &ReprExpr) -> FormalCharacter {
    e.cuspidal_support()
        .iter()
        .fold(FormalCharacter::trivial(), |acc, c| acc.mul(c))
}

impl fmt::Display for ReprExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReprExpr::Z { m } => write!(f, "Z{m}"),
            ReprExpr::L { m } => write!(f, "L{m}"),
            ReprExpr::Char { r: 1, c } => write!(f, "{c}"),
            ReprExpr::Char { r, c } => write!(f, "char({r},{c})"),
            ReprExpr::St { r, c } => write!(f, "St({r},{c})"),
            ReprExpr::Product { factors } => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    match x {
                        ReprExpr::Product { .. } => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for ReprExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ReprExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{half, whole, CharLabel};

    fn seg(b: i64, e: i64) -> Segment {
        Segment::nu(half(b), half(e))
    }

    #[test]
    fn normalization_round_trip() {
        let c = FormalCharacter::new(CharLabel::generator("chi"), half(1));
        let ch = ReprExpr::character(3, c.clone());
        assert_eq!(ch.normalize().as_character(), Some((3, c.clone())));
        let st = ReprExpr::steinberg(4, c.clone());
        assert_eq!(st.normalize().as_steinberg(), Some((4, c)));
        assert_eq!(ch.rank(), 3);
    }

    #[test]
    fn irreducibility() {
        // Delta, Delta_alpha always linked
        for n in 1..=5usize {
            for a in 1..=n {
                let d = Segment::centered(n, &FormalCharacter::trivial());
                let da = d.shift(whole(a as i64));
                assert!(!product_irreducible(&[d, da], SegmentKind::Z));
            }
        }
        assert!(product_irreducible(&[seg(-2, 2)], SegmentKind::Z));
        assert!(product_irreducible(&[seg(-2, 2), seg(0, 0)], SegmentKind::Z));
    }

    #[test]
    fn mixed_pairs() {
        // St_2 nu^{1/2} x nu_2^{-1/2}: linked, not juxtaposed
        let f = vec![ReprExpr::nu_steinberg(2, half(1)), ReprExpr::nu_char(2, half(-1))];
        assert_eq!(product_irreducible_expr(&f), Some(true));
        // St_2 nu x nu_2^{-1}: juxtaposed
        let f = vec![ReprExpr::nu_steinberg(2, whole(1)), ReprExpr::nu_char(2, whole(-1))];
        assert_eq!(product_irreducible_expr(&f), Some(false));
        // Z-Z juxtaposed pair reduces too
        let f = vec![ReprExpr::nu_char(2, whole(1)), ReprExpr::nu_char(2, whole(-1))];
        assert_eq!(product_irreducible_expr(&f), Some(false));
    }

    #[test]
    fn classification() {
        let e = ReprExpr::product(vec![
            ReprExpr::nu_steinberg(3, HalfInt::ZERO),
            ReprExpr::nu_char(1, HalfInt::ZERO),
        ]);
        assert!(classify(&e).is_generic_class);
        let triv = ReprExpr::nu_char(4, HalfInt::ZERO);
        let c = classify(&triv);
        assert!(c.is_character && !c.is_generic_class);
        let tau = ReprExpr::l(Multisegment::new(vec![seg(1, 3), seg(-3, -1)]));
        let c = classify(&tau);
        assert!(!c.is_character && !c.is_steinberg_twist && !c.is_generic_class);
        let ps = ReprExpr::product(vec![ReprExpr::nu_char(1, half(3)), ReprExpr::nu_char(1, half(-3))]);
        assert!(classify(&ps).gl2_class);
    }

    #[test]
    fn central_characters() {
        assert_eq!(
            central_character(&ReprExpr::nu_steinberg(2, whole(1))),
            FormalCharacter::nu(whole(2))
        );
        let chi = FormalCharacter::new(CharLabel::generator("chi"), HalfInt::ZERO);
        assert_eq!(central_character(&ReprExpr::character(2, chi.clone())), chi.pow(2));
        let ps = ReprExpr::product(vec![ReprExpr::nu_char(1, half(1)), ReprExpr::nu_char(1, half(-1))]);
        assert!(central_character(&ps).is_trivial());
    }

    #[test]
    fn langlands_data_of_products() {
        let e = ReprExpr::product(vec![
            ReprExpr::nu_steinberg(3, HalfInt::ZERO),
            ReprExpr::nu_char(1, HalfInt::ZERO),
        ]);
        let m = e.langlands_data().unwrap();
        assert_eq!(m, Multisegment::new(vec![seg(-2, 2), seg(0, 0)]));
        let red = ReprExpr::product(vec![ReprExpr::nu_char(2, whole(1)), ReprExpr::nu_char(2, whole(-1))]);
        assert!(red.langlands_data().is_err());
    }
}
