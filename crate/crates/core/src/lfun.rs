//! Langlands parameters of segment-class representations, adjoint
//! L-function poles, and Prasad's non-vanishing predicate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{FormalCharacter, HalfInt};
use crate::error::{Error, Result};
use crate::reps::ReprExpr;

/// `Sp(a) (x) chi nu^t`, the parameter of `St_a chi nu^t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpehBlock {
    pub a: usize,
    pub c: FormalCharacter,
}

impl SpehBlock {
    pub fn new(a: usize, c: FormalCharacter) -> Self {
        assert!(a >= 1, "Sp(0) is not a block");
        SpehBlock { a, c }
    }

    /// The real pole of `L(s, Sp(a) chi nu^t) = L(s, chi nu^{t + (a-1)/2})`,
    /// present only for trivial `chi`.
    pub fn pole(&self) -> Option<HalfInt> {
        if !self.c.label.is_trivial() {
            return None;
        }
        Some(-(self.c.exp + HalfInt::half(self.a as i64 - 1)))
    }
}

impl fmt::Display for SpehBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 1 {
            write!(f, "{}", self.c)
        } else if self.c.is_trivial() {
            write!(f, "Sp({})", self.a)
        } else {
            write!(f, "Sp({}){}", self.a, self.c)
        }
    }
}

impl fmt::Debug for SpehBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A multiset of blocks, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LanglandsParam {
    blocks: Vec<SpehBlock>,
}

impl LanglandsParam {
    pub fn new(mut blocks: Vec<SpehBlock>) -> Self {
        blocks.sort();
        LanglandsParam { blocks }
    }

    pub fn blocks(&self) -> &[SpehBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.a).sum()
    }

    pub fn direct_sum(&self, other: &LanglandsParam) -> LanglandsParam {
        LanglandsParam::new(self.blocks.iter().chain(&other.blocks).cloned().collect())
    }
}

impl fmt::Display for LanglandsParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().rev().map(|b| b.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `L(Delta) -> Sp(len) (x)` centre of `Delta`, summed over the Langlands
/// data. `Z(m)` goes through the MW involution first.
pub fn langlands_param(e: &ReprExpr) -> Result<LanglandsParam> {
    let m = e.langlands_data()?;
    Ok(LanglandsParam::new(
        m.segments()
            .iter()
            .map(|s| SpehBlock::new(s.len(), s.center_character()))
            .collect(),
    ))
}

pub fn dual_param(p: &LanglandsParam) -> LanglandsParam {
    LanglandsParam::new(p.blocks.iter().map(|b| SpehBlock::new(b.a, b.c.inv())).collect())
}

/// Bilinear extension of `Sp(a) (x) Sp(b) = sum_{i < min(a,b)} Sp(a+b-1-2i)`.
pub fn tensor_param(p: &LanglandsParam, q: &LanglandsParam) -> LanglandsParam {
    let mut out = Vec::with_capacity(p.blocks.len() * q.blocks.len());
    for x in &p.blocks {
        for y in &q.blocks {
            let c = x.c.mul(&y.c);
            for i in 0..x.a.min(y.a) {
                out.push(SpehBlock::new(x.a + y.a - 1 - 2 * i, c.clone()));
            }
        }
    }
    LanglandsParam::new(out)
}

/// Real poles at positive integers `1..=s_max`, plus positive half-integer
/// poles kept aside for diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleProfile {
    pub s_max: usize,
    pub orders: BTreeMap<usize, usize>,
    pub half_integer_poles: BTreeMap<HalfInt, usize>,
}

impl PoleProfile {
    pub fn order(&self, s: usize) -> usize {
        self.orders.get(&s).copied().unwrap_or(0)
    }
}

impl fmt::Display for PoleProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|(s, o)| format!("{s}:{o}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn pole_profile(p: &LanglandsParam, s_max: usize) -> PoleProfile {
    let mut prof = PoleProfile {
        s_max,
        ..Default::default()
    };
    for b in &p.blocks {
        let Some(s) = b.pole() else { continue };
        if s <= HalfInt::ZERO {
            continue;
        }
        match s.to_integer() {
            Some(i) if i as usize <= s_max => *prof.orders.entry(i as usize).or_default() += 1,
            Some(_) => {}
            None => *prof.half_integer_poles.entry(s).or_default() += 1,
        }
    }
    prof
}

/// Adjoint parameter `p (x) p^v`.
pub fn adjoint(p: &LanglandsParam) -> LanglandsParam {
    tensor_param(p, &dual_param(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub param: LanglandsParam,
    pub profile: PoleProfile,
    /// `(s, order(s), n + 1 - s)` for `s = 1..=n`.
    pub table: Vec<(usize, usize, usize)>,
    pub predicted_tjm_zero: bool,
}

/// Prasad's predicate on a parameter of dimension `2n`: the module vanishes
/// iff `L(s, Ad)` has order at least `n + 1 - s` at every `s = 1..=n`.
pub fn conjecture_check_param(p: &LanglandsParam, n: usize) -> Result<ConjectureReport> {
    if p.dim() != 2 * n {
        return Err(Error::RankMismatch {
            expected: 2 * n,
            found: p.dim(),
        });
    }
    let profile = pole_profile(&adjoint(p), n);
    let table: Vec<(usize, usize, usize)> = (1..=n).map(|s| (s, profile.order(s), n + 1 - s)).collect();
    let predicted_tjm_zero = table.iter().all(|&(_, o, need)| o >= need);
    Ok(ConjectureReport {
        n,
        param: p.clone(),
        profile,
        table,
        predicted_tjm_zero,
    })
}

pub fn conjecture_check(e: &ReprExpr, n: usize) -> Result<ConjectureReport> {
    conjecture_check_param(&langlands_param(e)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{half, whole, CharLabel};
    use crate::segments::{Multisegment, Segment};

    fn sp(a: usize, t2: i64) -> SpehBlock {
        SpehBlock::new(a, FormalCharacter::nu(half(t2)))
    }

    #[test]
    fn trivial_rep_profile() {
        for k in 1..=8usize {
            let p = langlands_param(&ReprExpr::nu_char(k, whole(0))).unwrap();
            assert_eq!(p.dim(), k);
            let prof = pole_profile(&adjoint(&p), 20);
            for s in 1..k {
                assert_eq!(prof.order(s), k - s, "k = {k}, s = {s}");
            }
            assert_eq!(prof.order(k), 0);
        }
    }

    #[test]
    fn clebsch_gordan() {
        let p = LanglandsParam::new(vec![sp(2, 0)]);
        assert_eq!(tensor_param(&p, &p), LanglandsParam::new(vec![sp(1, 0), sp(3, 0)]));
        for r in 1..=5 {
            let p = LanglandsParam::new(vec![sp(r, 0)]);
            let t = tensor_param(&p, &p);
            let dims: Vec<usize> = t.blocks().iter().map(|b| b.a).collect();
            assert_eq!(dims, (0..r).map(|i| 2 * i + 1).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tau_adjoint() {
        let m = Multisegment::new(vec![Segment::nu(half(1), half(3)), Segment::nu(half(-3), half(-1))]);
        let p = langlands_param(&ReprExpr::l(m)).unwrap();
        assert_eq!(p, LanglandsParam::new(vec![sp(2, 2), sp(2, -2)]));
        let ad = adjoint(&p);
        let expect = LanglandsParam::new(vec![
            sp(1, 4),
            sp(1, 0),
            sp(1, 0),
            sp(1, -4),
            sp(3, 4),
            sp(3, 0),
            sp(3, 0),
            sp(3, -4),
        ]);
        assert_eq!(ad, expect);
        let rep = conjecture_check_param(&p, 2).unwrap();
        assert_eq!(rep.profile.order(1), 1);
        assert_eq!(rep.profile.order(2), 1);
        assert!(!rep.predicted_tjm_zero);
    }

    #[test]
    fn labels_kill_poles() {
        let chi = FormalCharacter::new(CharLabel::generator("chi"), whole(-3));
        let p = LanglandsParam::new(vec![SpehBlock::new(1, chi)]);
        assert!(pole_profile(&p, 10).orders.is_empty());
    }

    #[test]
    fn dual_is_involution() {
        let p = LanglandsParam::new(vec![sp(2, 2), sp(1, -3)]);
        assert_eq!(dual_param(&dual_param(&p)), p);
        let ad = adjoint(&p);
        assert_eq!(dual_param(&ad), ad);
    }
}
