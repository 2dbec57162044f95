//! The Moeglin-Waldspurger algorithm for the Zelevinsky involution
//! `m -> m^t`, so that `Z(m) = L(m^t)`.

use serde::{Deserialize, Serialize};

use crate::arith::{CharLabel, FormalCharacter, HalfInt};
use crate::error::{Error, Result};
use crate::segments::{Multisegment, Segment};

/// One pass of the algorithm: the largest ending `d` and the chain of
/// segments (indices into the canonical order of the input to that pass).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwStep {
    pub d: HalfInt,
    pub chain: Vec<usize>,
    pub chain_segments: Vec<Segment>,
    pub extracted: Segment,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwTrace {
    /// Segments of `m^t` in extraction order.
    pub extracted: Vec<Segment>,
    pub steps: Vec<MwStep>,
}

/// One extraction step on a single cuspidal line. Returns the first segment
/// of `m^t`, the residual multisegment `m^-` and the step record.
pub fn mw_extract(m: &Multisegment) -> Result<(Segment, Multisegment, MwStep)> {
    let segs = m.segments();
    if segs.is_empty() {
        return Err(Error::EmptyMultisegment);
    }
    if !m.is_single_line() {
        return Err(Error::MixedLabels);
    }
    let d = segs.iter().map(|s| s.e).max().expect("non-empty");

    // Canonical order is descending (b, e), so among candidates the first
    // hit is the maximal one, and equal segments resolve to the earliest.
    let first = segs.iter().position(|s| s.e == d).expect("some segment ends at d");
    let mut chain = vec![first];
    let mut target = d - HalfInt::ONE;
    loop {
        let prev = &segs[*chain.last().expect("non-empty chain")];
        let next = segs
            .iter()
            .enumerate()
            .find(|(i, s)| s.e == target && s.b < prev.b && !chain.contains(i));
        match next {
            Some((i, _)) => {
                chain.push(i);
                target -= HalfInt::ONE;
            }
            None => break,
        }
    }

    let r = chain.len() as i64 - 1;
    let label = segs[first].label.clone();
    let extracted = Segment::new(label, d - HalfInt::whole(r), d)?;

    let mut residual = Vec::with_capacity(segs.len());
    for (i, s) in segs.iter().enumerate() {
        if chain.contains(&i) {
            if let Some(t) = s.minus() {
                residual.push(t);
            }
        } else {
            residual.push(s.clone());
        }
    }
    let step = MwStep {
        d,
        chain_segments: chain.iter().map(|&i| segs[i].clone()).collect(),
        chain,
        extracted: extracted.clone(),
    };
    Ok((extracted, Multisegment::new(residual), step))
}

/// Full involution with per-step trace. Lines are handled independently
/// and merged.
pub fn mw_dual_traced(m: &Multisegment) -> MwTrace {
    let mut trace = MwTrace::default();
    for line in m.lines() {
        let mut cur = line;
        while !cur.is_empty() {
            let (seg, rest, step) = mw_extract(&cur).expect("single line, non-empty");
            trace.extracted.push(seg);
            trace.steps.push(step);
            cur = rest;
        }
    }
    trace
}

pub fn mw_dual(m: &Multisegment) -> Multisegment {
    Multisegment::new(mw_dual_traced(m).extracted)
}

/// The pair `{Delta_alpha, Delta}` with `Delta` the length-`n` segment
/// centred at `chi` and `Delta_alpha = Delta nu^alpha`.
pub fn l_chi_alpha_segments(n: usize, alpha: usize, chi: &FormalCharacter) -> (Segment, Segment) {
    let d = Segment::centered(n, chi);
    let da = d.shift(HalfInt::whole(alpha as i64));
    (da, d)
}

/// The closed form of `{Delta_alpha, Delta}^t`: `alpha - 1` high singletons,
/// `n - alpha + 1` segments of length two, `alpha - 1` low singletons.
pub fn l_chi_alpha_dual_closed_form(n: usize, alpha: usize, chi: &FormalCharacter) -> Multisegment {
    let (n_i, a_i) = (n as i64, alpha as i64);
    let top = HalfInt::half(n_i - 1);
    let bottom = -top;
    let mut v = Vec::new();
    for j in 2..=a_i {
        v.push(Segment::singleton(CharLabel::trivial(), top + HalfInt::whole(j)));
    }
    for j in a_i..=n_i {
        v.push(Segment::nu(bottom + HalfInt::whole(j - 1), bottom + HalfInt::whole(j)));
    }
    for j in 0..=(a_i - 2) {
        v.push(Segment::singleton(CharLabel::trivial(), bottom + HalfInt::whole(j)));
    }
    Multisegment::new(v).twist(chi)
}

/// `{Delta_alpha, Delta}^t` computed by the generic algorithm and checked
/// against the closed form.
pub fn mw_dual_l_chi_alpha(n: usize, alpha: usize, chi: &CharLabel) -> Result<Multisegment> {
    mw_dual_l_chi_alpha_twisted(n, alpha, &FormalCharacter::new(chi.clone(), HalfInt::ZERO))
}

pub fn mw_dual_l_chi_alpha_twisted(n: usize, alpha: usize, chi: &FormalCharacter) -> Result<Multisegment> {
    if alpha < 1 || alpha > n {
        return Err(Error::OutOfRange(format!("alpha = {alpha} must lie in 1..={n}")));
    }
    let (da, d) = l_chi_alpha_segments(n, alpha, chi);
    let dual = mw_dual(&Multisegment::new(vec![da, d]));
    let expected = l_chi_alpha_dual_closed_form(n, alpha, chi);
    if dual != expected {
        return Err(Error::Consistency(format!(
            "MW gives {dual}, closed form gives {expected}"
        )));
    }
    Ok(dual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(b: i64, e: i64) -> Segment {
        Segment::nu(HalfInt::half(b), HalfInt::half(e))
    }

    fn ms(v: &[(i64, i64)]) -> Multisegment {
        v.iter().map(|&(b, e)| seg(b, e)).collect()
    }

    #[test]
    fn single_segment_splits() {
        let m = ms(&[(-3, 3)]);
        assert_eq!(mw_dual(&m), ms(&[(3, 3), (1, 1), (-1, -1), (-3, -3)]));
        assert_eq!(mw_dual(&mw_dual(&m)), m);
    }

    #[test]
    fn first_extraction_special_cases() {
        // single segment
        let (s, rest, _) = mw_extract(&ms(&[(-2, 4)])).unwrap();
        assert_eq!(s, seg(4, 4));
        assert_eq!(rest, ms(&[(-2, 2)]));
        // Delta_2 ends one past Delta_1
        let (s, rest, _) = mw_extract(&ms(&[(-2, 0), (0, 2)])).unwrap();
        assert_eq!(s, seg(0, 2));
        assert_eq!(rest, ms(&[(-2, -2), (0, 0)]));
        // Delta_2 ends well past Delta_1
        let (s, rest, _) = mw_extract(&ms(&[(-2, 0), (2, 6)])).unwrap();
        assert_eq!(s, seg(6, 6));
        assert_eq!(rest, ms(&[(-2, 0), (2, 4)]));
    }

    #[test]
    fn golden_duals() {
        assert_eq!(mw_dual(&ms(&[(1, 3), (-3, -1)])), ms(&[(3, 3), (-1, 1), (-3, -3)]));
        assert_eq!(mw_dual(&ms(&[(-1, 3), (-3, -3)])), ms(&[(3, 3), (1, 1), (-3, -1)]));
        assert_eq!(mw_dual(&ms(&[(3, 3), (-3, 1)])), ms(&[(1, 3), (-1, -1), (-3, -3)]));
    }

    #[test]
    fn l_chi_alpha_small() {
        let one = CharLabel::trivial();
        assert_eq!(mw_dual_l_chi_alpha(2, 1, &one).unwrap(), ms(&[(1, 3), (-1, 1)]));
        assert_eq!(
            mw_dual_l_chi_alpha(2, 2, &one).unwrap(),
            ms(&[(5, 5), (1, 3), (-1, -1)])
        );
        for n in 1..=6 {
            for a in 1..=n {
                let m = mw_dual_l_chi_alpha(n, a, &one).unwrap();
                assert_eq!(m.len(), n + a - 1);
            }
        }
        assert!(mw_dual_l_chi_alpha(2, 3, &one).is_err());
    }

    #[test]
    fn mixed_lines_merge() {
        let chi = CharLabel::generator("chi");
        let a = Segment::new(chi, HalfInt::whole(0), HalfInt::whole(1)).unwrap();
        let m = Multisegment::new(vec![a.clone(), seg(-1, 1)]);
        let t = mw_dual(&m);
        assert_eq!(t.len(), 4);
        assert_eq!(mw_dual(&t), m);
        assert!(mw_extract(&m).is_err());
    }

    #[test]
    fn trace_records_chains() {
        let tr = mw_dual_traced(&ms(&[(1, 3), (-3, -1)]));
        assert_eq!(tr.steps.len(), 3);
        assert_eq!(tr.steps[0].d, HalfInt::half(3));
        assert_eq!(tr.steps[0].chain_segments, vec![seg(1, 3)]);
        assert_eq!(tr.steps[1].chain_segments.len(), 2);
    }
}
