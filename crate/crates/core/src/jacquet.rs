//! The twisted Jacquet module engine.
//!
//! For `pi = rho_1 x rho_2` induced from `P_{r,2n-r}`, the module
//! `pi_{N,psi}` is glued from the factors `V_k / V_{k-1}`, one for each
//! `alpha <= k <= beta`, each induced from `Delta P_{k, r-2k, n-r+k}` with
//! inducing data built from the blocks `(rho_1)_{N(k,1)}`, `(rho_2)_{N(k,2)}`
//! and three explicit `nu`-twists. This module evaluates those factors
//! symbolically and runs the family analyses built on top of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{FormalCharacter, HalfInt};
use crate::doublecosets::{shape_metadata, BlockShape, KRange, Side};
use crate::error::{Error, Result};
use crate::reps::{central_character, classify, product_irreducible_expr, ReprExpr};
use crate::segments::{juxtaposed, union_intersect, Multisegment, Segment};
use crate::zelevinsky::{l_chi_alpha_dual_closed_form, l_chi_alpha_segments, mw_dual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Zero,
    NonZero,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Zero => "zero",
            Status::NonZero => "non-zero",
            Status::Unknown => "unknown",
        })
    }
}

/// Value of a block twisted Jacquet module `(rho)_{N(k,i), psi_{k,i}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockValue {
    Zero,
    /// One-dimensional, given by a character of the diagonal block.
    Dim1Char {
        c: FormalCharacter,
    },
    /// The representation itself (the unipotent group is trivial).
    Module {
        rep: ReprExpr,
    },
    NonZeroSymbolic,
    Unknown,
}

impl BlockValue {
    pub fn status(&self) -> Status {
        match self {
            BlockValue::Zero => Status::Zero,
            BlockValue::Unknown => Status::Unknown,
            _ => Status::NonZero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTJMRef {
    pub base: ReprExpr,
    pub shape: BlockShape,
    pub resolved: BlockValue,
    pub rule: String,
}

/// `nu`-exponents on the Levi blocks `(a, b, c)` of `Delta P_{k,r-2k,n-r+k}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistMap {
    pub a: HalfInt,
    pub b: HalfInt,
    pub c: HalfInt,
}

impl TwistMap {
    pub fn is_zero(&self) -> bool {
        self.a == HalfInt::ZERO && self.b == HalfInt::ZERO && self.c == HalfInt::ZERO
    }

    pub fn get(&self, slot: Slot) -> HalfInt {
        match slot {
            Slot::A => self.a,
            Slot::B => self.b,
            Slot::C => self.c,
        }
    }
}

impl std::ops::Add for TwistMap {
    type Output = TwistMap;
    fn add(self, o: TwistMap) -> TwistMap {
        TwistMap {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c,
        }
    }
}

/// The twist carried by `tau'_k`: `nu^{(r-2k)/2}(a) nu^{-k/2}(b)` from the
/// left block and `nu^{(n-r+k)/2}(b) nu^{(2k-r)/2}(c)` from the right.
pub fn tau_twist(n: usize, r: usize, k: usize) -> TwistMap {
    let (n, r, k) = (n as i64, r as i64, k as i64);
    TwistMap {
        a: HalfInt::half(r - 2 * k),
        b: HalfInt::half(-k) + HalfInt::half(n - r + k),
        c: HalfInt::half(2 * k - r),
    }
}

/// `[delta_{P_{r,2n-r}}^{1/2}]^{w_k}`: `delta^{1/2} = nu^{(2n-r)/2}(g_1)
/// nu^{-r/2}(g_2)` pushed through `g_1 ~ (a, a, b)` and `g_2 ~ (b, c, c)`.
pub fn delta_p_twist(n: usize, r: usize, _k: usize) -> TwistMap {
    let (n, r) = (n as i64, r as i64);
    TwistMap {
        a: HalfInt::whole(2 * n - r),
        b: HalfInt::whole(n - r),
        c: HalfInt::whole(-r),
    }
}

/// `delta_{Delta P}^{-3/2}` where `delta_{Delta P}(diag(a,b,c)) =
/// nu(a)^{n-k} nu(b)^{n-r} nu(c)^{k-r}` is the modular character of
/// `P_{k,r-2k,n-r+k}` in `G_n`.
pub fn delta_dp_twist(n: usize, r: usize, k: usize) -> TwistMap {
    let (n, r, k) = (n as i64, r as i64, k as i64);
    TwistMap {
        a: HalfInt::half(-3 * (n - k)),
        b: HalfInt::half(-3 * (n - r)),
        c: HalfInt::half(3 * (r - k)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    A,
    B,
    C,
}

/// Inducing data on one Levi block: an inner tensor product of
/// representations of `G_size`, twisted by `nu^twist`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotContent {
    pub slot: Slot,
    pub size: usize,
    pub parts: Vec<ReprExpr>,
    pub twist: HalfInt,
}

impl SlotContent {
    /// Collapse inner tensors with characters into twists. `None` when two
    /// or more parts are not one-dimensional.
    pub fn simplify(&self) -> Option<ReprExpr> {
        let mut chi = FormalCharacter::nu(self.twist);
        let mut rest = Vec::new();
        for p in &self.parts {
            match p.as_character() {
                Some((_, c)) => chi = chi.mul(&c),
                None => rest.push(p),
            }
        }
        match rest.as_slice() {
            [] => Some(ReprExpr::character(self.size, chi)),
            [one] => Some(if chi.is_trivial() {
                (*one).clone()
            } else {
                one.twist(&chi)
            }),
            _ => None,
        }
    }
}

impl fmt::Display for SlotContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| format!("{p}")).collect();
        let body = parts.join(" ⊗ ");
        if self.twist == HalfInt::ZERO {
            f.write_str(&body)
        } else {
            write!(f, "({body})")?;
            crate::arith::fmt_nu_power(f, self.twist)
        }
    }
}

/// `i_{Delta P}^{Delta G_n}` of the tensor product of the non-empty slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedModule {
    pub k: usize,
    pub slots: Vec<SlotContent>,
}

impl InducedModule {
    /// Normalized induction written as a product, when every slot collapses.
    pub fn to_expr(&self) -> Option<ReprExpr> {
        let parts: Option<Vec<ReprExpr>> = self.slots.iter().map(SlotContent::simplify).collect();
        parts.map(ReprExpr::product)
    }

    pub fn borel_support(&self) -> Option<Vec<FormalCharacter>> {
        self.to_expr().and_then(|e| e.borel_support())
    }
}

impl fmt::Display for InducedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.len() == 1 {
            return write!(f, "{}", self.slots[0]);
        }
        let parts: Vec<String> = self.slots.iter().map(|s| format!("{s}")).collect();
        write!(f, "i({})", parts.join(" ⊗ "))
    }
}

/// A `Delta G_n`-module known up to semisimplification, as the list of its
/// filtration pieces. No pieces means zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleExpr {
    pub pieces: Vec<InducedModule>,
}

impl ModuleExpr {
    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// The module as one expression when it has a single collapsible piece.
    pub fn as_expr(&self) -> Option<ReprExpr> {
        match self.pieces.as_slice() {
            [p] => p.to_expr(),
            _ => None,
        }
    }

    /// Remove the pieces of `known` (matched by identical simplified form or
    /// by identical Borel support). `None` if some piece has no match.
    pub fn subtract(&self, known: &ModuleExpr) -> Option<ModuleExpr> {
        let mut left = self.pieces.clone();
        for p in &known.pieces {
            let pos = left.iter().position(|q| {
                let same_expr = p.to_expr().is_some() && p.to_expr() == q.to_expr();
                let same_support = p.borel_support().is_some() && p.borel_support() == q.borel_support();
                same_expr || same_support
            })?;
            left.remove(pos);
        }
        Some(ModuleExpr { pieces: left })
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| match p.to_expr() {
                Some(e) => format!("{e}"),
                None => format!("{p}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDescriptor {
    pub k: usize,
    /// `(k, r-2k, n-r+k)`.
    pub parabolic: [usize; 3],
    pub left: BlockTJMRef,
    pub right: BlockTJMRef,
    pub tau_twist: TwistMap,
    pub delta_p_twist: TwistMap,
    pub delta_dp_twist: TwistMap,
    pub net_twist: TwistMap,
    pub status: Status,
    /// The factor as an induced module, when both blocks are explicit.
    pub module: Option<InducedModule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TJMVerdict {
    pub n: usize,
    pub r: usize,
    pub rho1: ReprExpr,
    pub rho2: ReprExpr,
    pub status: Status,
    pub factors: Vec<FactorDescriptor>,
    pub resolved_module: Option<ModuleExpr>,
    pub shalika: Option<bool>,
    pub theorem: String,
}

/// Block Jacquet module by the decision table: trivial group, character,
/// `GL_2` central character, generic `G_{n+1}`, otherwise undecided.
pub fn block_tjm(rho: &ReprExpr, shape: &BlockShape) -> Result<BlockTJMRef> {
    if rho.rank() != shape.rank() {
        return Err(Error::RankMismatch {
            expected: shape.rank(),
            found: rho.rank(),
        });
    }
    let class = classify(rho);
    let (resolved, rule) = if shape.is_trivial_group() {
        let v = match rho.as_character() {
            Some((_, c)) => BlockValue::Dim1Char { c },
            None => BlockValue::Module { rep: rho.clone() },
        };
        (v, "trivial group")
    } else if class.is_character {
        (BlockValue::Zero, "characters kill non-trivial psi")
    } else if shape.rank() == 2 && shape.is_full_pair() && class.gl2_class {
        (
            BlockValue::Dim1Char {
                c: central_character(rho),
            },
            "GL(2) Whittaker functional: central character",
        )
    } else if class.is_generic_class && is_generic_shape(shape) {
        (BlockValue::NonZeroSymbolic, "generic representation of G_{n+1}")
    } else {
        (BlockValue::Unknown, "undecided")
    };
    Ok(BlockTJMRef {
        base: rho.clone(),
        shape: *shape,
        resolved,
        rule: rule.to_string(),
    })
}

/// `N(1,1)` inside `G_{n+1}` (with `r = n+1`) or `N(0,2)` inside `G_{n+1}`
/// (with `r = n-1`).
fn is_generic_shape(shape: &BlockShape) -> bool {
    let BlockShape { n, r, k, side, .. } = *shape;
    match side {
        Side::Left => k == 1 && r == n + 1,
        Side::Right => k == 0 && r + 1 == n,
    }
}

/// Where a block's content lands: the left block is a representation of the
/// `(a, b)` part, the right one of the `(b, c)` part. Content is explicit
/// only when one of the two pieces is empty.
fn place(block: &BlockTJMRef, slot_sizes: [usize; 3]) -> Option<(Slot, ReprExpr)> {
    let shape = &block.shape;
    let slot = match shape.side {
        Side::Left if shape.k == 0 => Slot::B,
        Side::Left if slot_sizes[1] == 0 => Slot::A,
        Side::Right if slot_sizes[2] == 0 => Slot::B,
        Side::Right if slot_sizes[1] == 0 => Slot::C,
        _ => return None,
    };
    let size = slot_sizes[slot as usize];
    let rep = match &block.resolved {
        BlockValue::Module { rep } => rep.clone(),
        BlockValue::Dim1Char { c } => ReprExpr::character(size, c.clone()),
        _ => return None,
    };
    Some((slot, rep))
}

fn factor(n: usize, r: usize, k: usize, rho1: &ReprExpr, rho2: &ReprExpr) -> Result<FactorDescriptor> {
    let shapes = shape_metadata(n, r, k)?;
    let left = block_tjm(rho1, &shapes.left)?;
    let right = block_tjm(rho2, &shapes.right)?;
    let tau = tau_twist(n, r, k);
    let dp = delta_p_twist(n, r, k);
    let ddp = delta_dp_twist(n, r, k);
    let net = tau + dp + ddp;
    let status = match (left.resolved.status(), right.resolved.status()) {
        (Status::Zero, _) | (_, Status::Zero) => Status::Zero,
        (Status::NonZero, Status::NonZero) => Status::NonZero,
        _ => Status::Unknown,
    };
    let module = if status == Status::NonZero {
        induced(k, shapes.parabolic, &left, &right, net)
    } else {
        None
    };
    Ok(FactorDescriptor {
        k,
        parabolic: shapes.parabolic,
        left,
        right,
        tau_twist: tau,
        delta_p_twist: dp,
        delta_dp_twist: ddp,
        net_twist: net,
        status,
        module,
    })
}

fn induced(
    k: usize,
    sizes: [usize; 3],
    left: &BlockTJMRef,
    right: &BlockTJMRef,
    net: TwistMap,
) -> Option<InducedModule> {
    let mut slots: Vec<SlotContent> = Vec::new();
    for (slot, rep) in [place(left, sizes)?, place(right, sizes)?] {
        match slots.iter_mut().find(|s| s.slot == slot) {
            Some(s) => s.parts.push(rep),
            None => slots.push(SlotContent {
                slot,
                size: sizes[slot as usize],
                parts: vec![rep],
                twist: net.get(slot),
            }),
        }
    }
    slots.sort_by_key(|s| s.slot as usize);
    Some(InducedModule { k, slots })
}

/// The filtration of `(rho_1 x rho_2)_{N,psi}` with `rho_1` on `G_r`.
pub fn tjm_filtration(n: usize, r: usize, rho1: &ReprExpr, rho2: &ReprExpr) -> Result<TJMVerdict> {
    let kr = KRange::new(n, r)?;
    if rho1.rank() != r {
        return Err(Error::RankMismatch {
            expected: r,
            found: rho1.rank(),
        });
    }
    if rho2.rank() != 2 * n - r {
        return Err(Error::RankMismatch {
            expected: 2 * n - r,
            found: rho2.rank(),
        });
    }
    let factors = kr
        .contributing()
        .map(|k| factor(n, r, k, rho1, rho2))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(n, r, rho1, rho2, factors, "structure theorem"))
}

fn assemble(
    n: usize,
    r: usize,
    rho1: &ReprExpr,
    rho2: &ReprExpr,
    factors: Vec<FactorDescriptor>,
    theorem: &str,
) -> TJMVerdict {
    let status = if factors.iter().all(|f| f.status == Status::Zero) {
        Status::Zero
    } else if factors.iter().any(|f| f.status == Status::NonZero) {
        Status::NonZero
    } else {
        Status::Unknown
    };
    let resolved_module = if factors.iter().any(|f| f.status == Status::Unknown) {
        None
    } else {
        factors
            .iter()
            .filter(|f| f.status == Status::NonZero)
            .map(|f| f.module.clone())
            .collect::<Option<Vec<_>>>()
            .map(|pieces| ModuleExpr { pieces })
    };
    TJMVerdict {
        n,
        r,
        rho1: rho1.clone(),
        rho2: rho2.clone(),
        status,
        factors,
        resolved_module,
        shalika: None,
        theorem: theorem.to_string(),
    }
}

/// `chi x rho` with `chi` a character of `G_r`.
pub fn tjm_char_smooth(n: usize, r: usize, chi: &FormalCharacter, rho: &ReprExpr) -> Result<TJMVerdict> {
    let mut v = tjm_filtration(n, r, &ReprExpr::character(r, chi.clone()), rho)?;
    v.theorem = "character x smooth".into();
    Ok(v)
}

/// `rho x mu` with `mu` a character of `G_{2n-r}`.
pub fn tjm_smooth_char(n: usize, r: usize, rho: &ReprExpr, mu: &FormalCharacter) -> Result<TJMVerdict> {
    let mut v = tjm_filtration(n, r, rho, &ReprExpr::character(2 * n - r, mu.clone()))?;
    v.theorem = "smooth x character".into();
    Ok(v)
}

/// Split a product into a left part of rank `r` and the rest.
pub fn split_at_rank(e: &ReprExpr, r: usize) -> Option<(ReprExpr, ReprExpr)> {
    let fs = e.factors();
    let mut acc = 0;
    for i in 0..fs.len() {
        acc += fs[i].rank();
        if acc == r {
            let left = ReprExpr::product(fs[..=i].iter().map(|f| (*f).clone()).collect());
            let right = ReprExpr::product(fs[i + 1..].iter().map(|f| (*f).clone()).collect());
            if right.rank() == 0 {
                return None;
            }
            return Some((left, right));
        }
    }
    None
}

/// Evidence that `pi_{N,psi} = 0` for an irreducible `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    /// The representation containing `pi` as a subquotient (or `pi` itself).
    pub ambient: ReprExpr,
    pub r: usize,
    pub reason: String,
}

/// Look for a reason that `L(m)` of `G_2n` has zero twisted Jacquet module:
/// it is a character, or it embeds in a standard module `Z(D_1) x ... x
/// Z(D_k)` (resp. is a quotient of `L(D_1) x ... x L(D_k)`) with some
/// bracketing `(..) x (..)` whose module vanishes.
pub fn zero_certificate(m: &Multisegment, n: usize) -> Result<Option<ZeroCertificate>> {
    if m.degree() != 2 * n {
        return Err(Error::RankMismatch {
            expected: 2 * n,
            found: m.degree(),
        });
    }
    let z = mw_dual(m);
    if z.len() == 1 {
        return Ok(Some(ZeroCertificate {
            ambient: ReprExpr::z(z),
            r: 2 * n,
            reason: "character of G_2n".into(),
        }));
    }
    let standard = [
        (
            z.segments()
                .iter()
                .map(|s| ReprExpr::z(Multisegment::new(vec![s.clone()])))
                .collect::<Vec<_>>(),
            "submodule of",
        ),
        (
            m.segments()
                .iter()
                .map(|s| ReprExpr::l(Multisegment::new(vec![s.clone()])))
                .collect(),
            "quotient of",
        ),
    ];
    for (factors, how) in standard {
        for i in 1..factors.len() {
            let left = ReprExpr::product(factors[..i].to_vec());
            let right = ReprExpr::product(factors[i..].to_vec());
            let r = left.rank();
            let v = tjm_filtration(n, r, &left, &right)?;
            if v.status == Status::Zero {
                let ambient = ReprExpr::product(vec![left, right]);
                return Ok(Some(ZeroCertificate {
                    reason: format!("{how} {ambient}, whose module vanishes"),
                    ambient,
                    r,
                }));
            }
        }
    }
    Ok(None)
}

/// One line of a subquotient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubquotientRow {
    pub name: String,
    /// Langlands data `m` with the subquotient equal to `L(m)`.
    pub langlands_data: Multisegment,
    pub status: Status,
    pub module: Option<ModuleExpr>,
    pub provenance: String,
}

impl SubquotientRow {
    fn zero(name: &str, m: Multisegment, provenance: String) -> Self {
        SubquotientRow {
            name: name.into(),
            langlands_data: m,
            status: Status::Zero,
            module: Some(ModuleExpr::default()),
            provenance,
        }
    }
}

fn zero_row(name: &str, m: Multisegment, n: usize) -> Result<SubquotientRow> {
    Ok(match zero_certificate(&m, n)? {
        Some(c) => SubquotientRow::zero(name, m, c.reason),
        None => SubquotientRow {
            name: name.into(),
            langlands_data: m,
            status: Status::Unknown,
            module: None,
            provenance: "no vanishing certificate".into(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LFamilyReport {
    pub n: usize,
    pub alpha: usize,
    pub chi: FormalCharacter,
    /// `xi = chi nu^alpha x chi` (characters of `G_n`).
    pub xi: ReprExpr,
    pub xi_verdict: TJMVerdict,
    /// `Z(Delta u Delta_alpha) x Z(Delta n Delta_alpha)`.
    pub quotient: ReprExpr,
    pub quotient_status: Status,
    pub quotient_reason: String,
    pub langlands_data: Multisegment,
    /// The verdict for `L_{chi,alpha}` itself.
    pub verdict: TJMVerdict,
}

/// `L_{chi,alpha}`: the submodule of `xi_{chi,alpha}` with quotient
/// `Z(Delta u Delta_alpha) x Z(Delta n Delta_alpha)`, whose module vanishes,
/// so that `(L_{chi,alpha})_{N,psi} = chi (x) chi nu^alpha`.
pub fn analyze_l_family(n: usize, alpha: usize, chi: &FormalCharacter) -> Result<LFamilyReport> {
    if alpha < 1 || alpha > n {
        return Err(Error::OutOfRange(format!("alpha = {alpha} must lie in 1..={n}")));
    }
    let (da, d) = l_chi_alpha_segments(n, alpha, chi);
    let xi = ReprExpr::product(vec![
        ReprExpr::z(Multisegment::new(vec![da.clone()])),
        ReprExpr::z(Multisegment::new(vec![d.clone()])),
    ]);
    let xi_verdict = tjm_filtration(
        n,
        n,
        &ReprExpr::character(n, da.center_character()),
        &ReprExpr::character(n, d.center_character()),
    )?;

    let (u, i) = union_intersect(&d, &da)?;
    let (quotient, quotient_status, quotient_reason) = match &i {
        None => (
            ReprExpr::z(Multisegment::new(vec![u.clone()])),
            Status::Zero,
            "character of G_2n".to_string(),
        ),
        Some(i) => {
            let left = ReprExpr::character(u.len(), u.center_character());
            let right = ReprExpr::character(i.len(), i.center_character());
            let v = tjm_filtration(n, u.len(), &left, &right)?;
            (
                ReprExpr::product(vec![left, right]),
                v.status,
                "two characters".to_string(),
            )
        }
    };
    if quotient_status != Status::Zero {
        return Err(Error::Consistency(format!("{quotient} should have zero module")));
    }

    let m_t = l_chi_alpha_dual_closed_form(n, alpha, chi);
    let langlands_data = mw_dual(&Multisegment::new(vec![da, d]));
    if langlands_data != m_t {
        return Err(Error::Consistency(format!("MW gives {langlands_data}, expected {m_t}")));
    }

    let mut verdict = xi_verdict.clone();
    verdict.theorem = "L_{chi,alpha} corollary".into();
    // chi (x) chi nu^alpha is trivial on the diagonal iff chi^2 nu^alpha = 1.
    let diag = chi.mul(chi).shift(HalfInt::whole(alpha as i64));
    verdict.shalika = Some(diag.is_trivial());
    Ok(LFamilyReport {
        n,
        alpha,
        chi: chi.clone(),
        xi,
        xi_verdict,
        quotient,
        quotient_status,
        quotient_reason,
        langlands_data,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergCharReport {
    pub n: usize,
    pub r: usize,
    pub chi: FormalCharacter,
    pub sign: Sign,
    /// `St_r chi x chi nu^{-+n}`.
    pub product: ReprExpr,
    pub reducible: bool,
    pub product_verdict: TJMVerdict,
    pub z: SubquotientRow,
    pub q: SubquotientRow,
    /// The contragredient family `chi^{-1} nu^{+-n} x St_r chi^{-1}`.
    pub dual_product: ReprExpr,
    pub dual_verdict: TJMVerdict,
    pub z_dual: SubquotientRow,
    pub q_dual: SubquotientRow,
}

/// Split `product` (of length two) between two irreducible constituents:
/// those with a vanishing certificate are zero, and if exactly one is left
/// it carries the whole module.
fn split_length_two(
    n: usize,
    product_verdict: &TJMVerdict,
    names: [&str; 2],
    data: [Multisegment; 2],
    provenance: &str,
) -> Result<[SubquotientRow; 2]> {
    let [m0, m1] = data;
    if product_verdict.status == Status::Zero {
        let why = format!("subquotient of a representation with zero module ({provenance})");
        return Ok([
            SubquotientRow::zero(names[0], m0, why.clone()),
            SubquotientRow::zero(names[1], m1, why),
        ]);
    }
    let r0 = zero_row(names[0], m0, n)?;
    let r1 = zero_row(names[1], m1, n)?;
    let fill = |row: SubquotientRow| -> SubquotientRow {
        if product_verdict.status == Status::NonZero {
            SubquotientRow {
                status: Status::NonZero,
                module: product_verdict.resolved_module.clone(),
                provenance: format!("{provenance}: the other constituent has zero module"),
                ..row
            }
        } else {
            row
        }
    };
    Ok(match (r0.status, r1.status) {
        (Status::Zero, Status::Zero) => {
            return Err(Error::Consistency(
                "both constituents vanish but the product does not".into(),
            ))
        }
        (Status::Zero, _) => [r0, fill(r1)],
        (_, Status::Zero) => [fill(r0), r1],
        _ => [r0, r1],
    })
}

/// Subquotients of `St_r chi x chi nu^{-n}` (or `chi nu^{+n}`), `r <= n`,
/// and their contragredients.
pub fn analyze_steinberg_char(n: usize, r: usize, chi: &FormalCharacter, sign: Sign) -> Result<SteinbergCharReport> {
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!(
            "r = {r} must lie in 1..={n}; for r > n both subquotients can be non-zero, see the xi preset"
        )));
    }
    let s = match sign {
        Sign::Minus => -(n as i64),
        Sign::Plus => n as i64,
    };
    let mu = chi.shift(HalfInt::whole(s));
    let delta = Segment::centered(r, chi);
    let delta_p = Segment::centered(2 * n - r, &mu);
    let reducible = juxtaposed(&delta, &delta_p);

    let st = ReprExpr::steinberg(r, chi.clone());
    let ch = ReprExpr::character(2 * n - r, mu.clone());
    let product = ReprExpr::product(vec![st.clone(), ch.clone()]);
    let product_verdict = tjm_filtration(n, r, &st, &ch)?;

    // Z: Zelevinsky data singletons(Delta) + Delta'; Q: Langlands data
    // Delta + singletons(Delta').
    let z_data = mw_dual(
        &Multisegment::new(vec![delta.clone()])
            .singletons()
            .union(&Multisegment::new(vec![delta_p.clone()])),
    );
    let q_data = Multisegment::new(vec![delta.clone()]).union(&Multisegment::new(vec![delta_p.clone()]).singletons());

    let dual_product = ReprExpr::product(vec![ch.dual(), st.dual()]);
    let dual_verdict = tjm_filtration(n, 2 * n - r, &ch.dual(), &st.dual())?;

    let ([z, q], [z_dual, q_dual]) = if reducible {
        (
            split_length_two(
                n,
                &product_verdict,
                ["Z", "Q"],
                [z_data.clone(), q_data.clone()],
                "Steinberg x character",
            )?,
            split_length_two(
                n,
                &dual_verdict,
                ["Z^v", "Q^v"],
                [z_data.dual(), q_data.dual()],
                "contragredient",
            )?,
        )
    } else {
        let irreducible = |name: &str, v: &TJMVerdict, m: Multisegment| SubquotientRow {
            name: name.into(),
            langlands_data: m,
            status: v.status,
            module: v.resolved_module.clone(),
            provenance: "irreducible product".into(),
        };
        let m = product.langlands_data()?;
        (
            [
                irreducible("Z", &product_verdict, m.clone()),
                irreducible("Q", &product_verdict, m.clone()),
            ],
            [
                irreducible("Z^v", &dual_verdict, m.dual()),
                irreducible("Q^v", &dual_verdict, m.dual()),
            ],
        )
    };
    Ok(SteinbergCharReport {
        n,
        r,
        chi: chi.clone(),
        sign,
        product,
        reducible,
        product_verdict,
        z,
        q,
        dual_product,
        dual_verdict,
        z_dual,
        q_dual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub preset: String,
    pub rows: Vec<SubquotientRow>,
    /// Intermediate facts the pipeline asserted along the way.
    pub checks: Vec<String>,
}

pub fn analyze_preset(name: &str) -> Result<TableReport> {
    match name {
        "xi" => preset_xi(),
        "sigma" => preset_sigma(),
        other => Err(Error::Unsupported(format!(
            "unknown preset {other:?}; expected xi or sigma"
        ))),
    }
}

fn ms(v: &[(i64, i64)]) -> Multisegment {
    v.iter()
        .map(|&(b, e)| Segment::nu(HalfInt::half(b), HalfInt::half(e)))
        .collect()
}

fn ensure(checks: &mut Vec<String>, ok: bool, what: String) -> Result<()> {
    if !ok {
        return Err(Error::Consistency(what));
    }
    checks.push(what);
    Ok(())
}

fn nu(t2: i64) -> FormalCharacter {
    FormalCharacter::nu(HalfInt::half(t2))
}

/// Subquotients of `xi = nu^{3/2} x nu^{1/2} x nu^{-1/2} x nu^{-3/2}`.
fn preset_xi() -> Result<TableReport> {
    let n = 2;
    let mut checks = Vec::new();

    // 1_4
    let one4 = ms(&[(3, 3), (1, 1), (-1, -1), (-3, -3)]);
    let row_one = zero_row("1_4", one4, n)?;

    // Z_{nu,2}, Q_{nu,2} and duals from St_2 nu x nu_2^{-1}.
    let sc = analyze_steinberg_char(n, 2, &nu(2), Sign::Minus)?;
    let mut row_q = sc.q.clone();
    row_q.name = "Q_{nu,2}".into();
    let mut row_qd = sc.q_dual.clone();
    row_qd.name = "Q_{nu,2}^v".into();
    let mut row_z = sc.z.clone();
    row_z.name = "Z_{nu,2}".into();
    let mut row_zd = sc.z_dual.clone();
    row_zd.name = "Z_{nu,2}^v".into();
    ensure(
        &mut checks,
        row_z.langlands_data == ms(&[(-1, 3), (-3, -3)]),
        format!(
            "Z_{{nu,2}} = L({}) = L(St_3 nu^{{1/2}} x nu^{{-3/2}})",
            row_z.langlands_data
        ),
    )?;
    ensure(
        &mut checks,
        mw_dual(&row_z.langlands_data) == ms(&[(3, 3), (1, 1), (-3, -1)]),
        "Z_{nu,2} is the submodule of nu^{3/2} x nu^{1/2} x nu_2^{-1}".into(),
    )?;

    // L_{nu^{-1},2} from nu_2 x nu_2^{-1}.
    let lf = analyze_l_family(n, 2, &nu(-2))?;
    let row_l = SubquotientRow {
        name: "L_{nu^-1,2}".into(),
        langlands_data: lf.langlands_data.clone(),
        status: lf.verdict.status,
        module: lf.verdict.resolved_module.clone(),
        provenance: "L_{chi,alpha} corollary".into(),
    };

    // tau: realised inside zeta = 1_2 x nu^{3/2} x nu^{-3/2}, whose other
    // constituents are 1_4, Q_{nu,2}, Q_{nu,2}^v.
    let tau_m = ms(&[(1, 3), (-3, -1)]);
    let tau_z = mw_dual(&tau_m);
    ensure(
        &mut checks,
        tau_z == ms(&[(3, 3), (-1, 1), (-3, -3)]),
        format!("tau = Z({tau_z})"),
    )?;
    let n2 = ms(&[(3, 3), (-3, 1)]);
    let n3 = ms(&[(-1, 3), (-3, -3)]);
    ensure(
        &mut checks,
        mw_dual(&n2) == row_q.langlands_data,
        "Z(n_2) = Q_{nu,2}".into(),
    )?;
    ensure(
        &mut checks,
        mw_dual(&n3) == row_qd.langlands_data,
        "Z(n_3) = Q_{nu,2}^v".into(),
    )?;
    let others = [&row_one, &row_q, &row_qd];
    ensure(
        &mut checks,
        others.iter().all(|r| r.status == Status::Zero),
        "1_4, Q_{nu,2}, Q_{nu,2}^v have zero module".into(),
    )?;
    let zeta_l = ReprExpr::nu_char(2, HalfInt::ZERO);
    let zeta_r = ReprExpr::product(vec![
        ReprExpr::nu_char(1, HalfInt::half(3)),
        ReprExpr::nu_char(1, HalfInt::half(-3)),
    ]);
    let zeta = tjm_filtration(n, 2, &zeta_l, &zeta_r)?;
    let tau_module = zeta
        .resolved_module
        .clone()
        .ok_or_else(|| Error::Consistency("zeta module unresolved".into()))?;
    let row_tau = SubquotientRow {
        name: "tau".into(),
        langlands_data: tau_m.clone(),
        status: if tau_module.is_zero() {
            Status::Zero
        } else {
            Status::NonZero
        },
        module: Some(tau_module.clone()),
        provenance: "tau lemma: the other constituents of 1_2 x nu^{3/2} x nu^{-3/2} vanish".into(),
    };

    // St_4 and tau are the constituents of St_2 nu^{-1} x St_2 nu.
    let st = tjm_filtration(
        n,
        2,
        &ReprExpr::nu_steinberg(2, HalfInt::whole(-1)),
        &ReprExpr::nu_steinberg(2, HalfInt::whole(1)),
    )?;
    let st_module = st
        .resolved_module
        .as_ref()
        .and_then(|m| m.subtract(&tau_module))
        .ok_or_else(|| Error::Consistency("cannot remove tau from St_2 nu^-1 x St_2 nu".into()))?;
    ensure(
        &mut checks,
        st_module.pieces.len() == 1,
        format!("St_4 accounts for {st_module}"),
    )?;
    let row_st = SubquotientRow {
        name: "St_4".into(),
        langlands_data: ms(&[(-3, 3)]),
        status: if st_module.is_zero() {
            Status::Zero
        } else {
            Status::NonZero
        },
        module: Some(st_module),
        provenance: "St_3 nu^{1/2} x nu^{-3/2} corollary: tau removed from St_2 nu^{-1} x St_2 nu".into(),
    };

    for row in [&row_l, &row_tau, &row_z, &row_zd, &row_st] {
        ensure(
            &mut checks,
            zero_certificate(&row.langlands_data, n)?.is_none(),
            format!("no vanishing certificate for {}", row.name),
        )?;
    }

    Ok(TableReport {
        preset: "xi".into(),
        rows: vec![row_one, row_q, row_qd, row_l, row_tau, row_z, row_zd, row_st],
        checks,
    })
}

/// An irreducible product `l x r` of `G_4` as a table row.
fn product_row(name: &str, l: ReprExpr, r: ReprExpr, checks: &mut Vec<String>) -> Result<SubquotientRow> {
    let n = 2;
    let product = ReprExpr::product(vec![l.clone(), r.clone()]);
    ensure(
        checks,
        product_irreducible_expr(&[l.clone(), r.clone()]) == Some(true),
        format!("{product} is irreducible"),
    )?;
    let v = tjm_filtration(n, l.rank(), &l, &r)?;
    Ok(SubquotientRow {
        name: name.into(),
        langlands_data: product.langlands_data()?,
        status: v.status,
        module: v.resolved_module.clone(),
        provenance: provenance_of(&v),
    })
}

/// Subquotients of `sigma = nu x 1 x 1 x nu^{-1}`.
fn preset_sigma() -> Result<TableReport> {
    let n = 2;
    let mut checks = Vec::new();
    let mut rows = vec![
        product_row(
            "1_3 x 1",
            ReprExpr::nu_char(3, HalfInt::ZERO),
            ReprExpr::nu_char(1, HalfInt::ZERO),
            &mut checks,
        )?,
        product_row(
            "St_2 nu^{1/2} x nu_2^{-1/2}",
            ReprExpr::nu_steinberg(2, HalfInt::half(1)),
            ReprExpr::nu_char(2, HalfInt::half(-1)),
            &mut checks,
        )?,
        product_row(
            "nu_2^{1/2} x St_2 nu^{-1/2}",
            ReprExpr::nu_char(2, HalfInt::half(1)),
            ReprExpr::nu_steinberg(2, HalfInt::half(-1)),
            &mut checks,
        )?,
    ];

    let lf = analyze_l_family(n, 1, &nu(-1))?;
    ensure(
        &mut checks,
        lf.quotient
            == ReprExpr::product(vec![
                ReprExpr::nu_char(3, HalfInt::ZERO),
                ReprExpr::nu_char(1, HalfInt::ZERO),
            ]),
        format!("nu_2^{{1/2}} x nu_2^{{-1/2}} has quotient {} = 1_3 x 1", lf.quotient),
    )?;
    rows.push(SubquotientRow {
        name: "L_{nu^-1/2,1}".into(),
        langlands_data: lf.langlands_data.clone(),
        status: lf.verdict.status,
        module: lf.verdict.resolved_module.clone(),
        provenance: "L_{chi,alpha} corollary (Shalika model)".into(),
    });

    let st3 = ReprExpr::nu_steinberg(3, HalfInt::ZERO);
    let one = ReprExpr::nu_char(1, HalfInt::ZERO);
    ensure(
        &mut checks,
        classify(&ReprExpr::product(vec![st3.clone(), one.clone()])).is_generic_class,
        "St_3 x 1 is generic".into(),
    )?;
    rows.push(product_row("St_3 x 1", st3, one, &mut checks)?);
    Ok(TableReport {
        preset: "sigma".into(),
        rows,
        checks,
    })
}

fn provenance_of(v: &TJMVerdict) -> String {
    let rules: Vec<&str> = v
        .factors
        .iter()
        .filter(|f| f.status == Status::NonZero)
        .flat_map(|f| [f.left.rule.as_str(), f.right.rule.as_str()])
        .collect();
    if rules.iter().any(|r| r.starts_with("generic")) {
        "generic G_{n+1}".into()
    } else if v.status == Status::NonZero {
        "equal-rank factor: rho_1 (x) rho_2".into()
    } else {
        v.theorem.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{half, whole, CharLabel};

    fn chi() -> FormalCharacter {
        FormalCharacter::new(CharLabel::generator("chi"), HalfInt::ZERO)
    }

    #[test]
    fn twist_sources_cancel_in_equal_case() {
        for n in 1..=8 {
            let t = tau_twist(n, n, 0) + delta_p_twist(n, n, 0) + delta_dp_twist(n, n, 0);
            assert!(t.is_zero(), "n = {n}: {t:?}");
        }
    }

    #[test]
    fn gl4_twists() {
        let t = tau_twist(2, 2, 1) + delta_p_twist(2, 2, 1) + delta_dp_twist(2, 2, 1);
        assert_eq!((t.a, t.c), (half(1), half(-1)));
    }

    #[test]
    fn two_characters() {
        for n in 1..=4 {
            for r in 1..2 * n {
                let a = ReprExpr::character(r, chi());
                let b = ReprExpr::character(2 * n - r, chi().inv());
                let v = tjm_filtration(n, r, &a, &b).unwrap();
                assert_eq!(v.status == Status::Zero, r != n);
            }
        }
    }

    #[test]
    fn gl4_structure() {
        let a = ReprExpr::nu_steinberg(2, whole(-1));
        let b = ReprExpr::nu_steinberg(2, whole(1));
        let v = tjm_filtration(2, 2, &a, &b).unwrap();
        let m = v.resolved_module.unwrap();
        assert_eq!(m.pieces.len(), 2);
        let k1 = m.pieces[1].to_expr().unwrap();
        assert_eq!(
            k1.borel_support().unwrap(),
            vec![FormalCharacter::nu(half(-3)), FormalCharacter::nu(half(3))]
        );
        assert_eq!(
            k1,
            ReprExpr::product(vec![ReprExpr::nu_char(1, half(-3)), ReprExpr::nu_char(1, half(3))])
        );
    }

    #[test]
    fn block_rules() {
        let s = BlockShape::left(2, 2, 1);
        let b = block_tjm(&ReprExpr::nu_char(2, whole(0)), &s).unwrap();
        assert_eq!(b.resolved, BlockValue::Zero);
        let b = block_tjm(&ReprExpr::nu_steinberg(2, whole(1)), &s).unwrap();
        assert_eq!(
            b.resolved,
            BlockValue::Dim1Char {
                c: FormalCharacter::nu(whole(2))
            }
        );
        let b = block_tjm(&ReprExpr::nu_steinberg(3, whole(0)), &BlockShape::left(2, 3, 1)).unwrap();
        assert_eq!(b.resolved, BlockValue::NonZeroSymbolic);
        assert!(block_tjm(&ReprExpr::nu_char(3, whole(0)), &s).is_err());
    }

    #[test]
    fn generic_in_both_orders() {
        for n in 2..=5 {
            let rho = ReprExpr::steinberg(n + 1, chi());
            let eta = ReprExpr::z(Multisegment::new(vec![Segment::centered(n - 1, &chi())]).singletons());
            assert_eq!(tjm_filtration(n, n + 1, &rho, &eta).unwrap().status, Status::NonZero);
            assert_eq!(tjm_filtration(n, n - 1, &eta, &rho).unwrap().status, Status::NonZero);
        }
    }

    #[test]
    fn char_smooth() {
        let rho = ReprExpr::steinberg(3, chi());
        assert_eq!(tjm_char_smooth(2, 1, &chi(), &rho).unwrap().status, Status::NonZero);
        // linked pair: L(m) is not generic, so the k = 0 block stays open
        let d = Segment::centered(2, &chi());
        let rho = ReprExpr::l(Multisegment::new(vec![d.shift(whole(1)), d]));
        assert_eq!(tjm_char_smooth(3, 2, &chi(), &rho).unwrap().status, Status::Unknown);
        let st2 = ReprExpr::steinberg(2, chi());
        assert_eq!(tjm_smooth_char(3, 2, &st2, &chi()).unwrap().status, Status::Zero);
        assert_eq!(
            tjm_char_smooth(2, 3, &chi(), &ReprExpr::steinberg(1, chi()))
                .unwrap()
                .status,
            Status::Zero
        );
    }

    #[test]
    fn l_family_shalika() {
        for n in 1..=4usize {
            for a in 1..=n {
                let c = FormalCharacter::nu(HalfInt::half(-(a as i64)));
                let rep = analyze_l_family(n, a, &c).unwrap();
                assert_eq!(rep.verdict.shalika, Some(true));
                assert_eq!(rep.verdict.status, Status::NonZero);
                let rep = analyze_l_family(n, a, &chi()).unwrap();
                assert_eq!(rep.verdict.shalika, Some(false));
            }
        }
        assert!(analyze_l_family(2, 3, &chi()).is_err());
    }

    #[test]
    fn steinberg_char_family() {
        for n in 1..=4 {
            for r in 1..n {
                let rep = analyze_steinberg_char(n, r, &chi(), Sign::Minus).unwrap();
                assert!(rep.reducible);
                assert_eq!(rep.z.status, Status::Zero);
                assert_eq!(rep.q.status, Status::Zero);
                assert_eq!(rep.z_dual.status, Status::Zero);
            }
            let rep = analyze_steinberg_char(n, n, &chi(), Sign::Minus).unwrap();
            assert_eq!(rep.q.status, Status::Zero, "n = {n}");
            assert_eq!(rep.z.status, Status::NonZero);
            assert_eq!(rep.q_dual.status, Status::Zero);
            assert_eq!(rep.z_dual.status, Status::NonZero);
        }
        assert!(analyze_steinberg_char(2, 3, &chi(), Sign::Minus).is_err());
    }

    #[test]
    fn presets() {
        let t = analyze_preset("xi").unwrap();
        let got: Vec<Status> = t.rows.iter().map(|r| r.status).collect();
        use Status::*;
        assert_eq!(got, vec![Zero, Zero, Zero, NonZero, NonZero, NonZero, NonZero, NonZero]);
        let t = analyze_preset("sigma").unwrap();
        let got: Vec<(String, Status)> = t.rows.iter().map(|r| (r.name.clone(), r.status)).collect();
        assert_eq!(got[0], ("1_3 x 1".to_string(), Zero));
        assert!(got[1..].iter().all(|(_, s)| *s == NonZero), "{got:?}");
        assert!(analyze_preset("nope").is_err());
    }
}
