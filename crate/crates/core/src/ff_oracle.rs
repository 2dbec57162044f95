//! Brute-force checks over `GL_m(F_p)` for `m <= 4`, `p in {2, 3}`:
//! induced characters, twisted coinvariant dimensions by exact character
//! sums, and double-coset partitions by orbit search.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::doublecosets::{representatives, w_matrix, KRange, PermMatrix};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

fn check_field(p: u8, m: usize) -> Result<()> {
    if p != 2 && p != 3 {
        return Err(Error::Unsupported(format!("p = {p}, only 2 and 3 are supported")));
    }
    if m > MAX_DIM {
        return Err(Error::Unsupported(format!("dimension {m} exceeds {MAX_DIM}")));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u8,
    m: usize,
    e: [u8; MAX_DIM * MAX_DIM],
}

impl FpMatrix {
    pub fn zero(p: u8, m: usize) -> Self {
        FpMatrix { p, m, e: [0; 16] }
    }

    pub fn identity(p: u8, m: usize) -> Self {
        let mut a = Self::zero(p, m);
        for i in 0..m {
            a.set(i, i, 1);
        }
        a
    }

    pub fn from_rows(p: u8, rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        check_field(p, m)?;
        let mut a = Self::zero(p, m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::OutOfRange("matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                a.set(i, j, x.rem_euclid(p as i64) as u8);
            }
        }
        Ok(a)
    }

    pub fn from_perm(w: &PermMatrix, p: u8) -> Self {
        let mut a = Self::zero(p, w.size());
        for (j, &i) in w.perm().iter().enumerate() {
            a.set(i, j, 1);
        }
        a
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        let m = self.m;
        self.e[i * m + j] = x % self.p;
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        let (m, p) = (self.m, self.p as u32);
        let mut out = Self::zero(self.p, m);
        for i in 0..m {
            for j in 0..m {
                let s: u32 = (0..m).map(|t| self.get(i, t) as u32 * o.get(t, j) as u32).sum();
                out.e[i * m + j] = (s % p) as u8;
            }
        }
        out
    }

    /// Row reduction over `F_p`; returns the determinant and, if it is
    /// non-zero, the inverse.
    fn reduce(&self) -> (u8, Option<FpMatrix>) {
        let (m, p) = (self.m, self.p as i64);
        let mut a: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| self.get(i, j) as i64).collect())
            .collect();
        let mut inv: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i64).collect()).collect();
        let mut det = 1i64;
        for c in 0..m {
            let Some(piv) = (c..m).find(|&i| a[i][c] != 0) else {
                return (0, None);
            };
            if piv != c {
                a.swap(piv, c);
                inv.swap(piv, c);
                det = -det;
            }
            let x = a[c][c];
            det = (det * x).rem_euclid(p);
            // every unit of F_2 and F_3 is its own inverse
            let xi = x;
            for j in 0..m {
                a[c][j] = (a[c][j] * xi).rem_euclid(p);
                inv[c][j] = (inv[c][j] * xi).rem_euclid(p);
            }
            for i in 0..m {
                if i != c && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..m {
                        a[i][j] = (a[i][j] - f * a[c][j]).rem_euclid(p);
                        inv[i][j] = (inv[i][j] - f * inv[c][j]).rem_euclid(p);
                    }
                }
            }
        }
        let mut out = Self::zero(self.p, m);
        for (i, row) in inv.iter().enumerate().take(m) {
            for (j, &x) in row.iter().enumerate().take(m) {
                out.e[i * m + j] = x as u8;
            }
        }
        (det.rem_euclid(p) as u8, Some(out))
    }

    pub fn det(&self) -> u8 {
        self.reduce().0
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        self.reduce().1
    }

    /// Perfect hash: entries read as base-`p` digits, row-major.
    pub fn key(&self) -> usize {
        let mut k = 0usize;
        for i in (0..self.m * self.m).rev() {
            k = k * self.p as usize + self.e[i] as usize;
        }
        k
    }

    pub fn from_key(p: u8, m: usize, mut key: usize) -> Self {
        let mut a = Self::zero(p, m);
        for i in 0..m * m {
            a.e[i] = (key % p as usize) as u8;
            key /= p as usize;
        }
        a
    }

    /// `g v` for a column vector coded in base `p`.
    fn apply(&self, v: usize) -> usize {
        let x = decode(self.p, self.m, v);
        let mut y = [0u8; MAX_DIM];
        for (i, yi) in y.iter_mut().enumerate().take(self.m) {
            let s: u32 = (0..self.m).map(|j| self.get(i, j) as u32 * x[j] as u32).sum();
            *yi = (s % self.p as u32) as u8;
        }
        encode(self.p, self.m, &y)
    }

    /// Determinant of the diagonal block on rows and columns `lo..hi`.
    fn block_det(&self, lo: usize, hi: usize) -> u8 {
        let rows: Vec<Vec<i64>> = (lo..hi)
            .map(|i| (lo..hi).map(|j| self.get(i, j) as i64).collect())
            .collect();
        FpMatrix::from_rows(self.p, &rows).map(|b| b.det()).unwrap_or(0)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}] mod {}", rows.join("; "), self.p)
    }
}

fn decode(p: u8, m: usize, mut v: usize) -> [u8; MAX_DIM] {
    let mut x = [0u8; MAX_DIM];
    for xi in x.iter_mut().take(m) {
        *xi = (v % p as usize) as u8;
        v /= p as usize;
    }
    x
}

fn encode(p: u8, m: usize, x: &[u8; MAX_DIM]) -> usize {
    x[..m].iter().rev().fold(0, |acc, &d| acc * p as usize + d as usize)
}

/// Element `a + b w` of `Z[w]`, `w` a primitive `p`-th root of unity.
/// For `p = 2` the `b` part stays zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycInt {
    pub a: i64,
    pub b: i64,
}

impl CycInt {
    pub fn int(a: i64) -> Self {
        CycInt { a, b: 0 }
    }

    /// `psi_0(x)^{-1}` for the standard additive character of `F_p`.
    pub fn psi_inv(p: u8, x: u8) -> Self {
        match (p, x % p) {
            (_, 0) => CycInt::int(1),
            (2, _) => CycInt::int(-1),
            // w^{-1} = w^2 = -1 - w
            (_, 1) => CycInt { a: -1, b: -1 },
            _ => CycInt { a: 0, b: 1 },
        }
    }

    pub fn scale(self, k: i64) -> Self {
        CycInt {
            a: self.a * k,
            b: self.b * k,
        }
    }

    pub fn to_integer(self) -> Option<i64> {
        (self.b == 0).then_some(self.a)
    }
}

impl std::ops::Add for CycInt {
    type Output = CycInt;
    fn add(self, o: CycInt) -> CycInt {
        CycInt {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl std::ops::Mul for CycInt {
    type Output = CycInt;
    // w^2 = -1 - w
    fn mul(self, o: CycInt) -> CycInt {
        let bb = self.b * o.b;
        CycInt {
            a: self.a * o.a - bb,
            b: self.a * o.b + self.b * o.a - bb,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeviChar {
    Trivial,
    Quadratic,
}

impl LeviChar {
    fn value(self, det: u8) -> i64 {
        match self {
            LeviChar::Trivial => 1,
            LeviChar::Quadratic if det == 1 => 1,
            LeviChar::Quadratic => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedCharSpec {
    pub p: u8,
    pub composition: Vec<usize>,
    pub levi_character: Vec<LeviChar>,
}

impl InducedCharSpec {
    pub fn new(p: u8, composition: Vec<usize>, levi_character: Vec<LeviChar>) -> Result<Self> {
        let total: usize = composition.iter().sum();
        check_field(p, total)?;
        if composition.len() != levi_character.len() || composition.contains(&0) {
            return Err(Error::OutOfRange(
                "composition and characters must match, blocks non-empty".into(),
            ));
        }
        if p == 2 && levi_character.contains(&LeviChar::Quadratic) {
            return Err(Error::Unsupported("F_2^x has no quadratic character".into()));
        }
        Ok(InducedCharSpec {
            p,
            composition,
            levi_character,
        })
    }

    pub fn trivial(p: u8, composition: Vec<usize>) -> Result<Self> {
        let c = vec![LeviChar::Trivial; composition.len()];
        Self::new(p, composition, c)
    }

    pub fn total(&self) -> usize {
        self.composition.iter().sum()
    }
}

fn vadd(p: u8, m: usize, x: usize, y: usize, c: u8) -> usize {
    let (a, b) = (decode(p, m, x), decode(p, m, y));
    let mut z = [0u8; MAX_DIM];
    for i in 0..m {
        z[i] = ((a[i] as u32 + c as u32 * b[i] as u32) % p as u32) as u8;
    }
    encode(p, m, &z)
}

/// Subspaces as bitmasks over the `p^m <= 81` vectors.
fn span_with(p: u8, m: usize, mask: u128, v: usize) -> u128 {
    let mut out = mask;
    for s in 0..(p as usize).pow(m as u32) {
        if mask >> s & 1 == 1 {
            for c in 1..p {
                out |= 1u128 << vadd(p, m, s, v, c);
            }
        }
    }
    out
}

/// Flags of type `composition`, each with an adapted basis.
fn flags(p: u8, composition: &[usize]) -> Vec<(Vec<u128>, Vec<usize>)> {
    let m: usize = composition.iter().sum();
    let nvec = (p as usize).pow(m as u32);
    let mut level: Vec<(Vec<u128>, Vec<usize>)> = vec![(vec![], vec![])];
    let mut mask0 = 1u128;
    for &c in composition {
        let mut next = Vec::new();
        for (chain, basis) in level {
            let base = chain.last().copied().unwrap_or(mask0);
            let mut frontier: BTreeMap<u128, Vec<usize>> = BTreeMap::from([(base, basis)]);
            for _ in 0..c {
                let mut grown = BTreeMap::new();
                for (mask, basis) in &frontier {
                    for v in 0..nvec {
                        if mask >> v & 1 == 0 {
                            let t = span_with(p, m, *mask, v);
                            grown.entry(t).or_insert_with(|| {
                                let mut b = basis.clone();
                                b.push(v);
                                b
                            });
                        }
                    }
                }
                frontier = grown;
            }
            for (mask, basis) in frontier {
                let mut ch = chain.clone();
                ch.push(mask);
                next.push((ch, basis));
            }
        }
        level = next;
        mask0 = 1;
    }
    level
}

/// Representatives `x` of `G/P`, one per flag `x * (standard flag)`.
pub fn enumerate_cosets(p: u8, composition: &[usize]) -> Result<Vec<FpMatrix>> {
    let m: usize = composition.iter().sum();
    check_field(p, m)?;
    Ok(flags(p, composition)
        .into_iter()
        .map(|(_, basis)| basis_matrix(p, m, &basis))
        .collect())
}

fn basis_matrix(p: u8, m: usize, basis: &[usize]) -> FpMatrix {
    let mut x = FpMatrix::zero(p, m);
    for (j, &v) in basis.iter().enumerate() {
        let d = decode(p, m, v);
        for (i, &di) in d.iter().enumerate().take(m) {
            x.set(i, j, di);
        }
    }
    x
}

/// `[GL_m(F_q) : P_composition(F_q)]`.
pub fn gaussian_multinomial(composition: &[usize], q: u64) -> u64 {
    let qfact = |k: usize| -> u128 { (1..=k as u32).map(|i| (q as u128).pow(i) - 1).product::<u128>() };
    let m: usize = composition.iter().sum();
    let den: u128 = composition.iter().map(|&c| qfact(c)).product();
    (qfact(m) / den) as u64
}

struct Coset {
    x: FpMatrix,
    x_inv: FpMatrix,
    chain: Vec<u128>,
    basis: Vec<usize>,
}

/// Character of `Ind_P^G(chi)` with the cosets precomputed.
pub struct InducedCharacter {
    spec: InducedCharSpec,
    cosets: Vec<Coset>,
    blocks: Vec<(usize, usize)>,
}

impl InducedCharacter {
    pub fn new(spec: InducedCharSpec) -> Result<Self> {
        let p = spec.p;
        let m = spec.total();
        check_field(p, m)?;
        let cosets = flags(p, &spec.composition)
            .into_iter()
            .map(|(chain, basis)| {
                let x = basis_matrix(p, m, &basis);
                let x_inv = x.inverse().expect("adapted basis is a basis");
                Coset { x, x_inv, chain, basis }
            })
            .collect();
        let mut blocks = Vec::new();
        let mut lo = 0;
        for &c in &spec.composition {
            blocks.push((lo, lo + c));
            lo += c;
        }
        Ok(InducedCharacter { spec, cosets, blocks })
    }

    pub fn spec(&self) -> &InducedCharSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    pub fn value(&self, g: &FpMatrix) -> i64 {
        let all_trivial = self.spec.levi_character.iter().all(|c| *c == LeviChar::Trivial);
        let mut total = 0;
        for c in &self.cosets {
            let fixed = self
                .blocks
                .iter()
                .zip(&c.chain)
                .all(|(&(_, hi), &mask)| c.basis[..hi].iter().all(|&v| mask >> g.apply(v) & 1 == 1));
            if !fixed {
                continue;
            }
            if all_trivial {
                total += 1;
                continue;
            }
            let y = c.x_inv.mul(g).mul(&c.x);
            total += self
                .blocks
                .iter()
                .zip(&self.spec.levi_character)
                .map(|(&(lo, hi), ch)| ch.value(y.block_det(lo, hi)))
                .product::<i64>();
        }
        total
    }

    pub fn coset_representatives(&self) -> impl Iterator<Item = &FpMatrix> {
        self.cosets.iter().map(|c| &c.x)
    }
}

pub fn induced_character(spec: &InducedCharSpec, g: &FpMatrix) -> Result<CycInt> {
    Ok(CycInt::int(InducedCharacter::new(spec.clone())?.value(g)))
}

/// Inducing data for one Levi factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FfRep {
    Trivial,
    Quadratic,
    /// The non-trivial constituent of `Ind_B^{GL_2}(1)`.
    Steinberg,
    /// `Ind_B^{GL_m}(1)`.
    Principal,
}

/// Coefficient, composition and Levi characters of one induced summand.
type Term = (i64, Vec<usize>, Vec<LeviChar>);

impl FfRep {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "triv" | "trivial" | "1" => Ok(FfRep::Trivial),
            "quad" | "sgn" => Ok(FfRep::Quadratic),
            "st" | "St" | "steinberg" => Ok(FfRep::Steinberg),
            "ps" | "ind" => Ok(FfRep::Principal),
            other => Err(Error::Parse {
                offset: 0,
                message: format!("unknown finite-field representation '{other}'"),
            }),
        }
    }

    /// Virtual combination of induced characters on `GL_m`.
    fn terms(self, m: usize) -> Result<Vec<Term>> {
        use LeviChar::*;
        Ok(match self {
            FfRep::Trivial => vec![(1, vec![m], vec![Trivial])],
            FfRep::Quadratic => vec![(1, vec![m], vec![Quadratic])],
            FfRep::Principal => vec![(1, vec![1; m], vec![Trivial; m])],
            FfRep::Steinberg if m == 2 => vec![(1, vec![1, 1], vec![Trivial; 2]), (-1, vec![2], vec![Trivial])],
            FfRep::Steinberg => return Err(Error::Unsupported("Steinberg is only available on GL_2".into())),
        })
    }
}

impl fmt::Display for FfRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FfRep::Trivial => "triv",
            FfRep::Quadratic => "quad",
            FfRep::Steinberg => "st",
            FfRep::Principal => "ps",
        })
    }
}

/// `rho1,rho2`, e.g. `st,triv`.
pub fn parse_levi(s: &str) -> Result<(FfRep, FfRep)> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((FfRep::parse(a)?, FfRep::parse(b)?)),
        _ => Err(Error::Parse {
            offset: 0,
            message: "levi spec must be two comma-separated names".into(),
        }),
    }
}

/// A virtual character `sum c_i Ind(spec_i)` of `GL_m(F_p)`.
pub struct VirtualCharacter {
    p: u8,
    m: usize,
    terms: Vec<(i64, InducedCharacter)>,
}

impl VirtualCharacter {
    pub fn of(rep: FfRep, m: usize, p: u8) -> Result<Self> {
        Self::from_terms(p, m, rep.terms(m)?)
    }

    /// Character of `Ind_{P_{r, m - r}}(rho1 (x) rho2)` by induction in stages.
    pub fn induced(rho1: FfRep, rho2: FfRep, r: usize, m: usize, p: u8) -> Result<Self> {
        let mut terms = Vec::new();
        for (c1, comp1, ch1) in rho1.terms(r)? {
            for (c2, comp2, ch2) in rho2.terms(m - r)? {
                terms.push((c1 * c2, [comp1.clone(), comp2].concat(), [ch1.clone(), ch2].concat()));
            }
        }
        Self::from_terms(p, m, terms)
    }

    fn from_terms(p: u8, m: usize, terms: Vec<Term>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(c, comp, ch)| Ok((c, InducedCharacter::new(InducedCharSpec::new(p, comp, ch)?)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VirtualCharacter { p, m, terms })
    }

    pub fn value(&self, g: &FpMatrix) -> i64 {
        self.terms.iter().map(|(c, t)| c * t.value(g)).sum()
    }

    pub fn degree(&self) -> i64 {
        self.value(&FpMatrix::identity(self.p, self.m))
    }
}

/// `N = [[I_a, X], [0, I_b]]` with `psi(u) = psi_0` of the trace of the
/// `k x k` submatrix of `X` starting at `(row0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiUnipotent {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub row0: usize,
}

impl PsiUnipotent {
    /// `N(k,1)` in `G_r`.
    pub fn left(r: usize, k: usize) -> Self {
        PsiUnipotent {
            a: k,
            b: r - k,
            k,
            row0: 0,
        }
    }

    /// `N(k,2)` in `G_{2n-r}`.
    pub fn right(n: usize, r: usize, k: usize) -> Self {
        let j = n + k - r;
        PsiUnipotent {
            a: n - k,
            b: j,
            k: j,
            row0: r - 2 * k,
        }
    }

    pub fn shalika(n: usize) -> Self {
        PsiUnipotent {
            a: n,
            b: n,
            k: n,
            row0: 0,
        }
    }
}

/// `dim V_{N,psi} = |N|^{-1} sum_u psi(u)^{-1} Theta(u)`, exactly.
pub fn twisted_dim(chi: &VirtualCharacter, nu: PsiUnipotent) -> Result<i64> {
    let (p, m) = (chi.p, chi.m);
    if nu.a + nu.b != m || nu.row0 + nu.k > nu.a || nu.k > nu.b {
        return Err(Error::RankMismatch {
            expected: m,
            found: nu.a + nu.b,
        });
    }
    let cells = nu.a * nu.b;
    let order = (p as usize).pow(cells as u32);
    let sum = (0..order)
        .into_par_iter()
        .map(|code| {
            let mut u = FpMatrix::identity(p, m);
            let mut c = code;
            let mut tr = 0u32;
            for i in 0..nu.a {
                for j in 0..nu.b {
                    let x = (c % p as usize) as u8;
                    c /= p as usize;
                    u.set(i, nu.a + j, x);
                    if i >= nu.row0 && i - nu.row0 == j && j < nu.k {
                        tr += x as u32;
                    }
                }
            }
            CycInt::psi_inv(p, (tr % p as u32) as u8).scale(chi.value(&u))
        })
        .reduce(CycInt::default, |a, b| a + b);
    let total = sum
        .to_integer()
        .ok_or_else(|| Error::Consistency(format!("character sum {sum:?} is not rational")))?;
    if total % order as i64 != 0 || total < 0 {
        return Err(Error::Consistency(format!(
            "character sum {total} is not a dimension times {order}"
        )));
    }
    Ok(total / order as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaTerm {
    pub k: usize,
    pub index: u64,
    pub left_dim: i64,
    pub right_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub r: usize,
    pub p: u8,
    pub levi: (FfRep, FfRep),
    pub bruteforce: i64,
    pub formula: i64,
    pub terms: Vec<FormulaTerm>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.bruteforce == self.formula
    }
}

fn check_nr(n: usize, r: usize, p: u8) -> Result<()> {
    check_field(p, 2 * n)?;
    KRange::new(n, r).map(|_| ())
}

pub fn tjm_dim_bruteforce(n: usize, r: usize, rho1: FfRep, rho2: FfRep, p: u8) -> Result<i64> {
    check_nr(n, r, p)?;
    let chi = VirtualCharacter::induced(rho1, rho2, r, 2 * n, p)?;
    twisted_dim(&chi, PsiUnipotent::shalika(n))
}

/// `sum_k [G_n : P_{k, r-2k, n-r+k}] dim (rho1)_{N(k,1)} dim (rho2)_{N(k,2)}`.
pub fn tjm_dim_formula_terms(n: usize, r: usize, rho1: FfRep, rho2: FfRep, p: u8) -> Result<Vec<FormulaTerm>> {
    check_nr(n, r, p)?;
    let c1 = VirtualCharacter::of(rho1, r, p)?;
    let c2 = VirtualCharacter::of(rho2, 2 * n - r, p)?;
    KRange::new(n, r)?
        .contributing()
        .map(|k| {
            let comp: Vec<usize> = [k, r - 2 * k, n + k - r].into_iter().filter(|&c| c > 0).collect();
            Ok(FormulaTerm {
                k,
                index: gaussian_multinomial(&comp, p as u64),
                left_dim: twisted_dim(&c1, PsiUnipotent::left(r, k))?,
                right_dim: twisted_dim(&c2, PsiUnipotent::right(n, r, k))?,
            })
        })
        .collect()
}

pub fn tjm_dim_formula(n: usize, r: usize, rho1: FfRep, rho2: FfRep, p: u8) -> Result<i64> {
    Ok(tjm_dim_formula_terms(n, r, rho1, rho2, p)?
        .iter()
        .map(|t| t.index as i64 * t.left_dim * t.right_dim)
        .sum())
}

pub fn oracle_report(n: usize, r: usize, rho1: FfRep, rho2: FfRep, p: u8) -> Result<OracleReport> {
    let terms = tjm_dim_formula_terms(n, r, rho1, rho2, p)?;
    Ok(OracleReport {
        n,
        r,
        p,
        levi: (rho1, rho2),
        bruteforce: tjm_dim_bruteforce(n, r, rho1, rho2, p)?,
        formula: terms.iter().map(|t| t.index as i64 * t.left_dim * t.right_dim).sum(),
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub size: usize,
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCosetReport {
    pub n: usize,
    pub r: usize,
    pub p: u8,
    pub group_order: usize,
    pub cells: Vec<Cell>,
    pub expected: usize,
}

impl DoubleCosetReport {
    /// One cell per index and exactly one `w_{k,l}` in each.
    pub fn coverage_ok(&self) -> bool {
        self.cells.len() == self.expected
            && self.cells.iter().all(|c| c.representatives.len() == 1)
            && self.cells.iter().map(|c| c.size).sum::<usize>() == self.group_order
    }
}

fn gl_generators(p: u8, m: usize, lo: usize, hi: usize, out: &mut Vec<FpMatrix>) {
    for i in lo..hi {
        for j in lo..hi {
            if i != j {
                let mut e = FpMatrix::identity(p, m);
                e.set(i, j, 1);
                out.push(e);
            }
        }
    }
    if p == 3 {
        let mut d = FpMatrix::identity(p, m);
        d.set(lo, lo, 2);
        out.push(d);
    }
}

/// Orbits of `S_psi x P_{r,2n-r}` on `GL_2n(F_p)` by breadth-first search.
pub fn double_coset_partition(n: usize, r: usize, p: u8) -> Result<DoubleCosetReport> {
    let m = 2 * n;
    check_nr(n, r, p)?;
    let size = (p as usize).pow((m * m) as u32);

    let mut left = Vec::new();
    let mut gl = Vec::new();
    gl_generators(p, n, 0, n, &mut gl);
    for h in &gl {
        let mut s = FpMatrix::identity(p, m);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, h.get(i, j));
                s.set(n + i, n + j, h.get(i, j));
            }
        }
        left.push(s);
    }
    for i in 0..n {
        for j in 0..n {
            let mut u = FpMatrix::identity(p, m);
            u.set(i, n + j, 1);
            left.push(u);
        }
    }
    let mut right = Vec::new();
    gl_generators(p, m, 0, r, &mut right);
    gl_generators(p, m, r, m, &mut right);
    for i in 0..r {
        for j in r..m {
            let mut u = FpMatrix::identity(p, m);
            u.set(i, j, 1);
            right.push(u);
        }
    }

    let invertible: Vec<usize> = (0..size)
        .into_par_iter()
        .filter(|&k| FpMatrix::from_key(p, m, k).is_invertible())
        .collect();
    const UNSEEN: u8 = u8::MAX;
    let mut cell_of = vec![UNSEEN; size];
    let mut sizes: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    for &start in &invertible {
        if cell_of[start] != UNSEEN {
            continue;
        }
        let id = sizes.len();
        if id >= UNSEEN as usize {
            return Err(Error::Consistency("too many double cosets".into()));
        }
        sizes.push(0);
        cell_of[start] = id as u8;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            sizes[id] += 1;
            let g = FpMatrix::from_key(p, m, k);
            let nbrs = left.iter().map(|s| s.mul(&g)).chain(right.iter().map(|q| g.mul(q)));
            for h in nbrs {
                let hk = h.key();
                if cell_of[hk] == UNSEEN {
                    cell_of[hk] = id as u8;
                    queue.push_back(hk);
                }
            }
        }
    }

    let mut cells: Vec<Cell> = sizes
        .into_iter()
        .map(|size| Cell {
            size,
            representatives: vec![],
        })
        .collect();
    let reps = representatives(n, r)?;
    for idx in &reps {
        let w = FpMatrix::from_perm(&w_matrix(idx), p);
        cells[cell_of[w.key()] as usize].representatives.push(idx.to_string());
    }
    Ok(DoubleCosetReport {
        n,
        r,
        p,
        group_order: invertible.len(),
        cells,
        expected: reps.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(rng: &mut ChaCha8Rng, p: u8, m: usize) -> FpMatrix {
        loop {
            let g = FpMatrix::from_key(p, m, rng.gen_range(0..(p as usize).pow((m * m) as u32)));
            if g.is_invertible() {
                return g;
            }
        }
    }

    #[test]
    fn coset_counts() {
        assert_eq!(enumerate_cosets(2, &[2, 2]).unwrap().len(), 35);
        assert_eq!(enumerate_cosets(2, &[1, 1]).unwrap().len(), 3);
        assert_eq!(enumerate_cosets(3, &[2, 2]).unwrap().len(), 130);
        for (comp, p) in [
            (vec![1, 1, 2], 2u8),
            (vec![1, 3], 3),
            (vec![1, 1, 1, 1], 2),
            (vec![1, 2], 3),
        ] {
            assert_eq!(
                enumerate_cosets(p, &comp).unwrap().len() as u64,
                gaussian_multinomial(&comp, p as u64)
            );
        }
    }

    #[test]
    fn coset_reps_are_distinct_cosets() {
        let xs = enumerate_cosets(3, &[1, 1]).unwrap();
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i + 1..] {
                let z = x.inverse().unwrap().mul(y);
                assert_ne!(z.get(1, 0), 0, "{x:?} and {y:?} lie in one coset");
            }
        }
    }

    #[test]
    fn inverse_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u8, 3] {
            for m in 1..=4 {
                for _ in 0..50 {
                    let g = random_invertible(&mut rng, p, m);
                    assert!(g.mul(&g.inverse().unwrap()) == FpMatrix::identity(p, m));
                    let h = random_invertible(&mut rng, p, m);
                    assert_eq!(g.mul(&h).det() as u32, (g.det() as u32 * h.det() as u32) % p as u32);
                }
            }
        }
        let s = FpMatrix::from_rows(3, &[vec![1, 1], vec![1, 2]]).unwrap();
        assert_eq!(s.det(), 1);
        let t = FpMatrix::from_rows(3, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(t.det(), 2);
    }

    #[test]
    fn cyclotomic_arithmetic() {
        let w = CycInt { a: 0, b: 1 };
        assert_eq!(w * w * w, CycInt::int(1));
        assert_eq!(CycInt::int(1) + w + w * w, CycInt::int(0));
        assert_eq!(CycInt::psi_inv(3, 1) * w, CycInt::int(1));
    }

    #[test]
    fn character_at_identity_and_class_function() {
        let spec = InducedCharSpec::trivial(2, vec![2, 2]).unwrap();
        assert_eq!(
            induced_character(&spec, &FpMatrix::identity(2, 4)).unwrap(),
            CycInt::int(35)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in [
            InducedCharSpec::trivial(2, vec![1, 1, 2]).unwrap(),
            InducedCharSpec::new(3, vec![1, 2], vec![LeviChar::Quadratic, LeviChar::Trivial]).unwrap(),
        ] {
            let m = spec.total();
            let chi = InducedCharacter::new(spec.clone()).unwrap();
            for _ in 0..40 {
                let mut u = FpMatrix::identity(spec.p, m);
                for i in 0..m {
                    for j in i + 1..m {
                        u.set(i, j, rng.gen_range(0..spec.p));
                    }
                }
                let h = random_invertible(&mut rng, spec.p, m);
                let v = h.mul(&u).mul(&h.inverse().unwrap());
                assert_eq!(chi.value(&u), chi.value(&v));
            }
        }
    }

    #[test]
    fn permutation_character_counts_fixed_flags() {
        let chi = InducedCharacter::new(InducedCharSpec::trivial(2, vec![1, 1]).unwrap()).unwrap();
        let swap = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let cyc = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(chi.value(&swap), 1);
        assert_eq!(chi.value(&cyc), 0);
    }

    #[test]
    fn principal_series_splits() {
        // Ind_B(1) = 1 + St on GL_2, for the Whittaker functional and for degree.
        for p in [2u8, 3] {
            let ps = VirtualCharacter::of(FfRep::Principal, 2, p).unwrap();
            let t = VirtualCharacter::of(FfRep::Trivial, 2, p).unwrap();
            let st = VirtualCharacter::of(FfRep::Steinberg, 2, p).unwrap();
            assert_eq!(st.degree(), p as i64);
            let w = PsiUnipotent {
                a: 1,
                b: 1,
                k: 1,
                row0: 0,
            };
            let (dps, dt, dst) = (
                twisted_dim(&ps, w).unwrap(),
                twisted_dim(&t, w).unwrap(),
                twisted_dim(&st, w).unwrap(),
            );
            assert_eq!((dps, dt, dst), (1, 0, 1));
            assert_eq!(
                tjm_dim_bruteforce(1, 1, FfRep::Trivial, FfRep::Trivial, p).unwrap(),
                dps
            );
        }
    }

    #[test]
    fn oracle_examples() {
        use FfRep::*;
        assert_eq!(tjm_dim_bruteforce(2, 2, Trivial, Trivial, 2).unwrap(), 1);
        assert_eq!(tjm_dim_bruteforce(2, 1, Trivial, Trivial, 2).unwrap(), 0);
        assert_eq!(tjm_dim_bruteforce(2, 2, Steinberg, Trivial, 2).unwrap(), 2);
        let terms = tjm_dim_formula_terms(2, 2, Steinberg, Trivial, 2).unwrap();
        assert_eq!(
            terms[0],
            FormulaTerm {
                k: 0,
                index: 1,
                left_dim: 2,
                right_dim: 1
            }
        );
        assert_eq!(
            terms[1],
            FormulaTerm {
                k: 1,
                index: 3,
                left_dim: 1,
                right_dim: 0
            }
        );
        for r in 1..=3 {
            let rep = oracle_report(2, r, Trivial, Trivial, 2).unwrap();
            assert!(rep.agrees(), "{rep:?}");
        }
    }

    #[test]
    fn oracle_agrees_p3() {
        use FfRep::*;
        for (a, b, r) in [
            (Trivial, Quadratic, 2),
            (Quadratic, Quadratic, 2),
            (Steinberg, Trivial, 2),
            (Trivial, Trivial, 3),
        ] {
            let rep = oracle_report(2, r, a, b, 3).unwrap();
            assert!(rep.agrees(), "{rep:?}");
        }
    }

    #[test]
    fn partition_gl2() {
        let rep = double_coset_partition(1, 1, 2).unwrap();
        assert_eq!(rep.group_order, 6);
        assert!(rep.coverage_ok(), "{rep:?}");
    }

    #[test]
    fn perm_embedding_matches_columns() {
        let w = PermMatrix::from_perm(vec![1, 2, 0]).unwrap();
        let a = FpMatrix::from_perm(&w, 2);
        assert_eq!(a.apply(1), 2);
        assert_eq!(a.det(), 1);
    }
}
