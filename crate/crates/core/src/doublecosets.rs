//! Double coset representatives for `S_psi \ G_2n / P_{r,2n-r}` as block
//! permutation matrices, and the block shapes feeding the Jacquet engine.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation matrix stored by columns: `perm[j]` is the row holding the
/// 1 of column `j`. Indices are 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermMatrix {
    perm: Vec<usize>,
}

impl PermMatrix {
    pub fn identity(size: usize) -> Self {
        PermMatrix {
            perm: (0..size).collect(),
        }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Consistency(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(PermMatrix { perm })
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &PermMatrix) -> PermMatrix {
        assert_eq!(self.size(), other.size(), "size mismatch");
        PermMatrix {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn inverse(&self) -> PermMatrix {
        let mut inv = vec![0; self.size()];
        for (j, &i) in self.perm.iter().enumerate() {
            inv[i] = j;
        }
        PermMatrix { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &i)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Determinant, the sign of the permutation.
    pub fn det(&self) -> i64 {
        let mut seen = vec![false; self.size()];
        let mut sign = 1;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.size()]; self.size()];
        for (j, &i) in self.perm.iter().enumerate() {
            m[i][j] = 1;
        }
        m
    }

    /// One-line notation, 1-based: the image of each basis vector.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self.perm.iter().map(|i| (i + 1).to_string()).collect();
        format!("[{}]", parts.join(" "))
    }
}

impl fmt::Display for PermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

impl fmt::Debug for PermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// Block permutation matrix: row block `i` (of size `rows[i]`) carries an
/// identity block into column block `target[i]`. Column blocks are laid out
/// in their own order, each inheriting the size of its source row block.
fn block_perm(rows: &[usize], target: &[usize]) -> PermMatrix {
    debug_assert_eq!(rows.len(), target.len());
    let mut col_sizes = vec![0; rows.len()];
    for (i, &t) in target.iter().enumerate() {
        col_sizes[t] = rows[i];
    }
    let offsets = |sizes: &[usize]| -> Vec<usize> {
        sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect()
    };
    let row_off = offsets(rows);
    let col_off = offsets(&col_sizes);
    let size: usize = rows.iter().sum();
    let mut perm = vec![0; size];
    for (i, &t) in target.iter().enumerate() {
        for s in 0..rows[i] {
            perm[col_off[t] + s] = row_off[i] + s;
        }
    }
    PermMatrix { perm }
}

/// The constants `alpha = max(0, r-n)`, `beta = floor(r/2)`,
/// `gamma = min(r, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRange {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl KRange {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n == 0 || r == 0 || r >= 2 * n {
            return Err(Error::OutOfRange(format!("need 1 <= r < 2n, got n = {n}, r = {r}")));
        }
        let kr = KRange {
            alpha: r.saturating_sub(n),
            beta: r / 2,
            gamma: r.min(n),
        };
        debug_assert!(kr.alpha <= kr.beta && kr.beta <= kr.gamma);
        Ok(kr)
    }

    /// The `k` that can contribute to the twisted Jacquet module.
    pub fn contributing(&self) -> std::ops::RangeInclusive<usize> {
        self.alpha..=self.beta
    }
}

pub fn k_range(n: usize, r: usize) -> Result<KRange> {
    KRange::new(n, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetIndex {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub l: usize,
}

impl CosetIndex {
    pub fn new(n: usize, r: usize, k: usize, l: usize) -> Result<Self> {
        let kr = KRange::new(n, r)?;
        if k < kr.alpha || k > kr.gamma || l < kr.alpha || l > k.min(r - k) {
            return Err(Error::OutOfRange(format!(
                "(k, l) = ({k}, {l}) is not a valid index for n = {n}, r = {r}"
            )));
        }
        Ok(CosetIndex { n, r, k, l })
    }
}

impl fmt::Display for CosetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w_{{{},{}}}", self.k, self.l)
    }
}

/// All `(k, l)` for `(n, r)` in lexicographic order.
pub fn representatives(n: usize, r: usize) -> Result<Vec<CosetIndex>> {
    let kr = KRange::new(n, r)?;
    let mut out = Vec::new();
    for k in kr.alpha..=kr.gamma {
        for l in kr.alpha..=k.min(r - k) {
            out.push(CosetIndex { n, r, k, l });
        }
    }
    Ok(out)
}

/// Row blocks `(k, n-k, l, k-l, r-k-l, n-r+l)`; column blocks
/// `(k, l, r-k-l, n-k, k-l, n-r+l)`.
pub fn w_matrix(idx: &CosetIndex) -> PermMatrix {
    let CosetIndex { n, r, k, l } = *idx;
    block_perm(&[k, n - k, l, k - l, r - k - l, n + l - r], &[0, 3, 1, 4, 2, 5])
}

/// `w_k = w_{k,k}`.
pub fn w_k(n: usize, r: usize, k: usize) -> Result<PermMatrix> {
    Ok(w_matrix(&CosetIndex::new(n, r, k, k)?))
}

/// Row blocks `(k, n-k, a, l-a, k-l, r-k-l, l-a, n-r+a)` with `a = alpha`.
pub fn sigma_matrix(idx: &CosetIndex) -> PermMatrix {
    let CosetIndex { n, r, k, l } = *idx;
    let a = r.saturating_sub(n);
    block_perm(
        &[k, n - k, a, l - a, k - l, r - k - l, l - a, n + a - r],
        &[0, 1, 2, 5, 3, 6, 4, 7],
    )
}

/// `sigma_{k,l} w_{k,alpha} = w_{k,l}` as an exact matrix identity.
pub fn compose_check(n: usize, r: usize, k: usize, l: usize) -> Result<bool> {
    let idx = CosetIndex::new(n, r, k, l)?;
    let base = CosetIndex::new(n, r, k, r.saturating_sub(n))?;
    Ok(sigma_matrix(&idx).compose(&w_matrix(&base)) == w_matrix(&idx))
}

/// Which side of `M_{r,2n-r}` a block shape lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `N(k,1) < G_r` with diagonal blocks `(k, k, r-2k)` and character
/// `psi_0(tr x)` on the `(1,2)` block, or `N(k,2) < G_{2n-r}` with blocks
/// `(r-2k, n-r+k, n-r+k)` and `psi_0(tr v)` on the `(2,3)` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockShape {
    pub side: Side,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub blocks: [usize; 3],
    /// Size of the square block read by `psi_0 o tr`.
    pub psi_block: usize,
}

impl BlockShape {
    pub fn left(n: usize, r: usize, k: usize) -> Self {
        BlockShape {
            side: Side::Left,
            n,
            r,
            k,
            blocks: [k, k, r - 2 * k],
            psi_block: k,
        }
    }

    pub fn right(n: usize, r: usize, k: usize) -> Self {
        let m = n + k - r;
        BlockShape {
            side: Side::Right,
            n,
            r,
            k,
            blocks: [r - 2 * k, m, m],
            psi_block: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// The unipotent group is trivial exactly when the paired blocks vanish.
    pub fn is_trivial_group(&self) -> bool {
        self.psi_block == 0
    }

    /// The whole unipotent radical of a two-block Borel-type shape: the
    /// third (unpaired) block is empty.
    pub fn is_full_pair(&self) -> bool {
        let unpaired = match self.side {
            Side::Left => self.blocks[2],
            Side::Right => self.blocks[0],
        };
        unpaired == 0 && self.psi_block > 0
    }

    pub fn character_rule(&self) -> &'static str {
        match self.side {
            Side::Left => "psi_0(tr x), x the (1,2) block",
            Side::Right => "psi_0(tr v), v the (2,3) block",
        }
    }
}

/// The subgroup `N_k'` of `M_{r,2n-r}`: `N(k,1) x N(k,2)` with the
/// character `psi_0(tr x + tr z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkPrime {
    pub left: BlockShape,
    pub right: BlockShape,
    /// Levi of the induced module: `(k, r-2k, n-r+k)`.
    pub parabolic: [usize; 3],
}

pub fn shape_metadata(n: usize, r: usize, k: usize) -> Result<NkPrime> {
    let kr = KRange::new(n, r)?;
    if !kr.contributing().contains(&k) {
        return Err(Error::OutOfRange(format!(
            "k = {k} outside [{}, {}]",
            kr.alpha, kr.beta
        )));
    }
    Ok(NkPrime {
        left: BlockShape::left(n, r, k),
        right: BlockShape::right(n, r, k),
        parabolic: [k, r - 2 * k, n + k - r],
    })
}
