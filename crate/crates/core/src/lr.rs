//! Littlewood-Richardson coefficients, iterated tensor products of `GL_n`
//! irreducibles with row truncation, and the Weyl dimension formula.
//!
//! Coefficients are counted directly as LR fillings: semistandard fillings of
//! `F/D` with content `E` whose reverse reading word is a lattice word.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::young::Partition;

type LrKey = (Partition, Partition, Partition);

fn cache() -> &'static Mutex<BTreeMap<LrKey, u64>> {
    static CACHE: OnceLock<Mutex<BTreeMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `c^F_{DE}`, the multiplicity of `ρ^F` in `ρ^D ⊗ ρ^E`.
pub fn lr_coefficient(f: &Partition, d: &Partition, e: &Partition) -> u64 {
    if f.size() != d.size() + e.size() || !f.contains(d) || !f.contains(e) {
        return 0;
    }
    if d.is_empty() || e.is_empty() {
        return 1;
    }
    // c^F_{DE} = c^F_{ED}; fill with the smaller content
    let (d, e) = if (e.size(), e) <= (d.size(), d) {
        (d, e)
    } else {
        (e, d)
    };
    let key = (f.clone(), d.clone(), e.clone());
    if let Some(&v) = cache().lock().expect("lr cache poisoned").get(&key) {
        return v;
    }
    let v = count_lr_fillings(f, d, e);
    cache().lock().expect("lr cache poisoned").insert(key, v);
    v
}

/// Counts fillings of `outer/inner` with content `content`, reading rows top
/// to bottom and each row right to left.
fn count_lr_fillings(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    let rows = outer.length();
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| {
            let lo = inner.part(i) as usize;
            let hi = outer.part(i) as usize;
            (lo..hi).rev().map(move |j| (i, j))
        })
        .collect();
    let mut grid: Vec<Vec<u32>> = (0..rows).map(|i| vec![0; outer.part(i) as usize]).collect();
    let letters = content.length();
    let mut counts = vec![0u32; letters + 1];
    let mut total = 0;
    fill_lr(0, &cells, inner, content, &mut grid, &mut counts, &mut total);
    total
}

fn fill_lr(
    pos: usize,
    cells: &[(usize, usize)],
    inner: &Partition,
    content: &Partition,
    grid: &mut [Vec<u32>],
    counts: &mut [u32],
    total: &mut u64,
) {
    let Some(&(i, j)) = cells.get(pos) else {
        *total += 1;
        return;
    };
    let letters = content.length() as u32;
    // rows weakly increase left to right; the cell to the right is filled
    let hi = if j + 1 < grid[i].len() {
        grid[i][j + 1]
    } else {
        letters
    };
    let lo = if i > 0 && j >= inner.part(i - 1) as usize {
        grid[i - 1][j] + 1
    } else {
        1
    };
    for v in lo..=hi.min(letters) {
        let vi = v as usize;
        if counts[vi] >= content.part(vi - 1) {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        grid[i][j] = v;
        fill_lr(pos + 1, cells, inner, content, grid, counts, total);
        counts[vi] -= 1;
    }
    grid[i][j] = 0;
}

/// Every `H ⊇ g` with `c^H_{g,d} ≠ 0` and at most `n` rows, with its
/// coefficient. When `bound` is given, only `H ⊆ bound` are produced.
fn product_terms(g: &Partition, d: &Partition, n: usize, bound: Option<&Partition>) -> Vec<(Partition, u64)> {
    let size = g.size() + d.size();
    let max_len = n.min(g.length() + d.length());
    let width = g.part(0) + d.part(0);
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(max_len);
    grow(g, size, max_len, width, bound, &mut parts, &mut |h| {
        let c = lr_coefficient(h, g, d);
        if c > 0 {
            out.push((h.clone(), c));
        }
    });
    out
}

/// Enumerates partitions `H` of `size` with `g ⊆ H`, `ℓ(H) ≤ max_len`,
/// `H_1 ≤ width` and optionally `H ⊆ bound`.
fn grow(
    g: &Partition,
    size: usize,
    max_len: usize,
    width: u32,
    bound: Option<&Partition>,
    parts: &mut Vec<u32>,
    emit: &mut dyn FnMut(&Partition),
) {
    let used: usize = parts.iter().map(|&p| p as usize).sum();
    let i = parts.len();
    if used == size {
        if parts.len() >= g.length() {
            emit(&Partition::new(parts.clone()).expect("built decreasing"));
        }
        return;
    }
    if i == max_len {
        return;
    }
    let mut hi = parts.last().copied().unwrap_or(width).min((size - used) as u32);
    if let Some(b) = bound {
        hi = hi.min(b.part(i));
    }
    let lo = g.part(i).max(1);
    for v in (lo..=hi).rev() {
        parts.push(v);
        grow(g, size, max_len, width, bound, parts, emit);
        parts.pop();
    }
}

/// Decomposition of a tensor product of `GL_n` irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDecomposition {
    pub row_bound: usize,
    pub multiplicities: BTreeMap<Partition, BigUint>,
}

impl TensorDecomposition {
    pub fn multiplicity(&self, f: &Partition) -> BigUint {
        self.multiplicities.get(f).cloned().unwrap_or_default()
    }

    /// `Σ_F mult(F) · dim ρ_n^F`.
    pub fn dimension(&self) -> BigUint {
        self.multiplicities
            .iter()
            .map(|(f, m)| m * gl_dim(f, self.row_bound))
            .sum()
    }
}

/// Decomposes `ρ_n^{D_1} ⊗ ⋯ ⊗ ρ_n^{D_m}`, discarding diagrams with more than
/// `n` rows after every factor.
pub fn tensor_expand(ds: &[Partition], n: usize) -> Result<TensorDecomposition> {
    if n == 0 {
        return Err(Error::Precondition("row bound must be positive".into()));
    }
    for d in ds {
        if d.length() > n {
            return Err(Error::TooManyRows {
                diagram: d.to_string(),
                length: d.length(),
                bound: n,
            });
        }
    }
    let mut current: BTreeMap<Partition, BigUint> = [(Partition::empty(), BigUint::one())].into();
    for d in ds {
        current = step(&current, d, n, None);
    }
    Ok(TensorDecomposition {
        row_bound: n,
        multiplicities: current,
    })
}

fn step(
    current: &BTreeMap<Partition, BigUint>,
    d: &Partition,
    n: usize,
    bound: Option<&Partition>,
) -> BTreeMap<Partition, BigUint> {
    let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for (g, m) in current {
        for (h, c) in product_terms(g, d, n, bound) {
            *next.entry(h).or_default() += m * BigUint::from(c);
        }
    }
    next
}

/// `dim Hom_{GL_n}(ρ_n^F, ρ_n^{D_1} ⊗ ⋯ ⊗ ρ_n^{D_m})`, the sum over chains
/// `F_2, …, F_{m-1}` of products of LR coefficients with every intermediate
/// diagram restricted to at most `n` rows.
///
/// Diagrams with more than `n` rows label no `GL_n` module, so they give 0.
pub fn multi_lr(f: &Partition, ds: &[Partition], n: usize) -> BigUint {
    if f.length() > n || ds.iter().any(|d| d.length() > n) {
        return BigUint::zero();
    }
    if f.size() != ds.iter().map(Partition::size).sum::<usize>() {
        return BigUint::zero();
    }
    let Some((last, init)) = ds.split_last() else {
        return if f.is_empty() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    };
    // chains grow inside F, so everything outside F can be dropped early
    let mut current: BTreeMap<Partition, BigUint> = [(Partition::empty(), BigUint::one())].into();
    for d in init {
        current = step(&current, d, n, Some(f));
        if current.is_empty() {
            return BigUint::zero();
        }
    }
    current
        .iter()
        .map(|(g, m)| m * BigUint::from(lr_coefficient(f, g, last)))
        .sum()
}

/// Weyl's dimension formula for `ρ_n^F`; zero when `F` has more than `n` rows.
pub fn gl_dim(f: &Partition, n: usize) -> BigUint {
    if f.length() > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            let fi = f.part(i) as usize;
            let fj = f.part(j) as usize;
            num *= BigUint::from(fi - fj + j - i);
            den *= BigUint::from(j - i);
        }
    }
    num / den
}

/// Multiplicity of `ρ_{c_1}^{D_1} ⊗ ⋯ ⊗ ρ_{c_m}^{D_m}` in the restriction of
/// `ρ_c^F` to `GL_{c_1} × ⋯ × GL_{c_m}`, computed on the tensor side as
/// `multi_lr(F, D, c)` with `c = Σ c_i`.
pub fn branch_multiplicity(f: &Partition, arm_sizes: &[usize], ds: &[Partition]) -> Result<BigUint> {
    if arm_sizes.len() != ds.len() {
        return Err(Error::LengthMismatch(format!(
            "{} arms but {} labels",
            arm_sizes.len(),
            ds.len()
        )));
    }
    if arm_sizes.is_empty() || arm_sizes.contains(&0) {
        return Err(Error::Precondition("arm sizes must be positive".into()));
    }
    if ds.iter().zip(arm_sizes).any(|(d, &c)| d.length() > c) {
        return Ok(BigUint::zero());
    }
    Ok(multi_lr(f, ds, arm_sizes.iter().sum()))
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
