//! Young diagrams, compositions and the character bookkeeping that links
//! block-constant diagrams to characters of parabolic subgroups.
//!
//! A [`Composition`] `(k_1, ..., k_s)` of `k` fixes the block upper triangular
//! parabolic `P_k` of `GL_k`. A diagram `F` with at most `k` rows carries a
//! line fixed by the commutator subgroup `P'_k` exactly when `F`, padded with
//! zeros to length `k`, is constant on every block. On that line `P_k/P'_k`
//! acts through `τ_1^{k_1 f_1} ⋯ τ_s^{k_s f_s}`, which is what
//! [`weight_of_diagram`] returns.
//!
//! Dual diagrams are never materialized: only their dimension (equal to that
//! of `F`) and the label `F` itself are ever needed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Young diagram stored as weakly decreasing row lengths with trailing
/// zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, rejecting sequences that increase anywhere.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts arbitrary row lengths into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row diagram `(n)`.
    pub fn row(n: u32) -> Self {
        Self::from_sorted(vec![n])
    }

    /// The one-column diagram `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition {
            parts: vec![1; n],
        }
    }

    /// The rectangle `(width^height)`.
    pub fn rectangle(width: u32, height: usize) -> Self {
        Self::from_sorted(vec![width; height])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row `i` (zero-based), zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Row lengths padded with zeros to exactly `len` entries.
    ///
    /// Fails if the diagram has more than `len` rows.
    pub fn padded(&self, len: usize) -> Result<Vec<u32>> {
        if self.length() > len {
            return Err(Error::TooManyRows {
                diagram: self.to_string(),
                length: self.length(),
                bound: len,
            });
        }
        let mut v = self.parts.clone();
        v.resize(len, 0);
        Ok(v)
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length()
            && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Every partition of `n` with at most `max_len` rows, in reverse
    /// lexicographic order (the one-row diagram first).
    pub fn all_of_size(n: usize, max_len: usize) -> Vec<Partition> {
        Self::all_bounded(n, max_len, n as u32)
    }

    /// Every partition of `n` with at most `max_len` rows and every row at
    /// most `max_part`.
    pub fn all_bounded(n: usize, max_len: usize, max_part: u32) -> Vec<Partition> {
        fn go(
            rest: u32,
            cap: u32,
            slots: usize,
            prefix: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if rest == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                if (p as usize) * slots < rest as usize {
                    break;
                }
                prefix.push(p);
                go(rest - p, p, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n as u32, max_part, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// Every partition with at most `max_len` rows and at most `max_size`
    /// boxes, grouped by increasing size.
    pub fn all_up_to(max_size: usize, max_len: usize) -> Vec<Partition> {
        (0..=max_size)
            .flat_map(|n| Self::all_of_size(n, max_len))
            .collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        write_comma_list(f, &self.parts)
    }
}

/// Parses `4,4,3,2,2`. The empty diagram is written `0` or as an empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_comma_list(s).map_err(Error::InvalidPartition)?)
    }
}

/// Block sizes `(k_1, ..., k_s)` of a parabolic subgroup of `GL_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    blocks: Vec<usize>,
}

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidComposition("no blocks".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "{blocks:?} has an empty block"
            )));
        }
        Ok(Composition { blocks })
    }

    /// The single-block composition `(k)`; its parabolic is all of `GL_k`.
    pub fn trivial(k: usize) -> Self {
        assert!(k > 0, "composition of zero");
        Composition { blocks: vec![k] }
    }

    /// `(1, ..., 1)`: the Borel subgroup.
    pub fn borel(k: usize) -> Self {
        assert!(k > 0, "composition of zero");
        Composition { blocks: vec![1; k] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Half-open row ranges of the blocks.
    pub fn ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.blocks.iter().scan(0usize, |start, &b| {
            let r = *start..*start + b;
            *start += b;
            Some(r)
        })
    }

    /// All `2^{k-1}` compositions of `k`.
    pub fn all_of(k: usize) -> Vec<Composition> {
        assert!(k > 0, "composition of zero");
        (0u64..1 << (k - 1))
            .map(|mask| {
                let mut blocks = Vec::new();
                let mut current = 1;
                for i in 0..k - 1 {
                    if mask >> i & 1 == 1 {
                        blocks.push(current);
                        current = 1;
                    } else {
                        current += 1;
                    }
                }
                blocks.push(current);
                Composition { blocks }
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(blocks: Vec<usize>) -> Result<Self> {
        Composition::new(blocks)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Vec<usize> {
        c.blocks
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.blocks)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_comma_list(s).map_err(Error::InvalidComposition)?)
    }
}

/// Exponents `(w_1, ..., w_s)` of a character `τ_1^{w_1} ⋯ τ_s^{w_s}` of
/// `P_k / P'_k`, one per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedWeight(pub Vec<u64>);

impl GradedWeight {
    pub fn zero(blocks: usize) -> Self {
        GradedWeight(vec![0; blocks])
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn scaled(&self, n: u64) -> GradedWeight {
        GradedWeight(self.0.iter().map(|w| w * n).collect())
    }
}

impl fmt::Display for GradedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.0)
    }
}

/// True when `diagram`, padded to the composition's total, is constant on
/// every block. Zero blocks and repeated values across blocks are allowed.
pub fn block_compatible(diagram: &Partition, comp: &Composition) -> Result<bool> {
    let padded = diagram.padded(comp.total())?;
    Ok(comp
        .ranges()
        .all(|r| padded[r.clone()].iter().all(|&v| v == padded[r.start])))
}

/// The value of `diagram` on each block (its first row in that block).
///
/// Fails unless the diagram is block-compatible.
pub fn block_values(diagram: &Partition, comp: &Composition) -> Result<Vec<u32>> {
    if !block_compatible(diagram, comp)? {
        return Err(Error::NotBlockCompatible {
            diagram: diagram.to_string(),
            composition: comp.to_string(),
        });
    }
    Ok(comp.ranges().map(|r| diagram.part(r.start)).collect())
}

/// The diagram with value `f_i = e_i + ⋯ + e_s` on block `i`.
pub fn diagram_from_exponents(exponents: &GradedWeight, comp: &Composition) -> Result<Partition> {
    if exponents.0.len() != comp.block_count() {
        return Err(Error::LengthMismatch(format!(
            "{} exponents for a composition with {} blocks",
            exponents.0.len(),
            comp.block_count()
        )));
    }
    let mut parts = Vec::with_capacity(comp.total());
    let mut suffix: u64 = exponents.0.iter().sum();
    for (&k, &e) in comp.blocks().iter().zip(&exponents.0) {
        let value = u32::try_from(suffix)
            .map_err(|_| Error::Precondition(format!("row length {suffix} overflows")))?;
        parts.extend(std::iter::repeat_n(value, k));
        suffix -= e;
    }
    Ok(Partition::from_sorted(parts))
}

/// Inverse of [`diagram_from_exponents`]: successive differences of the block
/// values.
pub fn exponents_of_diagram(diagram: &Partition, comp: &Composition) -> Result<GradedWeight> {
    let values = block_values(diagram, comp)?;
    Ok(GradedWeight(
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| u64::from(v - values.get(i + 1).copied().unwrap_or(0)))
            .collect(),
    ))
}

/// `(k_1 f_1, ..., k_s f_s)`, the character of `P/P'` on the invariant line.
pub fn weight_of_diagram(diagram: &Partition, comp: &Composition) -> Result<GradedWeight> {
    let values = block_values(diagram, comp)?;
    Ok(GradedWeight(
        comp.blocks()
            .iter()
            .zip(values)
            .map(|(&k, v)| k as u64 * u64::from(v))
            .collect(),
    ))
}

/// All block-compatible diagrams with exactly `size` boxes.
pub fn block_compatible_diagrams(comp: &Composition, size: usize) -> Vec<Partition> {
    Partition::all_of_size(size, comp.total())
        .into_iter()
        .filter(|f| block_compatible(f, comp).unwrap_or(false))
        .collect()
}

fn write_comma_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_comma_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    let s = s.trim();
    let s = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(s);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| format!("cannot parse `{t}` in `{s}`"))
        })
        .collect()
}
