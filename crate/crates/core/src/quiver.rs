//! Fence quivers, dimension vectors and linearizations, the compatibility
//! conditions on the twisting data, King's subrepresentation criterion and the
//! Grassmannian form of the stability inequalities.
//!
//! Conventions, taken literally from the source formulas:
//!
//! * `ϑ = (r, −e)`, and a representation is semistable (stable) when every
//!   proper nonzero subrepresentation `E` has `(dim E)·ϑ ≤ 0` (`< 0`).
//! * On the heads side a point of `∏_h Gr(d_h, ℂ^{n_h})` is semistable when
//!   every `(E_h ⊆ V_h)` satisfies
//!   `Σ_h r_h dim E_h ≤ Σ_h Σ_{a→h} e_{t(a)} dim(E_h ∩ ℂ^{d_{t(a)}})`, where
//!   `ℂ^{d_{t(a)}}` is the coordinate block of arrow `a` in
//!   `ℂ^{n_h} = ⊕_{a→h} ℂ^{d_{t(a)}}`. The tails side is the mirror image.
//!
//! With these signs the subrepresentation `(E_h = ℂ^{d_h}, E_t = 0)` always
//! exists, so King's criterion reports every representation unstable as soon
//! as some `r_h > 0`. The two criteria are implemented independently and are
//! not reconciled here.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rank_mod_p, rank_rational};
use crate::young::{diagram_from_exponents, Composition, GradedWeight};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Head,
    Tail,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::Head => Role::Tail,
            Role::Tail => Role::Head,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub role: Role,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

/// A quiver whose vertices split into heads and tails with every arrow
/// running from a tail to a head. Vertices and arrows keep their input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FenceQuiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

impl FenceQuiver {
    /// Validates roles, arrow directions and incidence.
    pub fn new(vertices: Vec<Vertex>, arrows: &[(&str, &str)]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.is_empty() {
                return Err(Error::InvalidQuiver("empty vertex id".into()));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{}`", v.id)));
            }
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.into()));
        let mut resolved = Vec::with_capacity(arrows.len());
        for &(t, h) in arrows {
            let (ti, hi) = (lookup(t)?, lookup(h)?);
            if vertices[ti].role != Role::Tail || vertices[hi].role != Role::Head {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {t} -> {h} must run from a tail to a head"
                )));
            }
            resolved.push(Arrow { tail: ti, head: hi });
        }
        for (i, v) in vertices.iter().enumerate() {
            if !resolved.iter().any(|a| a.tail == i || a.head == i) {
                return Err(Error::InvalidQuiver(format!("vertex `{}` has no arrows", v.id)));
            }
        }
        Ok(FenceQuiver {
            vertices,
            arrows: resolved,
        })
    }

    /// Builds a quiver from head ids, tail ids and `(tail, head)` pairs.
    pub fn from_ids(heads: &[&str], tails: &[&str], arrows: &[(&str, &str)]) -> Result<Self> {
        let vertices = heads
            .iter()
            .map(|h| Vertex {
                id: h.to_string(),
                role: Role::Head,
            })
            .chain(tails.iter().map(|t| Vertex {
                id: t.to_string(),
                role: Role::Tail,
            }))
            .collect();
        Self::new(vertices, arrows)
    }

    /// One head `h` receiving an arrow from each of `t1, …, tm`.
    pub fn star(m: usize) -> Self {
        let tails: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
        let tail_refs: Vec<&str> = tails.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str)> = tail_refs.iter().map(|t| (*t, "h")).collect();
        Self::from_ids(&["h"], &tail_refs, &arrows).expect("star quiver is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn role(&self, v: usize) -> Role {
        self.vertices[v].role
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.into()))
    }

    pub fn heads(&self) -> Vec<usize> {
        self.with_role(Role::Head)
    }

    pub fn tails(&self) -> Vec<usize> {
        self.with_role(Role::Tail)
    }

    pub fn with_role(&self, role: Role) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.role(v) == role).collect()
    }

    /// Indices of the arrows incident to `v` (into a head, out of a tail), in
    /// arrow order.
    pub fn arrows_at(&self, v: usize) -> Vec<usize> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.head == v || a.tail == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// The vertex at the other end of arrow `a` from `v`.
    pub fn other_end(&self, a: usize, v: usize) -> usize {
        let arrow = self.arrows[a];
        if arrow.head == v {
            arrow.tail
        } else {
            arrow.head
        }
    }

    /// `n_h = Σ_{h(a)=h} d_{t(a)}` for a head, `n_t = Σ_{t(a)=t} d_{h(a)}` for
    /// a tail. Parallel arrows count separately.
    pub fn ambient_dim(&self, d: &DimensionVector, v: usize) -> Result<usize> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        Ok(self
            .arrows_at(v)
            .into_iter()
            .map(|a| d.get(self.other_end(a, v)))
            .sum())
    }

    /// Half-open coordinate ranges of the arrow blocks in `ℂ^{n_v}`, in arrow
    /// order.
    pub fn blocks_at(&self, d: &DimensionVector, v: usize) -> Vec<(usize, std::ops::Range<usize>)> {
        let mut start = 0;
        self.arrows_at(v)
            .into_iter()
            .map(|a| {
                let len = d.get(self.other_end(a, v));
                let r = start..start + len;
                start += len;
                (a, r)
            })
            .collect()
    }
}

/// Positive dimensions aligned with the quiver's vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimensionVector(Vec<usize>);

impl DimensionVector {
    pub fn new(q: &FenceQuiver, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if let Some(v) = dims.iter().position(|&x| x == 0) {
            return Err(Error::DimensionMismatch(format!(
                "vertex `{}` has dimension 0",
                q.id(v)
            )));
        }
        Ok(DimensionVector(dims))
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Determinant exponents: `r_h` on heads, `e_t` on tails, stored in vertex
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Linearization(Vec<u64>);

impl Linearization {
    /// `r` lists head exponents in head order, `e` tail exponents in tail
    /// order.
    pub fn new(q: &FenceQuiver, r: &[u64], e: &[u64]) -> Result<Self> {
        let heads = q.heads();
        let tails = q.tails();
        if r.len() != heads.len() || e.len() != tails.len() {
            return Err(Error::LengthMismatch(format!(
                "{} head and {} tail exponents for {} heads and {} tails",
                r.len(),
                e.len(),
                heads.len(),
                tails.len()
            )));
        }
        let mut w = vec![0; q.vertex_count()];
        for (&v, &x) in heads.iter().zip(r).chain(tails.iter().zip(e)) {
            w[v] = x;
        }
        Ok(Linearization(w))
    }

    pub fn from_vertex_weights(q: &FenceQuiver, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != q.vertex_count() {
            return Err(Error::LengthMismatch(format!(
                "{} exponents for {} vertices",
                weights.len(),
                q.vertex_count()
            )));
        }
        Ok(Linearization(weights))
    }

    pub fn zero(q: &FenceQuiver) -> Self {
        Linearization(vec![0; q.vertex_count()])
    }

    /// The exponent at `v`: `r_v` for a head, `e_v` for a tail.
    pub fn weight(&self, v: usize) -> u64 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `ϑ_v`: `r_v` on heads and `−e_v` on tails.
    pub fn theta(&self, q: &FenceQuiver, v: usize) -> i64 {
        let w = self.0[v] as i64;
        match q.role(v) {
            Role::Head => w,
            Role::Tail => -w,
        }
    }

    pub fn scaled(&self, n: u64) -> Linearization {
        Linearization(self.0.iter().map(|w| w * n).collect())
    }
}

/// A composition of `d_v` and an exponent tuple with one entry per block, for
/// every vertex. On heads the tuple is the character exponent `e(h)`, on
/// tails the line bundle exponent `r(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    compositions: Vec<Composition>,
    exponents: Vec<GradedWeight>,
}

impl ParabolicData {
    pub fn new(
        q: &FenceQuiver,
        d: &DimensionVector,
        compositions: Vec<Composition>,
        exponents: Vec<GradedWeight>,
    ) -> Result<Self> {
        if compositions.len() != q.vertex_count() || exponents.len() != q.vertex_count() {
            return Err(Error::LengthMismatch(format!(
                "parabolic data for {} / {} vertices, quiver has {}",
                compositions.len(),
                exponents.len(),
                q.vertex_count()
            )));
        }
        for (v, (c, e)) in compositions.iter().zip(&exponents).enumerate() {
            if c.total() != d.get(v) {
                return Err(Error::DimensionMismatch(format!(
                    "composition {c} at `{}` does not sum to {}",
                    q.id(v),
                    d.get(v)
                )));
            }
            if e.0.len() != c.block_count() {
                return Err(Error::LengthMismatch(format!(
                    "{} exponents for the {} blocks at `{}`",
                    e.0.len(),
                    c.block_count(),
                    q.id(v)
                )));
            }
        }
        Ok(ParabolicData {
            compositions,
            exponents,
        })
    }

    /// Trivial compositions carrying the exponents of `lin`.
    pub fn from_linearization(q: &FenceQuiver, d: &DimensionVector, lin: &Linearization) -> Self {
        let compositions = (0..q.vertex_count()).map(|v| Composition::trivial(d.get(v))).collect();
        let exponents = (0..q.vertex_count()).map(|v| GradedWeight(vec![lin.weight(v)])).collect();
        ParabolicData {
            compositions,
            exponents,
        }
    }

    pub fn composition(&self, v: usize) -> &Composition {
        &self.compositions[v]
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.compositions
    }

    pub fn exponents(&self, v: usize) -> &GradedWeight {
        &self.exponents[v]
    }

    pub fn scaled(&self, n: u64) -> ParabolicData {
        ParabolicData {
            compositions: self.compositions.clone(),
            exponents: self.exponents.iter().map(|e| e.scaled(n)).collect(),
        }
    }

    /// Total box count of the forced diagrams on vertices of `role`.
    pub fn box_count(&self, q: &FenceQuiver, role: Role) -> Result<usize> {
        q.with_role(role)
            .into_iter()
            .map(|v| Ok(diagram_from_exponents(&self.exponents[v], &self.compositions[v])?.size()))
            .sum()
    }
}

/// `Σ_h r_h d_h = Σ_t e_t d_t`.
pub fn check_compatibility(q: &FenceQuiver, d: &DimensionVector, lin: &Linearization) -> bool {
    let side = |role| -> u128 {
        q.with_role(role)
            .into_iter()
            .map(|v| u128::from(lin.weight(v)) * d.get(v) as u128)
            .sum()
    };
    side(Role::Head) == side(Role::Tail)
}

/// `Σ_t Σ_i d_{t_i}(r_i + ⋯ + r_s) = Σ_h Σ_i d_{h_i}(e_i + ⋯ + e_s)`, read
/// as equality of the box counts of the forced diagrams on each side.
pub fn check_parabolic_compatibility(q: &FenceQuiver, p: &ParabolicData) -> Result<bool> {
    Ok(p.box_count(q, Role::Head)? == p.box_count(q, Role::Tail)?)
}

/// `(dim E)·ϑ = Σ_h r_h dim E_h − Σ_t e_t dim E_t`.
pub fn king_pairing(q: &FenceQuiver, d_sub: &[usize], lin: &Linearization) -> Result<i64> {
    if d_sub.len() != q.vertex_count() {
        return Err(Error::LengthMismatch(format!(
            "{} subdimensions for {} vertices",
            d_sub.len(),
            q.vertex_count()
        )));
    }
    Ok(d_sub
        .iter()
        .enumerate()
        .map(|(v, &x)| lin.theta(q, v) * x as i64)
        .sum())
}

/// Outcome of testing one candidate against a Grassmannian inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrassmannianVerdict {
    Violates,
    SatisfiesStrictly,
    Boundary,
}

/// Rational subspaces keyed by vertex index, each given by spanning vectors.
pub type SubspaceFamily = BTreeMap<usize, Vec<Vec<BigRational>>>;

/// Both sides of a Grassmannian inequality for one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannianEvaluation {
    pub lhs: i64,
    pub rhs: i64,
    pub verdict: GrassmannianVerdict,
}

/// Tests a single candidate `(E_v ⊆ V_v)` on the vertices of `side`.
///
/// Heads side: `Σ r_h dim E_h` against `Σ_h Σ_{a→h} e_{t(a)} dim(E_h ∩ B_a)`.
/// Tails side: `Σ_t Σ_{t→a} r_{h(a)} dim(E_t ∩ B_a)` against `Σ e_t dim E_t`.
/// `B_a` is the coordinate block of arrow `a`.
pub fn grassmannian_stability(
    q: &FenceQuiver,
    d: &DimensionVector,
    lin: &Linearization,
    side: Role,
    point: &SubspaceFamily,
    candidate: &SubspaceFamily,
) -> Result<GrassmannianEvaluation> {
    let mut sub_total = 0i64;
    let mut block_total = 0i64;
    for v in q.with_role(side) {
        let n = q.ambient_dim(d, v)?;
        let vp = point
            .get(&v)
            .ok_or_else(|| Error::DimensionMismatch(format!("no point subspace at `{}`", q.id(v))))?;
        let cand = candidate.get(&v).map(Vec::as_slice).unwrap_or(&[]);
        for vec in vp.iter().chain(cand) {
            if vec.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in C^{n} at `{}`",
                    vec.len(),
                    q.id(v)
                )));
            }
        }
        let point_rank = rank_rational(vp);
        if point_rank != d.get(v) {
            return Err(Error::DimensionMismatch(format!(
                "point at `{}` spans dimension {point_rank}, expected {}",
                q.id(v),
                d.get(v)
            )));
        }
        let joint: Vec<Vec<BigRational>> = vp.iter().chain(cand).cloned().collect();
        if rank_rational(&joint) != point_rank {
            return Err(Error::Precondition(format!(
                "candidate at `{}` is not inside the point",
                q.id(v)
            )));
        }
        let dim_e = rank_rational(cand);
        sub_total += lin.weight(v) as i64 * dim_e as i64;
        for (a, range) in q.blocks_at(d, v) {
            let meet = intersection_with_block(cand, dim_e, n, range);
            let other = q.other_end(a, v);
            block_total += lin.weight(other) as i64 * meet as i64;
        }
    }
    let (lhs, rhs) = match side {
        Role::Head => (sub_total, block_total),
        Role::Tail => (block_total, sub_total),
    };
    let verdict = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => GrassmannianVerdict::Violates,
        std::cmp::Ordering::Less => GrassmannianVerdict::SatisfiesStrictly,
        std::cmp::Ordering::Equal => GrassmannianVerdict::Boundary,
    };
    Ok(GrassmannianEvaluation { lhs, rhs, verdict })
}

/// `dim(E ∩ B) = dim E + dim B − dim(E + B)` for a coordinate block `B`.
fn intersection_with_block(
    e: &[Vec<BigRational>],
    dim_e: usize,
    n: usize,
    block: std::ops::Range<usize>,
) -> usize {
    let mut rows: Vec<Vec<BigRational>> = e.to_vec();
    for i in block.clone() {
        let mut unit = vec![BigRational::zero(); n];
        unit[i] = BigRational::one();
        rows.push(unit);
    }
    dim_e + block.len() - rank_rational(&rows)
}

/// An explicit representation over `F_p`: one `d_{h(a)} × d_{t(a)}` matrix
/// per arrow, entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFieldRep {
    p: u32,
    matrices: Vec<Vec<Vec<u32>>>,
}

impl FiniteFieldRep {
    pub fn new(q: &FenceQuiver, d: &DimensionVector, p: u32, matrices: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        if !linalg::is_prime(p) || p > 7 {
            return Err(Error::InvalidField(format!("p = {p} must be a prime at most 7")));
        }
        if matrices.len() != q.arrows().len() {
            return Err(Error::InvalidField(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                q.arrows().len()
            )));
        }
        for (i, (m, a)) in matrices.iter().zip(q.arrows()).enumerate() {
            let (rows, cols) = (d.get(a.head), d.get(a.tail));
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(Error::InvalidField(format!(
                    "matrix {i} must be {rows}x{cols}"
                )));
            }
            if m.iter().flatten().any(|&x| x >= p) {
                return Err(Error::InvalidField(format!("matrix {i} has entries outside 0..{p}")));
            }
        }
        Ok(FiniteFieldRep { p, matrices })
    }

    /// All matrices zero.
    pub fn zero(q: &FenceQuiver, d: &DimensionVector, p: u32) -> Result<Self> {
        let matrices = q
            .arrows()
            .iter()
            .map(|a| vec![vec![0; d.get(a.tail)]; d.get(a.head)])
            .collect();
        Self::new(q, d, p, matrices)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn matrix(&self, a: usize) -> &[Vec<u32>] {
        &self.matrices[a]
    }

    pub fn matrices(&self) -> &[Vec<Vec<u32>>] {
        &self.matrices
    }
}

/// A subrepresentation found by [`exhaustive_stability`]: a reduced
/// row-echelon basis of `E_v ⊆ F_p^{d_v}` for every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subspaces: Vec<Vec<Vec<u32>>>,
    pub dims: Vec<usize>,
    pub pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StabilityVerdict {
    Unstable { witness: Witness },
    SemistableNotStable { witness: Witness },
    Stable,
}

impl StabilityVerdict {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            StabilityVerdict::Unstable { witness } | StabilityVerdict::SemistableNotStable { witness } => {
                Some(witness)
            }
            StabilityVerdict::Stable => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StabilityVerdict::Unstable { .. } => "unstable",
            StabilityVerdict::SemistableNotStable { .. } => "semistable_not_stable",
            StabilityVerdict::Stable => "stable",
        }
    }
}

/// Every subspace of `F_p^n` as a reduced row-echelon basis, ordered by
/// dimension and then by pivot pattern and entries.
pub fn subspaces_mod_p(n: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free entries: positions right of the pivot that are not pivots
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let count = (p as usize).pow(free.len() as u32);
            for code in 0..count {
                let mut basis = vec![vec![0u32; n]; k];
                for (row, &pc) in pivots.iter().enumerate() {
                    basis[row][pc] = 1;
                }
                let mut c = code;
                for &(row, col) in &free {
                    basis[row][col] = (c % p as usize) as u32;
                    c /= p as usize;
                }
                out.push(basis);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of subspaces of `F_p^n` (a sum of Gaussian binomials).
pub fn subspace_count(n: usize, p: u32) -> u128 {
    (0..=n)
        .map(|k| {
            let mut num = 1u128;
            let mut den = 1u128;
            for i in 0..k {
                num *= (p as u128).pow((n - i) as u32) - 1;
                den *= (p as u128).pow((i + 1) as u32) - 1;
            }
            num / den
        })
        .sum()
}

/// Checks King's criterion over every subrepresentation of `rep`.
///
/// Subspace tuples are visited in lexicographic order of the per-vertex lists
/// from [`subspaces_mod_p`]; the first proper nonzero subrepresentation with
/// positive pairing is returned as the witness of instability, otherwise the
/// first one with zero pairing.
pub fn exhaustive_stability(
    q: &FenceQuiver,
    d: &DimensionVector,
    lin: &Linearization,
    rep: &FiniteFieldRep,
    limits: &Limits,
) -> Result<StabilityVerdict> {
    let p = rep.p();
    let nv = q.vertex_count();
    let total: u128 = (0..nv).map(|v| subspace_count(d.get(v), p)).product();
    if total > limits.subspace_tuples as u128 {
        return Err(Error::ResourceLimit {
            what: "subspace tuples",
            needed: total.to_string(),
            limit: limits.subspace_tuples,
        });
    }
    let lists: Vec<Vec<Vec<Vec<u32>>>> = (0..nv).map(|v| subspaces_mod_p(d.get(v), p)).collect();
    let mut choice = vec![0usize; nv];
    let mut first_zero: Option<Witness> = None;
    let mut search = Search {
        q,
        d,
        lin,
        rep,
        lists: &lists,
        choice: &mut choice,
        first_zero: &mut first_zero,
    };
    if let Some(w) = search.run(0) {
        return Ok(StabilityVerdict::Unstable { witness: w });
    }
    Ok(match first_zero {
        Some(witness) => StabilityVerdict::SemistableNotStable { witness },
        None => StabilityVerdict::Stable,
    })
}

struct Search<'a> {
    q: &'a FenceQuiver,
    d: &'a DimensionVector,
    lin: &'a Linearization,
    rep: &'a FiniteFieldRep,
    lists: &'a [Vec<Vec<Vec<u32>>>],
    choice: &'a mut Vec<usize>,
    first_zero: &'a mut Option<Witness>,
}

impl Search<'_> {
    fn run(&mut self, v: usize) -> Option<Witness> {
        if v == self.choice.len() {
            return self.evaluate();
        }
        for i in 0..self.lists[v].len() {
            self.choice[v] = i;
            if !self.closed_up_to(v) {
                continue;
            }
            if let Some(w) = self.run(v + 1) {
                return Some(w);
            }
        }
        None
    }

    /// Closure under arrows whose endpoints are both among vertices `0..=v`
    /// and at least one of them is `v`.
    fn closed_up_to(&self, v: usize) -> bool {
        self.q.arrows().iter().enumerate().all(|(i, a)| {
            if a.head.max(a.tail) != v {
                return true;
            }
            let et = &self.lists[a.tail][self.choice[a.tail]];
            let eh = &self.lists[a.head][self.choice[a.head]];
            maps_into(self.rep.matrix(i), et, eh, self.rep.p())
        })
    }

    fn evaluate(&mut self) -> Option<Witness> {
        let dims: Vec<usize> = (0..self.choice.len())
            .map(|v| self.lists[v][self.choice[v]].len())
            .collect();
        let zero = dims.iter().all(|&x| x == 0);
        let full = dims.iter().enumerate().all(|(v, &x)| x == self.d.get(v));
        if zero || full {
            return None;
        }
        let pairing = king_pairing(self.q, &dims, self.lin).expect("lengths match");
        if pairing < 0 || (pairing == 0 && self.first_zero.is_some()) {
            return None;
        }
        let witness = Witness {
            subspaces: (0..self.choice.len())
                .map(|v| self.lists[v][self.choice[v]].clone())
                .collect(),
            dims,
            pairing,
        };
        if pairing > 0 {
            return Some(witness);
        }
        *self.first_zero = Some(witness);
        None
    }
}

/// Whether `M · span(src) ⊆ span(dst)` over `F_p`.
fn maps_into(m: &[Vec<u32>], src: &[Vec<u32>], dst: &[Vec<u32>], p: u32) -> bool {
    let base = rank_mod_p(dst, p);
    src.iter().all(|v| {
        let image: Vec<u32> = m
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b % p).sum::<u32>() % p)
            .collect();
        if image.iter().all(|&x| x == 0) {
            return true;
        }
        let mut rows = dst.to_vec();
        rows.push(image);
        rank_mod_p(&rows, p) == base
    })
}

/// Moves a finite-field witness to the Grassmannian picture on `side`.
///
/// Matrix entries are read as integers `0..p`. On the heads side the point is
/// the row space of `[M_a]_{a→h}` in `ℚ^{n_h}` and the candidate is spanned
/// by `bᵀ[M_a]_{a→h}` for the basis vectors `b` of `E_h`; on the tails side
/// the point is the column space of the stacked `[M_a]_{t→a}` and the
/// candidate is the image of `E_t`. Returns `None` when some vertex on that
/// side does not give a point of the Grassmannian (rank below `d_v`).
pub fn lift_witness(
    q: &FenceQuiver,
    d: &DimensionVector,
    rep: &FiniteFieldRep,
    witness: &Witness,
    side: Role,
) -> Option<(SubspaceFamily, SubspaceFamily)> {
    let mut point = SubspaceFamily::new();
    let mut candidate = SubspaceFamily::new();
    let q_of = |x: u32| BigRational::from_integer(x.into());
    for v in q.with_role(side) {
        let arrows = q.arrows_at(v);
        // the d_v vectors spanning the point, one per coordinate of C^{d_v}
        let unit_images: Vec<Vec<u32>> = (0..d.get(v))
            .map(|i| {
                let mut unit = vec![0; d.get(v)];
                unit[i] = 1;
                image_at(rep, &arrows, side, &unit)
            })
            .collect();
        let vp: Vec<Vec<BigRational>> = unit_images
            .iter()
            .map(|r| r.iter().map(|&x| q_of(x)).collect())
            .collect();
        if rank_rational(&vp) != d.get(v) {
            return None;
        }
        let cand = witness.subspaces[v]
            .iter()
            .map(|b| image_at(rep, &arrows, side, b).into_iter().map(q_of).collect())
            .collect();
        point.insert(v, vp);
        candidate.insert(v, cand);
    }
    Some((point, candidate))
}

/// The vector `(bᵀ M_a)_a` (heads) or `(M_a b)_a` (tails) with integer
/// arithmetic, concatenated over `arrows`.
fn image_at(rep: &FiniteFieldRep, arrows: &[usize], side: Role, b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    for &a in arrows {
        let m = rep.matrix(a);
        match side {
            Role::Head => {
                let cols = m.first().map_or(0, Vec::len);
                for c in 0..cols {
                    out.push((0..m.len()).map(|r| b[r] * m[r][c]).sum());
                }
            }
            Role::Tail => {
                for row in m {
                    out.push(row.iter().zip(b).map(|(x, y)| x * y).sum());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> FenceQuiver {
        FenceQuiver::from_ids(&["h"], &["t"], &[("t", "h")]).unwrap()
    }

    fn qv(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn constructor_enforces_fence_shape() {
        let tt = FenceQuiver::from_ids(&["h"], &["t", "u"], &[("t", "u"), ("t", "h")]);
        assert!(matches!(tt, Err(Error::InvalidQuiver(_))));
        let hh = FenceQuiver::from_ids(&["h", "g"], &["t"], &[("h", "g"), ("t", "h")]);
        assert!(matches!(hh, Err(Error::InvalidQuiver(_))));
        let backwards = FenceQuiver::from_ids(&["h"], &["t"], &[("h", "t")]);
        assert!(backwards.is_err());
        let isolated = FenceQuiver::from_ids(&["h"], &["t", "u"], &[("t", "h")]);
        assert!(isolated.is_err());
        let unknown = FenceQuiver::from_ids(&["h"], &["t"], &[("x", "h")]);
        assert!(matches!(unknown, Err(Error::UnknownVertex(_))));
        let dup = FenceQuiver::from_ids(&["h"], &["h"], &[("h", "h")]);
        assert!(dup.is_err());
    }

    #[test]
    fn ambient_dims() {
        let star = FenceQuiver::star(3);
        let d = DimensionVector::new(&star, vec![2, 1, 2, 3]).unwrap();
        assert_eq!(star.ambient_dim(&d, 0).unwrap(), 6);
        assert_eq!(star.ambient_dim(&d, 2).unwrap(), 2);
        let q = single();
        let d = DimensionVector::new(&q, vec![3, 2]).unwrap();
        assert_eq!(q.ambient_dim(&d, 0).unwrap(), 2);
        assert_eq!(q.ambient_dim(&d, 1).unwrap(), 3);
        let par = FenceQuiver::from_ids(&["h"], &["t"], &[("t", "h"), ("t", "h")]).unwrap();
        let d = DimensionVector::new(&par, vec![1, 2]).unwrap();
        assert_eq!(par.ambient_dim(&d, 0).unwrap(), 4);
        assert_eq!(par.ambient_dim(&d, 1).unwrap(), 2);
        assert!(par.ambient_dim(&d, 5).is_err());
    }

    #[test]
    fn compatibility_examples() {
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![2, 1, 1]).unwrap();
        assert!(check_compatibility(&star, &d, &Linearization::new(&star, &[1], &[1, 1]).unwrap()));
        assert!(check_compatibility(&star, &d, &Linearization::zero(&star)));
        assert!(!check_compatibility(&star, &d, &Linearization::new(&star, &[1], &[1, 2]).unwrap()));
        let d3 = DimensionVector::new(&star, vec![3, 1, 2]).unwrap();
        for r in 0..4u64 {
            for e1 in 0..6u64 {
                for e2 in 0..6u64 {
                    let lin = Linearization::new(&star, &[r], &[e1, e2]).unwrap();
                    assert_eq!(check_compatibility(&star, &d3, &lin), 3 * r == e1 + 2 * e2);
                }
            }
        }
    }

    #[test]
    fn parabolic_compatibility_examples() {
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![1, 1, 1]).unwrap();
        let zero = ParabolicData::from_linearization(&star, &d, &Linearization::zero(&star));
        assert!(check_parabolic_compatibility(&star, &zero).unwrap());
        let lin = Linearization::new(&star, &[2], &[1, 1]).unwrap();
        let p = ParabolicData::from_linearization(&star, &d, &lin);
        assert!(check_parabolic_compatibility(&star, &p).unwrap());

        let d = DimensionVector::new(&star, vec![2, 1, 1]).unwrap();
        let p = ParabolicData::new(
            &star,
            &d,
            vec![
                Composition::new(vec![1, 1]).unwrap(),
                Composition::trivial(1),
                Composition::trivial(1),
            ],
            vec![GradedWeight(vec![1, 1]), GradedWeight(vec![2]), GradedWeight(vec![1])],
        )
        .unwrap();
        assert_eq!(p.box_count(&star, Role::Head).unwrap(), 3);
        assert!(check_parabolic_compatibility(&star, &p).unwrap());
        // trivial compositions reduce to the plain condition
        for r in 0..3u64 {
            for e1 in 0..4u64 {
                let lin = Linearization::new(&star, &[r], &[e1, 1]).unwrap();
                let p = ParabolicData::from_linearization(&star, &d, &lin);
                assert_eq!(
                    check_parabolic_compatibility(&star, &p).unwrap(),
                    check_compatibility(&star, &d, &lin)
                );
            }
        }
        assert!(ParabolicData::new(
            &star,
            &d,
            vec![Composition::trivial(1); 3],
            vec![GradedWeight(vec![0]); 3]
        )
        .is_err());
    }

    #[test]
    fn king_examples() {
        let star = FenceQuiver::star(4);
        let d = DimensionVector::new(&star, vec![2, 1, 1, 1, 1]).unwrap();
        let lin = Linearization::new(&star, &[2], &[1, 1, 1, 1]).unwrap();
        assert!(check_compatibility(&star, &d, &lin));
        assert_eq!(king_pairing(&star, &[0; 5], &lin).unwrap(), 0);
        assert_eq!(king_pairing(&star, d.as_slice(), &lin).unwrap(), 0);
        assert_eq!(king_pairing(&star, &[1, 1, 0, 0, 0], &lin).unwrap(), 1);
        assert!(king_pairing(&star, &[1], &lin).is_err());
    }

    #[test]
    fn subspace_enumeration_counts() {
        for p in [2u32, 3, 5] {
            for n in 0..=3 {
                let all = subspaces_mod_p(n, p);
                assert_eq!(all.len() as u128, subspace_count(n, p), "n={n} p={p}");
                for s in &all {
                    assert_eq!(rank_mod_p(s, p), s.len());
                }
                // distinct as subspaces: no two have the same span
                for (i, a) in all.iter().enumerate() {
                    for b in &all[i + 1..] {
                        if a.len() == b.len() && !a.is_empty() {
                            let mut joint = a.clone();
                            joint.extend(b.iter().cloned());
                            assert!(rank_mod_p(&joint, p) > a.len());
                        }
                    }
                }
            }
        }
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(2, 3), 6);
    }

    #[test]
    fn exhaustive_examples() {
        let lim = Limits::default();
        let q = single();
        let d = DimensionVector::new(&q, vec![1, 1]).unwrap();
        let rep = FiniteFieldRep::new(&q, &d, 2, vec![vec![vec![1]]]).unwrap();

        let lin = Linearization::new(&q, &[1], &[1]).unwrap();
        let v = exhaustive_stability(&q, &d, &lin, &rep, &lim).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(v.name(), "unstable");
        assert_eq!(w.dims, vec![1, 0]);
        assert_eq!(w.pairing, 1);

        let v = exhaustive_stability(&q, &d, &Linearization::zero(&q), &rep, &lim).unwrap();
        assert_eq!(v.name(), "semistable_not_stable");
        assert_eq!(v.witness().unwrap().pairing, 0);

        // zero maps: the full head with nothing else is a subrepresentation
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![2, 1, 1]).unwrap();
        let lin = Linearization::new(&star, &[1], &[1, 1]).unwrap();
        let zero = FiniteFieldRep::zero(&star, &d, 3).unwrap();
        let v = exhaustive_stability(&star, &d, &lin, &zero, &lim).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(v.name(), "unstable");
        assert!(w.pairing > 0);
        assert_eq!(w.dims[1..], [0, 0]);
    }

    #[test]
    fn witnesses_are_subrepresentations_with_reported_pairing() {
        let lim = Limits::default();
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![2, 1, 1]).unwrap();
        let rep = FiniteFieldRep::new(&star, &d, 2, vec![vec![vec![1], vec![0]], vec![vec![1], vec![1]]]).unwrap();
        for lin in [
            Linearization::new(&star, &[1], &[1, 1]).unwrap(),
            Linearization::zero(&star),
            Linearization::new(&star, &[0], &[0, 0]).unwrap(),
        ] {
            let v = exhaustive_stability(&star, &d, &lin, &rep, &lim).unwrap();
            if let Some(w) = v.witness() {
                assert_eq!(king_pairing(&star, &w.dims, &lin).unwrap(), w.pairing);
                for (i, a) in star.arrows().iter().enumerate() {
                    assert!(maps_into(
                        rep.matrix(i),
                        &w.subspaces[a.tail],
                        &w.subspaces[a.head],
                        2
                    ));
                }
            }
        }
    }

    #[test]
    fn exhaustive_guard() {
        let q = single();
        let d = DimensionVector::new(&q, vec![2, 2]).unwrap();
        let rep = FiniteFieldRep::zero(&q, &d, 7).unwrap();
        let tight = Limits {
            subspace_tuples: 10,
            ..Limits::default()
        };
        let err = exhaustive_stability(&q, &d, &Linearization::zero(&q), &rep, &tight).unwrap_err();
        assert!(err.is_resource_limit());
        assert!(FiniteFieldRep::new(&q, &d, 4, vec![vec![vec![0, 0]; 2]]).is_err());
        assert!(FiniteFieldRep::new(&q, &d, 11, vec![vec![vec![0, 0]; 2]]).is_err());
        assert!(FiniteFieldRep::new(&q, &d, 3, vec![vec![vec![0, 3]; 2]]).is_err());
        assert!(FiniteFieldRep::new(&q, &d, 3, vec![vec![vec![0]; 2]]).is_err());
    }

    #[test]
    fn grassmannian_zero_candidate_is_boundary() {
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![1, 1, 1]).unwrap();
        let lin = Linearization::new(&star, &[2], &[1, 1]).unwrap();
        let point: SubspaceFamily = [(0, vec![vec![qv(1), qv(3)]])].into();
        let empty = SubspaceFamily::new();
        let ev = grassmannian_stability(&star, &d, &lin, Role::Head, &point, &empty).unwrap();
        assert_eq!(ev.verdict, GrassmannianVerdict::Boundary);
        // the generic line meets neither coordinate axis
        let ev = grassmannian_stability(&star, &d, &lin, Role::Head, &point, &point).unwrap();
        assert_eq!((ev.lhs, ev.rhs), (2, 0));
        assert_eq!(ev.verdict, GrassmannianVerdict::Violates);
    }

    #[test]
    fn grassmannian_full_coordinate_point_is_boundary() {
        // d_h = n_h, so the point is all of C^{n_h} and meets every block fully
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![2, 1, 1]).unwrap();
        let lin = Linearization::new(&star, &[1], &[1, 1]).unwrap();
        let whole: SubspaceFamily = [(0, vec![vec![qv(1), qv(2)], vec![qv(0), qv(5)]])].into();
        let ev = grassmannian_stability(&star, &d, &lin, Role::Head, &whole, &whole).unwrap();
        assert_eq!(ev.verdict, GrassmannianVerdict::Boundary);
        // a coordinate line meets exactly one block
        let line: SubspaceFamily = [(0, vec![vec![qv(1), qv(0)]])].into();
        let ev = grassmannian_stability(&star, &d, &lin, Role::Head, &whole, &line).unwrap();
        assert_eq!((ev.lhs, ev.rhs), (1, 1));
        let generic: SubspaceFamily = [(0, vec![vec![qv(1), qv(1)]])].into();
        let ev = grassmannian_stability(&star, &d, &lin, Role::Head, &whole, &generic).unwrap();
        assert_eq!(ev.verdict, GrassmannianVerdict::Violates);
    }

    #[test]
    fn grassmannian_tails_side_and_errors() {
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![1, 1, 1]).unwrap();
        let lin = Linearization::new(&star, &[2], &[1, 1]).unwrap();
        let point: SubspaceFamily = [(1, vec![vec![qv(1)]]), (2, vec![vec![qv(4)]])].into();
        let ev = grassmannian_stability(&star, &d, &lin, Role::Tail, &point, &point).unwrap();
        assert_eq!((ev.lhs, ev.rhs), (4, 2));
        assert_eq!(ev.verdict, GrassmannianVerdict::Violates);
        let bad: SubspaceFamily = [(1, vec![vec![qv(1), qv(0)]]), (2, vec![vec![qv(1)]])].into();
        assert!(grassmannian_stability(&star, &d, &lin, Role::Tail, &bad, &bad).is_err());
        let missing: SubspaceFamily = [(1, vec![vec![qv(1)]])].into();
        assert!(grassmannian_stability(&star, &d, &lin, Role::Tail, &missing, &missing).is_err());
        let hpoint: SubspaceFamily = [(0, vec![vec![qv(1), qv(0)]])].into();
        let outside: SubspaceFamily = [(0, vec![vec![qv(0), qv(1)]])].into();
        assert!(matches!(
            grassmannian_stability(&star, &d, &lin, Role::Head, &hpoint, &outside),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lifting_uses_row_and_column_spaces() {
        let star = FenceQuiver::star(2);
        let d = DimensionVector::new(&star, vec![1, 1, 1]).unwrap();
        let rep = FiniteFieldRep::new(&star, &d, 2, vec![vec![vec![1]], vec![vec![1]]]).unwrap();
        let lin = Linearization::new(&star, &[2], &[1, 1]).unwrap();
        let v = exhaustive_stability(&star, &d, &lin, &rep, &Limits::default()).unwrap();
        let w = v.witness().unwrap().clone();
        assert_eq!(w.dims, vec![1, 0, 0]);
        let (point, cand) = lift_witness(&star, &d, &rep, &w, Role::Head).unwrap();
        assert_eq!(point[&0], vec![vec![qv(1), qv(1)]]);
        let ev = grassmannian_stability(&star, &d, &lin, Role::Head, &point, &cand).unwrap();
        assert_eq!(ev.verdict, GrassmannianVerdict::Violates);
        let zero = FiniteFieldRep::zero(&star, &d, 2).unwrap();
        assert!(lift_witness(&star, &d, &zero, &w, Role::Head).is_none());
    }
}
