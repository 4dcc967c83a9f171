//! Brute-force graded components of `ℂ[Rep(Q,d)]^{P'_H × P'_T}`.
//!
//! `P'_v` is connected, so invariance is annihilation by its Lie algebra.
//! Each generator acts on polynomials in the matrix entries as a derivation;
//! a graded component is the joint kernel of those derivations on one torus
//! weight space, computed by exact rank.
//!
//! Sign and side conventions. Tails differentiate `f(M·exp(tY))`, so `E_ij`
//! at a tail is `Σ_r x_{ri} ∂/∂x_{rj}`. Heads differentiate
//! `f(exp(−tXᵀ)·M)`, so `E_ij` at a head is `−Σ_c x_{ic} ∂/∂x_{jc}`. The
//! transpose makes the invariant lines at a head sit in the weight of a
//! diagram that is block-compatible with the composition as written, the same
//! as at a tail. Only kernel dimensions leave this module, and those do not
//! depend on the signs.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::ComponentLabel;
use crate::linalg::{IntegerEchelon, SparseRow};
use crate::quiver::{DimensionVector, FenceQuiver, Role};
use crate::young::{block_compatible, Composition, Partition};
use crate::Limits;

/// One Lie-algebra basis element of `gl_{d_v}` (indices zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// The matrix unit `E_{row,col}`, `row ≠ col`.
    Elementary { row: usize, col: usize },
    /// `H_first − H_second`.
    DiagonalDifference { first: usize, second: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivation {
    pub vertex: usize,
    pub role: Role,
    pub generator: Generator,
}

/// Generators of the Lie algebra of `P'_v`: the off-diagonal units and
/// consecutive diagonal differences inside each block, and every unit above
/// the block diagonal.
pub fn pprime_generators(vertex: usize, role: Role, comp: &Composition) -> Vec<Derivation> {
    let ranges: Vec<_> = comp.ranges().collect();
    let mut gens = Vec::new();
    let mut push = |generator| {
        gens.push(Derivation {
            vertex,
            role,
            generator,
        })
    };
    for r in &ranges {
        for i in r.clone() {
            for j in r.clone() {
                if i != j {
                    push(Generator::Elementary { row: i, col: j });
                }
            }
        }
        for i in r.start..r.end.saturating_sub(1) {
            push(Generator::DiagonalDifference {
                first: i,
                second: i + 1,
            });
        }
    }
    for (bi, ri) in ranges.iter().enumerate() {
        for rj in &ranges[bi + 1..] {
            for i in ri.clone() {
                for j in rj.clone() {
                    push(Generator::Elementary { row: i, col: j });
                }
            }
        }
    }
    gens
}

/// Positions of the matrix entries `x^a_{ij}` in exponent vectors: arrows in
/// order, each matrix row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableLayout {
    // (rows, cols, offset) per arrow
    blocks: Vec<(usize, usize, usize)>,
    nvars: usize,
}

impl VariableLayout {
    pub fn new(q: &FenceQuiver, d: &DimensionVector) -> Self {
        let mut offset = 0;
        let blocks = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (d.get(a.head), d.get(a.tail));
                let b = (r, c, offset);
                offset += r * c;
                b
            })
            .collect();
        VariableLayout {
            blocks,
            nvars: offset,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Index of `x^a_{row,col}`.
    pub fn var(&self, arrow: usize, row: usize, col: usize) -> usize {
        let (_, c, off) = self.blocks[arrow];
        off + row * c + col
    }

    pub fn shape(&self, arrow: usize) -> (usize, usize) {
        let (r, c, _) = self.blocks[arrow];
        (r, c)
    }
}

/// Exact rational polynomial in the matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigRational::from_integer(1.into()));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: BigRational) {
        assert_eq!(exponents.len(), self.nvars, "monomial over the wrong variables");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

/// Image of one monomial under a derivation, with integer coefficients.
fn derive_monomial(
    q: &FenceQuiver,
    layout: &VariableLayout,
    der: &Derivation,
    mono: &[u32],
) -> Vec<(Vec<u32>, BigInt)> {
    let arrows = q.arrows_at(der.vertex);
    match der.generator {
        Generator::DiagonalDifference { first, second } => {
            let deg = |i: usize| -> i64 {
                arrows
                    .iter()
                    .map(|&a| {
                        let (rows, cols) = layout.shape(a);
                        match der.role {
                            Role::Head => (0..cols).map(|c| i64::from(mono[layout.var(a, i, c)])).sum::<i64>(),
                            Role::Tail => (0..rows).map(|r| i64::from(mono[layout.var(a, r, i)])).sum(),
                        }
                    })
                    .sum()
            };
            let diff = deg(first) - deg(second);
            let scalar = match der.role {
                Role::Head => -diff,
                Role::Tail => diff,
            };
            if scalar == 0 {
                Vec::new()
            } else {
                vec![(mono.to_vec(), BigInt::from(scalar))]
            }
        }
        Generator::Elementary { row: i, col: j } => {
            let mut out = Vec::new();
            for &a in &arrows {
                let (rows, cols) = layout.shape(a);
                // pairs (source variable differentiated, variable multiplied in)
                let pairs: Vec<(usize, usize)> = match der.role {
                    Role::Head => (0..cols).map(|c| (layout.var(a, j, c), layout.var(a, i, c))).collect(),
                    Role::Tail => (0..rows).map(|r| (layout.var(a, r, j), layout.var(a, r, i))).collect(),
                };
                for (from, to) in pairs {
                    let k = mono[from];
                    if k == 0 {
                        continue;
                    }
                    let mut m = mono.to_vec();
                    m[from] -= 1;
                    m[to] += 1;
                    let c = match der.role {
                        Role::Head => -BigInt::from(k),
                        Role::Tail => BigInt::from(k),
                    };
                    out.push((m, c));
                }
            }
            out
        }
    }
}

/// Applies `der` to `f` as a derivation of the coordinate ring.
pub fn apply_derivation(
    q: &FenceQuiver,
    d: &DimensionVector,
    der: &Derivation,
    f: &SparsePolynomial,
) -> Result<SparsePolynomial> {
    let layout = VariableLayout::new(q, d);
    if f.nvars() != layout.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial in {} variables, representation space has {}",
            f.nvars(),
            layout.nvars()
        )));
    }
    if der.vertex >= q.vertex_count() || q.role(der.vertex) != der.role {
        return Err(Error::Precondition("derivation does not match its vertex".into()));
    }
    let mut out = SparsePolynomial::zero(f.nvars());
    for (m, c) in f.terms() {
        for (img, k) in derive_monomial(q, &layout, der, m) {
            out.add_term(img, c * BigRational::from_integer(k));
        }
    }
    Ok(out)
}

/// What the oracle imposes at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexConstraint {
    /// No invariance and no weight condition.
    Free,
    /// Invariance under `P'` of the composition, in the torus weight of the
    /// (block-compatible) label.
    Parabolic { composition: Composition, label: Partition },
}

/// Dimension of the joint kernel of the `P'` derivations on the degree
/// `degree` polynomials whose weight at each constrained vertex is its label.
pub fn constrained_dim(
    q: &FenceQuiver,
    d: &DimensionVector,
    constraints: &[VertexConstraint],
    degree: usize,
    limits: &Limits,
) -> Result<BigUint> {
    if constraints.len() != q.vertex_count() {
        return Err(Error::LengthMismatch(format!(
            "{} constraints for {} vertices",
            constraints.len(),
            q.vertex_count()
        )));
    }
    for (v, c) in constraints.iter().enumerate() {
        if let VertexConstraint::Parabolic { composition, label } = c {
            if composition.total() != d.get(v) {
                return Err(Error::DimensionMismatch(format!(
                    "composition {composition} at `{}` does not sum to {}",
                    q.id(v),
                    d.get(v)
                )));
            }
            if !block_compatible(label, composition)? {
                return Err(Error::NotBlockCompatible {
                    diagram: label.to_string(),
                    composition: composition.to_string(),
                });
            }
        }
    }
    for role in [Role::Head, Role::Tail] {
        let mut fixed = 0;
        let mut all_fixed = true;
        for v in q.with_role(role) {
            match &constraints[v] {
                VertexConstraint::Parabolic { label, .. } => fixed += label.size(),
                VertexConstraint::Free => all_fixed = false,
            }
        }
        if fixed > degree || (all_fixed && fixed != degree) {
            return Ok(BigUint::zero());
        }
    }
    let layout = VariableLayout::new(q, d);
    let basis = weight_space(q, &layout, constraints, degree, limits)?;
    let gens: Vec<Derivation> = constraints
        .iter()
        .enumerate()
        .flat_map(|(v, c)| match c {
            VertexConstraint::Parabolic { composition, .. } => pprime_generators(v, q.role(v), composition),
            VertexConstraint::Free => Vec::new(),
        })
        .collect();
    let mut columns: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut ech = IntegerEchelon::new();
    for mono in &basis {
        let mut row = SparseRow::new();
        for (gi, g) in gens.iter().enumerate() {
            for (img, c) in derive_monomial(q, &layout, g, mono) {
                let next = columns.len();
                let col = *columns.entry((gi, img)).or_insert(next);
                *row.entry(col).or_insert_with(BigInt::zero) += c;
            }
        }
        ech.insert(row);
    }
    Ok(BigUint::from(basis.len() - ech.rank()))
}

/// The invariant-theoretic side of a component: every vertex parabolic with
/// its label. Returns 0 at once when `degree` differs from the label's box
/// counts.
pub fn component_dim(
    q: &FenceQuiver,
    d: &DimensionVector,
    comps: &[Composition],
    label: &ComponentLabel,
    degree: usize,
    limits: &Limits,
) -> Result<BigUint> {
    label.validate(q, d, comps)?;
    let constraints: Vec<VertexConstraint> = comps
        .iter()
        .zip(label.diagrams())
        .map(|(c, f)| VertexConstraint::Parabolic {
            composition: c.clone(),
            label: f.clone(),
        })
        .collect();
    constrained_dim(q, d, &constraints, degree, limits)
}

/// Every monomial of total degree `degree` whose row sums at constrained heads
/// and column sums at constrained tails are the labels' rows.
fn weight_space(
    q: &FenceQuiver,
    layout: &VariableLayout,
    constraints: &[VertexConstraint],
    degree: usize,
    limits: &Limits,
) -> Result<Vec<Vec<u32>>> {
    let nvars = layout.nvars();
    // budget slots: (vertex, index) -> remaining; each variable touches one
    // head row and one tail column
    let mut slot_of_var = vec![[None::<usize>; 2]; nvars];
    let mut budgets: Vec<u32> = Vec::new();
    let mut last_var: Vec<usize> = Vec::new();
    let mut slot_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (rows, cols) = layout.shape(a);
        for r in 0..rows {
            for c in 0..cols {
                let x = layout.var(a, r, c);
                for (k, (v, idx)) in [(arrow.head, r), (arrow.tail, c)].into_iter().enumerate() {
                    if let VertexConstraint::Parabolic { label, .. } = &constraints[v] {
                        let s = *slot_index.entry((v, idx)).or_insert_with(|| {
                            budgets.push(label.part(idx));
                            last_var.push(0);
                            budgets.len() - 1
                        });
                        slot_of_var[x][k] = Some(s);
                        last_var[s] = last_var[s].max(x);
                    }
                }
            }
        }
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    for (s, &x) in last_var.iter().enumerate() {
        closes[x].push(s);
    }
    // budgets that no variable touches must already be zero
    let touched: Vec<bool> = {
        let mut t = vec![false; budgets.len()];
        for pair in &slot_of_var {
            for s in pair.iter().flatten() {
                t[*s] = true;
            }
        }
        t
    };
    if budgets.iter().zip(&touched).any(|(&b, &t)| !t && b > 0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut mono = vec![0u32; nvars];
    let mut state = Enumeration {
        slot_of_var: &slot_of_var,
        closes: &closes,
        budgets,
        limit: limits.oracle_monomials,
    };
    state.go(0, degree as u32, &mut mono, &mut out)?;
    Ok(out)
}

struct Enumeration<'a> {
    slot_of_var: &'a [[Option<usize>; 2]],
    closes: &'a [Vec<usize>],
    budgets: Vec<u32>,
    limit: usize,
}

impl Enumeration<'_> {
    fn go(&mut self, x: usize, remaining: u32, mono: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) -> Result<()> {
        if x == mono.len() {
            if remaining == 0 {
                if out.len() == self.limit {
                    return Err(Error::ResourceLimit {
                        what: "oracle monomials",
                        needed: format!("more than {}", self.limit),
                        limit: self.limit,
                    });
                }
                out.push(mono.clone());
            }
            return Ok(());
        }
        let mut hi = remaining;
        for s in self.slot_of_var[x].iter().flatten() {
            hi = hi.min(self.budgets[*s]);
        }
        for e in 0..=hi {
            for s in self.slot_of_var[x].iter().flatten() {
                self.budgets[*s] -= e;
            }
            let closed_ok = self.closes[x].iter().all(|&s| self.budgets[s] == 0);
            if closed_ok {
                mono[x] = e;
                self.go(x + 1, remaining - e, mono, out)?;
            }
            for s in self.slot_of_var[x].iter().flatten() {
                self.budgets[*s] += e;
            }
        }
        mono[x] = 0;
        Ok(())
    }
}
