//! Graded dimensions of `ℂ[Rep(Q,d)]^{P'_H × P'_T}` and of the section
//! spaces on either side of the quotient correspondence.
//!
//! As a `∏_v GL_{d_v}`-module,
//! `ℂ[Rep(Q,d)] = ⊗_a ⊕_{D(a)} ρ_{d_{h(a)}}^{D(a)*} ⊗ ρ_{d_{t(a)}}^{D(a)}`,
//! with one diagram `D(a)` per arrow. Collecting the factors at each vertex,
//! the component labelled `(F(h), E(t))` has dimension
//!
//! `Σ_D ∏_h [ρ^{F(h)} : ⊗_{a→h} ρ^{D(a)}] · ∏_t [ρ^{E(t)} : ⊗_{t→a} ρ^{D(a)}]`.
//!
//! Arrows are enumerated individually, so tails shared by several heads and
//! parallel arrows need no special treatment. The two routes differ in which
//! side is computed as a branching multiplicity (row bound `n_v`) and which
//! as a tensor multiplicity (row bound `d_v`), and in the order in which the
//! arrow diagrams are enumerated.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lr::{binomial, branch_multiplicity, gl_dim, multi_lr};
use crate::oracle;
use crate::quiver::{check_parabolic_compatibility, DimensionVector, FenceQuiver, ParabolicData, Role};
use crate::young::{block_compatible, diagram_from_exponents, weight_of_diagram, Composition, Partition};
use crate::Limits;

/// One diagram per vertex, in vertex order: `F(h)` on heads, `E(t)` on
/// tails.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentLabel(Vec<Partition>);

impl ComponentLabel {
    pub fn new(diagrams: Vec<Partition>) -> Self {
        ComponentLabel(diagrams)
    }

    pub fn diagrams(&self) -> &[Partition] {
        &self.0
    }

    pub fn get(&self, v: usize) -> &Partition {
        &self.0[v]
    }

    /// Total boxes on the vertices of `role`.
    pub fn box_count(&self, q: &FenceQuiver, role: Role) -> usize {
        q.with_role(role).into_iter().map(|v| self.0[v].size()).sum()
    }

    /// Checks the length and block compatibility at every vertex.
    pub fn validate(&self, q: &FenceQuiver, d: &DimensionVector, comps: &[Composition]) -> Result<()> {
        if self.0.len() != q.vertex_count() || comps.len() != q.vertex_count() {
            return Err(Error::LengthMismatch(format!(
                "{} diagrams and {} compositions for {} vertices",
                self.0.len(),
                comps.len(),
                q.vertex_count()
            )));
        }
        for (v, (f, c)) in self.0.iter().zip(comps).enumerate() {
            if c.total() != d.get(v) {
                return Err(Error::DimensionMismatch(format!(
                    "composition {c} at `{}` does not sum to {}",
                    q.id(v),
                    d.get(v)
                )));
            }
            if !block_compatible(f, c)? {
                return Err(Error::NotBlockCompatible {
                    diagram: f.to_string(),
                    composition: c.to_string(),
                });
            }
        }
        Ok(())
    }

    /// The labels forced by exponents at level `n`: `diagram_from_exponents`
    /// of `n` times each vertex's tuple.
    pub fn forced(q: &FenceQuiver, p: &ParabolicData, n: u64) -> Result<Self> {
        (0..q.vertex_count())
            .map(|v| diagram_from_exponents(&p.exponents(v).scaled(n), p.composition(v)))
            .collect::<Result<Vec<_>>>()
            .map(ComponentLabel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    HeadsFirst,
    TailsFirst,
    Oracle,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::HeadsFirst => "heads-first",
            Route::TailsFirst => "tails-first",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimensionReport {
    pub label: ComponentLabel,
    pub dimension: BigUint,
    pub route: Route,
}

/// Bookkeeping of one run of the arrow-diagram enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Whether the enumeration was started at all.
    pub entered: bool,
    /// Partial tuples visited.
    pub nodes: usize,
}

/// Heads-first master sum for the component of `label`.
pub fn component_dim(
    q: &FenceQuiver,
    d: &DimensionVector,
    comps: &[Composition],
    label: &ComponentLabel,
    limits: &Limits,
) -> Result<BigUint> {
    component_dim_traced(q, d, comps, label, limits).map(|(v, _)| v)
}

/// [`component_dim`] together with enumeration statistics.
pub fn component_dim_traced(
    q: &FenceQuiver,
    d: &DimensionVector,
    comps: &[Composition],
    label: &ComponentLabel,
    limits: &Limits,
) -> Result<(BigUint, EnumerationStats)> {
    label.validate(q, d, comps)?;
    master_sum(q, d, label, Route::HeadsFirst, limits)
}

fn master_sum(
    q: &FenceQuiver,
    d: &DimensionVector,
    label: &ComponentLabel,
    route: Route,
    limits: &Limits,
) -> Result<(BigUint, EnumerationStats)> {
    let mut stats = EnumerationStats::default();
    if label.box_count(q, Role::Head) != label.box_count(q, Role::Tail) {
        return Ok((BigUint::zero(), stats));
    }
    let branching_side = match route {
        Route::HeadsFirst => Role::Head,
        Route::TailsFirst => Role::Tail,
        Route::Oracle => return Err(Error::Precondition("the oracle route has no master sum".into())),
    };
    // arrows grouped by the vertices of the branching side
    let order: Vec<usize> = q
        .with_role(branching_side)
        .into_iter()
        .flat_map(|v| q.arrows_at(v))
        .collect();
    let mut closes_at: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for v in 0..q.vertex_count() {
        let last = q
            .arrows_at(v)
            .into_iter()
            .map(|a| order.iter().position(|&x| x == a).expect("every arrow is ordered"))
            .max()
            .expect("no isolated vertices");
        closes_at[last].push(v);
    }
    let candidates: Vec<Vec<Partition>> = order
        .iter()
        .map(|&a| {
            let arrow = q.arrows()[a];
            let (f, e) = (label.get(arrow.head), label.get(arrow.tail));
            let max_len = d.get(arrow.head).min(d.get(arrow.tail));
            let max_size = f.size().min(e.size());
            Partition::all_up_to(max_size, max_len)
                .into_iter()
                .filter(|x| f.contains(x) && e.contains(x))
                .collect()
        })
        .collect();
    let remaining: Vec<usize> = label.diagrams().iter().map(Partition::size).collect();
    stats.entered = true;
    let mut walk = Walk {
        q,
        d,
        label,
        branching_side,
        order: &order,
        closes_at: &closes_at,
        candidates: &candidates,
        chosen: vec![Partition::empty(); q.arrows().len()],
        remaining,
        stats: &mut stats,
        limit: limits.diagram_tuples,
    };
    let total = walk.go(0, BigUint::one())?;
    Ok((total, stats))
}

struct Walk<'a> {
    q: &'a FenceQuiver,
    d: &'a DimensionVector,
    label: &'a ComponentLabel,
    branching_side: Role,
    order: &'a [usize],
    closes_at: &'a [Vec<usize>],
    candidates: &'a [Vec<Partition>],
    chosen: Vec<Partition>,
    remaining: Vec<usize>,
    stats: &'a mut EnumerationStats,
    limit: usize,
}

impl Walk<'_> {
    fn go(&mut self, pos: usize, acc: BigUint) -> Result<BigUint> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.limit {
            return Err(Error::ResourceLimit {
                what: "arrow diagram tuples",
                needed: format!("more than {}", self.limit),
                limit: self.limit,
            });
        }
        if pos == self.order.len() {
            return Ok(acc);
        }
        let a = self.order[pos];
        let arrow = self.q.arrows()[a];
        let mut total = BigUint::zero();
        for i in 0..self.candidates[pos].len() {
            let x = &self.candidates[pos][i];
            let s = x.size();
            if s > self.remaining[arrow.head] || s > self.remaining[arrow.tail] {
                continue;
            }
            self.remaining[arrow.head] -= s;
            self.remaining[arrow.tail] -= s;
            self.chosen[a] = x.clone();
            let mut weight = acc.clone();
            for &v in &self.closes_at[pos] {
                if self.remaining[v] != 0 {
                    weight = BigUint::zero();
                    break;
                }
                weight *= self.factor(v);
                if weight.is_zero() {
                    break;
                }
            }
            if !weight.is_zero() {
                total += self.go(pos + 1, weight)?;
            }
            self.remaining[arrow.head] += s;
            self.remaining[arrow.tail] += s;
        }
        Ok(total)
    }

    /// Multiplicity of the label at `v` in the tensor product of its arrow
    /// diagrams: a branching multiplicity on the branching side, a `GL_{d_v}`
    /// tensor multiplicity on the other.
    fn factor(&self, v: usize) -> BigUint {
        let arrows = self.q.arrows_at(v);
        let ds: Vec<Partition> = arrows.iter().map(|&a| self.chosen[a].clone()).collect();
        let label = self.label.get(v);
        if self.q.role(v) == self.branching_side {
            let arms: Vec<usize> = arrows.iter().map(|&a| self.d.get(self.q.other_end(a, v))).collect();
            branch_multiplicity(label, &arms, &ds).expect("arms match diagrams")
        } else {
            multi_lr(label, &ds, self.d.get(v))
        }
    }
}

fn section_dim(
    q: &FenceQuiver,
    d: &DimensionVector,
    p: &ParabolicData,
    n: u64,
    route: Route,
    limits: &Limits,
) -> Result<BigUint> {
    if !check_parabolic_compatibility(q, p)? {
        return Err(Error::Incompatible(format!(
            "head boxes {} differ from tail boxes {}",
            p.box_count(q, Role::Head)?,
            p.box_count(q, Role::Tail)?
        )));
    }
    let label = ComponentLabel::forced(q, p, n)?;
    label.validate(q, d, p.compositions())?;
    master_sum(q, d, &label, route, limits).map(|(v, _)| v)
}

/// Dimension of the level-`n` section space, computed heads-first.
pub fn section_dim_heads(
    q: &FenceQuiver,
    d: &DimensionVector,
    p: &ParabolicData,
    n: u64,
    limits: &Limits,
) -> Result<BigUint> {
    section_dim(q, d, p, n, Route::HeadsFirst, limits)
}

/// Dimension of the level-`n` section space, computed tails-first.
pub fn section_dim_tails(
    q: &FenceQuiver,
    d: &DimensionVector,
    p: &ParabolicData,
    n: u64,
    limits: &Limits,
) -> Result<BigUint> {
    section_dim(q, d, p, n, Route::TailsFirst, limits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyReport {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

/// `Σ_{|F| = degree} dim ρ_n^F · dim ρ_k^F = C(nk + degree − 1, degree)`.
pub fn cauchy_check(n: usize, k: usize, degree: usize) -> CauchyReport {
    let lhs: BigUint = Partition::all_of_size(degree, n.min(k))
        .iter()
        .map(|f| gl_dim(f, n) * gl_dim(f, k))
        .sum();
    let rhs = if n * k == 0 {
        BigUint::from(u8::from(degree == 0))
    } else {
        binomial((n * k + degree - 1) as u64, degree as u64)
    };
    let holds = lhs == rhs;
    CauchyReport { lhs, rhs, holds }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub equal: bool,
}

/// The `(μ_F, μ_F)` component of `ℂ[Mat_{n,m}]^{P'_n × P'_m}` computed
/// directly and through `(ℂ[GL_m]^{1×P'_m} ⊗ ℂ[Mat_{n,m}]^{P'_n×1})^{GL_m}`.
///
/// Directly the component is one-dimensional exactly when `F` is
/// block-compatible with both compositions. On the other side `ℂ[GL_m]`
/// contributes `ρ_m^{λ*} ⊗ (ρ_m^λ)^{P'_m}` for each `λ`, the matrix space
/// contributes `(ρ_n^{F*})^{P'_n} ⊗ ρ_m^F`, and the `GL_m`-invariants pair
/// `λ` with `F`.
pub fn transfer_check(
    n: usize,
    m: usize,
    comp_n: &Composition,
    comp_m: &Composition,
    f: &Partition,
) -> Result<TransferReport> {
    if comp_n.total() != n || comp_m.total() != m {
        return Err(Error::DimensionMismatch(format!(
            "compositions {comp_n} and {comp_m} do not sum to {n} and {m}"
        )));
    }
    if f.length() > n.min(m) {
        return Err(Error::TooManyRows {
            diagram: f.to_string(),
            length: f.length(),
            bound: n.min(m),
        });
    }
    let indicator = |b: bool| if b { BigUint::one() } else { BigUint::zero() };
    let lhs = indicator(block_compatible(f, comp_n)? && block_compatible(f, comp_m)?);

    let head_line = indicator(block_compatible(f, comp_n)?);
    let target_weight = if block_compatible(f, comp_m)? {
        Some(weight_of_diagram(f, comp_m)?)
    } else {
        None
    };
    let mut rhs = BigUint::zero();
    for lambda in Partition::all_of_size(f.size(), m) {
        if !block_compatible(&lambda, comp_m)? {
            continue;
        }
        if Some(weight_of_diagram(&lambda, comp_m)?) != target_weight {
            continue;
        }
        // GL_m-invariants of ρ^{λ*} ⊗ ρ^F
        let pairing = multi_lr(&lambda, std::slice::from_ref(f), m);
        rhs += pairing * &head_line;
    }
    let equal = lhs == rhs;
    Ok(TransferReport { lhs, rhs, equal })
}

/// One level of the correspondence table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmRow {
    pub level: u64,
    pub label: ComponentLabel,
    pub reports: Vec<GradedDimensionReport>,
}

impl GmRow {
    pub fn dimension(&self, route: Route) -> Option<&BigUint> {
        self.reports.iter().find(|r| r.route == route).map(|r| &r.dimension)
    }

    /// Whether every computed route gave the same number.
    pub fn agree(&self) -> bool {
        self.reports.windows(2).all(|w| w[0].dimension == w[1].dimension)
    }
}

/// Section dimensions for levels `0..=n_max` along both routes, and along the
/// invariant oracle when `with_oracle` is set and the oracle stays within its
/// limits.
pub fn gm_table(
    q: &FenceQuiver,
    d: &DimensionVector,
    p: &ParabolicData,
    n_max: u64,
    with_oracle: bool,
    limits: &Limits,
) -> Result<Vec<GmRow>> {
    if !check_parabolic_compatibility(q, p)? {
        return Err(Error::Incompatible(format!(
            "head boxes {} differ from tail boxes {}",
            p.box_count(q, Role::Head)?,
            p.box_count(q, Role::Tail)?
        )));
    }
    let mut rows = Vec::new();
    for level in 0..=n_max {
        let label = ComponentLabel::forced(q, p, level)?;
        let mut reports = Vec::new();
        for route in [Route::HeadsFirst, Route::TailsFirst] {
            reports.push(GradedDimensionReport {
                label: label.clone(),
                dimension: section_dim(q, d, p, level, route, limits)?,
                route,
            });
        }
        if with_oracle {
            let degree = label.box_count(q, Role::Head);
            match oracle::component_dim(q, d, p.compositions(), &label, degree, limits) {
                Ok(dimension) => reports.push(GradedDimensionReport {
                    label: label.clone(),
                    dimension,
                    route: Route::Oracle,
                }),
                Err(e) if e.is_resource_limit() => {}
                Err(e) => return Err(e),
            }
        }
        rows.push(GmRow { level, label, reports });
    }
    Ok(rows)
}

/// Every label of total degree `degree` whose diagrams are block-compatible
/// and fit their vertices, in lexicographic order.
pub fn labels_of_degree(q: &FenceQuiver, d: &DimensionVector, comps: &[Composition], degree: usize) -> Vec<ComponentLabel> {
    let per_vertex: BTreeMap<usize, Vec<Partition>> = (0..q.vertex_count())
        .map(|v| {
            let opts = (0..=degree)
                .flat_map(|s| Partition::all_of_size(s, d.get(v)))
                .filter(|f| block_compatible(f, &comps[v]).unwrap_or(false))
                .collect();
            (v, opts)
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(
        v: usize,
        q: &FenceQuiver,
        per_vertex: &BTreeMap<usize, Vec<Partition>>,
        degree: usize,
        current: &mut Vec<Partition>,
        out: &mut Vec<ComponentLabel>,
    ) {
        if v == q.vertex_count() {
            let label = ComponentLabel(current.clone());
            if label.box_count(q, Role::Head) == degree && label.box_count(q, Role::Tail) == degree {
                out.push(label);
            }
            return;
        }
        for f in &per_vertex[&v] {
            current.push(f.clone());
            go(v + 1, q, per_vertex, degree, current, out);
            current.pop();
        }
    }
    go(0, q, &per_vertex, degree, &mut current, &mut out);
    out
}
