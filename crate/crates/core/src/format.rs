//! The `fencekit/1` JSON file formats.
//!
//! A quiver file lists vertices with their role, dimension and optional
//! composition, arrows by endpoint ids, and the exponents of the
//! linearization:
//!
//! ```json
//! {"format":"fencekit/1",
//!  "vertices":[{"id":"h","role":"head","dim":2,"composition":[1,1]},
//!              {"id":"t1","role":"tail","dim":1}],
//!  "arrows":[{"tail":"t1","head":"h"}],
//!  "linearization":{"r":{"h":[1,0]},"e":{"t1":1}}}
//! ```
//!
//! An exponent is a bare integer or one integer per block; a bare integer is
//! only accepted at a vertex with a trivial composition. Vertices missing
//! from `r`/`e` get zero exponents.
//!
//! A representation file gives a prime and one matrix per arrow, keyed by the
//! arrow's position in the quiver file:
//!
//! ```json
//! {"format":"fencekit/1","p":2,"matrices":{"0":[[1],[0]]}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimensionVector, FenceQuiver, FiniteFieldRep, Linearization, ParabolicData, Role, Vertex};
use crate::young::{Composition, GradedWeight};

/// Value of the top-level `format` field.
pub const FORMAT_TAG: &str = "fencekit/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    format: String,
    vertices: Vec<VertexEntry>,
    arrows: Vec<ArrowEntry>,
    #[serde(default)]
    linearization: Option<LinearizationEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: String,
    role: Role,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    composition: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    tail: String,
    head: String,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct LinearizationEntry {
    #[serde(default)]
    r: BTreeMap<String, Exponents>,
    #[serde(default)]
    e: BTreeMap<String, Exponents>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Exponents {
    Scalar(u64),
    Tuple(Vec<u64>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    format: String,
    p: u32,
    matrices: BTreeMap<String, Vec<Vec<u32>>>,
}

/// Everything a quiver file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub quiver: FenceQuiver,
    pub dims: DimensionVector,
    pub parabolic: ParabolicData,
}

impl QuiverSpec {
    /// The scalar linearization, when every composition is trivial.
    pub fn linearization(&self) -> Option<Linearization> {
        let weights = (0..self.quiver.vertex_count())
            .map(|v| {
                let comp = self.parabolic.composition(v);
                let exps = self.parabolic.exponents(v).exponents();
                match exps {
                    [x] if comp.is_trivial() => Some(*x),
                    [] => Some(0),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Linearization::from_vertex_weights(&self.quiver, weights).ok()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        check_tag(&file.format)?;
        let vertices = file
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                role: v.role,
            })
            .collect();
        let arrows: Vec<(&str, &str)> = file.arrows.iter().map(|a| (a.tail.as_str(), a.head.as_str())).collect();
        let quiver = FenceQuiver::new(vertices, &arrows)?;
        let dims = DimensionVector::new(&quiver, file.vertices.iter().map(|v| v.dim).collect())?;
        let compositions = file
            .vertices
            .iter()
            .map(|v| match &v.composition {
                Some(blocks) => Composition::new(blocks.clone()),
                None => Ok(Composition::trivial(v.dim)),
            })
            .collect::<Result<Vec<_>>>()?;

        let lin = file.linearization.unwrap_or_default();
        for (key, role) in [(&lin.r, Role::Head), (&lin.e, Role::Tail)] {
            for id in key.keys() {
                let v = quiver.index_of(id)?;
                if quiver.role(v) != role {
                    let field = if role == Role::Head { "r" } else { "e" };
                    return Err(Error::Format(format!(
                        "`{id}` is not a {} but appears under `{field}`",
                        if role == Role::Head { "head" } else { "tail" }
                    )));
                }
            }
        }
        let exponents = (0..quiver.vertex_count())
            .map(|v| {
                let comp = &compositions[v];
                let map = match quiver.role(v) {
                    Role::Head => &lin.r,
                    Role::Tail => &lin.e,
                };
                match map.get(quiver.id(v)) {
                    None => Ok(GradedWeight::zero(comp.block_count())),
                    Some(Exponents::Tuple(xs)) => Ok(GradedWeight(xs.clone())),
                    Some(Exponents::Scalar(x)) if comp.block_count() <= 1 => {
                        Ok(GradedWeight(vec![*x; comp.block_count()]))
                    }
                    Some(Exponents::Scalar(_)) => Err(Error::Format(format!(
                        "`{}` has composition {comp}; give one exponent per block",
                        quiver.id(v)
                    ))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let parabolic = ParabolicData::new(&quiver, &dims, compositions, exponents)?;
        Ok(QuiverSpec {
            quiver,
            dims,
            parabolic,
        })
    }

    /// Canonical form: compositions only where nontrivial, scalar exponents
    /// where the composition is trivial.
    pub fn to_json(&self) -> String {
        let q = &self.quiver;
        let vertices = (0..q.vertex_count())
            .map(|v| {
                let comp = self.parabolic.composition(v);
                VertexEntry {
                    id: q.id(v).to_string(),
                    role: q.role(v),
                    dim: self.dims.get(v),
                    composition: (!comp.is_trivial()).then(|| comp.blocks().to_vec()),
                }
            })
            .collect();
        let arrows = q
            .arrows()
            .iter()
            .map(|a| ArrowEntry {
                tail: q.id(a.tail).to_string(),
                head: q.id(a.head).to_string(),
            })
            .collect();
        let mut lin = LinearizationEntry::default();
        for v in 0..q.vertex_count() {
            let comp = self.parabolic.composition(v);
            let exps = self.parabolic.exponents(v).exponents();
            let value = match exps {
                [x] if comp.is_trivial() => Exponents::Scalar(*x),
                _ => Exponents::Tuple(exps.to_vec()),
            };
            let map = match q.role(v) {
                Role::Head => &mut lin.r,
                Role::Tail => &mut lin.e,
            };
            map.insert(q.id(v).to_string(), value);
        }
        let file = QuiverFile {
            format: FORMAT_TAG.into(),
            vertices,
            arrows,
            linearization: Some(lin),
        };
        serde_json::to_string_pretty(&file).expect("quiver file serializes")
    }
}

/// Reads a representation file against a parsed quiver.
pub fn rep_from_json(q: &FenceQuiver, d: &DimensionVector, text: &str) -> Result<FiniteFieldRep> {
    let file: RepFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    check_tag(&file.format)?;
    let mut matrices = vec![None; q.arrows().len()];
    for (key, m) in file.matrices {
        let i: usize = key
            .parse()
            .ok()
            .filter(|&i| i < matrices.len())
            .ok_or_else(|| Error::Format(format!("`{key}` is not an arrow index")))?;
        matrices[i] = Some(m);
    }
    let matrices = matrices
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::Format(format!("no matrix for arrow {i}"))))
        .collect::<Result<Vec<_>>>()?;
    FiniteFieldRep::new(q, d, file.p, matrices)
}

pub fn rep_to_json(rep: &FiniteFieldRep) -> String {
    let file = RepFile {
        format: FORMAT_TAG.into(),
        p: rep.p(),
        matrices: rep
            .matrices()
            .iter()
            .enumerate()
            .map(|(i, m)| (i.to_string(), m.clone()))
            .collect(),
    };
    serde_json::to_string(&file).expect("representation file serializes")
}

fn check_tag(tag: &str) -> Result<()> {
    if tag == FORMAT_TAG {
        Ok(())
    } else {
        Err(Error::Format(format!("unsupported format `{tag}`, expected `{FORMAT_TAG}`")))
    }
}
