//! Vertex cones of weight polytopes, their singularities, and divisor labels
//! of polygon-space facets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    lattice_index, primitive_direction, sublattice_index, LatticeVector, Rational, Vector,
};
use crate::polytope::fingerprint::canonical_incidence;
use crate::polytope::{affine_hull_chart, faces, neighbors, HPolytope, Halfspace};
use crate::weights::SideData;

/// Cone spanned by primitive integer rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub rays: Vec<LatticeVector>,
}

impl Cone {
    pub fn is_simplicial(&self, dim: usize) -> bool {
        self.rays.len() == dim
            && (dim == 0 || lattice_index(&self.rays).is_ok())
    }
}

/// Cone at one vertex, spanned by the edge directions leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCone {
    pub vertex: Vector,
    pub cone: Cone,
    /// Indices into [`Fan::facets`] of the facets through the vertex.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub ambient_dim: usize,
    pub facets: Vec<Halfspace>,
    /// One cone per vertex, in lexicographic vertex order.
    pub cones: Vec<VertexCone>,
}

/// Vertex cones of a bounded full-dimensional polytope.
pub fn normal_fan(p: &HPolytope) -> Result<Fan> {
    let f = faces(p)?;
    if f.vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if f.dim != p.ambient_dim() as i64 {
        return Err(Error::NotFullDimensional);
    }
    let cones = (0..f.vertices.len())
        .map(|vi| {
            let v = &f.vertices[vi];
            let mut rays: Vec<LatticeVector> = neighbors(&f, vi)
                .into_iter()
                .map(|w| {
                    let diff: Vector = f.vertices[w].iter().zip(v).map(|(a, b)| a - b).collect();
                    primitive_direction(&diff).expect("distinct vertices")
                })
                .collect();
            rays.sort();
            VertexCone {
                vertex: v.clone(),
                cone: Cone { rays },
                facets: f.vertex_facets(vi),
            }
        })
        .collect();
    Ok(Fan {
        ambient_dim: p.ambient_dim(),
        facets: f.facets,
        cones,
    })
}

/// Vertex cones of a lower-dimensional polytope, measured in the lattice of
/// its affine hull; vertices are reported in ambient coordinates.
pub fn hull_fan(p: &HPolytope) -> Result<Fan> {
    let chart = affine_hull_chart(p)?.ok_or(Error::EmptyPolytope)?;
    let mut fan = normal_fan(&chart.restricted)?;
    for c in &mut fan.cones {
        c.vertex = chart.to_ambient(&c.vertex);
    }
    Ok(fan)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeStatus {
    Smooth,
    CyclicQuotient(BigInt),
    NonSimplicial,
}

impl ConeStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ConeStatus::Smooth => "smooth",
            ConeStatus::CyclicQuotient(_) => "cyclic",
            ConeStatus::NonSimplicial => "nonsimplicial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSingularity {
    pub vertex: Vector,
    pub rays: Vec<LatticeVector>,
    pub status: ConeStatus,
    pub index: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub entries: Vec<VertexSingularity>,
}

impl SingularityReport {
    pub fn singular(&self) -> impl Iterator<Item = &VertexSingularity> {
        self.entries.iter().filter(|e| e.status != ConeStatus::Smooth)
    }

    pub fn is_smooth(&self) -> bool {
        self.singular().next().is_none()
    }

    /// Sorted list of cone indices.
    pub fn index_profile(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self.entries.iter().map(|e| e.index.clone()).collect();
        v.sort();
        v
    }
}

/// Simplicial cones are smooth at index 1 and cyclic quotients otherwise;
/// other cones report the index of the lattice their rays span.
pub fn singularity_report(fan: &Fan) -> SingularityReport {
    let dim = fan.ambient_dim;
    let entries = fan
        .cones
        .iter()
        .map(|c| {
            let (status, index) = if c.cone.is_simplicial(dim) {
                let index = if dim == 0 {
                    BigInt::one()
                } else {
                    lattice_index(&c.cone.rays).expect("simplicial")
                };
                if index.is_one() {
                    (ConeStatus::Smooth, index)
                } else {
                    (ConeStatus::CyclicQuotient(index.clone()), index)
                }
            } else {
                (ConeStatus::NonSimplicial, sublattice_index(&c.cone.rays, dim))
            };
            VertexSingularity {
                vertex: c.vertex.clone(),
                rays: c.cone.rays.clone(),
                status,
                index,
            }
        })
        .collect();
    SingularityReport { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorKind {
    N1,
    N2,
    N3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorTag {
    pub index: usize,
    pub kind: DivisorKind,
}

impl fmt::Display for DivisorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetLabel {
    pub facet: Halfspace,
    pub tags: Vec<DivisorTag>,
}

/// The hyperplanes `c·x = d` of the polygon divisor table, in diagonal
/// coordinates `x_i = d_{i+2}`.
pub fn divisor_table(s: &SideData) -> Result<Vec<(DivisorTag, Halfspace)>> {
    if s.m() != 1 {
        return Err(Error::InvalidSideData("polygon spaces need m = 1".into()));
    }
    let n = s.n();
    if n < 4 {
        return Err(Error::TooFewSides);
    }
    let dim = n - 3;
    let r = |i: usize| s.r()[i - 1].clone();
    let e = |terms: &[(usize, i64)]| {
        let mut v = vec![Rational::zero(); dim];
        for &(i, c) in terms {
            v[i - 1] += Rational::from_integer(c.into());
        }
        v
    };
    let tag = |kind, index| DivisorTag { kind, index };
    use DivisorKind::*;
    let mut out = vec![
        (tag(N1, 2), Halfspace::new(e(&[(1, 1)]), r(1) + r(2))),
        (tag(N2, 2), Halfspace::new(e(&[(1, 1)]), r(2) - r(1))),
        (tag(N3, 2), Halfspace::new(e(&[(1, 1)]), r(1) - r(2))),
    ];
    for i in 3..=n - 2 {
        out.push((tag(N1, i), Halfspace::new(e(&[(i - 1, 1), (i - 2, -1)]), r(i))));
        out.push((tag(N2, i), Halfspace::new(e(&[(i - 1, 1), (i - 2, 1)]), r(i))));
        out.push((tag(N3, i), Halfspace::new(e(&[(i - 2, 1), (i - 1, -1)]), r(i))));
    }
    out.push((tag(N1, n - 1), Halfspace::new(e(&[(dim, 1)]), r(n) - r(n - 1))));
    out.push((tag(N2, n - 1), Halfspace::new(e(&[(dim, 1)]), r(n - 1) - r(n))));
    out.push((tag(N3, n - 1), Halfspace::new(e(&[(dim, 1)]), r(n - 1) + r(n))));
    Ok(out)
}

/// Tags every inequality of `p` with the divisor hyperplanes it lies on.
pub fn facet_labels(s: &SideData, p: &HPolytope) -> Result<Vec<FacetLabel>> {
    let table = divisor_table(s)?;
    if p.ambient_dim() != s.n() - 3 {
        return Err(Error::DimensionMismatch {
            expected: s.n() - 3,
            found: p.ambient_dim(),
        });
    }
    let keyed: Vec<(DivisorTag, Halfspace)> = table
        .into_iter()
        .map(|(t, h)| (t, h.normalized_equality()))
        .collect();
    p.inequalities()
        .iter()
        .map(|h| {
            let key = h.normalized_equality();
            let mut tags: Vec<DivisorTag> = keyed
                .iter()
                .filter(|(_, k)| *k == key)
                .map(|(t, _)| *t)
                .collect();
            if tags.is_empty() {
                return Err(Error::UnclassifiedFacet(h.to_string()));
            }
            tags.sort();
            Ok(FacetLabel {
                facet: h.clone(),
                tags,
            })
        })
        .collect()
}

/// Comparator for fans up to lattice isomorphism. Equal fingerprints are
/// necessary for isomorphic toric varieties but not sufficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FanFingerprint {
    pub dim: usize,
    /// Sorted `(ray count, index)` per cone.
    pub cones: Vec<(usize, String)>,
    /// Canonical facet-by-cone incidence, cones grouped by type.
    pub incidence: Vec<String>,
}

pub fn fan_fingerprint(fan: &Fan) -> FanFingerprint {
    let report = singularity_report(fan);
    let kinds: Vec<(usize, String)> = fan
        .cones
        .iter()
        .zip(&report.entries)
        .map(|(c, e)| (c.cone.rays.len(), e.index.to_string()))
        .collect();
    let mut sorted = kinds.clone();
    sorted.sort();
    let mut classes = sorted.clone();
    classes.dedup();
    let colors: Vec<usize> = kinds
        .iter()
        .map(|k| classes.binary_search(k).expect("present"))
        .collect();
    let incidence: Vec<Vec<usize>> = (0..fan.facets.len())
        .map(|f| {
            (0..fan.cones.len())
                .filter(|&c| fan.cones[c].facets.contains(&f))
                .collect()
        })
        .collect();
    FanFingerprint {
        dim: fan.ambient_dim,
        cones: sorted,
        incidence: canonical_incidence(&colors, &incidence),
    }
}
