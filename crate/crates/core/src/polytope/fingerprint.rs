//! Canonical form of the vertex-facet incidence structure.
//!
//! The incidence is treated as a bipartite graph (vertices on one side,
//! facets on the other) and canonically relabelled by colour refinement
//! with individualization, keeping the lexicographically least incidence
//! matrix over the whole search tree. Two bounded polytopes get equal
//! fingerprints exactly when their face lattices are isomorphic.

use serde::Serialize;

use super::{faces, HPolytope};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CombinatorialFingerprint {
    pub dim: i64,
    pub vertices: usize,
    pub facets: usize,
    /// Rows of the relabelled facet-by-vertex incidence matrix.
    pub incidence: Vec<String>,
}

pub fn combinatorial_fingerprint(p: &HPolytope) -> Result<CombinatorialFingerprint> {
    let f = faces(p)?;
    if f.vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let incidence = canonical_incidence(&vec![0; f.vertices.len()], &f.incidence);
    Ok(CombinatorialFingerprint {
        dim: f.dim,
        vertices: f.vertices.len(),
        facets: f.facets.len(),
        incidence,
    })
}

/// Lexicographically least facet-by-vertex incidence matrix over all
/// relabellings that preserve the given vertex colours.
pub(crate) fn canonical_incidence(vertex_colors: &[usize], incidence: &[Vec<usize>]) -> Vec<String> {
    let graph = Bipartite::new(vertex_colors.len(), incidence);
    let facet_color = vertex_colors.iter().max().map_or(0, |c| c + 1);
    let mut colors = vertex_colors.to_vec();
    colors.resize(graph.len(), facet_color);
    graph.search(colors)
}

struct Bipartite {
    nv: usize,
    adj: Vec<Vec<usize>>,
}

impl Bipartite {
    fn new(nv: usize, incidence: &[Vec<usize>]) -> Self {
        let mut adj = vec![Vec::new(); nv + incidence.len()];
        for (f, verts) in incidence.iter().enumerate() {
            for &v in verts {
                adj[nv + f].push(v);
                adj[v].push(nv + f);
            }
        }
        Bipartite { nv, adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_distinct(&colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..self.len())
                .map(|i| {
                    let mut around: Vec<usize> = self.adj[i].iter().map(|&j| colors[j]).collect();
                    around.sort_unstable();
                    (colors[i], around)
                })
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            colors = sigs
                .iter()
                .map(|s| uniq.binary_search(s).expect("present"))
                .collect();
            if uniq.len() == classes {
                return colors;
            }
            classes = uniq.len();
        }
    }

    fn encode(&self, colors: &[usize]) -> Vec<String> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| colors[i]);
        let verts: Vec<usize> = order.iter().copied().filter(|&i| i < self.nv).collect();
        order
            .iter()
            .filter(|&&i| i >= self.nv)
            .map(|&f| {
                verts
                    .iter()
                    .map(|v| if self.adj[f].contains(v) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    fn search(&self, colors: Vec<usize>) -> Vec<String> {
        let colors = self.refine(colors);
        let mut sizes = vec![0usize; self.len()];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(cell) = (0..self.len()).find(|&c| sizes[c] > 1) else {
            return self.encode(&colors);
        };
        let members: Vec<usize> = (0..self.len()).filter(|&i| colors[i] == cell).collect();
        members
            .iter()
            .map(|&chosen| {
                let split: Vec<usize> = colors
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| 2 * c + usize::from(c == cell && i != chosen))
                    .collect();
                self.search(split)
            })
            .min()
            .expect("cell is nonempty")
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{v_to_h, VPolytope};

    fn fp(points: &[&[i64]]) -> CombinatorialFingerprint {
        combinatorial_fingerprint(&v_to_h(&VPolytope::from_i64(points).unwrap())).unwrap()
    }

    #[test]
    fn square_vs_rectangle() {
        let a = fp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let b = fp(&[&[0, 0], &[5, 0], &[0, 2], &[5, 2]]);
        assert_eq!(a, b);
        let tri = fp(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_ne!(a, tri);
    }

    #[test]
    fn relabelling_invariance() {
        // a triangular prism and a square pyramid both have 5 facets
        let prism = fp(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]);
        let prism2 = fp(&[&[1, 1, 1], &[1, 2, 1], &[2, 1, 1], &[0, 0, 0], &[0, 1, 0], &[1, 0, 0]]);
        let pyramid = fp(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]);
        assert_eq!(prism, prism2);
        assert_ne!(prism, pyramid);
        assert_eq!(prism.facets, pyramid.facets);
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(
            combinatorial_fingerprint(&HPolytope::empty(2)),
            Err(Error::EmptyPolytope)
        );
    }
}
