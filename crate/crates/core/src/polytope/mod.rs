//! Bounded rational polytopes in inequality (H) and vertex (V) form.

pub(crate) mod dd;
pub(crate) mod fingerprint;
mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    dot, lcm_of_denominators, nullspace, primitive_direction, rank, rref, solve_linear,
    LatticeVector, LinearSolution, Matrix, Rational, Vector,
};
use crate::error::{Error, Result};

pub use fingerprint::{combinatorial_fingerprint, CombinatorialFingerprint};
pub use lattice::{affine_hull_chart, count_lattice_points, lattice_points, AffineHullChart};

/// `normal · x <= rhs` (or `=` when stored as an equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vector,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: Vector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }

    pub fn from_i64(normal: &[i64], rhs: i64) -> Self {
        Halfspace::new(crate::exact::vector(normal), crate::exact::int(rhs))
    }

    pub fn is_zero_normal(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    /// Positive rescaling to a primitive integer normal.
    pub fn normalized(&self) -> Self {
        if self.is_zero_normal() {
            return self.clone();
        }
        let l = Rational::from_integer(lcm_of_denominators(&self.normal));
        let g = self
            .normal
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(&(x * &l).to_integer()));
        let factor = l / Rational::from_integer(g);
        Halfspace {
            normal: self.normal.iter().map(|x| x * &factor).collect(),
            rhs: &self.rhs * &factor,
        }
    }

    /// Integer normal with first nonzero entry positive (hyperplane form).
    pub fn normalized_equality(&self) -> Self {
        let h = self.normalized();
        if h.is_zero_normal() {
            return h;
        }
        if h.normal[h.first_nonzero()].is_negative() {
            Halfspace {
                normal: h.normal.iter().map(|x| -x).collect(),
                rhs: -h.rhs,
            }
        } else {
            h
        }
    }

    fn first_nonzero(&self) -> usize {
        self.normal.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x)
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.rhs - self.value(x)
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    /// Homogenized row `(rhs, -normal)` scaled to coprime integers.
    fn homogenized(&self) -> LatticeVector {
        let mut row = Vec::with_capacity(self.normal.len() + 1);
        row.push(self.rhs.clone());
        row.extend(self.normal.iter().map(|x| -x));
        primitive_direction(&row).unwrap_or_else(|_| vec![BigInt::zero(); row.len()])
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_linear_form(&self.normal))?;
        write!(f, " <= {}", self.rhs)
    }
}

pub fn format_linear_form(normal: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in normal.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = format!("x{}", i + 1);
        let mag = c.abs();
        let term = if mag.is_one() {
            var
        } else {
            format!("{mag}*{var}")
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Intersection of finitely many half-spaces and hyperplanes.
///
/// Rows are normalized on construction to primitive integer normals;
/// duplicate inequalities collapse and, among equal normals, the tighter
/// right-hand side is kept. An equality `0 = 1` is the canonical
/// infeasibility certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolytope {
    dim: usize,
    inequalities: Vec<Halfspace>,
    equalities: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize, inequalities: Vec<Halfspace>, equalities: Vec<Halfspace>) -> Result<Self> {
        for h in inequalities.iter().chain(&equalities) {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal.len(),
                });
            }
        }
        let mut ineqs: Vec<Halfspace> = Vec::with_capacity(inequalities.len());
        for h in &inequalities {
            if h.is_zero_normal() {
                return Err(Error::ZeroNormal);
            }
            let h = h.normalized();
            match ineqs.iter_mut().find(|g| g.normal == h.normal) {
                Some(g) => {
                    if h.rhs < g.rhs {
                        g.rhs = h.rhs;
                    }
                }
                None => ineqs.push(h),
            }
        }
        let mut eqs: Vec<Halfspace> = Vec::with_capacity(equalities.len());
        for h in &equalities {
            if h.is_zero_normal() {
                if h.rhs.is_zero() {
                    continue;
                }
                return Ok(HPolytope::empty(dim));
            }
            let h = h.normalized_equality();
            match eqs.iter().find(|g| g.normal == h.normal) {
                Some(g) if g.rhs != h.rhs => return Ok(HPolytope::empty(dim)),
                Some(_) => {}
                None => eqs.push(h),
            }
        }
        Ok(HPolytope {
            dim,
            inequalities: ineqs,
            equalities: eqs,
        })
    }

    /// Canonical infeasible system `0 = 1`.
    pub fn empty(dim: usize) -> Self {
        HPolytope {
            dim,
            inequalities: Vec::new(),
            equalities: vec![Halfspace::new(vec![Rational::zero(); dim], Rational::one())],
        }
    }

    /// Convenience constructor from integer rows `(normal, rhs)`.
    pub fn from_i64(dim: usize, ineqs: &[(&[i64], i64)], eqs: &[(&[i64], i64)]) -> Result<Self> {
        let conv = |rows: &[(&[i64], i64)]| {
            rows.iter()
                .map(|(a, b)| Halfspace::from_i64(a, *b))
                .collect::<Vec<_>>()
        };
        HPolytope::new(dim, conv(ineqs), conv(eqs))
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Halfspace] {
        &self.equalities
    }

    pub fn is_trivially_infeasible(&self) -> bool {
        self.equalities.iter().any(|h| h.is_zero_normal())
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.inequalities.iter().all(|h| h.value(x) <= h.rhs)
            && self.equalities.iter().all(|h| h.value(x) == h.rhs))
    }

    /// The dilate `t · P`.
    pub fn dilate(&self, t: &Rational) -> HPolytope {
        let scale = |hs: &[Halfspace]| {
            hs.iter()
                .map(|h| Halfspace::new(h.normal.clone(), &h.rhs * t))
                .collect::<Vec<_>>()
        };
        if self.is_trivially_infeasible() {
            return self.clone();
        }
        HPolytope {
            dim: self.dim,
            inequalities: scale(&self.inequalities),
            equalities: scale(&self.equalities),
        }
    }

    pub fn with_constraints(&self, ineqs: Vec<Halfspace>, eqs: Vec<Halfspace>) -> Result<HPolytope> {
        let mut all_ineqs = self.inequalities.clone();
        all_ineqs.extend(ineqs);
        let mut all_eqs = self.equalities.clone();
        all_eqs.extend(eqs);
        HPolytope::new(self.dim, all_ineqs, all_eqs)
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(h_to_v(self), Err(Error::Unbounded))
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(h_to_v(self)?.is_empty())
    }
}

/// Vertex list of a bounded polytope; vertices are extreme, distinct and
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vector>,
}

impl VPolytope {
    /// Convex hull of `points`; non-extreme points are dropped.
    pub fn new(dim: usize, points: Vec<Vector>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let mut points = points;
        points.sort();
        points.dedup();
        if points.len() <= 1 {
            return Ok(VPolytope {
                dim,
                vertices: points,
            });
        }
        let hull = hull_of_points(dim, &points);
        let eq_normals: Vec<Vector> = hull.equalities.iter().map(|h| h.normal.clone()).collect();
        let vertices = points
            .into_iter()
            .filter(|p| {
                let mut rows = eq_normals.clone();
                rows.extend(
                    hull.inequalities
                        .iter()
                        .filter(|h| h.is_tight(p))
                        .map(|h| h.normal.clone()),
                );
                rank(&rows) == dim
            })
            .collect();
        Ok(VPolytope { dim, vertices })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        VPolytope::new(dim, points.iter().map(|p| crate::exact::vector(p)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Vertex enumeration by double description on the homogenized cone.
pub fn h_to_v(p: &HPolytope) -> Result<VPolytope> {
    let d = p.ambient_dim();
    if p.is_trivially_infeasible() {
        return Ok(VPolytope {
            dim: d,
            vertices: Vec::new(),
        });
    }
    let mut rows: Vec<LatticeVector> = Vec::new();
    for h in p.inequalities() {
        rows.push(h.homogenized());
    }
    for h in p.equalities() {
        let r = h.homogenized();
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    rows.sort();
    rows.dedup();
    let mut positivity = vec![BigInt::zero(); d + 1];
    positivity[0] = BigInt::one();
    rows.insert(0, positivity);

    let cone = dd::generators(d + 1, &rows);
    if !cone.lineality.is_empty() || cone.rays.iter().any(|r| r[0].is_zero()) {
        return Err(Error::Unbounded);
    }
    let mut vertices: Vec<Vector> = cone
        .rays
        .iter()
        .map(|r| {
            let w = Rational::from_integer(r[0].clone());
            r[1..]
                .iter()
                .map(|x| Rational::from_integer(x.clone()) / &w)
                .collect()
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(VPolytope { dim: d, vertices })
}

/// Irredundant facets plus equalities spanning the affine hull.
pub fn v_to_h(v: &VPolytope) -> HPolytope {
    if v.is_empty() {
        return HPolytope::empty(v.ambient_dim());
    }
    hull_of_points(v.ambient_dim(), v.vertices())
}

fn hull_of_points(dim: usize, points: &[Vector]) -> HPolytope {
    let rows: Vec<LatticeVector> = points
        .iter()
        .map(|p| {
            let mut row = vec![Rational::one()];
            row.extend(p.iter().cloned());
            primitive_direction(&row).expect("leading 1 is nonzero")
        })
        .collect();
    let cone = dd::generators(dim + 1, &rows);

    // Lineality (c0, c) gives c·x = -c0 on every point.
    let mut eq_rows: Vec<Vector> = cone
        .lineality
        .iter()
        .map(|l| {
            let mut row: Vector = l[1..].iter().cloned().map(Rational::from_integer).collect();
            row.push(-Rational::from_integer(l[0].clone()));
            row
        })
        .collect();
    rref(&mut eq_rows);
    eq_rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let equalities: Vec<Halfspace> = eq_rows
        .iter()
        .map(|r| Halfspace::new(r[..dim].to_vec(), r[dim].clone()).normalized_equality())
        .collect();

    let normals: Vec<Vector> = equalities.iter().map(|h| h.normal.clone()).collect();
    let mut facets: Vec<Halfspace> = Vec::new();
    for ray in &cone.rays {
        let c0 = Rational::from_integer(ray[0].clone());
        let c: Vector = ray[1..].iter().cloned().map(Rational::from_integer).collect();
        let (c_proj, shift) = project_off(&c, &normals, &equalities);
        if c_proj.iter().all(Zero::is_zero) {
            continue;
        }
        // c·x >= -c0  <=>  -c_proj·x <= c0 + shift
        let h = Halfspace::new(c_proj.iter().map(|x| -x).collect(), c0 + shift).normalized();
        facets.push(h);
    }
    facets.sort();
    facets.dedup();
    HPolytope {
        dim,
        inequalities: facets,
        equalities,
    }
}

/// Orthogonal projection of `c` off the span of `normals`; returns the
/// projected vector and `lambda · rhs` so that `c·x = c_proj·x + shift` on
/// the hyperplanes.
fn project_off(c: &[Rational], normals: &[Vector], eqs: &[Halfspace]) -> (Vector, Rational) {
    if normals.is_empty() {
        return (c.to_vec(), Rational::zero());
    }
    let k = normals.len();
    let gram = Matrix::from_rows(
        k,
        normals
            .iter()
            .map(|a| normals.iter().map(|b| dot(a, b)).collect())
            .collect(),
    )
    .expect("square gram matrix");
    let rhs: Vector = normals.iter().map(|a| dot(a, c)).collect();
    let lambda = match solve_linear(&gram, &rhs).expect("dimensions agree") {
        LinearSolution::Unique(l) => l,
        _ => unreachable!("equality normals are independent"),
    };
    let mut out = c.to_vec();
    for (l, a) in lambda.iter().zip(normals) {
        for (o, x) in out.iter_mut().zip(a) {
            *o -= l * x;
        }
    }
    let shift = lambda.iter().zip(eqs).map(|(l, h)| l * &h.rhs).sum();
    (out, shift)
}

/// Affine dimension of a point set; `-1` for the empty set.
pub fn affine_dimension(points: &[Vector]) -> i64 {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as i64
}

/// Vertices, irredundant facets, affine-hull equalities and the
/// facet-vertex incidence of a bounded polytope.
#[derive(Clone, Debug)]
pub struct Faces {
    pub dim: i64,
    pub vertices: Vec<Vector>,
    pub facets: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
    /// For each facet, the indices of the vertices lying on it.
    pub incidence: Vec<Vec<usize>>,
}

impl Faces {
    pub fn vertex_facets(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.incidence[f].contains(&v))
            .collect()
    }
}

pub fn faces(p: &HPolytope) -> Result<Faces> {
    let vertices = h_to_v(p)?.vertices;
    let dim = affine_dimension(&vertices);
    let all: Vec<usize> = (0..vertices.len()).collect();

    let mut eq_candidates: Vec<Halfspace> = p.equalities().to_vec();
    let mut facets: Vec<Halfspace> = Vec::new();
    let mut incidence: Vec<Vec<usize>> = Vec::new();
    if !vertices.is_empty() {
        for h in p.inequalities() {
            let tight: Vec<usize> = all.iter().copied().filter(|&i| h.is_tight(&vertices[i])).collect();
            if tight.len() == vertices.len() {
                eq_candidates.push(h.clone());
                continue;
            }
            if incidence.contains(&tight) {
                continue;
            }
            let pts: Vec<Vector> = tight.iter().map(|&i| vertices[i].clone()).collect();
            if affine_dimension(&pts) == dim - 1 {
                facets.push(h.clone());
                incidence.push(tight);
            }
        }
    }

    let equalities = if vertices.is_empty() {
        HPolytope::empty(p.ambient_dim()).equalities
    } else {
        let mut chosen: Vec<Halfspace> = Vec::new();
        let mut rows: Vec<Vector> = Vec::new();
        for h in eq_candidates {
            let mut row = h.normal.clone();
            row.push(h.rhs.clone());
            rows.push(row);
            if rank(&rows) > chosen.len() {
                chosen.push(h);
            } else {
                rows.pop();
            }
        }
        chosen
    };
    Ok(Faces {
        dim,
        vertices,
        facets,
        equalities,
        incidence,
    })
}

/// Minimal subsystem defining the same set; implicit equalities are moved
/// to the equality list.
pub fn remove_redundant(p: &HPolytope) -> Result<HPolytope> {
    let f = faces(p)?;
    if f.vertices.is_empty() {
        return Ok(HPolytope::empty(p.ambient_dim()));
    }
    HPolytope::new(p.ambient_dim(), f.facets, f.equalities)
}

/// Dimension of the affine hull; `-1` when empty.
pub fn polytope_dim(p: &HPolytope) -> Result<i64> {
    Ok(affine_dimension(h_to_v(p)?.vertices()))
}

/// Primitive integer directions of the edges leaving vertex `v`, sorted.
pub fn edges_at_vertex(p: &HPolytope, v: &[Rational]) -> Result<Vec<LatticeVector>> {
    if v.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: v.len(),
        });
    }
    let f = faces(p)?;
    let vi = f
        .vertices
        .iter()
        .position(|w| w.as_slice() == v)
        .ok_or(Error::NotAVertex)?;
    let mut dirs: Vec<LatticeVector> = neighbors(&f, vi)
        .into_iter()
        .map(|w| {
            let diff: Vector = f.vertices[w].iter().zip(v).map(|(a, b)| a - b).collect();
            primitive_direction(&diff).expect("distinct vertices")
        })
        .collect();
    dirs.sort();
    Ok(dirs)
}

/// Vertices adjacent to vertex `vi` in the vertex-edge graph.
pub fn neighbors(f: &Faces, vi: usize) -> Vec<usize> {
    let tight: Vec<Vec<usize>> = (0..f.vertices.len()).map(|i| f.vertex_facets(i)).collect();
    (0..f.vertices.len())
        .filter(|&w| w != vi)
        .filter(|&w| {
            let common: Vec<usize> = tight[vi].iter().copied().filter(|x| tight[w].contains(x)).collect();
            (0..f.vertices.len())
                .filter(|&u| u != vi && u != w)
                .all(|u| !common.iter().all(|x| tight[u].contains(x)))
        })
        .collect()
}

/// `x ↦ linear · x + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    linear: Matrix,
    offset: Vector,
}

impl AffineMap {
    pub fn new(linear: Matrix, offset: Vector) -> Result<Self> {
        if offset.len() != linear.nrows() {
            return Err(Error::DimensionMismatch {
                expected: linear.nrows(),
                found: offset.len(),
            });
        }
        Ok(AffineMap { linear, offset })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(n),
            offset: vec![Rational::zero(); n],
        }
    }

    pub fn linear(&self) -> &Matrix {
        &self.linear
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn domain_dim(&self) -> usize {
        self.linear.ncols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vector> {
        let mut y = self.linear.mul_vec(x)?;
        for (a, b) in y.iter_mut().zip(&self.offset) {
            *a += b;
        }
        Ok(y)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        let linear = self.linear.mul(&inner.linear)?;
        let offset = self.apply(&inner.offset)?;
        AffineMap::new(linear, offset)
    }
}

pub trait AffineImage: Sized {
    fn affine_image(&self, f: &AffineMap) -> Result<Self>;
}

impl AffineImage for HPolytope {
    /// Requires `f` to be injective on the affine hull of the polytope.
    fn affine_image(&self, f: &AffineMap) -> Result<Self> {
        if f.domain_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: f.domain_dim(),
            });
        }
        let v = h_to_v(self)?;
        if v.is_empty() {
            return Ok(HPolytope::empty(f.codomain_dim()));
        }
        let base = &v.vertices()[0];
        let dirs: Vec<Vector> = v.vertices()[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let images: Vec<Vector> = dirs
            .iter()
            .map(|d| f.linear().mul_vec(d))
            .collect::<Result<_>>()?;
        if rank(&images) != rank(&dirs) {
            return Err(Error::NonInjectiveMap);
        }
        let mapped = v.affine_image(f)?;
        Ok(v_to_h(&mapped))
    }
}

impl AffineImage for VPolytope {
    fn affine_image(&self, f: &AffineMap) -> Result<Self> {
        if f.domain_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: f.domain_dim(),
            });
        }
        let pts = self
            .vertices()
            .iter()
            .map(|p| f.apply(p))
            .collect::<Result<Vec<_>>>()?;
        VPolytope::new(f.codomain_dim(), pts)
    }
}

pub fn affine_image<P: AffineImage>(p: &P, f: &AffineMap) -> Result<P> {
    p.affine_image(f)
}

/// Basis of the direction space of the affine hull of `points`.
pub fn direction_basis(points: &[Vector], dim: usize) -> Vec<Vector> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let diffs: Vec<Vector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let normals = nullspace(&diffs, dim);
    nullspace(&normals, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio, vector};

    fn pentagon_h() -> HPolytope {
        HPolytope::from_i64(
            2,
            &[
                (&[1, 0], 6),
                (&[0, 1], 6),
                (&[-1, 1], 3),
                (&[1, -1], 3),
                (&[-1, -1], -3),
            ],
            &[],
        )
        .unwrap()
    }

    fn unit_square() -> HPolytope {
        HPolytope::from_i64(
            2,
            &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)],
            &[],
        )
        .unwrap()
    }

    fn points(ps: &[&[i64]]) -> Vec<Vector> {
        let mut v: Vec<Vector> = ps.iter().map(|p| vector(p)).collect();
        v.sort();
        v
    }

    #[test]
    fn pentagon_vertices() {
        let v = h_to_v(&pentagon_h()).unwrap();
        assert_eq!(
            v.vertices(),
            points(&[&[0, 3], &[3, 0], &[6, 3], &[6, 6], &[3, 6]]).as_slice()
        );
    }

    #[test]
    fn square_and_infeasible() {
        let v = h_to_v(&unit_square()).unwrap();
        assert_eq!(v.vertices(), points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).as_slice());
        let bad = HPolytope::from_i64(1, &[(&[1], 0), (&[-1], -1)], &[]).unwrap();
        assert!(h_to_v(&bad).unwrap().is_empty());
        assert_eq!(polytope_dim(&bad).unwrap(), -1);
    }

    #[test]
    fn unbounded_is_rejected() {
        let half = HPolytope::from_i64(2, &[(&[1, 0], 1), (&[-1, 0], 0)], &[]).unwrap();
        assert_eq!(h_to_v(&half), Err(Error::Unbounded));
        assert!(!half.is_bounded());
    }

    #[test]
    fn simplex_facets() {
        let v = VPolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let h = v_to_h(&v);
        assert!(h.equalities().is_empty());
        let mut got = h.inequalities().to_vec();
        got.sort();
        let mut want = vec![
            Halfspace::from_i64(&[-1, 0], 0),
            Halfspace::from_i64(&[0, -1], 0),
            Halfspace::from_i64(&[1, 1], 1),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn single_point_hull() {
        let v = VPolytope::from_i64(&[&[3, 6]]).unwrap();
        let h = v_to_h(&v);
        assert!(h.inequalities().is_empty());
        let mut eqs = h.equalities().to_vec();
        eqs.sort();
        assert_eq!(
            eqs,
            vec![Halfspace::from_i64(&[0, 1], 6), Halfspace::from_i64(&[1, 0], 3)]
        );
        assert_eq!(polytope_dim(&h).unwrap(), 0);
    }

    #[test]
    fn pentagon_hull_from_vertices() {
        let v = VPolytope::from_i64(&[&[0, 3], &[3, 0], &[6, 3], &[6, 6], &[3, 6]]).unwrap();
        let h = v_to_h(&v);
        let mut got = h.inequalities().to_vec();
        got.sort();
        let mut want = pentagon_h().inequalities().to_vec();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn interior_points_are_dropped() {
        let v = VPolytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[0, 1], &[2, 2]]).unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn redundancy_removal() {
        let p = HPolytope::from_i64(1, &[(&[1], 1), (&[1], 2), (&[-1], 0)], &[]).unwrap();
        // equal normals already collapse on construction
        assert_eq!(p.inequalities().len(), 2);
        let p = HPolytope::new(
            1,
            vec![
                Halfspace::from_i64(&[1], 1),
                Halfspace::from_i64(&[2], 4),
                Halfspace::from_i64(&[-1], 0),
            ],
            vec![],
        )
        .unwrap();
        let r = remove_redundant(&p).unwrap();
        assert_eq!(
            r.inequalities(),
            &[Halfspace::from_i64(&[1], 1), Halfspace::from_i64(&[-1], 0)]
        );
        let with_slack = pentagon_h()
            .with_constraints(vec![Halfspace::from_i64(&[1, 1], 100)], vec![])
            .unwrap();
        assert_eq!(remove_redundant(&with_slack).unwrap(), pentagon_h());
        assert_eq!(remove_redundant(&pentagon_h()).unwrap(), pentagon_h());
    }

    #[test]
    fn implicit_equalities_are_detected() {
        let p = HPolytope::from_i64(2, &[(&[1, 0], 2), (&[-1, 0], -2), (&[0, 1], 1), (&[0, -1], 0)], &[])
            .unwrap();
        let r = remove_redundant(&p).unwrap();
        assert_eq!(r.equalities().len(), 1);
        assert_eq!(r.inequalities().len(), 2);
        assert_eq!(polytope_dim(&p).unwrap(), 1);
    }

    #[test]
    fn membership() {
        let p = pentagon_h();
        assert!(p.contains(&vector(&[3, 3])).unwrap());
        assert!(!p.contains(&vector(&[0, 0])).unwrap());
        assert!(p.contains(&vector(&[1])).is_err());
        for v in h_to_v(&p).unwrap().vertices() {
            assert!(p.contains(v).unwrap());
        }
    }

    #[test]
    fn edge_directions() {
        let p = pentagon_h();
        assert_eq!(
            edges_at_vertex(&p, &vector(&[3, 0])).unwrap(),
            vec![vector_i(&[-1, 1]), vector_i(&[1, 1])]
        );
        assert_eq!(
            edges_at_vertex(&p, &vector(&[6, 6])).unwrap(),
            vec![vector_i(&[-1, 0]), vector_i(&[0, -1])]
        );
        assert_eq!(
            edges_at_vertex(&unit_square(), &vector(&[0, 0])).unwrap(),
            vec![vector_i(&[0, 1]), vector_i(&[1, 0])]
        );
        assert_eq!(
            edges_at_vertex(&p, &vector(&[3, 3])),
            Err(Error::NotAVertex)
        );
    }

    fn vector_i(v: &[i64]) -> LatticeVector {
        crate::exact::lattice(v)
    }

    #[test]
    fn images() {
        let seg = HPolytope::from_i64(1, &[(&[1], 1), (&[-1], 0)], &[]).unwrap();
        let id = AffineMap::identity(1);
        assert_eq!(
            h_to_v(&seg.affine_image(&id).unwrap()).unwrap(),
            h_to_v(&seg).unwrap()
        );
        let f = AffineMap::new(Matrix::from_i64(&[&[2]]), vector(&[1])).unwrap();
        let img = seg.affine_image(&f).unwrap();
        assert_eq!(h_to_v(&img).unwrap().vertices(), &[vector(&[1]), vector(&[3])]);
        let squash = AffineMap::new(Matrix::from_i64(&[&[1, 1]]), vector(&[0])).unwrap();
        assert_eq!(
            unit_square().affine_image(&squash),
            Err(Error::NonInjectiveMap)
        );
        let vimg = h_to_v(&unit_square()).unwrap().affine_image(&squash).unwrap();
        assert_eq!(vimg.vertices(), &[vector(&[0]), vector(&[2])]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(polytope_dim(&pentagon_h()).unwrap(), 2);
        let pt = HPolytope::from_i64(2, &[], &[(&[1, 0], 1), (&[0, 1], 2)]).unwrap();
        assert_eq!(polytope_dim(&pt).unwrap(), 0);
        assert_eq!(polytope_dim(&HPolytope::empty(3)).unwrap(), -1);
    }

    #[test]
    fn normalization_keeps_tighter_rhs() {
        let h = Halfspace::new(vec![ratio(1, 2), int(1)], ratio(3, 4)).normalized();
        assert_eq!(h, Halfspace::new(vector(&[1, 2]), ratio(3, 2)));
        let p = HPolytope::new(
            1,
            vec![Halfspace::from_i64(&[2], 4), Halfspace::from_i64(&[1], 1)],
            vec![],
        )
        .unwrap();
        assert_eq!(p.inequalities(), &[Halfspace::from_i64(&[1], 1)]);
    }

    #[test]
    fn linear_form_display() {
        let h = Halfspace::from_i64(&[-1, 2, 0], 3);
        assert_eq!(h.to_string(), "-x1 + 2*x2 <= 3");
    }
}
