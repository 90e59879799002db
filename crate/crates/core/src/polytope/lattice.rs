//! Lattice points of dilates.
//!
//! A polytope is first restricted to its affine hull through a unimodular
//! column reduction of the hull equations, so the scan always runs over a
//! full-dimensional box in chart coordinates `y` with `x = x0 + B·y`.
//! Integer `x` correspond exactly to integer `y` once `t·z1` is integral.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{affine_dimension, h_to_v, AffineMap, HPolytope, Halfspace};
use crate::error::{Error, Result};
use crate::exact::{
    column_echelon, dot, nullspace, primitive_direction, to_rational, LatticeVector, Matrix,
    Rational, Vector,
};

/// Integer-unimodular chart of the affine hull of a nonempty polytope.
#[derive(Clone, Debug)]
pub struct AffineHullChart {
    /// A rational point of the hull, `U_1 · z1`.
    pub origin: Vector,
    /// Pivot coordinates of the origin; `t·P` has lattice points only when
    /// `t · origin_coords` is integral.
    pub origin_coords: Vector,
    /// Columns spanning the lattice of the hull directions.
    pub basis: Vec<LatticeVector>,
    /// Rows recovering chart coordinates: `y = coords · x` on the hull.
    pub coords: Vec<LatticeVector>,
    /// The polytope in chart coordinates; full-dimensional.
    pub restricted: HPolytope,
    pub chart_vertices: Vec<Vector>,
}

impl AffineHullChart {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn to_ambient(&self, y: &[Rational]) -> Vector {
        let mut x = self.origin.clone();
        for (b, c) in self.basis.iter().zip(y) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * Rational::from_integer(bi.clone());
            }
        }
        x
    }

    pub fn to_chart(&self, x: &[Rational]) -> Vector {
        self.coords.iter().map(|row| dot(&to_rational(row), x)).collect()
    }

    /// `y ↦ origin + B·y` as an affine map.
    pub fn ambient_map(&self) -> AffineMap {
        let n = self.ambient_dim();
        let k = self.dim();
        let mut m = Matrix::zeros(n, k);
        for (j, col) in self.basis.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = Rational::from_integer(v.clone());
            }
        }
        AffineMap::new(m, self.origin.clone()).expect("consistent chart")
    }
}

/// `None` when the polytope is empty.
pub fn affine_hull_chart(p: &HPolytope) -> Result<Option<AffineHullChart>> {
    let vertices = h_to_v(p)?.vertices;
    if vertices.is_empty() {
        return Ok(None);
    }
    let n = p.ambient_dim();
    let v0 = &vertices[0];
    let diffs: Vec<Vector> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    let normals: Vec<LatticeVector> = nullspace(&diffs, n)
        .iter()
        .map(|r| primitive_direction(r).expect("nullspace rows are nonzero"))
        .collect();
    let rhs: Vector = normals.iter().map(|a| dot(&to_rational(a), v0)).collect();
    let e = normals.len();

    let ce = column_echelon(&normals, n)?;
    let mut z1: Vector = Vec::with_capacity(e);
    for (i, b) in rhs.iter().enumerate() {
        let mut acc = b.clone();
        for (j, z) in z1.iter().enumerate() {
            acc -= Rational::from_integer(ce.h[i][j].clone()) * z;
        }
        z1.push(acc / Rational::from_integer(ce.h[i][i].clone()));
    }
    let origin: Vector = (0..n)
        .map(|i| {
            z1.iter()
                .enumerate()
                .map(|(j, z)| Rational::from_integer(ce.u[i][j].clone()) * z)
                .sum()
        })
        .collect();
    let basis: Vec<LatticeVector> = (e..n)
        .map(|j| (0..n).map(|i| ce.u[i][j].clone()).collect())
        .collect();
    let coords: Vec<LatticeVector> = ce.u_inv[e..].to_vec();

    let mut rows = Vec::new();
    for h in p.inequalities() {
        let a: Vector = basis.iter().map(|b| dot(&h.normal, &to_rational(b))).collect();
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        rows.push(Halfspace::new(a, &h.rhs - dot(&h.normal, &origin)));
    }
    let restricted = HPolytope::new(n - e, rows, Vec::new())?;
    let mut chart = AffineHullChart {
        origin,
        origin_coords: z1,
        basis,
        coords,
        restricted,
        chart_vertices: Vec::new(),
    };
    chart.chart_vertices = vertices.iter().map(|v| chart.to_chart(v)).collect();
    debug_assert_eq!(affine_dimension(&chart.chart_vertices), (n - e) as i64);
    Ok(Some(chart))
}

fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

struct ScanProblem<T> {
    rows: Vec<(Vec<T>, T)>,
    lo: Vec<T>,
    hi: Vec<T>,
}

/// Integer scan data for `t · restricted`, or `None` when the dilate
/// carries no lattice points for parity reasons.
fn scan_data(chart: &AffineHullChart, t: &BigInt) -> Option<ScanProblem<BigInt>> {
    let tq = Rational::from_integer(t.clone());
    if chart.origin_coords.iter().any(|z| !(z * &tq).is_integer()) {
        return None;
    }
    let k = chart.dim();
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for i in 0..k {
        let vals = chart.chart_vertices.iter().map(|v| &v[i] * &tq);
        let min = vals.clone().min().expect("nonempty");
        let max = vals.max().expect("nonempty");
        lo.push(ceil(&min));
        hi.push(floor(&max));
    }
    let rows = chart
        .restricted
        .inequalities()
        .iter()
        .map(|h| {
            let a: Vec<BigInt> = h.normal.iter().map(|x| x.to_integer()).collect();
            (a, floor(&(&h.rhs * &tq)))
        })
        .collect();
    Some(ScanProblem { rows, lo, hi })
}

fn narrow(p: &ScanProblem<BigInt>) -> Option<ScanProblem<i128>> {
    const LIMIT: i64 = 1 << 31;
    let conv = |x: &BigInt| x.to_i64().filter(|v| v.abs() < LIMIT).map(i128::from);
    let rows = p
        .rows
        .iter()
        .map(|(a, b)| Some((a.iter().map(conv).collect::<Option<Vec<_>>>()?, conv(b)?)))
        .collect::<Option<Vec<_>>>()?;
    Some(ScanProblem {
        rows,
        lo: p.lo.iter().map(conv).collect::<Option<_>>()?,
        hi: p.hi.iter().map(conv).collect::<Option<_>>()?,
    })
}

/// Depth-first box scan with per-coordinate bound propagation: at depth
/// `d`, each row bounds `y_d` given the fixed prefix and the least possible
/// contribution of the remaining coordinates.
fn scan<T, F>(p: &ScanProblem<T>, visit: &mut F)
where
    T: Integer + Signed + Clone,
    F: FnMut(&[T]),
{
    let k = p.lo.len();
    if p.lo.iter().zip(&p.hi).any(|(l, h)| l > h) {
        return;
    }
    // min_rem[r][d] = least value of sum_{j >= d} a_j y_j over the box.
    let min_rem: Vec<Vec<T>> = p
        .rows
        .iter()
        .map(|(a, _)| {
            let mut acc = vec![T::zero(); k + 1];
            for j in (0..k).rev() {
                let c1 = a[j].clone() * p.lo[j].clone();
                let c2 = a[j].clone() * p.hi[j].clone();
                acc[j] = acc[j + 1].clone() + if c1 < c2 { c1 } else { c2 };
            }
            acc
        })
        .collect();
    if p.rows.iter().zip(&min_rem).any(|((_, b), m)| m[0] > *b) {
        return;
    }
    let mut y: Vec<T> = p.lo.clone();
    let mut partial: Vec<T> = vec![T::zero(); p.rows.len()];
    descend(p, &min_rem, 0, &mut y, &mut partial, visit);
}

fn descend<T, F>(
    p: &ScanProblem<T>,
    min_rem: &[Vec<T>],
    d: usize,
    y: &mut Vec<T>,
    partial: &mut Vec<T>,
    visit: &mut F,
) where
    T: Integer + Signed + Clone,
    F: FnMut(&[T]),
{
    let k = p.lo.len();
    if d == k {
        visit(y);
        return;
    }
    let mut lo = p.lo[d].clone();
    let mut hi = p.hi[d].clone();
    for (r, (a, b)) in p.rows.iter().enumerate() {
        let c = &a[d];
        if c.is_zero() {
            continue;
        }
        let room = b.clone() - partial[r].clone() - min_rem[r][d + 1].clone();
        if c.is_positive() {
            let bound = room.div_floor(c);
            if bound < hi {
                hi = bound;
            }
        } else {
            // c·y <= room with c < 0  <=>  y >= ceil(room / c)
            let bound = -((-room).div_floor(c));
            if bound > lo {
                lo = bound;
            }
        }
    }
    let mut v = lo;
    while v <= hi {
        for (r, (a, _)) in p.rows.iter().enumerate() {
            partial[r] = partial[r].clone() + a[d].clone() * v.clone();
        }
        y[d] = v.clone();
        descend(p, min_rem, d + 1, y, partial, visit);
        for (r, (a, _)) in p.rows.iter().enumerate() {
            partial[r] = partial[r].clone() - a[d].clone() * v.clone();
        }
        v = v + T::one();
    }
}

fn for_each_chart_point(chart: &AffineHullChart, t: &BigInt, mut visit: impl FnMut(&[BigInt])) {
    let Some(problem) = scan_data(chart, t) else {
        return;
    };
    match narrow(&problem) {
        Some(small) => {
            let mut buf: Vec<BigInt> = Vec::with_capacity(small.lo.len());
            scan(&small, &mut |y: &[i128]| {
                buf.clear();
                buf.extend(y.iter().map(|&v| BigInt::from(v)));
                visit(&buf);
            })
        }
        None => scan(&problem, &mut |y: &[BigInt]| visit(y)),
    }
}

fn check_dilate(dilate: u64) -> Result<BigInt> {
    if dilate == 0 {
        return Err(Error::Parse("dilate must be positive".into()));
    }
    Ok(BigInt::from(dilate))
}

/// Integer points `x` with `x / dilate ∈ P`, in lexicographic order.
pub fn lattice_points(p: &HPolytope, dilate: u64) -> Result<Vec<LatticeVector>> {
    let t = check_dilate(dilate)?;
    let Some(chart) = affine_hull_chart(p)? else {
        return Ok(Vec::new());
    };
    let tq = Rational::from_integer(t.clone());
    let base: Vec<BigInt> = chart.origin.iter().map(|x| (x * &tq).to_integer()).collect();
    let mut out = Vec::new();
    for_each_chart_point(&chart, &t, |y| {
        let mut x = base.clone();
        for (b, c) in chart.basis.iter().zip(y) {
            if c.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * c;
            }
        }
        out.push(x);
    });
    out.sort();
    Ok(out)
}

/// Number of lattice points of `dilate · P`.
pub fn count_lattice_points(p: &HPolytope, dilate: u64) -> Result<u64> {
    let t = check_dilate(dilate)?;
    let Some(chart) = affine_hull_chart(p)? else {
        return Ok(0);
    };
    let mut count = 0u64;
    for_each_chart_point(&chart, &t, |_| count += 1);
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{lattice, ratio, vector};

    #[test]
    fn pentagon_count() {
        let p = HPolytope::from_i64(
            2,
            &[(&[1, 0], 6), (&[0, 1], 6), (&[-1, 1], 3), (&[1, -1], 3), (&[-1, -1], -3)],
            &[],
        )
        .unwrap();
        assert_eq!(lattice_points(&p, 1).unwrap().len(), 31);
        assert_eq!(count_lattice_points(&p, 1).unwrap(), 31);
    }

    #[test]
    fn segment_dilate() {
        let seg = HPolytope::from_i64(1, &[(&[1], 1), (&[-1], 0)], &[]).unwrap();
        assert_eq!(
            lattice_points(&seg, 3).unwrap(),
            vec![lattice(&[0]), lattice(&[1]), lattice(&[2]), lattice(&[3])]
        );
        assert!(lattice_points(&HPolytope::empty(2), 2).unwrap().is_empty());
    }

    #[test]
    fn lower_dimensional_slice() {
        // x + y + z = 2 inside the unit cube scaled by 2: a hexagon-ish triangle slice.
        let p = HPolytope::from_i64(
            3,
            &[
                (&[1, 0, 0], 2),
                (&[0, 1, 0], 2),
                (&[0, 0, 1], 2),
                (&[-1, 0, 0], 0),
                (&[0, -1, 0], 0),
                (&[0, 0, -1], 0),
            ],
            &[(&[1, 1, 1], 2)],
        )
        .unwrap();
        assert_eq!(lattice_points(&p, 1).unwrap().len(), 6);
        assert_eq!(lattice_points(&p, 2).unwrap().len(), 15);
    }

    #[test]
    fn parity_obstruction() {
        // 2x = 1 has no integer points at odd dilates.
        let p = HPolytope::new(
            2,
            vec![
                Halfspace::from_i64(&[0, 1], 1),
                Halfspace::from_i64(&[0, -1], 0),
            ],
            vec![Halfspace::new(vector(&[1, 0]), ratio(1, 2))],
        )
        .unwrap();
        assert_eq!(count_lattice_points(&p, 1).unwrap(), 0);
        assert_eq!(count_lattice_points(&p, 2).unwrap(), 3);
        assert_eq!(count_lattice_points(&p, 3).unwrap(), 0);
    }

    #[test]
    fn chart_round_trip() {
        let p = HPolytope::from_i64(
            3,
            &[(&[1, 0, 0], 3), (&[-1, 0, 0], 0), (&[0, 1, 0], 3), (&[0, -1, 0], 0)],
            &[(&[2, 1, -1], 1)],
        )
        .unwrap();
        let chart = affine_hull_chart(&p).unwrap().unwrap();
        assert_eq!(chart.dim(), 2);
        for v in &chart.chart_vertices {
            let x = chart.to_ambient(v);
            assert!(p.contains(&x).unwrap());
            assert_eq!(&chart.to_chart(&x), v);
        }
    }
}
