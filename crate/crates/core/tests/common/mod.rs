//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use polyweight_core::exact::{combinations, int, solve_linear, LinearSolution};
use polyweight_core::{HPolytope, Halfspace, LatticeVector, Matrix, Rational, SideData, Vector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertices as the feasible solutions of every square subsystem of full rank.
pub fn brute_vertices(p: &HPolytope) -> Vec<Vector> {
    let d = p.ambient_dim();
    let rows: Vec<&Halfspace> = p.inequalities().iter().chain(p.equalities()).collect();
    if d == 0 {
        return if p.contains(&[]).unwrap() { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out: Vec<Vector> = Vec::new();
    for subset in combinations(rows.len(), d) {
        let a = Matrix::from_rows(d, subset.iter().map(|&i| rows[i].normal.clone()).collect()).unwrap();
        let b: Vector = subset.iter().map(|&i| rows[i].rhs.clone()).collect();
        if let LinearSolution::Unique(x) = solve_linear(&a, &b).unwrap() {
            if p.contains(&x).unwrap() && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// `(a, b)` with integer entries describing the same constraint.
fn integer_row(h: &Halfspace) -> (Vec<i64>, i64) {
    let l = h
        .normal
        .iter()
        .chain(std::iter::once(&h.rhs))
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &Rational| (x * Rational::from_integer(l.clone())).to_integer().to_i64().unwrap();
    (h.normal.iter().map(scale).collect(), scale(&h.rhs))
}

/// Lattice points of `t·P` by scanning the bounding box of its vertices.
pub fn brute_lattice_points(p: &HPolytope, t: u64) -> Vec<LatticeVector> {
    let vs = brute_vertices(p);
    if vs.is_empty() {
        return Vec::new();
    }
    let d = p.ambient_dim();
    let tt = int(t as i64);
    let bound = |i: usize, f: fn(&Rational) -> Rational| -> Vec<i64> {
        vs.iter().map(|v| f(&(&v[i] * &tt)).to_integer().to_i64().unwrap()).collect()
    };
    let lo: Vec<i64> = (0..d).map(|i| *bound(i, Rational::ceil).iter().min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| *bound(i, Rational::floor).iter().max().unwrap()).collect();
    let ineqs: Vec<(Vec<i64>, i64)> = p.inequalities().iter().map(integer_row).collect();
    let eqs: Vec<(Vec<i64>, i64)> = p.equalities().iter().map(integer_row).collect();
    let t = t as i64;
    let value = |a: &[i64], x: &[i64]| a.iter().zip(x).map(|(u, v)| u * v).sum::<i64>();
    let mut out = Vec::new();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return out;
    }
    // scan the box in all but the last coordinate; bound the last one directly
    let last = d - 1;
    let mut cur = lo.clone();
    loop {
        let mut lo_last = lo[last];
        let mut hi_last = hi[last];
        for (a, b) in &ineqs {
            let c = a[last];
            let room = t * b - value(&a[..last], &cur[..last]);
            if c > 0 {
                hi_last = hi_last.min(Integer::div_floor(&room, &c));
            } else if c < 0 {
                lo_last = lo_last.max(-Integer::div_floor(&room, &-c));
            }
        }
        for x in lo_last..=hi_last {
            cur[last] = x;
            if ineqs.iter().all(|(a, b)| value(a, &cur) <= t * b)
                && eqs.iter().all(|(a, b)| value(a, &cur) == t * b)
            {
                out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
            }
        }
        let mut i = 0;
        loop {
            if i == last {
                out.sort();
                return out;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// Integer Gelfand-Tsetlin patterns with the given top row and row sums,
/// enumerated row by row from the top.
pub fn gt_pattern_count(top: &[i64], sums: &[i64]) -> u64 {
    fn below(row: &[i64], sums: &[i64]) -> u64 {
        let t = row.len() - 1;
        if t == 0 {
            return 1;
        }
        let mut total = 0;
        let mut cand = vec![0i64; t];
        fill(row, sums, 0, &mut cand, &mut total);
        total
    }
    fn fill(row: &[i64], sums: &[i64], i: usize, cand: &mut Vec<i64>, total: &mut u64) {
        let t = cand.len();
        if i == t {
            if cand.iter().sum::<i64>() == sums[t - 1] {
                *total += below(cand, sums);
            }
            return;
        }
        for x in row[i + 1]..=row[i] {
            cand[i] = x;
            fill(row, sums, i + 1, cand, total);
        }
    }
    below(top, sums)
}

/// Pattern count for the `t`-th dilate of integral side data.
pub fn gt_oracle(m: usize, r: &[i64], t: i64) -> u64 {
    let n = r.len();
    let total: i64 = r.iter().sum();
    assert_eq!((t * total) % (m as i64 + 1), 0);
    let p = t * total / (m as i64 + 1);
    let mut top = vec![p; m + 1];
    top.extend(std::iter::repeat_n(0, n - m - 1));
    let sums: Vec<i64> = (1..n).map(|j| t * r[..j].iter().sum::<i64>()).collect();
    gt_pattern_count(&top, &sums)
}

/// Random integral weights in `1..=max` with `r_i <= P` (or `< P` if strict).
pub fn random_admissible(rng: &mut ChaCha8Rng, m: usize, n: usize, max: i64, strict: bool, integral_p: bool) -> Vec<i64> {
    loop {
        let r: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max)).collect();
        let total: i64 = r.iter().sum();
        let k = m as i64 + 1;
        if integral_p && total % k != 0 {
            continue;
        }
        let ok = r.iter().all(|&x| if strict { x * k < total } else { x * k <= total });
        if ok {
            return r;
        }
    }
}

pub fn side(m: usize, r: &[i64]) -> SideData {
    SideData::from_i64(m, r).unwrap()
}

/// Bounded random polytope with at most `max_facets` inequalities; the
/// origin is always feasible.
pub fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, max_facets: usize) -> HPolytope {
    loop {
        let k = rng.gen_range(dim + 1..=max_facets.max(dim + 1));
        let ineqs: Vec<Halfspace> = (0..k)
            .map(|_| {
                let a: Vector = (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect();
                Halfspace::new(a, int(rng.gen_range(0..=6)))
            })
            .filter(|h| !h.is_zero_normal())
            .collect();
        let eqs = if dim > 1 && rng.gen_bool(0.2) {
            let a: Vector = (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect();
            if a.iter().all(Zero::is_zero) {
                Vec::new()
            } else {
                vec![Halfspace::new(a, int(0))]
            }
        } else {
            Vec::new()
        };
        let Ok(p) = HPolytope::new(dim, ineqs, eqs) else { continue };
        if polyweight_core::polytope::h_to_v(&p).is_ok() {
            return p;
        }
    }
}

/// Random unimodular integer matrix as a product of elementary moves.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut m = Matrix::identity(d);
    if d < 2 {
        if d == 1 && rng.gen_bool(0.5) {
            m[(0, 0)] = int(-1);
        }
        return m;
    }
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        while j == i {
            j = rng.gen_range(0..d);
        }
        let c = int(rng.gen_range(-2..=2));
        for col in 0..d {
            let add = &c * &m[(j, col)];
            m[(i, col)] += add;
        }
        if rng.gen_bool(0.3) {
            for col in 0..d {
                let v = -m[(i, col)].clone();
                m[(i, col)] = v;
            }
        }
    }
    m
}

/// Twice the signed area of a polygon listed in cyclic order.
pub fn shoelace2(points: &[(i64, i64)]) -> i64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (x1, y1) = points[i];
            let (x2, y2) = points[(i + 1) % n];
            x1 * y2 - x2 * y1
        })
        .sum::<i64>()
        .abs()
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
