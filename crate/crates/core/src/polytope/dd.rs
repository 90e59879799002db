//! Incremental double description for homogeneous cones `{y : c·y >= 0}`.
//!
//! Generators are kept as primitive integer vectors. The cone starts as the
//! whole space (lineality = unit vectors); each constraint either consumes a
//! lineality direction or runs the usual +/0/- ray pairing with the
//! combinatorial adjacency test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{dot_int, primitive_vector, LatticeVector};

#[derive(Debug, Clone, Default)]
pub struct Cone {
    pub lineality: Vec<LatticeVector>,
    pub rays: Vec<LatticeVector>,
}

#[derive(Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn filled(upto: usize, bits: usize) -> Self {
        let mut s = ZeroSet::with_capacity(bits);
        for i in 0..upto {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn normalize(v: Vec<BigInt>) -> Option<LatticeVector> {
    primitive_vector(&v).ok()
}

/// Generators of `{y in Q^dim : c·y >= 0 for all c in constraints}`.
pub fn generators(dim: usize, constraints: &[LatticeVector]) -> Cone {
    let total = constraints.len();
    let mut lineality: Vec<LatticeVector> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<(LatticeVector, ZeroSet)> = Vec::new();

    for (k, c) in constraints.iter().enumerate() {
        if c.iter().all(Zero::is_zero) {
            rays.iter_mut().for_each(|(_, z)| z.insert(k));
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot_int(c, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut cl = dot_int(c, &l);
            if cl.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                cl = -cl;
            }
            lineality = lineality
                .into_iter()
                .filter_map(|m| {
                    let cm = dot_int(c, &m);
                    let v = m.iter().zip(&l).map(|(a, b)| &cl * a - &cm * b).collect();
                    normalize(v)
                })
                .collect();
            for (r, z) in rays.iter_mut() {
                let cr = dot_int(c, r);
                if !cr.is_zero() {
                    let v = r.iter().zip(&l).map(|(a, b)| &cl * a - &cr * b).collect();
                    *r = normalize(v).expect("ray collapsed onto lineality");
                }
                z.insert(k);
            }
            // Every earlier constraint vanished on the lineality space.
            rays.push((l, ZeroSet::filled(k, total)));
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot_int(c, r)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if minus.is_empty() {
            for (i, (_, z)) in rays.iter_mut().enumerate() {
                if values[i].is_zero() {
                    z.insert(k);
                }
            }
            continue;
        }

        let rank_needed = dim.saturating_sub(lineality.len()).saturating_sub(2);
        let mut fresh: Vec<(LatticeVector, ZeroSet)> = Vec::new();
        for &p in &plus {
            for &n in &minus {
                let common = rays[p].1.intersect(&rays[n].1);
                if common.len() < rank_needed {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == n || !common.is_subset_of(z));
                if !adjacent {
                    continue;
                }
                let (rp, rn) = (&rays[p].0, &rays[n].0);
                let (vp, vn) = (&values[p], &values[n]);
                let w: Vec<BigInt> = rp.iter().zip(rn).map(|(a, b)| vp * b - vn * a).collect();
                if let Some(w) = normalize(w) {
                    let mut z = common;
                    z.insert(k);
                    fresh.push((w, z));
                }
            }
        }

        let mut kept: Vec<(LatticeVector, ZeroSet)> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, (r, mut z)) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                z.insert(k);
            }
            kept.push((r, z));
        }
        kept.extend(fresh);
        rays = kept;
    }

    Cone {
        lineality,
        rays: rays.into_iter().map(|(r, _)| r).collect(),
    }
}
