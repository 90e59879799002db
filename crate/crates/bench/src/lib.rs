//! Benchmark fixtures.

use polyweight_core::SideData;

/// Side data from integer lengths; panics on inadmissible input.
pub fn side(m: usize, r: &[i64]) -> SideData {
    SideData::from_i64(m, r).expect("valid side data")
}

pub const PENTAGON: &[i64] = &[3, 3, 3, 3, 3];
pub const HEXAGON: &[i64] = &[3, 3, 3, 3, 4];
pub const HEPTAGON: &[i64] = &[3, 4, 3, 4, 3];
