//! Builders for polygon-space and Gelfand-Tsetlin weight polytopes.
//!
//! Gelfand-Tsetlin rows are stored weakly decreasing from left to right.
//! Row `t` (counted from the bottom, `1..=k`) has `t` entries and interlaces
//! with row `t + 1`: `x[t+1][i] >= x[t][i] >= x[t+1][i+1]`. Entries whose
//! two upper neighbours are fixed to the same value are pinched to that
//! value and never become coordinates.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Rational, Vector};
use crate::polytope::{AffineImage, AffineMap, HPolytope, Halfspace};

/// Side lengths (weights) of a configuration of `n` points in `CP^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SideData {
    m: usize,
    r: Vec<Rational>,
    p: Rational,
}

impl SideData {
    pub fn new(m: usize, r: Vec<Rational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSideData("m must be at least 1".into()));
        }
        if r.len() <= m + 1 {
            return Err(Error::InvalidSideData(format!(
                "need n > m + 1, got n = {} for m = {m}",
                r.len()
            )));
        }
        if let Some(bad) = r.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidSideData(format!("side length {bad} is not positive")));
        }
        let p = r.iter().sum::<Rational>() / int(m as i64 + 1);
        Ok(SideData { m, r, p })
    }

    pub fn from_i64(m: usize, r: &[i64]) -> Result<Self> {
        SideData::new(m, r.iter().map(|&x| int(x)).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[Rational] {
        &self.r
    }

    /// `(Σ r_i) / (m + 1)`; half the perimeter when `m = 1`.
    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// `s_j = r_1 + … + r_j` for `j = 1..=n`.
    pub fn partial_sums(&self) -> Vec<Rational> {
        self.r
            .iter()
            .scan(Rational::zero(), |acc, x| {
                *acc += x;
                Some(acc.clone())
            })
            .collect()
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        SideData::new(self.m, self.r.iter().map(|x| x * c).collect())
    }

    /// `mn - 2m - m²`, the expected dimension of the slice.
    pub fn expected_dim(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n() as i64);
        m * n - 2 * m - m * m
    }
}

impl fmt::Display for SideData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.r.iter().map(|x| x.to_string()).collect();
        write!(f, "m={} r=({})", self.m, r.join(","))
    }
}

/// Strong triangle inequalities `r_i <= P`.
pub fn admissible(s: &SideData) -> bool {
    s.r.iter().all(|x| x <= &s.p)
}

/// `(m, r) ↦ (n - m - 2, P - r)`.
pub fn dual_side_data(s: &SideData) -> Result<SideData> {
    if s.r.iter().any(|x| x >= &s.p) {
        return Err(Error::DualWeightNonpositive);
    }
    let m_dual = s.n() - s.m - 2;
    if m_dual == 0 {
        return Err(Error::InvalidSideData("dual configuration has m = 0".into()));
    }
    SideData::new(m_dual, s.r.iter().map(|x| &s.p - x).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Fixed(usize),
    Diagonal(usize),
}

/// The `3(n - 2)` triangle inequalities on the diagonals `x_i = d_{i+2}`,
/// before any deduplication.
pub fn polygon_triangle_inequalities(s: &SideData) -> Result<Vec<Halfspace>> {
    if s.m != 1 {
        return Err(Error::InvalidSideData("polygon spaces need m = 1".into()));
    }
    let n = s.n();
    if n < 4 {
        return Err(Error::TooFewSides);
    }
    let dim = n - 3;
    // diagonal d_j has coordinate j - 3; sides r_j are 1-based
    let d = |j: usize| Side::Diagonal(j - 3);
    let r = |j: usize| Side::Fixed(j - 1);
    let mut triangles = vec![[r(1), r(2), d(3)]];
    for j in 3..=n - 2 {
        triangles.push([d(j), r(j), d(j + 1)]);
    }
    triangles.push([d(n - 1), r(n - 1), r(n)]);

    let mut out = Vec::with_capacity(3 * triangles.len());
    for tri in &triangles {
        for long in 0..3 {
            // tri[long] - other - other <= 0
            let mut normal = vec![Rational::zero(); dim];
            let mut rhs = Rational::zero();
            for (k, side) in tri.iter().enumerate() {
                let sign = if k == long { Rational::one() } else { -Rational::one() };
                match *side {
                    Side::Diagonal(i) => normal[i] += sign,
                    Side::Fixed(i) => rhs -= sign * &s.r[i],
                }
            }
            out.push(Halfspace::new(normal, rhs));
        }
    }
    Ok(out)
}

/// Weight polytope of the polygon space in diagonal-length coordinates.
pub fn polygon_hrep(s: &SideData) -> Result<HPolytope> {
    let rows = polygon_triangle_inequalities(s)?;
    HPolytope::new(s.n() - 3, rows, Vec::new())
}

/// Top row plus optional fixed sums `s_1..s_{k-1}` of the lower rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtSpec {
    pub lambda: Vec<Rational>,
    pub row_sums: Option<Vec<Rational>>,
}

impl GtSpec {
    pub fn new(lambda: Vec<Rational>, row_sums: Option<Vec<Rational>>) -> Result<Self> {
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonMonotoneLambda);
        }
        if let Some(sums) = &row_sums {
            if sums.len() + 1 != lambda.len() {
                return Err(Error::InvalidRowSums(format!(
                    "expected {} row sums, got {}",
                    lambda.len().saturating_sub(1),
                    sums.len()
                )));
            }
            let total: Rational = lambda.iter().sum();
            let low = lambda.iter().filter(|x| x.is_negative()).sum::<Rational>();
            if let Some(bad) = sums.iter().find(|x| **x < low || **x > total) {
                return Err(Error::InvalidRowSums(format!("row sum {bad} out of range")));
            }
        }
        Ok(GtSpec { lambda, row_sums })
    }

    pub fn k(&self) -> usize {
        self.lambda.len()
    }

    /// Top row `(P^{m+1}, 0^{n-m-1})` with row sums `s_1..s_{n-1}`.
    pub fn for_side_data(s: &SideData) -> Self {
        let n = s.n();
        let mut lambda = vec![s.p.clone(); s.m + 1];
        lambda.extend(std::iter::repeat_n(Rational::zero(), n - s.m - 1));
        let mut sums = s.partial_sums();
        sums.pop();
        GtSpec {
            lambda,
            row_sums: Some(sums),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Fixed(Rational),
    Var(usize),
}

/// Positions of the free entries of a Gelfand-Tsetlin triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtLayout {
    /// `rows[t - 1]` is row `t` from the bottom; the last row is the top.
    pub rows: Vec<Vec<Cell>>,
    /// `(row, position)` of each coordinate, 1-based, bottom-to-top then
    /// left-to-right.
    pub coordinates: Vec<(usize, usize)>,
}

impl GtLayout {
    /// Every entry below the top row is a coordinate.
    pub fn full(lambda: &[Rational]) -> Self {
        GtLayout::build(lambda, false)
    }

    /// Pinched entries are fixed rather than coordinates.
    pub fn new(lambda: &[Rational]) -> Self {
        GtLayout::build(lambda, true)
    }

    fn build(lambda: &[Rational], pinch: bool) -> Self {
        let k = lambda.len();
        let mut rows: Vec<Vec<Option<Rational>>> = vec![Vec::new(); k];
        if k > 0 {
            rows[k - 1] = lambda.iter().cloned().map(Some).collect();
        }
        for t in (1..k).rev() {
            let upper = &rows[t];
            let row: Vec<Option<Rational>> = (0..t)
                .map(|i| match (&upper[i], &upper[i + 1]) {
                    (Some(a), Some(b)) if pinch && a == b => Some(a.clone()),
                    _ => None,
                })
                .collect();
            rows[t - 1] = row;
        }
        let mut coordinates = Vec::new();
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(t, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, c)| match c {
                        Some(v) => Cell::Fixed(v),
                        None => {
                            coordinates.push((t + 1, i + 1));
                            Cell::Var(coordinates.len() - 1)
                        }
                    })
                    .collect()
            })
            .collect();
        GtLayout { rows, coordinates }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn cell(&self, row: usize, pos: usize) -> &Cell {
        &self.rows[row - 1][pos - 1]
    }

    /// Labels `x(t,i)` for each coordinate.
    pub fn labels(&self) -> Vec<String> {
        self.coordinates
            .iter()
            .map(|(t, i)| format!("x({t},{i})"))
            .collect()
    }

    /// Adds `sign · cell` to an affine expression `normal·x + constant`.
    fn accumulate(&self, cell: &Cell, sign: i64, normal: &mut Vector, constant: &mut Rational) {
        match cell {
            Cell::Fixed(v) => *constant += int(sign) * v,
            Cell::Var(j) => normal[*j] += int(sign),
        }
    }

    /// Fills a full pattern from coordinate values.
    pub fn pattern(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        Cell::Fixed(v) => v.clone(),
                        Cell::Var(j) => x[*j].clone(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Adjacent free-entry pairs `(row, left position)` whose differences
    /// form the action-variable chart.
    pub fn difference_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, row) in self.rows.iter().enumerate().take(self.rows.len().saturating_sub(1)) {
            for i in 0..row.len().saturating_sub(1) {
                if matches!(row[i], Cell::Var(_)) && matches!(row[i + 1], Cell::Var(_)) {
                    out.push((t + 1, i + 1));
                }
            }
        }
        out
    }
}

fn gt_polytope(spec: &GtSpec, layout: &GtLayout) -> Result<HPolytope> {
    let dim = layout.dim();
    let mut ineqs = Vec::new();
    let k = spec.k();
    for t in 1..k {
        for i in 1..=t {
            let cell = layout.cell(t, i);
            if matches!(cell, Cell::Fixed(_)) {
                continue;
            }
            // cell - upper_left <= 0 and upper_right - cell <= 0
            for (hi, lo) in [
                (cell, layout.cell(t + 1, i)),
                (layout.cell(t + 1, i + 1), cell),
            ] {
                let mut normal = vec![Rational::zero(); dim];
                let mut constant = Rational::zero();
                layout.accumulate(hi, 1, &mut normal, &mut constant);
                layout.accumulate(lo, -1, &mut normal, &mut constant);
                if normal.iter().all(Zero::is_zero) {
                    if constant.is_positive() {
                        return Ok(HPolytope::empty(dim));
                    }
                    continue;
                }
                ineqs.push(Halfspace::new(normal, -constant));
            }
        }
    }
    let mut eqs = Vec::new();
    if let Some(sums) = &spec.row_sums {
        for t in 1..k {
            let mut normal = vec![Rational::zero(); dim];
            let mut constant = Rational::zero();
            for i in 1..=t {
                layout.accumulate(layout.cell(t, i), 1, &mut normal, &mut constant);
            }
            let rhs = &sums[t - 1] - constant;
            if normal.iter().all(Zero::is_zero) {
                if !rhs.is_zero() {
                    return Ok(HPolytope::empty(dim));
                }
                continue;
            }
            eqs.push(Halfspace::new(normal, rhs));
        }
    }
    HPolytope::new(dim, ineqs, eqs)
}

/// Gelfand-Tsetlin polytope of `lambda` on the `k(k-1)/2` entries below the
/// top row; fixed row sums become equalities when present.
pub fn gt_hrep(spec: &GtSpec) -> Result<HPolytope> {
    let layout = GtLayout::full(&spec.lambda);
    gt_polytope(spec, &layout)
}

/// A slice polytope seen in two coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartedSlice {
    pub side: SideData,
    pub layout: GtLayout,
    /// Free Gelfand-Tsetlin entries; its lattice points are integer patterns.
    pub entry_chart: HPolytope,
    /// Differences of adjacent free entries in each row.
    pub diag_chart: HPolytope,
    pub entry_to_diag: AffineMap,
    pub lattice_note: String,
}

pub const LATTICE_NOTE: &str = "integer points of entry_chart are exactly the integer \
Gelfand-Tsetlin patterns with the given top row and row sums; integer points of \
diag_chart overcount them (adjacent differences satisfy congruence conditions)";

/// Row-sum slice of the Gelfand-Tsetlin polytope of `(P^{m+1}, 0^{n-m-1})`.
pub fn fm_polytope(s: &SideData) -> Result<ChartedSlice> {
    let spec = GtSpec::for_side_data(s);
    let layout = GtLayout::new(&spec.lambda);
    let entry_chart = gt_polytope(&spec, &layout)?;
    let entry_to_diag = difference_map(&layout);
    let diag_chart = entry_chart.affine_image(&entry_to_diag)?;
    Ok(ChartedSlice {
        side: s.clone(),
        layout,
        entry_chart,
        diag_chart,
        entry_to_diag,
        lattice_note: LATTICE_NOTE.to_string(),
    })
}

/// Same as [`fm_polytope`]; for `m = 1` the diagonal chart is the polygon
/// weight polytope.
pub fn gt_slice(s: &SideData) -> Result<ChartedSlice> {
    fm_polytope(s)
}

fn difference_map(layout: &GtLayout) -> AffineMap {
    let pairs = layout.difference_pairs();
    let mut linear = Matrix::zeros(pairs.len(), layout.dim());
    for (row, &(t, i)) in pairs.iter().enumerate() {
        if let (Cell::Var(a), Cell::Var(b)) = (layout.cell(t, i), layout.cell(t, i + 1)) {
            linear[(row, *a)] = Rational::one();
            linear[(row, *b)] = -Rational::one();
        }
    }
    AffineMap::new(linear, vec![Rational::zero(); pairs.len()]).expect("offset matches rows")
}

/// Free entries ↦ differences of adjacent free entries in each row.
pub fn entry_to_diag_map(s: &SideData) -> AffineMap {
    difference_map(&GtLayout::new(&GtSpec::for_side_data(s).lambda))
}
