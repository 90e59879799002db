//! Lattice-point counts of dilates, Ehrhart (quasi-)polynomial fits and the
//! weight multiplicities they are compared against.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, lcm_of_denominators, solve_linear, LinearSolution, Matrix, Rational};
use crate::polytope::{
    combinatorial_fingerprint, count_lattice_points, faces, h_to_v, polytope_dim, HPolytope,
};
use crate::weights::{dual_side_data, fm_polytope, SideData};

/// Lattice-point counts of `tP` for `t = 0..=t_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilateCounts {
    /// `counts[t]`; `counts[0]` is 1 for a nonempty polytope.
    pub counts: Vec<u64>,
    /// Least common multiple of the vertex-coordinate denominators.
    pub period: u64,
}

impl DilateCounts {
    pub fn t_max(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn at(&self, t: u64) -> u64 {
        self.counts[t as usize]
    }
}

pub fn count_dilates(p: &HPolytope, t_max: u64) -> Result<DilateCounts> {
    let vertices = h_to_v(p)?;
    let mut period = BigInt::one();
    for v in vertices.vertices() {
        period = period.lcm(&lcm_of_denominators(v));
    }
    let mut counts = vec![u64::from(!vertices.is_empty())];
    for t in 1..=t_max {
        counts.push(count_lattice_points(p, t)?);
    }
    Ok(DilateCounts {
        counts,
        period: period.to_u64().expect("period fits in u64"),
    })
}

/// One polynomial per residue class of `t` modulo `period`; coefficients
/// are listed from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartFit {
    pub period: u64,
    pub degree: usize,
    pub coefficients: Vec<Vec<Rational>>,
}

impl EhrhartFit {
    pub fn is_polynomial(&self) -> bool {
        self.period == 1
    }

    pub fn evaluate(&self, t: u64) -> Rational {
        let coeffs = &self.coefficients[(t % self.period) as usize];
        let x = int(t as i64);
        coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn leading_coefficient(&self, class: u64) -> Option<&Rational> {
        self.coefficients[class as usize].last()
    }
}

/// Interpolates each residue class through its first `dim + 1` samples and
/// checks that every remaining sample is reproduced.
pub fn ehrhart_fit(c: &DilateCounts, dim: i64) -> Result<EhrhartFit> {
    let period = c.period;
    let available = c.counts.len();
    if dim < 0 {
        if c.counts.iter().any(|&x| x != 0) {
            return Err(Error::FitMismatch);
        }
        return Ok(EhrhartFit {
            period: 1,
            degree: 0,
            coefficients: vec![Vec::new()],
        });
    }
    let degree = dim as usize;
    let needed = period as usize * (degree + 1);
    if available < needed {
        return Err(Error::InsufficientSamples { needed, available });
    }
    let mut coefficients = Vec::with_capacity(period as usize);
    for class in 0..period {
        let ts: Vec<u64> = (class..available as u64).step_by(period as usize).collect();
        let rows: Vec<Vec<Rational>> = ts[..=degree]
            .iter()
            .map(|&t| (0..=degree).map(|k| int(t as i64).pow(k as i32)).collect())
            .collect();
        let a = Matrix::from_rows(degree + 1, rows)?;
        let b: Vec<Rational> = ts[..=degree].iter().map(|&t| int(c.at(t) as i64)).collect();
        let LinearSolution::Unique(mut coeffs) = solve_linear(&a, &b)? else {
            return Err(Error::FitMismatch);
        };
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        coefficients.push(coeffs);
    }
    let fit = EhrhartFit {
        period,
        degree,
        coefficients,
    };
    if (0..available as u64).any(|t| fit.evaluate(t) != int(c.at(t) as i64)) {
        return Err(Error::FitMismatch);
    }
    Ok(fit)
}

/// Weight `r` in the `gl_n` irreducible of highest weight `(P^{m+1}, 0^{n-m-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityQuery {
    pub m: usize,
    pub p: u64,
    pub r: Vec<u64>,
}

impl MultiplicityQuery {
    pub fn new(m: usize, p: u64, r: Vec<u64>) -> Result<Self> {
        if m + 1 > r.len() {
            return Err(Error::InvalidSideData(format!(
                "highest weight needs n >= m + 1, got n = {}",
                r.len()
            )));
        }
        let total: u64 = r.iter().sum();
        if total != (m as u64 + 1) * p {
            return Err(Error::InvalidSideData(format!(
                "weights sum to {total}, expected {}",
                (m as u64 + 1) * p
            )));
        }
        Ok(MultiplicityQuery { m, p, r })
    }

    /// The query for the `t`-th dilate of `s`.
    pub fn from_side_data(s: &SideData, t: u64) -> Result<Self> {
        let scale = |x: &Rational| {
            let y = x * int(t as i64);
            if y.is_integer() {
                y.to_integer().to_u64().ok_or(Error::NonIntegralMultiplicity)
            } else {
                Err(Error::NonIntegralMultiplicity)
            }
        };
        let p = scale(s.p())?;
        let r = s.r().iter().map(scale).collect::<Result<Vec<u64>>>()?;
        MultiplicityQuery::new(s.m(), p, r)
    }
}

/// Jacobi-Trudi: signed sum over permutations of products of complete
/// homogeneous symmetric functions, each coefficient of `x^r` counted as
/// nonnegative integer matrices with prescribed row and column sums.
pub fn weight_multiplicity(q: &MultiplicityQuery) -> BigInt {
    let k = q.m + 1;
    let mut total = BigInt::zero();
    for (perm, sign) in permutations(k) {
        let degrees: Option<Vec<u64>> = (0..k)
            .map(|i| (q.p + perm[i] as u64).checked_sub(i as u64))
            .collect();
        let Some(degrees) = degrees else { continue };
        let c = contingency_count(&degrees, &q.r);
        if sign > 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    total
}

/// Number of nonnegative integer matrices with the given row and column sums.
pub fn contingency_count(rows: &[u64], cols: &[u64]) -> BigInt {
    if rows.iter().sum::<u64>() != cols.iter().sum::<u64>() {
        return BigInt::zero();
    }
    let mut memo: HashMap<(usize, Vec<u64>), BigInt> = HashMap::new();
    fill_columns(0, rows.to_vec(), cols, &mut memo)
}

fn fill_columns(
    j: usize,
    remaining: Vec<u64>,
    cols: &[u64],
    memo: &mut HashMap<(usize, Vec<u64>), BigInt>,
) -> BigInt {
    if j == cols.len() {
        return if remaining.iter().all(|&x| x == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let key = (j, remaining);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let remaining = key.1.clone();
    let mut total = BigInt::zero();
    let mut column = vec![0u64; remaining.len()];
    split_column(0, cols[j], &remaining, &mut column, &mut |col| {
        let next: Vec<u64> = remaining.iter().zip(col).map(|(a, b)| a - b).collect();
        total += fill_columns(j + 1, next, cols, memo);
    });
    memo.insert(key, total.clone());
    total
}

/// Calls `f` on every way to write `left` as a sum bounded by `caps`.
fn split_column(i: usize, left: u64, caps: &[u64], column: &mut [u64], f: &mut dyn FnMut(&[u64])) {
    if i + 1 == caps.len() {
        if left <= caps[i] {
            column[i] = left;
            f(column);
        }
        return;
    }
    for x in 0..=left.min(caps[i]) {
        column[i] = x;
        split_column(i + 1, left - x, caps, column, f);
    }
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(k - 1) {
        // insert k - 1 at each position; moving it left past j entries flips sign j times
        for pos in (0..=p.len()).rev() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let flips = (p.len() - pos) as i32;
            out.push((q, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRow {
    pub dilate: u64,
    pub lattice_count: u64,
    pub multiplicity: BigInt,
    pub pass: bool,
}

/// Entry-chart lattice counts against weight multiplicities at every dilate
/// `t <= t_max` for which `t·P` and `t·r` are integral.
pub fn verify_ehrhart_identity(s: &SideData, t_max: u64) -> Result<Vec<IdentityRow>> {
    let slice = fm_polytope(s)?;
    let mut rows = Vec::new();
    for t in 1..=t_max {
        let query = match MultiplicityQuery::from_side_data(s, t) {
            Ok(q) => q,
            Err(Error::NonIntegralMultiplicity) => continue,
            Err(e) => return Err(e),
        };
        let lattice_count = count_lattice_points(&slice.entry_chart, t)?;
        let multiplicity = weight_multiplicity(&query);
        rows.push(IdentityRow {
            dilate: t,
            lattice_count,
            pass: BigInt::from(lattice_count) == multiplicity,
            multiplicity,
        });
    }
    Ok(rows)
}

/// `2^{mn - 2m - m²}`.
pub fn real_fiber_size(m: usize, n: usize) -> Result<BigInt> {
    if m == 0 || n <= m + 1 {
        return Err(Error::InvalidSideData(format!("need n > m + 1 >= 2, got m = {m}, n = {n}")));
    }
    let exponent = m * n - 2 * m - m * m;
    Ok(BigInt::one() << exponent)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub primal: String,
    pub dual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub primal: SideData,
    pub dual: SideData,
    pub checks: Vec<InvariantCheck>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Compares entry-chart invariants of `s` and its dual side data.
pub fn verify_duality(s: &SideData, t_max: u64) -> Result<DualityReport> {
    let dual = dual_side_data(s)?;
    let a = fm_polytope(s)?.entry_chart;
    let b = fm_polytope(&dual)?.entry_chart;
    let (fa, fb) = (faces(&a)?, faces(&b)?);
    let mut checks = Vec::new();
    let mut check = |name: &str, x: String, y: String| {
        checks.push(InvariantCheck {
            name: name.to_string(),
            pass: x == y,
            primal: x,
            dual: y,
        });
    };
    check("dimension", polytope_dim(&a)?.to_string(), polytope_dim(&b)?.to_string());
    check("vertices", fa.vertices.len().to_string(), fb.vertices.len().to_string());
    check("facets", fa.facets.len().to_string(), fb.facets.len().to_string());
    let counts = |p: &HPolytope| -> Result<String> {
        let c = count_dilates(p, t_max)?;
        Ok(format!("{:?}", &c.counts[1..]))
    };
    check("dilate counts", counts(&a)?, counts(&b)?);
    let fingerprint = |p: &HPolytope| match combinatorial_fingerprint(p) {
        Ok(f) => format!("{f:?}"),
        Err(e) => e.to_string(),
    };
    check("fingerprint", fingerprint(&a), fingerprint(&b));
    Ok(DualityReport {
        primal: s.clone(),
        dual,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::polytope::polytope_dim;
    use crate::weights::polygon_hrep;

    fn q(m: usize, p: u64, r: &[u64]) -> BigInt {
        weight_multiplicity(&MultiplicityQuery::new(m, p, r.to_vec()).unwrap())
    }

    #[test]
    fn bounded_compositions() {
        // f(a) = #{0 <= α <= r, |α| = a}
        let r = [3, 3, 3, 3, 4];
        assert_eq!(contingency_count(&[8, 8], &r), BigInt::from(186));
        assert_eq!(contingency_count(&[9, 7], &r), BigInt::from(175));
        assert_eq!(contingency_count(&[1, 1], &[1, 1]), BigInt::from(2));
        assert_eq!(contingency_count(&[2], &[1]), BigInt::zero());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(q(1, 8, &[3, 3, 3, 3, 4]), BigInt::from(11));
        assert_eq!(q(1, 2, &[1, 1, 1, 1]), BigInt::from(2));
        assert_eq!(q(1, 5, &[5, 5]), BigInt::one());
        assert_eq!(q(1, 4, &[1, 1, 1, 5]), BigInt::zero());
        // (2,2,0,0) has dimension 20 as a sum over dominant-weight orbits
        assert_eq!(q(1, 2, &[2, 2, 0, 0]), BigInt::one());
        assert_eq!(q(1, 2, &[2, 1, 1, 0]), BigInt::one());
        assert_eq!(q(1, 2, &[1, 1, 1, 1]), BigInt::from(2));
        assert_eq!(q(0, 3, &[3, 0]), BigInt::one());
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i32>(), 0);
        let id = perms.iter().find(|p| p.0 == vec![0, 1, 2]).unwrap();
        assert_eq!(id.1, 1);
        let swap = perms.iter().find(|p| p.0 == vec![1, 0, 2]).unwrap();
        assert_eq!(swap.1, -1);
    }

    #[test]
    fn query_validation() {
        assert!(MultiplicityQuery::new(1, 3, vec![1, 1, 1, 1]).is_err());
        let s = SideData::from_i64(1, &[3, 3, 3, 3, 3]).unwrap();
        assert_eq!(
            MultiplicityQuery::from_side_data(&s, 1),
            Err(Error::NonIntegralMultiplicity)
        );
        assert_eq!(MultiplicityQuery::from_side_data(&s, 2).unwrap().p, 15);
    }

    #[test]
    fn segment_and_square_fits() {
        let seg = HPolytope::from_i64(1, &[(&[1], 1), (&[-1], 0)], &[]).unwrap();
        let c = count_dilates(&seg, 3).unwrap();
        assert_eq!(c.counts, vec![1, 2, 3, 4]);
        let sq = HPolytope::from_i64(
            2,
            &[(&[1, 0], 1), (&[-1, 0], 0), (&[0, 1], 1), (&[0, -1], 0)],
            &[],
        )
        .unwrap();
        let fit = ehrhart_fit(&count_dilates(&sq, 4).unwrap(), 2).unwrap();
        assert!(fit.is_polynomial());
        assert_eq!(fit.coefficients, vec![vec![int(1), int(2), int(1)]]);
        assert_eq!(
            ehrhart_fit(&count_dilates(&sq, 1).unwrap(), 2),
            Err(Error::InsufficientSamples {
                needed: 3,
                available: 2
            })
        );
    }

    #[test]
    fn empty_counts() {
        let empty = polygon_hrep(&SideData::from_i64(1, &[1, 1, 1, 5]).unwrap()).unwrap();
        let c = count_dilates(&empty, 3).unwrap();
        assert_eq!(c.counts, vec![0, 0, 0, 0]);
        assert!(ehrhart_fit(&c, -1).is_ok());
    }

    #[test]
    fn pentagon_area() {
        let p = polygon_hrep(&SideData::from_i64(1, &[3, 3, 3, 3, 3]).unwrap()).unwrap();
        let fit = ehrhart_fit(&count_dilates(&p, 3).unwrap(), 2).unwrap();
        assert_eq!(fit.leading_coefficient(0), Some(&ratio(45, 2)));
        assert_eq!(fit.evaluate(1), int(31));
    }

    #[test]
    fn half_integral_slice_is_quasi() {
        let s = SideData::from_i64(1, &[3, 3, 3, 3, 3]).unwrap();
        let slice = fm_polytope(&s).unwrap();
        let c = count_dilates(&slice.entry_chart, 5).unwrap();
        assert_eq!(c.period, 2);
        assert_eq!(c.at(1), 0);
        let fit = ehrhart_fit(&c, polytope_dim(&slice.entry_chart).unwrap()).unwrap();
        assert!(!fit.is_polynomial());
        assert_eq!(fit.coefficients[1], vec![int(0)]);
    }

    #[test]
    fn identity_examples() {
        let hex = verify_ehrhart_identity(&SideData::from_i64(1, &[3, 3, 3, 3, 4]).unwrap(), 3).unwrap();
        assert_eq!(hex.len(), 3);
        assert!(hex.iter().all(|r| r.pass));
        assert_eq!(hex[0].lattice_count, 11);

        let pent = verify_ehrhart_identity(&SideData::from_i64(1, &[3, 3, 3, 3, 3]).unwrap(), 4).unwrap();
        let dilates: Vec<u64> = pent.iter().map(|r| r.dilate).collect();
        assert_eq!(dilates, vec![2, 4]);
        assert!(pent.iter().all(|r| r.pass));
    }

    #[test]
    fn fibers() {
        assert_eq!(real_fiber_size(1, 5).unwrap(), BigInt::from(4));
        assert_eq!(real_fiber_size(1, 6).unwrap(), BigInt::from(8));
        assert_eq!(real_fiber_size(2, 6).unwrap(), BigInt::from(16));
        assert!(real_fiber_size(2, 3).is_err());
    }

    #[test]
    fn duality_examples() {
        let report = verify_duality(&SideData::from_i64(1, &[3, 3, 3, 3, 4]).unwrap(), 3).unwrap();
        assert!(report.pass(), "{report:?}");
        let self_dual = verify_duality(&SideData::from_i64(1, &[1, 1, 1, 1]).unwrap(), 3).unwrap();
        assert_eq!(self_dual.dual, self_dual.primal);
        assert!(self_dual.pass());
    }
}
