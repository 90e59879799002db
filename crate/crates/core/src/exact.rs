//! Exact rational and integer linear algebra.
//!
//! Scalars are [`BigRational`], which keeps every value reduced with a
//! positive denominator, so structural equality is numeric equality.
//! Lattice vectors are plain `Vec<BigInt>`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Vector = Vec<Rational>;
pub type LatticeVector = Vec<BigInt>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&v| int(v)).collect()
}

pub fn lattice(entries: &[i64]) -> LatticeVector {
    entries.iter().map(|&v| BigInt::from(v)).collect()
}

/// Parses `"p/q"` or `"p"`. A zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn parse_rational_list(text: &str) -> Result<Vector> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_rational(v: &[BigInt]) -> Vector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn lcm_of_denominators(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Divides out the gcd of the entries, preserving direction.
pub fn primitive_vector(v: &[BigInt]) -> Result<LatticeVector> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Positive rational multiple of `v` with coprime integer entries.
pub fn primitive_direction(v: &[Rational]) -> Result<LatticeVector> {
    let l = lcm_of_denominators(v);
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive_vector(&scaled)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from explicit rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| vector(r)).collect())
            .expect("ragged integer matrix")
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank(&self.row_vecs())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut [Vector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work[r][f].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vector),
    NoSolution,
    Underdetermined,
}

/// Solves `a · x = b` exactly. Overdetermined consistent systems with a
/// unique solution are reported as [`LinearSolution::Unique`].
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<LinearSolution> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.ncols();
    let mut aug: Vec<Vector> = (0..a.nrows())
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return Ok(LinearSolution::NoSolution);
    }
    if pivots.len() < n {
        return Ok(LinearSolution::Underdetermined);
    }
    Ok(LinearSolution::Unique(
        (0..n).map(|i| aug[i][n].clone()).collect(),
    ))
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(rows: &[LatticeVector]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<LatticeVector> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `|det|` of `d` rays in dimension `d`; 1 exactly when they form a lattice basis.
pub fn lattice_index(rays: &[LatticeVector]) -> Result<BigInt> {
    let d = rays.len();
    if let Some(bad) = rays.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    let det = bareiss_determinant(rays);
    if det.is_zero() {
        return Err(Error::RaysNotFullRank);
    }
    Ok(det.abs())
}

/// Index of the lattice spanned by `rays` inside `Z^dim`, as the gcd of
/// the maximal minors. Zero when the rays do not span.
pub fn sublattice_index(rays: &[LatticeVector], dim: usize) -> BigInt {
    if rays.len() < dim {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    for subset in combinations(rays.len(), dim) {
        let sub: Vec<LatticeVector> = subset.iter().map(|&i| rays[i].clone()).collect();
        g = g.gcd(&bareiss_determinant(&sub));
    }
    g
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Column reduction `A · U = [H | 0]` with `U` unimodular and `H` lower
/// triangular with nonzero diagonal. Requires linearly independent rows.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub h: Vec<LatticeVector>,
    pub u: Vec<LatticeVector>,
    pub u_inv: Vec<LatticeVector>,
}

pub fn column_echelon(a: &[LatticeVector], ncols: usize) -> Result<ColumnEchelon> {
    let e = a.len();
    let mut m: Vec<LatticeVector> = a.to_vec();
    let mut u: Vec<LatticeVector> = (0..ncols)
        .map(|i| (0..ncols).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut u_inv = u.clone();
    for i in 0..e {
        for k in i + 1..ncols {
            if m[i][k].is_zero() {
                continue;
            }
            let a_ = m[i][i].clone();
            let b_ = m[i][k].clone();
            let ext = a_.extended_gcd(&b_);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let bg = &b_ / &g;
            let ag = &a_ / &g;
            // columns i, k of m and u: new_i = x c_i + y c_k, new_k = -bg c_i + ag c_k
            let apply = |rows: &mut Vec<LatticeVector>| {
                for row in rows.iter_mut() {
                    let ci = row[i].clone();
                    let ck = row[k].clone();
                    row[i] = &x * &ci + &y * &ck;
                    row[k] = &ag * &ck - &bg * &ci;
                }
            };
            apply(&mut m);
            apply(&mut u);
            // rows i, k of the inverse: new_i = ag r_i + bg r_k, new_k = -y r_i + x r_k
            let ri = u_inv[i].clone();
            let rk = u_inv[k].clone();
            u_inv[i] = ri.iter().zip(&rk).map(|(p, q)| &ag * p + &bg * q).collect();
            u_inv[k] = ri.iter().zip(&rk).map(|(p, q)| &x * q - &y * p).collect();
        }
        if m[i][i].is_zero() {
            return Err(Error::RaysNotFullRank);
        }
    }
    let h = m.iter().map(|row| row[..e].to_vec()).collect();
    Ok(ColumnEchelon { h, u, u_inv })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn li(rows: &[&[i64]]) -> Vec<LatticeVector> {
        rows.iter().map(|r| lattice(r)).collect()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_vector(&lattice(&[2, 4])).unwrap(), lattice(&[1, 2]));
        assert_eq!(
            primitive_vector(&lattice(&[-3, 6])).unwrap(),
            lattice(&[-1, 2])
        );
        assert_eq!(
            primitive_vector(&lattice(&[5, 0, 0])).unwrap(),
            lattice(&[1, 0, 0])
        );
        assert_eq!(
            primitive_vector(&lattice(&[0, 0])),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn lattice_index_examples() {
        assert_eq!(lattice_index(&li(&[&[1, 0], &[0, 1]])).unwrap(), 1.into());
        assert_eq!(lattice_index(&li(&[&[-1, 1], &[1, 1]])).unwrap(), 2.into());
        assert_eq!(lattice_index(&li(&[&[1, 0], &[-1, -1]])).unwrap(), 1.into());
        assert_eq!(
            lattice_index(&li(&[&[1, 2], &[2, 4]])),
            Err(Error::RaysNotFullRank)
        );
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(2);
        assert_eq!(
            solve_linear(&id, &vector(&[3, 0])).unwrap(),
            LinearSolution::Unique(vector(&[3, 0]))
        );
        let a = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(
            solve_linear(&a, &vector(&[3, 3])).unwrap(),
            LinearSolution::Unique(vector(&[3, 0]))
        );
        let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            solve_linear(&a, &vector(&[1, 1])).unwrap(),
            LinearSolution::NoSolution
        );
        assert_eq!(
            solve_linear(&a, &vector(&[1, 2])).unwrap(),
            LinearSolution::Underdetermined
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(ratio(3, 2).to_string(), "3/2");
    }

    #[test]
    fn echelon_is_unimodular_reduction() {
        let a = li(&[&[2, 4, 6, 1], &[0, 3, 9, 2]]);
        let ce = column_echelon(&a, 4).unwrap();
        // A U has zeros past the pivot block.
        for row in &a {
            for j in 0..4 {
                let v: BigInt = (0..4).map(|k| &row[k] * &ce.u[k][j]).sum();
                if j >= 2 {
                    assert!(v.is_zero());
                }
            }
        }
        assert_eq!(bareiss_determinant(&ce.u).abs(), BigInt::one());
        for i in 0..4 {
            for j in 0..4 {
                let v: BigInt = (0..4).map(|k| &ce.u[i][k] * &ce.u_inv[k][j]).sum();
                assert_eq!(v, BigInt::from((i == j) as i64));
            }
        }
    }

    #[test]
    fn sublattice_index_of_spanning_set() {
        let rays = li(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(sublattice_index(&rays, 2), 2.into());
        assert_eq!(combinations(4, 2).len(), 6);
    }
}
