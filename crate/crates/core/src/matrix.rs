//! Exact linear algebra over scalars, polynomials and rational functions.
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry stays in
//! the coefficient domain, with divisions that are exact by construction.
//! Rational-function matrices are handled by clearing denominators row by
//! row, which changes neither rank nor kernel.

use crate::error::{usage, Result};
use crate::poly::MultiPoly;
use crate::ratfun::RationalFunction;
use crate::scalar::Scalar;

/// Entry domain for fraction-free elimination: an integral domain with
/// exact division.
pub trait Domain: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` when the quotient lies in the domain.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Domain for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Scalar::div(self, other)
    }
}

impl Domain for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.field().clone(), self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.field().clone(), self.nvars())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, other)
    }
}

impl Domain for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.field().clone(), self.nvars())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.field().clone(), self.nvars())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        RationalFunction::div(self, other).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut rows = Vec::with_capacity(self.cols);
        for c in 0..self.cols {
            rows.push((0..self.rows).map(|r| self.at(r, c).clone()).collect());
        }
        Matrix::from_rows(rows)
    }
}

pub struct Echelon<T> {
    pub mat: Matrix<T>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
    pub sign: i32,
    /// Final pivot (the rank-sized leading minor up to sign); `None` for the
    /// empty elimination.
    pub last_pivot: Option<T>,
}

/// Fraction-free (Bareiss) row echelon form.
pub fn echelon<T: Domain>(mut m: Matrix<T>) -> Echelon<T> {
    let rows = m.rows;
    let cols = m.cols;
    let mut pivot_cols = Vec::new();
    let mut sign = 1;
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !m.at(i, c).is_zero()) else {
            continue;
        };
        if pivot_row != r {
            for j in 0..cols {
                let a = m.at(r, j).clone();
                let b = m.at(pivot_row, j).clone();
                m.set(r, j, b);
                m.set(pivot_row, j, a);
            }
            sign = -sign;
        }
        let pivot = m.at(r, c).clone();
        for i in r + 1..rows {
            let factor = m.at(i, c).clone();
            for j in 0..cols {
                let val = pivot.mul(m.at(i, j)).sub(&factor.mul(m.at(r, j)));
                let val = match &prev {
                    Some(p) => val.div_exact(p).expect("Bareiss division is exact"),
                    None => val,
                };
                m.set(i, j, val);
            }
        }
        prev = Some(pivot);
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        rank: pivot_cols.len(),
        last_pivot: prev,
        mat: m,
        pivot_cols,
        sign,
    }
}

pub fn rank<T: Domain>(m: &Matrix<T>) -> usize {
    echelon(m.clone()).rank
}

/// Determinant of a square matrix; the zero element for singular input.
pub fn det<T: Domain>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert!(m.rows > 0, "determinant of an empty matrix");
    let zero = m.at(0, 0).zero_like();
    let e = echelon(m.clone());
    if e.rank < m.rows {
        return zero;
    }
    let p = e.last_pivot.expect("nonempty elimination");
    if e.sign < 0 {
        p.neg()
    } else {
        p
    }
}

/// Basis of the right null space, entries in the domain.
///
/// Uses scaled back-substitution over the echelon form: each divison is
/// exact because the running numerators keep the prefix product of pivots
/// as a factor.
pub fn kernel_basis<T: Domain>(m: &Matrix<T>) -> Vec<Vec<T>> {
    assert!(m.rows > 0 && m.cols > 0, "kernel of an empty matrix");
    let zero = m.at(0, 0).zero_like();
    let one = m.at(0, 0).one_like();
    let e = echelon(m.clone());
    let r = e.rank;
    let pivots = &e.pivot_cols;
    let free_cols: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    // Product of all pivot diagonal entries.
    let mut diag_prod = one.clone();
    for (i, &pc) in pivots.iter().enumerate() {
        diag_prod = diag_prod.mul(e.mat.at(i, pc));
    }
    for &f in &free_cols {
        let mut v = vec![zero.clone(); m.cols];
        v[f] = diag_prod.clone();
        for i in (0..r).rev() {
            // Only pivot columns to the right of pivot i and the free column
            // itself contribute; columns left of pivot i are zero in row i.
            if pivots[i] > f {
                continue;
            }
            let mut acc = e.mat.at(i, f).mul(&v[f]).neg();
            for (_, &pc) in pivots.iter().enumerate().skip(i + 1) {
                if pc > f {
                    break;
                }
                acc = acc.sub(&e.mat.at(i, pc).mul(&v[pc]));
            }
            v[pivots[i]] = acc
                .div_exact(e.mat.at(i, pivots[i]))
                .expect("scaled back-substitution is exact");
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product.
pub fn mat_vec<T: Domain>(m: &Matrix<T>, v: &[T]) -> Vec<T> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|r| {
            let mut acc = v
                .first()
                .map_or_else(|| m.at(r, 0).zero_like(), |x| x.zero_like());
            for c in 0..m.cols {
                acc = acc.add(&m.at(r, c).mul(&v[c]));
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form over a field of scalars; returns pivot columns.
pub fn rref_scalar(m: &mut Matrix<Scalar>) -> Vec<usize> {
    let rows = m.rows;
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.at(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let a = m.at(r, j).clone();
                let b = m.at(p, j).clone();
                m.set(r, j, b);
                m.set(p, j, a);
            }
        }
        let inv = m.at(r, c).inv().expect("nonzero pivot");
        for j in 0..cols {
            let v = m.at(r, j).mul(&inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.at(i, c).is_zero() {
                continue;
            }
            let f = m.at(i, c).clone();
            for j in 0..cols {
                let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve A x = b over the scalar field; `None` when inconsistent. Free
/// variables are set to zero.
pub fn solve_scalar(a: &Matrix<Scalar>, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows, b.len());
    if a.cols == 0 {
        return b.iter().all(Scalar::is_zero).then_some(Vec::new());
    }
    let field = a.at(0, 0).field().clone();
    let mut aug = Matrix::from_rows(
        (0..a.rows)
            .map(|r| {
                let mut row: Vec<Scalar> = a.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect(),
    );
    let pivots = rref_scalar(&mut aug);
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug.at(i, a.cols).clone();
    }
    Some(x)
}

/// Null space basis over the scalar field (reduced, deterministic).
pub fn nullspace_scalar(a: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    if a.rows == 0 || a.cols == 0 {
        return Vec::new();
    }
    let field = a.at(0, 0).field().clone();
    let mut m = a.clone();
    let pivots = rref_scalar(&mut m);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); a.cols];
            v[f] = field.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = m.at(i, f).neg();
            }
            v
        })
        .collect()
}

pub struct RankKernelDet {
    pub rank: usize,
    pub kernel: Vec<Vec<RationalFunction>>,
    pub det: Option<RationalFunction>,
}

/// Rank, right kernel and determinant of a rational-function matrix.
///
/// Rows are scaled by their denominators to land in the polynomial ring,
/// where Bareiss elimination runs without fractions; row scaling preserves
/// both rank and kernel, and the determinant is rescaled afterwards.
pub fn rank_kernel_det(m: &Matrix<RationalFunction>) -> Result<RankKernelDet> {
    if m.rows == 0 || m.cols == 0 {
        return Err(usage("rank_kernel_det of an empty matrix"));
    }
    let field = m.at(0, 0).field().clone();
    let nvars = m.at(0, 0).nvars();
    let mut poly_rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(m.rows);
    let mut scalings: Vec<RationalFunction> = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut scale = RationalFunction::one(field.clone(), nvars);
        for c in 0..m.cols {
            let den = m.at(r, c).den().clone();
            if !den.is_one() {
                scale = scale.mul(&RationalFunction::from_poly(den));
            }
        }
        let row: Vec<MultiPoly> = (0..m.cols)
            .map(|c| {
                m.at(r, c)
                    .mul(&scale)
                    .as_poly()
                    .expect("row scaled by the product of its denominators")
            })
            .collect();
        poly_rows.push(row);
        scalings.push(scale);
    }
    let pm = Matrix::from_rows(poly_rows);
    let e = echelon(pm.clone());
    let kernel = kernel_basis(&pm)
        .into_iter()
        .map(|v| v.into_iter().map(RationalFunction::from_poly).collect())
        .collect();
    let det = if m.rows == m.cols {
        let d = if e.rank < m.rows {
            RationalFunction::zero(field, nvars)
        } else {
            let p = e.last_pivot.clone().expect("nonempty elimination");
            let mut d = RationalFunction::from_poly(p);
            if e.sign < 0 {
                d = d.neg();
            }
            for s in &scalings {
                d = d.div(s).expect("row scaling is nonzero");
            }
            d
        };
        Some(d)
    } else {
        None
    };
    Ok(RankKernelDet {
        rank: e.rank,
        kernel,
        det,
    })
}
