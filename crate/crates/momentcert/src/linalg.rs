//! Exact symmetric-matrix algebra over an exact scalar field.
//!
//! Rank is computed by Bareiss-style fraction-free elimination with full
//! pivoting (integer inputs stay integer throughout), kernel bases by
//! reduced row echelon form with columns rescaled to coprime integers,
//! characteristic polynomials by the Faddeev-LeVerrier recurrence, and
//! positive semidefiniteness from the sign pattern of the characteristic
//! polynomial: a symmetric matrix is PSD exactly when every elementary
//! symmetric function of its (real) eigenvalues is nonnegative. This
//! gives one uniform criterion that is valid for singular matrices, with
//! no zero-pivot special cases.
//!
//! All operations are pure functions of their inputs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    NotSquare,
    NotSymmetric,
    DimensionMismatch,
    /// Congruence transform by a singular matrix.
    SingularTransform,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotSquare => write!(f, "matrix is not square"),
            LinalgError::NotSymmetric => write!(f, "matrix is not symmetric"),
            LinalgError::DimensionMismatch => write!(f, "matrix dimensions do not match"),
            LinalgError::SingularTransform => write!(f, "congruence transform is singular"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<T>>, rows: usize) -> Self {
        assert!(cols.iter().all(|col| col.len() == rows), "ragged columns");
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
            }
            acc
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rank by fraction-free Gaussian elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<T>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut prev = T::one();
        let mut r = 0;
        for step in 0..m.min(n) {
            // full pivoting: first nonzero entry of the trailing block
            let pivot = (step..m)
                .flat_map(|i| (step..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            a.swap(step, pi);
            if pj != step {
                for row in a.iter_mut() {
                    row.swap(step, pj);
                }
            }
            for i in step + 1..m {
                for j in step + 1..n {
                    let num = a[step][step].clone() * a[i][j].clone()
                        - a[i][step].clone() * a[step][j].clone();
                    a[i][j] = num / prev.clone();
                }
                a[i][step] = T::zero();
            }
            prev = a[step][step].clone();
            r += 1;
        }
        r
    }

    /// Exact determinant by the same fraction-free elimination.
    pub fn determinant(&self) -> Result<T, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a: Vec<Vec<T>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut prev = T::one();
        let mut negate = false;
        for step in 0..n {
            let pivot = (step..n)
                .flat_map(|i| (step..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return Ok(T::zero()),
            };
            if pi != step {
                a.swap(step, pi);
                negate = !negate;
            }
            if pj != step {
                for row in a.iter_mut() {
                    row.swap(step, pj);
                }
                negate = !negate;
            }
            for i in step + 1..n {
                for j in step + 1..n {
                    let num = a[step][step].clone() * a[i][j].clone()
                        - a[i][step].clone() * a[step][j].clone();
                    a[i][j] = num / prev.clone();
                }
            }
            prev = a[step][step].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// One solution of `A x = rhs`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve_consistent(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<T>> = (0..m)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pr);
            let inv = T::one() / a[row][col].clone();
            for j in col..=n {
                a[row][j] = a[row][j].clone() * inv.clone();
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in col..=n {
                        a[r][j] = a[r][j].clone() - factor.clone() * a[row][j].clone();
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        for r in row..m {
            if !a[r][n].is_zero() {
                return None;
            }
        }
        let mut x = vec![T::zero(); n];
        for &(pr, pc) in &pivots {
            x[pc] = a[pr][n].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel, one column per free variable of the
    /// reduced row echelon form. Columns are rescaled to a canonical
    /// representative (coprime integers for rational input), with the
    /// free coordinate kept positive.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<T>> = (0..m)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pr);
            let inv = T::one() / a[row][col].clone();
            for j in col..n {
                a[row][j] = a[row][j].clone() * inv.clone();
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in col..n {
                        a[r][j] = a[r][j].clone() - factor.clone() * a[row][j].clone();
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![T::zero(); n];
            v[free] = T::one();
            for &(pr, pc) in &pivots {
                v[pc] = -a[pr][free].clone();
            }
            T::normalize_column(&mut v);
            basis.push(v);
        }
        basis
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Symmetric matrix; symmetry is checked on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix<T> {
    mat: Matrix<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn new(mat: Matrix<T>) -> Result<Self, LinalgError> {
        if mat.rows() != mat.cols() {
            return Err(LinalgError::NotSquare);
        }
        if !mat.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        Ok(SymMatrix { mat })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        SymMatrix::new(Matrix::from_rows(rows))
    }

    /// Build from the upper triangle: `f` is only consulted for `i <= j`.
    pub fn from_fn_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.set(j, i, v.clone());
                m.set(i, j, v);
            }
        }
        SymMatrix { mat: m }
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        self.mat.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn determinant(&self) -> T {
        self.mat.determinant().expect("square by construction")
    }

    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        self.mat.kernel_basis()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.size() {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    /// Characteristic polynomial `det(lambda I - A)` via the
    /// Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> CharPoly<T> {
        let n = self.size();
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(T::one());
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            let am = self.mat.mul(&m);
            let mut tr = T::zero();
            for i in 0..n {
                tr = tr + am.get(i, i).clone();
            }
            let ck = -tr / T::from_int(k as i64);
            coeffs.push(ck.clone());
            m = am;
            for i in 0..n {
                let v = m.get(i, i).clone() + ck.clone();
                m.set(i, i, v);
            }
        }
        CharPoly { coeffs }
    }

    /// Exact positive-semidefiniteness test: all elementary symmetric
    /// functions of the eigenvalues must be nonnegative.
    pub fn is_psd(&self) -> bool {
        let cp = self.char_poly();
        (1..=self.size()).all(|k| cp.elem_sym(k).signum() >= 0)
    }

    /// Congruence transform `T^t A T`; rank and PSD status are invariant.
    pub fn congruence(&self, t: &Matrix<T>) -> Result<SymMatrix<T>, LinalgError> {
        if t.rows() != self.size() || t.cols() != self.size() {
            return Err(LinalgError::DimensionMismatch);
        }
        if t.rank() != self.size() {
            return Err(LinalgError::SingularTransform);
        }
        let product = t.transpose().mul(&self.mat.mul(t));
        debug_assert!(product.is_symmetric());
        Ok(SymMatrix { mat: product })
    }

    /// Principal submatrix on the given index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> SymMatrix<T> {
        let mat = Matrix::from_fn(idx.len(), idx.len(), |i, j| {
            self.get(idx[i], idx[j]).clone()
        });
        SymMatrix { mat }
    }
}

impl<T: Scalar> fmt::Debug for SymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mat.fmt(f)
    }
}

/// Coefficients of `det(lambda I - A)` in descending powers, leading 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CharPoly<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `lambda^(n-k)`.
    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `e_k`, the sum of all k-by-k principal minors (equivalently the
    /// k-th elementary symmetric function of the eigenvalues); the
    /// coefficient of `lambda^(n-k)` is `(-1)^k e_k`.
    pub fn elem_sym(&self, k: usize) -> T {
        let c = self.coeffs[k].clone();
        if k % 2 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in &self.coeffs {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rational};
    use alloc::vec;

    fn sym(rows: Vec<Vec<i64>>) -> SymMatrix<Rational> {
        SymMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rational::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_basics() {
        assert_eq!(
            SymMatrix::<Rational>::from_fn_upper(4, |_, _| Rational::zero()).rank(),
            0
        );
        assert_eq!(Matrix::<Rational>::identity(5).rank(), 5);
        assert_eq!(
            sym(vec![vec![3, 16, 2], vec![16, 198, 2], vec![2, 2, 2]]).rank(),
            2
        );
        assert_eq!(
            sym(vec![vec![3, 17, 2], vec![17, 228, 2], vec![2, 2, 2]]).rank(),
            3
        );
    }

    #[test]
    fn kernel_examples() {
        let a = sym(vec![vec![1, 3, 3], vec![3, 16, 2], vec![3, 2, 16]]);
        assert_eq!(
            a.kernel_basis(),
            vec![vec![rat(-6, 1), rat(1, 1), rat(1, 1)]]
        );

        assert!(Matrix::<Rational>::identity(3).kernel_basis().is_empty());

        // spans (1, -1)
        let b = sym(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(b.kernel_basis(), vec![vec![rat(-1, 1), rat(1, 1)]]);

        let m31 = sym(vec![vec![3, 16, 2], vec![16, 198, 2], vec![2, 2, 2]]);
        assert_eq!(
            m31.kernel_basis(),
            vec![vec![rat(-14, 1), rat(1, 1), rat(13, 1)]]
        );
    }

    #[test]
    fn char_poly_robinson_blocks() {
        // eigenvalues {0, 3, 17}
        let a = sym(vec![vec![8, 6, 6], vec![6, 6, 3], vec![6, 3, 6]]);
        assert_eq!(
            a.char_poly().coeffs(),
            &[rat(1, 1), rat(-20, 1), rat(51, 1), rat(0, 1)]
        );
        // eigenvalues {0, 4, 17}
        let b = sym(vec![vec![9, 6, 6], vec![6, 6, 2], vec![6, 2, 6]]);
        assert_eq!(
            b.char_poly().coeffs(),
            &[rat(1, 1), rat(-21, 1), rat(68, 1), rat(0, 1)]
        );
        let id2 = sym(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(id2.char_poly().coeffs(), &[rat(1, 1), rat(-2, 1), rat(1, 1)]);
    }

    #[test]
    fn psd_examples() {
        assert!(sym(vec![vec![2, 2], vec![2, 3]]).is_psd());
        assert!(!sym(vec![vec![0, 1], vec![1, 0]]).is_psd());
        // singular PSD
        assert!(sym(vec![vec![8, 6, 6], vec![6, 6, 3], vec![6, 3, 6]]).is_psd());
        assert!(sym(vec![vec![1, 1], vec![1, 1]]).is_psd());
        assert!(!sym(vec![vec![-1, 0], vec![0, 4]]).is_psd());
    }

    #[test]
    fn congruence_identity_and_errors() {
        let a = sym(vec![vec![2, 1], vec![1, 5]]);
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(a.congruence(&id).unwrap(), a);

        let singular = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ]);
        assert_eq!(a.congruence(&singular), Err(LinalgError::SingularTransform));
    }

    #[test]
    fn symmetry_enforced_on_construction() {
        let bad = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(3, 1), rat(4, 1)],
        ]);
        assert_eq!(SymMatrix::new(bad), Err(LinalgError::NotSymmetric));
    }

    // brute-force oracle: PSD iff every principal minor is nonnegative
    fn psd_by_minors(a: &SymMatrix<Rational>) -> bool {
        let n = a.size();
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if a.principal_submatrix(&idx).determinant().is_negative() {
                return false;
            }
        }
        true
    }

    #[test]
    fn randomized_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(1..=5);
            let a = SymMatrix::from_fn_upper(n, |_, _| Rational::from(rng.gen_range(-4i64..=4)));

            // rank-nullity
            assert_eq!(a.rank() + a.kernel_basis().len(), n);

            // PSD criterion agrees with the principal-minor oracle
            assert_eq!(a.is_psd(), psd_by_minors(&a));

            // char poly endpoints: constant term and trace
            let cp = a.char_poly();
            let det = a.determinant();
            let signed = if n % 2 == 1 { -det.clone() } else { det.clone() };
            assert_eq!(cp.coeff(n), &signed);
            assert_eq!(cp.coeff(1), &-a.trace());
            assert_eq!(cp.eval(&Rational::zero()), signed);

            // congruence invariance under a random invertible integer map
            let t = loop {
                let cand = Matrix::from_fn(n, n, |_, _| Rational::from(rng.gen_range(-3i64..=3)));
                if cand.rank() == n {
                    break cand;
                }
            };
            let b = a.congruence(&t).unwrap();
            assert_eq!(b.rank(), a.rank());
            assert_eq!(b.is_psd(), a.is_psd());
        }
    }

    #[test]
    fn solve_consistent_examples() {
        let a = Matrix::from_rows(vec![
            vec![rat(2, 1), rat(1, 1)],
            vec![rat(4, 1), rat(2, 1)],
        ]);
        // consistent singular system
        let x = a.solve_consistent(&[rat(3, 1), rat(6, 1)]).unwrap();
        assert_eq!(
            a.mul(&Matrix::from_columns(vec![x], 2)),
            Matrix::from_columns(vec![vec![rat(3, 1), rat(6, 1)]], 2)
        );
        // inconsistent
        assert!(a.solve_consistent(&[rat(3, 1), rat(7, 1)]).is_none());
    }

    // every kernel vector is annihilated, and the basis has full rank
    #[test]
    fn kernel_is_kernel() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let m = Matrix::from_fn(rows, cols, |_, _| Rational::from(rng.gen_range(-3i64..=3)));
            let ker = m.kernel_basis();
            assert_eq!(m.rank() + ker.len(), cols);
            for v in &ker {
                let vm = Matrix::from_columns(vec![v.clone()], cols);
                let prod = m.mul(&vm);
                assert!((0..rows).all(|i| prod.get(i, 0).is_zero()));
            }
            if !ker.is_empty() {
                let km = Matrix::from_columns(ker.clone(), cols);
                assert_eq!(km.rank(), ker.len());
            }
        }
    }
}
