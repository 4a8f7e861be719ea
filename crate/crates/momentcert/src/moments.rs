//! Pseudo-moment vectors, moment matrices, and the extreme-ray test.
//!
//! A pseudo-moment vector `y` lists one value per degree-2d monomial; the
//! moment matrix `M_d(y)` has entry `y_(alpha+beta)` at the pair of
//! degree-d monomials `(alpha, beta)`. The vector certifies that a form
//! `p` is not a sum of squares when `M_d(y)` is positive semidefinite and
//! the functional value `l_y(p)` is strictly negative; [`verify_certificate`]
//! performs exactly those two checks (plus rank and optional extremality
//! data).
//!
//! Extremality is decided by the kernel-stacking rank test: with `U` a
//! kernel basis of `M_d(y)` and `M_k` the coordinate matrices of the
//! moment-matrix pencil, `y` spans an extreme ray of the pseudo-moment
//! cone iff the stacked matrix `B = [vec(M_1 U) ... vec(M_m U)]` has
//! rank `m - 1`.

use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{Rational, Scalar};
use crate::forms::{evaluate_functional, named_form, Form, FormError, FormId, FormSpace, MultiIndex};
use crate::linalg::{Matrix, SymMatrix};
use crate::symmetry;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentError {
    /// Moment vectors need an even degree.
    OddDegree,
    /// Value list length differs from the space dimension.
    WrongLength { expected: usize, got: usize },
    /// The extreme-ray test requires a PSD moment matrix.
    NotPsd,
    Form(FormError),
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::OddDegree => write!(f, "pseudo-moment vectors have even degree"),
            MomentError::WrongLength { expected, got } => {
                write!(f, "expected {expected} moment values, got {got}")
            }
            MomentError::NotPsd => write!(f, "moment matrix is not positive semidefinite"),
            MomentError::Form(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MomentError {}

impl From<FormError> for MomentError {
    fn from(e: FormError) -> Self {
        MomentError::Form(e)
    }
}

/// Linear functional on degree-2d forms, stored densely in graded-lex
/// coordinate order.
#[derive(Clone, PartialEq, Eq)]
pub struct PseudoMomentVector<T> {
    space: FormSpace,
    values: Vec<T>,
}

impl<T: Scalar> PseudoMomentVector<T> {
    pub fn new(space: FormSpace, values: Vec<T>) -> Result<Self, MomentError> {
        if space.degree % 2 != 0 {
            return Err(MomentError::OddDegree);
        }
        if values.len() != space.dimension() {
            return Err(MomentError::WrongLength {
                expected: space.dimension(),
                got: values.len(),
            });
        }
        Ok(PseudoMomentVector { space, values })
    }

    pub fn zero(space: FormSpace) -> Result<Self, MomentError> {
        let dim = space.dimension();
        PseudoMomentVector::new(space, alloc::vec![T::zero(); dim])
    }

    pub fn space(&self) -> FormSpace {
        self.space
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value_at(&self, idx: usize) -> &T {
        &self.values[idx]
    }

    pub fn set_value(&mut self, idx: usize, v: T) {
        self.values[idx] = v;
    }

    pub fn scale(&self, t: &T) -> Self {
        PseudoMomentVector {
            space: self.space,
            values: self.values.iter().map(|v| v.clone() * t.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MomentError> {
        if self.space != other.space {
            return Err(MomentError::Form(FormError::SpaceMismatch));
        }
        Ok(PseudoMomentVector {
            space: self.space,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// Coordinate map from rationals, e.g. to lift endpoints into Q(sqrt2).
    pub fn map_from_rational(y: &PseudoMomentVector<Rational>) -> PseudoMomentVector<T> {
        PseudoMomentVector {
            space: y.space,
            values: y.values.iter().map(|v| T::from_rational(v)).collect(),
        }
    }
}

impl<T: Scalar> fmt::Debug for PseudoMomentVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PseudoMomentVector({}, {}; ",
            self.space.n, self.space.degree
        )?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The symmetric matrix `M_d(y)` together with its row monomials.
#[derive(Clone)]
pub struct MomentMatrix<T> {
    pub matrix: SymMatrix<T>,
    pub row_basis: Vec<MultiIndex>,
}

impl<T: Scalar> fmt::Debug for MomentMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// Assemble `M_d(y)`; entry `(i, j)` is `y` at `alpha_i + alpha_j`.
pub fn moment_matrix<T: Scalar>(y: &PseudoMomentVector<T>) -> MomentMatrix<T> {
    let half = y.space().half().expect("even degree enforced at construction");
    let rows = half.basis();
    let index = y.space().index_map();
    let matrix = SymMatrix::from_fn_upper(rows.len(), |i, j| {
        y.values()[index[&rows[i].add(&rows[j])]].clone()
    });
    MomentMatrix {
        matrix,
        row_basis: rows,
    }
}

/// The zero-one coordinate matrices `M_k` of the pencil
/// `M_d(y) = sum_k y_k M_k`: `M_k` has ones exactly where the row and
/// column exponents sum to the k-th degree-2d exponent.
pub fn coordinate_matrices<T: Scalar>(space: FormSpace) -> Vec<SymMatrix<T>> {
    let half = space.half().expect("even degree required");
    let rows = half.basis();
    let index = space.index_map();
    let n = rows.len();
    let mut mats: Vec<Matrix<T>> = (0..space.dimension())
        .map(|_| Matrix::zero(n, n))
        .collect();
    for i in 0..n {
        for j in 0..n {
            let k = index[&rows[i].add(&rows[j])];
            mats[k].set(i, j, T::one());
        }
    }
    mats.into_iter()
        .map(|m| SymMatrix::new(m).expect("coordinate matrices are symmetric"))
        .collect()
}

/// Outcome of the kernel-stacking extremality test.
#[derive(Clone, Debug)]
pub struct ExtremalityWitness {
    /// Kernel basis of the moment matrix, one integer column per vector.
    pub kernel: Matrix<Rational>,
    /// The stacked matrix `B` with one column per pencil coordinate.
    pub stacked: Matrix<Rational>,
    pub rank_b: usize,
    /// True iff `rank B = m - 1`, i.e. `y` spans an extreme ray.
    pub verdict: bool,
}

/// Run the extreme-ray test on a PSD pseudo-moment vector.
pub fn check_extreme(
    y: &PseudoMomentVector<Rational>,
) -> Result<ExtremalityWitness, MomentError> {
    let mm = moment_matrix(y);
    if !mm.matrix.is_psd() {
        return Err(MomentError::NotPsd);
    }
    let n = mm.matrix.size();
    let m = y.space().dimension();
    let kernel_cols = mm.matrix.kernel_basis();
    let k = kernel_cols.len();
    let kernel = Matrix::from_columns(kernel_cols, n);

    let coords = coordinate_matrices::<Rational>(y.space());
    // column for y_k is vec(M_k U), stacked column-major
    let mut stacked = Matrix::zero(n * k, m);
    for (col, mk) in coords.iter().enumerate() {
        let prod = mk.as_matrix().mul(&kernel);
        for j in 0..k {
            for i in 0..n {
                stacked.set(j * n + i, col, prod.get(i, j).clone());
            }
        }
    }
    let rank_b = stacked.rank();
    Ok(ExtremalityWitness {
        kernel,
        stacked,
        rank_b,
        verdict: rank_b == m - 1,
    })
}

/// Extremality summary carried inside a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalitySummary {
    pub extreme: bool,
    pub rank_b: usize,
}

/// Everything an independent checker wants to know about a certificate.
///
/// `valid` holds exactly when the moment matrix is PSD and the
/// functional value is strictly negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub value: Rational,
    pub psd: bool,
    pub rank: usize,
    /// Per-block ranks, present when `p` is a named form and `y` is
    /// invariant under its symmetry group.
    pub block_ranks: Option<Vec<usize>>,
    /// Present when extremality was requested and the matrix is PSD.
    pub extreme: Option<ExtremalitySummary>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "certificate: {}",
            if self.valid { "VALID" } else { "INVALID" }
        )?;
        writeln!(f, "value:       {}", self.value)?;
        writeln!(f, "psd:         {}", self.psd)?;
        writeln!(f, "rank:        {}", self.rank)?;
        if let Some(blocks) = &self.block_ranks {
            writeln!(f, "block ranks: {blocks:?}")?;
        }
        if let Some(ext) = &self.extreme {
            writeln!(f, "extreme:     {} (rank B = {})", ext.extreme, ext.rank_b)?;
        }
        Ok(())
    }
}

/// Verify `y` as a pseudo-moment certificate for `p`.
///
/// Computes the separation value and the PSD flag (these two decide
/// validity), the rank of the moment matrix, block ranks when `p` is one
/// of the named forms and `y` is invariant under its group, and — on
/// request — the extreme-ray verdict.
pub fn verify_certificate(
    p: &Form,
    y: &PseudoMomentVector<Rational>,
    with_extremality: bool,
) -> Result<VerificationReport, MomentError> {
    let value = evaluate_functional(p, y)?;
    let mm = moment_matrix(y);
    let psd = mm.matrix.is_psd();
    let rank = mm.matrix.rank();

    let block_ranks = FormId::ALL
        .iter()
        .find(|id| &named_form(**id) == p)
        .and_then(|id| symmetry::block_decompose(*id, y).ok())
        .map(|blocks| blocks.iter().map(SymMatrix::rank).collect());

    let extreme = if with_extremality && psd {
        let witness = check_extreme(y)?;
        Some(ExtremalitySummary {
            extreme: witness.verdict,
            rank_b: witness.rank_b,
        })
    } else {
        None
    };

    Ok(VerificationReport {
        valid: psd && value.is_negative(),
        value,
        psd,
        rank,
        block_ranks,
        extreme,
    })
}
