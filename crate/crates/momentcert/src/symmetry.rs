//! Group actions, orbit parameters, and block diagonalization.
//!
//! Each named form is fixed by a group of signed permutations of the
//! variables. An invariant functional is determined by one value per
//! exponent orbit — six parameters for Motzkin, three for Robinson, nine
//! for the Reznick octic, five for Choi-Lam — and its moment matrix
//! falls apart into small blocks in a symmetry-adapted basis.
//!
//! Group elements are stored as (permutation, sign vector) pairs acting
//! on exponents, never as representation matrices. The symmetry-adapted
//! bases use unnormalized integer columns instead of the orthonormal
//! ones (which would drag sqrt 2, sqrt 3, sqrt 6 into every entry); the
//! induced positive diagonal scaling is recorded per block, and since a
//! congruence never changes rank or PSD status, all block-level
//! conclusions carry over unchanged.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{Rational, Scalar};
use crate::forms::{FormId, FormSpace, MultiIndex};
use crate::linalg::{Matrix, SymMatrix};
use crate::moments::{moment_matrix, PseudoMomentVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryError {
    /// Wrong number of orbit parameters for the form.
    WrongArity { form: FormId, expected: usize, got: usize },
    /// The vector lives in the wrong space for the form.
    SpaceMismatch,
    /// Block decomposition needs a group-invariant vector.
    NotInvariant,
}

impl fmt::Display for SymmetryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryError::WrongArity {
                form,
                expected,
                got,
            } => write!(
                f,
                "{} takes {expected} orbit parameters, got {got}",
                form.name()
            ),
            SymmetryError::SpaceMismatch => write!(f, "vector space does not match the form"),
            SymmetryError::NotInvariant => {
                write!(f, "vector is not invariant under the form's symmetry group")
            }
        }
    }
}

impl core::error::Error for SymmetryError {}

/// Signed permutation of variables: `x_i -> signs[i] * x_perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        let n = perm.len();
        assert_eq!(signs.len(), n);
        assert!(signs.iter().all(|s| *s == 1 || *s == -1));
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        SignedPermutation { perm, signs }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// `self` after `first`: the returned element substitutes like
    /// applying `first`, then `self`.
    pub fn compose(&self, first: &SignedPermutation) -> SignedPermutation {
        let n = self.n();
        assert_eq!(first.n(), n);
        let perm = (0..n).map(|i| self.perm[first.perm[i]]).collect();
        let signs = (0..n)
            .map(|i| first.signs[i] * self.signs[first.perm[i]])
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Image of a monomial exponent and the sign factor it picks up:
    /// the image has `beta[perm[i]] = alpha[i]` and the sign is the
    /// product of `signs[i]^alpha[i]`.
    pub fn apply_index(&self, alpha: &MultiIndex) -> (MultiIndex, i8) {
        let n = self.n();
        assert_eq!(alpha.len(), n);
        let mut beta = vec![0u32; n];
        let mut sign = 1i8;
        for i in 0..n {
            beta[self.perm[i]] = alpha.0[i];
            if self.signs[i] == -1 && alpha.0[i] % 2 == 1 {
                sign = -sign;
            }
        }
        (MultiIndex(beta), sign)
    }
}

fn all_sign_vectors(n: usize) -> Vec<Vec<i8>> {
    (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

fn permutations_of_three() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ]
}

/// Complete element list of the form's symmetry group.
///
/// Motzkin and the Reznick octic share the order-16 group generated by
/// the swap `x1 <-> x2` and independent sign flips; Robinson has the
/// full hyperoctahedral group of order 48; Choi-Lam combines `S3` on
/// `x1, x2, x3` with the even sign flips of all four variables (order
/// 48 — flipping exactly one sign is not a symmetry).
pub fn symmetry_group(form: FormId) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    match form {
        FormId::Motzkin | FormId::Reznick8 => {
            for perm in [vec![0, 1, 2], vec![1, 0, 2]] {
                for signs in all_sign_vectors(3) {
                    out.push(SignedPermutation::new(perm.clone(), signs));
                }
            }
        }
        FormId::Robinson => {
            for perm in permutations_of_three() {
                for signs in all_sign_vectors(3) {
                    out.push(SignedPermutation::new(perm.clone(), signs));
                }
            }
        }
        FormId::ChoiLam => {
            for perm in permutations_of_three() {
                let mut perm4 = perm.clone();
                perm4.push(3);
                for signs in all_sign_vectors(4) {
                    if signs.iter().filter(|s| **s == -1).count() % 2 == 0 {
                        out.push(SignedPermutation::new(perm4.clone(), signs));
                    }
                }
            }
        }
    }
    out
}

/// Dual action of a group element on a pseudo-moment vector: the image
/// functional evaluates monomials through the inverse substitution, so
/// coordinates are permuted along exponent orbits with the parity sign.
pub fn dual_action<T: Scalar>(
    g: &SignedPermutation,
    y: &PseudoMomentVector<T>,
) -> PseudoMomentVector<T> {
    let space = y.space();
    assert_eq!(g.n(), space.n, "group acts on the wrong variable count");
    let basis = space.basis();
    let index = space.index_map();
    let mut out = vec![T::zero(); basis.len()];
    for (i, beta) in basis.iter().enumerate() {
        let (image, sign) = g.apply_index(beta);
        let v = if sign < 0 {
            -y.values()[i].clone()
        } else {
            y.values()[i].clone()
        };
        out[index[&image]] = v;
    }
    PseudoMomentVector::new(space, out).expect("same space")
}

/// True when every group element fixes `y`.
pub fn is_invariant<T: Scalar>(form: FormId, y: &PseudoMomentVector<T>) -> bool {
    y.space() == form.space() && symmetry_group(form).iter().all(|g| &dual_action(g, y) == y)
}

/// Group average of `y`: the result is invariant, Reynolds is idempotent,
/// and the value on any invariant form is preserved.
pub fn reynolds<T: Scalar>(form: FormId, y: &PseudoMomentVector<T>) -> PseudoMomentVector<T> {
    let group = symmetry_group(form);
    let mut acc = PseudoMomentVector::zero(y.space()).expect("even degree");
    for g in &group {
        acc = acc.add(&dual_action(g, y)).expect("same space");
    }
    let weight = Rational::new(1, group.len() as i64).expect("group is nonempty");
    acc.scale(&T::from_rational(&weight))
}

/// Named orbit parameters of an invariant functional.
///
/// Parameter order follows the defining displays: Motzkin
/// `(a, b, c, d, e, f)`, Robinson `(a, b, c)`, Reznick
/// `(a, b, c, d, e, f, g, h, i)`, Choi-Lam `(a, b, c, d, e)`.
#[derive(Clone, PartialEq, Eq)]
pub struct OrbitParams<T = Rational> {
    form: FormId,
    values: Vec<T>,
}

pub const PARAM_NAMES: [&str; 9] = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];

/// Per-parameter exponent orbits; all remaining coordinates of the
/// embedded vector are zero (sign-flip invariance kills every exponent
/// with the wrong parity pattern).
fn orbit_table(form: FormId) -> Vec<Vec<MultiIndex>> {
    let mk = |list: &[&[u32]]| -> Vec<MultiIndex> { list.iter().map(|&e| e.into()).collect() };
    match form {
        FormId::Motzkin => vec![
            mk(&[&[2, 0, 4], &[0, 2, 4]]),
            mk(&[&[4, 0, 2], &[0, 4, 2]]),
            mk(&[&[2, 2, 2]]),
            mk(&[&[6, 0, 0], &[0, 6, 0]]),
            mk(&[&[4, 2, 0], &[2, 4, 0]]),
            mk(&[&[0, 0, 6]]),
        ],
        FormId::Robinson => vec![
            mk(&[&[6, 0, 0], &[0, 6, 0], &[0, 0, 6]]),
            mk(&[
                &[4, 2, 0],
                &[4, 0, 2],
                &[2, 4, 0],
                &[2, 0, 4],
                &[0, 4, 2],
                &[0, 2, 4],
            ]),
            mk(&[&[2, 2, 2]]),
        ],
        FormId::Reznick8 => vec![
            mk(&[&[8, 0, 0], &[0, 8, 0]]),
            mk(&[&[0, 0, 8]]),
            mk(&[&[6, 2, 0], &[2, 6, 0]]),
            mk(&[&[6, 0, 2], &[0, 6, 2]]),
            mk(&[&[2, 0, 6], &[0, 2, 6]]),
            mk(&[&[4, 4, 0]]),
            mk(&[&[4, 0, 4], &[0, 4, 4]]),
            mk(&[&[4, 2, 2], &[2, 4, 2]]),
            mk(&[&[2, 2, 4]]),
        ],
        FormId::ChoiLam => vec![
            mk(&[&[0, 0, 0, 4]]),
            mk(&[&[4, 0, 0, 0], &[0, 4, 0, 0], &[0, 0, 4, 0]]),
            mk(&[&[2, 2, 0, 0], &[0, 2, 2, 0], &[2, 0, 2, 0]]),
            mk(&[&[2, 0, 0, 2], &[0, 2, 0, 2], &[0, 0, 2, 2]]),
            mk(&[&[1, 1, 1, 1]]),
        ],
    }
}

pub fn param_count(form: FormId) -> usize {
    match form {
        FormId::Motzkin => 6,
        FormId::Robinson => 3,
        FormId::Reznick8 => 9,
        FormId::ChoiLam => 5,
    }
}

pub fn param_names(form: FormId) -> &'static [&'static str] {
    &PARAM_NAMES[..param_count(form)]
}

impl<T: Scalar> OrbitParams<T> {
    pub fn new(form: FormId, values: Vec<T>) -> Result<Self, SymmetryError> {
        let expected = param_count(form);
        if values.len() != expected {
            return Err(SymmetryError::WrongArity {
                form,
                expected,
                got: values.len(),
            });
        }
        Ok(OrbitParams { form, values })
    }

    pub fn form(&self) -> FormId {
        self.form
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        param_names(self.form)
            .iter()
            .position(|n| *n == name)
            .map(|i| &self.values[i])
    }

    /// The closed-form separation value on the form's own polynomial:
    /// `f - 3c + 2e` (Motzkin), `3(a - 2b + c)` (Robinson),
    /// `f + 2e - 3i` (Reznick), `a + 3c - 4e` (Choi-Lam).
    pub fn functional_shortcut(&self) -> T {
        let v = |i: usize| self.values[i].clone();
        let k = |n: i64| T::from_int(n);
        match self.form {
            FormId::Motzkin => v(5) - k(3) * v(2) + k(2) * v(4),
            FormId::Robinson => k(3) * (v(0) - k(2) * v(1) + v(2)),
            FormId::Reznick8 => v(5) + k(2) * v(4) - k(3) * v(8),
            FormId::ChoiLam => v(0) + k(3) * v(2) - k(4) * v(4),
        }
    }
}

impl<T: Scalar> fmt::Debug for OrbitParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.form.name())?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", param_names(self.form)[i], v)?;
        }
        write!(f, ")")
    }
}

/// Embed orbit parameters as a dense pseudo-moment vector: every orbit
/// coordinate receives its parameter, everything else is zero.
pub fn orbit_embed<T: Scalar>(params: &OrbitParams<T>) -> PseudoMomentVector<T> {
    let space = params.form().space();
    let index = space.index_map();
    let mut values = vec![T::zero(); space.dimension()];
    for (slot, orbit) in orbit_table(params.form()).iter().enumerate() {
        for idx in orbit {
            values[index[idx]] = params.values()[slot].clone();
        }
    }
    PseudoMomentVector::new(space, values).expect("orbit table matches the space")
}

/// Symmetry-adapted integer congruence for one form.
pub struct BlockBasis {
    pub form: FormId,
    /// Integer column basis; `T^t M_d(y) T` is block diagonal for
    /// invariant `y`.
    pub congruence: Matrix<Rational>,
    pub block_sizes: Vec<usize>,
    /// Squared diagonal factors per block entry: our block equals
    /// `D * (paper-normalized block) * D` with `D = diag(sqrt(record))`.
    pub scale_record: Vec<Vec<Rational>>,
}

fn block_columns(form: FormId) -> (Vec<Vec<(i64, usize)>>, Vec<usize>, Vec<Vec<i64>>) {
    // columns as (coefficient, graded-lex index) pairs over the
    // half-degree basis; see the module docs for the ordering
    match form {
        FormId::Motzkin => (
            vec![
                // odd in x1: x1*x3^2, x1^3, x1*x2^2
                vec![(1, 5)],
                vec![(1, 0)],
                vec![(1, 3)],
                // odd in x2: x2*x3^2, x1^2*x2, x2^3
                vec![(1, 8)],
                vec![(1, 1)],
                vec![(1, 6)],
                // odd in x3: x3^3, x1^2*x3, x2^2*x3
                vec![(1, 9)],
                vec![(1, 2)],
                vec![(1, 7)],
                // odd in all: x1*x2*x3
                vec![(1, 4)],
            ],
            vec![3, 3, 3, 1],
            vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1], vec![1]],
        ),
        FormId::Robinson => (
            vec![
                vec![(1, 0)],
                vec![(1, 3)],
                vec![(1, 5)],
                vec![(1, 6)],
                vec![(1, 1)],
                vec![(1, 8)],
                vec![(1, 9)],
                vec![(1, 2)],
                vec![(1, 7)],
                vec![(1, 4)],
            ],
            vec![3, 3, 3, 1],
            vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1], vec![1]],
        ),
        FormId::Reznick8 => (
            vec![
                // x1^3*x2 - x1*x2^3
                vec![(-1, 1), (1, 6)],
                // x1^3*x2 + x1*x2^3, x1*x2*x3^2
                vec![(1, 1), (1, 6)],
                vec![(1, 8)],
                // x1^3*x3, x1*x3^3, x1*x2^2*x3
                vec![(1, 2)],
                vec![(1, 9)],
                vec![(1, 7)],
                // x2^3*x3, x2*x3^3, x1^2*x2*x3
                vec![(1, 11)],
                vec![(1, 13)],
                vec![(1, 4)],
                // x1^4 - x2^4, x1^2*x3^2 - x2^2*x3^2
                vec![(1, 0), (-1, 10)],
                vec![(1, 5), (-1, 12)],
                // x1^4 + x2^4, x3^4, x1^2*x2^2, x1^2*x3^2 + x2^2*x3^2
                vec![(1, 0), (1, 10)],
                vec![(1, 14)],
                vec![(1, 3)],
                vec![(1, 5), (1, 12)],
            ],
            vec![1, 2, 3, 3, 2, 4],
            vec![
                vec![2],
                vec![2, 1],
                vec![1, 1, 1],
                vec![1, 1, 1],
                vec![2, 2],
                vec![2, 1, 1, 2],
            ],
        ),
        FormId::ChoiLam => (
            vec![
                // x1^2 + x2^2 + x3^2, x4^2
                vec![(1, 0), (1, 4), (1, 7)],
                vec![(1, 9)],
                // x1^2 - x2^2
                vec![(1, 0), (-1, 4)],
                // x1^2 + x2^2 - 2*x3^2
                vec![(1, 0), (1, 4), (-2, 7)],
                // x1*x2, x3*x4
                vec![(1, 1)],
                vec![(1, 8)],
                // x2*x3, x1*x4
                vec![(1, 5)],
                vec![(1, 3)],
                // x1*x3, x2*x4
                vec![(1, 2)],
                vec![(1, 6)],
            ],
            vec![2, 1, 1, 2, 2, 2],
            vec![
                vec![3, 1],
                vec![2],
                vec![6],
                vec![1, 1],
                vec![1, 1],
                vec![1, 1],
            ],
        ),
    }
}

/// The fixed symmetry-adapted basis for one of the four forms.
pub fn block_basis(form: FormId) -> BlockBasis {
    let (cols, block_sizes, scales) = block_columns(form);
    let space = form.space();
    let n = space.half().expect("even degree").dimension();
    let mut congruence = Matrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for &(coeff, i) in col {
            congruence.set(i, j, Rational::from(coeff));
        }
    }
    BlockBasis {
        form,
        congruence,
        block_sizes,
        scale_record: scales
            .into_iter()
            .map(|b| b.into_iter().map(Rational::from).collect())
            .collect(),
    }
}

/// Block-diagonalize the moment matrix of an invariant vector.
///
/// Returns the diagonal blocks of `T^t M_d(y) T` in the basis order
/// (Motzkin/Robinson sizes 3,3,3,1; Reznick 1,2,3,3,2,4; Choi-Lam
/// 2,1,1,2,2,2). Fails when `y` is not invariant under the form's group.
pub fn block_decompose<T: Scalar>(
    form: FormId,
    y: &PseudoMomentVector<T>,
) -> Result<Vec<SymMatrix<T>>, SymmetryError> {
    if y.space() != form.space() {
        return Err(SymmetryError::SpaceMismatch);
    }
    if !is_invariant(form, y) {
        return Err(SymmetryError::NotInvariant);
    }
    let basis = block_basis(form);
    let n = basis.congruence.rows();
    let t = Matrix::from_fn(n, n, |i, j| T::from_rational(basis.congruence.get(i, j)));
    let full = moment_matrix(y)
        .matrix
        .congruence(&t)
        .expect("block basis is invertible");

    let mut blocks = Vec::with_capacity(basis.block_sizes.len());
    let mut offset = 0;
    for &size in &basis.block_sizes {
        blocks.push(full.principal_submatrix(
            &(offset..offset + size).collect::<Vec<_>>(),
        ));
        offset += size;
    }
    debug_assert!(off_diagonal_vanishes(&full, &basis.block_sizes));
    Ok(blocks)
}

fn off_diagonal_vanishes<T: Scalar>(full: &SymMatrix<T>, sizes: &[usize]) -> bool {
    let mut bounds = vec![0usize];
    for &s in sizes {
        bounds.push(bounds.last().unwrap() + s);
    }
    let block_of = |i: usize| bounds.iter().position(|&b| b > i).unwrap() - 1;
    for i in 0..full.size() {
        for j in 0..full.size() {
            if block_of(i) != block_of(j) && !full.get(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Convenience: the space a form's pseudo-moment vectors live in.
pub fn moment_space(form: FormId) -> FormSpace {
    form.space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::forms::{evaluate_functional, named_form, Form};
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};

    fn motzkin_params(values: [i64; 6]) -> OrbitParams<Rational> {
        OrbitParams::new(
            FormId::Motzkin,
            values.into_iter().map(Rational::from).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn transform_form(g: &SignedPermutation, p: &Form) -> Form {
        let mut out = Form::new(p.space());
        for (idx, c) in p.terms() {
            let (image, sign) = g.apply_index(idx);
            let coeff = if sign < 0 { -c.clone() } else { c.clone() };
            out.add_term(image, coeff).unwrap();
        }
        out
    }

    #[test]
    fn group_orders() {
        assert_eq!(symmetry_group(FormId::Motzkin).len(), 16);
        assert_eq!(symmetry_group(FormId::Robinson).len(), 48);
        assert_eq!(symmetry_group(FormId::Reznick8).len(), 16);
        assert_eq!(symmetry_group(FormId::ChoiLam).len(), 48);
    }

    #[test]
    fn choilam_group_excludes_single_flips() {
        let group = symmetry_group(FormId::ChoiLam);
        for g in &group {
            let flips = g.signs.iter().filter(|s| **s == -1).count();
            assert_eq!(flips % 2, 0);
        }
        // the lone flip of x4 is not an element
        let lone = SignedPermutation::new(vec![0, 1, 2, 3], vec![1, 1, 1, -1]);
        assert!(!group.contains(&lone));
    }

    #[test]
    fn groups_are_closed_and_fix_their_forms() {
        for id in FormId::ALL {
            let group = symmetry_group(id);
            for g in &group {
                for h in &group {
                    assert!(group.contains(&g.compose(h)));
                }
                assert!(group.contains(&g.inverse()));
                let p = named_form(id);
                assert_eq!(transform_form(g, &p), p, "{} not fixed", id.name());
            }
        }
    }

    #[test]
    fn dual_action_examples() {
        let space = FormSpace::new(3, 6);
        let index = space.index_map();

        // sign flip of x1 negates y_510
        let mut y = PseudoMomentVector::<Rational>::zero(space).unwrap();
        y.set_value(index[&MultiIndex::from([5, 1, 0])], rat(5, 1));
        let flip = SignedPermutation::new(vec![0, 1, 2], vec![-1, 1, 1]);
        let image = dual_action(&flip, &y);
        assert_eq!(
            image.values()[index[&MultiIndex::from([5, 1, 0])]],
            rat(-5, 1)
        );

        // swap x1 <-> x2 moves the (4,2,0) indicator to (2,4,0)
        let mut z = PseudoMomentVector::<Rational>::zero(space).unwrap();
        z.set_value(index[&MultiIndex::from([4, 2, 0])], rat(1, 1));
        let swap = SignedPermutation::new(vec![1, 0, 2], vec![1, 1, 1]);
        let image = dual_action(&swap, &z);
        assert_eq!(
            image.values()[index[&MultiIndex::from([2, 4, 0])]],
            rat(1, 1)
        );
        assert_eq!(
            image.values()[index[&MultiIndex::from([4, 2, 0])]],
            rat(0, 1)
        );

        // orbit embeddings are fixed points
        let y = orbit_embed(&motzkin_params([3, 16, 2, 198, 2, 1]));
        for g in symmetry_group(FormId::Motzkin) {
            assert_eq!(dual_action(&g, &y), y);
        }
    }

    #[test]
    fn orbit_embedding_values() {
        let space = FormSpace::new(3, 6);
        let index = space.index_map();
        let y = orbit_embed(&motzkin_params([3, 16, 2, 198, 2, 1]));
        let expect = [
            ([2u32, 0, 4], 3),
            ([0, 2, 4], 3),
            ([4, 0, 2], 16),
            ([0, 4, 2], 16),
            ([2, 2, 2], 2),
            ([6, 0, 0], 198),
            ([0, 6, 0], 198),
            ([4, 2, 0], 2),
            ([2, 4, 0], 2),
            ([0, 0, 6], 1),
        ];
        for (e, v) in expect {
            assert_eq!(y.values()[index[&MultiIndex::from(e)]], Rational::from(v));
        }
        let zeros = y.values().iter().filter(|v| v.is_zero()).count();
        assert_eq!(zeros, 18);

        // Robinson: three copies of a, six of b, one c
        let yr = orbit_embed(
            &OrbitParams::new(
                FormId::Robinson,
                alloc::vec![rat(1, 1), rat(2, 3), rat(1, 4)],
            )
            .unwrap(),
        );
        let ridx = FormSpace::new(3, 6).index_map();
        assert_eq!(yr.values()[ridx[&MultiIndex::from([0, 0, 6])]], rat(1, 1));
        assert_eq!(yr.values()[ridx[&MultiIndex::from([2, 0, 4])]], rat(2, 3));
        assert_eq!(yr.values()[ridx[&MultiIndex::from([2, 2, 2])]], rat(1, 4));

        // zero parameters embed to the zero vector
        let zero = orbit_embed(
            &OrbitParams::new(FormId::ChoiLam, alloc::vec![Rational::zero(); 5]).unwrap(),
        );
        assert!(zero.values().iter().all(Rational::is_zero));
    }

    #[test]
    fn reynolds_projects_and_preserves_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for id in [FormId::Motzkin, FormId::Robinson, FormId::ChoiLam] {
            let space = id.space();
            let p = named_form(id);
            for _ in 0..10 {
                let y = PseudoMomentVector::new(
                    space,
                    (0..space.dimension())
                        .map(|_| rat(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=5)))
                        .collect(),
                )
                .unwrap();
                let avg = reynolds(id, &y);
                assert!(is_invariant(id, &avg));
                // idempotent
                assert_eq!(reynolds(id, &avg), avg);
                // preserves the value on the invariant form
                assert_eq!(
                    evaluate_functional(&p, &avg).unwrap(),
                    evaluate_functional(&p, &y).unwrap()
                );
            }
        }

        // the orbit embedding is already invariant, hence a fixed point
        let y = orbit_embed(&motzkin_params([1, 2, 3, 4, 5, 6]));
        assert_eq!(reynolds(FormId::Motzkin, &y), y);
    }

    #[test]
    fn reynolds_of_psd_stays_psd() {
        // genuine moment vectors of point masses are PSD but generally
        // not invariant
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let space = FormSpace::new(3, 6);
        let basis = space.basis();
        for _ in 0..5 {
            let mut y = PseudoMomentVector::<Rational>::zero(space).unwrap();
            for _ in 0..3 {
                let pt: Vec<Rational> = (0..3)
                    .map(|_| rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)))
                    .collect();
                let w = rat(rng.gen_range(1i64..=4), 1);
                for (i, alpha) in basis.iter().enumerate() {
                    let mut term = w.clone();
                    for (x, &e) in pt.iter().zip(&alpha.0) {
                        term = term * x.pow(e);
                    }
                    y.set_value(i, y.values()[i].clone() + term);
                }
            }
            assert!(moment_matrix(&y).matrix.is_psd());
            let avg = reynolds(FormId::Motzkin, &y);
            assert!(moment_matrix(&avg).matrix.is_psd());
        }
    }

    #[test]
    fn functional_shortcuts_match_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for id in FormId::ALL {
            let p = named_form(id);
            for _ in 0..25 {
                let params = OrbitParams::new(
                    id,
                    (0..param_count(id))
                        .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                        .collect(),
                )
                .unwrap();
                let y = orbit_embed(&params);
                assert_eq!(
                    params.functional_shortcut(),
                    evaluate_functional(&p, &y).unwrap(),
                    "shortcut mismatch for {}",
                    id.name()
                );
            }
        }
    }

    #[test]
    fn motzkin_blocks_match_parameter_pattern() {
        let (a, b, c, d, e, f) = (3, 16, 2, 198, 2, 1);
        let y = orbit_embed(&motzkin_params([a, b, c, d, e, f]));
        let blocks = block_decompose(FormId::Motzkin, &y).unwrap();
        assert_eq!(
            blocks.iter().map(SymMatrix::size).collect::<Vec<_>>(),
            alloc::vec![3, 3, 3, 1]
        );
        let expect = |rows: [[i64; 3]; 3]| {
            SymMatrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(Rational::from).collect())
                    .collect(),
            )
            .unwrap()
        };
        assert_eq!(blocks[0], expect([[a, b, c], [b, d, e], [c, e, e]]));
        assert_eq!(blocks[1], expect([[a, c, b], [c, e, e], [b, e, d]]));
        assert_eq!(blocks[2], expect([[f, a, a], [a, b, c], [a, c, b]]));
        assert_eq!(blocks[3].get(0, 0), &Rational::from(c));

        // the x1 <-> x2 twin is a permutation congruence of the first block
        assert_eq!(blocks[0].rank(), blocks[1].rank());
        assert_eq!(blocks[0].char_poly(), blocks[1].char_poly());
    }

    #[test]
    fn robinson_blocks_are_three_copies() {
        let y = orbit_embed(
            &OrbitParams::new(
                FormId::Robinson,
                alloc::vec![rat(8, 1), rat(6, 1), rat(3, 1)],
            )
            .unwrap(),
        );
        let blocks = block_decompose(FormId::Robinson, &y).unwrap();
        assert_eq!(blocks[0], blocks[1]);
        assert_eq!(blocks[1], blocks[2]);
        let expect = SymMatrix::from_rows(alloc::vec![
            alloc::vec![rat(8, 1), rat(6, 1), rat(6, 1)],
            alloc::vec![rat(6, 1), rat(6, 1), rat(3, 1)],
            alloc::vec![rat(6, 1), rat(3, 1), rat(6, 1)],
        ])
        .unwrap();
        assert_eq!(blocks[0], expect);
        assert_eq!(blocks[3].get(0, 0), &rat(3, 1));
    }

    #[test]
    fn choilam_blocks_match_scaled_pattern() {
        let (a, b, c, d, e) = (1, 24, 2, 3, 2);
        let y = orbit_embed(
            &OrbitParams::new(
                FormId::ChoiLam,
                [a, b, c, d, e].into_iter().map(Rational::from).collect::<Vec<_>>(),
            )
            .unwrap(),
        );
        let blocks = block_decompose(FormId::ChoiLam, &y).unwrap();
        assert_eq!(
            blocks.iter().map(SymMatrix::size).collect::<Vec<_>>(),
            alloc::vec![2, 1, 1, 2, 2, 2]
        );
        // integer-scaled M_21: [[3(b+2c), 3d], [3d, a]]
        assert_eq!(blocks[0].get(0, 0), &Rational::from(3 * (b + 2 * c)));
        assert_eq!(blocks[0].get(0, 1), &Rational::from(3 * d));
        assert_eq!(blocks[0].get(1, 1), &Rational::from(a));
        // scaled copies of b - c
        assert_eq!(blocks[1].get(0, 0), &Rational::from(2 * (b - c)));
        assert_eq!(blocks[2].get(0, 0), &Rational::from(6 * (b - c)));
        // three copies of [[c, e], [e, d]]
        for k in 3..6 {
            assert_eq!(blocks[k].get(0, 0), &Rational::from(c));
            assert_eq!(blocks[k].get(0, 1), &Rational::from(e));
            assert_eq!(blocks[k].get(1, 1), &Rational::from(d));
        }
    }

    #[test]
    fn reznick_blocks_match_scaled_pattern() {
        let (a, b, c, d, e, f, g, h, i) = (2392, 25, 40, 166, 3, 2, 14, 4, 3);
        let y = orbit_embed(
            &OrbitParams::new(
                FormId::Reznick8,
                [a, b, c, d, e, f, g, h, i]
                    .into_iter()
                    .map(Rational::from)
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        );
        let blocks = block_decompose(FormId::Reznick8, &y).unwrap();
        assert_eq!(
            blocks.iter().map(SymMatrix::size).collect::<Vec<_>>(),
            alloc::vec![1, 2, 3, 3, 2, 4]
        );
        // 2(c - f)
        assert_eq!(blocks[0].get(0, 0), &Rational::from(2 * (c - f)));
        // [[2(c+f), 2h], [2h, i]]
        assert_eq!(blocks[1].get(0, 0), &Rational::from(2 * (c + f)));
        assert_eq!(blocks[1].get(0, 1), &Rational::from(2 * h));
        assert_eq!(blocks[1].get(1, 1), &Rational::from(i));
        // M_42 = [[d, g, h], [g, e, i], [h, i, h]], twice
        for k in [2, 3] {
            assert_eq!(blocks[k].get(0, 0), &Rational::from(d));
            assert_eq!(blocks[k].get(0, 1), &Rational::from(g));
            assert_eq!(blocks[k].get(0, 2), &Rational::from(h));
            assert_eq!(blocks[k].get(1, 1), &Rational::from(e));
            assert_eq!(blocks[k].get(1, 2), &Rational::from(i));
            assert_eq!(blocks[k].get(2, 2), &Rational::from(h));
        }
        // 2 * [[a-f, d-h], [d-h, g-i]]
        assert_eq!(blocks[4].get(0, 0), &Rational::from(2 * (a - f)));
        assert_eq!(blocks[4].get(0, 1), &Rational::from(2 * (d - h)));
        assert_eq!(blocks[4].get(1, 1), &Rational::from(2 * (g - i)));
        // scaled M_442
        assert_eq!(blocks[5].get(0, 0), &Rational::from(2 * (a + f)));
        assert_eq!(blocks[5].get(0, 1), &Rational::from(2 * g));
        assert_eq!(blocks[5].get(0, 2), &Rational::from(2 * c));
        assert_eq!(blocks[5].get(0, 3), &Rational::from(2 * (d + h)));
        assert_eq!(blocks[5].get(1, 1), &Rational::from(b));
        assert_eq!(blocks[5].get(1, 2), &Rational::from(i));
        assert_eq!(blocks[5].get(1, 3), &Rational::from(2 * e));
        assert_eq!(blocks[5].get(2, 2), &Rational::from(f));
        assert_eq!(blocks[5].get(2, 3), &Rational::from(2 * h));
        assert_eq!(blocks[5].get(3, 3), &Rational::from(2 * (g + i)));
    }

    #[test]
    fn block_rank_additivity_and_psd_equivalence() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for id in FormId::ALL {
            for _ in 0..15 {
                let params = OrbitParams::new(
                    id,
                    (0..param_count(id))
                        .map(|_| rat(rng.gen_range(-6i64..=12), rng.gen_range(1i64..=3)))
                        .collect(),
                )
                .unwrap();
                let y = orbit_embed(&params);
                let mm = moment_matrix(&y).matrix;
                let blocks = block_decompose(id, &y).unwrap();
                let total: usize = blocks.iter().map(SymMatrix::size).sum();
                assert_eq!(total, mm.size());
                let rank_sum: usize = blocks.iter().map(SymMatrix::rank).sum();
                assert_eq!(rank_sum, mm.rank());
                assert_eq!(blocks.iter().all(SymMatrix::is_psd), mm.is_psd());
            }
        }
    }

    #[test]
    fn block_decompose_rejects_non_invariant() {
        let space = FormSpace::new(3, 6);
        let mut y = PseudoMomentVector::<Rational>::zero(space).unwrap();
        y.set_value(0, rat(1, 1));
        assert_eq!(
            block_decompose(FormId::Motzkin, &y).unwrap_err(),
            SymmetryError::NotInvariant
        );
    }
}
