//! Monomial bases, sparse homogeneous forms, and the four named forms.
//!
//! The single monomial order used everywhere is graded-lex with
//! `x1 > x2 > ... > xn`: for fixed total degree, exponent vectors are
//! listed in descending lexicographic order, so the degree-3 ternary
//! basis starts `x1^3, x1^2*x2, x1^2*x3, x1*x2^2, ...`. Every matrix
//! row/column convention in the crate derives from this one choice.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::exactnum::{ExactNumError, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormError {
    /// Operands live in different form spaces.
    SpaceMismatch,
    /// Exponent vector has the wrong length or degree for its space.
    BadExponent {
        expected_vars: usize,
        expected_degree: usize,
    },
    UnknownForm(String),
    ParseForm(String),
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::SpaceMismatch => write!(f, "form spaces do not match"),
            FormError::BadExponent {
                expected_vars,
                expected_degree,
            } => write!(
                f,
                "exponent vector must have {expected_vars} entries summing to {expected_degree}"
            ),
            FormError::UnknownForm(s) => write!(f, "unknown form name: {s}"),
            FormError::ParseForm(s) => write!(f, "invalid form literal: {s}"),
        }
    }
}

impl core::error::Error for FormError {}

/// Ambient space of forms: `n` variables, fixed total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormSpace {
    pub n: usize,
    pub degree: usize,
}

impl FormSpace {
    pub fn new(n: usize, degree: usize) -> Self {
        assert!(n >= 1, "need at least one variable");
        FormSpace { n, degree }
    }

    /// Dimension `binom(n - 1 + degree, n - 1)`.
    pub fn dimension(&self) -> usize {
        binomial(self.n - 1 + self.degree, self.n - 1)
    }

    /// The space of half-degree forms whose squares live here.
    pub fn half(&self) -> Option<FormSpace> {
        (self.degree % 2 == 0).then(|| FormSpace::new(self.n, self.degree / 2))
    }

    /// All degree-`degree` exponent vectors in graded-lex order.
    pub fn basis(&self) -> Vec<MultiIndex> {
        monomial_basis(self.n, self.degree)
    }

    /// Inverse of `basis()[i]`, as a lookup table.
    pub fn index_map(&self) -> BTreeMap<MultiIndex, usize> {
        self.basis()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise sum, the exponent of the monomial product.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All exponent vectors of total degree `d` in `n` variables, graded-lex
/// (descending lexicographic within the fixed degree).
pub fn monomial_basis(n: usize, d: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if n == 1 {
            prefix.push(d);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The four celebrated positive non-SOS forms implemented here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormId {
    Motzkin,
    Robinson,
    Reznick8,
    ChoiLam,
}

impl FormId {
    pub const ALL: [FormId; 4] = [
        FormId::Motzkin,
        FormId::Robinson,
        FormId::Reznick8,
        FormId::ChoiLam,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FormId::Motzkin => "motzkin",
            FormId::Robinson => "robinson",
            FormId::Reznick8 => "reznick8",
            FormId::ChoiLam => "choilam",
        }
    }

    pub fn space(&self) -> FormSpace {
        match self {
            FormId::Motzkin | FormId::Robinson => FormSpace::new(3, 6),
            FormId::Reznick8 => FormSpace::new(3, 8),
            FormId::ChoiLam => FormSpace::new(4, 4),
        }
    }
}

impl FromStr for FormId {
    type Err = FormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "motzkin" => Ok(FormId::Motzkin),
            "robinson" => Ok(FormId::Robinson),
            "reznick8" => Ok(FormId::Reznick8),
            "choilam" => Ok(FormId::ChoiLam),
            other => Err(FormError::UnknownForm(other.to_string())),
        }
    }
}

/// Sparse homogeneous form: exponent -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    space: FormSpace,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl Form {
    pub fn new(space: FormSpace) -> Self {
        Form {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: Into<MultiIndex>>(
        space: FormSpace,
        terms: impl IntoIterator<Item = (I, Rational)>,
    ) -> Result<Self, FormError> {
        let mut form = Form::new(space);
        for (idx, coeff) in terms {
            form.add_term(idx.into(), coeff)?;
        }
        Ok(form)
    }

    pub fn add_term(&mut self, idx: MultiIndex, coeff: Rational) -> Result<(), FormError> {
        if idx.len() != self.space.n || idx.degree() as usize != self.space.degree {
            return Err(FormError::BadExponent {
                expected_vars: self.space.n,
                expected_degree: self.space.degree,
            });
        }
        let combined = match self.coeffs.get(&idx) {
            Some(old) => old + &coeff,
            None => coeff,
        };
        if combined.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, combined);
        }
        Ok(())
    }

    pub fn space(&self) -> FormSpace {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rational {
        self.coeffs.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Evaluate at a rational point.
    pub fn eval_at(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.space.n);
        let mut acc = Rational::zero();
        for (idx, c) in &self.coeffs {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&idx.0) {
                term = term * x.pow(e);
            }
            acc = acc + term;
        }
        acc
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if c != &Rational::one() || idx.0.iter().all(|&e| e == 0) {
                factors.push(c.to_string());
            }
            for (var, &e) in idx.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(alloc::format!("x{}", var + 1)),
                    _ => factors.push(alloc::format!("x{}^{}", var + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The exact integer-coefficient form for one of the four names.
pub fn named_form(id: FormId) -> Form {
    let r = Rational::from;
    match id {
        FormId::Motzkin => Form::from_terms(
            id.space(),
            [
                ([4, 2, 0], r(1)),
                ([2, 4, 0], r(1)),
                ([0, 0, 6], r(1)),
                ([2, 2, 2], r(-3)),
            ],
        ),
        FormId::Robinson => Form::from_terms(
            id.space(),
            [
                ([6, 0, 0], r(1)),
                ([0, 6, 0], r(1)),
                ([0, 0, 6], r(1)),
                ([4, 2, 0], r(-1)),
                ([2, 4, 0], r(-1)),
                ([4, 0, 2], r(-1)),
                ([2, 0, 4], r(-1)),
                ([0, 4, 2], r(-1)),
                ([0, 2, 4], r(-1)),
                ([2, 2, 2], r(3)),
            ],
        ),
        FormId::Reznick8 => Form::from_terms(
            id.space(),
            [
                ([2, 0, 6], r(1)),
                ([0, 2, 6], r(1)),
                ([4, 4, 0], r(1)),
                ([2, 2, 4], r(-3)),
            ],
        ),
        FormId::ChoiLam => Form::from_terms(
            id.space(),
            [
                ([2, 2, 0, 0], r(1)),
                ([0, 2, 2, 0], r(1)),
                ([2, 0, 2, 0], r(1)),
                ([0, 0, 0, 4], r(1)),
                ([1, 1, 1, 1], r(-4)),
            ],
        ),
    }
    .expect("named form coefficients are well formed")
}

/// Parse a form literal such as `x1^4*x2^2 + -3*x1^2*x2^2*x3^2`.
///
/// Terms are '+'-separated (a '-' starts a negated term); within a term,
/// '*'-separated factors are either a rational coefficient or `x<k>[^e]`.
/// Exponents default to 1 and the coefficient to 1. Every term must have
/// total degree `space.degree`.
pub fn parse_form_literal(input: &str, space: FormSpace) -> Result<Form, FormError> {
    let bad = |msg: &str| FormError::ParseForm(alloc::format!("{msg} in {input:?}"));

    let mut terms: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut prev_meaningful = ' ';
    for ch in input.chars() {
        match ch {
            '+' | '-'
                if !current.trim().is_empty()
                    && prev_meaningful != '/'
                    && prev_meaningful != '*'
                    && prev_meaningful != '-'
                    && prev_meaningful != '+' =>
            {
                terms.push(core::mem::take(&mut current));
                if ch == '-' {
                    current.push('-');
                }
            }
            _ => current.push(ch),
        }
        if !ch.is_whitespace() {
            prev_meaningful = ch;
        }
    }
    if !current.trim().is_empty() {
        terms.push(current);
    }
    if terms.is_empty() {
        return Err(bad("empty literal"));
    }

    let mut form = Form::new(space);
    for term in &terms {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; space.n];
        let mut trimmed = term.trim();
        let mut negate = false;
        if let Some(rest) = trimmed.strip_prefix('-') {
            negate = true;
            trimmed = rest.trim();
        }
        if trimmed.is_empty() {
            return Err(bad("dangling sign"));
        }
        for factor in trimmed.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if let Some(var_part) = factor.strip_prefix('x') {
                let (var, exp) = match var_part.split_once('^') {
                    Some((v, e)) => (v, e),
                    None => (var_part, "1"),
                };
                let var: usize = var.trim().parse().map_err(|_| bad("bad variable index"))?;
                let exp: u32 = exp.trim().parse().map_err(|_| bad("bad exponent"))?;
                if var == 0 || var > space.n {
                    return Err(bad("variable index out of range"));
                }
                exps[var - 1] += exp;
            } else {
                let c: Rational = factor.parse().map_err(|e: ExactNumError| {
                    FormError::ParseForm(alloc::format!("{e} in {input:?}"))
                })?;
                coeff = coeff * c;
            }
        }
        if negate {
            coeff = -coeff;
        }
        form.add_term(MultiIndex(exps), coeff)?;
    }
    Ok(form)
}

/// The separation value `l_y(p) = sum_alpha p_alpha y_alpha`.
pub fn evaluate_functional<T: Scalar>(
    p: &Form,
    y: &crate::moments::PseudoMomentVector<T>,
) -> Result<T, FormError> {
    if p.space() != y.space() {
        return Err(FormError::SpaceMismatch);
    }
    let index = y.space().index_map();
    let mut acc = T::zero();
    for (idx, c) in p.terms() {
        let pos = index[idx];
        acc = acc + T::from_rational(c) * y.values()[pos].clone();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn graded_lex_basis() {
        let basis = monomial_basis(3, 3);
        let expected: Vec<MultiIndex> = [
            [3, 0, 0],
            [2, 1, 0],
            [2, 0, 1],
            [1, 2, 0],
            [1, 1, 1],
            [1, 0, 2],
            [0, 3, 0],
            [0, 2, 1],
            [0, 1, 2],
            [0, 0, 3],
        ]
        .into_iter()
        .map(MultiIndex::from)
        .collect();
        assert_eq!(basis, expected);

        assert_eq!(monomial_basis(3, 6).len(), 28);
        assert_eq!(monomial_basis(1, 5), vec![MultiIndex::from([5])]);
        assert_eq!(FormSpace::new(3, 6).dimension(), 28);
        assert_eq!(FormSpace::new(3, 3).dimension(), 10);
        assert_eq!(FormSpace::new(3, 8).dimension(), 45);
        assert_eq!(FormSpace::new(4, 4).dimension(), 35);
    }

    #[test]
    fn basis_dimension_and_round_trip() {
        for n in 1..=5 {
            for d in 0..=8 {
                let space = FormSpace::new(n, d);
                let basis = space.basis();
                assert_eq!(basis.len(), space.dimension());
                let map = space.index_map();
                for (i, m) in basis.iter().enumerate() {
                    assert_eq!(map[m], i);
                }
            }
        }
    }

    #[test]
    fn named_forms_match_displays() {
        let m = named_form(FormId::Motzkin);
        assert_eq!(m.num_terms(), 4);
        assert_eq!(m.coeff(&MultiIndex::from([2, 2, 2])), rat(-3, 1));

        let r = named_form(FormId::Robinson);
        assert_eq!(r.num_terms(), 10);
        assert_eq!(r.coeff(&MultiIndex::from([2, 2, 2])), rat(3, 1));

        let z = named_form(FormId::Reznick8);
        assert_eq!(z.num_terms(), 4);
        assert_eq!(z.coeff(&MultiIndex::from([2, 2, 4])), rat(-3, 1));

        let cl = named_form(FormId::ChoiLam);
        assert_eq!(cl.num_terms(), 5);
        assert_eq!(cl.coeff(&MultiIndex::from([1, 1, 1, 1])), rat(-4, 1));
    }

    #[test]
    fn literal_round_trip() {
        for id in FormId::ALL {
            let form = named_form(id);
            let literal = alloc::format!("{form}");
            let parsed = parse_form_literal(&literal, id.space()).unwrap();
            assert_eq!(parsed, form);
        }
    }

    #[test]
    fn literal_parsing() {
        let space = FormSpace::new(3, 6);
        let f = parse_form_literal("-3*x1^2*x2^2*x3^2 + x3^6", space).unwrap();
        assert_eq!(f.coeff(&MultiIndex::from([2, 2, 2])), rat(-3, 1));
        assert_eq!(f.coeff(&MultiIndex::from([0, 0, 6])), rat(1, 1));

        // minus as a term separator, default exponents
        let g = parse_form_literal("x1^5*x2 - 1/2*x1^4*x2*x3", space).unwrap();
        assert_eq!(g.coeff(&MultiIndex::from([5, 1, 0])), rat(1, 1));
        assert_eq!(g.coeff(&MultiIndex::from([4, 1, 1])), rat(-1, 2));

        // inhomogeneous term rejected
        assert!(parse_form_literal("x1^2", space).is_err());
        // unknown variable rejected
        assert!(parse_form_literal("x4^6", space).is_err());

        // like terms combine; cancelling terms vanish
        let h = parse_form_literal("x1^6 + 2*x1^6 - 3*x1^6 + x2^6", space).unwrap();
        assert_eq!(h.num_terms(), 1);
    }

    #[test]
    fn point_evaluation() {
        let m = named_form(FormId::Motzkin);
        // p_M(1, 1, 1) = 1 + 1 + 1 - 3 = 0
        let one = [rat(1, 1), rat(1, 1), rat(1, 1)];
        assert_eq!(m.eval_at(&one), rat(0, 1));
        // p_M(1, 2, 0) = 4 + 16 = 20
        assert_eq!(m.eval_at(&[rat(1, 1), rat(2, 1), rat(0, 1)]), rat(20, 1));
    }

    #[test]
    fn named_forms_nonnegative_at_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for id in FormId::ALL {
            let form = named_form(id);
            for _ in 0..250 {
                let point: alloc::vec::Vec<Rational> = (0..id.space().n)
                    .map(|_| rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=10)))
                    .collect();
                assert!(
                    form.eval_at(&point).signum() >= 0,
                    "{} negative at {:?}",
                    id.name(),
                    point
                );
            }
        }
    }
}
