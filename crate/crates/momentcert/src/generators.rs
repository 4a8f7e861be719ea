//! Constructive certificate generators for the four named forms.
//!
//! Each algorithm is a validating builder over its orbit parameters: the
//! caller may pin any subset, unpinned parameters default to the binding
//! bound (or its ceiling in integer mode), and every violated constraint
//! is reported with the step it belongs to. The extreme-ray builders
//! saturate the determinant equalities that force block ranks down, and
//! re-verify the resulting rank pattern before returning.
//!
//! Also here: membership, integer-point enumeration, minimal-sum search
//! and extreme rays for the Robinson cone; the closed-form Choi-Lam rank
//! classification; and the checker for convex decompositions into
//! `Q(sqrt 2)` extreme-ray endpoints.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{QuadExt, Rational};
use crate::forms::FormId;
use crate::linalg::SymMatrix;
use crate::moments::moment_matrix;
use crate::symmetry::{block_decompose, orbit_embed, param_names, OrbitParams};

/// A violated precondition or bound, named after the algorithm step it
/// belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorError {
    pub algorithm: &'static str,
    pub step: &'static str,
    pub message: String,
}

impl GeneratorError {
    fn new(algorithm: &'static str, step: &'static str, message: impl Into<String>) -> Self {
        GeneratorError {
            algorithm,
            step,
            message: message.into(),
        }
    }
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.algorithm, self.step, self.message)
    }
}

impl core::error::Error for GeneratorError {}

fn require(
    ok: bool,
    algorithm: &'static str,
    step: &'static str,
    message: impl Into<String>,
) -> Result<(), GeneratorError> {
    if ok {
        Ok(())
    } else {
        Err(GeneratorError::new(algorithm, step, message))
    }
}

/// Resolve one lower-bounded parameter: pinned values are validated,
/// omitted ones default to the bound (ceiling in integer mode).
fn pick_lower(
    algorithm: &'static str,
    step: &'static str,
    name: &str,
    pinned: Option<&Rational>,
    bound: Rational,
    integer_mode: bool,
) -> Result<Rational, GeneratorError> {
    match pinned {
        Some(v) => {
            if v >= &bound {
                Ok(v.clone())
            } else {
                Err(GeneratorError::new(
                    algorithm,
                    step,
                    alloc::format!("{name} = {v} violates {name} >= {bound}"),
                ))
            }
        }
        None => Ok(if integer_mode { bound.ceil() } else { bound }),
    }
}

fn motzkin_params(
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    e: Rational,
    f: Rational,
) -> OrbitParams<Rational> {
    OrbitParams::new(FormId::Motzkin, vec![a, b, c, d, e, f]).expect("arity 6")
}

/// General Motzkin certificate builder (steps 0-4).
///
/// Bound chain: `f > 0`; `c >= (f+3)/3` and `0 < e <= (3c-f-1)/2`;
/// `a >= (c^2+1)/e`; `b >= max(c, 2a^2/f - c)`;
/// `d >= max(b^2/a, e + e(b-c)^2/(ae-c^2))`. Every output satisfies
/// `f - 3c + 2e <= -1` with all parity blocks PSD.
pub fn gen_motzkin_general(
    f: Option<&Rational>,
    c: Option<&Rational>,
    e: Option<&Rational>,
    a: Option<&Rational>,
    b: Option<&Rational>,
    d: Option<&Rational>,
    integer_mode: bool,
) -> Result<OrbitParams<Rational>, GeneratorError> {
    const ALG: &str = "motzkin general";
    let one = Rational::one;

    let f = f.cloned().unwrap_or_else(one);
    require(f.is_positive(), ALG, "step 0", "f must be positive")?;

    let c_bound = (&f + Rational::from(3)) / Rational::from(3);
    let c = pick_lower(ALG, "step 1", "c", c, c_bound, integer_mode)?;
    let e_bound = (Rational::from(3) * &c - &f - one()) / Rational::from(2);
    let e = match e {
        Some(v) => {
            require(
                v.is_positive() && v <= &e_bound,
                ALG,
                "step 1",
                alloc::format!("e = {v} violates 0 < e <= {e_bound}"),
            )?;
            v.clone()
        }
        None => {
            let v = if integer_mode { e_bound.floor() } else { e_bound };
            require(v.is_positive(), ALG, "step 1", "no positive e below the bound")?;
            v
        }
    };

    let a_bound = (&c * &c + one()) / &e;
    let a = pick_lower(ALG, "step 2", "a", a, a_bound, integer_mode)?;

    let b_bound = c.clone().max(Rational::from(2) * &a * &a / &f - &c);
    let b = pick_lower(ALG, "step 3", "b", b, b_bound, integer_mode)?;

    let w = &a * &e - &c * &c;
    let bc = &b - &c;
    let d_bound = (&b * &b / &a).max(&e + &e * &bc * &bc / &w);
    let d = pick_lower(ALG, "step 4", "d", d, d_bound, integer_mode)?;

    Ok(motzkin_params(a, b, c, d, e, f))
}

/// Rank-7 Motzkin extreme-ray builder: saturate both determinant
/// equalities `b = 2a^2/f - c` and `d = e + e(b-c)^2/(ae-c^2)`.
pub fn gen_motzkin_extreme(
    f: &Rational,
    c: &Rational,
    e: &Rational,
    a: &Rational,
) -> Result<OrbitParams<Rational>, GeneratorError> {
    const ALG: &str = "motzkin rank7";
    require(
        f.is_positive() && c.is_positive() && e.is_positive(),
        ALG,
        "step 0",
        "f, c, e must be positive",
    )?;
    let value = f - Rational::from(3) * c + Rational::from(2) * e;
    require(
        value.is_negative(),
        ALG,
        "step 0",
        alloc::format!("f - 3c + 2e = {value} must be negative"),
    )?;
    let w = a * e - c * c;
    require(
        a.is_positive() && w.is_positive(),
        ALG,
        "step 1",
        alloc::format!("need a > 0 with ae - c^2 > 0, got ae - c^2 = {w}"),
    )?;
    let x = a * a / f;
    require(
        &x > c,
        ALG,
        "step 1",
        alloc::format!("need a^2/f > c, got {x} <= {c}"),
    )?;
    let b = Rational::from(2) * &x - c;
    let bc = &b - c;
    let d = e + e * &bc * &bc / &w;
    Ok(motzkin_params(
        a.clone(),
        b,
        c.clone(),
        d,
        e.clone(),
        f.clone(),
    ))
}

/// The five integer Motzkin extreme rays with `f = 1`, `c = e = 2`:
/// `b = 2a^2 - 2` and `d = 2 + (2a^2-4)^2/(a-2)`, integral exactly when
/// `a - 2` divides 16, i.e. `a` in {3, 4, 6, 10, 18}.
pub fn gen_motzkin_integer_family() -> Vec<OrbitParams<Rational>> {
    [3i64, 4, 6, 10, 18]
        .into_iter()
        .map(|a| {
            let b = 2 * a * a - 2;
            let num = 2 * a * a - 4;
            debug_assert_eq!((num * num) % (a - 2), 0);
            let d = 2 + num * num / (a - 2);
            motzkin_params(
                Rational::from(a),
                Rational::from(b),
                Rational::from(2),
                Rational::from(d),
                Rational::from(2),
                Rational::one(),
            )
        })
        .collect()
}

/// Membership in the Robinson certificate cone: nonnegative parameters
/// with `a - 2b + c < 0`, `a >= b >= c` and `a(b+c) >= 2b^2`.
pub fn robinson_member(a: &Rational, b: &Rational, c: &Rational) -> bool {
    a.signum() >= 0
        && b.signum() >= 0
        && c.signum() >= 0
        && (a - Rational::from(2) * b + c).is_negative()
        && a >= b
        && b >= c
        && a * (b + c) >= Rational::from(2) * b * b
}

/// All integer points `0 <= c <= b <= a` of the Robinson cone at height
/// `a`, as sorted `(b, c)` pairs.
pub fn robinson_enumerate(a: u64) -> Vec<(u64, u64)> {
    let ai = a as i128;
    let mut out = Vec::new();
    for b in 0..=a {
        let bi = b as i128;
        for c in 0..=b {
            let ci = c as i128;
            if ai - 2 * bi + ci < 0 && ai * (bi + ci) >= 2 * bi * bi {
                out.push((b, c));
            }
        }
    }
    out
}

/// Number of integer points `N(a)`.
pub fn robinson_count(a: u64) -> usize {
    robinson_enumerate(a).len()
}

/// Exhaustive search for the integer certificates of minimal sum
/// `a + b + c`; returns all minimizers in lexicographic order.
pub fn robinson_minimal_integer() -> Vec<(u64, u64, u64)> {
    let mut best: Option<u64> = None;
    let mut out: Vec<(u64, u64, u64)> = Vec::new();
    // b <= a and c <= b force a <= sum; heights above 17 cannot beat the
    // first nonempty sections
    for a in 1..=17 {
        for (b, c) in robinson_enumerate(a) {
            let sum = a + b + c;
            if sum > 17 {
                continue;
            }
            match best {
                Some(s) if sum > s => {}
                Some(s) if sum == s => out.push((a, b, c)),
                _ => {
                    best = Some(sum);
                    out = vec![(a, b, c)];
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Robinson extreme ray: a cone member on the parabola `a(b+c) = 2b^2`
/// (determinant zero in every 3x3 block, total rank 7).
pub fn robinson_extreme(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<OrbitParams<Rational>, GeneratorError> {
    const ALG: &str = "robinson extreme";
    let lhs = a * (b + c);
    let rhs = Rational::from(2) * b * b;
    require(
        lhs == rhs,
        ALG,
        "parabola",
        alloc::format!("a(b+c) = {lhs} must equal 2b^2 = {rhs}"),
    )?;
    require(
        robinson_member(a, b, c),
        ALG,
        "membership",
        "parameters are not a Robinson certificate",
    )?;
    Ok(OrbitParams::new(FormId::Robinson, vec![a.clone(), b.clone(), c.clone()]).expect("arity 3"))
}

/// All integer Robinson extreme rays with height at most `max_a`,
/// lexicographically sorted.
pub fn robinson_extreme_integer(max_a: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for a in 1..=max_a {
        for (b, c) in robinson_enumerate(a) {
            if (a as i128) * (b as i128 + c as i128) == 2 * (b as i128) * (b as i128) {
                out.push((a, b, c));
            }
        }
    }
    out.sort_unstable();
    out
}

fn reznick_params(v: [Rational; 9]) -> OrbitParams<Rational> {
    OrbitParams::new(FormId::Reznick8, v.to_vec()).expect("arity 9")
}

struct ReznickSeed {
    e: Rational,
    f: Rational,
    h: Rational,
    i: Rational,
}

impl ReznickSeed {
    fn value_is_strict(&self) -> bool {
        (&self.f + Rational::from(2) * &self.e - Rational::from(3) * &self.i).is_negative()
    }
}

fn reznick_seed(
    algorithm: &'static str,
    e: Option<&Rational>,
    f: Option<&Rational>,
    h: Option<&Rational>,
    i: Option<&Rational>,
) -> Result<ReznickSeed, GeneratorError> {
    // canonical admissible seed: f + 2e - 3i = -1, eh - i^2 = 3
    let e = e.cloned().unwrap_or_else(|| Rational::from(3));
    let f = f.cloned().unwrap_or_else(|| Rational::from(2));
    let h = h.cloned().unwrap_or_else(|| Rational::from(4));
    let i = i.cloned().unwrap_or_else(|| Rational::from(3));
    require(
        e.is_positive() && f.is_positive() && h.is_positive() && i.is_positive(),
        algorithm,
        "step 0",
        "e, f, h, i must be positive",
    )?;
    let value = &f + Rational::from(2) * &e - Rational::from(3) * &i;
    require(
        value <= Rational::from(-1),
        algorithm,
        "step 0",
        alloc::format!("f + 2e - 3i = {value} must be <= -1"),
    )?;
    let disc = &e * &h - &i * &i;
    require(
        disc.is_positive(),
        algorithm,
        "step 0",
        alloc::format!("eh - i^2 = {disc} must be positive"),
    )?;
    Ok(ReznickSeed { e, f, h, i })
}

fn reznick_g_bound(seed: &ReznickSeed) -> Rational {
    let ReznickSeed { e: _, f, h, i } = seed;
    i.clone()
        .max((Rational::from(2) * h * h - i * f + Rational::one()) / f)
}

fn reznick_d_bound(seed: &ReznickSeed, g: &Rational) -> Rational {
    let ReznickSeed { e, f: _, h, i } = seed;
    let gi = g - i;
    (g * g / e)
        .max(h * &gi * &gi / (e * h - i * i) + h)
        .max(g * (g + i) / e - h)
}

fn reznick_c_bound(seed: &ReznickSeed, g: &Rational, d: &Rational) -> Rational {
    let ReznickSeed { e: _, f, h, i } = seed;
    (h * (d + h) / (g + i))
        .max((Rational::from(2) * h * h - f * i) / i)
        .max(f.clone())
}

fn reznick_b_bound(seed: &ReznickSeed, g: &Rational) -> Rational {
    let ReznickSeed { e, f, h, i } = seed;
    let gi = g + i;
    let s2 = &gi * i - Rational::from(2) * e * h;
    let s3 = &gi * f - Rational::from(2) * h * h;
    Rational::from(2) * e * e / &gi + &s2 * &s2 / (&gi * &s3)
}

/// Lower bound on `a` coming from the split 2x2 block
/// `[[a-f, d-h], [d-h, g-i]]`.
fn reznick_a_bound(
    algorithm: &'static str,
    seed: &ReznickSeed,
    g: &Rational,
    d: &Rational,
) -> Result<Rational, GeneratorError> {
    let ReznickSeed { e: _, f, h, i } = seed;
    if g == i {
        // the block degenerates: (a - f) * 0 >= (d - h)^2
        require(
            d == h,
            algorithm,
            "step 5",
            "g = i forces d = h; no feasible a otherwise",
        )?;
        Ok(f.clone())
    } else {
        let dmh = d - h;
        Ok(&dmh * &dmh / (g - i) + f)
    }
}

/// Exact lower bound on `a` making the big even block PSD.
///
/// In the integer-scaled basis that block is `[[2(a+f), w^t], [w, C]]`
/// with `C` fixed by `(b, c, d, e, f, g, h, i)`; since `a` enters only
/// the corner, PSD holds exactly for `2(a+f) >= w^t C^+ w` — provided
/// `w` lies in the range of `C` at all, which can fail when `b` and `c`
/// sit on their bounds simultaneously.
fn reznick_schur_a_bound(
    algorithm: &'static str,
    seed: &ReznickSeed,
    g: &Rational,
    d: &Rational,
    c: &Rational,
    b: &Rational,
) -> Result<Rational, GeneratorError> {
    let ReznickSeed { e, f, h, i } = seed;
    let two = Rational::from(2);
    let trailing = crate::linalg::Matrix::from_rows(vec![
        vec![b.clone(), i.clone(), &two * e],
        vec![i.clone(), f.clone(), &two * h],
        vec![&two * e, &two * h, &two * (g + i)],
    ]);
    let w = [&two * g, &two * c, &two * (d + h)];
    let x = trailing.solve_consistent(&w).ok_or_else(|| {
        GeneratorError::new(
            algorithm,
            "step 5",
            "no a makes the even block PSD for these b, c; increase b above its bound",
        )
    })?;
    let mut quad = Rational::zero();
    for (wi, xi) in w.iter().zip(&x) {
        quad = quad + wi * xi;
    }
    Ok(quad / two - f)
}

/// General Reznick-octic certificate builder (steps 0-5).
#[allow(clippy::too_many_arguments)]
pub fn gen_reznick_general(
    e: Option<&Rational>,
    f: Option<&Rational>,
    h: Option<&Rational>,
    i: Option<&Rational>,
    g: Option<&Rational>,
    d: Option<&Rational>,
    c: Option<&Rational>,
    b: Option<&Rational>,
    a: Option<&Rational>,
    integer_mode: bool,
) -> Result<OrbitParams<Rational>, GeneratorError> {
    const ALG: &str = "reznick8 general";
    let seed = reznick_seed(ALG, e, f, h, i)?;
    let g = pick_lower(ALG, "step 1", "g", g, reznick_g_bound(&seed), integer_mode)?;
    let d = pick_lower(ALG, "step 2", "d", d, reznick_d_bound(&seed, &g), integer_mode)?;
    let c = pick_lower(ALG, "step 3", "c", c, reznick_c_bound(&seed, &g, &d), integer_mode)?;
    let b = pick_lower(ALG, "step 4", "b", b, reznick_b_bound(&seed, &g), integer_mode)?;
    let a_bound = reznick_a_bound(ALG, &seed, &g, &d)?
        .max(reznick_schur_a_bound(ALG, &seed, &g, &d, &c, &b)?);
    let a = pick_lower(ALG, "step 5", "a", a, a_bound, integer_mode)?;
    let ReznickSeed { e, f, h, i } = seed;
    Ok(reznick_params([a, b, c, d, e, f, g, h, i]))
}

/// Which determinant equalities the extreme-ray builder saturates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ReznickSteps {
    pub step1: bool,
    pub step2: bool,
    pub step3: bool,
}

impl ReznickSteps {
    pub const ALL: ReznickSteps = ReznickSteps {
        step1: true,
        step2: true,
        step3: true,
    };

    pub fn from_list(steps: &[u8]) -> Self {
        ReznickSteps {
            step1: steps.contains(&1),
            step2: steps.contains(&2),
            step3: steps.contains(&3),
        }
    }

    /// Predicted ranks of `(M41, M42, M43, M441, M442)` and the total.
    pub fn predicted_ranks(&self) -> ([usize; 5], usize) {
        let blocks = match (self.step1, self.step2, self.step3) {
            (false, false, false) => [3, 3, 3, 2, 4],
            (false, false, true) => [3, 3, 3, 2, 3],
            (false, true, false) => [3, 3, 3, 1, 4],
            (true, false, false) => [3, 2, 2, 2, 4],
            (false, true, true) => [3, 3, 3, 1, 3],
            (true, true, false) => [3, 2, 2, 1, 4],
            (true, false, true) => [3, 2, 2, 2, 3],
            (true, true, true) => [3, 2, 2, 1, 3],
        };
        (blocks, blocks.iter().sum())
    }
}

/// Output of the Reznick extreme-ray builder, with the intermediates of
/// the Schur alignment and the rank pattern the step choice predicts.
#[derive(Clone, Debug)]
pub struct ReznickExtreme {
    pub params: OrbitParams<Rational>,
    pub predicted_block_ranks: [usize; 5],
    pub predicted_rank: usize,
    pub s2: Rational,
    pub s3: Rational,
}

/// Low-rank Reznick certificates: saturate the requested subset of the
/// three determinant equalities (rank table rows 11-15); parameters not
/// saturated sit strictly above their general-algorithm bound. With all
/// three steps the output is a rank-11 extreme ray.
pub fn gen_reznick_extreme(
    e: &Rational,
    f: &Rational,
    h: &Rational,
    i: &Rational,
    g: &Rational,
    steps: ReznickSteps,
) -> Result<ReznickExtreme, GeneratorError> {
    const ALG: &str = "reznick8 extreme";
    let seed = reznick_seed(ALG, Some(e), Some(f), Some(h), Some(i))?;
    require(
        seed.value_is_strict(),
        ALG,
        "step 0",
        "f + 2e - 3i must be strictly negative",
    )?;
    require(
        g > i,
        ALG,
        "step 0",
        alloc::format!("need g > i, got g = {g}, i = {i}"),
    )?;

    let one = Rational::one();
    let d = if steps.step1 {
        let gi = g - i;
        h + h * &gi * &gi / (e * h - i * i)
    } else {
        reznick_d_bound(&seed, g) + &one
    };
    let gi = g + i;
    let s2 = &gi * i - Rational::from(2) * e * h;
    let s3 = &gi * f - Rational::from(2) * h * h;
    require(
        s3.is_positive(),
        ALG,
        "step 3",
        alloc::format!("s3 = (g+i)f - 2h^2 = {s3} must be positive"),
    )?;
    let b = if steps.step3 {
        Rational::from(2) * e * e / &gi + &s2 * &s2 / (&gi * &s3)
    } else {
        reznick_b_bound(&seed, g) + &one
    };
    require(
        !s2.is_zero(),
        ALG,
        "step 4",
        "s2 = (g+i)i - 2eh vanishes; the alignment of c is undefined",
    )?;
    let dph = &d + h;
    let c = h * &dph / &gi + (&s3 / &s2) * (g - e * &dph / &gi);
    let a = if steps.step2 {
        let dmh = &d - h;
        f + &dmh * &dmh / (g - i)
    } else {
        reznick_a_bound(ALG, &seed, g, &d)?
            .max(reznick_schur_a_bound(ALG, &seed, g, &d, &c, &b)?)
            + &one
    };

    let params = reznick_params([
        a,
        b,
        c,
        d,
        e.clone(),
        f.clone(),
        g.clone(),
        h.clone(),
        i.clone(),
    ]);
    let (predicted_block_ranks, predicted_rank) = steps.predicted_ranks();

    // the saturation argument is only as good as its outcome; re-derive
    // the block ranks and PSD status before handing the result out
    let y = orbit_embed(&params);
    let blocks = block_decompose(FormId::Reznick8, &y).expect("orbit embeddings are invariant");
    require(
        blocks.iter().all(SymMatrix::is_psd),
        ALG,
        "verification",
        "a computed block is not PSD for this seed",
    )?;
    let observed = [
        blocks[0].rank() + blocks[1].rank(),
        blocks[2].rank(),
        blocks[3].rank(),
        blocks[4].rank(),
        blocks[5].rank(),
    ];
    require(
        observed == predicted_block_ranks,
        ALG,
        "verification",
        alloc::format!(
            "block ranks {observed:?} do not match the predicted {predicted_block_ranks:?}"
        ),
    )?;

    Ok(ReznickExtreme {
        params,
        predicted_block_ranks,
        predicted_rank,
        s2,
        s3,
    })
}

fn choilam_params(v: [Rational; 5]) -> OrbitParams<Rational> {
    OrbitParams::new(FormId::ChoiLam, v.to_vec()).expect("arity 5")
}

/// General Choi-Lam certificate builder: `a = 4e - 3c - f`,
/// `d = e^2/c + g`, `b >= max(c, 3d^2/a - 2c)`; the separation value is
/// exactly `-f`.
pub fn gen_choilam_general(
    c: Option<&Rational>,
    f: Option<&Rational>,
    e: Option<&Rational>,
    g: Option<&Rational>,
    b: Option<&Rational>,
    integer_mode: bool,
) -> Result<OrbitParams<Rational>, GeneratorError> {
    const ALG: &str = "choilam general";
    let c = c.cloned().unwrap_or_else(Rational::one);
    let f = f.cloned().unwrap_or_else(Rational::one);
    require(c.is_positive(), ALG, "step 0", "c must be positive")?;
    require(f.is_positive(), ALG, "step 0", "f must be positive")?;
    let e_bound = (Rational::from(3) * &c + &f) / Rational::from(4);
    let e = pick_lower(ALG, "step 0", "e", e, e_bound, integer_mode)?;
    let a = Rational::from(4) * &e - Rational::from(3) * &c - &f;

    let g = match g {
        Some(v) => {
            require(
                v.signum() >= 0,
                ALG,
                "step 1",
                alloc::format!("g = {v} must be nonnegative"),
            )?;
            v.clone()
        }
        None => Rational::zero(),
    };
    let d = &e * &e / &c + &g;

    require(
        a.is_positive(),
        ALG,
        "step 2",
        "a = 4e - 3c - f vanishes; choose e strictly above (3c + f)/4",
    )?;
    let b_bound = c
        .clone()
        .max(Rational::from(3) * &d * &d / &a - Rational::from(2) * &c);
    let b = pick_lower(ALG, "step 2", "b", b, b_bound, integer_mode)?;

    Ok(choilam_params([a, b, c, d, e]))
}

/// Rank-6 Choi-Lam extreme rays: `c = u^2`, `d = v^2`, `e = uv` saturate
/// `cd = e^2`, and `a = 3d^2/(b+2c)` saturates `(b+2c)a = 3d^2`. The
/// threshold on `b` keeps the separation strict; hitting it exactly
/// yields value 0, which is rejected.
pub fn gen_choilam_extreme(
    u: &Rational,
    v: &Rational,
    b: &Rational,
) -> Result<OrbitParams<Rational>, GeneratorError> {
    const ALG: &str = "choilam extreme";
    require(
        u.is_positive() && v.is_positive(),
        ALG,
        "step 0",
        "u and v must be positive",
    )?;
    let margin = Rational::from(4) * v - Rational::from(3) * u;
    require(
        margin.is_positive(),
        ALG,
        "step 0",
        alloc::format!("need 4v > 3u, got 4v - 3u = {margin}"),
    )?;
    let c = u * u;
    let d = v * v;
    let e = u * v;
    let b_bound = c
        .clone()
        .max(Rational::from(3) * &d * &d / (u * &margin) - Rational::from(2) * &c);
    require(
        b >= &b_bound,
        ALG,
        "step 2",
        alloc::format!("b = {b} violates b >= {b_bound}"),
    )?;
    let a = Rational::from(3) * &d * &d / (b + Rational::from(2) * &c);
    let value = &a + Rational::from(3) * &c - Rational::from(4) * &e;
    require(
        value.is_negative(),
        ALG,
        "step 3",
        alloc::format!("separation value a + 3c - 4e = {value} is not strictly negative"),
    )?;
    Ok(choilam_params([a, b.clone(), c, d, e]))
}

/// Closed-form Choi-Lam rank: `2 + r1 + 3 r2`, where `r1` drops to 1 on
/// the parabola `(b+2c)a = 3d^2` and `r2` drops to 1 on `cd = e^2`.
/// Must match the exact rank of the embedded moment matrix.
pub fn choilam_rank(params: &OrbitParams<Rational>) -> Result<usize, GeneratorError> {
    const ALG: &str = "choilam rank";
    require(
        params.form() == FormId::ChoiLam,
        ALG,
        "input",
        "parameters are not Choi-Lam",
    )?;
    let [a, b, c, d, e]: [Rational; 5] = params.values().to_vec().try_into().expect("arity 5");
    let member = a.signum() >= 0
        && b.signum() >= 0
        && c.signum() >= 0
        && d.signum() >= 0
        && b >= c
        && (&b + Rational::from(2) * &c) * &a >= Rational::from(3) * &d * &d
        && &c * &d >= &e * &e
        && params.functional_shortcut().is_negative();
    require(member, ALG, "input", "parameters are not in the Choi-Lam cone")?;
    let r1 = if (&b + Rational::from(2) * &c) * &a == Rational::from(3) * &d * &d {
        1
    } else {
        2
    };
    let r2 = if &c * &d == &e * &e { 1 } else { 2 };
    Ok(2 + r1 + 3 * r2)
}

/// Per-endpoint findings of a decomposition check.
#[derive(Clone, Debug)]
pub struct EndpointReport {
    pub psd: bool,
    pub rank: usize,
    pub value: QuadExt,
}

/// Result of checking a claimed convex decomposition into extreme rays.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    /// Whether the weighted endpoint sum reproduces the target exactly.
    pub identity_ok: bool,
    /// Nonzero residuals per orbit parameter, when the identity fails.
    pub residuals: Vec<(&'static str, QuadExt)>,
    pub endpoints: Vec<EndpointReport>,
    /// Ranks an extreme ray of this cone may have.
    pub expected_ranks: Vec<usize>,
    pub passed: bool,
    /// Human-readable reasons for failure, empty when passed.
    pub failures: Vec<String>,
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "vector identity: {}",
            if self.identity_ok { "ok" } else { "FAILED" }
        )?;
        for (name, residual) in &self.residuals {
            writeln!(f, "  residual on {name}: {residual}")?;
        }
        for (k, ep) in self.endpoints.iter().enumerate() {
            writeln!(
                f,
                "endpoint {}: psd = {}, rank = {}, value = {}",
                k + 1,
                ep.psd,
                ep.rank,
                ep.value
            )?;
        }
        write!(
            f,
            "decomposition: {}",
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for reason in &self.failures {
            write!(f, "\n  {reason}")?;
        }
        Ok(())
    }
}

fn extreme_ranks(form: FormId) -> Vec<usize> {
    // known extreme-ray ranks outside the moment cone, per space
    match form {
        FormId::Motzkin | FormId::Robinson => vec![7],
        FormId::Reznick8 => vec![10, 11],
        FormId::ChoiLam => vec![6],
    }
}

/// Check that `y` equals the weighted sum of the endpoints exactly in
/// `Q(sqrt 2)`, and that every endpoint is a PSD, strictly separating,
/// extreme-rank certificate. Precondition failures (weight count, sign,
/// sum, endpoint arity) are errors; substantive check failures are
/// reported in the returned [`DecompositionReport`].
pub fn decompose_check(
    y: &OrbitParams<Rational>,
    endpoints: &[OrbitParams<QuadExt>],
    weights: &[Rational],
) -> Result<DecompositionReport, GeneratorError> {
    const ALG: &str = "decompose check";
    require(
        !endpoints.is_empty() && endpoints.len() == weights.len(),
        ALG,
        "weights",
        "need one positive weight per endpoint",
    )?;
    require(
        weights.iter().all(Rational::is_positive),
        ALG,
        "weights",
        "weights must be positive",
    )?;
    let total: Rational = weights.iter().cloned().sum();
    require(
        total == Rational::one(),
        ALG,
        "weights",
        alloc::format!("weights do not sum to 1 (sum = {total})"),
    )?;
    for ep in endpoints {
        require(
            ep.form() == y.form(),
            ALG,
            "endpoints",
            "endpoint form does not match the target",
        )?;
    }

    let names = param_names(y.form());
    let mut residuals = Vec::new();
    for (k, name) in names.iter().enumerate() {
        let mut acc = QuadExt::zero();
        for (ep, w) in endpoints.iter().zip(weights) {
            acc = acc + ep.values()[k].clone() * QuadExt::from_rational(w.clone());
        }
        let residual = acc - QuadExt::from_rational(y.values()[k].clone());
        if !residual.is_zero() {
            residuals.push((*name, residual));
        }
    }
    let identity_ok = residuals.is_empty();

    let expected_ranks = extreme_ranks(y.form());
    let mut failures: Vec<String> = Vec::new();
    if !identity_ok {
        failures.push(String::from(
            "weighted endpoint sum does not reproduce the target",
        ));
    }
    let mut endpoint_reports = Vec::new();
    for (k, ep) in endpoints.iter().enumerate() {
        let vec = orbit_embed(ep);
        let mm = moment_matrix(&vec).matrix;
        let psd = mm.is_psd();
        let rank = mm.rank();
        let value = ep.functional_shortcut();
        if !psd {
            failures.push(alloc::format!("endpoint {} is not PSD", k + 1));
        }
        if !expected_ranks.contains(&rank) {
            failures.push(alloc::format!(
                "endpoint {} has rank {rank}, expected one of {expected_ranks:?}",
                k + 1
            ));
        }
        if value.signum() >= 0 {
            failures.push(alloc::format!(
                "endpoint {} has nonnegative value {value}",
                k + 1
            ));
        }
        endpoint_reports.push(EndpointReport { psd, rank, value });
    }

    Ok(DecompositionReport {
        identity_ok,
        residuals,
        endpoints: endpoint_reports,
        expected_ranks,
        passed: failures.is_empty(),
        failures,
    })
}
