//! Splitting types of bundles on the parametrizing `P^1`.
//!
//! Every section space is an explicit kernel or quotient of a space of
//! 5-tuples of binary forms:
//!
//! * `f^* Omega(1) (m)`: tuples `(g_i)` of degree `m` with `sum g_i f_i = 0`.
//! * `N_{C/P^4}(m)`: degree-`(d+m)` tuples modulo `g f` (`deg g = m`) and
//!   `A d_s f + B d_t f` (`deg A = deg B = m + 1`).
//! * `N^*_{C/P^4}(j)`: tuples `(g_i)` of degree `j - d` with
//!   `sum g_i d_s f_i = sum g_i d_t f_i = 0`.
//! * `N_{C/F}(m)`: kernel of `(g_i) -> sum g_i (d_i F)(f)` on `N_{C/P^4}(m)`.
//!
//! All of these need `p` not dividing `d` or 5 (Euler identities), which the
//! curve's field guarantees.

use serde::{Deserialize, Serialize};

use crate::algebra::{rank, BinaryForm, Matrix, Var};
use crate::cohom::QuinticForm;
use crate::curve::{validate, RationalCurveMap, DEFAULT_TRIALS};
use crate::error::{Error, Result};
use crate::ModForm;

/// Multiset of line-bundle degrees, kept in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType {
    parts: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<i64>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType { parts }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// `h0` of the bundle twisted by `m`.
    pub fn h0(&self, m: i64) -> usize {
        self.parts.iter().map(|&a| (a + m + 1).max(0) as usize).sum()
    }

    pub fn is_balanced(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(hi), Some(lo)) => hi - lo <= 1,
            _ => true,
        }
    }
}

fn check_twist(m: i64) -> Result<usize> {
    usize::try_from(m).map_err(|_| Error::InvalidArgument(format!("twist must be nonnegative, got {m}")))
}

/// Matrix of `(g_0, .., g_n) -> sum g_i * targets[i]` with `deg g_i = m`.
/// Column `(i, j)` holds `s^(m-j) t^j * targets[i]`.
fn multiplication_matrix(c: &RationalCurveMap, targets: &[ModForm], m: usize) -> Matrix<u32> {
    let field = c.field();
    let rows = targets[0].degree() + m + 1;
    let mut cols = Vec::with_capacity(targets.len() * (m + 1));
    for t in targets {
        for j in 0..=m {
            cols.push(BinaryForm::monomial(field, m, j).multiply(field, t).into_coeffs());
        }
    }
    Matrix::from_columns(rows, &cols, 0)
}

/// `h0(f^* Omega^1_{P^4}(1) (m))`.
pub fn cotangent_kernel_dim(c: &RationalCurveMap, m: i64) -> Result<usize> {
    let m = check_twist(m)?;
    let mat = multiplication_matrix(c, c.forms(), m);
    Ok(mat.cols() - rank(c.field(), &mat))
}

/// Expands `(a, n)` pairs, `n` the number of parts `>= a` for decreasing `a`.
fn decode_from_counts(counts: &[(i64, usize)]) -> Vec<i64> {
    let mut parts = Vec::new();
    let mut prev = 0usize;
    for &(a, n) in counts {
        for _ in prev..n {
            parts.push(a);
        }
        prev = n;
    }
    parts
}

/// Splitting type of `Omega^1_{P^4}(1)|_C` (rank 4, degree `-d`).
///
/// All parts are `<= 0`, so `h(m) - h(m-1)` counts the parts `>= -m`.
pub fn cotangent_splitting(c: &RationalCurveMap) -> Result<SplittingType> {
    let d = c.degree() as i64;
    let mut counts = Vec::new();
    let mut prev_h = 0usize;
    for m in 0..=d {
        let h = cotangent_kernel_dim(c, m)?;
        let active = h - prev_h;
        counts.push((-m, active));
        prev_h = h;
        if active >= 4 {
            break;
        }
    }
    let split = SplittingType::new(decode_from_counts(&counts));
    if split.rank() != 4 || split.degree() != -d {
        return Err(Error::Inconsistent(format!("cotangent decode gave {:?} for degree {d}", split.parts())));
    }
    Ok(split)
}

/// `O(-n-1)^r + O(-n)^(4-r)` with `d = 4n + r`.
pub fn generic_cotangent_splitting(d: usize) -> SplittingType {
    let (n, r) = ((d / 4) as i64, d % 4);
    SplittingType::new((0..4).map(|i| if i < r { -n - 1 } else { -n }).collect())
}

fn require_smooth(c: &RationalCurveMap) -> Result<()> {
    if validate(c, DEFAULT_TRIALS).is_smooth_model() {
        Ok(())
    } else {
        Err(Error::PresentationInvalid)
    }
}

/// Columns spanning the relations `g f` and `A d_s f + B d_t f` inside the
/// degree-`(d+m)` 5-tuples, each tuple flattened coordinate by coordinate.
fn normal_relations(c: &RationalCurveMap, m: usize) -> Matrix<u32> {
    let field = c.field();
    let d = c.degree();
    let width = d + m + 1;
    let flatten = |tuple: Vec<ModForm>| -> Vec<u32> { tuple.into_iter().flat_map(BinaryForm::into_coeffs).collect() };
    let ds: Vec<ModForm> = c.forms().iter().map(|f| f.derivative(field, Var::S)).collect();
    let dt: Vec<ModForm> = c.forms().iter().map(|f| f.derivative(field, Var::T)).collect();
    let mut cols = Vec::new();
    for j in 0..=m {
        let g = BinaryForm::monomial(field, m, j);
        cols.push(flatten(c.forms().iter().map(|f| g.multiply(field, f)).collect()));
    }
    for j in 0..=m + 1 {
        let a = BinaryForm::monomial(field, m + 1, j);
        cols.push(flatten(ds.iter().map(|f| a.multiply(field, f)).collect()));
        cols.push(flatten(dt.iter().map(|f| a.multiply(field, f)).collect()));
    }
    Matrix::from_columns(5 * width, &cols, 0)
}

/// `h0(N_{C/P^4}(m))` for `m >= 0`.
pub fn normal_h0(c: &RationalCurveMap, m: i64) -> Result<usize> {
    let m = check_twist(m)?;
    require_smooth(c)?;
    let rel = normal_relations(c, m);
    Ok(rel.rows() - rank(c.field(), &rel))
}

/// `h0(N^*_{C/P^4}(j))`: tuples of degree `j - d` killed by both `d_s f` and `d_t f`.
pub fn conormal_h0(c: &RationalCurveMap, j: i64) -> Result<usize> {
    let d = c.degree() as i64;
    if j < d {
        return Ok(0);
    }
    let field = c.field();
    let deg = (j - d) as usize;
    let ds: Vec<ModForm> = c.forms().iter().map(|f| f.derivative(field, Var::S)).collect();
    let dt: Vec<ModForm> = c.forms().iter().map(|f| f.derivative(field, Var::T)).collect();
    let a = multiplication_matrix(c, &ds, deg);
    let b = multiplication_matrix(c, &dt, deg);
    let mut entries = a.entries().to_vec();
    entries.extend_from_slice(b.entries());
    let stacked = Matrix::from_row_major(a.rows() + b.rows(), a.cols(), entries);
    Ok(stacked.cols() - rank(field, &stacked))
}

/// Splitting type of `N_{C/P^4}` (rank 3, degree `5d - 2`).
///
/// Twists `m >= 0` only see the degree (every part is `>= d`), so the parts are
/// read off the dual: `h0(N^*(j)) - h0(N^*(j-1))` counts the parts `<= j`. The
/// result is checked against `normal_h0` at `m = 0, 1, 2`.
pub fn normal_splitting(c: &RationalCurveMap) -> Result<SplittingType> {
    require_smooth(c)?;
    let d = c.degree() as i64;
    let mut parts = Vec::new();
    let mut prev_h = 0usize;
    let mut prev_n = 0usize;
    for j in d..=5 * d {
        let h = conormal_h0(c, j)?;
        let n = h - prev_h;
        for _ in prev_n..n {
            parts.push(j);
        }
        prev_h = h;
        prev_n = n;
        if n >= 3 {
            break;
        }
    }
    let split = SplittingType::new(parts);
    if split.rank() != 3 || split.degree() != 5 * d - 2 {
        return Err(Error::Inconsistent(format!("normal decode gave {:?} for degree {d}", split.parts())));
    }
    for m in 0..=2 {
        let measured = normal_h0(c, m)?;
        if measured != split.h0(m) {
            return Err(Error::Inconsistent(format!(
                "h0(N({m})) = {measured} but splitting {:?} predicts {}",
                split.parts(),
                split.h0(m)
            )));
        }
    }
    Ok(split)
}

/// Compositions `(d F / d x_i)(f)`, each of degree `4d`.
fn gradient_along(c: &RationalCurveMap, f: &QuinticForm) -> Vec<ModForm> {
    (0..5).map(|i| f.partial(c.field(), i).compose(c.field(), c.forms())).collect()
}

fn require_contained(c: &RationalCurveMap, f: &QuinticForm) -> Result<()> {
    if f.n_vars() != 5 || f.degree() != 5 {
        return Err(Error::InvalidArgument("expected a quintic in five variables".into()));
    }
    if f.compose(c.field(), c.forms()).is_zero(c.field()) {
        Ok(())
    } else {
        Err(Error::CurveNotOnForm)
    }
}

/// Whether `F` is smooth at every point of `C`.
pub fn smooth_along(c: &RationalCurveMap, f: &QuinticForm) -> Result<bool> {
    require_contained(c, f)?;
    let grad = gradient_along(c, f);
    Ok(BinaryForm::gcd_all(c.field(), &grad).is_ok_and(|g| g.degree() == 0))
}

/// `h0(N_{C/F}(m))` for `m >= 0`.
pub fn normal_in_f_h0(c: &RationalCurveMap, f: &QuinticForm, m: i64) -> Result<usize> {
    let mu = check_twist(m)?;
    if !smooth_along(c, f)? {
        return Err(Error::NotSmoothAlong);
    }
    let n_h0 = normal_h0(c, m)?;
    // Map degree-(d+m) tuples to degree 5d+m; relations go to multiples of F(f) and its derivatives.
    let grad = gradient_along(c, f);
    let mat = multiplication_matrix(c, &grad, c.degree() + mu);
    let r = rank(c.field(), &mat);
    n_h0.checked_sub(r)
        .ok_or_else(|| Error::Inconsistent(format!("image rank {r} exceeds h0(N({m})) = {n_h0}")))
}

/// Decodes a rank-2 splitting `(a, b)` with `a + b = -2` from `h0` at twists 0 and 1.
pub fn decode_rank2_splitting(h0_at_0: usize, h0_at_1: usize) -> Result<SplittingType> {
    let k = h0_at_0 as i64;
    let split = SplittingType::new(vec![k - 1, -k - 1]);
    if split.h0(1) != h0_at_1 {
        return Err(Error::Inconsistent(format!(
            "h0 = {h0_at_0}, {h0_at_1} at twists 0, 1 fits no splitting with degree -2"
        )));
    }
    Ok(split)
}

/// Splitting type of `N_{C/F}` (rank 2, degree `-2`).
pub fn normal_in_f_splitting(c: &RationalCurveMap, f: &QuinticForm) -> Result<SplittingType> {
    let split = decode_rank2_splitting(normal_in_f_h0(c, f, 0)?, normal_in_f_h0(c, f, 1)?)?;
    debug_assert_eq!(split.degree(), -2);
    Ok(split)
}

/// `N_{C/F} = O(-1) + O(-1)`, i.e. `h0(N_{C/F}) = 0`.
pub fn is_balanced(c: &RationalCurveMap, f: &QuinticForm) -> Result<bool> {
    Ok(normal_in_f_h0(c, f, 0)? == 0)
}
