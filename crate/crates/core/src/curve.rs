//! Parametrized rational curves `P^1 -> P^4` and their samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{rank, BinaryForm, Matrix, PrimeField, Var};
use crate::error::{Error, Result};
use crate::ModForm;

/// Default number of random fibers checked for injectivity.
pub const DEFAULT_TRIALS: usize = 32;
/// Rejection-sampling cap.
pub const MAX_ATTEMPTS: usize = 100;

/// A degree-`d` map `P^1 -> P^4` given by five binary forms of degree `d`.
///
/// Construction checks only the shape (five forms of one degree) and the
/// characteristic constraints; geometric validity is reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurveMap {
    field: PrimeField,
    degree: usize,
    forms: Vec<ModForm>,
}

impl RationalCurveMap {
    pub fn new(field: PrimeField, forms: Vec<ModForm>) -> Result<Self> {
        if forms.len() != 5 {
            return Err(Error::InvalidArgument(format!("expected 5 forms, got {}", forms.len())));
        }
        let degree = forms[0].degree();
        if degree == 0 {
            return Err(Error::InvalidArgument("curve degree must be positive".into()));
        }
        if let Some(f) = forms.iter().find(|f| f.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "all forms must have degree {degree}, found degree {}",
                f.degree()
            )));
        }
        let p = field.modulus();
        if forms.iter().flat_map(|f| f.coeffs()).any(|&c| c >= p) {
            return Err(Error::InvalidArgument(format!("coefficients must lie in [0, {p})")));
        }
        field.check_degree(degree)?;
        Ok(RationalCurveMap { field, degree, forms })
    }

    /// The line `(s, t, 0, 0, 0)`.
    pub fn line(field: PrimeField) -> Self {
        rational_normal_curve(1, field).expect("degree 1 is always admissible")
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn forms(&self) -> &[ModForm] {
        &self.forms
    }

    /// Image of the parameter point `(s : t)` as an affine 5-vector.
    pub fn evaluate(&self, s: u32, t: u32) -> [u32; 5] {
        std::array::from_fn(|i| self.forms[i].evaluate(&self.field, &s, &t))
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            p: self.field.modulus(),
            d: self.degree,
            forms: self.forms.iter().map(|f| f.coeffs().to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("curve serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text)?;
        file.into_curve()
    }
}

/// On-disk curve: `{"p": .., "d": .., "forms": [[c_0 .. c_d] x 5]}`, coefficients
/// in descending powers of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub p: u32,
    pub d: usize,
    pub forms: Vec<Vec<u32>>,
}

impl CurveFile {
    pub fn into_curve(self) -> Result<RationalCurveMap> {
        let field = PrimeField::new(self.p)?;
        if self.forms.len() != 5 {
            return Err(Error::Format(format!("expected 5 forms, got {}", self.forms.len())));
        }
        for (i, f) in self.forms.iter().enumerate() {
            if f.len() != self.d + 1 {
                return Err(Error::Format(format!(
                    "form {i} has {} coefficients, expected d + 1 = {}",
                    f.len(),
                    self.d + 1
                )));
            }
        }
        RationalCurveMap::new(field, self.forms.into_iter().map(BinaryForm::new).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SmoothModel,
    DegenerateModel,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub base_point_free: bool,
    pub unramified: bool,
    pub injective_probabilistic: bool,
    pub trials: usize,
    pub verdict: Verdict,
}

impl ValidationReport {
    pub fn is_smooth_model(&self) -> bool {
        self.verdict == Verdict::SmoothModel
    }
}

/// Validates with a generator seeded from the curve's own coefficients, so the
/// verdict is a pure function of the curve.
pub fn validate(c: &RationalCurveMap, trials: usize) -> ValidationReport {
    let mut h: u64 = c.field.modulus() as u64;
    for x in c.forms.iter().flat_map(|f| f.coeffs()) {
        h = splitmix64(h ^ *x as u64);
    }
    validate_with_rng(c, trials, &mut ChaCha8Rng::seed_from_u64(h))
}

pub fn validate_with_rng<R: Rng>(c: &RationalCurveMap, trials: usize, rng: &mut R) -> ValidationReport {
    let field = &c.field;
    let rejected = ValidationReport {
        base_point_free: false,
        unramified: false,
        injective_probabilistic: false,
        trials,
        verdict: Verdict::Rejected,
    };
    if c.forms.iter().all(|f| f.is_zero(field)) {
        return rejected;
    }
    let base_point_free = is_constant_gcd(field, &c.forms);
    let unramified = is_constant_gcd(field, &jacobian_minors(c));
    let injective_probabilistic = (0..trials).all(|_| {
        let s = rng.gen_range(0..field.modulus());
        let t = rng.gen_range(0..field.modulus());
        if s == 0 && t == 0 {
            return true;
        }
        fiber_degree(c, s, t) == Some(1)
    });
    let verdict = if base_point_free && unramified && injective_probabilistic {
        Verdict::SmoothModel
    } else {
        Verdict::DegenerateModel
    };
    ValidationReport { base_point_free, unramified, injective_probabilistic, trials, verdict }
}

fn is_constant_gcd(field: &PrimeField, forms: &[ModForm]) -> bool {
    BinaryForm::gcd_all(field, forms).is_ok_and(|g| g.degree() == 0)
}

/// The ten 2x2 minors of the Jacobian rows `(d_s f_i)` and `(d_t f_i)`.
fn jacobian_minors(c: &RationalCurveMap) -> Vec<ModForm> {
    let field = &c.field;
    let ds: Vec<ModForm> = c.forms.iter().map(|f| f.derivative(field, Var::S)).collect();
    let dt: Vec<ModForm> = c.forms.iter().map(|f| f.derivative(field, Var::T)).collect();
    let mut minors = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            let a = ds[i].multiply(field, &dt[j]);
            let b = ds[j].multiply(field, &dt[i]);
            minors.push(a.sub(field, &b));
        }
    }
    minors
}

/// Degree of the scheme of parameters mapping to the image of `(s : t)`.
///
/// The fiber is cut out by the 2x2 minors `f_i(x) v_j - f_j(x) v_i` with
/// `v = f(s, t)`; a birational, unramified parametrization gives degree 1.
/// `None` when `(s : t)` is a base point or the map is constant.
pub fn fiber_degree(c: &RationalCurveMap, s: u32, t: u32) -> Option<usize> {
    let field = &c.field;
    let v = c.evaluate(s, t);
    let j = v.iter().position(|x| *x != 0)?;
    let eqs: Vec<ModForm> = (0..5)
        .filter(|&i| i != j)
        .map(|i| c.forms[i].scale(field, &v[j]).sub(field, &c.forms[j].scale(field, &v[i])))
        .collect();
    BinaryForm::gcd_all(field, &eqs).ok().map(|g| g.degree())
}

/// `splitmix64` finalizer, used to derive independent per-sample seeds.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for sample `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

fn random_form<R: Rng>(field: &PrimeField, degree: usize, rng: &mut R) -> ModForm {
    BinaryForm::new((0..=degree).map(|_| rng.gen_range(0..field.modulus())).collect())
}

/// Rejection-samples forms from `draw` until the curve is a smooth model and
/// `accept` holds.
fn rejection_sample<R, G, A>(field: PrimeField, d: usize, rng: &mut R, mut draw: G, accept: A) -> Result<RationalCurveMap>
where
    R: Rng,
    G: FnMut(&mut R) -> Vec<ModForm>,
    A: Fn(&RationalCurveMap) -> bool,
{
    field.check_degree(d)?;
    for _ in 0..MAX_ATTEMPTS {
        let c = RationalCurveMap::new(field, draw(rng))?;
        if validate_with_rng(&c, DEFAULT_TRIALS, rng).is_smooth_model() && accept(&c) {
            return Ok(c);
        }
    }
    Err(Error::SamplingFailure { d, attempts: MAX_ATTEMPTS })
}

/// A curve with independent uniform coefficients, resampled until smooth.
pub fn random_curve(d: usize, field: PrimeField, seed: u64) -> Result<RationalCurveMap> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rejection_sample(field, d, &mut rng, |rng| (0..5).map(|_| random_form(&field, d, rng)).collect(), |_| true)
}

/// `(s^d, s^(d-1) t, ..., t^d)` padded with zero forms.
pub fn rational_normal_curve(d: usize, field: PrimeField) -> Result<RationalCurveMap> {
    if !(1..=4).contains(&d) {
        return Err(Error::InvalidArgument(format!("rational normal curves in P^4 have degree 1..=4, got {d}")));
    }
    let forms = (0..5)
        .map(|i| if i <= d { BinaryForm::monomial(&field, d, i) } else { BinaryForm::zero(&field, d) })
        .collect();
    RationalCurveMap::new(field, forms)
}

/// Number of linearly independent coordinate forms.
pub fn coordinate_rank(c: &RationalCurveMap) -> usize {
    let d = c.degree;
    let m = Matrix::from_columns(d + 1, &c.forms.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>(), 0);
    rank(&c.field, &m)
}

/// A smooth curve in the hyperplane `x_4 = 0` spanning it.
pub fn curve_in_hyperplane(d: usize, field: PrimeField, seed: u64) -> Result<RationalCurveMap> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("a curve spanning a hyperplane needs degree >= 3, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rejection_sample(
        field,
        d,
        &mut rng,
        |rng| {
            let mut forms: Vec<ModForm> = (0..4).map(|_| random_form(&field, d, rng)).collect();
            forms.push(BinaryForm::zero(&field, d));
            forms
        },
        |c| coordinate_rank(c) == 4,
    )
}

/// `(s g, s h, t g, t h, 0)`: a curve of bidegree `(1, d - 1)` on the quadric
/// `x_0 x_3 - x_1 x_2 = 0` inside `x_4 = 0`.
pub fn curve_on_quadric(d: usize, field: PrimeField, seed: u64) -> Result<RationalCurveMap> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("curves on the quadric need degree >= 2, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = BinaryForm::monomial(&field, 1, 0);
    let t = BinaryForm::monomial(&field, 1, 1);
    rejection_sample(
        field,
        d,
        &mut rng,
        |rng| {
            let g = random_form(&field, d - 1, rng);
            let h = random_form(&field, d - 1, rng);
            vec![
                s.multiply(&field, &g),
                s.multiply(&field, &h),
                t.multiply(&field, &g),
                t.multiply(&field, &h),
                BinaryForm::zero(&field, d),
            ]
        },
        |_| true,
    )
}

/// Curve families available to experiments and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampler {
    Line,
    Rnc,
    Random,
    #[serde(alias = "in_hyperplane")]
    InHyperplane,
    #[serde(alias = "on_quadric")]
    OnQuadric,
}

impl Sampler {
    pub fn sample(self, d: usize, field: PrimeField, seed: u64) -> Result<RationalCurveMap> {
        match self {
            Sampler::Line => {
                if d != 1 {
                    return Err(Error::InvalidArgument(format!("the line sampler has degree 1, got {d}")));
                }
                Ok(RationalCurveMap::line(field))
            }
            Sampler::Rnc => rational_normal_curve(d, field),
            Sampler::Random => random_curve(d, field, seed),
            Sampler::InHyperplane => curve_in_hyperplane(d, field, seed),
            Sampler::OnQuadric => curve_on_quadric(d, field, seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn curve(forms: &[&[u32]]) -> RationalCurveMap {
        RationalCurveMap::new(fp(), forms.iter().map(|f| BinaryForm::new(f.to_vec())).collect()).unwrap()
    }

    #[test]
    fn line_is_smooth() {
        let r = validate(&RationalCurveMap::line(fp()), DEFAULT_TRIALS);
        assert_eq!(r.verdict, Verdict::SmoothModel);
    }

    #[test]
    fn cuspidal_cubic_is_ramified() {
        // (s^3, s t^2, t^3, 0, 0)
        let c = curve(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0; 4], &[0; 4]]);
        let r = validate(&c, DEFAULT_TRIALS);
        assert!(r.base_point_free);
        assert!(!r.unramified);
        assert_eq!(r.verdict, Verdict::DegenerateModel);
    }

    #[test]
    fn common_factor_is_a_base_point() {
        // s * (s, t, s + t, 2s, 3t)
        let c = curve(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[2, 0, 0], &[0, 3, 0]]);
        assert!(!validate(&c, DEFAULT_TRIALS).base_point_free);
    }

    #[test]
    fn zero_map_is_rejected() {
        let c = curve(&[&[0u32, 0] as &[u32]; 5]);
        assert_eq!(validate(&c, DEFAULT_TRIALS).verdict, Verdict::Rejected);
    }

    #[test]
    fn double_cover_is_not_injective() {
        // (s^2, t^2, 0, 0, 0) covers a line twice.
        let c = curve(&[&[1, 0, 0], &[0, 0, 1], &[0; 3], &[0; 3], &[0; 3]]);
        let r = validate(&c, DEFAULT_TRIALS);
        assert!(!r.injective_probabilistic);
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = random_curve(5, fp(), 1).unwrap();
        let b = random_curve(5, fp(), 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_curve(5, fp(), 2).unwrap());
    }

    #[test]
    fn degree_one_sample_is_a_line() {
        let c = random_curve(1, fp(), 9).unwrap();
        assert_eq!(coordinate_rank(&c), 2);
    }

    #[test]
    fn rational_normal_curves() {
        let c = rational_normal_curve(4, fp()).unwrap();
        assert_eq!(c.forms()[2].coeffs(), &[0, 0, 1, 0, 0]);
        assert!(rational_normal_curve(5, fp()).is_err());
        assert!(rational_normal_curve(0, fp()).is_err());
        for d in 1..=4 {
            assert!(validate(&rational_normal_curve(d, fp()).unwrap(), DEFAULT_TRIALS).is_smooth_model());
        }
    }

    #[test]
    fn hyperplane_sampler_rejects_conics() {
        assert!(curve_in_hyperplane(2, fp(), 0).is_err());
        let c = curve_in_hyperplane(6, fp(), 4).unwrap();
        assert!(c.forms()[4].is_zero(&fp()));
        assert_eq!(coordinate_rank(&c), 4);
    }

    #[test]
    fn quadric_curves_satisfy_the_quadric() {
        let f = fp();
        for (d, seed) in [(2, 0), (3, 1), (7, 2), (12, 3)] {
            let c = curve_on_quadric(d, f, seed).unwrap();
            let x = c.forms();
            let q = x[0].multiply(&f, &x[3]).sub(&f, &x[1].multiply(&f, &x[2]));
            assert!(q.is_zero(&f));
        }
    }

    #[test]
    fn characteristic_guard() {
        let small = PrimeField::new(31).unwrap();
        assert!(random_curve(7, small, 0).is_err());
        assert!(random_curve(5, small, 0).is_ok());
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let c = random_curve(3, fp(), 5).unwrap();
        let text = c.to_json();
        let back = RationalCurveMap::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
        assert!(RationalCurveMap::from_json(r#"{"p":32003,"d":1,"forms":[[1,0],[0,1],[0,0],[0,0]]}"#).is_err());
        assert!(RationalCurveMap::from_json(r#"{"p":32003,"d":1,"forms":[[1,0],[0,1],[0,0],[0,0],[0,40000]]}"#).is_err());
    }
}
