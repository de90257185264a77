//! Dimension counts for the strata of the incidence scheme of rational curves
//! on quintic threefolds, membership tests for sampled curves, and a seeded
//! Monte Carlo driver that evaluates those tests over many samples.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{kernel_basis, BinaryForm, PrimeField};
use crate::bundles::{cotangent_splitting, generic_cotangent_splitting, is_balanced, smooth_along};
use crate::cohom::{
    binomial, ideal_cohomology, is_maximal_rank, random_combination, random_quintic_through, restriction_matrix,
    restriction_matrix_over, span_dimension, HomogeneousForm, MonomialBasis,
};
use crate::curve::{derive_seed, RationalCurveMap, Sampler};
use crate::error::{Error, Result};

/// Dimension of the incidence scheme's principal component.
pub const PRINCIPAL_DIM: u64 = 125;

/// Dimension of the image of `K_d` in the space of quintics: 69 + 4.
pub const K_IMAGE_DIM: u64 = 69 + 4;

/// The bound for `J_d^4` that appears alongside 111 and conflicts with it.
pub const J4_ALTERNATIVE_BOUND: u64 = 97;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Stratum {
    J { d: u64, e: u64 },
    K { d: u64 },
    M0 { d: u64 },
    Hypersurface { d: u64, t: u64 },
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::J { d, e } => write!(f, "J({d},{e})"),
            Stratum::K { d } => write!(f, "K({d})"),
            Stratum::M0 { d } => write!(f, "M0({d})"),
            Stratum::Hypersurface { d, t } => write!(f, "hypersurface({d},{t})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Dimension {
    Exact { value: u64 },
    /// An upper bound; `conflicting` is a second, incompatible published bound.
    UpperBound { value: u64, conflicting: Option<u64> },
    Empty,
}

impl Dimension {
    /// The exact value or the bound, `None` for the empty stratum.
    pub fn value(&self) -> Option<u64> {
        match *self {
            Dimension::Exact { value } | Dimension::UpperBound { value, .. } => Some(value),
            Dimension::Empty => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub stratum: Stratum,
    pub dimension: Dimension,
    pub validity: String,
    pub formula: String,
}

fn out_of_range(what: String) -> Error {
    Error::FormulaOutOfRange(what)
}

/// Dimension of `J_d^e`, the curves spanning a hyperplane and lying on a
/// smooth degree-`e` surface there.
pub fn dim_j(d: u64, e: u64) -> Result<StratumReport> {
    let stratum = Stratum::J { d, e };
    let (dimension, validity, formula) = match (e, d) {
        (2, 10..) => (Dimension::Exact { value: 2 * d + 101 }, "d >= 10", "2d+101"),
        (3, 15..) => (Dimension::Exact { value: d + 101 }, "d >= 15", "d+101"),
        (4, 20..) => (
            Dimension::UpperBound { value: 111, conflicting: Some(J4_ALTERNATIVE_BOUND) },
            "d >= 20",
            "h0(I_S(5)) - 1 + dim of quartic surfaces in hyperplanes = 73 + 38",
        ),
        _ => return Err(out_of_range(format!("dim J(d={d}, e={e})"))),
    };
    Ok(StratumReport { stratum, dimension, validity: validity.into(), formula: formula.into() })
}

/// Dimension of `K_d`, the curves spanning a hyperplane `H` with no quintic
/// surface of `H` through them.
pub fn dim_k(d: u64) -> Result<StratumReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let stratum = Stratum::K { d };
    Ok(if d <= 10 {
        StratumReport { stratum, dimension: Dimension::Empty, validity: "d <= 10".into(), formula: "empty".into() }
    } else {
        StratumReport {
            stratum,
            dimension: Dimension::Exact { value: 4 * d + 73 },
            validity: "d >= 11".into(),
            formula: "4d+73".into(),
        }
    })
}

/// `(h0(I_S(5)), dim of pairs (S, F))` for a smooth surface `S` of degree `e`
/// in a hyperplane and quintics `F` containing it.
pub fn surface_pair_dims(e: u64) -> Result<(u64, u64)> {
    if !(2..=4).contains(&e) {
        return Err(out_of_range(format!("surface pairs with e={e}")));
    }
    let e = e as usize;
    let h0 = 70 + binomial(8 - e, 3) as u64;
    // Quintics through S, plus surfaces of degree e in P^3, plus the hyperplane.
    let pairs = (h0 - 1) + (binomial(e + 3, 3) as u64 - 1 + 4);
    Ok((h0, pairs))
}

/// Dimension count for curves of degree `d` lying on a degree-`t` surface in
/// a hyperplane: `(5d+1) - (dt+1) + C(4+t,4) - 1 + C(9-t,4) - 1`.
pub fn hypersurface_family_bound(d: u64, t: u64) -> Result<u64> {
    if !(2..=4).contains(&t) {
        return Err(out_of_range(format!("hypersurface family with t={t}")));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let (du, tu) = (d as usize, t as usize);
    let v = (5 * du + 1) as i64 - (du * tu + 1) as i64 + binomial(4 + tu, 4) as i64 - 1 + binomial(9 - tu, 4) as i64 - 1;
    Ok(v as u64)
}

/// Maximum of [`hypersurface_family_bound`] over `1 <= d <= 24`, `2 <= t <= 4`,
/// as `(value, d, t)`.
pub fn hypersurface_family_max() -> (u64, u64, u64) {
    let mut best = (0, 0, 0);
    for d in 1..=24 {
        for t in 2..=4 {
            let v = hypersurface_family_bound(d, t).expect("in range");
            if v > best.0 {
                best = (v, d, t);
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    Irreducible,
    Unknown,
    Reducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityVerdict {
    pub d: u64,
    pub status: Irreducibility,
    /// Dimension of the component dominating the space of quintics, when known.
    pub principal_dim: Option<u64>,
    /// Lower bound for the dimension of a further component.
    pub extra_component_dim_at_least: Option<u64>,
}

pub fn reducibility_verdict(d: u64) -> ReducibilityVerdict {
    let (status, principal_dim, extra) = match d {
        0..=9 => (Irreducibility::Irreducible, Some(PRINCIPAL_DIM), None),
        10 | 11 => (Irreducibility::Unknown, None, None),
        12 => (Irreducibility::Reducible, None, None),
        _ => (Irreducibility::Reducible, Some(PRINCIPAL_DIM), Some(126.max(2 * d + 101))),
    };
    ReducibilityVerdict { d, status, principal_dim, extra_component_dim_at_least: extra }
}

/// `h1(I_C(5)) = 0`.
pub fn m0_membership(c: &RationalCurveMap) -> Result<bool> {
    Ok(ideal_cohomology(c, 5)?.h1_ideal == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KdReport {
    pub member: bool,
    pub span: usize,
    /// `h0(I_{C/H}(5))`, present when `C` spans a hyperplane.
    pub h0_in_hyperplane: Option<usize>,
    pub h1: usize,
}

pub fn kd_membership(c: &RationalCurveMap) -> Result<KdReport> {
    let span = span_dimension(c);
    let rep = ideal_cohomology(c, 5)?;
    let h0_in_hyperplane = (span == 3).then(|| rep.h0_ideal - binomial(8, 4));
    Ok(KdReport { member: h0_in_hyperplane == Some(0), span, h0_in_hyperplane, h1: rep.h1_ideal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JdVerdict {
    DefinitelyNot,
    CandidateMember,
}

/// A surface of degree `e` in the hyperplane `sum hyperplane[i] x_i = 0`,
/// written in the coordinates other than `x_eliminated`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceWitness {
    pub hyperplane: Vec<u32>,
    pub eliminated: usize,
    pub surface: Vec<u32>,
    /// The surface is smooth at every point of the curve.
    pub smooth_along: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JdReport {
    pub e: usize,
    pub verdict: JdVerdict,
    pub span: usize,
    /// `h0(I_{C/H}(e))`, present when `C` spans a hyperplane.
    pub h0: Option<usize>,
    pub unique: bool,
    pub witness: Option<SurfaceWitness>,
}

/// Necessary conditions for `C` to lie in `J_d^e`: it spans a hyperplane `H`
/// and some degree-`e` surface of `H` contains it. Smoothness of the witness
/// is certified along `C` only.
pub fn jd_membership<R: Rng>(c: &RationalCurveMap, e: usize, rng: &mut R) -> Result<JdReport> {
    if !(2..=5).contains(&e) {
        return Err(Error::InvalidArgument(format!("surface degree must be in 2..=5, got {e}")));
    }
    let field = c.field();
    let span = span_dimension(c);
    if span != 3 {
        return Ok(JdReport { e, verdict: JdVerdict::DefinitelyNot, span, h0: None, unique: false, witness: None });
    }
    let h0 = ideal_cohomology(c, e)?.h0_ideal - binomial(e + 3, 4);

    let linear = kernel_basis(field, &restriction_matrix(c, 1)?);
    let [hyperplane] = linear.as_slice() else {
        return Err(Error::Inconsistent(format!("span 3 but {} linear relations", linear.len())));
    };
    let eliminated = hyperplane.iter().position(|&x| x != 0).expect("kernel vectors are nonzero");
    let rest: Vec<_> = (0..5).filter(|&i| i != eliminated).map(|i| c.forms()[i].clone()).collect();
    let basis = MonomialBasis::new(4, e);
    let surfaces: Vec<HomogeneousForm> = kernel_basis(field, &restriction_matrix_over(field, &rest, &basis))
        .into_iter()
        .map(|v| HomogeneousForm::new(4, e, v).expect("basis length"))
        .collect();
    if surfaces.len() != h0 {
        return Err(Error::Inconsistent(format!(
            "h0(I_C/H({e})) is {h0} from the quotient but {} from the hyperplane",
            surfaces.len()
        )));
    }

    let witness = random_combination(field, &surfaces, rng).map(|s| {
        let partials: Vec<_> = (0..4).map(|v| s.partial(field, v).compose(field, &rest)).collect();
        let smooth = BinaryForm::gcd_all(field, &partials).is_ok_and(|g| g.degree() == 0);
        SurfaceWitness { hyperplane: hyperplane.clone(), eliminated, surface: s.coeffs().to_vec(), smooth_along: smooth }
    });
    let verdict = if h0 > 0 { JdVerdict::CandidateMember } else { JdVerdict::DefinitelyNot };
    Ok(JdReport { e, verdict, span, h0: Some(h0), unique: h0 == 1, witness })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "m0_membership")]
    M0Membership,
    #[serde(rename = "is_maximal_rank")]
    MaximalRank,
    #[serde(rename = "cotangent-generic")]
    CotangentGeneric,
    #[serde(rename = "kd_membership")]
    KdMembership,
    #[serde(rename = "balanced-with-random-quintic")]
    BalancedWithRandomQuintic,
}

fn default_prime() -> u32 {
    crate::DEFAULT_PRIME
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub sampler: Sampler,
    pub d: usize,
    pub property: Property,
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_prime")]
    pub prime: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub property_value: bool,
    pub diagnostics: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub frequency: f64,
    pub samples: Vec<SampleRecord>,
}

/// Evaluates `property` on one curve; `seed` feeds any randomness the
/// property itself needs.
pub fn evaluate_property(property: Property, c: &RationalCurveMap, seed: u64) -> Result<(bool, BTreeMap<String, Value>)> {
    let mut diag = BTreeMap::new();
    let value = match property {
        Property::M0Membership => {
            let rep = ideal_cohomology(c, 5)?;
            diag.insert("h0".into(), json!(rep.h0_ideal));
            diag.insert("h1".into(), json!(rep.h1_ideal));
            rep.h1_ideal == 0
        }
        Property::MaximalRank => {
            let rep = is_maximal_rank(c)?;
            diag.insert("first_failure".into(), json!(rep.first_failure));
            diag.insert("window".into(), json!(rep.window));
            rep.maximal_rank
        }
        Property::CotangentGeneric => {
            let split = cotangent_splitting(c)?;
            let generic = generic_cotangent_splitting(c.degree());
            diag.insert("splitting".into(), json!(split.parts()));
            split == generic
        }
        Property::KdMembership => {
            let rep = kd_membership(c)?;
            diag.insert("span".into(), json!(rep.span));
            diag.insert("h0_in_hyperplane".into(), json!(rep.h0_in_hyperplane));
            diag.insert("h1".into(), json!(rep.h1));
            rep.member
        }
        Property::BalancedWithRandomQuintic => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match random_quintic_through(c, &mut rng) {
                None => {
                    diag.insert("quintic".into(), Value::Null);
                    false
                }
                Some(f) => {
                    let smooth = smooth_along(c, &f)?;
                    diag.insert("smooth_along".into(), json!(smooth));
                    smooth && is_balanced(c, &f)?
                }
            }
        }
    };
    Ok((value, diag))
}

/// Runs `config.property` over `config.samples` curves, sample `i` drawn with
/// seed `derive_seed(config.seed, i)`. Output does not depend on scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let field = PrimeField::new(config.prime)?;
    if config.d == 0 {
        return Err(Error::InvalidArgument("d: degree must be at least 1".into()));
    }
    if config.samples == 0 {
        return Err(Error::InvalidArgument("samples: must be at least 1".into()));
    }
    field.check_degree(config.d)?;
    let samples: Vec<SampleRecord> = (0..config.samples)
        .into_par_iter()
        .map(|index| {
            let seed = derive_seed(config.seed, index as u64);
            let c = config.sampler.sample(config.d, field, seed)?;
            let (property_value, diagnostics) = evaluate_property(config.property, &c, derive_seed(seed, 1))?;
            Ok(SampleRecord { index, seed, property_value, diagnostics })
        })
        .collect::<Result<_>>()?;
    let hits = samples.iter().filter(|s| s.property_value).count();
    Ok(ExperimentReport { config: config.clone(), frequency: hits as f64 / samples.len() as f64, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_in_hyperplane, curve_on_quadric, random_curve, RationalCurveMap};

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn j_formulas_and_ranges() {
        assert_eq!(dim_j(10, 2).unwrap().dimension, Dimension::Exact { value: 121 });
        assert_eq!(dim_j(15, 3).unwrap().dimension, Dimension::Exact { value: 116 });
        assert_eq!(dim_j(20, 4).unwrap().dimension, Dimension::UpperBound { value: 111, conflicting: Some(97) });
        assert!(dim_j(9, 2).is_err());
        assert!(dim_j(14, 3).is_err());
        assert!(dim_j(19, 4).is_err());
        assert!(dim_j(30, 5).is_err());
    }

    #[test]
    fn k_formula() {
        assert_eq!(dim_k(10).unwrap().dimension, Dimension::Empty);
        assert_eq!(dim_k(11).unwrap().dimension.value(), Some(117));
        assert_eq!(dim_k(13).unwrap().dimension.value(), Some(125));
        assert_eq!(K_IMAGE_DIM, 73);
    }

    #[test]
    fn surface_pairs() {
        assert_eq!(surface_pair_dims(2).unwrap(), (90, 102));
        assert_eq!(surface_pair_dims(3).unwrap(), (80, 102));
        assert_eq!(surface_pair_dims(4).unwrap(), (74, 111));
        assert!(surface_pair_dims(5).is_err());
    }

    #[test]
    fn hypersurface_bounds() {
        for d in 1..=30 {
            assert_eq!(hypersurface_family_bound(d, 2).unwrap(), 3 * d + 48);
            assert_eq!(hypersurface_family_bound(d, 3).unwrap(), 2 * d + 48);
            assert_eq!(hypersurface_family_bound(d, 4).unwrap(), d + 73);
        }
        assert_eq!(hypersurface_family_max(), (120, 24, 2));
        assert!(hypersurface_family_bound(5, 1).is_err());
    }

    #[test]
    fn verdicts() {
        assert_eq!(reducibility_verdict(9).status, Irreducibility::Irreducible);
        assert_eq!(reducibility_verdict(10).status, Irreducibility::Unknown);
        assert_eq!(reducibility_verdict(12).status, Irreducibility::Reducible);
        let v = reducibility_verdict(13);
        assert_eq!(v.extra_component_dim_at_least, Some(127));
        assert_eq!(v.principal_dim, Some(125));
    }

    #[test]
    fn m0_and_kd() {
        assert!(m0_membership(&RationalCurveMap::line(fp())).unwrap());
        assert!(!m0_membership(&random_curve(26, fp(), 1).unwrap()).unwrap());
        let k11 = kd_membership(&curve_in_hyperplane(11, fp(), 3).unwrap()).unwrap();
        assert_eq!(k11.span, 3);
        assert!(k11.member);
        assert!(!kd_membership(&curve_in_hyperplane(10, fp(), 3).unwrap()).unwrap().member);
        let spanning = kd_membership(&random_curve(12, fp(), 3).unwrap()).unwrap();
        assert_eq!((spanning.span, spanning.member), (4, false));
    }

    #[test]
    fn jd_on_quadric_is_unique() {
        let c = curve_on_quadric(10, fp(), 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let rep = jd_membership(&c, 2, &mut rng).unwrap();
        assert_eq!(rep.verdict, JdVerdict::CandidateMember);
        assert!(rep.unique);
        let w = rep.witness.unwrap();
        assert!(w.smooth_along);
        assert_eq!(w.surface.len(), 10);
        assert!(jd_membership(&c, 6, &mut rng).is_err());
        let spanning = jd_membership(&random_curve(10, fp(), 1).unwrap(), 2, &mut rng).unwrap();
        assert_eq!(spanning.verdict, JdVerdict::DefinitelyNot);
    }

    #[test]
    fn experiment_is_reproducible() {
        let config = ExperimentConfig {
            sampler: Sampler::Random,
            d: 3,
            property: Property::M0Membership,
            samples: 6,
            seed: 11,
            prime: 32003,
        };
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.frequency, 1.0);
        assert_eq!(a.samples.len(), 6);
        assert!(a.samples.iter().enumerate().all(|(i, s)| s.index == i));
    }

    #[test]
    fn config_rejects_unknown_fields() {
        let bad = r#"{"sampler":"random","d":3,"property":"m0_membership","samples":2,"colour":1}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(bad).is_err());
        let ok = r#"{"sampler":"in-hyperplane","d":3,"property":"kd_membership","samples":2}"#;
        let c: ExperimentConfig = serde_json::from_str(ok).unwrap();
        assert_eq!((c.seed, c.prime), (0, 32003));
    }
}
