//! Restriction maps `H^0(P^4, O(k)) -> H^0(C, O_C(k))` and the cohomology of
//! twisted ideal sheaves they determine.
//!
//! For a curve of degree `d` the target is the space of binary forms of degree
//! `dk` (dimension `dk + 1`), so with `r` the rank of the restriction map
//!
//! ```text
//! h0(I_C(k)) = C(k+4, 4) - r        h1(I_C(k)) = dk + 1 - r
//! ```

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{kernel_basis, rank, BinaryForm, Field, Matrix, PrimeField};
use crate::curve::RationalCurveMap;
use crate::error::{Error, Result};
use crate::{ModForm, ModMatrix};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Degree-`k` monomials in `n_vars` variables, in descending lexicographic
/// order of exponent vectors.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    n_vars: usize,
    degree: usize,
    exponents: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl MonomialBasis {
    pub fn new(n_vars: usize, degree: usize) -> Self {
        assert!(n_vars >= 1, "at least one variable");
        let mut exponents = Vec::with_capacity(binomial(degree + n_vars - 1, n_vars - 1));
        let mut current = vec![0u8; n_vars];
        fill(&mut exponents, &mut current, 0, degree);
        let index = exponents.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { n_vars, degree, exponents, index }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u8>] {
        &self.exponents
    }

    pub fn index_of(&self, exponent: &[u8]) -> Option<usize> {
        self.index.get(exponent).copied()
    }
}

fn fill(out: &mut Vec<Vec<u8>>, current: &mut [u8], var: usize, remaining: usize) {
    if var + 1 == current.len() {
        current[var] = remaining as u8;
        out.push(current.to_vec());
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e as u8;
        fill(out, current, var + 1, remaining - e);
    }
}

/// The image of every basis monomial under `x_i -> forms[i]`.
pub fn monomial_images<F: Field>(
    field: &F,
    forms: &[BinaryForm<F::Elem>],
    basis: &MonomialBasis,
) -> Vec<BinaryForm<F::Elem>> {
    assert!(forms.len() >= basis.n_vars, "not enough forms for the basis");
    let d = forms[0].degree();
    let powers: Vec<Vec<BinaryForm<F::Elem>>> = forms[..basis.n_vars]
        .iter()
        .map(|f| {
            let mut ps = vec![BinaryForm::constant(field.one())];
            for e in 1..=basis.degree {
                let next = ps[e - 1].multiply(field, f);
                ps.push(next);
            }
            ps
        })
        .collect();
    basis
        .exponents
        .iter()
        .map(|exp| {
            if exp.iter().enumerate().any(|(i, &e)| e > 0 && forms[i].is_zero(field)) {
                return BinaryForm::zero(field, d * basis.degree);
            }
            exp.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(BinaryForm::constant(field.one()), |acc, (i, &e)| acc.multiply(field, &powers[i][e as usize]))
        })
        .collect()
}

/// Restriction matrix over an arbitrary field: `(d k + 1) x |basis|`, column `j`
/// holding the coefficients of the `j`-th monomial composed with the forms.
pub fn restriction_matrix_over<F: Field>(
    field: &F,
    forms: &[BinaryForm<F::Elem>],
    basis: &MonomialBasis,
) -> Matrix<F::Elem> {
    let rows = forms[0].degree() * basis.degree + 1;
    let cols: Vec<Vec<F::Elem>> = monomial_images(field, forms, basis).into_iter().map(BinaryForm::into_coeffs).collect();
    Matrix::from_columns(rows, &cols, field.zero())
}

/// The restriction matrix of `c` in twist `k >= 1`, shape `(dk + 1) x C(k+4, 4)`.
pub fn restriction_matrix(c: &RationalCurveMap, k: usize) -> Result<ModMatrix> {
    if k < 1 {
        return Err(Error::InvalidArgument("twist k must be at least 1".into()));
    }
    Ok(restriction_matrix_over(c.field(), c.forms(), &MonomialBasis::new(5, k)))
}

/// Restriction of the first `n_vars` coordinates only, i.e. the map from forms
/// on the coordinate subspace `x_{n_vars} = ... = x_4 = 0`.
pub fn restriction_matrix_in_vars(c: &RationalCurveMap, n_vars: usize, k: usize) -> Result<ModMatrix> {
    if k < 1 || !(1..=5).contains(&n_vars) {
        return Err(Error::InvalidArgument(format!("bad restriction request n_vars={n_vars}, k={k}")));
    }
    Ok(restriction_matrix_over(c.field(), c.forms(), &MonomialBasis::new(n_vars, k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub d: usize,
    pub k: usize,
    pub rank: usize,
    #[serde(rename = "h0")]
    pub h0_ideal: usize,
    #[serde(rename = "h1")]
    pub h1_ideal: usize,
}

pub fn ideal_cohomology(c: &RationalCurveMap, k: usize) -> Result<CohomologyReport> {
    let m = restriction_matrix(c, k)?;
    let r = rank(c.field(), &m);
    let (d, cols, rows) = (c.degree(), m.cols(), m.rows());
    let report = CohomologyReport { d, k, rank: r, h0_ideal: cols - r, h1_ideal: rows - r };
    assert_eq!(
        report.h0_ideal as i64 - report.h1_ideal as i64,
        binomial(k + 4, 4) as i64 - (d * k + 1) as i64,
        "Euler characteristic"
    );
    Ok(report)
}

/// Maximal-rank prediction `(max(0, C(k+4,4) - (dk+1)), max(0, (dk+1) - C(k+4,4)))`.
pub fn generic_ideal_h(d: usize, k: usize) -> (usize, usize) {
    let source = binomial(k + 4, 4);
    let target = d * k + 1;
    (source.saturating_sub(target), target.saturating_sub(source))
}

/// One twist of a maximal-rank scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCheck {
    pub k: usize,
    pub rank: usize,
    pub expected: usize,
    pub passed: bool,
    /// Not computed: surjectivity at a lower twist forces it here.
    pub implied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalRankReport {
    pub maximal_rank: bool,
    pub window: usize,
    pub first_failure: Option<usize>,
    pub witnesses: Vec<TwistCheck>,
}

pub fn max_rank_window(d: usize) -> usize {
    6.max(d.saturating_sub(2))
}

/// Checks `rank = min(C(k+4,4), dk+1)` for `k = 1 ..= max(6, d - 2)`.
///
/// The scan stops at the first failing twist. Once the map is surjective at
/// some `k`, it is surjective at every larger twist: the coordinate forms of a
/// base-point-free curve generate every binary form of degree `>= 2d - 1`, so
/// `f_0, ..., f_4` times all forms of degree `dk` fill degree `d(k+1)`. Those
/// twists are recorded as implied.
pub fn is_maximal_rank(c: &RationalCurveMap) -> Result<MaximalRankReport> {
    let d = c.degree();
    let window = max_rank_window(d);
    let mut witnesses = Vec::with_capacity(window);
    let mut first_failure = None;
    let mut surjective_from = None;
    for k in 1..=window {
        let target = d * k + 1;
        if surjective_from.is_some() {
            witnesses.push(TwistCheck { k, rank: target, expected: target, passed: true, implied: true });
            continue;
        }
        let rep = ideal_cohomology(c, k)?;
        let expected = binomial(k + 4, 4).min(target);
        let passed = rep.rank == expected;
        witnesses.push(TwistCheck { k, rank: rep.rank, expected, passed, implied: false });
        if !passed {
            first_failure = Some(k);
            break;
        }
        if rep.h1_ideal == 0 {
            surjective_from = Some(k);
        }
    }
    Ok(MaximalRankReport { maximal_rank: first_failure.is_none(), window, first_failure, witnesses })
}

pub fn regularity_window(d: usize) -> usize {
    8.max(d)
}

/// Regularity as listed for general curves of degree `d <= 24`, where a value
/// is listed; degrees 12 to 14 carry no listed value.
pub fn tabulated_regularity(d: usize) -> Option<usize> {
    match d {
        1 => Some(1),
        2..=4 => Some(2),
        5..=7 => Some(3),
        8..=11 => Some(4),
        15..=17 => Some(5),
        18..=24 => Some(6),
        _ => None,
    }
}

/// Regularity predicted by maximal rank: the least `m` with `h1(I_C(m-1)) = 0`,
/// but at least 2 once `d >= 2` because `h1(O_C(-1)) = d - 1`.
pub fn generic_regularity(d: usize) -> usize {
    let k0 = (1..).find(|&k| generic_ideal_h(d, k).1 == 0).expect("h1 eventually vanishes");
    regularity_from_first_vanishing(d, k0)
}

fn regularity_from_first_vanishing(d: usize, k0: usize) -> usize {
    let from_h1 = if k0 == 1 { 1 } else { k0 + 1 };
    from_h1.max(if d >= 2 { 2 } else { 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub d: usize,
    pub regularity: usize,
    pub window: usize,
    /// `(k, h1(I_C(k)))` for every twist actually computed.
    pub h1_by_twist: Vec<(usize, usize)>,
    pub tabulated: Option<usize>,
    /// Degree lies inside the tabulated range but has no listed value.
    pub table_gap: bool,
}

/// Castelnuovo-Mumford regularity of a smooth rational curve.
///
/// `C` is `m`-regular iff `h1(I_C(m-1)) = 0` and `h2(I_C(m-2)) = h1(O_P1(d(m-2))) = 0`;
/// the second condition fails only for `m = 1, d >= 2`. `h1(I_C(0)) = 0` always,
/// and vanishing of `h1(I_C(k))` for some `k >= 1` persists to all larger twists.
pub fn regularity_report(c: &RationalCurveMap) -> Result<RegularityReport> {
    let d = c.degree();
    let window = regularity_window(d);
    let mut h1_by_twist = Vec::new();
    let mut first_vanishing = None;
    for k in 1..=window {
        let h1 = ideal_cohomology(c, k)?.h1_ideal;
        h1_by_twist.push((k, h1));
        if h1 == 0 {
            first_vanishing = Some(k);
            break;
        }
    }
    let k0 = first_vanishing.ok_or(Error::IrregularWithinWindow { window })?;
    let regularity = regularity_from_first_vanishing(d, k0);
    let tabulated = tabulated_regularity(d);
    Ok(RegularityReport { d, regularity, window, h1_by_twist, tabulated, table_gap: tabulated.is_none() && d <= 24 })
}

pub fn regularity(c: &RationalCurveMap) -> Result<usize> {
    regularity_report(c).map(|r| r.regularity)
}

/// Projective dimension of the linear span of `c`.
pub fn span_dimension(c: &RationalCurveMap) -> usize {
    let m = restriction_matrix(c, 1).expect("k = 1 is valid");
    rank(c.field(), &m) - 1
}

/// A homogeneous form in `n_vars` variables, coefficients indexed by
/// [`MonomialBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    n_vars: usize,
    degree: usize,
    coeffs: Vec<u32>,
}

/// Degree-5 form in five variables (126 coefficients).
pub type QuinticForm = HomogeneousForm;

impl HomogeneousForm {
    pub fn new(n_vars: usize, degree: usize, coeffs: Vec<u32>) -> Result<Self> {
        let expected = binomial(degree + n_vars - 1, n_vars - 1);
        if coeffs.len() != expected {
            return Err(Error::Format(format!(
                "a degree-{degree} form in {n_vars} variables has {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(HomogeneousForm { n_vars, degree, coeffs })
    }

    pub fn quintic(coeffs: Vec<u32>) -> Result<Self> {
        Self::new(5, 5, coeffs)
    }

    pub fn zero(n_vars: usize, degree: usize) -> Self {
        HomogeneousForm { n_vars, degree, coeffs: vec![0; binomial(degree + n_vars - 1, n_vars - 1)] }
    }

    /// The linear form `sum l_i x_i`.
    pub fn linear(coeffs: &[u32]) -> Self {
        let basis = MonomialBasis::new(coeffs.len(), 1);
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0u8; coeffs.len()];
            e[i] = 1;
            f.coeffs[basis.index_of(&e).unwrap()] = c;
        }
        f
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.n_vars, self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The binary form obtained by substituting `x_i = forms[i]`.
    pub fn compose(&self, field: &PrimeField, forms: &[ModForm]) -> ModForm {
        let d = forms[0].degree();
        let images = monomial_images(field, forms, &self.basis());
        images.iter().zip(&self.coeffs).fold(BinaryForm::zero(field, d * self.degree), |acc, (img, c)| {
            if *c == 0 {
                acc
            } else {
                acc.add(field, &img.scale(field, c))
            }
        })
    }

    pub fn partial(&self, field: &PrimeField, var: usize) -> HomogeneousForm {
        assert!(var < self.n_vars);
        if self.degree == 0 {
            return HomogeneousForm::zero(self.n_vars, 0);
        }
        let target = MonomialBasis::new(self.n_vars, self.degree - 1);
        let mut out = HomogeneousForm::zero(self.n_vars, self.degree - 1);
        for (exp, c) in self.basis().exponents().iter().zip(&self.coeffs) {
            if exp[var] == 0 || *c == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[var] -= 1;
            let j = target.index_of(&e).unwrap();
            out.coeffs[j] = field.add(&out.coeffs[j], &field.mul(c, &(exp[var] as u32)));
        }
        out
    }

    pub fn multiply(&self, field: &PrimeField, other: &HomogeneousForm) -> HomogeneousForm {
        assert_eq!(self.n_vars, other.n_vars);
        let target = MonomialBasis::new(self.n_vars, self.degree + other.degree);
        let mut out = HomogeneousForm::zero(self.n_vars, self.degree + other.degree);
        let (ba, bb) = (self.basis(), other.basis());
        for (ea, ca) in ba.exponents().iter().zip(&self.coeffs) {
            if *ca == 0 {
                continue;
            }
            for (eb, cb) in bb.exponents().iter().zip(&other.coeffs) {
                if *cb == 0 {
                    continue;
                }
                let e: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let j = target.index_of(&e).unwrap();
                out.coeffs[j] = field.add(&out.coeffs[j], &field.mul(ca, cb));
            }
        }
        out
    }

    pub fn add(&self, field: &PrimeField, other: &HomogeneousForm) -> HomogeneousForm {
        assert_eq!((self.n_vars, self.degree), (other.n_vars, other.degree));
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect();
        HomogeneousForm { coeffs, ..*self }
    }

    /// Eliminates `x_var` using `x_var = sum_i lin[i] x_i` over the other
    /// variables (`lin` indexed by the remaining variables in order).
    pub fn substitute(&self, field: &PrimeField, var: usize, lin: &[u32]) -> HomogeneousForm {
        let m = self.n_vars - 1;
        assert_eq!(lin.len(), m);
        let l = HomogeneousForm::linear(lin);
        let mut l_pows = vec![HomogeneousForm::new(m, 0, vec![1]).unwrap()];
        for e in 1..=self.degree {
            let next = l_pows[e - 1].multiply(field, &l);
            l_pows.push(next);
        }
        let mut out = HomogeneousForm::zero(m, self.degree);
        for (exp, c) in self.basis().exponents().iter().zip(&self.coeffs) {
            if *c == 0 {
                continue;
            }
            let rest: Vec<u8> = exp.iter().enumerate().filter(|(i, _)| *i != var).map(|(_, &e)| e).collect();
            let rest_deg: usize = rest.iter().map(|&e| e as usize).sum();
            let basis = MonomialBasis::new(m, rest_deg);
            let mut mono = HomogeneousForm::zero(m, rest_deg);
            mono.coeffs[basis.index_of(&rest).unwrap()] = *c;
            out = out.add(field, &mono.multiply(field, &l_pows[exp[var] as usize]));
        }
        out
    }

    pub fn to_file(&self, field: &PrimeField) -> QuinticFile {
        QuinticFile { p: field.modulus(), coeffs: self.coeffs.clone() }
    }
}

/// On-disk quintic: `{"p": .., "coeffs": [126 ints]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuinticFile {
    pub p: u32,
    pub coeffs: Vec<u32>,
}

impl QuinticFile {
    pub fn into_form(self) -> Result<(PrimeField, QuinticForm)> {
        let field = PrimeField::new(self.p)?;
        if let Some(c) = self.coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::Format(format!("coefficient {c} is not in [0, {})", self.p)));
        }
        Ok((field, HomogeneousForm::quintic(self.coeffs)?))
    }
}

/// Canonical basis of the quintics containing `c`.
pub fn quintics_through(c: &RationalCurveMap) -> Vec<QuinticForm> {
    let m = restriction_matrix(c, 5).expect("k = 5 is valid");
    kernel_basis(c.field(), &m).into_iter().map(|v| HomogeneousForm::quintic(v).unwrap()).collect()
}

/// A uniformly random element of a nonzero span, resampled while zero.
pub fn random_combination<R: Rng>(field: &PrimeField, basis: &[HomogeneousForm], rng: &mut R) -> Option<HomogeneousForm> {
    let first = basis.first()?;
    loop {
        let mut acc = HomogeneousForm::zero(first.n_vars, first.degree);
        for b in basis {
            let w = rng.gen_range(0..field.modulus());
            if w != 0 {
                let coeffs = b.coeffs.iter().map(|c| field.mul(c, &w)).collect();
                acc = acc.add(field, &HomogeneousForm { coeffs, ..*b });
            }
        }
        if !acc.is_zero() {
            return Some(acc);
        }
    }
}

/// A random quintic through `c`, or `None` when there is none.
pub fn random_quintic_through<R: Rng>(c: &RationalCurveMap, rng: &mut R) -> Option<QuinticForm> {
    random_combination(c.field(), &quintics_through(c), rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneCohomology {
    pub k: usize,
    pub h0: usize,
    pub h1: usize,
}

/// Cohomology of the ideal of `c` inside the hyperplane it spans, from
/// `0 -> O(k-1) -> I_C(k) -> I_{C/H}(k) -> 0`: `h0` drops by `C(k+3, 4)`
/// and `h1` is unchanged.
pub fn hyperplane_ideal_cohomology(c: &RationalCurveMap, k: usize) -> Result<HyperplaneCohomology> {
    let span = span_dimension(c);
    if span != 3 {
        return Err(Error::NotHyperplaneCurve(span));
    }
    let rep = ideal_cohomology(c, k)?;
    Ok(HyperplaneCohomology { k, h0: rep.h0_ideal - binomial(k + 3, 4), h1: rep.h1_ideal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_in_hyperplane, random_curve, rational_normal_curve};

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(MonomialBasis::new(5, 5).len(), 126);
        assert_eq!(MonomialBasis::new(4, 5).len(), 56);
        let b = MonomialBasis::new(3, 2);
        let exps: Vec<Vec<u8>> = b.exponents().to_vec();
        assert_eq!(exps[0], vec![2, 0, 0]);
        assert_eq!(exps[1], vec![1, 1, 0]);
        assert_eq!(exps[5], vec![0, 0, 2]);
        for w in exps.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn line_restriction_at_k1() {
        let m = restriction_matrix(&RationalCurveMap::line(fp()), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 5));
        assert_eq!(m.row(0), &[1, 0, 0, 0, 0]);
        assert_eq!(m.row(1), &[0, 1, 0, 0, 0]);
        assert!(restriction_matrix(&RationalCurveMap::line(fp()), 0).is_err());
    }

    #[test]
    fn restriction_shapes() {
        let c = random_curve(3, fp(), 1).unwrap();
        let m = restriction_matrix(&c, 5).unwrap();
        assert_eq!((m.rows(), m.cols()), (16, 126));
    }

    #[test]
    fn line_cohomology() {
        let r = ideal_cohomology(&RationalCurveMap::line(fp()), 5).unwrap();
        assert_eq!((r.rank, r.h0_ideal, r.h1_ideal), (6, 120, 0));
        assert_eq!(quintics_through(&RationalCurveMap::line(fp())).len(), 120);
    }

    #[test]
    fn generic_predictions() {
        assert_eq!(generic_ideal_h(24, 5), (5, 0));
        assert_eq!(generic_ideal_h(25, 5), (0, 0));
        assert_eq!(generic_ideal_h(26, 5), (0, 5));
    }

    #[test]
    fn regularity_of_small_curves() {
        assert_eq!(regularity(&RationalCurveMap::line(fp())).unwrap(), 1);
        for d in 2..=4 {
            assert_eq!(regularity(&rational_normal_curve(d, fp()).unwrap()).unwrap(), 2);
        }
    }

    #[test]
    fn span_of_normal_curves() {
        for d in 1..=4 {
            assert_eq!(span_dimension(&rational_normal_curve(d, fp()).unwrap()), d);
        }
        assert_eq!(span_dimension(&curve_in_hyperplane(7, fp(), 3).unwrap()), 3);
    }

    #[test]
    fn rnc_has_maximal_rank() {
        let r = is_maximal_rank(&rational_normal_curve(4, fp()).unwrap()).unwrap();
        assert!(r.maximal_rank);
        assert_eq!(r.witnesses.len(), 6);
    }

    #[test]
    fn hyperplane_curve_fails_maximal_rank_at_k1() {
        let r = is_maximal_rank(&curve_in_hyperplane(10, fp(), 0).unwrap()).unwrap();
        assert!(!r.maximal_rank);
        assert_eq!(r.first_failure, Some(1));
    }

    #[test]
    fn hyperplane_cohomology_requires_span_three() {
        let c = random_curve(6, fp(), 0).unwrap();
        assert!(matches!(hyperplane_ideal_cohomology(&c, 5), Err(Error::NotHyperplaneCurve(4))));
    }

    #[test]
    fn partials_and_substitution() {
        let f = fp();
        // x0^2 x1 in three variables
        let b = MonomialBasis::new(3, 3);
        let mut g = HomogeneousForm::zero(3, 3);
        g.coeffs[b.index_of(&[2, 1, 0]).unwrap()] = 1;
        let dg = g.partial(&f, 0);
        let b2 = MonomialBasis::new(3, 2);
        assert_eq!(dg.coeffs()[b2.index_of(&[1, 1, 0]).unwrap()], 2);
        // x1 = x0 + x2 turns x0^2 x1 into x0^3 + x0^2 x2
        let h = g.substitute(&f, 1, &[1, 1]);
        let b3 = MonomialBasis::new(2, 3);
        assert_eq!(h.coeffs()[b3.index_of(&[3, 0]).unwrap()], 1);
        assert_eq!(h.coeffs()[b3.index_of(&[2, 1]).unwrap()], 1);
        assert_eq!(h.coeffs().iter().filter(|&&c| c != 0).count(), 2);
    }
}
