//! Homogeneous forms in two variables `s, t`.
//!
//! A form of degree `d` is stored as `d + 1` coefficients in the basis
//! `s^d, s^(d-1) t, ..., t^d`. The zero form exists in every degree.

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BinaryForm<T> {
    coeffs: Vec<T>,
}

/// Variable of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    S,
    T,
}

impl<T: Clone + PartialEq> BinaryForm<T> {
    /// Panics if `coeffs` is empty; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero<F: Field<Elem = T>>(field: &F, degree: usize) -> Self {
        BinaryForm { coeffs: vec![field.zero(); degree + 1] }
    }

    pub fn constant(c: T) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// `s^(degree - t_power) t^t_power`.
    pub fn monomial<F: Field<Elem = T>>(field: &F, degree: usize, t_power: usize) -> Self {
        let mut f = Self::zero(field, degree);
        f.coeffs[t_power] = field.one();
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero<F: Field<Elem = T>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// Sum of two forms of equal degree.
    pub fn add<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect() }
    }

    pub fn sub<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.sub(a, b)).collect() }
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect() }
    }

    /// Product; the degree is the sum of the degrees.
    pub fn multiply<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow<F: Field<Elem = T>>(&self, field: &F, e: usize) -> Self {
        let mut acc = BinaryForm::constant(field.one());
        for _ in 0..e {
            acc = acc.multiply(field, self);
        }
        acc
    }

    /// Partial derivative. A constant differentiates to the zero form of degree 0.
    pub fn derivative<F: Field<Elem = T>>(&self, field: &F, var: Var) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(field, 0);
        }
        let coeffs = match var {
            Var::S => (0..d).map(|i| field.mul(&field.from_i64((d - i) as i64), &self.coeffs[i])).collect(),
            Var::T => (1..=d).map(|i| field.mul(&field.from_i64(i as i64), &self.coeffs[i])).collect(),
        };
        BinaryForm { coeffs }
    }

    pub fn evaluate<F: Field<Elem = T>>(&self, field: &F, s: &T, t: &T) -> T {
        // Horner in s with t-powers accumulated alongside.
        let mut acc = field.zero();
        let mut t_pow = field.one();
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            terms.push(field.mul(c, &t_pow));
            t_pow = field.mul(&t_pow, t);
        }
        for term in &terms {
            acc = field.add(&field.mul(&acc, s), term);
        }
        acc
    }

    /// Scales so the first nonzero coefficient is one. The zero form is returned unchanged.
    pub fn normalized<F: Field<Elem = T>>(&self, field: &F) -> Self {
        match self.coeffs.iter().find(|c| !field.is_zero(c)) {
            Some(lead) => self.scale(field, &field.inv(lead)),
            None => self.clone(),
        }
    }

    /// Largest `v` with `t^v` dividing the form; `None` for the zero form.
    pub fn t_valuation<F: Field<Elem = T>>(&self, field: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !field.is_zero(c))
    }

    /// Dehomogenizes at `t = 1` after removing `t^v`; low-to-high coefficients in `s`.
    fn dehomogenize<F: Field<Elem = T>>(&self, field: &F) -> (usize, Vec<T>) {
        let v = self.t_valuation(field).expect("nonzero form");
        let mut poly: Vec<T> = self.coeffs[v..].to_vec();
        poly.reverse();
        (v, poly)
    }

    fn homogenize(t_power: usize, poly: Vec<T>, zero: T) -> Self {
        let mut coeffs: Vec<T> = std::iter::repeat(zero).take(t_power).collect();
        coeffs.extend(poly.into_iter().rev());
        BinaryForm { coeffs }
    }

    /// Monic greatest common divisor.
    pub fn gcd<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Result<Self> {
        match (self.is_zero(field), other.is_zero(field)) {
            (true, true) => return Err(Error::UndefinedGcd),
            (true, false) => return Ok(other.normalized(field)),
            (false, true) => return Ok(self.normalized(field)),
            _ => {}
        }
        let (va, pa) = self.dehomogenize(field);
        let (vb, pb) = other.dehomogenize(field);
        let g = poly_gcd(field, pa, pb);
        Ok(Self::homogenize(va.min(vb), g, field.zero()))
    }

    /// Monic gcd of a nonempty collection; zero forms are skipped.
    pub fn gcd_all<'a, F: Field<Elem = T>>(field: &F, forms: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        T: 'a,
    {
        let mut acc: Option<Self> = None;
        for f in forms {
            if f.is_zero(field) {
                continue;
            }
            acc = Some(match acc {
                None => f.normalized(field),
                Some(g) => g.gcd(field, f)?,
            });
            if acc.as_ref().is_some_and(|g| g.degree() == 0) {
                break;
            }
        }
        acc.ok_or(Error::UndefinedGcd)
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div<F: Field<Elem = T>>(&self, field: &F, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(field), "division by the zero form");
        if divisor.degree() > self.degree() {
            return None;
        }
        let qdeg = self.degree() - divisor.degree();
        if self.is_zero(field) {
            return Some(Self::zero(field, qdeg));
        }
        let (va, pa) = self.dehomogenize(field);
        let (vb, pb) = divisor.dehomogenize(field);
        if vb > va {
            return None;
        }
        let (q, r) = poly_divrem(field, &pa, &pb);
        if r.iter().any(|c| !field.is_zero(c)) {
            return None;
        }
        let q = Self::homogenize(va - vb, q, field.zero());
        (q.degree() == qdeg).then_some(q)
    }
}

fn poly_trim<F: Field>(field: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
}

/// Long division of low-to-high polynomials; the divisor must be nonzero.
fn poly_divrem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let mut b = b.to_vec();
    poly_trim(field, &mut b);
    let mut r = a.to_vec();
    poly_trim(field, &mut r);
    if r.len() < b.len() {
        return (vec![field.zero()], r);
    }
    let lead_inv = field.inv(b.last().unwrap());
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = field.mul(r.last().unwrap(), &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, bc));
        }
        q[shift] = c;
        r.pop();
        poly_trim(field, &mut r);
    }
    poly_trim(field, &mut q);
    if q.is_empty() {
        q.push(field.zero());
    }
    (q, r)
}

/// Monic Euclidean gcd of two nonzero low-to-high polynomials.
fn poly_gcd<F: Field>(field: &F, mut a: Vec<F::Elem>, mut b: Vec<F::Elem>) -> Vec<F::Elem> {
    poly_trim(field, &mut a);
    poly_trim(field, &mut b);
    while !b.is_empty() {
        let (_, r) = poly_divrem(field, &a, &b);
        a = b;
        b = r;
    }
    let inv = field.inv(a.last().unwrap());
    a.iter().map(|c| field.mul(c, &inv)).collect()
}
