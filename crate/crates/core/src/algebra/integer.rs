//! Exact integer-matrix rank by fraction-free (Bareiss) elimination.
//!
//! This path never reduces modulo anything and never forms fractions, so it
//! serves as an independent oracle for the modular ranks computed elsewhere.
//! Intended for matrices up to roughly 150 x 150.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::PrimeField;
use super::matrix::{rank, Matrix};

/// Fraction-free row echelon form: the reduced rows and the pivot columns.
fn bareiss_echelon(m: &Matrix<BigInt>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
    }
    a.truncate(pivots.len());
    (a, pivots)
}

/// Rank of an integer matrix over the rationals.
pub fn rational_rank(m: &Matrix<BigInt>) -> usize {
    bareiss_echelon(m).1.len()
}

/// Integer basis of the kernel over the rationals, one primitive vector per
/// non-pivot column.
pub fn rational_kernel(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    let (u, pivots) = bareiss_echelon(m);
    let free = (0..m.cols()).filter(|c| !pivots.contains(c));
    free.map(|j| {
        let mut x = vec![BigRational::zero(); m.cols()];
        x[j] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate().rev() {
            let s: BigRational = (p + 1..m.cols())
                .filter(|&c| !x[c].is_zero() && !u[i][c].is_zero())
                .map(|c| &x[c] * BigRational::from_integer(u[i][c].clone()))
                .sum();
            x[p] = -s / BigRational::from_integer(u[i][p].clone());
        }
        let denom = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let v: Vec<BigInt> = x.iter().map(|q| q.numer() * (&denom / q.denom())).collect();
        let g = v.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
        v.into_iter().map(|e| e / &g).collect()
    })
    .collect()
}

/// Rank of the reduction of an integer matrix modulo `field`'s prime.
pub fn modular_rank(field: &PrimeField, m: &Matrix<BigInt>) -> usize {
    let p = BigInt::from(field.modulus());
    let reduced = m.map(|x| {
        let r = ((x % &p) + &p) % &p;
        u32::try_from(&r).expect("residue fits in u32")
    });
    rank(field, &reduced)
}

/// Lifts residues to their integer representatives in `[0, p)`.
pub fn lift(m: &Matrix<u32>) -> Matrix<BigInt> {
    m.map(|&x| BigInt::from(x))
}

/// Whether two primes agree on the rank of an integer matrix.
pub fn ranks_agree(m: &Matrix<BigInt>, a: &PrimeField, b: &PrimeField) -> bool {
    modular_rank(a, m) == modular_rank(b, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: usize, cols: usize, v: &[i64]) -> Matrix<BigInt> {
        Matrix::from_row_major(rows, cols, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(rational_rank(&int_matrix(0, 0, &[])), 0);
        assert_eq!(rational_rank(&int_matrix(2, 2, &[1, 2, 2, 4])), 1);
        assert_eq!(rational_rank(&int_matrix(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5])), 3);
        assert_eq!(rational_rank(&int_matrix(2, 3, &[0, 0, 0, 0, 0, 7])), 1);
    }

    #[test]
    fn integer_kernel_is_primitive_and_annihilated() {
        let m = int_matrix(2, 4, &[2, 4, 6, 8, 1, 3, 5, 7]);
        let kernel = rational_kernel(&m);
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            for i in 0..2 {
                let dot: BigInt = m.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
            assert_eq!(v.iter().fold(BigInt::zero(), |g, e| g.gcd(e)), BigInt::one());
        }
        assert_eq!(kernel[0], [1, -2, 1, 0].map(BigInt::from).to_vec());
    }

    #[test]
    fn bad_prime_is_detected() {
        // det = 14: full rank over Q and mod 11, rank 1 mod 7.
        let m = int_matrix(2, 2, &[3, 1, 1, 5]);
        assert_eq!(rational_rank(&m), 2);
        let p7 = PrimeField::new(7).unwrap();
        let p11 = PrimeField::new(11).unwrap();
        assert_eq!(modular_rank(&p7, &m), 1);
        assert_eq!(modular_rank(&p11, &m), 2);
        assert!(!ranks_agree(&m, &p7, &p11));
    }
}
