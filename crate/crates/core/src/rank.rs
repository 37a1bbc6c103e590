//! Exact rank over the rationals.
//!
//! Two independent routes:
//! - [`bareiss_rank`]: fraction-free Gaussian elimination with full pivoting
//!   on the nonzero entry of smallest magnitude. Every intermediate entry is a
//!   minor of the (permuted) input, so all divisions are exact.
//! - [`multimodular_rank`]: ranks modulo many word-sized primes. Each modular
//!   rank is a lower bound for the rational rank; once the product of the
//!   primes exceeds the Hadamard bound on the next larger minor, no such minor
//!   can be nonzero, so the largest modular rank seen is the rational rank.
//!
//! [`exact_rank`] picks Bareiss for small orders and the multimodular route
//! otherwise. Both are exact.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::matrix::Matrix;
use crate::modular::is_prime;
use crate::scalar::Scalar;

/// Largest order for which [`exact_rank`] runs Bareiss elimination.
pub const BAREISS_MAX_ORDER: usize = 128;

/// Rank by fraction-free elimination. Fixed-width scalars may overflow on
/// large inputs; use `BigInt` unless entries are known to stay small.
pub fn bareiss_rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<T>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut prev = T::one();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let k = rank;
        let Some((pr, pc)) = smallest_pivot(&a, k, cols) else {
            break;
        };
        a.swap(k, pr);
        if pc != k {
            for row in a.iter_mut() {
                row.swap(k, pc);
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = pivot_row[k].clone();
        for row in tail.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..cols {
                let v = pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                row[j] = v / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn smallest_pivot<T: Scalar>(a: &[Vec<T>], k: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (r, row) in a.iter().enumerate().skip(k) {
        for (c, x) in row.iter().enumerate().take(cols).skip(k) {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                let unit = mag.is_one();
                best = Some((r, c, mag));
                if unit {
                    return best.map(|(r, c, _)| (r, c));
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Rank of `m` reduced modulo the prime `p` (`p < 2^32`).
pub fn rank_mod_p(m: &Matrix<BigInt>, p: u64) -> usize {
    assert!(p < (1 << 32), "prime must fit in 32 bits");
    let big_p = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| x.mod_floor(&big_p).to_u64().expect("residue fits"))
                .collect()
        })
        .collect();
    rank_mod_p_u64(&mut a, p)
}

fn rank_mod_p_u64(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &mut head[rank];
        for x in pivot_row[c..].iter_mut() {
            *x = *x * inv % p;
        }
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + neg * y) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

const PRIME_POOL: usize = 512;

/// The `PRIME_POOL` largest primes below `2^31`, descending.
fn word_primes() -> impl Iterator<Item = u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES
        .get_or_init(|| {
            (1u64 << 20..1u64 << 31)
                .rev()
                .filter(|&x| x % 2 == 1 && is_prime(x))
                .take(PRIME_POOL)
                .collect()
        })
        .iter()
        .copied()
}

/// Squared Hadamard bound on every `k×k` minor: the product of the `k`
/// largest squared row norms.
fn hadamard_sq(sorted_norms_sq: &[BigUint], k: usize) -> BigUint {
    sorted_norms_sq.iter().take(k).product()
}

/// Rational rank from modular ranks, certified by the Hadamard bound.
pub fn multimodular_rank(m: &Matrix<BigInt>) -> usize {
    let full = m.rows().min(m.cols());
    let mut norms: Vec<BigUint> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| {
                    let mag = x.magnitude();
                    mag * mag
                })
                .sum()
        })
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let mut best = 0usize;
    let mut product_sq = BigUint::from(1u32);
    for p in word_primes() {
        best = best.max(rank_mod_p(m, p));
        if best == full {
            return best;
        }
        product_sq *= p * p;
        if product_sq > hadamard_sq(&norms, best + 1) {
            return best;
        }
    }
    // Bound too large for the prime pool; fall back to elimination.
    bareiss_rank(m)
}

/// Rank over the rationals.
pub fn exact_rank(m: &Matrix<BigInt>) -> usize {
    if m.rows().max(m.cols()) <= BAREISS_MAX_ORDER {
        bareiss_rank(m)
    } else {
        multimodular_rank(m)
    }
}

/// Dimension of the kernel of `M - λI` over the rationals.
pub fn exact_nullity(m: &Matrix<BigInt>, lambda: &BigInt) -> usize {
    assert!(m.is_square(), "nullity needs a square matrix");
    let shifted = m.shift_diagonal(lambda).expect("square");
    m.rows() - exact_rank(&shifted)
}

/// Rank of a family of vectors (as columns).
pub fn family_rank(len: usize, vectors: &[Vec<BigInt>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    let m = Matrix::from_columns(len, vectors).expect("vectors share a length");
    // Independence of a full family only needs one prime: a modular rank is a
    // lower bound for the rational rank, and the rank cannot exceed the
    // number of vectors.
    let cols = vectors.len();
    for p in word_primes().take(3) {
        if rank_mod_p(&m, p) == cols.min(len) {
            return cols.min(len);
        }
    }
    exact_rank(&m)
}
