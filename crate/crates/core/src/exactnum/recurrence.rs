//! Minimal linear recurrences of scalar sequences over Q.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::Scalar;

/// Berlekamp–Massey over Q.
///
/// Returns the monic characteristic polynomial `P(t) = t^L + p_{L-1} t^{L-1} + … + p_0`
/// of the shortest recurrence `Σ_i p_i s_{n+i} = 0` generating `seq`. The zero
/// sequence yields `P = 1` (order 0). Reliable when `seq.len() ≥ 2L`.
pub fn berlekamp_massey(seq: &[Scalar]) -> Poly {
    // connection polynomial C(x) = 1 + c_1 x + … + c_L x^L
    let mut c: Vec<Scalar> = vec![Scalar::one()];
    let mut b: Vec<Scalar> = vec![Scalar::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_disc = Scalar::one();
    for n in 0..seq.len() {
        let mut d = seq[n].clone();
        for i in 1..=l {
            if let Some(ci) = c.get(i) {
                d += ci * &seq[n - i];
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last_disc;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Scalar::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_disc = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, Scalar::zero());
    // P(t) = t^L C(1/t)
    Poly::new(c.into_iter().rev().collect())
}

/// Whether `Σ_i p_i s_{m+i} = 0` holds for every window start `m` available in `seq`.
pub fn satisfies(p: &Poly, seq: &[Scalar]) -> bool {
    let order = p.degree();
    if seq.len() <= order {
        return true;
    }
    (0..seq.len() - order).all(|m| {
        let mut acc = Scalar::zero();
        for (i, pi) in p.coeffs().iter().enumerate() {
            acc += pi * &seq[m + i];
        }
        acc.is_zero()
    })
}
