use std::sync::Arc;

use num_traits::Zero;

use super::ideal::{IdealSpec, LaurentPoly};
use super::quotient::{quotient_algebra, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::scalar::pow;
use crate::exactnum::{int, Matrix, Scalar};
use crate::repcore::hw::tensor_twisted;
use crate::repcore::{irreducible_g, Weight, WeightModule};
use crate::superalg::{AlgebraKind, SuperAlgebra};

/// `V(λ_1) ⊗ ⋯ ⊗ V(λ_K)` with `x ⊗ t^m` acting as `Σ_j a_j^m ρ_j(x)` on slot `j`.
pub struct EvaluationModule {
    pub module: WeightModule,
    pub algebra: QuotientAlgebra,
    pub lambdas: Vec<Weight>,
    pub points: Vec<Scalar>,
    /// Slot operators `slot_j(ρ_j(x))` over the base algebra.
    slots: Vec<WeightModule>,
}

/// Builds the evaluation module for full 𝔤-weights `λ_j` at distinct nonzero points `a_j`.
pub fn evaluation_module(alg: &Arc<SuperAlgebra>, lambdas: &[Weight], points: &[Scalar]) -> Result<EvaluationModule> {
    if lambdas.len() != points.len() {
        return Err(Error::InvalidSpec(format!("{} weights but {} points", lambdas.len(), points.len())));
    }
    let ideal = IdealSpec::radical_at(points)?;
    let factors: Vec<WeightModule> = lambdas.iter().map(|l| irreducible_g(alg, l)).collect::<Result<_>>()?;
    let refs: Vec<&WeightModule> = factors.iter().collect();
    let qa = quotient_algebra(alg, &ideal);
    let qt = qa.table().clone();
    let coeffs: Vec<Vec<(usize, Scalar)>> = (0..qt.dim())
        .map(|k| points.iter().enumerate().map(|(j, a)| (j, pow(a, qt.degree[k] as i64))).collect())
        .collect();
    let module = tensor_twisted(&qt, &refs, |k, _| qt.base[k], &coeffs);
    let base = alg.table();
    let slots = (0..points.len())
        .map(|j| {
            let c: Vec<Vec<(usize, Scalar)>> = (0..base.dim()).map(|_| vec![(j, int(1))]).collect();
            tensor_twisted(base, &refs, |k, _| k, &c)
        })
        .collect();
    Ok(EvaluationModule {
        module,
        algebra: qa,
        lambdas: lambdas.iter().map(|l| alg.kind.canonical_full(l)).collect(),
        points: points.to_vec(),
        slots,
    })
}

impl EvaluationModule {
    /// Action of `x ⊗ t^k` computed directly from the slots, without reducing mod I.
    pub fn loop_action(&self, x: usize, k: i64) -> Matrix {
        let n = self.module.dim();
        let mut out = Matrix::zeros(n, n);
        for (slot, a) in self.slots.iter().zip(&self.points) {
            out.add_scaled(&pow(a, k), slot.action(x));
        }
        out
    }

    /// Action of `x ⊗ f` for a Laurent polynomial `f`, without reducing mod I.
    pub fn laurent_action(&self, x: usize, f: &LaurentPoly) -> Matrix {
        let n = self.module.dim();
        let mut out = Matrix::zeros(n, n);
        for (slot, a) in self.slots.iter().zip(&self.points) {
            let c = f.eval(a);
            if !c.is_zero() {
                out.add_scaled(&c, slot.action(x));
            }
        }
        out
    }

    pub fn psi(&self) -> Psi {
        psi_from(self.algebra.base().kind, &self.lambdas, &self.points)
    }
}

/// `ψ(h ⊗ t^m) = Σ_j a_j^m λ_j(h)` on the Cartan subalgebra of the loop algebra.
#[derive(Clone, Debug)]
pub struct Psi {
    pub kind: AlgebraKind,
    pub lambdas: Vec<Weight>,
    pub points: Vec<Scalar>,
}

pub fn psi_from(kind: AlgebraKind, lambdas: &[Weight], points: &[Scalar]) -> Psi {
    Psi { kind, lambdas: lambdas.to_vec(), points: points.to_vec() }
}

impl Psi {
    /// Value on `h ⊗ t^m`, with `h` given by its gl diagonal.
    pub fn eval(&self, h_diag: &[Scalar], m: i64) -> Scalar {
        self.lambdas
            .iter()
            .zip(&self.points)
            .map(|(l, a)| pow(a, m) * self.kind.eval_diag(l, h_diag))
            .sum()
    }

    /// The weight `Σ_j a_j^m λ_j`, i.e. ψ restricted to `𝔥 ⊗ t^m`.
    pub fn weight(&self, m: i64) -> Weight {
        let mut w = Weight::zero(self.kind.coord_len());
        for (l, a) in self.lambdas.iter().zip(&self.points) {
            w = &w + &l.scaled(&pow(a, m));
        }
        w
    }

    /// Period of ψ over the Cartan elements given by `diags`.
    pub fn period(&self, diags: &[Vec<Scalar>]) -> Result<usize> {
        let order = self.points.len();
        period_of(|i, m| self.eval(&diags[i], m), diags.len(), order, order)
    }
}

/// The period `r` of ψ over the full Cartan subalgebra of `alg`.
pub fn detect_period(alg: &SuperAlgebra, lambdas: &[Weight], points: &[Scalar]) -> Result<usize> {
    psi_from(alg.kind, lambdas, points).period(&alg.table().cartan_diag)
}

/// Largest `r ≥ 1` such that every sequence `seq(i, ·)` vanishes off `rℤ`, or 0
/// when all sequences vanish.
///
/// Each sequence satisfies a linear recurrence of order at most `order`, and so
/// does each of its residue-class subsequences, so vanishing on `order`
/// consecutive terms of a class is vanishing on the whole class. Periods above
/// 2 would need primitive roots of unity among the characteristic roots and
/// are reported as needing a cyclotomic extension.
pub fn period_of<F: Fn(usize, i64) -> Scalar>(seq: F, count: usize, order: usize, max_r: usize) -> Result<usize> {
    let order = order.max(1) as i64;
    let vanishes = |r: i64, c: i64| (0..count).all(|i| (0..order).all(|k| seq(i, c + r * k).is_zero()));
    if vanishes(1, 0) {
        return Ok(0);
    }
    for r in (2..=max_r.max(1) as i64).rev() {
        if (1..r).all(|c| vanishes(r, c)) {
            if r > 2 {
                return Err(Error::NeedsCyclotomic(r as usize));
            }
            return Ok(r as usize);
        }
    }
    Ok(1)
}
