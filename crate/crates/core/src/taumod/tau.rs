use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::scalar::{format_scalar, parse_scalar, pow};
use crate::exactnum::Scalar;
use crate::loopeval::IdealSpec;

/// A bi-infinite solution of `Σ_{i=0}^{θ} c_i τ_{i+m} = 0`, the recurrence
/// whose characteristic polynomial generates the ideal. Fixed by
/// `τ_0, …, τ_{θ−1}`; other terms are computed on demand and memoized.
#[derive(Serialize, Deserialize)]
#[serde(try_from = "TauJson", into = "TauJson")]
pub struct TauSeq {
    ideal: IdealSpec,
    coeffs: Vec<Scalar>,
    memo: RwLock<BTreeMap<i64, Scalar>>,
}

#[derive(Serialize, Deserialize)]
struct TauJson {
    ideal: IdealSpec,
    window: Vec<String>,
}

impl TryFrom<TauJson> for TauSeq {
    type Error = Error;
    fn try_from(raw: TauJson) -> Result<Self> {
        let window = raw.window.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        TauSeq::new(raw.ideal, window)
    }
}

impl From<TauSeq> for TauJson {
    fn from(t: TauSeq) -> Self {
        TauJson { window: t.window().iter().map(format_scalar).collect(), ideal: t.ideal }
    }
}

impl Clone for TauSeq {
    fn clone(&self) -> Self {
        TauSeq::new(self.ideal.clone(), self.window()).expect("window already validated")
    }
}

impl fmt::Debug for TauSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.window().iter().map(format_scalar).collect();
        write!(f, "TauSeq({} ; {})", self.ideal, w.join(", "))
    }
}

impl PartialEq for TauSeq {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal && self.window() == other.window()
    }
}

impl TauSeq {
    pub fn new(ideal: IdealSpec, window: Vec<Scalar>) -> Result<Self> {
        if window.len() != ideal.theta() {
            return Err(Error::InvalidSpec(format!(
                "τ window has {} values, the ideal needs θ = {}",
                window.len(),
                ideal.theta()
            )));
        }
        let coeffs = ideal.coeffs();
        let memo = window.into_iter().enumerate().map(|(i, v)| (i as i64, v)).collect();
        Ok(TauSeq { ideal, coeffs, memo: RwLock::new(memo) })
    }

    pub fn zero(ideal: IdealSpec) -> Self {
        let theta = ideal.theta();
        TauSeq::new(ideal, vec![Scalar::zero(); theta]).expect("window length")
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn theta(&self) -> usize {
        self.ideal.theta()
    }

    /// `τ_0, …, τ_{θ−1}`.
    pub fn window(&self) -> Vec<Scalar> {
        self.values(0, self.theta() as i64 - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.window().iter().all(Zero::is_zero)
    }

    /// `τ_s`, extending the stored range forward (solving for `τ_{m+θ}`) or
    /// backward (solving for `τ_m`, using `c_0 ≠ 0`) as needed.
    pub fn get(&self, s: i64) -> Scalar {
        if let Some(v) = self.memo.read().expect("τ lock").get(&s) {
            return v.clone();
        }
        let mut memo = self.memo.write().expect("τ lock");
        let theta = self.theta() as i64;
        let c = &self.coeffs;
        let (lo, hi) = {
            let lo = *memo.keys().next().expect("nonempty window");
            let hi = *memo.keys().next_back().expect("nonempty window");
            (lo, hi)
        };
        if s > hi {
            for t in hi + 1..=s {
                let m = t - theta;
                let acc: Scalar = (0..theta).map(|i| &c[i as usize] * &memo[&(m + i)]).sum();
                memo.insert(t, -acc);
            }
        } else if s < lo {
            for m in (s..lo).rev() {
                let acc: Scalar = (1..=theta).map(|i| &c[i as usize] * &memo[&(m + i)]).sum();
                memo.insert(m, -acc / &c[0]);
            }
        }
        memo[&s].clone()
    }

    /// `τ_lo, …, τ_hi`.
    pub fn values(&self, lo: i64, hi: i64) -> Vec<Scalar> {
        (lo..=hi).map(|s| self.get(s)).collect()
    }

    /// The same sequence over a larger ideal (one whose generator is a multiple of ours).
    pub fn over(&self, ideal: &IdealSpec) -> Result<TauSeq> {
        if !ideal_divides(&self.ideal, ideal) {
            return Err(Error::InvalidIdeal(format!("{} is not contained in {}", ideal, self.ideal)));
        }
        TauSeq::new(ideal.clone(), self.values(0, ideal.theta() as i64 - 1))
    }

    /// Whether the sequence satisfies the recurrence of another ideal's generator.
    /// Checking `θ` consecutive starting points suffices: the residual sequence
    /// itself satisfies our own order-θ recurrence.
    pub fn satisfies(&self, other: &IdealSpec) -> bool {
        let p = other.coeffs();
        (0..self.theta() as i64).all(|m| {
            p.iter().enumerate().map(|(i, ci)| ci * self.get(m + i as i64)).sum::<Scalar>().is_zero()
        })
    }
}

/// Whether every root of `small` occurs in `big` with at least the same multiplicity.
fn ideal_divides(small: &IdealSpec, big: &IdealSpec) -> bool {
    small.points().iter().zip(small.mults()).all(|(a, b)| {
        big.points().iter().zip(big.mults()).any(|(a2, b2)| a2 == a && b2 >= b)
    })
}

/// `τ_s = Σ_j ζ_j a_j^s` over the radical ideal at the points.
pub fn tau_from_eval(points: &[Scalar], zetas: &[Scalar]) -> Result<TauSeq> {
    if points.len() != zetas.len() {
        return Err(Error::InvalidSpec(format!("{} points but {} z-eigenvalues", points.len(), zetas.len())));
    }
    let ideal = IdealSpec::radical_at(points)?;
    let window = (0..points.len() as i64)
        .map(|s| points.iter().zip(zetas).map(|(a, z)| z * pow(a, s)).sum())
        .collect();
    TauSeq::new(ideal, window)
}

/// Whether `τ` kills `z ⊗ I′` for the radical `I′` of its ideal.
pub fn is_evaluation(tau: &TauSeq) -> bool {
    tau.satisfies(&tau.ideal().radical())
}
