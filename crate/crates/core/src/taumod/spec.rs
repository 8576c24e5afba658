use super::tau::{tau_from_eval, TauSeq};
use crate::error::{Error, Result};
use crate::exactnum::scalar::pow;
use crate::exactnum::Scalar;
use crate::loopeval::{period_of, IdealSpec};
use crate::repcore::Weight;
use crate::superalg::{AlgebraKind, SuperAlgebra};

/// Data of `V̂(φ,τ)`: 𝔤_ss weights `λ_j` at points `a_j` with multiplicities
/// `b_j`, the τ-sequence on `z ⊗ L`, and the grading offset `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauModuleSpec {
    pub kind: AlgebraKind,
    pub lambdas: Vec<Weight>,
    pub tau: TauSeq,
    pub offset: Scalar,
}

impl TauModuleSpec {
    pub fn new(
        alg: &SuperAlgebra,
        lambdas: Vec<Weight>,
        points: Vec<Scalar>,
        mults: Vec<usize>,
        tau_window: Vec<Scalar>,
        offset: Scalar,
    ) -> Result<Self> {
        if lambdas.len() != points.len() {
            return Err(Error::InvalidSpec(format!("{} weights but {} points", lambdas.len(), points.len())));
        }
        let ideal = IdealSpec::new(points, mults)?;
        let tau = TauSeq::new(ideal, tau_window)?;
        TauModuleSpec::from_parts(alg, lambdas, tau, offset)
    }

    pub fn from_parts(alg: &SuperAlgebra, lambdas: Vec<Weight>, tau: TauSeq, offset: Scalar) -> Result<Self> {
        if lambdas.len() != tau.ideal().k() {
            return Err(Error::InvalidSpec(format!(
                "{} weights but the ideal has {} points",
                lambdas.len(),
                tau.ideal().k()
            )));
        }
        let mut ss = Vec::with_capacity(lambdas.len());
        for l in &lambdas {
            if l.len() != alg.kind.coord_len() {
                return Err(Error::DimensionMismatch { expected: alg.kind.coord_len(), found: l.len() });
            }
            let w = alg.kind.canonical_ss(l);
            alg.check_dominant(&w)?;
            ss.push(w);
        }
        Ok(TauModuleSpec { kind: alg.kind, lambdas: ss, tau, offset })
    }

    /// The τ-module presentation of the evaluation module at full weights
    /// `λ_j`: 𝔤_ss parts stay, `z` data moves into `τ_s = Σ_j λ_j(z) a_j^s`.
    pub fn from_evaluation(alg: &SuperAlgebra, full: &[Weight], points: &[Scalar], offset: Scalar) -> Result<Self> {
        let zetas: Vec<Scalar> = full.iter().map(|l| alg.kind.eval_diag(l, &alg.kind.z_diag())).collect();
        let tau = tau_from_eval(points, &zetas)?;
        TauModuleSpec::from_parts(alg, full.to_vec(), tau, offset)
    }

    pub fn ideal(&self) -> &IdealSpec {
        self.tau.ideal()
    }

    pub fn points(&self) -> &[Scalar] {
        self.ideal().points()
    }

    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn theta(&self) -> usize {
        self.ideal().theta()
    }

    /// `Σ_j a_j^m λ_j`, the weight by which `𝔥_ss ⊗ t^m` acts on the top.
    pub fn psi_ss(&self, m: i64) -> Weight {
        let mut w = Weight::zero(self.kind.coord_len());
        for (l, a) in self.lambdas.iter().zip(self.points()) {
            w = &w + &l.scaled(&pow(a, m));
        }
        w
    }

    fn psi_values(&self, m: i64, diags: &[Vec<Scalar>]) -> Vec<Scalar> {
        let w = self.psi_ss(m);
        diags.iter().map(|d| self.kind.eval_diag(&w, d)).collect()
    }

    /// Period of ψ on `𝔥_ss ⊗ L` alone.
    pub fn psi_period(&self, alg: &SuperAlgebra) -> Result<usize> {
        let diags = ss_diags(alg);
        period_of(|i, m| self.psi_values(m, &diags)[i].clone(), diags.len(), self.k(), self.k())
    }

    /// Period of the combined character: ψ on `𝔥_ss ⊗ L` together with τ on `z ⊗ L`.
    pub fn period(&self, alg: &SuperAlgebra) -> Result<usize> {
        let diags = ss_diags(alg);
        let count = diags.len() + 1;
        period_of(
            |i, m| if i < diags.len() { self.psi_values(m, &diags)[i].clone() } else { self.tau.get(m) },
            count,
            self.theta(),
            self.k(),
        )
    }

    /// Non-fatal remarks about the data, e.g. τ not vanishing off `rℤ` for the
    /// period `r` of ψ.
    pub fn warnings(&self, alg: &SuperAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        if let (Ok(r_psi), Ok(r)) = (self.psi_period(alg), self.period(alg)) {
            if r_psi > 1 && r != r_psi {
                out.push(format!(
                    "τ does not vanish off {r_psi}ℤ although ψ on 𝔥_ss does; the combined period is {r}"
                ));
            }
        }
        out
    }

    /// Whether all data is trivial (ψ = 0 and τ = 0).
    pub fn is_trivial(&self) -> bool {
        self.lambdas.iter().all(Weight::is_zero) && self.tau.is_zero()
    }

    pub fn lambda_is_zero(&self, j: usize) -> bool {
        self.lambdas[j].is_zero()
    }
}

/// gl diagonals of the semisimple Cartan basis.
pub(crate) fn ss_diags(alg: &SuperAlgebra) -> Vec<Vec<Scalar>> {
    let t = alg.table();
    alg.ss_cartan()
        .iter()
        .map(|h| t.cartan_diag[t.cartan.iter().position(|c| c == h).expect("Cartan element")].clone())
        .collect()
}

