use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::scalar::{format_scalar, parse_scalar, pow};
use crate::exactnum::{Poly, Scalar};

/// A Laurent polynomial in `t`, stored as degree → nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(BTreeMap<i64, Scalar>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(k, c);
        p
    }

    pub fn t_power(k: i64) -> Self {
        LaurentPoly::monomial(Scalar::one(), k)
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut out = LaurentPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as i64, c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, k: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(k).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shifted(&self, k: i64) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(d, c)| (d + k, c.clone())).collect())
    }

    /// Value at a nonzero point.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        self.terms().map(|(k, c)| c * pow(a, k)).sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(k, c)| format!("{}·t^{k}", format_scalar(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The co-finite ideal of `ℂ[t,t⁻¹]` generated by `P(t) = ∏ (t − a_j)^{b_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct IdealSpec {
    points: Vec<Scalar>,
    mults: Vec<usize>,
    poly: Poly,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    points: Vec<String>,
    mults: Vec<usize>,
}

impl TryFrom<IdealJson> for IdealSpec {
    type Error = Error;
    fn try_from(raw: IdealJson) -> Result<Self> {
        let points = raw.points.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        IdealSpec::new(points, raw.mults)
    }
}

impl From<IdealSpec> for IdealJson {
    fn from(i: IdealSpec) -> Self {
        IdealJson { points: i.points.iter().map(format_scalar).collect(), mults: i.mults }
    }
}

impl IdealSpec {
    pub fn new(points: Vec<Scalar>, mults: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidIdeal("at least one point is required".into()));
        }
        if points.len() != mults.len() {
            return Err(Error::InvalidIdeal(format!("{} points but {} multiplicities", points.len(), mults.len())));
        }
        if mults.contains(&0) {
            return Err(Error::InvalidIdeal("multiplicities must be positive".into()));
        }
        for (i, a) in points.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::InvalidIdeal("points must be nonzero".into()));
            }
            if points[..i].contains(a) {
                return Err(Error::InvalidIdeal(format!("repeated point {}", format_scalar(a))));
            }
        }
        let roots: Vec<(Scalar, usize)> = points.iter().cloned().zip(mults.iter().copied()).collect();
        let poly = Poly::from_roots(&roots);
        Ok(IdealSpec { points, mults, poly })
    }

    /// The radical ideal `∏ (t − a_j)` at the given distinct points.
    pub fn radical_at(points: &[Scalar]) -> Result<Self> {
        IdealSpec::new(points.to_vec(), vec![1; points.len()])
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// Number of distinct points.
    pub fn k(&self) -> usize {
        self.points.len()
    }

    /// `θ = Σ b_j = dim L/I`.
    pub fn theta(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// `c_0, …, c_θ` with `c_θ = 1`.
    pub fn coeffs(&self) -> Vec<Scalar> {
        (0..=self.theta()).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn is_radical(&self) -> bool {
        self.mults.iter().all(|&b| b == 1)
    }

    pub fn radical(&self) -> IdealSpec {
        IdealSpec::radical_at(&self.points).expect("points already validated")
    }

    /// Remainder of a polynomial mod `P`, as θ coefficients.
    fn reduce_poly(&self, p: &Poly) -> Vec<Scalar> {
        let r = p.rem(&self.poly);
        (0..self.theta()).map(|i| r.coeff(i)).collect()
    }

    /// `t⁻¹ mod P = −(c_1 + c_2 t + ⋯ + c_θ t^{θ−1}) / c_0`.
    fn t_inverse(&self) -> Poly {
        let c = self.coeffs();
        let c0 = c[0].clone();
        Poly::new(c[1..].iter().map(|x| -x / &c0).collect())
    }

    /// Coordinates of `t^k mod P` in the basis `1, t, …, t^{θ−1}`.
    pub fn power_mod(&self, k: i64) -> Vec<Scalar> {
        let base = if k >= 0 { Poly::monomial(Scalar::one(), 1) } else { self.t_inverse() };
        let mut result = Poly::one();
        let mut sq = base.rem(&self.poly);
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq).rem(&self.poly);
            }
            sq = sq.mul(&sq).rem(&self.poly);
            e >>= 1;
        }
        self.reduce_poly(&result)
    }

    /// Coordinates of a Laurent polynomial mod `I`.
    pub fn reduce(&self, f: &LaurentPoly) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.theta()];
        for (k, c) in f.terms() {
            for (o, p) in out.iter_mut().zip(self.power_mod(k)) {
                *o += c * p;
            }
        }
        out
    }

    pub fn contains(&self, f: &LaurentPoly) -> bool {
        self.reduce(f).iter().all(Zero::is_zero)
    }

    /// `P(t)` as a Laurent polynomial.
    pub fn generator(&self) -> LaurentPoly {
        LaurentPoly::from_poly(&self.poly)
    }

    /// Product of the coordinate vectors of two classes mod `P`.
    pub fn mul_classes(&self, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        self.reduce_poly(&Poly::new(f.to_vec()).mul(&Poly::new(g.to_vec())))
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .zip(&self.mults)
            .map(|(a, b)| {
                let f = if *a < Scalar::zero() {
                    format!("(t+{})", format_scalar(&-a))
                } else {
                    format!("(t-{})", format_scalar(a))
                };
                if *b == 1 { f } else { format!("{f}^{b}") }
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}
