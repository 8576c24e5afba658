use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{format_scalar, int, Scalar};
use crate::repcore::Weight;

/// Which superalgebra is being realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum AlgebraKind {
    #[serde(rename = "sl")]
    Sl { m: usize, n: usize },
    #[serde(rename = "C")]
    C { m: usize },
}

impl AlgebraKind {
    /// Even and odd block sizes of the defining representation.
    pub fn blocks(&self) -> (usize, usize) {
        match *self {
            AlgebraKind::Sl { m, n } => (m, n),
            AlgebraKind::C { m } => (2, 2 * m - 2),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            AlgebraKind::Sl { m, n } => format!("sl({m},{n})"),
            AlgebraKind::C { m } => format!("C({m})"),
        }
    }

    /// Number of ε/δ coordinates.
    pub fn coord_len(&self) -> usize {
        match *self {
            AlgebraKind::Sl { m, n } => m + n,
            AlgebraKind::C { m } => m,
        }
    }

    pub fn coord_names(&self) -> Vec<String> {
        match *self {
            AlgebraKind::Sl { m, n } => (1..=m)
                .map(|i| format!("ε{i}"))
                .chain((1..=n).map(|j| format!("δ{j}")))
                .collect(),
            AlgebraKind::C { m } => std::iter::once("ε".to_string())
                .chain((1..m).map(|j| format!("δ{j}")))
                .collect(),
        }
    }

    /// Diagonal of the canonical central element `z` of the even part.
    pub fn z_diag(&self) -> Vec<Scalar> {
        match *self {
            AlgebraKind::Sl { m, n } => {
                (0..m + n).map(|i| if i < m { int(n as i64) } else { int(m as i64) }).collect()
            }
            AlgebraKind::C { m } => {
                let mut d = vec![Scalar::zero(); 2 * m];
                d[0] = int(1);
                d[1] = int(-1);
                d
            }
        }
    }

    /// Value of a weight on a diagonal Cartan element.
    pub fn eval_diag(&self, w: &Weight, diag: &[Scalar]) -> Scalar {
        match *self {
            AlgebraKind::Sl { .. } => w.dot(diag),
            AlgebraKind::C { m } => {
                let mut acc = &w.0[0] * &diag[0];
                for j in 1..m {
                    acc += &w.0[j] * &diag[1 + j];
                }
                acc
            }
        }
    }

    /// Restriction of a gl-diagonal functional `Σ c_a ε_a` to the Cartan subalgebra.
    pub fn restrict_gl(&self, gl: &[Scalar]) -> Weight {
        match *self {
            AlgebraKind::Sl { .. } => self.canonical_full(&Weight(gl.to_vec())),
            AlgebraKind::C { m } => {
                let mut w = vec![&gl[0] - &gl[1]];
                for j in 1..m {
                    w.push(&gl[1 + j] - &gl[m + j]);
                }
                Weight(w)
            }
        }
    }

    /// Canonical representative of a functional on the full Cartan subalgebra.
    /// For sl(m,n) the coordinates are shifted along the supertrace direction
    /// until they sum to zero.
    pub fn canonical_full(&self, w: &Weight) -> Weight {
        match *self {
            AlgebraKind::Sl { m, n } => {
                let total: Scalar = w.0.iter().sum();
                let c = total / int(m as i64 - n as i64);
                Weight(
                    w.0.iter()
                        .enumerate()
                        .map(|(i, x)| if i < m { x - &c } else { x + &c })
                        .collect(),
                )
            }
            AlgebraKind::C { .. } => w.clone(),
        }
    }

    /// Canonical representative of a functional on the semisimple Cartan part:
    /// for sl(m,n) the last coordinate of each block is zero, for C(m) the ε
    /// coordinate is zero.
    pub fn canonical_ss(&self, w: &Weight) -> Weight {
        match *self {
            AlgebraKind::Sl { m, n } => {
                let a = w.0[m - 1].clone();
                let b = w.0[m + n - 1].clone();
                Weight(
                    w.0.iter()
                        .enumerate()
                        .map(|(i, x)| if i < m { x - &a } else { x - &b })
                        .collect(),
                )
            }
            AlgebraKind::C { .. } => {
                let mut v = w.0.clone();
                v[0] = Scalar::zero();
                Weight(v)
            }
        }
    }

    /// Full weight restricting to `ss` on the semisimple Cartan and taking
    /// value `zval` on `z`.
    pub fn full_from_ss(&self, ss: &Weight, zval: &Scalar) -> Weight {
        match *self {
            AlgebraKind::Sl { m, n } => {
                let (mf, nf) = (int(m as i64), int(n as i64));
                let rhs1 = zval - self.eval_diag(ss, &self.z_diag());
                let rhs2 = -ss.0.iter().sum::<Scalar>();
                // [mn  mn; m  n] [α β]ᵀ = [rhs1 rhs2]ᵀ
                let mn = &mf * &nf;
                let det = &mn * &nf - &mn * &mf;
                let alpha = (&rhs1 * &nf - &mn * &rhs2) / &det;
                let beta = (&mn * &rhs2 - &mf * &rhs1) / &det;
                Weight(
                    ss.0.iter()
                        .enumerate()
                        .map(|(i, x)| if i < m { x + &alpha } else { x + &beta })
                        .collect(),
                )
            }
            AlgebraKind::C { .. } => {
                let mut v = ss.0.clone();
                v[0] = zval.clone();
                Weight(v)
            }
        }
    }

    /// Gram matrix of the form on ε/δ coordinates.
    pub fn gram(&self) -> Vec<Vec<Scalar>> {
        let len = self.coord_len();
        let sign = |i: usize| match *self {
            AlgebraKind::Sl { m, .. } => {
                if i < m {
                    Scalar::one()
                } else {
                    -Scalar::one()
                }
            }
            AlgebraKind::C { .. } => {
                if i == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                }
            }
        };
        (0..len)
            .map(|i| (0..len).map(|j| if i == j { sign(i) } else { Scalar::zero() }).collect())
            .collect()
    }

    pub fn form(&self, a: &Weight, b: &Weight) -> Scalar {
        let g = self.gram();
        let mut acc = Scalar::zero();
        for (i, row) in g.iter().enumerate() {
            acc += &a.0[i] * &row[i] * &b.0[i];
        }
        acc
    }

    /// Linear functional positive on every positive root.
    pub fn height_functional(&self) -> Vec<Scalar> {
        let len = self.coord_len();
        (0..len).map(|i| int((len - i) as i64)).collect()
    }

    /// Human-readable form of a weight, e.g. `ε1-δ1`.
    pub fn describe(&self, w: &Weight) -> String {
        let names = self.coord_names();
        let mut out = String::new();
        for (x, name) in w.0.iter().zip(&names) {
            if x.is_zero() {
                continue;
            }
            let neg = x < &Scalar::zero();
            let mag = if neg { -x.clone() } else { x.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if !mag.is_one() {
                out.push_str(&format_scalar(&mag));
            }
            out.push_str(name);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl_full_canonical_sums_to_zero() {
        let k = AlgebraKind::Sl { m: 2, n: 1 };
        let w = k.canonical_full(&Weight::from_ints(&[1, 0, 0]));
        assert!(w.0.iter().sum::<Scalar>().is_zero());
        // Adding the supertrace direction leaves the canonical form unchanged.
        assert_eq!(k.canonical_full(&Weight::from_ints(&[2, 1, -1])), w);
    }

    #[test]
    fn full_from_ss_round_trip() {
        let k = AlgebraKind::Sl { m: 2, n: 1 };
        let ss = Weight::from_ints(&[3, 0, 0]);
        let z = int(5);
        let full = k.full_from_ss(&ss, &z);
        assert_eq!(k.canonical_ss(&full), ss);
        assert_eq!(k.eval_diag(&full, &k.z_diag()), z);
        assert!(full.0.iter().sum::<Scalar>().is_zero());
    }

    #[test]
    fn describes_roots() {
        let k = AlgebraKind::Sl { m: 2, n: 1 };
        assert_eq!(k.describe(&Weight::from_ints(&[1, 0, -1])), "ε1-δ1");
        let c = AlgebraKind::C { m: 3 };
        assert_eq!(c.describe(&Weight::from_ints(&[0, 2, 0])), "2δ1");
    }
}
