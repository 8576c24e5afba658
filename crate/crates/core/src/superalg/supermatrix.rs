use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_scalar, Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Koszul sign `(-1)^{|self||other|}`.
    pub fn sign(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// Homogeneity of a supermatrix read off its support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityClass {
    Zero,
    Even,
    Odd,
    Mixed,
}

/// A `(p|q)`-graded square matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMatrix {
    p: usize,
    q: usize,
    entries: Vec<Scalar>,
}

impl SuperMatrix {
    pub fn zero(p: usize, q: usize) -> Self {
        let n = p + q;
        Self { p, q, entries: vec![Scalar::zero(); n * n] }
    }

    /// Matrix unit `E_{ab}` (0-based).
    pub fn unit(p: usize, q: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zero(p, q);
        m.set(a, b, Scalar::one());
        m
    }

    pub fn diag(p: usize, q: usize, values: &[Scalar]) -> Self {
        let mut m = Self::zero(p, q);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_flat(p: usize, q: usize, v: &SparseVec) -> Self {
        let n = p + q;
        Self { p, q, entries: v.to_dense(n * n) }
    }

    pub fn flat(&self) -> SparseVec {
        SparseVec::from_dense(&self.entries)
    }

    pub fn blocks(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn size(&self) -> usize {
        self.p + self.q
    }

    pub fn get(&self, a: usize, b: usize) -> &Scalar {
        &self.entries[a * self.size() + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: Scalar) {
        let n = self.size();
        self.entries[a * n + b] = v;
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.size()).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn index_parity(&self, i: usize) -> Parity {
        if i < self.p {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn parity_class(&self) -> ParityClass {
        let (mut even, mut odd) = (false, false);
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                if !self.get(a, b).is_zero() {
                    if self.index_parity(a) == self.index_parity(b) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (false, false) => ParityClass::Zero,
            (true, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Mixed,
        }
    }

    /// Parity of a homogeneous matrix; the zero matrix counts as even.
    pub fn parity(&self) -> Result<Parity> {
        match self.parity_class() {
            ParityClass::Zero | ParityClass::Even => Ok(Parity::Even),
            ParityClass::Odd => Ok(Parity::Odd),
            ParityClass::Mixed => Err(Error::MixedParity),
        }
    }

    fn check_shape(&self, other: &SuperMatrix) -> Result<()> {
        if self.blocks() != other.blocks() {
            return Err(Error::DimensionMismatch { expected: self.size(), found: other.size() });
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.blocks(), other.blocks());
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        SuperMatrix { p: self.p, q: self.q, entries }
    }

    pub fn sub(&self, other: &SuperMatrix) -> SuperMatrix {
        self.add(&other.scaled(&-Scalar::one()))
    }

    pub fn scaled(&self, c: &Scalar) -> SuperMatrix {
        SuperMatrix { p: self.p, q: self.q, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.blocks(), other.blocks());
        let n = self.size();
        let mut out = SuperMatrix::zero(self.p, self.q);
        for a in 0..n {
            for k in 0..n {
                let x = self.get(a, k);
                if x.is_zero() {
                    continue;
                }
                for b in 0..n {
                    let y = other.get(k, b);
                    if !y.is_zero() {
                        out.entries[a * n + b] += x * y;
                    }
                }
            }
        }
        out
    }

    /// `str X = tr A − tr D`
    pub fn supertrace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.size() {
            if i < self.p {
                acc += self.get(i, i);
            } else {
                acc -= self.get(i, i);
            }
        }
        acc
    }

    /// `(A B; C D)^{st} = (Aᵗ Cᵗ; −Bᵗ Dᵗ)`
    pub fn supertranspose(&self) -> SuperMatrix {
        let n = self.size();
        let mut out = SuperMatrix::zero(self.p, self.q);
        for a in 0..n {
            for b in 0..n {
                let v = self.get(a, b);
                if v.is_zero() {
                    continue;
                }
                // entry (a,b) lands at (b,a); the B block (even row, odd col) flips sign
                let flip = a < self.p && b >= self.p;
                out.set(b, a, if flip { -v.clone() } else { v.clone() });
            }
        }
        out
    }
}

/// `[x, y] = xy − (−1)^{|x||y|} yx` for homogeneous operands.
pub fn superbracket(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix> {
    x.check_shape(y)?;
    let sign = x.parity()?.sign(y.parity()?);
    let xy = x.mul(y);
    let yx = y.mul(x);
    Ok(if sign == 1 { xy.sub(&yx) } else { xy.add(&yx) })
}

/// `(x | y) = str(xy)`
pub fn invariant_form(x: &SuperMatrix, y: &SuperMatrix) -> Result<Scalar> {
    x.check_shape(y)?;
    Ok(x.mul(y).supertrace())
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| format_scalar(self.get(a, b))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
