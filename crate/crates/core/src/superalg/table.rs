use num_traits::Zero;

use super::frame::AlgebraKind;
use super::supermatrix::Parity;
use crate::error::{Error, Result};
use crate::exactnum::{int, Scalar, SparseVec};
use crate::repcore::Weight;

/// Which Cartan subalgebra weights of a table are measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightFrame {
    /// The full Cartan subalgebra (semisimple part plus `z`).
    Full,
    /// The Cartan subalgebra of the semisimple part of the even subalgebra.
    Semisimple,
}

/// Structure constants of a finite-dimensional Lie superalgebra in a basis of
/// weight vectors, together with the roles each basis element plays.
///
/// This is the acting algebra of every module in the crate: the matrix
/// superalgebra itself, its semisimple even part, and the truncated loop
/// algebras `g ⊗ L/I`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    pub label: String,
    pub kind: AlgebraKind,
    pub frame: WeightFrame,
    pub names: Vec<String>,
    pub parity: Vec<Parity>,
    /// ad-weight of each basis element (zero for Cartan elements).
    pub weights: Vec<Weight>,
    brackets: Vec<Vec<SparseVec>>,
    /// Indices of the Cartan basis (degree 0 in loop tables).
    pub cartan: Vec<usize>,
    /// gl-diagonal of each Cartan basis element, parallel to `cartan`.
    pub cartan_diag: Vec<Vec<Scalar>>,
    /// Basis elements spanning the positive nilradical (all loop degrees).
    pub raising: Vec<usize>,
    pub lowering: Vec<usize>,
    /// ℤ-grading degree: −1, 0 or +1.
    pub grade: Vec<i8>,
    /// Loop degree `s` of `x ⊗ t^s`; zero for plain algebras.
    pub degree: Vec<usize>,
    /// Index of the underlying basis element of the base algebra.
    pub base: Vec<usize>,
    /// Number of loop degrees (θ); 1 for plain algebras.
    pub theta: usize,
}

impl StructureTable {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        label: String,
        kind: AlgebraKind,
        frame: WeightFrame,
        names: Vec<String>,
        parity: Vec<Parity>,
        weights: Vec<Weight>,
        brackets: Vec<Vec<SparseVec>>,
        cartan: Vec<usize>,
        cartan_diag: Vec<Vec<Scalar>>,
        grade: Vec<i8>,
        degree: Vec<usize>,
        base: Vec<usize>,
        theta: usize,
    ) -> Self {
        let height = kind.height_functional();
        let mut raising = Vec::new();
        let mut lowering = Vec::new();
        for (i, w) in weights.iter().enumerate() {
            let h = w.dot(&height);
            if h > Scalar::zero() {
                raising.push(i);
            } else if h < Scalar::zero() {
                lowering.push(i);
            }
        }
        Self {
            label,
            kind,
            frame,
            names,
            parity,
            weights,
            brackets,
            cartan,
            cartan_diag,
            raising,
            lowering,
            grade,
            degree,
            base,
            theta,
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// Bracket of two homogeneous elements given in basis coordinates.
    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.brackets[i][j]);
            }
        }
        out
    }

    /// Value of a weight on the `k`-th Cartan basis element.
    pub fn weight_value(&self, w: &Weight, k: usize) -> Scalar {
        self.kind.eval_diag(w, &self.cartan_diag[k])
    }

    pub fn canonical(&self, w: &Weight) -> Weight {
        match self.frame {
            WeightFrame::Full => self.kind.canonical_full(w),
            WeightFrame::Semisimple => self.kind.canonical_ss(w),
        }
    }

    pub fn weight_len(&self) -> usize {
        self.kind.coord_len()
    }

    /// Even root vectors: these must act locally nilpotently on integrable modules.
    pub fn even_root_vectors(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.parity[i] == Parity::Even && !self.weights[i].is_zero())
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// First basis triple violating the super-Jacobi identity
    /// `(−1)^{|x||z|}[x,[y,z]] + (−1)^{|y||x|}[y,[z,x]] + (−1)^{|z||y|}[z,[x,y]] = 0`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.jacobi_residual(i, j, k).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let (px, py, pz) = (self.parity[i], self.parity[j], self.parity[k]);
        let term = |a: usize, b: usize, c: usize, sign: i32| {
            self.bracket_vec(&SparseVec::unit(a), &self.brackets[b][c]).scaled(&int(sign as i64))
        };
        let mut acc = term(i, j, k, px.sign(pz));
        acc = acc.add(&term(j, k, i, py.sign(px)));
        acc.add(&term(k, i, j, pz.sign(py)))
    }

    /// Checks super-antisymmetry `[x,y] = −(−1)^{|x||y|}[y,x]` on all basis pairs.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let sign = -self.parity[i].sign(self.parity[j]);
                if self.brackets[i][j] != self.brackets[j][i].scaled(&int(sign as i64)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Restriction to a bracket-closed set of basis elements.
    pub(crate) fn subalgebra(&self, indices: &[usize], label: String, frame: WeightFrame, cartan: &[usize]) -> Result<StructureTable> {
        let mut position = vec![None; self.dim()];
        for (new, &old) in indices.iter().enumerate() {
            position[old] = Some(new);
        }
        let mut brackets = Vec::with_capacity(indices.len());
        for &i in indices {
            let mut row = Vec::with_capacity(indices.len());
            for &j in indices {
                let b = &self.brackets[i][j];
                if b.iter().any(|(k, _)| position[k].is_none()) {
                    return Err(Error::InvalidAlgebra(format!(
                        "[{}, {}] leaves the subalgebra",
                        self.names[i], self.names[j]
                    )));
                }
                row.push(b.remap(|k| position[k]));
            }
            brackets.push(row);
        }
        let cartan_new: Vec<usize> = cartan.iter().map(|&c| position[c].expect("cartan in subalgebra")).collect();
        let cartan_diag: Vec<Vec<Scalar>> = cartan
            .iter()
            .map(|&c| {
                let k = self.cartan.iter().position(|&x| x == c).expect("cartan element");
                self.cartan_diag[k].clone()
            })
            .collect();
        let weights = indices
            .iter()
            .map(|&i| match frame {
                WeightFrame::Full => self.kind.canonical_full(&self.weights[i]),
                WeightFrame::Semisimple => self.kind.canonical_ss(&self.weights[i]),
            })
            .collect();
        Ok(StructureTable::new(
            label,
            self.kind,
            frame,
            indices.iter().map(|&i| self.names[i].clone()).collect(),
            indices.iter().map(|&i| self.parity[i]).collect(),
            weights,
            brackets,
            cartan_new,
            cartan_diag,
            indices.iter().map(|&i| self.grade[i]).collect(),
            indices.iter().map(|&i| self.degree[i]).collect(),
            indices.iter().map(|&i| self.base[i]).collect(),
            self.theta,
        ))
    }

    /// Returns a copy with one structure constant overwritten (fault injection for
    /// falsifiability tests of the checkers).
    pub fn with_corrupted_bracket(&self, i: usize, j: usize, value: SparseVec) -> StructureTable {
        let mut out = self.clone();
        out.brackets[i][j] = value;
        out
    }
}
