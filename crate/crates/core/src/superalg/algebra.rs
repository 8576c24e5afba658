use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::frame::AlgebraKind;
use super::supermatrix::{superbracket, Parity, SuperMatrix};
use super::table::{StructureTable, WeightFrame};
use crate::error::{Error, Result};
use crate::exactnum::{int, kernel, BasisSolver, Matrix, Scalar, SparseVec, Subspace};
use crate::repcore::Weight;

/// A matrix realization of sl(m,n) or C(m) together with its structure table.
///
/// Basis order: semisimple Cartan elements, `z`, positive root vectors by
/// increasing height, then the matching negative root vectors.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    pub kind: AlgebraKind,
    basis: Vec<SuperMatrix>,
    table: Arc<StructureTable>,
    ss_cartan: Vec<usize>,
    z: usize,
    positive: Vec<usize>,
    negative: Vec<usize>,
    even: Arc<StructureTable>,
    ss: Arc<StructureTable>,
}

pub fn build_sl(m: usize, n: usize) -> Result<SuperAlgebra> {
    if m == n {
        return Err(Error::EqualRankOutOfScope(m));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidAlgebra(format!("sl({m},{n}) needs m, n >= 1")));
    }
    SuperAlgebra::build(AlgebraKind::Sl { m, n })
}

pub fn build_c(m: usize) -> Result<SuperAlgebra> {
    if m < 3 {
        return Err(Error::InvalidAlgebra(format!("C({m}) needs m >= 3")));
    }
    SuperAlgebra::build(AlgebraKind::C { m })
}

pub fn build(kind: AlgebraKind) -> Result<SuperAlgebra> {
    match kind {
        AlgebraKind::Sl { m, n } => build_sl(m, n),
        AlgebraKind::C { m } => build_c(m),
    }
}

/// The form `B = diag(G, J)` preserved by C(m).
pub fn c_form(m: usize) -> SuperMatrix {
    let q = 2 * m - 2;
    let mut b = SuperMatrix::zero(2, q);
    b.set(0, 1, Scalar::one());
    b.set(1, 0, Scalar::one());
    for j in 0..m - 1 {
        b.set(2 + j, 2 + (m - 1) + j, Scalar::one());
        b.set(2 + (m - 1) + j, 2 + j, -Scalar::one());
    }
    b
}

/// The defining subspace of the algebra inside gl(p|q), in row-major flat
/// coordinates: supertrace zero for sl(m,n), `X^{st}B + BX = 0` for C(m).
pub fn defining_subspace(kind: AlgebraKind) -> Subspace {
    let (p, q) = kind.blocks();
    let size = p + q;
    let flat = size * size;
    match kind {
        AlgebraKind::Sl { .. } => {
            let row: Vec<Scalar> = (0..flat)
                .map(|k| {
                    let (a, b) = (k / size, k % size);
                    match (a == b, a < p) {
                        (false, _) => Scalar::zero(),
                        (true, true) => Scalar::one(),
                        (true, false) => -Scalar::one(),
                    }
                })
                .collect();
            kernel(&Matrix::from_rows(&[row]))
        }
        AlgebraKind::C { m } => {
            let b = c_form(m);
            let columns = (0..flat)
                .map(|k| {
                    let x = SuperMatrix::unit(p, q, k / size, k % size);
                    x.supertranspose().mul(&b).add(&b.mul(&x)).flat()
                })
                .collect();
            kernel(&Matrix::from_columns(flat, columns))
        }
    }
}

fn cartan_diagonals(kind: AlgebraKind) -> Vec<Vec<Scalar>> {
    let (p, q) = kind.blocks();
    let size = p + q;
    let unit_diff = |a: usize, b: usize| {
        let mut d = vec![Scalar::zero(); size];
        d[a] = int(1);
        d[b] = int(-1);
        d
    };
    let mut out = Vec::new();
    match kind {
        AlgebraKind::Sl { m, n } => {
            for i in 0..m.saturating_sub(1) {
                out.push(unit_diff(i, i + 1));
            }
            for j in 0..n.saturating_sub(1) {
                out.push(unit_diff(m + j, m + j + 1));
            }
        }
        AlgebraKind::C { m } => {
            for j in 0..m - 1 {
                out.push(unit_diff(2 + j, 1 + m + j));
            }
        }
    }
    out
}

impl SuperAlgebra {
    fn build(kind: AlgebraKind) -> Result<SuperAlgebra> {
        let (p, q) = kind.blocks();
        let size = p + q;
        let space = defining_subspace(kind);

        let mut diags = cartan_diagonals(kind);
        let ss_count = diags.len();
        diags.push(kind.z_diag());
        let mut basis: Vec<SuperMatrix> = diags.iter().map(|d| SuperMatrix::diag(p, q, d)).collect();
        for h in &basis {
            if !space.contains(&h.flat())? {
                return Err(Error::InvalidAlgebra(format!("Cartan element outside {}", kind.label())));
            }
        }

        // Off-diagonal matrix units grouped by their restricted weight.
        let mut groups: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for a in 0..size {
            for b in 0..size {
                if a == b {
                    continue;
                }
                let mut gl = vec![Scalar::zero(); size];
                gl[a] += int(1);
                gl[b] -= int(1);
                let w = kind.restrict_gl(&gl);
                if !w.is_zero() {
                    groups.entry(w).or_default().push(a * size + b);
                }
            }
        }
        let height = kind.height_functional();
        let mut positive_roots: Vec<(Scalar, Weight, SuperMatrix)> = Vec::new();
        let mut negative_roots: BTreeMap<Weight, SuperMatrix> = BTreeMap::new();
        for (w, units) in &groups {
            let span = Subspace::span(size * size, &units.iter().map(|&k| SparseVec::unit(k)).collect::<Vec<_>>());
            let root_space = span.intersect(&space);
            match root_space.dim() {
                0 => continue,
                1 => {}
                d => {
                    return Err(Error::InvalidAlgebra(format!(
                        "root space {} has dimension {d}",
                        kind.describe(w)
                    )))
                }
            }
            let x = SuperMatrix::from_flat(p, q, &root_space.basis()[0]);
            let h = w.dot(&height);
            if h > Scalar::zero() {
                positive_roots.push((h, w.clone(), x));
            } else {
                negative_roots.insert(w.clone(), x);
            }
        }
        positive_roots.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));

        let mut names: Vec<String> = (1..=ss_count).map(|i| format!("h{i}")).collect();
        names.push("z".to_string());
        let mut weights = vec![Weight::zero(kind.coord_len()); ss_count + 1];
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (_, w, x) in &positive_roots {
            positive.push(basis.len());
            names.push(format!("e[{}]", kind.describe(w)));
            weights.push(w.clone());
            basis.push(x.clone());
        }
        for (_, w, _) in &positive_roots {
            let neg = -w;
            let x = negative_roots
                .remove(&neg)
                .ok_or_else(|| Error::InvalidAlgebra(format!("missing negative root {}", kind.describe(&neg))))?;
            negative.push(basis.len());
            names.push(format!("f[{}]", kind.describe(w)));
            weights.push(neg);
            basis.push(x);
        }
        if !negative_roots.is_empty() {
            return Err(Error::InvalidAlgebra("unpaired negative roots".into()));
        }
        if basis.len() != space.dim() {
            return Err(Error::InvalidAlgebra(format!(
                "weight basis has {} elements, algebra has dimension {}",
                basis.len(),
                space.dim()
            )));
        }

        let parity: Vec<Parity> = basis.iter().map(|x| x.parity()).collect::<Result<_>>()?;
        let flats: Vec<SparseVec> = basis.iter().map(|x| x.flat()).collect();
        let solver = BasisSolver::new(&flats).ok_or_else(|| Error::InvalidAlgebra("dependent basis".into()))?;
        let dim = basis.len();
        let mut brackets = Vec::with_capacity(dim);
        for x in &basis {
            let mut row = Vec::with_capacity(dim);
            for y in &basis {
                let c = superbracket(x, y)?;
                let coords = solver
                    .solve(&c.flat())
                    .ok_or_else(|| Error::InvalidAlgebra("bracket leaves the algebra".into()))?;
                row.push(coords);
            }
            brackets.push(row);
        }
        let grade: Vec<i8> = (0..dim)
            .map(|i| match parity[i] {
                Parity::Even => 0,
                Parity::Odd if positive.contains(&i) => 1,
                Parity::Odd => -1,
            })
            .collect();
        let table = StructureTable::new(
            kind.label(),
            kind,
            WeightFrame::Full,
            names,
            parity,
            weights,
            brackets,
            (0..=ss_count).collect(),
            diags,
            grade,
            vec![0; dim],
            (0..dim).collect(),
            1,
        );
        let table = Arc::new(table);
        let even_idx: Vec<usize> = (0..dim).filter(|&i| table.parity[i] == Parity::Even).collect();
        let even = table.subalgebra(&even_idx, format!("{}_0", kind.label()), WeightFrame::Full, &table.cartan)?;
        let ss_idx: Vec<usize> = even_idx.iter().copied().filter(|&i| i != ss_count).collect();
        let ss_cartan: Vec<usize> = (0..ss_count).collect();
        let ss = table.subalgebra(&ss_idx, format!("{}_ss", kind.label()), WeightFrame::Semisimple, &ss_cartan)?;
        Ok(SuperAlgebra {
            kind,
            basis,
            table,
            ss_cartan,
            z: ss_count,
            positive,
            negative,
            even: Arc::new(even),
            ss: Arc::new(ss),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SuperMatrix] {
        &self.basis
    }

    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn ss_cartan(&self) -> &[usize] {
        &self.ss_cartan
    }

    pub fn z_index(&self) -> usize {
        self.z
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn negative(&self) -> &[usize] {
        &self.negative
    }

    /// Matrix of a coordinate vector in the algebra basis.
    pub fn element(&self, coords: &SparseVec) -> SuperMatrix {
        let (p, q) = self.kind.blocks();
        let mut out = SuperMatrix::zero(p, q);
        for (i, c) in coords.iter() {
            out = out.add(&self.basis[i].scaled(c));
        }
        out
    }

    /// Coordinates of a matrix in the algebra basis, if it lies in the algebra.
    pub fn coordinates(&self, x: &SuperMatrix) -> Option<SparseVec> {
        let flats: Vec<SparseVec> = self.basis.iter().map(|b| b.flat()).collect();
        BasisSolver::new(&flats)?.solve(&x.flat())
    }

    /// Indices of the even basis elements.
    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.table.parity[i] == Parity::Even).collect()
    }

    pub fn grade_indices(&self, g: i8) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.table.grade[i] == g).collect()
    }

    /// The even subalgebra 𝔤₀ = 𝔤_ss ⊕ ℂz; its `base` indices point back into this algebra.
    pub fn even_table(&self) -> &Arc<StructureTable> {
        &self.even
    }

    /// The semisimple part 𝔤_ss of the even subalgebra.
    pub fn ss_table(&self) -> &Arc<StructureTable> {
        &self.ss
    }

    /// The canonical central element of the even part.
    pub fn z_center(&self) -> SuperMatrix {
        self.basis[self.z].clone()
    }

    /// Eigenvalue of ad(z) on 𝔤₊₁.
    pub fn z_eigenvalue_plus(&self) -> Scalar {
        let i = self.grade_indices(1)[0];
        self.table.weight_value(&self.table.weights[i], self.z)
    }

    /// Positive even roots with their root vector indices `(α, e_α, f_α)`.
    pub fn even_positive(&self) -> Vec<(Weight, usize, usize)> {
        self.positive
            .iter()
            .zip(&self.negative)
            .filter(|(&e, _)| self.table.parity[e] == Parity::Even)
            .map(|(&e, &f)| (self.table.weights[e].clone(), e, f))
            .collect()
    }

    /// Simple roots of the even positive system (the simple roots of 𝔤_ss).
    pub fn even_simple(&self) -> Vec<(Weight, usize, usize)> {
        let even = self.even_positive();
        let roots: Vec<Weight> = even.iter().map(|r| r.0.clone()).collect();
        even.into_iter()
            .filter(|(w, _, _)| {
                !roots.iter().any(|a| roots.iter().any(|b| &(a + b) == w))
            })
            .collect()
    }

    /// Coroot `h_α` of an even root, as coordinates on the Cartan basis,
    /// normalized so that `α(h_α) = 2`.
    pub fn coroot(&self, e: usize, f: usize) -> SparseVec {
        let h = self.table.bracket(e, f).clone();
        let alpha = &self.table.weights[e];
        let val = self.pair(alpha, &h);
        h.scaled(&(int(2) / val))
    }

    /// `λ(h)` for `h` given in Cartan-basis coordinates (indices into the table).
    pub fn pair(&self, w: &Weight, h: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, c) in h.iter() {
            let k = self.table.cartan.iter().position(|&x| x == i).expect("Cartan coordinate");
            acc += c * self.table.weight_value(w, k);
        }
        acc
    }

    /// Weight taking the given values on the Cartan basis, in the full frame.
    pub fn weight_from_values(&self, values: &[Scalar]) -> Option<Weight> {
        let len = self.kind.coord_len();
        let mut rows: Vec<Vec<Scalar>> = (0..self.table.cartan.len())
            .map(|k| {
                (0..len)
                    .map(|c| {
                        let mut e = Weight::zero(len);
                        e.0[c] = Scalar::one();
                        self.table.weight_value(&e, k)
                    })
                    .collect()
            })
            .collect();
        let mut rhs = values.to_vec();
        if let AlgebraKind::Sl { .. } = self.kind {
            rows.push(vec![Scalar::one(); len]);
            rhs.push(Scalar::zero());
        }
        let columns: Vec<SparseVec> =
            (0..len).map(|c| SparseVec::from_dense(&rows.iter().map(|r| r[c].clone()).collect::<Vec<_>>())).collect();
        let solver = BasisSolver::new(&columns)?;
        let sol = solver.solve(&SparseVec::from_dense(&rhs))?;
        Some(Weight(sol.to_dense(len)))
    }

    /// Whether `λ` (a 𝔤_ss weight, or the 𝔤_ss part of a full weight) is
    /// dominant integral for the even simple roots.
    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        for (alpha, e, f) in self.even_simple() {
            let v = self.pair(w, &self.coroot(e, f));
            if !crate::exactnum::scalar::is_nonneg_integer(&v) {
                return Err(Error::NotDominant {
                    weight: w.to_string(),
                    reason: format!("pairing with {}∨ is {}", self.kind.describe(&alpha), v),
                });
            }
        }
        Ok(())
    }
}
