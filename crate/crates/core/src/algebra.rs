//! Finite-dimensional basic split algebras given by structure constants.
//!
//! An [`Algebra`] carries a complete set of primitive orthogonal idempotents
//! `e_1, …, e_n` (as basis indices, always listed first) and a basis of its
//! radical. Elements are coordinate row vectors in the basis; products of
//! basis elements are stored sparsely.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::field::Field;
use crate::mat::{Mat, RowSpace};

/// Sparse product of two basis elements: sorted `(basis index, coefficient)`.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("relation at line {line} involves a path of length < 2")]
    NonAdmissible { line: usize },
    #[error("length-{bound} paths are not absorbed by the relation ideal (e.g. `{witness}`)")]
    NotNilpotent { bound: usize, witness: String },
    #[error("relation at line {line} mixes sources or targets")]
    InconsistentRelation { line: usize },
    #[error("the idempotent is zero")]
    ZeroIdem,
    #[error("the ideal generated by the idempotent is the whole algebra")]
    IdealIsWholeAlgebra,
    #[error("fAe is nonzero, witnessed by basis product {witness}")]
    NonzeroFAE { witness: String },
    #[error("structure validation failed: {0}")]
    Invalid(String),
}

/// An idempotent given as a subset of primitive-idempotent labels.
///
/// `support` holds 0-based vertex indices; the element is `Σ_{i∈support} e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idem {
    support: BTreeSet<usize>,
}

impl Idem {
    pub fn new(support: impl IntoIterator<Item = usize>) -> Self {
        Idem {
            support: support.into_iter().collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.iter().copied()
    }

    pub fn support_set(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn contains(&self, v: usize) -> bool {
        self.support.contains(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    /// The complement `1 − e` within an algebra with `n` vertices.
    pub fn complement(&self, n: usize) -> Idem {
        Idem::new((0..n).filter(|v| !self.support.contains(v)))
    }

    pub fn union(&self, other: &Idem) -> Idem {
        Idem::new(self.support.union(&other.support).copied())
    }
}

/// Finite-dimensional basic split algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    basis_labels: Vec<String>,
    /// `mult[i][j]` = coordinates of `b_i · b_j`, sparse and index-sorted.
    mult: Vec<Vec<SparseVec<F>>>,
    /// Basis indices of the primitive orthogonal idempotents, in vertex order.
    idems: Vec<usize>,
    radical_basis: Mat<F>,
    /// Basis indices that generate the algebra (idempotents always included).
    gens: Vec<usize>,
}

impl<F: Field> std::fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Algebra(dim={}, vertices={}, radical dim={})",
            self.dim,
            self.idems.len(),
            self.radical_basis.rows()
        )
    }
}

impl<F: Field> Algebra<F> {
    /// Assemble and validate. `mult` entries must be index-sorted.
    pub fn new(
        field: F,
        basis_labels: Vec<String>,
        mult: Vec<Vec<SparseVec<F>>>,
        idems: Vec<usize>,
        radical_basis: Mat<F>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let dim = basis_labels.len();
        let mut a = Algebra {
            field,
            dim,
            basis_labels,
            mult,
            idems,
            radical_basis,
            gens: Vec::new(),
        };
        a.validate()?;
        a.gens = a.compute_generators();
        Ok(Arc::new(a))
    }

    /// Test-only escape hatch: damage one structure constant, skipping
    /// revalidation, to exercise fault-injection paths.
    #[doc(hidden)]
    pub fn corrupt_structure_constant(self: &Arc<Self>, i: usize, j: usize) -> Arc<Self> {
        let mut a = (**self).clone();
        let f = a.field.clone();
        let one = f.one();
        match a.mult[i][j].first_mut() {
            Some((_, c)) => *c = f.add(c, &one),
            None => a.mult[i][j].push((0, one)),
        }
        Arc::new(a)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.idems.len()
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn idem_basis_index(&self, vertex: usize) -> usize {
        self.idems[vertex]
    }

    pub fn radical_basis(&self) -> &Mat<F> {
        &self.radical_basis
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_basis.rows()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn mult_table(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.mult[i][j]
    }

    /// Coordinate vector of a single basis element.
    pub fn basis_elem(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Coordinate vector of the unit `1 = Σ e_i`.
    pub fn one(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        for &i in &self.idems {
            v[i] = self.field.one();
        }
        v
    }

    /// Coordinate vector of the idempotent `Σ_{i∈support} e_i`.
    pub fn idem_elem(&self, e: &Idem) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        for i in e.support() {
            v[self.idems[i]] = self.field.one();
        }
        v
    }

    /// Product of two coordinate vectors.
    pub fn elem_mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let coeff = f.mul(ai, bj);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&coeff, c));
                }
            }
        }
        out
    }

    fn sparse_mul(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ai) in a {
            for (j, bj) in b {
                let coeff = f.mul(ai, bj);
                for (k, c) in &self.mult[*i][*j] {
                    out[*k] = f.add(&out[*k], &f.mul(&coeff, c));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `elem` (column convention:
    /// column `j` is the image of basis element `j`).
    pub fn left_mul_matrix(&self, elem: &[F::Elem]) -> Mat<F> {
        Mat::from_fn(self.field.clone(), self.dim, self.dim, |r, c| {
            // (elem · b_c)_r
            let mut acc = self.field.zero();
            for (i, ai) in elem.iter().enumerate() {
                if self.field.is_zero(ai) {
                    continue;
                }
                for (k, coeff) in &self.mult[i][c] {
                    if *k == r {
                        acc = self.field.add(&acc, &self.field.mul(ai, coeff));
                    }
                }
            }
            acc
        })
    }

    /// Matrix of right multiplication by `elem`, same column convention.
    pub fn right_mul_matrix(&self, elem: &[F::Elem]) -> Mat<F> {
        Mat::from_fn(self.field.clone(), self.dim, self.dim, |r, c| {
            // (b_c · elem)_r
            let mut acc = self.field.zero();
            for (j, aj) in elem.iter().enumerate() {
                if self.field.is_zero(aj) {
                    continue;
                }
                for (k, coeff) in &self.mult[c][j] {
                    if *k == r {
                        acc = self.field.add(&acc, &self.field.mul(aj, coeff));
                    }
                }
            }
            acc
        })
    }

    /// True iff the radical is zero.
    pub fn is_semisimple(&self) -> bool {
        self.radical_basis.rows() == 0
    }

    /// The opposite algebra: same basis, products reversed.
    pub fn opposite(&self) -> Arc<Algebra<F>> {
        let mut mult = vec![vec![Vec::new(); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                mult[i][j] = self.mult[j][i].clone();
            }
        }
        Algebra::new(
            self.field.clone(),
            self.basis_labels.clone(),
            mult,
            self.idems.clone(),
            self.radical_basis.clone(),
        )
        .expect("opposite of a valid algebra is valid")
    }

    /// Row space of the two-sided ideal `A e A`.
    pub fn two_sided_ideal(&self, e: &Idem) -> RowSpace<F> {
        let mut rows = Mat::zeros(self.field.clone(), 0, self.dim);
        for v in e.support() {
            let ei = self.idems[v];
            for b in 0..self.dim {
                // b · e_v
                let be = self.sparse_mul(
                    &vec![(b, self.field.one())],
                    &vec![(ei, self.field.one())],
                );
                if be.iter().all(|x| self.field.is_zero(x)) {
                    continue;
                }
                for b2 in 0..self.dim {
                    let full = self.elem_mul(&be, &self.basis_elem(b2));
                    if !full.iter().all(|x| self.field.is_zero(x)) {
                        rows.push_row(&full);
                    }
                }
            }
        }
        RowSpace::from_rows(&rows)
    }

    /// Row space of the left ideal `A e`.
    pub fn left_ideal(&self, e: &Idem) -> RowSpace<F> {
        let ev = self.idem_elem(e);
        let m = self.right_mul_matrix(&ev); // b ↦ b·e per column
        RowSpace::from_rows(&m.transpose())
    }

    /// Row space of the right ideal `e A`.
    pub fn right_ideal(&self, e: &Idem) -> RowSpace<F> {
        let ev = self.idem_elem(e);
        let m = self.left_mul_matrix(&ev);
        RowSpace::from_rows(&m.transpose())
    }

    /// Greedy generating set: idempotents plus the fewest basis elements
    /// whose generated subalgebra is everything. Products with a generating
    /// set determine all others by linearity and associativity, which keeps
    /// intertwiner systems small.
    fn compute_generators(&self) -> Vec<usize> {
        let f = &self.field;
        let mut gens: Vec<usize> = self.idems.clone();
        let mut span = {
            let mut m = Mat::zeros(f.clone(), 0, self.dim);
            for &i in &self.idems {
                m.push_row(&self.basis_elem(i));
            }
            RowSpace::from_rows(&m)
        };
        loop {
            // Close under products.
            loop {
                let mut grew = false;
                let b = span.basis().clone();
                for r in 0..b.rows() {
                    for s in 0..b.rows() {
                        let p = self.elem_mul(b.row(r), b.row(s));
                        if !span.contains(&p) {
                            span = span.join(&RowSpace::from_rows(&Mat::from_rows(
                                f.clone(),
                                self.dim,
                                vec![p],
                            )));
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            if span.dim() == self.dim {
                return gens;
            }
            let next = (0..self.dim)
                .find(|&i| !span.contains(&self.basis_elem(i)))
                .expect("span is proper, so some basis element is missing");
            gens.push(next);
            span = span.join(&RowSpace::from_rows(&Mat::from_rows(
                f.clone(),
                self.dim,
                vec![self.basis_elem(next)],
            )));
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let f = &self.field;
        let n = self.idems.len();
        if self.dim == 0 || n == 0 {
            return Err(AlgebraError::Invalid("empty algebra".into()));
        }
        if self.mult.len() != self.dim || self.mult.iter().any(|r| r.len() != self.dim) {
            return Err(AlgebraError::Invalid("multiplication table shape".into()));
        }
        // Orthogonal idempotents.
        for (vi, &i) in self.idems.iter().enumerate() {
            for (vj, &j) in self.idems.iter().enumerate() {
                let p = self.sparse_mul(&vec![(i, f.one())], &vec![(j, f.one())]);
                let mut expected = vec![f.zero(); self.dim];
                if vi == vj {
                    expected[i] = f.one();
                }
                if p != expected {
                    return Err(AlgebraError::Invalid(format!(
                        "e_{} · e_{} is not {}",
                        vi + 1,
                        vj + 1,
                        if vi == vj { "itself" } else { "zero" }
                    )));
                }
            }
        }
        // Unit.
        let one = self.one();
        for b in 0..self.dim {
            let bv = self.basis_elem(b);
            if self.elem_mul(&one, &bv) != bv || self.elem_mul(&bv, &one) != bv {
                return Err(AlgebraError::Invalid(format!(
                    "Σ e_i is not a unit on basis element {b}"
                )));
            }
        }
        // Associativity on all basis triples.
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mult[i][j].clone();
                for k in 0..self.dim {
                    let left = self.sparse_mul(&ij, &vec![(k, f.one())]);
                    let jk = &self.mult[j][k];
                    let right = self.sparse_mul(&vec![(i, f.one())], jk);
                    if left != right {
                        return Err(AlgebraError::Invalid(format!(
                            "associativity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        // Radical: two-sided ideal, nilpotent, with semisimple quotient of
        // dimension n.
        if self.radical_basis.cols() != self.dim {
            return Err(AlgebraError::Invalid("radical basis width".into()));
        }
        let rad = RowSpace::from_rows(&self.radical_basis);
        if rad.dim() + n != self.dim {
            return Err(AlgebraError::Invalid(format!(
                "dim A − dim rad = {} but there are {} idempotents",
                self.dim - rad.dim(),
                n
            )));
        }
        for r in 0..rad.basis().rows() {
            let rv = rad.basis().row_vec(r);
            for b in 0..self.dim {
                let bv = self.basis_elem(b);
                if !rad.contains(&self.elem_mul(&rv, &bv))
                    || !rad.contains(&self.elem_mul(&bv, &rv))
                {
                    return Err(AlgebraError::Invalid(
                        "radical basis does not span a two-sided ideal".into(),
                    ));
                }
            }
        }
        // Nilpotency: powers of the radical span must reach zero.
        let mut power = rad.clone();
        let mut steps = 0usize;
        while power.dim() > 0 {
            steps += 1;
            if steps > self.dim + 1 {
                return Err(AlgebraError::Invalid("radical is not nilpotent".into()));
            }
            let mut rows = Mat::zeros(f.clone(), 0, self.dim);
            for r in 0..power.basis().rows() {
                for s in 0..rad.basis().rows() {
                    rows.push_row(&self.elem_mul(power.basis().row(r), rad.basis().row(s)));
                }
            }
            let next = RowSpace::from_rows(&rows);
            if next.dim() == power.dim() {
                return Err(AlgebraError::Invalid("radical is not nilpotent".into()));
            }
            power = next;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    /// k × k over F_2, by hand.
    fn two_points() -> Arc<Algebra<PrimeField>> {
        let f2 = PrimeField::new(2);
        let mut mult = vec![vec![Vec::new(); 2]; 2];
        mult[0][0] = vec![(0, 1u64)];
        mult[1][1] = vec![(1, 1u64)];
        Algebra::new(
            f2,
            vec!["e1".into(), "e2".into()],
            mult,
            vec![0, 1],
            Mat::zeros(f2, 0, 2),
        )
        .unwrap()
    }

    #[test]
    fn semisimple_two_points() {
        let a = two_points();
        assert!(a.is_semisimple());
        assert_eq!(a.num_vertices(), 2);
        assert_eq!(a.generators(), &[0, 1]);
    }

    #[test]
    fn opposite_is_involutive() {
        let a = two_points();
        let opp2 = a.opposite().opposite();
        assert_eq!(a.mult, opp2.mult);
    }

    #[test]
    fn rejects_broken_associativity() {
        let f2 = PrimeField::new(2);
        let mut mult = vec![vec![Vec::new(); 2]; 2];
        mult[0][0] = vec![(0, 1u64)];
        mult[1][1] = vec![(1, 1u64)];
        mult[0][1] = vec![(0, 1u64)]; // e1·e2 = e1 breaks orthogonality
        let r = Algebra::new(
            f2,
            vec!["e1".into(), "e2".into()],
            mult,
            vec![0, 1],
            Mat::zeros(f2, 0, 2),
        );
        assert!(r.is_err());
    }

    #[test]
    fn ideal_of_full_support_is_everything() {
        let a = two_points();
        let e = Idem::new([0, 1]);
        assert_eq!(a.two_sided_ideal(&e).dim(), 2);
    }
}
