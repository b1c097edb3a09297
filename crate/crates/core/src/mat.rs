//! Dense exact matrices and the row-space toolkit.
//!
//! Convention, fixed here for the whole crate: vectors are **rows**, and a
//! subspace is the row space of a matrix whose rows span it. `rref` is the
//! canonicalizer — two matrices span the same row space iff their reduced
//! row echelon forms agree. Desk-scale dimensions make dense storage fine.

use crate::field::Field;

/// Dense `rows × cols` matrix over `F`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> std::fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.format_elem(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Mat {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Mat::zeros(field.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r);
        }
        Mat {
            field,
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Build from integer literals, mostly for tests and fixtures.
    pub fn from_i64(field: F, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Mat::from_fn(field.clone(), rows, cols, |r, c| field.from_i64(data[r][c]))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F::Elem {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<F::Elem> {
        self.row(r).to_vec()
    }

    pub fn push_row(&mut self, row: &[F::Elem]) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.field.clone(), self.cols, self.rows, |r, c| {
            self.at(c, r).clone()
        })
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.add(self.at(r, c), other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.sub(self.at(r, c), other.at(r, c))
        })
    }

    pub fn scale(&self, s: &F::Elem) -> Mat<F> {
        Mat::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.mul(self.at(r, c), s)
        })
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.at(k, c));
                    let cur = f.add(out.at(r, c), &t);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// `v · self` for a row vector `v` of length `rows`.
    pub fn row_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows, "row_mul dimension mismatch");
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for c in 0..self.cols {
                out[c] = f.add(&out[c], &f.mul(a, self.at(k, c)));
            }
        }
        out
    }

    /// Vertical stack: rows of `self` then rows of `other`.
    pub fn vstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Horizontal stack: `[self | other]`.
    pub fn hstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !f.is_zero(m.at(r, col))) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let hi = src * m.cols + c;
                    let lo = pivot_row * m.cols + c;
                    m.entries.swap(hi, lo);
                }
            }
            let inv = f
                .inv(m.at(pivot_row, col))
                .expect("pivot is nonzero by construction");
            for c in col..m.cols {
                let v = f.mul(m.at(pivot_row, c), &inv);
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || f.is_zero(m.at(r, col)) {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.at(r, c), &f.mul(&factor, m.at(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the row space: the nonzero rows of the rref.
    pub fn row_basis(&self) -> Mat<F> {
        let (r, pivots) = self.rref();
        let mut out = Mat::zeros(self.field.clone(), 0, self.cols);
        for i in 0..pivots.len() {
            out.push_row(r.row(i));
        }
        out
    }

    /// Rows spanning `{v : self · vᵀ = 0}`; row count = cols − rank.
    pub fn kernel_basis(&self) -> Mat<F> {
        let f = self.field.clone();
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !is_pivot[*c]).collect();
        let mut out = Mat::zeros(f.clone(), 0, self.cols);
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.at(pi, fc));
            }
            out.push_row(&v);
        }
        out
    }

    /// Canonical basis of the column space, written in row convention
    /// (each basis vector of length `rows` appears as a row).
    pub fn image_basis(&self) -> Mat<F> {
        self.transpose().row_basis()
    }

    /// Any solution `x` (column, length `cols`) of `self · x = b`, or `None`
    /// when the system is inconsistent. `b` has length `rows`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch in solve");
        let f = self.field.clone();
        let mut aug = Mat::from_fn(f.clone(), self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (r, pivots) = aug.rref();
        aug = r;
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![f.zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(pi, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `x · self = b` for a row vector `b` of length `cols`.
    pub fn solve_left(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.transpose().solve(b)
    }

    /// Kronecker product; realizes ⊗ over the ground field.
    pub fn kron(&self, other: &Mat<F>) -> Mat<F> {
        let f = self.field.clone();
        Mat::from_fn(
            f.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let (r1, r2) = (r / other.rows, r % other.rows);
                let (c1, c2) = (c / other.cols, c % other.cols);
                f.mul(self.at(r1, c1), other.at(r2, c2))
            },
        )
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field.clone(), n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(Mat::from_fn(self.field.clone(), n, n, |i, j| {
            r.at(i, n + j).clone()
        }))
    }

    /// Apply `self` to each row of `rows`: returns `rows · self`.
    pub fn apply_rows(&self, rows: &Mat<F>) -> Mat<F> {
        rows.mul(self)
    }
}

/// A subspace of `k^ambient` held as a canonical (rref) row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace<F: Field> {
    basis: Mat<F>,
}

impl<F: Field> RowSpace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        RowSpace {
            basis: Mat::zeros(field, 0, ambient),
        }
    }

    pub fn from_rows(m: &Mat<F>) -> Self {
        RowSpace {
            basis: m.row_basis(),
        }
    }

    pub fn basis(&self) -> &Mat<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        if self.basis.rows() == 0 {
            return v.iter().all(|e| self.basis.field().is_zero(e));
        }
        self.basis.solve_left(v).is_some()
    }

    pub fn contains_space(&self, other: &RowSpace<F>) -> bool {
        (0..other.basis.rows()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &RowSpace<F>) -> RowSpace<F> {
        RowSpace::from_rows(&self.basis.vstack(&other.basis))
    }

    /// Coordinates of `v` in this basis, `None` when `v` is outside.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if self.basis.rows() == 0 {
            if v.iter().all(|e| self.basis.field().is_zero(e)) {
                return Some(Vec::new());
            }
            return None;
        }
        self.basis.solve_left(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn rref_identity_f2() {
        let f2 = PrimeField::new(2);
        let m = Mat::identity(f2, 2);
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one_over_q() {
        let m = Mat::from_i64(Rationals, &[&[1, 2], &[2, 4]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_i64(Rationals, &[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_ones_over_f2() {
        let f2 = PrimeField::new(2);
        let m = Mat::from_i64(f2, &[&[1, 1], &[1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_i64(f2, &[&[1, 1], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Mat::identity(Rationals, 3);
        assert_eq!(m.kernel_basis().rows(), 0);
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let m = Mat::zeros(Rationals, 2, 3);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_of_sum_constraint_f2() {
        let f2 = PrimeField::new(2);
        let m = Mat::from_i64(f2, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[1, 1]);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let m = Mat::identity(Rationals, 3);
        let b = vec![
            Rationals.from_i64(4),
            Rationals.from_i64(-1),
            Rationals.from_i64(7),
        ];
        assert_eq!(m.solve(&b).unwrap(), b);
    }

    #[test]
    fn solve_f2_residual() {
        let f2 = PrimeField::new(2);
        let m = Mat::from_i64(f2, &[&[1, 1]]);
        let x = m.solve(&[1]).unwrap();
        // Residual check: x0 + x1 = 1.
        assert_eq!((x[0] + x[1]) % 2, 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Mat::from_i64(Rationals, &[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[Rationals.from_i64(0), Rationals.from_i64(1)]).is_none());
    }

    #[test]
    fn kron_scalar_case() {
        let a = Mat::from_i64(Rationals, &[&[2]]);
        let id = Mat::identity(Rationals, 2);
        let k = a.kron(&id);
        assert_eq!(k, Mat::from_i64(Rationals, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let f2 = PrimeField::new(2);
        let a = Mat::identity(f2, 2);
        let b = Mat::identity(f2, 3);
        assert_eq!(a.kron(&b), Mat::identity(f2, 6));
    }

    #[test]
    fn row_space_membership() {
        let f2 = PrimeField::new(2);
        let s = RowSpace::from_rows(&Mat::from_i64(f2, &[&[1, 1, 0], &[0, 0, 1]]));
        assert!(s.contains(&[1, 1, 1]));
        assert!(!s.contains(&[1, 0, 0]));
        assert_eq!(s.dim(), 2);
    }

    fn arb_f2_mat(max_dim: usize) -> impl Strategy<Value = Mat<PrimeField>> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u64..2, r * c).prop_map(move |v| {
                let f2 = PrimeField::new(2);
                let mut m = Mat::zeros(f2, r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, v[i * c + j]);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_f2_mat(8)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
        }

        #[test]
        fn rref_is_idempotent(m in arb_f2_mat(8)) {
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn solve_is_exact_or_rank_obstructed(m in arb_f2_mat(8), seed in 0u64..1000) {
            let f2 = PrimeField::new(2);
            let b: Vec<u64> = (0..m.rows()).map(|i| (seed >> (i % 10)) & 1).collect();
            match m.solve(&b) {
                Some(x) => {
                    let bx = m.mul(&Mat::from_rows(f2, 1, vec![x]).transpose());
                    for i in 0..m.rows() {
                        prop_assert_eq!(bx.at(i, 0), &b[i]);
                    }
                }
                None => {
                    let aug = m.hstack(&Mat::from_rows(f2, 1, vec![b]).transpose());
                    prop_assert!(aug.rank() > m.rank());
                }
            }
        }

        #[test]
        fn kron_dimensions(a in arb_f2_mat(4), b in arb_f2_mat(4)) {
            let k = a.kron(&b);
            prop_assert_eq!(k.rows(), a.rows() * b.rows());
            prop_assert_eq!(k.cols(), a.cols() * b.cols());
        }

        #[test]
        fn kernel_rows_annihilate(m in arb_f2_mat(8)) {
            let k = m.kernel_basis();
            for r in 0..k.rows() {
                let v = Mat::from_rows(PrimeField::new(2), m.cols(), vec![k.row_vec(r)]);
                prop_assert!(m.mul(&v.transpose()).is_zero());
            }
        }
    }
}
