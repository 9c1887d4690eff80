//! Dense linear algebra over `F_q`: reduced row-echelon subspaces and small
//! square matrices.

use std::fmt;

use super::field::FiniteField;

/// Row-reduces `rows` in place to reduced row-echelon form, drops zero rows,
/// and returns the pivot column of each remaining row.
pub fn rref(field: FiniteField, rows: &mut Vec<Vec<u8>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{x : M x = 0}` where `M` has the given rows.
pub fn nullspace(field: FiniteField, rows: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(field, &mut reduced, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// A subspace of `F_q^d`, stored as its unique reduced row-echelon basis, so
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FiniteField,
    ambient: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FiniteField, ambient: usize, vectors: Vec<Vec<u8>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let mut basis = vectors;
        let pivots = rref(field, &mut basis, ambient);
        Self {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: FiniteField, ambient: usize) -> Self {
        Self::span(field, ambient, Vec::new())
    }

    pub fn full(field: FiniteField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(field, ambient, basis)
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let coords: Vec<u8> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (x, &b) in rest.iter_mut().zip(row) {
                *x = self.field.sub(*x, self.field.mul(*c, b));
            }
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, vectors)
    }

    /// `{w : <v, w> = 0 for all v}` for the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        Subspace::span(
            self.field,
            self.ambient,
            nullspace(self.field, &self.basis, self.ambient),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal().sum(&other.orthogonal()).orthogonal()
    }

    /// Standard basis vectors on the non-pivot columns; they span a
    /// complement of `self`.
    pub fn complement_basis(&self) -> Vec<Vec<u8>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![0; self.ambient];
                v[c] = 1;
                v
            })
            .collect()
    }

    /// Basis of a complement of `sub` inside `self`; `sub` must be contained
    /// in `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vec<u8>> {
        debug_assert!(self.contains_subspace(sub));
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span(self.field, self.ambient, vec![v.clone()]));
                out.push(v.clone());
            }
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({} in {}^{}: ", self.dim(), self.field, self.ambient)?;
        f.debug_list().entries(&self.basis).finish()?;
        f.write_str(")")
    }
}

/// An `n x n` matrix over `F_q`, row-major. As a point of `F_q^{n^2}` its
/// coordinates are the row-major entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.data[i * n + j] = 1;
        m
    }

    pub fn from_flat(n: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn flat(&self) -> &[u8] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<u8> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, field: FiniteField, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.data[idx] = field.add(out.data[idx], field.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, field: FiniteField, other: &Mat) -> Mat {
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, field: FiniteField, c: u8) -> Mat {
        Mat {
            n: self.n,
            data: self.data.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, field: FiniteField, v: &[u8]) -> Vec<u8> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| field.add(acc, field.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<u8>]) -> Mat {
        let n = columns.len();
        let mut m = Mat::zero(n);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Inverse by Gauss-Jordan elimination on `[M | 1]`, or `None` when `M`
    /// is singular.
    pub fn inverse(&self, field: FiniteField) -> Option<Mat> {
        let n = self.n;
        if n == 0 {
            return Some(Mat::zero(0));
        }
        let mut rows: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut row: Vec<u8> = (0..n).map(|j| self.get(i, j)).collect();
                row.extend((0..n).map(|j| u8::from(i == j)));
                row
            })
            .collect();
        let pivots = rref(field, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zero(n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                inv.set(i, j, row[n + j]);
            }
        }
        Some(inv)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// All `q^{n^2}` matrices, in lexicographic order of the flat entries.
    pub fn all(field: FiniteField, n: usize) -> impl Iterator<Item = Mat> {
        let q = field.order() as u64;
        let count = q.pow((n * n) as u32);
        (0..count).map(move |mut code| {
            let mut data = vec![0; n * n];
            for slot in data.iter_mut().rev() {
                *slot = (code % q) as u8;
                code /= q;
            }
            Mat { n, data }
        })
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

/// Linear combination `sum c_k v_k` of equal-length vectors.
pub fn combine(field: FiniteField, coeffs: &[u8], vectors: &[Vec<u8>], len: usize) -> Vec<u8> {
    let mut out = vec![0; len];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c == 0 {
            continue;
        }
        for (x, &y) in out.iter_mut().zip(v) {
            *x = field.add(*x, field.mul(c, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FiniteField {
        FiniteField::new(2).unwrap()
    }

    #[test]
    fn echelon_form_is_canonical() {
        let f = f2();
        let a = Subspace::span(f, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let b = Subspace::span(f, 3, vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(a.contains(&[1, 1, 0]));
        assert!(!a.contains(&[1, 0, 0]));
    }

    #[test]
    fn orthogonal_and_intersection() {
        let f = FiniteField::new(3).unwrap();
        let v = Subspace::span(f, 3, vec![vec![1, 2, 0]]);
        let perp = v.orthogonal();
        assert_eq!(perp.dim(), 2);
        assert_eq!(perp.orthogonal(), v);
        let w = Subspace::span(f, 3, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        let x = Subspace::span(f, 3, vec![vec![1, 2, 1], vec![0, 1, 0]]);
        let meet = w.intersection(&x);
        assert_eq!(meet.dim(), 1);
        assert!(w.contains_subspace(&meet) && x.contains_subspace(&meet));
    }

    #[test]
    fn matrix_basics() {
        let f = f2();
        let e01 = Mat::unit(2, 0, 1);
        let e10 = Mat::unit(2, 1, 0);
        assert_eq!(e01.mul(f, &e10), Mat::unit(2, 0, 0));
        assert!(e01.mul(f, &e01).is_zero());
        assert_eq!(e01.apply(f, &[0, 1]), vec![1, 0]);
        assert_eq!(Mat::all(f, 2).count(), 16);
        assert_eq!(Mat::zero(0).inverse(f), Some(Mat::zero(0)));
    }

    #[test]
    fn inverses_of_all_small_matrices() {
        let f = FiniteField::new(3).unwrap();
        let mut invertible = 0;
        for m in Mat::all(f, 2) {
            if let Some(inv) = m.inverse(f) {
                invertible += 1;
                assert_eq!(m.mul(f, &inv), Mat::identity(2));
                assert_eq!(inv.mul(f, &m), Mat::identity(2));
            }
        }
        // |GL_2(F_3)| = (9 - 1)(9 - 3)
        assert_eq!(invertible, 48);
    }

    proptest! {
        #[test]
        fn dimension_formula(rows_a in prop::collection::vec(prop::collection::vec(0u8..3, 4), 0..4),
                             rows_b in prop::collection::vec(prop::collection::vec(0u8..3, 4), 0..4)) {
            let f = FiniteField::new(3).unwrap();
            let a = Subspace::span(f, 4, rows_a);
            let b = Subspace::span(f, 4, rows_b);
            prop_assert_eq!(a.sum(&b).dim() + a.intersection(&b).dim(), a.dim() + b.dim());
            let comp = a.sum(&b).complement_of(&a);
            prop_assert_eq!(comp.len(), a.sum(&b).dim() - a.dim());
            for v in a.basis() {
                let coords = a.coordinates(v).unwrap();
                prop_assert_eq!(combine(f, &coords, a.basis(), 4), v.clone());
            }
        }
    }
}
