//! One-sided ideals of `M_n(F_q)` and their annihilators.
//!
//! Matrices act on column vectors. The left ideal attached to `V ⊆ F_q^n`
//! is `{a : a v = 0 for all v in V}` and the right ideal attached to `V` is
//! `{a : image(a) ⊆ V}`.

use std::fmt;

use super::field::FiniteField;
use super::linalg::{nullspace, Mat, Subspace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Every matrix of the subspace as a `Mat`.
pub fn basis_matrices(n: usize, space: &Subspace) -> Vec<Mat> {
    space
        .basis()
        .iter()
        .map(|v| Mat::from_flat(n, v.clone()))
        .collect()
}

/// `span{a b : a in x, b in y}` inside `M_n`.
pub fn product_span(field: FiniteField, n: usize, x: &Subspace, y: &Subspace) -> Subspace {
    let xs = basis_matrices(n, x);
    let ys = basis_matrices(n, y);
    let products = xs
        .iter()
        .flat_map(|a| ys.iter().map(move |b| a.mul(field, b).into_flat()))
        .collect();
    Subspace::span(field, n * n, products)
}

/// A left or right ideal of `M_n(F_q)`, stored as an echelonized subspace of
/// `F_q^{n^2}` (row-major coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealRep {
    side: Side,
    n: usize,
    space: Subspace,
}

impl IdealRep {
    /// Wraps `space` after checking closure under multiplication by every
    /// matrix unit on the given side.
    pub fn new(side: Side, n: usize, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != n * n {
            return Err(Error::InvalidArgument(format!(
                "ideal of M_{n} must live in dimension {}, got {}",
                n * n,
                space.ambient_dim()
            )));
        }
        let field = space.field();
        for a in basis_matrices(n, &space) {
            for row in 0..n {
                for col in 0..n {
                    let unit = Mat::unit(n, row, col);
                    let moved = match side {
                        Side::Left => unit.mul(field, &a),
                        Side::Right => a.mul(field, &unit),
                    };
                    if !space.contains(moved.flat()) {
                        return Err(Error::NotAnIdeal {
                            side: side.label(),
                            row,
                            col,
                        });
                    }
                }
            }
        }
        Ok(Self { side, n, space })
    }

    /// The ideal generated on `side` by `generators`: `span(A g)` for a left
    /// ideal and `span(g A)` for a right one.
    pub fn generated(field: FiniteField, side: Side, n: usize, generators: &Subspace) -> Self {
        let whole = Subspace::full(field, n * n);
        let space = match side {
            Side::Left => product_span(field, n, &whole, generators),
            Side::Right => product_span(field, n, generators, &whole),
        };
        Self { side, n, space }
    }

    /// The ideal attached to `v`: maps vanishing on `v` (left), or maps with
    /// image inside `v` (right).
    pub fn from_subspace(v: &Subspace, side: Side) -> Self {
        let field = v.field();
        let n = v.ambient_dim();
        let mut gens = Vec::new();
        match side {
            Side::Left => {
                for w in v.orthogonal().basis() {
                    for row in 0..n {
                        let mut m = Mat::zero(n);
                        for (col, &x) in w.iter().enumerate() {
                            m.set(row, col, x);
                        }
                        gens.push(m.into_flat());
                    }
                }
            }
            Side::Right => {
                for u in v.basis() {
                    for col in 0..n {
                        let mut m = Mat::zero(n);
                        for (row, &x) in u.iter().enumerate() {
                            m.set(row, col, x);
                        }
                        gens.push(m.into_flat());
                    }
                }
            }
        }
        Self {
            side,
            n,
            space: Subspace::span(field, n * n, gens),
        }
    }

    pub fn whole(field: FiniteField, side: Side, n: usize) -> Self {
        Self {
            side,
            n,
            space: Subspace::full(field, n * n),
        }
    }

    pub fn zero(field: FiniteField, side: Side, n: usize) -> Self {
        Self {
            side,
            n,
            space: Subspace::zero(field, n * n),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FiniteField {
        self.space.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The reduced dimension `i` with `dim I = n i`; `None` if `n` does not
    /// divide the dimension.
    pub fn reduced_dim(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        self.dim().is_multiple_of(self.n).then_some(self.dim() / self.n)
    }

    pub fn matrices(&self) -> Vec<Mat> {
        basis_matrices(self.n, &self.space)
    }

    pub fn contains(&self, other: &IdealRep) -> bool {
        self.space.contains_subspace(&other.space)
    }

    /// The subspace this ideal is attached to: the common kernel for a left
    /// ideal, the sum of images for a right ideal.
    pub fn subspace(&self) -> Subspace {
        let field = self.field();
        let n = self.n;
        let mats = self.matrices();
        match self.side {
            Side::Left => {
                let rows: Vec<Vec<u8>> = mats
                    .iter()
                    .flat_map(|a| (0..n).map(move |i| (0..n).map(|j| a.get(i, j)).collect()))
                    .collect();
                Subspace::span(field, n, nullspace(field, &rows, n))
            }
            Side::Right => {
                let cols = mats
                    .iter()
                    .flat_map(|a| (0..n).map(move |j| a.column(j)))
                    .collect();
                Subspace::span(field, n, cols)
            }
        }
    }

    /// `{a : x a = 0 for all x in I}`, always a right ideal.
    pub fn right_annihilator(&self) -> IdealRep {
        let field = self.field();
        let n = self.n;
        // (x a)_{ij} = sum_k x_{ik} a_{kj}; unknown a_{kj} sits at k n + j.
        let mut rows = Vec::new();
        for x in self.matrices() {
            for i in 0..n {
                for j in 0..n {
                    let mut eq = vec![0; n * n];
                    for k in 0..n {
                        eq[k * n + j] = x.get(i, k);
                    }
                    rows.push(eq);
                }
            }
        }
        IdealRep {
            side: Side::Right,
            n,
            space: Subspace::span(field, n * n, nullspace(field, &rows, n * n)),
        }
    }

    /// `{a : a x = 0 for all x in I}`, always a left ideal.
    pub fn left_annihilator(&self) -> IdealRep {
        let field = self.field();
        let n = self.n;
        // (a x)_{ij} = sum_k a_{ik} x_{kj}; unknown a_{ik} sits at i n + k.
        let mut rows = Vec::new();
        for x in self.matrices() {
            for i in 0..n {
                for j in 0..n {
                    let mut eq = vec![0; n * n];
                    for k in 0..n {
                        eq[i * n + k] = x.get(k, j);
                    }
                    rows.push(eq);
                }
            }
        }
        IdealRep {
            side: Side::Left,
            n,
            space: Subspace::span(field, n * n, nullspace(field, &rows, n * n)),
        }
    }

    /// `I°` for a left ideal and `°I` for a right ideal.
    pub fn annihilator(&self) -> IdealRep {
        match self.side {
            Side::Left => self.right_annihilator(),
            Side::Right => self.left_annihilator(),
        }
    }

    /// `span{a b : a in self, b in other}`.
    pub fn product(&self, other: &IdealRep) -> Subspace {
        product_span(self.field(), self.n, &self.space, &other.space)
    }

    pub fn intersection(&self, other: &IdealRep) -> Subspace {
        self.space.intersection(&other.space)
    }
}
