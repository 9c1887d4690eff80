//! The quotients `I°/I°I` and `I/I°I` of a left ideal `I` attached to
//! `V ⊆ F_q^n`, with explicit isomorphisms to matrix algebras.
//!
//! `I°/I°I` is identified with `End(V)` by restricting to `V`, and `I/I°I`
//! with `End(F_q^n / V)` by passing to the induced map. Both identifications
//! use the echelon basis of `V` completed by standard vectors.

use std::fmt;

use super::field::FiniteField;
use super::ideal::{basis_matrices, IdealRep, Side};
use super::linalg::{combine, nullspace, Mat, Subspace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientMode {
    /// `I°/I°I`, of degree `n - i`.
    AnnihilatorSide,
    /// `I/I°I`, of degree `i`.
    IdealSide,
}

impl QuotientMode {
    pub fn label(self) -> &'static str {
        match self {
            QuotientMode::AnnihilatorSide => "annihilator-side",
            QuotientMode::IdealSide => "ideal-side",
        }
    }
}

impl fmt::Display for QuotientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of checking the isomorphism on a full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCheck {
    pub degree: usize,
    pub elements: usize,
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of checking the canonical map to the module endomorphisms of the
/// numerator: left multiplication on `I°`, right multiplication on `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndCheck {
    pub end_dimension: usize,
    pub image_dimension: usize,
    pub kernel_matches: bool,
    pub homomorphism: bool,
    pub anti_homomorphism: bool,
}

impl EndCheck {
    /// The map is bijective from the quotient onto the endomorphism algebra.
    pub fn bijective(&self) -> bool {
        self.kernel_matches && self.image_dimension == self.end_dimension
    }
}

#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    field: FiniteField,
    n: usize,
    mode: QuotientMode,
    ideal: IdealRep,
    numerator: IdealRep,
    kernel: Subspace,
    sub_basis: Vec<Vec<u8>>,
    complement: Vec<Vec<u8>>,
    change_of_basis_inv: Mat,
}

impl QuotientAlgebra {
    /// Builds the quotient for a left ideal of reduced dimension `0 < i < n`.
    pub fn new(ideal: &IdealRep, mode: QuotientMode) -> Result<Self> {
        let i = Self::check_left(ideal)?;
        if i == 0 || i == ideal.degree() {
            return Err(Error::Precondition(format!(
                "{mode} quotient needs 0 < i < n, got i = {i}, n = {}",
                ideal.degree()
            )));
        }
        Ok(Self::build(ideal, mode))
    }

    /// As [`QuotientAlgebra::new`] but also accepts `i = 0` and `i = n`,
    /// where one of the quotients is the zero algebra `M_0`.
    pub(crate) fn new_allow_degenerate(ideal: &IdealRep, mode: QuotientMode) -> Result<Self> {
        Self::check_left(ideal)?;
        Ok(Self::build(ideal, mode))
    }

    fn check_left(ideal: &IdealRep) -> Result<usize> {
        if ideal.side() != Side::Left {
            return Err(Error::Precondition("quotient needs a left ideal".into()));
        }
        ideal.reduced_dim().ok_or_else(|| {
            Error::Precondition(format!(
                "ideal dimension {} is not a multiple of {}",
                ideal.dim(),
                ideal.degree()
            ))
        })
    }

    fn build(ideal: &IdealRep, mode: QuotientMode) -> Self {
        let field = ideal.field();
        let n = ideal.degree();
        let v = ideal.subspace();
        let annihilator = ideal.annihilator();
        let kernel = annihilator.product(ideal);
        let numerator = match mode {
            QuotientMode::AnnihilatorSide => annihilator,
            QuotientMode::IdealSide => ideal.clone(),
        };
        let sub_basis = v.basis().to_vec();
        let complement = v.complement_basis();
        let columns: Vec<Vec<u8>> = sub_basis.iter().chain(&complement).cloned().collect();
        let change_of_basis_inv = Mat::from_columns(&columns)
            .inverse(field)
            .expect("echelon basis plus complementary unit vectors is a basis");
        Self {
            field,
            n,
            mode,
            ideal: ideal.clone(),
            numerator,
            kernel,
            sub_basis,
            complement,
            change_of_basis_inv,
        }
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn mode(&self) -> QuotientMode {
        self.mode
    }

    pub fn ideal(&self) -> &IdealRep {
        &self.ideal
    }

    /// The ideal being divided: `I°` or `I`.
    pub fn numerator(&self) -> &IdealRep {
        &self.numerator
    }

    /// `I°I`.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// `d` such that the quotient is isomorphic to `M_d(F_q)`.
    pub fn degree(&self) -> usize {
        match self.mode {
            QuotientMode::AnnihilatorSide => self.sub_basis.len(),
            QuotientMode::IdealSide => self.complement.len(),
        }
    }

    /// Image of `x` in `M_d(F_q)`; `x` must lie in the numerator.
    pub fn project(&self, x: &Mat) -> Result<Mat> {
        if !self.numerator.space().contains(x.flat()) {
            return Err(Error::Precondition(format!(
                "{x:?} is not in the numerator of the {} quotient",
                self.mode
            )));
        }
        Ok(self.project_unchecked(x))
    }

    fn project_unchecked(&self, x: &Mat) -> Mat {
        let d = self.degree();
        let (sources, offset) = match self.mode {
            QuotientMode::AnnihilatorSide => (&self.sub_basis, 0),
            QuotientMode::IdealSide => (&self.complement, self.sub_basis.len()),
        };
        let mut out = Mat::zero(d);
        for (k, src) in sources.iter().enumerate() {
            let coords = self
                .change_of_basis_inv
                .apply(self.field, &x.apply(self.field, src));
            for l in 0..d {
                out.set(l, k, coords[offset + l]);
            }
        }
        out
    }

    /// A representative in the numerator of the coset mapping to `c`.
    pub fn lift(&self, c: &Mat) -> Mat {
        assert_eq!(c.size(), self.degree(), "lift expects a degree-sized matrix");
        let n = self.n;
        let d = self.degree();
        let zero = vec![0; n];
        let images: Vec<Vec<u8>> = match self.mode {
            QuotientMode::AnnihilatorSide => (0..n)
                .map(|k| {
                    if k < d {
                        combine(self.field, &c.column(k), &self.sub_basis, n)
                    } else {
                        zero.clone()
                    }
                })
                .collect(),
            QuotientMode::IdealSide => {
                let offset = self.sub_basis.len();
                (0..n)
                    .map(|k| {
                        if k < offset {
                            zero.clone()
                        } else {
                            combine(self.field, &c.column(k - offset), &self.complement, n)
                        }
                    })
                    .collect()
            }
        };
        Mat::from_columns(&images).mul(self.field, &self.change_of_basis_inv)
    }

    /// Checks on every element and every pair of elements of `M_d(F_q)`
    /// that lifting and projecting are inverse and that the projection is
    /// multiplicative and well defined on cosets.
    pub fn verify_multiplication_table(&self) -> TableCheck {
        let d = self.degree();
        let mut failures = Vec::new();
        let quotient_dim = self.numerator.dim() - self.kernel.dim().min(self.numerator.dim());
        if quotient_dim != d * d || !self.numerator.space().contains_subspace(&self.kernel) {
            failures.push(format!(
                "dimension mismatch: numerator {} over kernel {} but degree {d}",
                self.numerator.dim(),
                self.kernel.dim()
            ));
        }
        let kernel_mats = basis_matrices(self.n, &self.kernel);
        for k in &kernel_mats {
            if !self.project_unchecked(k).is_zero() {
                failures.push(format!("kernel element {k:?} has nonzero image"));
            }
        }
        let elements: Vec<Mat> = Mat::all(self.field, d).collect();
        let lifts: Vec<Mat> = elements.iter().map(|c| self.lift(c)).collect();
        for (c, x) in elements.iter().zip(&lifts) {
            if !self.numerator.space().contains(x.flat()) {
                failures.push(format!("lift of {c:?} leaves the numerator"));
            } else if &self.project_unchecked(x) != c {
                failures.push(format!("lift of {c:?} does not project back"));
            }
        }
        let mut pairs = 0;
        for (ia, (a, xa)) in elements.iter().zip(&lifts).enumerate() {
            for (ib, (b, xb)) in elements.iter().zip(&lifts).enumerate() {
                pairs += 1;
                let expected = a.mul(self.field, b);
                if self.project_unchecked(&xa.mul(self.field, xb)) != expected {
                    failures.push(format!("product of lifts of {a:?} and {b:?} is wrong"));
                    continue;
                }
                if !kernel_mats.is_empty() {
                    let ka = &kernel_mats[ia % kernel_mats.len()];
                    let kb = &kernel_mats[ib % kernel_mats.len()];
                    let shifted = xa.add(self.field, ka).mul(self.field, &xb.add(self.field, kb));
                    if self.project_unchecked(&shifted) != expected {
                        failures.push(format!(
                            "product of {a:?} and {b:?} depends on coset representatives"
                        ));
                    }
                }
            }
        }
        TableCheck {
            degree: d,
            elements: elements.len(),
            pairs,
            failures,
        }
    }

    /// Checks the canonical map from the quotient to the module endomorphisms
    /// of the numerator: `x ↦ (y ↦ x y)` on `I°` as a right module and
    /// `x ↦ (y ↦ y x)` on `I` as a left module.
    pub fn canonical_end_check(&self) -> EndCheck {
        let field = self.field;
        let n = self.n;
        let space = self.numerator.space();
        let basis = basis_matrices(n, space);
        let m = basis.len();
        let coords = |x: &Mat| -> Vec<u8> {
            space
                .coordinates(x.flat())
                .expect("numerator is closed under the module action")
        };
        // The module action of a matrix unit on the numerator basis.
        let act = |y: &Mat, unit: &Mat| -> Mat {
            match self.mode {
                QuotientMode::AnnihilatorSide => y.mul(field, unit),
                QuotientMode::IdealSide => unit.mul(field, y),
            }
        };
        // gamma[e][s] = coordinates of (basis_s acted on by unit e).
        let units: Vec<Mat> = (0..n * n).map(|e| Mat::unit(n, e / n, e % n)).collect();
        let gamma: Vec<Vec<Vec<u8>>> = units
            .iter()
            .map(|u| basis.iter().map(|b| coords(&act(b, u))).collect())
            .collect();
        // Unknown F (m x m) with F[t][s] at t m + s; f commutes with the
        // action: sum_u g(s)_u F[t][u] = sum_w F[w][s] g(w)_t.
        let mut rows = Vec::new();
        for g in &gamma {
            for s in 0..m {
                for t in 0..m {
                    let mut eq = vec![0u8; m * m];
                    for u in 0..m {
                        eq[t * m + u] = field.add(eq[t * m + u], g[s][u]);
                    }
                    for w in 0..m {
                        eq[w * m + s] = field.sub(eq[w * m + s], g[w][t]);
                    }
                    rows.push(eq);
                }
            }
        }
        let end_dimension = nullspace(field, &rows, m * m).len();

        let multiplication = |x: &Mat| -> Mat {
            let mut f = Mat::zero(m);
            for (s, y) in basis.iter().enumerate() {
                let image = match self.mode {
                    QuotientMode::AnnihilatorSide => x.mul(field, y),
                    QuotientMode::IdealSide => y.mul(field, x),
                };
                for (t, c) in coords(&image).into_iter().enumerate() {
                    f.set(t, s, c);
                }
            }
            f
        };
        let images: Vec<Mat> = basis.iter().map(multiplication).collect();
        let image_dimension = Subspace::span(
            field,
            m * m,
            images.iter().map(|f| f.flat().to_vec()).collect(),
        )
        .dim();
        // Kernel of x ↦ F(x) in numerator coordinates.
        let columns: Vec<Vec<u8>> = (0..m * m)
            .map(|e| images.iter().map(|f| f.flat()[e]).collect())
            .collect();
        let kernel = Subspace::span(
            field,
            n * n,
            nullspace(field, &columns, m)
                .into_iter()
                .map(|c| combine(field, &c, space.basis(), n * n))
                .collect(),
        );
        let mut homomorphism = true;
        let mut anti_homomorphism = true;
        for (x, fx) in basis.iter().zip(&images) {
            for (y, fy) in basis.iter().zip(&images) {
                let fxy = multiplication(&x.mul(field, y));
                homomorphism &= fxy == fx.mul(field, fy);
                anti_homomorphism &= fxy == fy.mul(field, fx);
            }
        }
        EndCheck {
            end_dimension,
            image_dimension,
            kernel_matches: kernel == self.kernel,
            homomorphism,
            anti_homomorphism,
        }
    }
}
