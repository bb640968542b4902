//! Leibniz algebras given by structure constants.
//!
//! Orientation is **left** Leibniz: every left multiplication `L_x` is a
//! derivation, i.e. `x(yz) = (xy)z + y(xz)`. The structure tensor uses
//! `e_i · e_j = Σ_k c[i][j][k] e_k`, and the matrix of `L_a` has column `j`
//! equal to the coordinates of `a · e_j`.

use std::collections::HashSet;

use thiserror::Error;

use crate::exactmath::{Field, MathError, Matrix, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("structure tensor has {found} product entries, expected {expected}")]
    TensorShape { expected: usize, found: usize },
    #[error("expected {expected} basis labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("element has {found} coordinates over {found_field}, algebra has dimension {expected} over {field}")]
    Binding {
        expected: usize,
        found: usize,
        field: Field,
        found_field: Field,
    },
    #[error("subspace lives in dimension {found}, algebra has dimension {expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("operation requires a validated Leibniz algebra")]
    NotValidated,
    #[error("left Leibniz identity fails on {count} basis triples, first at ({}, {}, {})", .first.0, .first.1, .first.2)]
    NotLeibniz {
        count: usize,
        first: (usize, usize, usize),
    },
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not closed under the product")]
    NotSubalgebra,
    #[error("generating set is empty")]
    EmptyGenerators,
    #[error("sample list is empty")]
    EmptySamples,
    #[error("map is not a derivation: fails on basis pair ({0}, {1})")]
    NotDerivation(usize, usize),
}

/// Which multiplication operator to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Closure requirement for generated spans and invariance checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureMode {
    Subalgebra,
    Ideal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CentralizerKind {
    Left,
    TwoSided,
}

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Element {
        Element { coords }
    }

    pub fn zero(field: Field, dim: usize) -> Element {
        Element {
            coords: vec![field.zero(); dim],
        }
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Element {
        Element {
            coords: coords.iter().map(|&c| field.from_i64(c)).collect(),
        }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

/// Outcome of [`LeibnizAlgebra::validate`]: every basis triple `(i, j, k)`
/// with `e_i(e_j e_k) != (e_i e_j)e_k + e_j(e_i e_k)`. By trilinearity the
/// basis triples decide the identity on all elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A quotient `L / I` together with the maps relating it to `L`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub algebra: LeibnizAlgebra,
    /// `(n - dim I) × n`, ambient coordinates to quotient coordinates.
    pub projection: Matrix,
    /// `n × (n - dim I)`, quotient coordinates to ambient representatives.
    pub section: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `products[i * n + j]` = coordinates of `e_i · e_j`.
    products: Vec<Vec<Scalar>>,
    validated: bool,
}

impl LeibnizAlgebra {
    /// Unvalidated algebra from the full product table.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        products: Vec<Vec<Scalar>>,
    ) -> Result<LeibnizAlgebra, AlgebraError> {
        let n = labels.len();
        if products.len() != n * n {
            return Err(AlgebraError::TensorShape {
                expected: n * n,
                found: products.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        for p in &products {
            if p.len() != n {
                return Err(AlgebraError::TensorShape {
                    expected: n,
                    found: p.len(),
                });
            }
            if let Some(bad) = p.iter().find(|c| c.field() != field) {
                return Err(MathError::FieldMismatch {
                    expected: field,
                    found: bad.field(),
                }
                .into());
            }
        }
        Ok(LeibnizAlgebra {
            field,
            labels,
            products,
            validated: false,
        })
    }

    /// Builds from sparse `(i, j, [(k, c)])` entries meaning `e_i e_j += c e_k`,
    /// then validates.
    pub fn from_table(
        field: Field,
        labels: &[&str],
        table: &[(usize, usize, &[(usize, i64)])],
    ) -> Result<LeibnizAlgebra, AlgebraError> {
        let n = labels.len();
        let mut products = vec![vec![field.zero(); n]; n * n];
        for (i, j, terms) in table {
            for (k, c) in terms.iter() {
                let slot = &mut products[i * n + j][*k];
                *slot = &*slot + &field.from_i64(*c);
            }
        }
        LeibnizAlgebra::new(
            field,
            labels.iter().map(|s| s.to_string()).collect(),
            products,
        )?
        .validated()
    }

    /// Zero-dimensional algebra over `field`.
    pub fn trivial(field: Field) -> LeibnizAlgebra {
        LeibnizAlgebra {
            field,
            labels: Vec::new(),
            products: Vec::new(),
            validated: true,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.product(i, j)[k]
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            let ei = self.basis_coords(i);
            for j in 0..n {
                let ej = self.basis_coords(j);
                let eij = self.product(i, j);
                for k in 0..n {
                    let ek = self.basis_coords(k);
                    let lhs = self.mul_coords(&ei, self.product(j, k));
                    let a = self.mul_coords(eij, &ek);
                    let b = self.mul_coords(&ej, self.product(i, k));
                    let ok = lhs
                        .iter()
                        .zip(a.iter().zip(&b))
                        .all(|(l, (x, y))| *l == x + y);
                    if !ok {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Runs the validator and sets the `validated` flag, or reports the
    /// failing triples.
    pub fn validated(mut self) -> Result<LeibnizAlgebra, AlgebraError> {
        if self.validated {
            return Ok(self);
        }
        let report = self.validate();
        if let Some(&first) = report.violations.first() {
            return Err(AlgebraError::NotLeibniz {
                count: report.violations.len(),
                first,
            });
        }
        self.validated = true;
        Ok(self)
    }

    pub fn require_validated(&self) -> Result<(), AlgebraError> {
        if self.validated {
            Ok(())
        } else {
            Err(AlgebraError::NotValidated)
        }
    }

    fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::new(self.basis_coords(i))
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    pub fn zero_element(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    pub fn check_element(&self, x: &Element) -> Result<(), AlgebraError> {
        let found_field = x.coords.first().map_or(self.field, Scalar::field);
        if x.dim() != self.dim() || found_field != self.field {
            return Err(AlgebraError::Binding {
                expected: self.dim(),
                found: x.dim(),
                field: self.field,
                found_field,
            });
        }
        Ok(())
    }

    fn check_subspace(&self, u: &Subspace) -> Result<(), AlgebraError> {
        if u.ambient() != self.dim() {
            return Err(AlgebraError::AmbientMismatch {
                expected: self.dim(),
                found: u.ambient(),
            });
        }
        if u.field() != self.field {
            return Err(MathError::FieldMismatch {
                expected: self.field,
                found: u.field(),
            }
            .into());
        }
        Ok(())
    }

    /// Bilinear expansion on raw coordinate vectors.
    pub(crate) fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, p) in out.iter_mut().zip(self.product(i, j)) {
                    if !p.is_zero() {
                        *o = &*o + &(&c * p);
                    }
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(Element::new(self.mul_coords(&x.coords, &y.coords)))
    }

    /// Matrix of `L_a` (`y ↦ a·y`) or `R_a` (`y ↦ y·a`).
    pub fn mult_operator(&self, a: &Element, side: Side) -> Result<Matrix, AlgebraError> {
        self.check_element(a)?;
        Ok(self.operator_unchecked(a.coords(), side))
    }

    pub(crate) fn operator_unchecked(&self, a: &[Scalar], side: Side) -> Matrix {
        let n = self.dim();
        let columns: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let ej = self.basis_coords(j);
                match side {
                    Side::Left => self.mul_coords(a, &ej),
                    Side::Right => self.mul_coords(&ej, a),
                }
            })
            .collect();
        Matrix::from_columns(self.field, n, &columns)
    }

    /// `span{ u·v : u ∈ basis(U), v ∈ basis(V) }`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        Ok(self.product_unchecked(u, v))
    }

    pub(crate) fn product_unchecked(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vectors = Vec::with_capacity(u.dim() * v.dim());
        for a in u.basis() {
            for b in v.basis() {
                let p = self.mul_coords(a, b);
                if p.iter().any(|c| !c.is_zero()) {
                    vectors.push(p);
                }
            }
        }
        Subspace::span(self.field, self.dim(), vectors)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim())
    }

    pub fn span_of(&self, elements: &[Element]) -> Result<Subspace, AlgebraError> {
        for e in elements {
            self.check_element(e)?;
        }
        Ok(Subspace::span(
            self.field,
            self.dim(),
            elements.iter().map(|e| e.coords.clone()),
        ))
    }

    /// Smallest subalgebra (or ideal) containing `generators`, by iterating
    /// `W ← W + W·W` (resp. `W ← W + L·W + W·L`) to a fixed point.
    pub fn generated_closure(
        &self,
        generators: &[Element],
        mode: ClosureMode,
    ) -> Result<Subspace, AlgebraError> {
        if generators.is_empty() {
            return Err(AlgebraError::EmptyGenerators);
        }
        let start = self.span_of(generators)?;
        Ok(self.close_unchecked(start, mode))
    }

    /// Only products involving vectors added in the previous round are
    /// formed, and the loop stops as soon as the whole space is reached.
    pub(crate) fn close_unchecked(&self, mut w: Subspace, mode: ClosureMode) -> Subspace {
        let n = self.dim();
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_coords(i)).collect();
        let mut old: Vec<Vec<Scalar>> = Vec::new();
        let mut fresh: Vec<Vec<Scalar>> = w.basis().to_vec();
        while !fresh.is_empty() && !w.is_full() {
            let mut products = Vec::new();
            match mode {
                ClosureMode::Subalgebra => {
                    for u in &fresh {
                        for v in old.iter().chain(&fresh) {
                            products.push(self.mul_coords(u, v));
                            products.push(self.mul_coords(v, u));
                        }
                    }
                }
                ClosureMode::Ideal => {
                    for u in &fresh {
                        for e in &basis {
                            products.push(self.mul_coords(u, e));
                            products.push(self.mul_coords(e, u));
                        }
                    }
                }
            }
            let residues: Vec<Vec<Scalar>> = products
                .into_iter()
                .map(|p| w.reduce(&p))
                .filter(|r| r.iter().any(|c| !c.is_zero()))
                .collect();
            // residues vanish on w's pivots, so their span meets w trivially
            let added = Subspace::span(self.field, n, residues);
            old.append(&mut fresh);
            fresh = added.basis().to_vec();
            w = w.sum(&added);
        }
        w
    }

    pub fn is_invariant(&self, u: &Subspace, mode: ClosureMode) -> Result<bool, AlgebraError> {
        self.check_subspace(u)?;
        Ok(self.invariant_unchecked(u, mode))
    }

    pub(crate) fn invariant_unchecked(&self, u: &Subspace, mode: ClosureMode) -> bool {
        match mode {
            ClosureMode::Subalgebra => u.contains_subspace(&self.product_unchecked(u, u)),
            ClosureMode::Ideal => {
                let full = self.full_space();
                u.contains_subspace(&self.product_unchecked(&full, u))
                    && u.contains_subspace(&self.product_unchecked(u, &full))
            }
        }
    }

    /// `L / I` presented on the non-pivot coordinates of `I`'s canonical basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<QuotientPresentation, AlgebraError> {
        self.check_subspace(ideal)?;
        if !self.invariant_unchecked(ideal, ClosureMode::Ideal) {
            return Err(AlgebraError::NotIdeal);
        }
        let n = self.dim();
        let mut is_pivot = vec![false; n];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let m = kept.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            kept.iter().map(|&c| r[c].clone()).collect()
        };
        let projection = Matrix::from_columns(
            self.field,
            m,
            &(0..n)
                .map(|j| project(&self.basis_coords(j)))
                .collect::<Vec<_>>(),
        );
        let section = Matrix::from_fn(self.field, n, m, |i, a| {
            if kept[a] == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let mut products = Vec::with_capacity(m * m);
        for &a in &kept {
            for &b in &kept {
                products.push(project(self.product(a, b)));
            }
        }
        let labels = kept.iter().map(|&c| self.labels[c].clone()).collect();
        let algebra = LeibnizAlgebra {
            field: self.field,
            labels,
            products,
            validated: self.validated,
        };
        Ok(QuotientPresentation {
            algebra,
            projection,
            section,
        })
    }

    /// The subalgebra `U` as an algebra in its own right, in `U`'s canonical
    /// basis, with the `n × dim U` inclusion matrix.
    pub fn induced_subalgebra(
        &self,
        u: &Subspace,
    ) -> Result<(LeibnizAlgebra, Matrix), AlgebraError> {
        self.check_subspace(u)?;
        if !self.invariant_unchecked(u, ClosureMode::Subalgebra) {
            return Err(AlgebraError::NotSubalgebra);
        }
        Ok(self.induced_unchecked(u))
    }

    pub(crate) fn induced_unchecked(&self, u: &Subspace) -> (LeibnizAlgebra, Matrix) {
        let k = u.dim();
        let basis = u.basis();
        let mut products = Vec::with_capacity(k * k);
        for a in basis {
            for b in basis {
                let p = self.mul_coords(a, b);
                products.push(u.pivots().iter().map(|&c| p[c].clone()).collect());
            }
        }
        let algebra = LeibnizAlgebra {
            field: self.field,
            labels: self.subspace_labels(u),
            products,
            validated: self.validated,
        };
        let inclusion = Matrix::from_columns(self.field, self.dim(), basis);
        (algebra, inclusion)
    }

    fn subspace_labels(&self, u: &Subspace) -> Vec<String> {
        let labels: Vec<String> = u
            .basis()
            .iter()
            .zip(u.pivots())
            .enumerate()
            .map(|(a, (row, &p))| {
                let unit = row
                    .iter()
                    .enumerate()
                    .all(|(c, v)| (c == p) == !v.is_zero());
                if unit && row[p].is_one() {
                    self.labels[p].clone()
                } else {
                    format!("s{}", a + 1)
                }
            })
            .collect();
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() == labels.len() {
            labels
        } else {
            (1..=labels.len()).map(|a| format!("s{a}")).collect()
        }
    }

    /// `Leib(L)`, the span of all squares: `span{e_i e_i} + span{e_i e_j + e_j e_i}`
    /// (polarization of `x·x`).
    pub fn leib_ideal(&self) -> Subspace {
        let n = self.dim();
        let mut vectors = Vec::new();
        for i in 0..n {
            vectors.push(self.product(i, i).to_vec());
            for j in i + 1..n {
                vectors.push(
                    self.product(i, j)
                        .iter()
                        .zip(self.product(j, i))
                        .map(|(a, b)| a + b)
                        .collect(),
                );
            }
        }
        Subspace::span(self.field, n, vectors)
    }

    /// Alternating product: `e_i e_i = 0` and `e_i e_j = -e_j e_i`.
    pub fn is_lie(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.product(i, i).iter().all(Scalar::is_zero)
                && (i + 1..n).all(|j| {
                    self.product(i, j)
                        .iter()
                        .zip(self.product(j, i))
                        .all(|(a, b)| (a + b).is_zero())
                })
        })
    }

    /// Left: `{x : x·s = 0 ∀ s ∈ S}`; two-sided additionally `s·x = 0`.
    pub fn centralizer(
        &self,
        s: &Subspace,
        kind: CentralizerKind,
    ) -> Result<Subspace, AlgebraError> {
        self.check_subspace(s)?;
        let n = self.dim();
        let mut rows = Vec::new();
        for v in s.basis() {
            let right = self.operator_unchecked(v, Side::Right);
            rows.extend(right.row_vectors());
            if kind == CentralizerKind::TwoSided {
                rows.extend(self.operator_unchecked(v, Side::Left).row_vectors());
            }
        }
        if rows.is_empty() {
            return Ok(self.full_space());
        }
        let system = Matrix::from_rows(self.field, rows)?;
        debug_assert_eq!(system.cols(), n);
        Ok(system.kernel())
    }

    /// The same algebra in the basis `f_a = Σ_i P[i][a] e_i` (columns of `P`).
    pub fn change_basis(&self, p: &Matrix) -> Result<LeibnizAlgebra, AlgebraError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(MathError::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            }
            .into());
        }
        let inv = p.inverse().ok_or(MathError::Singular)?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|a| p.column(a)).collect();
        let mut products = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                products.push(inv.mul_vec(&self.mul_coords(&cols[a], &cols[b])));
            }
        }
        let labels = (1..=n).map(|a| format!("f{a}")).collect();
        Ok(LeibnizAlgebra {
            field: self.field,
            labels,
            products,
            validated: self.validated,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<LeibnizAlgebra, AlgebraError> {
        if labels.len() != self.dim() {
            return Err(AlgebraError::LabelCount {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Same tensor, ignoring labels and the validated flag.
    pub fn same_structure(&self, other: &LeibnizAlgebra) -> bool {
        self.field == other.field && self.products == other.products
    }

    /// Checks `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` on every basis pair.
    pub fn check_derivation(&self, d: &Matrix) -> Result<(), AlgebraError> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Err(MathError::DimensionMismatch {
                expected: n,
                found: d.rows().max(d.cols()),
            }
            .into());
        }
        for i in 0..n {
            let di = d.column(i);
            for j in 0..n {
                let dj = d.column(j);
                let lhs = d.mul_vec(self.product(i, j));
                let a = self.mul_coords(&di, &self.basis_coords(j));
                let b = self.mul_coords(&self.basis_coords(i), &dj);
                if lhs
                    .iter()
                    .zip(a.iter().zip(&b))
                    .any(|(l, (x, y))| *l != x + y)
                {
                    return Err(AlgebraError::NotDerivation(i, j));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn heisenberg() -> LeibnizAlgebra {
        LeibnizAlgebra::from_table(
            Q,
            &["x", "y", "z"],
            &[(0, 1, &[(2, 1)]), (1, 0, &[(2, -1)])],
        )
        .unwrap()
    }

    fn cyclic2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_table(Q, &["a", "b"], &[(0, 0, &[(1, 1)])]).unwrap()
    }

    fn sl2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_table(
            Q,
            &["h", "e", "f"],
            &[
                (0, 1, &[(1, 2)]),
                (1, 0, &[(1, -2)]),
                (0, 2, &[(2, -2)]),
                (2, 0, &[(2, 2)]),
                (1, 2, &[(0, 1)]),
                (2, 1, &[(0, -1)]),
            ],
        )
        .unwrap()
    }

    fn el(c: &[i64]) -> Element {
        Element::from_i64(Q, c)
    }

    fn span(vs: &[&[i64]]) -> Subspace {
        Subspace::span(Q, vs[0].len(), vs.iter().map(|v| el(v).into_coords()))
    }

    #[test]
    fn multiply_examples() {
        let h = heisenberg();
        assert_eq!(
            h.multiply(&el(&[1, 0, 0]), &el(&[0, 1, 0])).unwrap(),
            el(&[0, 0, 1])
        );
        assert!(h
            .multiply(&h.zero_element(), &el(&[3, 4, 5]))
            .unwrap()
            .is_zero());
        assert_eq!(
            cyclic2().multiply(&el(&[1, 0]), &el(&[1, 0])).unwrap(),
            el(&[0, 1])
        );
        assert!(matches!(
            h.multiply(&el(&[1, 0]), &el(&[0, 1, 0])),
            Err(AlgebraError::Binding { .. })
        ));
    }

    #[test]
    fn validator_reports_witness() {
        let bad = LeibnizAlgebra::new(Q, vec!["e".into()], vec![vec![Q.one()]]).unwrap();
        let report = bad.validate();
        assert_eq!(report.violations, vec![(0, 0, 0)]);
        assert!(matches!(
            bad.validated(),
            Err(AlgebraError::NotLeibniz {
                count: 1,
                first: (0, 0, 0)
            })
        ));
        let abelian =
            LeibnizAlgebra::new(Q, vec!["a".into(), "b".into()], vec![vec![Q.zero(); 2]; 4])
                .unwrap();
        assert!(abelian.validate().is_valid());
    }

    #[test]
    fn lie_detection() {
        assert!(heisenberg().is_lie());
        assert!(!cyclic2().is_lie());
        assert!(sl2().is_lie());
    }

    #[test]
    fn operators() {
        let h = heisenberg();
        let lx = h.mult_operator(&el(&[1, 0, 0]), Side::Left).unwrap();
        assert_eq!(
            lx,
            Matrix::from_i64(Q, &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]])
        );
        let rx = h.mult_operator(&el(&[1, 0, 0]), Side::Right).unwrap();
        assert_eq!(
            rx,
            Matrix::from_i64(Q, &[&[0, 0, 0], &[0, 0, 0], &[0, -1, 0]])
        );
    }

    #[test]
    fn products_and_closures() {
        let h = heisenberg();
        let full = h.full_space();
        assert_eq!(
            h.subspace_product(&full, &full).unwrap(),
            span(&[&[0, 0, 1]])
        );
        assert!(h
            .subspace_product(&full, &h.zero_space())
            .unwrap()
            .is_zero());
        let c = h
            .generated_closure(&[el(&[1, 0, 0]), el(&[0, 1, 0])], ClosureMode::Subalgebra)
            .unwrap();
        assert!(c.is_full());
        let z = h
            .generated_closure(&[el(&[0, 0, 1])], ClosureMode::Ideal)
            .unwrap();
        assert_eq!(z, span(&[&[0, 0, 1]]));
        let e = sl2()
            .generated_closure(&[el(&[0, 1, 0])], ClosureMode::Subalgebra)
            .unwrap();
        assert_eq!(e, span(&[&[0, 1, 0]]));
        assert_eq!(
            h.generated_closure(&[], ClosureMode::Ideal),
            Err(AlgebraError::EmptyGenerators)
        );
    }

    #[test]
    fn invariance() {
        let h = heisenberg();
        assert!(h
            .is_invariant(&span(&[&[0, 0, 1]]), ClosureMode::Ideal)
            .unwrap());
        assert!(!h
            .is_invariant(&span(&[&[1, 0, 0]]), ClosureMode::Ideal)
            .unwrap());
        assert!(h
            .is_invariant(&span(&[&[1, 0, 0]]), ClosureMode::Subalgebra)
            .unwrap());
        for mode in [ClosureMode::Ideal, ClosureMode::Subalgebra] {
            assert!(h.is_invariant(&h.full_space(), mode).unwrap());
        }
    }

    #[test]
    fn quotient_examples() {
        let h = heisenberg();
        let q = h.quotient(&span(&[&[0, 0, 1]])).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q
            .algebra
            .subspace_product(&q.algebra.full_space(), &q.algebra.full_space())
            .unwrap()
            .is_zero());
        assert_eq!(&q.projection * &q.section, Matrix::identity(Q, 2));
        let same = h.quotient(&h.zero_space()).unwrap();
        assert!(same.algebra.same_structure(&h));
        assert_eq!(h.quotient(&h.full_space()).unwrap().algebra.dim(), 0);
        assert_eq!(
            h.quotient(&span(&[&[1, 0, 0]])).unwrap_err(),
            AlgebraError::NotIdeal
        );
    }

    #[test]
    fn induced_examples() {
        let h = heisenberg();
        let (z, inc) = h.induced_subalgebra(&span(&[&[0, 0, 1]])).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.product(0, 0)[0].is_zero());
        assert_eq!(inc.column(0), el(&[0, 0, 1]).into_coords());
        let s = sl2();
        let (b, _) = s
            .induced_subalgebra(&span(&[&[1, 0, 0], &[0, 1, 0]]))
            .unwrap();
        assert_eq!(b.labels(), &["h".to_string(), "e".to_string()]);
        assert_eq!(b.product(0, 1), &[Q.zero(), Q.from_i64(2)]);
        assert_eq!(b.product(1, 0), &[Q.zero(), Q.from_i64(-2)]);
        let (same, _) = h.induced_subalgebra(&h.full_space()).unwrap();
        assert!(same.same_structure(&h));
        assert_eq!(
            s.induced_subalgebra(&span(&[&[0, 1, 0], &[0, 0, 1]]))
                .unwrap_err(),
            AlgebraError::NotSubalgebra
        );
    }

    #[test]
    fn leib_ideal_examples() {
        assert!(heisenberg().leib_ideal().is_zero());
        assert!(sl2().leib_ideal().is_zero());
        assert_eq!(cyclic2().leib_ideal(), span(&[&[0, 1]]));
    }

    #[test]
    fn centralizers() {
        let h = heisenberg();
        let z = span(&[&[0, 0, 1]]);
        assert!(h
            .centralizer(&z, CentralizerKind::TwoSided)
            .unwrap()
            .is_full());
        // x commutes with x and z only
        let x = span(&[&[1, 0, 0]]);
        assert_eq!(
            h.centralizer(&x, CentralizerKind::TwoSided).unwrap(),
            span(&[&[1, 0, 0], &[0, 0, 1]])
        );
        // cyclic: a·a = b, so the left centralizer of span{a} is {x : x·a = 0} = span{b}
        let c = cyclic2();
        assert_eq!(
            c.centralizer(&span(&[&[1, 0]]), CentralizerKind::Left)
                .unwrap(),
            span(&[&[0, 1]])
        );
    }

    #[test]
    fn basis_change_roundtrip() {
        let h = heisenberg();
        let p = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
        let g = h.change_basis(&p).unwrap();
        assert!(g.validate().is_valid());
        let back = g.change_basis(&p.inverse().unwrap()).unwrap();
        assert!(back.same_structure(&h));
    }

    #[test]
    fn derivation_check() {
        let h = heisenberg();
        let d = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert!(h.check_derivation(&d).is_ok());
        let not = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            h.check_derivation(&not),
            Err(AlgebraError::NotDerivation(0, 1))
        );
    }
}
