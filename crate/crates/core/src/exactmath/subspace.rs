use super::matrix::axpy;
use super::{Field, Matrix, Scalar};

/// A subspace of `field^ambient`, stored as its reduced row-echelon basis.
///
/// The canonical form is unique, so `==` and `Hash` compare subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::from_rref(Matrix::identity(field, ambient))
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .collect();
        if rows.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, rows).expect("uniform vectors");
        Subspace::from_rref(m)
    }

    fn from_rref(m: Matrix) -> Subspace {
        let field = m.field();
        let ambient = m.cols();
        let r = m.rref();
        let basis = (0..r.rank()).map(|i| r.reduced.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical basis vectors (rows of the reduced echelon form).
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as the rows of a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(self.field, 0, self.ambient);
        }
        Matrix::from_rows(self.field, self.basis.clone()).expect("uniform basis")
    }

    /// `v` minus its component along the pivot coordinates; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            axpy(&mut w, &c, row);
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` is in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if other.is_zero() || self.contains_subspace(other) {
            return self.clone();
        }
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        if other.contains_subspace(self) {
            return self.clone();
        }
        if self.contains_subspace(other) {
            return other.clone();
        }
        // a·U = b·V  <=>  [Uᵀ | -Vᵀ] (a, b) = 0
        let k = self.dim();
        let columns: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()))
            .collect();
        let system = Matrix::from_columns(self.field, self.ambient, &columns);
        let null = system.kernel();
        let vectors = null.basis().iter().map(|coeffs| {
            let mut v = vec![self.field.zero(); self.ambient];
            for (c, u) in coeffs[..k].iter().zip(&self.basis) {
                if c.is_zero() {
                    continue;
                }
                axpy(&mut v, &-c, u);
            }
            v
        });
        Subspace::span(self.field, self.ambient, vectors.collect::<Vec<_>>())
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map shape mismatch");
        Subspace::span(
            self.field,
            m.rows(),
            self.basis.iter().map(|v| m.mul_vec(v)).collect::<Vec<_>>(),
        )
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}
