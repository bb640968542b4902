use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{Field, MathError, Polynomial, Scalar, Subspace};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "entry field mismatch");
                data.push(v);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows, rejecting ragged input and entries from a
    /// different field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, MathError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MathError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            for v in row {
                if v.field() != field {
                    return Err(MathError::FieldMismatch {
                        expected: field,
                        found: v.field(),
                    });
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, len, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn diagonal(field: Field, entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(field, n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                field.zero()
            }
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self - c·I`.
    pub fn shift(&self, c: &Scalar) -> Matrix {
        assert!(self.is_square(), "shift of a non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    /// Unique reduced row-echelon form with its pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for (off, pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, c + off) - &(&factor * pv);
                    m.set(i, c + off, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `{ v : self · v = 0 }` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(i, free);
            }
            vectors.push(v);
        }
        Subspace::span(self.field, self.cols, vectors)
    }

    /// Column space in canonical form.
    pub fn image(&self) -> Subspace {
        Subspace::span(
            self.field,
            self.rows,
            (0..self.cols).map(|j| self.column(j)),
        )
    }

    pub fn determinant(&self) -> Result<Scalar, MathError> {
        self.require_square()?;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| {
            r.reduced.get(i, n + j).clone()
        }))
    }

    fn require_square(&self) -> Result<(), MathError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MathError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Minimal polynomial as the lcm of the Krylov annihilators of the
    /// standard basis vectors.
    pub fn minimal_polynomial(&self) -> Result<Polynomial, MathError> {
        self.require_square()?;
        let mut m = Polynomial::one(self.field);
        for j in 0..self.cols {
            let unit = unit_vector(self.field, self.cols, j);
            let (ann, _) = self.relative_annihilator(&Echelon::default(), unit);
            m = m.lcm(&ann);
        }
        Ok(m)
    }

    /// Characteristic polynomial from a cyclic decomposition: the space is
    /// filled by Krylov blocks `K(e_j) mod W`; each block contributes the
    /// relative annihilator of its seed vector.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial, MathError> {
        self.require_square()?;
        let n = self.rows;
        let mut invariant = Echelon::default();
        let mut chi = Polynomial::one(self.field);
        for j in 0..n {
            if invariant.len() == n {
                break;
            }
            let unit = unit_vector(self.field, n, j);
            let (rel, block) = self.relative_annihilator(&invariant, unit);
            if rel.degree() == Some(0) {
                continue;
            }
            chi = &chi * &rel;
            for row in block {
                invariant.push_reduced(row);
            }
        }
        Ok(chi)
    }

    /// Monic `p` of least degree with `p(M) seed ∈ W`, along with the
    /// echelon rows spanning the new part of the Krylov space.
    fn relative_annihilator(
        &self,
        invariant: &Echelon,
        seed: Vec<Scalar>,
    ) -> (Polynomial, Vec<(usize, Vec<Scalar>)>) {
        let f = self.field;
        let n = self.rows;
        let mut block: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        let mut power = seed;
        for k in 0..=n {
            let mut w = power.clone();
            invariant.reduce(&mut w);
            let mut tag = unit_vector(f, n + 1, k);
            for (p, row, row_tag) in &block {
                if w[*p].is_zero() {
                    continue;
                }
                let c = w[*p].clone();
                axpy(&mut w, &c, row);
                axpy(&mut tag, &c, row_tag);
            }
            match w.iter().position(|v| !v.is_zero()) {
                None => {
                    let poly = Polynomial::from_coeffs(f, tag[..=k].to_vec());
                    let rows = block.into_iter().map(|(p, r, _)| (p, r)).collect();
                    return (poly, rows);
                }
                Some(p) => {
                    let inv = w[p].inv().expect("nonzero pivot");
                    let w: Vec<Scalar> = w.iter().map(|v| v * &inv).collect();
                    let tag: Vec<Scalar> = tag.iter().map(|v| v * &inv).collect();
                    block.push((p, w, tag));
                }
            }
            power = self.mul_vec(&power);
        }
        unreachable!("Krylov sequence exceeded the ambient dimension")
    }
}

pub(crate) fn unit_vector(field: Field, n: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[j] = field.one();
    v
}

/// `w -= c · row`.
pub(crate) fn axpy(w: &mut [Scalar], c: &Scalar, row: &[Scalar]) {
    for (a, b) in w.iter_mut().zip(row) {
        if !b.is_zero() {
            *a = &*a - &(c * b);
        }
    }
}

/// Semi-echelon row set: every row vanishes at the pivots of earlier rows
/// and has a unit entry at its own pivot.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn len(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, w: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            axpy(w, &c, row);
        }
    }

    fn push_reduced(&mut self, row: (usize, Vec<Scalar>)) {
        self.rows.push(row);
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field, "matrix field mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(Q, c)
    }

    #[test]
    fn rref_examples() {
        let r = Matrix::identity(Q, 3).rref();
        assert_eq!(r.reduced, Matrix::identity(Q, 3));
        assert_eq!(r.pivots, vec![0, 1, 2]);

        // Hand reduction: R2 <- R2 - 2 R1.
        let r = Matrix::from_i64(Q, &[&[1, 1], &[2, 2]]).rref();
        assert_eq!(r.reduced, Matrix::from_i64(Q, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank(), 1);

        let r = Matrix::zeros(Q, 2, 2).rref();
        assert!(r.reduced.is_zero());
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn from_rows_rejects_mixed_fields() {
        let rows = vec![vec![Q.one(), Field::Prime(3).one()]];
        assert!(matches!(
            Matrix::from_rows(Q, rows),
            Err(MathError::FieldMismatch { .. })
        ));
        let ragged = vec![vec![Q.one()], vec![Q.one(), Q.zero()]];
        assert!(matches!(
            Matrix::from_rows(Q, ragged),
            Err(MathError::Ragged { row: 1, .. })
        ));
    }

    #[test]
    fn kernel_and_image_examples() {
        assert!(Matrix::identity(Q, 2).kernel().is_zero());
        assert!(Matrix::identity(Q, 2).image().is_full());
        let m = Matrix::from_i64(Q, &[&[1, 1], &[2, 2]]);
        let k = m.kernel();
        assert_eq!(k, Subspace::span(Q, 2, [vec![Q.one(), -Q.one()]]));
        assert!(m.mul_vec(&k.basis()[0]).iter().all(Scalar::is_zero));
        assert_eq!(
            m.image(),
            Subspace::span(Q, 2, [vec![Q.one(), Q.from_i64(2)]])
        );
        assert!(Matrix::zeros(Q, 3, 3).kernel().is_full());
        assert!(Matrix::zeros(Q, 3, 3).image().is_zero());
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(
            Matrix::zeros(Q, 3, 3).minimal_polynomial().unwrap(),
            poly(&[0, 1])
        );
        let jordan = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(jordan.minimal_polynomial().unwrap(), poly(&[0, 0, 0, 1]));
        // (x-1)(x-2) = x^2 - 3x + 2
        let d = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let m = d.minimal_polynomial().unwrap();
        assert_eq!(m, poly(&[2, -3, 1]));
        assert!(m.eval_matrix(&d).is_zero());
        assert!(!d.shift(&Q.one()).is_zero() && !d.shift(&Q.from_i64(2)).is_zero());
        let rect = Matrix::zeros(Q, 2, 3);
        assert!(matches!(
            rect.minimal_polynomial(),
            Err(MathError::NotSquare { .. })
        ));
    }

    #[test]
    fn characteristic_polynomial_examples() {
        assert_eq!(
            Matrix::identity(Q, 2).characteristic_polynomial().unwrap(),
            poly(&[1, -2, 1])
        );
        // companion matrix of x^2 - x - 1
        let c = Matrix::from_i64(Q, &[&[0, 1], &[1, 1]]);
        assert_eq!(c.characteristic_polynomial().unwrap(), poly(&[-1, -1, 1]));
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let d = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(
            d.characteristic_polynomial().unwrap(),
            poly(&[-6, 11, -6, 1])
        );
        assert!(Matrix::zeros(Q, 1, 2).characteristic_polynomial().is_err());
    }

    #[test]
    fn charpoly_over_small_prime_field() {
        // p = 2 <= n: trace-recursion methods would divide by 2 here.
        let f = Field::Prime(2);
        let m = Matrix::from_i64(f, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let chi = m.characteristic_polynomial().unwrap();
        assert_eq!(chi, Polynomial::from_i64(f, &[1, 1, 1, 1]));
        assert!(chi.eval_matrix(&m).is_zero());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant().unwrap(), Q.one());
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
