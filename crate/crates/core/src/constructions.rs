//! Named algebras, combinators, and seeded random generators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, LeibnizAlgebra, Side};
use crate::analysis;
use crate::exactmath::{Field, MathError, Matrix, Scalar};
use crate::recognizability::{self, SampleStrategy, Verdict};

/// Largest dimension produced by [`random_algebra`].
pub const RANDOM_DIM_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },
    #[error("dimension {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// Ground-truth flags, computed by the analysis layer when an entry is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExpectedFlags {
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub strongly_solvable: bool,
    pub supersolvable: bool,
    pub lie: bool,
    pub abelian_by_nilpotent: Verdict,
}

impl ExpectedFlags {
    /// Abelian-by-nilpotent uses the default sample with seed 0.
    pub fn compute(a: &LeibnizAlgebra) -> Result<ExpectedFlags, AlgebraError> {
        let flags = analysis::classify(a)?;
        let samples = recognizability::sample_elements(
            a,
            recognizability::default_sample_count(a.dim()),
            0,
            SampleStrategy::Default,
        );
        let abnil = match analysis::is_abelian_by_nilpotent(a, &samples)?.holds() {
            Some(true) => Verdict::Holds,
            Some(false) => Verdict::Fails,
            None => Verdict::Unknown,
        };
        Ok(ExpectedFlags {
            abelian: flags.abelian,
            nilpotent: flags.nilpotent,
            solvable: flags.solvable,
            strongly_solvable: flags.strongly_solvable,
            supersolvable: analysis::is_supersolvable(a)?.is_some(),
            lie: flags.lie,
            abelian_by_nilpotent: abnil,
        })
    }

    pub fn entries(&self) -> [(&'static str, &'static str); 7] {
        let b = |v: bool| if v { "true" } else { "false" };
        [
            ("abelian", b(self.abelian)),
            ("abelian_by_nilpotent", self.abelian_by_nilpotent.name()),
            ("lie", b(self.lie)),
            ("nilpotent", b(self.nilpotent)),
            ("solvable", b(self.solvable)),
            ("strongly_solvable", b(self.strongly_solvable)),
            ("supersolvable", b(self.supersolvable)),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<usize>,
    pub algebra: LeibnizAlgebra,
    pub expected: ExpectedFlags,
    pub provenance: String,
}

impl CatalogEntry {
    fn new(
        name: impl Into<String>,
        params: Vec<usize>,
        algebra: LeibnizAlgebra,
        provenance: impl Into<String>,
    ) -> Result<CatalogEntry, AlgebraError> {
        let expected = ExpectedFlags::compute(&algebra)?;
        Ok(CatalogEntry {
            name: name.into(),
            params,
            algebra,
            expected,
            provenance: provenance.into(),
        })
    }

    /// File-system friendly identifier, e.g. `abelian_3`.
    pub fn slug(&self) -> String {
        let mut s = self.name.clone();
        for p in &self.params {
            s.push('_');
            s.push_str(&p.to_string());
        }
        s
    }
}

/// Names accepted by [`build_named`].
pub const CATALOG_NAMES: [&str; 8] = [
    "abelian",
    "heisenberg",
    "heisenberg_extension",
    "cyclic_leibniz",
    "lie_2dim_nonnilpotent",
    "nonlie_2dim",
    "sl2",
    "rotation_3dim",
];

type Table<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

fn table(labels: &[&str], t: Table) -> LeibnizAlgebra {
    LeibnizAlgebra::from_table(Field::Rational, labels, t).expect("catalog tensors are Leibniz")
}

/// Catalog algebra over the rationals.
///
/// `abelian` and `cyclic_leibniz` take one parameter (the dimension, at
/// least 1); the others take none.
pub fn build_named(name: &str, params: &[usize]) -> Result<CatalogEntry, ConstructionError> {
    let invalid = |reason: &str| ConstructionError::InvalidParams {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let sized = matches!(name, "abelian" | "cyclic_leibniz");
    if sized && (params.len() != 1 || params[0] == 0) {
        return Err(invalid("expected one dimension parameter n >= 1"));
    }
    if !sized && CATALOG_NAMES.contains(&name) && !params.is_empty() {
        return Err(invalid("takes no parameters"));
    }
    let (algebra, provenance) = match name {
        "abelian" => (abelian(params[0]), "all products zero"),
        "heisenberg" => (heisenberg(), "x·y = z, y·x = -z"),
        "heisenberg_extension" => (
            heisenberg_extension(),
            "Heisenberg split-extended by the derivation diag(1,1,2); supersolvable, \
             not abelian-by-nilpotent, every proper 2-generated subalgebra is",
        ),
        "cyclic_leibniz" => (cyclic_leibniz(params[0]), "a_1·a_k = a_{k+1}"),
        "lie_2dim_nonnilpotent" => (
            table(&["x", "y"], &[(0, 1, &[(1, 1)]), (1, 0, &[(1, -1)])]),
            "x·y = y",
        ),
        "nonlie_2dim" => (table(&["a", "b"], &[(0, 0, &[(1, 1)])]), "a·a = b"),
        "sl2" => (sl2(), "simple Lie algebra sl(2)"),
        "rotation_3dim" => (
            rotation(),
            "t rotates span{u, v}; L_t has minimal polynomial x^3 + x",
        ),
        other => return Err(ConstructionError::UnknownName(other.to_string())),
    };
    Ok(CatalogEntry::new(
        name,
        params.to_vec(),
        algebra,
        provenance,
    )?)
}

/// Parses `name` or `name(n)` and builds it.
pub fn build_from_expr(expr: &str) -> Result<CatalogEntry, ConstructionError> {
    let expr = expr.trim();
    match expr.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| ConstructionError::UnknownName(expr.to_string()))?;
            let params = inner
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ConstructionError::InvalidParams {
                    name: name.to_string(),
                    reason: e.to_string(),
                })?;
            build_named(name.trim(), &params)
        }
        None => build_named(expr, &[]),
    }
}

fn abelian(n: usize) -> LeibnizAlgebra {
    let labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let zero = vec![Field::Rational.zero(); n];
    LeibnizAlgebra::new(Field::Rational, labels, vec![zero; n * n])
        .and_then(LeibnizAlgebra::validated)
        .expect("abelian algebra")
}

fn heisenberg() -> LeibnizAlgebra {
    table(&["x", "y", "z"], &[(0, 1, &[(2, 1)]), (1, 0, &[(2, -1)])])
}

fn heisenberg_extension() -> LeibnizAlgebra {
    let q = Field::Rational;
    let d = Matrix::diagonal(q, &[q.from_i64(1), q.from_i64(1), q.from_i64(2)]);
    extend_by_derivation(&heisenberg(), &d, ExtensionMode::LieLike)
        .expect("diag(1,1,2) is a derivation")
}

fn cyclic_leibniz(n: usize) -> LeibnizAlgebra {
    let labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let q = Field::Rational;
    let mut products = vec![vec![q.zero(); n]; n * n];
    for k in 0..n.saturating_sub(1) {
        products[k][k + 1] = q.one();
    }
    LeibnizAlgebra::new(q, labels, products)
        .and_then(LeibnizAlgebra::validated)
        .expect("cyclic Leibniz algebra")
}

fn rotation() -> LeibnizAlgebra {
    table(
        &["t", "u", "v"],
        &[
            (0, 1, &[(2, 1)]),
            (1, 0, &[(2, -1)]),
            (0, 2, &[(1, -1)]),
            (2, 0, &[(1, 1)]),
        ],
    )
}

fn sl2() -> LeibnizAlgebra {
    table(
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
}

fn fresh_label(taken: &HashSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..)
        .map(|i| format!("{base}_{i}"))
        .find(|l| !taken.contains(l))
        .unwrap()
}

/// Block tensor with zero cross products. Clashing labels of the second
/// summand get a numeric suffix.
pub fn direct_sum(a: &LeibnizAlgebra, b: &LeibnizAlgebra) -> Result<LeibnizAlgebra, AlgebraError> {
    if a.field() != b.field() {
        return Err(MathError::FieldMismatch {
            expected: a.field(),
            found: b.field(),
        }
        .into());
    }
    let field = a.field();
    let (m, k) = (a.dim(), b.dim());
    let n = m + k;
    let mut labels: Vec<String> = a.labels().to_vec();
    let mut taken: HashSet<String> = labels.iter().cloned().collect();
    for l in b.labels() {
        let fresh = fresh_label(&taken, l);
        taken.insert(fresh.clone());
        labels.push(fresh);
    }
    let mut products = vec![vec![field.zero(); n]; n * n];
    for i in 0..m {
        for j in 0..m {
            products[i * n + j][..m].clone_from_slice(a.product(i, j));
        }
    }
    for i in 0..k {
        for j in 0..k {
            products[(m + i) * n + m + j][m..].clone_from_slice(b.product(i, j));
        }
    }
    let sum = LeibnizAlgebra::new(field, labels, products)?;
    if a.is_validated() && b.is_validated() {
        sum.validated()
    } else {
        Ok(sum)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionMode {
    /// `x·d = -D(x)`.
    LieLike,
    /// `x·d = 0`.
    LeibnizLike,
}

impl FromStr for ExtensionMode {
    type Err = String;
    fn from_str(s: &str) -> Result<ExtensionMode, String> {
        match s {
            "lie_like" => Ok(ExtensionMode::LieLike),
            "leibniz_like" => Ok(ExtensionMode::LeibnizLike),
            other => Err(format!("unknown extension mode `{other}`")),
        }
    }
}

/// `A ⊕ k·d` with `d·x = D(x)`, `d·d = 0`, and `x·d` set by `mode`.
pub fn extend_by_derivation(
    a: &LeibnizAlgebra,
    d: &Matrix,
    mode: ExtensionMode,
) -> Result<LeibnizAlgebra, AlgebraError> {
    a.check_derivation(d)?;
    let field = a.field();
    let m = a.dim();
    let n = m + 1;
    let mut labels = a.labels().to_vec();
    let taken: HashSet<String> = labels.iter().cloned().collect();
    labels.push(fresh_label(&taken, "d"));
    let mut products = vec![vec![field.zero(); n]; n * n];
    for i in 0..m {
        for j in 0..m {
            products[i * n + j][..m].clone_from_slice(a.product(i, j));
        }
    }
    for j in 0..m {
        let image = d.column(j);
        if mode == ExtensionMode::LieLike {
            for (slot, v) in products[j * n + m].iter_mut().zip(&image) {
                *slot = -v;
            }
        }
        products[m * n + j][..m].clone_from_slice(&image);
    }
    LeibnizAlgebra::new(field, labels, products)?.validated()
}

/// Basis of the derivation algebra `Der(A)`, as matrices.
pub fn derivation_space(a: &LeibnizAlgebra) -> Vec<Matrix> {
    let n = a.dim();
    let field = a.field();
    // unknown D[r][c] sits at column r * n + c
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![field.zero(); n * n];
                for m in 0..n {
                    let c = a.structure_constant(i, j, m);
                    if !c.is_zero() {
                        row[k * n + m] = &row[k * n + m] + c;
                    }
                }
                for r in 0..n {
                    let left = a.structure_constant(r, j, k);
                    if !left.is_zero() {
                        row[r * n + i] = &row[r * n + i] - left;
                    }
                    let right = a.structure_constant(i, r, k);
                    if !right.is_zero() {
                        row[r * n + j] = &row[r * n + j] - right;
                    }
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        return Vec::new();
    } else {
        Matrix::from_rows(field, rows)
            .expect("rectangular")
            .kernel()
    };
    kernel
        .basis()
        .iter()
        .map(|v| Matrix::from_fn(field, n, n, |r, c| v[r * n + c].clone()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RandomKind {
    Nilpotent,
    Solvable,
    Mixed,
}

impl RandomKind {
    pub const ALL: [RandomKind; 3] = [
        RandomKind::Nilpotent,
        RandomKind::Solvable,
        RandomKind::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomKind::Nilpotent => "nilpotent",
            RandomKind::Solvable => "solvable",
            RandomKind::Mixed => "mixed",
        }
    }

    fn index(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for RandomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomKind {
    type Err = String;
    fn from_str(s: &str) -> Result<RandomKind, String> {
        RandomKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown random kind `{s}`"))
    }
}

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    Field::Rational.from_i64(rng.gen_range(-2..=2))
}

fn random_component(kind: RandomKind, room: usize, rng: &mut ChaCha8Rng) -> LeibnizAlgebra {
    let mut options: Vec<(usize, u8)> = vec![(1, 0)];
    if room >= 2 {
        options.extend([(2, 1), (2, 2)]);
    }
    if room >= 3 {
        options.push((3, 3));
    }
    if kind != RandomKind::Nilpotent {
        if room >= 2 {
            options.push((2, 4));
        }
        if room >= 3 {
            options.push((3, 5));
        }
        if room >= 4 {
            options.push((4, 6));
        }
    }
    if kind == RandomKind::Mixed && room >= 3 {
        options.push((3, 7));
    }
    let &(_, which) = options.choose(rng).unwrap();
    match which {
        0 => abelian(rng.gen_range(1..=room.min(3))),
        1 => cyclic_leibniz(rng.gen_range(2..=room.min(4))),
        2 => table(&["a", "b"], &[(0, 0, &[(1, 1)])]),
        3 => heisenberg(),
        4 => table(&["x", "y"], &[(0, 1, &[(1, 1)]), (1, 0, &[(1, -1)])]),
        5 => rotation(),
        6 => heisenberg_extension(),
        _ => sl2(),
    }
}

fn random_extension(
    kind: RandomKind,
    base: &LeibnizAlgebra,
    rng: &mut ChaCha8Rng,
) -> Result<LeibnizAlgebra, AlgebraError> {
    let n = base.dim();
    let ders = derivation_space(base);
    for _ in 0..8 {
        let d = if kind == RandomKind::Nilpotent || ders.is_empty() {
            // left multiplications are derivations, nilpotent on nilpotent algebras
            let x = Element::new((0..n).map(|_| small(rng)).collect());
            base.mult_operator(&x, Side::Left)?
        } else {
            let mut acc = Matrix::zeros(base.field(), n, n);
            for m in &ders {
                acc = &acc + &m.scale(&small(rng));
            }
            acc
        };
        let mode = if rng.gen_bool(0.5) {
            ExtensionMode::LeibnizLike
        } else {
            ExtensionMode::LieLike
        };
        let ext = match extend_by_derivation(base, &d, mode) {
            Ok(e) => e,
            Err(AlgebraError::NotLeibniz { .. }) if mode == ExtensionMode::LeibnizLike => {
                match extend_by_derivation(base, &d, ExtensionMode::LieLike) {
                    Ok(e) => e,
                    Err(AlgebraError::NotLeibniz { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(AlgebraError::NotLeibniz { .. }) => continue,
            Err(e) => return Err(e),
        };
        let fits = match kind {
            RandomKind::Nilpotent => analysis::is_nilpotent(&ext)?,
            RandomKind::Solvable => analysis::is_solvable(&ext)?,
            RandomKind::Mixed => true,
        };
        if fits {
            return Ok(ext);
        }
    }
    direct_sum(base, &abelian(1))
}

/// Fraction-free (Bareiss) determinant of a small integer matrix.
fn integer_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                m[r][k] = (m[r][k] * m[c][c] - m[r][c] * m[c][k]) / prev;
            }
        }
        prev = m[c][c];
    }
    sign * if n == 0 { 1 } else { m[n - 1][n - 1] }
}

/// Random matrix with entries in `[-2, 2]` and determinant `±1`, so the
/// change of basis keeps integral structure constants integral.
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    for _ in 0..50_000 {
        let entries: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let wide = entries
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        if integer_determinant(wide).abs() == 1 {
            return Matrix::from_fn(Field::Rational, n, n, |i, j| {
                Field::Rational.from_i64(entries[i][j])
            });
        }
    }
    // unit upper triangular fallback
    Matrix::from_fn(Field::Rational, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Field::Rational.one(),
        std::cmp::Ordering::Less => small(rng),
        std::cmp::Ordering::Greater => Field::Rational.zero(),
    })
}

/// Random invertible matrix with entries in `[-2, 2]`.
pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let p = Matrix::from_fn(Field::Rational, n, n, |_, _| small(rng));
        if p.inverse().is_some() {
            return p;
        }
    }
}

/// Seeded random algebra of dimension `n` (`1 <= n <= 8`).
///
/// Direct sums of catalog families, up to two random derivation extensions
/// (generate-and-check), then a random unimodular change of basis with
/// entries in `[-2, 2]`. Deterministic in `(kind, n, seed)`.
pub fn random_algebra(
    kind: RandomKind,
    n: usize,
    seed: u64,
) -> Result<CatalogEntry, ConstructionError> {
    if n > RANDOM_DIM_CAP {
        return Err(ConstructionError::CapExceeded {
            requested: n,
            cap: RANDOM_DIM_CAP,
        });
    }
    if n == 0 {
        return Err(ConstructionError::InvalidParams {
            name: "random".into(),
            reason: "dimension must be at least 1".into(),
        });
    }
    let mix = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((n as u64) << 8 | kind.index());
    let mut rng = ChaCha8Rng::seed_from_u64(mix);
    let steps = rng.gen_range(0..=(n - 1).min(2));
    let mut algebra: Option<LeibnizAlgebra> = None;
    let mut built = 0;
    while built < n - steps {
        let c = random_component(kind, n - steps - built, &mut rng);
        built += c.dim();
        algebra = Some(match algebra {
            None => c,
            Some(a) => direct_sum(&a, &c)?,
        });
    }
    let mut algebra = algebra.expect("n >= 1");
    for _ in 0..steps {
        algebra = random_extension(kind, &algebra, &mut rng)?;
    }
    let p = random_unimodular(n, &mut rng);
    let algebra = algebra.change_basis(&p)?;
    let name = format!("random_{}_{n}_{seed}", kind.name());
    let provenance = format!("random {} algebra, dim {n}, seed {seed}", kind.name());
    Ok(CatalogEntry::new(name, Vec::new(), algebra, provenance)?)
}

/// Fixed catalog entries used by the corpus.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = [
        ("abelian", vec![1]),
        ("abelian", vec![2]),
        ("abelian", vec![3]),
        ("heisenberg", vec![]),
        ("heisenberg_extension", vec![]),
        ("cyclic_leibniz", vec![2]),
        ("cyclic_leibniz", vec![3]),
        ("cyclic_leibniz", vec![4]),
        ("lie_2dim_nonnilpotent", vec![]),
        ("nonlie_2dim", vec![]),
        ("sl2", vec![]),
        ("rotation_3dim", vec![]),
    ]
    .into_iter()
    .map(|(name, p)| build_named(name, &p).expect("catalog entry"))
    .collect();
    let q = Field::Rational;
    let combos = [
        (
            "heisenberg_plus_line",
            direct_sum(&heisenberg(), &abelian(1)).unwrap(),
            "heisenberg ⊕ abelian(1)",
        ),
        (
            "sl2_plus_heisenberg",
            direct_sum(&sl2(), &heisenberg()).unwrap(),
            "sl2 ⊕ heisenberg",
        ),
        (
            "abelian_leibniz_extension",
            extend_by_derivation(
                &abelian(2),
                &Matrix::diagonal(q, &[q.from_i64(1), q.from_i64(2)]),
                ExtensionMode::LeibnizLike,
            )
            .unwrap(),
            "abelian(2) extended by diag(1,2), x·d = 0",
        ),
    ];
    for (name, algebra, prov) in combos {
        out.push(CatalogEntry::new(name, Vec::new(), algebra, prov).expect("combination"));
    }
    out
}

/// Catalog plus 20 random entries with dimensions cycling through
/// `2..=max_dim`, all seeded from `seed`.
pub fn build_corpus(seed: u64, max_dim: usize) -> Result<Vec<CatalogEntry>, ConstructionError> {
    if !(2..=RANDOM_DIM_CAP).contains(&max_dim) {
        return Err(ConstructionError::InvalidParams {
            name: "corpus".into(),
            reason: format!("max dimension must lie in 2..={RANDOM_DIM_CAP}"),
        });
    }
    let mut out: Vec<CatalogEntry> = catalog()
        .into_iter()
        .filter(|e| e.algebra.dim() <= max_dim)
        .collect();
    for i in 0..20u64 {
        let kind = RandomKind::ALL[(i % 3) as usize];
        let n = 2 + (i as usize) % (max_dim - 1);
        out.push(random_algebra(
            kind,
            n,
            seed.wrapping_mul(1000).wrapping_add(i),
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognizability::{check_recognizability, Property};

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn heisenberg_extension_flags() {
        let e = build_named("heisenberg_extension", &[]).unwrap();
        assert_eq!(e.algebra.dim(), 4);
        let f = e.expected;
        assert!(f.solvable && f.strongly_solvable && f.supersolvable && f.lie);
        assert!(!f.nilpotent);
        assert_eq!(f.abelian_by_nilpotent, Verdict::Fails);
        // d·x = x, x·d = -x, d·z = 2z
        let a = &e.algebra;
        assert_eq!(a.product(3, 0), &[q(1), q(0), q(0), q(0)]);
        assert_eq!(a.product(0, 3), &[q(-1), q(0), q(0), q(0)]);
        assert_eq!(a.product(3, 2), &[q(0), q(0), q(2), q(0)]);
        let span = a.span_of(&a.basis_elements()[..3]).unwrap();
        let (sub, _) = a.induced_subalgebra(&span).unwrap();
        assert!(sub.same_structure(&build_named("heisenberg", &[]).unwrap().algebra));
    }

    #[test]
    fn cyclic_three() {
        let e = build_named("cyclic_leibniz", &[3]).unwrap();
        assert!(e.expected.nilpotent && !e.expected.lie);
        let a = &e.algebra;
        let leib = a.leib_ideal();
        assert_eq!(leib, a.span_of(&a.basis_elements()[1..]).unwrap());
    }

    #[test]
    fn abelian_one_has_every_flag() {
        let f = build_named("abelian", &[1]).unwrap().expected;
        assert!(f.abelian && f.nilpotent && f.solvable && f.strongly_solvable);
        assert!(f.supersolvable && f.lie);
        assert_eq!(f.abelian_by_nilpotent, Verdict::Holds);
    }

    #[test]
    fn bad_names_and_params() {
        assert!(matches!(
            build_named("e8", &[]),
            Err(ConstructionError::UnknownName(_))
        ));
        assert!(matches!(
            build_named("abelian", &[]),
            Err(ConstructionError::InvalidParams { .. })
        ));
        assert!(matches!(
            build_named("sl2", &[2]),
            Err(ConstructionError::InvalidParams { .. })
        ));
        assert_eq!(build_from_expr("abelian(4)").unwrap().algebra.dim(), 4);
        assert_eq!(build_from_expr("sl2").unwrap().algebra.dim(), 3);
        assert!(build_from_expr("abelian(x)").is_err());
    }

    #[test]
    fn direct_sums() {
        let a1 = abelian(1);
        let s = direct_sum(&a1, &a1).unwrap();
        assert!(s.same_structure(&abelian(2)));
        assert_eq!(s.labels(), ["e1", "e1_2"]);
        let hn = direct_sum(&heisenberg(), &a1).unwrap();
        assert!(analysis::is_nilpotent(&hn).unwrap());
        assert_eq!(hn.dim(), 4);
        let sh = direct_sum(&sl2(), &heisenberg()).unwrap();
        assert!(!analysis::is_solvable(&sh).unwrap());
        let gf = LeibnizAlgebra::trivial(Field::prime(3).unwrap());
        assert!(direct_sum(&a1, &gf).is_err());
    }

    #[test]
    fn extensions() {
        let m = Matrix::from_i64(Field::Rational, &[&[1, 2], &[-3, 5]]);
        let e = extend_by_derivation(&abelian(2), &m, ExtensionMode::LieLike).unwrap();
        assert!(e.is_lie());
        let d = Matrix::diagonal(Field::Rational, &[q(1), q(2)]);
        let e = extend_by_derivation(&abelian(2), &d, ExtensionMode::LeibnizLike).unwrap();
        assert!(!e.is_lie());
        let bad = Matrix::identity(Field::Rational, 3);
        assert_eq!(
            extend_by_derivation(&heisenberg(), &bad, ExtensionMode::LieLike),
            Err(AlgebraError::NotDerivation(0, 1))
        );
    }

    #[test]
    fn derivation_space_dimensions() {
        assert_eq!(derivation_space(&abelian(2)).len(), 4);
        // Der(sl2) = ad(sl2)
        assert_eq!(derivation_space(&sl2()).len(), 3);
        // Der of the Heisenberg algebra has dimension 6
        let ders = derivation_space(&heisenberg());
        assert_eq!(ders.len(), 6);
        for d in &ders {
            heisenberg().check_derivation(d).unwrap();
        }
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(integer_determinant(vec![vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(integer_determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            integer_determinant(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
            4
        );
        assert_eq!(integer_determinant(vec![vec![1, 2], vec![2, 4]]), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_unimodular(6, &mut rng);
        assert_eq!(p.determinant().unwrap().pow(2), q(1));
    }

    #[test]
    fn random_algebras_are_deterministic_and_valid() {
        for seed in 0..6 {
            let a = random_algebra(RandomKind::Nilpotent, 4, seed).unwrap();
            assert!(a.expected.nilpotent, "seed {seed}");
            assert!(a.algebra.validate().is_valid());
            let b = random_algebra(RandomKind::Nilpotent, 4, seed).unwrap();
            assert_eq!(a, b);
            let m = random_algebra(RandomKind::Mixed, 3, seed).unwrap();
            assert_eq!(m.algebra.dim(), 3);
            let s = random_algebra(RandomKind::Solvable, 5, seed).unwrap();
            assert!(s.expected.solvable);
        }
        assert!(matches!(
            random_algebra(RandomKind::Mixed, 9, 0),
            Err(ConstructionError::CapExceeded { .. })
        ));
    }

    #[test]
    fn extension_not_two_recognizable_on_sample() {
        let a = heisenberg_extension();
        let samples = recognizability::sample_elements(&a, 16, 0, SampleStrategy::Default);
        let r = check_recognizability(&a, Property::AbelianByNilpotent, 2, &samples, 0).unwrap();
        assert_eq!(r.whole, Verdict::Fails);
        assert!(r.proper_rows().count() > 0);
        assert!(r.proper_rows_hold());
        assert!(r.proper_counterexample());
    }
}
