//! Decision procedures: series, nilpotency and solvability, Fitting and
//! primary decompositions, supersolvability via ideal flags, and
//! abelian-by-nilpotent verdicts.

use crate::algebra::{AlgebraError, ClosureMode, Element, LeibnizAlgebra, Side};
use crate::exactmath::{Matrix, Polynomial, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// `L, L·L, (L·L)·(L·L), …`
    Derived,
    /// `L, L·L, L·(L·L), …`
    LowerCentral,
}

/// A descending series, listed until it hits zero or repeats a term
/// (the repeated term is included once to show stabilization).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub terminated: bool,
}

impl SeriesResult {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// Number of steps needed to reach zero (nilpotency class or derived
    /// length), if the series terminates.
    pub fn length(&self) -> Option<usize> {
        self.terminated.then(|| self.terms.len() - 1)
    }
}

pub fn derived_series(a: &LeibnizAlgebra) -> Result<SeriesResult, AlgebraError> {
    a.require_validated()?;
    Ok(series(a, SeriesKind::Derived))
}

pub fn lower_central_series(a: &LeibnizAlgebra) -> Result<SeriesResult, AlgebraError> {
    a.require_validated()?;
    Ok(series(a, SeriesKind::LowerCentral))
}

fn series(a: &LeibnizAlgebra, kind: SeriesKind) -> SeriesResult {
    let full = a.full_space();
    let mut terms = vec![full.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_zero() {
            return SeriesResult {
                kind,
                terms,
                terminated: true,
            };
        }
        let next = match kind {
            SeriesKind::Derived => a.product_unchecked(last, last),
            SeriesKind::LowerCentral => a.product_unchecked(&full, last),
        };
        let stalled = next == *last;
        terms.push(next);
        if stalled {
            return SeriesResult {
                kind,
                terms,
                terminated: false,
            };
        }
    }
}

/// Structural flags of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flags {
    pub abelian: bool,
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub solvable: bool,
    pub derived_length: Option<usize>,
    /// `L·L` is nilpotent as an algebra in its own right.
    pub strongly_solvable: bool,
    pub lie: bool,
}

pub fn classify(a: &LeibnizAlgebra) -> Result<Flags, AlgebraError> {
    a.require_validated()?;
    let lower = series(a, SeriesKind::LowerCentral);
    let derived = series(a, SeriesKind::Derived);
    let square = derived
        .terms
        .get(1)
        .cloned()
        .unwrap_or_else(|| a.zero_space());
    Ok(Flags {
        abelian: square.is_zero(),
        nilpotent: lower.terminated,
        nilpotency_class: lower.length(),
        solvable: derived.terminated,
        derived_length: derived.length(),
        strongly_solvable: is_nilpotent_subalgebra(a, &square),
        lie: a.is_lie(),
    })
}

pub fn is_nilpotent(a: &LeibnizAlgebra) -> Result<bool, AlgebraError> {
    a.require_validated()?;
    Ok(series(a, SeriesKind::LowerCentral).terminated)
}

pub fn is_solvable(a: &LeibnizAlgebra) -> Result<bool, AlgebraError> {
    a.require_validated()?;
    Ok(series(a, SeriesKind::Derived).terminated)
}

/// Strong solvability alone: the derived algebra is nilpotent.
pub fn is_strongly_solvable(a: &LeibnizAlgebra) -> Result<bool, AlgebraError> {
    a.require_validated()?;
    let full = a.full_space();
    let square = a.product_unchecked(&full, &full);
    Ok(is_nilpotent_subalgebra(a, &square))
}

fn is_nilpotent_subalgebra(a: &LeibnizAlgebra, u: &Subspace) -> bool {
    if u.is_zero() {
        return true;
    }
    let (sub, _) = a.induced_unchecked(u);
    series(&sub, SeriesKind::LowerCentral).terminated
}

/// Fitting null and one components of `L_x`: kernel and image of `L_x^n`.
pub fn fitting_components(
    a: &LeibnizAlgebra,
    x: &Element,
) -> Result<(Subspace, Subspace), AlgebraError> {
    let lx = a.mult_operator(x, Side::Left)?;
    Ok(fitting_of(&lx))
}

fn fitting_of(op: &Matrix) -> (Subspace, Subspace) {
    let p = op.pow(op.rows());
    (p.kernel(), p.image())
}

/// Primary decomposition of `L_a` split by field-rational eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub element: Element,
    pub minimal_polynomial: Polynomial,
    /// `(c_i, d_i)`: roots of the minimal polynomial in the field with multiplicity.
    pub roots: Vec<(Scalar, usize)>,
    /// `ker (L_a - c_i)^{d_i}`, one per root.
    pub components: Vec<Subspace>,
    /// Sum of the root components.
    pub split_part: Subspace,
    /// `ker q(L_a)` for the root-free cofactor `q`.
    pub nonsplit_part: Subspace,
    /// `∏ (x - c_i)` over the distinct roots.
    pub m1: Polynomial,
    pub cofactor: Polynomial,
}

pub fn primary_split(a: &LeibnizAlgebra, x: &Element) -> Result<SplitDecomposition, AlgebraError> {
    let la = a.mult_operator(x, Side::Left)?;
    let minimal_polynomial = la.minimal_polynomial()?;
    let split = minimal_polynomial.linear_root_split()?;
    let field = a.field();
    let mut components = Vec::with_capacity(split.roots.len());
    let mut split_part = a.zero_space();
    let mut m1 = Polynomial::one(field);
    for (c, d) in &split.roots {
        let comp = la.shift(c).pow(*d).kernel();
        split_part = split_part.sum(&comp);
        components.push(comp);
        m1 = &m1 * &Polynomial::linear(c);
    }
    let nonsplit_part = split.cofactor.eval_matrix(&la).kernel();
    Ok(SplitDecomposition {
        element: x.clone(),
        minimal_polynomial,
        roots: split.roots,
        components,
        split_part,
        nonsplit_part,
        m1,
        cofactor: split.cofactor,
    })
}

/// A nonzero `v` spanning a one-dimensional ideal, i.e. a common eigenvector
/// of every `L_{e_i}` and `R_{e_i}`.
///
/// Backtracks over the field roots of each operator's characteristic
/// polynomial, intersecting the running subspace with the chosen eigenspace.
/// Joint eigenspaces for distinct eigenvalue choices are independent, so at
/// most `n` branches stay alive at any depth.
pub fn find_one_dim_ideal(a: &LeibnizAlgebra) -> Result<Option<Element>, AlgebraError> {
    a.require_validated()?;
    if a.dim() == 0 {
        return Ok(None);
    }
    let mut ops = Vec::with_capacity(2 * a.dim());
    for i in 0..a.dim() {
        let e = a.basis_element(i);
        for side in [Side::Left, Side::Right] {
            let op = a.operator_unchecked(e.coords(), side);
            if !op.is_zero() {
                ops.push(op);
            }
        }
    }
    Ok(eigen_search(&ops, a.full_space())?.map(|w| Element::new(w.basis()[0].clone())))
}

/// Eigenvalues of `op` with an eigenvector inside `w` are eigenvalues of the
/// compression `P·op·B` (`B` the canonical basis of `w`, `P` its pivot
/// projection), so only a `dim w` sized polynomial is split per step.
fn eigen_search(ops: &[Matrix], w: Subspace) -> Result<Option<Subspace>, AlgebraError> {
    let Some((op, rest)) = ops.split_first() else {
        return Ok(Some(w));
    };
    let field = w.field();
    let k = w.dim();
    let images: Vec<Vec<Scalar>> = w.basis().iter().map(|b| op.mul_vec(b)).collect();
    let pivots = w.pivots();
    let compressed = Matrix::from_fn(field, k, k, |i, j| images[j][pivots[i]].clone());
    let chi = compressed.characteristic_polynomial()?;
    for (c, _) in chi.linear_root_split()?.roots {
        // (op - c)·B x = 0, solved in w's coordinates
        let system = Matrix::from_fn(field, w.ambient(), k, |r, j| {
            &images[j][r] - &(&c * &w.basis()[j][r])
        });
        let kernel = system.kernel();
        if kernel.is_zero() {
            continue;
        }
        let narrowed = Subspace::span(
            field,
            w.ambient(),
            kernel.basis().iter().map(|x| {
                let mut v = vec![field.zero(); w.ambient()];
                for (xj, bj) in x.iter().zip(w.basis()) {
                    if !xj.is_zero() {
                        for (vr, br) in v.iter_mut().zip(bj) {
                            *vr = &*vr + &(xj * br);
                        }
                    }
                }
                v
            }),
        );
        if let Some(found) = eigen_search(rest, narrowed)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// A chain of ideals `0 = I_0 ⊂ I_1 ⊂ … ⊂ I_n = L` with `dim I_k = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagCertificate {
    pub chain: Vec<Subspace>,
}

impl FlagCertificate {
    /// Independent check of the certificate against `a`.
    pub fn verify(&self, a: &LeibnizAlgebra) -> bool {
        let n = a.dim();
        if self.chain.len() != n + 1 {
            return false;
        }
        self.chain.iter().enumerate().all(|(k, ideal)| {
            ideal.ambient() == n
                && ideal.dim() == k
                && a.is_invariant(ideal, ClosureMode::Ideal).unwrap_or(false)
                && (k == 0 || ideal.contains_subspace(&self.chain[k - 1]))
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

/// Full flag of ideals, if one exists.
///
/// Greedy: take any one-dimensional ideal, pass to the quotient, recurse and
/// pull the chain back. This is complete because supersolvability passes to
/// quotients, so no choice of line can lead to a dead end.
pub fn is_supersolvable(a: &LeibnizAlgebra) -> Result<Option<FlagCertificate>, AlgebraError> {
    a.require_validated()?;
    Ok(flag_chain(a)?.map(|chain| FlagCertificate { chain }))
}

fn flag_chain(a: &LeibnizAlgebra) -> Result<Option<Vec<Subspace>>, AlgebraError> {
    if a.dim() == 0 {
        return Ok(Some(vec![a.zero_space()]));
    }
    let Some(v) = find_one_dim_ideal(a)? else {
        return Ok(None);
    };
    let line = a.span_of(&[v])?;
    let q = a.quotient(&line)?;
    let Some(sub) = flag_chain(&q.algebra)? else {
        return Ok(None);
    };
    let mut chain = Vec::with_capacity(a.dim() + 1);
    chain.push(a.zero_space());
    for j in sub {
        chain.push(line.sum(&j.map(&q.section)));
    }
    Ok(Some(chain))
}

/// Audit of the criterion "supersolvable ⟺ `L·L` nilpotent and every
/// `L*_0(a)` is the whole space" on a sample of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCriterionReport {
    pub strongly_solvable: bool,
    /// Per sample: is the split part of `L_a` the whole space?
    pub samples_split: Vec<bool>,
    pub flag_exists: bool,
    /// Index of the first sample whose split part is proper, if any. Such a
    /// sample proves the algebra is not supersolvable.
    pub non_split_witness: Option<usize>,
    pub consistent: bool,
}

pub fn check_split_criterion(
    a: &LeibnizAlgebra,
    samples: &[Element],
) -> Result<SplitCriterionReport, AlgebraError> {
    let strongly_solvable = is_strongly_solvable(a)?;
    let mut samples_split = Vec::with_capacity(samples.len());
    for s in samples {
        samples_split.push(primary_split(a, s)?.split_part.is_full());
    }
    let flag_exists = is_supersolvable(a)?.is_some();
    let conditions = strongly_solvable && samples_split.iter().all(|&b| b);
    Ok(SplitCriterionReport {
        strongly_solvable,
        non_split_witness: samples_split.iter().position(|&b| !b),
        samples_split,
        flag_exists,
        consistent: conditions == flag_exists,
    })
}

/// The sample with the smallest Fitting null component of `L_z`, and that
/// component (a Cartan subalgebra candidate; self-normalization is not
/// checked).
pub fn find_regular_element(
    a: &LeibnizAlgebra,
    samples: &[Element],
) -> Result<(Element, Subspace), AlgebraError> {
    let mut best: Option<(Element, Subspace)> = None;
    for s in samples {
        let (l0, _) = fitting_components(a, s)?;
        if best.as_ref().is_none_or(|(_, b)| l0.dim() < b.dim()) {
            best = Some((s.clone(), l0));
        }
    }
    best.ok_or(AlgebraError::EmptySamples)
}

/// `(L_z^k x)·(L_z^k y)` for every `k` in `0..=cutoff`.
pub fn d_values(
    a: &LeibnizAlgebra,
    x: &Element,
    y: &Element,
    z: &Element,
    cutoff: usize,
) -> Result<Vec<Element>, AlgebraError> {
    a.check_element(x)?;
    a.check_element(y)?;
    let lz = a.mult_operator(z, Side::Left)?;
    let mut u = x.coords().to_vec();
    let mut v = y.coords().to_vec();
    let mut out = Vec::with_capacity(cutoff + 1);
    for k in 0..=cutoff {
        if k > 0 {
            u = lz.mul_vec(&u);
            v = lz.mul_vec(&v);
        }
        out.push(Element::new(a.mul_coords(&u, &v)));
    }
    Ok(out)
}

/// A triple with `d_k(x, y, z) != 0` for some `k > dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub k: usize,
    pub value: Element,
}

/// Scans ordered sample triples `(x, y, z)` lexicographically for
/// `d_k != 0` with `k ∈ (n, 2n]`, visiting at most `budget` triples.
///
/// For `k ≥ n` the image of `L_z^k` is the Fitting one component `L_1(z)`,
/// so a `z` with `L_1(z)·L_1(z) = 0` cannot contribute and is skipped.
pub fn search_d_witness(
    a: &LeibnizAlgebra,
    samples: &[Element],
    budget: Option<usize>,
) -> Result<Option<DWitness>, AlgebraError> {
    let n = a.dim();
    let mut ops = Vec::with_capacity(samples.len());
    for z in samples {
        let lz = a.mult_operator(z, Side::Left)?;
        let (_, l1) = fitting_of(&lz);
        let live = !a.product_unchecked(&l1, &l1).is_zero();
        ops.push((lz.pow(n + 1), lz, live));
    }
    let mut visited = 0usize;
    for (xi, x) in samples.iter().enumerate() {
        for (yi, y) in samples.iter().enumerate() {
            for (zi, (start, lz, live)) in ops.iter().enumerate() {
                if budget.is_some_and(|b| visited >= b) {
                    return Ok(None);
                }
                visited += 1;
                if !live {
                    continue;
                }
                let mut u = start.mul_vec(x.coords());
                let mut v = start.mul_vec(y.coords());
                for k in n + 1..=2 * n {
                    if k > n + 1 {
                        u = lz.mul_vec(&u);
                        v = lz.mul_vec(&v);
                    }
                    let d = a.mul_coords(&u, &v);
                    if d.iter().any(|c| !c.is_zero()) {
                        return Ok(Some(DWitness {
                            x: xi,
                            y: yi,
                            z: zi,
                            k,
                            value: Element::new(d),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbNilOutcome {
    /// Abelian ideal `ideal` with nilpotent quotient.
    Yes { ideal: Subspace },
    /// Sampled triple with `d_k != 0` for some `k > dim`.
    No(DWitness),
    /// Neither a witness nor a constructive certificate was found.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbNilVerdict {
    pub outcome: AbNilOutcome,
    pub regular_element: Element,
    pub fitting_null: Subspace,
    pub fitting_one: Subspace,
}

impl AbNilVerdict {
    pub fn holds(&self) -> Option<bool> {
        match self.outcome {
            AbNilOutcome::Yes { .. } => Some(true),
            AbNilOutcome::No(_) => Some(false),
            AbNilOutcome::Unknown => None,
        }
    }
}

/// Abelian-by-nilpotent decision on a sample of elements.
///
/// A sampled `d`-witness refutes the property outright. Otherwise the Fitting
/// one component of the most regular sample is tried as the abelian ideal.
pub fn is_abelian_by_nilpotent(
    a: &LeibnizAlgebra,
    samples: &[Element],
) -> Result<AbNilVerdict, AlgebraError> {
    a.require_validated()?;
    let (z, fitting_null) = if a.dim() == 0 {
        (a.zero_element(), a.zero_space())
    } else {
        find_regular_element(a, samples)?
    };
    let (_, fitting_one) = fitting_components(a, &z)?;
    let outcome = if let Some(w) = search_d_witness(a, samples, None)? {
        AbNilOutcome::No(w)
    } else if abelian_ideal_with_nilpotent_quotient(a, &fitting_one)? {
        AbNilOutcome::Yes {
            ideal: fitting_one.clone(),
        }
    } else {
        AbNilOutcome::Unknown
    };
    Ok(AbNilVerdict {
        outcome,
        regular_element: z,
        fitting_null,
        fitting_one,
    })
}

/// `A·A = 0`, `A` an ideal, and `L/A` nilpotent.
pub fn abelian_ideal_with_nilpotent_quotient(
    a: &LeibnizAlgebra,
    ideal: &Subspace,
) -> Result<bool, AlgebraError> {
    if !a.subspace_product(ideal, ideal)?.is_zero() {
        return Ok(false);
    }
    if !a.is_invariant(ideal, ClosureMode::Ideal)? {
        return Ok(false);
    }
    let q = a.quotient(ideal)?;
    Ok(series(&q.algebra, SeriesKind::LowerCentral).terminated)
}
