//! Generated-subalgebra experiments.
//!
//! A property is *n-recognizable* when an algebra has it as soon as every
//! subalgebra generated by `n` elements does. This module samples elements,
//! closes `n`-subsets of them into subalgebras, evaluates a property on each
//! induced subalgebra, and compares against the whole algebra. It also
//! computes the `e`/`f`/`d` element sequences whose vanishing characterizes
//! strong solvability and the abelian-by-nilpotent class, and audits the
//! supporting structural facts on sampled data.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, CentralizerKind, ClosureMode, Element, LeibnizAlgebra, Side};
use crate::analysis::{self, DWitness};
use crate::exactmath::{Field, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecogError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unsupported generator count {0}; expected 2 or 3")]
    UnsupportedArity(usize),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}

/// `e_k = L_{xy}^k (x)` and `f_k = L_{xy}^k (y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePair {
    pub x: Element,
    pub y: Element,
    pub e: Vec<Element>,
    pub f: Vec<Element>,
    /// First index from which every later `e_k` vanishes.
    pub e_vanish: Option<usize>,
    pub f_vanish: Option<usize>,
}

/// Computes `e_0..=e_N` and `f_0..=f_N`, `N` defaulting to `dim`.
///
/// Once `L_{xy}^k v = 0` every later term is zero, and if `L_{xy}^{dim} v != 0`
/// the sequence never vanishes, so the vanish indices are exact at `N = dim`.
pub fn e_f_sequences(
    a: &LeibnizAlgebra,
    x: &Element,
    y: &Element,
    cutoff: Option<usize>,
) -> Result<SequencePair, AlgebraError> {
    let xy = a.multiply(x, y)?;
    let op = a.mult_operator(&xy, Side::Left)?;
    let n = cutoff.unwrap_or(a.dim());
    let iterate = |start: &Element| {
        let mut out = vec![start.clone()];
        for _ in 0..n {
            let next = Element::new(op.mul_vec(out.last().unwrap().coords()));
            out.push(next);
        }
        out
    };
    let e = iterate(x);
    let f = iterate(y);
    Ok(SequencePair {
        x: x.clone(),
        y: y.clone(),
        e_vanish: vanish_index(&e),
        f_vanish: vanish_index(&f),
        e,
        f,
    })
}

fn vanish_index(seq: &[Element]) -> Option<usize> {
    seq.iter().position(Element::is_zero)
}

/// `d_k = (L_z^k x)·(L_z^k y)` for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSequence {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    pub d: Vec<Element>,
    pub first_nonzero: Option<usize>,
    /// First `k > dim` with `d_k != 0`.
    pub first_nonzero_beyond_dim: Option<usize>,
}

/// `d_0..=d_K` with `K` defaulting to `2·dim`.
pub fn d_sequence(
    a: &LeibnizAlgebra,
    x: &Element,
    y: &Element,
    z: &Element,
    cutoff: Option<usize>,
) -> Result<TripleSequence, AlgebraError> {
    let k = cutoff.unwrap_or(2 * a.dim());
    let d = analysis::d_values(a, x, y, z, k)?;
    let n = a.dim();
    Ok(TripleSequence {
        x: x.clone(),
        y: y.clone(),
        z: z.clone(),
        first_nonzero: d.iter().position(|v| !v.is_zero()),
        first_nonzero_beyond_dim: d
            .iter()
            .enumerate()
            .skip(n + 1)
            .find(|(_, v)| !v.is_zero())
            .map(|(i, _)| i),
        d,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SampleStrategy {
    /// Basis vectors, then pairwise sums `e_i + e_j`, then random vectors.
    #[default]
    Default,
    BasisOnly,
    Random,
}

/// Default sample budget for an algebra of dimension `dim`.
pub fn default_sample_count(dim: usize) -> usize {
    2 * dim + 8
}

/// Deterministic element sample of length at most `count`.
///
/// Random coordinates have numerators in `[-2, 2]` and denominators in
/// `{1, 2}`, drawn from a ChaCha8 stream seeded by `seed`. The zero vector and
/// duplicates are dropped.
pub fn sample_elements(
    a: &LeibnizAlgebra,
    count: usize,
    seed: u64,
    strategy: SampleStrategy,
) -> Vec<Element> {
    let n = a.dim();
    let field = a.field();
    let mut out: Vec<Element> = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    let mut push = |e: Element, out: &mut Vec<Element>| {
        if out.len() < count && !e.is_zero() && seen.insert(e.clone()) {
            out.push(e);
        }
    };
    if n == 0 {
        return out;
    }
    if strategy != SampleStrategy::Random {
        for i in 0..n {
            push(a.basis_element(i), &mut out);
        }
    }
    if strategy == SampleStrategy::Default {
        for i in 0..n {
            for j in i + 1..n {
                push(a.basis_element(i).add(&a.basis_element(j)), &mut out);
            }
        }
    }
    if strategy == SampleStrategy::BasisOnly {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let halves = field.from_ratio(1, 2).is_some();
    let mut attempts = 0;
    while out.len() < count && attempts < 64 * count.max(1) {
        attempts += 1;
        let coords = (0..n)
            .map(|_| {
                let num = rng.gen_range(-2i64..=2);
                let den = if halves && rng.gen_bool(0.5) { 2 } else { 1 };
                field.from_ratio(num, den).expect("nonzero denominator")
            })
            .collect();
        push(Element::new(coords), &mut out);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Solvable,
    StronglySolvable,
    Supersolvable,
    AbelianByNilpotent,
    Nilpotent,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Solvable,
        Property::StronglySolvable,
        Property::Supersolvable,
        Property::AbelianByNilpotent,
        Property::Nilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Solvable => "solvable",
            Property::StronglySolvable => "strongly_solvable",
            Property::Supersolvable => "supersolvable",
            Property::AbelianByNilpotent => "abelian_by_nilpotent",
            Property::Nilpotent => "nilpotent",
        }
    }

    /// Whether the property is known to be `n`-recognizable over `field`.
    /// Only characteristic zero is asserted; prime fields are exploratory.
    pub fn asserted_recognizable(self, n: usize, field: Field) -> bool {
        if !field.is_rational() {
            return false;
        }
        match self {
            Property::AbelianByNilpotent => n >= 3,
            _ => n >= 2,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = RecogError;
    fn from_str(s: &str) -> Result<Property, RecogError> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| RecogError::UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl Verdict {
    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Evaluates `property` on `a` itself. The abelian-by-nilpotent check draws
/// its own default sample using `seed`.
pub fn evaluate_property(
    a: &LeibnizAlgebra,
    property: Property,
    seed: u64,
) -> Result<Verdict, AlgebraError> {
    Ok(match property {
        Property::Solvable => Verdict::from_bool(analysis::is_solvable(a)?),
        Property::StronglySolvable => Verdict::from_bool(analysis::is_strongly_solvable(a)?),
        Property::Supersolvable => Verdict::from_bool(analysis::is_supersolvable(a)?.is_some()),
        Property::Nilpotent => Verdict::from_bool(analysis::is_nilpotent(a)?),
        Property::AbelianByNilpotent => {
            let samples = sample_elements(
                a,
                default_sample_count(a.dim()),
                seed,
                SampleStrategy::Default,
            );
            match analysis::is_abelian_by_nilpotent(a, &samples)?.holds() {
                Some(b) => Verdict::from_bool(b),
                None => Verdict::Unknown,
            }
        }
    })
}

/// One `n`-subset of the sample and its generated subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleRow {
    pub indices: Vec<usize>,
    pub dim: usize,
    pub proper: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Consistency {
    /// No contradiction with the recognizability statement.
    Consistent,
    /// Every sampled subalgebra has the property but the algebra does not,
    /// although recognizability is asserted: a soundness alarm.
    SoundnessFailure,
    /// Recognizability is not asserted for this `(property, n)`; the flag
    /// records whether this algebra is a counterexample on the sample.
    NotAsserted { counterexample: bool },
    /// Prime-field run: reported, never alarmed.
    Exploratory { counterexample: bool },
}

impl Consistency {
    pub fn name(self) -> &'static str {
        match self {
            Consistency::Consistent => "consistent",
            Consistency::SoundnessFailure => "soundness_failure",
            Consistency::NotAsserted { .. } => "not_asserted",
            Consistency::Exploratory { .. } => "exploratory",
        }
    }

    pub fn is_alarm(self) -> bool {
        self == Consistency::SoundnessFailure
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizabilityReport {
    pub property: Property,
    pub n: usize,
    pub field: Field,
    pub samples: Vec<Element>,
    pub rows: Vec<TupleRow>,
    pub whole: Verdict,
    pub consistency: Consistency,
}

impl RecognizabilityReport {
    pub fn all_rows_hold(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Holds)
    }

    pub fn proper_rows(&self) -> impl Iterator<Item = &TupleRow> {
        self.rows.iter().filter(|r| r.proper)
    }

    pub fn proper_rows_hold(&self) -> bool {
        self.proper_rows().all(|r| r.verdict == Verdict::Holds)
    }

    /// Every proper sampled subalgebra has the property while the algebra
    /// fails it.
    pub fn proper_counterexample(&self) -> bool {
        self.whole == Verdict::Fails && self.proper_rows_hold()
    }
}

/// Runs the recognizability experiment for `property` on every `n`-subset of
/// `samples` (lexicographic index order).
pub fn check_recognizability(
    a: &LeibnizAlgebra,
    property: Property,
    n: usize,
    samples: &[Element],
    seed: u64,
) -> Result<RecognizabilityReport, RecogError> {
    if !(2..=3).contains(&n) {
        return Err(RecogError::UnsupportedArity(n));
    }
    a.require_validated()?;
    for s in samples {
        a.check_element(s)?;
    }
    let whole = evaluate_property(a, property, seed)?;
    let full = a.full_space();
    let mut memo: HashMap<Subspace, Verdict> = HashMap::new();
    memo.insert(full, whole);
    let mut rows = Vec::new();
    for indices in combinations(samples.len(), n) {
        let gens: Vec<Element> = indices.iter().map(|&i| samples[i].clone()).collect();
        let closure = a.generated_closure(&gens, ClosureMode::Subalgebra)?;
        let dim = closure.dim();
        let verdict = match memo.get(&closure) {
            Some(v) => *v,
            None => {
                let (sub, _) = a.induced_subalgebra(&closure)?;
                let v = evaluate_property(&sub, property, seed)?;
                memo.insert(closure, v);
                v
            }
        };
        rows.push(TupleRow {
            indices,
            dim,
            proper: dim < a.dim(),
            verdict,
        });
    }
    let all_hold = rows.iter().all(|r| r.verdict == Verdict::Holds);
    let counterexample = whole == Verdict::Fails && all_hold;
    let consistency = if !a.field().is_rational() {
        Consistency::Exploratory { counterexample }
    } else if property.asserted_recognizable(n, a.field()) {
        if counterexample {
            Consistency::SoundnessFailure
        } else {
            Consistency::Consistent
        }
    } else {
        let proper_hold = rows
            .iter()
            .filter(|r| r.proper)
            .all(|r| r.verdict == Verdict::Holds);
        Consistency::NotAsserted {
            counterexample: whole == Verdict::Fails && proper_hold,
        }
    };
    Ok(RecognizabilityReport {
        property,
        n,
        field: a.field(),
        samples: samples.to_vec(),
        rows,
        whole,
        consistency,
    })
}

fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessMode {
    /// Non-vanishing `e`/`f` sequences.
    Ef,
    /// `d_k != 0` beyond the dimension.
    D,
}

impl FromStr for WitnessMode {
    type Err = String;
    fn from_str(s: &str) -> Result<WitnessMode, String> {
        match s {
            "ef" => Ok(WitnessMode::Ef),
            "d" => Ok(WitnessMode::D),
            other => Err(format!("unknown witness mode `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EfSide {
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `e_n(x, y)` (or `f_n`) is nonzero at `n = dim`, so the sequence never
    /// vanishes. `x`, `y` index into the sample list.
    Ef {
        x: usize,
        y: usize,
        side: EfSide,
        n: usize,
        value: Element,
    },
    D(DWitness),
}

/// First witness in lexicographic order over ordered sample pairs (mode `ef`)
/// or triples (mode `d`); `budget` caps the number of tuples visited.
pub fn witness_search(
    a: &LeibnizAlgebra,
    mode: WitnessMode,
    samples: &[Element],
    budget: Option<usize>,
) -> Result<Option<Witness>, AlgebraError> {
    a.require_validated()?;
    match mode {
        WitnessMode::D => Ok(analysis::search_d_witness(a, samples, budget)?.map(Witness::D)),
        WitnessMode::Ef => {
            let n = a.dim();
            let mut visited = 0usize;
            for (xi, x) in samples.iter().enumerate() {
                for (yi, y) in samples.iter().enumerate() {
                    if budget.is_some_and(|b| visited >= b) {
                        return Ok(None);
                    }
                    visited += 1;
                    let seq = e_f_sequences(a, x, y, None)?;
                    for (side, terms) in [(EfSide::E, &seq.e), (EfSide::F, &seq.f)] {
                        let last = &terms[n];
                        if !last.is_zero() {
                            return Ok(Some(Witness::Ef {
                                x: xi,
                                y: yi,
                                side,
                                n,
                                value: last.clone(),
                            }));
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Pass/fail tally for one audited statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct AuditStatus {
    pub checked: usize,
    pub failures: usize,
}

impl AuditStatus {
    pub fn passed(self) -> bool {
        self.failures == 0
    }

    pub fn vacuous(self) -> bool {
        self.checked == 0
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
        }
    }

    pub fn label(self) -> &'static str {
        if !self.passed() {
            "fail"
        } else if self.vacuous() {
            "vacuous"
        } else {
            "pass"
        }
    }
}

/// Sampled checks of the structural facts behind recognizability.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AuditReport {
    /// Pairs generating the whole algebra with vanishing `e`/`f` sequences
    /// have a nilpotent `L_{xy}`.
    pub generating_pair_nilpotent: AuditStatus,
    /// `L*_0(a)` is closed under the product.
    pub split_part_subalgebra: AuditStatus,
    /// `L·L` two-sidedly centralizes every one-dimensional ideal found.
    pub square_centralizes_line: AuditStatus,
    /// A full flag of ideals implies `L·L` nilpotent.
    pub flag_implies_strongly_solvable: AuditStatus,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.entries().iter().all(|(_, s)| s.passed())
    }

    pub fn entries(&self) -> [(&'static str, AuditStatus); 4] {
        [
            ("generating_pair_nilpotent", self.generating_pair_nilpotent),
            ("split_part_subalgebra", self.split_part_subalgebra),
            ("square_centralizes_line", self.square_centralizes_line),
            (
                "flag_implies_strongly_solvable",
                self.flag_implies_strongly_solvable,
            ),
        ]
    }
}

pub fn property_audit(
    a: &LeibnizAlgebra,
    samples: &[Element],
) -> Result<AuditReport, AlgebraError> {
    a.require_validated()?;
    let n = a.dim();
    let mut report = AuditReport::default();

    for (i, x) in samples.iter().enumerate() {
        for y in &samples[i + 1..] {
            let closure = a.generated_closure(&[x.clone(), y.clone()], ClosureMode::Subalgebra)?;
            if !closure.is_full() {
                continue;
            }
            let seq = e_f_sequences(a, x, y, None)?;
            if seq.e_vanish.is_none() || seq.f_vanish.is_none() {
                continue;
            }
            let xy = a.multiply(x, y)?;
            let op = a.mult_operator(&xy, Side::Left)?;
            report.generating_pair_nilpotent.record(op.pow(n).is_zero());
        }
    }

    for s in samples {
        let split = analysis::primary_split(a, s)?.split_part;
        let sq = a.subspace_product(&split, &split)?;
        report
            .split_part_subalgebra
            .record(split.contains_subspace(&sq));
    }

    let full = a.full_space();
    let square = a.subspace_product(&full, &full)?;
    if let Some(v) = analysis::find_one_dim_ideal(a)? {
        let line = a.span_of(&[v])?;
        let cent = a.centralizer(&line, CentralizerKind::TwoSided)?;
        let left = a.subspace_product(&square, &line)?.is_zero();
        let right = a.subspace_product(&line, &square)?.is_zero();
        report
            .square_centralizes_line
            .record(left && right && cent.contains_subspace(&square));
    }

    if analysis::is_supersolvable(a)?.is_some() {
        report
            .flag_implies_strongly_solvable
            .record(analysis::is_strongly_solvable(a)?);
    }
    Ok(report)
}

/// Where the "`B` lies in the Frattini ideal" hypothesis comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrattiniBasis {
    /// The caller vouched for it.
    Asserted,
    /// `L` is nilpotent and `B ⊆ L·L`; every maximal subalgebra of a
    /// nilpotent algebra contains `L·L`.
    NilpotentSquare,
    /// No basis for the hypothesis; the implication is not checked.
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftStatus {
    Holds,
    /// `L/B` is not supersolvable, so nothing is claimed.
    Vacuous,
    /// Hypothesis unsupported.
    Unchecked,
    /// `L/B` supersolvable, hypothesis valid, `L` not supersolvable.
    Violated,
}

impl LiftStatus {
    pub fn name(self) -> &'static str {
        match self {
            LiftStatus::Holds => "holds",
            LiftStatus::Vacuous => "vacuous",
            LiftStatus::Unchecked => "unchecked",
            LiftStatus::Violated => "violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrattiniLiftReport {
    pub basis: FrattiniBasis,
    pub quotient_supersolvable: bool,
    pub algebra_supersolvable: bool,
    pub status: LiftStatus,
}

/// Checks "`L/B` supersolvable ⟹ `L` supersolvable" for an ideal `B`
/// inside the Frattini ideal.
pub fn check_frattini_lift(
    a: &LeibnizAlgebra,
    b: &Subspace,
    asserted_frattini: bool,
) -> Result<FrattiniLiftReport, AlgebraError> {
    a.require_validated()?;
    let q = a.quotient(b)?;
    let basis = if asserted_frattini {
        FrattiniBasis::Asserted
    } else {
        let full = a.full_space();
        let square = a.subspace_product(&full, &full)?;
        if analysis::is_nilpotent(a)? && square.contains_subspace(b) {
            FrattiniBasis::NilpotentSquare
        } else {
            FrattiniBasis::Unsupported
        }
    };
    let quotient_supersolvable = analysis::is_supersolvable(&q.algebra)?.is_some();
    let algebra_supersolvable = analysis::is_supersolvable(a)?.is_some();
    let status = match (basis, quotient_supersolvable, algebra_supersolvable) {
        (FrattiniBasis::Unsupported, _, _) => LiftStatus::Unchecked,
        (_, false, _) => LiftStatus::Vacuous,
        (_, true, true) => LiftStatus::Holds,
        (_, true, false) => LiftStatus::Violated,
    };
    Ok(FrattiniLiftReport {
        basis,
        quotient_supersolvable,
        algebra_supersolvable,
        status,
    })
}

/// Helper for reports: exact coordinates joined by commas.
pub fn format_coords(e: &Element) -> String {
    e.coords()
        .iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
