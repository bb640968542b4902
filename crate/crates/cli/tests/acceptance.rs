//! Acceptance criteria 1–8. Each test writes one `PASS`/`FAIL` line straight
//! to stdout (bypassing the harness capture) and then asserts.
//!
//! All checks are exact: zero tolerance, rational arithmetic throughout.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use leibniz_cli::{parse_algebra_file, run_command, serialize_algebra};
use leibniz_core::algebra::{Element, LeibnizAlgebra, Side};
use leibniz_core::analysis;
use leibniz_core::constructions::{self, random_invertible, ExpectedFlags};
use leibniz_core::exactmath::{Field, Matrix};
use leibniz_core::recognizability::{
    d_sequence, default_sample_count, e_f_sequences, property_audit, sample_elements,
    SampleStrategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;

struct Corpus {
    _dir: tempfile::TempDir,
    entries: Vec<(String, PathBuf, LeibnizAlgebra)>,
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let out = run_command([
            "leibniz",
            "corpus",
            "--out",
            dir.path().to_str().unwrap(),
            "--seed",
            "0",
        ]);
        assert_eq!(out.status, 0, "{}", out.stderr);
        let mut names: Vec<PathBuf> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "alg"))
            .collect();
        names.sort();
        let entries = names
            .into_iter()
            .map(|p| {
                let a = parse_algebra_file(&fs::read_to_string(&p).unwrap()).unwrap();
                assert!(a.is_validated(), "{}", p.display());
                let name = p.file_stem().unwrap().to_string_lossy().into_owned();
                (name, p, a)
            })
            .collect();
        Corpus { _dir: dir, entries }
    })
}

fn report(criterion: u32, title: &str, ok: bool, detail: &str) {
    let line = format!(
        "criterion {criterion} [{title}]: {} ({detail})\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn kv(args: &[&str]) -> (i32, BTreeMap<String, String>, String) {
    let out = run_command(args.iter().copied());
    let map = out
        .stdout
        .lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    (out.status, map, out.stdout)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn criterion_1_extension_example() {
    let dir = tempfile::tempdir().unwrap();
    let entry = constructions::build_named("heisenberg_extension", &[]).unwrap();
    let file = dir.path().join("heisenberg_extension.alg");
    fs::write(&file, serialize_algebra(&entry.algebra)).unwrap();
    let f = path_str(&file);
    let mut failures = Vec::new();

    let (status, flags, _) = kv(&["leibniz", "analyze", f, "--format", "kv"]);
    let expect = [
        ("flags.solvable", "true"),
        ("flags.strongly_solvable", "true"),
        ("flags.supersolvable", "true"),
        ("flags.nilpotent", "false"),
        ("flags.abelian_by_nilpotent", "false"),
    ];
    if status != 0 {
        failures.push(format!("analyze exit {status}"));
    }
    for (k, v) in expect {
        if flags.get(k).map(String::as_str) != Some(v) {
            failures.push(format!("{k} = {:?}", flags.get(k)));
        }
    }

    let (status, w, _) = kv(&["leibniz", "witness", "--mode", "d", f, "--format", "kv"]);
    let ok_w = status == 0
        && w.get("witness.found").map(String::as_str) == Some("true")
        && w.get("witness.k").map(String::as_str) == Some("5")
        && w.get("witness.x").map(String::as_str) == Some("1,0,0,0")
        && w.get("witness.y").map(String::as_str) == Some("0,1,0,0")
        && w.get("witness.z").map(String::as_str) == Some("0,0,0,1")
        && w.get("witness.value").map(String::as_str) == Some("0,0,1,0");
    if !ok_w {
        failures.push(format!("witness {w:?}"));
    }

    // the hand witness (x, y, d) gives d_k = z for every k
    let a = &entry.algebra;
    let [x, y, _, d] = [0, 1, 2, 3].map(|i| a.basis_element(i));
    let seq = d_sequence(a, &x, &y, &d, None).unwrap();
    if !seq.d.iter().all(|v| *v == a.basis_element(2)) || seq.first_nonzero_beyond_dim != Some(5) {
        failures.push("hand witness sequence".into());
    }

    let (status, r, _) = kv(&[
        "leibniz",
        "recog",
        "--n",
        "2",
        "--prop",
        "abelian_by_nilpotent",
        f,
        "--format",
        "kv",
    ]);
    let proper: usize = r.get("recog.proper_rows").map_or(0, |v| v.parse().unwrap());
    let ok_r = status == 0
        && proper > 0
        && r.get("recog.proper_rows_hold").map(String::as_str) == Some("true")
        && r.get("recog.whole").map(String::as_str) == Some("false")
        && r.get("recog.counterexample").map(String::as_str) == Some("true")
        && r.get("recog.consistency").map(String::as_str) == Some("not_asserted");
    if !ok_r {
        failures.push("recog abelian_by_nilpotent n=2".into());
    }

    let ok = failures.is_empty();
    let detail = if ok {
        format!("flags exact, d-witness (x,y,d) at k=5 with value z, {proper} proper 2-generated subalgebras all hold, whole fails")
    } else {
        failures.join("; ")
    };
    report(1, "4-dim split extension reproduces", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_2_two_recognizability_soundness() {
    let c = corpus();
    let mut reports = 0;
    let mut failures = Vec::new();
    for (name, path, _) in &c.entries {
        for prop in [
            "solvable",
            "strongly_solvable",
            "supersolvable",
            "nilpotent",
        ] {
            let (status, r, _) = kv(&[
                "leibniz",
                "recog",
                "--n",
                "2",
                "--prop",
                prop,
                path_str(path),
                "--format",
                "kv",
            ]);
            reports += 1;
            if status != 0 || r.get("recog.consistency").map(String::as_str) != Some("consistent") {
                failures.push(format!("{name}/{prop}: exit {status}"));
            }
        }
    }
    let ok = failures.is_empty() && c.entries.len() >= 30;
    let detail = format!(
        "{} entries, {reports} reports, {} consistency failures",
        c.entries.len(),
        failures.len()
    );
    report(2, "2-recognizability soundness over Q", ok, &detail);
    assert!(ok, "{detail}: {failures:?}");
}

#[test]
fn criterion_3_strong_solvability_sequences() {
    let c = corpus();
    let mut pairs = 0usize;
    let mut entries = 0usize;
    let mut violations = Vec::new();
    let mut reverse_instances = 0usize;
    for (name, _, a) in &c.entries {
        let flags = analysis::classify(a).unwrap();
        if flags.solvable && !flags.strongly_solvable {
            reverse_instances += 1;
        }
        if !flags.strongly_solvable {
            continue;
        }
        entries += 1;
        let samples = sample_elements(a, default_sample_count(a.dim()), 0, SampleStrategy::Default);
        for x in &samples {
            for y in &samples {
                pairs += 1;
                let s = e_f_sequences(a, x, y, None).unwrap();
                let bounded = |v: Option<usize>| v.is_some_and(|k| k <= a.dim());
                if !bounded(s.e_vanish) || !bounded(s.f_vanish) {
                    violations.push(name.clone());
                }
            }
        }
    }
    let ok = violations.is_empty() && reverse_instances == 0 && pairs > 0;
    let detail = format!(
        "{entries} strongly solvable entries, {pairs} ordered pairs, {} violations; reverse direction vacuous over Q ({reverse_instances} solvable non-strongly-solvable entries)",
        violations.len()
    );
    report(3, "e/f sequences vanish for strongly solvable", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_4_split_criterion() {
    let c = corpus();
    let mut checked = 0;
    let mut flags = 0;
    let mut failures = Vec::new();
    let names: Vec<String> = c.entries.iter().map(|(n, _, _)| n.clone()).collect();
    assert!(names.contains(&"sl2".to_string()) && names.contains(&"rotation_3dim".to_string()));
    for (name, _, a) in &c.entries {
        let samples = sample_elements(a, 100, 11, SampleStrategy::Default);
        let crit = analysis::check_split_criterion(a, &samples).unwrap();
        checked += 1;
        if !crit.consistent {
            failures.push(format!("{name}: criterion inconsistent"));
        }
        if let Some(cert) = analysis::is_supersolvable(a).unwrap() {
            flags += 1;
            if !cert.verify(a) || cert.dims() != (0..=a.dim()).collect::<Vec<_>>() {
                failures.push(format!("{name}: certificate rejected"));
            }
        }
        if (name == "sl2" || name == "rotation_3dim") && crit.flag_exists {
            failures.push(format!("{name}: negative control has a flag"));
        }
    }
    let ok = failures.is_empty();
    let detail = format!(
        "{checked} entries incl. sl2 and rotation_3dim, {flags} certificates verified, {} mismatches",
        failures.len()
    );
    report(
        4,
        "flag iff square nilpotent and all L*_0(a) = L",
        ok,
        &detail,
    );
    assert!(ok, "{detail}: {failures:?}");
}

#[test]
fn criterion_5_structural_audits() {
    let c = corpus();
    let mut totals = [(0usize, 0usize); 4];
    let mut names = [""; 4];
    for (_, _, a) in &c.entries {
        let samples = sample_elements(a, default_sample_count(a.dim()), 0, SampleStrategy::Default);
        let r = property_audit(a, &samples).unwrap();
        for (i, (name, status)) in r.entries().into_iter().enumerate() {
            names[i] = name;
            totals[i].0 += status.checked;
            totals[i].1 += status.failures;
        }
    }
    let split_checks = totals[1].0;
    let ok = totals.iter().all(|t| t.1 == 0) && split_checks >= 100;
    let detail = names
        .iter()
        .zip(&totals)
        .map(|(n, (c, f))| format!("{n} {c} checked/{f} failed"))
        .collect::<Vec<_>>()
        .join(", ");
    report(5, "structural audits", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_6_kernel_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let rank_limit = rng.gen_range(1..=n);
        // low-rank products exercise nontrivial kernels and repeated roots
        let left = Matrix::from_fn(Q, n, rank_limit, |_, _| Q.from_i64(rng.gen_range(-2..=2)));
        let right = Matrix::from_fn(Q, rank_limit, cols, |_, _| {
            Q.from_i64(rng.gen_range(-2..=2))
        });
        let m = &left * &right;
        if m.rank() + m.kernel().dim() != cols {
            failures += 1;
        }
        let sq = Matrix::from_fn(Q, n, n, |i, j| {
            if rng.gen_bool(0.5) || i == j {
                Q.from_i64(rng.gen_range(-3..=3))
            } else {
                Q.zero()
            }
        });
        let min = sq.minimal_polynomial().unwrap();
        let chr = sq.characteristic_polynomial().unwrap();
        if !min.eval_matrix(&sq).is_zero()
            || !min.divides(&chr)
            || chr.degree() != Some(n)
            || !chr.eval_matrix(&sq).is_zero()
        {
            failures += 1;
        }
    }
    let c = corpus();
    let mut draws = 0;
    for i in 0..100 {
        let (_, _, a) = &c.entries[i % c.entries.len()];
        let n = a.dim();
        let x = Element::new((0..n).map(|_| Q.from_i64(rng.gen_range(-2..=2))).collect());
        let s = analysis::primary_split(a, &x).unwrap();
        draws += 1;
        let comp_sum: usize = s.components.iter().map(|c| c.dim()).sum();
        let lx = a.mult_operator(&x, Side::Left).unwrap();
        let m1 = s.m1.eval_matrix(&lx);
        let nil = m1.pow(n);
        let on_split = s
            .split_part
            .basis()
            .iter()
            .all(|v| nil.mul_vec(v).iter().all(|c| c.is_zero()));
        let images: Vec<Vec<_>> = s
            .nonsplit_part
            .basis()
            .iter()
            .map(|v| m1.mul_vec(v))
            .collect();
        let injective = images.is_empty()
            || Matrix::from_rows(Q, images).unwrap().rank() == s.nonsplit_part.dim();
        if comp_sum != s.split_part.dim()
            || s.split_part.dim() + s.nonsplit_part.dim() != n
            || !on_split
            || !injective
        {
            failures += 1;
        }
    }
    let ok = failures == 0;
    let detail =
        format!("100 random matrices, {draws} (entry, element) draws, {failures} failures");
    report(6, "kernel oracle equivalence", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_7_determinism_and_round_trip() {
    let c = corpus();
    let mut failures = Vec::new();
    for (name, path, a) in &c.entries {
        let text = fs::read_to_string(path).unwrap();
        let again = parse_algebra_file(&serialize_algebra(a)).unwrap();
        if again != *a || serialize_algebra(a) != text {
            failures.push(format!("{name}: round trip"));
        }
        let args = ["leibniz", "analyze", path_str(path), "--format", "kv"];
        let (s1, map, first) = kv(&args);
        let (s2, _, second) = kv(&args);
        if s1 != 0 || s2 != 0 || first != second {
            failures.push(format!("{name}: analyze not reproducible"));
        }
        // fresh flags must match the frozen corpus file
        let frozen = fs::read_to_string(path.with_extension("flags")).unwrap();
        for line in frozen.lines().filter(|l| l.starts_with("flags.")) {
            let (k, v) = line.split_once(" = ").unwrap();
            if map.get(k).map(String::as_str) != Some(v) {
                failures.push(format!("{name}: {k} drifted from frozen {v}"));
            }
        }
    }
    let (_, path0, _) = &c.entries[0];
    let recog = [
        "leibniz",
        "recog",
        "--n",
        "3",
        "--prop",
        "solvable",
        path_str(path0),
        "--format",
        "kv",
    ];
    if kv(&recog).2 != kv(&recog).2 {
        failures.push("recog not reproducible".into());
    }
    let ok = failures.is_empty();
    let detail = format!(
        "{} files round-tripped, kv reports byte-identical, frozen flags matched, {} failures",
        c.entries.len(),
        failures.len()
    );
    report(7, "determinism and round-trip", ok, &detail);
    assert!(ok, "{detail}: {failures:?}");
}

#[test]
fn criterion_8_basis_change_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut trials = 0;
    let mut failures = Vec::new();
    for entry in constructions::catalog() {
        let a = &entry.algebra;
        for _ in 0..10 {
            let p = random_invertible(a.dim(), &mut rng);
            let b = a.change_basis(&p).unwrap();
            trials += 1;
            let flags = ExpectedFlags::compute(&b).unwrap();
            if flags != entry.expected {
                failures.push(format!(
                    "{}: {:?} vs {:?}",
                    entry.slug(),
                    flags,
                    entry.expected
                ));
            }
        }
    }
    let ok = failures.is_empty();
    let detail = format!(
        "{trials} basis changes over the catalog, {} mismatches",
        failures.len()
    );
    report(8, "basis-change invariance", ok, &detail);
    assert!(ok, "{detail}: {failures:?}");
}
