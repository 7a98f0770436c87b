//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Everything here is exact; there are no tolerances.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use chow_kit::chow::{
    analyze, aug_chow_poly, chow_poly, flag_beta_via_h, gamma_chow_via_p, GammaVariant,
};
use chow_kit::classical::{
    binomial_eulerian, eulerian, gamma_binomial_eulerian, gamma_eulerian, verify_decomposition,
};
use chow_kit::descent::{
    p_bruteforce, p_recursive, verify_five_conditions, verify_general_diagram,
    verify_interlacing_diagram, PKey, DEFAULT_ENUM_BOUND,
};
use chow_kit::fuzz::{random_facet_count, run_instance, GenParams};
use chow_kit::golden::run_golden_example;
use chow_kit::interlace::{interlaces, interlacing_sequence_check, interlacing_sequence_check_wagner};
use chow_kit::poly::IntPoly;
use chow_kit::poset::{boolean_lattice, random_pure_complex, uniform_flats, GradedPoset};
use chow_kit::rng::SplitMix64;
use chow_kit::roots::{multiplicity_at, real_rooted};
use chow_kit::sets::{isolated_subsets, SmallSet};

const BOUND: u32 = DEFAULT_ENUM_BOUND;

fn report(name: &str, start: Instant, budget_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion {name}: PASS ({elapsed:.2}s, budget {budget_secs}s)");
    assert!(
        elapsed < budget_secs,
        "criterion {name} exceeded its {budget_secs}s budget: {elapsed:.2}s"
    );
}

fn set(elems: &[u32]) -> SmallSet {
    SmallSet::from_elements(elems.iter().copied())
}

/// Criterion 1: the running example reproduces every recorded quantity.
#[test]
fn criterion_01_golden_example() {
    let start = Instant::now();
    let checks = run_golden_example();
    for c in &checks {
        assert!(c.pass, "{}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    assert!(checks.len() >= 30);
    report("1 (golden example)", start, 1.0);
}

/// Criterion 2: the two base-case diagrams match the recorded tables
/// entrywise and verify as interlacing diagrams.
#[test]
fn criterion_02_base_case_diagrams() {
    let start = Instant::now();
    let expect_t1 = [
        ["1", "0", "0"],
        ["1", "0,1", "0,1"],
        ["0", "0,1", "0,1"],
    ];
    let expect_t12 = [
        ["1,1", "0,1", "0"],
        ["1,1", "0,2", "0,1"],
        ["0", "0,1", "0,1"],
    ];
    for (t, table) in [(set(&[1]), expect_t1), (set(&[1, 2]), expect_t12)] {
        let verdict = verify_interlacing_diagram(2, t, BOUND).unwrap();
        assert!(verdict.pass, "D_2({t}) failed: {:?}", verdict.failures);
        for (r, row) in table.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                let got = &verdict.diagram.cells[r * 3 + c].poly;
                assert_eq!(
                    got.to_coeff_string(),
                    *want,
                    "D_2({t}) cell ({r},{c})"
                );
            }
        }
    }
    report("2 (base-case diagrams)", start, 1.0);
}

/// Criterion 3: recursion equals enumeration, exhaustively for n <= 5 and on
/// seeded random keys at n = 6, 7. Degree bounds and coefficient positivity
/// ride along.
#[test]
fn criterion_03_p_family_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=5u32 {
        for t in SmallSet::interval(1, n).subsets() {
            for s in t.subsets() {
                if !s.is_isolated() {
                    continue;
                }
                for k in 0..=n {
                    let key = PKey::new(n, k, s, t).unwrap();
                    let rec = p_recursive(&key).unwrap();
                    let brute = p_bruteforce(&key, BOUND).unwrap();
                    assert_eq!(rec, brute, "exhaustive mismatch at {key:?}");
                    assert_poly_shape(&rec, n);
                    checked += 1;
                }
            }
        }
    }
    let mut rng = SplitMix64::new(0x5EED_0003);
    let mut random_checked = 0u64;
    for n in [6u32, 7] {
        let mut done = 0;
        while done < 600 {
            let t = SmallSet::from_mask(rng.next_below(1 << n) as u32);
            let isolated: Vec<SmallSet> = t.subsets().into_iter().filter(|s| s.is_isolated()).collect();
            let s = isolated[rng.next_below(isolated.len() as u64) as usize];
            let k = rng.next_below(n as u64 + 1) as u32;
            let key = PKey::new(n, k, s, t).unwrap();
            let rec = p_recursive(&key).unwrap();
            let brute = p_bruteforce(&key, BOUND).unwrap();
            assert_eq!(rec, brute, "random mismatch at {key:?}");
            assert_poly_shape(&rec, n);
            done += 1;
            random_checked += 1;
        }
    }
    assert!(random_checked >= 1000);
    println!("  exhaustive keys: {checked}, random keys: {random_checked}");
    report("3 (p-family oracle equivalence)", start, 120.0);
}

fn assert_poly_shape(p: &IntPoly, n: u32) {
    assert!(p.has_nonneg_coeffs());
    if let Some(d) = p.degree() {
        assert!(d <= (n as usize).div_ceil(2), "degree bound violated");
    }
}

/// Criterion 4: D_n(T) is an interlacing diagram for T = [1,n] and
/// T = [1,n-1] for 2 <= n <= 7, and the five-condition form agrees.
#[test]
fn criterion_04_interlacing_diagrams() {
    let start = Instant::now();
    for n in 2..=7u32 {
        for t in [SmallSet::interval(1, n), SmallSet::interval(1, n - 1)] {
            let verdict = verify_interlacing_diagram(n, t, BOUND).unwrap();
            assert!(verdict.pass, "D_{n}({t}) failures: {:?}", verdict.failures);
            if n >= 3 {
                let five = verify_five_conditions(n, t, BOUND).unwrap();
                assert_eq!(five.pass, verdict.pass, "five-condition disagreement at D_{n}({t})");
            }
        }
    }
    report("4 (interlacing diagrams n <= 7)", start, 120.0);
}

/// Corpus shared by criteria 5 and 6: boolean truncations, uniform-matroid
/// truncations, and seeded random pure complexes.
fn corpus() -> Vec<(String, GradedPoset)> {
    let mut out = Vec::new();
    for m in 3..=8u32 {
        let p = boolean_lattice(m).unwrap().remove_top().unwrap();
        out.push((format!("B_{m} minus top"), p));
    }
    for n in 2..=7u32 {
        for k in 2..=n {
            let p = uniform_flats(k, n).unwrap().remove_top().unwrap();
            out.push((format!("U_{{{k},{n}}} truncation"), p));
        }
    }
    let mut idx = 0u64;
    for vertices in [6u32, 7, 8] {
        for rank in [2u32, 3, 4] {
            for i in 0..9u64 {
                let seed = 0xC0_0001 + 977 * idx + i;
                let facets = random_facet_count(vertices, rank, seed);
                let p = random_pure_complex(vertices, rank, facets, seed).unwrap();
                out.push((format!("random(v={vertices},r={rank},f={facets},seed={seed})"), p));
                idx += 1;
            }
        }
    }
    out
}

/// Criterion 5: gamma of the three Chow polynomials computed from flag
/// statistics equals the h-weighted descent-family sums, across the corpus.
#[test]
fn criterion_05_gamma_identity_on_corpus() {
    let start = Instant::now();
    let corpus = corpus();
    let mut used = 0;
    for (name, p) in &corpus {
        let n = p.max_rank();
        if n < 2 {
            continue;
        }
        let a = analyze(p).unwrap_or_else(|e| panic!("{name}: {e}"));
        for (variant, direct) in [
            (GammaVariant::Chow, &a.result.gamma_chow),
            (GammaVariant::ChowDual, &a.result.gamma_chow_dual),
            (GammaVariant::Aug, &a.result.gamma_aug),
        ] {
            let via_p = gamma_chow_via_p(&a.h, variant).unwrap();
            assert_eq!(*direct, via_p, "{name}: {variant:?}");
        }
        // h-positive posets must satisfy the proved statements outright.
        if a.verdicts.h_positive {
            assert!(
                a.verdicts.conjecture_holds(),
                "{name}: h-positive poset violates a proved statement"
            );
        }
        used += 1;
    }
    assert!(used >= 100, "corpus too small: {used}");
    println!("  corpus size with n >= 2: {used}");
    report("5 (gamma identity on corpus)", start, 120.0);
}

/// Criterion 6: the descent formula for the flag h-vector agrees with the
/// inclusion-exclusion flag h-vector for every rank subset.
#[test]
fn criterion_06_flag_h_descent_formula() {
    let start = Instant::now();
    let corpus = corpus();
    for (name, p) in &corpus {
        let n = p.max_rank();
        let h = p.h_vector().unwrap();
        let phat = p.add_top();
        for s in SmallSet::interval(1, n).subsets() {
            assert_eq!(
                flag_beta_via_h(&h, s),
                phat.flag_beta(s).unwrap(),
                "{name}: S = {s}"
            );
        }
    }
    report("6 (flag h-vector via descents)", start, 60.0);
}

/// Criterion 7: Eulerian cross-checks.
#[test]
fn criterion_07_eulerian_cross_checks() {
    let start = Instant::now();
    for n in 1..=6u32 {
        let b = boolean_lattice(n + 1).unwrap();
        assert_eq!(chow_poly(&b).unwrap(), eulerian(n + 1, BOUND).unwrap());
        assert_eq!(
            aug_chow_poly(&b).unwrap(),
            binomial_eulerian(n + 1, BOUND).unwrap()
        );
    }
    for n in 1..=8u32 {
        let a = eulerian(n, BOUND).unwrap();
        assert_eq!(
            a.gamma_expand().unwrap(),
            IntPoly::from_i64s(&gamma_eulerian(n, BOUND).unwrap())
        );
        let at = binomial_eulerian(n, BOUND).unwrap();
        assert_eq!(
            at.gamma_expand().unwrap(),
            IntPoly::from_i64s(&gamma_binomial_eulerian(n, BOUND).unwrap())
        );
    }
    for n in 2..=5u32 {
        let v = verify_decomposition(n, BOUND).unwrap();
        assert!(v.pass(), "decomposition failed at n = {n}: {v:?}");
    }
    report("7 (Eulerian cross-checks)", start, 60.0);
}

/// Root matrix for an interlacing sequence of `len` polynomials of degree
/// `deg`: a globally descending pile split into rows, ascending within each
/// row, all roots non-positive.
fn interlacing_sequence(rng: &mut SplitMix64, len: usize, deg: usize) -> Vec<IntPoly> {
    let mut values: Vec<i64> = (0..len * deg)
        .map(|_| -1 - (rng.next_below(59) as i64))
        .collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    let mut polys = Vec::with_capacity(len);
    for i in 0..len {
        let mut poly = IntPoly::one();
        for j in 0..deg {
            // Row j, column i from the ascending-in-i end.
            let root = values[j * len + (len - 1 - i)];
            poly = &poly * &IntPoly::from_i64s(&[-root, 1]);
        }
        polys.push(poly);
    }
    polys
}

fn random_real_rooted_gamma(rng: &mut SplitMix64, deg: usize) -> IntPoly {
    let mut poly = IntPoly::constant(1 + rng.next_below(3) as i64);
    for _ in 0..deg {
        let a = 1 + rng.next_below(39) as i64;
        let b = 1 + rng.next_below(3) as i64;
        poly = &poly * &IntPoly::from_i64s(&[a, b]);
    }
    poly
}

fn random_nonneg_poly(rng: &mut SplitMix64, deg: usize) -> IntPoly {
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.next_below(20) as i64).collect();
    coeffs[0] = coeffs[0].max(1);
    coeffs[deg] = coeffs[deg].max(1);
    IntPoly::from_i64s(&coeffs)
}

/// Criterion 8: the section-2 property suites, each on at least 200 seeded
/// instances.
#[test]
fn criterion_08_interlacing_property_suites() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x5EED_0008);

    // Sum rules. Sequences give f ⪯ g ⪯ h in order.
    for _ in 0..200 {
        let deg = 1 + rng.next_below(4) as usize;
        let seq = interlacing_sequence(&mut rng, 3, deg);
        let (f, g, h) = (&seq[0], &seq[1], &seq[2]);
        assert!(interlaces(&(f + g), h).unwrap(), "f,g ⪯ h but f+g not ⪯ h");
        assert!(interlaces(f, &(g + h)).unwrap(), "f ⪯ g,h but f not ⪯ g+h");
        assert!(interlaces(g, &f.shift_up(1)).unwrap(), "f ⪯ g but g not ⪯ xf");
    }

    // Wagner shortcut agrees with the pairwise definition, on interlacing
    // sequences and on shuffled ones.
    for i in 0..200 {
        let deg = 1 + rng.next_below(3) as usize;
        let len = 3 + rng.next_below(3) as usize;
        let mut seq = interlacing_sequence(&mut rng, len, deg);
        if i % 2 == 1 {
            let a = rng.next_below(len as u64) as usize;
            let b = rng.next_below(len as u64) as usize;
            seq.swap(a, b);
        }
        let full = interlacing_sequence_check(&seq).unwrap();
        let short = interlacing_sequence_check_wagner(&seq).unwrap();
        assert_eq!(full, short, "Wagner shortcut diverged on {seq:?}");
    }

    // Partial-sum constructions preserve interlacing.
    for _ in 0..200 {
        let deg = 1 + rng.next_below(3) as usize;
        let len = 3 + rng.next_below(3) as usize;
        let seq = interlacing_sequence(&mut rng, len, deg);
        let lower: Vec<IntPoly> = (0..len)
            .map(|k| seq[..=k].iter().fold(IntPoly::zero(), |acc, f| &acc + f))
            .collect();
        assert!(interlacing_sequence_check(&lower).unwrap(), "lower partial sums");
        let upper: Vec<IntPoly> = (0..len)
            .map(|k| seq[k..].iter().fold(IntPoly::zero(), |acc, f| &acc + f))
            .collect();
        assert!(interlacing_sequence_check(&upper).unwrap(), "upper partial sums");
        let window = 1 + rng.next_below(len as u64 - 1) as usize;
        let windowed: Vec<IntPoly> = (0..=len - window)
            .map(|k| {
                seq[k..k + window]
                    .iter()
                    .fold(IntPoly::zero(), |acc, f| &acc + f)
            })
            .collect();
        assert!(interlacing_sequence_check(&windowed).unwrap(), "windowed sums");
        let mixed: Vec<IntPoly> = (0..=len)
            .map(|k| {
                let head = seq[..k].iter().fold(IntPoly::zero(), |acc, f| &acc + f);
                let tail = seq[k..].iter().fold(IntPoly::zero(), |acc, f| &acc + f);
                &head.shift_up(1) + &tail
            })
            .collect();
        assert!(interlacing_sequence_check(&mixed).unwrap(), "mixed x-sums");
    }

    // Gamma expansion preserves and reflects real-rootedness.
    for i in 0..200 {
        let deg = 1 + rng.next_below(3) as usize;
        let gamma = if i % 2 == 0 {
            random_real_rooted_gamma(&mut rng, deg)
        } else {
            random_nonneg_poly(&mut rng, deg)
        };
        let d = 2 * deg + rng.next_below(3) as usize;
        let f = IntPoly::gamma_contract(&gamma, d).unwrap();
        assert_eq!(
            real_rooted(&f).unwrap(),
            real_rooted(&gamma).unwrap(),
            "gamma real-rootedness equivalence on {gamma:?} at d = {d}"
        );
    }

    // Interlacing transfers through the gamma expansion in both directions
    // for palindromic polynomials one degree apart. Gamma degrees stay >= 2:
    // below that the everything-interlaces convention for small degrees is
    // coarser than the root alternation, so the equivalence is vacuous.
    let mut checked_26 = 0;
    while checked_26 < 200 {
        let deg = 2 + rng.next_below(2) as usize;
        let (gf, gg) = if checked_26 % 2 == 0 {
            let seq = interlacing_sequence(&mut rng, 2, deg);
            (seq[0].clone(), seq[1].clone())
        } else {
            (
                random_real_rooted_gamma(&mut rng, deg),
                random_real_rooted_gamma(&mut rng, deg),
            )
        };
        let d = 2 * deg + 1 + rng.next_below(2) as usize;
        let f = IntPoly::gamma_contract(&gf, d).unwrap();
        let g = IntPoly::gamma_contract(&gg, d + 1).unwrap();
        let lhs = interlaces(&f, &g).unwrap();
        let rhs = interlaces(&gf, &gg).unwrap();
        assert_eq!(lhs, rhs, "transfer failed: gf={gf:?} gg={gg:?} d={d}");
        checked_26 += 1;
    }

    // Multiplicity of -1 in a palindromic real-rooted polynomial.
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for _ in 0..200 {
        let deg = rng.next_below(3) as usize;
        let gamma = random_real_rooted_gamma(&mut rng, deg);
        let d = 2 * deg + rng.next_below(4) as usize;
        let h = IntPoly::gamma_contract(&gamma, d).unwrap();
        let expect = d - 2 * gamma.degree().unwrap();
        assert_eq!(
            multiplicity_at(&h, &minus_one),
            expect as u32,
            "multiplicity identity on {gamma:?} at d = {d}"
        );
    }

    // Exact interlacing agrees with a floating-point root-sort checker on
    // well-separated-root instances.
    for i in 0..200 {
        let deg = 1 + rng.next_below(3) as usize;
        let (f, g) = if i % 2 == 0 {
            let seq = interlacing_sequence(&mut rng, 2, deg);
            (seq[0].clone(), seq[1].clone())
        } else {
            (
                random_real_rooted_gamma(&mut rng, deg),
                random_real_rooted_gamma(&mut rng, deg),
            )
        };
        let (Some(rf), Some(rg)) = (float_roots(&f), float_roots(&g)) else {
            continue;
        };
        if !well_separated(&rf) || !well_separated(&rg) {
            continue;
        }
        let float_verdict = float_interlaces(&rf, &rg);
        let exact = interlaces(&f, &g).unwrap();
        assert_eq!(exact, float_verdict, "float checker diverged: f={f:?} g={g:?}");
    }

    report("8 (section-2 property suites)", start, 120.0);
}

fn float_eval(p: &IntPoly, x: f64) -> f64 {
    let mut acc = 0.0;
    for c in p.coeffs().iter().rev() {
        acc = acc * x + c.to_f64().unwrap();
    }
    acc
}

/// Non-authoritative root finder: sign-change scan plus bisection. Returns
/// None when it cannot account for every root (e.g. repeated roots).
fn float_roots(p: &IntPoly) -> Option<Vec<f64>> {
    let d = p.degree()?;
    if d == 0 {
        return Some(Vec::new());
    }
    let lead = p.leading().unwrap().to_f64().unwrap();
    let bound = 2.0
        + p.coeffs()
            .iter()
            .map(|c| (c.to_f64().unwrap() / lead).abs())
            .fold(0.0, f64::max);
    let steps = 20000;
    let mut roots = Vec::new();
    let mut prev_x = -bound;
    let mut prev_v = float_eval(p, prev_x);
    for i in 1..=steps {
        let x = -bound + 2.0 * bound * (i as f64) / (steps as f64);
        let v = float_eval(p, x);
        if prev_v == 0.0 {
            roots.push(prev_x);
        } else if prev_v * v < 0.0 {
            let (mut lo, mut hi) = (prev_x, x);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if float_eval(p, lo) * float_eval(p, mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    if float_eval(p, prev_x) == 0.0 {
        roots.push(prev_x);
    }
    if roots.len() == d {
        Some(roots)
    } else {
        None
    }
}

fn well_separated(roots: &[f64]) -> bool {
    roots
        .windows(2)
        .all(|w| (w[1] - w[0]).abs() > 1e-6)
}

fn float_interlaces(rf: &[f64], rg: &[f64]) -> bool {
    if rf.len() <= 1 && rg.len() <= 1 {
        return true;
    }
    if rg.len() != rf.len() && rg.len() != rf.len() + 1 {
        return false;
    }
    let eps = 1e-9;
    let mut alpha: Vec<f64> = rf.to_vec();
    let mut beta: Vec<f64> = rg.to_vec();
    alpha.sort_by(|a, b| b.partial_cmp(a).unwrap());
    beta.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for i in 0..alpha.len() {
        if beta[i] < alpha[i] - eps {
            return false;
        }
        if i + 1 < beta.len() && alpha[i] < beta[i + 1] - eps {
            return false;
        }
    }
    true
}

/// Criterion 9: 500 seeded random pure complexes are expected to produce no
/// real-rootedness or interlacing violations; a violation halts acceptance
/// with a replayable record. Violations on h-positive instances contradict
/// proved statements and always mean a defect in this crate.
#[test]
fn criterion_09_conjecture_fuzz() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x5EED_0009);
    let mut negative_h = 0u32;
    let mut findings: Vec<String> = Vec::new();
    for i in 0..500u64 {
        let vertices = 5 + rng.next_below(4) as u32;
        let rank = 1 + rng.next_below(4.min(vertices as u64)) as u32;
        let seed = 0xF0_0000 + i;
        let facets = random_facet_count(vertices, rank, seed);
        let params = GenParams {
            num_vertices: vertices,
            rank,
            num_facets: facets,
        };
        let record = run_instance(params, seed)
            .unwrap_or_else(|e| panic!("instance {params:?} seed {seed} failed: {e}"));
        if record.h_vector.iter().any(|&h| h < 0) {
            negative_h += 1;
        }
        if !record.conjecture_holds() {
            assert!(
                !record.h_positive,
                "h-positive violation contradicts a proved statement; this is a defect: {}",
                record.to_json_line()
            );
            findings.push(record.to_json_line());
        }
    }
    assert!(negative_h > 0, "sample must include negative h-vectors");
    println!("  instances: 500, with negative h-entries: {negative_h}");
    for f in &findings {
        println!("  violation (replayable record): {f}");
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "criterion 9 exceeded its budget: {elapsed:.2}s");
    assert!(
        findings.is_empty(),
        "criterion 9 (conjecture fuzz): {} violation(s) among 500 instances; \
         first replayable record: {}",
        findings.len(),
        findings[0]
    );
    report("9 (conjecture fuzz)", start, 300.0);
}

/// Criterion 10: the generalized diagrams of the closing remark pass for all
/// valid (S, T) with n <= 5. Cell values are enumeration-validated inside
/// the builder, so any interlacing failure here would be a genuine finding.
#[test]
fn criterion_10_generalized_diagrams() {
    let start = Instant::now();
    let mut checked = 0;
    let mut findings = Vec::new();
    for n in 2..=5u32 {
        for t in SmallSet::interval(1, n).subsets() {
            let Some(m) = t.min_elem() else { continue };
            for s in isolated_subsets(1, n) {
                if !s.contains(m) || !s.is_subset_of(&t) {
                    continue;
                }
                let verdict = verify_general_diagram(n, s, t, BOUND).unwrap();
                if !verdict.pass {
                    findings.push((n, s, t, verdict.failures.len()));
                }
                checked += 1;
            }
        }
    }
    println!("  generalized diagrams verified: {checked}");
    assert!(checked >= 50);
    assert!(
        findings.is_empty(),
        "generalized-diagram findings (enumeration-backed): {findings:?}"
    );
    report("10 (generalized diagrams)", start, 120.0);
}
