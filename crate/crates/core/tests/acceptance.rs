//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `--nocapture`). Every equality here is exact —
//! no tolerances, no floating point.

use std::time::Instant;

use coxlab_core::{
    cos_label, cosine_matrix, det_elimination, det_sigma_closed, det_sigma_recurrence,
    det_vinberg, group_type, identify_family, inertia, is_word_hyperbolic,
    minimal_infinite_subsets, sigma_family, sigma_hubs, verify_witness, ClassifyOptions,
    CoxeterGraph, FamilyName, FieldElement, Inertia, Kind, Label, MatrixMode, Rational,
    VertexSet, Witness, DEFAULT_CYCLE_BUDGET,
};
use num::bigint::BigInt;
use num::One;
use rayon::prelude::*;

fn sqrt5() -> FieldElement {
    FieldElement::sqrt(5).unwrap()
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// (2−√5)/16
fn expected_sigma1_det() -> FieldElement {
    (FieldElement::from_integer(2) - sqrt5()).scale(&ratio(1, 16))
}

/// (7−3√5)/32
fn expected_h4_det() -> FieldElement {
    (FieldElement::from_integer(7) - sqrt5().scale(&ratio(3, 1))).scale(&ratio(1, 32))
}

/// (2−√5)^k (k+1) / 2^{5k}
fn expected_sigma_det(k: usize) -> FieldElement {
    let base = FieldElement::from_integer(2) - sqrt5();
    base.pow(k as u32)
        .scale(&Rational::new(BigInt::from(k + 1), BigInt::one() << (5 * k)))
}

fn h4_chain() -> CoxeterGraph {
    let mut g = CoxeterGraph::new(4);
    g.set_label(1, 2, Label::Finite(3)).unwrap();
    g.set_label(2, 3, Label::Finite(3)).unwrap();
    g.set_label(3, 4, Label::Finite(5)).unwrap();
    g
}

#[test]
fn criterion_01_determinant_constants() {
    let start = Instant::now();

    let h4 = cosine_matrix(&h4_chain(), MatrixMode::Exact).unwrap();
    assert_eq!(det_elimination(&h4), expected_h4_det());

    let s1 = cosine_matrix(&sigma_family(1), MatrixMode::Exact).unwrap();
    assert_eq!(det_elimination(&s1), expected_sigma1_det());

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 1 exceeded 1 s");
    println!(
        "ACCEPTANCE 1 PASS: det(H_4) = (7-3*r5)/32 and det(Sigma_1) = (2-r5)/16 exactly ({:.0} ms)",
        elapsed.as_secs_f64() * 1e3
    );
}

#[test]
fn criterion_02_family_determinant_closed_form() {
    let start = Instant::now();
    for k in 1..=5usize {
        let expected = expected_sigma_det(k);
        let m = cosine_matrix(&sigma_family(k), MatrixMode::Exact).unwrap();
        assert_eq!(det_elimination(&m), expected, "elimination at k={k}");
        assert_eq!(
            det_vinberg(&sigma_family(k), DEFAULT_CYCLE_BUDGET).unwrap(),
            expected,
            "cycle expansion at k={k}"
        );
        assert_eq!(det_sigma_recurrence(k), expected, "recurrence at k={k}");
        assert_eq!(det_sigma_closed(k), expected, "closed form at k={k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 2 exceeded 30 s");
    println!(
        "ACCEPTANCE 2 PASS: four determinant routes agree with (2-r5)^k (k+1)/2^(5k) for k=1..5 ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_03_signature_claim() {
    let start = Instant::now();
    for k in 1..=5usize {
        let m = cosine_matrix(&sigma_family(k), MatrixMode::Exact).unwrap();
        assert_eq!(
            inertia(&m),
            Inertia {
                positive: 4 * k,
                negative: k,
                zero: 0
            },
            "signature at k={k}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 3 exceeded 30 s");
    println!(
        "ACCEPTANCE 3 PASS: inertia(Sigma_k) = (4k, k, 0) exactly for k=1..5 ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_04_sign_law() {
    for k in 1..=5usize {
        let m = cosine_matrix(&sigma_family(k), MatrixMode::Exact).unwrap();
        let expected = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(det_elimination(&m).sign(), expected, "sign at k={k}");
    }
    println!("ACCEPTANCE 4 PASS: sign(det(Sigma_k)) = (-1)^k for k=1..5");
}

#[test]
fn criterion_05_hiding_vertices() {
    for k in 1..=5usize {
        let g = sigma_family(k);
        let non_hubs = g.vertices().difference(sigma_hubs(k));
        let hidden = g.induced_subgraph(non_hubs).unwrap();
        let verdict = group_type(&hidden).unwrap();
        assert_eq!(verdict.kind, Kind::Finite, "non-hub diagram finite at k={k}");
        assert_eq!(verdict.components.len(), k, "k components at k={k}");
        for comp in &verdict.components {
            assert_eq!(comp.kind, Kind::Finite);
            assert_eq!(comp.family, Some(FamilyName::H4), "component is H_4");
        }
    }
    println!("ACCEPTANCE 5 PASS: hiding the hubs of Sigma_k leaves k components, each H_4, for k=1..5");
}

#[test]
fn criterion_06_hyperbolicity() {
    let start = Instant::now();
    for k in 1..=4usize {
        let report = is_word_hyperbolic(&sigma_family(k)).unwrap();
        assert!(report.hyperbolic, "Sigma_{k} must be word-hyperbolic");
        assert!(report.witness.is_none());
        assert!(
            report.paper_mode_applicable,
            "Sigma_{k} has no parabolic subgraph"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "criterion 6 exceeded 5 min");
    println!(
        "ACCEPTANCE 6 PASS: Sigma_k word-hyperbolic with paper_mode_applicable for k=1..4 ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_07_witness_structure() {
    for k in 1..=4usize {
        let g = sigma_family(k);
        let sweep = minimal_infinite_subsets(&g, &ClassifyOptions::default()).unwrap();
        assert!(!sweep.sets.is_empty(), "Sigma_{k} is infinite");
        let hubs = sigma_hubs(k);
        for m in &sweep.sets {
            assert!(
                !m.vertices.is_disjoint(hubs),
                "minimal infinite subset {} of Sigma_{k} avoids the hub clique",
                m.vertices
            );
        }
    }
    println!(
        "ACCEPTANCE 7 PASS: every minimal infinite subset of Sigma_k contains a hub vertex, k=1..4"
    );
}

fn graph_from_labels(rank: usize, labels: &[u32]) -> CoxeterGraph {
    let mut g = CoxeterGraph::new(rank);
    let mut it = labels.iter();
    for i in 1..=rank {
        for j in i + 1..=rank {
            let &m = it.next().unwrap();
            g.set_label(i, j, Label::Finite(m)).unwrap();
        }
    }
    g
}

#[test]
fn criterion_08_vinberg_oracle() {
    let start = Instant::now();
    let alphabet = [2u32, 3, 4, 5];

    // exhaustive sweep over connected graphs of rank ≤ 5
    let mut exhaustive_checked = 0usize;
    for rank in 1..=5usize {
        let pairs = rank * (rank - 1) / 2;
        let total = alphabet.len().pow(pairs as u32);
        let checked: usize = (0..total)
            .into_par_iter()
            .map(|code| {
                let mut labels = vec![0u32; pairs];
                let mut c = code;
                for slot in labels.iter_mut() {
                    *slot = alphabet[c % alphabet.len()];
                    c /= alphabet.len();
                }
                let g = graph_from_labels(rank, &labels);
                if !g.is_connected() {
                    return 0;
                }
                let m = cosine_matrix(&g, MatrixMode::Exact).unwrap();
                assert_eq!(
                    det_vinberg(&g, DEFAULT_CYCLE_BUDGET).unwrap(),
                    det_elimination(&m),
                    "cycle expansion disagrees with elimination on {g:?}"
                );
                1
            })
            .sum();
        exhaustive_checked += checked;
    }

    // 500 random graphs of rank ≤ 8 over the full exact label domain
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let seeds: Vec<u64> = (0..500).collect();
    seeds.par_iter().for_each(|&seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0815 + seed);
        let rank = rng.gen_range(2..=8usize);
        let mut g = CoxeterGraph::new(rank);
        for i in 1..=rank {
            for j in i + 1..=rank {
                let label = match rng.gen_range(0..100) {
                    0..=39 => Label::Finite(2),
                    40..=64 => Label::Finite(3),
                    65..=79 => Label::Finite(4),
                    80..=89 => Label::Finite(5),
                    90..=94 => Label::Finite(6),
                    _ => Label::Infinite,
                };
                g.set_label(i, j, label).unwrap();
            }
        }
        let m = cosine_matrix(&g, MatrixMode::Exact).unwrap();
        assert_eq!(
            det_vinberg(&g, DEFAULT_CYCLE_BUDGET).unwrap(),
            det_elimination(&m),
            "cycle expansion disagrees with elimination on {g:?}"
        );
    });

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "criterion 8 exceeded 5 min");
    println!(
        "ACCEPTANCE 8 PASS: det_vinberg = det_elimination on {exhaustive_checked} connected graphs (rank <= 5, labels 2..5) and 500 random graphs (rank <= 8) ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_09_classification_tables() {
    let mut finite: Vec<FamilyName> = Vec::new();
    for n in 1..=8 {
        finite.push(FamilyName::A(n));
    }
    for n in 2..=8 {
        finite.push(FamilyName::B(n));
    }
    for n in 4..=8 {
        finite.push(FamilyName::D(n));
    }
    finite.extend([
        FamilyName::E6,
        FamilyName::E7,
        FamilyName::E8,
        FamilyName::F4,
        FamilyName::H3,
        FamilyName::H4,
    ]);
    for m in 3..=6 {
        finite.push(FamilyName::I2(m));
    }

    let mut affine: Vec<FamilyName> = Vec::new();
    for n in 1..=7 {
        affine.push(FamilyName::AffineA(n));
    }
    for n in 3..=7 {
        affine.push(FamilyName::AffineB(n));
    }
    for n in 2..=7 {
        affine.push(FamilyName::AffineC(n));
    }
    for n in 4..=7 {
        affine.push(FamilyName::AffineD(n));
    }
    affine.extend([
        FamilyName::AffineE6,
        FamilyName::AffineE7,
        FamilyName::AffineE8,
        FamilyName::AffineF4,
        FamilyName::AffineG2,
    ]);

    for family in &finite {
        let g = family.diagram();
        let n = g.rank();
        assert_eq!(
            identify_family(&g),
            Some(family.canonical()),
            "identify_family on {family}"
        );
        let verdict = group_type(&g).unwrap();
        assert_eq!(verdict.kind, Kind::Finite, "{family} kind");
        let m = cosine_matrix(&g, MatrixMode::Exact).unwrap();
        assert_eq!(
            inertia(&m),
            Inertia {
                positive: n,
                negative: 0,
                zero: 0
            },
            "{family} inertia"
        );
    }

    for family in &affine {
        let g = family.diagram();
        let n = g.rank();
        assert_eq!(identify_family(&g), Some(*family), "identify_family on {family}");
        let verdict = group_type(&g).unwrap();
        assert_eq!(verdict.kind, Kind::Affine, "{family} kind");
        let m = cosine_matrix(&g, MatrixMode::Exact).unwrap();
        assert_eq!(
            inertia(&m),
            Inertia {
                positive: n - 1,
                negative: 0,
                zero: 1
            },
            "{family} corank"
        );
    }

    println!(
        "ACCEPTANCE 9 PASS: group_type and identify_family correct on {} finite and {} affine diagrams",
        finite.len(),
        affine.len()
    );
}

#[test]
fn criterion_10_negative_controls() {
    let start = Instant::now();

    // Ã_2 triangle
    let mut triangle = CoxeterGraph::new(3);
    for (i, j) in [(1, 2), (2, 3), (1, 3)] {
        triangle.set_label(i, j, Label::Finite(3)).unwrap();
    }
    let report = is_word_hyperbolic(&triangle).unwrap();
    assert!(!report.hyperbolic);
    assert_eq!(report.witness, Some(Witness::Affine(VertexSet::full(3))));
    assert!(verify_witness(&triangle, &report));

    // two unjoined ∞ edges
    let mut pair = CoxeterGraph::new(4);
    pair.set_label(1, 2, Label::Infinite).unwrap();
    pair.set_label(3, 4, Label::Infinite).unwrap();
    let report = is_word_hyperbolic(&pair).unwrap();
    assert!(!report.hyperbolic);
    let a: VertexSet = [1usize, 2].into_iter().collect();
    let b: VertexSet = [3usize, 4].into_iter().collect();
    assert_eq!(report.witness, Some(Witness::Pair(a, b)));
    assert!(verify_witness(&pair, &report));

    // the affine witness recomputes to n⁻ = 0, n⁰ ≥ 1
    let m = cosine_matrix(&triangle, MatrixMode::Exact).unwrap();
    let ine = inertia(&m);
    assert_eq!(ine.negative, 0);
    assert!(ine.zero >= 1);
    // cos_label sanity for the triangle entries
    assert_eq!(cos_label(3).unwrap(), FieldElement::from_ratio(1, 2));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 10 exceeded 1 s");
    println!(
        "ACCEPTANCE 10 PASS: affine triangle and unjoined infinite pair rejected with verified witnesses ({:.0} ms)",
        elapsed.as_secs_f64() * 1e3
    );
}
