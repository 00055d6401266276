//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All comparisons are exact (rational arithmetic); tolerances are
//! exact equality throughout. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the per-criterion lines).

use std::path::PathBuf;
use std::time::Instant;

use motivecalc::verify::{
    gen_config, hom_vanishing_check, run_verify, SuiteKind, VerifyOptions,
};
use motivecalc::workspace::{parse_workspace, Workspace};

use motivecalc_core::derived::{cone, shift, Complex};
use motivecalc_core::gen::{
    case_rng, gen_adjacent_band, gen_chain_map, gen_complex, gen_heart_complex, gen_ses,
    gen_w_ge, gen_w_le, gen_without_weights,
};
use motivecalc_core::mixed::weight_filtration_obj;
use motivecalc_core::weights::{
    check_gr0_adjunction, check_gr0_adjunction_right, gr0_adjoint, heart_normal_form,
    heart_via_triangle, is_heart, is_w_ge, is_w_le, is_without_weights,
    rebuild_from_normal_form, split_adjacent, w_ge_via_triangle, w_le_via_triangle, w_weights,
    AdjointSide,
};

fn load(name: &str) -> Workspace {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../workspaces")
        .join(name);
    parse_workspace(&path).expect("workspace parses")
}

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "{}: {criterion} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

/// Criterion 1: the weight-structure axioms on ≥ 500 fuzzed complexes per
/// workspace, for the trivial, abelian, and nonabelian workspaces, within
/// 60 seconds each.
#[test]
fn criterion_1_weight_structure_axioms() {
    for name in ["tate_trivial.toml", "c4_dirichlet.toml", "s3_artin.toml"] {
        let ws = load(name);
        let start = Instant::now();
        let report = run_verify(
            &ws,
            &VerifyOptions {
                suite: SuiteKind::Axioms,
                fuzz: 500,
                seed: 20_260_810,
            },
        )
        .expect("suite runs");
        let elapsed = start.elapsed();
        let cases = report
            .records
            .iter()
            .filter(|r| r.check == "weight-filtration-existence")
            .count();
        verdict(
            &format!("criterion 1 [{name}]"),
            report.all_pass() && cases >= 500 && elapsed.as_secs() < 60,
            &format!(
                "axioms on {cases} complexes, {} checks, {:.1}s",
                report.records.len(),
                elapsed.as_secs_f64()
            ),
        );
    }
}

/// Criterion 2: the cohomology predicates agree with the triangle route in
/// both directions for all four membership shapes, on ≥ 500 complexes.
#[test]
fn criterion_2_membership_equivalence() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let mut checked = 0usize;
    for i in 0..500u64 {
        let mut rng = case_rng(912, i);
        let k = gen_complex(&cfg, &mut rng);
        let wws = w_weights(&k);
        let mut samples = vec![0i32];
        if let (Some(&lo), Some(&hi)) = (wws.first(), wws.last()) {
            samples.extend([lo - 1, lo, hi - 1, hi]);
        }
        samples.sort_unstable();
        samples.dedup();
        for &r in &samples {
            assert_eq!(
                is_w_le(&k, r),
                w_le_via_triangle(&k, r).unwrap(),
                "w<= disagrees at {r} on case {i}"
            );
            assert_eq!(
                is_w_ge(&k, r),
                w_ge_via_triangle(&k, r).unwrap(),
                "w>= disagrees at {r} on case {i}"
            );
            for ds in 0..=1 {
                assert_eq!(
                    is_without_weights(&k, r, r + ds),
                    motivecalc_core::weights::without_weights_via_triangle(&k, r, r + ds)
                        .unwrap(),
                    "without-weights disagrees at {r}..{} on case {i}",
                    r + ds
                );
            }
        }
        assert_eq!(
            is_heart(&k),
            heart_via_triangle(&k).unwrap(),
            "heart disagrees on case {i}"
        );
        checked += 1;
    }
    verdict(
        "criterion 2",
        checked >= 500,
        &format!("predicate/triangle equivalence on {checked} complexes, zero counterexamples"),
    );
}

/// Criterion 3: derived Hom of heart-concentrated pairs equals Hom in
/// degree 0, Ext¹ in degree 1, and vanishes in degrees 2..=5, on ≥ 200
/// pairs.
#[test]
fn criterion_3_ext_degree_identification() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let mut checked = 0usize;
    for i in 0..200u64 {
        let mut rng = case_rng(37, i);
        let m1 = motivecalc_core::gen::gen_mixed(&cfg, &mut rng);
        let m2 = motivecalc_core::gen::gen_mixed(&cfg, &mut rng);
        let c1 = Complex::concentrated(m1.clone(), 0);
        let c2 = Complex::concentrated(m2.clone(), 0);
        let hom = motivecalc_core::mixed::hom_mixed_dim(&m1, &m2).unwrap();
        let ext = motivecalc_core::mixed::ext1(&m1, &m2).unwrap().0;
        assert_eq!(
            motivecalc_core::derived::hom_derived(&c1, &c2, 0).unwrap(),
            hom,
            "degree 0 mismatch on case {i}"
        );
        assert_eq!(
            motivecalc_core::derived::hom_derived(&c1, &c2, 1).unwrap(),
            ext,
            "degree 1 mismatch on case {i}"
        );
        for p in 2..=5 {
            assert_eq!(
                motivecalc_core::derived::hom_derived(&c1, &c2, p).unwrap(),
                0,
                "degree {p} nonzero on case {i}"
            );
        }
        checked += 1;
    }
    verdict(
        "criterion 3",
        checked >= 200,
        &format!("hom/ext/zero degree identification on {checked} pairs"),
    );
}

/// Criterion 4: the graded-strand description of the t-structure matches
/// cohomology vanishing on ≥ 500 complexes, including band-restricted runs
/// with truncation compatibility.
#[test]
fn criterion_4_t_structure_via_strands() {
    let ws = load("s3_artin.toml");
    let full = run_verify(
        &ws,
        &VerifyOptions {
            suite: SuiteKind::Main,
            fuzz: 500,
            seed: 44,
        },
    )
    .expect("suite runs");
    let t_cases = full
        .records
        .iter()
        .filter(|r| r.check == "t-le0-graded-vs-cohomology")
        .count();
    let band_cases = full
        .records
        .iter()
        .filter(|r| r.check == "truncation-band-compatibility")
        .count();
    // Band-restricted rerun.
    let mut narrow = ws.clone();
    narrow.band = (-4, 4);
    let restricted = run_verify(
        &narrow,
        &VerifyOptions {
            suite: SuiteKind::Main,
            fuzz: 100,
            seed: 45,
        },
    )
    .expect("suite runs");
    verdict(
        "criterion 4",
        full.all_pass() && restricted.all_pass() && t_cases >= 500 && band_cases >= 500,
        &format!(
            "graded t-structure route on {t_cases} complexes plus {} band-restricted, truncation compatibility on {band_cases}",
            100
        ),
    );
}

/// Criterion 5: Hom vanishing tables, exhaustively over the irreducibles
/// of the nonabelian workspace, twists in [−4, 4] and shifts in [−3, 3].
#[test]
fn criterion_5_hom_vanishing_tables() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let outcome = hom_vanishing_check(&cfg, -4, 4, -3, 3);
    verdict(
        "criterion 5",
        outcome.pass,
        &format!(
            "exhaustive vanishing over {} (twist, shift) table entries: {}",
            outcome.cases,
            if outcome.pass { "all zero" } else { &outcome.detail }
        ),
    );
}

/// Criterion 6: stability of without-weights intervals under extensions on
/// ≥ 200 fuzzed triples.
#[test]
fn criterion_6_without_weights_stability() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let mut checked = 0usize;
    for i in 0..200u64 {
        let mut rng = case_rng(606, i);
        let r = [-2, -1, 0, 1][i as usize % 4];
        let s = r + (i as usize % 2) as i32;
        let a = gen_without_weights(&cfg, &mut rng, r, s);
        let m = gen_without_weights(&cfg, &mut rng, r, s);
        let shifted = shift(&m, -1);
        let phi = gen_chain_map(&mut rng, &shifted, &a);
        let (l, _, _) = cone(&phi, &shifted, &a).unwrap();
        assert!(
            is_without_weights(&l, r, s),
            "cone gains a weight in {r}..{s} on case {i}"
        );
        checked += 1;
    }
    verdict(
        "criterion 6",
        checked >= 200,
        &format!("extension stability on {checked} triples, zero counterexamples"),
    );
}

/// Criterion 7: the graded adjunctions verified by dimension and explicit
/// basis bijection on ≥ 200 cases, and adjacent-weight splittings
/// reconstructing the complex up to quasi-isomorphism on ≥ 100 cases.
#[test]
fn criterion_7_adjunction_and_splitting() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let mut adjunction_cases = 0usize;
    for i in 0..200u64 {
        let mut rng = case_rng(707, i);
        if i % 2 == 0 {
            let k = gen_w_le(&cfg, &mut rng, 0);
            let n = gen_heart_complex(&cfg, &mut rng);
            let data = gr0_adjoint(&k, AdjointSide::Left).unwrap();
            assert!(is_heart(&data.gr0), "left graded piece leaves the heart");
            assert!(
                check_gr0_adjunction(&k, &data, &n).unwrap(),
                "left adjunction fails on case {i}"
            );
        } else {
            let k = gen_w_ge(&cfg, &mut rng, 0);
            let n = gen_heart_complex(&cfg, &mut rng);
            let data = gr0_adjoint(&k, AdjointSide::Right).unwrap();
            assert!(is_heart(&data.gr0), "right graded piece leaves the heart");
            assert!(
                check_gr0_adjunction_right(&k, &data, &n).unwrap(),
                "right adjunction fails on case {i}"
            );
        }
        adjunction_cases += 1;
    }
    let mut split_cases = 0usize;
    for i in 0..100u64 {
        let mut rng = case_rng(708, i);
        let k = gen_adjacent_band(&cfg, &mut rng);
        let split = split_adjacent(&k).unwrap();
        assert!(
            is_w_le(&split.m_minus1, -1) && is_w_ge(&split.m_minus1, -1),
            "low summand impure on case {i}"
        );
        assert!(
            split.comparison_quasi_iso(&k).unwrap(),
            "comparison not a quasi-isomorphism on case {i}"
        );
        split_cases += 1;
    }
    verdict(
        "criterion 7",
        adjunction_cases >= 200 && split_cases >= 100,
        &format!(
            "adjunction bijections on {adjunction_cases} cases, adjacent splittings on {split_cases} cases"
        ),
    );
}

/// Criterion 8: the realization detects the weight structure (four-way
/// table), is conservative on objects and morphisms, and satisfies the
/// degreewise cohomology formula, on ≥ 500 complexes.
#[test]
fn criterion_8_realization_detection() {
    let ws = load("s3_artin.toml");
    let report = run_verify(
        &ws,
        &VerifyOptions {
            suite: SuiteKind::Realization,
            fuzz: 500,
            seed: 88,
        },
    )
    .expect("suite runs");
    let tables = report
        .records
        .iter()
        .filter(|r| r.check == "weight-detection-table")
        .count();
    let formulas = report
        .records
        .iter()
        .filter(|r| r.check == "realization-formula")
        .count();
    let conservativity = report
        .records
        .iter()
        .filter(|r| r.check == "conservativity")
        .count();
    verdict(
        "criterion 8",
        report.all_pass() && tables >= 500 && formulas >= 500 && conservativity >= 500,
        &format!(
            "detection tables on {tables}, formula on {formulas}, conservativity on {conservativity} complexes"
        ),
    );
}

/// Criterion 9: heart structure: normal forms round trip, monomorphisms
/// split, and graded Hom dimensions agree with derived Hom on ≥ 200 pairs.
#[test]
fn criterion_9_heart_structure() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let mut checked = 0usize;
    for i in 0..200u64 {
        let mut rng = case_rng(909, i);
        let h1 = gen_heart_complex(&cfg, &mut rng);
        let h2 = gen_heart_complex(&cfg, &mut rng);
        let nf = heart_normal_form(&h1).unwrap();
        let rebuilt = rebuild_from_normal_form(&cfg.datum, &nf);
        assert_eq!(
            heart_normal_form(&rebuilt).unwrap(),
            nf,
            "normal form round trip fails on case {i}"
        );
        // Mono splitting: the canonical inclusion into a padded sum.
        let p_obj = nf;
        let r_obj = motivecalc_core::gen::gen_graded(&cfg, &mut rng);
        let q_obj = motivecalc_core::pure::direct_sum_pure(&p_obj, &r_obj).unwrap();
        let mut incl = motivecalc_core::pure::PureMorphism::zero();
        for (&m, rep) in p_obj.pieces() {
            let rows = q_obj.dim_at(m);
            incl.components.insert(
                m,
                motivecalc_core::exactla::RatMatrix::from_fn(rows, rep.dim(), |r, c| {
                    if r == c {
                        motivecalc_core::exactla::rat(1)
                    } else {
                        motivecalc_core::exactla::rat(0)
                    }
                }),
            );
        }
        let retraction =
            motivecalc_core::mixed::solve_graded_retraction(&incl, &p_obj, &q_obj)
                .unwrap()
                .expect("monomorphisms split in the graded heart");
        assert_eq!(
            retraction.compose(&incl),
            motivecalc_core::pure::PureMorphism::identity(&p_obj),
            "retraction is not a splitting on case {i}"
        );
        // Graded Hom agreement with the derived category.
        let nf2 = heart_normal_form(&h2).unwrap();
        let graded = motivecalc_core::pure::hom_pure(&heart_normal_form(&h1).unwrap(), &nf2)
            .unwrap()
            .len();
        let derived = motivecalc_core::derived::hom_derived(&h1, &h2, 0).unwrap();
        assert_eq!(graded, derived, "hom dimension mismatch on case {i}");
        checked += 1;
    }
    verdict(
        "criterion 9",
        checked >= 200,
        &format!("heart round trips, mono splittings, and hom agreement on {checked} pairs"),
    );
}

/// Criterion 10: the weight filtration is exact and functorial on ≥ 200
/// short exact sequences, for every level in the band.
#[test]
fn criterion_10_filtration_exactness() {
    let ws = load("s3_artin.toml");
    let cfg = gen_config(&ws);
    let mut checked = 0usize;
    for i in 0..200u64 {
        let mut rng = case_rng(1010, i);
        let ses = gen_ses(&cfg, &mut rng);
        for n in cfg.min_weight..=cfg.max_weight {
            let (wa, _) = weight_filtration_obj(&ses.sub, n);
            let (wb, _) = weight_filtration_obj(&ses.total, n);
            let (wc, _) = weight_filtration_obj(&ses.quotient, n);
            assert_eq!(
                wa.total_dim() + wc.total_dim(),
                wb.total_dim(),
                "filtration fails exactness at level {n} on case {i}"
            );
        }
        // Functoriality: a random morphism restricted to each level stays a
        // valid morphism between the filtration steps.
        let target = motivecalc_core::gen::gen_mixed(&cfg, &mut rng);
        let f = motivecalc_core::gen::gen_mixed_morphism(&mut rng, &ses.total, &target);
        for n in [-3, -1, 0, 2] {
            let (w_src, _) = weight_filtration_obj(&ses.total, n);
            let (w_dst, _) = weight_filtration_obj(&target, n);
            let restricted = motivecalc_core::pure::PureMorphism {
                components: f
                    .components
                    .iter()
                    .filter(|(m, _)| w_src.dim_at(**m) > 0)
                    .map(|(&m, c)| (m, c.clone()))
                    .collect(),
            };
            motivecalc_core::mixed::validate_mixed_morphism(&w_src, &w_dst, &restricted)
                .unwrap_or_else(|e| panic!("restriction invalid at level {n} on case {i}: {e}"));
        }
        checked += 1;
    }
    verdict(
        "criterion 10",
        checked >= 200,
        &format!("filtration exactness and functoriality on {checked} sequences"),
    );
}
