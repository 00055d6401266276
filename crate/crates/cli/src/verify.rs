//! The verification suites: deterministic seeded fuzzing of the structural
//! properties, organized as axioms | main | interaction | realization.
//! Each case derives its own generator from the master seed and the case
//! index, so suites can fan out over a worker pool and still produce
//! identical reports; records are assembled in case order.

use rayon::prelude::*;
use std::collections::BTreeMap;

use motivecalc_core::derived::{
    block_map, cohomology_support, cone, direct_sum_complex, hom_derived, is_acyclic,
    is_quasi_iso, shift, ChainMap, Complex, TruncationBound,
};
use motivecalc_core::exactla::rat;
use motivecalc_core::galois::GRep;
use motivecalc_core::gen::{
    case_rng, gen_adjacent_band, gen_chain_map, gen_complex, gen_graded, gen_heart_complex,
    gen_mixed, gen_mixed_morphism, gen_ses, gen_w_ge, gen_w_le, gen_without_weights, GenConfig,
};
use motivecalc_core::mixed::{MixedObject, validate_mixed_morphism, weight_filtration_obj};
use motivecalc_core::pure::{hom_pure, GradedObject, PureMorphism};
use motivecalc_core::realize::{
    realize_chain_map, realize_complex, realize_object, target_quasi_iso, weight_report,
};
use motivecalc_core::weights::{
    check_gr0_adjunction, check_gr0_adjunction_right, gr0_adjoint, heart_normal_form,
    heart_via_triangle, is_heart, is_w_ge, is_w_le, is_without_weights, rebuild_from_normal_form,
    split_adjacent, split_idempotent, t_le0_via_gr, w_ge_via_triangle, w_le_via_triangle,
    w_weights, weight_triangle, without_weights_via_triangle, AdjointSide,
};

use crate::report::{digest_complexes, CheckRecord};
use crate::workspace::{Workspace, WorkspaceWriter};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Axioms,
    Main,
    Interaction,
    Realization,
    All,
}

impl SuiteKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "axioms" => Ok(SuiteKind::Axioms),
            "main" => Ok(SuiteKind::Main),
            "interaction" => Ok(SuiteKind::Interaction),
            "realization" => Ok(SuiteKind::Realization),
            "all" => Ok(SuiteKind::All),
            other => Err(CliError::Usage(format!(
                "unknown suite {other:?}; expected axioms|main|interaction|realization|all"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suite: SuiteKind,
    pub fuzz: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub struct Counterexample {
    pub suite: String,
    pub check: String,
    pub case: u64,
    pub workspace_toml: String,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub records: Vec<CheckRecord>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass())
    }
}

struct CaseResult {
    check: &'static str,
    digest: String,
    pass: bool,
    detail: String,
    inputs: Vec<Complex>,
}

impl CaseResult {
    fn ok(check: &'static str, inputs: Vec<&Complex>, pass: bool, detail: impl Into<String>) -> Self {
        CaseResult {
            check,
            digest: digest_complexes(&inputs),
            pass,
            detail: if pass { String::new() } else { detail.into() },
            inputs: inputs.into_iter().cloned().collect(),
        }
    }
}

/// Builds the generation bounds from a workspace: the pool is the allowed
/// representation list (or all named ones), always containing the trivial
/// representation.
pub fn gen_config(ws: &Workspace) -> GenConfig {
    let mut pool: Vec<GRep> = match &ws.allowed {
        Some(names) => names.iter().map(|n| ws.reps[n].clone()).collect(),
        None => ws.reps.values().cloned().collect(),
    };
    pool.retain(|r| !r.is_zero());
    let triv = GRep::trivial(ws.group.clone());
    if !pool.iter().any(|r| *r == triv) {
        pool.push(triv);
    }
    GenConfig::new(ws.datum.clone(), pool).with_band(ws.band.0, ws.band.1)
}

pub fn run_verify(ws: &Workspace, opts: &VerifyOptions) -> Result<SuiteReport, CliError> {
    let cfg = gen_config(ws);
    let suites: Vec<SuiteKind> = match opts.suite {
        SuiteKind::All => vec![
            SuiteKind::Axioms,
            SuiteKind::Main,
            SuiteKind::Interaction,
            SuiteKind::Realization,
        ],
        s => vec![s],
    };
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    for suite in suites {
        let (name, runner): (&str, fn(&GenConfig, u64, u64) -> Vec<CaseResult>) = match suite {
            SuiteKind::Axioms => ("axioms", axioms_case),
            SuiteKind::Main => ("main", main_case),
            SuiteKind::Interaction => ("interaction", interaction_case),
            SuiteKind::Realization => ("realization", realization_case),
            SuiteKind::All => unreachable!(),
        };
        let per_case: Vec<Vec<CaseResult>> = (0..opts.fuzz as u64)
            .into_par_iter()
            .map(|i| runner(&cfg, opts.seed, i))
            .collect();
        // Whole-table checks run once per suite.
        let mut extra = Vec::new();
        if suite == SuiteKind::Main {
            extra.extend(hom_vanishing_tables(&cfg, -2, 2, -2, 2));
        }
        for (i, results) in per_case
            .into_iter()
            .chain(std::iter::once(extra))
            .enumerate()
        {
            for r in results {
                if !r.pass && !counterexamples.iter().any(|c: &Counterexample| c.check == r.check) {
                    counterexamples.push(make_counterexample(
                        ws, name, r.check, i as u64, &r.inputs,
                    ));
                }
                records.push(CheckRecord {
                    suite: name.to_string(),
                    check: r.check.to_string(),
                    case: i as u64,
                    digest: r.digest,
                    verdict: if r.pass { "pass" } else { "fail" },
                    detail: r.detail,
                });
            }
        }
    }
    Ok(SuiteReport {
        records,
        counterexamples,
    })
}

/// Re-runnable failure predicates for the single-complex checks, used to
/// minimize reproducers.
fn failure_predicate(check: &str) -> Option<Box<dyn Fn(&Complex) -> bool>> {
    match check {
        "t-le0-graded-vs-cohomology" => Some(Box::new(|k| {
            let rhs = cohomology_support(k).keys().all(|&n| n <= 0);
            t_le0_via_gr(k) != rhs
        })),
        "realization-formula" => Some(Box::new(|k| {
            !motivecalc_core::realize::verify_realization_formula(k).unwrap_or(true)
        })),
        "predicate-vs-triangle" => Some(Box::new(|k| {
            for r in -4..=4 {
                if Some(is_w_le(k, r)) != w_le_via_triangle(k, r).ok() {
                    return true;
                }
                if Some(is_w_ge(k, r)) != w_ge_via_triangle(k, r).ok() {
                    return true;
                }
            }
            Some(is_heart(k)) != heart_via_triangle(k).ok()
        })),
        "weight-filtration-existence" => Some(Box::new(|k| {
            for n in -6..=6 {
                match weight_triangle(k, n) {
                    Ok(t) => {
                        if !is_w_le(&t.low, n)
                            || !is_w_ge(&t.high, n + 1)
                            || t.low.total_dim() + t.high.total_dim() != k.total_dim()
                        {
                            return true;
                        }
                    }
                    Err(_) => return true,
                }
            }
            false
        })),
        "shift-semi-invariance" => Some(Box::new(|k| {
            let shifted = shift(k, 1);
            (-4..=4).any(|r| {
                (is_w_le(k, r) && !is_w_le(&shifted, r + 1))
                    || (is_w_ge(k, r) && !is_w_ge(&shifted, r + 1))
            })
        })),
        "weight-detection-table" => Some(Box::new(|k| {
            for (r, s) in [(-1, 0), (0, 0), (0, 1), (-2, 2)] {
                match weight_report(k, r, s) {
                    Ok(rep) => {
                        if !rep.all_match() {
                            return true;
                        }
                    }
                    Err(_) => return true,
                }
            }
            false
        })),
        _ => None,
    }
}

/// Minimizes a failing input complex by structural pruning while the check
/// keeps failing, then serializes a reproducer workspace.
fn make_counterexample(
    ws: &Workspace,
    suite: &str,
    check: &str,
    case: u64,
    inputs: &[Complex],
) -> Counterexample {
    let mut minimized: Vec<Complex> = inputs.to_vec();
    if inputs.len() == 1 {
        if let Some(fails) = failure_predicate(check) {
            if fails(&inputs[0]) {
                minimized = vec![shrink_complex(&inputs[0], fails.as_ref())];
            }
        }
    }
    let mut writer = WorkspaceWriter::new(&ws.group, &ws.datum);
    writer.add_band(ws.band);
    for (i, k) in minimized.iter().enumerate() {
        writer.add_complex(&format!("input{i}"), k);
    }
    Counterexample {
        suite: suite.to_string(),
        check: check.to_string(),
        case,
        workspace_toml: format!(
            "# reproducer: suite={suite}, check={check}, case={case}\n{}",
            writer.to_toml()
        ),
    }
}

/// Shrinks a complex while `fails` stays true: dropping terms, dropping
/// twist strands, clearing operators, clearing differentials.
pub fn shrink_complex(k: &Complex, fails: &dyn Fn(&Complex) -> bool) -> Complex {
    let mut current = k.clone();
    let mut progress = true;
    let mut budget = 64;
    while progress && budget > 0 {
        progress = false;
        budget -= 1;
        // Drop a term.
        for &p in &current.degrees() {
            let mut terms = current.terms().clone();
            terms.remove(&p);
            let mut diffs = current.diffs().clone();
            diffs.remove(&p);
            diffs.remove(&(p - 1));
            if let Ok(candidate) = Complex::new(current.datum().clone(), terms, diffs) {
                if candidate.total_dim() < current.total_dim() && fails(&candidate) {
                    current = candidate;
                    progress = true;
                    break;
                }
            }
        }
        if progress {
            continue;
        }
        // Drop a twist strand everywhere.
        for &m in &current.twist_support() {
            let terms: BTreeMap<_, _> = current
                .terms()
                .iter()
                .filter_map(|(&p, t)| {
                    let pieces: BTreeMap<_, _> = t
                        .graded()
                        .pieces()
                        .iter()
                        .filter(|(&tm, _)| tm != m)
                        .map(|(&tm, r)| (tm, r.clone()))
                        .collect();
                    let graded = GradedObject::new(t.graded().group().clone(), pieces).ok()?;
                    let ops: BTreeMap<_, _> = t
                        .ops()
                        .iter()
                        .filter(|(&(d, om), _)| om != m && om + d as i32 != m)
                        .map(|(&k2, v)| (k2, v.clone()))
                        .collect();
                    let obj = MixedObject::new(graded, t.datum().clone(), ops).ok()?;
                    Some((p, obj))
                })
                .collect();
            let diffs: BTreeMap<_, _> = current
                .diffs()
                .iter()
                .map(|(&p, f)| {
                    let components: BTreeMap<_, _> = f
                        .components
                        .iter()
                        .filter(|(&tm, _)| tm != m)
                        .map(|(&tm, c)| (tm, c.clone()))
                        .collect();
                    (p, PureMorphism { components })
                })
                .collect();
            if let Ok(candidate) = Complex::new(current.datum().clone(), terms, diffs) {
                if candidate.total_dim() < current.total_dim() && fails(&candidate) {
                    current = candidate;
                    progress = true;
                    break;
                }
            }
        }
        if progress {
            continue;
        }
        // Clear all operators.
        let stripped: BTreeMap<_, _> = current
            .terms()
            .iter()
            .map(|(&p, t)| (p, MixedObject::pure(t.graded().clone(), t.datum().clone())))
            .collect();
        if stripped.values().any(|t| !t.ops().is_empty()) {
            // nothing to do: pure objects have no ops
        }
        if current.terms().values().any(|t| !t.ops().is_empty()) {
            if let Ok(candidate) = Complex::new(
                current.datum().clone(),
                stripped,
                current.diffs().clone(),
            ) {
                if fails(&candidate) {
                    current = candidate;
                    progress = true;
                    continue;
                }
            }
        }
        // Clear a differential.
        for &p in &current.diffs().keys().copied().collect::<Vec<_>>() {
            let mut diffs = current.diffs().clone();
            diffs.remove(&p);
            if let Ok(candidate) =
                Complex::new(current.datum().clone(), current.terms().clone(), diffs)
            {
                if fails(&candidate) {
                    current = candidate;
                    progress = true;
                    break;
                }
            }
        }
    }
    current
}

fn fail_on_err<T>(res: motivecalc_core::Result<T>) -> Result<T, String> {
    res.map_err(|e| format!("internal error: {e}"))
}

// ---------------------------------------------------------------------------
// axioms: retract closure, shift semi-invariance, orthogonality, filtrations
// ---------------------------------------------------------------------------

fn axioms_case(cfg: &GenConfig, seed: u64, idx: u64) -> Vec<CaseResult> {
    let mut rng = case_rng(seed.wrapping_add(0xA), idx);
    let mut out = Vec::new();
    let k = gen_complex(cfg, &mut rng);

    // (4) Weight filtration triangles exist with the predicted memberships,
    // and their terms partition the complex.
    {
        let wws = w_weights(&k);
        let samples: Vec<i32> = if wws.is_empty() {
            vec![0]
        } else {
            vec![wws[0] - 1, wws[0], *wws.last().unwrap()]
        };
        let mut pass = true;
        let mut detail = String::new();
        for n in samples {
            match weight_triangle(&k, n) {
                Ok(t) => {
                    if !is_w_le(&t.low, n) || !is_w_ge(&t.high, n + 1) {
                        pass = false;
                        detail = format!("memberships fail at level {n}");
                        break;
                    }
                    if t.low.total_dim() + t.high.total_dim() != k.total_dim() {
                        pass = false;
                        detail = format!("triangle terms do not partition at level {n}");
                        break;
                    }
                }
                Err(e) => {
                    pass = false;
                    detail = format!("triangle construction failed at {n}: {e}");
                    break;
                }
            }
        }
        out.push(CaseResult::ok(
            "weight-filtration-existence",
            vec![&k],
            pass,
            detail,
        ));
    }

    // (2) Shift semi-invariance.
    {
        let shifted = shift(&k, 1);
        let mut pass = true;
        let mut detail = String::new();
        for r in -3..=3 {
            if is_w_le(&k, r) && !is_w_le(&shifted, r + 1) {
                pass = false;
                detail = format!("w<= fails under shift at r = {r}");
                break;
            }
            if is_w_ge(&k, r) && !is_w_ge(&shifted, r + 1) {
                pass = false;
                detail = format!("w>= fails under shift at r = {r}");
                break;
            }
        }
        out.push(CaseResult::ok("shift-semi-invariance", vec![&k], pass, detail));
    }

    // (3) Orthogonality: Hom(w≤0, w≥1) = 0, on generator families and on
    // normalized triangle parts of the fuzzed complex.
    {
        let x = gen_w_le(cfg, &mut rng, 0);
        let y = gen_w_ge(cfg, &mut rng, 1);
        let mut pass = true;
        let mut detail = String::new();
        match hom_derived(&x, &y, 0) {
            Ok(0) => {}
            Ok(d) => {
                pass = false;
                detail = format!("generated pair has hom dimension {d}");
            }
            Err(e) => {
                pass = false;
                detail = format!("internal error: {e}");
            }
        }
        if pass {
            if let Ok(t) = weight_triangle(&k, 0) {
                // t.low has weights ≤ 0; shifting the quotient up by one
                // puts it in weights ≥ 1.
                let y2 = shift(&t.high, 1);
                if !t.low.is_zero() && !y2.is_zero() {
                    match hom_derived(&t.low, &y2, 0) {
                        Ok(0) => {}
                        Ok(d) => {
                            pass = false;
                            detail = format!("triangle pair has hom dimension {d}");
                        }
                        Err(e) => {
                            pass = false;
                            detail = format!("internal error: {e}");
                        }
                    }
                }
            }
        }
        out.push(CaseResult::ok("orthogonality", vec![&x, &y], pass, detail));
    }

    // (1) Retract closure via split idempotents.
    {
        let a = gen_w_le(cfg, &mut rng, 0);
        let b = gen_w_le(cfg, &mut rng, 0);
        let result = (|| -> Result<(bool, String, Complex), String> {
            let sum = fail_on_err(direct_sum_complex(&a, &b))?;
            let g = gen_chain_map(&mut rng, &a, &b);
            // e = [[1, 0], [g, 0]]: an idempotent projecting onto the
            // twisted copy of the first summand.
            let mut components = BTreeMap::new();
            for &p in &sum.degrees() {
                let at = a.term(p);
                let bt = b.term(p);
                let parts = [&at, &bt];
                let gp = g.component(p);
                let e_p = block_map(&parts, &parts, &|i, j| match (i, j) {
                    (0, 0) => Some(PureMorphism::identity(at.graded())),
                    (1, 0) => Some(gp.clone()),
                    _ => None,
                });
                components.insert(p, e_p);
            }
            let e = ChainMap { components }.normalized();
            let (image, incl, retr) = fail_on_err(split_idempotent(&sum, &e))?;
            let composite = retr.compose(&incl);
            for &p in &image.degrees() {
                let id = PureMorphism::identity(image.term(p).graded());
                if composite.component(p) != id {
                    return Ok((false, format!("retraction fails at degree {p}"), sum));
                }
            }
            if !is_w_le(&image, 0) {
                return Ok((false, "summand leaves w<=0".to_string(), sum));
            }
            Ok((true, String::new(), sum))
        })();
        match result {
            Ok((pass, detail, sum)) => {
                out.push(CaseResult::ok("retract-closure", vec![&sum], pass, detail))
            }
            Err(e) => out.push(CaseResult::ok("retract-closure", vec![&a, &b], false, e)),
        }
    }

    // Pseudo-abelian splitting of idempotents on general complexes.
    {
        let l = gen_complex(cfg, &mut rng);
        let result = (|| -> Result<(bool, String, Complex), String> {
            let sum = fail_on_err(direct_sum_complex(&k, &l))?;
            let g = gen_chain_map(&mut rng, &k, &l);
            let mut components = BTreeMap::new();
            for &p in &sum.degrees() {
                let kt = k.term(p);
                let lt = l.term(p);
                let parts = [&kt, &lt];
                let gp = g.component(p);
                let e_p = block_map(&parts, &parts, &|i, j| match (i, j) {
                    (0, 0) => Some(PureMorphism::identity(kt.graded())),
                    (1, 0) => Some(gp.clone()),
                    _ => None,
                });
                components.insert(p, e_p);
            }
            let e = ChainMap { components }.normalized();
            let (image, _, _) = fail_on_err(split_idempotent(&sum, &e))?;
            // Complementary idempotent.
            let mut id_components = BTreeMap::new();
            for &p in &sum.degrees() {
                id_components.insert(p, PureMorphism::identity(sum.term(p).graded()));
            }
            let one = ChainMap {
                components: id_components,
            };
            let complement = one.add(&e.neg());
            let (co_image, _, _) = fail_on_err(split_idempotent(&sum, &complement))?;
            let pass = image.total_dim() + co_image.total_dim() == sum.total_dim();
            Ok((
                pass,
                if pass {
                    String::new()
                } else {
                    "idempotent images do not partition".to_string()
                },
                sum,
            ))
        })();
        match result {
            Ok((pass, detail, sum)) => out.push(CaseResult::ok(
                "idempotent-splitting",
                vec![&sum],
                pass,
                detail,
            )),
            Err(e) => out.push(CaseResult::ok("idempotent-splitting", vec![&k], false, e)),
        }
    }

    out
}

// ---------------------------------------------------------------------------
// main: the t-structure via graded strands, Ext degrees, heart, filtration
// ---------------------------------------------------------------------------

fn main_case(cfg: &GenConfig, seed: u64, idx: u64) -> Vec<CaseResult> {
    let mut rng = case_rng(seed.wrapping_add(0xB), idx);
    let mut out = Vec::new();
    let k = gen_complex(cfg, &mut rng);

    // Graded-strand description of the t-structure vs plain cohomology
    // vanishing in positive degrees.
    {
        let lhs = t_le0_via_gr(&k);
        let rhs = cohomology_support(&k).keys().all(|&n| n <= 0);
        out.push(CaseResult::ok(
            "t-le0-graded-vs-cohomology",
            vec![&k],
            lhs == rhs,
            format!("graded route {lhs}, cohomology route {rhs}"),
        ));
    }

    // Truncations: cohomology splits at the cut, and the band strands
    // commute with truncation.
    {
        let cut = *cohomology_support(&k).keys().next().unwrap_or(&0);
        let result = (|| -> Result<(bool, String), String> {
            let (tr, _cmp) = fail_on_err(motivecalc_core::derived::t_truncate(
                &k,
                TruncationBound::Le(cut),
            ))?;
            let h_tr = cohomology_support(&tr);
            let h_k = cohomology_support(&k);
            for (&n, strand) in &h_tr {
                if n > cut {
                    return Ok((false, format!("cohomology above the cut at {n}")));
                }
                if h_k.get(&n) != Some(strand) {
                    return Ok((false, format!("cohomology disagrees at {n}")));
                }
            }
            for (&n, strand) in &h_k {
                if n <= cut && h_tr.get(&n) != Some(strand) {
                    return Ok((false, format!("cohomology dropped at {n}")));
                }
            }
            // Band strands commute with truncation on cohomology.
            for &m in &k.twist_support() {
                let w = -2 * m;
                let strand_then_trunc = fail_on_err(motivecalc_core::derived::t_truncate(
                    &motivecalc_core::weights::gr_band(&k, w),
                    TruncationBound::Le(cut),
                ))?
                .0;
                let trunc_then_strand = motivecalc_core::weights::gr_band(&tr, w);
                if cohomology_support(&strand_then_trunc)
                    != cohomology_support(&trunc_then_strand)
                {
                    return Ok((false, format!("band strand at weight {w} disagrees")));
                }
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok(
            "truncation-band-compatibility",
            vec![&k],
            pass,
            detail,
        ));
    }

    // Ext degree bounds: derived Hom of heart-concentrated pairs.
    {
        let m1 = gen_mixed(cfg, &mut rng);
        let m2 = gen_mixed(cfg, &mut rng);
        let c1 = Complex::concentrated(m1.clone(), 0);
        let c2 = Complex::concentrated(m2.clone(), 0);
        let result = (|| -> Result<(bool, String), String> {
            let hom = fail_on_err(motivecalc_core::mixed::hom_mixed_dim(&m1, &m2))?;
            let ext = fail_on_err(motivecalc_core::mixed::ext1(&m1, &m2))?.0;
            let d0 = fail_on_err(hom_derived(&c1, &c2, 0))?;
            if d0 != hom {
                return Ok((false, format!("degree 0: derived {d0} vs direct {hom}")));
            }
            let d1 = fail_on_err(hom_derived(&c1, &c2, 1))?;
            if d1 != ext {
                return Ok((false, format!("degree 1: derived {d1} vs ext {ext}")));
            }
            for p in 2..=5 {
                let dp = fail_on_err(hom_derived(&c1, &c2, p))?;
                if dp != 0 {
                    return Ok((false, format!("degree {p}: expected 0, got {dp}")));
                }
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok("ext-degree-bound", vec![&c1, &c2], pass, detail));
    }

    // Heart: normal form round trip and Hom agreement with the graded
    // category.
    {
        let h1 = gen_heart_complex(cfg, &mut rng);
        let h2 = gen_heart_complex(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let nf = fail_on_err(heart_normal_form(&h1))?;
            let rebuilt = rebuild_from_normal_form(&cfg.datum, &nf);
            let nf2 = fail_on_err(heart_normal_form(&rebuilt))?;
            if nf != nf2 {
                return Ok((false, "normal form does not round trip".into()));
            }
            let nf_b = fail_on_err(heart_normal_form(&h2))?;
            let graded_dim = fail_on_err(hom_pure(&nf, &nf_b))?.len();
            let derived_dim = fail_on_err(hom_derived(&h1, &h2, 0))?;
            if graded_dim != derived_dim {
                return Ok((
                    false,
                    format!("graded hom {graded_dim} vs derived hom {derived_dim}"),
                ));
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok(
            "heart-hom-agreement",
            vec![&h1, &h2],
            pass,
            detail,
        ));
    }

    // Heart semisimplicity: a generated mono of graded objects splits.
    {
        let p_obj = gen_graded(cfg, &mut rng);
        let r_obj = gen_graded(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let q_obj = fail_on_err(motivecalc_core::pure::direct_sum_pure(&p_obj, &r_obj))?;
            // The canonical inclusion as a block map per twist.
            let mut incl = PureMorphism::zero();
            for (&m, rep) in p_obj.pieces() {
                let rows = q_obj.dim_at(m);
                let mat = motivecalc_core::exactla::RatMatrix::from_fn(rows, rep.dim(), |r, c| {
                    if r == c {
                        rat(1)
                    } else {
                        rat(0)
                    }
                });
                incl.components.insert(m, mat);
            }
            // Solve a retraction inside the graded hom space.
            let retraction = fail_on_err(motivecalc_core::mixed::solve_graded_retraction(
                &incl, &p_obj, &q_obj,
            ))?;
            match retraction {
                Some(r) => {
                    let composite = r.compose(&incl);
                    let id = PureMorphism::identity(&p_obj);
                    Ok((
                        composite == id,
                        "retraction does not restrict to the identity".into(),
                    ))
                }
                None => Ok((false, "no retraction found for a split mono".into())),
            }
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        let c = rebuild_from_normal_form(&cfg.datum, &p_obj);
        out.push(CaseResult::ok("heart-mono-splits", vec![&c], pass, detail));
    }

    // Weight filtration exactness and functoriality on short exact
    // sequences of mixed objects.
    {
        let ses = gen_ses(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            for n in cfg.min_weight..=cfg.max_weight {
                let (wa, _) = weight_filtration_obj(&ses.sub, n);
                let (wb, _) = weight_filtration_obj(&ses.total, n);
                let (wc, _) = weight_filtration_obj(&ses.quotient, n);
                if wa.total_dim() + wc.total_dim() != wb.total_dim() {
                    return Ok((false, format!("filtration not exact at level {n}")));
                }
            }
            // Morphisms preserve the filtration: restricting a random
            // morphism to each W level stays a valid morphism.
            let m2 = gen_mixed(cfg, &mut rng);
            let f = gen_mixed_morphism(&mut rng, &ses.total, &m2);
            for n in [-2, 0, 2] {
                let (w_src, _) = weight_filtration_obj(&ses.total, n);
                let (w_dst, _) = weight_filtration_obj(&m2, n);
                let restricted = PureMorphism {
                    components: f
                        .components
                        .iter()
                        .filter(|(m, _)| w_src.dim_at(**m) > 0)
                        .map(|(&m, c)| (m, c.clone()))
                        .collect(),
                };
                if validate_mixed_morphism(&w_src, &w_dst, &restricted).is_err() {
                    return Ok((false, format!("restriction invalid at level {n}")));
                }
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        let c = Complex::concentrated(ses.total.clone(), 0);
        out.push(CaseResult::ok(
            "filtration-exact-functorial",
            vec![&c],
            pass,
            detail,
        ));
    }

    out
}

/// Summary of an exhaustive table run.
#[derive(Debug)]
pub struct TableOutcome {
    pub pass: bool,
    pub detail: String,
    pub cases: u64,
}

fn hom_vanishing_tables(
    cfg: &GenConfig,
    m_lo: i32,
    m_hi: i32,
    s_lo: i32,
    s_hi: i32,
) -> Vec<CaseResult> {
    let outcome = hom_vanishing_check(cfg, m_lo, m_hi, s_lo, s_hi);
    vec![CaseResult {
        check: "hom-vanishing-tables",
        digest: crate::report::fnv_digest(&format!(
            "tables:{m_lo}..{m_hi}:{s_lo}..{s_hi}:{}",
            outcome.cases
        )),
        pass: outcome.pass,
        detail: outcome.detail,
        inputs: vec![],
    }]
}

/// Exhaustive Hom-vanishing tables over the representation pool: morphisms
/// from higher to lower twists vanish in every degree, and morphisms upward
/// vanish in degrees ≤ 0.
pub fn hom_vanishing_check(
    cfg: &GenConfig,
    m_lo: i32,
    m_hi: i32,
    s_lo: i32,
    s_hi: i32,
) -> TableOutcome {
    let mut pass = true;
    let mut detail = String::new();
    let mut checked: u64 = 0;
    'outer: for n1 in &cfg.rep_pool {
        for n2 in &cfg.rep_pool {
            for m1 in m_lo..=m_hi {
                for m2 in m_lo..=m_hi {
                    if m1 == m2 {
                        continue;
                    }
                    let x = Complex::concentrated(
                        MixedObject::pure(
                            motivecalc_core::pure::GradedObject::concentrated(n1.clone(), m1),
                            cfg.datum.clone(),
                        ),
                        0,
                    );
                    let y = Complex::concentrated(
                        MixedObject::pure(
                            motivecalc_core::pure::GradedObject::concentrated(n2.clone(), m2),
                            cfg.datum.clone(),
                        ),
                        0,
                    );
                    let ht = match motivecalc_core::derived::hom_total(&x, &y) {
                        Ok(h) => h,
                        Err(e) => {
                            pass = false;
                            detail = format!("internal error: {e}");
                            break 'outer;
                        }
                    };
                    for r in s_lo..=s_hi {
                        for s in s_lo..=s_hi {
                            let degree = s - r;
                            let dim = ht.h_dim(degree);
                            checked += 1;
                            if m1 > m2 && dim != 0 {
                                pass = false;
                                detail = format!(
                                    "nonzero hom from twist {m1} to {m2} at shift {degree}"
                                );
                                break 'outer;
                            }
                            if m1 < m2 && degree <= 0 && dim != 0 {
                                pass = false;
                                detail = format!(
                                    "nonzero upward hom at nonpositive shift {degree} ({m1} to {m2})"
                                );
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    TableOutcome {
        pass,
        detail,
        cases: checked,
    }
}

// ---------------------------------------------------------------------------
// interaction: predicate/triangle equivalences, stability, adjoints, splits
// ---------------------------------------------------------------------------

fn interaction_case(cfg: &GenConfig, seed: u64, idx: u64) -> Vec<CaseResult> {
    let mut rng = case_rng(seed.wrapping_add(0xC), idx);
    let mut out = Vec::new();
    let k = gen_complex(cfg, &mut rng);

    // Predicates vs the triangle route, both directions, all four shapes.
    {
        let result = (|| -> Result<(bool, String), String> {
            let wws = w_weights(&k);
            let mut samples: Vec<i32> = vec![0];
            if let (Some(&lo), Some(&hi)) = (wws.first(), wws.last()) {
                samples.extend([lo - 1, lo, hi - 1, hi]);
            }
            samples.sort_unstable();
            samples.dedup();
            for &r in &samples {
                if is_w_le(&k, r) != fail_on_err(w_le_via_triangle(&k, r))? {
                    return Ok((false, format!("w<= disagrees at {r}")));
                }
                if is_w_ge(&k, r) != fail_on_err(w_ge_via_triangle(&k, r))? {
                    return Ok((false, format!("w>= disagrees at {r}")));
                }
            }
            if is_heart(&k) != fail_on_err(heart_via_triangle(&k))? {
                return Ok((false, "heart disagrees".into()));
            }
            for &r in &samples {
                for ds in 0..=1 {
                    let s = r + ds;
                    if is_without_weights(&k, r, s)
                        != fail_on_err(without_weights_via_triangle(&k, r, s))?
                    {
                        return Ok((false, format!("without-weights disagrees at {r}..{s}")));
                    }
                }
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok(
            "predicate-vs-triangle",
            vec![&k],
            pass,
            detail,
        ));
    }

    // Stability of without-weights under extensions (cones).
    {
        let r = *[-2, -1, 0, 1].get(idx as usize % 4).unwrap();
        let s = r + (idx as usize % 2) as i32;
        let a = gen_without_weights(cfg, &mut rng, r, s);
        let m = gen_without_weights(cfg, &mut rng, r, s);
        let result = (|| -> Result<(bool, String, Complex), String> {
            let shifted = shift(&m, -1);
            let phi = gen_chain_map(&mut rng, &shifted, &a);
            let (l, _, _) = fail_on_err(cone(&phi, &shifted, &a))?;
            let pass = is_without_weights(&l, r, s);
            Ok((
                pass,
                if pass {
                    String::new()
                } else {
                    format!("cone gains a weight in {r}..{s}")
                },
                l,
            ))
        })();
        match result {
            Ok((pass, detail, l)) => out.push(CaseResult::ok(
                "without-weights-stability",
                vec![&a, &m, &l],
                pass,
                detail,
            )),
            Err(e) => out.push(CaseResult::ok(
                "without-weights-stability",
                vec![&a, &m],
                false,
                e,
            )),
        }
    }

    // The graded adjoints: dimension and explicit bijection.
    {
        let kle = gen_w_le(cfg, &mut rng, 0);
        let n = gen_heart_complex(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let data = fail_on_err(gr0_adjoint(&kle, AdjointSide::Left))?;
            if !is_heart(&data.gr0) {
                return Ok((false, "left graded piece leaves the heart".into()));
            }
            if !fail_on_err(check_gr0_adjunction(&kle, &data, &n))? {
                return Ok((false, "left adjunction bijection fails".into()));
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok(
            "gr0-left-adjunction",
            vec![&kle, &n],
            pass,
            detail,
        ));

        let kge = gen_w_ge(cfg, &mut rng, 0);
        let n2 = gen_heart_complex(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let data = fail_on_err(gr0_adjoint(&kge, AdjointSide::Right))?;
            if !is_heart(&data.gr0) {
                return Ok((false, "right graded piece leaves the heart".into()));
            }
            if !fail_on_err(check_gr0_adjunction_right(&kge, &data, &n2))? {
                return Ok((false, "right adjunction bijection fails".into()));
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok(
            "gr0-right-adjunction",
            vec![&kge, &n2],
            pass,
            detail,
        ));
    }

    // Adjacent-weight splitting.
    {
        let kb = gen_adjacent_band(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let split = fail_on_err(split_adjacent(&kb))?;
            if !(is_w_le(&split.m_minus1, -1) && is_w_ge(&split.m_minus1, -1)) {
                return Ok((false, "low part is not pure of weight -1".into()));
            }
            if !fail_on_err(split.comparison_quasi_iso(&kb))? {
                return Ok((false, "comparison map is not a quasi-isomorphism".into()));
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok("adjacent-splitting", vec![&kb], pass, detail));
    }

    out
}

// ---------------------------------------------------------------------------
// realization: formula, detection tables, conservativity, exactness
// ---------------------------------------------------------------------------

fn realization_case(cfg: &GenConfig, seed: u64, idx: u64) -> Vec<CaseResult> {
    let mut rng = case_rng(seed.wrapping_add(0xD), idx);
    let mut out = Vec::new();
    let k = gen_complex(cfg, &mut rng);

    // Degreewise formula.
    {
        let result = motivecalc_core::realize::verify_realization_formula(&k);
        let (pass, detail) = match result {
            Ok(true) => (true, String::new()),
            Ok(false) => (false, "cohomology formula fails".to_string()),
            Err(e) => (false, format!("internal error: {e}")),
        };
        out.push(CaseResult::ok("realization-formula", vec![&k], pass, detail));
    }

    // The four-way detection table at sampled bounds.
    {
        let wws = w_weights(&k);
        let (r, s) = match (wws.first(), wws.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi.max(lo)),
            _ => (0, 0),
        };
        let result = (|| -> Result<(bool, String), String> {
            for (rr, ss) in [(r, s), (r - 1, r), (s, s + 1), (0, 0)] {
                if rr > ss {
                    continue;
                }
                let report = fail_on_err(weight_report(&k, rr, ss))?;
                if !report.all_match() {
                    return Ok((false, format!("table mismatch at bounds {rr}..{ss}")));
                }
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok(
            "weight-detection-table",
            vec![&k],
            pass,
            detail,
        ));
    }

    // Conservativity on objects and morphisms.
    {
        let l = gen_complex(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let rk = fail_on_err(realize_complex(&k))?;
            if is_acyclic(&k) != rk.is_acyclic() {
                return Ok((false, "object conservativity fails".into()));
            }
            let f = gen_chain_map(&mut rng, &k, &l);
            let rl = fail_on_err(realize_complex(&l))?;
            let rf = realize_chain_map(&f);
            let lhs = fail_on_err(is_quasi_iso(&f, &k, &l))?;
            let rhs = fail_on_err(target_quasi_iso(&rf, &rl, &rk))?;
            if lhs != rhs {
                return Ok((
                    false,
                    format!("morphism conservativity fails: source {lhs}, target {rhs}"),
                ));
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        out.push(CaseResult::ok("conservativity", vec![&k, &l], pass, detail));
    }

    // Exactness of the realization on short exact sequences.
    {
        let ses = gen_ses(cfg, &mut rng);
        let result = (|| -> Result<(bool, String), String> {
            let ra = realize_object(&ses.sub);
            let rb = realize_object(&ses.total);
            let rc = realize_object(&ses.quotient);
            if ra.total_dim() + rc.total_dim() != rb.total_dim() {
                return Ok((false, "realized dimensions do not add".into()));
            }
            // Transposed maps compose to zero with complementary ranks.
            let r_incl = motivecalc_core::realize::realize_morphism(&ses.incl);
            let r_proj = motivecalc_core::realize::realize_morphism(&ses.proj);
            for (&w, mat) in &r_proj {
                if let Some(other) = r_incl.get(&w) {
                    if !other.mul(mat).is_zero() {
                        return Ok((false, format!("composite nonzero at weight {w}")));
                    }
                }
            }
            let rank_incl: usize = r_incl.values().map(|m| m.rank()).sum();
            let rank_proj: usize = r_proj.values().map(|m| m.rank()).sum();
            if rank_incl + rank_proj != rb.total_dim() {
                return Ok((false, "realized ranks are not complementary".into()));
            }
            Ok((true, String::new()))
        })();
        let (pass, detail) = result.unwrap_or_else(|e| (false, e));
        let c = Complex::concentrated(ses.total.clone(), 0);
        out.push(CaseResult::ok(
            "realization-exactness",
            vec![&c],
            pass,
            detail,
        ));
    }

    out
}

pub fn write_counterexamples(report: &SuiteReport, dir: &std::path::Path) -> Vec<std::path::PathBuf> {
    let mut written = Vec::new();
    for ce in &report.counterexamples {
        let path = dir.join(format!("reproducer-{}-{}.toml", ce.suite, ce.check));
        if std::fs::write(&path, &ce.workspace_toml).is_ok() {
            written.push(path);
        }
    }
    written
}
