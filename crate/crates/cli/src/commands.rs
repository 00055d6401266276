//! Subcommand implementations: thin shells over the core operations,
//! rendering deterministic text.

use std::fmt::Write as _;

use motivecalc_core::derived::{hom_derived, Complex, TruncationBound};
use motivecalc_core::galois::{is_isomorphic, GRep};
use motivecalc_core::mixed::{ext1, hom_mixed_dim, gr_weight, MixedObject};
use motivecalc_core::realize::{realize_complex, weight_report};
use motivecalc_core::weights::{
    band_truncate, gr0_adjoint, gr_band, heart_normal_form, is_without_weights,
    split_adjacent, w_weights, weight_triangle, without_weights_triangle, AdjointSide,
};

use crate::workspace::Workspace;
use crate::CliError;

/// Looks a complex up by name; bare objects are wrapped in degree zero.
pub fn resolve_complex(ws: &Workspace, name: &str) -> Result<Complex, CliError> {
    if let Some(c) = ws.complexes.get(name) {
        return Ok(c.clone());
    }
    if let Some(obj) = ws.objects.get(name) {
        return Ok(Complex::concentrated(obj.clone(), 0));
    }
    Err(CliError::Malformed(format!(
        "no complex or object named {name:?} in the workspace"
    )))
}

pub fn resolve_object<'a>(ws: &'a Workspace, name: &str) -> Result<&'a MixedObject, CliError> {
    ws.objects.get(name).ok_or_else(|| {
        CliError::Malformed(format!("no object named {name:?} in the workspace"))
    })
}

/// Names a representation by the isomorphic workspace entry when one
/// exists.
fn describe_rep(ws: &Workspace, rep: &GRep) -> String {
    for (name, candidate) in &ws.reps {
        if is_isomorphic(candidate, rep).unwrap_or(false) {
            return format!("{name}({})", rep.dim());
        }
    }
    format!("dim {}", rep.dim())
}

fn object_summary(ws: &Workspace, obj: &MixedObject) -> String {
    if obj.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&m, rep) in obj.graded().pieces() {
        parts.push(format!("twist {m}: {}", describe_rep(ws, rep)));
    }
    let ops = obj.ops().len();
    if ops > 0 {
        parts.push(format!("{ops} operator(s)"));
    }
    parts.join(", ")
}

pub fn complex_summary(ws: &Workspace, k: &Complex) -> String {
    if k.is_zero() {
        return "zero complex\n".to_string();
    }
    let mut out = String::new();
    for (&p, term) in k.terms() {
        let _ = writeln!(out, "degree {p}: {}", object_summary(ws, term));
    }
    out
}

pub fn cmd_hom(ws: &Workspace, k: &str, l: &str, shift_by: i32) -> Result<String, CliError> {
    let a = resolve_complex(ws, k)?;
    let b = resolve_complex(ws, l)?;
    let dim = hom_derived(&a, &b, shift_by)?;
    Ok(format!("dim = {dim}\n"))
}

pub fn cmd_ext1(ws: &Workspace, m: &str, n: &str) -> Result<String, CliError> {
    let a = resolve_object(ws, m)?;
    let b = resolve_object(ws, n)?;
    let (dim, cocycles) = ext1(a, b)?;
    let mut out = format!("dim = {dim}\n");
    for (i, c) in cocycles.iter().enumerate() {
        let slots: Vec<String> = c
            .components
            .keys()
            .map(|(d, m)| format!("(d={d}, twist={m})"))
            .collect();
        let _ = writeln!(out, "cocycle {i}: {}", slots.join(" "));
    }
    Ok(out)
}

pub fn cmd_weight_filtration(ws: &Workspace, name: &str) -> Result<String, CliError> {
    let obj = resolve_object(ws, name)?;
    let weights = obj.weights();
    let mut out = String::new();
    if weights.is_empty() {
        return Ok("zero object: the filtration is trivial\n".to_string());
    }
    let lo = weights[0];
    let hi = *weights.last().unwrap();
    let _ = writeln!(out, "weights {lo}..{hi}");
    for n in (lo - 1)..=hi {
        let (w, _) = motivecalc_core::mixed::weight_filtration_obj(obj, n);
        let _ = writeln!(out, "W_{{{n}}}: total dim {}", w.total_dim());
    }
    for n in lo..=hi {
        let gr = gr_weight(obj, n);
        if !gr.is_zero() {
            let _ = writeln!(out, "gr_{{{n}}}: {}", object_summary(ws, &gr));
        }
    }
    Ok(out)
}

pub fn cmd_gr(ws: &Workspace, name: &str, n: i32) -> Result<String, CliError> {
    let obj = resolve_object(ws, name)?;
    let gr = gr_weight(obj, n);
    Ok(format!("gr_{{{n}}}: {}\n", object_summary(ws, &gr)))
}

pub fn cmd_t_truncate(
    ws: &Workspace,
    name: &str,
    bound: TruncationBound,
) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let (tr, _cmp) = motivecalc_core::derived::t_truncate(&k, bound)?;
    Ok(complex_summary(ws, &tr))
}

pub fn cmd_w_truncate(ws: &Workspace, name: &str, n: i32) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let t = weight_triangle(&k, n)?;
    let mut out = String::new();
    let _ = writeln!(out, "weights <= {n} part:");
    out.push_str(&complex_summary(ws, &t.low));
    let _ = writeln!(out, "weights >= {} part:", n + 1);
    out.push_str(&complex_summary(ws, &t.high));
    Ok(out)
}

pub fn cmd_band_gr(ws: &Workspace, name: &str, n: i32) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let strand = gr_band(&k, n);
    let mut out = format!("band {n} strand:\n");
    out.push_str(&complex_summary(ws, &strand));
    let (sub, _) = band_truncate(&k, n)?;
    let _ = writeln!(out, "band truncation <= {n}: total dim {}", sub.total_dim());
    Ok(out)
}

pub fn cmd_heart_normal_form(ws: &Workspace, name: &str) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let nf = heart_normal_form(&k)?;
    if nf.is_zero() {
        return Ok("zero normal form\n".to_string());
    }
    let mut out = String::new();
    for (&m, rep) in nf.pieces() {
        let _ = writeln!(out, "twist {m}: {}", describe_rep(ws, rep));
    }
    Ok(out)
}

pub fn cmd_gr0(ws: &Workspace, name: &str, side: AdjointSide) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let data = gr0_adjoint(&k, side)?;
    let mut out = String::new();
    let _ = writeln!(out, "graded piece of weight 0:");
    out.push_str(&complex_summary(ws, &data.gr0));
    let label = match side {
        AdjointSide::Left => "weights <= -1 part:",
        AdjointSide::Right => "weights >= 1 part:",
    };
    let _ = writeln!(out, "{label}");
    out.push_str(&complex_summary(ws, &data.rest));
    Ok(out)
}

pub fn cmd_split(ws: &Workspace, name: &str) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let split = split_adjacent(&k)?;
    let verified = split.comparison_quasi_iso(&k)?;
    let mut out = String::new();
    let _ = writeln!(out, "weight -1 summand:");
    out.push_str(&complex_summary(ws, &split.m_minus1));
    let _ = writeln!(out, "weight 0 summand:");
    out.push_str(&complex_summary(ws, &split.gr0));
    let _ = writeln!(
        out,
        "comparison map is a quasi-isomorphism: {}",
        if verified { "yes" } else { "no" }
    );
    Ok(out)
}

pub fn cmd_without_weights(ws: &Workspace, name: &str, r: i32, s: i32) -> Result<String, CliError> {
    if r > s {
        return Err(CliError::Usage("bounds must satisfy r <= s".into()));
    }
    let k = resolve_complex(ws, name)?;
    let without = is_without_weights(&k, r, s);
    let mut out = format!("without weights {r}..{s}: {}\n", if without { "yes" } else { "no" });
    if without {
        let t = without_weights_triangle(&k, r, s)?;
        let _ = writeln!(out, "weights <= {} part:", r - 1);
        out.push_str(&complex_summary(ws, &t.low));
        let _ = writeln!(out, "weights >= {} part:", s + 1);
        out.push_str(&complex_summary(ws, &t.high));
    }
    Ok(out)
}

pub fn cmd_realize(ws: &Workspace, name: &str) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let target = realize_complex(&k)?;
    if target.is_zero() {
        return Ok("zero target complex\n".to_string());
    }
    let mut out = String::new();
    for (&n, term) in target.terms() {
        let parts: Vec<String> = term
            .pieces()
            .iter()
            .map(|(&w, rep)| format!("weight {w}: {}", describe_rep(ws, rep)))
            .collect();
        let _ = writeln!(out, "degree {n}: {}", parts.join(", "));
    }
    for (&n, by_weight) in &target.h_support() {
        for (&w, &dim) in by_weight {
            let _ = writeln!(out, "H^{n} at weight {w}: dim {dim}");
        }
    }
    Ok(out)
}

pub fn cmd_weight_report(
    ws: &Workspace,
    name: &str,
    r: Option<i32>,
    s: Option<i32>,
) -> Result<String, CliError> {
    let k = resolve_complex(ws, name)?;
    let wws = w_weights(&k);
    let default_r = wws.first().copied().unwrap_or(0);
    let default_s = wws.last().copied().unwrap_or(0);
    let (r, s) = (r.unwrap_or(default_r), s.unwrap_or(default_s));
    if r > s {
        return Err(CliError::Usage("bounds must satisfy r <= s".into()));
    }
    let report = weight_report(&k, r, s)?;
    let mut out = String::new();
    let _ = writeln!(out, "{:<16} {:<8} {:<12} match", "criterion", "direct", "realization");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{:<16} {:<8} {:<12} {}",
            row.criterion,
            row.motivic,
            row.realized,
            if row.matches() { "yes" } else { "NO" }
        );
    }
    let _ = writeln!(
        out,
        "cohomology formula: {}",
        if report.formula_holds { "verified" } else { "VIOLATED" }
    );
    Ok(out)
}

/// Sanity helper used by tests: Hom between two named objects in degree 0
/// equals the direct computation.
pub fn hom_cross_check(ws: &Workspace, m: &str, n: &str) -> Result<bool, CliError> {
    let a = resolve_object(ws, m)?;
    let b = resolve_object(ws, n)?;
    let direct = hom_mixed_dim(a, b)?;
    let derived = hom_derived(
        &Complex::concentrated(a.clone(), 0),
        &Complex::concentrated(b.clone(), 0),
        0,
    )?;
    Ok(direct == derived)
}
