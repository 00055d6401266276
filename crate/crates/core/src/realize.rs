//! A toy contravariant realization to weight-graded equivariant spaces.
//!
//! The piece at twist m realizes to the dual representation placed in
//! weight 2m; operators are forgotten. On complexes the degree indexing
//! reverses and differentials transpose, so H^n of the target computes the
//! realization of cohomology in degree −n. The functor forgets extension
//! data; everything it is used for here (conservativity, exactness, weight
//! respect and detection) depends only on the graded bookkeeping.

use std::collections::BTreeMap;

use crate::derived::{cohomology, ChainMap, Complex, Degree};
use crate::error::{Error, Result};
use crate::exactla::{induced_on_subquotient, RatMatrix};
use crate::galois::{dual_rep, is_isomorphic, quotient_rep, sub_rep, GRep};
use crate::mixed::{MixedMorphism, MixedObject};
use crate::weights::{is_heart, is_w_ge, is_w_le, is_without_weights};

/// A weight-indexed family of representations, finitely supported.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightGradedSpace {
    pieces: BTreeMap<i32, GRep>,
}

impl WeightGradedSpace {
    pub fn zero() -> Self {
        WeightGradedSpace {
            pieces: BTreeMap::new(),
        }
    }

    pub fn new(pieces: BTreeMap<i32, GRep>) -> Self {
        WeightGradedSpace {
            pieces: pieces.into_iter().filter(|(_, r)| !r.is_zero()).collect(),
        }
    }

    pub fn pieces(&self) -> &BTreeMap<i32, GRep> {
        &self.pieces
    }

    pub fn piece(&self, w: i32) -> Option<&GRep> {
        self.pieces.get(&w)
    }

    pub fn dim_at(&self, w: i32) -> usize {
        self.pieces.get(&w).map_or(0, |r| r.dim())
    }

    pub fn weights(&self) -> Vec<i32> {
        self.pieces.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|r| r.dim()).sum()
    }
}

/// Realization of an object: the dual of the piece at twist m, in weight 2m.
pub fn realize_object(m_obj: &MixedObject) -> WeightGradedSpace {
    let pieces = m_obj
        .graded()
        .pieces()
        .iter()
        .map(|(&m, rep)| (2 * m, dual_rep(rep)))
        .collect();
    WeightGradedSpace::new(pieces)
}

/// Realization of a morphism f : M → N, contravariantly: the transpose of
/// the twist-m component, as a weight-2m map R(N) → R(M).
pub fn realize_morphism(f: &MixedMorphism) -> BTreeMap<i32, RatMatrix> {
    f.components
        .iter()
        .map(|(&m, c)| (2 * m, c.transpose()))
        .collect()
}

/// A bounded complex of weight-graded spaces with weight-preserving
/// equivariant differentials.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetComplex {
    terms: BTreeMap<Degree, WeightGradedSpace>,
    diffs: BTreeMap<Degree, BTreeMap<i32, RatMatrix>>,
}

impl TargetComplex {
    pub fn new(
        terms: BTreeMap<Degree, WeightGradedSpace>,
        diffs: BTreeMap<Degree, BTreeMap<i32, RatMatrix>>,
    ) -> Result<Self> {
        let terms: BTreeMap<Degree, WeightGradedSpace> =
            terms.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        let dim_at = |n: Degree, w: i32| -> usize { terms.get(&n).map_or(0, |t| t.dim_at(w)) };
        let mut kept: BTreeMap<Degree, BTreeMap<i32, RatMatrix>> = BTreeMap::new();
        for (n, by_weight) in diffs {
            let mut keep = BTreeMap::new();
            for (w, mat) in by_weight {
                let (rows, cols) = (dim_at(n + 1, w), dim_at(n, w));
                if mat.rows() != rows || mat.cols() != cols {
                    return Err(Error::DimensionMismatch(format!(
                        "target differential at degree {n}, weight {w} is {}x{}, expected {rows}x{cols}",
                        mat.rows(),
                        mat.cols()
                    )));
                }
                if rows == 0 || cols == 0 || mat.is_zero() {
                    continue;
                }
                let src = terms[&n].piece(w).unwrap();
                let dst = terms[&(n + 1)].piece(w).unwrap();
                for &g in src.group().generators() {
                    if mat.mul(src.action(g)) != dst.action(g).mul(&mat) {
                        return Err(Error::Malformed(format!(
                            "target differential at degree {n}, weight {w} is not equivariant"
                        )));
                    }
                }
                keep.insert(w, mat);
            }
            if !keep.is_empty() {
                kept.insert(n, keep);
            }
        }
        let c = TargetComplex { terms, diffs: kept };
        for (&n, by_weight) in &c.diffs {
            for (&w, mat) in by_weight {
                if let Some(next) = c.diff_at(n + 1, w) {
                    if !next.mul(mat).is_zero() {
                        return Err(Error::Malformed(format!(
                            "target differential does not square to zero at degree {n}, weight {w}"
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn terms(&self) -> &BTreeMap<Degree, WeightGradedSpace> {
        &self.terms
    }

    pub fn term(&self, n: Degree) -> WeightGradedSpace {
        self.terms
            .get(&n)
            .cloned()
            .unwrap_or_else(WeightGradedSpace::zero)
    }

    pub fn diff_at(&self, n: Degree, w: i32) -> Option<&RatMatrix> {
        self.diffs.get(&n).and_then(|m| m.get(&w))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.terms.keys().copied().collect()
    }

    fn diff_matrix(&self, n: Degree, w: i32) -> RatMatrix {
        self.diff_at(n, w).cloned().unwrap_or_else(|| {
            RatMatrix::zeros(
                self.terms.get(&(n + 1)).map_or(0, |t| t.dim_at(w)),
                self.terms.get(&n).map_or(0, |t| t.dim_at(w)),
            )
        })
    }

    /// Cohomology dimensions per (degree, weight) by rank bookkeeping.
    pub fn h_support(&self) -> BTreeMap<Degree, BTreeMap<i32, usize>> {
        let mut out = BTreeMap::new();
        for (&n, term) in &self.terms {
            let mut by_weight = BTreeMap::new();
            for (&w, rep) in term.pieces() {
                let out_rank = self.diff_matrix(n, w).rank();
                let in_rank = self.diff_matrix(n - 1, w).rank();
                let dim = rep.dim() - out_rank - in_rank;
                if dim > 0 {
                    by_weight.insert(w, dim);
                }
            }
            if !by_weight.is_empty() {
                out.insert(n, by_weight);
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.h_support().is_empty()
    }

    /// Cohomology at one degree with its representation structure.
    pub fn cohomology(&self, n: Degree) -> Result<WeightGradedSpace> {
        let mut pieces = BTreeMap::new();
        if let Some(term) = self.terms.get(&n) {
            for (&w, rep) in term.pieces() {
                let cycles = self.diff_matrix(n, w).kernel_matrix();
                let (z_rep, _incl) = sub_rep(rep, &cycles)?;
                if z_rep.is_zero() {
                    continue;
                }
                let boundaries = self.diff_matrix(n - 1, w).column_space();
                let b_in_z = cycles
                    .solve_matrix(&boundaries)?
                    .ok_or_else(|| Error::Malformed("boundaries are not cycles".into()))?;
                let (h_rep, _, _) = quotient_rep(&z_rep, &b_in_z)?;
                if !h_rep.is_zero() {
                    pieces.insert(w, h_rep);
                }
            }
        }
        Ok(WeightGradedSpace::new(pieces))
    }
}

/// Degreewise realization with reversed indexing: the degree-n term of the
/// target is the realization of K^{−n}, and the degree-n differential is
/// the transpose of d_K^{−n−1}.
pub fn realize_complex(k: &Complex) -> Result<TargetComplex> {
    let mut terms = BTreeMap::new();
    for (&p, t) in k.terms() {
        terms.insert(-p, realize_object(t));
    }
    let mut diffs: BTreeMap<Degree, BTreeMap<i32, RatMatrix>> = BTreeMap::new();
    for (&p, d) in k.diffs() {
        // d^p : K^p → K^{p+1} transposes to degree −p−1 of the target.
        let by_weight = realize_morphism(d);
        if !by_weight.is_empty() {
            diffs.insert(-p - 1, by_weight);
        }
    }
    TargetComplex::new(terms, diffs)
}

/// Realization of a chain map f : K → L as a map R(L) → R(K).
#[derive(Debug, Clone)]
pub struct TargetMap {
    pub components: BTreeMap<Degree, BTreeMap<i32, RatMatrix>>,
}

pub fn realize_chain_map(f: &ChainMap) -> TargetMap {
    let mut components = BTreeMap::new();
    for (&p, comp) in &f.components {
        let by_weight = realize_morphism(comp);
        if !by_weight.is_empty() {
            components.insert(-p, by_weight);
        }
    }
    TargetMap { components }
}

/// Is a target map a quasi-isomorphism? Checked per degree and weight via
/// the induced maps on the strand subquotients.
pub fn target_quasi_iso(f: &TargetMap, src: &TargetComplex, dst: &TargetComplex) -> Result<bool> {
    let src_h = src.h_support();
    let dst_h = dst.h_support();
    let mut keys: Vec<(Degree, i32)> = Vec::new();
    for (&n, by_w) in src_h.iter().chain(dst_h.iter()) {
        for &w in by_w.keys() {
            keys.push((n, w));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    for (n, w) in keys {
        let h_src = src_h.get(&n).and_then(|m| m.get(&w)).copied().unwrap_or(0);
        let h_dst = dst_h.get(&n).and_then(|m| m.get(&w)).copied().unwrap_or(0);
        if h_src != h_dst {
            return Ok(false);
        }
        if h_src == 0 {
            continue;
        }
        let fm = f
            .components
            .get(&n)
            .and_then(|m| m.get(&w))
            .cloned()
            .unwrap_or_else(|| {
                RatMatrix::zeros(
                    dst.terms().get(&n).map_or(0, |t| t.dim_at(w)),
                    src.terms().get(&n).map_or(0, |t| t.dim_at(w)),
                )
            });
        let induced = induced_on_subquotient(
            &fm,
            &src.diff_matrix(n, w).kernel_matrix(),
            &src.diff_matrix(n - 1, w).column_space(),
            &dst.diff_matrix(n, w).kernel_matrix(),
            &dst.diff_matrix(n - 1, w).column_space(),
        );
        match induced {
            Some(mat) => {
                if mat.rows() != mat.cols() || mat.rank() != mat.rows() {
                    return Ok(false);
                }
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// True iff every cohomology object is concentrated in the weight equal to
/// its degree.
pub fn target_w_heart(c: &TargetComplex) -> bool {
    c.h_support()
        .iter()
        .all(|(&n, by_w)| by_w.keys().all(|&w| w == n))
}

/// Verifies H^n R(K) ≅ R₀(ℋ^{−n} K) for every degree: equal weight
/// supports and dimensions, and isomorphic representations strandwise.
pub fn verify_realization_formula(k: &Complex) -> Result<bool> {
    let target = realize_complex(k)?;
    let mut degrees: Vec<Degree> = k.degrees().iter().map(|&p| -p).collect();
    degrees.extend(target.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        let lhs = target.cohomology(n)?;
        let rhs = realize_object(&cohomology(k, -n)?);
        if lhs.weights() != rhs.weights() {
            return Ok(false);
        }
        for w in lhs.weights() {
            let a = lhs.piece(w).unwrap();
            let b = rhs.piece(w).unwrap();
            if !is_isomorphic(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// The four-way criteria table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub criterion: String,
    pub motivic: bool,
    pub realized: bool,
}

impl ReportRow {
    pub fn matches(&self) -> bool {
        self.motivic == self.realized
    }
}

#[derive(Debug, Clone)]
pub struct WeightReport {
    pub rows: Vec<ReportRow>,
    pub formula_holds: bool,
}

impl WeightReport {
    pub fn all_match(&self) -> bool {
        self.formula_holds && self.rows.iter().all(|r| r.matches())
    }
}

/// Target-side weight-bound predicates. Contravariance inverts the bounds:
/// K of weights ≤ r corresponds to target cohomology of weights ≥ n − r.
pub fn target_w_le(c: &TargetComplex, r: i32) -> bool {
    c.h_support()
        .iter()
        .all(|(&n, by_w)| by_w.keys().all(|&w| w >= n - r))
}

pub fn target_w_ge(c: &TargetComplex, s: i32) -> bool {
    c.h_support()
        .iter()
        .all(|(&n, by_w)| by_w.keys().all(|&w| w <= n - s))
}

pub fn target_without_weights(c: &TargetComplex, r: i32, s: i32) -> bool {
    c.h_support()
        .iter()
        .all(|(&n, by_w)| by_w.keys().all(|&w| w < n - s || w > n - r))
}

/// Evaluates all four criteria on both sides at the given bounds.
pub fn weight_report(k: &Complex, r: i32, s: i32) -> Result<WeightReport> {
    let target = realize_complex(k)?;
    let rows = vec![
        ReportRow {
            criterion: "heart".into(),
            motivic: is_heart(k),
            realized: target_w_heart(&target),
        },
        ReportRow {
            criterion: format!("w<={r}"),
            motivic: is_w_le(k, r),
            realized: target_w_le(&target, r),
        },
        ReportRow {
            criterion: format!("w>={s}"),
            motivic: is_w_ge(k, s),
            realized: target_w_ge(&target, s),
        },
        ReportRow {
            criterion: format!("without {r}..{s}"),
            motivic: if r <= s {
                is_without_weights(k, r, s)
            } else {
                true
            },
            realized: if r <= s {
                target_without_weights(&target, r, s)
            } else {
                true
            },
        },
    ];
    Ok(WeightReport {
        rows,
        formula_holds: verify_realization_formula(k)?,
    })
}
