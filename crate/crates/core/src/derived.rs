//! Bounded cochain complexes of mixed objects: the model of the
//! triangulated category, with cones, shifts, t-structure truncations,
//! cohomology, and derived Hom.
//!
//! Derived Hom is computed from the two-term complex of each term pair,
//! assembled as the total complex of a double complex. Cohomological
//! dimension one makes this exact in every degree; the heart-concentrated
//! cross-checks (degree 0 gives Hom, degree 1 gives Ext¹, nothing above)
//! pin the bookkeeping.

use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{express_in_span, Rat, RatMatrix};
use crate::galois::{hom_space, tensor_rep};
use crate::mixed::{
    hom_mixed, kernel_mixed, validate_mixed_morphism, ExtDatum, MixedMorphism,
    MixedObject,
};
use crate::pure::{express_pure, hom_pure, PureMorphism, Twist};

pub type Degree = i32;

/// A bounded cochain complex. Zero terms and zero differentials are never
/// stored, so structural equality is meaningful on canonical forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    datum: Arc<ExtDatum>,
    terms: BTreeMap<Degree, MixedObject>,
    diffs: BTreeMap<Degree, MixedMorphism>,
}

impl Complex {
    pub fn new(
        datum: Arc<ExtDatum>,
        terms: BTreeMap<Degree, MixedObject>,
        diffs: BTreeMap<Degree, MixedMorphism>,
    ) -> Result<Self> {
        let terms: BTreeMap<Degree, MixedObject> = terms
            .into_iter()
            .filter(|(_, t)| !t.is_zero())
            .collect();
        for t in terms.values() {
            if !crate::mixed::same_datum(t.datum(), &datum) {
                return Err(Error::DatumMismatch(
                    "complex term over a different ext datum".into(),
                ));
            }
        }
        let zero = MixedObject::zero(datum.clone());
        let mut kept_diffs = BTreeMap::new();
        for (p, f) in diffs {
            let src = terms.get(&p).unwrap_or(&zero);
            let dst = terms.get(&(p + 1)).unwrap_or(&zero);
            validate_mixed_morphism(src, dst, &f)?;
            let f = f.normalized();
            if !f.is_zero() && !src.is_zero() && !dst.is_zero() {
                kept_diffs.insert(p, f);
            }
        }
        let c = Complex {
            datum,
            terms,
            diffs: kept_diffs,
        };
        // d ∘ d = 0.
        for &p in c.terms.keys() {
            let square = c.diff(p + 1).compose(&c.diff(p));
            if !square.is_zero() {
                return Err(Error::Malformed(format!(
                    "differential does not square to zero at degree {p}"
                )));
            }
        }
        Ok(c)
    }

    pub fn zero(datum: Arc<ExtDatum>) -> Self {
        Complex {
            datum,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// A single object placed in one degree.
    pub fn concentrated(obj: MixedObject, degree: Degree) -> Self {
        let datum = obj.datum().clone();
        let mut terms = BTreeMap::new();
        if !obj.is_zero() {
            terms.insert(degree, obj);
        }
        Complex {
            datum,
            terms,
            diffs: BTreeMap::new(),
        }
    }

    /// The heart generator for a representation at a twist: the pure object
    /// at twist m placed in degree −2m.
    pub fn heart_generator(datum: Arc<ExtDatum>, rep: crate::galois::GRep, m: Twist) -> Self {
        let obj = MixedObject::pure(
            crate::pure::GradedObject::concentrated(rep, m),
            datum,
        );
        Complex::concentrated(obj, -2 * m)
    }

    pub fn tate_complex(datum: Arc<ExtDatum>, m: Twist, shift_by: Degree) -> Self {
        // Q(m)[s] sits in degree −s.
        let obj = MixedObject::tate(datum, m);
        Complex::concentrated(obj, -shift_by)
    }

    pub fn datum(&self) -> &Arc<ExtDatum> {
        &self.datum
    }

    pub fn terms(&self) -> &BTreeMap<Degree, MixedObject> {
        &self.terms
    }

    pub fn term_ref(&self, p: Degree) -> Option<&MixedObject> {
        self.terms.get(&p)
    }

    pub fn term(&self, p: Degree) -> MixedObject {
        self.terms
            .get(&p)
            .cloned()
            .unwrap_or_else(|| MixedObject::zero(self.datum.clone()))
    }

    pub fn diff(&self, p: Degree) -> MixedMorphism {
        self.diffs.get(&p).cloned().unwrap_or_else(PureMorphism::zero)
    }

    pub fn diffs(&self) -> &BTreeMap<Degree, MixedMorphism> {
        &self.diffs
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.terms.values().map(|t| t.total_dim()).sum()
    }

    pub fn min_degree(&self) -> Option<Degree> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.terms.keys().next_back().copied()
    }

    pub fn same_datum(&self, other: &Complex) -> bool {
        crate::mixed::same_datum(&self.datum, &other.datum)
    }

    /// Twists occurring anywhere in the complex.
    pub fn twist_support(&self) -> Vec<Twist> {
        let mut twists: Vec<Twist> = self
            .terms
            .values()
            .flat_map(|t| t.support())
            .collect();
        twists.sort_unstable();
        twists.dedup();
        twists
    }
}

/// Shift: K[n]^p = K^{p+n}, with differentials scaled by (−1)^n.
pub fn shift(k: &Complex, n: Degree) -> Complex {
    let sign = if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
    let terms = k
        .terms()
        .iter()
        .map(|(&p, t)| (p - n, t.clone()))
        .collect();
    let diffs = k
        .diffs()
        .iter()
        .map(|(&p, f)| {
            let g = if sign == 1 { f.clone() } else { f.neg() };
            (p - n, g)
        })
        .collect();
    Complex {
        datum: k.datum().clone(),
        terms,
        diffs,
    }
}

/// A chain map between complexes; components per degree, absent = zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    pub components: BTreeMap<Degree, MixedMorphism>,
}

impl ChainMap {
    pub fn zero() -> Self {
        ChainMap {
            components: BTreeMap::new(),
        }
    }

    pub fn identity(k: &Complex) -> Self {
        ChainMap {
            components: k
                .terms()
                .iter()
                .map(|(&p, t)| (p, PureMorphism::identity(t.graded())))
                .collect(),
        }
    }

    pub fn component(&self, p: Degree) -> MixedMorphism {
        self.components.get(&p).cloned().unwrap_or_else(PureMorphism::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|c| c.is_zero())
    }

    pub fn normalized(mut self) -> Self {
        self.components.retain(|_, c| !c.is_zero());
        self
    }

    pub fn compose(&self, inner: &ChainMap) -> ChainMap {
        let mut components = BTreeMap::new();
        for (&p, g) in &self.components {
            if let Some(f) = inner.components.get(&p) {
                components.insert(p, g.compose(f));
            }
        }
        ChainMap { components }.normalized()
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut components = self.components.clone();
        for (&p, c) in &other.components {
            components
                .entry(p)
                .and_modify(|x| *x = x.add(c))
                .or_insert_with(|| c.clone());
        }
        ChainMap { components }.normalized()
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            components: self.components.iter().map(|(&p, c)| (p, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> ChainMap {
        ChainMap {
            components: self
                .components
                .iter()
                .map(|(&p, c)| (p, c.scale(s)))
                .collect(),
        }
        .normalized()
    }

    /// Validity: every component is a mixed morphism and the squares with
    /// the differentials commute.
    pub fn validate(&self, src: &Complex, dst: &Complex) -> Result<()> {
        if !src.same_datum(dst) {
            return Err(Error::DatumMismatch("chain map across ext data".into()));
        }
        let mut degrees: Vec<Degree> = src.degrees();
        degrees.extend(self.components.keys().copied());
        degrees.sort_unstable();
        degrees.dedup();
        for &p in &degrees {
            validate_mixed_morphism(&src.term(p), &dst.term(p), &self.component(p))?;
        }
        for &p in &degrees {
            let lhs = dst.diff(p).compose(&self.component(p));
            let rhs = self.component(p + 1).compose(&src.diff(p));
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "chain map fails to commute with differentials at degree {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Direct sum of complexes, first summand's blocks first.
pub fn direct_sum_complex(a: &Complex, b: &Complex) -> Result<Complex> {
    let mut degrees = a.degrees();
    degrees.extend(b.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for &p in &degrees {
        terms.insert(p, crate::mixed::direct_sum_mixed(&a.term(p), &b.term(p))?);
    }
    for &p in &degrees {
        let d = block_diag_map(
            &[&a.term(p), &b.term(p)],
            &[&a.term(p + 1), &b.term(p + 1)],
            &[&a.diff(p), &b.diff(p)],
        );
        diffs.insert(p, d);
    }
    Complex::new(a.datum().clone(), terms, diffs)
}

/// Twistwise block-diagonal assembly of morphisms between direct sums.
fn block_diag_map(
    srcs: &[&MixedObject],
    dsts: &[&MixedObject],
    maps: &[&MixedMorphism],
) -> MixedMorphism {
    block_map(srcs, dsts, &|i, j| {
        if i == j {
            Some(maps[i].clone())
        } else {
            None
        }
    })
}

/// General block assembly: entry (i, j) is a morphism srcs[j] → dsts[i].
pub fn block_map(
    srcs: &[&MixedObject],
    dsts: &[&MixedObject],
    entry: &dyn Fn(usize, usize) -> Option<MixedMorphism>,
) -> MixedMorphism {
    let mut twists: Vec<Twist> = Vec::new();
    for s in srcs.iter().chain(dsts.iter()) {
        twists.extend(s.support());
    }
    twists.sort_unstable();
    twists.dedup();
    let mut components = BTreeMap::new();
    for &m in &twists {
        let rows: usize = dsts.iter().map(|d| d.dim_at(m)).sum();
        let cols: usize = srcs.iter().map(|s| s.dim_at(m)).sum();
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut mat = RatMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for (i, d) in dsts.iter().enumerate() {
            let mut c0 = 0;
            for (j, s) in srcs.iter().enumerate() {
                if let Some(f) = entry(i, j) {
                    if let Some(block) = f.component(m) {
                        for r in 0..block.rows() {
                            for c in 0..block.cols() {
                                let v = block.at(r, c);
                                if !v.is_zero() {
                                    mat.set(r0 + r, c0 + c, v.clone());
                                }
                            }
                        }
                    }
                }
                c0 += s.dim_at(m);
            }
            r0 += d.dim_at(m);
        }
        if !mat.is_zero() {
            components.insert(m, mat);
        }
    }
    PureMorphism { components }
}

/// Embedding of one summand into an ordered direct sum.
pub fn summand_inclusion(parts: &[&MixedObject], idx: usize) -> MixedMorphism {
    let dsts = parts;
    let src = parts[idx];
    block_map(&[src], dsts, &|i, _| {
        if i == idx {
            Some(PureMorphism::identity(src.graded()))
        } else {
            None
        }
    })
}

/// Projection of an ordered direct sum onto one summand.
pub fn summand_projection(parts: &[&MixedObject], idx: usize) -> MixedMorphism {
    let src = parts[idx];
    block_map(parts, &[src], &|_, j| {
        if j == idx {
            Some(PureMorphism::identity(src.graded()))
        } else {
            None
        }
    })
}

/// Mapping cone of a chain map f : K → L, with the triangle maps
/// L → cone(f) → K[1]. Cone terms are K^{p+1} ⊕ L^p and the differential is
/// [[−d_K, 0], [f, d_L]].
pub fn cone(f: &ChainMap, k: &Complex, l: &Complex) -> Result<(Complex, ChainMap, ChainMap)> {
    f.validate(k, l)?;
    let mut degrees: Vec<Degree> = k.degrees().iter().map(|&p| p - 1).collect();
    degrees.extend(l.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    for &p in &degrees {
        terms.insert(
            p,
            crate::mixed::direct_sum_mixed(&k.term(p + 1), &l.term(p))?,
        );
    }
    let mut diffs = BTreeMap::new();
    for &p in &degrees {
        let srcs = [&k.term(p + 1), &l.term(p)];
        let dsts = [&k.term(p + 2), &l.term(p + 1)];
        let dk = k.diff(p + 1).neg();
        let dl = l.diff(p);
        let fp = f.component(p + 1);
        let d = block_map(&[srcs[0], srcs[1]], &[dsts[0], dsts[1]], &|i, j| match (i, j) {
            (0, 0) => Some(dk.clone()),
            (1, 0) => Some(fp.clone()),
            (1, 1) => Some(dl.clone()),
            _ => None,
        });
        diffs.insert(p, d);
    }
    let c = Complex::new(k.datum().clone(), terms, diffs)?;
    // L → cone: inclusion of the second summand per degree.
    let incl = ChainMap {
        components: degrees
            .iter()
            .map(|&p| {
                (
                    p,
                    summand_inclusion(&[&k.term(p + 1), &l.term(p)], 1),
                )
            })
            .collect(),
    }
    .normalized();
    // cone → K[1]: projection onto the first summand.
    let proj = ChainMap {
        components: degrees
            .iter()
            .map(|&p| {
                (
                    p,
                    summand_projection(&[&k.term(p + 1), &l.term(p)], 0),
                )
            })
            .collect(),
    }
    .normalized();
    Ok((c, incl, proj))
}

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

/// Cohomology at one degree together with the cycle inclusion and the
/// projection/section pair of the quotient by boundaries.
#[derive(Debug, Clone)]
pub struct CohomologyAt {
    pub object: MixedObject,
    pub cycles: MixedObject,
    pub cycles_incl: MixedMorphism,
    pub proj: MixedMorphism,
    pub section: MixedMorphism,
}

/// ker d^n / im d^{n−1} with structure maps.
pub fn cohomology_at(k: &Complex, n: Degree) -> Result<CohomologyAt> {
    let term = k.term(n);
    let (cycles, cycles_incl) = kernel_mixed(&term, &k.term(n + 1), &k.diff(n))?;
    // Corestrict d^{n−1} onto the cycles.
    let prev = k.term(n - 1);
    let mut u_components = BTreeMap::new();
    for (&m, c) in &k.diff(n - 1).components {
        let basis = cycles_incl
            .component(m)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(term.dim_at(m), 0));
        let coords = basis
            .solve_matrix(c)
            .expect("shapes agree")
            .ok_or_else(|| Error::Malformed("differential does not land in cycles".into()))?;
        u_components.insert(m, coords);
    }
    let u = PureMorphism {
        components: u_components,
    }
    .normalized();
    let spans: BTreeMap<Twist, RatMatrix> = cycles
        .graded()
        .pieces()
        .iter()
        .map(|(&m, piece)| {
            let mat = u
                .component(m)
                .cloned()
                .unwrap_or_else(|| RatMatrix::zeros(piece.dim(), prev.dim_at(m)));
            (m, mat.column_space())
        })
        .collect();
    let (object, proj, section) = crate::mixed::quotient_mixed(&cycles, &spans)?;
    Ok(CohomologyAt {
        object,
        cycles,
        cycles_incl,
        proj,
        section,
    })
}

pub fn cohomology(k: &Complex, n: Degree) -> Result<MixedObject> {
    Ok(cohomology_at(k, n)?.object)
}

/// Strandwise cohomology dimensions: dim H^n at twist m equals
/// dim K^n_m − rank d^n_m − rank d^{n−1}_m. Cheap path for all the weight
/// predicates.
pub fn cohomology_support(k: &Complex) -> BTreeMap<Degree, BTreeMap<Twist, usize>> {
    let mut out = BTreeMap::new();
    for (&n, term) in k.terms() {
        let mut strand = BTreeMap::new();
        for (&m, piece) in term.graded().pieces() {
            let out_rank = k
                .diff(n)
                .component(m)
                .map_or(0, |c| c.rank());
            let in_rank = k
                .diff(n - 1)
                .component(m)
                .map_or(0, |c| c.rank());
            let dim = piece.dim() - out_rank - in_rank;
            if dim > 0 {
                strand.insert(m, dim);
            }
        }
        if !strand.is_empty() {
            out.insert(n, strand);
        }
    }
    out
}

pub fn is_acyclic(k: &Complex) -> bool {
    cohomology_support(k).is_empty()
}

/// The formal reduction ⊕_n H^n[−n]: same cohomology, zero differentials.
pub fn formal_reduction(k: &Complex) -> Result<Complex> {
    let mut terms = BTreeMap::new();
    for &n in k.terms().keys() {
        let h = cohomology(k, n)?;
        if !h.is_zero() {
            terms.insert(n, h);
        }
    }
    Complex::new(k.datum().clone(), terms, BTreeMap::new())
}

/// The map induced on cohomology at degree n by a chain map.
pub fn induced_on_cohomology(
    f: &ChainMap,
    k: &Complex,
    l: &Complex,
    n: Degree,
) -> Result<(CohomologyAt, CohomologyAt, MixedMorphism)> {
    let hk = cohomology_at(k, n)?;
    let hl = cohomology_at(l, n)?;
    // Restrict f to cycles: x with incl_L ∘ x = f ∘ incl_K.
    let fn_ = f.component(n);
    let mut x_components = BTreeMap::new();
    for (&m, basis_k) in &hk.cycles_incl.components {
        let Some(fm) = fn_.component(m) else { continue };
        let moved = fm.mul(basis_k);
        if moved.is_zero() {
            continue;
        }
        let basis_l = hl
            .cycles_incl
            .component(m)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(l.term(n).dim_at(m), 0));
        let coords = basis_l
            .solve_matrix(&moved)
            .expect("shapes agree")
            .ok_or_else(|| Error::InvalidMorphism("chain map does not preserve cycles".into()))?;
        x_components.insert(m, coords);
    }
    let x = PureMorphism {
        components: x_components,
    }
    .normalized();
    let induced = hl.proj.compose(&x).compose(&hk.section).normalized();
    Ok((hk, hl, induced))
}

/// A mixed morphism is invertible iff it is a twistwise isomorphism.
pub fn mixed_morphism_invertible(src: &MixedObject, dst: &MixedObject, f: &MixedMorphism) -> bool {
    let mut twists = src.support();
    twists.extend(dst.support());
    twists.sort_unstable();
    twists.dedup();
    for m in twists {
        let (a, b) = (src.dim_at(m), dst.dim_at(m));
        if a != b {
            return false;
        }
        if a == 0 {
            continue;
        }
        match f.component(m) {
            Some(c) => {
                if c.rank() != a {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

/// True iff every induced map on cohomology is invertible.
pub fn is_quasi_iso(f: &ChainMap, k: &Complex, l: &Complex) -> Result<bool> {
    let mut degrees = k.degrees();
    degrees.extend(l.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        let (hk, hl, induced) = induced_on_cohomology(f, k, l, n)?;
        if !mixed_morphism_invertible(&hk.object, &hl.object, &induced) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// t-structure truncations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationBound {
    Le(Degree),
    Ge(Degree),
}

/// Smart truncation. For ≤ n the top term is replaced by the cycles; for
/// ≥ n the bottom term by the quotient by boundaries. The comparison map
/// points into K for ≤ and out of K for ≥.
pub fn t_truncate(k: &Complex, bound: TruncationBound) -> Result<(Complex, ChainMap)> {
    match bound {
        TruncationBound::Le(n) => {
            let data = cohomology_at(k, n)?;
            let mut terms = BTreeMap::new();
            let mut diffs = BTreeMap::new();
            for (&p, t) in k.terms() {
                if p < n {
                    terms.insert(p, t.clone());
                }
            }
            if !data.cycles.is_zero() {
                terms.insert(n, data.cycles.clone());
            }
            for (&p, d) in k.diffs() {
                if p < n - 1 {
                    diffs.insert(p, d.clone());
                }
            }
            // Corestriction K^{n−1} → ker d^n.
            let mut u_components = BTreeMap::new();
            for (&m, c) in &k.diff(n - 1).components {
                let basis = data
                    .cycles_incl
                    .component(m)
                    .cloned()
                    .unwrap_or_else(|| RatMatrix::zeros(k.term(n).dim_at(m), 0));
                if let Some(coords) = basis.solve_matrix(c).expect("shapes agree") {
                    u_components.insert(m, coords);
                }
            }
            let u = PureMorphism {
                components: u_components,
            }
            .normalized();
            if !u.is_zero() {
                diffs.insert(n - 1, u);
            }
            let tr = Complex::new(k.datum().clone(), terms, diffs)?;
            let mut comp = BTreeMap::new();
            for &p in &tr.degrees() {
                if p < n {
                    comp.insert(p, PureMorphism::identity(k.term(p).graded()));
                } else {
                    comp.insert(p, data.cycles_incl.clone());
                }
            }
            let cmp = ChainMap { components: comp }.normalized();
            Ok((tr, cmp))
        }
        TruncationBound::Ge(n) => {
            // Quotient of K^n by the image of d^{n−1}.
            let term = k.term(n);
            let spans: BTreeMap<Twist, RatMatrix> = term
                .graded()
                .pieces()
                .iter()
                .map(|(&m, piece)| {
                    let mat = k
                        .diff(n - 1)
                        .component(m)
                        .cloned()
                        .unwrap_or_else(|| RatMatrix::zeros(piece.dim(), 0));
                    (m, mat.column_space())
                })
                .collect();
            let (q, proj, section) = crate::mixed::quotient_mixed(&term, &spans)?;
            let mut terms = BTreeMap::new();
            let mut diffs = BTreeMap::new();
            for (&p, t) in k.terms() {
                if p > n {
                    terms.insert(p, t.clone());
                }
            }
            if !q.is_zero() {
                terms.insert(n, q.clone());
            }
            for (&p, d) in k.diffs() {
                if p > n {
                    diffs.insert(p, d.clone());
                }
            }
            // Induced differential Q → K^{n+1} through the section.
            let induced = k.diff(n).compose(&section).normalized();
            if !induced.is_zero() {
                diffs.insert(n, induced);
            }
            let tr = Complex::new(k.datum().clone(), terms, diffs)?;
            let mut comp = BTreeMap::new();
            for &p in &k.degrees() {
                if p > n {
                    comp.insert(p, PureMorphism::identity(k.term(p).graded()));
                } else if p == n {
                    comp.insert(p, proj.clone());
                }
            }
            let cmp = ChainMap { components: comp }.normalized();
            Ok((tr, cmp))
        }
    }
}

// ---------------------------------------------------------------------------
// Derived Hom: the total complex of termwise two-term resolutions
// ---------------------------------------------------------------------------

/// One basis element of the total Hom complex: a single-twist intertwiner
/// at one term degree, in either the graded layer (q = 0) or the operator
/// layer (q = 1, tagged with the coefficient degree d).
#[derive(Debug, Clone)]
pub struct HomSlot {
    pub term_degree: Degree,
    pub q: u8,
    pub d: u32,
    pub twist: Twist,
    pub mat: RatMatrix,
}

/// The total Hom complex of a pair of complexes. H^n computes morphisms
/// K → L[n] in the derived category.
#[derive(Debug)]
pub struct HomTotal {
    pub slots: BTreeMap<Degree, Vec<HomSlot>>,
    pub diffs: BTreeMap<Degree, RatMatrix>,
}

pub fn hom_total(k: &Complex, l: &Complex) -> Result<HomTotal> {
    if !k.same_datum(l) {
        return Err(Error::DatumMismatch("hom across ext data".into()));
    }
    let datum = k.datum();
    let mut slots: BTreeMap<Degree, Vec<HomSlot>> = BTreeMap::new();
    let k_degrees = k.degrees();
    let l_degrees = l.degrees();
    if k_degrees.is_empty() || l_degrees.is_empty() {
        return Ok(HomTotal {
            slots: BTreeMap::new(),
            diffs: BTreeMap::new(),
        });
    }
    let n_min = l_degrees.first().unwrap() - k_degrees.last().unwrap();
    let n_max = l_degrees.last().unwrap() - k_degrees.first().unwrap() + 1;
    for n in n_min..=n_max {
        let mut list = Vec::new();
        for &i in &k_degrees {
            let ki = k.term_ref(i).unwrap();
            // Graded layer against L^{i+n}.
            if let Some(lj) = l.term_ref(i + n) {
                for f in hom_pure(ki.graded(), lj.graded())? {
                    let (&m, mat) = f.components.iter().next().expect("single twist");
                    list.push(HomSlot {
                        term_degree: i,
                        q: 0,
                        d: 0,
                        twist: m,
                        mat: mat.clone(),
                    });
                }
            }
            // Operator layer against L^{i+n−1}.
            if let Some(lj) = l.term_ref(i + n - 1) {
                for (&d, e) in datum.spaces() {
                    for (&m, src) in ki.graded().pieces() {
                        let Some(dst) = lj.graded().piece(m + d as Twist) else {
                            continue;
                        };
                        let target = tensor_rep(dst, e)?;
                        for t in hom_space(src, &target)? {
                            list.push(HomSlot {
                                term_degree: i,
                                q: 1,
                                d,
                                twist: m,
                                mat: t,
                            });
                        }
                    }
                }
            }
        }
        if !list.is_empty() {
            slots.insert(n, list);
        }
    }
    // Differentials.
    let empty: Vec<HomSlot> = Vec::new();
    let mut diffs = BTreeMap::new();
    for (&n, list) in &slots {
        let target = slots.get(&(n + 1)).unwrap_or(&empty);
        let sign = if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let mut mat = RatMatrix::zeros(target.len(), list.len());
        for (col, slot) in list.iter().enumerate() {
            let contributions = slot_differential(k, l, n, slot, sign)?;
            for (key, value) in contributions {
                // Express in the group of target slots with this key.
                let group: Vec<(usize, &HomSlot)> = target
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| {
                        (s.term_degree, s.q, s.d, s.twist) == key
                    })
                    .collect();
                if value.is_zero() {
                    continue;
                }
                let basis: Vec<RatMatrix> =
                    group.iter().map(|(_, s)| s.mat.clone()).collect();
                let coords = express_in_span(&basis, &value).ok_or_else(|| {
                    Error::Malformed(
                        "hom differential leaves the intertwiner span".into(),
                    )
                })?;
                for ((row, _), coeff) in group.iter().zip(&coords) {
                    if !coeff.is_zero() {
                        let cur = mat.at(*row, col) + coeff;
                        mat.set(*row, col, cur);
                    }
                }
            }
        }
        diffs.insert(n, mat);
    }
    let ht = HomTotal { slots, diffs };
    debug_assert!(ht.squares_to_zero());
    Ok(ht)
}

type SlotKey = (Degree, u8, u32, Twist);

/// Concrete contributions of one slot's differential, grouped by target
/// slot key.
fn slot_differential(
    k: &Complex,
    l: &Complex,
    n: Degree,
    slot: &HomSlot,
    sign: i64,
) -> Result<Vec<(SlotKey, RatMatrix)>> {
    let datum = k.datum();
    let i = slot.term_degree;
    let m = slot.twist;
    let mut out: Vec<(SlotKey, RatMatrix)> = Vec::new();
    let mut push = |key: SlotKey, mat: RatMatrix| {
        if mat.is_zero() {
            return;
        }
        if let Some(entry) = out.iter_mut().find(|(k2, _)| *k2 == key) {
            entry.1 = entry.1.add(&mat);
        } else {
            out.push((key, mat));
        }
    };
    let neg_sign = |mat: RatMatrix| if sign == 1 { mat.neg() } else { mat };
    let pos_sign = |mat: RatMatrix| if sign == 1 { mat } else { mat.neg() };
    if slot.q == 0 {
        let lj = l.term(i + n);
        // Post-compose with d_L at this twist.
        if let Some(dl) = l.diff(i + n).component(m) {
            push((i, 0, 0, m), dl.mul(&slot.mat));
        }
        // Pre-compose with d_K, landing at term degree i − 1, sign −(−1)^n.
        if let Some(dk) = k.diff(i - 1).component(m) {
            push((i - 1, 0, 0, m), neg_sign(slot.mat.mul(dk)));
        }
        // δ layer, sign −(−1)^n.
        for (&d, e) in datum.spaces() {
            let e_dim = e.dim();
            // ν_L ∘ f at (d, m).
            if lj.dim_at(m + d as Twist) > 0 {
                let term1 = lj.op(d, m).mul(&slot.mat);
                push((i, 1, d, m), neg_sign(term1));
            }
            // −(f ⊗ id) ∘ ν_K at (d, m − d).
            let src_twist = m - d as Twist;
            let ki = k.term(i);
            if ki.dim_at(src_twist) > 0 && lj.dim_at(m) > 0 {
                let term2 = slot
                    .mat
                    .kronecker(&RatMatrix::identity(e_dim))
                    .mul(&ki.op(d, src_twist));
                push((i, 1, d, src_twist), pos_sign(term2));
            }
        }
    } else {
        let d = slot.d;
        let e_dim = datum.space(d).map_or(0, |e| e.dim());
        // Post-compose with d_L ⊗ id at twist m + d (maps L^{i+n−1} → L^{i+n}).
        if let Some(dl) = l.diff(i + n - 1).component(m + d as Twist) {
            let moved = dl.kronecker(&RatMatrix::identity(e_dim)).mul(&slot.mat);
            push((i, 1, d, m), moved);
        }
        // Pre-compose with d_K at twist m, landing at term degree i − 1,
        // sign +(−1)^n.
        if let Some(dk) = k.diff(i - 1).component(m) {
            push((i - 1, 1, d, m), pos_sign(slot.mat.mul(dk)));
        }
    }
    Ok(out)
}

impl HomTotal {
    pub fn space_dim(&self, n: Degree) -> usize {
        self.slots.get(&n).map_or(0, |v| v.len())
    }

    pub fn diff(&self, n: Degree) -> RatMatrix {
        match self.diffs.get(&n) {
            Some(m) => m.clone(),
            None => RatMatrix::zeros(self.space_dim(n + 1), self.space_dim(n)),
        }
    }

    pub fn h_dim(&self, n: Degree) -> usize {
        let dim = self.space_dim(n);
        if dim == 0 {
            return 0;
        }
        let out_rank = self.diff(n).rank();
        let in_rank = self.diff(n - 1).rank();
        dim - out_rank - in_rank
    }

    fn squares_to_zero(&self) -> bool {
        self.slots
            .keys()
            .all(|&n| self.diff(n + 1).mul(&self.diff(n)).is_zero())
    }

    /// Coordinates of an honest chain map in the degree-n catalog; the
    /// operator layers of honest chain maps are zero.
    pub fn chain_map_coords(&self, f: &ChainMap, n: Degree) -> Option<Vec<Rat>> {
        let list = self.slots.get(&n)?;
        let mut coords = vec![Rat::from_integer(0.into()); list.len()];
        // Group slots by (term degree, twist) in the graded layer.
        let mut groups: BTreeMap<(Degree, Twist), Vec<usize>> = BTreeMap::new();
        for (idx, s) in list.iter().enumerate() {
            if s.q == 0 {
                groups.entry((s.term_degree, s.twist)).or_default().push(idx);
            }
        }
        for (&p, comp) in &f.components {
            for (&m, mat) in &comp.components {
                if mat.is_zero() {
                    continue;
                }
                let idxs = groups.get(&(p, m))?;
                let basis: Vec<RatMatrix> =
                    idxs.iter().map(|&i| list[i].mat.clone()).collect();
                let sol = express_in_span(&basis, mat)?;
                for (&i, v) in idxs.iter().zip(&sol) {
                    coords[i] = v.clone();
                }
            }
        }
        Some(coords)
    }

    /// Is the class of the given degree-n cocycle zero?
    pub fn class_is_zero(&self, coords: &[Rat], n: Degree) -> bool {
        let prev = self.diff(n - 1);
        if coords.iter().all(|c| c.is_zero()) {
            return true;
        }
        prev.solve(coords).expect("lengths agree").is_some()
    }

    /// Deterministic basis of H^n as coordinate vectors in T^n.
    pub fn h_basis(&self, n: Degree) -> Vec<Vec<Rat>> {
        let dim = self.space_dim(n);
        if dim == 0 {
            return vec![];
        }
        let cycles = self.diff(n).kernel_matrix();
        let boundaries = self.diff(n - 1).column_space();
        // Complement of the boundaries inside the cycles.
        let b_in_z = cycles
            .solve_matrix(&boundaries)
            .expect("lengths agree")
            .expect("boundaries are cycles");
        let chosen = crate::exactla::extend_to_basis(&b_in_z.column_space());
        chosen
            .into_iter()
            .map(|j| {
                (0..dim)
                    .map(|r| cycles.at(r, j).clone())
                    .collect::<Vec<Rat>>()
            })
            .collect()
    }
}

/// Dimension of Hom(K, L[n]) in the derived category.
pub fn hom_derived(k: &Complex, l: &Complex, n: Degree) -> Result<usize> {
    Ok(hom_total(k, l)?.h_dim(n))
}

/// The matrix of "precompose with α : K → B" from the total complex of
/// (B, N) to the total complex of (K, N), degreewise.
pub fn precompose_matrix(
    ht_src: &HomTotal,
    ht_dst: &HomTotal,
    alpha: &ChainMap,
    n: Degree,
) -> Result<RatMatrix> {
    let empty: Vec<HomSlot> = Vec::new();
    let src = ht_src.slots.get(&n).unwrap_or(&empty);
    let dst = ht_dst.slots.get(&n).unwrap_or(&empty);
    let mut mat = RatMatrix::zeros(dst.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        let Some(alpha_i) = alpha.components.get(&s.term_degree) else {
            continue;
        };
        let Some(a_m) = alpha_i.component(s.twist) else {
            continue;
        };
        let moved = s.mat.mul(a_m);
        if moved.is_zero() {
            continue;
        }
        let key = (s.term_degree, s.q, s.d, s.twist);
        let group: Vec<(usize, &HomSlot)> = dst
            .iter()
            .enumerate()
            .filter(|(_, t)| (t.term_degree, t.q, t.d, t.twist) == key)
            .collect();
        let basis: Vec<RatMatrix> = group.iter().map(|(_, t)| t.mat.clone()).collect();
        let coords = express_in_span(&basis, &moved).ok_or_else(|| {
            Error::Malformed("precomposition leaves the intertwiner span".into())
        })?;
        for ((row, _), coeff) in group.iter().zip(&coords) {
            if !coeff.is_zero() {
                mat.set(*row, col, coeff.clone());
            }
        }
    }
    Ok(mat)
}

/// The matrix of "postcompose with β : L → L'" from the total complex of
/// (K, L) to the total complex of (K, L'), degreewise.
pub fn postcompose_matrix(
    ht_src: &HomTotal,
    ht_dst: &HomTotal,
    beta: &ChainMap,
    datum: &Arc<ExtDatum>,
    n: Degree,
) -> Result<RatMatrix> {
    let empty: Vec<HomSlot> = Vec::new();
    let src = ht_src.slots.get(&n).unwrap_or(&empty);
    let dst = ht_dst.slots.get(&n).unwrap_or(&empty);
    let mut mat = RatMatrix::zeros(dst.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        // Graded layer targets L^{i+n}; operator layer targets L^{i+n−1},
        // tensored with the coefficient space.
        let target_degree = if s.q == 0 { s.term_degree + n } else { s.term_degree + n - 1 };
        let Some(beta_j) = beta.components.get(&target_degree) else {
            continue;
        };
        let moved = if s.q == 0 {
            match beta_j.component(s.twist) {
                Some(b) => b.mul(&s.mat),
                None => continue,
            }
        } else {
            let e_dim = datum.space(s.d).map_or(0, |e| e.dim());
            match beta_j.component(s.twist + s.d as Twist) {
                Some(b) => b.kronecker(&RatMatrix::identity(e_dim)).mul(&s.mat),
                None => continue,
            }
        };
        if moved.is_zero() {
            continue;
        }
        let key = (s.term_degree, s.q, s.d, s.twist);
        let group: Vec<(usize, &HomSlot)> = dst
            .iter()
            .enumerate()
            .filter(|(_, t)| (t.term_degree, t.q, t.d, t.twist) == key)
            .collect();
        let basis: Vec<RatMatrix> = group.iter().map(|(_, t)| t.mat.clone()).collect();
        let coords = express_in_span(&basis, &moved).ok_or_else(|| {
            Error::Malformed("postcomposition leaves the intertwiner span".into())
        })?;
        for ((row, _), coeff) in group.iter().zip(&coords) {
            if !coeff.is_zero() {
                mat.set(*row, col, coeff.clone());
            }
        }
    }
    Ok(mat)
}

/// Basis of honest chain maps K → L: termwise mixed morphisms commuting
/// with the differentials.
pub fn chain_map_space(k: &Complex, l: &Complex) -> Result<Vec<ChainMap>> {
    if !k.same_datum(l) {
        return Err(Error::DatumMismatch("chain maps across ext data".into()));
    }
    // Unknown blocks: hom_mixed(K^p, L^p) per shared degree.
    let mut blocks: Vec<(Degree, Vec<MixedMorphism>)> = Vec::new();
    for &p in &k.degrees() {
        if l.term_ref(p).is_none() {
            continue;
        }
        let basis = hom_mixed(&k.term(p), &l.term(p))?;
        if !basis.is_empty() {
            blocks.push((p, basis));
        }
    }
    let total: usize = blocks.iter().map(|(_, b)| b.len()).sum();
    if total == 0 {
        return Ok(vec![]);
    }
    // Constraints per degree p: d_L ∘ f_p − f_{p+1} ∘ d_K = 0, expressed in
    // the mixed hom basis of (K^p, L^{p+1}).
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for &p in &k.degrees() {
        let target_basis = hom_mixed(&k.term(p), &l.term(p + 1))?;
        let mut row_block: Vec<Vec<Rat>> = vec![vec![]; target_basis.len().max(1)];
        let mut any_nonzero_constraint = target_basis.is_empty();
        for (q, basis) in &blocks {
            for b in basis {
                let composite = if *q == p {
                    l.diff(p).compose(b)
                } else if *q == p + 1 {
                    b.compose(&k.diff(p)).neg()
                } else {
                    PureMorphism::zero()
                };
                if target_basis.is_empty() {
                    if !composite.is_zero() {
                        any_nonzero_constraint = false;
                    }
                    continue;
                }
                let coords = express_pure(
                    &target_basis,
                    &composite,
                    k.term(p).graded(),
                    l.term(p + 1).graded(),
                )
                .ok_or_else(|| {
                    Error::Malformed("chain constraint leaves the mixed hom span".into())
                })?;
                for (ri, v) in coords.into_iter().enumerate() {
                    row_block[ri].push(v);
                }
            }
        }
        if !target_basis.is_empty() {
            rows.extend(row_block);
        } else if !any_nonzero_constraint {
            // Unsatisfiable constraints cannot arise: composites of mixed
            // morphisms stay mixed, so an empty hom space forces zero.
            unreachable!("nonzero composite in zero hom space");
        }
    }
    let constraint = if rows.is_empty() {
        RatMatrix::zeros(0, total)
    } else {
        RatMatrix::from_rows(rows).expect("uniform rows")
    };
    let kernel = constraint.kernel_basis();
    let mut out = Vec::new();
    for coords in kernel {
        let mut components: BTreeMap<Degree, MixedMorphism> = BTreeMap::new();
        let mut offset = 0;
        for (p, basis) in &blocks {
            let mut acc = PureMorphism::zero();
            for (bi, b) in basis.iter().enumerate() {
                let c = &coords[offset + bi];
                if !c.is_zero() {
                    acc = acc.add(&b.scale(c));
                }
            }
            if !acc.is_zero() {
                components.insert(*p, acc);
            }
            offset += basis.len();
        }
        out.push(ChainMap { components });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{FiniteGroup, GRep};
    use crate::mixed::{ext1, hom_mixed_dim};
    use crate::pure::GradedObject;

    fn datum_e1() -> Arc<ExtDatum> {
        let g = FiniteGroup::trivial();
        let mut spaces = BTreeMap::new();
        spaces.insert(1i64, GRep::trivial(g.clone()));
        crate::mixed::ExtDatum::new(g, spaces).unwrap()
    }

    fn kummer(datum: &Arc<ExtDatum>) -> MixedObject {
        let g = datum.group().clone();
        let mut pieces = BTreeMap::new();
        pieces.insert(0, GRep::trivial(g.clone()));
        pieces.insert(1, GRep::trivial(g.clone()));
        let graded = GradedObject::new(g, pieces).unwrap();
        let mut ops = BTreeMap::new();
        ops.insert((1u32, 0), RatMatrix::from_i64(vec![vec![1]]));
        MixedObject::new(graded, datum.clone(), ops).unwrap()
    }

    #[test]
    fn cohomology_of_concentrated_complex() {
        let datum = datum_e1();
        let k = kummer(&datum);
        let c = Complex::concentrated(k.clone(), 0);
        assert_eq!(cohomology(&c, 0).unwrap(), k);
        assert!(cohomology(&c, 1).unwrap().is_zero());
        assert!(cohomology(&c, -1).unwrap().is_zero());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let datum = datum_e1();
        let c = Complex::concentrated(kummer(&datum), 0);
        let (cone_c, incl, proj) = cone(&ChainMap::identity(&c), &c, &c).unwrap();
        assert!(is_acyclic(&cone_c));
        incl.validate(&c, &cone_c).unwrap();
        proj.validate(&cone_c, &shift(&c, 1)).unwrap();
    }

    #[test]
    fn zero_differential_complex_cohomology() {
        let datum = datum_e1();
        let mut terms = BTreeMap::new();
        terms.insert(0, MixedObject::tate(datum.clone(), 1));
        terms.insert(1, MixedObject::tate(datum.clone(), 0));
        let k = Complex::new(datum.clone(), terms, BTreeMap::new()).unwrap();
        assert_eq!(cohomology(&k, 0).unwrap(), MixedObject::tate(datum.clone(), 1));
        assert_eq!(cohomology(&k, 1).unwrap(), MixedObject::tate(datum, 0));
    }

    #[test]
    fn shift_conventions() {
        let datum = datum_e1();
        // Q(m)[s] lives in degree −s.
        let c = Complex::tate_complex(datum.clone(), 1, 2);
        assert_eq!(c.degrees(), vec![-2]);
        let s = shift(&c, -1);
        assert_eq!(s.degrees(), vec![-1]);
        // Double shift is identity on terms and differentials.
        let k = Complex::concentrated(kummer(&datum), 0);
        assert_eq!(shift(&shift(&k, 1), -1), k);
    }

    #[test]
    fn cone_triangle_long_exact_sequence() {
        // For a nonzero map of concentrated complexes the cone cohomology
        // dimensions close up exactly.
        let datum = datum_e1();
        let q1 = Complex::concentrated(MixedObject::tate(datum.clone(), 1), 0);
        let k = Complex::concentrated(kummer(&datum), 0);
        let mut comp = BTreeMap::new();
        let mut inner = BTreeMap::new();
        inner.insert(1, RatMatrix::identity(1));
        comp.insert(0, PureMorphism { components: inner });
        let f = ChainMap { components: comp };
        f.validate(&q1, &k).unwrap();
        let (c, incl, proj) = cone(&f, &q1, &k).unwrap();
        incl.validate(&k, &c).unwrap();
        proj.validate(&c, &shift(&q1, 1)).unwrap();
        // H^0(cone) = Q(0), rest zero: f is injective with cokernel Q(0).
        assert_eq!(cohomology(&c, 0).unwrap(), MixedObject::tate(datum, 0));
        assert!(cohomology(&c, -1).unwrap().is_zero());
        // Alternating sum of cohomology dimensions vanishes.
        let dims = |x: &Complex| -> i64 {
            cohomology_support(x)
                .iter()
                .map(|(&n, strand)| {
                    let d: usize = strand.values().sum();
                    if n.rem_euclid(2) == 0 {
                        d as i64
                    } else {
                        -(d as i64)
                    }
                })
                .sum()
        };
        assert_eq!(dims(&q1) - dims(&k) + dims(&c), 0);
    }

    #[test]
    fn truncations_of_concentrated_complex() {
        let datum = datum_e1();
        let m = kummer(&datum);
        let c = Complex::concentrated(m.clone(), 0);
        let (le0, cmp) = t_truncate(&c, TruncationBound::Le(0)).unwrap();
        assert_eq!(le0, c);
        cmp.validate(&le0, &c).unwrap();
        let (lem1, _) = t_truncate(&c, TruncationBound::Le(-1)).unwrap();
        assert!(lem1.is_zero());
        let (ge0, cmp2) = t_truncate(&c, TruncationBound::Ge(0)).unwrap();
        assert_eq!(ge0, c);
        cmp2.validate(&c, &ge0).unwrap();
        let (ge1, _) = t_truncate(&c, TruncationBound::Ge(1)).unwrap();
        assert!(ge1.is_zero());
    }

    #[test]
    fn truncation_splits_two_step_complex() {
        let datum = datum_e1();
        let mut terms = BTreeMap::new();
        terms.insert(0, MixedObject::tate(datum.clone(), 1));
        terms.insert(1, MixedObject::tate(datum.clone(), 0));
        let k = Complex::new(datum.clone(), terms, BTreeMap::new()).unwrap();
        let (le0, cmp) = t_truncate(&k, TruncationBound::Le(0)).unwrap();
        assert_eq!(
            cohomology(&le0, 0).unwrap(),
            MixedObject::tate(datum.clone(), 1)
        );
        assert!(cohomology(&le0, 1).unwrap().is_zero());
        cmp.validate(&le0, &k).unwrap();
        // Comparison map is an isomorphism on H^0.
        let (h_src, h_dst, induced) = induced_on_cohomology(&cmp, &le0, &k, 0).unwrap();
        assert!(mixed_morphism_invertible(&h_src.object, &h_dst.object, &induced));
    }

    #[test]
    fn hom_derived_matches_hom_and_ext_for_heart_objects() {
        let datum = datum_e1();
        let a = MixedObject::tate(datum.clone(), 0);
        let b = MixedObject::tate(datum.clone(), 1);
        let k = Complex::concentrated(a.clone(), 0);
        let l = Complex::concentrated(b.clone(), 0);
        assert_eq!(
            hom_derived(&k, &l, 0).unwrap(),
            hom_mixed_dim(&a, &b).unwrap()
        );
        assert_eq!(hom_derived(&k, &l, 1).unwrap(), ext1(&a, &b).unwrap().0);
        // dim E_1 invariants = 1 over the trivial group.
        assert_eq!(hom_derived(&k, &l, 1).unwrap(), 1);
        for p in 2..6 {
            assert_eq!(hom_derived(&k, &l, p).unwrap(), 0);
        }
        for p in [-2, -1] {
            assert_eq!(hom_derived(&k, &l, p).unwrap(), 0);
        }
    }

    #[test]
    fn hom_vanishes_from_high_to_low_twist() {
        let datum = datum_e1();
        for r in -2..=2 {
            for s in -2..=2 {
                let k = Complex::tate_complex(datum.clone(), 1, r);
                let l = Complex::tate_complex(datum.clone(), 0, s);
                for n in -3..=3 {
                    assert_eq!(hom_derived(&k, &l, n).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn identity_class_is_nonzero() {
        let datum = datum_e1();
        let k = Complex::concentrated(kummer(&datum), 0);
        assert!(hom_derived(&k, &k, 0).unwrap() >= 1);
        let ht = hom_total(&k, &k).unwrap();
        let coords = ht
            .chain_map_coords(&ChainMap::identity(&k), 0)
            .unwrap();
        assert!(!ht.class_is_zero(&coords, 0));
    }

    #[test]
    fn quasi_iso_detection() {
        let datum = datum_e1();
        let k = Complex::concentrated(kummer(&datum), 0);
        assert!(is_quasi_iso(&ChainMap::identity(&k), &k, &k).unwrap());
        // Zero map between acyclic complexes is a quasi-isomorphism.
        let (acyclic, _, _) = cone(&ChainMap::identity(&k), &k, &k).unwrap();
        assert!(is_quasi_iso(&ChainMap::zero(), &acyclic, &acyclic).unwrap());
        // Weight-truncation inclusion is not.
        let (w, incl) = crate::mixed::weight_filtration_obj(&kummer(&datum), -2);
        let wc = Complex::concentrated(w, 0);
        let mut comp = BTreeMap::new();
        comp.insert(0, incl);
        let f = ChainMap { components: comp };
        f.validate(&wc, &k).unwrap();
        assert!(!is_quasi_iso(&f, &wc, &k).unwrap());
    }

    #[test]
    fn chain_map_space_of_concentrated_pair() {
        let datum = datum_e1();
        let k = Complex::concentrated(kummer(&datum), 0);
        let maps = chain_map_space(&k, &k).unwrap();
        assert_eq!(maps.len(), 1);
        // Two-step complex with zero differential: maps must commute.
        let mut terms = BTreeMap::new();
        terms.insert(0, MixedObject::tate(datum.clone(), 0));
        terms.insert(1, MixedObject::tate(datum.clone(), 0));
        let two = Complex::new(datum.clone(), terms, BTreeMap::new()).unwrap();
        let maps2 = chain_map_space(&two, &two).unwrap();
        assert_eq!(maps2.len(), 2);
    }

    #[test]
    fn formal_reduction_has_same_cohomology() {
        let datum = datum_e1();
        let q1 = Complex::concentrated(MixedObject::tate(datum.clone(), 1), 0);
        let k = Complex::concentrated(kummer(&datum), 0);
        let mut comp = BTreeMap::new();
        let mut inner = BTreeMap::new();
        inner.insert(1, RatMatrix::identity(1));
        comp.insert(0, PureMorphism { components: inner });
        let f = ChainMap { components: comp };
        let (c, _, _) = cone(&f, &q1, &k).unwrap();
        let n = formal_reduction(&c).unwrap();
        assert_eq!(cohomology_support(&c), cohomology_support(&n));
        assert!(n.diffs().is_empty());
    }
}
