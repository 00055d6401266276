//! The semisimple coefficient category: finite-dimensional rational
//! representations of a fixed finite group.
//!
//! Groups are given by multiplication tables over element indices; inputs by
//! permutation generators are compiled to a table at construction, recording
//! a word decomposition per element so that representations can be specified
//! on generators alone. All axiom checks are exhaustive scans, which is
//! perfectly affordable at the intended orders (≤ ~100).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{express_in_span, Rat, RatMatrix};

/// A finite group presented by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
    id: usize,
    inv: Vec<usize>,
    /// A small generating set, found greedily; used to cut intertwiner
    /// systems down from |G| constraints to a handful.
    generators: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(mul: Vec<Vec<usize>>, id: usize) -> Result<Arc<Self>> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::Malformed("empty multiplication table".into()));
        }
        for row in &mul {
            if row.len() != order {
                return Err(Error::Malformed("multiplication table is not square".into()));
            }
            if row.iter().any(|&x| x >= order) {
                return Err(Error::Malformed("table entry out of range".into()));
            }
        }
        if id >= order {
            return Err(Error::Malformed("identity index out of range".into()));
        }
        // Identity axiom.
        for g in 0..order {
            if mul[id][g] != g || mul[g][id] != g {
                return Err(Error::Malformed(format!(
                    "element {id} is not a two-sided identity (fails at {g})"
                )));
            }
        }
        // Inverses.
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| mul[g][h] == id && mul[h][g] == id) {
                Some(h) => inv[g] = h,
                None => {
                    return Err(Error::Malformed(format!("element {g} has no inverse")));
                }
            }
        }
        // Associativity, exhaustive.
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Malformed(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let generators = find_generators(&mul, id);
        Ok(Arc::new(FiniteGroup {
            order,
            mul,
            id,
            inv,
            generators,
        }))
    }

    pub fn trivial() -> Arc<Self> {
        Self::from_table(vec![vec![0]], 0).expect("trivial table is valid")
    }

    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(mul, 0).expect("cyclic table is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }
}

fn find_generators(mul: &[Vec<usize>], id: usize) -> Vec<usize> {
    let order = mul.len();
    let mut gens = Vec::new();
    let mut closure = vec![false; order];
    closure[id] = true;
    let mut size = 1;
    for g in 0..order {
        if closure[g] {
            continue;
        }
        gens.push(g);
        // Close under multiplication by the new generator set.
        loop {
            let mut grew = false;
            for a in 0..order {
                if !closure[a] {
                    continue;
                }
                for &s in &gens {
                    for x in [mul[a][s], mul[s][a]] {
                        if !closure[x] {
                            closure[x] = true;
                            size += 1;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if size == order {
            break;
        }
    }
    gens
}

/// A group realized on points, produced by closing a set of permutation
/// generators. Keeps the permutation of each element and its word in the
/// generators, so representations can be built from generator data.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub group: Arc<FiniteGroup>,
    pub degree: usize,
    /// Permutation of each element index, as images of the points.
    pub perms: Vec<Vec<usize>>,
    /// Word of each element in the generators (indices into the generator
    /// list), with the identity the empty word.
    pub words: Vec<Vec<usize>>,
    pub generator_count: usize,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(x) = p(q(x))
    q.iter().map(|&x| p[x]).collect()
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Malformed("permutation degree must be positive".into()));
        }
        for g in gens {
            if g.len() != degree {
                return Err(Error::Malformed(format!(
                    "generator has length {} but degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::Malformed("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        // Breadth-first closure.
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for (gi, g) in gens.iter().enumerate() {
                let p = compose(g, &perms[i]);
                if !perms.contains(&p) {
                    let mut w = words[i].clone();
                    w.push(gi);
                    perms.push(p);
                    words.push(w);
                    frontier.push(perms.len() - 1);
                    if perms.len() > 10_000 {
                        return Err(Error::Malformed("permutation closure too large".into()));
                    }
                }
            }
        }
        let order = perms.len();
        let mut mul = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                let p = compose(&perms[a], &perms[b]);
                mul[a][b] = perms.iter().position(|q| *q == p).expect("closed");
            }
        }
        let group = FiniteGroup::from_table(mul, 0)?;
        Ok(PermGroup {
            group,
            degree,
            perms,
            words,
            generator_count: gens.len(),
        })
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        assert!(n >= 1);
        if n == 1 {
            return Self::from_generators(1, &[]);
        }
        // Adjacent transposition and an n-cycle.
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        Self::from_generators(n, &[t, c])
    }

    /// Permutation parity of an element.
    pub fn parity(&self, e: usize) -> i32 {
        let p = &self.perms[e];
        let mut seen = vec![false; self.degree];
        let mut sign = 1;
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn permutation_rep(&self) -> GRep {
        let action = self
            .perms
            .iter()
            .map(|p| {
                RatMatrix::from_fn(self.degree, self.degree, |r, c| {
                    if p[c] == r {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::from_integer(0.into())
                    }
                })
            })
            .collect();
        GRep::new(self.group.clone(), self.degree, action).expect("permutation matrices are a rep")
    }

    pub fn sign_rep(&self) -> GRep {
        let action = (0..self.group.order())
            .map(|e| RatMatrix::from_i64(vec![vec![self.parity(e) as i64]]))
            .collect();
        GRep::new(self.group.clone(), 1, action).expect("parity is a homomorphism")
    }

    /// The complement of the invariant all-ones line inside the permutation
    /// representation, in the basis e_i − e_{i+1}.
    pub fn standard_rep(&self) -> GRep {
        let n = self.degree;
        if n == 1 {
            return GRep::zero(self.group.clone());
        }
        // Change of basis [f_0, ..., f_{n-2}, u] with f_i = e_i − e_{i+1},
        // u = sum of all e_i; the top-left block of the conjugated action is
        // the standard representation.
        let basis = RatMatrix::from_fn(n, n, |r, c| {
            if c < n - 1 {
                if r == c {
                    Rat::from_integer(1.into())
                } else if r == c + 1 {
                    Rat::from_integer((-1).into())
                } else {
                    Rat::from_integer(0.into())
                }
            } else {
                Rat::from_integer(1.into())
            }
        });
        let inv = basis.inverse().expect("invertible by construction");
        let perm = self.permutation_rep();
        let action = (0..self.group.order())
            .map(|e| {
                let conj = inv.mul(perm.action(e)).mul(&basis);
                RatMatrix::from_fn(n - 1, n - 1, |r, c| conj.at(r, c).clone())
            })
            .collect();
        GRep::new(self.group.clone(), n - 1, action).expect("invariant complement")
    }
}

/// A finite-dimensional rational representation of a fixed finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct GRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    action: Vec<RatMatrix>,
}

impl GRep {
    /// Validating constructor; rejects shape errors and, unlike
    /// [`validate_rep`], refuses non-homomorphisms outright.
    pub fn new(group: Arc<FiniteGroup>, dim: usize, action: Vec<RatMatrix>) -> Result<Self> {
        let rep = Self::new_unchecked(group, dim, action)?;
        let report = validate_rep(&rep)?;
        if report.is_empty() {
            Ok(rep)
        } else {
            Err(Error::Malformed(format!(
                "not a representation: {}",
                report.join("; ")
            )))
        }
    }

    /// Shape-checked constructor; homomorphism equations are not verified.
    pub fn new_unchecked(
        group: Arc<FiniteGroup>,
        dim: usize,
        action: Vec<RatMatrix>,
    ) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Malformed(format!(
                "expected {} action matrices, got {}",
                group.order(),
                action.len()
            )));
        }
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(GRep { group, dim, action })
    }

    /// Builds a representation from matrices for the generator words stored
    /// in a permutation group, extending multiplicatively.
    pub fn from_generator_matrices(pg: &PermGroup, dim: usize, gens: &[RatMatrix]) -> Result<Self> {
        if gens.len() != pg.generator_count {
            return Err(Error::Malformed(format!(
                "expected {} generator matrices, got {}",
                pg.generator_count,
                gens.len()
            )));
        }
        for m in gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let action = pg
            .words
            .iter()
            .map(|word| {
                let mut m = RatMatrix::identity(dim);
                // Words record left-multiplication: element = g_{w_k} ∘ ... ∘ g_{w_1}.
                for &gi in word {
                    m = gens[gi].mul(&m);
                }
                m
            })
            .collect();
        GRep::new(pg.group.clone(), dim, action)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GRep {
            group,
            dim: 1,
            action: vec![RatMatrix::identity(1); n],
        }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GRep {
            group,
            dim: 0,
            action: vec![RatMatrix::zeros(0, 0); n],
        }
    }

    /// Left-regular representation on the group elements.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|g| {
                RatMatrix::from_fn(n, n, |r, c| {
                    if group.mul(g, c) == r {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::from_integer(0.into())
                    }
                })
            })
            .collect();
        GRep { group, dim: n, action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, g: usize) -> &RatMatrix {
        &self.action[g]
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn same_group(&self, other: &GRep) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group == other.group
    }
}

/// Checks every homomorphism equation of a candidate representation and
/// reports each violation. The empty report certifies a representation.
pub fn validate_rep(rep: &GRep) -> Result<Vec<String>> {
    let g = &rep.group;
    for m in &rep.action {
        if m.rows() != rep.dim || m.cols() != rep.dim {
            return Err(Error::DimensionMismatch(format!(
                "action matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                rep.dim,
                rep.dim
            )));
        }
    }
    let mut report = Vec::new();
    if !rep.action[g.id()].is_identity() {
        report.push(format!("action({}) is not the identity", g.id()));
    }
    for a in g.elements() {
        for b in g.elements() {
            let lhs = rep.action[a].mul(&rep.action[b]);
            if lhs != rep.action[g.mul(a, b)] {
                report.push(format!(
                    "action({a})·action({b}) ≠ action({}·{} = {})",
                    a,
                    b,
                    g.mul(a, b)
                ));
            }
        }
    }
    for a in g.elements() {
        if rep.action[a].inverse().is_none() {
            report.push(format!("action({a}) is not invertible"));
        }
    }
    Ok(report)
}

/// Basis of the space of intertwiners T with T·action_V(g) = action_W(g)·T.
///
/// It suffices to impose the equations for a generating set. Unknowns are
/// the entries of T (a dim W × dim V matrix, row-major).
pub fn hom_space(v: &GRep, w: &GRep) -> Result<Vec<RatMatrix>> {
    if !v.same_group(w) {
        return Err(Error::GroupMismatch(
            "hom_space requires representations of the same group".into(),
        ));
    }
    let (dv, dw) = (v.dim(), w.dim());
    if dv == 0 || dw == 0 {
        return Ok(vec![]);
    }
    let unknowns = dw * dv;
    let gens = v.group().generators();
    let mut rows = RatMatrix::zeros(0, unknowns);
    for &g in gens {
        // vec_r(T·A_V(g)) = (I_w ⊗ A_V(g)ᵀ)·vec_r(T),
        // vec_r(A_W(g)·T) = (A_W(g) ⊗ I_v)·vec_r(T).
        let lhs = RatMatrix::identity(dw).kronecker(&v.action(g).transpose());
        let rhs = w.action(g).kronecker(&RatMatrix::identity(dv));
        rows = rows.vstack(&lhs.sub(&rhs));
    }
    let basis = rows.kernel_basis();
    Ok(basis
        .into_iter()
        .map(|vec| RatMatrix::new(dw, dv, vec).expect("kernel vector has the right length"))
        .collect())
}

/// Dimension of the intertwiner space.
pub fn hom_dim(v: &GRep, w: &GRep) -> Result<usize> {
    Ok(hom_space(v, w)?.len())
}

/// Exact isomorphism test for semisimple representations: V ≅ W iff the
/// three Hom dimensions hom(V,W), hom(V,V), hom(W,W) agree.
pub fn is_isomorphic(v: &GRep, w: &GRep) -> Result<bool> {
    if v.dim() != w.dim() {
        return Ok(false);
    }
    let vw = hom_dim(v, w)?;
    let vv = hom_dim(v, v)?;
    let ww = hom_dim(w, w)?;
    Ok(vw == vv && vw == ww)
}

pub fn tensor_rep(v: &GRep, w: &GRep) -> Result<GRep> {
    if !v.same_group(w) {
        return Err(Error::GroupMismatch("tensor of reps over different groups".into()));
    }
    let action = (0..v.group().order())
        .map(|g| v.action(g).kronecker(w.action(g)))
        .collect();
    Ok(GRep {
        group: v.group.clone(),
        dim: v.dim * w.dim,
        action,
    })
}

pub fn direct_sum_rep(v: &GRep, w: &GRep) -> Result<GRep> {
    if !v.same_group(w) {
        return Err(Error::GroupMismatch("sum of reps over different groups".into()));
    }
    let action = (0..v.group().order())
        .map(|g| RatMatrix::block_diag(&[v.action(g), w.action(g)]))
        .collect();
    Ok(GRep {
        group: v.group.clone(),
        dim: v.dim + w.dim,
        action,
    })
}

/// Dual representation: g acts by the inverse transpose.
pub fn dual_rep(v: &GRep) -> GRep {
    let action = (0..v.group().order())
        .map(|g| {
            v.action(v.group().inv(g)).transpose()
        })
        .collect();
    GRep {
        group: v.group.clone(),
        dim: v.dim,
        action,
    }
}

/// The subrepresentation spanned by the (independent) columns of `basis`,
/// together with nothing else: the caller guarantees invariance, which is
/// then checked by the restriction solves.
pub fn sub_rep(v: &GRep, basis: &RatMatrix) -> Result<(GRep, RatMatrix)> {
    assert_eq!(basis.rows(), v.dim());
    let k = basis.cols();
    let mut action = Vec::with_capacity(v.group().order());
    for g in v.group().elements() {
        let moved = v.action(g).mul(basis);
        let coords = basis.solve_matrix(&moved)?.ok_or_else(|| {
            Error::Malformed(format!("column span is not invariant under element {g}"))
        })?;
        action.push(coords);
    }
    let rep = GRep {
        group: v.group.clone(),
        dim: k,
        action,
    };
    Ok((rep, basis.clone()))
}

/// Quotient of V by the column span of `im`. Returns the quotient
/// representation, the projection matrix, and the section picking the
/// deterministic standard-vector complement.
pub fn quotient_rep(v: &GRep, im: &RatMatrix) -> Result<(GRep, RatMatrix, RatMatrix)> {
    assert_eq!(im.rows(), v.dim());
    let im_basis = im.column_space();
    let comp = crate::exactla::extend_to_basis(&im_basis);
    let section = RatMatrix::from_fn(v.dim(), comp.len(), |r, c| {
        if r == comp[c] {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer(0.into())
        }
    });
    let full = im_basis.hstack(&section);
    let full_inv = if v.dim() == 0 {
        RatMatrix::zeros(0, 0)
    } else {
        full.inverse()
            .ok_or_else(|| Error::Malformed("complement construction failed".into()))?
    };
    // Projection: the complement coordinates of the inverse change of basis.
    let proj = RatMatrix::from_fn(comp.len(), v.dim(), |r, c| {
        full_inv.at(im_basis.cols() + r, c).clone()
    });
    let mut action = Vec::with_capacity(v.group().order());
    for g in v.group().elements() {
        action.push(proj.mul(v.action(g)).mul(&section));
    }
    let rep = GRep {
        group: v.group.clone(),
        dim: comp.len(),
        action,
    };
    Ok((rep, proj, section))
}

/// Membership of a concrete matrix in an intertwiner space.
pub fn in_hom_span(basis: &[RatMatrix], t: &RatMatrix) -> bool {
    if basis.is_empty() {
        return t.is_zero();
    }
    express_in_span(basis, t).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn c2() -> Arc<FiniteGroup> {
        FiniteGroup::cyclic(2)
    }

    fn sign_of_c2() -> GRep {
        let g = c2();
        GRep::new(
            g,
            1,
            vec![RatMatrix::identity(1), RatMatrix::from_i64(vec![vec![-1]])],
        )
        .unwrap()
    }

    #[test]
    fn group_axioms_are_checked() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], 0).is_err());
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.inv(1), 2);
        assert_eq!(c3.generators().len(), 1);
    }

    #[test]
    fn validate_trivial_and_sign() {
        let g = c2();
        let triv = GRep::trivial(g.clone());
        assert!(validate_rep(&triv).unwrap().is_empty());
        assert!(validate_rep(&sign_of_c2()).unwrap().is_empty());
    }

    #[test]
    fn validate_flags_non_homomorphism() {
        // action(s) = [[2]] fails s·s = id since 4 ≠ 1.
        let g = c2();
        let bad = GRep::new_unchecked(
            g,
            1,
            vec![RatMatrix::identity(1), RatMatrix::from_i64(vec![vec![2]])],
        )
        .unwrap();
        let report = validate_rep(&bad).unwrap();
        assert!(report.iter().any(|line| line.contains("action(1)·action(1)")));
    }

    #[test]
    fn hom_space_schur_for_unit() {
        let g = c2();
        let triv = GRep::trivial(g);
        let basis = hom_space(&triv, &triv).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn hom_space_sign_to_trivial_is_zero() {
        // T·(−1) = T forces T = 0.
        let g = c2();
        let triv = GRep::trivial(g);
        let sgn = sign_of_c2();
        assert!(hom_space(&sgn, &triv).unwrap().is_empty());
    }

    #[test]
    fn hom_space_regular_c2() {
        let g = c2();
        let reg = GRep::regular(g);
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2);
    }

    #[test]
    fn hom_dims_are_symmetric() {
        let pg = PermGroup::symmetric(3).unwrap();
        let reps = [
            GRep::trivial(pg.group.clone()),
            pg.sign_rep(),
            pg.standard_rep(),
            pg.permutation_rep(),
        ];
        for v in &reps {
            for w in &reps {
                assert_eq!(hom_dim(v, w).unwrap(), hom_dim(w, v).unwrap());
            }
        }
    }

    #[test]
    fn hom_space_contains_identity_and_compositions() {
        let pg = PermGroup::symmetric(3).unwrap();
        let v = pg.permutation_rep();
        let basis = hom_space(&v, &v).unwrap();
        assert!(in_hom_span(&basis, &RatMatrix::identity(3)));
        for s in &basis {
            for t in &basis {
                assert!(in_hom_span(&basis, &s.mul(t)));
            }
        }
    }

    #[test]
    fn tensor_of_signs_is_trivial() {
        // (−1)·(−1) = 1.
        let sgn = sign_of_c2();
        let t = tensor_rep(&sgn, &sgn).unwrap();
        assert!(is_isomorphic(&t, &GRep::trivial(t.group().clone())).unwrap());
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let pg = PermGroup::symmetric(3).unwrap();
        let v = pg.standard_rep();
        let t = tensor_rep(&v, &GRep::trivial(v.group().clone())).unwrap();
        // The canonical identification is literally the identity matrix here.
        assert_eq!(t.action(3), v.action(3));
    }

    #[test]
    fn dual_of_sign_is_sign() {
        let sgn = sign_of_c2();
        let d = dual_rep(&sgn);
        assert_eq!(d.action(1), sgn.action(1));
    }

    #[test]
    fn dual_is_a_representation() {
        let pg = PermGroup::symmetric(3).unwrap();
        let v = pg.standard_rep();
        assert!(validate_rep(&dual_rep(&v)).unwrap().is_empty());
    }

    #[test]
    fn tensor_distributes_over_sum_up_to_iso() {
        let pg = PermGroup::symmetric(3).unwrap();
        let v = pg.standard_rep();
        let w = pg.sign_rep();
        let u = GRep::trivial(pg.group.clone());
        let lhs = tensor_rep(&v, &direct_sum_rep(&w, &u).unwrap()).unwrap();
        let rhs = direct_sum_rep(&tensor_rep(&v, &w).unwrap(), &tensor_rep(&v, &u).unwrap())
            .unwrap();
        assert!(is_isomorphic(&lhs, &rhs).unwrap());
        // The explicit shuffle is an invertible intertwiner.
        let basis = hom_space(&lhs, &rhs).unwrap();
        let n = lhs.dim();
        let shuffle = RatMatrix::from_fn(n, n, |r, c| {
            // lhs index (i, j) over dim(v) × (dim w + dim u); rhs blocks.
            let (i, j) = (c / 2, c % 2);
            let target = if j < 1 { i } else { v.dim() + i };
            if r == target {
                rat(1)
            } else {
                rat(0)
            }
        });
        assert!(in_hom_span(&basis, &shuffle));
        assert!(shuffle.inverse().is_some());
    }

    #[test]
    fn s3_has_expected_structure() {
        let pg = PermGroup::symmetric(3).unwrap();
        assert_eq!(pg.group.order(), 6);
        let std = pg.standard_rep();
        assert_eq!(std.dim(), 2);
        assert!(validate_rep(&std).unwrap().is_empty());
        // Standard rep of S3 is irreducible over Q.
        assert_eq!(hom_dim(&std, &std).unwrap(), 1);
        // Permutation rep = trivial ⊕ standard.
        let perm = pg.permutation_rep();
        assert_eq!(
            hom_dim(&perm, &GRep::trivial(pg.group.clone())).unwrap(),
            1
        );
        assert_eq!(hom_dim(&perm, &std).unwrap(), 1);
    }

    #[test]
    fn generator_matrices_extend_multiplicatively() {
        let pg = PermGroup::symmetric(3).unwrap();
        // Rebuild the sign rep from generator data.
        let gens = vec![
            RatMatrix::from_i64(vec![vec![-1]]),
            RatMatrix::from_i64(vec![vec![if pg.degree % 2 == 0 { -1 } else { 1 }]]),
        ];
        let rebuilt = GRep::from_generator_matrices(&pg, 1, &gens).unwrap();
        assert!(is_isomorphic(&rebuilt, &pg.sign_rep()).unwrap());
    }

    #[test]
    fn sub_and_quotient_reps() {
        let pg = PermGroup::symmetric(3).unwrap();
        let perm = pg.permutation_rep();
        // The all-ones line is invariant.
        let line = RatMatrix::from_i64(vec![vec![1], vec![1], vec![1]]);
        let (sub, _incl) = sub_rep(&perm, &line).unwrap();
        assert!(is_isomorphic(&sub, &GRep::trivial(pg.group.clone())).unwrap());
        let (quot, proj, section) = quotient_rep(&perm, &line).unwrap();
        assert_eq!(quot.dim(), 2);
        assert!(is_isomorphic(&quot, &pg.standard_rep()).unwrap());
        assert!(proj.mul(&section).is_identity());
    }
}
