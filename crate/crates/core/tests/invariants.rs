//! Cross-module structural invariants driven by seeded generators:
//! long exact sequences of cone triangles, the triangulated behaviour of
//! derived Hom, Yoneda agreement for extensions, uniqueness of the weight
//! filtration, and non-degeneracy of the t-structure.

use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

use motivecalc_core::derived::{
    cohomology_support, cone, hom_total, induced_on_cohomology, is_quasi_iso, precompose_matrix,
    shift, ChainMap, Complex,
};
use motivecalc_core::exactla::{induced_on_subquotient, kronecker, RatMatrix};
use motivecalc_core::galois::{GRep, PermGroup};
use motivecalc_core::gen::{case_rng, gen_chain_map, gen_complex, gen_mixed, GenConfig};
use motivecalc_core::mixed::{
    ext_complex, extension_from_cocycle, extension_class, hom_mixed, morphism_rank,
    validate_mixed_morphism, weight_filtration_obj, ExtDatum, MixedObject,
};
use motivecalc_core::pure::{express_pure, weight_of_twist, PureMorphism};

fn s3_config() -> GenConfig {
    let pg = PermGroup::symmetric(3).unwrap();
    let g = pg.group.clone();
    let mut spaces = BTreeMap::new();
    spaces.insert(1i64, pg.standard_rep());
    spaces.insert(2i64, GRep::trivial(g.clone()));
    spaces.insert(3i64, pg.sign_rep());
    let datum = ExtDatum::new(g.clone(), spaces).unwrap();
    let pool = vec![GRep::trivial(g), pg.sign_rep(), pg.standard_rep()];
    GenConfig::new(datum, pool).with_band(-6, 6)
}

#[test]
fn cone_triangles_have_exact_cohomology_sequences() {
    let cfg = s3_config();
    for i in 0..40u64 {
        let mut rng = case_rng(11, i);
        let x = gen_complex(&cfg, &mut rng);
        let y = gen_complex(&cfg, &mut rng);
        let f = gen_chain_map(&mut rng, &x, &y);
        let (c, incl, proj) = cone(&f, &x, &y).unwrap();
        // Alternating sum of cohomology dimensions vanishes.
        let euler = |k: &Complex| -> i64 {
            cohomology_support(k)
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
        assert_eq!(euler(&x) - euler(&y) + euler(&c), 0, "euler fails on case {i}");
        // Exactness at each node by rank bookkeeping: the long sequence
        // H^n(X) → H^n(Y) → H^n(C) → H^{n+1}(X) is induced by honest maps.
        let shifted = shift(&x, 1);
        let mut degrees = x.degrees();
        degrees.extend(y.degrees());
        degrees.extend(c.degrees());
        degrees.sort_unstable();
        degrees.dedup();
        for &n in &degrees {
            let (hx, hy, h_f) = induced_on_cohomology(&f, &x, &y, n).unwrap();
            let (_, hc, h_incl) = induced_on_cohomology(&incl, &y, &c, n).unwrap();
            let (_, hx1, h_proj) = induced_on_cohomology(&proj, &c, &shifted, n).unwrap();
            // Composites vanish.
            assert!(h_incl.compose(&h_f).is_zero(), "incl∘f nonzero at {n}");
            assert!(h_proj.compose(&h_incl).is_zero(), "proj∘incl nonzero at {n}");
            // Exactness at H^n(Y) and H^n(C).
            assert_eq!(
                morphism_rank(&h_f) + morphism_rank(&h_incl),
                hy.object.total_dim(),
                "exactness fails at the middle node, degree {n}, case {i}"
            );
            let _ = (hx, hc, hx1);
        }
        // Exactness at H^n(C): rank(incl) + rank(proj) = dim H^n(C).
        for &n in &degrees {
            let (_, hc, h_incl) = induced_on_cohomology(&incl, &y, &c, n).unwrap();
            let (_, _, h_proj) = induced_on_cohomology(&proj, &c, &shifted, n).unwrap();
            assert_eq!(
                morphism_rank(&h_incl) + morphism_rank(&h_proj),
                hc.object.total_dim(),
                "exactness fails at the cone node, degree {n}, case {i}"
            );
        }
    }
}

#[test]
fn derived_hom_is_triangulated() {
    let cfg = s3_config();
    for i in 0..15u64 {
        let mut rng = case_rng(13, i);
        let x = gen_complex(&cfg, &mut rng);
        let y = gen_complex(&cfg, &mut rng);
        let l = gen_complex(&cfg, &mut rng);
        let f = gen_chain_map(&mut rng, &x, &y);
        let (c, incl, proj) = cone(&f, &x, &y).unwrap();
        let shifted = shift(&x, 1);
        let ht_x1 = hom_total(&shifted, &l).unwrap();
        let ht_c = hom_total(&c, &l).unwrap();
        let ht_y = hom_total(&y, &l).unwrap();
        let ht_x = hom_total(&x, &l).unwrap();
        let h_map = |src: &motivecalc_core::derived::HomTotal,
                     dst: &motivecalc_core::derived::HomTotal,
                     alpha: &ChainMap,
                     n: i32|
         -> RatMatrix {
            let mat = precompose_matrix(src, dst, alpha, n).unwrap();
            induced_on_subquotient(
                &mat,
                &src.diff(n).kernel_matrix(),
                &src.diff(n - 1).column_space(),
                &dst.diff(n).kernel_matrix(),
                &dst.diff(n - 1).column_space(),
            )
            .expect("cocycles map to cocycles")
        };
        for n in -2..=2 {
            // Hom(X[1], L) → Hom(C, L) → Hom(Y, L) → Hom(X, L).
            let a = h_map(&ht_x1, &ht_c, &proj, n);
            let b = h_map(&ht_c, &ht_y, &incl, n);
            let d = h_map(&ht_y, &ht_x, &f, n);
            assert!(b.mul(&a).is_zero(), "composite a;b nonzero at {n}, case {i}");
            assert!(d.mul(&b).is_zero(), "composite b;d nonzero at {n}, case {i}");
            // Exactness at the two inner nodes.
            assert_eq!(
                a.rank() + b.rank(),
                ht_c.h_dim(n),
                "exactness fails at the cone node, shift {n}, case {i}"
            );
            assert_eq!(
                b.rank() + d.rank(),
                ht_y.h_dim(n),
                "exactness fails at the middle node, shift {n}, case {i}"
            );
        }
    }
}

#[test]
fn extensions_agree_with_yoneda_classes() {
    let cfg = s3_config();
    let mut nonsplit_seen = 0;
    for i in 0..60u64 {
        let mut rng = case_rng(17, i);
        let m = gen_mixed(&cfg, &mut rng);
        let n = gen_mixed(&cfg, &mut rng);
        let ec = ext_complex(&m, &n).unwrap();
        if ec.c1_basis.is_empty() {
            continue;
        }
        let c = motivecalc_core::gen::gen_cocycle(&mut rng, &m, &n);
        let (l, incl, proj) = extension_from_cocycle(&m, &n, &c).unwrap();
        validate_mixed_morphism(&n, &l, &incl).unwrap();
        validate_mixed_morphism(&l, &m, &proj).unwrap();
        // The recomputed class agrees.
        let recovered = extension_class(&m, &n, &l, &incl, &proj).unwrap();
        assert_eq!(
            ec.classes_equal(&c, &recovered),
            Some(true),
            "class does not round trip on case {i}"
        );
        // Split iff the class is zero: a mixed section of proj exists
        // exactly when c is a coboundary.
        let candidates = hom_mixed(&m, &l).unwrap();
        let target_basis = hom_mixed(&m, &m).unwrap();
        let section_exists = 'search: {
            if target_basis.is_empty() {
                break 'search m.is_zero();
            }
            let mut rows: Vec<Vec<motivecalc_core::exactla::Rat>> =
                vec![Vec::new(); target_basis.len()];
            for s in &candidates {
                let coords = express_pure(&target_basis, &proj.compose(s), m.graded(), m.graded())
                    .expect("composite is mixed");
                for (ri, v) in coords.into_iter().enumerate() {
                    rows[ri].push(v);
                }
            }
            let rhs = express_pure(
                &target_basis,
                &PureMorphism::identity(m.graded()),
                m.graded(),
                m.graded(),
            )
            .expect("identity is mixed");
            let system = RatMatrix::from_rows(rows).unwrap();
            system.solve(&rhs).unwrap().is_some()
        };
        let class_zero = ec.is_coboundary(&c).expect("cocycle is well typed");
        assert_eq!(
            section_exists, class_zero,
            "split/nonsplit disagrees with the class on case {i}"
        );
        if !class_zero {
            nonsplit_seen += 1;
        }
    }
    assert!(nonsplit_seen > 5, "the corpus never produced nonsplit extensions");
}

#[test]
fn weight_filtration_is_the_unique_pure_filtration() {
    let cfg = s3_config();
    for i in 0..40u64 {
        let mut rng = case_rng(19, i);
        let m = gen_mixed(&cfg, &mut rng);
        let weights: Vec<i32> = m.support().iter().map(|&t| weight_of_twist(t)).collect();
        let Some(&j0) = weights.first() else { continue };
        // Dropping the weight-j0 layer from the filtration leaves adjacent
        // sub-quotients impure: W_{j0+1}/W_{j0-1} mixes two weights
        // whenever both layers are nonzero.
        let (w_hi, _) = weight_filtration_obj(&m, j0 + 2);
        let (w_lo, _) = weight_filtration_obj(&m, j0 - 1);
        let mixed_span: Vec<i32> = w_hi
            .support()
            .iter()
            .filter(|&&t| w_lo.dim_at(t) == 0)
            .map(|&t| weight_of_twist(t))
            .collect();
        if mixed_span.len() > 1 {
            let distinct: std::collections::BTreeSet<i32> = mixed_span.iter().copied().collect();
            assert!(
                distinct.len() > 1,
                "skipping a layer must leave an impure sub-quotient"
            );
        }
        // Any operator-closed subobject supported in weights ≤ n sits
        // inside W_n: subobjects are twistwise, so this is the window.
        for n in [j0, j0 + 2] {
            let (w, incl) = weight_filtration_obj(&m, n);
            validate_mixed_morphism(&w, &m, &incl).unwrap();
            for &t in &w.support() {
                assert!(weight_of_twist(t) <= n);
                assert_eq!(w.dim_at(t), m.dim_at(t), "window keeps whole pieces");
            }
        }
    }
}

#[test]
fn t_structure_is_non_degenerate() {
    let cfg = s3_config();
    for i in 0..20u64 {
        let mut rng = case_rng(23, i);
        let k = gen_complex(&cfg, &mut rng);
        if k.is_zero() {
            continue;
        }
        let (acyclic, _, _) = cone(&ChainMap::identity(&k), &k, &k).unwrap();
        let zero = Complex::zero(cfg.datum.clone());
        assert!(is_quasi_iso(&ChainMap::zero(), &acyclic, &zero).unwrap());
        // A complex with nonzero cohomology is not quasi-isomorphic to zero.
        if !cohomology_support(&k).is_empty() {
            assert!(!is_quasi_iso(&ChainMap::zero(), &k, &zero).unwrap());
        }
    }
}

#[test]
fn fiber_functor_is_faithful_and_conservative() {
    let cfg = s3_config();
    for i in 0..30u64 {
        let mut rng = case_rng(29, i);
        let m = gen_mixed(&cfg, &mut rng);
        let n = gen_mixed(&cfg, &mut rng);
        let f = motivecalc_core::gen::gen_mixed_morphism(&mut rng, &m, &n);
        // Faithful: zero underlying graded map means the zero morphism.
        if f.components.values().all(|c| c.is_zero()) {
            assert!(f.is_zero());
        }
        // Conservative: twistwise invertible morphisms have mixed inverses.
        if m.support() == n.support()
            && m.support()
                .iter()
                .all(|&t| m.dim_at(t) == n.dim_at(t))
            && f.components.len() == m.support().len()
            && f.components.values().all(|c| c.inverse().is_some())
        {
            let inverse = PureMorphism {
                components: f
                    .components
                    .iter()
                    .map(|(&t, c)| (t, c.inverse().unwrap()))
                    .collect(),
            };
            validate_mixed_morphism(&n, &m, &inverse).unwrap();
        }
    }
}

#[test]
fn kronecker_is_associative_up_to_index_reordering() {
    // With row-major pair indexing the canonical reordering is the
    // identity, so associativity holds on the nose.
    let mut rng = case_rng(31, 0);
    use rand::Rng;
    for _ in 0..20 {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(1..3)).collect();
        let mats: Vec<RatMatrix> = dims
            .iter()
            .map(|&d| {
                RatMatrix::from_fn(d, d + 1, |_, _| {
                    motivecalc_core::exactla::rat(rng.gen_range(-2..=2))
                })
            })
            .collect();
        let left = kronecker(&kronecker(&mats[0], &mats[1]), &mats[2]);
        let right = kronecker(&mats[0], &kronecker(&mats[1], &mats[2]));
        assert_eq!(left, right);
    }
}

#[test]
fn generated_objects_respect_the_band() {
    let cfg = s3_config();
    for i in 0..30u64 {
        let mut rng = case_rng(37, i);
        let k = gen_complex(&cfg, &mut rng);
        for t in k.twist_support() {
            let w = weight_of_twist(t);
            assert!(cfg.min_weight <= w && w <= cfg.max_weight);
        }
        let _ = Arc::strong_count(&cfg.datum);
        let _ = MixedObject::zero(cfg.datum.clone());
    }
}
