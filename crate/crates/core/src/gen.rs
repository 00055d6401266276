//! Seeded random generators for objects, morphisms and complexes, used by
//! the verification suites and the property tests. Determinism: everything
//! flows from the provided generator, and per-case generators are derived
//! by index so suites can fan out without losing reproducibility.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::derived::{block_map, chain_map_space, cone, direct_sum_complex, ChainMap, Complex, Degree};
use crate::exactla::{rat, Rat, RatMatrix};
use crate::galois::{direct_sum_rep, hom_space, tensor_rep, GRep};
use crate::mixed::{
    ext_complex, extension_from_cocycle, Cocycle, ExtDatum, MixedMorphism, MixedObject,
};
use crate::pure::{GradedObject, PureMorphism, Twist};

/// Bounds and ambient data for generation.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub datum: Arc<ExtDatum>,
    /// Nonzero representations to draw pieces from; the trivial
    /// representation should be present.
    pub rep_pool: Vec<GRep>,
    /// Weight band [a, b]: twists m are constrained by a ≤ −2m ≤ b.
    pub min_weight: i32,
    pub max_weight: i32,
    pub max_dim: usize,
    pub max_terms: usize,
}

impl GenConfig {
    pub fn new(datum: Arc<ExtDatum>, rep_pool: Vec<GRep>) -> Self {
        GenConfig {
            datum,
            rep_pool,
            min_weight: -8,
            max_weight: 8,
            max_dim: 3,
            max_terms: 3,
        }
    }

    pub fn with_band(mut self, a: i32, b: i32) -> Self {
        self.min_weight = a;
        self.max_weight = b;
        self
    }

    /// Twists allowed by the band: a ≤ −2m ≤ b.
    pub fn twist_range(&self) -> (Twist, Twist) {
        let m_min = -(self.max_weight.div_euclid(2));
        let m_max = -(self.min_weight + 1).div_euclid(2);
        (m_min, m_max)
    }
}

/// Derives a per-case generator from a master seed and a case index.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-2i64..=2))
}

pub fn gen_rep(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> GRep {
    let pool = &cfg.rep_pool;
    let first = &pool[rng.gen_range(0..pool.len())];
    if rng.gen_bool(0.35) {
        let second = &pool[rng.gen_range(0..pool.len())];
        if first.dim() + second.dim() <= cfg.max_dim {
            return direct_sum_rep(first, second).expect("pool shares the group");
        }
    }
    if first.dim() <= cfg.max_dim {
        first.clone()
    } else {
        GRep::trivial(cfg.datum.group().clone())
    }
}

pub fn gen_graded(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> GradedObject {
    let (m_min, m_max) = cfg.twist_range();
    let count = rng.gen_range(1..=3usize);
    let mut pieces = BTreeMap::new();
    for _ in 0..count {
        let m = rng.gen_range(m_min..=m_max);
        pieces.entry(m).or_insert_with(|| gen_rep(cfg, rng));
    }
    GradedObject::new(cfg.datum.group().clone(), pieces).expect("pool reps are valid")
}

/// Random equivariant operator data on top of a graded object.
pub fn gen_mixed(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> MixedObject {
    let graded = gen_graded(cfg, rng);
    let mut ops = BTreeMap::new();
    for (&d, e) in cfg.datum.spaces() {
        for (&m, src) in graded.pieces() {
            let Some(dst) = graded.piece(m + d as Twist) else {
                continue;
            };
            if rng.gen_bool(0.25) {
                continue;
            }
            let target = tensor_rep(dst, e).expect("same group");
            let basis = hom_space(src, &target).expect("same group");
            if basis.is_empty() {
                continue;
            }
            let mut acc = RatMatrix::zeros(target.dim(), src.dim());
            for b in &basis {
                let c = small_rat(rng);
                if !c.is_zero() {
                    acc = acc.add(&b.scale(&c));
                }
            }
            if !acc.is_zero() {
                ops.insert((d, m), acc);
            }
        }
    }
    MixedObject::new(graded, cfg.datum.clone(), ops).expect("generated operators are equivariant")
}

/// Random element of the mixed hom space.
pub fn gen_mixed_morphism(
    rng: &mut ChaCha8Rng,
    src: &MixedObject,
    dst: &MixedObject,
) -> MixedMorphism {
    let basis = crate::mixed::hom_mixed(src, dst).expect("same datum");
    let mut acc = PureMorphism::zero();
    for b in &basis {
        let c = small_rat(rng);
        if !c.is_zero() {
            acc = acc.add(&b.scale(&c));
        }
    }
    acc
}

/// Random bounded complex with valid differentials: each differential is a
/// random element of the subspace killed by composition with the previous.
pub fn gen_complex(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Complex {
    let len = rng.gen_range(1..=cfg.max_terms);
    let start: Degree = rng.gen_range(-2..=1);
    let mut terms = BTreeMap::new();
    for i in 0..len {
        let obj = gen_mixed(cfg, rng);
        if !obj.is_zero() {
            terms.insert(start + i as Degree, obj);
        }
    }
    let term_at = |p: Degree, terms: &BTreeMap<Degree, MixedObject>| -> MixedObject {
        terms
            .get(&p)
            .cloned()
            .unwrap_or_else(|| MixedObject::zero(cfg.datum.clone()))
    };
    let mut diffs: BTreeMap<Degree, MixedMorphism> = BTreeMap::new();
    let degrees: Vec<Degree> = terms.keys().copied().collect();
    for &p in &degrees {
        if !terms.contains_key(&(p + 1)) {
            continue;
        }
        let src = term_at(p, &terms);
        let dst = term_at(p + 1, &terms);
        let basis = crate::mixed::hom_mixed(&src, &dst).expect("same datum");
        if basis.is_empty() {
            continue;
        }
        // Constrain by d ∘ d_prev = 0.
        let allowed: Vec<MixedMorphism> = match diffs.get(&(p - 1)) {
            None => basis,
            Some(prev) => {
                let prev_src = term_at(p - 1, &terms);
                let target_basis =
                    crate::mixed::hom_mixed(&prev_src, &dst).expect("same datum");
                if target_basis.is_empty() {
                    basis
                } else {
                    let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); target_basis.len()];
                    for b in &basis {
                        let comp = b.compose(prev);
                        let coords = crate::pure::express_pure(
                            &target_basis,
                            &comp,
                            prev_src.graded(),
                            dst.graded(),
                        )
                        .expect("composite stays mixed");
                        for (ri, v) in coords.into_iter().enumerate() {
                            rows[ri].push(v);
                        }
                    }
                    let constraint = RatMatrix::from_rows(rows).expect("uniform");
                    constraint
                        .kernel_basis()
                        .into_iter()
                        .map(|coords| {
                            let mut acc = PureMorphism::zero();
                            for (b, c) in basis.iter().zip(&coords) {
                                if !c.is_zero() {
                                    acc = acc.add(&b.scale(c));
                                }
                            }
                            acc
                        })
                        .filter(|f| !f.is_zero())
                        .collect()
                }
            }
        };
        if allowed.is_empty() || rng.gen_bool(0.3) {
            continue;
        }
        let mut acc = PureMorphism::zero();
        for b in &allowed {
            let c = small_rat(rng);
            if !c.is_zero() {
                acc = acc.add(&b.scale(&c));
            }
        }
        if !acc.is_zero() {
            diffs.insert(p, acc);
        }
    }
    Complex::new(cfg.datum.clone(), terms, diffs).expect("constructed to be valid")
}

/// Random heart complex: a graded object rebuilt as ⊕ N_m(m)[2m].
pub fn gen_heart_complex(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Complex {
    let nf = gen_graded(cfg, rng);
    crate::weights::rebuild_from_normal_form(&cfg.datum, &nf)
}

/// Random complex pure of one w-weight: a heart complex shifted by w.
pub fn gen_pure_weight_complex(cfg: &GenConfig, rng: &mut ChaCha8Rng, w: i32) -> Complex {
    crate::derived::shift(&gen_heart_complex(cfg, rng), w)
}

/// Random complex of weights ≤ r: a sum of pure parts at weights r, r−1,
/// r−2, sometimes glued by a cone.
pub fn gen_w_le(cfg: &GenConfig, rng: &mut ChaCha8Rng, r: i32) -> Complex {
    let wa = r - rng.gen_range(0..=2);
    let a = gen_pure_weight_complex(cfg, rng, wa);
    if rng.gen_bool(0.5) {
        let wb = r - rng.gen_range(0..=2);
        let b = gen_pure_weight_complex(cfg, rng, wb);
        glue_or_sum(rng, &a, &b)
    } else {
        a
    }
}

pub fn gen_w_ge(cfg: &GenConfig, rng: &mut ChaCha8Rng, s: i32) -> Complex {
    let wa = s + rng.gen_range(0..=2);
    let a = gen_pure_weight_complex(cfg, rng, wa);
    if rng.gen_bool(0.5) {
        let wb = s + rng.gen_range(0..=2);
        let b = gen_pure_weight_complex(cfg, rng, wb);
        glue_or_sum(rng, &a, &b)
    } else {
        a
    }
}

/// Random complex without weights r..s: pure parts strictly outside the
/// interval, summed.
pub fn gen_without_weights(cfg: &GenConfig, rng: &mut ChaCha8Rng, r: i32, s: i32) -> Complex {
    let below = r - rng.gen_range(1..=2);
    let above = s + rng.gen_range(1..=2);
    let a = gen_pure_weight_complex(cfg, rng, below);
    let b = gen_pure_weight_complex(cfg, rng, above);
    match rng.gen_range(0..3u8) {
        0 => a,
        1 => b,
        _ => direct_sum_complex(&a, &b).expect("same datum"),
    }
}

/// Either the direct sum or the cone of a random chain map b[−1] → a,
/// which is an extension of b by a.
fn glue_or_sum(rng: &mut ChaCha8Rng, a: &Complex, b: &Complex) -> Complex {
    if rng.gen_bool(0.5) {
        return direct_sum_complex(a, b).expect("same datum");
    }
    let shifted = crate::derived::shift(b, -1);
    let maps = chain_map_space(&shifted, a).expect("same datum");
    if maps.is_empty() {
        return direct_sum_complex(a, b).expect("same datum");
    }
    let mut f = ChainMap::zero();
    for m in &maps {
        let c = small_rat(rng);
        if !c.is_zero() {
            f = f.add(&m.scale(&c));
        }
    }
    let (c, _, _) = cone(&f, &shifted, a).expect("valid chain map");
    c
}

/// A contractible complex: the cone of an identity.
pub fn gen_contractible(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Complex {
    let obj = gen_mixed(cfg, rng);
    let at: Degree = rng.gen_range(-2..=2);
    let k = Complex::concentrated(obj, at);
    if k.is_zero() {
        return k;
    }
    let (c, _, _) = cone(&ChainMap::identity(&k), &k, &k).expect("identity is a chain map");
    c
}

/// Entangles a direct sum by conjugating its differential with the
/// triangular automorphism [[1, 0], [g, 1]] for a random chain map g.
pub fn entangle_sum(rng: &mut ChaCha8Rng, a: &Complex, b: &Complex) -> Complex {
    let sum = direct_sum_complex(a, b).expect("same datum");
    let maps = chain_map_space(a, b).expect("same datum");
    if maps.is_empty() {
        return sum;
    }
    let mut g = ChainMap::zero();
    for m in &maps {
        let c = small_rat(rng);
        if !c.is_zero() {
            g = g.add(&m.scale(&c));
        }
    }
    if g.is_zero() {
        return sum;
    }
    let u_at = |p: Degree, gm: &MixedMorphism| -> MixedMorphism {
        let at = a.term(p);
        let bt = b.term(p);
        let parts = [&at, &bt];
        block_map(&parts, &parts, &|i, j| {
            if i == j {
                Some(PureMorphism::identity(parts[i].graded()))
            } else if i == 1 && j == 0 {
                Some(gm.clone())
            } else {
                None
            }
        })
    };
    let mut diffs = BTreeMap::new();
    for (&p, d) in sum.diffs() {
        // u_{p+1} ∘ d ∘ u_p⁻¹, with u⁻¹ = id − lower block.
        let up1 = u_at(p + 1, &g.component(p + 1));
        let um = u_at(p, &g.component(p).neg());
        diffs.insert(p, up1.compose(d).compose(&um));
    }
    Complex::new(sum.datum().clone(), sum.terms().clone(), diffs)
        .expect("conjugation preserves validity")
}

/// Random complex with w-weights inside {−1, 0}, presented non-trivially:
/// pure parts, optional contractible padding, then entangled.
pub fn gen_adjacent_band(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Complex {
    let a = gen_pure_weight_complex(cfg, rng, -1);
    let b = gen_pure_weight_complex(cfg, rng, 0);
    let mut k = entangle_sum(rng, &a, &b);
    if rng.gen_bool(0.4) {
        let pad = gen_contractible(cfg, rng);
        if !pad.is_zero() {
            k = entangle_sum(rng, &k, &pad);
        }
    }
    k
}

/// Random cocycle between two mixed objects (any operator-layer element is
/// a cocycle; nothing lives above degree one).
pub fn gen_cocycle(rng: &mut ChaCha8Rng, m: &MixedObject, n: &MixedObject) -> Cocycle {
    let ec = ext_complex(m, n).expect("same datum");
    let coords: Vec<Rat> = (0..ec.c1_basis.len()).map(|_| small_rat(rng)).collect();
    ec.coords_to_cocycle(&coords)
}

/// Random short exact sequence 0 → A → L → C → 0 via an extension cocycle.
pub struct GeneratedSes {
    pub sub: MixedObject,
    pub total: MixedObject,
    pub quotient: MixedObject,
    pub incl: MixedMorphism,
    pub proj: MixedMorphism,
}

pub fn gen_ses(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> GeneratedSes {
    let sub = gen_mixed(cfg, rng);
    let quotient = gen_mixed(cfg, rng);
    let c = gen_cocycle(rng, &quotient, &sub);
    let (total, incl, proj) =
        extension_from_cocycle(&quotient, &sub, &c).expect("generated cocycle is well typed");
    GeneratedSes {
        sub,
        total,
        quotient,
        incl,
        proj,
    }
}

/// Random honest chain map between two complexes.
pub fn gen_chain_map(rng: &mut ChaCha8Rng, k: &Complex, l: &Complex) -> ChainMap {
    let maps = chain_map_space(k, l).expect("same datum");
    let mut f = ChainMap::zero();
    for m in &maps {
        let c = small_rat(rng);
        if !c.is_zero() {
            f = f.add(&m.scale(&c));
        }
    }
    f
}
