//! Subalgebra pairs: pullback to the subalgebra, induced cones, restriction
//! bounds, the discrete decomposability obstruction and saturation by Cartan
//! representatives.

mod cartan;
mod embedding;
mod saturation;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub use cartan::{
    brute_force_signatures, cartan_classes, cartan_residual, complex_rank, regular_signature,
    signature_of_span, CartanClass, CartanSignature, MAX_CARTAN_SO_SIZE,
};
pub use embedding::{
    block_embedding, diagonal_embedding, parse_embedding, real_form_embedding, SubalgebraEmbedding,
};
pub use saturation::{saturation_is_full, SaturationCertificate, Verdict, DEFAULT_SATURATION_BUDGET};

use crate::cone::{ConeDescription, DirectionIndex, DEFAULT_RESOLUTION};
use crate::error::{Error, Result};
use crate::lie::structure::{cartan_decomposition, maximal_split_abelian, random_transport_in, random_walk_transport};
use crate::lie::{classify_element, region, ClassTag, Covector, MatrixLieAlgebra};

pub const MIN_INDUCED_BUDGET: usize = 1_000;
/// Angular tolerance attached to sampled cones produced here.
pub const SAMPLED_TOL: f64 = 0.05;
/// Above this dimension sampled directions are kept without deduplication.
const DEDUP_MAX_DIM: usize = 4;

pub fn pullback_q(e: &SubalgebraEmbedding, xi: &Covector) -> Result<Covector> {
    e.pullback(xi)
}

/// `{xi : q(xi) = 0}` as a polyhedral cone with generators `±v`.
pub fn annihilator_cone(e: &SubalgebraEmbedding) -> ConeDescription {
    let dim = e.ambient().dim();
    if e.complement().is_empty() {
        return ConeDescription::zero(dim);
    }
    if e.complement().len() == dim {
        return ConeDescription::full(dim);
    }
    let generators = e
        .complement()
        .iter()
        .flat_map(|v| [v.clone(), -v.clone()])
        .collect();
    ConeDescription::Polyhedral { dim, generators }
}

/// Class name used in reports: the oriented region for three-dimensional
/// rank-one algebras, the element class otherwise.
pub fn class_label(l: &MatrixLieAlgebra, xi: &Covector) -> Result<String> {
    if l.orientation_reference().is_some() {
        Ok(region(l, xi)?.to_string())
    } else {
        Ok(classify_element(l, xi)?.tag.to_string())
    }
}

/// Random group elements `k1 a k2` (acting on chart coordinates), or a
/// random walk when the algebra is not stable under `X -> -X^T`.
pub(crate) struct GroupSampler<'a> {
    l: &'a MatrixLieAlgebra,
    k: Vec<DVector<f64>>,
    a: Vec<DVector<f64>>,
    stable: bool,
}

impl<'a> GroupSampler<'a> {
    pub(crate) fn new(l: &'a MatrixLieAlgebra) -> Self {
        match cartan_decomposition(l) {
            Ok(cd) => {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                let a = maximal_split_abelian(l, &cd, &mut rng);
                GroupSampler {
                    l,
                    k: cd.k,
                    a,
                    stable: true,
                }
            }
            Err(_) => GroupSampler {
                l,
                k: Vec::new(),
                a: Vec::new(),
                stable: false,
            },
        }
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DMatrix<f64> {
        if !self.stable {
            return random_walk_transport(self.l, 8, rng);
        }
        let k1 = random_transport_in(self.l, &self.k, 2, 2.0, rng);
        // Log-uniform boost strength, so translates range from nearly pure
        // rotations to elements far out along A.
        let strength = rng.random_range(-4.0f64..1.0).exp();
        let a = random_transport_in(self.l, &self.a, 1, strength, rng);
        let k2 = random_transport_in(self.l, &self.k, 2, 2.0, rng);
        k1 * a * k2
    }
}

#[derive(Debug, Clone)]
pub struct InducedCone {
    pub cone: ConeDescription,
    pub samples: usize,
    /// Classes of the sampled points of `q^{-1}(S)` (which are those of their
    /// saturation).
    pub class_counts: BTreeMap<String, usize>,
}

struct DirectionSink {
    dim: usize,
    index: Option<DirectionIndex>,
    out: Vec<DVector<f64>>,
}

impl DirectionSink {
    fn new(dim: usize) -> Self {
        DirectionSink {
            dim,
            index: (dim <= DEDUP_MAX_DIM).then(|| DirectionIndex::new(dim, DEFAULT_RESOLUTION)),
            out: Vec::new(),
        }
    }

    fn push(&mut self, v: &DVector<f64>) {
        let n = v.norm();
        if !(n > 1e-12) || !n.is_finite() {
            return;
        }
        let u = v / n;
        match &mut self.index {
            Some(idx) => {
                if idx.insert_if_far(u.as_slice(), DEFAULT_RESOLUTION) {
                    self.out.push(u);
                }
            }
            None => self.out.push(u),
        }
    }

    fn finish(self) -> ConeDescription {
        if self.out.is_empty() {
            ConeDescription::zero(self.dim)
        } else {
            ConeDescription::Sampled {
                dim: self.dim,
                directions: self.out,
                tol: SAMPLED_TOL,
            }
        }
    }
}

/// Sampled closure of `Ad*(G) q^{-1}(S)`.
///
/// Points `a + t lift(s)` are drawn with `a` Gaussian in the annihilator,
/// `s` a direction of `S` and `t` log-uniform; each point contributes its
/// own direction and that of a random group translate.
pub fn induced_cone(
    e: &SubalgebraEmbedding,
    s: &ConeDescription,
    budget: usize,
    seed: u64,
) -> Result<InducedCone> {
    if budget < MIN_INDUCED_BUDGET {
        return Err(Error::BudgetTooSmall {
            budget,
            min: MIN_INDUCED_BUDGET,
        });
    }
    let g = e.ambient();
    let dim = g.dim();
    if s.dim() != e.sub().dim() {
        return Err(Error::DimensionMismatch {
            expected: e.sub().dim(),
            found: s.dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lifted: Vec<DVector<f64>> = if s.is_zero() {
        Vec::new()
    } else {
        s.sample_directions(0.05, &mut rng)
            .iter()
            .map(|d| e.lift_matrix() * d)
            .collect()
    };
    let ann = e.complement();
    let sampler = GroupSampler::new(g);
    let mut sink = DirectionSink::new(dim);
    let mut counts = BTreeMap::new();
    let mut used = 0;
    for _ in 0..budget {
        let mut xi = DVector::zeros(dim);
        let pure_lift = !lifted.is_empty() && rng.random::<f64>() < 0.2;
        if !pure_lift {
            for v in ann {
                let c: f64 = StandardNormal.sample(&mut rng);
                xi.axpy(c, v, 1.0);
            }
        }
        if !lifted.is_empty() && (pure_lift || rng.random::<f64>() < 0.75) {
            let d = &lifted[rng.random_range(0..lifted.len())];
            let t = rng.random_range(-4.0f64..4.0).exp();
            xi.axpy(t, d, 1.0);
        }
        if xi.norm() < 1e-12 {
            continue;
        }
        used += 1;
        let label = class_label(g, &Covector::from_vector(xi.clone()))?;
        *counts.entry(label).or_insert(0) += 1;
        sink.push(&xi);
        let t = sampler.sample(&mut rng);
        sink.push(&(t * &xi));
    }
    Ok(InducedCone {
        cone: sink.finish(),
        samples: used,
        class_counts: counts,
    })
}

/// `q` applied to each direction, renormalised; zero images are dropped.
pub fn restrict_directions(e: &SubalgebraEmbedding, dirs: &[DVector<f64>]) -> Vec<DVector<f64>> {
    dirs.iter()
        .filter_map(|d| {
            let v = e.q_matrix() * d;
            let n = v.norm();
            (n > 1e-12 * d.norm().max(1e-300)).then(|| v / n)
        })
        .collect()
}

/// Closure of `q(C)`.
pub fn restriction_lower_bound(
    e: &SubalgebraEmbedding,
    c: &ConeDescription,
    resolution: f64,
    seed: u64,
) -> Result<ConeDescription> {
    let dh = e.sub().dim();
    if c.dim() != e.ambient().dim() {
        return Err(Error::DimensionMismatch {
            expected: e.ambient().dim(),
            found: c.dim(),
        });
    }
    if c.is_zero() {
        return Ok(ConeDescription::zero(dh));
    }
    // q has a right inverse, so it is onto.
    if c.as_named() == Some(crate::cone::NamedCone::Full) {
        return Ok(ConeDescription::full(dh));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = c.sample_directions(resolution, &mut rng);
    let mut sink = DirectionSink::new(dh);
    for d in restrict_directions(e, &dirs) {
        sink.push(&d);
    }
    Ok(sink.finish())
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ObstructionReport {
    pub obstructed: bool,
    pub samples: usize,
    pub class_counts: BTreeMap<String, usize>,
    /// A direction of `q(C)` outside the closed elliptic set.
    pub witness: Option<Vec<f64>>,
}

/// Whether some `q(d)` leaves the closed elliptic set of `h` (classes other
/// than elliptic, nilpotent and zero).
pub fn discrete_decomposability_obstruction(
    e: &SubalgebraEmbedding,
    dirs: &[DVector<f64>],
) -> Result<ObstructionReport> {
    let h = e.sub();
    let mut counts = BTreeMap::new();
    let mut witness = None;
    for d in dirs {
        let v = Covector::from_vector(e.q_matrix() * d);
        let tag = if v.norm() < 1e-12 * d.norm().max(1e-300) {
            ClassTag::Zero
        } else {
            classify_element(h, &v)?.tag
        };
        *counts.entry(class_label(h, &v)?).or_insert(0) += 1;
        if !matches!(tag, ClassTag::Elliptic | ClassTag::Nilpotent | ClassTag::Zero) && witness.is_none() {
            witness = Some(v.to_vec());
        }
    }
    Ok(ObstructionReport {
        obstructed: witness.is_some(),
        samples: dirs.len(),
        class_counts: counts,
        witness,
    })
}

/// [`discrete_decomposability_obstruction`] on sampled directions of a cone.
pub fn obstruction_for_cone(
    e: &SubalgebraEmbedding,
    c: &ConeDescription,
    resolution: f64,
    seed: u64,
) -> Result<ObstructionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = c.sample_directions(resolution, &mut rng);
    discrete_decomposability_obstruction(e, &dirs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::NamedCone;
    use crate::lie::sl2_region;
    use crate::lie::Region;

    #[test]
    fn annihilator_extremes() {
        let e = parse_embedding("sl2R|sl2R").unwrap();
        assert!(annihilator_cone(&e).is_zero());
        let e = parse_embedding("sl2R|0").unwrap();
        assert_eq!(annihilator_cone(&e).as_named(), Some(NamedCone::Full));
        let e = parse_embedding("sl2R|a").unwrap();
        match annihilator_cone(&e) {
            ConeDescription::Polyhedral { generators, .. } => assert_eq!(generators.len(), 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pullback_kills_the_annihilator() {
        let e = parse_embedding("su(2,1)|so(2,1)").unwrap();
        for v in e.complement() {
            let q = pullback_q(&e, &Covector::from_vector(v.clone())).unwrap();
            assert!(q.norm() < 1e-12);
        }
    }

    #[test]
    fn budget_floor() {
        let e = parse_embedding("sl2R|a").unwrap();
        assert!(matches!(
            induced_cone(&e, &ConeDescription::zero(1), 999, 0),
            Err(Error::BudgetTooSmall { .. })
        ));
    }

    #[test]
    fn split_torus_induces_everything() {
        let e = parse_embedding("sl2R|a").unwrap();
        let ind = induced_cone(&e, &ConeDescription::zero(1), 100_000, 5).unwrap();
        for r in ["Hyperbolic", "EllipticPlus", "EllipticMinus"] {
            let n = ind.class_counts.get(r).copied().unwrap_or(0);
            assert!(n * 100 >= ind.samples, "{r}: {n} of {}", ind.samples);
        }
        let full = ConeDescription::named(NamedCone::Full);
        assert!(crate::cone::cone_equal(&ind.cone, &full, 0.05).unwrap());
    }

    #[test]
    fn compact_torus_induces_hyperbolic_closure() {
        let e = parse_embedding("sl2R|so(2)").unwrap();
        let ind = induced_cone(&e, &ConeDescription::zero(1), 100_000, 6).unwrap();
        assert!(ind.class_counts.keys().all(|k| k == "Hyperbolic"), "{:?}", ind.class_counts);
        if let ConeDescription::Sampled { directions, .. } = &ind.cone {
            for d in directions {
                let r = sl2_region(d.as_slice(), 1e-9);
                assert!(matches!(r, Region::Hyperbolic | Region::NilpotentPlus | Region::NilpotentMinus));
            }
        }
        let hyp = ConeDescription::named(NamedCone::HypClosure);
        assert!(crate::cone::cone_equal(&ind.cone, &hyp, 0.05).unwrap());
    }

    #[test]
    fn trivial_pair_induces_zero() {
        let e = parse_embedding("sl2R|sl2R").unwrap();
        let ind = induced_cone(&e, &ConeDescription::zero(3), 1_000, 0).unwrap();
        assert!(ind.cone.is_zero());
    }

    #[test]
    fn restriction_of_zero_and_full() {
        let e = parse_embedding("su(2,1)|so(2,1)").unwrap();
        assert!(restriction_lower_bound(&e, &ConeDescription::zero(8), 0.05, 0)
            .unwrap()
            .is_zero());
        assert_eq!(
            restriction_lower_bound(&e, &ConeDescription::full(8), 0.05, 0)
                .unwrap()
                .as_named(),
            Some(NamedCone::Full)
        );
    }

    #[test]
    fn restriction_commutes_with_scaling() {
        let e = parse_embedding("diag(sl2R)").unwrap();
        let dirs: Vec<DVector<f64>> = (0..50)
            .map(|i| DVector::from_fn(6, |r, _| ((i * 7 + r * 3) % 11) as f64 - 5.0))
            .collect();
        let scaled: Vec<DVector<f64>> = dirs.iter().map(|d| d * 3.7).collect();
        let a = restrict_directions(&e, &dirs);
        let b = restrict_directions(&e, &scaled);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).amax() < 1e-12);
        }
    }

    #[test]
    fn zero_cone_is_not_obstructed() {
        let e = parse_embedding("diag(sl2R)").unwrap();
        let r = discrete_decomposability_obstruction(&e, &[]).unwrap();
        assert!(!r.obstructed);
    }
}
