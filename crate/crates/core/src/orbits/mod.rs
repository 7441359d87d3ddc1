//! Coadjoint orbits: parameters, families of orbits, sampling, and the
//! symplectic and Euclidean densities on orbits.

mod measure;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{cone_union, random_unit, ConeDescription, NamedCone, PointFamily};
use crate::error::{Error, Result};
use crate::lie::structure::{
    cartan_decomposition, generic_in, maximal_split_abelian, positive_eigenspaces,
    random_transport_in, random_walk_transport,
};
use crate::lie::{sl2r, AlgebraKind, Covector, MatrixLieAlgebra};

pub use measure::{
    canonical_density, density_ratio_f, euclidean_density, fit_log_slope, growth_scan,
    kks_form, kks_gram, orbit_invariants, tangent_basis, tangent_frame, GrowthFit, TangentFrame,
};

/// Number of random-walk factors used to sample orbits of general algebras.
pub const WALK_STEPS: usize = 50;

/// The coadjoint orbits of `sl(2,R)`, named by their quadric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Sl2Tag {
    /// `x^2 + y^2 - z^2 = nu^2`.
    Hyp(f64),
    /// `z^2 - x^2 - y^2 = n^2`, `z > 0`.
    EllPlus(f64),
    /// `z^2 - x^2 - y^2 = n^2`, `z < 0`.
    EllMinus(f64),
    NilPlus,
    NilMinus,
    Zero,
}

impl Sl2Tag {
    pub fn base_point(self) -> Vec<f64> {
        match self {
            Sl2Tag::Hyp(nu) => vec![nu, 0.0, 0.0],
            Sl2Tag::EllPlus(n) => vec![0.0, 0.0, n],
            Sl2Tag::EllMinus(n) => vec![0.0, 0.0, -n],
            Sl2Tag::NilPlus => vec![1.0, 0.0, 1.0],
            Sl2Tag::NilMinus => vec![1.0, 0.0, -1.0],
            Sl2Tag::Zero => vec![0.0, 0.0, 0.0],
        }
    }

    /// Residual of the defining equations at `p`.
    pub fn residual(self, p: &[f64]) -> f64 {
        let q = p[0] * p[0] + p[1] * p[1] - p[2] * p[2];
        let scale = 1.0 + p.iter().map(|x| x * x).sum::<f64>();
        let sign_ok = |ok: bool| if ok { 0.0 } else { f64::INFINITY };
        match self {
            Sl2Tag::Hyp(nu) => (q - nu * nu).abs() / scale,
            Sl2Tag::EllPlus(n) => (q + n * n).abs() / scale + sign_ok(p[2] > 0.0),
            Sl2Tag::EllMinus(n) => (q + n * n).abs() / scale + sign_ok(p[2] < 0.0),
            Sl2Tag::NilPlus => q.abs() / scale + sign_ok(p[2] > 0.0),
            Sl2Tag::NilMinus => q.abs() / scale + sign_ok(p[2] < 0.0),
            Sl2Tag::Zero => p.iter().map(|x| x.abs()).sum(),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Sl2Tag::Hyp(v) | Sl2Tag::EllPlus(v) | Sl2Tag::EllMinus(v) if !(v > 0.0 && v.is_finite()) => {
                Err(Error::Parse(format!("orbit parameter must be positive, got {v}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Sl2Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2Tag::Hyp(v) => write!(f, "O_{v}"),
            Sl2Tag::EllPlus(n) => write!(f, "O_{n}^+"),
            Sl2Tag::EllMinus(n) => write!(f, "O_{n}^-"),
            Sl2Tag::NilPlus => write!(f, "N^+"),
            Sl2Tag::NilMinus => write!(f, "N^-"),
            Sl2Tag::Zero => write!(f, "{{0}}"),
        }
    }
}

/// A single coadjoint orbit given by a base point.
#[derive(Debug, Clone)]
pub struct OrbitParam {
    pub algebra: Arc<MatrixLieAlgebra>,
    pub base_point: Covector,
    pub sl2_tag: Option<Sl2Tag>,
}

impl OrbitParam {
    pub fn new(algebra: Arc<MatrixLieAlgebra>, base_point: Covector, sl2_tag: Option<Sl2Tag>) -> Result<Self> {
        algebra.check_len(base_point.dim())?;
        if let Some(t) = sl2_tag {
            if *algebra.kind() != AlgebraKind::Sl2R {
                return Err(Error::InvalidAlgebra("sl2 orbit tag on another algebra".into()));
            }
            t.validate()?;
            if t.residual(base_point.coords().as_slice()) > 1e-10 {
                return Err(Error::InvalidAlgebra(format!("base point is not on {t}")));
            }
        }
        Ok(OrbitParam {
            algebra,
            base_point,
            sl2_tag,
        })
    }

    pub fn sl2(tag: Sl2Tag) -> Result<Self> {
        tag.validate()?;
        Ok(OrbitParam {
            algebra: Arc::new(sl2r()),
            base_point: Covector::new(tag.base_point()),
            sl2_tag: Some(tag),
        })
    }
}

/// Parameter support of an orbit branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParamSet {
    Finite(Vec<f64>),
    /// `from, from + 1, ...`
    Integers { from: i64 },
    /// `[lo, hi]`, unbounded above when `hi` is `None`.
    Interval { lo: f64, hi: Option<f64> },
}

/// Parameters below this are treated as this value, keeping samples on a
/// genuine regular orbit.
const MIN_PARAM: f64 = 1e-3;

impl ParamSet {
    pub fn is_unbounded(&self) -> bool {
        matches!(self, ParamSet::Integers { .. } | ParamSet::Interval { hi: None, .. })
    }

    pub fn is_empty(&self) -> bool {
        match self {
            ParamSet::Finite(v) => v.is_empty(),
            ParamSet::Integers { .. } => false,
            ParamSet::Interval { lo, hi } => hi.is_some_and(|h| h < *lo),
        }
    }

    /// The element of the set closest to `v`.
    pub fn snap(&self, v: f64) -> f64 {
        match self {
            ParamSet::Finite(list) => *list
                .iter()
                .min_by(|a, b| (*a - v).abs().total_cmp(&(*b - v).abs()))
                .expect("nonempty parameter list"),
            ParamSet::Integers { from } => v.round().max(*from as f64).max(1.0),
            ParamSet::Interval { lo, hi } => {
                let lo = lo.max(MIN_PARAM);
                let c = v.max(lo);
                match hi {
                    Some(h) => c.min(h.max(lo)),
                    None => c,
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = match self {
            ParamSet::Finite(v) => v.iter().any(|x| !(*x > 0.0 && x.is_finite())),
            ParamSet::Integers { from } => *from < 1,
            ParamSet::Interval { lo, hi } => *lo < 0.0 || hi.is_some_and(|h| !(h > 0.0)),
        };
        if bad || self.is_empty() {
            return Err(Error::Parse(format!("invalid orbit parameter set {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sl2Kind {
    Hyp,
    EllPlus,
    EllMinus,
    NilPlus,
    NilMinus,
    Zero,
}

/// A union of `sl(2,R)` orbits of one kind over a parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sl2Branch {
    pub kind: Sl2Kind,
    pub params: ParamSet,
}

impl Sl2Branch {
    pub fn new(kind: Sl2Kind, params: ParamSet) -> Result<Self> {
        if matches!(kind, Sl2Kind::Hyp | Sl2Kind::EllPlus | Sl2Kind::EllMinus) {
            params.validate()?;
        }
        Ok(Sl2Branch { kind, params })
    }

    pub fn single(tag: Sl2Tag) -> Self {
        let (kind, p) = match tag {
            Sl2Tag::Hyp(v) => (Sl2Kind::Hyp, Some(v)),
            Sl2Tag::EllPlus(v) => (Sl2Kind::EllPlus, Some(v)),
            Sl2Tag::EllMinus(v) => (Sl2Kind::EllMinus, Some(v)),
            Sl2Tag::NilPlus => (Sl2Kind::NilPlus, None),
            Sl2Tag::NilMinus => (Sl2Kind::NilMinus, None),
            Sl2Tag::Zero => (Sl2Kind::Zero, None),
        };
        Sl2Branch {
            kind,
            params: ParamSet::Finite(p.into_iter().collect()),
        }
    }

    fn is_unbounded(&self) -> bool {
        self.kind != Sl2Kind::Zero
    }

    fn exact_cone(&self) -> NamedCone {
        let big = self.params.is_unbounded();
        match (self.kind, big) {
            (Sl2Kind::Hyp, false) => NamedCone::Nil,
            (Sl2Kind::Hyp, true) => NamedCone::HypClosure,
            (Sl2Kind::EllPlus, false) | (Sl2Kind::NilPlus, _) => NamedCone::NilPlus,
            (Sl2Kind::EllPlus, true) => NamedCone::EllPlusClosure,
            (Sl2Kind::EllMinus, false) | (Sl2Kind::NilMinus, _) => NamedCone::NilMinus,
            (Sl2Kind::EllMinus, true) => NamedCone::EllMinusClosure,
            (Sl2Kind::Zero, _) => NamedCone::Zero,
        }
    }

    /// A point of the branch of norm at least `radius`, aimed at a uniformly
    /// random direction: the parameter is snapped into the support and the
    /// point is then placed on that exact orbit as close to the target
    /// direction as the norm constraint allows.
    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        let u = random_unit(3, rng);
        let t = radius * (1.0 + rng.random::<f64>());
        let rho = (u[0] * u[0] + u[1] * u[1]).sqrt();
        let theta = if rho > 1e-12 {
            u[1].atan2(u[0])
        } else {
            rng.random_range(0.0..2.0 * PI)
        };
        const EDGE: f64 = 1.0 - 1e-12;
        let min_s = |p: f64| {
            if p >= radius {
                0.0
            } else {
                ((radius * radius) / (p * p)).acosh() / 2.0
            }
        };
        let (r, z) = match self.kind {
            Sl2Kind::Zero => return None,
            Sl2Kind::NilPlus | Sl2Kind::NilMinus => {
                let a = t / 2f64.sqrt();
                (a, if self.kind == Sl2Kind::NilPlus { a } else { -a })
            }
            Sl2Kind::Hyp => {
                let nu = self.params.snap(t * (rho * rho - u[2] * u[2]).max(0.0).sqrt());
                let ratio = if rho > 0.0 { (u[2] / rho).clamp(-EDGE, EDGE) } else { EDGE };
                let mut s = ratio.atanh();
                if s == 0.0 {
                    s = if rng.random::<bool>() { 1e-300 } else { -1e-300 };
                }
                let s = s.signum() * s.abs().max(min_s(nu));
                (nu * s.cosh(), nu * s.sinh())
            }
            Sl2Kind::EllPlus | Sl2Kind::EllMinus => {
                let sign = if self.kind == Sl2Kind::EllPlus { 1.0 } else { -1.0 };
                let aligned = u[2] * sign > 0.0;
                let n_star = if aligned {
                    t * (u[2] * u[2] - rho * rho).max(0.0).sqrt()
                } else {
                    0.0
                };
                let n = self.params.snap(n_star);
                let ratio = if aligned { (rho / u[2].abs()).min(EDGE) } else { EDGE };
                let s = ratio.atanh().max(min_s(n));
                (n * s.sinh(), sign * n * s.cosh())
            }
        };
        Some(DVector::from_vec(vec![r * theta.cos(), r * theta.sin(), z]))
    }
}

/// A parametrised set of coadjoint orbits.
#[derive(Debug, Clone)]
pub enum OrbitFamily {
    Sl2 { branches: Vec<Sl2Branch> },
    /// Finitely many orbits of a general algebra.
    Generic {
        algebra: Arc<MatrixLieAlgebra>,
        base_points: Vec<Covector>,
    },
}

impl OrbitFamily {
    pub fn sl2(branches: Vec<Sl2Branch>) -> Self {
        OrbitFamily::Sl2 { branches }
    }

    pub fn generic(algebra: Arc<MatrixLieAlgebra>, base_points: Vec<Covector>) -> Result<Self> {
        for b in &base_points {
            algebra.check_len(b.dim())?;
        }
        cartan_decomposition(&algebra)?;
        Ok(OrbitFamily::Generic {
            algebra,
            base_points,
        })
    }

    /// Same family with every bounded-parameter branch (a finite union of
    /// orbits) kept and every unbounded one restricted to its first `k` values.
    pub fn truncated(&self, k: usize) -> Self {
        match self {
            OrbitFamily::Sl2 { branches } => OrbitFamily::Sl2 {
                branches: branches
                    .iter()
                    .map(|b| {
                        let params = match &b.params {
                            ParamSet::Integers { from } => {
                                ParamSet::Finite((0..k.max(1)).map(|i| (*from + i as i64) as f64).collect())
                            }
                            ParamSet::Interval { lo, hi: None } => ParamSet::Interval {
                                lo: *lo,
                                hi: Some(lo.max(MIN_PARAM) + k.max(1) as f64),
                            },
                            other => other.clone(),
                        };
                        Sl2Branch { kind: b.kind, params }
                    })
                    .collect(),
            },
            other => other.clone(),
        }
    }
}

fn generic_unbounded(algebra: &MatrixLieAlgebra, base_points: &[Covector]) -> bool {
    let Ok(cd) = cartan_decomposition(algebra) else {
        return false;
    };
    base_points.iter().any(|b| {
        cd.p.iter()
            .any(|p| (algebra.ad_of_coords(p) * b.coords()).norm() > 1e-9 * (1.0 + b.norm()))
    })
}

impl PointFamily for OrbitFamily {
    fn ambient_dim(&self) -> usize {
        match self {
            OrbitFamily::Sl2 { .. } => 3,
            OrbitFamily::Generic { algebra, .. } => algebra.dim(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            OrbitFamily::Sl2 { branches } => branches.is_empty(),
            OrbitFamily::Generic { base_points, .. } => base_points.is_empty(),
        }
    }

    fn is_unbounded(&self) -> bool {
        match self {
            OrbitFamily::Sl2 { branches } => branches.iter().any(|b| b.is_unbounded()),
            OrbitFamily::Generic {
                algebra,
                base_points,
            } => generic_unbounded(algebra, base_points),
        }
    }

    fn exact_cone(&self) -> Option<ConeDescription> {
        match self {
            OrbitFamily::Sl2 { branches } => {
                let parts: Vec<ConeDescription> = branches
                    .iter()
                    .map(|b| ConeDescription::named(b.exact_cone()))
                    .collect();
                cone_union(&parts).ok()
            }
            OrbitFamily::Generic { .. } => None,
        }
    }

    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        match self {
            OrbitFamily::Sl2 { branches } => {
                let live: Vec<&Sl2Branch> = branches.iter().filter(|b| b.is_unbounded()).collect();
                if live.is_empty() {
                    return None;
                }
                let b = live[rng.random_range(0..live.len())];
                b.sample_beyond(radius, rng)
            }
            OrbitFamily::Generic {
                algebra,
                base_points,
            } => {
                if base_points.is_empty() {
                    return None;
                }
                let cd = cartan_decomposition(algebra).ok()?;
                let b = &base_points[rng.random_range(0..base_points.len())];
                let k = random_transport_in(algebra, &cd.k, 3, 2.0, rng);
                let start = k * b.coords();
                if start.norm() >= radius {
                    return Some(start);
                }
                // Push out along a random hyperbolic direction.
                let h = generic_in(&cd.p, algebra.dim(), rng);
                let hn = h.norm();
                if hn == 0.0 {
                    return None;
                }
                let ad = algebra.ad_of_coords(&(h / hn));
                let mut s = 0.5;
                while s < 200.0 {
                    let p = (&ad * s).exp() * &start;
                    if p.norm() >= radius && p.iter().all(|x| x.is_finite()) {
                        return Some(p);
                    }
                    s *= 1.5;
                }
                None
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            OrbitFamily::Sl2 { branches } => {
                let parts: Vec<String> = branches
                    .iter()
                    .map(|b| format!("{:?}{:?}", b.kind, b.params))
                    .collect();
                format!("sl2 orbits [{}]", parts.join(", "))
            }
            OrbitFamily::Generic {
                algebra,
                base_points,
            } => format!("{} orbits through {} base points", algebra.name(), base_points.len()),
        }
    }
}

/// Points on one orbit. Tagged `sl(2,R)` orbits use the quadric
/// parametrisation; other orbits use a random walk of [`WALK_STEPS`] steps.
pub fn orbit_sample(param: &OrbitParam, n: usize, seed: u64) -> Result<Vec<Covector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let p = match param.sl2_tag {
            Some(tag) => sl2_orbit_point(tag, &mut rng),
            None => {
                let t = random_walk_transport(&param.algebra, WALK_STEPS, &mut rng);
                Covector::from_vector(t * param.base_point.coords())
            }
        };
        out.push(p);
    }
    Ok(out)
}

/// Random point of a tagged `sl(2,R)` orbit.
pub fn sl2_orbit_point<R: Rng + ?Sized>(tag: Sl2Tag, rng: &mut R) -> Covector {
    let th = rng.random_range(0.0..2.0 * PI);
    let (r, z) = match tag {
        Sl2Tag::Hyp(nu) => {
            let s: f64 = rng.random_range(-3.0..3.0);
            (nu * s.cosh(), nu * s.sinh())
        }
        Sl2Tag::EllPlus(n) | Sl2Tag::EllMinus(n) => {
            let s: f64 = rng.random_range(0.0..3.0);
            let sign = if matches!(tag, Sl2Tag::EllPlus(_)) { 1.0 } else { -1.0 };
            (n * s.sinh(), sign * n * s.cosh())
        }
        Sl2Tag::NilPlus | Sl2Tag::NilMinus => {
            let a = rng.random_range(-2.0f64..2.0).exp();
            (a, if tag == Sl2Tag::NilPlus { a } else { -a })
        }
        Sl2Tag::Zero => (0.0, 0.0),
    };
    Covector::new(vec![r * th.cos(), r * th.sin(), z])
}

/// Points of the nilpotent cone `Ad(K) n`, with `n` the sum of the positive
/// restricted root spaces of a generic element of `a`.
pub fn nilpotent_cone_sample(l: &MatrixLieAlgebra, n: usize, seed: u64) -> Result<Vec<Covector>> {
    let cd = cartan_decomposition(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = maximal_split_abelian(l, &cd, &mut rng);
    if a.is_empty() {
        return Ok(vec![Covector::zeros(l.dim()); n]);
    }
    let h = generic_in(&a, l.dim(), &mut rng);
    let nil = positive_eigenspaces(l, &h);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x = generic_in(&nil, l.dim(), &mut rng);
        let k = random_transport_in(l, &cd.k, 3, 2.0, &mut rng);
        out.push(Covector::from_vector(k * x));
    }
    Ok(out)
}

/// Pairwise sums `xi + eta` of independent samples of two orbits.
pub fn orbit_sum_sample(p1: &OrbitParam, p2: &OrbitParam, n: usize, seed: u64) -> Result<Vec<Covector>> {
    if p1.algebra.dim() != p2.algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: p1.algebra.dim(),
            found: p2.algebra.dim(),
        });
    }
    let a = orbit_sample(p1, n, seed)?;
    let b = orbit_sample(p2, n, seed.wrapping_add(0x5851_f42d))?;
    Ok(a.iter().zip(&b).map(|(x, y)| x.add(y)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_cone_samples_are_nilpotent() {
        for g in [sl2r(), crate::lie::su21(), crate::lie::so_pq(3, 2).unwrap()] {
            for x in nilpotent_cone_sample(&g, 200, 4).unwrap() {
                let c = classify_element(&g, &x).unwrap();
                assert!(matches!(c.tag, ClassTag::Nilpotent | ClassTag::Zero), "{}: {:?}", g.name(), c.tag);
            }
        }
    }
    use crate::cone::{asymptotic_cone, cone_equal, AcConfig};
    use crate::lie::{classify_element, sl2_region, ClassTag, Region};

    #[test]
    fn hyperboloid_samples_satisfy_quadric() {
        let p = OrbitParam::sl2(Sl2Tag::Hyp(1.0)).unwrap();
        for x in orbit_sample(&p, 500, 1).unwrap() {
            let v = x.coords();
            let q = v[0] * v[0] + v[1] * v[1] - v[2] * v[2];
            assert!((q - 1.0).abs() < 1e-9 * (1.0 + v.norm_squared()));
        }
    }

    #[test]
    fn generic_walk_stays_on_orbit() {
        let g = Arc::new(sl2r());
        let p = OrbitParam::new(g.clone(), Covector::new(vec![0.3, 0.2, 1.0]), None).unwrap();
        for x in orbit_sample(&p, 50, 2).unwrap() {
            let v = x.coords();
            let q = v[0] * v[0] + v[1] * v[1] - v[2] * v[2];
            assert!((q - (0.09 + 0.04 - 1.0)).abs() < 1e-8 * (1.0 + v.norm_squared()));
        }
    }

    #[test]
    fn tag_must_match_base_point() {
        let g = Arc::new(sl2r());
        assert!(OrbitParam::new(g, Covector::new(vec![1.0, 0.0, 0.0]), Some(Sl2Tag::EllPlus(1.0))).is_err());
    }

    #[test]
    fn sampler_points_lie_on_their_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = Sl2Branch::new(Sl2Kind::EllPlus, ParamSet::Integers { from: 1 }).unwrap();
        for _ in 0..1000 {
            let p = b.sample_beyond(100.0, &mut rng).unwrap();
            let q = p[0] * p[0] + p[1] * p[1] - p[2] * p[2];
            let n = (-q).sqrt();
            assert!(p.norm() >= 100.0 * (1.0 - 1e-12));
            assert!((n - n.round()).abs() < 1e-6 * p.norm_squared() && p[2] > 0.0);
        }
    }

    #[test]
    fn single_orbit_cone_exact_and_sampled() {
        let f = OrbitFamily::sl2(vec![Sl2Branch::single(Sl2Tag::Hyp(1.0))]);
        let exact = asymptotic_cone(&f, &AcConfig::default()).unwrap();
        assert_eq!(exact.as_named(), Some(NamedCone::Nil));
        let sampled = asymptotic_cone(&f, &AcConfig::sampled(5000, 1)).unwrap();
        assert!(cone_equal(&sampled, &exact, 0.05).unwrap());
    }

    #[test]
    fn sums_of_positive_elliptic_orbits_stay_elliptic() {
        let a = OrbitParam::sl2(Sl2Tag::EllPlus(1.0)).unwrap();
        let b = OrbitParam::sl2(Sl2Tag::EllPlus(2.0)).unwrap();
        let g = sl2r();
        for x in orbit_sum_sample(&a, &b, 2000, 3).unwrap() {
            assert_eq!(sl2_region(x.coords().as_slice(), 1e-12), Region::EllipticPlus);
            assert_eq!(classify_element(&g, &x).unwrap().tag, ClassTag::Elliptic);
        }
    }

    #[test]
    fn opposite_elliptic_sums_reach_hyperbolic() {
        let a = OrbitParam::sl2(Sl2Tag::EllPlus(1.0)).unwrap();
        let b = OrbitParam::sl2(Sl2Tag::EllMinus(1.0)).unwrap();
        let n = orbit_sum_sample(&a, &b, 2000, 3)
            .unwrap()
            .iter()
            .filter(|x| sl2_region(x.coords().as_slice(), 1e-12) == Region::Hyperbolic)
            .count();
        assert!(n > 100);
    }

    #[test]
    fn generic_family_reaches_large_norms() {
        let g = Arc::new(crate::lie::su21());
        let mut b = vec![0.0; 8];
        b[3] = 1.0;
        let f = OrbitFamily::generic(g, vec![Covector::new(b)]).unwrap();
        assert!(f.is_unbounded());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = f.sample_beyond(300.0, &mut rng).unwrap();
        assert!(p.norm() >= 300.0);
    }
}
