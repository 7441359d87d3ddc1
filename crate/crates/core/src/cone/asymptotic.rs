use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::family::{PointFamily, UnionFamily};
use super::hausdorff::{hausdorff, HausdorffReport};
use super::index::DirectionIndex;
use super::{cone_union, ConeDescription};
use crate::error::{Error, Result};

pub const DEFAULT_RADII: [f64; 4] = [10.0, 30.0, 100.0, 300.0];
/// Angular resolution used to deduplicate sampled directions.
pub const DEFAULT_RESOLUTION: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AcConfig {
    pub radii: Vec<f64>,
    pub samples_per_radius: usize,
    pub seed: u64,
    pub resolution: f64,
    /// Use a family's closed-form cone when it has one.
    pub use_exact: bool,
}

impl Default for AcConfig {
    fn default() -> Self {
        AcConfig {
            radii: DEFAULT_RADII.to_vec(),
            samples_per_radius: 20_000,
            seed: 0,
            resolution: DEFAULT_RESOLUTION,
            use_exact: true,
        }
    }
}

impl AcConfig {
    pub fn sampled(samples_per_radius: usize, seed: u64) -> Self {
        AcConfig {
            samples_per_radius,
            seed,
            use_exact: false,
            ..AcConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.radii.len() < 3 {
            return Err(Error::InsufficientRadii(format!(
                "need at least 3 radii, got {}",
                self.radii.len()
            )));
        }
        if self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::InsufficientRadii("radii must be positive and finite".into()));
        }
        if self.radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InsufficientRadii("radii must be strictly increasing".into()));
        }
        if !(self.resolution > 0.0) {
            return Err(Error::InsufficientRadii("resolution must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiusStat {
    pub radius: f64,
    pub samples: usize,
    pub distinct_directions: usize,
}

#[derive(Debug, Clone)]
pub struct AcReport {
    pub cone: ConeDescription,
    pub exact: bool,
    pub per_radius: Vec<RadiusStat>,
    /// Hausdorff distance between the direction sets of the last two radii.
    pub last_step_drift: Option<f64>,
}

fn directions_beyond(
    family: &dyn PointFamily,
    radius: f64,
    n: usize,
    resolution: f64,
    rng: &mut ChaCha8Rng,
) -> (usize, Vec<DVector<f64>>) {
    let dim = family.ambient_dim();
    let mut idx = DirectionIndex::new(dim, resolution);
    let mut hits = 0;
    let mut out = Vec::new();
    for _ in 0..n {
        let Some(p) = family.sample_beyond(radius, rng) else {
            continue;
        };
        let norm = p.norm();
        if !(norm >= radius * (1.0 - 1e-12)) || !norm.is_finite() {
            continue;
        }
        hits += 1;
        let u = p / norm;
        if idx.insert_if_far(u.as_slice(), resolution) {
            out.push(u);
        }
    }
    (hits, out)
}

/// Asymptotic cone with per-radius diagnostics.
pub fn asymptotic_cone_report(family: &dyn PointFamily, config: &AcConfig) -> Result<AcReport> {
    config.validate()?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let dim = family.ambient_dim();
    if config.use_exact {
        if let Some(c) = family.exact_cone() {
            return Ok(AcReport {
                cone: c,
                exact: true,
                per_radius: Vec::new(),
                last_step_drift: None,
            });
        }
    }
    if !family.is_unbounded() {
        return Ok(AcReport {
            cone: ConeDescription::zero(dim),
            exact: false,
            per_radius: Vec::new(),
            last_step_drift: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut per_radius = Vec::new();
    let mut sets = Vec::new();
    for &r in &config.radii {
        let (hits, dirs) =
            directions_beyond(family, r, config.samples_per_radius, config.resolution, &mut rng);
        per_radius.push(RadiusStat {
            radius: r,
            samples: hits,
            distinct_directions: dirs.len(),
        });
        sets.push(dirs);
    }
    let to_cone = |dirs: Vec<DVector<f64>>| {
        if dirs.is_empty() {
            ConeDescription::zero(dim)
        } else {
            ConeDescription::Sampled {
                dim,
                directions: dirs,
                tol: config.resolution,
            }
        }
    };
    let last = to_cone(sets.pop().unwrap_or_default());
    let prev = to_cone(sets.pop().unwrap_or_default());
    let drift = hausdorff(&prev, &last, config.resolution, config.seed)
        .ok()
        .map(|h| h.distance);
    Ok(AcReport {
        cone: last,
        exact: false,
        per_radius,
        last_step_drift: drift,
    })
}

/// Asymptotic cone of a point family: the closed-form cone when available
/// and enabled, otherwise unit directions of samples beyond the largest radius.
pub fn asymptotic_cone(family: &dyn PointFamily, config: &AcConfig) -> Result<ConeDescription> {
    Ok(asymptotic_cone_report(family, config)?.cone)
}

#[derive(Debug, Clone)]
pub struct UnionCheckReport {
    pub individual: Vec<ConeDescription>,
    pub union_of_cones: ConeDescription,
    pub cone_of_union: ConeDescription,
    pub defect: HausdorffReport,
    pub passed: bool,
}

/// Compares `AC(F_1 u ... u F_k)` with `AC(F_1) u ... u AC(F_k)`.
///
/// The union is sampled with `k` times the per-radius budget so every member
/// receives the same expected number of samples as in its own run.
pub fn ac_union_check(
    families: &[&dyn PointFamily],
    config: &AcConfig,
    angular_tol: f64,
) -> Result<UnionCheckReport> {
    if families.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let dim = families[0].ambient_dim();
    if let Some(f) = families.iter().find(|f| f.ambient_dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: f.ambient_dim(),
        });
    }
    let mut individual = Vec::new();
    for (i, f) in families.iter().enumerate() {
        let cfg = AcConfig {
            seed: config.seed.wrapping_add(1 + i as u64),
            ..config.clone()
        };
        individual.push(asymptotic_cone(*f, &cfg)?);
    }
    let union_of_cones = cone_union(&individual)?;
    let members: Vec<Box<dyn PointFamily + '_>> =
        families.iter().map(|f| Box::new(*f) as Box<dyn PointFamily>).collect();
    let union = UnionFamily::new(members);
    let live = families.iter().filter(|f| f.is_unbounded()).count().max(1);
    let cfg = AcConfig {
        samples_per_radius: config.samples_per_radius * live,
        ..config.clone()
    };
    let cone_of_union = asymptotic_cone(&union, &cfg)?;
    let defect = hausdorff(&cone_of_union, &union_of_cones, angular_tol / 4.0, config.seed)?;
    Ok(UnionCheckReport {
        passed: defect.distance <= angular_tol,
        individual,
        union_of_cones,
        cone_of_union,
        defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{cone_equal, BoundedBall, PolyhedralFamily};

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    #[test]
    fn radii_validation() {
        let f = BoundedBall { dim: 3, radius: 5.0 };
        let mut c = AcConfig::default();
        c.radii = vec![10.0, 30.0];
        assert!(matches!(asymptotic_cone(&f, &c), Err(Error::InsufficientRadii(_))));
        c.radii = vec![10.0, 30.0, 30.0];
        assert!(matches!(asymptotic_cone(&f, &c), Err(Error::InsufficientRadii(_))));
    }

    #[test]
    fn bounded_ball_has_zero_cone() {
        let f = BoundedBall { dim: 3, radius: 5.0 };
        let c = asymptotic_cone(&f, &AcConfig::sampled(1000, 1)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn sampled_polyhedral_family_recovers_its_cone() {
        let f = PolyhedralFamily::new(3, vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], 2.0);
        let c = asymptotic_cone(&f, &AcConfig::sampled(20_000, 3)).unwrap();
        let h = crate::cone::hausdorff(&c, &f.exact_cone().unwrap(), 0.0125, 0).unwrap();
        assert!(cone_equal(&c, &f.exact_cone().unwrap(), 0.05).unwrap(), "{h:?}");
    }

    #[test]
    fn union_with_bounded_member() {
        let a = PolyhedralFamily::new(3, vec![v(&[1.0, 0.0, 1.0])], 0.5);
        let b = BoundedBall { dim: 3, radius: 5.0 };
        let rep = ac_union_check(&[&a, &b], &AcConfig::sampled(2000, 4), 0.05).unwrap();
        assert!(rep.passed, "{:?}", rep.defect);
    }
}
