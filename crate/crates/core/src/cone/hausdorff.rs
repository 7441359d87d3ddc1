use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ConeDescription, ConeOracle};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HausdorffReport {
    /// Largest angle from a direction of the first cone to the second.
    pub forward: f64,
    /// Largest angle from a direction of the second cone to the first.
    pub backward: f64,
    pub distance: f64,
}

fn one_way(from: &ConeDescription, to: &ConeDescription, resolution: f64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = from.sample_directions(resolution, &mut rng);
    let oracle = ConeOracle::new(to);
    dirs.iter()
        .map(|d| oracle.distance(d.as_slice()))
        .fold(0.0, f64::max)
}

/// Symmetric angular Hausdorff distance between the unit-sphere traces of
/// two cones. Exact cones are discretised at `resolution`; the zero cone has
/// an empty trace, at distance `pi` from any nonempty one.
pub fn hausdorff(
    a: &ConeDescription,
    b: &ConeDescription,
    resolution: f64,
    seed: u64,
) -> Result<HausdorffReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let forward = one_way(a, b, resolution, seed);
    let backward = one_way(b, a, resolution, seed ^ 0x9e37_79b9);
    Ok(HausdorffReport {
        forward,
        backward,
        distance: forward.max(backward),
    })
}

/// Cones agree when their Hausdorff distance is at most `angular_tol`.
pub fn cone_equal(a: &ConeDescription, b: &ConeDescription, angular_tol: f64) -> Result<bool> {
    Ok(hausdorff(a, b, angular_tol / 4.0, 0)?.distance <= angular_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::NamedCone;

    #[test]
    fn self_distance_is_zero() {
        for c in NamedCone::ALL {
            let c = ConeDescription::named(c);
            assert!(cone_equal(&c, &c, 1e-9).unwrap());
        }
    }

    #[test]
    fn opposite_nappes_differ() {
        let p = ConeDescription::named(NamedCone::NilPlus);
        let m = ConeDescription::named(NamedCone::NilMinus);
        assert!(!cone_equal(&p, &m, 0.1).unwrap());
        let h = hausdorff(&p, &m, 0.01, 0).unwrap();
        assert!((h.distance - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn zero_against_nonzero() {
        let z = ConeDescription::zero(3);
        let p = ConeDescription::named(NamedCone::NilPlus);
        assert!(cone_equal(&z, &z, 0.0).unwrap());
        assert!(!cone_equal(&z, &p, 1.0).unwrap());
    }

    #[test]
    fn nested_cones_one_sided() {
        let small = ConeDescription::named(NamedCone::NilPlus);
        let big = ConeDescription::named(NamedCone::EllPlusClosure);
        let h = hausdorff(&small, &big, 0.01, 0).unwrap();
        assert!(h.forward < 1e-12);
        assert!((h.backward - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
}
