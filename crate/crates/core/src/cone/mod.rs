//! Closed cones in the dual of a Lie algebra: named quadric cones of
//! `sl(2,R)`, polyhedral cones, sampled direction sets and their unions.

mod asymptotic;
mod dual;
mod family;
mod hausdorff;
mod index;
mod nnls;

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};

pub use asymptotic::{
    ac_union_check, asymptotic_cone, asymptotic_cone_report, AcConfig, AcReport, UnionCheckReport,
    DEFAULT_RADII, DEFAULT_RESOLUTION,
};
pub use dual::{dual_cone, polyhedral_contains, polyhedral_equal, MAX_DUAL_DIM};
pub use family::{BoundedBall, PointFamily, PolyhedralFamily, ScaledFamily, UnionFamily};
pub use hausdorff::{cone_equal, hausdorff, HausdorffReport};
pub use index::DirectionIndex;
pub use nnls::nnls;

/// Named cones of `sl(2,R)` in the `(x, y, z)` chart, together with `Full`
/// and `Zero` which exist in every dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedCone {
    NilPlus,
    NilMinus,
    Nil,
    HypClosure,
    EllPlusClosure,
    EllMinusClosure,
    Full,
    Zero,
}

// Strata of the sl2 dual: origin, the two nilpotent nappes and the three open
// regular regions.
const S_ZERO: u8 = 1;
const S_NP: u8 = 2;
const S_NM: u8 = 4;
const S_HYP: u8 = 8;
const S_EP: u8 = 16;
const S_EM: u8 = 32;

impl NamedCone {
    pub const ALL: [NamedCone; 8] = [
        NamedCone::NilPlus,
        NamedCone::NilMinus,
        NamedCone::Nil,
        NamedCone::HypClosure,
        NamedCone::EllPlusClosure,
        NamedCone::EllMinusClosure,
        NamedCone::Full,
        NamedCone::Zero,
    ];

    fn strata(self) -> u8 {
        match self {
            NamedCone::NilPlus => S_ZERO | S_NP,
            NamedCone::NilMinus => S_ZERO | S_NM,
            NamedCone::Nil => S_ZERO | S_NP | S_NM,
            NamedCone::HypClosure => S_ZERO | S_NP | S_NM | S_HYP,
            NamedCone::EllPlusClosure => S_ZERO | S_NP | S_EP,
            NamedCone::EllMinusClosure => S_ZERO | S_NM | S_EM,
            NamedCone::Full => 63,
            NamedCone::Zero => S_ZERO,
        }
    }

    fn from_strata(mask: u8) -> Option<NamedCone> {
        NamedCone::ALL.into_iter().find(|c| c.strata() == mask)
    }

    /// Whether the cone is defined in every dimension rather than only in
    /// the three-dimensional chart.
    pub fn is_dimension_free(self) -> bool {
        matches!(self, NamedCone::Full | NamedCone::Zero)
    }

    /// Ranges of the polar angle from the `+z` axis making up the cone.
    fn polar_ranges(self) -> Vec<(f64, f64)> {
        let (a, b) = (FRAC_PI_4, 3.0 * FRAC_PI_4);
        match self {
            NamedCone::NilPlus => vec![(a, a)],
            NamedCone::NilMinus => vec![(b, b)],
            NamedCone::Nil => vec![(a, a), (b, b)],
            NamedCone::HypClosure => vec![(a, b)],
            NamedCone::EllPlusClosure => vec![(0.0, a)],
            NamedCone::EllMinusClosure => vec![(b, PI)],
            NamedCone::Full => vec![(0.0, PI)],
            NamedCone::Zero => vec![],
        }
    }

    /// Angle from a unit vector of the chart to the cone.
    fn angular_distance3(self, u: &[f64]) -> f64 {
        let phi = u[2].clamp(-1.0, 1.0).acos();
        self.polar_ranges()
            .iter()
            .map(|&(lo, hi)| (lo - phi).max(phi - hi).max(0.0))
            .fold(PI, f64::min)
    }

    /// Defining relations in the `(x, y, z)` chart.
    pub fn inequalities(self) -> Vec<&'static str> {
        match self {
            NamedCone::NilPlus => vec!["x^2 + y^2 - z^2 = 0", "z >= 0"],
            NamedCone::NilMinus => vec!["x^2 + y^2 - z^2 = 0", "z <= 0"],
            NamedCone::Nil => vec!["x^2 + y^2 - z^2 = 0"],
            NamedCone::HypClosure => vec!["x^2 + y^2 - z^2 >= 0"],
            NamedCone::EllPlusClosure => vec!["x^2 + y^2 - z^2 <= 0", "z >= 0"],
            NamedCone::EllMinusClosure => vec!["x^2 + y^2 - z^2 <= 0", "z <= 0"],
            NamedCone::Full => vec![],
            NamedCone::Zero => vec!["x = 0"],
        }
    }
}

impl fmt::Display for NamedCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NamedCone::NilPlus => "Nplus",
            NamedCone::NilMinus => "Nminus",
            NamedCone::Nil => "N",
            NamedCone::HypClosure => "HypClosure",
            NamedCone::EllPlusClosure => "EllPlusClosure",
            NamedCone::EllMinusClosure => "EllMinusClosure",
            NamedCone::Full => "Full",
            NamedCone::Zero => "Zero",
        };
        f.write_str(s)
    }
}

impl FromStr for NamedCone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedCone::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown cone name '{s}'")))
    }
}

/// A closed cone, always containing the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum ConeDescription {
    Exact { cone: NamedCone, dim: usize },
    Polyhedral { dim: usize, generators: Vec<DVector<f64>> },
    /// Unit directions; the cone is the set of rays within `tol` of them.
    Sampled { dim: usize, directions: Vec<DVector<f64>>, tol: f64 },
    Union(Vec<ConeDescription>),
}

impl ConeDescription {
    pub fn named(cone: NamedCone) -> Self {
        ConeDescription::Exact { cone, dim: 3 }
    }

    pub fn zero(dim: usize) -> Self {
        ConeDescription::Exact {
            cone: NamedCone::Zero,
            dim,
        }
    }

    pub fn full(dim: usize) -> Self {
        ConeDescription::Exact {
            cone: NamedCone::Full,
            dim,
        }
    }

    /// Checks that a named cone is used in a dimension where it is defined.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConeDescription::Exact { cone, dim } if !cone.is_dimension_free() && *dim != 3 => {
                Err(Error::UnsupportedCone(format!("{cone} in dimension {dim}")))
            }
            ConeDescription::Polyhedral { dim, generators } => {
                if generators.iter().any(|g| g.len() != *dim) {
                    return Err(Error::DimensionMismatch {
                        expected: *dim,
                        found: generators.iter().find(|g| g.len() != *dim).unwrap().len(),
                    });
                }
                Ok(())
            }
            ConeDescription::Sampled { dim, directions, .. } => {
                for d in directions {
                    if d.len() != *dim {
                        return Err(Error::DimensionMismatch {
                            expected: *dim,
                            found: d.len(),
                        });
                    }
                    if (d.norm() - 1.0).abs() > 1e-12 {
                        return Err(Error::Numerical("sampled direction is not a unit vector".into()));
                    }
                }
                Ok(())
            }
            ConeDescription::Union(parts) => {
                let d = self.dim();
                for p in parts {
                    p.validate()?;
                    if p.dim() != d {
                        return Err(Error::DimensionMismatch {
                            expected: d,
                            found: p.dim(),
                        });
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConeDescription::Exact { dim, .. }
            | ConeDescription::Polyhedral { dim, .. }
            | ConeDescription::Sampled { dim, .. } => *dim,
            ConeDescription::Union(parts) => parts.first().map_or(0, |p| p.dim()),
        }
    }

    /// The named cone, if this is an exact description.
    pub fn as_named(&self) -> Option<NamedCone> {
        match self {
            ConeDescription::Exact { cone, .. } => Some(*cone),
            _ => None,
        }
    }

    /// True when the cone is known to be `{0}`.
    pub fn is_zero(&self) -> bool {
        match self {
            ConeDescription::Exact { cone, .. } => *cone == NamedCone::Zero,
            ConeDescription::Polyhedral { generators, .. } => {
                generators.iter().all(|g| g.norm() == 0.0)
            }
            ConeDescription::Sampled { directions, .. } => directions.is_empty(),
            ConeDescription::Union(parts) => parts.iter().all(|p| p.is_zero()),
        }
    }

    /// Angle from the ray through `v` to the cone; `pi` for the zero cone.
    pub fn angular_distance(&self, v: &DVector<f64>) -> f64 {
        ConeOracle::new(self).distance(v.as_slice())
    }

    /// Membership with angular tolerance; the origin is always a member.
    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        if v.norm() < 1e-12 {
            return true;
        }
        self.angular_distance(v) <= tol
    }

    /// Unit directions covering the cone at roughly the given angular
    /// resolution (random for polyhedral cones and for `Full` outside the
    /// chart, deterministic given `rng`).
    pub fn sample_directions<R: Rng>(&self, resolution: f64, rng: &mut R) -> Vec<DVector<f64>> {
        match self {
            ConeDescription::Exact { cone, dim } => match cone {
                NamedCone::Zero => Vec::new(),
                NamedCone::Full if *dim != 3 => {
                    let n = full_sample_count(*dim, resolution);
                    (0..n).map(|_| random_unit(*dim, rng)).collect()
                }
                _ => polar_grid(cone.polar_ranges(), resolution),
            },
            ConeDescription::Polyhedral { dim, generators } => {
                sample_polyhedral(*dim, generators, resolution, rng)
            }
            ConeDescription::Sampled { directions, .. } => directions.clone(),
            ConeDescription::Union(parts) => parts
                .iter()
                .flat_map(|p| p.sample_directions(resolution, rng))
                .collect(),
        }
    }

    /// Structured record for reports.
    pub fn to_record(&self, algebra: &str) -> serde_json::Value {
        match self {
            ConeDescription::Exact { cone, dim } => json!({
                "kind": "exact",
                "algebra": algebra,
                "dim": dim,
                "name": cone.to_string(),
                "inequalities": cone.inequalities(),
            }),
            ConeDescription::Polyhedral { dim, generators } => json!({
                "kind": "polyhedral",
                "algebra": algebra,
                "dim": dim,
                "generators": generators.iter().map(|g| g.iter().cloned().collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            ConeDescription::Sampled { dim, directions, tol } => json!({
                "kind": "sampled",
                "algebra": algebra,
                "dim": dim,
                "tol": tol,
                "count": directions.len(),
            }),
            ConeDescription::Union(parts) => json!({
                "kind": "union",
                "algebra": algebra,
                "parts": parts.iter().map(|p| p.to_record(algebra)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Union of cones, merging named `sl(2,R)` cones when the result is named.
pub fn cone_union(parts: &[ConeDescription]) -> Result<ConeDescription> {
    let Some(first) = parts.first() else {
        return Err(Error::EmptyFamily);
    };
    let dim = first.dim();
    let mut flat = Vec::new();
    fn flatten(c: &ConeDescription, out: &mut Vec<ConeDescription>) {
        match c {
            ConeDescription::Union(ps) => ps.iter().for_each(|p| flatten(p, out)),
            other => out.push(other.clone()),
        }
    }
    for p in parts {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        flatten(p, &mut flat);
    }
    if flat.iter().any(|c| c.as_named() == Some(NamedCone::Full)) {
        return Ok(ConeDescription::full(dim));
    }
    let mut mask = 0u8;
    let mut rest = Vec::new();
    for c in flat {
        match c {
            ConeDescription::Exact { cone, .. } => mask |= cone.strata(),
            other if other.is_zero() => mask |= S_ZERO,
            other => rest.push(other),
        }
    }
    let named: Vec<ConeDescription> = if mask == 0 || (mask == S_ZERO && !rest.is_empty()) {
        Vec::new()
    } else if let Some(c) = NamedCone::from_strata(mask) {
        vec![ConeDescription::Exact { cone: c, dim }]
    } else {
        // Cover the strata with as few named cones as possible, largest first.
        let mut left = mask;
        let mut out = Vec::new();
        let mut order = NamedCone::ALL.to_vec();
        order.sort_by_key(|c| std::cmp::Reverse(c.strata().count_ones()));
        for c in order {
            let s = c.strata();
            if s & !mask == 0 && s & left & !S_ZERO != 0 {
                out.push(ConeDescription::Exact { cone: c, dim });
                left &= !s;
            }
        }
        out
    };
    let mut all = named;
    all.extend(rest);
    Ok(match all.len() {
        0 => ConeDescription::zero(dim),
        1 => all.pop().unwrap(),
        _ => ConeDescription::Union(all),
    })
}

/// `{eta : |xi - t eta| < delta for some t > 0}` membership for unit `xi`.
pub fn conic_neighborhood_contains(xi: &DVector<f64>, delta: f64, eta: &DVector<f64>) -> bool {
    let en = eta.norm();
    if en == 0.0 {
        return xi.norm() < delta;
    }
    let proj = xi.dot(eta) / en;
    let dist = if proj <= 0.0 {
        // Infimum approached as t -> 0.
        xi.norm()
    } else {
        (xi.norm_squared() - proj * proj).max(0.0).sqrt()
    };
    dist < delta
}

/// Precomputed distance oracle for repeated angular-distance queries.
pub(crate) enum ConeOracle<'a> {
    Named(NamedCone, usize),
    Polyhedral(&'a [DVector<f64>]),
    Sampled(DirectionIndex),
    Union(Vec<ConeOracle<'a>>),
}

impl<'a> ConeOracle<'a> {
    pub fn new(c: &'a ConeDescription) -> Self {
        match c {
            ConeDescription::Exact { cone, dim } => ConeOracle::Named(*cone, *dim),
            ConeDescription::Polyhedral { generators, .. } => ConeOracle::Polyhedral(generators),
            ConeDescription::Sampled { dim, directions, tol } => {
                let mut idx = DirectionIndex::new(*dim, tol.max(0.01));
                for d in directions {
                    idx.insert(d.as_slice());
                }
                ConeOracle::Sampled(idx)
            }
            ConeDescription::Union(parts) => {
                ConeOracle::Union(parts.iter().map(ConeOracle::new).collect())
            }
        }
    }

    /// Angle between the ray through `v` and the cone.
    pub fn distance(&self, v: &[f64]) -> f64 {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n == 0.0 {
            return 0.0;
        }
        let u: Vec<f64> = v.iter().map(|x| x / n).collect();
        self.distance_unit(&u)
    }

    fn distance_unit(&self, u: &[f64]) -> f64 {
        match self {
            ConeOracle::Named(NamedCone::Full, _) => 0.0,
            ConeOracle::Named(NamedCone::Zero, _) => PI,
            ConeOracle::Named(c, 3) => c.angular_distance3(u),
            ConeOracle::Named(_, _) => PI,
            ConeOracle::Polyhedral(gens) => polyhedral_angle(gens, u),
            ConeOracle::Sampled(idx) => idx.distance(u),
            ConeOracle::Union(parts) => parts
                .iter()
                .map(|p| p.distance_unit(u))
                .fold(PI, f64::min),
        }
    }
}

fn polyhedral_angle(gens: &[DVector<f64>], u: &[f64]) -> f64 {
    let nonzero: Vec<&DVector<f64>> = gens.iter().filter(|g| g.norm() > 0.0).collect();
    if nonzero.is_empty() {
        return PI;
    }
    let d = u.len();
    let mut a = nalgebra::DMatrix::zeros(d, nonzero.len());
    for (j, g) in nonzero.iter().enumerate() {
        a.set_column(j, &(*g / g.norm()));
    }
    let b = DVector::from_column_slice(u);
    let (x, _) = nnls(&a, &b);
    let p = &a * x;
    let pn = p.norm();
    if pn > 1e-12 {
        let c = b.dot(&p) / pn;
        let s = (&b - &p * (c / pn)).norm();
        s.atan2(c)
    } else {
        // u lies in the polar cone; report the angle to the nearest generator.
        nonzero
            .iter()
            .map(|g| (b.dot(g) / g.norm()).clamp(-1.0, 1.0).acos())
            .fold(PI, f64::min)
            .max(std::f64::consts::FRAC_PI_2)
    }
}

pub(crate) fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| StandardNormal.sample(rng));
        let n: f64 = v.norm();
        if n > 1e-9 {
            return v / n;
        }
    }
}

fn full_sample_count(dim: usize, resolution: f64) -> usize {
    let per_axis = (2.0 / resolution.max(0.02)).ceil();
    (per_axis.powi(dim.saturating_sub(1) as i32) as usize).clamp(1000, 200_000)
}

/// Deterministic grid on the sphere in `R^3` covering the given polar ranges.
fn polar_grid(ranges: Vec<(f64, f64)>, res: f64) -> Vec<DVector<f64>> {
    let res = res.max(1e-3);
    let mut out = Vec::new();
    for (lo, hi) in ranges {
        let k = ((hi - lo) / res).ceil().max(0.0) as usize;
        for i in 0..=k {
            let phi = if k == 0 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / k as f64
            };
            let s = phi.sin();
            let m = ((2.0 * PI * s) / res).ceil().max(1.0) as usize;
            for j in 0..m {
                let th = 2.0 * PI * j as f64 / m as f64;
                out.push(DVector::from_vec(vec![s * th.cos(), s * th.sin(), phi.cos()]));
            }
        }
    }
    out
}

fn sample_polyhedral<R: Rng>(
    dim: usize,
    generators: &[DVector<f64>],
    resolution: f64,
    rng: &mut R,
) -> Vec<DVector<f64>> {
    let gens: Vec<DVector<f64>> = generators
        .iter()
        .filter(|g| g.norm() > 0.0)
        .map(|g| g / g.norm())
        .collect();
    if gens.is_empty() {
        return Vec::new();
    }
    let mut out = gens.clone();
    let count = full_sample_count(dim.min(4), resolution).min(40_000);
    let shapes = [0.2, 0.5, 1.0];
    for k in 0..count {
        let alpha = shapes[k % shapes.len()];
        let gamma = Gamma::new(alpha, 1.0).expect("positive shape");
        let mut v = DVector::zeros(dim);
        for g in &gens {
            let w: f64 = gamma.sample(rng);
            v.axpy(w, g, 1.0);
        }
        let n = v.norm();
        if n > 1e-9 {
            out.push(v / n);
        }
    }
    out
}
