use nalgebra::{DMatrix, DVector};
use rand::{Rng, RngCore};

use super::{cone_union, nnls, random_unit, ConeDescription};

/// A set of points in the dual, accessed through a seeded sampler.
pub trait PointFamily {
    fn ambient_dim(&self) -> usize;

    fn is_empty(&self) -> bool {
        false
    }

    /// Whether the family contains points of arbitrarily large norm.
    fn is_unbounded(&self) -> bool;

    /// Closed-form asymptotic cone, when one is known.
    fn exact_cone(&self) -> Option<ConeDescription> {
        None
    }

    /// A point of the family with norm at least `radius`, if one exists.
    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>>;

    fn describe(&self) -> String;
}

impl<T: PointFamily + ?Sized> PointFamily for &T {
    fn ambient_dim(&self) -> usize {
        (**self).ambient_dim()
    }
    fn is_empty(&self) -> bool {
        (**self).is_empty()
    }
    fn is_unbounded(&self) -> bool {
        (**self).is_unbounded()
    }
    fn exact_cone(&self) -> Option<ConeDescription> {
        (**self).exact_cone()
    }
    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        (**self).sample_beyond(radius, rng)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// Points `t u + w` with `u` a random direction of a polyhedral cone and `w`
/// bounded noise of norm at most `noise`.
#[derive(Debug, Clone)]
pub struct PolyhedralFamily {
    pub generators: Vec<DVector<f64>>,
    pub noise: f64,
    dim: usize,
}

impl PolyhedralFamily {
    pub fn new(dim: usize, generators: Vec<DVector<f64>>, noise: f64) -> Self {
        PolyhedralFamily {
            generators,
            noise: noise.abs(),
            dim,
        }
    }
}

impl PointFamily for PolyhedralFamily {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn is_unbounded(&self) -> bool {
        self.generators.iter().any(|g| g.norm() > 0.0)
    }

    fn exact_cone(&self) -> Option<ConeDescription> {
        Some(ConeDescription::Polyhedral {
            dim: self.dim,
            generators: self.generators.clone(),
        })
    }

    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        if !self.is_unbounded() {
            return None;
        }
        let gens: Vec<&DVector<f64>> = self.generators.iter().filter(|g| g.norm() > 0.0).collect();
        let mut v = DVector::zeros(self.dim);
        let mode = rng.random_range(0..3);
        if mode == 0 {
            // Nearest cone point to a random direction. Positive combinations
            // alone are sparse where generators nearly cancel.
            let cols: Vec<DVector<f64>> = gens.iter().map(|g| *g / g.norm()).collect();
            let a = DMatrix::from_columns(&cols);
            let (x, _) = nnls(&a, &random_unit(self.dim, rng));
            v = a * x;
        } else {
            // Exponent > 1 pushes weight toward single generators, covering faces.
            let p = if mode == 1 { 1.0 } else { 3.0 };
            for g in &gens {
                let w: f64 = rng.random::<f64>().powf(p);
                v.axpy(w, &(*g / g.norm()), 1.0);
            }
        }
        let n = v.norm();
        let u = if n > 1e-9 { v / n } else { gens[0] / gens[0].norm() };
        let t = (radius + self.noise) * (1.0 + rng.random::<f64>());
        let w = random_unit(self.dim, rng) * (self.noise * rng.random::<f64>());
        Some(u * t + w)
    }

    fn describe(&self) -> String {
        format!("polyhedral family with {} generators", self.generators.len())
    }
}

/// The closed ball of the given radius.
#[derive(Debug, Clone)]
pub struct BoundedBall {
    pub dim: usize,
    pub radius: f64,
}

impl PointFamily for BoundedBall {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn is_unbounded(&self) -> bool {
        false
    }

    fn exact_cone(&self) -> Option<ConeDescription> {
        Some(ConeDescription::zero(self.dim))
    }

    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        if radius > self.radius {
            return None;
        }
        let r = radius + (self.radius - radius) * rng.random::<f64>();
        Some(random_unit(self.dim, rng) * r)
    }

    fn describe(&self) -> String {
        format!("ball of radius {}", self.radius)
    }
}

/// Union of families; samples come from a uniformly chosen member that has
/// points beyond the requested radius.
pub struct UnionFamily<'a> {
    members: Vec<Box<dyn PointFamily + 'a>>,
}

impl<'a> UnionFamily<'a> {
    pub fn new(members: Vec<Box<dyn PointFamily + 'a>>) -> Self {
        UnionFamily { members }
    }

    pub fn members(&self) -> &[Box<dyn PointFamily + 'a>] {
        &self.members
    }
}

impl PointFamily for UnionFamily<'_> {
    fn ambient_dim(&self) -> usize {
        self.members.first().map_or(0, |m| m.ambient_dim())
    }

    fn is_empty(&self) -> bool {
        self.members.iter().all(|m| m.is_empty())
    }

    fn is_unbounded(&self) -> bool {
        self.members.iter().any(|m| m.is_unbounded())
    }

    fn exact_cone(&self) -> Option<ConeDescription> {
        let parts: Option<Vec<ConeDescription>> =
            self.members.iter().map(|m| m.exact_cone()).collect();
        cone_union(&parts?).ok()
    }

    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        let live: Vec<&Box<dyn PointFamily + '_>> =
            self.members.iter().filter(|m| m.is_unbounded()).collect();
        if live.is_empty() {
            let i = rng.random_range(0..self.members.len().max(1));
            return self.members.get(i)?.sample_beyond(radius, rng);
        }
        let i = rng.random_range(0..live.len());
        live[i].sample_beyond(radius, rng)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.members.iter().map(|m| m.describe()).collect();
        format!("union[{}]", parts.join("; "))
    }
}

/// `t F` for a fixed `t > 0`.
pub struct ScaledFamily<F> {
    pub inner: F,
    pub factor: f64,
}

impl<F: PointFamily> PointFamily for ScaledFamily<F> {
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    fn is_unbounded(&self) -> bool {
        self.inner.is_unbounded()
    }

    fn exact_cone(&self) -> Option<ConeDescription> {
        self.inner.exact_cone()
    }

    fn sample_beyond(&self, radius: f64, rng: &mut dyn RngCore) -> Option<DVector<f64>> {
        self.inner
            .sample_beyond(radius / self.factor, rng)
            .map(|p| p * self.factor)
    }

    fn describe(&self) -> String {
        format!("{} x ({})", self.factor, self.inner.describe())
    }
}
