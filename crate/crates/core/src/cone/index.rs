//! Nearest-neighbour lookup for unit vectors by angular distance.

use std::collections::HashMap;

/// Cell grid is used up to this ambient dimension; beyond it lookups are brute force.
const GRID_MAX_DIM: usize = 4;

pub(crate) fn chord_to_angle(c: f64) -> f64 {
    2.0 * (c / 2.0).min(1.0).asin()
}

fn angle_to_chord(a: f64) -> f64 {
    2.0 * (a.min(std::f64::consts::PI) / 2.0).sin()
}

#[derive(Debug, Clone)]
pub struct DirectionIndex {
    dim: usize,
    cell: f64,
    data: Vec<f64>,
    grid: HashMap<[i32; GRID_MAX_DIM], Vec<u32>>,
}

impl DirectionIndex {
    /// `resolution` is the typical query angle; it sets the grid cell size.
    pub fn new(dim: usize, resolution: f64) -> Self {
        DirectionIndex {
            dim,
            cell: resolution.clamp(1e-3, 1.0),
            data: Vec::new(),
            grid: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.data.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn use_grid(&self) -> bool {
        self.dim <= GRID_MAX_DIM
    }

    fn key(&self, u: &[f64]) -> [i32; GRID_MAX_DIM] {
        let mut k = [0i32; GRID_MAX_DIM];
        for (i, v) in u.iter().enumerate() {
            k[i] = (v / self.cell).floor() as i32;
        }
        k
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn insert(&mut self, u: &[f64]) {
        debug_assert_eq!(u.len(), self.dim);
        let id = self.len() as u32;
        self.data.extend_from_slice(u);
        if self.use_grid() {
            let k = self.key(u);
            self.grid.entry(k).or_default().push(id);
        }
    }

    /// Inserts `u` unless a stored direction lies within `angle`.
    pub fn insert_if_far(&mut self, u: &[f64], angle: f64) -> bool {
        if self.within(u, angle) {
            return false;
        }
        self.insert(u);
        true
    }

    fn chord(&self, i: usize, u: &[f64]) -> f64 {
        self.point(i)
            .iter()
            .zip(u)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    fn brute(&self, u: &[f64]) -> Option<(usize, f64)> {
        (0..self.len())
            .map(|i| (i, self.chord(i, u)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Nearest stored direction and its chord distance, searching no farther
    /// than chord `limit` when a grid is available.
    fn nearest_chord(&self, u: &[f64], limit: f64) -> Option<(usize, f64)> {
        if self.is_empty() {
            return None;
        }
        if !self.use_grid() {
            return self.brute(u).filter(|b| b.1 <= limit);
        }
        let center = self.key(u);
        let d = self.dim;
        let mut best: Option<(usize, f64)> = None;
        let mut visited = 0usize;
        let max_ring = (limit / self.cell).ceil() as i32 + 1;
        for ring in 0..=max_ring {
            if let Some((_, c)) = best {
                if (ring as f64 - 1.0) * self.cell > c {
                    break;
                }
            }
            let side = (2 * ring + 1) as usize;
            let cells = side.pow(d as u32);
            visited += cells;
            if visited > 4 * self.len() + 64 {
                return self.brute(u).filter(|b| b.1 <= limit);
            }
            let mut offs = vec![-ring; d];
            loop {
                if offs.iter().any(|o| o.abs() == ring) {
                    let mut k = center;
                    for i in 0..d {
                        k[i] += offs[i];
                    }
                    if let Some(ids) = self.grid.get(&k) {
                        for &id in ids {
                            let c = self.chord(id as usize, u);
                            if best.is_none_or(|(_, b)| c < b) {
                                best = Some((id as usize, c));
                            }
                        }
                    }
                }
                let mut i = 0;
                loop {
                    if i == d {
                        break;
                    }
                    offs[i] += 1;
                    if offs[i] > ring {
                        offs[i] = -ring;
                        i += 1;
                    } else {
                        break;
                    }
                }
                if i == d {
                    break;
                }
            }
        }
        match best {
            Some(b) if b.1 <= limit => Some(b),
            _ => None,
        }
    }

    /// Nearest stored direction and its angle.
    pub fn nearest(&self, u: &[f64]) -> Option<(usize, f64)> {
        self.nearest_chord(u, 2.0)
            .or_else(|| self.brute(u))
            .map(|(i, c)| (i, chord_to_angle(c)))
    }

    pub fn within(&self, u: &[f64], angle: f64) -> bool {
        let lim = angle_to_chord(angle);
        if self.use_grid() {
            self.nearest_chord(u, lim).is_some()
        } else {
            (0..self.len()).any(|i| self.chord(i, u) <= lim)
        }
    }

    /// Angle from `u` to the nearest stored direction (`pi` when empty).
    pub fn distance(&self, u: &[f64]) -> f64 {
        self.nearest(u).map_or(std::f64::consts::PI, |(_, a)| a)
    }

    pub fn directions(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim.max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.1 && n <= 1.0 {
                return v.iter().map(|x| x / n).collect();
            }
        }
    }

    #[test]
    fn grid_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [2, 3, 4] {
            let mut idx = DirectionIndex::new(d, 0.05);
            for _ in 0..2000 {
                idx.insert(&random_unit(&mut rng, d));
            }
            for _ in 0..200 {
                let q = random_unit(&mut rng, d);
                let (_, a) = idx.nearest(&q).unwrap();
                let (_, c) = idx.brute(&q).unwrap();
                assert!((a - chord_to_angle(c)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dedup() {
        let mut idx = DirectionIndex::new(3, 0.02);
        assert!(idx.insert_if_far(&[1.0, 0.0, 0.0], 0.02));
        assert!(!idx.insert_if_far(&[1.0, 0.01, 0.0], 0.02));
        assert!(idx.insert_if_far(&[0.0, 1.0, 0.0], 0.02));
        assert_eq!(idx.len(), 2);
    }

    #[test]
    fn empty_distance_is_pi() {
        let idx = DirectionIndex::new(3, 0.02);
        assert_eq!(idx.distance(&[1.0, 0.0, 0.0]), std::f64::consts::PI);
    }
}
