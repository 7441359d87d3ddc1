//! Weak containment of `L^2(G/H)` in `L^2(G)` through the inequality
//! `2 rho_h(Y) <= rho_g(Y)` on a maximal split abelian `a` in `h`, checked
//! exactly on the extreme rays of the weight hyperplane arrangement.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::induction::SubalgebraEmbedding;
use crate::lie::structure::{cartan_decomposition, maximal_split_abelian};
use crate::linalg;

/// Largest `dim a` for the ray enumeration.
pub const MAX_BK_DIM: usize = 4;
/// Largest denominator tried when reading weights as rationals.
const MAX_DENOMINATOR: i64 = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Weight {
    /// Value on each basis vector of `a`.
    pub values: Vec<f64>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSystem {
    pub ambient_dim: usize,
    pub weights: Vec<Weight>,
}

impl WeightSystem {
    pub fn total_multiplicity(&self) -> usize {
        self.weights.iter().map(|w| w.multiplicity).sum()
    }

    /// Whether `-w` is a weight of the same multiplicity for every nonzero `w`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.weights.iter().all(|w| {
            w.values.iter().all(|v| v.abs() <= tol)
                || self.weights.iter().any(|o| {
                    o.multiplicity == w.multiplicity
                        && o.values.iter().zip(&w.values).all(|(a, b)| (a + b).abs() <= tol)
                })
        })
    }

    /// The same weights in the basis `y_j = sum_i b_ij a_i`.
    pub fn rebased(&self, b: &DMatrix<f64>) -> WeightSystem {
        WeightSystem {
            ambient_dim: b.ncols(),
            weights: self
                .weights
                .iter()
                .map(|w| Weight {
                    values: (b.transpose() * DVector::from_column_slice(&w.values))
                        .iter()
                        .cloned()
                        .collect(),
                    multiplicity: w.multiplicity,
                })
                .collect(),
        }
    }
}

/// `sum mult * max(w(Y), 0)`.
pub fn rho(w: &WeightSystem, y: &[f64]) -> f64 {
    w.weights
        .iter()
        .map(|wt| {
            let v: f64 = wt.values.iter().zip(y).map(|(a, b)| a * b).sum();
            wt.multiplicity as f64 * v.max(0.0)
        })
        .sum()
}

/// Joint eigenvalues of commuting real-diagonalisable matrices acting on a
/// module of dimension `module_dim`.
pub fn weights_of_action(mats: &[DMatrix<f64>], module_dim: usize) -> Result<WeightSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x77);
    let jw = linalg::joint_weights(mats, module_dim, &mut rng)?;
    let scale = mats.iter().map(|m| m.norm()).fold(1.0, f64::max);
    let mut weights = Vec::with_capacity(jw.len());
    for w in jw {
        if w.values.iter().any(|v| v.im.abs() > 1e-7 * scale) {
            return Err(Error::Numerical("action has non-real weights".into()));
        }
        weights.push(Weight {
            values: w.values.iter().map(|v| v.re).collect(),
            multiplicity: w.multiplicity,
        });
    }
    weights.sort_by(|a, b| {
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(WeightSystem {
        ambient_dim: mats.len(),
        weights,
    })
}

/// A maximal split abelian subspace of `h`, as coordinate vectors of `h`,
/// checked to act on `h` with real spectrum.
pub fn split_abelian(e: &SubalgebraEmbedding) -> Result<Vec<DVector<f64>>> {
    let h = e.sub();
    if h.dim() == 0 {
        return Ok(Vec::new());
    }
    let cd = cartan_decomposition(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xa);
    let a = maximal_split_abelian(h, &cd, &mut rng);
    let mats: Vec<DMatrix<f64>> = a.iter().map(|v| h.ad_of_coords(v)).collect();
    weights_of_action(&mats, h.dim())?;
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BkVerdict {
    Contained,
    Violated,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BkWitness {
    /// Unit vector of `a` in the basis of the weight systems.
    pub ray: Vec<f64>,
    pub two_rho_h: f64,
    pub rho_g: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BkCertificate {
    pub verdict: BkVerdict,
    /// Worst extreme ray found; present whenever there is at least one ray.
    pub witness: Option<BkWitness>,
    pub a_dim: usize,
    pub lineality_dim: usize,
    pub hyperplanes: usize,
    pub rays_checked: usize,
    /// Whether the weights were read as rationals and the check run in
    /// integer arithmetic.
    pub exact: bool,
    pub h_weights: WeightSystem,
    pub g_weights: WeightSystem,
}

/// Weight systems of `a` (from [`split_abelian`]) acting on `h` and on `g`.
pub fn bk_weights(e: &SubalgebraEmbedding) -> Result<(Vec<DVector<f64>>, WeightSystem, WeightSystem)> {
    let a = split_abelian(e)?;
    if a.len() > MAX_BK_DIM {
        return Err(Error::DimensionTooLarge {
            what: "split abelian subspace",
            dim: a.len(),
            max: MAX_BK_DIM,
        });
    }
    let h = e.sub();
    let g = e.ambient();
    let hm: Vec<DMatrix<f64>> = a.iter().map(|v| h.ad_of_coords(v)).collect();
    let gm: Vec<DMatrix<f64>> = a
        .iter()
        .map(|v| g.ad_of_coords(&(e.inclusion() * v)))
        .collect();
    let hw = weights_of_action(&hm, h.dim())?;
    let gw = weights_of_action(&gm, g.dim())?;
    Ok((a, hw, gw))
}

pub fn bk_weak_containment(e: &SubalgebraEmbedding) -> Result<BkCertificate> {
    let (_, hw, gw) = bk_weights(e)?;
    bk_from_weights(&hw, &gw)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a as i128, b as i128) as i64 * b
}

/// Smallest denominator `d <= MAX_DENOMINATOR` with `x d` within `1e-6` of an
/// integer.
fn denominator(x: f64) -> Option<i64> {
    (1..=MAX_DENOMINATOR).find(|&d| {
        let y = x * d as f64;
        (y - y.round()).abs() <= 1e-6
    })
}

fn primitive(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0, |acc, x| gcd(acc, *x));
    if g == 0 {
        return v.to_vec();
    }
    let mut out: Vec<i128> = v.iter().map(|x| x / g).collect();
    if let Some(first) = out.iter().find(|x| **x != 0) {
        if *first < 0 {
            out.iter_mut().for_each(|x| *x = -*x);
        }
    }
    out
}

fn det_int(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_int(&minor)
            })
            .sum(),
    }
}

fn det_f(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    DMatrix::from_fn(n, n, |i, j| m[i][j]).determinant()
}

/// Generalised cross product: the kernel of `r - 1` rows in dimension `r`.
fn kernel_int(rows: &[&Vec<i128>], r: usize) -> Vec<i128> {
    (0..r)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det_int(&minor)
        })
        .collect()
}

fn kernel_f(rows: &[&Vec<f64>], r: usize) -> Vec<f64> {
    (0..r)
        .map(|j| {
            let minor: Vec<Vec<f64>> = rows
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            s * det_f(&minor)
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Weights rewritten in coordinates `u_k = mu_k(Y)` for independent weights
/// `mu_1..mu_r`, together with the matrix `M` whose rows are the `mu_k`.
struct Reduced {
    m: DMatrix<f64>,
    h: Vec<(Vec<f64>, usize)>,
    g: Vec<(Vec<f64>, usize)>,
}

fn reduce(hw: &WeightSystem, gw: &WeightSystem) -> Result<Reduced> {
    let dim = hw.ambient_dim;
    let vec_of = |w: &Weight| DVector::from_column_slice(&w.values);
    let all: Vec<DVector<f64>> = hw.weights.iter().chain(&gw.weights).map(vec_of).collect();
    let (_, picked) = linalg::orthonormalize(&all, 1e-8);
    let r = picked.len();
    let m = DMatrix::from_fn(r, dim, |i, j| all[picked[i]][j]);
    let mt = m.transpose();
    let coords = |ws: &WeightSystem| -> Result<Vec<(Vec<f64>, usize)>> {
        ws.weights
            .iter()
            .map(|w| {
                let v = vec_of(w);
                let c = linalg::lstsq(&mt, &v);
                if (&mt * &c - &v).amax() > 1e-7 * (1.0 + v.amax()) {
                    return Err(Error::Numerical("weight outside the span of the chosen basis".into()));
                }
                Ok((c.iter().cloned().collect(), w.multiplicity))
            })
            .collect()
    };
    Ok(Reduced {
        h: coords(hw)?,
        g: coords(gw)?,
        m,
    })
}

fn eval_f(ws: &[(Vec<f64>, usize)], u: &[f64]) -> f64 {
    ws.iter()
        .map(|(c, m)| *m as f64 * c.iter().zip(u).map(|(a, b)| a * b).sum::<f64>().max(0.0))
        .sum()
}

fn eval_i(ws: &[(Vec<i128>, usize)], u: &[i128]) -> i128 {
    ws.iter()
        .map(|(c, m)| *m as i128 * c.iter().zip(u).map(|(a, b)| a * b).sum::<i128>().max(0))
        .sum()
}

/// The global check on precomputed weight systems of the same `a`.
pub fn bk_from_weights(hw: &WeightSystem, gw: &WeightSystem) -> Result<BkCertificate> {
    if hw.ambient_dim != gw.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: hw.ambient_dim,
            found: gw.ambient_dim,
        });
    }
    let dim = hw.ambient_dim;
    if dim > MAX_BK_DIM {
        return Err(Error::DimensionTooLarge {
            what: "split abelian subspace",
            dim,
            max: MAX_BK_DIM,
        });
    }
    let red = reduce(hw, gw)?;
    let r = red.m.nrows();
    let mut cert = BkCertificate {
        verdict: BkVerdict::Contained,
        witness: None,
        a_dim: dim,
        lineality_dim: dim - r,
        hyperplanes: 0,
        rays_checked: 0,
        exact: true,
        h_weights: hw.clone(),
        g_weights: gw.clone(),
    };
    if r == 0 {
        return Ok(cert);
    }

    // Rational reading of the reduced coordinates.
    let mut den = 1i64;
    let mut exact = true;
    for (c, _) in red.h.iter().chain(&red.g) {
        for x in c {
            match denominator(*x) {
                Some(d) => den = lcm(den, d),
                None => exact = false,
            }
        }
    }
    let to_int = |ws: &[(Vec<f64>, usize)]| -> Vec<(Vec<i128>, usize)> {
        ws.iter()
            .map(|(c, m)| (c.iter().map(|x| (x * den as f64).round() as i128).collect(), *m))
            .collect()
    };

    // Candidate rays in u-coordinates, as floats for the witness.
    let mut rays: Vec<Vec<f64>> = Vec::new();
    let mut int_rays: Vec<Vec<i128>> = Vec::new();
    if exact {
        let hi = to_int(&red.h);
        let gi = to_int(&red.g);
        let planes: BTreeSet<Vec<i128>> = hi
            .iter()
            .chain(&gi)
            .filter(|(c, _)| c.iter().any(|x| *x != 0))
            .map(|(c, _)| primitive(c))
            .collect();
        let planes: Vec<Vec<i128>> = planes.into_iter().collect();
        cert.hyperplanes = planes.len();
        let mut seen = BTreeSet::new();
        if r == 1 {
            seen.insert(vec![1i128]);
        } else {
            for s in subsets(planes.len(), r - 1) {
                let rows: Vec<&Vec<i128>> = s.iter().map(|&i| &planes[i]).collect();
                let k = kernel_int(&rows, r);
                if k.iter().all(|x| *x == 0) {
                    continue;
                }
                seen.insert(primitive(&k));
            }
        }
        for k in seen {
            let neg: Vec<i128> = k.iter().map(|x| -x).collect();
            for u in [k, neg] {
                let f = eval_i(&gi, &u) - 2 * eval_i(&hi, &u);
                cert.rays_checked += 1;
                if f < 0 {
                    cert.verdict = BkVerdict::Violated;
                }
                rays.push(u.iter().map(|x| *x as f64).collect());
                int_rays.push(u);
            }
        }
    } else {
        cert.exact = false;
        let mut planes: Vec<Vec<f64>> = Vec::new();
        for (c, _) in red.h.iter().chain(&red.g) {
            let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n < 1e-9 {
                continue;
            }
            let mut u: Vec<f64> = c.iter().map(|x| x / n).collect();
            if u.iter().find(|x| x.abs() > 1e-9).is_some_and(|x| *x < 0.0) {
                u.iter_mut().for_each(|x| *x = -*x);
            }
            if !planes.iter().any(|p| p.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-9)) {
                planes.push(u);
            }
        }
        cert.hyperplanes = planes.len();
        let mut cand: Vec<Vec<f64>> = Vec::new();
        if r == 1 {
            cand.push(vec![1.0]);
        } else {
            for s in subsets(planes.len(), r - 1) {
                let rows: Vec<&Vec<f64>> = s.iter().map(|&i| &planes[i]).collect();
                let k = kernel_f(&rows, r);
                let n = k.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n > 1e-9 {
                    cand.push(k.iter().map(|x| x / n).collect());
                }
            }
        }
        let mut worst = f64::INFINITY;
        for k in cand {
            let neg: Vec<f64> = k.iter().map(|x| -x).collect();
            for u in [k, neg] {
                let f = eval_f(&red.g, &u) - 2.0 * eval_f(&red.h, &u);
                worst = worst.min(f);
                cert.rays_checked += 1;
                rays.push(u);
            }
        }
        cert.verdict = if worst < -1e-7 {
            BkVerdict::Violated
        } else if worst > -1e-9 {
            BkVerdict::Contained
        } else {
            BkVerdict::Unknown
        };
    }

    // Back to a-coordinates: minimum-norm Y with M Y = u.
    let mut best: Option<(f64, BkWitness)> = None;
    for u in &rays {
        let y = linalg::lstsq(&red.m, &DVector::from_column_slice(u));
        let n = y.norm();
        if n < 1e-300 {
            continue;
        }
        let y = y / n;
        let ys: Vec<f64> = y.iter().cloned().collect();
        let two_rho_h = 2.0 * rho(hw, &ys);
        let rho_g = rho(gw, &ys);
        let margin = rho_g - two_rho_h;
        if best.as_ref().is_none_or(|(m, _)| margin < *m) {
            best = Some((
                margin,
                BkWitness {
                    ray: ys,
                    two_rho_h,
                    rho_g,
                },
            ));
        }
    }
    cert.witness = best.map(|b| b.1);
    Ok(cert)
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereCheck {
    pub samples: usize,
    pub violations: usize,
    /// Smallest `rho_g - 2 rho_h` seen.
    pub min_margin: f64,
    /// Violations among samples within about 0.01 rad of the witness.
    pub near_witness_violations: usize,
}

/// Dense random check of the inequality on the unit sphere of `a`.
pub fn sphere_check(cert: &BkCertificate, samples: usize, seed: u64) -> SphereCheck {
    let dim = cert.a_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SphereCheck {
        samples,
        violations: 0,
        min_margin: f64::INFINITY,
        near_witness_violations: 0,
    };
    if dim == 0 {
        out.min_margin = 0.0;
        return out;
    }
    let margin = |y: &[f64]| rho(&cert.g_weights, y) - 2.0 * rho(&cert.h_weights, y);
    let mut y = vec![0.0; dim];
    for _ in 0..samples {
        for v in y.iter_mut() {
            *v = StandardNormal.sample(&mut rng);
        }
        let n = y.iter().map(|x| x * x).sum::<f64>().sqrt();
        y.iter_mut().for_each(|x| *x /= n);
        let m = margin(&y);
        out.min_margin = out.min_margin.min(m);
        if m < -1e-9 {
            out.violations += 1;
        }
    }
    if let Some(w) = &cert.witness {
        for _ in 0..samples.min(1000) {
            for (v, c) in y.iter_mut().zip(&w.ray) {
                let g: f64 = StandardNormal.sample(&mut rng);
                *v = c + 0.005 * g;
            }
            let n = y.iter().map(|x| x * x).sum::<f64>().sqrt();
            y.iter_mut().for_each(|x| *x /= n);
            if margin(&y) < -1e-9 {
                out.near_witness_violations += 1;
            }
        }
    }
    out
}
