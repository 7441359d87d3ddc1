use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cartan::{cartan_classes, complex_rank, regular_signature, CartanSignature};
use super::embedding::SubalgebraEmbedding;
use crate::error::Result;
use crate::lie::structure::{cartan_decomposition, generic_in, maximal_split_abelian};
use crate::linalg;

pub const DEFAULT_SATURATION_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Full,
    NotFull,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct SaturationCertificate {
    pub verdict: Verdict,
    pub classes: Vec<CartanSignature>,
    /// For each certified class, an element of the complement (ambient
    /// coordinates) whose centralizer is a Cartan subalgebra of that class.
    pub witnesses: BTreeMap<String, Vec<f64>>,
    pub missing: Vec<CartanSignature>,
    pub trials: usize,
    pub reason: String,
}

/// Searches the orthocomplement `q` of `h` for regular semisimple elements of
/// every Cartan class of `g`.
///
/// `Full` is returned when every class is represented. `NotFull` is returned
/// only with an exact reason: `q = 0` in a non-abelian algebra, or `q` inside
/// `p`, whose regular elements all centralize a maximally split Cartan.
/// Anything else is `Unknown`.
pub fn saturation_is_full(e: &SubalgebraEmbedding, budget: usize, seed: u64) -> Result<SaturationCertificate> {
    let g = e.ambient();
    let classes: Vec<CartanSignature> = cartan_classes(g)?.iter().map(|c| c.signature).collect();
    let rank = complex_rank(g);
    let dim = g.dim();
    let qb = e.complement().to_vec();
    let mut witnesses = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let cd = cartan_decomposition(g)?;
    let id = DMatrix::<f64>::identity(dim, dim);
    let proj = |sign: f64| -> Vec<DVector<f64>> {
        let m = (&id + &cd.theta * sign) * 0.5;
        let v: Vec<DVector<f64>> = qb
            .iter()
            .map(|x| &m * x)
            .zip(&qb)
            .filter(|(y, x)| y.norm() > 1e-9 * x.norm())
            .map(|(y, _)| y)
            .collect();
        linalg::orthonormalize(&v, 1e-9).0
    };
    let (qk, qp) = (proj(1.0), proj(-1.0));
    let stable = qk.len() + qp.len() == qb.len();

    let mut trials = 0;
    let draws = if qb.is_empty() { 1 } else { budget };
    while trials < draws && witnesses.len() < classes.len() {
        trials += 1;
        let x = if stable {
            let a = rng.random_range(-4.0f64..4.0).exp();
            let b = rng.random_range(-4.0f64..4.0).exp();
            generic_in(&qk, dim, &mut rng) * a + generic_in(&qp, dim, &mut rng) * b
        } else {
            generic_in(&qb, dim, &mut rng)
        };
        if let Some(s) = regular_signature(g, &x, rank) {
            if classes.contains(&s) {
                witnesses
                    .entry(s.to_string())
                    .or_insert_with(|| x.iter().cloned().collect());
            }
        }
    }
    let missing: Vec<CartanSignature> = classes
        .iter()
        .filter(|c| !witnesses.contains_key(&c.to_string()))
        .cloned()
        .collect();
    let (verdict, reason) = if missing.is_empty() {
        (Verdict::Full, "every Cartan class has a representative in q".to_string())
    } else if qb.is_empty() {
        (Verdict::NotFull, "q = 0 contains no regular element".to_string())
    } else if stable && qk.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let real_rank = maximal_split_abelian(g, &cd, &mut rng).len();
        if missing.iter().any(|c| c.split != real_rank) {
            (
                Verdict::NotFull,
                format!(
                    "q lies in p, so its regular elements only reach split dimension {real_rank}"
                ),
            )
        } else {
            (Verdict::Unknown, "budget exhausted".to_string())
        }
    } else {
        (Verdict::Unknown, "budget exhausted".to_string())
    };
    Ok(SaturationCertificate {
        verdict,
        classes,
        witnesses,
        missing,
        trials,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induction::parse_embedding;

    #[test]
    fn split_torus_saturates() {
        let e = parse_embedding("sl2R|a").unwrap();
        let c = saturation_is_full(&e, 10_000, 1).unwrap();
        assert_eq!(c.verdict, Verdict::Full);
    }

    #[test]
    fn compact_torus_does_not() {
        let e = parse_embedding("sl2R|so(2)").unwrap();
        let c = saturation_is_full(&e, 2_000, 1).unwrap();
        assert_eq!(c.verdict, Verdict::NotFull);
        assert_eq!(c.missing, vec![CartanSignature { compact: 1, split: 0 }]);
    }

    #[test]
    fn whole_algebra_leaves_nothing() {
        let e = parse_embedding("sl2R|sl2R").unwrap();
        let c = saturation_is_full(&e, 100, 1).unwrap();
        assert_eq!(c.verdict, Verdict::NotFull);
        assert_eq!(c.trials, 1);
    }

    #[test]
    fn so42_block_pair_saturates() {
        let e = parse_embedding("so(4,2)|blocks[(1,1),(1,1),(2,0)]").unwrap();
        let c = saturation_is_full(&e, DEFAULT_SATURATION_BUDGET, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Full, "{c:?}");
    }
}
