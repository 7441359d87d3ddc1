//! Representations of `SL(2,R)` with their orbital supports, the wave-front
//! table they satisfy, and the branching examples for `SU(2,1)`, tensor
//! products and `SO(p,q)` block subgroups.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::{asymptotic_cone_report, hausdorff, AcConfig, AcReport, ConeDescription, NamedCone};
use crate::error::{Error, Result};
use crate::induction::{
    block_embedding, diagonal_embedding, discrete_decomposability_obstruction, real_form_embedding,
    restrict_directions, ObstructionReport, SubalgebraEmbedding,
};
use crate::lie::{call_args, sl2r, split_top_level, su21, Covector};
use crate::orbits::{nilpotent_cone_sample, sl2_orbit_point, OrbitFamily, ParamSet, Sl2Branch, Sl2Kind, Sl2Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("expected + or -, got '{other}'"))),
        }
    }
}

/// Catalog entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RepKind {
    /// Holomorphic (`+`) or antiholomorphic (`-`) discrete series `sigma_n`.
    Disc { n: u32, sign: Sign },
    /// Unitary principal series `sigma_{nu,+-}`, `nu > 0`.
    Hyp { nu: f64, sign: Sign },
    /// Spherical principal series at `nu = 0`.
    HypZero,
    /// Limits of discrete series.
    Limit(Sign),
    /// `L^2(G/K)`: the spherical principal series over `nu > 0`.
    L2GK,
    /// `L^2(G/A)`: both principal series over `nu > 0` and all discrete series.
    L2GA,
    /// Direct integral of `sigma_{nu,+-}` over `nu > 0`.
    IntHyp(Sign),
    /// Direct sum of `sigma_n^+-` over `n > 0`.
    DsumDisc(Sign),
    /// `sigma_n^{s1} (x) sigma_m^{s2}` as a representation of `G x G`.
    Tensor { n: u32, s1: Sign, m: u32, s2: Sign },
}

#[derive(Debug, Clone)]
pub struct RepresentationSpec {
    pub label: String,
    pub kind: RepKind,
    pub orbital_support: OrbitFamily,
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a positive integer, got '{s}'")))
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a number, got '{s}'")))
}

/// Splits `head(a,b)` or `head:a:b` into the head and its arguments.
fn split_label(s: &str) -> Result<(String, Vec<String>)> {
    let s = s.trim();
    if let Some(open) = s.find('(') {
        let head = &s[..open];
        let args = call_args(s, head)
            .ok_or_else(|| Error::Parse(format!("malformed label '{s}'")))?;
        let parts = if args.trim().is_empty() {
            Vec::new()
        } else {
            split_top_level(args)?.into_iter().map(String::from).collect()
        };
        return Ok((head.trim().to_string(), parts));
    }
    let mut it = s.split(':');
    let head = it.next().unwrap_or("").to_string();
    Ok((head, it.map(String::from).collect()))
}

fn sl2_family(branches: Vec<Sl2Branch>) -> OrbitFamily {
    OrbitFamily::sl2(branches)
}

fn disc_tag(n: u32, sign: Sign) -> Sl2Tag {
    match sign {
        Sign::Plus => Sl2Tag::EllPlus(n as f64),
        Sign::Minus => Sl2Tag::EllMinus(n as f64),
    }
}

fn nil_branch(sign: Sign) -> Sl2Branch {
    Sl2Branch::single(match sign {
        Sign::Plus => Sl2Tag::NilPlus,
        Sign::Minus => Sl2Tag::NilMinus,
    })
}

fn ell_kind(sign: Sign) -> Sl2Kind {
    match sign {
        Sign::Plus => Sl2Kind::EllPlus,
        Sign::Minus => Sl2Kind::EllMinus,
    }
}

fn positive_reals() -> ParamSet {
    ParamSet::Interval { lo: 0.0, hi: None }
}

impl RepKind {
    pub fn orbital_support(&self) -> Result<OrbitFamily> {
        Ok(match self {
            RepKind::Disc { n, sign } => sl2_family(vec![Sl2Branch::single(disc_tag(*n, *sign))]),
            RepKind::Hyp { nu, .. } => sl2_family(vec![Sl2Branch::single(Sl2Tag::Hyp(*nu))]),
            RepKind::HypZero => sl2_family(vec![
                Sl2Branch::single(Sl2Tag::NilPlus),
                Sl2Branch::single(Sl2Tag::NilMinus),
                Sl2Branch::single(Sl2Tag::Zero),
            ]),
            RepKind::Limit(sign) => sl2_family(vec![nil_branch(*sign)]),
            RepKind::L2GK | RepKind::IntHyp(_) => {
                sl2_family(vec![Sl2Branch::new(Sl2Kind::Hyp, positive_reals())?])
            }
            RepKind::L2GA => sl2_family(vec![
                Sl2Branch::new(Sl2Kind::Hyp, positive_reals())?,
                Sl2Branch::new(Sl2Kind::EllPlus, ParamSet::Integers { from: 1 })?,
                Sl2Branch::new(Sl2Kind::EllMinus, ParamSet::Integers { from: 1 })?,
            ]),
            RepKind::DsumDisc(sign) => sl2_family(vec![Sl2Branch::new(
                ell_kind(*sign),
                ParamSet::Integers { from: 1 },
            )?]),
            RepKind::Tensor { n, s1, m, s2 } => {
                let g = crate::lie::product(&[sl2r(), sl2r()])?;
                let a = disc_tag(*n, *s1).base_point();
                let b = disc_tag(*m, *s2).base_point();
                let base = Covector::new(a.into_iter().chain(b).collect());
                OrbitFamily::generic(Arc::new(g), vec![base])?
            }
        })
    }

    pub fn label(&self) -> String {
        match self {
            RepKind::Disc { n, sign } => format!("sigma_disc({n},{sign})"),
            RepKind::Hyp { nu, sign } => format!("sigma_hyp({nu},{sign})"),
            RepKind::HypZero => "sigma_zero".into(),
            RepKind::Limit(sign) => format!("sigma_limit({sign})"),
            RepKind::L2GK => "L2_GK".into(),
            RepKind::L2GA => "L2_GA".into(),
            RepKind::IntHyp(sign) => format!("int_hyp({sign})"),
            RepKind::DsumDisc(sign) => format!("dsum_disc({sign})"),
            RepKind::Tensor { n, s1, m, s2 } => format!("tensor({n},{s1},{m},{s2})"),
        }
    }
}

/// Parses a catalog label, in either `name(a,b)` or `name:a:b` form.
///
/// Labels: `sigma_disc(n,+-)`, `sigma_hyp(nu,+-)`, `sigma_zero`,
/// `sigma_limit(+-)`, `L2_GK`, `L2_GA`, `int_hyp(+-)`, `dsum_disc(+-)`,
/// `tensor(n,+-,m,+-)`.
pub fn parse_representation(s: &str) -> Result<RepresentationSpec> {
    let (head, args) = split_label(s)?;
    let a: Vec<&str> = args.iter().map(|x| x.trim()).collect();
    let bad = || Error::UnknownRepresentation(s.trim().to_string());
    let positive = |n: u32| {
        if n == 0 {
            Err(Error::Parse(format!("{s}: the index must be at least 1")))
        } else {
            Ok(n)
        }
    };
    let kind = match (head.as_str(), a.as_slice()) {
        ("sigma_disc", [n, sg]) => RepKind::Disc {
            n: positive(parse_u32(n)?)?,
            sign: sg.parse()?,
        },
        ("sigma_hyp", [nu, sg]) => {
            let nu = parse_f64(nu)?;
            let sign: Sign = sg.parse()?;
            if nu == 0.0 && sign == Sign::Plus {
                RepKind::HypZero
            } else if nu > 0.0 && nu.is_finite() {
                RepKind::Hyp { nu, sign }
            } else {
                return Err(Error::Parse(format!(
                    "{s}: need nu > 0 (or nu = 0 with the spherical sign)"
                )));
            }
        }
        ("sigma_zero", []) => RepKind::HypZero,
        ("sigma_limit", [sg]) => RepKind::Limit(sg.parse()?),
        ("L2_GK", []) => RepKind::L2GK,
        ("L2_GA", []) => RepKind::L2GA,
        ("int_hyp", [sg]) => RepKind::IntHyp(sg.parse()?),
        ("dsum_disc", [sg]) => RepKind::DsumDisc(sg.parse()?),
        ("tensor", [n, s1, m, s2]) => RepKind::Tensor {
            n: positive(parse_u32(n)?)?,
            s1: s1.parse()?,
            m: positive(parse_u32(m)?)?,
            s2: s2.parse()?,
        },
        _ => return Err(bad()),
    };
    Ok(RepresentationSpec {
        label: kind.label(),
        orbital_support: kind.orbital_support()?,
        kind,
    })
}

/// Asymptotic cone of the orbital support.
pub fn wavefront_of(spec: &RepresentationSpec, config: &AcConfig) -> Result<AcReport> {
    asymptotic_cone_report(&spec.orbital_support, config)
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenRow {
    pub label: String,
    pub expected: NamedCone,
    /// Closed-form cone of the orbital support.
    pub exact: Option<NamedCone>,
    /// Hausdorff angular distance between the sampled asymptotic cone and
    /// the expected cone.
    pub defect: f64,
    pub pass: bool,
}

/// The rows of the wave-front table, with the expected cone of each.
pub fn golden_rows() -> Vec<(RepKind, NamedCone)> {
    use NamedCone::*;
    vec![
        (RepKind::Disc { n: 3, sign: Sign::Plus }, NilPlus),
        (RepKind::Disc { n: 3, sign: Sign::Minus }, NilMinus),
        (RepKind::Hyp { nu: 1.5, sign: Sign::Plus }, Nil),
        (RepKind::Hyp { nu: 1.5, sign: Sign::Minus }, Nil),
        (RepKind::HypZero, Nil),
        (RepKind::Limit(Sign::Plus), NilPlus),
        (RepKind::Limit(Sign::Minus), NilMinus),
        (RepKind::L2GK, HypClosure),
        (RepKind::L2GA, Full),
        (RepKind::DsumDisc(Sign::Plus), EllPlusClosure),
        (RepKind::DsumDisc(Sign::Minus), EllMinusClosure),
    ]
}

/// Each row recomputed by sampling (closed forms disabled) and compared to
/// the expected cone.
pub fn golden_table(samples_per_radius: usize, seed: u64, angular_tol: f64) -> Result<Vec<GoldenRow>> {
    let mut out = Vec::new();
    for (i, (kind, expected)) in golden_rows().into_iter().enumerate() {
        let fam = kind.orbital_support()?;
        let exact = crate::cone::PointFamily::exact_cone(&fam).and_then(|c| c.as_named());
        let cfg = AcConfig::sampled(samples_per_radius, seed.wrapping_add(i as u64));
        let rep = asymptotic_cone_report(&fam, &cfg)?;
        let h = hausdorff(&rep.cone, &ConeDescription::named(expected), angular_tol / 4.0, seed)?;
        out.push(GoldenRow {
            label: kind.label(),
            expected,
            exact,
            defect: h.distance,
            pass: exact == Some(expected) && h.distance <= angular_tol,
        });
    }
    Ok(out)
}

pub fn su21_so21_pair() -> Result<SubalgebraEmbedding> {
    real_form_embedding()
}

/// Sampled nilpotent cone of `su(2,1)`, the wave front set of the
/// quaternionic discrete series.
pub fn quaternionic_wf(samples: usize, seed: u64) -> Result<ConeDescription> {
    let g = su21();
    let dirs: Vec<DVector<f64>> = nilpotent_cone_sample(&g, samples, seed)?
        .into_iter()
        .filter_map(|x| {
            let n = x.norm();
            (n > 1e-12).then(|| x.coords() / n)
        })
        .collect();
    Ok(ConeDescription::Sampled {
        dim: g.dim(),
        directions: dirs,
        tol: crate::induction::SAMPLED_TOL,
    })
}

/// Restriction of the quaternionic wave front set to `so(2,1)`: the class
/// counts of `q(N_G)` and the obstruction verdict.
pub fn quaternionic_branching(samples: usize, seed: u64) -> Result<ObstructionReport> {
    let e = su21_so21_pair()?;
    let wf = quaternionic_wf(samples, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = wf.sample_directions(0.05, &mut rng);
    discrete_decomposability_obstruction(&e, &dirs)
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorReport {
    pub n: u32,
    pub s1: Sign,
    pub m: u32,
    pub s2: Sign,
    pub samples: usize,
    /// Classes of the sums `xi + eta`.
    pub class_counts: BTreeMap<String, usize>,
    pub hyperbolic: usize,
    /// Sums outside the open elliptic nappe matching `s1` (when `s1 = s2`).
    pub off_nappe: usize,
    pub sum_cone_class: String,
    pub discretely_decomposable_obstructed: bool,
    pub witness: Option<Vec<f64>>,
}

/// Sums of points of `O_n^{s1}` and `O_m^{s2}`, i.e. the pullback of the
/// product orbit to the diagonal, classified in `sl(2,R)`.
pub fn tensor_analysis(n: u32, s1: Sign, m: u32, s2: Sign, samples: usize, seed: u64) -> Result<TensorReport> {
    if n == 0 || m == 0 {
        return Err(Error::Parse("tensor factors need n, m >= 1".into()));
    }
    let e = diagonal_embedding(&sl2r())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<DVector<f64>> = (0..samples)
        .map(|_| {
            let a = sl2_orbit_point(disc_tag(n, s1), &mut rng);
            let b = sl2_orbit_point(disc_tag(m, s2), &mut rng);
            DVector::from_iterator(6, a.to_vec().into_iter().chain(b.to_vec()))
        })
        .collect();
    let obs = discrete_decomposability_obstruction(&e, &dirs)?;
    let sums = restrict_directions(&e, &dirs);
    let h = e.sub();
    let mut hyperbolic = 0;
    let mut off_nappe = 0;
    let nappe = match s1 {
        Sign::Plus => crate::lie::Region::EllipticPlus,
        Sign::Minus => crate::lie::Region::EllipticMinus,
    };
    for v in &sums {
        let r = crate::lie::region(h, &Covector::from_vector(v.clone()))?;
        if r == crate::lie::Region::Hyperbolic {
            hyperbolic += 1;
        }
        if r != nappe {
            off_nappe += 1;
        }
    }
    let sum_cone_class = if s1 == s2 && off_nappe == 0 {
        format!("{nappe} closure")
    } else if hyperbolic > 0 {
        "contains Hyperbolic".to_string()
    } else {
        "elliptic and nilpotent".to_string()
    };
    Ok(TensorReport {
        n,
        s1,
        m,
        s2,
        samples,
        class_counts: obs.class_counts,
        hyperbolic,
        off_nappe,
        sum_cone_class,
        discretely_decomposable_obstructed: obs.obstructed,
        witness: obs.witness,
    })
}

/// Largest `p + q` of the block family.
pub const MAX_SOPQ_SIZE: usize = 8;

#[derive(Debug, Clone)]
pub struct SopqInstance {
    pub p: usize,
    pub q: usize,
    pub blocks: Vec<(usize, usize)>,
    pub embedding: SubalgebraEmbedding,
    /// `2(p_i + q_i) <= p + q + 2` whenever `p_i q_i != 0`.
    pub bk_condition: bool,
    /// The above together with `2 p_i <= p + 1`, `2 q_i <= q + 1` and `p + q > 2`.
    pub saturation_condition: bool,
}

pub fn bk_condition(p: usize, q: usize, blocks: &[(usize, usize)]) -> bool {
    blocks
        .iter()
        .all(|&(a, b)| a * b == 0 || 2 * (a + b) <= p + q + 2)
}

pub fn saturation_condition(p: usize, q: usize, blocks: &[(usize, usize)]) -> bool {
    bk_condition(p, q, blocks)
        && p + q > 2
        && blocks.iter().all(|&(a, b)| 2 * a <= p + 1 && 2 * b <= q + 1)
}

pub fn sopq_family(p: usize, q: usize, blocks: &[(usize, usize)]) -> Result<SopqInstance> {
    if p + q > MAX_SOPQ_SIZE {
        return Err(Error::DimensionTooLarge {
            what: "so(p,q) matrix size p+q",
            dim: p + q,
            max: MAX_SOPQ_SIZE,
        });
    }
    let (sp, sq) = blocks.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if (sp, sq) != (p, q) {
        return Err(Error::BadPartition(format!(
            "blocks sum to ({sp},{sq}), expected ({p},{q})"
        )));
    }
    let embedding = block_embedding(p, q, blocks)?;
    Ok(SopqInstance {
        p,
        q,
        blocks: blocks.to_vec(),
        embedding,
        bk_condition: bk_condition(p, q, blocks),
        saturation_condition: saturation_condition(p, q, blocks),
    })
}

/// All multisets of nonzero blocks `(p_i, q_i)` summing to `(p, q)`, each
/// listed once in non-increasing order.
pub fn block_partitions(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        p: usize,
        q: usize,
        max: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if p == 0 && q == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (0..=p).rev() {
            for b in (0..=q).rev() {
                if a + b == 0 || (a, b) > max {
                    continue;
                }
                cur.push((a, b));
                rec(p - a, q - b, (a, b), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p, q, (p, q), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_label_syntaxes() {
        let a = parse_representation("sigma_disc(3,+)").unwrap();
        let b = parse_representation("sigma_disc:3:+").unwrap();
        assert_eq!(a.kind, b.kind);
        assert_eq!(a.label, "sigma_disc(3,+)");
        assert_eq!(parse_representation("sigma_hyp:0:+").unwrap().kind, RepKind::HypZero);
        assert!(matches!(
            parse_representation("sigma_bogus(1)"),
            Err(Error::UnknownRepresentation(_))
        ));
        assert!(parse_representation("sigma_disc(0,+)").is_err());
        assert!(parse_representation("sigma_hyp(0,-)").is_err());
    }

    #[test]
    fn closed_forms_match_the_table() {
        for (kind, expected) in golden_rows() {
            let f = kind.orbital_support().unwrap();
            let r = wavefront_of(
                &RepresentationSpec {
                    label: kind.label(),
                    kind: kind.clone(),
                    orbital_support: f,
                },
                &AcConfig::default(),
            )
            .unwrap();
            assert_eq!(r.cone.as_named(), Some(expected), "{}", kind.label());
        }
    }

    #[test]
    fn tensor_same_sign_stays_on_nappe() {
        let r = tensor_analysis(2, Sign::Plus, 3, Sign::Plus, 2000, 1).unwrap();
        assert_eq!(r.off_nappe, 0);
        assert!(!r.discretely_decomposable_obstructed);
        let r = tensor_analysis(1, Sign::Plus, 4, Sign::Minus, 2000, 1).unwrap();
        assert!(r.hyperbolic > 0);
        assert!(r.discretely_decomposable_obstructed);
    }

    #[test]
    fn arithmetic_conditions() {
        assert!(bk_condition(3, 1, &[(1, 1), (2, 0)]));
        assert!(bk_condition(2, 2, &[(2, 1), (0, 1)]));
        assert!(!bk_condition(2, 2, &[(2, 2)]));
        assert!(matches!(
            sopq_family(2, 2, &[(1, 1), (0, 0)]).map(|_| ()),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            sopq_family(3, 2, &[(1, 1)]).map(|_| ()),
            Err(Error::BadPartition(_))
        ));
    }

    #[test]
    fn partitions_of_small_pairs() {
        assert_eq!(block_partitions(1, 1), vec![vec![(1, 1)], vec![(1, 0), (0, 1)]]);
        assert_eq!(block_partitions(2, 0).len(), 2);
        for parts in block_partitions(3, 2) {
            let s = parts.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            assert_eq!(s, (3, 2));
        }
    }

    #[test]
    fn quaternionic_restriction_is_full() {
        let r = quaternionic_branching(4000, 2).unwrap();
        for c in ["Hyperbolic", "EllipticPlus", "EllipticMinus"] {
            assert!(r.class_counts.get(c).copied().unwrap_or(0) > 0, "{c}: {:?}", r.class_counts);
        }
        assert!(r.obstructed);
    }
}
