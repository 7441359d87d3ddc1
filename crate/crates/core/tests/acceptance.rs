//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitcone::catalog::{
    block_partitions, bk_condition, golden_rows, golden_table, quaternionic_branching, tensor_analysis, Sign,
};
use orbitcone::cone::{
    ac_union_check, asymptotic_cone_report, dual_cone, polyhedral_equal, AcConfig, ConeDescription,
    NamedCone, PointFamily, PolyhedralFamily,
};
use orbitcone::induction::{block_embedding, induced_cone, parse_embedding, real_form_embedding, SubalgebraEmbedding};
use orbitcone::lie::{
    classify_element, exp_jacobian, parse_algebra, sl2r, AlgebraElement, Covector, MatrixLieAlgebra,
};
use orbitcone::orbits::{canonical_density, density_ratio_f, euclidean_density, growth_scan, kks_gram, tangent_basis};
use orbitcone::tempered::{bk_weak_containment, sphere_check, BkVerdict};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// ---------- sl(2,R) oracles in (x, y, z) coordinates, z the compact axis ----------

fn elevation(u: &[f64]) -> f64 {
    u[2].atan2(u[0].hypot(u[1]))
}

/// Angle from a unit direction to a named cone, computed from the elevation.
fn named_distance(c: NamedCone, u: &[f64]) -> f64 {
    let phi = elevation(u);
    match c {
        NamedCone::NilPlus => (phi - FRAC_PI_4).abs(),
        NamedCone::NilMinus => (phi + FRAC_PI_4).abs(),
        NamedCone::Nil => (phi - FRAC_PI_4).abs().min((phi + FRAC_PI_4).abs()),
        NamedCone::EllPlusClosure => (FRAC_PI_4 - phi).max(0.0),
        NamedCone::EllMinusClosure => (phi + FRAC_PI_4).max(0.0),
        NamedCone::HypClosure => (phi.abs() - FRAC_PI_4).max(0.0),
        NamedCone::Full => 0.0,
        NamedCone::Zero => PI,
    }
}

/// Grid of directions of a named cone.
fn named_grid(c: NamedCone) -> Vec<[f64; 3]> {
    let phis: Vec<f64> = match c {
        NamedCone::NilPlus => vec![FRAC_PI_4],
        NamedCone::NilMinus => vec![-FRAC_PI_4],
        NamedCone::Nil => vec![FRAC_PI_4, -FRAC_PI_4],
        NamedCone::EllPlusClosure => (0..=10).map(|k| FRAC_PI_4 + k as f64 * FRAC_PI_4 / 10.0).collect(),
        NamedCone::EllMinusClosure => (0..=10).map(|k| -FRAC_PI_4 - k as f64 * FRAC_PI_4 / 10.0).collect(),
        NamedCone::HypClosure => (0..=20).map(|k| -FRAC_PI_4 + k as f64 * FRAC_PI_4 / 10.0).collect(),
        NamedCone::Full => (0..=40).map(|k| -PI / 2.0 + k as f64 * PI / 40.0).collect(),
        NamedCone::Zero => vec![],
    };
    let mut out = Vec::new();
    for phi in phis {
        for k in 0..72 {
            let th = k as f64 * 2.0 * PI / 72.0;
            out.push([phi.cos() * th.cos(), phi.cos() * th.sin(), phi.sin()]);
        }
    }
    out
}

fn max_gap(from: &[[f64; 3]], to: &[DVector<f64>]) -> f64 {
    from.iter()
        .map(|u| {
            to.iter()
                .map(|v| (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]).clamp(-1.0, 1.0).acos())
                .fold(PI, f64::min)
        })
        .fold(0.0, f64::max)
}

// ---------- criterion 1 ----------

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = golden_table(100_000, 11, 0.05).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for row in &rows {
        check(row.pass, format!("{}: defect {:.3}", row.label, row.defect))?;
        worst = worst.max(row.defect);
    }
    // Independent check of the sampled cones against the closed-form
    // inequalities.
    for (i, (kind, expected)) in golden_rows().into_iter().enumerate() {
        let fam = kind.orbital_support().map_err(|e| e.to_string())?;
        let rep = asymptotic_cone_report(&fam, &AcConfig::sampled(100_000, 100 + i as u64)).map_err(|e| e.to_string())?;
        let ConeDescription::Sampled { directions, .. } = &rep.cone else {
            return Err(format!("{}: expected a sampled cone", kind.label()));
        };
        let forward = directions
            .iter()
            .map(|d| named_distance(expected, d.as_slice()))
            .fold(0.0, f64::max);
        let backward = max_gap(&named_grid(expected), directions);
        check(
            forward <= 0.05 && backward <= 0.05,
            format!("{}: oracle defects {forward:.3} / {backward:.3}", kind.label()),
        )?;
        worst = worst.max(forward).max(backward);
    }
    let t = start.elapsed();
    check(t <= Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!("{} rows, worst defect {worst:.4}, {:.1}s", rows.len(), t.as_secs_f64()))
}

// ---------- criterion 2 ----------

/// Angle from `u` to the cone spanned by `gens`, by least squares on every
/// subset of generators (fine for a handful of them).
fn cone_angle(gens: &[DVector<f64>], u: &DVector<f64>) -> f64 {
    let k = gens.len();
    let mut best = u.norm();
    for mask in 1u32..(1 << k) {
        let cols: Vec<&DVector<f64>> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        let a = DMatrix::from_columns(&cols.iter().map(|c| (*c).clone()).collect::<Vec<_>>());
        let svd = a.clone().svd(true, true);
        let Ok(x) = svd.solve(u, 1e-12) else { continue };
        if x.iter().all(|&c| c >= -1e-12) {
            best = best.min((&a * &x - u).norm());
        }
    }
    (best / u.norm()).clamp(0.0, 1.0).asin()
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for trial in 0..20 {
        let dim = rng.random_range(2..=4);
        let members = rng.random_range(2..=3);
        let fams: Vec<PolyhedralFamily> = (0..members)
            .map(|_| {
                let k = rng.random_range(1..=3);
                let gens = (0..k)
                    .map(|_| DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0)))
                    .collect();
                PolyhedralFamily::new(dim, gens, rng.random_range(0.0..2.0))
            })
            .collect();
        let refs: Vec<&dyn PointFamily> = fams.iter().map(|f| f as &dyn PointFamily).collect();
        let cfg = AcConfig::sampled(50_000, trial);
        let rep = ac_union_check(&refs, &cfg, 0.05).map_err(|e| e.to_string())?;
        check(rep.passed, format!("family {trial}: defect {:.3}", rep.defect.distance))?;
        // Every sampled direction of the union lies near one of the members.
        if let ConeDescription::Sampled { directions, .. } = &rep.cone_of_union {
            let off = directions
                .iter()
                .map(|d| fams.iter().map(|f| cone_angle(&f.generators, d)).fold(PI, f64::min))
                .fold(0.0, f64::max);
            check(off <= 0.05, format!("family {trial}: direction {off:.3} off every member"))?;
        }
        worst = worst.max(rep.defect.distance);
    }
    Ok(format!("20 families, worst defect {worst:.4}"))
}

// ---------- criterion 3 ----------

fn coords_of(l: &MatrixLieAlgebra, m: &DMatrix<f64>) -> DVector<f64> {
    let cols: Vec<DVector<f64>> = l.basis().iter().map(|b| DVector::from_column_slice(b.as_slice())).collect();
    if cols.is_empty() {
        return DVector::zeros(0);
    }
    DMatrix::from_columns(&cols)
        .svd(true, true)
        .solve(&DVector::from_column_slice(m.as_slice()), 1e-14)
        .expect("basis solve")
}

fn matrix_of(l: &MatrixLieAlgebra, c: &DVector<f64>) -> DMatrix<f64> {
    let n = l.matrix_size();
    l.basis().iter().zip(c.iter()).fold(DMatrix::zeros(n, n), |acc, (b, x)| acc + b * *x)
}

fn random_regular_sl2(rng: &mut ChaCha8Rng) -> Covector {
    loop {
        let v: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
        let c = v[0] * v[0] + v[1] * v[1] - v[2] * v[2];
        if c.abs() > 0.05 {
            return Covector::new(v);
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn criterion_3() -> Outcome {
    let l = sl2r();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut anti, mut min_det, mut inv, mut ratio): (f64, f64, f64, f64) = (0.0, f64::INFINITY, 0.0, 0.0);
    for _ in 0..200 {
        let xi = random_regular_sl2(&mut rng);
        let frame = tangent_basis(&l, &xi).map_err(|e| e.to_string())?;
        let om = kks_gram(&l, &xi, &frame).map_err(|e| e.to_string())?;
        anti = anti.max((&om + om.transpose()).amax());
        min_det = min_det.min(om.determinant().abs());

        // Test-side KKS value through matrix commutators.
        let x = DVector::from_vec(vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
        let y = DVector::from_vec(vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
        let (mx, my) = (matrix_of(&l, &x), matrix_of(&l, &y));
        let br = coords_of(&l, &(&mx * &my - &my * &mx));
        let lib = orbitcone::orbits::kks_form(&l, &xi, &AlgebraElement::from_vector(x), &AlgebraElement::from_vector(y))
            .map_err(|e| e.to_string())?;
        let ours = -xi.coords().dot(&(l.gram() * br));
        anti = anti.max((lib - ours).abs());

        // Transport invariance of the symplectic density.
        let gens: Vec<(AlgebraElement, f64)> = (0..3)
            .map(|i| (AlgebraElement::basis_vector(3, i), rng.random_range(-1.0..1.0)))
            .collect();
        let t = l.transport_matrix(&gens).map_err(|e| e.to_string())?;
        let moved = Covector::from_vector(&t * xi.coords());
        let moved_frame: Vec<Covector> = frame.iter().map(|v| Covector::from_vector(&t * v.coords())).collect();
        let m0 = canonical_density(&l, &xi, &frame).map_err(|e| e.to_string())?;
        let m1 = canonical_density(&l, &moved, &moved_frame).map_err(|e| e.to_string())?;
        inv = inv.max(rel(m0, m1));

        let f = density_ratio_f(&l, &xi).map_err(|e| e.to_string())?;
        let eu = euclidean_density(&l, &xi, &frame).map_err(|e| e.to_string())?;
        ratio = ratio.max(rel(f * m0, eu));
    }
    check(anti <= 1e-12, format!("antisymmetry {anti:.2e}"))?;
    check(min_det >= 1e-12, format!("nondegeneracy {min_det:.2e}"))?;
    check(inv <= 1e-8, format!("transport invariance {inv:.2e}"))?;
    check(ratio <= 1e-8, format!("F identity {ratio:.2e}"))?;

    let fit = growth_scan(&l, 1.0, 100.0, 12, 64, 3).map_err(|e| e.to_string())?;
    // Independent least-squares slope of log max F against log(1 + |xi|).
    let pts: Vec<(f64, f64)> = fit.maxima.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / n, sy / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    check((slope - fit.slope).abs() < 1e-9, format!("slope {slope} vs {}", fit.slope))?;
    check(slope <= 1.6, format!("growth slope {slope:.3}"))?;
    Ok(format!(
        "antisym {anti:.1e}, min det {min_det:.2e}, invariance {inv:.1e}, F identity {ratio:.1e}, slope {slope:.3}"
    ))
}

// ---------- criterion 4 ----------

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (mut instances, mut with_condition) = (0, 0);
    for n in 2..=8usize {
        for p in 0..=n {
            let q = n - p;
            for blocks in block_partitions(p, q) {
                let e = block_embedding(p, q, &blocks).map_err(|e| e.to_string())?;
                let cert = bk_weak_containment(&e).map_err(|e| format!("so({p},{q}) {blocks:?}: {e}"))?;
                let sphere = sphere_check(&cert, 100_000, (p * 31 + q) as u64);
                let tag = format!("so({p},{q}) {blocks:?}");
                if bk_condition(p, q, &blocks) {
                    with_condition += 1;
                    check(cert.verdict == BkVerdict::Contained, format!("{tag}: {:?}", cert.verdict))?;
                }
                match cert.verdict {
                    BkVerdict::Contained => check(
                        sphere.violations == 0,
                        format!("{tag}: {} sphere violations", sphere.violations),
                    )?,
                    BkVerdict::Violated => check(
                        sphere.violations + sphere.near_witness_violations > 0,
                        format!("{tag}: sphere sampling found no violation"),
                    )?,
                    BkVerdict::Unknown => return Err(format!("{tag}: inconclusive")),
                }
                instances += 1;
            }
        }
    }
    let t = start.elapsed();
    check(t <= Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!(
        "{instances} block pairs ({with_condition} meet the condition), {:.1}s",
        t.as_secs_f64()
    ))
}

// ---------- criterion 5 ----------

/// Class of an `sl(2,R)` covector from `x^2 + y^2 - z^2` and the sign of `z`.
fn sl2_class(u: &[f64]) -> &'static str {
    let c = u[0] * u[0] + u[1] * u[1] - u[2] * u[2];
    let n2 = u.iter().map(|x| x * x).sum::<f64>();
    if c > 1e-6 * n2 {
        "Hyperbolic"
    } else if c < -1e-6 * n2 {
        if u[2] > 0.0 {
            "EllipticPlus"
        } else {
            "EllipticMinus"
        }
    } else {
        "Nilpotent"
    }
}

/// Class of an element of `so(2,1)` through the trace of its square in the
/// defining representation, with the elliptic sign read off the compact
/// basis direction.
fn so21_class(h: &MatrixLieAlgebra, v: &[f64]) -> &'static str {
    let m = matrix_of(h, &DVector::from_column_slice(v));
    let t = (&m * &m).trace();
    let scale = m.norm_squared();
    if t > 1e-6 * scale {
        return "Hyperbolic";
    }
    if t > -1e-6 * scale {
        return "Nilpotent";
    }
    let k = h.basis().iter().position(|b| (b * b).trace() < 0.0).expect("compact direction");
    if v[k] > 0.0 {
        "EllipticPlus"
    } else {
        "EllipticMinus"
    }
}

fn criterion_5() -> Outcome {
    let zero = ConeDescription::zero(1);
    let e = parse_embedding("sl2R|a").map_err(|e| e.to_string())?;
    let ind = induced_cone(&e, &zero, 100_000, 5).map_err(|e| e.to_string())?;
    let ConeDescription::Sampled { directions, .. } = &ind.cone else {
        return Err("expected sampled directions".into());
    };
    let mut counts = std::collections::BTreeMap::new();
    for d in directions {
        *counts.entry(sl2_class(d.as_slice())).or_insert(0usize) += 1;
    }
    let total = ind.samples.max(1) as f64;
    for c in ["Hyperbolic", "EllipticPlus", "EllipticMinus"] {
        let lib = ind.class_counts.get(c).copied().unwrap_or(0);
        check(lib as f64 >= 0.01 * total, format!("sl2R|a: {c} {lib} of {total}"))?;
        check(counts.get(c).copied().unwrap_or(0) > 0, format!("sl2R|a: oracle misses {c}"))?;
    }
    let full_gap = max_gap(&named_grid(NamedCone::Full), directions);
    check(full_gap <= 0.05, format!("sl2R|a: cone misses directions by {full_gap:.3}"))?;

    let e = parse_embedding("sl2R|so(2)").map_err(|e| e.to_string())?;
    let ind = induced_cone(&e, &zero, 100_000, 5).map_err(|e| e.to_string())?;
    let ell = ind.class_counts.iter().filter(|(k, _)| k.starts_with("Elliptic")).map(|(_, v)| v).sum::<usize>();
    check(ell == 0, format!("sl2R|so(2): {ell} elliptic samples"))?;
    let ConeDescription::Sampled { directions, .. } = &ind.cone else {
        return Err("expected sampled directions".into());
    };
    let fwd = directions
        .iter()
        .map(|d| named_distance(NamedCone::HypClosure, d.as_slice()))
        .fold(0.0, f64::max);
    let back = max_gap(&named_grid(NamedCone::HypClosure), directions);
    check(fwd <= 0.05 && back <= 0.05, format!("sl2R|so(2): defects {fwd:.3} / {back:.3}"))?;

    let obs = quaternionic_branching(20_000, 5).map_err(|e| e.to_string())?;
    for c in ["Hyperbolic", "EllipticPlus", "EllipticMinus"] {
        check(obs.class_counts.get(c).copied().unwrap_or(0) > 0, format!("su(2,1): q(N) misses {c}"))?;
    }
    // Oracle: push the nilpotent cone through q and classify in the defining
    // representation of so(2,1).
    let pair = real_form_embedding().map_err(|e| e.to_string())?;
    let nil = orbitcone::orbits::nilpotent_cone_sample(pair.ambient(), 20_000, 6).map_err(|e| e.to_string())?;
    let mut seen = std::collections::BTreeSet::new();
    for x in &nil {
        let v = pair.q_matrix() * x.coords();
        seen.insert(so21_class(pair.sub(), v.as_slice()));
    }
    for c in ["Hyperbolic", "EllipticPlus", "EllipticMinus"] {
        check(seen.contains(c), format!("su(2,1): oracle misses {c}"))?;
    }
    Ok(format!("sl2R|a classes {:?}; sl2R|so(2) hyp-closure; q(N) meets all three", counts))
}

// ---------- criterion 6 ----------

fn hyperboloid_point(n: f64, sign: f64, rng: &mut ChaCha8Rng) -> [f64; 3] {
    let s: f64 = rng.random_range(0.0..4.0);
    let th: f64 = rng.random_range(0.0..2.0 * PI);
    [n * s.sinh() * th.cos(), n * s.sinh() * th.sin(), sign * n * s.cosh()]
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=5u32 {
        for m in 1..=5u32 {
            let same = tensor_analysis(n, Sign::Plus, m, Sign::Plus, 10_000, (10 * n + m) as u64)
                .map_err(|e| e.to_string())?;
            check(
                same.off_nappe == 0 && !same.discretely_decomposable_obstructed,
                format!("({n},+,{m},+): {} off the nappe", same.off_nappe),
            )?;
            let mixed = tensor_analysis(n, Sign::Plus, m, Sign::Minus, 10_000, (10 * n + m) as u64)
                .map_err(|e| e.to_string())?;
            check(
                mixed.hyperbolic > 0 && mixed.discretely_decomposable_obstructed,
                format!("({n},+,{m},-): {} hyperbolic", mixed.hyperbolic),
            )?;
            // Oracle: sums of explicit hyperboloid points.
            let (mut off, mut hyp) = (0, 0);
            for _ in 0..10_000 {
                let a = hyperboloid_point(n as f64, 1.0, &mut rng);
                let b = hyperboloid_point(m as f64, 1.0, &mut rng);
                let s = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                if sl2_class(&s) != "EllipticPlus" {
                    off += 1;
                }
                let c = hyperboloid_point(m as f64, -1.0, &mut rng);
                if sl2_class(&[a[0] + c[0], a[1] + c[1], a[2] + c[2]]) == "Hyperbolic" {
                    hyp += 1;
                }
            }
            check(off == 0 && hyp > 0, format!("({n},{m}): oracle {off} off, {hyp} hyperbolic"))?;
        }
    }
    Ok("25 same-sign pairs stay elliptic, 25 mixed pairs obstructed".into())
}

// ---------- criterion 7 ----------

fn catalog_algebras() -> Vec<String> {
    let mut v = vec!["sl2R".to_string(), "su(2,1)".into(), "abelian(3)".into(), "prod(sl2R,so(2,1))".into()];
    for n in 2..=8 {
        for p in 0..=n {
            v.push(format!("so({p},{})", n - p));
        }
    }
    v
}

fn random_vec(d: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.random_range(-1.0..1.0))
}

fn structural_algebras(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for name in catalog_algebras() {
        let l = parse_algebra(&name).map_err(|e| e.to_string())?;
        let rep = l.verify();
        check(rep.holds(1e-12), format!("{name}: {rep:?}"))?;
        let d = l.dim();
        for _ in 0..5 {
            let (x, y, z) = (random_vec(d, rng), random_vec(d, rng), random_vec(d, rng));
            let (mx, my, mz) = (matrix_of(&l, &x), matrix_of(&l, &y), matrix_of(&l, &z));
            let br = |a: &DMatrix<f64>, b: &DMatrix<f64>| a * b - b * a;
            let xy = br(&mx, &my);
            let lib = l
                .bracket(&AlgebraElement::from_vector(x.clone()), &AlgebraElement::from_vector(y.clone()))
                .map_err(|e| e.to_string())?;
            worst = worst.max((matrix_of(&l, lib.coords()) - &xy).amax());
            let jac = br(&xy, &mz) + br(&br(&my, &mz), &mx) + br(&br(&mz, &mx), &my);
            worst = worst.max(jac.amax());
            // Invariance of the form: B([X,Y],Z) = B(X,[Y,Z]).
            let g = l.gram();
            let lhs = coords_of(&l, &xy).dot(&(g * &z));
            let rhs = x.dot(&(g * coords_of(&l, &br(&my, &mz))));
            worst = worst.max((lhs - rhs).abs());
        }
    }
    check(worst <= 1e-12, format!("algebra identities {worst:.2e}"))?;
    Ok(worst)
}

fn all_embeddings() -> Result<Vec<SubalgebraEmbedding>, String> {
    let mut out = Vec::new();
    for s in [
        "sl2R|a", "sl2R|so(2)", "sl2R|0", "sl2R|sl2R", "diag(sl2R)", "su(2,1)|so(2,1)", "su(2,1)|k", "su(2,1)|a",
        "so(2,1)|k", "so(3,2)|a",
    ] {
        out.push(parse_embedding(s).map_err(|e| format!("{s}: {e}"))?);
    }
    for n in 2..=6 {
        for p in 0..=n {
            for b in block_partitions(p, n - p) {
                out.push(block_embedding(p, n - p, &b).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(out)
}

fn structural_pullbacks(rng: &mut ChaCha8Rng) -> Result<(usize, f64), String> {
    let embs = all_embeddings()?;
    let mut worst: f64 = 0.0;
    for e in &embs {
        let (g, h) = (e.ambient(), e.sub());
        for _ in 0..5 {
            let xi = random_vec(g.dim(), rng);
            let y = random_vec(h.dim(), rng);
            let z = random_vec(h.dim(), rng);
            // iota is a homomorphism, checked through ambient matrix commutators.
            let (iy, iz) = (e.inclusion() * &y, e.inclusion() * &z);
            let (my, mz) = (matrix_of(g, &iy), matrix_of(g, &iz));
            let hyz = coords_of(h, &(matrix_of(h, &y) * matrix_of(h, &z) - matrix_of(h, &z) * matrix_of(h, &y)));
            let hom = (e.inclusion() * hyz - coords_of(g, &(&my * &mz - &mz * &my))).norm();
            // <q(xi), Y>_h = <xi, iota(Y)>_g
            let lhs = (e.q_matrix() * &xi).dot(&(h.gram() * &y));
            let rhs = xi.dot(&(g.gram() * iy));
            worst = worst
                .max((lhs - rhs).abs() / (1.0 + xi.norm() * y.norm()))
                .max(hom / (1.0 + y.norm() * z.norm()));
        }
    }
    check(worst <= 1e-12, format!("pullback identity {worst:.2e}"))?;
    Ok((embs.len(), worst))
}

fn structural_classify(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let algebras = [sl2r(), parse_algebra("su(2,1)").unwrap(), parse_algebra("so(2,2)").unwrap()];
    for k in 0..1000 {
        let l = &algebras[k % algebras.len()];
        let d = l.dim();
        let xi = Covector::from_vector(random_vec(d, rng));
        let gens: Vec<(AlgebraElement, f64)> = (0..4)
            .map(|_| (AlgebraElement::basis_vector(d, rng.random_range(0..d)), rng.random_range(-0.7..0.7)))
            .collect();
        let t = l.transport_matrix(&gens).map_err(|e| e.to_string())?;
        let moved = Covector::from_vector(&t * xi.coords());
        let a = classify_element(l, &xi).map_err(|e| e.to_string())?;
        let b = classify_element(l, &moved).map_err(|e| e.to_string())?;
        check(a.tag == b.tag, format!("{}: {:?} became {:?}", l.name(), a.tag, b.tag))?;
        if let (Some(s), Some(t)) = (a.orientation, b.orientation) {
            check(s == t, format!("{}: orientation flipped", l.name()))?;
        }
    }
    Ok(())
}

fn structural_jacobian(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let l = sl2r();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let x = random_vec(3, rng) * 1.5;
        let mx = matrix_of(&l, &x);
        let inv = (-&mx).exp();
        let h = 1e-5;
        let mut jac = DMatrix::zeros(3, 3);
        for j in 0..3 {
            let mut e = DVector::zeros(3);
            e[j] = 1.0;
            let plus = (matrix_of(&l, &(&x + &e * h))).exp();
            let minus = (matrix_of(&l, &(&x - &e * h))).exp();
            let d = &inv * (plus - minus) / (2.0 * h);
            jac.set_column(j, &coords_of(&l, &d));
        }
        let fd = jac.determinant().abs();
        let lib = exp_jacobian(&l, &AlgebraElement::from_vector(x)).map_err(|e| e.to_string())?.j;
        worst = worst.max(rel(fd, lib));
    }
    check(worst <= 1e-4, format!("exp jacobian {worst:.2e}"))?;
    Ok(worst)
}

fn structural_dual(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let d = rng.random_range(2..=5);
        let k = rng.random_range(1..=4);
        let gens: Vec<DVector<f64>> = (0..k).map(|_| random_vec(d, rng)).collect();
        let c = ConeDescription::Polyhedral { dim: d, generators: gens.clone() };
        let dual = dual_cone(&c).map_err(|e| e.to_string())?;
        let dd = dual_cone(&dual).map_err(|e| e.to_string())?;
        check(polyhedral_equal(&c, &dd, 1e-9).map_err(|e| e.to_string())?, "double dual differs")?;
        let ConeDescription::Polyhedral { generators: ddg, .. } = &dd else {
            return Err("double dual is not polyhedral".into());
        };
        for g in ddg {
            worst = worst.max(cone_angle(&gens, g));
        }
        let ConeDescription::Polyhedral { generators: dg, .. } = &dual else {
            return Err("dual is not polyhedral".into());
        };
        for g in &gens {
            for h in dg {
                worst = worst.max(g.dot(h).max(0.0) / (g.norm() * h.norm()));
            }
        }
    }
    check(worst <= 1e-9, format!("double dual {worst:.2e}"))?;
    Ok(worst)
}

fn structural_cli() -> Result<(), String> {
    let exe = env!("CARGO_BIN_EXE_orbitcone");
    let runs: [&[&str]; 3] = [
        &["wavefront", "--rep", "sigma_disc:3:+", "--seed", "4"],
        &["induce", "--pair", "sl2R|a", "--cone", "zero", "--samples", "5000", "--seed", "9"],
        &["measure-scan", "--samples", "16"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let st = Command::new(exe)
                .args(args)
                .arg("--out")
                .arg(dir.path())
                .status()
                .map_err(|e| e.to_string())?;
            check(st.success(), format!("{args:?} exited with {st}"))?;
            let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
                .map_err(|e| e.to_string())?
                .map(|f| {
                    let f = f.unwrap();
                    (f.file_name().to_string_lossy().into_owned(), std::fs::read(f.path()).unwrap())
                })
                .collect();
            files.sort();
            outputs.push(files);
        }
        check(outputs[0] == outputs[1], format!("{args:?}: outputs differ between runs"))?;
        check(outputs[0].iter().any(|f| f.0 == "report.json"), "no report.json")?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alg = structural_algebras(&mut rng)?;
    let (n_emb, pull) = structural_pullbacks(&mut rng)?;
    structural_classify(&mut rng)?;
    let jac = structural_jacobian(&mut rng)?;
    let dual = structural_dual(&mut rng)?;
    structural_cli()?;
    Ok(format!(
        "algebras {alg:.1e}, {n_emb} embeddings {pull:.1e}, classify stable, exp jacobian {jac:.1e}, double dual {dual:.1e}, CLI deterministic"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("golden wave-front table", criterion_1),
        ("asymptotic cone of a union", criterion_2),
        ("canonical measure", criterion_3),
        ("weak containment sweep", criterion_4),
        ("saturation examples", criterion_5),
        ("tensor branching", criterion_6),
        ("structural suites", criterion_7),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|a| a == &n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {n} ({name}): PASS [{secs:.1}s] {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{secs:.1}s] {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
