//! Command-line front end. Every subcommand builds a JSON report with the
//! sections `config`, `inputs`, `result`, `certificates` and `timings`, plus
//! CSV side files when an output directory is given.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catalog::{golden_table, parse_representation, tensor_analysis, RepKind};
use crate::cone::{
    asymptotic_cone_report, dual_cone, AcConfig, ConeDescription, NamedCone, DEFAULT_RADII,
    DEFAULT_RESOLUTION,
};
use crate::error::{Error, Result};
use crate::induction::{
    induced_cone, obstruction_for_cone, parse_embedding, restriction_lower_bound,
    saturation_is_full, SubalgebraEmbedding, Verdict, DEFAULT_SATURATION_BUDGET,
};
use crate::lie::{classify_element, parse_algebra, region, AlgebraKind, Covector, MatrixLieAlgebra};
use crate::orbits::{growth_scan, nilpotent_cone_sample, orbit_sample, OrbitFamily, OrbitParam};
use crate::tempered::{bk_weak_containment, sphere_check, BkVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "orbitcone", version, about = "Coadjoint orbits, wave-front cones and branching checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample budget; its meaning depends on the subcommand.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Comma-separated increasing radii for asymptotic cones.
    #[arg(long, global = true, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    #[arg(long = "angular-tol", global = true, default_value_t = 0.05)]
    pub angular_tol: f64,
    /// Directory for report.json and CSV files; the report goes to stdout
    /// when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify a covector as zero, elliptic, hyperbolic, nilpotent or mixed.
    Classify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        point: String,
    },
    /// Sample points of the orbit through a covector.
    OrbitSample {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        point: String,
    },
    /// Asymptotic cone of a catalog representation's orbital support, or of
    /// a single orbit.
    #[command(alias = "wavefront")]
    Ac(AcArgs),
    /// Dual cone.
    Dual {
        #[arg(long, default_value = "sl2R")]
        algebra: String,
        #[arg(long)]
        cone: String,
    },
    /// Induced cone from a cone in the subalgebra.
    Induce {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        cone: String,
    },
    /// Projection of a cone of the ambient algebra to the subalgebra.
    Restrict {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        cone: Option<String>,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Weak containment of L2(G/H) in L2(G).
    Tempered {
        #[arg(long)]
        pair: String,
    },
    /// Whether the orthocomplement meets every Cartan class.
    Saturation {
        #[arg(long)]
        pair: String,
    },
    /// Restriction of a tensor product of discrete series to the diagonal.
    Tensor {
        #[arg(long)]
        rep: String,
    },
    /// Recompute the wave-front table of SL(2,R).
    GoldenTable,
    /// Growth of the density ratio F along random rays.
    MeasureScan {
        #[arg(long, default_value = "sl2R")]
        algebra: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct AcArgs {
    #[arg(long)]
    pub rep: Option<String>,
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub point: Option<String>,
    /// Ignore closed forms and sample.
    #[arg(long)]
    pub sampled: bool,
}

/// A finished run: the report and any CSV side files.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub files: Vec<(String, String)>,
    pub exit_code: i32,
}

impl Outcome {
    /// Pretty JSON with sorted keys, ending in a newline.
    pub fn report_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report is valid JSON");
        s.push('\n');
        s
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.report_text())?;
        for (name, body) in &self.files {
            fs::write(dir.join(name), body)?;
        }
        Ok(())
    }
}

fn parse_point(s: &str) -> Result<Covector> {
    let v = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad coordinate '{t}'")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parse("coordinates must be finite".into()));
    }
    Ok(Covector::new(v))
}

fn parse_vectors(s: &str, dim: usize) -> Result<Vec<DVector<f64>>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = parse_point(t)?;
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            Ok(v.coords().clone())
        })
        .collect()
}

/// Cone syntax: `zero`, `full`, `nilpotent`, a named `sl(2,R)` cone, or
/// `gens:v1;v2;...` for a polyhedral cone.
pub fn parse_cone(spec: &str, l: &MatrixLieAlgebra, samples: usize, seed: u64) -> Result<ConeDescription> {
    let s = spec.trim();
    let dim = l.dim();
    if let Some(g) = s.strip_prefix("gens:") {
        let c = ConeDescription::Polyhedral {
            dim,
            generators: parse_vectors(g, dim)?,
        };
        c.validate()?;
        return Ok(c);
    }
    let sl2 = *l.kind() == AlgebraKind::Sl2R;
    match s.to_ascii_lowercase().as_str() {
        "zero" => return Ok(ConeDescription::zero(dim)),
        "full" => return Ok(ConeDescription::full(dim)),
        "nilpotent" if !sl2 => {
            let dirs = nilpotent_cone_sample(l, samples, seed)?
                .into_iter()
                .filter(|x| x.norm() > 1e-12)
                .map(|x| x.coords() / x.norm())
                .collect();
            return Ok(ConeDescription::Sampled {
                dim,
                directions: dirs,
                tol: crate::induction::SAMPLED_TOL,
            });
        }
        "nilpotent" => return Ok(ConeDescription::named(NamedCone::Nil)),
        _ => {}
    }
    let named: NamedCone = s.parse()?;
    if !sl2 {
        return Err(Error::UnsupportedCone(format!(
            "named cone {named} is only defined on sl2R"
        )));
    }
    Ok(ConeDescription::named(named))
}

fn directions_csv(labels: &[String], dirs: &[DVector<f64>]) -> String {
    let mut s = labels.join(",");
    s.push('\n');
    for d in dirs {
        let row: Vec<String> = d.iter().map(|x| format!("{x:.12e}")).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn cone_directions(c: &ConeDescription, seed: u64) -> Vec<DVector<f64>> {
    match c {
        ConeDescription::Sampled { directions, .. } => directions.clone(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            c.sample_directions(DEFAULT_RESOLUTION * 5.0, &mut rng)
        }
    }
}

fn embedding_record(e: &SubalgebraEmbedding) -> Value {
    json!({
        "label": e.label(),
        "ambient": e.ambient().name(),
        "ambient_dim": e.ambient().dim(),
        "sub": e.sub().name(),
        "sub_dim": e.sub().dim(),
        "pullback_residual": e.pullback_residual(),
        "bracket_residual": e.bracket_residual(),
    })
}

struct Run {
    inputs: Value,
    result: Value,
    certificates: Value,
    counters: Value,
    statement: &'static str,
    files: Vec<(String, String)>,
    exit_code: i32,
}

impl Run {
    fn new(statement: &'static str, inputs: Value, result: Value) -> Self {
        Run {
            inputs,
            result,
            certificates: json!({}),
            counters: json!({}),
            statement,
            files: Vec::new(),
            exit_code: EXIT_OK,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::OrbitSample { .. } => "orbit-sample",
        Command::Ac(_) => "ac",
        Command::Dual { .. } => "dual",
        Command::Induce { .. } => "induce",
        Command::Restrict { .. } => "restrict",
        Command::Tempered { .. } => "tempered",
        Command::Saturation { .. } => "saturation",
        Command::Tensor { .. } => "tensor",
        Command::GoldenTable => "golden-table",
        Command::MeasureScan { .. } => "measure-scan",
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    if !(c.angular_tol > 0.0 && c.angular_tol.is_finite()) {
        return Err(Error::Parse("--angular-tol must be positive".into()));
    }
    let r = match &cli.command {
        Command::Classify { algebra, point } => classify(algebra, point)?,
        Command::OrbitSample { algebra, point } => orbit(c, algebra, point)?,
        Command::Ac(a) => ac(c, a)?,
        Command::Dual { algebra, cone } => dual(c, algebra, cone)?,
        Command::Induce { pair, cone } => induce(c, pair, cone)?,
        Command::Restrict { pair, cone, rep } => restrict(c, pair, cone.as_deref(), rep.as_deref())?,
        Command::Tempered { pair } => tempered(c, pair)?,
        Command::Saturation { pair } => saturation(c, pair)?,
        Command::Tensor { rep } => tensor(c, rep)?,
        Command::GoldenTable => golden(c)?,
        Command::MeasureScan { algebra } => measure_scan(c, algebra)?,
    };
    let report = json!({
        "statement": r.statement,
        "config": {
            "command": command_name(&cli.command),
            "seed": c.seed,
            "samples": c.samples,
            "radii": c.radii.clone().unwrap_or_else(|| DEFAULT_RADII.to_vec()),
            "angular_tol": c.angular_tol,
        },
        "inputs": r.inputs,
        "result": r.result,
        "certificates": r.certificates,
        "timings": r.counters,
    });
    Ok(Outcome {
        report,
        files: r.files,
        exit_code: r.exit_code,
    })
}

fn classify(algebra: &str, point: &str) -> Result<Run> {
    let l = parse_algebra(algebra)?;
    let xi = parse_point(point)?;
    l.check_len(xi.dim())?;
    let c = classify_element(&l, &xi)?;
    let eig: Vec<[f64; 2]> = c.eigen_summary.iter().map(|z| [z.re, z.im]).collect();
    let reg = l.orientation_reference().map(|_| region(&l, &xi)).transpose()?;
    Ok(Run::new(
        "Ad*-orbit types: elliptic, hyperbolic and nilpotent covectors via the eigenvalues of ad",
        json!({ "algebra": l.name(), "point": xi.to_vec() }),
        json!({
            "class": c.tag.to_string(),
            "region": reg.map(|r| r.to_string()),
            "orientation": c.orientation,
            "ad_eigenvalues": eig,
        }),
    ))
}

fn orbit(c: &Common, algebra: &str, point: &str) -> Result<Run> {
    let l = Arc::new(parse_algebra(algebra)?);
    let xi = parse_point(point)?;
    let n = c.samples.unwrap_or(1000);
    let param = OrbitParam::new(l.clone(), xi.clone(), None)?;
    let pts = orbit_sample(&param, n, c.seed)?;
    let vecs: Vec<DVector<f64>> = pts.iter().map(|p| p.coords().clone()).collect();
    let max_norm = vecs.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut r = Run::new(
        "coadjoint orbit Ad*(G) xi sampled by group transport",
        json!({ "algebra": l.name(), "point": xi.to_vec() }),
        json!({ "points": vecs.len(), "max_norm": max_norm }),
    );
    r.counters = json!({ "samples": n });
    r.files.push(("points.csv".into(), directions_csv(l.labels(), &vecs)));
    Ok(r)
}

fn ac_config(c: &Common, sampled: bool) -> AcConfig {
    let mut cfg = AcConfig {
        seed: c.seed,
        use_exact: !sampled,
        ..AcConfig::default()
    };
    if let Some(r) = &c.radii {
        cfg.radii = r.clone();
    }
    if let Some(n) = c.samples {
        cfg.samples_per_radius = n;
    }
    cfg
}

fn ac(c: &Common, a: &AcArgs) -> Result<Run> {
    let cfg = ac_config(c, a.sampled);
    let (family, inputs, labels, alg_name) = match (&a.rep, &a.algebra, &a.point) {
        (Some(rep), None, None) => {
            let spec = parse_representation(rep)?;
            let (labels, name) = match &spec.orbital_support {
                OrbitFamily::Generic { algebra, .. } => (algebra.labels().to_vec(), algebra.name().to_string()),
                OrbitFamily::Sl2 { .. } => {
                    let l = crate::lie::sl2r();
                    (l.labels().to_vec(), l.name().to_string())
                }
            };
            (spec.orbital_support, json!({ "rep": spec.label }), labels, name)
        }
        (None, Some(alg), Some(pt)) => {
            let l = Arc::new(parse_algebra(alg)?);
            let xi = parse_point(pt)?;
            let labels = l.labels().to_vec();
            let name = l.name().to_string();
            let inputs = json!({ "algebra": name, "point": xi.to_vec() });
            (OrbitFamily::generic(l, vec![xi])?, inputs, labels, name)
        }
        _ => {
            return Err(Error::Parse(
                "ac needs either --rep or both --algebra and --point".into(),
            ))
        }
    };
    let rep = asymptotic_cone_report(&family, &cfg)?;
    let dirs = cone_directions(&rep.cone, c.seed);
    let mut r = Run::new(
        "WF(pi) = AC(orbital support of pi) for representations weakly contained in the regular representation",
        inputs,
        json!({
            "cone": rep.cone.to_record(&alg_name),
            "named": rep.cone.as_named().map(|n| n.to_string()),
            "exact": rep.exact,
        }),
    );
    r.certificates = json!({ "last_step_drift": rep.last_step_drift });
    r.counters = json!({ "per_radius": rep.per_radius });
    r.files.push(("directions.csv".into(), directions_csv(&labels, &dirs)));
    Ok(r)
}

fn dual(c: &Common, algebra: &str, cone: &str) -> Result<Run> {
    let l = parse_algebra(algebra)?;
    let cone_in = parse_cone(cone, &l, c.samples.unwrap_or(2000), c.seed)?;
    let d = dual_cone(&cone_in)?;
    Ok(Run::new(
        "dual cone C0 = { eta : <eta, xi> >= 0 for all xi in C }",
        json!({ "algebra": l.name(), "cone": cone_in.to_record(l.name()) }),
        json!({ "dual": d.to_record(l.name()), "named": d.as_named().map(|n| n.to_string()) }),
    ))
}

fn induce(c: &Common, pair: &str, cone: &str) -> Result<Run> {
    let e = parse_embedding(pair)?;
    let s = parse_cone(cone, e.sub(), c.samples.unwrap_or(2000), c.seed)?;
    let budget = c.samples.unwrap_or(100_000);
    let ind = induced_cone(&e, &s, budget, c.seed)?;
    let dirs = cone_directions(&ind.cone, c.seed);
    let mut r = Run::new(
        "the asymptotic cone of an induced set is the saturation Ad*(G) q^-1(S)",
        json!({ "pair": embedding_record(&e), "cone": s.to_record(e.sub().name()) }),
        json!({
            "cone": ind.cone.to_record(e.ambient().name()),
            "named": ind.cone.as_named().map(|n| n.to_string()),
            "class_counts": ind.class_counts,
        }),
    );
    r.counters = json!({ "samples": ind.samples });
    r.files.push(("directions.csv".into(), directions_csv(e.ambient().labels(), &dirs)));
    Ok(r)
}

fn restrict(c: &Common, pair: &str, cone: Option<&str>, rep: Option<&str>) -> Result<Run> {
    let e = parse_embedding(pair)?;
    let n = c.samples.unwrap_or(4000);
    let (wf, source) = match (cone, rep) {
        (Some(s), None) => (parse_cone(s, e.ambient(), n, c.seed)?, json!({ "cone": s })),
        (None, Some(label)) => {
            let spec = parse_representation(label)?;
            let ac = asymptotic_cone_report(&spec.orbital_support, &ac_config(c, false))?;
            (ac.cone, json!({ "rep": spec.label }))
        }
        _ => return Err(Error::Parse("restrict needs exactly one of --cone and --rep".into())),
    };
    if wf.dim() != e.ambient().dim() {
        return Err(Error::DimensionMismatch {
            expected: e.ambient().dim(),
            found: wf.dim(),
        });
    }
    let low = restriction_lower_bound(&e, &wf, DEFAULT_RESOLUTION * 2.5, c.seed)?;
    let obs = obstruction_for_cone(&e, &wf, DEFAULT_RESOLUTION * 2.5, c.seed)?;
    let dirs = cone_directions(&low, c.seed);
    let mut r = Run::new(
        "WF(pi|H) contains q(WF(pi)); discrete decomposability forces q(WF(pi)) into the closed elliptic set",
        json!({ "pair": embedding_record(&e), "source": source }),
        json!({
            "restricted_cone": low.to_record(e.sub().name()),
            "named": low.as_named().map(|n| n.to_string()),
            "obstructed": obs.obstructed,
        }),
    );
    r.counters = json!({ "samples": obs.samples });
    r.certificates = json!({ "obstruction": obs });
    r.files.push(("directions.csv".into(), directions_csv(e.sub().labels(), &dirs)));
    Ok(r)
}

fn tempered(c: &Common, pair: &str) -> Result<Run> {
    let e = parse_embedding(pair)?;
    let cert = bk_weak_containment(&e)?;
    let n = c.samples.unwrap_or(100_000);
    let sphere = sphere_check(&cert, n, c.seed);
    let mut r = Run::new(
        "L2(G/H) is weakly contained in L2(G) iff rho_g >= 2 rho_h on a",
        json!({ "pair": embedding_record(&e) }),
        json!({ "verdict": cert.verdict, "exact": cert.exact }),
    );
    r.certificates = json!({ "chamber": cert, "sphere": sphere });
    r.counters = json!({ "sphere_samples": n });
    if cert.verdict == BkVerdict::Unknown {
        r.exit_code = EXIT_INCONCLUSIVE;
    }
    Ok(r)
}

fn saturation(c: &Common, pair: &str) -> Result<Run> {
    let e = parse_embedding(pair)?;
    let budget = c.samples.unwrap_or(DEFAULT_SATURATION_BUDGET);
    let cert = saturation_is_full(&e, budget, c.seed)?;
    let mut r = Run::new(
        "Ad*(G) q^-1(0) is dense in ig* when the orthocomplement meets every Cartan class",
        json!({ "pair": embedding_record(&e) }),
        json!({ "verdict": cert.verdict, "reason": cert.reason }),
    );
    r.counters = json!({ "trials": cert.trials, "budget": budget });
    if cert.verdict == Verdict::Unknown {
        r.exit_code = EXIT_INCONCLUSIVE;
    }
    r.certificates = json!({ "saturation": cert });
    Ok(r)
}

fn tensor(c: &Common, rep: &str) -> Result<Run> {
    let spec = parse_representation(rep)?;
    let RepKind::Tensor { n, s1, m, s2 } = spec.kind else {
        return Err(Error::Parse(format!("{rep} is not a tensor label")));
    };
    let samples = c.samples.unwrap_or(10_000);
    let t = tensor_analysis(n, s1, m, s2, samples, c.seed)?;
    let mut r = Run::new(
        "the restriction to the diagonal is discretely decomposable only if q(WF) lies in the closed elliptic set",
        json!({ "rep": spec.label }),
        json!({
            "sum_cone_class": t.sum_cone_class,
            "hyperbolic": t.hyperbolic,
            "off_nappe": t.off_nappe,
            "obstructed": t.discretely_decomposable_obstructed,
        }),
    );
    r.counters = json!({ "samples": samples });
    r.certificates = json!({ "tensor": t });
    Ok(r)
}

fn golden(c: &Common) -> Result<Run> {
    let n = c.samples.unwrap_or(100_000);
    let rows = golden_table(n, c.seed, c.angular_tol)?;
    let all = rows.iter().all(|r| r.pass);
    let mut r = Run::new(
        "wave front sets of the tempered representations of SL(2,R)",
        json!({ "rows": rows.len() }),
        json!({ "all_pass": all, "rows": rows }),
    );
    r.counters = json!({ "samples_per_radius": n });
    if !all {
        r.exit_code = EXIT_FAILED;
    }
    Ok(r)
}

fn measure_scan(c: &Common, algebra: &str) -> Result<Run> {
    let l = parse_algebra(algebra)?;
    let dirs = c.samples.unwrap_or(50);
    let fit = growth_scan(&l, 1.0, 100.0, 12, dirs, c.seed)?;
    let bound = l.dim() as f64 / 2.0 + 0.1;
    let mut csv = String::from("norm,F\n");
    for (x, f) in &fit.samples {
        let _ = writeln!(csv, "{x:.12e},{f:.12e}");
    }
    let mut r = Run::new(
        "F(xi) = canonical / Euclidean density grows at most like (1 + |xi|)^(dim G / 2)",
        json!({ "algebra": l.name(), "norm_range": [1.0, 100.0], "levels": 12 }),
        json!({ "slope": fit.slope, "intercept": fit.intercept, "bound": bound, "within_bound": fit.slope <= bound }),
    );
    r.counters = json!({ "directions": dirs, "evaluations": fit.samples.len() });
    r.certificates = json!({ "maxima": fit.maxima });
    r.files.push(("fscan.csv".into(), csv));
    Ok(r)
}

/// Parses `args` (including the program name), runs, writes output and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => {
            match &cli.common.out {
                Some(dir) => {
                    if let Err(e) = out.write(dir) {
                        eprintln!("error: cannot write {}: {e}", dir.display());
                        return EXIT_INVALID;
                    }
                }
                None => print!("{}", out.report_text()),
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("orbitcone").chain(args.iter().copied())).unwrap();
        run(&cli).unwrap()
    }

    #[test]
    fn classify_nilpotent_point() {
        let o = run_args(&["classify", "--algebra", "sl2R", "--point", "1,0,1"]);
        assert_eq!(o.report["result"]["class"], "Nilpotent");
        assert_eq!(o.exit_code, EXIT_OK);
    }

    #[test]
    fn wavefront_of_holomorphic_series() {
        let o = run_args(&["wavefront", "--rep", "sigma_disc:3:+"]);
        assert_eq!(o.report["result"]["named"], "Nplus");
        let csv = &o.files.iter().find(|f| f.0 == "directions.csv").unwrap().1;
        assert!(csv.lines().count() > 10);
        assert_eq!(csv.lines().next().unwrap().split(',').count(), 3);
    }

    #[test]
    fn tempered_block_pair() {
        let o = run_args(&["tempered", "--pair", "so(3,1)|blocks[(1,1),(2,0)]", "--samples", "2000"]);
        assert_eq!(o.report["result"]["verdict"], "Contained");
        assert!(o.report["certificates"]["chamber"]["g_weights"].is_object());
    }

    #[test]
    fn reports_are_deterministic() {
        let args = ["induce", "--pair", "sl2R|a", "--cone", "zero", "--samples", "3000", "--seed", "7"];
        assert_eq!(run_args(&args).report_text(), run_args(&args).report_text());
    }

    #[test]
    fn validation_errors_exit_two() {
        assert_eq!(main_with_args(["orbitcone", "classify", "--algebra", "sl9", "--point", "1"]), EXIT_INVALID);
        assert_eq!(main_with_args(["orbitcone", "bogus"]), EXIT_INVALID);
    }

    #[test]
    fn cone_syntax() {
        let l = crate::lie::sl2r();
        assert!(parse_cone("HypClosure", &l, 10, 0).is_ok());
        assert!(parse_cone("gens:1,0,0;0,1,0", &l, 10, 0).is_ok());
        assert!(parse_cone("gens:1,0", &l, 10, 0).is_err());
        let so = crate::lie::so_pq(2, 1).unwrap();
        assert!(parse_cone("NilPlus", &so, 10, 0).is_err());
    }
}
