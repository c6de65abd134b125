use std::fmt::Write;
use std::path::Path;

use quatloc::qpoly::{companion_power_structured, opfer_comparison, roots, zero_bounds, BoundMethod, BoundReport, PcVariant, PowerVariant};
use quatloc::regions::{
    as_quaternion, build_minimal_region, build_region, export_complex_discs, invertibility_sufficient, invertibility_sufficient_brauer,
    sampled_inclusion, stability_sufficient, ComplexShape, InclusionReport,
};
use quatloc::spectra::{is_invertible, smallest_singular_value, standard_eigenvalues};
use quatloc::{QMatrix, QPolynomial, Quaternion, Region, RegionKind, RegionSpec, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{emit_csv, emit_json, emit_text, num, read_json, Failure, Outcome};
use crate::{svg, BoundChoice, BoundsArgs, Command, CompareArgs, InvertibilityArgs, PowerArgs, RegionsArgs, RootsArgs, StabilityArgs};

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Regions(a) => regions(a),
        Command::Bounds(a) => bounds(a),
        Command::Roots(a) => roots_cmd(a),
        Command::Stability(a) => stability(a),
        Command::Invertibility(a) => invertibility(a),
        Command::Power(a) => power(a),
        Command::Compare(a) => compare(a),
    }
}

fn kind_name(k: RegionKind) -> String {
    serde_json::to_value(k).unwrap().as_str().unwrap().to_owned()
}

fn describe(k: RegionKind) -> &'static str {
    match k {
        RegionKind::GerschRow => "balls |z - a_ii| <= r_i (deleted row sums), left eigenvalues",
        RegionKind::GerschCol => "balls |z - a_ii| <= c_i (deleted column sums), left eigenvalues",
        RegionKind::OstrowskiLeft => "Ostrowski balls |z - a_ii| <= r_i^g c_i^(1-g), left eigenvalues",
        RegionKind::OstrowskiRightRealDiag => "Ostrowski balls |z - a_ii| <= r_i^g c_i^(1-g), right eigenvalues, real diagonal",
        RegionKind::BrauerCol => "Cassini ovals |z - a_ii||z - a_jj| <= c_i c_j, left eigenvalues",
        RegionKind::BrauerLeftOstrowski => "Cassini ovals with Ostrowski radii, left eigenvalues",
        RegionKind::BrauerRightRealDiag => "Cassini ovals with Ostrowski radii, right eigenvalues, real diagonal",
        RegionKind::HolderLeft => "generalized Hölder balls, left eigenvalues",
        RegionKind::HolderRightRealDiag => "generalized Hölder balls, right eigenvalues, real diagonal",
    }
}

fn pair(z: quatloc::C64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct Params {
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    weights: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct EigenEntry {
    value: [f64; 2],
    /// The eigenvalue itself, as a quaternion, lies in the region.
    contained: bool,
    /// Some member of its similarity class lies in the region.
    class_meets: bool,
}

#[derive(Serialize)]
struct InclusionEntry {
    outer: String,
    #[serde(flatten)]
    report: InclusionReport,
}

#[derive(Serialize)]
struct RegionsReport {
    command: &'static str,
    method: String,
    description: &'static str,
    eigenvalues_of: &'static str,
    params: Params,
    n: usize,
    region: Region,
    shapes: Vec<ComplexShape>,
    eigenvalues: Vec<EigenEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inclusion: Option<InclusionEntry>,
}

fn region_for(a: &QMatrix, kind: RegionKind, args: &RegionsArgs) -> Outcome<Region> {
    let mut spec = RegionSpec::new(kind).gamma(args.gamma);
    if let Some(p) = args.p {
        spec = spec.p(p);
    }
    Ok(match args.weights.len() {
        0 => build_region(a, &spec)?,
        1 => build_region(a, &spec.weights(args.weights[0].clone()))?,
        _ => build_minimal_region(a, &spec, &args.weights)?,
    })
}

fn regions(args: RegionsArgs) -> Outcome {
    let a: QMatrix = read_json(&args.input)?;
    let region = region_for(&a, args.method, &args)?;
    let spectrum = standard_eigenvalues(&a)?;
    let eigenvalues = spectrum
        .standard
        .iter()
        .map(|&z| EigenEntry { value: pair(z), contained: region.contains(as_quaternion(z)), class_meets: region.class_meets(z.re, z.im.abs()) })
        .collect();
    let inclusion = match args.subset_of {
        Some(outer_kind) => {
            let outer = region_for(&a, outer_kind, &args)?;
            eprintln!("seed: {}", args.seed);
            Some(InclusionEntry { outer: kind_name(outer_kind), report: sampled_inclusion(&region, &outer, args.seed, args.samples) })
        }
        None => None,
    };
    let shapes = export_complex_discs(&region);
    let report = RegionsReport {
        command: "regions",
        method: kind_name(args.method),
        description: describe(args.method),
        eigenvalues_of: if args.method.is_right() { "right" } else { "left" },
        params: Params { gamma: args.gamma, p: args.p, weights: args.weights.clone() },
        n: a.n(),
        region: region.clone(),
        shapes: shapes.clone(),
        eigenvalues,
        inclusion,
    };

    let mut rows = Vec::new();
    let mut summary = format!("{} ({})\n", report.method, report.description);
    for (k, leaf) in region.leaves().iter().enumerate() {
        let q4 = |q: Quaternion| q.to_array().map(num);
        match leaf {
            Region::Ball { center, radius } => {
                let _ = writeln!(summary, "  part {}: ball center {} radius {:.4}", k + 1, show_q(*center), radius);
                let mut r = vec![(k + 1).to_string(), "ball".into()];
                r.extend(q4(*center));
                r.extend(["", "", "", ""].map(String::from));
                r.extend([num(*radius), String::new()]);
                rows.push(r);
            }
            Region::Cassini { c1, c2, bound } => {
                let _ = writeln!(summary, "  part {}: cassini foci {} and {} bound {:.4}", k + 1, show_q(*c1), show_q(*c2), bound);
                let mut r = vec![(k + 1).to_string(), "cassini".into()];
                r.extend(q4(*c1));
                r.extend(q4(*c2));
                r.extend([String::new(), num(*bound)]);
                rows.push(r);
            }
            _ => {}
        }
    }
    for e in &report.eigenvalues {
        let _ = writeln!(summary, "  eigenvalue {:.4}{:+.4}i contained={} class_meets={}", e.value[0], e.value[1], e.contained, e.class_meets);
    }
    if let Some(inc) = &report.inclusion {
        let _ = writeln!(summary, "  inside {}: {} ({} samples, seed {})", inc.outer, inc.report.included, inc.report.samples, inc.report.seed);
    }

    let markers: Vec<[f64; 2]> = spectrum.standard.iter().map(|&z| pair(z)).collect();
    emit_text(args.svg.as_deref(), &svg::render(&format!("{} for a {}x{} matrix", report.method, a.n(), a.n()), &shapes, &markers))?;
    emit_csv(
        args.out.csv.as_deref(),
        &["part", "shape", "c1_w", "c1_x", "c1_y", "c1_z", "c2_w", "c2_x", "c2_y", "c2_z", "radius", "bound"],
        &rows,
    )?;
    emit_json(args.out.json.as_deref(), &report, &summary)
}

fn show_q(q: Quaternion) -> String {
    // adding 0.0 turns -0.0 into 0.0
    format!("({:.4}, {:.4}, {:.4}, {:.4})", q.w + 0.0, q.x + 0.0, q.y + 0.0, q.z + 0.0)
}

fn label(m: &BoundMethod) -> String {
    match m {
        BoundMethod::Ostrowski { gamma } => format!("ostrowski(gamma={gamma})"),
        BoundMethod::Scaled { weights, gamma } => format!("scaled(w={weights:?}, gamma={gamma})"),
        BoundMethod::Cs1 { weights } => format!("cs1(w={weights:?})"),
        BoundMethod::Cs2 { weights } => format!("cs2(w={weights:?})"),
        BoundMethod::Power { t, gamma, variant } => {
            let v = if *variant == PowerVariant::Direct { "direct" } else { "conjugate" };
            format!("power(t={t}, gamma={gamma}, {v})")
        }
        BoundMethod::Pc { variant } => format!("pc({})", variant.label()),
        other => other.name().to_owned(),
    }
}

#[derive(Serialize)]
struct RankEntry {
    label: String,
    lower: f64,
    upper: f64,
}

#[derive(Serialize)]
struct BoundsReport {
    command: &'static str,
    side: Side,
    degree: usize,
    reports: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ranking: Option<Ranking>,
}

#[derive(Serialize)]
struct Ranking {
    /// Ascending upper bound, ties broken by descending lower bound.
    by_upper: Vec<RankEntry>,
    sharpest_upper: String,
    sharpest_lower: String,
}

fn single_method(args: &BoundsArgs, side: Side) -> Outcome<BoundMethod> {
    let weights = || args.weights.clone().map(|w| w.0).ok_or_else(|| Failure::Usage(format!("--method {:?} needs --weights", args.method).to_lowercase()));
    Ok(match args.method {
        BoundChoice::All => unreachable!(),
        BoundChoice::Ostrowski => BoundMethod::Ostrowski { gamma: args.gamma },
        BoundChoice::Co1 => BoundMethod::Co1,
        BoundChoice::Co2 => BoundMethod::Co2,
        BoundChoice::Kojima => BoundMethod::Kojima,
        BoundChoice::Scaled => BoundMethod::Scaled { weights: weights()?, gamma: args.gamma },
        BoundChoice::Cs1 => BoundMethod::Cs1 { weights: weights()? },
        BoundChoice::Cs2 => BoundMethod::Cs2 { weights: weights()? },
        BoundChoice::Power => {
            let variant = match args.variant {
                None => PowerVariant::Direct,
                Some(v) => v.power().ok_or_else(|| Failure::Usage("power takes --variant direct or conjugate".into()))?,
            };
            BoundMethod::Power { t: args.t, gamma: args.gamma, variant }
        }
        BoundChoice::Pc => {
            let variant = match args.variant {
                None if side == Side::Left => PcVariant::LeftDirect,
                None => PcVariant::RightDirect,
                Some(v) => v.pc().ok_or_else(|| Failure::Usage("pc takes --variant 1a, 1b, 2a or 2b".into()))?,
            };
            BoundMethod::Pc { variant }
        }
    })
}

fn bounds(args: BoundsArgs) -> Outcome {
    let p: QPolynomial = read_json(&args.poly)?;
    let all = args.method == BoundChoice::All;
    let methods = if all { BoundMethod::battery(p.side()) } else { vec![single_method(&args, p.side())?] };
    let mut reports = Vec::with_capacity(methods.len());
    for m in &methods {
        if all && matches!(m, BoundMethod::Pc { .. }) && p.degree() < 2 {
            continue;
        }
        match zero_bounds(&p, m) {
            Ok(r) => reports.push(r),
            // quotients undefined for this polynomial; the battery carries on
            Err(quatloc::Error::ZeroDivisor(_)) if all => {}
            Err(e) => return Err(e.into()),
        }
    }
    let ranking = all.then(|| {
        let mut by_upper: Vec<RankEntry> = reports.iter().map(|r| RankEntry { label: label(&r.method), lower: r.lower, upper: r.upper }).collect();
        by_upper.sort_by(|a, b| a.upper.total_cmp(&b.upper).then(b.lower.total_cmp(&a.lower)));
        let sharpest_lower = by_upper.iter().max_by(|a, b| a.lower.total_cmp(&b.lower)).map(|e| e.label.clone()).unwrap_or_default();
        Ranking { sharpest_upper: by_upper.first().map(|e| e.label.clone()).unwrap_or_default(), sharpest_lower, by_upper }
    });
    let report = BoundsReport { command: "bounds", side: p.side(), degree: p.degree(), reports, ranking };

    let mut summary = String::new();
    let rows: Vec<Vec<String>> = report
        .reports
        .iter()
        .map(|r| {
            let flag = if r.lower_degenerate { " (q0 = 0)" } else { "" };
            let _ = writeln!(summary, "{:<40} {:.4} <= |z| <= {:.4}{flag}", label(&r.method), r.lower, r.upper);
            vec![label(&r.method), r.method.name().into(), num(r.lower), num(r.upper), r.lower_degenerate.to_string()]
        })
        .collect();
    if let Some(rk) = &report.ranking {
        let _ = writeln!(summary, "sharpest upper: {}\nsharpest lower: {}", rk.sharpest_upper, rk.sharpest_lower);
    }
    emit_csv(args.out.csv.as_deref(), &["label", "method", "lower", "upper", "lower_degenerate"], &rows)?;
    emit_json(args.out.json.as_deref(), &report, &summary)
}

#[derive(Serialize)]
struct IsolatedEntry {
    root: Quaternion,
    modulus: f64,
    residual: f64,
}

#[derive(Serialize)]
struct SphericalEntry {
    re: f64,
    imag_norm: f64,
    modulus: f64,
    /// Largest residual over sampled class members.
    max_residual: f64,
}

#[derive(Serialize)]
struct RootsReport {
    command: &'static str,
    side: Side,
    degree: usize,
    isolated: Vec<IsolatedEntry>,
    spherical: Vec<SphericalEntry>,
    empty_classes: Vec<[f64; 2]>,
    moduli: Vec<f64>,
}

/// Sixteen fixed unit pure imaginaries.
fn class_directions() -> Vec<Quaternion> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..16)
        .map(|k| {
            let y = 1.0 - 2.0 * (k as f64 + 0.5) / 16.0;
            let r = (1.0 - y * y).sqrt();
            let t = golden * k as f64;
            Quaternion::new(0.0, r * t.cos(), y, r * t.sin())
        })
        .collect()
}

fn roots_cmd(args: RootsArgs) -> Outcome {
    let p: QPolynomial = read_json(&args.poly)?;
    let rs = roots(&p)?;
    let isolated = rs.isolated.iter().map(|&z| IsolatedEntry { root: z, modulus: z.norm(), residual: p.eval(z).norm() }).collect();
    let dirs = class_directions();
    let spherical = rs
        .spherical
        .iter()
        .map(|s| SphericalEntry {
            re: s.re,
            imag_norm: s.imag_norm,
            modulus: s.modulus(),
            max_residual: dirs.iter().map(|&u| p.eval(s.member(u)).norm()).fold(0.0, f64::max),
        })
        .collect();
    let report = RootsReport {
        command: "roots",
        side: p.side(),
        degree: p.degree(),
        isolated,
        spherical,
        empty_classes: rs.empty_classes.iter().map(|&z| pair(z)).collect(),
        moduli: rs.moduli(),
    };

    let mut summary = String::new();
    let mut rows = Vec::new();
    let mut markers = Vec::new();
    for e in &report.isolated {
        let _ = writeln!(summary, "isolated  {}  |z| = {:.4}", show_q(e.root), e.modulus);
        let mut r = vec!["isolated".to_owned()];
        r.extend(e.root.to_array().map(num));
        r.extend([num(e.root.w), num(e.root.imag_norm()), num(e.modulus)]);
        rows.push(r);
        markers.push([e.root.w, e.root.imag_norm()]);
    }
    for s in &report.spherical {
        let _ = writeln!(summary, "spherical [{:.4} + {:.4}u]  |z| = {:.4}", s.re + 0.0, s.imag_norm, s.modulus);
        let mut r = vec!["spherical".to_owned()];
        r.extend(["", "", "", ""].map(String::from));
        r.extend([num(s.re), num(s.imag_norm), num(s.modulus)]);
        rows.push(r);
        markers.push([s.re, s.imag_norm]);
    }
    emit_text(args.svg.as_deref(), &svg::render("zeros, class representatives a + bi with b >= 0", &[], &markers))?;
    emit_csv(args.out.csv.as_deref(), &["kind", "w", "x", "y", "z", "re", "imag_norm", "modulus"], &rows)?;
    emit_json(args.out.json.as_deref(), &report, &summary)
}

#[derive(Serialize)]
struct StabilityReport {
    command: &'static str,
    gamma: f64,
    p: f64,
    sufficient: bool,
    standard_eigenvalues: Vec<[f64; 2]>,
    max_real_part: f64,
    stable: bool,
}

fn stability(args: StabilityArgs) -> Outcome {
    let a: QMatrix = read_json(&args.input)?;
    let sufficient = stability_sufficient(&a, args.gamma, args.p)?;
    let spec = standard_eigenvalues(&a)?;
    let max_real_part = spec.standard.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let report = StabilityReport {
        command: "stability",
        gamma: args.gamma,
        p: args.p,
        sufficient,
        standard_eigenvalues: spec.standard.iter().map(|&z| pair(z)).collect(),
        max_real_part,
        stable: max_real_part < 0.0,
    };
    let summary = format!("sufficient condition: {sufficient}\nmax real part: {max_real_part:.4} (stable: {})\n", report.stable);
    emit_json(args.json.as_deref(), &report, &summary)
}

#[derive(Serialize)]
struct InvertibilityReport {
    command: &'static str,
    gamma: f64,
    ostrowski_sufficient: bool,
    brauer_sufficient: bool,
    invertible: bool,
    smallest_singular_value: f64,
}

fn invertibility(args: InvertibilityArgs) -> Outcome {
    let a: QMatrix = read_json(&args.input)?;
    let report = InvertibilityReport {
        command: "invertibility",
        gamma: args.gamma,
        ostrowski_sufficient: invertibility_sufficient(&a, args.gamma)?,
        brauer_sufficient: invertibility_sufficient_brauer(&a, args.gamma)?,
        invertible: is_invertible(&a),
        smallest_singular_value: smallest_singular_value(&a.complex_adjoint()),
    };
    let summary = format!(
        "ball test: {}\ncassini test: {}\nnumerically invertible: {} (smallest singular value {:.4e})\n",
        report.ostrowski_sufficient, report.brauer_sufficient, report.invertible, report.smallest_singular_value
    );
    emit_json(args.json.as_deref(), &report, &summary)
}

#[derive(Serialize)]
struct PowerReport {
    command: &'static str,
    side: Side,
    t: u32,
    matrix: QMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    structured_equals_direct: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_entry_delta: Option<f64>,
}

fn power(args: PowerArgs) -> Outcome {
    let p: QPolynomial = read_json(&args.poly)?;
    let matrix = companion_power_structured(&p, args.t as usize)?;
    let (mut equal, mut delta) = (None, None);
    if args.check {
        let direct = p.companion().power(args.t as i32)?;
        let d = matrix.max_abs_diff(&direct);
        equal = Some(d <= 1e-12 * (1.0 + direct.max_entry_norm()));
        delta = Some(d);
    }
    let report = PowerReport { command: "power", side: p.side(), t: args.t, matrix, structured_equals_direct: equal, max_entry_delta: delta };
    let mut summary = String::new();
    for row in report.matrix.rows() {
        let cells: Vec<String> = row.iter().map(|&q| show_q(q)).collect();
        let _ = writeln!(summary, "{}", cells.join("  "));
    }
    if let (Some(e), Some(d)) = (equal, delta) {
        let _ = writeln!(summary, "structured equals direct: {e} (max entry delta {d:.3e})");
    }
    emit_json(args.json.as_deref(), &report, &summary)
}

#[derive(Serialize)]
struct CompareRow {
    label: String,
    q0_norm: f64,
    alpha: f64,
    opfer: f64,
    alpha_le_opfer: bool,
}

#[derive(Serialize)]
struct RandomSummary {
    count: usize,
    seed: u64,
    min_q0: f64,
    max_degree: usize,
    violations: usize,
}

#[derive(Serialize)]
struct CompareReport {
    command: &'static str,
    rows: Vec<CompareRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    random: Option<RandomSummary>,
}

fn compare_row(label: String, p: &QPolynomial) -> CompareRow {
    let c = opfer_comparison(p);
    CompareRow { label, q0_norm: p.coeffs()[0].norm(), alpha: c.alpha, opfer: c.opfer, alpha_le_opfer: c.alpha_le_opfer }
}

fn random_left(rng: &mut ChaCha8Rng, max_degree: usize, min_q0: f64) -> QPolynomial {
    let m = rng.gen_range(1..=max_degree);
    let s = rng.gen_range(0.1..5.0);
    let mut lower: Vec<Quaternion> =
        (0..m).map(|_| Quaternion::new(rng.gen_range(-s..s), rng.gen_range(-s..s), rng.gen_range(-s..s), rng.gen_range(-s..s))).collect();
    let n0 = lower[0].norm();
    if n0 < min_q0 {
        let target = min_q0 * rng.gen_range(1.0..3.0);
        lower[0] = if n0 > 0.0 { lower[0].scale(target / n0) } else { Quaternion::real(target) };
    }
    QPolynomial::monic(Side::Left, &lower).expect("monic by construction")
}

fn compare(args: CompareArgs) -> Outcome {
    if args.poly.is_empty() && args.random == 0 {
        return Err(Failure::Usage("compare needs --poly or --random".into()));
    }
    if args.max_degree == 0 {
        return Err(Failure::Usage("--max-degree must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for path in &args.poly {
        let p: QPolynomial = read_json(path)?;
        if p.side() != Side::Left {
            return Err(Failure::domain("side-mismatch", format!("{}: the comparison is defined for left polynomials", path.display())));
        }
        rows.push(compare_row(stem(path), &p));
    }
    let random = (args.random > 0).then(|| {
        eprintln!("seed: {}", args.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let violations = (0..args.random)
            .filter(|_| {
                let p = random_left(&mut rng, args.max_degree, args.min_q0);
                !opfer_comparison(&p).alpha_le_opfer
            })
            .count();
        RandomSummary { count: args.random, seed: args.seed, min_q0: args.min_q0, max_degree: args.max_degree, violations }
    });
    let report = CompareReport { command: "compare", rows, random };

    let mut summary = format!("{:<24} {:>10} {:>10} {:>10}  alpha <= T\n", "polynomial", "|q0|", "alpha", "T");
    let csv_rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let _ = writeln!(summary, "{:<24} {:>10.4} {:>10.4} {:>10.4}  {}", r.label, r.q0_norm, r.alpha, r.opfer, r.alpha_le_opfer);
            vec![r.label.clone(), num(r.q0_norm), num(r.alpha), num(r.opfer), r.alpha_le_opfer.to_string()]
        })
        .collect();
    if let Some(r) = &report.random {
        let _ = writeln!(summary, "{} random polynomials with |q0| >= {}: {} violations (seed {})", r.count, r.min_q0, r.violations, r.seed);
    }
    emit_csv(args.out.csv.as_deref(), &["label", "q0_norm", "alpha", "opfer", "alpha_le_opfer"], &csv_rows)?;
    emit_json(args.out.json.as_deref(), &report, &summary)
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}
