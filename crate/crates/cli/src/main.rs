//! Command-line front end: matrix I/O, analysis reports, theorem
//! verification runs, growth-curve export.
//!
//! Exit codes are a stable contract:
//!   0  success / conclusion holds
//!   1  verified conclusion fails
//!   2  parse or usage failure
//!   3  exact-nonnegativity rejection
//!   4  numerical failure
//!   10 theorem not applicable (hypothesis failed or undecided)

mod io;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use perron_core::error::PerronError;
use perron_core::generators::{self, RandomKind};
use perron_core::growth::{self, schemes::WeightingScheme, GridParams};
use perron_core::lattice::{
    invariant_ideals, CoordinateIdeal, LatticeVector, NormChoice, PositiveOperator,
};
use perron_core::spectral::{self, SpectrumReport};
use perron_core::structure;
use perron_core::theorems;
use perron_core::tol;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "perron",
    version,
    about = "Spectral analysis of nonnegative matrices as positive operators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonIo {
    /// Lattice norm: 1, 2, or inf
    #[arg(long, default_value = "inf")]
    norm: String,
    /// Output file (stdout when omitted); written atomically
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis report: spectrum, irreducibility, cyclicity,
    /// boundedness
    Analyze {
        matrix: PathBuf,
        #[command(flatten)]
        common: CommonIo,
        /// Admit matrices with negative or complex entries
        /// (spectral-only mode: no Perron structure sections)
        #[arg(long)]
        allow_general: bool,
        /// Power/Cesaro horizon
        #[arg(long, default_value_t = 100)]
        horizon: usize,
        /// Also evaluate the diagonal-power condition to this horizon
        #[arg(long)]
        zhang: Option<usize>,
        /// Pretty-print the JSON report
        #[arg(long)]
        pretty: bool,
    },
    /// Resolvent growth curve along a ray, as CSV
    Growth {
        matrix: PathBuf,
        #[command(flatten)]
        common: CommonIo,
        /// Ray direction as a+bi (default 1+0i, recorded in the header)
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Direction vector file: directed norms ||R(r_n,T)|z||| are added
        #[arg(long)]
        z: Option<PathBuf>,
        #[arg(long, default_value_t = tol::GRID_N_MIN)]
        nmin: u32,
        #[arg(long, default_value_t = tol::GRID_N_MAX)]
        nmax: u32,
        /// Divide the matrix by its spectral radius first
        #[arg(long)]
        rescale: bool,
    },
    /// Verify a theorem's hypotheses and conclusion on a matrix
    Verify {
        /// One of: thm1.2a thm1.2b thm1.2c prop3.1 thm3.5 thm4.1 cor4.2
        /// kr2.1a kr2.1b kr2.1c cor5.6 thm5.8 appA1
        theorem: String,
        matrix: PathBuf,
        #[command(flatten)]
        common: CommonIo,
        /// Peripheral value as a+bi (default: first peripheral eigenvalue
        /// by angle)
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Eigenvector file (default: computed from ker(lambda - T))
        #[arg(long)]
        z: Option<PathBuf>,
        /// Weighting scheme: cesaro, abel, or power
        #[arg(long, default_value = "cesaro")]
        scheme: String,
        /// Scheme prefix depth
        #[arg(long, default_value_t = 48)]
        scheme_depth: u64,
        /// prop3.1 mode: orbit or fixed
        #[arg(long, default_value = "fixed")]
        mode: String,
        /// Super-fixed functional file for kr2.1c
        #[arg(long)]
        xprime: Option<PathBuf>,
        /// Invariant ideal for appA1 as 1-based indices, e.g. 1,3
        /// (default: smallest nontrivial invariant ideal, else full space)
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = tol::GRID_N_MIN)]
        nmin: u32,
        #[arg(long, default_value_t = tol::GRID_N_MAX)]
        nmax: u32,
        #[arg(long)]
        pretty: bool,
    },
    /// Generate a test family: writes the matrix plus a ground-truth
    /// sidecar
    Generate {
        /// cycle | jordan | stochastic | dense | reducible
        family: String,
        /// Period for the cycle family
        #[arg(long)]
        p: Option<usize>,
        /// Pole order for the jordan family
        #[arg(long)]
        m: Option<usize>,
        /// Block dimension for the cycle family
        #[arg(long, default_value_t = 1)]
        block_dim: usize,
        /// Cycle lengths to direct-sum onto the jordan family, e.g. 2,3
        #[arg(long)]
        decorate: Option<String>,
        /// Dimension for the random families
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    perron_core::configure_parallelism_from_env();
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<PerronError> for Failure {
    fn from(e: PerronError) -> Self {
        let code = match &e {
            PerronError::NegativeEntry { .. } | PerronError::NotCertified => 3,
            PerronError::EigenFailed { .. } | PerronError::OnSpectrum { .. } => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::ParseFailure> for Failure {
    fn from(e: io::ParseFailure) -> Self {
        Failure::new(2, e.to_string())
    }
}

fn parse_norm(s: &str) -> Result<NormChoice, Failure> {
    match s {
        "1" => Ok(NormChoice::One),
        "2" => Ok(NormChoice::Two),
        "inf" | "∞" => Ok(NormChoice::Inf),
        other => Err(Failure::new(2, format!("unsupported norm {other:?}"))),
    }
}

fn parse_lambda(s: Option<&str>) -> Result<Option<Complex64>, Failure> {
    match s {
        None => Ok(None),
        Some(raw) => io::parse_complex_scalar(raw)
            .map(Some)
            .ok_or_else(|| Failure::new(2, format!("bad complex value {raw:?}; use a+bi"))),
    }
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => io::write_atomic(path, contents)
            .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn load_certified(
    path: &Path,
    norm: NormChoice,
    allow_general: bool,
) -> Result<(PositiveOperator, Vec<u8>), Failure> {
    let (op, bytes) = io::load_operator(path, norm)?;
    if !allow_general && !op.nonneg_certified() {
        // name the first violating entry, 1-based
        for i in 0..op.dim() {
            for j in 0..op.dim() {
                let z = op.matrix().get(i, j);
                if z.im != 0.0 || z.re < 0.0 {
                    return Err(Failure::new(
                        3,
                        format!(
                            "entry ({},{}) = {} violates exact nonnegativity \
                             (use --allow-general for spectral-only analysis)",
                            i + 1,
                            j + 1,
                            io::format_complex(z)
                        ),
                    ));
                }
            }
        }
    }
    Ok((op, bytes))
}

fn default_peripheral_lambda(spec: &SpectrumReport) -> Option<Complex64> {
    spec.peripheral
        .iter()
        .copied()
        .min_by(|a, b| {
            let ta = a.arg().rem_euclid(std::f64::consts::TAU);
            let tb = b.arg().rem_euclid(std::f64::consts::TAU);
            ta.total_cmp(&tb)
        })
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Analyze {
            matrix,
            common,
            allow_general,
            horizon,
            zhang,
            pretty,
        } => cmd_analyze(&matrix, &common, allow_general, horizon, zhang, pretty),
        Cmd::Growth {
            matrix,
            common,
            lambda,
            z,
            nmin,
            nmax,
            rescale,
        } => cmd_growth(&matrix, &common, lambda.as_deref(), z.as_deref(), nmin, nmax, rescale),
        Cmd::Verify {
            theorem,
            matrix,
            common,
            lambda,
            z,
            scheme,
            scheme_depth,
            mode,
            xprime,
            ideal,
            nmin,
            nmax,
            pretty,
        } => cmd_verify(VerifyArgs {
            theorem,
            matrix,
            common,
            lambda,
            z,
            scheme,
            scheme_depth,
            mode,
            xprime,
            ideal,
            nmin,
            nmax,
            pretty,
        }),
        Cmd::Generate {
            family,
            p,
            m,
            block_dim,
            decorate,
            n,
            seed,
            out,
        } => cmd_generate(&family, p, m, block_dim, decorate.as_deref(), n, seed, &out),
    }
}

fn cmd_analyze(
    matrix: &Path,
    common: &CommonIo,
    allow_general: bool,
    horizon: usize,
    zhang: Option<usize>,
    pretty: bool,
) -> Result<i32, Failure> {
    let norm = parse_norm(&common.norm)?;
    let (t, bytes) = load_certified(matrix, norm, allow_general)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let spec = spectral::spectrum(&t)?;
    let irreducibility = if t.nonneg_certified() {
        Some(structure::irreducibility(&t)?)
    } else {
        None
    };
    let cyclicity = spectral::is_cyclic_set(
        &spec.peripheral,
        spec.spectral_radius,
        tol::ANGULAR_TOL,
        Some(t.dim()),
    )?;
    let pc = growth::power_and_cesaro(&t, horizon);
    let abel = match growth::abel_bound(&t, &GridParams::default()) {
        Ok(ab) => Some(ab.verdict),
        Err(PerronError::SpectralRadiusNotOne { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let zhang = match zhang {
        Some(h) => match structure::zhang_condition(&t, h) {
            Ok(v) => Some(v),
            Err(PerronError::SpectralRadiusNotOne { .. })
            | Err(PerronError::NotCertified) => {
                eprintln!("note: diagonal-power condition skipped (needs certified r(T) = 1)");
                None
            }
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    let report = report::AnalysisReport {
        schema_version: report::SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input_sha256: digest,
        n: t.dim(),
        norm_choice: norm.to_string(),
        nonneg_certified: t.nonneg_certified(),
        spectrum: spec,
        irreducibility,
        cyclicity,
        boundedness: report::BoundednessSection {
            power: pc.power,
            cesaro: pc.cesaro,
            sup_power_over_j: pc.sup_power_over_j,
            abel,
        },
        zhang,
        grid: GridParams::default(),
        horizon,
        tolerances: report::pinned_tolerances(),
    };
    emit(common.out.as_deref(), &report.to_json(pretty))?;
    Ok(0)
}

fn cmd_growth(
    matrix: &Path,
    common: &CommonIo,
    lambda: Option<&str>,
    z: Option<&Path>,
    nmin: u32,
    nmax: u32,
    rescale: bool,
) -> Result<i32, Failure> {
    let norm = parse_norm(&common.norm)?;
    let (mut t, _) = load_certified(matrix, norm, true)?;
    let lambda = parse_lambda(lambda)?.unwrap_or(Complex64::new(1.0, 0.0));
    let spec0 = spectral::spectrum(&t)?;
    if rescale {
        if spec0.spectral_radius <= 0.0 {
            return Err(Failure::new(2, "cannot rescale: spectral radius is zero"));
        }
        t = t.rescaled(spec0.spectral_radius)?;
    } else if (spec0.spectral_radius - 1.0).abs() > 1e-8 * t.norm().max(1.0) {
        return Err(Failure::new(
            2,
            format!(
                "spectral radius is {}; the growth grid needs r(T) = 1 (pass --rescale)",
                spec0.spectral_radius
            ),
        ));
    }
    let zvec = match z {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
            let v = io::parse_vector(&text)?;
            if v.dim() != t.dim() {
                return Err(Failure::new(
                    2,
                    format!("vector has {} entries, matrix is {}x{}", v.dim(), t.dim(), t.dim()),
                ));
            }
            Some(v)
        }
        None => None,
    };
    let grid = GridParams::with_range(nmin, nmax);
    let profile = growth::growth_profile(&t, lambda, zvec.as_ref(), &grid)?;

    let mut csv = String::new();
    let _ = writeln!(csv, "# perron growth curve");
    let _ = writeln!(csv, "# lambda = {}", io::format_complex(lambda));
    let _ = writeln!(
        csv,
        "# norm = {norm}, n_min = {nmin}, n_max = {nmax}, rescaled = {rescale}"
    );
    let has_directed = zvec.is_some();
    if has_directed {
        let _ = writeln!(csv, "n,r,norm,directed_norm,residual,directed_residual,retained");
    } else {
        let _ = writeln!(csv, "n,r,norm,residual,retained");
    }
    for p in &profile.points {
        if has_directed {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{}",
                p.n,
                p.r,
                p.norm,
                p.directed_norm.unwrap_or(f64::NAN),
                p.residual,
                p.directed_residual.unwrap_or(f64::NAN),
                p.retained
            );
        } else {
            let _ = writeln!(csv, "{},{},{},{},{}", p.n, p.r, p.norm, p.residual, p.retained);
        }
    }
    let _ = writeln!(
        csv,
        "# fitted_exponent = {}",
        profile
            .fitted_exponent
            .map(|e| e.to_string())
            .unwrap_or_else(|| "unavailable".into())
    );
    if has_directed {
        let _ = writeln!(
            csv,
            "# fitted_directed_exponent = {}",
            profile
                .fitted_directed_exponent
                .map(|e| e.to_string())
                .unwrap_or_else(|| "unavailable".into())
        );
    }
    if let Some(note) = &profile.truncation_note {
        let _ = writeln!(csv, "# note: {note}");
    }
    emit(common.out.as_deref(), csv.trim_end())?;
    Ok(0)
}

struct VerifyArgs {
    theorem: String,
    matrix: PathBuf,
    common: CommonIo,
    lambda: Option<String>,
    z: Option<PathBuf>,
    scheme: String,
    scheme_depth: u64,
    mode: String,
    xprime: Option<PathBuf>,
    ideal: Option<String>,
    nmin: u32,
    nmax: u32,
    pretty: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Failure> {
    let known = [
        "thm1.2a", "thm1.2b", "thm1.2c", "prop3.1", "thm3.5", "thm4.1", "cor4.2", "kr2.1a",
        "kr2.1b", "kr2.1c", "cor5.6", "thm5.8", "appA1",
    ];
    if !known.contains(&args.theorem.as_str()) {
        return Err(Failure::new(
            2,
            format!(
                "unknown theorem id {:?}; known ids: {}",
                args.theorem,
                known.join(", ")
            ),
        ));
    }
    let norm = parse_norm(&args.common.norm)?;
    // theorem checkers gate on positivity themselves
    let (t, _) = load_certified(&args.matrix, norm, true)?;
    let grid = GridParams::with_range(args.nmin, args.nmax);
    let spec = spectral::spectrum(&t)?;
    let lambda = match parse_lambda(args.lambda.as_deref())? {
        Some(l) => l,
        None => default_peripheral_lambda(&spec).unwrap_or(Complex64::new(1.0, 0.0)),
    };
    let zvec = match &args.z {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
            let v = io::parse_vector(&text)?;
            let n = v.norm(norm);
            if n <= 0.0 {
                return Err(Failure::new(2, "direction vector is zero"));
            }
            v.scale(Complex64::new(1.0 / n, 0.0))
        }
        None => theorems::unit_eigenvector(&t, lambda)
            .unwrap_or_else(|| LatticeVector::unit(t.dim(), 0)),
    };
    let scheme = WeightingScheme::by_name(&args.scheme, args.scheme_depth)
        .ok_or_else(|| Failure::new(2, format!("unknown scheme {:?}", args.scheme)))?;
    let j_prefix = scheme.indices().len();

    let (verdict_json, exit_code) = match args.theorem.as_str() {
        "thm1.2a" | "thm1.2b" | "thm1.2c" => {
            let variant = match args.theorem.as_str() {
                "thm1.2a" => theorems::Thm12Variant::A,
                "thm1.2b" => theorems::Thm12Variant::B,
                _ => theorems::Thm12Variant::C,
            };
            let v = theorems::verify_thm_1_2(&t, lambda, &zvec, variant, &grid)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "prop3.1" => {
            let mode = match args.mode.as_str() {
                "orbit" | "power_bounded_orbit" => theorems::Prop31Mode::PowerBoundedOrbit,
                "fixed" | "dominating_fixed_vector" => theorems::Prop31Mode::DominatingFixedVector,
                other => return Err(Failure::new(2, format!("unknown mode {other:?}"))),
            };
            let v = theorems::verify_prop_3_1(&t, lambda, &zvec, mode, tol::POWER_HORIZON)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "thm3.5" => {
            let v = theorems::verify_dae(&t, lambda, &grid)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "thm4.1" => {
            let v = theorems::verify_thm_4_1(&t, lambda, &grid)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "cor4.2" => {
            let v = theorems::verify_cor_4_2(&t, lambda, &grid)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "kr2.1a" | "kr2.1b" | "kr2.1c" => {
            let variant = match args.theorem.as_str() {
                "kr2.1a" => theorems::KrVariant::A,
                "kr2.1b" => theorems::KrVariant::B,
                _ => theorems::KrVariant::C,
            };
            let xp: Option<Vec<f64>> = match &args.xprime {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Failure::new(2, format!("cannot read {}: {e}", path.display()))
                    })?;
                    let v = io::parse_vector(&text)?;
                    let mut out = Vec::with_capacity(v.dim());
                    for (i, e) in v.entries().iter().enumerate() {
                        if e.im != 0.0 {
                            return Err(Failure::new(
                                2,
                                format!("functional entry {} must be real", i + 1),
                            ));
                        }
                        out.push(e.re);
                    }
                    Some(out)
                }
                None => None,
            };
            let v = theorems::verify_kr_2_1(&t, lambda, variant, xp.as_deref(), &grid)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "cor5.6" => {
            let v = theorems::verify_cor_5_6(&t, &scheme, j_prefix, &grid)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        "thm5.8" => {
            let v = theorems::verify_thm_5_8(&t, &scheme, j_prefix, &grid)?;
            (to_json(&v, args.pretty), v.verdict.exit_code())
        }
        "appA1" => {
            let ideal = match &args.ideal {
                Some(spec_str) => {
                    let mut indices = Vec::new();
                    for part in spec_str.split(',') {
                        let idx: usize = part.trim().parse().map_err(|_| {
                            Failure::new(2, format!("bad ideal index {part:?} (1-based)"))
                        })?;
                        if idx == 0 || idx > t.dim() {
                            return Err(Failure::new(
                                2,
                                format!("ideal index {idx} out of range 1..={}", t.dim()),
                            ));
                        }
                        indices.push(idx - 1);
                    }
                    CoordinateIdeal::from_indices(&indices, t.dim())?
                }
                None => {
                    if t.nonneg_certified() {
                        let enumeration = invariant_ideals(&t)?;
                        enumeration
                            .ideals
                            .iter()
                            .find(|i| !i.is_empty() && !i.is_full())
                            .copied()
                            .unwrap_or_else(|| CoordinateIdeal::full(t.dim()))
                    } else {
                        CoordinateIdeal::full(t.dim())
                    }
                }
            };
            let v = theorems::verify_appendix_a1(&t, &ideal)?;
            (to_json(&v, args.pretty), v.exit_code())
        }
        _ => unreachable!("id screened above"),
    };
    emit(args.common.out.as_deref(), &verdict_json)?;
    Ok(exit_code)
}

fn to_json<T: serde::Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("verdict serializes")
    } else {
        serde_json::to_string(value).expect("verdict serializes")
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: &str,
    p: Option<usize>,
    m: Option<usize>,
    block_dim: usize,
    decorate: Option<&str>,
    n: Option<usize>,
    seed: u64,
    out: &Path,
) -> Result<i32, Failure> {
    let (t, truth) = match family {
        "cycle" => {
            let p = p.ok_or_else(|| Failure::new(2, "cycle family needs --p"))?;
            generators::cyclic_family(p, block_dim, seed)?
        }
        "jordan" => {
            let m = m.ok_or_else(|| Failure::new(2, "jordan family needs --m"))?;
            let decorations: Vec<usize> = match decorate {
                Some(list) => list
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Failure::new(2, format!("bad cycle length {s:?}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            generators::jordan_growth_family(m, &decorations)?
        }
        "stochastic" | "dense" | "reducible" => {
            let kind = RandomKind::parse(family).expect("screened");
            let n = n.ok_or_else(|| Failure::new(2, format!("{family} family needs --n")))?;
            generators::random_families(kind, n, seed)?
        }
        other => return Err(Failure::new(2, format!("unknown family {other:?}"))),
    };
    io::write_atomic(out, &io::to_matrix_market(t.matrix()))
        .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", out.display())))?;
    let truth_path = sidecar_path(out);
    io::write_atomic(
        &truth_path,
        &serde_json::to_string_pretty(&truth).expect("truth serializes"),
    )
    .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", truth_path.display())))?;
    eprintln!(
        "wrote {} and ground-truth sidecar {}",
        out.display(),
        truth_path.display()
    );
    Ok(0)
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("truth.json")
}
