//! Experiment harness for the DSC toolkit: dumps kernel weights, probes
//! delta sequences, and runs the waveguide / potential / wave studies,
//! emitting CSV or JSON tables.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numeric
//! failure, 3 geometry error, 4 time-integration divergence.

mod config;
mod table;

use clap::{Args, Parser, Subcommand};
use config::{resolve, resolve_opt, ConfigMap};
use dsc_core::error::DscError;
use dsc_core::kernel::{eval_derivative, KernelFamily, KernelParams};
use dsc_core::solvers::electrostatics::{
    solve_electrostatics, ChargePatch, EdgePotentials, ElectrostaticsProblem,
};
use dsc_core::solvers::wave::{propagate_wave, WavePropagationProblem, BOX_SIDE};
use dsc_core::solvers::waveguide::{
    default_mask_spacing, e_shape_mask, solve_waveguide, t_shape_mask, GuideGeometry,
    WaveguideProblem, SQUARE_SIDE,
};
use dsc_core::weights::build_weights;
use dsc_core::zoo::{
    eval_delta, positivity_and_mass, DeltaSequenceKind, DilationDensity, Quadrature, SequenceParam,
};
use table::{OutputFormat, OutputTable};

#[derive(Parser)]
#[command(name = "dsc", version, about = "Discrete singular convolution toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format: csv or json
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Write the table to this file instead of standard output
    #[arg(long)]
    output: Option<String>,
    /// Plain-text `key = value` config file; flags win on conflict
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel weight tables and pointwise kernel evaluation
    Kernel {
        #[command(subcommand)]
        action: KernelAction,
    },
    /// Delta-sequence convergence and positivity probes
    Zoo(ZooArgs),
    /// TM eigenmodes of the square / T / E waveguide
    Waveguide(WaveguideArgs),
    /// Electrostatic potential in the unit box
    Poisson(PoissonArgs),
    /// Plane-wave propagation error trace
    Wave(WaveArgs),
}

#[derive(Subcommand)]
enum KernelAction {
    /// Dump the 2M+1 collocation weights of one derivative order
    Dump(KernelArgs),
    /// Evaluate the kernel derivative on a uniform sweep of offsets
    Eval(KernelEvalArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// Kernel family: shannon, dirichlet, modified-dirichlet, lagrange, dlvp
    #[arg(long)]
    family: Option<String>,
    /// Grid spacing
    #[arg(long)]
    delta: Option<f64>,
    /// Gaussian window width (absolute); "inf" drops the window
    #[arg(long)]
    sigma: Option<f64>,
    /// Derivative order q, 0..=4
    #[arg(long)]
    order: Option<usize>,
    /// Half bandwidth M
    #[arg(long)]
    half_bandwidth: Option<usize>,
    /// Family order L (Dirichlet-type and Lagrange families)
    #[arg(long)]
    degree: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct KernelEvalArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    /// Sweep start offset
    #[arg(long)]
    from: Option<f64>,
    /// Sweep end offset
    #[arg(long)]
    to: Option<f64>,
    /// Number of sample points
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Args)]
struct ZooArgs {
    /// Kind: impulse, gauss, lorentz, landau, poisson, fejer, fejer-continuous,
    /// dirichlet, modified-dirichlet, dlvp, dilated-gauss, dilated-lorentz
    #[arg(long)]
    kind: Option<String>,
    /// Comma-separated parameter schedule, e.g. "0.5,0.1,0.02"
    #[arg(long)]
    schedule: Option<String>,
    /// Lorentz order n
    #[arg(long)]
    lorentz_n: Option<u32>,
    /// Landau support half-width a
    #[arg(long)]
    landau_a: Option<f64>,
    /// De la Vallee Poussin lag p
    #[arg(long)]
    dlvp_p: Option<u32>,
    /// Test function: cos or one
    #[arg(long)]
    test_fn: Option<String>,
    /// Quadrature half-range
    #[arg(long)]
    range: Option<f64>,
    /// Quadrature panel count
    #[arg(long)]
    panels: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WaveguideArgs {
    /// Grid intervals per axis (square shape)
    #[arg(long)]
    n: Option<usize>,
    /// Half bandwidth M (default: n)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    sigma_over_delta: Option<f64>,
    /// Number of eigenmodes to report
    #[arg(long)]
    modes: Option<usize>,
    /// Cross-section: square, t, or e
    #[arg(long)]
    shape: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PoissonArgs {
    /// Nodes per axis including walls
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    sigma_over_delta: Option<f64>,
    /// Drop the charge patch and solve the Laplace problem
    #[arg(long)]
    laplace_only: bool,
    /// Wall potentials in volts
    #[arg(long)]
    top: Option<f64>,
    #[arg(long)]
    bottom: Option<f64>,
    #[arg(long)]
    left: Option<f64>,
    #[arg(long)]
    right: Option<f64>,
    /// Charge patch extent and material
    #[arg(long)]
    patch_x0: Option<f64>,
    #[arg(long)]
    patch_x1: Option<f64>,
    #[arg(long)]
    patch_y0: Option<f64>,
    #[arg(long)]
    patch_y1: Option<f64>,
    /// Patch charge density in C/m^2
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    epsilon_r: Option<f64>,
    /// Extra probe point "x,y" (repeatable); the box center is always probed
    #[arg(long)]
    probe: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WaveArgs {
    /// Spatial dimension: 1 or 3
    #[arg(long)]
    dims: Option<usize>,
    /// Periodic nodes per axis
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    sigma_over_delta: Option<f64>,
    /// Time step (default: from the RK4 stability rule)
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    report_every: Option<f64>,
    /// Material factor eps * nu
    #[arg(long)]
    eps_nu: Option<f64>,
    #[command(flatten)]
    common: Common,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

struct CliError {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: 1, message: message.into() }
}

impl From<DscError> for CliError {
    fn from(e: DscError) -> Self {
        let code = match &e {
            DscError::Divergence { .. } => 4,
            DscError::Geometry(_) => 3,
            DscError::NumericFailure(_)
            | DscError::DegenerateBoundary(_)
            | DscError::UnderResolved { .. }
            | DscError::ShapeMismatch(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        usage(s)
    }
}

fn load_config(common: &Common) -> Result<ConfigMap, CliError> {
    match &common.config {
        Some(path) => Ok(ConfigMap::load(path)?),
        None => Ok(ConfigMap::default()),
    }
}

fn emit(table: OutputTable, common: &Common, cfg: &mut ConfigMap) -> Result<(), CliError> {
    let format = common
        .format
        .or(cfg.take::<OutputFormat>("format").map_err(usage)?)
        .unwrap_or(OutputFormat::Csv);
    let output = common.output.clone().or(cfg.take::<String>("output").map_err(usage)?);
    let result = match output {
        Some(path) => {
            let mut f = std::fs::File::create(&path)
                .map_err(|e| usage(format!("cannot create '{path}': {e}")))?;
            table.write(format, &mut f)
        }
        None => table.write(format, &mut std::io::stdout().lock()),
    };
    result.map_err(|e| usage(format!("write failed: {e}")))?;
    Ok(())
}

fn parse_family(name: &str) -> Result<KernelFamily, CliError> {
    Ok(match name {
        "shannon" => KernelFamily::RegularizedShannon,
        "dirichlet" => KernelFamily::RegularizedDirichlet,
        "modified-dirichlet" => KernelFamily::RegularizedModifiedDirichlet,
        "lagrange" => KernelFamily::RegularizedLagrange,
        "dlvp" => KernelFamily::DeLaValleePoussin,
        other => return Err(usage(format!("unknown kernel family '{other}'"))),
    })
}

fn resolve_kernel_args(args: &KernelArgs, cfg: &mut ConfigMap) -> Result<(KernelParams, usize), CliError> {
    let family_name = resolve(args.family.clone(), cfg, "family", "shannon".to_string())?;
    let family = parse_family(&family_name)?;
    let delta = resolve(args.delta, cfg, "delta", 1.0)?;
    let sigma = resolve(args.sigma, cfg, "sigma", 3.2 * delta)?;
    let m = resolve(args.half_bandwidth, cfg, "half-bandwidth", 16)?;
    let degree = resolve(args.degree, cfg, "degree", m)?;
    let q = resolve(args.order, cfg, "order", 0)?;
    let params = KernelParams::new(family, delta, sigma, m, degree)?;
    Ok((params, q))
}

fn cmd_kernel_dump(args: KernelArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.common)?;
    let (params, q) = resolve_kernel_args(&args, &mut cfg)?;
    let table_w = build_weights(&params, q)?;
    let mut t = OutputTable::new(&["j[index]", &format!("weight[1/Delta^{q}]")]);
    let m = params.half_bandwidth as i64;
    for j in -m..=m {
        t.push(vec![j as f64, table_w.get(j)]);
    }
    emit(t, &args.common, &mut cfg)?;
    cfg.finish().map_err(usage)
}

fn cmd_kernel_eval(args: KernelEvalArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.kernel.common)?;
    let (params, q) = resolve_kernel_args(&args.kernel, &mut cfg)?;
    let from = resolve(args.from, &mut cfg, "from", -3.0 * params.delta)?;
    let to = resolve(args.to, &mut cfg, "to", 3.0 * params.delta)?;
    let count = resolve(args.count, &mut cfg, "count", 121)?;
    if count < 2 || !(to > from) {
        return Err(usage("need count >= 2 and to > from"));
    }
    let mut t = OutputTable::new(&["offset[length]", &format!("value[1/length^{q}]")]);
    for k in 0..count {
        let x = from + (to - from) * k as f64 / (count - 1) as f64;
        t.push(vec![x, eval_derivative(&params, q, x)?]);
    }
    emit(t, &args.kernel.common, &mut cfg)?;
    cfg.finish().map_err(usage)
}

fn cmd_zoo(args: ZooArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.common)?;
    let kind_name = resolve(args.kind.clone(), &mut cfg, "kind", "gauss".to_string())?;
    let lorentz_n = resolve(args.lorentz_n, &mut cfg, "lorentz-n", 1)?;
    let landau_a = resolve(args.landau_a, &mut cfg, "landau-a", 1.0)?;
    let dlvp_p = resolve(args.dlvp_p, &mut cfg, "dlvp-p", 1)?;
    let kind = match kind_name.as_str() {
        "impulse" => DeltaSequenceKind::Impulse,
        "gauss" => DeltaSequenceKind::Gauss,
        "lorentz" => DeltaSequenceKind::Lorentz { n: lorentz_n },
        "landau" => DeltaSequenceKind::Landau { a: landau_a },
        "poisson" => DeltaSequenceKind::PoissonKernel,
        "fejer" => DeltaSequenceKind::FejerDiscrete,
        "fejer-continuous" => DeltaSequenceKind::FejerContinuous,
        "dirichlet" => DeltaSequenceKind::Dirichlet,
        "modified-dirichlet" => DeltaSequenceKind::ModifiedDirichlet,
        "dlvp" => DeltaSequenceKind::DeLaValleePoussin { p: dlvp_p },
        "dilated-gauss" => DeltaSequenceKind::Dilated { density: DilationDensity::Gauss },
        "dilated-lorentz" => DeltaSequenceKind::Dilated { density: DilationDensity::Lorentz },
        other => return Err(usage(format!("unknown delta-sequence kind '{other}'"))),
    };
    let schedule_text = resolve(args.schedule.clone(), &mut cfg, "schedule", "0.5,0.1,0.02".to_string())?;
    let schedule: Vec<f64> = schedule_text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| usage(format!("bad schedule entry '{s}': {e}"))))
        .collect::<Result<_, _>>()?;
    if schedule.is_empty() {
        return Err(usage("empty schedule"));
    }
    let test_name = resolve(args.test_fn.clone(), &mut cfg, "test-fn", "cos".to_string())?;
    let test_fn: fn(f64) -> f64 = match test_name.as_str() {
        "cos" => |x| x.cos(),
        "one" => |_| 1.0,
        other => return Err(usage(format!("unknown test function '{other}' (expected cos or one)"))),
    };
    let range = resolve(args.range, &mut cfg, "range", 30.0)?;
    let panels = resolve(args.panels, &mut cfg, "panels", 40_000)?;
    let quad = Quadrature::new(-range, range, panels);

    let mut t = OutputTable::new(&[
        "param[1]",
        "integral[1]",
        "abs_error[1]",
        "min_value[1]",
        "mass[1]",
    ]);
    for alpha in schedule {
        let p = SequenceParam::new(alpha);
        let integral = quad.integrate(|x| eval_delta(&kind, &p, x).unwrap_or(0.0) * test_fn(x));
        let report = positivity_and_mass(&kind, &p, &quad)?;
        t.push(vec![
            alpha,
            integral,
            (integral - test_fn(0.0)).abs(),
            report.min_value,
            report.mass,
        ]);
    }
    emit(t, &args.common, &mut cfg)?;
    cfg.finish().map_err(usage)
}

fn cmd_waveguide(args: WaveguideArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.common)?;
    let shape = resolve(args.shape.clone(), &mut cfg, "shape", "square".to_string())?;
    let n = resolve(args.n, &mut cfg, "n", 24)?;
    let m = resolve(args.m, &mut cfg, "m", n)?;
    let r = resolve(args.sigma_over_delta, &mut cfg, "sigma-over-delta", 3.2)?;
    let modes = resolve(args.modes, &mut cfg, "modes", 10)?;
    let geometry = match shape.as_str() {
        "square" => GuideGeometry::Square { intervals: n },
        "t" => GuideGeometry::Masked { mask: t_shape_mask(), spacing: default_mask_spacing() },
        "e" => GuideGeometry::Masked { mask: e_shape_mask(), spacing: default_mask_spacing() },
        other => return Err(usage(format!("unknown shape '{other}' (expected square, t, or e)"))),
    };
    let spacing = match &geometry {
        GuideGeometry::Square { intervals } => SQUARE_SIDE / *intervals as f64,
        GuideGeometry::Masked { spacing, .. } => *spacing,
    };
    let r = if matches!(geometry, GuideGeometry::Masked { .. }) && args.sigma_over_delta.is_none() {
        4.8
    } else {
        r
    };
    let problem = WaveguideProblem {
        geometry,
        kernel: KernelParams::shannon(spacing, r, m)?,
        n_modes: modes,
        dispersion: None,
    };
    let report = solve_waveguide(&problem)?;
    let mut t = if report.analytic.is_some() {
        OutputTable::new(&[
            "mode[index]",
            "eigenvalue[1/m^2]",
            "analytic[1/m^2]",
            "abs_error[1/m^2]",
        ])
    } else {
        OutputTable::new(&["mode[index]", "eigenvalue[1/m^2]"])
    };
    for (i, k2) in report.eigenvalues.iter().enumerate() {
        match (&report.analytic, &report.abs_errors) {
            (Some(a), Some(e)) => t.push(vec![(i + 1) as f64, *k2, a[i], e[i]]),
            _ => t.push(vec![(i + 1) as f64, *k2]),
        }
    }
    emit(t, &args.common, &mut cfg)?;
    cfg.finish().map_err(usage)
}

fn cmd_poisson(args: PoissonArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.common)?;
    let n = resolve(args.nodes, &mut cfg, "nodes", 32)?;
    let m = resolve(args.m, &mut cfg, "m", 16)?;
    let r = resolve(args.sigma_over_delta, &mut cfg, "sigma-over-delta", 3.2)?;
    let laplace_only =
        args.laplace_only || resolve(None::<bool>, &mut cfg, "laplace-only", false)?;
    let edges = EdgePotentials {
        bottom: resolve(args.bottom, &mut cfg, "bottom", 0.0)?,
        top: resolve(args.top, &mut cfg, "top", 10.0)?,
        left: resolve(args.left, &mut cfg, "left", 0.0)?,
        right: resolve(args.right, &mut cfg, "right", 0.0)?,
    };
    let patch = ChargePatch {
        x_range: (
            resolve(args.patch_x0, &mut cfg, "patch-x0", 0.41)?,
            resolve(args.patch_x1, &mut cfg, "patch-x1", 0.59)?,
        ),
        y_range: (
            resolve(args.patch_y0, &mut cfg, "patch-y0", 0.72)?,
            resolve(args.patch_y1, &mut cfg, "patch-y1", 0.88)?,
        ),
        density: resolve(args.density, &mut cfg, "density", 1e-7)?,
        epsilon_r: resolve(args.epsilon_r, &mut cfg, "epsilon-r", 100.0)?,
    };
    let mut probes: Vec<(f64, f64)> = vec![(0.5, 0.5)];
    let probe_cfg = resolve_opt::<String>(None, &mut cfg, "probe")?;
    for text in args.probe.iter().chain(probe_cfg.iter()) {
        let (x, y) = text
            .split_once(',')
            .ok_or_else(|| usage(format!("probe '{text}' must be 'x,y'")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| usage(format!("bad probe coordinate '{s}': {e}")))
        };
        probes.push((parse(x)?, parse(y)?));
    }

    let problem = ElectrostaticsProblem {
        nodes_per_axis: n,
        kernel: KernelParams::shannon(1.0 / (n - 1) as f64, r, m)?,
        edges,
        patches: if laplace_only { vec![] } else { vec![patch] },
    };
    let report = solve_electrostatics(&problem)?;

    let mut t = OutputTable::new(&["x[m]", "y[m]", "potential[V]"]);
    for i in 0..n {
        for j in 0..n {
            let h = 1.0 / (n - 1) as f64;
            t.push(vec![
                i as f64 * h,
                j as f64 * h,
                report.field.values[ndarray_ix(&[i, j])],
            ]);
        }
    }
    for (x, y) in probes {
        t.push(vec![x, y, report.probe(x, y)?]);
    }
    emit(t, &args.common, &mut cfg)?;
    cfg.finish().map_err(usage)
}

fn ndarray_ix(ix: &[usize]) -> ndarray::IxDyn {
    ndarray::IxDyn(ix)
}

fn cmd_wave(args: WaveArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.common)?;
    let dims = resolve(args.dims, &mut cfg, "dims", 1)?;
    let n = resolve(args.n, &mut cfg, "n", 24)?;
    let m = resolve(args.m, &mut cfg, "m", n)?;
    let r = resolve(args.sigma_over_delta, &mut cfg, "sigma-over-delta", 3.2)?;
    let dt = resolve_opt(args.dt, &mut cfg, "dt")?;
    let t_end = resolve(args.t_end, &mut cfg, "t-end", 10.0)?;
    let report_every = resolve(args.report_every, &mut cfg, "report-every", 1.0)?;
    let eps_nu = resolve(args.eps_nu, &mut cfg, "eps-nu", 1.0)?;
    let problem = WavePropagationProblem {
        dims,
        n,
        kernel: KernelParams::shannon(BOX_SIDE / n as f64, r, m)?,
        wavenumbers: vec![1.0; dims],
        eps_nu,
        dt,
        t_end,
        report_every,
    };
    let trace = propagate_wave(&problem)?;
    let mut t = OutputTable::new(&["t[time]", "linf_error[1]", "energy[1]"]);
    for s in &trace.samples {
        t.push(vec![s.t, s.linf_error, s.energy]);
    }
    emit(t, &args.common, &mut cfg)?;
    cfg.finish().map_err(usage)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Kernel { action } => match action {
            KernelAction::Dump(args) => cmd_kernel_dump(args),
            KernelAction::Eval(args) => cmd_kernel_eval(args),
        },
        Command::Zoo(args) => cmd_zoo(args),
        Command::Waveguide(args) => cmd_waveguide(args),
        Command::Poisson(args) => cmd_poisson(args),
        Command::Wave(args) => cmd_wave(args),
    }
}
