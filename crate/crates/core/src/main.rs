use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use robin_spectra::effective::EffectiveProblem;
use robin_spectra::geometry::{arclength_resample, max_curvature_on_arc, BoundaryCurve, RobinArc, SampledGeometry};
use robin_spectra::harness::{predict, run_sweep, ProblemSpec};
use robin_spectra::model_operators::{airy_zeros, power_well_spectrum, slab_ground};
use robin_spectra::strip2d::{StripProblem, StripVariant};

#[derive(Parser)]
#[command(name = "robin-spectra", version, about = "Laplacian eigenvalues with a strong Robin condition on a boundary arc")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an α sweep from a JSON config and write report.csv / report.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Print model-operator spectra as CSV.
    Models {
        #[arg(long, value_enum)]
        op: ModelOp,
        #[arg(long, default_value_t = 10.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Eigenvalues of the two effective operators on the arc.
    Effective {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.25)]
        rho: f64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 512)]
        n_grid: usize,
    },
    /// Eigenvalues of a strip form and the leading-order prediction.
    Strip {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long, default_value = "p")]
        variant: StripVariant,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        n_s: usize,
        #[arg(long, default_value_t = 32)]
        n_t: usize,
    },
    /// Describe a boundary curve and its curvature maximum on the arc.
    Geometry {
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Print curvature extrema, turning number and sampling defects.
        #[arg(long)]
        inspect: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelOp {
    Slab,
    Power,
    Line,
    Airy,
}

#[derive(Args)]
struct GeometryArgs {
    /// `circle:R` or `ellipse:a,b`
    #[arg(long, default_value = "circle:1")]
    shape: String,
    /// Raw parameter angle where arclength (and the Robin arc) starts.
    #[arg(long, default_value_t = 0.0)]
    phase: f64,
    /// Length of the Robin arc; half the perimeter when omitted.
    #[arg(long)]
    ell: Option<f64>,
    #[arg(long, default_value_t = 1024)]
    samples: usize,
}

impl GeometryArgs {
    fn build(&self) -> Result<(SampledGeometry, RobinArc)> {
        let curve = BoundaryCurve::from_shape(&self.shape, self.phase)?;
        let geom = arclength_resample(&curve, self.samples)?;
        let ell = self.ell.unwrap_or(0.5 * geom.length);
        let arc = RobinArc::new(ell, geom.length)?;
        Ok((geom, arc))
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out, workers } => {
            let spec = ProblemSpec::load(&config).with_context(|| format!("reading {}", config.display()))?;
            let report = run_sweep(&spec, workers)?;
            let (csv, json) = report.write(&out)?;
            for f in &report.metadata.failures {
                eprintln!("row alpha = {} failed: {}", f.alpha, f.error);
            }
            println!("wrote {} and {}", csv.display(), json.display());
        }
        Command::Models { op, alpha, r, m, beta, n } => match op {
            ModelOp::Slab => {
                let g = slab_ground(alpha, r)?;
                println!("alpha,r,kappa,E1,psi0_sq");
                println!("{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", g.alpha, g.r, g.kappa, g.e1, g.psi0_sq);
            }
            ModelOp::Power | ModelOp::Line => {
                let halfline = matches!(op, ModelOp::Power);
                let s = power_well_spectrum(m, beta, halfline, n)?;
                println!("m,beta,halfline,n,E");
                for (i, e) in s.eigenvalues.iter().enumerate() {
                    println!("{m},{beta:.16e},{halfline},{},{e:.16e}", i + 1);
                }
            }
            ModelOp::Airy => {
                println!("n,a_n");
                for (i, a) in airy_zeros(n).iter().enumerate() {
                    println!("{},{a:.16e}", i + 1);
                }
            }
        },
        Command::Effective { geometry, alpha, rho, n, n_grid } => {
            let (geom, arc) = geometry.build()?;
            let info = max_curvature_on_arc(&geom, arc)?;
            let eff = EffectiveProblem::new(&geom, arc, info);
            let lp = eff.lambda_prime_eigs(alpha, n, n_grid)?;
            let lr = eff.lambda_rho_eigs(alpha, rho, n, n_grid)?;
            println!("n,E_lambda_prime,E_lambda_rho");
            for i in 0..n {
                println!("{},{:.16e},{:.16e}", i + 1, lp.eigenvalues[i], lr.eigenvalues[i]);
            }
        }
        Command::Strip { geometry, alpha, sigma, variant, n, n_s, n_t } => {
            let (geom, arc) = geometry.build()?;
            let info = max_curvature_on_arc(&geom, arc)?;
            let sol = StripProblem::new(&geom, arc, info).solve(alpha, sigma, variant, n, n_s, n_t)?;
            eprintln!("variant {variant}: r = {}, A = {}, n_s = {}, n_t = {}, dof = {}", sol.r, sol.bound_a, sol.n_s, sol.n_t, sol.spectrum.dof);
            println!("n,E_strip,E_predicted");
            for (i, e) in sol.spectrum.eigenvalues.iter().enumerate() {
                let p = predict(&info, arc.ell, alpha, i + 1, true).unwrap_or(f64::NAN);
                println!("{},{e:.16e},{p:.16e}", i + 1);
            }
        }
        Command::Geometry { geometry, inspect } => {
            let (geom, arc) = geometry.build()?;
            let info = max_curvature_on_arc(&geom, arc);
            let mut out = serde_json::json!({
                "shape": geometry.shape,
                "phase_origin": geometry.phase,
                "length": geom.length,
                "ell": arc.ell,
            });
            match info {
                Ok(info) => out["curvature_max"] = serde_json::to_value(info)?,
                Err(e) => out["curvature_max_error"] = e.to_string().into(),
            }
            if inspect {
                let kmin = geom.k.iter().copied().fold(f64::INFINITY, f64::min);
                let kmax = geom.k.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                out["k_min"] = kmin.into();
                out["k_max"] = kmax.into();
                out["turning_number"] = geom.turning_number().into();
                out["frenet_residual"] = geom.frenet_residual().into();
                out["speed_defect"] = geom.speed_defect().into();
                out["samples"] = geom.n_samples().into();
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}
