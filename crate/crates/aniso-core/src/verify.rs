//! Certification engine: gate-identity verification up to global phase,
//! subspace/leakage analysis, algebra and separability checks, power-law
//! scaling fits, and the parity-kick suppression study.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 float math under no_std
use num_traits::Float;

use crate::circuits::{compile, trotter_cphase, Circuit, Schedule};
use crate::error::CoreError;
use crate::model::{exchange_generator, su2_deviation, AnisotropyParams, LogicalQubit};
use crate::spin_algebra::{
    fidelity_raw, operator_schmidt, phase_aligned_distance_raw, subspace_restrict, Operator,
    StateVector,
};

/// Default tolerances. Exact finite-time identities are held to 1e-9
/// fidelity deficit with 1e-12 leakage; the disambiguated 17/55-step
/// constructions to 1e-6. Scaling points below the numerical floor are
/// excluded from fits.
pub const TOL_EXACT: f64 = 1e-9;
pub const TOL_APPROX: f64 = 1e-6;
pub const TOL_LEAKAGE: f64 = 1e-12;
pub const FIT_FLOOR: f64 = 1e-13;

/// Result of one gate-identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub label: String,
    /// Global-phase-insensitive trace fidelity in [0, 1].
    pub fidelity: f64,
    /// Frobenius norm of the difference after optimal phase alignment.
    pub phase_aligned_distance: f64,
    /// Subspace leakage; `None` for full-space checks.
    pub leakage: Option<f64>,
    pub step_count: usize,
    /// Identifier of the formula interpretation in effect.
    pub interpretation_id: String,
    pub passed: bool,
    pub tolerance: f64,
}

/// A power-law study: deviation against a scan variable, with a log-log
/// least-squares fit.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub label: String,
    /// (scan value, deviation) pairs actually measured.
    pub points: Vec<(f64, f64)>,
    /// Fitted exponent of deviation ~ x^p (sign convention: for 1/n decay
    /// the reported exponent is positive).
    pub fitted_exponent: f64,
    /// RMS residual of the fit in log space; never hidden.
    pub fit_residual: f64,
    /// Points excluded for sitting within 10x of the numerical floor.
    pub floor_dropped: usize,
    /// True when too few usable points remained for a meaningful fit.
    pub degenerate: bool,
}

/// Least-squares slope of ln(y) against ln(x), dropping points within 10x
/// of [`FIT_FLOOR`]. Returns (slope, rms residual, dropped, degenerate).
pub fn loglog_fit(points: &[(f64, f64)]) -> (f64, f64, usize, bool) {
    let usable: Vec<(f64, f64)> =
        points.iter().copied().filter(|&(_, y)| y > 10.0 * FIT_FLOOR).collect();
    let dropped = points.len() - usable.len();
    if usable.len() < 3 {
        return (0.0, 0.0, dropped, true);
    }
    let n = usable.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &usable {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mut ss = 0.0;
    for &(x, y) in &usable {
        let r = y.ln() - (slope * x.ln() + intercept);
        ss += r * r;
    }
    (slope, (ss / n).sqrt(), dropped, false)
}

/// Compiles `c`, optionally restricts both sides to a subspace (recording
/// the compiled unitary's leakage), and applies the pass rule
/// `fidelity >= 1 - tol` and, when a subspace is given,
/// `leakage <= TOL_LEAKAGE`.
pub fn verify_identity(
    c: &Circuit,
    target: &Operator,
    params: &AnisotropyParams,
    subspace: Option<&[StateVector]>,
    tol: f64,
) -> Result<VerificationReport, CoreError> {
    let u = compile(c, params)?;
    if u.dim() != target.dim() {
        return Err(CoreError::DimensionMismatch { left: u.dim(), right: target.dim() });
    }
    let (fidelity, distance, leakage) = match subspace {
        None => (
            fidelity_raw(u.matrix(), target.matrix()),
            phase_aligned_distance_raw(u.matrix(), target.matrix()),
            None,
        ),
        Some(basis) => {
            let (ru, leak) = subspace_restrict(&u, basis)?;
            let (rt, _) = subspace_restrict(target, basis)?;
            (fidelity_raw(&ru, &rt), phase_aligned_distance_raw(&ru, &rt), Some(leak))
        }
    };
    let passed = fidelity >= 1.0 - tol && leakage.map_or(true, |l| l <= TOL_LEAKAGE);
    Ok(VerificationReport {
        label: c.label.clone(),
        fidelity,
        phase_aligned_distance: distance,
        leakage,
        step_count: c.declared_steps,
        interpretation_id: interpretation_of(&c.label),
        passed,
        tolerance: tol,
    })
}

fn interpretation_of(label: &str) -> String {
    match label.find("17step.") {
        Some(pos) => String::from(&label[pos..]),
        None => String::from("literal"),
    }
}

/// Max deviation over the cyclic su(2) relations of the encoded operators.
pub fn su2_check(logical: LogicalQubit, n: usize) -> Result<f64, CoreError> {
    su2_deviation(logical, n)
}

/// Operator-Schmidt rank and second singular value across {1}|{2}.
pub fn separability_check(u: &Operator) -> Result<(usize, f64), CoreError> {
    let spec = operator_schmidt(u)?;
    Ok((spec.rank(), spec.second_value()))
}

/// Convergence study of a circuit family against a fixed target:
/// `error(n) = 1 - fidelity`, fit in log-log. The reported exponent is the
/// decay order in 1/n (positive for converging families).
pub fn trotter_scaling(
    family: impl Fn(usize) -> Result<Circuit, CoreError>,
    target: &Operator,
    params: &AnisotropyParams,
    n_list: &[usize],
    label: impl Into<String>,
) -> Result<ScalingReport, CoreError> {
    if n_list.len() < 4 {
        return Err(CoreError::InsufficientPoints { needed: 4, got: n_list.len() });
    }
    let mut points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let c = family(n)?;
        let u = compile(&c, params)?;
        let err = (1.0 - fidelity_raw(u.matrix(), target.matrix())).max(0.0);
        points.push((n as f64, err));
    }
    let (slope, resid, dropped, degenerate) = loglog_fit(&points);
    Ok(ScalingReport {
        label: label.into(),
        points,
        fitted_exponent: -slope,
        fit_residual: resid,
        floor_dropped: dropped,
        degenerate,
    })
}

/// Base instance for the parity-kick and cancellation studies.
#[derive(Debug, Clone, PartialEq)]
pub struct KickBase {
    pub phi: f64,
    pub n_reps: usize,
    pub params: AnisotropyParams,
}

impl KickBase {
    /// One full zz-dressing period (total angle 4 pi) with short pulses:
    /// the regime in which the pulse-train twirl cancels the first-order
    /// residual of eliminated generators exactly.
    pub fn default_instance() -> Self {
        KickBase {
            phi: 4.0 * core::f64::consts::PI,
            n_reps: 32,
            params: AnisotropyParams::along_x(0.05, 0.1),
        }
    }
}

/// Both deviation series of a probe scan: the quadratic (fidelity-deficit)
/// and linear (phase-aligned distance) responses to the injected error.
#[derive(Debug, Clone, PartialEq)]
pub struct KickScan {
    pub fidelity_deficit: ScalingReport,
    pub distance: ScalingReport,
}

fn kick_perturbed_compile(
    base: &KickBase,
    error_generator: &Operator,
    lambda: f64,
) -> Result<Operator, CoreError> {
    let n = base.n_reps.max(1);
    let theta = base.phi / (4.0 * n as f64);
    let h_pulse = exchange_generator(1, 2, theta, &base.params, 2)?
        .add(&error_generator.scale_re(lambda));
    let u = crate::spin_algebra::expm_evolve(&h_pulse)?;
    let z1 = crate::model::z_gate(1, 2)?;
    let zz = z1.mul(&crate::model::z_gate(2, 2)?);
    // time order per block: Z1, U, Z1Z2, U  ->  matrix U ZZ U Z1
    let block = u.mul(&zz).mul(&u).mul(&z1);
    Ok(block.pow(2 * n))
}

/// Parity-kick suppression study: adds `lambda * error_generator` to every
/// exchange-pulse generator of the repeated CPHASE train and scans the
/// deviation from the unperturbed compile over `lambda`.
///
/// Two fits are returned. The fidelity deficit is quadratic in the
/// effective error, so first-order elimination reads as exponent >= 1.8
/// there (cleanly ~4 for generators whose pulse-train twirl cancels
/// exactly); surviving (commuting) generators read as exponent ~1 in the
/// distance, which responds linearly. A single metric cannot express both
/// readings, so both are measured and reported.
pub fn parity_kick_suppression(
    error_generator: &Operator,
    lambda_list: &[f64],
    base: &KickBase,
    label: impl Into<String>,
) -> Result<KickScan, CoreError> {
    let dev = error_generator.hermiticity_deviation();
    if dev > 1e-12 {
        return Err(CoreError::NotHermitian { deviation: dev });
    }
    let u0 = kick_perturbed_compile(base, error_generator, 0.0)?;
    let mut pts_fid = Vec::with_capacity(lambda_list.len());
    let mut pts_dist = Vec::with_capacity(lambda_list.len());
    for &lam in lambda_list {
        let ul = kick_perturbed_compile(base, error_generator, lam)?;
        let f = fidelity_raw(ul.matrix(), u0.matrix());
        let d = phase_aligned_distance_raw(ul.matrix(), u0.matrix());
        pts_fid.push((lam, (1.0 - f).max(0.0)));
        pts_dist.push((lam, d));
    }
    let label = label.into();
    let (s_f, r_f, drop_f, deg_f) = loglog_fit(&pts_fid);
    let (s_d, r_d, drop_d, deg_d) = loglog_fit(&pts_dist);
    Ok(KickScan {
        fidelity_deficit: ScalingReport {
            label: alloc::format!("{label}.fid"),
            points: pts_fid,
            fitted_exponent: s_f,
            fit_residual: r_f,
            floor_dropped: drop_f,
            degenerate: deg_f,
        },
        distance: ScalingReport {
            label: alloc::format!("{label}.dist"),
            points: pts_dist,
            fitted_exponent: s_d,
            fit_residual: r_d,
            floor_dropped: drop_d,
            degenerate: deg_d,
        },
    })
}

/// Cancellation of a decoupled anisotropic term with strength independent
/// of the exchange coupling: the same lambda scan as
/// [`parity_kick_suppression`], with the probe being the extra interaction
/// itself. At strength 0 this reduces to the plain CPHASE verification.
pub fn anisotropy_cancellation_check(
    base: &KickBase,
    probe: &Operator,
    lambda_list: &[f64],
    label: impl Into<String>,
) -> Result<(KickScan, VerificationReport), CoreError> {
    let scan = parity_kick_suppression(probe, lambda_list, base, label)?;
    // Strength-0 verification against the CPHASE target.
    let c = trotter_cphase(base.phi, base.n_reps, &Schedule::Constant(base.params))?;
    let zz = crate::spin_algebra::embed_spin(crate::spin_algebra::Axis::Z, 1, 2)?
        .mul(&crate::spin_algebra::embed_spin(crate::spin_algebra::Axis::Z, 2, 2)?);
    let target = crate::spin_algebra::expm_evolve(&zz.scale_re(base.phi))?;
    // The train is an approximation; hold it to the Trotter regime rather
    // than the exact-identity tolerance.
    let report = verify_identity(&c, &target, &base.params, None, 1e-3)?;
    Ok((scan, report))
}

/// Scans the achieved angle of the continuous x gate over an eta grid and
/// returns `(max |phi|, argmax eta)` under the selected interpretation.
pub fn seventeen_step_range_scan(epsilon: f64, eta_grid: &[f64]) -> (f64, f64) {
    let interp = crate::circuits::SELECTED_SEVENTEEN;
    let mut best = (0.0f64, 0.0f64);
    for &eta in eta_grid {
        let phi = interp.phi_magnitude(eta, epsilon).abs();
        if phi > best.0 {
            best = (phi, eta);
        }
    }
    best
}
