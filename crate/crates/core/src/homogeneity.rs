//! Homogeneity analysis of beta-type functions: defect measurement against a
//! candidate degree, degree estimation, and identification of canonical
//! generator parameters (b, p, a) from samples.
//!
//! Defects are multiplicative and measured in log domain: the homogeneity
//! identity B_f(tx,ty) = t^p·B_f(x,y) spans many orders of magnitude, so the
//! per-triple defect is |expm1(log B_f(tx,ty) − log B_f(x,y) − p·log t)|.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{check_positive, LogEval, SampleTable};
use crate::grid::AnalysisGrid;

/// Worst-case and mean violation of p-homogeneity over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct DefectReport {
    /// The degree the identity was tested against.
    #[serde(rename = "p")]
    pub p_tested: f64,
    #[serde(rename = "defect_max")]
    pub max_defect: f64,
    #[serde(rename = "defect_mean")]
    pub mean_defect: f64,
    /// The (x, y, t) triple attaining the maximum.
    #[serde(rename = "defect_argmax")]
    pub argmax_triple: (f64, f64, f64),
}

/// Least-squares degree estimate from t-ratios of log B_f.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DegreeEstimate {
    /// Estimated homogeneity degree.
    pub p: f64,
    /// RMS of the regression residuals; large values flag that no degree
    /// fits (the generator is not canonical).
    pub residual_rms: f64,
}

/// Recovered canonical parameters and fit diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    #[serde(rename = "b")]
    pub b_hat: f64,
    #[serde(rename = "p")]
    pub p_hat: f64,
    #[serde(rename = "a")]
    pub a_hat: f64,
    pub residual_rms: f64,
    pub residual_max: f64,
    /// Condition estimate (σ_max/σ_min) of the regression design.
    #[serde(rename = "condition")]
    pub condition_estimate: f64,
    /// Per-sample (x, log-domain residual).
    #[serde(skip)]
    pub per_point: Vec<(f64, f64)>,
}

/// Affinity diagnostic for λ(x) = log f(x) − log f(x₀) − p·log(x/x₀).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LambdaReport {
    /// Slope of the fitted affine λ̂(x) = c·x + d; equals log a on canonical
    /// data.
    pub c_hat: f64,
    /// Intercept of the fitted affine.
    pub d_hat: f64,
    /// max |λ(x) − λ̂(x)| over the samples; near zero certifies canonical
    /// form at the tested degree.
    pub max_deviation: f64,
    /// Reference abscissa x₀ (1 when tabulated, else the sample median).
    pub reference: f64,
}

/// Violation of B_f(tx,ty) = t^p·B_f(x,y) over the grid triples.
///
/// Sampled generators generally miss the dilated abscissae; identification
/// for those goes through [`fit_generator`] instead.
pub fn homogeneity_defect<F: LogEval + ?Sized>(
    f: &F,
    p: f64,
    grid: &AnalysisGrid,
) -> Result<DefectReport> {
    let lts: Vec<f64> = grid.ts().iter().map(|&t| t.ln()).collect();
    let mut max_defect = f64::NEG_INFINITY;
    let mut argmax = (0.0, 0.0, 0.0);
    let mut sum = 0.0;
    let mut count = 0usize;
    for &x in grid.xs() {
        for &y in grid.ys() {
            let lb_xy = f.log_beta(x, y)?;
            for (&t, &lt) in grid.ts().iter().zip(&lts) {
                let lb_txy = f.log_beta(t * x, t * y)?;
                let defect = ((lb_txy - lb_xy) - p * lt).exp_m1().abs();
                sum += defect;
                count += 1;
                if defect > max_defect {
                    max_defect = defect;
                    argmax = (x, y, t);
                }
            }
        }
    }
    Ok(DefectReport {
        p_tested: p,
        max_defect,
        mean_defect: sum / count as f64,
        argmax_triple: argmax,
    })
}

/// Least-squares estimate of the homogeneity degree from
/// log B_f(tx,ty) − log B_f(x,y) = p·log t over all triples with t ≠ 1.
///
/// Only t-ratios enter, so the estimate is invariant under rescaling of the
/// generator; b never appears.
pub fn estimate_degree<F: LogEval + ?Sized>(f: &F, grid: &AnalysisGrid) -> Result<DegreeEstimate> {
    let mut distinct: Vec<f64> = grid.ts().iter().copied().filter(|&t| t != 1.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::DegenerateGrid);
    }

    let mut observations: Vec<(f64, f64)> = Vec::new();
    for &x in grid.xs() {
        for &y in grid.ys() {
            let lb_xy = f.log_beta(x, y)?;
            for &t in grid.ts() {
                if t == 1.0 {
                    continue;
                }
                let d = f.log_beta(t * x, t * y)? - lb_xy;
                observations.push((t.ln(), d));
            }
        }
    }
    let sum_lt2: f64 = observations.iter().map(|(lt, _)| lt * lt).sum();
    let sum_ltd: f64 = observations.iter().map(|(lt, d)| lt * d).sum();
    let p = sum_ltd / sum_lt2;
    let ss: f64 = observations
        .iter()
        .map(|(lt, d)| {
            let r = d - p * lt;
            r * r
        })
        .sum();
    Ok(DegreeEstimate {
        p,
        residual_rms: (ss / observations.len() as f64).sqrt(),
    })
}

/// Identify canonical parameters from samples by linear least squares on
/// log f(x) = log b + p·log x + x·log a.
///
/// The design columns (1, log x, x) are poorly scaled over wide x-ranges, so
/// the solve goes through an orthogonal factorization (SVD), never the
/// normal equations.
pub fn fit_generator(samples: &SampleTable) -> Result<FitReport> {
    let n = samples.len();
    let xs = samples.xs();
    let design = DMatrix::from_fn(n, 3, |r, c| match c {
        0 => 1.0,
        1 => xs[r].ln(),
        _ => xs[r],
    });
    let svd = design.svd(true, true);
    let sigma_max = svd.singular_values.max();
    let sigma_min = svd.singular_values.min();
    if !(sigma_min > sigma_max * 1e-12) {
        return Err(Error::RankDeficient(format!(
            "design columns numerically collinear (sigma ratio {:e})",
            sigma_min / sigma_max
        )));
    }
    let rhs = DVector::from_column_slice(samples.log_values());
    let beta = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::RankDeficient(e.to_string()))?;

    let mut per_point = Vec::with_capacity(n);
    let mut ss = 0.0;
    let mut residual_max = 0.0_f64;
    for i in 0..n {
        let predicted = beta[0] + beta[1] * xs[i].ln() + beta[2] * xs[i];
        let r = samples.log_values()[i] - predicted;
        ss += r * r;
        residual_max = residual_max.max(r.abs());
        per_point.push((xs[i], r));
    }
    Ok(FitReport {
        b_hat: beta[0].exp(),
        p_hat: beta[1],
        a_hat: beta[2].exp(),
        residual_rms: (ss / n as f64).sqrt(),
        residual_max,
        condition_estimate: sigma_max / sigma_min,
        per_point,
    })
}

/// Extract λ(x) = log f(x) − log f(x₀) − p·log(x/x₀) from samples and fit an
/// affine λ̂(x) = c·x + d; a near-zero deviation certifies canonical form at
/// this degree, with c = log a.
///
/// `reference` designates x₀; when `None`, x₀ = 1 if tabulated, else the
/// sample median abscissa.
pub fn lambda_diagnostic(
    samples: &SampleTable,
    p: f64,
    reference: Option<f64>,
) -> Result<LambdaReport> {
    let ref_idx = match reference {
        Some(r) => samples.position(r).ok_or(Error::MissingReference(r))?,
        None => match samples.position(1.0) {
            Some(idx) => idx,
            None => (samples.len() - 1) / 2,
        },
    };
    let x0 = samples.xs()[ref_idx];
    let lf0 = samples.log_values()[ref_idx];

    let xs = samples.xs();
    let lambdas: Vec<f64> = (0..samples.len())
        .map(|i| (samples.log_values()[i] - lf0) - p * (xs[i] / x0).ln())
        .collect();

    let (c_hat, d_hat) = fit_affine(xs, &lambdas);
    let max_deviation = xs
        .iter()
        .zip(&lambdas)
        .map(|(&x, &l)| (l - (c_hat * x + d_hat)).abs())
        .fold(0.0_f64, f64::max);
    Ok(LambdaReport {
        c_hat,
        d_hat,
        max_deviation,
        reference: x0,
    })
}

/// Centered simple regression; safe here because the abscissae are distinct.
fn fit_affine(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean_x: f64 = xs.iter().sum::<f64>() / n;
    let mean_y: f64 = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    (slope, mean_y - slope * mean_x)
}

/// Violation of the exponential Cauchy equation φ_t(x+y) = φ_t(x)·φ_t(y)
/// for the dilation ratio φ_t(x) = f(tx)/(t^p·f(x)).
///
/// Zero exactly when B_f is p-homogeneous at this t; the identity dilation
/// t = 1 gives zero bitwise.
pub fn exponential_cauchy_check<F: LogEval + ?Sized>(
    f: &F,
    t: f64,
    p: f64,
    grid: &AnalysisGrid,
) -> Result<f64> {
    check_positive(t)?;
    let lt = t.ln();
    let log_phi = |x: f64| -> Result<f64> { Ok((f.log_eval(t * x)? - p * lt) - f.log_eval(x)?) };
    let mut max = 0.0_f64;
    for &x in grid.xs() {
        for &y in grid.ys() {
            let d = (log_phi(x + y)? - log_phi(x)?) - log_phi(y)?;
            max = max.max(d.exp_m1().abs());
        }
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;

    fn exact_samples(b: f64, p: f64, a: f64, xs: &[f64]) -> SampleTable {
        SampleTable::new(
            xs.iter()
                .map(|&x| (x, b * x.powf(p) * a.powf(x)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn canonical_defect_vanishes_at_true_degree() {
        let f = Generator::canonical(3.0, 2.0, 5.0).unwrap();
        let report = homogeneity_defect(&f, 2.0, &AnalysisGrid::default()).unwrap();
        assert!(report.max_defect <= 1e-10, "defect {}", report.max_defect);
        assert!(report.mean_defect <= report.max_defect);
    }

    #[test]
    fn wrong_degree_yields_large_defect() {
        // Testing degree 1 against true degree 2: the grid's extreme
        // dilation t = 10 exposes |t^(2-1) − 1| = 9.
        let f = Generator::canonical(3.0, 2.0, 5.0).unwrap();
        let report = homogeneity_defect(&f, 1.0, &AnalysisGrid::default()).unwrap();
        assert!(report.max_defect >= 8.0, "defect {}", report.max_defect);
    }

    #[test]
    fn gamma_is_not_homogeneous_spot_checks() {
        let grid = AnalysisGrid::default();
        for &p in &[-5.0, -1.0, 0.0, 0.37, 1.0, 5.0] {
            let report = homogeneity_defect(&Generator::gamma(), p, &grid).unwrap();
            assert!(report.max_defect > 0.01, "p={p} defect {}", report.max_defect);
        }
    }

    #[test]
    fn degree_estimation_recovers_canonical_degrees() {
        let grid = AnalysisGrid::default();
        let est = estimate_degree(&Generator::canonical(2.0, 1.0, 1.0).unwrap(), &grid).unwrap();
        assert!((est.p - 1.0).abs() <= 1e-9);
        assert!(est.residual_rms <= 1e-10);

        let est = estimate_degree(&Generator::canonical(7.0, -3.5, 2.0).unwrap(), &grid).unwrap();
        assert!((est.p + 3.5).abs() <= 1e-9);

        let est = estimate_degree(&Generator::gamma(), &grid).unwrap();
        assert!(est.residual_rms > 0.01);
    }

    #[test]
    fn degenerate_dilations_are_rejected() {
        let grid = AnalysisGrid::new(
            vec![1.0, 2.0, 3.0],
            vec![1.0, 2.0, 3.0],
            vec![1.0, 2.0, 2.0],
        )
        .unwrap();
        assert_eq!(
            estimate_degree(&Generator::gamma(), &grid).unwrap_err(),
            Error::DegenerateGrid
        );
    }

    #[test]
    fn fit_recovers_exact_canonical_parameters() {
        let samples = exact_samples(5.0, 2.0, 3.0, &[0.5, 1.0, 2.0, 4.0, 8.0]);
        let fit = fit_generator(&samples).unwrap();
        assert!((fit.b_hat / 5.0 - 1.0).abs() <= 1e-8);
        assert!((fit.p_hat / 2.0 - 1.0).abs() <= 1e-8);
        assert!((fit.a_hat / 3.0 - 1.0).abs() <= 1e-8);
        assert!(fit.residual_rms <= fit.residual_max);
        assert!(fit.condition_estimate >= 1.0);
    }

    #[test]
    fn fit_recovers_harmonic_generator_with_unit_base() {
        let samples = exact_samples(2.0, 1.0, 1.0, &[1.0, 2.0, 3.0]);
        let fit = fit_generator(&samples).unwrap();
        assert!((fit.b_hat - 2.0).abs() <= 1e-8);
        assert!((fit.p_hat - 1.0).abs() <= 1e-8);
        assert!((fit.a_hat - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn gamma_samples_do_not_fit_the_canonical_model() {
        let samples = SampleTable::new(
            (1..=10)
                .map(|n| (n as f64, crate::special::gamma(n as f64).unwrap()))
                .collect(),
        )
        .unwrap();
        let fit = fit_generator(&samples).unwrap();
        assert!(fit.residual_rms > 1e-3, "rms {}", fit.residual_rms);
    }

    #[test]
    fn lambda_diagnostic_reads_off_the_base() {
        let samples = exact_samples(5.0, 2.0, 3.0, &[1.0, 2.0, 3.0, 4.0]);
        let report = lambda_diagnostic(&samples, 2.0, None).unwrap();
        assert_eq!(report.reference, 1.0);
        assert!(report.max_deviation <= 1e-12);
        assert!((report.c_hat - 3.0_f64.ln()).abs() <= 1e-12);

        // Pure power function: λ ≡ 0.
        let samples = exact_samples(4.0, -1.5, 1.0, &[1.0, 2.0, 3.0, 4.0]);
        let report = lambda_diagnostic(&samples, -1.5, None).unwrap();
        assert!(report.c_hat.abs() <= 1e-12);
        assert!(report.d_hat.abs() <= 1e-12);
        assert!(report.max_deviation <= 1e-12);
    }

    #[test]
    fn lambda_diagnostic_flags_gamma() {
        let samples = SampleTable::new(
            (1..=10)
                .map(|n| (n as f64, crate::special::gamma(n as f64).unwrap()))
                .collect(),
        )
        .unwrap();
        let report = lambda_diagnostic(&samples, 0.0, None).unwrap();
        assert!(report.max_deviation > 0.05);
    }

    #[test]
    fn lambda_reference_handling() {
        let samples = exact_samples(5.0, 2.0, 3.0, &[2.0, 4.0, 6.0, 8.0]);
        // x = 1 is absent, so the lower median 4.0 is used.
        let report = lambda_diagnostic(&samples, 2.0, None).unwrap();
        assert_eq!(report.reference, 4.0);
        assert!((report.c_hat - 3.0_f64.ln()).abs() <= 1e-12);
        // Designated references must be tabulated.
        assert_eq!(
            lambda_diagnostic(&samples, 2.0, Some(5.0)).unwrap_err(),
            Error::MissingReference(5.0)
        );
    }

    #[test]
    fn exponential_cauchy_check_examples() {
        let grid = AnalysisGrid::default();
        let f = Generator::canonical(3.0, 2.0, 5.0).unwrap();
        assert!(exponential_cauchy_check(&f, 2.0, 2.0, &grid).unwrap() <= 1e-10);
        assert!(exponential_cauchy_check(&Generator::gamma(), 2.0, 0.0, &grid).unwrap() > 0.01);
        // The identity dilation is exact for any generator and degree.
        assert_eq!(
            exponential_cauchy_check(&Generator::gamma(), 1.0, 0.7, &grid).unwrap(),
            0.0
        );
    }
}
