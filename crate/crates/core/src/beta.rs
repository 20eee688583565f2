//! Beta-type functions B_f(x,y) = f(x)f(y)/f(x+y), Cauchy differences
//! C_g(x,y) = g(x+y) − g(x) − g(y), and the duality B_f = exp∘(−C_{log∘f}).

use crate::error::Result;
use crate::generator::{check_positive, exp_checked, LogEval, RealFn};
use crate::grid::AnalysisGrid;

/// B_f(x, y) = f(x)·f(y)/f(x+y), evaluated as one exponentiation of the
/// log-domain combination.
///
/// Symmetric under swap of x and y by construction (the log-domain sum is
/// commutative), and positive whenever the inputs are valid.
pub fn eval_beta_type<F: LogEval + ?Sized>(f: &F, x: f64, y: f64) -> Result<f64> {
    exp_checked(f.log_beta(x, y)?)
}

/// log B_f(x, y); the overflow-free route for extreme generators.
pub fn log_beta_type<F: LogEval + ?Sized>(f: &F, x: f64, y: f64) -> Result<f64> {
    f.log_beta(x, y)
}

/// The closed form b·(xy/(x+y))^p of the beta-type function induced by a
/// canonical generator; agrees with [`eval_beta_type`] for every base a.
///
/// Callers are responsible for b > 0 and x, y > 0.
pub fn canonical_beta_value(b: f64, p: f64, x: f64, y: f64) -> f64 {
    b * (x * y / (x + y)).powf(p)
}

/// C_g(x, y) = g(x+y) − g(x) − g(y).
pub fn eval_cauchy_difference(g: &RealFn<'_>, x: f64, y: f64) -> Result<f64> {
    check_positive(x)?;
    check_positive(y)?;
    Ok((g.eval(x + y)? - g.eval(x)?) - g.eval(y)?)
}

/// Worst-case relative discrepancy of the identity B_f·exp(C_{log∘f}) = 1
/// over the grid pairs.
///
/// Computed as |expm1(log B_f + C_{log f})| so that neither side is ever
/// exponentiated alone; zero up to rounding for every generator.
pub fn duality_check<F: LogEval + ?Sized>(f: &F, grid: &AnalysisGrid) -> Result<f64> {
    duality_check_pairs(f, grid.pairs())
}

/// [`duality_check`] over an explicit pair list; useful for sampled
/// generators whose tables are not closed under the grid sums.
pub fn duality_check_pairs<F: LogEval + ?Sized>(
    f: &F,
    pairs: impl IntoIterator<Item = (f64, f64)>,
) -> Result<f64> {
    let mut max = 0.0_f64;
    for (x, y) in pairs {
        let lb = f.log_beta(x, y)?;
        let c = (f.log_eval(x + y)? - f.log_eval(x)?) - f.log_eval(y)?;
        let discrepancy = (lb + c).exp_m1().abs();
        if discrepancy > max {
            max = discrepancy;
        }
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;

    #[test]
    fn harmonic_family_beta_at_two_two() {
        // B_f(2,2) = b for canonical generators; with b = 2 this is the
        // reflexivity value 2 that pins the harmonic mean.
        let f = Generator::canonical(2.0, 1.0, 1.0).unwrap();
        assert!((eval_beta_type(&f, 2.0, 2.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_factor_cancels() {
        let f = Generator::canonical(2.0, 1.0, 7.0).unwrap();
        assert!((eval_beta_type(&f, 3.0, 6.0).unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn gamma_beta_at_one_one() {
        let f = Generator::gamma();
        assert!((eval_beta_type(&f, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn canonical_closed_form_examples() {
        assert!((canonical_beta_value(2.0, 1.0, 2.0, 2.0) - 2.0).abs() < 1e-15);
        assert_eq!(canonical_beta_value(1.0, 0.0, 0.37, 19.2), 1.0);
        assert!((canonical_beta_value(3.0, 2.0, 1.0, 1.0) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn cauchy_difference_examples() {
        let log = RealFn::new("log", |x: f64| x.ln());
        let c = eval_cauchy_difference(&log, 1.0, 1.0).unwrap();
        assert!((c - std::f64::consts::LN_2).abs() < 1e-15);

        // Additive maps have zero Cauchy difference (here with dyadic inputs
        // the arithmetic is exact, so the zero is bitwise).
        let additive = RealFn::new("0.75x", |x: f64| 0.75 * x);
        assert_eq!(eval_cauchy_difference(&additive, 0.5, 2.0).unwrap(), 0.0);

        // g = log∘f with f(x) = 2x: C_g(2,2) = −log B_f(2,2) = −log 2.
        let f = Generator::canonical(2.0, 1.0, 1.0).unwrap();
        let g = RealFn::log_of(&f);
        let c = eval_cauchy_difference(&g, 2.0, 2.0).unwrap();
        assert!((c + std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn duality_holds_for_all_generator_kinds() {
        let grid = AnalysisGrid::default();
        let canonical = Generator::canonical(2.0, 1.0, 1.0).unwrap();
        assert!(duality_check(&canonical, &grid).unwrap() <= 1e-12);
        assert!(duality_check(&Generator::gamma(), &grid).unwrap() <= 1e-12);
    }

    #[test]
    fn duality_on_sampled_generator() {
        // f(x) = 5x²·3ˣ tabulated on {1, 2, 3}; the pair (1, 2) has its sum
        // tabulated, so both routes are evaluable.
        let f = |x: f64| 5.0 * x * x * 3.0_f64.powf(x);
        let table =
            crate::generator::SampleTable::new((1..=3).map(|i| (i as f64, f(i as f64))).collect())
                .unwrap();
        let g = Generator::sampled(table);
        assert!(duality_check_pairs(&g, [(1.0, 2.0)]).unwrap() <= 1e-12);
        // A pair whose sum is missing surfaces the miss.
        assert!(matches!(
            duality_check_pairs(&g, [(2.0, 2.0)]),
            Err(crate::error::Error::SampleMiss(_))
        ));
    }
}
