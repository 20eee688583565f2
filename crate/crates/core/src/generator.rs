//! Generators: positive functions on (0, ∞) that induce beta-type functions.
//!
//! All evaluation runs in log domain (for the canonical family,
//! log f(x) = log b + p·log x + x·log a); exponentiation happens once at the
//! boundary so that aˣ cannot overflow intermediate arithmetic.

use crate::error::{Error, Result};
use crate::special;

/// Relative tolerance used to match abscissae in sample tables. Lookup keys
/// such as t·x carry one or two rounding errors, so "one of the tabulated
/// abscissae" is decided up to this slack; it is far below any spacing a
/// sensible table would use, so this is not interpolation.
pub const ABSCISSA_MATCH_TOL: f64 = 1e-12;

pub(crate) fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveInput(x))
    }
}

/// Exponentiate a log-domain value, failing when the result is not a
/// positive finite f64.
pub(crate) fn exp_checked(log_value: f64) -> Result<f64> {
    let value = log_value.exp();
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Overflow { log_value })
    }
}

/// Log-domain evaluation contract shared by generators and by the exp∘g
/// wrappers used on the Cauchy-difference side.
pub trait LogEval {
    /// log f(x) for the underlying positive function f.
    fn log_eval(&self, x: f64) -> Result<f64>;

    /// log B_f(x, y) = log f(x) + log f(y) − log f(x+y).
    ///
    /// Implementations may cancel factors that drop out algebraically (the
    /// canonical family cancels aˣ) as long as the value agrees with the
    /// three-term form at rounding level.
    fn log_beta(&self, x: f64, y: f64) -> Result<f64> {
        check_positive(x)?;
        check_positive(y)?;
        Ok((self.log_eval(x)? + self.log_eval(y)?) - self.log_eval(x + y)?)
    }
}

/// Built-in generators.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    /// Euler Gamma, the motivating example; B_Γ is the Euler Beta function.
    Gamma,
    /// f(x) = 2x·aˣ, the family whose beta-type function is the harmonic mean.
    Harmonic { a: f64 },
}

/// A positive function on (0, ∞), given in closed form, as a builtin, or as
/// tabulated samples.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// f(x) = b·x^p·aˣ with b, a > 0.
    Canonical { b: f64, p: f64, a: f64 },
    Builtin(Builtin),
    Sampled(SampleTable),
}

impl Generator {
    /// Canonical generator f(x) = b·x^p·aˣ.
    pub fn canonical(b: f64, p: f64, a: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale b must be positive, got {b}")));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("base a must be positive, got {a}")));
        }
        if !p.is_finite() {
            return Err(Error::InvalidParameter(format!("exponent p must be finite, got {p}")));
        }
        Ok(Generator::Canonical { b, p, a })
    }

    /// The Euler Gamma builtin.
    pub fn gamma() -> Self {
        Generator::Builtin(Builtin::Gamma)
    }

    /// The harmonic-mean generator f(x) = 2x·aˣ.
    pub fn harmonic(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("base a must be positive, got {a}")));
        }
        Ok(Generator::Builtin(Builtin::Harmonic { a }))
    }

    /// A tabulated generator.
    pub fn sampled(table: SampleTable) -> Self {
        Generator::Sampled(table)
    }

    /// f(x), exponentiated from the log-domain value.
    pub fn eval(&self, x: f64) -> Result<f64> {
        exp_checked(self.log_eval(x)?)
    }

    /// Canonical parameters (b, p, a) when they are known without fitting.
    pub fn canonical_params(&self) -> Option<(f64, f64, f64)> {
        match *self {
            Generator::Canonical { b, p, a } => Some((b, p, a)),
            Generator::Builtin(Builtin::Harmonic { a }) => Some((2.0, 1.0, a)),
            _ => None,
        }
    }

    /// Short human-readable description for reports.
    pub fn describe(&self) -> String {
        match self {
            Generator::Canonical { b, p, a } => format!("canonical b={b} p={p} a={a}"),
            Generator::Builtin(Builtin::Gamma) => "gamma".to_string(),
            Generator::Builtin(Builtin::Harmonic { a }) => format!("harmonic a={a}"),
            Generator::Sampled(table) => format!("sampled ({} points)", table.len()),
        }
    }
}

fn canonical_log_eval(b: f64, p: f64, a: f64, x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok(b.ln() + p * x.ln() + x * a.ln())
}

fn canonical_log_beta(b: f64, p: f64, x: f64, y: f64) -> Result<f64> {
    check_positive(x)?;
    check_positive(y)?;
    // The aˣ factor cancels algebraically (Theorem on the canonical family),
    // so it is dropped before any arithmetic: results are bit-identical
    // across bases a.
    Ok(b.ln() + p * ((x.ln() + y.ln()) - (x + y).ln()))
}

impl LogEval for Generator {
    fn log_eval(&self, x: f64) -> Result<f64> {
        match self {
            Generator::Canonical { b, p, a } => canonical_log_eval(*b, *p, *a, x),
            Generator::Builtin(Builtin::Gamma) => special::ln_gamma(x),
            Generator::Builtin(Builtin::Harmonic { a }) => canonical_log_eval(2.0, 1.0, *a, x),
            Generator::Sampled(table) => {
                check_positive(x)?;
                table.log_lookup(x)
            }
        }
    }

    fn log_beta(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Generator::Canonical { b, p, .. } => canonical_log_beta(*b, *p, x, y),
            Generator::Builtin(Builtin::Harmonic { .. }) => canonical_log_beta(2.0, 1.0, x, y),
            Generator::Builtin(Builtin::Gamma) => {
                check_positive(x)?;
                check_positive(y)?;
                special::ln_beta(x, y)
            }
            Generator::Sampled(_) => {
                check_positive(x)?;
                check_positive(y)?;
                Ok((self.log_eval(x)? + self.log_eval(y)?) - self.log_eval(x + y)?)
            }
        }
    }
}

/// Ordered table of (x, f(x)) samples with x, f(x) > 0.
///
/// No interpolation: evaluation away from the tabulated abscissae is a
/// [`Error::SampleMiss`]. Identification works from the raw samples and never
/// needs x+y.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    xs: Vec<f64>,
    log_fxs: Vec<f64>,
}

impl SampleTable {
    /// Build a table from (x, f(x)) pairs; rows may arrive in any order.
    pub fn new(mut pairs: Vec<(f64, f64)>) -> Result<Self> {
        for &(x, fx) in &pairs {
            if !(x > 0.0 && x.is_finite() && fx > 0.0 && fx.is_finite()) {
                return Err(Error::NonPositiveSample { x, fx });
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pairs.windows(2) {
            if (w[1].0 - w[0].0).abs() <= ABSCISSA_MATCH_TOL * w[1].0.abs() {
                return Err(Error::DuplicateAbscissa(w[1].0));
            }
        }
        if pairs.len() < 3 {
            return Err(Error::RankDeficient(format!(
                "need at least 3 distinct abscissae, got {}",
                pairs.len()
            )));
        }
        let xs: Vec<f64> = pairs.iter().map(|&(x, _)| x).collect();
        let log_fxs: Vec<f64> = pairs.iter().map(|&(_, fx)| fx.ln()).collect();
        Ok(SampleTable { xs, log_fxs })
    }

    /// Parse the two-column CSV format `x,fx` (optional header row, rows in
    /// any order, `.` as decimal point).
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let (c1, c2) = match (cols.next(), cols.next()) {
                (Some(a), Some(b)) if cols.next().is_none() => (a.trim(), b.trim()),
                _ => {
                    return Err(Error::CsvParse {
                        line: idx + 1,
                        msg: format!("expected two comma-separated columns, got {line:?}"),
                    })
                }
            };
            if idx == 0 && c1.eq_ignore_ascii_case("x") && c2.eq_ignore_ascii_case("fx") {
                continue;
            }
            let x: f64 = c1.parse().map_err(|_| Error::CsvParse {
                line: idx + 1,
                msg: format!("cannot parse abscissa {c1:?}"),
            })?;
            let fx: f64 = c2.parse().map_err(|_| Error::CsvParse {
                line: idx + 1,
                msg: format!("cannot parse value {c2:?}"),
            })?;
            pairs.push((x, fx));
        }
        SampleTable::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Sorted abscissae.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// log f(x) per abscissa, in the same order as [`Self::xs`].
    pub fn log_values(&self) -> &[f64] {
        &self.log_fxs
    }

    /// Index of the tabulated abscissa matching `x`, if any.
    pub fn position(&self, x: f64) -> Option<usize> {
        let idx = self.xs.partition_point(|&v| v < x);
        for cand in [idx.wrapping_sub(1), idx] {
            if let Some(&v) = self.xs.get(cand) {
                if (v - x).abs() <= ABSCISSA_MATCH_TOL * v.abs() {
                    return Some(cand);
                }
            }
        }
        None
    }

    fn log_lookup(&self, x: f64) -> Result<f64> {
        self.position(x)
            .map(|i| self.log_fxs[i])
            .ok_or(Error::SampleMiss(x))
    }

    /// Sample median abscissa (lower median for even lengths); the fallback
    /// reference point of the λ diagnostic.
    pub fn median_abscissa(&self) -> f64 {
        self.xs[(self.xs.len() - 1) / 2]
    }
}

/// A named real-valued function on (0, ∞): the `g` of Cauchy differences and
/// the `f` of the logarithmic-function checks.
pub struct RealFn<'a> {
    name: String,
    f: Box<dyn Fn(f64) -> Result<f64> + 'a>,
}

impl std::fmt::Debug for RealFn<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RealFn({})", self.name)
    }
}

impl<'a> RealFn<'a> {
    /// Wrap an infallible closure.
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + 'a) -> Self {
        RealFn {
            name: name.into(),
            f: Box::new(move |x| Ok(f(x))),
        }
    }

    /// Wrap a fallible closure.
    pub fn try_new(name: impl Into<String>, f: impl Fn(f64) -> Result<f64> + 'a) -> Self {
        RealFn {
            name: name.into(),
            f: Box::new(f),
        }
    }

    /// g = log∘f for a generator f; the log-domain dual used throughout the
    /// Cauchy-difference analyses.
    pub fn log_of(generator: &'a Generator) -> Self {
        RealFn {
            name: format!("log({})", generator.describe()),
            f: Box::new(move |x| generator.log_eval(x)),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        (self.f)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// f = exp∘g viewed through the log-domain contract, so beta-type machinery
/// can run on a Cauchy-side function without ever exponentiating.
pub struct ExpOf<'a, 'b>(pub &'a RealFn<'b>);

impl LogEval for ExpOf<'_, '_> {
    fn log_eval(&self, x: f64) -> Result<f64> {
        self.0.eval(x)
    }
}
