//! Adaptive Gauss-Kronrod (G10/K21) integration on finite intervals.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Which substitution handles the semi-infinite outer integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterScheme {
    /// Truncate where the exponential weight drops below the cutoff.
    Truncated,
    /// Map `(0, ∞)` onto `(0, 1)` through `x = t/(1 − t)`.
    Mapped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    /// Absolute tolerance in units of the result's natural energy scale.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub inner_cutoff_epsilon: f64,
    pub outer_scheme: OuterScheme,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            max_subdivisions: 200,
            inner_cutoff_epsilon: 1e-16,
            outer_scheme: OuterScheme::Truncated,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.rel_tol) || !positive(self.abs_tol) || !positive(self.inner_cutoff_epsilon)
        {
            return Err(Error::domain("quadrature config", "tolerances must be positive"));
        }
        if self.inner_cutoff_epsilon >= 1.0 {
            return Err(Error::domain("quadrature config", "inner cutoff must be below 1"));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::domain(
                "quadrature config",
                format!("max_subdivisions must be >= 10, got {}", self.max_subdivisions),
            ));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Result of an integration: value, error estimate and `∫|f|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub abs_value: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn kronrod21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs = WGK[10] * fc.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let abs_value = abs * half.abs();
    let raw_err = ((kronrod - gauss) * half).abs();
    let error = raw_err.max(50.0 * f64::EPSILON * abs_value);
    Segment {
        a,
        b,
        value,
        error,
        abs_value,
    }
}

/// Integrate `f` over the piecewise interval defined by sorted `breakpoints`
/// (at least two), bisecting the worst segment until
/// `error <= max(abs_tol, rel_tol·|value|)` or `max_subdivisions` is hit.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Estimate> {
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let mut segments: Vec<Segment> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| kronrod21(&mut f, w[0], w[1]))
        .collect();
    let budget = max_subdivisions.max(segments.len());

    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let abs_value: f64 = segments.iter().map(|s| s.abs_value).sum();
        let estimate = Estimate {
            value,
            error,
            abs_value,
            subdivisions: segments.len(),
        };
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(estimate);
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        // Stop when the budget is spent or the segment can no longer be split.
        if segments.len() >= budget || mid <= seg.a || mid >= seg.b || !error.is_finite() {
            return Err(Error::Quadrature {
                partial: value,
                error_estimate: error,
                subdivisions: segments.len(),
            });
        }
        segments[worst] = kronrod21(&mut f, seg.a, mid);
        segments.push(kronrod21(&mut f, mid, seg.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_normalized() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-14);
        assert!((g - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kronrod_exact_for_high_degree_polynomials() {
        // K21 integrates degree 31 exactly; odd powers vanish on [-1, 1].
        for p in [0, 2, 10, 20, 30] {
            let exact = 2.0 / (p as f64 + 1.0);
            let s = kronrod21(&mut |x: f64| x.powi(p), -1.0, 1.0);
            assert!((s.value - exact).abs() < 1e-14, "x^{p}: {} vs {exact}", s.value);
        }
        // G10 is exact through degree 19, so low orders show no error.
        let s = kronrod21(&mut |x: f64| x.powi(8), 0.0, 2.0);
        assert!(s.error < 1e-12);
    }

    #[test]
    fn adaptive_resolves_narrow_peak() {
        let a = 1e-3;
        let est = integrate(|x| a / (a * a + x * x), &[0.0, 20.0], 1e-10, 1e-300, 200).unwrap();
        let exact = (20.0f64 / a).atan();
        assert!((est.value - exact).abs() < 1e-9 * exact, "{} vs {exact}", est.value);
        assert!(est.error >= (est.value - exact).abs());
    }

    #[test]
    fn exponential_tail() {
        let est = integrate(|x: f64| (-x).exp(), &[0.0, 1.0, 40.0], 1e-12, 1e-300, 200).unwrap();
        assert!((est.value - (1.0 - (-40.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn nonconvergence_reports_partial() {
        // 1/sqrt(x) singularity with a tiny budget
        let err = integrate(|x: f64| 1.0 / x.sqrt(), &[0.0, 1.0], 1e-14, 1e-300, 10).unwrap_err();
        match err {
            Error::Quadrature {
                partial,
                error_estimate,
                subdivisions,
            } => {
                assert!(partial > 1.5 && partial < 2.0);
                assert!(error_estimate > 0.0);
                assert_eq!(subdivisions, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_integrand_converges_immediately() {
        let est = integrate(|_| 0.0, &[0.0, 1.0, 5.0], 1e-8, 1e-14, 200).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.error, 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let mut c = QuadratureConfig::default();
        c.max_subdivisions = 5;
        assert!(c.validate().is_err());
        let c = QuadratureConfig::default().with_rel_tol(0.0);
        assert!(c.validate().is_err());
    }
}
