//! Weibull wind-speed distribution.

/// Weibull probability density (per m/s) for wind speed `v` with shape `k`
/// and scale `c`.
pub fn weibull_pdf(v: f64, k: f64, c: f64) -> f64 {
    debug_assert!(v >= 0.0 && k > 0.0 && c > 0.0);
    if v == 0.0 {
        // k > 1 gives zero density at the origin; k = 1 gives 1/c
        return if k > 1.0 {
            0.0
        } else if k == 1.0 {
            1.0 / c
        } else {
            f64::INFINITY
        };
    }
    (k / c) * (v / c).powf(k - 1.0) * (-(v / c).powf(k)).exp()
}

/// Weibull cumulative distribution.
pub fn weibull_cdf(v: f64, k: f64, c: f64) -> f64 {
    debug_assert!(v >= 0.0 && k > 0.0 && c > 0.0);
    1.0 - (-(v / c).powf(k)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const K: f64 = 1.91;
    const C: f64 = 6.8;

    #[test]
    fn zero_density_at_origin_for_k_above_one() {
        assert_eq!(weibull_pdf(0.0, K, C), 0.0);
    }

    #[test]
    fn density_at_scale_speed() {
        // (k/c) e^{-1} evaluated independently
        assert_relative_eq!(weibull_pdf(C, K, C), 0.10333084303491984, max_relative = 1e-12);
    }

    #[test]
    fn cdf_limits() {
        assert_eq!(weibull_cdf(0.0, K, C), 0.0);
        assert!((weibull_cdf(1e6, K, C) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pdf_integrates_to_one() {
        // trapezoid quadrature out to 10c
        let n = 200_000;
        let h = 10.0 * C / n as f64;
        let mut acc = 0.5 * (weibull_pdf(0.0, K, C) + weibull_pdf(10.0 * C, K, C));
        for i in 1..n {
            acc += weibull_pdf(i as f64 * h, K, C);
        }
        let integral = acc * h;
        assert!((integral - 1.0).abs() < 1e-6, "integral = {integral}");
    }
}
