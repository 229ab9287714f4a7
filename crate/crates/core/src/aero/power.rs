//! Power curves and Weibull-weighted annual energy production.

use super::{rotor_performance, BemConfig, OperatingPoint, RotorPerformance};
use crate::error::{Error, Result};
use crate::model::{weibull_pdf, AirfoilPolar, BladeDefinition, Environment};

/// One point of the power curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerPoint {
    pub wind_speed: f64,
    pub power_w: f64,
    pub cp: f64,
    /// Full rotor solution at this speed; absent outside the operating range.
    pub performance: Option<RotorPerformance>,
}

/// Evaluate the power curve at fixed rotor speed and pitch (stall
/// regulation). Speeds outside the cut-in/cut-out window produce zero power.
pub fn power_curve(
    blade: &BladeDefinition,
    speeds: &[f64],
    op_template: &OperatingPoint,
    polars: &dyn Fn(&str) -> Option<AirfoilPolar>,
    env: &Environment,
    cfg: &BemConfig,
) -> Result<Vec<PowerPoint>> {
    if speeds.is_empty() {
        return Err(Error::Config("power curve needs at least one speed".into()));
    }
    for w in speeds.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Config(
                "power curve speeds must be strictly increasing".into(),
            ));
        }
    }
    let mut out = Vec::with_capacity(speeds.len());
    for &v in speeds {
        if v < env.v_cut_in || v > env.v_cut_out {
            out.push(PowerPoint {
                wind_speed: v,
                power_w: 0.0,
                cp: 0.0,
                performance: None,
            });
            continue;
        }
        let op = OperatingPoint {
            wind_speed: v,
            ..*op_template
        };
        let perf = rotor_performance(blade, polars, &op, env, cfg)?;
        out.push(PowerPoint {
            wind_speed: v,
            power_w: perf.power_w,
            cp: perf.cp,
            performance: Some(perf),
        });
    }
    Ok(out)
}

/// Annual energy production in kWh/yr.
///
/// `AEP = 8760 * integral P(V) f(V) dV` over the cut-in..cut-out window,
/// trapezoid rule on a refined speed grid with linear interpolation of the
/// power curve between its points.
pub fn annual_energy(curve: &[PowerPoint], env: &Environment, step: f64) -> Result<f64> {
    if curve.is_empty() {
        return Err(Error::Config("empty power curve".into()));
    }
    let step = if step > 0.0 { step } else { 0.25 };
    let v_lo = env.v_cut_in;
    let v_hi = env.v_cut_out;
    let n = ((v_hi - v_lo) / step).ceil() as usize;
    let n = n.max(1);
    let h = (v_hi - v_lo) / n as f64;

    let integrand = |v: f64| -> f64 {
        power_at(curve, v) * weibull_pdf(v, env.weibull_k, env.weibull_c)
    };
    let mut acc = 0.5 * (integrand(v_lo) + integrand(v_hi));
    for i in 1..n {
        acc += integrand(v_lo + i as f64 * h);
    }
    let mean_power_w = acc * h;
    Ok(mean_power_w * 8760.0 / 1000.0)
}

/// Linear interpolation of the power curve; zero outside its span.
fn power_at(curve: &[PowerPoint], v: f64) -> f64 {
    let first = &curve[0];
    let last = &curve[curve.len() - 1];
    if v <= first.wind_speed {
        return if v == first.wind_speed { first.power_w } else { 0.0 };
    }
    if v >= last.wind_speed {
        return if v == last.wind_speed { last.power_w } else { 0.0 };
    }
    let idx = curve.partition_point(|p| p.wind_speed <= v);
    let (lo, hi) = (&curve[idx - 1], &curve[idx]);
    let f = (v - lo.wind_speed) / (hi.wind_speed - lo.wind_speed);
    lo.power_w + f * (hi.power_w - lo.power_w)
}
