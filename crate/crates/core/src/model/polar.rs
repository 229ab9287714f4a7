//! Airfoil polar tables: validation, linear interpolation and Viterna-style
//! extension of measured data to the full +/-180 degree range needed by a
//! stall-regulated BEM solver.

use crate::error::{Error, Result};

/// One measured polar row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarRow {
    pub alpha_deg: f64,
    pub cl: f64,
    pub cd: f64,
    pub cm: Option<f64>,
}

/// Interpolated aerodynamic coefficients at one angle of attack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub cl: f64,
    pub cd: f64,
    pub cm: Option<f64>,
}

/// Lift/drag table for one airfoil, strictly increasing in alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct AirfoilPolar {
    pub airfoil_id: String,
    pub rows: Vec<PolarRow>,
}

/// Default flat-plate maximum drag coefficient used by the Viterna extension.
const CD_MAX: f64 = 1.3;

impl AirfoilPolar {
    pub fn new(airfoil_id: impl Into<String>, rows: Vec<PolarRow>) -> Result<Self> {
        let polar = Self {
            airfoil_id: airfoil_id.into(),
            rows,
        };
        polar.validate()?;
        Ok(polar)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows.len() < 2 {
            return Err(Error::Config(format!(
                "polar {}: needs at least 2 rows",
                self.airfoil_id
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if !row.alpha_deg.is_finite() || !row.cl.is_finite() || !row.cd.is_finite() {
                return Err(Error::Config(format!(
                    "polar {}: non-finite entry in row {}",
                    self.airfoil_id,
                    i + 1
                )));
            }
            if row.cd < 0.0 {
                return Err(Error::Config(format!(
                    "polar {}: Cd must be non-negative in row {}",
                    self.airfoil_id,
                    i + 1
                )));
            }
            if i > 0 && row.alpha_deg <= self.rows[i - 1].alpha_deg {
                return Err(Error::Config(format!(
                    "polar {}: alpha must be strictly increasing at row {}",
                    self.airfoil_id,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn alpha_min(&self) -> f64 {
        self.rows.first().map(|r| r.alpha_deg).unwrap_or(0.0)
    }

    pub fn alpha_max(&self) -> f64 {
        self.rows.last().map(|r| r.alpha_deg).unwrap_or(0.0)
    }

    /// True when the table spans the full circle.
    pub fn covers_full_range(&self) -> bool {
        self.alpha_min() <= -180.0 + 1e-9 && self.alpha_max() >= 180.0 - 1e-9
    }

    /// Extend the measured range to [-180, 180] with Viterna flat-plate
    /// post-stall relations. Original rows are kept verbatim so interpolation
    /// stays exact at measured nodes; no-op if the table already spans the
    /// full circle.
    pub fn extend_to_full_range(&self) -> Result<Self> {
        self.validate()?;
        if self.covers_full_range() {
            return Ok(self.clone());
        }

        let hi = *self.rows.last().unwrap();
        let lo = *self.rows.first().unwrap();
        let mut rows = self.rows.clone();

        let step = 5.0;
        // positive side: stall point -> 180
        let mut alpha = hi.alpha_deg + step;
        while alpha < 180.0 - 1e-9 {
            let (cl, cd) = viterna(alpha, hi.alpha_deg, hi.cl, hi.cd);
            rows.push(PolarRow {
                alpha_deg: alpha,
                cl,
                cd,
                cm: None,
            });
            alpha += step;
        }
        rows.push(PolarRow {
            alpha_deg: 180.0,
            cl: 0.0,
            cd: flat_plate_cd(180.0),
            cm: None,
        });

        // negative side mirrors the positive-side relations
        let mut neg = Vec::new();
        let mut alpha = lo.alpha_deg - step;
        while alpha > -180.0 + 1e-9 {
            let (cl, cd) = viterna(-alpha, -lo.alpha_deg, -lo.cl, lo.cd);
            neg.push(PolarRow {
                alpha_deg: alpha,
                cl: -cl,
                cd,
                cm: None,
            });
            alpha -= step;
        }
        neg.push(PolarRow {
            alpha_deg: -180.0,
            cl: 0.0,
            cd: flat_plate_cd(180.0),
            cm: None,
        });
        neg.reverse();
        neg.extend(rows);

        AirfoilPolar::new(self.airfoil_id.clone(), neg)
    }
}

/// Viterna post-stall continuation from the last measured point
/// (alpha_s, cl_s, cd_s), all angles in degrees, valid for alpha > alpha_s.
fn viterna(alpha_deg: f64, alpha_s_deg: f64, cl_s: f64, cd_s: f64) -> (f64, f64) {
    let a = alpha_deg.to_radians();
    let a_s = alpha_s_deg.to_radians();
    let (sin_s, cos_s) = a_s.sin_cos();

    let b1 = CD_MAX;
    let b2 = (cd_s - CD_MAX * sin_s * sin_s) / cos_s.max(1e-6);
    let a1 = b1 / 2.0;
    let a2 = (cl_s - CD_MAX * sin_s * cos_s) * sin_s / (cos_s * cos_s).max(1e-9);

    if alpha_deg <= 90.0 {
        let (sin_a, cos_a) = a.sin_cos();
        let cl = a1 * (2.0 * a).sin() + a2 * cos_a * cos_a / sin_a.max(1e-6);
        let cd = b1 * sin_a * sin_a + b2 * cos_a;
        (cl, cd.max(0.0))
    } else {
        // mirror about 90 deg and fade lift toward zero at 180
        let m = 180.0 - alpha_deg;
        let (sin_m, cos_m) = m.to_radians().sin_cos();
        let cl = -0.7 * (a1 * (2.0 * m.to_radians()).sin() + a2 * cos_m * cos_m / sin_m.max(1e-6));
        let cd = flat_plate_cd(alpha_deg);
        (cl, cd)
    }
}

fn flat_plate_cd(alpha_deg: f64) -> f64 {
    let s = alpha_deg.to_radians().sin();
    (CD_MAX * s * s).max(0.02)
}

/// Piecewise-linear interpolation of an airfoil polar, exact at table nodes.
pub fn interpolate_polar(polar: &AirfoilPolar, alpha_deg: f64) -> Result<PolarPoint> {
    if !(-180.0 - 1e-9..=180.0 + 1e-9).contains(&alpha_deg) {
        return Err(Error::Domain(format!(
            "angle of attack {alpha_deg} deg outside [-180, 180]"
        )));
    }
    let rows = &polar.rows;
    if alpha_deg < rows[0].alpha_deg || alpha_deg > rows[rows.len() - 1].alpha_deg {
        return Err(Error::Domain(format!(
            "angle of attack {alpha_deg} deg outside polar table [{}, {}] for {}",
            rows[0].alpha_deg,
            rows[rows.len() - 1].alpha_deg,
            polar.airfoil_id
        )));
    }

    let idx = rows.partition_point(|r| r.alpha_deg <= alpha_deg);
    if idx == 0 {
        let r = rows[0];
        return Ok(PolarPoint {
            cl: r.cl,
            cd: r.cd,
            cm: r.cm,
        });
    }
    let (lo, hi) = (rows[idx - 1], rows.get(idx).copied().unwrap_or(rows[idx - 1]));
    if hi.alpha_deg == lo.alpha_deg {
        return Ok(PolarPoint {
            cl: lo.cl,
            cd: lo.cd,
            cm: lo.cm,
        });
    }
    let f = (alpha_deg - lo.alpha_deg) / (hi.alpha_deg - lo.alpha_deg);
    let cm = match (lo.cm, hi.cm) {
        (Some(a), Some(b)) => Some(a + f * (b - a)),
        _ => None,
    };
    Ok(PolarPoint {
        cl: lo.cl + f * (hi.cl - lo.cl),
        cd: lo.cd + f * (hi.cd - lo.cd),
        cm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn row(alpha: f64, cl: f64, cd: f64) -> PolarRow {
        PolarRow {
            alpha_deg: alpha,
            cl,
            cd,
            cm: None,
        }
    }

    fn small_polar() -> AirfoilPolar {
        AirfoilPolar::new(
            "test",
            vec![row(-4.0, -0.2, 0.012), row(0.0, 0.5, 0.008), row(4.0, 0.9, 0.010)],
        )
        .unwrap()
    }

    #[test]
    fn exact_at_table_node() {
        let p = small_polar();
        let pt = interpolate_polar(&p, 0.0).unwrap();
        assert_eq!(pt.cl, 0.5);
        assert_eq!(pt.cd, 0.008);
    }

    #[test]
    fn linear_midpoint() {
        let p = small_polar();
        let pt = interpolate_polar(&p, 2.0).unwrap();
        assert_relative_eq!(pt.cl, 0.7, max_relative = 1e-12);
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let p = small_polar();
        assert!(matches!(
            interpolate_polar(&p, 200.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_non_increasing_alpha() {
        let r = AirfoilPolar::new("bad", vec![row(0.0, 0.1, 0.01), row(0.0, 0.2, 0.01)]);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_negative_cd() {
        let r = AirfoilPolar::new("bad", vec![row(0.0, 0.1, -0.01), row(4.0, 0.2, 0.01)]);
        assert!(r.is_err());
    }

    #[test]
    fn extension_covers_full_circle_and_keeps_nodes() {
        let p = small_polar().extend_to_full_range().unwrap();
        assert!(p.covers_full_range());
        // measured nodes still exact
        let pt = interpolate_polar(&p, 4.0).unwrap();
        assert_eq!(pt.cl, 0.9);
        assert_eq!(pt.cd, 0.010);
        // deep stall values stay bounded and drag stays non-negative
        for a in [-170.0, -90.0, 45.0, 90.0, 170.0] {
            let pt = interpolate_polar(&p, a).unwrap();
            assert!(pt.cl.abs() < 2.5, "cl at {a}: {}", pt.cl);
            assert!(pt.cd >= 0.0);
        }
    }

    #[test]
    fn interpolated_cd_never_negative() {
        // convexity of linear interpolation over non-negative nodes
        let p = small_polar().extend_to_full_range().unwrap();
        let mut a = -180.0;
        while a <= 180.0 {
            assert!(interpolate_polar(&p, a).unwrap().cd >= 0.0);
            a += 0.37;
        }
    }
}
