//! Mapping of the design vector onto a concrete laminate schedule at every
//! blade station.
//!
//! Control point thicknesses are interpolated linearly in radius: the shell
//! skin control points span the root-transition end to the outboard station,
//! all other arrays span the inboard to outboard stations. Blade-root
//! material blends out linearly across the root transition while the shell
//! blends in. Panels, spar caps and shear webs exist only between the inboard
//! and outboard framing stations; the shell skin continues to the tip.

use super::design::{DesignVector, LayupLayout};
use super::BladeDefinition;
use crate::error::Result;

/// Resolved layup values at one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct StationLayup {
    pub radius_m: f64,
    /// True within the paneled span [INB_STN, OUB_STN].
    pub has_panels: bool,
    pub t_root: f64,
    pub t_skin: f64,
    pub t_cap_uni: f64,
    pub t_cap_core: f64,
    pub t_lep_core: f64,
    pub t_tep_core: f64,
    pub t_web_skin: f64,
    pub t_web_core: f64,
    /// Spar-cap width as a fraction of chord.
    pub w_cap_frac: f64,
}

/// Per-station laminate schedule for a blade.
#[derive(Debug, Clone)]
pub struct LayupSchedule {
    design: DesignVector,
    r_inb: f64,
    r_tran: f64,
    r_oub: f64,
    /// Control point radii for the shell skin array.
    pub cp_radii_skin: Vec<f64>,
    /// Control point radii for the cap/core arrays.
    pub cp_radii_panel: Vec<f64>,
    /// Schedule evaluated at every blade station.
    pub stations: Vec<StationLayup>,
}

impl LayupSchedule {
    pub fn layout(&self) -> &LayupLayout {
        &self.design.layout
    }

    /// Radius where panels, caps and webs begin.
    pub fn r_inb(&self) -> f64 {
        self.r_inb
    }

    /// Radius where the root transition ends.
    pub fn r_tran(&self) -> f64 {
        self.r_tran
    }

    /// Radius where panels, caps and webs end.
    pub fn r_oub(&self) -> f64 {
        self.r_oub
    }

    /// Evaluate the schedule at an arbitrary radius.
    pub fn eval(&self, r: f64) -> StationLayup {
        let x = &self.design;
        let has_panels = r >= self.r_inb - 1e-12 && r <= self.r_oub + 1e-12;

        // root material: full thickness inboard, linear fade across the transition
        let t_root = if r <= self.r_inb {
            x.t_blade_root
        } else if r < self.r_tran {
            x.t_blade_root * (self.r_tran - r) / (self.r_tran - self.r_inb)
        } else {
            0.0
        };

        // shell skin: control points on [r_tran, r_oub], blended in across the
        // transition and extended at the last value out to the tip
        let skin_cp = interp_clamped(&self.cp_radii_skin, &x.t_blade_skin, r);
        let t_skin = if r <= self.r_inb {
            0.0
        } else if r < self.r_tran {
            skin_cp * (r - self.r_inb) / (self.r_tran - self.r_inb)
        } else {
            skin_cp
        };

        let panel = |vals: &[f64]| {
            if has_panels {
                interp_clamped(&self.cp_radii_panel, vals, r)
            } else {
                0.0
            }
        };
        let web_pair = |pair: [f64; 2]| {
            if has_panels {
                interp_clamped(&[self.r_inb, self.r_oub], &pair, r)
            } else {
                0.0
            }
        };
        let w_cap_frac = if has_panels {
            interp_clamped(&[self.r_inb, self.r_oub], &[x.w_cap_inb, x.w_cap_oub], r)
        } else {
            0.0
        };

        StationLayup {
            radius_m: r,
            has_panels,
            t_root,
            t_skin,
            t_cap_uni: panel(&x.t_cap_uni),
            t_cap_core: panel(&x.t_cap_core),
            t_lep_core: panel(&x.t_lep_core),
            t_tep_core: panel(&x.t_tep_core),
            t_web_skin: web_pair(x.t_web_skin),
            t_web_core: web_pair(x.t_web_core),
            w_cap_frac,
        }
    }
}

/// Linear interpolation over knots with constant extension outside the span.
fn interp_clamped(radii: &[f64], values: &[f64], r: f64) -> f64 {
    debug_assert_eq!(radii.len(), values.len());
    if r <= radii[0] {
        return values[0];
    }
    let last = radii.len() - 1;
    if r >= radii[last] {
        return values[last];
    }
    let idx = radii.partition_point(|&knot| knot <= r);
    let (r0, r1) = (radii[idx - 1], radii[idx]);
    let f = (r - r0) / (r1 - r0);
    values[idx - 1] + f * (values[idx] - values[idx - 1])
}

/// Equally spaced control point radii on [a, b].
fn cp_radii(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Resolve the design vector into a laminate schedule on the blade stations.
pub fn design_vector_to_layup(
    x: &DesignVector,
    blade: &BladeDefinition,
) -> Result<LayupSchedule> {
    x.validate()?;
    x.layout.validate(blade.num_sections())?;

    let r_of = |stn_1based: usize| blade.stations[stn_1based - 1].radius_m;
    let r_inb = r_of(x.layout.inb_stn);
    let r_tran = r_of(x.layout.tran_stn);
    let r_oub = r_of(x.layout.oub_stn);

    // explicit control point stations override the equally spaced grids
    let (radii_skin, radii_panel) = match &x.layout.cp_stations {
        Some(stations) => {
            let explicit: Vec<f64> = stations.iter().map(|&s| r_of(s)).collect();
            (explicit.clone(), explicit)
        }
        None => (
            cp_radii(r_tran, r_oub, x.layout.num_cp),
            cp_radii(r_inb, r_oub, x.layout.num_cp),
        ),
    };

    let mut schedule = LayupSchedule {
        design: x.clone(),
        r_inb,
        r_tran,
        r_oub,
        cp_radii_skin: radii_skin,
        cp_radii_panel: radii_panel,
        stations: Vec::with_capacity(blade.num_sections()),
    };
    schedule.stations = blade
        .stations
        .iter()
        .map(|st| schedule.eval(st.radius_m))
        .collect();
    Ok(schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Spacing, Station};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn blade() -> BladeDefinition {
        let radii = BladeDefinition::spaced_radii(30, 0.5, 10.0, Spacing::Cosine);
        let stations = radii
            .iter()
            .map(|&r| Station {
                radius_m: r,
                chord_m: 0.6,
                twist_deg: 0.0,
                pitch_axis_fraction: 0.375,
                airfoil_id: "foil".into(),
            })
            .collect();
        BladeDefinition::new(10.0, 0.5, stations, 3, Spacing::Cosine).unwrap()
    }

    fn layout() -> LayupLayout {
        LayupLayout::new(3, 8, 28, 4)
    }

    fn design(cp_vals: [f64; 4]) -> DesignVector {
        DesignVector {
            w_cap_inb: 0.3,
            w_cap_oub: 0.25,
            t_blade_root: 0.02,
            t_blade_skin: vec![0.003; 4],
            t_cap_uni: cp_vals.to_vec(),
            t_cap_core: vec![0.004; 4],
            t_lep_core: vec![0.005; 4],
            t_tep_core: vec![0.006; 4],
            t_web_skin: [0.002, 0.0015],
            t_web_core: [0.005, 0.004],
            layout: layout(),
        }
    }

    #[test]
    fn constant_control_points_give_constant_thickness() {
        let sched = design_vector_to_layup(&design([0.008; 4]), &blade()).unwrap();
        for st in &sched.stations {
            if st.has_panels {
                assert_relative_eq!(st.t_cap_uni, 0.008, max_relative = 1e-12);
            } else {
                assert_eq!(st.t_cap_uni, 0.0);
            }
        }
    }

    #[test]
    fn zero_thickness_layer_is_absent_everywhere() {
        let mut x = design([0.008; 4]);
        x.t_lep_core = vec![0.0; 4];
        let sched = design_vector_to_layup(&x, &blade()).unwrap();
        assert!(sched.stations.iter().all(|st| st.t_lep_core == 0.0));
    }

    #[test]
    fn linear_interpolation_between_control_points() {
        // 4 control points, thicknesses 4/3/2/1 mm: midway between CP1 and CP2
        // the mapped thickness is 3.5 mm
        let sched = design_vector_to_layup(&design([0.004, 0.003, 0.002, 0.001]), &blade()).unwrap();
        let mid = 0.5 * (sched.cp_radii_panel[0] + sched.cp_radii_panel[1]);
        assert_relative_eq!(sched.eval(mid).t_cap_uni, 0.0035, max_relative = 1e-12);
    }

    #[test]
    fn control_point_radii_round_trip_exactly() {
        let vals = [0.0071, 0.0052, 0.0033, 0.0014];
        let x = design(vals);
        let sched = design_vector_to_layup(&x, &blade()).unwrap();
        for (i, &r) in sched.cp_radii_panel.iter().enumerate() {
            assert_eq!(sched.eval(r).t_cap_uni, vals[i]);
        }
        for (i, &r) in sched.cp_radii_skin.iter().enumerate() {
            assert_eq!(sched.eval(r).t_skin, x.t_blade_skin[i]);
        }
    }

    #[test]
    fn root_blends_out_and_shell_blends_in() {
        let sched = design_vector_to_layup(&design([0.008; 4]), &blade()).unwrap();
        let b = blade();
        let r_inb = b.stations[2].radius_m;
        let r_tran = b.stations[7].radius_m;
        assert_eq!(sched.eval(b.stations[0].radius_m).t_root, 0.02);
        assert_eq!(sched.eval(r_inb).t_root, 0.02);
        let mid = 0.5 * (r_inb + r_tran);
        assert_relative_eq!(sched.eval(mid).t_root, 0.01, max_relative = 1e-9);
        assert_relative_eq!(sched.eval(mid).t_skin, 0.0015, max_relative = 1e-9);
        assert_eq!(sched.eval(r_tran).t_root, 0.0);
        assert_eq!(sched.eval(r_tran).t_skin, 0.003);
    }

    #[test]
    fn bad_layout_is_config_error() {
        let mut x = design([0.008; 4]);
        x.layout.oub_stn = 99;
        assert!(design_vector_to_layup(&x, &blade()).is_err());
    }

    proptest! {
        // increasing any thickness entry never decreases any station's
        // mapped thickness
        #[test]
        fn mapping_is_monotone_in_thickness_entries(
            idx in 2usize..27,
            bump in 1e-5f64..5e-3,
        ) {
            let base = design([0.004, 0.003, 0.002, 0.001]);
            let b = blade();
            let s0 = design_vector_to_layup(&base, &b).unwrap();
            let mut flat = base.flatten();
            flat[idx] += bump;
            let bumped = DesignVector::from_flat(&flat, layout()).unwrap();
            let s1 = design_vector_to_layup(&bumped, &b).unwrap();
            for (a, c) in s0.stations.iter().zip(s1.stations.iter()) {
                prop_assert!(c.t_root >= a.t_root - 1e-15);
                prop_assert!(c.t_skin >= a.t_skin - 1e-15);
                prop_assert!(c.t_cap_uni >= a.t_cap_uni - 1e-15);
                prop_assert!(c.t_cap_core >= a.t_cap_core - 1e-15);
                prop_assert!(c.t_lep_core >= a.t_lep_core - 1e-15);
                prop_assert!(c.t_tep_core >= a.t_tep_core - 1e-15);
                prop_assert!(c.t_web_skin >= a.t_web_skin - 1e-15);
                prop_assert!(c.t_web_core >= a.t_web_core - 1e-15);
            }
        }
    }
}
