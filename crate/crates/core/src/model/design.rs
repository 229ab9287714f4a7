//! Layup design variables and their flattened real-vector form.

use crate::error::{Error, Result};

/// Station indices (1-based, matching the blade definition) that frame the
/// layup regions, plus the number of spanwise control points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayupLayout {
    /// Inboard station where panels, spar caps and shear webs begin.
    pub inb_stn: usize,
    /// Station where the root transition ends.
    pub tran_stn: usize,
    /// Outboard station where panels, spar caps and shear webs end.
    pub oub_stn: usize,
    /// Number of control points between the framing stations.
    pub num_cp: usize,
    /// Optional explicit control point station indices (1-based) overriding
    /// equal spacing; the length must equal `num_cp`.
    pub cp_stations: Option<Vec<usize>>,
}

impl LayupLayout {
    pub fn new(inb_stn: usize, tran_stn: usize, oub_stn: usize, num_cp: usize) -> Self {
        Self {
            inb_stn,
            tran_stn,
            oub_stn,
            num_cp,
            cp_stations: None,
        }
    }

    pub fn validate(&self, num_sections: usize) -> Result<()> {
        if self.num_cp < 2 {
            return Err(Error::Config(format!(
                "NUM_CP must be at least 2, got {}",
                self.num_cp
            )));
        }
        if !(self.inb_stn >= 1
            && self.inb_stn < self.tran_stn
            && self.tran_stn < self.oub_stn
            && self.oub_stn <= num_sections)
        {
            return Err(Error::Config(format!(
                "layout stations must satisfy 1 <= INB_STN < TRAN_STN < OUB_STN <= {}; \
                 got {} < {} < {}",
                num_sections, self.inb_stn, self.tran_stn, self.oub_stn
            )));
        }
        if let Some(cp) = &self.cp_stations {
            if cp.len() != self.num_cp {
                return Err(Error::Config(format!(
                    "CP_Index lists {} control points but NUM_CP is {}",
                    cp.len(),
                    self.num_cp
                )));
            }
            for pair in cp.windows(2) {
                if pair[1] <= pair[0] {
                    return Err(Error::Config(
                        "CP_Index stations must be strictly increasing".into(),
                    ));
                }
            }
            if cp[0] < 1 || cp[cp.len() - 1] > num_sections {
                return Err(Error::Config(format!(
                    "CP_Index stations must lie in [1, {num_sections}]"
                )));
            }
        }
        Ok(())
    }
}

/// The layup design variables: spar-cap widths, root thickness and per
/// control point thickness arrays, flattened to `3 + 5*num_cp + 4` reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignVector {
    /// Spar-cap width over chord at the inboard/outboard framing stations.
    pub w_cap_inb: f64,
    pub w_cap_oub: f64,
    /// Blade-root material thickness at the inboard station (m).
    pub t_blade_root: f64,
    /// Shell skin thickness at each control point (m).
    pub t_blade_skin: Vec<f64>,
    /// Spar-cap unidirectional thickness at each control point (m).
    pub t_cap_uni: Vec<f64>,
    /// Spar-cap core thickness at each control point (m).
    pub t_cap_core: Vec<f64>,
    /// Leading-edge panel core thickness at each control point (m).
    pub t_lep_core: Vec<f64>,
    /// Trailing-edge panel core thickness at each control point (m).
    pub t_tep_core: Vec<f64>,
    /// Web skin thickness at the inboard/outboard framing stations (m).
    pub t_web_skin: [f64; 2],
    /// Web core thickness at the inboard/outboard framing stations (m).
    pub t_web_core: [f64; 2],
    pub layout: LayupLayout,
}

impl DesignVector {
    /// Flattened vector length for a layout.
    pub fn dim(layout: &LayupLayout) -> usize {
        3 + 5 * layout.num_cp + 4
    }

    pub fn validate(&self) -> Result<()> {
        for w in [self.w_cap_inb, self.w_cap_oub] {
            if !(w > 0.0 && w < 1.0) {
                return Err(Error::Config(format!(
                    "spar cap width fraction must lie in (0, 1), got {w}"
                )));
            }
        }
        let cp = self.layout.num_cp;
        for (name, arr) in [
            ("t_blade_skin", &self.t_blade_skin),
            ("t_cap_uni", &self.t_cap_uni),
            ("t_cap_core", &self.t_cap_core),
            ("t_lep_core", &self.t_lep_core),
            ("t_tep_core", &self.t_tep_core),
        ] {
            if arr.len() != cp {
                return Err(Error::Config(format!(
                    "{name} must have {cp} control point entries, got {}",
                    arr.len()
                )));
            }
        }
        let all = self.flatten();
        if all[2..].iter().any(|&t| t < 0.0) {
            return Err(Error::Config("thicknesses must be non-negative".into()));
        }
        Ok(())
    }

    /// Flatten in the documented order: `w_cap_inb, w_cap_oub, t_blade_root`,
    /// then the five control point arrays, then the web skin/core pairs.
    pub fn flatten(&self) -> Vec<f64> {
        let mut x = Vec::with_capacity(Self::dim(&self.layout));
        x.push(self.w_cap_inb);
        x.push(self.w_cap_oub);
        x.push(self.t_blade_root);
        x.extend_from_slice(&self.t_blade_skin);
        x.extend_from_slice(&self.t_cap_uni);
        x.extend_from_slice(&self.t_cap_core);
        x.extend_from_slice(&self.t_lep_core);
        x.extend_from_slice(&self.t_tep_core);
        x.extend_from_slice(&self.t_web_skin);
        x.extend_from_slice(&self.t_web_core);
        x
    }

    /// Rebuild from a flattened vector.
    pub fn from_flat(x: &[f64], layout: LayupLayout) -> Result<Self> {
        let dim = Self::dim(&layout);
        if x.len() != dim {
            return Err(Error::Config(format!(
                "design vector must have {dim} entries for {} control points, got {}",
                layout.num_cp,
                x.len()
            )));
        }
        let cp = layout.num_cp;
        let take = |start: usize| x[start..start + cp].to_vec();
        let dv = Self {
            w_cap_inb: x[0],
            w_cap_oub: x[1],
            t_blade_root: x[2],
            t_blade_skin: take(3),
            t_cap_uni: take(3 + cp),
            t_cap_core: take(3 + 2 * cp),
            t_lep_core: take(3 + 3 * cp),
            t_tep_core: take(3 + 4 * cp),
            t_web_skin: [x[3 + 5 * cp], x[4 + 5 * cp]],
            t_web_core: [x[5 + 5 * cp], x[6 + 5 * cp]],
            layout,
        };
        dv.validate()?;
        Ok(dv)
    }

    /// Index chains in the flattened vector whose entries must taper
    /// (non-increasing outboard): the five control point arrays and the two
    /// web pairs.
    pub fn taper_chains(layout: &LayupLayout) -> Vec<Vec<usize>> {
        let cp = layout.num_cp;
        let mut chains = Vec::new();
        for block in 0..5 {
            chains.push((3 + block * cp..3 + (block + 1) * cp).collect());
        }
        chains.push(vec![3 + 5 * cp, 4 + 5 * cp]);
        chains.push(vec![5 + 5 * cp, 6 + 5 * cp]);
        chains
    }
}
