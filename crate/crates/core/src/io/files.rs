//! Input file parsers: materials CSV, blade geometry table, airfoil polars
//! and design-vector files.

use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{AirfoilPolar, Material, PolarRow, Station, Strengths};

fn line_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::ConfigLine {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

/// Parse the materials CSV:
/// `name,E11,E22,G12,nu12,rho,s11T,s11C,s22T,s22C,t12y` (SI units).
pub fn parse_materials(path: &Path) -> Result<Vec<Material>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read materials {}: {e}", path.display())))?;
    let mut out: Vec<Material> = Vec::new();
    let mut lines = text.lines().enumerate();

    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() || l.trim_start().starts_with('#') => continue,
            Some((i, l)) => break (i, l),
            None => return Err(Error::Config("materials file is empty".into())),
        }
    };
    let cols: Vec<String> = header
        .1
        .split(',')
        .map(|c| c.trim().to_ascii_lowercase())
        .collect();
    let expected = [
        "name", "e11", "e22", "g12", "nu12", "rho", "s11t", "s11c", "s22t", "s22c", "t12y",
    ];
    if cols != expected {
        return Err(line_err(
            path,
            header.0 + 1,
            format!("materials header must be '{}'", expected.join(",")),
        ));
    }

    for (i, line) in lines {
        let line_no = i + 1;
        let l = line.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = l.split(',').map(|f| f.trim()).collect();
        if fields.len() != 11 {
            return Err(line_err(
                path,
                line_no,
                format!("expected 11 columns, found {}", fields.len()),
            ));
        }
        let name = fields[0]
            .trim_matches(|c| c == '(' || c == ')')
            .to_string();
        if name.is_empty() {
            return Err(line_err(path, line_no, "material name is empty"));
        }
        if out.iter().any(|m: &Material| m.name == name) {
            return Err(line_err(path, line_no, format!("duplicate material '{name}'")));
        }
        let num = |idx: usize, what: &str| -> Result<f64> {
            let f = fields[idx];
            if f.is_empty() {
                return Err(line_err(
                    path,
                    line_no,
                    format!("strengths required: empty {what} for '{name}'"),
                ));
            }
            f.parse::<f64>()
                .map_err(|_| line_err(path, line_no, format!("bad {what}: '{f}'")))
        };
        let material = Material {
            name: name.clone(),
            e11: num(1, "E11")?,
            e22: num(2, "E22")?,
            g12: num(3, "G12")?,
            nu12: num(4, "nu12")?,
            rho: num(5, "rho")?,
            strengths: Strengths {
                sigma11_ft: num(6, "s11T")?,
                sigma11_fc: num(7, "s11C")?,
                sigma22_ft: num(8, "s22T")?,
                sigma22_fc: num(9, "s22C")?,
                tau12_y: num(10, "t12y")?,
            },
        };
        material
            .validate()
            .map_err(|e| line_err(path, line_no, e.to_string()))?;
        out.push(material);
    }
    if out.is_empty() {
        return Err(Error::Config("materials file defines no materials".into()));
    }
    Ok(out)
}

/// Parse the blade geometry table, one station per line:
/// `r_m  chord_m  twist_deg  pitch_axis_frac  airfoil_id`.
pub fn parse_blade_stations(path: &Path) -> Result<Vec<Station>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read blade file {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 5 {
            return Err(line_err(
                path,
                i + 1,
                format!("expected 5 columns (r chord twist pitch_axis airfoil), found {}", f.len()),
            ));
        }
        let num = |idx: usize| -> Result<f64> {
            f[idx]
                .parse::<f64>()
                .map_err(|_| line_err(path, i + 1, format!("bad number '{}'", f[idx])))
        };
        out.push(Station {
            radius_m: num(0)?,
            chord_m: num(1)?,
            twist_deg: num(2)?,
            pitch_axis_fraction: num(3)?,
            airfoil_id: f[4].to_string(),
        });
    }
    if out.len() < 2 {
        return Err(Error::Config(format!(
            "blade file {} needs at least 2 stations",
            path.display()
        )));
    }
    Ok(out)
}

/// Parse a polar file: comment lines starting `#`, then rows
/// `alpha_deg Cl Cd [Cm]`.
pub fn parse_polar(path: &Path, airfoil_id: &str) -> Result<AirfoilPolar> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read polar {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 3 && f.len() != 4 {
            return Err(line_err(
                path,
                i + 1,
                format!("expected 'alpha Cl Cd [Cm]', found {} columns", f.len()),
            ));
        }
        let num = |idx: usize| -> Result<f64> {
            f[idx]
                .parse::<f64>()
                .map_err(|_| line_err(path, i + 1, format!("bad number '{}'", f[idx])))
        };
        rows.push(PolarRow {
            alpha_deg: num(0)?,
            cl: num(1)?,
            cd: num(2)?,
            cm: if f.len() == 4 { Some(num(3)?) } else { None },
        });
    }
    AirfoilPolar::new(airfoil_id, rows)
}

/// Parse a design-vector file: whitespace/newline separated reals in the
/// documented flattened order.
pub fn parse_design_values(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read design file {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        for tok in l.split_whitespace() {
            out.push(
                tok.parse::<f64>()
                    .map_err(|_| line_err(path, i + 1, format!("bad number '{tok}'")))?,
            );
        }
    }
    if out.is_empty() {
        return Err(Error::Config(format!(
            "design file {} holds no values",
            path.display()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(name: &str, content: &str) -> std::path::PathBuf {
        let path = std::env::temp_dir().join(format!("bladeopt_{}_{}", std::process::id(), name));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    const HEADER: &str = "name,E11,E22,G12,nu12,rho,s11T,s11C,s22T,s22C,t12y\n";

    #[test]
    fn parses_scientific_notation_material_row() {
        let path = write_temp(
            "mats_ok.csv",
            &format!(
                "{HEADER}(blade-root),2.80E+10,1.40E+10,7.00E+09,0.4,1850,4.2e8,3.5e8,1.2e8,1.4e8,7e7\n"
            ),
        );
        let mats = parse_materials(&path).unwrap();
        assert_eq!(mats.len(), 1);
        assert_eq!(mats[0].name, "blade-root");
        assert_eq!(mats[0].e11, 2.8e10);
        assert_eq!(mats[0].e22, 1.4e10);
        assert_eq!(mats[0].g12, 7e9);
        assert_eq!(mats[0].nu12, 0.4);
        assert_eq!(mats[0].rho, 1850.0);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn rejects_poisson_out_of_range() {
        let path = write_temp(
            "mats_nu.csv",
            &format!("{HEADER}bad,2.8e10,1.4e10,7e9,0.6,1850,4e8,3e8,1e8,1e8,7e7\n"),
        );
        assert!(parse_materials(&path).is_err());
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn empty_strength_field_is_explicit_error() {
        let path = write_temp(
            "mats_strength.csv",
            &format!("{HEADER}bad,2.8e10,1.4e10,7e9,0.4,1850,,3e8,1e8,1e8,7e7\n"),
        );
        let err = parse_materials(&path).unwrap_err().to_string();
        assert!(err.contains("strengths required"), "{err}");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn duplicate_material_name_is_error() {
        let path = write_temp(
            "mats_dup.csv",
            &format!(
                "{HEADER}m,2.8e10,1.4e10,7e9,0.4,1850,4e8,3e8,1e8,1e8,7e7\n\
                 m,2.8e10,1.4e10,7e9,0.4,1850,4e8,3e8,1e8,1e8,7e7\n"
            ),
        );
        assert!(parse_materials(&path).is_err());
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn blade_file_round_trip() {
        let path = write_temp(
            "blade.dat",
            "# r chord twist pitch_axis airfoil\n0.5 0.6 12.0 0.375 cylinder\n5.0 0.5 4.0 0.375 foil\n10.0 0.3 -1.0 0.375 foil\n",
        );
        let stations = parse_blade_stations(&path).unwrap();
        assert_eq!(stations.len(), 3);
        assert_eq!(stations[1].airfoil_id, "foil");
        assert_eq!(stations[2].twist_deg, -1.0);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn polar_file_with_and_without_cm() {
        let path = write_temp(
            "polar.dat",
            "# alpha cl cd cm\n-10 -0.8 0.02 -0.05\n0 0.4 0.008 -0.06\n10 1.2 0.02 -0.07\n",
        );
        let polar = parse_polar(&path, "foil").unwrap();
        assert_eq!(polar.rows.len(), 3);
        assert_eq!(polar.rows[1].cm, Some(-0.06));
        std::fs::remove_file(path).ok();

        let path2 = write_temp("polar2.dat", "-10 -0.8 0.02\n0 0.4 0.008\n10 1.2 0.02\n");
        let polar2 = parse_polar(&path2, "foil").unwrap();
        assert_eq!(polar2.rows[0].cm, None);
        std::fs::remove_file(path2).ok();
    }

    #[test]
    fn design_values_parse() {
        let path = write_temp("x.dat", "# design\n0.3 0.25\n0.02\n");
        assert_eq!(parse_design_values(&path).unwrap(), vec![0.3, 0.25, 0.02]);
        std::fs::remove_file(path).ok();
    }
}
