use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Parses `1,2,inf` into exponents; `inf` (or `infinity`) is `p = ∞`.
pub fn parse_p_list(text: &str) -> Result<Vec<f64>> {
    let ps = text
        .split(',')
        .map(|s| parse_p(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    if ps.is_empty() {
        bail!("empty p list");
    }
    Ok(ps)
}

pub fn parse_p(s: &str) -> Result<f64> {
    let p = match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        other => other.parse::<f64>().with_context(|| format!("invalid exponent `{s}`"))?,
    };
    if p.is_nan() || p < 1.0 {
        bail!("exponent must be at least 1, got {s}");
    }
    Ok(p)
}

pub fn p_label(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// Tolerance overrides given as `--tol NAME=VALUE`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute margin tolerance of every verdict.
    pub margin: Option<f64>,
    /// Triangles per hull edge in the Schmeisser grid.
    pub grid_density: Option<usize>,
    /// Polar grid size of the nonunivalence search.
    pub polar_grid: Option<usize>,
    /// Radius of the nonunivalence disk about the origin.
    pub disk_radius: Option<f64>,
}

impl Tolerances {
    pub fn parse(items: &[String]) -> Result<Self> {
        let mut t = Self::default();
        for item in items {
            let (name, value) = item
                .split_once('=')
                .with_context(|| format!("tolerance `{item}` is not NAME=VALUE"))?;
            let float = || -> Result<f64> {
                let v: f64 = value.parse().with_context(|| format!("invalid value in `{item}`"))?;
                if !(v > 0.0 && v.is_finite()) {
                    bail!("tolerance `{name}` must be positive");
                }
                Ok(v)
            };
            let count = || -> Result<usize> {
                let v: usize = value.parse().with_context(|| format!("invalid value in `{item}`"))?;
                if v == 0 {
                    bail!("tolerance `{name}` must be positive");
                }
                Ok(v)
            };
            match name.trim() {
                "margin" => t.margin = Some(float()?),
                "grid_density" => t.grid_density = Some(count()?),
                "polar_grid" => t.polar_grid = Some(count()?),
                "disk_radius" => t.disk_radius = Some(float()?),
                other => bail!("unknown tolerance `{other}`; known: margin, grid_density, polar_grid, disk_radius"),
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents() {
        assert_eq!(parse_p_list("1, 2,inf").unwrap(), vec![1.0, 2.0, f64::INFINITY]);
        assert!(parse_p_list("0.5").is_err());
        assert!(parse_p_list("x").is_err());
        assert_eq!(p_label(1.5), "1.5");
        assert_eq!(p_label(f64::INFINITY), "inf");
    }

    #[test]
    fn tolerances() {
        let t = Tolerances::parse(&["margin=1e-6".into(), "polar_grid=10".into()]).unwrap();
        assert_eq!(t.margin, Some(1e-6));
        assert_eq!(t.polar_grid, Some(10));
        assert!(Tolerances::parse(&["bogus=1".into()]).is_err());
        assert!(Tolerances::parse(&["margin=-1".into()]).is_err());
        assert!(Tolerances::parse(&["margin".into()]).is_err());
    }
}
