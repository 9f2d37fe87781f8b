//! Unit systems and the pinned SI constant table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// ħ = c = k_B = 1; G is kept as an explicit parameter.
    Natural,
    Si,
}

/// SI constants. Values default to CODATA 2018 plus the IAU nominal solar
/// mass parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiConstants {
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Newton constant, m³ kg⁻¹ s⁻².
    pub g: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Solar mass, kg.
    pub m_sun: f64,
}

pub const CODATA_2018: SiConstants = SiConstants {
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    g: 6.674_30e-11,
    k_b: 1.380_649e-23,
    // GM_sun / G with GM_sun = 1.32712440018e20 m³ s⁻²
    m_sun: 1.327_124_400_18e20 / 6.674_30e-11,
};

impl Default for SiConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl SiConstants {
    /// Parses `name = value` lines. `#` starts a comment; the names are
    /// `hbar`, `c`, `G`, `k_B` and either `M_sun` or `GM_sun`. Every constant
    /// must be present.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut hbar, mut c, mut g, mut k_b, mut m_sun, mut gm_sun) = (None, None, None, None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("constants line {}: expected name=value", lineno + 1))
            })?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("constants line {}: bad number", lineno + 1)))?;
            let slot = match name.trim() {
                "hbar" => &mut hbar,
                "c" => &mut c,
                "G" => &mut g,
                "k_B" => &mut k_b,
                "M_sun" => &mut m_sun,
                "GM_sun" => &mut gm_sun,
                "version" => continue,
                other => return Err(Error::InvalidParameter(format!("unknown constant `{other}`"))),
            };
            *slot = Some(value);
        }
        let missing = |n: &str| Error::InvalidParameter(format!("constant `{n}` missing"));
        let g = g.ok_or_else(|| missing("G"))?;
        let m_sun = match (m_sun, gm_sun) {
            (Some(m), _) => m,
            (None, Some(gm)) => gm / g,
            (None, None) => return Err(missing("M_sun")),
        };
        Ok(Self {
            hbar: hbar.ok_or_else(|| missing("hbar"))?,
            c: c.ok_or_else(|| missing("c"))?,
            g,
            k_b: k_b.ok_or_else(|| missing("k_B"))?,
            m_sun,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_matches_builtin_table() {
        let text = "version = 1\n# CODATA 2018\nhbar = 1.054571817e-34\nc = 299792458\nG = 6.67430e-11\nk_B = 1.380649e-23\nGM_sun = 1.32712440018e20\n";
        let k = SiConstants::parse(text).unwrap();
        assert_eq!(k, CODATA_2018);
    }

    #[test]
    fn parse_rejects_missing_and_unknown() {
        assert!(SiConstants::parse("hbar = 1").is_err());
        assert!(SiConstants::parse("alpha = 0.007").is_err());
    }
}
