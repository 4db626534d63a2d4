use crate::error::{Error, Result};

/// 2x2 table of co-occurrence frequencies, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContingencyTable {
    pub f11: f64,
    pub f12: f64,
    pub f21: f64,
    pub f22: f64,
}

impl ContingencyTable {
    pub fn new(f11: f64, f12: f64, f21: f64, f22: f64) -> Result<Self> {
        if [f11, f12, f21, f22].iter().any(|&f| !(f > 0.0) || !f.is_finite()) {
            return Err(Error::domain("contingency entries must be positive and finite"));
        }
        Ok(Self { f11, f12, f21, f22 })
    }

    /// Cross-product ratio `f11·f22 / (f12·f21)`.
    pub fn cross_ratio(&self) -> f64 {
        self.f11 * self.f22 / (self.f12 * self.f21)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YuleVariant {
    /// `sqrt(c - 1) / sqrt(c + 1)`, defined only for `c >= 1`.
    #[default]
    Literal,
    /// Yule's colligation `(sqrt(c) - 1) / (sqrt(c) + 1)`.
    Standard,
}

pub fn yule(t: &ContingencyTable, variant: YuleVariant) -> Result<f64> {
    let c = t.cross_ratio();
    match variant {
        YuleVariant::Literal => {
            if c < 1.0 {
                return Err(Error::domain(format!(
                    "cross ratio {c} < 1 has no real literal coefficient"
                )));
            }
            Ok((c - 1.0).sqrt() / (c + 1.0).sqrt())
        }
        YuleVariant::Standard => {
            let s = c.sqrt();
            Ok((s - 1.0) / (s + 1.0))
        }
    }
}
