use crate::error::{QError, Result};
use crate::numeric::BigReal;

/// Working precision, truncation tolerance and term caps, threaded through
/// every evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    precision_bits: u32,
    rel_tol: f64,
    max_terms: u64,
    guard_bits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            precision_bits: 256,
            rel_tol: 1e-30,
            max_terms: 100_000,
            guard_bits: 32,
        }
    }
}

impl PrecisionContext {
    pub fn new(precision_bits: u32, rel_tol: f64, max_terms: u64, guard_bits: u32) -> Result<Self> {
        let ctx = PrecisionContext {
            precision_bits,
            rel_tol,
            max_terms,
            guard_bits,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(QError::Context(format!(
                "precision_bits must be at least 64, got {}",
                self.precision_bits
            )));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(QError::Context(format!(
                "rel_tol must be a positive finite number, got {}",
                self.rel_tol
            )));
        }
        // rel_tol >= 2^(8 - precision_bits), compared in log2 to avoid underflow.
        let floor_log2 = 8.0 - self.precision_bits as f64;
        if self.rel_tol.log2() < floor_log2 {
            return Err(QError::Context(format!(
                "rel_tol {:e} is below 2^{} for {} bits of precision",
                self.rel_tol, floor_log2, self.precision_bits
            )));
        }
        if self.max_terms < 16 {
            return Err(QError::Context(format!(
                "max_terms must be at least 16, got {}",
                self.max_terms
            )));
        }
        Ok(())
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Precision used for intermediate arithmetic.
    pub fn working_prec(&self) -> u32 {
        self.precision_bits + self.guard_bits
    }

    pub fn with_precision_bits(&self, bits: u32) -> Result<Self> {
        Self::new(bits, self.rel_tol, self.max_terms, self.guard_bits)
    }

    pub fn with_rel_tol(&self, rel_tol: f64) -> Result<Self> {
        Self::new(self.precision_bits, rel_tol, self.max_terms, self.guard_bits)
    }

    pub fn with_max_terms(&self, max_terms: u64) -> Result<Self> {
        Self::new(self.precision_bits, self.rel_tol, max_terms, self.guard_bits)
    }

    /// The tolerance divided by `factor`, clamped to what the precision can
    /// deliver.
    pub fn tightened(&self, factor: f64) -> Self {
        let floor = (8.0 - self.precision_bits as f64).exp2();
        let mut out = self.clone();
        out.rel_tol = (self.rel_tol / factor).max(floor);
        out
    }

    pub fn rel_tol_big(&self) -> BigReal {
        BigReal::from_f64(self.rel_tol, self.working_prec())
    }

    /// Per-primitive truncation budget.
    pub fn primitive_tol(&self) -> BigReal {
        BigReal::from_f64(self.rel_tol / 4.0, self.working_prec())
    }

    /// Distance to a non-positive integer below which an argument counts as a
    /// q-gamma pole: `2^-(precision_bits/2)`.
    pub fn pole_threshold(&self) -> BigReal {
        BigReal::pow2(-((self.precision_bits / 2) as i32), self.working_prec())
    }

    /// Relative-error floor `2^-precision_bits`.
    pub fn error_floor(&self) -> BigReal {
        BigReal::pow2(-(self.precision_bits as i32), self.working_prec())
    }

    pub fn big(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.working_prec())
    }

    pub fn ratio(&self, num: i64, den: i64) -> BigReal {
        BigReal::ratio(num, den, self.working_prec())
    }

    pub fn parse(&self, text: &str) -> Result<BigReal> {
        BigReal::parse(text, self.working_prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let ctx = PrecisionContext::default();
        assert!(ctx.validate().is_ok());
        assert_eq!(ctx.working_prec(), 288);
    }

    #[test]
    fn rejects_invalid_contexts() {
        assert!(PrecisionContext::new(32, 1e-5, 100, 0).is_err());
        assert!(PrecisionContext::new(64, 1e-30, 100, 0).is_err());
        assert!(PrecisionContext::new(64, 1e-15, 100, 0).is_ok());
        assert!(PrecisionContext::new(256, 1e-30, 8, 0).is_err());
        assert!(PrecisionContext::new(256, 0.0, 100, 0).is_err());
        assert!(PrecisionContext::new(256, f64::NAN, 100, 0).is_err());
    }

    #[test]
    fn tightened_respects_precision_floor() {
        let ctx = PrecisionContext::new(64, 1e-15, 100, 0).unwrap();
        let t = ctx.tightened(1e6);
        assert!(t.rel_tol() >= (8.0f64 - 64.0).exp2());
        assert!(t.validate().is_ok());
    }
}
