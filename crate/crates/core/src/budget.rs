//! Enumeration caps shared by the point counter and the Jacobian oracle.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "CURVECLASS_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest field F_{q^n} that may be enumerated element by element.
    pub max_field_size: u64,
    /// Largest Jacobian the oracle will tabulate.
    pub max_group_order: u64,
    /// Largest q^g for which the oracle enumerates Mumford pairs.
    pub max_oracle_qg: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_field_size: 1_000_000,
            max_group_order: 10_000,
            max_oracle_qg: 1_000,
        }
    }
}

impl Budget {
    /// Reads overrides from `CURVECLASS_BUDGET`.
    ///
    /// A bare integer replaces the field-enumeration cap; otherwise the value is a
    /// comma separated list of `field=N`, `group=N`, `oracle=N`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(v) => Budget::default().with_overrides(&v),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Malformed(format!("{ENV_VAR}: bad number {s:?}")))
        };
        if !spec.contains('=') {
            self.max_field_size = parse(spec)?;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::Malformed(format!("{ENV_VAR}: expected key=value, got {part:?}"))
            })?;
            let v = parse(v)?;
            match k.trim() {
                "field" => self.max_field_size = v,
                "group" => self.max_group_order = v,
                "oracle" => self.max_oracle_qg = v,
                other => {
                    return Err(Error::Malformed(format!(
                        "{ENV_VAR}: unknown key {other:?}"
                    )))
                }
            }
        }
        Ok(self)
    }

    pub(crate) fn check_field(&self, q: u64, n: u32) -> Result<u64> {
        match q.checked_pow(n) {
            Some(size) if size <= self.max_field_size => Ok(size),
            _ => Err(Error::BudgetExceeded(format!(
                "enumerating F_{{{q}^{n}}} exceeds the cap of {} elements",
                self.max_field_size
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let b = Budget::default().with_overrides("5000").unwrap();
        assert_eq!(b.max_field_size, 5000);
        let b = Budget::default()
            .with_overrides("group=7, oracle=9")
            .unwrap();
        assert_eq!((b.max_group_order, b.max_oracle_qg), (7, 9));
        assert!(Budget::default().with_overrides("bogus=1").is_err());
        assert!(Budget::default().with_overrides("x").is_err());
    }

    #[test]
    fn field_cap() {
        let b = Budget::default();
        assert_eq!(b.check_field(10, 6).unwrap(), 1_000_000);
        assert!(b.check_field(10, 7).unwrap_err().is_budget());
        assert!(b.check_field(u64::MAX, 2).unwrap_err().is_budget());
    }
}
