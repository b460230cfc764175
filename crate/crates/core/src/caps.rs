//! Resource caps shared by every stage of the pipeline.

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "MINPERM_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted by any constructor.
    pub order: usize,
    /// Largest number of subgroups the lattice enumeration may produce.
    pub lattice: usize,
    /// Largest number of conjugacy classes of subgroups the oracle searches.
    pub oracle: usize,
    /// Largest number of maximal-size choices per greedy step when branching.
    pub branch: usize,
    /// Largest number of collections materialized by any enumeration.
    pub enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 4096,
            lattice: 200_000,
            oracle: 5000,
            branch: 10_000,
            enumeration: 20_000,
        }
    }
}

impl Caps {
    /// Applies overrides of the form `order=N,lattice=N,oracle=N,branch=N,enumeration=N`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let mut offset = 0;
        for item in spec.split(',') {
            let trimmed = item.trim();
            if !trimmed.is_empty() {
                let (key, value) = trimmed
                    .split_once('=')
                    .ok_or_else(|| Error::parse(offset, format!("expected key=value, got {trimmed:?}")))?;
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(offset, format!("bad cap value {value:?}")))?;
                if value == 0 {
                    return Err(Error::ParameterOutOfRange(format!("cap {key} must be positive")));
                }
                match key.trim() {
                    "order" => self.order = value,
                    "lattice" => self.lattice = value,
                    "oracle" => self.oracle = value,
                    "branch" => self.branch = value,
                    "enumeration" => self.enumeration = value,
                    other => return Err(Error::parse(offset, format!("unknown cap {other:?}"))),
                }
            }
            offset += item.len() + 1;
        }
        Ok(self)
    }

    /// Defaults, overridden by `MINPERM_CAPS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order {
            Err(Error::OrderCapExceeded {
                order,
                cap: self.order,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let caps = Caps::default().with_overrides("order=100, oracle=7").unwrap();
        assert_eq!(caps.order, 100);
        assert_eq!(caps.oracle, 7);
        assert_eq!(caps.lattice, Caps::default().lattice);
    }

    #[test]
    fn bad_overrides() {
        assert!(Caps::default().with_overrides("order").is_err());
        assert!(Caps::default().with_overrides("speed=3").is_err());
        assert!(Caps::default().with_overrides("order=0").is_err());
        assert!(Caps::default().with_overrides("order=x").is_err());
    }
}
