use crate::error::{Error, Result};

/// Desk-scale guardrails shared by every constructor and enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_generators: usize,
    pub max_step: usize,
    pub max_basis: usize,
    pub max_set_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: 6,
            max_step: 6,
            max_basis: 200,
            max_set_size: 10_000_000,
        }
    }
}

impl Limits {
    pub fn with_max_set_size(mut self, cap: usize) -> Self {
        self.max_set_size = cap;
        self
    }

    pub fn with_max_basis(mut self, cap: usize) -> Self {
        self.max_basis = cap;
        self
    }

    pub fn check_set_size(&self, size: u128) -> Result<()> {
        if size > self.max_set_size as u128 {
            Err(Error::SetTooLarge {
                size,
                cap: self.max_set_size,
            })
        } else {
            Ok(())
        }
    }
}
