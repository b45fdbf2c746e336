/// Resource caps for every exhaustive enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest field order `q` a [`crate::Field`] may have.
    pub max_field_order: u64,
    /// Largest number of objects (points, subspaces, group elements,
    /// candidate polynomials) a single enumeration may visit.
    pub max_enum: u64,
    /// Largest prime the brute-force census accepts for order exponent 12.
    pub census_max_prime_exp12: u64,
    /// Largest prime the brute-force census accepts for smaller exponents.
    pub census_max_prime: u64,
}

pub const DEFAULT_MAX_FIELD_ORDER: u64 = 1 << 20;
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_field_order: DEFAULT_MAX_FIELD_ORDER,
            max_enum: DEFAULT_MAX_ENUM,
            census_max_prime_exp12: 7,
            census_max_prime: 13,
        }
    }
}

impl Limits {
    pub fn with_max_enum(mut self, max_enum: u64) -> Self {
        self.max_enum = max_enum;
        self
    }

    pub(crate) fn check_enum(&self, what: &str, size: u128) -> crate::Result<()> {
        if size > self.max_enum as u128 {
            return Err(crate::Error::BoundExceeded {
                what: what.to_string(),
                size,
                cap: self.max_enum as u128,
            });
        }
        Ok(())
    }
}
