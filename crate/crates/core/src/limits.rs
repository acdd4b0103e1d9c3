/// Bounds on materialized carriers and on brute-force enumerations.
///
/// `cap` bounds every carrier that is listed element by element or stored
/// as an explicit table. Direct sums that are only ever handled block by
/// block are not bounded by it; their blocks are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
    /// Maximum number of candidate maps tried by a brute-force enumeration.
    pub enum_budget: u128,
}

pub const DEFAULT_CAP: usize = 4096;

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: DEFAULT_CAP, enum_budget: 1 << 22 }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits { cap, ..Limits::default() }
    }

    pub(crate) fn check(&self, stage: &str, size: u128) -> crate::Result<()> {
        if size > self.cap as u128 {
            Err(crate::Error::resource(stage, size, self.cap))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_budget(&self, stage: &str, candidates: u128) -> crate::Result<()> {
        if candidates > self.enum_budget {
            Err(crate::Error::Resource { stage: stage.to_string(), size: candidates, cap: self.enum_budget })
        } else {
            Ok(())
        }
    }
}

/// Saturating power used for carrier-size estimates.
pub(crate) fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
