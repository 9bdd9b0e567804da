use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symcore::Rect;

/// The Grassmannian of `kappa`-planes in `P^n`, i.e. `Gr(kappa+1, n+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrContext {
    n: u32,
    kappa: u32,
}

impl GrContext {
    pub fn new(n: u32, kappa: u32) -> Result<Self> {
        if kappa < 1 || kappa + 1 > n {
            return Err(Error::InvalidParams(format!(
                "Grassmannian needs 1 <= kappa <= n-1, got n={n}, kappa={kappa}"
            )));
        }
        // one byte per Chern-root exponent in the oracle
        if kappa as usize + 1 > crate::symcore::poly::MAX_VARS || n > 127 {
            return Err(Error::InvalidParams(format!(
                "n={n}, kappa={kappa} exceeds the supported range (kappa <= 7, n <= 127)"
            )));
        }
        Ok(GrContext { n, kappa })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Rank of the tautological subbundle V.
    pub fn rank_v(&self) -> u32 {
        self.kappa + 1
    }

    /// Rank of the quotient bundle QV.
    pub fn rank_qv(&self) -> u32 {
        self.n - self.kappa
    }

    pub fn dim(&self) -> u32 {
        self.rank_v() * self.rank_qv()
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.rank_v() as usize, self.rank_qv())
    }

    /// Number of Chern roots carried by the monomial oracle.
    pub fn vars(&self) -> usize {
        self.rank_v() as usize
    }

    /// Largest root exponent the oracle ever reads: `n`.
    pub fn oracle_max_exp(&self) -> u32 {
        self.n
    }
}
