use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grchow::chern::binomial;
use crate::grchow::GrContext;

/// A validated triple `(n, d, kappa)`: degree-`d` hypersurfaces in `P^n`
/// and `kappa`-dimensional planes, with the derived dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleParams {
    pub n: u32,
    pub d: u32,
    pub kappa: u32,
    /// Rank of `QE = Sym^d V^dual`: `C(d+kappa, kappa)`.
    pub rank_qe: u64,
    pub dim_gr: u32,
    /// `kappa(n-kappa) - C(d+kappa,kappa) + kappa + 1`.
    pub s_excess: i64,
    /// `n - 1 - s_excess`.
    pub codim_shift: i64,
    /// Dimension of the projective space of degree-`d` hypersurfaces.
    pub big_n: BigInt,
    pub expected_fano_dim: i64,
    pub hf_dim: i64,
}

impl TripleParams {
    pub fn new(n: u32, d: u32, kappa: u32) -> Result<Self> {
        if kappa < 1 {
            return Err(Error::InvalidParams(format!("kappa must be >= 1, got {kappa}")));
        }
        if d < 1 {
            return Err(Error::InvalidParams(format!("d must be >= 1, got {d}")));
        }
        if n < kappa + 1 {
            return Err(Error::InvalidParams(format!("n must be >= kappa + 1, got n={n}, kappa={kappa}")));
        }
        let ctx = GrContext::new(n, kappa)?;
        let rank_qe = binomial(u64::from(d) + u64::from(kappa), u64::from(kappa));
        let (n64, k64) = (i64::from(n), i64::from(kappa));
        let rank = i64::try_from(rank_qe)
            .map_err(|_| Error::InvalidParams(format!("rank of Sym^{d} too large")))?;
        let s_excess = k64 * (n64 - k64) - rank + k64 + 1;
        let expected_fano_dim = i64::from(ctx.dim()) - rank;
        let hf_dim = n64 - 2 * k64 - 1;
        let big_n = big_binomial(n + d, d) - BigInt::one();
        let p = TripleParams {
            n,
            d,
            kappa,
            rank_qe,
            dim_gr: ctx.dim(),
            s_excess,
            codim_shift: n64 - 1 - s_excess,
            big_n,
            expected_fano_dim,
            hf_dim,
        };
        if p.expected_fano_dim - p.s_excess != p.hf_dim {
            return Err(Error::Assertion(format!("dimension bookkeeping inconsistent for {p}")));
        }
        Ok(p)
    }

    pub fn context(&self) -> GrContext {
        GrContext::new(self.n, self.kappa).expect("validated on construction")
    }

    /// `d >= 3` and `n - kappa + 1 >= C(kappa-1+d, kappa)`.
    pub fn elv_sufficient(&self) -> bool {
        let need = binomial(u64::from(self.kappa) - 1 + u64::from(self.d), u64::from(self.kappa));
        self.d >= 3 && u64::from(self.n - self.kappa + 1) >= need
    }

    /// `n >= C(kappa+d-1, kappa) + kappa - 1`.
    pub fn intro_bound(&self) -> bool {
        let need = binomial(u64::from(self.kappa) + u64::from(self.d) - 1, u64::from(self.kappa));
        u64::from(self.n) >= need + u64::from(self.kappa) - 1
    }

    /// Sort key used by every report: `(kappa, d, n)`.
    pub fn key(&self) -> (u32, u32, u32) {
        (self.kappa, self.d, self.n)
    }
}

fn big_binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for TripleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n,d,kappa)=({},{},{})", self.n, self.d, self.kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excess_for_known_triples() {
        assert_eq!(TripleParams::new(6, 3, 2).unwrap().s_excess, 1);
        assert_eq!(TripleParams::new(8, 4, 2).unwrap().s_excess, 0);
        assert_eq!(TripleParams::new(5, 2, 3).unwrap().s_excess, 0);
        assert_eq!(TripleParams::new(11, 5, 2).unwrap().s_excess, 0);
        assert_eq!(TripleParams::new(9, 3, 3).unwrap().s_excess, 2);
    }

    #[test]
    fn derived_fields() {
        let p = TripleParams::new(3, 3, 1).unwrap();
        assert_eq!(p.rank_qe, 4);
        assert_eq!(p.dim_gr, 4);
        assert_eq!(p.codim_shift, 2);
        assert_eq!(p.big_n, BigInt::from(19));
        assert_eq!(p.expected_fano_dim, 0);
        assert_eq!(p.hf_dim, 0);
        assert_eq!(p.expected_fano_dim - p.s_excess, p.hf_dim);
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(TripleParams::new(1, 3, 1).is_err());
        assert!(TripleParams::new(4, 0, 1).is_err());
        assert!(TripleParams::new(4, 2, 0).is_err());
        assert!(TripleParams::new(3, 2, 3).is_err());
    }

    #[test]
    fn bounds() {
        // n - kappa + 1 >= C(kappa-1+d, kappa)
        assert!(TripleParams::new(12, 3, 3).unwrap().elv_sufficient());
        assert!(!TripleParams::new(11, 3, 3).unwrap().elv_sufficient());
        assert!(!TripleParams::new(12, 2, 1).unwrap().elv_sufficient());
        // d = 2: n >= 2 kappa
        assert!(TripleParams::new(6, 2, 3).unwrap().intro_bound());
        assert!(!TripleParams::new(5, 2, 3).unwrap().intro_bound());
    }
}
