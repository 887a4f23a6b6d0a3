//! The `e`-Mullineux involution on `e`-regular partitions, its extension to
//! all partitions, and the simpler involution `M'_e`.
//!
//! Two independent routes compute `M_e` on `e`-regular partitions: the
//! good-box recursion in [`crystal`] (used by the engine, memoized) and the
//! symbol search in [`rim`] (an oracle, exponential, bounded).

pub mod cache;
pub mod crystal;
pub mod rim;

use std::sync::{Arc, OnceLock};

pub use cache::MemoCache;
pub use crystal::{
    cogood_box, good_box, good_residues, mullineux_regular_by, Cancellation, ReadingOrder, Residue,
    SignatureConvention,
};
pub use rim::{
    e_rim, mullineux_symbol, mullineux_symbol_search, mullineux_symbol_search_bounded, Cell,
    MullineuxSymbol, DEFAULT_ORACLE_BOUND,
};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Memoized Mullineux engine. Cheap to share: clones share the cache.
#[derive(Clone, Debug)]
pub struct Mullineux {
    convention: SignatureConvention,
    cache: Arc<MemoCache>,
}

impl Default for Mullineux {
    fn default() -> Self {
        Self::new()
    }
}

impl Mullineux {
    pub fn new() -> Self {
        Self::with_convention(SignatureConvention::CALIBRATED)
    }

    pub fn with_convention(convention: SignatureConvention) -> Self {
        Mullineux {
            convention,
            cache: Arc::new(MemoCache::new()),
        }
    }

    /// Process-wide engine with the calibrated convention.
    pub fn shared() -> &'static Mullineux {
        static SHARED: OnceLock<Mullineux> = OnceLock::new();
        SHARED.get_or_init(Mullineux::new)
    }

    pub fn convention(&self) -> SignatureConvention {
        self.convention
    }

    pub fn cache(&self) -> &MemoCache {
        &self.cache
    }

    /// `M_e(λ)` for `e`-regular `λ`.
    pub fn regular(&self, lambda: &Partition, e: usize) -> Result<Partition> {
        check_e(e)?;
        if !lambda.is_regular(e) {
            return Err(Error::Domain(format!("{lambda} is not {e}-regular")));
        }
        self.regular_unchecked(lambda, e)
    }

    fn regular_unchecked(&self, lambda: &Partition, e: usize) -> Result<Partition> {
        if lambda.is_empty() {
            return Ok(Partition::empty());
        }
        if let Some(hit) = self.cache.get(e, lambda) {
            return Ok(hit);
        }
        let (i, cell) = crystal::peel(lambda, e, self.convention, &mut |r| r[0])?;
        let image = self.regular_unchecked(&crystal::remove_cell(lambda, cell), e)?;
        let back = cogood_box(&image, e, i.negate(e), self.convention)?;
        let out = crystal::add_cell(&image, back);
        Ok(self.cache.get_or_insert(e, lambda.clone(), out))
    }

    /// Generalized `M_e`: with `μ = ν ∪ e * ρ` and `ν` regular,
    /// `M_e(μ) = M_e(ν) ∪ e * ρ^t`.
    pub fn general(&self, mu: &Partition, e: usize) -> Result<Partition> {
        check_e(e)?;
        let (nu, rho) = mu.decompose_regular(e);
        let head = self.regular_unchecked(&nu, e)?;
        Ok(head.concat(&rho.transpose().repeat(e)))
    }
}

fn check_e(e: usize) -> Result<()> {
    if e < 2 {
        return Err(Error::Domain(format!("e = {e} must be at least 2")));
    }
    Ok(())
}

/// `M_e(λ)` on the shared engine.
pub fn mullineux_regular(lambda: &Partition, e: usize) -> Result<Partition> {
    Mullineux::shared().regular(lambda, e)
}

/// Generalized `M_e(μ)` on the shared engine.
pub fn mullineux_general(mu: &Partition, e: usize) -> Result<Partition> {
    Mullineux::shared().general(mu, e)
}

/// `M'_e(μ) = ν ∪ e ρ^t` where `μ = ν ∪ eρ` and no row of `ν` is divisible
/// by `e`.
pub fn mprime(mu: &Partition, e: usize) -> Result<Partition> {
    check_e(e)?;
    let (nu, rho) = mu.decompose_divisible(e);
    Ok(nu.concat(&rho.transpose().scale(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn regular_examples() {
        let m = Mullineux::new();
        assert_eq!(m.regular(&p("1"), 5).unwrap(), p("1"));
        assert_eq!(m.regular(&p("3"), 3).unwrap(), p("2,1"));
        assert_eq!(m.regular(&p("3,2"), 7).unwrap(), p("2,2,1"));
        assert_eq!(m.regular(&p("5"), 4).unwrap(), p("2,2,1"));
        assert!(matches!(m.regular(&p("1^3"), 3), Err(Error::Domain(_))));
        assert!(matches!(m.regular(&p("1"), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn general_examples() {
        let m = Mullineux::new();
        assert_eq!(
            m.general(&Partition::column(29), 29).unwrap(),
            Partition::column(29)
        );
        assert_eq!(m.general(&p("2,2,1,1"), 2).unwrap(), p("2,2,1,1"));
        assert_eq!(
            m.general(&p("4,3"), 2).unwrap(),
            m.regular(&p("4,3"), 2).unwrap()
        );
        assert_eq!(
            m.general(&Partition::empty(), 3).unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn mprime_examples() {
        assert_eq!(mprime(&p("4,3,2,1"), 2).unwrap(), p("4,3,2,1"));
        assert_eq!(mprime(&p("6,2"), 2).unwrap(), p("4,2,2"));
        assert_eq!(
            mprime(&Partition::column(7), 3).unwrap(),
            Partition::column(7)
        );
    }

    #[test]
    fn cache_is_filled_and_reused() {
        let m = Mullineux::new();
        let first = m.regular(&p("5,3,1"), 3).unwrap();
        let filled = m.cache().len();
        assert!(filled > 0);
        assert_eq!(m.regular(&p("5,3,1"), 3).unwrap(), first);
        assert_eq!(m.cache().len(), filled);
    }
}
