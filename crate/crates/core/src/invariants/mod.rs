//! Cup-length and zero-divisor cup-length: certificates, the exact ideal-power
//! oracle, and the real projective space table.

mod norm;
mod zcl;

pub use norm::{norm_cl_exact, NormExact};

pub use zcl::{
    odd_power_length, power_exponent, reduce_tensor, zcl_certificate_bott, zcl_exact, zcl_greedy,
    ZclCertificate, ZclExact, ZclWitness,
};

use serde::{Deserialize, Serialize};

use crate::cohomology::{projective_ring, RingPresentation};
use crate::error::{Error, Result};
use crate::gf2::binom_odd;

pub const DEFAULT_EXACT_BUDGET: usize = 12;
pub const BUDGET_ENV: &str = "SMALLCOVER_EXACT_BUDGET";

/// Exact-search budget (maximum ring dimension), overridable through
/// `SMALLCOVER_EXACT_BUDGET`.
pub fn exact_budget_from_env() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXACT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalValue {
    pub lo: usize,
    pub hi: usize,
    pub lo_source: String,
    pub hi_source: String,
}

impl IntervalValue {
    pub fn new(lo: usize, hi: usize, lo_source: impl Into<String>, hi_source: impl Into<String>) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(IntervalValue {
            lo,
            hi,
            lo_source: lo_source.into(),
            hi_source: hi_source.into(),
        })
    }

    pub fn exact(value: usize, source: impl Into<String>) -> Self {
        let source = source.into();
        IntervalValue {
            lo: value,
            hi: value,
            lo_source: source.clone(),
            hi_source: source,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersects(&self, lo: usize, hi: usize) -> bool {
        self.lo <= hi && lo <= self.hi
    }

    pub fn render(&self) -> String {
        if self.is_exact() {
            format!("{}", self.lo)
        } else {
            format!("[{},{}]", self.lo, self.hi)
        }
    }
}

pub fn cup_length(ring: &RingPresentation) -> usize {
    ring.algebra().cup_length()
}

/// Zero-divisor cup-length as an interval: exact within the budget,
/// otherwise the best certificate against `2·cl`.
pub fn zcl_interval(ring: &RingPresentation, budget: usize, certificate_only: bool) -> Result<IntervalValue> {
    if !certificate_only {
        match zcl_exact(ring, budget) {
            Ok(e) => return Ok(IntervalValue::exact(e.value, "exhaustive kernel-power chain")),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let mut lo = zcl_greedy(ring.algebra()).length();
    let mut lo_source = "greedy zero-divisor product".to_string();
    if ring.bott_relations().is_some() {
        let cert = zcl_certificate_bott(ring)?;
        if !cert.product.is_zero() && cert.length() >= lo {
            lo = cert.length();
            lo_source = "odd binomial power certificate".into();
        }
    }
    IntervalValue::new(lo, 2 * cup_length(ring), lo_source, "cup-length of the square")
}

/// Largest `k ≤ 2n` for which `(1⊗x + x⊗1)^k` survives in `H*(RPⁿ)^{⊗2}`:
/// some `i` in `[k-n, n]` has `C(k, i)` odd.
pub fn rp_power_window(n: usize) -> usize {
    (0..=2 * n)
        .rev()
        .find(|&k| {
            (k.saturating_sub(n)..=n.min(k)).any(|i| binom_odd(k as u64, i as u64).expect("i ≤ k"))
        })
        .unwrap_or(0)
}

/// `zcl(RPⁿ)`. The kernel of the cup product on `Z₂[x]/(x^{n+1})^{⊗2}` is the
/// principal ideal of `1⊗x + x⊗1`, so the power window is exact; within the
/// budget the ideal-power chain is used instead.
pub fn zcl_rp(n: usize, budget: usize) -> Result<IntervalValue> {
    if n < 1 {
        return Err(Error::InvalidInput("zcl(RPⁿ) needs n ≥ 1".into()));
    }
    if n < budget {
        let e = zcl_exact(&projective_ring(n)?, budget)?;
        return Ok(IntervalValue::exact(e.value, "exhaustive kernel-power chain"));
    }
    let window = rp_power_window(n);
    let mut lo = window;
    let mut lo_source = "odd binomial window".to_string();
    if n.is_power_of_two() && 2 * n - 1 > lo {
        lo = 2 * n - 1;
        lo_source = "power-of-two bound 2n-1".into();
    }
    IntervalValue::new(lo, window.max(lo), lo_source, "principal kernel ideal")
}

/// Cup-length of the norm subring `N = span{x⊗y + y⊗x}` of `H* ⊗ H*`.
/// `N⁺` lies in the cup kernel, so `zcl` bounds it above; products of
/// `1⊗g + g⊗1` are norms, so the greedy and Bott certificates bound it below.
pub fn norm_cup_length(ring: &RingPresentation, budget: usize, certificate_only: bool) -> Result<IntervalValue> {
    if !certificate_only {
        match norm_cl_exact(ring, budget) {
            Ok(e) => return Ok(IntervalValue::exact(e.value, "exhaustive norm-power chain")),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let mut lo = zcl_greedy(ring.algebra()).length();
    let mut lo_source = "greedy product of norms 1⊗g + g⊗1".to_string();
    if ring.bott_relations().is_some() {
        let cert = zcl_certificate_bott(ring)?;
        if !cert.product.is_zero() && cert.length() >= lo {
            lo = cert.length();
            lo_source = "odd binomial power certificate".into();
        }
    }
    let z = zcl_interval(ring, budget, certificate_only)?;
    IntervalValue::new(lo, z.hi, lo_source, format!("contained in the cup kernel: {}", z.hi_source))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::BottMatrix;
    use crate::cohomology::{bott_ring, dold_ring, point_ring, sphere_ring};

    #[test]
    fn cup_lengths() {
        for n in 1..6 {
            assert_eq!(cup_length(&projective_ring(n).unwrap()), n);
        }
        let b = bott_ring(&BottMatrix::from_code(&[2, 3], 0b101).unwrap());
        assert_eq!(cup_length(&b), 5);
        let d = dold_ring(&projective_ring(3).unwrap(), &[2, 4]).unwrap();
        assert_eq!(cup_length(&d), 3 + 2 + 2 - 1);
        assert_eq!(cup_length(&point_ring()), 0);
    }

    #[test]
    fn projective_table() {
        assert_eq!(zcl_rp(1, 12).unwrap(), IntervalValue::exact(1, "exhaustive kernel-power chain"));
        assert_eq!(zcl_rp(2, 12).unwrap().lo, 3);
        for n in 1..40 {
            let budgeted = zcl_rp(n, 64).unwrap();
            let window = zcl_rp(n, 0).unwrap();
            assert!(budgeted.is_exact() && window.is_exact());
            assert_eq!(budgeted.lo, window.lo, "n = {n}");
            let s = usize::BITS - 1 - n.leading_zeros();
            assert_eq!(window.lo, (1 << (s + 1)) - 1, "n = {n}");
        }
    }

    #[test]
    fn large_projective_is_two_to_the_s_plus_one_minus_one() {
        assert_eq!(zcl_rp(1 << 10, 12).unwrap().lo, (1 << 11) - 1);
        assert_eq!(zcl_rp(1000, 12).unwrap().lo, 1023);
    }

    #[test]
    fn interval_outside_budget() {
        let b = bott_ring(&BottMatrix::diagonal(&[4, 2]).unwrap());
        let z = zcl_interval(&b, 4, false).unwrap();
        assert_eq!(z.lo, 10);
        assert_eq!(z.hi, 12);
        let exact = zcl_interval(&b, 64, false).unwrap();
        assert!(exact.is_exact() && exact.lo >= 10);
    }

    #[test]
    fn norm_subring() {
        assert_eq!(norm_cup_length(&point_ring(), 12, false).unwrap().lo, 0);
        assert_eq!(norm_cup_length(&projective_ring(2).unwrap(), 12, false).unwrap().lo, 3);
        assert_eq!(norm_cup_length(&sphere_ring(4).unwrap(), 12, false).unwrap().hi, 1);
    }

    #[test]
    fn interval_rejects_inverted_bounds() {
        assert!(IntervalValue::new(3, 2, "a", "b").is_err());
    }
}
