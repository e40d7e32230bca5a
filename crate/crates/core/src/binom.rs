//! Binomial coefficients modulo 2.

/// `C(n, k) mod 2`, by Lucas' theorem: the coefficient is odd exactly when the
/// binary digits of `k` are dominated by those of `n`, i.e. when `k` and `n - k`
/// have disjoint bits.
pub fn binom_mod2(n: u64, k: u64) -> bool {
    if k > n {
        return false;
    }
    k & (n - k) == 0
}

/// Same as [`binom_mod2`] but for signed-looking arguments that arise from
/// formula index arithmetic; any negative entry gives 0.
pub fn binom_mod2_i(n: i64, k: i64) -> bool {
    if n < 0 || k < 0 {
        return false;
    }
    binom_mod2(n as u64, k as u64)
}
