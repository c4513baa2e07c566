//! Exact integer power arithmetic for degree bookkeeping.

/// Largest `r` with `r^k <= n`.
pub fn integer_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    // Float estimate is within one of the answer for u64 inputs; settle exactly.
    while r > 0 && r.checked_pow(k).is_none_or(|p| p > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|p| p <= n) {
        r += 1;
    }
    r
}

/// `r` with `r^k == n`, if it exists.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    let r = integer_root(n, k);
    (r.checked_pow(k) == Some(n)).then_some(r)
}

/// Every representation `n = r^s` with `r >= 2` and `s >= 2`, ordered by
/// decreasing exponent.
pub fn perfect_power_pairs(n: u64) -> Vec<(u64, u32)> {
    if n < 4 {
        return Vec::new();
    }
    let max_exp = 63 - n.leading_zeros();
    (2..=max_exp)
        .rev()
        .filter_map(|s| exact_root(n, s).filter(|&r| r >= 2).map(|r| (r, s)))
        .collect()
}

/// Smallest `r` such that `n = r^s`; `n` itself when it is not a perfect power.
pub fn primitive_base(n: u64) -> (u64, u32) {
    perfect_power_pairs(n)
        .into_iter()
        .next()
        .unwrap_or((n, 1))
}

/// Whether `n^a = m^b` for some positive `a, b`.
pub fn multiplicatively_dependent(n: u64, m: u64) -> bool {
    primitive_base(n).0 == primitive_base(m).0
}

/// Powers `n, n^2, ...` not exceeding `limit`.
pub fn powers_up_to(n: u64, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = n;
    while p <= limit {
        out.push(p);
        match p.checked_mul(n) {
            Some(next) => p = next,
            None => break,
        }
    }
    out
}
