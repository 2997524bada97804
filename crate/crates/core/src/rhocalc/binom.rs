use std::sync::OnceLock;

use crate::exactmath::Rational;

/// Largest `n` in the cached Pascal triangle.
pub const MAX_BINOM_N: usize = 64;

fn table() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t: Vec<Vec<u128>> = Vec::with_capacity(MAX_BINOM_N + 1);
        for n in 0..=MAX_BINOM_N {
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = t[n - 1][k - 1] + t[n - 1][k];
            }
            t.push(row);
        }
        t
    })
}

/// C(n, k), zero when `k > n`. Panics for `n > MAX_BINOM_N`.
pub fn binomial(n: usize, k: usize) -> u128 {
    assert!(n <= MAX_BINOM_N, "binomial({n}, {k}) beyond cached range");
    if k > n {
        0
    } else {
        table()[n][k]
    }
}

pub fn binom_q(n: usize, k: usize) -> Rational {
    Rational::from(binomial(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(0, 0), 1);
    }
}
