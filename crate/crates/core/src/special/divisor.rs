use crate::error::{Error, Result};
use crate::eval::ComplexValue;

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Generalised divisor sum `sum_{d | n} d^z`.
pub fn sigma(z: ComplexValue, n: i64) -> Result<ComplexValue> {
    if n < 1 {
        return Err(Error::Domain(format!("sigma needs n >= 1, got {n}")));
    }
    Ok(divisors(n as u64)
        .into_iter()
        .map(|d| (z * (d as f64).ln()).exp())
        .sum())
}

/// `sigma(-1, n)`, the real case used by the eta-type identities.
pub(crate) fn sigma_minus_one(n: u64) -> f64 {
    divisors(n).into_iter().map(|d| 1.0 / d as f64).sum()
}
