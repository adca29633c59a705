//! Primes by index, grown on demand and shared across threads.

use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest prime whose index [`prime_index`] will compute.
pub const PRIME_INDEX_LIMIT: u64 = 1 << 22;

fn primes() -> &'static Mutex<Vec<u64>> {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    PRIMES.get_or_init(|| Mutex::new(vec![2, 3]))
}

/// Grows the table with a segmented sieve until `done(table)` holds.
fn grow_until(done: impl Fn(&[u64]) -> bool) -> std::sync::MutexGuard<'static, Vec<u64>> {
    let mut table = primes().lock().expect("prime table poisoned");
    while !done(&table) {
        let lo = table.last().unwrap() + 1;
        let hi = lo.saturating_mul(2);
        let mut composite = vec![false; (hi - lo) as usize];
        for &p in table.iter() {
            if p * p >= hi {
                break;
            }
            let start = lo.div_ceil(p).max(p) * p;
            for m in (start..hi).step_by(p as usize) {
                composite[(m - lo) as usize] = true;
            }
        }
        // the table covers every prime below sqrt(hi) because lo > sqrt(hi)
        table.extend((lo..hi).filter(|&n| !composite[(n - lo) as usize]));
    }
    table
}

/// `p_k`, with `p_0 = 2`.
pub fn nth_prime(k: usize) -> u64 {
    grow_until(|t| t.len() > k)[k]
}

/// The `k` with `p_k = p`, or `None` when `p` is not prime.
pub fn prime_index(p: u64) -> Result<Option<usize>> {
    if p > PRIME_INDEX_LIMIT {
        return Err(Error::Overflow(format!("prime index of {p} is beyond the supported range")));
    }
    let table = grow_until(|t| *t.last().unwrap() >= p);
    Ok(table.binary_search(&p).ok())
}

/// `n = p^e` with `p` prime and `e ≥ 1`: returns `(p, e)`. Fails when every
/// prime factor of `n` exceeds [`PRIME_INDEX_LIMIT`].
pub fn prime_power(n: u128) -> Result<Option<(u64, u32)>> {
    if n < 2 {
        return Ok(None);
    }
    let table = grow_until(|t| *t.last().unwrap() >= PRIME_INDEX_LIMIT);
    for &p in table.iter() {
        if p > PRIME_INDEX_LIMIT {
            break;
        }
        let pp = p as u128;
        if pp * pp > n {
            // n is itself prime
            return if n <= PRIME_INDEX_LIMIT as u128 { Ok(Some((n as u64, 1))) } else { break };
        }
        if n.is_multiple_of(pp) {
            let mut m = n;
            let mut e = 0;
            while m.is_multiple_of(pp) {
                m /= pp;
                e += 1;
            }
            return Ok((m == 1).then_some((p, e)));
        }
    }
    Err(Error::Overflow(format!("{n} has no prime factor up to {PRIME_INDEX_LIMIT}")))
}
