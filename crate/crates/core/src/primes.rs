//! Small prime utilities shared by the sieves.

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0), built by a
/// linear sieve. Also returns the primes in ascending order.
pub fn spf_table(n: usize) -> (Vec<u32>, Vec<u32>) {
    let mut spf = vec![0u32; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let j = i * p as usize;
            if p > si || j > n {
                break;
            }
            spf[j] = p;
        }
    }
    (spf, primes)
}

/// All primes `≤ n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, k)| k == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_sieve_matches_eratosthenes() {
        let (spf, primes) = spf_table(10_000);
        let plain: Vec<u32> = primes_up_to(10_000).into_iter().map(|p| p as u32).collect();
        assert_eq!(primes, plain);
        for n in 2..=10_000u64 {
            assert_eq!(spf[n as usize] as u64, factorize(n)[0].0);
        }
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(1));
        assert!(is_squarefree(3));
        assert!(!is_squarefree(12));
        assert!(is_squarefree(30));
    }
}
