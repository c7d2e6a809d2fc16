//! Per-modulus reduction data for the power basis of `Q(zeta_n)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith;

#[derive(Debug)]
pub struct CycTable {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of `Phi_n`, lowest degree first (monic, length `phi + 1`).
    pub cyclotomic_poly: Vec<i64>,
    /// `rows[j - phi]` holds `x^j mod Phi_n` for `phi <= j < n`.
    pub rows: Vec<Vec<i64>>,
}

static TABLES: OnceLock<RwLock<HashMap<u64, Arc<CycTable>>>> = OnceLock::new();

/// Shared reduction table for modulus `n`, built on first use.
pub fn table(n: u64) -> Arc<CycTable> {
    assert!(n >= 1, "cyclotomic modulus must be positive");
    let cache = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("cyclotomic table cache poisoned").get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(build(n));
    let mut guard = cache.write().expect("cyclotomic table cache poisoned");
    Arc::clone(guard.entry(n).or_insert(built))
}

fn build(n: u64) -> CycTable {
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    debug_assert_eq!(phi as u64, arith::totient(n));
    let mut rows = Vec::with_capacity(n as usize - phi);
    if (phi as u64) < n {
        // x^phi = -(Phi_n - x^phi)
        let mut cur: Vec<i64> = poly[..phi].iter().map(|c| -c).collect();
        rows.push(cur.clone());
        for _ in (phi + 1)..(n as usize) {
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            if top != 0 {
                for (slot, c) in next.iter_mut().zip(&poly[..phi]) {
                    *slot -= top * c;
                }
            }
            rows.push(next.clone());
            cur = next;
        }
    }
    CycTable {
        n,
        phi,
        cyclotomic_poly: poly,
        rows,
    }
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_exact_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // first polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn reduction_rows_close_up() {
        // x^n = 1 modulo Phi_n: one more step past the last row gives 1
        for n in [3u64, 4, 6, 7, 9, 12, 15] {
            let t = table(n);
            let last = t.rows.last().unwrap();
            let top = last[t.phi - 1];
            let mut next = vec![0i64; t.phi];
            next[1..].copy_from_slice(&last[..t.phi - 1]);
            for (s, c) in next.iter_mut().zip(&t.cyclotomic_poly[..t.phi]) {
                *s -= top * c;
            }
            let mut one = vec![0i64; t.phi];
            one[0] = 1;
            assert_eq!(next, one, "n = {n}");
        }
    }
}
