//! Dense polynomials over the prime field GF(p), little-endian coefficient
//! vectors. Only what field construction needs: reduction, products modulo
//! a polynomial, gcd and an irreducibility test.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = (base % p) as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = (r[top] as u64 * lead_inv % p as u64) as u32;
        if factor != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (factor as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + p - y) % p);
    }
    trim(&mut out);
    out
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `base^(p^k)` reduced modulo `m`, by k successive p-th powers.
fn frobenius_power(base: &[u32], k: u32, m: &[u32], p: u32) -> Vec<u32> {
    let mut h = rem(base, m, p);
    for _ in 0..k {
        let mut acc = vec![1u32];
        let mut b = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        h = acc;
    }
    h
}

/// Ben-Or: a degree-d polynomial is irreducible iff it shares no factor
/// with x^(p^i) - x for 1 <= i <= d/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = (f.len() - 1) as u32;
    if d == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = frobenius_power(&h, 1, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division by every monic polynomial of degree <= d/2.
    fn irreducible_by_trial(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        for deg in 1..=d / 2 {
            let count = (p as usize).pow(deg as u32);
            for t in 0..count {
                let mut g = Vec::with_capacity(deg + 1);
                let mut x = t;
                for _ in 0..deg {
                    g.push((x % p as usize) as u32);
                    x /= p as usize;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for &(p, d) in &[(2u32, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (5, 2), (5, 3)] {
            let count = (p as usize).pow(d as u32);
            for t in 0..count {
                let mut f = Vec::with_capacity(d + 1);
                let mut x = t;
                for _ in 0..d {
                    f.push((x % p as usize) as u32);
                    x /= p as usize;
                }
                f.push(1);
                assert_eq!(is_irreducible(&f, p), irreducible_by_trial(&f, p), "p={p} f={f:?}");
            }
        }
    }

    #[test]
    fn x3_plus_x2_plus_x_plus_1_reducible_over_gf2() {
        assert!(!is_irreducible(&[1, 1, 1, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
    }
}
