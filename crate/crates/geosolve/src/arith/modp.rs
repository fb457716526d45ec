//! Single-prime certificates. A gcd equal to 1 modulo a prime that keeps
//! both degrees proves coprimality over Q; anything else is inconclusive.

use super::poly::UniPoly;
use super::ring::{Int, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub const PRIMES: [u64; 4] = [2147483647, 2147483629, 2147483587, 2147483579];

fn to_mod(a: &BigInt, p: u64) -> u64 {
    let r = a % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Reduction of a rational polynomial; `None` if a denominator vanishes mod p.
pub fn reduce(poly: &UniPoly<Rat>, p: u64) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(poly.len());
    for c in poly.coeffs() {
        let d = to_mod(c.denom(), p);
        if d == 0 {
            return None;
        }
        out.push(to_mod(c.numer(), p) * inv_mod(d, p) % p);
    }
    trim(&mut out);
    Some(out)
}

pub fn reduce_int(poly: &UniPoly<Int>, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = poly.coeffs().iter().map(|c| to_mod(c, p)).collect();
    trim(&mut out);
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let t = r[k] * inv % p;
        if t != 0 {
            for j in 0..=db {
                let s = b[j] * t % p;
                r[k - db + j] = (r[k - db + j] + p - s) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut d: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, c)| (k as u64 % p) * c % p).collect();
    trim(&mut d);
    d
}

/// p(T + s) modulo the prime.
pub fn taylor_shift(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    let mut c = a.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            c[j] = (c[j] + c[j + 1] * s) % p;
        }
    }
    c
}

/// Rank of a list of vectors over F_p.
pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        let pivot: Vec<u64> = rows[r].iter().map(|x| x * inv % p).collect();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn signed_mod(v: i64, p: u64) -> u64 {
    let r = v.rem_euclid(p as i64);
    r as u64
}

/// True when gcd(a, b) = 1 over Q is certified by some prime.
pub fn coprime_certified(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> bool {
    for &p in PRIMES.iter() {
        let (ra, rb) = match (reduce(a, p), reduce(b, p)) {
            (Some(x), Some(y)) => (x, y),
            _ => continue,
        };
        if ra.len() != a.len() || rb.len() != b.len() {
            continue;
        }
        if gcd(&ra, &rb, p).len() == 1 {
            return true;
        }
    }
    false
}

/// True when squarefreeness is certified by some prime.
pub fn squarefree_certified(a: &UniPoly<Rat>) -> bool {
    if a.deg().unwrap_or(0) == 0 {
        return !a.is_zero();
    }
    for &p in PRIMES.iter() {
        let ra = match reduce(a, p) {
            Some(x) => x,
            None => continue,
        };
        if ra.len() != a.len() || (a.deg().unwrap() as u64) % p == 0 {
            continue;
        }
        if gcd(&ra, &derivative(&ra, p), p).len() == 1 {
            return true;
        }
    }
    false
}
