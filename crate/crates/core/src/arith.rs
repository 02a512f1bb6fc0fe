//! Integer and rational helpers: valuations, factorization of small numbers,
//! primality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Floor division `a / b` for `b > 0`.
pub fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(n: &Int, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = Int::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn valuation(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64)
}

pub fn is_p_integral(x: &Rat, p: u64) -> bool {
    valuation_int(x.denom(), p) == 0
}

/// Splits `n = p^e * u` with `p ∤ u`, returning `(e, u)`.
pub fn split_p_part(n: &Int, p: u64) -> (u32, Int) {
    let e = valuation_int(n, p);
    let u = n / Int::from(p).pow(e);
    (e, u)
}

/// Prime factors of a nonzero integer by trial division, ascending and
/// without multiplicity.
pub fn prime_factors(n: &Int) -> Vec<u64> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factoring zero");
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while Int::from(p) * Int::from(p) <= n {
        let bp = Int::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > Int::one() {
        out.push(n.to_u64().expect("prime factor exceeds u64"));
    }
    out
}

/// Primes dividing the denominator of some entry.
pub fn denominator_primes<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Vec<u64> {
    let mut ps: Vec<u64> = xs
        .into_iter()
        .flat_map(|x| prime_factors(x.denom()))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

/// Deterministic Miller-Rabin. The first 13 prime bases are a proof of
/// primality below 3.3 * 10^24; above that the answer is "probable prime".
pub fn is_prime(n: &Int) -> bool {
    let two = int(2);
    if *n < two {
        return false;
    }
    const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for b in BASES {
        let b = Int::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let mut d = n1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for b in BASES {
        let mut x = Int::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Whether [`is_prime`] is a proof (rather than a probable-prime test) for `n`.
pub fn primality_is_proven(n: &Int) -> bool {
    n.bits() < 81
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

/// v_p(n!) by Legendre's formula.
pub fn factorial_valuation(n: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= n {
        v += (n / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_integer(x: &Rat) -> Rat {
    let f = x - x.floor();
    let g = Rat::one() - &f;
    if f < g {
        f
    } else {
        g
    }
}

/// Reduces `x` into `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// Greatest common "divisor" of rationals: generator of `aZ + bZ`.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    Rat::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Generator of `aZ ∩ bZ` for nonzero rationals.
pub fn rat_lcm(a: &Rat, b: &Rat) -> Rat {
    Rat::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
