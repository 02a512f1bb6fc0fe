use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::arith::{prime_factors, valuation_int, Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// Formal product `∏ p^e` with `e ∈ N ∪ {∞}`. Zero exponents are never
/// stored, so structural equality is equality of supernatural numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Supernatural {
    exponents: BTreeMap<u64, Exponent>,
}

impl Supernatural {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_int(n: &Int) -> Self {
        let mut s = Self::one();
        for p in prime_factors(n) {
            s.set(p, Exponent::Finite(valuation_int(n, p)));
        }
        s
    }

    pub fn set(&mut self, p: u64, e: Exponent) {
        if e == Exponent::Finite(0) {
            self.exponents.remove(&p);
        } else {
            self.exponents.insert(p, e);
        }
    }

    pub fn get(&self, p: u64) -> Exponent {
        self.exponents
            .get(&p)
            .copied()
            .unwrap_or(Exponent::Finite(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exponents.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.keys().copied()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.exponents.values().all(|e| *e != Exponent::Infinite)
    }

    /// Pointwise least upper bound (the supernatural lcm).
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.set(p, out.get(p).max(e));
        }
        out
    }

    /// Whether the integer `n` divides this supernatural number.
    pub fn divisible_by(&self, n: &Int) -> bool {
        prime_factors(n)
            .into_iter()
            .all(|p| Exponent::Finite(valuation_int(n, p)) <= self.get(p))
    }
}

impl Add for &Supernatural {
    type Output = Supernatural;
    /// Product of supernatural numbers: exponents add, ∞ absorbs.
    fn add(self, rhs: &Supernatural) -> Supernatural {
        let mut out = self.clone();
        for (p, e) in rhs.iter() {
            out.set(p, out.get(p) + e);
        }
        out
    }
}

impl fmt::Display for Supernatural {
    /// `2^inf*3^inf*5^1`; the empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, thiserror::Error)]
#[error("malformed supernatural number {0:?}")]
pub struct ParseSupernaturalError(String);

impl FromStr for Supernatural {
    type Err = ParseSupernaturalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseSupernaturalError(s.to_string());
        let mut out = Supernatural::one();
        if s == "1" {
            return Ok(out);
        }
        for factor in s.split('*') {
            let (p, e) = factor.split_once('^').ok_or_else(bad)?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            if p < 2 || prime_factors(&Int::from(p)) != vec![p] {
                return Err(bad());
            }
            let e = match e.trim() {
                "inf" => Exponent::Infinite,
                n => Exponent::Finite(n.parse().map_err(|_| bad())?),
            };
            if out.get(p) != Exponent::Finite(0) {
                return Err(bad());
            }
            out.set(p, e);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let mut s = Supernatural::one();
        assert_eq!(s.to_string(), "1");
        s.set(3, Exponent::Infinite);
        s.set(2, Exponent::Infinite);
        s.set(5, Exponent::Finite(1));
        assert_eq!(s.to_string(), "2^inf*3^inf*5^1");
        assert_eq!(s.to_string().parse::<Supernatural>().unwrap(), s);
        assert!("4^1".parse::<Supernatural>().is_err());
        assert!("2^1*2^2".parse::<Supernatural>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Supernatural::from_int(&Int::from(12));
        let b: Supernatural = "2^inf*5^1".parse().unwrap();
        assert_eq!((&a + &b).to_string(), "2^inf*3^1*5^1");
        assert_eq!(
            a.lcm(&Supernatural::from_int(&Int::from(8))).to_string(),
            "2^3*3^1"
        );
        assert!(b.divisible_by(&Int::from(1 << 20)));
        assert!(!b.divisible_by(&Int::from(25)));
        let mut c = a.clone();
        c.set(2, Exponent::Finite(0));
        assert_eq!(c.to_string(), "3^1");
    }
}
