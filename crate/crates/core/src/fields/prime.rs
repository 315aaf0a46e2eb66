//! Prime fields 𝔽_p for odd primes p.

use std::fmt;

use rand::Rng;

use super::{FiniteField, Field, SampleField};
use crate::error::{Error, Result};
use crate::exact::ArithOp;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    pub value: u64,
    pub p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut i = 3u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

impl PrimeFieldElement {
    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, self.p);
            }
            base = mul_mod(base, base, self.p);
            exp >>= 1;
        }
        PrimeFieldElement { value: acc, p: self.p }
    }

    /// Inverse by Fermat's little theorem.
    pub fn inverse(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular arithmetic on two elements of the same 𝔽_p.
pub fn fp_arith(x: PrimeFieldElement, y: PrimeFieldElement, op: ArithOp) -> Result<PrimeFieldElement> {
    if x.p != y.p {
        return Err(Error::FieldMismatch(format!("p = {} vs p = {}", x.p, y.p)));
    }
    let p = x.p;
    let value = match op {
        ArithOp::Add => (x.value + y.value) % p,
        ArithOp::Sub => (x.value + p - y.value) % p,
        ArithOp::Mul => mul_mod(x.value, y.value, p),
        ArithOp::Div => mul_mod(x.value, y.inverse()?.value, p),
    };
    Ok(PrimeFieldElement { value, p })
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Odd primes only; characteristic 2 is rejected.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::Precondition("characteristic 2 is excluded".into()));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: n.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    /// Parses `n mod p` (or a bare integer, reduced into this field).
    pub fn parse(&self, s: &str) -> Result<PrimeFieldElement> {
        let bad = || Error::Parse(format!("invalid prime-field literal {s:?}"));
        let (n, p) = match s.split_once("mod") {
            Some((n, p)) => (n.trim(), Some(p.trim().parse::<u64>().map_err(|_| bad())?)),
            None => (s.trim(), None),
        };
        if let Some(p) = p {
            if p != self.p {
                return Err(Error::FieldMismatch(format!("literal has p = {p}, field has p = {}", self.p)));
            }
        }
        let n: i64 = n.parse().map_err(|_| bad())?;
        Ok(self.elem(n))
    }

    fn expect(r: Result<PrimeFieldElement>) -> PrimeFieldElement {
        r.unwrap_or_else(|e| panic!("element not from this field: {e}"))
    }
}

impl Field for PrimeField {
    type Elem = PrimeFieldElement;

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn zero(&self) -> PrimeFieldElement {
        self.elem(0)
    }
    fn one(&self) -> PrimeFieldElement {
        self.elem(1)
    }
    fn from_i64(&self, n: i64) -> PrimeFieldElement {
        self.elem(n)
    }
    fn add(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        Self::expect(fp_arith(*a, *b, ArithOp::Add))
    }
    fn sub(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        Self::expect(fp_arith(*a, *b, ArithOp::Sub))
    }
    fn mul(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        Self::expect(fp_arith(*a, *b, ArithOp::Mul))
    }
    fn neg(&self, a: &PrimeFieldElement) -> PrimeFieldElement {
        self.elem(-(a.value as i64))
    }
    fn div(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> Result<PrimeFieldElement> {
        fp_arith(*a, *b, ArithOp::Div)
    }
    fn eq(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> bool {
        a == b
    }
}

impl SampleField for PrimeField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PrimeFieldElement {
        self.elem(rng.gen_range(0..self.p) as i64)
    }
}

impl FiniteField for PrimeField {
    fn elements(&self) -> Vec<PrimeFieldElement> {
        (0..self.p).map(|v| PrimeFieldElement { value: v, p: self.p }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_in_f5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(fp_arith(f.elem(3), f.elem(2), ArithOp::Div).unwrap(), f.elem(4));
        assert_eq!(fp_arith(f.elem(1), f.elem(0), ArithOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn power_in_f7_matches_naive_product() {
        let f = PrimeField::new(7).unwrap();
        // oracle: plain integer exponentiation then one reduction
        let naive = 3u64.pow(5) % 7;
        assert_eq!(naive, 5);
        let mut acc = f.one();
        for _ in 0..5 {
            acc = fp_arith(acc, f.elem(3), ArithOp::Mul).unwrap();
        }
        assert_eq!(acc.value, naive);
        assert_eq!(f.elem(3).pow(5).value, naive);
    }

    #[test]
    fn field_construction() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert!(matches!(PrimeField::new(2), Err(Error::Precondition(_))));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn mismatch_and_literals() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(fp_arith(f5.elem(1), f7.elem(1), ArithOp::Add), Err(Error::FieldMismatch(_))));
        assert_eq!(f5.parse("3 mod 5").unwrap(), f5.elem(3));
        assert_eq!(f5.parse("-1").unwrap(), f5.elem(4));
        assert!(f5.parse("3 mod 7").is_err());
        assert_eq!(f5.elem(3).to_string(), "3 mod 5");
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(10007));
        assert!(!is_prime(10005));
    }
}
