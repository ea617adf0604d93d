//! Exact scalar arithmetic: rational and Gaussian-rational numbers, plus
//! radical values of the form `Σ c·√s` needed for sup-norms of complex
//! functions. No floating point anywhere; comparisons are exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Scalar field of a session. Involution is the identity on `Real` and
/// complex conjugation on `Complex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarField {
    Real,
    Complex,
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Real => write!(f, "real"),
            ScalarField::Complex => write!(f, "complex"),
        }
    }
}

/// A Gaussian rational `re + im·i`. Real sessions simply keep `im = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²` — always rational, the basis for exact magnitude comparisons.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|z|` as an exact radical.
    pub fn abs(&self) -> Radical {
        Radical::sqrt_rational(&self.abs_sq())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Scalar { re: &self.re * r, im: &self.im * r }
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        let d = rhs.abs_sq();
        if d.is_zero() {
            return None;
        }
        let num = self.clone() * rhs.conj();
        Some(Scalar { re: num.re / &d, im: num.im / d })
    }

    /// Parses `3`, `-5/2`, `i`, `-i`, `2i`, `1+2i`, `1/2-i`, …
    pub fn parse(input: &str) -> Result<Scalar> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Document("empty scalar literal".into()));
        }
        // split at the last top-level '+'/'-' (not the leading sign)
        let bytes: Vec<char> = s.chars().collect();
        let mut split = None;
        for (k, &c) in bytes.iter().enumerate().skip(1) {
            if (c == '+' || c == '-') && bytes[k - 1] != '/' {
                split = Some(k);
            }
        }
        let (re_part, im_part) = match split {
            Some(k) if s.ends_with('i') => (&s[..k], &s[k..]),
            _ if s.ends_with('i') => ("", s.as_str()),
            _ => (s.as_str(), ""),
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part)?
        };
        let im = if im_part.is_empty() {
            BigRational::zero()
        } else {
            let body = &im_part[..im_part.len() - 1];
            match body {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                _ => parse_rational(body)?,
            }
        };
        Ok(Scalar { re, im })
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Scalar { re, im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let i_str = if self.im == BigRational::one() {
            "i".to_string()
        } else if self.im == -BigRational::one() {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{i_str}")
        } else if self.im.is_negative() {
            write!(f, "{}{}", self.re, i_str)
        } else {
            write!(f, "{}+{}", self.re, i_str)
        }
    }
}

/// Parses `3`, `-3`, `5/2`, `-5/2` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Document(format!("invalid rational literal `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let bound = 10_000usize;
    let mut sieve = vec![true; bound + 1];
    let mut primes = Vec::new();
    for p in 2..=bound {
        if sieve[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= bound {
                sieve[q] = false;
                q += p;
            }
        }
    }
    primes
});

/// Writes `m = outside² · radicand` with `radicand` squarefree.
///
/// Trial division runs over primes below 10⁴ and the leftover cofactor gets a
/// perfect-square test; a cofactor divisible by p³ for a prime p > 10⁴ would
/// slip through undecomposed, which no value produced by the built-in
/// samplers can reach.
fn squarefree_decompose(m: &BigUint) -> (BigUint, BigUint) {
    let one = BigUint::one();
    if m.is_zero() || *m == one {
        return (one.clone(), m.clone());
    }
    let mut rest = m.clone();
    let mut outside = BigUint::one();
    let mut radicand = BigUint::one();
    for &p in SMALL_PRIMES.iter() {
        let p = BigUint::from(p);
        if &p * &p > rest {
            break;
        }
        let mut mult = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            mult += 1;
        }
        for _ in 0..mult / 2 {
            outside *= &p;
        }
        if mult % 2 == 1 {
            radicand *= &p;
        }
    }
    if rest > one {
        let r = rest.sqrt();
        if &r * &r == rest {
            outside *= r;
        } else {
            radicand *= rest;
        }
    }
    (outside, radicand)
}

/// Exact nonnegative-or-signed real of the form `Σ c·√s` with pairwise
/// distinct squarefree radicands `s ≥ 1`. Square roots of distinct squarefree
/// integers are linearly independent over ℚ, so the representation is
/// canonical: equality is term-wise, and a nonzero value has a nonzero term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radical {
    terms: BTreeMap<BigUint, BigRational>,
}

impl Radical {
    pub fn zero() -> Self {
        Radical { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Radical::from_rational(&BigRational::one())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q.clone());
        }
        Radical { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Radical::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// `√q` for `q ≥ 0`. Panics on negative input.
    pub fn sqrt_rational(q: &BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Radical::zero();
        }
        // √(n/d) = √(n·d) / d
        let n = q.numer().to_biguint().expect("nonnegative numerator");
        let d = q.denom().to_biguint().expect("positive denominator");
        let (outside, radicand) = squarefree_decompose(&(&n * &d));
        let coeff = BigRational::new(BigInt::from(outside), BigInt::from(d));
        let mut terms = BTreeMap::new();
        terms.insert(radicand, coeff);
        Radical { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&BigUint::one()))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if !self.is_rational() {
            return None;
        }
        self.terms.get(&BigUint::one()).cloned()
    }

    fn insert(&mut self, radicand: BigUint, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(radicand) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &BigRational) -> Radical {
        if r.is_zero() {
            return Radical::zero();
        }
        Radical {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * r)).collect(),
        }
    }

    /// Division by a single-term radical (or by any nonzero rational).
    /// Returns `None` when the divisor is zero or has several terms.
    pub fn div(&self, rhs: &Radical) -> Option<Radical> {
        if rhs.terms.len() != 1 {
            return None;
        }
        let (s, c) = rhs.terms.iter().next().expect("one term");
        // (d·√t)/(c·√s) = (d/c)·√(ts)/s, and √(ts) = g·√((s/g)(t/g)) for g = gcd(s,t)
        let mut out = Radical::zero();
        for (t, d) in &self.terms {
            let g = num::integer::gcd(s.clone(), t.clone());
            let prod = (s / &g) * (t / &g); // squarefree again
            let coeff = d / c * BigRational::new(BigInt::from(g), BigInt::from(s.clone()));
            out.insert(prod, coeff);
        }
        Some(out)
    }

    /// Exact sign of the value: `Less`, `Equal` or `Greater` versus zero.
    pub fn sign(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        if self.terms.values().all(|c| c.is_positive()) {
            return Ordering::Greater;
        }
        if self.terms.values().all(|c| c.is_negative()) {
            return Ordering::Less;
        }
        // mixed signs: refine rational enclosures of √s until 0 is excluded;
        // the value is nonzero because the canonical form is nonempty
        let mut precision = 16u32;
        loop {
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (s, c) in &self.terms {
                let scaled = s << (2 * precision as usize);
                let root = scaled.sqrt();
                let denom = BigInt::from(BigUint::one() << precision as usize);
                let r_lo = BigRational::new(BigInt::from(root.clone()), denom.clone());
                let r_hi = BigRational::new(BigInt::from(root + BigUint::one()), denom);
                if c.is_positive() {
                    lo += c * &r_lo;
                    hi += c * &r_hi;
                } else {
                    lo += c * &r_hi;
                    hi += c * &r_lo;
                }
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            precision *= 2;
            assert!(precision <= 1 << 14, "sign refinement failed to converge");
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(self, rhs: Radical) -> Radical {
        let mut out = self;
        for (s, c) in rhs.terms {
            out.insert(s, c);
        }
        out
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(self, rhs: Radical) -> Radical {
        let mut out = self;
        for (s, c) in rhs.terms {
            out.insert(s, -c);
        }
        out
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.into_iter().map(|(s, c)| (s, -c)).collect(),
        }
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        let mut out = Radical::zero();
        for (s, c) in &self.terms {
            for (t, d) in &rhs.terms {
                let g = num::integer::gcd(s.clone(), t.clone());
                let radicand = (s / &g) * (t / &g);
                let coeff = c * d * BigRational::from_integer(BigInt::from(g));
                out.insert(radicand, coeff);
            }
        }
        out
    }
}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if s.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "√{s}")?;
            } else {
                write!(f, "{c}·√{s}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn squarefree_parts() {
        let cases = [(72u64, 6u64, 2u64), (1, 1, 1), (49, 7, 1), (2, 1, 2), (180, 6, 5)];
        for (m, out, rad) in cases {
            let (o, r) = squarefree_decompose(&BigUint::from(m));
            assert_eq!((o, r), (BigUint::from(out), BigUint::from(rad)), "m = {m}");
        }
    }

    #[test]
    fn sqrt_of_perfect_square_is_rational() {
        let v = Radical::sqrt_rational(&rat(9, 4));
        assert_eq!(v.as_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn radical_normalization() {
        // √18 = 3·√2, so √2 + √8 = 3√2 and √18 − 3√2 = 0
        let a = Radical::sqrt_rational(&rat(2, 1)) + Radical::sqrt_rational(&rat(8, 1));
        let b = Radical::sqrt_rational(&rat(18, 1));
        assert_eq!(a, b);
        assert!((a - b).is_zero());
    }

    #[test]
    fn radical_product_reduces() {
        // √6·√10 = 2√15
        let p = Radical::sqrt_rational(&rat(6, 1)) * Radical::sqrt_rational(&rat(10, 1));
        let expected = Radical::sqrt_rational(&rat(15, 1)).scale(&rat(2, 1));
        assert_eq!(p, expected);
    }

    #[test]
    fn radical_comparison_is_exact() {
        // (√2+√3)² = 5 + 2√6 < 10, so √2+√3 < √10
        let lhs = Radical::sqrt_rational(&rat(2, 1)) + Radical::sqrt_rational(&rat(3, 1));
        let rhs = Radical::sqrt_rational(&rat(10, 1));
        assert_eq!(lhs.cmp(&rhs), Ordering::Less);
        // and √2+√3 > √9 = 3
        assert_eq!(lhs.cmp(&Radical::from_int(3)), Ordering::Greater);
    }

    #[test]
    fn radical_division_single_term() {
        let num = Radical::sqrt_rational(&rat(10, 1)).scale(&rat(6, 1));
        let den = Radical::sqrt_rational(&rat(5, 1)).scale(&rat(2, 1));
        let q = num.div(&den).unwrap();
        assert_eq!(q, Radical::sqrt_rational(&rat(2, 1)).scale(&rat(3, 1)));
        let multi = Radical::from_int(1) + Radical::sqrt_rational(&rat(2, 1));
        assert!(num.div(&multi).is_none());
    }

    #[test]
    fn scalar_roundtrip_and_ops() {
        for s in ["0", "3", "-5/2", "i", "-i", "2i", "1+2i", "1/2-i", "-1-3/4i"] {
            let z = Scalar::parse(s).unwrap();
            let back = Scalar::parse(&z.to_string()).unwrap();
            assert_eq!(z, back, "roundtrip {s}");
        }
        let z = Scalar::parse("1+2i").unwrap();
        assert_eq!(z.clone() * z.conj(), Scalar::from_int(5));
        assert_eq!(z.abs_sq(), rat(5, 1));
        let q = Scalar::parse("3+i").unwrap().div(&Scalar::parse("1-i").unwrap()).unwrap();
        assert_eq!(q, Scalar::parse("1+2i").unwrap());
    }
}
