//! Exact base arithmetic: generalized binomial coefficients, power-sum
//! residues, elementary number theory and the cyclotomic fields Q(w_n).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, the coefficient type of the whole crate.
pub type Rat = Ratio<BigInt>;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Ratio::from_integer(BigInt::from(n))
}

/// Shorthand for a rational fraction.
pub fn ratio(n: i64, d: i64) -> Rat {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// Trial-division primality test, adequate for the desk-scale inputs here.
#[must_use]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All positive divisors of `n` in increasing order.
#[must_use]
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of 0 are not defined");
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
    large.reverse();
    small.extend(large);
    small
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
#[must_use]
pub fn totient(n: u64) -> u64 {
    assert!(n > 0);
    let mut t = n;
    for (p, _) in factorize(n) {
        t = t / p * (p - 1);
    }
    t
}

/// Number-theoretic Moebius function.
#[must_use]
pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Totient and Moebius in one call.
#[must_use]
pub fn totient_mobius(n: u64) -> (u64, i64) {
    (totient(n), mobius(n))
}

/// `b^e mod m` by binary exponentiation. `m` must be nonzero.
#[must_use]
pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut base = u128::from(b % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % u128::from(m);
        }
        base = base * base % u128::from(m);
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Inverse of `a` modulo a prime `p`, or `None` when `a` is divisible by `p`.
#[must_use]
pub fn mod_inv(a: u64, p: u64) -> Option<u64> {
    debug_assert!(is_prime(p));
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

/// Generalized binomial coefficient with an integer top and rational bottom:
/// `a(a-1)...(a-b+1)/b!` when `b` is a non-negative integer, and `0` when `b`
/// is non-integral or negative. Negative tops go through the falling
/// factorial unchanged, so `gen_binom(-1, 3) = -1`.
#[must_use]
pub fn gen_binom(a: &BigInt, b: &Rat) -> BigInt {
    if !b.is_integer() || b.is_negative() {
        return BigInt::zero();
    }
    let b = b
        .to_integer()
        .to_u64()
        .expect("binomial bottom out of range");
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= a - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `gen_binom` over machine integers.
#[must_use]
pub fn gen_binom_int(a: i64, b: i64) -> BigInt {
    gen_binom(&BigInt::from(a), &rat(b))
}

/// The residue of `0^m + 1^m + ... + (p-1)^m` modulo a prime `p`. By the
/// cyclic structure of the unit group, this is `p - 1` when `m > 0` and
/// `(p-1) | m`, and `0` otherwise (for `m = 0` the sum is `p` itself).
pub fn sum_powers_mod_p(m: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        Ok(0)
    } else if m % (p - 1) == 0 {
        Ok(p - 1)
    } else {
        Ok(0)
    }
}

/// Dense univariate polynomial over `Rat`, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    #[must_use]
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    #[must_use]
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    #[must_use]
    pub fn one() -> Self {
        RatPoly::new(vec![Rat::one()])
    }

    /// `c * t^d`.
    #[must_use]
    pub fn monomial(d: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); d];
        coeffs.push(c);
        RatPoly::new(coeffs)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[must_use]
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        RatPoly::new(out)
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        RatPoly::new(out)
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    #[must_use]
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            quot[i - dd] = q.clone();
            for k in 0..=dd {
                let delta = &q * &div.coeffs[k];
                rem[i - dd + k] -= delta;
            }
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, RatPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, RatPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, computed by dividing `t^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
#[must_use]
pub fn cyclotomic_poly(n: u32) -> RatPoly {
    assert!(n > 0);
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    coeffs[0] = -Rat::one();
    coeffs[n as usize] = Rat::one();
    let mut phi = RatPoly::new(coeffs);
    for d in divisors(u64::from(n)) {
        if d < u64::from(n) {
            let (q, r) = phi.div_rem(&cyclotomic_poly(d as u32));
            debug_assert!(r.is_zero());
            phi = q;
        }
    }
    cyclotomic_cache().lock().unwrap().insert(n, phi.clone());
    phi
}

/// Element of the cyclotomic field Q(w_n), stored as a rational coefficient
/// vector of length phi(n) over the basis `1, t, ..., t^{phi(n)-1}` of
/// `Q[t]/(Phi_n)`, with `t` standing for the primitive root `w_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    fn dim(order: u32) -> usize {
        totient(u64::from(order)) as usize
    }

    fn from_poly(order: u32, poly: &RatPoly) -> Self {
        let (_, rem) = poly.div_rem(&cyclotomic_poly(order));
        let mut coeffs = rem.coeffs;
        coeffs.resize(Self::dim(order), Rat::zero());
        Cyclotomic { order, coeffs }
    }

    #[must_use]
    pub fn zero(order: u32) -> Self {
        assert!(order > 0);
        Cyclotomic {
            order,
            coeffs: vec![Rat::zero(); Self::dim(order)],
        }
    }

    #[must_use]
    pub fn one(order: u32) -> Self {
        Cyclotomic::from_rat(order, Rat::one())
    }

    #[must_use]
    pub fn from_rat(order: u32, r: Rat) -> Self {
        assert!(order > 0);
        Cyclotomic::from_poly(order, &RatPoly::new(vec![r]))
    }

    #[must_use]
    pub fn from_int(order: u32, n: i64) -> Self {
        Cyclotomic::from_rat(order, rat(n))
    }

    /// The root of unity `w_n^k`, any integer `k`.
    #[must_use]
    pub fn root(order: u32, k: i64) -> Self {
        assert!(order > 0);
        let k = k.rem_euclid(i64::from(order)) as usize;
        Cyclotomic::from_poly(order, &RatPoly::monomial(k, Rat::one()))
    }

    #[must_use]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Basis coefficients over `1, w, ..., w^{phi(n)-1}`.
    #[must_use]
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The rational part when the element is rational, else `None`.
    #[must_use]
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, rhs.order))
        }
    }

    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs).expect("cyclotomic order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs).expect("cyclotomic order mismatch");
        let prod = RatPoly::new(self.coeffs.clone()).mul(&RatPoly::new(rhs.coeffs.clone()));
        Cyclotomic::from_poly(self.order, &prod)
    }

    #[must_use]
    pub fn scale(&self, r: &Rat) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo
    /// the (irreducible) cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.order));
        }
        let modulus = cyclotomic_poly(self.order);
        let mut r0 = modulus;
        let mut r1 = RatPoly::new(self.coeffs.clone());
        let mut s0 = RatPoly::zero();
        let mut s1 = RatPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0.degree(), Some(0), "cyclotomic polynomial is irreducible");
        let unit = r0.coeff(0);
        let mut inv = Vec::with_capacity(s0.coeffs().len());
        for c in s0.coeffs() {
            inv.push(c / &unit);
        }
        Ok(Cyclotomic::from_poly(self.order, &RatPoly::new(inv)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self.mul(&rhs.inv()?))
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclotomic::one(self.order);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "w")?,
                1 => write!(f, "{c}*w")?,
                _ if c.is_one() => write!(f, "w^{k}")?,
                _ => write!(f, "{c}*w^{k}")?,
            }
        }
        Ok(())
    }
}
