//! Graded cohomology of a cyclic group at a point: coefficient modes, classes
//! in the degree-one and degree-two generators u and v, the adjoined
//! degree-two variable x, Laurent bookkeeping for localisation intermediates,
//! and the local-expansion coefficient extractor.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{gen_binom, is_prime, mod_inv, mod_pow, rat, Rat};
use crate::error::{Error, Result};

/// Exponent of `v`, stored as twice its value so that the mod-2 ring can
/// carry half-integer powers (`u = v^{1/2}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    #[must_use]
    pub fn from_int(k: i64) -> Self {
        HalfInt(2 * k)
    }

    /// Builds the exponent `t/2`.
    #[must_use]
    pub fn from_twice(t: i64) -> Self {
        HalfInt(t)
    }

    #[must_use]
    pub fn twice(self) -> i64 {
        self.0
    }

    #[must_use]
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    #[must_use]
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    #[must_use]
    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    #[must_use]
    pub fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Coefficient mode of a cohomology class.
///
/// `IntMod(n)` models `Z[v]/(nv)`: degree-zero coefficients live in `Z`,
/// positive-degree coefficients in `Z_n`. `PMod(p)` models `Z_p[u,v]/(u^2)`
/// for odd primes `p`, and `Z_2[u]` with `v = u^2` for `p = 2`; in the
/// latter case classes may carry half-integer powers of `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMode {
    IntMod(u32),
    PMod(u32),
}

impl CoeffMode {
    pub fn validate(self) -> Result<()> {
        match self {
            CoeffMode::IntMod(n) if n >= 1 => Ok(()),
            CoeffMode::IntMod(_) => Err(Error::Invalid("IntMod order must be positive".into())),
            CoeffMode::PMod(p) if is_prime(u64::from(p)) => Ok(()),
            CoeffMode::PMod(p) => Err(Error::NotPrime(u64::from(p))),
        }
    }

    pub(crate) fn modulus(self) -> u32 {
        match self {
            CoeffMode::IntMod(n) | CoeffMode::PMod(n) => n,
        }
    }
}

impl fmt::Display for CoeffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffMode::IntMod(n) => write!(f, "Z[v]/({n}v)"),
            CoeffMode::PMod(p) => write!(f, "Z_{p}"),
        }
    }
}

fn residue(c: &BigInt, m: u32) -> BigInt {
    let m = BigInt::from(m);
    ((c % &m) + &m) % m
}

/// A class in the graded cohomology of a cyclic group at a point, in a fixed
/// coefficient mode. Terms map `(v-exponent, u-exponent)` to a nonzero
/// coefficient; the `laurent` flag marks intermediates that may legally hold
/// negative `v`-exponents.
#[derive(Clone, Debug)]
pub struct CohClass {
    mode: CoeffMode,
    terms: BTreeMap<(HalfInt, u8), BigInt>,
    laurent: bool,
}

impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.terms == other.terms
    }
}

impl Eq for CohClass {}

impl CohClass {
    #[must_use]
    pub fn zero(mode: CoeffMode) -> Self {
        CohClass {
            mode,
            terms: BTreeMap::new(),
            laurent: false,
        }
    }

    #[must_use]
    pub fn one(mode: CoeffMode) -> Self {
        CohClass::constant(mode, BigInt::one())
    }

    #[must_use]
    pub fn constant(mode: CoeffMode, c: BigInt) -> Self {
        let mut out = CohClass::zero(mode);
        out.accumulate(0, HalfInt::ZERO, c);
        out
    }

    /// A single term `c * u^e * v^k`.
    #[must_use]
    pub fn term(mode: CoeffMode, u: u8, v: HalfInt, c: BigInt) -> Self {
        let mut out = CohClass::zero(mode);
        if v.is_negative() {
            out.laurent = true;
        }
        out.accumulate(u, v, c);
        out
    }

    #[must_use]
    pub fn v_power(mode: CoeffMode, k: i64) -> Self {
        CohClass::term(mode, 0, HalfInt::from_int(k), BigInt::one())
    }

    #[must_use]
    pub fn u_gen(mode: CoeffMode) -> Self {
        CohClass::term(mode, 1, HalfInt::ZERO, BigInt::one())
    }

    #[must_use]
    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    #[must_use]
    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    #[must_use]
    pub fn with_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn terms(&self) -> &BTreeMap<(HalfInt, u8), BigInt> {
        &self.terms
    }

    /// The coefficient at `u^e * v^k`, zero when absent.
    #[must_use]
    pub fn coeff_of(&self, u: u8, v: HalfInt) -> BigInt {
        let key = self.fold_key(u, v);
        self.terms.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The degree-zero coefficient.
    #[must_use]
    pub fn constant_part(&self) -> BigInt {
        self.coeff_of(0, HalfInt::ZERO)
    }

    fn fold_key(&self, u: u8, v: HalfInt) -> (HalfInt, u8) {
        match self.mode {
            CoeffMode::PMod(2) => (HalfInt::from_twice(v.twice() + i64::from(u)), 0),
            _ => (v, u),
        }
    }

    /// Adds `c * u^e * v^k` in place, applying the mode's rewriting rules.
    fn accumulate(&mut self, u: u8, v: HalfInt, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.mode {
            CoeffMode::IntMod(_) => {
                assert_eq!(u, 0, "IntMod classes have no u generator");
                assert!(v.is_integer(), "IntMod exponents are integers");
            }
            CoeffMode::PMod(2) => {}
            CoeffMode::PMod(_) => {
                assert!(v.is_integer(), "odd-prime exponents are integers");
                if u >= 2 {
                    return;
                }
            }
        }
        let key = self.fold_key(u, v);
        assert!(
            self.laurent || !key.0.is_negative(),
            "negative exponent in a non-Laurent class"
        );
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        let reduce = match self.mode {
            CoeffMode::IntMod(n) => (key.0 > HalfInt::ZERO).then_some(n),
            CoeffMode::PMod(p) => Some(p),
        };
        if let Some(m) = reduce {
            *entry = residue(entry, m);
        }
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_mode(&self, rhs: &Self) {
        assert_eq!(self.mode, rhs.mode, "coefficient mode mismatch");
    }

    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        self.check_mode(rhs);
        let mut out = self.clone();
        out.laurent = self.laurent || rhs.laurent;
        for (&(v, u), c) in &rhs.terms {
            out.accumulate(u, v, c.clone());
        }
        out
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let mut out = CohClass::zero(self.mode);
        out.laurent = self.laurent;
        for (&(v, u), c) in &self.terms {
            out.accumulate(u, v, -c.clone());
        }
        out
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_mode(rhs);
        let mut out = CohClass::zero(self.mode);
        out.laurent = self.laurent || rhs.laurent;
        for (&(v1, u1), c1) in &self.terms {
            for (&(v2, u2), c2) in &rhs.terms {
                out.accumulate(u1 + u2, v1.add(v2), c1 * c2);
            }
        }
        out
    }

    #[must_use]
    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = CohClass::zero(self.mode);
        out.laurent = self.laurent;
        for (&(v, u), t) in &self.terms {
            out.accumulate(u, v, t * c);
        }
        out
    }

    #[must_use]
    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CohClass::one(self.mode);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `v^k` (`k` may be negative on Laurent classes).
    #[must_use]
    pub fn shift_v(&self, k: HalfInt) -> Self {
        let mut out = CohClass::zero(self.mode);
        out.laurent = self.laurent || k.is_negative();
        for (&(v, u), c) in &self.terms {
            out.accumulate(u, v.add(k), c.clone());
        }
        out
    }

    /// Total cohomological degrees present (`v` counts 2, `u` counts 1).
    #[must_use]
    pub fn degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .terms
            .keys()
            .map(|&(v, u)| v.twice() + i64::from(u))
            .collect();
        out.dedup();
        out
    }

    /// Checks that no negative exponent survived and clears the Laurent flag.
    pub fn assert_cohomological(mut self) -> Result<Self> {
        if let Some((&(v, _), c)) = self.terms.iter().next() {
            if v.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "negative exponent v^{v} with coefficient {c} survived into a final value"
                )));
            }
        }
        self.laurent = false;
        Ok(self)
    }

    /// Canonical rendering: terms by ascending `v`-exponent then `u`, each
    /// `c*u^e*v^k` with unit coefficients and zero exponents elided.
    #[must_use]
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(v, u), c) in &self.terms {
            let (eps, k) = if v.is_integer() {
                (u, v.as_integer().unwrap())
            } else {
                debug_assert_eq!(self.mode, CoeffMode::PMod(2));
                (1, (v.twice() - 1) / 2)
            };
            let mut syms = Vec::new();
            if eps > 0 {
                syms.push("u".to_string());
            }
            match k {
                0 => {}
                1 => syms.push("v".to_string()),
                _ => syms.push(format!("v^{k}")),
            }
            if syms.is_empty() {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(syms.join("*"));
            } else {
                parts.push(format!("{}*{}", c, syms.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Mul,
}

/// Mode-checked arithmetic entry point.
pub fn coh_arith(lhs: &CohClass, rhs: &CohClass, op: BinOp) -> Result<CohClass> {
    if lhs.mode() != rhs.mode() {
        return Err(Error::ModeMismatch(
            lhs.mode().to_string(),
            rhs.mode().to_string(),
        ));
    }
    Ok(match op {
        BinOp::Add => lhs.add(rhs),
        BinOp::Mul => lhs.mul(rhs),
    })
}

/// Polynomial in the degree-two variable `x` with [`CohClass`] coefficients,
/// modelling the equivariant cohomology of a point for the product of the
/// circle with a cyclic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivPoly {
    mode: CoeffMode,
    coeffs: BTreeMap<u32, CohClass>,
}

impl EquivPoly {
    #[must_use]
    pub fn zero(mode: CoeffMode) -> Self {
        EquivPoly {
            mode,
            coeffs: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn one(mode: CoeffMode) -> Self {
        EquivPoly::from_coh(CohClass::one(mode))
    }

    #[must_use]
    pub fn x(mode: CoeffMode) -> Self {
        EquivPoly::term(1, CohClass::one(mode))
    }

    #[must_use]
    pub fn from_coh(c: CohClass) -> Self {
        EquivPoly::term(0, c)
    }

    #[must_use]
    pub fn term(x_exp: u32, c: CohClass) -> Self {
        let mut out = EquivPoly::zero(c.mode());
        if !c.is_zero() {
            out.coeffs.insert(x_exp, c);
        }
        out
    }

    #[must_use]
    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[must_use]
    pub fn coeff(&self, x_exp: u32) -> CohClass {
        self.coeffs
            .get(&x_exp)
            .cloned()
            .unwrap_or_else(|| CohClass::zero(self.mode))
    }

    #[must_use]
    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    #[must_use]
    pub fn coeffs(&self) -> &BTreeMap<u32, CohClass> {
        &self.coeffs
    }

    fn insert(&mut self, x_exp: u32, c: CohClass) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(x_exp)
            .or_insert_with(|| CohClass::zero(self.mode));
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.coeffs.remove(&x_exp);
        }
    }

    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.mode, rhs.mode, "coefficient mode mismatch");
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.insert(k, c.clone());
        }
        out
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale_int(-1))
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.mode, rhs.mode, "coefficient mode mismatch");
        let mut out = EquivPoly::zero(self.mode);
        for (&k1, c1) in &self.coeffs {
            for (&k2, c2) in &rhs.coeffs {
                out.insert(k1 + k2, c1.mul(c2));
            }
        }
        out
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = EquivPoly::one(self.mode);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    #[must_use]
    pub fn scale(&self, c: &CohClass) -> Self {
        let mut out = EquivPoly::zero(self.mode);
        for (&k, t) in &self.coeffs {
            out.insert(k, t.mul(c));
        }
        out
    }

    #[must_use]
    pub fn scale_int(&self, c: i64) -> Self {
        let mut out = EquivPoly::zero(self.mode);
        for (&k, t) in &self.coeffs {
            out.insert(k, t.scale_int(c));
        }
        out
    }

    /// Whether every term has the stated total degree (`x` counts 2).
    #[must_use]
    pub fn is_homogeneous(&self, total: i64) -> bool {
        self.coeffs.iter().all(|(&k, c)| {
            c.degrees()
                .iter()
                .all(|&d| d + 2 * i64::from(k) == total)
        })
    }

    /// Rendering with descending `x`-powers, coefficients in canonical form.
    #[must_use]
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&k, c) in self.coeffs.iter().rev() {
            let xs = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if xs.is_empty() {
                parts.push(c.render());
            } else if c == &CohClass::one(self.mode) {
                parts.push(xs);
            } else if c.terms().len() == 1 {
                parts.push(format!("{}*{}", c.render(), xs));
            } else {
                parts.push(format!("({})*{}", c.render(), xs));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for EquivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Binomial coefficient of an integer top reduced mod `p`, with an i128 fast
/// path and a big-integer fallback.
fn binom_mod_p(a: i64, k: u32, p: u64) -> u64 {
    fn fast(a: i64, k: u32, p: u64) -> Option<u64> {
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..i128::from(k) {
            num = num.checked_mul(i128::from(a) - i)?;
            den = den.checked_mul(i + 1)?;
        }
        let q = num / den;
        Some(q.rem_euclid(i128::from(p)) as u64)
    }
    fast(a, k, p).unwrap_or_else(|| {
        let b = gen_binom(&BigInt::from(a), &rat(i64::from(k)));
        let m = BigInt::from(p);
        ((b % &m + &m) % m).to_u64().unwrap()
    })
}

/// `base^e mod p` for prime `p`, negative exponents through the inverse.
fn signed_pow_mod(base: i64, e: i64, p: u64) -> Option<u64> {
    let b = base.rem_euclid(p as i64) as u64;
    if e >= 0 {
        Some(mod_pow(b, e as u64, p))
    } else {
        mod_inv(b, p).map(|inv| mod_pow(inv, e.unsigned_abs(), p))
    }
}

struct CjProblem {
    others: Vec<(i64, i64)>,
    need: i64,
    v_exp: i64,
}

fn cj_setup(n: &Rat, nvec: &[i64], j: usize, p: u64) -> Result<Option<CjProblem>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if nvec.len() != p as usize {
        return Err(Error::Invalid(format!(
            "weight vector has length {}, expected {p}",
            nvec.len()
        )));
    }
    if j >= p as usize {
        return Err(Error::Invalid(format!("residue {j} is out of range mod {p}")));
    }
    if !n.is_integer() {
        return Ok(None);
    }
    let n = n.to_integer().to_i64().ok_or_else(|| {
        Error::Invalid("expansion index out of machine range".into())
    })?;
    let total: i64 = nvec.iter().sum();
    let others = nvec
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(i, &ni)| (i as i64 - j as i64, ni))
        .collect();
    Ok(Some(CjProblem {
        others,
        need: n - nvec[j],
        v_exp: total - n,
    }))
}

/// The coefficient of the `n`-th power of `(x + jv)` in the local Laurent
/// expansion of the product of the factors `(x + iv)^{n_i}` at `x = -jv`,
/// over the mod-`p` coefficient field: a single Laurent monomial
/// `c * v^{sum(n_i) - n}`, computed by the finite composition sum
/// `sum over k_i >= 0, sum k_i = n - n_j, of prod binom(n_i, k_i)(i-j)^{n_i - k_i}`.
/// Zero when `n` is non-integral or `n - n_j < 0`.
pub fn laurent_cj(n: &Rat, nvec: &[i64], j: usize, p: u64) -> Result<CohClass> {
    let mode = CoeffMode::PMod(p as u32);
    let Some(prob) = cj_setup(n, nvec, j, p)? else {
        return Ok(CohClass::zero(mode).with_laurent());
    };
    let out = CohClass::zero(mode).with_laurent();
    if prob.need < 0 {
        return Ok(out);
    }
    let need = prob.need as u64;
    let slots = prob.others.len();

    // Per-slot factors binom(n_i, k) * (i - j)^{n_i - k} mod p, k = 0..=need.
    let mut fac = vec![vec![0u64; need as usize + 1]; slots];
    for (s, &(base, ni)) in prob.others.iter().enumerate() {
        for k in 0..=need {
            let b = binom_mod_p(ni, k as u32, p);
            if b == 0 {
                continue;
            }
            let Some(pw) = signed_pow_mod(base, ni - k as i64, p) else {
                unreachable!("base {base} is a unit mod {p}");
            };
            fac[s][k as usize] = b * pw % p;
        }
    }

    // Literal enumeration of the compositions of `need` into the slots.
    let mut acc = 0u64;
    let mut ks = vec![0u64; slots];
    fn walk(fac: &[Vec<u64>], ks: &mut [u64], slot: usize, rem: u64, prod: u64, p: u64, acc: &mut u64) {
        if slot + 1 == ks.len() {
            ks[slot] = rem;
            let f = fac[slot][rem as usize];
            if f != 0 {
                *acc = (*acc + prod * f) % p;
            }
            return;
        }
        for k in 0..=rem {
            let f = fac[slot][k as usize];
            if f == 0 {
                continue;
            }
            ks[slot] = k;
            walk(fac, ks, slot + 1, rem - k, prod * f % p, p, acc);
        }
    }
    if slots == 0 {
        // p = 1 cannot occur (p is prime); guard for completeness.
        acc = u64::from(need == 0);
    } else {
        walk(&fac, &mut ks, 0, need, 1, p, &mut acc);
    }

    let mut out = out;
    out.accumulate(0, HalfInt::from_int(prob.v_exp), BigInt::from(acc));
    Ok(out)
}

/// Independent route to the same coefficient: expand every factor as a
/// truncated series in `y = x + jv` with Laurent-monomial coefficients over
/// the mod-`p` field, multiply the series, and read off the requested index.
/// The `(x + jv)^{n_j}` factor is the monomial `y^{n_j}` and is folded in as
/// an index shift.
pub fn series_cj_oracle(
    n: &Rat,
    nvec: &[i64],
    j: usize,
    p: u64,
    truncation: usize,
) -> Result<CohClass> {
    let mode = CoeffMode::PMod(p as u32);
    let Some(prob) = cj_setup(n, nvec, j, p)? else {
        return Ok(CohClass::zero(mode).with_laurent());
    };
    if prob.need < 0 {
        return Ok(CohClass::zero(mode).with_laurent());
    }
    if prob.need as usize >= truncation {
        return Err(Error::Truncation {
            truncation,
            needed: prob.need,
        });
    }

    type Series = Vec<BTreeMap<i64, u64>>;
    let one: Series = {
        let mut s = vec![BTreeMap::new(); truncation];
        s[0].insert(0, 1 % p);
        s
    };
    let mut product = one;
    for &(base, ni) in &prob.others {
        let mut factor: Series = vec![BTreeMap::new(); truncation];
        for (k, slot) in factor.iter_mut().enumerate() {
            let b = binom_mod_p(ni, k as u32, p);
            if b == 0 {
                continue;
            }
            let pw = signed_pow_mod(base, ni - k as i64, p).expect("unit base");
            let c = b * pw % p;
            if c != 0 {
                slot.insert(ni - k as i64, c);
            }
        }
        let mut next: Series = vec![BTreeMap::new(); truncation];
        for (d1, c1) in product.iter().enumerate() {
            if c1.is_empty() {
                continue;
            }
            for (d2, c2) in factor.iter().enumerate().take(truncation - d1) {
                for (&e1, &a1) in c1 {
                    for (&e2, &a2) in c2 {
                        let slot = next[d1 + d2].entry(e1 + e2).or_insert(0);
                        *slot = (*slot + a1 * a2) % p;
                    }
                }
            }
        }
        for slot in &mut next {
            slot.retain(|_, c| *c != 0);
        }
        product = next;
    }

    let mut out = CohClass::zero(mode).with_laurent();
    for (&e, &c) in &product[prob.need as usize] {
        out.accumulate(0, HalfInt::from_int(e), BigInt::from(c));
    }
    Ok(out)
}
