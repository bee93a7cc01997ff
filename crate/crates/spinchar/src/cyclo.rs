//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! A [`CycloNum`] stores its value in the power basis `1, x, …, x^{φ(M)-1}` of
//! `Q[x]/Φ_M(x)`, where `x` is the primitive root `ζ_M = e^{2πi/M}` under the
//! canonical complex embedding. Coefficients are arbitrary-precision
//! rationals, so every operation is exact. Conductors `M ≡ 2 (mod 4)` are
//! never stored: `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`.
//!
//! Binary operations lift both operands to the least common multiple of their
//! conductors; no subfield descent happens during arithmetic. Equality is
//! decided on the lifted forms, which are canonical because the power basis
//! is a basis.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Errors raised by cyclotomic arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    /// The argument of an integer square root was out of range.
    #[error("square root argument out of domain: {0}")]
    SqrtDomain(i64),
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A textual expression could not be parsed.
    #[error("cannot parse cyclotomic expression: {0}")]
    Parse(String),
}

/// Precomputed data for `Q(ζ_m)`: the cyclotomic polynomial and the reduced
/// forms of all powers `x^e mod Φ_m` for `0 ≤ e < m`.
struct Field {
    phi: usize,
    /// Sparse reduced form of `x^e` for each `e` in `0..m`.
    pow: Vec<Vec<(usize, i64)>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the cyclotomic polynomial `Φ_m`.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().read().expect("poly cache poisoned").get(&m) {
        return p.clone();
    }
    // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d, by exact integer division.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &den);
        }
    }
    let arc = Arc::new(num);
    poly_cache()
        .write()
        .expect("poly cache poisoned")
        .entry(m)
        .or_insert(arc)
        .clone()
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

fn field(m: u32) -> Arc<Field> {
    assert!(m >= 1 && m % 4 != 2, "unnormalized conductor {m}");
    if let Some(f) = field_cache().read().expect("field cache poisoned").get(&m) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(m);
    let phi = poly.len() - 1;
    let mut pow: Vec<Vec<(usize, i64)>> = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for e in 0..m as usize {
        if e > 0 {
            // cur <- x * cur mod Φ_m
            let top = cur[phi - 1];
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..phi {
                    cur[k] -= top * poly[k];
                }
            }
        }
        pow.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(k, &v)| (k, v))
                .collect(),
        );
    }
    let f = Arc::new(Field { phi, pow });
    field_cache()
        .write()
        .expect("field cache poisoned")
        .entry(m)
        .or_insert(f)
        .clone()
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn normalize_conductor(m: u32) -> u32 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut result = 1i64;
    let mut base = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct CycloNum {
    m: u32,
    c: Vec<BigRational>,
}

impl CycloNum {
    /// The additive identity.
    pub fn zero() -> Self {
        CycloNum {
            m: 1,
            c: vec![BigRational::zero()],
        }
    }

    /// The multiplicative identity.
    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// A rational integer.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// An exact rational.
    pub fn from_rational(q: BigRational) -> Self {
        CycloNum { m: 1, c: vec![q] }
    }

    /// The rational `num/den`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The root of unity `ζ_M^k`, with `ζ_M = e^{2πi/M}`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        if m % 4 == 2 {
            // ζ_{2h} = -ζ_h^{(h+1)/2} for odd h.
            let h = m / 2;
            let e = k * ((h as i64 + 1) / 2);
            let base = Self::root_of_unity(h, e);
            return if k.rem_euclid(2) == 1 { -base } else { base };
        }
        let f = field(m);
        let e = k.rem_euclid(m as i64) as usize;
        let mut c = vec![BigRational::zero(); f.phi];
        for &(j, v) in &f.pow[e] {
            c[j] = BigRational::from_integer(BigInt::from(v));
        }
        CycloNum { m, c }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Self::root_of_unity(4, k)
    }

    /// `(-1)^k` as a number.
    pub fn sign_pow(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            Self::from_int(-1)
        }
    }

    /// The positive real square root of a positive odd integer, built from
    /// quadratic Gauss sums; its conductor divides `4q`.
    pub fn sqrt_odd(q: i64) -> Result<Self, CycloError> {
        if q <= 0 || q % 2 == 0 {
            return Err(CycloError::SqrtDomain(q));
        }
        Ok(Self::sqrt_positive(q as u64))
    }

    /// The positive real square root of a positive integer.
    pub fn sqrt_int(n: i64) -> Result<Self, CycloError> {
        if n <= 0 {
            return Err(CycloError::SqrtDomain(n));
        }
        Ok(Self::sqrt_positive(n as u64))
    }

    fn sqrt_positive(n: u64) -> Self {
        let mut rest = n;
        let mut square = 1i64;
        let mut out = Self::one();
        let mut p = 2u64;
        while p * p <= rest {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= p as i64;
            }
            if e % 2 == 1 {
                out = &out * &Self::sqrt_prime(p as i64);
            }
            p += 1;
        }
        if rest > 1 {
            out = &out * &Self::sqrt_prime(rest as i64);
        }
        out.scale(&BigRational::from_integer(BigInt::from(square)))
    }

    fn sqrt_prime(p: i64) -> Self {
        if p == 2 {
            return Self::root_of_unity(8, 1) + Self::root_of_unity(8, 7);
        }
        // Gauss sum g_p = Σ (a/p) ζ_p^a equals √p (p ≡ 1 mod 4) or i√p (p ≡ 3 mod 4).
        let mut g = Self::zero();
        for a in 1..p {
            let r = Self::root_of_unity(p as u32, a);
            if legendre(a, p) == 1 {
                g += r;
            } else {
                g -= r;
            }
        }
        if p % 4 == 1 {
            g
        } else {
            &g * &Self::i_pow(3)
        }
    }

    /// The stored conductor (not necessarily minimal).
    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Power-basis coordinates at the stored conductor.
    pub fn coords(&self) -> &[BigRational] {
        &self.c
    }

    /// True iff the value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// True iff the value is exactly one.
    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.c.iter().skip(1).all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Coordinates in `Q(ζ_l)` for a multiple `l` of the conductor.
    fn lift_coords(&self, l: u32) -> Vec<BigRational> {
        if l == self.m {
            return self.c.clone();
        }
        debug_assert!(l.is_multiple_of(self.m));
        let f = field(l);
        let step = (l / self.m) as usize;
        let mut out = vec![BigRational::zero(); f.phi];
        for (e, ce) in self.c.iter().enumerate() {
            if ce.is_zero() {
                continue;
            }
            for &(j, v) in &f.pow[(e * step) % l as usize] {
                out[j] += ce * BigInt::from(v);
            }
        }
        out
    }

    /// The same value represented at the conductor `k·M`.
    pub fn lift(&self, k: u32) -> Self {
        let l = normalize_conductor(self.m * k);
        let l = lcm(l, self.m);
        CycloNum {
            m: l,
            c: self.lift_coords(l),
        }
    }

    /// The same value at the smallest conductor containing it.
    pub fn reduce(&self) -> Self {
        if self.m == 1 {
            return self.clone();
        }
        let mut divisors: Vec<u32> = (1..self.m)
            .filter(|d| self.m.is_multiple_of(*d) && d % 4 != 2)
            .collect();
        divisors.sort_unstable();
        for d in divisors {
            if let Some(c) = self.descend(d) {
                return CycloNum { m: d, c };
            }
        }
        self.clone()
    }

    /// Solve for coordinates in the subfield `Q(ζ_d)`, if the value lies there.
    fn descend(&self, d: u32) -> Option<Vec<BigRational>> {
        let big = field(self.m);
        let small = field(d);
        let step = (self.m / d) as usize;
        let rows = big.phi;
        let cols = small.phi;
        // Augmented system: columns are lifted basis vectors of Q(ζ_d).
        let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols + 1]; rows];
        for e in 0..cols {
            for &(j, v) in &big.pow[(e * step) % self.m as usize] {
                a[j][e] = BigRational::from_integer(BigInt::from(v));
            }
        }
        for (j, row) in a.iter_mut().enumerate() {
            row[cols] = self.c[j].clone();
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            let Some(pr) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            let inv = a[r][col].recip();
            for k in col..=cols {
                a[r][k] = &a[r][k] * &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for k in col..=cols {
                        let t = &a[r][k] * &f;
                        a[i][k] -= t;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut out = vec![BigRational::zero(); cols];
        for (i, &col) in pivots.iter().enumerate() {
            out[col] = a[i][cols].clone();
        }
        Some(out)
    }

    fn binary<F: Fn(&[BigRational], &[BigRational], u32) -> Vec<BigRational>>(
        &self,
        other: &Self,
        f: F,
    ) -> Self {
        let l = lcm(self.m, other.m);
        let a = self.lift_coords(l);
        let b = other.lift_coords(l);
        CycloNum { m: l, c: f(&a, &b, l) }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.m == 1 {
            return other.scale(&self.c[0]);
        }
        if other.m == 1 {
            return self.scale(&other.c[0]);
        }
        self.binary(other, |a, b, l| {
            let f = field(l);
            let phi = f.phi;
            let mut acc = vec![BigRational::zero(); 2 * phi];
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    if bj.is_zero() {
                        continue;
                    }
                    acc[i + j] += ai * bj;
                }
            }
            let mut out: Vec<BigRational> = acc[..phi].to_vec();
            for (k, ak) in acc.iter().enumerate().skip(phi) {
                if ak.is_zero() {
                    continue;
                }
                for &(j, v) in &f.pow[k % l as usize] {
                    out[j] += ak * BigInt::from(v);
                }
            }
            out
        })
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum {
            m: self.m,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    /// Multiply by an integer.
    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Divide by a nonzero integer.
    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }

    /// Divide by a nonzero big integer.
    pub fn div_bigint(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero");
        self.scale(&BigRational::new(BigInt::one(), k.clone()))
    }

    /// The Galois automorphism `ζ_M ↦ ζ_M^a` (requires `gcd(a, M) = 1`).
    pub fn galois(&self, a: i64) -> Self {
        let m = self.m as i64;
        assert_eq!(a.rem_euclid(m.max(1)).gcd(&m), 1, "non-unit Galois exponent");
        if self.m == 1 {
            return self.clone();
        }
        let f = field(self.m);
        let mut out = vec![BigRational::zero(); f.phi];
        for (e, ce) in self.c.iter().enumerate() {
            if ce.is_zero() {
                continue;
            }
            let idx = (e as i64 * a).rem_euclid(m) as usize;
            for &(j, v) in &f.pow[idx] {
                out[j] += ce * BigInt::from(v);
            }
        }
        CycloNum { m: self.m, c: out }
    }

    /// Complex conjugation `ζ_M ↦ ζ_M^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(CycloNum::from_rational(self.c[0].recip()));
        }
        let m = self.m as i64;
        let mut others = Self::one();
        for a in 2..m {
            if a.gcd(&m) == 1 {
                others = &others * &self.galois(a);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    /// Checked division.
    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    /// Nonnegative integer power.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut out = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    /// True iff the value lies in the localization of `Z[ζ_M]` at `p`,
    /// i.e. every power-basis coordinate has denominator prime to `p`.
    /// The power basis is an integral basis of the maximal order, so the
    /// test is independent of the conductor used.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.c.iter().all(|x| !(x.denom() % &p).is_zero())
    }

    /// Image under the canonical embedding `ζ_M = e^{2πi/M}`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, ce) in self.c.iter().enumerate() {
            if ce.is_zero() {
                continue;
            }
            let v = ce.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * e as f64 / self.m as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Decimal approximation, e.g. `0.707107+0.707107i`.
    pub fn to_decimal_string(&self) -> String {
        let (re, im) = self.to_complex();
        let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
        let (re, im) = (clean(re), clean(im));
        if im == 0.0 {
            format!("{re:.6}")
        } else if im < 0.0 {
            format!("{re:.6}-{:.6}i", -im)
        } else {
            format!("{re:.6}+{im:.6}i")
        }
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as a sum of `c * z(M)^k` terms at the minimal conductor, or `0`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce();
        let terms: Vec<String> = r
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{} * z({})^{}", c, r.m, k))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FromStr for CycloNum {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let err = || CycloError::Parse(term.to_string());
            let (coef, root) = term.split_once(" * ").ok_or_else(err)?;
            let coef: BigRational = coef.trim().parse().map_err(|_| err())?;
            let root = root.trim();
            let inner = root.strip_prefix("z(").ok_or_else(err)?;
            let (m, k) = inner.split_once(")^").ok_or_else(err)?;
            let m: u32 = m.parse().map_err(|_| err())?;
            let k: i64 = k.parse().map_err(|_| err())?;
            if m == 0 {
                return Err(err());
            }
            out += Self::root_of_unity(m, k).scale(&coef);
        }
        Ok(out)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.c == other.c;
        }
        let l = lcm(self.m, other.m);
        self.lift_coords(l) == other.lift_coords(l)
    }
}

impl Eq for CycloNum {}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for CycloNum {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.mul_ref(rhs)
    }
}

impl<'a> Div<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    /// Panics on division by zero; see [`CycloNum::checked_div`].
    fn div(self, rhs: &CycloNum) -> CycloNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            m: self.m,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, rhs: CycloNum) -> CycloNum {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, rhs: &CycloNum) -> CycloNum {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $f(self, rhs: CycloNum) -> CycloNum {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: CycloNum) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: CycloNum) {
        *self = &*self - &rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: CycloNum) {
        *self = &*self * &rhs;
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(CycloNum::root_of_unity(1, 0), CycloNum::one());
        let i = CycloNum::root_of_unity(4, 1);
        assert_eq!(&i * &i, CycloNum::from_int(-1));
        let s = CycloNum::root_of_unity(3, 1) + CycloNum::root_of_unity(3, 2);
        assert_eq!(s, CycloNum::from_int(-1));
        let a = CycloNum::root_of_unity(5, 1);
        let b = CycloNum::root_of_unity(5, 4);
        assert_eq!(&a * &b, CycloNum::one());
    }

    #[test]
    fn conductor_two_mod_four_folds() {
        for k in 0..12 {
            let v = CycloNum::root_of_unity(6, k);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / 6.0;
            assert!(close(v.to_complex(), (ang.cos(), ang.sin())));
            assert!(!(v.conductor() % 4 == 2));
        }
        assert_eq!(CycloNum::root_of_unity(2, 1), CycloNum::from_int(-1));
    }

    #[test]
    fn primitive_cube_root_from_sqrt() {
        let w = (CycloNum::from_int(-1) + CycloNum::i() * CycloNum::sqrt_odd(3).unwrap())
            .div_int(2);
        assert_eq!(w.pow(3), CycloNum::one());
        assert_eq!(w, CycloNum::root_of_unity(3, 1));
        assert!(w.is_p_integral(3));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(CycloNum::sqrt_odd(1).unwrap(), CycloNum::one());
        assert_eq!(CycloNum::sqrt_odd(9).unwrap(), CycloNum::from_int(3));
        let r5 = CycloNum::sqrt_odd(5).unwrap();
        assert_eq!(&r5 * &r5, CycloNum::from_int(5));
        assert!(close(r5.to_complex(), (5f64.sqrt(), 0.0)));
        assert!(CycloNum::sqrt_odd(4).is_err());
        assert!(CycloNum::sqrt_odd(-3).is_err());
        let r2 = CycloNum::sqrt_int(2).unwrap();
        assert_eq!(&r2 * &r2, CycloNum::from_int(2));
        assert!(close(r2.to_complex(), (2f64.sqrt(), 0.0)));
    }

    #[test]
    fn sqrt_odd_squares_and_is_positive_up_to_99() {
        for q in (1..=99).step_by(2) {
            let r = CycloNum::sqrt_odd(q).unwrap();
            assert_eq!(&r * &r, CycloNum::from_int(q), "q = {q}");
            assert!(close(r.to_complex(), ((q as f64).sqrt(), 0.0)), "q = {q}");
            assert_eq!((4 * q) as u32 % r.conductor(), 0, "q = {q}");
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycloNum::i().conj(), -CycloNum::i());
        let r5 = CycloNum::sqrt_odd(5).unwrap();
        assert_eq!(r5.conj(), r5);
        assert_eq!(
            CycloNum::root_of_unity(7, 2).conj(),
            CycloNum::root_of_unity(7, 5)
        );
    }

    #[test]
    fn p_integrality() {
        assert!(CycloNum::frac(1, 2).is_p_integral(3));
        assert!(!CycloNum::frac(1, 3).is_p_integral(3));
        assert!(CycloNum::root_of_unity(15, 4).is_p_integral(3));
    }

    #[test]
    fn inverse_and_division() {
        let a = CycloNum::from_int(2) + CycloNum::root_of_unity(12, 1);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, CycloNum::one());
        assert_eq!(CycloNum::zero().inv(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn reduce_finds_minimal_conductor() {
        let r3 = CycloNum::sqrt_odd(3).unwrap();
        assert_eq!(r3.reduce().conductor(), 12);
        let x = CycloNum::root_of_unity(5, 2).lift(3);
        assert_eq!(x.conductor(), 15);
        assert_eq!(x.reduce().conductor(), 5);
        assert_eq!(CycloNum::from_int(7).lift(8).reduce().conductor(), 1);
    }

    #[test]
    fn render_and_parse_round_trip() {
        let v = CycloNum::frac(1, 2) * CycloNum::sqrt_int(2).unwrap() + CycloNum::i_pow(1);
        let s = v.to_string();
        assert!(s.contains("z(8)^"));
        let back: CycloNum = s.parse().unwrap();
        assert_eq!(back, v);
        assert_eq!("0".parse::<CycloNum>().unwrap(), CycloNum::zero());
        assert_eq!(CycloNum::zero().to_string(), "0");
        assert_eq!(CycloNum::from_int(-3).to_string(), "-3 * z(1)^0");
        assert!("3 z".parse::<CycloNum>().is_err());
        assert_eq!(CycloNum::i().to_decimal_string(), "0.000000+1.000000i");
    }
}
