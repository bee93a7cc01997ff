//! Sparse exact arithmetic in the Clifford algebra `C_n` and its even part.
//!
//! `C_n` is spanned by the blades `e_I` (`I ⊆ [n]`, stored as a bitmask) with
//! `e_j² = 1` and `e_j e_k = −e_k e_j`. The two double covers `S_n^±` embed
//! into `C_n` through `t_j ↦ (e_j + e_{j+1})/√2` (cover `+`) and
//! `t_j ↦ i(e_j + e_{j+1})/√2` (cover `−`), which makes the Clifford algebra the
//! faithful model behind the element arithmetic of [`crate::covers`] and an
//! oracle for the basic spin characters.
//!
//! Two layers live here:
//! * [`CliffordElt`], an exact element with [`CycloNum`] coefficients, used by
//!   the character functionals and the oracles;
//! * an integer layer (lifts of permutations up to a positive real scalar) that
//!   computes the cocycle of the canonical lifts quickly and is memoized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::cyclo::CycloNum;

/// Largest supported rank (subsets are stored in a `u32` bitmask).
pub const MAX_RANK: usize = 30;

/// Errors raised by Clifford arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("generator index {j} out of range for n = {n}")]
    GeneratorOutOfRange { j: usize, n: usize },
    #[error("character variant {variant:?} is incompatible with n = {n}")]
    IncompatibleVariant { variant: CliffVariant, n: usize },
    #[error("element does not lie in the even subalgebra")]
    NotEven,
    #[error("element is not invertible as a versor")]
    NotInvertible,
    #[error("invalid permutation")]
    BadPermutation,
}

/// The two isomorphism types of double covers: `t_j² = 1` (`Plus`) or
/// `t_j² = z` (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cover {
    Plus,
    Minus,
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cover::Plus => write!(f, "+"),
            Cover::Minus => write!(f, "-"),
        }
    }
}

impl std::str::FromStr for Cover {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "plus" => Ok(Cover::Plus),
            "-" | "minus" => Ok(Cover::Minus),
            other => Err(format!("unknown cover '{other}' (expected + or -)")),
        }
    }
}

/// Sign `(−1)^{#{(i∈I, j∈J) : i > j}}` of the blade product `e_I e_J`.
#[inline]
pub fn blade_sign(a: u32, b: u32) -> i32 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An element of `C_n` written in the blade basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElt {
    n: usize,
    terms: BTreeMap<u32, CycloNum>,
}

impl fmt::Debug for CliffordElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CliffordElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let idx: Vec<String> = (0..self.n)
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| (j + 1).to_string())
                .collect();
            write!(f, "({c})e{{{}}}", idx.join(","))?;
        }
        Ok(())
    }
}

fn check_rank(n: usize) -> Result<(), CliffordError> {
    if n > MAX_RANK {
        Err(CliffordError::RankTooLarge(n))
    } else {
        Ok(())
    }
}

impl CliffordElt {
    /// The zero element of `C_n`.
    pub fn zero(n: usize) -> Self {
        CliffordElt { n, terms: BTreeMap::new() }
    }

    /// A scalar multiple of `e_∅`.
    pub fn scalar(n: usize, c: CycloNum) -> Self {
        Self::blade(n, 0, c)
    }

    /// The identity `e_∅`.
    pub fn one(n: usize) -> Self {
        Self::scalar(n, CycloNum::one())
    }

    /// `c · e_I` for the subset encoded by `mask`.
    pub fn blade(n: usize, mask: u32, c: CycloNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        CliffordElt { n, terms }
    }

    /// The generator `e_j` (1-based).
    pub fn generator(n: usize, j: usize) -> Result<Self, CliffordError> {
        check_rank(n)?;
        if j == 0 || j > n {
            return Err(CliffordError::GeneratorOutOfRange { j, n });
        }
        Ok(Self::blade(n, 1 << (j - 1), CycloNum::one()))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Non-zero terms, keyed by subset bitmask.
    pub fn terms(&self) -> &BTreeMap<u32, CycloNum> {
        &self.terms
    }

    /// Coefficient of `e_I`.
    pub fn coeff(&self, mask: u32) -> CycloNum {
        self.terms.get(&mask).cloned().unwrap_or_else(CycloNum::zero)
    }

    /// Coefficient of the top blade `e_{[n]}`.
    pub fn top_coeff(&self) -> CycloNum {
        self.coeff(full_mask(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every blade has even grade, i.e. the element lies in `C_n^+`.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    fn add_term(&mut self, mask: u32, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    /// Sum of two elements of equal rank.
    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.n != other.n {
            return Err(CliffordError::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        CliffordElt { n: self.n, terms }
    }

    /// The product `a · b`.
    pub fn cmul(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.n != other.n {
            return Err(CliffordError::RankMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                let prod = if blade_sign(*ma, *mb) < 0 { -prod } else { prod };
                out.add_term(ma ^ mb, prod);
            }
        }
        Ok(out)
    }

    /// The reversion anti-automorphism `e_{i1}⋯e_{ik} ↦ e_{ik}⋯e_{i1}`.
    pub fn reverse(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let k = m.count_ones();
                if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                    (*m, -c)
                } else {
                    (*m, c.clone())
                }
            })
            .collect();
        CliffordElt { n: self.n, terms }
    }

    /// Inverse of a versor (a product of non-null vectors), computed as
    /// `x̃ / (x x̃)`.
    pub fn versor_inverse(&self) -> Result<Self, CliffordError> {
        let rev = self.reverse();
        let norm = self.cmul(&rev)?;
        if norm.terms.len() != 1 || !norm.terms.contains_key(&0) {
            return Err(CliffordError::NotInvertible);
        }
        let s = norm.coeff(0).inv().map_err(|_| CliffordError::NotInvertible)?;
        Ok(rev.scale(&s))
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Result<Self, CliffordError> {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.cmul(self)?;
        }
        Ok(acc)
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// The image `φ_n^±(t_j)` of the generator `t_j` (1 ≤ j ≤ n−1).
pub fn phi(cover: Cover, n: usize, j: usize) -> Result<CliffordElt, CliffordError> {
    check_rank(n)?;
    if j == 0 || j >= n {
        return Err(CliffordError::GeneratorOutOfRange { j, n });
    }
    let half_sqrt2 = CycloNum::sqrt_int(2).expect("sqrt 2").div_int(2);
    let c = match cover {
        Cover::Plus => half_sqrt2,
        Cover::Minus => &half_sqrt2 * &CycloNum::i(),
    };
    let mut x = CliffordElt::blade(n, 1 << (j - 1), c.clone());
    x.add_term(1 << j, c);
    Ok(x)
}

/// A letter of a word in the generators of a double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// The generator `t_j` (1-based).
    T(usize),
    /// The central element `z`.
    Z,
}

/// The φ-image of a word in `t_1, …, t_{n−1}, z`.
pub fn lift_word(cover: Cover, n: usize, word: &[Letter]) -> Result<CliffordElt, CliffordError> {
    let mut acc = CliffordElt::one(n);
    for letter in word {
        acc = match letter {
            Letter::T(j) => acc.cmul(&phi(cover, n, *j)?)?,
            Letter::Z => acc.scale(&CycloNum::from_int(-1)),
        };
    }
    Ok(acc)
}

/// The irreducible characters of `C_n` and `C_n^+` as linear functionals of
/// the coefficients `c_∅` and `c_{[n]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffVariant {
    /// `C_n`, n even: `2^k c_∅`.
    Full,
    /// `C_n`, n = 2k+1: `2^k c_∅ + (2i)^k c_{[n]}`.
    FullPlus,
    /// `C_n`, n = 2k+1: `2^k c_∅ − (2i)^k c_{[n]}`.
    FullMinus,
    /// `C_n^+`, n odd: `2^k c_∅`.
    Even,
    /// `C_n^+`, n = 2k: `2^{k−1} c_∅ + i(2i)^{k−1} c_{[n]}`.
    EvenPlus,
    /// `C_n^+`, n = 2k: `2^{k−1} c_∅ − i(2i)^{k−1} c_{[n]}`.
    EvenMinus,
}

/// Evaluate the Clifford character `variant` at `x`.
pub fn cliff_char(variant: CliffVariant, x: &CliffordElt) -> Result<CycloNum, CliffordError> {
    let n = x.rank();
    let even_n = n.is_multiple_of(2);
    let ok = match variant {
        CliffVariant::Full | CliffVariant::EvenPlus | CliffVariant::EvenMinus => even_n,
        CliffVariant::FullPlus | CliffVariant::FullMinus | CliffVariant::Even => !even_n,
    };
    if !ok || (matches!(variant, CliffVariant::EvenPlus | CliffVariant::EvenMinus) && n == 0) {
        return Err(CliffordError::IncompatibleVariant { variant, n });
    }
    let is_even_variant = matches!(
        variant,
        CliffVariant::Even | CliffVariant::EvenPlus | CliffVariant::EvenMinus
    );
    if is_even_variant && !x.is_even() {
        return Err(CliffordError::NotEven);
    }
    let k = (n / 2) as u32;
    let c0 = x.coeff(0);
    let ctop = x.top_coeff();
    let two_i = CycloNum::from_int(2) * CycloNum::i();
    let pow2 = |e: u32| CycloNum::from_int(1i64 << e);
    Ok(match variant {
        CliffVariant::Full | CliffVariant::Even => &pow2(k) * &c0,
        CliffVariant::FullPlus => &(&pow2(k) * &c0) + &(&two_i.pow(k) * &ctop),
        CliffVariant::FullMinus => &(&pow2(k) * &c0) - &(&two_i.pow(k) * &ctop),
        CliffVariant::EvenPlus | CliffVariant::EvenMinus => {
            let a = &pow2(k - 1) * &c0;
            let b = &(&CycloNum::i() * &two_i.pow(k - 1)) * &ctop;
            if variant == CliffVariant::EvenPlus {
                &a + &b
            } else {
                &a - &b
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Canonical lifts of permutations and their cocycle.
// ---------------------------------------------------------------------------

/// Validate a permutation given as 0-based images.
pub fn check_perm(perm: &[u8]) -> Result<(), CliffordError> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &x in perm {
        let x = x as usize;
        if x >= n || seen[x] {
            return Err(CliffordError::BadPermutation);
        }
        seen[x] = true;
    }
    Ok(())
}

/// The fixed generator word of the canonical lift of a permutation.
///
/// The permutation (0-based images, composed right to left) is split into
/// cycles ordered by their smallest point; each cycle `(a₁ a₂ … a_k)` with
/// `a₁` minimal is written as `(a₁ a₂)(a₂ a₃)⋯(a_{k−1} a_k)`, and a
/// transposition `(a b)`, `a < b`, as `t_{b−1}⋯t_{a+1} t_a t_{a+1}⋯t_{b−1}`.
/// A cycle on consecutive points `a, a+1, …` therefore lifts to
/// `t_a t_{a+1} ⋯`. Generator indices are 1-based.
pub fn canonical_word(perm: &[u8]) -> Vec<usize> {
    let mut word = Vec::new();
    for (a, b) in transposition_chain(perm) {
        word.extend(transposition_word(a, b));
    }
    word
}

/// Transpositions `(a, b)` (0-based points, unordered) whose product, left to
/// right, is the permutation.
fn transposition_chain(perm: &[u8]) -> Vec<(usize, usize)> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = perm[start] as usize;
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = perm[x] as usize;
        }
        for w in cyc.windows(2) {
            out.push((w[0], w[1]));
        }
    }
    out
}

/// 1-based generator word of the transposition of 0-based points `a`, `b`.
fn transposition_word(a: usize, b: usize) -> Vec<usize> {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    // Points a < b are 0-based; t_j swaps 0-based points j-1 and j.
    let mut w: Vec<usize> = ((a + 2)..=b).rev().collect();
    w.push(a + 1);
    w.extend((a + 2)..=b);
    w
}

/// The canonical lift of `perm` as an exact Clifford element.
pub fn canonical_lift(cover: Cover, perm: &[u8]) -> Result<CliffordElt, CliffordError> {
    check_perm(perm)?;
    let word: Vec<Letter> = canonical_word(perm).into_iter().map(Letter::T).collect();
    lift_word(cover, perm.len(), &word)
}

/// A canonical lift up to a positive real scalar:
/// `φ(ŝ) ∈ ℝ_{>0} · i^{ε·len} · P` where `P` has coprime integer
/// coefficients and `ε` is 1 for the `−` cover.
#[derive(Debug)]
struct IntLift {
    terms: HashMap<u32, i64>,
    /// Word length of the canonical word.
    len: usize,
    /// Smallest mask with non-zero coefficient and that coefficient's sign.
    pivot: u32,
    pivot_sign: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn int_mul(a: &HashMap<u32, i64>, b: &HashMap<u32, i64>) -> HashMap<u32, i64> {
    let mut out: HashMap<u32, i64> = HashMap::with_capacity(a.len() * b.len());
    for (ma, ca) in a {
        for (mb, cb) in b {
            let v = ca * cb * blade_sign(*ma, *mb) as i64;
            *out.entry(ma ^ mb).or_insert(0) += v;
        }
    }
    out.retain(|_, v| *v != 0);
    let g = out.values().fold(0, |g, v| gcd(g, *v));
    if g > 1 {
        for v in out.values_mut() {
            *v /= g;
        }
    }
    out
}

fn build_int_lift(perm: &[u8]) -> IntLift {
    let mut acc: HashMap<u32, i64> = HashMap::from([(0u32, 1i64)]);
    let mut len = 0;
    for (a, b) in transposition_chain(perm) {
        let word = transposition_word(a, b);
        len += word.len();
        let mut t: HashMap<u32, i64> = HashMap::from([(0u32, 1i64)]);
        for j in word {
            let v = HashMap::from([(1u32 << (j - 1), 1i64), (1u32 << j, 1i64)]);
            t = int_mul(&t, &v);
        }
        acc = int_mul(&acc, &t);
    }
    let pivot = *acc.keys().min().expect("a lift is never zero");
    let pivot_sign = acc[&pivot].signum();
    IntLift { terms: acc, len, pivot, pivot_sign }
}

type LiftCache = RwLock<HashMap<Vec<u8>, Arc<IntLift>>>;
type PairCache = RwLock<HashMap<(Cover, Vec<u8>, Vec<u8>), i8>>;

fn lift_cache() -> &'static LiftCache {
    static CACHE: OnceLock<LiftCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn pair_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Bound on memoized cocycle pairs; beyond it values are still computed but
/// no longer stored.
const PAIR_CACHE_LIMIT: usize = 4_000_000;

fn int_lift(perm: &[u8]) -> Arc<IntLift> {
    if let Some(l) = lift_cache().read().expect("lift cache poisoned").get(perm) {
        return l.clone();
    }
    let built = Arc::new(build_int_lift(perm));
    let mut w = lift_cache().write().expect("lift cache poisoned");
    w.entry(perm.to_vec()).or_insert(built).clone()
}

/// Compose permutations: `(σ∘τ)(i) = σ(τ(i))`.
pub fn compose(sigma: &[u8], tau: &[u8]) -> Vec<u8> {
    tau.iter().map(|&x| sigma[x as usize]).collect()
}

/// The sign `s` with `σ̂ · τ̂ = z^{(1−s)/2} · (στ)^`, where `^` is the
/// canonical lift in the given cover.
///
/// Computed by comparing one Clifford coefficient of both sides; memoized.
pub fn cocycle_sign(cover: Cover, sigma: &[u8], tau: &[u8]) -> Result<i8, CliffordError> {
    if sigma.len() != tau.len() {
        return Err(CliffordError::RankMismatch(sigma.len(), tau.len()));
    }
    check_rank(sigma.len())?;
    let key = (cover, sigma.to_vec(), tau.to_vec());
    if let Some(s) = pair_cache().read().expect("cocycle cache poisoned").get(&key) {
        return Ok(*s);
    }
    check_perm(sigma)?;
    check_perm(tau)?;
    let s = cocycle_uncached(cover, sigma, tau);
    let mut w = pair_cache().write().expect("cocycle cache poisoned");
    if w.len() < PAIR_CACHE_LIMIT {
        w.insert(key, s);
    }
    Ok(s)
}

fn cocycle_uncached(cover: Cover, sigma: &[u8], tau: &[u8]) -> i8 {
    let ls = int_lift(sigma);
    let lt = int_lift(tau);
    let prod = compose(sigma, tau);
    let lp = int_lift(&prod);
    let target = lp.pivot;
    let mut a: i128 = 0;
    for (m, c) in &ls.terms {
        if let Some(d) = lt.terms.get(&(m ^ target)) {
            a += (*c as i128) * (*d as i128) * blade_sign(*m, m ^ target) as i128;
        }
    }
    assert!(a != 0, "canonical lifts disagree beyond a sign");
    let mut s = (a.signum() as i64) * lp.pivot_sign;
    if cover == Cover::Minus {
        let diff = (ls.len + lt.len) as i64 - lp.len as i64;
        debug_assert!(diff % 2 == 0);
        if diff.rem_euclid(4) == 2 {
            s = -s;
        }
    }
    s as i8
}
