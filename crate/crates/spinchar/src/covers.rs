//! Element and conjugacy-class models for the double covers `S̃_n`, `Ã_n`
//! and the local subgroups `Ñ_p^t S̃_t ≤ S̃_{pt}`.
//!
//! An element is a permutation together with a bit recording whether it is
//! the canonical lift of that permutation (see
//! [`crate::clifford::canonical_word`]) or `z` times it. Products adjust the
//! bit by the cocycle of the canonical lifts, computed in the Clifford model.
//!
//! Split classes carry a `plus`/`minus` tag relative to a fixed canonical
//! representative:
//! * types with only odd parts: the odd-order lift `o(g)` of the standard
//!   permutation (cycles on consecutive points, longest first);
//! * strict types outside the odd ones: a representative built recursively
//!   by splitting off the largest odd part `q` as `o((1 … q))` and shifting
//!   the remainder, multiplied by `z` whenever `(q² − 1)/8` is odd. With this
//!   normalization the `plus` character of the type takes the `+` special
//!   value on the `plus` class.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

pub use crate::clifford::Cover;
use crate::clifford::{self, CliffordError};
use crate::partitions::{MultiPartition, Partition, PartitionError};

/// Errors raised by the element and class models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("elements live in different groups")]
    Mismatch,
    #[error("element is not in the alternating cover")]
    NotEven,
    #[error("label {0} does not describe a class of this group")]
    BadLabel(String),
    #[error("group order {order} exceeds the cap {cap}")]
    Capped { order: u128, cap: u128 },
    #[error("p = {0} is not an odd prime")]
    BadPrime(usize),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

// ---------------------------------------------------------------------------
// Permutation helpers (0-based images, composed right to left).
// ---------------------------------------------------------------------------

/// The cycles of a permutation (including fixed points), each starting at
/// its smallest point, ordered by smallest point.
pub fn cycles(perm: &[u8]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut x = perm[s] as usize;
        while x != s {
            seen[x] = true;
            c.push(x);
            x = perm[x] as usize;
        }
        out.push(c);
    }
    out
}

/// The cycle type of a permutation.
pub fn cycle_type(perm: &[u8]) -> Partition {
    Partition::new(cycles(perm).iter().map(Vec::len).collect())
}

/// True when the permutation is even.
pub fn perm_is_even(perm: &[u8]) -> bool {
    cycles(perm).iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
}

/// The inverse permutation.
pub fn perm_inverse(perm: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; perm.len()];
    for (i, &x) in perm.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Order of a permutation.
pub fn perm_order(perm: &[u8]) -> u64 {
    cycles(perm)
        .iter()
        .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
}

/// The permutation of `n` points whose cycles are consecutive runs of the
/// given lengths, in the given order.
pub fn consecutive_cycles(n: usize, lengths: &[usize]) -> Vec<u8> {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut start = 0;
    for &l in lengths {
        for k in 0..l {
            perm[start + k] = (start + (k + 1) % l) as u8;
        }
        start += l;
    }
    perm
}

/// A permutation `c` with `c ∘ a ∘ c⁻¹ = b`, for permutations of equal type.
pub fn conjugator(a: &[u8], b: &[u8]) -> Option<Vec<u8>> {
    if a.len() != b.len() {
        return None;
    }
    let mut ca = cycles(a);
    let mut cb = cycles(b);
    ca.sort_by_key(|c| std::cmp::Reverse(c.len()));
    cb.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut c = vec![0u8; a.len()];
    for (x, y) in ca.iter().zip(&cb) {
        if x.len() != y.len() {
            return None;
        }
        for (i, j) in x.iter().zip(y) {
            c[*i] = *j as u8;
        }
    }
    Some(c)
}

// ---------------------------------------------------------------------------
// Elements.
// ---------------------------------------------------------------------------

/// An element of `S̃_n` in the `(permutation, z-bit)` model.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverElt {
    perm: Vec<u8>,
    z: bool,
    cover: Cover,
}

impl fmt::Debug for CoverElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CoverElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc: Vec<String> = cycles(&self.perm)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect();
        let body = if cyc.is_empty() { "1".to_string() } else { cyc.concat() };
        if self.z {
            write!(f, "z{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl CoverElt {
    /// Element with the given permutation and z-bit.
    pub fn new(perm: Vec<u8>, z: bool, cover: Cover) -> Result<Self, CoverError> {
        clifford::check_perm(&perm)?;
        Ok(CoverElt { perm, z, cover })
    }

    /// The canonical lift of a permutation.
    pub fn lift(perm: Vec<u8>, cover: Cover) -> Result<Self, CoverError> {
        Self::new(perm, false, cover)
    }

    pub fn identity(n: usize, cover: Cover) -> Self {
        CoverElt { perm: (0..n as u8).collect(), z: false, cover }
    }

    /// The central element `z`.
    pub fn central(n: usize, cover: Cover) -> Self {
        CoverElt { perm: (0..n as u8).collect(), z: true, cover }
    }

    /// The generator `t_j` (1 ≤ j ≤ n−1).
    pub fn generator(n: usize, j: usize, cover: Cover) -> Result<Self, CoverError> {
        if j == 0 || j >= n {
            return Err(CliffordError::GeneratorOutOfRange { j, n }.into());
        }
        let mut perm: Vec<u8> = (0..n as u8).collect();
        perm.swap(j - 1, j);
        Ok(CoverElt { perm, z: false, cover })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn cover(&self) -> Cover {
        self.cover
    }

    /// `θ_n(x)`, the underlying permutation.
    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    /// True when the element is `z` times the canonical lift.
    pub fn z_bit(&self) -> bool {
        self.z
    }

    /// `z · x`.
    pub fn times_z(&self) -> Self {
        CoverElt { perm: self.perm.clone(), z: !self.z, cover: self.cover }
    }

    pub fn is_identity(&self) -> bool {
        !self.z && self.perm.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// True when `θ(x)` is an even permutation, i.e. `x ∈ Ã_n`.
    pub fn is_even(&self) -> bool {
        perm_is_even(&self.perm)
    }

    /// `ε(x)`: +1 on `Ã_n`, −1 elsewhere.
    pub fn epsilon(&self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    pub fn cycle_type(&self) -> Partition {
        cycle_type(&self.perm)
    }

    /// Group product `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, CoverError> {
        if self.cover != other.cover || self.perm.len() != other.perm.len() {
            return Err(CoverError::Mismatch);
        }
        let s = clifford::cocycle_sign(self.cover, &self.perm, &other.perm)?;
        Ok(CoverElt {
            perm: clifford::compose(&self.perm, &other.perm),
            z: self.z ^ other.z ^ (s < 0),
            cover: self.cover,
        })
    }

    /// Inverse element.
    pub fn inv(&self) -> Self {
        let inv = perm_inverse(&self.perm);
        let s = clifford::cocycle_sign(self.cover, &self.perm, &inv).expect("valid permutation");
        CoverElt { perm: inv, z: self.z ^ (s < 0), cover: self.cover }
    }

    /// Integer power (negative exponents allowed).
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = CoverElt::identity(self.n(), self.cover);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        acc
    }

    /// `g · x · g⁻¹`.
    pub fn conj_by(&self, g: &Self) -> Self {
        &(g * self) * &g.inv()
    }

    /// Order of the element.
    pub fn order(&self) -> u64 {
        let m = perm_order(&self.perm);
        if self.pow(m as i64).is_identity() {
            m
        } else {
            2 * m
        }
    }

    /// The odd-order lift `o(g)` of `θ(g)`, when `θ(g)` has odd order.
    pub fn odd_part(&self) -> Option<Self> {
        let m = perm_order(&self.perm);
        if m.is_multiple_of(2) {
            return None;
        }
        if self.pow(m as i64).is_identity() {
            Some(self.clone())
        } else {
            Some(self.times_z())
        }
    }

    /// The image in `S̃_{n+extra}` fixing the new points.
    pub fn embed(&self, extra: usize) -> Self {
        let n = self.n();
        let mut perm = self.perm.clone();
        perm.extend((n..n + extra).map(|x| x as u8));
        CoverElt { perm, z: self.z, cover: self.cover }
    }

    /// The image under `t_j ↦ t_{j+q}` in `S̃_{n+q}` (points shifted by `q`).
    ///
    /// The canonical word of a shifted permutation is the shifted canonical
    /// word, so the z-bit is unchanged.
    pub fn shift(&self, q: usize) -> Self {
        let mut perm: Vec<u8> = (0..q as u8).collect();
        perm.extend(self.perm.iter().map(|&x| x + q as u8));
        CoverElt { perm, z: self.z, cover: self.cover }
    }
}

impl Mul for &CoverElt {
    type Output = CoverElt;

    /// Panics when the operands live in different groups; use
    /// [`CoverElt::try_mul`] for a fallible product.
    fn mul(self, rhs: &CoverElt) -> CoverElt {
        self.try_mul(rhs).expect("product of elements of different groups")
    }
}

/// The odd-order lift of the consecutive cycle `(1 … q)` in `S̃_q`.
pub fn odd_cycle(q: usize, cover: Cover) -> CoverElt {
    CoverElt::lift(consecutive_cycles(q, &[q]), cover)
        .expect("valid permutation")
        .odd_part()
        .expect("odd cycle")
}

// ---------------------------------------------------------------------------
// Classes of S̃_n and Ã_n.
// ---------------------------------------------------------------------------

/// Split tag of a class of `S̃_n` or of the local subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitTag {
    Plus,
    Minus,
    Unsplit,
}

impl SplitTag {
    /// Swap `Plus` and `Minus`.
    pub fn flip(self) -> Self {
        match self {
            SplitTag::Plus => SplitTag::Minus,
            SplitTag::Minus => SplitTag::Plus,
            SplitTag::Unsplit => SplitTag::Unsplit,
        }
    }

    /// `+1` on `Plus`, `−1` on `Minus`, `0` on unsplit classes.
    pub fn sign(self) -> i32 {
        match self {
            SplitTag::Plus => 1,
            SplitTag::Minus => -1,
            SplitTag::Unsplit => 0,
        }
    }
}

impl fmt::Display for SplitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitTag::Plus => "+",
            SplitTag::Minus => "-",
            SplitTag::Unsplit => "",
        })
    }
}

/// A conjugacy class of `S̃_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymClassLabel {
    pub cycle_type: Partition,
    pub tag: SplitTag,
}

impl fmt::Display for SymClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", self.cycle_type, self.tag)
    }
}

/// `π ∈ O_n`: all parts odd.
pub fn is_odd_type(pi: &Partition) -> bool {
    pi.all_odd()
}

/// `C̃_π` splits into two classes of `S̃_n` iff `π ∈ O_n ∪ D_n^−`.
pub fn sym_type_splits(pi: &Partition) -> bool {
    pi.all_odd() || (pi.is_strict() && pi.sigma() == -1)
}

/// Tag of a class of `Ã_n`. The primed tags occur only for types with
/// distinct odd parts, where the class of `A_n` itself splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AltTag {
    Plus,
    Minus,
    PlusPrime,
    MinusPrime,
    Unsplit,
}

impl AltTag {
    /// Multiplication by `z`.
    pub fn times_z(self) -> Self {
        match self {
            AltTag::Plus => AltTag::Minus,
            AltTag::Minus => AltTag::Plus,
            AltTag::PlusPrime => AltTag::MinusPrime,
            AltTag::MinusPrime => AltTag::PlusPrime,
            AltTag::Unsplit => AltTag::Unsplit,
        }
    }

    /// Conjugation by an element outside `Ã_n`.
    pub fn odd_conjugate(self) -> Self {
        match self {
            AltTag::Plus => AltTag::PlusPrime,
            AltTag::PlusPrime => AltTag::Plus,
            AltTag::Minus => AltTag::MinusPrime,
            AltTag::MinusPrime => AltTag::Minus,
            AltTag::Unsplit => AltTag::Unsplit,
        }
    }

    /// Sign under `z`: `+1` for `Plus`/`PlusPrime`, `−1` for the others,
    /// `0` when unsplit.
    pub fn z_sign(self) -> i32 {
        match self {
            AltTag::Plus | AltTag::PlusPrime => 1,
            AltTag::Minus | AltTag::MinusPrime => -1,
            AltTag::Unsplit => 0,
        }
    }

    /// Sign under odd conjugation, for the four-class types: `+1` for
    /// `Plus`/`MinusPrime`, `−1` for `PlusPrime`/`Minus` (the sign of
    /// `ξ̄⁺ − ξ̄⁻`).
    pub fn difference_sign(self) -> i32 {
        match self {
            AltTag::Plus | AltTag::MinusPrime => 1,
            AltTag::Minus | AltTag::PlusPrime => -1,
            AltTag::Unsplit => 0,
        }
    }
}

impl fmt::Display for AltTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AltTag::Plus => "+",
            AltTag::Minus => "-",
            AltTag::PlusPrime => "+'",
            AltTag::MinusPrime => "-'",
            AltTag::Unsplit => "",
        })
    }
}

/// A conjugacy class of `Ã_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltClassLabel {
    pub cycle_type: Partition,
    pub tag: AltTag,
}

impl fmt::Display for AltClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", self.cycle_type, self.tag)
    }
}

/// Even type whose preimage in `Ã_n` splits: `π ∈ O_n ∪ D_n^+`.
pub fn alt_type_splits(pi: &Partition) -> bool {
    pi.sigma() == 1 && (pi.all_odd() || pi.is_strict())
}

/// Even type whose class in `A_n` itself splits: distinct odd parts.
pub fn alt_type_four_classes(pi: &Partition) -> bool {
    pi.all_odd() && pi.is_strict()
}

/// Class data common to all class tables.
#[derive(Debug, Clone)]
pub struct ClassInfo<L> {
    pub label: L,
    pub size: u128,
    pub centralizer: u128,
    pub rep: CoverElt,
}

impl<L> ClassInfo<L> {
    /// p-regular: the representative has order prime to `p`.
    pub fn is_p_regular(&self, p: u64) -> bool {
        !self.rep.order().is_multiple_of(p)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Recursive representative for a strict type: `z^c · o((1…q)) · R(λ∖q)[q]`
/// with `q` the largest odd part and `c = (q² − 1)/8 mod 2`; all-even types
/// use the canonical lift of the standard permutation.
pub fn strict_rep(lambda: &Partition, cover: Cover) -> CoverElt {
    let n = lambda.size();
    match lambda.parts().iter().copied().find(|q| q % 2 == 1) {
        None => CoverElt::lift(consecutive_cycles(n, lambda.parts()), cover).expect("valid"),
        Some(q) => {
            let rest = lambda.without_part(q).expect("part present");
            let tail = strict_rep(&rest, cover).shift(q);
            let head = odd_cycle(q, cover).embed(n - q);
            let x = &head * &tail;
            if ((q * q - 1) / 8) % 2 == 1 {
                x.times_z()
            } else {
                x
            }
        }
    }
}

/// The standard odd-order representative of an all-odd type.
pub fn odd_type_rep(pi: &Partition, cover: Cover) -> CoverElt {
    CoverElt::lift(consecutive_cycles(pi.size(), pi.parts()), cover)
        .expect("valid")
        .odd_part()
        .expect("odd type")
}

/// The canonical representative of a class of `S̃_n`.
pub fn sym_canonical_rep(label: &SymClassLabel, cover: Cover) -> Result<CoverElt, CoverError> {
    let pi = &label.cycle_type;
    let splits = sym_type_splits(pi);
    if splits == (label.tag == SplitTag::Unsplit) {
        return Err(CoverError::BadLabel(label.to_string()));
    }
    let base = if pi.all_odd() {
        odd_type_rep(pi, cover)
    } else if splits {
        strict_rep(pi, cover)
    } else {
        CoverElt::lift(consecutive_cycles(pi.size(), pi.parts()), cover)?
    };
    Ok(if label.tag == SplitTag::Minus { base.times_z() } else { base })
}

/// The class of `x` in `S̃_n`.
pub fn classify_sym(x: &CoverElt) -> SymClassLabel {
    let pi = x.cycle_type();
    if !sym_type_splits(&pi) {
        return SymClassLabel { cycle_type: pi, tag: SplitTag::Unsplit };
    }
    let rep = sym_canonical_rep(&SymClassLabel { cycle_type: pi.clone(), tag: SplitTag::Plus }, x.cover())
        .expect("split type");
    let c = conjugator(rep.perm(), x.perm()).expect("same cycle type");
    let c = CoverElt::lift(c, x.cover()).expect("valid");
    let y = rep.conj_by(&c);
    let tag = if y == *x { SplitTag::Plus } else { SplitTag::Minus };
    SymClassLabel { cycle_type: pi, tag }
}

/// All classes of `S̃_n`, ordered by type (partitions in reverse
/// lexicographic order) then tag.
pub fn sym_classes(n: usize, cover: Cover) -> Vec<ClassInfo<SymClassLabel>> {
    let order = 2 * factorial(n);
    let mut out = Vec::new();
    for pi in crate::partitions::partitions(n) {
        let zpi = pi.z();
        let csize = factorial(n) / zpi;
        let tags: &[SplitTag] = if sym_type_splits(&pi) {
            &[SplitTag::Plus, SplitTag::Minus]
        } else {
            &[SplitTag::Unsplit]
        };
        for &tag in tags {
            let label = SymClassLabel { cycle_type: pi.clone(), tag };
            let size = if tag == SplitTag::Unsplit { 2 * csize } else { csize };
            let rep = sym_canonical_rep(&label, cover).expect("valid label");
            out.push(ClassInfo { label, size, centralizer: order / size, rep });
        }
    }
    out
}

/// An odd permutation centralizing `perm`, if one exists.
fn odd_centralizer(perm: &[u8]) -> Option<Vec<u8>> {
    let cyc = cycles(perm);
    if let Some(c) = cyc.iter().find(|c| c.len() % 2 == 0) {
        // The even-length cycle itself.
        let mut k: Vec<u8> = (0..perm.len() as u8).collect();
        for w in 0..c.len() {
            k[c[w]] = c[(w + 1) % c.len()] as u8;
        }
        return Some(k);
    }
    for (i, a) in cyc.iter().enumerate() {
        if let Some(b) = cyc[i + 1..].iter().find(|b| b.len() == a.len()) {
            // Swap two cycles of equal odd length, matching successors.
            let mut k: Vec<u8> = (0..perm.len() as u8).collect();
            for (x, y) in a.iter().zip(b) {
                k[*x] = *y as u8;
                k[*y] = *x as u8;
            }
            return Some(k);
        }
    }
    None
}

/// The canonical representative of a class of `Ã_n`.
///
/// For distinct odd parts the `Plus` class is the odd-order class on which
/// the recursive representative's normalization gives the `+` difference
/// value; `PlusPrime` is its conjugate under an odd element.
pub fn alt_canonical_rep(label: &AltClassLabel, cover: Cover) -> Result<CoverElt, CoverError> {
    let pi = &label.cycle_type;
    let bad = || CoverError::BadLabel(label.to_string());
    if pi.sigma() != 1 {
        return Err(bad());
    }
    let four = alt_type_four_classes(pi);
    let splits = alt_type_splits(pi);
    let ok = match label.tag {
        AltTag::Unsplit => !splits,
        AltTag::Plus | AltTag::Minus => splits,
        AltTag::PlusPrime | AltTag::MinusPrime => four,
    };
    if !ok {
        return Err(bad());
    }
    if !splits {
        return CoverElt::lift(consecutive_cycles(pi.size(), pi.parts()), cover);
    }
    let plus = if four {
        let r = strict_rep(pi, cover);
        let odd = odd_type_rep(pi, cover);
        // `r` is `odd` or `z · odd`; in the latter case the odd conjugate of
        // `odd` carries the same difference value as `r` while keeping odd order.
        if r == odd {
            odd
        } else {
            odd_conjugate(&odd)
        }
    } else if pi.is_strict() {
        strict_rep(pi, cover)
    } else {
        odd_type_rep(pi, cover)
    };
    Ok(match label.tag {
        AltTag::Plus => plus,
        AltTag::Minus => plus.times_z(),
        AltTag::PlusPrime => odd_conjugate(&plus),
        AltTag::MinusPrime => odd_conjugate(&plus).times_z(),
        AltTag::Unsplit => unreachable!(),
    })
}

/// Conjugate by the canonical lift of the transposition of the first two points.
fn odd_conjugate(x: &CoverElt) -> CoverElt {
    let t = CoverElt::generator(x.n(), 1, x.cover()).expect("n ≥ 2");
    x.conj_by(&t)
}

/// The class of an even element in `Ã_n`.
pub fn classify_alt(x: &CoverElt) -> Result<AltClassLabel, CoverError> {
    if !x.is_even() {
        return Err(CoverError::NotEven);
    }
    let pi = x.cycle_type();
    if !alt_type_splits(&pi) {
        return Ok(AltClassLabel { cycle_type: pi, tag: AltTag::Unsplit });
    }
    let plus = alt_canonical_rep(&AltClassLabel { cycle_type: pi.clone(), tag: AltTag::Plus }, x.cover())?;
    let mut c = conjugator(plus.perm(), x.perm()).expect("same cycle type");
    let mut tag = AltTag::Plus;
    if !perm_is_even(&c) {
        match odd_centralizer(plus.perm()) {
            Some(k) => c = clifford::compose(&c, &k),
            None => tag = AltTag::PlusPrime,
        }
    }
    // With an odd conjugator, y lies in the class of the odd conjugate of `plus`.
    let y = plus.conj_by(&CoverElt::lift(c, x.cover())?);
    if y != *x {
        tag = tag.times_z();
    }
    Ok(AltClassLabel { cycle_type: pi, tag })
}

/// All classes of `Ã_n`, ordered by type then tag.
pub fn alt_classes(n: usize, cover: Cover) -> Vec<ClassInfo<AltClassLabel>> {
    // |Ã_n| = n!, twice the order of A_n.
    let order = factorial(n);
    let mut out = Vec::new();
    for pi in crate::partitions::partitions(n) {
        if pi.sigma() != 1 {
            continue;
        }
        let csize = factorial(n) / pi.z();
        let (tags, size): (&[AltTag], u128) = if alt_type_four_classes(&pi) && n >= 2 {
            (&[AltTag::Plus, AltTag::Minus, AltTag::PlusPrime, AltTag::MinusPrime], csize / 2)
        } else if alt_type_splits(&pi) {
            (&[AltTag::Plus, AltTag::Minus], csize)
        } else {
            (&[AltTag::Unsplit], 2 * csize)
        };
        for &tag in tags {
            let label = AltClassLabel { cycle_type: pi.clone(), tag };
            let rep = alt_canonical_rep(&label, cover).expect("valid label");
            out.push(ClassInfo { label, size, centralizer: order / size, rep });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// C/S decompositions.
// ---------------------------------------------------------------------------

/// `x = x_C · x_S = x_S · x_C` where `x_S` collects the cycles of length 1 or
/// an odd multiple of `p` (normalized to its odd-order lift) and `x_C` the
/// remaining cycles (absorbing any `z`).
pub fn decompose_cs(x: &CoverElt, p: usize) -> (CoverElt, CoverElt) {
    let n = x.n();
    let mut s_perm: Vec<u8> = (0..n as u8).collect();
    for c in cycles(x.perm()) {
        let l = c.len();
        if l % p == 0 && (l / p) % 2 == 1 {
            for w in 0..l {
                s_perm[c[w]] = c[(w + 1) % l] as u8;
            }
        }
    }
    let xs = CoverElt::lift(s_perm, x.cover()).expect("valid").odd_part().expect("odd cycles");
    let xc = x * &xs.inv();
    (xc, xs)
}

/// `s_β = o((1,…,pβ_1)(pβ_1+1,…)⋯) ∈ S̃_n` for a partition β with odd parts.
pub fn s_beta(beta: &Partition, p: usize, n: usize, cover: Cover) -> Result<CoverElt, CoverError> {
    if beta.parts().iter().any(|b| b % 2 == 0) || p * beta.size() > n {
        return Err(CoverError::BadLabel(beta.to_string()));
    }
    let lengths: Vec<usize> = beta.parts().iter().map(|b| b * p).collect();
    Ok(CoverElt::lift(consecutive_cycles(n, &lengths), cover)?
        .odd_part()
        .expect("odd cycles"))
}

// ---------------------------------------------------------------------------
// The local subgroups Ñ_p^t S̃_t.
// ---------------------------------------------------------------------------

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The affine map `o ↦ a·o + b` of `Z/p`, as a permutation of block `b`.
fn block_affine(p: usize, t: usize, block: usize, a: usize, b: usize) -> Vec<u8> {
    let mut perm: Vec<u8> = (0..(p * t) as u8).collect();
    for o in 0..p {
        perm[block * p + o] = (block * p + (a * o + b) % p) as u8;
    }
    perm
}

/// Swap of blocks `b` and `b+1`, preserving offsets.
fn block_swap(p: usize, t: usize, b: usize) -> Vec<u8> {
    let mut perm: Vec<u8> = (0..(p * t) as u8).collect();
    for o in 0..p {
        perm[b * p + o] = ((b + 1) * p + o) as u8;
        perm[(b + 1) * p + o] = (b * p + o) as u8;
    }
    perm
}

/// Index `j` of the `N_p`-class of the affine map `o ↦ a·o + b`: `0` for the
/// translations (class of `y_0`), `p−1` for the identity, otherwise the
/// exponent `j` with `a = g^j` for the primitive root `g`.
pub fn affine_class(p: usize, a: usize, b: usize) -> usize {
    if a == 1 {
        return if b == 0 { p - 1 } else { 0 };
    }
    let g = primitive_root(p);
    let mut x = 1;
    for j in 1..p {
        x = x * g % p;
        if x == a {
            return j;
        }
    }
    unreachable!("a is a unit")
}

/// The type `(π_0, …, π_{p−1})` of an element of `N_p ≀ S_t ≤ S_{pt}`:
/// `π_j` lists the lengths of the block cycles whose cycle product lies in
/// the class of `y_j` (`y_0` the p-cycle, `y_j = y_1^j`, `y_{p−1} = 1`).
/// Returns `None` when the permutation does not normalize the block system
/// by affine maps.
pub fn wreath_type(p: usize, t: usize, perm: &[u8]) -> Option<MultiPartition> {
    if perm.len() != p * t {
        return None;
    }
    let block_img = |b: usize| perm[b * p] as usize / p;
    let mut seen = vec![false; t];
    let mut comps: Vec<Vec<usize>> = vec![Vec::new(); p];
    for b in 0..t {
        if seen[b] {
            continue;
        }
        let mut len = 0;
        let mut c = b;
        loop {
            seen[c] = true;
            len += 1;
            for o in 0..p {
                if perm[c * p + o] as usize / p != block_img(c) {
                    return None;
                }
            }
            c = block_img(c);
            if c == b {
                break;
            }
        }
        // x^len restricted to block b.
        let apply = |mut pt: usize| {
            for _ in 0..len {
                pt = perm[pt] as usize;
            }
            pt - b * p
        };
        let bb = apply(b * p);
        let a = (apply(b * p + 1) + p - bb) % p;
        for o in 0..p {
            if apply(b * p + o) != (a * o + bb) % p {
                return None;
            }
        }
        comps[affine_class(p, a, bb)].push(len);
    }
    Some(MultiPartition::new(comps.into_iter().map(Partition::new).collect()))
}

/// The standard permutation of a wreath type: the block cycles are laid out
/// on consecutive blocks (ordered by `j`, then longest first), each moving
/// block `b+i` to `b+i+1` with offsets preserved, and the last block back to
/// the first through `y_j`.
pub fn wreath_type_perm(p: usize, wtype: &MultiPartition) -> Vec<u8> {
    let t = wtype.size();
    let g = primitive_root(p);
    let mut perm: Vec<u8> = (0..(p * t) as u8).collect();
    let mut start = 0;
    for (j, comp) in wtype.components().iter().enumerate() {
        let (a, bshift) = if j == 0 {
            (1, 1)
        } else {
            (pow_mod(g, j, p), 0)
        };
        for &k in comp.parts() {
            for i in 0..k {
                let from = start + i;
                for o in 0..p {
                    let img = if i + 1 < k {
                        (from + 1) * p + o
                    } else {
                        start * p + (a * o + bshift) % p
                    };
                    perm[from * p + o] = img as u8;
                }
            }
            start += k;
        }
    }
    perm
}

fn pow_mod(g: usize, e: usize, p: usize) -> usize {
    (0..e).fold(1, |x, _| x * g % p)
}

/// A conjugacy class label of `Ñ_p^t S̃_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathClassLabel {
    pub wtype: MultiPartition,
    pub tag: SplitTag,
}

impl fmt::Display for WreathClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", self.wtype, self.tag)
    }
}

/// A class of the enumerated local subgroup.
#[derive(Debug, Clone)]
pub struct WreathClass {
    pub info: ClassInfo<WreathClassLabel>,
    pub p_regular: bool,
    /// Indices into [`WreathGroup::elements`].
    pub members: Vec<usize>,
}

/// The group `Ñ_p^t S̃_t ≤ S̃_{pt}`, enumerated element by element.
#[derive(Debug, Clone)]
pub struct WreathGroup {
    pub p: usize,
    pub t: usize,
    pub cover: Cover,
    pub elements: Vec<CoverElt>,
    pub generators: Vec<CoverElt>,
    index: HashMap<CoverElt, usize>,
    pub classes: Vec<WreathClass>,
    class_of: Vec<usize>,
}

/// Default cap on the order of enumerated groups.
pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;

impl WreathGroup {
    /// Order `2 (p(p−1))^t t!`.
    pub fn order_formula(p: usize, t: usize) -> u128 {
        2 * ((p * (p - 1)) as u128).pow(t as u32) * factorial(t)
    }

    /// The generators used for enumeration: `t_j`-type lifts of block
    /// cycles, block multipliers, block swaps, and `z`.
    pub fn standard_generators(p: usize, t: usize, cover: Cover) -> Vec<CoverElt> {
        let g = primitive_root(p);
        let mut gens = Vec::new();
        for b in 0..t {
            gens.push(CoverElt::lift(block_affine(p, t, b, 1, 1), cover).expect("valid"));
            gens.push(CoverElt::lift(block_affine(p, t, b, g, 0), cover).expect("valid"));
        }
        for b in 0..t.saturating_sub(1) {
            gens.push(CoverElt::lift(block_swap(p, t, b), cover).expect("valid"));
        }
        gens.push(CoverElt::central(p * t, cover));
        gens
    }

    /// Enumerate the group and its conjugacy classes.
    pub fn enumerate(p: usize, t: usize, cover: Cover, cap: u128) -> Result<Self, CoverError> {
        if !is_odd_prime(p) {
            return Err(CoverError::BadPrime(p));
        }
        let order = Self::order_formula(p, t);
        if order > cap {
            return Err(CoverError::Capped { order, cap });
        }
        let generators = Self::standard_generators(p, t, cover);
        let id = CoverElt::identity(p * t, cover);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<CoverElt, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let y = &elements[i] * g;
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        assert_eq!(elements.len() as u128, order, "enumeration disagrees with the order formula");
        let gen_inv: Vec<CoverElt> = generators.iter().map(CoverElt::inv).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for s in 0..elements.len() {
            if class_of[s] != usize::MAX {
                continue;
            }
            let cid = raw.len();
            let mut members = vec![s];
            class_of[s] = cid;
            let mut q = VecDeque::from([s]);
            while let Some(i) = q.pop_front() {
                for (g, gi) in generators.iter().zip(&gen_inv) {
                    let y = &(g * &elements[i]) * gi;
                    let j = index[&y];
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                        q.push_back(j);
                    }
                }
            }
            raw.push(members);
        }
        // Label classes by type and tag relative to the standard representatives.
        let mut labelled: Vec<(WreathClassLabel, Vec<usize>, CoverElt)> = Vec::new();
        let mut by_type: HashMap<MultiPartition, Vec<usize>> = HashMap::new();
        for (cid, members) in raw.iter().enumerate() {
            let wt = wreath_type(p, t, elements[members[0]].perm()).expect("element of the wreath product");
            by_type.entry(wt).or_default().push(cid);
        }
        let mut types: Vec<MultiPartition> = by_type.keys().cloned().collect();
        types.sort();
        for wt in types {
            let cids = &by_type[&wt];
            let perm = wreath_type_perm(p, &wt);
            let mut rep = CoverElt::lift(perm, cover)?;
            if let Some(o) = rep.odd_part() {
                rep = o;
            }
            let rep_class = class_of[index[&rep]];
            match cids.len() {
                1 => labelled.push((
                    WreathClassLabel { wtype: wt.clone(), tag: SplitTag::Unsplit },
                    raw[cids[0]].clone(),
                    rep,
                )),
                2 => {
                    let other = if cids[0] == rep_class { cids[1] } else { cids[0] };
                    labelled.push((
                        WreathClassLabel { wtype: wt.clone(), tag: SplitTag::Plus },
                        raw[rep_class].clone(),
                        rep.clone(),
                    ));
                    labelled.push((
                        WreathClassLabel { wtype: wt.clone(), tag: SplitTag::Minus },
                        raw[other].clone(),
                        rep.times_z(),
                    ));
                }
                k => panic!("type {wt} has {k} classes; the type should determine the class up to z"),
            }
        }
        let mut classes = Vec::new();
        let mut class_of = vec![0usize; elements.len()];
        for (cid, (label, members, rep)) in labelled.into_iter().enumerate() {
            for &m in &members {
                class_of[m] = cid;
            }
            let size = members.len() as u128;
            let p_regular = rep.order() % p as u64 != 0;
            classes.push(WreathClass {
                info: ClassInfo { label, size, centralizer: order / size, rep },
                p_regular,
                members,
            });
        }
        Ok(WreathGroup { p, t, cover, elements, generators, index, classes, class_of })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of an element, if it belongs to the group.
    pub fn index_of(&self, x: &CoverElt) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Class index of an element of the group.
    pub fn class_index(&self, x: &CoverElt) -> Option<usize> {
        self.index_of(x).map(|i| self.class_of[i])
    }

    /// Class index of the element with the given index.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Class index of a label.
    pub fn find_class(&self, label: &WreathClassLabel) -> Option<usize> {
        self.classes.iter().position(|c| c.info.label == *label)
    }

    /// The set of classes lying in `Ã_{pt}`.
    pub fn even_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].info.rep.is_even()).collect()
    }
}

/// All classes of the local subgroup (exhaustive enumeration).
pub fn wreath_classes(p: usize, t: usize, cover: Cover) -> Result<Vec<WreathClass>, CoverError> {
    Ok(WreathGroup::enumerate(p, t, cover, DEFAULT_GROUP_CAP)?.classes)
}

/// Exhaustively enumerate `S̃_n` (test and verification helper for small n).
pub fn enumerate_sym(n: usize, cover: Cover) -> Vec<CoverElt> {
    let mut out = Vec::new();
    let mut perms: Vec<Vec<u8>> = vec![(0..n as u8).collect()];
    let mut seen: HashSet<Vec<u8>> = perms.iter().cloned().collect();
    let mut i = 0;
    while i < perms.len() {
        for j in 0..n.saturating_sub(1) {
            let mut q = perms[i].clone();
            q.swap(j, j + 1);
            if seen.insert(q.clone()) {
                perms.push(q);
            }
        }
        i += 1;
    }
    for p in perms {
        out.push(CoverElt { perm: p.clone(), z: false, cover });
        out.push(CoverElt { perm: p, z: true, cover });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(n: usize, j: usize, c: Cover) -> CoverElt {
        CoverElt::generator(n, j, c).unwrap()
    }

    #[test]
    fn presentation() {
        for c in [Cover::Plus, Cover::Minus] {
            let n = 5;
            let t1 = gen(n, 1, c);
            let sq = &t1 * &t1;
            match c {
                Cover::Plus => assert!(sq.is_identity()),
                Cover::Minus => assert_eq!(sq, CoverElt::central(n, c)),
            }
            let t3 = gen(n, 3, c);
            let comm = &(&(&t1 * &t3) * &t1.inv()) * &t3.inv();
            assert_eq!(comm, CoverElt::central(n, c));
            let t2 = gen(n, 2, c);
            let braid = (&t1 * &t2).pow(3);
            match c {
                Cover::Plus => assert_eq!(braid, CoverElt::central(n, c)),
                Cover::Minus => assert!(braid.is_identity()),
            }
        }
    }

    #[test]
    fn inverse_and_shift() {
        let c = Cover::Minus;
        let x = CoverElt::new(vec![2, 0, 4, 1, 3], true, c).unwrap();
        assert!((&x * &x.inv()).is_identity());
        let y = CoverElt::new(vec![1, 2, 0, 4, 3], false, c).unwrap();
        assert_eq!((&x * &y).shift(2), &x.shift(2) * &y.shift(2));
        assert_eq!(gen(4, 2, c).shift(3), gen(7, 5, c));
    }

    #[test]
    fn odd_part_has_odd_order() {
        for c in [Cover::Plus, Cover::Minus] {
            for q in [3usize, 5, 7] {
                let o = odd_cycle(q, c);
                assert_eq!(o.order(), q as u64);
            }
        }
    }

    /// Brute-force conjugacy classes of S̃_n.
    fn brute_classes(n: usize, c: Cover) -> Vec<Vec<CoverElt>> {
        let elts = enumerate_sym(n, c);
        let gens: Vec<CoverElt> = (1..n).map(|j| gen(n, j, c)).collect();
        let mut seen: HashSet<CoverElt> = HashSet::new();
        let mut out = Vec::new();
        for e in &elts {
            if seen.contains(e) {
                continue;
            }
            let mut cls = vec![e.clone()];
            seen.insert(e.clone());
            let mut i = 0;
            while i < cls.len() {
                for g in &gens {
                    let y = cls[i].conj_by(g);
                    if seen.insert(y.clone()) {
                        cls.push(y);
                    }
                }
                i += 1;
            }
            out.push(cls);
        }
        out
    }

    #[test]
    fn splitting_criterion_and_tags_brute_force() {
        for n in 1..=6 {
            for c in [Cover::Plus, Cover::Minus] {
                let brute = brute_classes(n, c);
                let table = sym_classes(n, c);
                assert_eq!(brute.len(), table.len(), "n={n}");
                assert_eq!(table.iter().map(|x| x.size).sum::<u128>(), 2 * factorial(n));
                for cls in &brute {
                    let label = classify_sym(&cls[0]);
                    assert!(cls.iter().all(|x| classify_sym(x) == label), "n={n} {label}");
                    let info = table.iter().find(|i| i.label == label).unwrap();
                    assert_eq!(info.size, cls.len() as u128);
                    assert_eq!(classify_sym(&info.rep), label);
                    if label.tag != SplitTag::Unsplit {
                        assert_eq!(classify_sym(&cls[0].times_z()).tag, label.tag.flip());
                    }
                }
            }
        }
    }

    #[test]
    fn alt_classes_brute_force() {
        for n in 2..=7 {
            for c in [Cover::Plus, Cover::Minus] {
                let elts: Vec<CoverElt> = enumerate_sym(n, c).into_iter().filter(CoverElt::is_even).collect();
                let mut gens: Vec<CoverElt> = (1..n - 1).map(|j| &gen(n, j, c) * &gen(n, j + 1, c)).collect();
                if n >= 4 {
                    gens.push(&gen(n, 1, c) * &gen(n, 3, c));
                }
                let mut seen: HashSet<CoverElt> = HashSet::new();
                let table = alt_classes(n, c);
                assert_eq!(table.iter().map(|x| x.size).sum::<u128>(), factorial(n));
                let mut count = 0;
                for e in &elts {
                    if seen.contains(e) {
                        continue;
                    }
                    count += 1;
                    let mut cls = vec![e.clone()];
                    seen.insert(e.clone());
                    let mut i = 0;
                    while i < cls.len() {
                        for g in &gens {
                            let y = cls[i].conj_by(g);
                            if seen.insert(y.clone()) {
                                cls.push(y);
                            }
                        }
                        i += 1;
                    }
                    let label = classify_alt(&cls[0]).unwrap();
                    assert!(cls.iter().all(|x| classify_alt(x).unwrap() == label), "n={n} {label}");
                    let info = table.iter().find(|i| i.label == label).unwrap();
                    assert_eq!(info.size, cls.len() as u128, "n={n} {label}");
                    assert_eq!(classify_alt(&info.rep).unwrap(), label);
                }
                assert_eq!(count, table.len(), "n={n}");
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let t = sym_classes(6, Cover::Minus);
        let f = |s: &str| t.iter().find(|c| c.label.cycle_type == s.parse().unwrap()).unwrap().clone();
        assert_eq!(f("2,2,1,1").label.tag, SplitTag::Unsplit);
        assert_eq!(f("2,2,1,1").centralizer, 16);
        assert_eq!(f("3,1,1,1").centralizer, 36);
        let t3 = sym_classes(3, Cover::Plus);
        assert_eq!(t3.len(), 6);
        assert_eq!(classify_sym(&CoverElt::identity(4, Cover::Plus)).tag, SplitTag::Plus);
    }

    #[test]
    fn cs_decomposition() {
        let c = Cover::Minus;
        let x = CoverElt::new(vec![1, 2, 0, 4, 3], true, c).unwrap();
        let (xc, xs) = decompose_cs(&x, 3);
        assert_eq!(&xc * &xs, x);
        assert_eq!(&xs * &xc, x);
        assert_eq!(xs.cycle_type(), "3,1,1".parse().unwrap());
        assert_eq!(xs.order(), 3);
        let s = s_beta(&"3".parse().unwrap(), 3, 9, c).unwrap();
        assert_eq!(s.order(), 9);
        let (a, b) = decompose_cs(&s, 3);
        assert!(a.is_identity());
        assert_eq!(b, s);
    }

    #[test]
    fn wreath_small() {
        for c in [Cover::Plus, Cover::Minus] {
            let g = WreathGroup::enumerate(3, 1, c, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(g.order(), 12);
            let total: u128 = g.classes.iter().map(|x| x.info.size).sum();
            assert_eq!(total, 12);
            for cls in &g.classes {
                assert_eq!(g.class_index(&cls.info.rep), g.find_class(&cls.info.label));
            }
            let g2 = WreathGroup::enumerate(3, 2, c, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(g2.order(), 144);
            for cls in &g2.classes {
                // |C(x)|_3 = 3^{l(π_0) + l(π_{p−1})} for t < p.
                let comps = cls.info.label.wtype.components();
                let e = comps[0].len() + comps[2].len();
                let mut cent = cls.info.centralizer;
                let mut v = 0;
                while cent % 3 == 0 {
                    cent /= 3;
                    v += 1;
                }
                assert_eq!(v, e, "{}", cls.info.label);
                assert_eq!(cls.p_regular, comps[0].is_empty());
            }
        }
    }
}
