//! Spin characters of the local subgroups `Ñ_p^t S̃_t ≤ S̃_{pt}`.
//!
//! The group is modelled inside `S̃_{pt}` exactly as in [`crate::covers`]:
//! block `k` consists of the points `kp, …, kp+p−1`, the base group
//! `Ñ_p^t` acts by affine maps inside blocks and the top group is generated
//! by the lifts `ŝ_j` of the offset-preserving swaps of blocks `j−1, j`.
//!
//! Characters are built in three layers:
//!
//! * [`NTilde`] — the group `Ñ_p` with the monomial character `ζ_0`
//!   (induced from the order-`2p` subgroup over `C_p`), its associator `S`,
//!   the halves `ζ̄_0^±` and the linear spin characters `ζ_j^±`;
//! * the extension character `Exten^+_t` of `ζ_0^{⊗t}` and the alternating
//!   halves `Ēxten^±_t` ([`exten_value`]), evaluated on standardized
//!   disjoint-cycle data;
//! * the composite characters `χ^{λ(±)}` of a label `λ ∈ Δ_t`, obtained by
//!   gluing an `Exten ⊗ ξ_{λ_0}` factor with a Clifford–Sym factor on the
//!   subgroup `Ñ_p^t S̃_{t(λ)}` and inducing by class fusion.
//!
//! An independent matrix construction lives in [`oracle`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::clifford::{self, CliffVariant, CliffordElt, CliffordError, Cover};
use crate::covers::{
    classify_alt, classify_sym, conjugator, consecutive_cycles, cycles, primitive_root, ClassInfo, CoverElt, CoverError, WreathClassLabel, WreathGroup, DEFAULT_GROUP_CAP,
};
use crate::cyclo::CycloNum;
use crate::partitions::{remove_q_hooks, wreath_labels, MultiPartition, Partition};
use crate::spin_sym::{xi_alt_value, xi_value, Ambient, SpinCharLabel, SpinError, Variant};

pub mod lemmas;
pub mod oracle;

/// Errors raised by the local character theory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WreathError {
    #[error("label {label} has size {size}, the group has t = {t}")]
    SizeMismatch { label: String, size: usize, t: usize },
    #[error("{0} is not a character label of this group")]
    BadLabel(String),
    #[error("class {0} does not lie in the even subgroup")]
    NotEven(String),
    #[error("malformed cycle data: {0}")]
    Malformed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Spin(#[from] SpinError),
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(g: usize, e: usize, p: usize) -> usize {
    (0..e).fold(1, |x, _| x * g % p)
}

// ---------------------------------------------------------------------------
// The group Ñ_p.
// ---------------------------------------------------------------------------

/// `Ñ_p ≤ S̃_p`, the preimage of the affine group `o ↦ a·o + b` of `Z/p`.
///
/// Every element is written uniquely as `r^k a_0^m z^e` with `a_0` the
/// odd-order lift of `o ↦ o+1` and `r` the canonical lift of
/// `o ↦ g·o` for the smallest primitive root `g`.
#[derive(Debug, Clone)]
pub struct NTilde {
    pub p: usize,
    pub cover: Cover,
    /// The primitive root `g`.
    pub g: usize,
    dlog: Vec<usize>,
    r_pows: Vec<CoverElt>,
    a_pows: Vec<CoverElt>,
    /// Whether `r^{p−1} = z`.
    r_wraps: bool,
    /// `+1` when `U^+` is spanned by the even-indexed basis vectors.
    s_sign: i32,
}

impl NTilde {
    /// Build `Ñ_p` and fix the sign of the associator `S` so that
    /// `ζ̄_0^+(a_0) = (−1 + i^{(p−1)/2}√p)/2`.
    pub fn new(p: usize, cover: Cover) -> Result<Self, WreathError> {
        if !is_odd_prime(p) {
            return Err(CoverError::BadPrime(p).into());
        }
        let g = primitive_root(p);
        let mut dlog = vec![0; p];
        for k in 0..p - 1 {
            dlog[pow_mod(g, k, p)] = k;
        }
        let r = CoverElt::lift((0..p).map(|o| (o * g % p) as u8).collect(), cover)?;
        let a0 = CoverElt::lift((0..p).map(|o| ((o + 1) % p) as u8).collect(), cover)?
            .odd_part()
            .expect("a p-cycle has odd order");
        let r_pows = (0..p - 1).map(|k| r.pow(k as i64)).collect();
        let a_pows = (0..p).map(|m| a0.pow(m as i64)).collect();
        let r_wraps = !r.pow((p - 1) as i64).is_identity();
        let mut nt = NTilde { p, cover, g, dlog, r_pows, a_pows, r_wraps, s_sign: 1 };
        if nt.zeta0_half(&a0, true) != gauss_half(p, 1) {
            nt.s_sign = -1;
        }
        debug_assert_eq!(nt.zeta0_half(&a0, true), gauss_half(p, 1));
        Ok(nt)
    }

    /// The generator `a_0` (odd-order lift of `o ↦ o+1`).
    pub fn a0(&self) -> &CoverElt {
        &self.a_pows[1]
    }

    /// The generator `r` (canonical lift of `o ↦ g·o`).
    pub fn r(&self) -> &CoverElt {
        &self.r_pows[1 % (self.p - 1)]
    }

    /// Whether `ρ(S)` has `+1`-eigenspace spanned by the even basis vectors.
    pub fn s_sign(&self) -> i32 {
        self.s_sign
    }

    /// All `2p(p−1)` elements, as `r^k a_0^m z^e` in lexicographic order.
    pub fn elements(&self) -> Vec<CoverElt> {
        let mut out = Vec::with_capacity(2 * self.p * (self.p - 1));
        for rk in &self.r_pows {
            for am in &self.a_pows {
                let x = rk * am;
                out.push(x.clone());
                out.push(x.times_z());
            }
        }
        out
    }

    /// The normal form `(k, m, e)` with `h = r^k a_0^m z^e`.
    pub fn decompose(&self, h: &CoverElt) -> Result<(usize, usize, bool), WreathError> {
        let p = self.p;
        let perm = h.perm();
        if perm.len() != p || h.cover() != self.cover {
            return Err(WreathError::Malformed(format!("{h} is not an element of Ñ_{p}")));
        }
        let b = perm[0] as usize;
        let a = (perm[1] as usize + p - b) % p;
        if a == 0 || (0..p).any(|o| perm[o] as usize != (a * o + b) % p) {
            return Err(WreathError::Malformed(format!("{h} is not affine")));
        }
        let k = self.dlog[a];
        let a_inv = pow_mod(a, p - 2, p);
        let m = b * a_inv % p;
        let cand = &self.r_pows[k] * &self.a_pows[m];
        debug_assert_eq!(cand.perm(), perm);
        Ok((k, m, cand.z_bit() != h.z_bit()))
    }

    /// The faithful linear character `a_0^m z^e ↦ ω^m (−1)^e` of the
    /// order-`2p` normal subgroup.
    fn psi(&self, m: usize, e: bool) -> CycloNum {
        let w = CycloNum::root_of_unity(self.p as u32, m as i64);
        if e {
            -w
        } else {
            w
        }
    }

    /// The monomial matrix of `h` on the induced module `ζ_0`: column `k`
    /// (basis vector `r^k ⊗ 1`) is sent to `coeff · e_{k'}`; returns
    /// `(k', coeff)` for each `k`.
    pub fn monomial(&self, h: &CoverElt) -> Result<Vec<(usize, CycloNum)>, WreathError> {
        (0..self.p - 1)
            .map(|k| {
                let y = h * &self.r_pows[k];
                let (k2, m, e) = self.decompose(&y)?;
                Ok((k2, self.psi(m, e)))
            })
            .collect()
    }

    /// `ζ_0(h)`.
    pub fn zeta0(&self, h: &CoverElt) -> Result<CycloNum, WreathError> {
        Ok(self
            .monomial(h)?
            .into_iter()
            .enumerate()
            .filter(|(k, (k2, _))| k == k2)
            .map(|(_, (_, c))| c)
            .sum())
    }

    /// Sign of the associator `S` on basis vector `k`.
    pub fn s_entry(&self, k: usize) -> i32 {
        if k.is_multiple_of(2) {
            self.s_sign
        } else {
            -self.s_sign
        }
    }

    fn zeta0_half(&self, h: &CoverElt, plus: bool) -> CycloNum {
        let want = if plus { 1 } else { -1 };
        self.monomial(h)
            .expect("element of Ñ_p")
            .into_iter()
            .enumerate()
            .filter(|(k, (k2, _))| k == k2 && self.s_entry(*k) == want)
            .map(|(_, (_, c))| c)
            .sum()
    }

    /// `ζ̄_0^+(h)` (`plus`) or `ζ̄_0^−(h)` for an even `h`.
    pub fn zeta0_bar(&self, h: &CoverElt, plus: bool) -> Result<CycloNum, WreathError> {
        if !h.is_even() {
            return Err(WreathError::NotEven(h.to_string()));
        }
        self.decompose(h)?;
        Ok(self.zeta0_half(h, plus))
    }

    /// `D(h) = ζ̄_0^+(h) − ζ̄_0^−(h) = Tr(S ρ(h))`, extended by the same
    /// trace formula to odd `h` (where it vanishes).
    pub fn zeta0_diff(&self, h: &CoverElt) -> Result<CycloNum, WreathError> {
        Ok(self
            .monomial(h)?
            .into_iter()
            .enumerate()
            .filter(|(k, (k2, _))| k == k2)
            .map(|(k, (_, c))| c.scale_int(self.s_entry(k) as i64))
            .sum())
    }

    /// The generator `μ` of the values of `ζ_j^±` on `r`.
    fn mu(&self, j: usize, variant: Variant) -> CycloNum {
        let p = self.p as u32;
        let base = if self.r_wraps {
            CycloNum::root_of_unity(2 * (p - 1), 1)
        } else {
            CycloNum::one()
        };
        let v = &base * &CycloNum::root_of_unity(p - 1, j as i64 - 1);
        if variant == Variant::Minus {
            -v
        } else {
            v
        }
    }

    /// The linear spin character `ζ_j^±(h)`, `1 ≤ j ≤ (p−1)/2`.
    pub fn linear(&self, j: usize, variant: Variant, h: &CoverElt) -> Result<CycloNum, WreathError> {
        if j == 0 || j > (self.p - 1) / 2 || variant == Variant::SelfAssoc {
            return Err(WreathError::BadLabel(format!("ζ_{j}{variant}")));
        }
        let (k, _, e) = self.decompose(h)?;
        let v = self.mu(j, variant).pow(k as u32);
        Ok(if e { -v } else { v })
    }
}

/// `(−1 + s·i^{(p−1)/2}√p)/2`, the two values of `ζ̄_0^±` at `a_0`.
pub fn gauss_half(p: usize, s: i64) -> CycloNum {
    let root = CycloNum::i_pow(((p - 1) / 2) as i64) * CycloNum::sqrt_odd(p as i64).expect("odd p");
    (CycloNum::from_int(-1) + root.scale_int(s)).div_int(2)
}

// ---------------------------------------------------------------------------
// Extension characters on standardized cycle data.
// ---------------------------------------------------------------------------

/// Which extension character to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtenKind {
    /// `Exten^+_t` on `Ñ_p^t S̃_t`.
    Plus,
    /// `Ēxten^+_t` on the even subgroup.
    BarPlus,
    /// `Ēxten^−_t` on the even subgroup.
    BarMinus,
}

/// One block cycle of a standardized element: its length and the cycle
/// product, transported to `Ñ_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCycle {
    pub len: usize,
    pub product: CoverElt,
}

/// `Exten` evaluated on standard disjoint-cycle data `(x_l; cycle l)`.
///
/// Any odd cycle product gives 0. When the top permutation is even the value
/// is `Π_{odd length} ζ_0(x_l) · Π_{even length} D(x_l)`, otherwise
/// `Π_l D(x_l)`. The alternating halves are `(A ± Π_l D(x_l))/2` with `A`
/// the even-permutation formula.
pub fn exten_value(nt: &NTilde, kind: ExtenKind, data: &[BlockCycle]) -> Result<CycloNum, WreathError> {
    if data.iter().any(|c| c.len == 0) {
        return Err(WreathError::Malformed("empty cycle".into()));
    }
    let even_top = data.iter().map(|c| c.len - 1).sum::<usize>() % 2 == 0;
    if kind != ExtenKind::Plus && !even_top {
        return Err(WreathError::Malformed("odd top permutation in the even subgroup".into()));
    }
    if data.iter().any(|c| !c.product.is_even()) {
        return Ok(CycloNum::zero());
    }
    let mut a = CycloNum::one();
    let mut b = CycloNum::one();
    for c in data {
        let d = nt.zeta0_diff(&c.product)?;
        if even_top && c.len % 2 == 1 {
            a *= nt.zeta0(&c.product)?;
        } else {
            a *= &d;
        }
        b *= d;
    }
    Ok(match kind {
        ExtenKind::Plus => a,
        ExtenKind::BarPlus => (a + b).div_int(2),
        ExtenKind::BarMinus => (a - b).div_int(2),
    })
}

/// The result of conjugating an element of `Ñ_p^t S̃_t` into standard form.
#[derive(Debug, Clone)]
pub struct Standardized {
    pub cycles: Vec<BlockCycle>,
    /// The element is `z` times the standard product.
    pub z: bool,
    /// The conjugating element was odd (swaps `Ēxten^+` and `Ēxten^−`).
    pub flipped: bool,
}

// ---------------------------------------------------------------------------
// Labels and tables.
// ---------------------------------------------------------------------------

/// A spin character label of `Ñ_p^t S̃_t` or of its even subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathCharLabel {
    pub lambda: MultiPartition,
    pub variant: Variant,
    pub ambient: Ambient,
}

impl fmt::Display for WreathCharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = if self.ambient == Ambient::Alt { "bar " } else { "" };
        write!(f, "{bar}chi^({}){}", self.lambda, self.variant)
    }
}

/// Which half of a split even class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AltPart {
    /// The class does not split in the even subgroup.
    Whole,
    /// The half containing the standard representative.
    First,
    /// The other half.
    Second,
}

/// A class label of `Ñ_p^t S̃_t ∩ Ã_{pt}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltWreathClassLabel {
    pub base: WreathClassLabel,
    pub part: AltPart,
}

impl fmt::Display for AltWreathClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.part {
            AltPart::Whole => "",
            AltPart::First => "a",
            AltPart::Second => "b",
        };
        write!(f, "{}{s}", self.base)
    }
}

/// A character table of a local group (rows: characters, columns: classes).
#[derive(Debug, Clone)]
pub struct LocalTable<L> {
    pub chars: Vec<WreathCharLabel>,
    pub classes: Vec<ClassInfo<L>>,
    pub values: Vec<Vec<CycloNum>>,
    pub order: u128,
}

impl<L> LocalTable<L> {
    /// `⟨χ_i, χ_j⟩` over the whole group.
    pub fn inner_product(&self, i: usize, j: usize) -> CycloNum {
        let mut acc = CycloNum::zero();
        for (c, cl) in self.classes.iter().enumerate() {
            let term = &self.values[i][c] * &self.values[j][c].conj();
            acc += term.scale_int(cl.size as i64);
        }
        acc.div_int(self.order as i64)
    }

    /// Row index of a character label.
    pub fn row(&self, chi: &WreathCharLabel) -> Option<usize> {
        self.chars.iter().position(|c| c == chi)
    }
}

/// The character labels of `Ñ_p^t S̃_t` in table order.
pub fn sym_wreath_labels(p: usize, t: usize) -> Vec<WreathCharLabel> {
    let mut out = Vec::new();
    for lambda in wreath_labels(t, p) {
        let variants: &[Variant] = if lambda.sigma() == 1 {
            &[Variant::SelfAssoc]
        } else {
            &[Variant::Plus, Variant::Minus]
        };
        for &variant in variants {
            out.push(WreathCharLabel { lambda: lambda.clone(), variant, ambient: Ambient::Sym });
        }
    }
    out
}

/// The character labels of `Ñ_p^t S̃_t ∩ Ã_{pt}` in table order.
pub fn alt_wreath_labels(p: usize, t: usize) -> Vec<WreathCharLabel> {
    let mut out = Vec::new();
    for lambda in wreath_labels(t, p) {
        let variants: &[Variant] = if lambda.sigma() == 1 {
            &[Variant::Plus, Variant::Minus]
        } else {
            &[Variant::SelfAssoc]
        };
        for &variant in variants {
            out.push(WreathCharLabel { lambda: lambda.clone(), variant, ambient: Ambient::Alt });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Ordinary characters of symmetric groups.
// ---------------------------------------------------------------------------

/// The ordinary character `χ^λ(π)` of `S_n` by the Murnaghan–Nakayama rule.
pub fn sym_char(lambda: &Partition, pi: &Partition) -> i64 {
    if lambda.size() != pi.size() {
        return 0;
    }
    let Some((&q, rest)) = pi.parts().split_first() else {
        return 1;
    };
    let rest = Partition::new(rest.to_vec());
    remove_q_hooks(lambda, q)
        .into_iter()
        .map(|(mu, leg)| if leg % 2 == 0 { 1 } else { -1 } * sym_char(&mu, &rest))
        .sum()
}

// ---------------------------------------------------------------------------
// The enumerated local group.
// ---------------------------------------------------------------------------

/// A class of the even subgroup `Ñ_p^t S̃_t ∩ Ã_{pt}`.
#[derive(Debug, Clone)]
pub struct AltWreathClass {
    pub info: ClassInfo<AltWreathClassLabel>,
    pub p_regular: bool,
    /// The class of `Ñ_p^t S̃_t` containing it.
    pub parent: usize,
    pub members: Vec<usize>,
}

/// Conjugacy data of a subgroup `Ñ_p^t S̃_{t(λ)}` used for induction.
#[derive(Debug)]
struct Subgroup {
    order: usize,
    /// `(representative index, size, class of the big group)`.
    classes: Vec<(usize, usize, usize)>,
    /// Same for the even subgroup, fused into the even classes of the big group.
    alt_classes: Vec<(usize, usize, usize)>,
}

/// Values of a composite character on `Ñ_p^t S̃_{t(λ)}`: `χ^{(+)}(h)` and,
/// for self-associate labels and even `h`, the difference
/// `χ̄^+(h) − χ̄^−(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalValue {
    pub chi: CycloNum,
    pub diff: CycloNum,
}

/// The enumerated group `G' = Ñ_p^t S̃_t` with all data needed to evaluate
/// its spin characters.
#[derive(Debug)]
pub struct LocalGroup {
    pub p: usize,
    pub t: usize,
    pub cover: Cover,
    pub group: WreathGroup,
    pub ntilde: NTilde,
    /// The cover type of the top group: `ŝ_j² = 1` gives `Plus`.
    pub t_cover: Cover,
    swaps: Vec<CoverElt>,
    top_lifts: HashMap<Vec<u8>, CoverElt>,
    transports: Vec<CoverElt>,
    pub alt_classes: Vec<AltWreathClass>,
    alt_class_of: Vec<usize>,
    subgroups: Mutex<HashMap<Vec<usize>, Arc<Subgroup>>>,
}

/// Offset-preserving swap of blocks `b` and `b+1` in `S_{pt}`.
fn block_swap(p: usize, t: usize, b: usize) -> Vec<u8> {
    let mut perm: Vec<u8> = (0..(p * t) as u8).collect();
    for o in 0..p {
        perm[b * p + o] = ((b + 1) * p + o) as u8;
        perm[(b + 1) * p + o] = (b * p + o) as u8;
    }
    perm
}

/// The cover type of the top group `S̃_t ≤ S̃_{pt}`.
pub fn top_cover(p: usize, cover: Cover) -> Cover {
    let s = CoverElt::lift(block_swap(p, 2, 0), cover).expect("valid");
    if (&s * &s).is_identity() {
        Cover::Plus
    } else {
        Cover::Minus
    }
}

/// All permutations of `n` points.
fn all_perms(n: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![(0..n as u8).collect()];
    let mut i = 0;
    let mut seen: std::collections::HashSet<Vec<u8>> = out.iter().cloned().collect();
    while i < out.len() {
        for j in 0..n.saturating_sub(1) {
            let mut q = out[i].clone();
            q.swap(j, j + 1);
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
        i += 1;
    }
    out
}

/// Orbits of `members` under conjugation by `gens`.
fn conj_orbits(group: &WreathGroup, members: &[usize], gens: &[CoverElt]) -> Vec<Vec<usize>> {
    let gen_inv: Vec<CoverElt> = gens.iter().map(CoverElt::inv).collect();
    let mut seen: HashMap<usize, ()> = HashMap::new();
    let mut out = Vec::new();
    for &s in members {
        if seen.contains_key(&s) {
            continue;
        }
        seen.insert(s, ());
        let mut orbit = vec![s];
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            for (g, gi) in gens.iter().zip(&gen_inv) {
                let y = &(g * &group.elements[i]) * gi;
                let j = group.index_of(&y).expect("conjugate stays in the group");
                if seen.insert(j, ()).is_none() {
                    orbit.push(j);
                    q.push_back(j);
                }
            }
        }
        out.push(orbit);
    }
    out
}

/// Generators of the even part of the subgroup generated by `gens`
/// (Schreier generators for the transversal `{1, o}`).
fn even_generators(gens: &[CoverElt]) -> Vec<CoverElt> {
    let o = gens.iter().find(|g| !g.is_even()).expect("an odd generator").clone();
    let oi = o.inv();
    let mut out = Vec::new();
    for g in gens {
        if g.is_even() {
            out.push(g.clone());
            out.push(&(&o * g) * &oi);
        } else {
            out.push(g * &oi);
            out.push(&o * g);
        }
    }
    out
}

impl LocalGroup {
    /// Enumerate `Ñ_p^t S̃_t` (order capped by [`DEFAULT_GROUP_CAP`]).
    pub fn new(p: usize, t: usize, cover: Cover) -> Result<Self, WreathError> {
        Self::with_cap(p, t, cover, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(p: usize, t: usize, cover: Cover, cap: u128) -> Result<Self, WreathError> {
        if t == 0 {
            return Err(WreathError::Unsupported("t = 0".into()));
        }
        let group = WreathGroup::enumerate(p, t, cover, cap)?;
        let ntilde = NTilde::new(p, cover)?;
        let t_cover = top_cover(p, cover);
        let swaps: Vec<CoverElt> = (0..t.saturating_sub(1))
            .map(|b| CoverElt::lift(block_swap(p, t, b), cover).expect("valid"))
            .collect();
        let id = CoverElt::identity(p * t, cover);
        let mut top_lifts = HashMap::new();
        for sigma in all_perms(t) {
            let mut acc = id.clone();
            for j in clifford::canonical_word(&sigma) {
                acc = &acc * &swaps[j - 1];
            }
            top_lifts.insert(sigma, acc);
        }
        let mut lg = LocalGroup {
            p,
            t,
            cover,
            group,
            ntilde,
            t_cover,
            swaps,
            top_lifts,
            transports: Vec::new(),
            alt_classes: Vec::new(),
            alt_class_of: Vec::new(),
            subgroups: Mutex::new(HashMap::new()),
        };
        lg.transports = (0..t)
            .map(|k| {
                let mut sigma: Vec<u8> = (0..t as u8).collect();
                sigma[0] = k as u8;
                for i in 1..=k {
                    sigma[i] = (i - 1) as u8;
                }
                lg.top_lift(&sigma).clone()
            })
            .collect();
        lg.build_alt_classes();
        Ok(lg)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The lift `ŝ_σ` of a block permutation `σ ∈ S_t`.
    pub fn top_lift(&self, sigma: &[u8]) -> &CoverElt {
        &self.top_lifts[sigma]
    }

    /// The generator `ŝ_j` (1-based) of the top group.
    pub fn swap(&self, j: usize) -> &CoverElt {
        &self.swaps[j - 1]
    }

    /// The block permutation `σ ∈ S_t` of an element.
    pub fn block_perm(&self, x: &CoverElt) -> Vec<u8> {
        (0..self.t).map(|k| x.perm()[k * self.p] / self.p as u8).collect()
    }

    /// `x = base · ŝ_σ` with `base ∈ Ñ_p^t`.
    pub fn split(&self, x: &CoverElt) -> (CoverElt, Vec<u8>) {
        let sigma = self.block_perm(x);
        let base = x * &self.top_lift(&sigma).inv();
        (base, sigma)
    }

    /// The transport element `u_k` (block `0` to block `k`).
    pub fn transport(&self, k: usize) -> &CoverElt {
        &self.transports[k]
    }

    /// `u_k⁻¹ x u_k` restricted to the first block, for `x` supported on block `k`.
    pub fn to_ntilde(&self, x: &CoverElt, k: usize) -> CoverElt {
        let u = &self.transports[k];
        let y = &(&u.inv() * x) * u;
        let perm = y.perm()[..self.p].to_vec();
        debug_assert!(y.perm()[self.p..].iter().enumerate().all(|(i, &v)| v as usize == i + self.p));
        CoverElt::new(perm, y.z_bit(), self.cover).expect("valid")
    }

    /// `u_k x u_k⁻¹` for `x ∈ Ñ_p`, an element supported on block `k`.
    pub fn from_ntilde(&self, x: &CoverElt, k: usize) -> CoverElt {
        let u = &self.transports[k];
        let y = x.embed(self.p * (self.t - 1));
        &(u * &y) * &u.inv()
    }

    /// The block components of a base element: `x = z^e · Π_k lift(x_k)`
    /// (increasing `k`), returned as `(e, [lift(x_k)])`.
    pub fn factors(&self, x: &CoverElt) -> (bool, Vec<CoverElt>) {
        let p = self.p;
        let id: Vec<u8> = (0..(p * self.t) as u8).collect();
        let mut comps = Vec::with_capacity(self.t);
        let mut prod = CoverElt::identity(p * self.t, self.cover);
        for k in 0..self.t {
            let mut perm = id.clone();
            perm[k * p..(k + 1) * p].copy_from_slice(&x.perm()[k * p..(k + 1) * p]);
            let c = CoverElt::lift(perm, self.cover).expect("valid");
            prod = &prod * &c;
            comps.push(c);
        }
        debug_assert_eq!(prod.perm(), x.perm());
        (prod.z_bit() != x.z_bit(), comps)
    }

    /// Conjugate `g ∈ Ñ_p^t S̃_t`, with block permutation and base supported
    /// on the blocks `< n`, into a product of standard block cycles on
    /// consecutive blocks, longest first.
    pub fn standardize(&self, g: &CoverElt, n: usize) -> Result<Standardized, WreathError> {
        let t = self.t;
        let sigma = self.block_perm(g);
        if sigma[n..].iter().enumerate().any(|(i, &v)| v as usize != n + i) {
            return Err(WreathError::Malformed("block permutation moves blocks beyond n".into()));
        }
        let sig_n: Vec<u8> = sigma[..n].to_vec();
        let mut lengths: Vec<usize> = cycles(&sig_n).iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        let mut std = consecutive_cycles(n, &lengths);
        let mut tau = conjugator(&sig_n, &std).expect("same cycle type");
        std.extend(n as u8..t as u8);
        tau.extend(n as u8..t as u8);
        // `Exten` is a trace on pairs `(x, σ)` with the top group acting
        // through the honest permutation action, so conjugating by `ŝ_τ`
        // contributes the cocycle between `ŝ_τ ŝ_σ ŝ_τ⁻¹` and `ŝ_{τστ⁻¹}`.
        let tau_hat = self.top_lift(&tau).clone();
        let std_hat = self.top_lift(&std).clone();
        let moved = self.top_lift(&sigma).conj_by(&tau_hat);
        let cocycle = moved.z_bit() != std_hat.z_bit();
        let mut flipped = false;
        let mut h = g.conj_by(&tau_hat);
        let std_inv = std_hat.inv();
        let mut start = 0;
        let mut starts = Vec::new();
        for &m in &lengths {
            starts.push(start);
            for k in start + 1..start + m {
                let base = &h * &std_inv;
                let p = self.p;
                let comp: Vec<u8> = base.perm()[k * p..(k + 1) * p].to_vec();
                if comp.iter().enumerate().all(|(o, &v)| v as usize == k * p + o) {
                    continue;
                }
                let mut perm: Vec<u8> = (0..(p * t) as u8).collect();
                let inv_local: Vec<u8> = {
                    let mut v = vec![0u8; p];
                    for (o, &img) in comp.iter().enumerate() {
                        v[img as usize - k * p] = (k * p + o) as u8;
                    }
                    v
                };
                perm[k * p..(k + 1) * p].copy_from_slice(&inv_local);
                let y = CoverElt::lift(perm, self.cover)?;
                flipped ^= !y.is_even();
                h = h.conj_by(&y);
            }
            start += m;
        }
        let base = &h * &std_inv;
        let mut prod = CoverElt::identity(self.p * t, self.cover);
        let mut out = Vec::new();
        for (&f, &m) in starts.iter().zip(&lengths) {
            let mut perm: Vec<u8> = (0..(self.p * t) as u8).collect();
            perm[f * self.p..(f + 1) * self.p].copy_from_slice(&base.perm()[f * self.p..(f + 1) * self.p]);
            let c = CoverElt::lift(perm, self.cover)?;
            prod = &prod * &c;
            out.push(BlockCycle { len: m, product: self.to_ntilde(&c, f) });
        }
        if prod.perm() != base.perm() {
            return Err(WreathError::Malformed("standardization did not reach the standard form".into()));
        }
        Ok(Standardized { cycles: out, z: cocycle ^ (prod.z_bit() != base.z_bit()), flipped })
    }

    /// `Exten` of an element supported on the blocks `< n`, viewed in
    /// `Ñ_p^n S̃_n`.
    pub fn exten(&self, kind: ExtenKind, g: &CoverElt, n: usize) -> Result<CycloNum, WreathError> {
        let st = self.standardize(g, n)?;
        let kind = match (kind, st.flipped) {
            (ExtenKind::BarPlus, true) => ExtenKind::BarMinus,
            (ExtenKind::BarMinus, true) => ExtenKind::BarPlus,
            (k, _) => k,
        };
        let v = exten_value(&self.ntilde, kind, &st.cycles)?;
        Ok(if st.z { -v } else { v })
    }

    /// `Ēxten^+ − Ēxten^−` at an even element supported on the blocks `< n`.
    fn exten_diff(&self, g: &CoverElt, n: usize) -> Result<CycloNum, WreathError> {
        let st = self.standardize(g, n)?;
        if st.cycles.iter().any(|c| !c.product.is_even()) {
            return Ok(CycloNum::zero());
        }
        let mut b = CycloNum::one();
        for c in &st.cycles {
            b *= self.ntilde.zeta0_diff(&c.product)?;
        }
        Ok(if st.z ^ st.flipped { -b } else { b })
    }

    fn build_alt_classes(&mut self) {
        let kgens = even_generators(&self.group.generators);
        let mut alt_class_of = vec![usize::MAX; self.group.order()];
        let mut out = Vec::new();
        let half = self.group.order() as u128 / 2;
        for (cid, cl) in self.group.classes.iter().enumerate() {
            if !cl.info.rep.is_even() {
                continue;
            }
            let rep_idx = self.group.index_of(&cl.info.rep).expect("rep in group");
            let mut orbits = conj_orbits(&self.group, &[rep_idx], &kgens);
            let first = orbits.pop().expect("orbit");
            if first.len() == cl.members.len() {
                out.push((AltPart::Whole, first, cl.info.rep.clone(), cid));
            } else {
                let in_first: std::collections::HashSet<usize> = first.iter().copied().collect();
                let second: Vec<usize> = cl.members.iter().copied().filter(|m| !in_first.contains(m)).collect();
                let o = self.group.generators.iter().find(|g| !g.is_even()).expect("odd generator");
                let rep2 = cl.info.rep.conj_by(o);
                out.push((AltPart::First, first, cl.info.rep.clone(), cid));
                out.push((AltPart::Second, second, rep2, cid));
            }
        }
        for (aid, (part, members, rep, cid)) in out.into_iter().enumerate() {
            for &m in &members {
                alt_class_of[m] = aid;
            }
            let size = members.len() as u128;
            let base = self.group.classes[cid].info.label.clone();
            let p_regular = self.group.classes[cid].p_regular;
            self.alt_classes.push(AltWreathClass {
                info: ClassInfo { label: AltWreathClassLabel { base, part }, size, centralizer: half / size, rep },
                p_regular,
                parent: cid,
                members,
            });
        }
        self.alt_class_of = alt_class_of;
    }

    /// Number of classes `C ≠ zC` of `G'` (`alt = false`) or of its even
    /// subgroup, counted once per pair: the number of spin characters.
    pub fn spin_class_count(&self, alt: bool) -> usize {
        let twisted = |rep: &CoverElt, own: usize| {
            let zr = rep.times_z();
            let other = if alt { self.alt_class_index(&zr) } else { self.group.class_index(&zr) };
            other != Some(own)
        };
        let n = if alt {
            self.alt_classes.iter().enumerate().filter(|(i, c)| twisted(&c.info.rep, *i)).count()
        } else {
            self.group.classes.iter().enumerate().filter(|(i, c)| twisted(&c.info.rep, *i)).count()
        };
        n / 2
    }

    /// Index of the even-subgroup class of an even element.
    pub fn alt_class_index(&self, x: &CoverElt) -> Option<usize> {
        let i = self.group.index_of(x)?;
        let a = self.alt_class_of[i];
        (a != usize::MAX).then_some(a)
    }

    /// Class index of a label of the even subgroup.
    pub fn find_alt_class(&self, label: &AltWreathClassLabel) -> Option<usize> {
        self.alt_classes.iter().position(|c| c.info.label == *label)
    }

    /// Conjugacy data of `Ñ_p^t S̃_{sizes}` (segments of consecutive blocks).
    fn subgroup(&self, sizes: &[usize]) -> Arc<Subgroup> {
        if let Some(s) = self.subgroups.lock().expect("cache").get(sizes) {
            return Arc::clone(s);
        }
        let t = self.t;
        let mut seg = vec![0usize; t];
        let mut start = 0;
        for (j, &s) in sizes.iter().enumerate() {
            for b in start..start + s {
                seg[b] = j;
            }
            start += s;
        }
        let members: Vec<usize> = (0..self.group.order())
            .filter(|&i| {
                let sigma = self.block_perm(&self.group.elements[i]);
                (0..t).all(|b| seg[sigma[b] as usize] == seg[b])
            })
            .collect();
        let mut gens: Vec<CoverElt> = self.group.generators[..2 * t].to_vec();
        for b in 0..t.saturating_sub(1) {
            if seg[b] == seg[b + 1] {
                gens.push(self.swaps[b].clone());
            }
        }
        gens.push(CoverElt::central(self.p * t, self.cover));
        let classes = conj_orbits(&self.group, &members, &gens)
            .into_iter()
            .map(|o| (o[0], o.len(), self.group.class_of_index(o[0])))
            .collect();
        let even: Vec<usize> = members.iter().copied().filter(|&i| self.group.elements[i].is_even()).collect();
        let kgens = even_generators(&gens);
        let alt_classes = conj_orbits(&self.group, &even, &kgens)
            .into_iter()
            .map(|o| (o[0], o.len(), self.alt_class_of[o[0]]))
            .collect();
        let sub = Arc::new(Subgroup { order: members.len(), classes, alt_classes });
        self.subgroups.lock().expect("cache").insert(sizes.to_vec(), Arc::clone(&sub));
        sub
    }

    fn check_label(&self, lambda: &MultiPartition) -> Result<(), WreathError> {
        let comps = lambda.components();
        if comps.len() != (self.p - 1) / 2 + 1 || !comps[0].is_strict() {
            return Err(WreathError::BadLabel(lambda.to_string()));
        }
        if lambda.size() != self.t {
            return Err(WreathError::SizeMismatch { label: lambda.to_string(), size: lambda.size(), t: self.t });
        }
        Ok(())
    }

    /// The composite character of `λ` on `Ñ_p^t S̃_{t(λ)}` at `h`: the value
    /// of `χ_λ` (or `χ_λ^+`) and, for self-associate labels, the difference
    /// of the two halves on even `h`.
    pub fn local_value(&self, lambda: &MultiPartition, h: &CoverElt) -> Result<LocalValue, WreathError> {
        self.check_label(lambda)?;
        let t = self.t;
        let comps = lambda.components();
        let t0 = comps[0].size();
        let m = t - t0;
        let (x, sigma) = self.split(h);
        // Segment check.
        let mut seg = vec![0usize; t];
        let mut start = 0;
        for (j, c) in comps.iter().enumerate() {
            for b in start..start + c.size() {
                seg[b] = j;
            }
            start += c.size();
        }
        if (0..t).any(|b| seg[sigma[b] as usize] != seg[b]) {
            return Err(WreathError::Malformed(format!("{h} does not preserve the segments of {lambda}")));
        }
        // s1: the part on the first t0 blocks.
        let x0 = if t0 == 0 {
            CoverElt::identity(self.p * t, self.cover)
        } else {
            let (e, fac) = self.factors(&x);
            let x0 = fac[..t0].iter().fold(CoverElt::identity(self.p * t, self.cover), |acc, c| &acc * c);
            if e {
                x0.times_z()
            } else {
                x0
            }
        };
        let mut sigma0: Vec<u8> = (0..t as u8).collect();
        sigma0[..t0].copy_from_slice(&sigma[..t0]);
        let s1 = &x0 * self.top_lift(&sigma0);
        let s2 = &s1.inv() * h;
        let sa1 = t0 == 0 || comps[0].sigma() == 1;
        let sa2 = m.is_multiple_of(2);
        let one = CycloNum::one;

        let (chi1, d1) = if t0 == 0 {
            (one(), one())
        } else {
            let e_plus = self.exten(ExtenKind::Plus, &s1, t0)?;
            let s_elt = CoverElt::lift(sigma[..t0].to_vec(), self.t_cover)?;
            let label0 = SpinCharLabel {
                lambda: comps[0].clone(),
                variant: if comps[0].sigma() == 1 { Variant::SelfAssoc } else { Variant::Plus },
                ambient: Ambient::Sym,
            };
            let xi = xi_value(&label0, &classify_sym(&s_elt), self.t_cover)?;
            let d1 = if sa1 && x0.is_even() && s_elt.is_even() {
                let ed = self.exten_diff(&s1, t0)?;
                let xd = if t0 == 1 {
                    one()
                } else {
                    let cls = classify_alt(&s_elt)?;
                    let lab = |v| SpinCharLabel { lambda: comps[0].clone(), variant: v, ambient: Ambient::Alt };
                    xi_alt_value(&lab(Variant::Plus), &cls)? - xi_alt_value(&lab(Variant::Minus), &cls)?
                };
                ed * xd
            } else {
                CycloNum::zero()
            };
            (e_plus * xi, d1)
        };

        let (chi2, d2) = if m == 0 {
            (one(), one())
        } else {
            let (x2, sig2) = self.split(&s2);
            let (e, fac) = self.factors(&x2);
            let mut cl = CliffordElt::one(m);
            if e {
                cl = cl.scale(&CycloNum::from_int(-1));
            }
            let mut block_seg = 0;
            let mut seg_start = t0;
            for (k, comp) in fac.iter().enumerate().skip(t0) {
                while k >= seg_start + comps[block_seg + 1].size() {
                    seg_start += comps[block_seg + 1].size();
                    block_seg += 1;
                }
                let j = block_seg + 1;
                let xk = self.to_ntilde(comp, k);
                let mut f = CliffordElt::scalar(m, self.ntilde.linear(j, Variant::Plus, &xk)?);
                if !xk.is_even() {
                    f = f.cmul(&CliffordElt::generator(m, k - t0 + 1)?)?;
                }
                cl = cl.cmul(&f)?;
            }
            let shifted: Vec<u8> = sig2[t0..].iter().map(|&v| v - t0 as u8).collect();
            cl = cl.cmul(&clifford::canonical_lift(self.t_cover, &shifted)?)?;
            let mut sym = 1i64;
            let mut off = 0;
            for c in &comps[1..] {
                let n = c.size();
                let part: Vec<u8> = shifted[off..off + n].iter().map(|&v| v - off as u8).collect();
                sym *= sym_char(c, &crate::covers::cycle_type(&part));
                off += n;
            }
            let symv = CycloNum::from_int(sym);
            let full = if m.is_multiple_of(2) { CliffVariant::Full } else { CliffVariant::FullPlus };
            let chi2 = clifford::cliff_char(full, &cl)? * &symv;
            let d2 = if sa2 && s2.is_even() {
                (clifford::cliff_char(CliffVariant::EvenPlus, &cl)? - clifford::cliff_char(CliffVariant::EvenMinus, &cl)?)
                    * &symv
            } else {
                CycloNum::zero()
            };
            (chi2, d2)
        };

        let odd1 = !s1.is_even();
        let odd2 = !s2.is_even();
        let zero = CycloNum::zero;
        Ok(match (sa1, sa2) {
            (true, true) => LocalValue {
                chi: &chi1 * &chi2,
                diff: if !odd1 && !odd2 { d1 * d2 } else { zero() },
            },
            (true, false) => LocalValue {
                chi: if odd1 {
                    zero()
                } else if !odd2 {
                    chi1 * chi2
                } else {
                    d1 * chi2
                },
                diff: zero(),
            },
            (false, true) => LocalValue {
                chi: if odd2 {
                    zero()
                } else if !odd1 {
                    chi1 * chi2
                } else {
                    chi1 * d2
                },
                diff: zero(),
            },
            (false, false) => {
                let prod = (&chi1 * &chi2).scale_int(2);
                LocalValue {
                    chi: if !odd1 && !odd2 { prod.clone() } else { zero() },
                    diff: if odd1 && odd2 { CycloNum::i() * prod } else { zero() },
                }
            }
        })
    }

    /// The row of `χ^λ` (self-associate) or `χ^{λ+}` over the classes of `G'`.
    pub fn sym_row(&self, lambda: &MultiPartition) -> Result<Vec<CycloNum>, WreathError> {
        self.check_label(lambda)?;
        let sub = self.subgroup(&lambda.sizes());
        let mut acc = vec![CycloNum::zero(); self.group.classes.len()];
        for &(rep, size, fuse) in &sub.classes {
            let v = self.local_value(lambda, &self.group.elements[rep])?.chi;
            acc[fuse] += v.scale_int(size as i64);
        }
        let g = self.group.order() as i64;
        Ok(acc
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.scale_int(g).div_int(self.group.classes[c].info.size as i64 * sub.order as i64))
            .collect())
    }

    /// The rows `(χ̄^{λ+}, χ̄^{λ−})` (self-associate `λ`) or `(χ̄^λ, χ̄^λ)`
    /// over the classes of the even subgroup.
    pub fn alt_rows(&self, lambda: &MultiPartition) -> Result<(Vec<CycloNum>, Vec<CycloNum>), WreathError> {
        self.check_label(lambda)?;
        if lambda.sigma() != 1 {
            let row = self.sym_row(lambda)?;
            let r: Vec<CycloNum> = self.alt_classes.iter().map(|c| row[c.parent].clone()).collect();
            return Ok((r.clone(), r));
        }
        let sub = self.subgroup(&lambda.sizes());
        let n = self.alt_classes.len();
        let mut plus = vec![CycloNum::zero(); n];
        let mut minus = vec![CycloNum::zero(); n];
        for &(rep, size, fuse) in &sub.alt_classes {
            let lv = self.local_value(lambda, &self.group.elements[rep])?;
            let hp = (&lv.chi + &lv.diff).div_int(2);
            let hm = (&lv.chi - &lv.diff).div_int(2);
            plus[fuse] += hp.scale_int(size as i64);
            minus[fuse] += hm.scale_int(size as i64);
        }
        let g = self.group.order() as i64 / 2;
        let h = sub.order as i64 / 2;
        let fin = |row: Vec<CycloNum>| -> Vec<CycloNum> {
            row.into_iter()
                .enumerate()
                .map(|(c, v)| v.scale_int(g).div_int(self.alt_classes[c].info.size as i64 * h))
                .collect()
        };
        Ok((fin(plus), fin(minus)))
    }

    /// The spin character table of `Ñ_p^t S̃_t`.
    pub fn sym_table(&self) -> Result<LocalTable<WreathClassLabel>, WreathError> {
        let chars = sym_wreath_labels(self.p, self.t);
        let mut values = Vec::new();
        let mut cache: HashMap<MultiPartition, Vec<CycloNum>> = HashMap::new();
        for c in &chars {
            if !cache.contains_key(&c.lambda) {
                cache.insert(c.lambda.clone(), self.sym_row(&c.lambda)?);
            }
            let row = &cache[&c.lambda];
            values.push(self.twist(row, c.variant));
        }
        Ok(LocalTable {
            chars,
            classes: self.group.classes.iter().map(|c| c.info.clone()).collect(),
            values,
            order: self.group.order() as u128,
        })
    }

    fn twist(&self, row: &[CycloNum], variant: Variant) -> Vec<CycloNum> {
        row.iter()
            .zip(&self.group.classes)
            .map(|(v, c)| if variant == Variant::Minus && !c.info.rep.is_even() { -v } else { v.clone() })
            .collect()
    }

    /// The spin character table of `Ñ_p^t S̃_t ∩ Ã_{pt}`.
    pub fn alt_table(&self) -> Result<LocalTable<AltWreathClassLabel>, WreathError> {
        let chars = alt_wreath_labels(self.p, self.t);
        let mut values = Vec::new();
        let mut cache: HashMap<MultiPartition, (Vec<CycloNum>, Vec<CycloNum>)> = HashMap::new();
        for c in &chars {
            if !cache.contains_key(&c.lambda) {
                cache.insert(c.lambda.clone(), self.alt_rows(&c.lambda)?);
            }
            let (plus, minus) = &cache[&c.lambda];
            values.push(if c.variant == Variant::Minus { minus.clone() } else { plus.clone() });
        }
        Ok(LocalTable {
            chars,
            classes: self.alt_classes.iter().map(|c| c.info.clone()).collect(),
            values,
            order: self.group.order() as u128 / 2,
        })
    }

    /// `χ^{λ(±)}` at a class of `Ñ_p^t S̃_t`.
    pub fn char_value(&self, chi: &WreathCharLabel, class: &WreathClassLabel) -> Result<CycloNum, WreathError> {
        if chi.ambient != Ambient::Sym || (chi.variant == Variant::SelfAssoc) != (chi.lambda.sigma() == 1) {
            return Err(WreathError::BadLabel(chi.to_string()));
        }
        let c = self.group.find_class(class).ok_or_else(|| WreathError::BadLabel(class.to_string()))?;
        let row = self.sym_row(&chi.lambda)?;
        Ok(self.twist(&row, chi.variant).swap_remove(c))
    }

    /// `χ̄^{λ(±)}` at a class of the even subgroup.
    pub fn alt_char_value(&self, chi: &WreathCharLabel, class: &AltWreathClassLabel) -> Result<CycloNum, WreathError> {
        if chi.ambient != Ambient::Alt || (chi.variant == Variant::SelfAssoc) != (chi.lambda.sigma() == -1) {
            return Err(WreathError::BadLabel(chi.to_string()));
        }
        let c = self.find_alt_class(class).ok_or_else(|| WreathError::NotEven(class.to_string()))?;
        let (plus, minus) = self.alt_rows(&chi.lambda)?;
        Ok(if chi.variant == Variant::Minus { minus[c].clone() } else { plus[c].clone() })
    }
}

/// `χ^{λ(±)}` at a class of `Ñ_p^t S̃_t` (enumerates the group).
pub fn wreath_char_value(p: usize, cover: Cover, chi: &WreathCharLabel, class: &WreathClassLabel) -> Result<CycloNum, WreathError> {
    let t = chi.lambda.size();
    if class.wtype.size() != t {
        return Err(WreathError::SizeMismatch { label: class.to_string(), size: class.wtype.size(), t });
    }
    LocalGroup::new(p, t, cover)?.char_value(chi, class)
}

/// `χ̄^{λ(±)}` at a class of `Ñ_p^t S̃_t ∩ Ã_{pt}` (enumerates the group).
pub fn wreath_alt_value(p: usize, cover: Cover, chi: &WreathCharLabel, class: &AltWreathClassLabel) -> Result<CycloNum, WreathError> {
    let t = chi.lambda.size();
    if class.base.wtype.size() != t {
        return Err(WreathError::SizeMismatch { label: class.to_string(), size: class.base.wtype.size(), t });
    }
    LocalGroup::new(p, t, cover)?.alt_char_value(chi, class)
}

/// A spin character of `Ñ_p` (or of `Ñ_p ∩ Ã_p` for `ζ̄_0^±`), with values
/// on the classes of [`NTildeTable::group`] (resp. its even classes).
#[derive(Debug, Clone)]
pub struct NTildeChar {
    pub j: usize,
    pub variant: Variant,
    pub ambient: Ambient,
    pub values: Vec<CycloNum>,
}

/// The spin characters of `Ñ_p` together with the enumerated group.
#[derive(Debug)]
pub struct NTildeTable {
    pub group: LocalGroup,
    pub chars: Vec<NTildeChar>,
}

/// `ζ_0`, `ζ_j^±` (`1 ≤ j ≤ (p−1)/2`) on `Ñ_p`, then `ζ̄_0^±` on `Ñ_p ∩ Ã_p`.
pub fn ntilde_chars(p: usize, cover: Cover) -> Result<NTildeTable, WreathError> {
    let group = LocalGroup::new(p, 1, cover)?;
    let nt = &group.ntilde;
    let reps: Vec<&CoverElt> = group.group.classes.iter().map(|c| &c.info.rep).collect();
    let mut chars = vec![NTildeChar {
        j: 0,
        variant: Variant::SelfAssoc,
        ambient: Ambient::Sym,
        values: reps.iter().map(|h| nt.zeta0(h)).collect::<Result<_, _>>()?,
    }];
    for j in 1..=(p - 1) / 2 {
        for variant in [Variant::Plus, Variant::Minus] {
            chars.push(NTildeChar {
                j,
                variant,
                ambient: Ambient::Sym,
                values: reps.iter().map(|h| nt.linear(j, variant, h)).collect::<Result<_, _>>()?,
            });
        }
    }
    for (variant, plus) in [(Variant::Plus, true), (Variant::Minus, false)] {
        chars.push(NTildeChar {
            j: 0,
            variant,
            ambient: Ambient::Alt,
            values: group
                .alt_classes
                .iter()
                .map(|c| nt.zeta0_bar(&c.info.rep, plus))
                .collect::<Result<_, _>>()?,
        });
    }
    Ok(NTildeTable { group, chars })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn ntilde_normal_form_covers_group() {
        for p in [3, 5, 7] {
            for cover in [Cover::Plus, Cover::Minus] {
                let nt = NTilde::new(p, cover).unwrap();
                let els = nt.elements();
                assert_eq!(els.len(), 2 * p * (p - 1));
                let set: std::collections::HashSet<_> = els.iter().cloned().collect();
                assert_eq!(set.len(), els.len());
                for (i, h) in els.iter().enumerate() {
                    let (k, m, e) = nt.decompose(h).unwrap();
                    assert_eq!((k, m, e), (i / (2 * p), (i / 2) % p, i % 2 == 1));
                }
            }
        }
    }

    #[test]
    fn ntilde_characters_orthonormal() {
        for p in [3, 5] {
            for cover in [Cover::Plus, Cover::Minus] {
                let tab = ntilde_chars(p, cover).unwrap();
                let classes = &tab.group.group.classes;
                let sym: Vec<&NTildeChar> = tab.chars.iter().filter(|c| c.ambient == Ambient::Sym).collect();
                assert_eq!(sym.len(), p);
                let order = tab.group.order() as i64;
                for a in &sym {
                    for b in &sym {
                        let ip: CycloNum = classes
                            .iter()
                            .zip(a.values.iter().zip(&b.values))
                            .map(|(c, (x, y))| (x * &y.conj()).scale_int(c.info.size as i64))
                            .sum::<CycloNum>()
                            .div_int(order);
                        let expect = if std::ptr::eq(*a, *b) { 1 } else { 0 };
                        assert_eq!(ip, CycloNum::from_int(expect), "p={p} {cover}");
                    }
                }
                // ζ_0 = ζ̄_0^+ + ζ̄_0^− on even classes, halves of degree (p−1)/2.
                let alt: Vec<&NTildeChar> = tab.chars.iter().filter(|c| c.ambient == Ambient::Alt).collect();
                for (i, ac) in tab.group.alt_classes.iter().enumerate() {
                    assert_eq!(&alt[0].values[i] + &alt[1].values[i], sym[0].values[ac.parent]);
                    if ac.info.rep.is_identity() {
                        assert_eq!(alt[0].values[i], CycloNum::from_int((p as i64 - 1) / 2));
                    }
                }
            }
        }
    }

    #[test]
    fn ntilde_anchor_and_pprime_values() {
        for p in [3, 5, 7] {
            for cover in [Cover::Plus, Cover::Minus] {
                let nt = NTilde::new(p, cover).unwrap();
                let a = nt.a0().clone();
                assert_eq!(nt.zeta0_bar(&a, true).unwrap(), gauss_half(p, 1));
                assert_eq!(nt.zeta0_bar(&a, false).unwrap(), gauss_half(p, -1));
                assert_eq!(nt.zeta0(&a).unwrap(), CycloNum::from_int(-1));
                for h in nt.elements() {
                    if h.is_even() && h.order() % p as u64 != 0 {
                        assert_eq!(nt.zeta0_bar(&h, true).unwrap(), nt.zeta0_bar(&h, false).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn exten_examples() {
        let nt = NTilde::new(3, Cover::Plus).unwrap();
        let a = BlockCycle { len: 1, product: nt.a0().clone() };
        assert_eq!(exten_value(&nt, ExtenKind::Plus, &[a]).unwrap(), CycloNum::from_int(-1));
        let one = BlockCycle { len: 1, product: CoverElt::identity(3, Cover::Plus) };
        assert_eq!(exten_value(&nt, ExtenKind::Plus, &vec![one; 3]).unwrap(), CycloNum::from_int(8));
        let r = BlockCycle { len: 2, product: nt.r().clone() };
        assert!(exten_value(&nt, ExtenKind::Plus, &[r]).unwrap().is_zero());
    }

    #[test]
    fn sym_char_small_values() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(sym_char(&p("2,1"), &p("1,1,1")), 2);
        assert_eq!(sym_char(&p("2,1"), &p("3")), -1);
        assert_eq!(sym_char(&p("2,2"), &p("2,2")), 2);
        assert_eq!(sym_char(&p("3,1"), &p("2,1,1")), 1);
    }

    fn check_table(p: usize, t: usize, cover: Cover) {
        let lg = LocalGroup::new(p, t, cover).unwrap();
        let tab = lg.sym_table().unwrap();
        assert_eq!(tab.chars.len(), lg.spin_class_count(false), "count p={p} t={t}");
        for i in 0..tab.chars.len() {
            for j in 0..tab.chars.len() {
                let expect = CycloNum::from_int((i == j) as i64);
                assert_eq!(tab.inner_product(i, j), expect, "sym p={p} t={t} {cover} {} {}", tab.chars[i], tab.chars[j]);
            }
        }
        let alt = lg.alt_table().unwrap();
        assert_eq!(alt.chars.len(), lg.spin_class_count(true));
        for i in 0..alt.chars.len() {
            for j in 0..alt.chars.len() {
                let expect = CycloNum::from_int((i == j) as i64);
                assert_eq!(alt.inner_product(i, j), expect, "alt p={p} t={t} {cover} {} {}", alt.chars[i], alt.chars[j]);
            }
        }
    }

    #[test]
    fn orthonormal_p3_t1() {
        check_table(3, 1, Cover::Plus);
        check_table(3, 1, Cover::Minus);
    }

    #[test]
    fn orthonormal_p3_t2() {
        check_table(3, 2, Cover::Plus);
        check_table(3, 2, Cover::Minus);
    }

    #[test]
    fn orthonormal_p5_t1() {
        check_table(5, 1, Cover::Plus);
        check_table(5, 1, Cover::Minus);
    }

    #[test]
    fn order_p_element_example() {
        let lg = LocalGroup::new(3, 1, Cover::Plus).unwrap();
        let cls = lg.group.classes.iter().find(|c| c.info.rep == *lg.ntilde.a0()).unwrap();
        for variant in [Variant::Plus, Variant::Minus] {
            let chi = WreathCharLabel { lambda: mp("|1"), variant, ambient: Ambient::Sym };
            assert_eq!(lg.char_value(&chi, &cls.info.label).unwrap(), CycloNum::one());
        }
    }

    #[test]
    fn orthonormal_p3_t3() {
        check_table(3, 3, Cover::Plus);
        check_table(3, 3, Cover::Minus);
    }

    #[test]
    fn orthonormal_p5_t2() {
        check_table(5, 2, Cover::Plus);
        check_table(5, 2, Cover::Minus);
    }

    fn check_class_constancy(p: usize, t: usize, cover: Cover) {
        let lg = LocalGroup::new(p, t, cover).unwrap();
        let mut labels: Vec<MultiPartition> = sym_wreath_labels(p, t).into_iter().map(|c| c.lambda).collect();
        labels.dedup();
        for lambda in &labels {
            let sizes = lambda.sizes();
            let mut gens: Vec<CoverElt> = lg.group.generators[..2 * t].to_vec();
            let mut start = 0;
            let mut seg = vec![0; t];
            for (j, &s) in sizes.iter().enumerate() {
                seg[start..start + s].fill(j);
                start += s;
            }
            for b in 1..t {
                if seg[b - 1] == seg[b] {
                    gens.push(lg.swap(b).clone());
                }
            }
            for h in &lg.group.elements {
                let Ok(v) = lg.local_value(lambda, h) else { continue };
                for g in &gens {
                    let w = lg.local_value(lambda, &h.conj_by(g)).unwrap();
                    assert_eq!(v.chi, w.chi, "{lambda} at {h} conj by {g}");
                    if h.is_even() {
                        // Odd conjugation exchanges the two halves.
                        let want = if g.is_even() { v.diff.clone() } else { -&v.diff };
                        assert_eq!(w.diff, want, "{lambda} diff at {h} conj by {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn local_values_are_class_functions() {
        for (p, t) in [(3, 2), (5, 2), (3, 3)] {
            check_class_constancy(p, t, Cover::Plus);
            check_class_constancy(p, t, Cover::Minus);
        }
    }
}
