//! Spin characters of `S̃_n` and `Ã_n` through the Murnaghan–Nakayama
//! recursion for bars.
//!
//! Values on classes of odd-part type are computed by stripping the largest
//! cycle `q` as `o((1 … q))` and summing over the `q`-bars of `λ`; they do not
//! depend on the cover, and associate characters agree there. The only other
//! non-zero values are the special values of `ξ_λ^±` (`λ ∈ D_n^−`) and of
//! `ξ̄_λ^+ − ξ̄_λ^−` (`λ ∈ D_n^+`) on classes of type `λ` itself. Those are also
//! produced by the recursion, splitting off odd parts one at a time, starting
//! from anchors on all-even types:
//!
//! * `ξ_λ^+` on the `plus` class of an all-even `λ ∈ D_n^−` is
//!   `i^{(n−l+1)/2} √(λ_1 λ_2 ⋯ / 2)` for the `−` cover and
//!   `i^{(n−l−1)/2} √(λ_1 λ_2 ⋯ / 2)` for the `+` cover;
//! * `ξ̄_λ^+ − ξ̄_λ^−` on the `plus` class of an all-even `λ ∈ D_n^+` is
//!   `i^{(n−l)/2} √(λ_1 λ_2 ⋯)` (and `1` for `λ = ∅`).
//!
//! The values are attained on the recursive representatives
//! [`crate::covers::strict_rep`]; for `D_n^−` types these lie in the `plus`
//! class. For `D_n^+` types with all parts odd the `plus` class is kept
//! odd-order, so the recursive representative may lie in `MinusPrime`, where
//! the difference takes the same value.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

use crate::covers::{
    alt_classes, sym_classes, AltClassLabel, AltTag, ClassInfo, Cover, SplitTag, SymClassLabel,
};
use crate::cyclo::CycloNum;
use crate::partitions::{remove_q_bars, strict_partitions, Partition};

/// Errors raised by spin character evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("character of degree {0} evaluated on a class of S̃_{1}")]
    SizeMismatch(usize, usize),
    #[error("class {0} is not a class of the alternating cover")]
    NotInAlt(String),
    #[error("character {0} does not belong to this group")]
    WrongAmbient(String),
    #[error("{0} is not a strict partition")]
    NotStrict(String),
}

/// Which member of an associate pair (or neither).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    SelfAssoc,
    Plus,
    Minus,
}

impl Variant {
    /// `+1` for `Plus`, `−1` for `Minus`, `0` for self-associate.
    pub fn sign(self) -> i32 {
        match self {
            Variant::Plus => 1,
            Variant::Minus => -1,
            Variant::SelfAssoc => 0,
        }
    }

    /// The associate variant.
    pub fn flip(self) -> Self {
        match self {
            Variant::Plus => Variant::Minus,
            Variant::Minus => Variant::Plus,
            Variant::SelfAssoc => Variant::SelfAssoc,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::SelfAssoc => "",
            Variant::Plus => "+",
            Variant::Minus => "-",
        })
    }
}

/// `S̃_n` or `Ã_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    Sym,
    Alt,
}

/// The spin character `ξ_λ^{(±)}` of `S̃_n` or `ξ̄_λ^{(±)}` of `Ã_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinCharLabel {
    pub lambda: Partition,
    pub variant: Variant,
    pub ambient: Ambient,
}

impl SpinCharLabel {
    pub fn n(&self) -> usize {
        self.lambda.size()
    }

    /// The associate label (itself when self-associate).
    pub fn associate(&self) -> Self {
        SpinCharLabel { variant: self.variant.flip(), ..self.clone() }
    }
}

impl fmt::Display for SpinCharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.ambient {
            Ambient::Sym => "xi",
            Ambient::Alt => "xibar",
        };
        write!(f, "{name}{}({})", self.variant, self.lambda)
    }
}

/// The spin character labels of `S̃_n`: `ξ_λ` for `λ ∈ D_n^+` and `ξ_λ^±` for
/// `λ ∈ D_n^−`.
pub fn sym_char_labels(n: usize) -> Vec<SpinCharLabel> {
    let mut out = Vec::new();
    for lambda in strict_partitions(n) {
        let variants: &[Variant] = if lambda.sigma() == 1 {
            &[Variant::SelfAssoc]
        } else {
            &[Variant::Plus, Variant::Minus]
        };
        for &variant in variants {
            out.push(SpinCharLabel { lambda: lambda.clone(), variant, ambient: Ambient::Sym });
        }
    }
    out
}

/// The spin character labels of `Ã_n`: `ξ̄_λ` for `λ ∈ D_n^−` and `ξ̄_λ^±` for
/// `λ ∈ D_n^+`. For `n ≤ 1` the group is `S̃_n` itself and nothing splits.
pub fn alt_char_labels(n: usize) -> Vec<SpinCharLabel> {
    let mut out = Vec::new();
    for lambda in strict_partitions(n) {
        let variants: &[Variant] = if lambda.sigma() == -1 || n <= 1 {
            &[Variant::SelfAssoc]
        } else {
            &[Variant::Plus, Variant::Minus]
        };
        for &variant in variants {
            out.push(SpinCharLabel { lambda: lambda.clone(), variant, ambient: Ambient::Alt });
        }
    }
    out
}

fn sign_pow(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

type OddCache = RwLock<HashMap<(Partition, Partition), CycloNum>>;

fn odd_cache() -> &'static OddCache {
    static CACHE: OnceLock<OddCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `ξ_λ^{(+)}(o(g))` for `g` of type `π ∈ O_n`, by the bar recursion.
///
/// Stripping the largest part `q` of `π`, each removal of a `q`-bar
/// `λ → μ` with leg length `L` contributes `(−1)^{(q²−1)/8} (−1)^L` times the
/// value for `μ`, doubled when `σ(λ) = 1` and `σ(μ) = −1` (the two associate
/// terms coincide on these classes).
pub fn odd_class_value(lambda: &Partition, pi: &Partition) -> CycloNum {
    if lambda.size() != pi.size() {
        return CycloNum::zero();
    }
    if pi.is_empty() {
        return CycloNum::one();
    }
    let key = (lambda.clone(), pi.clone());
    if let Some(v) = odd_cache().read().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    let q = pi.parts()[0];
    debug_assert!(q % 2 == 1);
    let rest = pi.without_part(q).expect("part present");
    let sq = sign_pow((q * q - 1) / 8);
    let mut acc: i64 = 0;
    let mut value = CycloNum::zero();
    for (mu, leg) in remove_q_bars(lambda, q).expect("strict λ, odd q") {
        let mut c = sq * sign_pow(leg);
        if lambda.sigma() == 1 && mu.sigma() == -1 {
            c *= 2;
        }
        let v = odd_class_value(&mu, &rest);
        if let Some(r) = v.to_rational() {
            // Odd-class values are rational integers; keep the fast path exact.
            let r = r.to_integer();
            acc += c * i64::try_from(r).expect("character value fits in i64");
        } else {
            value += v.scale_int(c);
        }
    }
    let value = value + CycloNum::from_int(acc);
    odd_cache().write().expect("cache poisoned").insert(key, value.clone());
    value
}

fn parts_product(lambda: &Partition) -> i64 {
    lambda.parts().iter().map(|&x| x as i64).product()
}

/// `i^{(q−1)/2} √q` for odd `q`.
fn gauss_factor(q: usize) -> CycloNum {
    &CycloNum::i_pow(((q - 1) / 2) as i64) * &CycloNum::sqrt_int(q as i64).expect("q ≥ 1")
}

/// Anchor for all-even `λ ∈ D_n^−`.
pub fn sym_anchor(lambda: &Partition, cover: Cover) -> CycloNum {
    let n = lambda.size();
    let l = lambda.len();
    let e = match cover {
        Cover::Minus => (n - l).div_ceil(2),
        Cover::Plus => (n - l - 1) / 2,
    };
    let root = CycloNum::sqrt_int(parts_product(lambda) / 2).expect("even product");
    &CycloNum::i_pow(e as i64) * &root
}

/// Anchor for all-even `λ ∈ D_n^+`: `i^{(n−l)/2} √(λ_1 λ_2 ⋯)`.
pub fn alt_anchor(lambda: &Partition) -> CycloNum {
    let e = (lambda.size() - lambda.len()) / 2;
    &CycloNum::i_pow(e as i64) * &CycloNum::sqrt_int(parts_product(lambda)).expect("positive")
}

/// One step of the recursion on the special classes: the value of the `plus`
/// character at `z^c · o((1…q)) · x`, where `x` is a `plus` representative of
/// `λ∖q` and `c = (q²−1)/8 mod 2`, in terms of the value `inner` at `x`.
///
/// The associate terms of the bar recursion combine to
/// `(−1)^{(q²−1)/8} i^{(q−1)/2} √q`; the normalizing `z^c` contributes
/// `(−1)^c`.
fn special_step(q: usize, inner: &CycloNum) -> CycloNum {
    let k = (q * q - 1) / 8;
    let mn = gauss_factor(q).scale_int(sign_pow(k));
    let z = sign_pow(k % 2);
    (&mn * inner).scale_int(z)
}

/// `ξ_λ^+` on the `plus` class of type `λ ∈ D_n^−`.
pub fn sym_special_value(lambda: &Partition, cover: Cover) -> CycloNum {
    match lambda.parts().iter().copied().find(|q| q % 2 == 1) {
        None => sym_anchor(lambda, cover),
        Some(q) => {
            let rest = lambda.without_part(q).expect("part present");
            special_step(q, &sym_special_value(&rest, cover))
        }
    }
}

/// `ξ̄_λ^+ − ξ̄_λ^−` on the `plus` class of type `λ ∈ D_n^+`.
pub fn alt_special_difference(lambda: &Partition) -> CycloNum {
    match lambda.parts().iter().copied().find(|q| q % 2 == 1) {
        None => {
            if lambda.is_empty() {
                CycloNum::one()
            } else {
                alt_anchor(lambda)
            }
        }
        Some(q) => {
            let rest = lambda.without_part(q).expect("part present");
            special_step(q, &alt_special_difference(&rest))
        }
    }
}

/// The value of a spin character of `S̃_n` on a class.
pub fn xi_value(chi: &SpinCharLabel, class: &SymClassLabel, cover: Cover) -> Result<CycloNum, SpinError> {
    if chi.ambient != Ambient::Sym {
        return Err(SpinError::WrongAmbient(chi.to_string()));
    }
    if !chi.lambda.is_strict() {
        return Err(SpinError::NotStrict(chi.lambda.to_string()));
    }
    let pi = &class.cycle_type;
    if chi.n() != pi.size() {
        return Err(SpinError::SizeMismatch(chi.n(), pi.size()));
    }
    let tag_sign = class.tag.sign() as i64;
    if class.tag == SplitTag::Unsplit {
        return Ok(CycloNum::zero());
    }
    if pi.all_odd() {
        return Ok(odd_class_value(&chi.lambda, pi).scale_int(tag_sign));
    }
    if *pi == chi.lambda && chi.variant != Variant::SelfAssoc {
        let v = sym_special_value(pi, cover);
        return Ok(v.scale_int(tag_sign * chi.variant.sign() as i64));
    }
    Ok(CycloNum::zero())
}

/// The value of a spin character of `Ã_n` on a class.
pub fn xi_alt_value(chi: &SpinCharLabel, class: &AltClassLabel) -> Result<CycloNum, SpinError> {
    if chi.ambient != Ambient::Alt {
        return Err(SpinError::WrongAmbient(chi.to_string()));
    }
    if !chi.lambda.is_strict() {
        return Err(SpinError::NotStrict(chi.lambda.to_string()));
    }
    let pi = &class.cycle_type;
    if chi.n() != pi.size() {
        return Err(SpinError::SizeMismatch(chi.n(), pi.size()));
    }
    if pi.sigma() != 1 {
        return Err(SpinError::NotInAlt(class.to_string()));
    }
    if class.tag == AltTag::Unsplit {
        return Ok(CycloNum::zero());
    }
    let zs = class.tag.z_sign() as i64;
    let restricted = if pi.all_odd() {
        odd_class_value(&chi.lambda, pi).scale_int(zs)
    } else {
        CycloNum::zero()
    };
    if chi.variant == Variant::SelfAssoc {
        return Ok(restricted);
    }
    let diff = if *pi == chi.lambda {
        alt_special_difference(pi).scale_int(class.tag.difference_sign() as i64)
    } else {
        CycloNum::zero()
    };
    let half = CycloNum::frac(1, 2);
    let signed = diff.scale_int(chi.variant.sign() as i64);
    Ok(&(&restricted + &signed) * &half)
}

/// A spin character table: rows are characters, columns classes.
#[derive(Debug, Clone)]
pub struct SpinTable<L> {
    pub chars: Vec<SpinCharLabel>,
    pub classes: Vec<ClassInfo<L>>,
    pub values: Vec<Vec<CycloNum>>,
    /// Order of the covering group.
    pub order: u128,
}

impl<L> SpinTable<L> {
    /// `⟨χ_i, χ_j⟩ = |G|⁻¹ Σ_C |C| χ_i(C) conj(χ_j(C))`.
    pub fn inner_product(&self, i: usize, j: usize) -> CycloNum {
        let mut acc = CycloNum::zero();
        for (k, c) in self.classes.iter().enumerate() {
            let a = &self.values[i][k];
            let b = &self.values[j][k];
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += (a * &b.conj()).scale_int(c.size as i64);
        }
        acc.div_int(self.order as i64)
    }

    /// Row of a character label.
    pub fn row(&self, chi: &SpinCharLabel) -> Option<usize> {
        self.chars.iter().position(|c| c == chi)
    }
}

/// The spin character table of `S̃_n`.
pub fn spin_table_sym(n: usize, cover: Cover) -> SpinTable<SymClassLabel> {
    let classes = sym_classes(n, cover);
    let chars = sym_char_labels(n);
    let values = chars
        .iter()
        .map(|chi| {
            classes
                .iter()
                .map(|c| xi_value(chi, &c.label, cover).expect("consistent sizes"))
                .collect()
        })
        .collect();
    let order = 2 * (1..=n as u128).product::<u128>();
    SpinTable { chars, classes, values, order }
}

/// The spin character table of `Ã_n`.
pub fn spin_table_alt(n: usize, cover: Cover) -> SpinTable<AltClassLabel> {
    let classes = alt_classes(n, cover);
    let chars = alt_char_labels(n);
    let values = chars
        .iter()
        .map(|chi| {
            classes
                .iter()
                .map(|c| xi_alt_value(chi, &c.label).expect("consistent sizes"))
                .collect()
        })
        .collect();
    let order = (1..=n as u128).product::<u128>().max(2);
    SpinTable { chars, classes, values, order }
}

/// Schur's degree formula
/// `2^{⌊(n−l)/2⌋} n! / ∏λ_i! · ∏_{i<j} (λ_i−λ_j)/(λ_i+λ_j)`, for test
/// cross-checks of the recursion.
pub fn schur_degree(lambda: &Partition) -> u128 {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let n = lambda.size();
    let l = lambda.len();
    let fact = |k: usize| -> BigInt { (1..=k).map(BigInt::from).product() };
    let mut r = BigRational::from_integer(fact(n) * BigInt::from(1u64 << ((n - l) / 2)));
    for &x in lambda.parts() {
        r /= BigRational::from_integer(fact(x));
    }
    let p = lambda.parts();
    for i in 0..l {
        for j in i + 1..l {
            r *= BigRational::new(BigInt::from(p[i] - p[j]), BigInt::from(p[i] + p[j]));
        }
    }
    assert!(r.is_integer());
    u128::try_from(r.to_integer()).expect("degree fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{canonical_lift, cliff_char, CliffVariant};
    use crate::covers::{classify_alt, classify_sym, odd_cycle, odd_type_rep, strict_rep};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let c = Cover::Minus;
        let lab = |l: &str, v| SpinCharLabel { lambda: part(l), variant: v, ambient: Ambient::Sym };
        let cls = |t: &str, tag| SymClassLabel { cycle_type: part(t), tag };
        assert_eq!(xi_value(&lab("1", Variant::SelfAssoc), &cls("1", SplitTag::Plus), c).unwrap(), CycloNum::one());
        assert_eq!(
            xi_value(&lab("3", Variant::SelfAssoc), &cls("1,1,1", SplitTag::Plus), c).unwrap(),
            CycloNum::from_int(2)
        );
        assert_eq!(
            xi_value(&lab("2,1", Variant::Plus), &cls("1,1,1", SplitTag::Plus), c).unwrap(),
            CycloNum::one()
        );
        assert_eq!(
            xi_value(&lab("4", Variant::Plus), &cls("1,1,1,1", SplitTag::Plus), c).unwrap(),
            CycloNum::from_int(2)
        );
        // (2,1): the special value has modulus 1.
        let v = xi_value(&lab("2,1", Variant::Plus), &cls("2,1", SplitTag::Plus), c).unwrap();
        assert_eq!(&v * &v.conj(), CycloNum::one());
        assert_eq!(v, CycloNum::i());
        assert_eq!(xi_value(&lab("2,1", Variant::Plus), &cls("2,1", SplitTag::Plus), Cover::Plus).unwrap(), CycloNum::one());
        assert_eq!(sym_char_labels(3).len(), 3);
        assert_eq!(sym_char_labels(4).len(), 3);
    }

    fn check_orthonormal<L>(t: &SpinTable<L>) {
        for i in 0..t.chars.len() {
            for j in 0..t.chars.len() {
                let ip = t.inner_product(i, j);
                let want = if i == j { CycloNum::one() } else { CycloNum::zero() };
                assert_eq!(ip, want, "{} {}", t.chars[i], t.chars[j]);
            }
        }
    }

    #[test]
    fn orthonormal_small() {
        for n in 1..=8 {
            for c in [Cover::Plus, Cover::Minus] {
                check_orthonormal(&spin_table_sym(n, c));
                if n >= 2 {
                    check_orthonormal(&spin_table_alt(n, c));
                }
            }
        }
    }

    #[test]
    fn degrees_match_schur() {
        for n in 1..=12 {
            for lambda in strict_partitions(n) {
                let deg = odd_class_value(&lambda, &Partition::new(vec![1; n]));
                let d = schur_degree(&lambda);
                assert_eq!(deg, CycloNum::from_int(d as i64), "{lambda}");
            }
        }
    }

    #[test]
    fn associate_symmetry() {
        let c = Cover::Plus;
        let t = spin_table_sym(7, c);
        for (i, chi) in t.chars.iter().enumerate() {
            let j = t.row(&chi.associate()).unwrap();
            for (k, cl) in t.classes.iter().enumerate() {
                let eps = cl.rep.epsilon() as i64;
                assert_eq!(t.values[j][k], t.values[i][k].scale_int(eps));
            }
        }
    }

    /// The special values are attained on the recursive representatives: for
    /// `D⁻` types it lies in the `plus` class; for `D⁺` types it lies in a
    /// class where the difference character takes its `plus` value (for
    /// four-class types possibly `MinusPrime`, since `Plus` is kept odd-order).
    #[test]
    fn recursive_reps_are_plus() {
        for c in [Cover::Plus, Cover::Minus] {
            for n in 1..=10 {
                for lambda in strict_partitions(n) {
                    let g = strict_rep(&lambda, c);
                    if lambda.sigma() == -1 {
                        assert_eq!(classify_sym(&g).tag, SplitTag::Plus, "{lambda}");
                    } else {
                        assert_eq!(classify_alt(&g).unwrap().tag.difference_sign(), 1, "{lambda}");
                    }
                }
            }
        }
    }

    /// One recursion step with the largest odd part agrees with the direct
    /// evaluation.
    #[test]
    fn special_step_consistency() {
        for c in [Cover::Plus, Cover::Minus] {
            for n in 1..=10 {
                for lambda in strict_partitions(n) {
                    let Some(q) = lambda.parts().iter().copied().find(|q| q % 2 == 1) else { continue };
                    let rest = lambda.without_part(q).unwrap();
                    let head = odd_cycle(q, c).embed(n - q);
                    let mut g = &head * &strict_rep(&rest, c).shift(q);
                    if ((q * q - 1) / 8) % 2 == 1 {
                        g = g.times_z();
                    }
                    assert_eq!(g, strict_rep(&lambda, c));
                    if lambda.sigma() == -1 {
                        assert_eq!(special_step(q, &sym_special_value(&rest, c)), sym_special_value(&lambda, c));
                    }
                }
            }
        }
    }

    /// `χ(g^k)` is the Galois conjugate `σ_k(χ(g))`; applied to the special
    /// classes this pins the phases of the special values.
    #[test]
    fn special_values_respect_power_maps() {
        for c in [Cover::Plus, Cover::Minus] {
            for n in 2..=9 {
                for lambda in strict_partitions(n) {
                    if lambda.all_odd() {
                        continue;
                    }
                    let (g, v) = if lambda.sigma() == -1 {
                        (strict_rep(&lambda, c), sym_special_value(&lambda, c).reduce())
                    } else {
                        (strict_rep(&lambda, c), alt_special_difference(&lambda).reduce())
                    };
                    let ord = g.order();
                    let field = if ord % 4 == 2 { ord / 2 } else { ord };
                    assert_eq!(field % v.conductor() as u64, 0, "{lambda}: {v} outside Q(ζ_{ord})");
                    for k in 1..ord {
                        if num_integer::gcd(k, ord) != 1 {
                            continue;
                        }
                        let gk = g.pow(k as i64);
                        let s = if lambda.sigma() == -1 {
                            classify_sym(&gk).tag.sign()
                        } else {
                            classify_alt(&gk).unwrap().tag.difference_sign()
                        };
                        let m = v.conductor() as u64;
                        let kk = (0..m).map(|a| k + a * ord).find(|x| num_integer::gcd(*x, m) == 1).unwrap();
                        assert_eq!(v.galois(kk as i64), v.scale_int(s as i64), "{lambda} k={k} cover {c}");
                    }
                }
            }
        }
    }

    /// Basic spin values against the Clifford character functionals.
    #[test]
    fn basic_spin_matches_clifford() {
        for n in 1..=8 {
            let lambda = Partition::new(vec![n]);
            for pi in crate::partitions::odd_partitions(n) {
                for c in [Cover::Plus, Cover::Minus] {
                    let g = odd_type_rep(&pi, c);
                    let x = canonical_lift(c, g.perm()).unwrap();
                    let x = if g.z_bit() { x.scale(&CycloNum::from_int(-1)) } else { x };
                    let variant = if n % 2 == 1 { CliffVariant::FullPlus } else { CliffVariant::EvenPlus };
                    let want = if n == 1 { x.coeff(0) } else { cliff_char(variant, &x).unwrap() };
                    assert_eq!(odd_class_value(&lambda, &pi), want, "n={n} π={pi}");
                }
            }
        }
    }

    #[test]
    fn alt_examples() {
        let lab = |l: &str, v| SpinCharLabel { lambda: part(l), variant: v, ambient: Ambient::Alt };
        let d = alt_special_difference(&part("3"));
        assert_eq!(&d * &d, CycloNum::from_int(-3));
        let one = AltClassLabel { cycle_type: part("1,1,1"), tag: AltTag::Plus };
        assert_eq!(xi_alt_value(&lab("2,1", Variant::SelfAssoc), &one).unwrap(), CycloNum::one());
        let t = spin_table_alt(5, Cover::Minus);
        for cl in &t.classes {
            let chi = lab("5", Variant::Plus);
            let sum = &xi_alt_value(&chi, &cl.label).unwrap() + &xi_alt_value(&chi.associate(), &cl.label).unwrap();
            let rest = if cl.label.cycle_type.all_odd() {
                odd_class_value(&part("5"), &cl.label.cycle_type).scale_int(cl.label.tag.z_sign() as i64)
            } else {
                CycloNum::zero()
            };
            assert_eq!(sum, rest);
        }
    }

    #[test]
    fn tiny_alternating_covers_are_central() {
        // Ã_1 and Ã_2 are just {1, z}: one spin character, equal to ±1.
        for n in [1usize, 2] {
            for cover in [Cover::Plus, Cover::Minus] {
                let t = spin_table_alt(n, cover);
                assert_eq!(t.order, 2);
                assert_eq!(t.chars.len(), 1);
                assert!(t.inner_product(0, 0).is_one());
            }
        }
    }
}
