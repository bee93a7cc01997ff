//! Executable checks of the structural lemmas on the character values of
//! `Ñ_p^t S̃_t`: the Gauss-sum value of `ζ̄_0^+`, agreement of `ζ̄_0^±` on
//! `p'`-elements, the `x ~ zx` criterion, equalities of associate values on
//! `p`-regular and `y_0`-free elements, and the `√p^{l(λ_0)}·R`
//! memberships of the odd values and even differences.
//!
//! The local statements are checked on every class of `Ñ_p^t S̃_{t(λ)}`
//! (resp. its even part) through [`LocalGroup::local_value`]; the
//! membership and vanishing statements are also checked on the induced
//! tables of `G'`.

use crate::covers::{wreath_type, CoverElt};
use crate::cyclo::CycloNum;
use crate::partitions::{MultiPartition, Partition};

use super::{gauss_half, sym_wreath_labels, LocalGroup, WreathError};

/// Outcome of one lemma over all applicable pairs.
#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl LemmaCheck {
    fn new(name: &'static str) -> Self {
        LemmaCheck { name, checked: 0, violations: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `(i^{(p−1)/2}√p)^l`, the Gauss-sum realization of `√p^l`.
pub fn sqrt_p_power(p: usize, l: usize) -> CycloNum {
    let g = &gauss_half(p, 1).scale_int(2) + &CycloNum::one();
    g.pow(l as u32)
}

/// Whether `v ∈ √p^l·R`.
pub fn in_sqrt_p_r(p: usize, l: usize, v: &CycloNum) -> bool {
    let d = sqrt_p_power(p, l).inv().expect("nonzero");
    (v * &d).is_p_integral(p as u64)
}

/// Whether the `N_p`-class index `j` of a cycle product lies in `A_p`
/// (`y_0` and the even powers of `y_1`).
fn class_in_ap(j: usize) -> bool {
    j.is_multiple_of(2)
}

/// Decomposition data of `x = x_0 s_0 · x' s'` in `Ñ_p^t S̃_{t(λ)}`.
struct Split {
    /// Type of `x_0 s_0` in `N_p ≀ S_{t_0}`.
    type0: MultiPartition,
    /// Type of `x' s'` in `N_p ≀ S_{t−t_0}`.
    type1: MultiPartition,
}

fn split_types(lg: &LocalGroup, x: &CoverElt, t0: usize) -> Split {
    let p = lg.p;
    let perm = x.perm();
    let cut = p * t0;
    let first: Vec<u8> = perm[..cut].to_vec();
    let rest: Vec<u8> = perm[cut..].iter().map(|&v| v - cut as u8).collect();
    Split {
        type0: wreath_type(p, t0, &first).expect("block-preserving"),
        type1: wreath_type(p, lg.t - t0, &rest).expect("block-preserving"),
    }
}

/// Whether `x_0 s_0` has type `(λ_0, ∅, …, ∅)` and every cycle of `x' s'`
/// has its product outside `A_p`.
fn special_shape(split: &Split, lambda0: &Partition) -> bool {
    let c0 = split.type0.components();
    c0[0] == *lambda0
        && c0[1..].iter().all(|c| c.is_empty())
        && split.type1.components().iter().enumerate().all(|(j, c)| c.is_empty() || !class_in_ap(j))
}

/// Run the whole lemma suite on one local group.
pub fn lemma_suite(lg: &LocalGroup) -> Result<Vec<LemmaCheck>, WreathError> {
    let p = lg.p;
    let mut out = Vec::new();

    // Lemmas on Ñ_p itself.
    let nt = &lg.ntilde;
    let elts = nt.elements();
    let mut sqrt = LemmaCheck::new("sqrt");
    let mut pprime = LemmaCheck::new("p'");
    let roots = [gauss_half(p, 1), gauss_half(p, -1)];
    for a in &elts {
        let ord = a.order();
        if ord == p as u64 && a.is_even() {
            let v = nt.zeta0_bar(a, true)?;
            sqrt.check(roots.contains(&v), || format!("zeta0bar+({a}) = {v}"));
            let w = nt.zeta0_bar(a, false)?;
            sqrt.check(&v + &w == -CycloNum::one(), || format!("zeta0bar+ + zeta0bar- at {a} = {}", &v + &w));
        }
        if ord % p as u64 != 0 {
            let outside = elts.iter().any(|g| !g.is_even() && (g * a) == (a * g));
            pprime.check(outside, || format!("C({a}) inside the even subgroup"));
            if a.is_even() {
                let (v, w) = (nt.zeta0_bar(a, true)?, nt.zeta0_bar(a, false)?);
                pprime.check(v == w, || format!("zeta0bar±({a}) = {v}, {w}"));
            }
        }
    }
    out.push(sqrt);
    out.push(pprime);

    // x ~ zx on G' classes.
    let mut oneeven = LemmaCheck::new("oneeven");
    let table = lg.sym_table()?;
    for (c, cls) in lg.group.classes.iter().enumerate() {
        let comps = cls.info.label.wtype.components();
        let x = &cls.info.rep;
        for (j, pi) in comps.iter().enumerate() {
            if j % 2 == 1 || !pi.parts().iter().any(|&q| q % 2 == 0) {
                continue;
            }
            if x.is_even() || !pi.is_strict() {
                let zx = x.times_z();
                oneeven.check(lg.group.class_index(&zx) == Some(c), || format!("{} not conjugate to z·x", cls.info.label));
                for (i, chi) in table.chars.iter().enumerate() {
                    oneeven.check(table.values[i][c].is_zero(), || format!("{chi} nonzero on {}", cls.info.label));
                }
                break;
            }
        }
    }
    out.push(oneeven);

    // Local lemmas over the classes of Ñ_p^t S̃_{t(λ)}.
    let mut gt0 = LemmaCheck::new(">0=");
    let mut l0eq = LemmaCheck::new("lambda0=");
    let mut sqrt_r = LemmaCheck::new("sqrtR");
    let mut sqrt_ar = LemmaCheck::new("sqrtAR");
    let mut l0p = LemmaCheck::new("lambda0p");
    let mut labels: Vec<MultiPartition> = sym_wreath_labels(p, lg.t).into_iter().map(|c| c.lambda).collect();
    labels.dedup();
    for lambda in &labels {
        let comps = lambda.components();
        let lambda0 = &comps[0];
        let t0 = lambda0.size();
        let l0 = lambda0.len();
        let selfassoc = lambda.sigma() == 1;
        let sub = lg.subgroup(&lambda.sizes());
        for &(rep, _, fuse) in &sub.classes {
            let x = &lg.group.elements[rep];
            let lv = lg.local_value(lambda, x)?;
            let p_regular = lg.group.classes[fuse].p_regular;
            let split = split_types(lg, x, t0);
            let some_cycle_in_ap =
                split.type1.components().iter().enumerate().any(|(j, c)| !c.is_empty() && class_in_ap(j));
            let ctx = || format!("lambda={lambda} x={x}");
            if !selfassoc {
                // χ^− = ε·χ^+, so χ^+ = χ^− means vanishing on odd x.
                let equal = x.is_even() || lv.chi.is_zero();
                if t0 > 0 && p_regular {
                    gt0.check(equal, || format!("{} chi+ = {}", ctx(), lv.chi));
                }
                if t0 == 0 && some_cycle_in_ap {
                    l0eq.check(equal, || format!("{} chi+ = {}", ctx(), lv.chi));
                }
                if !x.is_even() {
                    if special_shape(&split, lambda0) {
                        sqrt_r.check(in_sqrt_p_r(p, l0, &lv.chi), || format!("{} chi+ = {}", ctx(), lv.chi));
                    } else {
                        sqrt_r.check(lv.chi.is_zero(), || format!("{} chi+ = {}", ctx(), lv.chi));
                    }
                }
            }
        }
        if selfassoc {
            for &(rep, _, fuse) in &sub.alt_classes {
                let x = &lg.group.elements[rep];
                let lv = lg.local_value(lambda, x)?;
                let p_regular = lg.alt_classes[fuse].p_regular;
                let split = split_types(lg, x, t0);
                let some_cycle_in_ap =
                    split.type1.components().iter().enumerate().any(|(j, c)| !c.is_empty() && class_in_ap(j));
                let ctx = || format!("lambda={lambda} x={x} diff={}", lv.diff);
                if t0 == 0 && some_cycle_in_ap {
                    l0eq.check(lv.diff.is_zero(), ctx);
                }
                if special_shape(&split, lambda0) {
                    sqrt_ar.check(in_sqrt_p_r(p, l0, &lv.diff), ctx);
                } else {
                    sqrt_ar.check(lv.diff.is_zero(), ctx);
                }
                if t0 > 0 && p_regular {
                    l0p.check(lv.diff.is_zero(), ctx);
                }
            }
        }
    }

    // The same memberships and equalities on the induced tables.
    let alt = lg.alt_table()?;
    for (i, chi) in table.chars.iter().enumerate() {
        if chi.lambda.sigma() == 1 {
            continue;
        }
        let comps = chi.lambda.components();
        let l0 = comps[0].len();
        for (c, cls) in table.classes.iter().enumerate() {
            if cls.rep.is_even() {
                continue;
            }
            let v = &table.values[i][c];
            sqrt_r.check(in_sqrt_p_r(p, l0, v), || format!("{chi} on {} = {v}", cls.label));
            if comps[0].size() > 0 && lg.group.classes[c].p_regular {
                gt0.check(v.is_zero(), || format!("{chi} on {} = {v}", cls.label));
            }
        }
    }
    for (i, chi) in alt.chars.iter().enumerate() {
        if chi.lambda.sigma() != 1 || chi.variant != crate::spin_sym::Variant::Plus {
            continue;
        }
        let comps = chi.lambda.components();
        let l0 = comps[0].len();
        for (c, cls) in alt.classes.iter().enumerate() {
            let d = &alt.values[i][c] - &alt.values[i + 1][c];
            sqrt_ar.check(in_sqrt_p_r(p, l0, &d), || format!("{chi} on {} diff = {d}", cls.label));
            if comps[0].size() > 0 && lg.alt_classes[c].p_regular {
                l0p.check(d.is_zero(), || format!("{chi} on {} diff = {d}", cls.label));
            }
        }
    }
    out.extend([gt0, l0eq, sqrt_r, sqrt_ar, l0p]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Cover;

    #[test]
    fn sqrt_p_power_squares_to_signed_p() {
        for p in [3usize, 5, 7] {
            let s = sqrt_p_power(p, 1);
            let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
            assert_eq!(&s * &s, CycloNum::from_int(sign * p as i64));
            assert!(in_sqrt_p_r(p, 1, &s));
            assert!(!in_sqrt_p_r(p, 2, &s));
        }
    }

    #[test]
    fn lemma_suite_small() {
        let mut counts = std::collections::BTreeMap::new();
        for (p, t) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
            for cover in [Cover::Plus, Cover::Minus] {
                let lg = LocalGroup::new(p, t, cover).unwrap();
                for r in lemma_suite(&lg).unwrap() {
                    assert!(r.passed(), "p={p} t={t} {cover:?} {}: {:?}", r.name, r.violations);
                    *counts.entry(r.name).or_insert(0) += r.checked;
                }
            }
        }
        assert_eq!(counts.len(), 8);
        for (name, n) in counts {
            assert!(n > 0, "{name} vacuous");
        }
    }
}
