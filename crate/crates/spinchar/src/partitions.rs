//! Partition combinatorics: hooks and bars, cores and quotients, leg lengths,
//! the signs `σ` and `δ`, and enumeration of the index sets used to label
//! spin characters and conjugacy classes.
//!
//! Hooks are handled through β-numbers (first-column hook lengths). Bars of a
//! strict partition are handled on the `p`-abacus: parts divisible by `p`
//! form the zeroth runner, and the runners `i` and `p - i` are merged into a
//! single Maya diagram on which every `p`-bar removal is a unit bead move.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Errors raised by partition operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    /// A textual partition could not be parsed.
    #[error("cannot parse partition: {0:?}")]
    Parse(String),
    /// An operation that needs distinct parts received repeated parts.
    #[error("partition {0} does not have distinct parts")]
    NotStrict(Partition),
    /// Bars are only defined for odd lengths.
    #[error("bar length must be odd, got {0}")]
    EvenBar(usize),
    /// A core/quotient pair does not describe a partition.
    #[error("inconsistent core and quotient: {0}")]
    BadQuotient(String),
}

/// A partition: a weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Build from arbitrary positive parts (zeros are dropped, parts sorted).
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The parts in weakly decreasing order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True iff all parts are distinct.
    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// True iff all parts are odd (membership in `O_n`).
    pub fn all_odd(&self) -> bool {
        self.parts.iter().all(|x| x % 2 == 1)
    }

    /// `σ(λ) = (-1)^{|λ| - l(λ)}`.
    pub fn sigma(&self) -> i32 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Product of the parts (1 for the empty partition).
    pub fn product(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).product()
    }

    /// Multiplicity of `j` as a part.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&x| x == j).count()
    }

    /// `z_λ = Π j^{m_j} m_j!`, the centralizer order of a permutation of cycle type `λ`.
    pub fn z(&self) -> u128 {
        let mut out: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let j = self.parts[i];
            let mut m = 0;
            while i < self.parts.len() && self.parts[i] == j {
                m += 1;
                i += 1;
                out *= j as u128 * m as u128;
            }
        }
        out
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let l = self.parts.first().copied().unwrap_or(0);
        Partition::new(
            (1..=l)
                .map(|k| self.parts.iter().filter(|&&x| x >= k).count())
                .collect(),
        )
    }

    /// The partition with one part `q` added.
    pub fn with_part(&self, q: usize) -> Partition {
        let mut v = self.parts.clone();
        v.push(q);
        Partition::new(v)
    }

    /// The partition with one occurrence of `q` removed, if present.
    pub fn without_part(&self, q: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&x| x == q)?;
        let mut v = self.parts.clone();
        v.remove(pos);
        Some(Partition { parts: v })
    }

    /// β-numbers `λ_i + (N - i)` for `N ≥ l(λ)` beads, as a set.
    fn beta_set(&self, beads: usize) -> BTreeSet<usize> {
        (0..beads)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + beads - 1 - i)
            .collect()
    }

    fn from_beta_set(set: &BTreeSet<usize>) -> Partition {
        let n = set.len();
        Partition::new(
            set.iter()
                .rev()
                .enumerate()
                .map(|(i, &b)| b + i + 1 - n)
                .collect(),
        )
    }

    fn require_strict(&self) -> Result<(), PartitionError> {
        if self.is_strict() {
            Ok(())
        } else {
            Err(PartitionError::NotStrict(self.clone()))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses a comma list such as `4,2`; the empty string (or `∅`) is the
    /// empty partition. Parts must be given in weakly decreasing order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Parse(s.to_string()));
        }
        Ok(Partition { parts })
    }
}

/// A removal result: the smaller partition and the leg length of what was removed.
pub type Removal = (Partition, usize);

/// All partitions obtained from `λ` by removing one `q`-hook, with leg lengths.
pub fn remove_q_hooks(lam: &Partition, q: usize) -> Vec<Removal> {
    if q == 0 {
        return Vec::new();
    }
    let beads = lam.len();
    let beta = lam.beta_set(beads);
    let mut out = Vec::new();
    for &b in beta.iter().rev() {
        if b >= q && !beta.contains(&(b - q)) {
            let leg = beta.range(b - q + 1..b).count();
            let mut nb = beta.clone();
            nb.remove(&b);
            nb.insert(b - q);
            out.push((Partition::from_beta_set(&nb), leg));
        }
    }
    out
}

/// All strict partitions obtained from the strict partition `λ` by removing
/// one `q`-bar (`q` odd), with leg lengths.
///
/// A bar either lowers a part `a` to `a - q` when that is not already a part
/// (deleting it when `a = q`), with leg length the number of parts strictly
/// between `a - q` and `a`; or deletes two parts `a > b` with `a + b = q`,
/// with leg length `b` plus the number of parts strictly between `b` and `a`.
pub fn remove_q_bars(lam: &Partition, q: usize) -> Result<Vec<Removal>, PartitionError> {
    if q.is_multiple_of(2) {
        return Err(PartitionError::EvenBar(q));
    }
    lam.require_strict()?;
    let parts = lam.parts();
    let mut out = Vec::new();
    for &a in parts {
        if a >= q && !parts.contains(&(a - q)) {
            let leg = parts.iter().filter(|&&x| a - q < x && x < a).count();
            let mut v: Vec<usize> = parts.iter().copied().filter(|&x| x != a).collect();
            v.push(a - q);
            out.push((Partition::new(v), leg));
        }
    }
    for &a in parts {
        if a < q && 2 * a > q && parts.contains(&(q - a)) {
            let b = q - a;
            let leg = b + parts.iter().filter(|&&x| b < x && x < a).count();
            let v: Vec<usize> = parts.iter().copied().filter(|&x| x != a && x != b).collect();
            out.push((Partition::new(v), leg));
        }
    }
    Ok(out)
}

/// Result of a core/quotient computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreQuotient {
    /// The core left after removing all hooks (or bars).
    pub core: Partition,
    /// The quotient components.
    pub quotient: MultiPartition,
    /// Number of hooks (or bars) removed.
    pub weight: usize,
    /// The sign `δ`: product of `(-1)^L` over any complete removal sequence.
    pub sign: i32,
}

fn sign_of(l: usize) -> i32 {
    if l.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `δ_q(λ)` computed from a complete removal sequence (first removal each step).
pub fn delta_hook(lam: &Partition, q: usize) -> i32 {
    let mut cur = lam.clone();
    let mut s = 1;
    while let Some((mu, l)) = remove_q_hooks(&cur, q).into_iter().next() {
        s *= sign_of(l);
        cur = mu;
    }
    s
}

/// `δ_q̄(λ)` for strict `λ`, computed from a complete removal sequence.
pub fn delta_bar(lam: &Partition, q: usize) -> Result<i32, PartitionError> {
    let mut cur = lam.clone();
    let mut s = 1;
    loop {
        let next = remove_q_bars(&cur, q)?.into_iter().next();
        match next {
            Some((mu, l)) => {
                s *= sign_of(l);
                cur = mu;
            }
            None => return Ok(s),
        }
    }
}

/// `q`-core, `q`-quotient (runners in residue order `0..q`), weight and `δ_q`.
pub fn core_quotient(lam: &Partition, q: usize) -> CoreQuotient {
    assert!(q >= 1, "hook length must be positive");
    let beads = lam.len().div_ceil(q) * q;
    let beta = lam.beta_set(beads);
    let mut quotient = Vec::with_capacity(q);
    let mut core_beta = BTreeSet::new();
    for r in 0..q {
        let positions: BTreeSet<usize> = beta.iter().filter(|&&b| b % q == r).map(|&b| b / q).collect();
        quotient.push(Partition::from_beta_set(&positions));
        for k in 0..positions.len() {
            core_beta.insert(k * q + r);
        }
    }
    let core = Partition::from_beta_set(&core_beta);
    let weight = (lam.size() - core.size()) / q;
    CoreQuotient {
        core,
        quotient: MultiPartition::new(quotient),
        weight,
        sign: delta_hook(lam, q),
    }
}

/// The Maya diagram of the runner pair `{i, p - i}` of a strict partition,
/// returned as (sorted descending bead positions relative to charge, charge).
fn runner_pair(lam: &Partition, p: usize, i: usize) -> (Partition, i64) {
    let max = lam.parts().first().copied().unwrap_or(0) / p + 2;
    // Positions s ≥ 0 hold a bead iff s·p + i is a part; positions -k-1 hold a
    // bead iff k·p + (p - i) is not a part.
    let mut beads: Vec<i64> = Vec::new();
    for k in 0..max {
        if lam.parts().contains(&(k * p + i)) {
            beads.push(k as i64);
        }
    }
    let mut charge = beads.len() as i64;
    let mut missing_negatives = 0i64;
    for k in 0..max {
        if lam.parts().contains(&(k * p + (p - i))) {
            missing_negatives += 1;
        } else {
            beads.push(-(k as i64) - 1);
        }
    }
    charge -= missing_negatives;
    beads.sort_unstable_by(|a, b| b.cmp(a));
    // λ_j = s_j + j - charge (1-indexed j); beads below the window are all
    // present and contribute zero parts.
    let parts: Vec<usize> = beads
        .iter()
        .enumerate()
        .map(|(j, &s)| s + j as i64 + 1 - charge)
        .filter(|&x| x > 0)
        .map(|x| x as usize)
        .collect();
    (Partition::new(parts), charge)
}

/// `p`-bar core, bar quotient `(λ_0, λ_1, …, λ_{(p-1)/2})`, weight and `δ_p̄`
/// for a strict partition and odd `p ≥ 3`.
pub fn bar_core_quotient(lam: &Partition, p: usize) -> Result<CoreQuotient, PartitionError> {
    if p.is_multiple_of(2) {
        return Err(PartitionError::EvenBar(p));
    }
    lam.require_strict()?;
    let lam0 = Partition::new(
        lam.parts()
            .iter()
            .filter(|&&x| x % p == 0)
            .map(|&x| x / p)
            .collect(),
    );
    let mut comps = vec![lam0];
    let mut core_parts = Vec::new();
    for i in 1..=(p - 1) / 2 {
        let (quot, charge) = runner_pair(lam, p, i);
        comps.push(quot);
        core_parts.extend(charge_parts(p, i, charge));
    }
    let core = Partition::new(core_parts);
    let weight = (lam.size() - core.size()) / p;
    Ok(CoreQuotient {
        core,
        quotient: MultiPartition::new(comps),
        weight,
        sign: delta_bar(lam, p)?,
    })
}

/// Parts on runners `i`, `p - i` of the bar core with the given charge.
fn charge_parts(p: usize, i: usize, charge: i64) -> Vec<usize> {
    if charge >= 0 {
        (0..charge as usize).map(|k| k * p + i).collect()
    } else {
        (0..(-charge) as usize).map(|k| k * p + (p - i)).collect()
    }
}

/// Rebuild a strict partition from its `p`-bar core and bar quotient.
pub fn from_bar_core_quotient(
    core: &Partition,
    quotient: &MultiPartition,
    p: usize,
) -> Result<Partition, PartitionError> {
    let half = (p - 1) / 2;
    if quotient.components().len() != half + 1 {
        return Err(PartitionError::BadQuotient(format!(
            "expected {} components",
            half + 1
        )));
    }
    let check = bar_core_quotient(core, p)?;
    if check.weight != 0 {
        return Err(PartitionError::BadQuotient(format!("{core} is not a {p}-bar core")));
    }
    let lam0 = &quotient.components()[0];
    lam0.require_strict()?;
    let mut parts: Vec<usize> = lam0.parts().iter().map(|&x| x * p).collect();
    for i in 1..=half {
        let (_, charge) = runner_pair(core, p, i);
        let q = &quotient.components()[i];
        // Bead positions s_j = λ_j - j + charge for j = 1..=N, padded so the
        // window reaches below every negative position that can hold a hole.
        let depth = q.len() + q.parts().first().copied().unwrap_or(0) + charge.unsigned_abs() as usize + 2;
        let beads: BTreeSet<i64> = (1..=depth)
            .map(|j| q.parts().get(j - 1).copied().unwrap_or(0) as i64 - j as i64 + charge)
            .collect();
        let lowest = charge - depth as i64;
        for &s in &beads {
            if s >= 0 {
                parts.push(s as usize * p + i);
            }
        }
        for s in lowest + 1..0 {
            if !beads.contains(&s) {
                let k = (-s - 1) as usize;
                parts.push(k * p + (p - i));
            }
        }
    }
    let out = Partition::new(parts);
    out.require_strict()?;
    Ok(out)
}

/// A multipartition: an ordered tuple of partitions.
///
/// For the wreath-type labels the components are `(λ_0, …, λ_{(p-1)/2})`
/// with `λ_0` strict.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiPartition {
    comps: Vec<Partition>,
}

impl MultiPartition {
    /// Build from components.
    pub fn new(comps: Vec<Partition>) -> Self {
        MultiPartition { comps }
    }

    /// The components.
    pub fn components(&self) -> &[Partition] {
        &self.comps
    }

    /// Total size `Σ|λ_j|`.
    pub fn size(&self) -> usize {
        self.comps.iter().map(Partition::size).sum()
    }

    /// The size vector `t(λ) = (|λ_0|, |λ_1|, …)`.
    pub fn sizes(&self) -> Vec<usize> {
        self.comps.iter().map(Partition::size).collect()
    }

    /// `σ(λ) = σ(λ_0)(-1)^{t - t_0}` for a wreath label.
    pub fn sigma(&self) -> i32 {
        let t0 = self.comps.first().map(Partition::size).unwrap_or(0);
        let s0 = self.comps.first().map(Partition::sigma).unwrap_or(1);
        s0 * sign_of(self.size() - t0)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join("|"))
    }
}

impl FromStr for MultiPartition {
    type Err = PartitionError;

    /// Parses `3|2,1|` style component lists.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let comps = s
            .trim()
            .split('|')
            .map(str::parse)
            .collect::<Result<Vec<Partition>, _>>()?;
        Ok(MultiPartition { comps })
    }
}

/// `δ_p̄(λ_0) δ_p(λ_1) ⋯ δ_p(λ_{(p-1)/2})` for a bar quotient.
pub fn quotient_sign(q: &MultiPartition, p: usize) -> Result<i32, PartitionError> {
    let mut s = 1;
    for (j, c) in q.components().iter().enumerate() {
        s *= if j == 0 { delta_bar(c, p)? } else { delta_hook(c, p) };
    }
    Ok(s)
}

/// All partitions of `n` with parts at most `max`, in reverse lexicographic order.
fn partitions_bounded(n: usize, max: usize, strict: bool, out: &mut Vec<Partition>, prefix: &mut Vec<usize>) {
    if n == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    for a in (1..=max.min(n)).rev() {
        prefix.push(a);
        let next = if strict { a - 1 } else { a };
        partitions_bounded(n - a, next, strict, out, prefix);
        prefix.pop();
    }
}

/// `P_n`: all partitions of `n`.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_bounded(n, n, false, &mut out, &mut Vec::new());
    out
}

/// `D_n`: all partitions of `n` into distinct parts.
pub fn strict_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_bounded(n, n, true, &mut out, &mut Vec::new());
    out
}

/// `D_n^+` (`sign = 1`) or `D_n^-` (`sign = -1`).
pub fn strict_partitions_signed(n: usize, sign: i32) -> Vec<Partition> {
    strict_partitions(n)
        .into_iter()
        .filter(|l| l.sigma() == sign)
        .collect()
}

/// `O_n`: all partitions of `n` into odd parts.
pub fn odd_partitions(n: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(Partition::all_odd).collect()
}

/// `Δ_t` for the prime `p`: multipartitions `(λ_0, …, λ_{(p-1)/2})` of total
/// size `t` with `λ_0` strict.
pub fn wreath_labels(t: usize, p: usize) -> Vec<MultiPartition> {
    let k = (p - 1) / 2 + 1;
    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::new();
    fn rec(t: usize, k: usize, cur: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
        if cur.len() == k {
            if t == 0 {
                out.push(MultiPartition::new(cur.clone()));
            }
            return;
        }
        let last = cur.len() + 1 == k;
        let sizes: Vec<usize> = if last { vec![t] } else { (0..=t).rev().collect() };
        for s in sizes {
            let opts = if cur.is_empty() { strict_partitions(s) } else { partitions(s) };
            for o in opts {
                cur.push(o);
                rec(t - s, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(t, k, &mut cur, &mut out);
    out
}

/// `Δ_t^+` (`sign = 1`) or `Δ_t^-` (`sign = -1`).
pub fn wreath_labels_signed(t: usize, p: usize, sign: i32) -> Vec<MultiPartition> {
    wreath_labels(t, p)
        .into_iter()
        .filter(|l| l.sigma() == sign)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hook_removal_examples() {
        assert_eq!(remove_q_hooks(&p("3"), 3), vec![(Partition::empty(), 0)]);
        assert!(remove_q_hooks(&Partition::empty(), 2).is_empty());
        assert_eq!(remove_q_hooks(&p("2,2"), 3), vec![(p("1"), 1)]);
    }

    #[test]
    fn bar_removal_examples() {
        assert_eq!(remove_q_bars(&p("3"), 3).unwrap(), vec![(Partition::empty(), 0)]);
        let r = remove_q_bars(&p("2,1"), 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, Partition::empty());
        let r = remove_q_bars(&p("4,2"), 3).unwrap();
        assert!(r.iter().any(|(m, _)| *m == p("2,1")));
        assert!(remove_q_bars(&p("2,1"), 2).is_err());
        assert!(remove_q_bars(&p("2,2"), 3).is_err());
    }

    #[test]
    fn core_examples() {
        let cq = bar_core_quotient(&p("3"), 3).unwrap();
        assert_eq!(cq.core, Partition::empty());
        assert_eq!(cq.weight, 1);
        assert_eq!(cq.quotient.components()[0].size(), 1);
        let cq = bar_core_quotient(&p("4,2"), 3).unwrap();
        assert_eq!((cq.core.clone(), cq.weight), (Partition::empty(), 2));
        let cq = bar_core_quotient(&p("2,1"), 5).unwrap();
        assert_eq!((cq.core.clone(), cq.weight, cq.sign), (p("2,1"), 0, 1));

        assert_eq!(core_quotient(&p("3"), 3).core, Partition::empty());
        let cq = core_quotient(&p("1"), 3);
        assert_eq!((cq.core, cq.weight), (p("1"), 0));
        let cq = core_quotient(&p("2,2"), 3);
        assert_eq!((cq.weight, cq.sign), (1, -1));
    }

    #[test]
    fn quotient_sign_examples() {
        assert_eq!(quotient_sign(&"||".parse().unwrap(), 5).unwrap(), 1);
        let q: MultiPartition = "3|".parse().unwrap();
        assert_eq!(quotient_sign(&q, 3).unwrap(), delta_bar(&p("3"), 3).unwrap());
        let q: MultiPartition = "|2,2".parse().unwrap();
        assert_eq!(quotient_sign(&q, 3).unwrap(), -1);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(strict_partitions(3), vec![p("3"), p("2,1")]);
        assert_eq!(odd_partitions(4), vec![p("3,1"), p("1,1,1,1")]);
        let d1 = wreath_labels(1, 3);
        assert_eq!(d1.len(), 2);
        assert!(d1.contains(&"1|".parse().unwrap()));
        assert!(d1.contains(&"|1".parse().unwrap()));
        let s: Vec<i32> = ["1|", "|1"]
            .iter()
            .map(|x| x.parse::<MultiPartition>().unwrap().sigma())
            .collect();
        assert_eq!(s, vec![1, -1]);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(10).len(), 42);
        assert_eq!(strict_partitions(10).len(), 10);
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(p("4,2").to_string(), "4,2");
        let m: MultiPartition = "3|2,1|".parse().unwrap();
        assert_eq!(m.components().len(), 3);
        assert_eq!(m.to_string(), "3|2,1|");
        assert!("2,3".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn centralizer_orders() {
        assert_eq!(p("1,1,1").z(), 6);
        assert_eq!(p("2,1").z(), 2);
        assert_eq!(p("2,2,1").z(), 8);
        assert_eq!(Partition::empty().z(), 1);
    }
}
