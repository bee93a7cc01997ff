//! `p`-blocks of spin characters: bar-core blocks of `S̃_n` and `Ã_n`,
//! their weights, the bar-quotient bijection `Ψ`, the block of spin
//! characters of the local group `Ñ_p^w S̃_w`, and the symbolic data of the
//! Brauer correspondent.

use std::fmt;

use thiserror::Error;

use crate::partitions::{
    bar_core_quotient, from_bar_core_quotient, strict_partitions, MultiPartition, Partition, PartitionError,
};
use crate::spin_sym::{alt_char_labels, sym_char_labels, SpinCharLabel, Variant};
use crate::wreath::{alt_wreath_labels, sym_wreath_labels, WreathCharLabel};

#[derive(Debug, Error)]
pub enum BlockError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("{lambda} has {p}-bar core {found}, not {expected}")]
    CoreMismatch { lambda: Partition, p: usize, found: Partition, expected: Partition },
    #[error("{core} is not a {p}-bar core")]
    NotCore { core: Partition, p: usize },
    #[error("weight {w} ≥ p = {p}: the defect group is non-abelian")]
    NonAbelianDefect { w: usize, p: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Which group the block lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `S̃_n`.
    Sym,
    /// `Ã_n`.
    Alt,
    /// The spin characters of `Ñ_p^w S̃_w`.
    Wreath,
    /// The spin characters of `Ñ_p^w S̃_w ∩ Ã_{pw}`.
    WreathAlt,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Sym => "sym",
            Side::Alt => "alt",
            Side::Wreath => "wreath",
            Side::WreathAlt => "wreath-alt",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = BlockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sym" => Ok(Side::Sym),
            "alt" => Ok(Side::Alt),
            "wreath" => Ok(Side::Wreath),
            "wreath-alt" => Ok(Side::WreathAlt),
            _ => Err(BlockError::Invalid(format!("unknown side {s:?}"))),
        }
    }
}

/// A spin character label on either side of the correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CharLabel {
    Spin(SpinCharLabel),
    Wreath(WreathCharLabel),
    Product(ProductCharLabel),
}

/// A spin character of `S̃_{n−pw}(Ñ_p^w S̃_w[n−pw])` glued from a spin
/// character of `S̃_{n−pw}` and one of `Ñ_p^w S̃_w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductCharLabel {
    pub core: SpinCharLabel,
    pub local: WreathCharLabel,
    /// The associate variant of the product (self-associate when both
    /// factors are).
    pub variant: Variant,
}

impl fmt::Display for ProductCharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} x chi^({})]{}", self.core, self.local.lambda, self.variant)
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharLabel::Spin(c) => c.fmt(f),
            CharLabel::Wreath(c) => c.fmt(f),
            CharLabel::Product(c) => c.fmt(f),
        }
    }
}

/// A `p`-block, described by its bar core and weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDescriptor {
    pub p: usize,
    pub n: usize,
    pub core: Partition,
    pub weight: usize,
    pub side: Side,
    /// For a weight-0 core whose two associate characters lie in blocks of
    /// their own: which of the two.
    pub sign_variant: Option<Variant>,
}

impl BlockDescriptor {
    /// Whether the weight-0 associate pair of the core is split into two
    /// blocks on this side.
    pub fn splits(&self) -> bool {
        self.weight == 0
            && match self.side {
                Side::Sym => self.core.sigma() == -1,
                // Ã_1 = S̃_1: the only spin character does not split.
                Side::Alt => self.core.sigma() == 1 && self.n > 1,
                Side::Wreath | Side::WreathAlt => false,
            }
    }

    pub fn abelian_defect(&self) -> bool {
        self.weight < self.p
    }
}

impl fmt::Display for BlockDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} block n={} p={} core=({}) w={}", self.side, self.n, self.p, self.core, self.weight)?;
        if let Some(v) = self.sign_variant {
            write!(f, " [{v}]")?;
        }
        Ok(())
    }
}

/// Check that `core` is a `p`-bar core.
pub fn require_core(core: &Partition, p: usize) -> Result<(), BlockError> {
    if bar_core_quotient(core, p)?.weight != 0 {
        return Err(BlockError::NotCore { core: core.clone(), p });
    }
    Ok(())
}

/// The block containing the characters labelled by the strict partition
/// `λ`. In the split weight-0 case the descriptor covers the pair and
/// [`BlockDescriptor::splits`] is true; use [`block_of_char`] to pick one.
pub fn block_of(lambda: &Partition, p: usize, side: Side) -> Result<BlockDescriptor, BlockError> {
    let cq = bar_core_quotient(lambda, p)?;
    Ok(BlockDescriptor { p, n: lambda.size(), core: cq.core, weight: cq.weight, side, sign_variant: None })
}

/// The block of one character of `S̃_n` or `Ã_n`.
pub fn block_of_char(chi: &SpinCharLabel, p: usize) -> Result<BlockDescriptor, BlockError> {
    let side = match chi.ambient {
        crate::spin_sym::Ambient::Sym => Side::Sym,
        crate::spin_sym::Ambient::Alt => Side::Alt,
    };
    let mut b = block_of(&chi.lambda, p, side)?;
    if b.splits() {
        b.sign_variant = Some(chi.variant);
    }
    Ok(b)
}

/// The descriptor of the block with the given core and weight.
pub fn block(n: usize, p: usize, core: &Partition, side: Side) -> Result<BlockDescriptor, BlockError> {
    require_core(core, p)?;
    if core.size() > n || !(n - core.size()).is_multiple_of(p) {
        return Err(BlockError::Invalid(format!("|{core}| ≢ {n} mod {p}")));
    }
    Ok(BlockDescriptor { p, n, core: core.clone(), weight: (n - core.size()) / p, side, sign_variant: None })
}

/// All blocks of spin characters of `S̃_n` or `Ã_n`, split weight-0 pairs
/// listed as two blocks.
pub fn blocks_of(n: usize, p: usize, side: Side) -> Result<Vec<BlockDescriptor>, BlockError> {
    if !matches!(side, Side::Sym | Side::Alt) {
        return Err(BlockError::Invalid("blocks_of lists blocks of S̃_n or Ã_n".into()));
    }
    let mut out: Vec<BlockDescriptor> = Vec::new();
    for lambda in strict_partitions(n) {
        let b = block_of(&lambda, p, side)?;
        if b.splits() {
            for v in [Variant::Plus, Variant::Minus] {
                out.push(BlockDescriptor { sign_variant: Some(v), ..b.clone() });
            }
        } else if !out.contains(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

/// The strict partitions of `n` with `p`-bar core `γ` (`E_γ ∩ D_n`).
pub fn core_members(n: usize, p: usize, core: &Partition) -> Result<Vec<Partition>, BlockError> {
    let mut out = Vec::new();
    for lambda in strict_partitions(n) {
        if bar_core_quotient(&lambda, p)?.core == *core {
            out.push(lambda);
        }
    }
    Ok(out)
}

/// All spin character labels in the block.
pub fn block_characters(b: &BlockDescriptor) -> Result<Vec<CharLabel>, BlockError> {
    match b.side {
        Side::Sym | Side::Alt => {
            let labels = if b.side == Side::Sym { sym_char_labels(b.n) } else { alt_char_labels(b.n) };
            let mut out = Vec::new();
            for chi in labels {
                if bar_core_quotient(&chi.lambda, b.p)?.core != b.core {
                    continue;
                }
                if b.sign_variant.is_some_and(|v| v != chi.variant) {
                    continue;
                }
                out.push(CharLabel::Spin(chi));
            }
            Ok(out)
        }
        Side::Wreath => Ok(sym_wreath_labels(b.p, b.weight).into_iter().map(CharLabel::Wreath).collect()),
        Side::WreathAlt => Ok(alt_wreath_labels(b.p, b.weight).into_iter().map(CharLabel::Wreath).collect()),
    }
}

/// `Ψ(λ) = λ^{(p̄)}`, the `p`-bar quotient of `λ ∈ E_γ`.
pub fn psi(lambda: &Partition, core: &Partition, p: usize) -> Result<MultiPartition, BlockError> {
    let cq = bar_core_quotient(lambda, p)?;
    if cq.core != *core {
        return Err(BlockError::CoreMismatch {
            lambda: lambda.clone(),
            p,
            found: cq.core,
            expected: core.clone(),
        });
    }
    Ok(cq.quotient)
}

/// `Ψ^{-1}`: the strict partition with core `γ` and bar quotient `q`.
pub fn psi_inverse(q: &MultiPartition, core: &Partition, p: usize) -> Result<Partition, BlockError> {
    Ok(from_bar_core_quotient(core, q, p)?)
}

/// The defect group of a block with abelian defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefectGroup {
    Trivial,
    /// `C_p^w`.
    Elementary { p: usize, rank: usize },
}

impl fmt::Display for DefectGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefectGroup::Trivial => f.write_str("1"),
            DefectGroup::Elementary { p, rank } => write!(f, "C_{p}^{rank}"),
        }
    }
}

/// The block idempotent of the Brauer correspondent, named by the block(s)
/// of the smaller cover it is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorrespondentIdempotent {
    /// `e_{m,γ}` of `S̃_m`.
    Sym { m: usize, core: Partition },
    /// `e^+_{m,γ} + e^-_{m,γ}`.
    SymPair { m: usize, core: Partition },
    /// `ē_{m,γ}` of `Ã_m`.
    Alt { m: usize, core: Partition },
    /// `ē^+_{m,γ} + ē^-_{m,γ}`.
    AltPair { m: usize, core: Partition },
}

impl fmt::Display for CorrespondentIdempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrespondentIdempotent::Sym { m, core } => write!(f, "e_{{{m},({core})}}"),
            CorrespondentIdempotent::SymPair { m, core } => write!(f, "e+_{{{m},({core})}} + e-_{{{m},({core})}}"),
            CorrespondentIdempotent::Alt { m, core } => write!(f, "ebar_{{{m},({core})}}"),
            CorrespondentIdempotent::AltPair { m, core } => {
                write!(f, "ebar+_{{{m},({core})}} + ebar-_{{{m},({core})}}")
            }
        }
    }
}

/// Defect group and Brauer correspondent of a block of `S̃_n` or `Ã_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerData {
    pub defect: DefectGroup,
    /// `N(P) = S̃_{n−pw} N_{S̃_{pw}}(P)` (intersected with `Ã_n` on the
    /// alternating side), with `N_{S̃_{pw}}(P) ≅ Ñ_p^w S̃_w`.
    pub normalizer: String,
    pub idempotent: CorrespondentIdempotent,
}

pub fn brauer_data(b: &BlockDescriptor) -> Result<BrauerData, BlockError> {
    if !b.abelian_defect() {
        return Err(BlockError::NonAbelianDefect { w: b.weight, p: b.p });
    }
    let m = b.n - b.p * b.weight;
    let core = b.core.clone();
    let positive = core.sigma() == 1;
    let (defect, idempotent) = if b.weight == 0 {
        let idem = match b.side {
            Side::Sym => CorrespondentIdempotent::Sym { m, core },
            Side::Alt => CorrespondentIdempotent::Alt { m, core },
            _ => return Err(BlockError::Invalid("Brauer data of a local block".into())),
        };
        (DefectGroup::Trivial, idem)
    } else {
        let idem = match (b.side, positive) {
            (Side::Sym, true) => CorrespondentIdempotent::Sym { m, core },
            (Side::Sym, false) => CorrespondentIdempotent::SymPair { m, core },
            (Side::Alt, true) => CorrespondentIdempotent::AltPair { m, core },
            (Side::Alt, false) => CorrespondentIdempotent::Alt { m, core },
            _ => return Err(BlockError::Invalid("Brauer data of a local block".into())),
        };
        (DefectGroup::Elementary { p: b.p, rank: b.weight }, idem)
    };
    let normalizer = match b.side {
        Side::Sym => format!("S~_{m} . N~_{}^{} S~_{}", b.p, b.weight, b.weight),
        _ => format!("(S~_{m} . N~_{}^{} S~_{}) ∩ A~_{}", b.p, b.weight, b.weight, b.n),
    };
    Ok(BrauerData { defect, normalizer, idempotent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Cover;
    use crate::covers::ClassInfo;
    use crate::cyclo::CycloNum;
    use crate::partitions::wreath_labels;
    use crate::spin_sym::spin_table_sym;
    use std::collections::HashSet;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn block_of_examples() {
        let b = block_of(&part("4,2"), 3, Side::Sym).unwrap();
        assert_eq!((b.core.clone(), b.weight), (Partition::empty(), 2));
        let b = block_of(&part("2,1"), 5, Side::Sym).unwrap();
        assert_eq!((b.core.clone(), b.weight), (part("2,1"), 0));
        assert!(b.splits());
        assert!(!block_of(&part("2,1"), 5, Side::Alt).unwrap().splits());
        let b = block_of(&part("3"), 3, Side::Sym).unwrap();
        assert_eq!((b.core, b.weight), (Partition::empty(), 1));
    }

    #[test]
    fn block_characters_examples() {
        let b = block(6, 3, &Partition::empty(), Side::Sym).unwrap();
        let chars = block_characters(&b).unwrap();
        let mut expect = 0;
        for l in strict_partitions(6) {
            if bar_core_quotient(&l, 3).unwrap().core.is_empty() {
                expect += if l.sigma() == 1 { 1 } else { 2 };
            }
        }
        assert_eq!(chars.len(), expect);
        let wb = BlockDescriptor { side: Side::Wreath, ..block(3, 3, &Partition::empty(), Side::Sym).unwrap() };
        assert_eq!(block_characters(&wb).unwrap().len(), 3);
        let b0 = BlockDescriptor { sign_variant: Some(Variant::Minus), ..block(3, 5, &part("2,1"), Side::Sym).unwrap() };
        assert_eq!(block_characters(&b0).unwrap().len(), 1);
    }

    #[test]
    fn blocks_partition_irr() {
        for p in [3, 5, 7] {
            for n in 1..=14 {
                for side in [Side::Sym, Side::Alt] {
                    let all = if side == Side::Sym { sym_char_labels(n) } else { alt_char_labels(n) };
                    let mut seen = HashSet::new();
                    let mut total = 0;
                    for b in blocks_of(n, p, side).unwrap() {
                        for c in block_characters(&b).unwrap() {
                            assert!(seen.insert(c.to_string()), "{c} in two blocks");
                            total += 1;
                        }
                    }
                    assert_eq!(total, all.len(), "n={n} p={p} {side}");
                }
            }
        }
    }

    #[test]
    fn psi_is_a_bijection_onto_delta_w() {
        for p in [3, 5] {
            for n in 0..=14 {
                let mut cores: Vec<Partition> = Vec::new();
                for l in strict_partitions(n) {
                    let c = bar_core_quotient(&l, p).unwrap().core;
                    if !cores.contains(&c) {
                        cores.push(c);
                    }
                }
                for core in cores {
                    let w = (n - core.size()) / p;
                    let members = core_members(n, p, &core).unwrap();
                    let images: HashSet<MultiPartition> =
                        members.iter().map(|l| psi(l, &core, p).unwrap()).collect();
                    assert_eq!(images.len(), members.len());
                    let delta: HashSet<MultiPartition> = wreath_labels(w, p).into_iter().collect();
                    assert_eq!(images, delta, "n={n} p={p} core={core}");
                    for l in &members {
                        let q = psi(l, &core, p).unwrap();
                        assert_eq!(&psi_inverse(&q, &core, p).unwrap(), l);
                        if core.sigma() == 1 {
                            assert_eq!(l.sigma(), q.sigma());
                        } else {
                            assert_eq!(l.sigma(), -q.sigma());
                        }
                    }
                }
            }
        }
        assert!(psi(&part("3"), &part("1"), 3).is_err());
    }

    #[test]
    fn brauer_data_cases() {
        let b = block(9, 3, &Partition::empty(), Side::Sym).unwrap();
        assert!(matches!(brauer_data(&b), Err(BlockError::NonAbelianDefect { .. })));
        let b = block(5, 3, &part("2"), Side::Sym).unwrap();
        let d = brauer_data(&b).unwrap();
        assert_eq!(d.defect, DefectGroup::Elementary { p: 3, rank: 1 });
        assert_eq!(d.idempotent, CorrespondentIdempotent::SymPair { m: 2, core: part("2") });
        let b = block(4, 3, &part("1"), Side::Alt).unwrap();
        assert_eq!(brauer_data(&b).unwrap().idempotent, CorrespondentIdempotent::AltPair { m: 1, core: part("1") });
        let b = block(3, 5, &part("2,1"), Side::Sym).unwrap();
        assert_eq!(brauer_data(&b).unwrap().defect, DefectGroup::Trivial);
    }

    /// The equivalence classes generated by `⟨res_C χ, res_C ψ⟩ ≠ 0`.
    fn c_blocks<L>(values: &[Vec<CycloNum>], classes: &[ClassInfo<L>], in_c: &[bool]) -> Vec<usize> {
        let k = values.len();
        let mut comp: Vec<usize> = (0..k).collect();
        fn find(c: &mut Vec<usize>, i: usize) -> usize {
            if c[i] != i {
                let r = find(c, c[i]);
                c[i] = r;
            }
            c[i]
        }
        for i in 0..k {
            for j in i + 1..k {
                let mut acc = CycloNum::zero();
                for (c, cls) in classes.iter().enumerate() {
                    if in_c[c] {
                        acc += (&values[i][c] * &values[j][c].conj()).scale_int(cls.size as i64);
                    }
                }
                if !acc.is_zero() {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        (0..k).map(|i| find(&mut comp, i)).collect()
    }

    #[test]
    fn bar_core_blocks_are_unions_of_c_blocks() {
        let p = 3;
        let mut merged = 0;
        for n in 2..=8 {
            let t = spin_table_sym(n, Cover::Minus);
            let in_c: Vec<bool> = t
                .classes
                .iter()
                .map(|c| !c.label.cycle_type.parts().iter().any(|&q| q % p == 0 && (q / p) % 2 == 1))
                .collect();
            let comp = c_blocks(&t.values, &t.classes, &in_c);
            merged += t.chars.len() - comp.iter().collect::<HashSet<_>>().len();
            for i in 0..t.chars.len() {
                for j in 0..t.chars.len() {
                    if comp[i] == comp[j] {
                        let bi = block_of_char(&t.chars[i], p).unwrap();
                        let bj = block_of_char(&t.chars[j], p).unwrap();
                        assert_eq!(bi, bj, "n={n}: {} and {} share a C-block", t.chars[i], t.chars[j]);
                    }
                }
            }
        }
        assert!(merged > 0, "every C-block is a singleton");
    }
}
