//! Brute-force matrix construction of the spin characters of `Ñ_p^t S̃_t`.
//!
//! For every label `λ` an explicit representation of `H = Ñ_p^t S̃_{t(λ)}`
//! is written down on generators: the monomial module `U` of `ζ_0` on the
//! `λ_0`-blocks with the swap operators `T_j`, tensored with a module of
//! `S̃_{t_0}` for `ξ_{λ_0}`; Jordan–Wigner Clifford modules carrying the
//! linear characters `ζ_j^+` on the remaining blocks, tensored with Young's
//! seminormal Specht modules. The assignment is extended to all of `H` by
//! breadth-first search, checking at every revisit that it is a
//! homomorphism. Characters are traces; associators give the splitting on
//! the even subgroup; induction to `G'` is the full Frobenius sum over the
//! elements of `H` in each class.
//!
//! The oracle handles `|λ_0| ≤ 3`, i.e. every label for `t ≤ 3`.

use std::collections::{BTreeMap, VecDeque};

use crate::clifford::{self, CliffordElt};
use crate::covers::{classify_alt, classify_sym, CoverElt};
use crate::cyclo::CycloNum;
use crate::partitions::{MultiPartition, Partition};
use crate::spin_sym::{xi_alt_value, xi_value, Ambient, SpinCharLabel, Variant};

use super::{alt_wreath_labels, sym_wreath_labels, LocalGroup, LocalTable, WreathError};

/// A sparse square matrix over `CycloNum`, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMat {
    rows: Vec<BTreeMap<usize, CycloNum>>,
}

impl SMat {
    pub fn zero(n: usize) -> Self {
        SMat { rows: vec![BTreeMap::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, CycloNum::one())
    }

    pub fn scalar(n: usize, c: CycloNum) -> Self {
        let mut m = Self::zero(n);
        if !c.is_zero() {
            for i in 0..n {
                m.rows[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn diag(d: &[CycloNum]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn set(&mut self, i: usize, j: usize, c: CycloNum) {
        if c.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, c);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> CycloNum {
        self.rows[i].get(&j).cloned().unwrap_or_else(CycloNum::zero)
    }

    pub fn mul(&self, other: &SMat) -> SMat {
        let n = self.dim();
        let mut out = SMat::zero(n);
        for i in 0..n {
            let mut acc: BTreeMap<usize, CycloNum> = BTreeMap::new();
            for (k, a) in &self.rows[i] {
                for (j, b) in &other.rows[*k] {
                    *acc.entry(*j).or_insert_with(CycloNum::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &SMat) -> SMat {
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                let s = &out.get(i, *j) + v;
                out.set(i, *j, s);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> SMat {
        let mut out = SMat::zero(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out.set(i, *j, v * c);
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &SMat) -> SMat {
        let (n, m) = (self.dim(), other.dim());
        let mut out = SMat::zero(n * m);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, a) in row {
                for (k, orow) in other.rows.iter().enumerate() {
                    for (l, b) in orow {
                        out.rows[i * m + k].insert(j * m + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CycloNum {
        self.rows.iter().enumerate().filter_map(|(i, r)| r.get(&i).cloned()).sum()
    }
}

fn kron_all(ms: &[SMat]) -> SMat {
    ms.iter().fold(SMat::identity(1), |acc, m| acc.kron(m))
}

fn pow_kron(m: &SMat, k: usize) -> SMat {
    kron_all(&vec![m.clone(); k])
}

// ---------------------------------------------------------------------------
// Building blocks.
// ---------------------------------------------------------------------------

/// `ρ(h)` on the monomial module `U` of `ζ_0`.
pub fn zeta0_matrix(lg: &LocalGroup, h: &CoverElt) -> Result<SMat, WreathError> {
    let mono = lg.ntilde.monomial(h)?;
    let mut m = SMat::zero(mono.len());
    for (k, (k2, c)) in mono.into_iter().enumerate() {
        m.set(k2, k, c);
    }
    Ok(m)
}

/// The associator `S` of `ζ_0`.
pub fn associator(lg: &LocalGroup) -> SMat {
    let d = lg.p - 1;
    SMat::diag(&(0..d).map(|k| CycloNum::from_int(lg.ntilde.s_entry(k) as i64)).collect::<Vec<_>>())
}

/// The swap `T(u_a ⊗ u_b) = η u_b ⊗ u_a` on `U ⊗ U`, `η = −1` iff both
/// vectors lie in `U^−`.
pub fn swap_operator(lg: &LocalGroup) -> SMat {
    let d = lg.p - 1;
    let mut m = SMat::zero(d * d);
    for a in 0..d {
        for b in 0..d {
            let minus = lg.ntilde.s_entry(a) < 0 && lg.ntilde.s_entry(b) < 0;
            m.set(b * d + a, a * d + b, CycloNum::from_int(if minus { -1 } else { 1 }));
        }
    }
    m
}

/// `T_j = S^{⊗(j−1)} ⊗ T ⊗ S^{⊗(n−j−1)}` on `U^{⊗n}` (1-based `j`).
pub fn swap_on_tensor(lg: &LocalGroup, n: usize, j: usize) -> SMat {
    let s = associator(lg);
    kron_all(&[pow_kron(&s, j - 1), swap_operator(lg), pow_kron(&s, n - j - 1)])
}

/// The action of a base element `x` supported on block `k < n` on `U^{⊗n}`.
fn base_on_tensor(lg: &LocalGroup, n: usize, x: &CoverElt, k: usize) -> Result<SMat, WreathError> {
    let xp = lg.to_ntilde(x, k);
    let d = lg.p - 1;
    let left = if xp.is_even() { SMat::identity(d.pow(k as u32)) } else { pow_kron(&associator(lg), k) };
    Ok(kron_all(&[left, zeta0_matrix(lg, &xp)?, SMat::identity(d.pow((n - k - 1) as u32))]))
}

/// Jordan–Wigner generators of the Clifford module of `C_m` with
/// `Tr(e_{[m]}) = (2i)^k` for odd `m = 2k+1`.
pub fn jordan_wigner(m: usize) -> Vec<SMat> {
    let i = CycloNum::i();
    let one = CycloNum::one;
    let zero = CycloNum::zero;
    let mk = |a: [CycloNum; 4]| {
        let mut s = SMat::zero(2);
        s.set(0, 0, a[0].clone());
        s.set(0, 1, a[1].clone());
        s.set(1, 0, a[2].clone());
        s.set(1, 1, a[3].clone());
        s
    };
    let x = mk([zero(), one(), one(), zero()]);
    let y = mk([zero(), -&i, i.clone(), zero()]);
    let z = mk([one(), zero(), zero(), -one()]);
    let k = m / 2;
    let mut gens = Vec::new();
    for a in 0..k {
        let pre = pow_kron(&z, a);
        let post = SMat::identity(1 << (k - a - 1));
        gens.push(kron_all(&[pre.clone(), x.clone(), post.clone()]));
        gens.push(kron_all(&[pre, y.clone(), post]));
    }
    if m % 2 == 1 {
        let mut last = pow_kron(&z, k);
        let top = gens.iter().fold(SMat::identity(1 << k), |acc, g| acc.mul(g)).mul(&last);
        let want = (CycloNum::from_int(2) * CycloNum::i()).pow(k as u32);
        if top.trace() != want {
            last = last.scale(&CycloNum::from_int(-1));
        }
        gens.push(last);
    }
    gens
}

/// The matrix of a Clifford element in the module spanned by `gens`.
pub fn clifford_matrix(x: &CliffordElt, gens: &[SMat]) -> SMat {
    let dim = gens.first().map(SMat::dim).unwrap_or(1);
    let mut out = SMat::zero(dim);
    for (mask, c) in x.terms() {
        let mut b = SMat::identity(dim);
        for (j, g) in gens.iter().enumerate() {
            if mask >> j & 1 == 1 {
                b = b.mul(g);
            }
        }
        out = out.add(&b.scale(c));
    }
    out
}

/// Standard Young tableaux of a shape, each as the `(row, col)` of
/// `1, …, n`.
fn standard_tableaux(shape: &Partition) -> Vec<Vec<(usize, usize)>> {
    fn rec(shape: &[usize], filled: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == shape.iter().sum::<usize>() {
            out.push(cur.clone());
            return;
        }
        for r in 0..shape.len() {
            let c = filled[r];
            if c < shape[r] && (r == 0 || filled[r - 1] > c) {
                filled[r] += 1;
                cur.push((r, c));
                rec(shape, filled, cur, out);
                cur.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape.parts(), &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out
}

/// Young's seminormal form: the matrix of the transposition `(i, i+1)`
/// (1-based `i`) on the Specht module of `shape`.
pub fn seminormal(shape: &Partition, i: usize) -> SMat {
    let tabs = standard_tableaux(shape);
    let index: BTreeMap<Vec<(usize, usize)>, usize> = tabs.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let mut m = SMat::zero(tabs.len());
    for (k, t) in tabs.iter().enumerate() {
        let (a, b) = (t[i - 1], t[i]);
        if a.0 == b.0 {
            m.set(k, k, CycloNum::one());
            continue;
        }
        if a.1 == b.1 {
            m.set(k, k, -CycloNum::one());
            continue;
        }
        let content = |(r, c): (usize, usize)| c as i64 - r as i64;
        let rho = CycloNum::frac(1, content(b) - content(a));
        let mut u = t.clone();
        u.swap(i - 1, i);
        let k2 = index[&u];
        m.set(k, k, rho.clone());
        // v_T ↦ ρ v_T + v_{T'} when i+1 lies in a lower row of T.
        let coeff = if a.0 < b.0 { CycloNum::one() } else { &CycloNum::one() - &(&rho * &rho) };
        m.set(k2, k, coeff);
    }
    m
}

/// A spin module of `S̃_{n}` (`n ≤ 3`) for `ξ_{λ_0}`: the generator
/// matrices and, for self-associate `λ_0`, the associator.
fn xi_module(lg: &LocalGroup, lambda0: &Partition) -> Result<(Vec<SMat>, SMat), WreathError> {
    let n = lambda0.size();
    let cover = lg.t_cover;
    let sa = lambda0.sigma() == 1;
    let label = SpinCharLabel {
        lambda: lambda0.clone(),
        variant: if sa { Variant::SelfAssoc } else { Variant::Plus },
        ambient: Ambient::Sym,
    };
    if *lambda0 == Partition::new(vec![3]) {
        let gens = jordan_wigner(3);
        let mats: Vec<SMat> = (1..n)
            .map(|j| Ok(clifford_matrix(&clifford::phi(cover, n, j)?, &gens)))
            .collect::<Result<_, WreathError>>()?;
        let v = (0..n).fold(SMat::zero(2), |acc, j| {
            let s = if j % 2 == 0 { CycloNum::one() } else { -CycloNum::one() };
            acc.add(&gens[j].scale(&s))
        });
        let mut a = v.scale(&CycloNum::sqrt_int(3).expect("3").inv().expect("nonzero"));
        // Match the sign with ξ̄^+ − ξ̄^− at the 3-cycle t_1 t_2.
        let x = CoverElt::lift(vec![1, 2, 0], cover)?;
        let word = clifford::canonical_word(x.perm());
        let mx = word.iter().fold(SMat::identity(2), |acc, &j| acc.mul(&mats[j - 1]));
        let cls = classify_alt(&x)?;
        let lab = |variant| SpinCharLabel { lambda: lambda0.clone(), variant, ambient: Ambient::Alt };
        let want = xi_alt_value(&lab(Variant::Plus), &cls)? - xi_alt_value(&lab(Variant::Minus), &cls)?;
        if a.mul(&mx).trace() != want {
            a = a.scale(&CycloNum::from_int(-1));
        }
        return Ok((mats, a));
    }
    if n > 3 || (sa && n > 1) {
        return Err(WreathError::Unsupported(format!("oracle module for ξ_{lambda0}")));
    }
    let mats = (1..n)
        .map(|j| {
            let g = CoverElt::generator(n, j, cover)?;
            Ok(SMat::scalar(1, xi_value(&label, &classify_sym(&g), cover)?))
        })
        .collect::<Result<_, WreathError>>()?;
    Ok((mats, SMat::identity(1)))
}

/// An explicit representation of `H = Ñ_p^t S̃_{t(λ)}`, with traces on all
/// of its elements.
#[derive(Debug)]
pub struct OracleRep {
    pub dim: usize,
    /// `(element index in G', Tr ρ(h), Tr A ρ(h) for even h when λ is self-associate)`.
    pub traces: Vec<(usize, CycloNum, CycloNum)>,
}

/// Build the representation of `λ` and evaluate it on every element of `H`.
pub fn oracle_rep(lg: &LocalGroup, lambda: &MultiPartition) -> Result<OracleRep, WreathError> {
    let p = lg.p;
    let t = lg.t;
    let comps = lambda.components();
    let t0 = comps[0].size();
    let m = t - t0;
    let d = p - 1;
    let sa1 = t0 == 0 || comps[0].sigma() == 1;
    let sa2 = m.is_multiple_of(2);

    // Factor 1: U^{⊗t0} ⊗ W.
    let (w_gens, a_w) = if t0 == 0 { (Vec::new(), SMat::identity(1)) } else { xi_module(lg, &comps[0])? };
    let w_dim = a_w.dim();
    let dim1 = d.pow(t0 as u32) * w_dim;
    let s1 = pow_kron(&associator(lg), t0).kron(&a_w);

    // Factor 2: C_m module ⊗ Specht modules.
    let cliff = jordan_wigner(m);
    let c_dim = if m == 0 { 1 } else { cliff[0].dim() };
    let specht_dims: Vec<usize> = comps[1..].iter().map(|c| standard_tableaux(c).len()).collect();
    let sym_dim: usize = specht_dims.iter().product();
    let dim2 = c_dim * sym_dim;
    let s2 = if m == 0 {
        SMat::identity(1)
    } else if sa2 {
        let top = cliff.iter().fold(SMat::identity(c_dim), |acc, g| acc.mul(g));
        let k = (m / 2) as u32;
        let sign = if (m * (m - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        let kappa = (CycloNum::from_int(2) * CycloNum::i()).pow(k).div_int(sign * (1i64 << k));
        top.scale(&kappa).kron(&SMat::identity(sym_dim))
    } else {
        SMat::identity(dim2)
    };

    let mut seg_of = vec![0usize; t];
    let mut seg_start = vec![0usize; comps.len()];
    let mut start = 0;
    for (j, c) in comps.iter().enumerate() {
        seg_start[j] = start;
        for b in start..start + c.size() {
            seg_of[b] = j;
        }
        start += c.size();
    }

    // Glue: (ρ1, ρ2, odd-in-1, odd-in-2) ↦ matrix on the total space.
    let extra = if !sa1 && !sa2 { 2 } else { 1 };
    let i1 = SMat::identity(dim1);
    let i2 = SMat::identity(dim2);
    let f = jordan_wigner(2);
    let glue1 = |r1: SMat, odd: bool| -> SMat {
        match (sa1, sa2) {
            (false, true) if odd => kron_all(&[r1, s2.clone()]),
            (false, false) => kron_all(&[r1, i2.clone(), if odd { f[0].clone() } else { SMat::identity(2) }]),
            _ => kron_all(&[r1, i2.clone()]),
        }
    };
    let glue2 = |r2: SMat, odd: bool| -> SMat {
        match (sa1, sa2) {
            (true, _) if odd => kron_all(&[s1.clone(), r2]),
            (false, false) => kron_all(&[i1.clone(), r2, if odd { f[1].clone() } else { SMat::identity(2) }]),
            _ => kron_all(&[i1.clone(), r2]),
        }
    };
    let assoc = match (sa1, sa2) {
        (true, true) => Some(kron_all(&[s1.clone(), s2.clone()])),
        (false, false) => {
            let g = f[0].mul(&f[1]).scale(&(-CycloNum::i()));
            Some(kron_all(&[i1.clone(), i2.clone(), g]))
        }
        _ => None,
    };
    let dim = dim1 * dim2 * extra;

    // Generators of H and their matrices.
    let mut gens: Vec<(CoverElt, SMat)> = Vec::new();
    for k in 0..t {
        for g in &lg.group.generators[2 * k..2 * k + 2] {
            let odd = !g.is_even();
            if k < t0 {
                let r = base_on_tensor(lg, t0, g, k)?.kron(&SMat::identity(w_dim));
                gens.push((g.clone(), glue1(r, odd)));
            } else {
                let xp = lg.to_ntilde(g, k);
                let j = seg_of[k];
                let zeta = lg.ntilde.linear(j, Variant::Plus, &xp)?;
                let mut c = SMat::scalar(c_dim, zeta);
                if odd {
                    c = c.mul(&cliff[k - t0]);
                }
                gens.push((g.clone(), glue2(c.kron(&SMat::identity(sym_dim)), odd)));
            }
        }
    }
    for b in 1..t {
        if seg_of[b - 1] != seg_of[b] {
            continue;
        }
        let g = lg.swap(b).clone();
        if b < t0 {
            let r = swap_on_tensor(lg, t0, b).kron(&w_gens[b - 1]);
            gens.push((g, glue1(r, true)));
        } else {
            let j = seg_of[b];
            let local = b - seg_start[j];
            let c = clifford_matrix(&clifford::phi(lg.t_cover, m, b - t0)?, &cliff);
            let mut sym = Vec::new();
            for (jj, comp) in comps[1..].iter().enumerate() {
                sym.push(if jj + 1 == j { seminormal(comp, local) } else { SMat::identity(specht_dims[jj]) });
            }
            gens.push((g, glue2(c.kron(&kron_all(&sym)), true)));
        }
    }
    gens.push((CoverElt::central(p * t, lg.cover), SMat::scalar(dim, -CycloNum::one())));

    // Breadth-first extension with the homomorphism check.
    let id = lg.group.index_of(&CoverElt::identity(p * t, lg.cover)).expect("identity");
    let mut rho: Vec<Option<SMat>> = vec![None; lg.order()];
    rho[id] = Some(SMat::identity(dim));
    let mut queue = VecDeque::from([id]);
    let mut order = vec![id];
    while let Some(i) = queue.pop_front() {
        let ri = rho[i].clone().expect("visited");
        for (g, mg) in &gens {
            let y = &lg.group.elements[i] * g;
            let j = lg.group.index_of(&y).expect("in group");
            let ry = ri.mul(mg);
            match &rho[j] {
                Some(prev) => {
                    if *prev != ry {
                        return Err(WreathError::Malformed(format!(
                            "oracle assignment for {lambda} is not a homomorphism at {y}"
                        )));
                    }
                }
                None => {
                    rho[j] = Some(ry);
                    queue.push_back(j);
                    order.push(j);
                }
            }
        }
    }
    let traces = order
        .into_iter()
        .map(|i| {
            let r = rho[i].as_ref().expect("visited");
            let diff = match &assoc {
                Some(a) if lg.group.elements[i].is_even() => a.mul(r).trace(),
                _ => CycloNum::zero(),
            };
            (i, r.trace(), diff)
        })
        .collect();
    Ok(OracleRep { dim, traces })
}

/// The spin character tables of `G'` and of its even subgroup computed by
/// the matrix construction, in the same row and column order as
/// [`LocalGroup::sym_table`] and [`LocalGroup::alt_table`].
pub fn matrix_oracle(
    lg: &LocalGroup,
) -> Result<(LocalTable<crate::covers::WreathClassLabel>, LocalTable<super::AltWreathClassLabel>), WreathError> {
    let g = lg.order() as i64;
    let nsym = lg.group.classes.len();
    let nalt = lg.alt_classes.len();
    let mut sym_rows: BTreeMap<MultiPartition, Vec<CycloNum>> = BTreeMap::new();
    let mut alt_rows: BTreeMap<MultiPartition, (Vec<CycloNum>, Vec<CycloNum>)> = BTreeMap::new();
    for chi in sym_wreath_labels(lg.p, lg.t) {
        if sym_rows.contains_key(&chi.lambda) {
            continue;
        }
        let rep = oracle_rep(lg, &chi.lambda)?;
        let h = rep.traces.len() as i64;
        let mut sums = vec![CycloNum::zero(); nsym];
        let mut plus = vec![CycloNum::zero(); nalt];
        let mut minus = vec![CycloNum::zero(); nalt];
        for (i, tr, diff) in &rep.traces {
            sums[lg.group.class_of_index(*i)] += tr;
            if let Some(a) = lg.alt_class_index(&lg.group.elements[*i]) {
                plus[a] += (tr + diff).div_int(2);
                minus[a] += (tr - diff).div_int(2);
            }
        }
        let row: Vec<CycloNum> = sums
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.scale_int(g).div_int(lg.group.classes[c].info.size as i64 * h))
            .collect();
        let fin = |r: Vec<CycloNum>| -> Vec<CycloNum> {
            r.into_iter()
                .enumerate()
                .map(|(c, v)| v.scale_int(g).div_int(lg.alt_classes[c].info.size as i64 * h))
                .collect()
        };
        let (plus, minus) = if chi.lambda.sigma() == 1 {
            (fin(plus), fin(minus))
        } else {
            let r: Vec<CycloNum> = lg.alt_classes.iter().map(|c| row[c.parent].clone()).collect();
            (r.clone(), r)
        };
        sym_rows.insert(chi.lambda.clone(), row);
        alt_rows.insert(chi.lambda.clone(), (plus, minus));
    }
    let sym_chars = sym_wreath_labels(lg.p, lg.t);
    let sym_values = sym_chars
        .iter()
        .map(|c| {
            sym_rows[&c.lambda]
                .iter()
                .zip(&lg.group.classes)
                .map(|(v, cl)| if c.variant == Variant::Minus && !cl.info.rep.is_even() { -v } else { v.clone() })
                .collect()
        })
        .collect();
    let alt_chars = alt_wreath_labels(lg.p, lg.t);
    let alt_values = alt_chars
        .iter()
        .map(|c| {
            let (pl, mi) = &alt_rows[&c.lambda];
            if c.variant == Variant::Minus {
                mi.clone()
            } else {
                pl.clone()
            }
        })
        .collect();
    Ok((
        LocalTable {
            chars: sym_chars,
            classes: lg.group.classes.iter().map(|c| c.info.clone()).collect(),
            values: sym_values,
            order: g as u128,
        },
        LocalTable {
            chars: alt_chars,
            classes: lg.alt_classes.iter().map(|c| c.info.clone()).collect(),
            values: alt_values,
            order: g as u128 / 2,
        },
    ))
}

/// Entry-wise differences between two tables with the same layout:
/// `(character, class, left, right)`.
pub fn table_diffs<L: std::fmt::Display>(a: &LocalTable<L>, b: &LocalTable<L>) -> Vec<(String, String, CycloNum, CycloNum)> {
    let mut out = Vec::new();
    for (i, chi) in a.chars.iter().enumerate() {
        for (c, cl) in a.classes.iter().enumerate() {
            if a.values[i][c] != b.values[i][c] {
                out.push((chi.to_string(), cl.label.to_string(), a.values[i][c].clone(), b.values[i][c].clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Cover;

    #[test]
    fn seminormal_relations() {
        for shape in ["2,1", "3,1", "2,2", "3,2", "2,1,1"] {
            let sh: Partition = shape.parse().unwrap();
            let n = sh.size();
            let s: Vec<SMat> = (1..n).map(|i| seminormal(&sh, i)).collect();
            let dim = s[0].dim();
            for i in 0..n - 1 {
                assert_eq!(s[i].mul(&s[i]), SMat::identity(dim), "{shape}");
                if i + 1 < n - 1 {
                    let a = s[i].mul(&s[i + 1]);
                    assert_eq!(a.mul(&a).mul(&a), SMat::identity(dim), "{shape} braid");
                }
                for j in i + 2..n - 1 {
                    assert_eq!(s[i].mul(&s[j]), s[j].mul(&s[i]));
                }
            }
        }
    }

    #[test]
    fn associator_and_swap_identities() {
        for p in [3, 5] {
            let lg = LocalGroup::new(p, 1, Cover::Plus).unwrap();
            let d = p - 1;
            let s = associator(&lg);
            assert_eq!(s.mul(&s), SMat::identity(d));
            // ((S ⊗ T)(T ⊗ S))³ = 1 on U^{⊗3}.
            let t = swap_operator(&lg);
            let a = s.kron(&t);
            let b = t.kron(&s);
            let ab = a.mul(&b);
            assert_eq!(ab.mul(&ab).mul(&ab), SMat::identity(d * d * d));
            // S anticommutes with odd elements, commutes with even ones.
            for h in lg.ntilde.elements() {
                let r = zeta0_matrix(&lg, &h).unwrap();
                let sign = if h.is_even() { CycloNum::one() } else { -CycloNum::one() };
                assert_eq!(s.mul(&r), r.mul(&s).scale(&sign));
            }
        }
    }

    #[test]
    fn exten_matches_trace_of_tensor_action() {
        for (p, cover) in [(3, Cover::Plus), (3, Cover::Minus), (5, Cover::Minus)] {
            let lg = LocalGroup::new(p, 2, cover).unwrap();
            let d = p - 1;
            for g in &lg.group.elements {
                let (x, sigma) = lg.split(g);
                let (e, fac) = lg.factors(&x);
                let mut m = SMat::scalar(d * d, CycloNum::from_int(if e { -1 } else { 1 }));
                for (k, c) in fac.iter().enumerate() {
                    m = m.mul(&base_on_tensor(&lg, 2, c, k).unwrap());
                }
                if sigma[0] == 1 {
                    m = m.mul(&swap_on_tensor(&lg, 2, 1));
                }
                assert_eq!(m.trace(), lg.exten(super::super::ExtenKind::Plus, g, 2).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn jordan_wigner_is_clifford() {
        for m in 1..=5 {
            let g = jordan_wigner(m);
            let dim = g[0].dim();
            for a in 0..m {
                assert_eq!(g[a].mul(&g[a]), SMat::identity(dim));
                for b in a + 1..m {
                    assert_eq!(g[a].mul(&g[b]), g[b].mul(&g[a]).scale(&-CycloNum::one()));
                }
            }
        }
    }

    fn check_oracle(p: usize, t: usize, cover: Cover) {
        let lg = LocalGroup::new(p, t, cover).unwrap();
        let (sym, alt) = matrix_oracle(&lg).unwrap();
        let d = table_diffs(&sym, &lg.sym_table().unwrap());
        assert!(d.is_empty(), "p={p} t={t} {cover:?} sym: {d:?}");
        let d = table_diffs(&alt, &lg.alt_table().unwrap());
        assert!(d.is_empty(), "p={p} t={t} {cover:?} alt: {d:?}");
    }

    #[test]
    fn oracle_p3_t1() {
        check_oracle(3, 1, Cover::Plus);
        check_oracle(3, 1, Cover::Minus);
    }

    #[test]
    fn oracle_p5_t1() {
        check_oracle(5, 1, Cover::Plus);
        check_oracle(5, 1, Cover::Minus);
    }

    #[test]
    fn oracle_p3_t2() {
        check_oracle(3, 2, Cover::Plus);
        check_oracle(3, 2, Cover::Minus);
    }

    #[test]
    fn oracle_p3_t3() {
        check_oracle(3, 3, Cover::Plus);
        check_oracle(3, 3, Cover::Minus);
    }

    #[test]
    fn oracle_p5_t2() {
        check_oracle(5, 2, Cover::Plus);
        check_oracle(5, 2, Cover::Minus);
    }
}
