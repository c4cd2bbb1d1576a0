//! Restriction, induction, conjugation and multiplicative norms.
//!
//! For a normal subgroup `H` of prime index `p` the norm extends to virtual
//! characters through the vee product on bundles over subsets of `G/H`: with
//! `G/H = {H, tH, ..., t^(p-1)H}` a subset is a `p`-bit mask, the group acts by
//! rotation, and every proper nonempty subset has stabilizer `H`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chartab::{character_table, CharacterTable};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::group::{double_cosets, left_transversal, FiniteGroup, Subgroup};
use crate::vchar::VirtualCharacter;

/// Character table for a subgroup: the group's own table when `h` is everything,
/// the dual-group table when `h` is abelian.
pub fn subgroup_table(sup: &Arc<CharacterTable>, h: &Subgroup) -> Result<Arc<CharacterTable>> {
    let g = sup.group();
    if h.order() == g.order() {
        return Ok(sup.clone());
    }
    let hg = FiniteGroup::from_subgroup(g, h)?;
    if !hg.is_abelian() {
        let labels: Vec<&str> = h.elements().iter().take(6).map(|&x| g.label(x)).collect();
        return Err(Error::SubgroupTableUnavailable(format!(
            "non-abelian subgroup of order {} (elements {}{})",
            h.order(),
            labels.join(", "),
            if h.order() > 6 { ", ..." } else { "" }
        )));
    }
    Ok(Arc::new(character_table(Arc::new(hg))?))
}

/// `H <= G` with tables for both and the embedding of `H`'s elements.
#[derive(Clone, Debug)]
pub struct Inclusion {
    sup: Arc<CharacterTable>,
    sub: Arc<CharacterTable>,
    subgroup: Subgroup,
    /// `embed[i]` is the element of `G` corresponding to element `i` of `H`.
    embed: Vec<usize>,
    /// Inverse of `embed`, `usize::MAX` outside `H`.
    local: Vec<usize>,
    /// For each class of `G`, the elements of `H` (local indices) in it.
    class_members: Vec<Vec<usize>>,
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Inclusion {
    pub fn new(sup: &Arc<CharacterTable>, h: &Subgroup) -> Result<Inclusion> {
        let sub = subgroup_table(sup, h)?;
        Inclusion::from_tables(sup.clone(), sub, h.elements().to_vec())
    }

    /// Uses a given table for `H`; `embed` must be an injective homomorphism
    /// from `H`'s elements into `G`.
    pub fn from_tables(sup: Arc<CharacterTable>, sub: Arc<CharacterTable>, embed: Vec<usize>) -> Result<Inclusion> {
        let g = sup.group().clone();
        let h = sub.group().clone();
        if embed.len() != h.order() || embed.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidParameter("embedding has the wrong size".into()));
        }
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            if local[x] != usize::MAX {
                return Err(Error::InvalidParameter("embedding is not injective".into()));
            }
            local[x] = i;
        }
        for a in 0..h.order() {
            for b in 0..h.order() {
                if embed[h.mul(a, b)] != g.mul(embed[a], embed[b]) {
                    return Err(Error::InvalidParameter("embedding is not a homomorphism".into()));
                }
            }
        }
        let subgroup = Subgroup::from_elements(&g, embed.clone())?;
        let gc = g.conjugacy_data();
        let mut class_members = vec![Vec::new(); gc.len()];
        for (i, &x) in embed.iter().enumerate() {
            class_members[gc.class_of[x]].push(i);
        }
        let transversal = left_transversal(&g, &subgroup);
        let mut coset_of = vec![usize::MAX; g.order()];
        for (k, &s) in transversal.iter().enumerate() {
            for &x in subgroup.elements() {
                coset_of[g.mul(s, x)] = k;
            }
        }
        Ok(Inclusion { sup, sub, subgroup, embed, local, class_members, transversal, coset_of })
    }

    pub fn sup(&self) -> &Arc<CharacterTable> {
        &self.sup
    }

    pub fn sub(&self) -> &Arc<CharacterTable> {
        &self.sub
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Index of the coset `xH` in the transversal.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// Local index in `H` of an element of `G`, if it lies in `H`.
    pub fn local(&self, x: usize) -> Option<usize> {
        let i = self.local[x];
        (i != usize::MAX).then_some(i)
    }

    fn sub_class_of_global(&self, x: usize) -> usize {
        self.sub.classes().class_of[self.local[x]]
    }

    fn check_sub(&self, x: &VirtualCharacter) -> Result<()> {
        if Arc::ptr_eq(x.table(), &self.sub) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    fn check_sup(&self, x: &VirtualCharacter) -> Result<()> {
        if Arc::ptr_eq(x.table(), &self.sup) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// Values of an `H`-character on each element of `H` (local order).
    fn element_values(&self, x: &VirtualCharacter) -> Vec<CycInt> {
        let vals = x.values();
        let hc = self.sub.classes();
        (0..self.embed.len()).map(|i| vals[hc.class_of[i]].clone()).collect()
    }

    pub fn restrict(&self, x: &VirtualCharacter) -> Result<VirtualCharacter> {
        self.check_sup(x)?;
        let vals = x.values();
        let gc = self.sup.classes();
        let f: Vec<CycInt> =
            self.sub.classes().reps.iter().map(|&h| vals[gc.class_of[self.embed[h]]].clone()).collect();
        VirtualCharacter::from_class_function(&self.sub, &f)
    }

    /// `(ind y)(g) = |C_G(g)| / |H| * sum_{h in H ∩ class(g)} y(h)`.
    pub fn induce(&self, y: &VirtualCharacter) -> Result<VirtualCharacter> {
        self.check_sub(y)?;
        let yv = y.values();
        let hc = self.sub.classes();
        let gc = self.sup.classes();
        let e = self.sup.exponent();
        let g_order = BigInt::from(self.sup.group().order());
        let h_order = BigInt::from(self.embed.len());
        let mut f = Vec::with_capacity(gc.len());
        for (c, members) in self.class_members.iter().enumerate() {
            let mut acc = CycInt::zero(e);
            for &h in members {
                acc = &acc + &yv[hc.class_of[h]];
            }
            let denom = &h_order * BigInt::from(gc.sizes[c]);
            let v = acc
                .scale(&g_order)
                .div_exact(&denom)
                .ok_or_else(|| Error::Internal("induced class function is not integral".into()))?;
            f.push(v);
        }
        VirtualCharacter::from_class_function(&self.sup, &f)
    }

    pub fn permutation_character(&self) -> VirtualCharacter {
        self.induce(&VirtualCharacter::one(&self.sub)).expect("trivial character induces")
    }

    /// Multiplicative induction of an actual character: on `g`, the product over
    /// cycles of `g` on `G/H` of `rho(t^-1 g^l t)`, `t` a coset representative
    /// in the cycle and `l` its length.
    pub fn tensor_induce(&self, rho: &VirtualCharacter) -> Result<VirtualCharacter> {
        self.check_sub(rho)?;
        if !rho.is_actual() {
            return Err(Error::NegativeCoefficients);
        }
        let g = self.sup.group();
        let rv = rho.values();
        let e = self.sup.exponent();
        let m = self.index();
        let mut f = Vec::with_capacity(self.sup.rank());
        for &x in &self.sup.classes().reps {
            let mut seen = vec![false; m];
            let mut val = CycInt::one(e);
            for i in 0..m {
                if seen[i] {
                    continue;
                }
                let t = self.transversal[i];
                let mut len = 0;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    len += 1;
                    j = self.coset_of[g.mul(x, self.transversal[j])];
                }
                let h = g.mul(g.mul(g.inv(t), g.pow(x, len as i64)), t);
                val = &val * &rv[self.sub_class_of_global(h)].lift(e);
            }
            f.push(val);
        }
        VirtualCharacter::from_class_function(&self.sup, &f)
    }

    /// `c_s(x)` for `x` over `H`, as a character of `target = sHs^-1`:
    /// `c_s(x)(k) = x(s^-1 k s)`.
    pub fn transport(&self, x: &VirtualCharacter, s: usize, target: &Inclusion) -> Result<VirtualCharacter> {
        self.check_sub(x)?;
        if !Arc::ptr_eq(&self.sup, &target.sup) {
            return Err(Error::TableMismatch);
        }
        let g = self.sup.group();
        let xv = x.values();
        let mut f = Vec::with_capacity(target.sub.rank());
        for &k in &target.sub.classes().reps {
            let kg = target.embed[k];
            let y = g.mul(g.mul(g.inv(s), kg), s);
            if self.local[y] == usize::MAX {
                return Err(Error::InvalidParameter("target is not the conjugate subgroup".into()));
            }
            f.push(xv[self.sub_class_of_global(y)].clone());
        }
        VirtualCharacter::from_class_function(&target.sub, &f)
    }
}

#[derive(Clone, Debug)]
pub struct MackeyOutcome {
    pub lhs: VirtualCharacter,
    pub rhs: VirtualCharacter,
}

impl MackeyOutcome {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides of `res_K ind_H^G(y) = sum_{s in K\G/H} ind_{K ∩ sHs^-1}^K (c_s y)`.
/// The right side is computed from element-level sums, without tables for the
/// intersections.
pub fn mackey_check(k: &Inclusion, h: &Inclusion, y: &VirtualCharacter) -> Result<MackeyOutcome> {
    if !Arc::ptr_eq(k.sup(), h.sup()) {
        return Err(Error::TableMismatch);
    }
    let lhs = k.restrict(&h.induce(y)?)?;
    let g = k.sup().group();
    let yv = h.element_values(y);
    let reps = double_cosets(g, k.subgroup(), h.subgroup());
    let e = k.sup().exponent();
    let mut f = Vec::with_capacity(k.sub().rank());
    for &kl in &k.sub().classes().reps {
        let kg = k.embed[kl];
        let mut total = CycInt::zero(e);
        for &s in &reps {
            let s_inv = g.inv(s);
            let ks = k.subgroup().elements().iter().filter(|&&u| h.local(g.mul(g.mul(s_inv, u), s)).is_some()).count();
            let mut acc = CycInt::zero(e);
            for &u in k.subgroup().elements() {
                let conj = g.mul(g.mul(g.inv(u), kg), u);
                let back = g.mul(g.mul(s_inv, conj), s);
                if let Some(i) = h.local(back) {
                    acc = &acc + &yv[i];
                }
            }
            let part = acc
                .div_exact(&BigInt::from(ks))
                .ok_or_else(|| Error::Internal("Mackey summand is not integral".into()))?;
            total = &total + &part;
        }
        f.push(total);
    }
    let rhs = VirtualCharacter::from_class_function(k.sub(), &f)?;
    Ok(MackeyOutcome { lhs, rhs })
}

/// A bundle over the subsets of `G/H`: one virtual character per orbit
/// representative (over `G` for the empty and full subsets, over `H` otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeeElement {
    entries: BTreeMap<u32, VirtualCharacter>,
}

impl VeeElement {
    /// Entries keyed by orbit-representative bitmask.
    pub fn entries(&self) -> &BTreeMap<u32, VirtualCharacter> {
        &self.entries
    }
}

/// Norm machinery for a normal subgroup of prime index `p <= 7`.
#[derive(Clone, Debug)]
pub struct PrimeIndexNorm {
    inc: Inclusion,
    p: usize,
    /// Generator of `G/H`: the least element outside `H`.
    t: usize,
    /// `conj_perm[k][i]`: index of `c_{t^k}(chi_i)` in the table of `H`.
    conj_perm: Vec<Vec<usize>>,
    /// Proper nonempty orbit representatives in increasing popcount, then mask.
    proper_reps: Vec<u32>,
    /// For each mask: its orbit representative and the rotation taking the
    /// representative to it.
    rep_of: Vec<(u32, usize)>,
}

pub const MAX_NORM_PRIME: usize = 7;

impl PrimeIndexNorm {
    pub fn new(inc: Inclusion) -> Result<PrimeIndexNorm> {
        let p = inc.index();
        if !crate::group::is_prime(p as u64) {
            return Err(Error::IndexNotPrime(p));
        }
        if p > MAX_NORM_PRIME {
            return Err(Error::SizeBound { bound: MAX_NORM_PRIME, what: format!("index {p} for subset enumeration") });
        }
        let g = inc.sup().group().clone();
        if !inc.subgroup().is_normal_in(&g) {
            return Err(Error::NotNormal);
        }
        let t = (0..g.order()).find(|&x| inc.local(x).is_none()).expect("proper subgroup");
        let mut t_pow = vec![0usize];
        for k in 1..p {
            t_pow.push(g.mul(t_pow[k - 1], t));
        }
        let sub = inc.sub().clone();
        let hc = sub.classes();
        let mut conj_perm = Vec::with_capacity(p);
        for &s in &t_pow {
            let s_inv = g.inv(s);
            let mut perm = Vec::with_capacity(sub.rank());
            for i in 0..sub.rank() {
                let vals: Vec<CycInt> = hc
                    .reps
                    .iter()
                    .map(|&h| {
                        let y = g.mul(g.mul(s_inv, inc.embed[h]), s);
                        sub.value(i, inc.sub_class_of_global(y)).clone()
                    })
                    .collect();
                let j = sub
                    .find_row(&vals)
                    .ok_or_else(|| Error::Internal("conjugate of an irreducible is not irreducible".into()))?;
                perm.push(j);
            }
            conj_perm.push(perm);
        }
        let full = (1u32 << p) - 1;
        let rot = |m: u32, k: usize| -> u32 {
            if k == 0 {
                m
            } else {
                ((m << k) | (m >> (p - k))) & full
            }
        };
        let mut rep_of = vec![(0u32, 0usize); 1 << p];
        rep_of[full as usize] = (full, 0);
        let mut proper_reps = Vec::new();
        for m in 1..full {
            let rep = (0..p).map(|k| rot(m, k)).min().unwrap();
            let k = (0..p).find(|&k| rot(rep, k) == m).unwrap();
            rep_of[m as usize] = (rep, k);
            if rep == m {
                proper_reps.push(m);
            }
        }
        proper_reps.sort_by_key(|m| (m.count_ones(), *m));
        Ok(PrimeIndexNorm { inc, p, t, conj_perm, proper_reps, rep_of })
    }

    pub fn inclusion(&self) -> &Inclusion {
        &self.inc
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn generator(&self) -> usize {
        self.t
    }

    fn full(&self) -> u32 {
        (1u32 << self.p) - 1
    }

    /// Proper nonempty orbit representatives.
    pub fn proper_orbit_reps(&self) -> &[u32] {
        &self.proper_reps
    }

    /// `c_{t^k}` on characters of `H`.
    pub fn conjugate(&self, x: &VirtualCharacter, k: usize) -> VirtualCharacter {
        let perm = &self.conj_perm[k % self.p];
        let mut out = vec![BigInt::zero(); x.coeffs().len()];
        for (i, a) in x.coeffs().iter().enumerate() {
            out[perm[i]] += a;
        }
        VirtualCharacter::new(x.table().clone(), out).expect("same rank")
    }

    /// `x^{⊗C} = prod_{i in C} c_{t^i}(x)` over `H`.
    pub fn tensor_power_over(&self, x: &VirtualCharacter, mask: u32) -> VirtualCharacter {
        let mut acc = VirtualCharacter::one(x.table());
        for i in 0..self.p {
            if mask >> i & 1 == 1 {
                acc = &acc * &self.conjugate(x, i);
            }
        }
        acc
    }

    /// Entry of `a` at an arbitrary subset, transported from its orbit representative.
    pub fn entry(&self, a: &VeeElement, mask: u32) -> VirtualCharacter {
        let (rep, k) = self.rep_of[mask as usize];
        let v = &a.entries[&rep];
        if mask == 0 || mask == self.full() {
            v.clone()
        } else {
            self.conjugate(v, k)
        }
    }

    /// Entry at a subset as an `H`-character (restricting the `G`-entries at `∅` and `G/H`).
    fn entry_over_h(&self, a: &VeeElement, mask: u32) -> Result<VirtualCharacter> {
        if mask == 0 || mask == self.full() {
            self.inc.restrict(&a.entries[&mask])
        } else {
            Ok(self.entry(a, mask))
        }
    }

    pub fn unit(&self) -> VeeElement {
        let mut entries = BTreeMap::new();
        entries.insert(0, VirtualCharacter::one(self.inc.sup()));
        for &m in &self.proper_reps {
            entries.insert(m, VirtualCharacter::zero(self.inc.sub()));
        }
        entries.insert(self.full(), VirtualCharacter::zero(self.inc.sup()));
        VeeElement { entries }
    }

    /// `chi(rho)`: `1` at `∅`, `rho^{⊗C}` at proper `C`, `N(rho)` at `G/H`.
    pub fn chi(&self, rho: &VirtualCharacter) -> Result<VeeElement> {
        let mut entries = BTreeMap::new();
        entries.insert(0, VirtualCharacter::one(self.inc.sup()));
        for &m in &self.proper_reps {
            entries.insert(m, self.tensor_power_over(rho, m));
        }
        entries.insert(self.full(), self.inc.tensor_induce(rho)?);
        Ok(VeeElement { entries })
    }

    /// `(a ∨ b)_C = sum over C1 ⊔ C2 = C` of the induced products, orbitwise.
    pub fn vee(&self, a: &VeeElement, b: &VeeElement) -> Result<VeeElement> {
        let full = self.full();
        let mut entries = BTreeMap::new();
        entries.insert(0, &a.entries[&0] * &b.entries[&0]);
        for &c in &self.proper_reps {
            let mut acc = VirtualCharacter::zero(self.inc.sub());
            let mut c1 = c;
            loop {
                let c2 = c & !c1;
                acc = &acc + &(&self.entry_over_h(a, c1)? * &self.entry_over_h(b, c2)?);
                if c1 == 0 {
                    break;
                }
                c1 = (c1 - 1) & c;
            }
            entries.insert(c, acc);
        }
        let mut top = &(&a.entries[&0] * &b.entries[&full]) + &(&a.entries[&full] * &b.entries[&0]);
        for &d in &self.proper_reps {
            let prod = &self.entry(a, d) * &self.entry(b, full & !d);
            top = &top + &self.inc.induce(&prod)?;
        }
        entries.insert(full, top);
        Ok(VeeElement { entries })
    }

    /// The inverse of an element whose `∅` entry is the unit, solved by
    /// increasing subset size.
    pub fn vee_inverse(&self, a: &VeeElement) -> Result<VeeElement> {
        if a.entries[&0] != VirtualCharacter::one(self.inc.sup()) {
            return Err(Error::NotInvertible);
        }
        let full = self.full();
        let mut b = self.unit();
        for &c in &self.proper_reps.clone() {
            let mut acc = VirtualCharacter::zero(self.inc.sub());
            let mut c1 = c;
            while c1 != 0 {
                let c2 = c & !c1;
                acc = &acc + &(&self.entry_over_h(a, c1)? * &self.entry_over_h(&b, c2)?);
                c1 = (c1 - 1) & c;
            }
            b.entries.insert(c, -acc);
        }
        let mut top = -a.entries[&full].clone();
        for &d in &self.proper_reps {
            let prod = &self.entry(a, d) * &self.entry(&b, full & !d);
            top = &top - &self.inc.induce(&prod)?;
        }
        b.entries.insert(full, top);
        Ok(b)
    }

    /// `N(sigma - tau)` from the closed formulas: for odd `p`,
    /// `N(s) - N(t) + sum_C (-1)^(p-|C|) ind(s^{⊗C} t^{⊗C'})` over proper orbit
    /// representatives; for `p = 2`, `N(s) - N(t) + ind(t t^t) - ind(s t^t)`.
    pub fn norm_by_formula(&self, x: &VirtualCharacter) -> Result<VirtualCharacter> {
        let (sigma, tau) = x.split_signs();
        let base = &self.inc.tensor_induce(&sigma)? - &self.inc.tensor_induce(&tau)?;
        if self.p == 2 {
            let tt = self.conjugate(&tau, 1);
            let plus = self.inc.induce(&(&tau * &tt))?;
            let minus = self.inc.induce(&(&sigma * &tt))?;
            return Ok(&(&base + &plus) - &minus);
        }
        let full = self.full();
        let mut acc = base;
        for &c in &self.proper_reps {
            let prod = &self.tensor_power_over(&sigma, c) * &self.tensor_power_over(&tau, full & !c);
            let term = self.inc.induce(&prod)?;
            let sign_negative = (self.p - c.count_ones() as usize) % 2 == 1;
            acc = if sign_negative { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }

    /// `N(x)` as the top entry of `chi(x+) ∨ chi(x-)^-1`.
    pub fn norm_by_vee(&self, x: &VirtualCharacter) -> Result<VirtualCharacter> {
        let (sigma, tau) = x.split_signs();
        let prod = self.vee(&self.chi(&sigma)?, &self.vee_inverse(&self.chi(&tau)?)?)?;
        Ok(prod.entries[&self.full()].clone())
    }

    /// The norm of a virtual character, computed both ways; disagreement is an error.
    pub fn norm_virtual(&self, x: &VirtualCharacter) -> Result<VirtualCharacter> {
        let a = self.norm_by_formula(x)?;
        let b = self.norm_by_vee(x)?;
        if a != b {
            return Err(Error::Internal(format!("norm routes disagree: {a} vs {b}")));
        }
        Ok(a)
    }

    /// For abelian `G`: `N(x) + N(y) + sum_{i=1}^{p-1} (C(p,i)/p) ind(x^i y^(p-i))`.
    pub fn abelian_addition_formula(&self, x: &VirtualCharacter, y: &VirtualCharacter) -> Result<VirtualCharacter> {
        if !self.inc.sup().group().is_abelian() {
            return Err(Error::InvalidParameter("addition formula needs an abelian group".into()));
        }
        let mut acc = &self.norm_virtual(x)? + &self.norm_virtual(y)?;
        let p = self.p as u64;
        let mut binom = BigInt::one();
        for i in 1..p {
            binom = binom * BigInt::from(p - i + 1) / BigInt::from(i);
            let mult = &binom / BigInt::from(p);
            let term = self.inc.induce(&(&x.pow(i as u32) * &y.pow((p - i) as u32)))?;
            acc = &acc + &term.scale(mult);
        }
        Ok(acc)
    }

    /// First linear character of `G` (canonical order) restricting to the linear `rho`.
    pub fn extend_linear(&self, rho: &VirtualCharacter) -> Result<Option<VirtualCharacter>> {
        let sup = self.inc.sup();
        for i in 0..sup.rank() {
            if sup.is_linear(i) {
                let cand = VirtualCharacter::irreducible(sup, i);
                if &self.inc.restrict(&cand)? == rho {
                    return Ok(Some(cand));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_catalog_group, closure, parse_group_spec, subgroup_lattice, sylow_subgroup};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn table(s: &str) -> Arc<CharacterTable> {
        let g = Arc::new(build_catalog_group(&parse_group_spec(s).unwrap()).unwrap());
        Arc::new(character_table(g).unwrap())
    }

    fn subgroup_of_order(t: &Arc<CharacterTable>, n: usize, pick: usize) -> Subgroup {
        subgroup_lattice(t.group(), false).unwrap().into_iter().filter(|h| h.order() == n).nth(pick).unwrap()
    }

    fn random_vc(t: &Arc<CharacterTable>, rng: &mut impl Rng, bound: i64) -> VirtualCharacter {
        let c: Vec<i64> = (0..t.rank()).map(|_| rng.gen_range(-bound..=bound)).collect();
        VirtualCharacter::from_ints(t, &c).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let a4 = table("A4");
        let v4 = sylow_subgroup(a4.group(), 2);
        let inc = Inclusion::new(&a4, &v4).unwrap();
        let theta = VirtualCharacter::irreducible(&a4, 3);
        let res = inc.restrict(&theta).unwrap();
        assert_eq!(res.coeffs(), &[0, 1, 1, 1].map(BigInt::from));
        assert_eq!(inc.restrict(&VirtualCharacter::one(&a4)).unwrap(), VirtualCharacter::one(inc.sub()));

        let q8 = table("Q8");
        let c4 = closure(q8.group(), &[6]);
        let inc = Inclusion::new(&q8, &c4).unwrap();
        let delta = VirtualCharacter::irreducible(&q8, 4);
        let res = inc.restrict(&delta).unwrap();
        // the two faithful characters of C4
        let faithful: Vec<usize> = (0..4)
            .filter(|&i| {
                let v = VirtualCharacter::irreducible(inc.sub(), i);
                v.pow(2) != VirtualCharacter::one(inc.sub())
            })
            .collect();
        let mut want = vec![BigInt::zero(); 4];
        for i in faithful {
            want[i] = BigInt::one();
        }
        assert_eq!(res.coeffs(), want.as_slice());
    }

    #[test]
    fn induction_examples() {
        let c4 = table("C4");
        let c2 = subgroup_of_order(&c4, 2, 0);
        let inc = Inclusion::new(&c4, &c2).unwrap();
        let perm = inc.permutation_character();
        // 1 + chi^2 where chi^2 is the character of order two
        let order_two =
            (1..4).find(|&i| VirtualCharacter::irreducible(&c4, i).pow(2) == VirtualCharacter::one(&c4)).unwrap();
        let mut want = vec![BigInt::zero(); 4];
        want[0] = BigInt::one();
        want[order_two] = BigInt::one();
        assert_eq!(perm.coeffs(), want.as_slice());

        let a4 = table("A4");
        let v4 = sylow_subgroup(a4.group(), 2);
        let inc = Inclusion::new(&a4, &v4).unwrap();
        let one = VirtualCharacter::one(inc.sub());
        assert_eq!(inc.restrict(&inc.induce(&one).unwrap()).unwrap(), one.scale(3));
        let whole = Inclusion::new(&a4, &Subgroup::whole(a4.group())).unwrap();
        assert_eq!(whole.permutation_character(), VirtualCharacter::one(&a4));
    }

    #[test]
    fn frobenius_and_projection() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for s in ["A4", "Q8", "D5", "D4", "C2xC2", "C6", "D3xC2"] {
            let g = table(s);
            for h in subgroup_lattice(g.group(), true).unwrap() {
                let Ok(inc) = Inclusion::new(&g, &h) else { continue };
                for _ in 0..5 {
                    let x = random_vc(inc.sub(), &mut rng, 3);
                    let y = random_vc(&g, &mut rng, 3);
                    let lhs = g.inner_product(&inc.induce(&x).unwrap().values(), &y.values()).unwrap();
                    let rhs = inc.sub().inner_product(&x.values(), &inc.restrict(&y).unwrap().values()).unwrap();
                    assert_eq!(lhs.as_rational_integer(), rhs.as_rational_integer(), "{s}");
                    let proj = inc.induce(&(&x * &inc.restrict(&y).unwrap())).unwrap();
                    assert_eq!(proj, &inc.induce(&x).unwrap() * &y, "{s}");
                    assert_eq!(inc.induce(&x).unwrap().augmentation(), x.augmentation() * BigInt::from(inc.index()));
                }
            }
        }
    }

    #[test]
    fn mackey_examples() {
        let a4 = table("A4");
        let v4 = sylow_subgroup(a4.group(), 2);
        let inc = Inclusion::new(&a4, &v4).unwrap();
        let y = VirtualCharacter::irreducible(inc.sub(), 1);
        assert!(mackey_check(&inc, &inc, &y).unwrap().holds());
        let whole = Inclusion::new(&a4, &Subgroup::whole(a4.group())).unwrap();
        assert!(mackey_check(&whole, &inc, &y).unwrap().holds());

        let d5 = table("D5");
        let c5 = subgroup_of_order(&d5, 5, 0);
        let c2 = subgroup_of_order(&d5, 2, 0);
        let k = Inclusion::new(&d5, &c5).unwrap();
        let h = Inclusion::new(&d5, &c2).unwrap();
        for i in 0..2 {
            let y = VirtualCharacter::irreducible(h.sub(), i);
            assert!(mackey_check(&k, &h, &y).unwrap().holds());
        }
    }

    #[test]
    fn mackey_on_all_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for s in ["A4", "Q8", "D4", "D6"] {
            let g = table(s);
            let subs: Vec<Inclusion> =
                subgroup_lattice(g.group(), false).unwrap().iter().filter_map(|h| Inclusion::new(&g, h).ok()).collect();
            for k in &subs {
                for h in &subs {
                    let y = random_vc(h.sub(), &mut rng, 2);
                    assert!(mackey_check(k, h, &y).unwrap().holds(), "{s}");
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let a4 = table("A4");
        let g = a4.group().clone();
        let dt = g.labels().iter().position(|l| l == "(1 2)(3 4)").unwrap();
        let c = g.labels().iter().position(|l| l == "(1 2 3)").unwrap();
        let h = closure(&g, &[dt]);
        let hc = crate::group::conjugate_subgroup(&g, &h, c);
        let other = g.conj(c, dt);
        assert_eq!(hc.elements(), closure(&g, &[other]).elements());
        assert_eq!(g.label(other), "(1 4)(2 3)");
        let src = Inclusion::new(&a4, &h).unwrap();
        let dst = Inclusion::new(&a4, &hc).unwrap();
        let x = VirtualCharacter::irreducible(src.sub(), 1);
        let y = src.transport(&x, c, &dst).unwrap();
        // sign character goes to the sign character of the conjugate
        assert_eq!(
            y.values()[dst.sub().classes().class_of[dst.local(other).unwrap()]].as_rational_integer(),
            Some(BigInt::from(-1))
        );
        // conjugating by an element of H is the identity
        assert_eq!(src.transport(&x, dt, &src).unwrap(), x);
        // conjugation commutes with restriction
        let theta = VirtualCharacter::irreducible(&a4, 3);
        assert_eq!(src.transport(&src.restrict(&theta).unwrap(), c, &dst).unwrap(), dst.restrict(&theta).unwrap());
    }

    #[test]
    fn tensor_induction_examples() {
        let c4 = table("C4");
        let c2 = subgroup_of_order(&c4, 2, 0);
        let inc = Inclusion::new(&c4, &c2).unwrap();
        let rho = VirtualCharacter::irreducible(inc.sub(), 1);
        let n = inc.tensor_induce(&rho).unwrap();
        let order_two =
            (1..4).find(|&i| VirtualCharacter::irreducible(&c4, i).pow(2) == VirtualCharacter::one(&c4)).unwrap();
        assert_eq!(n, VirtualCharacter::irreducible(&c4, order_two));
        assert_eq!(inc.tensor_induce(&VirtualCharacter::one(inc.sub())).unwrap(), VirtualCharacter::one(&c4));
        assert!(matches!(inc.tensor_induce(&-rho), Err(Error::NegativeCoefficients)));

        let a4 = table("A4");
        let v4 = sylow_subgroup(a4.group(), 2);
        let inc = Inclusion::new(&a4, &v4).unwrap();
        for i in 0..4 {
            let a = VirtualCharacter::irreducible(inc.sub(), i);
            let n = inc.tensor_induce(&a).unwrap();
            assert_eq!(n.augmentation(), BigInt::one());
        }
    }

    #[test]
    fn tensor_induction_is_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for s in ["A4", "D4", "Q8", "C6", "D3"] {
            let g = table(s);
            for h in subgroup_lattice(g.group(), true).unwrap() {
                let Ok(inc) = Inclusion::new(&g, &h) else { continue };
                for _ in 0..3 {
                    let a: Vec<i64> = (0..inc.sub().rank()).map(|_| rng.gen_range(0..=2)).collect();
                    let b: Vec<i64> = (0..inc.sub().rank()).map(|_| rng.gen_range(0..=2)).collect();
                    let a = VirtualCharacter::from_ints(inc.sub(), &a).unwrap();
                    let b = VirtualCharacter::from_ints(inc.sub(), &b).unwrap();
                    let lhs = inc.tensor_induce(&(&a * &b)).unwrap();
                    assert_eq!(lhs, &inc.tensor_induce(&a).unwrap() * &inc.tensor_induce(&b).unwrap());
                    let deg = a.augmentation().pow(inc.index() as u32);
                    assert_eq!(inc.tensor_induce(&a).unwrap().augmentation(), deg);
                }
            }
        }
    }

    fn norm_ctx(g: &str, sub_order: usize) -> PrimeIndexNorm {
        let t = table(g);
        let h = subgroup_lattice(t.group(), false)
            .unwrap()
            .into_iter()
            .find(|h| h.order() == sub_order && h.is_normal_in(t.group()))
            .unwrap();
        PrimeIndexNorm::new(Inclusion::new(&t, &h).unwrap()).unwrap()
    }

    #[test]
    fn vee_basics() {
        for (g, n) in [("C4", 2), ("C2xC2", 2), ("C9", 3), ("C3xC3", 3), ("A4", 4), ("D3", 3), ("Q8", 4)] {
            let ctx = norm_ctx(g, n);
            let sub = ctx.inclusion().sub().clone();
            let unit = ctx.unit();
            for i in 0..sub.rank() {
                let rho = VirtualCharacter::irreducible(&sub, i);
                let a = ctx.chi(&rho).unwrap();
                assert_eq!(a.entries()[&0], VirtualCharacter::one(ctx.inclusion().sup()));
                assert_eq!(ctx.vee(&a, &unit).unwrap(), a);
                let b = ctx.vee_inverse(&a).unwrap();
                assert_eq!(ctx.vee(&a, &b).unwrap(), unit, "{g}");
                for j in 0..sub.rank() {
                    let sigma = VirtualCharacter::irreducible(&sub, j);
                    let s = ctx.chi(&sigma).unwrap();
                    let lhs = ctx.vee(&a, &s).unwrap();
                    assert_eq!(lhs, ctx.vee(&s, &a).unwrap());
                    assert_eq!(lhs.entries()[&ctx.full()], ctx.inclusion().tensor_induce(&(&rho + &sigma)).unwrap());
                    assert_eq!(lhs, ctx.chi(&(&rho + &sigma)).unwrap());
                }
            }
            assert_eq!(ctx.vee_inverse(&unit).unwrap(), unit);
        }
    }

    #[test]
    fn abelian_chi_entries_are_powers() {
        for (g, n) in [("C9", 3), ("C25", 5), ("C3xC3", 3)] {
            let ctx = norm_ctx(g, n);
            let sub = ctx.inclusion().sub().clone();
            for i in 0..sub.rank() {
                let rho = VirtualCharacter::irreducible(&sub, i);
                let a = ctx.chi(&rho).unwrap();
                for (&m, v) in a.entries() {
                    if m != 0 && m != ctx.full() {
                        assert_eq!(v, &rho.pow(m.count_ones()));
                    }
                }
            }
        }
    }

    #[test]
    fn vee_inverse_closed_forms() {
        // odd p: b_C = (-1)^|C| a_C, b_top = -a_top
        let ctx = norm_ctx("C9", 3);
        let rho = VirtualCharacter::irreducible(ctx.inclusion().sub(), 1);
        let a = ctx.chi(&rho).unwrap();
        let b = ctx.vee_inverse(&a).unwrap();
        for (&m, v) in b.entries() {
            if m == 0 {
                continue;
            }
            let sign = if m == ctx.full() || m.count_ones() % 2 == 1 { -1 } else { 1 };
            assert_eq!(v, &a.entries()[&m].scale(sign));
        }
        // p = 2: b_top = -N(W) + ind(W W^t)
        let ctx = norm_ctx("C4", 2);
        let w = VirtualCharacter::irreducible(ctx.inclusion().sub(), 1);
        let b = ctx.vee_inverse(&ctx.chi(&w).unwrap()).unwrap();
        let want = &-ctx.inclusion().tensor_induce(&w).unwrap()
            + &ctx.inclusion().induce(&(&w * &ctx.conjugate(&w, 1))).unwrap();
        assert_eq!(b.entries()[&ctx.full()], want);
    }

    #[test]
    fn non_prime_and_non_normal_are_rejected() {
        let c8 = table("C8");
        let c2 = subgroup_of_order(&c8, 2, 0);
        assert!(matches!(PrimeIndexNorm::new(Inclusion::new(&c8, &c2).unwrap()), Err(Error::IndexNotPrime(4))));
        let d3 = table("D3");
        let refl = subgroup_of_order(&d3, 2, 0);
        assert!(matches!(PrimeIndexNorm::new(Inclusion::new(&d3, &refl).unwrap()), Err(Error::NotNormal)));
    }

    #[test]
    fn index_two_abelian_formula() {
        // N(s - t) = s'^2 - t'^2 + C[G/H] t'^2 - C[G/H] s' t' for extensions s', t'
        for g in ["C4", "C2xC2", "C2xC4"] {
            let ctx = norm_ctx(g, table(g).group().order() / 2);
            let sub = ctx.inclusion().sub().clone();
            let perm = ctx.inclusion().permutation_character();
            for i in 0..sub.rank() {
                for j in 0..sub.rank() {
                    let s = VirtualCharacter::irreducible(&sub, i);
                    let t = VirtualCharacter::irreducible(&sub, j);
                    let se = ctx.extend_linear(&s).unwrap().unwrap();
                    let te = ctx.extend_linear(&t).unwrap().unwrap();
                    let want = &(&(&se.pow(2) - &te.pow(2)) + &(&perm * &te.pow(2))) - &(&perm * &(&se * &te));
                    assert_eq!(ctx.norm_virtual(&(&s - &t)).unwrap(), want, "{g}");
                }
            }
        }
    }

    #[test]
    fn norm_of_linear_is_power_of_extension() {
        for (g, n) in [("C4", 2), ("C9", 3), ("C3xC3", 3), ("C25", 5)] {
            let ctx = norm_ctx(g, n);
            let sub = ctx.inclusion().sub().clone();
            for i in 0..sub.rank() {
                let rho = VirtualCharacter::irreducible(&sub, i);
                let ext = ctx.extend_linear(&rho).unwrap().unwrap();
                assert_eq!(ctx.inclusion().tensor_induce(&rho).unwrap(), ext.pow(ctx.prime() as u32));
            }
        }
    }

    #[test]
    fn extension_over_product() {
        // N_G^{G x C2}(rho - 1) = (rho' - 1)^2 - (sigma' - 1)(rho' - 1)
        let ctx = norm_ctx("C3xC2", 3);
        let t = ctx.inclusion().sup().clone();
        let sub = ctx.inclusion().sub().clone();
        let perm = ctx.inclusion().permutation_character();
        let sigma = &perm - &VirtualCharacter::one(&t);
        for i in 1..sub.rank() {
            let rho = VirtualCharacter::irreducible(&sub, i);
            let ext = ctx.extend_linear(&rho).unwrap().unwrap();
            let z = &ext - &VirtualCharacter::one(&t);
            let y = &sigma - &VirtualCharacter::one(&t);
            let got = ctx.norm_virtual(&(&rho - &VirtualCharacter::one(&sub))).unwrap();
            assert_eq!(got, &z.pow(2) - &(&y * &z));
        }
    }

    #[test]
    fn abelian_addition_multiplicities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for (g, n) in [("C4", 2), ("C9", 3), ("C25", 5), ("C5xC5", 5)] {
            let ctx = norm_ctx(g, n);
            let sub = ctx.inclusion().sub().clone();
            for _ in 0..4 {
                let x = random_vc(&sub, &mut rng, 2);
                let y = random_vc(&sub, &mut rng, 2);
                assert_eq!(ctx.abelian_addition_formula(&x, &y).unwrap(), ctx.norm_virtual(&(&x + &y)).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn norm_routes_on_nonabelian_groups() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for (g, n) in [("A4", 4), ("D3", 3), ("D5", 5), ("Q8", 4), ("D4", 4)] {
            let ctx = norm_ctx(g, n);
            let sub = ctx.inclusion().sub().clone();
            for _ in 0..10 {
                let x = random_vc(&sub, &mut rng, 2);
                let y = random_vc(&sub, &mut rng, 2);
                let nx = ctx.norm_virtual(&x).unwrap();
                let ny = ctx.norm_virtual(&y).unwrap();
                assert_eq!(ctx.norm_virtual(&(&x * &y)).unwrap(), &nx * &ny, "{g}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn norm_routes_agree_c3_in_c9(c in prop::collection::vec(-3i64..=3, 3)) {
            let ctx = norm_ctx("C9", 3);
            let x = VirtualCharacter::from_ints(ctx.inclusion().sub(), &c).unwrap();
            prop_assert_eq!(ctx.norm_by_formula(&x).unwrap(), ctx.norm_by_vee(&x).unwrap());
        }
    }
}
