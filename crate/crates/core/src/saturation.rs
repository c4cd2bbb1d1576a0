//! The saturated filtration `F^n(G) = sum_H ind_H^G Gamma^n(H)` and stable elements.
//!
//! Induction from `H` and from `sHs^-1` have the same image, so the sum runs
//! over subgroups up to conjugacy.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chartab::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::filtration::{gamma_filtration, graded_report_for, vc_from_row, GammaFiltration, GradedRingReport};
use crate::group::{left_transversal, normalizer, subgroup_lattice, sylow_subgroup, FiniteGroup, Subgroup};
use crate::transfer::Inclusion;
use crate::vchar::VirtualCharacter;
use crate::zlattice::{
    invariant_sublattice_of_quotient, product_span, quotient_invariants, AbelianInvariants, IntLattice, Matrix,
    QuotientPresentation,
};

/// One subgroup's share of a degree of the saturated filtration.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub subgroup: Subgroup,
    /// Whether `ind Gamma^n(H)` reaches outside `Gamma^n(G)`.
    pub beyond_gamma: bool,
}

#[derive(Clone, Debug)]
pub struct SaturatedFiltration {
    gamma: GammaFiltration,
    lattices: Vec<IntLattice>,
    contributions: Vec<Vec<Contribution>>,
}

/// Short description of a subgroup for messages and reports.
pub fn describe_subgroup(table: &CharacterTable, h: &Subgroup) -> String {
    let g = table.group();
    let shown: Vec<&str> = h.elements().iter().take(8).map(|&x| g.label(x)).collect();
    let more = if h.order() > 8 { ", ..." } else { "" };
    format!("order {} {{{}{}}}", h.order(), shown.join(", "), more)
}

/// Computes `F^0 ⊇ ... ⊇ F^depth`.
pub fn saturated_filtration(table: &Arc<CharacterTable>, depth: usize) -> Result<SaturatedFiltration> {
    let gamma = gamma_filtration(table, depth)?;
    let r = table.rank();
    let mut lattices: Vec<IntLattice> = gamma.lattices().to_vec();
    let mut contributions = vec![Vec::new(); depth + 1];
    for h in subgroup_lattice(table.group(), true)? {
        let inc = Inclusion::new(table, &h).map_err(|e| match e {
            Error::SubgroupTableUnavailable(_) => Error::SubgroupTableUnavailable(describe_subgroup(table, &h)),
            other => other,
        })?;
        let sub_gamma = gamma_filtration(inc.sub(), depth)?;
        for n in 0..=depth {
            let mut gens = Vec::new();
            for row in sub_gamma.lattice(n)?.basis() {
                gens.push(inc.induce(&vc_from_row(inc.sub(), row))?.into_coeffs());
            }
            let image = IntLattice::from_generators(r, gens)?;
            let beyond_gamma = !gamma.lattice(n)?.contains_lattice(&image)?;
            lattices[n] = lattices[n].sum(&image)?;
            contributions[n].push(Contribution { subgroup: h.clone(), beyond_gamma });
        }
    }
    Ok(SaturatedFiltration { gamma, lattices, contributions })
}

impl SaturatedFiltration {
    pub fn table(&self) -> &Arc<CharacterTable> {
        self.gamma.table()
    }

    pub fn depth(&self) -> usize {
        self.lattices.len() - 1
    }

    pub fn gamma(&self) -> &GammaFiltration {
        &self.gamma
    }

    pub fn lattices(&self) -> &[IntLattice] {
        &self.lattices
    }

    pub fn lattice(&self, n: usize) -> Result<&IntLattice> {
        self.lattices
            .get(n)
            .ok_or_else(|| Error::InvalidParameter(format!("degree {n} exceeds the filtration depth {}", self.depth())))
    }

    pub fn contributions(&self, n: usize) -> &[Contribution] {
        &self.contributions[n]
    }

    pub fn contains(&self, x: &VirtualCharacter, n: usize) -> Result<bool> {
        self.lattice(n)?.contains(x.coeffs())
    }

    /// `F^n / F^(n+1)`; needs `n < depth`.
    pub fn graded_piece(&self, n: usize) -> Result<QuotientPresentation> {
        quotient_invariants(self.lattice(n)?, self.lattice(n + 1)?)
    }

    pub fn graded_report(&self) -> Result<GradedRingReport> {
        graded_report_for(self.table(), &self.lattices, self.gamma.atoms())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub saturated: bool,
    /// Least `n` where `Gamma^n/Gamma^(n+1) -> F^n/F^(n+1)` is not an isomorphism.
    pub first_failing_degree: Option<usize>,
    /// Least `n` with `Gamma^n != F^n`.
    pub first_lattice_difference: Option<usize>,
}

/// Whether the graded map in degree `n` is an isomorphism: onto when
/// `Gamma^n + F^(n+1) = F^n`, injective when `Gamma^n ∩ F^(n+1) = Gamma^(n+1)`.
pub fn graded_map_is_isomorphism(filt: &SaturatedFiltration, n: usize) -> Result<bool> {
    let g = filt.gamma.lattices();
    let onto = g[n].sum(&filt.lattices[n + 1])? == filt.lattices[n];
    let injective = g[n].intersection(&filt.lattices[n + 1])? == g[n + 1];
    Ok(onto && injective)
}

pub fn saturation_verdict(filt: &SaturatedFiltration) -> Result<SaturationVerdict> {
    let mut first_failing_degree = None;
    for n in 0..filt.depth() {
        if !graded_map_is_isomorphism(filt, n)? {
            first_failing_degree = Some(n);
            break;
        }
    }
    let first_lattice_difference = (0..=filt.depth()).find(|&n| filt.gamma.lattices()[n] != filt.lattices[n]);
    Ok(SaturationVerdict {
        saturated: first_lattice_difference.is_none(),
        first_failing_degree,
        first_lattice_difference,
    })
}

/// Whether `Gamma^n(G) = F^n(G)` for all `n <= depth`.
pub fn is_saturated(table: &Arc<CharacterTable>, depth: usize) -> Result<SaturationVerdict> {
    saturation_verdict(&saturated_filtration(table, depth)?)
}

/// Least `n <= depth` with `ind Gamma^n(H) ⊄ Gamma^n(G)`, or `None` when induction is compatible.
pub fn gamma_compatibility(inc: &Inclusion, depth: usize) -> Result<Option<usize>> {
    let sub_gamma = gamma_filtration(inc.sub(), depth)?;
    let sup_gamma = gamma_filtration(inc.sup(), depth)?;
    for n in 0..=depth {
        for row in sub_gamma.lattice(n)?.basis() {
            let img = inc.induce(&vc_from_row(inc.sub(), row))?;
            if !sup_gamma.contains(&img, n)? {
                return Ok(Some(n));
            }
        }
    }
    Ok(None)
}

/// Whether restriction `R(G) -> R(H)` is onto for every subgroup `H`; on
/// failure, the first subgroup (up to conjugacy) where it is not.
pub fn restriction_surjectivity(table: &Arc<CharacterTable>) -> Result<Option<Subgroup>> {
    for h in subgroup_lattice(table.group(), true)? {
        let inc = Inclusion::new(table, &h)?;
        let gens = (0..table.rank())
            .map(|i| inc.restrict(&VirtualCharacter::irreducible(table, i)).map(VirtualCharacter::into_coeffs))
            .collect::<Result<Vec<_>>>()?;
        let image = IntLattice::from_generators(inc.sub().rank(), gens)?;
        if image != IntLattice::full(inc.sub().rank()) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Least `M <= cap` with `F^M ⊆ Gamma^n`.
pub fn f_in_gamma_bound(table: &Arc<CharacterTable>, n: usize, cap: usize) -> Result<Option<usize>> {
    let filt = saturated_filtration(table, cap.max(n))?;
    let target = filt.gamma.lattice(n)?;
    for m in 0..=cap {
        if target.contains_lattice(filt.lattice(m)?)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// `F^i * F^j ⊆ F^(i+j)` for `i + j <= depth`.
pub fn check_multiplicative(filt: &SaturatedFiltration) -> Result<bool> {
    let table = filt.table();
    for i in 1..=filt.depth() {
        for j in i..=filt.depth() - i {
            let prod = product_span(filt.lattice(i)?, filt.lattice(j)?, |a, b| {
                Ok((&vc_from_row(table, a) * &vc_from_row(table, b)).into_coeffs())
            })?;
            if !filt.lattice(i + j)?.contains_lattice(&prod)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether restriction to `inc`'s subgroup maps `F^n(G)` into `F^n(K)` for all `n`.
pub fn restriction_preserves(
    filt: &SaturatedFiltration,
    inc: &Inclusion,
    sub_filt: &SaturatedFiltration,
) -> Result<bool> {
    if !Arc::ptr_eq(filt.table(), inc.sup()) || !Arc::ptr_eq(sub_filt.table(), inc.sub()) {
        return Err(Error::TableMismatch);
    }
    for n in 0..=filt.depth().min(sub_filt.depth()) {
        for row in filt.lattice(n)?.basis() {
            let res = inc.restrict(&vc_from_row(filt.table(), row))?;
            if !sub_filt.contains(&res, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Distinct primes dividing `n`.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug)]
pub struct StableDegree {
    pub degree: usize,
    pub invariants: AbelianInvariants,
    /// Lifts in `R(H)` of generators of the invariant subgroup.
    pub generators: Vec<VirtualCharacter>,
    /// The invariant part of `Gamma^n(H)` together with `Gamma^(n+1)(H)`.
    pub fixed: IntLattice,
}

/// Product of two invariant generators, in coordinates of the invariant piece
/// of degree `i + j`.
#[derive(Clone, Debug)]
pub struct StableProduct {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub coords: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct StableElementReport {
    pub prime: u64,
    pub sylow: Subgroup,
    pub normalizer: Subgroup,
    /// Table of the Sylow subgroup, with element `i` being `sylow.elements()[i]`.
    pub sylow_table: Arc<CharacterTable>,
    /// For each coset representative of `N/H` outside `H`, the permutation of
    /// `Irr(H)` induced by conjugation.
    pub action: Vec<(usize, Vec<usize>)>,
    /// Degrees `1..depth`.
    pub degrees: Vec<StableDegree>,
    pub products: Vec<StableProduct>,
}

impl StableElementReport {
    pub fn degree(&self, n: usize) -> Option<&StableDegree> {
        self.degrees.iter().find(|d| d.degree == n)
    }
}

/// The `N_G(H)`-invariants of the graded ring of an abelian Sylow `p`-subgroup `H`.
/// Only `H` needs a character table.
pub fn stable_element_subring(g: &Arc<FiniteGroup>, p: u64, depth: usize) -> Result<StableElementReport> {
    if !crate::group::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let h = sylow_subgroup(g, p);
    if !h.is_abelian(g) {
        return Err(Error::NonAbelianSylow { p });
    }
    let n = normalizer(g, &h);
    let sub = Arc::new(character_table(Arc::new(FiniteGroup::from_subgroup(g, &h)?))?);
    let r = sub.rank();
    let hc = sub.classes();
    let local = |x: usize| h.elements().binary_search(&x).expect("element of the Sylow subgroup");
    let reps: Vec<usize> = {
        let ng = FiniteGroup::from_subgroup(g, &n)?;
        let h_in_n = Subgroup::from_elements(
            &ng,
            h.elements().iter().map(|x| n.elements().binary_search(x).unwrap()).collect(),
        )?;
        left_transversal(&ng, &h_in_n).into_iter().map(|i| n.elements()[i]).collect()
    };
    let mut action = Vec::new();
    let mut endos: Vec<Matrix> = Vec::new();
    for s in reps {
        if h.contains(s) {
            continue;
        }
        let s_inv = g.inv(s);
        let mut perm = Vec::with_capacity(r);
        for i in 0..r {
            let vals: Vec<_> = hc
                .reps
                .iter()
                .map(|&k| sub.value(i, hc.class_of[local(g.mul(g.mul(s_inv, h.elements()[k]), s))]).clone())
                .collect();
            let j = sub
                .find_row(&vals)
                .ok_or_else(|| Error::Internal("conjugate of an irreducible is not irreducible".into()))?;
            perm.push(j);
        }
        let mut a = vec![vec![BigInt::zero(); r]; r];
        for (i, &j) in perm.iter().enumerate() {
            a[i][j] = BigInt::one();
        }
        endos.push(a);
        action.push((s, perm));
    }
    let gamma = gamma_filtration(&sub, depth)?;
    let mut degrees = Vec::new();
    for d in 1..depth {
        let (fixed, pres) = invariant_sublattice_of_quotient(gamma.lattice(d)?, gamma.lattice(d + 1)?, &endos)?;
        let generators = pres.generators().iter().map(|v| vc_from_row(&sub, v)).collect();
        degrees.push(StableDegree { degree: d, invariants: pres.invariants().clone(), generators, fixed });
    }
    let mut products = Vec::new();
    for a in 0..degrees.len() {
        for b in a..degrees.len() {
            let (da, db) = (degrees[a].degree, degrees[b].degree);
            let Some(target) = degrees.iter().find(|d| d.degree == da + db) else { continue };
            let pres = quotient_invariants(&target.fixed, gamma.lattice(da + db + 1)?)?;
            for (ia, x) in degrees[a].generators.iter().enumerate() {
                for (ib, y) in degrees[b].generators.iter().enumerate() {
                    let coords = pres.coords((x * y).coeffs())?;
                    products.push(StableProduct { left: (da, ia), right: (db, ib), coords });
                }
            }
        }
    }
    Ok(StableElementReport { prime: p, sylow: h, normalizer: n, sylow_table: sub, action, degrees, products })
}

/// For `1 <= n < depth`: whether `ind F^n(H)` for the Sylow `p`-subgroup `H`
/// covers the `p`-primary part of `F^n(G) / F^(n+1)(G)`. Returns the degrees that fail.
pub fn corestriction_surjectivity_check(table: &Arc<CharacterTable>, p: u64, depth: usize) -> Result<Vec<usize>> {
    let g = table.group();
    let h = sylow_subgroup(g, p);
    let inc = Inclusion::new(table, &h)?;
    let big = saturated_filtration(table, depth)?;
    let small = saturated_filtration(inc.sub(), depth)?;
    let mut failures = Vec::new();
    for n in 1..depth {
        let piece = big.graded_piece(n)?;
        let inv = piece.invariants();
        let k = inv.free_rank + inv.divisors.len();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for row in small.lattice(n)?.basis() {
            let img = inc.induce(&vc_from_row(inc.sub(), row))?;
            gens.push(piece.coords(img.coeffs())?);
        }
        let mut target: Vec<Vec<BigInt>> = Vec::new();
        for (i, d) in inv.divisors.iter().enumerate() {
            let mut unit = vec![BigInt::zero(); k];
            unit[i] = d.clone();
            gens.push(unit.clone());
            target.push(unit);
            let mut q = d.clone();
            let pb = BigInt::from(p);
            while q.is_multiple_of(&pb) {
                q /= &pb;
            }
            let mut e = vec![BigInt::zero(); k];
            e[i] = q;
            target.push(e);
        }
        let image = IntLattice::from_generators(k, gens)?;
        let want = IntLattice::from_generators(k, target)?;
        if !image.contains_lattice(&want)? {
            failures.push(n);
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_catalog_group, closure, parse_group_spec, GroupSpec};

    fn table(s: &str) -> Arc<CharacterTable> {
        let g = Arc::new(build_catalog_group(&parse_group_spec(s).unwrap()).unwrap());
        Arc::new(character_table(g).unwrap())
    }

    fn invariants(filt: &SaturatedFiltration, n: usize) -> AbelianInvariants {
        filt.graded_piece(n).unwrap().invariants().clone()
    }

    #[test]
    fn f1_is_the_augmentation_ideal() {
        for s in ["A4", "Q8", "D5", "C6"] {
            let t = table(s);
            let f = saturated_filtration(&t, 3).unwrap();
            assert_eq!(f.lattice(1).unwrap(), &crate::filtration::augmentation_ideal(&t).unwrap(), "{s}");
            assert_eq!(f.lattice(0).unwrap(), &IntLattice::full(t.rank()));
        }
    }

    #[test]
    fn a4_saturated_pieces() {
        let t = table("A4");
        let f = saturated_filtration(&t, 6).unwrap();
        assert_eq!(invariants(&f, 1), AbelianInvariants::finite(&[3]));
        for n in 2..6 {
            assert_eq!(invariants(&f, n), AbelianInvariants::finite(&[6]), "degree {n}");
        }
        let v = saturation_verdict(&f).unwrap();
        assert_eq!(
            v,
            SaturationVerdict { saturated: false, first_failing_degree: Some(2), first_lattice_difference: Some(3) }
        );
        assert!(graded_map_is_isomorphism(&f, 1).unwrap());
        assert!(f.contributions(3).iter().any(|c| c.beyond_gamma && c.subgroup.order() == 4));
        assert!(!f.contributions(2).iter().any(|c| c.beyond_gamma));
        assert!(check_multiplicative(&f).unwrap());
    }

    #[test]
    fn gamma_inside_f() {
        for s in ["A4", "Q8", "D3", "D4", "C2xC4"] {
            let f = saturated_filtration(&table(s), 5).unwrap();
            for n in 0..=5 {
                assert!(f.lattice(n).unwrap().contains_lattice(f.gamma().lattice(n).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn saturation_verdicts() {
        for s in ["Q8", "D3", "D5", "C4", "C2xC2", "C2xC4", "D4"] {
            assert!(is_saturated(&table(s), 5).unwrap().saturated, "{s}");
        }
        assert!(!is_saturated(&table("A4"), 4).unwrap().saturated);
    }

    #[test]
    fn compatibility_examples() {
        let q8 = table("Q8");
        let c4 = closure(q8.group(), &[6]);
        assert_eq!(gamma_compatibility(&Inclusion::new(&q8, &c4).unwrap(), 5).unwrap(), None);
        let d5 = table("D5");
        let refl = subgroup_lattice(d5.group(), true).unwrap().into_iter().find(|h| h.order() == 2).unwrap();
        assert_eq!(gamma_compatibility(&Inclusion::new(&d5, &refl).unwrap(), 5).unwrap(), None);
        let a4 = table("A4");
        let v4 = sylow_subgroup(a4.group(), 2);
        assert_eq!(gamma_compatibility(&Inclusion::new(&a4, &v4).unwrap(), 5).unwrap(), Some(3));
    }

    #[test]
    fn restriction_surjectivity_examples() {
        assert!(restriction_surjectivity(&table("C2xC4")).unwrap().is_none());
        assert!(restriction_surjectivity(&table("C1")).unwrap().is_none());
        let d5 = table("D5");
        assert_eq!(restriction_surjectivity(&d5).unwrap().unwrap().order(), 5);
    }

    #[test]
    fn stable_elements_a4() {
        let t = table("A4");
        let two = stable_element_subring(t.group(), 2, 7).unwrap();
        assert_eq!(two.normalizer.order(), 12);
        assert_eq!(two.action.len(), 2);
        let want2 = [vec![], vec![2], vec![2], vec![2], vec![2], vec![2]];
        for (d, w) in two.degrees.iter().zip(&want2) {
            assert_eq!(d.invariants, AbelianInvariants::finite(w), "degree {}", d.degree);
        }
        let three = stable_element_subring(t.group(), 3, 7).unwrap();
        assert!(three.action.is_empty());
        for d in &three.degrees {
            assert_eq!(d.invariants, AbelianInvariants::finite(&[3]));
        }
        let f = saturated_filtration(&t, 7).unwrap();
        for n in 1..7 {
            let combined = two.degree(n).unwrap().invariants.direct_sum(&three.degree(n).unwrap().invariants);
            assert_eq!(invariants(&f, n), combined, "degree {n}");
        }
    }

    fn psl(p: u64) -> Arc<FiniteGroup> {
        Arc::new(build_catalog_group(&GroupSpec::Psl2(p)).unwrap())
    }

    #[test]
    fn stable_elements_psl_sylow_p() {
        for p in [5u64, 11, 13] {
            let g = psl(p);
            let rep = stable_element_subring(&g, p, 8).unwrap();
            assert_eq!(rep.normalizer.order() as u64, p * (p - 1) / 2);
            let half = ((p - 1) / 2) as usize;
            for d in &rep.degrees {
                let want =
                    if d.degree % half == 0 { AbelianInvariants::finite(&[p]) } else { AbelianInvariants::trivial() };
                assert_eq!(d.invariants, want, "p={p} degree {}", d.degree);
            }
        }
    }

    #[test]
    fn stable_elements_psl25() {
        let g = psl(5);
        let two = stable_element_subring(&g, 2, 7).unwrap();
        assert_eq!(two.normalizer.order(), 12);
        let three = stable_element_subring(&g, 3, 7).unwrap();
        assert_eq!(three.normalizer.order(), 6);
        let five = stable_element_subring(&g, 5, 7).unwrap();
        for n in 1..7 {
            let total = two
                .degree(n)
                .unwrap()
                .invariants
                .direct_sum(&three.degree(n).unwrap().invariants)
                .direct_sum(&five.degree(n).unwrap().invariants);
            let want = match n {
                1 => AbelianInvariants::trivial(),
                _ if n % 2 == 0 => AbelianInvariants::finite(&[30]),
                _ => AbelianInvariants::finite(&[2]),
            };
            assert_eq!(total, want, "degree {n}");
        }
    }

    #[test]
    fn nonabelian_sylow_is_rejected() {
        let t = table("Q8");
        assert!(matches!(stable_element_subring(t.group(), 2, 3), Err(Error::NonAbelianSylow { p: 2 })));
    }

    #[test]
    fn corestriction_examples() {
        let t = table("A4");
        assert!(corestriction_surjectivity_check(&t, 2, 6).unwrap().is_empty());
        assert!(corestriction_surjectivity_check(&t, 3, 6).unwrap().is_empty());
        assert!(corestriction_surjectivity_check(&table("C6"), 2, 5).unwrap().is_empty());
    }

    #[test]
    fn f_gamma_bounds() {
        assert_eq!(f_in_gamma_bound(&table("C2xC2"), 3, 6).unwrap(), Some(3));
        assert_eq!(f_in_gamma_bound(&table("A4"), 1, 6).unwrap(), Some(1));
        let m = f_in_gamma_bound(&table("A4"), 2, 12).unwrap().unwrap();
        assert!((2..=12).contains(&m));
    }

    #[test]
    fn restriction_preserves_f() {
        let t = table("A4");
        let f = saturated_filtration(&t, 5).unwrap();
        for h in subgroup_lattice(t.group(), true).unwrap() {
            let inc = Inclusion::new(&t, &h).unwrap();
            let sf = saturated_filtration(inc.sub(), 5).unwrap();
            assert!(restriction_preserves(&f, &inc, &sf).unwrap());
        }
    }

    #[test]
    fn prime_divisor_list() {
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(49), vec![7]);
    }
}
