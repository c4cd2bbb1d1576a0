//! Subgroups, the subgroup lattice, Sylow subgroups, normalizers and cosets.

use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Largest group order accepted by [`subgroup_lattice`].
pub const SUBGROUP_LATTICE_BOUND: usize = 200;

/// A subgroup, stored as the sorted list of its element indices in the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Wraps an element list, checking closure in `g`.
    pub fn from_elements(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; g.order()];
        for &x in &elements {
            if x >= g.order() {
                return Err(Error::InvalidParameter(format!("element {x} out of range")));
            }
            member[x] = true;
        }
        if !member[0] {
            return Err(Error::InvalidParameter("subset does not contain the identity".into()));
        }
        for &a in &elements {
            if !member[g.inv(a)] || elements.iter().any(|&b| !member[g.mul(a, b)]) {
                return Err(Error::InvalidParameter("subset is not closed".into()));
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup { elements: (0..g.order()).collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|s| self.elements.iter().all(|&h| self.contains(g.conj(s, h))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    fn member_mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }
}

/// The subgroup generated by `gens`.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut elements = vec![0];
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                elements.push(y);
            }
        }
        i += 1;
    }
    elements.sort_unstable();
    Subgroup { elements }
}

/// `s H s^-1`
pub fn conjugate_subgroup(g: &FiniteGroup, h: &Subgroup, s: usize) -> Subgroup {
    let mut elements: Vec<usize> = h.elements.iter().map(|&x| g.conj(s, x)).collect();
    elements.sort_unstable();
    Subgroup { elements }
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mask = h.member_mask(g.order());
    let elements = (0..g.order()).filter(|&s| h.elements.iter().all(|&x| mask[g.conj(s, x)])).collect();
    Subgroup { elements }
}

pub fn centralizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let elements = (0..g.order()).filter(|&s| h.elements.iter().all(|&x| g.mul(s, x) == g.mul(x, s))).collect();
    Subgroup { elements }
}

/// Least-index representatives of the left cosets `sH`, in increasing order.
pub fn left_transversal(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::with_capacity(g.order() / h.order());
    for s in 0..g.order() {
        if covered[s] {
            continue;
        }
        reps.push(s);
        for &x in &h.elements {
            covered[g.mul(s, x)] = true;
        }
    }
    reps
}

/// Least-index representatives of the double cosets `K s H`, in increasing order.
pub fn double_cosets(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for s in 0..g.order() {
        if covered[s] {
            continue;
        }
        reps.push(s);
        for &a in &k.elements {
            let as_ = g.mul(a, s);
            for &b in &h.elements {
                covered[g.mul(as_, b)] = true;
            }
        }
    }
    reps
}

fn prime_part(n: usize, p: usize) -> usize {
    let mut m = n;
    let mut out = 1;
    while m.is_multiple_of(p) {
        m /= p;
        out *= p;
    }
    out
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup, grown one factor `p` at a time inside normalizers,
/// always adjoining the least-index admissible element.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Subgroup {
    let p = p as usize;
    if p < 2 {
        return Subgroup::trivial();
    }
    let target = prime_part(g.order(), p);
    let mut current = Subgroup::trivial();
    while current.order() < target {
        let n = normalizer(g, &current);
        let next = n.elements.iter().copied().find(|&x| {
            !current.contains(x) && is_p_power(g.element_order(x), p) && current.contains(g.pow(x, p as i64))
        });
        let Some(x) = next else { break };
        let mut gens = current.elements.clone();
        gens.push(x);
        current = closure(g, &gens);
    }
    current
}

/// All subgroups (or one per conjugacy class), sorted by order and then by element list.
///
/// Every subgroup is the join of the cyclic subgroups it contains, so cyclic
/// subgroups closed under pairwise joins give the complete lattice.
pub fn subgroup_lattice(g: &FiniteGroup, up_to_conjugacy: bool) -> Result<Vec<Subgroup>> {
    if g.order() > SUBGROUP_LATTICE_BOUND {
        return Err(Error::GroupTooLarge { order: g.order(), bound: SUBGROUP_LATTICE_BOUND, what: "subgroup lattice" });
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subs: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    for x in 0..g.order() {
        let c = closure(g, &[x]);
        if !index.contains_key(&c.elements) {
            index.insert(c.elements.clone(), subs.len());
            subs.push((c, vec![x]));
        }
    }
    let mut i = 0;
    while i < subs.len() {
        for j in 0..i {
            if subs[i].0.is_subgroup_of(&subs[j].0) || subs[j].0.is_subgroup_of(&subs[i].0) {
                continue;
            }
            let mut gens = subs[i].1.clone();
            gens.extend(subs[j].1.iter().copied());
            let c = closure(g, &gens);
            if !index.contains_key(&c.elements) {
                index.insert(c.elements.clone(), subs.len());
                subs.push((c, gens));
            }
        }
        i += 1;
    }
    let mut all: Vec<Subgroup> = subs.into_iter().map(|(s, _)| s).collect();
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    if !up_to_conjugacy {
        return Ok(all);
    }
    let mut reps: Vec<Subgroup> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    for h in all {
        if seen.contains(&h.elements) {
            continue;
        }
        for s in 0..g.order() {
            seen.insert(conjugate_subgroup(g, &h, s).elements);
        }
        reps.push(h);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_catalog_group, parse_group_spec, GroupSpec};

    fn group(s: &str) -> FiniteGroup {
        build_catalog_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    /// Every subset closed under multiplication, by brute force over bitmasks.
    fn brute_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if elems.iter().all(|&a| elems.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1)) {
                out.push(elems);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn a4_lattice() {
        let g = group("A4");
        let subs = subgroup_lattice(&g, false).unwrap();
        assert_eq!(subs.len(), 10);
        let mut orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 4, 12]);
        let brute = brute_subgroups(&g);
        let ours: Vec<Vec<usize>> = subs.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(ours, brute);
        assert_eq!(subgroup_lattice(&g, true).unwrap().len(), 5);
    }

    #[test]
    fn lattice_matches_brute_force() {
        for s in ["C2xC2", "C4", "Q8", "D4", "D5", "C2xC2xC2", "C2xC4", "D6", "C12", "C3xC3"] {
            let g = group(s);
            let ours: Vec<Vec<usize>> =
                subgroup_lattice(&g, false).unwrap().iter().map(|h| h.elements().to_vec()).collect();
            assert_eq!(ours, brute_subgroups(&g), "{s}");
        }
    }

    #[test]
    fn q8_subgroups() {
        let g = group("Q8");
        let subs = subgroup_lattice(&g, false).unwrap();
        let count = |k| subs.iter().filter(|h| h.order() == k).count();
        assert_eq!((count(1), count(2), count(4), count(8)), (1, 1, 3, 1));
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        for p in [2, 3, 5, 7, 11] {
            let g = build_catalog_group(&GroupSpec::Cyclic(p)).unwrap();
            assert_eq!(subgroup_lattice(&g, false).unwrap().len(), 2);
        }
    }

    #[test]
    fn lattice_bound_is_enforced() {
        let g = group("PSL(2,11)");
        assert!(matches!(subgroup_lattice(&g, false), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn sylow_examples() {
        let a4 = group("A4");
        let v4 = sylow_subgroup(&a4, 2);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal_in(&a4));
        let psl5 = group("PSL(2,5)");
        let s5 = sylow_subgroup(&psl5, 5);
        assert_eq!(s5.order(), 5);
        let s2 = sylow_subgroup(&psl5, 2);
        assert_eq!(s2.order(), 4);
        assert!(s2.is_abelian(&psl5));
        let n2 = normalizer(&psl5, &s2);
        assert_eq!(n2.order(), 12);
        let n2g = FiniteGroup::from_subgroup(&psl5, &n2).unwrap();
        assert_eq!(n2g.conjugacy_data().len(), 4);
        assert_eq!(n2g.exponent(), 6);
        assert_eq!(sylow_subgroup(&group("C4"), 3), Subgroup::trivial());
    }

    #[test]
    fn sylow_conjugates_are_all_sylows() {
        for s in ["A4", "D5", "D6", "Q8", "C2xD3", "PSL(2,5)", "C3xA4"] {
            let g = group(s);
            let subs = subgroup_lattice(&g, false).unwrap();
            for p in [2u64, 3, 5] {
                let syl = sylow_subgroup(&g, p);
                assert_eq!(syl.order(), prime_part(g.order(), p as usize), "{s} p={p}");
                let mut conj: Vec<Subgroup> = (0..g.order()).map(|x| conjugate_subgroup(&g, &syl, x)).collect();
                conj.sort();
                conj.dedup();
                let mut all: Vec<Subgroup> = subs.iter().filter(|h| h.order() == syl.order()).cloned().collect();
                all.sort();
                assert_eq!(conj, all, "{s} p={p}");
            }
        }
    }

    #[test]
    fn psl_sylow_p_normalizer() {
        for p in [5u64, 7, 11] {
            let g = group(&format!("PSL(2,{p})"));
            let h = sylow_subgroup(&g, p);
            assert_eq!(h.order() as u64, p);
            assert_eq!(normalizer(&g, &h).order() as u64, p * (p - 1) / 2);
        }
    }

    #[test]
    fn normalizer_in_abelian_is_everything() {
        let g = group("C4xC2");
        for h in subgroup_lattice(&g, false).unwrap() {
            assert_eq!(normalizer(&g, &h).order(), 8);
            assert_eq!(centralizer(&g, &h).order(), 8);
        }
    }

    fn check_double_cosets(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> usize {
        let reps = double_cosets(g, k, h);
        let mut owner = vec![usize::MAX; g.order()];
        let mut total = 0;
        for (i, &s) in reps.iter().enumerate() {
            let mut set = std::collections::BTreeSet::new();
            for &a in k.elements() {
                for &b in h.elements() {
                    set.insert(g.mul(g.mul(a, s), b));
                }
            }
            for &x in &set {
                assert_eq!(owner[x], usize::MAX, "double cosets overlap");
                owner[x] = i;
            }
            assert_eq!(*set.iter().next().unwrap(), s, "least index representative");
            total += set.len();
        }
        assert_eq!(total, g.order());
        reps.len()
    }

    #[test]
    fn double_coset_examples() {
        let a4 = group("A4");
        let whole = Subgroup::whole(&a4);
        assert_eq!(double_cosets(&a4, &whole, &whole), vec![0]);
        let v4 = sylow_subgroup(&a4, 2);
        assert_eq!(check_double_cosets(&a4, &v4, &v4), 3);
        let d5 = group("D5");
        let refl = closure(&d5, &[5]);
        assert_eq!(refl.order(), 2);
        assert_eq!(check_double_cosets(&d5, &refl, &refl), 3);
        let c3 = sylow_subgroup(&a4, 3);
        check_double_cosets(&a4, &v4, &c3);
        check_double_cosets(&a4, &c3, &c3);
    }

    #[test]
    fn transversal_partitions() {
        let g = group("D6");
        for h in subgroup_lattice(&g, false).unwrap() {
            let reps = left_transversal(&g, &h);
            assert_eq!(reps.len() * h.order(), g.order());
            let mut seen = vec![false; g.order()];
            for &s in &reps {
                for &x in h.elements() {
                    assert!(!seen[g.mul(s, x)]);
                    seen[g.mul(s, x)] = true;
                }
            }
        }
    }
}
