//! Finite groups given by explicit multiplication tables.

mod catalog;
mod spec;
mod subgroup;

use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use catalog::build_catalog_group;
pub(crate) use spec::is_prime;
pub use spec::{parse_group_spec, GroupSpec, SpecError};
pub use subgroup::{
    centralizer, closure, conjugate_subgroup, double_cosets, left_transversal, normalizer, subgroup_lattice,
    sylow_subgroup, Subgroup, SUBGROUP_LATTICE_BOUND,
};

/// A finite group with elements `0..n`, element `0` being the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    elem_order: Vec<usize>,
    labels: Vec<String>,
    descriptor: Option<GroupSpec>,
    classes: OnceLock<Arc<ConjClassData>>,
}

/// Conjugacy classes, class sizes and the class power map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassData {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub exponent: usize,
    /// `power_map[k][c]` is the class of `g^k` for `g` in class `c`, `0 <= k < exponent`.
    pub power_map: Vec<Vec<usize>>,
}

impl ConjClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Class of `g^k` for `g` in class `c`; `k` may be any integer.
    pub fn power(&self, k: i64, c: usize) -> usize {
        let e = self.exponent as i64;
        self.power_map[k.rem_euclid(e) as usize][c]
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, checking the group law.
    pub fn from_table(mul: Vec<usize>, labels: Vec<String>, descriptor: Option<GroupSpec>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || mul.len() != n * n {
            return Err(Error::InvalidParameter("multiplication table has wrong shape".into()));
        }
        if mul.iter().any(|&x| x >= n) {
            return Err(Error::InvalidParameter("multiplication table entry out of range".into()));
        }
        for a in 0..n {
            if mul[a] != a || mul[a * n] != a {
                return Err(Error::InvalidParameter("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    if mul[b * n + a] != 0 {
                        return Err(Error::InvalidParameter("inverses are not two-sided".into()));
                    }
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::InvalidParameter(format!("element {a} has no inverse")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| mul[mul[a * n + b] * n + c] == mul[a * n + mul[b * n + c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidParameter("table is not associative".into()));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5_eed0_f6e0_u64 ^ n as u64);
            for _ in 0..4096 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidParameter("table is not associative".into()));
                }
            }
        }
        let mut elem_order = vec![0; n];
        for g in 0..n {
            let mut k = 1;
            let mut x = g;
            while x != 0 {
                x = mul[x * n + g];
                k += 1;
            }
            elem_order[g] = k;
        }
        Ok(FiniteGroup { order: n, mul, inv, elem_order, labels, descriptor, classes: OnceLock::new() })
    }

    /// The subgroup `h` of `parent` as a group in its own right: element `i`
    /// of the result is `h.elements()[i]`.
    pub fn from_subgroup(parent: &FiniteGroup, h: &Subgroup) -> Result<FiniteGroup> {
        let elems = h.elements();
        let n = elems.len();
        let mut local = vec![usize::MAX; parent.order()];
        for (i, &g) in elems.iter().enumerate() {
            local[g] = i;
        }
        let mut mul = Vec::with_capacity(n * n);
        for &a in elems {
            for &b in elems {
                mul.push(local[parent.mul(a, b)]);
            }
        }
        let labels = elems.iter().map(|&g| parent.label(g).to_string()).collect();
        let descriptor = if n == parent.order() { parent.descriptor.clone() } else { None };
        FiniteGroup::from_table(mul, labels, descriptor)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g h g^-1`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv[g])
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let m = k.rem_euclid(self.elem_order[g] as i64);
        let mut x = 0;
        for _ in 0..m {
            x = self.mul(x, g);
        }
        x
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.elem_order[g]
    }

    pub fn exponent(&self) -> usize {
        self.elem_order.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn descriptor(&self) -> Option<&GroupSpec> {
        self.descriptor.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    pub fn conjugacy_data(&self) -> Arc<ConjClassData> {
        self.classes.get_or_init(|| Arc::new(self.compute_classes())).clone()
    }

    fn compute_classes(&self) -> ConjClassData {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            let mut size = 0;
            for g in 0..n {
                let y = self.conj(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        let exponent = self.exponent();
        let mut power_map = vec![vec![0; reps.len()]; exponent];
        for (c, &r) in reps.iter().enumerate() {
            let mut x = 0;
            for row in power_map.iter_mut() {
                row[c] = class_of[x];
                x = self.mul(x, r);
            }
        }
        ConjClassData { class_of, reps, sizes, exponent, power_map }
    }
}

/// Direct product table with element `(a, b)` at index `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, descriptor: Option<GroupSpec>) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            mul.push(a.mul(xa, ya) * nb + b.mul(xb, yb));
        }
    }
    let mut labels = Vec::with_capacity(n);
    for x in 0..n {
        labels.push(format!("({},{})", a.label(x / nb), b.label(x % nb)));
    }
    FiniteGroup::from_table(mul, labels, descriptor)
}
