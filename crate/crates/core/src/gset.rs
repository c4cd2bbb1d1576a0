//! Finite G-sets, equivariant bundles over them, and the semi-Tambara axioms.
//!
//! A bundle is stored orbitwise as a character of the stabilizer of each orbit's
//! least point. Pull, push and norm are computed from fiber traces: for `g`
//! fixing `x`, the trace of `g` on `V_x`. With `g` fixing `y`,
//! `(f_* V)(y, g)` sums `V(x, g)` over the fixed points `x` of the fiber, and
//! `(f_# V)(y, g)` multiplies `V(x, g^l)` over the cycles of `g` on the fiber.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use crate::chartab::CharacterTable;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::group::{left_transversal, subgroup_lattice, FiniteGroup, Subgroup};
use crate::transfer::Inclusion;
use crate::vchar::VirtualCharacter;

/// Bound on the number of sections enumerated by [`pi_f`].
pub const SECTION_BOUND: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Least point of the orbit.
    pub anchor: usize,
    pub points: Vec<usize>,
    pub stabilizer: Subgroup,
}

/// A finite set with a left action of `G`.
#[derive(Debug)]
pub struct FiniteGSet {
    group: Arc<FiniteGroup>,
    size: usize,
    /// `act[g * size + x] = g.x`
    act: Vec<usize>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    /// `carrier[x]`: least `g` with `g.anchor = x`.
    carrier: Vec<usize>,
}

impl FiniteGSet {
    /// `action(g, x)` must satisfy `e.x = x` and `g.(h.x) = (gh).x`.
    pub fn from_action(
        group: &Arc<FiniteGroup>,
        size: usize,
        action: impl Fn(usize, usize) -> usize,
    ) -> Result<Arc<FiniteGSet>> {
        let n = group.order();
        let mut act = vec![0; n * size];
        for g in 0..n {
            for x in 0..size {
                let y = action(g, x);
                if y >= size {
                    return Err(Error::InvalidParameter(format!("action sends {x} outside the set")));
                }
                act[g * size + x] = y;
            }
        }
        for x in 0..size {
            if act[x] != x {
                return Err(Error::InvalidParameter("identity does not act trivially".into()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if act[g * size + act[h * size + x]] != act[gh * size + x] {
                        return Err(Error::InvalidParameter("action is not compatible with multiplication".into()));
                    }
                }
            }
        }
        let mut orbit_of = vec![usize::MAX; size];
        let mut carrier = vec![usize::MAX; size];
        let mut orbits = Vec::new();
        for a in 0..size {
            if orbit_of[a] != usize::MAX {
                continue;
            }
            let k = orbits.len();
            let mut points = Vec::new();
            let mut stab = Vec::new();
            for g in 0..n {
                let y = act[g * size + a];
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = k;
                    carrier[y] = g;
                    points.push(y);
                }
                if y == a {
                    stab.push(g);
                }
            }
            points.sort_unstable();
            orbits.push(Orbit { anchor: a, points, stabilizer: Subgroup::from_elements(group, stab)? });
        }
        Ok(Arc::new(FiniteGSet { group: group.clone(), size, act, orbits, orbit_of, carrier }))
    }

    pub fn empty(group: &Arc<FiniteGroup>) -> Arc<FiniteGSet> {
        FiniteGSet::from_action(group, 0, |_, x| x).expect("empty set")
    }

    /// The one-point set `G/G`.
    pub fn point(group: &Arc<FiniteGroup>) -> Arc<FiniteGSet> {
        FiniteGSet::from_action(group, 1, |_, x| x).expect("point")
    }

    /// Left cosets `G/H`, numbered by the least-index transversal.
    pub fn cosets(group: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Arc<FiniteGSet>> {
        let (trans, coset_of) = coset_table(group, h);
        FiniteGSet::from_action(group, trans.len(), |g, i| coset_of[group.mul(g, trans[i])])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x]
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// Least `g` carrying the anchor of `x`'s orbit to `x`.
    pub fn carrier(&self, x: usize) -> usize {
        self.carrier[x]
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }
}

fn coset_table(group: &FiniteGroup, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let trans = left_transversal(group, h);
    let mut coset_of = vec![0; group.order()];
    for (k, &s) in trans.iter().enumerate() {
        for &x in h.elements() {
            coset_of[group.mul(s, x)] = k;
        }
    }
    (trans, coset_of)
}

/// An equivariant map of G-sets.
#[derive(Clone, Debug)]
pub struct GSetMap {
    source: Arc<FiniteGSet>,
    target: Arc<FiniteGSet>,
    map: Vec<usize>,
}

impl GSetMap {
    pub fn new(source: &Arc<FiniteGSet>, target: &Arc<FiniteGSet>, map: Vec<usize>) -> Result<GSetMap> {
        if !Arc::ptr_eq(source.group(), target.group()) {
            return Err(Error::InvalidParameter("G-sets over different groups".into()));
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::InvalidParameter("map has the wrong shape".into()));
        }
        for g in 0..source.group().order() {
            for x in 0..source.len() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!(
                        "f(g.{x}) != g.f({x}) for g = {}",
                        source.group().label(g)
                    )));
                }
            }
        }
        Ok(GSetMap { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(x: &Arc<FiniteGSet>) -> GSetMap {
        GSetMap { source: x.clone(), target: x.clone(), map: (0..x.len()).collect() }
    }

    /// The unique map to the point.
    pub fn to_point(x: &Arc<FiniteGSet>, point: &Arc<FiniteGSet>) -> Result<GSetMap> {
        GSetMap::new(x, point, vec![0; x.len()])
    }

    /// `gH -> gJ` for `H <= J`.
    pub fn coset_projection(
        group: &Arc<FiniteGroup>,
        h: &Subgroup,
        j: &Subgroup,
    ) -> Result<(Arc<FiniteGSet>, Arc<FiniteGSet>, GSetMap)> {
        if !h.is_subgroup_of(j) {
            return Err(Error::NotContained("coset projection needs H <= J".into()));
        }
        let gh = FiniteGSet::cosets(group, h)?;
        let gj = FiniteGSet::cosets(group, j)?;
        let (th, _) = coset_table(group, h);
        let (_, cj) = coset_table(group, j);
        let map = th.iter().map(|&s| cj[s]).collect();
        let f = GSetMap::new(&gh, &gj, map)?;
        Ok((gh, gj, f))
    }

    pub fn source(&self) -> &Arc<FiniteGSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGSet> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| self.map[x] == y).collect()
    }

    pub fn compose(&self, then: &GSetMap) -> Result<GSetMap> {
        if !Arc::ptr_eq(&self.target, &then.source) {
            return Err(Error::InvalidParameter("maps do not compose".into()));
        }
        Ok(GSetMap {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        })
    }
}

/// `A ×_C B` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<FiniteGSet>,
    pub pairs: Vec<(usize, usize)>,
    pub to_a: GSetMap,
    pub to_b: GSetMap,
}

pub fn pullback_gsets(alpha: &GSetMap, beta: &GSetMap) -> Result<Pullback> {
    if !Arc::ptr_eq(alpha.target(), beta.target()) {
        return Err(Error::InvalidParameter("pullback needs a common target".into()));
    }
    let a = alpha.source();
    let b = beta.source();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for x in 0..a.len() {
        for y in 0..b.len() {
            if alpha.apply(x) == beta.apply(y) {
                index.insert((x, y), pairs.len());
                pairs.push((x, y));
            }
        }
    }
    let set = FiniteGSet::from_action(a.group(), pairs.len(), |g, i| {
        let (x, y) = pairs[i];
        index[&(a.act(g, x), b.act(g, y))]
    })?;
    let to_a = GSetMap::new(&set, a, pairs.iter().map(|p| p.0).collect())?;
    let to_b = GSetMap::new(&set, b, pairs.iter().map(|p| p.1).collect())?;
    Ok(Pullback { set, pairs, to_a, to_b })
}

/// `X ⊔ Y` with its inclusions; points of `Y` follow those of `X`.
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub set: Arc<FiniteGSet>,
    pub left: GSetMap,
    pub right: GSetMap,
}

pub fn disjoint_union(x: &Arc<FiniteGSet>, y: &Arc<FiniteGSet>) -> Result<DisjointUnion> {
    let nx = x.len();
    let set =
        FiniteGSet::from_action(
            x.group(),
            nx + y.len(),
            |g, i| if i < nx { x.act(g, i) } else { nx + y.act(g, i - nx) },
        )?;
    let left = GSetMap::new(x, &set, (0..nx).collect())?;
    let right = GSetMap::new(y, &set, (nx..nx + y.len()).collect())?;
    Ok(DisjointUnion { set, left, right })
}

/// `[f, g]: X ⊔ Y -> Z`.
pub fn copair(u: &DisjointUnion, f: &GSetMap, g: &GSetMap) -> Result<GSetMap> {
    let map = f.map.iter().chain(&g.map).copied().collect();
    GSetMap::new(&u.set, f.target(), map)
}

/// The dependent product of `p: A -> X` along `f: X -> Y`: sections of `p` over
/// each fiber of `f`, with `(g.s)(x) = g.s(g^-1 x)`.
#[derive(Clone, Debug)]
pub struct DependentProduct {
    pub set: Arc<FiniteGSet>,
    /// For each section: the point of `Y` and the chosen `s(x)` for `x` in `f^-1(y)` (increasing `x`).
    pub sections: Vec<(usize, Vec<usize>)>,
    pub to_y: GSetMap,
}

impl DependentProduct {
    /// Value of section `i` at `x`.
    pub fn eval(&self, i: usize, f: &GSetMap, x: usize) -> usize {
        let (y, choice) = &self.sections[i];
        let fiber = f.fiber(*y);
        choice[fiber.binary_search(&x).expect("point of the fiber")]
    }
}

pub fn pi_f(p: &GSetMap, f: &GSetMap) -> Result<DependentProduct> {
    if !Arc::ptr_eq(p.target(), f.source()) {
        return Err(Error::InvalidParameter("p and f do not compose".into()));
    }
    let y_set = f.target();
    let group = y_set.group().clone();
    let mut sections: Vec<(usize, Vec<usize>)> = Vec::new();
    for y in 0..y_set.len() {
        let fiber = f.fiber(y);
        let options: Vec<Vec<usize>> = fiber.iter().map(|&x| p.fiber(x)).collect();
        let count = options.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.len()).filter(|&c| c <= SECTION_BOUND));
        match count {
            Some(c) if sections.len() + c <= SECTION_BOUND => {}
            _ => {
                return Err(Error::SizeBound { bound: SECTION_BOUND, what: "sections of the dependent product".into() })
            }
        }
        let mut choice = vec![0usize; fiber.len()];
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            sections.push((y, choice.iter().zip(&options).map(|(&k, o)| o[k]).collect()));
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> =
        sections.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let fibers: Vec<Vec<usize>> = (0..y_set.len()).map(|y| f.fiber(y)).collect();
    let a = p.source();
    let x_set = f.source();
    let set = FiniteGSet::from_action(&group, sections.len(), |g, i| {
        let (y, choice) = &sections[i];
        let gy = y_set.act(g, *y);
        let g_inv = group.inv(g);
        let new_choice: Vec<usize> = fibers[gy]
            .iter()
            .map(|&x| {
                let src = x_set.act(g_inv, x);
                let k = fibers[*y].binary_search(&src).expect("fiber point");
                a.act(g, choice[k])
            })
            .collect();
        index[&(gy, new_choice)]
    })?;
    let to_y = GSetMap::new(&set, y_set, sections.iter().map(|s| s.0).collect())?;
    Ok(DependentProduct { set, sections, to_y })
}

/// Number of equivariant maps `S -> T` over a common base, i.e. with
/// `t_proj(phi(s)) = s_proj(s)`: each orbit anchor may go to any point over
/// its image fixed by its stabilizer.
pub fn count_maps_over(s_proj: &GSetMap, t_proj: &GSetMap) -> Result<BigInt> {
    if !Arc::ptr_eq(s_proj.target(), t_proj.target()) {
        return Err(Error::InvalidParameter("maps over different bases".into()));
    }
    let s = s_proj.source();
    let t = t_proj.source();
    let mut total = BigInt::from(1);
    for o in s.orbits() {
        let base = s_proj.apply(o.anchor);
        let k = (0..t.len())
            .filter(|&y| t_proj.apply(y) == base && o.stabilizer.elements().iter().all(|&g| t.act(g, y) == y))
            .count();
        total *= k;
    }
    Ok(total)
}

/// Tables for stabilizers, shared so that bundles over equal stabilizers compare equal.
#[derive(Debug)]
pub struct BundleContext {
    table: Arc<CharacterTable>,
    cache: Mutex<HashMap<Subgroup, Arc<Inclusion>>>,
}

impl BundleContext {
    pub fn new(table: &Arc<CharacterTable>) -> BundleContext {
        BundleContext { table: table.clone(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn inclusion(&self, h: &Subgroup) -> Result<Arc<Inclusion>> {
        if let Some(inc) = self.cache.lock().unwrap().get(h) {
            return Ok(inc.clone());
        }
        let inc = Arc::new(Inclusion::new(&self.table, h)?);
        Ok(self.cache.lock().unwrap().entry(h.clone()).or_insert(inc).clone())
    }

    fn check_set(&self, x: &FiniteGSet) -> Result<()> {
        if Arc::ptr_eq(x.group(), self.table.group()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("G-set over a different group".into()))
        }
    }

    pub fn zero(&self, base: &Arc<FiniteGSet>) -> Result<EquivBundle> {
        self.check_set(base)?;
        let fibers = base
            .orbits()
            .iter()
            .map(|o| Ok(VirtualCharacter::zero(self.inclusion(&o.stabilizer)?.sub())))
            .collect::<Result<_>>()?;
        Ok(EquivBundle { base: base.clone(), fibers })
    }

    pub fn trivial(&self, base: &Arc<FiniteGSet>) -> Result<EquivBundle> {
        self.check_set(base)?;
        let fibers = base
            .orbits()
            .iter()
            .map(|o| Ok(VirtualCharacter::one(self.inclusion(&o.stabilizer)?.sub())))
            .collect::<Result<_>>()?;
        Ok(EquivBundle { base: base.clone(), fibers })
    }

    /// A bundle from one stabilizer character per orbit.
    pub fn bundle(&self, base: &Arc<FiniteGSet>, fibers: Vec<VirtualCharacter>) -> Result<EquivBundle> {
        self.check_set(base)?;
        if fibers.len() != base.orbits().len() {
            return Err(Error::RankMismatch { expected: base.orbits().len(), found: fibers.len() });
        }
        for (o, v) in base.orbits().iter().zip(&fibers) {
            if !Arc::ptr_eq(v.table(), self.inclusion(&o.stabilizer)?.sub()) {
                return Err(Error::TableMismatch);
            }
        }
        Ok(EquivBundle { base: base.clone(), fibers })
    }

    /// Stabilizer characters with random coefficients in `lo..=hi`.
    pub fn random_bundle(&self, base: &Arc<FiniteGSet>, rng: &mut impl Rng, lo: i64, hi: i64) -> Result<EquivBundle> {
        let fibers = base
            .orbits()
            .iter()
            .map(|o| {
                let t = self.inclusion(&o.stabilizer)?.sub().clone();
                let c: Vec<i64> = (0..t.rank()).map(|_| rng.gen_range(lo..=hi)).collect();
                VirtualCharacter::from_ints(&t, &c)
            })
            .collect::<Result<_>>()?;
        self.bundle(base, fibers)
    }

    /// Fiber traces: `[x][g]` is the trace of `g` on `V_x` when `g.x = x`.
    fn traces(&self, v: &EquivBundle) -> Result<Vec<Vec<Option<CycInt>>>> {
        let base = &v.base;
        let g = base.group();
        let mut out = vec![vec![None; g.order()]; base.len()];
        for (k, o) in base.orbits().iter().enumerate() {
            let inc = self.inclusion(&o.stabilizer)?;
            let vals = v.fibers[k].values();
            let hc = inc.sub().classes();
            for &x in &o.points {
                let s = base.carrier(x);
                let s_inv = g.inv(s);
                for h in 0..g.order() {
                    if base.act(h, x) == x {
                        let back = g.mul(g.mul(s_inv, h), s);
                        let local = inc
                            .local(back)
                            .ok_or_else(|| Error::Internal("carrier does not conjugate stabilizers".into()))?;
                        out[x][h] = Some(vals[hc.class_of[local]].clone());
                    }
                }
            }
        }
        Ok(out)
    }

    fn bundle_from_traces(&self, base: &Arc<FiniteGSet>, tr: &[Vec<Option<CycInt>>]) -> Result<EquivBundle> {
        let fibers = base
            .orbits()
            .iter()
            .map(|o| {
                let inc = self.inclusion(&o.stabilizer)?;
                let f: Vec<CycInt> = inc
                    .sub()
                    .classes()
                    .reps
                    .iter()
                    .map(|&k| tr[o.anchor][inc.embedding()[k]].clone().expect("stabilizer element"))
                    .collect();
                VirtualCharacter::from_class_function(inc.sub(), &f)
            })
            .collect::<Result<_>>()?;
        Ok(EquivBundle { base: base.clone(), fibers })
    }

    /// `(f^* V)_x = V_f(x)`.
    pub fn pull(&self, f: &GSetMap, v: &EquivBundle) -> Result<EquivBundle> {
        self.check_base(f.target(), v)?;
        let tr = self.traces(v)?;
        let src = f.source();
        let g = src.group();
        let mut out = vec![vec![None; g.order()]; src.len()];
        for x in 0..src.len() {
            for h in 0..g.order() {
                if src.act(h, x) == x {
                    out[x][h] = tr[f.apply(x)][h].clone();
                }
            }
        }
        self.bundle_from_traces(src, &out)
    }

    /// `(f_* V)_y = ⊕_{x in f^-1(y)} V_x`.
    pub fn push(&self, f: &GSetMap, v: &EquivBundle) -> Result<EquivBundle> {
        self.check_base(f.source(), v)?;
        let tr = self.traces(v)?;
        let tgt = f.target();
        let g = tgt.group();
        let e = self.table.exponent();
        let mut out = vec![vec![None; g.order()]; tgt.len()];
        for y in 0..tgt.len() {
            let fiber = f.fiber(y);
            for h in 0..g.order() {
                if tgt.act(h, y) == y {
                    let mut acc = CycInt::zero(e);
                    for &x in &fiber {
                        if let Some(t) = &tr[x][h] {
                            acc = &acc + t;
                        }
                    }
                    out[y][h] = Some(acc);
                }
            }
        }
        self.bundle_from_traces(tgt, &out)
    }

    /// `(f_# V)_y = ⊗_{x in f^-1(y)} V_x`; needs actual fibers.
    pub fn norm(&self, f: &GSetMap, v: &EquivBundle) -> Result<EquivBundle> {
        self.check_base(f.source(), v)?;
        if !v.is_actual() {
            return Err(Error::NegativeCoefficients);
        }
        let tr = self.traces(v)?;
        let src = f.source();
        let tgt = f.target();
        let g = tgt.group();
        let e = self.table.exponent();
        let mut out = vec![vec![None; g.order()]; tgt.len()];
        for y in 0..tgt.len() {
            let fiber = f.fiber(y);
            for h in 0..g.order() {
                if tgt.act(h, y) != y {
                    continue;
                }
                let mut seen = vec![false; fiber.len()];
                let mut acc = CycInt::one(e);
                for i in 0..fiber.len() {
                    if seen[i] {
                        continue;
                    }
                    let x = fiber[i];
                    let mut len = 0;
                    let mut z = x;
                    loop {
                        let k = fiber.binary_search(&z).expect("fiber is h-stable");
                        seen[k] = true;
                        len += 1;
                        z = src.act(h, z);
                        if z == x {
                            break;
                        }
                    }
                    let hl = g.pow(h, len as i64);
                    acc = &acc * tr[x][hl].as_ref().expect("h^len fixes x");
                }
                out[y][h] = Some(acc);
            }
        }
        self.bundle_from_traces(tgt, &out)
    }

    fn check_base(&self, x: &Arc<FiniteGSet>, v: &EquivBundle) -> Result<()> {
        if Arc::ptr_eq(x, &v.base) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("bundle lives over a different G-set".into()))
        }
    }
}

/// An equivariant virtual bundle: one stabilizer character per orbit.
#[derive(Clone, Debug)]
pub struct EquivBundle {
    base: Arc<FiniteGSet>,
    fibers: Vec<VirtualCharacter>,
}

impl PartialEq for EquivBundle {
    fn eq(&self, other: &EquivBundle) -> bool {
        Arc::ptr_eq(&self.base, &other.base) && self.fibers == other.fibers
    }
}

impl Eq for EquivBundle {}

impl EquivBundle {
    pub fn base(&self) -> &Arc<FiniteGSet> {
        &self.base
    }

    pub fn fibers(&self) -> &[VirtualCharacter] {
        &self.fibers
    }

    pub fn is_actual(&self) -> bool {
        self.fibers.iter().all(VirtualCharacter::is_actual)
    }

    pub fn try_add(&self, other: &EquivBundle) -> Result<EquivBundle> {
        if !Arc::ptr_eq(&self.base, &other.base) {
            return Err(Error::InvalidParameter("bundles over different G-sets".into()));
        }
        let fibers = self.fibers.iter().zip(&other.fibers).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(EquivBundle { base: self.base.clone(), fibers })
    }

    pub fn try_mul(&self, other: &EquivBundle) -> Result<EquivBundle> {
        if !Arc::ptr_eq(&self.base, &other.base) {
            return Err(Error::InvalidParameter("bundles over different G-sets".into()));
        }
        let fibers = self.fibers.iter().zip(&other.fibers).map(|(a, b)| a.try_mul(b)).collect::<Result<_>>()?;
        Ok(EquivBundle { base: self.base.clone(), fibers })
    }
}

/// Which semi-Tambara axiom an instance exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Pullback squares: `delta^* gamma_* = beta_* alpha^*` and the same with norms.
    Pullback,
    /// Bundles over `X ⊔ Y` split into their restrictions; push and norm to the point split too.
    DisjointUnion,
    /// Exponential diagrams: `f_# p_* = q_* f'_# e^*`.
    Exponential,
}

#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub description: String,
    /// Total number of points involved, used to pick the smallest counterexample.
    pub size: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TambaraReport {
    pub checks: HashMap<String, usize>,
    pub failures: Vec<AxiomFailure>,
}

impl TambaraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.checks.values().sum()
    }

    fn count(&mut self, axiom: Axiom) {
        *self.checks.entry(format!("{axiom:?}")).or_default() += 1;
    }

    /// The failing instance with the fewest points.
    pub fn smallest_counterexample(&self) -> Option<&AxiomFailure> {
        self.failures.iter().min_by_key(|f| f.size)
    }
}

/// Largest group the suite accepts.
pub const TAMBARA_GROUP_BOUND: usize = 24;

/// Checks the three axioms on bundles sampled over coset spaces of subgroups
/// (up to conjugacy): every single irreducible on each orbit, plus `samples`
/// random bundles (virtual for axioms 1 and 2, actual for norms).
pub fn tambara_axiom_suite(
    table: &Arc<CharacterTable>,
    size_bound: usize,
    samples: usize,
    seed: u64,
) -> Result<TambaraReport> {
    let group = table.group().clone();
    if group.order() > TAMBARA_GROUP_BOUND {
        return Err(Error::GroupTooLarge {
            order: group.order(),
            bound: TAMBARA_GROUP_BOUND,
            what: "Tambara axiom suite",
        });
    }
    let ctx = BundleContext::new(table);
    let subs = subgroup_lattice(&group, false)?;
    let reps = subgroup_lattice(&group, true)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = TambaraReport::default();
    let point = FiniteGSet::point(&group);
    let sample_bundles = |ctx: &BundleContext,
                          base: &Arc<FiniteGSet>,
                          rng: &mut rand_chacha::ChaCha8Rng,
                          actual: bool|
     -> Result<Vec<EquivBundle>> {
        let mut out = Vec::new();
        for (k, o) in base.orbits().iter().enumerate() {
            let t = ctx.inclusion(&o.stabilizer)?.sub().clone();
            for i in 0..t.rank() {
                let mut fibers: Vec<VirtualCharacter> = base
                    .orbits()
                    .iter()
                    .map(|o| Ok(VirtualCharacter::zero(ctx.inclusion(&o.stabilizer)?.sub())))
                    .collect::<Result<_>>()?;
                fibers[k] = VirtualCharacter::irreducible(&t, i);
                out.push(ctx.bundle(base, fibers)?);
            }
        }
        for _ in 0..samples {
            let (lo, hi) = if actual { (0, 2) } else { (-2, 2) };
            out.push(ctx.random_bundle(base, rng, lo, hi)?);
        }
        Ok(out)
    };

    // pullback squares: G/H -> G/J <- G/K for H, K <= J, J up to conjugacy
    for j in &reps {
        let below: Vec<&Subgroup> = subs.iter().filter(|h| h.is_subgroup_of(j)).collect();
        for h in &below {
            for k in &below {
                let (a, c, gamma) = GSetMap::coset_projection(&group, h, j)?;
                let b = FiniteGSet::cosets(&group, k)?;
                let (_, _, delta0) = GSetMap::coset_projection(&group, k, j)?;
                let delta = GSetMap::new(&b, &c, delta0.map.clone())?;
                let pb = pullback_gsets(&gamma, &delta)?;
                let size = a.len() + b.len() + c.len() + pb.set.len();
                if size > size_bound {
                    continue;
                }
                let desc = |what: &str, v: &EquivBundle| {
                    format!("{what}: H={}, K={}, J={}, bundle {:?}", h.order(), k.order(), j.order(), v.fibers())
                };
                for v in sample_bundles(&ctx, &a, &mut rng, false)? {
                    report.count(Axiom::Pullback);
                    let lhs = ctx.pull(&delta, &ctx.push(&gamma, &v)?)?;
                    let rhs = ctx.push(&pb.to_b, &ctx.pull(&pb.to_a, &v)?)?;
                    if lhs != rhs {
                        report.failures.push(AxiomFailure {
                            axiom: Axiom::Pullback,
                            description: desc("push", &v),
                            size,
                        });
                    }
                    if v.is_actual() {
                        report.count(Axiom::Pullback);
                        let lhs = ctx.pull(&delta, &ctx.norm(&gamma, &v)?)?;
                        let rhs = ctx.norm(&pb.to_b, &ctx.pull(&pb.to_a, &v)?)?;
                        if lhs != rhs {
                            report.failures.push(AxiomFailure {
                                axiom: Axiom::Pullback,
                                description: desc("norm", &v),
                                size,
                            });
                        }
                    }
                }
            }
        }
    }

    // disjoint unions of two transitive sets
    for h in &reps {
        for k in &reps {
            let x = FiniteGSet::cosets(&group, h)?;
            let y = FiniteGSet::cosets(&group, k)?;
            let u = disjoint_union(&x, &y)?;
            let size = u.set.len();
            if size > size_bound {
                continue;
            }
            let to_pt = GSetMap::to_point(&u.set, &point)?;
            let x_pt = GSetMap::to_point(&x, &point)?;
            let y_pt = GSetMap::to_point(&y, &point)?;
            for v in sample_bundles(&ctx, &u.set, &mut rng, false)? {
                report.count(Axiom::DisjointUnion);
                let vx = ctx.pull(&u.left, &v)?;
                let vy = ctx.pull(&u.right, &v)?;
                let rebuilt = ctx.push(&u.left, &vx)?.try_add(&ctx.push(&u.right, &vy)?)?;
                let pushed = ctx.push(&to_pt, &v)?;
                let split = ctx.push(&x_pt, &vx)?.try_add(&ctx.push(&y_pt, &vy)?)?;
                let mut ok = rebuilt == v && pushed == split;
                if v.is_actual() {
                    let normed = ctx.norm(&to_pt, &v)?;
                    ok &= normed == ctx.norm(&x_pt, &vx)?.try_mul(&ctx.norm(&y_pt, &vy)?)?;
                }
                if !ok {
                    report.failures.push(AxiomFailure {
                        axiom: Axiom::DisjointUnion,
                        description: format!(
                            "G/H ⊔ G/K with |H|={}, |K|={}, bundle {:?}",
                            h.order(),
                            k.order(),
                            v.fibers()
                        ),
                        size,
                    });
                }
            }
        }
    }

    // exponential diagrams from chains K <= H <= J, with A = G/K and A = G/K ⊔ G/H over X = G/H
    for j in &reps {
        for h in subs.iter().filter(|h| h.is_subgroup_of(j)) {
            for k in subs.iter().filter(|k| k.is_subgroup_of(h)) {
                let (gk, x, p0) = GSetMap::coset_projection(&group, k, h)?;
                let (_, y, f0) = GSetMap::coset_projection(&group, h, j)?;
                let f = GSetMap::new(&x, &y, f0.map.clone())?;
                let p = GSetMap::new(&gk, &x, p0.map.clone())?;
                let u = disjoint_union(&gk, &x)?;
                let p_union = copair(&u, &p, &GSetMap::identity(&x))?;
                for (tag, p) in [("G/K", p), ("G/K ⊔ G/H", p_union)] {
                    let a = p.source().clone();
                    let pi = match pi_f(&p, &f) {
                        Ok(pi) => pi,
                        Err(Error::SizeBound { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    let size = a.len() + x.len() + y.len() + pi.set.len();
                    if size > size_bound {
                        continue;
                    }
                    let q = &pi.to_y;
                    let xp = pullback_gsets(&f, q)?;
                    let f_prime = xp.to_b.clone();
                    let e_map: Vec<usize> = xp.pairs.iter().map(|&(xx, s)| pi.eval(s, &f, xx)).collect();
                    let e = GSetMap::new(&xp.set, &a, e_map)?;
                    for v in sample_bundles(&ctx, &a, &mut rng, true)? {
                        report.count(Axiom::Exponential);
                        let lhs = ctx.norm(&f, &ctx.push(&p, &v)?)?;
                        let rhs = ctx.push(q, &ctx.norm(&f_prime, &ctx.pull(&e, &v)?)?)?;
                        if lhs != rhs {
                            report.failures.push(AxiomFailure {
                                axiom: Axiom::Exponential,
                                description: format!(
                                    "A = {tag}, |K|={}, |H|={}, |J|={}, bundle {:?}",
                                    k.order(),
                                    h.order(),
                                    j.order(),
                                    v.fibers()
                                ),
                                size,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
