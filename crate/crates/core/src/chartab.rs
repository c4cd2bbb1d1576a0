//! Exact complex character tables.
//!
//! Abelian groups get their table from the dual group, `D_n`, `Q8` and `A4`
//! from closed formulas, and non-abelian direct products from Kronecker
//! products of factor tables. All values are stored in `Z[zeta_e]` with `e`
//! the exponent of the group.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::group::{build_catalog_group, ConjClassData, FiniteGroup, GroupSpec};

/// Character table of a finite group. Row 0 is always the trivial character.
#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Arc<ConjClassData>,
    values: Vec<Vec<CycInt>>,
    degrees: Vec<u64>,
    exponent: u64,
    weighted_conj: Vec<Vec<CycInt>>,
    row_lookup: HashMap<Vec<CycInt>, usize>,
    pub(crate) structure: OnceLock<Arc<crate::vchar::StructureConstants>>,
    pub(crate) adams_perm: std::sync::Mutex<HashMap<usize, Arc<Vec<Vec<BigInt>>>>>,
}

impl CharacterTable {
    /// Builds a table from rows of class-function values (one entry per class),
    /// sorting rows canonically. The rows are not validated; see
    /// [`CharacterTable::check_orthogonality`].
    pub fn from_rows(group: Arc<FiniteGroup>, rows: Vec<Vec<CycInt>>) -> Result<CharacterTable> {
        let classes = group.conjugacy_data();
        let e = group.exponent() as u64;
        if rows.len() != classes.len() || rows.iter().any(|r| r.len() != classes.len()) {
            return Err(Error::Internal("table shape does not match the class count".into()));
        }
        let mut rows: Vec<Vec<CycInt>> = rows.into_iter().map(|r| r.into_iter().map(|v| v.lift(e)).collect()).collect();
        let mut degrees = Vec::with_capacity(rows.len());
        for r in &rows {
            let d = r[0]
                .as_rational_integer()
                .and_then(|d| u64::try_from(d).ok())
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Internal("character degree is not a positive integer".into()))?;
            degrees.push(d);
        }
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| canonical_row_cmp((degrees[a], &rows[a]), (degrees[b], &rows[b])));
        rows = order.iter().map(|&i| std::mem::take(&mut rows[i])).collect();
        let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();
        let weighted_conj = rows
            .iter()
            .map(|r| r.iter().zip(&classes.sizes).map(|(v, &s)| v.conj().scale(&BigInt::from(s))).collect())
            .collect();
        let row_lookup = rows.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Ok(CharacterTable {
            group,
            classes,
            values: rows,
            degrees,
            exponent: e,
            weighted_conj,
            row_lookup,
            structure: OnceLock::new(),
            adams_perm: std::sync::Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ConjClassData> {
        &self.classes
    }

    /// Number of irreducible characters (equal to the number of classes).
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn value(&self, i: usize, c: usize) -> &CycInt {
        &self.values[i][c]
    }

    pub fn row(&self, i: usize) -> &[CycInt] {
        &self.values[i]
    }

    pub fn values(&self) -> &[Vec<CycInt>] {
        &self.values
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Index of the irreducible character with exactly these values, if any.
    pub fn find_row(&self, f: &[CycInt]) -> Option<usize> {
        self.row_lookup.get(f).copied()
    }

    pub fn is_linear(&self, i: usize) -> bool {
        self.degrees[i] == 1
    }

    /// `(1/|G|) sum_c |c| f(c) conj(g(c))`
    pub fn inner_product(&self, f: &[CycInt], g: &[CycInt]) -> Result<CycInt> {
        let mut acc = CycInt::zero(self.exponent);
        for (c, (x, y)) in f.iter().zip(g).enumerate() {
            let term = x * &y.conj();
            acc = &acc + &term.scale(&BigInt::from(self.classes.sizes[c]));
        }
        acc.div_exact(&BigInt::from(self.group.order()))
            .ok_or_else(|| Error::InexactDivision("inner product is not integral".into()))
    }

    /// Coefficients of `f` in the irreducible basis.
    pub fn decompose(&self, f: &[CycInt]) -> Result<Vec<BigInt>> {
        if f.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: f.len() });
        }
        let order = BigInt::from(self.group.order());
        let mut out = Vec::with_capacity(self.rank());
        for w in &self.weighted_conj {
            let mut acc = CycInt::zero(self.exponent);
            for (x, y) in f.iter().zip(w) {
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            let q = acc.div_exact(&order).and_then(|q| q.as_rational_integer()).ok_or_else(|| {
                Error::NotVirtualCharacter("inner product with an irreducible is not a rational integer".into())
            })?;
            out.push(q);
        }
        Ok(out)
    }

    /// Values of `sum_i a_i chi_i` on each class.
    pub fn class_function(&self, coeffs: &[BigInt]) -> Vec<CycInt> {
        let mut out = vec![CycInt::zero(self.exponent); self.rank()];
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = &*slot + &self.values[i][c].scale(a);
            }
        }
        out
    }

    pub fn regular_character(&self) -> Vec<CycInt> {
        (0..self.rank())
            .map(|c| {
                let v = if c == 0 { self.group.order() } else { 0 };
                CycInt::from_int(v, self.exponent)
            })
            .collect()
    }

    /// Both orthogonality relations, checked exactly.
    pub fn check_orthogonality(&self) -> bool {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                match self.inner_product(&self.values[i], &self.values[j]) {
                    Ok(v) if v.as_rational_integer() == Some(want) => {}
                    _ => return false,
                }
            }
        }
        for c in 0..r {
            for d in 0..r {
                let mut acc = CycInt::zero(self.exponent);
                for i in 0..r {
                    acc = &acc + &(&self.values[i][c] * &self.values[i][d].conj());
                }
                let want = if c == d { self.group.order() / self.classes.sizes[c] } else { 0 };
                if acc.as_rational_integer() != Some(BigInt::from(want)) {
                    return false;
                }
            }
        }
        self.degrees.iter().map(|d| d * d).sum::<u64>() == self.group.order() as u64
    }
}

/// Rows sort by degree, the trivial character first among equal degrees,
/// then lexicographically by values in class order.
fn canonical_row_cmp(a: (u64, &[CycInt]), b: (u64, &[CycInt])) -> Ordering {
    let trivial = |(d, r): (u64, &[CycInt])| d == 1 && r.iter().all(|v| v.as_rational_integer() == Some(BigInt::one()));
    a.0.cmp(&b.0).then_with(|| trivial(b).cmp(&trivial(a))).then_with(|| {
        for (x, y) in a.1.iter().zip(b.1) {
            match x.canonical_cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

/// Character table of a catalog group, or of any abelian group.
pub fn character_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    if group.is_abelian() {
        return abelian_table(group);
    }
    let spec = group.descriptor().cloned().ok_or_else(|| {
        Error::NoTable(format!("non-abelian group of order {} without a catalog description", group.order()))
    })?;
    let rows = match &spec {
        GroupSpec::Dihedral(n) => dihedral_rows(&group, *n as usize),
        GroupSpec::Quaternion8 => quaternion_rows(&group),
        GroupSpec::Alternating4 => alternating4_rows(&group),
        GroupSpec::Product(a, b) => product_rows(&group, a, b)?,
        other => return Err(Error::NoTable(other.to_string())),
    };
    CharacterTable::from_rows(group, rows)
}

fn rows_from_element_fns(group: &FiniteGroup, fns: Vec<Box<dyn Fn(usize) -> CycInt + '_>>) -> Vec<Vec<CycInt>> {
    let reps = &group.conjugacy_data().reps;
    fns.iter().map(|f| reps.iter().map(|&g| f(g)).collect()).collect()
}

/// Linear characters of an abelian group: assign root-of-unity exponents to a
/// generating set, propagate along a spanning tree of the Cayley graph, and
/// keep the assignments that are homomorphisms.
fn abelian_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    let n = group.order();
    let e = group.exponent();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = crate::group::closure(&group, &[]);
    for x in 0..n {
        if !span.contains(x) {
            gens.push(x);
            span = crate::group::closure(&group, &gens);
        }
    }
    // spanning tree: parent element and generator index
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    parent[0] = (0, usize::MAX);
    let mut bfs = vec![0usize];
    let mut i = 0;
    while i < bfs.len() {
        let x = bfs[i];
        for (gi, &s) in gens.iter().enumerate() {
            let y = group.mul(x, s);
            if parent[y].0 == usize::MAX {
                parent[y] = (x, gi);
                bfs.push(y);
            }
        }
        i += 1;
    }
    let steps: Vec<usize> = gens.iter().map(|&g| e / group.element_order(g)).collect();
    let mut rows = Vec::with_capacity(n);
    let mut choice = vec![0usize; gens.len()];
    let mut exps = vec![0usize; n];
    loop {
        for &x in &bfs[1..] {
            let (p, gi) = parent[x];
            exps[x] = (exps[p] + choice[gi] * steps[gi]) % e;
        }
        let hom = (0..n).all(|x| {
            gens.iter().enumerate().all(|(gi, &s)| exps[group.mul(x, s)] == (exps[x] + choice[gi] * steps[gi]) % e)
        });
        if hom {
            let reps = &group.conjugacy_data().reps;
            rows.push(reps.iter().map(|&r| CycInt::root_of_unity(exps[r] as i64, e as u64)).collect());
        }
        // odometer over generator images
        let mut k = 0;
        loop {
            if k == gens.len() {
                break;
            }
            choice[k] += 1;
            if choice[k] < group.element_order(gens[k]) {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == gens.len() {
            break;
        }
    }
    if rows.len() != n {
        return Err(Error::Internal(format!(
            "found {} linear characters for an abelian group of order {n}",
            rows.len()
        )));
    }
    CharacterTable::from_rows(group, rows)
}

fn dihedral_rows(group: &FiniteGroup, n: usize) -> Vec<Vec<CycInt>> {
    let e = group.exponent() as u64;
    let split = |x: usize| (x % n, x / n);
    let mut fns: Vec<Box<dyn Fn(usize) -> CycInt>> = Vec::new();
    fns.push(Box::new(move |_| CycInt::one(e)));
    fns.push(Box::new(move |x| CycInt::from_int(if split(x).1 == 0 { 1 } else { -1 }, e)));
    if n.is_multiple_of(2) {
        fns.push(Box::new(move |x| CycInt::from_int(if split(x).0 % 2 == 0 { 1 } else { -1 }, e)));
        fns.push(Box::new(move |x| {
            let (a, b) = split(x);
            CycInt::from_int(if (a + b) % 2 == 0 { 1 } else { -1 }, e)
        }));
    }
    for k in 1..=(n - 1) / 2 {
        fns.push(Box::new(move |x| {
            let (a, b) = split(x);
            if b == 1 {
                CycInt::zero(e)
            } else {
                let t = (k * a) as i64;
                &CycInt::root_of_unity(t, n as u64) + &CycInt::root_of_unity(-t, n as u64)
            }
        }));
    }
    rows_from_element_fns(group, fns)
}

fn quaternion_rows(group: &FiniteGroup) -> Vec<Vec<CycInt>> {
    let e = group.exponent() as u64;
    // element 2u + s is (+/-) unit u, units 1, i, j, k
    let lin = |signs: [i64; 4]| move |x: usize| CycInt::from_int(signs[x / 2], e);
    let fns: Vec<Box<dyn Fn(usize) -> CycInt>> = vec![
        Box::new(lin([1, 1, 1, 1])),
        Box::new(lin([1, 1, -1, -1])),
        Box::new(lin([1, -1, 1, -1])),
        Box::new(lin([1, -1, -1, 1])),
        Box::new(move |x| {
            CycInt::from_int(
                match x {
                    0 => 2,
                    1 => -2,
                    _ => 0,
                },
                e,
            )
        }),
    ];
    rows_from_element_fns(group, fns)
}

fn alternating4_rows(group: &FiniteGroup) -> Vec<Vec<CycInt>> {
    let e = group.exponent() as u64;
    let c = group.labels().iter().position(|l| l == "(1 2 3)").expect("A4 contains (1 2 3)");
    let v4: Vec<usize> = (0..group.order()).filter(|&x| group.element_order(x) <= 2).collect();
    // coset exponent k with x in c^k V4
    let coset =
        move |x: usize| -> i64 { (0..3).find(|&k| v4.iter().any(|&v| group.mul(group.pow(c, k), v) == x)).unwrap() };
    let coset = std::rc::Rc::new(coset);
    let (c1, c2) = (coset.clone(), coset.clone());
    let fns: Vec<Box<dyn Fn(usize) -> CycInt + '_>> = vec![
        Box::new(move |_| CycInt::one(e)),
        Box::new(move |x| CycInt::root_of_unity(2 * c1(x), e)),
        Box::new(move |x| CycInt::root_of_unity(-2 * c2(x), e)),
        Box::new(move |x| {
            CycInt::from_int(
                match group.element_order(x) {
                    1 => 3,
                    2 => -1,
                    _ => 0,
                },
                e,
            )
        }),
    ];
    rows_from_element_fns(group, fns)
}

fn product_rows(group: &FiniteGroup, a: &GroupSpec, b: &GroupSpec) -> Result<Vec<Vec<CycInt>>> {
    let ga = Arc::new(build_catalog_group(a)?);
    let gb = Arc::new(build_catalog_group(b)?);
    let nb = gb.order();
    let ta = character_table(ga)?;
    let tb = character_table(gb)?;
    let (ca, cb) = (ta.classes().clone(), tb.classes().clone());
    let reps = &group.conjugacy_data().reps;
    let mut rows = Vec::with_capacity(ta.rank() * tb.rank());
    for i in 0..ta.rank() {
        for j in 0..tb.rank() {
            rows.push(
                reps.iter().map(|&r| ta.value(i, ca.class_of[r / nb]) * tb.value(j, cb.class_of[r % nb])).collect(),
            );
        }
    }
    Ok(rows)
}
