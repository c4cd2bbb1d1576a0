//! Sublattices of `Z^r` in Hermite normal form, Smith normal form and quotient
//! presentations.
//!
//! Vectors are rows and linear maps act on the right: `v -> v * A`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigInt>>;

/// A sublattice of `Z^rank` stored by its row Hermite normal form: rows in
/// echelon order with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    rank: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

impl IntLattice {
    pub fn zero(rank: usize) -> IntLattice {
        IntLattice { rank, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(rank: usize) -> IntLattice {
        let basis = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        IntLattice { rank, basis, pivots: (0..rank).collect() }
    }

    pub fn from_generators<I>(rank: usize, gens: I) -> Result<IntLattice>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut l = IntLattice::zero(rank);
        for v in gens {
            l.insert(v)?;
        }
        l.reduce_above();
        Ok(l)
    }

    pub fn from_int_generators(rank: usize, gens: &[Vec<i64>]) -> Result<IntLattice> {
        IntLattice::from_generators(rank, gens.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()))
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    /// Rank of the lattice itself.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank {
            Err(Error::RankMismatch { expected: self.rank, found: v.len() })
        } else {
            Ok(())
        }
    }

    /// Adds a generator, keeping the rows in echelon form. Entries above pivots
    /// are left unreduced until [`IntLattice::reduce_above`].
    fn insert(&mut self, mut v: Vec<BigInt>) -> Result<()> {
        self.check_len(&v)?;
        let mut row = 0;
        loop {
            let Some(col) = v.iter().position(|x| !x.is_zero()) else { return Ok(()) };
            while row < self.pivots.len() && self.pivots[row] < col {
                row += 1;
            }
            if row < self.pivots.len() && self.pivots[row] == col {
                let a = self.basis[row][col].clone();
                let b = v[col].clone();
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    axpy(&mut v, &q, &self.basis[row]);
                } else {
                    let (g, s, t) = ext_gcd(&a, &b);
                    let old = std::mem::take(&mut self.basis[row]);
                    let mut new_row: Vec<BigInt> = old.iter().map(|x| x * &s).collect();
                    axpy(&mut new_row, &t, &v);
                    let ag = &a / &g;
                    let bg = &b / &g;
                    let mut rest: Vec<BigInt> = v.iter().map(|x| x * &ag).collect();
                    axpy(&mut rest, &(-bg), &old);
                    if new_row[col].is_negative() {
                        new_row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.basis[row] = new_row;
                    self.reduce_row_by_later(row);
                    v = rest;
                }
                row += 1;
            } else {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.basis.insert(row, v);
                self.pivots.insert(row, col);
                self.reduce_row_by_later(row);
                return Ok(());
            }
        }
    }

    fn reduce_row_by_later(&mut self, i: usize) {
        for j in i + 1..self.basis.len() {
            let pc = self.pivots[j];
            let p = &self.basis[j][pc];
            let q = self.basis[i][pc].div_floor(p);
            if !q.is_zero() {
                let (head, tail) = self.basis.split_at_mut(j);
                axpy(&mut head[i], &(-q), &tail[0]);
            }
        }
    }

    fn reduce_above(&mut self) {
        for i in (0..self.basis.len()).rev() {
            self.reduce_row_by_later(i);
        }
    }

    /// Coefficients expressing `v` over the basis rows, if `v` lies in the lattice.
    pub fn witness(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.check_len(v)?;
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            if rest[..col].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, r) = rest[col].div_rem(&row[col]);
            if !r.is_zero() {
                return Ok(None);
            }
            axpy(&mut rest, &(-&q), row);
            coeffs.push(q);
        }
        Ok(if is_zero_vec(&rest) { Some(coeffs) } else { None })
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.witness(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> Result<bool> {
        for row in &other.basis {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let mut l = self.clone();
        for row in &other.basis {
            l.insert(row.clone())?;
        }
        l.reduce_above();
        Ok(l)
    }

    pub fn add_generators<I: IntoIterator<Item = Vec<BigInt>>>(&self, gens: I) -> Result<IntLattice> {
        let mut l = self.clone();
        for v in gens {
            l.insert(v)?;
        }
        l.reduce_above();
        Ok(l)
    }

    /// Image under `v -> v * a` for an `rank x m` matrix `a`.
    pub fn image(&self, a: &Matrix, target_rank: usize) -> Result<IntLattice> {
        IntLattice::from_generators(target_rank, self.basis.iter().map(|v| vec_mat(v, a)))
    }

    pub fn intersection(&self, other: &IntLattice) -> Result<IntLattice> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(IntLattice::zero(self.rank));
        }
        // c * B1 = d * B2  <=>  (c, d) in the left kernel of [B1; -B2]
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().map(|r| r.iter().map(|x| -x).collect()));
        let ker = left_kernel(&stacked, self.rank);
        let k = self.basis.len();
        IntLattice::from_generators(self.rank, ker.into_iter().map(|y| vec_mat(&y[..k], &self.basis)))
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lattice of rank {} in Z^{}", self.dim(), self.rank)?;
        for row in &self.basis {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn vec_mat(v: &[BigInt], a: &Matrix) -> Vec<BigInt> {
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![BigInt::zero(); m];
    for (x, row) in v.iter().zip(a) {
        axpy(&mut out, x, row);
    }
    out
}

pub fn identity_matrix(n: usize) -> Matrix {
    IntLattice::full(n).basis
}

/// Basis of `{y : y * x = 0}` for an `m x n` matrix `x` (`n` given for empty `x`).
pub fn left_kernel(x: &Matrix, n: usize) -> Vec<Vec<BigInt>> {
    let m = x.len();
    let rows = x.iter().enumerate().map(|(i, r)| {
        let mut v = r.clone();
        v.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
        v
    });
    let l = IntLattice::from_generators(n + m, rows).expect("consistent widths");
    l.basis.iter().zip(&l.pivots).filter(|(_, &p)| p >= n).map(|(r, _)| r[n..].to_vec()).collect()
}

/// Lattice spanned by `mul(b, c)` over basis vectors `b` of `l1` and `c` of `l2`.
pub fn product_span<F>(l1: &IntLattice, l2: &IntLattice, mut mul: F) -> Result<IntLattice>
where
    F: FnMut(&[BigInt], &[BigInt]) -> Result<Vec<BigInt>>,
{
    if l1.rank != l2.rank {
        return Err(Error::RankMismatch { expected: l1.rank, found: l2.rank });
    }
    let mut out = IntLattice::zero(l1.rank);
    for b in &l1.basis {
        for c in &l2.basis {
            out.insert(mul(b, c)?)?;
        }
    }
    out.reduce_above();
    Ok(out)
}

/// Finitely generated abelian group `Z^free + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub divisors: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, divisors: Vec::new() }
    }

    pub fn finite(divisors: &[u64]) -> Self {
        AbelianInvariants { free_rank: 0, divisors: divisors.iter().map(|&d| BigInt::from(d)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.divisors.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.divisors.iter().product())
    }

    /// Invariants of the `p`-primary part.
    pub fn p_part(&self, p: u64) -> AbelianInvariants {
        let p = BigInt::from(p);
        let mut out = Vec::new();
        for d in &self.divisors {
            let mut q = BigInt::one();
            let mut m = d.clone();
            while m.is_multiple_of(&p) {
                m /= &p;
                q *= &p;
            }
            if !q.is_one() {
                out.push(q);
            }
        }
        AbelianInvariants { free_rank: 0, divisors: out }
    }

    /// Invariants of a direct sum, normalized back into a divisibility chain.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut diag: Vec<BigInt> = self.divisors.iter().chain(&other.divisors).cloned().collect();
        let free = self.free_rank + other.free_rank;
        // Smith form of a diagonal matrix
        let n = diag.len();
        for i in 0..n {
            for j in i + 1..n {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
        diag.retain(|d| !d.is_one());
        AbelianInvariants { free_rank: free, divisors: diag }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend((0..self.free_rank).map(|_| "Z".to_string()));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form `U * a * V = D` with `d_1 | d_2 | ...`; returns
/// `(diagonal, V, V^-1)`. `U` is not tracked.
pub fn smith_normal_form(a: &Matrix, cols: usize) -> (Vec<BigInt>, Matrix, Matrix) {
    let mut m: Matrix = a.clone();
    let rows = m.len();
    let mut v = identity_matrix(cols);
    let mut vinv = identity_matrix(cols);
    let mut diag = Vec::new();

    // column ops: col_j += k * col_i  (V <- V E, V^-1 <- E^-1 V^-1 : row_i of V^-1 -= k row_j)
    fn col_add(m: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in m.iter_mut().chain(v.iter_mut()) {
            let t = &row[i] * k;
            row[j] += t;
        }
        let rj = vinv[j].clone();
        axpy(&mut vinv[i], &(-k), &rj);
    }
    fn col_swap(m: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, i: usize, j: usize) {
        for row in m.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    }
    fn col_neg(m: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, i: usize) {
        for row in m.iter_mut().chain(v.iter_mut()) {
            row[i] = -&row[i];
        }
        vinv[i].iter_mut().for_each(|x| *x = -&*x);
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        col_swap(&mut m, &mut v, &mut vinv, t, bj);
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    let pivot_row = m[t].clone();
                    axpy(&mut m[i], &(-q), &pivot_row);
                    if !m[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    col_add(&mut m, &mut v, &mut vinv, j, t, &(-q));
                    if !m[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                // divisibility: pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
                match bad {
                    Some(i) => {
                        let ri = m[i].clone();
                        axpy(&mut m[t], &BigInt::one(), &ri);
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            col_swap(&mut m, &mut v, &mut vinv, t, best.1);
        }
        if m[t][t].is_negative() {
            col_neg(&mut m, &mut v, &mut vinv, t);
        }
        diag.push(m[t][t].clone());
        t += 1;
    }
    (diag, v, vinv)
}

/// Presentation of `big / small`: coordinates in `Z^k` (with `k = dim big`)
/// are sent through `V` and read modulo the Smith diagonal.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    big: IntLattice,
    /// Smith diagonal padded with zeros to length `k` (zero = free direction).
    moduli: Vec<BigInt>,
    v: Matrix,
    vinv: Matrix,
    invariants: AbelianInvariants,
    /// Indices into `moduli` of the nontrivial components, in invariant order.
    components: Vec<usize>,
}

impl QuotientPresentation {
    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn big(&self) -> &IntLattice {
        &self.big
    }

    /// Coordinates of `x` on the nontrivial components (finite ones reduced
    /// into `[0, d)`), or an error if `x` is not in the big lattice.
    pub fn coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c =
            self.big.witness(x)?.ok_or_else(|| Error::NotContained("vector is not in the larger lattice".into()))?;
        let y = vec_mat(&c, &self.v);
        Ok(self
            .components
            .iter()
            .map(|&i| if self.moduli[i].is_zero() { y[i].clone() } else { y[i].mod_floor(&self.moduli[i]) })
            .collect())
    }

    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.coords(x)?.iter().all(Zero::is_zero))
    }

    /// Additive order of the class of `x`; `None` when infinite.
    pub fn order(&self, x: &[BigInt]) -> Result<Option<BigInt>> {
        let c = self.coords(x)?;
        let mut ord = BigInt::one();
        for (k, &i) in c.iter().zip(&self.components) {
            if k.is_zero() {
                continue;
            }
            let d = &self.moduli[i];
            if d.is_zero() {
                return Ok(None);
            }
            ord = ord.lcm(&(d / d.gcd(k)));
        }
        Ok(Some(ord))
    }

    /// Ambient vectors whose classes generate the nontrivial components, in invariant order.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.components.iter().map(|&i| vec_mat(&self.vinv[i], self.big.basis())).collect()
    }
}

/// Invariants of `big / small`, with the presentation used to compute them.
pub fn quotient_invariants(big: &IntLattice, small: &IntLattice) -> Result<QuotientPresentation> {
    if big.rank != small.rank {
        return Err(Error::RankMismatch { expected: big.rank, found: small.rank });
    }
    let mut rel = Vec::with_capacity(small.dim());
    for row in small.basis() {
        let c = big
            .witness(row)?
            .ok_or_else(|| Error::NotContained("smaller lattice is not contained in the larger".into()))?;
        rel.push(c);
    }
    let k = big.dim();
    let (diag, v, vinv) = smith_normal_form(&rel, k);
    let mut moduli = diag;
    moduli.resize(k, BigInt::zero());
    let components: Vec<usize> = (0..k).filter(|&i| !moduli[i].is_one()).collect();
    let mut divisors = Vec::new();
    let mut free = 0;
    for &i in &components {
        if moduli[i].is_zero() {
            free += 1;
        } else {
            divisors.push(moduli[i].clone());
        }
    }
    Ok(QuotientPresentation {
        big: big.clone(),
        moduli,
        v,
        vinv,
        invariants: AbelianInvariants { free_rank: free, divisors },
        components,
    })
}

/// The subgroup of `big / small` fixed by every `v -> v * A`, as the lattice
/// `F = {v in big : v (A - 1) in small for all A}` together with `F / small`.
pub fn invariant_sublattice_of_quotient(
    big: &IntLattice,
    small: &IntLattice,
    endos: &[Matrix],
) -> Result<(IntLattice, QuotientPresentation)> {
    let r = big.rank;
    if small.rank != r || !big.contains_lattice(small)? {
        return Err(Error::NotContained("smaller lattice is not contained in the larger".into()));
    }
    for a in endos {
        if a.len() != r || a.iter().any(|row| row.len() != r) {
            return Err(Error::RankMismatch { expected: r, found: a.len() });
        }
        if !big.contains_lattice(&big.image(a, r)?)? || !small.contains_lattice(&small.image(a, r)?)? {
            return Err(Error::NotPreserving("endomorphism does not preserve both lattices".into()));
        }
    }
    let k = big.dim();
    let s = small.dim();
    let t = endos.len();
    // rows: big basis mapped by each (A - 1), then small basis in each block
    let mut stacked: Matrix = Vec::with_capacity(k + t * s);
    for b in big.basis() {
        let mut row = Vec::with_capacity(t * r);
        for a in endos {
            let mut img = vec_mat(b, a);
            for (x, y) in img.iter_mut().zip(b) {
                *x -= y;
            }
            row.extend(img);
        }
        stacked.push(row);
    }
    for block in 0..t {
        for sb in small.basis() {
            let mut row = vec![BigInt::zero(); t * r];
            for (x, y) in row[block * r..(block + 1) * r].iter_mut().zip(sb) {
                *x = -y;
            }
            stacked.push(row);
        }
    }
    let fixed = if t == 0 {
        big.clone()
    } else {
        let ker = left_kernel(&stacked, t * r);
        IntLattice::from_generators(r, ker.into_iter().map(|y| vec_mat(&y[..k], big.basis())))?
    };
    let fixed = fixed.sum(small)?;
    let pres = quotient_invariants(&fixed, small)?;
    Ok((fixed, pres))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lat(r: usize, gens: &[&[i64]]) -> IntLattice {
        IntLattice::from_generators(r, gens.iter().map(|g| bv(g))).unwrap()
    }

    #[test]
    fn hnf_examples() {
        let l = lat(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(l.basis(), &vec![bv(&[1, 1]), bv(&[0, 2])]);
        assert!(l.contains(&bv(&[1, -1])).unwrap());
        assert_eq!(l.witness(&bv(&[1, -1])).unwrap(), Some(bv(&[1, -1])));
        let two = lat(2, &[&[2, 0], &[0, 2]]);
        assert!(!two.contains(&bv(&[1, 0])).unwrap());
        assert!(matches!(two.contains(&bv(&[1])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn hnf_matches_box_enumeration() {
        // the lattice generated by {(2,0),(0,2),(1,1)} meets the box [-4,4]^2 in
        // exactly the points with even coordinate sum
        let l = lat(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                assert_eq!(l.contains(&bv(&[x, y])).unwrap(), (x + y) % 2 == 0);
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let full = IntLattice::full(2);
        let two = lat(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(quotient_invariants(&full, &two).unwrap().invariants(), &AbelianInvariants::finite(&[2, 2]));
        assert!(quotient_invariants(&full, &full).unwrap().invariants().is_trivial());
        let z = IntLattice::full(1);
        let twelve = lat(1, &[&[12]]);
        let q = quotient_invariants(&z, &twelve).unwrap();
        assert_eq!(q.invariants(), &AbelianInvariants::finite(&[12]));
        assert_eq!(q.order(&bv(&[8])).unwrap(), Some(BigInt::from(3)));
        assert!(quotient_invariants(&twelve, &z).is_err());
        let free = quotient_invariants(&full, &lat(2, &[&[3, 0]])).unwrap();
        assert_eq!(free.invariants().free_rank, 1);
        assert_eq!(free.invariants().divisors, bv(&[3]));
        assert_eq!(free.order(&bv(&[0, 1])).unwrap(), None);
    }

    #[test]
    fn invariant_examples() {
        let z = IntLattice::full(1);
        let twelve = lat(1, &[&[12]]);
        let (_, q) = invariant_sublattice_of_quotient(&z, &twelve, &[vec![bv(&[1])]]).unwrap();
        assert_eq!(q.invariants(), &AbelianInvariants::finite(&[12]));
        let (fixed, q) = invariant_sublattice_of_quotient(&z, &twelve, &[vec![bv(&[-1])]]).unwrap();
        assert_eq!(q.invariants(), &AbelianInvariants::finite(&[2]));
        assert_eq!(fixed, lat(1, &[&[6]]));
        // cyclic permutation of three coordinates on (Z/2)^3: fixed part is the diagonal
        let full = IntLattice::full(3);
        let two = lat(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let perm = vec![bv(&[0, 1, 0]), bv(&[0, 0, 1]), bv(&[1, 0, 0])];
        let (fixed, q) = invariant_sublattice_of_quotient(&full, &two, &[perm]).unwrap();
        assert_eq!(q.invariants(), &AbelianInvariants::finite(&[2]));
        assert!(fixed.contains(&bv(&[1, 1, 1])).unwrap());
        assert!(!fixed.contains(&bv(&[1, 1, 0])).unwrap());
        let bad = vec![vec![bv(&[1, 0, 0]), bv(&[0, 1, 0]), bv(&[0, 0, 1])]];
        assert!(matches!(invariant_sublattice_of_quotient(&two, &full, &bad), Err(Error::NotContained(_))));
        let swap = vec![vec![bv(&[0, 1]), bv(&[1, 0])]];
        let res = invariant_sublattice_of_quotient(&IntLattice::full(2), &lat(2, &[&[2, 0]]), &swap);
        assert!(matches!(res, Err(Error::NotPreserving(_))));
    }

    #[test]
    fn product_span_examples() {
        let l = lat(2, &[&[1, 2]]);
        let mul = |a: &[BigInt], b: &[BigInt]| Ok(vec![&a[0] * &b[0], &a[1] * &b[1]]);
        assert_eq!(product_span(&l, &l, mul).unwrap(), lat(2, &[&[1, 4]]));
        assert!(product_span(&l, &IntLattice::zero(2), mul).unwrap().is_zero());
    }

    #[test]
    fn intersection_and_kernel() {
        let a = lat(2, &[&[2, 0], &[0, 3]]);
        let b = lat(2, &[&[3, 0], &[0, 2]]);
        assert_eq!(a.intersection(&b).unwrap(), lat(2, &[&[6, 0], &[0, 6]]));
        let k = left_kernel(&vec![bv(&[1, 2]), bv(&[2, 4]), bv(&[0, 1])], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(vec_mat(&k[0], &vec![bv(&[1, 2]), bv(&[2, 4]), bv(&[0, 1])]), bv(&[0, 0]));
    }

    /// Order of every element of Z^n / L by brute force enumeration of a
    /// fundamental box, compared with the invariants from the Smith form.
    fn brute_structure(diag_box: &[i64], l: &IntLattice) -> Vec<usize> {
        let n = diag_box.len();
        let mut pts = vec![vec![0i64; n]];
        for (i, &m) in diag_box.iter().enumerate() {
            let mut next = Vec::new();
            for p in &pts {
                for x in 0..m {
                    let mut q = p.clone();
                    q[i] = x;
                    next.push(q);
                }
            }
            pts = next;
        }
        // representatives modulo L: keep a list of distinct classes
        let mut classes: Vec<Vec<i64>> = Vec::new();
        for p in pts {
            if !classes.iter().any(|c| {
                let d: Vec<BigInt> = c.iter().zip(&p).map(|(a, b)| BigInt::from(a - b)).collect();
                l.contains(&d).unwrap()
            }) {
                classes.push(p);
            }
        }
        let mut orders: Vec<usize> = classes
            .iter()
            .map(|c| {
                (1..)
                    .find(|&k| l.contains(&c.iter().map(|&x| BigInt::from(x * k as i64)).collect::<Vec<_>>()).unwrap())
                    .unwrap()
            })
            .collect();
        orders.sort();
        orders
    }

    fn orders_from_invariants(inv: &AbelianInvariants) -> Vec<usize> {
        let ds: Vec<usize> = inv.divisors.iter().map(|d| usize::try_from(d).unwrap()).collect();
        let mut out = vec![1usize];
        for d in ds {
            let mut next = Vec::new();
            for &o in &out {
                for k in 0..d {
                    let ok = d / num_integer::gcd(d, k);
                    next.push(num_integer::lcm(o, ok));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn hnf_is_canonical(gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..6), seed in 0u64..1000) {
            let l = IntLattice::from_int_generators(3, &gens).unwrap();
            let mut shuffled = gens.clone();
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            // redundant generators: add sums of pairs
            let extra: Vec<Vec<i64>> = shuffled.windows(2).map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| a + b).collect()).collect();
            shuffled.extend(extra);
            prop_assert_eq!(IntLattice::from_int_generators(3, &shuffled).unwrap(), l.clone());
            for g in &gens {
                prop_assert!(l.contains(&bv(g)).unwrap());
            }
        }

        #[test]
        fn sum_laws(a in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..3),
                    b in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..3),
                    c in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..3)) {
            let (la, lb, lc) = (IntLattice::from_int_generators(3, &a).unwrap(), IntLattice::from_int_generators(3, &b).unwrap(), IntLattice::from_int_generators(3, &c).unwrap());
            prop_assert_eq!(la.sum(&lb).unwrap(), lb.sum(&la).unwrap());
            prop_assert_eq!(la.sum(&lb).unwrap().sum(&lc).unwrap(), la.sum(&lb.sum(&lc).unwrap()).unwrap());
            prop_assert_eq!(la.sum(&la).unwrap(), la);
        }

        #[test]
        fn snf_matches_enumeration(d in prop::collection::vec(1i64..=6, 3), off in prop::collection::vec(-8i64..=8, 3)) {
            // full-rank sublattice containing diag(d) * 3 keeps the quotient finite and small
            let m: Vec<i64> = d.iter().map(|x| 3 * x).collect();
            let gens = vec![vec![m[0], 0, 0], vec![0, m[1], 0], vec![0, 0, m[2]], off.clone(), vec![off[1], off[2], off[0]]];
            let l = IntLattice::from_int_generators(3, &gens).unwrap();
            let q = quotient_invariants(&IntLattice::full(3), &l).unwrap();
            prop_assert_eq!(q.invariants().free_rank, 0);
            let ds = &q.invariants().divisors;
            for w in ds.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert_eq!(orders_from_invariants(q.invariants()), brute_structure(&m, &l));
            // generators have the advertised orders
            for (g, dv) in q.generators().iter().zip(ds) {
                prop_assert_eq!(q.order(g).unwrap(), Some(dv.clone()));
            }
        }
    }
}
