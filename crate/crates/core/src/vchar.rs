//! The ring of virtual characters with its lambda-ring structure.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chartab::CharacterTable;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

/// `chi_i * chi_j = sum_k m_ijk chi_k`, stored sparsely for `i <= j`.
#[derive(Debug)]
pub struct StructureConstants {
    rank: usize,
    entries: Vec<Vec<(usize, BigInt)>>,
}

impl StructureConstants {
    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.rank + j
    }

    /// Nonzero `(k, m_ijk)` pairs.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        &self.entries[self.slot(i, j)]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn compute(table: &CharacterTable) -> Result<StructureConstants> {
        let r = table.rank();
        let mut entries = vec![Vec::new(); r * r];
        for i in 0..r {
            for j in i..r {
                let f: Vec<CycInt> = table.row(i).iter().zip(table.row(j)).map(|(a, b)| a * b).collect();
                let sparse = match table.find_row(&f) {
                    Some(k) => vec![(k, BigInt::one())],
                    None => table.decompose(&f)?.into_iter().enumerate().filter(|(_, m)| !m.is_zero()).collect(),
                };
                entries[i * r + j] = sparse;
            }
        }
        Ok(StructureConstants { rank: r, entries })
    }
}

pub fn structure_constants(table: &CharacterTable) -> Result<Arc<StructureConstants>> {
    if let Some(s) = table.structure.get() {
        return Ok(s.clone());
    }
    let computed = Arc::new(StructureConstants::compute(table)?);
    // a concurrent caller may have won the race; both computed the same value
    Ok(table.structure.get_or_init(|| computed).clone())
}

/// `sum_i coeffs[i] chi_i` over a fixed table.
#[derive(Clone)]
pub struct VirtualCharacter {
    table: Arc<CharacterTable>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for VirtualCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.coeffs == other.coeffs
    }
}

impl Eq for VirtualCharacter {}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualCharacter({self})")
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "r{i}")?;
            } else {
                write!(f, "{mag}*r{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl VirtualCharacter {
    pub fn new(table: Arc<CharacterTable>, coeffs: Vec<BigInt>) -> Result<VirtualCharacter> {
        if coeffs.len() != table.rank() {
            return Err(Error::RankMismatch { expected: table.rank(), found: coeffs.len() });
        }
        Ok(VirtualCharacter { table, coeffs })
    }

    pub fn from_ints(table: &Arc<CharacterTable>, coeffs: &[i64]) -> Result<VirtualCharacter> {
        VirtualCharacter::new(table.clone(), coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(table: &Arc<CharacterTable>) -> VirtualCharacter {
        VirtualCharacter { table: table.clone(), coeffs: vec![BigInt::zero(); table.rank()] }
    }

    pub fn one(table: &Arc<CharacterTable>) -> VirtualCharacter {
        VirtualCharacter::irreducible(table, 0)
    }

    pub fn constant(table: &Arc<CharacterTable>, n: impl Into<BigInt>) -> VirtualCharacter {
        let mut x = VirtualCharacter::zero(table);
        x.coeffs[0] = n.into();
        x
    }

    pub fn irreducible(table: &Arc<CharacterTable>, i: usize) -> VirtualCharacter {
        let mut x = VirtualCharacter::zero(table);
        x.coeffs[i] = BigInt::one();
        x
    }

    /// Decomposes a class function given by its values on classes.
    pub fn from_class_function(table: &Arc<CharacterTable>, values: &[CycInt]) -> Result<VirtualCharacter> {
        Ok(VirtualCharacter { table: table.clone(), coeffs: table.decompose(values)? })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when all coefficients are nonnegative.
    pub fn is_actual(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// The degree `epsilon(x) = sum_i a_i deg(chi_i)`.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().zip(self.table.degrees()).map(|(a, &d)| a * BigInt::from(d)).sum()
    }

    pub fn values(&self) -> Vec<CycInt> {
        self.table.class_function(&self.coeffs)
    }

    /// Splits `x = plus - minus` with both parts actual characters.
    pub fn split_signs(&self) -> (VirtualCharacter, VirtualCharacter) {
        let plus = self.coeffs.iter().map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() }).collect();
        let minus = self.coeffs.iter().map(|c| if c.is_negative() { -c } else { BigInt::zero() }).collect();
        (
            VirtualCharacter { table: self.table.clone(), coeffs: plus },
            VirtualCharacter { table: self.table.clone(), coeffs: minus },
        )
    }

    fn check_table(&self, other: &VirtualCharacter) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &VirtualCharacter) -> Result<VirtualCharacter> {
        self.check_table(other)?;
        Ok(VirtualCharacter {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &VirtualCharacter) -> Result<VirtualCharacter> {
        self.check_table(other)?;
        Ok(VirtualCharacter {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> VirtualCharacter {
        let k = k.into();
        VirtualCharacter { table: self.table.clone(), coeffs: self.coeffs.iter().map(|a| a * &k).collect() }
    }

    pub fn try_mul(&self, other: &VirtualCharacter) -> Result<VirtualCharacter> {
        self.check_table(other)?;
        let sc = structure_constants(&self.table)?;
        let mut out = vec![BigInt::zero(); self.table.rank()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, m) in sc.product(i, j) {
                    out[*k] += &ab * m;
                }
            }
        }
        Ok(VirtualCharacter { table: self.table.clone(), coeffs: out })
    }

    pub fn pow(&self, n: u32) -> VirtualCharacter {
        let mut acc = VirtualCharacter::one(&self.table);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Adams operation `psi^k`, `(psi^k x)(g) = x(g^k)`.
    pub fn adams(&self, k: u64) -> Result<VirtualCharacter> {
        let m = adams_matrix(&self.table, k)?;
        let mut out = vec![BigInt::zero(); self.table.rank()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (slot, v) in out.iter_mut().zip(&m[i]) {
                if !v.is_zero() {
                    *slot += a * v;
                }
            }
        }
        Ok(VirtualCharacter { table: self.table.clone(), coeffs: out })
    }

    /// `[lambda^0 x, ..., lambda^n x]` via Newton's identity
    /// `n lambda^n = sum_{k=1}^n (-1)^(k-1) lambda^(n-k) psi^k`.
    pub fn lambda_series(&self, n: usize) -> Result<Vec<VirtualCharacter>> {
        let mut lam = vec![VirtualCharacter::one(&self.table)];
        let mut psi = Vec::with_capacity(n);
        for k in 1..=n {
            psi.push(self.adams(k as u64)?);
        }
        for m in 1..=n {
            let mut acc = VirtualCharacter::zero(&self.table);
            for k in 1..=m {
                let term = &lam[m - k] * &psi[k - 1];
                acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
            }
            let mm = BigInt::from(m);
            let mut coeffs = Vec::with_capacity(acc.coeffs.len());
            for c in &acc.coeffs {
                let (q, r) = c.div_rem(&mm);
                if !r.is_zero() {
                    return Err(Error::InexactDivision(format!("Newton recursion at lambda^{m}")));
                }
                coeffs.push(q);
            }
            lam.push(VirtualCharacter { table: self.table.clone(), coeffs });
        }
        Ok(lam)
    }

    pub fn lambda(&self, n: usize) -> Result<VirtualCharacter> {
        Ok(self.lambda_series(n)?.pop().unwrap())
    }

    /// `gamma^n(x) = lambda^n(x + n - 1)`.
    pub fn gamma(&self, n: usize) -> Result<VirtualCharacter> {
        if n == 0 {
            return Ok(VirtualCharacter::one(&self.table));
        }
        let shifted = self + &VirtualCharacter::constant(&self.table, n as i64 - 1);
        shifted.lambda(n)
    }

    pub fn gamma_series(&self, n: usize) -> Result<Vec<VirtualCharacter>> {
        (0..=n).map(|m| self.gamma(m)).collect()
    }

    /// Chern class `C_n(rho) = gamma^n(rho - epsilon(rho))` of an actual character.
    pub fn chern(&self, n: usize) -> Result<VirtualCharacter> {
        if !self.is_actual() {
            return Err(Error::NegativeCoefficients);
        }
        let eps = VirtualCharacter::constant(&self.table, self.augmentation());
        let reduced = self - &eps;
        let out = reduced.gamma(n)?;
        if BigInt::from(n) > self.augmentation() && !out.is_zero() {
            return Err(Error::Internal("Chern class above the degree does not vanish".into()));
        }
        Ok(out)
    }
}

/// Row `i` holds the coefficients of `psi^k(chi_i)`.
fn adams_matrix(table: &Arc<CharacterTable>, k: u64) -> Result<Arc<Vec<Vec<BigInt>>>> {
    let classes = table.classes();
    let key = (k % classes.exponent as u64) as usize;
    if let Some(m) = table.adams_perm.lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let r = table.rank();
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let f: Vec<CycInt> = (0..r).map(|c| table.value(i, classes.power_map[key][c]).clone()).collect();
        let row = match table.find_row(&f) {
            Some(j) => {
                let mut v = vec![BigInt::zero(); r];
                v[j] = BigInt::one();
                v
            }
            None => table.decompose(&f).map_err(|e| Error::Internal(format!("Adams operation: {e}")))?,
        };
        rows.push(row);
    }
    let m = Arc::new(rows);
    table.adams_perm.lock().unwrap().insert(key, m.clone());
    Ok(m)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for &VirtualCharacter {
            type Output = VirtualCharacter;
            fn $method(self, rhs: &VirtualCharacter) -> VirtualCharacter {
                self.$inner(rhs).expect("virtual characters over different tables")
            }
        }
        impl $tr for VirtualCharacter {
            type Output = VirtualCharacter;
            fn $method(self, rhs: VirtualCharacter) -> VirtualCharacter {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn neg(self) -> VirtualCharacter {
        VirtualCharacter { table: self.table.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for VirtualCharacter {
    type Output = VirtualCharacter;
    fn neg(self) -> VirtualCharacter {
        -&self
    }
}
