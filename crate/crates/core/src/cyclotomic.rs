//! Exact arithmetic in rings of cyclotomic integers `Z[zeta_e]`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(d-1)` of
//! `Z[x]/(Phi_e(x))` with `d = deg Phi_e`, which makes equality a plain
//! comparison of coefficient vectors once conductors agree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer coefficients of the cyclotomic polynomial `Phi_e`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    pub conductor: u64,
    pub coeffs: Vec<BigInt>,
}

impl CycPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact division of `num` by the monic polynomial `den`; panics on a nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, d) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * d;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<CycPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `e`-th cyclotomic polynomial, obtained by dividing `x^e - 1` by every
/// `Phi_d` with `d | e, d < e`. Results are memoised process-wide.
pub fn cyclotomic_polynomial(e: u64) -> Arc<CycPoly> {
    assert!(e >= 1, "conductor must be positive");
    if let Some(p) = cache().lock().unwrap().get(&e) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::one();
    for d in divisors(e) {
        if d == e {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = poly_div_exact(&num, &phi_d.coeffs);
    }
    let poly = Arc::new(CycPoly { conductor: e, coeffs: num });
    cache().lock().unwrap().insert(e, poly.clone());
    poly
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// An element of `Z[zeta_e]` in canonical power-basis form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    fn reduce(conductor: u64, mut poly: Vec<BigInt>) -> CycInt {
        let phi = cyclotomic_polynomial(conductor);
        let d = phi.degree();
        for i in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi.coeffs.iter().enumerate().take(d) {
                if !p.is_zero() {
                    poly[i - d + j] -= &c * p;
                }
            }
        }
        poly.resize(d, BigInt::zero());
        CycInt { conductor, coeffs: poly }
    }

    pub fn zero(conductor: u64) -> CycInt {
        let d = cyclotomic_polynomial(conductor).degree();
        CycInt { conductor, coeffs: vec![BigInt::zero(); d] }
    }

    pub fn from_int<T: Into<BigInt>>(n: T, conductor: u64) -> CycInt {
        let mut z = CycInt::zero(conductor);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(conductor: u64) -> CycInt {
        CycInt::from_int(1, conductor)
    }

    /// `zeta_e^k` for any integer `k`.
    pub fn root_of_unity(k: i64, conductor: u64) -> CycInt {
        let k = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        CycInt::reduce(conductor, poly)
    }

    /// Builds the element `sum_i coeffs[i] * zeta^i` (any length) and reduces it.
    pub fn from_poly(poly: Vec<BigInt>, conductor: u64) -> CycInt {
        CycInt::reduce(conductor, poly)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Embeds into `Z[zeta_m]`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u64) -> CycInt {
        assert!(m.is_multiple_of(self.conductor), "lift target must be a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let k = (m / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * k] = c.clone();
        }
        CycInt::reduce(m, poly)
    }

    fn harmonize<'a>(a: &'a CycInt, b: &'a CycInt) -> (std::borrow::Cow<'a, CycInt>, std::borrow::Cow<'a, CycInt>) {
        use std::borrow::Cow;
        if a.conductor == b.conductor {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm(a.conductor, b.conductor);
            (Cow::Owned(a.lift(m)), Cow::Owned(b.lift(m)))
        }
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> CycInt {
        let e = self.conductor as usize;
        let mut poly = vec![BigInt::zero(); e.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(e - i) % e] += c;
            }
        }
        CycInt::reduce(self.conductor, poly)
    }

    /// Galois action `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> CycInt {
        let e = self.conductor as i64;
        let mut poly = vec![BigInt::zero(); e.max(1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[((i as i64) * k).rem_euclid(e) as usize] += c;
            }
        }
        CycInt::reduce(self.conductor, poly)
    }

    /// `Some(n)` exactly when the element is the rational integer `n`.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Division by a rational integer, `None` unless exact in `Z[zeta]`.
    pub fn div_exact(&self, n: &BigInt) -> Option<CycInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CycInt { conductor: self.conductor, coeffs })
    }

    pub fn pow(&self, mut k: u32) -> CycInt {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.conductor);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Total order used for canonical sorting of table rows: compares the
    /// coefficient vectors at a common conductor.
    pub fn canonical_cmp(&self, other: &CycInt) -> Ordering {
        let (a, b) = CycInt::harmonize(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let (a, b) = CycInt::harmonize(self, rhs);
        CycInt { conductor: a.conductor, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        let (a, b) = CycInt::harmonize(self, rhs);
        CycInt { conductor: a.conductor, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        let (a, b) = CycInt::harmonize(self, rhs);
        CycInt::reduce(a.conductor, poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        &self + &rhs
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        &self - &rhs
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        &self * &rhs
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_rational_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{i}", self.conductor)?,
                (_, false) => write!(f, "{mag}*z{}^{i}", self.conductor)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).coeffs, ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4).coeffs, ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12).coeffs, ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5).coeffs, ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn product_over_divisors_is_x_e_minus_one() {
        for e in 1..=60u64 {
            let mut prod = vec![BigInt::one()];
            for d in divisors(e) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(d).coeffs);
            }
            let mut expect = vec![BigInt::zero(); e as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[e as usize] = BigInt::one();
            assert_eq!(prod, expect, "e = {e}");
        }
    }

    #[test]
    fn basic_arithmetic() {
        let i = CycInt::root_of_unity(1, 4);
        assert_eq!((&i * &i).as_rational_integer(), Some(BigInt::from(-1)));

        let w = CycInt::root_of_unity(1, 3);
        let s = &(&CycInt::one(3) + &w) + &CycInt::root_of_unity(2, 3);
        assert!(s.is_zero());

        let z5 = CycInt::root_of_unity(1, 5);
        assert_eq!(z5.conj(), CycInt::root_of_unity(4, 5));

        let mut sum = CycInt::zero(5);
        for k in 1..5 {
            sum = &sum + &CycInt::root_of_unity(k, 5);
        }
        assert_eq!(sum.as_rational_integer(), Some(BigInt::from(-1)));
        assert_eq!(CycInt::from_int(7, 9).as_rational_integer(), Some(BigInt::from(7)));
        assert_eq!(CycInt::root_of_unity(1, 3).as_rational_integer(), None);
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        let i = CycInt::root_of_unity(1, 4);
        let w = CycInt::root_of_unity(1, 3);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, CycInt::root_of_unity(7, 12));
        let z = &i - &i.lift(12);
        assert!(z.is_zero());
    }

    #[test]
    fn conductor_one_and_two() {
        let one = CycInt::one(1);
        assert_eq!(one.coeffs().len(), 1);
        assert_eq!(CycInt::root_of_unity(1, 2).as_rational_integer(), Some(BigInt::from(-1)));
        assert_eq!(CycInt::root_of_unity(5, 1), one);
    }

    fn arb_cyc(e: u64) -> impl Strategy<Value = CycInt> {
        prop::collection::vec(-6i64..=6, e as usize).prop_map(move |v| CycInt::from_poly(ints(&v), e))
    }

    proptest! {
        #[test]
        fn ring_axioms((e, a, b, c) in prop::sample::select(vec![3u64, 4, 5, 8, 9, 12, 15])
            .prop_flat_map(|e| (Just(e), arb_cyc(e), arb_cyc(e), arb_cyc(e)))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            // conj is an involutive ring automorphism
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            // embedding is injective and a ring map
            let la = a.lift(e * 2);
            let lb = b.lift(e * 2);
            prop_assert_eq!(&la * &lb, (&a * &b).lift(e * 2));
            prop_assert_eq!(la == lb, a == b);
        }

        #[test]
        fn conj_fixed_points_are_real(v in prop::collection::vec(-4i64..=4, 7)) {
            let a = CycInt::from_poly(ints(&v), 7);
            let real = &a + &a.conj();
            prop_assert_eq!(real.conj(), real);
        }
    }
}
