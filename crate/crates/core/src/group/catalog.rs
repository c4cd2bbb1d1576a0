//! Constructors for the named groups.

use super::spec::{is_prime, GroupSpec};
use super::{direct_product, FiniteGroup};
use crate::error::{Error, Result};

/// Largest group order the catalog will build.
pub const CATALOG_ORDER_BOUND: u64 = 2_500;

pub fn build_catalog_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec.order() {
        Some(n) if n <= CATALOG_ORDER_BOUND => {}
        _ => {
            return Err(Error::GroupTooLarge {
                order: spec.order().unwrap_or(u64::MAX) as usize,
                bound: CATALOG_ORDER_BOUND as usize,
                what: "catalog construction",
            })
        }
    }
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n as usize),
        GroupSpec::Dihedral(n) => dihedral(*n as usize),
        GroupSpec::Quaternion8 => quaternion8(),
        GroupSpec::Alternating4 => alternating4(),
        GroupSpec::Psl2(p) => psl2(*p),
        GroupSpec::Product(a, b) => {
            let ga = build_catalog_group(a)?;
            let gb = build_catalog_group(b)?;
            direct_product(&ga, &gb, Some(spec.clone()))
        }
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group of order 0".into()));
    }
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroup::from_table(mul, labels, Some(GroupSpec::Cyclic(n as u64)))
}

/// Element `s^a t^b` sits at index `b * n + a`, where `s` is the rotation and `t` a reflection.
fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("dihedral group with n = 0".into()));
    }
    let m = 2 * n;
    let mut mul = Vec::with_capacity(m * m);
    for x in 0..m {
        let (a, b) = (x % n, x / n);
        for y in 0..m {
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            mul.push(((b + d) % 2) * n + rot);
        }
    }
    let labels = (0..m)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            let r = match a {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{a}"),
            };
            match (r.is_empty(), b) {
                (true, 0) => "e".to_string(),
                (true, _) => "t".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r}t"),
            }
        })
        .collect();
    FiniteGroup::from_table(mul, labels, Some(GroupSpec::Dihedral(n as u64)))
}

/// Elements `1, -1, i, -i, j, -j, k, -k` in that order.
fn quaternion8() -> Result<FiniteGroup> {
    // unit index 0..4 = 1, i, j, k; product table of units with sign
    const UNIT: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let decode = |x: usize| (if x.is_multiple_of(2) { 1i8 } else { -1 }, x / 2);
    let encode = |s: i8, u: usize| 2 * u + usize::from(s < 0);
    let mut mul = Vec::with_capacity(64);
    for x in 0..8 {
        let (sx, ux) = decode(x);
        for y in 0..8 {
            let (sy, uy) = decode(y);
            let (s, u) = UNIT[ux][uy];
            mul.push(encode(sx * sy * s, u));
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_table(mul, labels, Some(GroupSpec::Quaternion8))
}

fn is_even(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn cycle_label(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// Even permutations of four points in lexicographic order of their image tuples.
/// The product `ab` applies `b` first.
fn alternating4() -> Result<FiniteGroup> {
    let mut perms = Vec::new();
    let mut p = [0usize, 1, 2, 3];
    loop {
        if is_even(&p) {
            perms.push(p);
        }
        // next lexicographic permutation
        let Some(i) = (0..3).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..4).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    let index = |q: &[usize; 4]| perms.iter().position(|r| r == q).unwrap();
    let mut mul = Vec::with_capacity(144);
    for a in &perms {
        for b in &perms {
            let c = [a[b[0]], a[b[1]], a[b[2]], a[b[3]]];
            mul.push(index(&c));
        }
    }
    let labels = perms.iter().map(|q| cycle_label(q)).collect();
    FiniteGroup::from_table(mul, labels, Some(GroupSpec::Alternating4))
}

/// 2x2 determinant-one matrices over `F_p` modulo `±I`. Each class is stored
/// by the representative whose first nonzero entry lies in `1..=(p-1)/2`;
/// the identity comes first and the rest follow in lexicographic order.
fn psl2(p: u64) -> Result<FiniteGroup> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("PSL(2,{p}) needs an odd prime")));
    }
    let p = p as usize;
    let half = (p - 1) / 2;
    let normalize = |m: [usize; 4]| -> [usize; 4] {
        let lead = m.iter().copied().find(|&x| x != 0).unwrap();
        if lead <= half {
            m
        } else {
            m.map(|x| (p - x) % p)
        }
    };
    let mut mats = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    if (a * d + p * p - b * c) % p == 1 && normalize(m) == m {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let id = [1, 0, 0, 1];
    mats.retain(|m| *m != id);
    mats.insert(0, id);
    let n = mats.len();
    let mut index = std::collections::HashMap::with_capacity(n);
    for (i, m) in mats.iter().enumerate() {
        index.insert(*m, i);
    }
    let mut mul = Vec::with_capacity(n * n);
    for x in &mats {
        for y in &mats {
            let prod = [
                (x[0] * y[0] + x[1] * y[2]) % p,
                (x[0] * y[1] + x[1] * y[3]) % p,
                (x[2] * y[0] + x[3] * y[2]) % p,
                (x[2] * y[1] + x[3] * y[3]) % p,
            ];
            mul.push(index[&normalize(prod)]);
        }
    }
    let labels = mats.iter().map(|m| format!("[{} {}; {} {}]", m[0], m[1], m[2], m[3])).collect();
    FiniteGroup::from_table(mul, labels, Some(GroupSpec::Psl2(p as u64)))
}
