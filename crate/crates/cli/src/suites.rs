//! Verification suites run by `chern verify`.

use std::sync::Arc;

use chern_core::filtration::gamma_filtration;
use chern_core::saturation::{saturation_verdict, stable_element_subring};
use chern_core::{
    build_catalog_group, character_table, parse_group_spec, saturated_filtration, tambara_axiom_suite,
    AbelianInvariants, CharacterTable, FiniteGroup, Inclusion, PrimeIndexNorm, Subgroup, VirtualCharacter,
};
use clap::ValueEnum;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::select::matching_subgroups;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    A4,
    Q8,
    Dihedral,
    C4c4,
    Psl,
    Tambara,
    Norms,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 7] =
        [Suite::A4, Suite::Q8, Suite::Dihedral, Suite::C4c4, Suite::Psl, Suite::Tambara, Suite::Norms];

    pub fn name(self) -> &'static str {
        match self {
            Suite::A4 => "a4",
            Suite::Q8 => "q8",
            Suite::Dihedral => "dihedral",
            Suite::C4c4 => "c4c4",
            Suite::Psl => "psl",
            Suite::Tambara => "tambara",
            Suite::Norms => "norms",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Res<T> = std::result::Result<T, String>;

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Records the outcome of a fallible check; errors count as failures.
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Res<(bool, String)>) {
        match f() {
            Ok((passed, detail)) => self.check(name, passed, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

/// Runs one suite (or all of them, in parallel, reported in fixed order).
pub fn run(suite: Suite, seed: u64) -> Vec<SuiteResult> {
    if suite != Suite::All {
        return vec![run_one(suite, seed)];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = Suite::INDIVIDUAL.iter().map(|&x| s.spawn(move || run_one(x, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

fn run_one(suite: Suite, seed: u64) -> SuiteResult {
    let mut c = Checks::default();
    let outcome = match suite {
        Suite::A4 => a4_suite(&mut c),
        Suite::Q8 => q8_suite(&mut c),
        Suite::Dihedral => dihedral_suite(&mut c),
        Suite::C4c4 => c4c4_suite(&mut c),
        Suite::Psl => psl_suite(&mut c),
        Suite::Tambara => tambara(&mut c, seed),
        Suite::Norms => norms(&mut c, seed),
        Suite::All => unreachable!("expanded by run"),
    };
    if let Err(e) = outcome {
        c.check("suite setup", false, format!("error: {e}"));
    }
    SuiteResult { suite, checks: c.0 }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group(spec: &str) -> Res<Arc<FiniteGroup>> {
    Ok(Arc::new(build_catalog_group(&parse_group_spec(spec).map_err(e2s)?).map_err(e2s)?))
}

fn table(spec: &str) -> Res<Arc<CharacterTable>> {
    Ok(Arc::new(character_table(group(spec)?).map_err(e2s)?))
}

fn inv(d: &[u64]) -> AbelianInvariants {
    AbelianInvariants::finite(d)
}

fn expect_inv(got: &AbelianInvariants, want: &AbelianInvariants) -> (bool, String) {
    (got == want, format!("got {got}, expected {want}"))
}

fn first_of_degree(t: &CharacterTable, d: u64) -> Res<usize> {
    (1..t.rank()).find(|&i| t.degree(i) == d).ok_or_else(|| format!("no irreducible of degree {d}"))
}

/// Linear character whose kernel is exactly `kernel`.
fn linear_with_kernel(t: &Arc<CharacterTable>, kernel: &[usize]) -> Res<VirtualCharacter> {
    let g = t.group();
    let cls = t.classes();
    for i in 1..t.rank() {
        if !t.is_linear(i) {
            continue;
        }
        let ker: Vec<usize> = (0..g.order())
            .filter(|&x| t.value(i, cls.class_of[x]).as_rational_integer() == Some(BigInt::from(1)))
            .collect();
        if ker == kernel {
            return Ok(VirtualCharacter::irreducible(t, i));
        }
    }
    Err("no linear character with the requested kernel".into())
}

fn c1(x: &VirtualCharacter) -> Res<VirtualCharacter> {
    x.chern(1).map_err(e2s)
}

fn row(t: &Arc<CharacterTable>, r: &[BigInt]) -> VirtualCharacter {
    VirtualCharacter::new(t.clone(), r.to_vec()).expect("lattice rows have the table rank")
}

fn a4_suite(c: &mut Checks) -> Res<()> {
    let t = table("A4")?;
    let f = gamma_filtration(&t, 4).map_err(e2s)?;
    let rho = VirtualCharacter::irreducible(&t, 1);
    let theta = VirtualCharacter::irreducible(&t, first_of_degree(&t, 3)?);
    let x = c1(&rho)?;
    let c2 = theta.chern(2).map_err(e2s)?;
    c.run("degree 1 is Z/3", || Ok(expect_inv(f.graded_piece(1).map_err(e2s)?.invariants(), &inv(&[3]))));
    c.run("3 c1(rho) = 0 in degree 1", || {
        Ok((f.contains(&x.scale(3), 2).map_err(e2s)?, "3 C1(rho) in Gamma^2".into()))
    });
    c.run("C3(theta) = 0", || {
        let c3 = theta.chern(3).map_err(e2s)?;
        Ok((c3.is_zero(), format!("C3(theta) = {c3}")))
    });
    c.run("4 C2(theta) + C1(rho)^2 in Gamma^3", || {
        Ok((f.contains(&(&c2.scale(4) + &(&x * &x)), 3).map_err(e2s)?, String::new()))
    });
    c.run("degree 2 is Z/12", || Ok(expect_inv(f.graded_piece(2).map_err(e2s)?.invariants(), &inv(&[12]))));
    c.run("c2(theta) has order 12", || {
        let order = f.graded_image(&c2, 2).map_err(e2s)?.order;
        Ok((order == Some(BigInt::from(12)), format!("order {order:?}")))
    });
    let sat = saturated_filtration(&t, 4).map_err(e2s)?;
    c.run("A4 is not saturated, first failing degree 2", || {
        let v = saturation_verdict(&sat).map_err(e2s)?;
        Ok((!v.saturated && v.first_failing_degree == Some(2), format!("{v:?}")))
    });
    c.run("F^2/F^3 is Z/6", || Ok(expect_inv(sat.graded_piece(2).map_err(e2s)?.invariants(), &inv(&[6]))));
    c.run("invariant of C2xC2 in degree 3 is not a restriction", || mackey_failure(&t));
    Ok(())
}

/// `z = t1^3 + t2^3 + t1^2 t2` for the ordered pair of nontrivial characters of
/// `V4` making `z` invariant under `A4`; `z` must avoid `res Gamma^3(A4) + Gamma^4(V4)`.
fn mackey_failure(t: &Arc<CharacterTable>) -> Res<(bool, String)> {
    let v4 = matching_subgroups(t.group(), "C2xC2")?.into_iter().next().ok_or("no Klein subgroup")?;
    let inc = Inclusion::new(t, &v4).map_err(e2s)?;
    let s = inc.sub().clone();
    let sg = gamma_filtration(&s, 4).map_err(e2s)?;
    let big = gamma_filtration(t, 3).map_err(e2s)?;
    let mut image = sg.lattice(4).map_err(e2s)?.clone();
    let mut gens = Vec::new();
    for r in big.lattice(3).map_err(e2s)?.basis() {
        gens.push(inc.restrict(&row(t, r)).map_err(e2s)?.into_coeffs());
    }
    image = image.add_generators(gens).map_err(e2s)?;
    for i in 1..s.rank() {
        for j in 1..s.rank() {
            if i == j {
                continue;
            }
            let t1 = c1(&VirtualCharacter::irreducible(&s, i))?;
            let t2 = c1(&VirtualCharacter::irreducible(&s, j))?;
            let z = &(&t1.pow(3) + &t2.pow(3)) + &(&t1.pow(2) * &t2);
            let mut invariant = true;
            for g in 0..t.group().order() {
                let moved = inc.transport(&z, g, &inc).map_err(e2s)?;
                if !sg.contains(&(&moved - &z), 4).map_err(e2s)? {
                    invariant = false;
                    break;
                }
            }
            if invariant {
                let inside = image.contains(z.coeffs()).map_err(e2s)?;
                return Ok((!inside, format!("z = {z} (t1 = c1(r{i}), t2 = c1(r{j})), in image: {inside}")));
            }
        }
    }
    Err("no ordered pair gives an invariant z".into())
}

fn q8_suite(c: &mut Checks) -> Res<()> {
    let t = table("Q8")?;
    let f = gamma_filtration(&t, 4).map_err(e2s)?;
    let delta = VirtualCharacter::irreducible(&t, first_of_degree(&t, 2)?);
    let y = delta.chern(2).map_err(e2s)?;
    let xs: Vec<VirtualCharacter> = (1..t.rank())
        .filter(|&i| t.is_linear(i))
        .map(|i| c1(&VirtualCharacter::irreducible(&t, i)))
        .collect::<Res<_>>()?;
    c.run("degree 1 is (Z/2)^2", || Ok(expect_inv(f.graded_piece(1).map_err(e2s)?.invariants(), &inv(&[2, 2]))));
    c.run("degree 2 is Z/8", || Ok(expect_inv(f.graded_piece(2).map_err(e2s)?.invariants(), &inv(&[8]))));
    c.run("c2(Delta) has order 8", || {
        let order = f.graded_image(&y, 2).map_err(e2s)?.order;
        Ok((order == Some(BigInt::from(8)), format!("order {order:?}")))
    });
    c.run("x_i^2 in Gamma^3", || {
        let mut ok = true;
        for x in &xs {
            ok &= f.contains(&(x * x), 3).map_err(e2s)?;
        }
        Ok((ok, format!("{} linear classes", xs.len())))
    });
    c.run("x1 x2 - 4y in Gamma^3", || {
        Ok((f.contains(&(&(&xs[0] * &xs[1]) - &y.scale(4)), 3).map_err(e2s)?, String::new()))
    });
    c.run("Q8 is saturated", || {
        let v = saturation_verdict(&saturated_filtration(&t, 6).map_err(e2s)?).map_err(e2s)?;
        Ok((v.saturated, format!("{v:?}")))
    });
    Ok(())
}

fn dihedral_suite(c: &mut Checks) -> Res<()> {
    for p in [3u64, 5, 7] {
        let t = table(&format!("D{p}"))?;
        let f = gamma_filtration(&t, 7).map_err(e2s)?;
        let x = c1(&VirtualCharacter::irreducible(&t, 1))?;
        let y = VirtualCharacter::irreducible(&t, first_of_degree(&t, 2)?).chern(2).map_err(e2s)?;
        c.run(format!("D{p}: 2x = 0"), || Ok((f.contains(&x.scale(2), 2).map_err(e2s)?, String::new())));
        c.run(format!("D{p}: {p}y = 0"), || Ok((f.contains(&y.scale(p), 3).map_err(e2s)?, String::new())));
        c.run(format!("D{p}: xy in Gamma^4"), || Ok((f.contains(&(&x * &y), 4).map_err(e2s)?, String::new())));
        for n in 1..=6 {
            let want = if n == 1 || n % 2 == 1 { inv(&[2]) } else { inv(&[2 * p]) };
            c.run(format!("D{p}: degree {n}"), || Ok(expect_inv(f.graded_piece(n).map_err(e2s)?.invariants(), &want)));
        }
        c.run(format!("D{p} is saturated"), || {
            let v = saturation_verdict(&saturated_filtration(&t, 6).map_err(e2s)?).map_err(e2s)?;
            Ok((v.saturated, format!("{v:?}")))
        });
    }
    Ok(())
}

fn c4c4_suite(c: &mut Checks) -> Res<()> {
    let t = table("C4xC4")?;
    let f = gamma_filtration(&t, 7).map_err(e2s)?;
    // element (a, b) sits at 4a + b
    let x = c1(&linear_with_kernel(&t, &[0, 1, 2, 3])?)?;
    let y = c1(&linear_with_kernel(&t, &[0, 4, 8, 12])?)?;
    c.run("4x = 4y = 0", || {
        Ok((f.contains(&x.scale(4), 2).map_err(e2s)? && f.contains(&y.scale(4), 2).map_err(e2s)?, String::new()))
    });
    c.run("2x^2y + 2xy^2 in Gamma^4", || {
        let r = (&(&x * &x) * &y).scale(2) + (&(&x * &y) * &y).scale(2);
        Ok((f.contains(&r, 4).map_err(e2s)?, String::new()))
    });
    c.run("x^4y^2 - x^2y^4 in Gamma^7", || {
        let r = &(&x.pow(4) * &y.pow(2)) - &(&x.pow(2) * &y.pow(4));
        Ok((f.contains(&r, 7).map_err(e2s)?, String::new()))
    });
    let expected: [&[u64]; 4] = [&[4, 4], &[4, 4, 4], &[2, 4, 4, 4], &[2, 2, 4, 4, 4]];
    for (n, want) in expected.iter().enumerate() {
        let n = n + 1;
        c.run(format!("degree {n}"), || Ok(expect_inv(f.graded_piece(n).map_err(e2s)?.invariants(), &inv(want))));
    }
    Ok(())
}

fn stable_invariants(g: &Arc<FiniteGroup>, p: u64, depth: usize) -> Res<Vec<AbelianInvariants>> {
    let rep = stable_element_subring(g, p, depth + 1).map_err(e2s)?;
    Ok(rep.degrees.iter().map(|d| d.invariants.clone()).collect())
}

fn psl_suite(c: &mut Checks) -> Res<()> {
    let g = group("PSL(2,5)")?;
    let mut combined = vec![AbelianInvariants::trivial(); 6];
    for p in [2u64, 3, 5] {
        let got = stable_invariants(&g, p, 6)?;
        for n in 1..=6 {
            let want = match p {
                2 if n >= 2 => inv(&[2]),
                3 | 5 if n % 2 == 0 => inv(&[p]),
                _ => AbelianInvariants::trivial(),
            };
            c.check(
                format!("PSL(2,5) Sylow-{p} degree {n}"),
                got[n - 1] == want,
                format!("got {}, expected {want}", got[n - 1]),
            );
            combined[n - 1] = combined[n - 1].direct_sum(&got[n - 1]);
        }
    }
    for (i, got) in combined.iter().enumerate() {
        let n = i + 1;
        let want = match n {
            1 => AbelianInvariants::trivial(),
            _ if n % 2 == 0 => inv(&[30]),
            _ => inv(&[2]),
        };
        let (ok, detail) = expect_inv(got, &want);
        c.check(format!("PSL(2,5) stable degree {n}"), ok, detail);
    }
    for p in [7u64, 11, 13] {
        let got = stable_invariants(&group(&format!("PSL(2,{p})"))?, p, 6)?;
        let half = ((p - 1) / 2) as usize;
        let ok = got.iter().enumerate().all(|(i, inv_n)| {
            let want = if (i + 1) % half == 0 { inv(&[p]) } else { AbelianInvariants::trivial() };
            *inv_n == want
        });
        let shown: Vec<String> = got.iter().map(|x| x.to_string()).collect();
        c.check(format!("PSL(2,{p}) Sylow-{p} is Z/{p} exactly in degrees divisible by {half}"), ok, shown.join(", "));
    }
    c.run("PSL(2,3) stable elements reassemble the saturated ring of A4", || {
        let psl3 = group("PSL(2,3)")?;
        let two = stable_invariants(&psl3, 2, 6)?;
        let three = stable_invariants(&psl3, 3, 6)?;
        let sat = saturated_filtration(&table("A4")?, 7).map_err(e2s)?;
        let mut ok = true;
        let mut shown = Vec::new();
        for n in 1..=6 {
            let sum = two[n - 1].direct_sum(&three[n - 1]);
            let want = sat.graded_piece(n).map_err(e2s)?.invariants().clone();
            let expected = if n == 1 { inv(&[3]) } else { inv(&[6]) };
            ok &= sum == want && sum == expected;
            shown.push(sum.to_string());
        }
        Ok((ok, shown.join(", ")))
    });
    Ok(())
}

fn tambara(c: &mut Checks, seed: u64) -> Res<()> {
    for spec in ["C4", "C2xC2", "C6", "D3", "Q8", "A4"] {
        let t = table(spec)?;
        c.run(format!("Tambara axioms for {spec}"), || {
            let rep = tambara_axiom_suite(&t, 200, 2, seed).map_err(e2s)?;
            let detail = match rep.smallest_counterexample() {
                Some(f) => format!("{:?}: {}", f.axiom, f.description),
                None => format!("{} checks", rep.total_checks()),
            };
            Ok((rep.passed(), detail))
        });
    }
    Ok(())
}

/// First normal subgroup of prime index matching `sub`.
fn prime_index_norm(sup: &str, sub: &str) -> Res<PrimeIndexNorm> {
    let t = table(sup)?;
    for h in matching_subgroups(t.group(), sub)? {
        if let Ok(n) = PrimeIndexNorm::new(Inclusion::new(&t, &h).map_err(e2s)?) {
            return Ok(n);
        }
    }
    Err(format!("{sub} is not a normal subgroup of prime index in {sup}"))
}

fn random_vc(t: &Arc<CharacterTable>, rng: &mut ChaCha8Rng, bound: i64) -> VirtualCharacter {
    let coeffs: Vec<i64> = (0..t.rank()).map(|_| rng.gen_range(-bound..=bound)).collect();
    VirtualCharacter::from_ints(t, &coeffs).expect("table rank")
}

/// A linear character `sigma` of `G`, trivial on `H`, with `C[G/H] = sum sigma^i`.
fn quotient_generator(norm: &PrimeIndexNorm) -> Res<VirtualCharacter> {
    let inc = norm.inclusion();
    let sup = inc.sup();
    let perm = inc.permutation_character();
    for i in 1..sup.rank() {
        if !sup.is_linear(i) {
            continue;
        }
        let sigma = VirtualCharacter::irreducible(sup, i);
        if !inc.restrict(&sigma).map_err(e2s)?.coeffs()[0].eq(&BigInt::from(1)) {
            continue;
        }
        let sum = (0..norm.prime() as u32).fold(VirtualCharacter::zero(sup), |acc, k| &acc + &sigma.pow(k));
        if sum == perm {
            return Ok(sigma);
        }
    }
    Err("no generator of the quotient characters".into())
}

fn norms(c: &mut Checks, seed: u64) -> Res<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = [("C4", "C2"), ("C2xC2", "C2"), ("C9", "C3"), ("C3xC3", "C3")];
    for (sup, sub) in cases {
        let n = prime_index_norm(sup, sub)?;
        let h = n.inclusion().sub().clone();
        let g = n.inclusion().sup().clone();
        let p = n.prime();
        let label = format!("{sub} <= {sup}");
        c.run(format!("{label}: subtraction formula equals the vee route"), || {
            for _ in 0..50 {
                let x = random_vc(&h, &mut rng, 2);
                let (a, b) = (n.norm_by_formula(&x).map_err(e2s)?, n.norm_by_vee(&x).map_err(e2s)?);
                if a != b {
                    return Ok((false, format!("x = {x}: {a} vs {b}")));
                }
            }
            Ok((true, "50 samples".into()))
        });
        c.run(format!("{label}: norm is multiplicative"), || {
            for _ in 0..10 {
                let (x, y) = (random_vc(&h, &mut rng, 1), random_vc(&h, &mut rng, 1));
                let lhs = n.norm_virtual(&(&x * &y)).map_err(e2s)?;
                let rhs = &n.norm_virtual(&x).map_err(e2s)? * &n.norm_virtual(&y).map_err(e2s)?;
                if lhs != rhs {
                    return Ok((false, format!("x = {x}, y = {y}")));
                }
            }
            Ok((true, "10 pairs".into()))
        });
        if p == 2 {
            c.run(format!("{label}: index-2 formula for -W"), || {
                for i in 0..h.rank() {
                    let w = VirtualCharacter::irreducible(&h, i);
                    let lhs = n.norm_by_vee(&-w.clone()).map_err(e2s)?;
                    let nw = n.inclusion().tensor_induce(&w).map_err(e2s)?;
                    let rhs = &-nw + &n.inclusion().induce(&(&w * &n.conjugate(&w, 1))).map_err(e2s)?;
                    if lhs != rhs {
                        return Ok((false, format!("W = r{i}")));
                    }
                }
                Ok((true, format!("{} irreducibles", h.rank())))
            });
        }
        c.run(format!("{label}: N(Gamma^n) lies in Gamma^(np) for n <= 3"), || {
            let hf = gamma_filtration(&h, 3).map_err(e2s)?;
            let gf = gamma_filtration(&g, 3 * p).map_err(e2s)?;
            for deg in 1..=3 {
                for r in hf.lattice(deg).map_err(e2s)?.basis() {
                    let x = row(&h, r);
                    if !gf.contains(&n.norm_virtual(&x).map_err(e2s)?, deg * p).map_err(e2s)? {
                        return Ok((false, format!("x = {x} in degree {deg}")));
                    }
                }
            }
            Ok((true, String::new()))
        });
        let gf = gamma_filtration(&g, p).map_err(e2s)?;
        let y = c1(&quotient_generator(&n)?)?;
        c.run(format!("{label}: pY lies in Gamma^p"), || {
            Ok((gf.contains(&y.scale(p), p).map_err(e2s)?, String::new()))
        });
        // C[G/H] - p = sum_i C(p, i+1) Y^i, and only the top coefficient is prime to p
        c.run(format!("{label}: C[G/H] - p = Y^(p-1) mod Gamma^p"), || {
            let perm = &n.inclusion().permutation_character() - &VirtualCharacter::constant(&g, p);
            let rest = &perm - &y.pow(p as u32 - 1);
            Ok((
                gf.contains(&rest, p).map_err(e2s)?,
                format!("C[G/H] - p in Gamma^p: {}", gf.contains(&perm, p).map_err(e2s)?),
            ))
        });
    }
    for (sup, sub) in [("C9", "C3"), ("C5xC5", "C5")] {
        let n = prime_index_norm(sup, sub)?;
        let h = n.inclusion().sub().clone();
        c.run(format!("{sub} <= {sup}: chi(-W)_C = (-1)^|C| chi(W)_C"), || {
            for i in 0..h.rank() {
                let w = VirtualCharacter::irreducible(&h, i);
                let a = n.chi(&w).map_err(e2s)?;
                let b = n.vee_inverse(&a).map_err(e2s)?;
                for &m in n.proper_orbit_reps() {
                    let want = if m.count_ones() % 2 == 1 { -n.entry(&a, m) } else { n.entry(&a, m) };
                    if n.entry(&b, m) != want {
                        return Ok((false, format!("W = r{i}, C = {m:b}")));
                    }
                }
                let full = (1u32 << n.prime()) - 1;
                if n.entry(&b, full) != -n.entry(&a, full) {
                    return Ok((false, format!("W = r{i}, top entry")));
                }
            }
            Ok((true, format!("{} irreducibles", h.rank())))
        });
    }
    for base in ["C2", "C3", "C2xC2"] {
        for p in [2usize, 3] {
            c.run(format!("norm from {base} to {base}xC{p} of c1"), || product_norm(base, p));
        }
    }
    Ok(())
}

/// `N(rho - 1) = Z^p - Z Y^(p-1)` modulo `Gamma^(p+1)` along `G <= G x C_p`, exactly when `p = 2`.
fn product_norm(base: &str, p: usize) -> Res<(bool, String)> {
    let k = table(&format!("{base}xC{p}"))?;
    let kg = k.group().clone();
    // (a, c) sits at p*a + c
    let h = Subgroup::from_elements(&kg, (0..kg.order()).filter(|x| x % p == 0).collect()).map_err(e2s)?;
    let inc = Inclusion::new(&k, &h).map_err(e2s)?;
    let n = PrimeIndexNorm::new(inc).map_err(e2s)?;
    let inc = n.inclusion();
    let sub = inc.sub().clone();
    let kf = gamma_filtration(&k, p + 1).map_err(e2s)?;
    let one_k = VirtualCharacter::one(&k);
    let linear: Vec<usize> = (0..k.rank()).filter(|&i| k.is_linear(i)).collect();
    let cls = k.classes();
    let trivial_on = |i: usize, x: usize| k.value(i, cls.class_of[x]).as_rational_integer() == Some(BigInt::from(1));
    let mut count = 0;
    for i in 0..sub.rank() {
        let rho = VirtualCharacter::irreducible(&sub, i);
        let mut ext = None;
        for &j in &linear {
            let e = VirtualCharacter::irreducible(&k, j);
            if trivial_on(j, 1) && inc.restrict(&e).map_err(e2s)? == rho {
                ext = Some(e);
                break;
            }
        }
        let ext = ext.ok_or("no extension trivial on the cyclic factor")?;
        let z = &ext - &one_k;
        let lhs = n.norm_virtual(&(&rho - &VirtualCharacter::one(&sub))).map_err(e2s)?;
        for &j in &linear {
            if j == 0 || !(0..kg.order()).step_by(p).all(|x| trivial_on(j, x)) {
                continue;
            }
            let y = &VirtualCharacter::irreducible(&k, j) - &one_k;
            let rhs = &z.pow(p as u32) - &(&z * &y.pow(p as u32 - 1));
            let diff = &lhs - &rhs;
            let ok = if p == 2 { diff.is_zero() } else { kf.contains(&diff, p + 1).map_err(e2s)? };
            if !ok {
                return Ok((false, format!("rho = r{i}, Y from r{j}: difference {diff}")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} cases")))
}
