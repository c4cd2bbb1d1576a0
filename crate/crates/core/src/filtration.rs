//! The gamma filtration of `R(G)` as a descending chain of lattices, and the
//! associated graded ring.
//!
//! `Gamma^n` is spanned by products of atoms `gamma^m(chi_i - d_i)` of total
//! weight at least `n` (times arbitrary elements of `R(G)`). Atoms with
//! `m > d_i` vanish because `gamma_t(rho - d)` is a polynomial of degree at
//! most `d` for an actual character `rho` of degree `d`, and negatives need no
//! extra atoms since `gamma_t(-x) = gamma_t(x)^-1` and inverting a series
//! preserves weight.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::vchar::VirtualCharacter;
use crate::zlattice::{quotient_invariants, AbelianInvariants, IntLattice, QuotientPresentation};

/// Default filtration depth.
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Debug)]
pub struct Atom {
    pub value: VirtualCharacter,
    pub weight: usize,
    /// Irreducible whose Chern class this is.
    pub irreducible: usize,
    pub label: String,
}

/// Atoms `C_m(chi_i) = gamma^m(chi_i - d_i)` for nontrivial `chi_i`, `1 <= m <= d_i`, nonzero.
pub fn gamma_atoms(table: &Arc<CharacterTable>) -> Result<Vec<Atom>> {
    let mut atoms = Vec::new();
    for i in 1..table.rank() {
        let chi = VirtualCharacter::irreducible(table, i);
        let d = table.degree(i) as usize;
        for m in 1..=d {
            let c = chi.chern(m)?;
            if !c.is_zero() {
                atoms.push(Atom { value: c, weight: m, irreducible: i, label: format!("C{m}(r{i})") });
            }
        }
    }
    Ok(atoms)
}

/// `Gamma^0 ⊇ Gamma^1 ⊇ ... ⊇ Gamma^depth`.
#[derive(Clone, Debug)]
pub struct GammaFiltration {
    table: Arc<CharacterTable>,
    atoms: Vec<Atom>,
    lattices: Vec<IntLattice>,
}

pub(crate) fn lattice_of(table: &CharacterTable, xs: impl IntoIterator<Item = VirtualCharacter>) -> Result<IntLattice> {
    IntLattice::from_generators(table.rank(), xs.into_iter().map(VirtualCharacter::into_coeffs))
}

pub(crate) fn vc_from_row(table: &Arc<CharacterTable>, row: &[BigInt]) -> VirtualCharacter {
    VirtualCharacter::new(table.clone(), row.to_vec()).expect("row length matches the table rank")
}

/// The augmentation ideal, spanned by `chi_i - d_i`.
pub fn augmentation_ideal(table: &Arc<CharacterTable>) -> Result<IntLattice> {
    let one = VirtualCharacter::one(table);
    lattice_of(table, (1..table.rank()).map(|i| &VirtualCharacter::irreducible(table, i) - &one.scale(table.degree(i))))
}

/// Solves `Gamma^n = span(atoms of weight >= n) + sum_a a * Gamma^max(0, n - w(a))`
/// for `1 <= n <= depth` by iterating to the least fixpoint.
pub fn gamma_filtration(table: &Arc<CharacterTable>, depth: usize) -> Result<GammaFiltration> {
    let atoms = gamma_atoms(table)?;
    let order: Vec<usize> = (0..atoms.len()).collect();
    gamma_filtration_with_schedule(table, depth, atoms, &order)
}

pub(crate) fn gamma_filtration_with_schedule(
    table: &Arc<CharacterTable>,
    depth: usize,
    atoms: Vec<Atom>,
    schedule: &[usize],
) -> Result<GammaFiltration> {
    let r = table.rank();
    let mut lattices = vec![IntLattice::full(r)];
    for n in 1..=depth {
        lattices.push(lattice_of(
            table,
            schedule.iter().map(|&k| &atoms[k]).filter(|a| a.weight >= n).map(|a| a.value.clone()),
        )?);
    }
    loop {
        let mut changed = false;
        for n in 1..=depth {
            let mut gens = Vec::new();
            for &k in schedule {
                let a = &atoms[k];
                let src = &lattices[n.saturating_sub(a.weight)];
                for row in src.basis() {
                    gens.push((&a.value * &vc_from_row(table, row)).into_coeffs());
                }
            }
            let next = lattices[n].add_generators(gens)?;
            if next != lattices[n] {
                lattices[n] = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(GammaFiltration { table: table.clone(), atoms, lattices })
}

impl GammaFiltration {
    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn depth(&self) -> usize {
        self.lattices.len() - 1
    }

    pub fn lattices(&self) -> &[IntLattice] {
        &self.lattices
    }

    pub fn lattice(&self, n: usize) -> Result<&IntLattice> {
        self.lattices
            .get(n)
            .ok_or_else(|| Error::InvalidParameter(format!("degree {n} exceeds the filtration depth {}", self.depth())))
    }

    pub fn contains(&self, x: &VirtualCharacter, n: usize) -> Result<bool> {
        self.lattice(n)?.contains(x.coeffs())
    }

    /// Presentation of `Gamma^n / Gamma^(n+1)`; needs `n < depth`.
    pub fn graded_piece(&self, n: usize) -> Result<QuotientPresentation> {
        quotient_invariants(self.lattice(n)?, self.lattice(n + 1)?)
    }

    /// The class of `x` in degree `n`, with its additive order.
    pub fn graded_image(&self, x: &VirtualCharacter, n: usize) -> Result<GradedElement> {
        if !self.contains(x, n)? {
            return Err(Error::NotInFiltration(n));
        }
        let piece = self.graded_piece(n)?;
        Ok(GradedElement { degree: n, coords: piece.coords(x.coeffs())?, order: piece.order(x.coeffs())? })
    }

    /// Whether `x` vanishes in degree `n` of the graded ring, i.e. lies in `Gamma^(n+1)`.
    pub fn relation_check(&self, x: &VirtualCharacter, n: usize) -> Result<bool> {
        self.contains(x, n + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub degree: usize,
    pub coords: Vec<BigInt>,
    /// `None` for elements of infinite order.
    pub order: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub struct GradedDegree {
    pub degree: usize,
    pub invariants: AbelianInvariants,
    /// Lifts of generators of the cyclic summands, in invariant order.
    pub generators: Vec<VirtualCharacter>,
    /// Chern monomials of exact weight `degree` with their coordinates.
    pub witnesses: Vec<(String, Vec<BigInt>)>,
}

#[derive(Clone, Debug)]
pub struct GradedRingReport {
    pub degrees: Vec<GradedDegree>,
}

/// Bound on the number of monomials listed per degree.
const WITNESS_LIMIT: usize = 64;

/// Graded pieces for degrees `0..depth` of a filtration of depth `depth`.
pub fn graded_ring_report(filt: &GammaFiltration) -> Result<GradedRingReport> {
    graded_report_for(filt.table(), filt.lattices(), filt.atoms())
}

/// Graded report for any descending chain of lattices, with Chern monomial
/// witnesses taken from `atoms` (they must lie in the chain).
pub(crate) fn graded_report_for(
    table: &Arc<CharacterTable>,
    lattices: &[IntLattice],
    atoms: &[Atom],
) -> Result<GradedRingReport> {
    let mut degrees = Vec::new();
    for n in 0..lattices.len().saturating_sub(1) {
        let piece = quotient_invariants(&lattices[n], &lattices[n + 1])?;
        let generators = piece.generators().iter().map(|g| vc_from_row(table, g)).collect();
        let mut witnesses = Vec::new();
        if n > 0 {
            for (label, value) in chern_monomials(atoms, n, WITNESS_LIMIT) {
                let coords = piece.coords(value.coeffs())?;
                witnesses.push((label, coords));
            }
        }
        degrees.push(GradedDegree { degree: n, invariants: piece.invariants().clone(), generators, witnesses });
    }
    Ok(GradedRingReport { degrees })
}

/// Products of atoms with total weight exactly `n` (multisets, atoms in index order).
pub fn chern_monomials(atoms: &[Atom], n: usize, limit: usize) -> Vec<(String, VirtualCharacter)> {
    fn rec(
        atoms: &[Atom],
        start: usize,
        remaining: usize,
        label: &mut Vec<String>,
        value: &VirtualCharacter,
        out: &mut Vec<(String, VirtualCharacter)>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if remaining == 0 {
            out.push((label.join("*"), value.clone()));
            return;
        }
        for k in start..atoms.len() {
            if atoms[k].weight <= remaining {
                label.push(atoms[k].label.clone());
                let v = value * &atoms[k].value;
                rec(atoms, k, remaining - atoms[k].weight, label, &v, out, limit);
                label.pop();
            }
        }
    }
    let mut out = Vec::new();
    let Some(first) = atoms.first() else { return out };
    let one = VirtualCharacter::one(first.value.table());
    rec(atoms, 0, n, &mut Vec::new(), &one, &mut out, limit);
    out
}
