//! Numerical classes of rational curves on a del Pezzo surface of degree
//! `9 - r`: lines `(-1, 1)`, conics `(0, 2)`, twisted cubics `(1, 3)` and
//! rational quartics `(2, 4)`, written as (self-intersection, degree). Only
//! classes are modelled, never actual curves.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, MarkedLattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub vector: LatticeVector,
    pub self_int: i64,
    pub degree: i64,
}

impl CurveClass {
    pub fn new(vector: LatticeVector) -> Self {
        let self_int = vector.norm();
        let degree = vector.degree();
        CurveClass {
            vector,
            self_int,
            degree,
        }
    }
}

/// All classes of smooth rational curves with the given self-intersection
/// and degree. Adjunction forces `self_int - degree = -2`; use
/// [`enumerate_any`] to drop that requirement.
pub fn enumerate_classes(m: &MarkedLattice, self_int: i64, degree: i64) -> Result<Vec<CurveClass>> {
    if self_int - degree != -2 {
        return Err(Error::domain(format!(
            "({self_int}, {degree}) violates adjunction for smooth rational curves"
        )));
    }
    Ok(enumerate_any(m, self_int, degree))
}

pub fn enumerate_any(m: &MarkedLattice, self_int: i64, degree: i64) -> Vec<CurveClass> {
    m.vectors_with(self_int, degree).into_iter().map(CurveClass::new).collect()
}

/// Line classes, sorted.
pub fn lines(m: &MarkedLattice) -> Vec<LatticeVector> {
    m.vectors_with(-1, 1)
}

pub fn conics(m: &MarkedLattice) -> Vec<LatticeVector> {
    m.vectors_with(0, 2)
}

pub fn twisted_cubics(m: &MarkedLattice) -> Vec<LatticeVector> {
    m.vectors_with(1, 3)
}

pub fn quartics(m: &MarkedLattice) -> Vec<LatticeVector> {
    m.vectors_with(2, 4)
}

fn require_cubic_surface(m: &MarkedLattice, what: &str) -> Result<()> {
    if m.r() != 6 {
        return Err(Error::Unsupported(format!("{what} requires r = 6, got r={}", m.r())));
    }
    Ok(())
}

/// Unordered triples of lines summing to `kappa`, each triple sorted.
///
/// Two intersecting lines `L1, L2` complete to the triple with third member
/// `kappa - L1 - L2`, which is again a line.
pub fn coplanar_triples(m: &MarkedLattice) -> Result<Vec<[LatticeVector; 3]>> {
    require_cubic_surface(m, "coplanar triples")?;
    let ls = lines(m);
    let mut out = BTreeSet::new();
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i + 1..] {
            if a.dot(b) != 1 {
                continue;
            }
            let c = &(m.kappa() - a) - b;
            if ls.binary_search(&c).is_ok() {
                let mut t = [a.clone(), b.clone(), c];
                t.sort();
                out.insert(t);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All `k`-element sets of pairwise disjoint lines, each sorted, in
/// lexicographic order.
pub fn disjoint_line_sets(m: &MarkedLattice, k: usize) -> Result<Vec<Vec<LatticeVector>>> {
    if k == 0 || k > m.r() {
        return Err(Error::domain(format!("k must lie in [1, {}], got {k}", m.r())));
    }
    let ls = lines(m);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    extend_disjoint(&ls, 0, k, &mut chosen, &mut out);
    Ok(out)
}

fn extend_disjoint(
    ls: &[LatticeVector],
    start: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<LatticeVector>>,
) {
    if chosen.len() == k {
        out.push(chosen.iter().map(|&i| ls[i].clone()).collect());
        return;
    }
    for i in start..ls.len() {
        if chosen.iter().all(|&j| ls[j].dot(&ls[i]) == 0) {
            chosen.push(i);
            extend_disjoint(ls, i + 1, k, chosen, out);
            chosen.pop();
        }
    }
}

fn check_disjoint_lines(m: &MarkedLattice, set: &[LatticeVector]) -> Result<()> {
    for (i, a) in set.iter().enumerate() {
        m.check_rank(a)?;
        if (a.norm(), a.degree()) != (-1, 1) {
            return Err(Error::domain(format!("{a} is not a line class")));
        }
        for b in &set[i + 1..] {
            if a.dot(b) != 0 {
                return Err(Error::domain(format!("lines {a} and {b} meet")));
            }
        }
    }
    Ok(())
}

/// Two sixes of disjoint lines where `six[i] . partner[j] = 1 - delta_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleSix {
    pub six: Vec<LatticeVector>,
    pub partner: Vec<LatticeVector>,
}

/// The six lines completing `six` to a double six, ordered so that
/// `partner[i]` is the one disjoint from `six[i]`.
pub fn partner_six(six: &[LatticeVector], m: &MarkedLattice) -> Result<Vec<LatticeVector>> {
    require_cubic_surface(m, "double sixes")?;
    if six.len() != 6 {
        return Err(Error::domain(format!("expected 6 lines, got {}", six.len())));
    }
    check_disjoint_lines(m, six)?;
    let mut partner: Vec<Option<LatticeVector>> = vec![None; 6];
    for l in lines(m) {
        let pairings: Vec<i64> = six.iter().map(|s| s.dot(&l)).collect();
        if pairings.iter().filter(|&&p| p == 1).count() == 5 {
            if let Some(i) = pairings.iter().position(|&p| p == 0) {
                if partner[i].replace(l).is_some() {
                    return Err(Error::Internal("two partner candidates for one line".into()));
                }
            }
        }
    }
    let partner: Vec<LatticeVector> = partner
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("six has no complete partner".into()))?;
    check_disjoint_lines(m, &partner)?;
    Ok(partner)
}

/// The 36 double sixes, each with its lexicographically smaller six first.
pub fn double_sixes(m: &MarkedLattice) -> Result<Vec<DoubleSix>> {
    require_cubic_surface(m, "double sixes")?;
    let mut out = BTreeSet::new();
    for six in disjoint_line_sets(m, 6)? {
        let partner = partner_six(&six, m)?;
        let mut sorted_partner = partner.clone();
        sorted_partner.sort();
        let ds = if six <= sorted_partner {
            DoubleSix { six, partner }
        } else {
            let six_again = partner_six(&sorted_partner, m)?;
            DoubleSix {
                six: sorted_partner,
                partner: six_again,
            }
        };
        out.insert(ds);
    }
    Ok(out.into_iter().collect())
}

/// A diagonal basis `gamma, eps_1, .., eps_r` with `gamma^2 = 1`,
/// `eps_i^2 = -1` and `kappa = 3 gamma - sum eps_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowdownBasis {
    pub gamma: LatticeVector,
    pub epsilons: Vec<LatticeVector>,
}

impl BlowdownBasis {
    /// Gram matrix on `gamma, eps_1, .., eps_r`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let all: Vec<&LatticeVector> = std::iter::once(&self.gamma).chain(&self.epsilons).collect();
        all.iter().map(|a| all.iter().map(|b| a.dot(b)).collect()).collect()
    }
}

/// The blowdown to the plane contracting `r` disjoint lines:
/// `gamma = (kappa + sum L) / 3`.
pub fn blowdown_basis(set: &[LatticeVector], m: &MarkedLattice) -> Result<BlowdownBasis> {
    if set.len() != m.r() {
        return Err(Error::domain(format!("expected {} lines, got {}", m.r(), set.len())));
    }
    check_disjoint_lines(m, set)?;
    let sum = set.iter().fold(m.kappa().clone(), |acc, l| &acc + l);
    let coords = sum.coords();
    if coords.iter().any(|c| c % 3 != 0) {
        return Err(Error::domain(format!("(kappa + sum of lines) = {sum} is not divisible by 3")));
    }
    let gamma = LatticeVector::from_coords(&coords.iter().map(|c| c / 3).collect::<Vec<_>>());
    let basis = BlowdownBasis {
        gamma,
        epsilons: set.to_vec(),
    };
    let gram = basis.gram();
    let diagonal_ok = gram.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &x)| x == if i != j { 0 } else if i == 0 { 1 } else { -1 })
    });
    if !diagonal_ok {
        return Err(Error::domain("lines do not extend to a diagonal basis"));
    }
    Ok(basis)
}

/// The root `2 gamma - eps_1 - .. - eps_6` of the blowdown contracting a six.
pub fn root_from_six(six: &[LatticeVector], m: &MarkedLattice) -> Result<LatticeVector> {
    require_cubic_surface(m, "root from six")?;
    let b = blowdown_basis(six, m)?;
    Ok(b.epsilons.iter().fold(2 * &b.gamma, |acc, e| &acc - e))
}
