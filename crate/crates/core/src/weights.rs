//! Weights of `E_r` realized inside the marked lattice.
//!
//! A weight is a functional on the coroot lattice; every such functional is
//! the pairing with some class, well defined up to multiples of `kappa`.
//! Residues mod `kappa` are normalized to degree in `[0, d)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, MarkedLattice};
use crate::roots::{enumerate_roots, highest_root};
use crate::weyl::{apply_word, dominant_representative, is_dominant, orbit, WeylWord};

/// A lift of a weight to the lattice, optionally tagged as the lift of the
/// `index`-th fundamental weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightLift {
    pub vector: LatticeVector,
    pub index: Option<usize>,
}

fn require_simple(m: &MarkedLattice) -> Result<()> {
    if m.r() < 4 {
        return Err(Error::Unsupported(format!(
            "weight analysis needs a simple group (4 <= r <= 8), got r={}",
            m.r()
        )));
    }
    Ok(())
}

/// The lift of the `i`-th fundamental weight:
/// `h - e1` (a pencil of conics), `2h - e1 - e2` (rational quartics),
/// `e_{i+1} + .. + e_r` (`r - i` disjoint lines) and `h` (twisted cubics).
pub fn fundamental_weight_lift(m: &MarkedLattice, i: usize) -> Result<WeightLift> {
    require_simple(m)?;
    if !(1..=m.r()).contains(&i) {
        return Err(Error::domain(format!("fundamental index {i} out of range 1..={}", m.r())));
    }
    Ok(WeightLift {
        vector: m.dual_basis_vector(i),
        index: Some(i),
    })
}

/// Whether the dominant weight `omega` pairs into `{-1, 0, 1}` with every root.
pub fn is_minuscule(omega: &LatticeVector, m: &MarkedLattice) -> Result<bool> {
    m.check_rank(omega)?;
    if !is_dominant(omega, m) {
        return Err(Error::domain(format!("{omega} is not dominant")));
    }
    Ok(enumerate_roots(m).iter().all(|a| omega.dot(a).abs() <= 1))
}

/// Fundamental indices whose weights are minuscule.
pub fn minuscule_indices(m: &MarkedLattice) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 1..=m.r() {
        if is_minuscule(&fundamental_weight_lift(m, i)?.vector, m)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Weights with multiplicities, each weight a normalized residue mod `kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    /// Sorted by weight.
    pub weights: Vec<(LatticeVector, usize)>,
    pub dimension: usize,
    /// Normalized residue of the highest weight.
    pub highest: LatticeVector,
}

/// The weights of the adjoint representation: every root once, and zero with
/// multiplicity `r`. The highest weight is the class of `kappa - highest root`.
pub fn adjoint_weight_system(m: &MarkedLattice) -> Result<WeightSystem> {
    require_simple(m)?;
    let mut counts: BTreeMap<LatticeVector, usize> = BTreeMap::new();
    for a in enumerate_roots(m) {
        *counts.entry(m.normalize_mod_kappa(&a)).or_insert(0) += 1;
    }
    *counts.entry(m.zero()).or_insert(0) += m.r();
    let weights: Vec<(LatticeVector, usize)> = counts.into_iter().collect();
    let dimension = weights.iter().map(|(_, k)| k).sum();
    let highest = m.normalize_mod_kappa(&(m.kappa() - &highest_root(m)?));
    Ok(WeightSystem {
        weights,
        dimension,
        highest,
    })
}

/// Witness for the duality of two fundamental representations:
/// `lift(i) + word(lift(j)) = n * kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPartner {
    pub j: usize,
    pub word: WeylWord,
    pub n: i64,
}

/// The fundamental index dual to `i`, found by bringing `-lift(i)` to the
/// dominant chamber and reading off which fundamental weight it lands on.
pub fn dual_partner(i: usize, m: &MarkedLattice) -> Result<DualPartner> {
    let wi = fundamental_weight_lift(m, i)?.vector;
    let (dominant, descent) = dominant_representative(&-&wi, m)?;
    let psi = m.evaluate_on_coroots(&dominant)?;
    let j = match psi.iter().enumerate().filter(|(_, &x)| x != 0).collect::<Vec<_>>().as_slice() {
        [(k, 1)] => k + 1,
        _ => {
            return Err(Error::Internal(format!(
                "-lift({i}) descends to {dominant}, which is not a fundamental weight"
            )))
        }
    };
    let wj = m.dual_basis_vector(j);
    // descent(-wi) = wj + t*kappa, so wi + descent^{-1}(wj) = -t*kappa
    let diff = &dominant - &wj;
    let t = diff.degree() / m.d();
    if diff != t * m.kappa() {
        return Err(Error::Internal(format!("{dominant} - {wj} is not a multiple of kappa")));
    }
    let word = descent.inverse();
    let n = -t;
    let check = &wi + &apply_word(&word, &wj, m)?;
    if check != n * m.kappa() {
        return Err(Error::Internal(format!("duality witness failed: got {check}")));
    }
    Ok(DualPartner { j, word, n })
}

/// Triples of weights of the 27-dimensional representation (the line
/// classes) summing to `kappa`: the monomials of the invariant cubic form.
pub fn cubic_form_support(m: &MarkedLattice) -> Result<Vec<[LatticeVector; 3]>> {
    if m.r() != 6 {
        return Err(Error::Unsupported(format!("the cubic form needs r = 6, got r={}", m.r())));
    }
    let weights = orbit(&fundamental_weight_lift(m, 5)?.vector, m)?;
    let mut out = Vec::new();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            for k in j + 1..weights.len() {
                let s = &(&weights[i] + &weights[j]) + &weights[k];
                if &s == m.kappa() {
                    out.push([weights[i].clone(), weights[j].clone(), weights[k].clone()]);
                }
            }
        }
    }
    Ok(out)
}

/// The integer `b` in `[0, d)` with `rho(c) = exp(2 pi i b / d)` on the
/// representation lifted by `lambda`; it is the degree mod `d`.
pub fn central_character(lambda: &LatticeVector, m: &MarkedLattice) -> Result<i64> {
    Ok(m.degree(lambda)?.rem_euclid(m.d()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{conics, lines, quartics, twisted_cubics};
    use crate::weyl::simple_reflection;
    use std::collections::BTreeSet;

    fn v(s: &str, r: usize) -> LatticeVector {
        LatticeVector::parse(s, r).unwrap()
    }

    fn lattice(r: usize) -> MarkedLattice {
        MarkedLattice::new(r).unwrap()
    }

    #[test]
    fn fundamental_lift_examples() {
        assert_eq!(fundamental_weight_lift(&lattice(6), 1).unwrap().vector, v("h-e1", 6));
        assert_eq!(fundamental_weight_lift(&lattice(6), 6).unwrap().vector, v("h", 6));
        assert_eq!(fundamental_weight_lift(&lattice(7), 4).unwrap().vector, v("e5+e6+e7", 7));
        assert!(fundamental_weight_lift(&lattice(6), 7).is_err());
        assert!(fundamental_weight_lift(&lattice(6), 0).is_err());
        assert!(matches!(fundamental_weight_lift(&lattice(3), 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fundamental_lifts_are_dual_basis() {
        for r in 4..=8 {
            let m = lattice(r);
            for i in 1..=r {
                let w = fundamental_weight_lift(&m, i).unwrap().vector;
                let psi = m.evaluate_on_coroots(&w).unwrap();
                let want: Vec<i64> = (1..=r).map(|j| i64::from(i == j)).collect();
                assert_eq!(psi, want);
            }
        }
    }

    #[test]
    fn minuscule_lists() {
        let lists: Vec<Vec<usize>> = (4..=8).map(|r| minuscule_indices(&lattice(r)).unwrap()).collect();
        assert_eq!(lists, vec![vec![1, 2, 3, 4], vec![1, 4, 5], vec![1, 5], vec![6], vec![]]);
        let m6 = lattice(6);
        assert!(!is_minuscule(&v("h", 6), &m6).unwrap());
        assert!(matches!(is_minuscule(&v("-h", 6), &m6), Err(Error::Domain(_))));
    }

    #[test]
    fn minuscule_orbit_dimensions() {
        let size = |r: usize, i: usize| {
            let m = lattice(r);
            orbit(&fundamental_weight_lift(&m, i).unwrap().vector, &m).unwrap().len()
        };
        assert_eq!(size(6, 5), 27);
        assert_eq!(size(6, 1), 27);
        assert_eq!(size(7, 6), 56);
        assert_eq!(size(5, 1), 10);
        assert_eq!(size(5, 4), 16);
        assert_eq!(size(5, 5), 16);
    }

    #[test]
    fn fundamental_orbits_are_geometric_classes() {
        for r in 4..=8 {
            let m = lattice(r);
            let orb = |i| orbit(&fundamental_weight_lift(&m, i).unwrap().vector, &m).unwrap();
            assert_eq!(orb(1), conics(&m));
            // at r = 8 the 17520 numerical cubic classes contain 240 outside the orbit of h
            let cubics = twisted_cubics(&m);
            if r <= 7 {
                assert_eq!(orb(r), cubics);
            } else {
                assert_eq!((orb(r).len(), cubics.len()), (17280, 17520));
            }
            assert_eq!(orb(r - 1), lines(&m));
            // from r = 7 on, some numerical quartic classes such as
            // 3h - e1 - .. - e6 + e7 lie outside the orbit
            let q = quartics(&m);
            if r <= 6 {
                assert_eq!(orb(2), q);
            } else {
                let o = orb(2);
                assert!(o.len() < q.len() && o.iter().all(|x| q.contains(x)));
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        for r in 4..=8 {
            let m = lattice(r);
            let ws = adjoint_weight_system(&m).unwrap();
            assert_eq!(ws.dimension, enumerate_roots(&m).len() + r);
            // closed under W modulo kappa
            let set: BTreeSet<_> = ws.weights.iter().map(|(w, _)| w.clone()).collect();
            for (w, _) in &ws.weights {
                for i in 1..=r {
                    let img = m.normalize_mod_kappa(&simple_reflection(&m, i, w));
                    assert!(set.contains(&img));
                }
            }
            // the highest weight is dominant
            assert!(is_dominant(&ws.highest, &m));
        }
        assert_eq!(adjoint_weight_system(&lattice(8)).unwrap().dimension, 248);

        let m6 = lattice(6);
        assert_eq!(m6.kappa() - &highest_root(&m6).unwrap(), v("h", 6));
        let m7 = lattice(7);
        assert_eq!(m7.kappa() - &highest_root(&m7).unwrap(), v("h-e1", 7));
    }

    #[test]
    fn dual_partner_examples() {
        let m6 = lattice(6);
        let p = dual_partner(1, &m6).unwrap();
        assert_eq!((p.j, p.n), (5, 1));
        // h - e1 plus a line is the hyperplane section
        let line = apply_word(&p.word, &v("e6", 6), &m6).unwrap();
        assert_eq!((line.norm(), line.degree()), (-1, 1));

        let m4 = lattice(4);
        assert_eq!(dual_partner(1, &m4).unwrap().j, 4);
        assert_eq!(dual_partner(3, &m4).unwrap().j, 2);

        let m5 = lattice(5);
        assert_eq!(dual_partner(1, &m5).unwrap().j, 1);
        assert_eq!(dual_partner(4, &m5).unwrap().j, 5);
    }

    #[test]
    fn duality_is_an_involution() {
        for r in 4..=8 {
            let m = lattice(r);
            for i in 1..=r {
                let p = dual_partner(i, &m).unwrap();
                assert_eq!(dual_partner(p.j, &m).unwrap().j, i);
                if r >= 7 {
                    assert_eq!(p.j, i);
                }
            }
        }
    }

    #[test]
    fn cubic_form_examples() {
        let m = lattice(6);
        let support = cubic_form_support(&m).unwrap();
        assert_eq!(support.len(), 45);
        let mut bad = [v("e1", 6), v("e2", 6), v("e3", 6)];
        bad.sort();
        assert!(!support.contains(&bad));
        assert!(cubic_form_support(&lattice(7)).is_err());
    }

    #[test]
    fn central_character_examples() {
        let m = lattice(6);
        assert_eq!(central_character(&v("e6", 6), &m).unwrap(), 1);
        assert_eq!(central_character(m.kappa(), &m).unwrap(), 0);
        assert_eq!(central_character(&v("h", 6), &m).unwrap(), 0);
        for t in -3..=3 {
            let x = v("2h-e1", 6).add_scaled(m.kappa(), t);
            assert_eq!(central_character(&x, &m).unwrap(), 2);
        }
    }
}
