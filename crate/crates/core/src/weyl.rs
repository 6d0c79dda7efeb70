//! The Weyl group acting on the marked lattice by reflections in roots.
//!
//! For a root `alpha` (so `alpha^2 = -2`) the reflection is
//! `v -> v + <v, alpha> alpha`. It fixes `kappa` and preserves the form.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, MarkedLattice};

/// Default cap on orbit sizes; the largest orbits met in practice are far
/// smaller, while a full sweep of W(E8) is not.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// A word in the simple reflections, indices 1-based. Words act left to
/// right: `s1,s2` applies `s1` first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn new(indices: Vec<usize>) -> Self {
        WeylWord(indices)
    }

    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The inverse element: simple reflections are involutions.
    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &WeylWord) -> WeylWord {
        WeylWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn check(&self, m: &MarkedLattice) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i > m.r()) {
            Some(i) => Err(Error::domain(format!(
                "reflection index s{i} out of range for r={}",
                m.r()
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<WeylWord> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(WeylWord::identity());
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let token = part.trim();
            let lead = part.len() - part.trim_start().len();
            let idx = token
                .strip_prefix('s')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(s, offset + lead, "expected s<index>"))?;
            out.push(idx);
            offset += part.len() + 1;
        }
        Ok(WeylWord(out))
    }
}

/// Reflection in an arbitrary root.
pub fn reflect(alpha: &LatticeVector, v: &LatticeVector, m: &MarkedLattice) -> Result<LatticeVector> {
    m.check_rank(v)?;
    if !m.is_root(alpha) {
        return Err(Error::domain(format!("{alpha} is not a root")));
    }
    Ok(reflect_unchecked(alpha, v))
}

pub(crate) fn reflect_unchecked(alpha: &LatticeVector, v: &LatticeVector) -> LatticeVector {
    v.add_scaled(alpha, v.dot(alpha))
}

pub(crate) fn simple_reflection(m: &MarkedLattice, i: usize, v: &LatticeVector) -> LatticeVector {
    reflect_unchecked(m.simple(i), v)
}

pub fn apply_word(w: &WeylWord, v: &LatticeVector, m: &MarkedLattice) -> Result<LatticeVector> {
    w.check(m)?;
    m.check_rank(v)?;
    Ok(w.indices()
        .iter()
        .fold(v.clone(), |acc, &i| simple_reflection(m, i, &acc)))
}

/// Matrix of `w` on the basis `h, e1, .., er`: column `j` holds the image of
/// the `j`-th basis vector.
pub fn word_matrix(w: &WeylWord, m: &MarkedLattice) -> Result<Vec<Vec<i64>>> {
    let images: Vec<Vec<i64>> = m
        .basis()
        .iter()
        .map(|b| apply_word(w, b, m).map(|x| x.coords()))
        .collect::<Result<_>>()?;
    let n = m.r() + 1;
    Ok((0..n).map(|i| (0..n).map(|j| images[j][i]).collect()).collect())
}

/// Breadth-first closure of `seeds` under `gens` maps; output sorted.
pub(crate) fn closure<T, F>(seeds: Vec<T>, gens: usize, step: F, cap: usize, what: &str) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash + Ord,
    F: Fn(&T, usize) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in 0..gens {
            let y = step(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::Resource {
                        what: what.to_string(),
                        cap,
                        partial: seen.len(),
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<T> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The Weyl orbit of `v`, sorted.
pub fn orbit(v: &LatticeVector, m: &MarkedLattice) -> Result<Vec<LatticeVector>> {
    orbit_with_cap(v, m, DEFAULT_ORBIT_CAP)
}

pub fn orbit_with_cap(v: &LatticeVector, m: &MarkedLattice, cap: usize) -> Result<Vec<LatticeVector>> {
    m.check_rank(v)?;
    closure(
        vec![v.clone()],
        m.r(),
        |x, g| simple_reflection(m, g + 1, x),
        cap,
        "Weyl orbit",
    )
}

/// Orbit of an unordered set of vectors, each set stored sorted.
pub fn set_orbit(set: &[LatticeVector], m: &MarkedLattice, cap: usize) -> Result<Vec<Vec<LatticeVector>>> {
    for v in set {
        m.check_rank(v)?;
    }
    let mut seed = set.to_vec();
    seed.sort();
    closure(
        vec![seed],
        m.r(),
        |xs, g| {
            let mut ys: Vec<LatticeVector> = xs.iter().map(|x| simple_reflection(m, g + 1, x)).collect();
            ys.sort();
            ys
        },
        cap,
        "Weyl orbit of sets",
    )
}

/// `<v, a_i> >= 0` for every simple coroot.
pub fn is_dominant(v: &LatticeVector, m: &MarkedLattice) -> bool {
    m.simple_coroots().iter().all(|a| v.dot(a) >= 0)
}

/// Reflects `v` in the lowest-index simple coroot it pairs negatively with
/// until it is dominant. Returns the dominant vector and the word taking `v`
/// to it.
pub fn dominant_representative(v: &LatticeVector, m: &MarkedLattice) -> Result<(LatticeVector, WeylWord)> {
    m.check_rank(v)?;
    let mut cur = v.clone();
    let mut word = Vec::new();
    while let Some(i) = (1..=m.r()).find(|&i| cur.dot(m.simple(i)) < 0) {
        cur = simple_reflection(m, i, &cur);
        word.push(i);
    }
    Ok((cur, WeylWord(word)))
}

/// Writes an isometry of the lattice fixing `kappa` as a word in the simple
/// reflections. `iso[i][j]` is coordinate `i` of the image of basis vector `j`.
///
/// The image of the strictly dominant vector `rho = sum of the fundamental
/// weight lifts` is brought back to `rho` by dominant descent; since the
/// stabilizer of `rho` is trivial the inverse descent word is the isometry.
pub fn connect_markings(iso: &[Vec<i64>], m: &MarkedLattice) -> Result<WeylWord> {
    let n = m.r() + 1;
    if iso.len() != n || iso.iter().any(|row| row.len() != n) {
        return Err(Error::domain(format!("expected a {n}x{n} matrix")));
    }
    let apply = |v: &LatticeVector| -> LatticeVector {
        let c = v.coords();
        let img: Vec<i64> = (0..n).map(|i| (0..n).map(|j| iso[i][j] * c[j]).sum()).collect();
        LatticeVector::from_coords(&img)
    };
    let basis = m.basis();
    let images: Vec<LatticeVector> = basis.iter().map(apply).collect();
    for j in 0..n {
        for k in j..n {
            if images[j].dot(&images[k]) != basis[j].dot(&basis[k]) {
                return Err(Error::domain(format!(
                    "matrix is not an isometry: images of {} and {} pair to {}",
                    basis[j],
                    basis[k],
                    images[j].dot(&images[k])
                )));
            }
        }
    }
    let kappa_img = apply(m.kappa());
    if &kappa_img != m.kappa() {
        return Err(Error::domain(format!("matrix sends kappa to {kappa_img}")));
    }

    let rho = (1..=m.r()).fold(m.zero(), |acc, i| &acc + &m.dual_basis_vector(i));
    let (dominant, descent) = dominant_representative(&apply(&rho), m)?;
    if dominant != rho {
        return Err(Error::Internal(format!(
            "image of rho descends to {dominant}, not rho; isometry is outside W"
        )));
    }
    let word = descent.inverse();
    for (b, img) in basis.iter().zip(&images) {
        if &apply_word(&word, b, m)? != img {
            return Err(Error::Internal(format!("word {word} does not reproduce the image of {b}")));
        }
    }
    Ok(word)
}
