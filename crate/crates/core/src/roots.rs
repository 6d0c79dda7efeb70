//! Roots of the marked lattice: classes with `alpha^2 = -2` and
//! `<alpha, kappa> = 0`.
//!
//! The form is negative definite on `kappa^perp`, so the Cartan matrix is the
//! negated Gram matrix of the simple coroots and the highest root pairs
//! non-positively with every simple coroot.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{rank_of, LatticeVector, MarkedLattice};

/// A lattice vector known to be a root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(LatticeVector);

impl Root {
    pub fn new(v: LatticeVector, m: &MarkedLattice) -> Result<Root> {
        if !m.is_root(&v) {
            return Err(Error::domain(format!(
                "{v} is not a root (norm {}, degree {})",
                v.norm(),
                v.degree()
            )));
        }
        Ok(Root(v))
    }

    pub fn vector(&self) -> &LatticeVector {
        &self.0
    }

    pub fn into_vector(self) -> LatticeVector {
        self.0
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All roots, sorted.
pub fn enumerate_roots(m: &MarkedLattice) -> Vec<LatticeVector> {
    m.vectors_with(-2, 0)
}

/// Sum of the simple-coroot coefficients.
pub fn height(m: &MarkedLattice, alpha: &LatticeVector) -> Result<i64> {
    Ok(m.expand_in_simple(alpha)?.iter().sum())
}

pub fn is_positive(m: &MarkedLattice, alpha: &LatticeVector) -> Result<bool> {
    let c = m.expand_in_simple(alpha)?;
    Ok(c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0))
}

/// Roots with non-negative expansion over the simple coroots, sorted.
pub fn positive_roots(m: &MarkedLattice) -> Vec<LatticeVector> {
    enumerate_roots(m)
        .into_iter()
        .filter(|a| is_positive(m, a).expect("roots lie in kappa^perp"))
        .collect()
}

/// The unique root of maximal height. Defined for `4 <= r <= 8`, where the
/// root system is irreducible.
pub fn highest_root(m: &MarkedLattice) -> Result<LatticeVector> {
    if m.r() < 4 {
        return Err(Error::Unsupported(format!(
            "highest root needs an irreducible root system (4 <= r <= 8), got r={}",
            m.r()
        )));
    }
    let positives = positive_roots(m);
    let heights: Vec<i64> = positives.iter().map(|a| height(m, a).unwrap()).collect();
    let top = *heights.iter().max().expect("root system is non-empty");
    let mut best = positives.iter().zip(&heights).filter(|(_, &h)| h == top).map(|(a, _)| a);
    let alpha = best.next().unwrap().clone();
    if best.next().is_some() {
        return Err(Error::Internal("several roots of maximal height".into()));
    }
    if m.simple_coroots().iter().any(|s| alpha.dot(s) > 0) {
        return Err(Error::Internal(format!("highest root {alpha} is not dominant")));
    }
    Ok(alpha)
}

/// `C_ij = -<a_i, a_j>`, so the diagonal is 2.
pub fn cartan_matrix(m: &MarkedLattice) -> Vec<Vec<i64>> {
    let s = m.simple_coroots();
    s.iter().map(|a| s.iter().map(|b| -a.dot(b)).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinLetter {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinComponent {
    pub letter: DynkinLetter,
    pub rank: usize,
}

impl fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

/// A simply-laced Dynkin type, stored as a sorted multiset of components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DynkinType {
    components: Vec<DynkinComponent>,
}

impl DynkinType {
    pub fn new(mut components: Vec<DynkinComponent>) -> Self {
        components.sort();
        DynkinType { components }
    }

    pub fn components(&self) -> &[DynkinComponent] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Order of the Weyl group of this type.
    pub fn weyl_order(&self) -> u128 {
        self.components
            .iter()
            .map(|c| {
                let n = c.rank as u128;
                match c.letter {
                    DynkinLetter::A => (1..=n + 1).product(),
                    DynkinLetter::D => (1..=n).product::<u128>() << (n - 1),
                    DynkinLetter::E => match n {
                        6 => 51_840,
                        7 => 2_903_040,
                        _ => 696_729_600,
                    },
                }
            })
            .product()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("trivial");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            c.fmt(f)?;
        }
        Ok(())
    }
}

/// Classifies the Dynkin diagram of a set of roots: nodes are the roots,
/// joined by an edge when they pair to 1.
///
/// The roots must be linearly independent and pair to 0 or 1, and every
/// connected component must be of type A, D or E.
pub fn dynkin_type(roots: &[LatticeVector], m: &MarkedLattice) -> Result<DynkinType> {
    for a in roots {
        if !m.is_root(a) {
            return Err(Error::config(format!("{a} is not a root")));
        }
    }
    let n = roots.len();
    for i in 0..n {
        for j in i + 1..n {
            let p = roots[i].dot(&roots[j]);
            if p != 0 && p != 1 {
                return Err(Error::config(format!(
                    "roots {} and {} pair to {p}, expected 0 or 1",
                    roots[i], roots[j]
                )));
            }
        }
    }
    let rows: Vec<Vec<i64>> = roots.iter().map(|a| a.coords()).collect();
    if rank_of(&rows) < n {
        return Err(Error::config("roots are linearly dependent"));
    }

    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && roots[i].dot(&roots[j]) == 1).collect())
        .collect();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < nodes.len() {
            for &j in &adj[nodes[k]] {
                if !seen[j] {
                    seen[j] = true;
                    nodes.push(j);
                }
            }
            k += 1;
        }
        components.push(classify_component(&nodes, &adj, roots)?);
    }
    Ok(DynkinType::new(components))
}

fn classify_component(nodes: &[usize], adj: &[Vec<usize>], roots: &[LatticeVector]) -> Result<DynkinComponent> {
    let size = nodes.len();
    let edges: usize = nodes.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    let names = || nodes.iter().map(|&i| roots[i].to_string()).collect::<Vec<_>>().join(", ");
    if edges != size - 1 {
        return Err(Error::config(format!("diagram on {{{}}} contains a cycle", names())));
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    if branch.iter().any(|&i| adj[i].len() > 3) || branch.len() > 1 {
        return Err(Error::config(format!("diagram on {{{}}} is not of ADE type", names())));
    }
    let letter = match branch.first() {
        None => DynkinLetter::A,
        Some(&centre) => {
            let mut arms: Vec<usize> = adj[centre]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (centre, first, 1);
                    loop {
                        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => unreachable!("only one branch node"),
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => DynkinLetter::D,
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => DynkinLetter::E,
                _ => {
                    return Err(Error::config(format!(
                        "diagram on {{{}}} has arms {arms:?}, not of ADE type",
                        names()
                    )))
                }
            }
        }
    };
    Ok(DynkinComponent { letter, rank: size })
}

/// Everything about the root system of one marked lattice.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub all_roots: Vec<LatticeVector>,
    pub positive_roots: Vec<LatticeVector>,
    /// `None` for `r = 3`, where the system is reducible.
    pub highest_root: Option<LatticeVector>,
    pub cartan: Vec<Vec<i64>>,
    pub dynkin_type: DynkinType,
}

impl RootSystemData {
    pub fn new(m: &MarkedLattice) -> RootSystemData {
        let all_roots = enumerate_roots(m);
        let positive_roots = positive_roots(m);
        let highest_root = highest_root(m).ok();
        RootSystemData {
            all_roots,
            positive_roots,
            highest_root,
            cartan: cartan_matrix(m),
            dynkin_type: dynkin_type(m.simple_coroots(), m).expect("simple system is ADE"),
        }
    }
}

/// Multiset of component sizes, e.g. `{1: 15, 2: 6}`.
pub fn size_histogram<I: IntoIterator<Item = usize>>(sizes: I) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for s in sizes {
        *h.entry(s).or_insert(0) += 1;
    }
    h
}
