//! Rational double points seen through the lattice: a configuration of
//! `-2`-curve classes, its ADE type, and how Weyl-orbit weight sets break up
//! into orbits of the subgroup generated by reflections in those curves.
//!
//! Whether a root is effective depends on the surface, so configurations are
//! taken as given and only lattice constraints are checked.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::{lines, CurveClass};
use crate::lattice::{rank_of, LatticeVector, MarkedLattice};
use crate::roots::{dynkin_type, DynkinType};
use crate::weyl::{closure, reflect_unchecked, DEFAULT_ORBIT_CAP};

/// Classes `C_1, .., C_k` of the `-2`-curves over the singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdpConfiguration {
    curves: Vec<LatticeVector>,
    gauge_type: DynkinType,
}

impl RdpConfiguration {
    pub fn curves(&self) -> &[LatticeVector] {
        &self.curves
    }

    /// ADE type of the configuration.
    pub fn gauge_type(&self) -> &DynkinType {
        &self.gauge_type
    }
}

pub fn make_configuration(curves: &[LatticeVector], m: &MarkedLattice) -> Result<RdpConfiguration> {
    for (i, c) in curves.iter().enumerate() {
        m.check_rank(c)?;
        if !m.is_root(c) {
            return Err(Error::config(format!(
                "curve {} = {c} is not a root (norm {}, degree {})",
                i + 1,
                c.norm(),
                c.degree()
            )));
        }
        for (j, d) in curves[..i].iter().enumerate() {
            let p = c.dot(d);
            if p != 0 && p != 1 {
                return Err(Error::config(format!(
                    "curves {} = {d} and {} = {c} pair to {p}, expected 0 or 1",
                    j + 1,
                    i + 1
                )));
            }
        }
        let rows: Vec<Vec<i64>> = curves[..=i].iter().map(|x| x.coords()).collect();
        if rank_of(&rows) <= i {
            return Err(Error::config(format!(
                "curve {} = {c} is linearly dependent on the preceding curves",
                i + 1
            )));
        }
    }
    let gauge_type = dynkin_type(curves, m)?;
    Ok(RdpConfiguration {
        curves: curves.to_vec(),
        gauge_type,
    })
}

/// One orbit of the subgroup generated by reflections in the configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPart {
    /// Sorted members; the first one is the representative.
    pub members: Vec<LatticeVector>,
}

impl OrbitPart {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> &LatticeVector {
        &self.members[0]
    }

    /// Report label: two-element orbits `{lambda, lambda + C}` are the
    /// lattice shadow of a rank-two extension.
    pub fn label(&self) -> &'static str {
        match self.size() {
            1 => "singleton",
            2 => "extension pair",
            _ => "orbit",
        }
    }
}

/// Partitions the closure of `weights` under the configuration's reflections
/// into orbits, ordered by representative.
pub fn orbit_decomposition(
    config: &RdpConfiguration,
    weights: &[LatticeVector],
    m: &MarkedLattice,
) -> Result<Vec<OrbitPart>> {
    for w in weights {
        m.check_rank(w)?;
    }
    let mut sorted = weights.to_vec();
    sorted.sort();
    sorted.dedup();
    let curves = &config.curves;
    let mut assigned: HashSet<LatticeVector> = HashSet::new();
    let mut parts = Vec::new();
    for w in sorted {
        if assigned.contains(&w) {
            continue;
        }
        let members = closure(
            vec![w],
            curves.len(),
            |x, g| reflect_unchecked(&curves[g], x),
            DEFAULT_ORBIT_CAP,
            "sub-Weyl orbit",
        )?;
        assigned.extend(members.iter().cloned());
        parts.push(OrbitPart { members });
    }
    parts.sort_by(|a, b| a.representative().cmp(b.representative()));
    Ok(parts)
}

/// Lines meeting some curve of the configuration positively.
pub fn incident_lines(config: &RdpConfiguration, m: &MarkedLattice) -> Vec<CurveClass> {
    lines(m)
        .into_iter()
        .filter(|l| config.curves.iter().any(|c| l.dot(c) > 0))
        .map(CurveClass::new)
        .collect()
}
