//! Period homomorphisms `Lambda~ -> E` killing `kappa`, with the elliptic
//! curve `E` replaced by its torsion subgroup `(Q/Z)^2`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, MarkedLattice};
use crate::weyl::{apply_word, closure, WeylWord};

/// Default cap on the number of coroot-value tuples visited when
/// canonicalizing.
pub const DEFAULT_PERIOD_CAP: usize = 1_000_000;

/// Largest denominator accepted for a torsion coordinate.
pub const MAX_DENOMINATOR: i64 = 1 << 31;

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// A point of `(Q/Z)^2`, coordinates reduced into `[0, 1)`. Ordering is
/// lexicographic by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    x: Rational64,
    y: Rational64,
}

impl TorsionPoint {
    pub fn new(x: Rational64, y: Rational64) -> Result<Self> {
        for c in [x, y] {
            if *c.denom() > MAX_DENOMINATOR {
                return Err(Error::domain(format!("denominator of {c} exceeds {MAX_DENOMINATOR}")));
            }
        }
        Ok(TorsionPoint { x: frac(x), y: frac(y) })
    }

    pub fn zero() -> Self {
        TorsionPoint {
            x: Rational64::zero(),
            y: Rational64::zero(),
        }
    }

    pub fn x(&self) -> Rational64 {
        self.x
    }

    pub fn y(&self) -> Rational64 {
        self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `k * self`, reducing `k` modulo each denominator first.
    pub fn scale(&self, k: i64) -> TorsionPoint {
        let mul = |c: Rational64| {
            let den = *c.denom();
            let kk = k.rem_euclid(den);
            frac(Rational64::new(c.numer() * kk % den, den))
        };
        TorsionPoint {
            x: mul(self.x),
            y: mul(self.y),
        }
    }

    /// Least common multiple of the two denominators.
    pub fn order_bound(&self) -> i64 {
        self.x.denom().lcm(self.y.denom())
    }
}

impl Add for TorsionPoint {
    type Output = TorsionPoint;
    fn add(self, rhs: TorsionPoint) -> TorsionPoint {
        TorsionPoint {
            x: frac(self.x + rhs.x),
            y: frac(self.y + rhs.y),
        }
    }
}

impl Neg for TorsionPoint {
    type Output = TorsionPoint;
    fn neg(self) -> TorsionPoint {
        TorsionPoint {
            x: frac(-self.x),
            y: frac(-self.y),
        }
    }
}

impl Sub for TorsionPoint {
    type Output = TorsionPoint;
    fn sub(self, rhs: TorsionPoint) -> TorsionPoint {
        self + (-rhs)
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for TorsionPoint {
    type Err = Error;

    /// Parses `a/b,c/d`; integers may omit the denominator.
    fn from_str(s: &str) -> Result<TorsionPoint> {
        let Some((xs, ys)) = s.split_once(',') else {
            return Err(Error::parse(s, s.len(), "expected two coordinates 'a/b,c/d'"));
        };
        let coord = |text: &str, offset: usize| -> Result<Rational64> {
            let t = text.trim();
            let (n, d) = match t.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (t, "1"),
            };
            let n: i64 = n.parse().map_err(|_| Error::parse(s, offset, format!("bad numerator {n:?}")))?;
            let d: i64 = d
                .parse()
                .map_err(|_| Error::parse(s, offset, format!("bad denominator {d:?}")))?;
            if d <= 0 {
                return Err(Error::parse(s, offset, "denominator must be positive"));
            }
            if d > MAX_DENOMINATOR || n.abs() > i64::MAX / 4 {
                return Err(Error::parse(s, offset, "coordinate out of range"));
            }
            Ok(Rational64::new(n, d))
        };
        let x = coord(xs, 0)?;
        let y = coord(ys, xs.len() + 1)?;
        TorsionPoint::new(x, y)
    }
}

/// Images of `h, e1, .., er` under a homomorphism with `kappa -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodHomomorphism {
    images: Vec<TorsionPoint>,
}

impl PeriodHomomorphism {
    pub fn images(&self) -> &[TorsionPoint] {
        &self.images
    }

    pub fn r(&self) -> usize {
        self.images.len() - 1
    }
}

fn evaluate_on(images: &[TorsionPoint], lambda: &LatticeVector) -> TorsionPoint {
    lambda
        .coords()
        .iter()
        .zip(images)
        .fold(TorsionPoint::zero(), |acc, (&c, p)| acc + p.scale(c))
}

/// Validates `3 p(h) - sum p(e_i) = 0`.
pub fn make_period(assignments: Vec<TorsionPoint>, m: &MarkedLattice) -> Result<PeriodHomomorphism> {
    if assignments.len() != m.r() + 1 {
        return Err(Error::domain(format!(
            "expected {} images (h, e1..e{}), got {}",
            m.r() + 1,
            m.r(),
            assignments.len()
        )));
    }
    let at_kappa = evaluate_on(&assignments, m.kappa());
    if !at_kappa.is_zero() {
        return Err(Error::Constraint(format!("image of kappa is {at_kappa}, expected 0")));
    }
    Ok(PeriodHomomorphism { images: assignments })
}

pub fn evaluate(p: &PeriodHomomorphism, lambda: &LatticeVector) -> Result<TorsionPoint> {
    if lambda.rank() != p.r() {
        return Err(Error::domain(format!(
            "vector {lambda} has r={}, homomorphism has r={}",
            lambda.rank(),
            p.r()
        )));
    }
    Ok(evaluate_on(&p.images, lambda))
}

/// Values on the simple coroots: the element of `E (x) Lambda`.
pub fn restrict_to_coroots(p: &PeriodHomomorphism, m: &MarkedLattice) -> Result<Vec<TorsionPoint>> {
    m.simple_coroots().iter().map(|a| evaluate(p, a)).collect()
}

/// `p o w`.
pub fn precompose(p: &PeriodHomomorphism, w: &WeylWord, m: &MarkedLattice) -> Result<PeriodHomomorphism> {
    let images = m
        .basis()
        .iter()
        .map(|b| evaluate(p, &apply_word(w, b, m)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodHomomorphism { images })
}

/// Canonical representative of a period point modulo the Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPeriod {
    pub values: Vec<TorsionPoint>,
    pub orbit_size: usize,
}

pub fn weyl_canonicalize(p: &PeriodHomomorphism, m: &MarkedLattice) -> Result<Vec<TorsionPoint>> {
    Ok(weyl_canonicalize_with_cap(p, m, DEFAULT_PERIOD_CAP)?.values)
}

/// Lexicographically least coroot-value tuple in the Weyl orbit.
///
/// Precomposing with `s_j` sends the tuple `t` to
/// `t_i + <a_i, a_j> t_j`. All coordinates are brought to a common
/// denominator `N` so the search runs on residues mod `N`.
pub fn weyl_canonicalize_with_cap(p: &PeriodHomomorphism, m: &MarkedLattice, cap: usize) -> Result<CanonicalPeriod> {
    let values = restrict_to_coroots(p, m)?;
    let mut n: i64 = 1;
    for t in &values {
        n = n.lcm(&t.order_bound());
        if n > MAX_DENOMINATOR {
            return Err(Error::Overflow(format!("common denominator exceeds {MAX_DENOMINATOR}")));
        }
    }
    let to_residue = |c: Rational64| (c * Rational64::from_integer(n)).to_integer();
    let seed: Vec<i64> = values.iter().flat_map(|t| [to_residue(t.x), to_residue(t.y)]).collect();
    let r = m.r();
    let gram: Vec<Vec<i64>> = m
        .simple_coroots()
        .iter()
        .map(|a| m.simple_coroots().iter().map(|b| a.dot(b)).collect())
        .collect();
    let orbit = closure(
        vec![seed],
        r,
        |t, j| {
            let mut out = t.clone();
            for i in 0..r {
                let g = gram[i][j];
                if g != 0 {
                    out[2 * i] = (t[2 * i] + g * t[2 * j]).rem_euclid(n);
                    out[2 * i + 1] = (t[2 * i + 1] + g * t[2 * j + 1]).rem_euclid(n);
                }
            }
            out
        },
        cap,
        "period orbit",
    )?;
    let least = &orbit[0];
    let values = least
        .chunks(2)
        .map(|c| TorsionPoint {
            x: Rational64::new(c[0], n),
            y: Rational64::new(c[1], n),
        })
        .collect();
    debug_assert!(least.iter().all(|x| !x.is_negative()));
    Ok(CanonicalPeriod {
        values,
        orbit_size: orbit.len(),
    })
}
