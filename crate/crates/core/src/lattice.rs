//! The marked lattice `Z^{r+1}` with basis `h, e1, .., er`, its diagonal
//! intersection form `diag(1, -1, .., -1)`, the anticanonical vector
//! `kappa = 3h - e1 - .. - er` and the simple coroots spanning `kappa^perp`.
//!
//! Vectors are written in the text syntax `3h-e1-2e8`: an integer coefficient
//! followed by a basis symbol, terms joined by signs. A missing coefficient
//! means 1 and a missing term means 0; the zero vector prints as `0`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Smallest and largest supported number of blown-up points.
pub const MIN_RANK: usize = 3;
pub const MAX_RANK: usize = 8;

/// Largest absolute coefficient accepted by the parser. Keeps every
/// product formed by the library well inside `i64`.
pub const MAX_PARSED_COEFF: i64 = 1_000_000;

/// An integral class `a*h + b1*e1 + .. + br*er`.
///
/// Ordering is lexicographic on `(a, b1, .., br)`; every sorted output of the
/// crate uses it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    h: i64,
    e: Vec<i64>,
}

impl LatticeVector {
    pub fn new(h: i64, e: Vec<i64>) -> Self {
        LatticeVector { h, e }
    }

    pub fn zero(r: usize) -> Self {
        LatticeVector { h: 0, e: vec![0; r] }
    }

    /// The hyperplane class `h`.
    pub fn h(r: usize) -> Self {
        LatticeVector { h: 1, e: vec![0; r] }
    }

    /// The exceptional class `e_i`, `1 <= i <= r`.
    pub fn e(i: usize, r: usize) -> Self {
        assert!((1..=r).contains(&i), "e{i} out of range for r={r}");
        let mut e = vec![0; r];
        e[i - 1] = 1;
        LatticeVector { h: 0, e }
    }

    /// Builds a vector from its coordinates `(a, b1, .., br)`.
    pub fn from_coords(coords: &[i64]) -> Self {
        assert!(!coords.is_empty());
        LatticeVector {
            h: coords[0],
            e: coords[1..].to_vec(),
        }
    }

    pub fn coeff_h(&self) -> i64 {
        self.h
    }

    pub fn coeff_e(&self) -> &[i64] {
        &self.e
    }

    /// Coefficient of `e_i` (1-based).
    pub fn coeff(&self, i: usize) -> i64 {
        self.e[i - 1]
    }

    /// Number of exceptional classes `r`.
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn coords(&self) -> Vec<i64> {
        let mut c = Vec::with_capacity(self.e.len() + 1);
        c.push(self.h);
        c.extend_from_slice(&self.e);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.h == 0 && self.e.iter().all(|&b| b == 0)
    }

    /// Intersection pairing. Panics on rank mismatch; see [`inner`] for the
    /// checked version.
    pub fn dot(&self, other: &LatticeVector) -> i64 {
        assert_eq!(self.e.len(), other.e.len(), "rank mismatch in inner product");
        self.h * other.h - self.e.iter().zip(&other.e).map(|(a, b)| a * b).sum::<i64>()
    }

    /// Self-intersection.
    pub fn norm(&self) -> i64 {
        self.dot(self)
    }

    /// `<self, kappa>`, i.e. `3a + b1 + .. + br`.
    pub fn degree(&self) -> i64 {
        3 * self.h + self.e.iter().sum::<i64>()
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &LatticeVector, k: i64) -> LatticeVector {
        assert_eq!(self.e.len(), other.e.len(), "rank mismatch");
        LatticeVector {
            h: self.h + k * other.h,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + k * b).collect(),
        }
    }

    /// Parses the text syntax for a lattice of rank `r`.
    pub fn parse(input: &str, r: usize) -> Result<LatticeVector> {
        parse_vector(input, r)
    }
}

/// Checked intersection pairing.
pub fn inner(a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
    if a.rank() != b.rank() {
        return Err(Error::domain(format!(
            "rank mismatch: {} has r={}, {} has r={}",
            a,
            a.rank(),
            b,
            b.rank()
        )));
    }
    Ok(a.dot(b))
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.add_scaled(rhs, 1)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        &self + &rhs
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.add_scaled(rhs, -1)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        &self - &rhs
    }
}

impl AddAssign<&LatticeVector> for LatticeVector {
    fn add_assign(&mut self, rhs: &LatticeVector) {
        assert_eq!(self.e.len(), rhs.e.len(), "rank mismatch");
        self.h += rhs.h;
        for (a, b) in self.e.iter_mut().zip(&rhs.e) {
            *a += b;
        }
    }
}

impl SubAssign<&LatticeVector> for LatticeVector {
    fn sub_assign(&mut self, rhs: &LatticeVector) {
        assert_eq!(self.e.len(), rhs.e.len(), "rank mismatch");
        self.h -= rhs.h;
        for (a, b) in self.e.iter_mut().zip(&rhs.e) {
            *a -= b;
        }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            h: -self.h,
            e: self.e.iter().map(|b| -b).collect(),
        }
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

impl Mul<&LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector {
            h: self * rhs.h,
            e: rhs.e.iter().map(|b| self * b).collect(),
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, sym: &str| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            f.write_str(sym)?;
            first = false;
            Ok(())
        };
        term(f, self.h, "h")?;
        for (i, &b) in self.e.iter().enumerate() {
            term(f, b, &format!("e{}", i + 1))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn parse_vector(input: &str, r: usize) -> Result<LatticeVector> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(Error::parse(input, pos, "empty vector"));
    }
    if chars[pos] == '0' {
        let mut p = pos + 1;
        skip_ws(&mut p);
        if p == chars.len() {
            return Ok(LatticeVector::zero(r));
        }
    }

    let mut h: Option<i64> = None;
    let mut e: Vec<Option<i64>> = vec![None; r];
    let mut first = true;
    while pos < chars.len() {
        let term_start = pos;
        let mut sign = 1i64;
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -1;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(Error::parse(input, pos, "expected '+' or '-'"));
        }
        first = false;

        let digits_start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff = if pos == digits_start {
            1
        } else {
            let text: String = chars[digits_start..pos].iter().collect();
            match text.parse::<i64>() {
                Ok(c) if c <= MAX_PARSED_COEFF => c,
                _ => {
                    return Err(Error::parse(
                        input,
                        digits_start,
                        format!("coefficient exceeds {MAX_PARSED_COEFF}"),
                    ))
                }
            }
        };

        if pos == chars.len() {
            return Err(Error::parse(input, pos, "expected basis symbol 'h' or 'e<i>'"));
        }
        let sym_pos = pos;
        match chars[pos] {
            'h' => {
                pos += 1;
                if h.is_some() {
                    return Err(Error::parse(input, sym_pos, "repeated term 'h'"));
                }
                h = Some(sign * coeff);
            }
            'e' => {
                pos += 1;
                let idx_start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == idx_start {
                    return Err(Error::parse(input, pos, "expected index after 'e'"));
                }
                let text: String = chars[idx_start..pos].iter().collect();
                let idx: usize = text
                    .parse()
                    .map_err(|_| Error::parse(input, idx_start, "bad index"))?;
                if idx == 0 || idx > r {
                    return Err(Error::parse(
                        input,
                        idx_start,
                        format!("index e{idx} out of range for r={r}"),
                    ));
                }
                if e[idx - 1].is_some() {
                    return Err(Error::parse(input, sym_pos, format!("repeated term 'e{idx}'")));
                }
                e[idx - 1] = Some(sign * coeff);
            }
            c => {
                let at = if c.is_whitespace() { term_start } else { sym_pos };
                return Err(Error::parse(
                    input,
                    at,
                    format!("unexpected character {c:?}, expected 'h' or 'e<i>'"),
                ));
            }
        }
        skip_ws(&mut pos);
    }
    Ok(LatticeVector {
        h: h.unwrap_or(0),
        e: e.into_iter().map(|c| c.unwrap_or(0)).collect(),
    })
}

/// The lattice `Z^{r+1}` together with `kappa` and the simple coroots
/// `a_i = e_i - e_{i+1}` (`i < r`) and `a_r = h - e1 - e2 - e3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedLattice {
    r: usize,
    kappa: LatticeVector,
    simple: Vec<LatticeVector>,
}

/// The generator `mu2` of `Lambda^*/Lambda` together with the lift `mu` it
/// was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantData {
    pub d: i64,
    /// A class with `<mu, kappa> = 1`; always `e_r`.
    pub mu: LatticeVector,
    /// `mu - kappa/d` as exact rationals on the basis `h, e1, .., er`. This
    /// representative is orthogonal to `kappa`.
    pub mu2: Vec<BigRational>,
}

impl DiscriminantData {
    /// Whether `n * mu2` lies in `Lambda = kappa^perp`.
    pub fn multiple_in_lambda(&self, n: i64) -> bool {
        let n = BigInt::from(n);
        self.mu2.iter().all(|c| (c * &n).is_integer())
    }

    /// Additive order of `mu2` in `Lambda^*/Lambda`.
    pub fn order(&self) -> i64 {
        (1..=self.d)
            .find(|&n| self.multiple_in_lambda(n))
            .expect("d * mu2 always lies in Lambda")
    }
}

impl MarkedLattice {
    pub fn new(r: usize) -> Result<MarkedLattice> {
        if !(MIN_RANK..=MAX_RANK).contains(&r) {
            return Err(Error::domain(format!(
                "r must lie in [{MIN_RANK}, {MAX_RANK}], got {r}"
            )));
        }
        let kappa = LatticeVector::new(3, vec![-1; r]);
        let mut simple: Vec<LatticeVector> = (1..r)
            .map(|i| &LatticeVector::e(i, r) - &LatticeVector::e(i + 1, r))
            .collect();
        let mut top = LatticeVector::h(r);
        for i in 1..=3 {
            top -= &LatticeVector::e(i, r);
        }
        simple.push(top);
        Ok(MarkedLattice { r, kappa, simple })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Degree `d = 9 - r = <kappa, kappa>`.
    pub fn d(&self) -> i64 {
        9 - self.r as i64
    }

    pub fn kappa(&self) -> &LatticeVector {
        &self.kappa
    }

    pub fn simple_coroots(&self) -> &[LatticeVector] {
        &self.simple
    }

    /// Simple coroot `a_i`, 1-based.
    pub fn simple(&self, i: usize) -> &LatticeVector {
        &self.simple[i - 1]
    }

    /// The basis `h, e1, .., er`.
    pub fn basis(&self) -> Vec<LatticeVector> {
        std::iter::once(LatticeVector::h(self.r))
            .chain((1..=self.r).map(|i| LatticeVector::e(i, self.r)))
            .collect()
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector::zero(self.r)
    }

    pub(crate) fn check_rank(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.r {
            return Err(Error::domain(format!(
                "vector {} has r={}, lattice has r={}",
                v,
                v.rank(),
                self.r
            )));
        }
        Ok(())
    }

    pub fn inner(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        self.check_rank(a)?;
        inner(a, b)
    }

    /// `<lambda, kappa>`.
    pub fn degree(&self, lambda: &LatticeVector) -> Result<i64> {
        self.check_rank(lambda)?;
        Ok(lambda.degree())
    }

    /// Holomorphic Euler characteristic of the line bundle with class
    /// `lambda`, by Riemann-Roch: `1 + (lambda^2 + <lambda, kappa>)/2`.
    pub fn euler_char(&self, lambda: &LatticeVector) -> Result<i64> {
        self.check_rank(lambda)?;
        let twice = lambda.norm() + lambda.degree();
        debug_assert!(twice % 2 == 0, "kappa is characteristic");
        Ok(1 + twice / 2)
    }

    pub fn is_root(&self, v: &LatticeVector) -> bool {
        v.rank() == self.r && v.norm() == -2 && v.degree() == 0
    }

    /// Values `<lambda, a_i>` on the simple coroots.
    pub fn evaluate_on_coroots(&self, lambda: &LatticeVector) -> Result<Vec<i64>> {
        self.check_rank(lambda)?;
        Ok(self.simple.iter().map(|a| lambda.dot(a)).collect())
    }

    /// The element of `Lambda~` pairing to `delta_ij` with `a_j`.
    ///
    /// `h - e1`, `2h - e1 - e2`, `e_{i+1} + .. + e_r` for `3 <= i < r`, and `h`.
    pub(crate) fn dual_basis_vector(&self, i: usize) -> LatticeVector {
        let r = self.r;
        assert!((1..=r).contains(&i));
        if i == r {
            LatticeVector::h(r)
        } else if i == 1 {
            &LatticeVector::h(r) - &LatticeVector::e(1, r)
        } else if i == 2 {
            let mut v = 2 * &LatticeVector::h(r);
            v -= &LatticeVector::e(1, r);
            v -= &LatticeVector::e(2, r);
            v
        } else {
            let mut v = LatticeVector::zero(r);
            for j in i + 1..=r {
                v += &LatticeVector::e(j, r);
            }
            v
        }
    }

    /// Coefficients of `v` over the simple coroots. Requires `<v, kappa> = 0`;
    /// the coefficients are then integers because the coroots form a basis
    /// of `kappa^perp`.
    pub fn expand_in_simple(&self, v: &LatticeVector) -> Result<Vec<i64>> {
        self.check_rank(v)?;
        if v.degree() != 0 {
            return Err(Error::domain(format!(
                "{v} is not in the span of the simple coroots (<v, kappa> = {})",
                v.degree()
            )));
        }
        Ok((1..=self.r).map(|i| v.dot(&self.dual_basis_vector(i))).collect())
    }

    pub fn discriminant_data(&self) -> DiscriminantData {
        let d = self.d();
        let mu = LatticeVector::e(self.r, self.r);
        let dd = BigInt::from(d);
        let mu2 = mu
            .coords()
            .iter()
            .zip(self.kappa.coords())
            .map(|(&m, k)| {
                BigRational::from_integer(BigInt::from(m)) - BigRational::new(BigInt::from(k), dd.clone())
            })
            .collect();
        DiscriminantData { d, mu, mu2 }
    }

    /// A lift of the functional `psi` on `Lambda` (given by its values on the
    /// simple coroots) to `Lambda~`, normalized so that `0 <= degree < d`.
    pub fn lift_weight(&self, psi: &[i64]) -> Result<LatticeVector> {
        if psi.len() != self.r {
            return Err(Error::domain(format!(
                "expected {} coroot values, got {}",
                self.r,
                psi.len()
            )));
        }
        let mut lambda = self.zero();
        for (i, &p) in psi.iter().enumerate() {
            if p != 0 {
                lambda = lambda.add_scaled(&self.dual_basis_vector(i + 1), p);
            }
        }
        Ok(self.normalize_mod_kappa(&lambda))
    }

    /// Representative of `lambda + Z kappa` with degree in `[0, d)`.
    pub fn normalize_mod_kappa(&self, lambda: &LatticeVector) -> LatticeVector {
        let t = lambda.degree().div_euclid(self.d());
        lambda.add_scaled(&self.kappa, -t)
    }

    /// Whether `a ≡ -psi(d*mu2) (mod d)`, the condition for the character
    /// `(kappa -> a, a_i -> psi_i)` of `Z kappa + Lambda` to come from
    /// `Lambda~`.
    pub fn character_extends(&self, a: i64, psi: &[i64]) -> Result<bool> {
        if psi.len() != self.r {
            return Err(Error::domain(format!(
                "expected {} coroot values, got {}",
                self.r,
                psi.len()
            )));
        }
        let d = self.d();
        // d*mu2 = d*e_r - kappa lies in Lambda.
        let d_mu2 = (d * &LatticeVector::e(self.r, self.r)) - self.kappa.clone();
        let coeffs = self.expand_in_simple(&d_mu2)?;
        let value: i64 = coeffs.iter().zip(psi).map(|(c, p)| c * p).sum();
        Ok((a + value).rem_euclid(d) == 0)
    }

    /// Some `lambda` with `<lambda, kappa> = a` and `<lambda, a_i> = psi_i`,
    /// or `None` when no such class exists.
    pub fn lift_character(&self, a: i64, psi: &[i64]) -> Result<Option<LatticeVector>> {
        if !self.character_extends(a, psi)? {
            return Ok(None);
        }
        let base = self.lift_weight(psi)?;
        let gap = a - base.degree();
        if gap % self.d() != 0 {
            return Err(Error::Internal(format!(
                "congruence holds but degree gap {gap} is not divisible by {}",
                self.d()
            )));
        }
        Ok(Some(base.add_scaled(&self.kappa, gap / self.d())))
    }

    /// All classes with `lambda^2 = self_int` and `<lambda, kappa> = degree`,
    /// sorted.
    ///
    /// Writing `lambda = a*h + sum b_i e_i` the constraints are
    /// `sum b_i = degree - 3a` and `sum b_i^2 = a^2 - self_int`; Cauchy-Schwarz
    /// `(sum b_i)^2 <= r * sum b_i^2` bounds `a` because `9 - r > 0`, and the
    /// same inequality prunes the search over the `b_i`.
    pub fn vectors_with(&self, self_int: i64, degree: i64) -> Vec<LatticeVector> {
        let r = self.r as i64;
        let lead = 9 - r;
        // (9-r) a^2 - 6 t a + t^2 + r s <= 0
        let admissible = |a: i64| lead * a * a - 6 * degree * a + degree * degree + r * self_int <= 0;
        let centre = (3 * degree) / lead;
        let disc = 36 * degree * degree - 4 * lead * (degree * degree + r * self_int);
        let mut out = Vec::new();
        if disc < 0 {
            return out;
        }
        let spread = (disc as f64).sqrt() as i64 / (2 * lead) + 2;
        let mut b = vec![0i64; self.r];
        for a in (centre - spread - 1)..=(centre + spread + 1) {
            if !admissible(a) {
                continue;
            }
            let sum = degree - 3 * a;
            let norm = a * a - self_int;
            if norm < 0 {
                continue;
            }
            fill_coords(0, sum, norm, &mut b, &mut |b| {
                out.push(LatticeVector::new(a, b.to_vec()));
            });
        }
        out.sort();
        out
    }
}

/// Enumerates integer tuples `b[pos..]` with the given sum and sum of squares.
fn fill_coords(pos: usize, sum: i64, norm: i64, b: &mut [i64], emit: &mut dyn FnMut(&[i64])) {
    let left = (b.len() - pos) as i64;
    if left == 0 {
        if sum == 0 && norm == 0 {
            emit(b);
        }
        return;
    }
    if sum * sum > left * norm || (sum - norm).rem_euclid(2) != 0 {
        return;
    }
    let bound = isqrt(norm);
    for x in -bound..=bound {
        b[pos] = x;
        fill_coords(pos + 1, sum - x, norm - x * x, b, emit);
    }
    b[pos] = 0;
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Exact rank of a set of integer vectors (fraction-free elimination).
pub(crate) fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let g = m[rank][col].clone();
                for j in 0..ncols {
                    let v = &m[i][j] * &g - &m[rank][j] * &f;
                    m[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact determinant of a square integer matrix (Bareiss).
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str, r: usize) -> LatticeVector {
        LatticeVector::parse(s, r).unwrap()
    }

    #[test]
    fn marked_lattice_invariants() {
        for r in MIN_RANK..=MAX_RANK {
            let m = MarkedLattice::new(r).unwrap();
            assert_eq!(m.kappa().norm(), 9 - r as i64);
            assert_eq!(m.d(), 9 - r as i64);
            for a in m.simple_coroots() {
                assert_eq!(a.norm(), -2);
                assert_eq!(a.dot(m.kappa()), 0);
            }
            let rows: Vec<_> = m.simple_coroots().iter().map(|a| a.coords()).collect();
            assert_eq!(rank_of(&rows), r);
        }
        assert_eq!(MarkedLattice::new(6).unwrap().kappa().norm(), 3);
        assert_eq!(MarkedLattice::new(8).unwrap().d(), 1);
        let m4 = MarkedLattice::new(4).unwrap();
        assert_eq!(m4.simple(4), &v("h-e1-e2-e3", 4));
        assert_eq!(m4.simple(4).norm(), -2);
    }

    #[test]
    fn rank_out_of_range() {
        assert!(matches!(MarkedLattice::new(2), Err(Error::Domain(_))));
        assert!(matches!(MarkedLattice::new(9), Err(Error::Domain(_))));
    }

    #[test]
    fn inner_examples() {
        let r = 6;
        let m = MarkedLattice::new(r).unwrap();
        assert_eq!(inner(&LatticeVector::h(r), &LatticeVector::h(r)).unwrap(), 1);
        assert_eq!(inner(&LatticeVector::e(1, r), &LatticeVector::e(2, r)).unwrap(), 0);
        assert_eq!(inner(m.kappa(), &LatticeVector::e(1, r)).unwrap(), 1);
        assert!(matches!(
            inner(&LatticeVector::h(5), &LatticeVector::h(6)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn degree_examples() {
        let m6 = MarkedLattice::new(6).unwrap();
        assert_eq!(m6.degree(&LatticeVector::e(1, 6)).unwrap(), 1);
        assert_eq!(m6.degree(&LatticeVector::h(6)).unwrap(), 3);
        let m5 = MarkedLattice::new(5).unwrap();
        assert_eq!(m5.degree(m5.kappa()).unwrap(), 4);
        assert!(m5.degree(&LatticeVector::h(6)).is_err());
    }

    #[test]
    fn discriminant_examples() {
        let m6 = MarkedLattice::new(6).unwrap();
        let dd = m6.discriminant_data();
        assert_eq!(dd.mu, LatticeVector::e(6, 6));
        assert_eq!(dd.d, 3);
        assert!(dd.multiple_in_lambda(3));
        assert_eq!(dd.order(), 3);

        let dd8 = MarkedLattice::new(8).unwrap().discriminant_data();
        assert!(dd8.multiple_in_lambda(1));

        // smallest n with n*mu2 in Lambda, by direct search
        let dd4 = MarkedLattice::new(4).unwrap().discriminant_data();
        let n = (1..100).find(|&n| dd4.multiple_in_lambda(n)).unwrap();
        assert_eq!(n, 5);
    }

    #[test]
    fn mu2_represents_penultimate_dual_weight() {
        for r in 4..=8 {
            let m = MarkedLattice::new(r).unwrap();
            let dd = m.discriminant_data();
            // pair the rational representative with each coroot
            for (j, a) in m.simple_coroots().iter().enumerate() {
                let c = a.coords();
                let mut s = BigRational::zero();
                s += &dd.mu2[0] * BigRational::from_integer(BigInt::from(c[0]));
                for k in 1..=r {
                    s -= &dd.mu2[k] * BigRational::from_integer(BigInt::from(c[k]));
                }
                let want = i64::from(j + 1 == r - 1);
                assert_eq!(s, BigRational::from_integer(BigInt::from(want)));
            }
            // mu2 is orthogonal to kappa
            let kc = m.kappa().coords();
            let mut s = &dd.mu2[0] * BigRational::from_integer(BigInt::from(kc[0]));
            for k in 1..=r {
                s -= &dd.mu2[k] * BigRational::from_integer(BigInt::from(kc[k]));
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn discriminant_order_is_d() {
        for r in MIN_RANK..=MAX_RANK {
            let m = MarkedLattice::new(r).unwrap();
            let dd = m.discriminant_data();
            assert!(dd.multiple_in_lambda(m.d()));
            for k in 1..m.d() {
                assert!(!dd.multiple_in_lambda(k), "r={r} k={k}");
            }
        }
    }

    #[test]
    fn lift_character_examples() {
        let m = MarkedLattice::new(6).unwrap();
        let e6 = LatticeVector::e(6, 6);
        let psi = m.evaluate_on_coroots(&e6).unwrap();
        let lam = m.lift_character(1, &psi).unwrap().unwrap();
        assert_eq!(lam.degree(), 1);
        assert_eq!(m.evaluate_on_coroots(&lam).unwrap(), psi);

        assert_eq!(m.lift_character(1, &[0; 6]).unwrap(), None);
        // 1 + psi(3 mu2) with psi = 0 is 1, not divisible by 3
        assert!(!m.character_extends(1, &[0; 6]).unwrap());

        let m8 = MarkedLattice::new(8).unwrap();
        for a in -3..=3 {
            for i in 0..8 {
                let mut psi = vec![0; 8];
                psi[i] = a - 1;
                assert!(m8.lift_character(a, &psi).unwrap().is_some());
            }
        }
    }

    /// Exhaustive search over a box of classes: a character extends iff some
    /// class in the box realizes it.
    #[test]
    fn lift_character_matches_box_search() {
        for r in 3..=5 {
            let m = MarkedLattice::new(r).unwrap();
            let d = m.d();
            let mut realized = std::collections::HashSet::new();
            // Queries below only involve psi supported on a_1 and a_r with
            // entries in {-1, 0, 1}; such lifts have |a| <= 8, |b_i| <= 3.
            let bounds: Vec<i64> = std::iter::once(8).chain(std::iter::repeat_n(3, r)).collect();
            let mut coords: Vec<i64> = bounds.iter().map(|b| -b).collect();
            loop {
                let lam = LatticeVector::from_coords(&coords);
                let psi = m.evaluate_on_coroots(&lam).unwrap();
                if (0..d).contains(&lam.degree()) {
                    realized.insert((lam.degree(), psi));
                }
                let mut k = 0;
                while k <= r {
                    coords[k] += 1;
                    if coords[k] > bounds[k] {
                        coords[k] = -bounds[k];
                        k += 1;
                    } else {
                        break;
                    }
                }
                if k > r {
                    break;
                }
            }
            for psi0 in -1..=1i64 {
                for psi_last in -1..=1i64 {
                    let mut psi = vec![0; r];
                    psi[0] = psi0;
                    psi[r - 1] = psi_last;
                    for a in 0..d {
                        let lifted = m.lift_character(a, &psi).unwrap();
                        assert_eq!(
                            lifted.is_some(),
                            realized.contains(&(a, psi.clone())),
                            "r={r} a={a} psi={psi:?}"
                        );
                        if let Some(l) = lifted {
                            assert_eq!(l.degree(), a);
                            assert_eq!(m.evaluate_on_coroots(&l).unwrap(), psi);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lift_weight_examples() {
        let m = MarkedLattice::new(6).unwrap();
        let mut psi = vec![0; 6];
        psi[4] = 1;
        let lam = m.lift_weight(&psi).unwrap();
        assert_eq!(lam, LatticeVector::e(6, 6));
        assert_eq!(lam.degree(), 1);

        assert_eq!(m.lift_weight(&[0; 6]).unwrap(), m.zero());

        let mut psi = vec![0; 6];
        psi[5] = 1;
        let lam = m.lift_weight(&psi).unwrap();
        // h has degree 3 = d, so the normalized lift is h - kappa
        assert_eq!(lam, &LatticeVector::h(6) - m.kappa());
        assert_eq!(lam.degree(), 0);
    }

    #[test]
    fn dual_basis_is_dual() {
        for r in MIN_RANK..=MAX_RANK {
            let m = MarkedLattice::new(r).unwrap();
            for i in 1..=r {
                let w = m.dual_basis_vector(i);
                for j in 1..=r {
                    assert_eq!(w.dot(m.simple(j)), i64::from(i == j), "r={r} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn expand_in_simple_examples() {
        let m = MarkedLattice::new(6).unwrap();
        assert_eq!(m.expand_in_simple(m.simple(1)).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(m.expand_in_simple(&v("e1-e3", 6)).unwrap(), vec![1, 1, 0, 0, 0, 0]);
        assert!(matches!(m.expand_in_simple(&LatticeVector::e(1, 6)), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_char_examples() {
        let m = MarkedLattice::new(6).unwrap();
        assert_eq!(m.euler_char(&m.zero()).unwrap(), 1);
        assert_eq!(m.euler_char(m.simple(1)).unwrap(), 0);
        for line in m.vectors_with(-1, 1) {
            assert_eq!(m.euler_char(&line).unwrap(), 1);
        }
    }

    #[test]
    fn parse_and_print() {
        let r = 8;
        let x = v("3h-e1-2e8", r);
        assert_eq!(x.coeff_h(), 3);
        assert_eq!(x.coeff(1), -1);
        assert_eq!(x.coeff(8), -2);
        assert_eq!(x.to_string(), "3h-e1-2e8");
        assert_eq!(v("-e2+h", r).to_string(), "h-e2");
        assert_eq!(v("0", r), LatticeVector::zero(r));
        assert_eq!(LatticeVector::zero(r).to_string(), "0");
        assert_eq!(v(" 2h - e3 ", r).to_string(), "2h-e3");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = |s: &str| match LatticeVector::parse(s, 6) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(err(""), 0);
        assert_eq!(err("3h-x1"), 3);
        assert_eq!(err("h-e7"), 3);
        assert_eq!(err("h-e"), 3);
        assert_eq!(err("he1"), 1);
        assert_eq!(err("h+h"), 2);
        assert_eq!(err("2"), 1);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    fn arb_vector(r: usize) -> impl Strategy<Value = LatticeVector> {
        proptest::collection::vec(-20i64..=20, r + 1).prop_map(|c| LatticeVector::from_coords(&c))
    }

    proptest! {
        #[test]
        fn inner_is_symmetric_bilinear(
            (a, b, c) in (3usize..=8).prop_flat_map(|r| (arb_vector(r), arb_vector(r), arb_vector(r))),
            s in -5i64..=5,
        ) {
            prop_assert_eq!(a.dot(&b), b.dot(&a));
            prop_assert_eq!(a.add_scaled(&b, s).dot(&c), a.dot(&c) + s * b.dot(&c));
        }

        #[test]
        fn kappa_is_characteristic(a in (3usize..=8).prop_flat_map(arb_vector)) {
            prop_assert_eq!((a.norm() - a.degree()).rem_euclid(2), 0);
        }

        #[test]
        fn degree_shifts_under_kappa_twist(
            a in (3usize..=8).prop_flat_map(arb_vector),
            t in -4i64..=4,
        ) {
            let m = MarkedLattice::new(a.rank()).unwrap();
            let twisted = a.add_scaled(m.kappa(), t);
            prop_assert_eq!(m.degree(&twisted).unwrap(), m.degree(&a).unwrap() + t * (9 - a.rank() as i64));
        }

        #[test]
        fn lift_weight_then_evaluate_is_identity(
            psi in (3usize..=8).prop_flat_map(|r| proptest::collection::vec(-6i64..=6, r)),
        ) {
            let m = MarkedLattice::new(psi.len()).unwrap();
            let lam = m.lift_weight(&psi).unwrap();
            prop_assert_eq!(m.evaluate_on_coroots(&lam).unwrap(), psi);
            prop_assert!((0..m.d()).contains(&lam.degree()));
        }

        #[test]
        fn display_parse_round_trip(a in (3usize..=8).prop_flat_map(arb_vector)) {
            let text = a.to_string();
            prop_assert_eq!(LatticeVector::parse(&text, a.rank()).unwrap(), a);
        }
    }
}
