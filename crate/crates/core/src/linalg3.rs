//! Exact dense linear algebra over Q(i, √2, √3): 3×3 matrix algebra,
//! row reduction in arbitrary dimension, characteristic and minimal
//! polynomials.
//!
//! Subspaces are kept in reduced row-echelon form with leading entries
//! normalized to 1, so two spans are equal exactly when their stored bases
//! are identical. This is the equality test behind every "is spanned by"
//! statement the verifier checks.

use crate::exactfield::{FieldElement, FieldError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is singular")]
    Singular,
    #[error("vector lengths do not match (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not traceless")]
    NotTraceless,
}

/// A 3×3 matrix over the field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat3 {
    entries: [[FieldElement; 3]; 3],
}

impl Mat3 {
    pub fn zero() -> Self {
        Mat3 {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| FieldElement::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Mat3::zero();
        for k in 0..3 {
            m.entries[k][k] = FieldElement::one();
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        Mat3 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_rows(rows: [[FieldElement; 3]; 3]) -> Self {
        Mat3 { entries: rows }
    }

    /// Matrix with integer entries, row major.
    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3::from_fn(|i, j| FieldElement::from_int(rows[i][j]))
    }

    pub fn diag(d0: FieldElement, d1: FieldElement, d2: FieldElement) -> Self {
        let mut m = Mat3::zero();
        m.entries[0][0] = d0;
        m.entries[1][1] = d1;
        m.entries[2][2] = d2;
        m
    }

    /// Elementary matrix E_{ij}.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Mat3::zero();
        m.entries[i][j] = FieldElement::one();
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.entries[i][j] + &other.entries[i][j])
    }

    pub fn sub(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.entries[i][j] - &other.entries[i][j])
    }

    pub fn neg(&self) -> Mat3 {
        Mat3::from_fn(|i, j| -&self.entries[i][j])
    }

    pub fn scale(&self, c: &FieldElement) -> Mat3 {
        Mat3::from_fn(|i, j| &self.entries[i][j] * c)
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let mut acc = FieldElement::zero();
            for k in 0..3 {
                acc += &(&self.entries[i][k] * &other.entries[k][j]);
            }
            acc
        })
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.entries[j][i].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj_entries(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.entries[i][j].conj())
    }

    pub fn trace(&self) -> FieldElement {
        let mut t = self.entries[0][0].clone();
        t += &self.entries[1][1];
        t += &self.entries[2][2];
        t
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> FieldElement {
        let e = &self.entries;
        let m00 = &(&e[1][1] * &e[2][2]) - &(&e[1][2] * &e[2][1]);
        let m01 = &(&e[1][0] * &e[2][2]) - &(&e[1][2] * &e[2][0]);
        let m02 = &(&e[1][0] * &e[2][1]) - &(&e[1][1] * &e[2][0]);
        &(&(&e[0][0] * &m00) - &(&e[0][1] * &m01)) + &(&e[0][2] * &m02)
    }

    /// Exact inverse via the adjugate. Errors when the determinant is zero.
    pub fn inv(&self) -> Result<Mat3, LinAlgError> {
        let d = self.det();
        if d.is_zero() {
            return Err(LinAlgError::Singular);
        }
        let dinv = d.inv().expect("nonzero determinant");
        let e = &self.entries;
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let minor = &(&e[r[0]][c[0]] * &e[r[1]][c[1]]) - &(&e[r[0]][c[1]] * &e[r[1]][c[0]]);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -&minor
            }
        };
        Ok(Mat3::from_fn(|i, j| &cof(j, i) * &dinv))
    }

    /// Flatten row-major into a 9-coordinate vector.
    pub fn flatten(&self) -> CoordVector {
        let mut v = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                v.push(self.entries[i][j].clone());
            }
        }
        CoordVector::new(v)
    }

    pub fn from_flat(v: &CoordVector) -> Mat3 {
        assert_eq!(v.len(), 9, "flattened 3x3 matrix must have 9 coordinates");
        Mat3::from_fn(|i, j| v.coords[3 * i + j].clone())
    }

    /// g x g^{-1}; the inverse is computed once by the caller when batching.
    pub fn conjugate_by(&self, g: &Mat3, ginv: &Mat3) -> Mat3 {
        g.mul(self).mul(ginv)
    }

    pub fn commutator(&self, other: &Mat3) -> Mat3 {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..3 {
            writeln!(
                f,
                "  [{}, {}, {}]",
                self.entries[i][0].compact(),
                self.entries[i][1].compact(),
                self.entries[i][2].compact()
            )?;
        }
        write!(f, "]")
    }
}

/// A coordinate vector over the field; length 8 for sl3 coordinates,
/// length 9 for flattened matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct CoordVector {
    coords: Vec<FieldElement>,
}

impl CoordVector {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        CoordVector { coords }
    }

    pub fn zeros(n: usize) -> Self {
        CoordVector {
            coords: vec![FieldElement::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn at(&self, k: usize) -> &FieldElement {
        &self.coords[k]
    }

    pub fn set(&mut self, k: usize, v: FieldElement) {
        self.coords[k] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &FieldElement> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &CoordVector) -> CoordVector {
        CoordVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> CoordVector {
        CoordVector::new(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn sub_scaled(&mut self, other: &CoordVector, c: &FieldElement) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a -= &(b * c);
        }
    }

    pub fn conj(&self) -> CoordVector {
        CoordVector::new(self.coords.iter().map(|a| a.conj()).collect())
    }
}

impl fmt::Debug for CoordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c.compact())?;
        }
        write!(f, ")")
    }
}

/// A linear subspace held as a canonical RREF basis.
///
/// Equality of subspaces is literal equality of the stored bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Vec<CoordVector>,
    ambient_dim: usize,
}

impl Subspace {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CoordVector] {
        &self.basis
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: Vec::new(),
            ambient_dim,
        }
    }
}

/// Row-reduce a list of vectors into a canonical RREF basis.
///
/// Leading entries are normalized to 1 and cleared above and below, zero
/// rows dropped; the result is independent of the input order.
pub fn rref(vectors: &[CoordVector]) -> Result<Subspace, LinAlgError> {
    let ambient = match vectors.first() {
        Some(v) => v.len(),
        None => return Ok(Subspace::zero(0)),
    };
    rref_in(vectors, ambient)
}

/// Like [`rref`] but with an explicit ambient dimension (allows empty input).
pub fn rref_in(vectors: &[CoordVector], ambient_dim: usize) -> Result<Subspace, LinAlgError> {
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: ambient_dim,
                got: v.len(),
            });
        }
    }
    let mut rows: Vec<CoordVector> = vectors.to_vec();
    let mut basis: Vec<CoordVector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..ambient_dim {
        // Find a row with a nonzero entry in this column.
        let Some(pos) = rows.iter().position(|r| !r.at(col).is_zero()) else {
            continue;
        };
        let mut pivot = rows.swap_remove(pos);
        let lead_inv = pivot.at(col).inv().expect("nonzero pivot");
        pivot = pivot.scale(&lead_inv);
        for r in rows.iter_mut() {
            let c = r.at(col).clone();
            if !c.is_zero() {
                r.sub_scaled(&pivot, &c);
            }
        }
        for (b, p) in basis.iter_mut().zip(&pivots) {
            let _ = p;
            let c = b.at(col).clone();
            if !c.is_zero() {
                b.sub_scaled(&pivot, &c);
            }
        }
        basis.push(pivot);
        pivots.push(col);
        if rows.iter().all(|r| r.is_zero()) && basis.len() == vectors.len() {
            break;
        }
    }
    Ok(Subspace {
        basis,
        ambient_dim,
    })
}

/// Reduce `v` against the subspace basis; returns the residual.
pub fn reduce_against(v: &CoordVector, s: &Subspace) -> Result<CoordVector, LinAlgError> {
    if v.len() != s.ambient_dim {
        return Err(LinAlgError::DimensionMismatch {
            expected: s.ambient_dim,
            got: v.len(),
        });
    }
    let mut w = v.clone();
    for b in &s.basis {
        let lead = b
            .iter()
            .position(|c| !c.is_zero())
            .expect("basis rows are nonzero");
        let c = w.at(lead).clone();
        if !c.is_zero() {
            w.sub_scaled(b, &c);
        }
    }
    Ok(w)
}

/// True iff `v` lies in the span of `s`.
pub fn in_span(v: &CoordVector, s: &Subspace) -> Result<bool, LinAlgError> {
    Ok(reduce_against(v, s)?.is_zero())
}

/// Solve the homogeneous system `rows · x = 0`; returns an RREF basis of the
/// solution space in `n` unknowns.
pub fn nullspace(rows: &[CoordVector], n: usize) -> Result<Subspace, LinAlgError> {
    let reduced = rref_in(rows, n)?;
    let mut pivots = Vec::new();
    for b in &reduced.basis {
        pivots.push(b.iter().position(|c| !c.is_zero()).unwrap());
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = CoordVector::zeros(n);
        v.set(free, FieldElement::one());
        for (row, &p) in reduced.basis.iter().zip(&pivots) {
            v.set(p, -&row.at(free).clone());
        }
        basis.push(v);
    }
    rref_in(&basis, n)
}

/// Polynomial over the field, dense coefficients, constant term first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly { coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Self {
        Poly { coeffs }.trimmed()
    }

    /// The monomial t.
    pub fn t() -> Self {
        Poly {
            coeffs: vec![FieldElement::zero(), FieldElement::one()],
        }
    }

    fn trimmed(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree -1 via None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(&self.coeff(k) + &other.coeff(k));
        }
        Poly { coeffs: c }.trimmed()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FieldElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                c[j + k] += &(a * b);
            }
        }
        Poly { coeffs: c }.trimmed()
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .trimmed()
    }

    /// Polynomial division; errors if the divisor is zero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::ZeroInverse)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.clone();
        let mut quot = vec![FieldElement::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = &rem.coeffs[rd] * &lead_inv;
            quot[rd - dd] = factor.clone();
            let mut sub = vec![FieldElement::zero(); rd - dd];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Poly { coeffs: sub });
        }
        Ok((Poly { coeffs: quot }.trimmed(), rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, a) in self.coeffs.iter().enumerate().skip(1) {
            c.push(a * &FieldElement::from_int(k as i64));
        }
        Poly { coeffs: c }.trimmed()
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.degree() {
            None => a,
            Some(d) => {
                let lead_inv = a.coeffs[d].inv().expect("nonzero lead");
                a.scale(&lead_inv)
            }
        }
    }

    /// Squarefree iff gcd with the derivative is constant.
    pub fn is_squarefree(&self) -> bool {
        matches!(self.gcd(&self.derivative()).degree(), Some(0))
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({})", c.compact()),
                1 => format!("({})*t", c.compact()),
                _ => format!("({})*t^{}", c.compact(), k),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Characteristic polynomial det(tI − M), monic of degree 3, by direct
/// cofactor expansion over the polynomial ring.
pub fn char_poly(m: &Mat3) -> Poly {
    let entry = |i: usize, j: usize| {
        let mut p = Poly::constant(-m.at(i, j));
        if i == j {
            p = p.add(&Poly::t());
        }
        p
    };
    let minor = |r: [usize; 2], c: [usize; 2]| {
        entry(r[0], c[0])
            .mul(&entry(r[1], c[1]))
            .sub(&entry(r[0], c[1]).mul(&entry(r[1], c[0])))
    };
    let mut det = entry(0, 0).mul(&minor([1, 2], [1, 2]));
    det = det.sub(&entry(0, 1).mul(&minor([1, 2], [0, 2])));
    det.add(&entry(0, 2).mul(&minor([1, 2], [0, 1])))
}

/// Minimal polynomial: the first linear dependency among I, M, M², M³.
pub fn min_poly(m: &Mat3) -> Poly {
    let mut powers = vec![Mat3::identity()];
    for _ in 0..3 {
        let last = powers.last().unwrap();
        powers.push(last.mul(m));
    }
    for deg in 1..=3usize {
        // Solve c_0 I + ... + c_{deg-1} M^{deg-1} + M^deg = 0.
        let mut rows = Vec::new();
        for k in 0..9 {
            let mut row = Vec::with_capacity(deg);
            for p in powers.iter().take(deg) {
                row.push(p.flatten().at(k).clone());
            }
            rows.push((row, powers[deg].flatten().at(k).clone()));
        }
        if let Some(sol) = solve_dense(&rows, deg) {
            let mut coeffs: Vec<FieldElement> = sol.into_iter().map(|c| -&c).collect();
            coeffs.push(FieldElement::one());
            return Poly::from_coeffs(coeffs);
        }
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by 3");
}

/// Solve a small inhomogeneous system given as (row, rhs) pairs; returns None
/// when inconsistent.
fn solve_dense(rows: &[(Vec<FieldElement>, FieldElement)], n: usize) -> Option<Vec<FieldElement>> {
    let mut aug: Vec<CoordVector> = rows
        .iter()
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            CoordVector::new(v)
        })
        .collect();
    aug.retain(|v| !v.is_zero());
    let reduced = rref_in(&aug, n + 1).ok()?;
    let mut sol = vec![FieldElement::zero(); n];
    for row in reduced.basis() {
        let lead = row.iter().position(|c| !c.is_zero()).unwrap();
        if lead == n {
            return None; // 0 = 1 row
        }
        // Columns beyond the pivot must be resolved back-to-front; with RREF
        // all non-pivot columns among 0..n are free, which cannot happen for
        // the dependency search (unique solution when one exists at this
        // degree); treat free columns as zero.
        sol[lead] = row.at(n).clone();
    }
    // Confirm it actually solves the system (guards the free-column case).
    for (r, b) in rows {
        let mut acc = FieldElement::zero();
        for (c, x) in r.iter().zip(&sol) {
            acc += &(c * x);
        }
        if acc != *b {
            return None;
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vec_i(coords: &[i64]) -> CoordVector {
        CoordVector::new(coords.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    #[test]
    fn det_and_inverse() {
        // c and g of the first cocycle/twist pair of the one-dimensional
        // classification both have determinant one.
        let c = Mat3::from_ints([[0, 0, 1], [0, -1, 0], [1, 0, 0]]);
        assert_eq!(c.det(), FieldElement::one());
        let i = FieldElement::i();
        let half_i = i.scale(&crate::exactfield::rat(1, 2));
        let mut g = Mat3::from_ints([[1, 0, 1], [0, 0, 0], [0, 0, 0]]);
        g.set(1, 1, half_i);
        g.set(2, 0, i.clone());
        g.set(2, 2, -&i);
        assert_eq!(g.det(), FieldElement::one());
        assert_eq!(Mat3::identity().inv().unwrap(), Mat3::identity());
        assert_eq!(g.mul(&g.inv().unwrap()), Mat3::identity());
        assert_eq!(Mat3::zero().inv().unwrap_err(), LinAlgError::Singular);
    }

    #[test]
    fn det_multiplicative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = Mat3::from_fn(|_, _| FieldElement::from_int(rng.gen_range(-3..=3)));
            let b = Mat3::from_fn(|_, _| FieldElement::from_int(rng.gen_range(-3..=3)));
            assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        }
    }

    #[test]
    fn rref_examples() {
        let s = rref(&[vec_i(&[1, 0]), vec_i(&[0, 1]), vec_i(&[1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis()[0], vec_i(&[1, 0]));
        assert_eq!(s.basis()[1], vec_i(&[0, 1]));
        let s = rref(&[vec_i(&[2, 4])]).unwrap();
        assert_eq!(s.basis()[0], vec_i(&[1, 2]));
        // X_alpha, X_beta, X_{alpha+beta} flattened are independent.
        let xs = [
            Mat3::unit(0, 1),
            Mat3::unit(1, 2),
            Mat3::unit(0, 2).neg(),
        ];
        let flat: Vec<CoordVector> = xs.iter().map(|m| m.flatten()).collect();
        assert_eq!(rref(&flat).unwrap().dim(), 3);
    }

    #[test]
    fn rref_idempotent_and_order_independent() {
        let vs = [vec_i(&[1, 2, 3]), vec_i(&[0, 1, 1]), vec_i(&[2, 5, 7])];
        let s1 = rref(&vs).unwrap();
        let s2 = rref(s1.basis()).unwrap();
        assert_eq!(s1, s2);
        let mut rev = vs.to_vec();
        rev.reverse();
        assert_eq!(rref(&rev).unwrap(), s1);
    }

    #[test]
    fn in_span_examples() {
        let x_a = Mat3::unit(0, 1).flatten();
        let x_b = Mat3::unit(1, 2).flatten();
        let x_ab = Mat3::unit(0, 2).neg().flatten();
        let s = rref(&[x_a.clone(), x_b]).unwrap();
        assert!(!in_span(&x_ab, &s).unwrap());
        let s1 = rref(&[x_a.clone()]).unwrap();
        assert!(in_span(&x_a, &s1).unwrap());
        let bad = CoordVector::zeros(3);
        assert!(matches!(
            in_span(&bad, &s1),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn char_poly_examples() {
        // diag(1,0,-1) -> t^3 - t
        let m = Mat3::diag(
            FieldElement::from_int(1),
            FieldElement::zero(),
            FieldElement::from_int(-1),
        );
        let p = char_poly(&m);
        assert_eq!(
            p.coeffs(),
            &[
                FieldElement::zero(),
                FieldElement::from_int(-1),
                FieldElement::zero(),
                FieldElement::one()
            ]
        );
        // [[0,0,1],[0,0,0],[-1,0,0]] -> t^3 + t
        let m = Mat3::from_ints([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]);
        assert_eq!(
            char_poly(&m).coeffs(),
            &[
                FieldElement::zero(),
                FieldElement::one(),
                FieldElement::zero(),
                FieldElement::one()
            ]
        );
        assert_eq!(
            char_poly(&Mat3::zero()).coeffs(),
            &[
                FieldElement::zero(),
                FieldElement::zero(),
                FieldElement::zero(),
                FieldElement::one()
            ]
        );
    }

    #[test]
    fn min_poly_examples() {
        // I -> t - 1
        let p = min_poly(&Mat3::identity());
        assert_eq!(p.coeffs(), &[FieldElement::from_int(-1), FieldElement::one()]);
        // nilpotent X_alpha -> t^2
        let p = min_poly(&Mat3::unit(0, 1));
        assert_eq!(
            p.coeffs(),
            &[FieldElement::zero(), FieldElement::zero(), FieldElement::one()]
        );
        // diag(1,1,-2) -> t^2 + t - 2
        let m = Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -2]]);
        let p = min_poly(&m);
        assert_eq!(
            p.coeffs(),
            &[
                FieldElement::from_int(-2),
                FieldElement::one(),
                FieldElement::one()
            ]
        );
    }

    fn random_sl3(rng: &mut ChaCha8Rng) -> Mat3 {
        // Product of elementary shears has determinant one.
        let mut g = Mat3::identity();
        for _ in 0..4 {
            let i = rng.gen_range(0..3);
            let mut j = rng.gen_range(0..3);
            if i == j {
                j = (j + 1) % 3;
            }
            let mut e = Mat3::identity();
            e.set(i, j, FieldElement::from_int(rng.gen_range(-2..=2)));
            g = g.mul(&e);
        }
        g
    }

    #[test]
    fn char_poly_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut tried = 0;
        while tried < 200 {
            let m = Mat3::from_fn(|_, _| FieldElement::from_int(rng.gen_range(-2..=2)));
            if m.det().is_zero() {
                continue;
            }
            tried += 1;
            let p = char_poly(&m);
            for _ in 0..20 {
                let g = random_sl3(&mut rng);
                let ginv = g.inv().unwrap();
                assert_eq!(char_poly(&m.conjugate_by(&g, &ginv)), p);
            }
        }
    }

    #[test]
    fn min_poly_divides_char_poly() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let m = Mat3::from_fn(|_, _| FieldElement::from_int(rng.gen_range(-2..=2)));
            let mp = min_poly(&m);
            let cp = char_poly(&m);
            assert!(mp.divides(&cp), "min poly must divide char poly");
        }
    }

    #[test]
    fn nullspace_solves() {
        // x + y = 0 in 3 unknowns -> 2-dimensional solution space.
        let rows = [vec_i(&[1, 1, 0])];
        let ns = nullspace(&rows, 3).unwrap();
        assert_eq!(ns.dim(), 2);
        for b in ns.basis() {
            assert_eq!(&(b.at(0) + b.at(1)), &FieldElement::zero());
        }
    }
}
