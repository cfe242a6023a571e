//! The sl3 layer: the four bases used by the classification, brackets,
//! subalgebra predicates, normalizers, Killing and trace forms, and the
//! eigenvalue filters used for the compact real form.
//!
//! Subalgebras are complex spans inside sl3(C) stored in Chevalley
//! coordinates; the canonical RREF span decides membership and equality
//! while the originally given basis matrices are kept for invariants that
//! are only real-scale invariant.

use crate::exactfield::{rat, FieldElement, Rational};
use crate::linalg3::{
    char_poly, in_span, min_poly, nullspace, reduce_against, rref_in, CoordVector, LinAlgError,
    Mat3, Subspace,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("matrix is not traceless")]
    NotTraceless,
    #[error("subalgebra is not one-dimensional")]
    NotOneDimensional,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FrameKind {
    Chevalley,
    Winternitz,
    Su21A,
    Su3B,
}

impl FrameKind {
    pub fn name(self) -> &'static str {
        match self {
            FrameKind::Chevalley => "chevalley",
            FrameKind::Winternitz => "winternitz",
            FrameKind::Su21A => "su21_A",
            FrameKind::Su3B => "su3_B",
        }
    }
}

/// One of the four bases of sl3(C) used by the tables.
pub struct BasisFrame {
    pub kind: FrameKind,
    pub names: [&'static str; 8],
    pub basis_matrices: [Mat3; 8],
}

fn fe_i() -> FieldElement {
    FieldElement::i()
}

fn unit(i: usize, j: usize) -> Mat3 {
    Mat3::unit(i, j)
}

fn diag_i(d: [i64; 3]) -> Mat3 {
    Mat3::from_ints([[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]])
}

impl BasisFrame {
    pub fn chevalley() -> BasisFrame {
        BasisFrame {
            kind: FrameKind::Chevalley,
            names: ["Ha", "Hb", "Xa", "Xb", "Xab", "Ya", "Yb", "Yab"],
            basis_matrices: [
                diag_i([1, -1, 0]),
                diag_i([0, 1, -1]),
                unit(0, 1),
                unit(1, 2),
                unit(0, 2).neg(),
                unit(1, 0),
                unit(2, 1),
                unit(2, 0).neg(),
            ],
        }
    }

    pub fn winternitz() -> BasisFrame {
        let half = rat(1, 2);
        BasisFrame {
            kind: FrameKind::Winternitz,
            names: ["K1", "K2", "L3", "D", "P1", "P2", "R1", "R2"],
            basis_matrices: [
                diag_i([1, -1, 0]).scale(&FieldElement::from_rational(half.clone())),
                unit(0, 1)
                    .add(&unit(1, 0))
                    .scale(&FieldElement::from_rational(half.clone())),
                unit(1, 0)
                    .sub(&unit(0, 1))
                    .scale(&FieldElement::from_rational(half)),
                diag_i([1, 1, -2]),
                unit(0, 2),
                unit(1, 2),
                unit(2, 0),
                unit(2, 1),
            ],
        }
    }

    pub fn su21_a() -> BasisFrame {
        let i = fe_i();
        BasisFrame {
            kind: FrameKind::Su21A,
            names: ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"],
            basis_matrices: [
                Mat3::diag(i.clone(), -&i, FieldElement::zero()),
                Mat3::diag(FieldElement::zero(), i.clone(), -&i),
                unit(0, 1).sub(&unit(1, 0)),
                unit(0, 1).add(&unit(1, 0)).scale(&i),
                unit(0, 2).add(&unit(2, 0)),
                unit(0, 2).sub(&unit(2, 0)).scale(&i),
                unit(1, 2).add(&unit(2, 1)),
                unit(1, 2).sub(&unit(2, 1)).scale(&i),
            ],
        }
    }

    pub fn su3_b() -> BasisFrame {
        let i = fe_i();
        BasisFrame {
            kind: FrameKind::Su3B,
            names: ["B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8"],
            basis_matrices: [
                unit(0, 1).add(&unit(1, 0)).scale(&i),
                unit(0, 1).sub(&unit(1, 0)),
                unit(0, 2).add(&unit(2, 0)).scale(&i),
                unit(0, 2).sub(&unit(2, 0)),
                unit(1, 2).add(&unit(2, 1)).scale(&i),
                unit(1, 2).sub(&unit(2, 1)),
                Mat3::diag(i.clone(), -&i, FieldElement::zero()),
                Mat3::diag(FieldElement::zero(), i.clone(), -&i),
            ],
        }
    }

    pub fn by_kind(kind: FrameKind) -> BasisFrame {
        match kind {
            FrameKind::Chevalley => Self::chevalley(),
            FrameKind::Winternitz => Self::winternitz(),
            FrameKind::Su21A => Self::su21_a(),
            FrameKind::Su3B => Self::su3_b(),
        }
    }

    /// Expand frame coordinates back into a matrix.
    pub fn expand(&self, coords: &CoordVector) -> Mat3 {
        let mut m = Mat3::zero();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.basis_matrices[k].scale(c));
            }
        }
        m
    }
}

/// The Lie bracket xy − yx.
pub fn bracket(x: &Mat3, y: &Mat3) -> Mat3 {
    x.commutator(y)
}

/// Chevalley coordinates of a traceless matrix (closed form).
pub fn to_chevalley(x: &Mat3) -> Result<CoordVector, LieError> {
    if !x.trace().is_zero() {
        return Err(LieError::NotTraceless);
    }
    Ok(CoordVector::new(vec![
        x.at(0, 0).clone(),
        -x.at(2, 2),
        x.at(0, 1).clone(),
        x.at(1, 2).clone(),
        -x.at(0, 2),
        x.at(1, 0).clone(),
        x.at(2, 1).clone(),
        -x.at(2, 0),
    ]))
}

/// Coordinates of a traceless matrix in an arbitrary frame, by exact solve.
pub fn to_frame(x: &Mat3, f: &BasisFrame) -> Result<CoordVector, LieError> {
    if f.kind == FrameKind::Chevalley {
        return to_chevalley(x);
    }
    if !x.trace().is_zero() {
        return Err(LieError::NotTraceless);
    }
    // Solve sum_k c_k F_k = x over the 9 matrix positions, augmented RREF.
    let target = x.flatten();
    let cols: Vec<CoordVector> = f.basis_matrices.iter().map(|m| m.flatten()).collect();
    let mut aug = Vec::with_capacity(9);
    for r in 0..9 {
        let mut row: Vec<FieldElement> = cols.iter().map(|c| c.at(r).clone()).collect();
        row.push(target.at(r).clone());
        aug.push(CoordVector::new(row));
    }
    let reduced = rref_in(&aug, 9)?;
    let mut sol = vec![FieldElement::zero(); 8];
    for row in reduced.basis() {
        let lead = row.iter().position(|c| !c.is_zero()).unwrap();
        assert!(lead < 8, "frame matrices span the traceless matrices");
        sol[lead] = row.at(8).clone();
    }
    let coords = CoordVector::new(sol);
    debug_assert_eq!(f.expand(&coords), *x);
    Ok(coords)
}

/// A complex span inside sl3(C), stored canonically in Chevalley coordinates.
///
/// `given_basis` keeps the matrices exactly as the table or proof presents
/// them; scale-sensitive invariants read those, membership questions use the
/// canonical span.
#[derive(Clone, PartialEq, Eq)]
pub struct Subalgebra {
    pub label: String,
    pub frame_hint: FrameKind,
    pub given_basis: Vec<Mat3>,
    pub span: Subspace,
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalgebra({}, dim {})", self.label, self.span.dim())
    }
}

impl Subalgebra {
    pub fn from_matrices(
        label: impl Into<String>,
        frame_hint: FrameKind,
        basis: Vec<Mat3>,
    ) -> Result<Subalgebra, LieError> {
        let coords: Result<Vec<CoordVector>, LieError> = basis.iter().map(to_chevalley).collect();
        let span = rref_in(&coords?, 8)?;
        Ok(Subalgebra {
            label: label.into(),
            frame_hint,
            given_basis: basis,
            span,
        })
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Canonical basis as matrices.
    pub fn span_matrices(&self) -> Vec<Mat3> {
        let ch = BasisFrame::chevalley();
        self.span.basis().iter().map(|v| ch.expand(v)).collect()
    }

    pub fn contains(&self, x: &Mat3) -> Result<bool, LieError> {
        Ok(in_span(&to_chevalley(x)?, &self.span)?)
    }

    pub fn same_span(&self, other: &Subalgebra) -> bool {
        self.span == other.span
    }
}

/// Coefficients of `v` on the RREF basis of `s`, when `v` lies in the span.
///
/// RREF rows have 1 at their pivot and 0 at every other pivot, so the
/// coefficients can be read off at the pivot columns and then validated.
pub fn express_in(v: &CoordVector, s: &Subspace) -> Result<Option<Vec<FieldElement>>, LinAlgError> {
    let mut coeffs = Vec::with_capacity(s.dim());
    for b in s.basis() {
        let pivot = b.iter().position(|c| !c.is_zero()).unwrap();
        coeffs.push(v.at(pivot).clone());
    }
    let mut rebuilt = CoordVector::zeros(s.ambient_dim());
    for (c, b) in coeffs.iter().zip(s.basis()) {
        rebuilt = rebuilt.add(&b.scale(c));
    }
    if &rebuilt == v {
        Ok(Some(coeffs))
    } else {
        // Validate the residual really is outside the span.
        debug_assert!(!reduce_against(v, s)?.is_zero());
        Ok(None)
    }
}

/// True iff all pairwise brackets of the span basis lie in the span.
pub fn is_closed(u: &Subalgebra) -> Result<bool, LieError> {
    let mats = u.span_matrices();
    for (i, x) in mats.iter().enumerate() {
        for y in mats.iter().skip(i + 1) {
            if !u.contains(&bracket(x, y))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The normalizer {x in sl3 : [x, u] ⊆ u}, by exact linear solve.
pub fn normalizer(u: &Subalgebra) -> Result<Subspace, LieError> {
    let ch = BasisFrame::chevalley();
    let mats = u.span_matrices();
    let mut rows: Vec<CoordVector> = Vec::new();
    // Unknown x = sum_j c_j e_j; for each basis b of u the residual of
    // [x, b] against u must vanish, giving 8 scalar equations per b.
    for b in &mats {
        let residuals: Vec<CoordVector> = ch
            .basis_matrices
            .iter()
            .map(|e| {
                let w = to_chevalley(&bracket(e, b)).expect("brackets stay traceless");
                reduce_against(&w, &u.span).expect("dimensions agree")
            })
            .collect();
        for coord in 0..8 {
            let row: Vec<FieldElement> =
                residuals.iter().map(|r| r.at(coord).clone()).collect();
            let row = CoordVector::new(row);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    Ok(nullspace(&rows, 8)?)
}

/// Signature of a symmetric Gram matrix with entries in the real subfield,
/// by symmetric Gaussian congruence. Returns (positive, negative, zero).
pub fn real_symmetric_signature(gram: &[Vec<FieldElement>]) -> Result<(usize, usize, usize), LieError> {
    let n = gram.len();
    let mut g: Vec<Vec<FieldElement>> = gram.to_vec();
    for row in &g {
        for e in row {
            if !e.is_real() {
                return Err(LieError::LinAlg(LinAlgError::NotTraceless)); // unreachable for real forms
            }
        }
    }
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut zero = 0usize;
    let mut handled = vec![false; n];
    for _ in 0..n {
        // Pick an unhandled index with nonzero diagonal, creating one from an
        // off-diagonal pair if necessary.
        let mut k = None;
        for i in 0..n {
            if !handled[i] && !g[i][i].is_zero() {
                k = Some(i);
                break;
            }
        }
        if k.is_none() {
            // Look for a nonzero off-diagonal entry among unhandled indices.
            let mut pair = None;
            'outer: for i in 0..n {
                if handled[i] {
                    continue;
                }
                for j in 0..n {
                    if i != j && !handled[j] && !g[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            match pair {
                None => {
                    zero += n - handled.iter().filter(|&&h| h).count();
                    break;
                }
                Some((i, j)) => {
                    // Row/col operation: e_i += e_j makes g[i][i] = 2 g[i][j] != 0.
                    for t in 0..n {
                        let add = g[j][t].clone();
                        g[i][t] = &g[i][t] + &add;
                    }
                    for t in 0..n {
                        let add = g[t][j].clone();
                        g[t][i] = &g[t][i] + &add;
                    }
                    k = Some(i);
                }
            }
        }
        let Some(k) = k else { break };
        let d = g[k][k].clone();
        match d.real_sign().expect("real entries") {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot chosen nonzero"),
        }
        // Clear column/row k against the pivot among unhandled indices, then
        // retire index k.
        let dinv = d.inv().expect("nonzero pivot");
        for i in 0..n {
            if i == k || handled[i] {
                continue;
            }
            let f = &g[i][k] * &dinv;
            if f.is_zero() {
                continue;
            }
            for t in 0..n {
                let sub = &g[k][t] * &f;
                g[i][t] = &g[i][t] - &sub;
            }
            for t in 0..n {
                let sub = &g[t][k] * &f;
                g[t][i] = &g[t][i] - &sub;
            }
        }
        handled[k] = true;
    }
    Ok((pos, neg, zero))
}

/// Structural fingerprint of a subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StructureProfile {
    pub dim: usize,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub killing_rank: usize,
    /// Signature of the intrinsic Killing form (positive, negative, zero);
    /// None when the Gram matrix leaves the real subfield.
    pub killing_signature: Option<(usize, usize, usize)>,
    /// Signature of the ambient trace form tr(xy) restricted to the span;
    /// separates real forms the intrinsic Killing form cannot.
    pub ambient_signature: Option<(usize, usize, usize)>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub is_semisimple: bool,
}

fn span_of_brackets(a: &[Mat3], b: &[Mat3]) -> Result<Subspace, LieError> {
    let mut vecs = Vec::new();
    for x in a {
        for y in b {
            let v = to_chevalley(&bracket(x, y))?;
            if !v.is_zero() {
                vecs.push(v);
            }
        }
    }
    Ok(rref_in(&vecs, 8)?)
}

fn expand_all(s: &Subspace) -> Vec<Mat3> {
    let ch = BasisFrame::chevalley();
    s.basis().iter().map(|v| ch.expand(v)).collect()
}

/// Solve sum_k c_k cols_k = target exactly; None when unsolvable.
fn solve_in_basis(cols: &[CoordVector], target: &CoordVector) -> Option<Vec<FieldElement>> {
    let n = cols.len();
    let ambient = target.len();
    let mut aug = Vec::with_capacity(ambient);
    for r in 0..ambient {
        let mut row: Vec<FieldElement> = cols.iter().map(|c| c.at(r).clone()).collect();
        row.push(target.at(r).clone());
        aug.push(CoordVector::new(row));
    }
    let reduced = rref_in(&aug, n + 1).ok()?;
    let mut sol = vec![FieldElement::zero(); n];
    for row in reduced.basis() {
        let lead = row.iter().position(|c| !c.is_zero()).unwrap();
        if lead == n {
            return None;
        }
        sol[lead] = row.at(n).clone();
    }
    // Validate (covers under-determined layouts).
    let mut rebuilt = CoordVector::zeros(ambient);
    for (c, col) in sol.iter().zip(cols) {
        rebuilt = rebuilt.add(&col.scale(c));
    }
    if &rebuilt == target {
        Some(sol)
    } else {
        None
    }
}

/// Derived and lower-central series, Killing data and the structure flags.
/// Requires a closed span.
///
/// Series dimensions come from the canonical complex span; the Killing and
/// trace Gram matrices are taken over the given basis, which carries the
/// real structure constants when the entry is a real form.
pub fn structure_profile(u: &Subalgebra) -> Result<StructureProfile, LieError> {
    let k = u.dim();
    // Prefer the given basis; fall back to the canonical one when the given
    // matrices are dependent.
    let given_coords: Vec<CoordVector> = u
        .given_basis
        .iter()
        .filter_map(|m| to_chevalley(m).ok())
        .collect();
    let mats: Vec<Mat3> =
        if given_coords.len() == u.given_basis.len() && rref_in(&given_coords, 8)?.dim() == k {
            u.given_basis.clone()
        } else {
            u.span_matrices()
        };
    let mat_coords: Vec<CoordVector> = mats.iter().map(|m| to_chevalley(m).unwrap()).collect();

    let mut derived_dims = vec![k];
    let mut cur = u.span.clone();
    loop {
        let m = expand_all(&cur);
        let next = span_of_brackets(&m, &m)?;
        if next.dim() == cur.dim() {
            break;
        }
        derived_dims.push(next.dim());
        cur = next;
        if cur.dim() == 0 {
            break;
        }
    }
    let is_solvable = *derived_dims.last().unwrap() == 0;

    let mut lower_central_dims = vec![k];
    let mut cur = u.span.clone();
    loop {
        let m = expand_all(&cur);
        let next = span_of_brackets(&mats, &m)?;
        if next.dim() == cur.dim() {
            break;
        }
        lower_central_dims.push(next.dim());
        cur = next;
        if cur.dim() == 0 {
            break;
        }
    }
    let is_nilpotent = *lower_central_dims.last().unwrap() == 0;

    // Intrinsic Killing form: ad over u itself, in the chosen basis.
    let mut ad = Vec::with_capacity(k);
    for x in &mats {
        let mut cols = Vec::with_capacity(k);
        for y in &mats {
            let w = to_chevalley(&bracket(x, y))?;
            let coeffs = solve_in_basis(&mat_coords, &w)
                .expect("u is closed, brackets stay inside");
            cols.push(coeffs);
        }
        // ad_x as a k×k matrix: column j holds coords of [x, b_j].
        ad.push(cols);
    }
    let ad_mul_trace = |a: &Vec<Vec<FieldElement>>, b: &Vec<Vec<FieldElement>>| {
        // tr(A B) with A, B given column-wise: sum_{r,c} A[c][r] * B[r][c].
        let mut acc = FieldElement::zero();
        for r in 0..k {
            for c in 0..k {
                acc += &(&a[c][r] * &b[r][c]);
            }
        }
        acc
    };
    let mut killing: Vec<Vec<FieldElement>> = vec![vec![FieldElement::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = ad_mul_trace(&ad[i], &ad[j]);
            killing[i][j] = v.clone();
            killing[j][i] = v;
        }
    }
    let rows: Vec<CoordVector> = killing
        .iter()
        .map(|r| CoordVector::new(r.clone()))
        .collect();
    let killing_rank = rref_in(&rows, k)?.dim();
    let killing_real = killing.iter().flatten().all(|e| e.is_real());
    let killing_signature = if killing_real {
        Some(real_symmetric_signature(&killing)?)
    } else {
        None
    };
    let is_semisimple = k > 0 && killing_rank == k;

    // Ambient trace form tr(xy) restricted to the span.
    let mut gram: Vec<Vec<FieldElement>> = vec![vec![FieldElement::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = mats[i].mul(&mats[j]).trace();
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let ambient_real = gram.iter().flatten().all(|e| e.is_real());
    let ambient_signature = if ambient_real {
        Some(real_symmetric_signature(&gram)?)
    } else {
        None
    };

    Ok(StructureProfile {
        dim: k,
        derived_dims,
        lower_central_dims,
        killing_rank,
        killing_signature,
        ambient_signature,
        is_solvable,
        is_nilpotent,
        is_semisimple,
    })
}

/// Center {x in u : [x, u] = 0}, as a subspace of Chevalley coordinates.
pub fn center(u: &Subalgebra) -> Result<Subspace, LieError> {
    let mats = u.span_matrices();
    let k = u.dim();
    let mut rows = Vec::new();
    // Unknown x = sum c_i b_i with [x, b_j] = 0 for all j.
    for b in &mats {
        let cols: Vec<CoordVector> = mats
            .iter()
            .map(|bi| to_chevalley(&bracket(bi, b)).expect("traceless"))
            .collect();
        for coord in 0..8 {
            let row: Vec<FieldElement> = cols.iter().map(|c| c.at(coord).clone()).collect();
            let row = CoordVector::new(row);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    let sol = nullspace(&rows, k)?;
    // Map solution coefficients back into sl3 coordinates.
    let mut vecs = Vec::new();
    for c in sol.basis() {
        let mut v = CoordVector::zeros(8);
        for (coef, b) in c.iter().zip(u.span.basis()) {
            v = v.add(&b.scale(coef));
        }
        vecs.push(v);
    }
    Ok(rref_in(&vecs, 8)?)
}

/// Squarefree minimal polynomial, i.e. the matrix is diagonalizable.
pub fn is_semisimple_matrix(m: &Mat3) -> bool {
    min_poly(m).is_squarefree()
}

/// Characteristic data (p, q) of a traceless matrix: char = t³ + p t + q.
pub fn traceless_char_pq(m: &Mat3) -> Result<(FieldElement, FieldElement), LieError> {
    if !m.trace().is_zero() {
        return Err(LieError::NotTraceless);
    }
    let cp = char_poly(m);
    debug_assert!(cp.coeff(2).is_zero());
    Ok((cp.coeff(1), cp.coeff(0)))
}

/// True iff the matrix is semisimple with purely imaginary spectrum.
///
/// For traceless M with char poly t³ + pt + q this requires p real, q purely
/// imaginary, and the real cubic s³ − p·s − Im(q) (from substituting t = is)
/// to have three real roots, decided by the sign of its discriminant.
pub fn has_imaginary_spectrum(m: &Mat3) -> Result<bool, LieError> {
    let (p, q) = traceless_char_pq(m)?;
    if !p.is_real() || !q.is_imaginary() {
        return Ok(false);
    }
    let qt = q.imag_part();
    // Discriminant of s³ - p s - qt is 4p³ - 27 qt².
    let four_p3 = p.pow(3).scale(&rat(4, 1));
    let v27 = FieldElement::from_int(27);
    let disc = &four_p3 - &(&(&qt * &qt) * &v27);
    Ok(disc.real_sign().expect("real discriminant") >= 0)
}

/// True iff every given basis matrix is semisimple with all-imaginary
/// spectrum: the literal per-matrix test behind the compact-form reduction.
pub fn su3_candidate(u: &Subalgebra) -> Result<bool, LieError> {
    for m in &u.given_basis {
        if !is_semisimple_matrix(m) {
            return Ok(false);
        }
        if !has_imaginary_spectrum(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the spectrum of a traceless semisimple matrix lies on a line
/// through the origin, i.e. some complex rescaling has purely imaginary
/// (equivalently real) eigenvalues.
pub fn has_collinear_spectrum(m: &Mat3) -> Result<bool, LieError> {
    let (p, q) = traceless_char_pq(m)?;
    if q.is_zero() {
        // Roots {0, ±s}: always collinear (zero matrix handled by caller).
        return Ok(true);
    }
    // j = p³/q² must be real with j ≤ −27/4 for three collinear roots.
    let j = p.pow(3).div(&(&q * &q)).expect("q nonzero");
    if !j.is_real() {
        return Ok(false);
    }
    let bound = FieldElement::from_rational(rat(-27, 4));
    Ok((&bound - &j).real_sign().expect("real") >= 0)
}

/// The reduction filter for the compact form, applied to a complex
/// representative: true iff the subalgebra is reductive in sl3(C) and its
/// center admits a basis of semisimple elements whose spectra can be rotated
/// onto the imaginary axis.
pub fn su3_descends(u: &Subalgebra) -> Result<bool, LieError> {
    let mats = u.span_matrices();
    let derived = span_of_brackets(&mats, &mats)?;
    let z = center(u)?;
    if derived.dim() + z.dim() != u.dim() {
        return Ok(false);
    }
    let mut both: Vec<CoordVector> = derived.basis().to_vec();
    both.extend(z.basis().to_vec());
    if rref_in(&both, 8)?.dim() != u.dim() {
        return Ok(false);
    }
    if derived.dim() > 0 {
        let d_alg = Subalgebra {
            label: format!("[{0},{0}]", u.label),
            frame_hint: u.frame_hint,
            given_basis: expand_all(&derived),
            span: derived.clone(),
        };
        if !is_closed(&d_alg)? {
            return Ok(false);
        }
        let profile = structure_profile(&d_alg)?;
        if !profile.is_semisimple {
            return Ok(false);
        }
    }
    let ch = BasisFrame::chevalley();
    for v in z.basis() {
        let m = ch.expand(v);
        if !is_semisimple_matrix(&m) || !has_collinear_spectrum(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale-and-conjugation invariant of a one-dimensional span.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ProjectiveClass {
    QNonzero,
    QZeroPNonzero,
    Nilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProjectiveInvariant {
    pub class: ProjectiveClass,
    /// p³/q² when q ≠ 0; invariant under arbitrary complex rescaling.
    #[serde(serialize_with = "crate::serialize_opt_fe")]
    pub j: Option<FieldElement>,
    /// Sign of p when q = 0 and p is real; preserved by real rescaling only.
    pub real_sign_p: Option<i32>,
}

/// Invariant of a 1-dimensional subalgebra, from the given generator.
pub fn projective_invariant(u: &Subalgebra) -> Result<ProjectiveInvariant, LieError> {
    if u.dim() != 1 || u.given_basis.len() != 1 {
        return Err(LieError::NotOneDimensional);
    }
    projective_invariant_of(&u.given_basis[0])
}

pub fn projective_invariant_of(m: &Mat3) -> Result<ProjectiveInvariant, LieError> {
    let (p, q) = traceless_char_pq(m)?;
    if !q.is_zero() {
        let j = p.pow(3).div(&(&q * &q)).expect("q nonzero");
        Ok(ProjectiveInvariant {
            class: ProjectiveClass::QNonzero,
            j: Some(j),
            real_sign_p: None,
        })
    } else if !p.is_zero() {
        let real_sign_p = if p.is_real() {
            Some(p.real_sign().expect("real"))
        } else {
            None
        };
        Ok(ProjectiveInvariant {
            class: ProjectiveClass::QZeroPNonzero,
            j: None,
            real_sign_p,
        })
    } else {
        Ok(ProjectiveInvariant {
            class: ProjectiveClass::Nilpotent,
            j: None,
            real_sign_p: None,
        })
    }
}

/// Equality of projective invariants at the complex level (class and j only).
pub fn projective_invariant_complex_eq(a: &ProjectiveInvariant, b: &ProjectiveInvariant) -> bool {
    a.class == b.class && a.j == b.j
}

pub fn scale_rational(m: &Mat3, r: Rational) -> Mat3 {
    m.scale(&FieldElement::from_rational(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ch() -> BasisFrame {
        BasisFrame::chevalley()
    }

    fn gen_mat(name: &str) -> Mat3 {
        let f = ch();
        let idx = f.names.iter().position(|n| *n == name).unwrap();
        f.basis_matrices[idx].clone()
    }

    fn alg(label: &str, names: &[&str]) -> Subalgebra {
        Subalgebra::from_matrices(label, FrameKind::Chevalley, names.iter().map(|n| gen_mat(n)).collect())
            .unwrap()
    }

    #[test]
    fn frames_are_bases_of_traceless_matrices() {
        for kind in [
            FrameKind::Chevalley,
            FrameKind::Winternitz,
            FrameKind::Su21A,
            FrameKind::Su3B,
        ] {
            let f = BasisFrame::by_kind(kind);
            let flat: Vec<CoordVector> = f.basis_matrices.iter().map(|m| m.flatten()).collect();
            assert_eq!(rref_in(&flat, 9).unwrap().dim(), 8, "{:?}", kind);
            for m in &f.basis_matrices {
                assert!(m.trace().is_zero(), "{:?} has a non-traceless member", kind);
            }
        }
    }

    #[test]
    fn frame_conversion_roundtrip() {
        for kind in [
            FrameKind::Chevalley,
            FrameKind::Winternitz,
            FrameKind::Su21A,
            FrameKind::Su3B,
        ] {
            let f = BasisFrame::by_kind(kind);
            for src_kind in [FrameKind::Chevalley, FrameKind::Su21A] {
                let src = BasisFrame::by_kind(src_kind);
                for m in &src.basis_matrices {
                    let coords = to_frame(m, &f).unwrap();
                    assert_eq!(f.expand(&coords), *m);
                }
            }
        }
    }

    #[test]
    fn bracket_relations() {
        let (xa, ya, ha) = (gen_mat("Xa"), gen_mat("Ya"), gen_mat("Ha"));
        assert_eq!(bracket(&xa, &ya), ha);
        assert_eq!(bracket(&ha, &xa), xa.scale(&FieldElement::from_int(2)));
        assert!(bracket(&xa, &xa).is_zero());
    }

    #[test]
    fn jacobi_identity_for_all_chevalley_triples() {
        let f = ch();
        for x in &f.basis_matrices {
            for y in &f.basis_matrices {
                for z in &f.basis_matrices {
                    let s = bracket(&bracket(x, y), z)
                        .add(&bracket(&bracket(y, z), x))
                        .add(&bracket(&bracket(z, x), y));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn to_frame_examples() {
        // X_alpha = K2 - L3 in the Winternitz frame.
        let w = BasisFrame::winternitz();
        let coords = to_frame(&gen_mat("Xa"), &w).unwrap();
        let expect: Vec<FieldElement> = [0, 1, -1, 0, 0, 0, 0, 0]
            .iter()
            .map(|&k| FieldElement::from_int(k))
            .collect();
        assert_eq!(coords, CoordVector::new(expect));
        // X_alpha = (1/2) A3 - (1/2) i A4 in the su(2,1) frame.
        let a = BasisFrame::su21_a();
        let coords = to_frame(&gen_mat("Xa"), &a).unwrap();
        assert_eq!(coords.at(2), &FieldElement::from_rational(rat(1, 2)));
        let minus_half_i = FieldElement::basis(4, rat(-1, 2));
        assert_eq!(coords.at(3), &minus_half_i);
        // H_alpha is a unit coordinate in its own frame.
        let coords = to_frame(&gen_mat("Ha"), &ch()).unwrap();
        assert_eq!(coords.at(0), &FieldElement::one());
        assert!(coords.iter().skip(1).all(|c| c.is_zero()));
    }

    #[test]
    fn closure_examples() {
        assert!(is_closed(&alg("n", &["Xa", "Xb", "Xab"])).unwrap());
        assert!(!is_closed(&alg("bad", &["Xa", "Ya"])).unwrap());
        assert!(is_closed(&alg("cartan", &["Ha", "Hb"])).unwrap());
    }

    #[test]
    fn normalizer_dims() {
        assert_eq!(normalizer(&alg("xa", &["Xa"])).unwrap().dim(), 5);
        assert_eq!(normalizer(&alg("xab", &["Xab"])).unwrap().dim(), 5);
        let all = alg(
            "sl3",
            &["Ha", "Hb", "Xa", "Xb", "Xab", "Ya", "Yb", "Yab"],
        );
        assert_eq!(normalizer(&all).unwrap().dim(), 8);
    }

    #[test]
    fn normalizer_is_closed_and_contains() {
        for names in [
            vec!["Xa"],
            vec!["Ha", "Hb"],
            vec!["Xa", "Xb", "Xab"],
            vec!["Xab", "Yab", "Ha", "Hb"],
        ] {
            let u = alg("u", &names);
            let n = normalizer(&u).unwrap();
            let ch = BasisFrame::chevalley();
            let n_alg = Subalgebra {
                label: "n".into(),
                frame_hint: FrameKind::Chevalley,
                given_basis: n.basis().iter().map(|v| ch.expand(v)).collect(),
                span: n.clone(),
            };
            assert!(is_closed(&n_alg).unwrap());
            for b in u.span.basis() {
                assert!(in_span(b, &n).unwrap());
            }
        }
    }

    #[test]
    fn structure_profile_examples() {
        // sl2-triple: semisimple with split signature (2,1,0).
        let u = alg("sl2", &["Xab", "Yab"]);
        let mut basis = u.given_basis.clone();
        basis.push(gen_mat("Ha").add(&gen_mat("Hb")));
        let u = Subalgebra::from_matrices("sl2", FrameKind::Chevalley, basis).unwrap();
        let p = structure_profile(&u).unwrap();
        assert!(p.is_semisimple);
        assert_eq!(p.killing_signature, Some((2, 1, 0)));
        // Heisenberg: nilpotent with derived dims (3,1,0).
        let u = alg("heis", &["Xa", "Xb", "Xab"]);
        let p = structure_profile(&u).unwrap();
        assert!(p.is_nilpotent);
        assert_eq!(p.derived_dims, vec![3, 1, 0]);
        // Compact su(2) copy in the su(3) frame: negative definite.
        let b = BasisFrame::su3_b();
        let m1 = b.basis_matrices[0].add(&b.basis_matrices[4]); // B1+B5
        let m2 = b.basis_matrices[1].add(&b.basis_matrices[5]); // B2+B6
        let m3 = b.basis_matrices[6].add(&b.basis_matrices[7]); // B7+B8
        let u = Subalgebra::from_matrices("w32", FrameKind::Su3B, vec![m1, m2, m3]).unwrap();
        let p = structure_profile(&u).unwrap();
        assert_eq!(p.killing_signature, Some((0, 3, 0)));
        assert!(p.is_semisimple);
    }

    #[test]
    fn su3_candidate_examples() {
        // <H_alpha + 2 H_beta>: eigenvalues 1, 2, -3 are real, not imaginary.
        let m = gen_mat("Ha").add(&gen_mat("Hb").scale(&FieldElement::from_int(2)));
        let u = Subalgebra::from_matrices("h2", FrameKind::Chevalley, vec![m]).unwrap();
        assert!(!su3_candidate(&u).unwrap());
        // <B7 + B8> has spectrum {i, 0, -i}.
        let b = BasisFrame::su3_b();
        let m = b.basis_matrices[6].add(&b.basis_matrices[7]);
        let u = Subalgebra::from_matrices("w1", FrameKind::Su3B, vec![m]).unwrap();
        assert!(su3_candidate(&u).unwrap());
        // Nilpotent generator: min poly t² is not squarefree.
        let u = alg("xa", &["Xa"]);
        assert!(!su3_candidate(&u).unwrap());
    }

    #[test]
    fn su3_descends_examples() {
        // Diagonal family with real parameter descends.
        let m = gen_mat("Ha").add(&gen_mat("Hb").scale(&FieldElement::from_int(2)));
        let u = Subalgebra::from_matrices("h2", FrameKind::Chevalley, vec![m]).unwrap();
        assert!(su3_descends(&u).unwrap());
        // Non-real parameter does not.
        let m = gen_mat("Ha").add(&gen_mat("Hb").scale(&FieldElement::i()));
        let u = Subalgebra::from_matrices("hi", FrameKind::Chevalley, vec![m]).unwrap();
        assert!(!su3_descends(&u).unwrap());
        // Cartan and the sl2-triple descend; nilpotent spans don't.
        assert!(su3_descends(&alg("cartan", &["Ha", "Hb"])).unwrap());
        let mut basis = vec![gen_mat("Xab"), gen_mat("Yab")];
        basis.push(gen_mat("Ha").add(&gen_mat("Hb")));
        let u = Subalgebra::from_matrices("sl2", FrameKind::Chevalley, basis).unwrap();
        assert!(su3_descends(&u).unwrap());
        assert!(!su3_descends(&alg("nil", &["Xa", "Xb", "Xab"])).unwrap());
        assert!(!su3_descends(&alg("ab", &["Xa", "Yb"])).unwrap());
    }

    #[test]
    fn projective_invariant_examples() {
        // u_{1,5} = <H_alpha + H_beta>: char t³ - t, so p = -1.
        let m = gen_mat("Ha").add(&gen_mat("Hb"));
        let u = Subalgebra::from_matrices("u15", FrameKind::Chevalley, vec![m]).unwrap();
        let inv = projective_invariant(&u).unwrap();
        assert_eq!(inv.class, ProjectiveClass::QZeroPNonzero);
        assert_eq!(inv.real_sign_p, Some(-1));
        // u_{1,6} = <-X_{a+b} + Y_{a+b}>: char t³ + t, so p = +1.
        let m = gen_mat("Xab").neg().add(&gen_mat("Yab"));
        let u = Subalgebra::from_matrices("u16", FrameKind::Chevalley, vec![m]).unwrap();
        let inv = projective_invariant(&u).unwrap();
        assert_eq!(inv.class, ProjectiveClass::QZeroPNonzero);
        assert_eq!(inv.real_sign_p, Some(1));
        // Nilpotent class.
        let u = alg("xa", &["Xa"]);
        assert_eq!(
            projective_invariant(&u).unwrap().class,
            ProjectiveClass::Nilpotent
        );
    }

    #[test]
    fn projective_invariant_is_transport_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let gens: Vec<Mat3> = vec![
            gen_mat("Ha").add(&gen_mat("Hb").scale(&FieldElement::from_int(3))),
            gen_mat("Xa").add(&gen_mat("Ha")),
            gen_mat("Xa"),
        ];
        for m in gens {
            let base = projective_invariant_of(&m).unwrap();
            for _ in 0..50 {
                let mut g = Mat3::identity();
                for _ in 0..5 {
                    let i = rng.gen_range(0..3);
                    let mut j = rng.gen_range(0..3);
                    if i == j {
                        j = (j + 1) % 3;
                    }
                    let mut e = Mat3::identity();
                    e.set(i, j, FieldElement::from_int(rng.gen_range(-2..=2)));
                    g = g.mul(&e);
                }
                let conj = m.conjugate_by(&g, &g.inv().unwrap());
                let there = projective_invariant_of(&conj).unwrap();
                assert!(projective_invariant_complex_eq(&base, &there));
            }
        }
    }

    #[test]
    fn traceless_guard() {
        let m = Mat3::identity();
        assert_eq!(to_chevalley(&m).unwrap_err(), LieError::NotTraceless);
        assert!(matches!(
            to_frame(&m, &BasisFrame::winternitz()),
            Err(LieError::NotTraceless)
        ));
    }

    #[test]
    fn ambient_signature_separates_cartans() {
        let split = alg("u25", &["Ha", "Hb"]);
        let p1 = structure_profile(&split).unwrap();
        assert_eq!(p1.ambient_signature, Some((2, 0, 0)));
        let m1 = gen_mat("Xab").neg().add(&gen_mat("Yab"));
        let m2 = gen_mat("Ha").sub(&gen_mat("Hb"));
        let mixed = Subalgebra::from_matrices("u26", FrameKind::Chevalley, vec![m1, m2]).unwrap();
        let p2 = structure_profile(&mixed).unwrap();
        assert_eq!(p2.ambient_signature, Some((1, 1, 0)));
    }
}
