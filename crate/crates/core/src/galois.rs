//! Galois cohomology for Γ = Gal(C/R) acting through the three conjugations
//! of SL3(C): cocycle and twist verification, transport of subalgebras,
//! extraction of real bases, brute-force H¹ of finite matrix groups, torus
//! H¹ by rule, and the fiber assembly for non-connected stabilizers.

use crate::exactfield::FieldElement;
use crate::liecore::{to_chevalley, BasisFrame, FrameKind, LieError, Subalgebra};
use crate::linalg3::{nullspace, rref_in, CoordVector, LinAlgError, Mat3, Subspace};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("matrix is not in SL3 (determinant must be 1)")]
    NotInGroup,
    #[error("subalgebra is not stable under the conjugation")]
    NotSigmaStable,
    #[error("finite group data is not closed: {0}")]
    NotClosed(String),
    #[error("bad lift for component {0}")]
    BadLift(usize),
    #[error("unsupported torus pattern")]
    UnknownPattern,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ConjugationKind {
    Sl3r,
    Su3,
    Su21,
}

impl ConjugationKind {
    pub fn name(self) -> &'static str {
        match self {
            ConjugationKind::Sl3r => "sl3r",
            ConjugationKind::Su3 => "su3",
            ConjugationKind::Su21 => "su21",
        }
    }
}

/// One of the three conjugations σ of SL3(C) and sl3(C) whose fixed points
/// are SL3(R), SU(3) and SU(2,1) with their Lie algebras.
#[derive(Clone)]
pub struct Conjugation {
    pub kind: ConjugationKind,
    /// The Hermitian form matrix: identity except for the su(2,1) case,
    /// where it is diag(1, 1, -1).
    pub n: Mat3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Group,
    Algebra,
}

impl Conjugation {
    pub fn new(kind: ConjugationKind) -> Conjugation {
        let n = match kind {
            ConjugationKind::Su21 => Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -1]]),
            _ => Mat3::identity(),
        };
        Conjugation { kind, n }
    }

    /// Group-level σ; requires determinant 1.
    pub fn apply_group(&self, g: &Mat3) -> Result<Mat3, GaloisError> {
        if !g.det().is_one() {
            return Err(GaloisError::NotInGroup);
        }
        Ok(self.apply_group_unchecked(g))
    }

    fn apply_group_unchecked(&self, g: &Mat3) -> Mat3 {
        let gbar = g.conj_entries();
        match self.kind {
            ConjugationKind::Sl3r => gbar,
            ConjugationKind::Su3 => gbar.inv().expect("det 1").transpose(),
            ConjugationKind::Su21 => {
                let it = gbar.inv().expect("det 1").transpose();
                self.n.mul(&it).mul(&self.n)
            }
        }
    }

    /// Algebra-level σ (the differential of the group map).
    pub fn apply_algebra(&self, x: &Mat3) -> Mat3 {
        let xbar = x.conj_entries();
        match self.kind {
            ConjugationKind::Sl3r => xbar,
            ConjugationKind::Su3 => xbar.transpose().neg(),
            ConjugationKind::Su21 => self.n.mul(&xbar.transpose()).mul(&self.n).neg(),
        }
    }

    pub fn apply(&self, x: &Mat3, level: Level) -> Result<Mat3, GaloisError> {
        match level {
            Level::Group => self.apply_group(x),
            Level::Algebra => Ok(self.apply_algebra(x)),
        }
    }

    /// Image of a subalgebra under the algebra-level σ.
    pub fn apply_subalgebra(&self, u: &Subalgebra) -> Result<Subalgebra, GaloisError> {
        let basis: Vec<Mat3> = u.given_basis.iter().map(|m| self.apply_algebra(m)).collect();
        Ok(Subalgebra::from_matrices(
            format!("sigma({})", u.label),
            u.frame_hint,
            basis,
        )?)
    }

    /// How σ acts on a diagonal entry: +1 for entrywise conjugation, −1 for
    /// conjugate-inverse (the form matrix never permutes the diagonal).
    pub fn diag_exponent_sign(&self) -> i64 {
        match self.kind {
            ConjugationKind::Sl3r => 1,
            ConjugationKind::Su3 | ConjugationKind::Su21 => -1,
        }
    }
}

/// g σ(g) = 1, exactly.
pub fn is_cocycle(c: &Conjugation, g: &Mat3) -> Result<bool, GaloisError> {
    let s = c.apply_group(g)?;
    Ok(g.mul(&s) == Mat3::identity())
}

/// g1⁻¹ σ(g1) = g0, exactly.
pub fn verify_twist(c: &Conjugation, g1: &Mat3, g0: &Mat3) -> Result<bool, GaloisError> {
    if !g0.det().is_one() {
        return Err(GaloisError::NotInGroup);
    }
    let s = c.apply_group(g1)?;
    let g1inv = g1.inv().map_err(|_| GaloisError::NotInGroup)?;
    Ok(g1inv.mul(&s) == *g0)
}

/// g · u = g u g⁻¹ on subalgebras; preserves closure.
pub fn transport(g: &Mat3, u: &Subalgebra) -> Result<Subalgebra, GaloisError> {
    if !g.det().is_one() {
        return Err(GaloisError::NotInGroup);
    }
    let ginv = g.inv().expect("det 1");
    let basis: Vec<Mat3> = u
        .given_basis
        .iter()
        .map(|m| m.conjugate_by(g, &ginv))
        .collect();
    Ok(Subalgebra::from_matrices(
        format!("g.{}", u.label),
        u.frame_hint,
        basis,
    )?)
}

/// A basis of the σ-fixed points of a σ-stable subalgebra.
///
/// The span is viewed as a rational vector space (8 rational coordinates per
/// complex coefficient) and σ(x) = x is solved exactly; the output has real
/// dimension equal to the complex dimension of the span.
pub fn fixed_real_basis(c: &Conjugation, u: &Subalgebra) -> Result<Vec<Mat3>, GaloisError> {
    let sigma_u = c.apply_subalgebra(u)?;
    if !sigma_u.same_span(u) {
        return Err(GaloisError::NotSigmaStable);
    }
    let mats = u.span_matrices();
    let k = mats.len();
    // Unknowns r_{i,t} rational: x = sum r_{i,t} beta_t b_i with beta_t the
    // 8 basis elements of the field. sigma is conjugate-linear, so
    // x - sigma(x) = sum r_{i,t} (beta_t b_i - conj(beta_t) sigma(b_i)).
    let mut deltas: Vec<Mat3> = Vec::with_capacity(8 * k);
    for b in &mats {
        let sb = c.apply_algebra(b);
        for t in 0..8 {
            let beta = FieldElement::basis(t, crate::exactfield::rint(1));
            let d = b.scale(&beta).sub(&sb.scale(&beta.conj()));
            deltas.push(d);
        }
    }
    let unknowns = 8 * k;
    let mut rows: Vec<CoordVector> = Vec::new();
    for pos in 0..9 {
        let (pi, pj) = (pos / 3, pos % 3);
        for coord in 0..8 {
            let row: Vec<FieldElement> = deltas
                .iter()
                .map(|d| FieldElement::from_rational(d.at(pi, pj).coords()[coord].clone()))
                .collect();
            let row = CoordVector::new(row);
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    let sols = nullspace(&rows, unknowns)?;
    let mut out = Vec::with_capacity(sols.dim());
    for r in sols.basis() {
        let mut x = Mat3::zero();
        for (idx, coeff) in r.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (i, t) = (idx / 8, idx % 8);
            let beta = FieldElement::basis(t, crate::exactfield::rint(1));
            x = x.add(&mats[i].scale(&(&beta * coeff)));
        }
        if !x.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Real-span equality of two sets of σ-fixed matrices.
///
/// R-independent vectors of a real form are C-independent, so for
/// elementwise-fixed generators the real spans agree exactly when the
/// complex spans do.
pub fn real_span_equal(
    c: &Conjugation,
    a: &[Mat3],
    b: &[Mat3],
) -> Result<bool, GaloisError> {
    for m in a.iter().chain(b.iter()) {
        if c.apply_algebra(m) != *m {
            return Ok(false);
        }
    }
    let ca: Vec<CoordVector> = a
        .iter()
        .map(|m| to_chevalley(m).map_err(GaloisError::from))
        .collect::<Result<_, _>>()?;
    let cb: Vec<CoordVector> = b
        .iter()
        .map(|m| to_chevalley(m).map_err(GaloisError::from))
        .collect::<Result<_, _>>()?;
    Ok(rref_in(&ca, 8)? == rref_in(&cb, 8)?)
}

/// A finite matrix group with an explicit σ-action, given as index maps.
#[derive(Clone)]
pub struct FiniteGroupData {
    pub elements: Vec<Mat3>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    pub sigma_images: Vec<usize>,
}

impl FiniteGroupData {
    /// Validates closure under multiplication, inverses, the identity, and
    /// that σ is an involutive automorphism of the element set.
    pub fn new(elements: Vec<Mat3>, sigma_images: Vec<usize>) -> Result<Self, GaloisError> {
        let n = elements.len();
        if sigma_images.len() != n {
            return Err(GaloisError::NotClosed("sigma map size mismatch".into()));
        }
        let index_of = |m: &Mat3| elements.iter().position(|e| e == m);
        let identity = index_of(&Mat3::identity())
            .ok_or_else(|| GaloisError::NotClosed("missing identity".into()))?;
        let mut mul = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].mul(&elements[j]);
                mul[i][j] = index_of(&p)
                    .ok_or_else(|| GaloisError::NotClosed(format!("product {}x{} escapes", i, j)))?;
            }
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            inv[i] = (0..n)
                .find(|&j| mul[i][j] == identity)
                .ok_or_else(|| GaloisError::NotClosed(format!("no inverse for {}", i)))?;
        }
        for i in 0..n {
            let si = sigma_images[i];
            if si >= n || sigma_images[si] != i {
                return Err(GaloisError::NotClosed("sigma is not an involution".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if sigma_images[mul[i][j]] != mul[sigma_images[i]][sigma_images[j]] {
                    return Err(GaloisError::NotClosed("sigma is not multiplicative".into()));
                }
            }
        }
        Ok(FiniteGroupData {
            elements,
            mul,
            inv,
            identity,
            sigma_images,
        })
    }

    /// Builds the σ-action by applying the matrix-level conjugation; the
    /// image set must coincide with the element set.
    pub fn with_matrix_sigma(elements: Vec<Mat3>, c: &Conjugation) -> Result<Self, GaloisError> {
        let mut sigma_images = Vec::with_capacity(elements.len());
        for e in &elements {
            let s = c.apply_group(e)?;
            let idx = elements
                .iter()
                .position(|m| m == &s)
                .ok_or_else(|| GaloisError::NotClosed("sigma image escapes the set".into()))?;
            sigma_images.push(idx);
        }
        Self::new(elements, sigma_images)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn identity_idx(&self) -> usize {
        self.identity
    }
}

/// A set of H¹ class representatives. `trusted` flags classes whose
/// (non)triviality in H¹(SL3(C)) is imported from an external computation
/// rather than recomputed here.
#[derive(Clone, Debug)]
pub struct H1Classes {
    pub representatives: Vec<Mat3>,
    pub trusted: Vec<bool>,
}

impl H1Classes {
    pub fn computed(representatives: Vec<Mat3>) -> Self {
        let trusted = vec![false; representatives.len()];
        H1Classes {
            representatives,
            trusted,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Brute-force H¹ of a finite group: enumerate cocycles g σ(g) = 1 and fold
/// them by g ~ h⁻¹ g σ(h) over the whole group.
pub fn h1_finite(f: &FiniteGroupData) -> Result<H1Classes, GaloisError> {
    let n = f.len();
    let cocycles: Vec<usize> = (0..n)
        .filter(|&g| f.mul_idx(g, f.sigma_images[g]) == f.identity_idx())
        .collect();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut reps = Vec::new();
    for &g in &cocycles {
        if class_of[g].is_some() {
            continue;
        }
        let class_id = reps.len();
        reps.push(g);
        for h in 0..n {
            let e = f.mul_idx(f.inv_idx(h), f.mul_idx(g, f.sigma_images[h]));
            class_of[e] = Some(class_id);
        }
    }
    Ok(H1Classes::computed(
        reps.iter().map(|&g| f.elements[g].clone()).collect(),
    ))
}

/// Indices of H¹ class representatives inside the finite group (same
/// enumeration order as [`h1_finite`]), plus the class id of each cocycle.
fn h1_finite_indexed(f: &FiniteGroupData) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = f.len();
    let cocycles: Vec<usize> = (0..n)
        .filter(|&g| f.mul_idx(g, f.sigma_images[g]) == f.identity_idx())
        .collect();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut reps = Vec::new();
    for &g in &cocycles {
        if class_of[g].is_some() {
            continue;
        }
        let class_id = reps.len();
        reps.push(g);
        for h in 0..n {
            let e = f.mul_idx(f.inv_idx(h), f.mul_idx(g, f.sigma_images[h]));
            class_of[e] = Some(class_id);
        }
    }
    (reps, class_of)
}

/// Diagonal torus parametrization: χ(s, t) has diagonal entries
/// s^{e[i][0]} · t^{e[i][1]}. One-dimensional tori use a zero second column.
#[derive(Clone, Debug)]
pub struct DiagEmbedding {
    pub dim: usize,
    pub exponents: [[i64; 2]; 3],
}

impl DiagEmbedding {
    /// Evaluate at a sign vector (entries 0/1 standing for +1/−1).
    pub fn eval_signs(&self, eps: [u8; 2]) -> Mat3 {
        let mut d = [FieldElement::one(), FieldElement::one(), FieldElement::one()];
        for (i, di) in d.iter_mut().enumerate() {
            let mut parity = 0i64;
            for t in 0..self.dim {
                parity += self.exponents[i][t] * i64::from(eps[t]);
            }
            if parity.rem_euclid(2) == 1 {
                *di = FieldElement::from_int(-1);
            }
        }
        let [d0, d1, d2] = d;
        Mat3::diag(d0, d1, d2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaPattern {
    Conjugate,
    ConjugateInverse,
    SwapConjugate,
    SwapConjugateInverse,
}

/// σ-action pattern of a diagonalizable group, keying into the closed-form
/// H¹ rules for one- and two-dimensional tori.
#[derive(Clone, Debug)]
pub struct TorusDescriptor {
    pub dim: usize,
    pub pattern: SigmaPattern,
    pub embedding: DiagEmbedding,
}

impl SigmaPattern {
    fn involution_matrix(self, dim: usize) -> Result<[[i64; 2]; 2], GaloisError> {
        match (self, dim) {
            (SigmaPattern::Conjugate, _) => Ok([[1, 0], [0, 1]]),
            (SigmaPattern::ConjugateInverse, _) => Ok([[-1, 0], [0, -1]]),
            (SigmaPattern::SwapConjugate, 2) => Ok([[0, 1], [1, 0]]),
            (SigmaPattern::SwapConjugateInverse, 2) => Ok([[0, -1], [-1, 0]]),
            _ => Err(GaloisError::UnknownPattern),
        }
    }
}

/// Classification of H¹ for a torus whose σ acts on the cocharacter lattice
/// by an integer involution.
#[derive(Clone, Debug)]
enum TorusH1 {
    /// Trivial cohomology.
    One,
    /// H¹ = (Z/2)^dim: every sign vector its own class.
    Signs,
    /// H¹ = Z/2, read off through a unimodular change of basis.
    Two { u_inv_mod2: [[u8; 2]; 2] },
}

#[derive(Clone, Debug)]
pub struct TorusInvolution {
    dim: usize,
    kind: TorusH1,
}

fn primitive_kernel_vec(b: [[i64; 2]; 2]) -> Option<[i64; 2]> {
    // Kernel direction of a rank-1 integer 2x2 matrix.
    let cands = [
        [b[0][1], -b[0][0]],
        [b[1][1], -b[1][0]],
    ];
    for v in cands {
        if v != [0, 0] {
            let g = gcd64(v[0].abs(), v[1].abs());
            let w = [v[0] / g, v[1] / g];
            // Confirm b·w = 0.
            if b[0][0] * w[0] + b[0][1] * w[1] == 0 && b[1][0] * w[0] + b[1][1] * w[1] == 0 {
                return Some(w);
            }
        }
    }
    None
}

fn gcd64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd64(b, a % b)
    }
}

impl TorusInvolution {
    /// From an integer involution on the cocharacter lattice Z^dim.
    pub fn classify(dim: usize, a: [[i64; 2]; 2]) -> Result<TorusInvolution, GaloisError> {
        let kind = if dim == 1 {
            match a[0][0] {
                1 => TorusH1::One,
                -1 => TorusH1::Signs,
                _ => return Err(GaloisError::UnknownPattern),
            }
        } else {
            let id = [[1, 0], [0, 1]];
            let neg = [[-1, 0], [0, -1]];
            if a == id {
                TorusH1::One
            } else if a == neg {
                TorusH1::Signs
            } else {
                // Involution with both eigenvalues: split or regular lattice.
                let aminus = [[a[0][0] - 1, a[0][1]], [a[1][0], a[1][1] - 1]];
                let aplus = [[a[0][0] + 1, a[0][1]], [a[1][0], a[1][1] + 1]];
                let fplus = primitive_kernel_vec(aminus).ok_or(GaloisError::UnknownPattern)?;
                let fminus = primitive_kernel_vec(aplus).ok_or(GaloisError::UnknownPattern)?;
                let det = fplus[0] * fminus[1] - fplus[1] * fminus[0];
                match det.abs() {
                    1 => {
                        // U = [f+ f-]; U^{-1} = adj(U)/det, reduced mod 2.
                        let u = [[fplus[0], fminus[0]], [fplus[1], fminus[1]]];
                        let inv = [
                            [u[1][1] * det, -u[0][1] * det],
                            [-u[1][0] * det, u[0][0] * det],
                        ];
                        let m = [
                            [inv[0][0].rem_euclid(2) as u8, inv[0][1].rem_euclid(2) as u8],
                            [inv[1][0].rem_euclid(2) as u8, inv[1][1].rem_euclid(2) as u8],
                        ];
                        TorusH1::Two { u_inv_mod2: m }
                    }
                    2 => TorusH1::One,
                    _ => return Err(GaloisError::UnknownPattern),
                }
            }
        };
        Ok(TorusInvolution { dim, kind })
    }

    pub fn class_count(&self) -> usize {
        match &self.kind {
            TorusH1::One => 1,
            TorusH1::Signs => 1 << self.dim,
            TorusH1::Two { .. } => 2,
        }
    }

    /// Class id of a sign vector (bits 0/1 per coordinate).
    pub fn class_of(&self, eps: [u8; 2]) -> usize {
        match &self.kind {
            TorusH1::One => 0,
            TorusH1::Signs => {
                let mut id = 0usize;
                for t in 0..self.dim {
                    id |= (eps[t] as usize & 1) << t;
                }
                id
            }
            TorusH1::Two { u_inv_mod2 } => {
                // The f- coordinate of eps decides the class.
                let minus = (u_inv_mod2[1][0] & eps[0]) ^ (u_inv_mod2[1][1] & eps[1]);
                minus as usize
            }
        }
    }

    /// One representative sign vector per class, in class-id order.
    pub fn class_reps(&self) -> Vec<[u8; 2]> {
        let all: [[u8; 2]; 4] = [[0, 0], [1, 0], [0, 1], [1, 1]];
        let mut reps: Vec<Option<[u8; 2]>> = vec![None; self.class_count()];
        for eps in all.iter().take(1 << self.dim) {
            let mut e = *eps;
            if self.dim == 1 {
                e[1] = 0;
            }
            let id = self.class_of(e);
            if reps[id].is_none() {
                reps[id] = Some(e);
            }
        }
        reps.into_iter().map(|r| r.expect("all classes hit")).collect()
    }
}

/// Closed-form H¹ of a one- or two-dimensional torus from its σ-pattern.
pub fn h1_torus(t: &TorusDescriptor) -> Result<H1Classes, GaloisError> {
    let a = t.pattern.involution_matrix(t.dim)?;
    let inv = TorusInvolution::classify(t.dim, a)?;
    let reps = inv
        .class_reps()
        .into_iter()
        .map(|e| t.embedding.eval_signs(e))
        .collect();
    Ok(H1Classes::computed(reps))
}

fn monomial_permutation(m: &Mat3) -> Option<[usize; 3]> {
    // perm[j] = i when the only nonzero entry of column j sits in row i.
    let mut perm = [usize::MAX; 3];
    let mut seen_rows = [false; 3];
    for j in 0..3 {
        let mut row = None;
        for i in 0..3 {
            if !m.at(i, j).is_zero() {
                if row.is_some() {
                    return None;
                }
                row = Some(i);
            }
        }
        let i = row?;
        if seen_rows[i] {
            return None;
        }
        seen_rows[i] = true;
        perm[j] = i;
    }
    Some(perm)
}

fn diag_sign_bits(m: &Mat3) -> Option<[u8; 3]> {
    let mut bits = [0u8; 3];
    for i in 0..3 {
        for j in 0..3 {
            if i != j && !m.at(i, j).is_zero() {
                return None;
            }
        }
        let d = m.at(i, i);
        if d.is_one() {
            bits[i] = 0;
        } else if (-d).is_one() {
            bits[i] = 1;
        } else {
            return None;
        }
    }
    Some(bits)
}

/// The fiber assembly for the H¹ of a non-connected group Z = T ⋊ C.
///
/// For each class [c] of H¹(C) with a cocycle lift z, σ is twisted to
/// τ(g) = z σ(g) z⁻¹, the torus classes under τ are folded by the right
/// action [h]·u = [û⁻¹ h τ(û)] of C^τ, and the fiber contributes the
/// products h_j z. Lifts must be monomial matrices, one per component, with
/// the same support as the component they cover.
pub fn h1_assemble(
    c: &Conjugation,
    torus: &DiagEmbedding,
    comp: &FiniteGroupData,
    lifts: &[Mat3],
) -> Result<H1Classes, GaloisError> {
    if lifts.len() != comp.len() {
        return Err(GaloisError::BadLift(lifts.len()));
    }
    // Lift supports must match their components.
    for (idx, (e, z)) in comp.elements.iter().zip(lifts.iter()).enumerate() {
        let pe = monomial_permutation(e).ok_or(GaloisError::BadLift(idx))?;
        let pz = monomial_permutation(z).ok_or(GaloisError::BadLift(idx))?;
        if pe != pz {
            return Err(GaloisError::BadLift(idx));
        }
        if !z.det().is_one() {
            return Err(GaloisError::BadLift(idx));
        }
    }
    let (comp_reps, _) = h1_finite_indexed(comp);
    let mut out = Vec::new();
    for &ci in &comp_reps {
        let z = &lifts[ci];
        if !is_cocycle(c, z)? {
            return Err(GaloisError::BadLift(ci));
        }
        let zinv = z.inv().expect("det 1");
        // Lattice action of τ on the torus parameters: s · P_z · E = E · M.
        let s = c.diag_exponent_sign();
        let perm = monomial_permutation(z).expect("validated");
        // Row i of P·E is row perm^{-1}... positions: (z D z^{-1})_{ii} = D_{jj}
        // where perm[j] = i; so the new exponent row at position i is the old
        // row at j with perm[j] = i.
        let mut pe = [[0i64; 2]; 3];
        for j in 0..3 {
            let i = perm[j];
            pe[i] = torus.exponents[j];
        }
        for row in pe.iter_mut() {
            row[0] *= s;
            row[1] *= s;
        }
        let m = solve_lattice_map(&torus.exponents, &pe, torus.dim).ok_or(GaloisError::BadLift(ci))?;
        let inv = TorusInvolution::classify(torus.dim, m)?;
        // C^tau and its action on the torus classes.
        let ctau: Vec<usize> = (0..comp.len())
            .filter(|&u| {
                comp.mul_idx(ci, comp.mul_idx(comp.sigma_images[u], comp.inv_idx(ci))) == u
            })
            .collect();
        let reps = inv.class_reps();
        let nclasses = reps.len();
        let mut orbit_of: Vec<Option<usize>> = vec![None; nclasses];
        let mut fiber_reps: Vec<Mat3> = Vec::new();
        for (start, eps) in reps.iter().enumerate() {
            if orbit_of[start].is_some() {
                continue;
            }
            let orbit_id = fiber_reps.len();
            // Breadth-first closure of the C^tau action on this class.
            let mut stack = vec![*eps];
            orbit_of[start] = Some(orbit_id);
            while let Some(cur) = stack.pop() {
                let h = torus.eval_signs(cur);
                for &u in &ctau {
                    let uhat = &lifts[u];
                    let tau_uhat = z.mul(&c.apply_group(uhat)?).mul(&zinv);
                    let moved = uhat.inv().expect("det 1").mul(&h).mul(&tau_uhat);
                    let bits = diag_sign_bits(&moved).ok_or(GaloisError::BadLift(u))?;
                    let eps2 = solve_embedding_signs(&torus.exponents, torus.dim, bits)
                        .ok_or(GaloisError::BadLift(u))?;
                    let id2 = inv.class_of(eps2);
                    if orbit_of[id2].is_none() {
                        orbit_of[id2] = Some(orbit_id);
                        stack.push(reps[id2]);
                    }
                }
            }
            fiber_reps.push(torus.eval_signs(*eps).mul(z));
        }
        out.extend(fiber_reps);
    }
    Ok(H1Classes::computed(out))
}

/// Solve E · M = target over the integers for the dim×dim matrix M.
fn solve_lattice_map(
    e: &[[i64; 2]; 3],
    target: &[[i64; 2]; 3],
    dim: usize,
) -> Option<[[i64; 2]; 2]> {
    // Work column by column: E · m_col = target_col; E has full column rank.
    let mut m = [[0i64; 2]; 2];
    for col in 0..dim {
        let t = [target[0][col], target[1][col], target[2][col]];
        let sol = solve_int_column(e, dim, t)?;
        for r in 0..dim {
            m[r][col] = sol[r];
        }
    }
    // Verify exactly.
    for i in 0..3 {
        for col in 0..dim {
            let mut acc = 0i64;
            for r in 0..dim {
                acc += e[i][r] * m[r][col];
            }
            if acc != target[i][col] {
                return None;
            }
        }
    }
    Some(m)
}

fn solve_int_column(e: &[[i64; 2]; 3], dim: usize, t: [i64; 3]) -> Option<[i64; 2]> {
    if dim == 1 {
        for i in 0..3 {
            if e[i][0] != 0 {
                if t[i] % e[i][0] != 0 {
                    return None;
                }
                return Some([t[i] / e[i][0], 0]);
            }
        }
        None
    } else {
        // Find two rows of E forming an invertible 2x2 block.
        for i in 0..3 {
            for j in (i + 1)..3 {
                let det = e[i][0] * e[j][1] - e[i][1] * e[j][0];
                if det == 0 {
                    continue;
                }
                let num0 = t[i] * e[j][1] - t[j] * e[i][1];
                let num1 = e[i][0] * t[j] - e[j][0] * t[i];
                if num0 % det != 0 || num1 % det != 0 {
                    continue;
                }
                return Some([num0 / det, num1 / det]);
            }
        }
        None
    }
}

/// Express a ±1 diagonal as embedding signs: E·x ≡ bits (mod 2).
fn solve_embedding_signs(e: &[[i64; 2]; 3], dim: usize, bits: [u8; 3]) -> Option<[u8; 2]> {
    let cands: [[u8; 2]; 4] = [[0, 0], [1, 0], [0, 1], [1, 1]];
    'outer: for eps in cands.iter().take(1 << dim) {
        for i in 0..3 {
            let mut parity = 0i64;
            for t in 0..dim {
                parity += e[i][t] * i64::from(eps[t]);
            }
            if parity.rem_euclid(2) as u8 != bits[i] {
                continue 'outer;
            }
        }
        return Some(*eps);
    }
    None
}

/// The standard diag(a, b, (ab)⁻¹) torus of SL3.
pub fn torus_diag_ab() -> DiagEmbedding {
    DiagEmbedding {
        dim: 2,
        exponents: [[1, 0], [0, 1], [-1, -1]],
    }
}

/// The diag(t, 1, t⁻¹) torus.
pub fn torus_diag_a1() -> DiagEmbedding {
    DiagEmbedding {
        dim: 1,
        exponents: [[1, 0], [0, 0], [-1, 0]],
    }
}

/// The real signed-permutation S3 inside SL3(R) used as the component group
/// of the Cartan stabilizer: {I, r, r², t12, t13, r·t12} with
/// t12 = [[0,1,0],[1,0,0],[0,0,-1]] and t13 the first cocycle witness.
pub fn s3_signed_perms() -> Vec<Mat3> {
    let t12 = Mat3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, -1]]);
    let t13 = Mat3::from_ints([[0, 0, 1], [0, -1, 0], [1, 0, 0]]);
    let r = t12.mul(&t13);
    let r2 = r.mul(&r);
    let y = r.mul(&t12);
    vec![Mat3::identity(), r, r2, t12, t13, y]
}

/// The abstract S3 as plain permutation matrices (component-group model).
pub fn s3_permutation_matrices() -> Vec<Mat3> {
    let id = Mat3::identity();
    let r = Mat3::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    let r2 = r.mul(&r);
    let t12 = Mat3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let t13 = Mat3::from_ints([[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    let t23 = Mat3::from_ints([[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
    vec![id, r, r2, t12, t13, t23]
}
