//! Exact arithmetic in the number field Q(i, √2, √3).
//!
//! Every scalar appearing in the classification tables and proof witnesses
//! lives in this degree-8 extension of Q. Elements are stored as 8 rational
//! coordinates on the basis {1, √2, √3, √6, i, i√2, i√3, i√6}, so equality,
//! inversion and complex conjugation are all exact. Signs of real elements
//! are decided by interval refinement with rational endpoints, never by
//! floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Build a rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("zero element has no inverse")]
    ZeroInverse,
    #[error("element is not real")]
    NotReal,
}

/// Index layout of the 8 basis coordinates.
/// 0: 1, 1: √2, 2: √3, 3: √6, 4: i, 5: i√2, 6: i√3, 7: i√6.
const DIM: usize = 8;

/// An element of Q(i, √2, √3) as 8 exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: [Rational; 8],
}

fn zero_coords() -> [Rational; 8] {
    [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ]
}

/// Multiplication of the radical parts {1, √2, √3, √6}: index pair -> (integer factor, index).
const RADICAL_MUL: [[(i64, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (2, 0), (1, 3), (2, 2)],
    [(1, 2), (1, 3), (3, 0), (3, 1)],
    [(1, 3), (2, 2), (3, 1), (6, 0)],
];

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            coords: zero_coords(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = zero_coords();
        c[0] = r;
        FieldElement { coords: c }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rint(n))
    }

    /// Element with a single nonzero coordinate on the given basis index.
    pub fn basis(idx: usize, r: Rational) -> Self {
        let mut c = zero_coords();
        c[idx] = r;
        FieldElement { coords: c }
    }

    pub fn i() -> Self {
        Self::basis(4, Rational::one())
    }

    pub fn sqrt2() -> Self {
        Self::basis(1, Rational::one())
    }

    pub fn sqrt3() -> Self {
        Self::basis(2, Rational::one())
    }

    pub fn sqrt6() -> Self {
        Self::basis(3, Rational::one())
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in the real subfield Q(√2, √3).
    pub fn is_real(&self) -> bool {
        self.coords[4..].iter().all(|c| c.is_zero())
    }

    /// True when the element is purely imaginary (real part zero).
    pub fn is_imaginary(&self) -> bool {
        self.coords[..4].iter().all(|c| c.is_zero())
    }

    /// True when the element is a plain rational.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational coordinate on 1, i.e. the element itself when rational.
    pub fn rational_part(&self) -> &Rational {
        &self.coords[0]
    }

    /// Real part as a field element (coordinates on {1, √2, √3, √6}).
    pub fn real_part(&self) -> FieldElement {
        let mut c = zero_coords();
        for k in 0..4 {
            c[k] = self.coords[k].clone();
        }
        FieldElement { coords: c }
    }

    /// Imaginary part y of x = a + i*y, itself a real field element.
    pub fn imag_part(&self) -> FieldElement {
        let mut c = zero_coords();
        for k in 0..4 {
            c[k] = self.coords[k + 4].clone();
        }
        FieldElement { coords: c }
    }

    /// Complex conjugation: fixes the real coordinates, negates the imaginary ones.
    pub fn conj(&self) -> FieldElement {
        let mut c = self.coords.clone();
        for k in 4..8 {
            c[k] = -c[k].clone();
        }
        FieldElement { coords: c }
    }

    /// The automorphism √2 -> -√2 (also flips √6).
    fn conj_sqrt2(&self) -> FieldElement {
        let mut c = self.coords.clone();
        for k in [1, 3, 5, 7] {
            c[k] = -c[k].clone();
        }
        FieldElement { coords: c }
    }

    /// The automorphism √3 -> -√3 (also flips √6).
    fn conj_sqrt3(&self) -> FieldElement {
        let mut c = self.coords.clone();
        for k in [2, 3, 6, 7] {
            c[k] = -c[k].clone();
        }
        FieldElement { coords: c }
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        let mut c = zero_coords();
        for k in 0..DIM {
            c[k] = &self.coords[k] * r;
        }
        FieldElement { coords: c }
    }

    /// Exact multiplicative inverse. Errors on zero.
    ///
    /// Collapses the extension one generator at a time: multiplying by the
    /// i-, √3- and √2-conjugates leaves a nonzero rational in the
    /// denominator position.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let c1 = self.conj();
        let p1 = self * &c1; // now in Q(√2, √3)
        let c2 = p1.conj_sqrt3();
        let p2 = &p1 * &c2; // now in Q(√2)
        let c3 = p2.conj_sqrt2();
        let p3 = &p2 * &c3; // now in Q
        debug_assert!(p3.is_rational());
        let n = p3.rational_part();
        debug_assert!(!n.is_zero());
        let ninv = n.recip();
        Ok((&(&c1 * &c2) * &c3).scale(&ninv))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of a real element under the standard embedding √2 ≈ 1.414…,
    /// √3 ≈ 1.732… . Errors when the element is not real.
    ///
    /// Zero is decided exactly (all coordinates zero); otherwise a rational
    /// enclosure of a + b√2 + c√3 + d√6 is refined by interval bisection of
    /// x²−2, x²−3, x²−6 until it excludes zero.
    pub fn real_sign(&self) -> Result<i32, FieldError> {
        if !self.is_real() {
            return Err(FieldError::NotReal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        // Initial rational enclosures of the three radicals.
        let mut encl = [
            (rat(7, 5), rat(3, 2)),   // √2 in [1.4, 1.5]
            (rat(17, 10), rat(7, 4)), // √3 in [1.7, 1.75]
            (rat(12, 5), rat(5, 2)),  // √6 in [2.4, 2.5]
        ];
        let targets = [rint(2), rint(3), rint(6)];
        let two = rint(2);
        for _ in 0..256 {
            let mut lo = self.coords[0].clone();
            let mut hi = self.coords[0].clone();
            for k in 0..3 {
                let b = &self.coords[k + 1];
                if b.is_zero() {
                    continue;
                }
                let (t_lo, t_hi) = (b * &encl[k].0, b * &encl[k].1);
                if b.is_positive() {
                    lo += t_lo;
                    hi += t_hi;
                } else {
                    lo += t_hi;
                    hi += t_lo;
                }
            }
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            // Refine every enclosure by one bisection step.
            for k in 0..3 {
                let mid = (&encl[k].0 + &encl[k].1) / &two;
                if &mid * &mid <= targets[k] {
                    encl[k].0 = mid;
                } else {
                    encl[k].1 = mid;
                }
            }
        }
        unreachable!("interval refinement failed to separate a provably nonzero element from 0");
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut c = zero_coords();
        for k in 0..DIM {
            c[k] = &self.coords[k] + &rhs.coords[k];
        }
        FieldElement { coords: c }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let mut c = zero_coords();
        for k in 0..DIM {
            c[k] = &self.coords[k] - &rhs.coords[k];
        }
        FieldElement { coords: c }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let mut c = zero_coords();
        for k in 0..DIM {
            c[k] = -self.coords[k].clone();
        }
        FieldElement { coords: c }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let mut c = zero_coords();
        for j in 0..DIM {
            if self.coords[j].is_zero() {
                continue;
            }
            let (j_im, j_rad) = (j >= 4, j % 4);
            for k in 0..DIM {
                if rhs.coords[k].is_zero() {
                    continue;
                }
                let (k_im, k_rad) = (k >= 4, k % 4);
                let (f, rad) = RADICAL_MUL[j_rad][k_rad];
                // i * i = -1 when both factors carry the imaginary unit.
                let sign = if j_im && k_im { -1 } else { 1 };
                let out = if j_im ^ k_im { rad + 4 } else { rad };
                let term = &self.coords[j] * &rhs.coords[k] * rint(f * sign);
                c[out] += term;
            }
        }
        FieldElement { coords: c }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for k in 0..DIM {
            self.coords[k] += &rhs.coords[k];
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        for k in 0..DIM {
            self.coords[k] -= &rhs.coords[k];
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

/// Canonical text form:
/// `a + b*r2 + c*r3 + d*r6 + (e + f*r2 + g*r3 + h*r6)*i` with rationals as `p/q`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn quad(f: &mut fmt::Formatter<'_>, c: &[Rational]) -> fmt::Result {
            write!(f, "{} + {}*r2 + {}*r3 + {}*r6", c[0], c[1], c[2], c[3])
        }
        quad(f, &self.coords[..4])?;
        write!(f, " + (")?;
        quad(f, &self.coords[4..])?;
        write!(f, ")*i")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

impl FieldElement {
    /// Short human-readable form, dropping zero terms (`0` for the zero element).
    pub fn compact(&self) -> String {
        const NAMES: [&str; 8] = ["", "r2", "r3", "r6", "i", "i*r2", "i*r3", "i*r6"];
        let mut parts = Vec::new();
        for k in 0..DIM {
            let c = &self.coords[k];
            if c.is_zero() {
                continue;
            }
            let name = NAMES[k];
            let s = if name.is_empty() {
                format!("{}", c)
            } else if c.is_one() {
                name.to_string()
            } else if (-c.clone()).is_one() {
                format!("-{}", name)
            } else {
                format!("{}*{}", c, name)
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            let mut out = parts[0].clone();
            for p in &parts[1..] {
                if let Some(rest) = p.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(coords: [i64; 8]) -> FieldElement {
        let mut x = FieldElement::zero();
        for (k, v) in coords.into_iter().enumerate() {
            x = &x + &FieldElement::basis(k, rint(v));
        }
        x
    }

    fn random_fe(rng: &mut ChaCha8Rng) -> FieldElement {
        let mut x = FieldElement::zero();
        for k in 0..8 {
            let num = rng.gen_range(-4i64..=4);
            let den = rng.gen_range(1i64..=3);
            x = &x + &FieldElement::basis(k, rat(num, den));
        }
        x
    }

    #[test]
    fn defining_relations() {
        let i = FieldElement::i();
        assert_eq!(&i * &i, FieldElement::from_int(-1));
        assert_eq!(
            &FieldElement::sqrt2() * &FieldElement::sqrt3(),
            FieldElement::sqrt6()
        );
        // (1+i)/2 * (1-i) = 1
        let half_one_plus_i = FieldElement {
            coords: {
                let mut c = zero_coords();
                c[0] = rat(1, 2);
                c[4] = rat(1, 2);
                c
            },
        };
        let one_minus_i = &FieldElement::one() - &FieldElement::i();
        assert_eq!(&half_one_plus_i * &one_minus_i, FieldElement::one());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(FieldElement::one().inv().unwrap(), FieldElement::one());
        assert_eq!(
            FieldElement::i().inv().unwrap(),
            -&FieldElement::i()
        );
        // (1+√2)^-1 = -1+√2, since (√2)²-1 = 1
        let x = &FieldElement::one() + &FieldElement::sqrt2();
        let expect = &(-&FieldElement::one()) + &FieldElement::sqrt2();
        let inv = x.inv().unwrap();
        assert_eq!(inv, expect);
        assert_eq!(&x * &inv, FieldElement::one());
        assert_eq!(
            FieldElement::zero().inv().unwrap_err(),
            FieldError::ZeroInverse
        );
    }

    #[test]
    fn conjugation_examples() {
        let i = FieldElement::i();
        assert_eq!(i.conj(), -&i);
        let x = fe([3, 0, 0, 0, 0, 1, 0, 0]); // 3 + i√2
        assert_eq!(x.conj(), fe([3, 0, 0, 0, 0, -1, 0, 0]));
        // conj is multiplicative: x = 1+i, y = √3 - i√6
        let x = fe([1, 0, 0, 0, 1, 0, 0, 0]);
        let y = fe([0, 0, 1, 0, 0, 0, 0, -1]);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn real_sign_examples() {
        assert_eq!(FieldElement::zero().real_sign().unwrap(), 0);
        // 1 - √2 < 0
        let x = &FieldElement::one() - &FieldElement::sqrt2();
        assert_eq!(x.real_sign().unwrap(), -1);
        // 3 - √2 - √3 + √6 ≈ 2.30 > 0
        let y = fe([3, -1, -1, 1, 0, 0, 0, 0]);
        assert_eq!(y.real_sign().unwrap(), 1);
        assert_eq!(
            FieldElement::i().real_sign().unwrap_err(),
            FieldError::NotReal
        );
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let (x, y, z) = (random_fe(&mut rng), random_fe(&mut rng), random_fe(&mut rng));
            assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            assert_eq!(&x + &y, &y + &x);
            assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                assert_eq!(&x * &x.inv().unwrap(), FieldElement::one());
            }
        }
    }

    #[test]
    fn conj_involution_and_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (x, y) = (random_fe(&mut rng), random_fe(&mut rng));
            assert_eq!(x.conj().conj(), x);
            assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }
    }

    #[test]
    fn sign_is_odd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = random_fe(&mut rng).real_part();
            let s = x.real_sign().unwrap();
            let t = (-&x).real_sign().unwrap();
            assert_eq!(s * t, -s * s);
        }
    }

    #[test]
    fn canonical_display_roundtrip_shape() {
        let x = fe([1, 2, 0, 0, 0, 0, -1, 0]);
        assert_eq!(x.to_string(), "1 + 2*r2 + 0*r3 + 0*r6 + (0 + 0*r2 + -1*r3 + 0*r6)*i");
        assert_eq!(x.compact(), "1 + 2*r2 - i*r3");
    }
}
