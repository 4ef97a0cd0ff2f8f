//! Exact scalar fields: Gaussian rationals and their √2 extension.
//!
//! Every check in this crate is an exact identity, so the scalar layer
//! forbids approximation. [`GaussRational`] is Q(i) over arbitrary-precision
//! rationals; [`GaussSqrt2`] adjoins √2 for the basis recombinations that
//! need 1/√2 factors. Both implement [`ExactScalar`], which the matrix and
//! operator layers are generic over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// Error produced when a string does not parse as a canonical scalar.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    /// The input did not match the `p/q` or `p/q±r/s i` grammar.
    #[error("not a canonical scalar: {0:?}")]
    Malformed(String),
    /// A denominator of zero appeared.
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// An exact field element.
///
/// Implementors must be genuine fields (every nonzero element invertible)
/// with decidable equality; all arithmetic is exact. The `*_ref` methods
/// exist so hot loops can avoid cloning arbitrary-precision parts.
pub trait ExactScalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds a rational number.
    fn from_rational(r: BigRational) -> Self;

    /// Embeds a Gaussian rational. For `GaussRational` itself this is a
    /// clone; extensions lift it into their rational subfield.
    fn from_gauss(g: &GaussRational) -> Self;

    /// The imaginary unit.
    fn i() -> Self;

    /// Complex conjugation (fixes √2 in the extension field).
    fn conj(&self) -> Self;

    /// Multiplicative inverse, or `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Product without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self;

    /// Rough size of the element in bits, for growth diagnostics.
    fn bit_len(&self) -> u64;

    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Embeds the fraction `num/den`. Panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Integer power, with negative exponents going through the inverse.
    /// Panics when asked for a negative power of zero.
    fn pow_i64(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        acc
    }
}

/// Marker for fields containing a square root of two.
pub trait HasSqrt2: ExactScalar {
    /// The positive square root of two.
    fn sqrt2() -> Self;
}

/// Parses a plain rational written as `p` or `p/q` with an optional leading
/// minus sign.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
    let malformed = || ScalarParseError::Malformed(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_str.trim()).map_err(|_| malformed())?;
    let den = BigInt::from_str(den_str.trim()).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

/// A Gaussian rational `re + im·i` with arbitrary-precision rational parts.
///
/// The canonical string form always writes explicit denominators: `"3/2"`,
/// `"0/1"`, `"1/2+1/3 i"`, `"-1/1-2/1 i"`. The derived ordering is the
/// lexicographic bookkeeping order on (re, im) — used for deterministic
/// container keys, not for any algebraic comparison.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    /// Builds from real and imaginary rational parts.
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    /// Real part.
    pub fn re(&self) -> &BigRational {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &BigRational {
        &self.im
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re² + im²`, the norm form used by the inverse.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.re, f)?;
        if !self.im.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
                fmt_rational(&-&self.im, f)?;
            } else {
                write!(f, "+")?;
                fmt_rational(&self.im, f)?;
            }
            write!(f, " i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussRational {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || ScalarParseError::Malformed(s.to_string());
        match s.strip_suffix(" i") {
            None => Ok(GaussRational::new(parse_rational(s)?, BigRational::zero())),
            Some(head) => {
                // Scan for the sign that separates real from imaginary,
                // skipping a leading sign on the real part itself.
                let sep = head
                    .char_indices()
                    .skip(1)
                    .find(|&(_, ch)| ch == '+' || ch == '-')
                    .map(|(idx, ch)| (idx, ch));
                let (idx, sign) = sep.ok_or_else(malformed)?;
                let re = parse_rational(&head[..idx])?;
                let im_abs = parse_rational(&head[idx + 1..])?;
                if im_abs.is_negative() {
                    return Err(malformed());
                }
                let im = if sign == '-' { -im_abs } else { im_abs };
                Ok(GaussRational::new(re, im))
            }
        }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.inv().expect("division by zero scalar");
        self.mul_ref(&inv)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, o: &GaussRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, o: &GaussRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl ExactScalar for GaussRational {
    fn from_rational(r: BigRational) -> Self {
        GaussRational::new(r, BigRational::zero())
    }

    fn from_gauss(g: &GaussRational) -> Self {
        g.clone()
    }

    fn i() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::one())
    }

    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -&self.im)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRational::new(&self.re / &n, -&self.im / &n))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn bit_len(&self) -> u64 {
        let part = |r: &BigRational| r.numer().bits().max(r.denom().bits());
        part(&self.re).max(part(&self.im))
    }
}

/// An element `a + b·√2` of Q(i, √2), with Gaussian-rational coefficients.
///
/// Inversion multiplies by the √2-conjugate: for nonzero `a + b√2` the norm
/// `a² − 2b²` is nonzero because √2 is irrational over Q(i) (2 is not a
/// square there, as ±i·odd cannot square to 2·odd either).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GaussSqrt2 {
    rat: GaussRational,
    rad: GaussRational,
}

impl GaussSqrt2 {
    /// Builds `rat + rad·√2`.
    pub fn new(rat: GaussRational, rad: GaussRational) -> Self {
        GaussSqrt2 { rat, rad }
    }

    /// The coefficient of 1.
    pub fn rational_part(&self) -> &GaussRational {
        &self.rat
    }

    /// The coefficient of √2.
    pub fn radical_part(&self) -> &GaussRational {
        &self.rad
    }

    /// The √2-conjugate `a − b·√2`.
    pub fn conj_sqrt2(&self) -> Self {
        GaussSqrt2::new(self.rat.clone(), -self.rad.clone())
    }
}

impl From<GaussRational> for GaussSqrt2 {
    fn from(g: GaussRational) -> Self {
        GaussSqrt2::new(g, GaussRational::zero())
    }
}

impl fmt::Display for GaussSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "({})+({}) sqrt2", self.rat, self.rad)
        }
    }
}

impl fmt::Debug for GaussSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Zero for GaussSqrt2 {
    fn zero() -> Self {
        GaussSqrt2::new(GaussRational::zero(), GaussRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }
}

impl One for GaussSqrt2 {
    fn one() -> Self {
        GaussSqrt2::new(GaussRational::one(), GaussRational::zero())
    }
}

impl Add for GaussSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussSqrt2::new(self.rat + o.rat, self.rad + o.rad)
    }
}

impl Sub for GaussSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussSqrt2::new(self.rat - o.rat, self.rad - o.rad)
    }
}

impl Mul for GaussSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Div for GaussSqrt2 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.inv().expect("division by zero scalar");
        self.mul_ref(&inv)
    }
}

impl Neg for GaussSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        GaussSqrt2::new(-self.rat, -self.rad)
    }
}

impl AddAssign<&GaussSqrt2> for GaussSqrt2 {
    fn add_assign(&mut self, o: &GaussSqrt2) {
        self.rat += &o.rat;
        self.rad += &o.rad;
    }
}

impl SubAssign<&GaussSqrt2> for GaussSqrt2 {
    fn sub_assign(&mut self, o: &GaussSqrt2) {
        self.rat -= &o.rat;
        self.rad -= &o.rad;
    }
}

impl ExactScalar for GaussSqrt2 {
    fn from_rational(r: BigRational) -> Self {
        GaussSqrt2::new(GaussRational::from_rational(r), GaussRational::zero())
    }

    fn from_gauss(g: &GaussRational) -> Self {
        GaussSqrt2::new(g.clone(), GaussRational::zero())
    }

    fn i() -> Self {
        GaussSqrt2::new(GaussRational::i(), GaussRational::zero())
    }

    fn conj(&self) -> Self {
        GaussSqrt2::new(self.rat.conj(), self.rad.conj())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√2)(a − b√2) = a² − 2b², a Gaussian rational.
        let two = GaussRational::from_int(2);
        let norm = self.rat.mul_ref(&self.rat) - two.mul_ref(&self.rad.mul_ref(&self.rad));
        let ninv = norm
            .inv()
            .expect("a^2 - 2 b^2 = 0 forces a = b = 0 over Q(i)");
        Some(GaussSqrt2::new(
            self.rat.mul_ref(&ninv),
            (-self.rad.clone()).mul_ref(&ninv),
        ))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let two = GaussRational::from_int(2);
        GaussSqrt2::new(
            self.rat.mul_ref(&o.rat) + two.mul_ref(&self.rad.mul_ref(&o.rad)),
            self.rat.mul_ref(&o.rad) + self.rad.mul_ref(&o.rat),
        )
    }

    fn bit_len(&self) -> u64 {
        self.rat.bit_len().max(self.rad.bit_len())
    }
}

impl HasSqrt2 for GaussSqrt2 {
    fn sqrt2() -> Self {
        GaussSqrt2::new(GaussRational::zero(), GaussRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(num: i64, den: i64) -> GaussRational {
        GaussRational::ratio(num, den)
    }

    #[test]
    fn canonical_strings_roundtrip() {
        let cases = [
            GaussRational::zero(),
            GaussRational::one(),
            g(-3, 2),
            g(1, 2) + GaussRational::i().mul_ref(&g(1, 3)),
            g(-1, 1) - GaussRational::i().mul_ref(&g(2, 1)),
            GaussRational::i(),
        ];
        for v in cases {
            let s = v.to_string();
            let back: GaussRational = s.parse().unwrap();
            assert_eq!(back, v, "roundtrip through {s:?}");
        }
        assert_eq!(GaussRational::zero().to_string(), "0/1");
        assert_eq!(g(-3, 2).to_string(), "-3/2");
        assert_eq!(
            (g(1, 2) - GaussRational::i().mul_ref(&g(5, 3))).to_string(),
            "1/2-5/3 i"
        );
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = GaussRational::i();
        assert_eq!(i.mul_ref(&i), -GaussRational::one());
        let i = GaussSqrt2::i();
        assert_eq!(i.mul_ref(&i), -GaussSqrt2::one());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let r = GaussSqrt2::sqrt2();
        assert_eq!(r.mul_ref(&r), GaussSqrt2::from_int(2));
        let inv = r.inv().unwrap();
        assert_eq!(r.mul_ref(&inv), GaussSqrt2::one());
        // 1/√2 = √2/2.
        assert_eq!(
            inv,
            GaussSqrt2::sqrt2().mul_ref(&GaussSqrt2::ratio(1, 2))
        );
    }

    #[test]
    fn extension_inverse_handles_mixed_elements() {
        // (1 + i) + (2 − i)√2 has a nontrivial norm; check x · x⁻¹ = 1.
        let x = GaussSqrt2::new(
            GaussRational::one() + GaussRational::i(),
            g(2, 1) - GaussRational::i(),
        );
        let xi = x.inv().unwrap();
        assert_eq!(x.mul_ref(&xi), GaussSqrt2::one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(GaussRational::zero().inv().is_none());
        assert!(GaussSqrt2::zero().inv().is_none());
    }

    #[test]
    fn malformed_strings_are_rejected() {
        for bad in ["", "1/0", "i", "2+ i", "1/2+1/3i", "1/2 + 1/3 i x"] {
            assert!(
                bad.parse::<GaussRational>().is_err(),
                "{bad:?} should not parse"
            );
        }
    }
}
