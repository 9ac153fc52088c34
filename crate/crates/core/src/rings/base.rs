use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sign of an element of an ordered ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_non_negative(self) -> bool {
        self != Sign::Negative
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Element of the real base ring: a polynomial in the formal parameter λ with
/// rational coefficients. Degree-0 elements are the plain rationals.
///
/// The ordering is λ-adic: an element is positive iff its lowest-order
/// nonzero coefficient is positive, so `0 < λ < 1/n` for every `n`.
///
/// Coefficients are stored by ascending power of λ without trailing zeros;
/// the empty vector is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BaseElement {
    coeffs: Vec<BigRational>,
}

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

impl BaseElement {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        BaseElement { coeffs }
    }

    pub fn zero() -> Self {
        BaseElement { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_coeffs(vec![r])
    }

    /// The formal parameter λ.
    pub fn lambda() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds `Σ c_k λ^k` from small integer coefficients.
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(
            cs.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for plain rationals (no λ dependence).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient; `None` encodes `+∞` for zero.
    pub fn lambda_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of the lowest-order nonzero term.
    pub fn lowest_coeff(&self) -> Option<&BigRational> {
        self.lambda_order().map(|k| &self.coeffs[k])
    }

    pub fn sign(&self) -> Sign {
        match self.lowest_coeff() {
            None => Sign::Zero,
            Some(c) if c.is_positive() => Sign::Positive,
            Some(_) => Sign::Negative,
        }
    }

    /// Order-zero part, i.e. evaluation at λ = 0.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    /// The classical limit λ ↦ 0 as an element of the same type.
    pub fn classical_limit(&self) -> BaseElement {
        BaseElement::from_rational(self.constant_term())
    }

    pub fn scale(&self, c: &BigRational) -> BaseElement {
        if c.is_zero() {
            return BaseElement::zero();
        }
        BaseElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BaseElement {
        let mut acc = BaseElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Euclidean division over ℚ: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &BaseElement) -> (BaseElement, BaseElement) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (BaseElement::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        let lead = d.leading().clone();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (BaseElement::from_coeffs(quot), BaseElement::from_coeffs(rem))
    }

    /// Exact division; panics unless `d` divides `self`.
    pub fn exact_div(&self, d: &BaseElement) -> BaseElement {
        if d.is_constant() {
            return self.scale(&d.constant_term().recip());
        }
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over ℚ (gcd(0, 0) = 0).
    pub fn gcd(&self, other: &BaseElement) -> BaseElement {
        if self.is_constant() && !self.is_zero() || other.is_constant() && !other.is_zero() {
            return BaseElement::one();
        }
        if self.is_zero() || other.is_zero() {
            let a = if self.is_zero() { other } else { self };
            if a.is_zero() {
                return a.clone();
            }
            return a.scale(&a.leading().recip());
        }
        // primitive pseudo-remainder sequence over ℤ
        let (mut a, mut b) = (self.integer_primitive(), other.integer_primitive());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_ints(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        let lead = BigRational::from_integer(a.last().expect("nonzero gcd").clone());
        BaseElement::from_coeffs(a.into_iter().map(|c| BigRational::from_integer(c) / &lead).collect())
    }

    /// Coprime integer coefficients of a positive rational multiple.
    fn integer_primitive(&self) -> Vec<BigInt> {
        let l = self.denominator_lcm();
        primitive_ints(self.coeffs.iter().map(|c| (c * &BigRational::from_integer(l.clone())).to_integer()).collect())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// gcd of the numerators once all coefficients share a denominator.
    pub fn numerator_gcd(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }
}

/// Divides out the content; trailing zeros are dropped.
fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// `lc(b)^(deg a − deg b + 1)·a mod b`, computed over ℤ.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        let shift = k - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

impl fmt::Debug for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "λ")?;
                    } else {
                        write!(f, "λ^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialOrd for BaseElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BaseElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a BaseElement> for &'a BaseElement {
    type Output = BaseElement;
    fn add(self, rhs: &BaseElement) -> BaseElement {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        BaseElement::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a BaseElement> for &'a BaseElement {
    type Output = BaseElement;
    fn sub(self, rhs: &BaseElement) -> BaseElement {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigRational::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        BaseElement::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a BaseElement> for &'a BaseElement {
    type Output = BaseElement;
    fn mul(self, rhs: &BaseElement) -> BaseElement {
        if self.is_zero() || rhs.is_zero() {
            return BaseElement::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BaseElement::from_coeffs(coeffs)
    }
}

impl Neg for &BaseElement {
    type Output = BaseElement;
    fn neg(self) -> BaseElement {
        BaseElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for BaseElement {
    type Output = BaseElement;
    fn neg(self) -> BaseElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(BaseElement, Add add, Sub sub, Mul mul);

impl AddAssign<&BaseElement> for BaseElement {
    fn add_assign(&mut self, rhs: &BaseElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&BaseElement> for BaseElement {
    fn sub_assign(&mut self, rhs: &BaseElement) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> BaseElement {
        BaseElement::from_ints(cs)
    }

    #[test]
    fn sign_examples() {
        assert_eq!(BaseElement::lambda().sign(), Sign::Positive);
        assert_eq!(BaseElement::from_ratio(-3, 4).sign(), Sign::Negative);
        assert_eq!(p(&[0, 0, 1, -1]).sign(), Sign::Positive);
        assert_eq!(BaseElement::zero().sign(), Sign::Zero);
    }

    #[test]
    fn lambda_is_infinitesimal() {
        // 0 < nλ < 1 for every n
        for n in 1..50 {
            let nl = p(&[0, n]);
            assert!(nl > BaseElement::zero());
            assert!(nl < BaseElement::one());
        }
    }

    #[test]
    fn lambda_order_examples() {
        assert_eq!(p(&[0, 0, 1, 0, 1]).lambda_order(), Some(2));
        assert_eq!(BaseElement::zero().lambda_order(), None);
        assert_eq!(p(&[7]).lambda_order(), Some(0));
    }

    #[test]
    fn product_and_canonical_form() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[0, 3]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[2, 0, 1]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 1])), BaseElement::one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, -1, 3]).to_string(), "2 - λ + 3λ^2");
        assert_eq!(BaseElement::from_ratio(-3, 4).to_string(), "-3/4");
    }
}
