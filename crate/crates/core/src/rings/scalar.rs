use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::base::{forward_owned, BaseElement, Sign};

/// Element of `C = R(i)`: a pair of base-ring elements with `i² = −1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BaseElement,
    pub im: BaseElement,
}

impl Scalar {
    pub fn new(re: BaseElement, im: BaseElement) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: BaseElement) -> Self {
        Scalar {
            re,
            im: BaseElement::zero(),
        }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::real(BaseElement::one())
    }

    pub fn i() -> Self {
        Scalar::new(BaseElement::zero(), BaseElement::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(BaseElement::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::real(BaseElement::from_ratio(p, q))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(BaseElement::from_int(re), BaseElement::from_int(im))
    }

    pub fn lambda() -> Self {
        Scalar::real(BaseElement::lambda())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.re.is_constant() && self.im.is_constant()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -&self.im)
    }

    /// `z̄·z = re² + im²`, non-negative and zero only for `z = 0`.
    pub fn norm_sq(&self) -> BaseElement {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Sign of the real part; meaningful for real scalars.
    pub fn sign(&self) -> Sign {
        self.re.sign()
    }

    pub fn scale(&self, c: &BaseElement) -> Scalar {
        Scalar::new(&self.re * c, &self.im * c)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Scalar {
        Scalar::new(self.re.scale(c), self.im.scale(c))
    }

    /// λ-order of the scalar: the smaller order of its two parts.
    pub fn lambda_order(&self) -> Option<usize> {
        match (self.re.lambda_order(), self.im.lambda_order()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Evaluation at λ = 0.
    pub fn classical_limit(&self) -> Scalar {
        Scalar::new(self.re.classical_limit(), self.im.classical_limit())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})i", self.im),
            (false, false) => write!(f, "({}) + ({})i", self.re, self.im),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(&self.re * &rhs.re);
        }
        Scalar::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned!(Scalar, Add add, Sub sub, Mul mul);
