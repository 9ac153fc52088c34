use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use super::base::{forward_owned, BaseElement, Sign};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Element of the fraction field `Ĉ = R̂(i)`, stored as `numerator / denominator`
/// with a real denominator.
///
/// Canonical form: the denominator is coprime to both parts of the numerator
/// and its lowest-order coefficient is `1` (so its sign is `+1`). Constant
/// denominators are absorbed into the numerator, hence every element of
/// `ℚ(i)` has denominator exactly `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracScalar {
    num: Scalar,
    den: BaseElement,
}

impl Default for FracScalar {
    fn default() -> Self {
        FracScalar::zero()
    }
}

impl From<Scalar> for FracScalar {
    fn from(num: Scalar) -> Self {
        FracScalar {
            num,
            den: BaseElement::one(),
        }
    }
}

impl From<BaseElement> for FracScalar {
    fn from(re: BaseElement) -> Self {
        FracScalar::from(Scalar::real(re))
    }
}

impl FracScalar {
    pub fn new(num: Scalar, den: BaseElement) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Scalar, den: BaseElement) -> Self {
        if num.is_zero() {
            return FracScalar::zero();
        }
        if den.is_one() {
            return FracScalar { num, den };
        }
        if den.is_constant() {
            let inv = den.constant_term().recip();
            return FracScalar {
                num: num.scale_rational(&inv),
                den: BaseElement::one(),
            };
        }
        let g = common_factor(&den, &num);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                Scalar::new(num.re.exact_div(&g), num.im.exact_div(&g)),
                den.exact_div(&g),
            )
        };
        Self::normalized(num, den)
    }

    /// Canonical form of an already reduced fraction.
    fn normalized(num: Scalar, den: BaseElement) -> Self {
        if den.is_constant() {
            let inv = den.constant_term().recip();
            return FracScalar {
                num: num.scale_rational(&inv),
                den: BaseElement::one(),
            };
        }
        let low = den.lowest_coeff().expect("nonzero denominator").recip();
        if low.is_one() {
            return FracScalar { num, den };
        }
        FracScalar {
            num: num.scale_rational(&low),
            den: den.scale(&low),
        }
    }

    pub fn zero() -> Self {
        FracScalar {
            num: Scalar::zero(),
            den: BaseElement::one(),
        }
    }

    pub fn one() -> Self {
        FracScalar::from(Scalar::one())
    }

    pub fn i() -> Self {
        FracScalar::from(Scalar::i())
    }

    pub fn lambda() -> Self {
        FracScalar::from(Scalar::lambda())
    }

    pub fn from_int(n: i64) -> Self {
        FracScalar::from(Scalar::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        FracScalar::from(Scalar::from_ratio(p, q))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        FracScalar::from(Scalar::gaussian(re, im))
    }

    pub fn from_rational(r: BigRational) -> Self {
        FracScalar::from(BaseElement::from_rational(r))
    }

    /// Real polynomial `Σ c_k λ^k` from small integers.
    pub fn poly(cs: &[i64]) -> Self {
        FracScalar::from(BaseElement::from_ints(cs))
    }

    pub fn numerator(&self) -> &Scalar {
        &self.num
    }

    pub fn denominator(&self) -> &BaseElement {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.num.im.is_zero()
    }

    /// No λ anywhere (an element of `ℚ(i)`).
    pub fn is_rational(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// Sign in the ordered field `R̂`; uses the real part for non-real input.
    pub fn sign(&self) -> Sign {
        self.num.re.sign()
    }

    pub fn conj(&self) -> FracScalar {
        FracScalar {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    pub fn re(&self) -> FracScalar {
        Self::canonical(Scalar::real(self.num.re.clone()), self.den.clone())
    }

    pub fn im(&self) -> FracScalar {
        Self::canonical(Scalar::real(self.num.im.clone()), self.den.clone())
    }

    /// `z̄z` as a real field element.
    pub fn norm_sq(&self) -> FracScalar {
        Self::canonical(Scalar::real(self.num.norm_sq()), &self.den * &self.den)
    }

    pub fn inv(&self) -> Result<FracScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n2 = self.num.norm_sq();
        Ok(Self::canonical(self.num.conj().scale(&self.den), n2))
    }

    pub fn checked_div(&self, rhs: &FracScalar) -> Result<FracScalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Demotes to the ring `R(i)`; succeeds iff the denominator is a unit.
    pub fn try_demote(&self) -> Result<Scalar> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotInRing)
        }
    }

    /// True when the λ = 0 evaluation is defined (denominator is a unit at 0).
    pub fn is_regular_at_zero(&self) -> bool {
        self.den.lambda_order() == Some(0)
    }

    /// Ring homomorphism λ ↦ 0 into `ℚ(i)`.
    pub fn classical_limit(&self) -> Result<FracScalar> {
        if !self.is_regular_at_zero() {
            return Err(Error::DenominatorVanishesAtZero);
        }
        // canonical denominators have constant term 1 when regular at 0
        Ok(FracScalar::from(self.num.classical_limit()))
    }

    /// λ-adic order of the fraction (may be negative for poles at 0).
    pub fn lambda_order(&self) -> Option<i64> {
        let n = self.num.lambda_order()? as i64;
        let d = self.den.lambda_order().unwrap_or(0) as i64;
        Some(n - d)
    }

    pub fn scale_rational(&self, c: &BigRational) -> FracScalar {
        Self::canonical(self.num.scale_rational(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> FracScalar {
        let mut acc = FracScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for FracScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FracScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    fn add(self, rhs: &FracScalar) -> FracScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FracScalar {
                num: &self.num + &rhs.num,
                den: BaseElement::one(),
            };
        }
        if self.den == rhs.den {
            return FracScalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // over the lcm; only the shared factor can cancel afterwards
        let g = self.den.gcd(&rhs.den);
        let (a, b) = (self.den.exact_div(&g), rhs.den.exact_div(&g));
        let num = &self.num.scale(&b) + &rhs.num.scale(&a);
        if num.is_zero() {
            return FracScalar::zero();
        }
        let h = common_factor(&g, &num);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (Scalar::new(num.re.exact_div(&h), num.im.exact_div(&h)), g.exact_div(&h))
        };
        FracScalar::normalized(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    fn sub(self, rhs: &FracScalar) -> FracScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    fn mul(self, rhs: &FracScalar) -> FracScalar {
        if self.is_zero() || rhs.is_zero() {
            return FracScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FracScalar {
                num: &self.num * &rhs.num,
                den: BaseElement::one(),
            };
        }
        // cross-cancel: each numerator is already coprime to its own denominator
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        let (num, den) = (&n1 * &n2, &d1 * &d2);
        // a real prime can still split between two genuinely complex factors
        if n1.re.is_zero() || n1.im.is_zero() || n2.re.is_zero() || n2.im.is_zero() {
            FracScalar::normalized(num, den)
        } else {
            FracScalar::canonical(num, den)
        }
    }
}

/// Monic gcd of a real `d` with both parts of `n`.
fn common_factor(d: &BaseElement, n: &Scalar) -> BaseElement {
    let g = d.gcd(&n.re);
    if g.is_one() {
        g
    } else {
        g.gcd(&n.im)
    }
}

fn cancel(n: &Scalar, d: &BaseElement) -> (Scalar, BaseElement) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = common_factor(d, n);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (Scalar::new(n.re.exact_div(&g), n.im.exact_div(&g)), d.exact_div(&g))
    }
}

impl Neg for &FracScalar {
    type Output = FracScalar;
    fn neg(self) -> FracScalar {
        FracScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for FracScalar {
    type Output = FracScalar;
    fn neg(self) -> FracScalar {
        -&self
    }
}

forward_owned!(FracScalar, Add add, Sub sub, Mul mul);

impl std::iter::Sum for FracScalar {
    fn sum<I: Iterator<Item = FracScalar>>(iter: I) -> FracScalar {
        iter.fold(FracScalar::zero(), |a, b| &a + &b)
    }
}
