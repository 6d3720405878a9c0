//! Rational functions in canonical form over an exact coefficient field.
//!
//! [`RatFun<C>`] keeps `num/den` reduced (gcd 1) with a monic denominator,
//! so structural equality is mathematical equality. Because `RatFun<C>`
//! itself satisfies the [`crate::poly::Coeff`] bound, the construction
//! towers:
//!
//! - [`UniRatFun`] = `RatFun<Q>` is the field ℚ(n);
//! - `Poly<UniRatFun>` is the ring ℚ(n)[k] — the working ring for
//!   parameterized Gosper elimination and linear solving;
//! - [`KRatFun`] = `RatFun<UniRatFun>` is the field ℚ(n)(k), used to verify
//!   certificate identities by exact subtraction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{fmt_poly, Coeff, Poly};
use crate::rat::Q;

/// The field ℚ(n) of univariate rational functions.
pub type UniRatFun = RatFun<Q>;

/// The field ℚ(n)(k): rational functions in k over ℚ(n).
pub type KRatFun = RatFun<UniRatFun>;

/// A reduced rational function num/den with monic den (den = 1 for
/// polynomials, num = 0 exactly for the zero element).
#[derive(Clone, PartialEq)]
pub struct RatFun<C: Coeff> {
    num: Poly<C>,
    den: Poly<C>,
}

// RatFun inherits the default monic-Euclid polynomial gcd; its own
// coefficient ops reduce through the (PRS-backed) base-field gcd, which is
// what keeps the tower tractable.
impl<C: Coeff> Coeff for RatFun<C> {}

impl<C: Coeff> RatFun<C> {
    /// Build and reduce. Panics if `den` is the zero polynomial.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides num");
        let den = den.exact_div(&g).expect("gcd divides den");
        let inv_lc = C::one() / den.lc().expect("nonzero den").clone();
        RatFun {
            num: num.scale(&inv_lc),
            den: den.scale(&inv_lc),
        }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_const(v: C) -> Self {
        Self::from_poly(Poly::constant(v))
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    /// True when the denominator is 1 (a polynomial in disguise).
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at a point of the coefficient field; `None` at a pole.
    pub fn eval(&self, x: &C) -> Option<C> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Substitute the variable x → x + c.
    pub fn shift(&self, c: &C) -> Self {
        RatFun::new(self.num.shift(c), self.den.shift(c))
    }
}

impl<C: Coeff> Zero for RatFun<C> {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Coeff> One for RatFun<C> {
    fn one() -> Self {
        RatFun::from_const(C::one())
    }
}

impl<C: Coeff> Add for RatFun<C> {
    type Output = RatFun<C>;
    fn add(self, rhs: Self) -> Self {
        RatFun::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<C: Coeff> Sub for RatFun<C> {
    type Output = RatFun<C>;
    fn sub(self, rhs: Self) -> Self {
        RatFun::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<C: Coeff> Mul for RatFun<C> {
    type Output = RatFun<C>;
    fn mul(self, rhs: Self) -> Self {
        // Cross-reduce before multiplying to keep degrees down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFun::new(n1.mul(&n2), d1.mul(&d2))
    }
}

impl<C: Coeff> Div for RatFun<C> {
    type Output = RatFun<C>;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<C: Coeff> Neg for RatFun<C> {
    type Output = RatFun<C>;
    fn neg(self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<C: Coeff> fmt::Debug for RatFun<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl UniRatFun {
    /// Render with an explicit variable name: `"(n + 1) / (n)"` style.
    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.is_polynomial() {
            fmt_poly(&self.num, var)
        } else {
            format!(
                "({}) / ({})",
                fmt_poly(&self.num, var),
                fmt_poly(&self.den, var)
            )
        }
    }
}

impl fmt::Display for UniRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with_var("n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    fn nf(num: &[i64], den: &[i64]) -> UniRatFun {
        UniRatFun::new(
            Poly::new(num.iter().map(|&v| qi(v)).collect()),
            Poly::new(den.iter().map(|&v| qi(v)).collect()),
        )
    }

    #[test]
    fn reduction_is_canonical() {
        // (n^2 - 1)/(n - 1) reduces to n + 1
        let a = nf(&[-1, 0, 1], &[-1, 1]);
        assert!(a.is_polynomial());
        assert_eq!(a, nf(&[1, 1], &[1]));
        // denominator comes out monic: (2n)/(2n+2) = n/(n+1)
        let b = nf(&[0, 2], &[2, 2]);
        assert_eq!(b.num(), &Poly::new(vec![qi(0), qi(1)]));
        assert_eq!(b.den(), &Poly::new(vec![qi(1), qi(1)]));
    }

    #[test]
    fn field_ops() {
        let a = nf(&[1], &[0, 1]); // 1/n
        let b = nf(&[1], &[1, 1]); // 1/(n+1)
        let s = a.clone() + b.clone(); // (2n+1)/(n(n+1))
        assert_eq!(s, nf(&[1, 2], &[0, 1, 1]));
        let p = a.clone() * b.clone();
        assert_eq!(p, nf(&[1], &[0, 1, 1]));
        let d = a.clone() / b.clone(); // (n+1)/n
        assert_eq!(d, nf(&[1, 1], &[0, 1]));
        assert_eq!(a.clone() - a.clone(), UniRatFun::zero());
        assert_eq!(b.clone() * b.inv(), UniRatFun::one());
    }

    #[test]
    fn eval_and_poles() {
        let a = nf(&[1], &[0, 1]); // 1/n
        assert_eq!(a.eval(&qi(4)), Some(q(1, 4)));
        assert_eq!(a.eval(&qi(0)), None);
    }

    #[test]
    fn tower_field_over_ratfun() {
        // Working in ℚ(n)(k): ((k+n)(k+1)) / (k+n) reduces to k + 1.
        let n = UniRatFun::from_poly(Poly::new(vec![qi(0), qi(1)]));
        let kpn = Poly::new(vec![n.clone(), UniRatFun::one()]);
        let kp1 = Poly::new(vec![UniRatFun::one(), UniRatFun::one()]);
        let f = KRatFun::new(kpn.mul(&kp1), kpn.clone());
        assert_eq!(f, KRatFun::from_poly(kp1.clone()));

        // gcd in ℚ(n)[k] is monic in k.
        let g = kpn.mul(&kp1).gcd(&kpn);
        assert_eq!(g, kpn);

        // field axioms spot-check
        let a = KRatFun::new(kp1.clone(), kpn.clone());
        let b = KRatFun::new(kpn.clone(), Poly::one());
        assert_eq!(a.clone() * b.clone() / b.clone(), a);
        assert_eq!(
            a.clone() + b.clone() - b,
            a
        );
    }
}
