//! Proper hypergeometric terms in (n, k) as explicit products.
//!
//! Key components:
//!
//! - [`PochFactor`] — one Pochhammer symbol `(α + β·n)_v^m` in numerator or
//!   denominator position, with exponent variable v ∈ {n, k};
//! - [`HypergeometricTerm`] — constant · zⁿ · (−1)^k · prefactor(n,k) ·
//!   ∏ Pochhammer factors;
//! - [`shift_quotient`] — T(var+1)/T(var) as a reduced [`RationalFunction`];
//! - [`eval_exact`] / [`eval_float`] — pointwise evaluation, exact or
//!   rounded once onto a decimal scale.
//!
//! Conventions: slopes β are nonnegative integers (this makes the
//! n-direction shift quotient a finite product `(x+β)_k/(x)_k =
//! ∏_{i<β}(x+k+i)/(x+i)`); the factor (a+2k) of the classical kernels lives
//! in the rational prefactor, not as a Pochhammer symbol; and (−1)^k is a
//! dedicated flag so alternating-sign handling stays separate from |z| < 1
//! tail bounds.

use serde_json::{json, Value};

use crate::bigfloat::BigFloat;
use crate::bipoly::{BiPoly, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::rat::{fmt_q, qi, Q};
use num_traits::{One, Zero};

/// Numerator or denominator position of a factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Position {
    Numerator,
    Denominator,
}

/// One Pochhammer factor `((α + β·n))_v` raised to `multiplicity`.
#[derive(Clone, PartialEq, Debug)]
pub struct PochFactor {
    pub base_intercept: Q,
    pub base_slope_n: u32,
    pub exponent_var: Var,
    pub position: Position,
    pub multiplicity: u32,
}

impl PochFactor {
    /// A factor with exponent variable k: `(α + β·n)_k^m`.
    pub fn in_k(base_intercept: Q, base_slope_n: u32, position: Position, multiplicity: u32) -> Self {
        assert!(multiplicity >= 1, "multiplicity must be positive");
        PochFactor {
            base_intercept,
            base_slope_n,
            exponent_var: Var::K,
            position,
            multiplicity,
        }
    }

    /// A factor with exponent variable n: `(α)_n^m` (base must be constant).
    pub fn in_n(base_intercept: Q, position: Position, multiplicity: u32) -> Self {
        assert!(multiplicity >= 1, "multiplicity must be positive");
        PochFactor {
            base_intercept,
            base_slope_n: 0,
            exponent_var: Var::N,
            position,
            multiplicity,
        }
    }

    /// The base as a function of n: α + β·n.
    pub fn base_at(&self, n: &Q) -> Q {
        &self.base_intercept + qi(self.base_slope_n as i64) * n
    }

    /// Render the base: `"1/2"`, `"3*n"`, `"1/2+3*n"`.
    pub fn fmt_base(&self) -> String {
        if self.base_slope_n == 0 {
            fmt_q(&self.base_intercept)
        } else if self.base_intercept.is_zero() {
            format!("{}*n", self.base_slope_n)
        } else {
            format!("{}+{}*n", fmt_q(&self.base_intercept), self.base_slope_n)
        }
    }
}

/// A proper hypergeometric term
/// `constant · zⁿ · (−1)^k · prefactor(n,k) · ∏ (α+βn)_v^±m`.
#[derive(Clone, PartialEq, Debug)]
pub struct HypergeometricTerm {
    pub constant: Q,
    pub ratio_z: Q,
    pub alt_sign_k: bool,
    pub prefactor: RationalFunction,
    pub poch: Vec<PochFactor>,
}

impl HypergeometricTerm {
    /// A bare term with constant 1, z = 1, trivial prefactor.
    pub fn unit() -> Self {
        HypergeometricTerm {
            constant: Q::one(),
            ratio_z: Q::one(),
            alt_sign_k: false,
            prefactor: RationalFunction::one(),
            poch: Vec::new(),
        }
    }

    /// Validate construction invariants (z ≠ 0; n-factors have slope 0).
    pub fn validate(&self) -> Result<()> {
        if self.ratio_z.is_zero() {
            return Err(Error::InvalidInput("geometric ratio z must be nonzero".into()));
        }
        for f in &self.poch {
            if f.exponent_var == Var::N && f.base_slope_n != 0 {
                return Err(Error::InvalidInput(format!(
                    "Pochhammer factor ({})_n must have a constant base",
                    f.fmt_base()
                )));
            }
            if f.multiplicity == 0 {
                return Err(Error::InvalidInput("zero multiplicity factor".into()));
            }
        }
        Ok(())
    }

    /// JSON representation (exact values as strings).
    pub fn to_json(&self) -> Value {
        json!({
            "constant": fmt_q(&self.constant),
            "z": fmt_q(&self.ratio_z),
            "alt_sign_k": self.alt_sign_k,
            "prefactor": self.prefactor.to_string(),
            "poch": self.poch.iter().map(|f| {
                json!({
                    "base": f.fmt_base(),
                    "var": match f.exponent_var { Var::N => "n", Var::K => "k" },
                    "pos": match f.position { Position::Numerator => "num", Position::Denominator => "den" },
                    "mult": f.multiplicity,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// T(..., var+1, ...)/T(..., var, ...) as a reduced rational function.
///
/// Uses `(x)_{k+1} = (x)_k · (x+k)` in the k-direction and
/// `(x+β)_k/(x)_k = ∏_{i=0}^{β−1} (x+k+i)/(x+i)` in the n-direction; the
/// (−1)^k flag contributes −1 to the k-quotient and zⁿ contributes z to the
/// n-quotient. The quotient is formal: poles are the caller's concern at
/// evaluation time.
pub fn shift_quotient(t: &HypergeometricTerm, var: Var) -> RationalFunction {
    let mut num = BiPoly::one();
    let mut den = BiPoly::one();
    // multiply `top/bot` (each raised to the factor's multiplicity) into the
    // quotient, honoring numerator/denominator position
    fn push(
        num: &mut BiPoly,
        den: &mut BiPoly,
        pos: Position,
        top: BiPoly,
        bot: BiPoly,
        mult: u32,
    ) {
        let (t, b) = (top.pow(mult), bot.pow(mult));
        match pos {
            Position::Numerator => {
                *num = num.mul(&t);
                *den = den.mul(&b);
            }
            Position::Denominator => {
                *num = num.mul(&b);
                *den = den.mul(&t);
            }
        }
    }

    match var {
        Var::K => {
            if t.alt_sign_k {
                num = num.scale(&qi(-1));
            }
            for f in &t.poch {
                if f.exponent_var != Var::K {
                    continue;
                }
                // (x)_{k+1}/(x)_k = x + k where x = α + β·n
                let factor = BiPoly::affine(
                    f.base_intercept.clone(),
                    qi(f.base_slope_n as i64),
                    Q::one(),
                );
                push(&mut num, &mut den, f.position, factor, BiPoly::one(), f.multiplicity);
            }
        }
        Var::N => {
            num = num.scale(&t.ratio_z);
            for f in &t.poch {
                match f.exponent_var {
                    Var::N => {
                        // (α)_{n+1}/(α)_n = α + n
                        let factor =
                            BiPoly::affine(f.base_intercept.clone(), Q::one(), Q::zero());
                        push(&mut num, &mut den, f.position, factor, BiPoly::one(), f.multiplicity);
                    }
                    Var::K => {
                        // base at n+1 is (α + βn) + β, so
                        // (x+β)_k/(x)_k = ∏_{i<β} (α + βn + i + k)/(α + βn + i)
                        for i in 0..f.base_slope_n {
                            let top = BiPoly::affine(
                                &f.base_intercept + qi(i as i64),
                                qi(f.base_slope_n as i64),
                                Q::one(),
                            );
                            let bot = BiPoly::affine(
                                &f.base_intercept + qi(i as i64),
                                qi(f.base_slope_n as i64),
                                Q::zero(),
                            );
                            push(&mut num, &mut den, f.position, top, bot, f.multiplicity);
                        }
                    }
                }
            }
        }
    }

    // prefactor(var+1)/prefactor(var)
    let pre_shifted = t.prefactor.shift(var, &Q::one());
    let quotient = RationalFunction::new(num, den);
    quotient.mul(&pre_shifted).div(&t.prefactor)
}

/// Exact rational value of the term at nonnegative integers (n, k).
///
/// A vanishing denominator factor is a pole error naming that factor; a
/// vanishing numerator factor gives an exact 0.
pub fn eval_exact(t: &HypergeometricTerm, n: i64, k: i64) -> Result<Q> {
    if n < 0 || k < 0 {
        return Err(Error::InvalidInput(format!(
            "eval_exact requires nonnegative (n, k), got ({n}, {k})"
        )));
    }
    let nq = qi(n);
    let kq = qi(k);
    let mut value = t.constant.clone();
    value *= crate::rat::q_pow(&t.ratio_z, n)?;
    if t.alt_sign_k && k % 2 == 1 {
        value = -value;
    }
    let pre = t.prefactor.eval(&nq, &kq).ok_or_else(|| {
        Error::Pole(format!("prefactor denominator vanishes at (n, k) = ({n}, {k})"))
    })?;
    value *= pre;

    for f in &t.poch {
        let base = f.base_at(&nq);
        let upto = match f.exponent_var {
            Var::N => n,
            Var::K => k,
        };
        let mut prod = Q::one();
        for i in 0..upto {
            prod *= &base + qi(i);
        }
        match f.position {
            Position::Numerator => {
                for _ in 0..f.multiplicity {
                    value *= &prod;
                }
            }
            Position::Denominator => {
                if prod.is_zero() {
                    return Err(Error::Pole(format!(
                        "denominator factor ({})_{} vanishes at (n, k) = ({n}, {k})",
                        f.fmt_base(),
                        match f.exponent_var {
                            Var::N => "n",
                            Var::K => "k",
                        }
                    )));
                }
                for _ in 0..f.multiplicity {
                    value /= &prod;
                }
            }
        }
    }
    Ok(value)
}

/// Term value rounded once onto `digits` decimal places.
pub fn eval_float(t: &HypergeometricTerm, n: i64, k: i64, digits: u32) -> Result<BigFloat> {
    Ok(BigFloat::from_q(&eval_exact(t, n, k)?, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    /// The Dougall-style kernel A(3/2,1/2,1,1,1,k): prefactor (3/2 + 2k),
    /// numerator (1/2)_k(1)_k³, denominator (2)_k(3/2)_k³.
    fn kernel_a() -> HypergeometricTerm {
        let mut t = HypergeometricTerm::unit();
        t.prefactor = RationalFunction::new(
            BiPoly::affine(q(3, 2), Q::zero(), qi(2)),
            BiPoly::one(),
        );
        t.poch = vec![
            PochFactor::in_k(q(1, 2), 0, Position::Numerator, 1),
            PochFactor::in_k(qi(1), 0, Position::Numerator, 3),
            PochFactor::in_k(qi(2), 0, Position::Denominator, 1),
            PochFactor::in_k(q(3, 2), 0, Position::Denominator, 3),
        ];
        t
    }

    /// U(n,k)-style term with n-dependence: slopes [3,0,1,2,2] on base
    /// (3/2,1/2,1,1,1) — numerator (1/2)_k(1+n)_k(1+2n)_k², denominator
    /// (2+3n)_k(3/2+2n)_k(3/2+n)_k², prefactor (3/2+3n+2k).
    fn term_u42_like() -> HypergeometricTerm {
        let mut t = HypergeometricTerm::unit();
        t.prefactor = RationalFunction::new(
            BiPoly::affine(q(3, 2), qi(3), qi(2)),
            BiPoly::one(),
        );
        t.poch = vec![
            PochFactor::in_k(q(1, 2), 0, Position::Numerator, 1),
            PochFactor::in_k(qi(1), 1, Position::Numerator, 1),
            PochFactor::in_k(qi(1), 2, Position::Numerator, 2),
            PochFactor::in_k(qi(2), 3, Position::Denominator, 1),
            PochFactor::in_k(q(3, 2), 2, Position::Denominator, 1),
            PochFactor::in_k(q(3, 2), 1, Position::Denominator, 2),
        ];
        t
    }

    #[test]
    fn kernel_values() {
        let t = kernel_a();
        assert_eq!(eval_exact(&t, 0, 0).unwrap(), q(3, 2));
        assert_eq!(eval_exact(&t, 0, 1).unwrap(), q(7, 27));
    }

    #[test]
    fn zero_base_numerator_gives_zero() {
        let mut t = HypergeometricTerm::unit();
        t.poch = vec![PochFactor::in_k(qi(0), 0, Position::Numerator, 1)];
        assert_eq!(eval_exact(&t, 0, 0).unwrap(), qi(1)); // (0)_0 = 1
        assert_eq!(eval_exact(&t, 0, 3).unwrap(), qi(0)); // (0)_3 = 0
    }

    #[test]
    fn zero_base_denominator_is_pole() {
        let mut t = HypergeometricTerm::unit();
        t.poch = vec![PochFactor::in_k(qi(0), 0, Position::Denominator, 1)];
        let err = eval_exact(&t, 0, 2).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
        assert!(err.to_string().contains("(0)_k"));
    }

    #[test]
    fn k_quotient_matches_eval() {
        for t in [kernel_a(), term_u42_like()] {
            let qk = shift_quotient(&t, Var::K);
            for n in 0..4i64 {
                for k in 0..6i64 {
                    let lhs = eval_exact(&t, n, k + 1).unwrap();
                    let rhs = eval_exact(&t, n, k).unwrap()
                        * qk.eval(&qi(n), &qi(k)).unwrap();
                    assert_eq!(lhs, rhs, "k-quotient at ({n}, {k})");
                }
            }
        }
    }

    #[test]
    fn n_quotient_matches_eval() {
        let mut t = term_u42_like();
        t.ratio_z = q(-16, 27);
        t.poch.push(PochFactor::in_n(q(1, 2), Position::Numerator, 1));
        t.poch.push(PochFactor::in_n(qi(1), Position::Denominator, 2));
        let qn = shift_quotient(&t, Var::N);
        for n in 0..4i64 {
            for k in 0..5i64 {
                let lhs = eval_exact(&t, n + 1, k).unwrap();
                let rhs =
                    eval_exact(&t, n, k).unwrap() * qn.eval(&qi(n), &qi(k)).unwrap();
                assert_eq!(lhs, rhs, "n-quotient at ({n}, {k})");
            }
        }
    }

    #[test]
    fn alternating_sign_contributes_minus_one() {
        let mut t = HypergeometricTerm::unit();
        t.alt_sign_k = true;
        let qk = shift_quotient(&t, Var::K);
        assert_eq!(qk.eval(&qi(0), &qi(0)).unwrap(), qi(-1));
        assert_eq!(eval_exact(&t, 0, 3).unwrap(), qi(-1));
    }

    #[test]
    fn geometric_ratio_contributes_z() {
        let mut t = HypergeometricTerm::unit();
        t.ratio_z = q(-16, 27);
        let qn = shift_quotient(&t, Var::N);
        assert_eq!(qn.eval(&qi(5), &qi(2)).unwrap(), q(-16, 27));
        assert_eq!(eval_exact(&t, 2, 0).unwrap(), q(256, 729));
    }

    #[test]
    fn pochhammer_recurrence() {
        // (x)_{k+1} = (x)_k (x+k) across random-ish rational bases
        for (num, den) in [(1i64, 2i64), (3, 4), (-5, 3), (7, 1)] {
            let mut t = HypergeometricTerm::unit();
            t.poch = vec![PochFactor::in_k(q(num, den), 0, Position::Numerator, 1)];
            for k in 0..20i64 {
                let lhs = eval_exact(&t, 0, k + 1).unwrap();
                let rhs = eval_exact(&t, 0, k).unwrap() * (q(num, den) + qi(k));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn compatibility_identity() {
        // qn(n, k+1)·qk(n, k) = qk(n+1, k)·qn(n, k) exactly
        let mut t = term_u42_like();
        t.ratio_z = q(-16, 27);
        t.constant = q(3, 7);
        t.alt_sign_k = true;
        let qn = shift_quotient(&t, Var::N);
        let qk = shift_quotient(&t, Var::K);
        let lhs = qn.shift(Var::K, &Q::one()).mul(&qk);
        let rhs = qk.shift(Var::N, &Q::one()).mul(&qn);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn float_rendering() {
        let t = kernel_a();
        let v = eval_float(&t, 0, 1, 30).unwrap();
        assert!(v.to_sci(30).starts_with("2.59259259259259259259259259259"));
        let exact = BigFloat::from_q(&q(9, 64), 10);
        assert_eq!(exact.to_sci(6), "1.40625e-1");
    }

    #[test]
    fn json_shape() {
        let mut t = kernel_a();
        t.ratio_z = q(-16, 27);
        let j = t.to_json();
        assert_eq!(j["z"], "-16/27");
        assert_eq!(j["alt_sign_k"], false);
        assert_eq!(j["poch"][0]["base"], "1/2");
        assert_eq!(j["poch"][0]["pos"], "num");
        let u = term_u42_like().to_json();
        assert_eq!(u["poch"][3]["base"], "2+3*n");
        assert_eq!(u["poch"][3]["pos"], "den");
    }

    #[test]
    fn validation_rejects_bad_terms() {
        let mut t = HypergeometricTerm::unit();
        t.ratio_z = Q::zero();
        assert!(t.validate().is_err());
        let mut t2 = HypergeometricTerm::unit();
        t2.poch = vec![PochFactor {
            base_intercept: qi(1),
            base_slope_n: 2,
            exponent_var: Var::N,
            position: Position::Numerator,
            multiplicity: 1,
        }];
        assert!(t2.validate().is_err());
    }
}
