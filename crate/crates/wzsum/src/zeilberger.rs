//! Creative telescoping (Zeilberger's algorithm) and recurrence
//! normalization.
//!
//! For a proper hypergeometric term t(n,k) this module finds the minimal
//! recurrence Σ_i a_i(n)·t(n+i,k) = G(n,k+1) − G(n,k) with a rational
//! certificate R = G/t, verifies such certificates exactly, and converts
//! order-1 recurrences into the Pochhammer-form weight c(n) that turns the
//! recurrence operator into N − 1 (the shape a summand needs for a WZ
//! pair).
//!
//! Key components:
//! - [`Telescoper`]: the recurrence coefficients plus certificate, kept
//!   primitive (no common factor, positive leading coefficient on the top
//!   coefficient).
//! - [`zeilberger`] / [`zeilberger_from_quotients`]: the order-ascending
//!   parameterized-Gosper search.
//! - [`certify`] / [`certify_quotients`]: exact verification of the
//!   telescoping identity as a rational-function identity.
//! - [`Multiplier`] and [`normalize_first_order`]: the weight
//!   c(n) = const·zⁿ·∏(αᵢ)ₙ/∏(βⱼ)ₙ with c(n+1)/c(n) = −a₁(n)/a₀(n), so
//!   that c·t telescopes with operator N − 1. A factor nᵐ is split off and
//!   reported separately (it is not a Pochhammer and shifts the summation
//!   base point).
//! - [`apply_multiplier`]: rebuild the weighted term c(n)·nᵐ·t.
//!
//! Convention note: summing the order-1 recurrence over k gives
//! S(n+1)/S(n) = −a₀(n)/a₁(n) for the k-sum S. The weight direction is the
//! reciprocal — c must cancel the growth of S — which is why the multiplier
//! uses −a₁/a₀. (A Pascal-row sum S(n) = 2ⁿ needs the weight (1/2)ⁿ, not
//! 2ⁿ.)

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::bipoly::{poly_gcd, BiPoly, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::linsys::nullspace;
use crate::poly::{dispersion_set, fmt_poly, Poly};
use crate::rat::{fmt_q, qi, Q};
use crate::ratfun::UniRatFun;
use crate::term::{shift_quotient, HypergeometricTerm, PochFactor, Position};

// ---- Domain types ----

/// A telescoping recurrence Σ_i coeffs[i]·t(n+i,k) = Δ_k(certificate·t).
///
/// Invariants: `coeffs.len() == order + 1`; the top coefficient is nonzero;
/// the tuple is primitive (no common polynomial or rational factor) with
/// the top coefficient's leading coefficient positive; the identity holds
/// exactly (checked by [`certify`] before a value is handed out).
#[derive(Clone, Debug)]
pub struct Telescoper {
    pub order: u32,
    pub coeffs: Vec<Poly<Q>>,
    pub certificate: RationalFunction,
}

impl Telescoper {
    /// S(n+1)/S(n) = −a₀(n)/a₁(n) for the summed recurrence; order 1 only.
    pub fn first_order_sum_ratio(&self) -> Option<UniRatFun> {
        if self.order != 1 {
            return None;
        }
        Some(UniRatFun::new(
            self.coeffs[0].scale(&-Q::one()),
            self.coeffs[1].clone(),
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(|p| fmt_poly(p, "n")).collect::<Vec<_>>(),
            "certificate": self.certificate.to_string(),
        })
    }
}

/// Pochhammer-form weight c(n) = const·zⁿ·∏(αᵢ)ₙ / ∏(βⱼ)ₙ; all bases are
/// positive rationals, so c has no pole or zero on n ≥ 0, and c(0) = const.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    pub z: Q,
    pub num_poch: Vec<Q>,
    pub den_poch: Vec<Q>,
    pub constant: Q,
}

impl Multiplier {
    /// Exact value c(n).
    pub fn value_at(&self, n: u64) -> Q {
        let mut v = self.constant.clone();
        let mut zpow = Q::one();
        let mut num = Q::one();
        let mut den = Q::one();
        for i in 0..n {
            zpow = zpow * &self.z;
            let iq = qi(i as i64);
            for a in &self.num_poch {
                num = num * (a + &iq);
            }
            for b in &self.den_poch {
                den = den * (b + &iq);
            }
        }
        v = v * zpow * num / den;
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "z": fmt_q(&self.z),
            "num_poch": self.num_poch.iter().map(fmt_q).collect::<Vec<_>>(),
            "den_poch": self.den_poch.iter().map(fmt_q).collect::<Vec<_>>(),
            "const": fmt_q(&self.constant),
        })
    }
}

impl std::fmt::Display for Multiplier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |v: &[Q]| {
            v.iter()
                .map(|b| format!("({})_n", fmt_q(b)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "({})^n", fmt_q(&self.z))?;
        if !self.num_poch.is_empty() {
            write!(f, " · {}", list(&self.num_poch))?;
        }
        if !self.den_poch.is_empty() {
            write!(f, " / [{}]", list(&self.den_poch))?;
        }
        if !self.constant.is_one() {
            write!(f, " · {}", fmt_q(&self.constant))?;
        }
        Ok(())
    }
}

// ---- Zeilberger search ----

/// Minimal-order telescoper of a hypergeometric term, searching orders
/// 1..=max_order. The returned value is certified exact.
pub fn zeilberger(t: &HypergeometricTerm, max_order: u32) -> Result<Telescoper> {
    let qn = shift_quotient(t, Var::N);
    let qk = shift_quotient(t, Var::K);
    zeilberger_from_quotients(&qn, &qk, max_order)
}

/// Same as [`zeilberger`], but starting from the shift quotients
/// q_n = t(n+1,k)/t(n,k) and q_k = t(n,k+1)/t(n,k) directly — useful for
/// terms that fall outside the Pochhammer-product representation.
pub fn zeilberger_from_quotients(
    qn: &RationalFunction,
    qk: &RationalFunction,
    max_order: u32,
) -> Result<Telescoper> {
    if max_order < 1 {
        return Err(Error::InvalidInput(
            "telescoper search needs max_order >= 1".into(),
        ));
    }
    for order in 1..=max_order {
        if let Some((coeffs, certificate)) = telescoper_at_order(qn, qk, order) {
            let tel = Telescoper {
                order,
                coeffs,
                certificate,
            };
            if !certify_quotients(qn, qk, &tel) {
                return Err(Error::Unsupported(format!(
                    "internal: certificate failed exact validation at order {}",
                    order
                )));
            }
            return Ok(tel);
        }
    }
    Err(Error::NoTelescoper { max_order })
}

/// The parameterized-Gosper step at one fixed order; `None` when no
/// nonzero coefficient vector admits a polynomial Gosper solution.
fn telescoper_at_order(
    qn: &RationalFunction,
    qk: &RationalFunction,
    order: u32,
) -> Option<(Vec<Poly<Q>>, RationalFunction)> {
    // Shift ratios Q_i = t(n+i,k)/t(n,k) = ∏_{j<i} q_n(n+j,k).
    let mut shift_ratios = vec![RationalFunction::one()];
    for i in 0..order {
        let next = shift_ratios[i as usize].mul(&qn.shift(Var::N, &qi(i as i64)));
        shift_ratios.push(next);
    }
    // Common denominator s and numerators p_i of the combined summand
    // Σ a_i·Q_i = (Σ a_i·p_i)/s.
    let mut s = BiPoly::one();
    for r in &shift_ratios {
        let g = poly_gcd(&s, r.den());
        s = s.mul(&r.den().exact_div(&g).expect("gcd divides"));
    }
    let ps: Vec<BiPoly> = shift_ratios
        .iter()
        .map(|r| r.num().mul(&s.exact_div(r.den()).expect("lcm part divides")))
        .collect();

    // The parameter-free part of the k-ratio of the combined summand:
    // ρ(k) = q_k·s(k)/s(k+1), decomposed Gosper-style into A/B·C(k+1)/C(k)
    // with gcd(A(k), B(k+j)) constant for all j ≥ 0.
    let s_next = s.shift(Var::K, &Q::one());
    let rho = qk.mul(&RationalFunction::new(s.clone(), s_next));
    let mut big_a = rho.num().clone();
    let mut big_b = rho.den().clone();
    let mut big_c = BiPoly::one();
    for j in bivariate_dispersion(&big_a, &big_b) {
        let g = poly_gcd(&big_a, &big_b.shift(Var::K, &qi(j)));
        if g.degree(Var::K).unwrap_or(0) == 0 {
            continue;
        }
        big_a = big_a.exact_div(&g).expect("gcd divides");
        big_b = big_b
            .exact_div(&g.shift(Var::K, &qi(-j)))
            .expect("shifted gcd divides");
        for i in 1..=j {
            big_c = big_c.mul(&g.shift(Var::K, &qi(-i)));
        }
    }
    let b_back = big_b.shift(Var::K, &-Q::one());

    // Degree bound in k for the unknown polynomial x(k) in
    // A·x(k+1) − B(k−1)·x(k) = C·Σ a_i·p_i.
    let deg_k = |p: &BiPoly| p.degree(Var::K).map(|d| d as i64);
    let deg_rhs = deg_k(&big_c).unwrap_or(0)
        + ps.iter().filter_map(deg_k).max().expect("p_i nonzero");
    let splus = big_a.add(&b_back);
    let sminus = big_a.sub(&b_back);
    let d = match (deg_k(&splus), deg_k(&sminus)) {
        (None, Some(lm)) => deg_rhs - lm,
        (None, None) => return None,
        (Some(lp), lm) => {
            if lm >= Some(lp) {
                deg_rhs - lm.unwrap()
            } else {
                // Degenerate cancellation: deg x = −2v/u is possible only
                // when v is a constant multiple of u.
                let mut d = deg_rhs - lp + 1;
                let u = splus.k_coeffs().pop().expect("nonzero");
                let v = sminus
                    .k_coeffs()
                    .get((lp - 1).max(0) as usize)
                    .cloned()
                    .unwrap_or_else(Poly::zero);
                if lp >= 1 {
                    if v.is_zero() {
                        d = d.max(0);
                    } else if let Some(lambda) = v.exact_div(&u) {
                        if lambda.degree() == Some(0) {
                            let root = -qi(2) * lambda.coeff(0);
                            if root.is_integer() && !root.is_negative() {
                                d = d.max(
                                    i64::try_from(root.to_integer()).unwrap_or(i64::MAX),
                                );
                            }
                        }
                    }
                }
                d
            }
        }
    };
    if d < 0 {
        return None;
    }

    // Homogeneous linear system over ℚ(n) in the unknowns
    // (x_0..x_d, a_0..a_J): match coefficients of every power of k.
    let nx = (d + 1) as usize;
    let k_plus_one = BiPoly::affine(Q::one(), Q::zero(), Q::one());
    let k_var = BiPoly::var(Var::K);
    let mut columns: Vec<Vec<Poly<Q>>> = Vec::with_capacity(nx + ps.len());
    for i in 0..nx {
        let col = big_a
            .mul(&k_plus_one.pow(i as u32))
            .sub(&b_back.mul(&k_var.pow(i as u32)));
        columns.push(col.k_coeffs());
    }
    for p in &ps {
        columns.push(big_c.mul(p).neg().k_coeffs());
    }
    let height = columns.iter().map(Vec::len).max().unwrap_or(0);
    let rows: Vec<Vec<UniRatFun>> = (0..height)
        .map(|r| {
            columns
                .iter()
                .map(|col| {
                    UniRatFun::from_poly(col.get(r).cloned().unwrap_or_else(Poly::zero))
                })
                .collect()
        })
        .collect();
    let weight = |f: &UniRatFun| {
        f.num().degree().unwrap_or(0) + f.den().degree().unwrap_or(0)
    };
    let basis = nullspace(rows, weight);

    // Among solutions with a usable coefficient vector (top coefficient
    // nonzero), normalize each to a primitive tuple and keep the one with
    // the smallest total degree; ties fall to the earliest basis vector.
    let mut best: Option<(Vec<Poly<Q>>, RationalFunction, i64)> = None;
    for v in &basis {
        let a_part = &v[nx..];
        if a_part.last().map_or(true, Zero::is_zero) {
            continue;
        }
        let (coeffs, gamma) = primitive_tuple(a_part);
        let total: i64 = coeffs.iter().map(Poly::deg_i).sum();
        if best.as_ref().is_some_and(|(_, _, t)| *t <= total) {
            continue;
        }
        // Certificate R = γ·B(k−1)·x(k)/(C·s), scaled by the same γ that
        // made the tuple primitive (the identity is linear in (a, R)).
        let mut x = RationalFunction::zero();
        for (i, xi) in v[..nx].iter().enumerate() {
            let term = rf_from_uni(xi).mul(&RationalFunction::from_bipoly(
                k_var.pow(i as u32),
            ));
            x = x.add(&term);
        }
        let certificate = RationalFunction::from_bipoly(b_back.clone())
            .mul(&x)
            .div(&RationalFunction::from_bipoly(big_c.mul(&s)))
            .mul(&rf_from_uni(&gamma));
        best = Some((coeffs, certificate, total));
    }
    best.map(|(coeffs, cert, _)| (coeffs, cert))
}

/// Dispersion candidates for bivariate A, B: specialize n at an integer
/// that keeps both leading k-coefficients nonzero (so no true dispersion
/// value is lost), and read the univariate dispersion set there. Spurious
/// candidates are filtered by the exact bivariate gcd at the call site.
fn bivariate_dispersion(a: &BiPoly, b: &BiPoly) -> Vec<i64> {
    if a.degree(Var::K).unwrap_or(0) == 0 || b.degree(Var::K).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let la = a.k_coeffs().pop().expect("nonzero");
    let lb = b.k_coeffs().pop().expect("nonzero");
    let mut n0 = Q::zero();
    while la.eval(&n0).is_zero() || lb.eval(&n0).is_zero() {
        n0 = n0 + Q::one();
    }
    let specialize = |p: &BiPoly| -> Poly<Q> {
        Poly::new(p.k_coeffs().iter().map(|c| c.eval(&n0)).collect())
    };
    dispersion_set(&specialize(a), &specialize(b))
}

/// Scale a ℚ(n)-vector to a primitive polynomial tuple: clear denominators,
/// remove the common polynomial factor and joint rational content, and make
/// the top entry's leading coefficient positive. Returns the tuple and the
/// overall factor γ applied to the input.
fn primitive_tuple(raw: &[UniRatFun]) -> (Vec<Poly<Q>>, UniRatFun) {
    // Common denominator.
    let mut l: Poly<Q> = Poly::one();
    for f in raw {
        let g = l.gcd(f.den());
        l = l.mul(&f.den().exact_div(&g).expect("gcd divides"));
    }
    let cleared: Vec<Poly<Q>> = raw
        .iter()
        .map(|f| f.num().mul(&l.exact_div(f.den()).expect("lcm part divides")))
        .collect();
    // Common polynomial factor.
    let mut content: Poly<Q> = Poly::zero();
    for p in &cleared {
        content = content.gcd(p);
    }
    let mut tuple: Vec<Poly<Q>> = cleared
        .iter()
        .map(|p| p.exact_div(&content).expect("content divides"))
        .collect();
    // Joint rational content and sign, via the primitive-integer form of
    // the concatenated coefficient list.
    let mut all = Poly::zero();
    let stride = tuple.iter().map(|p| p.deg_i() + 1).max().unwrap_or(0).max(1) as usize;
    for (i, p) in tuple.iter().enumerate() {
        for j in 0..stride {
            let c = p.coeff(j);
            if !c.is_zero() {
                all = all.add(&Poly::monomial(c, i * stride + j));
            }
        }
    }
    let (_, mut sigma_inv) = all.primitive_integer();
    // The concatenation ends with lc(a_J), so the content already carries
    // its sign; the guard keeps the invariant explicit.
    let target = tuple.last().expect("nonempty tuple");
    let lc_after = target.lc().expect("top coefficient nonzero") / &sigma_inv;
    if lc_after.is_negative() {
        sigma_inv = -sigma_inv;
    }
    let sigma = Q::one() / sigma_inv;
    for p in tuple.iter_mut() {
        *p = p.scale(&sigma);
    }
    // γ = σ·l/content.
    let gamma = UniRatFun::new(l.scale(&sigma), content);
    (tuple, gamma)
}

/// Embed a univariate rational function of n into the bivariate field.
fn rf_from_uni(f: &UniRatFun) -> RationalFunction {
    RationalFunction::new(
        BiPoly::from_uni(f.num(), Var::N),
        BiPoly::from_uni(f.den(), Var::N),
    )
}

// ---- Certification ----

/// Exact check of the telescoping identity for a term given by quotients:
/// Σ_i a_i(n)·Q_i(n,k) = R(n,k+1)·q_k(n,k) − R(n,k), where
/// Q_i = ∏_{j<i} q_n(n+j,k). Dividing the telescoping identity by t makes
/// this a pure rational-function identity.
pub fn certify_quotients(
    qn: &RationalFunction,
    qk: &RationalFunction,
    tel: &Telescoper,
) -> bool {
    if tel.coeffs.len() != tel.order as usize + 1
        || tel.coeffs.last().map_or(true, Poly::is_zero)
    {
        return false;
    }
    let mut lhs = RationalFunction::zero();
    let mut shift_ratio = RationalFunction::one();
    for (i, a) in tel.coeffs.iter().enumerate() {
        if i > 0 {
            shift_ratio = shift_ratio.mul(&qn.shift(Var::N, &qi(i as i64 - 1)));
        }
        let a_rf = RationalFunction::from_bipoly(BiPoly::from_uni(a, Var::N));
        lhs = lhs.add(&a_rf.mul(&shift_ratio));
    }
    let rhs = tel
        .certificate
        .shift(Var::K, &Q::one())
        .mul(qk)
        .sub(&tel.certificate);
    lhs == rhs
}

/// [`certify_quotients`] with the quotients derived from the term.
pub fn certify(t: &HypergeometricTerm, tel: &Telescoper) -> bool {
    certify_quotients(&shift_quotient(t, Var::N), &shift_quotient(t, Var::K), tel)
}

// ---- First-order normalization ----

/// Convert an order-1 telescoper into the weight c(n) with
/// c(n+1)/c(n) = −a₁(n)/a₀(n) and c(0) = 1, so the weighted term's k-sum
/// is constant in n (operator N − 1). Returns the Pochhammer-form
/// multiplier together with the power m of the split-off factor nᵐ
/// (`c_full(n) = nᵐ·c(n)`); m > 0 happens exactly when a₀ vanishes at
/// n = 0, where the plain Pochhammer form would need the illegal base 0.
pub fn normalize_first_order(tel: &Telescoper) -> Result<(Multiplier, u32)> {
    if tel.order != 1 {
        return Err(Error::OrderTooHigh { order: tel.order });
    }
    let a0 = &tel.coeffs[0];
    let a1 = &tel.coeffs[1];
    let (roots0, residual0) = a0.rational_roots();
    if residual0.degree() > Some(0) {
        return Err(Error::NonlinearFactor {
            residual: fmt_poly(&residual0, "n"),
        });
    }
    let (roots1, residual1) = a1.rational_roots();
    if residual1.degree() > Some(0) {
        return Err(Error::NonlinearFactor {
            residual: fmt_poly(&residual1, "n"),
        });
    }

    // z = −lc(a₁)/lc(a₀) once both are written as products of monic linear
    // factors; the residuals carry exactly those leading coefficients.
    let z = -residual1.coeff(0) / residual0.coeff(0);

    // Root ρ of a₁ contributes numerator base −ρ; roots of a₀ feed the
    // denominator. A root 0 of a₀ cannot become a Pochhammer base: it is
    // split off as n^m, and the matching (n+1)^m in the ratio
    // c(n+1)/c(n) = −a₁/a₀ adds m denominator bases 1.
    let mut num_bases: Vec<Q> = Vec::new();
    for (root, mult) in &roots1 {
        for _ in 0..*mult {
            num_bases.push(-root.clone());
        }
    }
    let mut n_power = 0u32;
    let mut den_bases: Vec<Q> = Vec::new();
    for (root, mult) in &roots0 {
        if root.is_zero() {
            n_power = *mult;
            for _ in 0..*mult {
                den_bases.push(Q::one());
            }
        } else {
            for _ in 0..*mult {
                den_bases.push(-root.clone());
            }
        }
    }

    // Cancel bases shared between the two sides before rejecting any.
    let mut i = 0;
    while i < num_bases.len() {
        if let Some(j) = den_bases.iter().position(|b| b == &num_bases[i]) {
            den_bases.remove(j);
            num_bases.remove(i);
        } else {
            i += 1;
        }
    }
    for b in num_bases.iter().chain(den_bases.iter()) {
        if !b.is_positive() {
            return Err(Error::BadPochBase { base: fmt_q(b) });
        }
    }
    num_bases.sort();
    den_bases.sort();
    Ok((
        Multiplier {
            z,
            num_poch: num_bases,
            den_poch: den_bases,
            constant: Q::one(),
        },
        n_power,
    ))
}

/// The weighted term nᵐ·c(n)·t for a multiplier produced by
/// [`normalize_first_order`].
pub fn apply_multiplier(
    t: &HypergeometricTerm,
    m: &Multiplier,
    n_power: u32,
) -> HypergeometricTerm {
    let mut out = t.clone();
    out.constant = out.constant * &m.constant;
    out.ratio_z = out.ratio_z * &m.z;
    let push_bases = |bases: &[Q], pos: Position, out: &mut HypergeometricTerm| {
        let mut idx = 0;
        while idx < bases.len() {
            let mut mult = 1;
            while idx + mult < bases.len() && bases[idx + mult] == bases[idx] {
                mult += 1;
            }
            out.poch
                .push(PochFactor::in_n(bases[idx].clone(), pos, mult as u32));
            idx += mult;
        }
    };
    push_bases(&m.num_poch, Position::Numerator, &mut out);
    push_bases(&m.den_poch, Position::Denominator, &mut out);
    if n_power > 0 {
        out.prefactor = out
            .prefactor
            .mul(&RationalFunction::from_bipoly(BiPoly::var(Var::N).pow(n_power)));
    }
    out
}

// ---- Tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;
    use crate::term::eval_exact;

    /// q_n and q_k of t(n,k) = binomial(n,k).
    fn binomial_quotients() -> (RationalFunction, RationalFunction) {
        // t(n+1,k)/t(n,k) = (n+1)/(n+1−k), t(n,k+1)/t(n,k) = (n−k)/(k+1)
        let qn = RationalFunction::new(
            BiPoly::affine(qi(1), qi(1), qi(0)),
            BiPoly::affine(qi(1), qi(1), qi(-1)),
        );
        let qk = RationalFunction::new(
            BiPoly::affine(qi(0), qi(1), qi(-1)),
            BiPoly::affine(qi(1), qi(0), qi(1)),
        );
        (qn, qk)
    }

    fn linear(c0: i64, c1: i64) -> Poly<Q> {
        Poly::new(vec![qi(c0), qi(c1)])
    }

    #[test]
    fn binomial_row_telescopes_at_order_one() {
        let (qn, qk) = binomial_quotients();
        let tel = zeilberger_from_quotients(&qn, &qk, 3).unwrap();
        assert_eq!(tel.order, 1);
        assert_eq!(tel.coeffs, vec![Poly::constant(qi(-2)), Poly::one()]);
        // R = k/(k−n−1), canonically −k / (n−k+1).
        let expected = RationalFunction::new(
            BiPoly::affine(qi(0), qi(0), qi(-1)),
            BiPoly::affine(qi(1), qi(1), qi(-1)),
        );
        assert_eq!(tel.certificate, expected);
        assert!(certify_quotients(&qn, &qk, &tel));
        // Summed ratio: Pascal rows double.
        let ratio = tel.first_order_sum_ratio().unwrap();
        assert_eq!(ratio, UniRatFun::from_const(qi(2)));
    }

    #[test]
    fn perturbed_certificate_fails() {
        let (qn, qk) = binomial_quotients();
        let mut tel = zeilberger_from_quotients(&qn, &qk, 3).unwrap();
        tel.certificate = tel.certificate.add(&RationalFunction::one());
        assert!(!certify_quotients(&qn, &qk, &tel));
    }

    #[test]
    fn certify_is_scale_invariant() {
        let (qn, qk) = binomial_quotients();
        let tel = zeilberger_from_quotients(&qn, &qk, 3).unwrap();
        // Multiply all a_i and R by the same nonzero rational function.
        let scale_poly = Poly::new(vec![qi(5), qi(3)]); // 3n + 5
        let scaled = Telescoper {
            order: tel.order,
            coeffs: tel.coeffs.iter().map(|p| p.mul(&scale_poly)).collect(),
            certificate: tel.certificate.mul(&RationalFunction::from_bipoly(
                BiPoly::from_uni(&scale_poly, Var::N),
            )),

        };
        assert!(certify_quotients(&qn, &qk, &scaled));
    }

    #[test]
    fn weight_makes_pascal_rows_constant() {
        // (a₀, a₁) = (−2, 1): S(n) = 2ⁿ, so the weight must be (1/2)ⁿ —
        // the reweighted sum Σ_k binomial(n,k)/2ⁿ = 1 is constant.
        let tel = Telescoper {
            order: 1,
            coeffs: vec![Poly::constant(qi(-2)), Poly::one()],
            certificate: RationalFunction::zero(),
        };
        let (m, n_power) = normalize_first_order(&tel).unwrap();
        assert_eq!(n_power, 0);
        assert_eq!(m.z, q(1, 2));
        assert!(m.num_poch.is_empty());
        assert!(m.den_poch.is_empty());
        assert!(m.value_at(0).is_one());
    }

    #[test]
    fn pochhammer_weight_from_linear_coefficients() {
        // a₁ = n+1, a₀ = −(n+1/2): c(n+1)/c(n) = (n+1)/(n+1/2), i.e.
        // c(n) = (1)ₙ/(1/2)ₙ with z = 1.
        let tel = Telescoper {
            order: 1,
            coeffs: vec![
                Poly::new(vec![q(-1, 2), qi(-1)]),
                linear(1, 1),
            ],
            certificate: RationalFunction::zero(),
        };
        let (m, n_power) = normalize_first_order(&tel).unwrap();
        assert_eq!(n_power, 0);
        assert!(m.z.is_one());
        assert_eq!(m.num_poch, vec![qi(1)]);
        assert_eq!(m.den_poch, vec![q(1, 2)]);
        // Ratio property: c(n+1)/c(n) = −a₁(n)/a₀(n) for small n.
        for n in 0..8 {
            let lhs = m.value_at(n + 1) / m.value_at(n);
            let nq = qi(n as i64);
            let rhs = -tel.coeffs[1].eval(&nq) / tel.coeffs[0].eval(&nq);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn five_f_four_shape_weight() {
        // a₀ = 3(2n+3)²(3n+2)(3n+4)(4n+3)(4n+5), a₁ = 512(n+1)⁵(2n+1):
        // z = −1024/1728 = −16/27 with the displayed Pochhammer bases.
        let a0 = Poly::constant(qi(3))
            .mul(&linear(3, 2).pow(2))
            .mul(&linear(2, 3))
            .mul(&linear(4, 3))
            .mul(&linear(3, 4))
            .mul(&linear(5, 4));
        let a1 = Poly::constant(qi(512))
            .mul(&linear(1, 1).pow(5))
            .mul(&linear(1, 2));
        let tel = Telescoper {
            order: 1,
            coeffs: vec![a0, a1],
            certificate: RationalFunction::zero(),
        };
        let (m, n_power) = normalize_first_order(&tel).unwrap();
        assert_eq!(n_power, 0);
        assert_eq!(m.z, q(-16, 27));
        assert_eq!(m.num_poch, vec![q(1, 2), qi(1), qi(1), qi(1), qi(1), qi(1)]);
        assert_eq!(
            m.den_poch,
            vec![q(2, 3), q(3, 4), q(5, 4), q(4, 3), q(3, 2), q(3, 2)]
        );
        assert!(m.value_at(0).is_one());
    }

    #[test]
    fn vanishing_a0_splits_off_a_power_of_n() {
        // a₀ = −512n²(n+1)³, a₁ = 3(2n+1)³(3n+1)(3n+2): the n² factor
        // cannot be a Pochhammer; it comes back as n_power = 2 plus two
        // denominator bases 1.
        let a0 = Poly::constant(qi(-512))
            .mul(&Poly::<Q>::x().pow(2))
            .mul(&linear(1, 1).pow(3));
        let a1 = Poly::constant(qi(3))
            .mul(&linear(1, 2).pow(3))
            .mul(&linear(1, 3))
            .mul(&linear(2, 3));
        let tel = Telescoper {
            order: 1,
            coeffs: vec![a0, a1],
            certificate: RationalFunction::zero(),
        };
        let (m, n_power) = normalize_first_order(&tel).unwrap();
        assert_eq!(n_power, 2);
        assert_eq!(m.z, q(27, 64));
        assert_eq!(
            m.num_poch,
            vec![q(1, 3), q(1, 2), q(1, 2), q(1, 2), q(2, 3)]
        );
        assert_eq!(m.den_poch, vec![qi(1); 5]);
    }

    #[test]
    fn nonlinear_and_nonpositive_failures() {
        let quad = Poly::new(vec![qi(1), qi(0), qi(1)]); // n² + 1
        let tel = Telescoper {
            order: 1,
            coeffs: vec![quad, Poly::one()],
            certificate: RationalFunction::zero(),
        };
        assert!(matches!(
            normalize_first_order(&tel),
            Err(Error::NonlinearFactor { .. })
        ));

        // a₁ = n − 1 has root +1 → numerator base −1: pole on the range.
        let tel = Telescoper {
            order: 1,
            coeffs: vec![linear(2, 1).scale(&-Q::one()), linear(-1, 1)],
            certificate: RationalFunction::zero(),
        };
        assert!(matches!(
            normalize_first_order(&tel),
            Err(Error::BadPochBase { .. })
        ));
    }

    #[test]
    fn reweighted_term_evaluates_as_product() {
        // t = 4ⁿ·(geometric in n); weight z = 1/2 with bases (1/2)ₙ/(1)ₙ
        // and an n¹ prefactor: the weighted term must equal the product at
        // every sample point.
        let mut t = HypergeometricTerm::unit();
        t.ratio_z = qi(4);
        let m = Multiplier {
            z: q(1, 2),
            num_poch: vec![q(1, 2)],
            den_poch: vec![qi(1)],
            constant: Q::one(),
        };
        let weighted = apply_multiplier(&t, &m, 1);
        weighted.validate().unwrap();
        for n in 0..7 {
            let expected =
                eval_exact(&t, n, 0).unwrap() * m.value_at(n as u64) * qi(n);
            assert_eq!(eval_exact(&weighted, n, 0).unwrap(), expected);
        }
    }

    #[test]
    fn telescoper_json_shape() {
        let (qn, qk) = binomial_quotients();
        let tel = zeilberger_from_quotients(&qn, &qk, 3).unwrap();
        let j = tel.to_json();
        assert_eq!(j["order"], 1);
        assert_eq!(j["coeffs"].as_array().unwrap().len(), 2);
        assert!(j["certificate"].as_str().unwrap().contains('/'));
        let m = Multiplier {
            z: q(-16, 27),
            num_poch: vec![q(1, 2)],
            den_poch: vec![q(3, 2)],
            constant: Q::one(),
        };
        let mj = m.to_json();
        assert_eq!(mj["z"], "-16/27");
        assert_eq!(mj["num_poch"][0], "1/2");
    }
}
