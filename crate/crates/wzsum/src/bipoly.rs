//! Bivariate polynomials in (n, k) over ℚ and reduced rational functions.
//!
//! Key components:
//!
//! - [`BiPoly`] — sparse bivariate polynomial, keyed by (n-exponent,
//!   k-exponent), canonically ordered graded-lexicographic with n > k;
//! - [`poly_gcd`] — gcd in ℚ[n,k], primitive with positive leading
//!   coefficient under the canonical ordering;
//! - [`RationalFunction`] — the reduced quotient type housing WZ
//!   certificates R(n,k), normalized so that num and den are jointly
//!   integer-primitive and den has positive leading coefficient;
//! - [`rf_simplify`] — the constructor-normalizer for the above.
//!
//! Internally, gcd and exact division route through ℚ(n)[k] (polynomials in
//! k with [`UniRatFun`] coefficients): the monic Euclidean gcd there, split
//! off from the n-content handled by univariate gcds, gives the full
//! bivariate gcd by Gauss's lemma while avoiding pseudo-remainder
//! coefficient blowup.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rat::{fmt_q, Q};
use crate::ratfun::{KRatFun, UniRatFun};

/// Which variable of a bivariate object.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    N,
    K,
}

/// Sparse bivariate polynomial over ℚ; keys are (n-exponent, k-exponent),
/// zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        BiPoly::constant(Q::one())
    }

    pub fn constant(v: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert((0, 0), v);
        }
        BiPoly { terms }
    }

    /// The affine polynomial `c0 + cn·n + ck·k`.
    pub fn affine(c0: Q, cn: Q, ck: Q) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c0);
        p.add_term(1, 0, cn);
        p.add_term(0, 1, ck);
        p
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::N => BiPoly::affine(Q::zero(), Q::one(), Q::zero()),
            Var::K => BiPoly::affine(Q::zero(), Q::zero(), Q::one()),
        }
    }

    fn add_term(&mut self, i: u32, j: u32, v: Q) {
        if v.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Q::zero);
        *slot += v;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map_or(false, |v| v.is_one())
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::N => i,
                Var::K => j,
            })
            .max()
    }

    /// Leading monomial key under graded lex with n > k.
    pub fn grlex_lead(&self) -> Option<(u32, u32)> {
        self.terms
            .keys()
            .copied()
            .max_by_key(|&(i, j)| (i + j, i))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, -v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, -v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i1, j1), v1) in &self.terms {
            for (&(i2, j2), v2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, v1 * v2);
            }
        }
        out
    }

    pub fn scale(&self, v: &Q) -> Self {
        if v.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c * v)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = BiPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, nv: &Q, kv: &Q) -> Q {
        let dn = self.degree(Var::N).unwrap_or(0) as usize;
        let dk = self.degree(Var::K).unwrap_or(0) as usize;
        let npow = power_table(nv, dn);
        let kpow = power_table(kv, dk);
        let mut acc = Q::zero();
        for (&(i, j), v) in &self.terms {
            acc += v * &npow[i as usize] * &kpow[j as usize];
        }
        acc
    }

    /// Substitute `var → var + c`.
    pub fn shift(&self, var: Var, c: &Q) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let max_e = self.degree(var).unwrap_or(0) as usize;
        let cpow = power_table(c, max_e);
        let mut out = BiPoly::zero();
        for (&(i, j), v) in &self.terms {
            let e = match var {
                Var::N => i,
                Var::K => j,
            };
            for t in 0..=e {
                let b = Q::from_integer(num_integer::binomial(
                    BigInt::from(e),
                    BigInt::from(t),
                ));
                let coeff = v * b * &cpow[(e - t) as usize];
                match var {
                    Var::N => out.add_term(t, j, coeff),
                    Var::K => out.add_term(i, t, coeff),
                }
            }
        }
        out
    }

    /// Exchange the roles of n and k.
    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    /// Coefficients of powers of k, each a polynomial in n; index = k-power.
    pub fn k_coeffs(&self) -> Vec<Poly<Q>> {
        let dk = match self.degree(Var::K) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let dn = self.degree(Var::N).unwrap_or(0) as usize;
        let mut grid = vec![vec![Q::zero(); dn + 1]; dk + 1];
        for (&(i, j), v) in &self.terms {
            grid[j as usize][i as usize] = v.clone();
        }
        grid.into_iter().map(Poly::new).collect()
    }

    pub fn from_k_coeffs(coeffs: &[Poly<Q>]) -> Self {
        let mut out = BiPoly::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, v) in p.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, v.clone());
            }
        }
        out
    }

    /// Embed a univariate polynomial in the given variable.
    pub fn from_uni(p: &Poly<Q>, var: Var) -> Self {
        let mut out = BiPoly::zero();
        for (e, v) in p.coeffs().iter().enumerate() {
            match var {
                Var::N => out.add_term(e as u32, 0, v.clone()),
                Var::K => out.add_term(0, e as u32, v.clone()),
            }
        }
        out
    }

    /// Extract as univariate in `var` if the other variable is absent.
    pub fn to_uni(&self, var: Var) -> Option<Poly<Q>> {
        let other = match var {
            Var::N => Var::K,
            Var::K => Var::N,
        };
        if self.degree(other).unwrap_or(0) > 0 {
            return None;
        }
        let d = self.degree(var).unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); d + 1];
        for (&(i, j), v) in &self.terms {
            let e = match var {
                Var::N => i,
                Var::K => j,
            };
            c[e as usize] = v.clone();
        }
        Some(Poly::new(c))
    }

    /// View as a polynomial in k over the field ℚ(n).
    pub fn to_nf_poly(&self) -> Poly<UniRatFun> {
        Poly::new(
            self.k_coeffs()
                .into_iter()
                .map(UniRatFun::from_poly)
                .collect(),
        )
    }

    /// Rebuild from ℚ(n)[k] form; `None` if any coefficient has a
    /// nontrivial denominator (i.e. the input is not actually polynomial).
    pub fn from_nf_poly(p: &Poly<UniRatFun>) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if !c.is_polynomial() {
                return None;
            }
            let lc = c.den().lc().cloned().unwrap_or_else(Q::one);
            coeffs.push(c.num().scale(&(Q::one() / lc)));
        }
        Some(BiPoly::from_k_coeffs(&coeffs))
    }

    /// Split into `content · primitive`: primitive has coprime integer
    /// coefficients and positive leading coefficient under grlex.
    pub fn primitive_integer(&self) -> (BiPoly, Q) {
        if self.is_zero() {
            return (BiPoly::zero(), Q::one());
        }
        let mut den_lcm = BigInt::one();
        for v in self.terms.values() {
            den_lcm = den_lcm.lcm(v.denom());
        }
        let ints: BTreeMap<(u32, u32), BigInt> = self
            .terms
            .iter()
            .map(|(&key, v)| (key, v.numer() * (&den_lcm / v.denom())))
            .collect();
        let mut g = BigInt::zero();
        for v in ints.values() {
            g = g.gcd(v);
        }
        let lead = self.grlex_lead().unwrap();
        if ints[&lead].is_negative() {
            g = -g;
        }
        let prim = BiPoly {
            terms: ints
                .iter()
                .map(|(&key, v)| (key, Q::from_integer(v / &g)))
                .collect(),
        };
        (prim, Q::new(g, den_lcm))
    }

    /// Exact division in ℚ[n,k]; `None` when `d` does not divide `self`.
    ///
    /// Classical long division in k with ℚ[n] coefficients: when the
    /// division is exact every per-step coefficient division is exact, so
    /// no fraction-field arithmetic is needed.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "bivariate division by zero");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let mut rem = self.k_coeffs();
        let b = d.k_coeffs();
        let blc = b.last().unwrap();
        if rem.len() < b.len() {
            return None;
        }
        let mut quot = vec![Poly::<Q>::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let qc = rem.last().unwrap().exact_div(blc)?;
            let shift = rem.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                rem[shift + i] = rem[shift + i].sub(&qc.mul(bc));
            }
            quot[shift] = qc;
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(BiPoly::from_k_coeffs(&quot))
        } else {
            None
        }
    }

    /// Content with respect to k: the (monic) gcd of the k-coefficients,
    /// a polynomial in n.
    fn k_content(&self) -> Poly<Q> {
        let mut g: Poly<Q> = Poly::zero();
        for c in self.k_coeffs() {
            g = g.gcd(&c);
        }
        g
    }
}

fn power_table(x: &Q, up_to: usize) -> Vec<Q> {
    let mut t = Vec::with_capacity(up_to + 1);
    t.push(Q::one());
    for i in 1..=up_to {
        let prev = t[i - 1].clone();
        t.push(prev * x);
    }
    t
}

/// Greatest common divisor in ℚ[n,k], primitive with positive leading
/// coefficient under graded lex (n > k). gcd(p, 0) is the normalization of
/// p; gcd(0, 0) = 0 (callers must not rely on it).
///
/// Method: Gauss decomposition gcd = gcd(contents) · gcd(primitive parts),
/// with the primitive-part gcd computed by a primitive polynomial remainder
/// sequence in the main variable k over ℚ[n] — pseudo-remainders, each
/// stripped to its primitive part, so coefficient degrees stay controlled
/// without fraction-field arithmetic.
pub fn poly_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.primitive_integer().0;
    }
    if q.is_zero() {
        return p.primitive_integer().0;
    }
    let cont_p = p.k_content();
    let cont_q = q.k_content();
    let gcont = cont_p.gcd(&cont_q);

    let strip = |poly: &BiPoly, cont: &Poly<Q>| -> Vec<Poly<Q>> {
        poly.exact_div(&BiPoly::from_uni(cont, Var::N))
            .expect("content divides")
            .k_coeffs()
    };
    let mut a = strip(p, &cont_p);
    let mut b = strip(q, &cont_q);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let gcont_poly = BiPoly::from_uni(&gcont, Var::N);
    if b.len() == 1 || coprime_at_specialization(&a, &b) {
        return gcont_poly.primitive_integer().0;
    }

    let pp_gcd: Vec<Poly<Q>> = loop {
        // b has k-degree 0 ⇒ primitive parts are coprime in k
        if b.len() == 1 {
            break vec![Poly::one()];
        }
        let r = bi_prem(&a, &b);
        if r.is_empty() {
            break primitive_k(&b);
        }
        a = b;
        b = primitive_k(&r);
    };

    BiPoly::from_k_coeffs(&pp_gcd)
        .mul(&gcont_poly)
        .primitive_integer()
        .0
}

/// Coprimality certificate for k-primitive coefficient vectors: specialize
/// n to an integer that keeps both leading k-coefficients nonzero. The gcd
/// can only grow under such a specialization, so a constant gcd there pins
/// the primitive-part gcd to a constant. This settles the common case (no
/// cancellation) with one cheap univariate gcd.
fn coprime_at_specialization(a: &[Poly<Q>], b: &[Poly<Q>]) -> bool {
    let la = a.last().expect("nonzero poly");
    let lb = b.last().expect("nonzero poly");
    let mut n0 = Q::zero();
    while la.eval(&n0).is_zero() || lb.eval(&n0).is_zero() {
        n0 = n0 + Q::one();
    }
    let ua = Poly::new(a.iter().map(|c| c.eval(&n0)).collect());
    let ub = Poly::new(b.iter().map(|c| c.eval(&n0)).collect());
    ua.gcd(&ub).degree() == Some(0)
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b` in k over ℚ[n]
/// coefficients. Requires deg_k a ≥ deg_k b ≥ 0.
fn bi_prem(a: &[Poly<Q>], b: &[Poly<Q>]) -> Vec<Poly<Q>> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&lr.mul(bc));
        }
        debug_assert!(r.last().unwrap().is_zero());
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Divide a k-coefficient vector by its full content (polynomial content in
/// n and rational scalar content), leaving a k-primitive sequence.
fn primitive_k(v: &[Poly<Q>]) -> Vec<Poly<Q>> {
    let mut cont: Poly<Q> = Poly::zero();
    for c in v {
        cont = cont.gcd(c);
    }
    let stripped: Vec<Poly<Q>> = v
        .iter()
        .map(|c| c.exact_div(&cont).expect("content divides"))
        .collect();
    BiPoly::from_k_coeffs(&stripped).primitive_integer().0.k_coeffs()
}

/// Reduced rational function of (n, k) in canonical form: num and den are
/// coprime, jointly integer with joint content 1, and den has positive
/// leading coefficient under graded lex (n > k). Zero is 0/1.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: BiPoly,
    den: BiPoly,
}

/// Reduce and normalize a quotient of bivariate polynomials.
///
/// Satisfies `rf_simplify(p·g, q·g) = rf_simplify(p, q)` for nonzero g.
/// Panics if `den` is the zero polynomial.
pub fn rf_simplify(num: BiPoly, den: BiPoly) -> RationalFunction {
    assert!(!den.is_zero(), "rational function with zero denominator");
    if num.is_zero() {
        return RationalFunction {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        };
    }
    let g = poly_gcd(&num, &den);
    let num = num.exact_div(&g).expect("gcd divides num");
    let den = den.exact_div(&g).expect("gcd divides den");
    normalize_pair(num, den)
}

/// Joint normalization of an already-coprime pair: scale so both are
/// integer with the pair's joint content 1 and den's grlex leading
/// coefficient positive.
fn normalize_pair(num: BiPoly, den: BiPoly) -> RationalFunction {
    let (num_prim, cn) = num.primitive_integer();
    let (den_prim, cd) = den.primitive_integer();
    let ratio = cn / cd; // sign lands in the numerator of `ratio`
    let num_final = num_prim.scale(&Q::from_integer(ratio.numer().clone()));
    let den_final = den_prim.scale(&Q::from_integer(ratio.denom().clone()));
    RationalFunction {
        num: num_final,
        den: den_final,
    }
}

impl RationalFunction {
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        rf_simplify(num, den)
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: BiPoly::one(),
            den: BiPoly::one(),
        }
    }

    pub fn from_bipoly(p: BiPoly) -> Self {
        rf_simplify(p, BiPoly::one())
    }

    pub fn from_q(v: Q) -> Self {
        rf_simplify(BiPoly::constant(v), BiPoly::one())
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        normalize_pair(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        rf_simplify(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        rf_simplify(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-reduce before multiplying: each factor's num is already
        // coprime to its own den, so cancelling gcd(num, other den) on both
        // sides leaves a coprime product and keeps intermediate degrees low.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        normalize_pair(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self.mul(&rhs.inv())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn eval(&self, nv: &Q, kv: &Q) -> Option<Q> {
        let d = self.den.eval(nv, kv);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(nv, kv) / d)
    }

    /// Substitute `var → var + c`. Shifting is a ring automorphism, so the
    /// pair stays coprime and needs no re-reduction.
    pub fn shift(&self, var: Var, c: &Q) -> Self {
        normalize_pair(self.num.shift(var, c), self.den.shift(var, c))
    }

    /// Substitute a rational constant for `var`; result is a univariate
    /// rational function in the other variable. `None` when the denominator
    /// vanishes identically on that line.
    pub fn subst(&self, var: Var, v: &Q) -> Option<UniRatFun> {
        // eval_one_var evaluates the n-slot, leaving a polynomial in k; to
        // fix k instead, swap the variables first.
        let (num_u, den_u) = match var {
            Var::N => (eval_one_var(&self.num, v), eval_one_var(&self.den, v)),
            Var::K => (
                eval_one_var(&self.num.swap_vars(), v),
                eval_one_var(&self.den.swap_vars(), v),
            ),
        };
        if den_u.is_zero() {
            return None;
        }
        Some(UniRatFun::new(num_u, den_u))
    }

    /// Valuation at n = 0 and the scaled limit: returns (v, L(k)) with
    /// self = n^v · (L(k) + O(n)) as n → 0, L not identically zero.
    pub fn n_valuation_and_limit(&self) -> (i64, UniRatFun) {
        assert!(!self.is_zero(), "valuation of zero rational function");
        let vn = n_valuation(&self.num);
        let vd = n_valuation(&self.den);
        let num0 = lowest_n_slice(&self.num, vn);
        let den0 = lowest_n_slice(&self.den, vd);
        (vn as i64 - vd as i64, UniRatFun::new(num0, den0))
    }

    /// View as an element of ℚ(n)(k).
    pub fn to_krat(&self) -> KRatFun {
        KRatFun::new(self.num.to_nf_poly(), self.den.to_nf_poly())
    }

    /// Rebuild from ℚ(n)(k) form. Both sides are cleared by one common
    /// denominator polynomial so the quotient's value is preserved.
    pub fn from_krat(kr: &KRatFun) -> Self {
        let mut l: Poly<Q> = Poly::one();
        for c in kr.num().coeffs().iter().chain(kr.den().coeffs()) {
            let g = l.gcd(c.den());
            l = l.mul(&c.den().exact_div(&g).unwrap());
        }
        let clear = |p: &Poly<UniRatFun>| -> BiPoly {
            let coeffs: Vec<Poly<Q>> = p
                .coeffs()
                .iter()
                .map(|c| c.num().mul(&l.exact_div(c.den()).expect("lcm clears")))
                .collect();
            BiPoly::from_k_coeffs(&coeffs)
        };
        rf_simplify(clear(kr.num()), clear(kr.den()))
    }
}

/// Coefficient-wise evaluation of the k-"outer" variable: treats `p` as a
/// polynomial in its n-slot with k-coefficients, evaluating the n-slot at
/// `v` — callers pre-swap as needed. Returns a polynomial in the remaining
/// variable.
fn eval_one_var(p: &BiPoly, v: &Q) -> Poly<Q> {
    // p's keys are (outer, inner); evaluate outer at v.
    let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
    let max_outer = p.degree(Var::N).unwrap_or(0) as usize;
    let vpow = power_table(v, max_outer);
    for (&(i, j), c) in &p.terms {
        let slot = acc.entry(j).or_insert_with(Q::zero);
        *slot += c * &vpow[i as usize];
    }
    let d = acc.keys().max().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![Q::zero(); d + 1];
    for (j, c) in acc {
        coeffs[j as usize] = c;
    }
    Poly::new(coeffs)
}

fn n_valuation(p: &BiPoly) -> u32 {
    p.terms.keys().map(|&(i, _)| i).min().unwrap_or(0)
}

/// The coefficient of n^v in p, as a polynomial in k.
fn lowest_n_slice(p: &BiPoly, v: u32) -> Poly<Q> {
    let dk = p.degree(Var::K).unwrap_or(0) as usize;
    let mut coeffs = vec![Q::zero(); dk + 1];
    for (&(i, j), c) in &p.terms {
        if i == v {
            coeffs[j as usize] = c.clone();
        }
    }
    Poly::new(coeffs)
}

/// Render in expanded sparse form, grlex descending: `"3*n^2*k - 2*n + 1"`.
pub fn fmt_bipoly(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut keys: Vec<(u32, u32)> = p.terms.keys().copied().collect();
    keys.sort_by_key(|&(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
    let mut out = String::new();
    for (i, j) in keys {
        let c = &p.terms[&(i, j)];
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || (i == 0 && j == 0) {
            parts.push(fmt_q(&mag));
        }
        if i > 0 {
            parts.push(if i == 1 {
                "n".to_string()
            } else {
                format!("n^{i}")
            });
        }
        if j > 0 {
            parts.push(if j == 1 {
                "k".to_string()
            } else {
                format!("k^{j}")
            });
        }
        out.push_str(&parts.join("*"));
    }
    out
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_bipoly(self))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_bipoly(self))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", fmt_bipoly(&self.num), fmt_bipoly(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    fn npoly(coeffs: &[i64]) -> BiPoly {
        BiPoly::from_uni(
            &Poly::new(coeffs.iter().map(|&v| qi(v)).collect()),
            Var::N,
        )
    }

    fn n_plus_k() -> BiPoly {
        BiPoly::affine(qi(0), qi(1), qi(1))
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = n_plus_k(); // n + k
        let sq = p.mul(&p); // n^2 + 2nk + k^2
        assert_eq!(sq.eval(&qi(3), &qi(4)), qi(49));
        assert_eq!(p.sub(&p), BiPoly::zero());
        let shifted = sq.shift(Var::N, &qi(2)); // (n+2+k)^2
        assert_eq!(shifted.eval(&qi(1), &qi(4)), qi(49));
        let shifted_k = sq.shift(Var::K, &q(1, 2));
        assert_eq!(shifted_k.eval(&qi(1), &q(5, 2)), qi(16));
    }

    #[test]
    fn gcd_univariate_cases() {
        // gcd(n²−1, n−1) = n−1
        let g = poly_gcd(&npoly(&[-1, 0, 1]), &npoly(&[-1, 1]));
        assert_eq!(g, npoly(&[-1, 1]));
        // gcd(p, 1) = 1
        let g = poly_gcd(&npoly(&[6, 17, 12]), &BiPoly::one());
        assert!(g.is_one());
        // gcd(12n²+17n+6, 3n+2) = 3n+2
        let g = poly_gcd(&npoly(&[6, 17, 12]), &npoly(&[2, 3]));
        assert_eq!(g, npoly(&[2, 3]));
    }

    #[test]
    fn gcd_bivariate_cases() {
        let p = n_plus_k();
        let nk = BiPoly::var(Var::N).mul(&BiPoly::var(Var::K));
        // gcd((n+k)·n·k, (n+k)²) = n+k
        let a = p.mul(&nk);
        let b = p.mul(&p);
        assert_eq!(poly_gcd(&a, &b), p);
        // content handling: gcd(2n(k+1), 4n²) = n (primitive normalization)
        let two_n_kp1 = BiPoly::var(Var::N)
            .scale(&qi(2))
            .mul(&BiPoly::affine(qi(1), qi(0), qi(1)));
        let four_n2 = BiPoly::var(Var::N).mul(&BiPoly::var(Var::N)).scale(&qi(4));
        assert_eq!(poly_gcd(&two_n_kp1, &four_n2), BiPoly::var(Var::N));
        // divides both inputs exactly
        assert!(a.exact_div(&poly_gcd(&a, &b)).is_some());
        assert!(b.exact_div(&poly_gcd(&a, &b)).is_some());
    }

    #[test]
    fn gcd_positive_leading_coefficient() {
        let p = n_plus_k().neg().mul(&npoly(&[0, 2]));
        let g = poly_gcd(&p, &p);
        // primitive, positive grlex-leading coefficient
        assert_eq!(g, n_plus_k().mul(&BiPoly::var(Var::N)));
    }

    #[test]
    fn simplify_spec_cases() {
        // (n²−1)/(n−1) → (n+1)/1
        let r = rf_simplify(npoly(&[-1, 0, 1]), npoly(&[-1, 1]));
        assert_eq!(r.num(), &npoly(&[1, 1]));
        assert!(r.den().is_one());
        // already-reduced certificate-shaped quotient is left intact
        let num = npoly(&[106, 269, 172]);
        let den = npoly(&[2, 3]).mul(&npoly(&[3, 4])).scale(&qi(9));
        let r = rf_simplify(num.clone(), den.clone());
        assert_eq!(r.num(), &num);
        assert_eq!(r.den(), &den);
        // 0/p → 0/1
        let z = rf_simplify(BiPoly::zero(), npoly(&[5, 7]));
        assert!(z.is_zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn simplify_invariant_under_common_factor() {
        let p = n_plus_k().mul(&npoly(&[1, 2]));
        let qq = BiPoly::var(Var::K).add(&BiPoly::one());
        let g = n_plus_k().add(&BiPoly::one()); // n + k + 1
        let lhs = rf_simplify(p.mul(&g), qq.mul(&g));
        let rhs = rf_simplify(p, qq);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_ops_round_trip() {
        let a = RationalFunction::new(n_plus_k(), npoly(&[0, 1])); // (n+k)/n
        let b = RationalFunction::new(BiPoly::var(Var::K), npoly(&[1, 1])); // k/(n+1)
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.sub(&a), RationalFunction::zero());
        let half = RationalFunction::from_q(q(1, 2));
        assert_eq!(half.add(&half), RationalFunction::one());
    }

    #[test]
    fn eval_subst_and_limits() {
        // R = (2n²k + n³)/(n·k²) = n(2k + n)/k²
        let num = BiPoly::var(Var::N)
            .pow(2)
            .mul(&BiPoly::var(Var::K))
            .scale(&qi(2))
            .add(&BiPoly::var(Var::N).pow(3));
        let den = BiPoly::var(Var::N).mul(&BiPoly::var(Var::K).pow(2));
        let r = RationalFunction::new(num, den);
        assert_eq!(r.eval(&qi(1), &qi(2)), Some(q(5, 4)));
        assert_eq!(r.eval(&qi(1), &qi(0)), None);

        let (v, lim) = r.n_valuation_and_limit();
        assert_eq!(v, 1);
        // limit function is 2/k
        assert_eq!(lim.eval(&qi(3)), Some(q(2, 3)));

        // substitute n = 2: (2(2k+2))/k² = (4k+4)/k²
        let at2 = r.subst(Var::N, &qi(2)).unwrap();
        assert_eq!(at2.eval(&qi(2)), Some(qi(3)));
        // substitute k = 1: n(2+n)
        let atk1 = r.subst(Var::K, &qi(1)).unwrap();
        assert_eq!(atk1.eval(&qi(5)), Some(qi(35)));
    }

    #[test]
    fn krat_round_trip() {
        let r = RationalFunction::new(
            n_plus_k().mul(&npoly(&[3, 5])),
            BiPoly::var(Var::K).add(&npoly(&[1, 0, 2])),
        );
        let kr = r.to_krat();
        let back = RationalFunction::from_krat(&kr);
        assert_eq!(back, r);
    }

    #[test]
    fn display_formats() {
        let p = n_plus_k().mul(&n_plus_k()); // n^2 + 2nk + k^2
        assert_eq!(fmt_bipoly(&p), "n^2 + 2*n*k + k^2");
        let r = RationalFunction::new(npoly(&[106, 269, 172]), npoly(&[0, 9]));
        assert_eq!(
            format!("{r}"),
            "(172*n^2 + 269*n + 106) / (9*n)"
        );
    }
}
