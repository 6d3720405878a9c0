//! Dense univariate polynomials over an exact coefficient field.
//!
//! [`Poly<C>`] is generic over the coefficient field so the same arithmetic,
//! division, and gcd code serves two instantiations:
//!
//! - `Poly<Q>` — polynomials over the rationals (telescoper coefficients in
//!   n, Gosper polynomials in k, interpolation targets);
//! - `Poly<UniRatFun>` — polynomials in k whose coefficients are rational
//!   functions of n, the working ring of parameterized Gosper / Zeilberger.
//!
//! The ℚ-specific machinery lives on `Poly<Q>`:
//!
//! - [`Poly::rational_roots`] — all rational roots with multiplicity via the
//!   rational-root theorem on the integer-cleared polynomial, plus the
//!   root-free residual factor;
//! - [`resultant`] — Sylvester determinant, computed by exact elimination;
//! - [`dispersion_set`] — the nonnegative integer shifts j at which two
//!   polynomials in k share a root, via the resultant Res_k(a(k), b(k+j))
//!   interpolated as a polynomial in j.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{is_integer, Q};

/// Coefficient-field bound: exact field arithmetic with by-value ops.
///
/// `gcd_for` lets a field supply a growth-controlled polynomial gcd; the
/// default is the monic Euclidean algorithm, and ℚ overrides it with a
/// subresultant PRS over ℤ (naive Euclid over ℚ suffers exponential
/// coefficient blowup at the degrees certificates reach).
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn gcd_for(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        a.gcd_euclid(b)
    }
}

impl Coeff for Q {
    fn gcd_for(a: &Poly<Q>, b: &Poly<Q>) -> Poly<Q> {
        gcd_subresultant(a, b)
    }
}

/// Dense univariate polynomial; `c[i]` is the coefficient of `x^i`.
/// Invariant: no trailing zero coefficients (the zero polynomial is empty).
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    c: Vec<C>,
}

impl<C: Coeff> Debug for Poly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<C: Coeff> Poly<C> {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn constant(v: C) -> Self {
        Poly::new(vec![v])
    }

    /// The monomial `v·x^e`.
    pub fn monomial(v: C, e: usize) -> Self {
        let mut c = vec![C::zero(); e + 1];
        c[e] = v;
        Poly::new(c)
    }

    /// The variable itself, `x`.
    pub fn x() -> Self {
        Poly::monomial(C::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = -1 (handy in degree-bound formulas).
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    /// Leading coefficient; `None` for zero.
    pub fn lc(&self) -> Option<&C> {
        self.c.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.c.iter().map(|v| -v.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, v: &C) -> Self {
        Poly::new(self.c.iter().map(|x| x.clone() * v.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Evaluate by Horner's rule.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for v in self.c.iter().rev() {
            acc = acc * x.clone() + v.clone();
        }
        acc
    }

    /// `p(x + c)` via Horner reconstruction over the shifted variable.
    pub fn shift(&self, c: &C) -> Self {
        let xpc = Poly::new(vec![c.clone(), C::one()]);
        let mut res = Poly::zero();
        for v in self.c.iter().rev() {
            res = res.mul(&xpc);
            res = res.add(&Poly::constant(v.clone()));
        }
        res
    }

    /// Quotient and remainder of field-coefficient long division.
    ///
    /// Panics on division by the zero polynomial.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let dlc = d.lc().unwrap().clone();
        let mut rem = self.c.clone();
        let mut quot: Vec<C> = Vec::new();
        while rem.len() >= dd + 1 {
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap().clone() / dlc.clone();
            for i in 0..=dd {
                let idx = shift + i;
                rem[idx] = rem[idx].clone() - q.clone() * d.c[i].clone();
            }
            if quot.len() < shift + 1 {
                quot.resize(shift + 1, C::zero());
            }
            quot[shift] = q;
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divmod(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd; gcd(0, 0) = 0, otherwise the result is monic. Dispatches
    /// to the coefficient field's algorithm (subresultant PRS for ℚ, monic
    /// Euclid otherwise).
    pub fn gcd(&self, rhs: &Self) -> Self {
        C::gcd_for(self, rhs)
    }

    fn gcd_euclid(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.lc().unwrap().clone();
        Poly::new(a.c.iter().map(|v| v.clone() / lc.clone()).collect())
    }

    /// Make monic (no-op on zero).
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Poly::zero(),
            Some(l) => {
                let l = l.clone();
                Poly::new(self.c.iter().map(|v| v.clone() / l.clone()).collect())
            }
        }
    }

    /// Map coefficients into another field.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

// ---- ℚ-specific machinery ----

impl Poly<Q> {
    /// Product of `(x - r)` over the given roots.
    pub fn from_roots(roots: &[Q]) -> Self {
        let mut p = Poly::one();
        for r in roots {
            p = p.mul(&Poly::new(vec![-r.clone(), Q::one()]));
        }
        p
    }

    /// Split into `content · primitive` where `primitive` has coprime
    /// integer coefficients and positive leading coefficient.
    /// The zero polynomial returns (0, content 1).
    pub fn primitive_integer(&self) -> (Poly<Q>, Q) {
        if self.is_zero() {
            return (Poly::zero(), Q::one());
        }
        let mut den_lcm = BigInt::one();
        for v in &self.c {
            den_lcm = den_lcm.lcm(v.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|v| v.numer() * (&den_lcm / v.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = Poly::new(ints.iter().map(|v| Q::from_integer(v / &g)).collect());
        let content = Q::new(g, den_lcm);
        (prim, content)
    }

    /// All rational roots with multiplicity, plus the root-free residual
    /// factor (whose product with the root factors recovers `self` up to a
    /// constant). Divisor enumeration is by trial division; see
    /// [`divisors_bounded`] for the bound.
    pub fn rational_roots(&self) -> (Vec<(Q, u32)>, Poly<Q>) {
        assert!(!self.is_zero(), "rational_roots of the zero polynomial");
        let mut roots: Vec<(Q, u32)> = Vec::new();
        let mut cur = self.clone();

        // Factor out x^v (roots at 0).
        let mut v0 = 0u32;
        while !cur.is_zero() && cur.coeff(0).is_zero() && cur.degree() != Some(0) {
            cur = cur.exact_div(&Poly::x()).unwrap();
            v0 += 1;
        }
        if v0 > 0 {
            roots.push((Q::zero(), v0));
        }
        if cur.degree() == Some(0) {
            return (roots, cur);
        }

        let (prim, _) = cur.primitive_integer();
        let c0 = prim.coeff(0).numer().clone();
        let cd = prim.lc().unwrap().numer().clone();
        let nums = divisors_bounded(&c0);
        let dens = divisors_bounded(&cd);

        for p in &nums {
            for qd in &dens {
                if p.gcd(qd) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = Q::new(p * BigInt::from(sign), qd.clone());
                    let mut mult = 0u32;
                    while cur.degree() > Some(0) && cur.eval(&cand).is_zero() {
                        let lin = Poly::new(vec![-cand.clone(), Q::one()]);
                        cur = cur.exact_div(&lin).expect("root divides");
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
            }
        }
        (roots, cur)
    }

    /// Nonnegative integer roots (no multiplicity), sorted ascending.
    pub fn nonneg_integer_roots(&self) -> Vec<i64> {
        let (roots, _) = self.rational_roots();
        let mut out: Vec<i64> = roots
            .iter()
            .filter(|(r, _)| is_integer(r) && !r.is_negative())
            .filter_map(|(r, _)| i64::try_from(r.numer()).ok())
            .collect();
        out.sort_unstable();
        out
    }

    /// Newton interpolation through the given (x, y) points.
    /// Panics on repeated x values.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Poly<Q> {
        assert_eq!(xs.len(), ys.len());
        let m = xs.len();
        // Divided differences.
        let mut dd: Vec<Q> = ys.to_vec();
        for level in 1..m {
            for i in (level..m).rev() {
                let dx = &xs[i] - &xs[i - level];
                assert!(!dx.is_zero(), "interpolate: repeated x value");
                dd[i] = (&dd[i] - &dd[i - 1]) / dx;
            }
        }
        let mut p = Poly::zero();
        let mut basis = Poly::one();
        for i in 0..m {
            p = p.add(&basis.scale(&dd[i]));
            basis = basis.mul(&Poly::new(vec![-xs[i].clone(), Q::one()]));
        }
        p
    }
}

/// gcd over ℚ via the subresultant PRS on the integer-cleared polynomials
/// (Knuth 4.6.1 / Cohen Alg. 3.2.10), returned monic. Integer pseudo-
/// remainders with subresultant divisors keep coefficient growth polynomial
/// where monic Euclid over ℚ blows up exponentially.
fn gcd_subresultant(pa: &Poly<Q>, pb: &Poly<Q>) -> Poly<Q> {
    if pa.is_zero() {
        return pb.monic();
    }
    if pb.is_zero() {
        return pa.monic();
    }
    let to_ints = |p: &Poly<Q>| -> Vec<BigInt> {
        let (prim, _) = p.primitive_integer();
        prim.coeffs().iter().map(|c| c.numer().clone()).collect()
    };
    let mut a = to_ints(pa);
    let mut b = to_ints(pb);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let mut r = int_prem(&a, &b);
        if r.is_empty() {
            let prim = primitive_ints(&b);
            return Poly::new(
                prim.into_iter().map(Q::from_integer).collect::<Vec<Q>>(),
            )
            .monic();
        }
        if r.len() == 1 {
            return Poly::one();
        }
        a = b;
        let divisor = &g * h.pow(delta);
        for c in r.iter_mut() {
            debug_assert!((&*c % &divisor).is_zero(), "subresultant division exact");
            *c = &*c / &divisor;
        }
        b = r;
        g = a.last().unwrap().clone();
        if delta > 0 {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            debug_assert!((&num % &den).is_zero());
            h = num / den;
        }
    }
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b` over ℤ.
/// Requires deg a ≥ deg b ≥ 0 (as coefficient slices).
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut e = (a.len() - b.len()) as i64 + 1;
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        while r.last().map_or(false, |x| x.is_zero()) {
            r.pop();
        }
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

fn primitive_ints(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    v.iter().map(|c| c / &g).collect()
}

/// Resultant Res_x(a, b) over ℚ via the Sylvester matrix determinant
/// (exact Gaussian elimination; determinant of the empty matrix is 1).
pub fn resultant(a: &Poly<Q>, b: &Poly<Q>) -> Q {
    let (da, db) = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) => (da, db),
        // Res with a zero polynomial: 0 unless the other is a nonzero
        // constant (empty matrix convention).
        _ => return Q::zero(),
    };
    if da == 0 && db == 0 {
        return Q::one();
    }
    let n = da + db;
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..db {
        for j in 0..=da {
            m[i][i + j] = a.coeff(da - j);
        }
    }
    for i in 0..da {
        for j in 0..=db {
            m[db + i][i + j] = b.coeff(db - j);
        }
    }
    // Elimination with pivoting, tracking the determinant.
    let mut det = Q::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for cc in col..n {
                let sub = &f * &m[col][cc];
                m[r][cc] = &m[r][cc] - &sub;
            }
        }
    }
    det
}

/// The dispersion set of `a(k)` and `b(k)`: all nonnegative integers j with
/// deg gcd(a(k), b(k+j)) > 0, computed exactly.
///
/// Method: R(j) = Res_k(a(k), b(k+j)) is a polynomial in j of degree at most
/// deg(a)·deg(b); it is interpolated from that many integer sample points
/// (each an exact numeric resultant), its nonnegative integer roots are the
/// complete candidate set, and each candidate is confirmed by an actual gcd.
pub fn dispersion_set(a: &Poly<Q>, b: &Poly<Q>) -> Vec<i64> {
    assert!(!a.is_zero() && !b.is_zero(), "dispersion_set on zero input");
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if da == 0 || db == 0 {
        return Vec::new();
    }
    let dj = da * db;
    let xs: Vec<Q> = (0..=dj as i64).map(crate::rat::qi).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|j| resultant(a, &b.shift(j)))
        .collect();
    let r = Poly::interpolate(&xs, &ys);
    if r.is_zero() {
        // a and b share a factor under every shift only when both are
        // constants in disguise; guarded above, so this cannot happen for
        // genuine inputs — fall back to a direct scan just in case.
        return (0..=dj as i64)
            .filter(|j| {
                a.gcd(&b.shift(&crate::rat::qi(*j)))
                    .degree()
                    .map_or(false, |d| d > 0)
            })
            .collect();
    }
    r.nonneg_integer_roots()
        .into_iter()
        .filter(|j| {
            a.gcd(&b.shift(&crate::rat::qi(*j)))
                .degree()
                .map_or(false, |d| d > 0)
        })
        .collect()
}

/// All positive divisors of |n|, via trial division with small primes.
///
/// Trial division runs to min(√|n|, 10⁶); a remaining cofactor is treated as
/// prime. Polynomials reaching the factoring stage in this pipeline have
/// small leading/constant coefficients, so the bound is never binding there.
pub fn divisors_bounded(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= m && d <= limit {
        if (&m % &d).is_zero() {
            let mut e = 0u32;
            while (&m % &d).is_zero() {
                m /= &d;
                e += 1;
            }
            factors.push((d.clone(), e));
        }
        d += 1u32;
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let prev = divs.clone();
        let mut pe = BigInt::one();
        for _ in 0..e {
            pe *= &p;
            for v in &prev {
                divs.push(v * &pe);
            }
        }
    }
    divs.sort();
    divs.dedup();
    divs
}

/// Render a ℚ-coefficient polynomial in expanded sparse form with the given
/// variable name, highest powers first: `"172*n^2 + 269*n + 106"`.
pub fn fmt_poly(p: &Poly<Q>, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for i in (0..p.coeffs().len()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff_str = crate::rat::fmt_q(&mag);
        let show_coeff = !mag.is_one() || i == 0;
        if show_coeff {
            out.push_str(&coeff_str);
        }
        if i > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push_str(var);
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    fn p(coeffs: &[i64]) -> Poly<Q> {
        Poly::new(coeffs.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2]); // 1 + 2x
        let b = p(&[3, 0, 1]); // 3 + x^2
        assert_eq!(a.mul(&b), p(&[3, 6, 1, 2]));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.eval(&qi(5)), qi(11));
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let num = p(&[-1, 0, 1]);
        let d = p(&[-1, 1]);
        let (quot, rem) = num.divmod(&d);
        assert!(rem.is_zero());
        assert_eq!(quot, p(&[1, 1]));

        // gcd(x^2 - 1, x - 1) = x - 1 (monic)
        let g = num.gcd(&d);
        assert_eq!(g, p(&[-1, 1]));

        // gcd(12n^2+17n+6, 3n+2) is n + 2/3 monic, i.e. 3n+2 up to scale.
        let g2 = p(&[6, 17, 12]).gcd(&p(&[2, 3]));
        assert_eq!(g2, Poly::new(vec![q(2, 3), qi(1)]));
    }

    #[test]
    fn shift_matches_pointwise() {
        let a = p(&[4, -3, 0, 2]);
        let s = a.shift(&qi(5));
        for x in -3..4 {
            assert_eq!(s.eval(&qi(x)), a.eval(&qi(x + 5)));
        }
    }

    #[test]
    fn primitive_integer_normalization() {
        // (2/3)x^2 - 4x = content 2/3 times (x^2 - 6x)
        let a = Poly::new(vec![qi(0), qi(-4), q(2, 3)]);
        let (prim, content) = a.primitive_integer();
        assert_eq!(prim, p(&[0, -6, 1]));
        assert_eq!(content, q(2, 3));
        assert_eq!(prim.scale(&content), a);

        // Sign lands in the content, not the primitive part.
        let b = Poly::new(vec![qi(2), qi(-4)]);
        let (prim_b, content_b) = b.primitive_integer();
        assert_eq!(prim_b, p(&[-1, 2]));
        assert_eq!(content_b, qi(-2));
    }

    #[test]
    fn rational_roots_basics() {
        // 12n^2 + 17n + 6 → {-2/3, -3/4}
        let (mut roots, residual) = p(&[6, 17, 12]).rational_roots();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![(q(-3, 4), 1), (q(-2, 3), 1)]);
        assert_eq!(residual.degree(), Some(0));

        // n^2 + 1 → none, residual n^2 + 1
        let (roots, residual) = p(&[1, 0, 1]).rational_roots();
        assert!(roots.is_empty());
        assert_eq!(residual, p(&[1, 0, 1]));

        // (n+1)^5 → {-1 with multiplicity 5}
        let (roots, _) = p(&[1, 1]).pow(5).rational_roots();
        assert_eq!(roots, vec![(qi(-1), 5)]);

        // x^2(2x - 1) → 0 (twice) and 1/2
        let (mut roots, _) = p(&[0, 0, -1, 2]).rational_roots();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![(qi(0), 2), (q(1, 2), 1)]);
    }

    #[test]
    fn resultant_detects_common_roots() {
        // share root 2
        let a = Poly::from_roots(&[qi(2), qi(5)]);
        let b = Poly::from_roots(&[qi(2), qi(-1)]);
        assert!(resultant(&a, &b).is_zero());
        // no shared root
        let c = Poly::from_roots(&[qi(3)]);
        assert!(!resultant(&a, &c).is_zero());
        // resultant of x^2+1 and x^2-2 is nonzero
        assert!(!resultant(&p(&[1, 0, 1]), &p(&[-2, 0, 1])).is_zero());
    }

    #[test]
    fn dispersion_examples() {
        // gcd(a(k), b(k+j)) nonconstant exactly at the listed shifts
        // a = k+3, b = k → {3}: gcd(k+3, k+3) at j = 3
        assert_eq!(dispersion_set(&p(&[3, 1]), &p(&[0, 1])), vec![3]);
        // a = k, b = k + 1/2 → {}: non-integer offset never aligns
        let b = Poly::new(vec![q(1, 2), qi(1)]);
        assert!(dispersion_set(&p(&[0, 1]), &b).is_empty());
        assert!(dispersion_set(&b, &p(&[0, 1])).is_empty());
        // a = k+5, b = k(k+2) → {3, 5}
        let bb = p(&[0, 1]).mul(&p(&[2, 1]));
        assert_eq!(dispersion_set(&p(&[5, 1]), &bb), vec![3, 5]);
        // irrational shared roots are found too: a = k^2-2, b = (k-4)^2-2
        let a = p(&[-2, 0, 1]);
        let b = a.shift(&qi(-4)); // roots ±√2 + 4
        assert_eq!(dispersion_set(&a, &b), vec![4]);
    }

    #[test]
    fn dispersion_brute_force_agreement() {
        // deterministic pseudo-random small polynomials with integer roots
        let cases: Vec<(Vec<i64>, Vec<i64>)> = vec![
            (vec![0, 2, 7], vec![1, 2]),
            (vec![-3, 4], vec![0, 0, 4]),
            (vec![5], vec![5, 6, 7]),
            (vec![1, 1, 1], vec![1]),
            (vec![2, 9], vec![-1, 3, 11]),
        ];
        for (ra, rb) in cases {
            let a = Poly::from_roots(&ra.iter().map(|&v| qi(v)).collect::<Vec<_>>());
            let b = Poly::from_roots(&rb.iter().map(|&v| qi(v)).collect::<Vec<_>>());
            let got = dispersion_set(&a, &b);
            let brute: Vec<i64> = (0..=20)
                .filter(|&j| {
                    a.gcd(&b.shift(&qi(j)))
                        .degree()
                        .map_or(false, |d| d > 0)
                })
                .collect();
            assert_eq!(got, brute, "roots {ra:?} vs {rb:?}");
        }
    }

    #[test]
    fn interpolation_round_trip() {
        let target = Poly::new(vec![q(1, 2), qi(-3), qi(0), qi(7)]);
        let xs: Vec<Q> = (0..4).map(qi).collect();
        let ys: Vec<Q> = xs.iter().map(|x| target.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), target);
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_poly(&p(&[106, 269, 172]), "n"), "172*n^2 + 269*n + 106");
        assert_eq!(fmt_poly(&p(&[0, -1, 0, 1]), "k"), "k^3 - k");
        assert_eq!(fmt_poly(&Poly::zero(), "n"), "0");
        assert_eq!(
            fmt_poly(&Poly::new(vec![q(1, 2), qi(1)]), "n"),
            "n + 1/2"
        );
    }
}
