//! Canonical printed form of an accelerated series.
//!
//! The boundary column `G(n,0)` of a WZ pair is a hypergeometric sequence
//! in `n`: a rational-function part (certificate × prefactor) times
//! Pochhammer weights times `zⁿ`. This module rewrites that product into
//! the canonical shape
//!
//! ```text
//!   scale · Σ_{n≥0} p(n) · (b₁)_n ⋯ (b_r)_n / ((d₁)_n ⋯ (d_s)_n) · zⁿ · extra(n)
//! ```
//!
//! with `p` an integer-coprime polynomial with positive leading
//! coefficient, all Pochhammer bases positive, and `extra` a reduced
//! rational function whose numerator and denominator are integer-coprime.
//! The rewrite is value-preserving; every move is an application of the
//! identity `(x)_n · (x + n) = x · (x + 1)_n`.
//!
//! Key components:
//! - [`ClosedSeries`] — the canonical series with exact term access.
//! - [`canonicalize`] — absorb linear factors into the weights, collapse
//!   integer-spaced base pairs, and normalize contents into `scale`.
//! - [`ClosedSeries::value`] — high-precision evaluation with a derived
//!   geometric tail bound.
//!
//! Conventions: the series value *includes* `scale`, so
//! `value() = Σ_n scale · p(n) · w(n) · zⁿ · extra(n)`; `term_at`
//! likewise returns the scale-inclusive exact term.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::numerics::{self, PrecisionContext};
use crate::poly::{fmt_poly, Poly};
use crate::rat::{fmt_q, poch, q_pow, Q};
use crate::ratfun::UniRatFun;

// ---- Canonical series ----

/// An accelerated series in canonical printed form.
///
/// Invariants maintained by [`canonicalize`]:
/// - `poly` is integer-coprime with positive leading coefficient (or zero);
/// - every base in `num_poch`/`den_poch` is positive, the two lists share
///   no common entry, and no numerator base sits a positive integer below
///   a denominator base (such pairs are collapsed into `extra`);
/// - `extra_num`/`extra_den` are integer-coprime polynomials with positive
///   leading coefficients, and `extra_den` has no root at a nonnegative
///   integer.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSeries {
    pub scale: Q,
    pub poly: Poly<Q>,
    pub num_poch: Vec<Q>,
    pub den_poch: Vec<Q>,
    pub extra_num: Poly<Q>,
    pub extra_den: Poly<Q>,
    pub z: Q,
}

impl ClosedSeries {
    /// The series that is identically zero.
    pub fn zero() -> Self {
        ClosedSeries {
            scale: Q::one(),
            poly: Poly::zero(),
            num_poch: Vec::new(),
            den_poch: Vec::new(),
            extra_num: Poly::one(),
            extra_den: Poly::one(),
            z: Q::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn extra_is_one(&self) -> bool {
        self.extra_num.is_one() && self.extra_den.is_one()
    }

    /// Exact value of the `n`-th term, `scale` included.
    ///
    /// Never divides by zero: denominator bases are positive and
    /// `extra_den` has no nonnegative integer root (canonical invariants).
    pub fn term_at(&self, n: u64) -> Q {
        if self.poly.is_zero() {
            return Q::zero();
        }
        let nq = Q::from_integer(n.into());
        let mut t = &self.scale * self.poly.eval(&nq);
        for b in &self.num_poch {
            t *= poch(b, n);
        }
        for b in &self.den_poch {
            t /= poch(b, n);
        }
        t *= q_pow(&self.z, n as i64).expect("nonnegative power");
        t *= self.extra_num.eval(&nq);
        t /= self.extra_den.eval(&nq);
        t
    }

    /// Derive a geometric bound for the term ratio: a pair `(ρ, N₀)` with
    /// `|term(n+1)/term(n)| ≤ ρ < 1` for all `n ≥ N₀`.
    ///
    /// The exact ratio tends to `|z|`. We probe it at the first few hundred
    /// indices, locate the last index where its direction of approach
    /// changes, and require a stable monotone stretch after that point: on
    /// a decreasing stretch the first probed value bounds the rest, on an
    /// increasing stretch the limit `|z|` does. The probe window doubles
    /// until the stretch is long enough; failure to stabilize is reported
    /// as a convergence error.
    pub fn tail_ratio_bound(&self) -> Result<(Q, u64)> {
        if self.poly.is_zero() {
            return Ok((Q::new(1.into(), 2.into()), 0));
        }
        let z_abs = self.z.abs();
        if z_abs >= Q::one() {
            return Err(Error::NoConvergence(format!(
                "|z| = {} is not below 1",
                fmt_q(&z_abs)
            )));
        }
        let mut window: u64 = 96;
        while window <= 3072 {
            let mut ratios: Vec<Q> = Vec::with_capacity(window as usize);
            let mut prev = self.term_at(0);
            let mut last_zero: Option<u64> = None;
            for n in 0..window {
                let next = self.term_at(n + 1);
                if prev.is_zero() {
                    last_zero = Some(n);
                    ratios.push(Q::zero());
                } else {
                    ratios.push((&next / &prev).abs());
                }
                prev = next;
            }
            // Last index where monotonicity flips (or a zero term blinds us).
            let mut stable_from = last_zero.map_or(0, |n| n + 1) as usize;
            for i in 2..ratios.len() {
                let before = ratios[i - 1].cmp(&ratios[i - 2]);
                let after = ratios[i].cmp(&ratios[i - 1]);
                if before != after {
                    stable_from = i;
                }
            }
            if stable_from + 16 <= ratios.len() {
                let mut rho = z_abs.clone();
                for r in &ratios[stable_from..] {
                    if *r > rho {
                        rho = r.clone();
                    }
                }
                if rho >= Q::one() {
                    return Err(Error::NoConvergence(format!(
                        "term ratio stays at {} ≥ 1 beyond n = {}",
                        fmt_q(&rho),
                        stable_from
                    )));
                }
                return Ok((rho, stable_from as u64));
            }
            window *= 2;
        }
        Err(Error::NoConvergence(
            "term ratio failed to approach |z| monotonically within 3072 probes".into(),
        ))
    }

    /// Evaluate the series to `ctx.digits` correct digits.
    pub fn value(&self, ctx: &PrecisionContext) -> Result<BigFloat> {
        if self.poly.is_zero() {
            return Ok(BigFloat::zero(ctx.working_scale()));
        }
        let (rho, valid_from) = self.tail_ratio_bound()?;
        numerics::sum_with_geometric_tail(|n| Ok(self.term_at(n)), &rho, valid_from, ctx)
    }

    pub fn extra_string(&self) -> String {
        if self.extra_is_one() {
            return "1".into();
        }
        let num = fmt_poly(&self.extra_num, "n");
        let den = fmt_poly(&self.extra_den, "n");
        if self.extra_den.is_one() {
            num
        } else {
            format!("({}) / ({})", num, den)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scale": fmt_q(&self.scale),
            "poly": fmt_poly(&self.poly, "n"),
            "weight_num": self.num_poch.iter().map(fmt_q).collect::<Vec<_>>(),
            "weight_den": self.den_poch.iter().map(fmt_q).collect::<Vec<_>>(),
            "extra": self.extra_string(),
            "z": fmt_q(&self.z),
        })
    }
}

impl fmt::Display for ClosedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let weights = |bases: &[Q]| -> String {
            bases
                .iter()
                .map(|b| format!("({})_n", fmt_q(b)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "{} · Σ_n ({}) · [{}] / [{}] · ({})^n",
            fmt_q(&self.scale),
            fmt_poly(&self.poly, "n"),
            if self.num_poch.is_empty() {
                "1".into()
            } else {
                weights(&self.num_poch)
            },
            if self.den_poch.is_empty() {
                "1".into()
            } else {
                weights(&self.den_poch)
            },
            fmt_q(&self.z),
        )?;
        if !self.extra_is_one() {
            write!(f, " · {}", self.extra_string())?;
        }
        Ok(())
    }
}

// ---- Canonicalization ----

/// Multiset of exact rationals with ordered, deterministic iteration.
type Multiset = BTreeMap<Q, u32>;

fn multiset_from(items: &[Q]) -> Multiset {
    let mut m = Multiset::new();
    for x in items {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

fn multiset_remove(m: &mut Multiset, key: &Q) {
    let count = m.get_mut(key).expect("key present");
    *count -= 1;
    if *count == 0 {
        m.remove(key);
    }
}

fn multiset_to_vec(m: &Multiset) -> Vec<Q> {
    let mut out = Vec::new();
    for (k, c) in m {
        for _ in 0..*c {
            out.push(k.clone());
        }
    }
    out
}

/// Rewrite `rational(n) · ∏(b)_n / ∏(d)_n · zⁿ` into canonical form.
///
/// `rational` is the scalar part of the boundary column — certificate
/// times prefactor times the weight constant, all at `k = 0`. The moves:
///
/// 1. reject a denominator root at a nonnegative integer (a genuine pole);
/// 2. cancel identical numerator/denominator bases;
/// 3. absorb each linear factor `(n + c)` of `rational` into an adjacent
///    Pochhammer weight via `(x)_n (x + n) = x (x + 1)_n`, tracking the
///    scalar `x` in `scale`;
/// 4. flatten a numerator base sitting a positive integer *above* a
///    denominator base into fresh linear factors (a finite product);
/// 5. collapse a numerator base sitting a positive integer *below* a
///    denominator base into the rational cofactor `extra`;
/// 6. make the polynomial and `extra` integer-coprime, pushing contents
///    and sign into `scale`.
pub fn canonicalize(
    rational: UniRatFun,
    num_bases: &[Q],
    den_bases: &[Q],
    z: &Q,
) -> Result<ClosedSeries> {
    for b in num_bases.iter().chain(den_bases) {
        if !b.is_positive() {
            return Err(Error::BadPochBase {
                base: fmt_q(b),
            });
        }
    }
    if rational.num().is_zero() {
        return Ok(ClosedSeries::zero());
    }
    let bad = rational.den().nonneg_integer_roots();
    if let Some(r) = bad.first() {
        return Err(Error::Pole(format!(
            "boundary column has a pole at n = {}",
            r
        )));
    }

    let mut scale = Q::one();
    let mut nb = multiset_from(num_bases);
    let mut db = multiset_from(den_bases);

    // Split both sides of `rational` into linear factors (n + c) plus a
    // factor-free residual. `rational_roots` returns roots ρ of (n − ρ);
    // we key factors by c = −ρ.
    let (num_roots, num_res) = rational.num().rational_roots();
    let (den_roots, den_res) = rational.den().rational_roots();
    let mut num_lin = Multiset::new();
    let mut den_lin = Multiset::new();
    for (root, m) in num_roots {
        *num_lin.entry(-root).or_insert(0) += m;
    }
    for (root, m) in den_roots {
        *den_lin.entry(-root).or_insert(0) += m;
    }

    loop {
        let mut changed = false;

        // (2) identical bases cancel.
        let shared: Vec<Q> = nb.keys().filter(|k| db.contains_key(*k)).cloned().collect();
        for b in shared {
            let m = (*nb.get(&b).unwrap()).min(*db.get(&b).unwrap());
            for _ in 0..m {
                multiset_remove(&mut nb, &b);
                multiset_remove(&mut db, &b);
            }
            changed = true;
        }

        // (3a) numerator factors (n + c): bump a numerator base c, or
        // lower a denominator base c + 1.
        let cs: Vec<Q> = num_lin.keys().cloned().collect();
        for c in cs {
            while num_lin.contains_key(&c) {
                if nb.contains_key(&c) {
                    multiset_remove(&mut num_lin, &c);
                    multiset_remove(&mut nb, &c);
                    *nb.entry(&c + Q::one()).or_insert(0) += 1;
                    scale *= &c;
                } else if !c.is_zero() && db.contains_key(&(&c + Q::one())) {
                    multiset_remove(&mut num_lin, &c);
                    multiset_remove(&mut db, &(&c + Q::one()));
                    *db.entry(c.clone()).or_insert(0) += 1;
                    scale *= &c;
                } else {
                    break;
                }
                changed = true;
            }
        }

        // (3b) denominator factors (n + c): bump a denominator base c, or
        // lower a numerator base c + 1.
        let cs: Vec<Q> = den_lin.keys().cloned().collect();
        for c in cs {
            while den_lin.contains_key(&c) {
                if db.contains_key(&c) {
                    multiset_remove(&mut den_lin, &c);
                    multiset_remove(&mut db, &c);
                    *db.entry(&c + Q::one()).or_insert(0) += 1;
                    scale /= &c;
                } else if !c.is_zero() && nb.contains_key(&(&c + Q::one())) {
                    multiset_remove(&mut den_lin, &c);
                    multiset_remove(&mut nb, &(&c + Q::one()));
                    *nb.entry(c.clone()).or_insert(0) += 1;
                    scale /= &c;
                } else {
                    break;
                }
                changed = true;
            }
        }

        // (4) numerator base an integer above a denominator base:
        // (d + j)_n / (d)_n = ∏_{i<j} (n + d + i) / (d + i).
        'collapse_up: for b_num in nb.keys().cloned().collect::<Vec<_>>() {
            for b_den in db.keys().cloned().collect::<Vec<_>>() {
                let gap = &b_num - &b_den;
                if gap.is_integer() && gap.is_positive() {
                    let j = gap.to_integer();
                    multiset_remove(&mut nb, &b_num);
                    multiset_remove(&mut db, &b_den);
                    let mut c = b_den.clone();
                    let mut i = num_bigint::BigInt::from(0);
                    while i < j {
                        *num_lin.entry(c.clone()).or_insert(0) += 1;
                        scale /= &c;
                        c += Q::one();
                        i += 1;
                    }
                    changed = true;
                    break 'collapse_up;
                }
            }
        }

        if !changed {
            break;
        }
    }

    // (5) numerator base an integer below a denominator base:
    // (b)_n / (b + j)_n = ∏_{i<j} (b + i) / (n + b + i).
    let mut extra_num_const = Q::one();
    let mut extra_den = Poly::<Q>::one();
    'collapse_down: loop {
        for b_num in nb.keys().cloned().collect::<Vec<_>>() {
            for b_den in db.keys().cloned().collect::<Vec<_>>() {
                let gap = &b_den - &b_num;
                if gap.is_integer() && gap.is_positive() {
                    let j = gap.to_integer();
                    multiset_remove(&mut nb, &b_num);
                    multiset_remove(&mut db, &b_den);
                    let mut c = b_num.clone();
                    let mut i = num_bigint::BigInt::from(0);
                    while i < j {
                        extra_num_const *= &c;
                        extra_den = extra_den.mul(&Poly::new(vec![c.clone(), Q::one()]));
                        c += Q::one();
                        i += 1;
                    }
                    continue 'collapse_down;
                }
            }
        }
        break;
    }

    // (6) reassemble and normalize contents into `scale`.
    let mut num_poly = num_res;
    for (c, m) in &num_lin {
        for _ in 0..*m {
            num_poly = num_poly.mul(&Poly::new(vec![c.clone(), Q::one()]));
        }
    }
    let mut den_poly = den_res;
    for (c, m) in &den_lin {
        for _ in 0..*m {
            den_poly = den_poly.mul(&Poly::new(vec![c.clone(), Q::one()]));
        }
    }

    let (poly, num_content) = num_poly.primitive_integer();
    scale *= num_content;

    let extra_den_total = extra_den.mul(&den_poly);
    let (extra_den, den_content) = extra_den_total.primitive_integer();
    scale /= den_content;
    scale *= &extra_num_const;
    // `extra`'s numerator is a bare constant by construction; fold it into
    // scale entirely and leave the numerator polynomial at 1.
    let extra_num = Poly::one();

    Ok(ClosedSeries {
        scale,
        poly,
        num_poch: multiset_to_vec(&nb),
        den_poch: multiset_to_vec(&db),
        extra_num,
        extra_den,
        z: z.clone(),
    })
}

// ---- Tests ----
