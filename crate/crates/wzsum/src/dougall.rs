//! The classical ₅F₄-kernel summand families and their accelerated term
//! constructions.
//!
//! Two kernels are supported: the plain kernel
//! A(a,b,c,d,e,k) = (a+2k)·(b)ₖ(c)ₖ(d)ₖ(e)ₖ /
//! [(1+a−b)ₖ(1+a−c)ₖ(1+a−d)ₖ(1+a−e)ₖ], whose k-sum Ω(a,…,e) converges for
//! 1+2a−b−c−d−e > 0, and its alternating e → −∞ limit
//! B(a,b,c,d,k) = (−1)ᵏ·(a+2k)·(b)ₖ(c)ₖ(d)ₖ /
//! [(1+a−b)ₖ(1+a−c)ₖ(1+a−d)ₖ], whose k-sum is Φ(a,b,c,d).
//!
//! Key components:
//! - [`SeriesKind`], [`KernelParams`], [`SlopePattern`]: the base
//!   parameters and the per-parameter acceleration slopes in n.
//! - [`build_term`]: the bivariate summand U(n,k) obtained by replacing
//!   each parameter x with x + sₓ·n.
//! - [`convergence_margin`]: the quantity 1+2a−b−c−d−e that gates Ω.
//! - [`slow_sum_estimate`]: low-assurance direct evaluation of Ω or Φ,
//!   used only as a cross-check against the accelerated series (direct
//!   convergence is polynomial, so high precision is out of reach here).
//!
//! Conventions: slopes are nonnegative integers and the derived
//! denominator slopes s_a − sₓ must also be nonnegative; the limit kernel
//! is selected structurally by [`SeriesKind::Phi`] (never by a large
//! negative e).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::bigfloat::BigFloat;
use crate::bipoly::{BiPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::rat::{fmt_q, is_integer, parse_q, q, qi, Q};
use crate::term::{HypergeometricTerm, PochFactor, Position};

// ---- Domain types ----

/// Which kernel the parameters feed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    /// The plain kernel; five parameters (a, b, c, d, e).
    Omega,
    /// The alternating e → −∞ limit kernel; four parameters (a, b, c, d).
    Phi,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesKind::Omega => write!(f, "omega"),
            SeriesKind::Phi => write!(f, "phi"),
        }
    }
}

impl FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omega" => Ok(SeriesKind::Omega),
            "phi" => Ok(SeriesKind::Phi),
            other => Err(Error::InvalidInput(format!(
                "unknown series kind `{}` (expected omega or phi)",
                other
            ))),
        }
    }
}

/// Base parameters of one kernel instance. `e` is present exactly for
/// [`SeriesKind::Omega`]; degenerate choices (parameters producing poles
/// or divergence) are diagnosed by the operations, not the constructor.
#[derive(Clone, PartialEq, Debug)]
pub struct KernelParams {
    pub kind: SeriesKind,
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
    pub e: Option<Q>,
}

impl KernelParams {
    pub fn omega(a: Q, b: Q, c: Q, d: Q, e: Q) -> Self {
        KernelParams {
            kind: SeriesKind::Omega,
            a,
            b,
            c,
            d,
            e: Some(e),
        }
    }

    pub fn phi(a: Q, b: Q, c: Q, d: Q) -> Self {
        KernelParams {
            kind: SeriesKind::Phi,
            a,
            b,
            c,
            d,
            e: None,
        }
    }

    /// Parse a comma-separated parameter list ("3/2,1/2,1,1,1"); the list
    /// length must match the kind (5 for omega, 4 for phi).
    pub fn from_csv(kind: SeriesKind, s: &str) -> Result<Self> {
        let vals: Result<Vec<Q>> = s.split(',').map(|p| parse_q(p.trim())).collect();
        let mut vals = vals?;
        let want = match kind {
            SeriesKind::Omega => 5,
            SeriesKind::Phi => 4,
        };
        if vals.len() != want {
            return Err(Error::InvalidInput(format!(
                "{} takes {} parameters, got {}",
                kind,
                want,
                vals.len()
            )));
        }
        let e = if kind == SeriesKind::Omega {
            vals.pop()
        } else {
            None
        };
        let d = vals.pop().unwrap();
        let c = vals.pop().unwrap();
        let b = vals.pop().unwrap();
        let a = vals.pop().unwrap();
        Ok(KernelParams { kind, a, b, c, d, e })
    }

    /// The lower parameters (b, c, d[, e]) in declaration order.
    pub fn lower(&self) -> Vec<Q> {
        let mut v = vec![self.b.clone(), self.c.clone(), self.d.clone()];
        if let Some(e) = &self.e {
            v.push(e.clone());
        }
        v
    }

    pub fn to_json(&self) -> Value {
        let mut list = vec![fmt_q(&self.a), fmt_q(&self.b), fmt_q(&self.c), fmt_q(&self.d)];
        if let Some(e) = &self.e {
            list.push(fmt_q(e));
        }
        json!({ "kind": self.kind.to_string(), "params": list })
    }
}

/// Per-parameter acceleration slopes (s_a, s_b, s_c, s_d[, s_e]): the
/// n-direction replaces each parameter x by x + sₓ·n. Length must match
/// the kind (5 for omega, 4 for phi); entries are nonnegative by type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlopePattern {
    pub slopes: Vec<u32>,
}

impl SlopePattern {
    pub fn new(slopes: Vec<u32>) -> Self {
        SlopePattern { slopes }
    }

    pub fn matches(&self, kind: SeriesKind) -> bool {
        self.slopes.len()
            == match kind {
                SeriesKind::Omega => 5,
                SeriesKind::Phi => 4,
            }
    }
}

impl FromStr for SlopePattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let slopes: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match slopes {
            Ok(slopes) if !slopes.is_empty() => Ok(SlopePattern { slopes }),
            _ => Err(Error::InvalidInput(format!(
                "slope pattern must be comma-separated nonnegative integers, got `{}`",
                s
            ))),
        }
    }
}

impl fmt::Display for SlopePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

// ---- Term construction ----

/// The accelerated summand U(n,k): the kernel with every parameter x
/// replaced by x + sₓ·n. Numerator Pochhammers (x + sₓn)ₖ for each lower
/// parameter, denominators (1 + a − x + (s_a − sₓ)n)ₖ, prefactor
/// a + s_a·n + 2k, and the alternating flag set for the Φ kernel.
pub fn build_term(base: &KernelParams, pattern: &SlopePattern) -> Result<HypergeometricTerm> {
    if !pattern.matches(base.kind) {
        return Err(Error::InvalidInput(format!(
            "pattern {} has {} slopes but {} needs {}",
            pattern,
            pattern.slopes.len(),
            base.kind,
            base.lower().len() + 1
        )));
    }
    let s_a = pattern.slopes[0];
    let mut t = HypergeometricTerm::unit();
    t.alt_sign_k = base.kind == SeriesKind::Phi;
    t.prefactor = RationalFunction::from_bipoly(BiPoly::affine(
        base.a.clone(),
        qi(s_a as i64),
        qi(2),
    ));
    let push = |intercept: Q, slope: u32, pos: Position, t: &mut HypergeometricTerm| {
        for f in t.poch.iter_mut() {
            if f.position == pos && f.base_intercept == intercept && f.base_slope_n == slope {
                f.multiplicity += 1;
                return;
            }
        }
        t.poch.push(PochFactor::in_k(intercept, slope, pos, 1));
    };
    for (x, s_x) in base.lower().into_iter().zip(&pattern.slopes[1..]) {
        push(x.clone(), *s_x, Position::Numerator, &mut t);
        if *s_x > s_a {
            return Err(Error::NegativeSlope(format!(
                "denominator base (1+a−x) + ({}−{})·n for lower parameter x = {}",
                s_a,
                s_x,
                fmt_q(&x)
            )));
        }
        push(
            Q::one() + &base.a - x,
            s_a - s_x,
            Position::Denominator,
            &mut t,
        );
    }
    t.validate()?;
    Ok(t)
}

/// The quantity 1 + 2a − b − c − d − e controlling convergence of the
/// plain kernel's k-sum (positive ⇔ convergent; the Φ kernel needs no
/// margin and is rejected here).
pub fn convergence_margin(base: &KernelParams) -> Result<Q> {
    match &base.e {
        Some(e) => Ok(Q::one() + qi(2) * &base.a - &base.b - &base.c - &base.d - e),
        None => Err(Error::InvalidInput(
            "convergence margin applies to the omega kernel only".into(),
        )),
    }
}

// ---- Direct (slow) evaluation ----

/// Outcome of a direct summation of Ω or Φ: a value, a heuristic error
/// estimate, and whether the estimate met the requested precision. Direct
/// convergence is polynomial in the term count, so this is a low-assurance
/// cross-check (≲ 6 digits), never a primary oracle.
#[derive(Clone, Debug)]
pub struct SlowSumEstimate {
    pub value: BigFloat,
    pub error_estimate: BigFloat,
    pub reliable: bool,
    pub terms_used: u64,
}

/// Direct partial sum of the kernel's k-series.
///
/// Ω uses plain summation with a tail bound by integral comparison against
/// the empirically fitted power of the trailing terms; Φ (alternating,
/// polynomially decaying) uses iterated averaging of partial sums, with
/// reliability read off the stabilization of successive averaging passes.
pub fn slow_sum_estimate(
    base: &KernelParams,
    digits: u32,
    max_terms: u64,
) -> Result<SlowSumEstimate> {
    if digits == 0 || max_terms == 0 {
        return Err(Error::InvalidInput(
            "slow sum needs digits >= 1 and max_terms >= 1".into(),
        ));
    }
    // Denominator bases 1+a−x must avoid nonpositive integers, else some
    // term hits a pole.
    for x in base.lower() {
        let db = Q::one() + &base.a - &x;
        if is_integer(&db) && !db.is_positive() {
            return Err(Error::Pole(format!(
                "denominator base 1+a−x = {} for lower parameter x = {}",
                fmt_q(&db),
                fmt_q(&x)
            )));
        }
    }
    match base.kind {
        SeriesKind::Omega => {
            let margin = convergence_margin(base)?;
            if !margin.is_positive() {
                return Err(Error::Divergent {
                    margin: fmt_q(&margin),
                });
            }
            slow_sum_direct(base, digits, max_terms)
        }
        SeriesKind::Phi => slow_sum_averaged(base, digits, max_terms),
    }
}

/// k-th to (k+1)-th ratio of the Pochhammer core (prefactor excluded).
fn core_ratio(base: &KernelParams, k: u64) -> Q {
    let kq = qi(k as i64);
    let mut num = Q::one();
    let mut den = Q::one();
    for x in base.lower() {
        num = num * (&x + &kq);
        den = den * (Q::one() + &base.a - &x + &kq);
    }
    num / den
}

/// Direct summation with power-fit tail bound (Ω only; terms eventually
/// behave like C·k^(−1−2·margin), but the exponent is fitted, not assumed).
///
/// The Pochhammer core decays polynomially without bound, so it is kept in
/// a floating representation core·10^(−shift): whenever the stored part
/// drops below 10⁻⁴ it is scaled back up and the shift recorded. A plain
/// fixed-point core would bottom out at one ulp and stay there (rounding
/// half away from zero), polluting every later term.
fn slow_sum_direct(base: &KernelParams, digits: u32, max_terms: u64) -> Result<SlowSumEstimate> {
    let scale = digits + 10;
    let mut core = BigFloat::from_int(1, scale);
    let mut shift_factor = Q::one(); // 10^shift
    let renorm: Q = qi(1_000_000);
    let mut sum = BigFloat::zero(scale);
    // (index, |term|) samples for the power fit over a trailing factor-10
    // window.
    let mut samples: VecDeque<(u64, f64)> = VecDeque::new();
    let mut last_tail = f64::INFINITY;
    for k in 0..max_terms {
        if core.is_zero() {
            // Terminating series (some numerator base is a nonpositive
            // integer): no truncation error, only per-term rounding.
            return Ok(SlowSumEstimate {
                value: sum,
                error_estimate: float_from_f64(
                    k as f64 * 10f64.powi(-(scale as i32)),
                    scale,
                ),
                reliable: true,
                terms_used: k,
            });
        }
        let prefactor = &base.a + qi(2 * k as i64);
        let term = core.mul_q(&(prefactor / &shift_factor));
        sum = sum.add(&term);
        let t_abs = term.abs().approx_f64();
        if k % 16 == 0 {
            samples.push_back((k, t_abs));
        }
        if k >= 160 && k % 80 == 0 && t_abs > 0.0 {
            while samples.len() >= 2 && samples[1].0 <= k / 10 {
                samples.pop_front();
            }
            let (k0, t0) = samples[0];
            if k0 <= k / 10 && t0 > 0.0 {
                let p = (t_abs / t0).ln() / (k as f64 / k0 as f64).ln();
                if p < -1.05 {
                    // ∫_k^∞ |t_k|·(x/k)^p dx = |t_k|·k/(−1−p), padded for
                    // fit slack and the per-term rounding budget.
                    let tail = t_abs * k as f64 / (-1.0 - p) * 4.0
                        + (k as f64 + 1.0) * 10f64.powi(-(scale as i32));
                    last_tail = tail;
                    if tail < 10f64.powi(-(digits as i32)) {
                        return Ok(SlowSumEstimate {
                            value: sum,
                            error_estimate: float_from_f64(tail, scale),
                            reliable: true,
                            terms_used: k + 1,
                        });
                    }
                }
            }
        }
        core = core.mul_q(&core_ratio(base, k));
        while !core.is_zero() && core.abs_lt_pow10(-4) {
            core = core.mul_q(&renorm);
            shift_factor = &shift_factor * &renorm;
        }
    }
    Ok(SlowSumEstimate {
        value: sum,
        error_estimate: float_from_f64(last_tail, scale),
        reliable: false,
        terms_used: max_terms,
    })
}

/// Iterated averaging of partial sums (Φ only): each averaging pass
/// annihilates the leading alternating component, so the pass apex
/// converges geometrically while plain partial sums crawl polynomially.
fn slow_sum_averaged(base: &KernelParams, digits: u32, max_terms: u64) -> Result<SlowSumEstimate> {
    let scale = digits + 10;
    let m = max_terms.min(240) as usize;
    let mut core = BigFloat::from_int(1, scale);
    let mut sum = BigFloat::zero(scale);
    let mut partials: Vec<BigFloat> = Vec::with_capacity(m);
    for k in 0..m as u64 {
        let mut term = core.mul_q(&(&base.a + qi(2 * k as i64)));
        if k % 2 == 1 {
            term = term.neg();
        }
        sum = sum.add(&term);
        partials.push(sum.clone());
        core = core.mul_q(&core_ratio(base, k));
    }
    if m < 2 {
        return Ok(SlowSumEstimate {
            value: sum,
            error_estimate: BigFloat::from_int(1, scale),
            reliable: false,
            terms_used: m as u64,
        });
    }
    let half = BigInt::from(2);
    let mut row = partials;
    let mut best: Option<(BigFloat, BigFloat)> = None; // (apex, |apex change|)
    while row.len() > 1 {
        let prev_apex = row[0].clone();
        for i in 0..row.len() - 1 {
            row[i] = row[i].add(&row[i + 1]).div_int(&half);
        }
        row.pop();
        let change = row[0].sub(&prev_apex).abs();
        if best
            .as_ref()
            .map_or(true, |(_, b)| change.cmp_abs(b) == std::cmp::Ordering::Less)
        {
            best = Some((row[0].clone(), change));
        }
    }
    let (value, stabilization) = best.expect("at least one averaging pass");
    // Rounding budget: every partial sum and every average rounds once.
    let budget = float_from_f64((m * m) as f64 * 10f64.powi(-(scale as i32)), scale);
    let error_estimate = stabilization.add(&budget);
    let reliable = error_estimate.abs_lt_pow10(-(digits as i64));
    Ok(SlowSumEstimate {
        value,
        error_estimate,
        reliable,
        terms_used: m as u64,
    })
}

fn float_from_f64(v: f64, scale: u32) -> BigFloat {
    let rat = Q::from_float(v).unwrap_or_else(|| q(1, 1));
    BigFloat::from_q(&rat, scale)
}

// ---- Tests ----
