//! Example 45: a divergence-margin-zero kernel that still yields 1/π².
//!
//! The kernel Ω(1/2, 1/2, 1/2, 1/2, 1/2) sits exactly on the boundary of
//! convergence — its own k-sum is undefined — yet the pair machinery
//! closes the identity anyway: the n = 0 slice of the weighted term is
//! exactly zero, so every boundary column sums to the same value, and
//! that constant is the accelerated series 1/π². Shifting the pair down
//! one row then evaluates the ascended kernel Ω(7/2, 1/2, 3/2, 5/2, 5/2)
//! in closed form: 16 − 1024/(9π²).
//!
//! Run with: `cargo run --example one_over_pi_squared`

use wzsum::dougall::convergence_margin;
use wzsum::numerics::{render_with_digits, PrecisionContext};
use wzsum::pipeline::{
    boundary_series, build_wz_pair, column_sum, fixture, shifted_pair_value,
    sum_identity_report,
};
use wzsum::rat::fmt_q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = fixture(45)?;
    let margin = convergence_margin(&fx.base)?;
    println!(
        "kernel {} has convergence margin {} -- its bare k-sum is undefined",
        fx.base.kind,
        fmt_q(&margin)
    );

    let pair = build_wz_pair(&fx.base, &fx.pattern, 3)?;
    println!(
        "weighted term vanishes on the n = 0 slice: {}",
        pair.slice_is_zero()
    );

    // Because F(0,k) = 0 for every k, summing the pair relation over a
    // rectangle shows the column sums S(K) = sum_n G(n,K) are all equal.
    let series = boundary_series(&pair)?;
    let ctx = PrecisionContext::new(30);
    for col in [0u64, 7, 40] {
        let s = column_sum(&pair, &series, col, &ctx)?;
        println!("S({:>2}) = {}", col, render_with_digits(&s, 25));
    }

    // The common value is the accelerated series itself: 1/pi^2.
    let value = series.value(&ctx)?;
    println!("series value          = {}", render_with_digits(&value, 30));
    let pi = wzsum::numerics::reference_constant(wzsum::numerics::ConstantName::Pi, &ctx);
    let inv_pi2 = wzsum::bigfloat::BigFloat::from_int(1, ctx.working_scale()).div(&pi.mul(&pi));
    println!("1/pi^2                = {}", render_with_digits(&inv_pi2, 30));
    assert!(value.sub(&inv_pi2).abs_lt_pow10(-30));

    // The identity report records how the books balance: the inner sum
    // contributes exactly zero and the whole value rides on the boundary.
    let identity = sum_identity_report(&pair, &series, &ctx)?;
    println!(
        "identity: inner = {} (exact: {}), boundary = {}, consistent = {}",
        render_with_digits(&identity.inner, 10),
        identity.inner_exact,
        render_with_digits(&identity.boundary, 10),
        identity.consistent
    );

    // Discard the n = 0 row and renormalize: the remaining rows form the
    // pair of the parameter-ascended kernel, evaluated here to 25 digits.
    let shifted = shifted_pair_value(&pair, &series, 1, &ctx)?;
    println!(
        "\nshifted kernel {}: sum = {}",
        shifted.shifted_base.kind,
        render_with_digits(&shifted.kernel_value, 25)
    );
    let cross = shifted
        .slow_agrees
        .map(|a| if a { "agrees" } else { "DISAGREES" })
        .unwrap_or("unavailable");
    println!("direct partial-sum cross-check: {}", cross);

    // Closed form of the ascended sum: 16 - 1024/(9 pi^2).
    let closed = wzsum::bigfloat::BigFloat::from_int(16, ctx.working_scale()).sub(
        &wzsum::bigfloat::BigFloat::from_int(1024, ctx.working_scale())
            .div(&pi.mul(&pi).mul_q(&wzsum::rat::qi(9))),
    );
    println!("16 - 1024/(9*pi^2)     = {}", render_with_digits(&closed, 25));
    assert!(shifted.kernel_value.sub(&closed).abs_lt_pow10(-25));
    Ok(())
}
