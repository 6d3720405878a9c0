//! Example 53: exactly constant column sums and a −3/(2π²) evaluation.
//!
//! For the kernel Ω(1/2, 1/2, 1/2, 1/2, 0) with slope pattern (3,1,1,1,3)
//! the weighted term again vanishes on its n = 0 slice, which forces
//! every column sum S(K) = Σ_n G(n,K) to the same value. Here the weight
//! carries an extra factor n², and the common column value is the
//! accelerated series −3/(2π²). Clearing the canonical scale −1/32 shows
//! the scale-free printed sum is −48/π².
//!
//! Run with: `cargo run --example pi_squared_constancy`

use wzsum::bigfloat::BigFloat;
use wzsum::numerics::{
    reference_constant, render_with_digits, ConstantName, PrecisionContext,
};
use wzsum::pipeline::{boundary_series, build_wz_pair, constancy_check, fixture};
use wzsum::rat::{fmt_q, q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = fixture(53)?;
    let pair = build_wz_pair(&fx.base, &fx.pattern, 3)?;
    println!(
        "weight carries n^{} and ratio z = {}",
        pair.n_power,
        fmt_q(&pair.multiplier.z)
    );
    println!("n = 0 slice vanishes: {}", pair.slice_is_zero());

    let series = boundary_series(&pair)?;
    println!("accelerated series:\n  {}", series);

    // Column sums across six columns agree far beyond double precision.
    let ctx = PrecisionContext::new(30);
    let report = constancy_check(&pair, &series, &[0, 1, 2, 3, 4, 5], &ctx)?;
    for (k, v) in report.columns.iter().zip(&report.values) {
        println!("S({}) = {}", k, render_with_digits(v, 28));
    }
    println!(
        "max pairwise deviation = {}",
        report.max_deviation.to_sci(3)
    );
    assert!(report.max_deviation.abs_lt_pow10(-25));

    // The common value is the series, and the series is -3/(2 pi^2).
    let value = series.value(&ctx)?;
    let pi = reference_constant(ConstantName::Pi, &ctx);
    let target = BigFloat::from_q(&q(-3, 2), ctx.working_scale()).div(&pi.mul(&pi));
    println!("series value = {}", render_with_digits(&value, 30));
    println!("-3/(2*pi^2)  = {}", render_with_digits(&target, 30));
    assert!(value.sub(&target).abs_lt_pow10(-30));
    assert!(report.common.sub(&target).abs_lt_pow10(-24));

    // Scale-free printed form: dividing out the canonical -1/32 scale
    // gives 48/pi^2 with the sign absorbed.
    let printed = value.div(&BigFloat::from_q(&series.scale, value.scale()));
    let free_target = BigFloat::from_int(48, ctx.working_scale()).div(&pi.mul(&pi));
    println!(
        "value / scale = {} = 48/pi^2",
        render_with_digits(&printed, 30)
    );
    assert!(printed.sub(&free_target).abs_lt_pow10(-27));
    Ok(())
}
