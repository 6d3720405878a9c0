//! Example 50: an alternating Φ kernel accelerated onto Catalan's constant.
//!
//! The alternating kernel Φ(3/2, 1, 1, 1) converges painfully slowly —
//! like Σ (−1)^k/k^(3/2). Accelerating it with slope pattern (3,0,2,2)
//! produces a positive series with ratio 16/27 whose closed form carries
//! a genuine rational cofactor 1/(2n+1) alongside the Pochhammer
//! quotients. Thirty times the series is Catalan's constant.
//!
//! Run with: `cargo run --example catalan_alternating`

use wzsum::numerics::{
    reference_constant, render_with_digits, ConstantName, PrecisionContext,
};
use wzsum::pipeline::{boundary_series, build_wz_pair, fixture};
use wzsum::rat::{fmt_q, q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = fixture(50)?;
    let ctx = PrecisionContext::new(30);

    // How slow is the kernel itself? Averaged partial sums of the
    // alternating series reach only a few digits in thousands of terms.
    let direct = wzsum::dougall::slow_sum_estimate(&fx.base, 4, 20_000)?;
    println!(
        "direct kernel sum: {} after {} terms (error ~ {})",
        direct.value.to_sci(8),
        direct.terms_used,
        direct.error_estimate.to_sci(2)
    );

    // The accelerated form.
    let pair = build_wz_pair(&fx.base, &fx.pattern, 3)?;
    let series = boundary_series(&pair)?;
    println!("accelerated series:\n  {}", series);
    println!("rational cofactor per term: {}", series.extra_string());

    // First few terms, exactly.
    for n in 0..3 {
        println!("term {} = {}", n, fmt_q(&series.term_at(n)));
    }

    // Thirty digits in ~a hundred terms.
    let value = series.value(&ctx)?;
    let catalan = reference_constant(ConstantName::Catalan, &ctx);
    println!("series value       = {}", render_with_digits(&value, 30));
    println!("Catalan's constant = {}", render_with_digits(&catalan, 30));
    assert!(value.sub(&catalan).abs_lt_pow10(-30));

    // The printed form (scale cleared) is 30*G.
    let printed = value.div(&wzsum::bigfloat::BigFloat::from_q(
        &series.scale,
        value.scale(),
    ));
    let thirty_g = catalan.mul_q(&q(30, 1));
    println!("printed-form sum   = {}", render_with_digits(&printed, 30));
    assert!(printed.sub(&thirty_g).abs_lt_pow10(-27));
    Ok(())
}
