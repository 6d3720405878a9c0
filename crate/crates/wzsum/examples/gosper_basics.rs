//! Indefinite hypergeometric summation: when does a term have an exact
//! antidifference?
//!
//! Gosper's algorithm decides, from the term ratio t(k+1)/t(k) alone,
//! whether t(k) = y(k+1)·t(k+1) − y(k)·t(k) for some rational y — and
//! returns y when it exists. Every telescoping certificate in this crate
//! ultimately comes from this decision procedure.
//!
//! Run with: `cargo run --example gosper_basics`

use wzsum::gosper::{gosper, gosper_verify};
use wzsum::poly::Poly;
use wzsum::rat::{qi, Q};
use wzsum::ratfun::UniRatFun;

fn ratio(num: &[i64], den: &[i64]) -> UniRatFun {
    UniRatFun::new(
        Poly::new(num.iter().map(|&c| qi(c)).collect::<Vec<Q>>()),
        Poly::new(den.iter().map(|&c| qi(c)).collect::<Vec<Q>>()),
    )
}

fn main() {
    // t(k) = k·k! has ratio t(k+1)/t(k) = (k+1)^2/k, and indeed
    // k·k! = Δ(k!) — the certificate is y(k) = 1/k... let Gosper find it.
    let r = ratio(&[1, 2, 1], &[0, 1]);
    match gosper(&r) {
        Some(y) => {
            println!("t(k) = k*k!     has antidifference with y(k) = {}", y.fmt_with_var("k"));
            assert!(gosper_verify(&r, &y));
            println!("  verified: y(k+1)*r(k) - y(k) = 1 exactly");
        }
        None => unreachable!("k*k! telescopes"),
    }

    // t(k) = k! (ratio k+1) does NOT telescope: Σ k! has no
    // hypergeometric closed form.
    let factorial = ratio(&[1, 1], &[1]);
    println!(
        "t(k) = k!       antidifference exists: {}",
        gosper(&factorial).is_some()
    );

    // t(k) = 1/k (ratio k/(k+1)) does not either — the harmonic numbers
    // are not a fixed rational multiple of 1/k.
    let harmonic = ratio(&[0, 1], &[1, 1]);
    println!(
        "t(k) = 1/k      antidifference exists: {}",
        gosper(&harmonic).is_some()
    );

    // t(k) = 1/(k(k+1)) telescopes to -1/k: partial fractions in disguise.
    let telescoping = ratio(&[0, 1], &[2, 1]);
    match gosper(&telescoping) {
        Some(y) => {
            println!(
                "t(k) = 1/(k(k+1)) has antidifference with y(k) = {}",
                y.fmt_with_var("k")
            );
            assert!(gosper_verify(&telescoping, &y));
        }
        None => unreachable!("1/(k(k+1)) telescopes"),
    }
}
