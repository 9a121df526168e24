//! Extended-real arithmetic: the total measure-theory conventions next to
//! the partial standard ones.
//!
//! ```sh
//! cargo run --example extended_reals
//! ```

use lebkern::xreal::{rat, XReal, XRealError};

fn main() -> Result<(), XRealError> {
    let half = XReal::Finite(rat(1, 2));
    let third = XReal::Finite(rat(1, 3));
    println!("1/2 + 1/3          = {}", half.add_checked(&third)?);
    println!("2 + inf            = {}", XReal::from_int(2).add_checked(&XReal::PosInf)?);
    println!(
        "inf + (-inf)       = {:?} (detected, not a silent convention)",
        XReal::PosInf.add_checked(&XReal::NegInf).unwrap_err()
    );
    println!(
        "inf + (-inf) total = {} (opt-in wrapper)",
        XReal::PosInf.add_total_zero(&XReal::NegInf)
    );

    // Multiplication is total in measure theory: zero absorbs infinity.
    println!("0 * inf            = {}", XReal::zero().mul_mt(&XReal::PosInf));
    println!("inf * (-2)         = {}", XReal::PosInf.mul_mt(&XReal::from_int(-2)));

    // Division on the nonnegative cone.
    println!("1 / 0              = {}", XReal::one().div_nonneg_mt(&XReal::zero())?);
    println!("inf / inf          = {}", XReal::PosInf.div_nonneg_mt(&XReal::PosInf)?);

    // Exponentiation with the total rule for the indeterminate forms.
    println!("0^0                = {}", XReal::zero().pow_mt(&XReal::zero())?);
    println!("1^inf              = {}", XReal::one().pow_mt(&XReal::PosInf)?);
    println!("(2/3)^(-2)         = {}", XReal::Finite(rat(2, 3)).pow_mt(&XReal::from_int(-2))?);
    println!(
        "2^(1/2)            = {:?} (irrational, refused)",
        XReal::from_int(2).pow_mt(&half).unwrap_err()
    );

    // Nonnegative series absorb infinity.
    let series = [half, third, XReal::PosInf];
    println!("1/2 + 1/3 + inf    = {}", XReal::sum_nonneg(&series)?);
    Ok(())
}
