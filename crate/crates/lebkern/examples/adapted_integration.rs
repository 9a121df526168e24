//! Integration through dyadic adapted sequences: the stage table and
//! certified window for f(x) = x, signed integrals, the oriented Chasles
//! relation, Chebyshev's inequality, and the first mean value theorem.
//!
//! ```sh
//! cargo run --example adapted_integration
//! ```

use lebkern::intervals::{Interval, IntervalSet};
use lebkern::lebint::{
    chebyshev, first_mean_value, integral_mplus, integral_over_interval, integral_signed,
    pwl_integral_exact, seminorm_n1, MeasurableFn,
};
use lebkern::measures::{Measure, MeasurableSet, MeasurableSpace};
use lebkern::simplefn::{BinOp, SimpleFn};
use lebkern::xreal::{rat, Rat, XReal};
use num_traits::{One, Zero};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = Measure::lebesgue();
    let tol = rat(1, 65536);

    // f(x) = x on [0,1]: stages 1/2 - 2^-(n+1), certified window.
    let f = MeasurableFn::affine_on(Interval::closed_from_ints(0, 1), Rat::one(), Rat::zero())?;
    let out = integral_mplus(&f, &lambda, 8, &tol)?;
    for s in &out.stages {
        println!("stage n={:<2} integral = {}", s.n, s.integral);
    }
    println!(
        "lower = {}, certified gap = {}, antiderivative route = {}",
        out.value,
        out.bound.map(|b| lebkern::xreal::format_rat(&b)).unwrap_or_default(),
        pwl_integral_exact(&f, &lambda)?
    );

    // A signed step function integrates through its parts.
    let plus = SimpleFn::indicator(
        MeasurableSpace::RealLine,
        MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]"])?),
    )?;
    let minus = SimpleFn::indicator(
        MeasurableSpace::RealLine,
        MeasurableSet::Real(IntervalSet::from_strings(&["[2,4]"])?),
    )?;
    let signed = MeasurableFn::Step(SimpleFn::combine(
        BinOp::Add,
        &plus,
        &minus.scale(&-Rat::one()),
    )?);
    let v = integral_signed(&signed, &lambda, 8, &tol)?;
    println!("int (1_[0,1] - 1_[2,4]) dl = {} (exact: {})", v.value, v.exact);
    println!("N1 of the same             = {}", seminorm_n1(&signed, &lambda, 8, &tol)?);

    // Oriented interval integrals obey the Chasles relation.
    let fwd = integral_over_interval(&signed, &XReal::zero(), &XReal::from_int(4), &lambda, 8, &tol)?;
    let l = integral_over_interval(&signed, &XReal::zero(), &XReal::from_int(2), &lambda, 8, &tol)?;
    let r = integral_over_interval(&signed, &XReal::from_int(2), &XReal::from_int(4), &lambda, 8, &tol)?;
    println!(
        "Chasles: int_0^4 = {} = int_0^2 + int_2^4 = {} + {}",
        fwd.value, l.value, r.value
    );

    // Chebyshev: a * mu{|f| >= a} <= N1(f).
    let (lhs, rhs) = chebyshev(&f, &lambda, &XReal::Finite(rat(1, 2)), 8, &tol)?;
    println!("Chebyshev at a=1/2: {lhs} <= {rhs}");

    // First mean value theorem under the unit restriction of lambda.
    let unit = Measure::restricted(
        lambda,
        MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]"])?),
    )?;
    let mv = first_mean_value(&f, &unit, 8, &tol)?;
    println!(
        "mean value: {} <= {} <= {} (strict: {})",
        mv.lower, mv.mean, mv.upper, mv.strict
    );
    Ok(())
}
