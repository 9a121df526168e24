//! The convergence-theorem verifiers on declared-limit batteries.
//!
//! ```sh
//! cargo run --example convergence_theorems
//! ```

use lebkern::convergence::{
    verify_convergence, ConvergenceCase, ConvergenceTheorem, FnSeq, RateSpec,
};
use lebkern::intervals::{Interval, IntervalSet};
use lebkern::lebint::MeasurableFn;
use lebkern::measures::{Measure, MeasurableSet, MeasurableSpace};
use lebkern::simplefn::SimpleFn;
use lebkern::xreal::rat;
use num_rational::BigRational as Rat;
use num_traits::{One, Zero};

fn indicator(strings: &[&str]) -> MeasurableFn {
    MeasurableFn::Step(
        SimpleFn::indicator(
            MeasurableSpace::RealLine,
            MeasurableSet::Real(IntervalSet::from_strings(strings).unwrap()),
        )
        .unwrap(),
    )
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = Measure::lebesgue();
    let tol = rat(1, 1024);

    // Beppo Levi on the adapted stages of x: gap exactly 2^-(n+1).
    let x = MeasurableFn::affine_on(Interval::closed_from_ints(0, 1), Rat::one(), Rat::zero())?;
    let beppo = vec![ConvergenceCase {
        name: "adapted stages of x on [0,1]".into(),
        seq: FnSeq::AdaptedOf { f: x.clone() },
        limit: x,
        dominator: None,
        rate: Some(RateSpec::Geometric { coef: rat(1, 2) }),
    }];
    print!(
        "{}",
        verify_convergence(ConvergenceTheorem::BeppoLevi, &beppo, &lambda, 20, &tol)?
    );

    // Fatou on a nonincreasing indicator battery: exact inequality at every
    // truncation.
    let fatou = vec![ConvergenceCase {
        name: "1_[0, 1/2 + 1/(n+2)] down to 1_[0,1/2]".into(),
        seq: FnSeq::IndicatorShrink {
            a: Rat::zero(),
            b: rat(1, 2),
            c: Rat::one(),
            d: 2,
        },
        limit: indicator(&["[0,1/2]"]),
        dominator: None,
        rate: None,
    }];
    print!(
        "{}",
        verify_convergence(ConvergenceTheorem::Fatou, &fatou, &lambda, 30, &tol)?
    );

    // Dominated convergence with the harmonic rate 1/(n+2): at n = 1024 the
    // L1 distance is below 2^-10.
    let dominated = vec![ConvergenceCase {
        name: "1_[0,1/2+1/(n+2)] dominated by 1_[0,1]".into(),
        seq: FnSeq::IndicatorShrink {
            a: Rat::zero(),
            b: rat(1, 2),
            c: Rat::one(),
            d: 2,
        },
        limit: indicator(&["[0,1/2]"]),
        dominator: Some(indicator(&["[0,1]"])),
        rate: Some(RateSpec::Harmonic {
            coef: Rat::one(),
            shift: 2,
        }),
    }];
    print!(
        "{}",
        verify_convergence(ConvergenceTheorem::Dominated, &dominated, &lambda, 1024, &tol)?
    );
    Ok(())
}
