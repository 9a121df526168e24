//! Simple functions: the three representations, pointwise algebra, and the
//! nonnegative integral with its closed forms.
//!
//! ```sh
//! cargo run --example simple_functions
//! ```

use lebkern::intervals::IntervalSet;
use lebkern::measures::{FiniteSpace, Measure, MeasurableSet, MeasurableSpace, Point};
use lebkern::simplefn::{
    integral_counting, integral_dirac, integral_over_subset, integral_sf_plus, BinOp, SimpleFn,
    Term,
};
use lebkern::xreal::{rat, rat_int};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A step function on the line: 2 on [0,2), plus 1 on [1,3).
    let space = MeasurableSpace::RealLine;
    let f = SimpleFn::new(
        space.clone(),
        vec![
            Term {
                coef: rat_int(2),
                support: MeasurableSet::Real(IntervalSet::from_strings(&["[0,2)"])?),
            },
            Term {
                coef: rat_int(1),
                support: MeasurableSet::Real(IntervalSet::from_strings(&["[1,3)"])?),
            },
        ],
    )?;
    println!("f            = {f}");
    println!("canonical f  = {}", f.canonicalize());
    println!("f(3/2)       = {}", f.eval(&Point::Real(rat(3, 2))));

    // Algebra stays within disjoint representations.
    let g = SimpleFn::indicator(
        space.clone(),
        MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]"])?),
    )?;
    let sum = SimpleFn::combine(BinOp::Add, &f, &g)?;
    let prod = SimpleFn::combine(BinOp::Mul, &f, &g)?;
    println!("f + 1_[0,1]  = {}", sum.canonicalize());
    println!("f * 1_[0,1]  = {}", prod.canonicalize());

    // The integral is the canonical sum of value times preimage measure,
    // and is representation-independent.
    let lambda = Measure::lebesgue();
    println!("int f dl     = {}", integral_sf_plus(&f, &lambda)?);
    println!(
        "int_A f dl   = {} over A = [0,1]",
        integral_over_subset(&f, &lambda, &MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]"])?))?
    );

    // Closed forms for counting and Dirac measures, on a finite space.
    let fin = MeasurableSpace::Finite(FiniteSpace::discrete(3));
    let h = SimpleFn::new(
        fin.clone(),
        vec![
            Term {
                coef: rat(1, 2),
                support: MeasurableSet::Finite(0b011),
            },
            Term {
                coef: rat_int(3),
                support: MeasurableSet::Finite(0b100),
            },
        ],
    )?;
    let ys = vec![Point::Elem(0), Point::Elem(2)];
    println!("sum over Y   = {}", integral_counting(&h, &ys)?);
    println!("h(e1)        = {}", integral_dirac(&h, &Point::Elem(1))?);

    // Cross-check against the measure route.
    let counting = Measure::counting_finite(FiniteSpace::discrete(3), 0b101)?;
    println!(
        "same via mu  = {}",
        integral_sf_plus(&h, &counting)?
    );
    Ok(())
}
