//! The measure kinds, their structural classification, the axiom verifier,
//! and uniqueness from a generating pi-system.
//!
//! ```sh
//! cargo run --example measures_zoo
//! ```

use lebkern::intervals::IntervalSet;
use lebkern::measures::{
    classify, tensor_measure, verify_measure_axioms, verify_uniqueness_pi_system, FiniteSpace,
    Measure, MeasurableSet,
};
use lebkern::setsys::SubsetFamily;
use lebkern::xreal::{rat, XReal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = FiniteSpace::discrete(3);
    let table = Measure::finite_table(
        space.clone(),
        vec![
            XReal::Finite(rat(1, 2)),
            XReal::from_int(2),
            XReal::zero(),
        ],
    )?;
    let counting = Measure::counting_finite(space.clone(), 0b101)?;
    let dirac = Measure::dirac_finite(space.clone(), 1)?;
    let lambda = Measure::lebesgue();
    let restricted = Measure::restricted(
        lambda.clone(),
        MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]"])?),
    )?;
    let tensor = tensor_measure(&table, &counting)?;

    for (name, mu) in [
        ("table", &table),
        ("counting", &counting),
        ("dirac", &dirac),
        ("lebesgue", &lambda),
        ("restricted lambda|[0,1]", &restricted),
        ("table (x) counting", &tensor),
    ] {
        let c = classify(mu);
        println!(
            "{name:<24} finite={} sigma-finite={} diffuse={}",
            c.finite, c.sigma_finite, c.diffuse
        );
    }

    println!(
        "\ndirac({{e1,e2}})          = {}",
        dirac.eval(&MeasurableSet::Finite(0b110))?
    );
    println!(
        "counting({{e0,e1}})       = {}",
        counting.eval(&MeasurableSet::Finite(0b011))?
    );
    println!(
        "lambda([0,1] u [2,4])   = {}",
        lambda.eval(&MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]", "[2,4]"])?))?
    );

    // The axiom verifier checks additivity, monotonicity, Boole, and the
    // pseudopartition identity over a battery of sample sets.
    let samples: Vec<MeasurableSet> = (0u32..8).map(MeasurableSet::Finite).collect();
    let report = verify_measure_axioms(&table, &samples)?;
    println!(
        "\naxioms on the table measure: {} checks, {} violations",
        report.checks,
        report.violations.len()
    );

    // A corrupted table shows up as a reported violation.
    let corrupt = Measure::finite_table_unchecked(
        FiniteSpace::discrete(2),
        vec![XReal::from_int(-1), XReal::one()],
    );
    let bad = verify_measure_axioms(&corrupt, &[MeasurableSet::Finite(0b01)])?;
    println!("corrupted table: {:?}", bad.violations);

    // Two tables agreeing on the singleton pi-system agree everywhere.
    let g = SubsetFamily::new(space.universe().clone(), [0b000, 0b001, 0b010, 0b100, 0b111])?;
    let twin = Measure::finite_table(
        space.clone(),
        vec![
            XReal::Finite(rat(1, 2)),
            XReal::from_int(2),
            XReal::zero(),
        ],
    )?;
    let unique = verify_uniqueness_pi_system(&space, &g, &table, &twin)?;
    println!("uniqueness from the singleton pi-system: {unique}");
    Ok(())
}
