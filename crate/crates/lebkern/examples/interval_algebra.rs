//! Exact interval-set algebra, Lebesgue measure, certified cover sums, and
//! finite-subcover extraction.
//!
//! ```sh
//! cargo run --example interval_algebra
//! ```

use lebkern::intervals::{cover_upper_bound, extract_finite_subcover, Interval, IntervalSet};
use lebkern::xreal::{rat, rat_int};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntervalSet::from_strings(&["[0,3]"])?;
    let b = IntervalSet::from_strings(&["(1,2)"])?;
    println!("A           = {a}");
    println!("B           = {b}");
    println!("A \\ B       = {}", a.difference(&b));
    println!("A n B       = {}", a.intersect(&b));
    println!("complement A = {}", a.complement());

    // Endpoint flags matter for set algebra but not for the measure.
    let touching = IntervalSet::from_strings(&["(0,1)", "(1,2)"])?;
    println!("(0,1) u (1,2) stays split: {touching}");
    let merged = IntervalSet::from_strings(&["(0,1]", "[1,2)"])?;
    println!("(0,1] u [1,2) merges:      {merged}");
    println!("lambda((0,1) u (1,2))      = {}", touching.lebesgue());

    println!("lambda([2,5])  = {}", IntervalSet::from_strings(&["[2,5]"])?.lebesgue());
    println!("lambda({{4}})    = {}", IntervalSet::from_strings(&["[4,4]"])?.lebesgue());
    println!("lambda([0,inf)) = {}", IntervalSet::from_strings(&["[0,inf)"])?.lebesgue());

    // A cover's total length certifies an upper bound on the measure.
    let target = IntervalSet::from_strings(&["[0,1]"])?;
    let cover = vec![
        "(-1/4,3/4)".parse::<Interval>()?,
        "(1/2,5/4)".parse::<Interval>()?,
    ];
    let upper = cover_upper_bound(&target, &cover)?;
    println!(
        "cover sum {} >= lambda([0,1]) = {}",
        upper,
        target.lebesgue()
    );

    // Finite subcover extraction walks the cover left to right.
    let chain = extract_finite_subcover(
        &rat_int(0),
        &rat_int(1),
        &[
            (rat(-1, 2), rat(3, 5)),
            (rat(7, 2), rat_int(4)),
            (rat(2, 5), rat(6, 5)),
        ],
    )?;
    println!("subcover chain for [0,1]: indices {chain:?}");
    Ok(())
}
