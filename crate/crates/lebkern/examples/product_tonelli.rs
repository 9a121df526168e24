//! Product spaces: sections, measures of sections, tensor measures, and
//! Tonelli's identity on both representable carriers.
//!
//! ```sh
//! cargo run --example product_tonelli
//! ```

use lebkern::intervals::IntervalSet;
use lebkern::lebint::MeasurableFn;
use lebkern::measures::{tensor_measure, BoxSet, FiniteSpace, Measure, MeasurableSet, Point};
use lebkern::product::{
    measure_of_section, section_set, tonelli, tonelli_over_subset, FiniteProduct, SectionQuery,
    StepFn2D, TonelliFn,
};
use lebkern::simplefn::SimpleFn;
use lebkern::xreal::{rat, rat_int, XReal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A 2x3 product of finite spaces.
    let ctx = FiniteProduct::new(FiniteSpace::discrete(2), FiniteSpace::discrete(3))?;
    let rect = ctx.rectangle(0b10, 0b011);
    let q = SectionQuery {
        axis: 1,
        anchor: Point::Elem(1),
        target: MeasurableSet::Finite(rect),
    };
    println!("section of A1xA2 at e1 (inside A1): {}", section_set(&q, &ctx)?);

    let mu1 = Measure::finite_table(
        FiniteSpace::discrete(2),
        vec![XReal::Finite(rat(1, 2)), XReal::from_int(3)],
    )?;
    let mu2 = Measure::counting_finite(FiniteSpace::discrete(3), 0b111)?;
    let section_fn = measure_of_section(&MeasurableSet::Finite(rect), 1, &mu2, Some(&ctx))?;
    println!(
        "F_1(e0) = {}, F_1(e1) = {} (mu2(A2) * 1_A1)",
        section_fn.eval(&Point::Elem(0)),
        section_fn.eval(&Point::Elem(1))
    );

    let tensor = tensor_measure(&mu1, &mu2)?;
    println!(
        "(mu1 x mu2)(A1 x A2) = {} = mu1(A1) * mu2(A2)",
        tensor.eval(&MeasurableSet::Finite(rect))?
    );

    // Tonelli on a random-looking finite map: both axes agree.
    let values: Vec<XReal> = vec![
        XReal::one(),
        XReal::zero(),
        XReal::Finite(rat(5, 2)),
        XReal::from_int(2),
        XReal::Finite(rat(1, 3)),
        XReal::one(),
    ];
    let map = MeasurableFn::finite_map(ctx.as_space()?, values)?;
    let f = TonelliFn::Finite(map);
    let v1 = tonelli(&f, &mu1, &mu2, 1)?;
    let v2 = tonelli(&f, &mu1, &mu2, 2)?;
    println!(
        "finite Tonelli: direct {} | iterated(1) {} | iterated(2) {}",
        v1.direct, v1.iterated, v2.iterated
    );

    // Tonelli for a 2-D step function under lambda x lambda.
    let grid = StepFn2D::new(
        vec![rat_int(0), rat_int(1), rat_int(3)],
        vec![rat_int(0), rat_int(2)],
        vec![vec![rat(1, 2)], vec![rat_int(2)]],
    )?;
    let lambda = Measure::lebesgue();
    let v = tonelli(&TonelliFn::Step2D(grid.clone()), &lambda, &lambda, 1)?;
    println!("step2d Tonelli: direct {} = iterated {}", v.direct, v.iterated);

    // Restricted to a box.
    let quarter = BoxSet::rectangle(
        IntervalSet::from_strings(&["[0,1]"])?,
        IntervalSet::from_strings(&["[0,1]"])?,
    );
    let v = tonelli_over_subset(
        &TonelliFn::Step2D(grid),
        &MeasurableSet::Boxes(quarter),
        &lambda,
        &lambda,
        2,
    )?;
    println!("over the unit box: direct {} = iterated {}", v.direct, v.iterated);

    // Tensor step functions multiply their integrals.
    let f1 = SimpleFn::indicator(
        lebkern::measures::MeasurableSpace::RealLine,
        MeasurableSet::Real(IntervalSet::from_strings(&["[0,2)"])?),
    )?
    .scale(&rat(3, 2));
    let f2 = SimpleFn::indicator(
        lebkern::measures::MeasurableSpace::RealLine,
        MeasurableSet::Real(IntervalSet::from_strings(&["[1,4)"])?),
    )?;
    let prod = StepFn2D::tensor_of_steps(&f1, &f2)?;
    println!(
        "int(f1 (x) f2) = {} = (int f1)(int f2)",
        prod.direct_integral()
    );
    Ok(())
}
