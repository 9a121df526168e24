//! Built-in verification suites behind `lebkern verify`: each suite runs a
//! deterministic battery (seeded randomness, fixed case order) and reports
//! one pass/fail line per case.

use crate::convergence::{
    verify_convergence, ConvergenceCase, ConvergenceTheorem, FnSeq, RateSpec,
};
use crate::intervals::{Bound, Interval, IntervalSet};
use crate::lebint::{chebyshev, LebintError, MeasurableFn};
use crate::measures::{
    tensor_measure, verify_measure_axioms, BoxSet, FiniteSpace, Measure, MeasurableSet,
    MeasurableSpace,
};
use crate::product::{tonelli, FiniteProduct, StepFn2D, TonelliFn};
use crate::setsys::{verify_dynkin, verify_monotone_class, Mask};
use crate::simplefn::{SimpleFn, Term};
use crate::xreal::{rat, rat_int, Rat, XReal};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed seed: `verify` output must be byte-identical across runs.
const SEED: u64 = 0x1eb6_0000_c0ff_ee00;

/// One verified case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCase {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl SuiteCase {
    fn pass(name: impl Into<String>) -> Self {
        SuiteCase {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        SuiteCase {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }
}

/// A suite report: ordered cases, all expected to pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: Vec<SuiteCase>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

pub const SUITES: [&str; 6] = [
    "dynkin",
    "monotone-class",
    "measure-axioms",
    "convergence",
    "chebyshev",
    "tonelli",
];

/// Runs one named suite. `size` caps the exhaustive enumerations; `n_max`
/// and `tol` parameterize the convergence batteries (the dominated battery
/// carries its own pinned truncation).
pub fn run_suite(
    suite: &str,
    size: usize,
    n_max: u32,
    tol: &Rat,
) -> Result<SuiteReport, LebintError> {
    match suite {
        "dynkin" => Ok(suite_dynkin(size)),
        "monotone-class" => Ok(suite_monotone_class(size)),
        "measure-axioms" => suite_measure_axioms(),
        "convergence" => suite_convergence(n_max, tol),
        "chebyshev" => suite_chebyshev(n_max, tol),
        "tonelli" => suite_tonelli(),
        other => Err(LebintError::UnsupportedShape(format!(
            "unknown suite {other:?}; available: {}",
            SUITES.join(", ")
        ))),
    }
}

fn suite_dynkin(size: usize) -> SuiteReport {
    let mut cases = Vec::new();
    for n in 1..=size.clamp(1, 4) {
        match verify_dynkin(n) {
            Ok(report) if report.passed() => cases.push(SuiteCase::pass(format!(
                "dynkin |X|={n}: {} pi-systems",
                report.cases
            ))),
            Ok(report) => cases.push(SuiteCase::fail(
                format!("dynkin |X|={n}: {} pi-systems", report.cases),
                report.failures.join("; "),
            )),
            Err(e) => cases.push(SuiteCase::fail(format!("dynkin |X|={n}"), e.to_string())),
        }
    }
    SuiteReport {
        suite: "dynkin",
        cases,
    }
}

fn suite_monotone_class(size: usize) -> SuiteReport {
    let mut cases = Vec::new();
    for n in 1..=size.clamp(1, 4) {
        match verify_monotone_class(n) {
            Ok(report) if report.passed() => cases.push(SuiteCase::pass(format!(
                "monotone-class |X|={n}: {} set algebras",
                report.cases
            ))),
            Ok(report) => cases.push(SuiteCase::fail(
                format!("monotone-class |X|={n}: {} set algebras", report.cases),
                report.failures.join("; "),
            )),
            Err(e) => cases.push(SuiteCase::fail(
                format!("monotone-class |X|={n}"),
                e.to_string(),
            )),
        }
    }
    SuiteReport {
        suite: "monotone-class",
        cases,
    }
}

fn axiom_case(
    name: &str,
    mu: &Measure,
    samples: &[MeasurableSet],
) -> Result<SuiteCase, LebintError> {
    let report = verify_measure_axioms(mu, samples)?;
    Ok(if report.passed() {
        SuiteCase::pass(format!("{name}: {} checks", report.checks))
    } else {
        SuiteCase::fail(
            format!("{name}: {} checks", report.checks),
            report.violations.join("; "),
        )
    })
}

fn suite_measure_axioms() -> Result<SuiteReport, LebintError> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = Vec::new();

    let all_masks: Vec<MeasurableSet> = (0u32..16).map(MeasurableSet::Finite).collect();
    let table = rand_table(&mut rng, 4);
    cases.push(axiom_case("finite table on |X|=4, all subsets", &table, &all_masks)?);

    let heavy = Measure::finite_table(
        FiniteSpace::discrete(3),
        vec![XReal::one(), XReal::PosInf, XReal::zero()],
    )
    .expect("valid table");
    let masks3: Vec<MeasurableSet> = (0u32..8).map(MeasurableSet::Finite).collect();
    cases.push(axiom_case("finite table with an infinite atom", &heavy, &masks3)?);

    let counting = Measure::counting_finite(FiniteSpace::discrete(4), 0b1011).unwrap();
    cases.push(axiom_case("counting measure on |X|=4", &counting, &all_masks)?);

    let dirac = Measure::dirac_finite(FiniteSpace::discrete(4), 2).unwrap();
    cases.push(axiom_case("dirac measure on |X|=4", &dirac, &all_masks)?);

    let lebesgue = Measure::lebesgue();
    let interval_samples: Vec<MeasurableSet> = (0..24)
        .map(|_| MeasurableSet::Real(rand_interval_set(&mut rng)))
        .collect();
    cases.push(axiom_case(
        "lebesgue on random interval sets",
        &lebesgue,
        &interval_samples,
    )?);

    let restricted = Measure::restricted(
        Measure::lebesgue(),
        MeasurableSet::Real(IntervalSet::from_strings(&["[-2,5]"]).unwrap()),
    )
    .unwrap();
    cases.push(axiom_case(
        "restricted lebesgue on random interval sets",
        &restricted,
        &interval_samples,
    )?);

    let base = rand_table(&mut rng, 4);
    let trace = Measure::trace(base, MeasurableSet::Finite(0b0111)).unwrap();
    let trace_samples: Vec<MeasurableSet> =
        (0u32..8).map(MeasurableSet::Finite).collect();
    cases.push(axiom_case("trace of a finite table", &trace, &trace_samples)?);

    let tensor = tensor_measure(&rand_table(&mut rng, 2), &rand_table(&mut rng, 3))
        .expect("finite tensor");
    let tensor_samples: Vec<MeasurableSet> = (0u32..64).map(MeasurableSet::Finite).collect();
    cases.push(axiom_case("tensor of finite tables on 2x3", &tensor, &tensor_samples)?);

    Ok(SuiteReport {
        suite: "measure-axioms",
        cases,
    })
}

fn suite_convergence(n_max: u32, tol: &Rat) -> Result<SuiteReport, LebintError> {
    let mut cases = Vec::new();
    let lambda = Measure::lebesgue();

    let x_unit = MeasurableFn::affine_on(
        Interval::closed_from_ints(0, 1),
        Rat::one(),
        Rat::zero(),
    )
    .expect("valid piece");
    let beppo = vec![
        ConvergenceCase {
            name: "adapted stages of x on [0,1]".into(),
            seq: FnSeq::AdaptedOf { f: x_unit.clone() },
            limit: x_unit.clone(),
            dominator: None,
            rate: Some(RateSpec::Geometric { coef: rat(1, 2) }),
        },
        ConvergenceCase {
            name: "adapted stages of 2x+1/3 on [0,2]".into(),
            seq: FnSeq::AdaptedOf {
                f: MeasurableFn::affine_on(
                    Interval::closed_from_ints(0, 2),
                    rat_int(2),
                    rat(1, 3),
                )
                .expect("valid piece"),
            },
            limit: MeasurableFn::affine_on(
                Interval::closed_from_ints(0, 2),
                rat_int(2),
                rat(1, 3),
            )
            .expect("valid piece"),
            dominator: None,
            // Early stages are clipped at the level n, so the certificate
            // is lambda(domain) * 2^ceil(sup f) * 2^-n, loose before the
            // clip clears and tight after.
            rate: Some(RateSpec::Geometric { coef: rat_int(64) }),
        },
    ];
    let report = verify_convergence(ConvergenceTheorem::BeppoLevi, &beppo, &lambda, n_max, tol)?;
    push_convergence_cases(&mut cases, "beppo-levi", &report);

    let mut fatou = vec![ConvergenceCase {
        name: "constant indicator".into(),
        seq: FnSeq::Constant {
            f: step_indicator(&["[0,2]"]),
        },
        limit: step_indicator(&["[0,2]"]),
        dominator: None,
        rate: None,
    }];
    for k in 1..=19u32 {
        // 1_{[0, k/4 + 1/(n+2)]}, nonincreasing to 1_{[0, k/4]}.
        let b = rat(k as i64, 4);
        fatou.push(ConvergenceCase {
            name: format!("shrinking indicator to [0,{}/4]", k),
            seq: FnSeq::IndicatorShrink {
                a: Rat::zero(),
                b: b.clone(),
                c: Rat::one(),
                d: 2,
            },
            limit: step_indicator_to(&b),
            dominator: None,
            rate: None,
        });
    }
    let report = verify_convergence(ConvergenceTheorem::Fatou, &fatou, &lambda, n_max, tol)?;
    push_convergence_cases(&mut cases, "fatou", &report);

    // The dominated battery pins its own truncation and tolerance.
    let dominated = vec![ConvergenceCase {
        name: "1_[0,1/2+1/(n+2)] dominated by 1_[0,1]".into(),
        seq: FnSeq::IndicatorShrink {
            a: Rat::zero(),
            b: rat(1, 2),
            c: Rat::one(),
            d: 2,
        },
        limit: step_indicator(&["[0,1/2]"]),
        dominator: Some(step_indicator(&["[0,1]"])),
        rate: Some(RateSpec::Harmonic {
            coef: Rat::one(),
            shift: 2,
        }),
    }];
    let report = verify_convergence(
        ConvergenceTheorem::Dominated,
        &dominated,
        &lambda,
        1024,
        &Rat::new(BigInt::one(), BigInt::one() << 10),
    )?;
    push_convergence_cases(&mut cases, "dominated", &report);

    let space = FiniteSpace::discrete(3);
    let mu = Measure::finite_table(
        space.clone(),
        vec![XReal::one(), XReal::zero(), XReal::Finite(rat(1, 2))],
    )
    .expect("valid table");
    let limit = MeasurableFn::finite_map(
        space.clone(),
        vec![XReal::one(), XReal::zero(), XReal::from_int(2)],
    )
    .expect("valid map");
    let noisy = MeasurableFn::finite_map(
        space.clone(),
        vec![XReal::one(), XReal::from_int(9), XReal::from_int(2)],
    )
    .expect("valid map");
    let dominator = MeasurableFn::finite_map(
        space,
        vec![XReal::from_int(2), XReal::zero(), XReal::from_int(2)],
    )
    .expect("valid map");
    let extended = vec![ConvergenceCase {
        name: "a.e. constant with null-atom noise".into(),
        seq: FnSeq::Constant { f: noisy },
        limit,
        dominator: Some(dominator),
        rate: None,
    }];
    let report = verify_convergence(
        ConvergenceTheorem::ExtendedDominated,
        &extended,
        &mu,
        n_max,
        tol,
    )?;
    push_convergence_cases(&mut cases, "extended-dominated", &report);

    Ok(SuiteReport {
        suite: "convergence",
        cases,
    })
}

fn push_convergence_cases(
    cases: &mut Vec<SuiteCase>,
    prefix: &str,
    report: &crate::convergence::ConvergenceReport,
) {
    for c in &report.cases {
        cases.push(if c.pass {
            SuiteCase::pass(format!("{prefix}: {}", c.name))
        } else {
            SuiteCase::fail(format!("{prefix}: {}", c.name), c.detail.clone())
        });
    }
}

fn suite_chebyshev(n_max: u32, tol: &Rat) -> Result<SuiteReport, LebintError> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xc4eb);
    let mut cases = Vec::new();
    let lambda = Measure::lebesgue();

    let mut check = |name: String, f: &MeasurableFn, mu: &Measure, count: usize, rng: &mut ChaCha8Rng| -> Result<(), LebintError> {
        let mut rebuilt: Option<SuiteCase> = None;
        for i in 0..count {
            let a = XReal::Finite(rand_pos_rat(rng));
            let (lhs, rhs) = chebyshev(f, mu, &a, n_max, tol)?;
            if lhs > rhs {
                rebuilt = Some(SuiteCase::fail(
                    name.clone(),
                    format!("pair {i}: a = {a}, lhs = {lhs} > rhs = {rhs}"),
                ));
                break;
            }
        }
        cases.push(rebuilt.unwrap_or_else(|| SuiteCase::pass(format!("{name} ({count} thresholds)"))));
        Ok(())
    };

    for k in 0..20 {
        let f = MeasurableFn::Step(rand_signed_step(&mut rng));
        check(format!("random signed step #{k:02}"), &f, &lambda, 5, &mut rng)?;
    }
    for k in 0..10 {
        let space = FiniteSpace::discrete(4);
        let mu = rand_table(&mut rng, 4);
        let values: Vec<XReal> = (0..4)
            .map(|_| XReal::Finite(rand_signed_rat(&mut rng)))
            .collect();
        let f = MeasurableFn::finite_map(space, values).expect("power-set table");
        check(format!("random finite map #{k:02}"), &f, &mu, 5, &mut rng)?;
    }
    for k in 0..10 {
        let slope = rand_signed_rat(&mut rng);
        let intercept = rand_signed_rat(&mut rng);
        let f = MeasurableFn::affine_on(Interval::closed_from_ints(0, 2), slope, intercept)
            .expect("valid piece");
        check(format!("random affine on [0,2] #{k:02}"), &f, &lambda, 5, &mut rng)?;
    }

    Ok(SuiteReport {
        suite: "chebyshev",
        cases,
    })
}

fn suite_tonelli() -> Result<SuiteReport, LebintError> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x70e1);
    let mut cases = Vec::new();

    // Exhaustive rectangle indicators on a 2x3 product.
    let ctx = FiniteProduct::new(FiniteSpace::discrete(2), FiniteSpace::discrete(3))
        .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
    let mu1 = rand_table(&mut rng, 2);
    let mu2 = rand_table(&mut rng, 3);
    let space = ctx.as_space()?;
    let mut rect_failures = Vec::new();
    for a1 in 0u32..4 {
        for a2 in 0u32..8 {
            let rect = ctx.rectangle(a1, a2);
            let values: Vec<XReal> = (0..6)
                .map(|x| XReal::from_int(((rect >> x) & 1) as i64))
                .collect();
            let map = MeasurableFn::finite_map(space.clone(), values)?;
            let f = TonelliFn::Finite(map);
            let expected = mu1
                .eval(&MeasurableSet::Finite(a1))?
                .mul_mt(&mu2.eval(&MeasurableSet::Finite(a2))?);
            for axis in [1, 2] {
                let v = tonelli(&f, &mu1, &mu2, axis)
                    .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
                if v.direct != expected || v.iterated != expected {
                    rect_failures.push(format!(
                        "A1={a1:#b} A2={a2:#b} axis={axis}: direct {} iterated {} expected {expected}",
                        v.direct, v.iterated
                    ));
                }
            }
        }
    }
    cases.push(if rect_failures.is_empty() {
        SuiteCase::pass("rectangle indicators on 2x3, both axes (32 rectangles)")
    } else {
        SuiteCase::fail(
            "rectangle indicators on 2x3, both axes (32 rectangles)",
            rect_failures.join("; "),
        )
    });

    // Random nonnegative finite maps on a 3x3 product.
    let ctx = FiniteProduct::new(FiniteSpace::discrete(3), FiniteSpace::discrete(3))
        .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
    let space = ctx.as_space()?;
    let mut map_failures = Vec::new();
    for k in 0..25 {
        let mu1 = rand_table(&mut rng, 3);
        let mu2 = rand_table(&mut rng, 3);
        let values: Vec<XReal> = (0..9)
            .map(|_| XReal::Finite(rand_pos_rat(&mut rng)))
            .collect();
        let map = MeasurableFn::finite_map(space.clone(), values)?;
        let f = TonelliFn::Finite(map);
        let v1 = tonelli(&f, &mu1, &mu2, 1)
            .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
        let v2 = tonelli(&f, &mu1, &mu2, 2)
            .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
        if v1.direct != v1.iterated || v2.direct != v2.iterated || v1.direct != v2.direct {
            map_failures.push(format!("map #{k}"));
        }
    }
    cases.push(if map_failures.is_empty() {
        SuiteCase::pass("random nonneg finite maps on 3x3, both axes (25 maps)")
    } else {
        SuiteCase::fail(
            "random nonneg finite maps on 3x3, both axes (25 maps)",
            map_failures.join("; "),
        )
    });

    // Random tensor pairs of step functions under lambda x lambda.
    let lambda = Measure::lebesgue();
    let mut tensor_failures = Vec::new();
    for k in 0..25 {
        let f1 = rand_nonneg_step(&mut rng);
        let f2 = rand_nonneg_step(&mut rng);
        let product = StepFn2D::tensor_of_steps(&f1, &f2)
            .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
        let int1 = crate::simplefn::integral_sf_plus(&f1, &lambda)?;
        let int2 = crate::simplefn::integral_sf_plus(&f2, &lambda)?;
        let expected = int1.mul_mt(&int2);
        let v = tonelli(&TonelliFn::Step2D(product), &lambda, &lambda, 1)
            .map_err(|e| LebintError::UnsupportedShape(e.to_string()))?;
        if v.direct != expected || v.iterated != expected {
            tensor_failures.push(format!("pair #{k}"));
        }
    }
    cases.push(if tensor_failures.is_empty() {
        SuiteCase::pass("random tensor step pairs under lambda^2 (25 pairs)")
    } else {
        SuiteCase::fail(
            "random tensor step pairs under lambda^2 (25 pairs)",
            tensor_failures.join("; "),
        )
    });

    // Box areas under lambda^2, including degenerate lines.
    let l2 = tensor_measure(&lambda, &lambda).map_err(LebintError::Measure)?;
    let mut box_failures = Vec::new();
    for k in 0..25 {
        let (a1, b1) = rand_ordered_pair(&mut rng);
        let (a2, b2) = rand_ordered_pair(&mut rng);
        let expected = XReal::Finite((&b1 - &a1) * (&b2 - &a2));
        let rect = BoxSet::rectangle(closed_set(&a1, &b1), closed_set(&a2, &b2));
        let got = l2.eval(&MeasurableSet::Boxes(rect))?;
        if got != expected {
            box_failures.push(format!("box #{k}: got {got}, expected {expected}"));
        }
        // A line (one side a singleton) has zero area.
        let line = BoxSet::rectangle(closed_set(&a1, &a1), closed_set(&a2, &b2));
        if !l2.eval(&MeasurableSet::Boxes(line))?.is_zero() {
            box_failures.push(format!("line #{k} has nonzero area"));
        }
    }
    cases.push(if box_failures.is_empty() {
        SuiteCase::pass("box areas and lines under lambda^2 (25 boxes)")
    } else {
        SuiteCase::fail(
            "box areas and lines under lambda^2 (25 boxes)",
            box_failures.join("; "),
        )
    });

    Ok(SuiteReport {
        suite: "tonelli",
        cases,
    })
}

fn step_indicator(strings: &[&str]) -> MeasurableFn {
    MeasurableFn::Step(
        SimpleFn::indicator(
            MeasurableSpace::RealLine,
            MeasurableSet::Real(IntervalSet::from_strings(strings).unwrap()),
        )
        .expect("valid indicator"),
    )
}

fn step_indicator_to(b: &Rat) -> MeasurableFn {
    let set = IntervalSet::from_interval(
        Interval::new(Bound::closed(Rat::zero()), Bound::closed(b.clone()))
            .expect("nonempty interval"),
    );
    MeasurableFn::Step(
        SimpleFn::indicator(MeasurableSpace::RealLine, MeasurableSet::Real(set))
            .expect("valid indicator"),
    )
}

fn closed_set(a: &Rat, b: &Rat) -> IntervalSet {
    IntervalSet::from_interval(
        Interval::new(Bound::closed(a.clone()), Bound::closed(b.clone()))
            .expect("ordered pair"),
    )
}

// Deterministic random generators for the batteries.

pub fn rand_rat_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let den = rng.gen_range(1..=12i64);
    let num = rng.gen_range(lo * den..=hi * den);
    rat(num, den)
}

pub fn rand_pos_rat(rng: &mut ChaCha8Rng) -> Rat {
    let den = rng.gen_range(1..=12i64);
    let num = rng.gen_range(1..=8 * den);
    rat(num, den)
}

pub fn rand_signed_rat(rng: &mut ChaCha8Rng) -> Rat {
    rand_rat_in(rng, -6, 6)
}

pub fn rand_ordered_pair(rng: &mut ChaCha8Rng) -> (Rat, Rat) {
    let a = rand_rat_in(rng, -8, 8);
    let b = rand_rat_in(rng, -8, 8);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Random canonical interval set with a handful of components.
pub fn rand_interval_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let k = rng.gen_range(0..4usize);
    let mut raw = Vec::with_capacity(k);
    for _ in 0..k {
        let (a, b) = rand_ordered_pair(rng);
        let lo = if rng.gen_bool(0.5) {
            Bound::closed(a)
        } else {
            Bound::open(a)
        };
        let hi = if rng.gen_bool(0.5) {
            Bound::closed(b)
        } else {
            Bound::open(b)
        };
        if let Ok(Some(i)) = Interval::try_new(lo, hi) {
            raw.push(i);
        }
    }
    IntervalSet::canonicalize(raw)
}

/// Random finite-table measure on the discrete space of the given size.
pub fn rand_table(rng: &mut ChaCha8Rng, size: usize) -> Measure {
    let weights: Vec<XReal> = (0..size)
        .map(|_| {
            if rng.gen_bool(0.15) {
                XReal::zero()
            } else {
                XReal::Finite(rand_pos_rat(rng))
            }
        })
        .collect();
    Measure::finite_table(FiniteSpace::discrete(size), weights).expect("valid table")
}

pub fn rand_mask(rng: &mut ChaCha8Rng, size: usize) -> Mask {
    rng.gen_range(0..(1u32 << size))
}

/// Random nonnegative step function with bounded support.
pub fn rand_nonneg_step(rng: &mut ChaCha8Rng) -> SimpleFn {
    let k = rng.gen_range(1..4usize);
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        let (a, b) = rand_ordered_pair(rng);
        if a == b {
            continue;
        }
        terms.push(Term {
            coef: rand_pos_rat(rng),
            support: MeasurableSet::Real(closed_set(&a, &b)),
        });
    }
    if terms.is_empty() {
        terms.push(Term {
            coef: rand_pos_rat(rng),
            support: MeasurableSet::Real(closed_set(&Rat::zero(), &Rat::one())),
        });
    }
    SimpleFn::new(MeasurableSpace::RealLine, terms).expect("real supports")
}

/// Random signed step function with bounded support.
pub fn rand_signed_step(rng: &mut ChaCha8Rng) -> SimpleFn {
    let k = rng.gen_range(1..4usize);
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        let (a, b) = rand_ordered_pair(rng);
        if a == b {
            continue;
        }
        terms.push(Term {
            coef: rand_signed_rat(rng),
            support: MeasurableSet::Real(closed_set(&a, &b)),
        });
    }
    if terms.is_empty() {
        terms.push(Term {
            coef: rand_signed_rat(rng),
            support: MeasurableSet::Real(closed_set(&Rat::zero(), &Rat::one())),
        });
    }
    SimpleFn::new(MeasurableSpace::RealLine, terms).expect("real supports")
}
