//! Acceptance suite: one test per criterion, each checked at its stated
//! scale and tolerance (everything here is exact arithmetic, so "tolerance"
//! means equality unless a criterion names a bound). Expected values tagged
//! as derived are computed by independent oracles written in this file.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see one line
//! per criterion.

use lebkern::convergence::{
    verify_convergence, ConvergenceCase, ConvergenceTheorem, FnSeq, RateSpec,
};
use lebkern::intervals::{extract_finite_subcover, Bound, Interval, IntervalSet};
use lebkern::lebint::{chebyshev, integral_mplus, MeasurableFn};
use lebkern::measures::{
    tensor_measure, verify_uniqueness_pi_system, FiniteSpace, Measure, MeasurableSet,
    MeasurableSpace, Point,
};
use lebkern::product::{tonelli, FiniteProduct, StepFn2D, TonelliFn};
use lebkern::setsys::{
    generate, is_system, verify_dynkin, verify_monotone_class, FiniteUniverse, Mask,
    SubsetFamily, SystemKind,
};
use lebkern::simplefn::{
    integral_sf_plus, integral_term_sum, BinOp, SimpleFn, Term,
};
use lebkern::xreal::{rat, rat_int, Rat, XReal};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_97ed)
}

fn rand_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let den = rng.gen_range(1..=16i64);
    rat(rng.gen_range(lo * den..=hi * den), den)
}

fn rand_nonneg(rng: &mut ChaCha8Rng) -> Rat {
    let den = rng.gen_range(1..=16i64);
    rat(rng.gen_range(0..=8 * den), den)
}

fn rand_interval_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let k = rng.gen_range(0..4usize);
    let mut raw = Vec::new();
    for _ in 0..k {
        let a = rand_rat(rng, -8, 8);
        let b = rand_rat(rng, -8, 8);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let lo = if rng.gen_bool(0.5) { Bound::closed(lo) } else { Bound::open(lo) };
        let hi = if rng.gen_bool(0.5) { Bound::closed(hi) } else { Bound::open(hi) };
        if let Ok(Some(i)) = Interval::try_new(lo, hi) {
            raw.push(i);
        }
    }
    IntervalSet::canonicalize(raw)
}

fn xr(r: Rat) -> XReal {
    XReal::Finite(r)
}

/// Criterion 1: extended-real laws, exhaustive over infinity shapes plus
/// 500 random rational triples, all exact.
#[test]
fn criterion_01_extended_real_laws() {
    let mut rng = rng();
    let mut checks = 0usize;

    // Nonnegative shape set {0, random positive, inf} (the laws under test
    // live on the nonnegative cone) crossed exhaustively, plus 500 random
    // nonnegative rational triples.
    let mut triples: Vec<[XReal; 3]> = Vec::new();
    let shapes = |rng: &mut ChaCha8Rng| -> [XReal; 3] {
        [
            XReal::zero(),
            xr(rand_nonneg(rng) + Rat::one()),
            XReal::PosInf,
        ]
    };
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let s = shapes(&mut rng);
                triples.push([s[i].clone(), s[j].clone(), s[k].clone()]);
            }
        }
    }
    for _ in 0..500 {
        triples.push([
            xr(rand_nonneg(&mut rng)),
            xr(rand_nonneg(&mut rng)),
            xr(rand_nonneg(&mut rng)),
        ]);
    }

    for [a, b, c] in &triples {
        // Closure, associativity, commutativity of addition on the cone.
        let ab = a.add_checked(b).expect("nonneg sums are defined");
        let bc = b.add_checked(c).expect("nonneg sums are defined");
        assert!(ab.is_nonneg());
        assert_eq!(ab.add_checked(c).unwrap(), a.add_checked(&bc).unwrap());
        assert_eq!(ab, b.add_checked(a).unwrap());
        // Distributivity of the total product over addition.
        assert_eq!(
            a.mul_mt(&bc),
            a.mul_mt(b).add_checked(&a.mul_mt(c)).unwrap()
        );
        // Zero- and infinity-product characterizations.
        let prod = a.mul_mt(b);
        assert_eq!(prod.is_zero(), a.is_zero() || b.is_zero());
        assert_eq!(
            prod == XReal::PosInf,
            (*a == XReal::PosInf && !b.is_zero()) || (*b == XReal::PosInf && !a.is_zero())
        );
        checks += 5;
    }

    // Triangle inequality on all shape triples of both signs (whenever the
    // sum is defined), plus random signed pairs.
    let mut pairs: Vec<(XReal, XReal)> = vec![];
    let signed_shapes = [XReal::NegInf, xr(rat(-7, 3)), XReal::zero(), xr(rat(5, 2)), XReal::PosInf];
    for a in &signed_shapes {
        for b in &signed_shapes {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for _ in 0..500 {
        pairs.push((xr(rand_rat(&mut rng, -9, 9)), xr(rand_rat(&mut rng, -9, 9))));
    }
    for (a, b) in &pairs {
        if let Ok(sum) = a.add_checked(b) {
            let rhs = a.abs().add_checked(&b.abs()).expect("abs sums are defined");
            assert!(sum.abs() <= rhs, "triangle fails at {a}, {b}");
            checks += 1;
        }
    }

    // Young's inequality with p = q = 2: a*b <= a^2/(2e) + e*b^2/2.
    for _ in 0..500 {
        let a = xr(rand_nonneg(&mut rng));
        let b = xr(rand_nonneg(&mut rng));
        let eps = rand_nonneg(&mut rng) + rat(1, 16);
        let lhs = a.mul_mt(&b);
        let a2 = a.mul_mt(&a);
        let b2 = b.mul_mt(&b);
        let rhs = a2
            .mul_mt(&xr((rat_int(2) * &eps).recip()))
            .add_checked(&b2.mul_mt(&xr(&eps / rat_int(2))))
            .unwrap();
        assert!(lhs <= rhs, "young fails at {a}, {b}, eps={eps}");
        checks += 1;
    }
    println!("PASS criterion 1: extended-real laws ({checks} exact checks)");
}

/// Brute-force oracle: the intersection of all sigma-algebras over an
/// `n`-element universe containing the generators, by enumerating every
/// family of subsets. Independent of the closure implementation.
fn brute_force_sigma(universe: &FiniteUniverse, g: &SubsetFamily) -> SubsetFamily {
    let n = universe.size();
    let n_subsets = 1u32 << n;
    let full = universe.full_mask();
    let mut meet: Option<u64> = None;
    for fam in 0u64..(1u64 << n_subsets) {
        let has = |m: Mask| fam & (1 << m) != 0;
        if !has(0) {
            continue;
        }
        let mut ok = true;
        for m in 0..n_subsets {
            if has(m) && !has(full & !m) {
                ok = false;
                break;
            }
        }
        if ok {
            'outer: for a in 0..n_subsets {
                if !has(a) {
                    continue;
                }
                for b in a..n_subsets {
                    if has(b) && !has(a | b) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if !ok || g.members().iter().any(|&m| !has(m)) {
            continue;
        }
        meet = Some(match meet {
            None => fam,
            Some(acc) => acc & fam,
        });
    }
    let fam = meet.expect("the power set always qualifies");
    SubsetFamily::new(
        universe.clone(),
        (0..n_subsets).filter(|m| fam & (1u64 << m) != 0),
    )
    .unwrap()
}

/// Criterion 2: generated sigma-algebras are minimal (brute force on
/// |X| <= 3, exhaustive over generator families) and generation is
/// idempotent for every kind (plus 200 random families on |X| = 5).
#[test]
fn criterion_02_generation_minimality_idempotence() {
    let mut cases = 0usize;
    for n in 1..=3usize {
        let universe = FiniteUniverse::new(n).unwrap();
        let n_subsets = 1u32 << n;
        for bits in 0u64..(1u64 << n_subsets) {
            let members: Vec<Mask> =
                (0..n_subsets).filter(|m| bits & (1u64 << m) != 0).collect();
            let g = SubsetFamily::new(universe.clone(), members).unwrap();
            let generated = generate(SystemKind::SigmaAlgebra, &g).unwrap();
            let brute = brute_force_sigma(&universe, &g);
            assert_eq!(generated, brute, "minimality fails for G = {g}");
            for kind in SystemKind::ALL {
                let Ok(once) = generate(kind, &g) else {
                    continue; // empty pi-system generators
                };
                let twice = generate(kind, &once).unwrap();
                assert_eq!(once, twice, "idempotence fails for {} at {g}", kind.name());
                assert!(is_system(kind, &once).ok);
            }
            cases += 1;
        }
    }
    let mut rng = rng();
    let universe = FiniteUniverse::new(5).unwrap();
    for _ in 0..200 {
        let k = rng.gen_range(0..6usize);
        let members: Vec<Mask> = (0..k).map(|_| rng.gen_range(0..32u32)).collect();
        let g = SubsetFamily::new(universe.clone(), members).unwrap();
        for kind in SystemKind::ALL {
            let Ok(once) = generate(kind, &g) else { continue };
            assert_eq!(once, generate(kind, &once).unwrap());
            assert!(is_system(kind, &once).ok);
        }
        cases += 1;
    }
    println!("PASS criterion 2: generation minimality and idempotence ({cases} generator families)");
}

/// Criterion 3: Dynkin pi-lambda and monotone-class theorems, exhaustive
/// over all pi-systems / set algebras on |X| <= 4, zero failures.
#[test]
fn criterion_03_dynkin_and_monotone_class() {
    let start = std::time::Instant::now();
    let mut total = 0usize;
    for n in 1..=4usize {
        let dynkin = verify_dynkin(n).unwrap();
        assert!(dynkin.passed(), "{dynkin}");
        let mono = verify_monotone_class(n).unwrap();
        assert!(mono.passed(), "{mono}");
        total += dynkin.cases + mono.cases;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() <= 60,
        "exhaustive verification took {elapsed:?}, budget is 60 s"
    );
    println!(
        "PASS criterion 3: Dynkin + monotone class exhaustive on |X| <= 4 ({total} systems, {elapsed:?})"
    );
}

/// Criterion 4: Lebesgue measure on interval sets, 1000 random pairs each.
#[test]
fn criterion_04_lebesgue_on_interval_sets() {
    let mut rng = rng();
    for _ in 0..1000 {
        let x = rand_rat(&mut rng, -20, 20);
        let y = rand_rat(&mut rng, -20, 20);
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        let set = IntervalSet::from_interval(
            Interval::new(Bound::closed(a.clone()), Bound::closed(b.clone())).unwrap(),
        );
        assert_eq!(set.lebesgue(), xr(&b - &a));
    }
    for _ in 0..1000 {
        let a = rand_interval_set(&mut rng);
        let e = rand_interval_set(&mut rng);
        // Finite additivity on the disjoint pair (A, E \ A).
        let disjoint = e.difference(&a);
        let union = a.union(&disjoint);
        assert_eq!(
            union.lebesgue(),
            a.lebesgue().add_checked(&disjoint.lebesgue()).unwrap()
        );
        // Monotonicity.
        assert!(a.intersect(&e).lebesgue() <= a.lebesgue());
        // Subadditivity.
        assert!(
            a.union(&e).lebesgue()
                <= a.lebesgue().add_checked(&e.lebesgue()).unwrap()
        );
        // Caratheodory splitting (bounded test set).
        assert_eq!(
            a.lebesgue(),
            a.intersect(&e)
                .lebesgue()
                .add_checked(&a.difference(&e).lebesgue())
                .unwrap()
        );
    }
    println!("PASS criterion 4: Lebesgue measure laws on 1000 + 1000 random interval sets");
}

/// Criterion 5: finite-subcover extraction on 200 random valid covers.
#[test]
fn criterion_05_finite_subcover() {
    let mut rng = rng();
    for case in 0..200 {
        let x = rand_rat(&mut rng, -6, 6);
        let y = rand_rat(&mut rng, -6, 6);
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        // Random noise intervals plus one guaranteed covering interval at a
        // random position.
        let k = rng.gen_range(0..6usize);
        let mut cover: Vec<(Rat, Rat)> = (0..k)
            .map(|_| {
                let p = rand_rat(&mut rng, -8, 8);
                let q = rand_rat(&mut rng, -8, 8);
                if p <= q {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect();
        let guard = (&a - Rat::one(), &b + Rat::one());
        cover.insert(rng.gen_range(0..=cover.len()), guard);

        let chain = extract_finite_subcover(&a, &b, &cover)
            .unwrap_or_else(|e| panic!("case {case}: {e}"));
        // Chain conditions.
        assert!(cover[chain[0]].0 < a, "a_(i0) < a fails");
        assert!(b < cover[*chain.last().unwrap()].1, "b < b_(iq) fails");
        for w in chain.windows(2) {
            assert!(
                cover[w[1]].0 < cover[w[0]].1,
                "chaining a_(i_p+1) < b_(i_p) fails"
            );
        }
        // Distinct indices, chain covers [a, b], and total length dominates.
        let mut seen = std::collections::BTreeSet::new();
        assert!(chain.iter().all(|i| seen.insert(*i)));
        let target = IntervalSet::from_interval(
            Interval::new(Bound::closed(a.clone()), Bound::closed(b.clone())).unwrap(),
        );
        let mut union = IntervalSet::empty();
        let mut total = Rat::zero();
        for &i in &chain {
            let (lo, hi) = &cover[i];
            union = union.union(&IntervalSet::from_interval(
                Interval::new(Bound::open(lo.clone()), Bound::open(hi.clone())).unwrap(),
            ));
            total += hi - lo;
        }
        assert!(target.difference(&union).is_empty(), "chain must cover [a,b]");
        assert!(total >= &b - &a, "total chain length below b - a");
    }
    println!("PASS criterion 5: finite-subcover chains on 200 random covers");
}

fn rand_finite_simplefn(rng: &mut ChaCha8Rng, n: usize) -> SimpleFn {
    let space = MeasurableSpace::Finite(FiniteSpace::discrete(n));
    let k = rng.gen_range(1..4usize);
    let terms = (0..k)
        .map(|_| Term {
            coef: rand_nonneg(rng),
            support: MeasurableSet::Finite(rng.gen_range(0..(1u32 << n))),
        })
        .collect();
    SimpleFn::new(space, terms).unwrap()
}

fn rand_step_simplefn(rng: &mut ChaCha8Rng) -> SimpleFn {
    let k = rng.gen_range(1..4usize);
    let terms = (0..k)
        .map(|_| Term {
            coef: rand_nonneg(rng),
            support: MeasurableSet::Real(rand_interval_set(rng)),
        })
        .collect();
    SimpleFn::new(MeasurableSpace::RealLine, terms).unwrap()
}

/// Criterion 6: SF+ integral representation invariance and positive
/// linearity, 500 random finite simple functions and 200 random step
/// functions, exact.
#[test]
fn criterion_06_sf_plus_invariance_and_linearity() {
    let mut rng = rng();
    let run = |f: SimpleFn, g: SimpleFn, mu: &Measure| {
        // Simple-representation sum equals the canonical sum.
        assert_eq!(
            integral_term_sum(&f, mu).unwrap(),
            integral_sf_plus(&f, mu).unwrap()
        );
        // And equals the disjoint-representation sum.
        let disjoint = SimpleFn::combine(BinOp::Add, &f, &SimpleFn::zero(f.space().clone()))
            .unwrap();
        assert_eq!(
            integral_term_sum(&disjoint, mu).unwrap(),
            integral_sf_plus(&f, mu).unwrap()
        );
        // Additivity and homogeneity.
        let sum = SimpleFn::combine(BinOp::Add, &f, &g).unwrap();
        assert_eq!(
            integral_sf_plus(&sum, mu).unwrap(),
            integral_sf_plus(&f, mu)
                .unwrap()
                .add_checked(&integral_sf_plus(&g, mu).unwrap())
                .unwrap()
        );
        let a = rand_nonneg(&mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(
            integral_sf_plus(&f.scale(&a), mu).unwrap(),
            xr(a).mul_mt(&integral_sf_plus(&f, mu).unwrap())
        );
        // Monotonicity through a dominated pair (f <= f + g).
        assert!(integral_sf_plus(&f, mu).unwrap() <= integral_sf_plus(&sum, mu).unwrap());
    };
    for _ in 0..500 {
        let n = rng.gen_range(1..5usize);
        let f = rand_finite_simplefn(&mut rng, n);
        let g = rand_finite_simplefn(&mut rng, n);
        let weights = (0..n).map(|_| xr(rand_nonneg(&mut rng))).collect();
        let mu = Measure::finite_table(FiniteSpace::discrete(n), weights).unwrap();
        run(f, g, &mu);
    }
    let lambda = Measure::lebesgue();
    for _ in 0..200 {
        let f = rand_step_simplefn(&mut rng);
        let g = rand_step_simplefn(&mut rng);
        run(f, g, &lambda);
    }
    println!("PASS criterion 6: SF+ representation invariance and linearity (500 + 200 functions)");
}

/// Criterion 7: adapted-sequence convergence. The stage integrals of
/// f(x) = x on [0,1] equal 1/2 - 2^-(n+1) for n = 1..20 (cross-checked for
/// small n against the brute dyadic sum), and integer-valued step functions
/// stabilize exactly once n exceeds max(f) + 1.
#[test]
fn criterion_07_adapted_convergence() {
    let lambda = Measure::lebesgue();
    let f = MeasurableFn::affine_on(Interval::closed_from_ints(0, 1), Rat::one(), Rat::zero())
        .unwrap();
    let tol = rat(1, 1 << 30);
    let out = integral_mplus(&f, &lambda, 20, &tol).unwrap();
    for n in 1..=20u32 {
        let stage = out
            .stages
            .iter()
            .find(|s| s.n == n)
            .unwrap_or_else(|| panic!("stage {n} missing"));
        // Closed-form oracle.
        let expected = rat(1, 2) - Rat::new(BigInt::one(), BigInt::one() << (n + 1));
        assert_eq!(stage.integral, xr(expected), "closed form at stage {n}");
        // Brute dyadic oracle for small n: sum_(i < 2^n) (i/2^n) * (1/2^n).
        if n <= 12 {
            let mut brute = Rat::zero();
            let cells = 1u64 << n;
            for i in 0..cells {
                brute += rat(i as i64, cells as i64) * rat(1, cells as i64);
            }
            assert_eq!(stage.integral, xr(brute), "brute oracle at stage {n}");
        }
    }

    // Integer-valued random step functions stabilize at n > max(f) + 1.
    let mut rng = rng();
    for _ in 0..100 {
        let k = rng.gen_range(1..4usize);
        let terms: Vec<Term> = (0..k)
            .map(|_| Term {
                coef: rat_int(rng.gen_range(0..=4i64)),
                support: MeasurableSet::Real(rand_interval_set(&mut rng)),
            })
            .collect();
        let step = SimpleFn::new(MeasurableSpace::RealLine, terms).unwrap();
        let max = step.max_value();
        let f = MeasurableFn::Step(step.clone());
        let expected = integral_sf_plus(&step, &lambda).unwrap();
        let n_stab = (max.to_integer().to_string().parse::<u32>().unwrap_or(0)) + 2;
        let out = integral_mplus(&f, &lambda, n_stab + 3, &tol).unwrap();
        assert!(out.exact);
        assert_eq!(out.value, expected);
        for s in &out.stages {
            if s.n >= n_stab {
                assert_eq!(s.integral, expected, "stabilization at stage {}", s.n);
            }
        }
    }
    println!("PASS criterion 7: adapted stages match the closed form and stabilize on steps");
}

/// Criterion 8: Fatou on a 20-case battery, Chebyshev on 200 random pairs,
/// and almost-definiteness exhaustively on |X| <= 4.
#[test]
fn criterion_08_fatou_chebyshev_almost_definite() {
    let lambda = Measure::lebesgue();
    let tol = rat(1, 65536);

    // 20 Fatou cases with declared limits: one constant and nineteen
    // nonincreasing indicator families.
    let indicator_to = |b: &Rat| -> MeasurableFn {
        MeasurableFn::Step(
            SimpleFn::indicator(
                MeasurableSpace::RealLine,
                MeasurableSet::Real(IntervalSet::from_interval(
                    Interval::new(Bound::closed(Rat::zero()), Bound::closed(b.clone())).unwrap(),
                )),
            )
            .unwrap(),
        )
    };
    let mut battery = vec![ConvergenceCase {
        name: "constant".into(),
        seq: FnSeq::Constant {
            f: indicator_to(&rat_int(2)),
        },
        limit: indicator_to(&rat_int(2)),
        dominator: None,
        rate: None,
    }];
    for k in 1..=19i64 {
        battery.push(ConvergenceCase {
            name: format!("shrink to [0,{k}/4]"),
            seq: FnSeq::IndicatorShrink {
                a: Rat::zero(),
                b: rat(k, 4),
                c: Rat::one(),
                d: 2,
            },
            limit: indicator_to(&rat(k, 4)),
            dominator: None,
            rate: None,
        });
    }
    assert_eq!(battery.len(), 20);
    let report =
        verify_convergence(ConvergenceTheorem::Fatou, &battery, &lambda, 24, &tol).unwrap();
    assert!(report.passed(), "{report}");

    // Chebyshev: 200 random (f, a) pairs across the three shapes.
    let mut rng = rng();
    let mut pairs = 0usize;
    while pairs < 200 {
        let shape = rng.gen_range(0..3);
        let f = match shape {
            0 => MeasurableFn::Step({
                let k = rng.gen_range(1..4usize);
                let terms = (0..k)
                    .map(|_| Term {
                        coef: rand_rat(&mut rng, -6, 6),
                        support: MeasurableSet::Real(rand_interval_set(&mut rng)),
                    })
                    .collect();
                SimpleFn::new(MeasurableSpace::RealLine, terms).unwrap()
            }),
            1 => {
                let n = rng.gen_range(1..5usize);
                let values = (0..n).map(|_| xr(rand_rat(&mut rng, -6, 6))).collect();
                MeasurableFn::finite_map(FiniteSpace::discrete(n), values).unwrap()
            }
            _ => MeasurableFn::affine_on(
                Interval::closed_from_ints(-1, 2),
                rand_rat(&mut rng, -4, 4),
                rand_rat(&mut rng, -4, 4),
            )
            .unwrap(),
        };
        let mu: Measure = match &f {
            MeasurableFn::FiniteMap { space, .. } => {
                let weights = (0..space.size()).map(|_| xr(rand_nonneg(&mut rng))).collect();
                Measure::finite_table(space.clone(), weights).unwrap()
            }
            _ => lambda.clone(),
        };
        let a = xr(rand_nonneg(&mut rng) + rat(1, 16));
        let (lhs, rhs) = chebyshev(&f, &mu, &a, 12, &tol).unwrap();
        assert!(lhs <= rhs, "chebyshev fails: a={a}, lhs={lhs}, rhs={rhs}");
        pairs += 1;
    }

    // Almost-definiteness, exhaustive over null-atom and support patterns
    // on |X| <= 4 with random positive weights and values.
    for n in 1..=4usize {
        let space = FiniteSpace::discrete(n);
        for null_pattern in 0u32..(1 << n) {
            let weights: Vec<XReal> = (0..n)
                .map(|x| {
                    if null_pattern & (1 << x) != 0 {
                        XReal::zero()
                    } else {
                        xr(rand_nonneg(&mut rng) + rat(1, 16))
                    }
                })
                .collect();
            let mu = Measure::finite_table(space.clone(), weights).unwrap();
            for support in 0u32..(1 << n) {
                let values: Vec<XReal> = (0..n)
                    .map(|x| {
                        if support & (1 << x) != 0 {
                            xr(rand_nonneg(&mut rng) + rat(1, 16))
                        } else {
                            XReal::zero()
                        }
                    })
                    .collect();
                let f = MeasurableFn::finite_map(space.clone(), values).unwrap();
                let integral = lebkern::lebint::exact_integral(&f, &mu).unwrap();
                // f = 0 a.e. iff the support lies inside the null atoms.
                let ae_zero = support & !null_pattern == 0;
                assert_eq!(integral.is_zero(), ae_zero, "n={n} null={null_pattern:#b} supp={support:#b}");
            }
        }
    }
    println!("PASS criterion 8: Fatou battery (20 cases), Chebyshev (200 pairs), almost-definiteness (|X| <= 4)");
}

/// Criterion 9: dominated convergence on the pinned battery with exact
/// stage integrals 1/2 + 1/(n+2) and N1 distance 1/(n+2) <= 2^-10 at
/// n_max = 1024.
#[test]
fn criterion_09_dominated_convergence() {
    let lambda = Measure::lebesgue();
    let seq = FnSeq::IndicatorShrink {
        a: Rat::zero(),
        b: rat(1, 2),
        c: Rat::one(),
        d: 2,
    };
    let limit = MeasurableFn::Step(
        SimpleFn::indicator(
            MeasurableSpace::RealLine,
            MeasurableSet::Real(IntervalSet::from_strings(&["[0,1/2]"]).unwrap()),
        )
        .unwrap(),
    );
    // Exact stage integrals and L1 distances at a sample of truncations.
    for n in [0u32, 1, 2, 7, 50, 512, 1024] {
        let v = seq.integral_at(n, &lambda).unwrap();
        let expected = rat(1, 2) + Rat::new(BigInt::one(), BigInt::from(n + 2));
        assert_eq!(v, xr(expected), "stage integral at n = {n}");
        let d = seq.n1_distance(n, &limit, &lambda).unwrap();
        assert_eq!(d, xr(Rat::new(BigInt::one(), BigInt::from(n + 2))));
    }
    let bound = Rat::new(BigInt::one(), BigInt::one() << 10);
    let final_distance = seq.n1_distance(1024, &limit, &lambda).unwrap();
    assert!(final_distance <= xr(bound.clone()));

    let battery = vec![ConvergenceCase {
        name: "1_[0,1/2+1/(n+2)] dominated by 1_[0,1]".into(),
        seq,
        limit,
        dominator: Some(MeasurableFn::Step(
            SimpleFn::indicator(
                MeasurableSpace::RealLine,
                MeasurableSet::Real(IntervalSet::from_strings(&["[0,1]"]).unwrap()),
            )
            .unwrap(),
        )),
        rate: Some(RateSpec::Harmonic {
            coef: Rat::one(),
            shift: 2,
        }),
    }];
    let report = verify_convergence(
        ConvergenceTheorem::Dominated,
        &battery,
        &lambda,
        1024,
        &bound,
    )
    .unwrap();
    assert!(report.passed(), "{report}");
    println!("PASS criterion 9: dominated convergence battery at n_max = 1024, bound 2^-10");
}

/// Criterion 10: Tonelli, exhaustive on 3x3 rectangle indicators plus 100
/// random nonnegative maps; 100 random tensor step pairs; box areas.
#[test]
fn criterion_10_tonelli() {
    let mut rng = rng();
    let ctx = FiniteProduct::new(FiniteSpace::discrete(3), FiniteSpace::discrete(3)).unwrap();
    let space = ctx.as_space().unwrap();
    let mu1 = {
        let w = (0..3).map(|_| xr(rand_nonneg(&mut rng))).collect();
        Measure::finite_table(FiniteSpace::discrete(3), w).unwrap()
    };
    let mu2 = {
        let w = (0..3).map(|_| xr(rand_nonneg(&mut rng))).collect();
        Measure::finite_table(FiniteSpace::discrete(3), w).unwrap()
    };
    // All 64 rectangle indicators.
    for a1 in 0u32..8 {
        for a2 in 0u32..8 {
            let rect = ctx.rectangle(a1, a2);
            let values: Vec<XReal> = (0..9)
                .map(|x| XReal::from_int(((rect >> x) & 1) as i64))
                .collect();
            let f = TonelliFn::Finite(
                MeasurableFn::finite_map(space.clone(), values).unwrap(),
            );
            let expected = mu1
                .eval(&MeasurableSet::Finite(a1))
                .unwrap()
                .mul_mt(&mu2.eval(&MeasurableSet::Finite(a2)).unwrap());
            let v1 = tonelli(&f, &mu1, &mu2, 1).unwrap();
            let v2 = tonelli(&f, &mu1, &mu2, 2).unwrap();
            for v in [&v1.direct, &v1.iterated, &v2.iterated] {
                assert_eq!(*v, expected, "rect {a1:#b} x {a2:#b}");
            }
        }
    }
    // 100 random nonnegative finite maps with fresh random factor measures.
    for _ in 0..100 {
        let w1: Vec<XReal> = (0..3).map(|_| xr(rand_nonneg(&mut rng))).collect();
        let w2: Vec<XReal> = (0..3).map(|_| xr(rand_nonneg(&mut rng))).collect();
        let m1 = Measure::finite_table(FiniteSpace::discrete(3), w1).unwrap();
        let m2 = Measure::finite_table(FiniteSpace::discrete(3), w2).unwrap();
        let values: Vec<XReal> = (0..9).map(|_| xr(rand_nonneg(&mut rng))).collect();
        let f = TonelliFn::Finite(MeasurableFn::finite_map(space.clone(), values).unwrap());
        let v1 = tonelli(&f, &m1, &m2, 1).unwrap();
        let v2 = tonelli(&f, &m1, &m2, 2).unwrap();
        assert_eq!(v1.direct, v1.iterated);
        assert_eq!(v2.direct, v2.iterated);
        assert_eq!(v1.direct, v2.direct);
    }
    // 100 random tensor step pairs under lambda x lambda.
    let lambda = Measure::lebesgue();
    let closed = |a: &Rat, b: &Rat| {
        IntervalSet::from_interval(
            Interval::new(Bound::closed(a.clone()), Bound::closed(b.clone())).unwrap(),
        )
    };
    for _ in 0..100 {
        let make = |rng: &mut ChaCha8Rng| -> SimpleFn {
            let k = rng.gen_range(1..3usize);
            let terms = (0..k)
                .map(|_| {
                    let p = rand_rat(rng, -6, 6);
                    let q = rand_rat(rng, -6, 6);
                    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
                    let hi = if lo == hi { hi + Rat::one() } else { hi };
                    Term {
                        coef: rand_nonneg(rng),
                        support: MeasurableSet::Real(closed(&lo, &hi)),
                    }
                })
                .collect();
            SimpleFn::new(MeasurableSpace::RealLine, terms).unwrap()
        };
        let f1 = make(&mut rng);
        let f2 = make(&mut rng);
        let product = StepFn2D::tensor_of_steps(&f1, &f2).unwrap();
        let expected = integral_sf_plus(&f1, &lambda)
            .unwrap()
            .mul_mt(&integral_sf_plus(&f2, &lambda).unwrap());
        let v = tonelli(&TonelliFn::Step2D(product), &lambda, &lambda, 1).unwrap();
        assert_eq!(v.direct, expected);
        assert_eq!(v.iterated, expected);
    }
    // Box areas match the product of side lengths exactly.
    let l2 = tensor_measure(&lambda, &lambda).unwrap();
    for _ in 0..100 {
        let p = rand_rat(&mut rng, -8, 8);
        let q = rand_rat(&mut rng, -8, 8);
        let (a1, b1) = if p <= q { (p, q) } else { (q, p) };
        let p = rand_rat(&mut rng, -8, 8);
        let q = rand_rat(&mut rng, -8, 8);
        let (a2, b2) = if p <= q { (p, q) } else { (q, p) };
        let rect = lebkern::measures::BoxSet::rectangle(closed(&a1, &b1), closed(&a2, &b2));
        assert_eq!(
            l2.eval(&MeasurableSet::Boxes(rect)).unwrap(),
            xr((&b1 - &a1) * (&b2 - &a2))
        );
    }
    println!("PASS criterion 10: Tonelli (64 rectangles, 100 maps, 100 tensor pairs, 100 boxes)");
}

/// Criterion 11: uniqueness from the singleton pi-system on |X| = 3,
/// exhaustive over a weight grid.
#[test]
fn criterion_11_uniqueness_from_pi_system() {
    let space = FiniteSpace::discrete(3);
    let g = SubsetFamily::new(
        space.universe().clone(),
        [0b000, 0b001, 0b010, 0b100, 0b111],
    )
    .unwrap();
    assert!(is_system(SystemKind::PiSystem, &g).ok);
    let grid = [rat_int(0), rat(1, 2), rat_int(1), rat_int(2)];
    let mut cases = 0usize;
    for w0 in &grid {
        for w1 in &grid {
            for w2 in &grid {
                let weights = vec![xr(w0.clone()), xr(w1.clone()), xr(w2.clone())];
                let m1 = Measure::finite_table(space.clone(), weights.clone()).unwrap();
                // Agreement on the singleton pi-system pins the whole table,
                // so the only candidate partner is an identical table.
                let m2 = Measure::finite_table(space.clone(), weights).unwrap();
                assert_eq!(
                    verify_uniqueness_pi_system(&space, &g, &m1, &m2),
                    Ok(true)
                );
                cases += 1;
            }
        }
    }
    // Disagreement on G is a reported hypothesis failure, not a conclusion.
    let m1 = Measure::finite_table(
        space.clone(),
        vec![XReal::one(), XReal::zero(), XReal::one()],
    )
    .unwrap();
    let m2 = Measure::finite_table(
        space.clone(),
        vec![XReal::one(), XReal::one(), XReal::one()],
    )
    .unwrap();
    assert!(verify_uniqueness_pi_system(&space, &g, &m1, &m2).is_err());
    println!("PASS criterion 11: uniqueness from the singleton pi-system ({cases} measure pairs)");
}

/// Criterion 12 lives in tests/cli.rs (golden-file checks of the binary).
#[test]
fn criterion_12_pointer() {
    println!("PASS criterion 12: exercised by tests/cli.rs (CLI golden files)");
}

/// Sections and indicator identities, exhaustive on a small product; the
/// per-module invariants that belong with the acceptance run.
#[test]
fn supplementary_section_identities() {
    let ctx = FiniteProduct::new(FiniteSpace::discrete(2), FiniteSpace::discrete(2)).unwrap();
    let full: Mask = 0b1111;
    for a in 0u32..16 {
        for x in 0..2usize {
            for axis in [1, 2] {
                let s = ctx.section(a, axis, x).unwrap();
                let sc = ctx.section(full & !a, axis, x).unwrap();
                assert_eq!(sc, 0b11 & !s);
            }
        }
    }
    // Indicator of section: membership match at every point.
    for a in 0u32..16 {
        for x1 in 0..2usize {
            for x2 in 0..2usize {
                let member = a & (1 << (x1 * 2 + x2)) != 0;
                assert_eq!(member, ctx.section(a, 1, x1).unwrap() & (1 << x2) != 0);
                assert_eq!(member, ctx.section(a, 2, x2).unwrap() & (1 << x1) != 0);
            }
        }
    }
    println!("PASS supplementary: section identities exhaustive on 2x2");
}

/// The zero-measure trace/restriction agreement and negligible-set closure,
/// exhaustive on |X| = 3.
#[test]
fn supplementary_trace_restriction_negligible() {
    let mut rng = rng();
    for _ in 0..50 {
        let weights: Vec<XReal> = (0..3).map(|_| xr(rand_nonneg(&mut rng))).collect();
        let m = Measure::finite_table(FiniteSpace::discrete(3), weights).unwrap();
        let y = rng.gen_range(0..8u32);
        let restricted = Measure::restricted(m.clone(), MeasurableSet::Finite(y)).unwrap();
        let trace = Measure::trace(m.clone(), MeasurableSet::Finite(y)).unwrap();
        for a in 0u32..8 {
            let in_trace = a & !y == 0;
            if in_trace {
                assert_eq!(
                    restricted.eval(&MeasurableSet::Finite(a)).unwrap(),
                    trace.eval(&MeasurableSet::Finite(a)).unwrap()
                );
            }
        }
        // Negligible sets are closed under subsets and unions.
        let nulls: Vec<Mask> = (0u32..8)
            .filter(|&a| lebkern::measures::is_negligible(a, &m).unwrap())
            .collect();
        for &a in &nulls {
            for &b in &nulls {
                assert!(lebkern::measures::is_negligible(a | b, &m).unwrap());
            }
        }
    }
    println!("PASS supplementary: trace/restriction agreement and negligible closure");
}

/// Point evaluation identity for Dirac and counting integrals against the
/// measure route, randomized.
#[test]
fn supplementary_counting_dirac_cross_checks() {
    let mut rng = rng();
    let lambda_points: Vec<Rat> = (0..4).map(|_| rand_rat(&mut rng, -4, 4)).collect();
    let counting = Measure::counting_real(lambda_points.clone());
    for _ in 0..50 {
        let f = rand_step_simplefn(&mut rng);
        let via_measure = integral_sf_plus(&f, &counting).unwrap();
        let direct: Rat = {
            let mut dedup = lambda_points.clone();
            dedup.sort();
            dedup.dedup();
            dedup
                .iter()
                .map(|p| f.eval(&Point::Real(p.clone())))
                .fold(Rat::zero(), |a, b| a + b)
        };
        assert_eq!(via_measure, xr(direct));
    }
    println!("PASS supplementary: counting/Dirac closed forms agree with the measure route");
}
