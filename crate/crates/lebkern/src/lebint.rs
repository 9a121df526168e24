//! Integration of measurable functions on the representable fragment:
//! finite maps, step functions, and piecewise-linear functions.
//!
//! Nonnegative integrals go through the dyadic adapted sequence; step and
//! finite-map integrands stabilize and are exact, piecewise-linear ones
//! return a stage value plus a certified bound. Signed integration splits
//! into nonnegative and nonpositive parts. Where a closed form exists (the
//! antiderivative of an affine piece) it is exposed as a second, exact
//! route, and the tests hold the routes against each other.

use crate::intervals::{Bound, Interval, IntervalError, IntervalSet};
use crate::measures::{
    is_negligible, FiniteSpace, Measure, MeasurableSet, MeasurableSpace, MeasureError, Point,
};
use crate::simplefn::{integral_term_sum, BinOp, SimpleFn, SimpleFnError, Term};
use crate::xreal::{format_rat, rat_int, Rat, XReal};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Errors from the integration layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LebintError {
    #[error("function attains a negative value: {0}")]
    NegativeFunction(String),
    #[error("function and measure live on incompatible spaces: {0}")]
    IncompatibleSpace(String),
    #[error("function is not integrable: the {part} part has infinite integral")]
    NotIntegrable { part: &'static str },
    #[error("measure is not diffuse; oriented interval integrals need one")]
    NonDiffuseMeasure,
    #[error("not absolutely summable: {0}")]
    NotAbsolutelySummable(String),
    #[error("measure of the whole space is zero")]
    ZeroMeasure,
    #[error("function is unbounded")]
    UnboundedFunction,
    #[error("functions are not almost summable: opposite infinities on a non-negligible set")]
    NotAlmostSummable,
    #[error("piecewise-linear pieces do not partition the domain: {0}")]
    BadPartition(String),
    #[error("values table has {got} entries for a universe of size {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unsupported shape for this operation: {0}")]
    UnsupportedShape(String),
    #[error(transparent)]
    Simple(#[from] SimpleFnError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// One affine piece `slope * x + intercept` on an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlPiece {
    pub interval: Interval,
    pub slope: Rat,
    pub intercept: Rat,
}

impl PwlPiece {
    fn value_at(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.intercept
    }

    /// Values at the two (finite) endpoints; the affine extremes on the
    /// piece.
    fn endpoint_values(&self) -> (Rat, Rat) {
        let lo = self
            .interval
            .lo()
            .value
            .as_rat()
            .expect("pwl pieces are bounded");
        let hi = self
            .interval
            .hi()
            .value
            .as_rat()
            .expect("pwl pieces are bounded");
        (self.value_at(lo), self.value_at(hi))
    }
}

/// A measurable function of one of the three representable classes.
/// Arbitrary closures are rejected at the type level: every operation on
/// these shapes is exactly computable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasurableFn {
    /// Total map on a finite space; values may be infinite. Must be
    /// measurable for the space's sigma-algebra (constant on its atoms).
    FiniteMap { space: FiniteSpace, values: Vec<XReal> },
    /// A simple function over interval sets, zero off its supports.
    Step(SimpleFn),
    /// Affine pieces partitioning a bounded domain; zero off the domain.
    PiecewiseLinear {
        domain: IntervalSet,
        pieces: Vec<PwlPiece>,
    },
}

impl MeasurableFn {
    pub fn finite_map(space: FiniteSpace, values: Vec<XReal>) -> Result<Self, LebintError> {
        if values.len() != space.size() {
            return Err(LebintError::TableSize {
                expected: space.size(),
                got: values.len(),
            });
        }
        for atom in space.atoms() {
            let mut first: Option<&XReal> = None;
            for (x, v) in values.iter().enumerate() {
                if atom & (1 << x) == 0 {
                    continue;
                }
                match first {
                    None => first = Some(v),
                    Some(prev) if prev != v => {
                        return Err(LebintError::IncompatibleSpace(format!(
                            "values differ inside sigma-algebra atom {atom:#b}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(MeasurableFn::FiniteMap { space, values })
    }

    pub fn step(f: SimpleFn) -> Result<Self, LebintError> {
        if !matches!(f.space(), MeasurableSpace::RealLine) {
            return Err(LebintError::IncompatibleSpace(
                "step functions live on the real line".into(),
            ));
        }
        Ok(MeasurableFn::Step(f))
    }

    /// Builds a piecewise-linear function; the pieces must partition the
    /// bounded domain.
    pub fn piecewise_linear(
        domain: IntervalSet,
        pieces: Vec<PwlPiece>,
    ) -> Result<Self, LebintError> {
        if domain.lebesgue() == XReal::PosInf {
            return Err(LebintError::BadPartition("domain must be bounded".into()));
        }
        let mut union = IntervalSet::empty();
        for (i, p) in pieces.iter().enumerate() {
            if !p.interval.is_bounded() {
                return Err(LebintError::BadPartition(format!(
                    "piece {i} is unbounded"
                )));
            }
            let piece_set = IntervalSet::from_interval(p.interval.clone());
            if !union.intersect(&piece_set).is_empty() {
                return Err(LebintError::BadPartition(format!(
                    "piece {i} overlaps a previous piece"
                )));
            }
            union = union.union(&piece_set);
        }
        if union != domain {
            return Err(LebintError::BadPartition(
                "the union of the pieces is not the domain".into(),
            ));
        }
        Ok(MeasurableFn::PiecewiseLinear { domain, pieces })
    }

    /// The affine function `slope * x + intercept` on a single interval.
    pub fn affine_on(
        interval: Interval,
        slope: Rat,
        intercept: Rat,
    ) -> Result<Self, LebintError> {
        MeasurableFn::piecewise_linear(
            IntervalSet::from_interval(interval.clone()),
            vec![PwlPiece {
                interval,
                slope,
                intercept,
            }],
        )
    }

    /// Pointwise value; zero outside a step support or a pwl domain.
    pub fn eval(&self, p: &Point) -> XReal {
        match (self, p) {
            (MeasurableFn::FiniteMap { values, .. }, Point::Elem(x)) => values
                .get(*x)
                .cloned()
                .unwrap_or_else(XReal::zero),
            (MeasurableFn::Step(f), Point::Real(_)) => XReal::Finite(f.eval(p)),
            (MeasurableFn::PiecewiseLinear { pieces, .. }, Point::Real(x)) => pieces
                .iter()
                .find(|piece| piece.interval.contains(x))
                .map(|piece| XReal::Finite(piece.value_at(x)))
                .unwrap_or_else(XReal::zero),
            _ => XReal::zero(),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        match self {
            MeasurableFn::FiniteMap { values, .. } => values.iter().all(|v| v.is_nonneg()),
            MeasurableFn::Step(f) => f.is_nonneg(),
            MeasurableFn::PiecewiseLinear { pieces, .. } => pieces.iter().all(|p| {
                let (a, b) = p.endpoint_values();
                !a.is_negative() && !b.is_negative()
            }),
        }
    }

    /// Supremum of the attained values (including the zero attained off a
    /// step support or pwl domain, when that region is nonempty).
    pub fn sup_value(&self) -> XReal {
        match self {
            MeasurableFn::FiniteMap { values, .. } => {
                values.iter().cloned().max().expect("nonempty universe")
            }
            MeasurableFn::Step(f) => XReal::Finite(f.max_value()),
            MeasurableFn::PiecewiseLinear { pieces, .. } => {
                let mut best = Rat::zero();
                for p in pieces {
                    let (a, b) = p.endpoint_values();
                    best = best.max(a).max(b);
                }
                XReal::Finite(best)
            }
        }
    }

    pub fn inf_value(&self) -> XReal {
        match self {
            MeasurableFn::FiniteMap { values, .. } => {
                values.iter().cloned().min().expect("nonempty universe")
            }
            MeasurableFn::Step(f) => XReal::Finite(f.min_value()),
            MeasurableFn::PiecewiseLinear { pieces, .. } => {
                let mut worst = Rat::zero();
                for p in pieces {
                    let (a, b) = p.endpoint_values();
                    worst = worst.min(a).min(b);
                }
                XReal::Finite(worst)
            }
        }
    }

    /// Splits into nonnegative and nonpositive parts with `f = f+ - f-`
    /// and `|f| = f+ + f-`, both of the same shape as `f`.
    pub fn split_parts(&self) -> (MeasurableFn, MeasurableFn) {
        match self {
            MeasurableFn::FiniteMap { space, values } => {
                let plus: Vec<XReal> = values
                    .iter()
                    .map(|v| std::cmp::max(v.clone(), XReal::zero()))
                    .collect();
                let minus: Vec<XReal> = values
                    .iter()
                    .map(|v| std::cmp::max(v.neg(), XReal::zero()))
                    .collect();
                (
                    MeasurableFn::FiniteMap {
                        space: space.clone(),
                        values: plus,
                    },
                    MeasurableFn::FiniteMap {
                        space: space.clone(),
                        values: minus,
                    },
                )
            }
            MeasurableFn::Step(f) => {
                let (p, m) = f.split_parts();
                (MeasurableFn::Step(p), MeasurableFn::Step(m))
            }
            MeasurableFn::PiecewiseLinear { domain, pieces } => {
                let mut plus = Vec::new();
                let mut minus = Vec::new();
                for p in pieces {
                    for (sub, keep_sign) in split_piece_by_sign(p) {
                        match keep_sign {
                            SignRegion::NonNegative => {
                                plus.push(sub.clone());
                                minus.push(PwlPiece {
                                    interval: sub.interval,
                                    slope: Rat::zero(),
                                    intercept: Rat::zero(),
                                });
                            }
                            SignRegion::Negative => {
                                minus.push(PwlPiece {
                                    interval: sub.interval.clone(),
                                    slope: -sub.slope.clone(),
                                    intercept: -sub.intercept.clone(),
                                });
                                plus.push(PwlPiece {
                                    interval: sub.interval,
                                    slope: Rat::zero(),
                                    intercept: Rat::zero(),
                                });
                            }
                        }
                    }
                }
                (
                    MeasurableFn::PiecewiseLinear {
                        domain: domain.clone(),
                        pieces: plus,
                    },
                    MeasurableFn::PiecewiseLinear {
                        domain: domain.clone(),
                        pieces: minus,
                    },
                )
            }
        }
    }

    /// Exact level set `{ |f| >= a }` for a positive threshold.
    pub fn level_set_abs_ge(&self, a: &XReal) -> MeasurableSet {
        match self {
            MeasurableFn::FiniteMap { values, .. } => {
                let mut mask = 0u32;
                for (x, v) in values.iter().enumerate() {
                    if v.abs() >= *a {
                        mask |= 1 << x;
                    }
                }
                MeasurableSet::Finite(mask)
            }
            MeasurableFn::Step(f) => {
                let c = f.canonicalize();
                let mut acc = IntervalSet::empty();
                for t in c.terms() {
                    if XReal::Finite(t.coef.clone()).abs() >= *a {
                        if let MeasurableSet::Real(s) = &t.support {
                            acc = acc.union(s);
                        }
                    }
                }
                MeasurableSet::Real(acc)
            }
            MeasurableFn::PiecewiseLinear { pieces, .. } => {
                let mut acc = IntervalSet::empty();
                let XReal::Finite(a) = a else {
                    // |f| is finite everywhere on a pwl function.
                    return MeasurableSet::Real(acc);
                };
                for p in pieces {
                    let piece_set = IntervalSet::from_interval(p.interval.clone());
                    // f >= a on a half-line, f <= -a on the mirror one.
                    let upper = affine_ge_region(&p.slope, &p.intercept, a);
                    let lower =
                        affine_ge_region(&(-p.slope.clone()), &(-p.intercept.clone()), a);
                    acc = acc.union(&piece_set.intersect(&upper.union(&lower)));
                }
                MeasurableSet::Real(acc)
            }
        }
    }

    /// Exact level set `{ f = c }`.
    pub fn level_set_eq(&self, c: &XReal) -> MeasurableSet {
        match self {
            MeasurableFn::FiniteMap { values, .. } => {
                let mut mask = 0u32;
                for (x, v) in values.iter().enumerate() {
                    if v == c {
                        mask |= 1 << x;
                    }
                }
                MeasurableSet::Finite(mask)
            }
            MeasurableFn::Step(f) => {
                let canon = f.canonicalize();
                let mut acc = IntervalSet::empty();
                for t in canon.terms() {
                    if XReal::Finite(t.coef.clone()) == *c {
                        if let MeasurableSet::Real(s) = &t.support {
                            acc = acc.union(s);
                        }
                    }
                }
                MeasurableSet::Real(acc)
            }
            MeasurableFn::PiecewiseLinear { domain, pieces } => {
                let mut acc = IntervalSet::empty();
                let XReal::Finite(cv) = c else {
                    return MeasurableSet::Real(acc);
                };
                for p in pieces {
                    let piece_set = IntervalSet::from_interval(p.interval.clone());
                    if p.slope.is_zero() {
                        if p.intercept == *cv {
                            acc = acc.union(&piece_set);
                        }
                    } else {
                        let root = (cv - &p.intercept) / &p.slope;
                        if p.interval.contains(&root) {
                            acc = acc
                                .union(&IntervalSet::from_interval(Interval::singleton(root)));
                        }
                    }
                }
                if cv.is_zero() {
                    acc = acc.union(&domain.complement());
                }
                MeasurableSet::Real(acc)
            }
        }
    }

    /// Restriction `f * 1_{(lo, hi)}` used by oriented interval integrals;
    /// the bounds are open, which is immaterial under a diffuse measure.
    fn mask_to_open_interval(&self, lo: &XReal, hi: &XReal) -> Result<MeasurableFn, LebintError> {
        let window = match Interval::try_new(
            Bound {
                value: lo.clone(),
                closed: false,
            },
            Bound {
                value: hi.clone(),
                closed: false,
            },
        )? {
            Some(i) => IntervalSet::from_interval(i),
            None => IntervalSet::empty(),
        };
        match self {
            MeasurableFn::Step(f) => {
                let ind = SimpleFn::indicator(
                    MeasurableSpace::RealLine,
                    MeasurableSet::Real(window),
                )?;
                Ok(MeasurableFn::Step(SimpleFn::combine(BinOp::Mul, f, &ind)?))
            }
            MeasurableFn::PiecewiseLinear { domain, pieces } => {
                let new_domain = domain.intersect(&window);
                let mut new_pieces = Vec::new();
                for p in pieces {
                    let clipped = IntervalSet::from_interval(p.interval.clone()).intersect(&window);
                    for comp in clipped.components() {
                        new_pieces.push(PwlPiece {
                            interval: comp.clone(),
                            slope: p.slope.clone(),
                            intercept: p.intercept.clone(),
                        });
                    }
                }
                MeasurableFn::piecewise_linear(new_domain, new_pieces)
            }
            MeasurableFn::FiniteMap { .. } => Err(LebintError::IncompatibleSpace(
                "interval masking applies to real-line functions".into(),
            )),
        }
    }
}

impl fmt::Display for MeasurableFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasurableFn::FiniteMap { values, .. } => {
                let vs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "map[{}]", vs.join(","))
            }
            MeasurableFn::Step(s) => write!(f, "step[{s}]"),
            MeasurableFn::PiecewiseLinear { pieces, .. } => {
                let ps: Vec<String> = pieces
                    .iter()
                    .map(|p| {
                        format!(
                            "{}x+{} on {}",
                            format_rat(&p.slope),
                            format_rat(&p.intercept),
                            p.interval
                        )
                    })
                    .collect();
                write!(f, "pwl[{}]", ps.join("; "))
            }
        }
    }
}

enum SignRegion {
    NonNegative,
    Negative,
}

/// Splits one affine piece at its root into sign regions.
fn split_piece_by_sign(p: &PwlPiece) -> Vec<(PwlPiece, SignRegion)> {
    if p.slope.is_zero() {
        let region = if p.intercept.is_negative() {
            SignRegion::Negative
        } else {
            SignRegion::NonNegative
        };
        return vec![(p.clone(), region)];
    }
    let root = -&p.intercept / &p.slope;
    let piece_set = IntervalSet::from_interval(p.interval.clone());
    let nonneg_region = affine_ge_region(&p.slope, &p.intercept, &Rat::zero());
    let mut out = Vec::new();
    for comp in piece_set.intersect(&nonneg_region).components() {
        out.push((
            PwlPiece {
                interval: comp.clone(),
                slope: p.slope.clone(),
                intercept: p.intercept.clone(),
            },
            SignRegion::NonNegative,
        ));
    }
    for comp in piece_set.difference(&nonneg_region).components() {
        out.push((
            PwlPiece {
                interval: comp.clone(),
                slope: p.slope.clone(),
                intercept: p.intercept.clone(),
            },
            SignRegion::Negative,
        ));
    }
    debug_assert!(p.interval.contains(&root) || out.len() == 1);
    out
}

/// `{ x : slope*x + intercept >= c }` as an interval set (a closed ray, or
/// everything/nothing for constant pieces).
fn affine_ge_region(slope: &Rat, intercept: &Rat, c: &Rat) -> IntervalSet {
    if slope.is_zero() {
        return if intercept >= c {
            IntervalSet::full_line()
        } else {
            IntervalSet::empty()
        };
    }
    let root = (c - intercept) / slope;
    let interval = if slope.is_positive() {
        Interval::new(Bound::closed(root), Bound::pos_inf())
    } else {
        Interval::new(Bound::neg_inf(), Bound::closed(root))
    };
    IntervalSet::from_interval(interval.expect("ray is nonempty"))
}

/// `floor(2^n v) / 2^n`, clipped at `n`: the adapted-sequence value.
fn dyadic_clip(v: &XReal, n: u32) -> Rat {
    let level = rat_int(n as i64);
    match v {
        XReal::PosInf => level,
        XReal::NegInf => unreachable!("adapted sequences need nonnegative functions"),
        XReal::Finite(r) => {
            if *r < level {
                let scale = Rat::from_integer(BigInt::one() << n);
                (r * &scale).floor() / scale
            } else {
                level
            }
        }
    }
}

/// The dyadic adapted stage `phi_n` of a nonnegative function, as a simple
/// function in disjoint representation.
///
/// For piecewise-linear functions the level sets are exact interval sets
/// obtained by solving each affine piece; their count grows like `2^n`
/// times the value span, so this materialization is meant for moderate
/// stages. [`integral_mplus`] computes stage integrals arithmetically and
/// does not go through this function.
pub fn adapted_simple(f: &MeasurableFn, n: u32) -> Result<SimpleFn, LebintError> {
    if !f.is_nonneg() {
        return Err(LebintError::NegativeFunction(f.inf_value().to_string()));
    }
    match f {
        MeasurableFn::FiniteMap { space, values } => {
            let mut terms = Vec::new();
            for atom in space.atoms() {
                let x = atom.trailing_zeros() as usize;
                terms.push(Term {
                    coef: dyadic_clip(&values[x], n),
                    support: MeasurableSet::Finite(atom),
                });
            }
            Ok(SimpleFn::new(
                MeasurableSpace::Finite(space.clone()),
                terms,
            )?)
        }
        MeasurableFn::Step(s) => {
            let c = s.canonicalize();
            let terms = c
                .terms()
                .iter()
                .map(|t| Term {
                    coef: dyadic_clip(&XReal::Finite(t.coef.clone()), n),
                    support: t.support.clone(),
                })
                .collect();
            Ok(SimpleFn::new(MeasurableSpace::RealLine, terms)?)
        }
        MeasurableFn::PiecewiseLinear { domain, pieces } => {
            let mut terms = vec![Term {
                coef: Rat::zero(),
                support: MeasurableSet::Real(domain.complement()),
            }];
            let level = rat_int(n as i64);
            let scale = Rat::from_integer(BigInt::one() << n);
            for p in pieces {
                let piece_set = IntervalSet::from_interval(p.interval.clone());
                // Region clipped at the top value n.
                let top = piece_set.intersect(&affine_ge_region(&p.slope, &p.intercept, &level));
                if !top.is_empty() {
                    terms.push(Term {
                        coef: level.clone(),
                        support: MeasurableSet::Real(top.clone()),
                    });
                }
                let below = piece_set.difference(&top);
                if below.is_empty() {
                    continue;
                }
                if p.slope.is_zero() {
                    terms.push(Term {
                        coef: dyadic_clip(&XReal::Finite(p.intercept.clone()), n),
                        support: MeasurableSet::Real(below),
                    });
                    continue;
                }
                let (va, vb) = p.endpoint_values();
                let vmin = va.clone().min(vb.clone());
                let vmax = va.max(vb).min(level.clone());
                let mut i = (&vmin * &scale).floor().to_integer();
                let top_i = (&vmax * &scale).floor().to_integer();
                while i <= top_i {
                    let lo = Rat::new(i.clone(), scale.to_integer());
                    let hi = Rat::new(&i + BigInt::one(), scale.to_integer());
                    // { lo <= f < hi } on this piece.
                    let ge_lo = affine_ge_region(&p.slope, &p.intercept, &lo);
                    let ge_hi = affine_ge_region(&p.slope, &p.intercept, &hi);
                    let band = below.intersect(&ge_lo.difference(&ge_hi));
                    if !band.is_empty() {
                        terms.push(Term {
                            coef: lo,
                            support: MeasurableSet::Real(band),
                        });
                    }
                    i += BigInt::one();
                }
            }
            Ok(SimpleFn::new(MeasurableSpace::RealLine, terms)?)
        }
    }
}

/// One row of the adapted-stage table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedStage {
    pub n: u32,
    /// The stage simple function, materialized when the set representation
    /// is cheap (always for finite maps and steps; for small stages of
    /// piecewise-linear functions).
    pub phi: Option<SimpleFn>,
    pub integral: XReal,
}

/// Result of a nonnegative integral: the value (exact, or a stage lower
/// value), a certified two-sided gap when inexact, and the stage table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonNegIntegral {
    pub value: XReal,
    pub exact: bool,
    /// When inexact: the true integral lies in `[value, value + bound]`.
    pub bound: Option<Rat>,
    pub stages: Vec<AdaptedStage>,
}

/// Stages of piecewise-linear integrands are materialized as set-valued
/// simple functions only up to this level; beyond it the level sets get
/// numerous and only the arithmetic stage integral is kept.
const PWL_STAGE_SET_LIMIT: u32 = 8;

/// Integral of a nonnegative function through its adapted sequence.
///
/// Step and finite-map integrands evaluate exactly (the limit is a finite
/// sum); piecewise-linear integrands return the stage-`n` lower value with
/// the certified gap `2^-n * lambda(domain)` once `n` exceeds the sup of
/// the function. The stage loop stops early when the gap reaches `tol`.
pub fn integral_mplus(
    f: &MeasurableFn,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<NonNegIntegral, LebintError> {
    if !f.is_nonneg() {
        return Err(LebintError::NegativeFunction(f.inf_value().to_string()));
    }
    match f {
        MeasurableFn::FiniteMap { space, values } => {
            let MeasurableSpace::Finite(mu_space) = mu.space() else {
                return Err(LebintError::IncompatibleSpace(
                    "finite map against a non-finite measure".into(),
                ));
            };
            if mu_space.universe() != space.universe() {
                return Err(LebintError::IncompatibleSpace(
                    "finite map and measure use different universes".into(),
                ));
            }
            let mut total = Vec::with_capacity(values.len());
            for (x, v) in values.iter().enumerate() {
                total.push(v.mul_mt(&mu.atom_weight(x)?));
            }
            let value = XReal::sum_nonneg(&total).expect("nonneg terms");
            let mut stages = Vec::new();
            for n in 0..=n_max {
                let phi = adapted_simple(f, n)?;
                let integral = integral_term_sum(&phi, mu)?;
                let stabilized = integral == value;
                stages.push(AdaptedStage {
                    n,
                    phi: Some(phi),
                    integral,
                });
                if stabilized {
                    break;
                }
            }
            Ok(NonNegIntegral {
                value,
                exact: true,
                bound: None,
                stages,
            })
        }
        MeasurableFn::Step(s) => {
            if !matches!(mu.space(), MeasurableSpace::RealLine) {
                return Err(LebintError::IncompatibleSpace(
                    "step function against a non-real measure".into(),
                ));
            }
            let canon = s.canonicalize();
            let value = crate::simplefn::integral_sf_plus(&canon, mu)?;
            let mut stages = Vec::new();
            for n in 0..=n_max {
                let phi = adapted_simple(f, n)?;
                let integral = integral_term_sum(&phi, mu)?;
                let stabilized = integral == value;
                stages.push(AdaptedStage {
                    n,
                    phi: Some(phi),
                    integral,
                });
                if stabilized {
                    break;
                }
            }
            Ok(NonNegIntegral {
                value,
                exact: true,
                bound: None,
                stages,
            })
        }
        MeasurableFn::PiecewiseLinear { domain, pieces } => {
            let Some(clip) = mu.as_lebesgue_restriction() else {
                return Err(LebintError::IncompatibleSpace(
                    "piecewise-linear integrals are supported against Lebesgue measure".into(),
                ));
            };
            let sup = f.sup_value();
            let XReal::Finite(measure_mass) = domain.intersect(&clip).lebesgue() else {
                unreachable!("bounded domain has finite measure");
            };
            let mut stages: Vec<AdaptedStage> = Vec::new();
            let mut final_n = 0;
            for n in 0..=n_max {
                let integral = pwl_stage_integral(pieces, &clip, n);
                let phi = if n <= PWL_STAGE_SET_LIMIT {
                    let phi = adapted_simple(f, n)?;
                    debug_assert_eq!(
                        integral_term_sum(&adapted_mask(&phi, &clip)?, &Measure::lebesgue())?,
                        integral,
                        "set route and arithmetic route disagree at stage {n}"
                    );
                    Some(phi)
                } else {
                    None
                };
                stages.push(AdaptedStage { n, phi, integral });
                final_n = n;
                if XReal::Finite(rat_int(n as i64)) > sup {
                    let gap = gap_at(n, &measure_mass);
                    if gap <= *tol {
                        break;
                    }
                }
            }
            let value = stages.last().expect("at least one stage").integral.clone();
            let bound = if XReal::Finite(rat_int(final_n as i64)) > sup {
                Some(gap_at(final_n, &measure_mass))
            } else {
                None
            };
            Ok(NonNegIntegral {
                value,
                exact: false,
                bound,
                stages,
            })
        }
    }
}

fn gap_at(n: u32, mass: &Rat) -> Rat {
    mass / Rat::from_integer(BigInt::one() << n)
}

/// Masks a stage function to the measure's Lebesgue clip so the set route
/// and the arithmetic route integrate the same thing.
fn adapted_mask(phi: &SimpleFn, clip: &IntervalSet) -> Result<SimpleFn, SimpleFnError> {
    let ind = SimpleFn::indicator(
        MeasurableSpace::RealLine,
        MeasurableSet::Real(clip.clone()),
    )?;
    SimpleFn::combine(BinOp::Mul, phi, &ind)
}

/// Exact stage integral of the dyadic adapted function of a piecewise-linear
/// integrand under (possibly clipped) Lebesgue measure, computed per piece
/// with arithmetic-series sums instead of materialized level sets.
pub(crate) fn pwl_stage_integral(pieces: &[PwlPiece], clip: &IntervalSet, n: u32) -> XReal {
    let mut acc = Rat::zero();
    let level = rat_int(n as i64);
    let scale = Rat::from_integer(BigInt::one() << n);
    for p in pieces {
        let clipped = IntervalSet::from_interval(p.interval.clone()).intersect(clip);
        for comp in clipped.components() {
            let l = comp.lo().value.as_rat().expect("bounded").clone();
            let r = comp.hi().value.as_rat().expect("bounded").clone();
            if l == r {
                continue;
            }
            if p.slope.is_zero() {
                acc += dyadic_clip(&XReal::Finite(p.intercept.clone()), n) * (&r - &l);
                continue;
            }
            let va = p.value_at(&l);
            let vb = p.value_at(&r);
            let (vmin, vmax) = if va <= vb { (va, vb) } else { (vb, va) };
            let inv_slope = p.slope.abs().recip();
            // Region clipped at the top value n contributes n per unit.
            if vmax > level {
                let top_lo = vmin.clone().max(level.clone());
                acc += &level * (&vmax - &top_lo) * &inv_slope;
            }
            let vhi = vmax.min(level.clone());
            if vhi <= vmin {
                continue;
            }
            // Dyadic bands over the value range [vmin, vhi].
            let t0 = &vmin * &scale;
            let t1 = &vhi * &scale;
            let i0 = t0.floor().to_integer();
            let mut i1 = t1.floor().to_integer();
            if t1.is_integer() {
                i1 -= BigInt::one();
            }
            if i1 < i0 {
                // Single partial band.
                acc += Rat::new(i0, scale.to_integer()) * (&vhi - &vmin) * &inv_slope;
                continue;
            }
            if i0 == i1 {
                acc += Rat::new(i0, scale.to_integer()) * (&vhi - &vmin) * &inv_slope;
                continue;
            }
            // First partial band, full middle bands, last partial band.
            let first_hi = Rat::new(&i0 + BigInt::one(), scale.to_integer());
            acc += Rat::new(i0.clone(), scale.to_integer()) * (&first_hi - &vmin) * &inv_slope;
            let last_lo = Rat::new(i1.clone(), scale.to_integer());
            acc += Rat::new(i1.clone(), scale.to_integer()) * (&vhi - &last_lo) * &inv_slope;
            // Sum of i for i in (i0, i1), each with band width 1/2^n.
            let lo_full = &i0 + BigInt::one();
            let hi_full = &i1 - BigInt::one();
            if lo_full <= hi_full {
                let count = &hi_full - &lo_full + BigInt::one();
                let series = (&lo_full + &hi_full) * count / BigInt::from(2);
                acc += Rat::new(series, scale.to_integer().pow(2)) * &inv_slope;
            }
        }
    }
    XReal::Finite(acc)
}

/// Exact integral of a piecewise-linear function against (possibly clipped)
/// Lebesgue measure, through the antiderivative of each affine piece. The
/// second route next to the adapted sequence; the tests pin the two against
/// each other.
pub fn pwl_integral_exact(f: &MeasurableFn, mu: &Measure) -> Result<Rat, LebintError> {
    let MeasurableFn::PiecewiseLinear { pieces, .. } = f else {
        return Err(LebintError::UnsupportedShape(
            "exact antiderivative route applies to piecewise-linear functions".into(),
        ));
    };
    let Some(clip) = mu.as_lebesgue_restriction() else {
        return Err(LebintError::IncompatibleSpace(
            "piecewise-linear integrals are supported against Lebesgue measure".into(),
        ));
    };
    let mut acc = Rat::zero();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for p in pieces {
        let clipped = IntervalSet::from_interval(p.interval.clone()).intersect(&clip);
        for comp in clipped.components() {
            let l = comp.lo().value.as_rat().expect("bounded").clone();
            let r = comp.hi().value.as_rat().expect("bounded").clone();
            acc += &p.slope * &half * (&r * &r - &l * &l) + &p.intercept * (&r - &l);
        }
    }
    Ok(acc)
}

/// Exact integral where one exists on the shape: the antiderivative route
/// for piecewise-linear functions, finite sums for steps and finite maps
/// (with `inf` a legitimate value for nonnegative integrands).
pub fn exact_integral(f: &MeasurableFn, mu: &Measure) -> Result<XReal, LebintError> {
    if let MeasurableFn::PiecewiseLinear { .. } = f {
        return Ok(XReal::Finite(pwl_integral_exact(f, mu)?));
    }
    if f.is_nonneg() {
        Ok(integral_mplus(f, mu, 0, &Rat::one())?.value)
    } else {
        Ok(integral_signed(f, mu, 0, &Rat::one())?.value)
    }
}

/// A signed integral value with its exactness certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIntegral {
    pub value: XReal,
    pub exact: bool,
    /// Certified two-sided error when inexact.
    pub bound: Option<Rat>,
}

/// Signed integral: integrable iff both parts have finite integral, and
/// then the value is the difference of the part integrals.
pub fn integral_signed(
    f: &MeasurableFn,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<SignedIntegral, LebintError> {
    // The antiderivative route is exact for piecewise-linear integrands.
    if matches!(f, MeasurableFn::PiecewiseLinear { .. }) {
        let v = pwl_integral_exact(f, mu)?;
        return Ok(SignedIntegral {
            value: XReal::Finite(v),
            exact: true,
            bound: None,
        });
    }
    let (plus, minus) = f.split_parts();
    let p = integral_mplus(&plus, mu, n_max, tol)?;
    if p.value == XReal::PosInf {
        return Err(LebintError::NotIntegrable { part: "nonnegative" });
    }
    let m = integral_mplus(&minus, mu, n_max, tol)?;
    if m.value == XReal::PosInf {
        return Err(LebintError::NotIntegrable { part: "nonpositive" });
    }
    let value = p.value.sub_checked(&m.value).expect("both parts finite");
    Ok(SignedIntegral {
        value,
        exact: p.exact && m.exact,
        bound: match (p.bound, m.bound) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or_else(Rat::zero) + b.unwrap_or_else(Rat::zero)),
        },
    })
}

/// The L1 seminorm `N1(f) = integral of |f|`; finite exactly when `f` is
/// integrable. Exact on all three shapes (piecewise-linear through the
/// antiderivative of the split parts).
pub fn seminorm_n1(f: &MeasurableFn, mu: &Measure, n_max: u32, tol: &Rat) -> Result<XReal, LebintError> {
    let (plus, minus) = f.split_parts();
    if let MeasurableFn::PiecewiseLinear { .. } = f {
        let a = pwl_integral_exact(&plus, mu)?;
        let b = pwl_integral_exact(&minus, mu)?;
        return Ok(XReal::Finite(a + b));
    }
    let p = integral_mplus(&plus, mu, n_max, tol)?;
    let m = integral_mplus(&minus, mu, n_max, tol)?;
    Ok(XReal::sum_nonneg(&[p.value, m.value]).expect("nonneg"))
}

/// Oriented integral over the interval from `a` to `b` under a diffuse
/// measure (so endpoint inclusion cannot matter); reversed orientation
/// negates the value.
pub fn integral_over_interval(
    f: &MeasurableFn,
    a: &XReal,
    b: &XReal,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<SignedIntegral, LebintError> {
    if !crate::measures::classify(mu).diffuse {
        return Err(LebintError::NonDiffuseMeasure);
    }
    let reversed = a > b;
    let (lo, hi) = if reversed { (b, a) } else { (a, b) };
    let masked = f.mask_to_open_interval(lo, hi)?;
    let mut result = integral_signed(&masked, mu, n_max, tol)?;
    if reversed {
        result.value = result.value.neg();
    }
    Ok(result)
}

/// Closed form for the counting measure on a finite index set: the sum of
/// the values, requiring absolute summability (no infinite value).
pub fn counting_integral(values: &[XReal]) -> Result<XReal, LebintError> {
    let mut acc = Rat::zero();
    for v in values {
        match v {
            XReal::Finite(r) => acc += r,
            _ => {
                return Err(LebintError::NotAbsolutelySummable(format!(
                    "term {v} is infinite"
                )))
            }
        }
    }
    Ok(XReal::Finite(acc))
}

/// Closed form for the Dirac measure: `f(a)`, which must be finite.
pub fn dirac_integral(f: &MeasurableFn, a: &Point) -> Result<XReal, LebintError> {
    let v = f.eval(a);
    if !v.is_finite() {
        return Err(LebintError::NotAbsolutelySummable(format!(
            "f(a) = {v} is not finite"
        )));
    }
    Ok(v)
}

/// Bienayme-Chebyshev data: `(a * mu{|f| >= a}, N1(f))`, with the
/// guarantee `lhs <= rhs`.
pub fn chebyshev(
    f: &MeasurableFn,
    mu: &Measure,
    a: &XReal,
    n_max: u32,
    tol: &Rat,
) -> Result<(XReal, XReal), LebintError> {
    if !(*a > XReal::zero()) {
        return Err(LebintError::HypothesisFailed(
            "chebyshev threshold must be positive".into(),
        ));
    }
    let level = f.level_set_abs_ge(a);
    let lhs = a.mul_mt(&mu.eval(&level)?);
    let rhs = seminorm_n1(f, mu, n_max, tol)?;
    Ok((lhs, rhs))
}

/// Almost-everywhere equality of two finite-space functions: the
/// disagreement set is negligible.
pub fn ae_equal(f: &MeasurableFn, g: &MeasurableFn, mu: &Measure) -> Result<bool, LebintError> {
    let (fs, fv, gv) = both_finite_maps(f, g)?;
    let mut disagree = 0u32;
    for x in 0..fs.size() {
        if fv[x] != gv[x] {
            disagree |= 1 << x;
        }
    }
    Ok(is_negligible(disagree, mu)?)
}

/// The almost sum `f + g` with the non-summability domain (where the two
/// take opposite infinite values) masked to zero; defined when that domain
/// is negligible.
pub fn almost_sum(
    f: &MeasurableFn,
    g: &MeasurableFn,
    mu: &Measure,
) -> Result<MeasurableFn, LebintError> {
    let (fs, fv, gv) = both_finite_maps(f, g)?;
    let mut bad = 0u32;
    let mut values = Vec::with_capacity(fs.size());
    for x in 0..fs.size() {
        match fv[x].add_checked(&gv[x]) {
            Ok(v) => values.push(v),
            Err(_) => {
                bad |= 1 << x;
                values.push(XReal::zero());
            }
        }
    }
    if !is_negligible(bad, mu)? {
        return Err(LebintError::NotAlmostSummable);
    }
    MeasurableFn::finite_map(fs.clone(), values)
}

fn both_finite_maps<'a>(
    f: &'a MeasurableFn,
    g: &'a MeasurableFn,
) -> Result<(&'a FiniteSpace, &'a [XReal], &'a [XReal]), LebintError> {
    match (f, g) {
        (
            MeasurableFn::FiniteMap { space: s1, values: v1 },
            MeasurableFn::FiniteMap { space: s2, values: v2 },
        ) if s1 == s2 => Ok((s1, v1, v2)),
        _ => Err(LebintError::IncompatibleSpace(
            "almost-everywhere tools work on finite maps over one space".into(),
        )),
    }
}

/// First mean value data: `inf(f(X)) <= mean <= sup(f(X))` for a bounded
/// function under a finite nonzero measure, with the strictness flag and
/// its cross-check against almost-everywhere equality with a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanValue {
    pub lower: XReal,
    pub mean: XReal,
    pub upper: XReal,
    /// Both inequalities strict; happens exactly when the function is not
    /// almost everywhere equal to one of its bounds.
    pub strict: bool,
}

pub fn first_mean_value(
    f: &MeasurableFn,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<MeanValue, LebintError> {
    if !crate::measures::classify(mu).finite {
        return Err(LebintError::HypothesisFailed("measure must be finite".into()));
    }
    let total = mu.total()?;
    if total.is_zero() {
        return Err(LebintError::ZeroMeasure);
    }
    let lower = f.inf_value();
    let upper = f.sup_value();
    if !lower.is_finite() || !upper.is_finite() {
        return Err(LebintError::UnboundedFunction);
    }
    let integral = integral_signed(f, mu, n_max, tol)?;
    let XReal::Finite(total_rat) = &total else {
        unreachable!("finite measure has finite total");
    };
    let XReal::Finite(int_rat) = &integral.value else {
        return Err(LebintError::UnboundedFunction);
    };
    let mean = XReal::Finite(int_rat / total_rat);
    // Strictness both ways: the mean hits a bound iff the function equals
    // that bound almost everywhere.
    let ae_lower = level_complement_negligible(f, &lower, mu)?;
    let ae_upper = level_complement_negligible(f, &upper, mu)?;
    debug_assert_eq!(mean == lower, ae_lower);
    debug_assert_eq!(mean == upper, ae_upper);
    Ok(MeanValue {
        strict: !(ae_lower || ae_upper),
        lower,
        mean,
        upper,
    })
}

/// Witness for the mean value: a point where the function attains its mean,
/// found by solving the affine pieces. Only piecewise-linear functions admit
/// the search (the other shapes have no intermediate-value structure); the
/// hypotheses of the strict mean value statement must hold for a witness to
/// exist.
pub fn mean_value_witness(
    f: &MeasurableFn,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<Option<Rat>, LebintError> {
    let MeasurableFn::PiecewiseLinear { pieces, .. } = f else {
        return Err(LebintError::UnsupportedShape(
            "mean-value witness search needs a piecewise-linear function".into(),
        ));
    };
    let mv = first_mean_value(f, mu, n_max, tol)?;
    let XReal::Finite(mean) = &mv.mean else {
        return Ok(None);
    };
    for p in pieces {
        if p.slope.is_zero() {
            if p.intercept == *mean {
                let probe = IntervalSet::from_interval(p.interval.clone())
                    .representative()
                    .expect("nonempty piece");
                return Ok(Some(probe));
            }
            continue;
        }
        let root = (mean - &p.intercept) / &p.slope;
        if p.interval.contains(&root) {
            return Ok(Some(root));
        }
    }
    // The mean can also be attained at the off-domain zero value.
    if mean.is_zero() {
        let MeasurableFn::PiecewiseLinear { domain, .. } = f else {
            unreachable!()
        };
        return Ok(domain.complement().representative().map(Some).unwrap_or(None));
    }
    Ok(None)
}

/// Whether `{f != c}` is null (i.e. `f = c` almost everywhere).
fn level_complement_negligible(
    f: &MeasurableFn,
    c: &XReal,
    mu: &Measure,
) -> Result<bool, LebintError> {
    let eq = f.level_set_eq(c);
    match (&eq, mu.space()) {
        (MeasurableSet::Finite(m), MeasurableSpace::Finite(fs)) => {
            Ok(is_negligible(fs.full_mask() & !m, mu)?)
        }
        (MeasurableSet::Real(s), MeasurableSpace::RealLine) => {
            let clip = mu
                .as_lebesgue_restriction()
                .unwrap_or_else(IntervalSet::full_line);
            let outside = clip.difference(s);
            Ok(mu.eval(&MeasurableSet::Real(outside))?.is_zero())
        }
        _ => Err(LebintError::UnsupportedShape(
            "almost-everywhere bound check".into(),
        )),
    }
}
