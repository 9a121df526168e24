//! Convergence-theorem verifiers: monotone convergence (Beppo Levi), Fatou,
//! dominated convergence, and its almost-everywhere extension on finite
//! spaces.
//!
//! Limits are never inferred. A battery case declares its sequence as a
//! parametric family, its pointwise limit, and (where the theorem needs
//! one) a convergence-rate certificate; the verifier checks the declared
//! data for consistency at truncations. Lim inf of an arbitrary sequence is
//! not computable, so Fatou batteries are eventually monotone, where the
//! declared limit is the lim inf.

use crate::intervals::{Bound, Interval, IntervalSet};
use crate::lebint::{
    adapted_simple, exact_integral, pwl_stage_integral, LebintError, MeasurableFn,
};
use crate::measures::{
    is_negligible, Measure, MeasurableSet, MeasurableSpace, Point,
};
use crate::simplefn::{BinOp, SimpleFn};
use crate::xreal::{format_rat, rat_int, Rat, XReal};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The four verified convergence theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceTheorem {
    BeppoLevi,
    Fatou,
    Dominated,
    ExtendedDominated,
}

impl ConvergenceTheorem {
    pub fn name(&self) -> &'static str {
        match self {
            ConvergenceTheorem::BeppoLevi => "beppo-levi",
            ConvergenceTheorem::Fatou => "fatou",
            ConvergenceTheorem::Dominated => "dominated",
            ConvergenceTheorem::ExtendedDominated => "extended-dominated",
        }
    }
}

/// A parametric function sequence with exactly evaluable members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnSeq {
    /// The dyadic adapted stages of a nonnegative function; nondecreasing
    /// with pointwise limit the function itself.
    AdaptedOf { f: MeasurableFn },
    /// `1_{[a, b + c/(n+d)]}`; nonincreasing for `c > 0` with limit
    /// `1_{[a,b]}`, nondecreasing for `c < 0`.
    IndicatorShrink { a: Rat, b: Rat, c: Rat, d: u32 },
    /// The constant sequence.
    Constant { f: MeasurableFn },
}

impl FnSeq {
    /// Materializes the `n`-th member. Adapted stages of piecewise-linear
    /// functions have exponentially many level sets, so materialization is
    /// only attempted for moderate `n`; integrals of later members are
    /// still available through [`FnSeq::integral_at`].
    pub fn at(&self, n: u32) -> Result<MeasurableFn, LebintError> {
        match self {
            FnSeq::AdaptedOf { f } => {
                let phi = adapted_simple(f, n)?;
                match f {
                    MeasurableFn::FiniteMap { space, .. } => {
                        let values = (0..space.size())
                            .map(|x| XReal::Finite(phi.eval(&Point::Elem(x))))
                            .collect();
                        MeasurableFn::finite_map(space.clone(), values)
                    }
                    _ => MeasurableFn::step(phi),
                }
            }
            FnSeq::IndicatorShrink { a, b, c, d } => {
                let hi = b + c / rat_int((n + d) as i64);
                let set = if hi < *a {
                    IntervalSet::empty()
                } else {
                    IntervalSet::from_interval(
                        Interval::new(Bound::closed(a.clone()), Bound::closed(hi))
                            .expect("nonempty closed interval"),
                    )
                };
                Ok(MeasurableFn::Step(SimpleFn::indicator(
                    MeasurableSpace::RealLine,
                    MeasurableSet::Real(set),
                )?))
            }
            FnSeq::Constant { f } => Ok(f.clone()),
        }
    }

    /// Exact integral of the `n`-th member; avoids materialization for
    /// adapted stages of piecewise-linear functions.
    pub fn integral_at(&self, n: u32, mu: &Measure) -> Result<XReal, LebintError> {
        match self {
            FnSeq::AdaptedOf { f: MeasurableFn::PiecewiseLinear { pieces, .. } } => {
                let clip = mu.as_lebesgue_restriction().ok_or_else(|| {
                    LebintError::IncompatibleSpace(
                        "adapted stages of pwl functions integrate against Lebesgue".into(),
                    )
                })?;
                Ok(pwl_stage_integral(pieces, &clip, n))
            }
            _ => exact_integral(&self.at(n)?, mu),
        }
    }

    /// Exact `N1(f_n - limit)` when the sequence is dominated by its limit
    /// or materializable; adapted sequences use `int(limit) - int(f_n)`
    /// since the stages lie below the limit.
    pub fn n1_distance(
        &self,
        n: u32,
        limit: &MeasurableFn,
        mu: &Measure,
    ) -> Result<XReal, LebintError> {
        match self {
            FnSeq::AdaptedOf { .. } => {
                let lim = exact_integral(limit, mu)?;
                let fn_int = self.integral_at(n, mu)?;
                lim.sub_checked(&fn_int)
                    .map_err(|_| LebintError::UnboundedFunction)
            }
            _ => {
                let member = self.at(n)?;
                n1_of_difference(&member, limit, mu)
            }
        }
    }
}

/// Exact `N1(f - g)` for same-shape pairs at the cheap fragment.
fn n1_of_difference(
    f: &MeasurableFn,
    g: &MeasurableFn,
    mu: &Measure,
) -> Result<XReal, LebintError> {
    match (f, g) {
        (MeasurableFn::Step(a), MeasurableFn::Step(b)) => {
            let diff = MeasurableFn::Step(SimpleFn::combine(
                BinOp::Add,
                a,
                &b.scale(&-Rat::one()),
            )?);
            crate::lebint::seminorm_n1(&diff, mu, 4, &default_tol())
        }
        (
            MeasurableFn::FiniteMap { values: va, .. },
            MeasurableFn::FiniteMap { values: vb, .. },
        ) => {
            let mut terms = Vec::with_capacity(va.len());
            for x in 0..va.len() {
                let d = va[x]
                    .sub_checked(&vb[x])
                    .map_err(|_| LebintError::UnboundedFunction)?;
                terms.push(d.abs().mul_mt(&mu.atom_weight(x)?));
            }
            Ok(XReal::sum_nonneg(&terms).expect("absolute values"))
        }
        _ => Err(LebintError::UnsupportedShape(
            "N1 distance needs same-shape step or finite-map members".into(),
        )),
    }
}

fn default_tol() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << 16)
}

/// Declared convergence rate `|int f_n - int limit| <= rate(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RateSpec {
    /// `coef * 2^-n`.
    Geometric { coef: Rat },
    /// `coef / (n + shift)`.
    Harmonic { coef: Rat, shift: u32 },
}

impl RateSpec {
    pub fn at(&self, n: u32) -> Rat {
        match self {
            RateSpec::Geometric { coef } => coef / Rat::from_integer(BigInt::one() << n),
            RateSpec::Harmonic { coef, shift } => coef / rat_int((n + shift) as i64),
        }
    }
}

/// One battery case: a sequence, its declared pointwise limit, an optional
/// dominator, and an optional rate certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCase {
    pub name: String,
    pub seq: FnSeq,
    pub limit: MeasurableFn,
    pub dominator: Option<MeasurableFn>,
    pub rate: Option<RateSpec>,
}

/// Outcome of one case: pass/fail, the tightest margin observed, details on
/// failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub name: String,
    pub pass: bool,
    pub margin: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub theorem: ConvergenceTheorem,
    pub cases: Vec<CaseOutcome>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}/{} cases pass",
            self.theorem.name(),
            self.cases.iter().filter(|c| c.pass).count(),
            self.cases.len()
        )?;
        for c in &self.cases {
            writeln!(
                f,
                "  [{}] {}{}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                match &c.margin {
                    Some(m) => format!(" (margin {m})"),
                    None => String::new(),
                }
            )?;
        }
        Ok(())
    }
}

/// How many leading members get the pointwise hypothesis checks; later
/// members are covered by the integral checks.
const HYPOTHESIS_DEPTH: u32 = 6;

/// Verifies the named theorem on every battery case. Violated hypotheses
/// are hard errors naming the hypothesis and a witness; conclusion failures
/// show up as failing cases in the report.
pub fn verify_convergence(
    theorem: ConvergenceTheorem,
    battery: &[ConvergenceCase],
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<ConvergenceReport, LebintError> {
    let mut cases = Vec::with_capacity(battery.len());
    for case in battery {
        let outcome = match theorem {
            ConvergenceTheorem::BeppoLevi => verify_beppo_levi(case, mu, n_max)?,
            ConvergenceTheorem::Fatou => verify_fatou(case, mu, n_max)?,
            ConvergenceTheorem::Dominated => verify_dominated(case, mu, n_max, tol)?,
            ConvergenceTheorem::ExtendedDominated => {
                verify_extended_dominated(case, mu, n_max, tol)?
            }
        };
        cases.push(outcome);
    }
    Ok(ConvergenceReport { theorem, cases })
}

fn verify_beppo_levi(
    case: &ConvergenceCase,
    mu: &Measure,
    n_max: u32,
) -> Result<CaseOutcome, LebintError> {
    let rate = case.rate.as_ref().ok_or_else(|| {
        LebintError::HypothesisFailed(format!(
            "case {:?} declares no convergence rate",
            case.name
        ))
    })?;
    check_monotone_nondecreasing(case, mu)?;
    let limit_int = exact_integral(&case.limit, mu)?;
    let mut previous: Option<XReal> = None;
    let mut worst_slack: Option<Rat> = None;
    for n in 0..=n_max {
        let v = case.seq.integral_at(n, mu)?;
        if let Some(p) = &previous {
            if v < *p {
                return Ok(CaseOutcome {
                    name: case.name.clone(),
                    pass: false,
                    margin: None,
                    detail: format!("stage integrals decrease at n = {n}: {p} -> {v}"),
                });
            }
        }
        previous = Some(v.clone());
        // |int limit - int f_n| <= rate(n); stages lie below the limit.
        let gap = match limit_int.sub_checked(&v) {
            Ok(XReal::Finite(g)) => g,
            _ => {
                return Ok(CaseOutcome {
                    name: case.name.clone(),
                    pass: false,
                    margin: None,
                    detail: format!("non-finite gap at n = {n}"),
                })
            }
        };
        let allowed = rate.at(n);
        if gap.abs() > allowed {
            return Ok(CaseOutcome {
                name: case.name.clone(),
                pass: false,
                margin: None,
                detail: format!(
                    "stage gap {} exceeds declared rate {} at n = {n}",
                    format_rat(&gap),
                    format_rat(&allowed)
                ),
            });
        }
        let slack = allowed - gap.abs();
        worst_slack = Some(match worst_slack {
            None => slack,
            Some(w) => w.min(slack),
        });
    }
    Ok(pass_outcome(case, worst_slack))
}

fn verify_fatou(
    case: &ConvergenceCase,
    mu: &Measure,
    n_max: u32,
) -> Result<CaseOutcome, LebintError> {
    let direction = sequence_direction(case, mu)?;
    let limit_int = exact_integral(&case.limit, mu)?;
    let mut worst_slack: Option<XReal> = None;
    match direction {
        Direction::NonIncreasing | Direction::Constant => {
            // lim inf of the integrals is below every truncation value, so
            // the Fatou inequality must hold against each one.
            for n in 0..=n_max {
                let v = case.seq.integral_at(n, mu)?;
                if limit_int > v {
                    return Ok(CaseOutcome {
                        name: case.name.clone(),
                        pass: false,
                        margin: None,
                        detail: format!(
                            "int(liminf) = {limit_int} exceeds int(f_{n}) = {v}"
                        ),
                    });
                }
                let slack = v.sub_checked(&limit_int).unwrap_or(XReal::PosInf);
                worst_slack = Some(match worst_slack {
                    None => slack,
                    Some(w) => w.min(slack),
                });
            }
        }
        Direction::NonDecreasing => {
            // Monotone case: the declared rate certifies how far the last
            // truncation sits from the limit of the integrals.
            let rate = case.rate.as_ref().ok_or_else(|| {
                LebintError::HypothesisFailed(
                    "nondecreasing Fatou case needs a rate certificate".into(),
                )
            })?;
            let last = case.seq.integral_at(n_max, mu)?;
            let allowed = rate.at(n_max);
            let ceiling = last.add_checked(&XReal::Finite(allowed)).unwrap_or(XReal::PosInf);
            if limit_int > ceiling {
                return Ok(CaseOutcome {
                    name: case.name.clone(),
                    pass: false,
                    margin: None,
                    detail: format!(
                        "int(liminf) = {limit_int} exceeds certified ceiling {ceiling}"
                    ),
                });
            }
            worst_slack = ceiling.sub_checked(&limit_int).ok();
        }
    }
    Ok(pass_outcome_x(case, worst_slack))
}

fn verify_dominated(
    case: &ConvergenceCase,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<CaseOutcome, LebintError> {
    let g = case.dominator.as_ref().ok_or_else(|| {
        LebintError::HypothesisFailed(format!("case {:?} declares no dominator", case.name))
    })?;
    let rate = case.rate.as_ref().ok_or_else(|| {
        LebintError::HypothesisFailed(format!("case {:?} declares no rate", case.name))
    })?;
    // The dominator must be integrable.
    let g_n1 = crate::lebint::seminorm_n1(g, mu, 12, tol)?;
    if !g_n1.is_finite() {
        return Err(LebintError::HypothesisFailed(format!(
            "dominator of case {:?} is not integrable (N1 = {g_n1})",
            case.name
        )));
    }
    check_dominated_pointwise(case, g, false, mu)?;
    if rate.at(n_max) > *tol {
        return Err(LebintError::HypothesisFailed(format!(
            "declared rate at n_max = {n_max} exceeds the tolerance",
        )));
    }
    let limit_int = exact_integral(&case.limit, mu)?;
    let mut worst_slack: Option<Rat> = None;
    for n in 0..=n_max {
        let v = case.seq.integral_at(n, mu)?;
        let gap = match v.sub_checked(&limit_int) {
            Ok(XReal::Finite(g)) => g.abs(),
            _ => {
                return Ok(CaseOutcome {
                    name: case.name.clone(),
                    pass: false,
                    margin: None,
                    detail: format!("non-finite integral gap at n = {n}"),
                })
            }
        };
        let n1 = match case.seq.n1_distance(n, &case.limit, mu)? {
            XReal::Finite(d) => d,
            other => {
                return Ok(CaseOutcome {
                    name: case.name.clone(),
                    pass: false,
                    margin: None,
                    detail: format!("N1 distance {other} at n = {n}"),
                })
            }
        };
        let allowed = rate.at(n);
        // |int f_n - int f| <= N1(f_n - f) <= rate(n).
        if gap > n1.clone() || n1 > allowed {
            return Ok(CaseOutcome {
                name: case.name.clone(),
                pass: false,
                margin: None,
                detail: format!(
                    "at n = {n}: |gap| = {}, N1 = {}, allowed = {}",
                    format_rat(&gap),
                    format_rat(&n1),
                    format_rat(&allowed)
                ),
            });
        }
        let slack = allowed - n1;
        worst_slack = Some(match worst_slack {
            None => slack,
            Some(w) => w.min(slack),
        });
    }
    Ok(pass_outcome(case, worst_slack))
}

fn verify_extended_dominated(
    case: &ConvergenceCase,
    mu: &Measure,
    n_max: u32,
    tol: &Rat,
) -> Result<CaseOutcome, LebintError> {
    if !matches!(mu.space(), MeasurableSpace::Finite(_)) {
        return Err(LebintError::HypothesisFailed(
            "extended dominated convergence is verified on finite spaces".into(),
        ));
    }
    let g = case.dominator.as_ref().ok_or_else(|| {
        LebintError::HypothesisFailed(format!("case {:?} declares no dominator", case.name))
    })?;
    check_dominated_pointwise(case, g, true, mu)?;
    let limit_int = exact_integral(&case.limit, mu)?;
    let check_to = n_max.min(64);
    for n in 0..=check_to {
        let member = case.seq.at(n)?;
        // Convergence is almost everywhere: at the hypothesis depth the
        // members must already agree with the limit off a null set.
        if n >= HYPOTHESIS_DEPTH && !crate::lebint::ae_equal(&member, &case.limit, mu)? {
            return Ok(CaseOutcome {
                name: case.name.clone(),
                pass: false,
                margin: None,
                detail: format!("member {n} differs from the limit on a non-null set"),
            });
        }
        let v = exact_integral(&member, mu)?;
        if n >= HYPOTHESIS_DEPTH {
            let gap = match v.sub_checked(&limit_int) {
                Ok(d) => d.abs(),
                Err(_) => XReal::PosInf,
            };
            if gap > XReal::Finite(tol.clone()) {
                return Ok(CaseOutcome {
                    name: case.name.clone(),
                    pass: false,
                    margin: None,
                    detail: format!("integral gap {gap} at n = {n}"),
                });
            }
        }
    }
    Ok(pass_outcome(case, None))
}

fn pass_outcome(case: &ConvergenceCase, margin: Option<Rat>) -> CaseOutcome {
    CaseOutcome {
        name: case.name.clone(),
        pass: true,
        margin: margin.map(|m| format_rat(&m)),
        detail: String::new(),
    }
}

fn pass_outcome_x(case: &ConvergenceCase, margin: Option<XReal>) -> CaseOutcome {
    CaseOutcome {
        name: case.name.clone(),
        pass: true,
        margin: margin.map(|m| m.to_string()),
        detail: String::new(),
    }
}

enum Direction {
    NonDecreasing,
    NonIncreasing,
    Constant,
}

/// Observes the sequence direction on the leading members, pointwise on a
/// probe grid, and errors when it is not eventually monotone there.
fn sequence_direction(case: &ConvergenceCase, mu: &Measure) -> Result<Direction, LebintError> {
    let mut up = true;
    let mut down = true;
    for n in 0..HYPOTHESIS_DEPTH {
        let a = case.seq.at(n)?;
        let b = case.seq.at(n + 1)?;
        let grid = probe_points(&[&a, &b, &case.limit], mu);
        for p in &grid {
            let va = a.eval(p);
            let vb = b.eval(p);
            if va < vb {
                down = false;
            }
            if va > vb {
                up = false;
            }
        }
    }
    match (up, down) {
        (true, true) => Ok(Direction::Constant),
        (true, false) => Ok(Direction::NonDecreasing),
        (false, true) => Ok(Direction::NonIncreasing),
        (false, false) => Err(LebintError::HypothesisFailed(format!(
            "case {:?} is not eventually monotone on the probe grid",
            case.name
        ))),
    }
}

fn check_monotone_nondecreasing(
    case: &ConvergenceCase,
    mu: &Measure,
) -> Result<(), LebintError> {
    for n in 0..HYPOTHESIS_DEPTH {
        let a = case.seq.at(n)?;
        let b = case.seq.at(n + 1)?;
        let grid = probe_points(&[&a, &b, &case.limit], mu);
        for p in &grid {
            let va = a.eval(p);
            let vb = b.eval(p);
            let vl = case.limit.eval(p);
            if va > vb || vb > vl {
                return Err(LebintError::HypothesisFailed(format!(
                    "case {:?}: not nondecreasing below the limit at n = {n}, point {p:?} \
                     ({va} -> {vb}, limit {vl})",
                    case.name
                )));
            }
        }
    }
    Ok(())
}

fn check_dominated_pointwise(
    case: &ConvergenceCase,
    g: &MeasurableFn,
    almost_everywhere: bool,
    mu: &Measure,
) -> Result<(), LebintError> {
    for n in 0..=HYPOTHESIS_DEPTH {
        let member = case.seq.at(n)?;
        if almost_everywhere {
            // Collect the violation set and require it negligible.
            let MeasurableFn::FiniteMap { space, .. } = &member else {
                return Err(LebintError::HypothesisFailed(
                    "a.e. domination check needs finite maps".into(),
                ));
            };
            let mut bad = 0u32;
            for x in 0..space.size() {
                let p = Point::Elem(x);
                if member.eval(&p).abs() > g.eval(&p) {
                    bad |= 1 << x;
                }
            }
            if !is_negligible(bad, mu)? {
                return Err(LebintError::HypothesisFailed(format!(
                    "case {:?}: |f_{n}| <= g fails on a non-negligible set {bad:#b}",
                    case.name
                )));
            }
        } else {
            let grid = probe_points(&[&member, g], mu);
            for p in &grid {
                if member.eval(p).abs() > g.eval(p) {
                    return Err(LebintError::HypothesisFailed(format!(
                        "case {:?}: |f_{n}| <= g fails at {p:?}",
                        case.name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Probe points for pointwise hypothesis checks: all points of a finite
/// space; on the line, every breakpoint of the shapes involved, midpoints
/// between consecutive breakpoints, and one point beyond each extreme.
fn probe_points(fns: &[&MeasurableFn], mu: &Measure) -> Vec<Point> {
    if let MeasurableSpace::Finite(fs) = mu.space() {
        return (0..fs.size()).map(Point::Elem).collect();
    }
    let mut values: Vec<Rat> = Vec::new();
    for f in fns {
        match f {
            MeasurableFn::FiniteMap { .. } => {}
            MeasurableFn::Step(s) => {
                for t in s.canonicalize().terms() {
                    if let MeasurableSet::Real(set) = &t.support {
                        for c in set.components() {
                            for b in [c.lo(), c.hi()] {
                                if let Some(r) = b.value.as_rat() {
                                    values.push(r.clone());
                                }
                            }
                        }
                    }
                }
            }
            MeasurableFn::PiecewiseLinear { pieces, .. } => {
                for p in pieces {
                    for b in [p.interval.lo(), p.interval.hi()] {
                        if let Some(r) = b.value.as_rat() {
                            values.push(r.clone());
                        }
                    }
                }
            }
        }
    }
    values.sort();
    values.dedup();
    if values.is_empty() {
        return vec![Point::Real(Rat::zero())];
    }
    let mut grid = Vec::with_capacity(values.len() * 2 + 2);
    grid.push(values[0].clone() - Rat::one());
    for w in values.windows(2) {
        grid.push(w[0].clone());
        grid.push((&w[0] + &w[1]) / rat_int(2));
    }
    grid.push(values.last().unwrap().clone());
    grid.push(values.last().unwrap().clone() + Rat::one());
    grid.into_iter().map(Point::Real).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xreal::rat;

    fn x_on_unit() -> MeasurableFn {
        MeasurableFn::affine_on(
            Interval::closed_from_ints(0, 1),
            Rat::one(),
            Rat::zero(),
        )
        .unwrap()
    }

    fn indicator(strings: &[&str]) -> MeasurableFn {
        MeasurableFn::Step(
            SimpleFn::indicator(
                MeasurableSpace::RealLine,
                MeasurableSet::Real(IntervalSet::from_strings(strings).unwrap()),
            )
            .unwrap(),
        )
    }

    #[test]
    fn beppo_levi_on_adapted_identity() {
        let case = ConvergenceCase {
            name: "x on [0,1]".into(),
            seq: FnSeq::AdaptedOf { f: x_on_unit() },
            limit: x_on_unit(),
            dominator: None,
            // Stage gap is exactly 2^-(n+1) = (1/2) * 2^-n.
            rate: Some(RateSpec::Geometric { coef: rat(1, 2) }),
        };
        let report = verify_convergence(
            ConvergenceTheorem::BeppoLevi,
            &[case],
            &Measure::lebesgue(),
            20,
            &rat(1, 65536),
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn beppo_levi_rejects_wrong_rate() {
        let case = ConvergenceCase {
            name: "too optimistic".into(),
            seq: FnSeq::AdaptedOf { f: x_on_unit() },
            limit: x_on_unit(),
            dominator: None,
            rate: Some(RateSpec::Geometric { coef: rat(1, 8) }),
        };
        let report = verify_convergence(
            ConvergenceTheorem::BeppoLevi,
            &[case],
            &Measure::lebesgue(),
            10,
            &rat(1, 65536),
        )
        .unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn fatou_on_shrinking_indicators() {
        let case = ConvergenceCase {
            name: "1_[0, 1/2 + 1/(n+2)]".into(),
            seq: FnSeq::IndicatorShrink {
                a: Rat::zero(),
                b: rat(1, 2),
                c: Rat::one(),
                d: 2,
            },
            limit: indicator(&["[0,1/2]"]),
            dominator: None,
            rate: None,
        };
        let report = verify_convergence(
            ConvergenceTheorem::Fatou,
            &[case],
            &Measure::lebesgue(),
            30,
            &rat(1, 65536),
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn fatou_constant_sequence_is_equality() {
        let case = ConvergenceCase {
            name: "constant".into(),
            seq: FnSeq::Constant { f: indicator(&["[0,2]"]) },
            limit: indicator(&["[0,2]"]),
            dominator: None,
            rate: None,
        };
        let report = verify_convergence(
            ConvergenceTheorem::Fatou,
            &[case],
            &Measure::lebesgue(),
            10,
            &rat(1, 65536),
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.cases[0].margin.as_deref(), Some("0"));
    }

    #[test]
    fn dominated_on_shrinking_indicators() {
        let case = ConvergenceCase {
            name: "criterion battery".into(),
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
        };
        let report = verify_convergence(
            ConvergenceTheorem::Dominated,
            &[case],
            &Measure::lebesgue(),
            1024,
            &rat(1, 1024),
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn dominated_requires_domination() {
        let case = ConvergenceCase {
            name: "undominated".into(),
            seq: FnSeq::IndicatorShrink {
                a: Rat::zero(),
                b: rat(3, 2),
                c: Rat::one(),
                d: 2,
            },
            limit: indicator(&["[0,3/2]"]),
            dominator: Some(indicator(&["[0,1]"])),
            rate: Some(RateSpec::Harmonic {
                coef: Rat::one(),
                shift: 2,
            }),
        };
        assert!(matches!(
            verify_convergence(
                ConvergenceTheorem::Dominated,
                &[case],
                &Measure::lebesgue(),
                64,
                &rat(1, 16),
            ),
            Err(LebintError::HypothesisFailed(_))
        ));
    }

    #[test]
    fn extended_dominated_with_null_atom_noise() {
        use crate::measures::FiniteSpace;
        let space = FiniteSpace::discrete(3);
        let mu = Measure::finite_table(
            space.clone(),
            vec![XReal::one(), XReal::zero(), XReal::from_int(2)],
        )
        .unwrap();
        // f differs from the limit only on the null atom 1, where it also
        // escapes the dominator.
        let f = MeasurableFn::finite_map(
            space.clone(),
            vec![XReal::one(), XReal::from_int(100), XReal::from_int(2)],
        )
        .unwrap();
        let limit = MeasurableFn::finite_map(
            space.clone(),
            vec![XReal::one(), XReal::zero(), XReal::from_int(2)],
        )
        .unwrap();
        let g = MeasurableFn::finite_map(
            space,
            vec![XReal::from_int(2), XReal::zero(), XReal::from_int(2)],
        )
        .unwrap();
        let case = ConvergenceCase {
            name: "a.e. constant".into(),
            seq: FnSeq::Constant { f },
            limit,
            dominator: Some(g),
            rate: None,
        };
        let report = verify_convergence(
            ConvergenceTheorem::ExtendedDominated,
            &[case],
            &mu,
            16,
            &rat(1, 1024),
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }
}
