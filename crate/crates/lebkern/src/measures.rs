//! Measures and their concrete instances: finite atom tables, counting and
//! Dirac measures, Lebesgue measure on interval sets, restriction and trace,
//! tensor products on finite spaces and on boxes of the plane, plus axiom
//! and uniqueness verifiers.
//!
//! Finite-space measures are atomically tabulated (one weight per point);
//! evaluation on a measurable set sums the point weights. Tables over a
//! sigma-algebra coarser than the power set are required to be constant on
//! its atoms, which makes the table a canonical representation of the
//! measure.

use crate::intervals::IntervalSet;
use crate::setsys::{
    disjointify, generate, is_system, FiniteUniverse, Mask, SubsetFamily, SystemKind,
};
use crate::xreal::{Rat, XReal};
use std::fmt;

/// A finite measurable space: a universe and a sigma-algebra on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    universe: FiniteUniverse,
    sigma: SubsetFamily,
}

impl FiniteSpace {
    pub fn new(universe: FiniteUniverse, sigma: SubsetFamily) -> Result<Self, MeasureError> {
        if sigma.universe() != &universe {
            return Err(MeasureError::SpaceMismatch(
                "sigma-algebra universe differs from the space universe".into(),
            ));
        }
        let check = is_system(SystemKind::SigmaAlgebra, &sigma);
        if !check.ok {
            return Err(MeasureError::NotASigmaAlgebra(
                check.violation.map(|v| v.axiom).unwrap_or("unknown"),
            ));
        }
        Ok(FiniteSpace { universe, sigma })
    }

    /// The discrete space: power-set sigma-algebra on `n` points.
    pub fn discrete(n: usize) -> Self {
        let universe = FiniteUniverse::new(n).expect("size in range");
        let sigma = SubsetFamily::power_set(universe.clone());
        FiniteSpace { universe, sigma }
    }

    pub fn universe(&self) -> &FiniteUniverse {
        &self.universe
    }

    pub fn sigma(&self) -> &SubsetFamily {
        &self.sigma
    }

    pub fn size(&self) -> usize {
        self.universe.size()
    }

    pub fn full_mask(&self) -> Mask {
        self.universe.full_mask()
    }

    /// The atoms of the sigma-algebra: for each point, the smallest member
    /// containing it. Atoms partition the universe.
    pub fn atoms(&self) -> Vec<Mask> {
        let mut atoms = Vec::new();
        for x in 0..self.size() {
            let bit = 1u32 << x;
            let atom = self
                .sigma
                .members()
                .iter()
                .filter(|&&m| m & bit != 0)
                .fold(self.full_mask(), |acc, &m| acc & m);
            if !atoms.contains(&atom) {
                atoms.push(atom);
            }
        }
        atoms.sort_unstable();
        atoms
    }
}

/// The measurable spaces the kernel can represent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasurableSpace {
    /// Finite universe with an explicit sigma-algebra. Products of finite
    /// spaces are flattened into this variant.
    Finite(FiniteSpace),
    /// The real line; measurable sets are canonical interval sets.
    RealLine,
    /// The plane at the box fragment; measurable sets are disjoint unions
    /// of rectangles with interval-set sides.
    Plane,
}

/// A measurable set, tagged by the space it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasurableSet {
    Finite(Mask),
    Real(IntervalSet),
    Boxes(BoxSet),
}

impl MeasurableSet {
    pub fn empty_for(space: &MeasurableSpace) -> MeasurableSet {
        match space {
            MeasurableSpace::Finite(_) => MeasurableSet::Finite(0),
            MeasurableSpace::RealLine => MeasurableSet::Real(IntervalSet::empty()),
            MeasurableSpace::Plane => MeasurableSet::Boxes(BoxSet::empty()),
        }
    }

    pub fn full_for(space: &MeasurableSpace) -> MeasurableSet {
        match space {
            MeasurableSpace::Finite(fs) => MeasurableSet::Finite(fs.full_mask()),
            MeasurableSpace::RealLine => MeasurableSet::Real(IntervalSet::full_line()),
            MeasurableSpace::Plane => MeasurableSet::Boxes(BoxSet {
                rects: vec![(IntervalSet::full_line(), IntervalSet::full_line())],
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            MeasurableSet::Finite(m) => *m == 0,
            MeasurableSet::Real(s) => s.is_empty(),
            MeasurableSet::Boxes(b) => b.rects.iter().all(|(a, c)| a.is_empty() || c.is_empty()),
        }
    }

    /// Same-kind intersection.
    pub fn intersect(&self, other: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        match (self, other) {
            (MeasurableSet::Finite(a), MeasurableSet::Finite(b)) => {
                Ok(MeasurableSet::Finite(a & b))
            }
            (MeasurableSet::Real(a), MeasurableSet::Real(b)) => {
                Ok(MeasurableSet::Real(a.intersect(b)))
            }
            (MeasurableSet::Boxes(a), MeasurableSet::Boxes(b)) => {
                Ok(MeasurableSet::Boxes(a.intersect(b)))
            }
            _ => Err(MeasureError::SpaceMismatch(
                "cannot intersect sets from different space kinds".into(),
            )),
        }
    }

    /// Same-kind union.
    pub fn union(&self, other: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        match (self, other) {
            (MeasurableSet::Finite(a), MeasurableSet::Finite(b)) => {
                Ok(MeasurableSet::Finite(a | b))
            }
            (MeasurableSet::Real(a), MeasurableSet::Real(b)) => {
                Ok(MeasurableSet::Real(a.union(b)))
            }
            _ => Err(MeasureError::SpaceMismatch(
                "cannot union sets from different space kinds".into(),
            )),
        }
    }

    /// Same-kind difference.
    pub fn difference(&self, other: &MeasurableSet) -> Result<MeasurableSet, MeasureError> {
        match (self, other) {
            (MeasurableSet::Finite(a), MeasurableSet::Finite(b)) => {
                Ok(MeasurableSet::Finite(a & !b))
            }
            (MeasurableSet::Real(a), MeasurableSet::Real(b)) => {
                Ok(MeasurableSet::Real(a.difference(b)))
            }
            _ => Err(MeasureError::SpaceMismatch(
                "cannot subtract sets from different space kinds".into(),
            )),
        }
    }

    /// Complement within the given space.
    pub fn complement_in(&self, space: &MeasurableSpace) -> Result<MeasurableSet, MeasureError> {
        match (self, space) {
            (MeasurableSet::Finite(a), MeasurableSpace::Finite(fs)) => {
                Ok(MeasurableSet::Finite(fs.full_mask() & !a))
            }
            (MeasurableSet::Real(a), MeasurableSpace::RealLine) => {
                Ok(MeasurableSet::Real(a.complement()))
            }
            _ => Err(MeasureError::SpaceMismatch(
                "complement is not supported for this set/space pair".into(),
            )),
        }
    }

    pub fn is_subset_of(&self, other: &MeasurableSet) -> bool {
        match (self, other) {
            (MeasurableSet::Finite(a), MeasurableSet::Finite(b)) => a & !b == 0,
            (MeasurableSet::Real(a), MeasurableSet::Real(b)) => a.is_subset_of(b),
            _ => false,
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        match (self, p) {
            (MeasurableSet::Finite(m), Point::Elem(x)) => m & (1 << x) != 0,
            (MeasurableSet::Real(s), Point::Real(r)) => s.contains(r),
            _ => false,
        }
    }
}

impl fmt::Display for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasurableSet::Finite(m) => write!(f, "{m:#b}"),
            MeasurableSet::Real(s) => write!(f, "{s}"),
            MeasurableSet::Boxes(b) => {
                let parts: Vec<String> = b
                    .rects
                    .iter()
                    .map(|(a, c)| format!("({a}) x ({c})"))
                    .collect();
                write!(f, "{}", parts.join(" u "))
            }
        }
    }
}

/// A point of a measurable space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Elem(usize),
    Real(Rat),
}

/// Canonical finite disjoint union of rectangles `A1 x A2` with interval-set
/// sides; the representable measurable sets of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BoxSet {
    rects: Vec<(IntervalSet, IntervalSet)>,
}

impl BoxSet {
    pub fn empty() -> Self {
        BoxSet { rects: vec![] }
    }

    /// Builds a box set from rectangles, which must be pairwise disjoint:
    /// for every pair, the first sides or the second sides must not meet.
    pub fn new(rects: Vec<(IntervalSet, IntervalSet)>) -> Result<Self, MeasureError> {
        let rects: Vec<_> = rects
            .into_iter()
            .filter(|(a, b)| !a.is_empty() && !b.is_empty())
            .collect();
        for (i, (a1, a2)) in rects.iter().enumerate() {
            for (b1, b2) in &rects[i + 1..] {
                if !a1.intersect(b1).is_empty() && !a2.intersect(b2).is_empty() {
                    return Err(MeasureError::OverlappingBoxes);
                }
            }
        }
        Ok(BoxSet { rects })
    }

    pub fn rectangle(a1: IntervalSet, a2: IntervalSet) -> Self {
        BoxSet {
            rects: vec![(a1, a2)],
        }
    }

    pub fn rects(&self) -> &[(IntervalSet, IntervalSet)] {
        &self.rects
    }

    pub fn intersect(&self, other: &BoxSet) -> BoxSet {
        let mut out = Vec::new();
        for (a1, a2) in &self.rects {
            for (b1, b2) in &other.rects {
                let c1 = a1.intersect(b1);
                let c2 = a2.intersect(b2);
                if !c1.is_empty() && !c2.is_empty() {
                    out.push((c1, c2));
                }
            }
        }
        BoxSet { rects: out }
    }

    /// Section along axis `i` at a rational anchor: the union of the other
    /// sides of the rectangles whose `i`-th side contains the anchor.
    pub fn section(&self, axis: usize, at: &Rat) -> IntervalSet {
        let mut acc = IntervalSet::empty();
        for (a1, a2) in &self.rects {
            let (own, other) = if axis == 1 { (a1, a2) } else { (a2, a1) };
            if own.contains(at) {
                acc = acc.union(other);
            }
        }
        acc
    }
}

/// Errors from measure construction and evaluation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MeasureError {
    #[error("set is not measurable: {0}")]
    NotMeasurable(String),
    #[error("family is not a sigma-algebra (axiom: {0})")]
    NotASigmaAlgebra(&'static str),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("negative weight {weight} at element {element}")]
    NegativeWeight { element: usize, weight: String },
    #[error("weight table is not measurable: weights differ inside atom {atom:#b}")]
    TableNotMeasurable { atom: Mask },
    #[error("weight table has {got} entries for a universe of size {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("unsupported tensor factor kinds: {0}")]
    UnsupportedFactorKinds(String),
    #[error("rectangles of a box set must be pairwise disjoint")]
    OverlappingBoxes,
    #[error("uniqueness hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("point lies outside the space")]
    PointOutOfSpace,
    #[error("operation needs per-point weights, unsupported for this measure kind")]
    NoAtomWeights,
}

/// A measure, evaluable on the measurable sets of its space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    space: MeasurableSpace,
    kind: MeasureKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum MeasureKind {
    /// Weight per point; evaluation sums weights over the set.
    FiniteTable { weights: Vec<XReal> },
    /// `card(A n Y)` for a finite-space subset `Y` (not required measurable).
    CountingFinite { y: Mask },
    /// `card(A n Y)` for a finite set of rational points.
    CountingReal { points: Vec<Rat> },
    DiracFinite { at: usize },
    DiracReal { at: Rat },
    LebesgueR,
    /// `A -> base(A n Y)` on the base space.
    Restricted {
        base: Box<Measure>,
        y: MeasurableSet,
    },
    /// Restriction of the base to the trace sigma-algebra on `Y`; measurable
    /// sets are exactly the trace members (kept in original coordinates).
    Trace {
        base: Box<Measure>,
        y: MeasurableSet,
        trace_sigma: Option<Vec<Mask>>,
    },
    /// Tensor product of two finite-space measures, evaluated through the
    /// section formula.
    TensorFinite {
        left: Box<Measure>,
        right: Box<Measure>,
        n1: usize,
        n2: usize,
    },
    /// Lebesgue measure on the plane, at the box fragment.
    Lebesgue2,
}

impl Measure {
    pub fn space(&self) -> &MeasurableSpace {
        &self.space
    }

    /// Atom-tabulated measure on a finite space. Weights must be
    /// nonnegative and constant on the atoms of the sigma-algebra.
    pub fn finite_table(space: FiniteSpace, weights: Vec<XReal>) -> Result<Self, MeasureError> {
        if weights.len() != space.size() {
            return Err(MeasureError::TableSize {
                expected: space.size(),
                got: weights.len(),
            });
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_nonneg() {
                return Err(MeasureError::NegativeWeight {
                    element: i,
                    weight: w.to_string(),
                });
            }
        }
        for atom in space.atoms() {
            let mut first: Option<&XReal> = None;
            for (x, w) in weights.iter().enumerate() {
                if atom & (1 << x) == 0 {
                    continue;
                }
                match first {
                    None => first = Some(w),
                    Some(prev) if prev != w => {
                        return Err(MeasureError::TableNotMeasurable { atom })
                    }
                    _ => {}
                }
            }
        }
        Ok(Measure {
            space: MeasurableSpace::Finite(space),
            kind: MeasureKind::FiniteTable { weights },
        })
    }

    /// Table constructor without validation; lets the axiom verifier exhibit
    /// violations on deliberately corrupted tables.
    pub fn finite_table_unchecked(space: FiniteSpace, weights: Vec<XReal>) -> Self {
        Measure {
            space: MeasurableSpace::Finite(space),
            kind: MeasureKind::FiniteTable { weights },
        }
    }

    /// The zero measure on a finite space.
    pub fn trivial(space: FiniteSpace) -> Self {
        let weights = vec![XReal::zero(); space.size()];
        Measure::finite_table(space, weights).expect("zero table is valid")
    }

    /// Counting measure on a finite space; `y` need not be measurable.
    pub fn counting_finite(space: FiniteSpace, y: Mask) -> Result<Self, MeasureError> {
        if y & !space.full_mask() != 0 {
            return Err(MeasureError::PointOutOfSpace);
        }
        Ok(Measure {
            space: MeasurableSpace::Finite(space),
            kind: MeasureKind::CountingFinite { y },
        })
    }

    /// Counting measure on the line associated with a finite point set.
    pub fn counting_real(points: Vec<Rat>) -> Self {
        let mut points = points;
        points.sort();
        points.dedup();
        Measure {
            space: MeasurableSpace::RealLine,
            kind: MeasureKind::CountingReal { points },
        }
    }

    pub fn dirac_finite(space: FiniteSpace, at: usize) -> Result<Self, MeasureError> {
        if at >= space.size() {
            return Err(MeasureError::PointOutOfSpace);
        }
        Ok(Measure {
            space: MeasurableSpace::Finite(space),
            kind: MeasureKind::DiracFinite { at },
        })
    }

    pub fn dirac_real(at: Rat) -> Self {
        Measure {
            space: MeasurableSpace::RealLine,
            kind: MeasureKind::DiracReal { at },
        }
    }

    /// Lebesgue measure on the line.
    pub fn lebesgue() -> Self {
        Measure {
            space: MeasurableSpace::RealLine,
            kind: MeasureKind::LebesgueR,
        }
    }

    /// Restriction `A -> base(A n Y)`; a measure on the base space.
    pub fn restricted(base: Measure, y: MeasurableSet) -> Result<Self, MeasureError> {
        base.check_measurable(&y)?;
        Ok(Measure {
            space: base.space.clone(),
            kind: MeasureKind::Restricted {
                base: Box::new(base),
                y,
            },
        })
    }

    /// Trace measure on `Y`: the base restricted to the trace sigma-algebra
    /// `{A n Y}`, kept in the coordinates of the base space.
    pub fn trace(base: Measure, y: MeasurableSet) -> Result<Self, MeasureError> {
        base.check_measurable(&y)?;
        let trace_sigma = match (&base.space, &y) {
            (MeasurableSpace::Finite(fs), MeasurableSet::Finite(ym)) => {
                let mut members: Vec<Mask> =
                    fs.sigma().members().iter().map(|&m| m & ym).collect();
                members.sort_unstable();
                members.dedup();
                Some(members)
            }
            _ => None,
        };
        Ok(Measure {
            space: base.space.clone(),
            kind: MeasureKind::Trace {
                base: Box::new(base),
                y,
                trace_sigma,
            },
        })
    }

    /// Whether a set is measurable for this measure, as an error.
    pub fn check_measurable(&self, a: &MeasurableSet) -> Result<(), MeasureError> {
        match (&self.kind, a) {
            (MeasureKind::Trace { y, trace_sigma, .. }, _) => match (a, y, trace_sigma) {
                (MeasurableSet::Finite(m), MeasurableSet::Finite(_), Some(ts)) => {
                    if ts.binary_search(m).is_ok() {
                        Ok(())
                    } else {
                        Err(MeasureError::NotMeasurable(format!(
                            "{m:#b} is not in the trace sigma-algebra"
                        )))
                    }
                }
                (MeasurableSet::Real(s), MeasurableSet::Real(ys), None) => {
                    if s.is_subset_of(ys) {
                        Ok(())
                    } else {
                        Err(MeasureError::NotMeasurable(format!(
                            "{s} is not contained in the trace carrier {ys}"
                        )))
                    }
                }
                _ => Err(MeasureError::SpaceMismatch(
                    "set kind does not match the trace space".into(),
                )),
            },
            _ => match (&self.space, a) {
                (MeasurableSpace::Finite(fs), MeasurableSet::Finite(m)) => {
                    if fs.sigma().contains(*m) {
                        Ok(())
                    } else {
                        Err(MeasureError::NotMeasurable(format!(
                            "{m:#b} is not in the sigma-algebra"
                        )))
                    }
                }
                (MeasurableSpace::RealLine, MeasurableSet::Real(_)) => Ok(()),
                (MeasurableSpace::Plane, MeasurableSet::Boxes(_)) => Ok(()),
                _ => Err(MeasureError::SpaceMismatch(
                    "set kind does not match the measure's space".into(),
                )),
            },
        }
    }

    /// Evaluates the measure on a measurable set.
    pub fn eval(&self, a: &MeasurableSet) -> Result<XReal, MeasureError> {
        self.check_measurable(a)?;
        self.eval_unchecked(a)
    }

    fn eval_unchecked(&self, a: &MeasurableSet) -> Result<XReal, MeasureError> {
        match (&self.kind, a) {
            (MeasureKind::FiniteTable { weights }, MeasurableSet::Finite(m)) => {
                // A plain checked fold instead of the nonnegative sum, so
                // that the axiom verifier can observe corrupted tables.
                let mut acc = XReal::zero();
                for (x, w) in weights.iter().enumerate() {
                    if m & (1 << x) != 0 {
                        acc = acc.add_checked(w).map_err(|_| {
                            MeasureError::NegativeWeight {
                                element: x,
                                weight: w.to_string(),
                            }
                        })?;
                    }
                }
                Ok(acc)
            }
            (MeasureKind::CountingFinite { y }, MeasurableSet::Finite(m)) => {
                Ok(XReal::from_int((m & y).count_ones() as i64))
            }
            (MeasureKind::CountingReal { points }, MeasurableSet::Real(s)) => {
                let count = points.iter().filter(|p| s.contains(p)).count();
                Ok(XReal::from_int(count as i64))
            }
            (MeasureKind::DiracFinite { at }, MeasurableSet::Finite(m)) => {
                Ok(XReal::from_int(((m >> at) & 1) as i64))
            }
            (MeasureKind::DiracReal { at }, MeasurableSet::Real(s)) => {
                Ok(XReal::from_int(s.contains(at) as i64))
            }
            (MeasureKind::LebesgueR, MeasurableSet::Real(s)) => Ok(s.lebesgue()),
            (MeasureKind::Restricted { base, y }, _) => {
                let cut = a.intersect(y)?;
                base.eval(&cut)
            }
            (MeasureKind::Trace { base, .. }, _) => base.eval(a),
            (MeasureKind::TensorFinite { .. }, MeasurableSet::Finite(m)) => {
                self.tensor_eval_axis(*m, 1)
            }
            (MeasureKind::Lebesgue2, MeasurableSet::Boxes(b)) => {
                let areas: Vec<XReal> = b
                    .rects
                    .iter()
                    .map(|(a1, a2)| a1.lebesgue().mul_mt(&a2.lebesgue()))
                    .collect();
                Ok(XReal::sum_nonneg(&areas).expect("areas are nonnegative"))
            }
            _ => Err(MeasureError::SpaceMismatch(
                "set kind does not match the measure's space".into(),
            )),
        }
    }

    /// Tensor evaluation through the section formula along the given axis
    /// (1 integrates sections over the left factor, 2 over the right). Both
    /// axes agree; the acceptance tests assert it.
    pub fn tensor_eval_axis(&self, m: Mask, axis: usize) -> Result<XReal, MeasureError> {
        let MeasureKind::TensorFinite { left, right, n1, n2 } = &self.kind else {
            return Err(MeasureError::UnsupportedFactorKinds(
                "tensor_eval_axis on a non-tensor measure".into(),
            ));
        };
        let (n1, n2) = (*n1, *n2);
        let mut terms = Vec::new();
        if axis == 1 {
            for x1 in 0..n1 {
                let section = section_mask_axis1(m, x1, n2);
                let w = left.atom_weight(x1)?;
                let f = right.eval(&MeasurableSet::Finite(section))?;
                terms.push(f.mul_mt(&w));
            }
        } else {
            for x2 in 0..n2 {
                let section = section_mask_axis2(m, x2, n1, n2);
                let w = right.atom_weight(x2)?;
                let f = left.eval(&MeasurableSet::Finite(section))?;
                terms.push(f.mul_mt(&w));
            }
        }
        XReal::sum_nonneg(&terms).map_err(|_| MeasureError::NegativeWeight {
            element: 0,
            weight: "tensor section".into(),
        })
    }

    /// Weight of a single point of a finite space, `mu({x})` in the atomic
    /// tabulation (defined even when the singleton is not measurable).
    pub fn atom_weight(&self, x: usize) -> Result<XReal, MeasureError> {
        match &self.kind {
            MeasureKind::FiniteTable { weights } => weights
                .get(x)
                .cloned()
                .ok_or(MeasureError::PointOutOfSpace),
            MeasureKind::CountingFinite { y } => Ok(XReal::from_int(((y >> x) & 1) as i64)),
            MeasureKind::DiracFinite { at } => Ok(XReal::from_int((*at == x) as i64)),
            MeasureKind::Restricted { base, y } | MeasureKind::Trace { base, y, .. } => {
                match y {
                    MeasurableSet::Finite(ym) if ym & (1 << x) != 0 => base.atom_weight(x),
                    MeasurableSet::Finite(_) => Ok(XReal::zero()),
                    _ => Err(MeasureError::NoAtomWeights),
                }
            }
            MeasureKind::TensorFinite { left, right, n2, .. } => {
                let (x1, x2) = (x / n2, x % n2);
                Ok(left.atom_weight(x1)?.mul_mt(&right.atom_weight(x2)?))
            }
            _ => Err(MeasureError::NoAtomWeights),
        }
    }

    /// Total mass: `mu(X)`, or `mu(Y)` for a trace measure, whose carrier
    /// is the trace set.
    pub fn total(&self) -> Result<XReal, MeasureError> {
        match &self.kind {
            MeasureKind::Trace { y, .. } => self.eval(&y.clone()),
            _ => self.eval(&MeasurableSet::full_for(&self.space)),
        }
    }

    /// When the measure is Lebesgue measure on the line, possibly restricted
    /// or traced (in any nesting), the interval set it is clipped to;
    /// `None` for every other kind.
    pub fn as_lebesgue_restriction(&self) -> Option<crate::intervals::IntervalSet> {
        match &self.kind {
            MeasureKind::LebesgueR => Some(crate::intervals::IntervalSet::full_line()),
            MeasureKind::Restricted { base, y } | MeasureKind::Trace { base, y, .. } => {
                let inner = base.as_lebesgue_restriction()?;
                match y {
                    MeasurableSet::Real(s) => Some(inner.intersect(s)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            MeasureKind::FiniteTable { .. } => "table",
            MeasureKind::CountingFinite { .. } | MeasureKind::CountingReal { .. } => "counting",
            MeasureKind::DiracFinite { .. } | MeasureKind::DiracReal { .. } => "dirac",
            MeasureKind::LebesgueR => "lebesgue",
            MeasureKind::Restricted { .. } => "restricted",
            MeasureKind::Trace { .. } => "trace",
            MeasureKind::TensorFinite { .. } => "tensor",
            MeasureKind::Lebesgue2 => "lebesgue2",
        }
    }
}

fn section_mask_axis1(m: Mask, x1: usize, n2: usize) -> Mask {
    (m >> (x1 * n2)) & ((1u32 << n2) - 1)
}

fn section_mask_axis2(m: Mask, x2: usize, n1: usize, n2: usize) -> Mask {
    let mut out: Mask = 0;
    for x1 in 0..n1 {
        if m & (1 << (x1 * n2 + x2)) != 0 {
            out |= 1 << x1;
        }
    }
    out
}

/// The unique tensor product measure of two factors.
///
/// Supported factor pairs: two finite-space measures (any kinds with atom
/// weights), yielding the section-formula tensor on the product
/// sigma-algebra; or two copies of Lebesgue measure on the line, yielding
/// Lebesgue measure on boxes of the plane.
pub fn tensor_measure(mu1: &Measure, mu2: &Measure) -> Result<Measure, MeasureError> {
    match (&mu1.space, &mu2.space) {
        (MeasurableSpace::Finite(f1), MeasurableSpace::Finite(f2)) => {
            mu1.atom_weight(0)?;
            mu2.atom_weight(0)?;
            let sigma = crate::setsys::product_sigma(f1.sigma(), f2.sigma())
                .map_err(|e| MeasureError::UnsupportedFactorKinds(e.to_string()))?;
            let universe = sigma.universe().clone();
            let space = FiniteSpace::new(universe, sigma)
                .expect("product of sigma-algebras is a sigma-algebra");
            Ok(Measure {
                space: MeasurableSpace::Finite(space),
                kind: MeasureKind::TensorFinite {
                    left: Box::new(mu1.clone()),
                    right: Box::new(mu2.clone()),
                    n1: f1.size(),
                    n2: f2.size(),
                },
            })
        }
        (MeasurableSpace::RealLine, MeasurableSpace::RealLine) => {
            if matches!(mu1.kind, MeasureKind::LebesgueR)
                && matches!(mu2.kind, MeasureKind::LebesgueR)
            {
                Ok(Measure {
                    space: MeasurableSpace::Plane,
                    kind: MeasureKind::Lebesgue2,
                })
            } else {
                Err(MeasureError::UnsupportedFactorKinds(format!(
                    "{} x {}",
                    mu1.kind_name(),
                    mu2.kind_name()
                )))
            }
        }
        _ => Err(MeasureError::UnsupportedFactorKinds(format!(
            "{} x {}",
            mu1.kind_name(),
            mu2.kind_name()
        ))),
    }
}

/// Structural classification flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub finite: bool,
    pub sigma_finite: bool,
    pub diffuse: bool,
}

/// Classifies a measure structurally: total mass, sigma-finiteness, and
/// diffuseness (every singleton null, which requires the singletons to be
/// measurable in the first place).
pub fn classify(mu: &Measure) -> Classification {
    match (&mu.kind, &mu.space) {
        (MeasureKind::LebesgueR, _) => Classification {
            finite: false,
            sigma_finite: true,
            diffuse: true,
        },
        (MeasureKind::Lebesgue2, _) => Classification {
            finite: false,
            sigma_finite: true,
            diffuse: true,
        },
        (MeasureKind::DiracFinite { .. } | MeasureKind::DiracReal { .. }, _) => Classification {
            finite: true,
            sigma_finite: true,
            diffuse: false,
        },
        (MeasureKind::CountingFinite { y }, MeasurableSpace::Finite(fs)) => {
            let diffuse = *y == 0 && fs.sigma().len() == (1usize << fs.size());
            Classification {
                finite: true,
                sigma_finite: true,
                diffuse,
            }
        }
        (MeasureKind::CountingReal { points }, _) => Classification {
            finite: true,
            sigma_finite: true,
            diffuse: points.is_empty(),
        },
        (MeasureKind::FiniteTable { weights }, MeasurableSpace::Finite(fs)) => {
            let finite = weights.iter().all(|w| w.is_finite());
            let singletons_measurable = fs.sigma().len() == (1usize << fs.size());
            Classification {
                finite,
                sigma_finite: finite,
                diffuse: singletons_measurable && weights.iter().all(|w| w.is_zero()),
            }
        }
        (MeasureKind::Restricted { base, y } | MeasureKind::Trace { base, y, .. }, _) => {
            let base_class = classify(base);
            let finite = base.eval(y).map(|v| v.is_finite()).unwrap_or(false);
            Classification {
                finite,
                sigma_finite: base_class.sigma_finite,
                diffuse: base_class.diffuse || restricted_is_diffuse(base, y),
            }
        }
        (MeasureKind::TensorFinite { left, right, n1, n2 }, MeasurableSpace::Finite(fs)) => {
            let mut finite = true;
            let mut diffuse = true;
            for x1 in 0..*n1 {
                for x2 in 0..*n2 {
                    let w = left
                        .atom_weight(x1)
                        .and_then(|a| Ok(a.mul_mt(&right.atom_weight(x2)?)))
                        .unwrap_or(XReal::PosInf);
                    if !w.is_finite() {
                        finite = false;
                    }
                    if !w.is_zero() {
                        diffuse = false;
                    }
                }
            }
            let singletons_measurable = fs.sigma().len() == (1usize << fs.size());
            Classification {
                finite,
                sigma_finite: finite,
                diffuse: diffuse && singletons_measurable,
            }
        }
        _ => Classification {
            finite: false,
            sigma_finite: false,
            diffuse: false,
        },
    }
}

/// Diffuseness of a restriction when the base is atomic: every point of `Y`
/// must carry zero weight.
fn restricted_is_diffuse(base: &Measure, y: &MeasurableSet) -> bool {
    match (&base.kind, y) {
        (MeasureKind::CountingReal { points }, MeasurableSet::Real(s)) => {
            points.iter().all(|p| !s.contains(p))
        }
        (_, MeasurableSet::Finite(ym)) => (0..u32::BITS as usize)
            .filter(|x| ym & (1 << x) != 0)
            .all(|x| base.atom_weight(x).map(|w| w.is_zero()).unwrap_or(false)),
        _ => false,
    }
}

/// One verified axiom group with the detected violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the measure axioms and their first consequences on a battery of
/// sample sets: nonnegativity, null empty set, finite additivity on the
/// disjointified battery, monotonicity on nested pairs, the finite Boole
/// inequality, and the pseudopartition identity through each sample split.
pub fn verify_measure_axioms(
    mu: &Measure,
    samples: &[MeasurableSet],
) -> Result<AxiomReport, MeasureError> {
    let mut checks = 0usize;
    let mut violations = Vec::new();
    let mut values = Vec::with_capacity(samples.len());
    for a in samples {
        let v = mu.eval(a)?;
        checks += 1;
        if !v.is_nonneg() {
            violations.push(format!("nonnegativity: mu({a}) = {v}"));
        }
        values.push(v);
    }

    let empty = MeasurableSet::empty_for(&mu.space);
    let v_empty = mu.eval(&empty)?;
    checks += 1;
    if !v_empty.is_zero() {
        violations.push(format!("mu(empty) = {v_empty} != 0"));
    }

    // Box sets are not closed under difference at the representable
    // fragment, so the set-algebra checks below only run on finite and
    // interval samples.
    if samples
        .iter()
        .any(|s| matches!(s, MeasurableSet::Boxes(_)))
    {
        return Ok(AxiomReport { checks, violations });
    }

    // Finite additivity on the disjointified battery.
    if let Some(parts) = disjointify_sets(samples) {
        let mut union = empty.clone();
        let mut part_values = Vec::new();
        for p in &parts {
            part_values.push(mu.eval(p)?);
            union = union.union(p)?;
        }
        let total = mu.eval(&union)?;
        let sum = XReal::sum_nonneg(&part_values);
        checks += 1;
        match sum {
            Ok(s) if s == total => {}
            Ok(s) => violations.push(format!(
                "additivity: mu(disjoint union) = {total} but sum of parts = {s}"
            )),
            Err(_) => violations.push("additivity: negative part value".into()),
        }
    }

    // Monotonicity on nested sample pairs.
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            if i == j || !a.is_subset_of(b) {
                continue;
            }
            checks += 1;
            if values[i] > values[j] {
                violations.push(format!(
                    "monotonicity: {a} subset of {b} but mu = {} > {}",
                    values[i], values[j]
                ));
            }
        }
    }

    // Finite Boole inequality over the whole battery.
    if !samples.is_empty() {
        let mut union = empty.clone();
        for a in samples {
            union = union.union(a)?;
        }
        let lhs = mu.eval(&union)?;
        checks += 1;
        match XReal::sum_nonneg(&values) {
            Ok(rhs) => {
                if lhs > rhs {
                    violations.push(format!("boole: mu(union) = {lhs} > sum = {rhs}"));
                }
            }
            Err(_) => violations.push("boole: negative sample value".into()),
        }
    }

    // Pseudopartition identity: splitting each sample by every other.
    for a in samples {
        for b in samples {
            let inside = a.intersect(b)?;
            let outside = a.difference(b)?;
            let va = mu.eval(a)?;
            let vi = mu.eval(&inside)?;
            let vo = mu.eval(&outside)?;
            checks += 1;
            match vi.add_checked(&vo) {
                Ok(s) if s == va => {}
                Ok(s) => violations.push(format!(
                    "pseudopartition: mu({a}) = {va} but split sum = {s}"
                )),
                Err(_) => violations.push("pseudopartition: undefined sum".into()),
            }
        }
    }

    Ok(AxiomReport { checks, violations })
}

/// Disjointification lifted to measurable sets; `None` for box sets, whose
/// differences are outside the representable fragment.
fn disjointify_sets(samples: &[MeasurableSet]) -> Option<Vec<MeasurableSet>> {
    if samples.is_empty() {
        return Some(vec![]);
    }
    match samples[0] {
        MeasurableSet::Finite(_) => {
            let masks: Vec<Mask> = samples
                .iter()
                .map(|s| match s {
                    MeasurableSet::Finite(m) => *m,
                    _ => 0,
                })
                .collect();
            Some(
                disjointify(&masks)
                    .into_iter()
                    .map(MeasurableSet::Finite)
                    .collect(),
            )
        }
        MeasurableSet::Real(_) => {
            let mut seen = IntervalSet::empty();
            let mut out = Vec::with_capacity(samples.len());
            for s in samples {
                let MeasurableSet::Real(a) = s else { return None };
                out.push(MeasurableSet::Real(a.difference(&seen)));
                seen = seen.union(a);
            }
            Some(out)
        }
        MeasurableSet::Boxes(_) => None,
    }
}

/// Instance check of measure uniqueness from a generating pi-system: both
/// finite-table measures must coincide on `g`, `g` must be a pi-system
/// generating the space's sigma-algebra and containing a pseudopartition of
/// the universe with `mu1`-finite parts. Under those hypotheses the measures
/// are asserted equal on the whole sigma-algebra; the returned flag is the
/// conclusion's truth on this instance.
pub fn verify_uniqueness_pi_system(
    space: &FiniteSpace,
    g: &SubsetFamily,
    mu1: &Measure,
    mu2: &Measure,
) -> Result<bool, MeasureError> {
    for (m, name) in [(mu1, "mu1"), (mu2, "mu2")] {
        match (&m.kind, &m.space) {
            (MeasureKind::FiniteTable { .. }, MeasurableSpace::Finite(fs)) if fs == space => {}
            _ => {
                return Err(MeasureError::HypothesisFailed(format!(
                    "{name} is not a finite table on the given space"
                )))
            }
        }
    }
    let check = is_system(SystemKind::PiSystem, g);
    if !check.ok {
        return Err(MeasureError::HypothesisFailed(format!(
            "G is not a pi-system ({})",
            check.violation.map(|v| v.axiom).unwrap_or("unknown")
        )));
    }
    let generated = generate(SystemKind::SigmaAlgebra, g)
        .map_err(|e| MeasureError::HypothesisFailed(e.to_string()))?;
    if &generated != space.sigma() {
        return Err(MeasureError::HypothesisFailed(
            "G does not generate the space's sigma-algebra".into(),
        ));
    }
    // Pseudopartition of X by mu1-finite members of G, found by a worklist
    // over disjoint unions.
    let full = space.full_mask();
    let finite_parts: Vec<Mask> = g
        .members()
        .iter()
        .copied()
        .filter(|&m| {
            mu1.eval(&MeasurableSet::Finite(m))
                .map(|v| v.is_finite())
                .unwrap_or(false)
        })
        .collect();
    let mut reachable = std::collections::BTreeSet::from([0u32]);
    let mut work = vec![0u32];
    let mut found = full == 0;
    while let Some(m) = work.pop() {
        for &p in &finite_parts {
            if m & p == 0 {
                let next = m | p;
                if reachable.insert(next) {
                    if next == full {
                        found = true;
                    }
                    work.push(next);
                }
            }
        }
    }
    if !found {
        return Err(MeasureError::HypothesisFailed(
            "G contains no pseudopartition of X with mu1-finite parts".into(),
        ));
    }
    for &m in g.members() {
        let a = MeasurableSet::Finite(m);
        if mu1.eval(&a)? != mu2.eval(&a)? {
            return Err(MeasureError::HypothesisFailed(format!(
                "measures do not coincide on G (differ at {m:#b})"
            )));
        }
    }
    for &m in space.sigma().members() {
        let a = MeasurableSet::Finite(m);
        if mu1.eval(&a)? != mu2.eval(&a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Negligibility on a finite space: `A` is contained in a measurable null
/// set. The union of all null members of the sigma-algebra is itself a null
/// member, so the check is containment in that union.
pub fn is_negligible(a: Mask, mu: &Measure) -> Result<bool, MeasureError> {
    let MeasurableSpace::Finite(fs) = &mu.space else {
        return Err(MeasureError::SpaceMismatch(
            "negligibility check needs a finite space".into(),
        ));
    };
    let mut null_union: Mask = 0;
    for &m in fs.sigma().members() {
        if mu.eval(&MeasurableSet::Finite(m))?.is_zero() {
            null_union |= m;
        }
    }
    Ok(a & !null_union == 0)
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind_name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xreal::{rat, rat_int};

    fn table(weights: &[(i64, i64)]) -> Measure {
        let space = FiniteSpace::discrete(weights.len());
        let w = weights
            .iter()
            .map(|&(n, d)| XReal::Finite(rat(n, d)))
            .collect();
        Measure::finite_table(space, w).unwrap()
    }

    fn iset(strings: &[&str]) -> IntervalSet {
        IntervalSet::from_strings(strings).unwrap()
    }

    #[test]
    fn dirac_is_indicator() {
        let space = FiniteSpace::discrete(3);
        let d = Measure::dirac_finite(space, 1).unwrap();
        assert_eq!(d.eval(&MeasurableSet::Finite(0b010)), Ok(XReal::one()));
        assert_eq!(d.eval(&MeasurableSet::Finite(0b101)), Ok(XReal::zero()));
        let dr = Measure::dirac_real(rat_int(2));
        assert_eq!(
            dr.eval(&MeasurableSet::Real(iset(&["[0,3]"]))),
            Ok(XReal::one())
        );
    }

    #[test]
    fn counting_is_cardinality() {
        let space = FiniteSpace::discrete(4);
        let c = Measure::counting_finite(space, 0b1011).unwrap();
        assert_eq!(c.eval(&MeasurableSet::Finite(0b1110)), Ok(XReal::from_int(2)));
        let cr = Measure::counting_real(vec![rat_int(0), rat(1, 2), rat_int(5)]);
        assert_eq!(
            cr.eval(&MeasurableSet::Real(iset(&["[0,1]"]))),
            Ok(XReal::from_int(2))
        );
    }

    #[test]
    fn every_measure_is_null_on_empty() {
        let measures = vec![
            table(&[(1, 2), (3, 1)]),
            Measure::counting_finite(FiniteSpace::discrete(2), 0b11).unwrap(),
            Measure::dirac_finite(FiniteSpace::discrete(2), 0).unwrap(),
            Measure::lebesgue(),
            Measure::counting_real(vec![rat_int(1)]),
        ];
        for m in measures {
            let empty = MeasurableSet::empty_for(m.space());
            assert_eq!(m.eval(&empty), Ok(XReal::zero()), "{m}");
        }
    }

    #[test]
    fn not_measurable_is_reported() {
        let universe = FiniteUniverse::new(2).unwrap();
        let sigma = SubsetFamily::new(universe.clone(), [0b00, 0b11]).unwrap();
        let space = FiniteSpace::new(universe, sigma).unwrap();
        let m = Measure::finite_table(space, vec![XReal::one(), XReal::one()]).unwrap();
        assert!(matches!(
            m.eval(&MeasurableSet::Finite(0b01)),
            Err(MeasureError::NotMeasurable(_))
        ));
    }

    #[test]
    fn table_must_be_constant_on_atoms() {
        let universe = FiniteUniverse::new(2).unwrap();
        let sigma = SubsetFamily::new(universe.clone(), [0b00, 0b11]).unwrap();
        let space = FiniteSpace::new(universe, sigma).unwrap();
        assert!(matches!(
            Measure::finite_table(space, vec![XReal::one(), XReal::from_int(2)]),
            Err(MeasureError::TableNotMeasurable { atom: 0b11 })
        ));
    }

    #[test]
    fn restricted_and_trace_coincide_on_trace_sets() {
        let m = table(&[(1, 1), (2, 1), (3, 1)]);
        let y = MeasurableSet::Finite(0b011);
        let restricted = Measure::restricted(m.clone(), y.clone()).unwrap();
        let trace = Measure::trace(m, y).unwrap();
        for a in [0b000u32, 0b001, 0b010, 0b011] {
            let set = MeasurableSet::Finite(a);
            assert_eq!(restricted.eval(&set), trace.eval(&set), "{a:#b}");
        }
        // Outside the trace sigma-algebra the trace measure refuses.
        assert!(trace.eval(&MeasurableSet::Finite(0b100)).is_err());
        assert_eq!(
            Measure::restricted(table(&[(1, 1)]), MeasurableSet::Finite(0b1))
                .unwrap()
                .eval(&MeasurableSet::Finite(0b1)),
            Ok(XReal::one())
        );
    }

    #[test]
    fn tensor_on_rectangles_multiplies() {
        let m1 = table(&[(1, 2), (3, 1)]);
        let m2 = table(&[(2, 1), (5, 1), (7, 1)]);
        let t = tensor_measure(&m1, &m2).unwrap();
        // A1 = {1}, A2 = {0, 2}: mu1(A1) * mu2(A2) = 3 * 9 = 27.
        let rect = crate::setsys::rectangle_mask(0b10, 0b101, 3);
        assert_eq!(
            t.eval(&MeasurableSet::Finite(rect)),
            Ok(XReal::from_int(27))
        );
        assert_eq!(
            t.tensor_eval_axis(rect, 1),
            t.tensor_eval_axis(rect, 2)
        );
    }

    #[test]
    fn tensor_of_counting_is_counting_on_product() {
        let c1 = Measure::counting_finite(FiniteSpace::discrete(2), 0b11).unwrap();
        let c2 = Measure::counting_finite(FiniteSpace::discrete(3), 0b111).unwrap();
        let t = tensor_measure(&c1, &c2).unwrap();
        let product_counting =
            Measure::counting_finite(FiniteSpace::discrete(6), 0b111111).unwrap();
        for m in 0u32..64 {
            let a = MeasurableSet::Finite(m);
            assert_eq!(t.eval(&a), product_counting.eval(&a), "{m:#b}");
        }
    }

    #[test]
    fn lebesgue2_of_box_is_area() {
        let l2 = tensor_measure(&Measure::lebesgue(), &Measure::lebesgue()).unwrap();
        let b = BoxSet::rectangle(iset(&["[1,4]"]), iset(&["[0,2]"]));
        assert_eq!(
            l2.eval(&MeasurableSet::Boxes(b)),
            Ok(XReal::from_int(6))
        );
        // A line has measure zero.
        let line = BoxSet::rectangle(iset(&["[1,1]"]), iset(&["[0,2]"]));
        assert_eq!(l2.eval(&MeasurableSet::Boxes(line)), Ok(XReal::zero()));
    }

    #[test]
    fn unsupported_tensor_factors() {
        assert!(matches!(
            tensor_measure(&Measure::lebesgue(), &Measure::dirac_real(rat_int(0))),
            Err(MeasureError::UnsupportedFactorKinds(_))
        ));
        assert!(matches!(
            tensor_measure(&Measure::lebesgue(), &table(&[(1, 1)])),
            Err(MeasureError::UnsupportedFactorKinds(_))
        ));
    }

    #[test]
    fn axioms_hold_for_table_on_all_subsets() {
        let m = table(&[(1, 2), (0, 1), (3, 1), (7, 2)]);
        let samples: Vec<MeasurableSet> = (0u32..16).map(MeasurableSet::Finite).collect();
        let report = verify_measure_axioms(&m, &samples).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.checks > 16);
    }

    #[test]
    fn axioms_hold_for_lebesgue_samples() {
        let m = Measure::lebesgue();
        let samples = vec![
            MeasurableSet::Real(iset(&["[0,1]"])),
            MeasurableSet::Real(iset(&["(1/2,3)"])),
            MeasurableSet::Real(iset(&["[2,2]", "(4,5]"])),
            MeasurableSet::Real(IntervalSet::empty()),
        ];
        let report = verify_measure_axioms(&m, &samples).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn corrupted_table_is_reported() {
        let m = Measure::finite_table_unchecked(
            FiniteSpace::discrete(2),
            vec![XReal::from_int(-1), XReal::one()],
        );
        let samples: Vec<MeasurableSet> = (0u32..4).map(MeasurableSet::Finite).collect();
        let report = verify_measure_axioms(&m, &samples).unwrap();
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.contains("nonnegativity")));
    }

    #[test]
    fn uniqueness_from_singleton_pi_system() {
        let space = FiniteSpace::discrete(3);
        let g = SubsetFamily::new(
            space.universe().clone(),
            [0b000, 0b001, 0b010, 0b100, 0b111],
        )
        .unwrap();
        let m1 = table(&[(1, 2), (2, 1), (0, 1)]);
        let m2 = table(&[(1, 2), (2, 1), (0, 1)]);
        assert_eq!(verify_uniqueness_pi_system(&space, &g, &m1, &m2), Ok(true));

        let m3 = table(&[(1, 2), (2, 1), (1, 1)]);
        assert!(matches!(
            verify_uniqueness_pi_system(&space, &g, &m1, &m3),
            Err(MeasureError::HypothesisFailed(msg)) if msg.contains("coincide")
        ));

        // Not intersection-closed: {0,1} n {1,2} = {1} missing.
        let bad = SubsetFamily::new(space.universe().clone(), [0b011, 0b110, 0b111]).unwrap();
        assert!(matches!(
            verify_uniqueness_pi_system(&space, &bad, &m1, &m2),
            Err(MeasureError::HypothesisFailed(msg)) if msg.contains("pi-system")
        ));
    }

    #[test]
    fn classification_examples() {
        let d = Measure::dirac_finite(FiniteSpace::discrete(2), 0).unwrap();
        assert_eq!(
            classify(&d),
            Classification {
                finite: true,
                sigma_finite: true,
                diffuse: false
            }
        );
        assert_eq!(
            classify(&Measure::lebesgue()),
            Classification {
                finite: false,
                sigma_finite: true,
                diffuse: true
            }
        );
        let zero = Measure::trivial(FiniteSpace::discrete(3));
        let c = classify(&zero);
        assert!(c.finite && c.diffuse);
        let l2 = tensor_measure(&Measure::lebesgue(), &Measure::lebesgue()).unwrap();
        let c2 = classify(&l2);
        assert!(!c2.finite && c2.sigma_finite && c2.diffuse);
        let restricted = Measure::restricted(
            Measure::lebesgue(),
            MeasurableSet::Real(iset(&["[0,1]"])),
        )
        .unwrap();
        assert!(classify(&restricted).finite);
    }

    #[test]
    fn negligible_iff_contained_in_null_member() {
        // Weight zero on element 1 only.
        let m = table(&[(1, 1), (0, 1), (2, 1)]);
        assert_eq!(is_negligible(0b010, &m), Ok(true));
        assert_eq!(is_negligible(0b001, &m), Ok(false));
        assert_eq!(is_negligible(0b000, &m), Ok(true));
        // Closed under subsets and finite unions on this instance.
        let nulls: Vec<Mask> = (0u32..8)
            .filter(|&a| is_negligible(a, &m).unwrap())
            .collect();
        for &a in &nulls {
            for &b in &nulls {
                assert!(is_negligible(a | b, &m).unwrap());
            }
            for sub in 0u32..8 {
                if sub & !a == 0 {
                    assert!(is_negligible(sub, &m).unwrap());
                }
            }
        }
    }

    #[test]
    fn continuity_from_above_on_stabilizing_chain() {
        let m = table(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        // Nonincreasing chain stabilizes at its intersection.
        let chain = [0b1111u32, 0b0111, 0b0011, 0b0011, 0b0011];
        let intersection = chain.iter().fold(u32::MAX, |a, b| a & b);
        let stabilized = m.eval(&MeasurableSet::Finite(*chain.last().unwrap())).unwrap();
        assert_eq!(
            m.eval(&MeasurableSet::Finite(intersection)).unwrap(),
            stabilized
        );
    }
}
