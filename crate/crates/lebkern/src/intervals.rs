//! Exact algebra of finite unions of rational-endpoint intervals of the
//! extended line, their lengths and Lebesgue measure, cover sums for the
//! outer-measure scheme, and finite-subcover extraction from open covers.
//!
//! Point sets are subsets of the (finite) reals: infinite bounds are always
//! open, so `-inf` and `inf` are never members. Open/closed endpoint flags
//! are kept exactly because complements and differences need them; the
//! measure itself is endpoint-insensitive, which becomes a test rather than
//! a shortcut.

use crate::xreal::{format_rat, Rat, XReal};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// One endpoint of an interval: a value and an inclusion flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: XReal,
    pub closed: bool,
}

impl Bound {
    pub fn closed(value: Rat) -> Self {
        Bound {
            value: XReal::Finite(value),
            closed: true,
        }
    }

    pub fn open(value: Rat) -> Self {
        Bound {
            value: XReal::Finite(value),
            closed: false,
        }
    }

    pub fn neg_inf() -> Self {
        Bound {
            value: XReal::NegInf,
            closed: false,
        }
    }

    pub fn pos_inf() -> Self {
        Bound {
            value: XReal::PosInf,
            closed: false,
        }
    }
}

/// Errors from interval construction and cover arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("malformed bounds: {0}")]
    MalformedBound(String),
    #[error("cover interval must be bounded and open: {0}")]
    CoverNotBoundedOpen(String),
    #[error("not a cover: point {witness} is uncovered")]
    NotACover { witness: String },
}

/// A nonempty interval: `lo.value < hi.value`, or a finite singleton with
/// both bounds closed. Infinite bounds are never closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

impl Interval {
    /// Validates bounds; `Ok(None)` when the interval is empty (and may be
    /// dropped), `Err` when the bounds are malformed.
    pub fn try_new(lo: Bound, hi: Bound) -> Result<Option<Interval>, IntervalError> {
        for b in [&lo, &hi] {
            if !b.value.is_finite() && b.closed {
                return Err(IntervalError::MalformedBound(format!(
                    "infinite bound {} cannot be closed",
                    b.value
                )));
            }
        }
        if lo.value == XReal::PosInf || hi.value == XReal::NegInf {
            return Err(IntervalError::MalformedBound(
                "lo must not be +inf and hi must not be -inf".into(),
            ));
        }
        match lo.value.cmp(&hi.value) {
            std::cmp::Ordering::Greater => Err(IntervalError::MalformedBound(format!(
                "lo {} exceeds hi {}",
                lo.value, hi.value
            ))),
            std::cmp::Ordering::Equal => {
                if lo.closed && hi.closed {
                    Ok(Some(Interval { lo, hi }))
                } else {
                    // (a, a), (a, a], [a, a): empty per the open-interval rule.
                    Ok(None)
                }
            }
            std::cmp::Ordering::Less => Ok(Some(Interval { lo, hi })),
        }
    }

    /// A nonempty interval or an error; use [`Interval::try_new`] when empty
    /// inputs should be dropped instead.
    pub fn new(lo: Bound, hi: Bound) -> Result<Interval, IntervalError> {
        Interval::try_new(lo, hi)?.ok_or_else(|| {
            IntervalError::MalformedBound("interval is empty".into())
        })
    }

    pub fn closed_from_ints(a: i64, b: i64) -> Interval {
        use crate::xreal::rat_int;
        Interval::new(Bound::closed(rat_int(a)), Bound::closed(rat_int(b))).unwrap()
    }

    /// Bounded open interval `(a, b)`; requires `a < b`.
    pub fn open(a: Rat, b: Rat) -> Result<Interval, IntervalError> {
        Interval::new(Bound::open(a), Bound::open(b))
    }

    /// Singleton `[a, a]`.
    pub fn singleton(a: Rat) -> Interval {
        Interval {
            lo: Bound::closed(a.clone()),
            hi: Bound::closed(a),
        }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_singleton(&self) -> bool {
        self.lo.value == self.hi.value
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.value.is_finite() && self.hi.value.is_finite()
    }

    pub fn is_open(&self) -> bool {
        !self.lo.closed && !self.hi.closed
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let xv = XReal::Finite(x.clone());
        let above_lo = match self.lo.value.cmp(&xv) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => self.lo.closed,
            std::cmp::Ordering::Greater => false,
        };
        let below_hi = match xv.cmp(&self.hi.value) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => self.hi.closed,
            std::cmp::Ordering::Greater => false,
        };
        above_lo && below_hi
    }

    /// `hi - lo`, infinite for rays; independent of the closed flags.
    pub fn length(&self) -> XReal {
        self.hi
            .value
            .sub_checked(&self.lo.value)
            .expect("hi >= lo excludes the undefined form")
    }

    fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = match self.lo.value.cmp(&other.lo.value) {
            std::cmp::Ordering::Less => other.lo.clone(),
            std::cmp::Ordering::Greater => self.lo.clone(),
            std::cmp::Ordering::Equal => Bound {
                value: self.lo.value.clone(),
                closed: self.lo.closed && other.lo.closed,
            },
        };
        let hi = match self.hi.value.cmp(&other.hi.value) {
            std::cmp::Ordering::Less => self.hi.clone(),
            std::cmp::Ordering::Greater => other.hi.clone(),
            std::cmp::Ordering::Equal => Bound {
                value: self.hi.value.clone(),
                closed: self.hi.closed && other.hi.closed,
            },
        };
        if lo.value > hi.value {
            return None;
        }
        Interval::try_new(lo, hi).ok().flatten()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo.closed { '[' } else { '(' },
            self.lo.value,
            self.hi.value,
            if self.hi.closed { ']' } else { ')' },
        )
    }
}

/// Parses `(a,b)`, `[a,b]`, `[a,b)`, `(a,b]` with `inf`/`-inf` allowed only
/// on an open side.
impl FromStr for Interval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || IntervalError::MalformedBound(format!("cannot parse interval {s:?}"));
        let mut chars = s.chars();
        let first = chars.next().ok_or_else(err)?;
        let last = s.chars().last().ok_or_else(err)?;
        let lo_closed = match first {
            '[' => true,
            '(' => false,
            _ => return Err(err()),
        };
        let hi_closed = match last {
            ']' => true,
            ')' => false,
            _ => return Err(err()),
        };
        let inner = &s[1..s.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let lo_value: XReal = a.parse().map_err(|_| err())?;
        let hi_value: XReal = b.parse().map_err(|_| err())?;
        Interval::new(
            Bound {
                value: lo_value,
                closed: lo_closed,
            },
            Bound {
                value: hi_value,
                closed: hi_closed,
            },
        )
    }
}

/// Canonical finite disjoint union of intervals: components pairwise
/// disjoint, non-mergeable, sorted by lower bound. The empty set is the
/// empty list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSet {
    components: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { components: vec![] }
    }

    /// The whole line `(-inf, inf)`.
    pub fn full_line() -> Self {
        IntervalSet {
            components: vec![Interval {
                lo: Bound::neg_inf(),
                hi: Bound::pos_inf(),
            }],
        }
    }

    pub fn from_interval(i: Interval) -> Self {
        IntervalSet {
            components: vec![i],
        }
    }

    /// Normal form of a raw interval list: same point set, canonical
    /// invariants, idempotent. Empty raw intervals must already have been
    /// dropped by [`Interval::try_new`].
    pub fn canonicalize(raw: Vec<Interval>) -> IntervalSet {
        let mut comps = raw;
        comps.sort_by(|p, q| {
            p.lo.value
                .cmp(&q.lo.value)
                // A closed lower bound starts before an open one at the same value.
                .then_with(|| q.lo.closed.cmp(&p.lo.closed))
        });
        let mut out: Vec<Interval> = Vec::with_capacity(comps.len());
        for c in comps {
            if let Some(last) = out.last_mut() {
                let overlaps = match last.hi.value.cmp(&c.lo.value) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Equal => last.hi.closed || c.lo.closed,
                    std::cmp::Ordering::Less => false,
                };
                if overlaps {
                    let keep_last = match last.hi.value.cmp(&c.hi.value) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Equal => last.hi.closed || !c.hi.closed,
                        std::cmp::Ordering::Less => false,
                    };
                    if !keep_last {
                        last.hi = c.hi;
                    }
                    continue;
                }
            }
            out.push(c);
        }
        IntervalSet { components: out }
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = self.components.clone();
        raw.extend(other.components.iter().cloned());
        IntervalSet::canonicalize(raw)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::new();
        for p in &self.components {
            for q in &other.components {
                if let Some(r) = p.intersect(q) {
                    raw.push(r);
                }
            }
        }
        IntervalSet::canonicalize(raw)
    }

    /// Complement within the line.
    pub fn complement(&self) -> IntervalSet {
        let mut raw = Vec::new();
        let mut lo = Bound::neg_inf();
        for c in &self.components {
            let hi = Bound {
                value: c.lo.value.clone(),
                closed: c.lo.value.is_finite() && !c.lo.closed,
            };
            if let Ok(Some(gap)) = Interval::try_new(lo, hi) {
                raw.push(gap);
            }
            lo = Bound {
                value: c.hi.value.clone(),
                closed: c.hi.value.is_finite() && !c.hi.closed,
            };
        }
        if let Ok(Some(tail)) = Interval::try_new(lo, Bound::pos_inf()) {
            raw.push(tail);
        }
        IntervalSet::canonicalize(raw)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Total length: sum of component lengths, `inf` when a component is
    /// unbounded. Open/closed flags do not contribute.
    pub fn length(&self) -> XReal {
        let lengths: Vec<XReal> = self.components.iter().map(|c| c.length()).collect();
        XReal::sum_nonneg(&lengths).expect("component lengths are nonnegative")
    }

    /// Lebesgue measure of the set; on this representable fragment it equals
    /// the total length.
    pub fn lebesgue(&self) -> XReal {
        self.length()
    }

    /// A member point, when the set is nonempty.
    pub fn representative(&self) -> Option<Rat> {
        let c = self.components.first()?;
        if c.lo.closed {
            return c.lo.value.as_rat().cloned();
        }
        if c.hi.closed {
            return c.hi.value.as_rat().cloned();
        }
        Some(match (c.lo.value.as_rat(), c.hi.value.as_rat()) {
            (Some(a), Some(b)) => (a + b) / Rat::from_integer(2.into()),
            (Some(a), None) => a + Rat::one(),
            (None, Some(b)) => b - Rat::one(),
            (None, None) => Rat::zero(),
        })
    }

    /// Interval strings, `["[0,1)", "(2,inf)"]` style; the JSON interface.
    pub fn to_strings(&self) -> Vec<String> {
        self.components.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(strings: &[S]) -> Result<IntervalSet, IntervalError> {
        let mut raw = Vec::with_capacity(strings.len());
        for s in strings {
            raw.push(s.as_ref().parse::<Interval>()?);
        }
        Ok(IntervalSet::canonicalize(raw))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// Verifies that `cover` (bounded open intervals) covers `a`, then returns
/// the exact sum of the cover lengths. By the infimum definition of the
/// outer measure this sum is an upper bound on the Lebesgue measure of `a`.
pub fn cover_upper_bound(a: &IntervalSet, cover: &[Interval]) -> Result<XReal, IntervalError> {
    for c in cover {
        if !c.is_bounded() || !c.is_open() {
            return Err(IntervalError::CoverNotBoundedOpen(c.to_string()));
        }
    }
    let covered = IntervalSet::canonicalize(cover.to_vec());
    let uncovered = a.difference(&covered);
    if let Some(w) = uncovered.representative() {
        return Err(IntervalError::NotACover {
            witness: format_rat(&w),
        });
    }
    let lengths: Vec<XReal> = cover.iter().map(|c| c.length()).collect();
    Ok(XReal::sum_nonneg(&lengths).expect("bounded lengths are nonnegative"))
}

/// Extracts a finite chain of cover indices for the compact interval
/// `[a, b]` out of a list of bounded open intervals `(a_i, b_i)`.
///
/// The chain `i_0..i_q` satisfies `a_{i_0} < a`, `b < b_{i_q}`, and
/// `a_{i_{p+1}} < b_{i_p}`, and covers `[a, b]`. When several indices
/// qualify at a step, the smallest is taken; the chain conditions hold
/// for any choice.
pub fn extract_finite_subcover(
    a: &Rat,
    b: &Rat,
    cover: &[(Rat, Rat)],
) -> Result<Vec<usize>, IntervalError> {
    if a > b {
        return Err(IntervalError::MalformedBound(format!(
            "a = {} exceeds b = {}",
            format_rat(a),
            format_rat(b)
        )));
    }
    // Containment check up front; the selection loop below would otherwise
    // report the same failure at the first uncovered point it reaches.
    let target = IntervalSet::from_interval(Interval::new(
        Bound::closed(a.clone()),
        Bound::closed(b.clone()),
    )?);
    let mut raw = Vec::new();
    for (lo, hi) in cover {
        if let Some(i) = Interval::try_new(Bound::open(lo.clone()), Bound::open(hi.clone()))? {
            raw.push(i);
        }
    }
    let covered = IntervalSet::canonicalize(raw);
    if let Some(w) = target.difference(&covered).representative() {
        return Err(IntervalError::NotACover {
            witness: format_rat(&w),
        });
    }

    let mut remaining: Vec<bool> = vec![true; cover.len()];
    let mut chain = Vec::new();
    let mut x = a.clone();
    loop {
        let next = cover
            .iter()
            .enumerate()
            .find(|(i, (lo, hi))| remaining[*i] && *lo < x && x < *hi);
        let (i, (_, hi)) = match next {
            Some(found) => found,
            None => {
                return Err(IntervalError::NotACover {
                    witness: format_rat(&x),
                })
            }
        };
        remaining[i] = false;
        chain.push(i);
        if *b < *hi {
            return Ok(chain);
        }
        x = hi.clone();
    }
}
