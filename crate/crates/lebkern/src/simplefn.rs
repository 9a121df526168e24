//! Simple functions: finite linear combinations of measurable indicator
//! functions, with three representations (free, disjoint, canonical), exact
//! pointwise algebra, and the nonnegative integral.
//!
//! A step function on the line is exactly a simple function whose supports
//! are interval sets, so the same type serves both finite spaces and the
//! real line.

use crate::measures::{Measure, MeasurableSet, MeasurableSpace, MeasureError, Point};
use crate::xreal::{format_rat, Rat, XReal};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which invariants the term list is known to satisfy.
///
/// * `Simple`: measurable supports, nothing else.
/// * `Disjoint`: supports pairwise disjoint, their union is the whole
///   space, and each support is contained in the preimage of its
///   coefficient.
/// * `Canonical`: additionally the coefficients are strictly increasing and
///   the supports are exactly the nonempty preimages. The canonical form of
///   the zero function is the single term `0 * 1_X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repr {
    Simple,
    Disjoint,
    Canonical,
}

/// One `coef * 1_support` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Rat,
    pub support: MeasurableSet,
}

/// Pointwise binary operations on simple functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Mul,
}

/// A simple function over a finite space or the real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFn {
    space: MeasurableSpace,
    terms: Vec<Term>,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SimpleFnError {
    #[error("functions live on different spaces")]
    SpaceMismatch,
    #[error("simple functions are not supported on this space kind")]
    UnsupportedSpace,
    #[error("support is not measurable in the function's space: {0}")]
    SupportNotMeasurable(String),
    #[error("function attains the negative value {0}")]
    NegativeValue(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl SimpleFn {
    /// A simple representation from raw terms; supports must be measurable
    /// in the space and of the matching kind.
    pub fn new(space: MeasurableSpace, terms: Vec<Term>) -> Result<Self, SimpleFnError> {
        if matches!(space, MeasurableSpace::Plane) {
            return Err(SimpleFnError::UnsupportedSpace);
        }
        for t in &terms {
            match (&space, &t.support) {
                (MeasurableSpace::Finite(fs), MeasurableSet::Finite(m)) => {
                    if !fs.sigma().contains(*m) {
                        return Err(SimpleFnError::SupportNotMeasurable(format!("{m:#b}")));
                    }
                }
                (MeasurableSpace::RealLine, MeasurableSet::Real(_)) => {}
                _ => return Err(SimpleFnError::SupportNotMeasurable(t.support.to_string())),
            }
        }
        Ok(SimpleFn {
            space,
            terms,
            repr: Repr::Simple,
        })
    }

    /// The zero function.
    pub fn zero(space: MeasurableSpace) -> Self {
        let full = MeasurableSet::full_for(&space);
        SimpleFn {
            space,
            terms: vec![Term {
                coef: Rat::zero(),
                support: full,
            }],
            repr: Repr::Canonical,
        }
    }

    /// The indicator `1_A`.
    pub fn indicator(space: MeasurableSpace, a: MeasurableSet) -> Result<Self, SimpleFnError> {
        SimpleFn::new(
            space,
            vec![Term {
                coef: Rat::from_integer(1.into()),
                support: a,
            }],
        )
    }

    /// Constant function `c` on the whole space.
    pub fn constant(space: MeasurableSpace, c: Rat) -> Self {
        let full = MeasurableSet::full_for(&space);
        SimpleFn {
            space,
            terms: vec![Term {
                coef: c,
                support: full,
            }],
            repr: Repr::Simple,
        }
    }

    pub fn space(&self) -> &MeasurableSpace {
        &self.space
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    /// Pointwise evaluation: the sum of coefficients of the supports
    /// containing the point. Representation-independent.
    pub fn eval(&self, x: &Point) -> Rat {
        let mut acc = Rat::zero();
        for t in &self.terms {
            if t.support.contains_point(x) {
                acc += &t.coef;
            }
        }
        acc
    }

    /// The unique canonical representation: strictly increasing values on
    /// the nonempty preimage partition. Evaluation is unchanged at every
    /// point.
    pub fn canonicalize(&self) -> SimpleFn {
        if self.repr == Repr::Canonical {
            return self.clone();
        }
        let cells = self.value_cells();
        let mut by_value: BTreeMap<Rat, MeasurableSet> = BTreeMap::new();
        for (value, cell) in cells {
            match by_value.entry(value) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(cell);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = e.get().union(&cell).expect("same kind");
                    *e.get_mut() = merged;
                }
            }
        }
        let terms = by_value
            .into_iter()
            .map(|(coef, support)| Term { coef, support })
            .collect();
        SimpleFn {
            space: self.space.clone(),
            terms,
            repr: Repr::Canonical,
        }
    }

    /// Splits the space into cells of constant value and returns the value
    /// of each nonempty cell. Cells partition the space.
    fn value_cells(&self) -> Vec<(Rat, MeasurableSet)> {
        match &self.space {
            MeasurableSpace::Finite(fs) => {
                // Group points by value; supports are measurable, so the
                // preimages are unions of sigma-algebra atoms.
                let mut by_value: BTreeMap<Rat, u32> = BTreeMap::new();
                for x in 0..fs.size() {
                    let v = self.eval(&Point::Elem(x));
                    *by_value.entry(v).or_insert(0) |= 1 << x;
                }
                by_value
                    .into_iter()
                    .map(|(v, m)| (v, MeasurableSet::Finite(m)))
                    .collect()
            }
            MeasurableSpace::RealLine => {
                let mut cells = vec![MeasurableSet::full_for(&self.space)];
                for t in &self.terms {
                    let mut next = Vec::with_capacity(cells.len() * 2);
                    for c in cells {
                        let inside = c.intersect(&t.support).expect("same kind");
                        if !inside.is_empty() {
                            next.push(inside);
                        }
                        let outside = c.difference(&t.support).expect("same kind");
                        if !outside.is_empty() {
                            next.push(outside);
                        }
                    }
                    cells = next;
                }
                cells
                    .into_iter()
                    .map(|c| {
                        let MeasurableSet::Real(ref s) = c else {
                            unreachable!("real-line cells")
                        };
                        let probe = s.representative().expect("nonempty cell");
                        (self.eval(&Point::Real(probe)), c)
                    })
                    .collect()
            }
            MeasurableSpace::Plane => unreachable!("rejected at construction"),
        }
    }

    /// Whether every attained value is nonnegative (the `SF_+` membership
    /// flag); decided on the canonical representation.
    pub fn is_nonneg(&self) -> bool {
        self.canonicalize()
            .terms
            .iter()
            .all(|t| !t.coef.is_negative())
    }

    /// Largest attained value.
    pub fn max_value(&self) -> Rat {
        self.canonicalize()
            .terms
            .last()
            .map(|t| t.coef.clone())
            .expect("canonical form is never empty")
    }

    /// Smallest attained value.
    pub fn min_value(&self) -> Rat {
        self.canonicalize()
            .terms
            .first()
            .map(|t| t.coef.clone())
            .expect("canonical form is never empty")
    }

    /// Pointwise `f + g` or `f * g` through the pairwise-intersection
    /// formula on disjoint representations; the result is a disjoint
    /// representation with empty intersections pruned.
    pub fn combine(op: BinOp, f: &SimpleFn, g: &SimpleFn) -> Result<SimpleFn, SimpleFnError> {
        if f.space != g.space {
            return Err(SimpleFnError::SpaceMismatch);
        }
        let cf = f.canonicalize();
        let cg = g.canonicalize();
        let mut terms = Vec::new();
        for tf in &cf.terms {
            for tg in &cg.terms {
                let support = tf.support.intersect(&tg.support).expect("same kind");
                if support.is_empty() {
                    continue;
                }
                let coef = match op {
                    BinOp::Add => &tf.coef + &tg.coef,
                    BinOp::Mul => &tf.coef * &tg.coef,
                };
                terms.push(Term { coef, support });
            }
        }
        if terms.is_empty() {
            return Ok(SimpleFn::zero(f.space.clone()));
        }
        Ok(SimpleFn {
            space: f.space.clone(),
            terms,
            repr: Repr::Disjoint,
        })
    }

    /// Pointwise scalar multiple `a * f`, as a disjoint representation.
    pub fn scale(&self, a: &Rat) -> SimpleFn {
        let c = self.canonicalize();
        SimpleFn {
            space: c.space,
            terms: c
                .terms
                .into_iter()
                .map(|t| Term {
                    coef: a * &t.coef,
                    support: t.support,
                })
                .collect(),
            repr: Repr::Disjoint,
        }
    }

    /// Splits into nonnegative and nonpositive parts `(f^+, f^-)` with
    /// `f = f^+ - f^-` and `|f| = f^+ + f^-`.
    pub fn split_parts(&self) -> (SimpleFn, SimpleFn) {
        let c = self.canonicalize();
        let clip = |keep_positive: bool| -> SimpleFn {
            let terms: Vec<Term> = c
                .terms
                .iter()
                .map(|t| {
                    let coef = if keep_positive {
                        if t.coef.is_positive() {
                            t.coef.clone()
                        } else {
                            Rat::zero()
                        }
                    } else if t.coef.is_negative() {
                        -t.coef.clone()
                    } else {
                        Rat::zero()
                    };
                    Term {
                        coef,
                        support: t.support.clone(),
                    }
                })
                .collect();
            SimpleFn {
                space: c.space.clone(),
                terms,
                repr: Repr::Disjoint,
            }
        };
        (clip(true), clip(false))
    }
}

impl fmt::Display for SimpleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*1[{}]", format_rat(&t.coef), t.support))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The nonnegative simple-function integral: the canonical-representation
/// sum of value times preimage measure. Equal to the disjoint- and
/// simple-representation sums, which the tests assert.
pub fn integral_sf_plus(f: &SimpleFn, mu: &Measure) -> Result<XReal, SimpleFnError> {
    let c = f.canonicalize();
    if let Some(t) = c.terms.iter().find(|t| t.coef.is_negative()) {
        return Err(SimpleFnError::NegativeValue(format_rat(&t.coef)));
    }
    let mut terms = Vec::with_capacity(c.terms.len());
    for t in &c.terms {
        let m = mu.eval(&t.support)?;
        terms.push(XReal::Finite(t.coef.clone()).mul_mt(&m));
    }
    Ok(XReal::sum_nonneg(&terms).expect("nonneg values times measures"))
}

/// Integral of a term list taken literally (`sum of a_i mu(A_i)`), without
/// canonicalizing first; the representation-invariance checks compare this
/// against [`integral_sf_plus`].
pub fn integral_term_sum(f: &SimpleFn, mu: &Measure) -> Result<XReal, SimpleFnError> {
    let mut terms = Vec::with_capacity(f.terms.len());
    for t in &f.terms {
        if t.coef.is_negative() {
            return Err(SimpleFnError::NegativeValue(format_rat(&t.coef)));
        }
        let m = mu.eval(&t.support)?;
        terms.push(XReal::Finite(t.coef.clone()).mul_mt(&m));
    }
    Ok(XReal::sum_nonneg(&terms).expect("nonneg values times measures"))
}

/// Integral over a measurable subset: the integral of `f * 1_A`.
pub fn integral_over_subset(
    f: &SimpleFn,
    mu: &Measure,
    a: &MeasurableSet,
) -> Result<XReal, SimpleFnError> {
    mu.check_measurable(a)?;
    let ind = SimpleFn::indicator(f.space.clone(), a.clone())?;
    let masked = SimpleFn::combine(BinOp::Mul, f, &ind)?;
    integral_sf_plus(&masked, mu)
}

/// Closed form for the counting measure: the sum of the values on `Y`.
pub fn integral_counting(f: &SimpleFn, ys: &[Point]) -> Result<XReal, SimpleFnError> {
    if !f.is_nonneg() {
        return Err(SimpleFnError::NegativeValue(format_rat(&f.min_value())));
    }
    let mut acc = Rat::zero();
    for y in ys {
        acc += f.eval(y);
    }
    Ok(XReal::Finite(acc))
}

/// Closed form for the Dirac measure: the value at the point.
pub fn integral_dirac(f: &SimpleFn, a: &Point) -> Result<Rat, SimpleFnError> {
    if !f.is_nonneg() {
        return Err(SimpleFnError::NegativeValue(format_rat(&f.min_value())));
    }
    Ok(f.eval(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::IntervalSet;
    use crate::measures::FiniteSpace;
    use crate::xreal::{rat, rat_int};

    fn discrete(n: usize) -> MeasurableSpace {
        MeasurableSpace::Finite(FiniteSpace::discrete(n))
    }

    fn fin(m: u32) -> MeasurableSet {
        MeasurableSet::Finite(m)
    }

    fn sf(space: &MeasurableSpace, terms: &[(Rat, MeasurableSet)]) -> SimpleFn {
        SimpleFn::new(
            space.clone(),
            terms
                .iter()
                .map(|(c, s)| Term {
                    coef: c.clone(),
                    support: s.clone(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn iset(strings: &[&str]) -> MeasurableSet {
        MeasurableSet::Real(IntervalSet::from_strings(strings).unwrap())
    }

    #[test]
    fn eval_sums_indicators() {
        let space = discrete(3);
        // f = 2*1_{0,1} + 3*1_{1,2}
        let f = sf(&space, &[(rat_int(2), fin(0b011)), (rat_int(3), fin(0b110))]);
        assert_eq!(f.eval(&Point::Elem(1)), rat_int(5));
        assert_eq!(f.eval(&Point::Elem(0)), rat_int(2));
        let g = sf(&space, &[(rat_int(2), fin(0b001))]);
        assert_eq!(g.eval(&Point::Elem(2)), rat_int(0));
        assert_eq!(SimpleFn::zero(space).eval(&Point::Elem(1)), rat_int(0));
    }

    #[test]
    fn canonical_collects_values() {
        let space = discrete(4);
        // 1_{0} + 1_{1}: value 1 on {0,1}, 0 elsewhere.
        let f = sf(&space, &[(rat_int(1), fin(0b0001)), (rat_int(1), fin(0b0010))]);
        let c = f.canonicalize();
        assert_eq!(c.repr(), Repr::Canonical);
        assert_eq!(c.terms().len(), 2);
        assert_eq!(c.terms()[0].coef, rat_int(0));
        assert_eq!(c.terms()[0].support, fin(0b1100));
        assert_eq!(c.terms()[1].coef, rat_int(1));
        assert_eq!(c.terms()[1].support, fin(0b0011));
        for x in 0..4 {
            assert_eq!(f.eval(&Point::Elem(x)), c.eval(&Point::Elem(x)));
        }
    }

    #[test]
    fn canonical_merges_repeated_support() {
        let space = discrete(3);
        let f = sf(&space, &[(rat_int(2), fin(0b001)), (rat_int(3), fin(0b001))]);
        let c = f.canonicalize();
        assert_eq!(c.terms().len(), 2);
        assert_eq!(c.terms()[1].coef, rat_int(5));
        assert_eq!(c.terms()[1].support, fin(0b001));
    }

    #[test]
    fn canonical_zero_is_zero_on_full() {
        let space = discrete(2);
        let f = sf(&space, &[(rat_int(0), fin(0b01))]);
        let c = f.canonicalize();
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.terms()[0].coef, rat_int(0));
        assert_eq!(c.terms()[0].support, fin(0b11));
    }

    #[test]
    fn canonical_on_real_line_step() {
        let space = MeasurableSpace::RealLine;
        let f = sf(
            &space,
            &[(rat_int(2), iset(&["[0,2)"])), (rat_int(1), iset(&["[1,3)"]))],
        );
        let c = f.canonicalize();
        // Values: 0 outside, 2 on [0,1), 3 on [1,2), 1 on [2,3).
        let coefs: Vec<Rat> = c.terms().iter().map(|t| t.coef.clone()).collect();
        assert_eq!(coefs, vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3)]);
        for (x, expect) in [
            (rat(-1, 2), rat_int(0)),
            (rat(1, 2), rat_int(2)),
            (rat(3, 2), rat_int(3)),
            (rat(5, 2), rat_int(1)),
            (rat(7, 2), rat_int(0)),
        ] {
            assert_eq!(c.eval(&Point::Real(x.clone())), expect, "at {x}");
        }
    }

    #[test]
    fn combine_multiplies_indicators() {
        let space = discrete(3);
        let f = SimpleFn::indicator(space.clone(), fin(0b011)).unwrap();
        let g = SimpleFn::indicator(space.clone(), fin(0b110)).unwrap();
        let fg = SimpleFn::combine(BinOp::Mul, &f, &g).unwrap();
        let expected = SimpleFn::indicator(space, fin(0b010)).unwrap();
        assert_eq!(fg.canonicalize(), expected.canonicalize());
    }

    #[test]
    fn combine_add_is_pointwise() {
        let space = discrete(3);
        let f = sf(&space, &[(rat(1, 2), fin(0b011))]);
        let g = sf(&space, &[(rat(1, 3), fin(0b110))]);
        let sum = SimpleFn::combine(BinOp::Add, &f, &g).unwrap();
        assert_eq!(sum.repr(), Repr::Disjoint);
        for x in 0..3 {
            let p = Point::Elem(x);
            assert_eq!(sum.eval(&p), f.eval(&p) + g.eval(&p));
        }
    }

    #[test]
    fn scale_by_zero_is_zero() {
        let space = discrete(2);
        let f = sf(&space, &[(rat_int(7), fin(0b01))]);
        let z = f.scale(&rat_int(0));
        assert_eq!(z.canonicalize(), SimpleFn::zero(space));
    }

    #[test]
    fn space_mismatch_is_rejected() {
        let f = SimpleFn::zero(discrete(2));
        let g = SimpleFn::zero(discrete(3));
        assert!(matches!(
            SimpleFn::combine(BinOp::Add, &f, &g),
            Err(SimpleFnError::SpaceMismatch)
        ));
    }

    #[test]
    fn integral_of_indicator_is_measure() {
        let space = FiniteSpace::discrete(3);
        let mu = Measure::finite_table(
            space.clone(),
            vec![
                XReal::Finite(rat(1, 2)),
                XReal::Finite(rat_int(2)),
                XReal::Finite(rat_int(4)),
            ],
        )
        .unwrap();
        let f = SimpleFn::indicator(discrete(3), fin(0b101)).unwrap();
        assert_eq!(
            integral_sf_plus(&f, &mu),
            Ok(XReal::Finite(rat(9, 2)))
        );
        let z = SimpleFn::zero(discrete(3));
        assert_eq!(integral_sf_plus(&z, &mu), Ok(XReal::zero()));
    }

    #[test]
    fn integral_is_representation_invariant() {
        let space = discrete(4);
        let mu = Measure::finite_table(
            FiniteSpace::discrete(4),
            vec![
                XReal::Finite(rat(1, 3)),
                XReal::Finite(rat_int(1)),
                XReal::Finite(rat(5, 2)),
                XReal::zero(),
            ],
        )
        .unwrap();
        // An overlapping simple representation.
        let f = sf(
            &space,
            &[
                (rat(1, 2), fin(0b0111)),
                (rat(3, 2), fin(0b1100)),
                (rat_int(1), fin(0b0001)),
            ],
        );
        let simple_sum = integral_term_sum(&f, &mu).unwrap();
        let canonical_sum = integral_sf_plus(&f, &mu).unwrap();
        assert_eq!(simple_sum, canonical_sum);
    }

    #[test]
    fn integral_rejects_negative_values() {
        let mu = Measure::finite_table(
            FiniteSpace::discrete(2),
            vec![XReal::one(), XReal::one()],
        )
        .unwrap();
        let f = sf(&discrete(2), &[(rat_int(-1), fin(0b01))]);
        assert!(matches!(
            integral_sf_plus(&f, &mu),
            Err(SimpleFnError::NegativeValue(_))
        ));
    }

    #[test]
    fn integral_over_subset_masks() {
        let mu = Measure::lebesgue();
        let space = MeasurableSpace::RealLine;
        let f = SimpleFn::indicator(space, iset(&["[0,4]"])).unwrap();
        let a = iset(&["[2,10]"]);
        // mu(A n B) = lambda([2,4]) = 2.
        assert_eq!(integral_over_subset(&f, &mu, &a), Ok(XReal::from_int(2)));
        let empty = MeasurableSet::Real(IntervalSet::empty());
        assert_eq!(integral_over_subset(&f, &mu, &empty), Ok(XReal::zero()));
    }

    #[test]
    fn integral_over_subset_is_additive_on_partitions() {
        let mu = Measure::lebesgue();
        let space = MeasurableSpace::RealLine;
        let f = sf(
            &space,
            &[(rat(3, 2), iset(&["[0,2]"])), (rat(1, 2), iset(&["(1,5]"]))],
        );
        let a = iset(&["[0,4]"]);
        let a1 = iset(&["[0,1]"]);
        let a2 = iset(&["(1,4]"]);
        let whole = integral_over_subset(&f, &mu, &a).unwrap();
        let part1 = integral_over_subset(&f, &mu, &a1).unwrap();
        let part2 = integral_over_subset(&f, &mu, &a2).unwrap();
        assert_eq!(whole, part1.add_checked(&part2).unwrap());
    }

    #[test]
    fn counting_and_dirac_closed_forms() {
        let space = discrete(3);
        let f = sf(&space, &[(rat_int(1), fin(0b011)), (rat(1, 2), fin(0b110))]);
        // Values: f(0) = 1, f(1) = 3/2, f(2) = 1/2.
        let ys = vec![Point::Elem(0), Point::Elem(2)];
        assert_eq!(
            integral_counting(&f, &ys),
            Ok(XReal::Finite(rat(3, 2)))
        );
        assert_eq!(integral_dirac(&f, &Point::Elem(1)), Ok(rat(3, 2)));

        // Cross-check against the measure-based integral.
        let fs = FiniteSpace::discrete(3);
        let counting = Measure::counting_finite(fs.clone(), 0b101).unwrap();
        assert_eq!(
            integral_sf_plus(&f, &counting).unwrap(),
            integral_counting(&f, &ys).unwrap()
        );
        let dirac = Measure::dirac_finite(fs, 1).unwrap();
        assert_eq!(
            integral_sf_plus(&f, &dirac).unwrap(),
            XReal::Finite(integral_dirac(&f, &Point::Elem(1)).unwrap())
        );
        let z = SimpleFn::zero(space);
        assert_eq!(integral_counting(&z, &ys), Ok(XReal::zero()));
    }

    #[test]
    fn split_parts_decomposes() {
        let space = discrete(3);
        let f = sf(&space, &[(rat_int(2), fin(0b001)), (rat_int(-3), fin(0b010))]);
        let (plus, minus) = f.split_parts();
        assert!(plus.is_nonneg() && minus.is_nonneg());
        for x in 0..3 {
            let p = Point::Elem(x);
            assert_eq!(f.eval(&p), plus.eval(&p) - minus.eval(&p));
            let abs = if f.eval(&p).is_negative() {
                -f.eval(&p)
            } else {
                f.eval(&p)
            };
            assert_eq!(abs, plus.eval(&p) + minus.eval(&p));
            assert!(plus.eval(&p).is_zero() || minus.eval(&p).is_zero());
        }
    }

    #[test]
    fn nonneg_flag_follows_canonical_coefs() {
        let space = discrete(2);
        // Negative coefficient but empty effective support after overlap.
        let f = sf(
            &space,
            &[(rat_int(2), fin(0b11)), (rat_int(-1), fin(0b01))],
        );
        assert!(f.is_nonneg());
        let g = sf(&space, &[(rat_int(-1), fin(0b01))]);
        assert!(!g.is_nonneg());
    }
}
