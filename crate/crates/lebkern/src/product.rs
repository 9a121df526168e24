//! Product spaces at the representable fragment: sections, the measure of
//! sections as a function of the anchor, and Tonelli's identity between the
//! direct tensor integral and the two iterated integrals.
//!
//! Two concrete carriers are supported: products of finite spaces
//! (flattened to one finite space with the tensor sigma-algebra, points
//! encoded as `x1 * |X2| + x2`), and 2-D step functions on a bounded box
//! grid under Lebesgue measure on the plane.

use crate::intervals::IntervalSet;
use crate::lebint::{LebintError, MeasurableFn};
use crate::measures::{
    tensor_measure, BoxSet, FiniteSpace, Measure, MeasurableSet, MeasurableSpace, MeasureError,
    Point,
};
use crate::setsys::{product_sigma, Mask, SubsetFamily};
use crate::simplefn::{SimpleFn, Term};
use crate::xreal::{Rat, XReal};
use num_traits::{Signed, Zero};

/// Errors from the product layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("anchor lies outside the factor space")]
    AnchorOutOfSpace,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("function attains a negative value")]
    NegativeFunction,
    #[error("grid is malformed: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Lebint(#[from] LebintError),
}

/// A product of two finite measurable spaces, flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteProduct {
    left: FiniteSpace,
    right: FiniteSpace,
    /// The tensor sigma-algebra on the flattened universe.
    sigma: SubsetFamily,
}

impl FiniteProduct {
    pub fn new(left: FiniteSpace, right: FiniteSpace) -> Result<Self, ProductError> {
        let sigma = product_sigma(left.sigma(), right.sigma())
            .map_err(|e| ProductError::UnsupportedShape(e.to_string()))?;
        Ok(FiniteProduct { left, right, sigma })
    }

    pub fn left(&self) -> &FiniteSpace {
        &self.left
    }

    pub fn right(&self) -> &FiniteSpace {
        &self.right
    }

    pub fn sigma(&self) -> &SubsetFamily {
        &self.sigma
    }

    /// The flattened product as a finite measurable space.
    pub fn as_space(&self) -> Result<FiniteSpace, MeasureError> {
        FiniteSpace::new(self.sigma.universe().clone(), self.sigma.clone())
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.left.size(), self.right.size())
    }

    /// Mask of the rectangle `A1 x A2`.
    pub fn rectangle(&self, a1: Mask, a2: Mask) -> Mask {
        crate::setsys::rectangle_mask(a1, a2, self.right.size())
    }

    /// The section of a product subset at a factor point: axis 1 fixes the
    /// left coordinate and returns a right-space mask, axis 2 conversely.
    pub fn section(&self, target: Mask, axis: usize, anchor: usize) -> Result<Mask, ProductError> {
        let (n1, n2) = self.sizes();
        match axis {
            1 => {
                if anchor >= n1 {
                    return Err(ProductError::AnchorOutOfSpace);
                }
                Ok((target >> (anchor * n2)) & ((1u32 << n2) - 1))
            }
            2 => {
                if anchor >= n2 {
                    return Err(ProductError::AnchorOutOfSpace);
                }
                let mut out: Mask = 0;
                for x1 in 0..n1 {
                    if target & (1 << (x1 * n2 + anchor)) != 0 {
                        out |= 1 << x1;
                    }
                }
                Ok(out)
            }
            _ => Err(ProductError::AnchorOutOfSpace),
        }
    }
}

/// A section request: fix one coordinate of a product set.
#[derive(Clone, Debug)]
pub struct SectionQuery {
    pub axis: usize,
    pub anchor: Point,
    pub target: MeasurableSet,
}

/// The exact section of a product measurable set, a measurable set of the
/// other factor.
pub fn section_set(q: &SectionQuery, ctx: &FiniteProduct) -> Result<MeasurableSet, ProductError> {
    match (&q.target, &q.anchor) {
        (MeasurableSet::Finite(m), Point::Elem(x)) => {
            Ok(MeasurableSet::Finite(ctx.section(*m, q.axis, *x)?))
        }
        (MeasurableSet::Boxes(b), Point::Real(x)) => {
            Ok(MeasurableSet::Real(b.section(q.axis, x)))
        }
        _ => Err(ProductError::UnsupportedShape(
            "section anchor kind does not match the target".into(),
        )),
    }
}

/// The measure-of-section function `x_i -> mu_j(s_i(x_i, A))`.
///
/// On finite products it is the tabulated map over the anchor factor; for a
/// box set under Lebesgue measure it is the step function of the anchor
/// with breakpoints at the rectangle side endpoints.
pub fn measure_of_section(
    a: &MeasurableSet,
    axis: usize,
    mu_other: &Measure,
    ctx: Option<&FiniteProduct>,
) -> Result<MeasurableFn, ProductError> {
    match a {
        MeasurableSet::Finite(m) => {
            let ctx = ctx.ok_or_else(|| {
                ProductError::UnsupportedShape("finite sections need the product context".into())
            })?;
            let anchor_space = if axis == 1 { &ctx.left } else { &ctx.right };
            let mut values = Vec::with_capacity(anchor_space.size());
            for x in 0..anchor_space.size() {
                let section = ctx.section(*m, axis, x)?;
                values.push(mu_other.eval(&MeasurableSet::Finite(section))?);
            }
            Ok(MeasurableFn::finite_map(anchor_space.clone(), values)?)
        }
        MeasurableSet::Boxes(b) => {
            // Refine the anchor axis by the rectangle sides; on each cell
            // the section is constant.
            let mut cells = vec![IntervalSet::full_line()];
            for (a1, a2) in b.rects() {
                let side = if axis == 1 { a1 } else { a2 };
                let mut next = Vec::with_capacity(cells.len() * 2);
                for c in cells {
                    let inside = c.intersect(side);
                    if !inside.is_empty() {
                        next.push(inside);
                    }
                    let outside = c.difference(side);
                    if !outside.is_empty() {
                        next.push(outside);
                    }
                }
                cells = next;
            }
            let mut terms = Vec::with_capacity(cells.len());
            for cell in cells {
                let probe = cell.representative().expect("nonempty cell");
                let section = b.section(axis, &probe);
                let value = mu_other.eval(&MeasurableSet::Real(section))?;
                let XReal::Finite(coef) = value else {
                    return Err(ProductError::UnsupportedShape(
                        "section measure is infinite; not a step function".into(),
                    ));
                };
                terms.push(Term {
                    coef,
                    support: MeasurableSet::Real(cell),
                });
            }
            let f = SimpleFn::new(MeasurableSpace::RealLine, terms)
                .map_err(LebintError::from)?;
            Ok(MeasurableFn::step(f)?)
        }
        MeasurableSet::Real(_) => Err(ProductError::UnsupportedShape(
            "sections apply to product sets".into(),
        )),
    }
}

/// A nonnegative step function on a bounded 2-D grid: value `cells[i][j]`
/// on `[xs[i], xs[i+1]) x [ys[j], ys[j+1])`, zero outside the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFn2D {
    xs: Vec<Rat>,
    ys: Vec<Rat>,
    cells: Vec<Vec<Rat>>,
}

impl StepFn2D {
    pub fn new(xs: Vec<Rat>, ys: Vec<Rat>, cells: Vec<Vec<Rat>>) -> Result<Self, ProductError> {
        for axis in [&xs, &ys] {
            if axis.len() < 2 {
                return Err(ProductError::BadGrid("need at least two breakpoints".into()));
            }
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ProductError::BadGrid(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        if cells.len() != xs.len() - 1 || cells.iter().any(|row| row.len() != ys.len() - 1) {
            return Err(ProductError::BadGrid(format!(
                "cells must be {} x {}",
                xs.len() - 1,
                ys.len() - 1
            )));
        }
        Ok(StepFn2D { xs, ys, cells })
    }

    pub fn xs(&self) -> &[Rat] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rat] {
        &self.ys
    }

    pub fn cells(&self) -> &[Vec<Rat>] {
        &self.cells
    }

    pub fn is_nonneg(&self) -> bool {
        self.cells
            .iter()
            .all(|row| row.iter().all(|v| !v.is_negative()))
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let find = |axis: &[Rat], v: &Rat| -> Option<usize> {
            if v < &axis[0] || v >= axis.last().unwrap() {
                return None;
            }
            (0..axis.len() - 1).find(|&i| &axis[i] <= v && v < &axis[i + 1])
        };
        match (find(&self.xs, x), find(&self.ys, y)) {
            (Some(i), Some(j)) => self.cells[i][j].clone(),
            _ => Rat::zero(),
        }
    }

    /// The tensor `f1 (x) f2` of two bounded step functions on the line:
    /// `f(x, y) = f1(x) * f2(y)` as a grid.
    pub fn tensor_of_steps(f1: &SimpleFn, f2: &SimpleFn) -> Result<StepFn2D, ProductError> {
        let axis = |f: &SimpleFn| -> Result<(Vec<Rat>, Vec<Rat>), ProductError> {
            // Breakpoints from the canonical supports; values per cell.
            let mut points: Vec<Rat> = Vec::new();
            for t in f.canonicalize().terms() {
                let MeasurableSet::Real(s) = &t.support else {
                    return Err(ProductError::UnsupportedShape(
                        "tensor factors must be steps on the line".into(),
                    ));
                };
                for c in s.components() {
                    for b in [c.lo(), c.hi()] {
                        match b.value.as_rat() {
                            Some(r) => points.push(r.clone()),
                            None => {
                                if !t.coef.is_zero() {
                                    return Err(ProductError::UnsupportedShape(
                                        "tensor factors must have bounded support".into(),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            points.sort();
            points.dedup();
            if points.len() < 2 {
                // No bounded support with nonzero value: the factor is zero
                // almost everywhere and so is the tensor.
                return Ok((vec![Rat::zero(), crate::xreal::rat_int(1)], vec![Rat::zero()]));
            }
            let mut values = Vec::with_capacity(points.len() - 1);
            for w in points.windows(2) {
                let mid = (&w[0] + &w[1]) / crate::xreal::rat_int(2);
                values.push(f.eval(&Point::Real(mid)));
            }
            Ok((points, values))
        };
        let (xs, vx) = axis(f1)?;
        let (ys, vy) = axis(f2)?;
        let cells = vx
            .iter()
            .map(|a| vy.iter().map(|b| a * b).collect())
            .collect();
        StepFn2D::new(xs, ys, cells)
    }

    fn row_widths(axis: &[Rat]) -> Vec<Rat> {
        axis.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// Exact direct integral against Lebesgue measure on the plane.
    pub fn direct_integral(&self) -> Rat {
        let dx = StepFn2D::row_widths(&self.xs);
        let dy = StepFn2D::row_widths(&self.ys);
        let mut acc = Rat::zero();
        for (i, row) in self.cells.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                acc += v * &dx[i] * &dy[j];
            }
        }
        acc
    }

    /// Exact iterated integral: inner along the other axis, outer along
    /// `axis`.
    pub fn iterated_integral(&self, axis: usize) -> Rat {
        let dx = StepFn2D::row_widths(&self.xs);
        let dy = StepFn2D::row_widths(&self.ys);
        let mut acc = Rat::zero();
        if axis == 1 {
            for (i, row) in self.cells.iter().enumerate() {
                let inner: Rat = row
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * &dy[j])
                    .fold(Rat::zero(), |a, b| a + b);
                acc += inner * &dx[i];
            }
        } else {
            for j in 0..dy.len() {
                let inner: Rat = self
                    .cells
                    .iter()
                    .enumerate()
                    .map(|(i, row)| &row[j] * &dx[i])
                    .fold(Rat::zero(), |a, b| a + b);
                acc += inner * &dy[j];
            }
        }
        acc
    }

    /// Masks the function by a box set: refines the grid by the rectangle
    /// side endpoints and zeroes the cells outside.
    pub fn mask_by(&self, a: &BoxSet) -> Result<StepFn2D, ProductError> {
        let refine = |axis: &[Rat], pick_first: bool| -> Vec<Rat> {
            let mut points = axis.to_vec();
            for (a1, a2) in a.rects() {
                let side = if pick_first { a1 } else { a2 };
                for c in side.components() {
                    for b in [c.lo(), c.hi()] {
                        if let Some(r) = b.value.as_rat() {
                            if r > &points[0] && r < points.last().unwrap() {
                                points.push(r.clone());
                            }
                        }
                    }
                }
            }
            points.sort();
            points.dedup();
            points
        };
        let xs = refine(&self.xs, true);
        let ys = refine(&self.ys, false);
        let two = crate::xreal::rat_int(2);
        let mut cells = Vec::with_capacity(xs.len() - 1);
        for i in 0..xs.len() - 1 {
            let xm = (&xs[i] + &xs[i + 1]) / &two;
            let mut row = Vec::with_capacity(ys.len() - 1);
            for j in 0..ys.len() - 1 {
                let ym = (&ys[j] + &ys[j + 1]) / &two;
                let inside = a
                    .rects()
                    .iter()
                    .any(|(a1, a2)| a1.contains(&xm) && a2.contains(&ym));
                row.push(if inside {
                    self.eval(&xm, &ym)
                } else {
                    Rat::zero()
                });
            }
            cells.push(row);
        }
        StepFn2D::new(xs, ys, cells)
    }
}

/// The integrand of a Tonelli check.
#[derive(Clone, Debug)]
pub enum TonelliFn {
    /// Nonnegative finite map on a flattened finite product.
    Finite(MeasurableFn),
    /// Nonnegative 2-D step function under Lebesgue measure on the plane.
    Step2D(StepFn2D),
}

/// Both sides of Tonelli's identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TonelliValues {
    pub direct: XReal,
    pub iterated: XReal,
}

/// Computes the direct tensor integral and the iterated integral along the
/// given axis. The two are equal; the caller (and the acceptance suite)
/// asserts it.
pub fn tonelli(
    f: &TonelliFn,
    mu1: &Measure,
    mu2: &Measure,
    axis: usize,
) -> Result<TonelliValues, ProductError> {
    match f {
        TonelliFn::Finite(map) => {
            let MeasurableFn::FiniteMap { space, values } = map else {
                return Err(ProductError::UnsupportedShape(
                    "finite Tonelli needs a finite map".into(),
                ));
            };
            if values.iter().any(|v| !v.is_nonneg()) {
                return Err(ProductError::NegativeFunction);
            }
            let (MeasurableSpace::Finite(f1), MeasurableSpace::Finite(f2)) =
                (mu1.space(), mu2.space())
            else {
                return Err(ProductError::UnsupportedShape(
                    "finite Tonelli needs finite factor measures".into(),
                ));
            };
            let (n1, n2) = (f1.size(), f2.size());
            if space.size() != n1 * n2 {
                return Err(ProductError::UnsupportedShape(format!(
                    "map size {} is not {n1} x {n2}",
                    space.size()
                )));
            }
            let tensor = tensor_measure(mu1, mu2)?;
            // Direct: pointwise against the tensor atom weights.
            let mut direct_terms = Vec::with_capacity(values.len());
            for (x, v) in values.iter().enumerate() {
                direct_terms.push(v.mul_mt(&tensor.atom_weight(x)?));
            }
            let direct = XReal::sum_nonneg(&direct_terms).expect("nonneg");
            // Iterated: inner integral along the other factor, then outer.
            let (outer_n, outer_mu, inner_n, inner_mu) = if axis == 1 {
                (n1, mu1, n2, mu2)
            } else {
                (n2, mu2, n1, mu1)
            };
            let mut outer_terms = Vec::with_capacity(outer_n);
            for xi in 0..outer_n {
                let mut inner_terms = Vec::with_capacity(inner_n);
                for xj in 0..inner_n {
                    let flat = if axis == 1 { xi * n2 + xj } else { xj * n2 + xi };
                    inner_terms.push(values[flat].mul_mt(&inner_mu.atom_weight(xj)?));
                }
                let inner = XReal::sum_nonneg(&inner_terms).expect("nonneg");
                outer_terms.push(inner.mul_mt(&outer_mu.atom_weight(xi)?));
            }
            let iterated = XReal::sum_nonneg(&outer_terms).expect("nonneg");
            Ok(TonelliValues { direct, iterated })
        }
        TonelliFn::Step2D(step) => {
            if !step.is_nonneg() {
                return Err(ProductError::NegativeFunction);
            }
            for (m, name) in [(mu1, "left"), (mu2, "right")] {
                if m.as_lebesgue_restriction() != Some(IntervalSet::full_line()) {
                    return Err(ProductError::UnsupportedShape(format!(
                        "2-D step Tonelli needs Lebesgue factors ({name} is {})",
                        m.kind_name()
                    )));
                }
            }
            Ok(TonelliValues {
                direct: XReal::Finite(step.direct_integral()),
                iterated: XReal::Finite(step.iterated_integral(axis)),
            })
        }
    }
}

/// Tonelli restricted to a measurable subset of the product: the integrand
/// is masked by the indicator of the subset.
pub fn tonelli_over_subset(
    f: &TonelliFn,
    a: &MeasurableSet,
    mu1: &Measure,
    mu2: &Measure,
    axis: usize,
) -> Result<TonelliValues, ProductError> {
    match (f, a) {
        (TonelliFn::Finite(map), MeasurableSet::Finite(mask)) => {
            let MeasurableFn::FiniteMap { space, values } = map else {
                return Err(ProductError::UnsupportedShape(
                    "finite Tonelli needs a finite map".into(),
                ));
            };
            let masked: Vec<XReal> = values
                .iter()
                .enumerate()
                .map(|(x, v)| {
                    if mask & (1 << x) != 0 {
                        v.clone()
                    } else {
                        XReal::zero()
                    }
                })
                .collect();
            // The masked map stays measurable for the product sigma-algebra
            // when `a` is a member; reconstruct through the validator.
            let masked_map = MeasurableFn::finite_map(space.clone(), masked)?;
            tonelli(&TonelliFn::Finite(masked_map), mu1, mu2, axis)
        }
        (TonelliFn::Step2D(step), MeasurableSet::Boxes(b)) => {
            let masked = step.mask_by(b)?;
            tonelli(&TonelliFn::Step2D(masked), mu1, mu2, axis)
        }
        _ => Err(ProductError::UnsupportedShape(
            "subset kind does not match the integrand".into(),
        )),
    }
}
