//! Subset systems over a finite universe: pi-systems, set algebras,
//! lambda-systems, monotone classes and sigma-algebras, their generation by
//! fixpoint closure, and brute-force verifiers for the Dynkin pi-lambda and
//! monotone-class theorems.
//!
//! Subsets of a universe of size `n <= 24` are `n`-bit masks; a family is a
//! sorted, deduplicated vector of masks. On a finite universe every countable
//! union equals a finite sub-union, so the countable closure axioms reduce to
//! binary ones; in particular every family is a monotone class (all monotone
//! chains stabilize).

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A subset of the universe, one bit per element.
pub type Mask = u32;

/// Largest supported universe; keeps masks inside a machine word.
pub const MAX_UNIVERSE: usize = 24;

/// A finite carrier set with optional element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteUniverse {
    size: usize,
    labels: Vec<String>,
}

impl FiniteUniverse {
    /// A universe of `size` elements labeled `e0`, `e1`, ...
    pub fn new(size: usize) -> Result<Self, SetSysError> {
        if size == 0 || size > MAX_UNIVERSE {
            return Err(SetSysError::UniverseSize(size));
        }
        Ok(FiniteUniverse {
            size,
            labels: (0..size).map(|i| format!("e{i}")).collect(),
        })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, SetSysError> {
        let size = labels.len();
        if size == 0 || size > MAX_UNIVERSE {
            return Err(SetSysError::UniverseSize(size));
        }
        Ok(FiniteUniverse { size, labels })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Mask of the full set X.
    pub fn full_mask(&self) -> Mask {
        if self.size == 32 {
            u32::MAX
        } else {
            (1u32 << self.size) - 1
        }
    }

    pub fn label_of(&self, elem: usize) -> &str {
        &self.labels[elem]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Errors from family construction and system generation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SetSysError {
    #[error("universe size {0} out of range 1..=24")]
    UniverseSize(usize),
    #[error("mask {mask:#x} does not fit a universe of size {size}")]
    MaskOutOfRange { mask: Mask, size: usize },
    #[error("pi-system generation requires a nonempty generator family")]
    EmptyGenerators,
    #[error("explicit algebra hypothesis failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("family is not a sigma-algebra: {0}")]
    NotASigmaAlgebra(String),
}

/// A deduplicated, sorted family of subsets of a finite universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    universe: FiniteUniverse,
    members: Vec<Mask>,
}

impl SubsetFamily {
    pub fn new(universe: FiniteUniverse, members: impl IntoIterator<Item = Mask>) -> Result<Self, SetSysError> {
        let full = universe.full_mask();
        let mut set = BTreeSet::new();
        for m in members {
            if m & !full != 0 {
                return Err(SetSysError::MaskOutOfRange {
                    mask: m,
                    size: universe.size,
                });
            }
            set.insert(m);
        }
        Ok(SubsetFamily {
            universe,
            members: set.into_iter().collect(),
        })
    }

    pub fn universe(&self) -> &FiniteUniverse {
        &self.universe
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// The power set of the universe.
    pub fn power_set(universe: FiniteUniverse) -> Self {
        let full = universe.full_mask();
        SubsetFamily {
            members: (0..=full).collect(),
            universe,
        }
    }

    /// Renders members as label arrays, in mask order.
    pub fn to_label_sets(&self) -> Vec<Vec<String>> {
        self.members
            .iter()
            .map(|&m| {
                (0..self.universe.size)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| self.universe.labels[i].clone())
                    .collect()
            })
            .collect()
    }

    /// Parses a family from label arrays over the given universe.
    pub fn from_label_sets(
        universe: FiniteUniverse,
        sets: &[Vec<String>],
    ) -> Result<Self, SetSysError> {
        let mut members = Vec::with_capacity(sets.len());
        for s in sets {
            let mut mask: Mask = 0;
            for label in s {
                let i = universe
                    .index_of(label)
                    .ok_or_else(|| SetSysError::UnknownLabel(label.clone()))?;
                mask |= 1 << i;
            }
            members.push(mask);
        }
        SubsetFamily::new(universe, members)
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets = self.to_label_sets();
        let rendered: Vec<String> = sets
            .iter()
            .map(|s| format!("{{{}}}", s.join(",")))
            .collect();
        write!(f, "{{{}}}", rendered.join(", "))
    }
}

/// The five axiom bundles of the subset-system hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    PiSystem,
    SetAlgebra,
    LambdaSystem,
    MonotoneClass,
    SigmaAlgebra,
}

impl SystemKind {
    pub const ALL: [SystemKind; 5] = [
        SystemKind::PiSystem,
        SystemKind::SetAlgebra,
        SystemKind::LambdaSystem,
        SystemKind::MonotoneClass,
        SystemKind::SigmaAlgebra,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SystemKind::PiSystem => "pi-system",
            SystemKind::SetAlgebra => "set-algebra",
            SystemKind::LambdaSystem => "lambda-system",
            SystemKind::MonotoneClass => "monotone-class",
            SystemKind::SigmaAlgebra => "sigma-algebra",
        }
    }
}

/// Outcome of an axiom check: either all axioms hold or the first violation
/// with its witness sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemCheck {
    pub ok: bool,
    pub violation: Option<Violation>,
}

/// First violated axiom with the masks that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witnesses: Vec<Mask>,
}

impl SystemCheck {
    fn pass() -> Self {
        SystemCheck {
            ok: true,
            violation: None,
        }
    }

    fn fail(axiom: &'static str, witnesses: Vec<Mask>) -> Self {
        SystemCheck {
            ok: false,
            violation: Some(Violation { axiom, witnesses }),
        }
    }
}

/// Checks the axiom list of `kind` against `fam`, reporting the first
/// violation. Countable axioms are checked in their binary reductions, which
/// are equivalent on a finite universe.
pub fn is_system(kind: SystemKind, fam: &SubsetFamily) -> SystemCheck {
    let full = fam.universe.full_mask();
    match kind {
        SystemKind::PiSystem => {
            if fam.is_empty() {
                return SystemCheck::fail("nonempty", vec![]);
            }
            binary_closure_check(fam, "closed under intersection", |a, b| a & b)
        }
        SystemKind::SetAlgebra => {
            if !fam.contains(0) {
                return SystemCheck::fail("contains empty set", vec![]);
            }
            let c = complement_check(fam, full);
            if !c.ok {
                return c;
            }
            binary_closure_check(fam, "closed under union", |a, b| a | b)
        }
        SystemKind::LambdaSystem => {
            if !fam.contains(full) {
                return SystemCheck::fail("contains full set", vec![]);
            }
            let c = complement_check(fam, full);
            if !c.ok {
                return c;
            }
            for (i, &a) in fam.members.iter().enumerate() {
                for &b in &fam.members[i..] {
                    if a & b == 0 && !fam.contains(a | b) {
                        return SystemCheck::fail("closed under disjoint union", vec![a, b]);
                    }
                }
            }
            SystemCheck::pass()
        }
        // Monotone chains stabilize on a finite universe, so both closure
        // axioms hold vacuously for every family.
        SystemKind::MonotoneClass => SystemCheck::pass(),
        SystemKind::SigmaAlgebra => {
            if !fam.contains(0) {
                return SystemCheck::fail("contains empty set", vec![]);
            }
            let c = complement_check(fam, full);
            if !c.ok {
                return c;
            }
            binary_closure_check(fam, "closed under countable union", |a, b| a | b)
        }
    }
}

fn complement_check(fam: &SubsetFamily, full: Mask) -> SystemCheck {
    for &a in &fam.members {
        if !fam.contains(full & !a) {
            return SystemCheck::fail("closed under complement", vec![a]);
        }
    }
    SystemCheck::pass()
}

fn binary_closure_check(
    fam: &SubsetFamily,
    axiom: &'static str,
    op: impl Fn(Mask, Mask) -> Mask,
) -> SystemCheck {
    for (i, &a) in fam.members.iter().enumerate() {
        for &b in &fam.members[i..] {
            if !fam.contains(op(a, b)) {
                return SystemCheck::fail(axiom, vec![a, b]);
            }
        }
    }
    SystemCheck::pass()
}

/// The smallest family of the given kind containing the generators, computed
/// by worklist fixpoint under the kind's closure operations. Terminates in at
/// most `2^|X|` insertions.
pub fn generate(kind: SystemKind, generators: &SubsetFamily) -> Result<SubsetFamily, SetSysError> {
    let universe = generators.universe.clone();
    let full = universe.full_mask();
    let mut acc: BTreeSet<Mask> = generators.members.iter().copied().collect();
    match kind {
        SystemKind::PiSystem => {
            if acc.is_empty() {
                return Err(SetSysError::EmptyGenerators);
            }
            close_binary(&mut acc, |a, b| Some(a & b));
        }
        SystemKind::SetAlgebra | SystemKind::SigmaAlgebra => {
            acc.insert(0);
            acc.insert(full);
            loop {
                let before = acc.len();
                let snapshot: Vec<Mask> = acc.iter().copied().collect();
                for &a in &snapshot {
                    acc.insert(full & !a);
                }
                let snapshot: Vec<Mask> = acc.iter().copied().collect();
                for (i, &a) in snapshot.iter().enumerate() {
                    for &b in &snapshot[i..] {
                        acc.insert(a | b);
                    }
                }
                if acc.len() == before {
                    break;
                }
            }
        }
        SystemKind::LambdaSystem => {
            acc.insert(0);
            acc.insert(full);
            loop {
                let before = acc.len();
                let snapshot: Vec<Mask> = acc.iter().copied().collect();
                for &a in &snapshot {
                    acc.insert(full & !a);
                }
                let snapshot: Vec<Mask> = acc.iter().copied().collect();
                for (i, &a) in snapshot.iter().enumerate() {
                    for &b in &snapshot[i..] {
                        if a & b == 0 {
                            acc.insert(a | b);
                        }
                    }
                }
                if acc.len() == before {
                    break;
                }
            }
        }
        // Every family is already a monotone class on a finite universe.
        SystemKind::MonotoneClass => {}
    }
    SubsetFamily::new(universe, acc)
}

fn close_binary(acc: &mut BTreeSet<Mask>, op: impl Fn(Mask, Mask) -> Option<Mask>) {
    loop {
        let before = acc.len();
        let snapshot: Vec<Mask> = acc.iter().copied().collect();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i..] {
                if let Some(c) = op(a, b) {
                    acc.insert(c);
                }
            }
        }
        if acc.len() == before {
            break;
        }
    }
}

/// Disjointification: `B_0 = A_0`, `B_{n+1} = A_{n+1} \ (B_0 u ... u B_n)`.
/// Outputs are pairwise disjoint and every prefix union is preserved.
pub fn disjointify(sets: &[Mask]) -> Vec<Mask> {
    let mut out = Vec::with_capacity(sets.len());
    let mut seen: Mask = 0;
    for &a in sets {
        out.push(a & !seen);
        seen |= a;
    }
    out
}

/// Explicit characterization of the generated set algebra as the finite
/// disjoint unions of the generators, valid when the generators contain the
/// full set, are intersection-closed, and every complement splits into two
/// disjoint generators. The hypotheses are checked.
pub fn explicit_algebra(generators: &SubsetFamily) -> Result<SubsetFamily, SetSysError> {
    let full = generators.universe.full_mask();
    if !generators.contains(full) {
        return Err(SetSysError::PreconditionFailed(
            "generators do not contain the full set".into(),
        ));
    }
    for (i, &a) in generators.members.iter().enumerate() {
        for &b in &generators.members[i..] {
            if !generators.contains(a & b) {
                return Err(SetSysError::PreconditionFailed(format!(
                    "generators not closed under intersection: {a:#x} & {b:#x}"
                )));
            }
        }
    }
    'outer: for &a in &generators.members {
        let comp = full & !a;
        for &b1 in &generators.members {
            if b1 & comp != b1 {
                continue;
            }
            let b2 = comp & !b1;
            if generators.contains(b2) {
                continue 'outer;
            }
        }
        return Err(SetSysError::PreconditionFailed(format!(
            "complement of {a:#x} is not a disjoint union of two generators"
        )));
    }
    // Finite disjoint unions of generators, by worklist closure.
    let mut acc: BTreeSet<Mask> = generators.members.iter().copied().collect();
    loop {
        let before = acc.len();
        let snapshot: Vec<Mask> = acc.iter().copied().collect();
        for &u in &snapshot {
            for &g in &generators.members {
                if u & g == 0 {
                    acc.insert(u | g);
                }
            }
        }
        if acc.len() == before {
            break;
        }
    }
    SubsetFamily::new(generators.universe.clone(), acc)
}

/// Trace family `{A n Y | A in fam}` over the compacted universe `Y`.
/// Labels of the retained elements are inherited from the parent universe.
pub fn trace_family(fam: &SubsetFamily, y: Mask) -> Result<SubsetFamily, SetSysError> {
    let full = fam.universe.full_mask();
    if y & !full != 0 {
        return Err(SetSysError::MaskOutOfRange {
            mask: y,
            size: fam.universe.size,
        });
    }
    // Positions of Y's elements, in order; element k of Y is bit positions[k].
    let positions: Vec<usize> = (0..fam.universe.size).filter(|i| y & (1 << i) != 0).collect();
    if positions.is_empty() {
        // The trace of any family on the empty set is {empty}.
        let universe = FiniteUniverse {
            size: 1,
            labels: vec!["_".into()],
        };
        return SubsetFamily::new(universe, [0]);
    }
    let labels = positions
        .iter()
        .map(|&i| fam.universe.labels[i].clone())
        .collect();
    let universe = FiniteUniverse::with_labels(labels)?;
    let compact = |m: Mask| -> Mask {
        positions
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &i)| acc | (((m >> i) & 1) << k))
    };
    SubsetFamily::new(universe, fam.members.iter().map(|&a| compact(a & y)))
}

/// Sigma-algebra on `X1 x X2` generated by the rectangles `A1 x A2`.
/// Point `(x1, x2)` is encoded as index `x1 * |X2| + x2`.
pub fn product_sigma(
    s1: &SubsetFamily,
    s2: &SubsetFamily,
) -> Result<SubsetFamily, SetSysError> {
    for (s, which) in [(s1, "left"), (s2, "right")] {
        let check = is_system(SystemKind::SigmaAlgebra, s);
        if !check.ok {
            return Err(SetSysError::NotASigmaAlgebra(format!(
                "{which} factor: {}",
                check.violation.map(|v| v.axiom).unwrap_or("unknown")
            )));
        }
    }
    let rect = rectangles(s1, s2)?;
    // Two power-set factors generate the power set of the product; skip
    // the fixpoint in that common case.
    if s1.len() == 1 << s1.universe.size && s2.len() == 1 << s2.universe.size {
        return Ok(SubsetFamily::power_set(rect.universe.clone()));
    }
    generate(SystemKind::SigmaAlgebra, &rect)
}

/// The rectangle family `{A1 x A2 | A1 in s1, A2 in s2}` over the product
/// universe.
pub fn rectangles(s1: &SubsetFamily, s2: &SubsetFamily) -> Result<SubsetFamily, SetSysError> {
    let n1 = s1.universe.size;
    let n2 = s2.universe.size;
    if n1 * n2 > MAX_UNIVERSE {
        return Err(SetSysError::UniverseSize(n1 * n2));
    }
    let mut labels = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            labels.push(format!(
                "{}*{}",
                s1.universe.labels[i], s2.universe.labels[j]
            ));
        }
    }
    let universe = FiniteUniverse::with_labels(labels)?;
    let mut members = Vec::new();
    for &a1 in &s1.members {
        for &a2 in &s2.members {
            members.push(rectangle_mask(a1, a2, n2));
        }
    }
    SubsetFamily::new(universe, members)
}

/// Mask of the rectangle `A1 x A2` in the product encoding.
pub fn rectangle_mask(a1: Mask, a2: Mask, n2: usize) -> Mask {
    let mut m: Mask = 0;
    for i in 0..MAX_UNIVERSE {
        if a1 & (1 << i) != 0 {
            m |= a2 << (i * n2);
        }
    }
    m
}

/// Summary of an exhaustive theorem verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub theorem: &'static str,
    pub universe_size: usize,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: |X|={}, {} cases, {} failures",
            self.theorem,
            self.universe_size,
            self.cases,
            self.failures.len()
        )
    }
}

/// Compact encoding for exhaustive enumeration: for `|X| <= 4` a family of
/// subsets is a bitset over the `2^|X| <= 16` masks, i.e. one `u32` word.
mod compact {
    use super::Mask;

    /// Family as a word: bit `m` set iff mask `m` is a member.
    pub type Fam = u32;

    pub fn contains(fam: Fam, m: Mask) -> bool {
        fam & (1 << m) != 0
    }

    pub fn is_pi_system(fam: Fam, n_subsets: u32) -> bool {
        if fam == 0 {
            return false;
        }
        for a in 0..n_subsets {
            if !contains(fam, a) {
                continue;
            }
            for b in a..n_subsets {
                if contains(fam, b) && !contains(fam, a & b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_set_algebra(fam: Fam, full: Mask, n_subsets: u32) -> bool {
        if !contains(fam, 0) {
            return false;
        }
        for a in 0..n_subsets {
            if !contains(fam, a) {
                continue;
            }
            if !contains(fam, full & !a) {
                return false;
            }
            for b in a..n_subsets {
                if contains(fam, b) && !contains(fam, a | b) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure under complement plus a binary mask operation gated by `keep`.
    fn close(fam: Fam, full: Mask, n_subsets: u32, keep: impl Fn(Mask, Mask) -> bool) -> Fam {
        let mut acc = fam | (1 << 0) | (1 << full);
        loop {
            let before = acc;
            for a in 0..n_subsets {
                if contains(acc, a) {
                    acc |= 1 << (full & !a);
                }
            }
            for a in 0..n_subsets {
                if !contains(acc, a) {
                    continue;
                }
                for b in a..n_subsets {
                    if contains(acc, b) && keep(a, b) {
                        acc |= 1 << (a | b);
                    }
                }
            }
            if acc == before {
                return acc;
            }
        }
    }

    pub fn sigma_closure(fam: Fam, full: Mask, n_subsets: u32) -> Fam {
        close(fam, full, n_subsets, |_, _| true)
    }

    pub fn lambda_closure(fam: Fam, full: Mask, n_subsets: u32) -> Fam {
        close(fam, full, n_subsets, |a, b| a & b == 0)
    }
}

/// Exhaustively verifies the Dynkin pi-lambda theorem on a universe of the
/// given size: for every pi-system, the generated lambda-system equals the
/// generated sigma-algebra.
pub fn verify_dynkin(universe_size: usize) -> Result<VerifyReport, SetSysError> {
    if universe_size == 0 || universe_size > 4 {
        return Err(SetSysError::UniverseSize(universe_size));
    }
    let full: Mask = (1 << universe_size) - 1;
    let n_subsets: u32 = 1 << universe_size;
    let n_families: u64 = 1u64 << n_subsets;
    let mut cases = 0usize;
    let mut failures = Vec::new();
    for fam in 1..n_families {
        let fam = fam as compact::Fam;
        if !compact::is_pi_system(fam, n_subsets) {
            continue;
        }
        cases += 1;
        let lambda = compact::lambda_closure(fam, full, n_subsets);
        let sigma = compact::sigma_closure(fam, full, n_subsets);
        if lambda != sigma {
            failures.push(format!(
                "pi-system {fam:#x}: lambda-closure {lambda:#x} != sigma-closure {sigma:#x}"
            ));
        }
    }
    Ok(VerifyReport {
        theorem: "dynkin pi-lambda",
        universe_size,
        cases,
        failures,
    })
}

/// Exhaustively verifies the monotone-class theorem on a finite universe.
/// Every family is a monotone class there, so the generated monotone class
/// of a set algebra is the algebra itself and the theorem reduces to: every
/// set algebra is already a sigma-algebra.
pub fn verify_monotone_class(universe_size: usize) -> Result<VerifyReport, SetSysError> {
    if universe_size == 0 || universe_size > 4 {
        return Err(SetSysError::UniverseSize(universe_size));
    }
    let full: Mask = (1 << universe_size) - 1;
    let n_subsets: u32 = 1 << universe_size;
    let n_families: u64 = 1u64 << n_subsets;
    let mut cases = 0usize;
    let mut failures = Vec::new();
    for fam in 1..n_families {
        let fam = fam as compact::Fam;
        if !compact::is_set_algebra(fam, full, n_subsets) {
            continue;
        }
        cases += 1;
        // Generated monotone class of the algebra is the algebra itself.
        let sigma = compact::sigma_closure(fam, full, n_subsets);
        if fam != sigma {
            failures.push(format!(
                "set algebra {fam:#x}: monotone-class closure {fam:#x} != sigma-closure {sigma:#x}"
            ));
        }
    }
    Ok(VerifyReport {
        theorem: "monotone class",
        universe_size,
        cases,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(n: usize) -> FiniteUniverse {
        FiniteUniverse::new(n).unwrap()
    }

    fn fam(n: usize, members: &[Mask]) -> SubsetFamily {
        SubsetFamily::new(universe(n), members.iter().copied()).unwrap()
    }

    #[test]
    fn trivial_sigma_algebra_passes() {
        let f = fam(3, &[0, 0b111]);
        assert!(is_system(SystemKind::SigmaAlgebra, &f).ok);
        for kind in SystemKind::ALL {
            assert!(is_system(kind, &f).ok, "{}", kind.name());
        }
    }

    #[test]
    fn singleton_family_is_pi_system() {
        let f = fam(2, &[0b01]);
        assert!(is_system(SystemKind::PiSystem, &f).ok);
        assert!(!is_system(SystemKind::SigmaAlgebra, &f).ok);
    }

    #[test]
    fn missing_complement_is_reported() {
        let f = fam(2, &[0, 0b01, 0b11]);
        let check = is_system(SystemKind::SigmaAlgebra, &f);
        assert!(!check.ok);
        let v = check.violation.unwrap();
        assert_eq!(v.axiom, "closed under complement");
        assert_eq!(v.witnesses, vec![0b01]);
    }

    #[test]
    fn empty_family_fails_pi() {
        let f = fam(2, &[]);
        let check = is_system(SystemKind::PiSystem, &f);
        assert!(!check.ok);
        assert_eq!(check.violation.unwrap().axiom, "nonempty");
    }

    #[test]
    fn generate_sigma_from_single_generator() {
        // X = {0,1,2}, G = {{0}} -> {{}, {0}, {1,2}, X}
        let g = fam(3, &[0b001]);
        let sigma = generate(SystemKind::SigmaAlgebra, &g).unwrap();
        assert_eq!(sigma.members(), &[0, 0b001, 0b110, 0b111]);
    }

    #[test]
    fn generate_sigma_from_empty() {
        let g = fam(3, &[]);
        let sigma = generate(SystemKind::SigmaAlgebra, &g).unwrap();
        assert_eq!(sigma.members(), &[0, 0b111]);
    }

    #[test]
    fn generate_pi_closes_under_intersection() {
        // G = {{0,1},{1,2}} -> adds {1}
        let g = fam(3, &[0b011, 0b110]);
        let pi = generate(SystemKind::PiSystem, &g).unwrap();
        assert_eq!(pi.members(), &[0b010, 0b011, 0b110]);
        let empty = fam(3, &[]);
        assert_eq!(
            generate(SystemKind::PiSystem, &empty),
            Err(SetSysError::EmptyGenerators)
        );
    }

    #[test]
    fn disjointify_basics() {
        assert_eq!(disjointify(&[0b011, 0b110]), vec![0b011, 0b100]);
        assert_eq!(disjointify(&[0b101]), vec![0b101]);
        assert_eq!(disjointify(&[0b101, 0b101]), vec![0b101, 0]);
    }

    #[test]
    fn disjointify_preserves_prefix_unions() {
        let sets = [0b0110, 0b0011, 0b1100, 0b1111];
        let out = disjointify(&sets);
        let mut ua: Mask = 0;
        let mut ub: Mask = 0;
        for (a, b) in sets.iter().zip(&out) {
            ua |= a;
            ub |= b;
            assert_eq!(ua, ub);
        }
        for (i, a) in out.iter().enumerate() {
            for b in &out[i + 1..] {
                assert_eq!(a & b, 0);
            }
        }
    }

    #[test]
    fn explicit_algebra_on_power_set() {
        let g = SubsetFamily::power_set(universe(2));
        let alg = explicit_algebra(&g).unwrap();
        assert_eq!(alg, g);
    }

    #[test]
    fn explicit_algebra_requires_full_set() {
        let g = fam(2, &[0, 0b01]);
        assert!(matches!(
            explicit_algebra(&g),
            Err(SetSysError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn explicit_algebra_matches_generated_on_rectangles() {
        // Rectangles of two power sets on 2x2 satisfy the hypotheses.
        let s = SubsetFamily::power_set(universe(2));
        let rect = rectangles(&s, &s).unwrap();
        let explicit = explicit_algebra(&rect).unwrap();
        let generated = generate(SystemKind::SetAlgebra, &rect).unwrap();
        assert_eq!(explicit, generated);
        assert_eq!(explicit.len(), 16);
    }

    #[test]
    fn explicit_algebra_with_coarse_factor() {
        // One factor coarser than the power set still satisfies the
        // rectangle hypotheses.
        let s1 = fam(2, &[0b00, 0b01, 0b10, 0b11]);
        let s2 = fam(2, &[0b00, 0b11]);
        let rect = rectangles(&s1, &s2).unwrap();
        let explicit = explicit_algebra(&rect).unwrap();
        let generated = generate(SystemKind::SetAlgebra, &rect).unwrap();
        assert_eq!(explicit, generated);
    }

    #[test]
    fn trace_of_power_set_is_power_set() {
        let f = SubsetFamily::power_set(universe(3));
        let t = trace_family(&f, 0b011).unwrap();
        assert_eq!(t, SubsetFamily::power_set(t.universe().clone()));
        assert_eq!(t.universe().size(), 2);
    }

    #[test]
    fn trace_elementwise() {
        // {{}, {0}, {1,2}, X} traced on {0,1} -> {{}, {0}, {1}, {0,1}}
        let f = fam(3, &[0, 0b001, 0b110, 0b111]);
        let t = trace_family(&f, 0b011).unwrap();
        assert_eq!(t.members(), &[0b00, 0b01, 0b10, 0b11]);
        assert!(is_system(SystemKind::SigmaAlgebra, &t).ok);
    }

    #[test]
    fn trace_on_empty_set() {
        let f = fam(3, &[0, 0b111]);
        let t = trace_family(&f, 0).unwrap();
        assert_eq!(t.members(), &[0]);
    }

    #[test]
    fn product_of_power_sets() {
        let s1 = SubsetFamily::power_set(universe(2));
        let s2 = SubsetFamily::power_set(universe(2));
        let p = product_sigma(&s1, &s2).unwrap();
        assert_eq!(p.len(), 1 << 4);
    }

    #[test]
    fn product_with_trivial_factor() {
        let s1 = fam(2, &[0, 0b01, 0b10, 0b11]);
        let s2 = fam(2, &[0, 0b11]);
        let p = product_sigma(&s1, &s2).unwrap();
        // Rectangles A1 x X with A1 in the 4-member power set of X1.
        assert_eq!(p.len(), 4);
        let not_sigma = fam(2, &[0b01]);
        assert!(matches!(
            product_sigma(&not_sigma, &s2),
            Err(SetSysError::NotASigmaAlgebra(_))
        ));
    }

    #[test]
    fn dynkin_size_one_and_two() {
        for n in 1..=2 {
            let report = verify_dynkin(n).unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn monotone_class_size_two() {
        let report = verify_monotone_class(2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn sigma_of_generated_pi_system_equals_sigma_of_generators() {
        // Exhaustive over all nonempty generator families on |X| = 3.
        let u = universe(3);
        for bits in 1u32..256 {
            let members: Vec<Mask> = (0u32..8).filter(|m| bits & (1 << m) != 0).collect();
            let g = SubsetFamily::new(u.clone(), members).unwrap();
            let pi = generate(SystemKind::PiSystem, &g).unwrap();
            let s1 = generate(SystemKind::SigmaAlgebra, &pi).unwrap();
            let s2 = generate(SystemKind::SigmaAlgebra, &g).unwrap();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn every_sigma_algebra_passes_all_kinds() {
        let u = universe(3);
        for bits in 1u32..256 {
            let members: Vec<Mask> = (0u32..8).filter(|m| bits & (1 << m) != 0).collect();
            let f = SubsetFamily::new(u.clone(), members).unwrap();
            if is_system(SystemKind::SigmaAlgebra, &f).ok {
                for kind in SystemKind::ALL {
                    assert!(is_system(kind, &f).ok, "{}", kind.name());
                }
            }
        }
    }

    #[test]
    fn label_round_trip() {
        let f = fam(3, &[0b001, 0b110]);
        let sets = f.to_label_sets();
        let back = SubsetFamily::from_label_sets(universe(3), &sets).unwrap();
        assert_eq!(f, back);
    }
}
