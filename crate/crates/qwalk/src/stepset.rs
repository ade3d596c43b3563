//! Step sets, their symmetries, and the classification of all 56 three-step
//! quarter-plane models.
//!
//! A step set is a subset of the eight compass directions, stored as a
//! bitmask in the canonical order N, NE, E, SE, S, SW, W, NW. The taxonomy
//! implemented here: models with no nonempty walk are *empty*; models whose
//! quadrant condition degenerates to a half-plane condition are *singular*
//! (four inequality types); the remaining models form seven non-singular
//! classes, numbered 5..11, each identified up to reflection in the line
//! x = y.

use serde::Serialize;
use std::fmt;

/// One of the eight compass directions, with its lattice vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

pub const ALL_DIRECTIONS: [Direction; 8] = [
    Direction::N,
    Direction::NE,
    Direction::E,
    Direction::SE,
    Direction::S,
    Direction::SW,
    Direction::W,
    Direction::NW,
];

impl Direction {
    /// The lattice vector, components in {-1,0,1}, never (0,0).
    pub fn vector(self) -> (i32, i32) {
        match self {
            Direction::N => (0, 1),
            Direction::NE => (1, 1),
            Direction::E => (1, 0),
            Direction::SE => (1, -1),
            Direction::S => (0, -1),
            Direction::SW => (-1, -1),
            Direction::W => (-1, 0),
            Direction::NW => (-1, 1),
        }
    }

    pub fn from_vector(v: (i32, i32)) -> Option<Direction> {
        ALL_DIRECTIONS.iter().copied().find(|d| d.vector() == v)
    }

    pub fn token(self) -> &'static str {
        match self {
            Direction::N => "N",
            Direction::NE => "NE",
            Direction::E => "E",
            Direction::SE => "SE",
            Direction::S => "S",
            Direction::SW => "SW",
            Direction::W => "W",
            Direction::NW => "NW",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A set of compass directions (bitmask, canonical order N,NE,E,SE,S,SW,W,NW).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepSet(u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    UnknownToken(String),
    DuplicateToken(String),
    Empty,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::UnknownToken(t) => write!(f, "unknown step token `{t}`"),
            ParseError::DuplicateToken(t) => write!(f, "duplicate step token `{t}`"),
            ParseError::Empty => write!(f, "empty step list"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Classification of a three-step model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassId {
    /// No nonempty quarter-plane walk exists.
    Empty,
    /// Singular model; the payload is the inequality type 1..4.
    Singular(u8),
    /// Non-singular model; the payload is the class index 5..11.
    NonSingular(u8),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Empty => write!(f, "empty"),
            ClassId::Singular(k) => write!(f, "singular type {k}"),
            ClassId::NonSingular(k) => write!(f, "class {k}"),
        }
    }
}

/// The five symmetry flags used by the finiteness criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub x_axis_symmetric: bool,
    pub y_axis_symmetric: bool,
    pub rev_invariant: bool,
    pub reflect_rev_invariant: bool,
    pub reflect_invariant: bool,
}

impl StepSet {
    pub const EMPTY: StepSet = StepSet(0);

    pub fn from_directions<I: IntoIterator<Item = Direction>>(dirs: I) -> StepSet {
        let mut mask = 0u8;
        for d in dirs {
            mask |= d.bit();
        }
        StepSet(mask)
    }

    pub fn from_mask(mask: u8) -> StepSet {
        StepSet(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Parse a comma-separated list of compass tokens.
    pub fn parse(text: &str) -> Result<StepSet, ParseError> {
        let mut mask = 0u8;
        let mut seen_any = false;
        for tok in text.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            seen_any = true;
            let dir = ALL_DIRECTIONS
                .iter()
                .copied()
                .find(|d| d.token() == tok)
                .ok_or_else(|| ParseError::UnknownToken(tok.to_string()))?;
            if mask & dir.bit() != 0 {
                return Err(ParseError::DuplicateToken(tok.to_string()));
            }
            mask |= dir.bit();
        }
        if !seen_any {
            return Err(ParseError::Empty);
        }
        Ok(StepSet(mask))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty_set(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, d: Direction) -> bool {
        self.0 & d.bit() != 0
    }

    pub fn is_subset_of(self, other: StepSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Directions in canonical order.
    pub fn directions(self) -> impl Iterator<Item = Direction> {
        ALL_DIRECTIONS.into_iter().filter(move |d| self.contains(*d))
    }

    /// Lattice vectors in canonical order.
    pub fn steps(self) -> Vec<(i32, i32)> {
        self.directions().map(|d| d.vector()).collect()
    }

    fn map_steps(self, f: impl Fn((i32, i32)) -> (i32, i32)) -> StepSet {
        StepSet::from_directions(
            self.directions()
                .map(|d| Direction::from_vector(f(d.vector())).expect("image stays on the 8 directions")),
        )
    }

    /// Reflect each step across the line x = y ((i,j) -> (j,i)).
    pub fn reflect(self) -> StepSet {
        self.map_steps(|(i, j)| (j, i))
    }

    /// Reverse each step ((i,j) -> (-i,-j)).
    pub fn rev(self) -> StepSet {
        self.map_steps(|(i, j)| (-i, -j))
    }

    pub fn x_axis_symmetric(self) -> bool {
        self == self.map_steps(|(i, j)| (i, -j))
    }

    pub fn y_axis_symmetric(self) -> bool {
        self == self.map_steps(|(i, j)| (-i, j))
    }

    pub fn symmetry_report(self) -> SymmetryReport {
        SymmetryReport {
            x_axis_symmetric: self.x_axis_symmetric(),
            y_axis_symmetric: self.y_axis_symmetric(),
            rev_invariant: self == self.rev(),
            reflect_rev_invariant: self == self.rev().reflect(),
            reflect_invariant: self == self.reflect(),
        }
    }

    /// True iff some nonempty quarter-plane walk exists, i.e. the set has a
    /// step that is legal from the origin.
    pub fn has_valid_walk(self) -> bool {
        self.directions().any(|d| {
            let (i, j) = d.vector();
            i >= 0 && j >= 0
        })
    }

    /// True iff the set is contained in one of the six direction fans whose
    /// quadrant condition degenerates to a half-plane condition.
    pub fn is_singular(self) -> bool {
        use Direction::*;
        let a = StepSet::from_directions([W, NW, N, NE, E]);
        let b = StepSet::from_directions([NE, N, NW, W, SW]);
        let fans = [a, a.reflect(), a.rev(), a.rev().reflect(), b, b.reflect()];
        fans.iter().any(|fan| self.is_subset_of(*fan))
    }

    /// Drop steps that can never be played: a step needing a positive x (or
    /// y) displacement to exist among the other kept steps loses it when no
    /// such provider remains. Iterated to a fixed point.
    pub fn playable_reduction(self) -> StepSet {
        let mut cur = self;
        loop {
            let kept = StepSet::from_directions(cur.directions().filter(|d| {
                let (i, j) = d.vector();
                let has_x = cur.directions().any(|o| *d != o && o.vector().0 > 0);
                let has_y = cur.directions().any(|o| *d != o && o.vector().1 > 0);
                (i >= 0 || has_x) && (j >= 0 || has_y)
            }));
            if kept == cur {
                return cur;
            }
            cur = kept;
        }
    }

    /// The coordinate whose half-plane constraint governs a singular model,
    /// after playability reduction: `None` when no constraint binds,
    /// `Some(0)` for the horizontal constraint, `Some(1)` for the vertical.
    pub fn binding_axis(self) -> Option<usize> {
        let r = self.playable_reduction();
        let steps = r.steps();
        let neg = |axis: usize| steps.iter().any(|s| [s.0, s.1][axis] < 0);
        match (neg(0), neg(1)) {
            (false, false) => None,
            (true, false) => Some(0),
            (false, true) => Some(1),
            (true, true) => {
                // One constraint must imply the other for singular models.
                if steps.iter().all(|&(i, j)| j >= i) {
                    Some(0) // x >= 0 implies y >= 0 pointwise
                } else if steps.iter().all(|&(i, j)| i >= j) {
                    Some(1)
                } else {
                    panic!("no single binding constraint for {r}: not a singular model");
                }
            }
        }
    }

    fn singular_type(self) -> u8 {
        let r = self.playable_reduction();
        let Some(axis) = self.binding_axis() else {
            return 1;
        };
        let comp = |s: &(i32, i32)| [s.0, s.1][axis];
        let steps = r.steps();
        let p = steps.iter().filter(|s| comp(s) > 0).count();
        let m = steps.iter().filter(|s| comp(s) < 0).count();
        let z = steps.iter().filter(|s| comp(s) == 0).count();
        match (p, m, z) {
            (_, 0, _) => 1,
            (1, 1, _) => 2,
            (2, 1, 0) => 3,
            (1, 2, 0) => 4,
            shape => panic!("unexpected singular constraint shape {shape:?} for {self}"),
        }
    }

    /// Canonical representative of non-singular class `k` (5..=11).
    pub fn class_representative(k: u8) -> StepSet {
        use Direction::*;
        match k {
            5 => StepSet::from_directions([NE, S, W]),
            6 => StepSet::from_directions([N, E, SW]),
            7 => StepSet::from_directions([N, SE, W]),
            8 => StepSet::from_directions([N, SE, SW]),
            9 => StepSet::from_directions([NE, SE, W]),
            10 => StepSet::from_directions([NE, SE, NW]),
            11 => StepSet::from_directions([N, NW, SE]),
            _ => panic!("non-singular classes are numbered 5..=11, got {k}"),
        }
    }

    /// Classify a three-step model.
    pub fn classify(self) -> Result<ClassId, ClassifyError> {
        if self.len() != 3 {
            return Err(ClassifyError::Cardinality(self.len()));
        }
        if !self.has_valid_walk() {
            return Ok(ClassId::Empty);
        }
        if self.is_singular() {
            return Ok(ClassId::Singular(self.singular_type()));
        }
        for k in 5..=11 {
            let rep = StepSet::class_representative(k);
            if self == rep || self.reflect() == rep {
                return Ok(ClassId::NonSingular(k));
            }
        }
        unreachable!("every non-singular triple matches a class representative: {self}")
    }

    /// All 56 three-element subsets, in mask order.
    pub fn all_triples() -> Vec<StepSet> {
        (0u16..256)
            .map(|m| StepSet(m as u8))
            .filter(|s| s.len() == 3)
            .collect()
    }

    /// All 256 subsets, in mask order.
    pub fn all_subsets() -> Vec<StepSet> {
        (0u16..256).map(|m| StepSet(m as u8)).collect()
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty_set() {
            return f.write_str("(empty)");
        }
        let mut first = true;
        for d in self.directions() {
            if !first {
                f.write_str(",")?;
            }
            f.write_str(d.token())?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    Cardinality(u32),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::Cardinality(n) => {
                write!(f, "classification needs exactly 3 steps, got {n}")
            }
        }
    }
}

impl std::error::Error for ClassifyError {}

/// One row of the 56-triple sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    #[serde(serialize_with = "ser_stepset")]
    pub steps: StepSet,
    pub class: ClassId,
    #[serde(serialize_with = "ser_stepset")]
    pub reflect_partner: StepSet,
    pub symmetry: SymmetryReport,
}

fn ser_stepset<S: serde::Serializer>(s: &StepSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

/// Aggregate counts of the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub triples: usize,
    pub empty_sets: usize,
    pub singular_sets: usize,
    pub nonsingular_sets: usize,
    pub reflect_invariant_nonempty: usize,
    pub reflect_classes_nonempty: usize,
    pub singular_reflect_classes: usize,
    pub nonsingular_reflect_classes: usize,
    pub final_classes: usize,
}

pub struct ClassSweep {
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

/// Classify every three-element subset and aggregate the taxonomy counts.
pub fn enumerate_all_classes() -> ClassSweep {
    let triples = StepSet::all_triples();
    let records: Vec<SweepRecord> = triples
        .iter()
        .map(|&s| SweepRecord {
            steps: s,
            class: s.classify().expect("triples classify"),
            reflect_partner: s.reflect(),
            symmetry: s.symmetry_report(),
        })
        .collect();

    let empty_sets = records.iter().filter(|r| r.class == ClassId::Empty).count();
    let singular_sets = records
        .iter()
        .filter(|r| matches!(r.class, ClassId::Singular(_)))
        .count();
    let nonsingular_sets = records
        .iter()
        .filter(|r| matches!(r.class, ClassId::NonSingular(_)))
        .count();
    let nonempty: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| r.class != ClassId::Empty)
        .collect();
    let reflect_invariant_nonempty = nonempty
        .iter()
        .filter(|r| r.symmetry.reflect_invariant)
        .count();
    let reflect_classes = |rows: &[&SweepRecord]| {
        rows.iter()
            .filter(|r| r.steps.mask() <= r.reflect_partner.mask())
            .count()
    };
    let singular_rows: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| matches!(r.class, ClassId::Singular(_)))
        .collect();
    let nonsingular_rows: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| matches!(r.class, ClassId::NonSingular(_)))
        .collect();
    let singular_reflect_classes = reflect_classes(&singular_rows);
    let nonsingular_reflect_classes = reflect_classes(&nonsingular_rows);
    let mut final_classes: Vec<ClassId> = records
        .iter()
        .filter_map(|r| (r.class != ClassId::Empty).then_some(r.class))
        .collect();
    final_classes.sort_by_key(|c| match c {
        ClassId::Empty => 0,
        ClassId::Singular(k) => *k as u32,
        ClassId::NonSingular(k) => 10 + *k as u32,
    });
    final_classes.dedup();

    let summary = SweepSummary {
        triples: records.len(),
        empty_sets,
        singular_sets,
        nonsingular_sets,
        reflect_invariant_nonempty,
        reflect_classes_nonempty: reflect_classes(&nonempty),
        singular_reflect_classes,
        nonsingular_reflect_classes,
        final_classes: final_classes.len(),
    };
    ClassSweep { records, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    fn s(dirs: &[Direction]) -> StepSet {
        StepSet::from_directions(dirs.iter().copied())
    }

    #[test]
    fn parse_round_trips_in_canonical_order() {
        let set = StepSet::parse("NE,S,W").unwrap();
        assert_eq!(set, s(&[NE, S, W]));
        assert_eq!(set.to_string(), "NE,S,W");
        let set = StepSet::parse("SW, E ,N").unwrap();
        assert_eq!(set.to_string(), "N,E,SW");
        assert_eq!(StepSet::parse("N,N,E"), Err(ParseError::DuplicateToken("N".into())));
        assert!(matches!(StepSet::parse("N,Q"), Err(ParseError::UnknownToken(_))));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(s(&[N, SE, W]).reflect(), s(&[E, NW, S]));
        assert_eq!(s(&[NE, S, W]).reflect(), s(&[NE, S, W]));
        assert_eq!(s(&[NE, SE, NW]).reflect(), s(&[NE, SE, NW]));
    }

    #[test]
    fn rev_examples() {
        assert_eq!(s(&[N]).rev(), s(&[S]));
        assert_eq!(s(&[SW]).rev(), s(&[NE]));
        assert_eq!(s(&[NE, S, W]).rev(), s(&[SW, N, E]));
    }

    #[test]
    fn involutions_on_all_subsets() {
        for set in StepSet::all_subsets() {
            assert_eq!(set.reflect().reflect(), set);
            assert_eq!(set.rev().rev(), set);
            assert_eq!(set.is_singular(), set.reflect().is_singular());
        }
    }

    #[test]
    fn symmetry_report_examples() {
        assert!(s(&[N, SE, SW]).symmetry_report().y_axis_symmetric);
        let r = s(&[NE, S, W]).symmetry_report();
        assert!(!r.rev_invariant);
        assert!(r.reflect_invariant);
        let e = StepSet::EMPTY.symmetry_report();
        assert!(
            e.x_axis_symmetric
                && e.y_axis_symmetric
                && e.rev_invariant
                && e.reflect_rev_invariant
                && e.reflect_invariant
        );
    }

    #[test]
    fn valid_walk_examples() {
        assert!(!s(&[SE, S, SW]).has_valid_walk());
        assert!(s(&[NE, S, W]).has_valid_walk());
        assert!(!s(&[NW, W, S]).has_valid_walk());
    }

    #[test]
    fn singular_examples() {
        assert!(s(&[N, NE, E]).is_singular());
        assert!(s(&[N, NE, SW]).is_singular());
        assert!(!s(&[NE, SE, NW]).is_singular());
        // The misprinted class-11 set from the non-holonomy theorem is in
        // fact singular (subset of a reflected fan).
        assert!(s(&[NE, SE, N]).is_singular());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(s(&[SE, S, SW]).classify().unwrap(), ClassId::Empty);
        assert_eq!(s(&[NE, S, W]).classify().unwrap(), ClassId::NonSingular(5));
        assert_eq!(s(&[N, NW, SE]).classify().unwrap(), ClassId::NonSingular(11));
        assert_eq!(s(&[N, E, SW]).classify().unwrap(), ClassId::NonSingular(6));
        assert_eq!(s(&[N, SE, W]).classify().unwrap(), ClassId::NonSingular(7));
        assert_eq!(s(&[E, NW, S]).classify().unwrap(), ClassId::NonSingular(7));
        assert!(s(&[N, NE]).classify().is_err());
    }

    #[test]
    fn singular_types_of_the_four_representatives() {
        assert_eq!(s(&[N, NE, E]).classify().unwrap(), ClassId::Singular(1));
        assert_eq!(s(&[N, NE, SW]).classify().unwrap(), ClassId::Singular(2));
        assert_eq!(s(&[NE, E, NW]).classify().unwrap(), ClassId::Singular(3));
        assert_eq!(s(&[NE, W, SW]).classify().unwrap(), ClassId::Singular(4));
        // the V-binding partners used for the printed complete GFs
        assert_eq!(s(&[N, NE, SE]).classify().unwrap(), ClassId::Singular(3));
        assert_eq!(s(&[N, S, SE]).classify().unwrap(), ClassId::Singular(4));
        // degenerate-but-nonempty models are singular, not empty
        assert_eq!(s(&[N, NW, W]).classify().unwrap(), ClassId::Singular(1));
        assert_eq!(s(&[N, S, W]).classify().unwrap(), ClassId::Singular(2));
    }

    #[test]
    fn classify_commutes_with_reflect() {
        for t in StepSet::all_triples() {
            assert_eq!(t.classify().unwrap(), t.reflect().classify().unwrap());
        }
    }

    #[test]
    fn sweep_aggregates() {
        let sweep = enumerate_all_classes();
        let s = sweep.summary;
        assert_eq!(s.triples, 56);
        assert_eq!(s.empty_sets, 10);
        assert_eq!(s.singular_sets, 35);
        assert_eq!(s.nonsingular_sets, 11);
        assert_eq!(s.reflect_invariant_nonempty, 4);
        assert_eq!(s.reflect_classes_nonempty, 25);
        assert_eq!(s.singular_reflect_classes, 18);
        assert_eq!(s.nonsingular_reflect_classes, 7);
        assert_eq!(s.final_classes, 11);
    }

    #[test]
    fn nonsingular_reflect_invariants() {
        let invariant: Vec<StepSet> = StepSet::all_triples()
            .into_iter()
            .filter(|t| {
                matches!(t.classify().unwrap(), ClassId::NonSingular(_)) && t.reflect() == *t
            })
            .collect();
        assert_eq!(
            invariant,
            vec![s(&[N, E, SW]), s(&[NE, S, W]), s(&[NE, SE, NW])]
        );
    }
}
