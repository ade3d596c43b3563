//! The group of the walk: birational generators, composition, orbit search.
//!
//! The two generators are the involutions swapping the kernel roots in each
//! variable: tau_y maps (x,y) to (x, c(x)/(a(x) y)) and tau_x mirrors it.
//! Group elements are pairs of reduced rational functions; equality is
//! affirmed only by exact cross-multiplied polynomial expansion, with a
//! deterministic point-evaluation prefilter to reject fast.

use crate::poly::{BPoly, RatFunc};
use crate::rat::big;
use crate::stepset::{ClassId, StepSet};
use num_bigint::BigInt;
use std::fmt;

/// A birational self-map of the (x,y) plane.
#[derive(Clone)]
pub struct RationalMap {
    pub x: RatFunc,
    pub y: RatFunc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// a, c, a~ or c~ vanishes: the kernel quadratic is degenerate and the
    /// group construction does not apply (singular-like model).
    DegenerateKernel(String),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::DegenerateKernel(s) => {
                write!(f, "degenerate kernel for {s}: group of the walk undefined")
            }
        }
    }
}

impl std::error::Error for GroupError {}

impl RationalMap {
    pub fn identity() -> RationalMap {
        RationalMap { x: RatFunc::var_x(), y: RatFunc::var_y() }
    }

    pub fn is_identity(&self) -> bool {
        self.x.equals(&RatFunc::var_x()) && self.y.equals(&RatFunc::var_y())
    }

    pub fn max_degree(&self) -> u32 {
        self.x.max_degree().max(self.y.max_degree())
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x,y) -> ({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Fixed evaluation points for the rejection prefilter; equality is decided
/// by exact expansion, never by these.
const PREFILTER_POINTS: [(i64, i64); 2] = [(3, 5), (7, 11)];

/// f == g as maps, by componentwise cross-multiplication.
pub fn maps_equal(f: &RationalMap, g: &RationalMap) -> bool {
    for (px, py) in PREFILTER_POINTS {
        let (bx, by) = (big(px), big(py));
        if let (Some((an, ad)), Some((bn, bd))) = (f.x.eval(&bx, &by), g.x.eval(&bx, &by)) {
            if an * bd != bn * ad {
                return false;
            }
        }
        if let (Some((an, ad)), Some((bn, bd))) = (f.y.eval(&bx, &by), g.y.eval(&bx, &by)) {
            if an * bd != bn * ad {
                return false;
            }
        }
    }
    f.x.equals(&g.x) && f.y.equals(&g.y)
}

/// f after g: substitute g's components into f.
pub fn compose(f: &RationalMap, g: &RationalMap) -> RationalMap {
    RationalMap {
        x: f.x.subst(&g.x, &g.y),
        y: f.y.subst(&g.x, &g.y),
    }
}

/// Kernel coefficient polynomials as univariate BPoly in x (for a, sigma, c)
/// or in y (mirrored), with the overall minus sign dropped: a_pos = sum of
/// x^(i+1) over up steps, etc.
fn kernel_polys(s: StepSet) -> (BPoly, BPoly, BPoly, BPoly) {
    let mut a = BPoly::zero();
    let mut c = BPoly::zero();
    let mut a_m = BPoly::zero();
    let mut c_m = BPoly::zero();
    for (i, j) in s.steps() {
        match j {
            1 => a.add_term((i + 1) as u32, 0, big(1)),
            -1 => c.add_term((i + 1) as u32, 0, big(1)),
            _ => {}
        }
        match i {
            1 => a_m.add_term(0, (j + 1) as u32, big(1)),
            -1 => c_m.add_term(0, (j + 1) as u32, big(1)),
            _ => {}
        }
    }
    (a, c, a_m, c_m)
}

/// The generator pair (tau_x, tau_y) of the group of the walk.
pub fn generators(s: StepSet) -> Result<(RationalMap, RationalMap), GroupError> {
    let (a, c, a_m, c_m) = kernel_polys(s);
    if a.is_zero() || c.is_zero() || a_m.is_zero() || c_m.is_zero() {
        return Err(GroupError::DegenerateKernel(s.to_string()));
    }
    let tau_y = RationalMap {
        x: RatFunc::var_x(),
        y: RatFunc::new(c, &a * &BPoly::var_y()),
    };
    let tau_x = RationalMap {
        x: RatFunc::new(c_m, &a_m * &BPoly::var_x()),
        y: RatFunc::var_y(),
    };
    Ok((tau_x, tau_y))
}

/// Sum over steps of x^i y^j as a rational function (x^(i+1) y^(j+1) / xy).
fn step_symbol(s: StepSet) -> RatFunc {
    let mut num = BPoly::zero();
    for (i, j) in s.steps() {
        num.add_term((i + 1) as u32, (j + 1) as u32, big(1));
    }
    RatFunc::new(num, BPoly::monomial(1, 1, BigInt::from(1)))
}

/// K_r(tau(x,y)) = K_r(x,y) as an exact rational identity, for both
/// generators. Since K_r = 1 - t * S(x,y) with S the step symbol, the check
/// reduces to S(tau(x,y)) = S(x,y).
pub fn kernel_invariance_check(s: StepSet) -> Result<bool, GroupError> {
    let (tau_x, tau_y) = generators(s)?;
    let sym = step_symbol(s);
    let ok_x = sym.subst(&tau_x.x, &tau_x.y).equals(&sym);
    let ok_y = sym.subst(&tau_y.x, &tau_y.y).equals(&sym);
    Ok(ok_x && ok_y)
}

/// Outcome of the orbit search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitResult {
    /// Closure stabilized: a finite dihedral group of the given order.
    Finite { order: usize, dihedral_k: usize },
    /// No closure within the bounds; not a proof of infiniteness.
    ExceedsBound { element_bound: usize, degree_bound: u32, max_degree_seen: u32 },
}

/// Breadth-first closure of {tau_x, tau_y} under composition.
pub fn group_order(s: StepSet, element_bound: usize, degree_bound: u32) -> Result<OrbitResult, GroupError> {
    let (tau_x, tau_y) = generators(s)?;
    let gens = [tau_x.clone(), tau_y.clone()];
    let mut elements: Vec<RationalMap> = vec![RationalMap::identity()];
    let mut frontier: Vec<RationalMap> = vec![RationalMap::identity()];
    let mut max_degree_seen = tau_x.max_degree().max(tau_y.max_degree());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in &gens {
                let h = compose(g, e);
                max_degree_seen = max_degree_seen.max(h.max_degree());
                if h.max_degree() > degree_bound {
                    return Ok(OrbitResult::ExceedsBound { element_bound, degree_bound, max_degree_seen });
                }
                if !elements.iter().any(|k| maps_equal(k, &h)) && !next.iter().any(|k| maps_equal(k, &h)) {
                    next.push(h);
                }
            }
        }
        if elements.len() + next.len() > element_bound {
            return Ok(OrbitResult::ExceedsBound { element_bound, degree_bound, max_degree_seen });
        }
        elements.extend(next.iter().cloned());
        frontier = next;
    }
    let order = elements.len();
    // dihedral structure: (tau_x tau_y) has order exactly order/2
    let rho = compose(&tau_x, &tau_y);
    let k = order / 2;
    let mut pow = RationalMap::identity();
    for i in 1..=k {
        pow = compose(&rho, &pow);
        if i < k {
            assert!(!pow.is_identity(), "rotation closed early: group not dihedral of claimed order");
        }
    }
    assert!(pow.is_identity(), "(tau_x tau_y)^(order/2) must be the identity");
    Ok(OrbitResult::Finite { order, dihedral_k: k })
}

/// Reduced degrees of the alternating words (tau_x tau_y)^n, a growth
/// diagnostic supporting infiniteness evidence.
pub fn alternating_degree_growth(s: StepSet, n_words: usize) -> Result<Vec<u32>, GroupError> {
    let (tau_x, tau_y) = generators(s)?;
    let rho = compose(&tau_x, &tau_y);
    let mut out = Vec::with_capacity(n_words);
    let mut cur = RationalMap::identity();
    for _ in 0..n_words {
        cur = compose(&rho, &cur);
        out.push(cur.max_degree());
    }
    Ok(out)
}

/// One row of the finiteness survey.
#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub steps: StepSet,
    pub class: ClassId,
    pub group: Option<OrbitResult>,
    pub x_sym: bool,
    pub y_sym: bool,
    pub rev_inv: bool,
    pub reflect_rev_inv: bool,
    pub is_kreweras_or_rev: bool,
    /// finiteness <-> disjunction of the four predicates (vacuously true for
    /// rows without a group).
    pub conjecture_consistent: bool,
}

impl SurveyRow {
    pub fn predicate_disjunction(&self) -> bool {
        self.x_sym || self.y_sym || self.rev_inv || self.reflect_rev_inv || self.is_kreweras_or_rev
    }
}

/// The finiteness criteria over all 56 triples: group order for every
/// non-singular model, the four combinatorial predicates, and the
/// biconditional check.
pub fn finite_group_survey(element_bound: usize, degree_bound: u32) -> Vec<SurveyRow> {
    let kreweras = StepSet::class_representative(5);
    StepSet::all_triples()
        .into_iter()
        .map(|s| {
            let class = s.classify().expect("triples classify");
            let rep = s.symmetry_report();
            let is_k = s == kreweras || s.rev() == kreweras;
            let group = match class {
                ClassId::NonSingular(_) => {
                    Some(group_order(s, element_bound, degree_bound).expect("non-singular kernel is non-degenerate"))
                }
                _ => None,
            };
            let consistent = match &group {
                Some(OrbitResult::Finite { .. }) => {
                    rep.x_axis_symmetric
                        || rep.y_axis_symmetric
                        || rep.rev_invariant
                        || rep.reflect_rev_invariant
                        || is_k
                }
                Some(OrbitResult::ExceedsBound { .. }) => {
                    !(rep.x_axis_symmetric
                        || rep.y_axis_symmetric
                        || rep.rev_invariant
                        || rep.reflect_rev_invariant
                        || is_k)
                }
                None => true,
            };
            SurveyRow {
                steps: s,
                class,
                group,
                x_sym: rep.x_axis_symmetric,
                y_sym: rep.y_axis_symmetric,
                rev_inv: rep.rev_invariant,
                reflect_rev_inv: rep.reflect_rev_invariant,
                is_kreweras_or_rev: is_k,
                conjecture_consistent: consistent,
            }
        })
        .collect()
}

/// CSV emission for the survey (columns fixed by the reporting interface).
pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(
        "steps,singular,group_order_or_bound,x_sym,y_sym,rev_inv,reflect_rev_inv,conjecture_consistent\n",
    );
    for r in rows {
        let singular = matches!(r.class, ClassId::Singular(_));
        let group = match &r.group {
            Some(OrbitResult::Finite { order, .. }) => order.to_string(),
            Some(OrbitResult::ExceedsBound { element_bound, .. }) => format!(">{element_bound}"),
            None => String::from("-"),
        };
        out.push_str(&format!(
            "\"{}\",{},{},{},{},{},{},{}\n",
            r.steps, singular, group, r.x_sym, r.y_sym, r.rev_inv, r.reflect_rev_inv, r.conjecture_consistent
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepset::Direction::*;

    fn set(dirs: &[crate::stepset::Direction]) -> StepSet {
        StepSet::from_directions(dirs.iter().copied())
    }

    #[test]
    fn kreweras_generators_match_table() {
        let (tx, ty) = generators(set(&[NE, S, W])).unwrap();
        // tau_x = (1/(xy), y), tau_y = (x, 1/(xy))
        let inv_xy = RatFunc::new(BPoly::one(), BPoly::monomial(1, 1, big_int(1)));
        assert!(tx.x.equals(&inv_xy) && tx.y.equals(&RatFunc::var_y()));
        assert!(ty.y.equals(&inv_xy) && ty.x.equals(&RatFunc::var_x()));
    }

    fn big_int(v: i64) -> num_bigint::BigInt {
        num_bigint::BigInt::from(v)
    }

    #[test]
    fn class7_generators_match_table() {
        let (tx, ty) = generators(set(&[N, SE, W])).unwrap();
        // tau_x = (y/x, y), tau_y = (x, x/y)
        assert!(tx.x.equals(&RatFunc::new(BPoly::var_y(), BPoly::var_x())));
        assert!(ty.y.equals(&RatFunc::new(BPoly::var_x(), BPoly::var_y())));
    }

    #[test]
    fn class8_generators_match_table() {
        let (tx, ty) = generators(set(&[N, SE, SW])).unwrap();
        // tau_x = (1/x, y), tau_y = (x, (x^2+1)/(xy))
        assert!(tx.x.equals(&RatFunc::new(BPoly::one(), BPoly::var_x())));
        let mut num = BPoly::zero();
        num.add_term(2, 0, big_int(1));
        num.add_term(0, 0, big_int(1));
        assert!(ty.y.equals(&RatFunc::new(num, BPoly::monomial(1, 1, big_int(1)))));
    }

    #[test]
    fn generators_are_involutions() {
        for t in StepSet::all_triples() {
            if let Ok((tx, ty)) = generators(t) {
                assert!(maps_equal(&compose(&tx, &tx), &RationalMap::identity()), "{t}");
                assert!(maps_equal(&compose(&ty, &ty), &RationalMap::identity()), "{t}");
            }
        }
    }

    #[test]
    fn composition_order_three_for_kreweras() {
        let (tx, ty) = generators(set(&[NE, S, W])).unwrap();
        let rho = compose(&tx, &ty);
        let rho2 = compose(&rho, &rho);
        let rho3 = compose(&rho, &rho2);
        assert!(!rho2.is_identity());
        assert!(rho3.is_identity());
    }

    #[test]
    fn maps_equal_modulo_representation() {
        let a = RationalMap {
            x: RatFunc::var_x(),
            y: RatFunc::new(BPoly::one(), BPoly::monomial(1, 1, big_int(1))),
        };
        let b = RationalMap {
            x: RatFunc::var_x(),
            y: RatFunc::new(BPoly::monomial(1, 0, big_int(3)), BPoly::monomial(2, 1, big_int(3))),
        };
        assert!(maps_equal(&a, &b));
        let (tx, ty) = generators(set(&[NE, S, W])).unwrap();
        assert!(!maps_equal(&tx, &ty));
    }

    #[test]
    fn kernel_invariance_for_all_nondegenerate_triples() {
        let mut checked = 0;
        for t in StepSet::all_triples() {
            if generators(t).is_ok() {
                assert!(kernel_invariance_check(t).unwrap(), "{t}");
                checked += 1;
            }
        }
        assert!(checked >= 11);
    }

    #[test]
    fn orbit_orders() {
        assert_eq!(
            group_order(set(&[NE, S, W]), 200, 64).unwrap(),
            OrbitResult::Finite { order: 6, dihedral_k: 3 }
        );
        assert_eq!(
            group_order(set(&[N, SE, SW]), 200, 64).unwrap(),
            OrbitResult::Finite { order: 4, dihedral_k: 2 }
        );
        assert!(matches!(
            group_order(set(&[NE, SE, NW]), 200, 64).unwrap(),
            OrbitResult::ExceedsBound { .. }
        ));
        assert!(matches!(
            group_order(set(&[N, NW, SE]), 200, 64).unwrap(),
            OrbitResult::ExceedsBound { .. }
        ));
    }

    #[test]
    fn reflect_swaps_generators() {
        for k in 5..=11u8 {
            let s = StepSet::class_representative(k);
            let (tx, ty) = generators(s).unwrap();
            let (rx, ry) = generators(s.reflect()).unwrap();
            // swapping variables of tau_y(s) gives tau_x(reflect(s))
            let swap = |r: &RatFunc| {
                let sx = RatFunc::var_y();
                let sy = RatFunc::var_x();
                r.subst(&sx, &sy)
            };
            assert!(rx.x.equals(&swap(&ty.y)), "class {k}");
            assert!(ry.y.equals(&swap(&tx.x)), "class {k}");
        }
    }

    #[test]
    fn degree_growth_monotone_for_class10() {
        let degs = alternating_degree_growth(set(&[NE, SE, NW]), 6).unwrap();
        for w in degs.windows(2) {
            assert!(w[0] < w[1], "degrees {degs:?}");
        }
    }
}
