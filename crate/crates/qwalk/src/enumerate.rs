//! Exact dynamic-programming oracle for quarter-plane walk counts.
//!
//! `WalkTable` holds, for every length n up to a bound, the number of walks
//! ending at each point (i,j). A length-n walk cannot leave the n x n box,
//! so the table is exact with no truncation error. Counts are
//! arbitrary-precision integers from the start. Every closed form in the
//! crate is verified against these numbers.

use crate::bivar::{Poly2, Series2};
use crate::rat::Rat;
use crate::series::{BiSeries, TSeries, XLaurent};
use crate::stepset::StepSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::io::Write;

/// Endpoint-resolved walk counts a_{ij}(n) for n <= n_max.
#[derive(Clone)]
pub struct WalkTable {
    stepset: StepSet,
    n_max: usize,
    /// layers[n] is an (n_max+1) x (n_max+1) row-major grid.
    layers: Vec<Vec<BigUint>>,
}

/// Totals per length, terms[0] = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence(pub Vec<BigUint>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    XAxis,
    YAxis,
    Origin,
    Diagonal,
}

/// Count walks of every length up to `n_max`, layer by layer.
pub fn count_walks(s: StepSet, n_max: usize) -> WalkTable {
    let w = n_max + 1;
    let steps = s.steps();
    let mut layers = Vec::with_capacity(n_max + 1);
    let mut cur = vec![BigUint::zero(); w * w];
    cur[0] = BigUint::one();
    layers.push(cur);
    for n in 1..=n_max {
        let prev = &layers[n - 1];
        let mut next = vec![BigUint::zero(); w * w];
        for i in 0..=n {
            for j in 0..=n {
                let mut acc = BigUint::zero();
                for &(a, b) in &steps {
                    let (pi, pj) = (i as i64 - a as i64, j as i64 - b as i64);
                    if pi >= 0 && pj >= 0 && pi < w as i64 && pj < w as i64 {
                        acc += &prev[pi as usize * w + pj as usize];
                    }
                }
                next[i * w + j] = acc;
            }
        }
        layers.push(next);
    }
    WalkTable {
        stepset: s,
        n_max,
        layers,
    }
}

impl WalkTable {
    pub fn stepset(&self) -> StepSet {
        self.stepset
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Count of length-n walks ending at (i,j); zero outside the table box.
    pub fn count(&self, n: usize, i: usize, j: usize) -> BigUint {
        let w = self.n_max + 1;
        if n > self.n_max || i >= w || j >= w {
            return BigUint::zero();
        }
        self.layers[n][i * w + j].clone()
    }

    /// Corrupt one entry (tests of the fundamental-equation checker).
    pub fn corrupt(&mut self, n: usize, i: usize, j: usize) {
        let w = self.n_max + 1;
        self.layers[n][i * w + j] += BigUint::one();
    }

    pub fn totals(&self) -> CountSequence {
        CountSequence(
            self.layers
                .iter()
                .map(|l| l.iter().fold(BigUint::zero(), |a, b| a + b))
                .collect(),
        )
    }

    pub fn origin_returns(&self) -> Vec<BigUint> {
        (0..=self.n_max).map(|n| self.count(n, 0, 0)).collect()
    }

    /// Series slice of the table. `XAxis` gives the Q(x,0;t) truncation,
    /// `YAxis` the Q(0,y;t) truncation (tracked in its own variable),
    /// `Origin` the Q(0,0;t) truncation, `Diagonal` the series over (i,i)
    /// endpoints weighted x^i.
    pub fn slice(&self, which: Slice) -> BiSeries {
        let coeffs: Vec<XLaurent> = (0..=self.n_max)
            .map(|n| {
                let mut terms: Vec<(i64, Rat)> = Vec::new();
                match which {
                    Slice::XAxis => {
                        for i in 0..=n {
                            let c = self.count(n, i, 0);
                            if !c.is_zero() {
                                terms.push((i as i64, Rat::from_integer(c.into())));
                            }
                        }
                    }
                    Slice::YAxis => {
                        for j in 0..=n {
                            let c = self.count(n, 0, j);
                            if !c.is_zero() {
                                terms.push((j as i64, Rat::from_integer(c.into())));
                            }
                        }
                    }
                    Slice::Origin => {
                        let c = self.count(n, 0, 0);
                        if !c.is_zero() {
                            terms.push((0, Rat::from_integer(c.into())));
                        }
                    }
                    Slice::Diagonal => {
                        for i in 0..=n {
                            let c = self.count(n, i, i);
                            if !c.is_zero() {
                                terms.push((i as i64, Rat::from_integer(c.into())));
                            }
                        }
                    }
                }
                XLaurent::from_terms(terms)
            })
            .collect();
        BiSeries::from_coeffs(0, coeffs, self.n_max as i64)
    }

    /// Slice totals as a plain t-series (no endpoint weight).
    pub fn slice_totals(&self, which: Slice) -> TSeries {
        let sl = self.slice(which);
        TSeries::from_coeffs(
            0,
            (0..=self.n_max as i64).map(|n| sl.coeff(n).eval_at_one()).collect(),
            self.n_max as i64,
        )
    }

    /// The full Q(x,y;t) truncation as a bivariate series.
    pub fn as_series2(&self) -> Series2 {
        let coeffs: Vec<Poly2> = (0..=self.n_max)
            .map(|n| {
                let mut p = Poly2::zero();
                for i in 0..=n {
                    for j in 0..=n {
                        let c = self.count(n, i, j);
                        if !c.is_zero() {
                            p.add_term(i as i64, j as i64, Rat::from_integer(c.into()));
                        }
                    }
                }
                p
            })
            .collect();
        Series2::from_coeffs(0, coeffs, self.n_max as i64)
    }

    /// JSON-lines export: one record per (n,i,j,count) with count > 0.
    pub fn write_jsonl<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for n in 0..=self.n_max {
            for i in 0..=n {
                for j in 0..=n {
                    let c = self.count(n, i, j);
                    if !c.is_zero() {
                        writeln!(out, r#"{{"n":{n},"i":{i},"j":{j},"count":"{c}"}}"#)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl CountSequence {
    pub fn terms(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// CSV export with header `n,count`.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "n,count")?;
        for (n, c) in self.0.iter().enumerate() {
            writeln!(out, "{n},{c}")?;
        }
        Ok(())
    }

    pub fn as_tseries(&self, order: i64) -> TSeries {
        TSeries::from_coeffs(
            0,
            self.0
                .iter()
                .take(order as usize + 1)
                .map(|c| Rat::from_integer(c.clone().into()))
                .collect(),
            order.min(self.0.len() as i64 - 1),
        )
    }
}

/// Totals only, keeping a single rolling layer. Suitable for long sequences
/// (recurrence guessing) where the full table would be wasteful.
pub fn totals_sequence(s: StepSet, n_max: usize) -> CountSequence {
    let w = n_max + 1;
    let steps = s.steps();
    let mut cur = vec![BigUint::zero(); w * w];
    cur[0] = BigUint::one();
    let mut out = vec![BigUint::one()];
    for n in 1..=n_max {
        let mut next = vec![BigUint::zero(); w * w];
        for i in 0..=n {
            for j in 0..=n {
                let mut acc = BigUint::zero();
                for &(a, b) in &steps {
                    let (pi, pj) = (i as i64 - a as i64, j as i64 - b as i64);
                    if pi >= 0 && pj >= 0 {
                        acc += &cur[pi as usize * w + pj as usize];
                    }
                }
                next[i * w + j] = acc;
            }
        }
        out.push(next.iter().fold(BigUint::zero(), |a, b| a + b));
        cur = next;
    }
    CountSequence(out)
}

/// Check the fundamental functional equation of Q(x,y;t) coefficientwise
/// against the table, through order n_max:
///
/// Q = 1 + t Σ_{(i,j)} x^i y^j Q − t ȳ Σ_{(i,−1)} x^i Q(x,0)
///       − t x̄ Σ_{(−1,j)} y^j Q(0,y) + χ[(−1,−1)] t x̄ ȳ Q(0,0).
pub fn verify_fundamental_equation(s: StepSet, table: &WalkTable) -> bool {
    fundamental_equation_residual(s, table).is_zero()
}

/// The residual of the fundamental equation as a bivariate series.
pub fn fundamental_equation_residual(s: StepSet, table: &WalkTable) -> Series2 {
    let n = table.n_max as i64;
    let q = table.as_series2();
    let one = Series2::one(n);
    let t = Series2::t(n);
    let mut rhs = one.clone();
    for (i, j) in s.steps() {
        rhs = &rhs + &(&(&t * &q) * &Poly2::monomial(i as i64, j as i64, Rat::one()));
    }
    let qx0 = Series2::from_biseries_x(&table.slice(Slice::XAxis));
    let q0y = Series2::from_biseries_y(&table.slice(Slice::YAxis));
    let q00 = Series2::from_biseries_x(&table.slice(Slice::Origin));
    for (i, j) in s.steps() {
        if j == -1 {
            rhs = &rhs - &(&(&t * &qx0) * &Poly2::monomial(i as i64, -1, Rat::one()));
        }
        if i == -1 {
            rhs = &rhs - &(&(&t * &q0y) * &Poly2::monomial(-1, j as i64, Rat::one()));
        }
    }
    if s.steps().contains(&(-1, -1)) {
        rhs = &rhs + &(&(&t * &q00) * &Poly2::monomial(-1, -1, Rat::one()));
    }
    &q - &rhs
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepset::Direction::*;

    fn set(dirs: &[crate::stepset::Direction]) -> StepSet {
        StepSet::from_directions(dirs.iter().copied())
    }

    fn totals_u64(s: StepSet, n: usize) -> Vec<u64> {
        count_walks(s, n)
            .totals()
            .terms()
            .iter()
            .map(|c| crate::rat::biguint_u64(c).unwrap())
            .collect()
    }

    #[test]
    fn motzkin_totals_for_class7() {
        assert_eq!(totals_u64(set(&[N, SE, W]), 6), vec![1, 1, 2, 4, 9, 21, 51]);
    }

    #[test]
    fn class10_hand_enumeration() {
        assert_eq!(totals_u64(set(&[NE, SE, NW]), 3), vec![1, 1, 3, 7]);
    }

    #[test]
    fn length_zero_table() {
        let w = count_walks(set(&[NE, S, W]), 0);
        assert_eq!(w.count(0, 0, 0), BigUint::one());
        assert_eq!(w.totals().terms(), &[BigUint::one()]);
    }

    #[test]
    fn class1_is_unconstrained() {
        assert_eq!(totals_u64(set(&[N, NE, E]), 3)[3], 27);
    }

    #[test]
    fn kreweras_prefix_counts() {
        // oracle-computed; length 2 admits NE·NE, NE·S, NE·W
        assert_eq!(totals_u64(set(&[NE, S, W]), 2), vec![1, 1, 3]);
    }

    #[test]
    fn kreweras_slices() {
        let w = count_walks(set(&[NE, S, W]), 6);
        let xax = w.slice(Slice::XAxis);
        // 1 + x t^2 + 2 t^3 + ...
        assert_eq!(xax.coeff(0).get(0), crate::rat::rat(1));
        assert!(xax.coeff(1).is_zero());
        assert_eq!(xax.coeff(2).get(1), crate::rat::rat(1));
        assert_eq!(xax.coeff(3).get(0), crate::rat::rat(2));
        let origin = w.slice(Slice::Origin);
        assert_eq!(origin.coeff(3).get(0), crate::rat::rat(2));
        assert_eq!(origin.coeff(0).get(0), crate::rat::rat(1));
    }

    #[test]
    fn empty_sets_have_trivial_tables() {
        for t in StepSet::all_triples() {
            if !t.has_valid_walk() {
                let totals = totals_u64(t, 5);
                assert_eq!(totals, vec![1, 0, 0, 0, 0, 0]);
            }
        }
    }

    #[test]
    fn streaming_totals_agree_with_table() {
        for k in [5u8, 8, 10] {
            let s = StepSet::class_representative(k);
            assert_eq!(totals_sequence(s, 12).0, count_walks(s, 12).totals().0);
        }
    }

    #[test]
    fn reflect_covariance() {
        for k in 5..=11 {
            let s = StepSet::class_representative(k);
            let a = count_walks(s, 8);
            let b = count_walks(s.reflect(), 8);
            for n in 0..=8 {
                for i in 0..=n {
                    for j in 0..=n {
                        assert_eq!(a.count(n, i, j), b.count(n, j, i));
                    }
                }
            }
        }
    }

    #[test]
    fn loop_reversal_bijection() {
        // origin returns of s and rev(s) agree (reverse the step sequence)
        for t in StepSet::all_triples() {
            if t.has_valid_walk() && t.rev().has_valid_walk() {
                let a = count_walks(t, 10);
                let b = count_walks(t.rev(), 10);
                assert_eq!(a.origin_returns(), b.origin_returns(), "{t}");
            }
        }
    }

    #[test]
    fn fundamental_equation_all_class_representatives() {
        for k in 5..=11 {
            let s = StepSet::class_representative(k);
            let w = count_walks(s, 12);
            assert!(verify_fundamental_equation(s, &w), "class {k}");
        }
        // and a singular representative with the corner term
        let s = set(&[N, NE, SW]);
        assert!(verify_fundamental_equation(s, &count_walks(s, 12)));
    }

    #[test]
    fn fundamental_equation_detects_corruption() {
        let s = StepSet::class_representative(10);
        let mut w = count_walks(s, 12);
        w.corrupt(5, 1, 1);
        assert!(!verify_fundamental_equation(s, &w));
    }

    #[test]
    fn totals_bounds_and_monotonicity() {
        for t in StepSet::all_triples() {
            let totals = count_walks(t, 10).totals();
            let mut bound = BigUint::one();
            for n in 0..=10usize {
                assert!(totals.terms()[n] <= bound);
                bound *= BigUint::from(3u32);
            }
            if t.steps().iter().any(|&(i, j)| i >= 0 && j >= 0) {
                for n in 0..10 {
                    assert!(totals.terms()[n] <= totals.terms()[n + 1], "{t}");
                }
            }
        }
    }

    #[test]
    fn axis_slice_equality_for_reflect_invariant_sets() {
        for k in [5u8, 6, 10] {
            let s = StepSet::class_representative(k);
            let w = count_walks(s, 10);
            let qx0 = w.slice(Slice::XAxis);
            let q0y = w.slice(Slice::YAxis);
            assert_eq!(&qx0 - &q0y, BiSeries::zero(10), "class {k}");
        }
    }

    #[test]
    fn csv_and_jsonl_exports() {
        let w = count_walks(set(&[NE, S, W]), 3);
        let mut csv = Vec::new();
        w.totals().write_csv(&mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        assert!(csv.starts_with("n,count\n0,1\n1,1\n2,3\n3,7\n"));
        let mut jl = Vec::new();
        w.write_jsonl(&mut jl).unwrap();
        let jl = String::from_utf8(jl).unwrap();
        assert!(jl.contains(r#"{"n":0,"i":0,"j":0,"count":"1"}"#));
        assert!(jl.contains(r#"{"n":3,"i":0,"j":0,"count":"2"}"#));
    }
}
