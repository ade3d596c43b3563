//! Truncated series algebra over exact rationals.
//!
//! Two series types cover everything the closed forms need:
//!
//! * [`TSeries`] — Laurent series in t with rational coefficients and an
//!   explicit truncation order (finitely many negative powers allowed).
//! * [`BiSeries`] — Laurent series in t whose coefficients are Laurent
//!   polynomials in a catalytic variable (written x throughout; callers may
//!   read it as y).
//!
//! All arithmetic is exact through the truncation order; binary operations
//! truncate to the smaller order of their inputs. Square roots, inverses and
//! algebraic fixed points are computed coefficient-recursively, and the
//! kernel of a step set together with its y-roots lives here too.

use crate::rat::Rat;
use crate::stepset::StepSet;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Division by a series that is zero through its truncation order.
    ZeroDivisor,
    /// Division by a bivariate series whose leading t-coefficient is not a
    /// single monomial in x.
    NonMonomialLead(String),
    /// Square root of a series whose constant term is not 1.
    SqrtConstantNotOne(String),
    /// A fixed-point functional failed to stabilize (no valuation gain).
    NonContracting { iterations: usize },
    /// Kernel quadratic degenerate in the requested variable (a or c zero);
    /// the model is singular-like and has no root pair.
    DegenerateKernel,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ZeroDivisor => write!(f, "division by zero series"),
            SeriesError::NonMonomialLead(s) => {
                write!(f, "leading coefficient is not an invertible monomial: {s}")
            }
            SeriesError::SqrtConstantNotOne(s) => {
                write!(f, "sqrt needs unit constant term, got {s}")
            }
            SeriesError::NonContracting { iterations } => {
                write!(f, "fixed point did not stabilize after {iterations} iterations")
            }
            SeriesError::DegenerateKernel => write!(f, "kernel quadratic is degenerate"),
        }
    }
}

impl std::error::Error for SeriesError {}

// ---------------------------------------------------------------------------
// XLaurent: Laurent polynomial in one variable over Rat
// ---------------------------------------------------------------------------

/// Laurent polynomial in x with a tight exponent window.
#[derive(Clone, PartialEq, Eq)]
pub struct XLaurent {
    lo: i64,
    coeffs: Vec<Rat>, // index 0 <-> x^lo; first and last entries nonzero
}

impl XLaurent {
    pub fn zero() -> XLaurent {
        XLaurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> XLaurent {
        XLaurent::monomial(0, c)
    }

    pub fn one() -> XLaurent {
        XLaurent::constant(Rat::one())
    }

    pub fn monomial(exp: i64, c: Rat) -> XLaurent {
        if c.is_zero() {
            XLaurent::zero()
        } else {
            XLaurent { lo: exp, coeffs: vec![c] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> XLaurent {
        let mut out = XLaurent::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.lo = exp;
            self.coeffs.push(c);
            return;
        }
        let hi = self.lo + self.coeffs.len() as i64 - 1;
        if exp < self.lo {
            let mut v = vec![Rat::zero(); (self.lo - exp) as usize];
            v.extend(std::mem::take(&mut self.coeffs));
            self.coeffs = v;
            self.lo = exp;
        } else if exp > hi {
            self.coeffs.extend(std::iter::repeat(Rat::zero()).take((exp - hi) as usize));
        }
        let idx = (exp - self.lo) as usize;
        self.coeffs[idx] = std::mem::take(&mut self.coeffs[idx]) + c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.lo += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, exp: i64) -> Rat {
        if exp < self.lo {
            return Rat::zero();
        }
        self.coeffs.get((exp - self.lo) as usize).cloned().unwrap_or_else(Rat::zero)
    }

    /// (lo, hi) window of nonzero exponents; None for the zero polynomial.
    pub fn window(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    /// As a single (exponent, coefficient) pair when the polynomial is a
    /// monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rat)> {
        let mut it = self.terms();
        match (it.next(), it.next()) {
            (Some(t), None) => Some(t),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> XLaurent {
        if c.is_zero() {
            return XLaurent::zero();
        }
        XLaurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_xpow(&self, k: i64) -> XLaurent {
        if self.is_zero() {
            return XLaurent::zero();
        }
        XLaurent { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    /// Substitute x -> 1/x.
    pub fn subs_xbar(&self) -> XLaurent {
        XLaurent::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    pub fn eval_at_one(&self) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.terms().fold(Rat::zero(), |acc, (e, c)| {
            let p = if e >= 0 {
                pow_rat(x, e as u32)
            } else {
                pow_rat(x, (-e) as u32).recip()
            };
            acc + c * p
        })
    }

    /// Strictly positive, zero, and strictly negative exponent parts.
    pub fn split(&self) -> (XLaurent, XLaurent, XLaurent) {
        let pos = XLaurent::from_terms(self.terms().filter(|(e, _)| *e > 0).map(|(e, c)| (e, c.clone())));
        let zer = XLaurent::monomial(0, self.get(0));
        let neg = XLaurent::from_terms(self.terms().filter(|(e, _)| *e < 0).map(|(e, c)| (e, c.clone())));
        (pos, zer, neg)
    }

    /// Exact division by another Laurent polynomial; None when not exact.
    /// Both sides are normalized to ordinary polynomials (shift out the
    /// lowest exponent), long-divided, and the quotient shifted back.
    pub fn div_exact(&self, d: &XLaurent) -> Option<XLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(XLaurent::zero());
        }
        let (nlo, _) = self.window().unwrap();
        let (dlo, dhi) = d.window().unwrap();
        let den = d.mul_xpow(-dlo);
        let dhi = dhi - dlo;
        let dlead = den.get(dhi);
        let mut rem = self.mul_xpow(-nlo);
        let mut q = XLaurent::zero();
        while let Some((_, rhi)) = rem.window() {
            if rhi < dhi {
                return None; // nonzero remainder of lower degree
            }
            let qexp = rhi - dhi;
            let qc = rem.get(rhi) / &dlead;
            q.add_term(qexp, qc.clone());
            rem = &rem - &den.scale(&qc).mul_xpow(qexp);
        }
        Some(q.mul_xpow(nlo - dlo))
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl Add for &XLaurent {
    type Output = XLaurent;
    fn add(self, rhs: &XLaurent) -> XLaurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &XLaurent {
    type Output = XLaurent;
    fn sub(self, rhs: &XLaurent) -> XLaurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &XLaurent {
    type Output = XLaurent;
    fn mul(self, rhs: &XLaurent) -> XLaurent {
        if self.is_zero() || rhs.is_zero() {
            return XLaurent::zero();
        }
        let lo = self.lo + rhs.lo;
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = std::mem::take(&mut coeffs[i + j]) + a * b;
                }
            }
        }
        let mut out = XLaurent { lo, coeffs };
        out.trim();
        out
    }
}

impl Neg for &XLaurent {
    type Output = XLaurent;
    fn neg(self) -> XLaurent {
        self.scale(&(-Rat::one()))
    }
}

impl fmt::Display for XLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for XLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// TSeries
// ---------------------------------------------------------------------------

/// Truncated Laurent series in t over Rat, exact through `order` inclusive.
#[derive(Clone)]
pub struct TSeries {
    lo: i64,
    coeffs: Vec<Rat>, // index 0 <-> t^lo
    order: i64,
}

impl TSeries {
    pub fn zero(order: i64) -> TSeries {
        TSeries { lo: order + 1, coeffs: Vec::new(), order }
    }

    pub fn constant(c: Rat, order: i64) -> TSeries {
        TSeries::from_coeffs(0, vec![c], order)
    }

    pub fn one(order: i64) -> TSeries {
        TSeries::constant(Rat::one(), order)
    }

    /// t itself.
    pub fn t(order: i64) -> TSeries {
        TSeries::from_coeffs(1, vec![Rat::one()], order)
    }

    pub fn monomial(exp: i64, c: Rat, order: i64) -> TSeries {
        TSeries::from_coeffs(exp, vec![c], order)
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<Rat>, order: i64) -> TSeries {
        let mut s = TSeries { lo, coeffs, order };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.lo + self.coeffs.len() as i64 - 1 > self.order {
            self.coeffs.truncate((self.order - self.lo + 1).max(0) as usize);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.lo = self.order + 1;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Valuation (lowest nonzero exponent); order+1 for the zero series.
    pub fn valuation(&self) -> i64 {
        self.lo
    }

    pub fn coeff(&self, n: i64) -> Rat {
        if n < self.lo {
            return Rat::zero();
        }
        debug_assert!(n <= self.order, "coefficient {n} beyond truncation order {}", self.order);
        self.coeffs.get((n - self.lo) as usize).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs_from(&self, from: i64, to: i64) -> Vec<Rat> {
        (from..=to).map(|n| self.coeff(n)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, order: i64) -> TSeries {
        assert!(order <= self.order, "cannot extend a series past its exact order");
        TSeries::from_coeffs(self.lo, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Rat) -> TSeries {
        TSeries::from_coeffs(self.lo, self.coeffs.iter().map(|a| a * c).collect(), self.order)
    }

    /// Multiply by t^k (k may be negative; exactness window shifts with it).
    pub fn shift(&self, k: i64) -> TSeries {
        TSeries::from_coeffs(self.lo + k, self.coeffs.clone(), self.order + k)
    }

    /// Multiplicative inverse; the series must be nonzero.
    pub fn inv(&self) -> Result<TSeries, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        let v = self.lo;
        let rel = (self.order - v) as usize; // unit part exact through t^rel
        let u0 = &self.coeffs[0];
        let mut inv = vec![Rat::zero(); rel + 1];
        inv[0] = u0.recip();
        for n in 1..=rel {
            let mut acc = Rat::zero();
            for k in 1..=n {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
                if !a.is_zero() {
                    acc += a * &inv[n - k];
                }
            }
            inv[n] = -acc / u0;
        }
        Ok(TSeries::from_coeffs(-v, inv, self.order - 2 * v))
    }

    pub fn div(&self, rhs: &TSeries) -> Result<TSeries, SeriesError> {
        Ok(self * &rhs.inv()?)
    }

    /// Square root with g(0) = 1; requires constant term exactly 1.
    pub fn sqrt(&self) -> Result<TSeries, SeriesError> {
        if self.lo < 0 || !self.coeff(0).is_one() || self.lo > 0 {
            return Err(SeriesError::SqrtConstantNotOne(format!("{self}")));
        }
        let n = self.order as usize;
        let mut g = vec![Rat::zero(); n + 1];
        g[0] = Rat::one();
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..m {
                acc += &g[k] * &g[m - k];
            }
            g[m] = (self.coeff(m as i64) - acc) / Rat::from_integer(2.into());
        }
        Ok(TSeries::from_coeffs(0, g, self.order))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().enumerate().fold(Rat::zero(), |acc, (i, c)| {
            let e = self.lo + i as i64;
            assert!(e >= 0, "evaluation needs a power series");
            acc + c * pow_rat(x, e as u32)
        })
    }
}

impl PartialEq for TSeries {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let lo = self.lo.min(other.lo);
        (lo..=order).all(|n| self.coeff(n) == other.coeff(n))
    }
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        let lo = self.lo.min(rhs.lo);
        TSeries::from_coeffs(lo, (lo..=order).map(|n| self.coeff(n) + rhs.coeff(n)).collect(), order)
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        let lo = self.lo.min(rhs.lo);
        TSeries::from_coeffs(lo, (lo..=order).map(|n| self.coeff(n) - rhs.coeff(n)).collect(), order)
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        let order = (self.order + rhs.lo).min(rhs.order + self.lo);
        if self.is_zero() || rhs.is_zero() {
            return TSeries::zero(order);
        }
        let lo = self.lo + rhs.lo;
        let mut out = vec![Rat::zero(); (order - lo + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ei = self.lo + i as i64;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let ej = rhs.lo + j as i64;
                if ei + ej > order {
                    break;
                }
                if !b.is_zero() {
                    let idx = (ei + ej - lo) as usize;
                    out[idx] = std::mem::take(&mut out[idx]) + a * b;
                }
            }
        }
        TSeries::from_coeffs(lo, out, order)
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.scale(&(-Rat::one()))
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(t^{})", self.order + 1);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            let e = self.lo + i as i64;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
            first = false;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// BiSeries
// ---------------------------------------------------------------------------

/// Truncated Laurent series in t with Laurent-polynomial coefficients.
#[derive(Clone)]
pub struct BiSeries {
    lo: i64,
    coeffs: Vec<XLaurent>, // index 0 <-> t^lo
    order: i64,
}

impl BiSeries {
    pub fn zero(order: i64) -> BiSeries {
        BiSeries { lo: order + 1, coeffs: Vec::new(), order }
    }

    pub fn one(order: i64) -> BiSeries {
        BiSeries::from_coeffs(0, vec![XLaurent::one()], order)
    }

    pub fn t(order: i64) -> BiSeries {
        BiSeries::from_coeffs(1, vec![XLaurent::one()], order)
    }

    /// The catalytic variable x as a series.
    pub fn x(order: i64) -> BiSeries {
        BiSeries::from_coeffs(0, vec![XLaurent::monomial(1, Rat::one())], order)
    }

    pub fn xpow(e: i64, order: i64) -> BiSeries {
        BiSeries::from_coeffs(0, vec![XLaurent::monomial(e, Rat::one())], order)
    }

    pub fn constant(p: XLaurent, order: i64) -> BiSeries {
        BiSeries::from_coeffs(0, vec![p], order)
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<XLaurent>, order: i64) -> BiSeries {
        let mut s = BiSeries { lo, coeffs, order };
        s.normalize();
        s
    }

    pub fn from_tseries(t: &TSeries) -> BiSeries {
        BiSeries::from_coeffs(
            t.valuation(),
            t.coeffs_from(t.valuation(), t.order())
                .into_iter()
                .map(XLaurent::constant)
                .collect(),
            t.order(),
        )
    }

    fn normalize(&mut self) {
        if self.lo + self.coeffs.len() as i64 - 1 > self.order {
            self.coeffs.truncate((self.order - self.lo + 1).max(0) as usize);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.lo = self.order + 1;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn valuation(&self) -> i64 {
        self.lo
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: i64) -> XLaurent {
        if n < self.lo {
            return XLaurent::zero();
        }
        debug_assert!(n <= self.order, "coefficient {n} beyond truncation order {}", self.order);
        self.coeffs.get((n - self.lo) as usize).cloned().unwrap_or_else(XLaurent::zero)
    }

    pub fn truncate(&self, order: i64) -> BiSeries {
        assert!(order <= self.order);
        BiSeries::from_coeffs(self.lo, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Rat) -> BiSeries {
        BiSeries::from_coeffs(self.lo, self.coeffs.iter().map(|a| a.scale(c)).collect(), self.order)
    }

    pub fn mul_poly(&self, p: &XLaurent) -> BiSeries {
        BiSeries::from_coeffs(self.lo, self.coeffs.iter().map(|a| a * p).collect(), self.order)
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> BiSeries {
        BiSeries::from_coeffs(self.lo + k, self.coeffs.clone(), self.order + k)
    }

    /// Substitute x -> 1/x in every coefficient.
    pub fn subs_xbar(&self) -> BiSeries {
        BiSeries::from_coeffs(self.lo, self.coeffs.iter().map(|c| c.subs_xbar()).collect(), self.order)
    }

    /// Evaluate the catalytic variable at 1.
    pub fn eval_x1(&self) -> TSeries {
        TSeries::from_coeffs(self.lo, self.coeffs.iter().map(|c| c.eval_at_one()).collect(), self.order)
    }

    /// The x-free part as a plain t-series.
    pub fn x0_part(&self) -> TSeries {
        TSeries::from_coeffs(self.lo, self.coeffs.iter().map(|c| c.get(0)).collect(), self.order)
    }

    pub fn inv(&self) -> Result<BiSeries, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        let v = self.lo;
        let lead = &self.coeffs[0];
        let Some((e, c0)) = lead.as_monomial() else {
            return Err(SeriesError::NonMonomialLead(format!("{lead}")));
        };
        let il = XLaurent::monomial(-e, c0.recip());
        let rel = (self.order - v) as usize;
        let mut inv = vec![XLaurent::zero(); rel + 1];
        inv[0] = il.clone();
        for n in 1..=rel {
            let mut acc = XLaurent::zero();
            for k in 1..=n {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(XLaurent::zero);
                if !a.is_zero() {
                    acc = &acc + &(&a * &inv[n - k]);
                }
            }
            inv[n] = (&acc).neg();
            inv[n] = &inv[n] * &il;
        }
        Ok(BiSeries::from_coeffs(-v, inv, self.order - 2 * v))
    }

    pub fn div(&self, rhs: &BiSeries) -> Result<BiSeries, SeriesError> {
        Ok(self * &rhs.inv()?)
    }

    /// Square root with constant coefficient 1 (pure power series input).
    pub fn sqrt(&self) -> Result<BiSeries, SeriesError> {
        if self.lo != 0 || self.coeff(0) != XLaurent::one() {
            return Err(SeriesError::SqrtConstantNotOne(format!(
                "t-valuation {} leading {}",
                self.lo,
                self.coeff(self.lo.min(self.order))
            )));
        }
        let n = self.order as usize;
        let mut g = vec![XLaurent::zero(); n + 1];
        g[0] = XLaurent::one();
        let half = Rat::new(1.into(), 2.into());
        for m in 1..=n {
            let mut acc = XLaurent::zero();
            for k in 1..m {
                acc = &acc + &(&g[k] * &g[m - k]);
            }
            g[m] = (&self.coeff(m as i64) - &acc).scale(&half);
        }
        Ok(BiSeries::from_coeffs(0, g, self.order))
    }

    /// Substitute x -> u(t,x) where u has positive t-valuation. Negative
    /// x-exponents in self require u to be invertible.
    pub fn compose(&self, u: &BiSeries) -> BiSeries {
        let order = self.order.min(u.order);
        if self.is_zero() {
            return BiSeries::zero(order);
        }
        let v = u.valuation();
        assert!(v >= 1, "composition needs positive valuation, got {v}");
        let needs_neg = self.coeffs.iter().any(|c| c.window().map_or(false, |(lo, _)| lo < 0));
        let uinv = if needs_neg { Some(u.inv().expect("composition argument invertible")) } else { None };
        // order of the result: k=0 terms are exact to self.order; a term
        // t^n x^k (k != 0) is exact through n + |k| v + (u.order - v).
        let mut order = order;
        let urel = u.order - v;
        for n in self.lo..=self.order {
            for (k, _) in self.coeff(n).terms() {
                if k != 0 {
                    order = order.min(n + k.abs() * v + urel);
                }
            }
        }
        let mut pows: Vec<BiSeries> = vec![BiSeries::one(order)];
        let mut npows: Vec<BiSeries> = vec![BiSeries::one(order)];
        let mut res = BiSeries::zero(order);
        for n in self.lo..=self.order.min(order) {
            for (k, c) in self.coeff(n).terms() {
                let p = if k >= 0 {
                    while pows.len() as i64 <= k {
                        let last = pows.last().unwrap();
                        pows.push(last * u);
                    }
                    pows[k as usize].clone()
                } else {
                    while npows.len() as i64 <= -k {
                        let last = npows.last().unwrap();
                        npows.push(last * uinv.as_ref().unwrap());
                    }
                    npows[(-k) as usize].clone()
                };
                res = &res + &p.scale(c).shift(n).truncate_min(order);
            }
        }
        res
    }

    fn truncate_min(&self, order: i64) -> BiSeries {
        if order >= self.order {
            self.clone()
        } else {
            self.truncate(order)
        }
    }

    /// Per-coefficient split into strictly positive, zero, and strictly
    /// negative x-exponent parts; recombination is exact.
    pub fn part_split(&self) -> (BiSeries, BiSeries, BiSeries) {
        let mut pos = Vec::new();
        let mut zer = Vec::new();
        let mut neg = Vec::new();
        for c in &self.coeffs {
            let (p, z, n) = c.split();
            pos.push(p);
            zer.push(z);
            neg.push(n);
        }
        (
            BiSeries::from_coeffs(self.lo, pos, self.order),
            BiSeries::from_coeffs(self.lo, zer, self.order),
            BiSeries::from_coeffs(self.lo, neg, self.order),
        )
    }

    /// The sub-series with x-exponents <= 0 (the "<=" part).
    pub fn le_part(&self) -> BiSeries {
        let (_, z, n) = self.part_split();
        &z + &n
    }

    /// The sub-series with x-exponents >= 0 (the ">=" part).
    pub fn ge_part(&self) -> BiSeries {
        let (p, z, _) = self.part_split();
        &p + &z
    }

    /// Abort when any coefficient's exponent window exceeds c0 + c1*n; the
    /// guard is applied to kernel-derived objects to catch representation
    /// blowup early.
    pub fn assert_window_linear(&self, c0: i64, c1: i64, label: &str) {
        for n in self.lo..=self.order {
            if let Some((lo, hi)) = self.coeff(n).window() {
                let bound = c0 + c1 * n.max(0);
                assert!(
                    lo >= -bound && hi <= bound,
                    "{label}: coefficient of t^{n} has window [{lo},{hi}] beyond +-{bound}"
                );
            }
        }
    }

    /// JSON dump: {order, terms: [{n, coeffs: [{xexp, num, den}]}]},
    /// deterministically ordered by (n, xexp).
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = (self.lo..=self.order)
            .filter(|n| !self.coeff(*n).is_zero())
            .map(|n| {
                let coeffs: Vec<serde_json::Value> = self
                    .coeff(n)
                    .terms()
                    .map(|(e, c)| {
                        serde_json::json!({
                            "xexp": e,
                            "num": c.numer().to_string(),
                            "den": c.denom().to_string(),
                        })
                    })
                    .collect();
                serde_json::json!({ "n": n, "coeffs": coeffs })
            })
            .collect();
        serde_json::json!({ "order": self.order, "terms": terms })
    }
}

impl PartialEq for BiSeries {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let lo = self.lo.min(other.lo);
        (lo..=order).all(|n| self.coeff(n) == other.coeff(n))
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        let order = self.order.min(rhs.order);
        let lo = self.lo.min(rhs.lo);
        BiSeries::from_coeffs(lo, (lo..=order).map(|n| &self.coeff(n) + &rhs.coeff(n)).collect(), order)
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        let order = self.order.min(rhs.order);
        let lo = self.lo.min(rhs.lo);
        BiSeries::from_coeffs(lo, (lo..=order).map(|n| &self.coeff(n) - &rhs.coeff(n)).collect(), order)
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let order = (self.order + rhs.lo).min(rhs.order + self.lo);
        if self.is_zero() || rhs.is_zero() {
            return BiSeries::zero(order);
        }
        let lo = self.lo + rhs.lo;
        let mut out = vec![XLaurent::zero(); (order - lo + 1).max(0) as usize];
        for i in self.lo..=self.order {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in rhs.lo..=(order - i).min(rhs.order) {
                let b = rhs.coeff(j);
                if !b.is_zero() {
                    let idx = (i + j - lo) as usize;
                    out[idx] = &out[idx] + &(&a * &b);
                }
            }
        }
        BiSeries::from_coeffs(lo, out, order)
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        self.scale(&(-Rat::one()))
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(t^{})", self.order + 1);
        }
        let mut first = true;
        for n in self.lo..=self.order {
            let c = self.coeff(n);
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*t^{n}")?;
            first = false;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Fixed points
// ---------------------------------------------------------------------------

/// Solve g = phi(g) by iteration to stabilization. The functional must gain
/// t-valuation on differences; stabilization within `max_iter` rounds is the
/// operational witness of contraction.
pub fn solve_fixed_point<T, F>(seed: T, phi: F, max_iter: usize) -> Result<T, SeriesError>
where
    T: Clone + PartialEq,
    F: Fn(&T) -> T,
{
    let mut cur = seed;
    for _ in 0..max_iter {
        let next = phi(&cur);
        if next == cur {
            return Ok(next);
        }
        cur = next;
    }
    Err(SeriesError::NonContracting { iterations: max_iter })
}

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

/// Coefficients of the polynomial kernel K(x,y) = a(x) t y^2 + b(t,x) y + c(x) t
/// with b(t,x) = x - t * sigma(x), plus the mirrored triple for the
/// x-quadratic view.
#[derive(Clone, Debug)]
pub struct KernelCoeffs {
    /// a(x) = -sum over steps (i,1) of x^(i+1)
    pub a: XLaurent,
    /// sigma(x) = sum over steps (i,0) of x^(i+1); b(t,x) = x - t*sigma(x)
    pub sigma: XLaurent,
    /// c(x) = -sum over steps (i,-1) of x^(i+1)
    pub c: XLaurent,
    /// mirrored: a~(y) = -sum over steps (1,j) of y^(j+1)
    pub a_m: XLaurent,
    /// mirrored: sigma~(y) = sum over steps (0,j) of y^(j+1)
    pub sigma_m: XLaurent,
    /// mirrored: c~(y) = -sum over steps (-1,j) of y^(j+1)
    pub c_m: XLaurent,
}

/// Build the kernel coefficient triples of a step set.
pub fn kernel_coeffs(s: StepSet) -> KernelCoeffs {
    let mut a = XLaurent::zero();
    let mut sigma = XLaurent::zero();
    let mut c = XLaurent::zero();
    let mut a_m = XLaurent::zero();
    let mut sigma_m = XLaurent::zero();
    let mut c_m = XLaurent::zero();
    for (i, j) in s.steps() {
        match j {
            1 => a.add_term(i as i64 + 1, -Rat::one()),
            0 => sigma.add_term(i as i64 + 1, Rat::one()),
            -1 => c.add_term(i as i64 + 1, -Rat::one()),
            _ => unreachable!(),
        }
        match i {
            1 => a_m.add_term(j as i64 + 1, -Rat::one()),
            0 => sigma_m.add_term(j as i64 + 1, Rat::one()),
            -1 => c_m.add_term(j as i64 + 1, -Rat::one()),
            _ => unreachable!(),
        }
    }
    KernelCoeffs { a, sigma, c, a_m, sigma_m, c_m }
}

impl KernelCoeffs {
    /// b(t,x) as a series of the given order.
    pub fn b_series(&self, order: i64) -> BiSeries {
        let x = BiSeries::xpow(1, order);
        let st = BiSeries::constant(self.sigma.clone(), order).shift(1).scale(&(-Rat::one()));
        &x + &st
    }

    /// K(x, y) evaluated at a series y, as a series in t with x-Laurent
    /// coefficients.
    pub fn eval_at_y(&self, y: &BiSeries) -> BiSeries {
        let order = y.order();
        let ay2t = (y * y).mul_poly(&self.a).shift(1);
        let by = &self.b_series(order) * y;
        let ct = BiSeries::constant(self.c.clone(), order).shift(1);
        &(&ay2t + &by) + &ct
    }
}

/// The two y-roots of the kernel. `y0` vanishes at t = 0. `y1` (with an
/// explicit 1/t principal part) is returned when a(x) is a monomial, which
/// is exactly when -b/(ta) and c/a are Laurent polynomials in x.
pub struct YRoots {
    pub y0: BiSeries,
    pub y1: Option<BiSeries>,
}

/// Compute the kernel roots to the given order by fixed-point iteration on
/// the quadratic: Y = -t (a Y^2 + c) / b.
pub fn y_roots(s: StepSet, order: i64) -> Result<YRoots, SeriesError> {
    let kc = kernel_coeffs(s);
    if kc.a.is_zero() || kc.c.is_zero() {
        return Err(SeriesError::DegenerateKernel);
    }
    let binv = kc.b_series(order).inv()?;
    let phi = |y: &BiSeries| {
        let ay2 = (y * y).mul_poly(&kc.a);
        let num = (&ay2 + &BiSeries::constant(kc.c.clone(), order)).shift(1);
        (&num.scale(&(-Rat::one())) * &binv).truncate_min(order)
    };
    let y0 = solve_fixed_point(BiSeries::zero(order), phi, order.max(2) as usize + 2)?;
    debug_assert!(kc.eval_at_y(&y0).is_zero());
    y0.assert_window_linear(4, 3, "kernel root Y0");
    let y1 = kc.a.as_monomial().map(|(e, ca)| {
        // Y1 = -b/(ta) - Y0
        let ainv = XLaurent::monomial(-e, ca.recip());
        let mb_over_ta = kc
            .b_series(order + 1)
            .scale(&(-Rat::one()))
            .mul_poly(&ainv)
            .shift(-1);
        &mb_over_ta - &y0
    });
    Ok(YRoots { y0, y1 })
}

// ---------------------------------------------------------------------------
// Canonical factorization
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct CanonicalFactors {
    /// In 1 + x*Q[x][[t]].
    pub plus: BiSeries,
    /// x-free, the Delta_0 / Delta(t) factor.
    pub zero: BiSeries,
    /// In 1 + x̄*Q[x̄][[t]].
    pub minus: BiSeries,
}

/// Factor a series with unit constant term into plus/zero/minus parts,
/// Delta = plus * zero * minus, solving layer by layer in t (no logarithms).
pub fn canonical_factorization(delta: &BiSeries) -> Result<CanonicalFactors, SeriesError> {
    if delta.valuation() != 0 || delta.coeff(0) != XLaurent::one() {
        return Err(SeriesError::SqrtConstantNotOne(format!(
            "canonical factorization needs unit constant term, got valuation {}",
            delta.valuation()
        )));
    }
    let n = delta.order() as usize;
    let mut p = vec![XLaurent::zero(); n + 1];
    let mut z = vec![XLaurent::zero(); n + 1];
    let mut m = vec![XLaurent::zero(); n + 1];
    p[0] = XLaurent::one();
    z[0] = XLaurent::one();
    m[0] = XLaurent::one();
    for k in 1..=n {
        // products of strictly lower-order parts
        let mut known = XLaurent::zero();
        for a in 0..=k {
            for b in 0..=(k - a) {
                let c = k - a - b;
                let top = [a, b, c].iter().filter(|v| **v == k).count();
                if top == 1 && [a, b, c].iter().filter(|v| **v == 0).count() == 2 {
                    continue; // that's one of the unknowns at order k
                }
                let term = &(&p[a] * &z[b]) * &m[c];
                known = &known + &term;
            }
        }
        let resid = &delta.coeff(k as i64) - &known;
        let (pos, zer, neg) = resid.split();
        p[k] = pos;
        z[k] = zer;
        m[k] = neg;
    }
    let plus = BiSeries::from_coeffs(0, p, delta.order());
    let zero = BiSeries::from_coeffs(0, z, delta.order());
    let minus = BiSeries::from_coeffs(0, m, delta.order());
    debug_assert!((&(&plus * &zero) * &minus) == *delta);
    Ok(CanonicalFactors { plus, zero, minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};
    use crate::stepset::Direction::*;

    fn set(dirs: &[crate::stepset::Direction]) -> StepSet {
        StepSet::from_directions(dirs.iter().copied())
    }

    #[test]
    fn geometric_series_inverse() {
        let n = 12;
        let f = &TSeries::one(n) - &TSeries::t(n).scale(&rat(3));
        let inv = f.inv().unwrap();
        for k in 0..=n {
            assert_eq!(inv.coeff(k), rat(3i64.pow(k as u32)));
        }
        assert_eq!(&f * &inv, TSeries::one(n));
    }

    #[test]
    fn inverse_defining_property_with_principal_parts() {
        let n = 10;
        let f = TSeries::from_coeffs(-2, vec![rat(5), rat(1), rat(-2), rat(7)], n);
        let g = f.inv().unwrap();
        let prod = &f * &g;
        assert_eq!(prod.coeff(0), rat(1));
        for k in 1..=prod.order() {
            assert_eq!(prod.coeff(k), rat(0));
        }
    }

    #[test]
    fn sqrt_of_one_minus_8t2() {
        let n = 8;
        let f = &TSeries::one(n) - &TSeries::monomial(2, rat(8), n);
        let g = f.sqrt().unwrap();
        assert_eq!(&g * &g, f);
        assert_eq!(g.coeff(0), rat(1));
        assert_eq!(g.coeff(2), rat(-4));
        assert_eq!(g.coeff(4), rat(-8));
        assert_eq!(g.coeff(6), rat(-32));
        assert!(TSeries::t(4).sqrt().is_err());
    }

    #[test]
    fn sqrt_with_laurent_coefficients() {
        // sqrt(1 - 4t^2(x + 1/x)): coefficient of t^2 is -2(x + 1/x)
        let n = 8;
        let xpxb = XLaurent::from_terms([(1, rat(1)), (-1, rat(1))]);
        let f = &BiSeries::one(n) - &BiSeries::constant(xpxb.clone(), n).shift(2).scale(&rat(4));
        let g = f.sqrt().unwrap();
        assert_eq!(&g * &g, f);
        assert_eq!(g.coeff(2), xpxb.scale(&rat(-2)));
    }

    #[test]
    fn fixed_point_examples() {
        let n = 9;
        // T = t(2 + T^3) = 2t + 8t^4 + 96t^7 + ...
        let phi = |g: &TSeries| {
            let cubed = &(g * g) * g;
            (&(&TSeries::constant(rat(2), n) + &cubed)).mul(&TSeries::t(n))
        };
        let t = solve_fixed_point(TSeries::zero(n), phi, 16).unwrap();
        assert_eq!(t.coeff(1), rat(2));
        assert_eq!(t.coeff(4), rat(8));
        assert_eq!(t.coeff(7), rat(96));
        // residual of the defining equation is zero
        let resid = &t - &phi(&t);
        assert!(resid.is_zero());

        // g = t (constant functional)
        let g = solve_fixed_point(TSeries::zero(n), |_| TSeries::t(n), 4).unwrap();
        assert_eq!(g, TSeries::t(n));

        // M = 1 + tM + t^2 M^2 -> Motzkin
        let m = solve_fixed_point(
            TSeries::zero(n),
            |g: &TSeries| {
                let a = &TSeries::t(n) * g;
                let b = &(&TSeries::t(n) * &TSeries::t(n)) * &(g * g);
                &(&TSeries::one(n) + &a) + &b
            },
            16,
        )
        .unwrap();
        assert_eq!(m.coeffs_from(0, 5), vec![rat(1), rat(1), rat(2), rat(4), rat(9), rat(21)]);

        // non-contracting: g -> g + 1 never stabilizes
        let bad = solve_fixed_point(TSeries::zero(5), |g: &TSeries| g + &TSeries::one(5), 8);
        assert!(matches!(bad, Err(SeriesError::NonContracting { .. })));
    }

    #[test]
    fn kernel_coefficients_examples() {
        // Kreweras {NE,S,W}: a=-x^2, b=x-t, c=-x
        let kc = kernel_coeffs(set(&[NE, S, W]));
        assert_eq!(kc.a, XLaurent::monomial(2, rat(-1)));
        assert_eq!(kc.sigma, XLaurent::monomial(0, rat(1))); // W=(-1,0) -> x^0
        assert_eq!(kc.c, XLaurent::monomial(1, rat(-1)));
        // class 8 {N,SE,SW}: K = xy - t x y^2 - t(x^2+1)
        let kc8 = kernel_coeffs(set(&[N, SE, SW]));
        assert_eq!(kc8.a, XLaurent::monomial(1, rat(-1)));
        assert_eq!(kc8.c, XLaurent::from_terms([(0, rat(-1)), (2, rat(-1))]));
        assert!(kc8.sigma.is_zero());
        // class 10 {NE,SE,NW}: K = xy - t x^2 y^2 - t x^2 - t y^2
        let kc10 = kernel_coeffs(set(&[NE, SE, NW]));
        assert_eq!(kc10.a, XLaurent::from_terms([(0, rat(-1)), (2, rat(-1))]));
        assert_eq!(kc10.c, XLaurent::monomial(2, rat(-1)));
    }

    #[test]
    fn y_roots_class8_expansion() {
        // Y0 = (x+1/x) t + (x+1/x)^2 t^3 + O(t^5)
        let roots = y_roots(set(&[N, SE, SW]), 8).unwrap();
        let xpxb = XLaurent::from_terms([(1, rat(1)), (-1, rat(1))]);
        assert_eq!(roots.y0.coeff(1), xpxb);
        assert_eq!(roots.y0.coeff(2), XLaurent::zero());
        assert_eq!(roots.y0.coeff(3), &xpxb * &xpxb);
        // Y1 exists (a is monomial) and Y0*Y1 = c/a = (x^2+1)/x
        let y1 = roots.y1.unwrap();
        let prod = &roots.y0 * &y1;
        let ca = XLaurent::from_terms([(1, rat(1)), (-1, rat(1))]);
        assert_eq!(prod, BiSeries::constant(ca, prod.order()));
    }

    #[test]
    fn y_roots_root_identities() {
        for k in [5u8, 6, 7, 8, 9] {
            let s = StepSet::class_representative(k);
            let kc = kernel_coeffs(s);
            let roots = y_roots(s, 10).unwrap();
            assert!(kc.eval_at_y(&roots.y0).is_zero(), "K(x,Y0)=0 for class {k}");
            let y1 = roots.y1.expect("monomial a for classes 5..9");
            // Y0 + Y1 = -b/(ta), Y0*Y1 = c/a
            let (e, ca) = kc.a.as_monomial().unwrap();
            let ainv = XLaurent::monomial(-e, ca.recip());
            let sum = &roots.y0 + &y1;
            let want_sum = kc.b_series(11).scale(&rat(-1)).mul_poly(&ainv).shift(-1);
            assert_eq!(sum, want_sum, "sum of roots, class {k}");
            let prod = &roots.y0 * &y1;
            let want_prod = BiSeries::constant(kc.c.div_exact(&kc.a).unwrap(), prod.order());
            assert_eq!(prod, want_prod, "product of roots, class {k}");
        }
    }

    #[test]
    fn y_roots_kreweras_product() {
        // Y0*Y1 = 1/x for Kreweras, consistent with tau_y = (x, 1/(xy))
        let roots = y_roots(set(&[NE, S, W]), 8).unwrap();
        let prod = &roots.y0 * &roots.y1.unwrap();
        assert_eq!(prod, BiSeries::constant(XLaurent::monomial(-1, rat(1)), prod.order()));
    }

    #[test]
    fn y_roots_degenerate_kernel() {
        assert!(matches!(y_roots(set(&[N, NE, E]), 6), Err(SeriesError::DegenerateKernel)));
    }

    #[test]
    fn part_split_examples() {
        let f = BiSeries::constant(XLaurent::from_terms([(1, rat(1)), (0, rat(2)), (-1, rat(1))]), 4);
        let (p, z, n) = f.part_split();
        assert_eq!(p.coeff(0), XLaurent::monomial(1, rat(1)));
        assert_eq!(z.coeff(0), XLaurent::monomial(0, rat(2)));
        assert_eq!(n.coeff(0), XLaurent::monomial(-1, rat(1)));
        assert_eq!(&(&p + &z) + &n, f);
        let pure_neg = BiSeries::constant(XLaurent::monomial(-3, rat(5)), 4);
        assert!(pure_neg.part_split().0.is_zero());
    }

    #[test]
    fn canonical_factorization_x_free_input() {
        let d = &BiSeries::one(8) - &BiSeries::t(8).scale(&rat(8));
        let f = canonical_factorization(&d).unwrap();
        assert_eq!(f.plus, BiSeries::one(8));
        assert_eq!(f.minus, BiSeries::one(8));
        assert_eq!(f.zero, d);
    }

    #[test]
    fn canonical_factorization_recombines() {
        // Kreweras discriminant (1 - t/x)^2 - 4t^2 x
        let n = 14;
        let xb = XLaurent::monomial(-1, rat(1));
        let lin = &BiSeries::one(n) - &BiSeries::constant(xb, n).shift(1);
        let delta = &(&lin * &lin) - &BiSeries::x(n).shift(2).scale(&rat(4));
        let f = canonical_factorization(&delta).unwrap();
        assert_eq!(&(&f.plus * &f.zero) * &f.minus, delta);
        for k in 0..=n {
            assert!(f.zero.coeff(k).window().map_or(true, |(lo, hi)| lo == 0 && hi == 0));
            assert!(f.plus.coeff(k).window().map_or(true, |(lo, _)| k == 0 || lo >= 1));
            assert!(f.minus.coeff(k).window().map_or(true, |(_, hi)| k == 0 || hi <= -1));
        }
    }

    #[test]
    fn compose_substitutes_series() {
        // f(x) = x^2 at x = t + t^2 gives t^2 + 2t^3 + t^4
        let f = BiSeries::xpow(2, 8);
        let u = &BiSeries::t(8) + &BiSeries::t(8).shift(1);
        let g = f.compose(&u);
        assert_eq!(g.coeff(2), XLaurent::constant(rat(1)));
        assert_eq!(g.coeff(3), XLaurent::constant(rat(2)));
        assert_eq!(g.coeff(4), XLaurent::constant(rat(1)));
    }

    #[test]
    fn associativity_spot_check() {
        // deterministic pseudo-random small series
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for _ in 0..10 {
            let n = 8;
            let mk = |next: &mut dyn FnMut() -> i64| {
                BiSeries::from_coeffs(
                    0,
                    (0..=n)
                        .map(|_| XLaurent::from_terms((-2..=2).map(|e| (e, rat(next())))))
                        .collect(),
                    n,
                )
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let c = mk(&mut next);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }
    }

    #[test]
    fn div_exact_laurent() {
        let num = XLaurent::from_terms([(2, rat(1)), (0, rat(2)), (-2, rat(1))]); // (x + 1/x)^2
        let den = XLaurent::from_terms([(1, rat(1)), (-1, rat(1))]);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q, den);
        let not = XLaurent::from_terms([(1, rat(1)), (0, rat(1))]);
        assert!(num.div_exact(&not).is_none());
    }

    #[test]
    fn json_dump_shape() {
        let s = BiSeries::from_coeffs(0, vec![XLaurent::one(), XLaurent::monomial(1, rat_frac(1, 2))], 3);
        let v = s.to_json();
        assert_eq!(v["order"], 3);
        assert_eq!(v["terms"][1]["coeffs"][0]["xexp"], 1);
        assert_eq!(v["terms"][1]["coeffs"][0]["num"], "1");
        assert_eq!(v["terms"][1]["coeffs"][0]["den"], "2");
    }
}
