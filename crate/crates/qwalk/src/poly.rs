//! Bivariate integer polynomials, gcd, and rational functions.
//!
//! The group of the walk lives in the field Q(x,y); its elements are pairs
//! of rational functions with integer coefficients. Normalization divides
//! out the polynomial gcd (primitive PRS in the main variable, recursing on
//! univariate contents), removes integer content, and fixes the sign of the
//! denominator's graded-lex leading coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in x and y over the integers, exponents nonnegative.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BPoly {
    pub fn zero() -> BPoly {
        BPoly::default()
    }

    pub fn one() -> BPoly {
        BPoly::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> BPoly {
        let mut p = BPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn var_x() -> BPoly {
        BPoly::monomial(1, 0, BigInt::one())
    }

    pub fn var_y() -> BPoly {
        BPoly::monomial(0, 1, BigInt::one())
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Integer content (gcd of coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, d: &BigInt) -> BPoly {
        assert!(!d.is_zero());
        BPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let (q, r) = v.div_rem(d);
                    assert!(r.is_zero(), "integer content division must be exact");
                    (*k, q)
                })
                .collect(),
        }
    }

    /// Leading coefficient under graded-lex order (total degree, then x).
    pub fn leading_coeff_grlex(&self) -> BigInt {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (i + j, *i))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn pow(&self, e: u32) -> BPoly {
        let mut acc = BPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * x.pow(i) * y.pow(j);
        }
        acc
    }

    // -- univariate views -------------------------------------------------

    /// Coefficients in x: index k holds the y-polynomial of x^k.
    fn x_coeffs(&self) -> Vec<UPoly> {
        let dx = self.deg_x() as usize;
        let mut out = vec![UPoly::zero(); dx + 1];
        for (&(i, j), c) in &self.terms {
            out[i as usize].set(j as usize, c.clone());
        }
        out
    }

    fn from_x_coeffs(coeffs: &[UPoly]) -> BPoly {
        let mut p = BPoly::zero();
        for (i, u) in coeffs.iter().enumerate() {
            for (j, c) in u.0.iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// Polynomial gcd, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &BPoly) -> BPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let a = self.x_coeffs();
        let b = other.x_coeffs();
        let ca = upoly_vec_content(&a);
        let cb = upoly_vec_content(&b);
        let gc = ca.gcd(&cb);
        let pa = upoly_vec_div_exact(&a, &ca);
        let pb = upoly_vec_div_exact(&b, &cb);
        let gp = prs_gcd(pa, pb);
        let g = BPoly::from_x_coeffs(&upoly_vec_mul_upoly(&gp, &gc));
        g.normalized_sign()
    }

    fn normalized_sign(&self) -> BPoly {
        if self.leading_coeff_grlex().is_negative() {
            (&BPoly::zero()) - self
        } else {
            self.clone()
        }
    }

    /// Exact polynomial division (panics when not exact).
    pub fn div_exact(&self, d: &BPoly) -> BPoly {
        if self.is_zero() {
            return BPoly::zero();
        }
        let a = self.x_coeffs();
        let b = d.x_coeffs();
        let q = upoly_vec_div_poly_exact(&a, &b).expect("exact polynomial division");
        BPoly::from_x_coeffs(&q)
    }
}

impl Add for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BPoly {
    type Output = BPoly;
    fn mul(self, rhs: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &rhs.terms {
                out.add_term(a + c, b + d, u * v);
            }
        }
        out
    }
}

impl Neg for &BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        &BPoly::zero() - self
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let has_var = i > 0 || j > 0;
            if !a.is_one() || !has_var {
                write!(f, "{a}")?;
                if has_var {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            if i > 0 && j > 0 {
                write!(f, "*")?;
            }
            match j {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{j}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over Z (the y-coefficients)
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
struct UPoly(Vec<BigInt>);

impl UPoly {
    fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    fn constant(c: BigInt) -> UPoly {
        let mut p = UPoly::zero();
        p.set(0, c);
        p
    }

    fn set(&mut self, i: usize, c: BigInt) {
        if self.0.len() <= i {
            self.0.resize(i + 1, BigInt::zero());
        }
        self.0[i] = c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    fn add(&self, o: &UPoly) -> UPoly {
        let mut v = vec![BigInt::zero(); self.0.len().max(o.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_int_exact(&self, d: &BigInt) -> UPoly {
        UPoly(
            self.0
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero());
                    q
                })
                .collect(),
        )
    }

    /// Exact division by another univariate polynomial; None if not exact.
    fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut rem = self.clone();
        let mut q = vec![BigInt::zero(); self.deg() - d.deg() + 1];
        while !rem.is_zero() && rem.deg() >= d.deg() {
            let (qc, r) = rem.lead().div_rem(&d.lead());
            if !r.is_zero() {
                return None;
            }
            let k = rem.deg() - d.deg();
            q[k] = qc.clone();
            let mut shift = vec![BigInt::zero(); k];
            shift.push(qc);
            rem = rem.sub(&d.mul(&UPoly(shift)));
        }
        if rem.is_zero() {
            let mut p = UPoly(q);
            p.trim();
            Some(p)
        } else {
            None
        }
    }

    /// gcd over Z (primitive, positive leading coefficient).
    fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.positive_lead();
        }
        if o.is_zero() {
            return self.positive_lead();
        }
        let ca = self.content();
        let cb = o.content();
        let cg = ca.gcd(&cb);
        let mut a = self.div_int_exact(&ca);
        let mut b = o.div_int_exact(&cb);
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            // pseudo-remainder: lead(b)^(da-db+1) * a mod b
            let da = a.deg();
            let db = b.deg();
            let mut r = a.clone();
            let lb = b.lead();
            for _ in 0..=(da - db) {
                if r.is_zero() || r.deg() < db {
                    break;
                }
                let k = r.deg() - db;
                let lr = r.lead();
                let mut shift = vec![BigInt::zero(); k];
                shift.push(lr);
                r = r.mul(&UPoly::constant(lb.clone())).sub(&b.mul(&UPoly(shift)));
            }
            let rc = r.content();
            let r = if rc.is_zero() { r } else { r.div_int_exact(&rc) };
            a = b;
            b = r;
        }
        a.mul(&UPoly::constant(cg)).positive_lead()
    }

    fn positive_lead(&self) -> UPoly {
        if self.lead().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn upoly_vec_content(v: &[UPoly]) -> UPoly {
    let mut g = UPoly::zero();
    for u in v {
        g = g.gcd(u);
        if g.deg() == 0 && g.0.first().map_or(false, |c| c.is_one()) {
            break;
        }
    }
    g
}

fn upoly_vec_div_exact(v: &[UPoly], d: &UPoly) -> Vec<UPoly> {
    v.iter()
        .map(|u| {
            if u.is_zero() {
                UPoly::zero()
            } else {
                u.div_exact(d).expect("content division is exact")
            }
        })
        .collect()
}

fn upoly_vec_mul_upoly(v: &[UPoly], m: &UPoly) -> Vec<UPoly> {
    v.iter().map(|u| u.mul(m)).collect()
}

fn xdeg(v: &[UPoly]) -> Option<usize> {
    v.iter().rposition(|u| !u.is_zero())
}

/// Primitive PRS gcd of two x-primitive polynomials in Z[y][x].
fn prs_gcd(mut a: Vec<UPoly>, mut b: Vec<UPoly>) -> Vec<UPoly> {
    loop {
        let (Some(da), Some(db)) = (xdeg(&a), xdeg(&b)) else {
            // one of them is zero
            let out = if xdeg(&a).is_some() { a } else { b };
            let c = upoly_vec_content(&out);
            return if c.is_zero() { out } else { upoly_vec_div_exact(&out, &c) };
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // pseudo-remainder of a by b in x
        let db = xdeg(&b).unwrap();
        let lb = b[db].clone();
        let mut r = a.clone();
        loop {
            let Some(dr) = xdeg(&r) else { break };
            if dr < db {
                break;
            }
            let lr = r[dr].clone();
            // r = lb*r - lr*x^(dr-db)*b
            let mut next = vec![UPoly::zero(); r.len().max(b.len() + dr - db)];
            for (i, u) in r.iter().enumerate() {
                next[i] = u.mul(&lb);
            }
            for (i, u) in b.iter().enumerate() {
                let idx = i + dr - db;
                next[idx] = next[idx].sub(&u.mul(&lr));
            }
            r = next;
        }
        // primitive part of r
        let c = upoly_vec_content(&r);
        if !c.is_zero() {
            r = upoly_vec_div_exact(&r, &c);
        }
        a = b;
        b = r;
        if xdeg(&b).is_none() {
            let c = upoly_vec_content(&a);
            return if c.is_zero() { a } else { upoly_vec_div_exact(&a, &c) };
        }
        let _ = da;
    }
}

/// Exact division of bivariate polynomials given as x-coefficient vectors.
fn upoly_vec_div_poly_exact(a: &[UPoly], b: &[UPoly]) -> Option<Vec<UPoly>> {
    let db = xdeg(b)?;
    let lb = &b[db];
    let mut rem: Vec<UPoly> = a.to_vec();
    let da = match xdeg(&rem) {
        Some(d) => d,
        None => return Some(vec![UPoly::zero()]),
    };
    if da < db {
        return None;
    }
    let mut q = vec![UPoly::zero(); da - db + 1];
    loop {
        let Some(dr) = xdeg(&rem) else { break };
        if dr < db {
            return None;
        }
        let qc = rem[dr].div_exact(lb)?;
        q[dr - db] = qc.clone();
        for (i, u) in b.iter().enumerate() {
            let idx = i + dr - db;
            rem[idx] = rem[idx].sub(&u.mul(&qc));
        }
    }
    Some(q)
}

// ---------------------------------------------------------------------------
// rational functions
// ---------------------------------------------------------------------------

/// A reduced rational function num/den in Q(x,y) with integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    pub num: BPoly,
    pub den: BPoly,
}

impl RatFunc {
    pub fn new(num: BPoly, den: BPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: BPoly) -> RatFunc {
        RatFunc::new(p, BPoly::one())
    }

    pub fn var_x() -> RatFunc {
        RatFunc::from_poly(BPoly::var_x())
    }

    pub fn var_y() -> RatFunc {
        RatFunc::from_poly(BPoly::var_y())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_zero() && g != BPoly::one() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let cn = self.num.content();
        let cd = self.den.content();
        let c = cn.gcd(&cd);
        if !c.is_one() {
            self.num = self.num.div_int_exact(&c);
            self.den = self.den.div_int_exact(&c);
        }
        if self.den.leading_coeff_grlex().is_negative() {
            self.num = (&self.num).neg();
            self.den = (&self.den).neg();
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality by cross-multiplication (exact polynomial expansion).
    pub fn equals(&self, o: &RatFunc) -> bool {
        (&(&self.num * &o.den) - &(&o.num * &self.den)).is_zero()
    }

    pub fn max_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    /// Substitute rational functions for x and y. `p` must be a polynomial.
    pub fn subst_poly(p: &BPoly, gx: &RatFunc, gy: &RatFunc) -> (BPoly, BPoly) {
        let dx = p.deg_x();
        let dy = p.deg_y();
        let mut num = BPoly::zero();
        for (&(i, j), c) in p.terms.iter() {
            let term = &(&gx.num.pow(i) * &gx.den.pow(dx - i))
                * &(&gy.num.pow(j) * &gy.den.pow(dy - j));
            num = &num + &term.mul_int(c);
        }
        let den = &gx.den.pow(dx) * &gy.den.pow(dy);
        (num, den)
    }

    /// this(gx, gy) as a reduced rational function.
    pub fn subst(&self, gx: &RatFunc, gy: &RatFunc) -> RatFunc {
        let (nn, nd) = RatFunc::subst_poly(&self.num, gx, gy);
        let (dn, dd) = RatFunc::subst_poly(&self.den, gx, gy);
        // (nn/nd) / (dn/dd)
        RatFunc::new(&nn * &dd, &nd * &dn)
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return None;
        }
        Some((self.num.eval(x, y), d))
    }
}

impl BPoly {
    fn mul_int(&self, c: &BigInt) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BPoly::one() {
            write!(f, "{}", self.num)
        } else {
            let np = self.num.terms.len() > 1;
            let dp = self.den.terms.len() > 1;
            if np {
                write!(f, "({})", self.num)?;
            } else {
                write!(f, "{}", self.num)?;
            }
            write!(f, "/")?;
            if dp {
                write!(f, "({})", self.den)
            } else {
                write!(f, "{}", self.den)
            }
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::big;

    fn p(terms: &[(u32, u32, i64)]) -> BPoly {
        let mut out = BPoly::zero();
        for &(i, j, c) in terms {
            out.add_term(i, j, big(c));
        }
        out
    }

    #[test]
    fn gcd_univariate_in_disguise() {
        // gcd(x^2+x, x+1) = x+1
        let a = p(&[(2, 0, 1), (1, 0, 1)]);
        let b = p(&[(1, 0, 1), (0, 0, 1)]);
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn gcd_bivariate() {
        // (x+y)(x-y) and (x+y)^2 share (x+y)
        let s = p(&[(1, 0, 1), (0, 1, 1)]);
        let d = p(&[(1, 0, 1), (0, 1, -1)]);
        let a = &s * &d;
        let b = &s * &s;
        assert_eq!(a.gcd(&b), s);
        // coprime: gcd(x, y) = 1
        assert_eq!(BPoly::var_x().gcd(&BPoly::var_y()), BPoly::one());
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = p(&[(1, 1, 6)]);
        let b = p(&[(0, 1, 4)]);
        // gcd(6xy, 4y) = 2y
        assert_eq!(a.gcd(&b), p(&[(0, 1, 2)]));
    }

    #[test]
    fn ratfunc_reduces() {
        // (x+1)/(x^2+x) -> 1/x
        let r = RatFunc::new(p(&[(1, 0, 1), (0, 0, 1)]), p(&[(2, 0, 1), (1, 0, 1)]));
        assert_eq!(r.num, BPoly::one());
        assert_eq!(r.den, BPoly::var_x());
    }

    #[test]
    fn ratfunc_equality_cross_multiplication() {
        let a = RatFunc::new(p(&[(0, 0, 1)]), p(&[(1, 1, 1)])); // 1/(xy)
        let b = RatFunc::new(p(&[(1, 0, 2)]), p(&[(2, 1, 2)])); // 2x/(2x^2 y)
        assert!(a.equals(&b));
        assert!(!a.equals(&RatFunc::var_x()));
    }

    #[test]
    fn substitution() {
        // f = x^2 y at (x,y) -> (1/x, y): x^-2 y = y/x^2
        let f = RatFunc::from_poly(p(&[(2, 1, 1)]));
        let inv_x = RatFunc::new(BPoly::one(), BPoly::var_x());
        let g = f.subst(&inv_x, &RatFunc::var_y());
        assert!(g.equals(&RatFunc::new(BPoly::var_y(), p(&[(2, 0, 1)]))));
    }

    #[test]
    fn sign_normalization() {
        let r = RatFunc::new(p(&[(0, 0, 1)]), p(&[(1, 0, -1)]));
        assert_eq!(r.den, BPoly::var_x());
        assert_eq!(r.num, p(&[(0, 0, -1)]));
    }
}
