//! Univariate polynomials over the rationals and certified real-root
//! isolation with Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{Monomial, MultiPoly, VarContext};
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[k]` multiplies `var^k`. Trailing
/// zeros are always trimmed, so the leading coefficient is nonzero unless the
/// polynomial is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(var: &str, coeffs: Vec<BigRational>) -> Self {
        let mut p = UniPoly { var: var.to_string(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(var: &str, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Reads a polynomial that involves at most the variable `var`.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> Result<Self> {
        let i = p.ctx().require(var)?;
        let mut coeffs = vec![BigRational::zero(); p.degree_in(i) as usize + 1];
        for (m, c) in p.terms() {
            if m.exps().iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return Err(Error::ContextError(format!("polynomial is not univariate in {var}")));
            }
            coeffs[m.exps()[i] as usize] = c.clone();
        }
        Ok(Self::new(var, coeffs))
    }

    pub fn to_multipoly(&self, ctx: &VarContext) -> Result<MultiPoly> {
        let i = ctx.require(&self.var)?;
        Ok(MultiPoly::from_terms(
            ctx,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(ctx.len(), i, k as u32), c.clone())),
        ))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        Self::new(&self.var, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(&self.var, Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(&self.var, out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division `self = q * g + r` with `deg r < deg g`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        if g.is_zero() {
            return Err(Error::DivByZero);
        }
        let mut r = self.coeffs.clone();
        let dg = g.degree();
        let lc = g.lc();
        if r.len() <= dg {
            return Ok((Self::new(&self.var, Vec::new()), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = &r[k + dg] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                r[k + j] -= &c * gj;
            }
            q[k] = c;
        }
        r.truncate(dg);
        Ok((Self::new(&self.var, q), Self::new(&self.var, r)))
    }

    /// Positive rational `c` and integer polynomial `q` of content one with
    /// `self = c * q`. The sign of the leading coefficient is kept.
    pub fn primitive_split(&self) -> (BigRational, Self) {
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
        let factor = BigRational::new(num, den);
        (factor.clone(), self.scale(&factor.recip()))
    }

    pub fn primitive(&self) -> Self {
        self.primitive_split().1
    }

    /// Primitive with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive();
        if p.lc().is_negative() {
            p.scale(&-BigRational::one())
        } else {
            p
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.primitive();
        }
        a.normalized()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Cauchy bound: every real root has absolute value below it.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = VarContext::new(&[self.var.as_str()]).map_err(|_| fmt::Error)?;
        match self.to_multipoly(&ctx) {
            Ok(p) => write!(f, "{p}"),
            Err(_) => Err(fmt::Error),
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// `f / g` when `g` divides `f` exactly.
pub fn exact_divide(f: &UniPoly, g: &UniPoly) -> Result<UniPoly> {
    let (q, r) = f.div_rem(g)?;
    if !r.is_zero() {
        return Err(Error::RemainderError);
    }
    Ok(q)
}

/// `f / gcd(f, f')`, normalized primitive.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    if f.degree() == 0 {
        return Ok(f.normalized());
    }
    let g = f.gcd(&f.derivative());
    Ok(exact_divide(f, &g)?.normalized())
}

/// Sign of an integer-coefficient polynomial at `x`, computed without
/// fractions: `f(a/b) * b^d` has the sign of `f(a/b)`.
fn sign_int(coeffs: &[BigInt], x: &BigRational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn to_int_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let q = p.primitive();
    q.coeffs.iter().map(|c| c.numer().clone()).collect()
}

/// Sturm sequence of a square-free polynomial, stored with primitive integer
/// coefficients (every member is scaled by a positive constant only).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    polys: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(f: &UniPoly) -> Self {
        let mut seq = vec![f.primitive()];
        let mut next = f.derivative().primitive();
        while !next.is_zero() {
            let prev = seq.last().unwrap().clone();
            seq.push(next.clone());
            let r = prev.div_rem(&next).expect("nonzero divisor").1;
            next = r.scale(&-BigRational::one()).primitive();
        }
        SturmSequence { polys: seq.iter().map(to_int_coeffs).collect() }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| sign_int(p, x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.polys.iter().map(|p| {
            let s = p.last().map(|c| if c.is_negative() { -1 } else { 1 }).unwrap_or(0);
            if positive || (p.len() - 1) % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct roots in `(a, b]`. Valid for any `a < b`, including
    /// roots at the endpoints.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    fn sign(&self, x: &BigRational) -> i8 {
        sign_int(&self.polys[0], x)
    }

    /// Sign of `f` immediately to the right of `x`.
    fn sign_right_of(&self, x: &BigRational) -> i8 {
        match self.sign(x) {
            0 => sign_int(&self.polys[1], x),
            s => s,
        }
    }
}

/// Exact number of distinct real roots of `f` in `(a, b]`. Endpoints must not
/// be roots.
pub fn sturm_count(f: &UniPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if a >= b {
        return Err(Error::InvalidInterval(format!("{a} >= {b}")));
    }
    let sf = squarefree_part(f)?;
    for x in [a, b] {
        if sf.eval(x).is_zero() {
            return Err(Error::EndpointRoot(x.to_string()));
        }
    }
    Ok(SturmSequence::new(&sf).count(a, b))
}

/// A half-open interval `(lo, hi]` that contains exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
    pub root_multiplicity_certified: bool,
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::algebra::rational::rat_string(q))
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn approx(&self, digits: usize) -> String {
        crate::algebra::rational::to_decimal(&self.midpoint(), digits)
    }
}

/// Isolates every distinct real root of `f` (only the positive ones when
/// `positive_only`), in increasing order.
pub fn isolate_real_roots(f: &UniPoly, positive_only: bool) -> Result<Vec<IsolatingInterval>> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let sf = squarefree_part(f)?;
    if sf.degree() == 0 {
        return Ok(Vec::new());
    }
    let seq = SturmSequence::new(&sf);
    let bound = sf.cauchy_bound();
    let lo = if positive_only { BigRational::zero() } else { -bound.clone() };
    let mut out = Vec::new();
    let mut stack = vec![(lo, bound)];
    while let Some((a, b)) = stack.pop() {
        match seq.count(&a, &b) {
            0 => {}
            1 => out.push(IsolatingInterval { lo: a, hi: b, root_multiplicity_certified: true }),
            _ => {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                // Push the right half first so roots come out in increasing order.
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    Ok(out)
}

/// Bisects an isolating interval of `f` until its width is at most `width`.
pub fn refine_root(f: &UniPoly, iv: &IsolatingInterval, width: &BigRational) -> Result<IsolatingInterval> {
    let sf = squarefree_part(f)?;
    let seq = SturmSequence::new(&sf);
    if iv.lo >= iv.hi || seq.count(&iv.lo, &iv.hi) != 1 {
        return Err(Error::InvalidInterval(format!("({}, {}] does not isolate a root", iv.lo, iv.hi)));
    }
    Ok(refine_with(&seq, iv, width))
}

/// Bisection of an isolating interval with a precomputed Sturm sequence of
/// the square-free part.
pub fn refine_with(seq: &SturmSequence, iv: &IsolatingInterval, width: &BigRational) -> IsolatingInterval {
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let s_lo = seq.sign_right_of(&lo);
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = seq.sign(&mid);
        if s == 0 || s != s_lo {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    IsolatingInterval { lo, hi, root_multiplicity_certified: true }
}

/// Isolation plus refinement in one pass, sharing the Sturm sequence.
pub fn isolate_and_refine(f: &UniPoly, positive_only: bool, width: &BigRational) -> Result<Vec<IsolatingInterval>> {
    let sf = squarefree_part(f)?;
    let seq = SturmSequence::new(&sf);
    Ok(isolate_real_roots(&sf, positive_only)?.iter().map(|iv| refine_with(&seq, iv, width)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn sturm_counts() {
        let f = UniPoly::from_ints("x", &[-2, 0, 1]);
        assert_eq!(sturm_count(&f, &int(0), &int(2)).unwrap(), 1);
        let g = UniPoly::from_ints("x", &[1, 0, 1]);
        assert_eq!(sturm_count(&g, &int(-10), &int(10)).unwrap(), 0);
        let h = UniPoly::from_ints("x", &[-1, 1]);
        assert!(matches!(sturm_count(&h, &int(1), &int(2)), Err(Error::EndpointRoot(_))));
    }

    #[test]
    fn isolation_examples() {
        let sq = UniPoly::from_ints("x", &[1, -2, 1]);
        let r = isolate_real_roots(&sq, false).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo < int(1) && int(1) <= r[0].hi);

        let cubic = UniPoly::from_ints("x", &[0, -1, 0, 1]);
        assert_eq!(isolate_real_roots(&cubic, false).unwrap().len(), 3);
        let pos = isolate_real_roots(&cubic, true).unwrap();
        assert_eq!(pos.len(), 1);
        assert!(pos[0].lo < int(1) && int(1) <= pos[0].hi);
        assert!(matches!(isolate_real_roots(&UniPoly::new("x", vec![]), false), Err(Error::ZeroPoly)));
    }

    #[test]
    fn refine_sqrt2() {
        let f = UniPoly::from_ints("x", &[-2, 0, 1]);
        let iv = IsolatingInterval { lo: int(1), hi: int(2), root_multiplicity_certified: true };
        let w = frac(1, 1_000_000_000_000);
        let r = refine_root(&f, &iv, &w).unwrap();
        assert!(r.width() <= w);
        assert_eq!(r.approx(11), "1.41421356237");
        assert_eq!(refine_root(&f, &r, &w).unwrap(), r);
    }

    #[test]
    fn squarefree_and_division() {
        let f = UniPoly::from_ints("x", &[2, -3, 0, 1]); // (x-1)^2 (x+2)
        assert_eq!(squarefree_part(&f).unwrap(), UniPoly::from_ints("x", &[-2, 1, 1]));
        let q = exact_divide(&UniPoly::from_ints("x", &[-1, 0, 1]), &UniPoly::from_ints("x", &[-1, 1])).unwrap();
        assert_eq!(q, UniPoly::from_ints("x", &[1, 1]));
        assert_eq!(
            exact_divide(&UniPoly::from_ints("x", &[1, 0, 1]), &UniPoly::from_ints("x", &[-1, 1])),
            Err(Error::RemainderError)
        );
    }
}
