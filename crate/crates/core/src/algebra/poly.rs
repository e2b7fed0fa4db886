use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::domain::{Domain, Exact};
use super::{Monomial, MonomialOrder, VarContext};
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals. Terms are kept sorted in descending
/// graded reverse lexicographic order of the context's natural variable order,
/// with no zero coefficients and no repeated monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: VarContext,
    terms: Vec<(Monomial, BigRational)>,
}

impl MultiPoly {
    pub fn zero(ctx: &VarContext) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &VarContext, c: BigRational) -> Self {
        Self::from_terms(ctx, [(Monomial::one(ctx.len()), c)])
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn var(ctx: &VarContext, name: &str) -> Result<Self> {
        let i = ctx.require(name)?;
        Ok(Self::var_index(ctx, i))
    }

    pub fn var_index(ctx: &VarContext, i: usize) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: vec![(Monomial::var(ctx.len(), i, 1), BigRational::one())] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ctx.len());
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        MultiPoly { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> BigRational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => BigRational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Monomial, BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    /// Leading term in the canonical (natural grevlex) order.
    pub fn canonical_leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextError(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp_grevlex(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { ctx: self.ctx.clone(), terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        MultiPoly { ctx: self.ctx.clone(), terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Evaluates at a point given by name; every variable that occurs must be
    /// assigned.
    pub fn eval(&self, point: &HashMap<String, BigRational>) -> Result<BigRational> {
        let values = self.point_values(point)?;
        Ok(self.eval_in(&Exact, &values))
    }

    fn point_values(&self, point: &HashMap<String, BigRational>) -> Result<Vec<BigRational>> {
        let support = self.support();
        (0..self.ctx.len())
            .map(|i| match point.get(self.ctx.name(i)) {
                Some(v) => Ok(v.clone()),
                None if !support.contains(&i) => Ok(BigRational::zero()),
                None => Err(Error::EvalError(format!("no value for {}", self.ctx.name(i)))),
            })
            .collect()
    }

    /// Evaluates with values indexed like the context.
    pub fn eval_in<D: Domain>(&self, d: &D, values: &[D::Value]) -> D::Value {
        let mut powers: Vec<Vec<D::Value>> = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let maxd = self.degree_in(i) as usize;
            let mut p = Vec::with_capacity(maxd + 1);
            p.push(d.constant(&BigRational::one()));
            for k in 1..=maxd {
                let next = d.mul(&p[k - 1], v);
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = d.constant(&BigRational::zero());
        for (m, c) in &self.terms {
            let mut t = d.constant(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = d.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = d.add(&acc, &t);
        }
        acc
    }

    /// Replaces variable `var` by `value` (a polynomial over the same context).
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Result<Self> {
        self.check_ctx(value)?;
        let i = self.ctx.require(var)?;
        let maxd = self.degree_in(i) as usize;
        let mut powers = vec![Self::one(&self.ctx)];
        for k in 1..=maxd {
            powers.push(powers[k - 1].product(value));
        }
        let mut by_power: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); maxd + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[i] as usize;
            m2.0[i] = 0;
            by_power[e].push((m2, c.clone()));
        }
        let mut out = Self::zero(&self.ctx);
        for (e, terms) in by_power.into_iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let coeff = Self::from_terms(&self.ctx, terms);
            out = out.merge(&coeff.product(&powers[e]), false);
        }
        Ok(out)
    }

    pub fn set_var(&self, var: &str, value: &BigRational) -> Result<Self> {
        self.substitute(var, &Self::constant(&self.ctx, value.clone()))
    }

    /// Re-expresses the polynomial over another context containing every
    /// variable that occurs.
    pub fn to_context(&self, ctx: &VarContext) -> Result<Self> {
        let mut map = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            map.push(ctx.index_of(self.ctx.name(i)));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m2 = Monomial::one(ctx.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => m2.0[j] = e,
                    None => {
                        return Err(Error::ContextError(format!(
                            "variable {} missing from target context",
                            self.ctx.name(i)
                        )))
                    }
                }
            }
            terms.push((m2, c.clone()));
        }
        Ok(Self::from_terms(ctx, terms))
    }

    /// Coefficients with respect to variable `var`: entry k is the coefficient
    /// of `var^k`, a polynomial free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let maxd = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); maxd + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[var] as usize;
            m2.0[var] = 0;
            buckets[e].push((m2, c.clone()));
        }
        buckets.into_iter().map(|t| Self::from_terms(&self.ctx, t)).collect()
    }

    /// Positive rational `c` and integer polynomial `q` with `self = c * q`
    /// and the integer content of `q` equal to one.
    pub fn primitive_split(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        let factor = BigRational::new(num_gcd, den_lcm);
        let inv = factor.recip();
        (factor, self.scale(&inv))
    }

    pub fn primitive(&self) -> MultiPoly {
        self.primitive_split().1
    }

    /// Primitive integer form with positive canonical leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        let p = self.primitive();
        match p.terms.first() {
            Some((_, c)) if c.is_negative() => -p,
            _ => p,
        }
    }

    /// `Some(c)` with `c > 0` when `self = c * other`.
    pub fn positive_multiple_of(&self, other: &MultiPoly) -> Option<BigRational> {
        if self.ctx != other.ctx || self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let ratio = &self.terms[0].1 / &other.terms[0].1;
        if !ratio.is_positive() {
            return None;
        }
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            if ma != mb || *ca != cb * &ratio {
                return None;
            }
        }
        Some(ratio)
    }

    /// Greatest common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ctx.len()),
            Some((m, _)) => it.fold(m.clone(), |g, (t, _)| g.gcd(t)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            if !m.divides(t) {
                return None;
            }
            terms.push((m.quotient_of(t), c.clone()));
        }
        // Dividing every term by the same monomial preserves grevlex order.
        Some(MultiPoly { ctx: self.ctx.clone(), terms })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() || self.ctx != d.ctx {
            return None;
        }
        let (dm, dc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = c / &dc;
            rem = rem.merge(&d.mul_monomial(&qm).scale(&qc), true);
            quot.push((qm, qc));
        }
        Some(Self::from_terms(&self.ctx, quot))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { ctx: self.ctx, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

// Operator forms panic on context mismatch; use the `try_*` methods when the
// contexts are not known to agree.
macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$try(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn ctx() -> VarContext {
        VarContext::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        let x = MultiPoly::var(&c, "x").unwrap();
        let y = MultiPoly::var(&c, "y").unwrap();
        let p = (&x + &y) * (&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(&p + &MultiPoly::zero(&c), p);
    }

    #[test]
    fn eval_and_substitute() {
        let c = ctx();
        let x = MultiPoly::var(&c, "x").unwrap();
        let y = MultiPoly::var(&c, "y").unwrap();
        let p = &x.pow(2) + &y;
        let pt: HashMap<String, BigRational> =
            [("x".to_string(), int(2)), ("y".to_string(), int(3))].into();
        assert_eq!(p.eval(&pt).unwrap(), int(7));
        let q = p.substitute("x", &(&y + &MultiPoly::one(&c))).unwrap();
        assert_eq!(q, &(&y.pow(2) + &(&y * &MultiPoly::constant(&c, int(3)))) + &MultiPoly::one(&c));
        let missing: HashMap<String, BigRational> = [("x".to_string(), int(1))].into();
        assert!(matches!(p.eval(&missing), Err(Error::EvalError(_))));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = MultiPoly::var(&ctx(), "x").unwrap();
        let b = MultiPoly::var(&VarContext::new(&["x"]).unwrap(), "x").unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::ContextError(_))));
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let x = MultiPoly::var(&c, "x").unwrap();
        let y = MultiPoly::var(&c, "y").unwrap();
        let f = &(&x + &y) * &(&x.pow(2) - &y);
        assert_eq!(f.exact_div(&(&x + &y)).unwrap(), &x.pow(2) - &y);
        assert!(f.exact_div(&(&x - &y)).is_none());
    }
}
