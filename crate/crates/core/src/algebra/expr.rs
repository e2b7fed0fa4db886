use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::domain::{Domain, Exact};
use super::{Monomial, MultiPoly, VarContext};
use crate::error::{Error, Result};

/// Rational expression tree. Used for the Ricci components before their
/// denominators are cleared, and evaluated exactly or over intervals.
#[derive(Clone, Debug, PartialEq)]
pub enum RationalExpr {
    Const(BigRational),
    Var(String),
    Add(Box<RationalExpr>, Box<RationalExpr>),
    Sub(Box<RationalExpr>, Box<RationalExpr>),
    Mul(Box<RationalExpr>, Box<RationalExpr>),
    Div(Box<RationalExpr>, Box<RationalExpr>),
    Neg(Box<RationalExpr>),
    Pow(Box<RationalExpr>, u32),
}

impl RationalExpr {
    pub fn int(v: i64) -> Self {
        RationalExpr::Const(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn rat(q: BigRational) -> Self {
        RationalExpr::Const(q)
    }

    pub fn var(name: &str) -> Self {
        RationalExpr::Var(name.to_string())
    }

    pub fn pow(self, e: u32) -> Self {
        RationalExpr::Pow(Box::new(self), e)
    }

    pub fn recip(self) -> Self {
        RationalExpr::int(1) / self
    }

    /// Generic evaluation; `lookup` supplies variable values.
    pub fn eval_in<D: Domain>(
        &self,
        d: &D,
        lookup: &dyn Fn(&str) -> Result<D::Value>,
    ) -> Result<D::Value> {
        use RationalExpr::*;
        Ok(match self {
            Const(c) => d.constant(c),
            Var(v) => lookup(v)?,
            Add(a, b) => d.add(&a.eval_in(d, lookup)?, &b.eval_in(d, lookup)?),
            Sub(a, b) => d.sub(&a.eval_in(d, lookup)?, &b.eval_in(d, lookup)?),
            Mul(a, b) => d.mul(&a.eval_in(d, lookup)?, &b.eval_in(d, lookup)?),
            Div(a, b) => d.div(&a.eval_in(d, lookup)?, &b.eval_in(d, lookup)?)?,
            Neg(a) => d.neg(&a.eval_in(d, lookup)?),
            Pow(a, e) => d.pow(&a.eval_in(d, lookup)?, *e),
        })
    }

    pub fn eval(&self, point: &HashMap<String, BigRational>) -> Result<BigRational> {
        self.eval_in(&Exact, &|v: &str| {
            point.get(v).cloned().ok_or_else(|| Error::EvalError(format!("no value for {v}")))
        })
    }

    /// Replaces a variable by an expression.
    pub fn substitute(&self, var: &str, value: &RationalExpr) -> RationalExpr {
        use RationalExpr::*;
        let s = |e: &RationalExpr| Box::new(e.substitute(var, value));
        match self {
            Var(v) if v == var => value.clone(),
            Const(_) | Var(_) => self.clone(),
            Add(a, b) => Add(s(a), s(b)),
            Sub(a, b) => Sub(s(a), s(b)),
            Mul(a, b) => Mul(s(a), s(b)),
            Div(a, b) => Div(s(a), s(b)),
            Neg(a) => Neg(s(a)),
            Pow(a, e) => Pow(s(a), *e),
        }
    }
}

macro_rules! expr_op {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for RationalExpr {
            type Output = RationalExpr;
            fn $method(self, rhs: RationalExpr) -> RationalExpr {
                RationalExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
        impl $tr<&RationalExpr> for &RationalExpr {
            type Output = RationalExpr;
            fn $method(self, rhs: &RationalExpr) -> RationalExpr {
                RationalExpr::$variant(Box::new(self.clone()), Box::new(rhs.clone()))
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr::Neg(Box::new(self))
    }
}

/// How the overall sign of a cleared numerator is fixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// Multiply only by positive quantities, so the sign of the result agrees
    /// with the sign of the expression on the positive orthant.
    #[default]
    PreserveOrthant,
    /// Positive leading coefficient in the canonical order.
    PositiveLeading,
}

#[derive(Clone, Debug, Default)]
pub struct ClearOptions {
    /// Non-monomial factors that may appear in denominators. They are taken to
    /// be positive wherever the expression is used.
    pub positive_atoms: Vec<MultiPoly>,
    pub sign: SignConvention,
}

/// Numerator over a denominator that is a product of variables and atoms.
struct Fraction {
    num: MultiPoly,
    den: Vec<u32>,
}

struct Clearer<'a> {
    ctx: &'a VarContext,
    atoms: &'a [MultiPoly],
}

impl Clearer<'_> {
    fn den_poly(&self, den: &[u32]) -> MultiPoly {
        let n = self.ctx.len();
        let mut mono = Monomial::one(n);
        mono.0.copy_from_slice(&den[..n]);
        let mut p = MultiPoly::from_terms(self.ctx, [(mono, BigRational::one())]);
        for (k, &e) in den[n..].iter().enumerate() {
            if e > 0 {
                p = &p * &self.atoms[k].pow(e);
            }
        }
        p
    }

    fn unit(&self) -> Vec<u32> {
        vec![0; self.ctx.len() + self.atoms.len()]
    }

    fn combine(&self, a: Fraction, b: Fraction, negate: bool) -> Fraction {
        let l: Vec<u32> = a.den.iter().zip(&b.den).map(|(x, y)| *x.max(y)).collect();
        let fa: Vec<u32> = l.iter().zip(&a.den).map(|(x, y)| x - y).collect();
        let fb: Vec<u32> = l.iter().zip(&b.den).map(|(x, y)| x - y).collect();
        let na = &a.num * &self.den_poly(&fa);
        let nb = &b.num * &self.den_poly(&fb);
        Fraction { num: if negate { &na - &nb } else { &na + &nb }, den: l }
    }

    /// Writes `p` as `c * monomial * prod(atoms^e)`.
    fn factor_denominator(&self, p: &MultiPoly) -> Result<(BigRational, Vec<u32>)> {
        if p.is_zero() {
            return Err(Error::DivByZero);
        }
        let n = self.ctx.len();
        let mono = p.monomial_content();
        let mut rest = p.div_monomial(&mono).expect("content divides");
        let mut exps = self.unit();
        exps[..n].copy_from_slice(mono.exps());
        for (k, atom) in self.atoms.iter().enumerate() {
            while let Some(q) = rest.exact_div(atom) {
                if rest.is_constant() {
                    break;
                }
                rest = q;
                exps[n + k] += 1;
            }
        }
        if !rest.is_constant() {
            return Err(Error::UnsupportedDenominator(rest.to_string()));
        }
        Ok((rest.constant_term(), exps))
    }

    fn run(&self, e: &RationalExpr) -> Result<Fraction> {
        use RationalExpr::*;
        Ok(match e {
            Const(c) => Fraction { num: MultiPoly::constant(self.ctx, c.clone()), den: self.unit() },
            Var(v) => Fraction { num: MultiPoly::var(self.ctx, v)?, den: self.unit() },
            Add(a, b) => self.combine(self.run(a)?, self.run(b)?, false),
            Sub(a, b) => self.combine(self.run(a)?, self.run(b)?, true),
            Neg(a) => {
                let f = self.run(a)?;
                Fraction { num: -f.num, den: f.den }
            }
            Mul(a, b) => {
                let (fa, fb) = (self.run(a)?, self.run(b)?);
                Fraction {
                    num: &fa.num * &fb.num,
                    den: fa.den.iter().zip(&fb.den).map(|(x, y)| x + y).collect(),
                }
            }
            Div(a, b) => {
                let (fa, fb) = (self.run(a)?, self.run(b)?);
                let (c, exps) = self.factor_denominator(&fb.num)?;
                let num = (&fa.num * &self.den_poly(&fb.den)).scale(&c.recip());
                Fraction { num, den: fa.den.iter().zip(&exps).map(|(x, y)| x + y).collect() }
            }
            Pow(a, k) => {
                let f = self.run(a)?;
                Fraction { num: f.num.pow(*k), den: f.den.iter().map(|x| x * k).collect() }
            }
        })
    }
}

/// Numerator of `e` in lowest terms over a denominator of variables and atoms,
/// made primitive with integer coefficients.
/// Denominators must factor into variables, declared atoms and constants.
pub fn clear_denominators(
    e: &RationalExpr,
    ctx: &VarContext,
    opts: &ClearOptions,
) -> Result<MultiPoly> {
    for a in &opts.positive_atoms {
        if a.ctx() != ctx {
            return Err(Error::ContextError("atom context differs".into()));
        }
    }
    let clearer = Clearer { ctx, atoms: &opts.positive_atoms };
    let frac = clearer.run(e)?;
    let mut num = frac.num;
    if num.is_zero() {
        return Ok(num);
    }
    // Cancel variable and atom factors shared with the denominator, so the
    // numerator is that of the expression in lowest terms.
    let n = ctx.len();
    let mut common = num.monomial_content();
    for (i, e) in common.0.iter_mut().enumerate() {
        *e = (*e).min(frac.den[i]);
    }
    num = num.div_monomial(&common).expect("content divides");
    for (k, atom) in opts.positive_atoms.iter().enumerate() {
        let mut left = frac.den[n + k];
        while left > 0 && !num.is_constant() {
            match num.exact_div(atom) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
    }
    let (c, prim) = num.primitive_split();
    debug_assert!(c.is_positive());
    Ok(match opts.sign {
        SignConvention::PreserveOrthant => prim,
        SignConvention::PositiveLeading => prim.normalized(),
    })
}

/// `clear_denominators` with monomial denominators only and the default sign
/// convention.
pub fn expr_clear_denominators(e: &RationalExpr, ctx: &VarContext) -> Result<MultiPoly> {
    clear_denominators(e, ctx, &ClearOptions::default())
}
