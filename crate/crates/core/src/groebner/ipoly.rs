//! Integer-coefficient polynomials with exponents stored in precedence
//! order, the working representation of the Gröbner engine.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::algebra::{Monomial, MonomialOrder, MultiPoly, OrderKind, VarContext};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    pub deg: u32,
    pub e: SmallVec<[u16; 8]>,
}

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono { deg: 0, e: SmallVec::from_elem(0, n) }
    }

    pub fn var(n: usize, k: usize) -> Self {
        let mut m = Self::one(n);
        m.e[k] = 1;
        m.deg = 1;
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mono { deg: self.deg + o.deg, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    /// `o / self`.
    pub fn quo(&self, o: &Self) -> Self {
        Mono { deg: o.deg - self.deg, e: o.e.iter().zip(&self.e).map(|(a, b)| a - b).collect() }
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let e: SmallVec<[u16; 8]> = self.e.iter().zip(&o.e).map(|(a, b)| *a.max(b)).collect();
        Mono { deg: e.iter().map(|&x| x as u32).sum(), e }
    }

    pub fn coprime(&self, o: &Self) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }
}

/// Monomial order on precedence-ordered exponent vectors.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ord2 {
    pub kind: OrderKind,
}

impl Ord2 {
    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.e.cmp(&b.e),
            OrderKind::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.e.iter().zip(&b.e).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Terms sorted in descending order with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly<C> {
    pub terms: Vec<(Mono, C)>,
}

pub(crate) type IPoly = Poly<BigInt>;

impl<C> Poly<C> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].1
    }
}

impl IPoly {

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.is_zero() {
            return;
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

/// Translation between `MultiPoly` (natural variable order) and `IPoly`
/// (precedence order).
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub ctx: VarContext,
    pub order: MonomialOrder,
    pub ord: Ord2,
}

impl Ring {
    pub fn new(ctx: &VarContext, order: &MonomialOrder) -> Self {
        Ring { ctx: ctx.clone(), order: order.clone(), ord: Ord2 { kind: order.kind } }
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn mono_from(&self, m: &Monomial) -> Mono {
        let e: SmallVec<[u16; 8]> =
            self.order.precedence.iter().map(|&i| m.exps()[i] as u16).collect();
        Mono { deg: e.iter().map(|&x| x as u32).sum(), e }
    }

    pub fn mono_to(&self, m: &Mono) -> Monomial {
        let mut out = Monomial::one(self.nvars());
        for (k, &i) in self.order.precedence.iter().enumerate() {
            out.0[i] = m.e[k] as u32;
        }
        out
    }

    /// Integer form of `p` (scaled by a positive rational), sign kept.
    pub fn from_poly(&self, p: &MultiPoly) -> IPoly {
        let prim = p.primitive();
        let mut terms: Vec<(Mono, BigInt)> =
            prim.terms().iter().map(|(m, c)| (self.mono_from(m), c.numer().clone())).collect();
        terms.sort_by(|a, b| self.ord.cmp(&b.0, &a.0));
        IPoly { terms }
    }

    pub fn to_poly(&self, p: &IPoly) -> MultiPoly {
        MultiPoly::from_terms(
            &self.ctx,
            p.terms.iter().map(|(m, c)| (self.mono_to(m), BigRational::from_integer(c.clone()))),
        )
    }

    /// `a * p[skip_p..] - b * q * g[skip_g..]` with all inputs sorted.
    pub fn sub_mul(
        &self,
        p: &[(Mono, BigInt)],
        a: &BigInt,
        b: &BigInt,
        q: &Mono,
        g: &[(Mono, BigInt)],
    ) -> Vec<(Mono, BigInt)> {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let a_one = a.is_one();
        let mut gj: Option<Mono> = g.first().map(|t| q.mul(&t.0));
        while i < p.len() || j < g.len() {
            let ord = match (p.get(i), &gj) {
                (Some(pt), Some(gm)) => self.ord.cmp(&pt.0, gm),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    let c = if a_one { p[i].1.clone() } else { &p[i].1 * a };
                    out.push((p[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    let c = -(&g[j].1 * b);
                    out.push((gj.take().unwrap(), c));
                    j += 1;
                    gj = g.get(j).map(|t| q.mul(&t.0));
                }
                Ordering::Equal => {
                    let c = if a_one { p[i].1.clone() } else { &p[i].1 * a } - &g[j].1 * b;
                    if !c.is_zero() {
                        out.push((p[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(|t| q.mul(&t.0));
                }
            }
        }
        out
    }

    /// S-polynomial of two nonzero polynomials.
    pub fn spoly(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let l = f.lm().lcm(g.lm());
        let qf = f.lm().quo(&l);
        let qg = g.lm().quo(&l);
        let gcd = f.lc().gcd(g.lc());
        let a = g.lc() / &gcd;
        let b = f.lc() / &gcd;
        let fs: Vec<(Mono, BigInt)> = f.terms[1..].iter().map(|(m, c)| (qf.mul(m), c.clone())).collect();
        IPoly { terms: self.sub_mul(&fs, &a, &b, &qg, &g.terms[1..]) }
    }

    /// Fully reduces `f` modulo `basis` (fraction-free). Returns `(r, c)` with
    /// `c * f - r` in the ideal and `c` a positive rational.
    pub fn reduce(
        &self,
        f: &IPoly,
        basis: &[&IPoly],
        full: bool,
        steps: &mut u64,
    ) -> (IPoly, BigRational) {
        let mut p: Vec<(Mono, BigInt)> = f.terms.clone();
        let mut start = 0usize;
        let mut r: Vec<(Mono, BigInt)> = Vec::new();
        let mut mult = BigRational::one();
        let mut since_strip = 0u32;
        while start < p.len() {
            let (m, c) = &p[start];
            let div = basis.iter().find(|g| g.lm().divides(m));
            match div {
                Some(g) => {
                    let q = g.lm().quo(m);
                    let gcd = c.gcd(g.lc());
                    let mut a = g.lc() / &gcd;
                    let mut b = c / &gcd;
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    p = self.sub_mul(&p[start + 1..], &a, &b, &q, &g.terms[1..]);
                    start = 0;
                    if !a.is_one() {
                        for t in &mut r {
                            t.1 *= &a;
                        }
                        mult *= BigRational::from_integer(a);
                    }
                    *steps += 1;
                    since_strip += 1;
                    if since_strip >= 8 {
                        since_strip = 0;
                        strip_common(&mut p, &mut r, &mut mult);
                    }
                }
                None => {
                    if !full {
                        r.extend(p.drain(start..));
                        break;
                    }
                    r.push(p[start].clone());
                    start += 1;
                }
            }
        }
        let mut out = IPoly { terms: r };
        if !out.is_zero() {
            let g = out.content();
            if !g.is_one() {
                for (_, c) in &mut out.terms {
                    *c /= &g;
                }
                mult /= BigRational::from_integer(g);
            }
        }
        (out, mult)
    }
}

fn strip_common(p: &mut [(Mono, BigInt)], r: &mut [(Mono, BigInt)], mult: &mut BigRational) {
    let mut g = BigInt::zero();
    for (_, c) in p.iter().chain(r.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in p.iter_mut().chain(r.iter_mut()) {
        *c /= &g;
    }
    *mult /= BigRational::from_integer(g);
}
