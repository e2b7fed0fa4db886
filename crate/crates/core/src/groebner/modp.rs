//! Polynomials over a prime field `F_p` with `p < 2^31`, used by the
//! multi-modular route.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ipoly::{IPoly, Mono, Ord2, Poly};

pub(crate) type FPoly = Poly<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModRing {
    pub p: u64,
    pub ord: Ord2,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits")
}

impl ModRing {
    /// Image of an integer polynomial, made monic. `None` if `p` divides the
    /// leading coefficient.
    pub fn image(&self, f: &IPoly) -> Option<FPoly> {
        if bigint_mod(f.lc(), self.p) == 0 {
            return None;
        }
        let mut out = FPoly {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), bigint_mod(c, self.p)))
                .filter(|(_, c)| *c != 0)
                .collect(),
        };
        self.make_monic(&mut out);
        Some(out)
    }

    pub fn make_monic(&self, f: &mut FPoly) {
        if f.is_zero() || *f.lc() == 1 {
            return;
        }
        let inv = inv_mod(*f.lc(), self.p);
        for t in &mut f.terms {
            t.1 = t.1 * inv % self.p;
        }
    }

    /// `p - c * q * g`.
    fn sub_mul(&self, p: &[(Mono, u64)], c: u64, q: &Mono, g: &[(Mono, u64)]) -> Vec<(Mono, u64)> {
        let m = self.p;
        let neg = (m - c) % m;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut gj: Option<Mono> = g.first().map(|t| q.mul(&t.0));
        while i < p.len() || j < g.len() {
            let ord = match (p.get(i), &gj) {
                (Some(pt), Some(gm)) => self.ord.cmp(&pt.0, gm),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gj.take().unwrap(), g[j].1 * neg % m));
                    j += 1;
                    gj = g.get(j).map(|t| q.mul(&t.0));
                }
                Ordering::Equal => {
                    let v = (p[i].1 + g[j].1 * neg) % m;
                    if v != 0 {
                        out.push((p[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(|t| q.mul(&t.0));
                }
            }
        }
        out
    }

    pub fn spoly(&self, f: &FPoly, g: &FPoly) -> FPoly {
        let l = f.lm().lcm(g.lm());
        let qf = f.lm().quo(&l);
        let qg = g.lm().quo(&l);
        let fs: Vec<(Mono, u64)> = f.terms[1..].iter().map(|(m, c)| (qf.mul(m), *c)).collect();
        FPoly { terms: self.sub_mul(&fs, 1, &qg, &g.terms[1..]) }
    }

    /// Full reduction modulo monic `basis`; the result is monic.
    pub fn reduce(&self, f: &FPoly, basis: &[&FPoly], steps: &mut u64) -> FPoly {
        let mut p = f.terms.clone();
        let mut start = 0usize;
        let mut r: Vec<(Mono, u64)> = Vec::new();
        while start < p.len() {
            let m = &p[start].0;
            match basis.iter().find(|g| g.lm().divides(m)) {
                Some(g) => {
                    let q = g.lm().quo(m);
                    let c = p[start].1;
                    p = self.sub_mul(&p[start + 1..], c, &q, &g.terms[1..]);
                    start = 0;
                    *steps += 1;
                }
                None => {
                    r.push(p[start].clone());
                    start += 1;
                }
            }
        }
        let mut out = FPoly { terms: r };
        self.make_monic(&mut out);
        out
    }
}

/// Rational `a/b` with `a ≡ b * u (mod m)`, `|a|, b <= sqrt(m/2)`.
pub(crate) fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Primes just below `2^31`, descending.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..(1u64 << 31)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let u = (BigInt::from(3) * BigInt::from(inv_mod(7, 1_000_000_007))) % &m;
        assert_eq!(rational_reconstruct(&u, &m), Some((BigInt::from(3), BigInt::from(7))));
        let u = (BigInt::from(1_000_000_007u64 - 3) * BigInt::from(inv_mod(7, 1_000_000_007))) % &m;
        assert_eq!(rational_reconstruct(&u, &m), Some((BigInt::from(-3), BigInt::from(7))));
        assert_eq!(inv_mod(3, 7), 5);
        assert_eq!(primes().next(), Some(2147483647));
    }
}
