//! Basis conversion for zero-dimensional ideals: from a reduced basis in one
//! order to the reduced lex basis, by linear algebra in the quotient ring.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ipoly::{IPoly, Mono, Ord2};
use crate::algebra::OrderKind;
use crate::error::{Error, Result};

type RPoly = Vec<(Mono, BigRational)>;

/// Standard monomials of a zero-dimensional reduced basis, ascending.
fn staircase(basis: &[IPoly], nvars: usize, ord: Ord2) -> Result<Vec<Mono>> {
    for k in 0..nvars {
        let has_pure_power = basis.iter().any(|g| {
            let m = g.lm();
            m.e[k] > 0 && m.deg == m.e[k] as u32
        });
        if !has_pure_power {
            return Err(Error::NotZeroDimensional(format!("no pure power in variable {k}")));
        }
    }
    let mut seen: HashSet<Mono> = HashSet::new();
    let mut queue = vec![Mono::one(nvars)];
    seen.insert(Mono::one(nvars));
    let mut out = Vec::new();
    while let Some(m) = queue.pop() {
        out.push(m.clone());
        for k in 0..nvars {
            let next = m.mul(&Mono::var(nvars, k));
            if !seen.contains(&next) && !basis.iter().any(|g| g.lm().divides(&next)) {
                seen.insert(next.clone());
                queue.push(next);
            }
        }
    }
    out.sort_by(|a, b| ord.cmp(a, b));
    Ok(out)
}

/// Rational normal form modulo a monic reduced basis.
fn normal_form(mut p: RPoly, basis: &[RPoly], ord: Ord2) -> RPoly {
    let mut rem = Vec::new();
    p.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    while !p.is_empty() {
        let (m, c) = p[0].clone();
        match basis.iter().find(|g| g[0].0.divides(&m)) {
            Some(g) => {
                let q = g[0].0.quo(&m);
                let mut acc: HashMap<Mono, BigRational> = p[1..].iter().cloned().collect();
                for (gm, gc) in &g[1..] {
                    let t = q.mul(gm);
                    let e = acc.entry(t).or_insert_with(BigRational::zero);
                    *e -= &c * gc;
                }
                p = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                p.sort_by(|a, b| ord.cmp(&b.0, &a.0));
            }
            None => {
                rem.push((m, c));
                p.remove(0);
            }
        }
    }
    rem
}

struct Row {
    pivot: usize,
    vec: Vec<BigRational>,
    combo: Vec<BigRational>,
}

/// Converts a reduced zero-dimensional basis (terms sorted under `src`) into
/// the reduced lex basis on the same exponent layout.
pub(crate) fn fglm(basis: &[IPoly], nvars: usize, src: Ord2) -> Result<Vec<IPoly>> {
    if basis.iter().any(|g| g.lm().is_one()) {
        return Ok(basis.to_vec());
    }
    let lex = Ord2 { kind: OrderKind::Lex };
    let stairs = staircase(basis, nvars, src)?;
    let dim = stairs.len();
    let index: HashMap<Mono, usize> = stairs.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let monic: Vec<RPoly> = basis
        .iter()
        .map(|g| {
            let lc = BigRational::from_integer(g.lc().clone());
            g.terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()) / &lc)).collect()
        })
        .collect();

    // mult[k][b] = coordinates of NF(x_k * stairs[b]).
    let mut mult: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(nvars);
    for k in 0..nvars {
        let xk = Mono::var(nvars, k);
        let mut cols = Vec::with_capacity(dim);
        for b in &stairs {
            let m = b.mul(&xk);
            let mut col = vec![BigRational::zero(); dim];
            if let Some(&i) = index.get(&m) {
                col[i] = BigRational::one();
            } else {
                for (t, c) in normal_form(vec![(m, BigRational::one())], &monic, src) {
                    col[index[&t]] = c;
                }
            }
            cols.push(col);
        }
        mult.push(cols);
    }

    let apply = |k: usize, v: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); dim];
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            for (i, c) in mult[k][b].iter().enumerate() {
                if !c.is_zero() {
                    out[i] += vb * c;
                }
            }
        }
        out
    };

    let mut lex_stairs: Vec<(Mono, Vec<BigRational>)> = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut new_basis: Vec<RPoly> = Vec::new();
    let mut cands: Vec<(Mono, usize, usize)> = Vec::new();
    let mut visited: HashSet<Mono> = HashSet::new();

    let one = Mono::one(nvars);
    let mut e1 = vec![BigRational::zero(); dim];
    e1[index[&one]] = BigRational::one();
    let mut pending: Option<(Mono, Vec<BigRational>)> = Some((one, e1));

    loop {
        let (m, v) = match pending.take() {
            Some(x) => x,
            None => {
                // Smallest candidate under lex not divisible by a new leading monomial.
                cands.sort_by(|a, b| lex.cmp(&b.0, &a.0));
                let mut next = None;
                while let Some((m, parent, k)) = cands.pop() {
                    if visited.contains(&m) || new_basis.iter().any(|g| g[0].0.divides(&m)) {
                        continue;
                    }
                    visited.insert(m.clone());
                    next = Some((m, parent, k));
                    break;
                }
                match next {
                    None => break,
                    Some((m, parent, k)) => {
                        let v = apply(k, &lex_stairs[parent].1);
                        (m, v)
                    }
                }
            }
        };
        let n_s = lex_stairs.len();
        let mut w = v.clone();
        let mut acc = vec![BigRational::zero(); n_s];
        for row in &rows {
            let c = w[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (i, x) in row.vec.iter().enumerate() {
                if !x.is_zero() {
                    w[i] -= &c * x;
                }
            }
            for (s, t) in row.combo.iter().enumerate() {
                if !t.is_zero() {
                    acc[s] += &c * t;
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => {
                let mut poly: RPoly = vec![(m, BigRational::one())];
                for (s, c) in acc.into_iter().enumerate() {
                    if !c.is_zero() {
                        poly.push((lex_stairs[s].0.clone(), -c));
                    }
                }
                poly.sort_by(|a, b| lex.cmp(&b.0, &a.0));
                new_basis.push(poly);
            }
            Some(piv) => {
                let inv = w[piv].recip();
                let vec: Vec<BigRational> = w.iter().map(|x| x * &inv).collect();
                let mut combo: Vec<BigRational> = acc.iter().map(|x| -x * &inv).collect();
                combo.push(inv.clone());
                for r in rows.iter_mut() {
                    r.combo.resize(n_s + 1, BigRational::zero());
                }
                rows.push(Row { pivot: piv, vec, combo });
                for k in 0..nvars {
                    cands.push((m.mul(&Mono::var(nvars, k)), n_s, k));
                }
                visited.insert(m.clone());
                lex_stairs.push((m, v));
            }
        }
    }

    let mut out: Vec<IPoly> = new_basis.into_iter().map(to_integer).collect();
    out.sort_by(|a, b| lex.cmp(a.lm(), b.lm()));
    Ok(out)
}

fn to_integer(p: RPoly) -> IPoly {
    let den = p.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out = IPoly {
        terms: p.into_iter().map(|(m, c)| (m, c.numer() * (&den / c.denom()))).collect(),
    };
    out.make_primitive();
    debug_assert!(!out.lc().is_negative());
    out
}
