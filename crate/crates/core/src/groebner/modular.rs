//! Multi-modular Gröbner bases: reduced bases modulo several primes are
//! lifted by Chinese remaindering and rational reconstruction, then checked
//! over the rationals (every generator reduces to zero and every S-pair
//! reduces to zero). Fraction-free Buchberger over the integers suffers
//! intermediate coefficient swell that the final bases do not have.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::buchberger::Engine;
use super::ipoly::{IPoly, Mono, Ring};
use super::modp::{bigint_mod, inv_mod, primes, rational_reconstruct, FPoly, ModRing};
use super::{Budget, GbStats};
use crate::error::{Error, Result};

/// Give up on the modular route after this many primes without a verified
/// reconstruction.
const MAX_PRIMES: usize = 96;

struct Group {
    leads: Vec<Mono>,
    modulus: BigInt,
    coeffs: Vec<HashMap<Mono, BigInt>>,
    primes: usize,
}

impl Group {
    fn new(basis: &[FPoly], p: u64) -> Self {
        Group {
            leads: basis.iter().map(|g| g.lm().clone()).collect(),
            modulus: BigInt::from(p),
            coeffs: basis
                .iter()
                .map(|g| g.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect())
                .collect(),
            primes: 1,
        }
    }

    fn absorb(&mut self, basis: &[FPoly], p: u64) {
        let minv = inv_mod(bigint_mod(&self.modulus, p), p);
        let pb = BigInt::from(p);
        for (acc, g) in self.coeffs.iter_mut().zip(basis) {
            let new: HashMap<&Mono, u64> = g.terms.iter().map(|(m, c)| (m, *c)).collect();
            for (m, _) in &g.terms {
                acc.entry(m.clone()).or_insert_with(BigInt::zero);
            }
            for (m, a) in acc.iter_mut() {
                let r = new.get(m).copied().unwrap_or(0);
                let am = bigint_mod(a, p);
                let t = (r + p - am) % p * minv % p;
                *a += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= pb;
        self.primes += 1;
    }

    fn reconstruct(&self, ring: &Ring) -> Option<Vec<IPoly>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (acc, lead) in self.coeffs.iter().zip(&self.leads) {
            let mut terms = Vec::with_capacity(acc.len());
            let mut den = BigInt::one();
            for (m, a) in acc {
                if a.is_zero() {
                    continue;
                }
                let (num, d) = rational_reconstruct(a, &self.modulus)?;
                den = den.lcm(&d);
                terms.push((m.clone(), num, d));
            }
            let mut terms: Vec<(Mono, BigInt)> =
                terms.into_iter().map(|(m, n, d)| (m, n * (&den / d))).collect();
            terms.sort_by(|a, b| ring.ord.cmp(&b.0, &a.0));
            let mut g = IPoly { terms };
            if g.is_zero() || g.lm() != lead {
                return None;
            }
            g.make_primitive();
            out.push(g);
        }
        Some(out)
    }
}

/// Reduced basis over the rationals, checked exactly. Returns `None` when no
/// verified reconstruction was found within the prime limit.
pub(crate) fn modular_basis(ring: &Ring, gens: &[IPoly], budget: &Budget) -> Result<Option<(Vec<IPoly>, GbStats)>> {
    let start = Instant::now();
    let mut groups: Vec<Group> = Vec::new();
    let mut last: Option<Vec<IPoly>> = None;
    let mut first_stats: Option<GbStats> = None;
    let mut used = 0usize;
    for p in primes() {
        if used >= MAX_PRIMES {
            return Ok(None);
        }
        let remaining = budget.max_seconds.map(|s| s - start.elapsed().as_secs_f64());
        if remaining.is_some_and(|r| r <= 0.0) {
            return Err(Error::BudgetExceeded("time budget exhausted".into()));
        }
        let mr = ModRing { p, ord: ring.ord };
        let Some(images) = gens.iter().map(|g| mr.image(g)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        used += 1;
        let sub_budget = Budget { max_seconds: remaining, ..budget.clone() };
        let mut engine = Engine::new(&mr, &sub_budget);
        let mut sorted = images;
        sorted.sort_by(|a, b| ring.ord.cmp(a.lm(), b.lm()));
        for g in sorted {
            engine.add_generator(g);
        }
        engine.run()?;
        let basis = engine.reduced_basis();
        if first_stats.is_none() {
            first_stats = Some(engine.stats.clone());
        }

        let leads: Vec<Mono> = basis.iter().map(|g| g.lm().clone()).collect();
        let gi = match groups.iter().position(|g| g.leads == leads) {
            Some(i) => {
                groups[i].absorb(&basis, p);
                i
            }
            None => {
                groups.push(Group::new(&basis, p));
                groups.len() - 1
            }
        };
        // Reconstruct from the best-supported group only.
        let best = (0..groups.len()).max_by_key(|&i| (groups[i].primes, std::cmp::Reverse(i))).unwrap();
        if best != gi {
            continue;
        }
        let Some(candidate) = groups[best].reconstruct(ring) else {
            last = None;
            continue;
        };
        if last.as_ref() != Some(&candidate) {
            last = Some(candidate);
            continue;
        }
        if verify(ring, gens, &candidate, budget, start)? {
            let mut stats = first_stats.unwrap_or_default();
            stats.elapsed_ms = start.elapsed().as_millis() as u64;
            stats.route = format!("modular({used} primes)");
            return Ok(Some((candidate, stats)));
        }
        last = None;
    }
    Ok(None)
}

/// Exact check that `candidate` is a Gröbner basis containing every generator.
fn verify(ring: &Ring, gens: &[IPoly], candidate: &[IPoly], budget: &Budget, start: Instant) -> Result<bool> {
    let refs: Vec<&IPoly> = candidate.iter().collect();
    for g in gens {
        let mut steps = 0;
        if !ring.reduce(g, &refs, true, &mut steps).0.is_zero() {
            return Ok(false);
        }
    }
    let remaining = budget.max_seconds.map(|s| s - start.elapsed().as_secs_f64());
    let sub_budget = Budget { max_seconds: remaining, ..budget.clone() };
    let mut engine = Engine::new(ring, &sub_budget);
    for g in candidate {
        engine.add_generator(g.clone());
    }
    engine.verify_only = true;
    engine.run()?;
    Ok(!engine.failed)
}
