use std::time::Instant;

use num_bigint::BigInt;

use super::ipoly::{Mono, Ord2, Poly, Ring};
use super::modp::ModRing;
use super::{Budget, GbStats};
use crate::error::{Error, Result};

/// Coefficient arithmetic the engine runs over.
pub(crate) trait Arith {
    type C: Clone;
    fn ord(&self) -> Ord2;
    fn spoly(&self, f: &Poly<Self::C>, g: &Poly<Self::C>) -> Poly<Self::C>;
    /// Full reduction; the result is normalized (primitive or monic).
    fn reduce(&self, f: &Poly<Self::C>, basis: &[&Poly<Self::C>], steps: &mut u64) -> Poly<Self::C>;
}

impl Arith for Ring {
    type C = BigInt;
    fn ord(&self) -> Ord2 {
        self.ord
    }
    fn spoly(&self, f: &Poly<BigInt>, g: &Poly<BigInt>) -> Poly<BigInt> {
        Ring::spoly(self, f, g)
    }
    fn reduce(&self, f: &Poly<BigInt>, basis: &[&Poly<BigInt>], steps: &mut u64) -> Poly<BigInt> {
        let mut r = Ring::reduce(self, f, basis, true, steps).0;
        r.make_primitive();
        r
    }
}

impl Arith for ModRing {
    type C = u64;
    fn ord(&self) -> Ord2 {
        self.ord
    }
    fn spoly(&self, f: &Poly<u64>, g: &Poly<u64>) -> Poly<u64> {
        ModRing::spoly(self, f, g)
    }
    fn reduce(&self, f: &Poly<u64>, basis: &[&Poly<u64>], steps: &mut u64) -> Poly<u64> {
        ModRing::reduce(self, f, basis, steps)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

pub(crate) struct Engine<'a, A: Arith> {
    arith: &'a A,
    budget: &'a Budget,
    start: Instant,
    polys: Vec<Poly<A::C>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    pub stats: GbStats,
    /// Stop at the first S-pair that does not reduce to zero.
    pub verify_only: bool,
    pub failed: bool,
}

impl<'a, A: Arith> Engine<'a, A> {
    pub fn new(arith: &'a A, budget: &'a Budget) -> Self {
        Engine {
            arith,
            budget,
            start: Instant::now(),
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            stats: GbStats::default(),
            verify_only: false,
            failed: false,
        }
    }

    fn check_budget(&self) -> Result<()> {
        if let Some(max) = self.budget.max_pairs {
            if self.stats.pairs_reduced > max {
                return Err(Error::BudgetExceeded(format!("more than {max} S-pairs")));
            }
        }
        if let Some(max) = self.budget.max_reductions {
            if self.stats.reductions > max {
                return Err(Error::BudgetExceeded(format!("more than {max} reduction steps")));
            }
        }
        if let Some(secs) = self.budget.max_seconds {
            if self.start.elapsed().as_secs_f64() > secs {
                return Err(Error::BudgetExceeded("time budget exhausted".into()));
            }
        }
        Ok(())
    }

    fn reducers(&self) -> Vec<&Poly<A::C>> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller update after appending a new basis element.
    fn update(&mut self, h: Poly<A::C>) {
        let hi = self.polys.len();
        let hm = h.lm().clone();
        self.polys.push(h);
        self.active.push(true);

        let cands: Vec<(Pair, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let gm = self.polys[g].lm();
                (Pair { i: g, j: hi, lcm: gm.lcm(&hm) }, gm.coprime(&hm))
            })
            .collect();
        // Chain criterion among the new pairs: drop (g, h) if its lcm is a
        // proper multiple of another new pair's lcm, or equal to an earlier
        // one. Coprime pairs take part here and are dropped afterwards.
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].1 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].0.lcm.divides(&cands[a].0.lcm) && (cands[b].0.lcm != cands[a].0.lcm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let ncands = cands.len();
        let new_pairs: Vec<Pair> =
            cands.into_iter().zip(keep).filter(|((_, coprime), k)| *k && !coprime).map(|((p, _), _)| p).collect();
        self.stats.criteria_skipped += (ncands - new_pairs.len()) as u64;

        // Old pairs made redundant by the new element.
        let polys = &self.polys;
        let before = self.pairs.len();
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm) && polys[p.i].lm().lcm(&hm) != p.lcm && polys[p.j].lm().lcm(&hm) != p.lcm)
        });
        self.stats.criteria_skipped += (before - self.pairs.len()) as u64;
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    /// Index of the next pair under the normal strategy.
    fn select(&self) -> usize {
        let ord = self.arith.ord();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = a
                .lcm
                .deg
                .cmp(&b.lcm.deg)
                .then_with(|| ord.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if c.is_lt() {
                best = k;
            }
        }
        best
    }

    pub fn add_generator(&mut self, f: Poly<A::C>) {
        let mut steps = 0;
        let red = self.arith.reduce(&f, &self.reducers(), &mut steps);
        self.stats.reductions += steps;
        if !red.is_zero() {
            self.update(red);
        }
    }

    pub fn run(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            self.check_budget()?;
            let k = self.select();
            let pair = self.pairs.swap_remove(k);
            self.stats.pairs_reduced += 1;
            let s = self.arith.spoly(&self.polys[pair.i], &self.polys[pair.j]);
            if s.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let mut steps = 0;
            let h = self.arith.reduce(&s, &self.reducers(), &mut steps);
            self.stats.reductions += steps;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if self.verify_only {
                self.failed = true;
                break;
            }
            if h.lm().is_one() {
                self.polys.clear();
                self.active.clear();
                self.pairs.clear();
                self.polys.push(h);
                self.active.push(true);
                break;
            }
            self.update(h);
        }
        self.stats.elapsed_ms = self.start.elapsed().as_millis() as u64;
        Ok(())
    }

    /// Minimal, inter-reduced, normalized basis sorted by increasing leading
    /// monomial.
    pub fn reduced_basis(&mut self) -> Vec<Poly<A::C>> {
        let ord = self.arith.ord();
        let mut cands: Vec<Poly<A::C>> =
            self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect();
        cands.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        let mut minimal: Vec<Poly<A::C>> = Vec::new();
        for p in cands {
            if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
                minimal.push(p);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<&Poly<A::C>> =
                minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
            let mut steps = 0;
            out.push(self.arith.reduce(&minimal[k], &others, &mut steps));
            self.stats.reductions += steps;
        }
        out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        out
    }
}
