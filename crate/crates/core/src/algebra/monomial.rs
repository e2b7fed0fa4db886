use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::VarContext;
use crate::error::{Error, Result};

/// Exponent vector, one entry per context variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Graded reverse lexicographic comparison in the natural variable order.
    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A monomial order together with a variable precedence (highest first),
/// given as indices into the context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &i in &precedence {
            if i >= seen.len() || seen[i] {
                return Err(Error::ContextError("precedence is not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn natural(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, precedence: (0..nvars).collect() }
    }

    pub fn by_names<S: AsRef<str>>(kind: OrderKind, ctx: &VarContext, names: &[S]) -> Result<Self> {
        if names.len() != ctx.len() {
            return Err(Error::ContextError(format!(
                "precedence lists {} variables, context has {}",
                names.len(),
                ctx.len()
            )));
        }
        let idx = names.iter().map(|n| ctx.require(n.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(kind, idx)
    }

    pub fn lex(ctx: &VarContext, names: &[&str]) -> Result<Self> {
        Self::by_names(OrderKind::Lex, ctx, names)
    }

    pub fn grevlex(ctx: &VarContext, names: &[&str]) -> Result<Self> {
        Self::by_names(OrderKind::GrevLex, ctx, names)
    }

    pub fn with_kind(&self, kind: OrderKind) -> Self {
        MonomialOrder { kind, precedence: self.precedence.clone() }
    }

    /// Index of the smallest variable under this order.
    pub fn least_var(&self) -> usize {
        *self.precedence.last().expect("empty precedence")
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.precedence {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for &i in self.precedence.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z.
        let xz = Monomial(smallvec![1, 0, 1]);
        let yy = Monomial(smallvec![0, 2, 0]);
        let ord = MonomialOrder::natural(OrderKind::GrevLex, 3);
        assert_eq!(ord.cmp(&xz, &yy), Ordering::Less);
        assert_eq!(xz.cmp_grevlex(&yy), Ordering::Less);
        let lex = MonomialOrder::natural(OrderKind::Lex, 3);
        assert_eq!(lex.cmp(&xz, &yy), Ordering::Greater);
    }

    #[test]
    fn precedence_must_be_permutation() {
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
        assert!(MonomialOrder::new(OrderKind::Lex, vec![1, 0]).is_ok());
    }
}
