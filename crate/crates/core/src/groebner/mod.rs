//! Reduced Gröbner bases over the rationals.
//!
//! Buchberger's algorithm uses the normal selection strategy and the
//! Gebauer–Möller criteria. It runs either fraction-free on integer
//! polynomials or modulo several primes followed by an exact lift and check
//! (the default, see [`GbMethod`]). Lex bases of
//! zero-dimensional ideals can be obtained through a grevlex basis followed
//! by FGLM conversion; both routes give the same reduced basis.

mod buchberger;
mod fglm;
mod ipoly;
mod modp;
mod modular;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, MonomialOrder, MultiPoly, OrderKind, VarContext};
use crate::error::{Error, Result};
use crate::univar::UniPoly;
use buchberger::Engine;
use ipoly::{IPoly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub ctx: VarContext,
    pub generators: Vec<MultiPoly>,
}

impl IdealBasis {
    pub fn new(ctx: &VarContext, generators: Vec<MultiPoly>) -> Result<Self> {
        for g in &generators {
            if g.ctx() != ctx {
                return Err(Error::ContextError("generator context differs from ideal".into()));
            }
            if g.is_zero() {
                return Err(Error::ZeroPoly);
            }
        }
        Ok(IdealBasis { ctx: ctx.clone(), generators })
    }
}

/// Resource limits; `None` means unlimited.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Budget {
    pub max_pairs: Option<u64>,
    pub max_reductions: Option<u64>,
    pub max_seconds: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub criteria_skipped: u64,
    pub reductions: u64,
    pub elapsed_ms: u64,
    pub route: String,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ctx: VarContext,
    pub order: MonomialOrder,
    /// Primitive, positive leading coefficient, increasing leading monomials.
    pub elements: Vec<MultiPoly>,
    pub stats: GbStats,
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        let f = f.normalized();
        self.elements.iter().any(|g| *g == f)
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        normal_form(f, &self.elements, &self.order)
    }

    pub fn reduces_to_zero(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Remainder of `f` on division by `basis` under `order`: no term of the
/// result is divisible by a leading monomial of the basis, and `f - result`
/// lies in the ideal of the basis.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> Result<MultiPoly> {
    for g in basis {
        if g.ctx() != f.ctx() {
            return Err(Error::ContextError("basis context differs".into()));
        }
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let ring = Ring::new(f.ctx(), order);
    let ib: Vec<IPoly> = basis.iter().filter(|g| !g.is_zero()).map(|g| ring.from_poly(g)).collect();
    let refs: Vec<&IPoly> = ib.iter().collect();
    let (scale, fi) = f.primitive_split();
    let mut steps = 0;
    let (r, mult) = ring.reduce(&ring.from_poly(&fi), &refs, true, &mut steps);
    Ok(ring.to_poly(&r).scale(&(scale / mult)))
}

/// How Buchberger's algorithm handles coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GbMethod {
    /// Integer arithmetic throughout.
    FractionFree,
    /// Bases modulo primes, lifted and verified over the rationals; falls
    /// back to `FractionFree` if no verified lift is found.
    #[default]
    Modular,
}

fn run_buchberger(ring: &Ring, ideal: &IdealBasis, budget: &Budget, method: GbMethod) -> Result<(Vec<IPoly>, GbStats)> {
    let mut gens: Vec<IPoly> = ideal.generators.iter().map(|g| ring.from_poly(g)).collect();
    gens.sort_by(|a, b| ring.ord.cmp(a.lm(), b.lm()));
    if method == GbMethod::Modular {
        if let Some(found) = modular::modular_basis(ring, &gens, budget)? {
            return Ok(found);
        }
    }
    let mut engine = Engine::new(ring, budget);
    for g in gens {
        engine.add_generator(g);
    }
    engine.run()?;
    let basis = engine.reduced_basis();
    let mut stats = engine.stats;
    stats.route = "fraction-free".into();
    Ok((basis, stats))
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &IdealBasis, order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, budget, GbMethod::default())
}

pub fn buchberger_with(
    ideal: &IdealBasis,
    order: &MonomialOrder,
    budget: &Budget,
    method: GbMethod,
) -> Result<GroebnerBasis> {
    if ideal.generators.is_empty() {
        return Err(Error::ZeroPoly);
    }
    let ring = Ring::new(&ideal.ctx, order);
    let (basis, stats) = run_buchberger(&ring, ideal, budget, method)?;
    Ok(GroebnerBasis {
        ctx: ideal.ctx.clone(),
        order: order.clone(),
        elements: basis.iter().map(|p| ring.to_poly(p)).collect(),
        stats,
    })
}

/// Converts a reduced basis of a zero-dimensional ideal to the reduced lex
/// basis with the same variable precedence.
pub fn fglm(gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    let start = std::time::Instant::now();
    let src = Ring::new(&gb.ctx, &gb.order);
    let ib: Vec<IPoly> = gb.elements.iter().map(|g| src.from_poly(g)).collect();
    let lex_order = gb.order.with_kind(OrderKind::Lex);
    let lex = Ring::new(&gb.ctx, &lex_order);
    let out = fglm::fglm(&ib, gb.ctx.len(), src.ord)?;
    let mut stats = gb.stats.clone();
    stats.elapsed_ms += start.elapsed().as_millis() as u64;
    stats.route = format!("{}+fglm", gb.stats.route);
    Ok(GroebnerBasis {
        ctx: gb.ctx.clone(),
        order: lex_order,
        elements: out.iter().map(|p| lex.to_poly(p)).collect(),
        stats,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LexRoute {
    /// Buchberger directly in lex.
    Direct,
    /// Grevlex Buchberger followed by FGLM.
    #[default]
    Fglm,
}

/// Reduced lex basis; the FGLM route requires a zero-dimensional ideal and
/// falls back to direct computation otherwise.
pub fn lex_basis(ideal: &IdealBasis, lex: &MonomialOrder, budget: &Budget, route: LexRoute) -> Result<GroebnerBasis> {
    if lex.kind != OrderKind::Lex {
        return Err(Error::ContextError("lex_basis needs a lex order".into()));
    }
    match route {
        LexRoute::Direct => buchberger(ideal, lex, budget),
        LexRoute::Fglm => {
            let grevlex = buchberger(ideal, &lex.with_kind(OrderKind::GrevLex), budget)?;
            match fglm(&grevlex) {
                Err(Error::NotZeroDimensional(_)) => buchberger(ideal, lex, budget),
                other => other,
            }
        }
    }
}

/// The basis element that involves only `var`, as a primitive univariate
/// polynomial with positive leading coefficient.
pub fn eliminant(gb: &GroebnerBasis, var: &str) -> Result<UniPoly> {
    let i = gb.ctx.require(var)?;
    if gb.order.kind != OrderKind::Lex || gb.order.least_var() != i {
        return Err(Error::ContextError(format!("{var} is not the least variable of a lex order")));
    }
    gb.elements
        .iter()
        .find(|g| !g.is_constant() && g.support() == vec![i])
        .map(|g| UniPoly::from_multipoly(g, var).map(|u| u.normalized()))
        .unwrap_or_else(|| Err(Error::NotZeroDimensional(format!("no element univariate in {var}"))))
}

/// Rabinowitsch saturation: extends the context by a fresh leading variable
/// `fresh` and appends `fresh * prod(factors) - 1`.
pub fn saturate_nonzero(ideal: &IdealBasis, factors: &[MultiPoly], fresh: &str) -> Result<IdealBasis> {
    let ctx = ideal.ctx.with_leading(fresh)?;
    let mut prod = MultiPoly::var(&ctx, fresh)?;
    for f in factors {
        if f.ctx() != &ideal.ctx {
            return Err(Error::ContextError("factor context differs from ideal".into()));
        }
        prod = &prod * &f.to_context(&ctx)?;
    }
    let mut gens = ideal.generators.iter().map(|g| g.to_context(&ctx)).collect::<Result<Vec<_>>>()?;
    gens.push(&prod - &MultiPoly::one(&ctx));
    IdealBasis::new(&ctx, gens)
}

/// No leading monomial divides a term of another element, and every element
/// is primitive with positive leading coefficient.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let ring = Ring::new(&gb.ctx, &gb.order);
    let ib: Vec<IPoly> = gb.elements.iter().map(|g| ring.from_poly(g)).collect();
    for (k, g) in ib.iter().enumerate() {
        if gb.elements[k] != gb.elements[k].normalized_under(&gb.order) {
            return false;
        }
        for (j, h) in ib.iter().enumerate() {
            if j != k && h.terms.iter().any(|(m, _)| g.lm().divides(m)) {
                return false;
            }
        }
    }
    true
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn s_polys_reduce_to_zero(gb: &GroebnerBasis) -> bool {
    let ring = Ring::new(&gb.ctx, &gb.order);
    let ib: Vec<IPoly> = gb.elements.iter().map(|g| ring.from_poly(g)).collect();
    let refs: Vec<&IPoly> = ib.iter().collect();
    for i in 0..ib.len() {
        for j in i + 1..ib.len() {
            let s = ring.spoly(&ib[i], &ib[j]);
            let mut steps = 0;
            if !ring.reduce(&s, &refs, true, &mut steps).0.is_zero() {
                return false;
            }
        }
    }
    true
}

impl MultiPoly {
    /// Primitive form with positive leading coefficient under `order`.
    pub fn normalized_under(&self, order: &MonomialOrder) -> MultiPoly {
        let p = self.primitive();
        match p.leading(order) {
            Some((_, c)) if c < &BigRational::from_integer(0.into()) => -p,
            _ => p,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrderJson {
    pub kind: OrderKind,
    pub precedence: Vec<String>,
}

/// CLI-facing ideal description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub order: OrderJson,
    pub polys: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisJson {
    pub vars: Vec<String>,
    pub order: OrderJson,
    pub polys: Vec<String>,
    pub stats: GbStats,
}

impl IdealJson {
    pub fn parse(&self) -> Result<(IdealBasis, MonomialOrder)> {
        let ctx = VarContext::new(&self.vars)?;
        let order = MonomialOrder::by_names(self.order.kind, &ctx, &self.order.precedence)?;
        let gens = self.polys.iter().map(|s| parse_poly(&ctx, s)).collect::<Result<Vec<_>>>()?;
        Ok((IdealBasis::new(&ctx, gens)?, order))
    }
}

impl GroebnerBasis {
    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            vars: self.ctx.names().to_vec(),
            order: OrderJson {
                kind: self.order.kind,
                precedence: self.order.precedence.iter().map(|&i| self.ctx.name(i).to_string()).collect(),
            },
            polys: self.elements.iter().map(|p| p.to_string()).collect(),
            stats: self.stats.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyFile;

    fn ideal(text: &str) -> IdealBasis {
        let f = PolyFile::parse(text).unwrap();
        IdealBasis::new(&f.ctx, f.polys).unwrap()
    }

    #[test]
    fn small_lex_basis() {
        let id = ideal("vars: x, y\nx^2 - 1\nx*y - 1\n");
        let lex = MonomialOrder::lex(&id.ctx, &["x", "y"]).unwrap();
        let gb = buchberger(&id, &lex, &Budget::default()).unwrap();
        let strs: Vec<String> = gb.elements.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["y^2 - 1", "x - y"]);
        assert_eq!(eliminant(&gb, "y").unwrap(), UniPoly::from_ints("y", &[-1, 0, 1]));
        let via_fglm = lex_basis(&id, &lex, &Budget::default(), LexRoute::Fglm).unwrap();
        assert_eq!(via_fglm.elements, gb.elements);
    }

    #[test]
    fn normal_forms() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let lex = MonomialOrder::lex(&c, &["x", "y"]).unwrap();
        let x = MultiPoly::var(&c, "x").unwrap();
        let y1 = parse_poly(&c, "y + 1").unwrap();
        assert!(normal_form(&x.pow(2), &[x.clone()], &lex).unwrap().is_zero());
        assert_eq!(normal_form(&y1, &[x.clone()], &lex).unwrap(), y1);
        let f = parse_poly(&c, "2*x^2 + 3*y").unwrap();
        let g = parse_poly(&c, "3*x - y").unwrap();
        let r = normal_form(&f, &[g], &lex).unwrap();
        assert_eq!(r, parse_poly(&c, "2/9*y^2 + 3*y").unwrap());
    }

    #[test]
    fn saturation_detects_inconsistency() {
        let id = ideal("vars: x\nx^2\n");
        let x = MultiPoly::var(&id.ctx, "x").unwrap();
        let sat = saturate_nonzero(&id, &[x], "z").unwrap();
        let order = MonomialOrder::lex(&sat.ctx, &["z", "x"]).unwrap();
        let gb = buchberger(&sat, &order, &Budget::default()).unwrap();
        assert!(gb.is_unit());
        assert!(matches!(saturate_nonzero(&id, &[], "x"), Err(Error::ContextError(_))));
    }

    #[test]
    fn modular_matches_fraction_free() {
        let id = ideal("vars: x, y, z\nx^2 + 3*y*z - 2\n5*y^2 - x*z + 1\nz^2 - 7*x*y + x - 4\n");
        for kind in [OrderKind::GrevLex, OrderKind::Lex] {
            let order = MonomialOrder::by_names(kind, &id.ctx, &["x", "y", "z"]).unwrap();
            let a = buchberger_with(&id, &order, &Budget::default(), GbMethod::Modular).unwrap();
            let b = buchberger_with(&id, &order, &Budget::default(), GbMethod::FractionFree).unwrap();
            assert_eq!(a.elements, b.elements);
            assert!(a.stats.route.starts_with("modular"));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let id = ideal("vars: x, y, z\nx^3 - y*z - 1\ny^3 - x*z - 2\nz^3 - x*y - 3\n");
        let lex = MonomialOrder::lex(&id.ctx, &["x", "y", "z"]).unwrap();
        let budget = Budget { max_pairs: Some(1), ..Default::default() };
        for method in [GbMethod::Modular, GbMethod::FractionFree] {
            assert!(matches!(buchberger_with(&id, &lex, &budget, method), Err(Error::BudgetExceeded(_))));
        }
    }
}
