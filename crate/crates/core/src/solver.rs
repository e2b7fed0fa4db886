//! Einstein systems and their certified positive solutions.
//!
//! Pipeline per branch: saturate the system away from the coordinate
//! hyperplanes, take the lex basis, isolate the positive roots of the
//! eliminant in the least variable, then recover the remaining coordinates
//! from basis elements linear in each variable, evaluated over intervals.
//! Every candidate is certified by evaluating the closed-form Ricci
//! components over the coordinate boxes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::rational::{frac, int, rat_string, to_decimal, to_f64};
use crate::algebra::{clear_denominators, parse_poly, ClearOptions, MultiPoly, RationalExpr, VarContext};
use crate::error::{Error, Result};
use crate::geometry::{flag_ricci_symbolic, ricci_closed_form, FibrationSpec};
use crate::groebner::{eliminant, lex_basis, saturate_nonzero, Budget, GbStats, GroebnerBasis, IdealBasis, LexRoute};
use crate::interval::{Interval, IntervalJson, Outward};
use crate::univar::{exact_divide, isolate_real_roots, refine_with, squarefree_part, SturmSequence, UniPoly};
use crate::algebra::{Domain, MonomialOrder, OrderKind};

#[derive(Clone, Debug)]
pub struct EinsteinSystem {
    /// `None` for the flag system with symbolic `n`, `p`.
    pub spec: Option<FibrationSpec>,
    pub ctx: VarContext,
    pub normalized_variable: String,
    pub polys: Vec<MultiPoly>,
    /// Labels `(i, j)` of the difference `r_i - r_j` behind each polynomial.
    pub provenance: Vec<(String, String)>,
}

fn differences(
    exprs: &[RationalExpr],
    labels: &[&str],
    ctx: &VarContext,
    opts: &ClearOptions,
) -> Result<(Vec<MultiPoly>, Vec<(String, String)>)> {
    let mut polys = Vec::new();
    let mut prov = Vec::new();
    for k in 0..exprs.len() - 1 {
        let d = exprs[k].clone() - exprs[k + 1].clone();
        polys.push(clear_denominators(&d, ctx, opts)?);
        prov.push((labels[k].to_string(), labels[k + 1].to_string()));
    }
    Ok((polys, prov))
}

/// Consecutive differences of the Ricci components with the last metric
/// parameter set to 1, cleared of denominators with signs preserved on the
/// positive orthant.
pub fn assemble_system(spec: &FibrationSpec) -> Result<EinsteinSystem> {
    let exprs = ricci_closed_form(spec)?;
    let norm = spec.normalized_var();
    let exprs: Vec<RationalExpr> = exprs.iter().map(|e| e.substitute(norm, &RationalExpr::int(1))).collect();
    let unknowns: Vec<&str> = spec.var_names().iter().copied().filter(|v| *v != norm).collect();
    let ctx = VarContext::new(&unknowns)?;
    let (polys, provenance) = differences(&exprs, spec.labels(), &ctx, &ClearOptions::default())?;
    Ok(EinsteinSystem { spec: Some(*spec), ctx, normalized_variable: norm.to_string(), polys, provenance })
}

/// The flag system in `u0, u1, u2` with `n` and `p` kept as variables.
/// Denominators `n + 1`, `p - 1`, `p + 1` are treated as positive.
pub fn assemble_flag_symbolic() -> Result<EinsteinSystem> {
    let exprs: Vec<RationalExpr> =
        flag_ricci_symbolic().iter().map(|e| e.substitute("u3", &RationalExpr::int(1))).collect();
    let ctx = VarContext::new(&["u0", "u1", "u2", "n", "p"])?;
    let opts = ClearOptions {
        positive_atoms: ["n + 1", "p - 1", "p + 1"].iter().map(|s| parse_poly(&ctx, s)).collect::<Result<_>>()?,
        ..Default::default()
    };
    let (polys, provenance) = differences(&exprs, &["0", "1", "2", "3"], &ctx, &opts)?;
    Ok(EinsteinSystem { spec: None, ctx, normalized_variable: "u3".into(), polys, provenance })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Generic,
    /// The locus removed from the generic saturation (`x13 = 1`, `u1 = 1`).
    NormalizedEqual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    New,
    Jensen,
    #[serde(rename = "ADN")]
    Adn,
    Unclassified,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Certification threshold for `max |r_i - r_j|`.
    pub tol: BigRational,
    /// Target width of every coordinate interval.
    pub width: BigRational,
    pub ctol: f64,
    pub budget: Budget,
    pub generic: bool,
    pub special: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: frac(1, 1_000_000_000),
            width: BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12)),
            ctol: 1e-8,
            budget: Budget::default(),
            generic: true,
            special: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EinsteinSolution {
    pub spec: FibrationSpec,
    pub branch: Branch,
    /// Every metric parameter in label order, the normalized one included.
    pub coords: Vec<(String, Interval)>,
    pub lambda: Interval,
    pub residual_bound: BigRational,
    pub class: Class,
    pub symmetry_partner: Option<usize>,
}

impl EinsteinSolution {
    pub fn coord(&self, name: &str) -> Option<&Interval> {
        self.coords.iter().find(|(n, _)| n == name).map(|(_, iv)| iv)
    }

    pub fn approx(&self) -> Vec<f64> {
        self.coords.iter().map(|(_, iv)| to_f64(&iv.midpoint())).collect()
    }

    pub fn to_json(&self, digits: usize) -> SolutionJson {
        SolutionJson {
            spec: self.spec,
            branch: self.branch,
            coords: Coords(
                self.coords
                    .iter()
                    .map(|(n, iv)| (n.clone(), CoordJson { interval: iv.to_json(), approx: iv.approx(digits) }))
                    .collect(),
            ),
            lambda: CoordJson { interval: self.lambda.to_json(), approx: self.lambda.approx(digits) },
            residual_bound: rat_string(&self.residual_bound),
            class: self.class,
            symmetry_partner: self.symmetry_partner,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordJson {
    pub interval: IntervalJson,
    pub approx: String,
}

/// Coordinates serialized as a map in label order.
#[derive(Clone, Debug)]
pub struct Coords(pub Vec<(String, CoordJson)>);

impl Serialize for Coords {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionJson {
    pub spec: FibrationSpec,
    pub branch: Branch,
    pub coords: Coords,
    pub lambda: CoordJson,
    pub residual_bound: String,
    pub class: Class,
    pub symmetry_partner: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub branch: Branch,
    pub eliminant_var: String,
    pub eliminant_degree: usize,
    pub positive_roots: usize,
    pub gb: GbStats,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solutions: Vec<EinsteinSolution>,
    /// Candidates that could not be certified, with the reason.
    pub uncertified: Vec<String>,
    pub branches: Vec<BranchReport>,
}

struct Plan {
    branch: Branch,
    ctx: VarContext,
    polys: Vec<MultiPoly>,
    /// Lex precedence of the unknowns, highest first.
    precedence: Vec<String>,
    sat_factors: Vec<MultiPoly>,
    /// Known roots divided out of the eliminant.
    divide_out: Vec<BigRational>,
    fixed: Vec<(String, BigRational)>,
}

fn restrict(system: &EinsteinSystem, var: &str, value: &BigRational) -> Result<(VarContext, Vec<MultiPoly>)> {
    let ctx = system.ctx.without(var)?;
    let mut polys = Vec::new();
    for p in &system.polys {
        let q = p.set_var(var, value)?.to_context(&ctx)?;
        if !q.is_zero() {
            let q = q.primitive();
            if !polys.contains(&q) {
                polys.push(q);
            }
        }
    }
    Ok((ctx, polys))
}

fn vars(ctx: &VarContext, names: &[&str]) -> Result<Vec<MultiPoly>> {
    names.iter().map(|n| MultiPoly::var(ctx, n)).collect()
}

fn plans(spec: &FibrationSpec, system: &EinsteinSystem, opts: &SolveOptions) -> Result<Vec<Plan>> {
    let one = BigRational::one();
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut out = Vec::new();
    match spec {
        FibrationSpec::Wallach { .. } => {
            if opts.generic {
                out.push(Plan {
                    branch: Branch::Generic,
                    ctx: system.ctx.clone(),
                    polys: system.polys.clone(),
                    precedence: owned(&["x2", "x1", "x12", "x13"]),
                    sat_factors: vars(&system.ctx, &["x1", "x2", "x12", "x13"])?,
                    divide_out: vec![one.clone()],
                    fixed: vec![("x23".into(), one.clone())],
                });
            }
            if opts.special {
                let (ctx, polys) = restrict(system, "x13", &one)?;
                out.push(Plan {
                    branch: Branch::NormalizedEqual,
                    sat_factors: vars(&ctx, &["x1", "x2", "x12"])?,
                    ctx,
                    polys,
                    precedence: owned(&["x2", "x1", "x12"]),
                    divide_out: vec![],
                    fixed: vec![("x13".into(), one.clone()), ("x23".into(), one.clone())],
                });
            }
        }
        FibrationSpec::Flag { .. } => {
            if opts.generic {
                let mut sat_factors = vars(&system.ctx, &["u0", "u1", "u2"])?;
                sat_factors.push(parse_poly(&system.ctx, "u1 - 1")?);
                out.push(Plan {
                    branch: Branch::Generic,
                    ctx: system.ctx.clone(),
                    polys: system.polys.clone(),
                    precedence: owned(&["u0", "u2", "u1"]),
                    sat_factors,
                    divide_out: vec![],
                    fixed: vec![("u3".into(), one.clone())],
                });
            }
            if opts.special {
                let (ctx, polys) = restrict(system, "u1", &one)?;
                out.push(Plan {
                    branch: Branch::NormalizedEqual,
                    sat_factors: vars(&ctx, &["u0", "u2"])?,
                    ctx,
                    polys,
                    precedence: owned(&["u0", "u2"]),
                    divide_out: vec![],
                    fixed: vec![("u1".into(), one.clone()), ("u3".into(), one)],
                });
            }
        }
    }
    Ok(out)
}

/// Saturated lex basis of a branch, with the fresh variable `z` leading.
fn branch_basis(plan: &Plan, budget: &Budget) -> Result<GroebnerBasis> {
    let ideal = IdealBasis::new(&plan.ctx, plan.polys.clone())?;
    let sat = saturate_nonzero(&ideal, &plan.sat_factors, "z")?;
    let mut prec = vec!["z".to_string()];
    prec.extend(plan.precedence.iter().cloned());
    let lex = MonomialOrder::by_names(OrderKind::Lex, &sat.ctx, &prec)?;
    lex_basis(&sat, &lex, budget, LexRoute::Fglm)
}

/// Elements `c * v + w` with `c`, `w` free of `v` and of every variable
/// above `v`.
struct Linear {
    var: usize,
    forms: Vec<(MultiPoly, MultiPoly)>,
}

fn linear_elements(gb: &GroebnerBasis, precedence: &[usize]) -> Vec<Linear> {
    let mut out = Vec::new();
    for (k, &v) in precedence.iter().enumerate() {
        // Everything outside `v` and the variables below it, the saturation
        // variable included.
        let allowed = &precedence[k..];
        let forms = gb
            .elements
            .iter()
            .filter(|g| g.degree_in(v) == 1 && g.support().iter().all(|i| allowed.contains(i)))
            .map(|g| {
                let cs = g.coeffs_in(v);
                (cs[1].clone(), cs[0].clone())
            })
            .collect();
        out.push(Linear { var: v, forms });
    }
    out
}

enum Backsub {
    Done(Vec<Interval>),
    /// Some coordinate is certainly negative.
    NotPositive,
    /// Two basis elements give disjoint enclosures.
    Inconsistent,
    NeedsRefinement,
}

fn back_substitute(linear: &[Linear], least: usize, root: &Interval, nvars: usize, dom: &Outward, width: &BigRational) -> Result<Backsub> {
    let mut vals = vec![Interval::point(BigRational::zero()); nvars];
    vals[least] = root.clone();
    // Lowest unknown first.
    for lin in linear.iter().rev() {
        if lin.var == least {
            continue;
        }
        if lin.forms.is_empty() {
            return Err(Error::UncertifiedSolution(format!("no basis element linear in variable #{}", lin.var)));
        }
        let mut best: Option<Interval> = None;
        for (c, w) in &lin.forms {
            let ci = c.eval_in(dom, &vals);
            if ci.contains_zero() {
                continue;
            }
            let wi = w.eval_in(dom, &vals);
            let xi = dom.div(&dom.neg(&wi), &ci)?;
            best = Some(match best {
                None => xi,
                Some(b) => match b.intersect(&xi) {
                    Some(i) => i,
                    None => return Ok(Backsub::Inconsistent),
                },
            });
        }
        let Some(x) = best else {
            return Ok(Backsub::NeedsRefinement);
        };
        if x.hi.is_negative() || x.hi.is_zero() {
            return Ok(Backsub::NotPositive);
        }
        vals[lin.var] = x;
    }
    let done = linear.iter().all(|l| {
        let x = &vals[l.var];
        x.is_positive() && &x.width() <= width
    });
    Ok(if done { Backsub::Done(vals) } else { Backsub::NeedsRefinement })
}

/// Upper bound on `max |r_i - r_j|` over the box and the intersection of the
/// component enclosures (the Einstein constant), evaluated with outward
/// rounding. `coords` are in label order.
pub fn certify(spec: &FibrationSpec, coords: &[Interval]) -> Result<(BigRational, Option<Interval>)> {
    certify_with(spec, coords, &Outward::default())
}

fn certify_with(spec: &FibrationSpec, coords: &[Interval], dom: &Outward) -> Result<(BigRational, Option<Interval>)> {
    if coords.iter().any(|c| !c.is_positive()) {
        return Err(Error::DomainError("coordinate intervals must be positive".into()));
    }
    let names = spec.var_names();
    let lookup = |v: &str| -> Result<Interval> {
        names
            .iter()
            .position(|n| *n == v)
            .map(|i| coords[i].clone())
            .ok_or_else(|| Error::EvalError(format!("unknown variable {v}")))
    };
    let comps = ricci_closed_form(spec)?
        .iter()
        .map(|e| e.eval_in(dom, &lookup))
        .collect::<Result<Vec<Interval>>>()?;
    let hi = comps.iter().map(|c| &c.hi).max().unwrap().clone();
    let lo = comps.iter().map(|c| &c.lo).min().unwrap().clone();
    let lambda = comps.iter().skip(1).try_fold(comps[0].clone(), |acc, c| acc.intersect(c));
    Ok((hi - lo, lambda))
}

pub fn classify(spec: &FibrationSpec, coords: &[f64], ctol: f64) -> Class {
    let close = |a: f64, b: f64| (a - b).abs() <= ctol;
    match spec {
        FibrationSpec::Wallach { .. } => {
            let (x1, x2, x12, x13, x23) = (coords[0], coords[1], coords[2], coords[3], coords[4]);
            if close(x13, x23) && close(x1, x2) {
                if close(x1, x12) {
                    Class::Jensen
                } else {
                    Class::Adn
                }
            } else {
                Class::New
            }
        }
        FibrationSpec::Flag { .. } => {
            let (u0, u1, u3) = (coords[0], coords[1], coords[3]);
            if close(u0, u1) || close(u0, u3) || close(u1, u3) {
                Class::Jensen
            } else {
                Class::New
            }
        }
    }
}

/// Image of a Wallach(k, k, m) solution under `x1 <-> x2, x13 <-> x23`,
/// rescaled so that `x23 = 1`.
pub fn swap_renormalized(x: &[f64]) -> Vec<f64> {
    let s = x[3];
    vec![x[1] / s, x[0] / s, x[2] / s, x[4] / s, x[3] / s]
}

fn run_plan(
    spec: &FibrationSpec,
    plan: &Plan,
    opts: &SolveOptions,
    report: &mut SolveReport,
) -> Result<Vec<EinsteinSolution>> {
    let gb = branch_basis(plan, &opts.budget)?;
    let least_name = plan.precedence.last().expect("nonempty precedence");
    let mut branch = BranchReport {
        branch: plan.branch,
        eliminant_var: least_name.clone(),
        eliminant_degree: 0,
        positive_roots: 0,
        gb: gb.stats.clone(),
    };
    if gb.is_unit() {
        report.branches.push(branch);
        return Ok(Vec::new());
    }
    let e = eliminant(&gb, least_name)?;
    branch.eliminant_degree = e.degree();
    let mut f = squarefree_part(&e)?;
    for a in &plan.divide_out {
        let lin = UniPoly::new(least_name, vec![-a.clone(), BigRational::one()]);
        while f.degree() > 0 && f.eval(a).is_zero() {
            f = exact_divide(&f, &lin)?;
        }
    }
    let roots = isolate_real_roots(&f, true)?;
    branch.positive_roots = roots.len();
    report.branches.push(branch);
    let seq = SturmSequence::new(&f);

    let ctx = &gb.ctx;
    let precedence: Vec<usize> = plan.precedence.iter().map(|n| ctx.require(n)).collect::<Result<_>>()?;
    let least = *precedence.last().unwrap();
    let linear = linear_elements(&gb, &precedence);

    let mut out = Vec::new();
    for (ri, root) in roots.iter().enumerate() {
        let mut root_width = &opts.width / int(1024);
        let mut prec = 256u32;
        let mut last_reason = String::from("refinement limit reached");
        let mut found = None;
        let mut discard = false;
        for _ in 0..10 {
            let iv = refine_with(&seq, root, &root_width);
            let dom = Outward { prec };
            let r = Interval { lo: iv.lo.clone(), hi: iv.hi.clone() };
            match back_substitute(&linear, least, &r, ctx.len(), &dom, &opts.width)? {
                Backsub::NotPositive => {
                    discard = true;
                    break;
                }
                Backsub::Inconsistent => {
                    last_reason = "back-substitution gave disjoint enclosures".into();
                    break;
                }
                Backsub::NeedsRefinement => {}
                Backsub::Done(vals) => {
                    let coords: Vec<(String, Interval)> = spec
                        .var_names()
                        .iter()
                        .map(|n| {
                            let iv = match plan.fixed.iter().find(|(f, _)| f == n) {
                                Some((_, v)) => Interval::point(v.clone()),
                                None => vals[ctx.index_of(n).expect("unknown in context")].clone(),
                            };
                            (n.to_string(), iv)
                        })
                        .collect();
                    let boxes: Vec<Interval> = coords.iter().map(|(_, iv)| iv.clone()).collect();
                    let (residual, lambda) = certify_with(spec, &boxes, &dom)?;
                    match lambda {
                        Some(lambda) if residual < opts.tol => {
                            found = Some(EinsteinSolution {
                                spec: *spec,
                                branch: plan.branch,
                                coords,
                                lambda,
                                residual_bound: residual,
                                class: Class::Unclassified,
                                symmetry_partner: None,
                            });
                            break;
                        }
                        _ => last_reason = format!("residual bound {} above tolerance", to_decimal(&residual, 3)),
                    }
                }
            }
            root_width = root_width / int(1 << 30);
            prec += 128;
        }
        match found {
            Some(s) => out.push(s),
            None if discard => {}
            None => report.uncertified.push(format!(
                "{spec} {:?} root #{ri} of the {least_name}-eliminant near {}: {last_reason}",
                plan.branch,
                root.approx(6)
            )),
        }
    }
    Ok(out)
}

/// Certified positive solutions of the normalized Einstein equations, sorted
/// by branch and then by the eliminant root.
pub fn solve_einstein(spec: &FibrationSpec, opts: &SolveOptions) -> Result<SolveReport> {
    let system = assemble_system(spec)?;
    let mut report = SolveReport { solutions: Vec::new(), uncertified: Vec::new(), branches: Vec::new() };
    let mut all = Vec::new();
    for plan in plans(spec, &system, opts)? {
        all.extend(run_plan(spec, &plan, opts, &mut report)?);
    }
    for s in &mut all {
        s.class = classify(spec, &s.approx(), opts.ctol);
    }
    if let FibrationSpec::Wallach { k1, k2, .. } = spec {
        if k1 == k2 {
            let approx: Vec<Vec<f64>> = all.iter().map(|s| s.approx()).collect();
            for (i, s) in all.iter_mut().enumerate() {
                let image = swap_renormalized(&approx[i]);
                s.symmetry_partner = approx
                    .iter()
                    .position(|y| y.iter().zip(&image).all(|(a, b)| (a - b).abs() <= 1e-6));
            }
        }
    }
    report.solutions = all;
    Ok(report)
}

/// Saturated lex basis of one branch and the variable it eliminates down
/// to. `var` defaults to the branch's least variable; any other unknown is
/// moved to the bottom of the lex order.
pub fn branch_lex_basis(
    spec: &FibrationSpec,
    branch: Branch,
    var: Option<&str>,
    budget: &Budget,
) -> Result<(GroebnerBasis, String)> {
    spec.validate()?;
    let system = assemble_system(spec)?;
    let opts = SolveOptions {
        generic: branch == Branch::Generic,
        special: branch == Branch::NormalizedEqual,
        ..Default::default()
    };
    let mut plan = plans(spec, &system, &opts)?.into_iter().next().expect("one plan per branch");
    if let Some(v) = var {
        let k = plan.precedence.iter().position(|x| x == v).ok_or_else(|| {
            Error::ContextError(format!("{v} is not an unknown of the {branch:?} branch"))
        })?;
        let v = plan.precedence.remove(k);
        plan.precedence.push(v);
    }
    let gb = branch_basis(&plan, budget)?;
    Ok((gb, plan.precedence.pop().expect("nonempty precedence")))
}

/// Primitive eliminant of one branch, before the squarefree part is taken
/// or known roots are divided out.
pub fn branch_eliminant(
    spec: &FibrationSpec,
    branch: Branch,
    var: Option<&str>,
    budget: &Budget,
) -> Result<(UniPoly, GbStats)> {
    let (gb, least) = branch_lex_basis(spec, branch, var, budget)?;
    Ok((eliminant(&gb, &least)?.normalized(), gb.stats))
}

/// Classification counts per row of a census.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub n: u32,
    pub spec: FibrationSpec,
    pub complete: bool,
    pub jensen: usize,
    pub adn: usize,
    pub new: usize,
    /// New and ADN together, the reading under which the conjectured table
    /// is compared.
    pub new_including_adn: usize,
    pub conjectured: Option<(usize, usize)>,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusFamily {
    /// `(n-2, 1, 1)`.
    NMinus2,
    /// `(n-3, 1, 2)`.
    NMinus3,
}

impl CensusFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace(' ', "").as_str() {
            "n-2,1,1" => Ok(CensusFamily::NMinus2),
            "n-3,1,2" => Ok(CensusFamily::NMinus3),
            other => Err(Error::SpecError(format!("unknown family {other}; use n-2,1,1 or n-3,1,2"))),
        }
    }

    pub fn spec(&self, n: u32) -> Option<FibrationSpec> {
        match self {
            CensusFamily::NMinus2 if n >= 3 => Some(FibrationSpec::Wallach { k1: n - 2, k2: 1, k3: 1 }),
            CensusFamily::NMinus3 if n >= 4 => Some(FibrationSpec::Wallach { k1: n - 3, k2: 1, k3: 2 }),
            _ => None,
        }
    }

    /// Conjectured (Jensen, new) counts from the published table.
    pub fn conjectured(&self, n: u32) -> Option<(usize, usize)> {
        match self {
            CensusFamily::NMinus2 => match n {
                3..=7 => Some((2, 6)),
                8..=29 => Some((2, 8)),
                30.. => Some((2, 10)),
                _ => None,
            },
            CensusFamily::NMinus3 => match n {
                5..=9 => Some((2, 6)),
                10 => Some((2, 8)),
                11..=27 => Some((2, 6)),
                28..=40 => Some((2, 8)),
                41.. => Some((2, 10)),
                _ => None,
            },
        }
    }
}

pub fn census(family: CensusFamily, n_min: u32, n_max: u32, opts: &SolveOptions) -> Vec<CensusRow> {
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let Some(spec) = family.spec(n) else { continue };
        let mut row = CensusRow {
            n,
            spec,
            complete: false,
            jensen: 0,
            adn: 0,
            new: 0,
            new_including_adn: 0,
            conjectured: family.conjectured(n),
            note: None,
        };
        match solve_einstein(&spec, opts) {
            Ok(rep) => {
                let count = |c: Class| rep.solutions.iter().filter(|s| s.class == c).count();
                row.jensen = count(Class::Jensen);
                row.adn = count(Class::Adn);
                row.new = count(Class::New);
                row.new_including_adn = row.new + row.adn;
                row.complete = rep.uncertified.is_empty();
                if !rep.uncertified.is_empty() {
                    row.note = Some(format!("{} uncertified candidates", rep.uncertified.len()));
                }
            }
            Err(e) => row.note = Some(e.to_string()),
        }
        rows.push(row);
    }
    rows
}

/// Evaluates every system polynomial over a solution's box.
pub fn system_residuals(system: &EinsteinSystem, sol: &EinsteinSolution) -> Result<Vec<Interval>> {
    let dom = Outward::default();
    let vals: HashMap<&str, &Interval> = sol.coords.iter().map(|(n, iv)| (n.as_str(), iv)).collect();
    let point = system
        .ctx
        .names()
        .iter()
        .map(|n| vals.get(n.as_str()).map(|iv| (*iv).clone()).ok_or_else(|| Error::EvalError(format!("missing {n}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(system.polys.iter().map(|p| p.eval_in(&dom, &point)).collect())
}
