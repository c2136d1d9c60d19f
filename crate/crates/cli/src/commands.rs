//! One function per verb; each returns the JSON it prints.

use std::collections::BTreeMap;

use motifalg::graph::{ColoredGraph, Graph, OrderedGraph};
use motifalg::io::{self, AnyParameter, AnyPolynomial, PatternJson};
use motifalg::linearize::{self, Basis, CountPolynomial};
use motifalg::motif::{symmetrize, Enumerable, Motif, MotifParameter, NonnegScan, Verdict};
use motifalg::oraclesim::{
    build_set_instantiator, naive_indsub_strategy, naive_indsub_strategy_ordered, FixedPairProbe,
    QueryStrategy, Step,
};
use motifalg::relstruct::{self, RelStructure};
use motifalg::universes::{self, CountMode, UniverseObject};
use motifalg::witness::{evaluation_matrix, find_witness};
use motifalg::{Caps, Error};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{self, Kind};

type Out = Result<Value, CliError>;

/// Runs `$body` with `$M` bound to the structure type of `$kind` and `$u`
/// to its universe value.
macro_rules! with_kind {
    ($kind:expr, |$M:ident, $u:ident| $body:expr) => {
        match $kind {
            Kind::Unordered => {
                type $M = Graph;
                let $u = ();
                $body
            }
            Kind::Ordered => {
                type $M = OrderedGraph;
                let $u = ();
                $body
            }
            Kind::Colored(p) => {
                type $M = ColoredGraph;
                let $u = p;
                $body
            }
            Kind::Relational(ty, ordered) => {
                type $M = RelStructure;
                let $u = (ty, ordered);
                $body
            }
        }
    };
}

/// As `with_kind!`, for verbs that need to list every class.
macro_rules! with_enumerable_kind {
    ($kind:expr, |$M:ident, $u:ident| $body:expr) => {
        match $kind {
            Kind::Unordered => {
                type $M = Graph;
                let $u = ();
                $body
            }
            Kind::Ordered => {
                type $M = OrderedGraph;
                let $u = ();
                $body
            }
            Kind::Colored(p) => {
                type $M = ColoredGraph;
                let $u = p;
                $body
            }
            Kind::Relational(..) => Err(CliError::input("relational structures cannot be enumerated")),
        }
    };
}

macro_rules! with_param {
    ($param:expr, |$p:ident| $body:expr) => {
        match $param {
            AnyParameter::Unordered($p) => $body,
            AnyParameter::Ordered($p) => $body,
            AnyParameter::Colored($p) => $body,
            AnyParameter::Relational($p) => $body,
        }
    };
}

fn big(x: BigUint) -> Value {
    io::bigint_to_json(&BigInt::from(x))
}

fn label<M: PatternJson>(key: &M::Key, universe: &M::Universe) -> Value {
    M::from_key(key, universe).pattern_to_json()
}

fn param_json<M: PatternJson>(p: MotifParameter<M>) -> Value {
    io::parameter_to_json(&M::wrap(p))
}

fn parse_patterns<M: PatternJson>(universe: &M::Universe, values: &[Value]) -> Result<Vec<M>, CliError> {
    values
        .iter()
        .map(|v| M::pattern_from_json(v, universe).map_err(CliError::from))
        .collect()
}

fn keys_of<M: PatternJson>(patterns: &[M], caps: &Caps) -> Result<Vec<M::Key>, CliError> {
    patterns.iter().map(|p| p.key(caps).map_err(CliError::from)).collect()
}

pub struct KindArgs<'a> {
    pub kind: Option<&'a str>,
    pub palette: Option<u8>,
}

fn resolve(kind: &KindArgs, first: Option<&Value>) -> Result<Kind, CliError> {
    Kind::resolve(kind.kind, kind.palette, first)
}

pub fn count(pattern: &str, target: &str, kind: &KindArgs) -> Out {
    let values = [input::load_value(pattern)?, input::load_value(target)?];
    with_kind!(resolve(kind, values.first())?, |M, u| {
        let gs = parse_patterns::<M>(&u, &values)?;
        Ok(json!({"indsub": M::indsub(&gs[0], &gs[1])?}))
    })
}

fn eval_param<M: PatternJson>(p: &MotifParameter<M>, target: &Value) -> Out {
    let t = M::pattern_from_json(target, p.universe())?;
    Ok(json!({"value": io::rational_to_json(&p.evaluate(&t)?)}))
}

pub fn eval(param: &str, target: &str, caps: &Caps) -> Out {
    let phi = input::load_parameter(param, caps)?;
    let target = input::load_value(target)?;
    with_param!(&phi, |p| eval_param(p, &target))
}

pub enum LinearizeInput<'a> {
    Product(&'a [String]),
    Binomial(&'a str, u32),
    Poly(&'a str),
}

fn check_agreement<M: Enumerable>(
    direct: &MotifParameter<M>,
    poly: &CountPolynomial<M>,
    caps: &Caps,
) -> Result<(), CliError> {
    let other = linearize::linearize_by_interpolation(poly, caps)?;
    if other.terms() != direct.terms() {
        return Err(CliError::internal("inclusion-exclusion and interpolation disagree"));
    }
    Ok(())
}

fn finish_linearize<M: PatternJson + Enumerable>(
    result: MotifParameter<M>,
    poly: Option<CountPolynomial<M>>,
    caps: &Caps,
) -> Out {
    let checked = match poly {
        Some(poly) => {
            check_agreement(&result, &poly, caps)?;
            true
        }
        None => false,
    };
    let mut out = param_json(result);
    if checked {
        out["interpolation_agrees"] = json!(true);
    }
    Ok(out)
}

fn linearize_patterns<M: PatternJson + Enumerable>(
    universe: M::Universe,
    values: &[Value],
    binomial_k: Option<u32>,
    check: bool,
    caps: &Caps,
) -> Out {
    let keys = keys_of(&parse_patterns::<M>(&universe, values)?, caps)?;
    let (result, basis, exps) = match binomial_k {
        Some(k) => (
            linearize::linearize_binomial::<M>(&universe, &keys[0], k, caps)?,
            Basis::Binomial,
            vec![k],
        ),
        None => (
            linearize::linearize_product::<M>(&universe, &keys, caps)?,
            Basis::Monomial,
            vec![1; keys.len()],
        ),
    };
    let poly = if check {
        let mut poly = CountPolynomial::new(universe, basis, keys);
        poly.add_term(exps, BigRational::from_integer(1.into()))?;
        Some(poly)
    } else {
        None
    };
    finish_linearize(result, poly, caps)
}

fn linearize_poly<M: PatternJson + Enumerable>(poly: CountPolynomial<M>, check: bool, caps: &Caps) -> Out {
    let result = linearize::linearize_polynomial(&poly, caps)?;
    finish_linearize(result, check.then_some(poly), caps)
}

pub fn linearize(what: LinearizeInput, check: bool, kind: &KindArgs, caps: &Caps) -> Out {
    match what {
        LinearizeInput::Poly(path) => match io::polynomial_from_json(&input::load_json(path)?, caps)? {
            AnyPolynomial::Unordered(p) => linearize_poly(p, check, caps),
            AnyPolynomial::Ordered(p) => linearize_poly(p, check, caps),
            AnyPolynomial::Colored(p) => linearize_poly(p, check, caps),
        },
        LinearizeInput::Product(args) => {
            if args.is_empty() {
                return Err(CliError::input("--product needs at least one pattern"));
            }
            let values = args.iter().map(|a| input::load_value(a)).collect::<Result<Vec<_>, _>>()?;
            with_enumerable_kind!(resolve(kind, values.first())?, |M, u| {
                linearize_patterns::<M>(u, &values, None, check, caps)
            })
        }
        LinearizeInput::Binomial(arg, k) => {
            let values = [input::load_value(arg)?];
            with_enumerable_kind!(resolve(kind, values.first())?, |M, u| {
                linearize_patterns::<M>(u, &values, Some(k), check, caps)
            })
        }
    }
}

fn classify_param<M: PatternJson>(p: &MotifParameter<M>) -> Value {
    let c = p.classify();
    let mut out = json!({"verdict": c.verdict.as_str()});
    if let Some(w) = &c.witness {
        out["pattern"] = label::<M>(&w.key, p.universe());
        out["coeff"] = io::rational_to_json(&w.coefficient);
    }
    if !c.impure_patterns.is_empty() {
        out["impure_patterns"] = c.impure_patterns.iter().map(|k| label::<M>(k, p.universe())).collect();
    }
    out
}

pub fn classify(param: &str, caps: &Caps) -> Out {
    let phi = input::load_parameter(param, caps)?;
    Ok(with_param!(&phi, |p| classify_param(p)))
}

pub fn symmetrize_verb(param: &str, caps: &Caps) -> Out {
    match input::load_parameter(param, caps)? {
        AnyParameter::Unordered(p) => Ok(param_json(symmetrize(&p, caps)?)),
        _ => Err(CliError::input("symmetrize expects an unordered parameter")),
    }
}

fn scan<M: PatternJson + Enumerable>(p: &MotifParameter<M>, n_max: usize, caps: &Caps) -> Out {
    Ok(match p.check_nonnegative_upto(n_max, caps)? {
        NonnegScan::AllNonnegative { checked } => json!({"result": "AllNonnegative", "checked": checked}),
        NonnegScan::Counterexample { graph, value, .. } => json!({
            "result": "Counterexample",
            "pattern": graph.pattern_to_json(),
            "value": io::rational_to_json(&value),
        }),
    })
}

pub fn scan_nonneg(param: &str, n_max: usize, caps: &Caps) -> Out {
    match input::load_parameter(param, caps)? {
        AnyParameter::Unordered(p) => scan(&p, n_max, caps),
        AnyParameter::Ordered(p) => scan(&p, n_max, caps),
        AnyParameter::Colored(p) => scan(&p, n_max, caps),
        AnyParameter::Relational(_) => Err(CliError::input("relational structures cannot be enumerated")),
    }
}

fn witness_for<M: PatternJson>(phi: &MotifParameter<M>, psi: &MotifParameter<M>, caps: &Caps) -> Out {
    if psi.universe() != phi.universe() {
        return Err(CliError::input("--param and --against live in different universes"));
    }
    if psi.classify().verdict != Verdict::Good {
        return Err(CliError::input("--against must have nonnegative integer coefficients"));
    }
    match find_witness(phi, |g| psi.evaluate(g), caps) {
        Ok(w) => Ok(json!({
            "pattern": w.graph.pattern_to_json(),
            "phi": io::rational_to_json(&w.phi_value),
            "psi": io::rational_to_json(&w.psi_value),
        })),
        // a good psi always differs from a bad phi somewhere in the scanned poset
        Err(Error::NoWitnessFound) => Err(CliError::internal("no witness found against a good parameter")),
        Err(e) => Err(e.into()),
    }
}

pub fn witness(param: &str, against: &str, caps: &Caps) -> Out {
    let phi = input::load_parameter(param, caps)?;
    let psi = input::load_parameter(against, caps)?;
    match (&phi, &psi) {
        (AnyParameter::Unordered(a), AnyParameter::Unordered(b)) => witness_for(a, b, caps),
        (AnyParameter::Ordered(a), AnyParameter::Ordered(b)) => witness_for(a, b, caps),
        (AnyParameter::Colored(a), AnyParameter::Colored(b)) => witness_for(a, b, caps),
        (AnyParameter::Relational(a), AnyParameter::Relational(b)) => witness_for(a, b, caps),
        _ => Err(CliError::input("--param and --against have different kinds")),
    }
}

fn matrix_for<M: PatternJson>(universe: M::Universe, keys: Vec<M::Key>) -> Out {
    let m = evaluation_matrix::<M>(&universe, &keys)?;
    Ok(json!({
        "index": m.index.iter().map(|k| label::<M>(k, &universe)).collect::<Vec<_>>(),
        "entries": m.entries,
        "unitriangular": m.is_unitriangular(),
    }))
}

pub fn matrix(patterns: &[String], upto: Option<usize>, kind: &KindArgs, caps: &Caps) -> Out {
    match upto {
        Some(n) => with_enumerable_kind!(resolve(kind, None)?, |M, u| {
            let keys = M::enumerate_upto(&u, n, caps)?;
            matrix_for::<M>(u, keys)
        }),
        None => {
            if patterns.is_empty() {
                return Err(CliError::input("matrix needs --patterns or --upto"));
            }
            let values = patterns.iter().map(|a| input::load_value(a)).collect::<Result<Vec<_>, _>>()?;
            with_kind!(resolve(kind, values.first())?, |M, u| {
                let keys = keys_of(&parse_patterns::<M>(&u, &values)?, caps)?;
                matrix_for::<M>(u, keys)
            })
        }
    }
}

pub fn conv(arg: &str, inverse: bool, source_type: Option<&str>) -> Out {
    let s = input::structure(arg)?;
    let out = if inverse {
        let ty = source_type.ok_or_else(|| CliError::input("--inverse needs --source-type"))?;
        let ty = io::mixed_type_from_json(&input::load_json(ty)?)?;
        relstruct::conv_inverse(&s, &ty)?
    } else {
        relstruct::conv(&s)?
    };
    Ok(io::rel_to_json(&out))
}

pub fn gaussian(n: usize, k: usize, p: u32) -> Out {
    Ok(json!({"value": big(universes::gaussian_binomial(n, k, p)?)}))
}

pub fn subspaces(d: usize, k: usize, p: u32, list: bool) -> Out {
    let spaces = universes::enumerate_subspaces(d, k, p)?;
    let mut out = json!({
        "count": spaces.len(),
        "formula": big(universes::gaussian_binomial(d, k, p)?),
    });
    if list {
        out["subspaces"] = spaces.iter().map(|s| json!(s.basis())).collect();
    }
    Ok(out)
}

pub fn stirling(n: usize, m: usize, r: usize) -> Out {
    Ok(json!({"value": big(universes::r_stirling(n, m, r))}))
}

pub fn param_subsets(set: &str, m: usize, mode: &str, list: bool) -> Out {
    let x = io::param_set_from_json(&input::load_json(set)?)?;
    let mode = match mode {
        "formula" => CountMode::Formula,
        "brute" | "brute-force" => CountMode::BruteForce,
        other => return Err(CliError::input(format!("unknown mode {other:?}"))),
    };
    let mut out = json!({"count": big(universes::count_param_subsets(&x, m, mode)?)});
    if list {
        out["subsets"] = universes::enumerate_param_subsets(&x, m)?
            .into_iter()
            .map(|s| json!(s))
            .collect();
    }
    Ok(out)
}

pub fn universe_eval(param: &str, target: &str) -> Out {
    let phi: BTreeMap<usize, BigRational> = io::dimension_parameter_from_json(&input::load_json(param)?)?;
    let t = input::load_json(target)?;
    let object = if t.get("alphabet").is_some() {
        UniverseObject::ParamSet(io::param_set_from_json(&t)?)
    } else {
        UniverseObject::VecSpace(io::vec_space_from_json(&t)?)
    };
    Ok(json!({"value": io::rational_to_json(&universes::evaluate_universe_motif(&phi, &object))}))
}

/// Caps the query budget of a strategy.
struct Budgeted<'a> {
    inner: &'a dyn QueryStrategy,
    cap: usize,
}

impl QueryStrategy for Budgeted<'_> {
    fn witness_length(&self, j: usize) -> usize {
        self.inner.witness_length(j)
    }

    fn query_budget(&self, j: usize) -> usize {
        self.inner.query_budget(j).min(self.cap)
    }

    fn step(&self, j: usize, witness: &[bool], answers: &[(usize, usize, bool)]) -> Step {
        self.inner.step(j, witness, answers)
    }
}

pub struct InstantiateArgs<'a> {
    pub root: &'a str,
    pub strategy: &'a str,
    pub param: Option<&'a str>,
    pub seed: u64,
    pub n_start: usize,
    pub max_attempts: usize,
    pub budget: Option<usize>,
    pub trace: bool,
}

fn ordered_param(p: AnyParameter, caps: &Caps) -> Result<MotifParameter<OrderedGraph>, CliError> {
    match p {
        AnyParameter::Unordered(p) => Ok(symmetrize(&p, caps)?),
        AnyParameter::Ordered(p) => Ok(p),
        _ => Err(CliError::input("instantiate expects an unordered or ordered parameter")),
    }
}

pub fn instantiate(a: &InstantiateArgs, caps: &Caps) -> Out {
    let root = input::ordered_graph(a.root)?;
    let (kind, spec) = a
        .strategy
        .split_once(':')
        .ok_or_else(|| CliError::input("strategy must look like naive:K2, naive-ordered:K2 or probe:0,1"))?;
    let (strategy, default_phi): (Box<dyn QueryStrategy>, Option<MotifParameter<OrderedGraph>>) = match kind {
        "naive" => {
            let g = input::graph(spec)?;
            let phi = MotifParameter::<Graph>::from_patterns((), [(g.clone(), BigRational::from_integer(1.into()))], caps)?;
            (Box::new(naive_indsub_strategy(&g, caps)?), Some(symmetrize(&phi, caps)?))
        }
        "naive-ordered" => {
            let g = input::ordered_graph(spec)?;
            let phi = MotifParameter::<OrderedGraph>::from_patterns((), [(g.clone(), BigRational::from_integer(1.into()))], caps)?;
            (Box::new(naive_indsub_strategy_ordered(&g)?), Some(phi))
        }
        "probe" => {
            let (u, v) = spec
                .split_once(',')
                .and_then(|(u, v)| Some((u.trim().parse().ok()?, v.trim().parse().ok()?)))
                .ok_or_else(|| CliError::input(format!("bad probe pair {spec:?}")))?;
            (Box::new(FixedPairProbe { u, v }), None)
        }
        other => return Err(CliError::input(format!("unknown strategy {other:?}"))),
    };
    let phi = match a.param {
        Some(path) => ordered_param(input::load_parameter(path, caps)?, caps)?,
        None => default_phi.ok_or_else(|| CliError::input("this strategy needs --param"))?,
    };
    let budgeted;
    let s: &dyn QueryStrategy = match a.budget {
        Some(cap) => {
            budgeted = Budgeted { inner: strategy.as_ref(), cap };
            &budgeted
        }
        None => strategy.as_ref(),
    };
    let inst = build_set_instantiator(s, &root, &phi, a.seed, a.n_start, a.max_attempts)?;
    let report = inst.verify(&phi)?;
    let full = inst.inst((1u64 << root.n()) - 1);
    let mut out = json!({
        "n": inst.n,
        "j": inst.j,
        "xi": inst.xi,
        "attempts": inst.attempts,
        "accepting": full.accepting.len(),
        "phi": io::rational_to_json(&phi.evaluate(&root)?),
        "verified": report.ok(),
    });
    if a.trace {
        out["trace"] = json!(inst.trace_log());
    }
    Ok(out)
}
