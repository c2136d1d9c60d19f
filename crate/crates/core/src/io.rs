//! JSON forms of graphs, structures, parameters and polynomials.
//!
//! Graphs: `{"n", "edges": [[u, v], ...], "ordered", "colors"?, "palette"?}`,
//! or a string holding a shorthand name or graph6. Rationals:
//! `{"num", "den"}` with integers (decimal strings once past 64 bits).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::graph6::{from_graph6, to_graph6};
use crate::graph::named::{name_of, named_graph};
use crate::graph::{ColoredGraph, Graph, OrderedGraph};
use crate::linearize::{Basis, CountPolynomial};
use crate::motif::{reduced, Motif, MotifParameter};
use crate::relstruct::{MixedType, RelStructure, Slot, Variant};
use crate::universes::{ParamSet, VecSpace};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("{s:?} is not an integer"))),
        _ => Err(bad(format!("expected an integer, found {v}"))),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    json!({"num": bigint_to_json(q.numer()), "den": bigint_to_json(q.denom())})
}

/// Accepts `{"num", "den"}`, a bare integer, or a `"p/q"` string.
pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Object(m) => {
            let num = bigint_from_json(m.get("num").ok_or_else(|| bad("rational lacks \"num\""))?)?;
            let den = match m.get("den") {
                Some(d) => bigint_from_json(d)?,
                None => BigInt::one(),
            };
            reduced(&num, &den)
        }
        Value::String(s) if s.contains('/') => {
            let (p, q) = s.split_once('/').expect("checked");
            let p: BigInt = p.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
            let q: BigInt = q.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
            reduced(&p, &q)
        }
        _ => Ok(BigRational::from_integer(bigint_from_json(v)?)),
    }
}

/// A parsed graph with whatever extra data the JSON carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub graph: Graph,
    pub ordered: bool,
    pub colors: Option<Vec<u8>>,
    pub palette: Option<u8>,
}

impl GraphSpec {
    pub fn plain(graph: Graph) -> Self {
        GraphSpec {
            graph,
            ordered: false,
            colors: None,
            palette: None,
        }
    }

    pub fn colored(&self, palette: u8) -> Result<ColoredGraph> {
        let colors = self
            .colors
            .clone()
            .unwrap_or_else(|| vec![0; self.graph.n()]);
        ColoredGraph::new(self.graph.clone(), colors, self.palette.unwrap_or(palette).max(palette))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    ordered: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    palette: Option<u8>,
}

/// Shorthand name, graph6 string, or JSON text.
pub fn parse_graph_text(text: &str) -> Result<GraphSpec> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| bad(e.to_string()))?;
        return graph_from_json(&v);
    }
    if let Some(g) = named_graph(t) {
        return Ok(GraphSpec::plain(g));
    }
    from_graph6(t).map(GraphSpec::plain)
}

pub fn graph_from_json(v: &Value) -> Result<GraphSpec> {
    if let Value::String(s) = v {
        return parse_graph_text(s);
    }
    let g: GraphJson = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
    let graph = Graph::from_edges(g.n, &g.edges)?;
    if let Some(c) = &g.colors {
        if c.len() != g.n {
            return Err(bad(format!("{} colors for {} vertices", c.len(), g.n)));
        }
    }
    Ok(GraphSpec {
        graph,
        ordered: g.ordered,
        colors: g.colors,
        palette: g.palette,
    })
}

pub fn graph_to_json(g: &Graph, ordered: bool) -> Value {
    serde_json::to_value(GraphJson {
        n: g.n(),
        edges: g.edges(),
        ordered,
        colors: None,
        palette: None,
    })
    .expect("plain data")
}

pub fn colored_to_json(g: &ColoredGraph) -> Value {
    serde_json::to_value(GraphJson {
        n: g.n(),
        edges: g.graph().edges(),
        ordered: false,
        colors: Some(g.colors().to_vec()),
        palette: Some(g.palette()),
    })
    .expect("plain data")
}

/// Short label: the shorthand name if one matches, else graph6.
pub fn graph_label(g: &Graph) -> String {
    name_of(g).map_or_else(|| to_graph6(g), str::to_string)
}

#[derive(Serialize, Deserialize)]
struct SlotJson {
    arity: usize,
    variant: String,
}

#[derive(Serialize, Deserialize)]
struct RelJson {
    #[serde(rename = "type")]
    ty: Vec<SlotJson>,
    n: usize,
    relations: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    ordered: bool,
}

pub fn mixed_type_from_json(v: &Value) -> Result<MixedType> {
    let slots: Vec<SlotJson> = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
    slots
        .iter()
        .map(|s| Slot::new(s.arity, Variant::parse(&s.variant)?))
        .collect::<Result<_>>()
        .map(MixedType::new)
}

pub fn mixed_type_to_json(ty: &MixedType) -> Value {
    Value::Array(
        ty.slots()
            .iter()
            .map(|s| json!({"arity": s.arity, "variant": s.variant.as_str()}))
            .collect(),
    )
}

pub fn rel_from_json(v: &Value) -> Result<RelStructure> {
    let r: RelJson = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
    let ty = mixed_type_from_json(&serde_json::to_value(&r.ty).expect("plain data"))?;
    RelStructure::from_entries(ty, r.n, r.ordered, &r.relations)
}

pub fn rel_to_json(s: &RelStructure) -> Value {
    json!({
        "type": mixed_type_to_json(s.mixed_type()),
        "n": s.n(),
        "relations": s.relations().iter().map(|r| r.iter().cloned().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "ordered": s.is_ordered(),
    })
}

#[derive(Serialize, Deserialize)]
struct ParamSetJson {
    alphabet: u32,
    #[serde(rename = "N")]
    big_n: usize,
    base: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

pub fn param_set_from_json(v: &Value) -> Result<ParamSet> {
    let p: ParamSetJson = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
    if p.base.len() != p.big_n {
        return Err(bad(format!("base has {} coordinates, N = {}", p.base.len(), p.big_n)));
    }
    ParamSet::new(p.alphabet, p.base, p.classes)
}

pub fn param_set_to_json(x: &ParamSet) -> Value {
    serde_json::to_value(ParamSetJson {
        alphabet: x.alphabet(),
        big_n: x.ambient_len(),
        base: x.base().to_vec(),
        classes: x.classes().to_vec(),
    })
    .expect("plain data")
}

pub fn vec_space_to_json(v: &VecSpace) -> Value {
    json!({"p": v.p(), "d": v.ambient_dim(), "dim": v.dim(), "basis": v.basis()})
}

pub fn vec_space_from_json(v: &Value) -> Result<VecSpace> {
    #[derive(Deserialize)]
    struct SpaceJson {
        p: u32,
        d: usize,
        #[serde(default)]
        basis: Option<Vec<Vec<u32>>>,
    }
    let s: SpaceJson = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
    match s.basis {
        Some(b) => VecSpace::span(s.p, s.d, &b),
        None => VecSpace::full(s.p, s.d),
    }
}

/// A motif parameter of any supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyParameter {
    Unordered(MotifParameter<Graph>),
    Ordered(MotifParameter<OrderedGraph>),
    Colored(MotifParameter<ColoredGraph>),
    Relational(MotifParameter<RelStructure>),
}

/// Patterns of kind `kind` as they appear in parameter and polynomial JSON.
pub trait PatternJson: Motif {
    fn pattern_from_json(v: &Value, universe: &Self::Universe) -> Result<Self>;
    fn pattern_to_json(&self) -> Value;
    fn wrap(p: MotifParameter<Self>) -> AnyParameter;
}

impl PatternJson for Graph {
    fn wrap(p: MotifParameter<Self>) -> AnyParameter {
        AnyParameter::Unordered(p)
    }
    fn pattern_from_json(v: &Value, _: &()) -> Result<Self> {
        Ok(graph_from_json(v)?.graph)
    }
    fn pattern_to_json(&self) -> Value {
        json!(graph_label(self))
    }
}

impl PatternJson for OrderedGraph {
    fn wrap(p: MotifParameter<Self>) -> AnyParameter {
        AnyParameter::Ordered(p)
    }
    fn pattern_from_json(v: &Value, _: &()) -> Result<Self> {
        Ok(OrderedGraph::new(graph_from_json(v)?.graph))
    }
    fn pattern_to_json(&self) -> Value {
        json!(to_graph6(self.as_graph()))
    }
}

impl PatternJson for ColoredGraph {
    fn wrap(p: MotifParameter<Self>) -> AnyParameter {
        AnyParameter::Colored(p)
    }
    fn pattern_from_json(v: &Value, palette: &u8) -> Result<Self> {
        let spec = graph_from_json(v)?;
        ColoredGraph::new(
            spec.graph.clone(),
            spec.colors.unwrap_or_else(|| vec![0; spec.graph.n()]),
            *palette,
        )
    }
    fn pattern_to_json(&self) -> Value {
        colored_to_json(self)
    }
}

impl PatternJson for RelStructure {
    fn wrap(p: MotifParameter<Self>) -> AnyParameter {
        AnyParameter::Relational(p)
    }
    fn pattern_from_json(v: &Value, (ty, ordered): &(MixedType, bool)) -> Result<Self> {
        let s = rel_from_json(v)?;
        if s.mixed_type() != ty || s.is_ordered() != *ordered {
            return Err(Error::TypeMismatch("pattern type differs from the parameter's".into()));
        }
        Ok(s)
    }
    fn pattern_to_json(&self) -> Value {
        rel_to_json(self)
    }
}

fn terms_from_json<M: PatternJson>(
    universe: M::Universe,
    terms: &Value,
    caps: &Caps,
) -> Result<MotifParameter<M>> {
    let list = terms.as_array().ok_or_else(|| bad("\"terms\" must be an array"))?;
    let mut out = MotifParameter::new(universe);
    for t in list {
        let pattern = t.get("pattern").ok_or_else(|| bad("term lacks \"pattern\""))?;
        let m = M::pattern_from_json(pattern, out.universe())?;
        let coeff = match t.get("coeff") {
            Some(c) => rational_from_json(c)?,
            None => rational_from_json(t)?,
        };
        out.add_term(m.key(caps)?, coeff);
    }
    Ok(out)
}

pub fn terms_to_json<M: PatternJson>(p: &MotifParameter<M>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(k, c)| {
                let pattern = M::from_key(k, p.universe());
                json!({
                    "pattern": pattern.pattern_to_json(),
                    "num": bigint_to_json(c.numer()),
                    "den": bigint_to_json(c.denom()),
                })
            })
            .collect(),
    )
}

fn kind_of(v: &Value) -> &str {
    v.get("kind").and_then(Value::as_str).unwrap_or("unordered")
}

fn palette_of(v: &Value) -> Result<u8> {
    let p = v
        .get("palette")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("colored input needs a \"palette\""))?;
    u8::try_from(p).map_err(|_| bad(format!("palette {p} too large")))
}

fn relational_universe(v: &Value) -> Result<(MixedType, bool)> {
    let ty = mixed_type_from_json(v.get("type").ok_or_else(|| bad("relational input needs a \"type\""))?)?;
    let ordered = v.get("ordered").and_then(Value::as_bool).unwrap_or(false);
    Ok((ty, ordered))
}

pub fn parameter_from_json(v: &Value, caps: &Caps) -> Result<AnyParameter> {
    let terms = v.get("terms").ok_or_else(|| bad("parameter lacks \"terms\""))?;
    match kind_of(v) {
        "unordered" => Ok(AnyParameter::Unordered(terms_from_json((), terms, caps)?)),
        "ordered" => Ok(AnyParameter::Ordered(terms_from_json((), terms, caps)?)),
        "colored" => Ok(AnyParameter::Colored(terms_from_json(palette_of(v)?, terms, caps)?)),
        "relational" => Ok(AnyParameter::Relational(terms_from_json(
            relational_universe(v)?,
            terms,
            caps,
        )?)),
        other => Err(bad(format!("unknown parameter kind {other:?}"))),
    }
}

pub fn parameter_to_json(p: &AnyParameter) -> Value {
    match p {
        AnyParameter::Unordered(p) => json!({"kind": "unordered", "terms": terms_to_json(p)}),
        AnyParameter::Ordered(p) => json!({"kind": "ordered", "terms": terms_to_json(p)}),
        AnyParameter::Colored(p) => {
            json!({"kind": "colored", "palette": p.universe(), "terms": terms_to_json(p)})
        }
        AnyParameter::Relational(p) => json!({
            "kind": "relational",
            "type": mixed_type_to_json(&p.universe().0),
            "ordered": p.universe().1,
            "terms": terms_to_json(p),
        }),
    }
}

/// A polynomial of unordered, ordered or colored counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPolynomial {
    Unordered(CountPolynomial<Graph>),
    Ordered(CountPolynomial<OrderedGraph>),
    Colored(CountPolynomial<ColoredGraph>),
}

fn polynomial_terms<M: PatternJson>(
    universe: M::Universe,
    v: &Value,
    caps: &Caps,
) -> Result<CountPolynomial<M>> {
    let basis = match v.get("basis").and_then(Value::as_str).unwrap_or("monomial") {
        "monomial" => Basis::Monomial,
        "binomial" => Basis::Binomial,
        other => return Err(bad(format!("unknown basis {other:?}"))),
    };
    let vars = v
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("polynomial lacks \"variables\""))?
        .iter()
        .map(|p| M::pattern_from_json(p, &universe)?.key(caps))
        .collect::<Result<Vec<_>>>()?;
    let mut poly = CountPolynomial::new(universe, basis, vars);
    for t in v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("polynomial lacks \"terms\""))?
    {
        let exps: Vec<u32> = serde_json::from_value(
            t.get("exponents").cloned().unwrap_or_else(|| json!([])),
        )
        .map_err(|e| bad(e.to_string()))?;
        let coeff = match t.get("coeff") {
            Some(c) => rational_from_json(c)?,
            None => rational_from_json(t)?,
        };
        poly.add_term(exps, coeff)?;
    }
    Ok(poly)
}

pub fn polynomial_from_json(v: &Value, caps: &Caps) -> Result<AnyPolynomial> {
    match kind_of(v) {
        "unordered" => Ok(AnyPolynomial::Unordered(polynomial_terms((), v, caps)?)),
        "ordered" => Ok(AnyPolynomial::Ordered(polynomial_terms((), v, caps)?)),
        "colored" => Ok(AnyPolynomial::Colored(polynomial_terms(palette_of(v)?, v, caps)?)),
        other => Err(bad(format!("polynomials over {other:?} are not supported"))),
    }
}

/// Dimension-indexed parameter `{"k": coeff, ...}` for the universes.
pub fn dimension_parameter_from_json(v: &Value) -> Result<BTreeMap<usize, BigRational>> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object of dimension: coefficient"))?;
    obj.iter()
        .map(|(k, c)| {
            let dim = k.parse().map_err(|_| bad(format!("bad dimension {k:?}")))?;
            Ok((dim, rational_from_json(c)?))
        })
        .collect()
}
