//! Computable objects and morphisms of the base category: finite sets of element trees,
//! free-monad carriers, evaluable maps, and the finite-limit engine.
//!
//! Pullback elements are pairs `(a, b)`. Iterating a pullback on the left therefore
//! nests to the left: an element of `(A ×_C B) ×_D E` is `((a, b), e)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monad::MonadSpec;

/// A finite tree. The derived order is the canonical order used for every carrier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Atom(Arc<str>),
    Tuple(Vec<Element>),
    Tag(Arc<str>, Box<Element>),
    List(Vec<Element>),
}

impl Element {
    pub fn atom(s: &str) -> Self {
        Element::Atom(Arc::from(s))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Tuple(vec![a, b])
    }

    pub fn tag(label: &str, e: Element) -> Self {
        Element::Tag(Arc::from(label), Box::new(e))
    }

    pub fn unit() -> Self {
        Element::Tuple(Vec::new())
    }

    pub fn as_tuple(&self) -> Result<&[Element]> {
        match self {
            Element::Tuple(items) => Ok(items),
            other => Err(Error::Invalid(format!("{other} is not a tuple"))),
        }
    }

    pub fn proj(&self, i: usize) -> Result<&Element> {
        self.as_tuple()?
            .get(i)
            .ok_or_else(|| Error::Index(format!("component {i} of {self}")))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Element::Atom(s) => Some(s),
            _ => None,
        }
    }

    /// Generic JSON form: atoms are strings, tuples arrays, tags and lists objects.
    pub fn to_json(&self) -> Value {
        match self {
            Element::Atom(s) => Value::String(s.to_string()),
            Element::Tuple(items) => Value::Array(items.iter().map(Element::to_json).collect()),
            Element::Tag(l, e) => json!({"tag": l.as_ref(), "value": e.to_json()}),
            Element::List(items) => json!({"list": items.iter().map(Element::to_json).collect::<Vec<_>>()}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Ok(Element::atom(s)),
            Value::Number(n) => Ok(Element::atom(&n.to_string())),
            Value::Array(items) => Ok(Element::Tuple(items.iter().map(Element::from_json).collect::<Result<_>>()?)),
            Value::Object(map) => {
                if let Some(Value::Array(items)) = map.get("list") {
                    return Ok(Element::List(items.iter().map(Element::from_json).collect::<Result<_>>()?));
                }
                match (map.get("tag"), map.get("value")) {
                    (Some(Value::String(l)), Some(inner)) => Ok(Element::tag(l, Element::from_json(inner)?)),
                    _ => Err(Error::Parse(format!("unrecognised element object {v}"))),
                }
            }
            other => Err(Error::Parse(format!("unrecognised element {other}"))),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(s) => write!(f, "{s}"),
            Element::Tuple(items) => {
                write!(f, "(")?;
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Element::Tag(l, e) => write!(f, "{l}:{e}"),
            Element::List(items) => {
                write!(f, "[")?;
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A duplicate-free finite set, stored sorted in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteSet {
    elems: Arc<Vec<Element>>,
}

impl FiniteSet {
    pub fn new(elems: impl IntoIterator<Item = Element>) -> Self {
        let mut v: Vec<Element> = elems.into_iter().collect();
        v.sort();
        v.dedup();
        FiniteSet { elems: Arc::new(v) }
    }

    pub fn atoms(names: &[&str]) -> Self {
        Self::new(names.iter().map(|s| Element::atom(s)))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elems.binary_search(e).is_ok()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elems.iter()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn without(&self, e: &Element) -> Self {
        FiniteSet::new(self.elems.iter().filter(|x| *x != e).cloned())
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// An object of the base category.
#[derive(Clone, PartialEq, Debug)]
pub enum SetObj {
    Finite(FiniteSet),
    /// `T(base)` for a monad that does not preserve finite sets.
    Free { monad: MonadSpec, base: Box<SetObj> },
}

impl SetObj {
    pub fn contains(&self, e: &Element) -> bool {
        match self {
            SetObj::Finite(s) => s.contains(e),
            SetObj::Free { monad, base } => monad.contains(e, &|x| base.contains(x)),
        }
    }

    pub fn finite(&self) -> Result<&FiniteSet> {
        match self {
            SetObj::Finite(s) => Ok(s),
            SetObj::Free { monad, .. } => Err(Error::Infinite(format!("free {} carrier", monad.name()))),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SetObj::Finite(_))
    }
}

impl From<FiniteSet> for SetObj {
    fn from(s: FiniteSet) -> Self {
        SetObj::Finite(s)
    }
}

pub type Evaluator = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;

/// A finite function stored as an ordered association list.
pub type Table = Arc<BTreeMap<Element, Element>>;

pub fn lookup(t: &Table, x: &Element) -> Result<Element> {
    t.get(x).cloned().ok_or_else(|| Error::TableMiss(x.to_string()))
}

pub fn tabulate(dom: &FiniteSet, mut f: impl FnMut(&Element) -> Result<Element>) -> Result<Table> {
    Ok(Arc::new(dom.iter().map(|x| Ok((x.clone(), f(x)?))).collect::<Result<BTreeMap<_, _>>>()?))
}

#[derive(Clone)]
pub enum MorphBody {
    Table(Table),
    Identity,
    /// `Composite([g, f])` is `g ∘ f`.
    Composite(Vec<Morph>),
    TLift(MonadSpec, Box<Morph>),
    UnitAt(MonadSpec),
    MultAt(MonadSpec),
    Projection(usize),
    Pairing(Vec<Morph>),
    Constant(Element),
    Named(String, Evaluator),
}

/// An evaluable morphism of the base category.
#[derive(Clone)]
pub struct Morph {
    pub dom: SetObj,
    pub cod: SetObj,
    pub body: MorphBody,
}

impl fmt::Debug for Morph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.body {
            MorphBody::Table(t) => format!("table[{}]", t.len()),
            MorphBody::Identity => "identity".into(),
            MorphBody::Composite(v) => format!("composite[{}]", v.len()),
            MorphBody::TLift(m, _) => format!("lift[{}]", m.name()),
            MorphBody::UnitAt(m) => format!("unit[{}]", m.name()),
            MorphBody::MultAt(m) => format!("mult[{}]", m.name()),
            MorphBody::Projection(i) => format!("proj{i}"),
            MorphBody::Pairing(v) => format!("pairing[{}]", v.len()),
            MorphBody::Constant(c) => format!("const {c}"),
            MorphBody::Named(n, _) => n.clone(),
        };
        write!(f, "Morph({kind})")
    }
}

impl Morph {
    pub fn new(dom: SetObj, cod: SetObj, body: MorphBody) -> Self {
        Morph { dom, cod, body }
    }

    pub fn table(dom: FiniteSet, cod: SetObj, map: Table) -> Result<Self> {
        for x in dom.iter() {
            if !map.contains_key(x) {
                return Err(Error::TableMiss(x.to_string()));
            }
        }
        Ok(Morph { dom: dom.into(), cod, body: MorphBody::Table(map) })
    }

    /// Tabulates `f` on a finite domain.
    pub fn tabulate(dom: &FiniteSet, cod: SetObj, f: impl Fn(&Element) -> Result<Element>) -> Result<Self> {
        Ok(Morph { dom: dom.clone().into(), cod, body: MorphBody::Table(tabulate(dom, f)?) })
    }

    pub fn identity(x: SetObj) -> Self {
        Morph { dom: x.clone(), cod: x, body: MorphBody::Identity }
    }

    pub fn named(name: &str, dom: SetObj, cod: SetObj, f: Evaluator) -> Self {
        Morph { dom, cod, body: MorphBody::Named(name.to_string(), f) }
    }

    pub fn projection(dom: SetObj, cod: SetObj, i: usize) -> Self {
        Morph { dom, cod, body: MorphBody::Projection(i) }
    }

    pub fn constant(dom: SetObj, cod: SetObj, c: Element) -> Self {
        Morph { dom, cod, body: MorphBody::Constant(c) }
    }

    /// `g ∘ f`, requiring matching objects.
    pub fn then(f: &Morph, g: &Morph) -> Result<Self> {
        if f.cod != g.dom {
            return Err(Error::Mismatch("codomain and domain differ in composite".into()));
        }
        Ok(Morph { dom: f.dom.clone(), cod: g.cod.clone(), body: MorphBody::Composite(vec![g.clone(), f.clone()]) })
    }

    pub fn pairing(dom: SetObj, cod: SetObj, parts: Vec<Morph>) -> Self {
        Morph { dom, cod, body: MorphBody::Pairing(parts) }
    }

    /// Evaluation without a domain check.
    pub fn apply(&self, e: &Element) -> Result<Element> {
        match &self.body {
            MorphBody::Table(t) => lookup(t, e),
            MorphBody::Identity => Ok(e.clone()),
            MorphBody::Composite(parts) => {
                let mut cur = e.clone();
                for f in parts.iter().rev() {
                    cur = f.apply(&cur)?;
                }
                Ok(cur)
            }
            MorphBody::TLift(monad, f) => monad.fmap(e, &mut |x| f.apply(x)),
            MorphBody::UnitAt(monad) => Ok(monad.unit(e)),
            MorphBody::MultAt(monad) => monad.mult(e),
            MorphBody::Projection(i) => e.proj(*i).cloned(),
            MorphBody::Pairing(parts) => Ok(Element::Tuple(parts.iter().map(|f| f.apply(e)).collect::<Result<_>>()?)),
            MorphBody::Constant(c) => Ok(c.clone()),
            MorphBody::Named(_, f) => f(e),
        }
    }

    /// Table form on a finite domain, for fast repeated evaluation.
    pub fn tabulated(&self) -> Result<Self> {
        let dom = self.dom.finite()?.clone();
        Morph::tabulate(&dom, self.cod.clone(), |x| self.apply(x))
    }

    /// Fibers by inversion over a finite domain.
    pub fn inverse_images(&self) -> Result<HashMap<Element, Vec<Element>>> {
        let mut inv: HashMap<Element, Vec<Element>> = HashMap::new();
        for x in self.dom.finite()?.iter() {
            inv.entry(self.apply(x)?).or_default().push(x.clone());
        }
        Ok(inv)
    }
}

/// `evaluate(f, e)`: checks membership in the domain and evaluates.
pub fn evaluate(f: &Morph, e: &Element) -> Result<Element> {
    if !f.dom.contains(e) {
        return Err(Error::NotInDomain(e.to_string()));
    }
    f.apply(e)
}

/// Enumerates the fiber `g^{-1}(c)` of a fixed map `g`.
#[derive(Clone)]
pub struct FiberOracle(Arc<dyn Fn(&Element) -> Result<Vec<Element>> + Send + Sync>);

impl FiberOracle {
    pub fn new(f: impl Fn(&Element) -> Result<Vec<Element>> + Send + Sync + 'static) -> Self {
        FiberOracle(Arc::new(f))
    }

    /// The oracle obtained by tabulating the inverse of a map with finite domain.
    pub fn by_inversion(g: &Morph) -> Result<Self> {
        let inv = Arc::new(g.inverse_images()?);
        Ok(FiberOracle::new(move |c| Ok(inv.get(c).cloned().unwrap_or_default())))
    }

    pub fn fiber(&self, c: &Element) -> Result<Vec<Element>> {
        (self.0)(c)
    }
}

/// A pullback with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub obj: FiniteSet,
    pub p1: Morph,
    pub p2: Morph,
}

/// The pullback of `f: A → C` and `g: B → C`, with elements `(a, b)`.
pub fn pullback(f: &Morph, g: &Morph, oracle: &FiberOracle) -> Result<Pullback> {
    let a = f.dom.finite()?;
    let mut out = Vec::new();
    for x in a.iter() {
        let c = f.apply(x)?;
        for y in oracle.fiber(&c)? {
            out.push(Element::pair(x.clone(), y));
        }
    }
    let obj = FiniteSet::new(out);
    let p1 = Morph::projection(obj.clone().into(), f.dom.clone(), 0);
    let p2 = Morph::projection(obj.clone().into(), g.dom.clone(), 1);
    Ok(Pullback { obj, p1, p2 })
}

/// Pullback using an oracle obtained by inverting `g` (finite domain required).
pub fn pullback_finite(f: &Morph, g: &Morph) -> Result<Pullback> {
    pullback(f, g, &FiberOracle::by_inversion(g)?)
}

/// A finite diagram: vertices and edges `(source, target, map)`.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub vertices: Vec<SetObj>,
    pub edges: Vec<(usize, usize, Morph)>,
}

#[derive(Clone, Debug)]
pub struct Limit {
    /// Elements are tuples with one entry per vertex.
    pub obj: FiniteSet,
    pub projections: Vec<Morph>,
}

/// Brute-force limit: all vertex-indexed tuples commuting with every edge.
///
/// A vertex reached by an edge from an already chosen vertex takes the forced value, so
/// only vertices with no incoming information are enumerated.
pub fn finite_limit(diagram: &Diagram) -> Result<Limit> {
    let nv = diagram.vertices.len();
    let mut order = Vec::with_capacity(nv);
    let mut placed = vec![false; nv];
    let mut forced_by: Vec<Option<usize>> = vec![None; nv];
    while order.len() < nv {
        let forced = (0..nv).find_map(|v| {
            if placed[v] {
                return None;
            }
            diagram.edges.iter().position(|(s, t, _)| *t == v && placed[*s]).map(|e| (v, e))
        });
        let (v, edge) = match forced {
            Some((v, e)) => (v, Some(e)),
            None => {
                let v = (0..nv)
                    .filter(|&v| !placed[v])
                    .min_by_key(|&v| match &diagram.vertices[v] {
                        SetObj::Finite(s) => (0, s.len()),
                        SetObj::Free { .. } => (1, 0),
                    })
                    .expect("an unplaced vertex remains");
                (v, None)
            }
        };
        placed[v] = true;
        forced_by[v] = edge;
        order.push(v);
    }
    let mut results = Vec::new();
    let mut assignment: Vec<Option<Element>> = vec![None; nv];
    search_limit(diagram, &order, &forced_by, 0, &mut assignment, &mut results)?;
    let obj = FiniteSet::new(results);
    let projections = (0..nv)
        .map(|v| Morph::projection(obj.clone().into(), diagram.vertices[v].clone(), v))
        .collect();
    Ok(Limit { obj, projections })
}

fn search_limit(
    diagram: &Diagram,
    order: &[usize],
    forced_by: &[Option<usize>],
    depth: usize,
    assignment: &mut Vec<Option<Element>>,
    results: &mut Vec<Element>,
) -> Result<()> {
    if depth == order.len() {
        results.push(Element::Tuple(assignment.iter().map(|x| x.clone().expect("assigned")).collect()));
        return Ok(());
    }
    let v = order[depth];
    let candidates: Vec<Element> = match forced_by[v] {
        Some(e) => {
            let (s, _, f) = &diagram.edges[e];
            let value = f.apply(assignment[*s].as_ref().expect("source placed"))?;
            if diagram.vertices[v].contains(&value) {
                vec![value]
            } else {
                vec![]
            }
        }
        None => diagram.vertices[v].finite()?.elements().to_vec(),
    };
    for cand in candidates {
        assignment[v] = Some(cand);
        let mut ok = true;
        for (s, t, f) in &diagram.edges {
            if (*s == v || *t == v) && assignment[*s].is_some() && assignment[*t].is_some() {
                let image = f.apply(assignment[*s].as_ref().expect("checked"))?;
                if Some(&image) != assignment[*t].as_ref() {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            search_limit(diagram, order, forced_by, depth + 1, assignment, results)?;
        }
    }
    assignment[v] = None;
    Ok(())
}

/// The nine legs of a hexagon-shaped diagram with centre `G`:
///
/// ```text
///        B --a--> A <--f-- F
///        |        |g       |e
///        b        v        v
///        C --h--> G <--i-- E
///        ^                 ^
///        c-------- D ------d
/// ```
#[derive(Clone, Debug)]
pub struct Hexagon {
    pub a: Morph,
    pub b: Morph,
    pub c: Morph,
    pub d: Morph,
    pub e: Morph,
    pub f: Morph,
    pub g: Morph,
    pub h: Morph,
    pub i: Morph,
}

#[derive(Clone, Debug)]
pub struct HexagonLimit {
    /// Elements are triples `(b, d, f)`.
    pub obj: FiniteSet,
    pub proj_b: Morph,
    pub proj_d: Morph,
    pub proj_f: Morph,
}

/// Limit of the outer hexagon, computed by the pullback recipe: `U = F ×_A B`,
/// `V = D ×_C B`, `W = B ×_G E`, then the pullback of the induced maps `U → W ← V`.
pub fn limit_hexagon(hx: &Hexagon) -> Result<HexagonLimit> {
    let b_set = hx.a.dom.finite()?.clone();
    for x in b_set.iter() {
        let via_a = hx.g.apply(&hx.a.apply(x)?)?;
        let via_b = hx.h.apply(&hx.b.apply(x)?)?;
        if via_a != via_b {
            return Err(Error::Invalid(format!("hexagon is inconsistent at {x}: g∘a ≠ h∘b")));
        }
    }
    // U: elements (f_elem, b_elem) with f(f_elem) = a(b_elem)
    let u = pullback_finite(&hx.f, &hx.a)?;
    // V: elements (d_elem, b_elem) with c(d_elem) = b(b_elem)
    let v = pullback_finite(&hx.c, &hx.b)?;
    // W: elements (b_elem, e_elem) with g(a(b_elem)) = i(e_elem)
    let ga = Morph::tabulate(&b_set, hx.g.cod.clone(), |x| hx.g.apply(&hx.a.apply(x)?))?;
    let w = pullback_finite(&ga, &hx.i)?;
    let x_map = Morph::tabulate(&u.obj, w.obj.clone().into(), |el| {
        let fe = el.proj(0)?;
        let be = el.proj(1)?;
        Ok(Element::pair(be.clone(), hx.e.apply(fe)?))
    })?;
    let y_map = Morph::tabulate(&v.obj, w.obj.clone().into(), |el| {
        let de = el.proj(0)?;
        let be = el.proj(1)?;
        Ok(Element::pair(be.clone(), hx.d.apply(de)?))
    })?;
    let l = pullback_finite(&x_map, &y_map)?;
    let triples = l
        .obj
        .iter()
        .map(|el| {
            let uel = el.proj(0)?;
            let vel = el.proj(1)?;
            Ok(Element::Tuple(vec![uel.proj(1)?.clone(), vel.proj(0)?.clone(), uel.proj(0)?.clone()]))
        })
        .collect::<Result<Vec<_>>>()?;
    let obj = FiniteSet::new(triples);
    Ok(HexagonLimit {
        proj_b: Morph::projection(obj.clone().into(), hx.a.dom.clone(), 0),
        proj_d: Morph::projection(obj.clone().into(), hx.c.dom.clone(), 1),
        proj_f: Morph::projection(obj.clone().into(), hx.f.dom.clone(), 2),
        obj,
    })
}

/// The hexagon as a generic diagram, vertex order `A, B, C, D, E, F, G`.
pub fn hexagon_diagram(hx: &Hexagon) -> Diagram {
    let (a, b, c, d, e, f, g) = (0, 1, 2, 3, 4, 5, 6);
    Diagram {
        vertices: vec![
            hx.a.cod.clone(),
            hx.a.dom.clone(),
            hx.b.cod.clone(),
            hx.c.dom.clone(),
            hx.d.cod.clone(),
            hx.f.dom.clone(),
            hx.g.cod.clone(),
        ],
        edges: vec![
            (b, a, hx.a.clone()),
            (b, c, hx.b.clone()),
            (d, c, hx.c.clone()),
            (d, e, hx.d.clone()),
            (f, e, hx.e.clone()),
            (f, a, hx.f.clone()),
            (a, g, hx.g.clone()),
            (c, g, hx.h.clone()),
            (e, g, hx.i.clone()),
        ],
    }
}

/// A commuting square `P → A`, `P → B` over `f: A → C`, `g: B → C`.
#[derive(Clone, Debug)]
pub struct Square {
    pub apex: FiniteSet,
    pub to_a: Morph,
    pub to_b: Morph,
    pub f: Morph,
    pub g: Morph,
}

/// Outcome of comparing an apex with the computed pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PullbackVerdict {
    Pullback,
    /// Two apex elements with the same image.
    NotInjective(Element, Element),
    /// A pullback element with no preimage.
    NotSurjective(Element),
}

impl PullbackVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PullbackVerdict::Pullback)
    }
}

/// Decides whether the square is a pullback by testing the canonical comparison for bijectivity.
pub fn pullback_verdict(sq: &Square, oracle: &FiberOracle) -> Result<PullbackVerdict> {
    let mut seen: BTreeMap<Element, Element> = BTreeMap::new();
    for x in sq.apex.iter() {
        let a = sq.to_a.apply(x)?;
        let b = sq.to_b.apply(x)?;
        if sq.f.apply(&a)? != sq.g.apply(&b)? {
            return Err(Error::Invalid(format!("square does not commute at {x}")));
        }
        if let Some(prev) = seen.insert(Element::pair(a, b), x.clone()) {
            return Ok(PullbackVerdict::NotInjective(prev, x.clone()));
        }
    }
    let pb = pullback(&sq.f, &sq.g, oracle)?;
    for y in pb.obj.iter() {
        if !seen.contains_key(y) {
            return Ok(PullbackVerdict::NotSurjective(y.clone()));
        }
    }
    Ok(PullbackVerdict::Pullback)
}

pub fn is_pullback_square(sq: &Square, oracle: &FiberOracle) -> Result<bool> {
    Ok(pullback_verdict(sq, oracle)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{Monoid, MonadSpec};

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::atoms(names)
    }

    fn to_const(dom: &FiniteSet, cod: &FiniteSet, c: &str) -> Morph {
        Morph::tabulate(dom, cod.clone().into(), |_| Ok(Element::atom(c))).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let x = set(&["a"]);
        let id = Morph::identity(x.clone().into());
        assert_eq!(evaluate(&id, &Element::atom("a")).unwrap(), Element::atom("a"));
        assert!(evaluate(&id, &Element::atom("b")).is_err());

        let list = MonadSpec::list();
        let f = Morph::tabulate(&set(&["x", "y"]), set(&["u", "v"]).into(), |e| {
            Ok(Element::atom(if e.as_atom() == Some("x") { "u" } else { "v" }))
        })
        .unwrap();
        let lifted = list.on_morph(&f);
        let input = Element::List(vec![Element::atom("x"), Element::atom("y")]);
        assert_eq!(evaluate(&lifted, &input).unwrap(), Element::List(vec![Element::atom("u"), Element::atom("v")]));

        let w = MonadSpec::writer(Monoid::z2());
        let star = set(&["*"]);
        let mult = w.mult_at(&star.clone().into()).unwrap();
        let input = Element::pair(Element::atom("g"), Element::pair(Element::atom("g"), Element::atom("*")));
        assert_eq!(evaluate(&mult, &input).unwrap(), Element::pair(Element::atom("1"), Element::atom("*")));
    }

    #[test]
    fn pullback_examples() {
        let a = set(&["x", "y"]);
        let b = set(&["a", "b"]);
        let one = set(&["*"]);
        let pb = pullback_finite(&to_const(&a, &one, "*"), &to_const(&b, &one, "*")).unwrap();
        assert_eq!(pb.obj.len(), 4);

        let c = set(&["p", "q", "r"]);
        let g = Morph::tabulate(&b, c.clone().into(), |e| {
            Ok(Element::atom(if e.as_atom() == Some("a") { "p" } else { "r" }))
        })
        .unwrap();
        let pb = pullback_finite(&Morph::identity(c.clone().into()), &g).unwrap();
        assert_eq!(pb.obj.len(), b.len());
        let images: Vec<_> = pb.obj.iter().map(|e| pb.p2.apply(e).unwrap()).collect();
        assert_eq!(FiniteSet::new(images), b);
    }

    #[test]
    fn finite_limit_basics() {
        let a = set(&["x", "y", "z"]);
        let single = finite_limit(&Diagram { vertices: vec![a.clone().into()], edges: vec![] }).unwrap();
        assert_eq!(single.obj.len(), 3);
        let empty = finite_limit(&Diagram::default()).unwrap();
        assert_eq!(empty.obj.len(), 1);
    }

    #[test]
    fn finite_limit_agrees_with_pullback_on_cospans() {
        let a = set(&["1", "2", "3"]);
        let b = set(&["u", "v", "w", "t"]);
        let c = set(&["p", "q"]);
        let f = Morph::tabulate(&a, c.clone().into(), |e| Ok(Element::atom(if e.as_atom() == Some("1") { "p" } else { "q" }))).unwrap();
        let g = Morph::tabulate(&b, c.clone().into(), |e| Ok(Element::atom(if e.as_atom() == Some("t") { "q" } else { "p" }))).unwrap();
        let pb = pullback_finite(&f, &g).unwrap();
        let lim = finite_limit(&Diagram {
            vertices: vec![a.into(), b.into(), c.into()],
            edges: vec![(0, 2, f), (1, 2, g)],
        })
        .unwrap();
        let from_lim = FiniteSet::new(lim.obj.iter().map(|t| Element::pair(t.proj(0).unwrap().clone(), t.proj(1).unwrap().clone())));
        assert_eq!(from_lim, pb.obj);
    }

    #[test]
    fn hexagon_of_identities() {
        let x = set(&["a", "b", "c"]);
        let id = Morph::identity(x.clone().into());
        let hx = Hexagon {
            a: id.clone(),
            b: id.clone(),
            c: id.clone(),
            d: id.clone(),
            e: id.clone(),
            f: id.clone(),
            g: id.clone(),
            h: id.clone(),
            i: id,
        };
        assert_eq!(limit_hexagon(&hx).unwrap().obj.len(), 3);
        assert_eq!(finite_limit(&hexagon_diagram(&hx)).unwrap().obj.len(), 3);
    }

    #[test]
    fn pullback_square_detection() {
        let a = set(&["x", "y"]);
        let one = set(&["*"]);
        let f = to_const(&a, &one, "*");
        let pb = pullback_finite(&f, &f).unwrap();
        let sq = Square { apex: pb.obj.clone(), to_a: pb.p1.clone(), to_b: pb.p2.clone(), f: f.clone(), g: f.clone() };
        let oracle = FiberOracle::by_inversion(&f).unwrap();
        assert!(is_pullback_square(&sq, &oracle).unwrap());
        let smaller = pb.obj.without(&pb.obj.elements()[0]);
        let sq2 = Square { apex: smaller, ..sq };
        assert!(matches!(pullback_verdict(&sq2, &oracle).unwrap(), PullbackVerdict::NotSurjective(_)));

        let id = Morph::identity(a.clone().into());
        let sq3 = Square { apex: a.clone(), to_a: id.clone(), to_b: id.clone(), f: id.clone(), g: id.clone() };
        assert!(is_pullback_square(&sq3, &FiberOracle::by_inversion(&id).unwrap()).unwrap());
    }

    #[test]
    fn element_json_roundtrip() {
        let e = Element::Tuple(vec![
            Element::atom("a"),
            Element::tag("just", Element::List(vec![Element::atom("b"), Element::unit()])),
        ]);
        assert_eq!(Element::from_json(&e.to_json()).unwrap(), e);
    }
}
