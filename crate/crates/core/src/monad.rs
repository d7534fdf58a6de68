//! Cartesian monads on the base category, through a polynomial decomposition of `TX` into
//! shapes and positions.
//!
//! Every bundled monad is cartesian: an element of `TX` is a shape together with a tuple
//! of positions in `X`, and `Tf` preserves the shape. Functor action, membership, fibers
//! of lifted maps and enumeration are derived from that decomposition.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::sets::{Element, FiberOracle, FiniteSet, Morph, MorphBody, SetObj};

pub type JsonEncoder<'a> = &'a dyn Fn(&Element) -> Result<Value>;
pub type JsonDecoder<'a> = &'a dyn Fn(&Value) -> Result<Element>;

/// The operations a monad supplies; everything else is derived.
pub trait MonadOps: Send + Sync {
    /// Unique name; two monads are equal exactly when their names are.
    fn name(&self) -> String;
    /// Decomposes `t ∈ TX` into its shape and its positions.
    fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)>;
    /// Inverse of `split`.
    fn assemble(&self, shape: &Element, positions: Vec<Element>) -> Result<Element>;
    /// All shapes, or `None` when there are infinitely many.
    fn shapes(&self) -> Option<Vec<Element>>;
    fn is_shape(&self, shape: &Element) -> bool;
    fn arity(&self, shape: &Element) -> Result<usize>;
    fn unit(&self, x: &Element) -> Element;
    fn mult(&self, tt: &Element) -> Result<Element>;
    fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value>;
    fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element>;
    /// Document form of the monad itself.
    fn describe(&self) -> Value;
}

/// A monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub name: String,
    pub elements: Vec<Element>,
    pub unit: Element,
    table: HashMap<(Element, Element), Element>,
}

impl Monoid {
    pub fn new(name: &str, elements: Vec<Element>, unit: Element, table: HashMap<(Element, Element), Element>) -> Result<Self> {
        let m = Monoid { name: name.to_string(), elements, unit, table };
        m.validate()?;
        Ok(m)
    }

    /// `{1, g}` with `g·g = 1`.
    pub fn z2() -> Self {
        let one = Element::atom("1");
        let g = Element::atom("g");
        let mut table = HashMap::new();
        table.insert((one.clone(), one.clone()), one.clone());
        table.insert((one.clone(), g.clone()), g.clone());
        table.insert((g.clone(), one.clone()), g.clone());
        table.insert((g.clone(), g.clone()), one.clone());
        Monoid { name: "z2".into(), elements: vec![one.clone(), g], unit: one, table }
    }

    /// The monoid of a finite table with no validation, for exercising the validator.
    pub fn unchecked(name: &str, elements: Vec<Element>, unit: Element, table: HashMap<(Element, Element), Element>) -> Self {
        Monoid { name: name.to_string(), elements, unit, table }
    }

    pub fn op(&self, a: &Element, b: &Element) -> Result<Element> {
        self.table
            .get(&(a.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| Error::TableMiss(format!("{a}·{b} in monoid {}", self.name)))
    }

    pub fn contains(&self, a: &Element) -> bool {
        self.elements.contains(a)
    }

    pub fn table(&self) -> &HashMap<(Element, Element), Element> {
        &self.table
    }

    /// Checks closure, unit laws and associativity, naming a witness on failure.
    pub fn validate(&self) -> Result<()> {
        if !self.contains(&self.unit) {
            return Err(Error::Invalid(format!("unit {} is not an element", self.unit)));
        }
        for a in &self.elements {
            for b in &self.elements {
                let ab = self.op(a, b)?;
                if !self.contains(&ab) {
                    return Err(Error::Invalid(format!("{a}·{b} = {ab} leaves the monoid")));
                }
            }
            if self.op(&self.unit, a)? != *a || self.op(a, &self.unit)? != *a {
                return Err(Error::Invalid(format!("unit law fails at {a}")));
            }
        }
        for a in &self.elements {
            for b in &self.elements {
                for c in &self.elements {
                    let l = self.op(&self.op(a, b)?, c)?;
                    let r = self.op(a, &self.op(b, c)?)?;
                    if l != r {
                        return Err(Error::Invalid(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

struct IdentityMonad;

impl MonadOps for IdentityMonad {
    fn name(&self) -> String {
        "identity".into()
    }
    fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)> {
        Ok((Element::unit(), vec![t.clone()]))
    }
    fn assemble(&self, _shape: &Element, positions: Vec<Element>) -> Result<Element> {
        single(positions)
    }
    fn shapes(&self) -> Option<Vec<Element>> {
        Some(vec![Element::unit()])
    }
    fn is_shape(&self, shape: &Element) -> bool {
        *shape == Element::unit()
    }
    fn arity(&self, _shape: &Element) -> Result<usize> {
        Ok(1)
    }
    fn unit(&self, x: &Element) -> Element {
        x.clone()
    }
    fn mult(&self, tt: &Element) -> Result<Element> {
        Ok(tt.clone())
    }
    fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value> {
        inner(t)
    }
    fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element> {
        inner(v)
    }
    fn describe(&self) -> Value {
        serde_json::json!({"kind": "identity"})
    }
}

fn single(mut positions: Vec<Element>) -> Result<Element> {
    if positions.len() != 1 {
        return Err(Error::Invalid(format!("expected one position, got {}", positions.len())));
    }
    Ok(positions.pop().expect("length checked"))
}

struct MaybeMonad;

impl MonadOps for MaybeMonad {
    fn name(&self) -> String {
        "maybe".into()
    }
    fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)> {
        match t {
            Element::Atom(s) if s.as_ref() == "nothing" => Ok((Element::atom("nothing"), vec![])),
            Element::Tag(l, x) if l.as_ref() == "just" => Ok((Element::atom("just"), vec![(**x).clone()])),
            other => Err(Error::Invalid(format!("{other} is not a maybe value"))),
        }
    }
    fn assemble(&self, shape: &Element, positions: Vec<Element>) -> Result<Element> {
        match shape.as_atom() {
            Some("nothing") if positions.is_empty() => Ok(Element::atom("nothing")),
            Some("just") => Ok(Element::tag("just", single(positions)?)),
            _ => Err(Error::Invalid(format!("bad maybe shape {shape}"))),
        }
    }
    fn shapes(&self) -> Option<Vec<Element>> {
        Some(vec![Element::atom("just"), Element::atom("nothing")])
    }
    fn is_shape(&self, shape: &Element) -> bool {
        matches!(shape.as_atom(), Some("just" | "nothing"))
    }
    fn arity(&self, shape: &Element) -> Result<usize> {
        match shape.as_atom() {
            Some("nothing") => Ok(0),
            Some("just") => Ok(1),
            _ => Err(Error::Invalid(format!("bad maybe shape {shape}"))),
        }
    }
    fn unit(&self, x: &Element) -> Element {
        Element::tag("just", x.clone())
    }
    fn mult(&self, tt: &Element) -> Result<Element> {
        let (shape, pos) = self.split(tt)?;
        match shape.as_atom() {
            Some("nothing") => Ok(Element::atom("nothing")),
            _ => Ok(pos[0].clone()),
        }
    }
    fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value> {
        let (shape, pos) = self.split(t)?;
        match shape.as_atom() {
            Some("nothing") => Ok(Value::Null),
            _ => inner(&pos[0]),
        }
    }
    fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element> {
        match v {
            Value::Null => Ok(Element::atom("nothing")),
            other => Ok(Element::tag("just", inner(other)?)),
        }
    }
    fn describe(&self) -> Value {
        serde_json::json!({"kind": "maybe"})
    }
}

struct WriterMonad(Monoid);

impl MonadOps for WriterMonad {
    fn name(&self) -> String {
        format!("writer({})", self.0.name)
    }
    fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)> {
        let parts = t.as_tuple()?;
        if parts.len() != 2 || !self.0.contains(&parts[0]) {
            return Err(Error::Invalid(format!("{t} is not a writer value")));
        }
        Ok((parts[0].clone(), vec![parts[1].clone()]))
    }
    fn assemble(&self, shape: &Element, positions: Vec<Element>) -> Result<Element> {
        Ok(Element::pair(shape.clone(), single(positions)?))
    }
    fn shapes(&self) -> Option<Vec<Element>> {
        Some(self.0.elements.clone())
    }
    fn is_shape(&self, shape: &Element) -> bool {
        self.0.contains(shape)
    }
    fn arity(&self, _shape: &Element) -> Result<usize> {
        Ok(1)
    }
    fn unit(&self, x: &Element) -> Element {
        Element::pair(self.0.unit.clone(), x.clone())
    }
    fn mult(&self, tt: &Element) -> Result<Element> {
        let (m, pos) = self.split(tt)?;
        let (n, inner) = self.split(&pos[0])?;
        Ok(Element::pair(self.0.op(&m, &n)?, inner[0].clone()))
    }
    fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value> {
        let (m, pos) = self.split(t)?;
        Ok(Value::Array(vec![m.to_json(), inner(&pos[0])?]))
    }
    fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element> {
        match v {
            Value::Array(items) if items.len() == 2 => {
                let m = Element::from_json(&items[0])?;
                if !self.0.contains(&m) {
                    return Err(Error::Parse(format!("{m} is not in the monoid")));
                }
                Ok(Element::pair(m, inner(&items[1])?))
            }
            other => Err(Error::Parse(format!("writer value must be [m, x], got {other}"))),
        }
    }
    fn describe(&self) -> Value {
        let mut table = Vec::new();
        for a in &self.0.elements {
            let row: Vec<Value> = self.0.elements.iter().map(|b| self.0.op(a, b).map(|e| e.to_json()).unwrap_or(Value::Null)).collect();
            table.push(Value::Array(row));
        }
        serde_json::json!({
            "kind": "writer",
            "monoid": {
                "name": self.0.name,
                "elements": self.0.elements.iter().map(Element::to_json).collect::<Vec<_>>(),
                "unit": self.0.unit.to_json(),
                "table": table,
            }
        })
    }
}

struct ReaderMonad(FiniteSet);

impl ReaderMonad {
    fn n(&self) -> usize {
        self.0.len()
    }
}

impl MonadOps for ReaderMonad {
    fn name(&self) -> String {
        format!("reader({})", self.0.iter().map(|e| e.to_string()).join(","))
    }
    fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)> {
        let parts = t.as_tuple()?;
        if parts.len() != self.n() {
            return Err(Error::Invalid(format!("{t} is not a reader value")));
        }
        Ok((Element::unit(), parts.to_vec()))
    }
    fn assemble(&self, _shape: &Element, positions: Vec<Element>) -> Result<Element> {
        if positions.len() != self.n() {
            return Err(Error::Invalid("reader arity mismatch".into()));
        }
        Ok(Element::Tuple(positions))
    }
    fn shapes(&self) -> Option<Vec<Element>> {
        Some(vec![Element::unit()])
    }
    fn is_shape(&self, shape: &Element) -> bool {
        *shape == Element::unit()
    }
    fn arity(&self, _shape: &Element) -> Result<usize> {
        Ok(self.n())
    }
    fn unit(&self, x: &Element) -> Element {
        Element::Tuple(vec![x.clone(); self.n()])
    }
    fn mult(&self, tt: &Element) -> Result<Element> {
        let outer = tt.as_tuple()?;
        let diag = outer.iter().enumerate().map(|(s, inner)| inner.proj(s).cloned()).collect::<Result<Vec<_>>>()?;
        Ok(Element::Tuple(diag))
    }
    fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value> {
        let (_, pos) = self.split(t)?;
        Ok(Value::Array(pos.iter().map(inner).collect::<Result<_>>()?))
    }
    fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element> {
        match v {
            Value::Array(items) if items.len() == self.n() => Ok(Element::Tuple(items.iter().map(inner).collect::<Result<_>>()?)),
            other => Err(Error::Parse(format!("reader value must have {} entries, got {other}", self.n()))),
        }
    }
    fn describe(&self) -> Value {
        serde_json::json!({"kind": "reader", "set": self.0.iter().map(Element::to_json).collect::<Vec<_>>()})
    }
}

struct ListMonad;

impl MonadOps for ListMonad {
    fn name(&self) -> String {
        "list".into()
    }
    fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)> {
        match t {
            Element::List(items) => Ok((Element::atom(&items.len().to_string()), items.clone())),
            other => Err(Error::Invalid(format!("{other} is not a list"))),
        }
    }
    fn assemble(&self, shape: &Element, positions: Vec<Element>) -> Result<Element> {
        if self.arity(shape)? != positions.len() {
            return Err(Error::Invalid("list length mismatch".into()));
        }
        Ok(Element::List(positions))
    }
    fn shapes(&self) -> Option<Vec<Element>> {
        None
    }
    fn is_shape(&self, shape: &Element) -> bool {
        self.arity(shape).is_ok()
    }
    fn arity(&self, shape: &Element) -> Result<usize> {
        shape
            .as_atom()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Invalid(format!("bad list shape {shape}")))
    }
    fn unit(&self, x: &Element) -> Element {
        Element::List(vec![x.clone()])
    }
    fn mult(&self, tt: &Element) -> Result<Element> {
        let (_, outer) = self.split(tt)?;
        let mut flat = Vec::new();
        for inner in outer {
            flat.extend(self.split(&inner)?.1);
        }
        Ok(Element::List(flat))
    }
    fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value> {
        let (_, pos) = self.split(t)?;
        Ok(Value::Array(pos.iter().map(inner).collect::<Result<_>>()?))
    }
    fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element> {
        match v {
            Value::Array(items) => Ok(Element::List(items.iter().map(inner).collect::<Result<_>>()?)),
            other => Err(Error::Parse(format!("list value must be an array, got {other}"))),
        }
    }
    fn describe(&self) -> Value {
        serde_json::json!({"kind": "list"})
    }
}

/// A shared handle on a monad.
#[derive(Clone)]
pub struct MonadSpec(Arc<dyn MonadOps>);

impl PartialEq for MonadSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name()
    }
}

impl fmt::Debug for MonadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonadSpec({})", self.name())
    }
}

impl MonadSpec {
    pub fn from_ops(ops: impl MonadOps + 'static) -> Self {
        MonadSpec(Arc::new(ops))
    }

    pub fn identity() -> Self {
        Self::from_ops(IdentityMonad)
    }

    pub fn maybe() -> Self {
        Self::from_ops(MaybeMonad)
    }

    pub fn writer(m: Monoid) -> Self {
        Self::from_ops(WriterMonad(m))
    }

    pub fn reader(s: FiniteSet) -> Self {
        Self::from_ops(ReaderMonad(s))
    }

    pub fn list() -> Self {
        Self::from_ops(ListMonad)
    }

    pub fn ops(&self) -> &dyn MonadOps {
        self.0.as_ref()
    }

    pub fn name(&self) -> String {
        self.0.name()
    }

    pub fn describe(&self) -> Value {
        self.0.describe()
    }

    pub fn preserves_finite(&self) -> bool {
        self.0.shapes().is_some()
    }

    pub fn unit(&self, x: &Element) -> Element {
        self.0.unit(x)
    }

    pub fn mult(&self, tt: &Element) -> Result<Element> {
        self.0.mult(tt)
    }

    pub fn split(&self, t: &Element) -> Result<(Element, Vec<Element>)> {
        self.0.split(t)
    }

    pub fn fmap(&self, t: &Element, f: &mut dyn FnMut(&Element) -> Result<Element>) -> Result<Element> {
        let (shape, pos) = self.0.split(t)?;
        let mapped = pos.iter().map(|x| f(x)).collect::<Result<Vec<_>>>()?;
        self.0.assemble(&shape, mapped)
    }

    pub fn contains(&self, t: &Element, member: &dyn Fn(&Element) -> bool) -> bool {
        match self.0.split(t) {
            Ok((shape, pos)) => {
                self.0.is_shape(&shape) && self.0.arity(&shape).ok() == Some(pos.len()) && pos.iter().all(member)
            }
            Err(_) => false,
        }
    }

    /// Every element of `T(x)` for a finite `x`.
    pub fn enumerate(&self, x: &FiniteSet) -> Result<FiniteSet> {
        let shapes = self.0.shapes().ok_or_else(|| Error::Infinite(format!("T = {} on a finite set", self.name())))?;
        self.enumerate_shapes(x, shapes)
    }

    /// Elements of `T(x)` whose shape has arity at most `bound`.
    pub fn enumerate_bounded(&self, x: &FiniteSet, bound: usize) -> Result<FiniteSet> {
        let shapes = match self.0.shapes() {
            Some(s) => s,
            None => (0..=bound).map(|k| Element::atom(&k.to_string())).collect(),
        };
        let shapes = shapes.into_iter().filter(|s| self.0.arity(s).map(|a| a <= bound).unwrap_or(false)).collect();
        self.enumerate_shapes(x, shapes)
    }

    fn enumerate_shapes(&self, x: &FiniteSet, shapes: Vec<Element>) -> Result<FiniteSet> {
        let mut out = Vec::new();
        for shape in shapes {
            let k = self.0.arity(&shape)?;
            if k == 0 {
                out.push(self.0.assemble(&shape, vec![])?);
                continue;
            }
            for combo in (0..k).map(|_| x.elements().iter().cloned()).multi_cartesian_product() {
                out.push(self.0.assemble(&shape, combo)?);
            }
        }
        Ok(FiniteSet::new(out))
    }

    /// `T` on objects: finite when the monad preserves finiteness.
    pub fn on_obj(&self, x: &SetObj) -> Result<SetObj> {
        match x {
            SetObj::Finite(s) if self.preserves_finite() => Ok(SetObj::Finite(self.enumerate(s)?)),
            other => Ok(SetObj::Free { monad: self.clone(), base: Box::new(other.clone()) }),
        }
    }

    /// `T` on a morphism.
    pub fn on_morph(&self, f: &Morph) -> Morph {
        let dom = self.on_obj(&f.dom).unwrap_or_else(|_| SetObj::Free { monad: self.clone(), base: Box::new(f.dom.clone()) });
        let cod = self.on_obj(&f.cod).unwrap_or_else(|_| SetObj::Free { monad: self.clone(), base: Box::new(f.cod.clone()) });
        Morph::new(dom, cod, MorphBody::TLift(self.clone(), Box::new(f.clone())))
    }

    pub fn unit_at(&self, x: &SetObj) -> Result<Morph> {
        Ok(Morph::new(x.clone(), self.on_obj(x)?, MorphBody::UnitAt(self.clone())))
    }

    pub fn mult_at(&self, x: &SetObj) -> Result<Morph> {
        let tx = self.on_obj(x)?;
        let ttx = self.on_obj(&tx)?;
        Ok(Morph::new(ttx, tx, MorphBody::MultAt(self.clone())))
    }

    /// The fiber oracle of `Tf` built from one for `f`: same shape, positions drawn from
    /// the fibers of the positions.
    pub fn lift_fiber(&self, oracle: &FiberOracle) -> FiberOracle {
        let monad = self.clone();
        let oracle = oracle.clone();
        FiberOracle::new(move |t| {
            let (shape, pos) = monad.split(t)?;
            let fibers = pos.iter().map(|p| oracle.fiber(p)).collect::<Result<Vec<_>>>()?;
            let mut out = Vec::new();
            if fibers.is_empty() {
                out.push(monad.0.assemble(&shape, vec![])?);
            } else {
                for combo in fibers.into_iter().multi_cartesian_product() {
                    out.push(monad.0.assemble(&shape, combo)?);
                }
            }
            Ok(out)
        })
    }

    pub fn to_json(&self, t: &Element, inner: JsonEncoder) -> Result<Value> {
        self.0.to_json(t, inner)
    }

    pub fn from_json(&self, v: &Value, inner: JsonDecoder) -> Result<Element> {
        self.0.from_json(v, inner)
    }

    /// Checks the unit and associativity laws on `T^k x` for arities up to `bound`.
    pub fn check_laws(&self, x: &FiniteSet, bound: usize) -> Result<()> {
        let tx = self.enumerate_bounded(x, bound)?;
        for t in tx.iter() {
            if self.mult(&self.unit(t))? != *t {
                return Err(Error::Invalid(format!("m∘iT ≠ 1 at {t}")));
            }
            let lifted = self.fmap(t, &mut |e| Ok(self.unit(e)))?;
            if self.mult(&lifted)? != *t {
                return Err(Error::Invalid(format!("m∘Ti ≠ 1 at {t}")));
            }
        }
        let ttx = self.enumerate_bounded(&tx, bound)?;
        let tttx = self.enumerate_bounded(&ttx, bound)?;
        for t in tttx.iter() {
            let left = self.mult(&self.mult(t)?)?;
            let right = self.mult(&self.fmap(t, &mut |e| self.mult(e))?)?;
            if left != right {
                return Err(Error::Invalid(format!("associativity fails at {t}")));
            }
        }
        Ok(())
    }
}

/// A morphism `dom → T(cod)` of the Kleisli category.
#[derive(Clone, Debug)]
pub struct KleisliMorph {
    pub monad: MonadSpec,
    pub dom: SetObj,
    pub cod: SetObj,
    pub body: Morph,
}

impl KleisliMorph {
    pub fn identity(monad: &MonadSpec, x: &SetObj) -> Result<Self> {
        Ok(KleisliMorph { monad: monad.clone(), dom: x.clone(), cod: x.clone(), body: monad.unit_at(x)? })
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        self.body.apply(e)
    }
}

/// `g ∘ f` in the Kleisli category: `m ∘ T(g) ∘ f`.
pub fn kleisli_compose(g: &KleisliMorph, f: &KleisliMorph) -> Result<KleisliMorph> {
    if f.monad != g.monad {
        return Err(Error::Mismatch("Kleisli maps over different monads".into()));
    }
    if f.cod != g.dom {
        return Err(Error::Mismatch("Kleisli composite of non-composable maps".into()));
    }
    let monad = f.monad.clone();
    let (gb, fb, m) = (g.body.clone(), f.body.clone(), monad.clone());
    let body = Morph::named(
        "kleisli",
        f.dom.clone(),
        monad.on_obj(&g.cod)?,
        Arc::new(move |x| m.mult(&m.fmap(&fb.apply(x)?, &mut |y| gb.apply(y))?)),
    );
    Ok(KleisliMorph { monad, dom: f.dom.clone(), cod: g.cod.clone(), body })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundled() -> Vec<MonadSpec> {
        vec![
            MonadSpec::identity(),
            MonadSpec::maybe(),
            MonadSpec::writer(Monoid::z2()),
            MonadSpec::reader(FiniteSet::atoms(&["0", "1"])),
            MonadSpec::list(),
        ]
    }

    #[test]
    fn laws_hold_for_bundled_monads() {
        let x = FiniteSet::atoms(&["a", "b"]);
        for m in bundled() {
            m.check_laws(&x, 2).unwrap_or_else(|e| panic!("{}: {e}", m.name()));
        }
    }

    #[test]
    fn cardinalities_of_tx() {
        let x = FiniteSet::atoms(&["a", "b", "c"]);
        let expect = [3, 4, 6, 9];
        for (m, n) in bundled().into_iter().zip(expect) {
            assert_eq!(m.enumerate(&x).unwrap().len(), n, "{}", m.name());
        }
        assert!(matches!(MonadSpec::list().enumerate(&x), Err(Error::Infinite(_))));
        assert_eq!(MonadSpec::list().enumerate_bounded(&x, 2).unwrap().len(), 1 + 3 + 9);
    }

    #[test]
    fn lifted_fiber_matches_inversion() {
        let a = FiniteSet::atoms(&["a", "b", "c"]);
        let b = FiniteSet::atoms(&["u", "v"]);
        let f = Morph::tabulate(&a, b.clone().into(), |e| Ok(Element::atom(if e.as_atom() == Some("c") { "v" } else { "u" }))).unwrap();
        let oracle = FiberOracle::by_inversion(&f).unwrap();
        for m in bundled().into_iter().filter(MonadSpec::preserves_finite) {
            let lifted = m.lift_fiber(&oracle);
            let tf = m.on_morph(&f).tabulated().unwrap();
            let direct = FiberOracle::by_inversion(&tf).unwrap();
            for t in m.enumerate(&b).unwrap().iter() {
                let mut l = lifted.fiber(t).unwrap();
                let mut d = direct.fiber(t).unwrap();
                l.sort();
                d.sort();
                assert_eq!(l, d, "{} at {t}", m.name());
            }
        }
    }

    #[test]
    fn monoid_validation_reports_witness() {
        let a = Element::atom("1");
        let b = Element::atom("x");
        let mut table = HashMap::new();
        table.insert((a.clone(), a.clone()), a.clone());
        table.insert((a.clone(), b.clone()), b.clone());
        table.insert((b.clone(), a.clone()), b.clone());
        table.insert((b.clone(), b.clone()), a.clone());
        assert!(Monoid::new("ok", vec![a.clone(), b.clone()], a.clone(), table.clone()).is_ok());
        let c = Element::atom("y");
        let els = vec![a.clone(), b.clone(), c.clone()];
        let mut bad = HashMap::new();
        for p in &els {
            for q in &els {
                let r = if *p == a { q.clone() } else if *q == a { p.clone() } else { b.clone() };
                bad.insert((p.clone(), q.clone()), r);
            }
        }
        bad.insert((b.clone(), c.clone()), c.clone());
        let err = Monoid::new("bad", els, a, bad).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn kleisli_category_laws() {
        let w = MonadSpec::writer(Monoid::z2());
        let star = FiniteSet::atoms(&["*"]);
        let obj: SetObj = star.clone().into();
        let tstar = w.on_obj(&obj).unwrap();
        let g_tag = |name: &str| {
            Morph::tabulate(&star, tstar.clone(), |x| Ok(Element::pair(Element::atom(name), x.clone()))).unwrap()
        };
        let f = KleisliMorph { monad: w.clone(), dom: obj.clone(), cod: obj.clone(), body: g_tag("g") };
        let id = KleisliMorph::identity(&w, &obj).unwrap();
        let star_e = Element::atom("*");
        assert_eq!(kleisli_compose(&id, &f).unwrap().apply(&star_e).unwrap(), f.apply(&star_e).unwrap());
        assert_eq!(kleisli_compose(&f, &id).unwrap().apply(&star_e).unwrap(), f.apply(&star_e).unwrap());
        let ff = kleisli_compose(&f, &f).unwrap();
        assert_eq!(ff.apply(&star_e).unwrap(), Element::pair(Element::atom("1"), star_e.clone()));
    }

    #[test]
    fn unit_and_mult_are_natural() {
        let a = FiniteSet::atoms(&["a", "b", "c"]);
        let b = FiniteSet::atoms(&["u", "v"]);
        let f = Morph::tabulate(&a, b.clone().into(), |e| Ok(Element::atom(if e.as_atom() == Some("a") { "u" } else { "v" }))).unwrap();
        for m in bundled() {
            for x in a.iter() {
                assert_eq!(m.fmap(&m.unit(x), &mut |y| f.apply(y)).unwrap(), m.unit(&f.apply(x).unwrap()));
            }
            let ta = m.enumerate_bounded(&a, 2).unwrap();
            for tt in m.enumerate_bounded(&ta, 2).unwrap().iter() {
                let lhs = m.fmap(&m.mult(tt).unwrap(), &mut |y| f.apply(y)).unwrap();
                let rhs = m.mult(&m.fmap(tt, &mut |t| m.fmap(t, &mut |y| f.apply(y))).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{}", m.name());
            }
        }
    }

    #[test]
    fn laws_exhaustive_up_to_size_four() {
        for k in 1..=4 {
            let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let x = FiniteSet::atoms(&refs);
            for m in bundled() {
                if m.preserves_finite() {
                    m.check_laws(&x, usize::MAX).unwrap();
                } else if k <= 2 {
                    m.check_laws(&x, 2).unwrap();
                }
            }
        }
    }

    #[test]
    fn json_forms() {
        let inner: JsonEncoder = &|e| Ok(e.to_json());
        let dec: JsonDecoder = &|v| Element::from_json(v);
        for m in bundled() {
            let x = FiniteSet::atoms(&["a", "b"]);
            for t in m.enumerate_bounded(&x, 2).unwrap().iter() {
                let v = m.to_json(t, inner).unwrap();
                assert_eq!(m.from_json(&v, dec).unwrap(), *t, "{}", m.name());
            }
        }
        let maybe = MonadSpec::maybe();
        assert_eq!(maybe.to_json(&Element::atom("nothing"), inner).unwrap(), Value::Null);
    }
}
