//! JSON documents presenting a monad and a T-category, with canonical serialization.
//!
//! ```json
//! {
//!   "name": "interval",
//!   "monad": {"kind": "identity"},
//!   "tcategory": {
//!     "objects": ["0", "1"],
//!     "arrows": [{"name": "f", "dom": "0", "cod": "1"}, ...],
//!     "comp": [{"arrow": "f", "inputs": "id0", "result": "f"}, ...],
//!     "unit": [{"object": "0", "arrow": "id0"}, ...]
//!   },
//!   "depth": 4
//! }
//! ```
//!
//! `dom` is a value of `T(objects)` and `inputs` a value of `T(arrows)`, both in the monad's
//! JSON form: a bare name for `identity`, `null` or a name for `maybe`, `[m, name]` for
//! `writer`, an array indexed by the reader set for `reader`, and an array for `list`.
//! A composite entry lists the outer arrow and the arrows feeding into it. `comp` and `unit`
//! may be omitted for T-graphs. The optional `delete` list removes elements from the nerve.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::monad::{MonadSpec, Monoid};
use crate::nerve::{nerve, TSimp};
use crate::sets::{lookup, Element, FiniteSet, Table};
use crate::tcat::{TCatData, TGraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub monad: MonadDoc,
    pub tcategory: TCatDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delete: Vec<Deletion>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<Value>,
    pub unit: Value,
    /// `table[i][j] = elements[i] · elements[j]`.
    pub table: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TCatDoc {
    pub objects: Vec<Value>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comp: Option<Vec<CompDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<UnitDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: Value,
    pub dom: Value,
    pub cod: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompDoc {
    pub arrow: Value,
    pub inputs: Value,
    pub result: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitDoc {
    pub object: Value,
    pub arrow: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Deletion {
    pub level: usize,
    pub element: Value,
}

/// A parsed and validated document.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub name: String,
    pub tcat: TCatData,
    pub depth: Option<usize>,
    pub deletions: Vec<(usize, Element)>,
}

impl Workspace {
    pub fn monad(&self) -> &MonadSpec {
        self.tcat.monad()
    }

    /// The nerve at `depth` with the deletions applied.
    pub fn nerve(&self, depth: usize) -> Result<TSimp> {
        let mut x = nerve(&self.tcat, depth)?;
        for (n, e) in &self.deletions {
            if *n <= depth {
                x = x.without_element(*n, e)?;
            }
        }
        Ok(x)
    }
}

fn field(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Capability(_) | Error::Infinite(_) | Error::Parse(_) => e,
        other => Error::Parse(format!("{path}: {other}")),
    }
}

pub fn parse_document(text: &str) -> Result<Workspace> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    doc.build()
}

fn monoid_from(doc: &MonoidDoc) -> Result<Monoid> {
    let elements: Vec<Element> = doc.elements.iter().map(Element::from_json).collect::<Result<_>>()?;
    if doc.table.len() != elements.len() || doc.table.iter().any(|r| r.len() != elements.len()) {
        return Err(Error::Parse(format!("monad.monoid.table must be {0} × {0}", elements.len())));
    }
    let mut table = HashMap::new();
    for (a, row) in elements.iter().zip(&doc.table) {
        for (b, v) in elements.iter().zip(row) {
            table.insert((a.clone(), b.clone()), Element::from_json(v)?);
        }
    }
    let name = doc.name.clone().unwrap_or_else(|| "monoid".into());
    Monoid::new(&name, elements, Element::from_json(&doc.unit)?, table)
}

impl MonadDoc {
    pub fn build(&self) -> Result<MonadSpec> {
        let (need_monoid, need_set) = match self.kind.as_str() {
            "identity" | "maybe" | "list" => (false, false),
            "writer" => (true, false),
            "reader" => (false, true),
            other => return Err(Error::Parse(format!("monad.kind: unknown kind {other:?}"))),
        };
        if need_monoid != self.monoid.is_some() {
            return Err(Error::Parse(format!("monad.monoid: {} for kind {}", if need_monoid { "required" } else { "not allowed" }, self.kind)));
        }
        if need_set != self.set.is_some() {
            return Err(Error::Parse(format!("monad.set: {} for kind {}", if need_set { "required" } else { "not allowed" }, self.kind)));
        }
        Ok(match self.kind.as_str() {
            "identity" => MonadSpec::identity(),
            "maybe" => MonadSpec::maybe(),
            "list" => MonadSpec::list(),
            "writer" => MonadSpec::writer(monoid_from(self.monoid.as_ref().expect("checked")).map_err(field("monad.monoid"))?),
            _ => {
                let set = self.set.as_ref().expect("checked").iter().map(Element::from_json).collect::<Result<Vec<_>>>()?;
                MonadSpec::reader(FiniteSet::new(set))
            }
        })
    }

    pub fn from_monad(t: &MonadSpec) -> Result<Self> {
        serde_json::from_value(t.describe()).map_err(|e| Error::Invalid(format!("monad description: {e}")))
    }
}

fn names(items: &[Value], what: &str) -> Result<Vec<Element>> {
    let v: Vec<Element> = items.iter().map(Element::from_json).collect::<Result<_>>()?;
    let set = FiniteSet::new(v.clone());
    if set.len() != v.len() {
        return Err(Error::Parse(format!("{what}: duplicate names")));
    }
    Ok(v)
}

impl Document {
    pub fn build(&self) -> Result<Workspace> {
        let t = self.monad.build()?;
        let tc = &self.tcategory;
        let objects = FiniteSet::new(names(&tc.objects, "tcategory.objects")?);
        let arrow_names = names(&tc.arrows.iter().map(|a| a.name.clone()).collect::<Vec<_>>(), "tcategory.arrows")?;
        let arrows = FiniteSet::new(arrow_names.clone());
        let mut d0 = BTreeMap::new();
        let mut d1 = BTreeMap::new();
        for (k, (a, name)) in tc.arrows.iter().zip(&arrow_names).enumerate() {
            let path = format!("tcategory.arrows[{k}]");
            let dom = t.from_json(&a.dom, &|v| Element::from_json(v)).map_err(field(&path))?;
            d0.insert(name.clone(), Element::from_json(&a.cod)?);
            d1.insert(name.clone(), dom);
        }
        let graph = TGraph::new(t.clone(), objects.clone(), arrows.clone(), Arc::new(d0), Arc::new(d1)).map_err(field("tcategory.arrows"))?;
        let comp = match &tc.comp {
            None => None,
            Some(entries) => {
                let x2 = graph.x2().map_err(field("tcategory.comp"))?;
                let mut table = BTreeMap::new();
                for (k, c) in entries.iter().enumerate() {
                    let path = format!("tcategory.comp[{k}]");
                    let key = Element::pair(
                        Element::from_json(&c.arrow)?,
                        t.from_json(&c.inputs, &|v| Element::from_json(v)).map_err(field(&path))?,
                    );
                    if !x2.contains(&key) {
                        return Err(Error::Parse(format!("{path}: {key} is not a composable pair")));
                    }
                    let result = Element::from_json(&c.result)?;
                    if !arrows.contains(&result) {
                        return Err(Error::Parse(format!("{path}: {result} is not an arrow")));
                    }
                    if table.insert(key.clone(), result).is_some() {
                        return Err(Error::Parse(format!("{path}: {key} is composed twice")));
                    }
                }
                if let Some(missing) = x2.iter().find(|p| !table.contains_key(*p)) {
                    return Err(Error::Parse(format!("tcategory.comp: no composite for {missing}")));
                }
                Some(Arc::new(table))
            }
        };
        let unit = match &tc.unit {
            None => None,
            Some(entries) => {
                let mut table = BTreeMap::new();
                for (k, u) in entries.iter().enumerate() {
                    let (o, a) = (Element::from_json(&u.object)?, Element::from_json(&u.arrow)?);
                    if !objects.contains(&o) || !arrows.contains(&a) {
                        return Err(Error::Parse(format!("tcategory.unit[{k}]: unknown object or arrow")));
                    }
                    if table.insert(o.clone(), a).is_some() {
                        return Err(Error::Parse(format!("tcategory.unit[{k}]: {o} has two units")));
                    }
                }
                if let Some(missing) = objects.iter().find(|o| !table.contains_key(*o)) {
                    return Err(Error::Parse(format!("tcategory.unit: no unit for {missing}")));
                }
                Some(Arc::new(table))
            }
        };
        let name = self.name.clone().unwrap_or_else(|| "document".into());
        let deletions = self.delete.iter().map(|d| Ok((d.level, Element::from_json(&d.element)?))).collect::<Result<_>>()?;
        Ok(Workspace { name: name.clone(), tcat: TCatData { name, graph, comp, unit }, depth: self.depth, deletions })
    }

    /// The document of a T-category, in canonical element order.
    pub fn from_tcat(tcat: &TCatData, depth: Option<usize>) -> Result<Self> {
        let t = tcat.monad();
        let enc = |e: &Element| Ok(e.to_json());
        let g = &tcat.graph;
        let arrows = g
            .x1
            .iter()
            .map(|a| Ok(ArrowDoc { name: a.to_json(), dom: t.to_json(&lookup(&g.d1, a)?, &enc)?, cod: lookup(&g.d0, a)?.to_json() }))
            .collect::<Result<_>>()?;
        let comp = match &tcat.comp {
            None => None,
            Some(c) => Some(
                c.iter()
                    .map(|(k, v)| Ok(CompDoc { arrow: k.proj(0)?.to_json(), inputs: t.to_json(k.proj(1)?, &enc)?, result: v.to_json() }))
                    .collect::<Result<_>>()?,
            ),
        };
        let unit = tcat.unit.as_ref().map(|u| u.iter().map(|(o, a)| UnitDoc { object: o.to_json(), arrow: a.to_json() }).collect());
        Ok(Document {
            name: Some(tcat.name.clone()),
            monad: MonadDoc::from_monad(t)?,
            tcategory: TCatDoc { objects: g.x0.iter().map(Element::to_json).collect(), arrows, comp, unit },
            depth,
            delete: Vec::new(),
        })
    }
}

/// Canonical text of a workspace: sorted keys, canonical element order, two-space indent.
pub fn serialize_workspace(w: &Workspace) -> Result<String> {
    let mut doc = Document::from_tcat(&w.tcat, w.depth)?;
    doc.name = Some(w.name.clone());
    doc.delete = w.deletions.iter().map(|(n, e)| Deletion { level: *n, element: e.to_json() }).collect();
    let value = serde_json::to_value(&doc).map_err(|e| Error::Invalid(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `serialize(parse(text))`.
pub fn canonical(text: &str) -> Result<String> {
    serialize_workspace(&parse_document(text)?)
}

/// Canonical text of a lookup table, for reports.
pub fn table_json(t: &Table) -> Value {
    Value::Array(t.iter().map(|(k, v)| Value::Array(vec![k.to_json(), v.to_json()])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::check_segal;
    use crate::tcat::{algebra_tcat, point_algebra, FiniteCategory};

    const DISCRETE: &str = r#"{
        "monad": {"kind": "identity"},
        "tcategory": {
            "objects": ["a", "b"],
            "arrows": [{"name": "ia", "dom": "a", "cod": "a"}, {"name": "ib", "dom": "b", "cod": "b"}],
            "comp": [{"arrow": "ia", "inputs": "ia", "result": "ia"}, {"arrow": "ib", "inputs": "ib", "result": "ib"}],
            "unit": [{"object": "a", "arrow": "ia"}, {"object": "b", "arrow": "ib"}]
        }
    }"#;

    #[test]
    fn discrete_document() {
        let w = parse_document(DISCRETE).unwrap();
        assert!(w.tcat.classify().unwrap().t_category);
        let c = canonical(DISCRETE).unwrap();
        assert_eq!(canonical(&c).unwrap(), c);
    }

    #[test]
    fn bad_monoid_is_rejected() {
        let text = r#"{
            "monad": {"kind": "writer", "monoid": {"elements": ["1", "a", "b"], "unit": "1",
                "table": [["1", "a", "b"], ["a", "b", "b"], ["b", "a", "b"]]}},
            "tcategory": {"objects": [], "arrows": []}
        }"#;
        match parse_document(text) {
            Err(Error::Parse(msg)) => assert!(msg.contains("associativity fails at"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors_name_the_place() {
        match parse_document(r#"{"monad": {"kind": "identity"}, "tcategory": {"objects": [], "arrows": []}, "extra": 1}"#) {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
        match parse_document(r#"{"monad": {"kind": "tree"}, "tcategory": {"objects": [], "arrows": []}}"#) {
            Err(Error::Parse(msg)) => assert!(msg.contains("monad.kind"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn list_multicategory() {
        // one object, a binary arrow m, a nullary arrow e and the identity
        let text = r#"{
            "monad": {"kind": "list"},
            "tcategory": {
                "objects": ["x"],
                "arrows": [{"name": "id", "dom": ["x"], "cod": "x"}, {"name": "m", "dom": ["x", "x"], "cod": "x"}, {"name": "e", "dom": [], "cod": "x"}],
                "comp": [
                    {"arrow": "id", "inputs": ["id"], "result": "id"},
                    {"arrow": "id", "inputs": ["m"], "result": "m"},
                    {"arrow": "id", "inputs": ["e"], "result": "e"},
                    {"arrow": "m", "inputs": ["id", "id"], "result": "m"}
                ]
            }
        }"#;
        match parse_document(text) {
            Err(Error::Parse(msg)) => assert!(msg.contains("no composite"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let w = parse_document(&text.replace(
            r#"{"arrow": "m", "inputs": ["id", "id"], "result": "m"}"#,
            r#"{"arrow": "m", "inputs": ["id", "id"], "result": "m"}, {"arrow": "m", "inputs": ["id", "e"], "result": "id"},
               {"arrow": "m", "inputs": ["e", "id"], "result": "id"}, {"arrow": "m", "inputs": ["e", "e"], "result": "e"},
               {"arrow": "m", "inputs": ["m", "id"], "result": "m"}, {"arrow": "m", "inputs": ["id", "m"], "result": "m"},
               {"arrow": "m", "inputs": ["m", "m"], "result": "m"}, {"arrow": "m", "inputs": ["m", "e"], "result": "m"},
               {"arrow": "m", "inputs": ["e", "m"], "result": "m"}, {"arrow": "e", "inputs": [], "result": "e"}"#,
        ))
        .unwrap();
        assert_eq!(w.tcat.x2().unwrap().len(), 13);
    }

    #[test]
    fn roundtrip_of_constructed_categories() {
        let t = MonadSpec::writer(Monoid::z2());
        let (pt, act) = point_algebra(&t).unwrap();
        for tc in [FiniteCategory::ordinal(2).to_tcat("[2]").unwrap(), algebra_tcat(&pt, &act, &t).unwrap()] {
            let w = Workspace { name: tc.name.clone(), tcat: tc.clone(), depth: Some(3), deletions: vec![] };
            let s = serialize_workspace(&w).unwrap();
            let back = parse_document(&s).unwrap();
            assert!(back.tcat.canonical_eq(&tc));
            assert_eq!(serialize_workspace(&back).unwrap(), s);
        }
    }

    #[test]
    fn deletions_apply_to_the_nerve() {
        let tc = FiniteCategory::ordinal(2).to_tcat("[2]").unwrap();
        let x = nerve(&tc, 3).unwrap();
        let victim = x.nondegenerate(2)[0].clone();
        let w = Workspace { name: "m".into(), tcat: tc, depth: Some(3), deletions: vec![(2, victim)] };
        let back = parse_document(&serialize_workspace(&w).unwrap()).unwrap();
        assert!(!check_segal(&back.nerve(3).unwrap()).unwrap());
    }
}
