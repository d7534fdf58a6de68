//! T-graphs, T-category presentations, the axioms CA1–CA4 and the structure ladder, the
//! standard example constructions and finite categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monad::MonadSpec;
use crate::nerve::TSimp;
use crate::sets::{lookup, tabulate, Element, FiberOracle, FiniteSet, Table};

/// `d0: X1 → X0` (codomain) and `d1: X1 → TX0` (domain).
#[derive(Clone, Debug)]
pub struct TGraph {
    pub monad: MonadSpec,
    pub x0: FiniteSet,
    pub x1: FiniteSet,
    pub d0: Table,
    pub d1: Table,
}

impl TGraph {
    pub fn new(monad: MonadSpec, x0: FiniteSet, x1: FiniteSet, d0: Table, d1: Table) -> Result<Self> {
        for x in x1.iter() {
            let c = lookup(&d0, x)?;
            if !x0.contains(&c) {
                return Err(Error::Invalid(format!("d0({x}) = {c} is not an object")));
            }
            let d = lookup(&d1, x)?;
            if !monad.contains(&d, &|o| x0.contains(o)) {
                return Err(Error::Invalid(format!("d1({x}) = {d} is not in T(X0)")));
            }
        }
        Ok(TGraph { monad, x0, x1, d0, d1 })
    }

    /// Fibers of `T d0: TX1 → TX0`.
    pub fn td0_oracle(&self) -> Result<FiberOracle> {
        Ok(self.monad.lift_fiber(&invert(&self.d0)))
    }

    /// `X2` as the pullback of `d1` against `T d0`; elements `(x, t)`.
    pub fn x2(&self) -> Result<FiniteSet> {
        pullback_along(&self.x1, &self.d1, &self.td0_oracle()?)
    }
}

/// Fiber oracle of a finite table.
pub fn invert(t: &Table) -> FiberOracle {
    let mut inv: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
    for (x, y) in t.iter() {
        inv.entry(y.clone()).or_default().push(x.clone());
    }
    let inv = Arc::new(inv);
    FiberOracle::new(move |c| Ok(inv.get(c).cloned().unwrap_or_default()))
}

/// All `(a, b)` with `f(a) = g(b)`, `g` given by its fiber oracle.
pub fn pullback_along(a: &FiniteSet, f: &Table, g: &FiberOracle) -> Result<FiniteSet> {
    let mut out = Vec::new();
    for x in a.iter() {
        for y in g.fiber(&lookup(f, x)?)? {
            out.push(Element::pair(x.clone(), y));
        }
    }
    Ok(FiniteSet::new(out))
}

/// A T-graph with optional composition (CD1) and unit (CD2).
#[derive(Clone, Debug)]
pub struct TCatData {
    pub name: String,
    pub graph: TGraph,
    /// `d1: X2 → X1`, the composite of `(x, t)` with `x` outer.
    pub comp: Option<Table>,
    /// `s0: X0 → X1`.
    pub unit: Option<Table>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    CA1,
    CA2,
    CA3,
    CA4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub applicable: bool,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl AxiomReport {
    fn not_applicable(axiom: Axiom) -> Self {
        AxiomReport { axiom, applicable: false, passed: false, checked: 0, witness: None }
    }
}

/// Ladder flags; each implies the flags below it in the structures overview.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub t_graph: bool,
    pub reflexive_t_graph: bool,
    pub t_magmoid: bool,
    pub reflexive_t_magmoid: bool,
    pub unital_t_magmoid: bool,
    pub t_semicategory: bool,
    pub reflexive_t_semicategory: bool,
    pub t_category: bool,
}

impl TCatData {
    pub fn monad(&self) -> &MonadSpec {
        &self.graph.monad
    }

    pub fn x2(&self) -> Result<FiniteSet> {
        self.graph.x2()
    }

    /// `X3` as the pullback of `d2: X2 → TX1` against `T d0: TX2 → TX1`.
    pub fn x3(&self) -> Result<FiniteSet> {
        let x2 = self.x2()?;
        let d0 = tabulate(&x2, |e| e.proj(0).cloned())?;
        let d2 = tabulate(&x2, |e| e.proj(1).cloned())?;
        pullback_along(&x2, &d2, &self.monad().lift_fiber(&invert(&d0)))
    }

    pub fn comp_of(&self, e: &Element) -> Result<Element> {
        lookup(self.comp.as_ref().ok_or_else(|| Error::Invalid("no composition".into()))?, e)
    }

    pub fn unit_of(&self, e: &Element) -> Result<Element> {
        lookup(self.unit.as_ref().ok_or_else(|| Error::Invalid("no unit".into()))?, e)
    }

    pub fn check_axiom(&self, axiom: Axiom) -> Result<AxiomReport> {
        let g = &self.graph;
        let t = g.monad.clone();
        let mut report = AxiomReport { axiom, applicable: true, passed: true, checked: 0, witness: None };
        let fail = |report: &mut AxiomReport, w: String| {
            if report.passed {
                report.passed = false;
                report.witness = Some(w);
            }
        };
        match axiom {
            Axiom::CA1 => {
                if self.comp.is_none() {
                    return Ok(AxiomReport::not_applicable(axiom));
                }
                for e in self.x2()?.iter() {
                    report.checked += 1;
                    let (x, tt) = (e.proj(0)?, e.proj(1)?);
                    let c = self.comp_of(e)?;
                    if !g.x1.contains(&c) {
                        fail(&mut report, format!("composite of {e} is not an arrow"));
                        continue;
                    }
                    if lookup(&g.d0, &c)? != lookup(&g.d0, x)? {
                        fail(&mut report, format!("codomain of composite of {e}"));
                    }
                    let expect = t.mult(&t.fmap(tt, &mut |a| lookup(&g.d1, a))?)?;
                    if lookup(&g.d1, &c)? != expect {
                        fail(&mut report, format!("domain of composite of {e}"));
                    }
                }
            }
            Axiom::CA2 => {
                if self.unit.is_none() {
                    return Ok(AxiomReport::not_applicable(axiom));
                }
                for o in g.x0.iter() {
                    report.checked += 1;
                    let u = self.unit_of(o)?;
                    if !g.x1.contains(&u) || lookup(&g.d0, &u)? != *o || lookup(&g.d1, &u)? != t.unit(o) {
                        fail(&mut report, format!("unit at {o}"));
                    }
                }
            }
            Axiom::CA3 => {
                if self.comp.is_none() || !self.check_axiom(Axiom::CA1)?.passed {
                    return Ok(AxiomReport::not_applicable(axiom));
                }
                let x2 = self.x2()?;
                for w in self.x3()?.iter() {
                    report.checked += 1;
                    let (y, tau) = (w.proj(0)?, w.proj(1)?);
                    // d1 w = (d0 y, T d1 tau); d2 w = (d1 y, m T d2 tau)
                    let d1w = Element::pair(y.proj(0)?.clone(), t.fmap(tau, &mut |e| self.comp_of(e))?);
                    let d2w = Element::pair(self.comp_of(y)?, t.mult(&t.fmap(tau, &mut |e| e.proj(1).cloned())?)?);
                    if !x2.contains(&d1w) || !x2.contains(&d2w) {
                        fail(&mut report, format!("faces of {w} leave X2"));
                        continue;
                    }
                    if self.comp_of(&d1w)? != self.comp_of(&d2w)? {
                        fail(&mut report, format!("{w}"));
                    }
                }
            }
            Axiom::CA4 => {
                if self.comp.is_none()
                    || self.unit.is_none()
                    || !self.check_axiom(Axiom::CA1)?.passed
                    || !self.check_axiom(Axiom::CA2)?.passed
                {
                    return Ok(AxiomReport::not_applicable(axiom));
                }
                for x in g.x1.iter() {
                    report.checked += 1;
                    let s0 = Element::pair(x.clone(), t.fmap(&lookup(&g.d1, x)?, &mut |o| self.unit_of(o))?);
                    let s1 = Element::pair(self.unit_of(&lookup(&g.d0, x)?)?, t.unit(x));
                    if self.comp_of(&s0)? != *x {
                        fail(&mut report, format!("right unit at {x}"));
                    }
                    if self.comp_of(&s1)? != *x {
                        fail(&mut report, format!("left unit at {x}"));
                    }
                }
            }
        }
        Ok(report)
    }

    pub fn check_all(&self) -> Result<Vec<AxiomReport>> {
        [Axiom::CA1, Axiom::CA2, Axiom::CA3, Axiom::CA4].into_iter().map(|a| self.check_axiom(a)).collect()
    }

    pub fn is_tcategory(&self) -> Result<bool> {
        Ok(self.check_all()?.iter().all(|r| r.applicable && r.passed))
    }

    pub fn classify(&self) -> Result<StructureClass> {
        let ok = |a| -> Result<bool> {
            let r = self.check_axiom(a)?;
            Ok(r.applicable && r.passed)
        };
        let reflexive = ok(Axiom::CA2)?;
        let magmoid = ok(Axiom::CA1)?;
        let assoc = magmoid && ok(Axiom::CA3)?;
        let unital = magmoid && reflexive && ok(Axiom::CA4)?;
        Ok(StructureClass {
            t_graph: true,
            reflexive_t_graph: reflexive,
            t_magmoid: magmoid,
            reflexive_t_magmoid: magmoid && reflexive,
            unital_t_magmoid: unital,
            t_semicategory: assoc,
            reflexive_t_semicategory: assoc && reflexive,
            t_category: assoc && unital,
        })
    }

    /// `d0` invertible: the discrete case.
    pub fn d0_invertible(&self) -> Result<bool> {
        is_bijection(&self.graph.d0, &self.graph.x0)
    }

    /// `d1` invertible onto `TX0`: the algebra case.
    pub fn d1_invertible(&self) -> Result<bool> {
        let tx0 = self.monad().enumerate(&self.graph.x0)?;
        is_bijection(&self.graph.d1, &tx0)
    }

    /// Canonical form: same monad, sets and tables.
    pub fn canonical_eq(&self, other: &TCatData) -> bool {
        self.graph.monad == other.graph.monad
            && self.graph.x0 == other.graph.x0
            && self.graph.x1 == other.graph.x1
            && self.graph.d0 == other.graph.d0
            && self.graph.d1 == other.graph.d1
            && self.comp == other.comp
            && self.unit == other.unit
    }
}

fn is_bijection(t: &Table, cod: &FiniteSet) -> Result<bool> {
    let image = FiniteSet::new(t.values().cloned());
    Ok(image.len() == t.len() && image == *cod)
}

/// The discrete T-category: graph `(E, E, 1, i)`.
pub fn discrete_tcat(e: &FiniteSet, monad: &MonadSpec) -> Result<TCatData> {
    let id = tabulate(e, |x| Ok(x.clone()))?;
    let d1 = tabulate(e, |x| Ok(monad.unit(x)))?;
    let graph = TGraph::new(monad.clone(), e.clone(), e.clone(), id.clone(), d1)?;
    let comp = tabulate(&graph.x2()?, |p| p.proj(0).cloned())?;
    Ok(TCatData { name: "discrete".into(), graph, comp: Some(comp), unit: Some(id) })
}

/// The chaotic T-category: arrows `(t, e)` with domain `t ∈ TE` and codomain `e`.
pub fn chaotic_tcat(e: &FiniteSet, monad: &MonadSpec) -> Result<TCatData> {
    capability(monad)?;
    let te = monad.enumerate(e)?;
    let x1 = FiniteSet::new(te.iter().flat_map(|t| e.iter().map(move |o| Element::pair(t.clone(), o.clone()))));
    let d0 = tabulate(&x1, |a| a.proj(1).cloned())?;
    let d1 = tabulate(&x1, |a| a.proj(0).cloned())?;
    let graph = TGraph::new(monad.clone(), e.clone(), x1, d0, d1)?;
    let comp = tabulate(&graph.x2()?, |p| {
        let (x, tau) = (p.proj(0)?, p.proj(1)?);
        let dom = monad.mult(&monad.fmap(tau, &mut |a| a.proj(0).cloned())?)?;
        Ok(Element::pair(dom, x.proj(1)?.clone()))
    })?;
    let unit = tabulate(e, |o| Ok(Element::pair(monad.unit(o), o.clone())))?;
    Ok(TCatData { name: "chaotic".into(), graph, comp: Some(comp), unit: Some(unit) })
}

/// Checks `a ∘ i = 1` and `a ∘ m = a ∘ Ta`.
pub fn check_algebra(a_set: &FiniteSet, action: &Table, monad: &MonadSpec) -> Result<()> {
    for x in a_set.iter() {
        if lookup(action, &monad.unit(x))? != *x {
            return Err(Error::Invalid(format!("unit law of the algebra fails at {x}")));
        }
    }
    let ta = monad.enumerate(a_set)?;
    for tt in monad.enumerate(&ta)?.iter() {
        let l = lookup(action, &monad.mult(tt)?)?;
        let r = lookup(action, &monad.fmap(tt, &mut |t| lookup(action, t))?)?;
        if l != r {
            return Err(Error::Invalid(format!("multiplication law of the algebra fails at {tt}")));
        }
    }
    Ok(())
}

fn capability(monad: &MonadSpec) -> Result<()> {
    if monad.preserves_finite() {
        Ok(())
    } else {
        Err(Error::Capability(monad.name()))
    }
}

/// The T-category of an algebra: graph `(A, TA, a, 1)`.
pub fn algebra_tcat(a_set: &FiniteSet, action: &Table, monad: &MonadSpec) -> Result<TCatData> {
    capability(monad)?;
    check_algebra(a_set, action, monad)?;
    let ta = monad.enumerate(a_set)?;
    let d1 = tabulate(&ta, |t| Ok(t.clone()))?;
    let graph = TGraph::new(monad.clone(), a_set.clone(), ta, action.clone(), d1)?;
    let comp = tabulate(&graph.x2()?, |p| monad.mult(p.proj(1)?))?;
    let unit = tabulate(a_set, |x| Ok(monad.unit(x)))?;
    Ok(TCatData { name: "algebra".into(), graph, comp: Some(comp), unit: Some(unit) })
}

/// The trivial action on a one-point set.
pub fn point_algebra(monad: &MonadSpec) -> Result<(FiniteSet, Table)> {
    let star = FiniteSet::atoms(&["*"]);
    let ta = monad.enumerate(&star)?;
    let action = tabulate(&ta, |_| Ok(Element::atom("*")))?;
    Ok((star, action))
}

fn iterate_fmap(monad: &MonadSpec, k: usize, t: &Element, f: &mut dyn FnMut(&Element) -> Result<Element>) -> Result<Element> {
    if k == 0 {
        f(t)
    } else {
        monad.fmap(t, &mut |x| iterate_fmap(monad, k - 1, x, f))
    }
}

/// The bar resolution: `X_n = T^n A`, `d_0 = T^{n-1}a`, `d_i = T^{n-1-i} m T^{i-1}`,
/// `d_n = 1`, `s_i = T^{n-i} i T^i`.
pub fn bar_resolution(a_set: &FiniteSet, action: &Table, monad: &MonadSpec, depth: usize) -> Result<TSimp> {
    capability(monad)?;
    check_algebra(a_set, action, monad)?;
    let mut levels = vec![a_set.clone()];
    for n in 1..=depth {
        levels.push(monad.enumerate(&levels[n - 1])?);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=depth {
        let mut fs = Vec::new();
        fs.push(Some(tabulate(&levels[n], |x| iterate_fmap(monad, n - 1, x, &mut |y| lookup(action, y)))?));
        for i in 1..n {
            fs.push(Some(tabulate(&levels[n], |x| iterate_fmap(monad, n - 1 - i, x, &mut |y| monad.mult(y)))?));
        }
        fs.push(Some(tabulate(&levels[n], |x| Ok(x.clone()))?));
        faces.push(fs);
    }
    let mut degens = Vec::new();
    for n in 0..depth {
        let ds = (0..=n)
            .map(|i| tabulate(&levels[n], |x| iterate_fmap(monad, n - i, x, &mut |y| Ok(monad.unit(y)))).map(Some))
            .collect::<Result<Vec<_>>>()?;
        degens.push(ds);
    }
    TSimp::new("bar".into(), monad.clone(), levels, faces, degens)
}

/// Result of checking a pair `(f0, f1)` as a T-functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub passed: bool,
    pub witness: Option<String>,
}

/// Checks the graph-morphism squares, derives `f2 = (f1, T f1)` into `Y2`, and checks
/// preservation of units and composites.
pub fn check_tfunctor(f0: &Table, f1: &Table, x: &TCatData, y: &TCatData) -> Result<FunctorReport> {
    let t = x.monad();
    let fail = |w: String| Ok(FunctorReport { passed: false, witness: Some(w) });
    for a in x.graph.x1.iter() {
        let fa = lookup(f1, a)?;
        if !y.graph.x1.contains(&fa) {
            return fail(format!("f1({a}) is not an arrow"));
        }
        if lookup(&y.graph.d0, &fa)? != lookup(f0, &lookup(&x.graph.d0, a)?)? {
            return fail(format!("codomain square at {a}"));
        }
        if lookup(&y.graph.d1, &fa)? != t.fmap(&lookup(&x.graph.d1, a)?, &mut |o| lookup(f0, o))? {
            return fail(format!("domain square at {a}"));
        }
    }
    if let (Some(_), Some(_)) = (&x.unit, &y.unit) {
        for o in x.graph.x0.iter() {
            if lookup(f1, &x.unit_of(o)?)? != y.unit_of(&lookup(f0, o)?)? {
                return fail(format!("unit at {o}"));
            }
        }
    }
    if let (Some(_), Some(_)) = (&x.comp, &y.comp) {
        let y2 = y.x2()?;
        for e in x.x2()?.iter() {
            let f2 = Element::pair(lookup(f1, e.proj(0)?)?, t.fmap(e.proj(1)?, &mut |a| lookup(f1, a))?);
            if !y2.contains(&f2) {
                return fail(format!("f2({e}) leaves Y2"));
            }
            if lookup(f1, &x.comp_of(e)?)? != y.comp_of(&f2)? {
                return fail(format!("composite at {e}"));
            }
        }
    }
    Ok(FunctorReport { passed: true, witness: None })
}

/// A finite category with named objects and arrows.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub objects: FiniteSet,
    pub arrows: FiniteSet,
    pub dom: Table,
    pub cod: Table,
    /// `(g, f) ↦ g ∘ f` for composable pairs.
    pub comp: BTreeMap<(Element, Element), Element>,
    pub id: Table,
}

impl FiniteCategory {
    /// The poset `[n]`, arrows `(i, j)` for `i ≤ j`.
    pub fn ordinal(n: usize) -> Self {
        let obj = |i: usize| Element::atom(&i.to_string());
        let arrow = |i: usize, j: usize| Element::pair(obj(i), obj(j));
        let objects = FiniteSet::new((0..=n).map(obj));
        let arrows = FiniteSet::new((0..=n).flat_map(|i| (i..=n).map(move |j| arrow(i, j))));
        let dom = Arc::new(arrows.iter().map(|a| (a.clone(), a.proj(0).expect("pair").clone())).collect());
        let cod = Arc::new(arrows.iter().map(|a| (a.clone(), a.proj(1).expect("pair").clone())).collect());
        let mut comp = BTreeMap::new();
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    comp.insert((arrow(j, k), arrow(i, j)), arrow(i, k));
                }
            }
        }
        let id = Arc::new((0..=n).map(|i| (obj(i), arrow(i, i))).collect());
        FiniteCategory { objects, arrows, dom, cod, comp, id }
    }

    /// The poset on `elements` ordered by `leq`, arrows `(a, b)` for `a ≤ b`.
    pub fn poset(elements: Vec<Element>, leq: impl Fn(&Element, &Element) -> bool) -> Self {
        let objects = FiniteSet::new(elements);
        let mut arrows = Vec::new();
        for a in objects.iter() {
            for b in objects.iter() {
                if leq(a, b) {
                    arrows.push(Element::pair(a.clone(), b.clone()));
                }
            }
        }
        let arrows = FiniteSet::new(arrows);
        let dom = Arc::new(arrows.iter().map(|f| (f.clone(), f.proj(0).expect("pair").clone())).collect());
        let cod = Arc::new(arrows.iter().map(|f| (f.clone(), f.proj(1).expect("pair").clone())).collect());
        let mut comp = BTreeMap::new();
        for f in arrows.iter() {
            for g in arrows.iter() {
                if g.proj(0).ok() == f.proj(1).ok() {
                    let h = Element::pair(f.proj(0).expect("pair").clone(), g.proj(1).expect("pair").clone());
                    comp.insert((g.clone(), f.clone()), h);
                }
            }
        }
        let id = Arc::new(objects.iter().map(|o| (o.clone(), Element::pair(o.clone(), o.clone()))).collect());
        FiniteCategory { objects, arrows, dom, cod, comp, id }
    }

    pub fn compose(&self, g: &Element, f: &Element) -> Result<Element> {
        self.comp
            .get(&(g.clone(), f.clone()))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("{g} and {f} are not composable")))
    }

    pub fn hom(&self, a: &Element, b: &Element) -> Vec<Element> {
        self.arrows
            .iter()
            .filter(|f| self.dom.get(*f) == Some(a) && self.cod.get(*f) == Some(b))
            .cloned()
            .collect()
    }

    /// The T-category for the identity monad: `d0` the codomain, `d1` the domain.
    pub fn to_tcat(&self, name: &str) -> Result<TCatData> {
        let graph = TGraph::new(MonadSpec::identity(), self.objects.clone(), self.arrows.clone(), self.cod.clone(), self.dom.clone())?;
        let comp = tabulate(&graph.x2()?, |p| self.compose(p.proj(0)?, p.proj(1)?))?;
        Ok(TCatData { name: name.into(), graph, comp: Some(comp), unit: Some(self.id.clone()) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::Monoid;

    fn z2() -> MonadSpec {
        MonadSpec::writer(Monoid::z2())
    }

    #[test]
    fn x2_examples() {
        let e = FiniteSet::atoms(&["a", "b"]);
        let disc = discrete_tcat(&e, &MonadSpec::identity()).unwrap();
        assert_eq!(disc.x2().unwrap().len(), 2);
        let (star, act) = point_algebra(&z2()).unwrap();
        let alg = algebra_tcat(&star, &act, &z2()).unwrap();
        assert_eq!(alg.x2().unwrap().len(), 4);
        assert_eq!(alg.graph.x1, FiniteSet::new([Element::pair(Element::atom("1"), Element::atom("*")), Element::pair(Element::atom("g"), Element::atom("*"))]));
        assert!(alg.d1_invertible().unwrap());
        assert!(disc.d0_invertible().unwrap());
    }

    #[test]
    fn list_multicategory_with_identity_only() {
        let list = MonadSpec::list();
        let a = Element::atom("a");
        let x0 = FiniteSet::new([a.clone()]);
        let id = Element::atom("id");
        let x1 = FiniteSet::new([id.clone()]);
        let d0 = Arc::new([(id.clone(), a.clone())].into_iter().collect());
        let d1 = Arc::new([(id.clone(), Element::List(vec![a.clone()]))].into_iter().collect());
        let graph = TGraph::new(list, x0, x1, d0, d1).unwrap();
        assert_eq!(graph.x2().unwrap().len(), 1);
    }

    #[test]
    fn chaotic_counts() {
        let e = FiniteSet::atoms(&["a", "b"]);
        let c = chaotic_tcat(&e, &MonadSpec::maybe()).unwrap();
        assert_eq!(c.graph.x1.len(), 6);
        assert!(c.is_tcategory().unwrap());
        assert!(matches!(chaotic_tcat(&e, &MonadSpec::list()), Err(Error::Capability(_))));
    }

    #[test]
    fn examples_pass_all_axioms() {
        let e = FiniteSet::atoms(&["a", "b"]);
        for m in [MonadSpec::identity(), MonadSpec::maybe(), z2(), MonadSpec::reader(FiniteSet::atoms(&["0", "1"]))] {
            assert!(discrete_tcat(&e, &m).unwrap().is_tcategory().unwrap(), "{}", m.name());
            assert!(chaotic_tcat(&e, &m).unwrap().is_tcategory().unwrap(), "{}", m.name());
            let (star, act) = point_algebra(&m).unwrap();
            assert!(algebra_tcat(&star, &act, &m).unwrap().is_tcategory().unwrap(), "{}", m.name());
        }
        for n in 0..3 {
            assert!(FiniteCategory::ordinal(n).to_tcat("ord").unwrap().is_tcategory().unwrap());
        }
    }

    #[test]
    fn corrupted_composition_is_caught() {
        let (star, act) = point_algebra(&z2()).unwrap();
        let mut alg = algebra_tcat(&star, &act, &z2()).unwrap();
        let mut comp = (*alg.comp.clone().unwrap()).clone();
        let keys: Vec<_> = comp.keys().cloned().collect();
        let (k0, k1) = (keys[0].clone(), keys[1].clone());
        let (v0, v1) = (comp[&k0].clone(), comp[&k1].clone());
        assert_ne!(v0, v1);
        comp.insert(k0, v1);
        comp.insert(k1, v0);
        alg.comp = Some(Arc::new(comp));
        let reports = alg.check_all().unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| r.applicable && !r.passed).collect();
        assert!(bad.iter().any(|r| matches!(r.axiom, Axiom::CA1 | Axiom::CA3)), "{reports:?}");
        assert!(bad.iter().all(|r| r.witness.is_some()));
    }

    #[test]
    fn algebra_tcat_iff_algebra() {
        let m = z2();
        let a = FiniteSet::atoms(&["p", "q"]);
        let ta = m.enumerate(&a).unwrap();
        // every function TA → A, each either an algebra or rejected
        let mut algebras = 0;
        for bits in 0..(1u32 << ta.len()) {
            let act: Table = Arc::new(
                ta.iter()
                    .enumerate()
                    .map(|(k, t)| (t.clone(), Element::atom(if bits >> k & 1 == 1 { "q" } else { "p" })))
                    .collect(),
            );
            let laws = check_algebra(&a, &act, &m).is_ok();
            assert_eq!(algebra_tcat(&a, &act, &m).is_ok(), laws);
            if laws {
                algebras += 1;
                assert!(algebra_tcat(&a, &act, &m).unwrap().is_tcategory().unwrap());
            }
        }
        // z2-sets on two points: trivial action (id) and the swap
        assert_eq!(algebras, 2);
    }

    #[test]
    fn classify_examples() {
        let e = FiniteSet::atoms(&["a"]);
        let mut d = discrete_tcat(&e, &MonadSpec::identity()).unwrap();
        let full = d.classify().unwrap();
        assert!(full.t_category && full.reflexive_t_semicategory && full.unital_t_magmoid);
        d.comp = None;
        d.unit = None;
        assert_eq!(d.classify().unwrap(), StructureClass { t_graph: true, ..Default::default() });
    }

    #[test]
    fn functor_checks() {
        let one = FiniteCategory::ordinal(1).to_tcat("one").unwrap();
        let id0 = tabulate(&one.graph.x0, |x| Ok(x.clone())).unwrap();
        let id1 = tabulate(&one.graph.x1, |x| Ok(x.clone())).unwrap();
        assert!(check_tfunctor(&id0, &id1, &one, &one).unwrap().passed);

        let pt = discrete_tcat(&FiniteSet::atoms(&["a"]), &MonadSpec::identity()).unwrap();
        for o in one.graph.x0.iter() {
            let f0 = Arc::new([(Element::atom("a"), o.clone())].into_iter().collect());
            let f1 = Arc::new([(Element::atom("a"), lookup(one.unit.as_ref().unwrap(), o).unwrap())].into_iter().collect());
            assert!(check_tfunctor(&f0, &f1, &pt, &one).unwrap().passed);
        }
        let bad1: Table = Arc::new(one.graph.x1.iter().map(|a| (a.clone(), one.graph.x1.elements()[0].clone())).collect());
        let r = check_tfunctor(&id0, &bad1, &one, &one).unwrap();
        assert!(!r.passed && r.witness.is_some());
    }

    #[test]
    fn bar_resolution_counts_and_faces() {
        let m = z2();
        let (star, act) = point_algebra(&m).unwrap();
        let bar = bar_resolution(&star, &act, &m, 4).unwrap();
        let sizes: Vec<_> = bar.levels.iter().map(FiniteSet::len).collect();
        assert_eq!(sizes, vec![1, 2, 4, 8, 16]);
        let g = Element::atom("g");
        let s = Element::atom("*");
        let x = Element::pair(g.clone(), Element::pair(g, s.clone()));
        assert_eq!(bar.face(2, 1, &x).unwrap(), Element::pair(Element::atom("1"), s));
    }
}
