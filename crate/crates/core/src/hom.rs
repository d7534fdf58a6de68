//! Hom simplicial sets between T-simplicial objects, composition of 1-simplices into a
//! T-category, and T-natural transformations.
//!
//! An `n`-simplex `x: Y → X` is a family `x_φ: Y_m → X_m` for `φ: [m] → [n]`, natural for
//! top-preserving maps and compatible with the last faces. Such a family is the same as a
//! morphism `Δ[n]·Y → X`, which is how hom simplices are enumerated. Only the components with
//! `m ≤ 2` are stored; higher ones are obtained by pairing into `X_m`, which is unique when
//! `X` satisfies Segal.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monad::MonadSpec;
use crate::nerve::{segal_verdict, TSimp, TSimpMorphism};
use crate::powers::{copower, simplex_element, standard_simplex};
use crate::search::{enumerate_morphisms, Mode};
use crate::sets::{lookup, tabulate, Element, FiniteSet, PullbackVerdict, Table};
use crate::simplex::{compose, enumerate_hom, SimplexMap, Which};
use crate::tcat::{check_tfunctor, FiniteCategory, TCatData};

/// Components stored for `m ≤ STORED`.
pub const STORED: usize = 2;

/// Source, target and the pairing index of the target used for extension.
pub struct HomContext<'a> {
    pub y: &'a TSimp,
    pub x: &'a TSimp,
    /// `pairing[m]`: `(d_0 z, d_m z) ↦ z` on `X_m`, or the first clash found.
    pairing: Vec<HashMap<(Element, Element), Element>>,
    clashes: Vec<Option<String>>,
}

impl<'a> HomContext<'a> {
    pub fn new(y: &'a TSimp, x: &'a TSimp) -> Result<Self> {
        let mut pairing = vec![HashMap::new(), HashMap::new()];
        let mut clashes = vec![None, None];
        for m in 2..=x.depth() {
            let mut idx = HashMap::new();
            let mut clash = None;
            for z in x.levels[m].iter() {
                let key = (x.face(m, 0, z)?, x.face(m, m, z)?);
                if let Some(prev) = idx.insert(key, z.clone()) {
                    clash.get_or_insert_with(|| format!("{prev} and {z} share their outer faces in level {m}"));
                }
            }
            pairing.push(idx);
            clashes.push(clash);
        }
        Ok(HomContext { y, x, pairing, clashes })
    }

    /// The unique `z ∈ X_m` with `d_0 z = a` and `d_m z = t`.
    fn pair(&self, m: usize, a: Element, t: Element) -> Result<Element> {
        if let Some(Some(c)) = self.clashes.get(m) {
            return Err(Error::NoPairing(format!("target is not Segal: {c}")));
        }
        let idx = self.pairing.get(m).ok_or_else(|| Error::Depth(format!("target needs level {m}")))?;
        idx.get(&(a.clone(), t.clone()))
            .cloned()
            .ok_or_else(|| Error::NoPairing(format!("no element of X_{m} with faces ({a}, {t})")))
    }
}

/// An `n`-simplex of the hom simplicial set, by its components with `m ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomSimplex {
    pub degree: usize,
    pub components: BTreeMap<SimplexMap, Table>,
}

impl HomSimplex {
    /// From a morphism `Δ[n]·Y → X` truncated at level 2.
    pub fn from_copower_morphism(degree: usize, f: &TSimpMorphism, y: &TSimp) -> Result<Self> {
        let mut components = BTreeMap::new();
        for (m, comp) in f.components.iter().enumerate().take(STORED + 1) {
            for phi in enumerate_hom(m, degree, Which::Delta) {
                let key = simplex_element(&phi);
                let t = tabulate(&y.levels[m], |e| lookup(comp, &Element::pair(key.clone(), e.clone())))?;
                components.insert(phi, t);
            }
        }
        Ok(HomSimplex { degree, components })
    }

    /// The 0-simplex of a morphism `Y → X`.
    pub fn vertex(f: &TSimpMorphism) -> Self {
        let components = f
            .components
            .iter()
            .enumerate()
            .take(STORED + 1)
            .map(|(m, t)| (SimplexMap::constant(m, 0, 0).expect("constant"), t.clone()))
            .collect();
        HomSimplex { degree: 0, components }
    }

    /// `x_φ(e)`, extending by pairing above the stored levels.
    pub fn component(&self, ctx: &HomContext, phi: &SimplexMap, e: &Element) -> Result<Element> {
        let m = phi.dom();
        if let Some(t) = self.components.get(phi) {
            return lookup(t, e);
        }
        if m <= STORED {
            return Err(Error::TableMiss(format!("component {phi}")));
        }
        let d0 = self.component(ctx, &compose(phi, &SimplexMap::face(m - 1, 0)?)?, &ctx.y.face(m, 0, e)?)?;
        let last_phi = compose(phi, &SimplexMap::face(m - 1, m)?)?;
        let dm = ctx.y.monad.fmap(&ctx.y.face(m, m, e)?, &mut |v| self.component(ctx, &last_phi, v))?;
        ctx.pair(m, d0, dm)
    }

    /// Reindexing along `θ: [k] → [n]`: `(θ^* x)_ψ = x_{θψ}`.
    pub fn reindex(&self, theta: &SimplexMap) -> Result<HomSimplex> {
        if theta.cod() != self.degree {
            return Err(Error::Mismatch(format!("{theta} does not land in [{}]", self.degree)));
        }
        let k = theta.dom();
        let mut components = BTreeMap::new();
        for m in 0..=self.stored_depth() {
            for psi in enumerate_hom(m, k, Which::Delta) {
                let t = self.components[&compose(theta, &psi)?].clone();
                components.insert(psi, t);
            }
        }
        Ok(HomSimplex { degree: k, components })
    }

    pub fn face(&self, i: usize) -> Result<HomSimplex> {
        self.reindex(&SimplexMap::face(self.degree - 1, i)?)
    }

    pub fn degen(&self, i: usize) -> Result<HomSimplex> {
        self.reindex(&SimplexMap::degeneracy(self.degree, i)?)
    }

    fn stored_depth(&self) -> usize {
        self.components.keys().map(SimplexMap::dom).max().unwrap_or(0)
    }

    /// Canonical element encoding, for building the hom simplicial set.
    pub fn to_element(&self) -> Element {
        Element::Tuple(
            self.components
                .iter()
                .map(|(phi, t)| Element::pair(simplex_element(phi), Element::Tuple(t.iter().map(|(a, b)| Element::pair(a.clone(), b.clone())).collect())))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

/// Checks naturality for inner faces and degeneracies and the last-face squares for every
/// `φ: [m] → [n]` with `m ≤ up_to`, extending the components by pairing where needed.
pub fn validate_hom_simplex(x: &HomSimplex, ctx: &HomContext, up_to: usize) -> Result<HomReport> {
    let (y, xt) = (ctx.y, ctx.x);
    let up_to = up_to.min(y.depth()).min(xt.depth());
    let mut checked = 0;
    let fail = |w: String, checked: usize| Ok(HomReport { passed: false, checked, witness: Some(w) });
    // values[m][φ][e] over the positions of φ in enumerate_hom and of e in Y_m.
    let mut positions: Vec<HashMap<SimplexMap, usize>> = Vec::new();
    let mut values: Vec<Vec<Vec<Element>>> = Vec::new();
    for m in 0..=up_to {
        let phis = enumerate_hom(m, x.degree, Which::Delta);
        let rows = phis.iter().map(|phi| y.levels[m].iter().map(|e| x.component(ctx, phi, e)).collect()).collect::<Result<_>>()?;
        positions.push(phis.into_iter().enumerate().map(|(k, phi)| (phi, k)).collect());
        values.push(rows);
    }
    let value = |phi: SimplexMap, e: Element| -> Result<Element> {
        let m = phi.dom();
        let miss = || Error::TableMiss(format!("component {phi} at {e}"));
        let (p, k) = (positions.get(m).and_then(|ps| ps.get(&phi)).ok_or_else(miss)?, y.levels[m].index_of(&e).ok_or_else(miss)?);
        Ok(values[m][*p][k].clone())
    };
    for m in 0..=up_to {
        for phi in enumerate_hom(m, x.degree, Which::Delta) {
            for e in y.levels[m].iter() {
                let v = value(phi.clone(), e.clone())?;
                if !xt.levels[m].contains(&v) {
                    return fail(format!("x_{phi}({e}) = {v} leaves X_{m}"), checked);
                }
                for i in 0..m {
                    checked += 1;
                    let psi = compose(&phi, &SimplexMap::face(m - 1, i)?)?;
                    if xt.face(m, i, &v)? != value(psi, y.face(m, i, e)?)? {
                        return fail(format!("naturality for d_{i} at φ = {phi}, element {e}"), checked);
                    }
                }
                if m >= 1 {
                    checked += 1;
                    let psi = compose(&phi, &SimplexMap::face(m - 1, m)?)?;
                    let right = y.monad.fmap(&y.face(m, m, e)?, &mut |u| value(psi.clone(), u.clone()))?;
                    if xt.face(m, m, &v)? != right {
                        return fail(format!("last-face square at φ = {phi}, element {e}"), checked);
                    }
                }
                if m < up_to {
                    for i in 0..=m {
                        checked += 1;
                        let psi = compose(&phi, &SimplexMap::degeneracy(m, i)?)?;
                        if xt.degen(m, i, &v)? != value(psi, y.degen(m, i, e)?)? {
                            return fail(format!("naturality for s_{i} at φ = {phi}, element {e}"), checked);
                        }
                    }
                }
            }
        }
    }
    Ok(HomReport { passed: true, checked, witness: None })
}

/// All `k`-simplices `Y → X`, as morphisms `Δ[k]·Y → X` of 2-truncations.
pub fn hom_simplices(y: &TSimp, x: &TSimp, k: usize, bound: usize) -> Result<Vec<HomSimplex>> {
    let d = STORED.min(y.depth()).min(x.depth());
    let yd = y.truncate(d);
    let z = copower(&standard_simplex(k, d, Which::Delta)?, &yd)?;
    let ms = enumerate_morphisms(&z, &x.truncate(d), d, Mode::Full, bound)?;
    ms.iter().map(|f| HomSimplex::from_copower_morphism(k, f, &yd)).collect()
}

/// The hom simplicial set through level `top`, as a simplicial set over the identity monad.
pub fn hom_simplicial_set(y: &TSimp, x: &TSimp, top: usize, bound: usize) -> Result<TSimp> {
    let simplices: Vec<Vec<HomSimplex>> = (0..=top).map(|k| hom_simplices(y, x, k, bound)).collect::<Result<_>>()?;
    assemble_hom(&format!("hom({}, {})", y.name, x.name), &simplices)
}

/// The simplicial set whose `k`-simplices are `simplices[k]`, with faces and degeneracies by reindexing.
pub fn assemble_hom(name: &str, simplices: &[Vec<HomSimplex>]) -> Result<TSimp> {
    let top = simplices.len().saturating_sub(1);
    let levels: Vec<FiniteSet> = simplices.iter().map(|l| FiniteSet::new(l.iter().map(HomSimplex::to_element))).collect();
    let mut faces = vec![vec![]];
    for k in 1..=top {
        let mut row = Vec::new();
        for i in 0..=k {
            let t: BTreeMap<Element, Element> =
                simplices[k].iter().map(|s| Ok((s.to_element(), s.face(i)?.to_element()))).collect::<Result<_>>()?;
            row.push(Some(Arc::new(t)));
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for k in 0..top {
        let mut row = Vec::new();
        for i in 0..=k {
            let t: BTreeMap<Element, Element> =
                simplices[k].iter().map(|s| Ok((s.to_element(), s.degen(i)?.to_element()))).collect::<Result<_>>()?;
            row.push(Some(Arc::new(t)));
        }
        degens.push(row);
    }
    TSimp::new(name.to_string(), MonadSpec::identity(), levels, faces, degens)
}

/// Segal at degree `n`: the square whose apex is `hom(Y, X)_{n+2}`. Degree 0 says 2-simplices
/// are exactly composable pairs of 1-simplices.
pub fn hom_segal_check(y: &TSimp, x: &TSimp, n: usize, bound: usize) -> Result<PullbackVerdict> {
    let h = hom_simplicial_set(y, x, n + 2, bound)?;
    segal_verdict(&h, n + 2)
}

/// The unique 2-simplex `z` with `d_0 z = y1` and `d_2 z = x1`, and the composite `d_1 z`.
pub fn compose_one_simplices(ctx: &HomContext, x1: &HomSimplex, y1: &HomSimplex) -> Result<(HomSimplex, HomSimplex)> {
    if x1.degree != 1 || y1.degree != 1 {
        return Err(Error::Invalid("composition takes two 1-simplices".into()));
    }
    if x1.face(0)? != y1.face(1)? {
        return Err(Error::Invalid("the target of the first 1-simplex is not the source of the second".into()));
    }
    if ctx.x.depth() < 3 || ctx.y.depth() < 3 {
        return Err(Error::Depth("composition reads levels up to 3".into()));
    }
    let mut builder = Composer { ctx, x1, y1, memo: HashMap::new() };
    let mut components = BTreeMap::new();
    for m in 0..=STORED {
        for phi in enumerate_hom(m, 2, Which::Delta) {
            let t = tabulate(&ctx.y.levels[m], |e| builder.z(&phi, e))?;
            components.insert(phi, t);
        }
    }
    let z = HomSimplex { degree: 2, components };
    let composite = z.face(1)?;
    Ok((z, composite))
}

struct Composer<'a, 'b> {
    ctx: &'a HomContext<'b>,
    x1: &'a HomSimplex,
    y1: &'a HomSimplex,
    memo: HashMap<(SimplexMap, Element), Element>,
}

impl Composer<'_, '_> {
    fn z(&mut self, phi: &SimplexMap, e: &Element) -> Result<Element> {
        let key = (phi.clone(), e.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(phi, e)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn compute(&mut self, phi: &SimplexMap, e: &Element) -> Result<Element> {
        let m = phi.dom();
        let (ctx, y) = (self.ctx, self.ctx.y);
        let vals = phi.values();
        if vals[0] > 0 {
            // image in {1, 2}: reindex d_0 z = y1 along σ_0
            let psi = compose(&SimplexMap::degeneracy(1, 0)?, phi)?;
            return self.y1.component(ctx, &psi, e);
        }
        if vals[m] < 2 {
            // image in {0, 1}: reindex d_2 z = x1 along σ_1
            let psi = compose(&SimplexMap::degeneracy(1, 1)?, phi)?;
            return self.x1.component(ctx, &psi, e);
        }
        if vals.contains(&1) {
            // surjective: pair the outer faces
            let d0 = self.z(&compose(phi, &SimplexMap::face(m - 1, 0)?)?, &y.face(m, 0, e)?)?;
            let last = compose(phi, &SimplexMap::face(m - 1, m)?)?;
            let dm = y.monad.fmap(&y.face(m, m, e)?, &mut |u| self.z(&last, u))?;
            return ctx.pair(m, d0, dm);
        }
        // image {0, 2}: insert 1 at the first position i with φ(i) = 2, then z_φ = d_i z_{φ¹} s_i
        let i = vals.iter().position(|&v| v == 2).expect("2 is in the image");
        let mut lifted = vals.to_vec();
        lifted.insert(i, 1);
        let phi1 = SimplexMap::new(2, lifted)?;
        if m + 1 > ctx.y.depth() || m + 1 > ctx.x.depth() {
            return Err(Error::Depth(format!("level {} is needed", m + 1)));
        }
        let up = self.z(&phi1, &y.degen(m, i, e)?)?;
        ctx.x.face(m + 1, i, &up)
    }
}

/// All 2-simplices with the prescribed outer faces, by exhaustive search.
pub fn compose_by_search(y: &TSimp, x: &TSimp, x1: &HomSimplex, y1: &HomSimplex, bound: usize) -> Result<Vec<HomSimplex>> {
    let mut out = Vec::new();
    for z in hom_simplices(y, x, 2, bound)? {
        if z.face(0)? == *y1 && z.face(2)? == *x1 {
            out.push(z);
        }
    }
    Ok(out)
}

/// A T-functor as its object and arrow components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TFunctor {
    pub f0: Table,
    pub f1: Table,
}

impl TFunctor {
    pub fn identity(a: &TCatData) -> Self {
        TFunctor {
            f0: Arc::new(a.graph.x0.iter().map(|o| (o.clone(), o.clone())).collect()),
            f1: Arc::new(a.graph.x1.iter().map(|o| (o.clone(), o.clone())).collect()),
        }
    }

    /// `h ∘ self`.
    pub fn then(&self, h: &TFunctor) -> Result<TFunctor> {
        let f0 = Arc::new(self.f0.iter().map(|(k, v)| Ok((k.clone(), lookup(&h.f0, v)?))).collect::<Result<_>>()?);
        let f1 = Arc::new(self.f1.iter().map(|(k, v)| Ok((k.clone(), lookup(&h.f1, v)?))).collect::<Result<_>>()?);
        Ok(TFunctor { f0, f1 })
    }

    /// `f_2(x, t) = (f_1 x, T f_1 t)` on the nerve's second level.
    fn f2(&self, t: &MonadSpec, a2: &Element) -> Result<Element> {
        Ok(Element::pair(lookup(&self.f1, a2.proj(0)?)?, t.fmap(a2.proj(1)?, &mut |u| lookup(&self.f1, u))?))
    }
}

/// All T-functors `A → B`, by brute force over object maps and compatible arrow choices.
pub fn enumerate_tfunctors(a: &TCatData, b: &TCatData) -> Result<Vec<TFunctor>> {
    let t = a.monad();
    let objs = a.graph.x0.elements().to_vec();
    let arrows = a.graph.x1.elements().to_vec();
    let mut out = Vec::new();
    for c0 in product(objs.iter().map(|_| b.graph.x0.elements().to_vec()).collect()) {
        let f0: Table = Arc::new(objs.iter().cloned().zip(c0).collect());
        let mut choices = Vec::new();
        for arr in &arrows {
            let cod = lookup(&f0, &lookup(&a.graph.d0, arr)?)?;
            let dom = t.fmap(&lookup(&a.graph.d1, arr)?, &mut |o| lookup(&f0, o))?;
            let cands: Vec<Element> = b
                .graph
                .x1
                .iter()
                .filter(|g| b.graph.d0.get(*g) == Some(&cod) && b.graph.d1.get(*g) == Some(&dom))
                .cloned()
                .collect();
            choices.push(cands);
        }
        for c1 in product(choices) {
            let f1: Table = Arc::new(arrows.iter().cloned().zip(c1).collect());
            if check_tfunctor(&f0, &f1, a, b)?.passed {
                out.push(TFunctor { f0: f0.clone(), f1 });
            }
        }
    }
    Ok(out)
}

/// Cartesian product of candidate lists, with one empty tuple for no factors.
fn product(factors: Vec<Vec<Element>>) -> Vec<Vec<Element>> {
    if factors.is_empty() {
        return vec![Vec::new()];
    }
    factors.into_iter().multi_cartesian_product().collect()
}

/// A T-natural transformation `α: f ⇒ g` given by `α: A_0 → B_1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TNatTransformation {
    pub f: TFunctor,
    pub g: TFunctor,
    pub alpha: Table,
}

/// The same 2-cell given by `α̂: A_1 → B_1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HatTwoCell {
    pub f: TFunctor,
    pub g: TFunctor,
    pub hat_alpha: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCellReport {
    pub passed: bool,
    pub witness: Option<String>,
}

impl TwoCellReport {
    fn ok() -> Self {
        TwoCellReport { passed: true, witness: None }
    }

    fn fail(w: String) -> Self {
        TwoCellReport { passed: false, witness: Some(w) }
    }
}

fn in_b2(b: &TCatData, b2: &FiniteSet, v: Element, what: &str) -> Result<std::result::Result<Element, String>> {
    let _ = b;
    Ok(if b2.contains(&v) { Ok(v) } else { Err(format!("{what} = {v} is not a composable pair")) })
}

impl TNatTransformation {
    /// `α'(a) = (α(d_0 a), i f_1 a)` in `B_2`.
    pub fn alpha_prime(&self, a1: &Element, a: &TCatData, b: &TCatData, b2: &FiniteSet) -> Result<std::result::Result<Element, String>> {
        let v = Element::pair(lookup(&self.alpha, &lookup(&a.graph.d0, a1)?)?, b.monad().unit(&lookup(&self.f.f1, a1)?));
        in_b2(b, b2, v, &format!("α'({a1})"))
    }

    /// `α''(a) = (g_1 a, T α (d_1 a))` in `B_2`.
    pub fn alpha_second(&self, a1: &Element, a: &TCatData, b: &TCatData, b2: &FiniteSet) -> Result<std::result::Result<Element, String>> {
        let t = b.monad();
        let v = Element::pair(lookup(&self.g.f1, a1)?, t.fmap(&lookup(&a.graph.d1, a1)?, &mut |o| lookup(&self.alpha, o))?);
        in_b2(b, b2, v, &format!("α''({a1})"))
    }

    pub fn validate(&self, a: &TCatData, b: &TCatData) -> Result<TwoCellReport> {
        let t = b.monad();
        for o in a.graph.x0.iter() {
            let v = lookup(&self.alpha, o)?;
            if !b.graph.x1.contains(&v) {
                return Ok(TwoCellReport::fail(format!("α({o}) is not an arrow")));
            }
            if lookup(&b.graph.d1, &v)? != t.unit(&lookup(&self.f.f0, o)?) {
                return Ok(TwoCellReport::fail(format!("α({o}) does not start at f({o})")));
            }
            if lookup(&b.graph.d0, &v)? != lookup(&self.g.f0, o)? {
                return Ok(TwoCellReport::fail(format!("α({o}) does not end at g({o})")));
            }
        }
        let b2 = b.x2()?;
        for a1 in a.graph.x1.iter() {
            let p = match self.alpha_prime(a1, a, b, &b2)? {
                Ok(p) => p,
                Err(w) => return Ok(TwoCellReport::fail(w)),
            };
            let q = match self.alpha_second(a1, a, b, &b2)? {
                Ok(q) => q,
                Err(w) => return Ok(TwoCellReport::fail(w)),
            };
            if b.comp_of(&p)? != b.comp_of(&q)? {
                return Ok(TwoCellReport::fail(format!("naturality fails at {a1}")));
            }
        }
        Ok(TwoCellReport::ok())
    }
}

impl HatTwoCell {
    /// `α̂'(x, t) = (α̂ x, T f_1 t)` on `A_2`.
    fn hat_prime(&self, a2: &Element, t: &MonadSpec) -> Result<Element> {
        Ok(Element::pair(lookup(&self.hat_alpha, a2.proj(0)?)?, t.fmap(a2.proj(1)?, &mut |u| lookup(&self.f.f1, u))?))
    }

    /// `α̂''(x, t) = (g_1 x, T α̂ t)` on `A_2`.
    fn hat_second(&self, a2: &Element, t: &MonadSpec) -> Result<Element> {
        Ok(Element::pair(lookup(&self.g.f1, a2.proj(0)?)?, t.fmap(a2.proj(1)?, &mut |u| lookup(&self.hat_alpha, u))?))
    }

    pub fn validate(&self, a: &TCatData, b: &TCatData) -> Result<TwoCellReport> {
        let t = b.monad();
        for a1 in a.graph.x1.iter() {
            let v = lookup(&self.hat_alpha, a1)?;
            if !b.graph.x1.contains(&v) {
                return Ok(TwoCellReport::fail(format!("α̂({a1}) is not an arrow")));
            }
            if lookup(&b.graph.d1, &v)? != t.fmap(&lookup(&a.graph.d1, a1)?, &mut |o| lookup(&self.f.f0, o))? {
                return Ok(TwoCellReport::fail(format!("α̂({a1}) has the wrong source")));
            }
            if lookup(&b.graph.d0, &v)? != lookup(&self.g.f0, &lookup(&a.graph.d0, a1)?)? {
                return Ok(TwoCellReport::fail(format!("α̂({a1}) has the wrong target")));
            }
        }
        let b2 = b.x2()?;
        for a2 in a.x2()?.iter() {
            let p = self.hat_prime(a2, t)?;
            let q = self.hat_second(a2, t)?;
            if !b2.contains(&p) || !b2.contains(&q) {
                return Ok(TwoCellReport::fail(format!("α̂' or α̂'' leaves B_2 at {a2}")));
            }
            let expected = lookup(&self.hat_alpha, &a.comp_of(a2)?)?;
            if b.comp_of(&p)? != expected || b.comp_of(&q)? != expected {
                return Ok(TwoCellReport::fail(format!("d_1 α̂' = α̂ d_1 = d_1 α̂'' fails at {a2}")));
            }
        }
        Ok(TwoCellReport::ok())
    }
}

/// `α = α̂ ∘ s_0`.
pub fn hat_to_alpha(c: &HatTwoCell, a: &TCatData, b: &TCatData) -> Result<TNatTransformation> {
    let r = c.validate(a, b)?;
    if !r.passed {
        return Err(Error::Invalid(r.witness.unwrap_or_default()));
    }
    let alpha = tabulate(&a.graph.x0, |o| lookup(&c.hat_alpha, &a.unit_of(o)?))?;
    Ok(TNatTransformation { f: c.f.clone(), g: c.g.clone(), alpha })
}

/// `α̂ = d_1 ∘ α'`, after checking `d_1 α' = d_1 α''`.
pub fn alpha_to_hat(n: &TNatTransformation, a: &TCatData, b: &TCatData) -> Result<HatTwoCell> {
    let r = n.validate(a, b)?;
    if !r.passed {
        return Err(Error::Invalid(r.witness.unwrap_or_default()));
    }
    let b2 = b.x2()?;
    let hat_alpha = tabulate(&a.graph.x1, |a1| {
        let p = n.alpha_prime(a1, a, b, &b2)?.map_err(Error::Invalid)?;
        let q = n.alpha_second(a1, a, b, &b2)?.map_err(Error::Invalid)?;
        let (cp, cq) = (b.comp_of(&p)?, b.comp_of(&q)?);
        if cp != cq {
            return Err(Error::Invalid(format!("d_1 α' ≠ d_1 α'' at {a1}")));
        }
        Ok(cp)
    })?;
    Ok(HatTwoCell { f: n.f.clone(), g: n.g.clone(), hat_alpha })
}

/// All T-natural transformations `f ⇒ g`.
pub fn enumerate_two_cells(f: &TFunctor, g: &TFunctor, a: &TCatData, b: &TCatData) -> Result<Vec<TNatTransformation>> {
    let t = b.monad();
    let objs = a.graph.x0.elements().to_vec();
    let mut choices = Vec::new();
    for o in &objs {
        let src = t.unit(&lookup(&f.f0, o)?);
        let tgt = lookup(&g.f0, o)?;
        let cands: Vec<Element> = b
            .graph
            .x1
            .iter()
            .filter(|v| b.graph.d1.get(*v) == Some(&src) && b.graph.d0.get(*v) == Some(&tgt))
            .cloned()
            .collect();
        choices.push(cands);
    }
    let mut out = Vec::new();
    for c in product(choices) {
        let alpha: Table = Arc::new(objs.iter().cloned().zip(c).collect());
        let cell = TNatTransformation { f: f.clone(), g: g.clone(), alpha };
        if cell.validate(a, b)?.passed {
            out.push(cell);
        }
    }
    Ok(out)
}

/// `(β·α)(a) = d_1(β a, i α a)` for `α: f ⇒ g`, `β: g ⇒ h`.
pub fn vertical(beta: &TNatTransformation, alpha: &TNatTransformation, b: &TCatData) -> Result<TNatTransformation> {
    if alpha.g != beta.f {
        return Err(Error::Mismatch("2-cells are not composable".into()));
    }
    let t = b.monad();
    let comp = tabulate(&FiniteSet::new(alpha.alpha.keys().cloned()), |o| {
        b.comp_of(&Element::pair(lookup(&beta.alpha, o)?, t.unit(&lookup(&alpha.alpha, o)?)))
    })?;
    Ok(TNatTransformation { f: alpha.f.clone(), g: beta.g.clone(), alpha: comp })
}

/// The identity 2-cell `α(a) = i(f a)`.
pub fn identity_two_cell(f: &TFunctor, a: &TCatData, b: &TCatData) -> Result<TNatTransformation> {
    let alpha = tabulate(&a.graph.x0, |o| b.unit_of(&lookup(&f.f0, o)?))?;
    Ok(TNatTransformation { f: f.clone(), g: f.clone(), alpha })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `h ∘ α` for `h: B → C`.
    Post,
    /// `α ∘ h` for `h: W → A`.
    Pre,
}

pub fn whisker(alpha: &TNatTransformation, h: &TFunctor, side: Side) -> Result<TNatTransformation> {
    match side {
        Side::Post => Ok(TNatTransformation {
            f: alpha.f.then(h)?,
            g: alpha.g.then(h)?,
            alpha: Arc::new(alpha.alpha.iter().map(|(k, v)| Ok((k.clone(), lookup(&h.f1, v)?))).collect::<Result<_>>()?),
        }),
        Side::Pre => Ok(TNatTransformation {
            f: h.then(&alpha.f)?,
            g: h.then(&alpha.g)?,
            alpha: Arc::new(h.f0.iter().map(|(k, v)| Ok((k.clone(), lookup(&alpha.alpha, v)?))).collect::<Result<_>>()?),
        }),
    }
}

/// Interchange for `α: f ⇒ g: A → B` and `β: h ⇒ k: B → C`:
/// `(β g)·(h α) = (k α)·(β f)`.
pub fn interchange_holds(alpha: &TNatTransformation, beta: &TNatTransformation, c: &TCatData) -> Result<bool> {
    let left = vertical(&whisker(beta, &alpha.g, Side::Pre)?, &whisker(alpha, &beta.f, Side::Post)?, c)?;
    let right = vertical(&whisker(alpha, &beta.g, Side::Post)?, &whisker(beta, &alpha.f, Side::Pre)?, c)?;
    Ok(left == right)
}

/// The 1-simplex `N A → N B` of a hat 2-cell: `f` and `g` on constant maps, `α̂` on the
/// identity of `[1]`, and `α̂'`, `α̂''` on `(0,0,1)`, `(0,1,1)`.
pub fn hat_to_one_simplex(c: &HatTwoCell, na: &TSimp) -> Result<HomSimplex> {
    let t = &na.monad;
    let sm = |v: &[usize]| SimplexMap::new(1, v.to_vec()).expect("monotone");
    let mut components = BTreeMap::new();
    components.insert(sm(&[0]), c.f.f0.clone());
    components.insert(sm(&[1]), c.g.f0.clone());
    components.insert(sm(&[0, 0]), c.f.f1.clone());
    components.insert(sm(&[0, 1]), c.hat_alpha.clone());
    components.insert(sm(&[1, 1]), c.g.f1.clone());
    components.insert(sm(&[0, 0, 0]), tabulate(&na.levels[2], |e| c.f.f2(t, e))?);
    components.insert(sm(&[0, 0, 1]), tabulate(&na.levels[2], |e| c.hat_prime(e, t))?);
    components.insert(sm(&[0, 1, 1]), tabulate(&na.levels[2], |e| c.hat_second(e, t))?);
    components.insert(sm(&[1, 1, 1]), tabulate(&na.levels[2], |e| c.g.f2(t, e))?);
    Ok(HomSimplex { degree: 1, components })
}

/// Reads `(f, g, α̂)` off a 1-simplex between nerves.
pub fn one_simplex_to_hat(x: &HomSimplex) -> Result<HatTwoCell> {
    let get = |v: &[usize]| -> Result<Table> {
        x.components
            .get(&SimplexMap::new(1, v.to_vec())?)
            .cloned()
            .ok_or_else(|| Error::TableMiss(format!("{v:?}")))
    };
    Ok(HatTwoCell {
        f: TFunctor { f0: get(&[0])?, f1: get(&[0, 0])? },
        g: TFunctor { f0: get(&[1])?, f1: get(&[1, 1])? },
        hat_alpha: get(&[0, 1])?,
    })
}

/// Functors between ordinary finite categories, by direct search over object and arrow maps.
pub fn direct_functors(a: &FiniteCategory, b: &FiniteCategory) -> Result<Vec<TFunctor>> {
    let objs = a.objects.elements().to_vec();
    let arrows = a.arrows.elements().to_vec();
    let mut out = Vec::new();
    for c0 in product(objs.iter().map(|_| b.objects.elements().to_vec()).collect()) {
        let f0: BTreeMap<Element, Element> = objs.iter().cloned().zip(c0).collect();
        let mut choices = Vec::new();
        for h in &arrows {
            choices.push(b.hom(&f0[&a.dom[h]], &f0[&a.cod[h]]));
        }
        'maps: for c1 in product(choices) {
            let f1: BTreeMap<Element, Element> = arrows.iter().cloned().zip(c1).collect();
            for o in &objs {
                if f1[&a.id[o]] != b.id[&f0[o]] {
                    continue 'maps;
                }
            }
            for ((g, h), gh) in &a.comp {
                if b.compose(&f1[g], &f1[h])? != f1[gh] {
                    continue 'maps;
                }
            }
            out.push(TFunctor { f0: Arc::new(f0.clone()), f1: Arc::new(f1) });
        }
    }
    Ok(out)
}

/// Natural transformations `f ⇒ g` counted as families `α_o: f o → g o` with
/// `g(h) ∘ α_x = α_y ∘ f(h)` for every `h: x → y`.
pub fn direct_natural_count(a: &FiniteCategory, b: &FiniteCategory, f: &TFunctor, g: &TFunctor) -> Result<usize> {
    let objs = a.objects.elements().to_vec();
    let choices = objs.iter().map(|o| b.hom(&f.f0[o], &g.f0[o])).collect();
    let mut count = 0;
    'families: for c in product(choices) {
        let alpha: BTreeMap<Element, Element> = objs.iter().cloned().zip(c).collect();
        for h in a.arrows.iter() {
            let (x, y) = (&a.dom[h], &a.cod[h]);
            if b.compose(&g.f1[h], &alpha[x])? != b.compose(&alpha[y], &f.f1[h])? {
                continue 'families;
            }
        }
        count += 1;
    }
    Ok(count)
}
