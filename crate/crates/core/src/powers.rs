//! Copowers by finite simplicial sets, the power `G⋔X` by `G = Δ_r[1]` of a
//! `Δ_r`-presheaf, and the power `L` of a T-simplicial object by `Δ[1]`.
//!
//! Simplicial sets are `TSimp` values over the identity monad; a `Δ_r`-presheaf is a
//! `TSimp` whose last faces are absent. Elements of `Δ[k]_m` are the value tuples of
//! monotone maps `[m] → [k]`.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::monad::MonadSpec;
use crate::nerve::{check_morphism, check_segal, TSimp, TSimpMorphism};
use crate::search::{enumerate_morphisms, Mode};
use crate::sets::{
    hexagon_diagram, limit_hexagon, lookup, pullback_finite, tabulate, Element, FiniteSet, Hexagon, Morph, SetObj,
    Table,
};
use crate::simplex::{compose, enumerate_hom, SimplexMap, Which};

/// A simplicial set with finite levels, or a `Δ_r`-presheaf of finite sets when its last
/// faces are absent.
pub type FiniteSimplicialSet = TSimp;

pub fn simplex_element(phi: &SimplexMap) -> Element {
    Element::Tuple(phi.values().iter().map(|v| Element::atom(&v.to_string())).collect())
}

pub fn simplex_from_element(e: &Element, cod: usize) -> Result<SimplexMap> {
    let values = e
        .as_tuple()?
        .iter()
        .map(|v| {
            v.as_atom()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("{v} is not a vertex")))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplexMap::new(cod, values)
}

/// `Δ[k]` (or `Δ_r[k]` for `Which::DeltaR`) truncated at `depth`.
pub fn standard_simplex(k: usize, depth: usize, which: Which) -> Result<FiniteSimplicialSet> {
    let levels: Vec<FiniteSet> =
        (0..=depth).map(|m| FiniteSet::new(enumerate_hom(m, k, which).iter().map(simplex_element))).collect();
    let mut faces = vec![vec![]];
    for m in 1..=depth {
        let mut row = Vec::new();
        for i in 0..=m {
            if which == Which::DeltaR && i == m {
                row.push(None);
                continue;
            }
            let delta = SimplexMap::face(m - 1, i)?;
            row.push(Some(tabulate(&levels[m], |e| Ok(simplex_element(&compose(&simplex_from_element(e, k)?, &delta)?)))?));
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for m in 0..depth {
        let mut row = Vec::new();
        for i in 0..=m {
            let sigma = SimplexMap::degeneracy(m, i)?;
            row.push(Some(tabulate(&levels[m], |e| Ok(simplex_element(&compose(&simplex_from_element(e, k)?, &sigma)?)))?));
        }
        degens.push(row);
    }
    let name = match which {
        Which::Delta => format!("Δ[{k}]"),
        Which::DeltaR => format!("Δ_r[{k}]"),
    };
    TSimp::new(name, MonadSpec::identity(), levels, faces, degens)
}

/// The copower `A·Y`: level `n` holds pairs `(a, y)`, one copy of `Y_n` per `a ∈ A_n`.
/// Last faces are `T i_{d_n a} ∘ d_n`; they are absent when `A` has none.
pub fn copower(a: &FiniteSimplicialSet, y: &TSimp) -> Result<TSimp> {
    if a.monad != MonadSpec::identity() {
        return Err(Error::Invalid(format!("{} is not a simplicial set", a.name)));
    }
    let depth = a.depth().min(y.depth());
    let levels: Vec<FiniteSet> = (0..=depth)
        .map(|n| {
            FiniteSet::new(a.levels[n].iter().flat_map(|s| y.levels[n].iter().map(move |e| Element::pair(s.clone(), e.clone()))))
        })
        .collect();
    let mut faces = vec![vec![]];
    for n in 1..=depth {
        let mut row = Vec::new();
        for i in 0..=n {
            if !(a.has_face(n, i) && y.has_face(n, i)) {
                row.push(None);
                continue;
            }
            row.push(Some(tabulate(&levels[n], |z| {
                let (s, e) = (z.proj(0)?, z.proj(1)?);
                let ds = a.face(n, i, s)?;
                let de = y.face(n, i, e)?;
                if i < n {
                    Ok(Element::pair(ds, de))
                } else {
                    y.monad.fmap(&de, &mut |v| Ok(Element::pair(ds.clone(), v.clone())))
                }
            })?));
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for n in 0..depth {
        let mut row = Vec::new();
        for i in 0..=n {
            if !(a.has_degen(n, i) && y.has_degen(n, i)) {
                row.push(None);
                continue;
            }
            row.push(Some(tabulate(&levels[n], |z| Ok(Element::pair(a.degen(n, i, z.proj(0)?)?, y.degen(n, i, z.proj(1)?)?)))?));
        }
        degens.push(row);
    }
    TSimp::new(format!("{}·{}", a.name, y.name), y.monad.clone(), levels, faces, degens)
}

/// Levelwise product of two presheaves over the identity monad.
pub fn product_presheaf(a: &FiniteSimplicialSet, b: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
    let depth = a.depth().min(b.depth());
    let levels: Vec<FiniteSet> = (0..=depth)
        .map(|n| FiniteSet::new(a.levels[n].iter().flat_map(|s| b.levels[n].iter().map(move |e| Element::pair(s.clone(), e.clone())))))
        .collect();
    let mut faces = vec![vec![]];
    for n in 1..=depth {
        let mut row = Vec::new();
        for i in 0..=n {
            if !(a.has_face(n, i) && b.has_face(n, i)) {
                row.push(None);
            } else {
                row.push(Some(tabulate(&levels[n], |z| Ok(Element::pair(a.face(n, i, z.proj(0)?)?, b.face(n, i, z.proj(1)?)?)))?));
            }
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for n in 0..depth {
        let mut row = Vec::new();
        for i in 0..=n {
            row.push(Some(tabulate(&levels[n], |z| Ok(Element::pair(a.degen(n, i, z.proj(0)?)?, b.degen(n, i, z.proj(1)?)?)))?));
        }
        degens.push(row);
    }
    TSimp::new(format!("{}×{}", a.name, b.name), MonadSpec::identity(), levels, faces, degens)
}

/// The presheaf `TX`: levels `TX_n`, inner faces `T d_i`, degeneracies `T s_i`.
pub fn t_presheaf(x: &TSimp) -> Result<TSimp> {
    if !x.monad.preserves_finite() {
        return Err(Error::Capability(x.monad.name()));
    }
    let levels: Vec<FiniteSet> = x.levels.iter().map(|l| x.monad.enumerate(l)).collect::<Result<_>>()?;
    let mut faces = vec![vec![]];
    for n in 1..=x.depth() {
        let mut row = Vec::new();
        for i in 0..=n {
            if i < n && x.has_face(n, i) {
                row.push(Some(tabulate(&levels[n], |t| x.tface(n, i, t))?));
            } else {
                row.push(None);
            }
        }
        faces.push(row);
    }
    let mut degens = Vec::new();
    for n in 0..x.depth() {
        let mut row = Vec::new();
        for i in 0..=n {
            row.push(if x.has_degen(n, i) { Some(tabulate(&levels[n], |t| x.tdegen(n, i, t))?) } else { None });
        }
        degens.push(row);
    }
    TSimp::new(format!("T{}", x.name), x.monad.clone(), levels, faces, degens)
}

/// The power `G⋔X`, with levels up to `X.depth() - 1`. An element of `(G⋔X)_n` is the tuple
/// `(π_0, …, π_n)` in `X_{n+1}` with `d_{j+1} π_j = d_{j+1} π_{j+1}`.
#[derive(Clone, Debug)]
pub struct PowerG {
    pub obj: TSimp,
}

/// Level `n` of `G⋔X` as an iterated pullback along the inner faces.
fn power_level(x: &TSimp, n: usize) -> Result<FiniteSet> {
    let top = &x.levels[n + 1];
    let mut partial: Vec<Vec<Element>> = top.iter().map(|e| vec![e.clone()]).collect();
    for j in 0..n {
        let mut by_face: HashMap<Element, Vec<Element>> = HashMap::new();
        for e in top.iter() {
            by_face.entry(x.face(n + 1, j + 1, e)?).or_default().push(e.clone());
        }
        let mut next = Vec::new();
        for p in partial {
            let key = x.face(n + 1, j + 1, &p[j])?;
            for e in by_face.get(&key).into_iter().flatten() {
                let mut q = p.clone();
                q.push(e.clone());
                next.push(q);
            }
        }
        partial = next;
    }
    Ok(FiniteSet::new(partial.into_iter().map(Element::Tuple)))
}

pub fn power_g(x: &TSimp) -> Result<PowerG> {
    if x.depth() == 0 {
        return Err(Error::Depth("G⋔X needs level 1".into()));
    }
    let depth = x.depth() - 1;
    let levels: Vec<FiniteSet> = (0..=depth).map(|n| power_level(x, n)).collect::<Result<_>>()?;
    let pi = |e: &Element, j: usize| -> Result<Element> { e.proj(j).cloned() };
    let mut faces = vec![vec![]];
    for n1 in 1..=depth {
        let n = n1 - 1;
        let mut row = Vec::new();
        for i in 0..=n {
            let t = tabulate(&levels[n1], |e| {
                let comps = (0..=n)
                    .map(|j| if j < i { x.face(n + 2, i + 1, &pi(e, j)?) } else { x.face(n + 2, i, &pi(e, j + 1)?) })
                    .collect::<Result<Vec<_>>>()?;
                let v = Element::Tuple(comps);
                if levels[n].contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::NoPairing(format!("d_{i}{e} in (G⋔X)_{n}")))
                }
            })?;
            row.push(Some(t));
        }
        row.push(None);
        faces.push(row);
    }
    let mut degens = Vec::new();
    for n0 in 0..depth {
        let n = n0 + 1;
        let mut row = Vec::new();
        for i in 0..n {
            let t = tabulate(&levels[n0], |e| {
                let comps = (0..=n)
                    .map(|j| if j <= i { x.degen(n, i + 1, &pi(e, j)?) } else { x.degen(n, i, &pi(e, j - 1)?) })
                    .collect::<Result<Vec<_>>>()?;
                let v = Element::Tuple(comps);
                if levels[n].contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::NoPairing(format!("s_{i}{e} in (G⋔X)_{n}")))
                }
            })?;
            row.push(Some(t));
        }
        degens.push(row);
    }
    let obj = TSimp::new(format!("G⋔{}", x.name), x.monad.clone(), levels, faces, degens)?;
    Ok(PowerG { obj })
}

impl PowerG {
    /// `g = (π_n)`: a presheaf morphism `G⋔X → XR`.
    pub fn g(&self, n: usize, e: &Element) -> Result<Element> {
        e.proj(n).cloned()
    }

    /// `t = d_0 ∘ π_0`: a presheaf morphism `G⋔X → X`.
    pub fn t(&self, x: &TSimp, n: usize, e: &Element) -> Result<Element> {
        x.face(n + 1, 0, e.proj(0)?)
    }

    /// `(G⋔X)_n` as the limit of the zigzag `X_{n+1} → X_n ← X_{n+1} → …`, by the generic
    /// finite-limit search. Elements are returned as `(π_0, …, π_n)`.
    pub fn level_by_limit(x: &TSimp, n: usize) -> Result<FiniteSet> {
        let mut vertices: Vec<SetObj> = (0..=n).map(|_| x.levels[n + 1].clone().into()).collect();
        vertices.extend((0..n).map(|_| SetObj::from(x.levels[n].clone())));
        let mut edges = Vec::new();
        for j in 0..n {
            let d = Morph::table(x.levels[n + 1].clone(), x.levels[n].clone().into(), x.faces[n + 1][j + 1].clone().expect("inner face"))?;
            edges.push((j, n + 1 + j, d.clone()));
            edges.push((j + 1, n + 1 + j, d));
        }
        let lim = crate::sets::finite_limit(&crate::sets::Diagram { vertices, edges })?;
        let out = lim
            .obj
            .iter()
            .map(|t| Ok(Element::Tuple(t.as_tuple()?[..=n].to_vec())))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteSet::new(out))
    }
}

/// A `Δ_r`-enriched 1-simplex `u = (u_{m,k}: Y_m → X_m)_{k ≤ m}` of presheaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafOneSimplex {
    pub u: Vec<Vec<Table>>,
}

impl PresheafOneSimplex {
    pub fn depth(&self) -> usize {
        self.u.len() - 1
    }

    /// Reads `u` off a presheaf morphism `Δ_r[1]·Y → X`: `u_{m,k}(y) = F(χ^m_k, y)`.
    pub fn from_copower_morphism(f: &TSimpMorphism, y: &TSimp) -> Result<Self> {
        let mut u = Vec::new();
        for (m, comp) in f.components.iter().enumerate() {
            let mut row = Vec::new();
            for k in 0..=m {
                let chi = simplex_element(&crate::simplex::chi(m, k)?);
                row.push(tabulate(&y.levels[m], |e| lookup(comp, &Element::pair(chi.clone(), e.clone())))?);
            }
            u.push(row);
        }
        Ok(PresheafOneSimplex { u })
    }

    /// First failing naturality square, if any.
    pub fn check(&self, y: &TSimp, x: &TSimp) -> Result<Option<String>> {
        let depth = self.depth();
        for m in 0..=depth {
            for k in 0..=m {
                for e in y.levels[m].iter() {
                    let v = lookup(&self.u[m][k], e)?;
                    for i in 0..m {
                        let k2 = if k <= i { k } else { k - 1 };
                        if x.face(m, i, &v)? != lookup(&self.u[m - 1][k2], &y.face(m, i, e)?)? {
                            return Ok(Some(format!("d_{i} u_{{{m},{k}}} at {e}")));
                        }
                    }
                    if m < depth {
                        for i in 0..=m {
                            let k2 = if k <= i { k } else { k + 1 };
                            if x.degen(m, i, &v)? != lookup(&self.u[m + 1][k2], &y.degen(m, i, e)?)? {
                                return Ok(Some(format!("s_{i} u_{{{m},{k}}} at {e}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// `û_m(y) = (u_{m+1,k+1}(s_k y))_k`, defined up to level `depth(u) - 1`.
pub fn hat_of(u: &PresheafOneSimplex, y: &TSimp, power: &PowerG) -> Result<TSimpMorphism> {
    let depth = u.depth().checked_sub(1).ok_or_else(|| Error::Depth("û needs u at level 1".into()))?;
    let mut components = Vec::new();
    for m in 0..=depth {
        components.push(tabulate(&y.levels[m], |e| {
            let comps = (0..=m).map(|k| lookup(&u.u[m + 1][k + 1], &y.degen(m, k, e)?)).collect::<Result<Vec<_>>>()?;
            let v = Element::Tuple(comps);
            if power.obj.levels[m].contains(&v) {
                Ok(v)
            } else {
                Err(Error::NoPairing(format!("û_{m}({e}) = {v}")))
            }
        })?);
    }
    Ok(TSimpMorphism { components })
}

/// `u_{m,k} = d_k ∘ π_k ∘ û_m`.
pub fn unhat(hat: &TSimpMorphism, y: &TSimp, x: &TSimp) -> Result<PresheafOneSimplex> {
    let mut u = Vec::new();
    for (m, comp) in hat.components.iter().enumerate() {
        let mut row = Vec::new();
        for k in 0..=m {
            row.push(tabulate(&y.levels[m], |e| x.face(m + 1, k, lookup(comp, e)?.proj(k)?))?);
        }
        u.push(row);
    }
    Ok(PresheafOneSimplex { u })
}

/// The power `L = Δ[1]⋔X` with its universal 1-simplex `(p, q)`.
#[derive(Clone, Debug)]
pub struct DeltaOnePower {
    pub l: TSimp,
    /// `p: L → X`, a morphism of T-simplicial objects.
    pub p: TSimpMorphism,
    /// `q: L → G⋔X`, a morphism of presheaves.
    pub q: TSimpMorphism,
    pub power: PowerG,
    /// The hexagon whose limit is `L_{n+1}`, for `n = 0, 1, …`.
    pub hexagons: Vec<Hexagon>,
}

fn fin(s: &FiniteSet) -> SetObj {
    s.clone().into()
}

/// Builds `L` at `depth`. Requires `X` through level `depth + 1` and a finiteness-preserving
/// monad. `L_0` holds pairs `(q, p)` and `L_{n+1}` holds triples `(d_{n+1}, p, q)`.
pub fn delta1_power(x: &TSimp, depth: usize) -> Result<DeltaOnePower> {
    let t = x.monad.clone();
    if !t.preserves_finite() {
        return Err(Error::Capability(t.name()));
    }
    if x.depth() < depth + 1 {
        return Err(Error::Depth(format!("L at depth {depth} needs X through level {}", depth + 1)));
    }
    let x = x.truncate(depth + 1);
    let power = power_g(&x)?;
    let tx = t_presheaf(&x)?;
    let tpower = power_g(&tx)?;
    let gx = &power.obj;
    let txl: Vec<FiniteSet> = tx.levels.clone();

    let f0 = Morph::tabulate(&gx.levels[0], fin(&txl[0]), |e| x.face(1, 1, e.proj(0)?))?;
    let i0 = Morph::tabulate(&x.levels[0], fin(&txl[0]), |e| Ok(t.unit(e)))?;
    let l0 = pullback_finite(&f0, &i0)?.obj;
    let mut levels = vec![l0.clone()];
    let mut p_comps = vec![tabulate(&l0, |e| e.proj(1).cloned())?];
    let mut q_comps = vec![tabulate(&l0, |e| e.proj(0).cloned())?];
    let mut hexagons = Vec::new();

    for n in 0..depth {
        let ln = levels[n].clone();
        let b_set = t.enumerate(&ln)?;
        let (pn, qn) = (p_comps[n].clone(), q_comps[n].clone());
        let a = Morph::tabulate(&b_set, fin(&tpower.obj.levels[n]), |b| {
            Ok(Element::Tuple((0..=n).map(|j| t.fmap(b, &mut |l| lookup(&qn, l)?.proj(j).cloned())).collect::<Result<_>>()?))
        })?;
        let bm = Morph::tabulate(&b_set, fin(&txl[n]), |b| t.fmap(b, &mut |l| lookup(&pn, l)))?;
        let c = Morph::tabulate(&x.levels[n + 1], fin(&txl[n]), |e| x.face(n + 1, n + 1, e))?;
        let d = Morph::tabulate(&x.levels[n + 1], fin(&txl[n + 1]), |e| Ok(t.unit(e)))?;
        let e = Morph::tabulate(&gx.levels[n + 1], fin(&txl[n + 1]), |f| x.face(n + 2, n + 2, f.proj(n + 1)?))?;
        let f = Morph::tabulate(&gx.levels[n + 1], fin(&tpower.obj.levels[n]), |f| {
            Ok(Element::Tuple((0..=n).map(|j| x.face(n + 2, n + 2, f.proj(j)?)).collect::<Result<_>>()?))
        })?;
        let g = Morph::tabulate(&tpower.obj.levels[n], fin(&txl[n]), |a| t.mult(&x.tface(n + 1, n + 1, a.proj(n)?)?))?;
        let h = Morph::identity(fin(&txl[n]));
        let i = Morph::tabulate(&txl[n + 1], fin(&txl[n]), |u| t.mult(&x.tface(n + 1, n + 1, u)?))?;
        let hx = Hexagon { a, b: bm, c, d, e, f, g, h, i };
        let lim = limit_hexagon(&hx)?;
        hexagons.push(hx);
        p_comps.push(tabulate(&lim.obj, |e| e.proj(1).cloned())?);
        q_comps.push(tabulate(&lim.obj, |e| e.proj(2).cloned())?);
        levels.push(lim.obj);
    }

    // Non-last faces and degeneracies are forced by p, q and the T-simplicial identities.
    let mut faces: Vec<Vec<Option<Table>>> = vec![vec![]];
    for n1 in 1..=depth {
        let n = n1 - 1;
        let mut row: Vec<Option<Table>> = Vec::new();
        for i in 0..n1 {
            let prev_faces = &faces;
            let table = tabulate(&levels[n1], |l| {
                let (beta, xe, phi) = (l.proj(0)?, l.proj(1)?, l.proj(2)?);
                let dx = x.face(n1, i, xe)?;
                let dphi = gx.face(n1, i, phi)?;
                let v = if n == 0 {
                    Element::pair(dphi, dx)
                } else {
                    let last = if i < n {
                        t.fmap(beta, &mut |b| lookup(prev_faces[n][i].as_ref().expect("inner face"), b))?
                    } else {
                        let lf = prev_faces[n][n].as_ref().expect("last face");
                        t.mult(&t.fmap(beta, &mut |b| lookup(lf, b))?)?
                    };
                    Element::Tuple(vec![last, dx, dphi])
                };
                if levels[n].contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::NoPairing(format!("d_{i}{l} in L_{n}")))
                }
            })?;
            row.push(Some(table));
        }
        row.push(Some(tabulate(&levels[n1], |l| l.proj(0).cloned())?));
        faces.push(row);
    }
    let mut degens: Vec<Vec<Option<Table>>> = Vec::new();
    for n in 0..depth {
        let mut row = Vec::new();
        for i in 0..=n {
            let table = tabulate(&levels[n], |l| {
                let (xe, phi) = (lookup(&p_comps[n], l)?, lookup(&q_comps[n], l)?);
                let last = if i < n {
                    t.fmap(&faces[n][n].as_ref().expect("last face").get(l).cloned().ok_or_else(|| Error::TableMiss(l.to_string()))?, &mut |b| {
                        lookup(degens[n - 1][i].as_ref().expect("degeneracy"), b)
                    })?
                } else {
                    t.unit(l)
                };
                let v = Element::Tuple(vec![last, x.degen(n, i, &xe)?, gx.degen(n, i, &phi)?]);
                if levels[n + 1].contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::NoPairing(format!("s_{i}{l} in L_{}", n + 1)))
                }
            })?;
            row.push(Some(table));
        }
        degens.push(row);
    }
    let l = TSimp::new(format!("Δ[1]⋔{}", x.name), t, levels, faces, degens)?;
    Ok(DeltaOnePower { l, p: TSimpMorphism { components: p_comps }, q: TSimpMorphism { components: q_comps }, power, hexagons })
}

/// Checks that `(p, q)` is a 1-simplex `L → X`: `p` and `q` are morphisms and the two
/// remaining squares commute. Returns the first failure.
pub fn verify_universal_simplex(pw: &DeltaOnePower, x: &TSimp) -> Result<Option<String>> {
    if let Some(w) = check_morphism(&pw.p, &pw.l, x)? {
        return Ok(Some(format!("p: {w}")));
    }
    if let Some(w) = check_morphism(&pw.q, &pw.l.restrict(), &pw.power.obj)? {
        return Ok(Some(format!("q: {w}")));
    }
    check_pair_squares(&pw.q, &pw.p, &pw.l, x)
}

/// The squares relating `(û, v)` for a candidate 1-simplex `Y → X`:
/// `(d_{m+2} π_j û_{m+1})_j = (T(π_j û_m) d_{m+1})_j` and `d_{m+1} π_m û_m = i v_m`.
fn check_pair_squares(hat: &TSimpMorphism, v: &TSimpMorphism, y: &TSimp, x: &TSimp) -> Result<Option<String>> {
    let t = &x.monad;
    let depth = hat.components.len().min(v.components.len()) - 1;
    for m in 0..=depth {
        for e in y.levels[m].iter() {
            let h = hat.at(m, e)?;
            if x.face(m + 1, m + 1, h.proj(m)?)? != t.unit(&v.at(m, e)?) {
                return Ok(Some(format!("unit square at level {m}, element {e}")));
            }
        }
        if m < depth {
            for e in y.levels[m + 1].iter() {
                let h = hat.at(m + 1, e)?;
                let dy = y.face(m + 1, m + 1, e)?;
                for j in 0..=m {
                    let left = x.face(m + 2, m + 2, h.proj(j)?)?;
                    let right = t.fmap(&dy, &mut |z| hat.at(m, z)?.proj(j).cloned())?;
                    if left != right {
                        return Ok(Some(format!("last-face square π_{j} at level {}, element {e}", m + 1)));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct UniversalReport {
    pub sample: String,
    pub morphisms_into_l: usize,
    pub one_simplices: usize,
    pub bijective: bool,
    pub witness: Option<String>,
}

/// For each sample `Y`, compares morphisms `Y → L` with 1-simplices `Y → X` presented as
/// pairs `(û, v)`, through `h ↦ (q h, p h)`.
pub fn check_universal_property(pw: &DeltaOnePower, x: &TSimp, samples: &[TSimp], bound: usize) -> Result<Vec<UniversalReport>> {
    let depth = pw.l.depth();
    let xd = x.truncate(depth);
    let gd = pw.power.obj.truncate(depth);
    let mut out = Vec::new();
    for y in samples {
        if y.depth() < depth {
            return Err(Error::Depth(format!("sample {} is shallower than L", y.name)));
        }
        let yd = y.truncate(depth);
        let left = enumerate_morphisms(&yd, &pw.l, depth, Mode::Full, bound)?;
        let vs = enumerate_morphisms(&yd, &xd, depth, Mode::Full, bound)?;
        let hats = enumerate_morphisms(&yd.restrict(), &gd, depth, Mode::Presheaf, bound)?;
        let mut right = HashSet::new();
        for v in &vs {
            for h in &hats {
                if check_pair_squares(h, v, &yd, x)?.is_none() {
                    right.insert((h.clone(), v.clone()));
                }
            }
        }
        let mut image = HashSet::new();
        let mut witness = None;
        for h in &left {
            let compose = |f: &TSimpMorphism| -> Result<TSimpMorphism> {
                let components = (0..=depth)
                    .map(|n| tabulate(&yd.levels[n], |e| f.at(n, &h.at(n, e)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(TSimpMorphism { components })
            };
            let pair = (compose(&pw.q)?, compose(&pw.p)?);
            if !right.contains(&pair) && witness.is_none() {
                witness = Some("a morphism into L maps outside the 1-simplices".to_string());
            }
            if !image.insert(pair) && witness.is_none() {
                witness = Some("two morphisms into L give the same 1-simplex".to_string());
            }
        }
        if witness.is_none() && image.len() != right.len() {
            witness = Some(format!("{} 1-simplices are not hit", right.len() - image.len()));
        }
        out.push(UniversalReport {
            sample: y.name.clone(),
            morphisms_into_l: left.len(),
            one_simplices: right.len(),
            bijective: witness.is_none(),
            witness,
        });
    }
    Ok(out)
}

/// Segal on `L`. Meaningful when `X` is a T-category.
pub fn check_power_closure(pw: &DeltaOnePower) -> Result<bool> {
    check_segal(&pw.l)
}

/// Every hexagon limit recomputed by the generic finite-limit search and compared as a set of
/// `(b, d, f)` triples.
pub fn hexagons_match_finite_limit(pw: &DeltaOnePower) -> Result<bool> {
    for (n, hx) in pw.hexagons.iter().enumerate() {
        let lim = crate::sets::finite_limit(&hexagon_diagram(hx))?;
        let triples: BTreeMap<Element, ()> = lim
            .obj
            .iter()
            .map(|t| {
                let c = t.as_tuple()?;
                Ok((Element::Tuple(vec![c[1].clone(), c[3].clone(), c[5].clone()]), ()))
            })
            .collect::<Result<_>>()?;
        let ours: Vec<&Element> = pw.l.levels[n + 1].iter().collect();
        if ours.len() != triples.len() || ours.iter().any(|e| !triples.contains_key(*e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The arrow category of `[k]`, for comparison with `Δ[1]⋔N[k]`.
pub fn arrow_category_of_ordinal(k: usize) -> crate::tcat::FiniteCategory {
    let objs: Vec<(usize, usize)> = (0..=k).flat_map(|i| (i..=k).map(move |j| (i, j))).collect();
    let name = |(i, j): (usize, usize)| Element::atom(&format!("{i}{j}"));
    crate::tcat::FiniteCategory::poset(objs.iter().map(|&o| name(o)).collect(), |a, b| {
        let pa = objs.iter().find(|&&o| name(o) == *a).expect("object");
        let pb = objs.iter().find(|&&o| name(o) == *b).expect("object");
        pa.0 <= pb.0 && pa.1 <= pb.1
    })
}

/// True when some morphism `a → b` is bijective at every level.
pub fn levelwise_isomorphic(a: &TSimp, b: &TSimp, bound: usize) -> Result<bool> {
    if a.sizes() != b.sizes() {
        return Ok(false);
    }
    let depth = a.depth();
    let ms = enumerate_morphisms(a, b, depth, Mode::Full, bound)?;
    Ok(ms.iter().any(|m| {
        m.components.iter().enumerate().all(|(n, c)| c.values().collect::<HashSet<_>>().len() == b.levels[n].len())
    }))
}
