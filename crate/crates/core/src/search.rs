//! Exhaustive enumeration of morphisms between truncated T-simplicial objects.
//!
//! Levels are filled in increasing order. Images of degenerate elements are forced by the
//! previous level; every other element `y ∈ Y_n` ranges over the elements of `X_n` whose
//! faces equal the prescribed values `f_{n-1}(d_i y)` and `T f_{n-1}(d_n y)`, found through
//! an index of `X_n` by face vectors.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::nerve::{TSimp, TSimpMorphism};
use crate::sets::{lookup, Element};

/// Which faces constrain the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All faces, including the last faces into `T`.
    Full,
    /// Inner faces and degeneracies only: morphisms of `Δ_r`-presheaves.
    Presheaf,
}

struct Ctx<'a> {
    y: &'a TSimp,
    x: &'a TSimp,
    depth: usize,
    bound: usize,
    /// Face indices used at each level.
    used: Vec<Vec<usize>>,
    index: Vec<HashMap<Vec<Element>, Vec<Element>>>,
    /// `watch[n][k]`: elements of `Y_{n+1}` whose faces are all known once the `k`-th
    /// element of `Y_n` is assigned.
    watch: Vec<Vec<Vec<Element>>>,
    out: Vec<TSimpMorphism>,
}

/// All morphisms `Y → X` truncated at `depth`. Fails with `Error::Bound` beyond `bound` results.
pub fn enumerate_morphisms(y: &TSimp, x: &TSimp, depth: usize, mode: Mode, bound: usize) -> Result<Vec<TSimpMorphism>> {
    if depth > y.depth() || depth > x.depth() {
        return Err(Error::Depth(format!("morphisms at depth {depth} need both objects that deep")));
    }
    let mut used = vec![Vec::new()];
    let mut index = vec![HashMap::new()];
    for n in 1..=depth {
        let faces: Vec<usize> = (0..=n)
            .filter(|&i| (i < n || mode == Mode::Full) && x.has_face(n, i) && y.has_face(n, i))
            .collect();
        let mut idx: HashMap<Vec<Element>, Vec<Element>> = HashMap::new();
        for z in x.levels[n].iter() {
            let key = faces.iter().map(|&i| x.face(n, i, z)).collect::<Result<Vec<_>>>()?;
            idx.entry(key).or_default().push(z.clone());
        }
        used.push(faces);
        index.push(idx);
    }
    let mut watch = Vec::new();
    for n in 0..depth {
        let lower = y.levels[n].elements();
        let mut w = vec![Vec::new(); lower.len()];
        for e in y.levels[n + 1].iter() {
            let mut support = Vec::new();
            for &i in &used[n + 1] {
                let d = y.face(n + 1, i, e)?;
                if i <= n {
                    support.push(d);
                } else {
                    y.monad.fmap(&d, &mut |v| {
                        support.push(v.clone());
                        Ok(v.clone())
                    })?;
                }
            }
            let last = support.iter().filter_map(|v| lower.binary_search(v).ok()).max();
            if let Some(k) = last {
                w[k].push(e.clone());
            }
        }
        watch.push(w);
    }
    let mut ctx = Ctx { y, x, depth, bound, used, index, watch, out: Vec::new() };
    let mut maps: Vec<BTreeMap<Element, Element>> = vec![BTreeMap::new(); depth + 1];
    ctx.level(0, &mut maps)?;
    Ok(ctx.out)
}

/// Number of morphisms, with the same bound semantics.
pub fn count_morphisms(y: &TSimp, x: &TSimp, depth: usize, mode: Mode, bound: usize) -> Result<usize> {
    Ok(enumerate_morphisms(y, x, depth, mode, bound)?.len())
}

impl Ctx<'_> {
    fn key(&self, n: usize, e: &Element, maps: &[BTreeMap<Element, Element>]) -> Result<Vec<Element>> {
        let prev = &maps[n - 1];
        self.used[n]
            .iter()
            .map(|&i| {
                let d = self.y.face(n, i, e)?;
                if i < n {
                    prev.get(&d).cloned().ok_or_else(|| Error::TableMiss(d.to_string()))
                } else {
                    self.y.monad.fmap(&d, &mut |v| prev.get(v).cloned().ok_or_else(|| Error::TableMiss(v.to_string())))
                }
            })
            .collect()
    }

    /// Whether every element of `Y_{n+1}` that became fully determined at position `k` of
    /// level `n` still has a candidate.
    fn feasible(&self, n: usize, k: usize, maps: &[BTreeMap<Element, Element>]) -> Result<bool> {
        if n >= self.depth {
            return Ok(true);
        }
        for e in &self.watch[n][k] {
            if !self.index[n + 1].contains_key(&self.key(n + 1, e, maps)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn level(&mut self, n: usize, maps: &mut Vec<BTreeMap<Element, Element>>) -> Result<()> {
        if n > self.depth {
            if self.out.len() >= self.bound {
                return Err(Error::Bound(format!("more than {} morphisms", self.bound)));
            }
            let components = maps.iter().map(|m| Arc::new(m.clone())).collect();
            self.out.push(TSimpMorphism { components });
            return Ok(());
        }
        let mut forced: BTreeMap<Element, Element> = BTreeMap::new();
        if n >= 1 {
            for i in 0..n {
                if !(self.y.has_degen(n - 1, i) && self.x.has_degen(n - 1, i)) {
                    continue;
                }
                for e in self.y.levels[n - 1].iter() {
                    let target = self.y.degen(n - 1, i, e)?;
                    let value = self.x.degen(n - 1, i, &maps[n - 1][e])?;
                    match forced.get(&target) {
                        Some(v) if *v != value => return Ok(()),
                        _ => {
                            forced.insert(target, value);
                        }
                    }
                }
            }
        }
        maps[n] = forced;
        let elems: Vec<Element> = self.y.levels[n].elements().to_vec();
        let r = self.element(n, 0, &elems, maps);
        maps[n].clear();
        r
    }

    fn element(&mut self, n: usize, k: usize, elems: &[Element], maps: &mut Vec<BTreeMap<Element, Element>>) -> Result<()> {
        if k == elems.len() {
            return self.level(n + 1, maps);
        }
        let e = &elems[k];
        if n == 0 {
            let candidates: Vec<Element> = match maps[0].get(e) {
                Some(v) => vec![v.clone()],
                None => self.x.levels[0].elements().to_vec(),
            };
            for c in candidates {
                maps[0].insert(e.clone(), c);
                if self.feasible(0, k, maps)? {
                    self.element(n, k + 1, elems, maps)?;
                }
            }
            maps[0].remove(e);
            return Ok(());
        }
        let key = self.key(n, e, maps)?;
        if let Some(v) = maps[n].get(e).cloned() {
            let ok = self.index[n].get(&key).is_some_and(|c| c.contains(&v));
            if ok && self.feasible(n, k, maps)? {
                self.element(n, k + 1, elems, maps)?;
            }
            return Ok(());
        }
        let candidates = self.index[n].get(&key).cloned().unwrap_or_default();
        for c in candidates {
            maps[n].insert(e.clone(), c);
            if self.feasible(n, k, maps)? {
                self.element(n, k + 1, elems, maps)?;
            }
        }
        maps[n].remove(e);
        Ok(())
    }
}

/// Applies a morphism component, for callers holding a morphism and an element.
pub fn apply(f: &TSimpMorphism, n: usize, e: &Element) -> Result<Element> {
    lookup(&f.components[n], e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::MonadSpec;
    use crate::nerve::{check_morphism, extend_morphism, nerve};
    use crate::sets::FiniteSet;
    use crate::tcat::{check_tfunctor, discrete_tcat, FiniteCategory};

    fn ord(k: usize, depth: usize) -> TSimp {
        nerve(&FiniteCategory::ordinal(k).to_tcat(&format!("[{k}]")).unwrap(), depth).unwrap()
    }

    #[test]
    fn morphisms_between_ordinal_nerves_are_monotone_maps() {
        for a in 0..=2 {
            for b in 0..=2 {
                let ms = enumerate_morphisms(&ord(a, 3), &ord(b, 3), 3, Mode::Full, 10_000).unwrap();
                // monotone maps [a] → [b]
                assert_eq!(ms.len(), crate::simplex::binomial(a + b + 1, a + 1), "[{a}] → [{b}]");
                for m in &ms {
                    assert!(check_morphism(m, &ord(a, 3), &ord(b, 3)).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn fully_faithful_on_small_examples() {
        let cats = [
            FiniteCategory::ordinal(0).to_tcat("[0]").unwrap(),
            FiniteCategory::ordinal(1).to_tcat("[1]").unwrap(),
            discrete_tcat(&FiniteSet::atoms(&["a", "b"]), &MonadSpec::identity()).unwrap(),
        ];
        for a in &cats {
            for b in &cats {
                let (na, nb) = (nerve(a, 3).unwrap(), nerve(b, 3).unwrap());
                let ms = enumerate_morphisms(&na, &nb, 3, Mode::Full, 10_000).unwrap();
                // brute-force T-functors on (f0, f1)
                let mut functors = 0;
                let x0: Vec<_> = a.graph.x0.elements().to_vec();
                let x1: Vec<_> = a.graph.x1.elements().to_vec();
                let choices0 = itertools::Itertools::multi_cartesian_product(x0.iter().map(|_| b.graph.x0.elements().iter().cloned()));
                for c0 in choices0 {
                    let f0 = Arc::new(x0.iter().cloned().zip(c0).collect());
                    let choices1 = itertools::Itertools::multi_cartesian_product(x1.iter().map(|_| b.graph.x1.elements().iter().cloned()));
                    for c1 in choices1 {
                        let f1 = Arc::new(x1.iter().cloned().zip(c1).collect());
                        if check_tfunctor(&f0, &f1, a, b).unwrap().passed {
                            functors += 1;
                            let ext = extend_morphism(&f0, &f1, &na, &nb).unwrap();
                            assert!(ms.contains(&ext));
                        }
                    }
                }
                assert_eq!(ms.len(), functors);
            }
        }
    }

    #[test]
    fn bound_is_reported() {
        let r = enumerate_morphisms(&ord(2, 2), &ord(2, 2), 2, Mode::Full, 3);
        assert!(matches!(r, Err(Error::Bound(_))));
    }
}
