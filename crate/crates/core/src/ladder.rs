//! Random partial structures at each ladder level, for fuzzing the derived identities.
//!
//! The generator draws from a caller-supplied chooser `pick(k) ∈ 0..k`, so any RNG
//! (or an exhaustive driver) can feed it. A draw that cannot be completed to the
//! requested level returns `None` and the caller retries.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::monad::MonadSpec;
use crate::nerve::LadderLevel;
use crate::sets::{lookup, Element, FiniteSet, Table};
use crate::tcat::{Axiom, TCatData, TGraph};

/// Upper bound on `|X0|` and `|X1|`.
pub const MAX_SIZE: usize = 3;

fn axioms(level: LadderLevel) -> &'static [Axiom] {
    match level {
        LadderLevel::Graph => &[],
        LadderLevel::ReflexiveGraph => &[Axiom::CA2],
        LadderLevel::Magmoid => &[Axiom::CA1],
        LadderLevel::Semicategory => &[Axiom::CA1, Axiom::CA3],
        LadderLevel::ReflexiveMagmoid => &[Axiom::CA1, Axiom::CA2],
        LadderLevel::UnitalMagmoid => &[Axiom::CA1, Axiom::CA2, Axiom::CA4],
        LadderLevel::ReflexiveSemicategory => &[Axiom::CA1, Axiom::CA2, Axiom::CA3],
        LadderLevel::TCategory => &[Axiom::CA1, Axiom::CA2, Axiom::CA3, Axiom::CA4],
    }
}

/// Whether `data` has the data and passes the axioms that `level` requires.
pub fn is_at_level(data: &TCatData, level: LadderLevel) -> Result<bool> {
    if level.needs_comp() != data.comp.is_some() || level.needs_unit() != data.unit.is_some() {
        return Ok(false);
    }
    for &a in axioms(level) {
        let r = data.check_axiom(a)?;
        if !r.applicable || !r.passed {
            return Ok(false);
        }
    }
    Ok(true)
}

fn table(pairs: impl IntoIterator<Item = (Element, Element)>) -> Table {
    Arc::new(pairs.into_iter().collect::<BTreeMap<_, _>>())
}

/// One random draw at `level`, or `None` when the draw cannot satisfy the level.
pub fn random_structure(level: LadderLevel, monad: &MonadSpec, pick: &mut dyn FnMut(usize) -> usize) -> Result<Option<TCatData>> {
    let n0 = 1 + pick(MAX_SIZE);
    let objects: Vec<Element> = (0..n0).map(|i| Element::atom(&format!("o{i}"))).collect();
    let x0 = FiniteSet::new(objects.clone());
    let tx0 = monad.enumerate(&x0)?;

    let mut d0 = Vec::new();
    let mut d1 = Vec::new();
    let mut unit = Vec::new();
    if level.needs_unit() {
        for o in &objects {
            let u = Element::atom(&format!("u{}", o.as_atom().unwrap_or_default()));
            d0.push((u.clone(), o.clone()));
            d1.push((u.clone(), monad.unit(o)));
            unit.push((o.clone(), u));
        }
    }
    let extra = pick(MAX_SIZE - d0.len() + 1);
    for k in 0..extra {
        let a = Element::atom(&format!("a{k}"));
        d0.push((a.clone(), objects[pick(n0)].clone()));
        d1.push((a, tx0.elements()[pick(tx0.len())].clone()));
    }
    if d0.is_empty() {
        return Ok(None);
    }
    let x1 = FiniteSet::new(d0.iter().map(|(a, _)| a.clone()));
    let graph = TGraph::new(monad.clone(), x0, x1.clone(), table(d0), table(d1))?;
    let unit = level.needs_unit().then(|| table(unit));

    let comp = if level.needs_comp() {
        let mut forced: BTreeMap<Element, Element> = BTreeMap::new();
        if matches!(level, LadderLevel::UnitalMagmoid | LadderLevel::TCategory) {
            let u = unit.as_ref().expect("unital levels carry units");
            for x in x1.iter() {
                let right = Element::pair(x.clone(), monad.fmap(&lookup(&graph.d1, x)?, &mut |o| lookup(u, o))?);
                let left = Element::pair(lookup(u, &lookup(&graph.d0, x)?)?, monad.unit(x));
                for e in [right, left] {
                    if forced.insert(e, x.clone()).is_some_and(|prev| prev != *x) {
                        return Ok(None);
                    }
                }
            }
        }
        let mut comp = Vec::new();
        for e in graph.x2()?.iter() {
            if let Some(c) = forced.get(e) {
                comp.push((e.clone(), c.clone()));
                continue;
            }
            let (x, tt) = (e.proj(0)?, e.proj(1)?);
            let cod = lookup(&graph.d0, x)?;
            let dom = monad.mult(&monad.fmap(tt, &mut |a| lookup(&graph.d1, a))?)?;
            let candidates: Vec<&Element> = x1
                .iter()
                .filter(|c| lookup(&graph.d0, c).ok() == Some(cod.clone()) && lookup(&graph.d1, c).ok() == Some(dom.clone()))
                .collect();
            if candidates.is_empty() {
                return Ok(None);
            }
            comp.push((e.clone(), candidates[pick(candidates.len())].clone()));
        }
        Some(table(comp))
    } else {
        None
    };

    let data = TCatData { name: format!("random {level:?}"), graph, comp, unit };
    Ok(is_at_level(&data, level)?.then_some(data))
}

/// Draws until `count` structures at `level` are found, giving up after `attempts` draws.
pub fn sample_level(
    level: LadderLevel,
    monad: &MonadSpec,
    count: usize,
    attempts: usize,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<Vec<TCatData>> {
    let mut out = Vec::new();
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        if let Some(d) = random_structure(level, monad, pick)? {
            out.push(d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcg(seed: u64) -> impl FnMut(usize) -> usize {
        let mut s = seed;
        move |k| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as usize) % k
        }
    }

    #[test]
    fn every_level_is_reachable_for_each_monad() {
        for monad in [MonadSpec::identity(), MonadSpec::maybe(), MonadSpec::writer(crate::Monoid::z2())] {
            for level in LadderLevel::ALL {
                let got = sample_level(level, &monad, 5, 5000, &mut lcg(7)).unwrap();
                assert_eq!(got.len(), 5, "{level:?} over {}", monad.name());
                for d in &got {
                    assert!(is_at_level(d, level).unwrap());
                }
            }
        }
    }
}
