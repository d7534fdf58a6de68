//! The comonad `K` on sequences, its lift `K̂` to `Δ_r`-presheaves, and the passage between
//! `K̂`-coalgebras and T-simplicial objects.
//!
//! Levels are right-nested: `K(X)_0 = X_0` and `K(X)_{n+1}` holds `pair(x, t)` with
//! `x ∈ X_{n+1}` and `t ∈ T K(X)_n`. Everything here is elementwise, so iterated lifts such as
//! `K̂K̂X` are evaluated without materializing their levels.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monad::MonadSpec;
use crate::nerve::{check_sa_axioms, TSimp};
use crate::sets::{lookup, tabulate, Element, FiniteSet, Table};

/// Inner faces and degeneracies of a truncated `Δ_r`-presheaf, on elements.
pub trait Presheaf {
    fn monad(&self) -> &MonadSpec;
    fn depth(&self) -> usize;
    /// `d_i` on level `n`, `i < n`.
    fn face(&self, n: usize, i: usize, e: &Element) -> Result<Element>;
    /// `s_i` on level `n`, `i ≤ n`.
    fn degen(&self, n: usize, i: usize, e: &Element) -> Result<Element>;
}

impl Presheaf for TSimp {
    fn monad(&self) -> &MonadSpec {
        &self.monad
    }

    fn depth(&self) -> usize {
        TSimp::depth(self)
    }

    fn face(&self, n: usize, i: usize, e: &Element) -> Result<Element> {
        if i >= n {
            return Err(Error::Index(format!("d_{i} on level {n} is not an inner face")));
        }
        TSimp::face(self, n, i, e)
    }

    fn degen(&self, n: usize, i: usize, e: &Element) -> Result<Element> {
        TSimp::degen(self, n, i, e)
    }
}

pub fn require_finite(t: &MonadSpec) -> Result<()> {
    if t.preserves_finite() {
        Ok(())
    } else {
        Err(Error::Capability(t.name()))
    }
}

/// `K(X)_n` for a sequence of finite sets.
pub fn k_levels(levels: &[FiniteSet], t: &MonadSpec) -> Result<Vec<FiniteSet>> {
    require_finite(t)?;
    let mut out: Vec<FiniteSet> = Vec::with_capacity(levels.len());
    for (n, xn) in levels.iter().enumerate() {
        if n == 0 {
            out.push(xn.clone());
            continue;
        }
        let tk = t.enumerate(&out[n - 1])?;
        out.push(FiniteSet::new(xn.iter().flat_map(|x| tk.iter().map(move |u| Element::pair(x.clone(), u.clone())))));
    }
    Ok(out)
}

/// `ε_n`.
pub fn counit(n: usize, k: &Element) -> Result<Element> {
    if n == 0 {
        Ok(k.clone())
    } else {
        k.proj(0).cloned()
    }
}

/// `δ_n: K(X)_n → KK(X)_n`.
pub fn comult(t: &MonadSpec, n: usize, k: &Element) -> Result<Element> {
    if n == 0 {
        return Ok(k.clone());
    }
    let rest = t.fmap(k.proj(1)?, &mut |u| comult(t, n - 1, u))?;
    Ok(Element::pair(k.clone(), rest))
}

/// `K(f)_n` for a family `f_n: X_n → Y_n`.
pub fn k_map(t: &MonadSpec, n: usize, k: &Element, f: &mut dyn FnMut(usize, &Element) -> Result<Element>) -> Result<Element> {
    if n == 0 {
        return f(0, k);
    }
    let head = f(n, k.proj(0)?)?;
    let rest = t.fmap(k.proj(1)?, &mut |u| k_map(t, n - 1, u, f))?;
    Ok(Element::pair(head, rest))
}

/// The lift `K̂P`.
pub struct KHat<'a> {
    pub base: &'a dyn Presheaf,
}

impl Presheaf for KHat<'_> {
    fn monad(&self) -> &MonadSpec {
        self.base.monad()
    }

    fn depth(&self) -> usize {
        self.base.depth()
    }

    fn face(&self, n: usize, i: usize, k: &Element) -> Result<Element> {
        let t = self.monad();
        if i >= n {
            return Err(Error::Index(format!("d_{i} on level {n} is not an inner face")));
        }
        let x = k.proj(0)?;
        if n == 1 {
            return self.base.face(1, 0, x);
        }
        let head = self.base.face(n, i, x)?;
        let rest = if i == n - 1 {
            t.mult(&t.fmap(k.proj(1)?, &mut |u| u.proj(1).cloned())?)?
        } else {
            t.fmap(k.proj(1)?, &mut |u| self.face(n - 1, i, u))?
        };
        Ok(Element::pair(head, rest))
    }

    fn degen(&self, n: usize, i: usize, k: &Element) -> Result<Element> {
        let t = self.monad();
        if i == n {
            return Ok(Element::pair(self.base.degen(n, n, &counit(n, k)?)?, t.unit(k)));
        }
        let head = self.base.degen(n, i, k.proj(0)?)?;
        let rest = t.fmap(k.proj(1)?, &mut |u| self.degen(n - 1, i, u))?;
        Ok(Element::pair(head, rest))
    }
}

/// `K̂P` materialized as a presheaf.
pub fn lift_k(p: &TSimp) -> Result<TSimp> {
    let levels = k_levels(&p.levels, &p.monad)?;
    let hat = KHat { base: p };
    let depth = p.depth();
    let mut faces = vec![vec![]];
    for n in 1..=depth {
        let mut row: Vec<Option<Table>> = (0..n).map(|i| tabulate(&levels[n], |k| hat.face(n, i, k)).map(Some)).collect::<Result<_>>()?;
        row.push(None);
        faces.push(row);
    }
    let degens = (0..depth)
        .map(|n| (0..=n).map(|i| tabulate(&levels[n], |k| hat.degen(n, i, k)).map(Some)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    TSimp::new(format!("K̂({})", p.name), p.monad.clone(), levels, faces, degens)
}

/// A failed instance of a law or naturality square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: String,
    pub n: usize,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComonadReport {
    pub checked: usize,
    /// Failed identities of the materialized `K̂X`.
    pub lifted_identity_violations: usize,
    pub violations: Vec<LawViolation>,
}

impl ComonadReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.lifted_identity_violations == 0
    }

    fn record(&mut self, law: &str, n: usize, e: &Element, l: Result<Element>, r: Result<Element>) {
        self.checked += 1;
        let witness = match (l, r) {
            (Ok(a), Ok(b)) if a == b => return,
            (Ok(a), Ok(b)) => format!("at {e}: {a} ≠ {b}"),
            (Err(err), _) | (_, Err(err)) => format!("at {e}: {err}"),
        };
        self.violations.push(LawViolation { law: law.into(), n, witness });
    }
}

/// Checks the comonad laws on every element of `K(X)_n`, naturality of `ε` and `δ` as presheaf
/// maps, and the presheaf identities of `K̂X`.
pub fn check_comonad_laws(x: &TSimp) -> Result<ComonadReport> {
    let p = x.restrict();
    let t = &p.monad;
    let lifted = lift_k(&p)?;
    let mut r = ComonadReport { lifted_identity_violations: check_sa_axioms(&lifted).violations.len(), ..Default::default() };
    let hat = KHat { base: &p };
    let hathat = KHat { base: &hat };
    let depth = p.depth();
    for n in 0..=depth {
        for k in lifted.levels[n].iter() {
            let d = comult(t, n, k);
            r.record("counit∘comult", n, k, d.clone().and_then(|d| counit(n, &d)), Ok(k.clone()));
            r.record("K(counit)∘comult", n, k, d.clone().and_then(|d| k_map(t, n, &d, &mut |m, u| counit(m, u))), Ok(k.clone()));
            r.record(
                "coassociativity",
                n,
                k,
                d.clone().and_then(|d| k_map(t, n, &d, &mut |m, u| comult(t, m, u))),
                d.clone().and_then(|d| comult(t, n, &d)),
            );
            for i in 0..n {
                r.record("counit/face", n, k, hat.face(n, i, k).and_then(|f| counit(n - 1, &f)), counit(n, k).and_then(|e| p.face(n, i, &e)));
                r.record(
                    "comult/face",
                    n,
                    k,
                    hat.face(n, i, k).and_then(|f| comult(t, n - 1, &f)),
                    d.clone().and_then(|d| hathat.face(n, i, &d)),
                );
            }
            if n < depth {
                for i in 0..=n {
                    r.record("counit/degeneracy", n, k, hat.degen(n, i, k).and_then(|s| counit(n + 1, &s)), counit(n, k).and_then(|e| p.degen(n, i, &e)));
                    r.record(
                        "comult/degeneracy",
                        n,
                        k,
                        hat.degen(n, i, k).and_then(|s| comult(t, n + 1, &s)),
                        d.clone().and_then(|d| hathat.degen(n, i, &d)),
                    );
                }
            }
        }
    }
    Ok(r)
}

/// A `K̂`-coalgebra: a presheaf with `ζ_n: X_n → K(X)_n`.
#[derive(Clone, Debug)]
pub struct CoalgebraData {
    pub carrier: TSimp,
    pub zeta: Vec<Table>,
}

/// Which generating map a naturality square belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum NaturalityCase {
    /// The last inner face `d_{n-1}` on level `n`.
    #[serde(rename = "delta")]
    Delta,
    /// The last degeneracy `s_n` on level `n`.
    #[serde(rename = "sigma")]
    Sigma,
    /// Faces and degeneracies of the form `φ + 1`.
    #[serde(rename = "phi+1")]
    PhiPlusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityViolation {
    pub case: NaturalityCase,
    /// `"d"` or `"s"`.
    pub map: &'static str,
    pub n: usize,
    pub i: usize,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoalgebraReport {
    pub checked: usize,
    pub counit: Vec<LawViolation>,
    pub coassociativity: Vec<LawViolation>,
    pub naturality: Vec<NaturalityViolation>,
}

impl CoalgebraReport {
    pub fn passed(&self) -> bool {
        self.counit.is_empty() && self.coassociativity.is_empty() && self.naturality.is_empty()
    }

    pub fn cases(&self) -> Vec<NaturalityCase> {
        let mut c: Vec<_> = self.naturality.iter().map(|v| v.case).collect();
        c.sort();
        c.dedup();
        c
    }
}

/// `ζ_0 = 1`, `ζ_{n+1} = (1, T ζ_n ∘ d_{n+1})`.
pub fn tsimp_to_coalgebra(x: &TSimp) -> Result<CoalgebraData> {
    require_finite(&x.monad)?;
    let mut zeta: Vec<Table> = Vec::new();
    for n in 0..=x.depth() {
        let z = if n == 0 {
            tabulate(&x.levels[0], |e| Ok(e.clone()))?
        } else {
            let prev = zeta[n - 1].clone();
            tabulate(&x.levels[n], |e| Ok(Element::pair(e.clone(), x.tface_with(n, e, &prev)?)))?
        };
        zeta.push(z);
    }
    Ok(CoalgebraData { carrier: x.restrict(), zeta })
}

impl TSimp {
    /// `T g ∘ d_n` at `e`.
    fn tface_with(&self, n: usize, e: &Element, g: &Table) -> Result<Element> {
        self.monad.fmap(&TSimp::face(self, n, n, e)?, &mut |u| lookup(g, u))
    }
}

/// Counit and coassociativity of `ζ`, and naturality `K̂ ∘ ζ = ζ ∘ X` on every generating map.
pub fn check_coalgebra(c: &CoalgebraData) -> Result<CoalgebraReport> {
    let x = &c.carrier;
    let t = &x.monad;
    require_finite(t)?;
    let hat = KHat { base: x };
    let z = |n: usize, e: &Element| -> Result<Element> { lookup(&c.zeta[n], e) };
    let mut r = CoalgebraReport::default();
    let depth = x.depth();
    let mismatch = |l: Result<Element>, rr: Result<Element>, e: &Element| -> Option<String> {
        match (l, rr) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(a), Ok(b)) => Some(format!("at {e}: {a} ≠ {b}")),
            (Err(err), _) | (_, Err(err)) => Some(format!("at {e}: {err}")),
        }
    };
    for n in 0..=depth {
        for e in x.levels[n].iter() {
            let ze = z(n, e);
            r.checked += 2;
            if let Some(w) = mismatch(ze.clone().and_then(|k| counit(n, &k)), Ok(e.clone()), e) {
                r.counit.push(LawViolation { law: "counit∘ζ".into(), n, witness: w });
            }
            let left = ze.clone().and_then(|k| k_map(t, n, &k, &mut |m, u| z(m, u)));
            let right = ze.clone().and_then(|k| comult(t, n, &k));
            if let Some(w) = mismatch(left, right, e) {
                r.coassociativity.push(LawViolation { law: "K(ζ)∘ζ = δ∘ζ".into(), n, witness: w });
            }
            for i in 0..n {
                r.checked += 1;
                let case = if i + 1 == n { NaturalityCase::Delta } else { NaturalityCase::PhiPlusOne };
                let l = ze.clone().and_then(|k| hat.face(n, i, &k));
                let rr = Presheaf::face(x, n, i, e).and_then(|f| z(n - 1, &f));
                if let Some(w) = mismatch(l, rr, e) {
                    r.naturality.push(NaturalityViolation { case, map: "d", n, i, witness: w });
                }
            }
            if n < depth {
                for i in 0..=n {
                    r.checked += 1;
                    let case = if i == n { NaturalityCase::Sigma } else { NaturalityCase::PhiPlusOne };
                    let l = ze.clone().and_then(|k| hat.degen(n, i, &k));
                    let rr = Presheaf::degen(x, n, i, e).and_then(|s| z(n + 1, &s));
                    if let Some(w) = mismatch(l, rr, e) {
                        r.naturality.push(NaturalityViolation { case, map: "s", n, i, witness: w });
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Recovers the last faces `d_{n+1} = T ε_n ∘ π_2 ∘ ζ_{n+1}` after checking the coalgebra.
pub fn coalgebra_to_tsimp(c: &CoalgebraData) -> Result<TSimp> {
    let report = check_coalgebra(c)?;
    if let Some(v) = report.naturality.first() {
        return Err(Error::Invalid(format!("ζ is not natural ({:?} case, {}_{} on level {}): {}", v.case, v.map, v.i, v.n, v.witness)));
    }
    if let Some(v) = report.counit.first().or(report.coassociativity.first()) {
        return Err(Error::Invalid(format!("{} fails on level {}: {}", v.law, v.n, v.witness)));
    }
    let x = &c.carrier;
    let t = &x.monad;
    let mut faces = x.faces.clone();
    for n in 1..=x.depth() {
        let last = tabulate(&x.levels[n], |e| {
            let k = lookup(&c.zeta[n], e)?;
            t.fmap(k.proj(1)?, &mut |u| counit(n - 1, u))
        })?;
        faces[n][n] = Some(last);
    }
    TSimp::new(x.name.clone(), t.clone(), x.levels.clone(), faces, x.degens.clone())
}

/// Replaces `d_n(e)` by `v`.
pub fn with_last_face(x: &TSimp, n: usize, e: &Element, v: Element) -> Result<TSimp> {
    let mut y = x.clone();
    let table = y.faces[n][n].as_ref().ok_or_else(|| Error::Invalid(format!("no last face on level {n}")))?;
    let mut m: BTreeMap<Element, Element> = (**table).clone();
    if m.insert(e.clone(), v).is_none() {
        return Err(Error::NotInDomain(e.to_string()));
    }
    y.faces[n][n] = Some(Arc::new(m));
    TSimp::new(y.name, y.monad, y.levels, y.faces, y.degens)
}

/// Structural equality of levels and structure maps.
pub fn same_structure(a: &TSimp, b: &TSimp) -> bool {
    a.levels == b.levels && a.faces == b.faces && a.degens == b.degens && a.monad.name() == b.monad.name()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::Monoid;
    use crate::nerve::nerve;
    use crate::tcat::{bar_resolution, point_algebra, FiniteCategory};

    fn z2() -> MonadSpec {
        MonadSpec::writer(Monoid::z2())
    }

    fn interval(depth: usize) -> TSimp {
        nerve(&FiniteCategory::ordinal(1).to_tcat("[1]").unwrap(), depth).unwrap()
    }

    fn bar(depth: usize) -> TSimp {
        let (pt, act) = point_algebra(&z2()).unwrap();
        bar_resolution(&pt, &act, &z2(), depth).unwrap()
    }

    #[test]
    fn level_counts() {
        let one = vec![FiniteSet::atoms(&["*"]); 4];
        assert_eq!(k_levels(&one, &MonadSpec::identity()).unwrap().iter().map(FiniteSet::len).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert_eq!(k_levels(&one, &z2()).unwrap().iter().map(FiniteSet::len).collect::<Vec<_>>(), vec![1, 2, 4, 8]);
        let mixed = vec![FiniteSet::atoms(&["a", "b"]), FiniteSet::atoms(&["c", "d", "e"]), FiniteSet::atoms(&["f"])];
        assert_eq!(k_levels(&mixed, &MonadSpec::identity()).unwrap().iter().map(FiniteSet::len).collect::<Vec<_>>(), vec![2, 6, 6]);
        assert!(matches!(k_levels(&one, &MonadSpec::list()), Err(Error::Capability(_))));
    }

    #[test]
    fn counit_and_comult_basics() {
        let k = Element::pair(Element::atom("x"), Element::atom("t"));
        assert_eq!(counit(1, &k).unwrap(), Element::atom("x"));
        assert_eq!(comult(&z2(), 0, &Element::atom("a")).unwrap(), Element::atom("a"));
    }

    #[test]
    fn laws_on_interval_and_bar() {
        for x in [interval(3), bar(3)] {
            let r = check_comonad_laws(&x).unwrap();
            assert!(r.passed(), "{:?}", r.violations.first());
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn lifted_presheaf_identities() {
        for x in [interval(3), bar(3)] {
            let l = lift_k(&x.restrict()).unwrap();
            let rep = check_sa_axioms(&l);
            assert!(rep.passed(), "{:?}", rep.violations.first());
            assert!(l.is_presheaf());
        }
    }

    #[test]
    fn roundtrips() {
        for x in [interval(3), bar(3)] {
            let c = tsimp_to_coalgebra(&x).unwrap();
            assert!(check_coalgebra(&c).unwrap().passed());
            let back = coalgebra_to_tsimp(&c).unwrap();
            assert!(same_structure(&back, &x));
            let again = tsimp_to_coalgebra(&back).unwrap();
            assert_eq!(again.zeta, c.zeta);
        }
    }

    #[test]
    fn zeta_on_identity_monad_iterates_faces() {
        let x = interval(2);
        let c = tsimp_to_coalgebra(&x).unwrap();
        for e in x.levels[2].iter() {
            let d2 = TSimp::face(&x, 2, 2, e).unwrap();
            let d1d2 = TSimp::face(&x, 1, 1, &d2).unwrap();
            assert_eq!(lookup(&c.zeta[2], e).unwrap(), Element::pair(e.clone(), Element::pair(d2, d1d2)));
        }
    }

    #[test]
    fn corrupted_last_face_breaks_the_delta_square() {
        let x = nerve(&FiniteCategory::ordinal(2).to_tcat("[2]").unwrap(), 3).unwrap();
        let a = |i: &str, j: &str| Element::pair(Element::atom(i), Element::atom(j));
        // the non-degenerate 2-simplex (1,2) after (0,1); its last face becomes (1,1)
        let z = Element::pair(a("1", "2"), a("0", "1"));
        let bad = with_last_face(&x, 2, &z, a("1", "1")).unwrap();
        let r = check_coalgebra(&tsimp_to_coalgebra(&bad).unwrap()).unwrap();
        assert!(r.naturality.iter().any(|v| v.case == NaturalityCase::Delta && v.n == 2), "{:?}", r.naturality);
        assert!(coalgebra_to_tsimp(&tsimp_to_coalgebra(&bad).unwrap()).is_err());
    }

    #[test]
    fn naturality_matches_identities_under_mutation() {
        for x in [interval(3), bar(3)] {
            for n in 1..=3 {
                let tprev = x.monad.enumerate(&x.levels[n - 1]).unwrap();
                for e in x.levels[n].iter() {
                    let old = TSimp::face(&x, n, n, e).unwrap();
                    for v in tprev.iter().filter(|v| **v != old) {
                        let bad = with_last_face(&x, n, e, v.clone()).unwrap();
                        let natural = check_coalgebra(&tsimp_to_coalgebra(&bad).unwrap()).unwrap().passed();
                        let sa = check_sa_axioms(&bad);
                        let squares = ["SA2/i=0", "SA2/i>0", "SA3", "SA7", "SA9"].iter().all(|f| sa.family_passed(f));
                        assert_eq!(natural, squares, "level {n}, {e} ↦ {v}");
                    }
                }
            }
        }
    }
}
