//! Truncated T-simplicial objects, the nerve of a T-category, the identities SA1–SA9,
//! the Segal condition, the structure ladder and the truncation adjoints `C_n`, `D_n`.
//!
//! Nerve levels `X_n` for `n ≥ 2` have elements `(x, t)` with `x ∈ X_{n-1}` and
//! `t ∈ TX_{n-1}`; `d_0` and `d_n` are the two projections.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monad::{kleisli_compose, KleisliMorph, MonadSpec};
use crate::sets::{
    finite_limit, lookup, pullback_verdict, tabulate, Diagram, Element, FiberOracle, FiniteSet, Morph, PullbackVerdict,
    SetObj, Square, Table,
};
use crate::simplex::{compose, enumerate_hom, SimplexMap, Which};
use crate::tcat::{invert, pullback_along, TCatData};

/// A T-simplicial object truncated at `depth`, or a `Δ_r`-presheaf when the last faces
/// are absent. Missing structure maps are `None`.
#[derive(Clone, Debug)]
pub struct TSimp {
    pub name: String,
    pub monad: MonadSpec,
    pub levels: Vec<FiniteSet>,
    /// `faces[n][i]` for `1 ≤ n`, `i ≤ n`; `faces[n][n]` is the last face into `TX_{n-1}`.
    pub faces: Vec<Vec<Option<Table>>>,
    /// `degens[n][i]: X_n → X_{n+1}` for `n < depth`, `i ≤ n`.
    pub degens: Vec<Vec<Option<Table>>>,
}

impl TSimp {
    pub fn new(
        name: String,
        monad: MonadSpec,
        levels: Vec<FiniteSet>,
        faces: Vec<Vec<Option<Table>>>,
        degens: Vec<Vec<Option<Table>>>,
    ) -> Result<Self> {
        let x = TSimp { name, monad, levels, faces, degens };
        x.validate_shape()?;
        Ok(x)
    }

    fn validate_shape(&self) -> Result<()> {
        let depth = self.depth();
        if self.faces.len() != depth + 1 || self.degens.len() != depth {
            return Err(Error::Invalid("structure map families do not match the depth".into()));
        }
        for n in 1..=depth {
            if self.faces[n].len() != n + 1 {
                return Err(Error::Invalid(format!("level {n} needs {} faces", n + 1)));
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                let Some(f) = f else { continue };
                for x in self.levels[n].iter() {
                    let y = lookup(f, x)?;
                    let ok = if i < n {
                        self.levels[n - 1].contains(&y)
                    } else {
                        self.monad.contains(&y, &|e| self.levels[n - 1].contains(e))
                    };
                    if !ok {
                        return Err(Error::Invalid(format!("d_{i}({x}) = {y} is outside the target at level {n}")));
                    }
                }
            }
        }
        for n in 0..depth {
            if self.degens[n].len() != n + 1 {
                return Err(Error::Invalid(format!("level {n} needs {} degeneracies", n + 1)));
            }
            for (i, s) in self.degens[n].iter().enumerate() {
                let Some(s) = s else { continue };
                for x in self.levels[n].iter() {
                    let y = lookup(s, x)?;
                    if !self.levels[n + 1].contains(&y) {
                        return Err(Error::Invalid(format!("s_{i}({x}) = {y} is outside level {}", n + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FiniteSet {
        &self.levels[n]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(FiniteSet::len).collect()
    }

    pub fn has_face(&self, n: usize, i: usize) -> bool {
        n >= 1 && n <= self.depth() && i <= n && self.faces[n][i].is_some()
    }

    pub fn has_degen(&self, n: usize, i: usize) -> bool {
        n < self.depth() && i <= n && self.degens[n][i].is_some()
    }

    pub fn is_presheaf(&self) -> bool {
        (1..=self.depth()).all(|n| self.faces[n][n].is_none())
    }

    fn face_table(&self, n: usize, i: usize) -> Result<&Table> {
        self.faces
            .get(n)
            .and_then(|f| f.get(i))
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::Invalid(format!("{}: no face d_{i} on level {n}", self.name)))
    }

    fn degen_table(&self, n: usize, i: usize) -> Result<&Table> {
        self.degens
            .get(n)
            .and_then(|f| f.get(i))
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::Invalid(format!("{}: no degeneracy s_{i} on level {n}", self.name)))
    }

    /// `d_i` on `X_n`; for `i = n` the value lies in `TX_{n-1}`.
    pub fn face(&self, n: usize, i: usize, x: &Element) -> Result<Element> {
        lookup(self.face_table(n, i)?, x)
    }

    pub fn degen(&self, n: usize, i: usize, x: &Element) -> Result<Element> {
        lookup(self.degen_table(n, i)?, x)
    }

    /// `T d_i` on `TX_n`.
    pub fn tface(&self, n: usize, i: usize, t: &Element) -> Result<Element> {
        let f = self.face_table(n, i)?;
        self.monad.fmap(t, &mut |x| lookup(f, x))
    }

    pub fn tdegen(&self, n: usize, i: usize, t: &Element) -> Result<Element> {
        let s = self.degen_table(n, i)?;
        self.monad.fmap(t, &mut |x| lookup(s, x))
    }

    /// The underlying `Δ_r`-presheaf: the last faces are dropped.
    pub fn restrict(&self) -> TSimp {
        let mut r = self.clone();
        for n in 1..=r.depth() {
            r.faces[n][n] = None;
        }
        r
    }

    /// The truncation at `depth ≤ self.depth()`.
    pub fn truncate(&self, depth: usize) -> TSimp {
        TSimp {
            name: self.name.clone(),
            monad: self.monad.clone(),
            levels: self.levels[..=depth].to_vec(),
            faces: self.faces[..=depth].to_vec(),
            degens: self.degens[..depth].to_vec(),
        }
    }

    /// Truncates at `n` and removes `x` from `X_n`. Fails when `x` is degenerate.
    pub fn without_element(&self, n: usize, x: &Element) -> Result<TSimp> {
        let mut r = self.truncate(n);
        for i in 0..n {
            if let Some(s) = &r.degens[n - 1][i] {
                if s.values().any(|v| v == x) {
                    return Err(Error::Invalid(format!("{x} is degenerate")));
                }
            }
        }
        r.levels[n] = r.levels[n].without(x);
        for f in r.faces[n].iter_mut().flatten() {
            let mut t = (**f).clone();
            t.remove(x);
            *f = Arc::new(t);
        }
        Ok(r)
    }

    /// Elements of `X_n` not in the image of any degeneracy.
    pub fn nondegenerate(&self, n: usize) -> Vec<Element> {
        let mut image = BTreeSet::new();
        if n >= 1 {
            for s in self.degens[n - 1].iter().flatten() {
                image.extend(s.values().cloned());
            }
        }
        self.levels[n].iter().filter(|x| !image.contains(*x)).cloned().collect()
    }

    /// `T(X_n)` as an object.
    pub fn t_level(&self, n: usize) -> Result<SetObj> {
        self.monad.on_obj(&self.levels[n].clone().into())
    }
}

/// Face pairs of the nerve above level 1 from the composition and unit.
pub fn nerve(data: &TCatData, depth: usize) -> Result<TSimp> {
    let g = &data.graph;
    let t = g.monad.clone();
    let mut x = TSimp {
        name: data.name.clone(),
        monad: t.clone(),
        levels: vec![g.x0.clone()],
        faces: vec![Vec::new()],
        degens: Vec::new(),
    };
    if depth >= 1 {
        x.levels.push(g.x1.clone());
        x.faces.push(vec![Some(g.d0.clone()), Some(g.d1.clone())]);
    }
    for n in 2..=depth {
        let oracle = t.lift_fiber(&invert(x.face_table(n - 1, 0)?));
        let level = pullback_along(&x.levels[n - 1], x.face_table(n - 1, n - 1)?, &oracle)?;
        let mut faces: Vec<Option<Table>> = vec![None; n + 1];
        faces[0] = Some(tabulate(&level, |e| e.proj(0).cloned())?);
        faces[n] = Some(tabulate(&level, |e| e.proj(1).cloned())?);
        for i in 1..n {
            let table = if n == 2 {
                data.comp.clone()
            } else if !x.has_face(n - 1, i - 1) || !x.has_face(n - 1, i) {
                None
            } else {
                let target = &x.levels[n - 1];
                Some(tabulate(&level, |e| {
                    let (y, tt) = (e.proj(0)?, e.proj(1)?);
                    let first = x.face(n - 1, i - 1, y)?;
                    let second = if i < n - 1 { x.tface(n - 1, i, tt)? } else { t.mult(&x.tface(n - 1, i, tt)?)? };
                    let v = Element::pair(first, second);
                    if !target.contains(&v) {
                        return Err(Error::Invalid(format!("d_{i}({e}) = {v} is not in level {}", n - 1)));
                    }
                    Ok(v)
                })?)
            };
            faces[i] = table;
        }
        x.levels.push(level);
        x.faces.push(faces);
    }
    for n in 0..depth {
        let mut ds: Vec<Option<Table>> = vec![None; n + 1];
        if data.unit.is_some() {
            let target = x.levels[n + 1].clone();
            let check = |v: Element, e: &Element, i: usize| -> Result<Element> {
                if target.contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::Invalid(format!("s_{i}({e}) = {v} is not in level {}", n + 1)))
                }
            };
            if n == 0 {
                ds[0] = data.unit.clone();
            } else {
                for (i, slot) in ds.iter_mut().enumerate() {
                    *slot = Some(tabulate(&x.levels[n], |e| {
                        let last = x.face(n, n, e)?;
                        let v = if i == 0 {
                            Element::pair(e.clone(), x.tdegen(n - 1, 0, &last)?)
                        } else if i < n {
                            Element::pair(x.degen(n - 1, i - 1, &x.face(n, 0, e)?)?, x.tdegen(n - 1, i, &last)?)
                        } else {
                            Element::pair(x.degen(n - 1, n - 1, &x.face(n, 0, e)?)?, t.unit(e))
                        };
                        check(v, e, i)
                    })?);
                }
            }
        }
        x.degens.push(ds);
    }
    x.validate_shape()?;
    Ok(x)
}

/// A failed instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub family: &'static str,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub witness: String,
}

/// Outcome of checking SA1–SA9.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SaReport {
    /// Instances checked per family.
    pub checked: BTreeMap<&'static str, usize>,
    pub violations: Vec<Violation>,
}

impl SaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn family_passed(&self, family: &str) -> bool {
        !self.violations.iter().any(|v| v.family == family)
    }

    pub fn family_checked(&self, family: &str) -> usize {
        self.checked.get(family).copied().unwrap_or(0)
    }

    pub fn failing_families(&self) -> BTreeSet<&'static str> {
        self.violations.iter().map(|v| v.family).collect()
    }
}

/// All identity families, in the order they are reported.
pub const FAMILIES: [&str; 15] = [
    "SA1/i=0",
    "SA1/far",
    "SA1/adjacent",
    "SA2/i=0",
    "SA2/i>0",
    "SA3",
    "SA4",
    "SA5/i=0",
    "SA5/i>0",
    "SA6/(0,0)",
    "SA6/other",
    "SA7",
    "SA8",
    "SA9",
    "SA-typing",
];

struct Checker {
    report: SaReport,
}

impl Checker {
    fn record(
        &mut self,
        axiom: &'static str,
        family: &'static str,
        (n, i, j): (usize, usize, usize),
        e: &Element,
        lhs: Result<Element>,
        rhs: Result<Element>,
    ) {
        *self.report.checked.entry(family).or_default() += 1;
        let witness = match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => return,
            (Ok(l), Ok(r)) => format!("at {e}: {l} ≠ {r}"),
            (Err(err), _) | (_, Err(err)) => format!("at {e}: {err}"),
        };
        self.report.violations.push(Violation { axiom, family, n, i, j, witness });
    }
}

/// Checks SA1–SA9 elementwise for every index combination whose maps are present.
pub fn check_sa_axioms(x: &TSimp) -> SaReport {
    let mut c = Checker { report: SaReport::default() };
    let t = &x.monad;
    let depth = x.depth();
    for n in 0..=depth {
        let level = x.levels[n].elements().to_vec();
        // SA1
        for i in 0..n {
            for j in i + 1..n {
                if n < 2 || !(x.has_face(n, i) && x.has_face(n, j) && x.has_face(n - 1, j - 1) && x.has_face(n - 1, i)) {
                    continue;
                }
                let family = if i == 0 {
                    "SA1/i=0"
                } else if j - i >= 2 {
                    "SA1/far"
                } else {
                    "SA1/adjacent"
                };
                for e in &level {
                    let l = x.face(n, i, e).and_then(|y| x.face(n - 1, j - 1, &y));
                    let r = x.face(n, j, e).and_then(|y| x.face(n - 1, i, &y));
                    c.record("SA1", family, (n, i, j), e, l, r);
                }
            }
        }
        // SA2
        if n >= 2 {
            for i in 0..=n - 2 {
                if !(x.has_face(n, i) && x.has_face(n - 1, n - 1) && x.has_face(n, n) && x.has_face(n - 1, i)) {
                    continue;
                }
                let family = if i == 0 { "SA2/i=0" } else { "SA2/i>0" };
                for e in &level {
                    let l = x.face(n, i, e).and_then(|y| x.face(n - 1, n - 1, &y));
                    let r = x.face(n, n, e).and_then(|y| x.tface(n - 1, i, &y));
                    c.record("SA2", family, (n, i, 0), e, l, r);
                }
            }
            // SA3
            if x.has_face(n, n - 1) && x.has_face(n - 1, n - 1) && x.has_face(n, n) {
                for e in &level {
                    let l = x.face(n, n - 1, e).and_then(|y| x.face(n - 1, n - 1, &y));
                    let r = x.face(n, n, e).and_then(|y| x.tface(n - 1, n - 1, &y)).and_then(|y| t.mult(&y));
                    c.record("SA3", "SA3", (n, n - 1, 0), e, l, r);
                }
            }
        }
        // SA4: s_{j+1} s_i = s_i s_j, i ≤ j ≤ n
        if n + 2 <= depth {
            for i in 0..=n {
                for j in i..=n {
                    if !(x.has_degen(n, i) && x.has_degen(n + 1, j + 1) && x.has_degen(n, j) && x.has_degen(n + 1, i)) {
                        continue;
                    }
                    for e in &level {
                        let l = x.degen(n, i, e).and_then(|y| x.degen(n + 1, j + 1, &y));
                        let r = x.degen(n, j, e).and_then(|y| x.degen(n + 1, i, &y));
                        c.record("SA4", "SA4", (n, i, j), e, l, r);
                    }
                }
            }
        }
        if n + 1 > depth {
            continue;
        }
        for j in 0..=n {
            if !x.has_degen(n, j) {
                continue;
            }
            for i in 0..=n + 1 {
                if !x.has_face(n + 1, i) {
                    continue;
                }
                if i < j {
                    // SA5
                    if !(x.has_face(n, i) && x.has_degen(n - 1, j - 1)) {
                        continue;
                    }
                    let family = if i == 0 { "SA5/i=0" } else { "SA5/i>0" };
                    for e in &level {
                        let l = x.degen(n, j, e).and_then(|y| x.face(n + 1, i, &y));
                        let r = x.face(n, i, e).and_then(|y| x.degen(n - 1, j - 1, &y));
                        c.record("SA5", family, (n, i, j), e, l, r);
                    }
                } else if (i == j || i == j + 1) && i != n + 1 {
                    let family = if i == 0 && j == 0 { "SA6/(0,0)" } else { "SA6/other" };
                    for e in &level {
                        let l = x.degen(n, j, e).and_then(|y| x.face(n + 1, i, &y));
                        c.record("SA6", family, (n, i, j), e, l, Ok(e.clone()));
                    }
                } else if i == n + 1 && j == n {
                    for e in &level {
                        let l = x.degen(n, j, e).and_then(|y| x.face(n + 1, i, &y));
                        c.record("SA7", "SA7", (n, i, j), e, l, Ok(t.unit(e)));
                    }
                } else if i == n + 1 {
                    // SA9, j < n
                    if !(x.has_face(n, n) && x.has_degen(n - 1, j)) {
                        continue;
                    }
                    for e in &level {
                        let l = x.degen(n, j, e).and_then(|y| x.face(n + 1, i, &y));
                        let r = x.face(n, n, e).and_then(|y| x.tdegen(n - 1, j, &y));
                        c.record("SA9", "SA9", (n, i, j), e, l, r);
                    }
                } else {
                    // SA8: j + 1 < i < n + 1
                    if !(x.has_face(n, i - 1) && x.has_degen(n - 1, j)) {
                        continue;
                    }
                    for e in &level {
                        let l = x.degen(n, j, e).and_then(|y| x.face(n + 1, i, &y));
                        let r = x.face(n, i - 1, e).and_then(|y| x.degen(n - 1, j, &y));
                        c.record("SA8", "SA8", (n, i, j), e, l, r);
                    }
                }
            }
        }
    }
    c.report
}

/// The Segal square at level `n`: apex `X_n`, legs `d_0` and `d_n`, over `d_{n-1}` and `Td_0`.
pub fn segal_verdict(x: &TSimp, n: usize) -> Result<PullbackVerdict> {
    let apex = x.levels[n].clone();
    let prev: SetObj = x.levels[n - 1].clone().into();
    let t_prev = x.t_level(n - 1)?;
    let t_prev2 = x.t_level(n - 2)?;
    let d0 = x.face_table(n - 1, 0)?.clone();
    let sq = Square {
        to_a: Morph::table(apex.clone(), prev.clone(), x.face_table(n, 0)?.clone())?,
        to_b: Morph::table(apex.clone(), t_prev.clone(), x.face_table(n, n)?.clone())?,
        f: Morph::table(x.levels[n - 1].clone(), t_prev2.clone(), x.face_table(n - 1, n - 1)?.clone())?,
        g: x.monad.on_morph(&Morph::table(x.levels[n - 1].clone(), x.levels[n - 2].clone().into(), d0.clone())?),
        apex,
    };
    let oracle: FiberOracle = x.monad.lift_fiber(&invert(&d0));
    pullback_verdict(&sq, &oracle)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    pub passed: bool,
    /// `(n, verdict)` for each checked level.
    pub levels: Vec<(usize, String)>,
}

pub fn check_segal_report(x: &TSimp) -> Result<SegalReport> {
    if x.depth() < 2 {
        return Err(Error::Depth("the Segal condition needs depth at least 2".into()));
    }
    let mut passed = true;
    let mut levels = Vec::new();
    for n in 2..=x.depth() {
        let v = segal_verdict(x, n)?;
        passed &= v.holds();
        levels.push((
            n,
            match v {
                PullbackVerdict::Pullback => "pullback".to_string(),
                PullbackVerdict::NotInjective(a, b) => format!("not injective: {a} and {b}"),
                PullbackVerdict::NotSurjective(y) => format!("not surjective: {y} missing"),
            },
        ));
    }
    Ok(SegalReport { passed, levels })
}

pub fn check_segal(x: &TSimp) -> Result<bool> {
    Ok(check_segal_report(x)?.passed)
}

/// The levels of the structure ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LadderLevel {
    Graph,
    Magmoid,
    Semicategory,
    ReflexiveGraph,
    ReflexiveMagmoid,
    UnitalMagmoid,
    ReflexiveSemicategory,
    TCategory,
}

impl LadderLevel {
    pub const ALL: [LadderLevel; 8] = [
        LadderLevel::Graph,
        LadderLevel::Magmoid,
        LadderLevel::Semicategory,
        LadderLevel::ReflexiveGraph,
        LadderLevel::ReflexiveMagmoid,
        LadderLevel::UnitalMagmoid,
        LadderLevel::ReflexiveSemicategory,
        LadderLevel::TCategory,
    ];

    /// The identity families that hold at every depth for structures at this level.
    pub fn claims(self) -> Vec<&'static str> {
        let graph = ["SA2/i=0"];
        let magmoid = ["SA1/i=0", "SA1/far", "SA2/i=0", "SA2/i>0", "SA3"];
        let reflexive_graph = ["SA2/i=0", "SA4", "SA5/i=0", "SA6/(0,0)", "SA7", "SA9"];
        let mut v: Vec<&'static str> = match self {
            LadderLevel::Graph => graph.to_vec(),
            LadderLevel::Magmoid => magmoid.to_vec(),
            LadderLevel::Semicategory => [&magmoid[..], &["SA1/adjacent"]].concat(),
            LadderLevel::ReflexiveGraph => reflexive_graph.to_vec(),
            LadderLevel::ReflexiveMagmoid => [&magmoid[..], &reflexive_graph[..], &["SA5/i>0", "SA8"]].concat(),
            LadderLevel::UnitalMagmoid => [&magmoid[..], &reflexive_graph[..], &["SA5/i>0", "SA8", "SA6/other"]].concat(),
            LadderLevel::ReflexiveSemicategory => {
                [&magmoid[..], &reflexive_graph[..], &["SA5/i>0", "SA8", "SA1/adjacent"]].concat()
            }
            LadderLevel::TCategory => FAMILIES[..14].to_vec(),
        };
        v.sort();
        v.dedup();
        v
    }

    pub fn needs_comp(self) -> bool {
        !matches!(self, LadderLevel::Graph | LadderLevel::ReflexiveGraph)
    }

    pub fn needs_unit(self) -> bool {
        matches!(
            self,
            LadderLevel::ReflexiveGraph
                | LadderLevel::ReflexiveMagmoid
                | LadderLevel::UnitalMagmoid
                | LadderLevel::ReflexiveSemicategory
                | LadderLevel::TCategory
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub level: LadderLevel,
    pub passed: bool,
    /// Claimed families that were never instantiated within the depth.
    pub unexercised: Vec<&'static str>,
    pub failures: Vec<Violation>,
}

/// Builds the nerve of a partial structure and checks exactly the identities its
/// ladder level claims.
pub fn derived_identity_suite(data: &TCatData, level: LadderLevel, depth: usize) -> Result<LadderReport> {
    let x = nerve(data, depth)?;
    let report = check_sa_axioms(&x);
    let claims = level.claims();
    let failures: Vec<Violation> = report.violations.iter().filter(|v| claims.contains(&v.family)).cloned().collect();
    let unexercised: Vec<&'static str> = claims.iter().copied().filter(|f| report.family_checked(f) == 0).collect();
    Ok(LadderReport { level, passed: failures.is_empty(), unexercised, failures })
}

/// A morphism of truncated T-simplicial objects, one table per level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TSimpMorphism {
    pub components: Vec<Table>,
}

impl TSimpMorphism {
    pub fn at(&self, n: usize, x: &Element) -> Result<Element> {
        lookup(&self.components[n], x)
    }
}

/// First failing square of a candidate morphism, if any.
pub fn check_morphism(f: &TSimpMorphism, x: &TSimp, y: &TSimp) -> Result<Option<String>> {
    let t = &x.monad;
    let depth = x.depth().min(y.depth());
    for n in 0..=depth {
        for e in x.levels[n].iter() {
            let fe = f.at(n, e)?;
            if !y.levels[n].contains(&fe) {
                return Ok(Some(format!("f_{n}({e}) = {fe} is outside level {n}")));
            }
            for i in 0..=n {
                if n == 0 || !x.has_face(n, i) || !y.has_face(n, i) {
                    continue;
                }
                let l = y.face(n, i, &fe)?;
                let d = x.face(n, i, e)?;
                let r = if i < n { f.at(n - 1, &d)? } else { t.fmap(&d, &mut |v| f.at(n - 1, v))? };
                if l != r {
                    return Ok(Some(format!("d_{i} square at level {n}, element {e}")));
                }
            }
            if n < depth {
                for i in 0..=n {
                    if !x.has_degen(n, i) || !y.has_degen(n, i) {
                        continue;
                    }
                    if y.degen(n, i, &fe)? != f.at(n + 1, &x.degen(n, i, e)?)? {
                        return Ok(Some(format!("s_{i} square at level {n}, element {e}")));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Extends `(f0, f1)` between nerves by `f_n(x, t) = (f_{n-1} x, T f_{n-1} t)`.
pub fn extend_morphism(f0: &Table, f1: &Table, x: &TSimp, y: &TSimp) -> Result<TSimpMorphism> {
    let mut comps = vec![f0.clone(), f1.clone()];
    for n in 2..=x.depth() {
        let prev = comps[n - 1].clone();
        let table = tabulate(&x.levels[n], |e| {
            let v = Element::pair(lookup(&prev, e.proj(0)?)?, x.monad.fmap(e.proj(1)?, &mut |a| lookup(&prev, a))?);
            if y.levels[n].contains(&v) {
                Ok(v)
            } else {
                Err(Error::NoPairing(format!("f_{n}({e}) = {v}")))
            }
        })?;
        comps.push(table);
    }
    comps.truncate(x.depth() + 1);
    Ok(TSimpMorphism { components: comps })
}

/// `d_i s_j x` for `x ∈ X_n` computed from the identities, in `X_n` (or `TX_n` when `i = n + 1`).
fn degenerate_face(x: &TSimp, n: usize, j: usize, i: usize, e: &Element) -> Result<Element> {
    if i < j {
        x.degen(n - 1, j - 1, &x.face(n, i, e)?)
    } else if (i == j || i == j + 1) && i != n + 1 {
        Ok(e.clone())
    } else if i == n + 1 && j == n {
        Ok(x.monad.unit(e))
    } else if i == n + 1 {
        x.tdegen(n - 1, j, &x.face(n, n, e)?)
    } else {
        x.degen(n - 1, j, &x.face(n, i - 1, e)?)
    }
}

/// Vertices of the diagram computing `(C_n X)_{n+1}`: injective `φ: [m] → [n+1]`, `m ∈ {n, n-1}`.
fn coskeletal_vertices(n: usize) -> Vec<SimplexMap> {
    let mut v: Vec<SimplexMap> = enumerate_hom(n, n + 1, Which::Delta).into_iter().filter(SimplexMap::is_injective).collect();
    if n >= 1 {
        v.extend(enumerate_hom(n - 1, n + 1, Which::Delta).into_iter().filter(SimplexMap::is_injective));
    }
    v
}

/// The candidate level `(C_n X)_{n+1}`: elements are tuples indexed by the vertices, in the
/// order of `coskeletal_vertices`, so components `0..=n+1` are the faces `d_{n+1-k}`.
pub fn coskeletal_step(x: &TSimp, n: usize) -> Result<FiniteSet> {
    if !x.monad.preserves_finite() {
        return Err(Error::Capability(x.monad.name()));
    }
    if n > x.depth() {
        return Err(Error::Depth(format!("C_{n} needs level {n}")));
    }
    let verts = coskeletal_vertices(n);
    let mut diagram = Diagram::default();
    for phi in &verts {
        let m = phi.dom();
        let base: SetObj = x.levels[m].clone().into();
        diagram.vertices.push(if phi.is_top_preserving() { base } else { x.t_level(m)? });
    }
    let t = x.monad.clone();
    for (a, phi) in verts.iter().enumerate() {
        let m = phi.dom();
        if m != n || n == 0 {
            continue;
        }
        for k in 0..=m {
            let psi = compose(phi, &SimplexMap::face(m - 1, k)?)?;
            let b = verts.iter().position(|v| *v == psi).expect("faces of faces are vertices");
            let map = match (phi.is_top_preserving(), k == m) {
                (true, _) => Morph::table(x.levels[m].clone(), diagram.vertices[b].clone(), x.face_table(m, k)?.clone())?,
                (false, false) => t.on_morph(&Morph::table(x.levels[m].clone(), x.levels[m - 1].clone().into(), x.face_table(m, k)?.clone())?),
                (false, true) => {
                    let last = x.face_table(m, m)?.clone();
                    let tt = t.clone();
                    Morph::named(
                        "m.T(last face)",
                        diagram.vertices[a].clone(),
                        diagram.vertices[b].clone(),
                        Arc::new(move |e| tt.mult(&tt.fmap(e, &mut |y| lookup(&last, y))?)),
                    )
                }
            };
            diagram.edges.push((a, b, map));
        }
    }
    Ok(finite_limit(&diagram)?.obj)
}

/// Extends a depth-`n` object by `(C_n X)_{n+1}` with its faces and degeneracies.
pub fn coskeletal_extension(x: &TSimp) -> Result<TSimp> {
    let n = x.depth();
    let level = coskeletal_step(x, n)?;
    let verts = coskeletal_vertices(n);
    // face d_k corresponds to the vertex δ_k
    let pos: Vec<usize> = (0..=n + 1)
        .map(|k| verts.iter().position(|v| *v == SimplexMap::face(n, k).expect("valid face")).expect("vertex"))
        .collect();
    let faces = (0..=n + 1).map(|k| tabulate(&level, |e| e.proj(pos[k]).cloned()).map(Some)).collect::<Result<Vec<_>>>()?;
    let mut index: BTreeMap<Vec<Element>, Element> = BTreeMap::new();
    for e in level.iter() {
        let key = pos.iter().map(|&p| e.proj(p).cloned()).collect::<Result<Vec<_>>>()?;
        index.insert(key, e.clone());
    }
    let degens = (0..=n)
        .map(|j| {
            tabulate(&x.levels[n], |e| {
                let key = (0..=n + 1).map(|i| degenerate_face(x, n, j, i, e)).collect::<Result<Vec<_>>>()?;
                index.get(&key).cloned().ok_or_else(|| Error::NoPairing(format!("s_{j}({e}) in C_{n}")))
            })
            .map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = x.clone();
    out.levels.push(level);
    out.faces.push(faces);
    out.degens.push(degens);
    out.validate_shape()?;
    Ok(out)
}

fn find(parent: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = a;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// `(D_n X)_{n+1}` as the quotient of `n+1` copies `(j, x)` of `X_n`, where `(j, x)` stands
/// for `s_j x`, glued along `s_j s_k = s_{j'} s_{k'}` below. Classes are named by their
/// least member. Also returns the class map on the coproduct.
pub fn degenerate_step(x: &TSimp, n: usize) -> Result<(FiniteSet, BTreeMap<Element, Element>)> {
    if n > x.depth() {
        return Err(Error::Depth(format!("D_{n} needs level {n}")));
    }
    let copies: Vec<Element> = (0..=n)
        .flat_map(|j| x.levels[n].iter().map(move |e| Element::pair(Element::atom(&j.to_string()), e.clone())))
        .collect();
    let copies = FiniteSet::new(copies);
    let mut parent: Vec<usize> = (0..copies.len()).collect();
    if n >= 1 {
        // σ_k σ_j: [n+1] → [n-1]; the generator (j, s_k y) sits over it
        let mut by_composite: BTreeMap<SimplexMap, Vec<(usize, usize)>> = BTreeMap::new();
        for j in 0..=n {
            for k in 0..n {
                let tau = compose(&SimplexMap::degeneracy(n - 1, k)?, &SimplexMap::degeneracy(n, j)?)?;
                by_composite.entry(tau).or_default().push((j, k));
            }
        }
        for pairs in by_composite.values() {
            for y in x.levels[n - 1].iter() {
                let idx = |(j, k): (usize, usize)| -> Result<usize> {
                    let el = Element::pair(Element::atom(&j.to_string()), x.degen(n - 1, k, y)?);
                    copies.index_of(&el).ok_or_else(|| Error::Invalid(format!("{el} missing")))
                };
                let first = idx(pairs[0])?;
                for &p in &pairs[1..] {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, idx(p)?));
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut class = BTreeMap::new();
    for (k, e) in copies.iter().enumerate() {
        let r = find(&mut parent, k);
        class.insert(e.clone(), copies.elements()[r].clone());
    }
    let quotient = FiniteSet::new(class.values().cloned());
    Ok((quotient, class))
}

/// Extends a depth-`n` object by `(D_n X)_{n+1}`, checking that faces are well defined on classes.
pub fn degenerate_extension(x: &TSimp) -> Result<TSimp> {
    let n = x.depth();
    let (level, class) = degenerate_step(x, n)?;
    let mut faces: Vec<BTreeMap<Element, Element>> = vec![BTreeMap::new(); n + 2];
    for (member, rep) in &class {
        let j: usize = member.proj(0)?.as_atom().and_then(|s| s.parse().ok()).ok_or_else(|| Error::Invalid("copy index".into()))?;
        let e = member.proj(1)?;
        for (i, face) in faces.iter_mut().enumerate() {
            let v = degenerate_face(x, n, j, i, e)?;
            if let Some(prev) = face.insert(rep.clone(), v.clone()) {
                if prev != v {
                    return Err(Error::Invalid(format!("d_{i} is not well defined on the class of {rep}")));
                }
            }
        }
    }
    let degens = (0..=n)
        .map(|j| {
            tabulate(&x.levels[n], |e| {
                Ok(class[&Element::pair(Element::atom(&j.to_string()), e.clone())].clone())
            })
            .map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = x.clone();
    out.levels.push(level);
    out.faces.push(faces.into_iter().map(|f| Some(Arc::new(f))).collect());
    out.degens.push(degens);
    out.validate_shape()?;
    Ok(out)
}

/// The Kleisli simplicial object: every face as a map `X_n → TX_{n-1}` and every
/// degeneracy as `X_n → TX_{n+1}`.
pub struct KleisliSimplicial {
    pub faces: Vec<Vec<KleisliMorph>>,
    pub degens: Vec<Vec<KleisliMorph>>,
}

pub fn kleisli_underlying(x: &TSimp) -> Result<KleisliSimplicial> {
    let t = x.monad.clone();
    let obj = |n: usize| -> SetObj { x.levels[n].clone().into() };
    let mut faces = vec![Vec::new()];
    for n in 1..=x.depth() {
        let mut fs = Vec::new();
        for i in 0..=n {
            let table = x.face_table(n, i)?.clone();
            let tt = t.clone();
            let last = i == n;
            let body = Morph::named(
                "kleisli face",
                obj(n),
                x.t_level(n - 1)?,
                Arc::new(move |e| {
                    let v = lookup(&table, e)?;
                    Ok(if last { v } else { tt.unit(&v) })
                }),
            );
            fs.push(KleisliMorph { monad: t.clone(), dom: obj(n), cod: obj(n - 1), body });
        }
        faces.push(fs);
    }
    let mut degens = Vec::new();
    for n in 0..x.depth() {
        let mut ds = Vec::new();
        for i in 0..=n {
            let table = x.degen_table(n, i)?.clone();
            let tt = t.clone();
            let body = Morph::named("kleisli degeneracy", obj(n), x.t_level(n + 1)?, Arc::new(move |e| Ok(tt.unit(&lookup(&table, e)?))));
            ds.push(KleisliMorph { monad: t.clone(), dom: obj(n), cod: obj(n + 1), body });
        }
        degens.push(ds);
    }
    Ok(KleisliSimplicial { faces, degens })
}

/// Checks the simplicial identities of the Kleisli simplicial object; returns the failures.
pub fn check_kleisli_identities(x: &TSimp) -> Result<Vec<String>> {
    let k = kleisli_underlying(x)?;
    let depth = x.depth();
    let t = x.monad.clone();
    let mut failures = Vec::new();
    let mut compare = |label: String, n: usize, l: &KleisliMorph, r: &KleisliMorph| -> Result<()> {
        for e in x.levels[n].iter() {
            if l.apply(e)? != r.apply(e)? {
                failures.push(format!("{label} at {e}"));
                return Ok(());
            }
        }
        Ok(())
    };
    for n in 2..=depth {
        for j in 1..=n {
            for i in 0..j {
                let l = kleisli_compose(&k.faces[n - 1][i], &k.faces[n][j])?;
                let r = kleisli_compose(&k.faces[n - 1][j - 1], &k.faces[n][i])?;
                compare(format!("d_{i} d_{j} on level {n}"), n, &l, &r)?;
            }
        }
    }
    for n in 0..depth {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let l = kleisli_compose(&k.faces[n + 1][i], &k.degens[n][j])?;
                let r = if i < j {
                    kleisli_compose(&k.degens[n - 1][j - 1], &k.faces[n][i])?
                } else if i == j || i == j + 1 {
                    KleisliMorph::identity(&t, &x.levels[n].clone().into())?
                } else {
                    kleisli_compose(&k.degens[n - 1][j], &k.faces[n][i - 1])?
                };
                compare(format!("d_{i} s_{j} on level {n}"), n, &l, &r)?;
            }
        }
    }
    for n in 0..depth.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let l = kleisli_compose(&k.degens[n + 1][j + 1], &k.degens[n][i])?;
                let r = kleisli_compose(&k.degens[n + 1][i], &k.degens[n][j])?;
                compare(format!("s_{j} s_{i} on level {n}"), n, &l, &r)?;
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::Monoid;
    use crate::tcat::{bar_resolution, discrete_tcat, point_algebra, FiniteCategory};

    fn ord_nerve(k: usize, depth: usize) -> TSimp {
        nerve(&FiniteCategory::ordinal(k).to_tcat(&format!("[{k}]")).unwrap(), depth).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        crate::simplex::binomial(n, k)
    }

    #[test]
    fn nerve_of_ordinals_counts_monotone_maps() {
        for k in 0..=2 {
            let x = ord_nerve(k, 4);
            for n in 0..=4 {
                // |Δ(n, k)| = C(n + k + 1, n + 1)
                assert_eq!(x.levels[n].len(), binomial(n + k + 1, n + 1), "[{k}] level {n}");
            }
            assert!(check_sa_axioms(&x).passed(), "{:?}", check_sa_axioms(&x).violations);
            assert!(check_segal(&x).unwrap());
        }
    }

    #[test]
    fn discrete_nerve_is_constant() {
        let e = FiniteSet::atoms(&["a", "b"]);
        for m in [MonadSpec::identity(), MonadSpec::maybe(), MonadSpec::writer(Monoid::z2()), MonadSpec::list()] {
            let x = nerve(&discrete_tcat(&e, &m).unwrap(), 4).unwrap();
            assert_eq!(x.sizes(), vec![2; 5], "{}", m.name());
            assert!(check_sa_axioms(&x).passed());
            assert!(check_segal(&x).unwrap());
        }
    }

    #[test]
    fn bar_resolution_passes() {
        let m = MonadSpec::writer(Monoid::z2());
        let (star, act) = point_algebra(&m).unwrap();
        let bar = bar_resolution(&star, &act, &m, 4).unwrap();
        assert!(check_sa_axioms(&bar).passed());
        assert!(check_segal(&bar).unwrap());
        assert!(check_kleisli_identities(&bar.truncate(3)).unwrap().is_empty());
    }

    #[test]
    fn deletion_breaks_segal() {
        let x = ord_nerve(2, 3);
        let nd = x.nondegenerate(2);
        assert_eq!(nd.len(), 1);
        let y = x.without_element(2, &nd[0]).unwrap();
        assert!(!check_segal(&y).unwrap());
        assert!(x.without_element(2, &x.levels[2].elements()[0]).is_err() || x.nondegenerate(2).contains(&x.levels[2].elements()[0]));
    }

    #[test]
    fn swapped_degeneracy_reports_sa6() {
        let mut x = ord_nerve(1, 3);
        let s = x.degens[1][0].clone().unwrap();
        let mut t = (*s).clone();
        let keys: Vec<_> = t.keys().cloned().collect();
        let (a, b) = (t[&keys[0]].clone(), t[&keys[1]].clone());
        t.insert(keys[0].clone(), b);
        t.insert(keys[1].clone(), a);
        x.degens[1][0] = Some(Arc::new(t));
        let r = check_sa_axioms(&x);
        assert!(r.violations.iter().any(|v| v.axiom == "SA6"), "{:?}", r.violations);
    }

    #[test]
    fn coskeletal_and_degenerate_steps() {
        let m = MonadSpec::writer(Monoid::z2());
        let pt = nerve(&discrete_tcat(&FiniteSet::atoms(&["*"]), &MonadSpec::identity()).unwrap(), 1).unwrap();
        let mut x0 = pt.truncate(0);
        x0.monad = m;
        assert_eq!(coskeletal_step(&x0, 0).unwrap().len(), 2);

        let (d1, _) = degenerate_step(&pt, 1).unwrap();
        assert_eq!(d1.len(), 1);

        assert_eq!(coskeletal_step(&ord_nerve(1, 1), 1).unwrap().len(), 4);
        assert_eq!(coskeletal_step(&ord_nerve(2, 1), 1).unwrap().len(), 10);
        for k in 0..=2 {
            // nerves of posets are 1-coskeletal; categories are 2-coskeletal
            let x = ord_nerve(k, 3);
            for n in 1..=2 {
                let ext = coskeletal_extension(&x.truncate(n)).unwrap();
                assert_eq!(ext.levels[n + 1].len(), x.levels[n + 1].len());
                assert!(check_sa_axioms(&ext).passed());
            }
        }
    }

    #[test]
    fn degenerate_extension_counts_degenerate_simplices() {
        for k in 0..=2 {
            let x = ord_nerve(k, 3);
            for n in 0..=2 {
                let ext = degenerate_extension(&x.truncate(n)).unwrap();
                let degenerate = x.levels[n + 1].len() - x.nondegenerate(n + 1).len();
                assert_eq!(ext.levels[n + 1].len(), degenerate, "[{k}] n={n}");
                assert!(check_sa_axioms(&ext).passed());
            }
        }
    }

    #[test]
    fn restriction_keeps_only_presheaf_identities() {
        let x = ord_nerve(1, 3).restrict();
        let r = check_sa_axioms(&x);
        assert!(r.passed());
        for fam in ["SA2/i=0", "SA2/i>0", "SA3", "SA7", "SA9"] {
            assert_eq!(r.family_checked(fam), 0, "{fam}");
        }
        for fam in ["SA1/i=0", "SA4", "SA5/i=0", "SA6/(0,0)", "SA8"] {
            assert!(r.family_checked(fam) > 0, "{fam}");
        }
    }

    #[test]
    fn renerving_the_one_truncation_reproduces_the_nerve() {
        let data = FiniteCategory::ordinal(2).to_tcat("[2]").unwrap();
        let x = nerve(&data, 4).unwrap();
        let again = nerve(&data, 1).unwrap();
        let rebuilt = nerve(
            &TCatData {
                name: "again".into(),
                graph: crate::tcat::TGraph::new(
                    again.monad.clone(),
                    again.levels[0].clone(),
                    again.levels[1].clone(),
                    again.faces[1][0].clone().unwrap(),
                    again.faces[1][1].clone().unwrap(),
                )
                .unwrap(),
                comp: x.faces[2][1].clone(),
                unit: x.degens[0][0].clone(),
            },
            4,
        )
        .unwrap();
        assert_eq!(rebuilt.levels, x.levels);
        assert_eq!(rebuilt.faces, x.faces);
        assert_eq!(rebuilt.degens, x.degens);
    }
}
