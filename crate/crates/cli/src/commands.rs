//! One function per subcommand, each filling a report.

use std::collections::{BTreeSet, HashMap};

use serde_json::json;
use tcat_core::comonad::{check_coalgebra, check_comonad_laws, coalgebra_to_tsimp, k_levels, same_structure, tsimp_to_coalgebra};
use tcat_core::document::Workspace;
use tcat_core::error::{Error, Result};
use tcat_core::hom::{
    alpha_to_hat, assemble_hom, compose_one_simplices, enumerate_tfunctors, enumerate_two_cells, hat_to_alpha, hat_to_one_simplex,
    hom_simplices, identity_two_cell, one_simplex_to_hat, validate_hom_simplex, vertical, HomContext, HomSimplex,
};
use tcat_core::monad::MonadSpec;
use tcat_core::nerve::{check_sa_axioms, check_segal_report, derived_identity_suite, nerve, segal_verdict, LadderLevel, TSimp};
use tcat_core::powers::{
    check_power_closure, check_universal_property, copower, delta1_power, hexagons_match_finite_limit, levelwise_isomorphic,
    standard_simplex, verify_universal_simplex,
};
use tcat_core::sets::FiniteSet;
use tcat_core::simplex::Which;
use tcat_core::tcat::{discrete_tcat, FiniteCategory, StructureClass};

use crate::report::Report;

/// Enumeration bound for morphism searches.
const BOUND: usize = 1_000_000;

/// `|K(X)_n|` grows with the product of the lower levels, so law checks stop here.
const COMONAD_DEPTH: usize = 3;

fn sa_check(r: &mut Report, name: &str, x: &TSimp) {
    let sa = check_sa_axioms(x);
    let witness = sa.violations.first().map(|v| format!("{} {} at level {}: {}", v.axiom, v.family, v.n, v.witness));
    r.check(name, sa.passed(), witness);
}

fn levels_of(c: &StructureClass) -> Vec<LadderLevel> {
    let flags = [
        (c.t_graph, LadderLevel::Graph),
        (c.t_magmoid, LadderLevel::Magmoid),
        (c.t_semicategory, LadderLevel::Semicategory),
        (c.reflexive_t_graph, LadderLevel::ReflexiveGraph),
        (c.reflexive_t_magmoid, LadderLevel::ReflexiveMagmoid),
        (c.unital_t_magmoid, LadderLevel::UnitalMagmoid),
        (c.reflexive_t_semicategory, LadderLevel::ReflexiveSemicategory),
        (c.t_category, LadderLevel::TCategory),
    ];
    flags.into_iter().filter(|(b, _)| *b).map(|(_, l)| l).collect()
}

pub fn validate(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    let class = w.tcat.classify()?;
    r.fact("class", serde_json::to_value(class).expect("serializable"));
    for a in w.tcat.check_all()? {
        if a.applicable {
            r.check(format!("{:?}", a.axiom), a.passed, a.witness.clone());
        }
    }
    let x = match w.nerve(depth) {
        Ok(x) => x,
        Err(e @ (Error::Capability(_) | Error::Infinite(_))) => return Err(e),
        Err(e) => {
            r.check("nerve construction", false, Some(e.to_string()));
            return Ok(());
        }
    };
    r.count("nerve", x.sizes());
    sa_check(r, "SA identities of the nerve", &x);
    for level in levels_of(&class) {
        let rep = derived_identity_suite(&w.tcat, level, depth)?;
        let witness = rep.failures.first().map(|v| format!("{} at level {}: {}", v.family, v.n, v.witness));
        r.check(format!("ladder {level:?}"), rep.passed, witness);
    }
    Ok(())
}

pub fn nerve_cmd(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    let x = w.nerve(depth)?;
    r.count("nerve", x.sizes());
    r.count("nondegenerate", (0..=x.depth()).map(|n| x.nondegenerate(n).len()).collect());
    sa_check(r, "SA identities", &x);
    Ok(())
}

pub fn segal(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    let x = w.nerve(depth)?;
    r.count("nerve", x.sizes());
    for (n, verdict) in check_segal_report(&x)?.levels {
        r.check(format!("Segal at level {n}"), verdict == "pullback", Some(verdict));
    }
    Ok(())
}

fn same_monad(a: &Workspace, b: &Workspace) -> Result<()> {
    if a.monad().name() != b.monad().name() {
        return Err(Error::Mismatch(format!("monads {} and {} differ", a.monad().name(), b.monad().name())));
    }
    Ok(())
}

/// Depth used for hom computations: stored components reach level 2, extension reads level 3.
fn hom_depth(depth: usize) -> usize {
    depth.clamp(2, 3)
}

pub fn hom(y: &Workspace, x: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    same_monad(y, x)?;
    let d = hom_depth(depth);
    let (ny, nx) = (y.nerve(d)?, x.nerve(d)?);
    let ctx = HomContext::new(&ny, &nx)?;
    let mut simplices = Vec::new();
    let mut bad = None;
    for k in 0..=2 {
        let level = hom_simplices(&ny, &nx, k, BOUND)?;
        for s in &level {
            let rep = validate_hom_simplex(s, &ctx, d)?;
            if !rep.passed && bad.is_none() {
                bad = rep.witness;
            }
        }
        simplices.push(level);
    }
    r.count("hom simplices", simplices.iter().map(Vec::len).collect());
    r.check("enumerated simplices are natural", bad.is_none(), bad);
    let h = assemble_hom(&format!("hom({}, {})", ny.name, nx.name), &simplices)?;
    let v = segal_verdict(&h, 2)?;
    r.check("Segal at degree 0", v.holds(), Some(format!("{v:?}")));
    Ok(())
}

pub fn two_cells(a: &Workspace, b: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    same_monad(a, b)?;
    let (ta, tb) = (&a.tcat, &b.tcat);
    let fs = enumerate_tfunctors(ta, tb)?;
    r.fact("functors", fs.len());
    let d = hom_depth(depth).max(3);
    let (na, nb) = (nerve(ta, d)?, nerve(tb, d)?);
    let ctx = HomContext::new(&na, &nb)?;
    let mut total = 0;
    let (mut roundtrip, mut simplex, mut units) = (None, None, None);
    for f in &fs {
        for g in &fs {
            for cell in enumerate_two_cells(f, g, ta, tb)? {
                total += 1;
                let hat = alpha_to_hat(&cell, ta, tb)?;
                if hat_to_alpha(&hat, ta, tb)? != cell && roundtrip.is_none() {
                    roundtrip = Some(format!("α ↦ α̂ ↦ α changes the cell {:?}", cell.alpha));
                }
                let s = hat_to_one_simplex(&hat, &na)?;
                let rep = validate_hom_simplex(&s, &ctx, d)?;
                if (!rep.passed || one_simplex_to_hat(&s)? != hat) && simplex.is_none() {
                    simplex = rep.witness.or(Some("the 1-simplex does not give back α̂".into()));
                }
                let (idf, idg) = (identity_two_cell(f, ta, tb)?, identity_two_cell(g, ta, tb)?);
                if (vertical(&cell, &idf, tb)? != cell || vertical(&idg, &cell, tb)? != cell) && units.is_none() {
                    units = Some(format!("identity 2-cells are not units at {:?}", cell.alpha));
                }
            }
        }
    }
    r.fact("two-cells", total);
    r.check("α ↦ α̂ ↦ α is the identity", roundtrip.is_none(), roundtrip);
    r.check("α̂ gives a hom 1-simplex", simplex.is_none(), simplex);
    r.check("identity 2-cells are units", units.is_none(), units);
    Ok(())
}

pub fn compose(y: &Workspace, x: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    same_monad(y, x)?;
    let (ny, nx) = (y.nerve(3.max(hom_depth(depth)))?, x.nerve(3.max(hom_depth(depth)))?);
    let ctx = HomContext::new(&ny, &nx)?;
    let ones = hom_simplices(&ny, &nx, 1, BOUND)?;
    let twos = hom_simplices(&ny, &nx, 2, BOUND)?;
    let index: HashMap<&HomSimplex, usize> = ones.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let ends: Vec<(HomSimplex, HomSimplex)> = ones.iter().map(|a| Ok((a.face(1)?, a.face(0)?))).collect::<Result<_>>()?;
    let mut memo: HashMap<(usize, usize), (HomSimplex, usize)> = HashMap::new();
    let mut comp = |a: usize, b: usize| -> Result<(HomSimplex, usize)> {
        if let Some(hit) = memo.get(&(a, b)) {
            return Ok(hit.clone());
        }
        let (z, ab) = compose_one_simplices(&ctx, &ones[a], &ones[b])?;
        let k = *index.get(&ab).ok_or_else(|| Error::Invalid("a composite is not an enumerated 1-simplex".into()))?;
        memo.insert((a, b), (z.clone(), k));
        Ok((z, k))
    };
    let mut fillers: HashMap<(usize, usize), Vec<&HomSimplex>> = HashMap::new();
    for t in &twos {
        let (d2, d0) = (index.get(&t.face(2)?), index.get(&t.face(0)?));
        if let (Some(&a), Some(&b)) = (d2, d0) {
            fillers.entry((a, b)).or_default().push(t);
        }
    }
    let (mut pairs, mut triples) = (0, 0);
    let (mut oracle, mut unit, mut assoc) = (None, None, None);
    for a in 0..ones.len() {
        let src = index[&ends[a].0.degen(0)?];
        let tgt = index[&ends[a].1.degen(0)?];
        if (comp(src, a)?.1 != a || comp(a, tgt)?.1 != a) && unit.is_none() {
            unit = Some(format!("identities are not units for 1-simplex {a}"));
        }
        for b in (0..ones.len()).filter(|&b| ends[a].1 == ends[b].0) {
            pairs += 1;
            let (z, ab) = comp(a, b)?;
            if fillers.get(&(a, b)).map(Vec::as_slice) != Some(&[&z][..]) && oracle.is_none() {
                oracle = Some(format!("composition {pairs} disagrees with the search"));
            }
            for c in (0..ones.len()).filter(|&c| ends[b].1 == ends[c].0) {
                triples += 1;
                let bc = comp(b, c)?.1;
                if comp(ab, c)?.1 != comp(a, bc)?.1 && assoc.is_none() {
                    assoc = Some(format!("triple {triples} is not associative"));
                }
            }
        }
    }
    r.fact("one-simplices", ones.len());
    r.fact("composable pairs", pairs);
    r.fact("composable triples", triples);
    r.check("Cases 1-4 agree with the search", oracle.is_none(), oracle);
    r.check("unit laws", unit.is_none(), unit);
    r.check("associativity", assoc.is_none(), assoc);
    Ok(())
}

fn samples(t: &MonadSpec, depth: usize) -> Result<Vec<TSimp>> {
    let mut out = Vec::new();
    if t.name() == MonadSpec::identity().name() {
        out.push(nerve(&FiniteCategory::ordinal(0).to_tcat("[0]")?, depth)?);
        out.push(nerve(&FiniteCategory::ordinal(1).to_tcat("[1]")?, depth)?);
    } else {
        out.push(nerve(&discrete_tcat(&FiniteSet::atoms(&["a"]), t)?, depth)?);
    }
    let mut ab = discrete_tcat(&FiniteSet::atoms(&["a", "b"]), t)?;
    ab.name = "discrete{a,b}".into();
    out.push(nerve(&ab, depth)?);
    Ok(out)
}

pub fn power_delta1(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    let x = w.nerve(depth + 1)?;
    let depth = depth.min(x.depth().saturating_sub(1));
    let pw = delta1_power(&x, depth)?;
    r.count("L", pw.l.sizes());
    r.count("G⋔X", pw.power.obj.sizes());
    sa_check(r, "SA identities of L", &pw.l);
    r.check("Segal on L", check_power_closure(&pw)?, Some("L is not Segal".into()));
    r.check("hexagon limits match the finite-limit search", hexagons_match_finite_limit(&pw)?, Some("a hexagon differs".into()));
    let w0 = verify_universal_simplex(&pw, &x)?;
    r.check("(p, q) is a 1-simplex", w0.is_none(), w0);
    let ud = depth.min(2);
    let pw_u = if ud == depth { pw } else { delta1_power(&x, ud)? };
    r.fact("universal property depth", ud);
    for rep in check_universal_property(&pw_u, &x, &samples(w.monad(), ud)?, BOUND)? {
        r.check(
            format!("universal property for {} ({} ↔ {})", rep.sample, rep.morphisms_into_l, rep.one_simplices),
            rep.bijective,
            rep.witness,
        );
    }
    Ok(())
}

pub fn copower_cmd(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    let y = w.nerve(depth)?;
    let c1 = copower(&standard_simplex(1, depth, Which::Delta)?, &y)?;
    r.count("Δ[1]·Y", c1.sizes());
    let expected: Vec<usize> = y.sizes().iter().enumerate().map(|(n, s)| (n + 2) * s).collect();
    r.check("|(Δ[1]·Y)_n| = (n+2)|Y_n|", c1.sizes() == expected, Some(format!("expected {expected:?}")));
    sa_check(r, "SA identities of Δ[1]·Y", &c1);
    let c0 = copower(&standard_simplex(0, depth, Which::Delta)?, &y)?;
    r.check("Δ[0]·Y ≅ Y", levelwise_isomorphic(&c0, &y, BOUND)?, Some("no levelwise bijection".into()));
    Ok(())
}

pub fn comonad(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    if !w.monad().preserves_finite() {
        return Err(Error::Capability(w.monad().name()));
    }
    let depth = depth.min(COMONAD_DEPTH);
    r.fact("comonad depth", depth);
    let x = w.nerve(depth)?;
    r.count("K̂X", k_levels(&x.levels, &x.monad)?.iter().map(FiniteSet::len).collect());
    let laws = check_comonad_laws(&x)?;
    r.fact("law instances", laws.checked);
    let witness = laws.violations.first().map(|v| format!("{} at level {}: {}", v.law, v.n, v.witness));
    r.check("comonad laws and naturality of ε, δ", laws.violations.is_empty(), witness);
    r.check("K̂X satisfies the presheaf identities", laws.lifted_identity_violations == 0, Some(format!("{} violations", laws.lifted_identity_violations)));
    let c = tsimp_to_coalgebra(&x)?;
    let rep = check_coalgebra(&c)?;
    let cases: BTreeSet<String> = rep.naturality.iter().map(|v| format!("{:?}", v.case)).collect();
    let witness = rep.naturality.first().map(|v| format!("{:?} case, {}_{} on level {}: {}", v.case, v.map, v.i, v.n, v.witness));
    r.check("ζ is a coalgebra", rep.passed(), witness.or(Some(format!("{cases:?}"))));
    if rep.passed() {
        let back = coalgebra_to_tsimp(&c)?;
        let again = tsimp_to_coalgebra(&back)?;
        r.check("X ↦ ζ ↦ X is the identity", same_structure(&back, &x), Some("last faces differ".into()));
        r.check("ζ ↦ X ↦ ζ is the identity", again.zeta == c.zeta, Some("ζ differs".into()));
    }
    Ok(())
}

pub fn counts(w: &Workspace, depth: usize, r: &mut Report) -> Result<()> {
    let x = w.nerve(depth)?;
    r.count("nerve", x.sizes());
    r.count("nondegenerate", (0..=x.depth()).map(|n| x.nondegenerate(n).len()).collect());
    r.count("Δ[1]·X", copower(&standard_simplex(1, depth, Which::Delta)?, &x)?.sizes());
    if w.monad().preserves_finite() {
        let t = &x.monad;
        r.count("TX", x.levels.iter().map(|l| t.enumerate(l).map(|s| s.len())).collect::<Result<_>>()?);
        r.count("K̂X", k_levels(&x.levels, t)?.iter().map(FiniteSet::len).collect());
    } else {
        r.fact("TX", json!("infinite"));
    }
    Ok(())
}
