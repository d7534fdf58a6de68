//! The simplex category Δ and its wide subcategory Δ_r of top-preserving maps.
//!
//! An object `[n] = {0 < 1 < … < n}` is written as its index `n`. A map is stored as
//! its dense value sequence, so structural equality is equality of maps.
//!
//! The functor `R = (−)+1` on Δ_r sends `ψ: [m]→[n]` to `ψ+1: [m+1]→[n+1]`, and
//! `U_R` sends an arbitrary `φ: [m]→[n]` of Δ to the top-preserving map
//! `[m+1]→[n+1]` that agrees with `φ` below the new top.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Ordinal = usize;

/// A monotone map `[dom] → [cod]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMap {
    cod: Ordinal,
    values: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Face,
    Degeneracy,
}

/// Which hom-sets `enumerate_hom` lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Delta,
    DeltaR,
}

impl SimplexMap {
    pub fn new(cod: Ordinal, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("a simplex map needs a nonempty domain".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("{values:?} is not monotone")));
        }
        if values.iter().any(|&v| v > cod) {
            return Err(Error::Index(format!("{values:?} leaves [{cod}]")));
        }
        Ok(SimplexMap { cod, values })
    }

    pub fn identity(n: Ordinal) -> Self {
        SimplexMap { cod: n, values: (0..=n).collect() }
    }

    /// δ_i: [n] → [n+1], skipping the value i.
    pub fn face(n: Ordinal, i: usize) -> Result<Self> {
        if i > n + 1 {
            return Err(Error::Index(format!("face δ_{i} out of [{n}]→[{}]", n + 1)));
        }
        let values = (0..=n).map(|k| if k < i { k } else { k + 1 }).collect();
        Ok(SimplexMap { cod: n + 1, values })
    }

    /// σ_i: [n+1] → [n], repeating the value i.
    pub fn degeneracy(n: Ordinal, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Index(format!("degeneracy σ_{i} out of [{}]→[{n}]", n + 1)));
        }
        let values = (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
        Ok(SimplexMap { cod: n, values })
    }

    pub fn generator(kind: GeneratorKind, n: Ordinal, i: usize) -> Result<Self> {
        match kind {
            GeneratorKind::Face => Self::face(n, i),
            GeneratorKind::Degeneracy => Self::degeneracy(n, i),
        }
    }

    /// The constant map `[m] → [n]` with value `v`.
    pub fn constant(m: Ordinal, n: Ordinal, v: usize) -> Result<Self> {
        Self::new(n, vec![v; m + 1])
    }

    pub fn dom(&self) -> Ordinal {
        self.values.len() - 1
    }

    pub fn cod(&self) -> Ordinal {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn top_value(&self) -> usize {
        *self.values.last().expect("nonempty")
    }

    pub fn is_top_preserving(&self) -> bool {
        self.top_value() == self.cod
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.top_value() == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.dedup();
        im
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):[{}]→[{}]", self.dom(), self.cod)
    }
}

/// `g ∘ f`.
pub fn compose(g: &SimplexMap, f: &SimplexMap) -> Result<SimplexMap> {
    if f.cod != g.dom() {
        return Err(Error::Mismatch(format!("cannot compose {g} after {f}")));
    }
    Ok(SimplexMap { cod: g.cod, values: f.values.iter().map(|&v| g.values[v]).collect() })
}

/// Unique factorization `φ = ι ∘ ψ` with `ψ: [m] → [k]` top-preserving and
/// `ι = δ_n δ_{n−1} … δ_{k+1}` the initial-segment inclusion `[k] → [n]`.
pub fn factorize(phi: &SimplexMap) -> (Ordinal, SimplexMap) {
    let k = phi.top_value();
    (k, SimplexMap { cod: k, values: phi.values.clone() })
}

/// The inclusion `[k] → [n]` of an initial segment.
pub fn initial_inclusion(k: Ordinal, n: Ordinal) -> Result<SimplexMap> {
    if k > n {
        return Err(Error::Index(format!("[{k}] does not include into [{n}]")));
    }
    Ok(SimplexMap { cod: n, values: (0..=k).collect() })
}

/// χ^m_j: [m] → [1], sending i to 0 when i < j and to 1 otherwise.
pub fn chi(m: Ordinal, j: usize) -> Result<SimplexMap> {
    if j > m + 1 {
        return Err(Error::Index(format!("χ_{j} needs j ≤ {}", m + 1)));
    }
    Ok(SimplexMap { cod: 1, values: (0..=m).map(|i| usize::from(i >= j)).collect() })
}

/// The index j with `φ = χ^m_j` for a map `φ: [m] → [1]`.
pub fn chi_index(phi: &SimplexMap) -> Option<usize> {
    if phi.cod != 1 {
        return None;
    }
    Some(phi.values.iter().filter(|&&v| v == 0).count())
}

/// `R(ψ) = ψ+1` for top-preserving ψ.
pub fn apply_r(psi: &SimplexMap) -> Result<SimplexMap> {
    if !psi.is_top_preserving() {
        return Err(Error::Invalid(format!("{psi} is not top-preserving")));
    }
    Ok(extend_top(psi))
}

/// `U_R φ: [m+1] → [n+1]`, agreeing with φ below the top and sending `m+1 ↦ n+1`.
pub fn apply_ur(phi: &SimplexMap) -> SimplexMap {
    extend_top(phi)
}

fn extend_top(phi: &SimplexMap) -> SimplexMap {
    let mut values = phi.values.clone();
    values.push(phi.cod + 1);
    SimplexMap { cod: phi.cod + 1, values }
}

/// The top-preserving extension `θ̄: [m+1] → [n]` of `θ: [m] → [n]`, with `θ̄ ∘ δ_{m+1} = θ`.
pub fn top_extension(theta: &SimplexMap) -> SimplexMap {
    let mut values = theta.values.clone();
    values.push(theta.cod);
    SimplexMap { cod: theta.cod, values }
}

/// All maps `[m] → [n]` of Δ or Δ_r, in lexicographic order of value sequences.
pub fn enumerate_hom(m: Ordinal, n: Ordinal, which: Which) -> Vec<SimplexMap> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m + 1);
    fill(m + 1, 0, n, &mut current, &mut out);
    let maps = out.into_iter().map(|values| SimplexMap { cod: n, values });
    match which {
        Which::Delta => maps.collect(),
        Which::DeltaR => maps.filter(SimplexMap::is_top_preserving).collect(),
    }
}

fn fill(len: usize, lo: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == len {
        out.push(current.clone());
        return;
    }
    for v in lo..=n {
        current.push(v);
        fill(len, v, n, current, out);
        current.pop();
    }
}

/// The left summand of `Δ_r(m,n) + Δ(m,n−1) ≅ Δ_r(m+1,n)`: `ψ ↦ σ_n ∘ R(ψ)`.
pub fn decomposition_left(psi: &SimplexMap) -> Result<SimplexMap> {
    let n = psi.cod;
    compose(&SimplexMap::degeneracy(n, n)?, &apply_r(psi)?)
}

/// The right summand of the same bijection: `φ ↦ U_R φ`.
pub fn decomposition_right(phi: &SimplexMap) -> SimplexMap {
    apply_ur(phi)
}

/// `C(n, k)` for the small counts used in checks.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(f: &SimplexMap) -> Vec<usize> {
        f.values().to_vec()
    }

    #[test]
    fn generators_match_conventions() {
        assert_eq!(vals(&SimplexMap::face(1, 0).unwrap()), vec![1, 2]);
        assert_eq!(vals(&SimplexMap::face(0, 1).unwrap()), vec![0]);
        assert_eq!(vals(&SimplexMap::degeneracy(0, 0).unwrap()), vec![0, 0]);
        assert!(SimplexMap::face(1, 3).is_err());
        assert!(SimplexMap::degeneracy(1, 2).is_err());
    }

    #[test]
    fn composition_examples() {
        let s0 = SimplexMap::degeneracy(1, 0).unwrap();
        let d0 = SimplexMap::face(1, 0).unwrap();
        assert_eq!(compose(&s0, &d0).unwrap(), SimplexMap::identity(1));
        let d1 = SimplexMap::face(1, 1).unwrap();
        let d0 = SimplexMap::face(0, 0).unwrap();
        // pointwise: 0 ↦ 1 ↦ 2
        assert_eq!(vals(&compose(&d1, &d0).unwrap()), vec![2]);
        // the other order lands on 1
        let d0_up = SimplexMap::face(1, 0).unwrap();
        let d1_low = SimplexMap::face(0, 1).unwrap();
        assert_eq!(vals(&compose(&d0_up, &d1_low).unwrap()), vec![1]);
        assert!(compose(&d0, &d0).is_err());
    }

    #[test]
    fn top_preservation() {
        assert!(SimplexMap::degeneracy(0, 0).unwrap().is_top_preserving());
        assert!(!SimplexMap::face(0, 1).unwrap().is_top_preserving());
        assert!(chi(2, 1).unwrap().is_top_preserving());
    }

    #[test]
    fn chi_values() {
        assert_eq!(vals(&chi(2, 1).unwrap()), vec![0, 1, 1]);
        assert_eq!(vals(&chi(2, 0).unwrap()), vec![1, 1, 1]);
        assert_eq!(vals(&chi(2, 3).unwrap()), vec![0, 0, 0]);
        assert!(chi(2, 4).is_err());
        for m in 0..5 {
            for j in 0..=m + 1 {
                let c = chi(m, j).unwrap();
                assert_eq!(c.is_top_preserving(), j <= m);
                assert_eq!(chi_index(&c), Some(j));
            }
        }
    }

    #[test]
    fn r_and_ur() {
        let s0 = SimplexMap::degeneracy(0, 0).unwrap();
        assert_eq!(apply_r(&s0).unwrap(), SimplexMap::degeneracy(1, 0).unwrap());
        assert!(apply_r(&SimplexMap::face(0, 1).unwrap()).is_err());
        assert_eq!(vals(&apply_ur(&SimplexMap::face(0, 1).unwrap())), vec![0, 2]);
        for n in 0..4 {
            assert_eq!(apply_ur(&SimplexMap::identity(n)), SimplexMap::identity(n + 1));
        }
    }

    #[test]
    fn top_extension_examples() {
        let theta = SimplexMap::new(1, vec![0]).unwrap();
        assert_eq!(vals(&top_extension(&theta)), vec![0, 1]);
        assert_eq!(vals(&top_extension(&SimplexMap::face(0, 0).unwrap())), vec![1, 1]);
        for m in 0..=3 {
            for n in 0..=3 {
                for theta in enumerate_hom(m, n, Which::Delta) {
                    let ext = top_extension(&theta);
                    assert!(ext.is_top_preserving());
                    let back = compose(&ext, &SimplexMap::face(m, m + 1).unwrap()).unwrap();
                    assert_eq!(back, theta);
                }
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let phi = SimplexMap::new(2, vec![0, 1]).unwrap();
        assert_eq!(factorize(&phi), (1, SimplexMap::identity(1)));
        let phi = SimplexMap::new(2, vec![0]).unwrap();
        assert_eq!(factorize(&phi), (0, SimplexMap::identity(0)));
    }

    #[test]
    fn hom_enumeration_small() {
        let all = enumerate_hom(1, 1, Which::Delta);
        let listed: Vec<_> = all.iter().map(vals).collect();
        assert_eq!(listed, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_hom(1, 1, Which::DeltaR).len(), 2);
    }

    #[test]
    fn simplicial_identities_among_generators() {
        let bound = 5;
        for n in 0..=bound {
            // δ_j δ_i = δ_i δ_{j-1} for i < j
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = compose(&SimplexMap::face(n + 1, j).unwrap(), &SimplexMap::face(n, i).unwrap()).unwrap();
                    let rhs = compose(&SimplexMap::face(n + 1, i).unwrap(), &SimplexMap::face(n, j - 1).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            // σ_j σ_i = σ_i σ_{j+1} for i ≤ j
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = compose(&SimplexMap::degeneracy(n, j).unwrap(), &SimplexMap::degeneracy(n + 1, i).unwrap()).unwrap();
                    let rhs = compose(&SimplexMap::degeneracy(n, i).unwrap(), &SimplexMap::degeneracy(n + 1, j + 1).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            // mixed relations σ_j δ_i : [n] → [n]
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = compose(&SimplexMap::degeneracy(n, j).unwrap(), &SimplexMap::face(n, i).unwrap()).unwrap();
                    let rhs = if i < j {
                        compose(&SimplexMap::face(n - 1, i).unwrap(), &SimplexMap::degeneracy(n - 1, j - 1).unwrap()).unwrap()
                    } else if i == j || i == j + 1 {
                        SimplexMap::identity(n)
                    } else {
                        compose(&SimplexMap::face(n - 1, i - 1).unwrap(), &SimplexMap::degeneracy(n - 1, j).unwrap()).unwrap()
                    };
                    assert_eq!(lhs, rhs, "σ_{j} δ_{i} at n={n}");
                }
            }
        }
    }

    #[test]
    fn top_preserving_maps_form_wide_subcategory() {
        for a in 0..=3 {
            assert!(SimplexMap::identity(a).is_top_preserving());
            for b in 0..=3 {
                for c in 0..=3 {
                    for f in enumerate_hom(a, b, Which::DeltaR) {
                        for g in enumerate_hom(b, c, Which::DeltaR) {
                            assert!(compose(&g, &f).unwrap().is_top_preserving());
                        }
                    }
                }
            }
        }
    }
}
