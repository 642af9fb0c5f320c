// SPDX-License-Identifier: Apache-2.0

//! Finite measured groupoids.
//!
//! Arrows `g` go from `src(g)` to `tgt(g)`; the product `hg` means "`g` then
//! `h`" and is defined exactly when `src(h) = tgt(g)`. Units carry
//! probability weights `μ`, and the arrow measure is `ν(g) = μ(tgt(g))`,
//! the counting measure on target fibers integrated against `μ`.
//! Units of weight exactly zero are null.

use std::collections::HashMap;

use crate::error::{Error, Result};

const MEASURE_SUM_TOL: f64 = 1e-9;
/// Relative tolerance when comparing `ν(g)` with `ν(g⁻¹)`.
const INVARIANCE_TOL: f64 = 1e-12;

/// Finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the group axioms exhaustively. `mult[a][b] = ab`.
    pub fn new(labels: Vec<String>, mult: Vec<Vec<usize>>, identity: usize, inverses: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("multiplication table must be {n}x{n}")));
        }
        if mult.iter().flatten().any(|&c| c >= n) || identity >= n {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        if inverses.len() != n || inverses.iter().any(|&i| i >= n) {
            return Err(Error::InvalidGroup("inverse table out of range".into()));
        }
        for a in 0..n {
            if mult[identity][a] != a || mult[a][identity] != a {
                return Err(Error::InvalidGroup(format!("identity fails at {}", labels[a])));
            }
            if mult[a][inverses[a]] != identity || mult[inverses[a]][a] != identity {
                return Err(Error::InvalidGroup(format!("inverse fails at {}", labels[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            labels,
            mult,
            identity,
            inverses,
        })
    }

    /// `ℤ/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| k.to_string()).collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inverses = (0..n).map(|a| (n - a) % n).collect();
        Self::new(labels, mult, 0, inverses).expect("cyclic group")
    }

    /// Group of permutations closed under composition, `(pq)(i) = p(q(i))`.
    pub fn from_permutations(perms: Vec<Vec<usize>>) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        if index.len() != perms.len() {
            return Err(Error::InvalidGroup("repeated permutation".into()));
        }
        let lookup = |p: &[usize]| {
            index
                .get(p)
                .copied()
                .ok_or_else(|| Error::InvalidGroup("permutations not closed".into()))
        };
        let k = perms.first().map_or(0, |p| p.len());
        let identity_perm: Vec<usize> = (0..k).collect();
        let identity = lookup(&identity_perm)?;
        let mut mult = Vec::with_capacity(perms.len());
        let mut inverses = Vec::with_capacity(perms.len());
        for p in &perms {
            let row = perms
                .iter()
                .map(|q| lookup(&q.iter().map(|&i| p[i]).collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            mult.push(row);
            let mut inv = vec![0; k];
            for (i, &pi) in p.iter().enumerate() {
                inv[pi] = i;
            }
            inverses.push(lookup(&inv)?);
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::new(labels, mult, identity, inverses)
    }

    /// Symmetric group on `k` letters in lexicographic order (identity first).
    pub fn symmetric(k: usize) -> Self {
        let mut perms = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        permutations(&mut current, 0, &mut perms);
        perms.sort();
        Self::from_permutations(perms).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    /// For a permutation group built by [`Self::from_permutations`], the
    /// permutation of each element recovered from its label.
    pub fn permutation(&self, a: usize) -> Option<Vec<usize>> {
        self.labels[a]
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect()
    }
}

fn permutations(current: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == current.len() {
        out.push(current.clone());
        return;
    }
    for i in start..current.len() {
        current.swap(start, i);
        permutations(current, start + 1, out);
        current.swap(start, i);
    }
}

/// A finite group acting on a finite probability space.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionGroupoidSpec {
    pub group: FiniteGroup,
    pub units: Vec<String>,
    pub mu: Vec<f64>,
    /// `action[γ][x] = γ·x`.
    pub action: Vec<Vec<usize>>,
}

impl ActionGroupoidSpec {
    pub fn new(group: FiniteGroup, units: Vec<String>, mu: Vec<f64>, action: Vec<Vec<usize>>) -> Result<Self> {
        let spec = Self {
            group,
            units,
            mu,
            action,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Uniform measure on `points` copies of the orbit structure given by `act`.
    pub fn uniform(group: FiniteGroup, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let action = (0..group.order())
            .map(|g| (0..points).map(|x| act(g, x)).collect())
            .collect();
        let units = (0..points).map(|x| format!("x{x}")).collect();
        Self::new(group, units, vec![1.0 / points as f64; points], action)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.units.len();
        validate_measure(&self.mu, k)?;
        let g = &self.group;
        if self.action.len() != g.order() || self.action.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidAction(format!("action table must be {}x{k}", g.order())));
        }
        if self.action.iter().flatten().any(|&y| y >= k) {
            return Err(Error::InvalidAction("action table entry out of range".into()));
        }
        for x in 0..k {
            if self.action[g.identity()][x] != x {
                return Err(Error::InvalidAction(format!("identity moves {}", self.units[x])));
            }
            for a in 0..g.order() {
                for b in 0..g.order() {
                    if self.action[g.mul(a, b)][x] != self.action[a][self.action[b][x]] {
                        return Err(Error::InvalidAction(format!(
                            "(({})({}))·{} differs from {}·({}·{})",
                            g.labels[a], g.labels[b], self.units[x], g.labels[a], g.labels[b], self.units[x]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }
}

fn validate_measure(mu: &[f64], units: usize) -> Result<()> {
    if mu.len() != units {
        return Err(Error::InvalidMeasure(format!("{} weights for {units} units", mu.len())));
    }
    if mu.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidMeasure("weights must be finite and nonnegative".into()));
    }
    let total: f64 = mu.iter().sum();
    if (total - 1.0).abs() > MEASURE_SUM_TOL {
        return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// Verdict of [`FiniteMeasuredGroupoid::check_invariance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    QuasiInvariant,
    Neither,
}

/// Finite groupoid with a probability measure on its units, validated on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasuredGroupoid {
    units: Vec<String>,
    mu: Vec<f64>,
    arrows: Vec<Arrow>,
    inverse: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    unit_arrows: Vec<usize>,
}

impl FiniteMeasuredGroupoid {
    /// Builds a groupoid from explicit tables and checks every axiom.
    ///
    /// `composition` maps `(h, g)` to `hg`; it must be defined exactly on
    /// pairs with `src(h) = tgt(g)`. Unit arrows are recovered as the
    /// idempotents.
    pub fn new(
        units: Vec<String>,
        mu: Vec<f64>,
        arrows: Vec<Arrow>,
        inverse: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let k = units.len();
        validate_measure(&mu, k)?;
        let n = arrows.len();
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        for a in &arrows {
            if a.src >= k || a.tgt >= k {
                return bad(format!("arrow {} has an unknown endpoint", a.id));
            }
        }
        let mut ids = std::collections::HashSet::new();
        if let Some(a) = arrows.iter().find(|a| !ids.insert(a.id.as_str())) {
            return bad(format!("duplicate arrow id {}", a.id));
        }
        if inverse.len() != n || inverse.iter().any(|&i| i >= n) {
            return bad("inverse table out of range".into());
        }
        for (&(h, g), &hg) in &composition {
            if h >= n || g >= n || hg >= n {
                return bad("composition entry out of range".into());
            }
            if arrows[h].src != arrows[g].tgt {
                return bad(format!(
                    "composition defined on non-composable pair ({}, {})",
                    arrows[h].id, arrows[g].id
                ));
            }
            if arrows[hg].src != arrows[g].src || arrows[hg].tgt != arrows[h].tgt {
                return bad(format!(
                    "({})({}) = {} has wrong endpoints",
                    arrows[h].id, arrows[g].id, arrows[hg].id
                ));
            }
        }
        let compose = |h: usize, g: usize| composition.get(&(h, g)).copied();

        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut by_tgt: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, a) in arrows.iter().enumerate() {
            by_src[a.src].push(i);
            by_tgt[a.tgt].push(i);
        }
        for h in 0..n {
            for &g in &by_tgt[arrows[h].src] {
                if compose(h, g).is_none() {
                    return bad(format!(
                        "composition undefined on composable pair ({}, {})",
                        arrows[h].id, arrows[g].id
                    ));
                }
            }
        }

        let mut unit_arrows = Vec::with_capacity(k);
        for x in 0..k {
            let candidates: Vec<usize> = by_src[x]
                .iter()
                .copied()
                .filter(|&e| arrows[e].tgt == x && compose(e, e) == Some(e))
                .collect();
            match candidates.as_slice() {
                [e] => unit_arrows.push(*e),
                [] => return bad(format!("no unit arrow at {}", units[x])),
                _ => return bad(format!("several idempotent arrows at {}", units[x])),
            }
        }

        for g in 0..n {
            let (s, t) = (arrows[g].src, arrows[g].tgt);
            if compose(unit_arrows[t], g) != Some(g) || compose(g, unit_arrows[s]) != Some(g) {
                return bad(format!("unit law fails at {}", arrows[g].id));
            }
            let gi = inverse[g];
            if arrows[gi].src != t || arrows[gi].tgt != s {
                return bad(format!("inverse of {} has wrong endpoints", arrows[g].id));
            }
            if compose(gi, g) != Some(unit_arrows[s]) || compose(g, gi) != Some(unit_arrows[t]) {
                return bad(format!("inverse law fails at {}", arrows[g].id));
            }
        }
        // associativity over every composable triple (h, g, f): src(h)=tgt(g), src(g)=tgt(f)
        for g in 0..n {
            for &h in &by_src[arrows[g].tgt] {
                let hg = compose(h, g).expect("checked above");
                for &f in &by_tgt[arrows[g].src] {
                    let gf = compose(g, f).expect("checked above");
                    let left = compose(hg, f);
                    let right = compose(h, gf);
                    if left != right || left.is_none() {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            arrows[h].id, arrows[g].id, arrows[f].id
                        ));
                    }
                }
            }
        }

        Ok(Self {
            units,
            mu,
            arrows,
            inverse,
            composition,
            unit_arrows,
        })
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn unit_index(&self, label: &str) -> Option<usize> {
        self.units.iter().position(|u| u == label)
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn src(&self, g: usize) -> usize {
        self.arrows[g].src
    }

    pub fn tgt(&self, g: usize) -> usize {
        self.arrows[g].tgt
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn unit_arrow(&self, x: usize) -> usize {
        self.unit_arrows[x]
    }

    /// `hg`, defined when `src(h) = tgt(g)`.
    pub fn compose(&self, h: usize, g: usize) -> Option<usize> {
        self.composition.get(&(h, g)).copied()
    }

    /// All composable pairs `(h, g)` with their product, in ascending order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut pairs: Vec<_> = self.composition.iter().map(|(&(h, g), &hg)| (h, g, hg)).collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn is_null(&self, x: usize) -> bool {
        self.mu[x] == 0.0
    }

    /// Whether both endpoints of `g` carry positive weight.
    pub fn is_essential(&self, g: usize) -> bool {
        !self.is_null(self.src(g)) && !self.is_null(self.tgt(g))
    }

    /// `ν(g) = μ(tgt(g))` for every arrow.
    pub fn arrow_measure(&self) -> Vec<f64> {
        self.arrows.iter().map(|a| self.mu[a.tgt]).collect()
    }

    /// `ν(E)` for a set of arrow indices.
    pub fn nu(&self, arrows: &[usize]) -> f64 {
        arrows.iter().map(|&g| self.mu[self.tgt(g)]).sum()
    }

    /// Source fiber `𝒢_x` and target fiber `𝒢^x`, both ascending.
    pub fn fibers(&self, x: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if x >= self.units.len() {
            return Err(Error::UnknownUnit(x.to_string()));
        }
        let source = (0..self.arrows.len()).filter(|&g| self.src(g) == x).collect();
        let target = (0..self.arrows.len()).filter(|&g| self.tgt(g) == x).collect();
        Ok((source, target))
    }

    pub fn check_invariance(&self) -> Invariance {
        let nu = self.arrow_measure();
        let mut invariant = true;
        for g in 0..self.arrows.len() {
            let (a, b) = (nu[g], nu[self.inverse[g]]);
            if (a > 0.0) != (b > 0.0) {
                return Invariance::Neither;
            }
            if (a - b).abs() > INVARIANCE_TOL * a.max(b) {
                invariant = false;
            }
        }
        if invariant {
            Invariance::Invariant
        } else {
            Invariance::QuasiInvariant
        }
    }

    /// Connected components of units under arrows, as a component id per unit.
    pub fn orbits(&self) -> Vec<usize> {
        let k = self.units.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.arrows {
            let (r1, r2) = (find(&mut parent, a.src), find(&mut parent, a.tgt));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
        (0..k).map(|x| find(&mut parent, x)).collect()
    }

    /// Every invariant unit set is null or conull, i.e. exactly one orbit
    /// carries positive weight.
    pub fn check_ergodic(&self) -> bool {
        let orbit = self.orbits();
        let mut heavy: Vec<usize> = (0..self.units.len())
            .filter(|&x| !self.is_null(x))
            .map(|x| orbit[x])
            .collect();
        heavy.sort_unstable();
        heavy.dedup();
        heavy.len() == 1
    }

    /// The restricted groupoid on `subset` with renormalized weights.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&x) = keep.iter().find(|&&x| x >= self.units.len()) {
            return Err(Error::UnknownUnit(x.to_string()));
        }
        let mass: f64 = keep.iter().map(|&x| self.mu[x]).sum();
        if mass == 0.0 {
            return Err(Error::ZeroMassRestriction);
        }
        let mut unit_map = vec![usize::MAX; self.units.len()];
        for (new, &old) in keep.iter().enumerate() {
            unit_map[old] = new;
        }
        let mut arrow_map = vec![usize::MAX; self.arrows.len()];
        let mut arrows = Vec::new();
        for (g, a) in self.arrows.iter().enumerate() {
            if unit_map[a.src] != usize::MAX && unit_map[a.tgt] != usize::MAX {
                arrow_map[g] = arrows.len();
                arrows.push(Arrow {
                    id: a.id.clone(),
                    src: unit_map[a.src],
                    tgt: unit_map[a.tgt],
                });
            }
        }
        let kept: Vec<usize> = (0..self.arrows.len()).filter(|&g| arrow_map[g] != usize::MAX).collect();
        let inverse = kept.iter().map(|&g| arrow_map[self.inverse[g]]).collect();
        let composition = self
            .composition
            .iter()
            .filter(|(&(h, g), _)| arrow_map[h] != usize::MAX && arrow_map[g] != usize::MAX)
            .map(|(&(h, g), &hg)| ((arrow_map[h], arrow_map[g]), arrow_map[hg]))
            .collect();
        Self::new(
            keep.iter().map(|&x| self.units[x].clone()).collect(),
            keep.iter().map(|&x| self.mu[x] / mass).collect(),
            arrows,
            inverse,
            composition,
        )
    }

    /// Restriction to the units of positive weight.
    pub fn essential_part(&self) -> Result<Self> {
        let support: Vec<usize> = (0..self.units.len()).filter(|&x| !self.is_null(x)).collect();
        self.restrict(&support)
    }
}

/// Index of the arrow `(γ, x)` in an action groupoid.
pub fn action_arrow_index(spec: &ActionGroupoidSpec, g: usize, x: usize) -> usize {
    g * spec.units.len() + x
}

/// The action groupoid `Γ ⋉ X`: arrows `(γ, x) : x → γ·x`, composition
/// `(δ, γ·x)(γ, x) = (δγ, x)` and inverse `(γ, x)⁻¹ = (γ⁻¹, γ·x)`.
pub fn build_action_groupoid(spec: &ActionGroupoidSpec) -> Result<FiniteMeasuredGroupoid> {
    spec.validate()?;
    let g = &spec.group;
    let k = spec.units.len();
    let mut arrows = Vec::with_capacity(g.order() * k);
    let mut inverse = Vec::with_capacity(g.order() * k);
    let mut composition = HashMap::new();
    for a in 0..g.order() {
        for x in 0..k {
            let y = spec.act(a, x);
            arrows.push(Arrow {
                id: format!("{}|{}", g.labels()[a], spec.units[x]),
                src: x,
                tgt: y,
            });
            inverse.push(action_arrow_index(spec, g.inverse(a), y));
            for b in 0..g.order() {
                composition.insert(
                    (action_arrow_index(spec, b, y), action_arrow_index(spec, a, x)),
                    action_arrow_index(spec, g.mul(b, a), x),
                );
            }
        }
    }
    FiniteMeasuredGroupoid::new(spec.units.clone(), spec.mu.clone(), arrows, inverse, composition)
}

impl ActionGroupoidSpec {
    pub fn build(&self) -> Result<FiniteMeasuredGroupoid> {
        build_action_groupoid(self)
    }
}
