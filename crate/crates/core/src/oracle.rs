//! Brute-force count of perfect transitive colorings on a finite quotient.
//!
//! Tiles are taken modulo the lattice spanned by `u^k, v^k`; generators act
//! on them as permutations computed from the exact geometry. The search then
//! looks for partitions into `n` classes that every generator permutes,
//! without any reference to subgroups or cosets. Any coloring with `n`
//! colors is periodic under `u^n, v^n`, so `k = n` misses nothing.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::catalog::TilingSpec;
use crate::exactgeo::PolygonKey;
use crate::fpgroup::Word;

/// Default node budget for [`brute_force_classes`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("quotient failed validation: {0}")]
    ValidationFailure(String),
    #[error("search exceeded {0} nodes")]
    SearchTooLarge(u64),
}

/// Tiles of one `k × k` block of cells with wrap-around generator action.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub k: usize,
    /// `(orbit index, canonical key)` of each tile in the block.
    pub tiles: Vec<(usize, PolygonKey)>,
    /// `generator_perms[g][t]` is the image of tile `t` under generator `g`.
    pub generator_perms: Vec<Vec<usize>>,
    inverse_perms: Vec<Vec<usize>>,
}

impl QuotientComplex {
    /// Image of tile `t` under the word `w` (letters applied right to left,
    /// as for isometries).
    pub fn act(&self, t: usize, w: &Word) -> usize {
        w.letters().iter().rev().fold(t, |t, l| {
            if l.inverse {
                self.inverse_perms[l.generator][t]
            } else {
                self.generator_perms[l.generator][t]
            }
        })
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}

/// Builds the quotient by `u^k, v^k` and checks that the generator
/// permutations satisfy every relator.
pub fn build_quotient(spec: &TilingSpec, k: usize) -> Result<QuotientComplex, OracleError> {
    assert!(k >= 1, "period must be positive");
    let kk = k as i64;
    let mut polys = Vec::new();
    for a in 0..kk {
        for b in 0..kk {
            for t in spec.base_tiles() {
                polys.push((t.orbit_index, t.polygon.translate(&spec.translation_vector([a, b]))));
            }
        }
    }
    let index: HashMap<PolygonKey, usize> = polys.iter().enumerate().map(|(i, (_, p))| (p.key(), i)).collect();
    let mut generator_perms = Vec::new();
    for iso in &spec.realization {
        let mut perm = Vec::with_capacity(polys.len());
        for (_, poly) in &polys {
            let img = iso.apply(poly);
            let cell = spec.cell_of(&img.centroid());
            let wrapped = [cell[0].rem_euclid(kk), cell[1].rem_euclid(kk)];
            let back = img.translate(&spec.translation_vector([wrapped[0] - cell[0], wrapped[1] - cell[1]]));
            let j = index
                .get(&back.key())
                .ok_or_else(|| OracleError::ValidationFailure("a generator maps a tile off the tiling".into()))?;
            perm.push(*j);
        }
        let mut seen = vec![false; perm.len()];
        if perm.iter().any(|&j| std::mem::replace(&mut seen[j], true)) {
            return Err(OracleError::ValidationFailure("generator action is not a bijection".into()));
        }
        generator_perms.push(perm);
    }
    let tiles: Vec<(usize, PolygonKey)> = polys.into_iter().map(|(o, p)| (o, p.key())).collect();
    let inverse_perms = generator_perms.iter().map(|p| invert(p)).collect();
    let q = QuotientComplex { k, tiles, generator_perms, inverse_perms };
    for (i, r) in spec.presentation.relators.iter().enumerate() {
        if (0..q.tiles.len()).any(|t| q.act(t, r) != t) {
            return Err(OracleError::ValidationFailure(format!("relator {i} does not act trivially")));
        }
    }
    Ok(q)
}

const NONE: usize = usize::MAX;

enum Undo {
    Label(usize),
    Sigma(usize, usize),
}

struct Search<'a> {
    perms: &'a [Vec<usize>],
    invs: Vec<Vec<usize>>,
    n: usize,
    label: Vec<usize>,
    members: Vec<Vec<usize>>,
    // sigma[g][a] = b: generator g sends class a to class b
    sigma: Vec<Vec<usize>>,
    sigma_inv: Vec<Vec<usize>>,
    used: usize,
    trail: Vec<Undo>,
    queue: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    count: usize,
}

impl Search<'_> {
    fn define_sigma(&mut self, g: usize, a: usize, b: usize) -> bool {
        if self.sigma[g][a] != NONE || self.sigma_inv[g][b] != NONE {
            return self.sigma[g][a] == b;
        }
        self.sigma[g][a] = b;
        self.sigma_inv[g][b] = a;
        self.trail.push(Undo::Sigma(g, a));
        for &t in &self.members[a] {
            self.queue.push((self.perms[g][t], b));
        }
        for &t in &self.members[b] {
            self.queue.push((self.invs[g][t], a));
        }
        true
    }

    fn assign(&mut self, t: usize, c: usize) -> bool {
        self.queue.clear();
        self.queue.push((t, c));
        while let Some((t, c)) = self.queue.pop() {
            if self.label[t] != NONE {
                if self.label[t] != c {
                    return false;
                }
                continue;
            }
            self.label[t] = c;
            self.members[c].push(t);
            self.trail.push(Undo::Label(t));
            for g in 0..self.perms.len() {
                let fwd = self.perms[g][t];
                if self.sigma[g][c] != NONE {
                    self.queue.push((fwd, self.sigma[g][c]));
                } else if self.label[fwd] != NONE && !self.define_sigma(g, c, self.label[fwd]) {
                    return false;
                }
                let back = self.invs[g][t];
                if self.sigma_inv[g][c] != NONE {
                    self.queue.push((back, self.sigma_inv[g][c]));
                } else if self.label[back] != NONE && !self.define_sigma(g, self.label[back], c) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Label(t) => {
                    let c = self.label[t];
                    self.members[c].pop();
                    self.label[t] = NONE;
                }
                Undo::Sigma(g, a) => {
                    let b = self.sigma[g][a];
                    self.sigma[g][a] = NONE;
                    self.sigma_inv[g][b] = NONE;
                }
            }
        }
    }

    fn transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for s in &self.sigma {
                let b = s[a];
                if !std::mem::replace(&mut seen[b], true) {
                    queue.push_back(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn search(&mut self, from: usize) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::SearchTooLarge(self.budget));
        }
        let Some(t) = (from..self.label.len()).find(|&t| self.label[t] == NONE) else {
            if self.used == self.n && self.transitive() {
                self.count += 1;
            }
            return Ok(());
        };
        if self.n - self.used > self.label.len() - t {
            return Ok(());
        }
        // the smallest unused class is the only new class tried, so each
        // partition is reached once
        let options = self.used + usize::from(self.used < self.n);
        for c in 0..options {
            let mark = self.trail.len();
            let fresh = c == self.used;
            if fresh {
                self.used += 1;
            }
            if self.assign(t, c) {
                self.search(t + 1)?;
            }
            if fresh {
                self.used -= 1;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// Number of partitions of the quotient's tiles into `n` classes that every
/// generator permutes transitively, counted up to relabeling.
pub fn brute_force_classes(q: &QuotientComplex, n: usize) -> Result<usize, OracleError> {
    brute_force_classes_with_budget(q, n, DEFAULT_BUDGET)
}

pub fn brute_force_classes_with_budget(q: &QuotientComplex, n: usize, budget: u64) -> Result<usize, OracleError> {
    assert!(n >= 1, "need at least one class");
    let gens = q.generator_perms.len();
    let mut s = Search {
        perms: &q.generator_perms,
        invs: q.inverse_perms.clone(),
        n,
        label: vec![NONE; q.tiles.len()],
        members: vec![Vec::new(); n],
        sigma: vec![vec![NONE; n]; gens],
        sigma_inv: vec![vec![NONE; n]; gens],
        used: 0,
        trail: Vec::new(),
        queue: Vec::new(),
        nodes: 0,
        budget,
        count: 0,
    };
    s.search(0)?;
    Ok(s.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_tiling;

    #[test]
    fn quotient_sizes() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let q1 = build_quotient(&spec, 1).unwrap();
        assert_eq!(q1.tiles.len(), 3);
        assert_eq!(q1.tiles.iter().filter(|t| t.0 == 1).count(), 1);
        assert_eq!(build_quotient(&spec, 2).unwrap().tiles.len(), 12);
    }

    #[test]
    fn trivial_coloring_counts_once() {
        let spec = load_tiling("3.6.3.6").unwrap();
        let q = build_quotient(&spec, 2).unwrap();
        assert_eq!(brute_force_classes(&q, 1).unwrap(), 1);
    }

    #[test]
    fn snub_two_colorings() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let q = build_quotient(&spec, 2).unwrap();
        assert_eq!(brute_force_classes(&q, 2).unwrap(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let q = build_quotient(&spec, 2).unwrap();
        assert_eq!(brute_force_classes_with_budget(&q, 2, 3), Err(OracleError::SearchTooLarge(3)));
    }
}
