//! Sims-style low-index subgroup search.
//!
//! The search fills a partial coset table entry by entry (row-major), trying
//! every existing coset and one new coset for each undefined entry. Relators
//! are scanned Felsch-style after every definition; seed words are scanned
//! at coset 1 only, so every completed table describes a subgroup containing
//! the seed. A partial table is discarded as soon as re-basing it at some
//! seed-fixed coset provably gives a lexicographically smaller table, which
//! leaves exactly one table per conjugacy class.

use super::coset::{coset_enumerate, CosetTable};
use super::{free_reduce, FpError, Presentation, Word};

const NONE: u32 = u32::MAX;

struct Search {
    cols: usize,
    n_max: usize,
    table: Vec<u32>,
    n: usize,
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
    // cyclic conjugates of relators and inverses, keyed by first column
    by_column: Vec<Vec<Vec<usize>>>,
    seeds: Vec<Vec<usize>>,
    found: Vec<Vec<u32>>,
}

impl Search {
    fn new(p: &Presentation, n_max: usize, seed: &[Word]) -> Self {
        let cols = 2 * p.generator_count();
        let mut by_column: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cols];
        for r in &p.relators {
            let r = free_reduce(r);
            for w in [r.columns(), r.inverse().columns()] {
                for k in 0..w.len() {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    let first = rot[0];
                    if !by_column[first].contains(&rot) {
                        by_column[first].push(rot);
                    }
                }
            }
        }
        let seeds = seed
            .iter()
            .map(free_reduce)
            .filter(|w| !w.is_empty())
            .map(|w| w.columns())
            .collect();
        Search {
            cols,
            n_max,
            table: vec![NONE; n_max * cols],
            n: 1,
            trail: Vec::new(),
            queue: Vec::new(),
            by_column,
            seeds,
            found: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    /// Records `c·x = d` together with `d·x⁻¹ = c`.
    fn set(&mut self, c: usize, col: usize, d: usize) -> bool {
        let p1 = c * self.cols + col;
        let p2 = d * self.cols + (col ^ 1);
        if self.table[p1] != NONE {
            return self.table[p1] as usize == d;
        }
        if self.table[p2] != NONE {
            return false;
        }
        self.table[p1] = d as u32;
        self.trail.push(p1);
        if p2 != p1 {
            self.table[p2] = c as u32;
            self.trail.push(p2);
        }
        self.queue.push((c, col));
        true
    }

    /// Scans `w` from `c`, expecting to return to `c`. Returns false on a
    /// contradiction; deduces the missing entry when exactly one is missing.
    fn scan(&mut self, c: usize, w: &[usize]) -> bool {
        let len = w.len();
        let mut f = c;
        let mut i = 0;
        while i < len {
            let x = self.get(f, w[i]);
            if x == NONE {
                break;
            }
            f = x as usize;
            i += 1;
        }
        if i == len {
            return f == c;
        }
        let mut b = c;
        let mut j = len;
        while j > i {
            let x = self.get(b, w[j - 1] ^ 1);
            if x == NONE {
                break;
            }
            b = x as usize;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            return self.set(f, w[i], b);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        loop {
            while let Some((c, col)) = self.queue.pop() {
                let d = self.get(c, col) as usize;
                for k in 0..self.by_column[col].len() {
                    let r = std::mem::take(&mut self.by_column[col][k]);
                    let ok = self.scan(c, &r);
                    self.by_column[col][k] = r;
                    if !ok {
                        return false;
                    }
                }
                let inv = col ^ 1;
                for k in 0..self.by_column[inv].len() {
                    let r = std::mem::take(&mut self.by_column[inv][k]);
                    let ok = self.scan(d, &r);
                    self.by_column[inv][k] = r;
                    if !ok {
                        return false;
                    }
                }
            }
            for k in 0..self.seeds.len() {
                let w = std::mem::take(&mut self.seeds[k]);
                let ok = self.scan(0, &w);
                self.seeds[k] = w;
                if !ok {
                    return false;
                }
            }
            if self.queue.is_empty() {
                return true;
            }
        }
    }

    fn seed_fixes(&self, c: usize) -> bool {
        self.seeds.iter().all(|w| {
            let mut f = c;
            for &col in w {
                let x = self.get(f, col);
                if x == NONE {
                    return false;
                }
                f = x as usize;
            }
            f == c
        })
    }

    /// True if re-basing at `base` yields a table that is already known to
    /// be lexicographically smaller than the current one.
    fn rebased_is_smaller(&self, base: usize) -> bool {
        let n = self.n;
        let mut new_of = vec![NONE; n];
        let mut old_of = Vec::with_capacity(n);
        new_of[base] = 0;
        old_of.push(base);
        for row in 0..n {
            if row >= old_of.len() {
                return false;
            }
            let old = old_of[row];
            for col in 0..self.cols {
                let img = self.get(old, col);
                let orig = self.get(row, col);
                if img == NONE || orig == NONE {
                    return false;
                }
                let img = img as usize;
                if new_of[img] == NONE {
                    new_of[img] = old_of.len() as u32;
                    old_of.push(img);
                }
                let mapped = new_of[img];
                if mapped != orig {
                    return mapped < orig;
                }
            }
        }
        false
    }

    fn is_first_in_class(&self) -> bool {
        (1..self.n).all(|b| !self.seed_fixes(b) || !self.rebased_is_smaller(b))
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().unwrap();
            self.table[p] = NONE;
        }
        self.queue.clear();
    }

    fn attempt(&mut self, c: usize, col: usize, d: usize, pos: usize) {
        let mark = self.trail.len();
        if self.set(c, col, d) && self.propagate() && self.is_first_in_class() {
            self.search(pos + 1);
        }
        self.undo(mark);
    }

    fn search(&mut self, mut pos: usize) {
        let end = self.n * self.cols;
        while pos < end && self.table[pos] != NONE {
            pos += 1;
        }
        if pos == end {
            self.found.push(self.table[..end].to_vec());
            return;
        }
        let c = pos / self.cols;
        let col = pos % self.cols;
        for d in 0..self.n {
            if self.get(d, col ^ 1) == NONE {
                self.attempt(c, col, d, pos);
            }
        }
        if self.n < self.n_max {
            self.n += 1;
            self.attempt(c, col, self.n - 1, pos);
            self.n -= 1;
        }
    }
}

/// One subgroup per conjugacy class among the subgroups of index at most
/// `n_max` that contain every word of `seed`, sorted by index and then by
/// standardized table.
///
/// Each returned table carries a short generating set for its subgroup
/// (the seed words first, then Schreier generators as needed).
pub fn low_index_subgroups(
    p: &Presentation,
    n_max: usize,
    seed: &[Word],
) -> Result<Vec<CosetTable>, FpError> {
    assert!(n_max >= 1, "n_max must be positive");
    let mut search = Search::new(p, n_max, seed);
    if !search.propagate() {
        return Ok(Vec::new());
    }
    search.search(0);
    let cols = search.cols;
    let mut tables: Vec<CosetTable> = search
        .found
        .into_iter()
        .map(|rows| CosetTable::from_rows(cols, rows, Vec::new()))
        .collect();
    tables.sort();
    for t in &mut tables {
        let gens = short_generators(p, t, seed)?;
        t.set_subgroup_generators(gens);
        debug_assert_eq!(t.validate(p), Ok(()));
    }
    Ok(tables)
}

/// Greedy generating set: seed words, then the shortest Schreier generators
/// not yet in the subgroup, until the enumerated index matches. Redundant
/// non-seed words are dropped afterwards.
fn short_generators(p: &Presentation, t: &CosetTable, seed: &[Word]) -> Result<Vec<Word>, FpError> {
    let mut gens: Vec<Word> = Vec::new();
    for w in seed.iter().map(free_reduce).filter(|w| !w.is_empty()) {
        if !gens.contains(&w) {
            gens.push(w);
        }
    }
    let fixed = gens.len();
    let mut candidates = t.schreier_generators();
    candidates.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    candidates.dedup();
    let workspace = 64 * t.index().max(8) * 12;
    let index_of = |gens: &[Word]| coset_enumerate(p, gens, workspace).ok();
    let mut current = index_of(&gens);
    for cand in candidates {
        if gens.contains(&cand) {
            continue;
        }
        if let Some(cur) = &current {
            if cur.index() == t.index() {
                break;
            }
            if cur.act(1, &cand) == 1 {
                continue;
            }
        }
        gens.push(cand);
        current = index_of(&gens);
    }
    if current.map(|c| c.index()) != Some(t.index()) {
        return Err(FpError::WorkspaceExceeded(workspace));
    }
    let mut k = gens.len();
    while k > fixed {
        k -= 1;
        let mut trial = gens.clone();
        trial.remove(k);
        if index_of(&trial).map(|c| c.index()) == Some(t.index()) {
            gens = trial;
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: usize) -> Presentation {
        let rot = vec!["a"; n].join(" ");
        Presentation::new(&format!("D{n}"), &["a", "b"], &[&rot, "b b", "a b a b"]).unwrap()
    }

    #[test]
    fn index_one_is_whole_group() {
        let p = dihedral(4);
        let t = low_index_subgroups(&p, 1, &[]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].index(), 1);
    }

    #[test]
    fn dihedral_subgroup_classes() {
        // D4 (order 8) has 8 conjugacy classes of subgroups: indices
        // 1, 2, 2, 2, 4, 4, 4, 8 (the trivial subgroup has index 8).
        let p = dihedral(4);
        let tables = low_index_subgroups(&p, 8, &[]).unwrap();
        let idx: Vec<usize> = tables.iter().map(|t| t.index()).collect();
        assert_eq!(idx, vec![1, 2, 2, 2, 4, 4, 4, 8]);
        for t in &tables {
            t.validate(&p).unwrap();
        }
        for (i, a) in tables.iter().enumerate() {
            for b in &tables[i + 1..] {
                assert!(!a.is_conjugate(b));
            }
        }
    }

    #[test]
    fn seeded_search_respects_seed() {
        let p = dihedral(6);
        let b = Word::generator(1);
        let tables = low_index_subgroups(&p, 12, std::slice::from_ref(&b)).unwrap();
        for t in &tables {
            assert_eq!(t.act(1, &b), 1);
        }
        // classes of subgroups of D6 meeting b: D6, ⟨a², b⟩, ⟨a³, b⟩, ⟨b⟩
        let idx: Vec<usize> = tables.iter().map(|t| t.index()).collect();
        assert_eq!(idx, vec![1, 2, 3, 6]);
    }
}
