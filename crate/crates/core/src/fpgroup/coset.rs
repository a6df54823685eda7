use std::collections::VecDeque;

use super::lattice::{orbit_lattice, SublatticeBasis};
use super::{free_reduce, FpError, Letter, Presentation, Word};

/// Default workspace: `4 · n_max · 12` cosets (12 bounds every plane point
/// group order).
pub const DEFAULT_COSET_FACTOR: usize = 48;

const NONE: usize = usize::MAX;

/// Permutation action of a group on the right cosets of a subgroup `J`.
///
/// Coset ids are 1-based; coset 1 is `J` itself. `image(c, x)` is the coset
/// `c·x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CosetTable {
    index: usize,
    columns: usize,
    // 0-based cosets, row-major
    action: Vec<u32>,
    subgroup_generators: Vec<Word>,
}

impl PartialOrd for CosetTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetTable {
    /// Index first, then the standardized table read row by row.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.index, &self.action).cmp(&(other.index, &other.action))
    }
}

impl CosetTable {
    /// Builds a table from 0-based rows, standardizing from coset 0.
    pub(crate) fn from_rows(columns: usize, rows: Vec<u32>, subgroup_generators: Vec<Word>) -> Self {
        let index = rows.len() / columns;
        let raw = CosetTable { index, columns, action: rows, subgroup_generators };
        let action = raw.standardized_rows(0).expect("table is transitive");
        CosetTable { index, columns, action, subgroup_generators: raw.subgroup_generators }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    pub(crate) fn set_subgroup_generators(&mut self, gens: Vec<Word>) {
        self.subgroup_generators = gens;
    }

    /// Raw standardized rows (0-based entries).
    pub fn rows(&self) -> &[u32] {
        &self.action
    }

    /// Image of coset `c` (1-based) under one letter.
    pub fn image(&self, c: usize, l: Letter) -> usize {
        self.action[(c - 1) * self.columns + l.column()] as usize + 1
    }

    fn image0(&self, c: usize, col: usize) -> usize {
        self.action[c * self.columns + col] as usize
    }

    /// Traces `w` from coset `c`.
    pub fn act(&self, c: usize, w: &Word) -> usize {
        assert!(c >= 1 && c <= self.index, "coset {c} out of range");
        w.0.iter().fold(c, |acc, &l| self.image(acc, l))
    }

    /// The permutation of `{0..n}` induced by one letter (0-based).
    pub fn permutation(&self, l: Letter) -> Vec<usize> {
        (0..self.index).map(|c| self.image0(c, l.column())).collect()
    }

    /// Cosets fixed by every word in `words`, ascending.
    pub fn fixed_cosets(&self, words: &[Word]) -> Vec<usize> {
        (1..=self.index).filter(|&c| words.iter().all(|w| self.act(c, w) == c)).collect()
    }

    /// Orbits of `⟨words⟩` on the cosets, each sorted, ordered by least element.
    pub fn suborbits(&self, words: &[Word]) -> Vec<Vec<usize>> {
        let mut orbit_of = vec![usize::MAX; self.index + 1];
        let mut orbits = Vec::new();
        for start in 1..=self.index {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![start];
            orbit_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let c = members[i];
                for w in words {
                    for img in [self.act(c, w), self.act(c, &w.inverse())] {
                        if orbit_of[img] == usize::MAX {
                            orbit_of[img] = id;
                            members.push(img);
                        }
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }

    /// Standardized rows after re-basing at coset `base` (0-based), or
    /// `None` if the table is not transitive.
    fn standardized_rows(&self, base: usize) -> Option<Vec<u32>> {
        let n = self.index;
        let mut new_of = vec![NONE; n];
        let mut old_of = Vec::with_capacity(n);
        new_of[base] = 0;
        old_of.push(base);
        let mut i = 0;
        while i < old_of.len() {
            let old = old_of[i];
            for col in 0..self.columns {
                let img = self.image0(old, col);
                if new_of[img] == NONE {
                    new_of[img] = old_of.len();
                    old_of.push(img);
                }
            }
            i += 1;
        }
        if old_of.len() != n {
            return None;
        }
        let mut rows = Vec::with_capacity(n * self.columns);
        for &old in &old_of {
            for col in 0..self.columns {
                rows.push(new_of[self.image0(old, col)] as u32);
            }
        }
        Some(rows)
    }

    /// Table of the conjugate subgroup obtained by re-basing at coset `c`
    /// (1-based): if `c = J·h`, this is `h⁻¹ J h`.
    pub fn rebase(&self, c: usize, subgroup_generators: Vec<Word>) -> CosetTable {
        let action = self.standardized_rows(c - 1).expect("table is transitive");
        CosetTable { index: self.index, columns: self.columns, action, subgroup_generators }
    }

    /// Coset table of `w J w⁻¹`.
    pub fn conjugate_table(&self, w: &Word) -> CosetTable {
        let c = self.act(1, &w.inverse());
        let gens = self.subgroup_generators.iter().map(|s| w.conjugate(s)).collect();
        self.rebase(c, gens)
    }

    /// Whether the two subgroups are conjugate (compares standardized tables
    /// from every base point).
    pub fn is_conjugate(&self, other: &CosetTable) -> bool {
        if self.index != other.index || self.columns != other.columns {
            return false;
        }
        (0..self.index).any(|c| self.standardized_rows(c).as_deref() == Some(&other.action[..]))
    }

    /// Whether both tables describe the same subgroup.
    pub fn same_subgroup(&self, other: &CosetTable) -> bool {
        self.index == other.index && self.action == other.action
    }

    /// For each coset, a word leading to it from coset 1 (breadth-first,
    /// column order).
    pub fn transversal(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.index];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.columns {
                let d = self.image0(c, col);
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap();
                    w.0.push(Letter::from_column(col));
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("transitive")).collect()
    }

    /// Schreier generators of the subgroup from the breadth-first transversal.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let trans = self.transversal();
        let mut out = Vec::new();
        for c in 0..self.index {
            for g in 0..self.generator_count() {
                let l = Letter::new(g, false);
                let d = self.image0(c, l.column());
                let mut w = trans[c].clone();
                w.0.push(l);
                let w = free_reduce(&w.concat(&trans[d].inverse()));
                if !w.is_empty() && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Checks every coset-table invariant against a presentation.
    pub fn validate(&self, p: &Presentation) -> Result<(), String> {
        if self.columns != 2 * p.generator_count() {
            return Err("column count does not match presentation".into());
        }
        for g in 0..p.generator_count() {
            let fwd = self.permutation(Letter::new(g, false));
            let back = self.permutation(Letter::new(g, true));
            let mut hit = vec![false; self.index];
            for c in 0..self.index {
                if fwd[c] >= self.index || back[fwd[c]] != c {
                    return Err(format!("generator {g} is not a permutation"));
                }
                hit[fwd[c]] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(format!("generator {g} is not surjective"));
            }
        }
        for (i, r) in p.relators.iter().enumerate() {
            for c in 1..=self.index {
                if self.act(c, r) != c {
                    return Err(format!("relator {i} does not close at coset {c}"));
                }
            }
        }
        for w in &self.subgroup_generators {
            if self.act(1, w) != 1 {
                return Err(format!("subgroup generator {} moves coset 1", p.format_word(w)));
            }
        }
        if self.standardized_rows(0).is_none() {
            return Err("action is not transitive".into());
        }
        Ok(())
    }

    /// Lattice of translations `u^a v^b` fixing coset 1.
    ///
    /// `u` and `v` must commute in the group; this is checked on the table.
    pub fn translation_sublattice(&self, u: usize, v: usize) -> SublatticeBasis {
        self.assert_commuting(u, v);
        let (lattice, orbit) = orbit_lattice(0usize, |&c, axis, forward| {
            let g = if axis == 0 { u } else { v };
            self.image0(c, Letter::new(g, !forward).column())
        });
        debug_assert_eq!(lattice.index() as usize, orbit);
        lattice
    }

    /// Lattice of translations acting trivially on every coset.
    pub fn kernel_sublattice(&self, u: usize, v: usize) -> SublatticeBasis {
        self.assert_commuting(u, v);
        let identity: Vec<u32> = (0..self.index as u32).collect();
        let pu = self.permutation(Letter::new(u, false));
        let pui = self.permutation(Letter::new(u, true));
        let pv = self.permutation(Letter::new(v, false));
        let pvi = self.permutation(Letter::new(v, true));
        let (lattice, _) = orbit_lattice(identity, |state, axis, forward| {
            let p = match (axis, forward) {
                (0, true) => &pu,
                (0, false) => &pui,
                (_, true) => &pv,
                (_, false) => &pvi,
            };
            state.iter().map(|&c| p[c as usize] as u32).collect()
        });
        lattice
    }

    fn assert_commuting(&self, u: usize, v: usize) {
        let w = Word(vec![
            Letter::new(u, false),
            Letter::new(v, false),
            Letter::new(u, true),
            Letter::new(v, true),
        ]);
        for c in 1..=self.index {
            assert_eq!(self.act(c, &w), c, "translations do not commute on the table");
        }
    }
}

/// Hasselgrove–Leech–Trotter enumeration with lookahead on overflow.
struct Enumerator<'a> {
    columns: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_cosets: usize,
    relators: Vec<Vec<usize>>,
    subgens: &'a [Vec<usize>],
}

impl<'a> Enumerator<'a> {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn new_coset(&mut self) -> Result<usize, FpError> {
        if self.live >= self.max_cosets {
            self.lookahead();
            if self.live >= self.max_cosets {
                return Err(FpError::WorkspaceExceeded(self.max_cosets));
            }
        }
        let c = self.rows.len();
        self.rows.push(vec![NONE; self.columns]);
        self.parent.push(c);
        self.live += 1;
        Ok(c)
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), FpError> {
        let d = self.new_coset()?;
        self.rows[c][col] = d;
        self.rows[d][col ^ 1] = c;
        Ok(())
    }

    /// Scans `w` from `c` back to `c`; fills gaps with new cosets if `fill`.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), FpError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.rows[f][w[i]] != NONE {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.rows[b][w[j - 1] ^ 1] != NONE {
                b = self.rows[b][w[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.rows[f][w[i]] = b;
                self.rows[b][w[i] ^ 1] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
            if !self.is_live(f) || !self.is_live(b) {
                // lookahead merged cosets under us; restart from the survivor
                let c = self.rep(c);
                f = c;
                b = c;
                i = 0;
                j = w.len();
            }
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let e = queue[qi];
            qi += 1;
            for col in 0..self.columns {
                let f = self.rows[e][col];
                if f == NONE {
                    continue;
                }
                if self.rows[f][col ^ 1] == e {
                    self.rows[f][col ^ 1] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.rows[e1][col] != NONE {
                    let t = self.rows[e1][col];
                    let t = self.rep(t);
                    self.merge(f1, t, &mut queue);
                } else if self.rows[f1][col ^ 1] != NONE {
                    let t = self.rows[f1][col ^ 1];
                    let t = self.rep(t);
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][col] = f1;
                    self.rows[f1][col ^ 1] = e1;
                }
            }
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.live -= 1;
        queue.push(drop);
    }

    fn lookahead(&mut self) {
        let rels = self.relators.clone();
        let mut c = 0;
        while c < self.rows.len() {
            if self.is_live(c) {
                for r in &rels {
                    if !self.is_live(c) {
                        break;
                    }
                    // a non-filling scan never allocates
                    let _ = self.scan(c, r, false);
                }
            }
            c += 1;
        }
    }

    fn run(&mut self) -> Result<(), FpError> {
        self.rows.push(vec![NONE; self.columns]);
        self.parent.push(0);
        self.live = 1;
        for w in self.subgens {
            self.scan(0, w, true)?;
        }
        let rels = self.relators.clone();
        loop {
            let mut c = 0;
            while c < self.rows.len() {
                if self.is_live(c) {
                    for r in &rels {
                        if !self.is_live(c) {
                            break;
                        }
                        self.scan(c, r, true)?;
                    }
                    for col in 0..self.columns {
                        if self.is_live(c) && self.rows[c][col] == NONE {
                            self.define(c, col)?;
                        }
                    }
                }
                c += 1;
            }
            if self.is_closed(&rels) {
                return Ok(());
            }
        }
    }

    fn is_closed(&mut self, rels: &[Vec<usize>]) -> bool {
        for c in 0..self.rows.len() {
            if !self.is_live(c) {
                continue;
            }
            if self.rows[c].iter().any(|&d| d == NONE || self.parent[d] != d) {
                return false;
            }
            for r in rels.iter().chain(if c == 0 { self.subgens.iter() } else { [].iter() }) {
                let end = r.iter().fold(c, |x, &col| self.rows[x][col]);
                if end != c {
                    return false;
                }
            }
        }
        true
    }

    /// Compacted rows over live cosets (0-based).
    fn compact(mut self) -> Vec<u32> {
        let n = self.rows.len();
        let mut new_id = vec![NONE; n];
        let mut next = 0;
        for (c, id) in new_id.iter_mut().enumerate() {
            if self.is_live(c) {
                *id = next;
                next += 1;
            }
        }
        let mut out = Vec::with_capacity(next * self.columns);
        for c in 0..n {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.columns {
                let d = self.rows[c][col];
                let d = self.rep(d);
                out.push(new_id[d] as u32);
            }
        }
        out
    }
}

/// Coset table of `⟨gens⟩` in the group presented by `p`.
pub fn coset_enumerate(
    p: &Presentation,
    gens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, FpError> {
    let columns = 2 * p.generator_count();
    let subgens: Vec<Vec<usize>> = gens.iter().map(Word::columns).collect();
    let mut e = Enumerator {
        columns,
        rows: Vec::new(),
        parent: Vec::new(),
        live: 0,
        max_cosets: max_cosets.max(1),
        relators: p.relators.iter().map(Word::columns).collect(),
        subgens: &subgens,
    };
    e.run()?;
    let rows = e.compact();
    Ok(CosetTable::from_rows(columns, rows, gens.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: usize) -> Presentation {
        let rot = vec!["a"; n].join(" ");
        Presentation::new(&format!("D{n}"), &["a", "b"], &[&rot, "b b", "a b a b"]).unwrap()
    }

    #[test]
    fn dihedral_orders() {
        for n in [2, 3, 4, 6] {
            let p = dihedral(n);
            let t = coset_enumerate(&p, &[], 100).unwrap();
            assert_eq!(t.index(), 2 * n);
            t.validate(&p).unwrap();
            let r = coset_enumerate(&p, &[Word::generator(1)], 100).unwrap();
            assert_eq!(r.index(), n);
        }
    }

    #[test]
    fn workspace_exceeded_for_infinite_index() {
        let z2 = Presentation::new("Z2", &["u", "v"], &["u v u' v'"]).unwrap();
        let err = coset_enumerate(&z2, &[Word::generator(0)], 50).unwrap_err();
        assert_eq!(err, FpError::WorkspaceExceeded(50));
    }

    #[test]
    fn suborbits_and_fixed_cosets() {
        let p = dihedral(4);
        // cosets of ⟨b⟩: 4 of them, b swaps in pairs except fixed ones
        let t = coset_enumerate(&p, &[Word::generator(1)], 100).unwrap();
        let b = [Word::generator(1)];
        let fixed = t.fixed_cosets(&b);
        assert!(fixed.contains(&1));
        let orbits = t.suborbits(&b);
        let total: usize = orbits.iter().map(Vec::len).sum();
        assert_eq!(total, 4);
        assert_eq!(t.fixed_cosets(&[]), vec![1, 2, 3, 4]);
        assert_eq!(t.suborbits(&[Word::generator(0), Word::generator(1)]).len(), 1);
    }

    #[test]
    fn schreier_generators_regenerate_subgroup() {
        let p = dihedral(6);
        let t = coset_enumerate(&p, &[Word::power(0, 2), Word::generator(1)], 100).unwrap();
        assert_eq!(t.index(), 2);
        let gens = t.schreier_generators();
        let t2 = coset_enumerate(&p, &gens, 100).unwrap();
        assert!(t.same_subgroup(&t2));
    }
}
