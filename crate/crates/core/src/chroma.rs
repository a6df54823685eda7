//! Perfect transitive colorings from subgroups of the symmetry group.
//!
//! A coloring with `n` colors comes from a subgroup `J` of index `n` that
//! contains a conjugate of every tile stabilizer. Colors are the cosets of
//! `J`. For each G-orbit `i` we pick a coset `c_i` fixed by the seed's
//! stabilizer (the orbit representative is then `k·x_i` for any `k` with
//! `J k = c_i`), and a tile `w·x_i` receives the coset `c_i · w⁻¹`. Coset
//! tables act on the right, so this is the left coset `w k⁻¹ J` in disguise.
//!
//! Two schemes are identified when they induce the same partition of the
//! tiles. For a coloring on which all of G acts, relabeling colors or moving
//! the partition by a symmetry never produces anything new, so partition
//! equality is the whole equivalence.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::catalog::{PatchTile, TilingSpec, U, V};
use crate::exactgeo::PolygonKey;
use crate::fpgroup::{low_index_subgroups, CosetTable, FpError, Letter, SublatticeBasis, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaError {
    #[error("{tiling}: no admissible subgroup of index at most {bound}")]
    BoundExceeded { tiling: String, bound: usize },
    #[error("patch too small: {0}")]
    InsufficientPatch(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error(transparent)]
    Group(#[from] FpError),
}

/// A subgroup `J` plus one representative coset per G-orbit.
#[derive(Clone, Debug)]
pub struct ColoringScheme<'a> {
    pub spec: &'a TilingSpec,
    pub subgroup: CosetTable,
    /// `reps[i]` is the coset (1-based) chosen for orbit `i + 1`.
    pub reps: Vec<usize>,
}

/// A tile as `(base-cell index, lattice shift)`, see [`TilingSpec::cell_tile`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TileRef {
    pub base: usize,
    pub shift: [i64; 2],
}

/// A coloring restricted to one cell of a lattice of translations that fix
/// every color. Tiles are named by [`TileRef`] with shifts reduced to the
/// canonical coset representatives of `cell`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionFingerprint {
    pub cell: SublatticeBasis,
    pub classes: Vec<Vec<TileRef>>,
}

/// One equivalence class of schemes.
#[derive(Clone, Debug)]
pub struct ColoringClass<'a> {
    pub scheme: ColoringScheme<'a>,
    pub fingerprint: PartitionFingerprint,
    /// Number of schemes found to induce this partition.
    pub schemes: usize,
}

/// A colored patch: the first `core` tiles cover one cell of `cell`; the rest
/// is margin.
#[derive(Clone, Debug)]
pub struct ColorAssignment<'a> {
    pub scheme: ColoringScheme<'a>,
    pub cell: SublatticeBasis,
    pub core: usize,
    pub patch: Vec<(PatchTile, usize)>,
}

/// Why a patch fails to be perfectly colored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    pub detail: String,
}

fn largest_stabilizer(spec: &TilingSpec) -> &[Word] {
    let seed = spec
        .seeds
        .iter()
        .rev()
        .max_by_key(|s| s.stabilizer_type.order())
        .expect("tilings have seeds");
    &seed.stabilizer_words
}

fn is_admissible(spec: &TilingSpec, j: &CosetTable) -> bool {
    spec.seeds.iter().all(|s| !j.fixed_cosets(&s.stabilizer_words).is_empty())
}

/// Admissible subgroups of every index `2..=n_max`, grouped by index.
fn admissible_up_to(spec: &TilingSpec, n_max: usize) -> Result<BTreeMap<usize, Vec<CosetTable>>, ChromaError> {
    let mut out: BTreeMap<usize, Vec<CosetTable>> = BTreeMap::new();
    for j in low_index_subgroups(&spec.presentation, n_max, largest_stabilizer(spec))? {
        if j.index() >= 2 && is_admissible(spec, &j) {
            out.entry(j.index()).or_default().push(j);
        }
    }
    Ok(out)
}

/// Subgroups of index exactly `n`, up to conjugacy, containing a conjugate
/// of every tile stabilizer.
pub fn admissible_subgroups(spec: &TilingSpec, n: usize) -> Result<Vec<CosetTable>, ChromaError> {
    assert!(n >= 2, "a nontrivial coloring needs at least two colors");
    Ok(admissible_up_to(spec, n)?.remove(&n).unwrap_or_default())
}

/// The least `n ≥ 2` with an admissible subgroup of index `n`.
pub fn coloring_number(spec: &TilingSpec) -> Result<usize, ChromaError> {
    admissible_up_to(spec, spec.roth_bound)?
        .keys()
        .next()
        .copied()
        .ok_or_else(|| ChromaError::BoundExceeded { tiling: spec.name.clone(), bound: spec.roth_bound })
}

/// Every admissible `J` of index `n` combined with every choice of fixed
/// representative cosets.
pub fn enumerate_schemes(spec: &TilingSpec, n: usize) -> Result<Vec<ColoringScheme<'_>>, ChromaError> {
    let mut out = Vec::new();
    for j in admissible_subgroups(spec, n)? {
        let choices: Vec<Vec<usize>> = spec.seeds.iter().map(|s| j.fixed_cosets(&s.stabilizer_words)).collect();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let reps = pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
            out.push(ColoringScheme { spec, subgroup: j.clone(), reps });
            // odometer, last orbit fastest
            let mut i = choices.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
            if pick.iter().all(|&k| k == 0) {
                break;
            }
        }
    }
    Ok(out)
}

impl<'a> ColoringScheme<'a> {
    pub fn n(&self) -> usize {
        self.subgroup.index()
    }

    /// Translations acting trivially on all colors.
    pub fn cell(&self) -> SublatticeBasis {
        self.subgroup.kernel_sublattice(U, V)
    }

    /// For each orbit, a word `k` with `act(1, k) = reps[i]`.
    pub fn transport_words(&self) -> Vec<Word> {
        let t = self.subgroup.transversal();
        self.reps.iter().map(|&c| t[c - 1].clone()).collect()
    }

    /// The chosen representative tile of each orbit.
    pub fn representative_tiles(&self) -> Vec<PatchTile> {
        self.transport_words()
            .into_iter()
            .zip(&self.spec.seeds)
            .map(|(k, s)| PatchTile {
                orbit_index: s.orbit_index,
                polygon: self.spec.realize(&k).apply(&s.polygon),
                witness: k,
            })
            .collect()
    }

    fn color_by_witness(&self, orbit: usize, witness: &Word) -> usize {
        self.subgroup.act(self.reps[orbit - 1], &witness.inverse())
    }

    fn color_of_ref(&self, t: TileRef) -> usize {
        let b = &self.spec.base_tiles()[t.base];
        let c = self.subgroup.act(self.reps[b.orbit_index - 1], &b.witness.inverse());
        // the witness of the shifted tile is u^a v^b · w
        let back = Word::power(V, -t.shift[1]);
        let back = back.concat(&Word::power(U, -t.shift[0]));
        self.subgroup.act(c, &back)
    }
}

/// Color (1-based coset id) of a tile, from its witness.
pub fn color_of(scheme: &ColoringScheme<'_>, t: &PatchTile) -> usize {
    scheme.color_by_witness(t.orbit_index, &t.witness)
}

fn cell_refs(spec: &TilingSpec, cell: &SublatticeBasis) -> Vec<TileRef> {
    let mut out = Vec::new();
    for shift in cell.coset_representatives() {
        for base in 0..spec.base_tiles().len() {
            out.push(TileRef { base, shift });
        }
    }
    out
}

/// The partition induced by a scheme on one cell of its color-fixing lattice.
pub fn fingerprint(scheme: &ColoringScheme<'_>) -> PartitionFingerprint {
    let cell = scheme.cell();
    let mut classes: Vec<Vec<TileRef>> = vec![Vec::new(); scheme.n()];
    for r in cell_refs(scheme.spec, &cell) {
        classes[scheme.color_of_ref(r) - 1].push(r);
    }
    PartitionFingerprint::new(cell, classes)
}

impl PartitionFingerprint {
    fn new(cell: SublatticeBasis, mut classes: Vec<Vec<TileRef>>) -> Self {
        classes.retain(|c| !c.is_empty());
        for c in &mut classes {
            c.sort();
        }
        classes.sort();
        PartitionFingerprint { cell, classes }
    }

    /// The same partition described on a finer cell `target ⊆ self.cell`.
    pub fn refine(&self, target: &SublatticeBasis) -> PartitionFingerprint {
        assert!(target.is_sublattice_of(&self.cell), "refinement needs a sublattice");
        let mut lifts: HashMap<[i64; 2], Vec<[i64; 2]>> = HashMap::new();
        for q in target.coset_representatives() {
            lifts.entry(self.cell.reduce(q).0).or_default().push(q);
        }
        let classes = self
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .flat_map(|r| lifts[&r.shift].iter().map(move |&shift| TileRef { base: r.base, shift }))
                    .collect()
            })
            .collect();
        PartitionFingerprint::new(*target, classes)
    }

    /// Equality of the underlying infinite partitions.
    pub fn same_partition(&self, other: &PartitionFingerprint) -> bool {
        if self.cell == other.cell {
            return self.classes == other.classes;
        }
        let common = self.cell.intersect(&other.cell);
        self.refine(&common).classes == other.refine(&common).classes
    }
}

/// Schemes of index `n`, merged by partition equality, in order of first
/// appearance.
pub fn enumerate_classes(spec: &TilingSpec, n: usize) -> Result<Vec<ColoringClass<'_>>, ChromaError> {
    let mut out: Vec<ColoringClass<'_>> = Vec::new();
    for scheme in enumerate_schemes(spec, n)? {
        let fp = fingerprint(&scheme);
        match out.iter_mut().find(|c| c.fingerprint.same_partition(&fp)) {
            Some(c) => c.schemes += 1,
            None => out.push(ColoringClass { scheme, fingerprint: fp, schemes: 1 }),
        }
    }
    Ok(out)
}

fn letter_name(spec: &TilingSpec, l: Letter) -> String {
    let name = &spec.presentation.generators[l.generator];
    if l.inverse {
        format!("{name}'")
    } else {
        name.clone()
    }
}

impl<'a> ColorAssignment<'a> {
    /// One cell of the scheme's color-fixing lattice plus every image of it
    /// under one generator or inverse, each tile colored from its witness.
    pub fn from_scheme(scheme: &ColoringScheme<'a>) -> Self {
        let spec = scheme.spec;
        let cell = scheme.cell();
        let mut patch: Vec<(PatchTile, usize)> = Vec::new();
        let mut seen: HashMap<PolygonKey, usize> = HashMap::new();
        for r in cell_refs(spec, &cell) {
            let t = spec.cell_tile(r.base, r.shift);
            seen.insert(t.polygon.key(), patch.len());
            let c = color_of(scheme, &t);
            patch.push((t, c));
        }
        let core = patch.len();
        for i in 0..core {
            for col in 0..2 * spec.presentation.generator_count() {
                let l = Letter::from_column(col);
                let t = &patch[i].0;
                let img = PatchTile {
                    orbit_index: t.orbit_index,
                    polygon: spec.letter_isometry(l).apply(&t.polygon),
                    witness: Word(vec![l]).concat(&t.witness).free_reduce(),
                };
                if let Entry::Vacant(e) = seen.entry(img.polygon.key()) {
                    e.insert(patch.len());
                    let c = color_of(scheme, &img);
                    patch.push((img, c));
                }
            }
        }
        ColorAssignment { scheme: scheme.clone(), cell, core, patch }
    }

    /// Extends colors given on one cell of `cell` periodically by one
    /// generator step. Used to check colorings that do not come from a
    /// scheme's own color rule.
    pub fn periodic(
        scheme: ColoringScheme<'a>,
        cell: SublatticeBasis,
        core: Vec<(PatchTile, usize)>,
    ) -> Result<Self, ChromaError> {
        let spec = scheme.spec;
        let cols = 2 * spec.presentation.generator_count();
        for col in 0..cols {
            let m = spec.lattice_action(Letter::from_column(col));
            for r in cell.basis() {
                let img = [m[0][0] * r[0] + m[0][1] * r[1], m[1][0] * r[0] + m[1][1] * r[1]];
                if !cell.contains(img) {
                    return Err(ChromaError::InvalidAssignment("cell lattice is not invariant under the group".into()));
                }
            }
        }
        let mut by_ref: HashMap<TileRef, usize> = HashMap::new();
        for (t, c) in &core {
            let (base, shift) = spec
                .locate(&t.polygon)
                .ok_or_else(|| ChromaError::InvalidAssignment("a tile is not part of the tiling".into()))?;
            if base_orbit(spec, base) != t.orbit_index {
                return Err(ChromaError::InvalidAssignment("a tile has the wrong orbit index".into()));
            }
            let r = TileRef { base, shift: cell.reduce(shift).0 };
            if by_ref.insert(r, *c).is_some() {
                return Err(ChromaError::InvalidAssignment("two tiles coincide modulo the cell".into()));
            }
        }
        let expected = cell.index() as usize * spec.base_tiles().len();
        if by_ref.len() != expected {
            return Err(ChromaError::InsufficientPatch(format!(
                "{} tiles given, one cell has {expected}",
                by_ref.len()
            )));
        }
        let mut patch = core;
        let core_len = patch.len();
        let mut seen: HashMap<PolygonKey, ()> = patch.iter().map(|(t, _)| (t.polygon.key(), ())).collect();
        for i in 0..core_len {
            for col in 0..cols {
                let l = Letter::from_column(col);
                let t = &patch[i].0;
                let poly = spec.letter_isometry(l).apply(&t.polygon);
                let key = poly.key();
                if seen.contains_key(&key) {
                    continue;
                }
                let (base, shift) = spec.locate(&poly).expect("generators map tiles to tiles");
                let c = by_ref[&TileRef { base, shift: cell.reduce(shift).0 }];
                let img = PatchTile { orbit_index: t.orbit_index, polygon: poly, witness: Word(vec![l]).concat(&t.witness) };
                seen.insert(key, ());
                patch.push((img, c));
            }
        }
        Ok(ColorAssignment { scheme, cell, core: core_len, patch })
    }

    pub fn n(&self) -> usize {
        self.scheme.n()
    }

    /// For each generator, the permutation it induces on colors (0-based
    /// images of 1-based colors at index `c - 1`), or the first violation.
    pub fn color_permutations(&self) -> Result<Result<Vec<Vec<usize>>, Violation>, ChromaError> {
        let spec = self.scheme.spec;
        let n = self.n();
        let color: HashMap<PolygonKey, usize> = self.patch.iter().map(|(t, c)| (t.polygon.key(), *c)).collect();
        if let Some((_, c)) = self.patch.iter().find(|(_, c)| *c == 0 || *c > n) {
            return Err(ChromaError::InvalidAssignment(format!("color {c} outside 1..={n}")));
        }
        let mut perms = Vec::new();
        for col in 0..2 * spec.presentation.generator_count() {
            let l = Letter::from_column(col);
            let iso = spec.letter_isometry(l);
            let mut map: Vec<Option<usize>> = vec![None; n + 1];
            for (i, (t, c)) in self.patch.iter().enumerate() {
                let image = match color.get(&iso.apply(&t.polygon).key()) {
                    Some(&d) => d,
                    None if i < self.core => {
                        return Err(ChromaError::InsufficientPatch(format!(
                            "image of a core tile under {} is missing",
                            letter_name(spec, l)
                        )))
                    }
                    None => continue,
                };
                match map[*c] {
                    None => map[*c] = Some(image),
                    Some(d) if d == image => {}
                    Some(d) => {
                        return Ok(Err(Violation {
                            generator: letter_name(spec, l),
                            detail: format!("color {c} is sent to both {d} and {image}"),
                        }))
                    }
                }
            }
            let mut perm = Vec::with_capacity(n);
            let mut hit = vec![false; n + 1];
            for (c, &image) in map.iter().enumerate().skip(1) {
                let Some(d) = image else {
                    return Ok(Err(Violation {
                        generator: letter_name(spec, l),
                        detail: format!("color {c} does not occur on the patch"),
                    }));
                };
                if std::mem::replace(&mut hit[d], true) {
                    return Ok(Err(Violation {
                        generator: letter_name(spec, l),
                        detail: format!("two colors are sent to {d}"),
                    }));
                }
                perm.push(d);
            }
            perms.push(perm);
        }
        Ok(Ok(perms))
    }
}

fn base_orbit(spec: &TilingSpec, base: usize) -> usize {
    spec.base_tiles()[base].orbit_index
}

/// Every generator permutes the colors.
pub fn verify_perfect(a: &ColorAssignment<'_>) -> Result<bool, ChromaError> {
    Ok(a.color_permutations()?.is_ok())
}

/// The generator-induced color permutations form a transitive group.
pub fn verify_transitive(a: &ColorAssignment<'_>) -> Result<bool, ChromaError> {
    let Ok(perms) = a.color_permutations()? else { return Ok(false) };
    let n = a.n();
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    let mut queue = VecDeque::from([1usize]);
    while let Some(c) = queue.pop_front() {
        for p in &perms {
            let d = p[c - 1];
            if !std::mem::replace(&mut seen[d], true) {
                queue.push_back(d);
            }
        }
    }
    Ok(seen[1..].iter().all(|&s| s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_tiling;

    #[test]
    fn snub_cells_two_colors() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let j = admissible_subgroups(&spec, 2).unwrap();
        assert_eq!(j.len(), 1);
        let g: Vec<String> = j[0].subgroup_generators().iter().map(|w| spec.presentation.format_word(w)).collect();
        assert_eq!(g, ["r", "s", "u u", "u v"]);
        assert_eq!(coloring_number(&spec).unwrap(), 2);
    }

    #[test]
    fn four_schemes_two_classes() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let schemes = enumerate_schemes(&spec, 2).unwrap();
        assert_eq!(schemes.len(), 4);
        let fp: Vec<PartitionFingerprint> = schemes.iter().map(fingerprint).collect();
        assert!(fp[0].same_partition(&fp[3]));
        assert!(fp[1].same_partition(&fp[2]));
        assert!(!fp[0].same_partition(&fp[1]));
        assert_eq!(enumerate_classes(&spec, 2).unwrap().len(), 2);
    }

    #[test]
    fn representatives_get_first_color() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        for s in enumerate_schemes(&spec, 2).unwrap() {
            for t in s.representative_tiles() {
                assert_eq!(color_of(&s, &t), 1);
            }
        }
        let s = &enumerate_schemes(&spec, 2).unwrap()[0];
        let u = spec.presentation.parse_word("u").unwrap();
        let seed = &spec.seeds[0];
        let moved = PatchTile { orbit_index: 1, polygon: spec.realize(&u).apply(&seed.polygon), witness: u };
        let here = PatchTile { orbit_index: 1, polygon: seed.polygon.clone(), witness: Word::identity() };
        assert_ne!(color_of(s, &moved), color_of(s, &here));
    }

    #[test]
    fn constructed_assignment_verifies() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        for s in enumerate_schemes(&spec, 2).unwrap() {
            let a = ColorAssignment::from_scheme(&s);
            assert!(verify_perfect(&a).unwrap());
            assert!(verify_transitive(&a).unwrap());
        }
    }

    #[test]
    fn recolored_tile_breaks_perfectness() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let s = enumerate_schemes(&spec, 2).unwrap().remove(0);
        let a = ColorAssignment::from_scheme(&s);
        let mut core: Vec<(PatchTile, usize)> = a.patch[..a.core].to_vec();
        core[0].1 = 3 - core[0].1;
        let broken = ColorAssignment::periodic(s, a.cell, core).unwrap();
        assert!(!verify_perfect(&broken).unwrap());
    }

    #[test]
    fn two_palette_coloring_is_not_transitive() {
        // squares and triangles colored independently with disjoint palettes
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let s = enumerate_schemes(&spec, 2).unwrap().remove(0);
        let cell = SublatticeBasis::full();
        let core: Vec<(PatchTile, usize)> =
            (0..spec.base_tiles().len()).map(|b| (spec.cell_tile(b, [0, 0]), spec.base_tiles()[b].orbit_index)).collect();
        let a = ColorAssignment::periodic(s, cell, core).unwrap();
        assert!(verify_perfect(&a).unwrap());
        assert!(!verify_transitive(&a).unwrap());
    }

    #[test]
    fn small_patch_is_rejected() {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let s = enumerate_schemes(&spec, 2).unwrap().remove(0);
        let mut a = ColorAssignment::from_scheme(&s);
        a.patch.truncate(a.core);
        assert!(matches!(a.color_permutations(), Err(ChromaError::InsufficientPatch(_))));
    }
}
