//! The eight non-regular Archimedean tilings.
//!
//! Each tiling is shipped as a data file holding its symmetry group (by
//! name), an exact realization of every generator, and one seed tile per
//! G-orbit. Everything is re-validated at load time.
//!
//! Besides the seed data, a loaded [`TilingSpec`] carries a *base cell*: the
//! tiles whose centroids have lattice coordinates in `[0, 1)²`, each with a
//! witness word. A tile anywhere in the plane is then `(base index, shift)`,
//! and generators act on such pairs by a precomputed table.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Deserialize;
use thiserror::Error;

use crate::exactgeo::{basis_coordinates, ExactScalar, Isometry, Mat2, Point, Polygon, PolygonKey};
use crate::fpgroup::{coset_enumerate, free_reduce, CosetTable, Letter, Presentation, Word};

/// The supported tilings, in the customary table order.
pub const TILING_NAMES: [&str; 8] =
    ["3.3.3.4.4", "3.3.3.3.6", "3.3.4.3.4", "4.8.8", "3.6.3.6", "3.12.12", "3.4.6.4", "4.6.12"];

/// Number of G-orbits of tiles, aligned with [`TILING_NAMES`].
pub const ORBIT_COUNTS: [usize; 8] = [2, 3, 2, 2, 2, 2, 3, 3];

/// Generator index of the translation `u` in every shipped presentation.
pub const U: usize = 0;
/// Generator index of the translation `v`.
pub const V: usize = 1;

/// Worst-case coloring number of a wallpaper group type; an upper bound for
/// every search in this crate.
pub fn roth_bound(group: &str) -> Option<usize> {
    match group {
        "cmm" => Some(3),
        "p6" => Some(7),
        "p4g" | "p4m" => Some(9),
        "p6m" => Some(25),
        _ => None,
    }
}

const GROUP_FILES: [(&str, &str); 5] = [
    ("cmm", include_str!("../data/groups/cmm.toml")),
    ("p4g", include_str!("../data/groups/p4g.toml")),
    ("p4m", include_str!("../data/groups/p4m.toml")),
    ("p6", include_str!("../data/groups/p6.toml")),
    ("p6m", include_str!("../data/groups/p6m.toml")),
];

const TILING_FILES: [&str; 8] = [
    include_str!("../data/tilings/3.3.3.4.4.toml"),
    include_str!("../data/tilings/3.3.3.3.6.toml"),
    include_str!("../data/tilings/3.3.4.3.4.toml"),
    include_str!("../data/tilings/4.8.8.toml"),
    include_str!("../data/tilings/3.6.3.6.toml"),
    include_str!("../data/tilings/3.12.12.toml"),
    include_str!("../data/tilings/3.4.6.4.toml"),
    include_str!("../data/tilings/4.6.12.toml"),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown tiling `{0}`")]
    UnknownTiling(String),
    #[error("tiling {tiling} failed validation: {reason}")]
    ValidationFailure { tiling: String, reason: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Abstract type of a finite point stabilizer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StabilizerType {
    Cyclic(usize),
    Dihedral(usize),
}

impl StabilizerType {
    pub fn order(self) -> usize {
        match self {
            StabilizerType::Cyclic(k) => k,
            StabilizerType::Dihedral(k) => 2 * k,
        }
    }
}

impl fmt::Display for StabilizerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilizerType::Cyclic(k) => write!(f, "C{k}"),
            StabilizerType::Dihedral(k) => write!(f, "D{k}"),
        }
    }
}

impl FromStr for StabilizerType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let k = |t: &str| t.parse::<usize>().ok().filter(|&k| k >= 1);
        match (s.get(..1), s.get(1..).and_then(k)) {
            (Some("C"), Some(k)) => Ok(StabilizerType::Cyclic(k)),
            (Some("D"), Some(k)) => Ok(StabilizerType::Dihedral(k)),
            _ => Err(format!("bad stabilizer type `{s}`")),
        }
    }
}

/// The chosen representative `x_i` of one G-orbit of tiles.
#[derive(Clone, Debug)]
pub struct SeedTile {
    /// 1-based.
    pub orbit_index: usize,
    pub polygon: Polygon,
    /// Generators of the stabilizer of `polygon` in G.
    pub stabilizer_words: Vec<Word>,
    pub stabilizer_type: StabilizerType,
}

/// A tile together with a group element carrying its orbit's seed onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchTile {
    pub orbit_index: usize,
    pub polygon: Polygon,
    pub witness: Word,
}

#[derive(Clone, Debug)]
struct PointGroupElement {
    word: Word,
    isometry: Isometry,
}

/// A fully validated tiling.
#[derive(Clone, Debug)]
pub struct TilingSpec {
    pub name: String,
    pub field_d: u8,
    pub presentation: Presentation,
    /// Isometry of each generator, in presentation order.
    pub realization: Vec<Isometry>,
    pub seeds: Vec<SeedTile>,
    pub roth_bound: usize,
    inverses: Vec<Isometry>,
    point_group: Vec<PointGroupElement>,
    base: Vec<PatchTile>,
    base_index: HashMap<PolygonKey, usize>,
    // moves[column][base] = image of the base tile as (base, shift)
    moves: Vec<Vec<(usize, [i64; 2])>>,
    // lattice_action[column]: linear part acting on exponent coordinates
    lattice_action: Vec<[[i64; 2]; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TilingFile {
    format: u32,
    name: String,
    group: String,
    field: u8,
    roth_bound: usize,
    generator: Vec<GeneratorFile>,
    seed: Vec<SeedFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    name: String,
    linear: [String; 4],
    offset: [String; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedFile {
    orbit: usize,
    stabilizer_type: String,
    stabilizer: Vec<String>,
    vertices: Vec<[String; 2]>,
}

/// The presentation of a shipped wallpaper group (`cmm`, `p4g`, `p4m`, `p6`
/// or `p6m`).
pub fn load_group(name: &str) -> Option<Presentation> {
    let (_, text) = GROUP_FILES.iter().find(|(n, _)| *n == name)?;
    Some(Presentation::from_toml(text).expect("shipped presentation parses"))
}

/// Loads and validates one of the tilings in [`TILING_NAMES`].
pub fn load_tiling(name: &str) -> Result<TilingSpec, CatalogError> {
    let pos = TILING_NAMES
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| CatalogError::UnknownTiling(name.to_string()))?;
    let fail = |reason: String| CatalogError::ValidationFailure { tiling: name.to_string(), reason };
    let file: TilingFile = toml::from_str(TILING_FILES[pos]).map_err(|e| fail(e.to_string()))?;
    build(file, ORBIT_COUNTS[pos]).map_err(fail)
}

/// Every supported tiling, in [`TILING_NAMES`] order.
pub fn load_all() -> Result<Vec<TilingSpec>, CatalogError> {
    TILING_NAMES.iter().map(|n| load_tiling(n)).collect()
}

/// Number of G-orbits of tiles.
pub fn orbit_count(spec: &TilingSpec) -> usize {
    spec.seeds.len()
}

fn as_integer(s: &ExactScalar) -> Option<i64> {
    if s.is_rational() && s.rational_part().is_integer() {
        s.rational_part().to_integer().to_i64()
    } else {
        None
    }
}

fn build(file: TilingFile, expected_orbits: usize) -> Result<TilingSpec, String> {
    if file.format != 1 {
        return Err(format!("unsupported format {}", file.format));
    }
    let d = file.field;
    if d != 2 && d != 3 {
        return Err(format!("unsupported field Q(√{d})"));
    }
    let presentation = load_group(&file.group).ok_or_else(|| format!("unknown group `{}`", file.group))?;
    let expected_roth = roth_bound(&file.group).expect("every shipped group has a bound");
    if file.roth_bound != expected_roth {
        return Err(format!("roth_bound {} but {} has {expected_roth}", file.roth_bound, file.group));
    }
    let names: Vec<&str> = file.generator.iter().map(|g| g.name.as_str()).collect();
    if names != presentation.generators.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(format!("generators {names:?} do not match the presentation"));
    }
    if presentation.generators.get(U).map(String::as_str) != Some("u")
        || presentation.generators.get(V).map(String::as_str) != Some("v")
    {
        return Err("the first two generators must be the translations u, v".into());
    }

    let scalar = |t: &str| ExactScalar::parse_in(d, t).map_err(|e| e.to_string());
    let mut realization = Vec::new();
    for g in &file.generator {
        let entries = [scalar(&g.linear[0])?, scalar(&g.linear[1])?, scalar(&g.linear[2])?, scalar(&g.linear[3])?];
        let linear = Mat2(entries);
        if !linear.is_orthogonal() {
            return Err(format!("generator {} is not an isometry", g.name));
        }
        let offset = Point::new(scalar(&g.offset[0])?, scalar(&g.offset[1])?);
        realization.push(Isometry::new(linear, offset));
    }
    let inverses: Vec<Isometry> = realization.iter().map(Isometry::invert).collect();
    if !realization[U].is_translation() || !realization[V].is_translation() {
        return Err("u and v must be translations".into());
    }
    if realization[U].offset.cross(&realization[V].offset).is_zero() {
        return Err("u and v are parallel".into());
    }

    let mut spec = TilingSpec {
        name: file.name.clone(),
        field_d: d,
        presentation,
        realization,
        seeds: Vec::new(),
        roth_bound: file.roth_bound,
        inverses,
        point_group: Vec::new(),
        base: Vec::new(),
        base_index: HashMap::new(),
        moves: Vec::new(),
        lattice_action: Vec::new(),
    };

    for (i, r) in spec.presentation.relators.iter().enumerate() {
        if !spec.realize(r).is_identity() {
            return Err(format!("relator {i} ({}) does not realize to the identity", spec.presentation.format_word(r)));
        }
    }
    spec.point_group = point_group(&spec);
    spec.lattice_action = lattice_actions(&spec)?;
    check_finite_quotients(&spec)?;

    if file.seed.len() != expected_orbits {
        return Err(format!("{} seeds but the tiling has {expected_orbits} orbits", file.seed.len()));
    }
    for (i, s) in file.seed.iter().enumerate() {
        if s.orbit != i + 1 {
            return Err(format!("seed {} has orbit index {}", i + 1, s.orbit));
        }
        let vertices = s
            .vertices
            .iter()
            .map(|[x, y]| Ok(Point::new(scalar(x)?, scalar(y)?)))
            .collect::<Result<Vec<_>, String>>()?;
        let polygon = Polygon::new(vertices).map_err(|e| format!("seed {}: {e}", s.orbit))?;
        let stabilizer_words = s
            .stabilizer
            .iter()
            .map(|w| spec.presentation.parse_word(w).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, String>>()?;
        let stabilizer_type: StabilizerType = s.stabilizer_type.parse()?;
        let seed = SeedTile { orbit_index: s.orbit, polygon, stabilizer_words, stabilizer_type };
        check_seed(&spec, &seed)?;
        spec.seeds.push(seed);
    }
    for i in 0..spec.seeds.len() {
        for j in i + 1..spec.seeds.len() {
            if spec.equivalent(&spec.seeds[i].polygon, &spec.seeds[j].polygon) {
                return Err(format!("seeds {} and {} lie in one orbit", i + 1, j + 1));
            }
        }
    }
    build_base_cell(&mut spec)?;
    check_vertex_configuration(&spec)?;
    Ok(spec)
}

/// Linear parts reachable from the generators, each with a shortest word.
fn point_group(spec: &TilingSpec) -> Vec<PointGroupElement> {
    let d = spec.field_d;
    let mut out = vec![PointGroupElement { word: Word::identity(), isometry: Isometry::identity(d) }];
    let mut seen: HashSet<Mat2> = HashSet::from([Mat2::identity(d)]);
    let mut i = 0;
    while i < out.len() {
        for g in 0..spec.presentation.generator_count() {
            let iso = out[i].isometry.compose(&spec.realization[g]);
            if seen.insert(iso.linear.clone()) {
                let word = out[i].word.concat(&Word::generator(g));
                out.push(PointGroupElement { word, isometry: iso });
            }
        }
        i += 1;
        assert!(out.len() <= 12, "point group of a wallpaper group has order at most 12");
    }
    out
}

fn lattice_actions(spec: &TilingSpec) -> Result<Vec<[[i64; 2]; 2]>, String> {
    let mut out = Vec::new();
    for col in 0..2 * spec.presentation.generator_count() {
        let iso = spec.letter_isometry(Letter::from_column(col));
        let mut m = [[0i64; 2]; 2];
        for (j, e) in [spec.u(), spec.v()].iter().enumerate() {
            let (a, b) = spec.lattice_coordinates(&iso.linear.apply(e));
            match (as_integer(&a), as_integer(&b)) {
                (Some(a), Some(b)) => {
                    m[0][j] = a;
                    m[1][j] = b;
                }
                _ => return Err("a generator does not preserve the translation lattice".into()),
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `G / ⟨⟨u^k, v^k⟩⟩` must have order `k² · |point group|`.
fn check_finite_quotients(spec: &TilingSpec) -> Result<(), String> {
    let order = spec.point_group.len();
    for k in [2usize, 3] {
        let q = spec.presentation.with_power_relators(&[U, V], k as i64);
        let expected = k * k * order;
        let t = coset_enumerate(&q, &[], 8 * expected).map_err(|e| e.to_string())?;
        if t.index() != expected {
            return Err(format!("quotient by u^{k}, v^{k} has order {} instead of {expected}", t.index()));
        }
    }
    Ok(())
}

fn check_seed(spec: &TilingSpec, seed: &SeedTile) -> Result<(), String> {
    let poly = &seed.polygon;
    let i = seed.orbit_index;
    let one = ExactScalar::one(spec.field_d);
    if poly.squared_edge_lengths().iter().any(|l| *l != one) {
        return Err(format!("seed {i} does not have unit edges"));
    }
    let c = poly.centroid();
    let r0 = (&poly.vertices[0] - &c).norm2();
    if poly.vertices.iter().any(|p| (p - &c).norm2() != r0) {
        return Err(format!("seed {i} is not a regular polygon"));
    }
    // the listed words generate a group of the declared type fixing the tile
    let mut group: Vec<Isometry> = vec![Isometry::identity(spec.field_d)];
    let mut k = 0;
    while k < group.len() {
        for w in &seed.stabilizer_words {
            let g = group[k].compose(&spec.realize(w));
            if !group.contains(&g) {
                group.push(g);
            }
        }
        k += 1;
        if group.len() > 24 {
            return Err(format!("seed {i}: stabilizer words generate an infinite group"));
        }
    }
    for (w, g) in seed.stabilizer_words.iter().zip(seed.stabilizer_words.iter().map(|w| spec.realize(w))) {
        if g.apply(poly) != *poly {
            return Err(format!("seed {i}: `{}` does not fix the tile", spec.presentation.format_word(w)));
        }
    }
    let reflections = group.iter().any(Isometry::is_orientation_reversing);
    let generated = if reflections {
        StabilizerType::Dihedral(group.len() / 2)
    } else {
        StabilizerType::Cyclic(group.len())
    };
    if generated != seed.stabilizer_type {
        return Err(format!("seed {i}: stabilizer words generate {generated}, declared {}", seed.stabilizer_type));
    }
    let full = spec.stabilizer_order(poly);
    if full != group.len() {
        return Err(format!("seed {i}: stabilizer has order {full} but the words generate only {}", group.len()));
    }
    Ok(())
}

fn build_base_cell(spec: &mut TilingSpec) -> Result<(), String> {
    let mut base: Vec<PatchTile> = Vec::new();
    let mut keys: HashSet<PolygonKey> = HashSet::new();
    for seed in &spec.seeds {
        let mut count = 0;
        for pg in &spec.point_group {
            let poly = pg.isometry.apply(&seed.polygon);
            let shift = spec.cell_of(&poly.centroid());
            let poly = poly.translate(&spec.translation_vector([-shift[0], -shift[1]]));
            if keys.insert(poly.key()) {
                let witness = free_reduce(&translation_word([-shift[0], -shift[1]]).concat(&pg.word));
                base.push(PatchTile { orbit_index: seed.orbit_index, polygon: poly, witness });
                count += 1;
            }
        }
        let expected = spec.point_group.len() / seed.stabilizer_type.order();
        if count != expected {
            return Err(format!("orbit {} has {count} tiles per cell, expected {expected}", seed.orbit_index));
        }
    }
    base.sort_by_cached_key(|t| (t.orbit_index, t.polygon.key()));

    // tiles must exactly fill the cell
    let mut area = ExactScalar::zero(spec.field_d);
    for t in &base {
        area = &area + &t.polygon.double_area();
    }
    let cell = spec.u().cross(spec.v());
    let cell2 = &cell + &cell;
    if area != cell2 && area != -&cell2 {
        return Err(format!("tiles cover area {area}/2 of a cell of area {cell}"));
    }

    spec.base_index = base.iter().enumerate().map(|(i, t)| (t.polygon.key(), i)).collect();
    spec.base = base;
    let mut moves = Vec::new();
    for col in 0..2 * spec.presentation.generator_count() {
        let iso = spec.letter_isometry(Letter::from_column(col)).clone();
        let mut row = Vec::new();
        for t in &spec.base {
            let img = iso.apply(&t.polygon);
            row.push(spec.locate(&img).ok_or_else(|| "a generator maps a tile off the tiling".to_string())?);
        }
        moves.push(row);
    }
    spec.moves = moves;
    Ok(())
}

fn angle_order(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| {
        let sy = p.y.signum();
        sy == Ordering::Less || (sy == Ordering::Equal && p.x.signum() == Ordering::Less)
    };
    half(a).cmp(&half(b)).then_with(|| match a.cross(b).signum() {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    })
}

/// Around every seed vertex the polygons must appear in the cyclic order
/// named by the tiling (up to rotation and reflection).
fn check_vertex_configuration(spec: &TilingSpec) -> Result<(), String> {
    let wanted: Vec<usize> = spec.name.split('.').map(|k| k.parse().unwrap_or(0)).collect();
    let matches = |seq: &[usize]| {
        let n = wanted.len();
        seq.len() == n
            && (0..n).any(|s| {
                (0..n).all(|i| seq[(s + i) % n] == wanted[i]) || (0..n).all(|i| seq[(s + n - i) % n] == wanted[i])
            })
    };
    for seed in &spec.seeds {
        for p in &seed.polygon.vertices {
            let cell = spec.cell_of(p);
            let mut around: Vec<(Point, usize)> = Vec::new();
            for dx in -2..=2 {
                for dy in -2..=2 {
                    for t in &spec.base {
                        let poly = t.polygon.translate(&spec.translation_vector([cell[0] + dx, cell[1] + dy]));
                        if poly.vertices.contains(p) {
                            around.push((&poly.centroid() - p, poly.len()));
                        }
                    }
                }
            }
            around.sort_by(|a, b| angle_order(&a.0, &b.0));
            let seq: Vec<usize> = around.iter().map(|a| a.1).collect();
            if !matches(&seq) {
                return Err(format!("vertex configuration {seq:?} at a vertex of seed {}", seed.orbit_index));
            }
        }
    }
    Ok(())
}

/// `u^a v^b`.
pub fn translation_word(p: [i64; 2]) -> Word {
    Word::power(U, p[0]).concat(&Word::power(V, p[1]))
}

impl TilingSpec {
    pub fn group_name(&self) -> &str {
        &self.presentation.name
    }

    pub fn u(&self) -> &Point {
        &self.realization[U].offset
    }

    pub fn v(&self) -> &Point {
        &self.realization[V].offset
    }

    pub fn letter_isometry(&self, l: Letter) -> &Isometry {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.realization[l.generator]
        }
    }

    /// The isometry `g₁ ∘ g₂ ∘ … ∘ g_k` of a word `g₁ g₂ … g_k`.
    pub fn realize(&self, w: &Word) -> Isometry {
        let mut f = Isometry::identity(self.field_d);
        for &l in w.letters() {
            f = f.compose(self.letter_isometry(l));
        }
        f
    }

    pub fn translation_vector(&self, p: [i64; 2]) -> Point {
        let a = ExactScalar::from_int(self.field_d, p[0]);
        let b = ExactScalar::from_int(self.field_d, p[1]);
        &self.u().scale(&a) + &self.v().scale(&b)
    }

    /// Coordinates of `p` in the basis `u, v`.
    pub fn lattice_coordinates(&self, p: &Point) -> (ExactScalar, ExactScalar) {
        basis_coordinates(self.u(), self.v(), p)
    }

    /// The integer part of [`TilingSpec::lattice_coordinates`].
    pub fn cell_of(&self, p: &Point) -> [i64; 2] {
        let (a, b) = self.lattice_coordinates(p);
        [a.floor().to_i64().expect("coordinate fits"), b.floor().to_i64().expect("coordinate fits")]
    }

    pub fn point_group_order(&self) -> usize {
        self.point_group.len()
    }

    /// Tiles whose centroid lies in the cell `[0,1)²` of the lattice.
    pub fn base_tiles(&self) -> &[PatchTile] {
        &self.base
    }

    /// Base tile `base` translated by `u^a v^b`.
    pub fn cell_tile(&self, base: usize, shift: [i64; 2]) -> PatchTile {
        let t = &self.base[base];
        PatchTile {
            orbit_index: t.orbit_index,
            polygon: t.polygon.translate(&self.translation_vector(shift)),
            witness: free_reduce(&translation_word(shift).concat(&t.witness)),
        }
    }

    /// Finds `poly` among the tiles as `(base index, shift)`.
    pub fn locate(&self, poly: &Polygon) -> Option<(usize, [i64; 2])> {
        let shift = self.cell_of(&poly.centroid());
        let back = poly.translate(&self.translation_vector([-shift[0], -shift[1]]));
        self.base_index.get(&back.key()).map(|&b| (b, shift))
    }

    /// Integer matrix of the linear part of a letter on exponent vectors.
    pub fn lattice_action(&self, l: Letter) -> [[i64; 2]; 2] {
        self.lattice_action[l.column()]
    }

    /// The image of tile `(base, shift)` under a letter, without geometry.
    pub fn tile_image(&self, base: usize, shift: [i64; 2], l: Letter) -> (usize, [i64; 2]) {
        let (b, s) = self.moves[l.column()][base];
        let m = self.lattice_action[l.column()];
        (b, [s[0] + m[0][0] * shift[0] + m[0][1] * shift[1], s[1] + m[1][0] * shift[0] + m[1][1] * shift[1]])
    }

    /// All elements of G fixing `poly`, computed exactly: for each linear
    /// part the only candidate translation is forced by the centroid.
    pub fn stabilizer_elements(&self, poly: &Polygon) -> Vec<Word> {
        let c = poly.centroid();
        let mut out = Vec::new();
        for pg in &self.point_group {
            let t = &c - &pg.isometry.apply_point(&c);
            let (a, b) = self.lattice_coordinates(&t);
            let (Some(a), Some(b)) = (as_integer(&a), as_integer(&b)) else { continue };
            let g = Isometry::translation(t).compose(&pg.isometry);
            if g.apply(poly) == *poly {
                out.push(free_reduce(&translation_word([a, b]).concat(&pg.word)));
            }
        }
        out
    }

    pub fn stabilizer_order(&self, poly: &Polygon) -> usize {
        self.stabilizer_elements(poly).len()
    }

    /// Whether some element of G maps `p` onto `q`.
    pub fn equivalent(&self, p: &Polygon, q: &Polygon) -> bool {
        if p.len() != q.len() {
            return false;
        }
        let cq = q.centroid();
        let cp = p.centroid();
        self.point_group.iter().any(|pg| {
            let t = &cq - &pg.isometry.apply_point(&cp);
            let (a, b) = self.lattice_coordinates(&t);
            as_integer(&a).is_some()
                && as_integer(&b).is_some()
                && Isometry::translation(t).compose(&pg.isometry).apply(p) == *q
        })
    }
}

/// Breadth-first closure of the seeds under generators and inverses, `radius`
/// layers deep. Tiles are unique by canonical key; within a layer they are
/// sorted by key.
pub fn generate_patch(spec: &TilingSpec, radius: usize) -> Vec<PatchTile> {
    let mut seen: HashSet<PolygonKey> = HashSet::new();
    let mut layer: Vec<PatchTile> = Vec::new();
    for s in &spec.seeds {
        seen.insert(s.polygon.key());
        layer.push(PatchTile { orbit_index: s.orbit_index, polygon: s.polygon.clone(), witness: Word::identity() });
    }
    let mut out = layer.clone();
    let cols = 2 * spec.presentation.generator_count();
    for _ in 0..radius {
        let mut next: Vec<(PolygonKey, PatchTile)> = Vec::new();
        for t in &layer {
            for col in 0..cols {
                let l = Letter::from_column(col);
                let poly = spec.letter_isometry(l).apply(&t.polygon);
                let key = poly.key();
                if seen.insert(key.clone()) {
                    let witness = free_reduce(&Word(vec![l]).concat(&t.witness));
                    next.push((key, PatchTile { orbit_index: t.orbit_index, polygon: poly, witness }));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        layer = next.into_iter().map(|(_, t)| t).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Stabilizer words of a patch tile: the seed's words conjugated by the
/// witness.
pub fn stabilizer_transport(spec: &TilingSpec, t: &PatchTile) -> Vec<Word> {
    spec.seeds[t.orbit_index - 1].stabilizer_words.iter().map(|s| t.witness.conjugate(s)).collect()
}

/// Lattice type of a subgroup with mirror symmetry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeType {
    Pmm,
    Cmm,
}

impl fmt::Display for LatticeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeType::Pmm => "pmm",
            LatticeType::Cmm => "cmm",
        })
    }
}

/// Primitive exponent vector of the lattice direction parallel to `dir`.
fn lattice_direction(spec: &TilingSpec, dir: &Point) -> Option<[i64; 2]> {
    // a·(u×d) + b·(v×d) = 0
    let cu = spec.u().cross(dir);
    let cv = spec.v().cross(dir);
    if cu.is_zero() {
        return Some([1, 0]);
    }
    let ratio = &cv * &cu.recip()?;
    if !ratio.is_rational() {
        return None;
    }
    let r = ratio.rational_part();
    let (num, den) = (r.numer().to_i64()?, r.denom().to_i64()?);
    // (a, b) ∝ (−cv/cu, 1)
    let v = [-num, den];
    Some(if v[0] < 0 || (v[0] == 0 && v[1] < 0) { [-v[0], -v[1]] } else { v })
}

/// Decides whether the translations of `j` form a rectangular (`pmm`) or a
/// centered (`cmm`) lattice with respect to the mirror axes of `j`.
pub fn classify_pmm_vs_cmm(spec: &TilingSpec, j: &CosetTable) -> Result<LatticeType, CatalogError> {
    let lattice = j.translation_sublattice(U, V);
    let reps = lattice.coset_representatives();
    let mirror = spec
        .point_group
        .iter()
        .filter(|pg| pg.isometry.is_orientation_reversing())
        .find(|pg| reps.iter().any(|&p| j.act(1, &translation_word(p).concat(&pg.word)) == 1))
        .ok_or_else(|| CatalogError::PreconditionViolated("the subgroup contains no reflection".into()))?;
    let m = &mirror.isometry.linear;
    let d = spec.field_d;
    let ex = Point::new(ExactScalar::one(d), ExactScalar::zero(d));
    let mut axis = &m.apply(&ex) + &ex;
    if axis.is_origin() {
        let ey = Point::new(ExactScalar::zero(d), ExactScalar::one(d));
        axis = &m.apply(&ey) + &ey;
    }
    let perp = Point::new(-&axis.y, axis.x.clone());
    let mut periods = Vec::new();
    for dir in [&axis, &perp] {
        let p = lattice_direction(spec, dir)
            .ok_or_else(|| CatalogError::PreconditionViolated("mirror axis is not a lattice direction".into()))?;
        let t = (1..=lattice.index())
            .find(|&t| lattice.contains([t * p[0], t * p[1]]))
            .expect("some multiple lies in a finite-index sublattice");
        periods.push([t * p[0], t * p[1]]);
    }
    let rect = (periods[0][0] * periods[1][1] - periods[0][1] * periods[1][0]).abs();
    match rect / lattice.index() {
        1 => Ok(LatticeType::Pmm),
        2 => Ok(LatticeType::Cmm),
        _ => Err(CatalogError::PreconditionViolated("translations are not compatible with the mirrors".into())),
    }
}
