//! JSON exchange format for one coloring, and SVG output.
//!
//! A document lists the tiles of one cell of a color-fixing lattice with
//! their vertices written as exact scalars, so it can be rechecked without
//! floating point. Floats appear only in [`render_svg`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{load_tiling, PatchTile, TilingSpec};
use crate::chroma::{verify_transitive, ColorAssignment, ColoringScheme};
use crate::exactgeo::{ExactScalar, Point, Polygon};
use crate::fpgroup::{coset_enumerate, SublatticeBasis, Word};

pub const FORMAT: u32 = 1;

/// Largest `n` a document may claim; bounds the work done by [`verify`].
pub const MAX_COLORS: usize = 1000;

/// Fill colors, indexed by color id − 1. Hues step by 11/25 of a turn so
/// that the first few colors are far apart; lightness alternates.
pub const PALETTE: [&str; 25] = [
    "#d03939", "#73deb7", "#d039a6", "#7bde73", "#8e39d0", "#c9de73", "#3951d0", "#dea673", "#39bed0", "#de738c",
    "#39d075", "#de73da", "#69d039", "#9573de", "#d0ca39", "#739ede", "#d05d39", "#73ded1", "#d03982", "#73de84",
    "#b239d0", "#afde73", "#4539d0", "#dec073", "#399ad0",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> DocumentError {
    DocumentError::Malformed(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentTile {
    pub orbit: usize,
    pub color: usize,
    pub vertices: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDocument {
    pub format: u32,
    pub tiling: String,
    pub group: String,
    pub n: usize,
    /// Generators of `J` as words in the group's generator names.
    pub subgroup: Vec<String>,
    /// Representative coset of each orbit (1-based).
    pub reps: Vec<usize>,
    /// Hermite normal form rows of the cell lattice, in `(u, v)` exponents.
    pub cell: [[i64; 2]; 2],
    pub tiles: Vec<DocumentTile>,
}

/// Outcome of [`verify`] on a well-formed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl ColoringDocument {
    /// One cell of the scheme's color-fixing lattice with its colors.
    pub fn from_scheme(scheme: &ColoringScheme<'_>) -> Self {
        let spec = scheme.spec;
        let a = ColorAssignment::from_scheme(scheme);
        let tiles = a.patch[..a.core]
            .iter()
            .map(|(t, c)| DocumentTile {
                orbit: t.orbit_index,
                color: *c,
                vertices: t.polygon.vertices.iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect(),
            })
            .collect();
        ColoringDocument {
            format: FORMAT,
            tiling: spec.name.clone(),
            group: spec.group_name().to_string(),
            n: scheme.n(),
            subgroup: scheme.subgroup.subgroup_generators().iter().map(|w| spec.presentation.format_word(w)).collect(),
            reps: scheme.reps.clone(),
            cell: a.cell.rows,
            tiles,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
    }

    /// Parses everything that needs the catalog: tiling, words, lattice and
    /// exact vertices.
    pub fn resolve(&self) -> Result<Resolved, DocumentError> {
        if self.format != FORMAT {
            return Err(malformed(format!("unsupported format {}", self.format)));
        }
        let spec = load_tiling(&self.tiling).map_err(|e| malformed(e.to_string()))?;
        if spec.group_name() != self.group {
            return Err(malformed(format!("{} has group {}, not {}", spec.name, spec.group_name(), self.group)));
        }
        if self.n == 0 || self.n > MAX_COLORS {
            return Err(malformed(format!("n = {} outside 1..={MAX_COLORS}", self.n)));
        }
        let subgroup = self
            .subgroup
            .iter()
            .map(|w| spec.presentation.parse_word(w))
            .collect::<Result<Vec<Word>, _>>()
            .map_err(|e| malformed(e.to_string()))?;
        if self.reps.len() != spec.seeds.len() {
            return Err(malformed(format!("{} reps for {} orbits", self.reps.len(), spec.seeds.len())));
        }
        if self.reps.iter().any(|&r| r == 0 || r > self.n) {
            return Err(malformed("rep coset outside 1..=n"));
        }
        let cell = SublatticeBasis::from_generators(&self.cell)
            .filter(|c| c.rows == self.cell)
            .ok_or_else(|| malformed("cell is not a lattice basis in Hermite normal form"))?;
        let mut tiles = Vec::with_capacity(self.tiles.len());
        for t in &self.tiles {
            if t.orbit == 0 || t.orbit > spec.seeds.len() {
                return Err(malformed(format!("orbit {} out of range", t.orbit)));
            }
            if t.color == 0 || t.color > self.n {
                return Err(malformed(format!("color {} outside 1..={}", t.color, self.n)));
            }
            let mut vs = Vec::with_capacity(t.vertices.len());
            for [x, y] in &t.vertices {
                let x = ExactScalar::parse_in(spec.field_d, x).map_err(|e| malformed(e.to_string()))?;
                let y = ExactScalar::parse_in(spec.field_d, y).map_err(|e| malformed(e.to_string()))?;
                vs.push(Point::new(x, y));
            }
            let polygon = Polygon::new(vs).map_err(|e| malformed(e.to_string()))?;
            tiles.push((PatchTile { orbit_index: t.orbit, polygon, witness: Word::identity() }, t.color));
        }
        Ok(Resolved { spec, subgroup, cell, tiles })
    }
}

/// A document with every field parsed against the catalog.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: TilingSpec,
    pub subgroup: Vec<Word>,
    pub cell: SublatticeBasis,
    pub tiles: Vec<(PatchTile, usize)>,
}

/// Rechecks a document from scratch: the subgroup must have index `n` with
/// the reps fixed by the stabilizers, and the listed colors, extended
/// periodically, must be permuted transitively by every generator.
pub fn verify(doc: &ColoringDocument) -> Result<Verdict, DocumentError> {
    let r = doc.resolve()?;
    let spec = &r.spec;
    let workspace = 64 * doc.n.max(8) * 12;
    let subgroup = match coset_enumerate(&spec.presentation, &r.subgroup, workspace) {
        Ok(t) => t,
        Err(e) => return Ok(Verdict::Invalid(format!("subgroup index could not be computed: {e}"))),
    };
    if subgroup.index() != doc.n {
        return Ok(Verdict::Invalid(format!("subgroup has index {}, document claims {}", subgroup.index(), doc.n)));
    }
    for (seed, &rep) in spec.seeds.iter().zip(&doc.reps) {
        if !subgroup.fixed_cosets(&seed.stabilizer_words).contains(&rep) {
            return Ok(Verdict::Invalid(format!(
                "coset {rep} is not fixed by the stabilizer of orbit {}",
                seed.orbit_index
            )));
        }
    }
    let scheme = ColoringScheme { spec, subgroup, reps: doc.reps.clone() };
    let assignment = match ColorAssignment::periodic(scheme, r.cell, r.tiles) {
        Ok(a) => a,
        Err(e) => return Ok(Verdict::Invalid(e.to_string())),
    };
    match assignment.color_permutations() {
        Err(e) => return Ok(Verdict::Invalid(e.to_string())),
        Ok(Err(v)) => {
            return Ok(Verdict::Invalid(format!("generator {} does not permute the colors: {}", v.generator, v.detail)))
        }
        Ok(Ok(_)) => {}
    }
    match verify_transitive(&assignment) {
        Ok(true) => Ok(Verdict::Valid),
        Ok(false) => Ok(Verdict::Invalid("the generators do not act transitively on the colors".into())),
        Err(e) => Ok(Verdict::Invalid(e.to_string())),
    }
}

fn fmt_coord(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Draws `cells × cells` copies of the document's cell, one path per tile,
/// filled with [`PALETTE`]`[color − 1]`. The document itself is embedded in
/// a comment.
pub fn render_svg(doc: &ColoringDocument, cells: usize) -> Result<String, DocumentError> {
    assert!(cells >= 1, "need at least one cell");
    let r = doc.resolve()?;
    if doc.n > PALETTE.len() {
        return Err(malformed(format!("{} colors exceed the palette", doc.n)));
    }
    let [b0, b1] = r.cell.basis();
    let mut paths = Vec::new();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for i in 0..cells as i64 {
        for j in 0..cells as i64 {
            let shift = r.spec.translation_vector([i * b0[0] + j * b1[0], i * b0[1] + j * b1[1]]);
            for (t, c) in &r.tiles {
                let pts: Vec<(f64, f64)> = t
                    .polygon
                    .vertices
                    .iter()
                    .map(|p| {
                        let q = p + &shift;
                        (q.x.to_f64(), -q.y.to_f64())
                    })
                    .collect();
                for &(x, y) in &pts {
                    lo_x = lo_x.min(x);
                    lo_y = lo_y.min(y);
                    hi_x = hi_x.max(x);
                    hi_y = hi_y.max(y);
                }
                let d: Vec<String> = pts
                    .iter()
                    .enumerate()
                    .map(|(k, &(x, y))| format!("{}{} {}", if k == 0 { "M" } else { "L" }, fmt_coord(x), fmt_coord(y)))
                    .collect();
                paths.push(format!(
                    "<path d=\"{} Z\" fill=\"{}\" data-color=\"{c}\" data-orbit=\"{}\"/>",
                    d.join(" "),
                    PALETTE[c - 1],
                    t.orbit_index
                ));
            }
        }
    }
    let pad = 0.5;
    let json = doc.to_json();
    assert!(!json.contains("--"), "document text cannot contain `--`");
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt_coord(lo_x - pad),
        fmt_coord(lo_y - pad),
        fmt_coord(hi_x - lo_x + 2.0 * pad),
        fmt_coord(hi_y - lo_y + 2.0 * pad)
    ));
    out.push_str("<!-- coloring document\n");
    out.push_str(&json);
    out.push_str("-->\n");
    out.push_str("<g stroke=\"#202020\" stroke-width=\"0.04\" stroke-linejoin=\"round\">\n");
    for p in paths {
        out.push_str(&p);
        out.push('\n');
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// The document embedded by [`render_svg`].
pub fn document_from_svg(svg: &str) -> Result<ColoringDocument, DocumentError> {
    let start = svg.find("<!-- coloring document\n").ok_or_else(|| malformed("no embedded document"))?;
    let body = &svg[start + "<!-- coloring document\n".len()..];
    let end = body.find("-->").ok_or_else(|| malformed("unterminated comment"))?;
    ColoringDocument::from_json(&body[..end])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chroma::enumerate_schemes;

    fn snub_doc(i: usize) -> ColoringDocument {
        let spec = load_tiling("3.3.3.4.4").unwrap();
        let s = enumerate_schemes(&spec, 2).unwrap().remove(i);
        ColoringDocument::from_scheme(&s)
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let doc = snub_doc(0);
        let text = doc.to_json();
        let back = ColoringDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn emitted_document_verifies() {
        for i in 0..4 {
            assert_eq!(verify(&snub_doc(i)).unwrap(), Verdict::Valid);
        }
    }

    #[test]
    fn edited_color_names_a_generator() {
        let mut doc = snub_doc(0);
        doc.tiles[0].color = 3 - doc.tiles[0].color;
        match verify(&doc).unwrap() {
            Verdict::Invalid(msg) => assert!(msg.starts_with("generator "), "{msg}"),
            Verdict::Valid => panic!("edited document verified"),
        }
    }

    #[test]
    fn malformed_inputs() {
        let text = snub_doc(0).to_json();
        assert!(ColoringDocument::from_json(&text[..text.len() / 2]).is_err());
        let mut doc = snub_doc(0);
        doc.tiling = "5.5.5".into();
        assert!(verify(&doc).is_err());
        let mut doc = snub_doc(0);
        doc.tiles[0].vertices[0][0] = "1/0".into();
        assert!(verify(&doc).is_err());
        let mut doc = snub_doc(0);
        doc.cell = [[2, 5], [0, 2]];
        assert!(verify(&doc).is_err());
    }

    #[test]
    fn wrong_index_is_invalid() {
        let mut doc = snub_doc(0);
        doc.subgroup.pop();
        assert!(matches!(verify(&doc).unwrap(), Verdict::Invalid(_)));
    }

    #[test]
    fn svg_embeds_document() {
        let doc = snub_doc(1);
        let svg = render_svg(&doc, 2).unwrap();
        assert_eq!(document_from_svg(&svg).unwrap(), doc);
        assert_eq!(svg.matches("<path").count(), 4 * doc.tiles.len());
        assert_eq!(render_svg(&doc, 2).unwrap(), svg);
    }
}
