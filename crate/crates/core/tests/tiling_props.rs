use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use tilecolor::catalog::{
    generate_patch, load_all, orbit_count, stabilizer_transport, PatchTile, TilingSpec, ORBIT_COUNTS, TILING_NAMES, U,
    V,
};
use tilecolor::exactgeo::{ExactScalar, Isometry, Polygon};
use tilecolor::fpgroup::{coset_enumerate, Letter, Word};

fn specs() -> &'static [TilingSpec] {
    static SPECS: OnceLock<Vec<TilingSpec>> = OnceLock::new();
    SPECS.get_or_init(|| load_all().unwrap())
}

fn letters(max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..4, any::<bool>()), 0..max_len)
}

fn word_for(spec: &TilingSpec, raw: &[(usize, bool)]) -> Word {
    let g = spec.presentation.generator_count();
    Word(raw.iter().map(|&(i, inv)| Letter::new(i % g, inv)).collect())
}

/// The finite group generated by some isometries, by closure.
fn closure(gens: &[Isometry], d: u8) -> Vec<Isometry> {
    let mut elems = vec![Isometry::identity(d)];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = elems[i].compose(g);
            if !elems.contains(&h) {
                elems.push(h);
                assert!(elems.len() <= 24, "stabilizer is not finite");
            }
        }
        i += 1;
    }
    elems
}

#[test]
fn catalog_order_and_orbit_counts() {
    let names: Vec<&str> = specs().iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, TILING_NAMES);
    let counts: Vec<usize> = specs().iter().map(orbit_count).collect();
    assert_eq!(counts, [2, 3, 2, 2, 2, 2, 3, 3]);
    assert_eq!(counts, ORBIT_COUNTS);
}

#[test]
fn relators_realize_to_identity() {
    for spec in specs() {
        for r in &spec.presentation.relators {
            assert!(spec.realize(r).is_identity(), "{}: {}", spec.name, spec.presentation.format_word(r));
        }
    }
}

#[test]
fn finite_quotient_orders() {
    for spec in specs() {
        let p = spec.point_group_order();
        for k in [2i64, 3] {
            let q = spec.presentation.with_power_relators(&[U, V], k);
            let t = coset_enumerate(&q, &[], 10_000).unwrap();
            assert_eq!(t.index(), (k * k) as usize * p, "{} k={k}", spec.name);
        }
    }
}

#[test]
fn base_cell_tiles_the_plane() {
    for spec in specs() {
        let total = spec.base_tiles().iter().fold(ExactScalar::zero(spec.field_d), |acc, t| &acc + &t.polygon.double_area());
        let cell = spec.u().cross(spec.v());
        let cell = if cell.signum().is_lt() { -cell } else { cell };
        assert_eq!(total, &cell + &cell, "{}", spec.name);
        for (i, t) in spec.base_tiles().iter().enumerate() {
            assert_eq!(spec.locate(&t.polygon), Some((i, [0, 0])));
            assert_eq!(spec.realize(&t.witness).apply(&spec.seeds[t.orbit_index - 1].polygon), t.polygon);
        }
    }
}

#[test]
fn patch_is_consistent() {
    for spec in specs() {
        let patch = generate_patch(spec, 3);
        let keys: HashSet<_> = patch.iter().map(|t| t.polygon.key()).collect();
        assert_eq!(keys.len(), patch.len(), "{}: repeated tile", spec.name);
        for t in &patch {
            let seed = &spec.seeds[t.orbit_index - 1];
            assert_eq!(spec.realize(&t.witness).apply(&seed.polygon), t.polygon);
            let (b, _) = spec.locate(&t.polygon).expect("patch tile is in the tiling");
            assert_eq!(spec.base_tiles()[b].orbit_index, t.orbit_index);
        }
        // the generators move tiles only to tiles, and tile_image agrees
        for b in 0..spec.base_tiles().len() {
            for col in 0..2 * spec.presentation.generator_count() {
                let l = Letter::from_column(col);
                let img = spec.letter_isometry(l).apply(&spec.cell_tile(b, [2, -1]).polygon);
                assert_eq!(spec.locate(&img), Some(spec.tile_image(b, [2, -1], l)), "{}", spec.name);
            }
        }
    }
}

fn scalar(d: u8) -> impl Strategy<Value = ExactScalar> {
    (-30i64..30, 1i64..12, -30i64..30, 1i64..12).prop_map(move |(p, q, r, s)| ExactScalar::from_parts(d, (p, q), (r, s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stabilizers_transport(seed in 0usize..3, raw in letters(10)) {
        // every case runs all eight tilings
        for spec in specs() {
            let s = &spec.seeds[seed % spec.seeds.len()];
            let w = word_for(spec, &raw);
            let t = PatchTile { orbit_index: s.orbit_index, polygon: spec.realize(&w).apply(&s.polygon), witness: w };
            let moved: Vec<Isometry> = stabilizer_transport(spec, &t).iter().map(|x| spec.realize(x)).collect();
            for g in &moved {
                prop_assert_eq!(g.apply(&t.polygon), t.polygon.clone());
            }
            let order = s.stabilizer_type.order();
            prop_assert_eq!(closure(&moved, spec.field_d).len(), order);
            prop_assert_eq!(spec.stabilizer_order(&t.polygon), order);
        }
    }

    #[test]
    fn words_realize_as_compositions(t in 0usize..8, a in letters(8), b in letters(8)) {
        let spec = &specs()[t];
        let (wa, wb) = (word_for(spec, &a), word_for(spec, &b));
        let fa = spec.realize(&wa);
        let fb = spec.realize(&wb);
        prop_assert_eq!(spec.realize(&wa.concat(&wb)), fa.compose(&fb));
        prop_assert!(fa.compose(&fa.invert()).is_identity());
        let p = &spec.seeds[0].polygon;
        prop_assert_eq!(fa.apply(&fb.apply(p)), fa.compose(&fb).apply(p));
        // distances between vertices are preserved
        let img = fa.apply(p);
        for i in 0..p.len() {
            for j in 0..p.len() {
                let before = (&p.vertices[i] - &p.vertices[j]).norm2();
                let after = (&img.vertices[i] - &img.vertices[j]).norm2();
                prop_assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn polygon_key_ignores_start_and_direction(t in 0usize..8, raw in letters(6), shift in 0usize..12, flip: bool) {
        let spec = &specs()[t];
        let p = spec.realize(&word_for(spec, &raw)).apply(&spec.seeds[0].polygon);
        let mut vs = p.vertices.clone();
        let k = shift % vs.len();
        vs.rotate_left(k);
        if flip {
            vs.reverse();
            vs.rotate_left(1);
            // reversed order is clockwise; the key must still agree
            prop_assert_eq!(Polygon { vertices: vs }.key(), p.key());
        } else {
            prop_assert_eq!(Polygon::new(vs).unwrap().key(), p.key());
        }
        prop_assert_ne!(p.translate(spec.u()).key(), p.key());
    }

    #[test]
    fn field_arithmetic((d, x, y, z) in prop::sample::select(vec![2u8, 3]).prop_flat_map(|d| (Just(d), scalar(d), scalar(d), scalar(d)))) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if let Some(r) = x.recip() {
            prop_assert!((&x * &r).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
        prop_assert_eq!(ExactScalar::parse_in(d, &x.to_string()).unwrap(), x.clone());
        let f = x.to_f64();
        let fl = x.floor();
        prop_assert!(BigInt::from(f.floor() as i64) == fl || (f - f.round()).abs() < 1e-9);
        prop_assert_eq!(x.cmp_value(&y), (&x - &y).signum());
    }
}
