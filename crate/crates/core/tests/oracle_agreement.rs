use tilecolor::catalog::load_all;
use tilecolor::chroma::enumerate_classes;
use tilecolor::oracle::{brute_force_classes, build_quotient};

#[test]
fn oracle_matches_construction_for_small_n() {
    for spec in load_all().unwrap() {
        for n in 2..=4 {
            let q = build_quotient(&spec, n).unwrap();
            let brute = brute_force_classes(&q, n).unwrap();
            let built = enumerate_classes(&spec, n).unwrap().len();
            assert_eq!(brute, built, "{} n = {n}", spec.name);
        }
    }
}

#[test]
fn snub_square_beyond_the_minimum() {
    let spec = &load_all().unwrap()[0];
    let expected = [(2, 2), (3, 4), (4, 8)];
    for (n, count) in expected {
        let q = build_quotient(spec, n).unwrap();
        assert_eq!(brute_force_classes(&q, n).unwrap(), count, "n = {n}");
    }
}

#[test]
fn quotient_generators_satisfy_relators() {
    for spec in load_all().unwrap() {
        for k in [1, 2, 3] {
            let q = build_quotient(&spec, k).unwrap();
            assert_eq!(q.tiles.len(), k * k * spec.base_tiles().len());
            for r in &spec.presentation.relators {
                assert!((0..q.tiles.len()).all(|t| q.act(t, r) == t));
            }
        }
    }
}
