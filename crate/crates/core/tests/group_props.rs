use std::sync::OnceLock;

use proptest::prelude::*;
use tilecolor::catalog::load_group;
use tilecolor::fpgroup::{coset_enumerate, free_reduce, low_index_subgroups, CosetTable, Letter, Presentation, Word};

const GROUPS: [&str; 5] = ["cmm", "p4g", "p4m", "p6", "p6m"];

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..max_len)
        .prop_map(|v| Word(v.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect()))
}

fn tables(group: &str, n: usize) -> (Presentation, Vec<CosetTable>) {
    let p = load_group(group).unwrap();
    let t = low_index_subgroups(&p, n, &[]).unwrap();
    (p, t)
}

/// Rank over F2 of the abelianized group, from exponent sums mod 2.
fn f2_rank(p: &Presentation) -> usize {
    let g = p.generator_count();
    let mut rows: Vec<Vec<u8>> = p
        .relators
        .iter()
        .map(|r| {
            let mut v = vec![0u8; g];
            for l in r.letters() {
                v[l.generator] ^= 1;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..g {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] == 1) else { continue };
        rows.swap(rank, piv);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] == 1 {
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    g - rank
}

#[test]
fn index_two_subgroups_match_abelianization() {
    // index-2 subgroups are the nonzero homomorphisms to Z/2
    for name in GROUPS {
        let (p, t) = tables(name, 2);
        let expected = (1usize << f2_rank(&p)) - 1;
        assert_eq!(t.iter().filter(|t| t.index() == 2).count(), expected, "{name}");
    }
    let (_, t) = tables("cmm", 2);
    assert_eq!(t.iter().filter(|t| t.index() == 2).count(), 7);
}

#[test]
fn point_group_orders_by_enumeration() {
    // G / ⟨u, v⟩ is the point group
    for (name, order) in GROUPS.iter().zip([4, 8, 8, 6, 12]) {
        let p = load_group(name).unwrap();
        let t = coset_enumerate(&p, &[Word::generator(0), Word::generator(1)], 1000).unwrap();
        assert_eq!(t.index(), order, "{name}");
    }
}

#[test]
fn tables_are_valid_and_pairwise_non_conjugate() {
    for name in GROUPS {
        let (p, t) = tables(name, 4);
        for (i, a) in t.iter().enumerate() {
            a.validate(&p).unwrap();
            for r in &p.relators {
                assert!((1..=a.index()).all(|c| a.act(c, r) == c));
            }
            for b in &t[i + 1..] {
                assert!(!a.is_conjugate(b), "{name}: duplicate class");
            }
        }
    }
}

#[test]
fn subgroup_generators_reproduce_the_table() {
    for name in GROUPS {
        let (p, t) = tables(name, 4);
        for a in &t {
            assert!(a.subgroup_generators().iter().all(|w| a.act(1, w) == 1));
            let again = coset_enumerate(&p, a.subgroup_generators(), 10_000).unwrap();
            assert!(again.same_subgroup(a), "{name}");
        }
    }
}

fn cached(slot: &'static OnceLock<Vec<CosetTable>>, group: &str, n: usize) -> &'static [CosetTable] {
    slot.get_or_init(|| tables(group, n).1)
}

static CMM6: OnceLock<Vec<CosetTable>> = OnceLock::new();
static P4G4: OnceLock<Vec<CosetTable>> = OnceLock::new();

proptest! {
    #[test]
    fn free_reduce_is_idempotent(w in word(4, 20)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.len() <= w.len());
        prop_assert!(free_reduce(&w.concat(&w.inverse())).is_empty());
    }

    #[test]
    fn action_is_a_homomorphism(k in 0usize..64, c in 1usize..=6, a in word(4, 12), b in word(4, 12)) {
        let t = cached(&CMM6, "cmm", 6);
        let t = &t[k % t.len()];
        let c = (c - 1) % t.index() + 1;
        prop_assert_eq!(t.act(c, &a.concat(&b)), t.act(t.act(c, &a), &b));
        prop_assert_eq!(t.act(t.act(c, &a), &a.inverse()), c);
        prop_assert_eq!(t.act(c, &free_reduce(&a)), t.act(c, &a));
    }

    #[test]
    fn conjugation_round_trips(k in 0usize..64, w in word(4, 10)) {
        let t = cached(&P4G4, "p4g", 4);
        let t = &t[k % t.len()];
        let c = t.conjugate_table(&w);
        prop_assert!(c.is_conjugate(t));
        prop_assert!(c.subgroup_generators().iter().all(|g| c.act(1, g) == 1));
        prop_assert!(c.conjugate_table(&w.inverse()).same_subgroup(t));
    }
}
