use std::collections::HashSet;

use rankgray::analysis::verify_snake;
use rankgray::hamgen::{base_case_a7, generate, InductiveBuilder};
use rankgray::hypergraph::{Hyperedge, Pair};
use rankgray::perm::alternating_order;
use rankgray::{EvenRank, Permutation};

fn class_of(rank: usize, n: usize) -> Pair {
    let (a, b) = Permutation::unrank_even(EvenRank(rank as u64), n)
        .unwrap()
        .suffix_pair();
    Pair(a, b)
}

#[test]
fn first_cycle_covers_exactly_the_hexad_classes() {
    let mut b = InductiveBuilder::new(&base_case_a7().unwrap()).unwrap();
    b.step().unwrap();
    let n = 9;
    assert_eq!(b.vertex_count(), 6 * 2520);
    let hexad: HashSet<Pair> = match b.schedule()[0].edge {
        e @ Hyperedge::Hexad(..) => e.vertices().into_iter().collect(),
        _ => panic!("first hyperedge is not the 6-hyperedge"),
    };
    let expected: HashSet<Pair> = [(8, 9), (7, 8), (9, 7), (6, 9), (5, 6), (9, 5)]
        .into_iter()
        .map(|(a, b)| Pair(a, b))
        .collect();
    assert_eq!(hexad, expected);
    for (r, &k) in b.labels().iter().enumerate() {
        assert_eq!(k != 0, hexad.contains(&class_of(r, n)), "rank {r}");
    }
}

#[test]
fn splices_are_local_and_add_two_classes() {
    let n = 9;
    let mut b = InductiveBuilder::new(&base_case_a7().unwrap()).unwrap();
    b.step().unwrap();
    let class_size = alternating_order(n - 2) as usize;
    while !b.is_finished() {
        let item = b.schedule()[b.steps_done()];
        let [x, y, z] = item
            .edge
            .as_triangle()
            .unwrap()
            .rotated_to_tail(item.shared.unwrap())
            .unwrap();
        let target = b.splice_target(x, y, z).unwrap();
        assert_eq!(&target.as_slice()[n - 3..], &[x, y, z]);
        let before = b.labels().to_vec();
        let count = b.vertex_count();
        assert_eq!(before[target.rank_even().unwrap().0 as usize], 7);

        b.step().unwrap();
        assert_eq!(b.vertex_count(), count + 2 * class_size);
        let new_classes = [Pair(x, y), Pair(z, x)];
        let mut cut = 0;
        for (r, (&old, &new)) in before.iter().zip(b.labels()).enumerate() {
            if old == new {
                continue;
            }
            if old == 0 {
                assert!(new_classes.contains(&class_of(r, n)), "rank {r}");
            } else {
                assert_eq!((old, new), (7, 9));
                assert_eq!(r, target.rank_even().unwrap().0 as usize);
                cut += 1;
            }
        }
        assert_eq!(cut, 1);
    }
    assert_eq!(b.vertex_count(), alternating_order(n) as usize);
}

#[test]
fn seven_and_nine_are_hamiltonian() {
    for (n, needs) in [(7usize, 5u8), (9, 7)] {
        let c = generate(n).unwrap();
        assert_eq!(c.len() as u64, alternating_order(n));
        assert!(c.start().is_identity());
        assert!(c.gens().contains(&needs), "n={n}");
        assert!(c.gens().iter().all(|&k| k % 2 == 1));
        let report = verify_snake(&c).unwrap();
        assert!(report.is_hamiltonian_in_an && report.is_valid(), "n={n}");
    }
}

#[test]
fn generation_is_deterministic() {
    assert_eq!(generate(9).unwrap(), generate(9).unwrap());
}
