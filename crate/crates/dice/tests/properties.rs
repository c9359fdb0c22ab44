//! Property-based checks over randomized structures: parser round-trips,
//! transform laws, and agreement between the fast margin computation and the
//! brute-force oracle.

use proptest::collection::vec;
use proptest::prelude::*;

use intransitive_dice::partition::{format_partition, parse_partition, q_value, RegularPartition};
use intransitive_dice::switch::{apply_simple_switch, relabel_blocks, replay, switch_path};
use intransitive_dice::tournament::{format_tournament, parse_tournament, Tournament};
use intransitive_dice::verify::oracle_q;

fn arb_partition() -> impl Strategy<Value = RegularPartition> {
    (2usize..=6, 1usize..=5).prop_flat_map(|(n, bs)| {
        Just((1..=(n * bs) as u64).collect::<Vec<u64>>())
            .prop_shuffle()
            .prop_map(move |vals| {
                RegularPartition::new(vals.chunks(bs).map(|c| c.to_vec()).collect()).unwrap()
            })
    })
}

fn arb_tournament() -> impl Strategy<Value = Tournament> {
    (2usize..=8).prop_flat_map(|n| {
        vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Tournament::from_orientation(n, |_, _| it.next().unwrap())
        })
    })
}

proptest! {
    #[test]
    fn partition_text_round_trips(p in arb_partition()) {
        prop_assert_eq!(parse_partition(&format_partition(&p)).unwrap(), p);
    }

    #[test]
    fn tournament_text_round_trips(t in arb_tournament()) {
        prop_assert_eq!(parse_tournament(&format_tournament(&t)).unwrap(), t);
    }

    #[test]
    fn margin_matches_oracle(p in arb_partition()) {
        for i in 0..p.n() {
            for j in 0..p.n() {
                if i != j {
                    prop_assert_eq!(
                        q_value(p.block(i), p.block(j)).unwrap(),
                        oracle_q(p.block(i), p.block(j)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn reflect_is_an_involution(p in arb_partition()) {
        prop_assert_eq!(p.reflect().reflect(), p);
    }

    #[test]
    fn switches_are_involutions(p in arb_partition(), k in 1u64..30) {
        prop_assume!(k < p.ground_size());
        let (once, _) = apply_simple_switch(&p, k).unwrap();
        let (twice, _) = apply_simple_switch(&once, k).unwrap();
        prop_assert_eq!(twice, p);
    }

    #[test]
    fn switch_paths_replay_to_their_target(
        a in arb_partition(),
        seed in any::<u64>(),
    ) {
        // scramble the ground set to get a second partition of the same shape
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = a.ground_size();
        let mut pi: Vec<u64> = (1..=g).collect();
        for i in (1..pi.len()).rev() {
            pi.swap(i, rng.gen_range(0..=i));
        }
        let b = intransitive_dice::switch::permute_ground(&a, &pi).unwrap();
        let path = switch_path(&a, &b).unwrap();
        prop_assert_eq!(replay(&a, &path).unwrap(), b);
    }

    #[test]
    fn block_relabeling_relabels_the_digraph(p in arb_partition(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pi: Vec<usize> = (0..p.n()).collect();
        for i in (1..pi.len()).rev() {
            pi.swap(i, rng.gen_range(0..=i));
        }
        let r = relabel_blocks(&p, &pi).unwrap();
        let before = p.induced_digraph();
        let after = r.induced_digraph();
        for i in 0..p.n() {
            for j in 0..p.n() {
                if i != j {
                    prop_assert_eq!(after.has_edge(pi[i], pi[j]), before.has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn pad_and_replicate_preserve_the_digraph(p in arb_partition(), m in 1usize..4) {
        let d = p.induced_digraph();
        prop_assert_eq!(p.pad().induced_digraph(), d.clone());
        prop_assert_eq!(p.replicate(m).unwrap().induced_digraph(), d);
    }
}
