use floorpoly_core::decompose::{decompose, recompose, tail_factor};
use floorpoly_core::floor::{count_markings_for_pair, enumerate_compatible_pairs, enumerate_floor_diagrams};
use floorpoly_core::seq::tangency_pairs;

#[test]
fn round_trip_additivity_and_tail_factor() {
    let mut checked = 0;
    for d in 1..=5usize {
        for delta in 0..=2 {
            let diagrams = enumerate_floor_diagrams(d, delta);
            for (alpha, beta) in tangency_pairs(d as u64) {
                for fd in &diagrams {
                    for pair in enumerate_compatible_pairs(fd, &alpha, &beta).unwrap() {
                        let dec = decompose(fd, &pair).unwrap();
                        assert_eq!(dec.cogenus(), delta, "{fd:?}");
                        let (fd2, pair2) = recompose(&dec, &alpha, &beta).unwrap();
                        assert_eq!((&fd2, &pair2), (fd, &pair));
                        assert_eq!(
                            tail_factor(&dec, &alpha, &beta).unwrap(),
                            count_markings_for_pair(fd, &pair).unwrap(),
                            "{fd:?} {pair:?}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}
