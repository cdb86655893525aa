use looplab::matching::{catalan, Ranker};
use looplab::multiplicity::{decompose_at, m_rule_a, m_rule_b};
use looplab::Matching;
use proptest::prelude::*;

// Cycle lemma: n+1 ups and n downs have exactly one rotation that stays positive;
// dropping its first step leaves a Dyck word.
fn dyck(n: usize, ups: &[usize]) -> Matching {
    let len = 2 * n + 1;
    let mut steps = vec![-1i32; len];
    for &u in ups {
        steps[u] = 1;
    }
    let (mut h, mut low, mut start) = (0, 0, 0);
    for (i, s) in steps.iter().enumerate() {
        h += s;
        if h <= low {
            low = h;
            start = i + 1;
        }
    }
    let word = (1..len).fold(0u64, |w, k| if steps[(start + k) % len] == 1 { w | 1 << (k - 1) } else { w });
    Matching::from_bits(n, word).unwrap()
}

fn matching() -> impl Strategy<Value = Matching> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::sample::subsequence((0..2 * n + 1).collect::<Vec<_>>(), n + 1).prop_map(move |u| dyck(n, &u))
    })
}

proptest! {
    #[test]
    fn encodings_round_trip(pi in matching()) {
        prop_assert_eq!(pi.render_word().parse::<Matching>().unwrap(), pi);
        prop_assert_eq!(Matching::from_a_seq(&pi.a_seq()).unwrap(), pi);
        prop_assert_eq!(Matching::from_arches(&pi.arches()).unwrap(), pi);
        prop_assert_eq!(Matching::from_young(pi.size(), &pi.young()).unwrap(), pi);
        prop_assert_eq!(pi.d(), pi.young().size());
    }

    #[test]
    fn symmetries(pi in matching()) {
        prop_assert_eq!(pi.conjugate().conjugate(), pi);
        prop_assert_eq!(pi.conjugate().young(), pi.young().transpose());
        let mut r = pi;
        for _ in 0..2 * pi.size() {
            r = r.rotate();
        }
        prop_assert_eq!(r, pi);
        prop_assert!(pi.dihedral_orbit().contains(&pi));
    }

    #[test]
    fn rank_in_range(pi in matching()) {
        prop_assert!((Ranker::new(pi.size()).rank(&pi) as u64) < catalan(pi.size()));
    }

    #[test]
    fn rules_agree_and_cuts_compose(pi in matching()) {
        let m = m_rule_a(&pi).unwrap();
        prop_assert_eq!(&m, &m_rule_b(&pi));
        for p in 1..pi.size() {
            match decompose_at(&pi, p).unwrap() {
                Some((a, b)) => {
                    prop_assert_eq!(m.get(p as i64), 0);
                    prop_assert_eq!(Matching::compose(&a, &b), pi);
                }
                None => prop_assert!(m.get(p as i64) > 0),
            }
        }
    }
}
