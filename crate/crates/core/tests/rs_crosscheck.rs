use looplab::cpl::GroundStateCache;
use looplab::fpl::fpl_census;
use looplab::{enumerate_matchings, Matching};

#[test]
fn census_equals_groundstate() {
    let cache = GroundStateCache::new(None, 6);
    for n in 1..=6 {
        let census = fpl_census(n).unwrap();
        let gs = cache.get(n).unwrap();
        for pi in enumerate_matchings(n) {
            assert_eq!(census.get(&pi) as u128, gs.component(&pi), "n={n} {pi}");
        }
    }
}

#[test]
fn size_three_vector() {
    let census = fpl_census(3).unwrap();
    let order = ["()()()", "(()())", "(())()", "()(())", "((()))"];
    let got: Vec<u64> = order.iter().map(|w| census.get(&w.parse::<Matching>().unwrap())).collect();
    assert_eq!(got, [2, 2, 1, 1, 1]);
}
