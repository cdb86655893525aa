use looplab::harness::Harness;

#[test]
fn tau_suites_through_three() {
    let h = Harness::new(None, false);
    for n in 1..=3 {
        for r in h.verify_tau(n).unwrap() {
            assert!(r.pass, "{} n={n}: {:?}", r.conjecture, r.counterexamples);
        }
    }
}

// At n = 4 only the sample tau = 3 produces real roots, for one matching.
#[test]
fn tau_suites_at_four() {
    let h = Harness::new(None, false);
    let reports = h.verify_tau(4).unwrap();
    for r in &reports[1..] {
        assert!(r.pass, "{}: {:?}", r.conjecture, r.counterexamples);
    }
    let c1 = &reports[0];
    assert_eq!(c1.conjecture, "C1tau");
    assert_eq!(c1.counterexamples, ["()(())()"]);
    let v = c1.verdicts.iter().find(|v| !v.pass).unwrap();
    assert!(v.detail.contains("real_roots_at_samples=[0, 0, 0, 2]"), "{}", v.detail);
}
