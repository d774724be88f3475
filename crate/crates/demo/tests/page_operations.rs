use pph_demo::{decide, random_instance, solve};

#[test]
fn generated_instance_round_trip() {
    for seed in 0..20 {
        let text = random_instance(seed, 12, 9).unwrap();
        let d = decide(&text, false).unwrap();
        assert!(d.admits && d.routes_agree, "seed {seed}: {}", d.verdict);
        let s = solve(&text, false).unwrap();
        assert_eq!(s.haplotypes.lines().count(), 24);
        assert!(s.dot.starts_with("digraph"));
    }
}

#[test]
fn directed_rejection_has_no_solution() {
    let text = "22\n11\n01\n10\n";
    assert!(decide(text, false).unwrap().admits);
    let d = decide(text, true).unwrap();
    assert!(!d.admits);
    assert!(solve(text, true).is_err());
    assert!(solve(text, false).is_ok());
}
