use lexlevel::seed;
use lexlevel::syntax::{clause_inventory, parse_conllu, syntactic_ratios};
use lexlevel_testkit::fixtures::{fixture_conllu, SYNTAX_FIXTURES};
use lexlevel_testkit::fuzz;

#[test]
fn hand_annotated_sentences() {
    for (i, fixture) in SYNTAX_FIXTURES.iter().enumerate() {
        let docs = parse_conllu(&fixture_conllu(fixture, &format!("s{i}"))).unwrap();
        let c = clause_inventory(&docs[0]);
        let got = [c.w, c.s, c.vp, c.c, c.t, c.dc, c.ct, c.cp, c.cn];
        assert_eq!(got, fixture.expected, "{}", fixture.name);
    }
}

#[test]
fn ratios_of_adverbial_clause_example() {
    let docs = parse_conllu(&fixture_conllu(&SYNTAX_FIXTURES[1], "d")).unwrap();
    let r = syntactic_ratios(&clause_inventory(&docs[0]));
    assert_eq!(r.C_T, Some(2.0));
    assert_eq!(r.DC_T, Some(1.0));
}

#[test]
fn fuzzed_trees_respect_clause_bounds() {
    let mut rng = seed::rng(21);
    for d in 0..500 {
        let text = fuzz::random_tree_conllu(&mut rng, &format!("d{d}"), 4);
        let docs = parse_conllu(&text).unwrap();
        let c = clause_inventory(&docs[0]);
        assert!(c.dc <= c.c, "DC > C in\n{text}");
        assert!(c.ct <= c.t, "CT > T in\n{text}");
        assert_eq!(c.s, 4);
    }
}
