use belnap::syntax::{parse_rule, print_rule, Constant, Pred, SigSpec};
use belnap::verify::golden_corpus;

/// `input<TAB>canonical print`, one rule per line.
const GOLDEN: &str = include_str!("data/golden_rules.tsv");

fn entries() -> Vec<(&'static str, &'static str)> {
    GOLDEN
        .lines()
        .map(|l| l.split_once('\t').expect("tab-separated"))
        .collect()
}

#[test]
fn canonical_prints_are_stable() {
    let sig = SigSpec::new(Pred::ALL, Constant::ALL).unwrap();
    for (input, expected) in entries() {
        let r = parse_rule(input, &sig).unwrap();
        assert_eq!(print_rule(&r), expected, "{input}");
        assert_eq!(print_rule(&parse_rule(expected, &sig).unwrap()), expected);
    }
}

#[test]
fn file_covers_the_built_in_corpus() {
    let inputs: Vec<&str> = entries().into_iter().map(|(i, _)| i).collect();
    assert_eq!(inputs, golden_corpus());
}
