// Writing, evaluating and splitting existence constraints.

use mlc_mine::{sample, ConceptHierarchy, Constraint, Itemset, Result, SplitConstraint, ROOT};

pub fn run() -> Result<()> {
    // Labels work as items; NOT binds tighter than AND, AND tighter than OR.
    let h = ConceptHierarchy::build(["A", "B", "C", "D", "E"].map(|x| (ROOT, x)))?;
    let ct = Constraint::parse("A AND B OR NOT A AND D OR D AND C", &h)?;
    let set = |labels: &[&str]| -> Result<Itemset> { Itemset::new(labels.iter().map(|l| h.resolve(l)).collect::<Result<_>>()?) };
    for labels in [&["A", "B", "C"][..], &["D", "C", "A"], &["A", "D"], &["B", "E"]] {
        println!("{labels:?} -> {}", ct.holds(&set(labels)?));
    }

    // A literal on an inner node matches anything below it.
    let g = sample::hierarchy();
    let ct = Constraint::parse("(NOT 3** AND 11*) OR 2**", &g)?;
    for s in ["11*, 12*", "31*, 32*", "111, 212"] {
        println!("{{{s}}} -> {}", ct.holds(&Itemset::parse(s)?));
    }
    // Printing gives text that parses back to the same constraint.
    assert_eq!(Constraint::parse(&ct.to_string(), &g)?, ct);

    // Negated items go in a separate list; the rest must be negation free.
    let sc = SplitConstraint::parse("NOT 31* AND NOT 112", "(1** AND 21*) OR (3** AND 2**)", &g)?;
    println!("neg [{}] aff [{}] as one constraint: {}", sc.neg_text(), sc.aff(), sc.to_flat());

    for (text, why) in [
        ("NOT (11* OR 2**)", "OR under AND"),
        ("11* AND NOT 11*", "both signs"),
        ("11* AND", "dangling AND"),
        ("99*", "unknown item"),
    ] {
        let err = Constraint::parse(text, &g).unwrap_err();
        println!("{text:?} ({why}): {err}");
    }
    let err = SplitConstraint::parse("NOT 3**", "31*", &g).unwrap_err();
    println!("affirming a removed item: {err}");
    Ok(())
}

fn main() -> Result<()> {
    run()
}
