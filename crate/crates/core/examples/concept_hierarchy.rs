// Building, naming, navigating and pruning a concept hierarchy.

use mlc_mine::{ConceptHierarchy, Fanout, ItemCode, Result, ROOT};

pub fn run() -> Result<()> {
    // Ordinals follow the order in which children first appear.
    let h = ConceptHierarchy::build([
        (ROOT, "drinks"),
        (ROOT, "snacks"),
        ("drinks", "juice"),
        ("drinks", "soda"),
        ("juice", "orange juice"),
        ("juice", "apple juice"),
        ("soda", "cola"),
        ("snacks", "chips"),
        ("chips", "salted chips"),
    ])?;
    println!("{} items over {} levels", h.len(), h.max_level());

    for code in h.iter() {
        let indent = "  ".repeat(code.level() - 1);
        let label = h.label(code).unwrap_or("-");
        println!("{indent}{code:<6} {:<4} {label}", h.display(code));
    }

    // Dotted, digit, starred and label forms name the same node.
    let juice = h.resolve("1.1")?;
    for token in ["11", "11*", "juice"] {
        assert_eq!(h.resolve(token)?, juice);
    }
    println!("below {}: {:?}", h.display(&juice), h.descendants_of(&juice)?.iter().map(|c| h.display(c)).collect::<Vec<_>>());
    println!("terminals: {}", h.terminal_items().len());

    // Ordinals above 9 only have the dotted form.
    let twelfth: ItemCode = "12.".parse()?;
    println!("root 12 prints as {twelfth}, child 3 of it as {}", twelfth.child(3));

    // Removing a branch keeps the level count.
    let without_soda = h.prune(&[h.resolve("soda")?])?;
    println!("after removing soda: {} items, {} levels", without_soda.len(), without_soda.max_level());

    // Synthetic taxonomies are reproducible from their seed.
    let g = ConceptHierarchy::generate(4, Fanout { min: 2, max: 3 }, 3, 7)?;
    assert_eq!(g, ConceptHierarchy::generate(4, Fanout { min: 2, max: 3 }, 3, 7)?);
    println!("generated: {} items, {} terminals", g.len(), g.terminal_items().len());
    print!("{}", g.to_tsv().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}

fn main() -> Result<()> {
    run()
}
