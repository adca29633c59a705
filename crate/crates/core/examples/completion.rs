//! The free completion of a partial pair, level by level.

use gml::completion::Completion;
use gml::pair::PartialPair;

fn main() -> gml::Result<()> {
    let free1 = Completion::new(PartialPair::free(1));
    println!("|E_k| for one free atom: {:?}", free1.counts(4));
    for (k, level) in free1.levels(1)?.iter().enumerate() {
        let shown: Vec<String> = level.iter().map(|e| e.to_string()).collect();
        println!("  rank {k}: {}", shown.join(" "));
    }

    let p1 = Completion::new(PartialPair::build([0], [(vec![0], 0, 0)])?);
    println!("|E_k| with ({{0}},0) coded as 0: {:?}", p1.counts(3));

    // B_1 as an ordinary partial pair; pair elements get fresh atom numbers
    let b1 = p1.restriction(1)?;
    for e in b1.elements() {
        println!("  atom {} = {e}", b1.atom(e).unwrap());
    }
    Ok(())
}
