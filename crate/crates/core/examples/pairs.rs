//! Building, validating and combining partial pairs.

use gml::pair::{pair_from_json, pair_to_json, Atom, PartialPair};

fn main() -> gml::Result<()> {
    // a and b swap under the coding, so the pair has a nontrivial automorphism
    let text = r#"{"atoms": ["a", "b"], "coding": [
        {"args": ["a"], "res": "a", "value": "b"},
        {"args": ["b"], "res": "b", "value": "a"}]}"#;
    let swap = pair_from_json(text)?.into_pair()?;
    println!("automorphisms: {}", swap.automorphisms()?.len());
    println!("orbits: {:?}", swap.orbits()?);

    let broken = pair_from_json(r#"{"atoms": ["a"], "coding": [
        {"args": [], "res": "a", "value": "a"},
        {"args": ["a"], "res": "a", "value": "a"}]}"#)?;
    println!("invalid pair: {}", broken.validate());

    let p1 = PartialPair::build([0], [(vec![0], 0, 0)])?;
    let free = PartialPair::free(2);
    let union = p1.union(&free)?;
    println!("p1 <= p1 ∪ free2: {}", p1.is_subpair(&union));
    println!("{}", pair_to_json(&union));

    let moved = p1.transport(|a| Atom(a.0 + 10))?;
    println!("transported: {}", pair_to_json(&moved));
    Ok(())
}
