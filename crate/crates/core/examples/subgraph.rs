//! Witness subpairs and the subpair generated inside a completion.

use gml::completion::{Completion, Element};
use gml::graph::extract_witness_subpair;
use gml::pair::{generate_subgraphmodel, pair_to_json, Atom, PartialPair};
use gml::semantics::Environment;
use gml::term::parse;

fn main() -> gml::Result<()> {
    let c = Completion::new(PartialPair::free(1));
    let t = parse("\\f. f f")?;
    let e = c.parse_element("({({0},0),0},0)")?;
    let w = extract_witness_subpair(&t, &c, &Environment::new(), &e, 2)?;
    println!("witness for {e} in {t}:");
    for (a, x) in w.elements() {
        println!("  {a} = {x}");
    }
    println!("verified: {}, inside E_A: {}", w.verify(&t, &Environment::new()), w.is_below_completion(&c));

    // close {a0} under the completion's coding for two rounds
    let seed = [Element::base(Atom(0))];
    let g = generate_subgraphmodel(&c, seed, 2, 10_000);
    println!("generated {} elements, saturated: {}", g.elements.len(), g.saturated);
    let p = g.to_partial_pair(|e| e.to_string());
    println!("as a partial pair: {} atoms, {} coded keys", p.len(), p.coding().len());
    println!("witness subpair: {}", pair_to_json(&w.pair));
    Ok(())
}
