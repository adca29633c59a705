//! Interpreting terms inside a finite partial pair.

use std::collections::BTreeSet;

use gml::pair::{Atom, PartialPair};
use gml::semantics::{interpret, interpret_closed, omega_characterization, Environment};
use gml::term::parse;

fn show(set: &BTreeSet<Atom>) -> String {
    let items: Vec<String> = set.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn main() -> gml::Result<()> {
    let p = PartialPair::build([0, 1], [(vec![0], 0, 0), (vec![], 0, 1)])?;
    for text in ["I", "T", "F", "\\x. x x", "Omega", "T I"] {
        println!("{text:>8}  {}", show(&interpret_closed(&parse(text)?, &p)));
    }
    println!("Omega by characterisation: {}", show(&omega_characterization(&p)));

    let mut env = Environment::new();
    env.insert("y", BTreeSet::from([Atom(0)]));
    println!("\\x. y  with y = {{0}}: {}", show(&interpret(&parse("\\x. y")?, &p, &env)?));
    Ok(())
}
