//! The minimum graph model: numbered finite pairs on disjoint prime-power
//! carriers, and counterexample search across them.

use gml::minimal::{component_of, enumerate_pair, nth_prime, relocate, restriction_property_check, search_counterexample};
use gml::pair::pair_to_json;
use gml::term::{combinators, parse};

fn main() -> gml::Result<()> {
    for k in 0..8 {
        println!("N_{k} = {}  on p_{k} = {}: {}", pair_to_json(&enumerate_pair(k)), nth_prime(k), pair_to_json(&relocate(k)?));
    }
    println!("121 lies in component {}", component_of(121)?);

    for text in ["T <= F", "I I <= I", "\\x. x <= \\x y. x y"] {
        let (m, n) = text.split_once("<=").unwrap();
        match search_counterexample(&parse(m)?, &parse(n)?, 30, 2, 4)? {
            Some((k, v)) => println!("{text}: separated in component {k}, witness {}", v.witness().unwrap()),
            None => println!("{text}: no counterexample in components 0..=30"),
        }
    }

    let ok = restriction_property_check(&combinators::omega(), 5, 2)?;
    println!("Omega restricts to component 5 at rank 2: {ok}");
    Ok(())
}
